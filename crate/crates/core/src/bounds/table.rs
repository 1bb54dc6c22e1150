use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::One;

use super::{
    basic_lower, covering_upper_trivial, decaen_lower, exact_with_kind, recursive_upper,
    schonheim_lower, schonheim_step, BigCount, ExactKind,
};
use crate::constructions::cyclic_gf64_design;
use crate::design::{verify_covering, SubspaceDesign};
use crate::error::{Error, Result};

/// Where a bound came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    GaussianRatio,
    Schonheim,
    /// Schönheim step applied to the table's own lower bound one level down.
    SchonheimTable,
    DeCaen,
    Exact(ExactKind),
    /// All r-subspaces of one (n-k+r)-subspace, dualized.
    SubspaceTrivial,
    /// The coset recursion applied to table entries one level down.
    Recursive,
    /// A verified explicit design.
    Design(String),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::GaussianRatio => f.write_str("gaussian-ratio"),
            Source::Schonheim => f.write_str("schonheim"),
            Source::SchonheimTable => f.write_str("schonheim-table"),
            Source::DeCaen => f.write_str("de-caen"),
            Source::Exact(kind) => f.write_str(match kind {
                ExactKind::SingleBlock => "exact-single-block",
                ExactKind::AllSubspaces => "exact-all-subspaces",
                ExactKind::LineCovering => "exact-line-covering",
                ExactKind::Hyperplane => "exact-hyperplane",
                ExactKind::Known => "exact-known",
            }),
            Source::SubspaceTrivial => f.write_str("subspace-trivial"),
            Source::Recursive => f.write_str("recursive"),
            Source::Design(name) => write!(f, "design:{name}"),
        }
    }
}

/// Best known bounds on C_q(n, k, r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRecord {
    pub q: u64,
    pub n: u64,
    pub k: u64,
    pub r: u64,
    pub lower: BigCount,
    pub lower_src: Source,
    pub upper: BigCount,
    pub upper_src: Source,
}

impl BoundRecord {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Registration {
    n: u64,
    k: u64,
    r: u64,
    size: BigCount,
    name: String,
}

/// Bounds for every 1 <= r <= k <= n <= n_max at a fixed q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundTable {
    q: u64,
    n_max: u64,
    entries: BTreeMap<(u64, u64, u64), BoundRecord>,
    registrations: Vec<Registration>,
}

/// Table with every closed-form bound plus the verified cyclic C_2[7,3,2]
/// design when q = 2 and n_max >= 7.
pub fn bound_table(q: u64, n_max: u64) -> Result<BoundTable> {
    let mut table = BoundTable::new(q, n_max)?;
    if q == 2 && n_max >= 7 {
        table.register_design(&cyclic_gf64_design()?, 2, "cyclic-gf64")?;
    }
    Ok(table)
}

impl BoundTable {
    pub fn new(q: u64, n_max: u64) -> Result<BoundTable> {
        if crate::field::prime_power(q as u32).is_none() || q > u32::MAX as u64 {
            return Err(Error::InvalidParameters(format!(
                "q = {q} is not a prime power"
            )));
        }
        let mut t = BoundTable {
            q,
            n_max,
            entries: BTreeMap::new(),
            registrations: Vec::new(),
        };
        t.propagate();
        Ok(t)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// Verifies `design` as a covering at strength `r` and, if it passes,
    /// records its size as an upper bound.
    pub fn register_design(&mut self, design: &SubspaceDesign, r: usize, name: &str) -> Result<()> {
        if design.q() as u64 != self.q {
            return Err(Error::Mismatch(format!(
                "design over GF({}) registered in a q = {} table",
                design.q(),
                self.q
            )));
        }
        let report = verify_covering(design, r)?;
        if !report.is_covering {
            return Err(Error::Unverified(format!(
                "C_{}[{},{},{}] ({name})",
                design.q(),
                design.n(),
                design.k(),
                r
            )));
        }
        self.registrations.push(Registration {
            n: design.n() as u64,
            k: design.k() as u64,
            r: r as u64,
            size: BigUint::from(design.len()),
            name: name.to_string(),
        });
        self.propagate();
        Ok(())
    }

    /// Recomputes every entry in order of increasing n.
    pub fn propagate(&mut self) {
        self.entries.clear();
        for n in 1..=self.n_max {
            for k in 1..=n {
                for r in 1..=k {
                    let rec = self.compute(n, k, r);
                    self.entries.insert((n, k, r), rec);
                }
            }
        }
    }

    fn lower_of(&self, n: u64, k: u64, r: u64) -> BigCount {
        if r == 0 {
            return BigUint::one();
        }
        self.entries[&(n, k, r)].lower.clone()
    }

    fn upper_of(&self, n: u64, k: u64, r: u64) -> BigCount {
        if r == 0 {
            return BigUint::one();
        }
        self.entries[&(n, k, r)].upper.clone()
    }

    fn compute(&self, n: u64, k: u64, r: u64) -> BoundRecord {
        let q = self.q;

        let mut lower = (basic_lower(n, k, r, q), Source::GaussianRatio);
        let mut raise = |v: BigCount, src: Source| {
            if v > lower.0 {
                lower = (v, src);
            }
        };
        raise(schonheim_lower(n, k, r, q), Source::Schonheim);
        if r >= 2 && n >= 2 {
            raise(
                schonheim_step(n, k, q, &self.lower_of(n - 1, k - 1, r - 1)),
                Source::SchonheimTable,
            );
        }
        if r + 1 == k && k < n {
            raise(decaen_lower(n, k, q), Source::DeCaen);
        }

        let mut upper = (covering_upper_trivial(n, k, r, q), Source::SubspaceTrivial);
        let mut improve = |v: BigCount, src: Source| {
            if v < upper.0 {
                upper = (v, src);
            }
        };
        if k < n {
            let lift = if k == 1 {
                BigUint::one()
            } else {
                self.upper_of(n - 1, k - 1, r - 1)
            };
            let flat = self.upper_of(n - 1, k, r);
            improve(recursive_upper(n, k, q, &lift, &flat), Source::Recursive);
        }
        for reg in &self.registrations {
            if (reg.n, reg.k, reg.r) == (n, k, r) {
                improve(reg.size.clone(), Source::Design(reg.name.clone()));
            }
        }

        if let Some((value, kind)) = exact_with_kind(n, k, r, q) {
            if value >= lower.0 {
                lower = (value.clone(), Source::Exact(kind));
            }
            if value < upper.0 {
                upper = (value, Source::Exact(kind));
            }
        }

        BoundRecord {
            q,
            n,
            k,
            r,
            lower: lower.0,
            lower_src: lower.1,
            upper: upper.0,
            upper_src: upper.1,
        }
    }

    /// Bounds on C_q(n, k, r).
    pub fn get(&self, n: u64, k: u64, r: u64) -> Option<&BoundRecord> {
        self.entries.get(&(n, k, r))
    }

    /// Bounds on T_q(n, k, r) = C_q(n, n-r, n-k).
    pub fn turan(&self, n: u64, k: u64, r: u64) -> Option<&BoundRecord> {
        if r > k || k > n {
            return None;
        }
        self.get(n, n - r, n - k)
    }

    pub fn records(&self) -> impl Iterator<Item = &BoundRecord> {
        self.entries.values()
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self, filter: Option<(u64, u64, u64)>) -> String {
        let rows: Vec<[String; 8]> = self
            .records()
            .filter(|r| filter.is_none_or(|f| f == (r.n, r.k, r.r)))
            .map(row_fields)
            .collect();
        let header = HEADER.map(String::from);
        let mut widths = header.clone().map(|h| h.len());
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&header).chain(&rows) {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }

    /// Comma-separated rendering with a header row.
    pub fn to_csv(&self, filter: Option<(u64, u64, u64)>) -> String {
        let mut out = HEADER.join(",");
        out.push('\n');
        for r in self
            .records()
            .filter(|r| filter.is_none_or(|f| f == (r.n, r.k, r.r)))
        {
            out.push_str(&row_fields(r).join(","));
            out.push('\n');
        }
        out
    }
}

const HEADER: [&str; 8] = [
    "n",
    "k",
    "r",
    "lower",
    "lower_src",
    "upper",
    "upper_src",
    "exact",
];

fn row_fields(r: &BoundRecord) -> [String; 8] {
    [
        r.n.to_string(),
        r.k.to_string(),
        r.r.to_string(),
        r.lower.to_string(),
        r.lower_src.to_string(),
        r.upper.to_string(),
        r.upper_src.to_string(),
        r.is_exact().to_string(),
    ]
}
