//! Subspaces of F_q^n in reduced row-echelon form.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::vector::{width_for, FqSpace, VectorFq};

/// Largest vector set [`FqSpace::vectors`] will materialize.
pub const MAX_VECTORS: u64 = 1 << 24;

/// A subspace of F_q^n stored as its canonical RREF generator matrix.
///
/// Rows are sorted by pivot column, every pivot entry is 1 and every other
/// row is zero in that column, so two subspaces are equal as vector sets
/// exactly when their rows are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub(crate) q: u16,
    pub(crate) n: u8,
    pub(crate) rows: Vec<u64>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn q(&self) -> u32 {
        self.q as u32
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = VectorFq> + '_ {
        self.rows.iter().map(move |&bits| VectorFq {
            bits,
            q: self.q,
            n: self.n,
        })
    }

    /// Pivot column of each row, strictly increasing.
    pub fn pivots(&self) -> Vec<usize> {
        let w = width_for(self.q as u32);
        self.rows
            .iter()
            .map(|r| (r.trailing_zeros() / w) as usize)
            .collect()
    }

    pub(crate) fn raw_rows(&self) -> &[u64] {
        &self.rows
    }

    fn coord(&self, row: usize, i: usize) -> u64 {
        let w = width_for(self.q as u32);
        (self.rows[row] >> (i as u32 * w)) & ((1 << w) - 1)
    }
}

impl Ord for Subspace {
    /// Enumeration order: pivot sets lexicographically, then free entries
    /// row by row, column ascending.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.q, self.n, self.dim())
            .cmp(&(other.q, other.n, other.dim()))
            .then_with(|| self.pivots().cmp(&other.pivots()))
            .then_with(|| {
                for r in 0..self.dim() {
                    for i in 0..self.n() {
                        match self.coord(r, i).cmp(&other.coord(r, i)) {
                            Ordering::Equal => continue,
                            o => return o,
                        }
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.rows().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FqSpace {
    pub fn zero_subspace(&self) -> Subspace {
        self.subspace_raw(Vec::new())
    }

    pub fn full_space(&self) -> Subspace {
        self.subspace_raw((0..self.n()).map(|i| self.unit(i).bits).collect())
    }

    /// Canonical span of a list of vectors.
    pub fn span(&self, vectors: &[VectorFq]) -> Result<Subspace> {
        for v in vectors {
            self.check(v)?;
        }
        Ok(self.span_raw(vectors.iter().map(|v| v.bits)))
    }

    pub(crate) fn span_raw(&self, vectors: impl IntoIterator<Item = u64>) -> Subspace {
        let mut basis = Vec::new();
        for v in vectors {
            self.rref_insert(&mut basis, v);
        }
        self.subspace_raw(basis)
    }

    /// Wraps rows already in canonical form.
    pub(crate) fn subspace_raw(&self, rows: Vec<u64>) -> Subspace {
        Subspace {
            q: self.q() as u16,
            n: self.n() as u8,
            rows,
        }
    }

    pub(crate) fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.q as u32 != self.q() || s.n as usize != self.n() {
            return Err(Error::Mismatch(format!(
                "subspace of F_{}^{} used in F_{}^{}",
                s.q,
                s.n,
                self.q(),
                self.n()
            )));
        }
        Ok(())
    }

    /// Reduces `v` against a canonical basis; zero iff v lies in its span.
    #[inline]
    pub(crate) fn reduce_raw(&self, basis: &[u64], mut v: u64) -> u64 {
        if self.is_binary() {
            for &b in basis {
                if v & (b & b.wrapping_neg()) != 0 {
                    v ^= b;
                }
            }
            return v;
        }
        for &b in basis {
            let p = self.pivot(b).expect("basis rows are nonzero");
            let c = self.coord(v, p);
            if c != 0 {
                v = self.axpy_raw(self.field().neg_raw(c), b, v);
            }
        }
        v
    }

    /// Adds `v` to a canonical basis, keeping it canonical. Returns whether
    /// the dimension grew.
    pub(crate) fn rref_insert(&self, basis: &mut Vec<u64>, v: u64) -> bool {
        let mut v = self.reduce_raw(basis, v);
        let Some(p) = self.pivot(v) else {
            return false;
        };
        let lead = self.coord(v, p);
        if lead != 1 {
            v = self.scale_raw(self.field().inv_raw(lead), v);
        }
        for b in basis.iter_mut() {
            let c = self.coord(*b, p);
            if c != 0 {
                *b = self.axpy_raw(self.field().neg_raw(c), v, *b);
            }
        }
        let at = basis.partition_point(|&b| self.pivot(b).unwrap() < p);
        basis.insert(at, v);
        true
    }

    pub fn contains_vector(&self, a: &Subspace, v: &VectorFq) -> Result<bool> {
        self.check_subspace(a)?;
        self.check(v)?;
        Ok(self.reduce_raw(&a.rows, v.bits) == 0)
    }

    /// Whether `b` is a subspace of `a`.
    pub fn contains_subspace(&self, a: &Subspace, b: &Subspace) -> Result<bool> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        Ok(self.contains_raw(&a.rows, &b.rows))
    }

    #[inline]
    pub(crate) fn contains_raw(&self, a: &[u64], b: &[u64]) -> bool {
        b.len() <= a.len() && b.iter().all(|&v| self.reduce_raw(a, v) == 0)
    }

    pub fn sum(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        let mut basis = a.rows.clone();
        for &v in &b.rows {
            self.rref_insert(&mut basis, v);
        }
        Ok(self.subspace_raw(basis))
    }

    /// A ∩ B computed as (A⊥ + B⊥)⊥.
    pub fn intersect(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        let s = self.sum(
            &self.orthogonal_complement(a)?,
            &self.orthogonal_complement(b)?,
        )?;
        self.orthogonal_complement(&s)
    }

    /// Complement under the standard dot product.
    pub fn orthogonal_complement(&self, a: &Subspace) -> Result<Subspace> {
        self.check_subspace(a)?;
        let pivots = a.pivots();
        let mut gens = Vec::with_capacity(self.n() - a.dim());
        for f in (0..self.n()).filter(|c| !pivots.contains(c)) {
            let mut w = self.unit(f).bits;
            for (row, &p) in a.rows.iter().zip(&pivots) {
                let c = self.coord(*row, f);
                if c != 0 {
                    w = self.with_coord(w, p, self.field().neg_raw(c));
                }
            }
            gens.push(w);
        }
        Ok(self.span_raw(gens))
    }

    /// Every vector of `s`, zero first, last coefficient varying fastest.
    pub fn vectors(&self, s: &Subspace) -> Result<Vec<VectorFq>> {
        self.check_subspace(s)?;
        Ok(self
            .vectors_raw(&s.rows)?
            .into_iter()
            .map(|b| self.wrap(b))
            .collect())
    }

    pub(crate) fn vectors_raw(&self, rows: &[u64]) -> Result<Vec<u64>> {
        let q = self.q() as u64;
        let count = (q as u128).pow(rows.len() as u32);
        if count > MAX_VECTORS as u128 {
            return Err(Error::BudgetExceeded {
                what: format!("enumerating a {}-dimensional subspace", rows.len()),
                needed: count,
                limit: MAX_VECTORS as u128,
            });
        }
        let mut out = Vec::with_capacity(count as usize);
        out.push(0u64);
        // the last row varies fastest, so build from the first row inward
        for &row in rows.iter().rev() {
            let prev = std::mem::take(&mut out);
            for c in 0..q as u32 {
                let scaled = self.scale_raw(c, row);
                for &v in &prev {
                    out.push(self.add_raw(scaled, v));
                }
            }
        }
        Ok(out)
    }

    /// One representative per coset of `p` in `w`: the first vector of each
    /// coset in `w`'s enumeration order, so the zero vector comes first.
    pub fn cosets(&self, p: &Subspace, w: &Subspace) -> Result<Vec<VectorFq>> {
        self.check_subspace(p)?;
        self.check_subspace(w)?;
        if !self.contains_raw(&w.rows, &p.rows) {
            return Err(Error::InvalidParameters(
                "coset base is not contained in the ambient subspace".into(),
            ));
        }
        let mut seen = HashSet::new();
        let mut reps = Vec::new();
        for v in self.vectors_raw(&w.rows)? {
            if seen.insert(self.reduce_raw(&p.rows, v)) {
                reps.push(self.wrap(v));
            }
        }
        debug_assert_eq!(
            reps.len() as u64,
            (self.q() as u64).pow((w.dim() - p.dim()) as u32)
        );
        Ok(reps)
    }
}
