//! Enumeration and ranking of the Grassmannian G_q(n, k).
//!
//! Order: pivot-column sets in lexicographic order, then the free entries
//! in odometer order. Free slots are listed row by row, columns ascending,
//! and the last slot varies fastest.

use num_traits::ToPrimitive;

use crate::bounds::gaussian;
use crate::error::{Error, Result};
use crate::subspace::Subspace;
use crate::vector::FqSpace;

/// Largest Grassmannian that may be enumerated or indexed.
pub const MAX_SUBSPACES: u64 = 10_000_000;

/// [n k]_q as a machine integer, saturating at `u128::MAX`.
pub(crate) fn gaussian_count(n: usize, k: usize, q: u32) -> u128 {
    gaussian(n as u64, k as u64, q as u64)
        .to_u128()
        .unwrap_or(u128::MAX)
}

pub(crate) fn check_budget(n: usize, k: usize, q: u32) -> Result<u64> {
    let count = gaussian_count(n, k, q);
    if count > MAX_SUBSPACES as u128 {
        return Err(Error::BudgetExceeded {
            what: format!("G_{q}({n},{k})"),
            needed: count,
            limit: MAX_SUBSPACES as u128,
        });
    }
    Ok(count as u64)
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Free (row, column) slots for a pivot set.
fn free_slots(pivots: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mask: u64 = pivots.iter().fold(0, |m, &p| m | 1 << p);
    let mut slots = Vec::new();
    for (row, &p) in pivots.iter().enumerate() {
        for col in p + 1..n {
            if mask >> col & 1 == 0 {
                slots.push((row, col));
            }
        }
    }
    slots
}

/// Streams G_q(n, k) in canonical order.
#[derive(Clone, Debug)]
pub struct GrassmannianCursor {
    space: FqSpace,
    pivots: Vec<usize>,
    slots: Vec<(usize, usize)>,
    digits: Vec<u32>,
    single_pivot_set: bool,
    done: bool,
    total: u64,
}

impl GrassmannianCursor {
    pub(crate) fn new(space: &FqSpace, k: usize) -> Result<GrassmannianCursor> {
        if k > space.n() {
            return Err(Error::InvalidParameters(format!(
                "dimension {k} exceeds ambient dimension {}",
                space.n()
            )));
        }
        let total = check_budget(space.n(), k, space.q())?;
        Ok(Self::starting_at(space, (0..k).collect(), false, total))
    }

    /// Cursor over the subspaces sharing one pivot set.
    pub fn for_pivot_set(space: &FqSpace, pivots: Vec<usize>) -> Result<GrassmannianCursor> {
        if pivots.windows(2).any(|w| w[0] >= w[1]) || pivots.last().is_some_and(|&p| p >= space.n())
        {
            return Err(Error::InvalidParameters("bad pivot set".into()));
        }
        let slots = free_slots(&pivots, space.n());
        let total = (space.q() as u64).pow(slots.len() as u32);
        Ok(Self::starting_at(space, pivots, true, total))
    }

    fn starting_at(space: &FqSpace, pivots: Vec<usize>, single: bool, total: u64) -> Self {
        let slots = free_slots(&pivots, space.n());
        GrassmannianCursor {
            space: space.clone(),
            digits: vec![0; slots.len()],
            slots,
            pivots,
            single_pivot_set: single,
            done: false,
            total,
        }
    }

    /// Number of subspaces this cursor yields in total.
    pub fn total(&self) -> u64 {
        self.total
    }

    fn current_rows(&self) -> Vec<u64> {
        let w = self.space.width();
        let mut rows: Vec<u64> = self
            .pivots
            .iter()
            .map(|&p| 1u64 << (p as u32 * w))
            .collect();
        for (&(row, col), &d) in self.slots.iter().zip(&self.digits) {
            rows[row] |= (d as u64) << (col as u32 * w);
        }
        rows
    }

    fn advance(&mut self) {
        let q = self.space.q();
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                return;
            }
            *d = 0;
        }
        if self.single_pivot_set || !next_combination(&mut self.pivots, self.space.n()) {
            self.done = true;
            return;
        }
        self.slots = free_slots(&self.pivots, self.space.n());
        self.digits = vec![0; self.slots.len()];
    }
}

impl Iterator for GrassmannianCursor {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let s = self.space.subspace_raw(self.current_rows());
        self.advance();
        Some(s)
    }
}

/// Bijection between G_q(n, k) and `0..[n k]_q` following cursor order.
#[derive(Clone, Debug)]
pub struct GrassmannIndex {
    space: FqSpace,
    k: usize,
    offsets: Vec<u64>,
    total: u64,
}

impl GrassmannIndex {
    pub fn new(space: &FqSpace, k: usize) -> Result<GrassmannIndex> {
        let n = space.n();
        if k > n {
            return Err(Error::InvalidParameters(format!(
                "dimension {k} exceeds ambient dimension {n}"
            )));
        }
        let total = check_budget(n, k, space.q())?;
        let q = space.q() as u64;
        let mut offsets = Vec::with_capacity(binomial(n, k) as usize + 1);
        let mut pivots: Vec<usize> = (0..k).collect();
        let mut acc = 0u64;
        loop {
            offsets.push(acc);
            let free: usize = pivots
                .iter()
                .enumerate()
                .map(|(j, &p)| (n - 1 - p) - (k - 1 - j))
                .sum();
            acc += q.pow(free as u32);
            if !next_combination(&mut pivots, n) {
                break;
            }
        }
        offsets.push(acc);
        debug_assert_eq!(acc, total);
        Ok(GrassmannIndex {
            space: space.clone(),
            k,
            offsets,
            total,
        })
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn space(&self) -> &FqSpace {
        &self.space
    }

    /// Number of distinct pivot sets.
    pub fn pivot_set_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Rank of the first subspace with the given pivot set index.
    pub fn pivot_set_offset(&self, idx: usize) -> u64 {
        self.offsets[idx]
    }

    pub fn pivot_set(&self, mut idx: u64) -> Vec<usize> {
        let (n, k) = (self.space.n(), self.k);
        let mut out = Vec::with_capacity(k);
        let mut v = 0;
        for j in 0..k {
            loop {
                let c = binomial(n - 1 - v, k - 1 - j);
                if idx < c {
                    break;
                }
                idx -= c;
                v += 1;
            }
            out.push(v);
            v += 1;
        }
        out
    }

    fn pivot_set_rank(&self, pivots: &[usize]) -> u64 {
        let (n, k) = (self.space.n(), self.k);
        let mut r = 0;
        let mut start = 0;
        for (j, &p) in pivots.iter().enumerate() {
            for v in start..p {
                r += binomial(n - 1 - v, k - 1 - j);
            }
            start = p + 1;
        }
        r
    }

    pub fn rank(&self, s: &Subspace) -> Result<u64> {
        self.space.check_subspace(s)?;
        if s.dim() != self.k {
            return Err(Error::Mismatch(format!(
                "{}-dimensional subspace ranked in G({},{})",
                s.dim(),
                self.space.n(),
                self.k
            )));
        }
        Ok(self.rank_raw(s.raw_rows()))
    }

    /// Rank of canonical rows of the right dimension.
    pub(crate) fn rank_raw(&self, rows: &[u64]) -> u64 {
        let w = self.space.width();
        let n = self.space.n();
        let q = self.space.q() as u64;
        let mut mask = 0u64;
        let mut pivots = [0usize; 64];
        for (j, r) in rows.iter().enumerate() {
            let p = (r.trailing_zeros() / w) as usize;
            pivots[j] = p;
            mask |= 1 << p;
        }
        let pivots = &pivots[..rows.len()];
        let mut value = 0u64;
        for (j, &p) in pivots.iter().enumerate() {
            for col in p + 1..n {
                if mask >> col & 1 == 0 {
                    value = value * q + self.space.coord(rows[j], col) as u64;
                }
            }
        }
        self.offsets[self.pivot_set_rank(pivots) as usize] + value
    }

    pub fn unrank(&self, idx: u64) -> Result<Subspace> {
        if idx >= self.total {
            return Err(Error::InvalidParameters(format!(
                "rank {idx} out of range {}",
                self.total
            )));
        }
        let set = self.offsets.partition_point(|&o| o <= idx) - 1;
        let pivots = self.pivot_set(set as u64);
        let slots = free_slots(&pivots, self.space.n());
        let q = self.space.q() as u64;
        let w = self.space.width();
        let mut value = idx - self.offsets[set];
        let mut rows: Vec<u64> = pivots.iter().map(|&p| 1u64 << (p as u32 * w)).collect();
        for &(row, col) in slots.iter().rev() {
            rows[row] |= (value % q) << (col as u32 * w);
            value /= q;
        }
        Ok(self.space.subspace_raw(rows))
    }
}

/// Precomputed coefficient matrices of G_q(d, r), used to list the
/// r-subspaces of any d-dimensional subspace.
#[derive(Clone, Debug)]
pub(crate) struct SubspaceStencil {
    space: FqSpace,
    coeffs: Vec<Vec<u64>>,
}

impl SubspaceStencil {
    pub(crate) fn new(space: &FqSpace, d: usize, r: usize) -> Result<SubspaceStencil> {
        let local = space.with_dim(d)?;
        let coeffs = GrassmannianCursor::new(&local, r)?
            .map(|s| s.rows)
            .collect();
        Ok(SubspaceStencil {
            space: space.clone(),
            coeffs,
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Calls `f` with the canonical rows of every r-subspace of the span of `basis`.
    #[inline]
    pub(crate) fn for_each(&self, basis: &[u64], mut f: impl FnMut(&[u64])) {
        let mut out = Vec::with_capacity(basis.len());
        for c in &self.coeffs {
            out.clear();
            for &row in c {
                let v = combine(&self.space, row, basis);
                self.space.rref_insert(&mut out, v);
            }
            f(&out);
        }
    }
}

#[inline]
fn combine(space: &FqSpace, coeffs: u64, basis: &[u64]) -> u64 {
    if space.is_binary() {
        let mut v = 0;
        let mut c = coeffs;
        while c != 0 {
            v ^= basis[c.trailing_zeros() as usize];
            c &= c - 1;
        }
        return v;
    }
    basis.iter().enumerate().fold(0, |acc, (j, &b)| {
        let c = space.coord(coeffs, j);
        if c == 0 {
            acc
        } else {
            space.axpy_raw(c, b, acc)
        }
    })
}

impl FqSpace {
    /// Cursor over every k-subspace of this space.
    pub fn grassmannian(&self, k: usize) -> Result<GrassmannianCursor> {
        GrassmannianCursor::new(self, k)
    }

    /// Every r-subspace of `s`, as subspaces of the ambient space.
    pub fn subspaces_of(&self, s: &Subspace, r: usize) -> Result<Vec<Subspace>> {
        self.check_subspace(s)?;
        if r > s.dim() {
            return Err(Error::InvalidParameters(format!(
                "r = {r} exceeds subspace dimension {}",
                s.dim()
            )));
        }
        let stencil = SubspaceStencil::new(self, s.dim(), r)?;
        let mut out = Vec::with_capacity(stencil.len());
        stencil.for_each(s.raw_rows(), |rows| {
            out.push(self.subspace_raw(rows.to_vec()))
        });
        Ok(out)
    }
}
