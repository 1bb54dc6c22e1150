//! Explicit designs. Every result is run through the matching verifier
//! before it is returned.

mod cyclic;
mod greedy;
mod recursive;
mod steiner;

pub use cyclic::{cyclic_gf64_design, CYCLIC_BASE_SETS, CYCLIC_HYPERPLANE_EXPONENTS};
pub use greedy::greedy_covering;
pub use recursive::recursive_covering;
pub use steiner::{derive_steiner, expand_to_steiner_system};

use crate::design::{verify_covering, verify_steiner, verify_turan, SubspaceDesign};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldTower};
use crate::subspace::Subspace;
use crate::vector::FqSpace;
use std::sync::Arc;

pub(crate) fn self_check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::SelfCheck(what()))
    }
}

/// Verifies `d` as a covering at strength r, optionally requiring Steiner.
pub(crate) fn certify(d: SubspaceDesign, r: usize, steiner: bool) -> Result<SubspaceDesign> {
    let rep = if steiner {
        verify_steiner(&d, r)?
    } else {
        verify_covering(&d, r)?
    };
    let ok = if steiner {
        rep.is_steiner
    } else {
        rep.is_covering
    };
    self_check(ok, || {
        format!(
            "{} is not a {} C_{}[{},{},{}]",
            d.label().unwrap_or("design"),
            if steiner { "Steiner" } else { "covering" },
            d.q(),
            d.n(),
            d.k(),
            r
        )
    })?;
    Ok(d)
}

/// Copies `s` from `from` into the larger space `to`, moving coordinate i to
/// i + shift.
pub(crate) fn embed_subspace(from: &FqSpace, to: &FqSpace, s: &Subspace, shift: usize) -> Subspace {
    debug_assert!(from.n() + shift <= to.n() && from.q() == to.q());
    let bits = shift as u32 * to.width();
    to.subspace_raw(s.raw_rows().iter().map(|&r| r << bits).collect())
}

fn space(q: u32, n: usize) -> Result<FqSpace> {
    FqSpace::with_order(q, n)
}

/// All r-subspaces of F_q^n: the trivial S_q[r, r, n].
pub fn trivial_steiner(q: u32, n: usize, r: usize) -> Result<SubspaceDesign> {
    let s = space(q, n)?;
    let blocks: Vec<Subspace> = s.grassmannian(r)?.collect();
    let d = SubspaceDesign::new(s, r, blocks)?.with_label(format!("trivial S_{q}[{r},{r},{n}]"));
    certify(d, r, true)
}

/// The whole space as a single block: S_q[1, n, n].
pub fn full_space_steiner(q: u32, n: usize) -> Result<SubspaceDesign> {
    let s = space(q, n)?;
    let full = s.full_space();
    let d = SubspaceDesign::new(s, n, [full])?.with_label(format!("full space S_{q}[1,{n},{n}]"));
    certify(d, 1.min(n), true)
}

/// A k-spread of F_q^n, k | n: the GF(q^k)-multiples of one representative
/// of each coset of GF(q^k)* in GF(q^n)*, read as F_q-subspaces.
pub fn spread(q: u32, k: usize, n: usize) -> Result<SubspaceDesign> {
    if k == 0 || n == 0 || !n.is_multiple_of(k) {
        return Err(Error::InvalidParameters(format!(
            "a {k}-spread of F_{q}^{n} needs 1 <= k dividing n"
        )));
    }
    let s = space(q, n)?;
    let tower = FieldTower::over(s.field().clone(), n as u32)?;
    let ext = tower.ext().clone();
    let big = ext.order() as i64 - 1;
    let small = (q as i64).pow(k as u32) - 1;
    let gamma = ext.alpha_pow(big / small);
    let to_raw =
        |a: FieldElement| -> Result<u64> { Ok(s.vector(tower.to_base_coords(a))?.packed()) };
    let mut blocks = Vec::with_capacity((big / small) as usize);
    for i in 0..big / small {
        let v = ext.alpha_pow(i);
        let mut rows = Vec::with_capacity(k);
        let mut g = ext.one();
        for _ in 0..k {
            rows.push(to_raw(ext.mul(v, g))?);
            g = ext.mul(g, gamma);
        }
        blocks.push(s.span_raw(rows));
    }
    let d = SubspaceDesign::new(s, k, blocks)?.with_label(format!("spread S_{q}[1,{k},{n}]"));
    certify(d, 1, true)
}

/// P -> P x F_q^delta for every block, new coordinates last.
pub fn lift_covering(d: &SubspaceDesign, delta: usize) -> Result<SubspaceDesign> {
    if !verify_covering(d, 1.min(d.k()))?.is_covering {
        return Err(Error::Unverified(format!(
            "C_{}[{},{},1]",
            d.q(),
            d.n(),
            d.k()
        )));
    }
    let from = d.space();
    let to = from.with_dim(d.n() + delta)?;
    let extra: Vec<u64> = (d.n()..d.n() + delta)
        .map(|i| to.unit(i).packed())
        .collect();
    let blocks: Vec<Subspace> = d
        .blocks()
        .iter()
        .map(|b| {
            let base = embed_subspace(from, &to, b, 0);
            to.span_raw(base.raw_rows().iter().copied().chain(extra.iter().copied()))
        })
        .collect();
    let out = SubspaceDesign::new(to, d.k() + delta, blocks)?.with_label(format!(
        "lift of {} by {delta}",
        d.label().unwrap_or("design")
    ));
    let r = 1.min(out.k());
    certify(out, r, false)
}

/// rho-subspaces plus one m-subspace partitioning the points of F_q^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSpreadResult {
    pub blocks: SubspaceDesign,
    /// Spanned by the last m coordinates.
    pub residual: Subspace,
}

impl PartialSpreadResult {
    pub fn rho(&self) -> usize {
        self.blocks.k()
    }

    pub fn m(&self) -> usize {
        self.residual.dim()
    }
}

/// Splits n = s*rho + m with rho < m < 2 rho.
fn decompose(n: usize, rho: usize) -> Option<(usize, usize)> {
    if rho == 0 {
        return None;
    }
    let m = rho + n % rho;
    let s = (n / rho).checked_sub(1)?;
    (s >= 1 && m > rho && m < 2 * rho).then_some((s, m))
}

/// Partial rho-spread of F_q^n leaving the last-m-coordinates subspace,
/// where n = s*rho + m, rho < m < 2 rho and s >= 1.
///
/// Each level writes F_q^n = F_q^rho x F_q^t, t = n - rho, and takes the
/// q^t graphs {(x, x*a) : x in F_q^rho} for a in GF(q^t), with F_q^rho
/// placed inside GF(q^t); then recurses on {0} x F_q^t.
pub fn partial_spread(q: u32, rho: usize, n: usize) -> Result<PartialSpreadResult> {
    let Some((_, m)) = decompose(n, rho) else {
        return Err(Error::InvalidParameters(format!(
            "n = {n} is not s*{rho} + m with s >= 1 and {rho} < m < {}",
            2 * rho
        )));
    };
    let s = space(q, n)?;
    let base = s.field().clone();
    let mut blocks = Vec::new();
    let mut offset = 0;
    while n - offset > m {
        let t = n - offset - rho;
        graph_blocks(&s, &base, offset, rho, t, &mut blocks)?;
        offset += rho;
    }
    let residual = s.span_raw((n - m..n).map(|i| s.unit(i).packed()));
    let design = SubspaceDesign::new(s.clone(), rho, blocks)?
        .with_label(format!("partial {rho}-spread of F_{q}^{n}"));

    // every point of F_q^n in exactly one piece
    let mut all = design.blocks().to_vec();
    all.push(residual.clone());
    let points = crate::grassmannian::GrassmannIndex::new(&s, 1)?;
    let mut hits = vec![0u8; points.len() as usize];
    for piece in &all {
        for p in s.subspaces_of(piece, 1)? {
            let r = points.rank(&p)? as usize;
            hits[r] = hits[r].saturating_add(1);
        }
    }
    self_check(hits.iter().all(|&h| h == 1), || {
        format!("partial {rho}-spread of F_{q}^{n} does not partition the points")
    })?;
    let expected = (q as u128).pow(m as u32) * ((q as u128).pow((n - m) as u32) - 1)
        / ((q as u128).pow(rho as u32) - 1);
    self_check(design.len() as u128 == expected, || {
        format!(
            "partial spread has {} blocks, expected {expected}",
            design.len()
        )
    })?;
    Ok(PartialSpreadResult {
        blocks: design,
        residual,
    })
}

/// Graphs of x -> x*a, a in GF(q^t), on coordinates offset.. of `s`.
fn graph_blocks(
    s: &FqSpace,
    base: &Arc<Field>,
    offset: usize,
    rho: usize,
    t: usize,
    out: &mut Vec<Subspace>,
) -> Result<()> {
    let tower = FieldTower::over(base.clone(), t as u32)?;
    let ext = tower.ext().clone();
    // images of the first rho basis vectors: 1, a, .., a^(rho-1)
    let basis: Vec<FieldElement> = (0..rho as i64).map(|i| ext.alpha_pow(i)).collect();
    for a in ext.elements() {
        let mut rows = Vec::with_capacity(rho);
        for (i, &b) in basis.iter().enumerate() {
            let mut coords = vec![0u32; s.n()];
            coords[offset + i] = 1;
            let img = tower.to_base_coords(ext.mul(b, a));
            coords[offset + rho..offset + rho + t].copy_from_slice(img);
            rows.push(s.vector(&coords)?.packed());
        }
        out.push(s.span_raw(rows));
    }
    Ok(())
}

/// A C_q[n, k, 1] of size ceil((q^n - 1)/(q^k - 1)).
pub fn optimal_line_covering(q: u32, n: usize, k: usize) -> Result<SubspaceDesign> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let d = if n.is_multiple_of(k) {
        spread(q, k, n)?
    } else if 2 * k >= n {
        lift_covering(&spread(q, n - k, 2 * (n - k))?, 2 * k - n)?
    } else {
        let ps = partial_spread(q, k, n)?;
        let m = ps.m();
        let inner = optimal_line_covering(q, m, k)?;
        let s = ps.blocks.space().clone();
        let mut blocks = ps.blocks.blocks().to_vec();
        blocks.extend(
            inner
                .blocks()
                .iter()
                .map(|b| embed_subspace(inner.space(), &s, b, n - m)),
        );
        SubspaceDesign::new(s, k, blocks)?
    };
    let d = d.with_label(format!("optimal C_{q}[{n},{k},1]"));
    let d = certify(d, 1, false)?;
    let qq = q as u128;
    let target = (qq.pow(n as u32) - 1).div_ceil(qq.pow(k as u32) - 1);
    self_check(d.len() as u128 == target, || {
        format!("C_{q}[{n},{k},1] has {} blocks, expected {target}", d.len())
    })?;
    Ok(d)
}

/// All points of span(e_0, .., e_{n-k}): a T_q[n, k, 1] Turán design.
pub fn turan_point_design(q: u32, n: usize, k: usize) -> Result<SubspaceDesign> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let s = space(q, n)?;
    let host = s.span_raw((0..=n - k).map(|i| s.unit(i).packed()));
    let blocks = s.subspaces_of(&host, 1)?;
    let d = SubspaceDesign::new(s, 1, blocks)?.with_label(format!("Turán T_{q}[{n},{k},1]"));
    let rep = verify_turan(&d, k)?;
    self_check(rep.is_covering, || format!("T_{q}[{n},{k},1] check failed"))?;
    Ok(d)
}

/// Dual of [`turan_point_design`]: a C_q[n, n-1, n-k] of hyperplanes.
pub fn turan_dual_covering(q: u32, n: usize, k: usize) -> Result<SubspaceDesign> {
    let d = turan_point_design(q, n, k)?.dualize().with_label(format!(
        "dual Turán C_{q}[{n},{},{}]",
        n - 1,
        n - k
    ));
    certify(d, n - k, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_structures() {
        assert_eq!(trivial_steiner(2, 3, 2).unwrap().len(), 7);
        assert_eq!(trivial_steiner(3, 4, 4).unwrap().len(), 1);
        let f = full_space_steiner(2, 4).unwrap();
        assert_eq!(f.len(), 1);
        assert!(verify_steiner(&f, 1).unwrap().is_steiner);
    }

    #[test]
    fn spreads() {
        assert_eq!(spread(2, 2, 4).unwrap().len(), 5);
        assert_eq!(spread(2, 3, 6).unwrap().len(), 9);
        assert_eq!(spread(2, 1, 5).unwrap().len(), 31);
        assert_eq!(spread(3, 2, 4).unwrap().len(), 10);
        assert_eq!(spread(4, 2, 4).unwrap().len(), 17);
        assert_eq!(spread(2, 4, 4).unwrap().len(), 1);
        assert!(matches!(spread(2, 3, 7), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn lifts() {
        let s = spread(2, 2, 4).unwrap();
        assert_eq!(lift_covering(&s, 0).unwrap().blocks(), s.blocks());
        let l = lift_covering(&s, 1).unwrap();
        assert_eq!((l.n(), l.k(), l.len()), (5, 3, 5));
        assert_eq!(
            lift_covering(&spread(2, 1, 2).unwrap(), 1).unwrap().len(),
            3
        );
        let s2 = FqSpace::with_order(2, 4).unwrap();
        let one = SubspaceDesign::new(s2.clone(), 2, s2.grassmannian(2).unwrap().take(1)).unwrap();
        assert!(matches!(lift_covering(&one, 1), Err(Error::Unverified(_))));
    }

    #[test]
    fn partial_spreads() {
        let p = partial_spread(2, 2, 5).unwrap();
        assert_eq!((p.blocks.len(), p.m()), (8, 3));
        let p = partial_spread(2, 3, 7).unwrap();
        assert_eq!((p.blocks.len(), p.m()), (16, 4));
        let p = partial_spread(2, 2, 7).unwrap();
        assert_eq!((p.blocks.len(), p.m()), (40, 3));
        let p = partial_spread(3, 2, 5).unwrap();
        assert_eq!((p.blocks.len(), p.m()), (27, 3));
        assert!(partial_spread(2, 2, 6).is_err());
        assert!(partial_spread(2, 3, 4).is_err());
    }

    #[test]
    fn line_coverings() {
        assert_eq!(optimal_line_covering(2, 5, 2).unwrap().len(), 11);
        assert_eq!(optimal_line_covering(2, 5, 3).unwrap().len(), 5);
        assert_eq!(optimal_line_covering(2, 6, 2).unwrap().len(), 21);
        assert_eq!(optimal_line_covering(2, 7, 2).unwrap().len(), 43);
        assert_eq!(optimal_line_covering(3, 5, 2).unwrap().len(), 31);
    }

    #[test]
    fn turan_designs() {
        let t = turan_point_design(2, 4, 3).unwrap();
        assert_eq!(t.len(), 3);
        let dual = turan_dual_covering(2, 4, 3).unwrap();
        assert_eq!((dual.k(), dual.len()), (3, 3));
        assert_eq!(turan_point_design(2, 4, 1).unwrap().len(), 15);
        let dual = turan_dual_covering(2, 5, 3).unwrap();
        assert_eq!((dual.k(), dual.len()), (4, 7));
    }
}
