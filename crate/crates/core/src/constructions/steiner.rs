use super::{certify, self_check};
use crate::design::{verify_steiner, verify_steiner_system, SetSystem, SubspaceDesign};
use crate::error::{Error, Result};
use crate::subspace::Subspace;

/// Turns a binary S_2[2, k, n] into a point Steiner system S(3, 2^k, 2^n):
/// the points are the vectors of F_2^n, the blocks every coset of every block.
///
/// A vector's point index is its bit string c_0 c_1 .. c_{n-1} read as a
/// binary number, so c_0 is the most significant bit.
pub fn expand_to_steiner_system(s: &SubspaceDesign) -> Result<SetSystem> {
    if s.q() != 2 {
        return Err(Error::InvalidParameters(format!(
            "expansion needs q = 2, got q = {}",
            s.q()
        )));
    }
    let (n, k) = (s.n(), s.k());
    if n > 16 {
        return Err(Error::BudgetExceeded {
            what: format!("point set of F_2^{n}"),
            needed: 1u128 << n,
            limit: 1 << 16,
        });
    }
    if k < 2 || !verify_steiner(s, 2)?.is_steiner {
        return Err(Error::Unverified(format!("S_2[2,{k},{n}]")));
    }
    let space = s.space();
    let index = |v: u64| -> u32 { (0..n).fold(0, |acc, i| acc << 1 | (v >> i & 1) as u32) };
    let full = space.full_space();
    let mut blocks = Vec::new();
    for b in s.blocks() {
        let members = space.vectors_raw(b.raw_rows())?;
        for beta in space.cosets(b, &full)? {
            let beta = beta.packed();
            blocks.push(members.iter().map(|&v| index(v ^ beta)).collect());
        }
    }
    let sys = SetSystem::new(1 << n, 1 << k, blocks)?;

    let pow = |e: usize| (1u128 << e) - 1;
    let expected = (1u128 << (n - k)) * pow(n) * pow(n - 1) / (pow(k) * pow(k - 1));
    self_check(sys.len() as u128 == expected, || {
        format!("{} blocks, expected {expected}", sys.len())
    })?;
    let rep = verify_steiner_system(&sys, 3)?;
    self_check(rep.is_steiner, || {
        format!(
            "expansion of S_2[2,{k},{n}] is not an S(3,{},{})",
            1 << k,
            1 << n
        )
    })?;
    Ok(sys)
}

/// From a verified S_q[t, k, n] and a point P, the blocks through P taken
/// modulo P. Coordinates are those of F_q^n with P's pivot column removed;
/// the result is verified as an S_q[t-1, k-1, n-1].
pub fn derive_steiner(s: &SubspaceDesign, t: usize, p: &Subspace) -> Result<SubspaceDesign> {
    let space = s.space();
    space.check_subspace(p)?;
    if t < 2 || p.dim() != 1 || s.k() == 0 {
        return Err(Error::InvalidParameters(
            "derivation needs t >= 2 and a 1-dimensional P".into(),
        ));
    }
    if t > s.k() || !verify_steiner(s, t)?.is_steiner {
        return Err(Error::Unverified(format!(
            "S_{}[{t},{},{}]",
            s.q(),
            s.k(),
            s.n()
        )));
    }
    let n = s.n();
    let pv = p.raw_rows()[0];
    let c = space.pivot(pv).expect("nonzero");
    let small = space.with_dim(n - 1)?;
    let w = space.width();
    let low_mask = (1u64 << (c as u32 * w)) - 1;
    let project = |v: u64| -> u64 {
        let coef = space.coord(v, c);
        let v = if coef == 0 {
            v
        } else {
            space.axpy_raw(space.field().neg_raw(coef), pv, v)
        };
        (v & low_mask) | (v >> ((c as u32 + 1) * w) << (c as u32 * w))
    };
    let blocks: Vec<Subspace> = s
        .blocks()
        .iter()
        .filter(|b| space.contains_raw(b.raw_rows(), p.raw_rows()))
        .map(|b| small.span_raw(b.raw_rows().iter().map(|&r| project(r))))
        .collect();
    let d = SubspaceDesign::new(small, s.k() - 1, blocks)?.with_label(format!(
        "derived S_{}[{},{},{}]",
        s.q(),
        t - 1,
        s.k() - 1,
        n - 1
    ));
    certify(d, t - 1, true)
}
