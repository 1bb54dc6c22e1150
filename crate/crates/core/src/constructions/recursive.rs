use super::{certify, embed_subspace, self_check};
use crate::design::{verify_covering, SubspaceDesign};
use crate::error::{Error, Result};

/// Builds a C_q[n, k, r] from a C_q[n-1, k-1, r-1] `s1` and a C_q[n-1, k, r]
/// `s2`. The new coordinate is the last one.
///
/// For each block P of s1 and each coset representative b of P in
/// F_q^(n-1), the block span(P x {0}, (b, 1)); then every block of s2 inside
/// the hyperplane where the last coordinate is 0.
pub fn recursive_covering(
    s1: &SubspaceDesign,
    s2: &SubspaceDesign,
    r: usize,
) -> Result<SubspaceDesign> {
    if r == 0 {
        return Err(Error::InvalidParameters("recursion needs r >= 1".into()));
    }
    if s1.space() != s2.space() {
        return Err(Error::Mismatch(format!(
            "inputs live in F_{}^{} and F_{}^{}",
            s1.q(),
            s1.n(),
            s2.q(),
            s2.n()
        )));
    }
    let k = s2.k();
    if s1.k() + 1 != k {
        return Err(Error::Mismatch(format!(
            "block dimensions {} and {k} must differ by one",
            s1.k()
        )));
    }
    for (d, rr) in [(s1, r - 1), (s2, r)] {
        if rr > d.k() || !verify_covering(d, rr)?.is_covering {
            return Err(Error::Unverified(format!(
                "C_{}[{},{},{rr}]",
                d.q(),
                d.n(),
                d.k()
            )));
        }
    }

    let small = s1.space();
    let n = small.n() + 1;
    let big = small.with_dim(n)?;
    let last = big.unit(n - 1).packed();
    let full = small.full_space();
    let mut blocks =
        Vec::with_capacity(s1.len() * small.q().pow((n - k) as u32) as usize + s2.len());
    for p in s1.blocks() {
        let lifted = embed_subspace(small, &big, p, 0);
        for b in small.cosets(p, &full)? {
            let v = big.add_raw(b.packed(), last);
            blocks.push(big.span_raw(lifted.raw_rows().iter().copied().chain([v])));
        }
    }
    blocks.extend(
        s2.blocks()
            .iter()
            .map(|b| embed_subspace(small, &big, b, 0)),
    );

    let expected = (small.q() as usize).pow((n - k) as u32) * s1.len() + s2.len();
    self_check(blocks.len() == expected, || {
        format!(
            "recursion produced {} blocks, expected {expected}",
            blocks.len()
        )
    })?;
    let d = SubspaceDesign::new(big, k, blocks)?
        .with_label(format!("recursive C_{}[{n},{k},{r}]", small.q()));
    certify(d, r, false)
}
