//! Recursive coverings assembled from the direct constructions.

use qcover::constructions as cons;
use qcover::{FqSpace, Result, SubspaceDesign};

/// A C_q[n, k, r] from the recursion, bottoming out in spreads, hyperplane
/// coverings, trivial designs and single blocks.
pub fn recursive(q: u32, n: usize, k: usize, r: usize) -> Result<SubspaceDesign> {
    if r == 0 || k == 0 || r > k || k > n {
        return Err(qcover::Error::InvalidParameters(format!(
            "recursive covering needs 1 <= r <= k <= n, got n={n} k={k} r={r}"
        )));
    }
    if n == k || r == k || r == 1 || k + 1 == n {
        return base(q, n, k, r);
    }
    let s1 = best(q, n - 1, k - 1, r - 1)?;
    let s2 = best(q, n - 1, k, r)?;
    cons::recursive_covering(&s1, &s2, r)
}

fn best(q: u32, n: usize, k: usize, r: usize) -> Result<SubspaceDesign> {
    if r == 0 {
        let s = FqSpace::with_order(q, n)?;
        let block = s.span(&(0..k).map(|i| s.unit(i)).collect::<Vec<_>>())?;
        return SubspaceDesign::new(s, k, vec![block]);
    }
    if n == k || r == k || r == 1 || k + 1 == n {
        return base(q, n, k, r);
    }
    recursive(q, n, k, r)
}

fn base(q: u32, n: usize, k: usize, r: usize) -> Result<SubspaceDesign> {
    if n == k {
        cons::full_space_steiner(q, n)
    } else if r == k {
        cons::trivial_steiner(q, n, r)
    } else if r == 1 {
        cons::optimal_line_covering(q, n, k)
    } else {
        cons::turan_dual_covering(q, n, n - r)
    }
}
