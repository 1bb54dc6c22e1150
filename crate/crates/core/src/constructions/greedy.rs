use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::certify;
use crate::design::SubspaceDesign;
use crate::error::{Error, Result};
use crate::grassmannian::{GrassmannIndex, SubspaceStencil};
use crate::vector::FqSpace;

/// Repeatedly adds the k-subspace covering the most uncovered r-subspaces,
/// taking the first in enumeration order on ties.
pub fn greedy_covering(q: u32, n: usize, k: usize, r: usize) -> Result<SubspaceDesign> {
    if r > k || k > n {
        return Err(Error::InvalidParameters(format!(
            "need r <= k <= n, got n={n} k={k} r={r}"
        )));
    }
    let space = FqSpace::with_order(q, n)?;
    let targets = GrassmannIndex::new(&space, r)?;
    let candidates = GrassmannIndex::new(&space, k)?;
    let stencil = SubspaceStencil::new(&space, k, r)?;
    let per_block = stencil.len() as u64;

    let mut covered = vec![false; targets.len() as usize];
    let mut remaining = targets.len();
    let gain = |idx: u64, covered: &[bool]| -> u64 {
        let block = candidates.unrank(idx).expect("in range");
        let mut g = 0;
        stencil.for_each(block.raw_rows(), |rows| {
            if !covered[targets.rank_raw(rows) as usize] {
                g += 1;
            }
        });
        g
    };

    let mut heap: BinaryHeap<(u64, Reverse<u64>)> = (0..candidates.len())
        .map(|i| (per_block, Reverse(i)))
        .collect();
    let mut chosen = Vec::new();
    while remaining > 0 {
        let (stale, Reverse(idx)) = heap.pop().expect("uncovered targets remain");
        let fresh = gain(idx, &covered);
        if fresh < stale {
            if fresh > 0 {
                heap.push((fresh, Reverse(idx)));
            }
            continue;
        }
        let block = candidates.unrank(idx)?;
        stencil.for_each(block.raw_rows(), |rows| {
            let t = targets.rank_raw(rows) as usize;
            if !covered[t] {
                covered[t] = true;
                remaining -= 1;
            }
        });
        chosen.push(block);
    }
    let d = SubspaceDesign::new(space, k, chosen)?.with_label(format!("greedy C_{q}[{n},{k},{r}]"));
    certify(d, r, false)
}
