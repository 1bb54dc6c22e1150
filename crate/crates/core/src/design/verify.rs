use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;

use super::SubspaceDesign;
use crate::error::{Error, Result};
use crate::grassmannian::{GrassmannIndex, GrassmannianCursor, SubspaceStencil};
use crate::subspace::Subspace;

/// Maximum number of uncovered targets listed in a report.
pub const WITNESS_CAP: usize = 16;

/// How incidences between blocks and targets are counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Pick by the cost model.
    #[default]
    Auto,
    /// Enumerate the sub-subspaces of each block (covering) or of each
    /// target (Turán) and look them up by rank.
    BlockExpansion,
    /// Test every target against every block.
    TargetScan,
}

/// Exact incidence counts for one verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    /// Number of target subspaces.
    pub total: u64,
    /// multiplicity -> number of targets with that multiplicity
    pub histogram: BTreeMap<u64, u64>,
    pub min: u64,
    pub max: u64,
    /// Up to [`WITNESS_CAP`] targets with multiplicity zero, in enumeration order.
    pub witnesses: Vec<Subspace>,
    /// Every target has multiplicity >= 1.
    pub is_covering: bool,
    /// Every target has multiplicity exactly 1.
    pub is_steiner: bool,
}

impl CoverageReport {
    fn from_counts(index: &GrassmannIndex, counts: &[u32]) -> CoverageReport {
        let mut histogram = BTreeMap::new();
        let mut witnesses = Vec::new();
        for (rank, &c) in counts.iter().enumerate() {
            *histogram.entry(c as u64).or_insert(0) += 1;
            if c == 0 && witnesses.len() < WITNESS_CAP {
                witnesses.push(index.unrank(rank as u64).expect("rank in range"));
            }
        }
        let min = histogram.keys().next().copied().unwrap_or(0);
        let max = histogram.keys().next_back().copied().unwrap_or(0);
        CoverageReport {
            total: counts.len() as u64,
            histogram,
            min,
            max,
            witnesses,
            is_covering: min >= 1,
            is_steiner: min == 1 && max == 1,
        }
    }

    /// Turán verdict: every target contains a block. Same flag as `is_covering`.
    pub fn is_turan(&self) -> bool {
        self.is_covering
    }

    /// Sum over targets of their multiplicity.
    pub fn incidences(&self) -> u64 {
        self.histogram.iter().map(|(m, c)| m * c).sum()
    }
}

/// Checks that every r-subspace lies in at least one block.
pub fn verify_covering(d: &SubspaceDesign, r: usize) -> Result<CoverageReport> {
    verify_covering_with(d, r, Strategy::Auto)
}

/// Same as [`verify_covering`]; the Steiner verdict is `is_steiner`.
pub fn verify_steiner(d: &SubspaceDesign, r: usize) -> Result<CoverageReport> {
    verify_covering_with(d, r, Strategy::Auto)
}

pub fn verify_covering_with(
    d: &SubspaceDesign,
    r: usize,
    strategy: Strategy,
) -> Result<CoverageReport> {
    if r > d.k() {
        return Err(Error::InvalidParameters(format!(
            "covering strength r = {r} exceeds block dimension {}",
            d.k()
        )));
    }
    let space = d.space();
    let index = GrassmannIndex::new(space, r)?;
    let stencil_len = crate::grassmannian::gaussian_count(d.k(), r, d.q());
    let expand = match strategy {
        Strategy::BlockExpansion => true,
        Strategy::TargetScan => false,
        // |D|·[k r] rank lookups against [n r]·|D| containment tests
        Strategy::Auto => d.len() as u128 * stencil_len <= index.len() as u128 * d.len() as u128,
    };

    let counts: Vec<u32> = if expand {
        let stencil = SubspaceStencil::new(space, d.k(), r)?;
        let counts: Vec<AtomicU32> = (0..index.len()).map(|_| AtomicU32::new(0)).collect();
        d.blocks().par_iter().for_each(|b| {
            stencil.for_each(b.raw_rows(), |rows| {
                counts[index.rank_raw(rows) as usize].fetch_add(1, Ordering::Relaxed);
            });
        });
        counts.into_iter().map(AtomicU32::into_inner).collect()
    } else {
        per_pivot_set(&index, |target| {
            d.blocks()
                .iter()
                .filter(|b| space.contains_raw(b.raw_rows(), target.raw_rows()))
                .count() as u32
        })?
    };
    Ok(CoverageReport::from_counts(&index, &counts))
}

/// Checks that every k-subspace contains at least one block.
pub fn verify_turan(d: &SubspaceDesign, k: usize) -> Result<CoverageReport> {
    verify_turan_with(d, k, Strategy::Auto)
}

pub fn verify_turan_with(
    d: &SubspaceDesign,
    k: usize,
    strategy: Strategy,
) -> Result<CoverageReport> {
    let r = d.k();
    let space = d.space();
    if k < r || k > space.n() {
        return Err(Error::InvalidParameters(format!(
            "Turán target dimension {k} must lie in [{r}, {}]",
            space.n()
        )));
    }
    let index = GrassmannIndex::new(space, k)?;
    let stencil_len = crate::grassmannian::gaussian_count(k, r, d.q());
    let expand = match strategy {
        Strategy::BlockExpansion => true,
        Strategy::TargetScan => false,
        // [n k]·[k r] lookups against [n k]·|D| containment tests
        Strategy::Auto => stencil_len <= d.len() as u128,
    };

    let counts = if expand {
        let block_index = GrassmannIndex::new(space, r)?;
        let mut is_block = vec![false; block_index.len() as usize];
        for b in d.blocks() {
            is_block[block_index.rank_raw(b.raw_rows()) as usize] = true;
        }
        let stencil = SubspaceStencil::new(space, k, r)?;
        per_pivot_set(&index, |target| {
            let mut hits = 0;
            stencil.for_each(target.raw_rows(), |rows| {
                if is_block[block_index.rank_raw(rows) as usize] {
                    hits += 1;
                }
            });
            hits
        })?
    } else {
        per_pivot_set(&index, |target| {
            d.blocks()
                .iter()
                .filter(|b| space.contains_raw(target.raw_rows(), b.raw_rows()))
                .count() as u32
        })?
    };
    Ok(CoverageReport::from_counts(&index, &counts))
}

/// Evaluates `f` on every subspace of the index, in rank order, splitting
/// the work by pivot set.
fn per_pivot_set<F>(index: &GrassmannIndex, f: F) -> Result<Vec<u32>>
where
    F: Fn(&Subspace) -> u32 + Sync,
{
    let space = index.space();
    let parts: Result<Vec<Vec<u32>>> = (0..index.pivot_set_count())
        .into_par_iter()
        .map(|set| {
            let cursor = GrassmannianCursor::for_pivot_set(space, index.pivot_set(set as u64))?;
            Ok(cursor.map(|t| f(&t)).collect())
        })
        .collect();
    Ok(parts?.concat())
}
