use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use super::SubspaceDesign;
use crate::error::{Error, Result};
use crate::grassmannian::{binomial, GrassmannIndex, SubspaceStencil, MAX_SUBSPACES};

pub const SET_SYSTEM_MAGIC: &str = "qcover-setsystem v1";

/// Uniform family of distinct subsets of {0, .., v-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    v: u32,
    block_size: usize,
    blocks: Vec<Vec<u32>>,
}

impl SetSystem {
    /// Sorts every block and the block list. Rejects non-uniform sizes,
    /// out-of-range points, repeated points and duplicate blocks.
    pub fn new(v: u32, block_size: usize, blocks: Vec<Vec<u32>>) -> Result<SetSystem> {
        let mut out = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.sort_unstable();
            if b.len() != block_size {
                return Err(Error::InvalidParameters(format!(
                    "block of size {} in a system of {block_size}-sets",
                    b.len()
                )));
            }
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameters("repeated point in a block".into()));
            }
            if b.last().is_some_and(|&x| x >= v) {
                return Err(Error::InvalidParameters(format!(
                    "point out of range 0..{v}"
                )));
            }
            out.push(b);
        }
        out.sort_unstable();
        let before = out.len();
        out.dedup();
        if out.len() != before {
            return Err(Error::InvalidParameters("duplicate blocks".into()));
        }
        Ok(SetSystem {
            v,
            block_size,
            blocks: out,
        })
    }

    pub fn points(&self) -> u32 {
        self.v
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }
}

/// Counts of how often each t-subset of points lies in a block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerSystemReport {
    pub t: usize,
    pub total: u64,
    pub histogram: BTreeMap<u64, u64>,
    pub min: u64,
    pub max: u64,
    /// Up to 16 t-subsets whose multiplicity is not 1.
    pub witnesses: Vec<Vec<u32>>,
    pub is_steiner: bool,
}

/// Colex rank of a sorted subset.
fn colex_rank(set: &[u32]) -> u64 {
    set.iter()
        .enumerate()
        .map(|(i, &x)| binomial(x as usize, i + 1))
        .sum()
}

fn colex_unrank(mut rank: u64, t: usize) -> Vec<u32> {
    let mut out = vec![0u32; t];
    for i in (1..=t).rev() {
        let mut x = i - 1;
        while binomial(x + 1, i) <= rank {
            x += 1;
        }
        rank -= binomial(x, i);
        out[i - 1] = x as u32;
    }
    out
}

/// Checks that every t-subset of points lies in exactly one block.
pub fn verify_steiner_system(s: &SetSystem, t: usize) -> Result<SteinerSystemReport> {
    if t > s.block_size {
        return Err(Error::InvalidParameters(format!(
            "t = {t} exceeds block size {}",
            s.block_size
        )));
    }
    let total = binomial(s.v as usize, t);
    if total > MAX_SUBSPACES {
        return Err(Error::BudgetExceeded {
            what: format!("{t}-subsets of {} points", s.v),
            needed: total as u128,
            limit: MAX_SUBSPACES as u128,
        });
    }
    let mut counts = vec![0u32; total as usize];
    let mut idx: Vec<usize> = (0..t).collect();
    let mut sub = vec![0u32; t];
    for b in &s.blocks {
        idx.iter_mut().enumerate().for_each(|(i, x)| *x = i);
        loop {
            for (slot, &i) in sub.iter_mut().zip(&idx) {
                *slot = b[i];
            }
            counts[colex_rank(&sub) as usize] += 1;
            if !next_subset(&mut idx, b.len()) {
                break;
            }
        }
    }
    let mut histogram = BTreeMap::new();
    let mut witnesses = Vec::new();
    for (rank, &c) in counts.iter().enumerate() {
        *histogram.entry(c as u64).or_insert(0) += 1;
        if c != 1 && witnesses.len() < 16 {
            witnesses.push(colex_unrank(rank as u64, t));
        }
    }
    let min = histogram.keys().next().copied().unwrap_or(0);
    let max = histogram.keys().next_back().copied().unwrap_or(0);
    Ok(SteinerSystemReport {
        t,
        total,
        histogram,
        min,
        max,
        witnesses,
        is_steiner: min == 1 && max == 1,
    })
}

fn next_subset(c: &mut [usize], n: usize) -> bool {
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

/// Replaces each block by the set of projective points it contains.
/// Points are numbered by their rank among the 1-subspaces.
pub fn to_point_set_system(d: &SubspaceDesign) -> Result<SetSystem> {
    let space = d.space();
    let points = GrassmannIndex::new(space, 1)?;
    let stencil = SubspaceStencil::new(space, d.k(), 1)?;
    let blocks: Vec<Vec<u32>> = d
        .blocks()
        .par_iter()
        .map(|b| {
            let mut pts = Vec::with_capacity(stencil.len());
            stencil.for_each(b.raw_rows(), |rows| pts.push(points.rank_raw(rows) as u32));
            pts
        })
        .collect();
    SetSystem::new(points.len() as u32, stencil.len(), blocks)
}

pub fn write_set_system(s: &SetSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{SET_SYSTEM_MAGIC}");
    let _ = writeln!(out, "v={} b={} size={}", s.v, s.blocks.len(), s.block_size);
    for b in &s.blocks {
        let line: Vec<String> = b.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse_set_system(text: &str) -> Result<SetSystem> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, l)) if l == SET_SYSTEM_MAGIC => {}
        Some((i, _)) => return Err(perr(i, format!("expected `{SET_SYSTEM_MAGIC}`"))),
        None => return Err(perr(0, "empty input".into())),
    }
    let (hline, header) = lines
        .next()
        .ok_or_else(|| perr(0, "missing header".into()))?;
    let mut v = None;
    let mut b = None;
    let mut size = None;
    for tok in header.split_whitespace() {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| perr(hline, format!("bad header field `{tok}`")))?;
        let val: u64 = val
            .parse()
            .map_err(|_| perr(hline, format!("bad number in `{tok}`")))?;
        match key {
            "v" => v = Some(val),
            "b" => b = Some(val),
            "size" => size = Some(val),
            _ => return Err(perr(hline, format!("unknown header field `{key}`"))),
        }
    }
    let (Some(v), Some(b), Some(size)) = (v, b, size) else {
        return Err(perr(hline, "header needs v=, b= and size=".into()));
    };
    let mut blocks = Vec::new();
    for (i, l) in lines {
        let block: std::result::Result<Vec<u32>, _> =
            l.split_whitespace().map(str::parse).collect();
        blocks.push(block.map_err(|_| perr(i, "bad point".into()))?);
    }
    if blocks.len() as u64 != b {
        return Err(perr(
            hline,
            format!("header says b={b}, found {}", blocks.len()),
        ));
    }
    SetSystem::new(v as u32, size as usize, blocks)
}
