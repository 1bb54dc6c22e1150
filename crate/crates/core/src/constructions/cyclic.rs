use std::collections::BTreeSet;
use std::sync::Arc;

use super::{certify, self_check};
use crate::design::SubspaceDesign;
use crate::error::Result;
use crate::field::{Field, FieldElement};
use crate::vector::FqSpace;

/// Exponent sets of the orbit representatives over GF(64), modulus x^6+x+1.
pub const CYCLIC_BASE_SETS: [[i64; 4]; 5] = [
    [0, 1, 4, 16],
    [0, 2, 8, 32],
    [0, 5, 27, 40],
    [0, 7, 44, 53],
    [0, 11, 29, 49],
];

/// Exponents of the nonzero vectors of the hyperplane blocks.
pub const CYCLIC_HYPERPLANE_EXPONENTS: [i64; 7] = [0, 1, 4, 6, 16, 24, 33];

const X6_X_1: [u32; 7] = [1, 1, 0, 0, 0, 0, 1];

/// The cyclic 399-block C_2[7,3,2].
///
/// F_2^7 is GF(64) x F_2: coordinates 0..5 are the polynomial coefficients
/// of beta, coordinate 6 is the extra bit. Blocks, for l a shift:
/// 315 spans of (a^(j+l), 1), j in A_i; 21 spans of (a^l, 0), (a^(21+l), 0),
/// (0, 1); 63 spans of (a^(e+l), 0), e in the B exponents.
pub fn cyclic_gf64_design() -> Result<SubspaceDesign> {
    let gf = Arc::new(Field::new(2, 6, Some(&X6_X_1))?);
    let space = FqSpace::new(Arc::new(Field::with_order(2)?), 7)?;

    let mut all_diffs = BTreeSet::new();
    for a in &CYCLIC_BASE_SETS {
        let diffs: BTreeSet<i64> = a
            .iter()
            .flat_map(|x| {
                a.iter()
                    .filter(move |y| *y != x)
                    .map(move |y| (x - y).rem_euclid(63))
            })
            .collect();
        self_check(diffs.len() == 12, || {
            format!("{a:?} has {} differences", diffs.len())
        })?;
        all_diffs.extend(diffs);
        let sum = a
            .iter()
            .fold(gf.zero(), |acc, &j| gf.add(acc, gf.alpha_pow(j)));
        self_check(sum.is_zero(), || {
            format!("powers of {a:?} do not sum to zero")
        })?;
    }
    let expect: BTreeSet<i64> = (1..63).filter(|d| d % 21 != 0).collect();
    self_check(all_diffs == expect, || {
        "difference sets do not cover Z_63 \\ {0,21,42}".into()
    })?;

    let vec = |beta: FieldElement, bit: u32| -> u64 {
        let mut coords = gf.coefficients(beta);
        coords.push(bit);
        space.vector(&coords).expect("binary coordinates").packed()
    };
    let mut blocks = Vec::with_capacity(399);
    let mut push = |points: Vec<u64>| -> Result<()> {
        let b = space.span_raw(points.iter().copied());
        let members: BTreeSet<u64> = space.vectors_raw(b.raw_rows())?.into_iter().collect();
        let listed: BTreeSet<u64> = points.iter().copied().chain([0]).collect();
        self_check(b.dim() == 3 && members == listed, || {
            format!("listed vectors do not form a 3-subspace: {b}")
        })?;
        blocks.push(b);
        Ok(())
    };
    for a in &CYCLIC_BASE_SETS {
        for l in 0..63 {
            let odd: Vec<u64> = a.iter().map(|&j| vec(gf.alpha_pow(j + l), 1)).collect();
            let x = gf.alpha_pow(a[0] + l);
            let even = a[1..]
                .iter()
                .map(|&j| vec(gf.add(x, gf.alpha_pow(j + l)), 0));
            push(odd.iter().copied().chain(even).collect())?;
        }
    }
    for l in 0..21 {
        let third: Vec<FieldElement> = [0, 21, 42].iter().map(|&e| gf.alpha_pow(e + l)).collect();
        let mut pts: Vec<u64> = third.iter().map(|&b| vec(b, 0)).collect();
        pts.extend(third.iter().map(|&b| vec(b, 1)));
        pts.push(vec(gf.zero(), 1));
        push(pts)?;
    }
    for l in 0..63 {
        push(
            CYCLIC_HYPERPLANE_EXPONENTS
                .iter()
                .map(|&e| vec(gf.alpha_pow(e + l), 0))
                .collect(),
        )?;
    }

    let d = SubspaceDesign::new(space, 3, blocks)?.with_label("cyclic C_2[7,3,2] over GF(64)");
    self_check(d.len() == 399, || {
        format!("{} blocks instead of 399", d.len())
    })?;
    certify(d, 2, false)
}
