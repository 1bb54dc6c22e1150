//! Exact bounds on q-covering numbers C_q(n, k, r).
//!
//! Everything here is integer or exact-rational arithmetic; ceilings are
//! taken on exact quotients.

mod table;

pub use table::{bound_table, BoundRecord, BoundTable, Source};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

fn pow(q: u64, e: u64) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// q^e - 1
fn qm1(q: u64, e: u64) -> BigUint {
    pow(q, e) - 1u32
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    a.div_ceil(b)
}

/// Gaussian binomial coefficient [n l]_q; zero when l > n.
pub fn gaussian(n: u64, l: u64, q: u64) -> BigCount {
    if l > n {
        return BigUint::zero();
    }
    let l = l.min(n - l);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..l {
        num *= qm1(q, n - i);
        den *= qm1(q, i + 1);
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quot
}

/// The exact ratio [n r]_q / [k r]_q.
pub fn basic_ratio(n: u64, k: u64, r: u64, q: u64) -> Ratio<BigCount> {
    Ratio::new(gaussian(n, r, q), gaussian(k, r, q))
}

/// ceil([n r]_q / [k r]_q): every r-subspace must sit in some block and each
/// block holds [k r]_q of them.
pub fn basic_lower(n: u64, k: u64, r: u64, q: u64) -> BigCount {
    basic_ratio(n, k, r, q).ceil().to_integer()
}

/// Iterated Schönheim-type bound, nesting the ceilings down to the r = 1
/// line-covering value.
pub fn schonheim_lower(n: u64, k: u64, r: u64, q: u64) -> BigCount {
    if r == 0 {
        return BigUint::one();
    }
    let mut bound = ceil_div(&qm1(q, n - r + 1), &qm1(q, k - r + 1));
    for j in 2..=r {
        bound = ceil_div(&(qm1(q, n - r + j) * bound), &qm1(q, k - r + j));
    }
    bound
}

/// One Schönheim step on top of a known lower bound for C_q(n-1, k-1, r-1).
pub fn schonheim_step(n: u64, k: u64, q: u64, sub_lower: &BigCount) -> BigCount {
    ceil_div(&(qm1(q, n) * sub_lower), &qm1(q, k))
}

/// q-analog de Caen bound for C_q(n, k, k-1), needs 1 <= k < n.
pub fn decaen_lower(n: u64, k: u64, q: u64) -> BigCount {
    assert!(k >= 1 && k < n, "de Caen bound needs 1 <= k < n");
    let num = qm1(q, k) * (q - 1) * gaussian(n, k + 1, q);
    let den = qm1(q, n - k).pow(2);
    ceil_div(&num, &den)
}

/// The same bound phrased for Turán numbers T_q(n, r+1, r), needs 1 <= r < n.
pub fn decaen_turan_lower(n: u64, r: u64, q: u64) -> BigCount {
    assert!(r >= 1 && r < n, "de Caen bound needs 1 <= r < n");
    let num = qm1(q, n - r) * (q - 1) * gaussian(n, r - 1, q);
    let den = qm1(q, r).pow(2);
    ceil_div(&num, &den)
}

/// Which closed form produced an exact covering number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExactKind {
    /// r = 0 or k = n: one block suffices.
    SingleBlock,
    /// r = k: every r-subspace is its own block.
    AllSubspaces,
    /// r = 1: ceil((q^n-1)/(q^k-1)).
    LineCovering,
    /// k = n-1: (q^(r+1)-1)/(q-1).
    Hyperplane,
    /// C_2(5,3,2) = 27.
    Known,
}

/// Exact covering number where one is known, with its provenance.
pub fn exact_with_kind(n: u64, k: u64, r: u64, q: u64) -> Option<(BigCount, ExactKind)> {
    if r > k || k > n {
        return None;
    }
    if r == 0 || k == n {
        return Some((BigUint::one(), ExactKind::SingleBlock));
    }
    if r == k {
        return Some((gaussian(n, k, q), ExactKind::AllSubspaces));
    }
    if r == 1 {
        return Some((ceil_div(&qm1(q, n), &qm1(q, k)), ExactKind::LineCovering));
    }
    if k + 1 == n {
        return Some((qm1(q, r + 1) / (q - 1), ExactKind::Hyperplane));
    }
    if (q, n, k, r) == (2, 5, 3, 2) {
        return Some((BigUint::from(27u32), ExactKind::Known));
    }
    None
}

pub fn exact_value(n: u64, k: u64, r: u64, q: u64) -> Option<BigCount> {
    exact_with_kind(n, k, r, q).map(|(v, _)| v)
}

/// T_q(n, k, r) <= [n-k+r r]_q: all r-subspaces of one (n-k+r)-subspace.
pub fn turan_upper(n: u64, k: u64, r: u64, q: u64) -> BigCount {
    gaussian(n - k + r, r, q)
}

/// C_q(n, k, r) <= [n-k+r r]_q, the dual of [`turan_upper`].
pub fn covering_upper_trivial(n: u64, k: u64, r: u64, q: u64) -> BigCount {
    gaussian(n - k + r, r, q)
}

/// C_q(n, k, r) <= q^(n-k) C_q(n-1, k-1, r-1) + C_q(n-1, k, r), given upper
/// bounds for the two smaller parameter sets.
pub fn recursive_upper(
    n: u64,
    k: u64,
    q: u64,
    sub_lift: &BigCount,
    sub_flat: &BigCount,
) -> BigCount {
    pow(q, n - k) * sub_lift + sub_flat
}

/// g(n) = 4 g(n-1) + 2^(n-2) - 1 with g(4) = 5: the recursive upper bound on
/// C_2(n, n-2, n-3) started from the binary spread of F_2^4.
pub fn recursion_g(n: u64) -> BigCount {
    assert!(n >= 4);
    let mut g = BigUint::from(5u32);
    for m in 5..=n {
        g = g * 4u32 + pow(2, m - 2) - 1u32;
    }
    g
}

/// Closed form 9*2^(2n-8) - 2^(n-2) - (2^(2n-8) - 1)/3.
pub fn recursion_g_closed(n: u64) -> BigCount {
    assert!(n >= 4);
    let a = pow(2, 2 * n - 8);
    &a * 9u32 - pow(2, n - 2) - (a - 1u32) / 3u32
}
