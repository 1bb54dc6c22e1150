//! Arithmetic in GF(p^m) for p^m <= 2^16.
//!
//! Elements are stored as an integer index whose base-p digits are the
//! coefficients of the reduced polynomial (digit 0 is the constant term).
//! Multiplication goes through log/antilog tables built from the class of
//! `x`, which must be a primitive element modulo the chosen polynomial.

mod tower;

pub use tower::FieldTower;

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 256;

/// Default binary moduli for m = 1..=16, as bit masks (bit i = coefficient of x^i).
///
/// m = 6 must stay x^6 + x + 1: the cyclic GF(64) covering uses exponents
/// relative to a root of that polynomial.
const BINARY_PRIMITIVE: [u32; 17] = [
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

/// An element of a [`Field`], identified by its index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite field GF(p^m) with its modulus and primitive element.
#[derive(Clone)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Vec<u32>,
    neg_table: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(p^m). With `modulus == None` a built-in primitive polynomial
    /// is used; a given modulus lists coefficients from x^0 up to x^m and
    /// must be monic.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::UnsupportedField(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::UnsupportedField(
                "extension degree must be >= 1".into(),
            ));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_ORDER as u64);
        let Some(q) = q else {
            return Err(Error::UnsupportedField(format!(
                "GF({p}^{m}) exceeds the supported order {MAX_FIELD_ORDER}"
            )));
        };
        let q = q as u32;

        let modulus = match modulus {
            Some(c) => {
                if c.len() != m as usize + 1 || c[m as usize] != 1 {
                    return Err(Error::InvalidParameters(format!(
                        "modulus must be monic of degree {m}"
                    )));
                }
                if c.iter().any(|&x| x >= p) {
                    return Err(Error::InvalidParameters(format!(
                        "modulus coefficients must lie in [0, {p})"
                    )));
                }
                c.to_vec()
            }
            None => default_modulus(p, m),
        };

        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus { p });
        }

        let (exp, log) = power_tables(&modulus, p, m, q)?;

        let mut field = Field {
            p,
            m,
            q,
            modulus,
            exp,
            log,
            add_table: Vec::new(),
            neg_table: Vec::new(),
        };
        field.neg_table = (0..q).map(|a| field.neg_digits(a)).collect();
        if p != 2 && q <= ADD_TABLE_LIMIT {
            let mut table = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add_table = table;
        }
        Ok(field)
    }

    /// GF(q) with the default modulus, for any prime power q <= 2^16.
    pub fn with_order(q: u32) -> Result<Field> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| Error::UnsupportedField(format!("{q} is not a prime power")))?;
        Field::new(p, m, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The primitive element: the class of `x` modulo the modulus.
    pub fn alpha(&self) -> FieldElement {
        FieldElement(self.exp[1 % (self.q as usize - 1)])
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::InvalidParameters(format!(
                "element index {index} out of range for GF({})",
                self.q
            )))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Coefficients c_0..c_{m-1} over GF(p).
    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        let mut x = a.0;
        (0..self.m)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameters(format!(
                "expected {} coefficients in [0, {})",
                self.m, self.p
            )));
        }
        Ok(FieldElement(
            coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c),
        ))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add_raw(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg_table[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul_raw(a.0, b.0))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(FieldElement(self.inv_raw(a.0)))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^j`; negative exponents need a nonzero base.
    pub fn pow(&self, a: FieldElement, j: i64) -> Result<FieldElement> {
        if a.0 == 0 {
            return match j.signum() {
                1 => Ok(FieldElement::ZERO),
                0 => Ok(FieldElement::ONE),
                _ => Err(Error::ZeroInverse),
            };
        }
        let order = (self.q - 1) as i128;
        let e = (self.log[a.0 as usize] as i128 * j as i128).rem_euclid(order);
        Ok(FieldElement(self.exp[e as usize]))
    }

    /// `alpha^j` for any integer j.
    pub fn alpha_pow(&self, j: i64) -> FieldElement {
        let e = j.rem_euclid(self.q as i64 - 1);
        FieldElement(self.exp[e as usize])
    }

    /// Discrete logarithm to base alpha, `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            a ^ b
        } else if !self.add_table.is_empty() {
            self.add_table[(a * self.q + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        self.neg_table[a as usize]
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline]
    pub(crate) fn inv_raw(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let l = self.log[a as usize];
        self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    fn neg_digits(&self, mut a: u32) -> u32 {
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * scale;
            a /= self.p;
            scale *= self.p;
        }
        out
    }
}

/// Log/antilog tables for the class of x. Fails unless x has order q - 1.
fn power_tables(modulus: &[u32], p: u32, m: u32, q: u32) -> Result<(Vec<u32>, Vec<u32>)> {
    let order = q - 1;
    let mut exp = Vec::with_capacity(2 * order as usize);
    let mut log = vec![0u32; q as usize];
    let mut digits = vec![0u32; m as usize];
    digits[0] = 1;
    for i in 0..order {
        let idx = digits.iter().rev().fold(0, |acc, &d| acc * p + d);
        if i > 0 && idx == 1 {
            return Err(Error::NotPrimitive {
                order: i,
                expected: order,
            });
        }
        exp.push(idx);
        log[idx as usize] = i;
        // multiply by x and reduce
        let top = digits[m as usize - 1];
        for j in (1..m as usize).rev() {
            digits[j] = digits[j - 1];
        }
        digits[0] = 0;
        if top != 0 {
            for (j, d) in digits.iter_mut().enumerate() {
                *d = (*d + (p - top) * modulus[j] % p) % p;
            }
        }
    }
    let back = digits.iter().rev().fold(0, |acc, &d| acc * p + d);
    if back != 1 {
        // x^(q-1) != 1 can only happen for a reducible modulus
        return Err(Error::NotPrimitive {
            order: 0,
            expected: order,
        });
    }
    let first = exp.clone();
    exp.extend(first);
    Ok((exp, log))
}

fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    if p == 2 {
        let mask = BINARY_PRIMITIVE[m as usize];
        return (0..=m).map(|i| (mask >> i) & 1).collect();
    }
    // smallest monic primitive polynomial, constant term varying fastest
    let count = p.pow(m);
    for code in 1..count {
        let mut c = code;
        let mut poly: Vec<u32> = (0..m)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect();
        poly.push(1);
        if poly[0] == 0 || !is_irreducible(&poly, p) {
            continue;
        }
        if power_tables(&poly, p, m, p.pow(m)).is_ok() {
            return poly;
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut c = code;
            let mut divisor: Vec<u32> = (0..d)
                .map(|_| {
                    let x = c % p;
                    c /= p;
                    x
                })
                .collect();
            divisor.push(1);
            if poly_rem_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u32], monic_div: &[u32], p: u32) -> bool {
    let mut r = num.to_vec();
    let dd = monic_div.len() - 1;
    for top in (dd..r.len()).rev() {
        let lead = r[top];
        if lead == 0 {
            continue;
        }
        let shift = top - dd;
        for (j, &c) in monic_div.iter().enumerate() {
            r[shift + j] = (r[shift + j] + (p - lead) * c % p) % p;
        }
    }
    r[..dd].iter().all(|&x| x == 0)
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q = p^m, or `None` if q is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        m += 1;
    }
    (x == 1).then_some((p, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_gf2() {
        let f = Field::new(2, 1, None).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.alpha(), FieldElement::ONE);
    }

    #[test]
    fn gf64_alpha_six_is_alpha_plus_one() {
        let f = Field::new(2, 6, Some(&[1, 1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.modulus(), Field::with_order(64).unwrap().modulus());
        let a = f.alpha();
        assert_eq!(f.pow(a, 6).unwrap(), f.add(a, f.one()));
        assert_eq!(f.pow(a, 63).unwrap(), f.one());
        assert_eq!(f.pow(a, 0).unwrap(), f.one());
        assert_eq!(f.pow(a, -1).unwrap(), f.pow(a, 62).unwrap());
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert_eq!(
            Field::new(2, 2, Some(&[0, 1, 1])).unwrap_err(),
            Error::ReducibleModulus { p: 2 }
        );
    }

    #[test]
    fn irreducible_but_not_primitive_rejected() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible; x has order 5
        let err = Field::new(2, 4, Some(&[1, 1, 1, 1, 1])).unwrap_err();
        assert!(matches!(err, Error::NotPrimitive { order: 5, .. }));
    }

    #[test]
    fn bad_sizes() {
        assert!(Field::new(4, 1, None).is_err());
        assert!(Field::new(2, 17, None).is_err());
        assert!(Field::new(3, 2, Some(&[1, 1])).is_err());
        assert!(Field::with_order(6).is_err());
    }

    #[test]
    fn zero_base_negative_exponent() {
        let f = Field::with_order(8).unwrap();
        assert_eq!(f.pow(f.zero(), -2), Err(Error::ZeroInverse));
        assert_eq!(f.pow(f.zero(), 3).unwrap(), f.zero());
    }

    #[test]
    fn field_axioms_small_orders() {
        for q in [
            2u32, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128, 243, 256, 1024,
        ] {
            let f = Field::with_order(q).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one(), "q={q}");
                }
            }
            // powers of alpha enumerate the multiplicative group
            let mut seen = vec![false; q as usize];
            for j in 0..(q - 1) {
                seen[f.alpha_pow(j as i64).index() as usize] = true;
            }
            assert!(seen[1..].iter().all(|&s| s) && !seen[0]);
            // sampled associativity / distributivity
            let step = (q / 13).max(1) as usize;
            for a in els.iter().step_by(step) {
                for b in els.iter().step_by(step) {
                    for c in els.iter().step_by(step) {
                        let (a, b, c) = (*a, *b, *c);
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn large_binary_defaults_are_primitive() {
        for m in 11..=16 {
            Field::new(2, m, None).unwrap();
        }
    }

    #[test]
    fn coefficient_round_trip() {
        let f = Field::with_order(27).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coefficients(&f.coefficients(a)).unwrap(), a);
        }
    }
}
