//! Vectors of F_q^n packed into a single machine word.
//!
//! Coordinate i occupies bits `[i*w, (i+1)*w)` where w = 1 for q = 2 and
//! w = 4 otherwise, so q <= 16 and n*w <= 64. In characteristic 2 element
//! indices add by XOR, which makes vector addition a single XOR.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Largest q supported by the packed vector representation.
pub const MAX_VECTOR_Q: u32 = 16;

/// A vector of F_q^n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorFq {
    pub(crate) bits: u64,
    pub(crate) q: u16,
    pub(crate) n: u8,
}

impl VectorFq {
    pub fn q(&self) -> u32 {
        self.q as u32
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Raw packed word.
    pub fn packed(&self) -> u64 {
        self.bits
    }

    pub fn coord(&self, i: usize) -> u32 {
        let w = width_for(self.q as u32);
        ((self.bits >> (i as u32 * w)) & ((1 << w) - 1)) as u32
    }

    pub fn coords(&self) -> Vec<u32> {
        (0..self.len()).map(|i| self.coord(i)).collect()
    }
}

impl fmt::Debug for VectorFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VectorFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            let c = char::from_digit(self.coord(i), 36).unwrap_or('?');
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub(crate) fn width_for(q: u32) -> u32 {
    if q == 2 {
        1
    } else {
        4
    }
}

/// The ambient space F_q^n together with its field.
#[derive(Clone, Debug)]
pub struct FqSpace {
    field: Arc<Field>,
    n: usize,
    width: u32,
    coord_mask: u64,
    char2: bool,
}

impl PartialEq for FqSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && *self.field == *other.field
    }
}

impl Eq for FqSpace {}

impl FqSpace {
    pub fn new(field: Arc<Field>, n: usize) -> Result<FqSpace> {
        let q = field.order();
        if q > MAX_VECTOR_Q {
            return Err(Error::UnsupportedField(format!(
                "vector spaces need q <= {MAX_VECTOR_Q}, got {q}"
            )));
        }
        let width = width_for(q);
        if n as u32 * width > 64 {
            return Err(Error::InvalidParameters(format!(
                "dimension {n} too large for q = {q} (max {})",
                64 / width
            )));
        }
        Ok(FqSpace {
            char2: field.characteristic() == 2,
            field,
            n,
            width,
            coord_mask: (1u64 << width) - 1,
        })
    }

    /// F_q^n over the default field of order q.
    pub fn with_order(q: u32, n: usize) -> Result<FqSpace> {
        FqSpace::new(Arc::new(Field::with_order(q)?), n)
    }

    /// Same field, different dimension.
    pub fn with_dim(&self, n: usize) -> Result<FqSpace> {
        FqSpace::new(self.field.clone(), n)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> VectorFq {
        self.wrap(0)
    }

    /// Standard basis vector e_i.
    pub fn unit(&self, i: usize) -> VectorFq {
        assert!(i < self.n, "coordinate {i} out of range");
        self.wrap(1 << (i as u32 * self.width))
    }

    pub fn vector(&self, coords: &[u32]) -> Result<VectorFq> {
        if coords.len() != self.n {
            return Err(Error::Mismatch(format!(
                "expected {} coordinates, got {}",
                self.n,
                coords.len()
            )));
        }
        let mut bits = 0u64;
        for (i, &c) in coords.iter().enumerate() {
            if c >= self.q() {
                return Err(Error::InvalidParameters(format!(
                    "coordinate {c} not in GF({})",
                    self.q()
                )));
            }
            bits |= (c as u64) << (i as u32 * self.width);
        }
        Ok(self.wrap(bits))
    }

    /// Parses a digit string c_0 c_1 ... c_{n-1}.
    pub fn parse_vector(&self, s: &str) -> Result<VectorFq> {
        let coords: Option<Vec<u32>> = s.chars().map(|c| c.to_digit(36)).collect();
        let coords = coords.ok_or_else(|| Error::InvalidParameters(format!("bad vector '{s}'")))?;
        self.vector(&coords)
    }

    pub fn vec_add(&self, u: &VectorFq, v: &VectorFq) -> Result<VectorFq> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.wrap(self.add_raw(u.bits, v.bits)))
    }

    pub fn vec_scale(&self, c: FieldElement, v: &VectorFq) -> Result<VectorFq> {
        self.check(v)?;
        if c.index() >= self.q() {
            return Err(Error::Mismatch(format!(
                "scalar {c} not in GF({})",
                self.q()
            )));
        }
        Ok(self.wrap(self.scale_raw(c.index(), v.bits)))
    }

    /// Standard dot product.
    pub fn dot(&self, u: &VectorFq, v: &VectorFq) -> Result<FieldElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(FieldElement(self.dot_raw(u.bits, v.bits)))
    }

    /// All q^n vectors in enumeration order (coordinate n-1 varies fastest).
    pub fn all_vectors(&self) -> impl Iterator<Item = VectorFq> + '_ {
        let q = self.q() as u64;
        let total = q.pow(self.n as u32);
        (0..total).map(move |mut x| {
            let mut bits = 0;
            for i in (0..self.n).rev() {
                bits |= (x % q) << (i as u32 * self.width);
                x /= q;
            }
            self.wrap(bits)
        })
    }

    pub(crate) fn check(&self, v: &VectorFq) -> Result<()> {
        if v.q as u32 != self.q() || v.n as usize != self.n {
            return Err(Error::Mismatch(format!(
                "vector over F_{}^{} used in F_{}^{}",
                v.q,
                v.n,
                self.q(),
                self.n
            )));
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn wrap(&self, bits: u64) -> VectorFq {
        VectorFq {
            bits,
            q: self.q() as u16,
            n: self.n as u8,
        }
    }

    #[inline]
    pub(crate) fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub(crate) fn is_binary(&self) -> bool {
        self.width == 1
    }

    #[inline]
    pub(crate) fn coord(&self, v: u64, i: usize) -> u32 {
        ((v >> (i as u32 * self.width)) & self.coord_mask) as u32
    }

    #[inline]
    pub(crate) fn with_coord(&self, v: u64, i: usize, c: u32) -> u64 {
        let shift = i as u32 * self.width;
        (v & !(self.coord_mask << shift)) | ((c as u64) << shift)
    }

    /// Index of the first nonzero coordinate.
    #[inline]
    pub(crate) fn pivot(&self, v: u64) -> Option<usize> {
        (v != 0).then(|| (v.trailing_zeros() / self.width) as usize)
    }

    #[inline]
    pub(crate) fn add_raw(&self, u: u64, v: u64) -> u64 {
        if self.char2 {
            return u ^ v;
        }
        let mut out = 0;
        for i in 0..self.n {
            let s = self.field.add_raw(self.coord(u, i), self.coord(v, i));
            out |= (s as u64) << (i as u32 * self.width);
        }
        out
    }

    #[inline]
    pub(crate) fn scale_raw(&self, c: u32, v: u64) -> u64 {
        match c {
            0 => 0,
            1 => v,
            _ => {
                let mut out = 0;
                for i in 0..self.n {
                    let x = self.coord(v, i);
                    if x != 0 {
                        out |= (self.field.mul_raw(c, x) as u64) << (i as u32 * self.width);
                    }
                }
                out
            }
        }
    }

    /// y + c*x
    #[inline]
    pub(crate) fn axpy_raw(&self, c: u32, x: u64, y: u64) -> u64 {
        if self.is_binary() {
            return if c == 0 { y } else { x ^ y };
        }
        self.add_raw(y, self.scale_raw(c, x))
    }

    pub(crate) fn dot_raw(&self, u: u64, v: u64) -> u32 {
        if self.is_binary() {
            return (u & v).count_ones() & 1;
        }
        (0..self.n).fold(0, |acc, i| {
            self.field
                .add_raw(acc, self.field.mul_raw(self.coord(u, i), self.coord(v, i)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_addition_cancels() {
        let s = FqSpace::with_order(2, 4).unwrap();
        let v = s.parse_vector("1011").unwrap();
        assert!(s.vec_add(&v, &v).unwrap().is_zero());
    }

    #[test]
    fn ternary_addition() {
        let s = FqSpace::with_order(3, 3).unwrap();
        let u = s.parse_vector("120").unwrap();
        let v = s.parse_vector("011").unwrap();
        assert_eq!(s.vec_add(&u, &v).unwrap().to_string(), "101");
    }

    #[test]
    fn scale_by_zero() {
        let s = FqSpace::with_order(5, 3).unwrap();
        let v = s.parse_vector("341").unwrap();
        assert!(s.vec_scale(FieldElement::ZERO, &v).unwrap().is_zero());
        assert_eq!(s.vec_scale(FieldElement(2), &v).unwrap().to_string(), "132");
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = FqSpace::with_order(2, 4).unwrap();
        let b = FqSpace::with_order(2, 5).unwrap();
        let c = FqSpace::with_order(3, 4).unwrap();
        let u = a.zero();
        assert!(matches!(b.vec_add(&u, &b.zero()), Err(Error::Mismatch(_))));
        assert!(matches!(c.vec_add(&u, &c.zero()), Err(Error::Mismatch(_))));
        assert!(a.parse_vector("10").is_err());
        assert!(a.parse_vector("1020").is_err());
    }

    #[test]
    fn limits() {
        assert!(FqSpace::with_order(2, 64).is_ok());
        assert!(FqSpace::with_order(3, 17).is_err());
        assert!(FqSpace::with_order(17, 2).is_err());
    }

    #[test]
    fn enumeration_order_zero_first() {
        let s = FqSpace::with_order(3, 2).unwrap();
        let all: Vec<String> = s.all_vectors().map(|v| v.to_string()).collect();
        assert_eq!(all[..4], ["00", "01", "02", "10"]);
        assert_eq!(all.len(), 9);
    }
}
