use std::sync::Arc;

use super::{Field, FieldElement};
use crate::error::{Error, Result};

/// GF(q^d) viewed as a d-dimensional vector space over GF(q).
///
/// The base field is embedded by sending its primitive element to a root of
/// the base modulus inside the extension; coordinates are taken with respect
/// to the basis 1, a, ..., a^(d-1) where a is the extension's primitive
/// element.
#[derive(Clone, Debug)]
pub struct FieldTower {
    base: Arc<Field>,
    ext: Arc<Field>,
    degree: usize,
    embed: Vec<u32>,
    coords: Vec<u32>,
}

impl FieldTower {
    /// Tower of `base` under the default-modulus extension of relative degree `degree`.
    pub fn over(base: Arc<Field>, degree: u32) -> Result<FieldTower> {
        if degree == 0 {
            return Err(Error::IncompatibleTower(
                "relative degree must be >= 1".into(),
            ));
        }
        let m = base
            .degree()
            .checked_mul(degree)
            .ok_or_else(|| Error::IncompatibleTower("degree overflow".into()))?;
        let ext = Arc::new(Field::new(base.characteristic(), m, None)?);
        FieldTower::new(base, ext)
    }

    pub fn new(base: Arc<Field>, ext: Arc<Field>) -> Result<FieldTower> {
        if base.characteristic() != ext.characteristic()
            || !ext.degree().is_multiple_of(base.degree())
        {
            return Err(Error::IncompatibleTower(format!(
                "GF({}) is not a subfield of GF({})",
                base.order(),
                ext.order()
            )));
        }
        let degree = (ext.degree() / base.degree()) as usize;
        let q = base.order();
        let big = ext.order();

        // generator of the subfield's multiplicative group
        let beta = ext.alpha_pow(((big - 1) / (q - 1)) as i64);
        let root = (1..q.max(2))
            .filter(|&j| gcd(j, q - 1) == 1 || q == 2)
            .map(|j| ext.pow(beta, j as i64).expect("beta is nonzero"))
            .find(|&g| eval_prime_poly(&ext, base.modulus(), g).is_zero())
            .ok_or_else(|| {
                Error::IncompatibleTower("base modulus has no root in the extension".into())
            })?;

        let mut embed = vec![0u32; q as usize];
        for j in 0..(q - 1) {
            let b = base.alpha_pow(j as i64);
            embed[b.index() as usize] = ext.pow(root, j as i64)?.index();
        }

        let basis: Vec<FieldElement> = (0..degree).map(|i| ext.alpha_pow(i as i64)).collect();
        let mut coords = vec![u32::MAX; big as usize * degree];
        let mut digits = vec![0u32; degree];
        for _ in 0..big {
            let value = digits
                .iter()
                .zip(&basis)
                .fold(FieldElement::ZERO, |acc, (&c, &b)| {
                    ext.add(acc, ext.mul(FieldElement(embed[c as usize]), b))
                });
            let slot = &mut coords[value.index() as usize * degree..][..degree];
            if slot[0] != u32::MAX {
                return Err(Error::IncompatibleTower("power basis is dependent".into()));
            }
            slot.copy_from_slice(&digits);
            for d in digits.iter_mut() {
                *d += 1;
                if *d < q {
                    break;
                }
                *d = 0;
            }
        }

        Ok(FieldTower {
            base,
            ext,
            degree,
            embed,
            coords,
        })
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<Field> {
        &self.ext
    }

    /// Relative degree [ext : base].
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Image of a base-field element inside the extension.
    pub fn embed(&self, c: FieldElement) -> FieldElement {
        FieldElement(self.embed[c.index() as usize])
    }

    /// Coordinates of `a` over the base field.
    pub fn to_base_coords(&self, a: FieldElement) -> &[u32] {
        &self.coords[a.index() as usize * self.degree..][..self.degree]
    }

    /// Flattens a vector over the extension into one over the base field,
    /// each extension coordinate contributing `degree` consecutive entries.
    pub fn flatten(&self, v: &[FieldElement]) -> Vec<u32> {
        v.iter()
            .flat_map(|&a| self.to_base_coords(a).iter().copied())
            .collect()
    }
}

fn eval_prime_poly(f: &Field, coeffs: &[u32], x: FieldElement) -> FieldElement {
    // coefficients live in GF(p), which sits inside f as the constants
    coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| {
        f.add(f.mul(acc, x), FieldElement(c))
    })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
