//! Exact arithmetic in `Z[ω]`, `ω = e^{2πi/M}` with `M` a power of two.
//!
//! Elements are dense coefficient vectors over `ω^0 .. ω^{M-1}`. That
//! spanning set is redundant; the canonical form folds it onto the power
//! basis `ω^0 .. ω^{M/2-1}` using `ω^{M/2} = -1` (the minimal polynomial of
//! `ω` is `X^{M/2} + 1`). Equality, hashing-free comparison and rationality
//! tests all go through that folded form.
//!
//! All coefficient arithmetic is checked; overflow is reported as
//! [`HwError::Overflow`] and never wraps.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{HwError, Result};

fn check_modulus(modulus: u32) -> Result<()> {
    if modulus == 0 || !modulus.is_power_of_two() {
        return Err(HwError::Param(format!("modulus {modulus} is not a power of two")));
    }
    Ok(())
}

/// Moduli below 2 collapse to 2 so that the folded basis is never empty.
fn storage_modulus(modulus: u32) -> u32 {
    modulus.max(2)
}

/// A root of unity `ω_M^e` identified by its exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootExponent {
    pub modulus: u32,
    pub e: u32,
}

impl RootExponent {
    pub fn new(modulus: u32, e: i64) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self {
            modulus,
            e: e.rem_euclid(modulus as i64) as u32,
        })
    }

    /// The same root written over a larger power-of-two modulus.
    pub fn embed(&self, modulus: u32) -> Result<Self> {
        check_modulus(modulus)?;
        if !modulus.is_multiple_of(self.modulus) {
            return Err(HwError::Param(format!(
                "cannot embed modulus {} into {modulus}",
                self.modulus
            )));
        }
        Ok(Self {
            modulus,
            e: self.e * (modulus / self.modulus),
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        root_complex(self.modulus, self.e as i64)
    }
}

/// `e^{2πi e / M}` evaluated in double precision.
pub fn root_complex(modulus: u32, e: i64) -> Complex64 {
    let e = e.rem_euclid(modulus as i64);
    let angle = std::f64::consts::TAU * (e as f64) / (modulus as f64);
    Complex64::from_polar(1.0, angle)
}

#[derive(Debug, Clone)]
pub struct CycInt {
    modulus: u32,
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(modulus: u32) -> Result<Self> {
        check_modulus(modulus)?;
        let modulus = storage_modulus(modulus);
        Ok(Self {
            modulus,
            coeffs: vec![0; modulus as usize],
        })
    }

    pub fn from_int(modulus: u32, value: i64) -> Result<Self> {
        let mut out = Self::zero(modulus)?;
        out.coeffs[0] = value;
        Ok(out)
    }

    /// `ω_M^e`.
    pub fn root(modulus: u32, e: i64) -> Result<Self> {
        let mut out = Self::zero(modulus)?;
        let idx = Self::index_for(modulus, out.modulus, e);
        out.coeffs[idx] = 1;
        Ok(out)
    }

    /// Builds from a coefficient list over `ω^0, ω^1, ...`. Lists shorter
    /// than the modulus are zero-padded; longer ones are folded mod `M`.
    pub fn from_coeffs(modulus: u32, coeffs: &[i64]) -> Result<Self> {
        let mut out = Self::zero(modulus)?;
        for (e, &c) in coeffs.iter().enumerate() {
            out.add_term(c, Self::index_for(modulus, out.modulus, e as i64) as i64)?;
        }
        Ok(out)
    }

    fn index_for(modulus: u32, storage: u32, e: i64) -> usize {
        let e = e.rem_euclid(modulus as i64) as u32;
        (e * (storage / modulus)) as usize
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Raw coefficients over the redundant spanning set `ω^0 .. ω^{M-1}`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Adds `coef · ω^e` in place (exponent taken mod this element's modulus).
    #[inline]
    pub fn add_term(&mut self, coef: i64, e: i64) -> Result<()> {
        let idx = e.rem_euclid(self.modulus as i64) as usize;
        self.coeffs[idx] = self.coeffs[idx].checked_add(coef).ok_or(HwError::Overflow)?;
        Ok(())
    }

    /// Rewrites over a larger modulus via `ω_a^e ↦ ω_b^{e·b/a}`.
    pub fn embed(&self, modulus: u32) -> Result<Self> {
        check_modulus(modulus)?;
        let modulus = storage_modulus(modulus);
        if !modulus.is_multiple_of(self.modulus) {
            return Err(HwError::Param(format!(
                "cannot embed modulus {} into {modulus}",
                self.modulus
            )));
        }
        if modulus == self.modulus {
            return Ok(self.clone());
        }
        let factor = (modulus / self.modulus) as usize;
        let mut coeffs = vec![0; modulus as usize];
        for (e, &c) in self.coeffs.iter().enumerate() {
            coeffs[e * factor] = c;
        }
        Ok(Self { modulus, coeffs })
    }

    fn common(a: &Self, b: &Self) -> Result<u32> {
        let m = a.modulus.max(b.modulus);
        if !m.is_multiple_of(a.modulus) || !m.is_multiple_of(b.modulus) {
            return Err(HwError::Param(format!(
                "incompatible moduli {} and {}",
                a.modulus, b.modulus
            )));
        }
        Ok(m)
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        let m = Self::common(self, other)?;
        Ok((self.embed(m)?, other.embed(m)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.aligned(other)?;
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x = x.checked_add(*y).ok_or(HwError::Overflow)?;
        }
        Ok(a)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn neg(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_neg().ok_or(HwError::Overflow))
            .collect::<Result<_>>()?;
        Ok(Self {
            modulus: self.modulus,
            coeffs,
        })
    }

    pub fn scale(&self, factor: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(factor).ok_or(HwError::Overflow))
            .collect::<Result<_>>()?;
        Ok(Self {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Convolution of exponents mod `M`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        let m = a.modulus as usize;
        let mask = m - 1;
        let mut out = vec![0i64; m];
        for (i, &x) in a.coeffs.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.coeffs.iter().enumerate().filter(|(_, y)| **y != 0) {
                let prod = x.checked_mul(y).ok_or(HwError::Overflow)?;
                let slot = &mut out[(i + j) & mask];
                *slot = slot.checked_add(prod).ok_or(HwError::Overflow)?;
            }
        }
        Ok(Self {
            modulus: a.modulus,
            coeffs: out,
        })
    }

    /// Multiplies by `ω_M^e` (a rotation of the coefficient vector).
    pub fn mul_root(&self, root: RootExponent) -> Result<Self> {
        let m = Self::common(self, &Self::zero(root.modulus)?)?;
        let a = self.embed(m)?;
        let shift = root.embed(m)?.e as usize;
        let mask = m as usize - 1;
        let mut coeffs = vec![0; m as usize];
        for (e, &c) in a.coeffs.iter().enumerate() {
            coeffs[(e + shift) & mask] = c;
        }
        Ok(Self { modulus: m, coeffs })
    }

    /// Complex conjugation, `ω^e ↦ ω^{-e}`.
    pub fn conj(&self) -> Self {
        let m = self.modulus as usize;
        let mut coeffs = vec![0; m];
        for (e, &c) in self.coeffs.iter().enumerate() {
            coeffs[(m - e) % m] = c;
        }
        Self {
            modulus: self.modulus,
            coeffs,
        }
    }

    /// Coordinates in the power basis `ω^0 .. ω^{M/2-1}`.
    pub fn reduced(&self) -> Result<Vec<i64>> {
        let half = self.modulus as usize / 2;
        let mut out = self.coeffs[..half].to_vec();
        for (slot, &hi) in out.iter_mut().zip(&self.coeffs[half..]) {
            *slot = slot.checked_sub(hi).ok_or(HwError::Overflow)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        let half = self.modulus as usize / 2;
        (0..half).all(|i| self.coeffs[i] as i128 == self.coeffs[i + half] as i128)
    }

    /// The rational integer this element equals, or an error if it has a
    /// non-zero irrational component.
    pub fn reduce_to_rational_integer(&self) -> Result<i64> {
        let reduced = self.reduced()?;
        if reduced[1..].iter().any(|&c| c != 0) {
            return Err(HwError::NotRationalInteger(self.to_string()));
        }
        Ok(reduced[0])
    }

    /// Divides every folded coefficient by `d`, failing unless exact.
    pub fn div_exact(&self, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(HwError::Param("division by zero".into()));
        }
        let reduced = self.reduced()?;
        let mut coeffs = vec![0; self.modulus as usize];
        for (slot, c) in coeffs.iter_mut().zip(reduced) {
            if c % d != 0 {
                return Err(HwError::Inconsistency(format!(
                    "{self} is not divisible by {d}"
                )));
            }
            *slot = c / d;
        }
        Ok(Self {
            modulus: self.modulus,
            coeffs,
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(e, &c)| root_complex(self.modulus, e as i64) * c as f64)
            .sum()
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        match self.aligned(other) {
            Ok((a, b)) => match (a.reduced(), b.reduced()) {
                (Ok(x), Ok(y)) => x == y,
                _ => false,
            },
            Err(_) => false,
        }
    }
}

impl Eq for CycInt {}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reduced = match self.reduced() {
            Ok(r) => r,
            Err(_) => return write!(f, "<overflow>"),
        };
        let mut first = true;
        for (e, &c) in reduced.iter().enumerate().filter(|(_, c)| **c != 0) {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.unsigned_abs();
            match (e, mag) {
                (0, _) => write!(f, "{mag}")?,
                (_, 1) => write!(f, "w^{e}")?,
                _ => write!(f, "{mag}*w^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycIntJson {
    modulus: u32,
    coeffs: Vec<i64>,
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self.reduced().map_err(serde::ser::Error::custom)?;
        CycIntJson {
            modulus: self.modulus,
            coeffs,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = CycIntJson::deserialize(deserializer)?;
        CycInt::from_coeffs(raw.modulus, &raw.coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(m: u32, e: i64) -> CycInt {
        CycInt::root(m, e).unwrap()
    }

    #[test]
    fn root_examples() {
        assert_eq!(r(4, 0).reduce_to_rational_integer().unwrap(), 1);
        assert_eq!(r(4, 2).reduce_to_rational_integer().unwrap(), -1);
        assert_eq!(r(8, 6).mul(&r(8, 6)).unwrap(), r(8, 4));
        assert_eq!(r(8, 4).reduce_to_rational_integer().unwrap(), -1);
        assert!(CycInt::root(6, 1).is_err());
        assert!(CycInt::root(0, 1).is_err());
    }

    #[test]
    fn ring_examples() {
        assert!(r(4, 1).add(&r(4, 3)).unwrap().is_zero());
        assert_eq!(r(8, 3).mul(&r(8, 7)).unwrap(), r(8, 2));
        assert_eq!(r(8, 3).conj(), r(8, 5));
    }

    #[test]
    fn rational_reduction() {
        assert_eq!(CycInt::from_int(4, 3).unwrap().reduce_to_rational_integer().unwrap(), 3);
        assert_eq!(r(4, 1).add(&r(4, 3)).unwrap().reduce_to_rational_integer().unwrap(), 0);
        assert!(matches!(
            r(4, 1).reduce_to_rational_integer(),
            Err(HwError::NotRationalInteger(_))
        ));
    }

    #[test]
    fn basis_is_independent() {
        for m in [4u32, 8, 16, 32, 64] {
            for e in 1..(m / 2) as i64 {
                assert!(r(m, e).reduce_to_rational_integer().is_err(), "m={m} e={e}");
            }
        }
    }

    #[test]
    fn to_complex_examples() {
        let i = r(4, 1).to_complex();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((r(8, 1).to_complex() - Complex64::new(h, h)).norm() < 1e-12);
        assert_eq!(CycInt::zero(8).unwrap().to_complex(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn cross_modulus_embedding() {
        // ω_4 = ω_16^4
        assert_eq!(r(4, 1), r(16, 4));
        assert_eq!(r(2, 1).add(&r(8, 0)).unwrap().reduce_to_rational_integer().unwrap(), 0);
        assert_eq!(r(4, 1).mul(&r(8, 2)).unwrap(), r(8, 4));
        assert_eq!(r(1, 0), CycInt::from_int(2, 1).unwrap());
    }

    #[test]
    fn overflow_is_an_error() {
        let big = CycInt::from_int(4, i64::MAX).unwrap();
        assert_eq!(big.add(&CycInt::from_int(4, 1).unwrap()), Err(HwError::Overflow));
        assert_eq!(big.mul(&CycInt::from_int(4, 2).unwrap()), Err(HwError::Overflow));
        let mut acc = CycInt::from_int(4, i64::MAX).unwrap();
        assert_eq!(acc.add_term(1, 0), Err(HwError::Overflow));
    }

    #[test]
    fn exact_division() {
        let x = CycInt::from_coeffs(8, &[4, 0, -8, 0, 0, 0, 0, 2]).unwrap();
        assert_eq!(
            x.div_exact(2).unwrap(),
            CycInt::from_coeffs(8, &[2, 0, -4, -1]).unwrap()
        );
        assert!(x.div_exact(4).is_err());
    }

    #[test]
    fn json_form() {
        let x = r(8, 5);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"modulus":8,"coeffs":[0,-1,0,0]}"#);
        let back: CycInt = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert_eq!(x.to_string(), "-w^1");
    }

    fn arb_cyc(m: u32) -> impl Strategy<Value = CycInt> {
        prop::collection::vec(-20i64..20, m as usize)
            .prop_map(move |c| CycInt::from_coeffs(m, &c).unwrap())
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_cyc(16), b in arb_cyc(16), c in arb_cyc(16)) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!(a.mul(&b).unwrap().conj(), a.conj().mul(&b.conj()).unwrap());
        }

        #[test]
        fn reduction_is_sound(a in arb_cyc(32)) {
            let folded = CycInt::from_coeffs(32, &a.reduced().unwrap()).unwrap();
            prop_assert!((a.to_complex() - folded.to_complex()).norm() < 1e-9);
            prop_assert_eq!(folded, a);
        }

        #[test]
        fn complex_image_is_a_homomorphism(a in arb_cyc(8), b in arb_cyc(8)) {
            let lhs = a.mul(&b).unwrap().to_complex();
            let rhs = a.to_complex() * b.to_complex();
            prop_assert!((lhs - rhs).norm() < 1e-9);
        }
    }
}
