//! Monomial (generalized permutation) matrices with root-of-unity entries,
//! and a small dense exact matrix type used as an independent check.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycInt, RootExponent};
use crate::error::{HwError, Result};

/// Row `k` has its single non-zero entry `ω_M^{phase[k]}` in column
/// `sigma[k]`, where `M = root_modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    sigma: Vec<u32>,
    phase: Vec<u32>,
    root_modulus: u32,
}

impl MonomialMatrix {
    pub fn new(sigma: Vec<u32>, phase: Vec<u32>, root_modulus: u32) -> Result<Self> {
        if root_modulus == 0 || !root_modulus.is_power_of_two() {
            return Err(HwError::Param(format!("root modulus {root_modulus} is not a power of two")));
        }
        if sigma.len() != phase.len() {
            return Err(HwError::Param("sigma and phase lengths differ".into()));
        }
        let dim = sigma.len();
        let mut seen = vec![false; dim];
        for &c in &sigma {
            let c = c as usize;
            if c >= dim || seen[c] {
                return Err(HwError::Param("sigma is not a permutation".into()));
            }
            seen[c] = true;
        }
        let mask = root_modulus - 1;
        let phase = phase.into_iter().map(|e| e & mask).collect();
        Ok(Self {
            sigma,
            phase,
            root_modulus,
        })
    }

    /// Trusted constructor for callers that build valid permutations.
    pub(crate) fn from_parts(sigma: Vec<u32>, phase: Vec<u32>, root_modulus: u32) -> Self {
        debug_assert_eq!(sigma.len(), phase.len());
        Self {
            sigma,
            phase,
            root_modulus,
        }
    }

    pub fn identity(dim: usize, root_modulus: u32) -> Self {
        Self::scalar(dim, root_modulus, 0)
    }

    /// `ω^e · I`.
    pub fn scalar(dim: usize, root_modulus: u32, e: u32) -> Self {
        Self {
            sigma: (0..dim as u32).collect(),
            phase: vec![e & (root_modulus - 1); dim],
            root_modulus,
        }
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[u32] {
        &self.sigma
    }

    pub fn phase(&self) -> &[u32] {
        &self.phase
    }

    pub fn root_modulus(&self) -> u32 {
        self.root_modulus
    }

    /// `(row, col, exp)` of the non-zero entry in row `k`.
    pub fn entry(&self, k: usize) -> (usize, usize, u32) {
        (k, self.sigma[k] as usize, self.phase[k])
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(HwError::Param(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        if self.root_modulus != other.root_modulus {
            return Err(HwError::Param("root modulus mismatch".into()));
        }
        let mask = self.root_modulus - 1;
        let mut sigma = Vec::with_capacity(self.dim());
        let mut phase = Vec::with_capacity(self.dim());
        for (&mid, &e) in self.sigma.iter().zip(&self.phase) {
            sigma.push(other.sigma[mid as usize]);
            phase.push((e + other.phase[mid as usize]) & mask);
        }
        Ok(Self {
            sigma,
            phase,
            root_modulus: self.root_modulus,
        })
    }

    pub fn inverse(&self) -> Self {
        let dim = self.dim();
        let mask = self.root_modulus - 1;
        let mut sigma = vec![0; dim];
        let mut phase = vec![0; dim];
        for (k, (&c, &e)) in self.sigma.iter().zip(&self.phase).enumerate() {
            sigma[c as usize] = k as u32;
            phase[c as usize] = e.wrapping_neg() & mask;
        }
        Self {
            sigma,
            phase,
            root_modulus: self.root_modulus,
        }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim(), self.root_modulus);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.multiply(&base).expect("same shape");
            }
            base = base.multiply(&base).expect("same shape");
            k >>= 1;
        }
        acc
    }

    pub fn is_identity_permutation(&self) -> bool {
        self.sigma.iter().enumerate().all(|(k, &c)| k as u32 == c)
    }

    /// `Some(e)` when the matrix equals `ω^e · I`.
    pub fn scalar_exponent(&self) -> Option<u32> {
        if !self.is_identity_permutation() {
            return None;
        }
        let first = *self.phase.first()?;
        self.phase.iter().all(|&e| e == first).then_some(first)
    }

    pub fn trace(&self) -> Result<CycInt> {
        let mut acc = CycInt::zero(self.root_modulus)?;
        for (k, (&c, &e)) in self.sigma.iter().zip(&self.phase).enumerate() {
            if c as usize == k {
                acc.add_term(1, e as i64)?;
            }
        }
        Ok(acc)
    }

    pub fn to_dense(&self) -> Result<ExactMatrix> {
        let dim = self.dim();
        let mut out = ExactMatrix::zero(dim, self.root_modulus)?;
        for (k, (&c, &e)) in self.sigma.iter().zip(&self.phase).enumerate() {
            *out.get_mut(k, c as usize) = CycInt::root(self.root_modulus, e as i64)?;
        }
        Ok(out)
    }

    pub fn entry_root(&self, k: usize) -> RootExponent {
        RootExponent {
            modulus: self.root_modulus,
            e: self.phase[k],
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialEntryJson {
    row: usize,
    col: usize,
    exp: u32,
}

#[derive(Serialize, Deserialize)]
struct MonomialJson {
    dim: usize,
    entries: Vec<MonomialEntryJson>,
    root_modulus: u32,
}

impl Serialize for MonomialMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MonomialJson {
            dim: self.dim(),
            entries: (0..self.dim())
                .map(|k| {
                    let (row, col, exp) = self.entry(k);
                    MonomialEntryJson { row, col, exp }
                })
                .collect(),
            root_modulus: self.root_modulus,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MonomialMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MonomialJson::deserialize(deserializer)?;
        let mut sigma = vec![u32::MAX; raw.dim];
        let mut phase = vec![0; raw.dim];
        for e in raw.entries {
            if e.row >= raw.dim || sigma[e.row] != u32::MAX {
                return Err(serde::de::Error::custom("bad or duplicate row"));
            }
            sigma[e.row] = e.col as u32;
            phase[e.row] = e.exp;
        }
        MonomialMatrix::new(sigma, phase, raw.root_modulus).map_err(serde::de::Error::custom)
    }
}

/// Dense square matrix over `Z[ω_M]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    modulus: u32,
    entries: Vec<CycInt>,
}

impl ExactMatrix {
    pub fn zero(dim: usize, modulus: u32) -> Result<Self> {
        Ok(Self {
            dim,
            modulus,
            entries: vec![CycInt::zero(modulus)?; dim * dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &CycInt {
        &self.entries[row * self.dim + col]
    }

    pub fn get_mut(&mut self, row: usize, col: usize) -> &mut CycInt {
        &mut self.entries[row * self.dim + col]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(HwError::Param("dimension mismatch".into()));
        }
        let d = self.dim;
        let mut out = Self::zero(d, self.modulus.max(other.modulus))?;
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b)?;
                    let slot = out.get_mut(i, j);
                    *slot = slot.add(&prod)?;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(HwError::Param("dimension mismatch".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(Self {
            dim: self.dim,
            modulus: self.modulus.max(other.modulus),
            entries,
        })
    }

    /// Multiplies every entry by the scalar `c`.
    pub fn scale(&self, c: &CycInt) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|a| a.mul(c))
            .collect::<Result<_>>()?;
        Ok(Self {
            dim: self.dim,
            modulus: self.modulus.max(c.modulus()),
            entries,
        })
    }

    pub fn trace(&self) -> Result<CycInt> {
        let mut acc = CycInt::zero(self.modulus)?;
        for i in 0..self.dim {
            acc = acc.add(self.get(i, i))?;
        }
        Ok(acc)
    }
}
