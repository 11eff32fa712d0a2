//! Generalized finite Fourier transforms attached to each irrep.
//!
//! For a label with `d = 2^{s-t}`, `F_{s-t}` is the standard `d`-point
//! transform `(1/√d) ω_{s-t}^{kj}`, `Ω_r = diag(ω_s^{rk})`, and
//! `F_D = Ω_r F_{s-t}`. The columns of `F_D` are the eigenvectors of `y_D`
//! with eigenvalues `λ_k = ω_s^r ω_{s-t}^k`.
//!
//! `F_D` carries the `1/√d` factor so that it is unitary and literally
//! equal to `Ω_r F_{s-t}`.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cyclotomic::root_complex;
use crate::error::{HwError, Result};
use crate::monomial::MonomialMatrix;
use crate::rep::{generator_matrices, IrrepLabel};

pub const FOURIER_TOL: f64 = 1e-9;

/// Dense complex square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseUnitary {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    pub fn from_monomial(m: &MonomialMatrix) -> Self {
        let dim = m.dim();
        let mut out = Self::from_fn(dim, |_, _| Complex64::new(0.0, 0.0));
        for k in 0..dim {
            let (row, col, exp) = m.entry(k);
            out.entries[row * dim + col] = root_complex(m.root_modulus(), exp as i64);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * other.entries[k * d + j];
                }
            }
        }
        Self { dim: d, entries: out }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Max-norm of `self - other`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖U U† - I‖_max`.
    pub fn unitarity_residual(&self) -> f64 {
        self.mul(&self.adjoint()).distance(&Self::identity(self.dim))
    }

    /// Largest off-diagonal magnitude.
    pub fn off_diagonal(&self) -> f64 {
        let d = self.dim;
        (0..d * d)
            .filter(|idx| idx / d != idx % d)
            .map(|idx| self.entries[idx].norm())
            .fold(0.0, f64::max)
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }
}

impl Serialize for DenseUnitary {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| [self.get(i, j).re, self.get(i, j).im]).collect())
            .collect();
        let mut st = serializer.serialize_struct("DenseUnitary", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

/// `(1/√d) ω_d^{kj}`.
pub fn standard_fourier(d: usize) -> Result<DenseUnitary> {
    if d == 0 || !d.is_power_of_two() {
        return Err(HwError::Param(format!("Fourier dimension {d} is not a power of two")));
    }
    let norm = 1.0 / (d as f64).sqrt();
    Ok(DenseUnitary::from_fn(d, |k, j| {
        root_complex(d as u32, (k * j) as i64) * norm
    }))
}

/// `diag(ω_s^{rk})`, `k < 2^{s-t}`.
pub fn omega_matrix(label: &IrrepLabel) -> DenseUnitary {
    let big = 1u32 << label.s();
    DenseUnitary::from_fn(label.dim(), |k, j| {
        if k == j {
            root_complex(big, label.r() as i64 * k as i64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `F_D = Ω_r F_{s-t}`; `[[1]]` for one-dimensional irreps.
pub fn fourier_fd(label: &IrrepLabel) -> Result<DenseUnitary> {
    if label.p() == 0 {
        return Ok(DenseUnitary::identity(1));
    }
    Ok(omega_matrix(label).mul(&standard_fourier(label.dim())?))
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenSystem {
    #[serde(serialize_with = "ser_complex_vec")]
    pub eigenvalues: Vec<Complex64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: DenseUnitary,
}

fn ser_complex_vec<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|c| [c.re, c.im]).collect();
    pairs.serialize(s)
}

/// `λ_k = ω_s^r ω_{s-t}^k` with normalized eigenvectors
/// `ψ_k[j] = (1/√d) ω_s^{rj} ω_{s-t}^{kj}`.
pub fn eigensystem_y(label: &IrrepLabel) -> Result<EigenSystem> {
    let big = 1u32 << label.s();
    let d = label.dim();
    let eigenvalues = (0..d)
        .map(|k| root_complex(big, label.r() as i64) * root_complex(d as u32, k as i64))
        .collect();
    let norm = 1.0 / (d as f64).sqrt();
    let eigenvectors = DenseUnitary::from_fn(d, |j, k| {
        root_complex(big, label.r() as i64 * j as i64) * root_complex(d as u32, (k * j) as i64) * norm
    });
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

impl EigenSystem {
    /// `max_k ‖y ψ_k - λ_k ψ_k‖_max`.
    pub fn residual(&self, y: &DenseUnitary) -> f64 {
        let image = y.mul(&self.eigenvectors);
        let d = y.dim();
        let mut worst = 0.0f64;
        for k in 0..d {
            for i in 0..d {
                let diff = image.get(i, k) - self.eigenvalues[k] * self.eigenvectors.get(i, k);
                worst = worst.max(diff.norm());
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `F y F⁻¹`
    Forward,
    /// `F⁻¹ y F`
    Inverse,
}

impl Serialize for Orientation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Orientation::Forward => "F y F^-1",
            Orientation::Inverse => "F^-1 y F",
        })
    }
}

/// Max-norm residuals of the Fourier identities for one irrep.
#[derive(Debug, Clone, Serialize)]
pub struct FourierReport {
    pub label: IrrepLabel,
    pub unitarity_standard: f64,
    pub unitarity_omega: f64,
    pub unitarity_fd: f64,
    /// `‖F_{s-t}^4 - I‖`.
    pub fourth_power: f64,
    /// `max_k ‖y ψ_k - λ_k ψ_k‖`.
    pub eigen_residual: f64,
    /// `max_k |λ_k^d - ω_t^r|`.
    pub eigenvalue_equation: f64,
    /// Off-diagonal size of `F y F⁻¹`.
    pub forward_off_diagonal: f64,
    /// Off-diagonal size of `F⁻¹ y F`.
    pub inverse_off_diagonal: f64,
    pub diagonalizing: Vec<Orientation>,
    /// Best residual, over diagonalizing orientations, of
    /// `F y^u F⁻¹ = ω_s^{ru - q} x⁻¹` (or its `F⁻¹ · F` form).
    pub conjugation_to_x_inverse: Option<f64>,
    /// `‖F⁻¹ y^u F - ω_s^{ru - q} x‖`.
    pub conjugation_to_x: Option<f64>,
}

impl FourierReport {
    /// Unitarity, `F⁴ = I`, eigen-system and diagonalization checks.
    pub fn structural_ok(&self) -> bool {
        [
            self.unitarity_standard,
            self.unitarity_omega,
            self.unitarity_fd,
            self.fourth_power,
            self.eigen_residual,
            self.eigenvalue_equation,
        ]
        .iter()
        .all(|&r| r < FOURIER_TOL)
            && !self.diagonalizing.is_empty()
    }

    pub fn conjugation_to_x_inverse_ok(&self) -> bool {
        self.conjugation_to_x_inverse.is_none_or(|r| r < FOURIER_TOL)
    }

    pub fn conjugation_to_x_ok(&self) -> bool {
        self.conjugation_to_x.is_none_or(|r| r < FOURIER_TOL)
    }
}

pub fn verify_fourier_relations(label: &IrrepLabel) -> Result<FourierReport> {
    let s = label.s();
    let big = 1u32 << s;
    let d = label.dim();
    let std_f = standard_fourier(d)?;
    let omega = omega_matrix(label);
    let fd = fourier_fd(label)?;
    let fd_inv = fd.adjoint();

    let (_, x_mono, y_mono) = generator_matrices(label)?;
    let x = DenseUnitary::from_monomial(&x_mono);
    let y = DenseUnitary::from_monomial(&y_mono);

    let eig = eigensystem_y(label)?;
    let twist = root_complex(1 << label.t(), label.r() as i64);
    let eigenvalue_equation = eig
        .eigenvalues
        .iter()
        .map(|l| (l.powu(d as u32) - twist).norm())
        .fold(0.0, f64::max);

    let forward = fd.mul(&y).mul(&fd_inv);
    let inverse = fd_inv.mul(&y).mul(&fd);
    let (forward_off, inverse_off) = (forward.off_diagonal(), inverse.off_diagonal());
    let mut diagonalizing = Vec::new();
    if forward_off < FOURIER_TOL {
        diagonalizing.push(Orientation::Forward);
    }
    if inverse_off < FOURIER_TOL {
        diagonalizing.push(Orientation::Inverse);
    }

    let (stated, corrected) = match label.u() {
        None => (None, None),
        Some(u) => {
            let phase = root_complex(big, label.r() as i64 * u as i64 - label.q() as i64);
            let yu = y.pow(u as u64);
            let x_inv_target = DenseUnitary::from_monomial(&x_mono.inverse()).scale(phase);
            let x_target = x.scale(phase);
            let stated = diagonalizing
                .iter()
                .map(|o| match o {
                    Orientation::Forward => fd.mul(&yu).mul(&fd_inv).distance(&x_inv_target),
                    Orientation::Inverse => fd_inv.mul(&yu).mul(&fd).distance(&x_inv_target),
                })
                .fold(f64::INFINITY, f64::min);
            let corrected = fd_inv.mul(&yu).mul(&fd).distance(&x_target);
            (Some(stated), Some(corrected))
        }
    };

    Ok(FourierReport {
        label: *label,
        unitarity_standard: std_f.unitarity_residual(),
        unitarity_omega: omega.unitarity_residual(),
        unitarity_fd: fd.unitarity_residual(),
        fourth_power: std_f.pow(4).distance(&DenseUnitary::identity(d)),
        eigen_residual: eig.residual(&y),
        eigenvalue_equation,
        forward_off_diagonal: forward_off,
        inverse_off_diagonal: inverse_off,
        diagonalizing,
        conjugation_to_x_inverse: stated,
        conjugation_to_x: corrected,
    })
}
