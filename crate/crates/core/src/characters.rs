//! Characters of the irreps, character tables, and the exact
//! irreducibility / orthogonality identities.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{root_complex, CycInt};
use crate::error::{HwError, Result};
use crate::group::{check_cap, enumeration_cap, ConjugacyClass, GroupElement, GroupParams};
use crate::rep::{enumerate_irreps, irrep_matrix_unchecked, IrrepLabel};

/// `scale · ω^exp` over modulus `2^s`, or zero when `scale == 0`.
///
/// Every character value of HW_{2^s} is a non-negative integer times a
/// single root of unity, so this form is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharValue {
    pub scale: u64,
    pub exp: u32,
    #[serde(skip)]
    pub modulus: u32,
}

impl CharValue {
    pub fn zero(modulus: u32) -> Self {
        Self {
            scale: 0,
            exp: 0,
            modulus,
        }
    }

    pub fn new(scale: u64, exp: u32, modulus: u32) -> Self {
        if scale == 0 {
            Self::zero(modulus)
        } else {
            Self {
                scale,
                exp: exp & (modulus - 1),
                modulus,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scale == 0
    }

    pub fn conj(&self) -> Self {
        Self::new(self.scale, self.exp.wrapping_neg(), self.modulus)
    }

    pub fn to_cycint(&self) -> Result<CycInt> {
        let mut out = CycInt::zero(self.modulus)?;
        let scale = i64::try_from(self.scale).map_err(|_| HwError::Overflow)?;
        out.add_term(scale, self.exp as i64)?;
        Ok(out)
    }

    pub fn to_complex(&self) -> Complex64 {
        root_complex(self.modulus, self.exp as i64) * self.scale as f64
    }

    /// Cell text for CSV export: `"scale*w^exp"` or `"0"`.
    pub fn cell(&self) -> String {
        if self.is_zero() {
            "0".to_string()
        } else {
            format!("{}*w^{}", self.scale, self.exp)
        }
    }
}

/// `χ(z^m x^n y^l)`: zero unless `n` and `l` are multiples of `2^{s-t}`;
/// otherwise `2^{s-t} ω_{s-t}^{u m} ω_t^{v₁ q + v₂ r}` with
/// `n = 2^{s-t} v₁`, `l = 2^{s-t} v₂`.
pub fn character(label: &IrrepLabel, g: &GroupElement) -> Result<CharValue> {
    label.params().check(g)?;
    Ok(character_unchecked(label, g))
}

#[inline]
pub(crate) fn character_unchecked(label: &IrrepLabel, g: &GroupElement) -> CharValue {
    let s = label.s();
    let big = 1u32 << s;
    let t = label.t();
    let d_log = s - t;
    let d = 1u32 << d_log;
    if g.n & (d - 1) != 0 || g.l & (d - 1) != 0 {
        return CharValue::zero(big);
    }
    let (v1, v2) = (g.n >> d_log, g.l >> d_log);
    // ω_{s-t}^{u m} = ω_s^{2^t u m} = ω_s^{p m}; ω_t^{x} = ω_s^{2^{s-t} x}
    let center = label.p().wrapping_mul(g.m);
    let twist = (v1.wrapping_mul(label.q()).wrapping_add(v2.wrapping_mul(label.r()))) << d_log;
    CharValue::new(d as u64, center.wrapping_add(twist), big)
}

/// `Σ_g |χ(g)|²`, accumulated exactly over the support of `χ`.
pub fn character_norm_squared(label: &IrrepLabel) -> Result<i64> {
    let s = label.s();
    let big = 1u32 << s;
    let d_log = s - label.t();
    let mut acc = CycInt::zero(big)?;
    for m in 0..big {
        for v1 in 0..(1u32 << label.t()) {
            for v2 in 0..(1u32 << label.t()) {
                let g = GroupElement::new(m, v1 << d_log, v2 << d_log);
                let c = character_unchecked(label, &g);
                let scale = i64::try_from(c.scale * c.scale).map_err(|_| HwError::Overflow)?;
                // χ χ* is the real number scale²
                acc.add_term(scale, 0)?;
            }
        }
    }
    acc.reduce_to_rational_integer()
}

/// Whether two (possibly non-canonical) triples have the same character,
/// compared on one representative per conjugacy class. Values come from
/// the traces of the induced matrices, not from the closed form.
pub fn characters_equal(s: u32, a: (i64, i64, i64), b: (i64, i64, i64)) -> Result<bool> {
    let params = GroupParams::new(s)?;
    let la = IrrepLabel::raw(s, a.0, a.1, a.2);
    let lb = IrrepLabel::raw(s, b.0, b.1, b.2);
    for class in params.enumerate_classes()? {
        let g = class.representative;
        let ta = irrep_matrix_unchecked(&la, &g).trace()?;
        let tb = irrep_matrix_unchecked(&lb, &g).trace()?;
        if ta != tb {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterTable {
    pub s: u32,
    pub irreps: Vec<IrrepLabel>,
    pub classes: Vec<ConjugacyClass>,
    /// `values[i][c]` is irrep `i` on class `c`.
    pub values: Vec<Vec<CharValue>>,
}

pub fn character_table(s: u32) -> Result<CharacterTable> {
    let params = GroupParams::new(s)?;
    check_cap(s, enumeration_cap().min(8), "character table")?;
    let irreps = enumerate_irreps(s)?;
    let classes = params.enumerate_classes()?;
    let values = irreps
        .par_iter()
        .map(|label| {
            classes
                .iter()
                .map(|c| character_unchecked(label, &c.representative))
                .collect()
        })
        .collect();
    Ok(CharacterTable {
        s,
        irreps,
        classes,
        values,
    })
}

impl CharacterTable {
    /// `Σ_C |C| χ_i(C) χ_j(C)*`, exact.
    pub fn row_inner_product(&self, i: usize, j: usize) -> Result<i64> {
        let mut acc = CycInt::zero(1 << self.s)?;
        for (c, class) in self.classes.iter().enumerate() {
            let (a, b) = (self.values[i][c], self.values[j][c]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let coef = a
                .scale
                .checked_mul(b.scale)
                .and_then(|x| x.checked_mul(class.size))
                .and_then(|x| i64::try_from(x).ok())
                .ok_or(HwError::Overflow)?;
            acc.add_term(coef, a.exp as i64 - b.exp as i64)?;
        }
        acc.reduce_to_rational_integer()
    }

    /// Pairs `(i, j)` with `i <= j` whose inner product differs from
    /// `|G| δ_ij`.
    pub fn orthogonality_violations(&self) -> Result<Vec<(usize, usize, i64)>> {
        let order = 1i64 << (3 * self.s);
        let rows = self.irreps.len();
        let per_row: Vec<Result<Vec<(usize, usize, i64)>>> = (0..rows)
            .into_par_iter()
            .map(|i| {
                let mut bad = Vec::new();
                for j in i..rows {
                    let ip = self.row_inner_product(i, j)?;
                    let expected = if i == j { order } else { 0 };
                    if ip != expected {
                        bad.push((i, j, ip));
                    }
                }
                Ok(bad)
            })
            .collect();
        let mut out = Vec::new();
        for row in per_row {
            out.extend(row?);
        }
        Ok(out)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["irrep".to_string()];
        header.extend(
            self.classes
                .iter()
                .map(|c| format!("{} ({})", c.representative, c.size)),
        );
        writer.write_record(&header).map_err(csv_err)?;
        for (label, row) in self.irreps.iter().zip(&self.values) {
            let mut record = vec![label.to_string()];
            record.extend(row.iter().map(CharValue::cell));
            writer.write_record(&record).map_err(csv_err)?;
        }
        let bytes = writer.into_inner().map_err(|e| HwError::Inconsistency(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| HwError::Inconsistency(e.to_string()))
    }
}

pub(crate) fn csv_err(e: csv::Error) -> HwError {
    HwError::Inconsistency(format!("csv: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::irrep_matrix;

    fn lab(s: u32, p: u32, q: u32, r: u32) -> IrrepLabel {
        IrrepLabel::new(s, p, q, r).unwrap()
    }

    #[test]
    fn examples() {
        let l = lab(2, 1, 0, 0);
        assert_eq!(character(&l, &GroupElement::IDENTITY).unwrap(), CharValue::new(4, 0, 4));
        assert!(character(&l, &GroupElement::x()).unwrap().is_zero());
        let v = character(&lab(2, 2, 1, 1), &GroupElement::new(0, 2, 2)).unwrap();
        assert_eq!(v.to_cycint().unwrap().reduce_to_rational_integer().unwrap(), 2);
        for label in enumerate_irreps(3).unwrap() {
            let v = character(&label, &GroupElement::IDENTITY).unwrap();
            assert_eq!((v.scale as usize, v.exp), (label.dim(), 0));
        }
    }

    #[test]
    fn trace_consistency_exhaustive_small() {
        for s in 1..=2 {
            let params = GroupParams::new(s).unwrap();
            for label in enumerate_irreps(s).unwrap() {
                for g in params.elements() {
                    let closed = character(&label, &g).unwrap().to_cycint().unwrap();
                    let trace = irrep_matrix(&label, &g).unwrap().trace().unwrap();
                    assert_eq!(closed, trace, "{label} at {g}");
                }
            }
        }
    }

    #[test]
    fn class_function_property() {
        for s in 1..=3 {
            let params = GroupParams::new(s).unwrap();
            let classes = params.enumerate_classes().unwrap();
            for label in enumerate_irreps(s).unwrap() {
                for c in &classes {
                    let v = character(&label, &c.representative).unwrap();
                    assert!(c.members().all(|g| character(&label, &g).unwrap() == v));
                }
            }
        }
    }

    #[test]
    fn norm_examples() {
        assert_eq!(character_norm_squared(&lab(1, 1, 0, 0)).unwrap(), 8);
        assert_eq!(character_norm_squared(&lab(2, 0, 3, 2)).unwrap(), 64);
        for label in enumerate_irreps(3).unwrap() {
            assert_eq!(character_norm_squared(&label).unwrap(), 512);
        }
    }

    #[test]
    fn norm_matches_full_sum() {
        let params = GroupParams::new(2).unwrap();
        for label in enumerate_irreps(2).unwrap() {
            let total: u64 = params
                .elements()
                .map(|g| character(&label, &g).unwrap().scale.pow(2))
                .sum();
            assert_eq!(total as i64, character_norm_squared(&label).unwrap());
        }
    }

    #[test]
    fn equality_examples() {
        assert!(characters_equal(2, (1, 0, 0), (1, 2, 0)).unwrap());
        assert!(!characters_equal(2, (1, 0, 0), (3, 0, 0)).unwrap());
        assert!(characters_equal(2, (2, 1, 0), (2, 3, 0)).unwrap());
        assert!(characters_equal(2, (2, 3, 1), (2, 1, 1)).unwrap());
    }

    #[test]
    fn canonicalization_preserves_characters() {
        let s = 3;
        let n = 8i64;
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let c = crate::rep::canonicalize_label(s, p, q, r).unwrap();
                    assert!(
                        characters_equal(s, (p, q, r), (c.p() as i64, c.q() as i64, c.r() as i64)).unwrap(),
                        "({p},{q},{r})"
                    );
                }
            }
        }
    }

    #[test]
    fn labels_are_pairwise_distinct() {
        for s in 1..=3 {
            let table = character_table(s).unwrap();
            let mut rows: Vec<_> = table.values.clone();
            rows.sort_by_key(|r| r.iter().map(|v| (v.scale, v.exp)).collect::<Vec<_>>());
            rows.dedup();
            assert_eq!(rows.len(), table.irreps.len());
        }
    }

    #[test]
    fn tables_are_square_and_orthogonal() {
        for (s, size) in [(1, 5), (2, 22)] {
            let table = character_table(s).unwrap();
            assert_eq!(table.irreps.len(), size);
            assert_eq!(table.classes.len(), size);
            assert!(table.orthogonality_violations().unwrap().is_empty());
        }
    }

    #[test]
    fn one_dim_rows_are_units() {
        let table = character_table(2).unwrap();
        for (label, row) in table.irreps.iter().zip(&table.values) {
            if label.dim() == 1 {
                assert!(row.iter().all(|v| v.scale == 1));
            }
        }
    }

    #[test]
    fn csv_export() {
        let csv = character_table(1).unwrap().to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            r#"irrep,"0,0,1 (2)","0,1,0 (2)","0,1,1 (2)","0,0,0 (1)","1,0,0 (1)""#
        );
        assert_eq!(lines.next().unwrap(), r#""1,0,0",0,0,0,2*w^0,2*w^1"#);
    }
}
