//! Tensor-product decomposition of irreps.
//!
//! Two independent routes compute the multiplicity `N` of `D3` in
//! `D1 ⊗ D2`: the character sum `|G|⁻¹ Σ_g χ1(g) χ2(g) χ3(g)*` in exact
//! cyclotomic arithmetic, and the closed form
//! `2^{s - t2 + t1 - t3}` (for `t1 <= t2`) gated by
//! `p3 = p1 + p2`, `q3 ≡ q1 + q2`, `r3 ≡ r1 + r2 (mod 2^{t1})`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{character_unchecked, csv_err};
use crate::cyclotomic::CycInt;
use crate::error::{HwError, Result};
use crate::group::{check_cap, enumeration_cap, v2, GroupElement, GroupParams};
use crate::rep::{enumerate_irreps, IrrepLabel};

/// Largest `s` for which whole fusion tables are built.
pub const FUSION_TABLE_CAP: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionTerm {
    pub label: IrrepLabel,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionRow {
    pub left: IrrepLabel,
    pub right: IrrepLabel,
    pub terms: Vec<FusionTerm>,
}

impl FusionRow {
    pub fn total_dim(&self) -> u64 {
        self.terms.iter().map(|t| t.mult * t.label.dim() as u64).sum()
    }

    pub fn conserves_dimension(&self) -> bool {
        self.total_dim() == (self.left.dim() * self.right.dim()) as u64
    }

    /// `[p,q,r] x [p,q,r] = 2[p,q,r] + [p,q,r] + ...`
    pub fn render(&self) -> String {
        let rhs: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                if t.mult == 1 {
                    format!("[{}]", t.label)
                } else {
                    format!("{}[{}]", t.mult, t.label)
                }
            })
            .collect();
        format!("[{}] x [{}] = {}", self.left, self.right, rhs.join(" + "))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FusionTable {
    pub s: u32,
    pub rows: Vec<FusionRow>,
}

impl FusionTable {
    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(["left", "right", "label", "mult"]).map_err(csv_err)?;
        for row in &self.rows {
            for term in &row.terms {
                writer
                    .write_record([
                        row.left.to_string(),
                        row.right.to_string(),
                        term.label.to_string(),
                        term.mult.to_string(),
                    ])
                    .map_err(csv_err)?;
            }
        }
        let bytes = writer.into_inner().map_err(|e| HwError::Inconsistency(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| HwError::Inconsistency(e.to_string()))
    }
}

fn same_s(labels: &[&IrrepLabel]) -> Result<u32> {
    let s = labels[0].s();
    if labels.iter().any(|l| l.s() != s) {
        return Err(HwError::Param("labels belong to different s".into()));
    }
    Ok(s)
}

/// How the character sum is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summation {
    /// Every one of the `2^{3s}` group elements.
    Naive,
    /// Only `n, l` divisible by the largest of the three dimensions, where
    /// all three characters can be non-zero.
    SupportRestricted,
}

pub fn fusion_coeff_bruteforce(d1: &IrrepLabel, d2: &IrrepLabel, d3: &IrrepLabel) -> Result<u64> {
    fusion_coeff_bruteforce_with(d1, d2, d3, Summation::SupportRestricted)
}

pub fn fusion_coeff_bruteforce_with(
    d1: &IrrepLabel,
    d2: &IrrepLabel,
    d3: &IrrepLabel,
    summation: Summation,
) -> Result<u64> {
    let s = same_s(&[d1, d2, d3])?;
    let big = 1u32 << s;
    let mut acc = CycInt::zero(big)?;
    let mut add = |g: GroupElement| -> Result<()> {
        let (a, b, c) = (
            character_unchecked(d1, &g),
            character_unchecked(d2, &g),
            character_unchecked(d3, &g),
        );
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Ok(());
        }
        let coef = a
            .scale
            .checked_mul(b.scale)
            .and_then(|x| x.checked_mul(c.scale))
            .and_then(|x| i64::try_from(x).ok())
            .ok_or(HwError::Overflow)?;
        acc.add_term(coef, a.exp as i64 + b.exp as i64 - c.exp as i64)
    };
    match summation {
        Summation::Naive => {
            let params = GroupParams::new(s)?;
            for g in params.elements() {
                add(g)?;
            }
        }
        Summation::SupportRestricted => {
            let step = d1.dim().max(d2.dim()).max(d3.dim()) as u32;
            for m in 0..big {
                for n in (0..big).step_by(step as usize) {
                    for l in (0..big).step_by(step as usize) {
                        add(GroupElement::new(m, n, l))?;
                    }
                }
            }
        }
    }
    let order = i64::try_from(1u64 << (3 * s)).map_err(|_| HwError::Overflow)?;
    let value = acc
        .div_exact(order)
        .and_then(|x| x.reduce_to_rational_integer())
        .map_err(|e| HwError::Inconsistency(format!("multiplicity of {d3} in {d1} x {d2}: {e}")))?;
    u64::try_from(value)
        .map_err(|_| HwError::Inconsistency(format!("negative multiplicity {value} of {d3} in {d1} x {d2}")))
}

pub fn fusion_coeff_closed(d1: &IrrepLabel, d2: &IrrepLabel, d3: &IrrepLabel) -> Result<u64> {
    let s = same_s(&[d1, d2, d3])?;
    let (a, b) = if d1.t() <= d2.t() { (d1, d2) } else { (d2, d1) };
    let mask = (1u32 << s) - 1;
    let (t1, t2) = (a.t(), b.t());
    let t3 = v2(d3.p(), s);
    let low = (1u32 << t1) - 1;
    if (a.p() + b.p()) & mask != d3.p()
        || (a.q() + b.q()).wrapping_sub(d3.q()) & low != 0
        || (a.r() + b.r()).wrapping_sub(d3.r()) & low != 0
    {
        return Ok(0);
    }
    let exponent = s as i64 - t2 as i64 + t1 as i64 - t3 as i64;
    if exponent < 0 {
        return Err(HwError::Inconsistency(format!(
            "closed-form exponent {exponent} is negative for {d1} x {d2} -> {d3}"
        )));
    }
    Ok(1u64 << exponent)
}

/// Decomposition of `d1 ⊗ d2` into canonical irreps, sorted by label order.
pub fn fuse(d1: &IrrepLabel, d2: &IrrepLabel) -> Result<Vec<FusionTerm>> {
    let s = same_s(&[d1, d2])?;
    let (a, b) = if d1.t() <= d2.t() { (d1, d2) } else { (d2, d1) };
    let mask = (1u32 << s) - 1;
    let p3 = (a.p() + b.p()) & mask;
    let t1 = a.t();
    let t3 = v2(p3, s);
    debug_assert!(t3 >= t1);
    let low = (1u32 << t1) - 1;
    let (q_base, r_base) = ((a.q() + b.q()) & low, (a.r() + b.r()) & low);
    let lifts = 1u32 << (t3 - t1);
    let mut terms = Vec::with_capacity((lifts * lifts) as usize);
    for i in 0..lifts {
        for j in 0..lifts {
            let label = IrrepLabel::new(s, p3, q_base + (i << t1), r_base + (j << t1))?;
            let mult = fusion_coeff_closed(d1, d2, &label)?;
            if mult > 0 {
                terms.push(FusionTerm { label, mult });
            }
        }
    }
    terms.sort_by_key(|t| t.label);
    Ok(terms)
}

pub fn fuse_row(d1: &IrrepLabel, d2: &IrrepLabel) -> Result<FusionRow> {
    Ok(FusionRow {
        left: *d1,
        right: *d2,
        terms: fuse(d1, d2)?,
    })
}

/// Every unordered pair `(i <= j)` in label order.
pub fn fusion_table(s: u32) -> Result<FusionTable> {
    check_cap(s, enumeration_cap().min(FUSION_TABLE_CAP), "fusion table")?;
    let labels = enumerate_irreps(s)?;
    let rows: Vec<Result<Vec<FusionRow>>> = labels
        .par_iter()
        .enumerate()
        .map(|(i, a)| labels[i..].iter().map(|b| fuse_row(a, b)).collect())
        .collect();
    let mut out = Vec::new();
    for chunk in rows {
        out.extend(chunk?);
    }
    Ok(FusionTable { s, rows: out })
}
