//! Irreducible representations of HW_{2^s} built by the little-group method.
//!
//! The abelian normal subgroup `H = {z^m x^n}` has characters
//! `χ^{(p,q)}(z^m x^n) = ω^{pm + qn}`; conjugation by `y` sends
//! `(p, q) ↦ (p, p + q)`. Writing `p = 2^t u` (`u` odd, `t = s` when
//! `p = 0`), the stabilizer of `(p, q)` in `B = <y>` is generated by
//! `y^{2^{s-t}}` and has order `2^t`. Inducing the one-dimensional
//! representation `z^m x^n y^{2^{s-t} v} ↦ ω^{pm+qn} ω_t^{rv}` gives an
//! irreducible representation of dimension `2^{s-t}`, and the canonical
//! triples `(p, q, r)` with `q, r < 2^t` enumerate every class exactly once.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::RootExponent;
use crate::error::{HwError, Result};
use crate::group::{check_cap, enumeration_cap, parse_triple, v2, GroupElement, GroupParams};
use crate::monomial::MonomialMatrix;

/// A canonical irrep label `((p, q), r)` for a fixed `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IrrepLabel {
    s: u32,
    p: u32,
    q: u32,
    r: u32,
}

impl IrrepLabel {
    /// Accepts only canonical triples: residues below `2^s`, and `q, r`
    /// below `2^t`.
    pub fn new(s: u32, p: u32, q: u32, r: u32) -> Result<Self> {
        let params = GroupParams::new(s)?;
        let n = params.n();
        if p >= n || q >= n || r >= n {
            return Err(HwError::Param(format!(
                "label ({p},{q},{r}) has a residue outside 0..{n} for s={s}"
            )));
        }
        let canonical = canonicalize_label(s, p as i64, q as i64, r as i64)?;
        if canonical.q != q || canonical.r != r {
            return Err(HwError::NotCanonical {
                s,
                p,
                q,
                r,
                cp: canonical.p,
                cq: canonical.q,
                cr: canonical.r,
            });
        }
        Ok(canonical)
    }

    /// Residues reduced mod `2^s` but `q, r` left as given. Only for
    /// evaluating matrices and traces of non-canonical triples.
    pub(crate) fn raw(s: u32, p: i64, q: i64, r: i64) -> Self {
        let n = 1i64 << s;
        Self {
            s,
            p: p.rem_euclid(n) as u32,
            q: q.rem_euclid(n) as u32,
            r: r.rem_euclid(n) as u32,
        }
    }

    /// Parses `"p,q,r"` and requires canonical form.
    pub fn parse(s: u32, text: &str) -> Result<Self> {
        let [p, q, r] = parse_triple(text)?;
        Self::new(s, p, q, r)
    }

    pub fn s(&self) -> u32 {
        self.s
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn r(&self) -> u32 {
        self.r
    }

    /// 2-adic valuation of `p`, with `t = s` for `p = 0`.
    pub fn t(&self) -> u32 {
        v2(self.p, self.s)
    }

    /// Odd cofactor `p / 2^t`; absent for `p = 0`.
    pub fn u(&self) -> Option<u32> {
        (self.p != 0).then(|| self.p >> self.t())
    }

    pub fn dim(&self) -> usize {
        1usize << (self.s - self.t())
    }

    pub fn is_faithful(&self) -> bool {
        self.t() == 0
    }

    pub fn params(&self) -> GroupParams {
        GroupParams::new(self.s).expect("label carries a valid s")
    }

    fn sort_key(&self) -> (u32, u32, u32, u32) {
        (self.t(), self.p, self.q, self.r)
    }

    pub fn triple(&self) -> (u32, u32, u32) {
        (self.p, self.q, self.r)
    }
}

impl Ord for IrrepLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.s, self.sort_key()).cmp(&(other.s, other.sort_key()))
    }
}

impl PartialOrd for IrrepLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.p, self.q, self.r)
    }
}

#[derive(Serialize, Deserialize)]
struct LabelJson {
    s: u32,
    p: u32,
    q: u32,
    r: u32,
    #[serde(default, skip_deserializing)]
    t: u32,
    #[serde(default, skip_deserializing)]
    dim: usize,
    #[serde(default, skip_deserializing)]
    faithful: bool,
}

impl Serialize for IrrepLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LabelJson {
            s: self.s,
            p: self.p,
            q: self.q,
            r: self.r,
            t: self.t(),
            dim: self.dim(),
            faithful: self.is_faithful(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IrrepLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = LabelJson::deserialize(deserializer)?;
        IrrepLabel::new(raw.s, raw.p, raw.q, raw.r).map_err(serde::de::Error::custom)
    }
}

/// Reduces an arbitrary triple to the canonical representative of its
/// equivalence class: residues mod `2^s`, then `q, r` mod `2^t`.
pub fn canonicalize_label(s: u32, p: i64, q: i64, r: i64) -> Result<IrrepLabel> {
    let params = GroupParams::new(s)?;
    let n = params.n() as i64;
    let p = p.rem_euclid(n) as u32;
    let t = v2(p, s);
    let small = 1i64 << t;
    Ok(IrrepLabel {
        s,
        p,
        q: q.rem_euclid(small) as u32,
        r: r.rem_euclid(small) as u32,
    })
}

/// `N_s = 2^{s-1} (3·2^s - 1)`.
pub fn irrep_count_formula(s: u32) -> u64 {
    assert!(s >= 1, "irrep_count_formula requires s >= 1");
    (1u64 << (s - 1)) * (3 * (1u64 << s) - 1)
}

/// Canonical labels in `(t, p, q, r)` order; `p = 0` comes last (`t = s`).
pub fn enumerate_irreps(s: u32) -> Result<Vec<IrrepLabel>> {
    GroupParams::new(s)?;
    check_cap(s, enumeration_cap(), "irrep enumeration")?;
    let mut out = Vec::with_capacity(irrep_count_formula(s) as usize);
    for t in 0..s {
        for u in (1u32..(1 << (s - t))).step_by(2) {
            let p = u << t;
            for q in 0..(1u32 << t) {
                for r in 0..(1u32 << t) {
                    out.push(IrrepLabel { s, p, q, r });
                }
            }
        }
    }
    for q in 0..(1u32 << s) {
        for r in 0..(1u32 << s) {
            out.push(IrrepLabel { s, p: 0, q, r });
        }
    }
    Ok(out)
}

/// Stabilizer of `χ_H^{(p,q)}` in `B`: the cyclic group generated by
/// `y^{generator_exponent}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LittleGroupDesc {
    pub s: u32,
    pub generator_exponent: u32,
    pub order: u32,
}

impl LittleGroupDesc {
    /// Whether `y^l` lies in the little group.
    pub fn contains(&self, l: u32) -> bool {
        l.is_multiple_of(self.generator_exponent)
    }

    /// Order of `K = H ⋊ B^{(p,q)}`.
    pub fn k_subgroup_order(&self) -> u64 {
        (1u64 << (2 * self.s)) * self.order as u64
    }
}

pub fn little_group(s: u32, p: u32) -> Result<LittleGroupDesc> {
    let params = GroupParams::new(s)?;
    let t = v2(p & params.mask(), s);
    Ok(LittleGroupDesc {
        s,
        generator_exponent: 1 << (s - t),
        order: 1 << t,
    })
}

/// Orbit of `χ_H^{(p,q)}` under `B`, stored as its sorted `q`-values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub s: u32,
    pub p: u32,
    pub members: Vec<u32>,
}

pub fn orbit_of(s: u32, p: u32, q: u32) -> Result<Orbit> {
    let params = GroupParams::new(s)?;
    let mask = params.mask();
    let (p, q) = (p & mask, q & mask);
    let len = 1u32 << (s - v2(p, s));
    let mut members: Vec<u32> = (0..len).map(|k| (k.wrapping_mul(p).wrapping_add(q)) & mask).collect();
    members.sort_unstable();
    members.dedup();
    Ok(Orbit { s, p, members })
}

/// One orbit per distinct class: `q < 2^t` for `p = 2^t u`, every `q` for
/// `p = 0`. Count is `2^{s-1}(s+2)`.
pub fn enumerate_distinct_orbits(s: u32) -> Result<Vec<Orbit>> {
    GroupParams::new(s)?;
    check_cap(s, enumeration_cap(), "orbit enumeration")?;
    let mut out = Vec::new();
    for t in 0..s {
        for u in (1u32..(1 << (s - t))).step_by(2) {
            for q in 0..(1u32 << t) {
                out.push(orbit_of(s, u << t, q)?);
            }
        }
    }
    for q in 0..(1u32 << s) {
        out.push(orbit_of(s, 0, q)?);
    }
    Ok(out)
}

pub fn distinct_orbit_count_formula(s: u32) -> u64 {
    (1u64 << (s - 1)) * (s as u64 + 2)
}

/// `Γ^{(p,q),r}(z^m x^n y^l)`: row `k` has its entry in column
/// `j = (k + l) mod 2^{s-t}` with exponent (mod `2^s`)
/// `p·m + (k·p + q)·n + 2^{s-t}·r·v`, `v = ⌊(k + l) / 2^{s-t}⌋`.
pub fn irrep_matrix(label: &IrrepLabel, g: &GroupElement) -> Result<MonomialMatrix> {
    let params = label.params();
    params.check(g)?;
    Ok(irrep_matrix_unchecked(label, g))
}

pub(crate) fn irrep_matrix_unchecked(label: &IrrepLabel, g: &GroupElement) -> MonomialMatrix {
    let s = label.s;
    let mask = (1u32 << s) - 1;
    let d_log = s - label.t();
    let d = 1u32 << d_log;
    let (p, q, r) = (label.p, label.q, label.r);
    let base = p.wrapping_mul(g.m).wrapping_add(q.wrapping_mul(g.n));
    let step_n = p.wrapping_mul(g.n);
    let mut sigma = Vec::with_capacity(d as usize);
    let mut phase = Vec::with_capacity(d as usize);
    for k in 0..d {
        let shifted = k + g.l;
        let j = shifted & (d - 1);
        let v = shifted >> d_log;
        sigma.push(j);
        let e = base
            .wrapping_add(k.wrapping_mul(step_n))
            .wrapping_add((r.wrapping_mul(v)) << d_log);
        phase.push(e & mask);
    }
    MonomialMatrix::from_parts(sigma, phase, 1 << s)
}

/// Images of the generators written straight from their explicit forms:
/// `z ↦ ω_{s-t}^u I`, `x ↦ ω_s^q diag(ω_{s-t}^{u k})`, and `y ↦` the cyclic
/// shift `|k+1> ↦ |k>` with `ω_t^r` in the bottom-left corner. For `p = 0`
/// these are the scalars `1`, `ω_s^q`, `ω_s^r`.
pub fn generator_matrices(label: &IrrepLabel) -> Result<(MonomialMatrix, MonomialMatrix, MonomialMatrix)> {
    let s = label.s;
    let big = 1u32 << s;
    let t = label.t();
    let d = label.dim();
    let Some(u) = label.u() else {
        let x = RootExponent::new(big, label.q as i64)?;
        let y = RootExponent::new(big, label.r as i64)?;
        return Ok((
            MonomialMatrix::identity(1, big),
            MonomialMatrix::scalar(1, big, x.e),
            MonomialMatrix::scalar(1, big, y.e),
        ));
    };
    let dim_modulus = 1u32 << (s - t);
    let twist_modulus = 1u32 << t;
    let in_big = |modulus: u32, e: i64| -> Result<u32> { Ok(RootExponent::new(modulus, e)?.embed(big)?.e) };

    let z = MonomialMatrix::scalar(d, big, in_big(dim_modulus, u as i64)?);

    let q_phase = in_big(big, label.q as i64)?;
    let x_phase = (0..d)
        .map(|k| Ok((q_phase + in_big(dim_modulus, u as i64 * k as i64)?) % big))
        .collect::<Result<Vec<_>>>()?;
    let x = MonomialMatrix::new((0..d as u32).collect(), x_phase, big)?;

    let mut y_sigma: Vec<u32> = (1..d as u32).collect();
    y_sigma.push(0);
    let mut y_phase = vec![0; d];
    y_phase[d - 1] = in_big(twist_modulus, label.r as i64)?;
    let y = MonomialMatrix::new(y_sigma, y_phase, big)?;
    Ok((z, x, y))
}
