//! The group HW_{2^s} in the normal form `z^m x^n y^l`.
//!
//! Generators satisfy `x^N = y^N = z^N = e`, `y x = z x y` and `z` central,
//! with `N = 2^s`. Normal-ordering a product moves every `y` past the `x`
//! on its right, picking up one `z` per swap, which gives
//!
//! ```text
//! (m, n, l) · (m', n', l') = (m + m' + l·n', n + n', l + l')   mod 2^s
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HwError, Result};

/// Largest supported `s`. Keeps `|G| = 2^{3s}` inside `u64`.
pub const MAX_S: u32 = 16;

/// Default cap for operations that enumerate labels or classes.
pub const DEFAULT_ENUMERATION_CAP: u32 = 10;

/// Enumeration cap, overridable through `HW_MAX_S` (clamped to [`MAX_S`]).
pub fn enumeration_cap() -> u32 {
    std::env::var("HW_MAX_S")
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map(|v| v.min(MAX_S))
        .unwrap_or(DEFAULT_ENUMERATION_CAP)
}

pub(crate) fn check_cap(s: u32, cap: u32, what: &'static str) -> Result<()> {
    if s > cap {
        Err(HwError::Resource { what, s, cap })
    } else {
        Ok(())
    }
}

/// 2-adic valuation with the convention `v2(0) = s`.
#[inline]
pub fn v2(x: u32, s: u32) -> u32 {
    if x == 0 {
        s
    } else {
        x.trailing_zeros().min(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    s: u32,
}

impl GroupParams {
    pub fn new(s: u32) -> Result<Self> {
        if s == 0 || s > MAX_S {
            return Err(HwError::Param(format!("s must be in 1..={MAX_S}, got {s}")));
        }
        Ok(Self { s })
    }

    #[inline]
    pub fn s(&self) -> u32 {
        self.s
    }

    /// Group exponent `N = 2^s`.
    #[inline]
    pub fn n(&self) -> u32 {
        1 << self.s
    }

    #[inline]
    pub fn mask(&self) -> u32 {
        self.n() - 1
    }

    /// `|HW_N| = N^3`.
    pub fn order(&self) -> u64 {
        1u64 << (3 * self.s)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    /// Builds an element, rejecting residues outside `0..2^s`.
    pub fn element(&self, m: u32, n: u32, l: u32) -> Result<GroupElement> {
        let g = GroupElement { m, n, l };
        self.check(&g)?;
        Ok(g)
    }

    /// Builds an element from arbitrary integers, reducing them mod `2^s`.
    pub fn reduce(&self, m: i64, n: i64, l: i64) -> GroupElement {
        let modulus = self.n() as i64;
        GroupElement {
            m: m.rem_euclid(modulus) as u32,
            n: n.rem_euclid(modulus) as u32,
            l: l.rem_euclid(modulus) as u32,
        }
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        let n = self.n();
        if g.m >= n || g.n >= n || g.l >= n {
            return Err(HwError::Param(format!(
                "element ({},{},{}) has a residue outside 0..{n} for s={}",
                g.m, g.n, g.l, self.s
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_reduced(a, b))
    }

    /// Product of two elements already known to be in range.
    #[inline]
    pub(crate) fn mul_reduced(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mask = self.mask();
        GroupElement {
            m: a.m.wrapping_add(b.m).wrapping_add(a.l.wrapping_mul(b.n)) & mask,
            n: a.n.wrapping_add(b.n) & mask,
            l: a.l.wrapping_add(b.l) & mask,
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.inv_reduced(a))
    }

    #[inline]
    pub(crate) fn inv_reduced(&self, a: &GroupElement) -> GroupElement {
        let mask = self.mask();
        GroupElement {
            m: a.l.wrapping_mul(a.n).wrapping_sub(a.m) & mask,
            n: a.n.wrapping_neg() & mask,
            l: a.l.wrapping_neg() & mask,
        }
    }

    /// `h · g · h⁻¹`.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul_reduced(&self.mul_reduced(h, g), &self.inv_reduced(h)))
    }

    /// `g^k` by repeated squaring.
    pub fn pow(&self, g: &GroupElement, mut k: u64) -> Result<GroupElement> {
        self.check(g)?;
        let mut base = *g;
        let mut acc = GroupElement::IDENTITY;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_reduced(&acc, &base);
            }
            base = self.mul_reduced(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// All `2^{3s}` elements in lexicographic `(m, n, l)` order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let n = self.n();
        (0..n).flat_map(move |m| {
            (0..n).flat_map(move |nn| (0..n).map(move |l| GroupElement { m, n: nn, l }))
        })
    }

    /// Conjugacy class of `g`: `{ z^α g : α ∈ 2^k Z }` with
    /// `k = min(v2(n), v2(l))`.
    pub fn conjugacy_class_of(&self, g: &GroupElement) -> Result<ConjugacyClass> {
        self.check(g)?;
        let k = v2(g.n, self.s).min(v2(g.l, self.s));
        let rep = GroupElement {
            m: g.m & ((1u32 << k) - 1),
            n: g.n,
            l: g.l,
        };
        Ok(ConjugacyClass {
            s: self.s,
            representative: rep,
            k,
            size: 1u64 << (self.s - k),
        })
    }

    /// Every conjugacy class, ordered by `(k, representative)`.
    pub fn enumerate_classes(&self) -> Result<Vec<ConjugacyClass>> {
        check_cap(self.s, enumeration_cap(), "class enumeration")?;
        let n = self.n();
        let s = self.s;
        let mut out = Vec::with_capacity(class_count_formula(s) as usize);
        for nn in 0..n {
            for l in 0..n {
                let k = v2(nn, s).min(v2(l, s));
                for m in 0..(1u32 << k) {
                    out.push(ConjugacyClass {
                        s,
                        representative: GroupElement { m, n: nn, l },
                        k,
                        size: 1u64 << (s - k),
                    });
                }
            }
        }
        out.sort_by_key(|c| (c.k, c.representative));
        Ok(out)
    }
}

/// `z^m x^n y^l`. Residues are interpreted mod `2^s` of whatever
/// [`GroupParams`] the element is used with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub m: u32,
    pub n: u32,
    pub l: u32,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { m: 0, n: 0, l: 0 };

    pub const fn new(m: u32, n: u32, l: u32) -> Self {
        Self { m, n, l }
    }

    pub const fn z() -> Self {
        Self::new(1, 0, 0)
    }

    pub const fn x() -> Self {
        Self::new(0, 1, 0)
    }

    pub const fn y() -> Self {
        Self::new(0, 0, 1)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.m, self.n, self.l)
    }
}

impl FromStr for GroupElement {
    type Err = HwError;

    /// Parses `"m,n,l"`.
    fn from_str(text: &str) -> Result<Self> {
        let [m, n, l] = parse_triple(text)?;
        Ok(Self { m, n, l })
    }
}

pub(crate) fn parse_triple(text: &str) -> Result<[u32; 3]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(HwError::Parse(format!("expected three comma-separated integers, got {text:?}")));
    }
    let mut out = [0u32; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| HwError::Parse(format!("not a non-negative integer: {part:?}")))?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub s: u32,
    /// Member with `m` reduced into `0..2^k`.
    pub representative: GroupElement,
    /// `min(v2(n), v2(l))`, with `v2(0) = s`.
    pub k: u32,
    pub size: u64,
}

impl ConjugacyClass {
    pub fn members(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let step = 1u32 << self.k;
        let rep = self.representative;
        (0..self.size as u32).map(move |i| GroupElement {
            m: rep.m + i * step,
            n: rep.n,
            l: rep.l,
        })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.n == self.representative.n
            && g.l == self.representative.l
            && (g.m & ((1u32 << self.k) - 1)) == self.representative.m
    }
}

/// Closed-form number of conjugacy classes:
/// `Σ_{t,t'=0}^{s-1} 2^{2s-t-t'-2} 2^{min(t,t')} + 2^s (s+1)`.
pub fn class_count_formula(s: u32) -> u64 {
    assert!(s >= 1, "class_count_formula requires s >= 1");
    let mut total = (1u64 << s) * (s as u64 + 1);
    for t in 0..s {
        for tp in 0..s {
            total += 1u64 << (2 * s - t - tp - 2 + t.min(tp));
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(s: u32) -> GroupParams {
        GroupParams::new(s).unwrap()
    }

    fn brute_class(params: &GroupParams, g: &GroupElement) -> BTreeSet<GroupElement> {
        params
            .elements()
            .map(|h| params.conjugate(g, &h).unwrap())
            .collect()
    }

    #[test]
    fn multiply_examples() {
        let s1 = p(1);
        assert_eq!(
            s1.multiply(&GroupElement::new(0, 1, 0), &GroupElement::new(0, 0, 1)).unwrap(),
            GroupElement::new(0, 1, 1)
        );
        assert_eq!(
            s1.multiply(&GroupElement::y(), &GroupElement::x()).unwrap(),
            GroupElement::new(1, 1, 1)
        );
        let s2 = p(2);
        assert_eq!(
            s2.multiply(&GroupElement::new(0, 0, 2), &GroupElement::new(0, 3, 0)).unwrap(),
            GroupElement::new(2, 3, 2)
        );
    }

    #[test]
    fn multiply_rejects_out_of_range() {
        let s1 = p(1);
        assert!(matches!(
            s1.multiply(&GroupElement::new(0, 3, 0), &GroupElement::IDENTITY),
            Err(HwError::Param(_))
        ));
        assert!(GroupParams::new(0).is_err());
        assert!(GroupParams::new(17).is_err());
    }

    #[test]
    fn inverse_examples() {
        let s2 = p(2);
        assert_eq!(s2.inverse(&GroupElement::IDENTITY).unwrap(), GroupElement::IDENTITY);
        let a = GroupElement::new(0, 1, 1);
        let ai = s2.inverse(&a).unwrap();
        assert_eq!(ai, GroupElement::new(1, 3, 3));
        assert_eq!(s2.multiply(&a, &ai).unwrap(), GroupElement::IDENTITY);
        assert_eq!(s2.multiply(&ai, &a).unwrap(), GroupElement::IDENTITY);
        assert_eq!(s2.inverse(&GroupElement::new(3, 0, 0)).unwrap(), GroupElement::new(1, 0, 0));
    }

    #[test]
    fn conjugate_examples() {
        let s2 = p(2);
        let g = GroupElement::new(0, 1, 0);
        assert_eq!(s2.conjugate(&g, &GroupElement::IDENTITY).unwrap(), g);
        // y x y^-1 = z x
        assert_eq!(s2.conjugate(&g, &GroupElement::y()).unwrap(), GroupElement::new(1, 1, 0));
        for h in s2.elements() {
            assert_eq!(s2.conjugate(&GroupElement::z(), &h).unwrap(), GroupElement::z());
        }
    }

    #[test]
    fn group_laws_exhaustive_small() {
        for s in 1..=2 {
            let params = p(s);
            let all: Vec<_> = params.elements().collect();
            assert_eq!(all.len() as u64, params.order());
            for a in &all {
                for b in &all {
                    let ab = params.mul_reduced(a, b);
                    for c in &all {
                        assert_eq!(
                            params.mul_reduced(&ab, c),
                            params.mul_reduced(a, &params.mul_reduced(b, c))
                        );
                    }
                }
                assert_eq!(params.mul_reduced(a, &GroupElement::IDENTITY), *a);
                assert_eq!(params.mul_reduced(&GroupElement::IDENTITY, a), *a);
            }
            let n = params.n() as u64;
            for gen in [GroupElement::x(), GroupElement::y(), GroupElement::z()] {
                assert_eq!(params.pow(&gen, n).unwrap(), GroupElement::IDENTITY);
            }
            let yx = params.mul_reduced(&GroupElement::y(), &GroupElement::x());
            let zxy = params.mul_reduced(
                &params.mul_reduced(&GroupElement::z(), &GroupElement::x()),
                &GroupElement::y(),
            );
            assert_eq!(yx, zxy);
        }
    }

    #[test]
    fn class_examples_match_brute_force() {
        let s2 = p(2);
        let c = s2.conjugacy_class_of(&GroupElement::new(0, 1, 0)).unwrap();
        assert_eq!(c.size, 4);
        let members: BTreeSet<_> = c.members().collect();
        assert_eq!(members, brute_class(&s2, &GroupElement::new(0, 1, 0)));
        assert_eq!(
            members,
            (0..4).map(|m| GroupElement::new(m, 1, 0)).collect::<BTreeSet<_>>()
        );

        let c = s2.conjugacy_class_of(&GroupElement::new(3, 0, 0)).unwrap();
        assert_eq!(c.size, 1);
        assert_eq!(c.members().collect::<Vec<_>>(), vec![GroupElement::new(3, 0, 0)]);

        let c = s2.conjugacy_class_of(&GroupElement::new(0, 2, 2)).unwrap();
        assert_eq!(c.k, 1);
        let members: BTreeSet<_> = c.members().collect();
        assert_eq!(
            members,
            [GroupElement::new(0, 2, 2), GroupElement::new(2, 2, 2)].into_iter().collect()
        );
        assert_eq!(members, brute_class(&s2, &GroupElement::new(0, 2, 2)));
    }

    #[test]
    fn class_formula_matches_brute_force_up_to_s3() {
        for s in 1..=3 {
            let params = p(s);
            for g in params.elements() {
                let c = params.conjugacy_class_of(&g).unwrap();
                assert!(c.contains(&g));
                assert_eq!(c.members().collect::<BTreeSet<_>>(), brute_class(&params, &g), "g={g}");
            }
        }
    }

    #[test]
    fn classes_partition_group() {
        for s in 1..=3 {
            let params = p(s);
            let classes = params.enumerate_classes().unwrap();
            assert_eq!(classes.len() as u64, class_count_formula(s));
            let mut seen = BTreeSet::new();
            for c in &classes {
                for g in c.members() {
                    assert!(seen.insert(g), "duplicate {g}");
                }
            }
            assert_eq!(seen.len() as u64, params.order());
            assert_eq!(classes.iter().map(|c| c.size).sum::<u64>(), params.order());
            let keys: Vec<_> = classes.iter().map(|c| (c.k, c.representative)).collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn class_count_values() {
        assert_eq!(class_count_formula(1), 5);
        assert_eq!(class_count_formula(2), 22);
        assert_eq!(class_count_formula(3), 92);
        assert_eq!(class_count_formula(4), 376);
        assert_eq!(class_count_formula(10), 1_572_352);
    }

    #[test]
    fn element_text_syntax() {
        assert_eq!("1, 2,3".parse::<GroupElement>().unwrap(), GroupElement::new(1, 2, 3));
        assert!("1,2".parse::<GroupElement>().is_err());
        assert!("1,-2,3".parse::<GroupElement>().is_err());
        assert_eq!(GroupElement::new(4, 5, 6).to_string(), "4,5,6");
        let json = serde_json::to_string(&GroupElement::new(1, 2, 3)).unwrap();
        assert_eq!(json, r#"{"m":1,"n":2,"l":3}"#);
    }
}
