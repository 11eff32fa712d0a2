//! Reference fusion rules and orbit listings shipped with the crate.
//!
//! Each file keeps its `#` comment lines verbatim; every other line is a
//! rule (or orbit) in the exact text form this crate renders. Comparison
//! regenerates the whole file from computed data and checks it byte for byte.

use crate::error::{HwError, Result};
use crate::fusion::fuse_row;
use crate::rep::{enumerate_distinct_orbits, IrrepLabel};

pub const FUSION_HW2: &str = include_str!("../golden/fusion_hw2.txt");
pub const FUSION_HW4: &str = include_str!("../golden/fusion_hw4.txt");
pub const ORBITS_HW4: &str = include_str!("../golden/orbits_hw4.txt");

/// Result of regenerating a golden file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenComparison {
    pub expected: String,
    pub actual: String,
    pub rules: usize,
}

impl GoldenComparison {
    pub fn matches(&self) -> bool {
        self.expected == self.actual
    }

    /// First differing line pair, 1-based.
    pub fn first_mismatch(&self) -> Option<(usize, String, String)> {
        let mut a = self.expected.lines();
        let mut b = self.actual.lines();
        for i in 1.. {
            match (a.next(), b.next()) {
                (None, None) => return None,
                (x, y) if x != y => {
                    return Some((i, x.unwrap_or("").to_string(), y.unwrap_or("").to_string()))
                }
                _ => {}
            }
        }
        None
    }
}

fn parse_bracketed(s: u32, text: &str) -> Result<IrrepLabel> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| HwError::Parse(format!("expected [p,q,r], got {text:?}")))?;
    IrrepLabel::parse(s, inner)
}

/// Rebuilds a fusion golden file by recomputing every listed product.
pub fn regenerate_fusion(s: u32, golden: &str) -> Result<GoldenComparison> {
    let mut actual = String::with_capacity(golden.len());
    let mut rules = 0;
    for line in golden.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            actual.push_str(line);
        } else {
            let lhs = line.split('=').next().unwrap_or("");
            let (left, right) = lhs
                .split_once(" x ")
                .ok_or_else(|| HwError::Parse(format!("malformed rule {line:?}")))?;
            let row = fuse_row(&parse_bracketed(s, left)?, &parse_bracketed(s, right)?)?;
            actual.push_str(&row.render());
            rules += 1;
        }
        actual.push('\n');
    }
    Ok(GoldenComparison {
        expected: golden.to_string(),
        actual,
        rules,
    })
}

/// Renders the distinct-orbit listing in the golden-file layout.
pub fn render_orbits(s: u32, header: &str) -> Result<String> {
    let mut out = String::from(header);
    for orbit in enumerate_distinct_orbits(s)? {
        let q = orbit.members[0];
        let members: Vec<String> = orbit.members.iter().map(u32::to_string).collect();
        out.push_str(&format!("{} {} : {}\n", orbit.p, q, members.join(" ")));
    }
    Ok(out)
}

pub fn regenerate_orbits_hw4() -> Result<GoldenComparison> {
    let header: String = ORBITS_HW4
        .lines()
        .take_while(|l| l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let actual = render_orbits(2, &header)?;
    let rules = actual.lines().filter(|l| !l.starts_with('#')).count();
    Ok(GoldenComparison {
        expected: ORBITS_HW4.to_string(),
        actual,
        rules,
    })
}

pub fn check_all() -> Result<Vec<(&'static str, GoldenComparison)>> {
    Ok(vec![
        ("fusion_hw2", regenerate_fusion(1, FUSION_HW2)?),
        ("fusion_hw4", regenerate_fusion(2, FUSION_HW4)?),
        ("orbits_hw4", regenerate_orbits_hw4()?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_files_match() {
        for (name, cmp) in check_all().unwrap() {
            assert!(cmp.matches(), "{name}: {:?}", cmp.first_mismatch());
        }
    }

    #[test]
    fn rule_counts() {
        let all = check_all().unwrap();
        assert_eq!(all[0].1.rules, 15);
        assert_eq!(all[1].1.rules, 21);
        assert_eq!(all[2].1.rules, 8);
    }

    #[test]
    fn tampered_rule_is_caught() {
        let bad = FUSION_HW2.replace("[0,0,1] x [0,1,0] = [0,1,1]", "[0,0,1] x [0,1,0] = [0,1,0]");
        let cmp = regenerate_fusion(1, &bad).unwrap();
        assert!(!cmp.matches());
        let (line, expected, actual) = cmp.first_mismatch().unwrap();
        assert_eq!(line, 13);
        assert!(expected.ends_with("[0,1,0]"));
        assert!(actual.ends_with("[0,1,1]"));
    }

    #[test]
    fn first_orbit_q_is_the_orbit_representative() {
        // q < 2^t is always the smallest member, so reading it back is exact
        for orbit in enumerate_distinct_orbits(4).unwrap() {
            let t = crate::group::v2(orbit.p, 4);
            assert!(orbit.members[0] < (1 << t));
        }
    }
}
