//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the output is exactly the criterion
//! lines. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hwgroup::characters::{character_norm_squared, character_table};
use hwgroup::cyclotomic::CycInt;
use hwgroup::fourier::{verify_fourier_relations, FOURIER_TOL};
use hwgroup::fusion::{fuse_row, fusion_coeff_bruteforce_with, fusion_coeff_closed, Summation};
use hwgroup::golden;
use hwgroup::group::{class_count_formula, GroupElement, GroupParams};
use hwgroup::monomial::ExactMatrix;
use hwgroup::rep::{
    distinct_orbit_count_formula, enumerate_distinct_orbits, enumerate_irreps, irrep_count_formula, irrep_matrix,
    IrrepLabel,
};
use hwgroup::verify::{irrep_rng, random_element};
use rayon::prelude::*;

const SEED: u64 = 20_240_601;

struct Outcome {
    ok: bool,
    summary: String,
}

fn outcome(ok: bool, summary: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        summary: summary.into(),
    }
}

type Criterion = fn() -> Result<Outcome, hwgroup::HwError>;

fn main() -> ExitCode {
    let criteria: [(u32, &str, Option<Duration>, Criterion); 12] = [
        (1, "counting formulas", Some(Duration::from_secs(1)), counting),
        (2, "enumeration consistency", Some(Duration::from_secs(30)), enumeration),
        (3, "completeness", None, completeness),
        (4, "orbit count and HW_4 listing", None, orbits),
        (5, "homomorphism", Some(Duration::from_secs(60)), homomorphism),
        (6, "irreducibility norms", None, irreducibility),
        (7, "character orthogonality", Some(Duration::from_secs(60)), orthogonality),
        (8, "fusion oracle equivalence", Some(Duration::from_secs(300)), fusion_oracle),
        (9, "golden fusion tables", None, golden_tables),
        (10, "dimension conservation", None, dimension_conservation),
        (11, "algebraic identities", None, identities),
        (12, "Fourier relations", Some(Duration::from_secs(60)), fourier),
    ];
    let mut failed = 0;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (mut ok, mut summary) = match result {
            Ok(o) => (o.ok, o.summary),
            Err(e) => (false, format!("error: {e}")),
        };
        if let Some(limit) = budget {
            if elapsed > limit {
                ok = false;
                summary.push_str(&format!("; over time budget {limit:?}"));
            }
        }
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {}: {name}: {summary} [{:.2}s]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn counting() -> Result<Outcome, hwgroup::HwError> {
    let expected = [5u64, 22, 92, 376, 1520, 6112, 24512, 98176, 392960, 1572352];
    let bad: Vec<u32> = (1..=10)
        .filter(|&s| {
            let e = expected[s as usize - 1];
            irrep_count_formula(s) != e || class_count_formula(s) != e
        })
        .collect();
    Ok(outcome(bad.is_empty(), format!("s=1..10 match the reference values; mismatches at {bad:?}")))
}

fn enumeration() -> Result<Outcome, hwgroup::HwError> {
    let mut bad = Vec::new();
    for s in 1..=6 {
        if enumerate_irreps(s)?.len() as u64 != irrep_count_formula(s) {
            bad.push(format!("labels s={s}"));
        }
    }
    for s in 1..=5 {
        if GroupParams::new(s)?.enumerate_classes()?.len() as u64 != class_count_formula(s) {
            bad.push(format!("classes s={s}"));
        }
    }
    Ok(outcome(bad.is_empty(), format!("labels s<=6, classes s<=5; mismatches {bad:?}")))
}

fn completeness() -> Result<Outcome, hwgroup::HwError> {
    let mut bad = Vec::new();
    for s in 1..=10 {
        let sum: u128 = enumerate_irreps(s)?.iter().map(|l| (l.dim() as u128).pow(2)).sum();
        if sum != 1u128 << (3 * s) {
            bad.push(s);
        }
    }
    Ok(outcome(bad.is_empty(), format!("sum dim^2 = 2^(3s) for s<=10; failures at {bad:?}")))
}

fn orbits() -> Result<Outcome, hwgroup::HwError> {
    let mut bad = Vec::new();
    for s in 1..=6 {
        if enumerate_distinct_orbits(s)?.len() as u64 != distinct_orbit_count_formula(s) {
            bad.push(format!("count s={s}"));
        }
    }
    let listing: Vec<(u32, Vec<u32>)> = enumerate_distinct_orbits(2)?
        .into_iter()
        .filter(|o| o.p != 0)
        .map(|o| (o.p, o.members))
        .collect();
    let expected = vec![
        (1, vec![0, 1, 2, 3]),
        (3, vec![0, 1, 2, 3]),
        (2, vec![0, 2]),
        (2, vec![1, 3]),
    ];
    if listing != expected {
        bad.push(format!("HW_4 listing {listing:?}"));
    }
    Ok(outcome(bad.is_empty(), format!("2^(s-1)(s+2) for s<=6 and HW_4 listing; failures {bad:?}")))
}

fn homomorphism() -> Result<Outcome, hwgroup::HwError> {
    let mut checked = 0u64;
    let mut failures = 0u64;
    for s in 1..=2 {
        let params = GroupParams::new(s)?;
        let elements: Vec<GroupElement> = params.elements().collect();
        for label in enumerate_irreps(s)? {
            for g in &elements {
                let a = irrep_matrix(&label, g)?;
                for h in &elements {
                    checked += 1;
                    if a.multiply(&irrep_matrix(&label, h)?)? != irrep_matrix(&label, &params.multiply(g, h)?)? {
                        failures += 1;
                    }
                }
            }
        }
    }
    for s in 3..=4 {
        let params = GroupParams::new(s)?;
        let labels = enumerate_irreps(s)?;
        let per: Vec<Result<(u64, u64), hwgroup::HwError>> = labels
            .par_iter()
            .enumerate()
            .map(|(i, label)| {
                let mut rng = irrep_rng(SEED, i);
                let mut bad = 0;
                for _ in 0..10_000 {
                    let (g, h) = (random_element(&mut rng, s), random_element(&mut rng, s));
                    let lhs = irrep_matrix(label, &g)?.multiply(&irrep_matrix(label, &h)?)?;
                    if lhs != irrep_matrix(label, &params.multiply(&g, &h)?)? {
                        bad += 1;
                    }
                }
                Ok((10_000, bad))
            })
            .collect();
        for r in per {
            let (c, b) = r?;
            checked += c;
            failures += b;
        }
    }
    Ok(outcome(
        failures == 0,
        format!("{checked} products (all pairs s<=2, 10^4 seeded pairs per irrep s=3,4), {failures} failures"),
    ))
}

fn irreducibility() -> Result<Outcome, hwgroup::HwError> {
    let mut count = 0;
    let mut bad = Vec::new();
    for s in 1..=4 {
        for label in enumerate_irreps(s)? {
            count += 1;
            let n = character_norm_squared(&label)?;
            if n != 1i64 << (3 * s) {
                bad.push(format!("{label}@s={s}: {n}"));
            }
        }
    }
    Ok(outcome(bad.is_empty(), format!("{count} irreps with norm 2^(3s), s<=4; failures {bad:?}")))
}

fn orthogonality() -> Result<Outcome, hwgroup::HwError> {
    let mut pairs = 0;
    let mut bad = 0;
    for s in 1..=3 {
        let table = character_table(s)?;
        let n = table.irreps.len();
        pairs += n * (n + 1) / 2;
        bad += table.orthogonality_violations()?.len();
    }
    Ok(outcome(bad == 0, format!("{pairs} row pairs for s<=3, {bad} violations")))
}

fn fusion_oracle() -> Result<Outcome, hwgroup::HwError> {
    let mut triples = 0u64;
    let mut bad = Vec::new();
    for (s, summation) in [(1, Summation::Naive), (2, Summation::Naive), (3, Summation::SupportRestricted)] {
        let labels = enumerate_irreps(s)?;
        let per: Vec<Result<Vec<String>, hwgroup::HwError>> = labels
            .par_iter()
            .map(|a| {
                let mut out = Vec::new();
                for b in &labels {
                    for c in &labels {
                        let brute = fusion_coeff_bruteforce_with(a, b, c, summation)?;
                        let closed = fusion_coeff_closed(a, b, c)?;
                        if brute != closed {
                            out.push(format!("s={s} N({a},{b};{c}) {brute} vs {closed}"));
                        }
                    }
                }
                Ok(out)
            })
            .collect();
        for r in per {
            bad.extend(r?);
        }
        triples += (labels.len() as u64).pow(3);
    }
    Ok(outcome(
        bad.is_empty(),
        format!("{triples} triples (naive sum s<=2, support-restricted s=3), {} mismatches", bad.len()),
    ))
}

fn golden_tables() -> Result<Outcome, hwgroup::HwError> {
    let hw2 = golden::regenerate_fusion(1, golden::FUSION_HW2)?;
    let hw4 = golden::regenerate_fusion(2, golden::FUSION_HW4)?;
    let mut notes = Vec::new();
    for (name, cmp) in [("HW_2", &hw2), ("HW_4", &hw4)] {
        match cmp.first_mismatch() {
            None => notes.push(format!("{name} {} rules byte-exact", cmp.rules)),
            Some((line, want, got)) => notes.push(format!("{name} line {line}: want {want:?} got {got:?}")),
        }
    }
    Ok(outcome(hw2.matches() && hw4.matches(), notes.join(", ")))
}

fn dimension_conservation() -> Result<Outcome, hwgroup::HwError> {
    let mut rows = 0u64;
    let mut bad = Vec::new();
    for s in 1..=4 {
        let labels = enumerate_irreps(s)?;
        let per: Vec<Result<Vec<String>, hwgroup::HwError>> = labels
            .par_iter()
            .map(|a| {
                let mut out = Vec::new();
                for b in &labels {
                    let row = fuse_row(a, b)?;
                    if !row.conserves_dimension() {
                        out.push(row.render());
                    }
                }
                Ok(out)
            })
            .collect();
        for r in per {
            bad.extend(r?);
        }
        rows += (labels.len() as u64).pow(2);
    }
    Ok(outcome(bad.is_empty(), format!("{rows} ordered fuse rows for s<=4, {} violations", bad.len())))
}

fn dense_eq(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    let d = a.dim();
    d == b.dim() && (0..d).all(|i| (0..d).all(|j| a.get(i, j) == b.get(i, j)))
}

fn scalar_matrix(d: usize, c: CycInt) -> Result<ExactMatrix, hwgroup::HwError> {
    let mut m = ExactMatrix::zero(d, c.modulus())?;
    for i in 0..d {
        *m.get_mut(i, i) = c.clone();
    }
    Ok(m)
}

/// Relations checked on dense exact matrices built from `irrep_matrix`.
fn identities_for(s: u32, idx: usize, label: &IrrepLabel) -> Result<Vec<String>, hwgroup::HwError> {
    let big = 1u32 << s;
    let d = label.dim();
    let dense = |g: GroupElement| irrep_matrix(label, &g).and_then(|m| m.to_dense());
    let (z, x, y) = (dense(GroupElement::z())?, dense(GroupElement::x())?, dense(GroupElement::y())?);
    let mut bad = Vec::new();

    if !dense_eq(&y.mul(&x)?, &z.mul(&x)?.mul(&y)?) {
        bad.push(format!("y x = z x y fails for {label}"));
    }

    let pow = |m: &ExactMatrix, k: u32| -> Result<ExactMatrix, hwgroup::HwError> {
        let mut acc = scalar_matrix(d, CycInt::from_int(big, 1)?)?;
        for _ in 0..k {
            acc = acc.mul(m)?;
        }
        Ok(acc)
    };
    let twist_modulus = 1u32 << label.t();
    let period = [
        (&x, d as u32, CycInt::root(twist_modulus, label.q() as i64)?, "x^d = w_t^q"),
        (&y, d as u32, CycInt::root(twist_modulus, label.r() as i64)?, "y^d = w_t^r"),
        (&z, big, CycInt::from_int(big, 1)?, "z^N = 1"),
        (&x, big, CycInt::from_int(big, 1)?, "x^N = 1"),
        (&y, big, CycInt::from_int(big, 1)?, "y^N = 1"),
    ];
    for (m, k, c, name) in period {
        if !dense_eq(&pow(m, k)?, &scalar_matrix(d, c)?) {
            bad.push(format!("{name} fails for {label}"));
        }
    }

    if let Some(u) = label.u() {
        let params = GroupParams::new(s)?;
        let mut rng = irrep_rng(SEED ^ 0xc0, idx);
        for _ in 0..1_000 {
            let (g, h) = (random_element(&mut rng, s), random_element(&mut rng, s));
            let (a, b) = (dense(g)?, dense(h)?);
            let lhs = a.mul(&b)?.sub(&b.mul(&a)?)?;
            let coef = CycInt::root(d as u32, u as i64 * h.n as i64 * g.l as i64)?
                .sub(&CycInt::root(d as u32, u as i64 * g.n as i64 * h.l as i64)?)?;
            let sum = params.reduce(g.m as i64 + h.m as i64, g.n as i64 + h.n as i64, g.l as i64 + h.l as i64);
            let rhs = dense(sum)?.scale(&coef)?;
            if !dense_eq(&lhs, &rhs) {
                bad.push(format!("commutator fails for {label} at {g}, {h}"));
                break;
            }
        }
    }
    Ok(bad)
}

fn identities() -> Result<Outcome, hwgroup::HwError> {
    let mut irreps = 0;
    let mut bad = Vec::new();
    for s in 1..=3 {
        let labels = enumerate_irreps(s)?;
        irreps += labels.len();
        let per: Vec<Result<Vec<String>, hwgroup::HwError>> = labels
            .par_iter()
            .enumerate()
            .map(|(i, l)| identities_for(s, i, l))
            .collect();
        for r in per {
            bad.extend(r?);
        }
    }
    Ok(outcome(
        bad.is_empty(),
        format!(
            "basic relation, periodicity, commutator (10^3 seeded pairs per non-abelian irrep) on {irreps} irreps, s<=3; failures {:?}",
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    ))
}

fn fourier() -> Result<Outcome, hwgroup::HwError> {
    let mut structural_worst = 0.0f64;
    let mut structural_bad = 0;
    let mut stated_worst = 0.0f64;
    let mut stated_bad = Vec::new();
    let mut corrected_worst = 0.0f64;
    let mut total = 0;
    for s in 1..=5 {
        let labels: Vec<IrrepLabel> = enumerate_irreps(s)?.into_iter().filter(|l| l.p() != 0).collect();
        let reports = labels
            .par_iter()
            .map(verify_fourier_relations)
            .collect::<Result<Vec<_>, _>>()?;
        for r in reports {
            total += 1;
            let structural = [r.unitarity_fd, r.fourth_power, r.eigen_residual, r.eigenvalue_equation]
                .into_iter()
                .fold(0.0, f64::max);
            structural_worst = structural_worst.max(structural);
            if structural >= FOURIER_TOL || r.diagonalizing.is_empty() {
                structural_bad += 1;
            }
            let stated = r.conjugation_to_x_inverse.unwrap_or(f64::INFINITY);
            stated_worst = stated_worst.max(stated);
            if stated >= FOURIER_TOL {
                stated_bad.push(format!("{}@s={s}", r.label));
            }
            corrected_worst = corrected_worst.max(r.conjugation_to_x.unwrap_or(f64::INFINITY));
        }
    }
    let ok = structural_bad == 0 && stated_bad.is_empty();
    Ok(outcome(
        ok,
        format!(
            "{total} irreps s<=5: unitarity/F^4/eigen max {structural_worst:.1e} ({structural_bad} bad); \
             F y^u F^-1 = w^(ru-q) x^-1 under the diagonalizing orientation max {stated_worst:.1e} \
             ({} of {total} exceed 1e-9, first {:?}); \
             F^-1 y^u F = w^(ru-q) x holds with max {corrected_worst:.1e}",
            stated_bad.len(),
            stated_bad.first()
        ),
    ))
}
