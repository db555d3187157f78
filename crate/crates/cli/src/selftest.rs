//! Fixtures and small brute-force oracles runnable from the binary. The
//! integration tests hold the heavier versions.

use mtcalc_core::charclass::{count_independent_nu, nu_square_check, reproduce_table};
use mtcalc_core::classifying::{j_restriction, pin_structures, u_selfmap, Coefficient, Family, ShiftSign};
use mtcalc_core::loopspace::{q0s0_series, q_homology_series, HomologyInput};
use mtcalc_core::poly::elementary_symmetric_of;
use mtcalc_core::splitting::{odd_p_consistency, s0_split_verdict, splitting_verdict, S0Family, SplitPair, Verdict};
use mtcalc_core::thom::{mt_direct_sum_check, verify_ses_dimensions};
use mtcalc_core::{Poly, PolyRing, RingMap};
use serde_json::{json, Value};

use crate::{CliError, CliResult, Report};

/// The one sequence that is not short exact on the nose: MTSU(1) against
/// Σ^{-2}MTSU(0), first visible in degree -1.
const KNOWN_RED: &str = "ses SU n=1";

struct Outcome {
    name: String,
    passed: bool,
    detail: String,
}

fn outcome(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { name: name.into(), passed, detail: detail.into() }
}

fn table_check() -> CliResult<Outcome> {
    let rows = reproduce_table()?;
    let derived = [(7u64, "μ_{1,3}+μ_{5,1}"), (8, "μ_{2,3}+μ_{2,1}^2")];
    let mut ok = true;
    for row in &rows {
        match derived.iter().find(|(d, _)| *d == row.degree) {
            Some((_, mu)) => ok &= row.mu == [*mu] && row.warning.is_some(),
            None => ok &= row.matches_printed,
        }
    }
    Ok(outcome("table m=2", ok, format!("{} rows", rows.len())))
}

fn count_check() -> CliResult<Outcome> {
    let counts = (2..=9).map(|d| count_independent_nu(2, d)).collect::<mtcalc_core::Result<Vec<_>>>()?;
    let ok = counts == [1, 1, 0, 1, 1, 1, 1, 2];
    Ok(outcome("independent ν counts m=2", ok, format!("{counts:?}")))
}

/// `w_2` of the `j`-image against σ_2 of the expanded roots.
fn w2_check(n: u32) -> CliResult<Outcome> {
    let j = j_restriction(n)?;
    let vars = 2 * n as usize;
    let ring = PolyRing::uniform(2, "t", vars, 1)?;
    let ts: Vec<Poly> = (0..vars).map(|i| Poly::var(&ring, i)).collect();
    let mut t = Poly::zero(&ring);
    for x in &ts {
        t = t.add(x)?;
    }
    let mut roots = ts.iter().map(|x| x.add(&t)).collect::<Result<Vec<_>, _>>()?;
    roots.push(t);
    let direct = elementary_symmetric_of(&ring, &roots, 2)?;
    let sigmas = elementary_symmetric_of(&ring, &ts, vars)?;
    let to_t = RingMap::new(j.target.ring(), &ring, sigmas[1..].to_vec())?;
    let image = to_t.apply(j.image_of("w_2")?)?;
    Ok(outcome(format!("w_2 pullback n={n}"), image == direct[2], j.image_of("w_2")?.to_string()))
}

fn series_checks(out: &mut Vec<Outcome>) -> CliResult<()> {
    let mut grid: Vec<(Family, u32, Coefficient)> = Vec::new();
    for c in [Coefficient::Q, Coefficient::F2] {
        grid.extend((1..=5).map(|n| (Family::U, n, c)));
        grid.extend((1..=4).map(|n| (Family::Sp, n, c)));
        grid.extend((1..=5).map(|n| (Family::SU, n, c)));
    }
    grid.extend((1..=6).map(|n| (Family::O, n, Coefficient::F2)));
    for (f, n, c) in grid {
        let ses = verify_ses_dimensions(f, n, c, 40)?;
        let sum = mt_direct_sum_check(f, n, c, 40)?;
        let detail = match ses.first_violation() {
            Some(d) => format!("first violation at degree {d}"),
            None => "zero violations".into(),
        };
        let label = if f == Family::SU && n == 1 { KNOWN_RED.to_string() } else { format!("ses {f} n={n}") };
        out.push(outcome(format!("{label} {c}"), ses.passed(), detail));
        out.push(outcome(format!("direct sum {f} n={n} {c}"), sum.passed(), ""));
    }
    Ok(())
}

fn loopspace_checks(out: &mut Vec<Outcome>) -> CliResult<()> {
    let s1 = q_homology_series(&HomologyInput::from_degrees(&[1]), 5)?.to_i64_vec(0, 5);
    out.push(outcome("H_*(QS^1) degrees 0-5", s1 == [1, 1, 1, 2, 3, 4], format!("{s1:?}")));
    let s0 = q0s0_series(3)?.to_i64_vec(0, 3);
    out.push(outcome("H_*(Q_0S^0) degrees 0-3", s0 == [1, 1, 2, 4], format!("{s0:?}")));
    Ok(())
}

/// The printed conditions of the splitting theorems, independent of the
/// Euler-characteristic catalogue.
pub(crate) fn expected_pair(pair: SplitPair, n: u32, p: u64) -> bool {
    match pair {
        SplitPair::O2nInSO2n1 | SplitPair::PinPlus4nInSpin4n1 | SplitPair::PinMinus4n2InSpin4n3 => true,
        SplitPair::SO2nInSO2n1 | SplitPair::O2nInO2n1 => p != 2,
        SplitPair::UnInSUn1 => !(n as u64 + 1).is_multiple_of(p),
    }
}

pub(crate) fn expected_s0(family: S0Family, n: u32, p: u64) -> bool {
    match family {
        S0Family::O2n | S0Family::PinPlus4n | S0Family::PinMinus4n2 => true,
        S0Family::SO2n => p != 2,
        S0Family::U | S0Family::Sp => !(n as u64 + 1).is_multiple_of(p),
    }
}

fn splitting_checks(out: &mut Vec<Outcome>) -> CliResult<()> {
    let mut bad = Vec::new();
    let mut total = 0;
    for n in 1..=10 {
        for p in [2u64, 3, 5, 7] {
            for pair in SplitPair::ALL {
                total += 1;
                let got = splitting_verdict(pair, n, p)?.verdict == Verdict::Splits;
                if got != expected_pair(pair, n, p) {
                    bad.push(format!("{pair} n={n} p={p}"));
                }
            }
            for family in S0Family::ALL {
                total += 1;
                let got = s0_split_verdict(family, n, p)?.verdict == Verdict::Splits;
                if got != expected_s0(family, n, p) {
                    bad.push(format!("S^0 {family:?} n={n} p={p}"));
                }
            }
        }
    }
    out.push(outcome("splitting fixtures", bad.is_empty(), format!("{total} cases; mismatches {bad:?}")));
    let mut bad = Vec::new();
    for n in 1..=5 {
        for p in [3u64, 5] {
            if !odd_p_consistency(n, p, 40)?.passed() {
                bad.push(format!("n={n} p={p}"));
            }
        }
    }
    out.push(outcome("odd-p consistency", bad.is_empty(), format!("{bad:?}")));
    Ok(())
}

fn small_law_checks(out: &mut Vec<Outcome>) -> CliResult<()> {
    let mut ok = true;
    for k in 1..=100u32 {
        let n = 2 * k;
        let v = pin_structures(n)?;
        ok &= v.pin_plus == (n % 4 == 0) && v.pin_minus == (n % 4 == 2);
    }
    out.push(outcome("Pin verdicts n<=200", ok, ""));
    let mut ok = true;
    for n in 1..=10 {
        for p in [3u64, 5, 7] {
            let r = u_selfmap(n, p, ShiftSign::Plus)?;
            ok &= r.invertible == !(n as u64 + 1).is_multiple_of(p) && r.c1_coefficient == (n as u64 + 1) % p;
        }
    }
    out.push(outcome("U(n) self-map", ok, ""));
    let mut ok = true;
    for m in [2u32, 4] {
        for e in [[1u32, 0, 0, 0], [0, 1, 0, 0], [2, 1, 0, 1], [1, 1, 1, 1]] {
            ok &= nu_square_check(m, &e[..m as usize])?;
        }
    }
    out.push(outcome("ν squaring law", ok, ""));
    Ok(())
}

pub(crate) fn run() -> CliResult<Report> {
    let mut out = vec![table_check()?, count_check()?];
    for n in 1..=6 {
        out.push(w2_check(n)?);
    }
    series_checks(&mut out)?;
    loopspace_checks(&mut out)?;
    splitting_checks(&mut out)?;
    small_law_checks(&mut out)?;

    let mut text = String::new();
    let mut rows = Vec::new();
    let mut unexpected = Vec::new();
    let mut warnings = Vec::new();
    for o in &out {
        let known = o.name.starts_with(KNOWN_RED);
        let status = match (o.passed, known) {
            (true, _) => "PASS",
            (false, true) => "KNOWN-FAIL",
            (false, false) => "FAIL",
        };
        if !o.passed && !known {
            unexpected.push(o.name.clone());
        }
        if !o.passed && known {
            warnings.push(format!(
                "{}: {}; MTSU(1) = S^-2 while BSU(1)_+ and Σ^-2 MTSU(0) add classes in degrees 0 and -1",
                o.name, o.detail
            ));
        }
        text.push_str(&format!("{status:<10} {}  {}\n", o.name, o.detail));
        let row: Value = json!({ "name": o.name, "status": status, "detail": o.detail });
        rows.push(row);
    }
    let mut r = Report::new("selftest", json!({}), json!({ "checks": rows, "unexpected_failures": unexpected }), text);
    r.warnings = warnings;
    if !unexpected.is_empty() {
        r.violation = Some(format!("{} check(s) failed", unexpected.len()));
    }
    Ok(r)
}

impl From<mtcalc_core::PolyError> for CliError {
    fn from(e: mtcalc_core::PolyError) -> Self {
        CliError::Invariant(e.to_string())
    }
}
