//! Acceptance suite: one line per criterion, `PASS`/`FAIL`, with the
//! tolerance and time budget it was judged against.
//!
//! Run with `cargo test -p mtcalc-cli --test acceptance -- --nocapture`.

use std::collections::{BTreeSet, HashMap};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use mtcalc_core::charclass::{count_independent_nu, nu_classes, nu_square_check, NuRewriter};
use mtcalc_core::classifying::{
    detection_map, j_restriction, pin_structures, u_selfmap, Coefficient, Family, ShiftSign,
};
use mtcalc_core::loopspace::{q0s0_series, q_homology_series, HomologyInput};
use mtcalc_core::poly::{elementary_substitution, elementary_symmetric_of, is_symmetric, symmetrize_reduce};
use mtcalc_core::splitting::{odd_p_consistency, s0_split_verdict, splitting_verdict, S0Family, SplitPair, Verdict};
use mtcalc_core::thom::{mt_direct_sum_check, verify_ses_dimensions};
use mtcalc_core::{Poly, PolyRing, RingMap, VariableSpec};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use serde_json::Value;

struct Outcome {
    passed: bool,
    detail: String,
}

struct Criterion {
    id: u32,
    title: &'static str,
    tolerance: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ok(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn mtcalc(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mtcalc"))
        .args(args)
        .env_remove("MTCALC_MAX_DEGREE")
        .output()
        .expect("spawn mtcalc");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

// 1 ----------------------------------------------------------------------

/// The m = 2 table as printed, with the superscript written `^2`; rows 7
/// and 8 carry the derived values instead.
const EXPECTED_TABLE: [(u64, &[&str], bool); 8] = [
    (2, &["μ_{0,1}+μ_{1,0}^2"], false),
    (3, &["μ_{1,1}"], false),
    (4, &[], false),
    (5, &["μ_{1,2}+μ_{3,1}"], false),
    (6, &["μ_{0,3}+μ_{1,1}^2+μ_{4,1}+μ_{3,0}^2"], false),
    (7, &["μ_{1,3}+μ_{5,1}"], true),
    (8, &["μ_{2,3}+μ_{2,1}^2"], true),
    (9, &["μ_{1,4}+μ_{3,3}+μ_{5,2}+μ_{7,1}", "μ_{3,3}"], false),
];

/// Terms of a `+`-joined expression, so that comparison ignores order.
fn canonical(expr: &str) -> BTreeSet<String> {
    expr.replace('²', "^2").split('+').map(|t| t.trim().to_string()).collect()
}

fn table_reproduction() -> Outcome {
    let (code, out) = mtcalc(&["reproduce-table", "--json"]);
    if code != 0 {
        return ok(false, format!("exit {code}"));
    }
    let v: Value = serde_json::from_str(&out).expect("json");
    let rows = v["result"]["rows"].as_array().expect("rows");
    let mut bad = Vec::new();
    for (deg, mu, warn) in EXPECTED_TABLE {
        let Some(row) = rows.iter().find(|r| r["degree"] == deg) else {
            bad.push(format!("missing degree {deg}"));
            continue;
        };
        let got: Vec<BTreeSet<String>> = row["mu"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| canonical(s.as_str().unwrap()))
            .collect();
        let want: Vec<BTreeSet<String>> = mu.iter().map(|s| canonical(s)).collect();
        if got != want {
            bad.push(format!("degree {deg}: {:?}", row["mu"]));
        }
        if row["warning"].is_string() != warn {
            bad.push(format!("degree {deg}: warning presence"));
        }
    }
    let warnings = v["warnings"].as_array().map_or(0, |w| w.len());
    if warnings != 2 {
        bad.push(format!("{warnings} envelope warnings"));
    }
    ok(bad.is_empty(), if bad.is_empty() { "8 rows, 2 flagged".into() } else { bad.join("; ") })
}

// 2 ----------------------------------------------------------------------

fn independence_counts() -> Outcome {
    let counts: Vec<usize> = (2..=9).map(|d| count_independent_nu(2, d).unwrap()).collect();
    ok(counts == [1, 1, 0, 1, 1, 1, 1, 2], format!("{counts:?}"))
}

// 3 ----------------------------------------------------------------------

/// σ_2 of the 2n+1 roots `t + t_i`, `t` with `t = Σ t_i`, expanded directly.
fn w2_pullback() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=6u32 {
        let j = j_restriction(n).unwrap();
        let vars = 2 * n as usize;
        let ring = PolyRing::uniform(2, "t", vars, 1).unwrap();
        let ts: Vec<Poly> = (0..vars).map(|i| Poly::var(&ring, i)).collect();
        let t = ts.iter().fold(Poly::zero(&ring), |a, x| a.add(x).unwrap());
        // σ_2 of the roots by the double sum, not the library's generator
        let mut roots: Vec<Poly> = ts.iter().map(|x| x.add(&t).unwrap()).collect();
        roots.push(t.clone());
        let mut sigma2 = Poly::zero(&ring);
        for a in 0..roots.len() {
            for b in a + 1..roots.len() {
                sigma2 = sigma2.add(&roots[a].mul(&roots[b]).unwrap()).unwrap();
            }
        }
        let sigmas = elementary_symmetric_of(&ring, &ts, vars).unwrap();
        let to_t = RingMap::new(j.target.ring(), &ring, sigmas[1..].to_vec()).unwrap();
        let image = j.image_of("w_2").unwrap();
        let target = j.target.ring();
        let w1 = Poly::var_named(target, "w_1").unwrap();
        let w2 = Poly::var_named(target, "w_2").unwrap();
        let law = w2.add(&w1.pow(2).unwrap().scale(n as i64).unwrap()).unwrap();
        if image != &law || to_t.apply(image).unwrap() != sigma2 {
            bad.push(format!("n={n}: {image}"));
        }
    }
    ok(bad.is_empty(), if bad.is_empty() { "n = 1..6".into() } else { bad.join("; ") })
}

// 4 ----------------------------------------------------------------------

fn ses_grid() -> Vec<(Family, u32, Coefficient)> {
    let mut grid = Vec::new();
    for c in [Coefficient::Q, Coefficient::F2] {
        grid.extend((1..=5).map(|n| (Family::U, n, c)));
        grid.extend((1..=4).map(|n| (Family::Sp, n, c)));
        grid.extend((1..=5).map(|n| (Family::SU, n, c)));
    }
    grid.extend((1..=6).map(|n| (Family::O, n, Coefficient::F2)));
    grid
}

fn ses_identity() -> Outcome {
    let mut failures = Vec::new();
    let grid = ses_grid();
    for &(f, n, c) in &grid {
        let ses = verify_ses_dimensions(f, n, c, 40).unwrap();
        if let Some(d) = ses.first_violation() {
            failures.push(format!("ses {f}({n}) {c} first at degree {d}, all {:?}", ses.violations));
        }
        let sum = mt_direct_sum_check(f, n, c, 40).unwrap();
        if let Some(d) = sum.first_violation() {
            failures.push(format!("direct sum {f}({n}) {c} degree {d}"));
        }
    }
    let detail = if failures.is_empty() {
        format!("{} cases", grid.len())
    } else {
        failures.join("; ")
    };
    ok(failures.is_empty(), detail)
}

/// The documented red: MTSU(1) = S^{-2}, while Σ^{-2}MTSU(0) ∨ BSU(1)_+ has
/// classes in degrees -2, -1 and 0 (MTSU(0) = Σ^∞S^1_+). The extra classes
/// in degrees -1 and 0 must cancel through a connecting map, so the sequence
/// is not short exact there; every other case passes.
const SES_KNOWN_FAILURE: &str =
    "ses SU(1) Q first at degree -1, all [-1, 0]; ses SU(1) F2 first at degree -1, all [-1, 0]";

// 5 ----------------------------------------------------------------------

/// Degrees of the empty word and of every admissible word of positive
/// excess on a class of degree `g`, built left to right.
fn words_brute(g: i64, max_degree: i64) -> Vec<i64> {
    fn tails(prev: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        for i in (prev + 1) / 2..=left {
            cur.push(i);
            tails(i, left - i, cur, out);
            cur.pop();
        }
    }
    let mut degrees = vec![g];
    let budget = max_degree - g;
    for first in 1..=budget {
        let mut all = Vec::new();
        tails(first, (budget - first).min(first - g - 1), &mut Vec::new(), &mut all);
        for tail in all {
            let mut w = vec![first];
            w.extend(tail);
            let admissible = w.iter().all(|&i| i >= 1) && w.windows(2).all(|p| p[0] <= 2 * p[1]);
            let excess = w[0] - w[1..].iter().sum::<i64>() - g;
            if admissible && excess > 0 {
                degrees.push(w.iter().sum::<i64>() + g);
            }
        }
    }
    degrees
}

/// Monomials per degree in commuting generators of the given degrees.
fn count_monomials(gens: &[i64], max_degree: i64) -> Vec<u128> {
    fn count(gens: &[i64], i: usize, left: i64, memo: &mut HashMap<(usize, i64), u128>) -> u128 {
        if left == 0 {
            return 1;
        }
        if i == gens.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(i, left)) {
            return v;
        }
        let mut total = 0;
        let mut used = 0;
        while used <= left {
            total += count(gens, i + 1, left - used, memo);
            used += gens[i];
        }
        memo.insert((i, left), total);
        total
    }
    let gens: Vec<i64> = gens.iter().copied().filter(|&d| d <= max_degree).collect();
    let mut memo = HashMap::new();
    (0..=max_degree).map(|d| count(&gens, 0, d, &mut memo)).collect()
}

fn matches_counts(s: &mtcalc_core::PoincareSeries, counts: &[u128]) -> bool {
    counts.iter().enumerate().all(|(d, &c)| s.coeff(d as i64) == c.into())
}

fn dyer_lashof() -> Outcome {
    let mut bad = Vec::new();
    let s1 = q_homology_series(&HomologyInput::from_degrees(&[1]), 30).unwrap();
    if s1.to_i64_vec(0, 5) != [1, 1, 1, 2, 3, 4] {
        bad.push(format!("QS^1 {:?}", s1.to_i64_vec(0, 5)));
    }
    if !matches_counts(&s1, &count_monomials(&words_brute(1, 30), 30)) {
        bad.push("QS^1 vs enumeration".into());
    }
    let s0 = q0s0_series(30).unwrap();
    if s0.to_i64_vec(0, 3) != [1, 1, 2, 4] {
        bad.push(format!("Q_0S^0 {:?}", s0.to_i64_vec(0, 3)));
    }
    let gens: Vec<i64> = words_brute(0, 30).into_iter().filter(|&d| d > 0).collect();
    if !matches_counts(&s0, &count_monomials(&gens, 30)) {
        bad.push("Q_0S^0 vs enumeration".into());
    }
    let mut runner = runner(50);
    let strategy = (prop::collection::vec(1i64..=5, 0..=4), 5i64..=30);
    let random = runner.run(&strategy, |(degrees, n)| {
        let s = q_homology_series(&HomologyInput::from_degrees(&degrees), n).unwrap();
        let gens: Vec<i64> = degrees.iter().flat_map(|&g| words_brute(g, n)).collect();
        prop_assert!(matches_counts(&s, &count_monomials(&gens, n)), "{degrees:?} to {n}");
        Ok(())
    });
    if let Err(e) = random {
        bad.push(format!("random sets: {e}"));
    }
    ok(bad.is_empty(), if bad.is_empty() { "both to degree 30; 50 random sets".into() } else { bad.join("; ") })
}

// 6 ----------------------------------------------------------------------

/// The theorems' hypotheses, written out rather than derived from χ.
fn theorem_condition(pair: SplitPair, n: u32, p: u64) -> bool {
    match pair {
        SplitPair::O2nInSO2n1 | SplitPair::PinPlus4nInSpin4n1 | SplitPair::PinMinus4n2InSpin4n3 => true,
        SplitPair::SO2nInSO2n1 | SplitPair::O2nInO2n1 => p % 2 == 1,
        SplitPair::UnInSUn1 => !(n as u64 + 1).is_multiple_of(p),
    }
}

fn s0_condition(family: S0Family, n: u32, p: u64) -> bool {
    match family {
        S0Family::O2n | S0Family::PinPlus4n | S0Family::PinMinus4n2 => true,
        S0Family::SO2n => p % 2 == 1,
        S0Family::U | S0Family::Sp => !(n as u64 + 1).is_multiple_of(p),
    }
}

fn splitting_fixtures() -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    for n in 1..=10 {
        for p in [2u64, 3, 5, 7] {
            for pair in SplitPair::ALL {
                cases += 1;
                let v = splitting_verdict(pair, n, p).unwrap();
                if (v.verdict == Verdict::Splits) != theorem_condition(pair, n, p) {
                    bad.push(format!("{pair} n={n} p={p}"));
                }
            }
            for family in S0Family::ALL {
                cases += 1;
                let v = s0_split_verdict(family, n, p).unwrap();
                if (v.verdict == Verdict::Splits) != s0_condition(family, n, p) {
                    bad.push(format!("S^0 {family:?} n={n} p={p}"));
                }
            }
        }
    }
    let (code, out) = mtcalc(&["split", "--pair", "O2n-SO2n1", "--n", "1", "--prime", "2", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap_or(Value::Null);
    if code != 0 || v["result"]["verdict"] != "splits" {
        bad.push("cli O2n-SO2n1 n=1 p=2".into());
    }
    ok(bad.is_empty(), if bad.is_empty() { format!("{cases} cases + cli") } else { bad.join("; ") })
}

// 7 ----------------------------------------------------------------------

fn pin_verdicts() -> Outcome {
    let bad: Vec<u32> = (1..=100u32)
        .map(|k| 2 * k)
        .filter(|&n| {
            let v = pin_structures(n).unwrap();
            v.pin_plus != (n % 4 == 0) || v.pin_minus != (n % 4 == 2)
        })
        .collect();
    ok(bad.is_empty(), format!("even n ≤ 200; mismatches {bad:?}"))
}

// 8 ----------------------------------------------------------------------

fn u_selfmap_grid() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=10u32 {
        for p in [3u64, 5, 7] {
            let r = u_selfmap(n, p, ShiftSign::Plus).unwrap();
            let unit = (n as u64 + 1) % p;
            if r.invertible != (unit != 0) || r.c1_coefficient != unit {
                bad.push(format!("n={n} p={p}"));
            }
        }
    }
    ok(bad.is_empty(), format!("30 cases; mismatches {bad:?}"))
}

// 9 ----------------------------------------------------------------------

fn odd_p() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=5 {
        for p in [3u64, 5] {
            if !odd_p_consistency(n, p, 40).unwrap().passed() {
                bad.push(format!("n={n} p={p}"));
            }
        }
    }
    ok(bad.is_empty(), format!("10 cases to degree 40; failures {bad:?}"))
}

// 10 ---------------------------------------------------------------------

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn poly_in(ring: Arc<PolyRing>, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let n = ring.nvars();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -4i64..5), 0..=max_terms)
        .prop_map(move |terms| Poly::from_terms(&ring, &terms).unwrap())
}

/// F2 rank by elimination on bitmask rows over the union of expanded terms.
fn rank_f2(rows: &[BTreeSet<Vec<u32>>]) -> usize {
    let columns: Vec<&Vec<u32>> = rows.iter().flatten().collect::<BTreeSet<_>>().into_iter().collect();
    assert!(columns.len() <= 128);
    let mut masks: Vec<u128> = rows
        .iter()
        .map(|r| columns.iter().enumerate().filter(|(_, c)| r.contains(**c)).fold(0, |m, (i, _)| m | 1 << i))
        .collect();
    let mut rank = 0;
    for bit in 0..columns.len() {
        if let Some(p) = (rank..masks.len()).find(|&i| masks[i] >> bit & 1 == 1) {
            masks.swap(rank, p);
            let pivot = masks[rank];
            for (i, m) in masks.iter_mut().enumerate() {
                if i != rank && *m >> bit & 1 == 1 {
                    *m ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

fn property_suites() -> Outcome {
    let mut bad = Vec::new();

    let round_trip = runner(100).run(
        &(
            prop_oneof![Just((2u64, 3usize)), Just((3, 3)), Just((5, 2)), Just((0, 3)), Just((7, 4))],
            prop::collection::vec((prop::collection::vec(0u32..=2, 4), -4i64..5), 0..=5),
        ),
        |((modulus, n), seed)| {
            let specs = (1..=n).map(|i| VariableSpec::new(format!("e_{i}"), i as u32)).collect();
            let e_ring = PolyRing::new(modulus, specs).unwrap();
            let t_ring = PolyRing::uniform(modulus, "t", n, 1).unwrap();
            let terms: Vec<(Vec<u32>, i64)> = seed.into_iter().map(|(e, c)| (e[..n].to_vec(), c)).collect();
            let f = Poly::from_terms(&e_ring, &terms).unwrap();
            let sym = elementary_substitution(&e_ring, &t_ring).unwrap().apply(&f).unwrap();
            prop_assert!(is_symmetric(&sym));
            prop_assert_eq!(symmetrize_reduce(&sym, &e_ring).unwrap(), f);
            Ok(())
        },
    );
    if let Err(e) = round_trip {
        bad.push(format!("round trip: {e}"));
    }

    let j = j_restriction(2).unwrap();
    let det = detection_map(Family::U, 3, Coefficient::Fp(5)).unwrap();
    let multiplicative = runner(100).run(
        &(
            any::<bool>(),
            poly_in(j.source.ring().clone(), 3, 4),
            poly_in(j.source.ring().clone(), 3, 4),
            poly_in(det.source.ring().clone(), 2, 4),
            poly_in(det.source.ring().clone(), 2, 4),
        ),
        |(use_j, a, b, c, d)| {
            let (map, p, q) = if use_j { (&j, a, b) } else { (&det, c, d) };
            let lhs = map.apply(&p.mul(&q).unwrap()).unwrap();
            let rhs = map.apply(&p).unwrap().mul(&map.apply(&q).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        },
    );
    if let Err(e) = multiplicative {
        bad.push(format!("multiplicativity: {e}"));
    }

    let squaring = runner(50).run(
        &(prop_oneof![Just(2u32), Just(4)], prop::collection::vec(0u32..=3, 4)),
        |(m, raw)| {
            let mut e = raw[..m as usize].to_vec();
            if e.iter().all(|&x| x == 0) {
                e[0] = 1;
            }
            prop_assert!(nu_square_check(m, &e).unwrap(), "m={} {:?}", m, e);
            Ok(())
        },
    );
    if let Err(e) = squaring {
        bad.push(format!("squaring: {e}"));
    }

    let rw = NuRewriter::new(2).unwrap();
    for d in 1..=12 {
        let rows: Vec<BTreeSet<Vec<u32>>> = nu_classes(2, d)
            .unwrap()
            .iter()
            .filter(|n| n.has_odd_entry())
            .map(|n| rw.rewrite(n).unwrap().expanded_terms().cloned().collect())
            .collect();
        if rank_f2(&rows) != rows.len() {
            bad.push(format!("rank deficit in degree {d}"));
        }
    }
    ok(bad.is_empty(), if bad.is_empty() { "100 + 100 + 50 cases; rank full in degrees ≤ 12".into() } else { bad.join("; ") })
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, title: "m=2 table reproduction", tolerance: "exact string match after canonical ordering", budget: Duration::from_secs(1), run: table_reproduction },
    Criterion { id: 2, title: "independent ν counts, d = 2..9", tolerance: "exact", budget: Duration::from_secs(1), run: independence_counts },
    Criterion { id: 3, title: "w_2 pullback law, n = 1..6", tolerance: "exact", budget: Duration::from_secs(10), run: w2_pullback },
    Criterion { id: 4, title: "SES dimension identity and direct sum", tolerance: "exact, degree ≤ 40", budget: Duration::from_secs(10), run: ses_identity },
    Criterion { id: 5, title: "Dyer–Lashof series vs enumeration", tolerance: "exact, degree ≤ 30", budget: Duration::from_secs(30), run: dyer_lashof },
    Criterion { id: 6, title: "splitting fixtures, n ≤ 10, p ∈ {2,3,5,7}", tolerance: "exact", budget: Duration::from_secs(10), run: splitting_fixtures },
    Criterion { id: 7, title: "Pin^± verdicts, even n ≤ 200", tolerance: "exact", budget: Duration::from_secs(1), run: pin_verdicts },
    Criterion { id: 8, title: "U(n) self-map, n ≤ 10, p ∈ {3,5,7}", tolerance: "exact", budget: Duration::from_secs(10), run: u_selfmap_grid },
    Criterion { id: 9, title: "odd-p consistency, n ≤ 5, p ∈ {3,5}", tolerance: "exact, N = 40", budget: Duration::from_secs(10), run: odd_p },
    Criterion { id: 10, title: "property suites", tolerance: "exact", budget: Duration::from_secs(60), run: property_suites },
];

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= c.budget;
        let passed = outcome.passed && in_budget;
        println!(
            "{} [{:>2}] {} | tolerance: {} | {:.3}s of {}s | {}",
            if passed { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            c.tolerance,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            outcome.detail
        );
        if !passed {
            failed.push((c.id, outcome.detail, in_budget));
        }
    }

    // Criterion 4 cannot hold as stated for SU(1); anything else is a regression.
    let ids: Vec<u32> = failed.iter().map(|f| f.0).collect();
    assert_eq!(ids, [4], "unexpected acceptance failures: {failed:?}");
    let (_, detail, in_budget) = &failed[0];
    assert!(in_budget, "criterion 4 over budget");
    assert_eq!(detail, SES_KNOWN_FAILURE);
    println!("known failure [ 4]: SU(1) sequence is not short exact in degrees -1 and 0; every other case passes");
}
