use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mtcalc_core::charclass::{
    count_independent_nu, independence_report, nu_classes, nu_to_mu, reproduce_table,
    xi_subalgebra_series, NuClass, NuRewriter,
};
use mtcalc_core::classifying::{
    cohomology_presentation, detection_map, j_restriction, pin_structures, standard_restriction,
    su_restriction, u_selfmap, Coefficient, Family, PresentedMap, ShiftSign, RP_W2_WARNING,
};
use mtcalc_core::loopspace::{q0_plus_series, q0s0_series, q_homology_series, HomologyInput};
use mtcalc_core::splitting::{
    nonexact_explore, odd_p_consistency, s0_split_verdict, splitting_verdict, S0Family, SplitPair,
    SplittingVerdict, Verdict,
};
use mtcalc_core::thom::{mt_direct_sum_check, mt_poincare_series, verify_ses_dimensions, SeriesCheck};
use mtcalc_core::PoincareSeries;
use serde_json::{json, Map, Value};

mod selftest;

#[derive(Parser, Debug)]
#[command(name = "mtcalc", version, about = "Exact graded invariants of Madsen–Tillmann spectra")]
struct Cli {
    /// Emit the JSON report envelope instead of a human-readable table.
    #[arg(long, global = true)]
    json: bool,

    /// Truncation degree for every series.
    #[arg(
        long = "max-degree",
        visible_alias = "series",
        global = true,
        env = "MTCALC_MAX_DEGREE",
        default_value_t = mtcalc_core::DEFAULT_MAX_DEGREE
    )]
    max_degree: i64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Presentation and Poincaré series of H^*(BG(n); k).
    Ring(RingArgs),
    /// A restriction map between classifying-space cohomologies.
    Restrict(RestrictArgs),
    /// The detection map into the cohomology of a maximal torus (or 2-torus).
    Detect(RingArgs),
    /// Stiefel–Whitney classes of T RP^n and Pin^± verdicts.
    Pin {
        #[arg(long)]
        n: u32,
    },
    /// Poincaré series of MTG(n) and its cofibre-sequence checks.
    Thom(ThomArgs),
    /// Mod-2 homology series of QY from the homology of Y.
    Qhomology(QhomologyArgs),
    /// Splitting verdicts from Euler characteristics.
    Split(SplitArgs),
    /// ν-classes rewritten in μ-classes.
    Nu(NuArgs),
    /// Poincaré series of the ξ-subalgebra at an odd prime.
    Xi {
        #[arg(long)]
        prime: u64,
    },
    /// Recompute the m = 2 ν/μ table, flagging rows that differ from print.
    ReproduceTable,
    /// Run the built-in oracles and fixtures.
    Selftest,
}

#[derive(Args, Debug)]
struct RingArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "f2")]
    coeff: Coefficient,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MapKind {
    Standard,
    J,
    Su,
    USelfmap,
    Detect,
}

#[derive(Args, Debug)]
struct RestrictArgs {
    #[arg(long, value_enum)]
    map: MapKind,
    #[arg(long)]
    n: u32,
    /// Coefficient prime; 0 selects Q where the map allows it.
    #[arg(long)]
    prime: Option<u64>,
    /// Group family for `standard` and `detect`.
    #[arg(long)]
    family: Option<Family>,
    /// Use x_i ↦ x_i - c_1 (A ↦ det(A)^{-1}A) instead of x_i ↦ x_i + c_1 for `u-selfmap`.
    #[arg(long)]
    minus: bool,
}

#[derive(Args, Debug)]
struct ThomArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "f2")]
    coeff: Coefficient,
    #[arg(long)]
    check_ses: bool,
    #[arg(long)]
    check_direct_sum: bool,
}

#[derive(Args, Debug)]
struct QhomologyArgs {
    /// Degrees of a basis of the reduced homology of Y, e.g. 1,2,2.
    #[arg(long, value_delimiter = ',', conflicts_with = "s0", required_unless_present = "s0")]
    generators: Vec<i64>,
    /// Use Y = S^0, i.e. the base component Q_0S^0.
    #[arg(long)]
    s0: bool,
    /// Homology of Q_0(Y_+) rather than QY.
    #[arg(long, conflicts_with = "s0")]
    plus: bool,
}

#[derive(Args, Debug)]
struct SplitArgs {
    #[arg(long, group = "mode")]
    pair: Option<SplitPair>,
    /// Splitting of S^0 off MTK, with K given by --family.
    #[arg(long, group = "mode", requires = "family")]
    s0: bool,
    #[arg(long, group = "mode")]
    odd_p_consistency: bool,
    #[arg(long, group = "mode", requires = "m")]
    nonexact: bool,
    #[arg(long)]
    family: Option<S0Family>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Args, Debug)]
struct NuArgs {
    #[arg(long)]
    m: u32,
    /// List every ν-class of this degree.
    #[arg(long, group = "what")]
    degree: Option<u64>,
    /// Count independent ν-classes in each degree up to --max-degree.
    #[arg(long, group = "what")]
    count: bool,
    /// A single class by exponent vector, e.g. 1,0.
    #[arg(long, group = "what", value_delimiter = ',')]
    exponents: Option<Vec<u32>>,
}

/// Failure modes mapped onto exit codes.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl From<mtcalc_core::Error> for CliError {
    fn from(e: mtcalc_core::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a command produces before formatting.
struct Report {
    command: &'static str,
    parameters: Map<String, Value>,
    result: Value,
    citations: Vec<&'static str>,
    warnings: Vec<String>,
    text: String,
    /// Set when a requested check found a violation; exit code 3.
    violation: Option<String>,
}

impl Report {
    fn new(command: &'static str, parameters: Value, result: Value, text: String) -> Self {
        let parameters = match parameters {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        Self {
            command,
            parameters,
            result,
            citations: Vec::new(),
            warnings: Vec::new(),
            text,
            violation: None,
        }
    }

    fn cite(mut self, c: &'static str) -> Self {
        self.citations.push(c);
        self
    }

    fn envelope(&self) -> Value {
        // serde_json::Map is ordered by key, so the envelope is sorted
        json!({
            "citations": self.citations,
            "command": self.command,
            "parameters": self.parameters,
            "result": self.result,
            "warnings": self.warnings,
        })
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Invariant(format!("serialization: {e}")))
}

fn series_line(s: &PoincareSeries) -> String {
    let hi = s.trunc_degree();
    let coeffs: Vec<String> = (s.min_degree()..=hi).map(|d| s.coeff(d).to_string()).collect();
    format!("degrees {}..{}: {}", s.min_degree(), hi, coeffs.join(","))
}

fn check_max_degree(n: i64) -> CliResult<i64> {
    if n < 0 {
        return Err(CliError::Invalid(format!("--max-degree must be non-negative, got {n}")));
    }
    Ok(n)
}

fn ring(args: &RingArgs, max_degree: i64) -> CliResult<Report> {
    let pres = cohomology_presentation(args.family, args.n, args.coeff)?;
    let series = pres.poincare_series(max_degree)?;
    let mut text = format!("{pres}\n{}\n", series_line(&series));
    if let Some(note) = pres.note() {
        text.push_str(&format!("note: {note}\n"));
    }
    let result = json!({ "presentation": to_json(&pres)?, "series": to_json(&series)?, "display": pres.to_string() });
    let params = json!({ "family": args.family.to_string(), "n": args.n, "coeff": args.coeff.to_string(), "max_degree": max_degree });
    Ok(Report::new("ring", params, result, text).cite("cohomology of BO, BSO, BU, BSU, BSp over F2, F_p and Q"))
}

fn map_text(map: &PresentedMap) -> String {
    let mut text = format!("{}: {} -> {}\n", map.name, map.source.label(), map.target.label());
    for (g, img) in map.assignments() {
        text.push_str(&format!("  {g} |-> {img}\n"));
    }
    text
}

fn coefficient_for(prime: Option<u64>, default: Coefficient) -> CliResult<Coefficient> {
    match prime {
        None => Ok(default),
        Some(0) => Ok(Coefficient::Q),
        Some(p) => Ok(Coefficient::prime(p)?),
    }
}

fn restrict(args: &RestrictArgs) -> CliResult<Report> {
    let family = |default| args.family.unwrap_or(default);
    let mut params = json!({ "map": format!("{:?}", args.map).to_lowercase(), "n": args.n, "prime": args.prime });
    let (map, extra, cite) = match args.map {
        MapKind::Standard => {
            let f = family(Family::O);
            params["family"] = json!(f.to_string());
            let c = coefficient_for(args.prime, Coefficient::F2)?;
            (standard_restriction(f, args.n, c)?, Value::Null, "restriction along the standard inclusion G(n-1) -> G(n)")
        }
        MapKind::Detect => {
            let f = family(Family::O);
            params["family"] = json!(f.to_string());
            let c = coefficient_for(args.prime, Coefficient::F2)?;
            (detection_map(f, args.n, c)?, Value::Null, "splitting principle: detection on a maximal torus")
        }
        MapKind::J => {
            if !matches!(args.prime, None | Some(2)) {
                return Err(CliError::Invalid("the j restriction is defined mod 2 only".into()));
            }
            (j_restriction(args.n)?, Value::Null, "pullback of Stiefel–Whitney classes along O(2n) -> SO(2n+1)")
        }
        MapKind::Su => {
            let c = coefficient_for(args.prime, Coefficient::Q)?;
            (su_restriction(args.n, c)?, Value::Null, "restriction along U(n) -> SU(n+1)")
        }
        MapKind::USelfmap => {
            let p = args
                .prime
                .ok_or_else(|| CliError::Invalid("u-selfmap needs --prime".into()))?;
            let sign = if args.minus { ShiftSign::Minus } else { ShiftSign::Plus };
            params["sign"] = json!(sign);
            let r = u_selfmap(args.n, p, sign)?;
            let extra = json!({
                "prime": r.prime,
                "c1_coefficient": r.c1_coefficient,
                "triangular": r.triangular,
                "invertible": r.invertible,
            });
            (r.map, extra, "self-map of BU(n) induced by twisting with a power of the determinant")
        }
    };
    let mut text = map_text(&map);
    let mut result = json!({ "map": to_json(&map)? });
    if let Value::Object(extra) = extra {
        text.push_str(&format!(
            "c_1 coefficient {} mod {}; {}\n",
            extra["c1_coefficient"],
            extra["prime"],
            if extra["invertible"] == json!(true) { "invertible" } else { "not invertible" }
        ));
        for (k, v) in extra {
            result[k] = v;
        }
    }
    Ok(Report::new("restrict", params, result, text).cite(cite))
}

fn detect(args: &RingArgs) -> CliResult<Report> {
    let map = detection_map(args.family, args.n, args.coeff)?;
    let params = json!({ "family": args.family.to_string(), "n": args.n, "coeff": args.coeff.to_string() });
    let text = map_text(&map);
    let result = json!({ "map": to_json(&map)? });
    Ok(Report::new("detect", params, result, text).cite("splitting principle: detection on a maximal torus"))
}

fn pin(n: u32) -> CliResult<Report> {
    let v = pin_structures(n)?;
    let text = format!(
        "RP^{n}: w_1 = {}, w_2 = {}; Pin^+ {}, Pin^- {}\n",
        if v.w1 == 1 { "x" } else { "0" },
        if v.w2 == 1 { "x^2" } else { "0" },
        if v.pin_plus { "yes" } else { "no" },
        if v.pin_minus { "yes" } else { "no" },
    );
    let mut r = Report::new("pin", json!({ "n": n }), to_json(&v)?, text)
        .cite("w(T RP^n) = (1+x)^{n+1}; Pin^± obstructions w_2 and w_2 + w_1^2");
    if n.is_multiple_of(2) {
        r.warnings.push(RP_W2_WARNING.to_string());
    }
    Ok(r)
}

fn check_text(name: &str, c: &SeriesCheck) -> String {
    match c.first_violation() {
        None => format!("{name}: pass through degree {}\n", c.max_degree),
        Some(d) => format!(
            "{name}: FAIL, {} violating degree(s), first at {d} (lhs {}, rhs {})\n",
            c.violations.len(),
            c.lhs.coeff(d),
            c.rhs.coeff(d)
        ),
    }
}

fn thom(args: &ThomArgs, max_degree: i64) -> CliResult<Report> {
    let series = mt_poincare_series(args.family, args.n, args.coeff, max_degree)?;
    let mut text = format!("MT{}({}) over {}\n{}\n", args.family, args.n, args.coeff, series_line(&series));
    let mut result = json!({ "series": to_json(&series)? });
    let mut failures = Vec::new();
    let mut checks = Vec::new();
    if args.check_ses {
        checks.push(("ses", verify_ses_dimensions(args.family, args.n, args.coeff, max_degree)?));
    }
    if args.check_direct_sum {
        checks.push(("direct_sum", mt_direct_sum_check(args.family, args.n, args.coeff, max_degree)?));
    }
    for (name, c) in checks {
        text.push_str(&check_text(name, &c));
        if let Some(d) = c.first_violation() {
            failures.push(format!("{name} check fails at degree {d}"));
        }
        result[name] = json!({ "passed": c.passed(), "violations": c.violations, "first_violation": c.first_violation() });
    }
    let params = json!({
        "family": args.family.to_string(), "n": args.n, "coeff": args.coeff.to_string(),
        "max_degree": max_degree, "check_ses": args.check_ses, "check_direct_sum": args.check_direct_sum,
    });
    let mut r = Report::new("thom", params, result, text)
        .cite("Thom isomorphism for -γ_n over BG(n)")
        .cite("cofibre sequence Σ^{-d}MTG(n-1) -> MTG(n) -> BG(n)_+");
    r.warnings.extend(failures.iter().cloned());
    if !failures.is_empty() {
        r.violation = Some(failures.join("; "));
    }
    Ok(r)
}

fn qhomology(args: &QhomologyArgs, max_degree: i64) -> CliResult<Report> {
    let (series, label) = if args.s0 {
        (q0s0_series(max_degree)?, "Q_0S^0".to_string())
    } else {
        if args.generators.iter().any(|&g| g <= 0) {
            return Err(CliError::Invalid("generator degrees must be positive".into()));
        }
        let input = HomologyInput::from_degrees(&args.generators);
        if args.plus {
            (q0_plus_series(&input, max_degree)?, "Q_0(Y_+)".to_string())
        } else {
            (q_homology_series(&input, max_degree)?, "QY".to_string())
        }
    };
    let text = format!("H_*({label}; F2)\n{}\n", series_line(&series));
    let params = json!({ "generators": args.generators, "s0": args.s0, "plus": args.plus, "max_degree": max_degree });
    let result = json!({ "space": label, "series": to_json(&series)? });
    Ok(Report::new("qhomology", params, result, text)
        .cite("H_*(QY; F2) is free on admissible Dyer–Lashof words of positive excess"))
}

fn need<T>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Invalid(format!("this mode needs {flag}")))
}

fn verdict_report(v: SplittingVerdict, params: Value) -> CliResult<Report> {
    let text = format!(
        "{} (χ({}) = {}, ≡ {} mod {}): {}\n",
        v.pair,
        v.quotient,
        v.euler,
        v.chi_mod_p,
        v.prime,
        v.statement
    );
    let mut r = Report::new("split", params, to_json(&v)?, text)
        .cite("a transfer whose composite is multiplication by χ(G/K) splits when p ∤ χ");
    r.warnings.extend(v.warnings.iter().cloned());
    if v.verdict == Verdict::Inconclusive {
        r.warnings.push(format!("inconclusive: {}", v.statement));
    }
    Ok(r)
}

fn split(args: &SplitArgs, max_degree: i64) -> CliResult<Report> {
    if let Some(pair) = args.pair {
        let (n, p) = (need(args.n, "--n")?, need(args.prime, "--prime")?);
        let v = splitting_verdict(pair, n, p)?;
        return verdict_report(v, json!({ "pair": pair.tag(), "n": n, "prime": p }));
    }
    if args.s0 {
        let family = need(args.family, "--family")?;
        let (n, p) = (need(args.n, "--n")?, need(args.prime, "--prime")?);
        let v = s0_split_verdict(family, n, p)?;
        return Ok(verdict_report(v, json!({ "s0": true, "family": format!("{family:?}"), "n": n, "prime": p }))?
            .cite("S^0 splits off MTK when p ∤ χ(M) for a witness manifold M"));
    }
    if args.odd_p_consistency {
        let (n, p) = (need(args.n, "--n")?, need(args.prime, "--prime")?);
        let rep = odd_p_consistency(n, p, max_degree)?;
        let mut text = format!("reference F_{p}[p_1..p_{n}]: {}\n", series_line(&rep.reference));
        for (label, first) in &rep.checks {
            match first {
                None => text.push_str(&format!("  {label}: agrees\n")),
                Some(d) => text.push_str(&format!("  {label}: differs at degree {d}\n")),
            }
        }
        let params = json!({ "odd_p_consistency": true, "n": n, "prime": p, "max_degree": max_degree });
        let mut result = to_json(&rep)?;
        result["passed"] = json!(rep.passed());
        let mut r = Report::new("split", params, result, text)
            .cite("at an odd prime MTO(2n), BO(2n)_+, BSO(2n+1)_+ and BSp(n)_+ agree and MTO(2n+1) is trivial");
        if !rep.passed() {
            r.violation = Some("odd-p series disagree".into());
        }
        return Ok(r);
    }
    if args.nonexact {
        let m = need(args.m, "--m")?;
        let rep = nonexact_explore(m, max_degree)?;
        let text = format!(
            "H_*(Q_0BO({0})_+):  {1}\nH_*(Q_0BSO({0})_+): {2}\n{3}\n",
            m + 1,
            rep.bo_dims.join(","),
            rep.bso_dims.join(","),
            rep.verdict
        );
        let params = json!({ "nonexact": true, "m": m, "max_degree": max_degree });
        let mut r = Report::new("split", params, to_json(&rep)?, text)
            .cite("the cofibre sequence for O(m) in SO(m+1) is not short exact in homology");
        r.warnings.push("exploratory: a dimension count can only exhibit, never refute, non-exactness".into());
        return Ok(r);
    }
    Err(CliError::Invalid(
        "choose one of --pair, --s0, --odd-p-consistency, --nonexact".into(),
    ))
}

fn nu(args: &NuArgs, max_degree: i64) -> CliResult<Report> {
    let cite = "ν-classes pulled back along BO(m) -> BSO(m+1) and expanded in μ-classes";
    if let Some(e) = &args.exponents {
        let expr = nu_to_mu(args.m, e)?;
        let class = NuClass::new(args.m, e.clone())?;
        let text = format!("{class} = {expr}\n");
        let result = json!({ "class": class.to_string(), "degree": class.degree(), "mu": expr.to_string() });
        return Ok(Report::new("nu", json!({ "m": args.m, "exponents": e }), result, text).cite(cite));
    }
    if let Some(d) = args.degree {
        let rw = NuRewriter::new(args.m)?;
        let mut text = String::new();
        let mut rows = Vec::new();
        for class in nu_classes(args.m, d)? {
            let expr = rw.rewrite(&class)?;
            text.push_str(&format!("{class} = {expr}\n"));
            rows.push(json!({ "class": class.to_string(), "mu": expr.to_string(), "odd": class.has_odd_entry() }));
        }
        if rows.is_empty() {
            text.push_str(&format!("no ν-classes in degree {d}\n"));
        }
        let report = independence_report(args.m, d)?;
        let result = json!({ "classes": rows, "independence": to_json(&report)? });
        return Ok(Report::new("nu", json!({ "m": args.m, "degree": d }), result, text).cite(cite));
    }
    if args.count {
        let mut text = String::new();
        let mut counts = Map::new();
        for d in 1..=max_degree.max(0) as u64 {
            let c = count_independent_nu(args.m, d)?;
            text.push_str(&format!("degree {d}: {c}\n"));
            counts.insert(format!("{d:03}"), json!(c));
        }
        let params = json!({ "m": args.m, "count": true, "max_degree": max_degree });
        let result = json!({ "counts": counts });
        return Ok(Report::new("nu", params, result, text).cite(cite));
    }
    Err(CliError::Invalid("choose one of --degree, --count, --exponents".into()))
}

fn xi(p: u64, max_degree: i64) -> CliResult<Report> {
    let s = xi_subalgebra_series(p, max_degree)?;
    let text = format!("ξ-subalgebra at p = {p}\n{}\n", series_line(&s));
    let params = json!({ "prime": p, "max_degree": max_degree });
    Ok(Report::new("xi", params, json!({ "series": to_json(&s)? }), text)
        .cite("H^*(Ω^∞E(1); F_p) has generators in degrees 2m(p-1)"))
}

fn table() -> CliResult<Report> {
    let rows = reproduce_table()?;
    let mut text = String::from("deg | ν | μ-expansion\n");
    let mut warnings = Vec::new();
    for row in &rows {
        let nu = if row.nu.is_empty() { "N.A.".to_string() } else { row.nu.join(", ") };
        let mu = if row.mu.is_empty() { "N.A.".to_string() } else { row.mu.join(", ") };
        let flag = if row.matches_printed { "" } else { "  [differs from print]" };
        text.push_str(&format!("{:>3} | {nu} | {mu}{flag}\n", row.degree));
        warnings.extend(row.warning.clone());
    }
    let mut r = Report::new("reproduce-table", json!({ "m": 2 }), json!({ "rows": to_json(&rows)? }), text)
        .cite("table of ν-classes of MTO(2) in degrees 2–9 and their μ-expansions");
    r.warnings = warnings;
    Ok(r)
}

fn run(cli: &Cli) -> CliResult<Report> {
    let max_degree = check_max_degree(cli.max_degree)?;
    match &cli.command {
        Command::Ring(a) => ring(a, max_degree),
        Command::Restrict(a) => restrict(a),
        Command::Detect(a) => detect(a),
        Command::Pin { n } => pin(*n),
        Command::Thom(a) => thom(a, max_degree),
        Command::Qhomology(a) => qhomology(a, max_degree),
        Command::Split(a) => split(a, max_degree),
        Command::Nu(a) => nu(a, max_degree),
        Command::Xi { prime } => xi(*prime, max_degree),
        Command::ReproduceTable => table(),
        Command::Selftest => selftest::run(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                match serde_json::to_string_pretty(&report.envelope()) {
                    Ok(s) => println!("{s}"),
                    Err(e) => {
                        eprintln!("error: serialization: {e}");
                        return ExitCode::from(3);
                    }
                }
            } else {
                print!("{}", report.text);
                for w in &report.warnings {
                    println!("warning: {w}");
                }
            }
            match report.violation {
                None => ExitCode::SUCCESS,
                Some(v) => {
                    eprintln!("error: invariant violated: {v}");
                    ExitCode::from(3)
                }
            }
        }
        Err(e @ CliError::Invalid(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e @ CliError::Invariant(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
