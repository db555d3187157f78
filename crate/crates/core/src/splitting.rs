//! Transfer splittings decided by Euler characteristics: `BG_+` (or `S^0`)
//! splits off `MTK` at `p` when `p ∤ χ(G/K)` (resp. `χ(M)` for a closed
//! `K`-manifold `M`). The rule is sufficient only, so verdicts are
//! "splits" or "inconclusive", never "does not split".

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::classifying::{cohomology_presentation, Coefficient, Family};
use crate::graded::{polynomial_series, PoincareSeries};
use crate::loopspace::{q0_plus_series, HomologyInput};
use crate::poly::is_prime;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HomogeneousSpace {
    Sphere(u32),
    RealProj(u32),
    ComplexProj(u32),
    QuatProj(u32),
}

impl HomogeneousSpace {
    pub fn euler_char(self) -> i64 {
        match self {
            HomogeneousSpace::Sphere(m) => {
                if m % 2 == 0 {
                    2
                } else {
                    0
                }
            }
            HomogeneousSpace::RealProj(m) => {
                if m % 2 == 0 {
                    1
                } else {
                    0
                }
            }
            HomogeneousSpace::ComplexProj(m) | HomogeneousSpace::QuatProj(m) => m as i64 + 1,
        }
    }
}

pub fn euler_char(space: HomogeneousSpace) -> i64 {
    space.euler_char()
}

impl fmt::Display for HomogeneousSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomogeneousSpace::Sphere(m) => write!(f, "S^{m}"),
            HomogeneousSpace::RealProj(m) => write!(f, "RP^{m}"),
            HomogeneousSpace::ComplexProj(m) => write!(f, "CP^{m}"),
            HomogeneousSpace::QuatProj(m) => write!(f, "HP^{m}"),
        }
    }
}

impl FromStr for HomogeneousSpace {
    type Err = Error;

    /// Accepts `S4`, `RP^6`, `CP3`, `HP^2`, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let l = s.to_ascii_uppercase().replace('^', "");
        let split = l.find(|c: char| c.is_ascii_digit()).unwrap_or(l.len());
        let (tag, num) = l.split_at(split);
        let m: u32 = num
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("unknown space {s}")))?;
        match tag {
            "S" => Ok(HomogeneousSpace::Sphere(m)),
            "RP" => Ok(HomogeneousSpace::RealProj(m)),
            "CP" => Ok(HomogeneousSpace::ComplexProj(m)),
            "HP" => Ok(HomogeneousSpace::QuatProj(m)),
            _ => Err(Error::InvalidArgument(format!("unknown space {s}"))),
        }
    }
}

/// A subgroup pair `K ⊂ G`, indexed by `n` as in the splitting theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SplitPair {
    /// `O(2n) ⊂ SO(2n+1)` via `X ↦ det(X)·(X ⊕ 1)`.
    O2nInSO2n1,
    /// `Pin^+(4n) ⊂ Spin(4n+1)`.
    PinPlus4nInSpin4n1,
    /// `Pin^-(4n+2) ⊂ Spin(4n+3)`.
    PinMinus4n2InSpin4n3,
    SO2nInSO2n1,
    O2nInO2n1,
    UnInSUn1,
}

impl SplitPair {
    pub const ALL: [SplitPair; 6] = [
        SplitPair::O2nInSO2n1,
        SplitPair::PinPlus4nInSpin4n1,
        SplitPair::PinMinus4n2InSpin4n3,
        SplitPair::SO2nInSO2n1,
        SplitPair::O2nInO2n1,
        SplitPair::UnInSUn1,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SplitPair::O2nInSO2n1 => "O2n-SO2n1",
            SplitPair::PinPlus4nInSpin4n1 => "PinPlus4n-Spin4n1",
            SplitPair::PinMinus4n2InSpin4n3 => "PinMinus4n2-Spin4n3",
            SplitPair::SO2nInSO2n1 => "SO2n-SO2n1",
            SplitPair::O2nInO2n1 => "O2n-O2n1",
            SplitPair::UnInSUn1 => "Un-SUn1",
        }
    }

    /// `(K, G)` spectrum/space names for a given `n`.
    fn names(self, n: u32) -> (String, String) {
        match self {
            SplitPair::O2nInSO2n1 => (format!("O({})", 2 * n), format!("SO({})", 2 * n + 1)),
            SplitPair::PinPlus4nInSpin4n1 => {
                (format!("Pin^+({})", 4 * n), format!("Spin({})", 4 * n + 1))
            }
            SplitPair::PinMinus4n2InSpin4n3 => {
                (format!("Pin^-({})", 4 * n + 2), format!("Spin({})", 4 * n + 3))
            }
            SplitPair::SO2nInSO2n1 => (format!("SO({})", 2 * n), format!("SO({})", 2 * n + 1)),
            SplitPair::O2nInO2n1 => (format!("O({})", 2 * n), format!("O({})", 2 * n + 1)),
            SplitPair::UnInSUn1 => (format!("U({n})"), format!("SU({})", n + 1)),
        }
    }

    /// `G/K`.
    pub fn quotient(self, n: u32) -> HomogeneousSpace {
        match self {
            SplitPair::O2nInSO2n1 => HomogeneousSpace::RealProj(2 * n),
            SplitPair::PinPlus4nInSpin4n1 => HomogeneousSpace::RealProj(4 * n),
            SplitPair::PinMinus4n2InSpin4n3 => HomogeneousSpace::RealProj(4 * n + 2),
            SplitPair::SO2nInSO2n1 | SplitPair::O2nInO2n1 => HomogeneousSpace::Sphere(2 * n),
            SplitPair::UnInSUn1 => HomogeneousSpace::ComplexProj(n),
        }
    }

    /// Resolve a Pin pair from the dimension of `K`, rejecting dimensions of
    /// the wrong residue mod 4.
    pub fn pin_from_dimension(plus: bool, dim: u32) -> Result<(SplitPair, u32)> {
        match (plus, dim % 4) {
            (true, 0) if dim > 0 => Ok((SplitPair::PinPlus4nInSpin4n1, dim / 4)),
            (false, 2) if dim > 2 => Ok((SplitPair::PinMinus4n2InSpin4n3, dim / 4)),
            _ => Err(Error::InvalidArgument(format!(
                "Pin^{}({dim}): the splitting applies to Pin^+(4n) and Pin^-(4n+2) only",
                if plus { '+' } else { '-' }
            ))),
        }
    }
}

impl fmt::Display for SplitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SplitPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        SplitPair::ALL
            .into_iter()
            .find(|p| {
                let t: String = p.tag().chars().filter(|c| c.is_ascii_alphanumeric()).collect();
                t.to_ascii_lowercase() == norm
            })
            .ok_or_else(|| Error::InvalidArgument(format!("unknown pair {s}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Splits,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingVerdict {
    pub pair: String,
    pub n: u32,
    pub prime: u64,
    pub quotient: HomogeneousSpace,
    pub euler: i64,
    pub chi_mod_p: i64,
    pub verdict: Verdict,
    pub statement: String,
    pub warnings: Vec<String>,
}

/// The quotient `Spin(2n+1)/Pin^±(2n)` is also written `RP^{2n+1}` in one
/// place; only `RP^{2n}` is consistent with `SO(2n+1)/O(2n)`.
pub const PIN_QUOTIENT_WARNING: &str = "the quotient is also written RP^{2n+1} in one identification; RP^{2n} (Euler characteristic 1) is used, consistent with SO(2n+1)/O(2n) = RP^{2n}";

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

fn decide(euler: i64, p: u64) -> (i64, Verdict) {
    let r = euler.rem_euclid(p as i64);
    (r, if r != 0 { Verdict::Splits } else { Verdict::Inconclusive })
}

fn at_prime(p: u64) -> String {
    format!("{p}-locally")
}

pub fn splitting_verdict(pair: SplitPair, n: u32, p: u64) -> Result<SplittingVerdict> {
    if n == 0 {
        return Err(Error::InvalidArgument("splitting needs n >= 1".into()));
    }
    check_prime(p)?;
    let quotient = pair.quotient(n);
    let euler = quotient.euler_char();
    let (chi_mod_p, verdict) = decide(euler, p);
    let (k, g) = pair.names(n);
    let mut statement = match verdict {
        Verdict::Splits => format!("B{g}_+ splits off MT{k} {}", at_prime(p)),
        Verdict::Inconclusive => format!(
            "no conclusion: {p} divides the Euler characteristic {euler} of {quotient}"
        ),
    };
    if verdict == Verdict::Splits
        && matches!(pair, SplitPair::SO2nInSO2n1 | SplitPair::O2nInO2n1)
    {
        statement.push_str(&format!("; MT{k} ≃ B{g}_+ ∨ ΣMT{g}"));
    }
    let mut warnings = Vec::new();
    if matches!(
        pair,
        SplitPair::PinPlus4nInSpin4n1 | SplitPair::PinMinus4n2InSpin4n3
    ) {
        warnings.push(PIN_QUOTIENT_WARNING.to_string());
    }
    Ok(SplittingVerdict {
        pair: pair.tag().to_string(),
        n,
        prime: p,
        quotient,
        euler,
        chi_mod_p,
        verdict,
        statement,
        warnings,
    })
}

/// Groups `K` for which a witness manifold for the `S^0` splitting is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum S0Family {
    /// `O(2n)`, witness `RP^{2n}`.
    O2n,
    /// `SO(2n)`, witness `S^{2n}`.
    SO2n,
    /// `Pin^+(4n)`, witness `RP^{4n}`.
    PinPlus4n,
    /// `Pin^-(4n+2)`, witness `RP^{4n+2}`.
    PinMinus4n2,
    /// `U(n)`, witness `CP^n`.
    U,
    /// `Sp(n)`, witness `HP^n`.
    Sp,
}

impl S0Family {
    pub const ALL: [S0Family; 6] = [
        S0Family::O2n,
        S0Family::SO2n,
        S0Family::PinPlus4n,
        S0Family::PinMinus4n2,
        S0Family::U,
        S0Family::Sp,
    ];

    fn group(self, n: u32) -> String {
        match self {
            S0Family::O2n => format!("O({})", 2 * n),
            S0Family::SO2n => format!("SO({})", 2 * n),
            S0Family::PinPlus4n => format!("Pin^+({})", 4 * n),
            S0Family::PinMinus4n2 => format!("Pin^-({})", 4 * n + 2),
            S0Family::U => format!("U({n})"),
            S0Family::Sp => format!("Sp({n})"),
        }
    }

    pub fn witness(self, n: u32) -> HomogeneousSpace {
        match self {
            S0Family::O2n => HomogeneousSpace::RealProj(2 * n),
            S0Family::SO2n => HomogeneousSpace::Sphere(2 * n),
            S0Family::PinPlus4n => HomogeneousSpace::RealProj(4 * n),
            S0Family::PinMinus4n2 => HomogeneousSpace::RealProj(4 * n + 2),
            S0Family::U => HomogeneousSpace::ComplexProj(n),
            S0Family::Sp => HomogeneousSpace::QuatProj(n),
        }
    }
}

impl FromStr for S0Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['^', '(', ')'], "").as_str() {
            "o" | "o2n" => Ok(S0Family::O2n),
            "so" | "so2n" => Ok(S0Family::SO2n),
            "pin+" | "pinplus" | "pin+4n" | "pinplus4n" => Ok(S0Family::PinPlus4n),
            "pin-" | "pinminus" | "pin-4n+2" | "pinminus4n2" => Ok(S0Family::PinMinus4n2),
            "u" => Ok(S0Family::U),
            "sp" => Ok(S0Family::Sp),
            _ => Err(Error::InvalidArgument(format!("unknown family {s}"))),
        }
    }
}

/// `S^0` splits off `MTK` at `p` if `p ∤ χ(M)` for the witness manifold `M`.
pub fn s0_split_verdict(family: S0Family, n: u32, p: u64) -> Result<SplittingVerdict> {
    if n == 0 {
        return Err(Error::InvalidArgument("splitting needs n >= 1".into()));
    }
    check_prime(p)?;
    let witness = family.witness(n);
    let euler = witness.euler_char();
    let (chi_mod_p, verdict) = decide(euler, p);
    let k = family.group(n);
    let statement = match verdict {
        Verdict::Splits => format!("S^0 splits off MT{k} {} (witness {witness})", at_prime(p)),
        Verdict::Inconclusive => format!(
            "no conclusion: {p} divides the Euler characteristic {euler} of {witness}"
        ),
    };
    Ok(SplittingVerdict {
        pair: format!("S0-{k}"),
        n,
        prime: p,
        quotient: witness,
        euler,
        chi_mod_p,
        verdict,
        statement,
        warnings: Vec::new(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub n: u32,
    pub prime: u64,
    pub max_degree: i64,
    /// The series of `F_p[p_1, …, p_n]`.
    pub reference: PoincareSeries,
    /// `(label, first degree differing from the reference)`.
    pub checks: Vec<(String, Option<i64>)>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, d)| d.is_none())
    }
}

/// Away from 2, `MTO(2n) ≃ BO(2n)_+ ≃ BSO(2n+1)_+ ≃ BSp(n)_+ ≃ BO(2n+1)_+`,
/// so the mod-`p` cohomology series must all agree with `F_p[p_1…p_n]`.
pub fn odd_p_consistency(n: u32, p: u64, max_degree: i64) -> Result<ConsistencyReport> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("needs an odd prime, got {p}")));
    }
    let coeff = Coefficient::Fp(p);
    let degrees: Vec<i64> = (1..=n as i64).map(|i| 4 * i).collect();
    let reference = polynomial_series(&degrees, max_degree)?;
    let mut checks = Vec::new();
    for (family, rank) in [
        (Family::O, 2 * n),
        (Family::SO, 2 * n + 1),
        (Family::Sp, n),
        (Family::O, 2 * n + 1),
    ] {
        let pres = cohomology_presentation(family, rank, coeff)?;
        let s = pres.poincare_series(max_degree)?;
        checks.push((pres.label(), s.first_difference(&reference)));
    }
    Ok(ConsistencyReport {
        n,
        prime: p,
        max_degree,
        reference,
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonexactReport {
    pub m: u32,
    pub max_degree: i64,
    /// `dim H_d(Q_0BO(m+1)_+; F2)` for `d = 0..=max_degree`.
    pub bo_dims: Vec<String>,
    /// `dim H_d(Q_0BSO(m+1)_+; F2)`.
    pub bso_dims: Vec<String>,
    /// Degrees where the first is strictly smaller than the second.
    pub witnesses: Vec<i64>,
    pub verdict: String,
}

pub const NONEXACT_INCONCLUSIVE: &str =
    "inconclusive: dimensions alone give no witness; the non-exactness argument goes through the homology suspension";

/// Compare `H_*(Q_0BO(m+1)_+)` with the tensor factor `H_*(Q_0BSO(m+1)_+)`
/// that the splitting forces into `H_*(Ω^∞_0 MTO(m))`. A degree where the
/// former is smaller would witness that the sequence cannot be short exact.
pub fn nonexact_explore(m: u32, max_degree: i64) -> Result<NonexactReport> {
    if m % 2 == 1 {
        return Err(Error::InvalidArgument(format!("m must be even, got {m}")));
    }
    let input = |family| -> Result<HomologyInput> {
        let s = cohomology_presentation(family, m + 1, Coefficient::F2)?.poincare_series(max_degree)?;
        HomologyInput::from_series(&s)
    };
    let bo = q0_plus_series(&input(Family::O)?, max_degree)?;
    let bso = q0_plus_series(&input(Family::SO)?, max_degree)?;
    let witnesses: Vec<i64> = (0..=max_degree).filter(|&d| bo.coeff(d) < bso.coeff(d)).collect();
    let verdict = if witnesses.is_empty() {
        NONEXACT_INCONCLUSIVE.to_string()
    } else {
        format!("witness in degree {}", witnesses[0])
    };
    let dims = |s: &PoincareSeries| (0..=max_degree).map(|d| s.coeff(d).to_string()).collect();
    Ok(NonexactReport {
        m,
        max_degree,
        bo_dims: dims(&bo),
        bso_dims: dims(&bso),
        witnesses,
        verdict,
    })
}
