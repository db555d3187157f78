//! Cohomology of the Madsen–Tillmann spectra `MTG(n)` through the Thom
//! isomorphism, as the free rank-one module `z_n^{-1}·k[z_1, …, z_n]`.
//!
//! Suspension convention: `Σ^{-d}X` has Poincaré series `t^{-d}·PS(X)`, i.e.
//! `dim H^k(Σ^{-d}X) = dim H^{k+d}(X)`.

use serde::Serialize;

use crate::classifying::{cohomology_presentation, Coefficient, Family};
use crate::graded::PoincareSeries;
use crate::{Error, Result};

/// `H^*(MTG(n); k)` as a module over `H^*(BG(n); k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThomModule {
    pub family: Family,
    pub n: u32,
    pub coefficient: Coefficient,
    /// Degree multiplier: 1 for O, 2 for U/SU, 4 for Sp.
    pub d: u32,
}

impl ThomModule {
    pub fn new(family: Family, n: u32, coefficient: Coefficient) -> Result<Self> {
        match (family, coefficient) {
            (Family::U | Family::SU | Family::Sp, _) | (Family::O, Coefficient::F2) => Ok(Self {
                family,
                n,
                coefficient,
                d: family.degree_multiplier(),
            }),
            (Family::O, c) => Err(Error::Unsupported(format!(
                "MTO(n) over {c}: the Thom isomorphism needs characteristic 2"
            ))),
            (f, _) => Err(Error::Unsupported(format!("no Thom module for {f}"))),
        }
    }

    /// Degree of the Thom class `z_n^{-1}`.
    pub fn bottom_degree(&self) -> i64 {
        -((self.d * self.n) as i64)
    }

    /// Name of the Euler class `z_n` in the base presentation.
    fn euler_class(&self) -> String {
        let prefix = match self.family {
            Family::O => "w",
            Family::U | Family::SU => "c",
            _ => "p",
        };
        format!("{prefix}_{}", self.n)
    }

    pub fn poincare_series(&self, max_degree: i64) -> Result<PoincareSeries> {
        mt_poincare_series(self.family, self.n, self.coefficient, max_degree)
    }
}

/// Poincaré series of `MTG(n)`, truncated at `max_degree`.
///
/// Rank 0 uses the Grassmannian conventions: `MTG(0) = S^0` for O, U, Sp
/// and `MTSU(0) = Σ^∞BSU(0)_+` with `BSU(0) ≃ S^1`.
pub fn mt_poincare_series(
    family: Family,
    n: u32,
    coefficient: Coefficient,
    max_degree: i64,
) -> Result<PoincareSeries> {
    let module = ThomModule::new(family, n, coefficient)?;
    if n == 0 {
        let mut s = PoincareSeries::one(max_degree.max(0));
        if family == Family::SU {
            s = s.add(&PoincareSeries::monomial(1, 1, max_degree.max(1)));
        }
        return Ok(s.truncate(max_degree));
    }
    let shift = module.bottom_degree();
    let base = cohomology_presentation(family, n, coefficient)?;
    let series = base.poincare_series((max_degree - shift).max(0))?;
    Ok(series.shift(shift).truncate(max_degree))
}

/// Dimension data of the restriction `H^*(MTG(n)) → H^*(Σ^{-d}MTG(n-1))` in
/// one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionDegree {
    pub degree: i64,
    pub source_dim: u64,
    pub target_dim: u64,
    pub image_dim: u64,
    pub kernel_dim: u64,
    /// `dim H^degree(BG(n))`, which the kernel should match.
    pub base_dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionMapData {
    pub family: Family,
    pub n: u32,
    pub coefficient: Coefficient,
    pub degrees: Vec<RestrictionDegree>,
    pub surjective: bool,
    /// Kernel dimension equals `dim H^*(BG(n))` in every degree.
    pub exact: bool,
}

/// All exponent vectors over `degrees` with weighted degree `target`.
fn monomials_of_degree(degrees: &[u32], target: i64) -> Vec<Vec<u32>> {
    fn go(degrees: &[u32], left: i64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match degrees.split_first() {
            None => {
                if left == 0 {
                    out.push(prefix.clone());
                }
            }
            Some((&d, rest)) => {
                let mut e = 0;
                while (e * d) as i64 <= left {
                    prefix.push(e);
                    go(rest, left - (e * d) as i64, prefix, out);
                    prefix.pop();
                    e += 1;
                }
            }
        }
    }
    let mut out = Vec::new();
    if target >= 0 {
        go(degrees, target, &mut Vec::new(), &mut out);
    }
    out
}

/// The restriction on the monomial basis: `z_n^{-1}·z^a ↦ σ^{-d} z_{n-1}^{-1}·z^a`
/// when `a_n = 0`, and `↦ 0` otherwise. Distinct surviving monomials have
/// distinct images, so ranks are counts.
///
/// For `SU` at `n = 1` the target `Σ^{-2}MTSU(0)` is `Σ^{-2}Σ^∞S^1_+`; the
/// Thom class hits its bottom class and the `S^1` class is missed.
pub fn mt_restriction_map(
    family: Family,
    n: u32,
    coefficient: Coefficient,
    max_degree: i64,
) -> Result<RestrictionMapData> {
    if n == 0 {
        return Err(Error::InvalidArgument("restriction needs n >= 1".into()));
    }
    let module = ThomModule::new(family, n, coefficient)?;
    let source = cohomology_presentation(family, n, coefficient)?;
    // absent only for SU(1), whose base ring is k
    let euler = source.ring().index_of(&module.euler_class());
    let degrees: Vec<u32> = source.generators().iter().map(|v| v.degree).collect();
    let target_series = mt_poincare_series(family, n - 1, coefficient, max_degree + module.d as i64)?
        .shift(-(module.d as i64));

    let mut rows = Vec::new();
    for k in module.bottom_degree()..=max_degree {
        let monos = monomials_of_degree(&degrees, k - module.bottom_degree());
        let kernel = monos.iter().filter(|m| euler.is_some_and(|e| m[e] > 0)).count() as u64;
        let source_dim = monos.len() as u64;
        let image_dim = source_dim - kernel;
        let target_dim = u64::try_from(target_series.coeff(k)).expect("small dimension");
        let base_dim = monomials_of_degree(&degrees, k).len() as u64;
        rows.push(RestrictionDegree {
            degree: k,
            source_dim,
            target_dim,
            image_dim,
            kernel_dim: kernel,
            base_dim,
        });
    }
    // degrees of the target below the source's bottom class
    let mut surjective = rows.iter().all(|r| r.image_dim == r.target_dim);
    for k in target_series.min_degree()..module.bottom_degree() {
        surjective &= target_series.coeff(k) == 0.into();
    }
    let exact = rows.iter().all(|r| r.kernel_dim == r.base_dim);
    Ok(RestrictionMapData {
        family,
        n,
        coefficient,
        degrees: rows,
        surjective,
        exact,
    })
}

/// Outcome of a coefficientwise identity between two series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesCheck {
    pub family: Family,
    pub n: u32,
    pub coefficient: Coefficient,
    pub max_degree: i64,
    pub lhs: PoincareSeries,
    pub rhs: PoincareSeries,
    /// Every degree in `[min, max_degree]` where the sides differ.
    pub violations: Vec<i64>,
}

impl SeriesCheck {
    fn compare(
        family: Family,
        n: u32,
        coefficient: Coefficient,
        max_degree: i64,
        lhs: PoincareSeries,
        rhs: PoincareSeries,
    ) -> Self {
        let lo = lhs.min_degree().min(rhs.min_degree());
        let violations = (lo..=max_degree)
            .filter(|&k| lhs.coeff(k) != rhs.coeff(k))
            .collect();
        Self {
            family,
            n,
            coefficient,
            max_degree,
            lhs,
            rhs,
            violations,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<i64> {
        self.violations.first().copied()
    }
}

/// `dim H^k(MTG(n)) = dim H^k(BG(n)_+) + dim H^k(Σ^{-d}MTG(n-1))` for every
/// `k ≤ max_degree`: the dimension shadow of the cofibre sequence
/// `MTG(n) → Σ^∞BG(n)_+ → MTG(n-1)` being short exact in cohomology.
pub fn verify_ses_dimensions(
    family: Family,
    n: u32,
    coefficient: Coefficient,
    max_degree: i64,
) -> Result<SeriesCheck> {
    if n == 0 {
        return Err(Error::InvalidArgument("the sequence needs n >= 1".into()));
    }
    let d = family.degree_multiplier() as i64;
    let lhs = mt_poincare_series(family, n, coefficient, max_degree)?;
    let base = cohomology_presentation(family, n, coefficient)?.poincare_series(max_degree.max(0))?;
    let prev = mt_poincare_series(family, n - 1, coefficient, max_degree + d)?.shift(-d);
    let rhs = base.add(&prev).truncate(max_degree);
    Ok(SeriesCheck::compare(family, n, coefficient, max_degree, lhs, rhs))
}

/// `PS(MTG(n)) = Σ_{j=0}^{n} t^{-d(n-j)}·PS(BG(j))`, the telescoped sequence.
/// For SU the telescope stops at `MTSU(1) = S^{-2}`:
/// `Σ_{j=2}^{n} t^{-2(n-j)}·PS(BSU(j)) + t^{-2(n-1)}·PS(MTSU(1))`.
pub fn mt_direct_sum_check(
    family: Family,
    n: u32,
    coefficient: Coefficient,
    max_degree: i64,
) -> Result<SeriesCheck> {
    let d = family.degree_multiplier() as i64;
    let lhs = mt_poincare_series(family, n, coefficient, max_degree)?;
    let floor = if family == Family::SU { 2.min(n + 1) } else { 0 };
    let mut rhs = PoincareSeries::zero(max_degree);
    for j in floor..=n {
        let shift = -d * (n - j) as i64;
        let bg = cohomology_presentation(family, j, coefficient)?
            .poincare_series((max_degree - shift).max(0))?;
        rhs = rhs.add(&bg.shift(shift).truncate(max_degree));
    }
    if family == Family::SU && n >= 1 {
        let shift = -d * (n - 1) as i64;
        let mt1 = mt_poincare_series(family, 1, coefficient, max_degree - shift)?;
        rhs = rhs.add(&mt1.shift(shift));
    }
    Ok(SeriesCheck::compare(family, n, coefficient, max_degree, lhs, rhs))
}
