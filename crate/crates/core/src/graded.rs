//! Truncated, bounded-below Poincaré series with arbitrary-precision
//! integer coefficients.
//!
//! A series stores coefficients for degrees `min_degree..=trunc_degree`.
//! Degrees below `min_degree` are zero; degrees above `trunc_degree` are
//! unknown. Every operation tracks how far its result is exact, so the
//! truncation bound of a result is never larger than what its inputs
//! determine.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Default truncation degree used when the caller does not pick one.
pub const DEFAULT_MAX_DEGREE: i64 = 40;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("truncation degree {trunc} is below the minimum degree {min}")]
    TruncBelowMin { min: i64, trunc: i64 },
    #[error("expected {expected} coefficients for degrees {min}..={trunc}, got {got}")]
    LengthMismatch {
        min: i64,
        trunc: i64,
        expected: usize,
        got: usize,
    },
    #[error("generator degree must be positive, got {0}")]
    NonPositiveDegree(i64),
    #[error("generator multiplicity must be at least 1")]
    ZeroMultiplicity,
}

/// A truncated formal series `Σ a_d t^d` for `min_degree ≤ d ≤ trunc_degree`.
#[derive(Clone, Debug)]
pub struct PoincareSeries {
    min_degree: i64,
    trunc_degree: i64,
    coefficients: Vec<BigInt>,
}

impl PoincareSeries {
    pub fn new(
        min_degree: i64,
        trunc_degree: i64,
        coefficients: Vec<BigInt>,
    ) -> Result<Self, SeriesError> {
        if trunc_degree < min_degree {
            return Err(SeriesError::TruncBelowMin {
                min: min_degree,
                trunc: trunc_degree,
            });
        }
        let expected = (trunc_degree - min_degree + 1) as usize;
        if coefficients.len() != expected {
            return Err(SeriesError::LengthMismatch {
                min: min_degree,
                trunc: trunc_degree,
                expected,
                got: coefficients.len(),
            });
        }
        Ok(Self {
            min_degree,
            trunc_degree,
            coefficients,
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64s(min_degree: i64, coefficients: &[i64]) -> Result<Self, SeriesError> {
        if coefficients.is_empty() {
            return Err(SeriesError::TruncBelowMin {
                min: min_degree,
                trunc: min_degree - 1,
            });
        }
        let trunc = min_degree + coefficients.len() as i64 - 1;
        Self::new(
            min_degree,
            trunc,
            coefficients.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    /// The zero series, exact through degree `trunc_degree`.
    pub fn zero(trunc_degree: i64) -> Self {
        Self::monomial(0, 0, trunc_degree)
    }

    /// The constant series `1`, exact through degree `trunc_degree`.
    pub fn one(trunc_degree: i64) -> Self {
        Self::monomial(0, 1, trunc_degree)
    }

    /// `c · t^degree`, exact through `trunc_degree`. If `degree` lies above
    /// the truncation the result is the zero series starting at `trunc_degree`.
    pub fn monomial(degree: i64, coefficient: i64, trunc_degree: i64) -> Self {
        if degree > trunc_degree {
            return Self {
                min_degree: trunc_degree,
                trunc_degree,
                coefficients: vec![BigInt::zero()],
            };
        }
        let mut coefficients = vec![BigInt::zero(); (trunc_degree - degree + 1) as usize];
        coefficients[0] = BigInt::from(coefficient);
        Self {
            min_degree: degree,
            trunc_degree,
            coefficients,
        }
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn trunc_degree(&self) -> i64 {
        self.trunc_degree
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// Coefficient in degree `d`; zero below the stored range, `None` above
    /// the truncation.
    pub fn get(&self, d: i64) -> Option<BigInt> {
        if d > self.trunc_degree {
            None
        } else if d < self.min_degree {
            Some(BigInt::zero())
        } else {
            Some(self.coefficients[(d - self.min_degree) as usize].clone())
        }
    }

    /// Coefficient in degree `d`, panicking above the truncation.
    pub fn coeff(&self, d: i64) -> BigInt {
        self.get(d)
            .unwrap_or_else(|| panic!("degree {d} above truncation {}", self.trunc_degree))
    }

    /// Coefficients for `lo..=hi` as `i64`, panicking on overflow or if the
    /// range exceeds the truncation. Meant for tests and small displays.
    pub fn to_i64_vec(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi)
            .map(|d| {
                i64::try_from(self.coeff(d)).expect("coefficient does not fit in i64")
            })
            .collect()
    }

    /// True if every stored coefficient is non-negative.
    pub fn is_dimension_count(&self) -> bool {
        self.coefficients.iter().all(|c| !c.is_negative())
    }

    /// Drop information above `trunc_degree` (no-op if already lower).
    pub fn truncate(&self, trunc_degree: i64) -> Self {
        if trunc_degree >= self.trunc_degree {
            return self.clone();
        }
        if trunc_degree < self.min_degree {
            return Self::zero_at(trunc_degree);
        }
        let keep = (trunc_degree - self.min_degree + 1) as usize;
        Self {
            min_degree: self.min_degree,
            trunc_degree,
            coefficients: self.coefficients[..keep].to_vec(),
        }
    }

    fn zero_at(trunc_degree: i64) -> Self {
        Self {
            min_degree: trunc_degree,
            trunc_degree,
            coefficients: vec![BigInt::zero()],
        }
    }

    /// Coefficientwise sum. The result starts at the smaller minimum degree
    /// and is exact up to the smaller truncation.
    pub fn add(&self, other: &Self) -> Self {
        let min = self.min_degree.min(other.min_degree);
        let trunc = self.trunc_degree.min(other.trunc_degree);
        if trunc < min {
            return Self::zero_at(trunc);
        }
        let coefficients = (min..=trunc)
            .map(|d| self.coeff(d) + other.coeff(d))
            .collect();
        Self {
            min_degree: min,
            trunc_degree: trunc,
            coefficients,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            min_degree: self.min_degree,
            trunc_degree: self.trunc_degree,
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Truncated Cauchy product. The minimum degree is the sum of the
    /// minimum degrees; a coefficient is kept only if both factors determine
    /// it, i.e. up to `min(trunc_a + min_b, trunc_b + min_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let min = self.min_degree + other.min_degree;
        let trunc = (self.trunc_degree + other.min_degree)
            .min(other.trunc_degree + self.min_degree);
        let len = (trunc - min + 1) as usize;
        let mut coefficients = vec![BigInt::zero(); len];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coefficients[i + j] += a * b;
                }
            }
        }
        Self {
            min_degree: min,
            trunc_degree: trunc,
            coefficients,
        }
    }

    /// Degree shift: the coefficient of the result in degree `d` is the
    /// coefficient of `self` in degree `d - k`. Both bounds move by `k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            min_degree: self.min_degree + k,
            trunc_degree: self.trunc_degree + k,
            coefficients: self.coefficients.clone(),
        }
    }

    /// Multiply in place by `1/(1 - t^d)`, i.e. a polynomial generator of
    /// degree `d > 0`.
    pub fn mul_polynomial_generator(&mut self, d: i64) {
        assert!(d > 0, "generator degree must be positive");
        let d = d as usize;
        for i in d..self.coefficients.len() {
            let (lo, hi) = self.coefficients.split_at_mut(i);
            hi[0] += &lo[i - d];
        }
    }

    /// Multiply in place by `1 + t^d`, i.e. an exterior generator of degree
    /// `d > 0`.
    pub fn mul_exterior_generator(&mut self, d: i64) {
        assert!(d > 0, "generator degree must be positive");
        let d = d as usize;
        for i in (d..self.coefficients.len()).rev() {
            let (lo, hi) = self.coefficients.split_at_mut(i);
            hi[0] += &lo[i - d];
        }
    }

    /// Degree range on which both series are known.
    fn common_range(&self, other: &Self) -> (i64, i64) {
        (
            self.min_degree.min(other.min_degree),
            self.trunc_degree.min(other.trunc_degree),
        )
    }

    /// First degree (within the common range) where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        let (lo, hi) = self.common_range(other);
        (lo..=hi).find(|&d| self.coeff(d) != other.coeff(d))
    }
}

/// Equality on the overlap: agreement in every degree up to the smaller
/// truncation (coefficients below a series' minimum degree are zero).
impl PartialEq for PoincareSeries {
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl Eq for PoincareSeries {}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = self.min_degree + i as i64;
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = !mag.is_one() || d == 0;
            match (show_coeff, d) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}t")?,
                (false, 1) => write!(f, "t")?,
                (true, _) => write!(f, "{mag}t^{d}")?,
                (false, _) => write!(f, "t^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.trunc_degree + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    min_degree: i64,
    trunc_degree: i64,
    coefficients: Vec<serde_json::Number>,
}

impl Serialize for PoincareSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coefficients = self
            .coefficients
            .iter()
            .map(|c| {
                c.to_string()
                    .parse::<serde_json::Number>()
                    .map_err(serde::ser::Error::custom)
            })
            .collect::<Result<Vec<_>, _>>()?;
        SeriesJson {
            min_degree: self.min_degree,
            trunc_degree: self.trunc_degree,
            coefficients,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PoincareSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(deserializer)?;
        let coefficients = raw
            .coefficients
            .iter()
            .map(|n| n.to_string().parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        PoincareSeries::new(raw.min_degree, raw.trunc_degree, coefficients).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(d: i64) -> Self {
        if d.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A generator of a free graded-commutative algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub degree: i64,
    pub parity: Parity,
    pub multiplicity: u32,
}

impl GeneratorSpec {
    /// A single generator whose parity is read off its degree.
    pub fn new(degree: i64) -> Self {
        Self {
            degree,
            parity: Parity::of_degree(degree),
            multiplicity: 1,
        }
    }

    pub fn with_multiplicity(degree: i64, multiplicity: u32) -> Self {
        Self {
            multiplicity,
            ..Self::new(degree)
        }
    }

    pub fn with_parity(degree: i64, parity: Parity) -> Self {
        Self {
            degree,
            parity,
            multiplicity: 1,
        }
    }
}

/// How generators of a free algebra behave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Characteristic {
    /// Graded-commutative: odd generators are exterior.
    Zero,
    /// Every generator is polynomial.
    Two,
}

/// Poincaré series of the free commutative algebra on `gens`, exact
/// through degree `max_degree`.
pub fn free_commutative_series(
    gens: &[GeneratorSpec],
    characteristic: Characteristic,
    max_degree: i64,
) -> Result<PoincareSeries, SeriesError> {
    for g in gens {
        if g.degree <= 0 {
            return Err(SeriesError::NonPositiveDegree(g.degree));
        }
        if g.multiplicity == 0 {
            return Err(SeriesError::ZeroMultiplicity);
        }
    }
    let mut series = PoincareSeries::one(max_degree.max(0));
    for g in gens {
        if g.degree > max_degree {
            continue;
        }
        for _ in 0..g.multiplicity {
            match (characteristic, g.parity) {
                (Characteristic::Zero, Parity::Odd) => series.mul_exterior_generator(g.degree),
                _ => series.mul_polynomial_generator(g.degree),
            }
        }
    }
    Ok(series.truncate(max_degree))
}

/// Series of a polynomial algebra with generators in the listed degrees.
pub fn polynomial_series(degrees: &[i64], max_degree: i64) -> Result<PoincareSeries, SeriesError> {
    let gens: Vec<_> = degrees.iter().map(|&d| GeneratorSpec::new(d)).collect();
    free_commutative_series(&gens, Characteristic::Two, max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(min: i64, c: &[i64]) -> PoincareSeries {
        PoincareSeries::from_i64s(min, c).unwrap()
    }

    #[test]
    fn add_examples() {
        let a = s(0, &[1, 1, 0]);
        let b = s(0, &[0, 1, 1]);
        assert_eq!(a.add(&b).to_i64_vec(0, 2), vec![1, 2, 1]);
        assert_eq!(a.add(&PoincareSeries::zero(2)), a);

        let bo1 = polynomial_series(&[1], 10).unwrap();
        let twice = bo1.add(&bo1);
        assert!(twice.to_i64_vec(0, 10).iter().all(|&c| c == 2));
    }

    #[test]
    fn add_tracks_min_and_trunc() {
        let a = s(-2, &[1, 0, 0, 0, 0]);
        let b = s(0, &[1, 1, 1, 1, 1, 1]);
        let c = a.add(&b);
        assert_eq!(c.min_degree(), -2);
        assert_eq!(c.trunc_degree(), 2);
        assert_eq!(c.to_i64_vec(-2, 2), vec![1, 0, 1, 1, 1]);
    }

    #[test]
    fn mul_examples() {
        let a = s(0, &[1, 1, 0]);
        assert_eq!(a.mul(&a).to_i64_vec(0, 2), vec![1, 2, 1]);

        let g1 = polynomial_series(&[1], 6).unwrap();
        let g2 = polynomial_series(&[2], 6).unwrap();
        assert_eq!(g1.mul(&g2).to_i64_vec(0, 6), vec![1, 1, 2, 2, 3, 3, 4]);

        let tm2 = PoincareSeries::monomial(-2, 1, 40);
        let geo = polynomial_series(&[1], 40).unwrap();
        let p = tm2.mul(&geo);
        assert_eq!(p.min_degree(), -2);
        assert!(p.to_i64_vec(-2, p.trunc_degree()).iter().all(|&c| c == 1));
    }

    #[test]
    fn mul_truncation_is_exactness_bound() {
        let tm2 = PoincareSeries::monomial(-2, 1, 10);
        let geo = polynomial_series(&[1], 10).unwrap();
        // t^-2 is known to degree 10, geo to degree 10: product known to 8.
        assert_eq!(tm2.mul(&geo).trunc_degree(), 8);
    }

    #[test]
    fn shift_examples() {
        let a = s(0, &[1, 0, 1]);
        let b = a.shift(-2);
        assert_eq!(b.min_degree(), -2);
        assert_eq!(b.to_i64_vec(-2, 0), vec![1, 0, 1]);
        assert_eq!(a.shift(0), a);

        let bo1 = polynomial_series(&[1], 20).unwrap();
        let mto1 = bo1.shift(-1);
        assert_eq!(mto1.min_degree(), -1);
        assert!(mto1.to_i64_vec(-1, 19).iter().all(|&c| c == 1));
    }

    #[test]
    fn free_series_examples() {
        let even = free_commutative_series(
            &[GeneratorSpec::with_parity(2, Parity::Even)],
            Characteristic::Zero,
            8,
        )
        .unwrap();
        assert_eq!(even.to_i64_vec(0, 8), vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);

        let odd = free_commutative_series(
            &[GeneratorSpec::with_parity(3, Parity::Odd)],
            Characteristic::Zero,
            8,
        )
        .unwrap();
        assert_eq!(odd.to_i64_vec(0, 8), vec![1, 0, 0, 1, 0, 0, 0, 0, 0]);

        let gens: Vec<_> = (1..=10).map(GeneratorSpec::new).collect();
        let p = free_commutative_series(&gens, Characteristic::Two, 10).unwrap();
        assert_eq!(
            p.to_i64_vec(0, 10),
            vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
        );
    }

    #[test]
    fn free_series_rejects_bad_degree() {
        let err = free_commutative_series(&[GeneratorSpec::new(0)], Characteristic::Two, 5);
        assert_eq!(err, Err(SeriesError::NonPositiveDegree(0)));
        let err = free_commutative_series(&[GeneratorSpec::new(-3)], Characteristic::Zero, 5);
        assert_eq!(err, Err(SeriesError::NonPositiveDegree(-3)));
    }

    #[test]
    fn generators_above_truncation_are_ignored() {
        let p = polynomial_series(&[50], 10).unwrap();
        assert_eq!(p, PoincareSeries::one(10));
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        // Polynomial ring on 30 generators of degree 1 at degree 200 is
        // C(229, 29), far above 2^64.
        let gens = vec![GeneratorSpec::with_multiplicity(1, 30)];
        let p = free_commutative_series(&gens, Characteristic::Two, 200).unwrap();
        assert!(i64::try_from(p.coeff(200)).is_err());
    }

    #[test]
    fn json_shape() {
        let a = s(-1, &[1, 0, 2]);
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(
            v.to_string(),
            r#"{"coefficients":[1,0,2],"min_degree":-1,"trunc_degree":1}"#
        );
        let back: PoincareSeries = serde_json::from_value(v).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn equality_ignores_leading_zeros_and_extra_precision() {
        let a = s(-2, &[0, 0, 1, 1, 1]);
        let b = s(0, &[1, 1]);
        assert_eq!(a, b);
        let c = s(0, &[1, 2]);
        assert_ne!(a, c);
    }

    #[test]
    fn display() {
        let a = s(-2, &[1, 0, 2, 1]);
        assert_eq!(a.to_string(), "t^-2 + 2 + t + O(t^2)");
    }
}
