//! Mod-2 homology of `QY = Ω^∞Σ^∞Y` as the free commutative algebra on
//! admissible Dyer–Lashof words of positive excess, the base-point component
//! of `Q(Y_+)`, and rational infinite-loop homology.
//!
//! Only graded dimensions are modelled; products are polynomial (char 2).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::graded::{
    free_commutative_series, Characteristic, GeneratorSpec, Parity, PoincareSeries,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Excess {
    Finite(i64),
    /// The empty word.
    Infinite,
}

impl Serialize for Excess {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Excess::Finite(e) => s.serialize_i64(*e),
            Excess::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `Q^I y` for `I = (i_1, …, i_s)` on a class `y` of degree `generator_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AdmissibleWord {
    pub indices: Vec<u32>,
    pub generator_degree: u32,
}

impl AdmissibleWord {
    pub fn new(indices: Vec<u32>, generator_degree: u32) -> Self {
        Self {
            indices,
            generator_degree,
        }
    }

    pub fn degree(&self) -> i64 {
        self.indices.iter().map(|&i| i as i64).sum::<i64>() + self.generator_degree as i64
    }

    pub fn is_admissible(&self) -> bool {
        self.indices.iter().all(|&i| i >= 1)
            && self.indices.windows(2).all(|w| w[0] <= 2 * w[1])
    }

    pub fn excess(&self) -> Excess {
        match self.indices.split_first() {
            None => Excess::Infinite,
            Some((&first, rest)) => Excess::Finite(
                first as i64
                    - rest.iter().map(|&i| i as i64).sum::<i64>()
                    - self.generator_degree as i64,
            ),
        }
    }

    /// Admissible with positive excess: indexes a polynomial generator.
    pub fn is_retained(&self) -> bool {
        self.is_admissible() && self.excess() > Excess::Finite(0)
    }
}

impl fmt::Display for AdmissibleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return write!(f, "y[{}]", self.generator_degree);
        }
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "Q^({})y[{}]", idx.join(","), self.generator_degree)
    }
}

/// Every retained word (including the empty one) on a class of degree
/// `generator_degree`, of total degree at most `max_degree`. Ordered by
/// degree, then lexicographically on the indices.
pub fn admissible_words(generator_degree: u32, max_degree: i64) -> Vec<AdmissibleWord> {
    let budget = max_degree - generator_degree as i64;
    if budget < 0 {
        return Vec::new();
    }
    // Build words right to left: i_s first, each new leading index bounded
    // by twice the previous one. The tail of a retained word is retained
    // (i_1 <= 2 i_2 and i_1 > i_2 + rest + g give i_2 > rest + g), so only
    // retained suffixes are extended.
    fn extend(
        suffix: &mut Vec<u32>,
        used: i64,
        budget: i64,
        g: u32,
        out: &mut Vec<AdmissibleWord>,
    ) {
        let cap = match suffix.last() {
            Some(&prev) => (2 * prev as i64).min(budget - used),
            None => budget - used,
        };
        for i in 1..=cap {
            suffix.push(i as u32);
            let w = AdmissibleWord::new(suffix.iter().rev().copied().collect(), g);
            if w.is_retained() {
                out.push(w);
                extend(suffix, used + i, budget, g, out);
            }
            suffix.pop();
        }
    }
    let mut out = vec![AdmissibleWord::new(Vec::new(), generator_degree)];
    extend(&mut Vec::new(), 0, budget, generator_degree, &mut out);
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.indices.cmp(&b.indices)));
    out
}

/// Additive basis of `H̃_*(Y; F2)` (or `H_{*>0}(X; Q)` with parities).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct HomologyInput {
    pub generators: Vec<GeneratorSpec>,
}

impl HomologyInput {
    pub fn from_degrees(degrees: &[i64]) -> Self {
        Self {
            generators: degrees.iter().map(|&d| GeneratorSpec::new(d)).collect(),
        }
    }

    /// One generator per unit of each positive-degree coefficient; degree 0
    /// and below are ignored (the reduced part of a connected space).
    pub fn from_series(series: &PoincareSeries) -> Result<Self> {
        let mut generators = Vec::new();
        for d in series.min_degree().max(1)..=series.trunc_degree() {
            let c = series.coeff(d);
            if c.is_negative() {
                return Err(Error::InvalidArgument(format!(
                    "negative dimension {c} in degree {d}"
                )));
            }
            let m = c
                .to_u32()
                .ok_or_else(|| Error::InvalidArgument(format!("dimension {c} too large")))?;
            if m > 0 {
                generators.push(GeneratorSpec::with_multiplicity(d, m));
            }
        }
        Ok(Self { generators })
    }

    fn degree_counts(&self) -> Result<BTreeMap<u32, u32>> {
        let mut counts = BTreeMap::new();
        for g in &self.generators {
            if g.degree < 1 {
                return Err(Error::InvalidArgument(format!(
                    "generator of degree {} for a connected space",
                    g.degree
                )));
            }
            *counts.entry(g.degree as u32).or_insert(0) += g.multiplicity;
        }
        Ok(counts)
    }
}

fn word_generators(counts: &BTreeMap<u32, u32>, max_degree: i64, skip_empty: bool) -> Vec<GeneratorSpec> {
    let mut gens = Vec::new();
    for (&d, &m) in counts {
        for w in admissible_words(d, max_degree) {
            if skip_empty && w.indices.is_empty() {
                continue;
            }
            gens.push(GeneratorSpec::with_multiplicity(w.degree(), m));
        }
    }
    gens
}

/// `H_*(QY; F2)` for connected `Y`.
pub fn q_homology_series(input: &HomologyInput, max_degree: i64) -> Result<PoincareSeries> {
    let counts = input.degree_counts()?;
    let gens = word_generators(&counts, max_degree, false);
    Ok(free_commutative_series(&gens, Characteristic::Two, max_degree)?)
}

/// `H_*(Q_0S^0; F2)`: one polynomial generator `x_I` per nonempty retained
/// word on a degree-0 class.
pub fn q0s0_series(max_degree: i64) -> Result<PoincareSeries> {
    let counts = BTreeMap::from([(0u32, 1u32)]);
    let gens = word_generators(&counts, max_degree, true);
    Ok(free_commutative_series(&gens, Characteristic::Two, max_degree)?)
}

/// Homology of the base-point component of `Q(Y_+) ≃ QY × Q_0S^0`.
pub fn q0_plus_series(input: &HomologyInput, max_degree: i64) -> Result<PoincareSeries> {
    let a = q_homology_series(input, max_degree)?;
    let b = q0s0_series(max_degree)?;
    Ok(a.mul(&b).truncate(max_degree))
}

/// Rational homology of an infinite loop space: graded-commutative free on
/// the positive-degree rational homology.
pub fn rational_omega_series(input: &HomologyInput, max_degree: i64) -> Result<PoincareSeries> {
    input.degree_counts()?;
    Ok(free_commutative_series(&input.generators, Characteristic::Zero, max_degree)?)
}

/// One polynomial generator of the free-algebra model: the word `Q^I` on the
/// `generator`-th basis class of `H̃_*(Y)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WordOn {
    pub generator: usize,
    pub indices: Vec<u32>,
}

/// A basis monomial `Π (Q^{I_k} y_{α_k})^{e_k}` of `H_*(QY; F2)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct FreeMonomial {
    pub factors: Vec<(WordOn, u32)>,
}

impl FreeMonomial {
    pub fn generator(index: usize) -> Self {
        Self::word(index, Vec::new())
    }

    pub fn word(index: usize, indices: Vec<u32>) -> Self {
        Self {
            factors: vec![(
                WordOn {
                    generator: index,
                    indices,
                },
                1,
            )],
        }
    }

    pub fn times(mut self, other: &FreeMonomial) -> Self {
        self.factors.extend(other.factors.iter().cloned());
        self
    }

    fn validate(&self, input: &HomologyInput) -> Result<()> {
        let degrees = expand_degrees(input)?;
        let mut seen = std::collections::BTreeSet::new();
        for (w, e) in &self.factors {
            let g = *degrees.get(w.generator).ok_or_else(|| {
                Error::InvalidArgument(format!("no generator y_{}", w.generator))
            })?;
            if *e == 0 {
                return Err(Error::InvalidArgument("zero exponent".into()));
            }
            if !seen.insert(w.clone()) {
                return Err(Error::InvalidArgument("repeated factor".into()));
            }
            if !AdmissibleWord::new(w.indices.clone(), g).is_retained() {
                return Err(Error::InvalidArgument(format!(
                    "Q^{:?} on a degree-{g} class is not a basis word",
                    w.indices
                )));
            }
        }
        Ok(())
    }
}

/// Degrees of the individual basis classes `y_0, y_1, …` (multiplicities
/// expanded in order).
pub fn expand_degrees(input: &HomologyInput) -> Result<Vec<u32>> {
    input.degree_counts()?;
    Ok(input
        .generators
        .iter()
        .flat_map(|g| std::iter::repeat_n(g.degree as u32, g.multiplicity as usize))
        .collect())
}

/// The stable homology suspension `H_*(QY) → H̃_*(Y)` on the basis. It
/// factors through the indecomposables and kills every `Q^I y` with `I`
/// nonempty, so only a bare generator survives.
pub fn suspension_projection(monomial: &FreeMonomial, input: &HomologyInput) -> Result<Option<usize>> {
    monomial.validate(input)?;
    match monomial.factors.as_slice() {
        [(w, 1)] if w.indices.is_empty() => Ok(Some(w.generator)),
        _ => Ok(None),
    }
}

/// All basis monomials of the model in degrees `1..=max_degree`.
pub fn basis_monomials(input: &HomologyInput, max_degree: i64) -> Result<Vec<FreeMonomial>> {
    let degrees = expand_degrees(input)?;
    let mut words = Vec::new();
    for (i, &g) in degrees.iter().enumerate() {
        for w in admissible_words(g, max_degree) {
            words.push((w.degree(), WordOn { generator: i, indices: w.indices }));
        }
    }
    fn go(
        words: &[(i64, WordOn)],
        left: i64,
        acc: &mut Vec<(WordOn, u32)>,
        out: &mut Vec<FreeMonomial>,
    ) {
        let Some(((d, w), rest)) = words.split_first() else {
            if !acc.is_empty() {
                out.push(FreeMonomial { factors: acc.clone() });
            }
            return;
        };
        go(rest, left, acc, out);
        let mut e = 1;
        while e as i64 * d <= left {
            acc.push((w.clone(), e));
            go(rest, left - e as i64 * d, acc, out);
            acc.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(&words, max_degree, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Degree of a basis monomial.
pub fn monomial_degree(monomial: &FreeMonomial, input: &HomologyInput) -> Result<i64> {
    let degrees = expand_degrees(input)?;
    monomial.validate(input)?;
    Ok(monomial
        .factors
        .iter()
        .map(|(w, e)| AdmissibleWord::new(w.indices.clone(), degrees[w.generator]).degree() * *e as i64)
        .sum())
}

/// Parity-tagged input for the rational case.
pub fn rational_input(even: &[i64], odd: &[i64]) -> HomologyInput {
    let mut generators: Vec<GeneratorSpec> = even
        .iter()
        .map(|&d| GeneratorSpec::with_parity(d, Parity::Even))
        .collect();
    generators.extend(odd.iter().map(|&d| GeneratorSpec::with_parity(d, Parity::Odd)));
    HomologyInput { generators }
}
