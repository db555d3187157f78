//! Sparse multivariate polynomials over `F_p` (or `Z`, written as modulus
//! `0`) with weighted variable degrees.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose order is
//! weighted degree first and then lexicographic on the exponent vector
//! (`x_1 > x_2 > …`). Printing and serialization walk the map from the
//! largest monomial down, so output is stable.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Largest exponent a single variable may carry.
pub const MAX_EXPONENT: u32 = u16::MAX as u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("operands live in different variable contexts")]
    ContextMismatch,
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("exponent of {0} exceeds {MAX_EXPONENT}")]
    ExponentOverflow(String),
    #[error("integer coefficient overflow")]
    CoefficientOverflow,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("duplicate variable name {0}")]
    DuplicateVariable(String),
    #[error("variable {0} must have positive degree")]
    NonPositiveDegree(String),
    #[error("exponent vector has length {got}, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("not symmetric: swapping {0} and {1} changes the polynomial")]
    NotSymmetric(String, String),
    #[error("symmetric reduction needs all variables of one degree")]
    UnequalVariableDegrees,
    #[error("image of {var} has degree {got:?}, expected {expected}")]
    ImageDegree {
        var: String,
        expected: u64,
        got: Option<u64>,
    },
    #[error("ring map needs {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("target ring for symmetric reduction has {got} variables, expected {expected}")]
    TargetArity { expected: usize, got: usize },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VariableSpec {
    pub name: String,
    pub degree: u32,
}

impl VariableSpec {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Self {
            name: name.into(),
            degree,
        }
    }
}

/// Coefficient domain plus an ordered list of weighted variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    modulus: u64,
    vars: Vec<VariableSpec>,
}

impl PolyRing {
    /// `modulus` is a prime `p` for `F_p`, or `0` for the integers.
    pub fn new(modulus: u64, vars: Vec<VariableSpec>) -> Result<Arc<Self>, PolyError> {
        if modulus != 0 && !is_prime(modulus) {
            return Err(PolyError::NotPrime(modulus));
        }
        if modulus >= (1 << 31) {
            return Err(PolyError::NotPrime(modulus));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.degree == 0 {
                return Err(PolyError::NonPositiveDegree(v.name.clone()));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(PolyError::DuplicateVariable(v.name.clone()));
            }
        }
        Ok(Arc::new(Self { modulus, vars }))
    }

    /// Variables `prefix_1 … prefix_n`, all of degree `degree`.
    pub fn uniform(modulus: u64, prefix: &str, n: usize, degree: u32) -> Result<Arc<Self>, PolyError> {
        Self::new(
            modulus,
            (1..=n)
                .map(|i| VariableSpec::new(format!("{prefix}_{i}"), degree))
                .collect(),
        )
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn vars(&self) -> &[VariableSpec] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    fn weighted_degree(&self, exps: &[u16]) -> u64 {
        exps.iter()
            .zip(&self.vars)
            .map(|(&e, v)| e as u64 * v.degree as u64)
            .sum()
    }

    /// Bring an integer into canonical range: `[0, p)` for `F_p`, unchanged
    /// for `Z`.
    fn reduce(&self, c: i128) -> Result<i64, PolyError> {
        if self.modulus == 0 {
            i64::try_from(c).map_err(|_| PolyError::CoefficientOverflow)
        } else {
            Ok(c.rem_euclid(self.modulus as i128) as i64)
        }
    }
}

/// Exponent vector tagged with its weighted degree. The derived order
/// compares degree first, then exponents lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u64,
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }
}

#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, i64>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::monomial(ring, &vec![0; ring.nvars()], c).expect("constant monomial is well formed")
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    /// The `i`-th variable (0-based).
    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        let mut exps = vec![0u32; ring.nvars()];
        exps[i] = 1;
        Self::monomial(ring, &exps, 1).expect("single variable is well formed")
    }

    pub fn var_named(ring: &Arc<PolyRing>, name: &str) -> Result<Self, PolyError> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Arc<PolyRing>, exps: &[u32], c: i64) -> Result<Self, PolyError> {
        if exps.len() != ring.nvars() {
            return Err(PolyError::ArityMismatch {
                expected: ring.nvars(),
                got: exps.len(),
            });
        }
        let mut small = Vec::with_capacity(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            if e > MAX_EXPONENT {
                return Err(PolyError::ExponentOverflow(ring.vars[i].name.clone()));
            }
            small.push(e as u16);
        }
        let mut p = Self::zero(ring);
        let c = ring.reduce(c as i128)?;
        if c != 0 {
            p.terms.insert(
                Monomial {
                    degree: ring.weighted_degree(&small),
                    exps: small.into_boxed_slice(),
                },
                c,
            );
        }
        Ok(p)
    }

    /// Build from `(exponents, coefficient)` pairs; like terms are combined.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: &[(Vec<u32>, i64)]) -> Result<Self, PolyError> {
        let mut acc = Self::zero(ring);
        for (e, c) in terms {
            acc = acc.add(&Self::monomial(ring, e, *c)?)?;
        }
        Ok(acc)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial to the smallest.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> + '_ {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, i64)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coefficient(&self, exps: &[u32]) -> i64 {
        let small: Vec<u16> = exps.iter().map(|&e| e.min(MAX_EXPONENT) as u16).collect();
        let key = Monomial {
            degree: self.ring.weighted_degree(&small),
            exps: small.into_boxed_slice(),
        };
        self.terms.get(&key).copied().unwrap_or(0)
    }

    /// Weighted degree if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree;
        it.all(|m| m.degree == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring.modulus != other.ring.modulus {
            return Err(PolyError::ModulusMismatch(self.ring.modulus, other.ring.modulus));
        }
        if !Arc::ptr_eq(&self.ring, &other.ring) && self.ring.vars != other.ring.vars {
            return Err(PolyError::ContextMismatch);
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: i64) -> Result<(), PolyError> {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                let c = self.ring.reduce(c as i128)?;
                if c != 0 {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = self.ring.reduce(*o.get() as i128 + c as i128)?;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, &c) in &self.terms {
            let c = self.ring.reduce(-(c as i128)).expect("negation stays in range");
            out.terms.insert(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Result<Self, PolyError> {
        let mut out = Self::zero(&self.ring);
        for (m, &c) in &self.terms {
            let c = self.ring.reduce(c as i128 * k as i128)?;
            if c != 0 {
                out.terms.insert(m.clone(), c);
            }
        }
        Ok(out)
    }

    fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Result<Monomial, PolyError> {
        let mut exps = Vec::with_capacity(a.exps.len());
        for (i, (&x, &y)) in a.exps.iter().zip(b.exps.iter()).enumerate() {
            exps.push(
                x.checked_add(y)
                    .ok_or_else(|| PolyError::ExponentOverflow(self.ring.vars[i].name.clone()))?,
            );
        }
        Ok(Monomial {
            degree: a.degree + b.degree,
            exps: exps.into_boxed_slice(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut acc: HashMap<Monomial, i128> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        let p = self.ring.modulus as i128;
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let m = self.mul_monomials(ma, mb)?;
                let e = acc.entry(m).or_insert(0);
                if p == 0 {
                    *e = e
                        .checked_add(ca as i128 * cb as i128)
                        .ok_or(PolyError::CoefficientOverflow)?;
                } else {
                    *e = (*e + ca as i128 * cb as i128) % p;
                }
            }
        }
        let mut out = Self::zero(&self.ring);
        for (m, c) in acc {
            let c = self.ring.reduce(c)?;
            if c != 0 {
                out.terms.insert(m, c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Result<Self, PolyError> {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Swap two variables (used for symmetry checks).
    pub fn swap_variables(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, &c) in &self.terms {
            let mut exps = m.exps.clone();
            exps.swap(i, j);
            out.terms.insert(
                Monomial {
                    degree: m.degree,
                    exps,
                },
                c,
            );
        }
        out
    }

    /// Keep only the terms of weighted degree `d`.
    pub fn homogeneous_part(&self, d: u64) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, &c) in &self.terms {
            if m.degree == d {
                out.terms.insert(m.clone(), c);
            }
        }
        out
    }

    /// Reinterpret in another ring with the same variables and modulus.
    pub fn with_ring(&self, ring: &Arc<PolyRing>) -> Result<Self, PolyError> {
        if ring.modulus != self.ring.modulus {
            return Err(PolyError::ModulusMismatch(self.ring.modulus, ring.modulus));
        }
        if ring.vars.len() != self.ring.vars.len()
            || ring
                .vars
                .iter()
                .zip(&self.ring.vars)
                .any(|(a, b)| a.degree != b.degree)
        {
            return Err(PolyError::ContextMismatch);
        }
        Ok(Self {
            ring: ring.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Coefficient rendered for display; integers show their sign.
    fn display_coeff(&self, c: i64) -> (bool, u64) {
        (c < 0, c.unsigned_abs())
    }

    fn write_monomial(&self, f: &mut impl fmt::Write, m: &Monomial) -> fmt::Result {
        let mut first = true;
        for (e, v) in m.exps.iter().zip(&self.ring.vars) {
            if *e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{}", v.name)?;
            } else {
                write!(f, "{}^{}", v.name, e)?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    /// Canonical text: `w_1^2*w_2 + w_3`, largest monomial first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let (negative, mag) = self.display_coeff(c);
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_unit = m.exps.iter().all(|&e| e == 0);
            if mag != 1 || is_unit {
                write!(f, "{mag}")?;
                if !is_unit {
                    f.write_str("*")?;
                }
            }
            if !is_unit {
                self.write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let names: Vec<&str> = self.ring.vars.iter().map(|v| v.name.as_str()).collect();
        let terms: Vec<(Vec<u16>, i64)> = self.terms().map(|(m, c)| (m.exps.to_vec(), c)).collect();
        let mut s = serializer.serialize_struct("Poly", 3)?;
        s.serialize_field("modulus", &self.ring.modulus)?;
        s.serialize_field("variables", &names)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

/// A degree-preserving substitution homomorphism between polynomial rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: Arc<PolyRing>,
    target: Arc<PolyRing>,
    images: Vec<Poly>,
}

impl RingMap {
    /// Each image must be zero or homogeneous of its source variable's degree.
    pub fn new(
        source: &Arc<PolyRing>,
        target: &Arc<PolyRing>,
        images: Vec<Poly>,
    ) -> Result<Self, PolyError> {
        if source.modulus != target.modulus {
            return Err(PolyError::ModulusMismatch(source.modulus, target.modulus));
        }
        if images.len() != source.nvars() {
            return Err(PolyError::ImageCount {
                expected: source.nvars(),
                got: images.len(),
            });
        }
        let mut fixed = Vec::with_capacity(images.len());
        for (img, v) in images.into_iter().zip(&source.vars) {
            let img = if Arc::ptr_eq(img.ring(), target) {
                img
            } else {
                img.with_ring(target)?
            };
            if !img.is_zero() && img.homogeneous_degree() != Some(v.degree as u64) {
                return Err(PolyError::ImageDegree {
                    var: v.name.clone(),
                    expected: v.degree as u64,
                    got: img.homogeneous_degree(),
                });
            }
            fixed.push(img);
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            images: fixed,
        })
    }

    /// Build from `name ↦ image` pairs; unnamed variables map to themselves
    /// when the target has a variable of the same name, else to zero.
    pub fn from_named(
        source: &Arc<PolyRing>,
        target: &Arc<PolyRing>,
        named: &[(&str, Poly)],
    ) -> Result<Self, PolyError> {
        for (name, _) in named {
            if source.index_of(name).is_none() {
                return Err(PolyError::UnknownVariable(name.to_string()));
            }
        }
        let images = source
            .vars
            .iter()
            .map(|v| {
                if let Some((_, p)) = named.iter().find(|(n, _)| *n == v.name) {
                    Ok(p.clone())
                } else if let Some(j) = target.index_of(&v.name) {
                    Ok(Poly::var(target, j))
                } else {
                    Ok(Poly::zero(target))
                }
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        Self::new(source, target, images)
    }

    pub fn identity(ring: &Arc<PolyRing>) -> Self {
        let images = (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect();
        Self {
            source: ring.clone(),
            target: ring.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Arc<PolyRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PolyRing> {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image_of(&self, name: &str) -> Result<&Poly, PolyError> {
        let i = self
            .source
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(&self.images[i])
    }

    /// Substitute every variable of `p` by its image.
    pub fn apply(&self, p: &Poly) -> Result<Poly, PolyError> {
        if p.ring.modulus != self.source.modulus {
            return Err(PolyError::ModulusMismatch(p.ring.modulus, self.source.modulus));
        }
        if !Arc::ptr_eq(&p.ring, &self.source) && p.ring.vars != self.source.vars {
            return Err(PolyError::ContextMismatch);
        }
        let mut powers: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut out = Poly::zero(&self.target);
        for (m, &c) in &p.terms {
            let mut term = Poly::constant(&self.target, c);
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = match powers.get(&(i, e)) {
                    Some(pw) => pw.clone(),
                    None => {
                        let pw = self.images[i].pow(e as u32)?;
                        powers.insert((i, e), pw.clone());
                        pw
                    }
                };
                term = term.mul(&pw)?;
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &RingMap) -> Result<RingMap, PolyError> {
        let images = self
            .images
            .iter()
            .map(|img| other.apply(img))
            .collect::<Result<Vec<_>, _>>()?;
        RingMap::new(&self.source, &other.target, images)
    }
}

/// `σ_0, …, σ_k` of the given polynomials (all in one ring).
pub fn elementary_symmetric_of(
    ring: &Arc<PolyRing>,
    inputs: &[Poly],
    k: usize,
) -> Result<Vec<Poly>, PolyError> {
    let mut e = vec![Poly::zero(ring); k + 1];
    e[0] = Poly::one(ring);
    for (count, x) in inputs.iter().enumerate() {
        for j in (1..=k.min(count + 1)).rev() {
            let add = e[j - 1].mul(x)?;
            e[j] = e[j].add(&add)?;
        }
    }
    Ok(e)
}

/// `σ_k` of the variables of `ring`.
pub fn elementary_symmetric(ring: &Arc<PolyRing>, k: usize) -> Result<Poly, PolyError> {
    let vars: Vec<Poly> = (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect();
    Ok(elementary_symmetric_of(ring, &vars, k)?.pop().expect("k+1 entries"))
}

/// Invariance under every adjacent transposition of the variables.
pub fn is_symmetric(p: &Poly) -> bool {
    symmetry_witness(p).is_none()
}

fn symmetry_witness(p: &Poly) -> Option<(usize, usize)> {
    let n = p.ring.nvars();
    (0..n.saturating_sub(1)).map(|i| (i, i + 1)).find(|&(i, j)| p.swap_variables(i, j) != *p)
}

/// Write a symmetric polynomial in `t_1 … t_n` as a polynomial in the
/// elementary symmetric functions. `target` supplies the names and weights
/// of `e_1 … e_n` (its `i`-th variable stands for `σ_i`).
///
/// Classical algorithm: repeatedly take the largest monomial
/// `t^a` (`a` non-increasing), record `c·e_1^{a_1-a_2}⋯e_n^{a_n}` and
/// subtract its expansion.
pub fn symmetrize_reduce(p: &Poly, target: &Arc<PolyRing>) -> Result<Poly, PolyError> {
    let ring = p.ring.clone();
    let n = ring.nvars();
    if target.nvars() != n {
        return Err(PolyError::TargetArity {
            expected: n,
            got: target.nvars(),
        });
    }
    if target.modulus != ring.modulus {
        return Err(PolyError::ModulusMismatch(ring.modulus, target.modulus));
    }
    if let Some(first) = ring.vars.first() {
        if ring.vars.iter().any(|v| v.degree != first.degree) {
            return Err(PolyError::UnequalVariableDegrees);
        }
        for (i, v) in target.vars.iter().enumerate() {
            if v.degree != first.degree * (i as u32 + 1) {
                return Err(PolyError::ImageDegree {
                    var: v.name.clone(),
                    expected: (first.degree * (i as u32 + 1)) as u64,
                    got: Some(v.degree as u64),
                });
            }
        }
    }
    if let Some((i, j)) = symmetry_witness(p) {
        return Err(PolyError::NotSymmetric(
            ring.vars[i].name.clone(),
            ring.vars[j].name.clone(),
        ));
    }

    let sigmas: Vec<Poly> = {
        let vars: Vec<Poly> = (0..n).map(|i| Poly::var(&ring, i)).collect();
        elementary_symmetric_of(&ring, &vars, n)?
    };
    let mut sigma_powers: HashMap<(usize, u32), Poly> = HashMap::new();
    let mut rest = p.clone();
    let mut result = Poly::zero(target);
    while let Some((lead, c)) = rest.leading_term().map(|(m, c)| (m.clone(), c)) {
        let a = lead.exponents();
        let mut e_exps = vec![0u32; n];
        for i in 0..n {
            let next = if i + 1 < n { a[i + 1] } else { 0 };
            // Symmetric input guarantees a non-increasing leading exponent.
            debug_assert!(a[i] >= next);
            e_exps[i] = (a[i] - next) as u32;
        }
        let mut expansion = Poly::constant(&ring, c);
        for (i, &k) in e_exps.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let pw = match sigma_powers.get(&(i + 1, k)) {
                Some(pw) => pw.clone(),
                None => {
                    let pw = sigmas[i + 1].pow(k)?;
                    sigma_powers.insert((i + 1, k), pw.clone());
                    pw
                }
            };
            expansion = expansion.mul(&pw)?;
        }
        rest = rest.sub(&expansion)?;
        result = result.add(&Poly::monomial(target, &e_exps, c)?)?;
    }
    Ok(result)
}

/// The map `e_i ↦ σ_i(t_1…t_n)` from `e_ring` into `t_ring`.
pub fn elementary_substitution(
    e_ring: &Arc<PolyRing>,
    t_ring: &Arc<PolyRing>,
) -> Result<RingMap, PolyError> {
    let vars: Vec<Poly> = (0..t_ring.nvars()).map(|i| Poly::var(t_ring, i)).collect();
    let sig = elementary_symmetric_of(t_ring, &vars, e_ring.nvars())?;
    RingMap::new(e_ring, t_ring, sig.into_iter().skip(1).collect())
}
