//! Universally defined characteristic classes: the `ν`-classes pulled back
//! from `BSO(m+1)` along `Bj`, rewritten in the `μ`-classes of `BO(m)`
//! subject only to `μ_e² = μ_{2e}`, plus the `ξ`-subalgebra series.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::classifying::{j_restriction, PresentedMap};
use crate::graded::{polynomial_series, PoincareSeries};
use crate::poly::{is_prime, Poly};
use crate::{Error, Result};

/// `μ_e^{2^k}` with `e` having an odd entry (or `e = 0`, the unit).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MuMonomial {
    pub base: Vec<u32>,
    pub power: u32,
}

impl MuMonomial {
    /// Canonical form of the monomial `w^e`.
    pub fn from_exponents(e: &[u32]) -> Self {
        let k = e
            .iter()
            .filter(|&&x| x != 0)
            .map(|x| x.trailing_zeros())
            .min()
            .unwrap_or(0);
        Self {
            base: e.iter().map(|&x| x >> k).collect(),
            power: k,
        }
    }

    /// `e·2^k`, the exponent vector of the underlying monomial.
    pub fn expanded(&self) -> Vec<u32> {
        self.base.iter().map(|&x| x << self.power).collect()
    }

    pub fn degree(&self) -> u64 {
        self.expanded()
            .iter()
            .enumerate()
            .map(|(i, &x)| (i as u64 + 1) * x as u64)
            .sum()
    }

    pub fn square(&self) -> Self {
        if self.base.iter().all(|&x| x == 0) {
            return self.clone();
        }
        Self {
            base: self.base.clone(),
            power: self.power + 1,
        }
    }
}

impl fmt::Display for MuMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base.iter().all(|&x| x == 0) {
            return f.write_str("1");
        }
        let idx: Vec<String> = self.base.iter().map(|x| x.to_string()).collect();
        write!(f, "μ_{{{}}}", idx.join(","))?;
        if self.power > 0 {
            write!(f, "^{}", 1u64 << self.power)?;
        }
        Ok(())
    }
}

/// An `F2`-linear combination of `μ`-monomials, stored by expanded exponent
/// vector and displayed in ascending lexicographic order of that vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MuExpression {
    terms: BTreeSet<Vec<u32>>,
}

impl MuExpression {
    /// Add one monomial (mod 2: a repeated monomial cancels).
    pub fn toggle(&mut self, expanded: Vec<u32>) {
        if !self.terms.remove(&expanded) {
            self.terms.insert(expanded);
        }
    }

    pub fn monomials(&self) -> Vec<MuMonomial> {
        self.terms.iter().map(|e| MuMonomial::from_exponents(e)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Frobenius: squaring a sum squares every term.
    pub fn square(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|e| e.iter().map(|x| 2 * x).collect())
                .collect(),
        }
    }

    /// Largest term in the degree-then-lex order of the polynomial ring.
    pub fn leading(&self) -> Option<&Vec<u32>> {
        self.terms.iter().next_back()
    }

    pub fn expanded_terms(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.terms.iter()
    }

    fn from_poly(p: &Poly) -> Self {
        let mut out = Self::default();
        for (m, c) in p.terms() {
            if c % 2 != 0 {
                out.toggle(m.exponents().iter().map(|&x| x as u32).collect());
            }
        }
        out
    }
}

impl fmt::Display for MuExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.monomials().iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

impl Serialize for MuExpression {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `ν_{i_2,…,i_{m+1}}`, the class of `w_2^{i_2}⋯w_{m+1}^{i_{m+1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NuClass {
    pub m: u32,
    pub exponents: Vec<u32>,
}

impl NuClass {
    pub fn new(m: u32, exponents: Vec<u32>) -> Result<Self> {
        if m == 0 || m % 2 == 1 {
            return Err(Error::InvalidArgument(format!("m must be even and positive, got {m}")));
        }
        if exponents.len() != m as usize {
            return Err(Error::InvalidArgument(format!(
                "ν for m={m} takes {m} exponents (on w_2…w_{}), got {}",
                m + 1,
                exponents.len()
            )));
        }
        let nu = Self { m, exponents };
        if nu.degree() == 0 {
            return Err(Error::InvalidArgument("ν of degree 0 is the unit".into()));
        }
        Ok(nu)
    }

    pub fn degree(&self) -> u64 {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &x)| (i as u64 + 2) * x as u64)
            .sum()
    }

    pub fn has_odd_entry(&self) -> bool {
        self.exponents.iter().any(|x| x % 2 == 1)
    }
}

impl fmt::Display for NuClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.exponents.iter().map(|x| x.to_string()).collect();
        write!(f, "ν_{{{}}}", idx.join(","))
    }
}

/// Reusable `Bj^*` for one `m`, so batches do not rebuild the map.
pub struct NuRewriter {
    m: u32,
    map: PresentedMap,
}

impl NuRewriter {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 || m % 2 == 1 {
            return Err(Error::InvalidArgument(format!("m must be even and positive, got {m}")));
        }
        Ok(Self {
            m,
            map: j_restriction(m / 2)?,
        })
    }

    /// `Bj^*(w_2^{i_2}⋯w_{m+1}^{i_{m+1}})` in `H^*(BO(m); F2)`.
    pub fn pullback(&self, nu: &NuClass) -> Result<Poly> {
        if nu.m != self.m {
            return Err(Error::InvalidArgument(format!("rewriter is for m={}, got m={}", self.m, nu.m)));
        }
        let src = Poly::monomial(self.map.source.ring(), &nu.exponents, 1)?;
        self.map.apply(&src)
    }

    pub fn rewrite(&self, nu: &NuClass) -> Result<MuExpression> {
        Ok(MuExpression::from_poly(&self.pullback(nu)?))
    }
}

pub fn nu_to_mu(m: u32, exponents: &[u32]) -> Result<MuExpression> {
    let nu = NuClass::new(m, exponents.to_vec())?;
    NuRewriter::new(m)?.rewrite(&nu)
}

/// `ν_e² = ν_{2e}` in the formal μ-calculus.
pub fn nu_square_check(m: u32, exponents: &[u32]) -> Result<bool> {
    let rw = NuRewriter::new(m)?;
    let nu = NuClass::new(m, exponents.to_vec())?;
    let doubled = NuClass::new(m, exponents.iter().map(|x| 2 * x).collect())?;
    Ok(rw.rewrite(&nu)?.square() == rw.rewrite(&doubled)?)
}

/// All `ν` of degree `d` for this `m`, in descending lexicographic order of
/// the exponent vector.
pub fn nu_classes(m: u32, d: u64) -> Result<Vec<NuClass>> {
    if m == 0 || m % 2 == 1 {
        return Err(Error::InvalidArgument(format!("m must be even and positive, got {m}")));
    }
    fn go(k: u64, last: u64, left: u64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k > last {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for e in 0..=left / k {
            prefix.push(e as u32);
            go(k + 1, last, left - e * k, prefix, out);
            prefix.pop();
        }
    }
    let mut vecs = Vec::new();
    if d > 0 {
        go(2, m as u64 + 1, d, &mut Vec::new(), &mut vecs);
    }
    vecs.sort_by(|a, b| b.cmp(a));
    Ok(vecs.into_iter().map(|exponents| NuClass { m, exponents }).collect())
}

/// Number of `ν` of degree `d` with at least one odd exponent: the
/// algebraically independent ones.
pub fn count_independent_nu(m: u32, d: u64) -> Result<usize> {
    Ok(nu_classes(m, d)?.iter().filter(|n| n.has_odd_entry()).count())
}

/// Rank over `F2` of the `μ`-expansions of the given expressions.
pub fn f2_rank(exprs: &[MuExpression]) -> usize {
    let basis: Vec<&Vec<u32>> = exprs
        .iter()
        .flat_map(|e| e.expanded_terms())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut rows: Vec<Vec<bool>> = exprs
        .iter()
        .map(|e| basis.iter().map(|b| e.terms.contains(*b)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..basis.len() {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] {
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x ^= p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub m: u32,
    pub degree: u64,
    pub count: usize,
    pub rank: usize,
    pub distinct_leading: usize,
}

impl IndependenceReport {
    pub fn independent(&self) -> bool {
        self.rank == self.count
    }
}

/// Rank of the rewritings of the odd-entry `ν` of degree `d`, and how many
/// distinct leading `μ`-monomials they have.
pub fn independence_report(m: u32, d: u64) -> Result<IndependenceReport> {
    let rw = NuRewriter::new(m)?;
    let exprs = nu_classes(m, d)?
        .iter()
        .filter(|n| n.has_odd_entry())
        .map(|n| rw.rewrite(n))
        .collect::<Result<Vec<_>>>()?;
    let leading: BTreeSet<_> = exprs.iter().filter_map(|e| e.leading()).collect();
    Ok(IndependenceReport {
        m,
        degree: d,
        count: exprs.len(),
        rank: f2_rank(&exprs),
        distinct_leading: leading.len(),
    })
}

/// Series of the polynomial subalgebra generated by the `ξ`-classes: one
/// generator in every degree `≥ 1` at `p = 2`, and in degrees `2m(p-1)` at
/// odd `p`.
pub fn xi_subalgebra_series(p: u64, max_degree: i64) -> Result<PoincareSeries> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let step = if p == 2 { 1 } else { 2 * (p as i64 - 1) };
    let degrees: Vec<i64> = (1..).map(|k| k * step).take_while(|&d| d <= max_degree).collect();
    Ok(polynomial_series(&degrees, max_degree)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub degree: u64,
    pub nu: Vec<String>,
    pub mu: Vec<String>,
    pub printed_nu: Vec<&'static str>,
    pub printed_mu: Vec<&'static str>,
    pub matches_printed: bool,
    pub warning: Option<String>,
}

/// The printed table for `m = 2`, degrees 2–9, transcribed verbatim.
pub const PRINTED_TABLE: [(u64, &[&str], &[&str]); 8] = [
    (2, &["ν_{1,0}"], &["μ_{0,1}+μ_{1,0}^2"]),
    (3, &["ν_{0,1}"], &["μ_{1,1}"]),
    (4, &[], &[]),
    (5, &["ν_{1,1}"], &["μ_{1,2}+μ_{3,1}"]),
    (6, &["ν_{3,0}"], &["μ_{0,3}+μ_{1,1}^2+μ_{4,1}+μ_{3,0}^2"]),
    (7, &["ν_{1,2}"], &["μ_{2,3}+μ_{2,1}^2"]),
    (8, &["ν_{2,1}"], &["μ_{2,3}+μ_{2,1}^2"]),
    (9, &["ν_{3,1}", "ν_{0,3}"], &["μ_{1,4}+μ_{3,3}+μ_{5,2}+μ_{7,1}", "μ_{3,3}"]),
];

/// Computed rows of the `m = 2` table next to the printed ones. Rows that
/// differ carry a warning quoting the printed entry.
pub fn reproduce_table() -> Result<Vec<TableRow>> {
    let rw = NuRewriter::new(2)?;
    let mut rows = Vec::new();
    for (degree, printed_nu, printed_mu) in PRINTED_TABLE {
        let classes: Vec<NuClass> = nu_classes(2, degree)?
            .into_iter()
            .filter(|n| n.has_odd_entry())
            .collect();
        let nu: Vec<String> = classes.iter().map(|n| n.to_string()).collect();
        let mu: Vec<String> = classes
            .iter()
            .map(|n| rw.rewrite(n).map(|e| e.to_string()))
            .collect::<Result<_>>()?;
        let matches_printed = nu == printed_nu && mu == printed_mu;
        let warning = (!matches_printed).then(|| {
            format!(
                "degree {degree}: printed row \"{} | {}\" disagrees with the computation; deg ν_{{a,b}} = 2a+3b, so the printed ν-labels of degrees 7 and 8 are swapped and both rows print the degree-8 expression",
                printed_nu.join(", "),
                printed_mu.join(", ")
            )
        });
        rows.push(TableRow {
            degree,
            nu,
            mu,
            printed_nu: printed_nu.to_vec(),
            printed_mu: printed_mu.to_vec(),
            matches_printed,
            warning,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_mu() {
        let m = MuMonomial::from_exponents(&[2, 0]);
        assert_eq!(m.to_string(), "μ_{1,0}^2");
        assert_eq!(MuMonomial::from_exponents(&[4, 8]).to_string(), "μ_{1,2}^4");
        assert_eq!(MuMonomial::from_exponents(&[3, 2]).to_string(), "μ_{3,2}");
        assert_eq!(MuMonomial::from_exponents(&[0, 0]).to_string(), "1");
        assert_eq!(MuMonomial::from_exponents(&[2, 2]).degree(), 6);
    }

    #[test]
    fn table_entries() {
        assert_eq!(nu_to_mu(2, &[1, 0]).unwrap().to_string(), "μ_{0,1}+μ_{1,0}^2");
        assert_eq!(nu_to_mu(2, &[0, 3]).unwrap().to_string(), "μ_{3,3}");
        assert_eq!(
            nu_to_mu(2, &[3, 1]).unwrap().to_string(),
            "μ_{1,4}+μ_{3,3}+μ_{5,2}+μ_{7,1}"
        );
        assert_eq!(nu_to_mu(2, &[2, 1]).unwrap().to_string(), "μ_{1,3}+μ_{5,1}");
        assert_eq!(nu_to_mu(2, &[1, 2]).unwrap().to_string(), "μ_{2,3}+μ_{2,1}^2");
        assert!(nu_to_mu(3, &[1, 0, 0]).is_err());
        assert!(nu_to_mu(2, &[0, 0]).is_err());
    }

    #[test]
    fn squaring_law() {
        assert!(nu_square_check(2, &[1, 0]).unwrap());
        assert!(nu_square_check(2, &[0, 1]).unwrap());
        assert!(nu_square_check(4, &[1, 0, 1, 0]).unwrap());
    }

    #[test]
    fn counts() {
        let c: Vec<usize> = (2..=9).map(|d| count_independent_nu(2, d).unwrap()).collect();
        assert_eq!(c, vec![1, 1, 0, 1, 1, 1, 1, 2]);
        assert_eq!(count_independent_nu(4, 2).unwrap(), 1);
        for d in 1..=12 {
            let r = independence_report(2, d).unwrap();
            assert!(r.independent(), "degree {d}");
            assert_eq!(r.distinct_leading, r.count);
        }
    }

    #[test]
    fn xi_series() {
        assert_eq!(
            xi_subalgebra_series(2, 6).unwrap().to_i64_vec(0, 6),
            vec![1, 1, 2, 3, 5, 7, 11]
        );
        assert_eq!(
            xi_subalgebra_series(3, 8).unwrap().to_i64_vec(0, 8),
            vec![1, 0, 0, 0, 1, 0, 0, 0, 2]
        );
        assert_eq!(xi_subalgebra_series(5, 8).unwrap().coeff(8), 1.into());
        assert!(xi_subalgebra_series(4, 8).is_err());
    }

    #[test]
    fn table_matches_except_rows_seven_and_eight() {
        let rows = reproduce_table().unwrap();
        for r in &rows {
            assert_eq!(r.matches_printed, !(r.degree == 7 || r.degree == 8), "{r:?}");
        }
        assert_eq!(rows[5].mu, vec!["μ_{1,3}+μ_{5,1}"]);
        assert_eq!(rows[6].mu, vec!["μ_{2,3}+μ_{2,1}^2"]);
        assert!(rows[2].nu.is_empty());
    }
}
