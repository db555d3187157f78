//! Cohomology rings of classifying spaces of the classical families and the
//! maps between them induced by group homomorphisms.
//!
//! Integral torsion is not modelled: over odd primes and `Q` the
//! presentations are the torsion-free part. Rational presentations use
//! integer-coefficient polynomials (modulus 0); every map built here has
//! integral images, so nothing is lost.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::graded::{polynomial_series, PoincareSeries};
use crate::poly::{
    elementary_symmetric_of, is_prime, symmetrize_reduce, Poly, PolyRing, RingMap, VariableSpec,
};
use crate::{binomial, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    O,
    SO,
    U,
    SU,
    Sp,
    /// `BU(1)^n`, generators of degree 2.
    Torus,
    /// `BO(1)^n = B(Z/2)^n`, generators of degree 1 (mod 2 only).
    ElemAbelian2,
    /// `BSp(1)^n`, generators of degree 4.
    SpTorus,
}

impl Family {
    /// Real dimension of the defining representation per unit of rank:
    /// 1 for O/SO, 2 for U/SU, 4 for Sp.
    pub fn degree_multiplier(self) -> u32 {
        match self {
            Family::O | Family::SO | Family::ElemAbelian2 => 1,
            Family::U | Family::SU | Family::Torus => 2,
            Family::Sp | Family::SpTorus => 4,
        }
    }

    fn class_prefix(self) -> &'static str {
        match self {
            Family::O | Family::SO => "w",
            Family::U | Family::SU => "c",
            Family::Sp => "p",
            Family::Torus | Family::ElemAbelian2 | Family::SpTorus => "t",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::O => "O",
            Family::SO => "SO",
            Family::U => "U",
            Family::SU => "SU",
            Family::Sp => "Sp",
            Family::Torus => "U(1)^",
            Family::ElemAbelian2 => "O(1)^",
            Family::SpTorus => "Sp(1)^",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "o" => Ok(Family::O),
            "so" => Ok(Family::SO),
            "u" => Ok(Family::U),
            "su" => Ok(Family::SU),
            "sp" => Ok(Family::Sp),
            "torus" | "t" => Ok(Family::Torus),
            "elem2" | "z2" | "elemabelian2" => Ok(Family::ElemAbelian2),
            "sptorus" => Ok(Family::SpTorus),
            _ => Err(Error::InvalidArgument(format!("unknown family {s}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Coefficient {
    F2,
    /// `F_p` for an odd prime `p`.
    Fp(u64),
    Q,
}

impl Coefficient {
    /// Validated `F_p` (any prime, 2 maps to [`Coefficient::F2`]).
    pub fn prime(p: u64) -> Result<Self> {
        match p {
            2 => Ok(Coefficient::F2),
            p if is_prime(p) => Ok(Coefficient::Fp(p)),
            p => Err(Error::InvalidArgument(format!("{p} is not prime"))),
        }
    }

    /// Polynomial modulus: the characteristic, with 0 for `Q`.
    pub fn modulus(self) -> u64 {
        match self {
            Coefficient::F2 => 2,
            Coefficient::Fp(p) => p,
            Coefficient::Q => 0,
        }
    }

    pub fn is_char_two(self) -> bool {
        self == Coefficient::F2
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::F2 => f.write_str("F2"),
            Coefficient::Fp(p) => write!(f, "F{p}"),
            Coefficient::Q => f.write_str("Q"),
        }
    }
}

impl FromStr for Coefficient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let l = s.to_ascii_lowercase();
        if l == "q" {
            return Ok(Coefficient::Q);
        }
        let digits = l.strip_prefix('f').unwrap_or(&l);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("unknown coefficient {s}")))?;
        Coefficient::prime(p)
    }
}

/// A presentation of `H^*(BG(n); k)` as a polynomial ring, possibly with the
/// single relation `χ² = p_m` for `BSO(2m)` away from 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    pub family: Family,
    pub rank: u32,
    pub coefficient: Coefficient,
    ring: Arc<PolyRing>,
    relations: Vec<Poly>,
    note: Option<&'static str>,
}

const BSO0_NOTE: &str =
    "rank 0: the Grassmannian model gives BSO(0) = S^0; only the ring of a point is returned";
const BSU0_NOTE: &str =
    "rank 0: the Grassmannian model gives BSU(0) = S^1; only the ring of a point is returned";

impl RingPresentation {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[VariableSpec] {
        self.ring.vars()
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    /// Remark attached to degenerate rank-0 cases.
    pub fn note(&self) -> Option<&'static str> {
        self.note
    }

    pub fn generator(&self, name: &str) -> Result<Poly> {
        Ok(Poly::var_named(&self.ring, name)?)
    }

    /// Poincaré series: free on the generators, or for `χ² = p_m` the free
    /// series on the `p_i` times `1 + t^{2m}`.
    pub fn poincare_series(&self, max_degree: i64) -> Result<PoincareSeries> {
        if let Some(chi) = self.ring.index_of("chi") {
            let degrees: Vec<i64> = self
                .ring
                .vars()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != chi)
                .map(|(_, v)| v.degree as i64)
                .collect();
            let base = polynomial_series(&degrees, max_degree)?;
            let chi_deg = self.ring.vars()[chi].degree as i64;
            let one_plus = PoincareSeries::one(max_degree)
                .add(&PoincareSeries::monomial(chi_deg, 1, max_degree));
            return Ok(base.mul(&one_plus));
        }
        let degrees: Vec<i64> = self.ring.vars().iter().map(|v| v.degree as i64).collect();
        Ok(polynomial_series(&degrees, max_degree)?)
    }

    /// Short label such as `H^*(BO(3);F2)`.
    pub fn label(&self) -> String {
        match self.family {
            Family::Torus | Family::ElemAbelian2 | Family::SpTorus => {
                format!("H^*(B{}{};{})", self.family, self.rank, self.coefficient)
            }
            f => format!("H^*(B{}({});{})", f, self.rank, self.coefficient),
        }
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.ring.vars().iter().map(|v| v.name.as_str()).collect();
        let k = match self.coefficient {
            Coefficient::Q => "Q".to_string(),
            c => c.to_string(),
        };
        write!(f, "{} = {}[{}]", self.label(), k, gens.join(","))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for RingPresentation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("RingPresentation", 6)?;
        s.serialize_field("family", &self.family.to_string())?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("coefficient", &self.coefficient.to_string())?;
        s.serialize_field("generators", self.ring.vars())?;
        let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        s.serialize_field("relations", &rels)?;
        s.serialize_field("note", &self.note)?;
        s.end()
    }
}

fn build(
    family: Family,
    rank: u32,
    coefficient: Coefficient,
    vars: Vec<VariableSpec>,
    note: Option<&'static str>,
) -> Result<RingPresentation> {
    let ring = PolyRing::new(coefficient.modulus(), vars)?;
    Ok(RingPresentation {
        family,
        rank,
        coefficient,
        ring,
        relations: Vec::new(),
        note,
    })
}

fn classes(prefix: &str, range: std::ops::RangeInclusive<u32>, mult: u32) -> Vec<VariableSpec> {
    range
        .map(|i| VariableSpec::new(format!("{prefix}_{i}"), i * mult))
        .collect()
}

/// `H^*(BG(n); k)` for the supported `(family, coefficient)` pairs.
pub fn cohomology_presentation(
    family: Family,
    n: u32,
    coefficient: Coefficient,
) -> Result<RingPresentation> {
    let d = family.degree_multiplier();
    let prefix = family.class_prefix();
    match (family, coefficient) {
        (Family::U, _) | (Family::Sp, _) => build(family, n, coefficient, classes(prefix, 1..=n, d), None),
        (Family::SU, _) => {
            let note = (n == 0).then_some(BSU0_NOTE);
            build(family, n, coefficient, classes(prefix, 2..=n, d), note)
        }
        (Family::Torus, _) | (Family::SpTorus, _) | (Family::ElemAbelian2, Coefficient::F2) => {
            let vars = (1..=n).map(|i| VariableSpec::new(format!("t_{i}"), d)).collect();
            build(family, n, coefficient, vars, None)
        }
        (Family::O, Coefficient::F2) => build(family, n, coefficient, classes("w", 1..=n, 1), None),
        (Family::SO, Coefficient::F2) => {
            let note = (n == 0).then_some(BSO0_NOTE);
            build(family, n, coefficient, classes("w", 2..=n, 1), note)
        }
        (Family::O, _) => build(family, n, coefficient, classes("p", 1..=n / 2, 4), None),
        (Family::SO, _) => {
            let m = n / 2;
            if n == 0 {
                return build(family, n, coefficient, Vec::new(), Some(BSO0_NOTE));
            }
            if n % 2 == 1 {
                return build(family, n, coefficient, classes("p", 1..=m, 4), None);
            }
            let mut vars = classes("p", 1..=m, 4);
            vars.push(VariableSpec::new("chi", 2 * m));
            let mut pres = build(family, n, coefficient, vars, None)?;
            let chi = pres.generator("chi")?;
            let pm = pres.generator(&format!("p_{m}"))?;
            pres.relations.push(chi.pow(2)?.sub(&pm)?);
            Ok(pres)
        }
        (Family::ElemAbelian2, c) => Err(Error::Unsupported(format!(
            "B(Z/2)^n is only catalogued mod 2, not over {c}"
        ))),
    }
}

/// A ring map together with the presentations it goes between.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedMap {
    pub name: String,
    pub source: RingPresentation,
    pub target: RingPresentation,
    pub map: RingMap,
}

impl PresentedMap {
    fn new(name: String, source: RingPresentation, target: RingPresentation, images: Vec<Poly>) -> Result<Self> {
        let map = RingMap::new(source.ring(), target.ring(), images)?;
        Ok(Self {
            name,
            source,
            target,
            map,
        })
    }

    pub fn image_of(&self, generator: &str) -> Result<&Poly> {
        Ok(self.map.image_of(generator)?)
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        Ok(self.map.apply(p)?)
    }

    /// `(generator, image)` pairs in source order.
    pub fn assignments(&self) -> Vec<(String, String)> {
        self.source
            .generators()
            .iter()
            .zip(self.map.images())
            .map(|(v, img)| (v.name.clone(), img.to_string()))
            .collect()
    }
}

impl Serialize for PresentedMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("PresentedMap", 4)?;
        s.serialize_field("name", &self.name)?;
        s.serialize_field("source", &self.source)?;
        s.serialize_field("target", &self.target)?;
        let images: std::collections::BTreeMap<String, String> = self.assignments().into_iter().collect();
        s.serialize_field("images", &images)?;
        s.end()
    }
}

/// Splitting-principle map `H^*(BG(n)) → H^*(BG(1)^n)`, `x_i ↦ σ_i(t)`.
/// Injectivity is a theorem and is not checked here.
pub fn detection_map(family: Family, n: u32, coefficient: Coefficient) -> Result<PresentedMap> {
    let target_family = match (family, coefficient) {
        (Family::O, Coefficient::F2) => Family::ElemAbelian2,
        (Family::U, _) => Family::Torus,
        (Family::Sp, _) => Family::SpTorus,
        (f, c) => {
            return Err(Error::Unsupported(format!(
                "no detection map for {f} over {c}"
            )))
        }
    };
    let source = cohomology_presentation(family, n, coefficient)?;
    let target = cohomology_presentation(target_family, n, coefficient)?;
    let ts: Vec<Poly> = (0..n as usize).map(|i| Poly::var(target.ring(), i)).collect();
    let sigmas = elementary_symmetric_of(target.ring(), &ts, n as usize)?;
    let name = format!("detection B{family}(1)^{n} -> B{family}({n})");
    PresentedMap::new(name, source, target, sigmas.into_iter().skip(1).collect())
}

/// Map induced by the standard inclusion `G(n-1) ⊂ G(n)`: the top class goes
/// to zero, every class that still exists goes to itself.
pub fn standard_restriction(family: Family, n: u32, coefficient: Coefficient) -> Result<PresentedMap> {
    if n == 0 {
        return Err(Error::InvalidArgument("standard restriction needs n >= 1".into()));
    }
    if matches!(family, Family::Torus | Family::ElemAbelian2 | Family::SpTorus) {
        return Err(Error::Unsupported(format!("no standard restriction for {family}")));
    }
    let source = cohomology_presentation(family, n, coefficient)?;
    let target = cohomology_presentation(family, n - 1, coefficient)?;
    let map = RingMap::from_named(source.ring(), target.ring(), &[])?;
    let name = format!("restriction {family}({}) -> {family}({n})", n - 1);
    Ok(PresentedMap {
        name,
        source,
        target,
        map,
    })
}

/// How a restriction map is computed. Both routes give the same map; the
/// second is the textbook symmetric-function reduction and serves as a
/// cross-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    /// Expand the total class `Π(1 + a + t_i)·(1 + b)^r` directly in the
    /// elementary basis. Fast for any rank.
    #[default]
    ClosedForm,
    /// Expand `σ_k` of the shifted roots in the `t_i` and reduce to the
    /// elementary basis.
    SymmetricReduction,
}

/// Description of the roots `t_i + α·e_1` (`i ≤ n`) followed by `r` extra
/// roots `β·e_1`, whose `σ_k` we want in terms of `e_1 … e_n`.
struct ShiftedRoots {
    n: usize,
    alpha: i64,
    extra: Vec<i64>,
}

impl ShiftedRoots {
    /// Degree-`k` part of `Π_i (1 + α e_1 + t_i) · Π_extra (1 + β e_1)`,
    /// i.e. `Σ_j e_j · [x^{k-j}] (1+αx)^{n-j} Π(1+βx)`.
    fn closed_form(&self, target: &Arc<PolyRing>, k: usize) -> Result<Poly> {
        let e1 = Poly::var(target, 0);
        let mut out = Poly::zero(target);
        for j in 0..=k.min(self.n) {
            let power = k - j;
            // coefficient of x^power in (1+αx)^{n-j} Π(1+βx), reduced as we go
            let m = target.modulus() as i128;
            let overflow = || Error::from(crate::PolyError::CoefficientOverflow);
            let norm = |v: i128| if m > 0 { v.rem_euclid(m) } else { v };
            let mut alpha_pow: i128 = 1;
            let mut poly_x = Vec::with_capacity(power + 1);
            for u in 0..=power {
                let b = i128::try_from(binomial((self.n - j) as u64, u as u64)).map_err(|_| overflow())?;
                poly_x.push(norm(norm(b).checked_mul(alpha_pow).ok_or_else(overflow)?));
                alpha_pow = norm(alpha_pow.checked_mul(self.alpha as i128).ok_or_else(overflow)?);
            }
            for &beta in &self.extra {
                for u in (1..=power).rev() {
                    let add = (beta as i128).checked_mul(poly_x[u - 1]).ok_or_else(overflow)?;
                    poly_x[u] = norm(poly_x[u].checked_add(add).ok_or_else(overflow)?);
                }
            }
            let c = i64::try_from(poly_x[power]).map_err(|_| overflow())?;
            if c == 0 {
                continue;
            }
            let ej = if j == 0 { Poly::one(target) } else { Poly::var(target, j - 1) };
            let term = ej.mul(&e1.pow(power as u32)?)?.scale(c)?;
            out = out.add(&term)?;
        }
        Ok(out)
    }

    fn by_reduction(&self, target: &Arc<PolyRing>, k: usize, t_degree: u32) -> Result<Poly> {
        let t_ring = PolyRing::uniform(target.modulus(), "t", self.n, t_degree)?;
        let ts: Vec<Poly> = (0..self.n).map(|i| Poly::var(&t_ring, i)).collect();
        let e1 = ts
            .iter()
            .try_fold(Poly::zero(&t_ring), |acc, t| acc.add(t))?;
        let shift = e1.scale(self.alpha)?;
        let mut roots = ts
            .iter()
            .map(|t| t.add(&shift))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        for &beta in &self.extra {
            roots.push(e1.scale(beta)?);
        }
        let sigma_k = elementary_symmetric_of(&t_ring, &roots, k)?.pop().expect("k+1 entries");
        Ok(symmetrize_reduce(&sigma_k, target)?)
    }

    fn image(&self, target: &Arc<PolyRing>, k: usize, t_degree: u32, route: Route) -> Result<Poly> {
        match route {
            Route::ClosedForm => self.closed_form(target, k),
            Route::SymmetricReduction => self.by_reduction(target, k, t_degree),
        }
    }
}

/// `Bj^*: H^*(BSO(2n+1);F2) → H^*(BO(2n);F2)` for `j(X) = det(X)·(X ⊕ 1)`.
/// On the maximal elementary abelian subgroup `j` sends
/// `(a_1,…,a_{2n})` to `(a a_1, …, a a_{2n}, a)`, so
/// `Bj^*(w_k) = σ_k(t+t_1, …, t+t_{2n}, t)` with `t = t_1+…+t_{2n}`.
pub fn j_restriction(n: u32) -> Result<PresentedMap> {
    j_restriction_via(n, Route::default())
}

pub fn j_restriction_via(n: u32, route: Route) -> Result<PresentedMap> {
    if n == 0 {
        return Err(Error::InvalidArgument("j restriction needs n >= 1".into()));
    }
    let source = cohomology_presentation(Family::SO, 2 * n + 1, Coefficient::F2)?;
    let target = cohomology_presentation(Family::O, 2 * n, Coefficient::F2)?;
    let roots = ShiftedRoots {
        n: 2 * n as usize,
        alpha: 1,
        extra: vec![1],
    };
    let images = (2..=2 * n as usize + 1)
        .map(|k| roots.image(target.ring(), k, 1, route))
        .collect::<Result<Vec<_>>>()?;
    let name = format!("Bj^*: BO({}) -> BSO({})", 2 * n, 2 * n + 1);
    PresentedMap::new(name, source, target, images)
}

/// `H^*(BSU(n+1)) → H^*(BU(n))` for `X ↦ X ⊕ det(X)^{-1}`:
/// `c_k ↦ σ_k(t_1, …, t_n, -(t_1+…+t_n))`.
pub fn su_restriction(n: u32, coefficient: Coefficient) -> Result<PresentedMap> {
    su_restriction_via(n, coefficient, Route::default())
}

pub fn su_restriction_via(n: u32, coefficient: Coefficient, route: Route) -> Result<PresentedMap> {
    if n == 0 {
        return Err(Error::InvalidArgument("SU restriction needs n >= 1".into()));
    }
    let source = cohomology_presentation(Family::SU, n + 1, coefficient)?;
    let target = cohomology_presentation(Family::U, n, coefficient)?;
    let roots = ShiftedRoots {
        n: n as usize,
        alpha: 0,
        extra: vec![-1],
    };
    let images = (2..=n as usize + 1)
        .map(|k| roots.image(target.ring(), k, 2, route))
        .collect::<Result<Vec<_>>>()?;
    let name = format!("BU({n}) -> BSU({})", n + 1);
    PresentedMap::new(name, source, target, images)
}

/// Sign used for the torus self-map `x_i ↦ x_i ± c_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ShiftSign {
    /// `x_i ↦ x_i + c_1`, the convention of the torus computation.
    #[default]
    Plus,
    /// `x_i ↦ x_i - c_1`, literally `A ↦ det(A)^{-1} A`.
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfMapReport {
    pub map: PresentedMap,
    pub prime: u64,
    /// Coefficient of `c_1` in the image of `c_1`, reduced mod `p`.
    pub c1_coefficient: u64,
    /// Every `c_k` with `k > 1` maps to `c_k` modulo the ideal `(c_1)`.
    pub triangular: bool,
    /// Read off the map: triangular with a unit on `c_1`.
    pub invertible: bool,
}

/// The self-map of `BU(n)` induced by `A ↦ det(A)^{±1} A` (see [`ShiftSign`]), mod an odd
/// prime. Invertibility is decided from the map's linear part.
pub fn u_selfmap(n: u32, p: u64, sign: ShiftSign) -> Result<SelfMapReport> {
    u_selfmap_via(n, p, sign, Route::default())
}

pub fn u_selfmap_via(n: u32, p: u64, sign: ShiftSign, route: Route) -> Result<SelfMapReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("U(n) self-map needs n >= 1".into()));
    }
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::InvalidArgument(format!(
            "U(n) self-map needs an odd prime, got {p}"
        )));
    }
    let pres = cohomology_presentation(Family::U, n, Coefficient::Fp(p))?;
    let roots = ShiftedRoots {
        n: n as usize,
        alpha: match sign {
            ShiftSign::Plus => 1,
            ShiftSign::Minus => -1,
        },
        extra: Vec::new(),
    };
    let images = (1..=n as usize)
        .map(|k| roots.image(pres.ring(), k, 2, route))
        .collect::<Result<Vec<_>>>()?;
    let name = format!("self-map of BU({n}) mod {p}");
    let map = PresentedMap::new(name, pres.clone(), pres, images)?;

    let mut unit = vec![0u32; n as usize];
    unit[0] = 1;
    let c1_coefficient = map.map.images()[0].coefficient(&unit) as u64;
    let triangular = map
        .map
        .images()
        .iter()
        .enumerate()
        .skip(1)
        .all(|(k, img)| {
            // drop every term divisible by c_1
            let mut rest = Poly::zero(img.ring());
            for (m, c) in img.terms() {
                if m.exponents()[0] == 0 {
                    let exps: Vec<u32> = m.exponents().iter().map(|&e| e as u32).collect();
                    rest = rest
                        .add(&Poly::monomial(img.ring(), &exps, c).expect("existing monomial"))
                        .expect("same ring");
                }
            }
            rest == Poly::var(img.ring(), k)
        });
    Ok(SelfMapReport {
        map,
        prime: p,
        c1_coefficient,
        triangular,
        invertible: triangular && c1_coefficient != 0,
    })
}

/// `w_1` and `w_2` of `T(RP^n)` as multiples of `x` and `x²` in
/// `F2[x]/(x^{n+1})`. Classes above degree `n` are zero.
pub fn rp_tangent_sw(n: u32) -> Result<(u8, u8)> {
    if n == 0 {
        return Err(Error::InvalidArgument("RP^n needs n >= 1".into()));
    }
    let w1 = ((n as u64 + 1) % 2) as u8;
    let w2 = if n >= 2 {
        (binomial(n as u64 + 1, 2) % 2) as u8
    } else {
        0
    };
    Ok((w1, w2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PinVerdict {
    pub n: u32,
    pub w1: u8,
    pub w2: u8,
    pub pin_plus: bool,
    pub pin_minus: bool,
}

/// `Pin^+` structures exist iff `w_2 = 0`, `Pin^-` iff `w_2 + w_1² = 0`.
pub fn pin_structures(n: u32) -> Result<PinVerdict> {
    let (w1, w2) = rp_tangent_sw(n)?;
    // coefficient of x^2 in w_1^2, zero when x^2 = 0 in the truncated ring
    let w1_sq = if n >= 2 { w1 } else { 0 };
    Ok(PinVerdict {
        n,
        w1,
        w2,
        pin_plus: w2 == 0,
        pin_minus: (w2 + w1_sq) % 2 == 0,
    })
}

/// Text flagged when reporting `w_2(T(RP^n))`: the binomial computation
/// contradicts the sentence it is checked against.
pub const RP_W2_WARNING: &str = "contested claim: w_2(T RP^n) = x^2 for n = 4k and 0 for n = 4k+2; binom(n+1,2) mod 2 gives the reverse (0 at 4k, x^2 at 4k+2), and the Pin^+/Pin^- verdicts follow the binomial";
