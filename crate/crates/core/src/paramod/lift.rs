use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde_json::{json, Value};

use super::{koecher, CoefficientSource, JacobiFormData, Lookup, ParamodError};
use crate::classical::{bernoulli, eisenstein, sigma};
use crate::numeric::{int, parse_rational, Rational};
use crate::series::BiExp;

/// `sum alpha(a, b, c) q^a r^b s^{Nc}`, complete on `0 <= a <= Amax, 0 <= c <= Cmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamodularSeries {
    pub level: i64,
    pub weight: i64,
    amax: i64,
    cmax: i64,
    /// Nonzero coefficients keyed by `[a, b, c]`.
    coeffs: BTreeMap<[i64; 3], Rational>,
}

impl ParamodularSeries {
    pub fn new(
        level: i64,
        weight: i64,
        amax: i64,
        cmax: i64,
        terms: impl IntoIterator<Item = ([i64; 3], Rational)>,
    ) -> Result<Self, ParamodError> {
        let mut coeffs = BTreeMap::new();
        for (k @ [a, b, c], v) in terms {
            if v.is_zero() {
                continue;
            }
            if !koecher(level, a, b, c) {
                return Err(ParamodError::Validation(format!("alpha{k:?} violates the Koecher bound")));
            }
            if a > amax || c > cmax {
                return Err(ParamodError::Validation(format!("alpha{k:?} lies outside the box ({amax}, {cmax})")));
            }
            coeffs.insert(k, v);
        }
        Ok(Self { level, weight, amax, cmax, coeffs })
    }

    pub fn zero(level: i64, weight: i64, amax: i64, cmax: i64) -> Self {
        Self { level, weight, amax, cmax, coeffs: BTreeMap::new() }
    }

    /// `(Amax, Cmax)`.
    pub fn bounds(&self) -> (i64, i64) {
        (self.amax, self.cmax)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64; 3], &Rational)> {
        self.coeffs.iter()
    }

    /// `alpha(a, b, c)`, `None` outside the box.
    pub fn alpha(&self, a: i64, b: i64, c: i64) -> Option<Rational> {
        if !koecher(self.level, a, b, c) {
            return Some(Rational::zero());
        }
        if a > self.amax || c > self.cmax {
            return None;
        }
        Some(self.coeffs.get(&[a, b, c]).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let coeffs = if r.is_zero() { BTreeMap::new() } else { self.coeffs.iter().map(|(k, v)| (*k, v * r)).collect() };
        Self { coeffs, ..self.clone() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ParamodError> {
        if self.level != other.level || self.weight != other.weight {
            return Err(ParamodError::Validation("sum of forms of different level or weight".into()));
        }
        let (amax, cmax) = (self.amax.min(other.amax), self.cmax.min(other.cmax));
        let mut coeffs: BTreeMap<[i64; 3], Rational> = BTreeMap::new();
        for (k, v) in self.coeffs.iter().chain(&other.coeffs) {
            if k[0] <= amax && k[2] <= cmax {
                *coeffs.entry(*k).or_insert_with(Rational::zero) += v;
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(Self { level: self.level, weight: self.weight, amax, cmax, coeffs })
    }

    /// Product on the common box; weights add. Fails if a coefficient lands
    /// outside the Koecher cone, which cannot happen for valid inputs.
    pub fn try_mul(&self, other: &Self) -> Result<Self, ParamodError> {
        if self.level != other.level {
            return Err(ParamodError::Level { expected: self.level.to_string(), got: other.level });
        }
        let (amax, cmax) = (self.amax.min(other.amax), self.cmax.min(other.cmax));
        let mut coeffs: BTreeMap<[i64; 3], Rational> = BTreeMap::new();
        for (k1, v1) in &self.coeffs {
            for (k2, v2) in &other.coeffs {
                let k = [k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]];
                if k[0] <= amax && k[2] <= cmax {
                    *coeffs.entry(k).or_insert_with(Rational::zero) += v1 * v2;
                }
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        if let Some(k) = coeffs.keys().find(|[a, b, c]| !koecher(self.level, *a, *b, *c)) {
            return Err(ParamodError::KoecherClosure(*k));
        }
        Ok(Self { level: self.level, weight: self.weight + other.weight, amax, cmax, coeffs })
    }

    pub fn to_json(&self) -> Value {
        let mut rows: Vec<_> = self.coeffs.iter().collect();
        rows.sort_by_key(|([a, b, c], _)| (*a, *c, *b));
        let rows: Vec<Value> = rows.into_iter().map(|([a, b, c], v)| json!([a, b, c, v.to_string()])).collect();
        json!({"level": self.level, "weight": self.weight, "box": [self.amax, self.cmax], "coeffs": rows})
    }

    pub fn from_json(v: &Value) -> Result<Self, ParamodError> {
        let bad = |what: &str| ParamodError::Validation(format!("malformed paramodular JSON: {what}"));
        let level = v["level"].as_i64().ok_or_else(|| bad("level"))?;
        let weight = v["weight"].as_i64().ok_or_else(|| bad("weight"))?;
        let (amax, cmax) = match v["box"].as_array().map(Vec::as_slice) {
            Some([a, c]) => (a.as_i64().ok_or_else(|| bad("box"))?, c.as_i64().ok_or_else(|| bad("box"))?),
            _ => return Err(bad("box")),
        };
        let mut terms = Vec::new();
        for row in v["coeffs"].as_array().ok_or_else(|| bad("coeffs"))? {
            let Some([a, b, c, x]) = row.as_array().map(Vec::as_slice) else {
                return Err(bad("coefficient row"));
            };
            let k = [a, b, c].map(|e| e.as_i64());
            let [Some(a), Some(b), Some(c)] = k else {
                return Err(bad("exponent"));
            };
            let x = parse_rational(x.as_str().ok_or_else(|| bad("coefficient"))?).map_err(|_| bad("coefficient"))?;
            terms.push(([a, b, c], x));
        }
        Self::new(level, weight, amax, cmax, terms)
    }
}

impl CoefficientSource for ParamodularSeries {
    fn level(&self) -> i64 {
        self.level
    }
    fn weight(&self) -> i64 {
        self.weight
    }
    fn alpha(&self, a: i64, b: i64, c: i64) -> Option<Rational> {
        ParamodularSeries::alpha(self, a, b, c)
    }
    fn box_hint(&self) -> (i64, i64) {
        (self.amax, self.cmax)
    }
}

/// `alpha(c, -b, a)` of the wrapped source, on demand.
#[derive(Debug, Clone)]
pub struct FrickeView<S>(pub S);

impl<S: CoefficientSource> CoefficientSource for FrickeView<S> {
    fn level(&self) -> i64 {
        self.0.level()
    }
    fn weight(&self) -> i64 {
        self.0.weight()
    }
    fn alpha(&self, a: i64, b: i64, c: i64) -> Option<Rational> {
        self.0.alpha(c, -b, a)
    }
    fn box_hint(&self) -> (i64, i64) {
        let (a, c) = self.0.box_hint();
        (c, a)
    }
}

/// Coefficients of the Gritsenko lift of `phi`, computed on demand.
#[derive(Debug, Clone)]
pub struct LiftSource<'a> {
    phi: &'a JacobiFormData,
    /// `-B_k / 2k`, or zero for odd weight.
    constant: Rational,
}

impl<'a> LiftSource<'a> {
    pub fn new(phi: &'a JacobiFormData) -> Result<Self, ParamodError> {
        let k = phi.weight;
        if k < 4 {
            return Err(ParamodError::Weight(k));
        }
        let constant = if k % 2 == 0 {
            -bernoulli(k).map_err(|_| ParamodError::Weight(k))? / int(2 * k)
        } else {
            Rational::zero()
        };
        Ok(Self { phi, constant })
    }

    /// The lift coefficient or the first Jacobi entry it needs but lacks.
    pub fn alpha_checked(&self, a: i64, b: i64, c: i64) -> Result<Rational, (i64, i64)> {
        let nn = self.phi.index;
        if !koecher(nn, a, b, c) {
            return Ok(Rational::zero());
        }
        let get = |n: i64, r: i64| match self.phi.lookup(n, r) {
            Lookup::Known(x) => Ok(x),
            Lookup::Missing(n2, r2) => Err((n2, r2)),
        };
        if a == 0 || c == 0 {
            // b = 0 here by the Koecher bound
            let c00 = get(0, 0)?;
            if c00.is_zero() || self.constant.is_zero() {
                return Ok(Rational::zero());
            }
            let m = a + c;
            if m == 0 {
                return Ok(&self.constant * c00);
            }
            let s = sigma(m, (self.phi.weight - 1) as u32).expect("m >= 1");
            return Ok(c00 * Rational::from_integer(s));
        }
        let g = a.gcd(&b).gcd(&c);
        let mut total = Rational::zero();
        for d in (1..=g).filter(|d| g % d == 0) {
            let x = get(a * c / (d * d), b / d)?;
            if !x.is_zero() {
                total += x * Rational::from_integer(num_bigint::BigInt::from(d).pow((self.phi.weight - 1) as u32));
            }
        }
        Ok(total)
    }
}

impl CoefficientSource for LiftSource<'_> {
    fn level(&self) -> i64 {
        self.phi.index
    }
    fn weight(&self) -> i64 {
        self.phi.weight
    }
    fn alpha(&self, a: i64, b: i64, c: i64) -> Option<Rational> {
        self.alpha_checked(a, b, c).ok()
    }
    fn box_hint(&self) -> (i64, i64) {
        let m = 8 * (self.phi.maxn.max(1) + 1);
        (m, m)
    }
}

/// The Gritsenko lift on the box `0 <= a <= amax, 0 <= c <= cmax`.
pub fn gritsenko_lift(phi: &JacobiFormData, amax: i64, cmax: i64) -> Result<ParamodularSeries, ParamodError> {
    let src = LiftSource::new(phi)?;
    let nn = phi.index;
    let mut terms = Vec::new();
    let mut missing = BTreeSet::new();
    for a in 0..=amax {
        for c in 0..=cmax {
            let bmax = isqrt(4 * nn * a * c);
            for b in -bmax..=bmax {
                match src.alpha_checked(a, b, c) {
                    Ok(x) => terms.push(([a, b, c], x)),
                    Err(m) => {
                        missing.insert(m);
                    }
                }
            }
        }
    }
    if !missing.is_empty() {
        return Err(ParamodError::MissingData(missing.into_iter().collect()));
    }
    ParamodularSeries::new(nn, phi.weight, amax, cmax, terms)
}

pub(crate) fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `-2k / B_k` times the lift of a Jacobi Eisenstein table, checked against
/// the level-one Eisenstein series.
pub fn eisenstein_paramodular(phi: &JacobiFormData, amax: i64, cmax: i64) -> Result<ParamodularSeries, ParamodError> {
    let k = phi.weight;
    if k < 4 || k % 2 != 0 {
        return Err(ParamodError::Weight(k));
    }
    let factor = -int(2 * k) / bernoulli(k).map_err(|_| ParamodError::Weight(k))?;
    let e = gritsenko_lift(phi, amax, cmax)?.scale(&factor);
    if e.alpha(0, 0, 0) != Some(Rational::one()) {
        return Err(ParamodError::Validation(format!("constant term of the lift of `{}` is not 1", phi.source)));
    }
    if amax >= 1 {
        let expected = eisenstein(k, 2).expect("valid weight").expansion.coeff(1).expect("inside truncation");
        if e.alpha(1, 0, 0) != Some(expected.clone()) {
            return Err(ParamodError::Validation(format!("alpha(1,0,0) of `{}` is not {expected}", phi.source)));
        }
    }
    Ok(e)
}

/// `alpha'(a, b, c) = alpha(c, -b, a)`.
pub fn fricke_permute(f: &ParamodularSeries) -> Result<ParamodularSeries, ParamodError> {
    let (amax, cmax) = f.bounds();
    if amax != cmax {
        return Err(ParamodError::AsymmetricBox(amax, cmax));
    }
    let terms = f.terms().map(|([a, b, c], v)| ([*c, -*b, *a], v.clone()));
    ParamodularSeries::new(f.level, f.weight, amax, cmax, terms)
}

/// `Some(e)` when the Fricke permutation of `f` is `e f`.
pub fn fricke_sign(f: &ParamodularSeries) -> Result<Option<i8>, ParamodError> {
    let g = fricke_permute(f)?;
    Ok(if g == *f {
        Some(1)
    } else if g == f.scale(&int(-1)) {
        Some(-1)
    } else {
        None
    })
}

/// Coefficient at `(a, c)` is `sum_b alpha(a, b, c) b^n`; keys are `q^a s^{Nc}` exponents `(a, c)`.
pub fn witt_taylor(f: &ParamodularSeries, n: u32) -> BiExp {
    let mut acc: BTreeMap<[i64; 2], Rational> = BTreeMap::new();
    for ([a, b, c], v) in f.terms() {
        let w = if n == 0 { v.clone() } else { v * int(*b).pow(n) };
        *acc.entry([*a, *c]).or_insert_with(Rational::zero) += w;
    }
    let (amax, cmax) = f.bounds();
    BiExp::from_terms([1, 1], [amax + 1, cmax + 1], acc)
}

/// Restriction to `z = 0`.
pub fn witt_p1(f: &ParamodularSeries) -> BiExp {
    witt_taylor(f, 0)
}
