//! Exact truncated Fourier/Puiseux series over pluggable exponent keys.
//!
//! A series is trusted below its truncation bound and unknown at or above it;
//! reading a coefficient there is an error rather than zero.

mod keys;

pub use keys::{Grade, Key, LatticeKey, QuadGrain, QuadKey};

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::numeric::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("coefficient at {0} requested at or above the truncation bound")]
    BeyondTruncation(String),
    #[error("incompatible exponent grains")]
    GrainMismatch,
    #[error("divisor vanishes to truncation")]
    ZeroDivisor,
    #[error("divisor has no unique minimal term")]
    AmbiguousLeadingTerm,
    #[error("series grain {0} exceeds 2")]
    GrainTooFine(u32),
    #[error("truncations differ in the two variables")]
    NotSquare,
    #[error("malformed series: {0}")]
    Format(String),
}

/// A truncated series with exponents keyed by `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series<K: Key> {
    grain: K::Grain,
    trunc: K::Bound,
    coeffs: BTreeMap<K, Rational>,
}

/// One-variable series in `q` with rational exponents.
pub type QExp = Series<i64>;
/// Series in `q1, q2` truncated on a rectangle.
pub type BiExp = Series<[i64; 2]>;
/// Series in `q1^xi q2^xi'` with `xi` real-quadratic, truncated by trace.
pub type QuadPairExp = Series<QuadKey>;

impl<K: Key> Series<K> {
    /// The zero series, trusted below `trunc`.
    pub fn zero(grain: K::Grain, trunc: K::Bound) -> Self {
        Self { grain, trunc, coeffs: BTreeMap::new() }
    }

    pub fn one(grain: K::Grain, trunc: K::Bound) -> Self {
        Self::from_terms(grain, trunc, [(K::origin(), Rational::one())])
    }

    /// Builds a series, summing repeated keys and dropping zeros and any term
    /// at or above `trunc`.
    pub fn from_terms(grain: K::Grain, trunc: K::Bound, terms: impl IntoIterator<Item = (K, Rational)>) -> Self {
        let mut coeffs: BTreeMap<K, Rational> = BTreeMap::new();
        for (k, c) in terms {
            if k.grade().below(trunc) {
                *coeffs.entry(k).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { grain, trunc, coeffs }
    }

    pub fn grain(&self) -> K::Grain {
        self.grain
    }

    pub fn trunc(&self) -> K::Bound {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.coeffs.iter()
    }

    pub fn contains(&self, k: K) -> bool {
        k.grade().below(self.trunc)
    }

    /// The coefficient at `k`; an error at or above the truncation bound.
    pub fn coeff(&self, k: K) -> Result<Rational, SeriesError> {
        if !self.contains(k) {
            return Err(SeriesError::BeyondTruncation(format!("{k:?}")));
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero))
    }

    /// Lowest grade that can carry a nonzero coefficient, capped by the bound.
    pub fn valuation(&self) -> K::Bound {
        self.coeffs.keys().fold(self.trunc, |acc, k| acc.meet(k.grade()))
    }

    /// Restricts to a smaller window.
    pub fn truncate(&self, bound: K::Bound) -> Self {
        let trunc = self.trunc.meet(bound);
        let coeffs = self.coeffs.iter().filter(|(k, _)| k.grade().below(trunc)).map(|(k, c)| (*k, c.clone())).collect();
        Self { grain: self.grain, trunc, coeffs }
    }

    /// Re-expresses exponents over another grain (finer, or coarser when exact).
    pub fn with_grain(&self, to: K::Grain) -> Result<Self, SeriesError> {
        if to == self.grain {
            return Ok(self.clone());
        }
        let trunc = K::regrain_bound(self.trunc, self.grain, to).ok_or(SeriesError::GrainMismatch)?;
        let mut coeffs = BTreeMap::new();
        for (k, c) in &self.coeffs {
            coeffs.insert(k.regrain(self.grain, to).ok_or(SeriesError::GrainMismatch)?, c.clone());
        }
        Ok(Self { grain: to, trunc, coeffs })
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self), SeriesError> {
        let g = K::join_grain(self.grain, other.grain)?;
        Ok((self.with_grain(g)?, other.with_grain(g)?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        let (a, b) = self.aligned(other)?;
        let trunc = a.trunc.meet(b.trunc);
        let terms = a.coeffs.into_iter().chain(b.coeffs);
        Ok(Self::from_terms(a.grain, trunc, terms))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_add(&-other)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let coeffs =
            if r.is_zero() { BTreeMap::new() } else { self.coeffs.iter().map(|(k, c)| (*k, c * r)).collect() };
        Self { grain: self.grain, trunc: self.trunc, coeffs }
    }

    /// Product, exact on `min(Ta + vb, Tb + va)` where `v` is the valuation.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let (a, b) = self.aligned(other)?;
        let trunc = a.trunc.plus(b.valuation()).meet(b.trunc.plus(a.valuation()));
        let mut acc: BTreeMap<K, Rational> = BTreeMap::new();
        for (ka, ca) in &a.coeffs {
            for (kb, cb) in &b.coeffs {
                let k = ka.shift(*kb);
                if k.grade().below(trunc) {
                    let t = ca * cb;
                    match acc.get_mut(&k) {
                        Some(v) => *v += t,
                        None => {
                            acc.insert(k, t);
                        }
                    }
                } else if k.past(trunc) {
                    break;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self { grain: a.grain, trunc, coeffs: acc })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.grain, self.trunc);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Equality on the common trusted window.
    pub fn agrees_with(&self, other: &Self) -> Result<bool, SeriesError> {
        let (a, b) = self.aligned(other)?;
        let w = a.trunc.meet(b.trunc);
        Ok(a.truncate(w).coeffs == b.truncate(w).coeffs)
    }

    /// `{"grain", "trunc", "coeffs": [[exponent.., "p/q"], ..]}`, sorted by exponent.
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        for (name, v) in K::grain_to_json(self.grain) {
            obj.insert(name.to_string(), v);
        }
        obj.insert("trunc".into(), K::bound_to_json(self.trunc, self.grain));
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let mut row: Vec<Value> = k.key_to_json(self.grain).into_iter().map(Value::String).collect();
                row.push(Value::String(c.to_string()));
                Value::Array(row)
            })
            .collect();
        obj.insert("coeffs".into(), Value::Array(coeffs));
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self, SeriesError> {
        let grain = K::grain_from_json(v)?;
        let trunc = K::bound_from_json(&v["trunc"], grain)?;
        let rows = v["coeffs"].as_array().ok_or_else(|| SeriesError::Format("missing coeffs".into()))?;
        let mut terms = Vec::with_capacity(rows.len());
        for row in rows {
            let parts: Vec<String> = row
                .as_array()
                .ok_or_else(|| SeriesError::Format("coefficient row is not an array".into()))?
                .iter()
                .map(|x| x.as_str().map(str::to_string).ok_or_else(|| SeriesError::Format("expected strings".into())))
                .collect::<Result<_, _>>()?;
            let (c, k) = parts.split_last().ok_or_else(|| SeriesError::Format("empty coefficient row".into()))?;
            let key = K::key_from_json(k, grain)?;
            if !key.grade().below(trunc) {
                return Err(SeriesError::Format(format!("term {k:?} at or above the truncation bound")));
            }
            let c = parse_rational(c).map_err(|e| SeriesError::Format(e.to_string()))?;
            terms.push((key, c));
        }
        Ok(Self::from_terms(grain, trunc, terms))
    }
}

impl<K: LatticeKey> Series<K> {
    /// `self / den` by elimination upward from the leading term of `den`.
    ///
    /// The result is exact below `min(Tn - v, Td + vn - 2v)`, where `v` is the
    /// leading exponent of `den` and `vn` the valuation of `self`.
    pub fn divide(&self, den: &Self) -> Result<Self, SeriesError> {
        let (num, den) = self.aligned(den)?;
        let support: Vec<K> = den.coeffs.keys().copied().collect();
        let lead = K::leading(&support)?;
        let d0 = den.coeffs[&lead].clone();
        let v = lead.grade();
        let vn = num.valuation();
        let bound = num.trunc.minus(v).meet(den.trunc.plus(vn).minus(v).minus(v));
        let lo = vn.minus(v);
        let mut out: BTreeMap<K, Rational> = BTreeMap::new();
        for e in K::lattice(lo, bound) {
            let target = e.shift(lead);
            let mut s = num.coeffs.get(&target).cloned().unwrap_or_else(Rational::zero);
            for (j, dj) in &den.coeffs {
                if *j == lead {
                    continue;
                }
                if let Some(r) = out.get(&target.unshift(*j)) {
                    s -= dj * r;
                }
            }
            if !s.is_zero() {
                out.insert(e, s / &d0);
            }
        }
        Ok(Self { grain: num.grain, trunc: bound, coeffs: out })
    }
}

macro_rules! series_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<K: Key> $tr for &Series<K> {
            type Output = Series<K>;
            /// # Panics
            /// If the grains cannot be joined (mixed discriminants).
            fn $method(self, rhs: Self) -> Series<K> {
                self.$checked(rhs).expect("incompatible series grains")
            }
        }
        impl<K: Key> $tr for Series<K> {
            type Output = Series<K>;
            fn $method(self, rhs: Self) -> Series<K> {
                (&self).$method(&rhs)
            }
        }
    };
}

series_binop!(Add, add, try_add);
series_binop!(Sub, sub, try_sub);
series_binop!(Mul, mul, try_mul);

impl<K: Key> Neg for &Series<K> {
    type Output = Series<K>;
    fn neg(self) -> Series<K> {
        self.scale(&-Rational::one())
    }
}

impl<K: Key> Neg for Series<K> {
    type Output = Series<K>;
    fn neg(self) -> Series<K> {
        -&self
    }
}

impl QExp {
    /// `tau -> m tau`: exponents and bound multiplied by `m`.
    pub fn scale_up(&self, m: u32) -> Self {
        let m = i64::from(m);
        let coeffs = self.coeffs.iter().map(|(k, c)| (k * m, c.clone())).collect();
        Self { grain: self.grain, trunc: self.trunc * m, coeffs }
    }

    /// `tau -> tau / m`: the grain is multiplied by `m`, numerators unchanged.
    pub fn scale_down(&self, m: u32) -> Self {
        Self { grain: self.grain * m, trunc: self.trunc, coeffs: self.coeffs.clone() }
    }

    /// `tau -> tau + 1` on a series with half-integral exponents: the
    /// coefficient at `e` picks up `(-1)^{2e}`.
    pub fn phase_twist_t(&self) -> Result<Self, SeriesError> {
        match self.grain {
            1 => Ok(self.clone()),
            2 => {
                let coeffs =
                    self.coeffs.iter().map(|(k, c)| (*k, if k.rem_euclid(2) == 1 { -c } else { c.clone() })).collect();
                Ok(Self { grain: 2, trunc: self.trunc, coeffs })
            }
            g => Err(SeriesError::GrainTooFine(g)),
        }
    }

    /// Coefficients at `0, 1/g, 2/g, ..` below the bound, zeros included.
    pub fn dense(&self) -> Vec<Rational> {
        (0..self.trunc).map(|k| self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)).collect()
    }
}

impl BiExp {
    /// `f(t1, t2) -> f(t2, t1)`.
    pub fn swap(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(k, c)| ([k[1], k[0]], c.clone())).collect();
        Self { grain: [self.grain[1], self.grain[0]], trunc: [self.trunc[1], self.trunc[0]], coeffs }
    }

    /// Tensor product `f(t1) g(t2)`.
    pub fn tensor(f: &QExp, g: &QExp) -> Self {
        let terms = f.terms().flat_map(|(a, ca)| g.terms().map(move |(b, cb)| ([*a, *b], ca * cb)));
        Self::from_terms([f.grain(), g.grain()], [f.trunc(), g.trunc()], terms)
    }

    /// The coefficient of `q1^e` (`var = 0`) or `q2^e` (`var = 1`) as a series in the other variable.
    pub fn slice(&self, var: usize, e: i64) -> Result<QExp, SeriesError> {
        if e >= self.trunc[var] {
            return Err(SeriesError::BeyondTruncation(format!("slice {e} of variable {var}")));
        }
        let other = 1 - var;
        let terms = self.coeffs.iter().filter(|(k, _)| k[var] == e).map(|(k, c)| (k[other], c.clone()));
        Ok(QExp::from_terms(self.grain[other], self.trunc[other], terms))
    }

    /// `f(t, t)`, exact below `min(T1 + v2, T2 + v1)`.
    pub fn diagonal(&self) -> Result<QExp, SeriesError> {
        if self.grain[0] != self.grain[1] {
            return Err(SeriesError::GrainMismatch);
        }
        let v = self.valuation();
        let trunc = (self.trunc[0] + v[1]).min(self.trunc[1] + v[0]);
        let terms = self.coeffs.iter().map(|(k, c)| (k[0] + k[1], c.clone()));
        Ok(QExp::from_terms(self.grain[0], trunc, terms))
    }

    /// Rectangle of keys `0 <= e < trunc`, lexicographic.
    pub fn slots(&self) -> Vec<[i64; 2]> {
        (0..self.trunc[0]).flat_map(|a| (0..self.trunc[1]).map(move |b| [a, b])).collect()
    }
}

impl QuadPairExp {
    pub fn coeff_at(&self, xi: &crate::numeric::QuadRational) -> Result<Rational, SeriesError> {
        self.coeff(QuadKey::from_value(xi, self.grain)?)
    }
}

#[cfg(test)]
mod tests;
