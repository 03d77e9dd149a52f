//! Exponent keys. Exponents are stored as integer numerators over a per-series
//! grain, so a grain-2 series keeps `q^{3/2}` under the key `3`.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use super::SeriesError;
use crate::numeric::{lcm_u32, parse_rational, QuadRational, Rational};

/// Grading values used for truncation bounds and valuations.
pub trait Grade: Copy + Eq + Debug + Send + Sync {
    /// Componentwise minimum.
    fn meet(self, other: Self) -> Self;
    fn plus(self, other: Self) -> Self;
    fn minus(self, other: Self) -> Self;
    /// Strictly below in every component.
    fn below(self, bound: Self) -> bool;
}

impl Grade for i64 {
    fn meet(self, other: Self) -> Self {
        self.min(other)
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn minus(self, other: Self) -> Self {
        self - other
    }
    fn below(self, bound: Self) -> bool {
        self < bound
    }
}

impl Grade for [i64; 2] {
    fn meet(self, o: Self) -> Self {
        [self[0].min(o[0]), self[1].min(o[1])]
    }
    fn plus(self, o: Self) -> Self {
        [self[0] + o[0], self[1] + o[1]]
    }
    fn minus(self, o: Self) -> Self {
        [self[0] - o[0], self[1] - o[1]]
    }
    fn below(self, b: Self) -> bool {
        self[0] < b[0] && self[1] < b[1]
    }
}

pub trait Key: Copy + Ord + Hash + Debug + Send + Sync {
    type Grain: Copy + Eq + Debug + Send + Sync;
    type Bound: Grade;

    fn origin() -> Self;
    fn shift(self, other: Self) -> Self;
    fn unshift(self, other: Self) -> Self;
    /// The value compared against the truncation bound.
    fn grade(self) -> Self::Bound;
    /// True when no key at or after `self` in key order can lie below `bound`.
    fn past(self, bound: Self::Bound) -> bool;

    fn join_grain(a: Self::Grain, b: Self::Grain) -> Result<Self::Grain, SeriesError>;
    /// Re-expresses the key over grain `to`; `None` if not representable.
    fn regrain(self, from: Self::Grain, to: Self::Grain) -> Option<Self>;
    fn regrain_bound(b: Self::Bound, from: Self::Grain, to: Self::Grain) -> Option<Self::Bound>;

    fn key_to_json(self, grain: Self::Grain) -> Vec<String>;
    fn key_from_json(parts: &[String], grain: Self::Grain) -> Result<Self, SeriesError>;
    fn bound_to_json(b: Self::Bound, grain: Self::Grain) -> Value;
    fn bound_from_json(v: &Value, grain: Self::Grain) -> Result<Self::Bound, SeriesError>;
    fn grain_to_json(grain: Self::Grain) -> Vec<(&'static str, Value)>;
    fn grain_from_json(obj: &Value) -> Result<Self::Grain, SeriesError>;
}

/// Keys whose exponents form a full lattice, so that division can walk them.
pub trait LatticeKey: Key {
    /// All keys with `lo <= grade < hi`, in the elimination order.
    fn lattice(lo: Self::Bound, hi: Self::Bound) -> Vec<Self>;
    /// The elimination leading term of a nonempty support.
    fn leading(support: &[Self]) -> Result<Self, SeriesError>;
}

fn scale_num(n: i64, from: u32, to: u32) -> Option<i64> {
    let (from, to) = (i64::from(from), i64::from(to));
    let m = n * to;
    (m % from == 0).then_some(m / from)
}

fn exponent_string(num: i64, grain: u32) -> String {
    Rational::new(BigInt::from(num), BigInt::from(grain)).to_string()
}

fn exponent_num(s: &str, grain: u32) -> Result<i64, SeriesError> {
    let r = parse_rational(s).map_err(|_| SeriesError::Format(format!("bad exponent `{s}`")))?;
    let scaled = r * Rational::from_integer(grain.into());
    if !scaled.is_integer() {
        return Err(SeriesError::Format(format!("exponent `{s}` is not a multiple of 1/{grain}")));
    }
    i64::try_from(scaled.to_integer()).map_err(|_| SeriesError::Format(format!("exponent `{s}` out of range")))
}

fn as_u32(v: &Value, what: &str) -> Result<u32, SeriesError> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .filter(|&x| x > 0)
        .ok_or_else(|| SeriesError::Format(format!("bad {what}")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str, SeriesError> {
    v.as_str().ok_or_else(|| SeriesError::Format(format!("bad {what}")))
}

impl Key for i64 {
    type Grain = u32;
    type Bound = i64;

    fn origin() -> Self {
        0
    }
    fn shift(self, o: Self) -> Self {
        self + o
    }
    fn unshift(self, o: Self) -> Self {
        self - o
    }
    fn grade(self) -> i64 {
        self
    }
    fn past(self, bound: i64) -> bool {
        self >= bound
    }
    fn join_grain(a: u32, b: u32) -> Result<u32, SeriesError> {
        Ok(lcm_u32(a, b))
    }
    fn regrain(self, from: u32, to: u32) -> Option<Self> {
        scale_num(self, from, to)
    }
    fn regrain_bound(b: i64, from: u32, to: u32) -> Option<i64> {
        // a bound only needs rounding up: keys below it stay below it
        let (f, t) = (i64::from(from), i64::from(to));
        Some((b * t).div_euclid(f) + i64::from((b * t).rem_euclid(f) != 0))
    }
    fn key_to_json(self, g: u32) -> Vec<String> {
        vec![exponent_string(self, g)]
    }
    fn key_from_json(p: &[String], g: u32) -> Result<Self, SeriesError> {
        match p {
            [e] => exponent_num(e, g),
            _ => Err(SeriesError::Format("expected one exponent".into())),
        }
    }
    fn bound_to_json(b: i64, g: u32) -> Value {
        json!(exponent_string(b, g))
    }
    fn bound_from_json(v: &Value, g: u32) -> Result<i64, SeriesError> {
        exponent_num(as_str(v, "trunc")?, g)
    }
    fn grain_to_json(g: u32) -> Vec<(&'static str, Value)> {
        vec![("grain", json!(g))]
    }
    fn grain_from_json(obj: &Value) -> Result<u32, SeriesError> {
        as_u32(&obj["grain"], "grain")
    }
}

impl LatticeKey for i64 {
    fn lattice(lo: i64, hi: i64) -> Vec<Self> {
        (lo..hi).collect()
    }
    fn leading(support: &[Self]) -> Result<Self, SeriesError> {
        support.iter().copied().min().ok_or(SeriesError::ZeroDivisor)
    }
}

impl Key for [i64; 2] {
    type Grain = [u32; 2];
    type Bound = [i64; 2];

    fn origin() -> Self {
        [0, 0]
    }
    fn shift(self, o: Self) -> Self {
        [self[0] + o[0], self[1] + o[1]]
    }
    fn unshift(self, o: Self) -> Self {
        [self[0] - o[0], self[1] - o[1]]
    }
    fn grade(self) -> [i64; 2] {
        self
    }
    fn past(self, bound: [i64; 2]) -> bool {
        self[0] >= bound[0]
    }
    fn join_grain(a: [u32; 2], b: [u32; 2]) -> Result<[u32; 2], SeriesError> {
        Ok([lcm_u32(a[0], b[0]), lcm_u32(a[1], b[1])])
    }
    fn regrain(self, from: [u32; 2], to: [u32; 2]) -> Option<Self> {
        Some([scale_num(self[0], from[0], to[0])?, scale_num(self[1], from[1], to[1])?])
    }
    fn regrain_bound(b: [i64; 2], from: [u32; 2], to: [u32; 2]) -> Option<[i64; 2]> {
        Some([
            i64::regrain_bound(b[0], from[0], to[0])?,
            i64::regrain_bound(b[1], from[1], to[1])?,
        ])
    }
    fn key_to_json(self, g: [u32; 2]) -> Vec<String> {
        vec![exponent_string(self[0], g[0]), exponent_string(self[1], g[1])]
    }
    fn key_from_json(p: &[String], g: [u32; 2]) -> Result<Self, SeriesError> {
        match p {
            [a, b] => Ok([exponent_num(a, g[0])?, exponent_num(b, g[1])?]),
            _ => Err(SeriesError::Format("expected two exponents".into())),
        }
    }
    fn bound_to_json(b: [i64; 2], g: [u32; 2]) -> Value {
        json!([exponent_string(b[0], g[0]), exponent_string(b[1], g[1])])
    }
    fn bound_from_json(v: &Value, g: [u32; 2]) -> Result<[i64; 2], SeriesError> {
        match v.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok([exponent_num(as_str(a, "trunc")?, g[0])?, exponent_num(as_str(b, "trunc")?, g[1])?]),
            _ => Err(SeriesError::Format("bad trunc".into())),
        }
    }
    fn grain_to_json(g: [u32; 2]) -> Vec<(&'static str, Value)> {
        vec![("grain", json!(g))]
    }
    fn grain_from_json(obj: &Value) -> Result<[u32; 2], SeriesError> {
        match obj["grain"].as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok([as_u32(a, "grain")?, as_u32(b, "grain")?]),
            _ => Err(SeriesError::Format("bad grain".into())),
        }
    }
}

impl LatticeKey for [i64; 2] {
    /// Rectangle `lo <= e < hi`, ordered by total degree and then by the first exponent.
    fn lattice(lo: [i64; 2], hi: [i64; 2]) -> Vec<Self> {
        let mut v: Vec<Self> = (lo[0]..hi[0]).flat_map(|a| (lo[1]..hi[1]).map(move |b| [a, b])).collect();
        v.sort_by_key(|k| (k[0] + k[1], k[0]));
        v
    }
    fn leading(support: &[Self]) -> Result<Self, SeriesError> {
        let lead = *support.iter().min_by_key(|k| (k[0] + k[1], k[0])).ok_or(SeriesError::ZeroDivisor)?;
        let m0 = support.iter().map(|k| k[0]).min().unwrap_or(0);
        let m1 = support.iter().map(|k| k[1]).min().unwrap_or(0);
        if lead != [m0, m1] {
            return Err(SeriesError::AmbiguousLeadingTerm);
        }
        Ok(lead)
    }
}

/// Grain of a real-quadratic exponent `(x + y sqrt(D)) / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadGrain {
    pub den: u32,
    pub disc: u32,
}

/// Exponent `xi = (x + y sqrt(D)) / den` of `q1^xi q2^xi'`; graded by the trace
/// numerator `2x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadKey {
    pub x: i64,
    pub y: i64,
}

impl QuadKey {
    pub fn value(self, g: QuadGrain) -> QuadRational {
        let den = BigInt::from(g.den);
        QuadRational::new(
            Rational::new(BigInt::from(self.x), den.clone()),
            Rational::new(BigInt::from(self.y), den),
            g.disc,
        )
        .expect("grain carries a valid discriminant")
    }

    pub fn from_value(v: &QuadRational, g: QuadGrain) -> Result<Self, SeriesError> {
        if v.discriminant() != g.disc {
            return Err(SeriesError::GrainMismatch);
        }
        let den = Rational::from_integer(g.den.into());
        let x = v.rational_part() * &den;
        let y = v.surd_part() * &den;
        if !x.is_integer() || !y.is_integer() {
            return Err(SeriesError::Format(format!("exponent {v} is not a multiple of 1/{}", g.den)));
        }
        let conv = |r: Rational| i64::try_from(r.to_integer()).map_err(|_| SeriesError::Format("exponent out of range".into()));
        Ok(Self { x: conv(x)?, y: conv(y)? })
    }

    pub fn trace(self, g: QuadGrain) -> Rational {
        Rational::new(BigInt::from(2 * self.x), BigInt::from(g.den))
    }
}

impl Key for QuadKey {
    type Grain = QuadGrain;
    type Bound = i64;

    fn origin() -> Self {
        Self { x: 0, y: 0 }
    }
    fn shift(self, o: Self) -> Self {
        Self { x: self.x + o.x, y: self.y + o.y }
    }
    fn unshift(self, o: Self) -> Self {
        Self { x: self.x - o.x, y: self.y - o.y }
    }
    fn grade(self) -> i64 {
        2 * self.x
    }
    fn past(self, bound: i64) -> bool {
        2 * self.x >= bound
    }
    fn join_grain(a: QuadGrain, b: QuadGrain) -> Result<QuadGrain, SeriesError> {
        if a.disc != b.disc {
            return Err(SeriesError::GrainMismatch);
        }
        Ok(QuadGrain { den: lcm_u32(a.den, b.den), disc: a.disc })
    }
    fn regrain(self, from: QuadGrain, to: QuadGrain) -> Option<Self> {
        if from.disc != to.disc {
            return None;
        }
        Some(Self { x: scale_num(self.x, from.den, to.den)?, y: scale_num(self.y, from.den, to.den)? })
    }
    fn regrain_bound(b: i64, from: QuadGrain, to: QuadGrain) -> Option<i64> {
        if from.disc != to.disc {
            return None;
        }
        i64::regrain_bound(b, from.den, to.den)
    }
    fn key_to_json(self, g: QuadGrain) -> Vec<String> {
        vec![self.value(g).to_string()]
    }
    fn key_from_json(p: &[String], g: QuadGrain) -> Result<Self, SeriesError> {
        match p {
            [s] => {
                let v: QuadRational = s.parse().map_err(|_| SeriesError::Format(format!("bad exponent `{s}`")))?;
                Self::from_value(&v, g)
            }
            _ => Err(SeriesError::Format("expected one quadratic exponent".into())),
        }
    }
    fn bound_to_json(b: i64, g: QuadGrain) -> Value {
        json!(exponent_string(b, g.den))
    }
    fn bound_from_json(v: &Value, g: QuadGrain) -> Result<i64, SeriesError> {
        exponent_num(as_str(v, "trunc")?, g.den)
    }
    fn grain_to_json(g: QuadGrain) -> Vec<(&'static str, Value)> {
        vec![("grain", json!(g.den)), ("disc", json!(g.disc))]
    }
    fn grain_from_json(obj: &Value) -> Result<QuadGrain, SeriesError> {
        let den = as_u32(&obj["grain"], "grain")?;
        let disc = as_u32(&obj["disc"], "disc")?;
        QuadRational::from_rational(Rational::zero(), disc).map_err(|_| SeriesError::Format("bad disc".into()))?;
        Ok(QuadGrain { den, disc })
    }
}
