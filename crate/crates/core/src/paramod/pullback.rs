use std::collections::BTreeMap;

use num_traits::Zero;

use super::{koecher, CoefficientSource, JacobiFormData, LiftSource, ParamodError};
use crate::numeric::Rational;
use crate::series::{BiExp, QuadGrain, QuadKey, QuadPairExp};

/// Optional caps on the `P4` scan, in grain-2 numerators: rows `c < max_c`
/// and columns `x < max_x`.
#[derive(Debug, Clone, Copy, Default)]
pub struct P4Window {
    pub max_c: Option<i64>,
    pub max_x: Option<i64>,
}

/// Fiber sum of `P4` at `q1^{x/2} q2^{c/2}`, or `None` if some term is unknown.
fn p4_fiber(src: &dyn CoefficientSource, x: i64, c: i64) -> Option<Rational> {
    let nn = src.level();
    if (x - nn * c).rem_euclid(2) != 0 {
        return Some(Rational::zero());
    }
    let beta = (x - nn * c) / 2;
    let mut sum = Rational::zero();
    for a in 0..=(beta + nn * c).max(0) {
        let b = beta - 2 * a;
        if koecher(nn, a, b, c) {
            sum += src.alpha(a, b, c)?;
        }
    }
    Some(sum)
}

/// `F` on `((2t1, t1), (t1, t1/2 + t2/2N))`; `q^a r^b s^{Nc}` goes to
/// `q1^{2a + b + Nc/2} q2^{c/2}`. The output is the provable rectangle with
/// the longest short side, then the largest area, then more columns.
pub fn pullback_p4(src: &dyn CoefficientSource, window: P4Window) -> Result<BiExp, ParamodError> {
    let nn = src.level();
    if nn % 2 == 0 {
        return Err(ParamodError::Level { expected: "odd".into(), got: nn });
    }
    let (ah, ch) = src.box_hint();
    let rows = window.max_c.unwrap_or(ch + 2);
    let cap_x = window.max_x.unwrap_or(4 * (ah + 1));
    let mut prefixes: Vec<Vec<Rational>> = Vec::new();
    for c in 0..rows {
        let mut row = Vec::new();
        for x in 0..cap_x {
            match p4_fiber(src, x, c) {
                Some(v) => row.push(v),
                None => break,
            }
        }
        let done = row.is_empty();
        prefixes.push(row);
        if done {
            break;
        }
    }
    // the constant row never runs out of data; keep it level with the others
    let longest = prefixes.iter().skip(1).map(Vec::len).max();
    if let Some(m) = longest {
        prefixes[0].truncate(m.max(1));
    }
    let mut best = (0, 0);
    let mut t1 = i64::MAX;
    for (i, row) in prefixes.iter().enumerate() {
        t1 = t1.min(row.len() as i64);
        let t2 = i as i64 + 1;
        let score = |(p, q): (i64, i64)| (p.min(q), p * q, p);
        if score((t1, t2)) > score(best) {
            best = (t1, t2);
        }
    }
    let (t1, t2) = best;
    if t1 == 0 {
        return Err(ParamodError::EmptyWindow);
    }
    let terms = prefixes[..t2 as usize]
        .iter()
        .enumerate()
        .flat_map(|(c, row)| row[..t1 as usize].iter().enumerate().map(move |(x, v)| ([x as i64, c as i64], v.clone())));
    Ok(BiExp::from_terms([2, 2], [t1, t2], terms))
}

/// `P4` of the Gritsenko lift of `phi`, straight from the Jacobi table.
pub fn pullback_p4_lift(phi: &JacobiFormData) -> Result<BiExp, ParamodError> {
    pullback_p4(&LiftSource::new(phi)?, P4Window::default())
}

/// Optional trace cap for the real-quadratic pullbacks.
#[derive(Debug, Clone, Copy, Default)]
pub struct QuadWindow {
    pub trace_cap: Option<i64>,
}

struct QuadMap {
    level: i64,
    grain: QuadGrain,
    /// Trace of the exponent is `2a + b + m c`.
    m: i64,
    /// `a + c <= reach * trace` on the Koecher cone.
    reach: i64,
    key: fn(i64, i64, i64) -> QuadKey,
}

fn quad_pullback(src: &dyn CoefficientSource, map: &QuadMap, window: QuadWindow) -> Result<QuadPairExp, ParamodError> {
    if src.level() != map.level {
        return Err(ParamodError::Level { expected: map.level.to_string(), got: src.level() });
    }
    let (ah, ch) = src.box_hint();
    let cap = window.trace_cap.unwrap_or((2 * (ah + 1)).min(map.m * (ch + 1)));
    let mut acc: BTreeMap<QuadKey, Rational> = BTreeMap::new();
    let mut bound = cap;
    'trace: for t in 0..cap {
        let mut level_terms = Vec::new();
        for c in 0..=map.reach * t {
            for a in 0..=(map.reach * t - c) {
                let b = t - 2 * a - map.m * c;
                if !koecher(map.level, a, b, c) {
                    continue;
                }
                match src.alpha(a, b, c) {
                    Some(v) if v.is_zero() => {}
                    Some(v) => level_terms.push(((map.key)(a, b, c), v)),
                    None => {
                        bound = t;
                        break 'trace;
                    }
                }
            }
        }
        for (k, v) in level_terms {
            *acc.entry(k).or_insert_with(Rational::zero) += v;
        }
    }
    Ok(QuadPairExp::from_terms(map.grain, i64::from(map.grain.den) * bound, acc))
}

/// Level 5: `q^a r^b s^{5c}` goes to `q1^xi q2^xi'` with
/// `xi = a + b/2 + 3c/2 - (b + 5c) sqrt(5) / 10`.
pub fn pullback_p5(src: &dyn CoefficientSource, window: QuadWindow) -> Result<QuadPairExp, ParamodError> {
    let map = QuadMap {
        level: 5,
        grain: QuadGrain { den: 10, disc: 5 },
        m: 3,
        reach: 5,
        key: |a, b, c| QuadKey { x: 10 * a + 5 * b + 15 * c, y: -(b + 5 * c) },
    };
    quad_pullback(src, &map, window)
}

/// Level 7: `xi = a + b/2 + 2c + (2c - a) sqrt(2) / 4`.
pub fn pullback_p8(src: &dyn CoefficientSource, window: QuadWindow) -> Result<QuadPairExp, ParamodError> {
    let map = QuadMap {
        level: 7,
        grain: QuadGrain { den: 4, disc: 2 },
        m: 4,
        reach: 6,
        key: |a, b, c| QuadKey { x: 4 * a + 2 * b + 8 * c, y: 2 * c - a },
    };
    quad_pullback(src, &map, window)
}
