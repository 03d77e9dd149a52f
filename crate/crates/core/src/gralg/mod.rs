//! Graded-ring bookkeeping: Hilbert series, monomials, ranks, relations and
//! the Stanley criteria on Hilbert numerators.

mod hilbert;
mod stanley;

pub use hilbert::{parse_polynomial, poly_from_terms, HilbertSeries, PolyDisplay};
pub use stanley::{cyclotomic, cyclotomic_product_test, palindrome_test};

use std::collections::HashMap;

use crate::linalg;
use crate::numeric::Rational;
use crate::series::{Key, Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GralgError {
    #[error("weight {k}: {slots} coefficient slots for {monomials} monomials")]
    WindowTooSmall { k: u32, slots: usize, monomials: usize },
    #[error("weight {k}: rank {small} on the small window but {large} on the large one")]
    Unstable { k: u32, small: usize, large: usize },
    #[error("generator `{0}` has nonpositive weight or too short an expansion")]
    BadGenerator(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Keys whose truncation windows enumerate to a finite slot list.
pub trait SlotKey: Key {
    fn slots(bound: Self::Bound) -> Vec<Self>;
}

impl SlotKey for i64 {
    fn slots(bound: i64) -> Vec<i64> {
        (0..bound).collect()
    }
}

impl SlotKey for [i64; 2] {
    fn slots(b: [i64; 2]) -> Vec<[i64; 2]> {
        (0..b[0]).flat_map(|x| (0..b[1]).map(move |y| [x, y])).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Generator<K: Key> {
    pub label: String,
    pub weight: u32,
    pub expansion: Series<K>,
}

impl<K: Key> Generator<K> {
    pub fn new(label: impl Into<String>, weight: u32, expansion: Series<K>) -> Self {
        Self { label: label.into(), weight, expansion }
    }
}

/// Exponent vectors `m` with `sum m_i w_i = k`, lexicographically increasing.
pub fn monomials_of_weight(weights: &[u32], k: u32) -> Vec<Vec<u32>> {
    fn rec(weights: &[u32], k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match weights {
            [] => {
                if k == 0 {
                    out.push(prefix.clone());
                }
            }
            [w, rest @ ..] => {
                for m in 0..=k / w {
                    prefix.push(m);
                    rec(rest, k - m * w, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(weights, k, &mut Vec::new(), &mut out);
    out
}

/// A linear relation among weight-`k` monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Vec<u32>, Rational)>,
}

/// Generators evaluated on a small and a large window; answers are given
/// only when both windows agree.
#[derive(Debug, Clone)]
pub struct GeneratorSet<K: SlotKey> {
    gens: Vec<Generator<K>>,
    windows: [K::Bound; 2],
}

/// Per-weight comparison from [`hironaka_audit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditRow {
    pub k: u32,
    pub predicted: usize,
    pub rank: usize,
}

impl<K: SlotKey> GeneratorSet<K> {
    /// `windows[0]` must lie inside `windows[1]`, which every expansion must cover.
    pub fn new(gens: Vec<Generator<K>>, windows: [K::Bound; 2]) -> Result<Self, GralgError> {
        let mut grain = None;
        for g in &gens {
            if g.weight == 0 {
                return Err(GralgError::BadGenerator(g.label.clone()));
            }
            grain = Some(match grain {
                None => g.expansion.grain(),
                Some(a) => K::join_grain(a, g.expansion.grain())?,
            });
        }
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            let e = match grain {
                Some(gr) => g.expansion.with_grain(gr)?,
                None => g.expansion,
            };
            if e.truncate(windows[1]).trunc() != windows[1] {
                return Err(GralgError::BadGenerator(g.label));
            }
            out.push(Generator { expansion: e.truncate(windows[1]), ..g });
        }
        Ok(Self { gens: out, windows })
    }

    pub fn generators(&self) -> &[Generator<K>] {
        &self.gens
    }

    pub fn weights(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.weight).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.gens.iter().map(|g| g.label.as_str()).collect()
    }

    /// The same generators plus `extra`, on the same windows.
    pub fn extended(&self, extra: &[Generator<K>]) -> Result<Self, GralgError> {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(extra);
        Self::new(gens, self.windows)
    }

    pub fn monomials(&self, k: u32) -> Vec<Vec<u32>> {
        monomials_of_weight(&self.weights(), k)
    }

    fn one(&self) -> Series<K> {
        let grain = self.gens.first().map(|g| g.expansion.grain());
        let grain = grain.expect("a generator set used for products is nonempty");
        Series::one(grain, self.windows[1])
    }

    /// Products on the large window, memoized by exponent vector.
    fn expand_all(&self, monos: &[Vec<u32>]) -> Vec<Series<K>> {
        let mut cache: HashMap<Vec<u32>, Series<K>> = HashMap::new();
        monos.iter().map(|m| self.expand(m, &mut cache)).collect()
    }

    fn expand(&self, m: &[u32], cache: &mut HashMap<Vec<u32>, Series<K>>) -> Series<K> {
        if let Some(s) = cache.get(m) {
            return s.clone();
        }
        let s = match m.iter().position(|&e| e > 0) {
            None => self.one(),
            Some(i) => {
                let mut prev = m.to_vec();
                prev[i] -= 1;
                let p = self.expand(&prev, cache);
                (&p * &self.gens[i].expansion).truncate(self.windows[1])
            }
        };
        cache.insert(m.to_vec(), s.clone());
        s
    }

    /// Rows of the monomial-coefficient matrix on both windows, after the size check.
    fn matrices(&self, k: u32) -> Result<(Vec<Vec<u32>>, [Vec<Vec<Rational>>; 2]), GralgError> {
        let monos = self.monomials(k);
        let slots = self.windows.map(K::slots);
        for s in &slots {
            if s.len() <= monos.len() {
                return Err(GralgError::WindowTooSmall { k, slots: s.len(), monomials: monos.len() });
            }
        }
        let series = if monos.is_empty() { Vec::new() } else { self.expand_all(&monos) };
        let rows = slots.map(|s| {
            series.iter().map(|e| s.iter().map(|&key| e.coeff(key).expect("inside the window")).collect()).collect()
        });
        Ok((monos, rows))
    }

    fn stable_rank(&self, k: u32, rows: &[Vec<Vec<Rational>>; 2]) -> Result<usize, GralgError> {
        let small = linalg::rank(&rows[0]);
        let large = linalg::rank(&rows[1]);
        if small != large {
            return Err(GralgError::Unstable { k, small, large });
        }
        Ok(large)
    }

    /// Dimension of the span of weight-`k` monomials.
    pub fn dimension_by_rank(&self, k: u32) -> Result<usize, GralgError> {
        let (_, rows) = self.matrices(k)?;
        self.stable_rank(k, &rows)
    }

    /// A basis of linear relations among weight-`k` monomials.
    pub fn relations_in_weight(&self, k: u32) -> Result<Vec<Relation>, GralgError> {
        let (monos, rows) = self.matrices(k)?;
        self.stable_rank(k, &rows)?;
        let kernel = linalg::left_kernel(&rows[1]);
        Ok(kernel
            .into_iter()
            .map(|v| Relation {
                terms: monos.iter().cloned().zip(v).filter(|(_, c)| *c != Rational::from_integer(0.into())).collect(),
            })
            .collect())
    }

    /// Evaluates a relation on the large window.
    pub fn evaluate(&self, rel: &Relation) -> Series<K> {
        let mut cache = HashMap::new();
        let mut acc = Series::zero(self.one().grain(), self.windows[1]);
        for (m, c) in &rel.terms {
            acc = &acc + &self.expand(m, &mut cache).scale(c);
        }
        acc
    }
}

/// Predicted dimensions of a free module over `free` with basis `1` and the
/// `module` generators, against the rank of everything together.
pub fn hironaka_audit<K: SlotKey>(
    free: &GeneratorSet<K>,
    module: &[Generator<K>],
    kmax: u32,
) -> Result<Vec<AuditRow>, GralgError> {
    let all = free.extended(module)?;
    let fw = free.weights();
    (0..=kmax)
        .map(|k| {
            let mut predicted = monomials_of_weight(&fw, k).len();
            for g in module.iter().filter(|g| g.weight <= k) {
                predicted += monomials_of_weight(&fw, k - g.weight).len();
            }
            Ok(AuditRow { k, predicted, rank: all.dimension_by_rank(k)? })
        })
        .collect()
}
