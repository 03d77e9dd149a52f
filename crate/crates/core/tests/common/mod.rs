//! Seeded random-instance checks shared by the property tests and the
//! acceptance harness. Each returns the number of instances checked or the
//! first counterexample.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use paramod_core::paramod::{
    fricke_permute, gritsenko_lift, koecher, pullback_p4, FrickeView, JacobiFormData, LiftSource, P4Window,
    ParamodularSeries,
};
use paramod_core::{int, rat, BiExp, QExp, Rational};

pub const INSTANCES: usize = 200;

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-9..10), rng.random_range(1..4))
}

pub fn random_qexp(rng: &mut ChaCha8Rng, grain: u32, trunc: i64) -> QExp {
    let terms: Vec<_> = (0..rng.random_range(0..6))
        .map(|_| (rng.random_range(0..trunc), small_rational(rng)))
        .collect();
    QExp::from_terms(grain, trunc, terms)
}

pub fn random_biexp(rng: &mut ChaCha8Rng, trunc: [i64; 2]) -> BiExp {
    let terms: Vec<_> = (0..rng.random_range(0..6))
        .map(|_| ([rng.random_range(0..trunc[0]), rng.random_range(0..trunc[1])], small_rational(rng)))
        .collect();
    BiExp::from_terms([1, 2], trunc, terms)
}

pub fn series_ring_axioms(n: usize, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..n {
        let t = rng.random_range(3..12);
        let g = [1, 2, 3][i % 3];
        let (x, y, z) = (random_qexp(&mut rng, g, t), random_qexp(&mut rng, g, t), random_qexp(&mut rng, g, t));
        let one = QExp::one(g, t);
        // windows depend on valuations, so compare on the common window
        let eq = |a: &QExp, b: &QExp| a.agrees_with(b).unwrap() && a.trunc().min(b.trunc()) >= t;
        let checks = [
            ("distributivity", eq(&(&(&x + &y) * &z), &(&(&x * &z) + &(&y * &z)))),
            ("associativity", eq(&(&(&x * &y) * &z), &(&x * &(&y * &z)))),
            ("commutativity", eq(&(&x * &y), &(&y * &x))),
            ("unit", eq(&(&x * &one), &x)),
            ("negation", (&x + &(-&x)).is_zero()),
        ];
        if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(format!("qexp {name} fails on {x:?}, {y:?}, {z:?}"));
        }
        let tb = [rng.random_range(2..6), rng.random_range(2..6)];
        let (u, v, w) = (random_biexp(&mut rng, tb), random_biexp(&mut rng, tb), random_biexp(&mut rng, tb));
        let beq = |a: &BiExp, b: &BiExp| {
            let m = [a.trunc()[0].min(b.trunc()[0]), a.trunc()[1].min(b.trunc()[1])];
            a.agrees_with(b).unwrap() && m[0] >= tb[0] && m[1] >= tb[1]
        };
        if !beq(&(&(&u + &v) * &w), &(&(&u * &w) + &(&v * &w))) || !beq(&(&u * &v), &(&v * &u)) {
            return Err(format!("biexp axioms fail on {u:?}, {v:?}, {w:?}"));
        }
    }
    Ok(n)
}

pub fn truncation_monotonicity(n: usize, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n {
        let big = rng.random_range(4..14);
        let small = rng.random_range(1..big);
        let (x, y) = (random_qexp(&mut rng, 2, big), random_qexp(&mut rng, 2, big));
        let wide = (&x * &y).truncate(small);
        let narrow = &x.truncate(small) * &y.truncate(small);
        if narrow.trunc() < small || narrow.truncate(small) != wide {
            return Err(format!("window {small} of {big}: {x:?} * {y:?}"));
        }
        let tb = [big, big];
        let (u, v) = (random_biexp(&mut rng, tb), random_biexp(&mut rng, tb));
        let sb = [small, rng.random_range(1..=big)];
        let wide = (&u * &v).truncate(sb);
        let narrow = &u.truncate(sb) * &v.truncate(sb);
        if narrow.truncate(sb) != wide {
            return Err(format!("bi-window {sb:?}: {u:?} * {v:?}"));
        }
    }
    Ok(n)
}

/// A table with independent random values on `1 <= n <= maxn, 0 <= r <= N`.
pub fn random_table(rng: &mut ChaCha8Rng, level: i64, weight: i64, maxn: i64) -> JacobiFormData {
    let mut entries = Vec::new();
    for n in 1..=maxn {
        for r in 0..=level {
            let forbidden = weight % 2 != 0 && (r == 0 || r == level);
            if r * r <= 4 * level * n && !forbidden {
                entries.push(((n, r), int(rng.random_range(-20..21))));
            }
        }
    }
    JacobiFormData::new(weight, level, "random", maxn, entries).expect("random table is consistent")
}

fn random_level_weight(rng: &mut ChaCha8Rng) -> (i64, i64) {
    ([3, 5, 7, 9][rng.random_range(0..4)], rng.random_range(4..13))
}

pub fn lift_symmetry(n: usize, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n {
        let (level, weight) = random_level_weight(&mut rng);
        let phi = random_table(&mut rng, level, weight, 4);
        let f = gritsenko_lift(&phi, 2, 2).map_err(|e| e.to_string())?;
        if f.terms().filter(|([a, _, c], _)| a != c).count() == 0 {
            return Err(format!("level {level} weight {weight}: no off-diagonal terms to compare"));
        }
        for ([a, b, c], v) in f.terms() {
            if f.alpha(*c, *b, *a).as_ref() != Some(v) {
                return Err(format!("level {level} weight {weight}: alpha({a},{b},{c}) = {v} but the mirror differs"));
            }
        }
    }
    Ok(n)
}

pub fn fricke_p4_swap(n: usize, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nonzero = [0, 0];
    for i in 0..n {
        // odd weights pull back to zero on these windows; they would make the comparison vacuous
        let (level, weight) = random_level_weight(&mut rng);
        let weight = weight & !1;
        // a (2,2) box leaves a single q1 column above level 5
        let level = if i % 2 == 0 { level } else { level.min(5) };
        let phi = random_table(&mut rng, level, weight, 4);
        let (lhs, rhs) = if i % 2 == 0 {
            // unbounded lift coefficients
            let src = LiftSource::new(&phi).map_err(|e| e.to_string())?;
            let lhs = pullback_p4(&FrickeView(src.clone()), P4Window::default()).map_err(|e| e.to_string())?;
            (lhs, pullback_p4(&src, P4Window::default()).map_err(|e| e.to_string())?.swap())
        } else {
            let f = gritsenko_lift(&phi, 2, 2).map_err(|e| e.to_string())?;
            let g = fricke_permute(&f).map_err(|e| e.to_string())?;
            let lhs = pullback_p4(&g, P4Window::default()).map_err(|e| e.to_string())?;
            (lhs, pullback_p4(&f, P4Window::default()).map_err(|e| e.to_string())?.swap())
        };
        if !lhs.agrees_with(&rhs).map_err(|e| e.to_string())? {
            return Err(format!("level {level} weight {weight}: {lhs:?} vs {rhs:?}"));
        }
        nonzero[i % 2] += usize::from(!lhs.is_zero());
    }
    if 4 * nonzero.iter().min().unwrap() < n {
        return Err(format!("too few nonzero pullbacks: {nonzero:?} of {n}"));
    }
    Ok(n)
}

fn random_cone_series(rng: &mut ChaCha8Rng, level: i64, abox: i64, cbox: i64) -> ParamodularSeries {
    let mut terms = Vec::new();
    for _ in 0..rng.random_range(1..8) {
        let a = rng.random_range(0..=abox);
        let c = rng.random_range(0..=cbox);
        let bmax = ((4 * level * a * c) as f64).sqrt() as i64;
        let b = rng.random_range(-bmax..=bmax);
        if koecher(level, a, b, c) {
            terms.push(([a, b, c], small_rational(rng)));
        }
    }
    ParamodularSeries::new(level, 2, abox, cbox, terms).expect("terms lie in the cone")
}

pub fn koecher_closure(n: usize, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n {
        let level = rng.random_range(1..12);
        let (x, y) = (random_cone_series(&mut rng, level, 4, 4), random_cone_series(&mut rng, level, 4, 4));
        let p = x.try_mul(&y).map_err(|e| format!("level {level}: {e}"))?;
        if let Some(k) = p.terms().map(|(k, _)| *k).find(|[a, b, c]| !koecher(level, *a, *b, *c)) {
            return Err(format!("level {level}: product term {k:?} outside the cone"));
        }
        if p.weight != 4 || p.bounds() != (4, 4) {
            return Err(format!("product bookkeeping: weight {} box {:?}", p.weight, p.bounds()));
        }
    }
    Ok(n)
}
