//! The ring of degenerate Hilbert modular forms generated by `f_ij = e_i(t1) e_j(t2)`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::classical::{eta_power, gamma2_e1, gamma2_e2, level1_membership, ClassicalError};
use crate::numeric::{int, rat, Rational};
use crate::series::{BiExp, QExp, SeriesError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    Mixed,
}

impl Symmetry {
    fn of(expansion: &BiExp) -> Self {
        let s = expansion.swap();
        if s == *expansion {
            Symmetry::Symmetric
        } else if s == -expansion {
            Symmetry::Antisymmetric
        } else {
            Symmetry::Mixed
        }
    }
}

/// A weighted bivariate expansion with its swap symmetry recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GForm {
    pub weight: i64,
    expansion: BiExp,
    symmetry: Symmetry,
}

impl GForm {
    pub fn new(weight: i64, expansion: BiExp) -> Self {
        let symmetry = Symmetry::of(&expansion);
        Self { weight, expansion, symmetry }
    }

    pub fn expansion(&self) -> &BiExp {
        &self.expansion
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.weight, self.expansion.scale(r))
    }

    pub fn pow(&self, n: u32) -> Self {
        Self::new(self.weight * i64::from(n), self.expansion.pow(n))
    }

    /// Sum of two forms of equal weight.
    pub fn try_add(&self, other: &Self) -> Option<Self> {
        (self.weight == other.weight).then(|| Self::new(self.weight, &self.expansion + &other.expansion))
    }
}

impl Add for &GForm {
    type Output = GForm;
    fn add(self, rhs: &GForm) -> GForm {
        self.try_add(rhs).expect("weights must agree")
    }
}

impl Sub for &GForm {
    type Output = GForm;
    fn sub(self, rhs: &GForm) -> GForm {
        self.try_add(&-rhs).expect("weights must agree")
    }
}

impl Neg for &GForm {
    type Output = GForm;
    fn neg(self) -> GForm {
        GForm { weight: self.weight, expansion: -&self.expansion, symmetry: self.symmetry }
    }
}

impl Mul for &GForm {
    type Output = GForm;
    fn mul(self, rhs: &GForm) -> GForm {
        GForm::new(self.weight + rhs.weight, &self.expansion * &rhs.expansion)
    }
}

fn lin(weight: i64, parts: &[(Rational, &GForm)]) -> GForm {
    let mut acc = parts[0].1.expansion.scale(&parts[0].0);
    for (c, f) in &parts[1..] {
        acc = &acc + &f.expansion.scale(c);
    }
    GForm::new(weight, acc)
}

/// `e1, e2` at grain 2 trusted below `q^trunc`.
fn boundary_pair(trunc: i64) -> [QExp; 2] {
    let e1 = gamma2_e1(trunc).expansion.with_grain(2).expect("refinement");
    [e1, gamma2_e2(trunc).expansion]
}

/// `f_ij = e_i(t1) e_j(t2)` for `i, j` in `{1, 2}`.
pub fn f(i: usize, j: usize, trunc: i64) -> GForm {
    assert!((1..=2).contains(&i) && (1..=2).contains(&j), "indices are 1 or 2");
    let e = boundary_pair(trunc);
    GForm::new(2, BiExp::tensor(&e[i - 1], &e[j - 1]))
}

/// The generators `X2, X4, Delta6, X8` sharing one truncation.
#[derive(Debug, Clone)]
pub struct Generators {
    pub trunc: i64,
    pub f: [[GForm; 2]; 2],
    pub x2: GForm,
    pub x4: GForm,
    pub delta6: GForm,
    pub x8: GForm,
}

impl Generators {
    pub fn new(trunc: i64) -> Self {
        let e = boundary_pair(trunc);
        let f = [0, 1].map(|i| [0, 1].map(|j| GForm::new(2, BiExp::tensor(&e[i], &e[j]))));
        let [[f11, f12], [f21, f22]] = &f;
        let x2 = lin(2, &[(rat(4, 3), f11), (rat(4, 3), f22), (rat(-2, 3), f12), (rat(-2, 3), f21)]);
        let x4 = (f12 - f21).pow(2).scale(&rat(1, 144));
        let eta12 = eta_power(12, trunc).expansion.with_grain(2).expect("refinement");
        let delta6 = GForm::new(6, BiExp::tensor(&eta12, &eta12));
        let x8 = &(&(&(f11 - f22) * &(f12 - f21)) * &(&(f12 + f21) - f11)) * &(&(f12 + f21) - f22);
        let x8 = x8.scale(&rat(1, 81));
        Self { trunc, f, x2, x4, delta6, x8 }
    }

    /// `Delta6` as the cubic in the `f_ij`.
    pub fn delta6_from_f(&self) -> GForm {
        let [[f11, f12], [f21, f22]] = &self.f;
        let one = int(1);
        let a = lin(2, &[(one.clone(), f11), (one.clone(), f12), (one.clone(), f21), (one.clone(), f22)]);
        let b = lin(2, &[(one.clone(), f11), (int(-2), f12), (int(-2), f21), (int(4), f22)]);
        let c = lin(2, &[(int(4), f11), (int(-2), f12), (int(-2), f21), (one, f22)]);
        (&(&a * &b) * &c).scale(&rat(1, 2916))
    }

    /// The five generators of the symmetric part of `A_*`, weights 4, 6, 6, 8, 10.
    pub fn a_star_symmetric(&self) -> Vec<GForm> {
        let (x2, x4, d6) = (&self.x2, &self.x4, &self.delta6);
        vec![
            &x2.pow(2) - &x4.scale(&int(48)),
            &x2.pow(3) - &(x2 * x4).scale(&int(72)),
            d6.clone(),
            x2 * d6,
            x4 * d6,
        ]
    }

    /// Antisymmetric module generators `X4 X8, Delta6 X8, X2 Delta6 X8`.
    pub fn a_star_antisymmetric(&self) -> Vec<GForm> {
        let x8 = &self.x8;
        let d8 = &self.delta6 * x8;
        vec![&self.x4 * x8, d8.clone(), &self.x2 * &d8]
    }
}

pub fn x2(trunc: i64) -> GForm {
    Generators::new(trunc).x2
}

pub fn x4(trunc: i64) -> GForm {
    Generators::new(trunc).x4
}

pub fn delta6(trunc: i64) -> GForm {
    Generators::new(trunc).delta6
}

pub fn x8(trunc: i64) -> GForm {
    Generators::new(trunc).x8
}

/// `Phi_1` sends `t1 -> i infinity`, `Phi_2` sends `t2 -> i infinity`.
pub fn phi(which: u8, x: &GForm) -> Result<QExp, SeriesError> {
    match which {
        1 => x.expansion.slice(0, 0),
        2 => x.expansion.slice(1, 0),
        _ => panic!("boundary index is 1 or 2"),
    }
}

/// Coefficients of the right side of `X8^2 = sum c X2^a X4^b Delta6^d`, as `(c, [a, b, d])`.
pub const RELATION_R: [(i64, [u32; 3]); 6] = [
    (1, [4, 2, 0]),
    (-128, [2, 3, 0]),
    (4096, [0, 4, 0]),
    (4, [3, 1, 1]),
    (-2304, [1, 2, 1]),
    (-6912, [0, 1, 2]),
];

/// `X8^2` minus a weighted sum of `X2^a X4^b Delta6^d` monomials.
pub fn relation_residual_with(g: &Generators, terms: &[(i64, [u32; 3])]) -> BiExp {
    let mut acc = g.x8.pow(2).expansion;
    for (c, [a, b, d]) in terms {
        let m = &(&g.x2.pow(*a) * &g.x4.pow(*b)) * &g.delta6.pow(*d);
        acc = &acc - &m.expansion.scale(&int(*c));
    }
    acc
}

/// Residual of the relation `R`; zero on the truncation window.
pub fn relation_r_residual(trunc: i64) -> BiExp {
    relation_residual_with(&Generators::new(trunc), &RELATION_R)
}

/// Both boundary values at `tau / 2` are level-one forms of the same weight.
pub fn a_star_membership(x: &GForm) -> Result<bool, ClassicalError> {
    for which in [1, 2] {
        let b = phi(which, x)?.scale_down(2);
        if level1_membership(&b, x.weight)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{delta, eisenstein};
    use num_traits::Zero;

    const T: i64 = 5;

    #[test]
    fn f_examples() {
        let g = Generators::new(T);
        let [[f11, f12], [f21, _]] = &g.f;
        assert_eq!(f11.expansion.coeff([0, 0]).unwrap(), int(1));
        assert_eq!(f12.expansion.coeff([0, 0]).unwrap(), rat(1, 2));
        assert_eq!(f12.expansion.swap(), f21.expansion);
        assert_eq!(f12.symmetry(), Symmetry::Mixed);
        assert_eq!(f(1, 2, T), *f12);
    }

    #[test]
    fn generator_symmetries_and_weights() {
        let g = Generators::new(T);
        assert_eq!(g.x2.symmetry(), Symmetry::Symmetric);
        assert_eq!(g.x4.symmetry(), Symmetry::Symmetric);
        assert_eq!(g.delta6.symmetry(), Symmetry::Symmetric);
        assert_eq!(g.x8.symmetry(), Symmetry::Antisymmetric);
        assert_eq!([g.x2.weight, g.x4.weight, g.delta6.weight, g.x8.weight], [2, 4, 6, 8]);
        assert_eq!((&g.x2 * &g.x8).symmetry(), Symmetry::Antisymmetric);
        assert_eq!((&g.x8 * &g.x8).symmetry(), Symmetry::Symmetric);
    }

    #[test]
    fn delta6_two_ways() {
        let g = Generators::new(T);
        assert!(g.delta6_from_f().expansion.agrees_with(&g.delta6.expansion).unwrap());
    }

    #[test]
    fn x4_vanishes_on_the_diagonal() {
        let g = Generators::new(T);
        let d = g.x4.expansion().diagonal().unwrap();
        assert!(d.is_zero());
        assert!(d.trunc() >= 2 * T);
    }

    #[test]
    fn diagonal_restrictions() {
        let g = Generators::new(T);
        let e4 = eisenstein(4, T).unwrap().expansion.with_grain(2).unwrap();
        assert!(g.x2.expansion().diagonal().unwrap().agrees_with(&e4).unwrap());
        let d = delta(T).expansion.with_grain(2).unwrap();
        assert!(g.delta6.expansion().diagonal().unwrap().agrees_with(&d).unwrap());
    }

    #[test]
    fn boundary_values() {
        let g = Generators::new(T);
        let e1 = gamma2_e1(T).expansion;
        assert!(phi(1, &g.x2).unwrap().agrees_with(&e1).unwrap());
        assert!(phi(1, &g.delta6).unwrap().is_zero());
        let eta8 = eta_power(8, T).expansion;
        let target = &eta8 * &eta8.scale_up(2);
        assert!(phi(1, &g.x8).unwrap().agrees_with(&target).unwrap());
        assert_eq!(phi(2, &g.x8).unwrap(), -phi(1, &g.x8).unwrap());
        let e2 = gamma2_e2(T).expansion;
        let half = &e1.scale(&rat(1, 2)) - &e2;
        assert!(phi(1, &g.x4).unwrap().agrees_with(&(&half * &half).scale(&rat(1, 144))).unwrap());
    }

    #[test]
    fn phi_is_multiplicative() {
        let g = Generators::new(T);
        for (a, b) in [(&g.x2, &g.x4), (&g.x4, &g.x8), (&g.x2, &g.x2)] {
            let lhs = phi(1, &(a * b)).unwrap();
            let rhs = &phi(1, a).unwrap() * &phi(1, b).unwrap();
            assert!(lhs.agrees_with(&rhs).unwrap());
        }
    }

    #[test]
    fn relation_r_holds_and_is_sensitive() {
        let g = Generators::new(T);
        let r = relation_residual_with(&g, &RELATION_R);
        assert!(r.is_zero());
        assert_eq!(r.trunc(), [2 * T, 2 * T]);
        let mut bad = RELATION_R;
        bad[2].0 = 4095;
        assert!(!relation_residual_with(&g, &bad).is_zero());
    }

    #[test]
    fn a_star_boundaries() {
        let g = Generators::new(6);
        let sym = g.a_star_symmetric();
        assert_eq!(sym.iter().map(|x| x.weight).collect::<Vec<_>>(), [4, 6, 6, 8, 10]);
        let e4 = eisenstein(4, 6).unwrap().expansion;
        let b = phi(1, &sym[0]).unwrap().scale_down(2).with_grain(1).unwrap();
        assert!(b.agrees_with(&e4).unwrap());
        let anti = g.a_star_antisymmetric();
        assert_eq!(anti.iter().map(|x| x.weight).collect::<Vec<_>>(), [12, 14, 16]);
        let b = phi(1, &anti[0]).unwrap().scale_down(2).with_grain(1).unwrap();
        assert!(b.agrees_with(&delta(6).expansion).unwrap());
        for x in [&sym[2], &sym[3], &sym[4], &anti[1], &anti[2]] {
            assert!(phi(1, x).unwrap().terms().all(|(_, c)| c.is_zero()));
            assert!(phi(1, x).unwrap().is_zero());
        }
        for x in sym.iter().chain(&anti) {
            assert!(a_star_membership(x).unwrap(), "weight {}", x.weight);
        }
        assert!(!a_star_membership(&g.x2).unwrap());
        assert!(!a_star_membership(&g.x4).unwrap());
    }

    #[test]
    fn membership_needs_room() {
        let g = Generators::new(1);
        assert!(matches!(a_star_membership(&g.delta6), Err(ClassicalError::Undecidable { .. })));
    }
}
