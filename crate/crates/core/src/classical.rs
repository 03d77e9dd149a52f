//! Level-one and level-`Gamma(2)` building blocks: Bernoulli numbers, divisor
//! sums, Eisenstein series, eta powers and the generators `e1`, `e2`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Pow, Zero};

use crate::linalg;
use crate::numeric::{int, rat, Rational};
use crate::series::{QExp, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassicalError {
    #[error("weight {0} is not valid here")]
    InvalidWeight(i64),
    #[error("argument {0} must be positive")]
    NonPositive(i64),
    #[error("undecidable at this truncation: {available} coefficients for {unknowns} unknowns")]
    Undecidable { available: usize, unknowns: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A `q`-expansion tagged with its weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalForm {
    pub weight: i64,
    pub expansion: QExp,
    pub label: String,
    /// Set for `E2`, which is only quasi-modular.
    pub quasi_modular: bool,
}

impl ClassicalForm {
    fn new(weight: i64, expansion: QExp, label: impl Into<String>) -> Self {
        Self { weight, expansion, label: label.into(), quasi_modular: false }
    }
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let s: Rational = (0..m).map(|j| Rational::from_integer(binomial(BigInt::from(m + 1), BigInt::from(j))) * &b[j]).sum();
        b.push(-s / int(m as i64 + 1));
    }
    b
}

/// The `k`-th Bernoulli number for even `k >= 2`.
pub fn bernoulli(k: i64) -> Result<Rational, ClassicalError> {
    if k < 2 || k % 2 != 0 {
        return Err(ClassicalError::InvalidWeight(k));
    }
    Ok(bernoulli_table(k as usize).pop().expect("nonempty"))
}

/// Sum of `k`-th powers of the positive divisors of `n`.
pub fn sigma(n: i64, k: u32) -> Result<BigInt, ClassicalError> {
    if n < 1 {
        return Err(ClassicalError::NonPositive(n));
    }
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    Ok(s)
}

fn eisenstein_series(k: i64, trunc: i64) -> Result<QExp, ClassicalError> {
    let factor = -int(2 * k) / bernoulli(k)?;
    let terms = std::iter::once((0, Rational::one())).chain(
        (1..trunc).map(|n| (n, Rational::from_integer(sigma(n, (k - 1) as u32).expect("n >= 1")) * &factor)),
    );
    Ok(QExp::from_terms(1, trunc, terms))
}

/// `E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n` for even `k >= 4`, trusted below `q^trunc`.
pub fn eisenstein(k: i64, trunc: i64) -> Result<ClassicalForm, ClassicalError> {
    if k < 4 || k % 2 != 0 {
        return Err(ClassicalError::InvalidWeight(k));
    }
    Ok(ClassicalForm::new(k, eisenstein_series(k, trunc)?, format!("E{k}")))
}

/// `E_2 = 1 - 24 sum sigma_1(n) q^n`.
pub fn eisenstein2(trunc: i64) -> ClassicalForm {
    let mut f = ClassicalForm::new(2, eisenstein_series(2, trunc).expect("k = 2 is valid"), "E2");
    f.quasi_modular = true;
    f
}

/// `e1 = 2 E2(2 tau) - E2(tau)`.
pub fn gamma2_e1(trunc: i64) -> ClassicalForm {
    let e2 = eisenstein2(trunc).expansion;
    let e = &e2.scale_up(2).scale(&int(2)) - &e2;
    ClassicalForm::new(2, e, "e1")
}

/// `e2 = E2(tau) - E2(tau/2) / 2`, with half-integral exponents.
pub fn gamma2_e2(trunc: i64) -> ClassicalForm {
    let wide = eisenstein2(2 * trunc).expansion;
    let e = &wide.truncate(trunc) - &wide.scale_down(2).scale(&rat(1, 2));
    ClassicalForm::new(2, e.with_grain(2).expect("grain 2 is exact"), "e2")
}

/// `prod_{n >= 1} (1 - q^n)` below `q^trunc`, by repeated sparse multiplication.
fn euler_product(trunc: i64) -> QExp {
    (1..trunc).fold(QExp::one(1, trunc), |acc, n| {
        &acc * &QExp::from_terms(1, trunc, [(0, Rational::one()), (n, -Rational::one())])
    })
}

/// `eta^m = q^{m/24} prod (1 - q^n)^m`, trusted below `q^trunc` (plus the shift).
pub fn eta_power(m: u32, trunc: i64) -> ClassicalForm {
    let p = euler_product(trunc).pow(m);
    let shift = i64::from(m);
    let terms = p.terms().map(|(k, c)| (24 * k + shift, c.clone()));
    let raw = QExp::from_terms(24, 24 * trunc + shift, terms);
    let g = 24 / num_integer::gcd(24, m);
    let expansion = raw.with_grain(g).expect("all exponents lie in (m/24) + Z");
    ClassicalForm::new(i64::from(m) / 2, expansion, format!("eta^{m}"))
}

/// `Delta = eta^24`.
pub fn delta(trunc: i64) -> ClassicalForm {
    let mut f = eta_power(24, trunc);
    f.label = "Delta".into();
    f
}

/// Exponent pairs `(a, b)` with `4a + 6b = k`, by decreasing `a`.
pub fn level1_monomials(k: i64) -> Vec<(u32, u32)> {
    if k < 0 || k % 2 != 0 {
        return Vec::new();
    }
    (0..=k / 6).filter(|b| (k - 6 * b) % 4 == 0).map(|b| (((k - 6 * b) / 4) as u32, b as u32)).collect()
}

/// Coordinates of `f` in the basis `E4^a E6^b` of weight `k`, or `None` if `f`
/// is not in that span on its window. Needs strictly more trusted
/// coefficients than basis elements.
pub fn level1_membership(f: &QExp, k: i64) -> Result<Option<Vec<((u32, u32), Rational)>>, ClassicalError> {
    let Ok(f) = f.with_grain(1) else {
        // a nonzero coefficient at a fractional exponent
        return Ok(None);
    };
    let monomials = level1_monomials(k);
    let available = usize::try_from(f.trunc()).unwrap_or(0);
    if available <= monomials.len() {
        return Err(ClassicalError::Undecidable { available, unknowns: monomials.len() });
    }
    let t = f.trunc();
    let e4 = eisenstein_series(4, t)?;
    let e6 = eisenstein_series(6, t)?;
    let basis: Vec<Vec<Rational>> = monomials.iter().map(|&(a, b)| (&e4.pow(a) * &e6.pow(b)).dense()).collect();
    let target = f.dense();
    if basis.is_empty() {
        return Ok(target.iter().all(Zero::is_zero).then(Vec::new));
    }
    Ok(linalg::solve(&linalg::transpose(&basis), &target).map(|x| monomials.into_iter().zip(x).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Akiyama-Tanigawa, independent of the recurrence above.
    fn bernoulli_oracle(n: usize) -> Rational {
        let mut a: Vec<Rational> = (0..=n).map(|m| rat(1, m as i64 + 1)).collect();
        for m in 0..=n {
            a[m] = rat(1, m as i64 + 1);
            for j in (1..=m).rev() {
                a[j - 1] = int(j as i64) * (&a[j - 1] - &a[j]);
            }
        }
        a[0].clone()
    }

    fn sigma_oracle(n: i64, k: u32) -> i64 {
        (1..=n).filter(|d| n % d == 0).map(|d| d.pow(k)).sum()
    }

    /// Dense integer expansion of prod (1 - q^n)^m.
    fn euler_oracle(m: usize, len: usize) -> Vec<i128> {
        let mut p = vec![0i128; len];
        p[0] = 1;
        for n in 1..len {
            for _ in 0..m {
                for i in (n..len).rev() {
                    p[i] -= p[i - n];
                }
            }
        }
        p
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), rat(1, 42));
        for k in (2..=20).step_by(2) {
            assert_eq!(bernoulli(k as i64).unwrap(), bernoulli_oracle(k));
        }
        assert!(bernoulli(5).is_err());
        assert!(bernoulli(0).is_err());
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(6, 3).unwrap(), BigInt::from(252));
        assert_eq!(sigma(1, 7).unwrap(), BigInt::from(1));
        assert_eq!(sigma(4, 1).unwrap(), BigInt::from(7));
        for n in 1..60 {
            for k in 0..5 {
                assert_eq!(sigma(n, k).unwrap(), BigInt::from(sigma_oracle(n, k)));
            }
        }
        assert!(sigma(0, 1).is_err());
    }

    #[test]
    fn eisenstein_coefficients() {
        let e4 = eisenstein(4, 12).unwrap().expansion;
        let e6 = eisenstein(6, 12).unwrap().expansion;
        assert_eq!(e4.coeff(1).unwrap(), int(240));
        assert_eq!(e6.coeff(1).unwrap(), int(-504));
        for k in [4, 6, 8, 10, 12] {
            let e = eisenstein(k, 15).unwrap().expansion;
            assert_eq!(e.coeff(0).unwrap(), int(1));
            let factor = -int(2 * k) / bernoulli_oracle(k as usize);
            for n in 1..15 {
                assert_eq!(e.coeff(n).unwrap(), &factor * int(sigma_oracle(n, (k - 1) as u32)));
            }
        }
        assert!(eisenstein(2, 5).is_err());
        assert!(eisenstein(5, 5).is_err());
        assert!(eisenstein2(4).quasi_modular);
    }

    #[test]
    fn gamma2_generators() {
        let e1 = gamma2_e1(6).expansion;
        assert_eq!(e1.grain(), 1);
        assert_eq!(e1.dense()[..4], [int(1), int(24), int(24), int(96)]);
        let e2 = gamma2_e2(6).expansion;
        assert_eq!(e2.grain(), 2);
        assert_eq!(e2.coeff(0).unwrap(), rat(1, 2));
        assert_eq!(e2.phase_twist_t().unwrap(), &e1 - &e2);
        assert_eq!(e1.phase_twist_t().unwrap(), e1);
        let e2_doubled = eisenstein2(8).expansion.scale_up(2);
        assert_eq!(e2_doubled.coeff(2).unwrap(), int(-24));
    }

    #[test]
    fn eta_powers_match_the_product_oracle() {
        let d = delta(10).expansion;
        assert_eq!(d.coeff(2).unwrap(), int(-24));
        let oracle = euler_oracle(24, 10);
        for n in 1..10 {
            assert_eq!(d.coeff(n).unwrap(), int(oracle[n as usize - 1] as i64));
        }
        let e12 = eta_power(12, 10).expansion;
        assert_eq!(e12.grain(), 2);
        assert_eq!(e12.terms().next(), Some((&1, &int(1))));
        // eta^12 * eta^12 = eta^24
        assert!((&e12 * &e12).agrees_with(&d).unwrap());
    }

    #[test]
    fn eta_inverse_round_trip() {
        let d = delta(12).expansion;
        let one = QExp::one(1, 12);
        let inv = one.divide(&d).unwrap();
        assert!((&d * &inv).agrees_with(&one.truncate(inv.trunc())).unwrap());
    }

    #[test]
    fn eta_factorization_of_gamma2_generators() {
        let e1 = gamma2_e1(12).expansion;
        let e2 = gamma2_e2(12).expansion;
        let rhs = (&(&e1 + &e2) * &(&e1.scale(&int(2)) - &e2)) * (&e2.scale(&int(2)) - &e1);
        assert!(rhs.scale(&rat(1, 54)).agrees_with(&eta_power(12, 12).expansion).unwrap());
    }

    #[test]
    fn eta8_product_has_leading_exponent_one() {
        let a = eta_power(8, 6).expansion;
        let b = a.scale_up(2);
        let p = &a * &b;
        let (k, c) = p.terms().next().unwrap();
        assert_eq!((*k, p.grain()), (3, 3));
        assert_eq!(c, &int(1));
    }

    #[test]
    fn level1_membership_cases() {
        let e4 = eisenstein(4, 10).unwrap().expansion;
        let coords = level1_membership(&(&e4 * &e4), 8).unwrap().unwrap();
        assert_eq!(coords, vec![((2, 0), int(1))]);
        assert_eq!(level1_membership(&eisenstein2(6).expansion, 2).unwrap(), None);
        assert!(matches!(level1_membership(&e4.truncate(1), 4), Err(ClassicalError::Undecidable { .. })));
        // E4 + q is not modular
        let bumped = &e4 + &QExp::from_terms(1, 10, [(1, int(1))]);
        assert_eq!(level1_membership(&bumped, 4).unwrap(), None);
        let d = delta(6).expansion;
        let c = level1_membership(&d, 12).unwrap().unwrap();
        assert_eq!(c, vec![((3, 0), rat(1, 1728)), ((0, 2), rat(-1, 1728))]);
    }
}
