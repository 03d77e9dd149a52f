use std::collections::HashMap;

use super::hilbert::poly_div_exact;

fn trimmed(p: &[i64]) -> &[i64] {
    let end = p.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
    &p[..end]
}

/// Coefficients read the same backwards.
pub fn palindrome_test(p: &[i64]) -> bool {
    let p = trimmed(p);
    p.iter().eq(p.iter().rev())
}

fn totient(n: usize) -> usize {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
}

fn cyclotomic_memo(n: usize, memo: &mut HashMap<usize, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut num = vec![0; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        let phi = cyclotomic_memo(d, memo);
        num = poly_div_exact(&num, &phi).expect("cyclotomic factors divide t^n - 1");
    }
    memo.insert(n, num.clone());
    num
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: usize) -> Vec<i64> {
    assert!(n >= 1);
    cyclotomic_memo(n, &mut HashMap::new())
}

/// True when `p` is `+-1` times a product of cyclotomic polynomials, found by
/// greedy exact division with every `Phi_n` of degree at most `deg p`
/// (`phi(n) >= sqrt(n / 2)` bounds `n` by `2 deg^2`).
pub fn cyclotomic_product_test(p: &[i64]) -> bool {
    let mut rest = trimmed(p).to_vec();
    if rest.is_empty() {
        return false;
    }
    let deg = rest.len() - 1;
    let mut memo = HashMap::new();
    for n in 1..=(2 * deg * deg).max(2) {
        if totient(n) > rest.len() - 1 {
            continue;
        }
        let phi = cyclotomic_memo(n, &mut memo);
        while let Some(q) = poly_div_exact(&rest, &phi) {
            rest = q;
        }
    }
    rest == [1] || rest == [-1]
}
