use std::fmt;

use super::GralgError;

/// `numerator(t) / prod (1 - t^d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    /// Coefficient of `t^i` at index `i`.
    pub numerator: Vec<i64>,
    /// Each `d` stands for a factor `1 - t^d`.
    pub denominator: Vec<u32>,
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
    p
}

pub(crate) fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Exact quotient of `p` by `d`, `None` if the division leaves a remainder.
pub(crate) fn poly_div_exact(p: &[i64], d: &[i64]) -> Option<Vec<i64>> {
    let d = trim(d.to_vec());
    let p = trim(p.to_vec());
    let lead = *d.last()?;
    if lead == 0 || p.len() < d.len() {
        return (p.iter().all(|&c| c == 0)).then(|| vec![0]);
    }
    let mut rem = p.clone();
    let mut q = vec![0; p.len() - d.len() + 1];
    for i in (0..q.len()).rev() {
        let top = rem[i + d.len() - 1];
        if top % lead != 0 {
            return None;
        }
        let c = top / lead;
        q[i] = c;
        for (j, dj) in d.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    rem.iter().all(|&c| c == 0).then(|| trim(q))
}

fn one_minus(d: u32) -> Vec<i64> {
    let mut f = vec![0; d as usize + 1];
    f[0] = 1;
    f[d as usize] = -1;
    f
}

impl HilbertSeries {
    pub fn new(numerator: Vec<i64>, mut denominator: Vec<u32>) -> Self {
        denominator.sort_unstable();
        Self { numerator: trim(numerator), denominator }
    }

    /// Coefficients of `t^0..=t^kmax`.
    pub fn expand(&self, kmax: usize) -> Vec<i64> {
        let mut c = vec![0; kmax + 1];
        for (i, x) in self.numerator.iter().enumerate().take(kmax + 1) {
            c[i] = *x;
        }
        for &d in &self.denominator {
            let d = d as usize;
            for i in d..=kmax {
                c[i] += c[i - d];
            }
        }
        c
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn normalize(&self) -> Self {
        let mut num = self.numerator.clone();
        let mut den = Vec::new();
        for &d in &self.denominator {
            match poly_div_exact(&num, &one_minus(d)) {
                Some(q) => num = q,
                None => den.push(d),
            }
        }
        Self::new(num, den)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.denominator.clone();
        den.extend(&other.denominator);
        Self::new(poly_mul(&self.numerator, &other.numerator), den)
    }

    /// `(1 + t^8 + t^10) / ((1 - t^4)(1 - t^6)^2)`.
    pub fn a_star_symmetric() -> Self {
        Self::new(poly_from_terms(&[(0, 1), (8, 1), (10, 1)]), vec![4, 6, 6])
    }

    /// `(1 - t^2 + t^6 + t^12) / ((1 - t^2)(1 - t^4)(1 - t^6))`.
    pub fn a_star() -> Self {
        Self::new(poly_from_terms(&[(0, 1), (2, -1), (6, 1), (12, 1)]), vec![2, 4, 6])
    }

    /// `(1 + t^8) / ((1 - t^2)(1 - t^4)(1 - t^6))`: free over `X2, X4, Delta6` with `X8`.
    pub fn degenerate_hilbert() -> Self {
        Self::new(poly_from_terms(&[(0, 1), (8, 1)]), vec![2, 4, 6])
    }

    /// The ring of paramodular forms of level 5 over `(4, 5, 6, 12)`.
    pub fn level5() -> Self {
        let terms = [
            (0, 1),
            (6, 1),
            (7, 1),
            (8, 2),
            (9, 1),
            (10, 2),
            (11, 1),
            (12, 2),
            (14, 2),
            (16, 2),
            (18, 2),
            (19, 1),
            (20, 2),
            (21, 1),
            (22, 2),
            (23, 1),
            (24, 1),
            (30, 1),
        ];
        Self::new(poly_from_terms(&terms), vec![4, 5, 6, 12])
    }

    /// The ring of paramodular forms of level 7 over `(4, 4, 6, 12)`.
    pub fn level7() -> Self {
        let mut terms = vec![(0, 1), (5, 1), (24, 1), (29, 1)];
        terms.extend((6..=23).map(|e| (e, 2)));
        Self::new(poly_from_terms(&terms), vec![4, 4, 6, 12])
    }
}

pub fn poly_from_terms(terms: &[(usize, i64)]) -> Vec<i64> {
    let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut p = vec![0; deg + 1];
    for &(e, c) in terms {
        p[e] += c;
    }
    trim(p)
}

/// Parses sums of terms `c`, `c*t^e`, `ct^e`, `t`, `-t^e`, e.g. `1 + t^6 - 2t^8`.
pub fn parse_polynomial(s: &str) -> Result<Vec<i64>, GralgError> {
    let bad = |m: &str| GralgError::Parse(format!("{m} in `{s}`"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    let mut out = Vec::new();
    for term in terms {
        let (sign, body) = match term.as_bytes()[0] {
            b'+' => (1, &term[1..]),
            b'-' => (-1, &term[1..]),
            _ => (1, term),
        };
        let (coef, exp) = match body.find('t') {
            None => (body, 0usize),
            Some(pos) => {
                let coef = body[..pos].trim_end_matches('*');
                let rest = &body[pos + 1..];
                let exp = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(|| bad("expected `^`"))?.parse().map_err(|_| bad("bad exponent"))?
                };
                (coef, exp)
            }
        };
        let c: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad("bad coefficient"))? };
        out.push((exp, sign * c));
    }
    Ok(poly_from_terms(&out))
}

/// Displays `p` as `1 + t^6 - 2t^8`.
pub struct PolyDisplay<'a>(pub &'a [i64]);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, &c) in self.0.iter().enumerate().filter(|(_, c)| **c != 0) {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{e}")?,
                _ => write!(f, "{a}t^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", PolyDisplay(&self.numerator))?;
        if !self.denominator.is_empty() {
            write!(f, " / ")?;
            for d in &self.denominator {
                match d {
                    1 => write!(f, "(1 - t)")?,
                    _ => write!(f, "(1 - t^{d})")?,
                }
            }
        }
        Ok(())
    }
}
