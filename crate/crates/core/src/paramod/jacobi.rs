use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;

use super::ParamodError;
use crate::numeric::{parse_rational, Rational};

/// A Jacobi form table `c(n, r)` of weight `k` and index `N`, trusted for `n <= maxn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiFormData {
    pub weight: i64,
    pub index: i64,
    pub source: String,
    pub maxn: i64,
    /// Nonzero entries with `r >= 0`.
    coeffs: BTreeMap<(i64, i64), Rational>,
}

/// Result of a coefficient query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lookup {
    Known(Rational),
    /// The theta-reduced representative `(n, r)` lies beyond `maxn`.
    Missing(i64, i64),
}

impl JacobiFormData {
    /// Builds and validates a table from entries with `r >= 0`.
    pub fn new(
        weight: i64,
        index: i64,
        source: impl Into<String>,
        maxn: i64,
        entries: impl IntoIterator<Item = ((i64, i64), Rational)>,
    ) -> Result<Self, ParamodError> {
        if index < 1 {
            return Err(ParamodError::Validation(format!("index {index} must be positive")));
        }
        let coeffs = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let data = Self { weight, index, source: source.into(), maxn, coeffs };
        data.validate()?;
        Ok(data)
    }

    fn validate(&self) -> Result<(), ParamodError> {
        let nn = self.index;
        for &(n, r) in self.coeffs.keys() {
            if r < 0 || n < 0 || n > self.maxn {
                return Err(ParamodError::Validation(format!("entry ({n},{r}) outside n in 0..={}, r >= 0", self.maxn)));
            }
            if r * r > 4 * nn * n {
                return Err(ParamodError::Koecher { n, r });
            }
            if self.weight % 2 != 0 && (r == 0 || r == nn) {
                return Err(ParamodError::Parity { n, r });
            }
            let (n2, r2, sign) = self.reduce(n, r);
            if (n2, r2) != (n, r) {
                let rep = self.coeffs.get(&(n2, r2)).cloned().unwrap_or_else(Rational::zero);
                if sign * rep != self.coeffs[&(n, r)] {
                    return Err(ParamodError::ThetaConflict { n, r });
                }
            }
        }
        Ok(())
    }

    /// The representative `(n', |r'|)` with `r'` in `(-N, N]` sharing `4Nn - r^2`
    /// and `r mod 2N`, and the parity sign relating the two.
    fn reduce(&self, n: i64, r: i64) -> (i64, i64, Rational) {
        let nn = self.index;
        let d = 4 * nn * n - r * r;
        let mut r2 = r.rem_euclid(2 * nn);
        if r2 > nn {
            r2 -= 2 * nn;
        }
        let n2 = (d + r2 * r2) / (4 * nn);
        let sign = if r2 < 0 && self.weight % 2 != 0 { -1 } else { 1 };
        (n2, r2.abs(), Rational::from_integer(sign.into()))
    }

    /// `c(n, r)` for any integers, using parity and theta-invariance.
    pub fn lookup(&self, n: i64, r: i64) -> Lookup {
        if n < 0 || r * r > 4 * self.index * n {
            return Lookup::Known(Rational::zero());
        }
        let (n2, r2, sign) = self.reduce(n, r);
        if n2 > self.maxn {
            return Lookup::Missing(n2, r2);
        }
        Lookup::Known(self.coeffs.get(&(n2, r2)).map_or_else(Rational::zero, |c| sign * c))
    }

    /// Like [`lookup`](Self::lookup) but `None` when missing.
    pub fn coeff(&self, n: i64, r: i64) -> Option<Rational> {
        match self.lookup(n, r) {
            Lookup::Known(c) => Some(c),
            Lookup::Missing(..) => None,
        }
    }

    /// Stored nonzero entries with `r >= 0`.
    pub fn entries(&self) -> impl Iterator<Item = (&(i64, i64), &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self, ParamodError> {
        let mut weight = None;
        let mut index = None;
        let mut source = String::new();
        let mut maxn = None;
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |msg: String| ParamodError::Parse { line, msg };
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            let rest = rest.trim();
            let int_field = |v: &str| v.parse::<i64>().map_err(|_| err(format!("`{head}` expects an integer, got `{v}`")));
            match head {
                "weight" => weight = Some(int_field(rest)?),
                "index" => index = Some(int_field(rest)?),
                "maxn" => maxn = Some(int_field(rest)?),
                "source" => source = rest.to_string(),
                _ => {
                    let parts: Vec<&str> = body.split_whitespace().collect();
                    let [n, r, c] = parts[..] else {
                        return Err(err(format!("expected `n r p/q`, got `{body}`")));
                    };
                    let n = n.parse::<i64>().map_err(|_| err(format!("bad n `{n}`")))?;
                    let r = r.parse::<i64>().map_err(|_| err(format!("bad r `{r}`")))?;
                    if n < 0 || r < 0 {
                        return Err(err(format!("entry ({n},{r}) must have n, r >= 0")));
                    }
                    let c = parse_rational(c).map_err(|e| err(e.to_string()))?;
                    if entries.iter().any(|((n2, r2), _)| (*n2, *r2) == (n, r)) {
                        return Err(err(format!("duplicate entry ({n},{r})")));
                    }
                    entries.push(((n, r), c));
                }
            }
        }
        let missing = |what: &str| ParamodError::Parse { line: 0, msg: format!("missing `{what}` header") };
        let weight = weight.ok_or_else(|| missing("weight"))?;
        let index = index.ok_or_else(|| missing("index"))?;
        let maxn = maxn.unwrap_or_else(|| entries.iter().map(|((n, _), _)| *n).max().unwrap_or(0));
        Self::new(weight, index, source, maxn, entries)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, ParamodError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ParamodError::Io(e.to_string()))?;
        Self::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    const G6: &str = "weight 6\nindex 5\nsource t\n1 4 1\n1 3 -2\n1 2 -8\n1 1 34\n1 0 -50\n2 6 1\n";

    #[test]
    fn parses_and_reduces() {
        let g = JacobiFormData::parse(G6).unwrap();
        assert_eq!((g.weight, g.index, g.maxn), (6, 5, 2));
        assert_eq!(g.coeff(1, 4), Some(int(1)));
        assert_eq!(g.coeff(1, -3), Some(int(-2)));
        assert_eq!(g.coeff(1, 0), Some(int(-50)));
        assert_eq!(g.coeff(1, 5), Some(int(0)));
        // D = 4 with r = 6 = -4 mod 10
        assert_eq!(g.coeff(2, 6), Some(int(1)));
        // D = 20 with r = 0 mod 10
        assert_eq!(g.coeff(6, 10), Some(int(-50)));
        assert_eq!(g.coeff(4, 10), Some(int(0)));
        assert_eq!(g.lookup(3, 0), Lookup::Missing(3, 0));
    }

    #[test]
    fn odd_weight_parity() {
        let g = JacobiFormData::parse("weight 5\nindex 7\n1 5 -1\n1 1 42\n").unwrap();
        assert_eq!(g.coeff(1, -5), Some(int(1)));
        assert_eq!(g.coeff(1, -1), Some(int(-42)));
        let bad = JacobiFormData::parse("weight 5\nindex 7\n1 0 3\n");
        assert!(matches!(bad, Err(ParamodError::Parity { n: 1, r: 0 })));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(JacobiFormData::parse("weight 6\nindex 5\n1 5 1\n"), Err(ParamodError::Koecher { .. })));
        assert!(matches!(JacobiFormData::parse("weight 6\nindex 5\n1 4 1\n2 6 2\n"), Err(ParamodError::ThetaConflict { .. })));
        assert!(matches!(JacobiFormData::parse("weight 6\nindex 5\n1 x 1\n"), Err(ParamodError::Parse { line: 3, .. })));
        assert!(matches!(JacobiFormData::parse("index 5\n"), Err(ParamodError::Parse { .. })));
        assert!(JacobiFormData::parse("weight 6\nindex 5\n1 -1 1\n").is_err());
    }

    #[test]
    fn empty_body_is_the_zero_form() {
        let z = JacobiFormData::parse("weight 6\nindex 5\nsource none\nmaxn 4\n").unwrap();
        assert!(z.is_zero());
        assert_eq!(z.coeff(3, 2), Some(int(0)));
    }
}
