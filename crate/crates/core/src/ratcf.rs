//! Reduced rational slopes and negative/positive continued fractions.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// A reduced fraction `p/q` with `q >= 1`; the sign lives on the numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Slope> {
        if q == 0 {
            return invalid("slope denominator must be nonzero");
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn integer(n: i64) -> Slope {
        Slope { p: n, q: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.p
    }

    pub fn denominator(&self) -> i64 {
        self.q
    }

    pub fn is_integer(&self) -> bool {
        self.q == 1
    }

    /// `n = ceil(p/q)`.
    pub fn ceil(&self) -> i64 {
        Integer::div_ceil(&self.p, &self.q)
    }

    /// The `r` in `p/q = n - r/q` with `0 <= r < q`.
    pub fn r(&self) -> i64 {
        self.ceil() * self.q - self.p
    }

    pub fn is_half_integer(&self) -> bool {
        self.q == 2
    }

    pub fn to_ratio(&self) -> num_rational::Ratio<i64> {
        num_rational::Ratio::new_raw(self.p, self.q)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad slope {s:?}, expected p/q"));
        match s.split_once('/') {
            Some((a, b)) => {
                let p = a.trim().parse::<i64>().map_err(|_| bad())?;
                let q = b.trim().parse::<i64>().map_err(|_| bad())?;
                Slope::new(p, q)
            }
            None => Ok(Slope::integer(s.parse::<i64>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Slope, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Coefficients `[a_0, ..., a_l]` of `a_0 - 1/(a_1 - 1/(... - 1/a_l))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NegCF {
    pub coeffs: Vec<i64>,
}

impl NegCF {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Canonical means `a_0 >= 1` and every later coefficient is at least 2.
    pub fn is_canonical(&self) -> bool {
        match self.coeffs.split_first() {
            None => false,
            Some((a0, rest)) => *a0 >= 1 && rest.iter().all(|&a| a >= 2),
        }
    }
}

impl fmt::Display for NegCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for NegCF {
    type Err = Error;

    fn from_str(s: &str) -> Result<NegCF> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad continued fraction {s:?}")))?;
        let coeffs = inner
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad continued fraction {s:?}")))?;
        Ok(NegCF { coeffs })
    }
}

/// Canonical negative continued fraction of a slope `p/q >= 1`.
pub fn neg_cf_expand(s: Slope) -> Result<NegCF> {
    if s.p <= 0 {
        return invalid(format!("slope {s} must be positive"));
    }
    if s.p < s.q {
        return invalid(format!(
            "slope {s} lies in (0,1); replace q by some q' = q mod p with q' < p first"
        ));
    }
    let (mut p, mut q) = (s.p, s.q);
    let mut coeffs = Vec::new();
    loop {
        let a = Integer::div_ceil(&p, &q);
        coeffs.push(a);
        let rem = a * q - p;
        if rem == 0 {
            break;
        }
        // 1 / (a - p/q) = q / (a q - p)
        p = q;
        q = rem;
    }
    Ok(NegCF { coeffs })
}

/// Evaluates a negative continued fraction; fails on a zero denominator.
pub fn neg_cf_eval(cf: &NegCF) -> Result<Slope> {
    let (p, q) = eval_from_back(&cf.coeffs, -1)?;
    Slope::new(p, q)
}

/// Evaluates `a_1 + 1/(a_2 + 1/(... + 1/a_k))`.
pub fn pos_cf_eval(coeffs: &[i64]) -> Result<Slope> {
    let (p, q) = eval_from_back(coeffs, 1)?;
    Slope::new(p, q)
}

fn eval_from_back(coeffs: &[i64], sign: i64) -> Result<(i64, i64)> {
    let (last, rest) = coeffs
        .split_last()
        .ok_or_else(|| Error::InvalidInput("empty continued fraction".into()))?;
    let (mut p, mut q) = (*last, 1i64);
    for &a in rest.iter().rev() {
        if p == 0 {
            return invalid(format!("zero denominator while evaluating {coeffs:?}"));
        }
        // a + sign * q/p
        let np = a
            .checked_mul(p)
            .and_then(|x| x.checked_add(sign * q))
            .ok_or(Error::Overflow("continued fraction"))?;
        q = p;
        p = np;
    }
    let g = p.gcd(&q).max(1);
    Ok((p / g, q / g))
}

/// Projective evaluation: returns `(num, den)` with `den` possibly zero, so
/// that a leading coefficient of zero yields `1/0` style values.
pub fn neg_cf_eval_projective(coeffs: &[i64]) -> Result<(i64, i64)> {
    if coeffs.is_empty() {
        return invalid("empty continued fraction");
    }
    // Product of [[a, -1], [1, 0]] applied to (1, 0).
    let (mut num, mut den) = (1i64, 0i64);
    for &a in coeffs.iter().rev() {
        let n = a
            .checked_mul(num)
            .and_then(|x| x.checked_sub(den))
            .ok_or(Error::Overflow("continued fraction"))?;
        den = num;
        num = n;
    }
    let g = num.gcd(&den).max(1);
    let (mut num, mut den) = (num / g, den / g);
    if den < 0 || (den == 0 && num < 0) {
        num = -num;
        den = -den;
    }
    Ok((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_examples() {
        let s = Slope::new(107, 5).unwrap();
        assert_eq!(neg_cf_expand(s).unwrap().coeffs, vec![22, 2, 3]);
        assert_eq!(neg_cf_expand(Slope::integer(21)).unwrap().coeffs, vec![21]);
        assert_eq!(neg_cf_expand(Slope::new(7, 5).unwrap()).unwrap().coeffs, vec![2, 2, 3]);
        assert_eq!(neg_cf_expand(Slope::integer(1)).unwrap().coeffs, vec![1]);
    }

    #[test]
    fn eval_examples() {
        let cf = NegCF { coeffs: vec![22, 2, 3] };
        assert_eq!(neg_cf_eval(&cf).unwrap(), Slope::new(107, 5).unwrap());
        assert_eq!(neg_cf_eval(&NegCF { coeffs: vec![9] }).unwrap(), Slope::integer(9));
        assert_eq!(neg_cf_eval(&NegCF { coeffs: vec![3, 2] }).unwrap(), Slope::new(5, 2).unwrap());
        assert_eq!(pos_cf_eval(&[2]).unwrap(), Slope::integer(2));
        assert_eq!(pos_cf_eval(&[1, 2]).unwrap(), Slope::new(3, 2).unwrap());
        assert_eq!(pos_cf_eval(&[0, 1]).unwrap(), Slope::integer(1));
    }

    #[test]
    fn rejects_bad_slopes() {
        assert!(neg_cf_expand(Slope::new(-3, 2).unwrap()).is_err());
        assert!(neg_cf_expand(Slope::integer(0)).is_err());
        let err = neg_cf_expand(Slope::new(2, 5).unwrap()).unwrap_err();
        assert!(err.to_string().contains("(0,1)"));
        assert!(neg_cf_eval(&NegCF { coeffs: vec![2, 1, 1] }).is_err());
        assert!(pos_cf_eval(&[1, 0]).is_err());
        assert!(Slope::new(1, 0).is_err());
    }

    #[test]
    fn slope_parts() {
        let s = Slope::new(107, 5).unwrap();
        assert_eq!((s.ceil(), s.r()), (22, 3));
        let s = Slope::new(-6, -4).unwrap();
        assert_eq!((s.numerator(), s.denominator()), (3, 2));
        assert_eq!("43/2".parse::<Slope>().unwrap(), Slope::new(43, 2).unwrap());
        assert_eq!("21".parse::<Slope>().unwrap(), Slope::integer(21));
        assert_eq!("[22,2,3]".parse::<NegCF>().unwrap().to_string(), "[22,2,3]");
    }

    #[test]
    fn projective_values() {
        assert_eq!(neg_cf_eval_projective(&[0]).unwrap(), (0, 1));
        assert_eq!(neg_cf_eval_projective(&[2, 2]).unwrap(), (3, 2));
        assert_eq!(neg_cf_eval_projective(&[1]).unwrap(), (1, 1));
        assert_eq!(neg_cf_eval_projective(&[1, 1]).unwrap(), (0, 1));
        assert_eq!(neg_cf_eval_projective(&[0, 1]).unwrap(), (-1, 1));
    }
}
