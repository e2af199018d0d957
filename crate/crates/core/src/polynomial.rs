//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::de::{Deserialize, Deserializer};
use serde::ser::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Coefficients in ascending degree; trailing zeros are always trimmed, so
/// the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `x^2 - c`.
    pub fn x_squared_minus(c: Rational) -> Self {
        Self::new(vec![-c, Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational::to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational::int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// `x^k * self`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `1 + max |a_i / a_n|`, which exceeds the modulus of every root.
    pub fn cauchy_root_bound(&self) -> Option<Rational> {
        let lead = self.leading()?;
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        Some(max + Rational::one())
    }

    pub fn to_pq_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational::to_pq).collect()
    }

    pub fn from_pq_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        items
            .iter()
            .map(|s| rational::parse_pq(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// Whether `p` and every derivative of `p` have the sign of the leading
/// coefficient at `x`. For a real-rooted `p` this is exactly `x` lying
/// above the largest root.
pub fn exceeds_largest_root(p: &Polynomial, x: &Rational) -> bool {
    let Some(lead) = p.leading() else {
        return false;
    };
    let positive_lead = lead.is_positive();
    let mut d = p.clone();
    loop {
        let v = d.eval(x);
        let same_sign = if positive_lead { v.is_positive() } else { v.is_negative() };
        if !same_sign {
            return false;
        }
        if d.degree().unwrap_or(0) == 0 {
            return true;
        }
        d = d.derivative();
    }
}

/// Largest real root, bracketed in `[lo, hi]` and refined by bisection
/// until the bracket is narrower than `tol`.
///
/// The test at each midpoint is exact: `x` lies above the largest root
/// iff the polynomial and all its derivatives have the sign of the
/// leading coefficient at `x`. For real-rooted polynomials (every
/// characteristic polynomial of a symmetric matrix) this holds exactly on
/// `(largest root, inf)`, whatever the multiplicity of that root. For
/// other polynomials the threshold found is the largest real root among
/// the polynomial and its derivatives.
pub fn largest_root(p: &Polynomial, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let not_bracketed = Error::RootNotBracketed { lo, hi };
    let Some(lead) = p.leading() else {
        return Err(not_bracketed);
    };
    if p.degree() == Some(0) || lo >= hi {
        return Err(not_bracketed);
    }
    let positive_lead = lead.is_positive();
    let mut derivatives = vec![p.clone()];
    while derivatives.last().and_then(Polynomial::degree).unwrap_or(0) > 0 {
        let d = derivatives.last().expect("non-empty").derivative();
        derivatives.push(d);
    }
    let above = |x: &Rational| {
        derivatives.iter().all(|d| {
            let v = d.eval(x);
            if positive_lead {
                v.is_positive()
            } else {
                v.is_negative()
            }
        })
    };

    let mut lo_q = rational::from_f64(lo)?;
    let mut hi_q = rational::from_f64(hi)?;
    if above(&lo_q) || !above(&hi_q) {
        return Err(not_bracketed);
    }
    let tol_q = rational::from_f64(tol)?;
    let half = rational::frac(1, 2);
    while &hi_q - &lo_q > tol_q {
        let mid = (&lo_q + &hi_q) * &half;
        if above(&mid) {
            hi_q = mid;
        } else {
            lo_q = mid;
        }
    }
    Ok(rational::to_f64(&((lo_q + hi_q) * half)))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { " " } else { "" })?,
                _ => write!(f, "{}x^{k}", if show_coeff { " " } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pq_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        Polynomial::from_pq_strings(&items).map_err(serde::de::Error::custom)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn trimming_and_degree() {
        let p = Polynomial::new(vec![frac(1, 1), frac(0, 1), frac(0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Polynomial::from_ints(&[0, 0]).degree(), None);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = Polynomial::from_ints(&[-1, 0, 1]);
        let b = Polynomial::from_ints(&[1, 1]);
        assert_eq!(&a * &b, Polynomial::from_ints(&[-1, -1, 1, 1]));
        assert_eq!(&a + &b, Polynomial::from_ints(&[0, 1, 1]));
        assert_eq!(a.derivative(), Polynomial::from_ints(&[0, 2]));
        assert_eq!(b.shift(2), Polynomial::from_ints(&[0, 0, 1, 1]));
        assert_eq!(b.pow(3), Polynomial::from_ints(&[1, 3, 3, 1]));
        assert_eq!(a.eval(&frac(3, 2)), frac(5, 4));
    }

    #[test]
    fn display() {
        let p = Polynomial::new(vec![frac(625, 256), frac(0, 1), frac(-25, 8), frac(0, 1), frac(1, 1)]);
        assert_eq!(p.to_string(), "x^4 - 25/8 x^2 + 625/256");
        assert_eq!(Polynomial::from_ints(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn json_is_pq_strings() {
        let p = Polynomial::new(vec![frac(-1, 1), frac(0, 1), frac(1, 1)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["-1/1","0/1","1/1"]"#);
        assert_eq!(serde_json::from_str::<Polynomial>(&json).unwrap(), p);
    }

    #[test]
    fn largest_roots() {
        let p = Polynomial::from_ints(&[-1, 0, 1]);
        assert!((largest_root(&p, 0.0, 2.0, 1e-12).unwrap() - 1.0).abs() < 1e-12);
        let q = Polynomial::new(vec![frac(0, 1), frac(-25, 8), frac(0, 1), frac(1, 1)]);
        let r = largest_root(&q, 0.0, 10.0, 1e-12).unwrap();
        assert!((r - (25.0f64 / 8.0).sqrt()).abs() < 1e-11);
        // double root at 2 has no sign change but is still found
        let double = Polynomial::from_ints(&[4, -4, 1]);
        assert!((largest_root(&double, 0.0, 5.0, 1e-12).unwrap() - 2.0).abs() < 1e-11);
        // not bracketed
        assert!(matches!(
            largest_root(&p, 1.5, 2.0, 1e-12),
            Err(Error::RootNotBracketed { .. })
        ));
        assert!(largest_root(&p, 0.0, 0.5, 1e-12).is_err());
        assert!(largest_root(&Polynomial::one(), 0.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn negative_leading_coefficient() {
        let p = Polynomial::from_ints(&[1, 0, -1]);
        assert!((largest_root(&p, 0.0, 3.0, 1e-12).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cauchy_bound_exceeds_roots() {
        let p = Polynomial::from_ints(&[-6, 11, -6, 1]); // roots 1, 2, 3
        let bound = rational::to_f64(&p.cauchy_root_bound().unwrap());
        assert!(bound > 3.0);
        assert!((largest_root(&p, 2.5, bound, 1e-12).unwrap() - 3.0).abs() < 1e-11);
    }
}
