//! The degree-8 polynomial behind the cutoff inequality
//! `(n-3) sqrt(n-5) > (n-4 + 1/(n-4)) sqrt((n-1 + sqrt(n^2-14n+61)) / 2)`
//! for `n >= 12`, together with its derivative table.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{check_range, Result};
use crate::polynomial::Polynomial;
use crate::rational::Rational;

/// Transcribed coefficients of `f` and of each displayed derivative,
/// highest degree first, indexed by derivative order.
const DISPLAYS: [&[i64]; 9] = [
    &[1, -39, 641, -5882, 33246, -119207, 265885, -338328, 188499],
    &[8, -273, 3846, -29410, 132984, -357621, 531770, -338328],
    &[56, -1638, 19230, -117640, 398952, -715242, 531770],
    &[336, -8190, 76920, -352920, 797904, -715242],
    &[1680, -32760, 230760, -705840, 797904],
    &[6720, -98280, 461520, -705840],
    &[20160, -196560, 461520],
    &[40320, -196560],
    &[40320],
];

/// The `k`-th displayed polynomial (`k = 0` is `f` itself).
pub fn appendix_polynomial(k: usize) -> Result<Polynomial> {
    check_range("k", k, 0, 8, "0..=8")?;
    let mut coeffs: Vec<i64> = DISPLAYS[k].to_vec();
    coeffs.reverse();
    Ok(Polynomial::from_ints(&coeffs))
}

pub fn appendix_f(x: &Rational) -> Rational {
    appendix_polynomial(0).expect("k = 0 is valid").eval(x)
}

pub fn appendix_derivative(k: usize, x: &Rational) -> Result<Rational> {
    Ok(appendix_polynomial(k)?.eval(x))
}

/// Outcome of each route through the cutoff inequality at one `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AppendixCheck {
    pub n: usize,
    /// `(n-3) sqrt(n-5) / 2` and the right-hand side, in floating point.
    pub lhs: f64,
    pub rhs: f64,
    pub float_holds: bool,
    /// `4 (n-5) f(n) > 0`, exact.
    pub exact_holds: bool,
    /// The squared-out integer form equals `4 (n-5) f(n)` and the
    /// quantity squared in the first step is positive.
    pub reduction_holds: bool,
}

impl AppendixCheck {
    pub fn holds(&self) -> bool {
        self.float_holds && self.exact_holds && self.reduction_holds
    }
}

pub fn appendix_routes(n: usize) -> Result<AppendixCheck> {
    check_range("n", n, 12, usize::MAX, "at least 12")?;
    let nf = n as f64;
    let lhs = 0.5 * (nf - 3.0) * (nf - 5.0).sqrt();
    let rhs = 0.5
        * (nf - 4.0 + 1.0 / (nf - 4.0))
        * (0.5 * (nf - 1.0 + (nf * nf - 14.0 * nf + 61.0).sqrt())).sqrt();

    let ni = BigInt::from(n);
    let fx = appendix_f(&Rational::from_integer(ni.clone()));
    let scaled = Rational::from_integer(BigInt::from(4) * (&ni - 5)) * &fx;

    let sq = |x: &BigInt| x * x;
    let s = sq(&(&ni - 4)) + 1;
    let base = BigInt::from(2) * sq(&(&ni - 3)) * sq(&(&ni - 4)) * (&ni - 5) - sq(&s) * (&ni - 1);
    let disc = sq(&ni) - BigInt::from(14) * &ni + 61;
    let reduced = sq(&base) - sq(&sq(&s)) * disc;

    Ok(AppendixCheck {
        n,
        lhs,
        rhs,
        float_holds: lhs > rhs,
        exact_holds: scaled.is_positive(),
        reduction_holds: base.is_positive() && Rational::from_integer(reduced) == scaled,
    })
}

/// True iff the cutoff inequality holds at `n`, by both the floating-point
/// and the exact integer route.
pub fn appendix_inequality_check(n: usize) -> Result<bool> {
    appendix_routes(n).map(|c| c.holds())
}
