//! Integer Laurent polynomials in one variable `t`.
//!
//! Stored densely: `coeffs[k]` is the coefficient of `t^(low + k)`. The first
//! and last stored coefficients are always nonzero; the zero polynomial has
//! no coefficients at all.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(coeff: BigInt, exp: i64) -> Self {
        Self::from_dense(exp, vec![coeff])
    }

    /// `t^exp`
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(BigInt::one(), exp)
    }

    /// Builds `sum coeffs[k] * t^(low + k)`, trimming zero ends.
    pub fn from_dense(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents accumulate.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs)
    }

    /// Small-integer convenience constructor, ascending from `t^low`.
    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::from_dense(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let k = exp - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval_at_minus_one(&self) -> BigInt {
        self.terms()
            .map(|(e, c)| if e.is_even() { c.clone() } else { -c })
            .sum()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// The substitution `t -> t^k`.
    pub fn substitute(&self, k: u32) -> Self {
        assert!(k > 0, "substitution exponent must be positive");
        Self::from_terms(self.terms().map(|(e, c)| (e * k as i64, c.clone())))
    }

    /// The substitution `t -> t^-1`.
    pub fn reflect(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.reflect()
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`
    /// in `Z[t, t^-1]`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return None;
        }
        let dlead = divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(dlead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(self.low - divisor.low, quot))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms()
                .chain(rhs.terms())
                .map(|(e, c)| (e, c.clone())),
        )
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Renders ascending, e.g. `t^-1 - 1 + t` or `-2t^-3 + 5`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if e == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LaurentPoly {
        LaurentPoly::from_i64s(-1, &[1, -1, 1])
    }

    #[test]
    fn display_ascending() {
        assert_eq!(trefoil().to_string(), "t^-1 - 1 + t");
        assert_eq!(LaurentPoly::from_i64s(-1, &[-1, 3, -1]).to_string(), "-t^-1 + 3 - t");
        assert_eq!(LaurentPoly::from_i64s(0, &[0, 0, -2]).to_string(), "-2t^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
    }

    #[test]
    fn substitute_doubles_exponents() {
        let p = trefoil().substitute(2);
        assert_eq!(p, LaurentPoly::from_i64s(-2, &[1, 0, -1, 0, 1]));
        assert_eq!(trefoil().substitute(1), trefoil());
        assert_eq!(p.eval_at_one(), trefoil().eval_at_one());
    }

    #[test]
    fn trims_and_normalizes_zero() {
        let p = LaurentPoly::from_i64s(-3, &[0, 0, 0]);
        assert!(p.is_zero());
        assert_eq!(p, LaurentPoly::zero());
        let q = &trefoil() - &trefoil();
        assert!(q.is_zero());
    }

    #[test]
    fn exact_division() {
        // (t^6 - 1)(t - 1) / ((t^2 - 1)(t^3 - 1)) = t^2 - t + 1
        let num = LaurentPoly::from_i64s(0, &[-1, 0, 0, 0, 0, 0, 1])
            * LaurentPoly::from_i64s(0, &[-1, 1]);
        let den = LaurentPoly::from_i64s(0, &[-1, 0, 1]) * LaurentPoly::from_i64s(0, &[-1, 0, 0, 1]);
        assert_eq!(num.div_exact(&den), Some(LaurentPoly::from_i64s(0, &[1, -1, 1])));
        assert_eq!(trefoil().div_exact(&LaurentPoly::from_i64s(0, &[1, 1])), None);
        assert_eq!(
            LaurentPoly::from_i64s(0, &[3]).div_exact(&LaurentPoly::from_i64s(0, &[2])),
            None
        );
    }

    #[test]
    fn evaluations() {
        assert_eq!(trefoil().eval_at_one(), BigInt::from(1));
        assert_eq!(trefoil().eval_at_minus_one(), BigInt::from(-3));
        assert!(trefoil().is_symmetric());
        assert!(!LaurentPoly::from_i64s(0, &[1, 2]).is_symmetric());
    }
}
