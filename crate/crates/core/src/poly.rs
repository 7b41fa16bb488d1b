//! Exact univariate polynomials with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in `t` over the integers, stored sparsely.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality and the zero polynomial has no terms.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    terms: BTreeMap<usize, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * t^degree`.
    pub fn monomial(coeff: impl Into<BigInt>, degree: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coeff.into());
        p
    }

    /// Dense constructor, `coeffs[i]` is the coefficient of `t^i`.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        Self::from_terms(coeffs.iter().cloned().map(Into::into).enumerate())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (deg, c) in terms {
            p.add_term(deg, c);
        }
        p
    }

    /// `1 + t^stride + t^{2 stride} + ... ` with `count` terms; zero when `count == 0`.
    pub fn geometric(stride: usize, count: usize) -> Self {
        Self::from_terms((0..count).map(|i| (i * stride, BigInt::one())))
    }

    /// Poincaré polynomial of `P^dim`, zero for negative `dim`.
    pub fn projective_space(dim: i64) -> Self {
        Self::geometric(2, (dim + 1).max(0) as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.terms.get(&degree).cloned().unwrap_or_default()
    }

    /// Coefficient at a possibly negative degree (zero there).
    pub fn coeff_at(&self, degree: i64) -> BigInt {
        if degree < 0 {
            BigInt::zero()
        } else {
            self.coeff(degree as usize)
        }
    }

    /// Nonzero terms in ascending degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &BigInt)> + '_ {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    /// Dense coefficient vector up to the degree; empty for zero.
    pub fn to_dense(&self) -> Vec<BigInt> {
        match self.degree() {
            None => Vec::new(),
            Some(top) => (0..=top).map(|i| self.coeff(i)).collect(),
        }
    }

    pub fn add_term(&mut self, degree: usize, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(degree).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&degree);
        }
    }

    /// Multiply by `t^by`.
    pub fn shift(&self, by: usize) -> Self {
        IntPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (d + by, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        IntPolynomial {
            terms: self.terms.iter().map(|(d, c)| (*d, c * factor)).collect(),
        }
    }

    /// Quotient `q` with `self == q * divisor`, or [`Error::InexactDivision`]
    /// when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Result<IntPolynomial> {
        let (lead_deg, lead) = match divisor.terms.iter().next_back() {
            Some((d, c)) => (*d, c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = IntPolynomial::zero();
        while let Some((deg, c)) = rem.terms.iter().next_back().map(|(d, c)| (*d, c.clone())) {
            if deg < lead_deg {
                return Err(Error::InexactDivision);
            }
            if !(&c % &lead).is_zero() {
                return Err(Error::InexactDivision);
            }
            let q = IntPolynomial::monomial(c / &lead, deg - lead_deg);
            rem -= &(&q * divisor);
            quot += &q;
        }
        Ok(quot)
    }

    /// `c_i == c_{deg - i}` for every `i`; the zero polynomial counts as palindromic.
    pub fn is_palindromic(&self) -> bool {
        match self.degree() {
            None => true,
            Some(top) => self.terms().all(|(d, c)| self.coeff(top - d) == *c),
        }
    }

    /// Lowest-degree negative coefficient, if any.
    pub fn first_negative(&self) -> Option<(usize, &BigInt)> {
        self.terms().find(|(_, c)| c.is_negative())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.first_negative().is_none()
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `t = 1`.
    pub fn sum_of_coeffs(&self) -> BigInt {
        self.terms.values().sum()
    }
}

/// Free-function form of [`IntPolynomial::exact_div`].
pub fn exact_div(a: &IntPolynomial, b: &IntPolynomial) -> Result<IntPolynomial> {
    a.exact_div(b)
}

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        for (d, c) in rhs.terms() {
            self.add_term(d, c.clone());
        }
    }
}

impl SubAssign<&IntPolynomial> for IntPolynomial {
    fn sub_assign(&mut self, rhs: &IntPolynomial) {
        for (d, c) in rhs.terms() {
            self.add_term(d, -c);
        }
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (da, ca) in self.terms() {
            for (db, cb) in rhs.terms() {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl fmt::Display for IntPolynomial {
    /// Ascending degree, `1 + t^2 + 4t^3 - t^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (deg, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if deg == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{deg}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}
