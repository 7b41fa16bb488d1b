//! Poincaré polynomials of symmetric powers of a curve and the closed-form
//! Poincaré polynomial of `N`.

use num_bigint::BigInt;

use crate::error::Result;
use crate::poly::IntPolynomial;

/// Power series in `q` with polynomial coefficients in `t`, truncated after `q^order`.
#[derive(Debug, Clone)]
struct TruncatedSeries {
    coeffs: Vec<IntPolynomial>,
}

impl TruncatedSeries {
    fn one(order: usize) -> Self {
        let mut coeffs = vec![IntPolynomial::zero(); order + 1];
        coeffs[0] = IntPolynomial::one();
        TruncatedSeries { coeffs }
    }

    fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Multiply by `1 + q * u`.
    fn mul_one_plus_q(&mut self, u: &IntPolynomial) {
        for i in (1..=self.order()).rev() {
            let carry = &self.coeffs[i - 1] * u;
            self.coeffs[i] += &carry;
        }
    }

    /// Divide by `1 - q * u`, i.e. multiply by `sum_j (q u)^j`.
    fn div_one_minus_q(&mut self, u: &IntPolynomial) {
        for i in 1..=self.order() {
            let carry = &self.coeffs[i - 1] * u;
            self.coeffs[i] += &carry;
        }
    }
}

/// Poincaré polynomials of `S^0 X, ..., S^{k_max} X` for a genus `g` curve,
/// read off the generating function
/// `sum_k P_t(S^k X) q^k = (1 + q t)^{2g} / ((1 - q)(1 - q t^2))`.
pub fn sym_power_table(g: i64, k_max: usize) -> Vec<IntPolynomial> {
    let mut series = TruncatedSeries::one(k_max);
    let t = IntPolynomial::monomial(1, 1);
    for _ in 0..2 * g {
        series.mul_one_plus_q(&t);
    }
    series.div_one_minus_q(&IntPolynomial::one());
    series.div_one_minus_q(&IntPolynomial::monomial(1, 2));
    series.coeffs
}

/// Poincaré polynomial of `S^k X` for a genus `g` curve.
pub fn sym_power_betti(g: i64, k: usize) -> IntPolynomial {
    sym_power_table(g, k)
        .pop()
        .expect("table has k + 1 entries")
}

/// `P_t(N) = ((1 + t^3)^{2g} - t^{2g} (1 + t)^{2g}) / ((1 - t^2)(1 - t^4))`.
///
/// Evaluated by direct expansion and exact division; shares nothing with the
/// flip recursion in [`crate::engine`].
pub fn closed_form_oracle_n(g: i64) -> Result<IntPolynomial> {
    let two_g = (2 * g) as u32;
    let one = IntPolynomial::one();
    let first = (&one + &IntPolynomial::monomial(1, 3)).pow(two_g);
    let second = (&one + &IntPolynomial::monomial(1, 1))
        .pow(two_g)
        .shift(2 * g as usize);
    let numerator = &first - &second;
    let denominator =
        &(&one - &IntPolynomial::monomial(1, 2)) * &(&one - &IntPolynomial::monomial(1, 4));
    numerator.exact_div(&denominator)
}

/// Binomial coefficient with `C(a, b) = 0` for `b < 0` or `b > a`.
pub(crate) fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || b > a {
        return BigInt::from(0);
    }
    let b = b.min(a - b);
    let mut acc = BigInt::from(1);
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}
