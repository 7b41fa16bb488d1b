//! Symbolic coefficients `C_r^s` of the left-hand map in the flip sequence.
//!
//! ```text
//! C_r^s = sum_{j=0}^{e} (-1)^{j+r-k} C(s+k-r+j, s+1) s_j(W_k^-) c_{e-j}(W_k^+),
//! e = m - 3k - s + r
//! ```
//!
//! The Segre classes of `W_k^-` and Chern classes of `W_k^+` stay symbolic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{check_range, Result};
use crate::params::ModuliParams;
use crate::poincare::binomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKind {
    /// `s_j(W_k^-)`
    SegreWMinus,
    /// `c_i(W_k^+)`
    ChernWPlus,
}

/// A formal characteristic class living on `S^k X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalClassSymbol {
    pub kind: ClassKind,
    pub index: u32,
    pub step: usize,
}

/// `s_j(W_k^-) · c_i(W_k^+)`; index 0 on either side is the unit class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub segre: u32,
    pub chern: u32,
}

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.segre + self.chern
    }

    /// The non-unit symbols in the monomial, Segre first.
    pub fn symbols(&self, step: usize) -> Vec<FormalClassSymbol> {
        let mut out = Vec::with_capacity(2);
        if self.segre > 0 {
            out.push(FormalClassSymbol {
                kind: ClassKind::SegreWMinus,
                index: self.segre,
                step,
            });
        }
        if self.chern > 0 {
            out.push(FormalClassSymbol {
                kind: ClassKind::ChernWPlus,
                index: self.chern,
                step,
            });
        }
        out
    }
}

/// Integer combination of monomials in the classes of `W_k^±`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffExpression {
    pub step: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl CoeffExpression {
    pub fn zero(step: usize) -> Self {
        CoeffExpression {
            step,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// Terms ordered by ascending Segre index.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for CoeffExpression {
    /// `2*c_2(W+) - 3*s_1(W-)*c_1(W+) + 4*s_2(W-)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in self.terms().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if mono.total_degree() == 0 || mag != BigInt::from(1) {
                factors.push(mag.to_string());
            }
            if mono.segre > 0 {
                factors.push(format!("s_{}(W-)", mono.segre));
            }
            if mono.chern > 0 {
                factors.push(format!("c_{}(W+)", mono.chern));
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Expands `C_r^s` at flip step `k`.
///
/// The sign `(-1)^{j+r-k}` is read by the parity of `j + r - k`; the binomial
/// vanishes outside `0 <= b <= a`. An empty summation range gives zero.
pub fn coeff_c(p: &ModuliParams, k: usize, r: i64, s: i64) -> Result<CoeffExpression> {
    check_range("k", k as i64, 1, p.w())?;
    let ki = k as i64;
    check_range("r", r, 0, ki - 2)?;
    check_range("s", s, 0, p.m() - 2 * ki - 2)?;

    let top = p.m() - 3 * ki - s + r;
    let mut expr = CoeffExpression::zero(k);
    for j in 0..=top {
        let sign = if (j + r - ki).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        let c = binomial(s + ki - r + j, s + 1) * sign;
        let mono = Monomial {
            segre: j as u32,
            chern: (top - j) as u32,
        };
        expr.add_term(mono, c);
    }
    Ok(expr)
}
