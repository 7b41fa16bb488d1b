//! Input validation and the catalog of spaces appearing in the flip tower.
//!
//! For a genus `g` curve and odd degree `d = 2w + 1` the tower runs
//! `M0 = P^{m-1}, M1, ..., Mw`, where each step blows up `Z_k^-` inside
//! `M_{k-1}` and blows down onto `Z_k^+` inside `M_k`. The last space `Mw`
//! is a `P^{n-1}`-bundle over the moduli space `N`.

use std::fmt;

use crate::error::{check_range, Error, Result};

/// Validated curve data `(g, d)` together with the derived integers `w`, `m`, `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModuliParams {
    g: i64,
    d: i64,
    w: i64,
    m: i64,
    n: i64,
}

impl ModuliParams {
    /// Checks `g >= 2`, `d` odd and `w >= 2g - 2`, in that order.
    pub fn new(g: i64, d: i64) -> Result<Self> {
        if g < 2 {
            return Err(Error::GenusTooSmall { g });
        }
        if d.rem_euclid(2) == 0 {
            return Err(Error::EvenDegree { d });
        }
        let w = (d - 1).div_euclid(2);
        let bound = 2 * g - 2;
        if w < bound {
            return Err(Error::DegreeTooSmall { w, bound });
        }
        let p = ModuliParams {
            g,
            d,
            w,
            m: d + g - 1,
            n: d - 2 * g + 2,
        };
        // The middle range s = 0..=m-2k-2 of every flip step is nonempty.
        debug_assert!((1..=p.w).all(|k| p.m - 2 * k - 2 >= 0));
        debug_assert_eq!(p.m - p.n, 3 * g - 3);
        Ok(p)
    }

    /// Smallest admissible degree for genus `g`, i.e. `d = 4g - 3`.
    pub fn minimal(g: i64) -> Result<Self> {
        Self::new(g, 4 * g - 3)
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Number of flips.
    pub fn w(&self) -> i64 {
        self.w
    }

    /// `M0` is `P^{m-1}`.
    pub fn m(&self) -> i64 {
        self.m
    }

    /// `Mw` is a projective bundle with fiber `P^{n-1}` over `N`.
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn flips(&self) -> usize {
        self.w as usize
    }

    pub fn dim_n(&self) -> i64 {
        3 * self.g - 3
    }

    pub fn dim_m(&self) -> i64 {
        self.m - 1
    }

    /// Rank of `W_k^-` on `S^k X`.
    pub fn rank_w_minus(&self, k: usize) -> i64 {
        k as i64
    }

    /// Rank of `W_k^+` on `S^k X`.
    pub fn rank_w_plus(&self, k: usize) -> i64 {
        self.m - 2 * k as i64
    }

    /// Codimension of `Z_k^-` in `M_{k-1}`.
    pub fn codim_z_minus(&self, k: usize) -> i64 {
        self.rank_w_plus(k)
    }

    /// Codimension of `Z_k^+` in `M_k`.
    pub fn codim_z_plus(&self, k: usize) -> i64 {
        self.rank_w_minus(k)
    }

    /// Dimension of `space`, after checking its index range.
    pub fn dim_of(&self, space: SpaceId) -> Result<i64> {
        let w = self.w;
        match space {
            SpaceId::M(k) => {
                check_range("k", k as i64, 0, w)?;
                Ok(self.m - 1)
            }
            SpaceId::SymX(k) => Ok(k as i64),
            SpaceId::N => Ok(self.dim_n()),
            SpaceId::ZMinus(k) => {
                check_range("k", k as i64, 1, w)?;
                Ok(2 * k as i64 - 1)
            }
            SpaceId::ZPlus(k) => {
                check_range("k", k as i64, 1, w)?;
                Ok(self.m - k as i64 - 1)
            }
            SpaceId::Exceptional(k) => {
                check_range("k", k as i64, 1, w)?;
                Ok(self.m - 2)
            }
        }
    }
}

impl fmt::Display for ModuliParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g={} d={} (w={}, m={}, n={})",
            self.g, self.d, self.w, self.m, self.n
        )
    }
}

/// Free-function form of [`ModuliParams::new`].
pub fn validate_params(g: i64, d: i64) -> Result<ModuliParams> {
    ModuliParams::new(g, d)
}

/// Free-function form of [`ModuliParams::dim_of`].
pub fn dim_of(p: &ModuliParams, space: SpaceId) -> Result<i64> {
    p.dim_of(space)
}

/// Every space that shows up in the tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceId {
    /// `M_k`, `0 <= k <= w`.
    M(usize),
    /// The symmetric power `S^k X`.
    SymX(usize),
    N,
    /// `Z_k^- = P(W_k^-)`, the blow-up center in `M_{k-1}`.
    ZMinus(usize),
    /// `Z_k^+ = P(W_k^+)`, the blow-down center in `M_k`.
    ZPlus(usize),
    /// Exceptional divisor of the common blow-up at step `k`.
    Exceptional(usize),
}
