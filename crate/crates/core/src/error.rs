use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("GenusTooSmall: genus {g} violates g >= 2")]
    GenusTooSmall { g: i64 },

    #[error("EvenDegree: degree {d} is even, but d = 2w+1 must be odd")]
    EvenDegree { d: i64 },

    #[error("DegreeTooSmall: w = {w} violates w >= 2g-2 = {bound}")]
    DegreeTooSmall { w: i64, bound: i64 },

    #[error("IndexOutOfRange: {what} = {value} outside {lo}..={hi}")]
    IndexOutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("InexactDivision: nonzero remainder")]
    InexactDivision,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("NegativeBettiNumber: M{k} has coefficient {value} at t^{degree}")]
    NegativeBettiNumber {
        k: usize,
        degree: usize,
        value: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range(what: &'static str, value: i64, lo: i64, hi: i64) -> Result<()> {
    if value < lo || value > hi {
        Err(Error::IndexOutOfRange {
            what,
            value,
            lo,
            hi,
        })
    } else {
        Ok(())
    }
}
