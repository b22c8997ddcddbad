//! Exact rational arithmetic helpers.
//!
//! All truth degrees, relation weights, and solver values in this crate are
//! arbitrary-precision rationals. Floats are never used: the semantics is
//! order-sensitive (strict inequalities decide branch closure), and any
//! rounding would corrupt verdicts.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// The rational number type used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Builds `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `1 − r`.
pub fn one_minus(r: &Rat) -> Rat {
    Rat::one() - r
}

/// True iff `r ∈ [0,1]`.
pub fn in_unit(r: &Rat) -> bool {
    !r.is_negative() && *r <= Rat::one()
}

/// Parses `"p/q"` or `"k"` into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let mk_int = |part: &str| -> Result<BigInt, String> {
        part.trim()
            .parse::<BigInt>()
            .map_err(|_| format!("malformed rational `{s}`"))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let num = mk_int(n)?;
            let den = mk_int(d)?;
            if den.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(Rat::new(num, den))
        }
        None => Ok(Rat::from_integer(mk_int(s)?)),
    }
}

/// Renders a rational as `"p/q"`, or `"k"` when it is an integer.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Returns the rational with the smallest denominator (and, among those, the
/// smallest numerator magnitude) inside the interval between `lo` and `hi`,
/// where each endpoint is excluded iff its `_open` flag is set.
///
/// The interval must be non-empty. This is the classic Stern–Brocot /
/// continued-fraction "simplest fraction" search; it is what lets solver
/// witnesses come out as readable values like `1/2` instead of huge
/// denominators accumulated during elimination.
pub fn simplest_in(lo: &Rat, lo_open: bool, hi: &Rat, hi_open: bool) -> Rat {
    assert!(
        lo < hi || (lo == hi && !lo_open && !hi_open),
        "empty interval in simplest_in"
    );
    // An integer in range always wins.
    let mut n = lo.ceil();
    if lo_open && &n == lo {
        n += Rat::one();
    }
    if &n < hi || (!hi_open && &n == hi) {
        return n;
    }
    // The interval now lies strictly inside (f, f+1) for f = ⌊lo⌋; recurse on
    // the reciprocal of the fractional part (endpoint roles swap).
    let f = lo.floor();
    let a = lo - &f; // may be 0 only when lo is the open integer endpoint
    let b = hi - &f;
    debug_assert!(b > Rat::zero() && b <= Rat::one());
    let y = if a.is_zero() {
        // Interval (0, b): simplest value is 1/k for the smallest valid k.
        let inv = b.recip();
        let mut k = inv.ceil();
        if hi_open && &k == &inv {
            k += Rat::one();
        }
        k
    } else {
        simplest_in(&b.recip(), hi_open, &a.recip(), lo_open)
    };
    f + y.recip()
}
