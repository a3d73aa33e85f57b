//! Rational scalars.
//!
//! All scalar arithmetic runs over [`Rat`], an arbitrary-precision fraction
//! kept in lowest terms with a positive denominator. The invariants are
//! enforced by `num-rational` on every construction, so a `Rat` is always in
//! canonical form.

use alloc::string::String;
use alloc::string::ToString;

pub use num_bigint::BigInt as Int;
pub use num_rational::BigRational as Rat;
pub use num_traits::{One, Signed, Zero};

/// Integer as a rational.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Fraction `n/d`; panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Parses `"num/den"` or a bare integer string. Whitespace is not trimmed.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: Int = num.parse().ok()?;
    let den: Int = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

/// Renders `num/den`, or just `num` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom() == &Int::from(1) {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Combined bit length of numerator and denominator; the pivot-selection
/// heuristic prefers entries with the smallest value of this.
pub fn bit_size(r: &Rat) -> u64 {
    r.numer().abs().bits() + r.denom().bits()
}
