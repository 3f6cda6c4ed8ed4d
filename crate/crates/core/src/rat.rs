//! Exact rational scalars.
//!
//! Every coordinate, slope and rotation parameter in the crate is a [`Rat`].
//! `BigRational` keeps its values reduced with a positive denominator, which
//! is the canonical form the rest of the crate relies on for equality.

use num_bigint::BigInt;
use num_traits::{One, Signed};

pub use num_rational::BigRational;

pub type Rat = BigRational;

/// `num / den` as a reduced rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact positive `n`-th root of a positive rational, if it is rational.
pub fn nth_root(value: &Rat, n: u32) -> Option<Rat> {
    if n == 0 || !value.is_positive() {
        return None;
    }
    let num = value.numer();
    let den = value.denom();
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    if &num_traits::pow(rn.clone(), n as usize) == num
        && &num_traits::pow(rd.clone(), n as usize) == den
    {
        Some(Rat::new(rn, rd))
    } else {
        None
    }
}

/// `base^exp` for a signed exponent. `base` must be nonzero when `exp < 0`.
pub fn powi(base: &Rat, exp: i64) -> Rat {
    let b = if exp < 0 { base.recip() } else { base.clone() };
    num_traits::pow(b, exp.unsigned_abs() as usize)
}

/// Reduce a positive `value` into `[1, modulus)` by powers of `modulus > 1`.
pub(crate) fn reduce_mod_above(value: &Rat, modulus: &Rat) -> Rat {
    debug_assert!(modulus > &Rat::one() && value.is_positive());
    let one = Rat::one();
    let mut v = value.clone();
    while v >= *modulus {
        v /= modulus;
    }
    while v < one {
        v *= modulus;
    }
    v
}

/// Reduce a positive `value` into `(modulus, 1]` by powers of `0 < modulus < 1`.
pub(crate) fn reduce_mod_below(value: &Rat, modulus: &Rat) -> Rat {
    debug_assert!(modulus < &Rat::one() && modulus.is_positive() && value.is_positive());
    let one = Rat::one();
    let mut v = value.clone();
    while v > one {
        v *= modulus;
    }
    while v <= *modulus {
        v /= modulus;
    }
    v
}

pub(crate) fn is_unit_interval(t: &Rat) -> bool {
    !t.is_negative() && t <= &Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        assert_eq!(nth_root(&rat(9, 4), 2), Some(rat(3, 2)));
        assert_eq!(nth_root(&rat(27, 8), 3), Some(rat(3, 2)));
        assert_eq!(nth_root(&rat(3, 2), 2), None);
        assert_eq!(nth_root(&rat(-1, 1), 3), None);
        assert_eq!(nth_root(&int(1), 7), Some(int(1)));
    }

    #[test]
    fn reductions() {
        let m0 = rat(3, 2);
        assert_eq!(reduce_mod_above(&rat(1, 2), &m0), rat(9, 8));
        assert_eq!(reduce_mod_above(&m0, &m0), int(1));
        let m1 = rat(1, 2);
        assert_eq!(reduce_mod_below(&rat(3, 2), &m1), rat(3, 4));
        assert_eq!(reduce_mod_below(&m1, &m1), int(1));
        assert_eq!(powi(&rat(2, 3), -2), rat(9, 4));
    }
}
