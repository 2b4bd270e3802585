//! Helpers around exact rational coefficients.
//!
//! Coefficients are `num_rational::BigRational`, which is always stored fully
//! reduced with a positive denominator; equality is structural after
//! reduction. p-locality (denominator coprime to p) is an assertion checked
//! on demand, not a separate arithmetic type, because logarithm computations
//! genuinely leave the p-local subring before integrality conclusions are
//! drawn.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`; panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// True when the denominator is coprime to `p`.
pub fn is_p_local(r: &Rat, p: u32) -> bool {
    !(r.denom() % BigInt::from(p)).is_zero()
}

/// p-adic valuation. Returns `i64::MAX` for zero.
pub fn padic_val(r: &Rat, p: u32) -> i64 {
    if r.is_zero() {
        return i64::MAX;
    }
    int_val(r.numer(), p) - int_val(r.denom(), p)
}

fn int_val(n: &BigInt, p: u32) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// Residue of a p-integral rational mod p, as a value in `[0, p)`.
/// Returns `None` when the denominator is divisible by p.
pub fn mod_p(r: &Rat, p: u32) -> Option<u32> {
    if !is_p_local(r, p) {
        return None;
    }
    let pb = BigInt::from(p);
    let num = r.numer().mod_floor_ref(&pb);
    let den = r.denom().mod_floor_ref(&pb);
    // denominator inverse by Fermat (p prime, den coprime to p)
    let inv = mod_pow(&den, p - 2, &pb);
    let res = (num * inv).mod_floor_ref(&pb);
    Some(res.try_into().expect("residue fits in u32"))
}

fn mod_pow(base: &BigInt, mut exp: u32, modulus: &BigInt) -> BigInt {
    if exp == 0 {
        return BigInt::one();
    }
    let mut base = base.mod_floor_ref(modulus);
    let mut acc = BigInt::one();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc * &base).mod_floor_ref(modulus);
        }
        base = (&base * &base).mod_floor_ref(modulus);
        exp >>= 1;
    }
    acc
}

trait ModFloorRef {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt;
}

impl ModFloorRef for BigInt {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt {
        use num_integer::Integer;
        self.mod_floor(m)
    }
}

/// Parse "n" or "n/d" into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad integer `{t}`")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
    }
}

/// Canonical string form: "n" for integers, "n/d" otherwise.
pub fn format_rat(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_structural() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(-2, -4), ratio(1, 2));
        assert_eq!(format_rat(&ratio(2, -4)), "-1/2");
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_val(&rat(12), 2), 2);
        assert_eq!(padic_val(&ratio(3, 4), 2), -2);
        assert_eq!(padic_val(&rat(0), 2), i64::MAX);
        assert_eq!(padic_val(&rat(9), 3), 2);
        assert!(is_p_local(&ratio(1, 3), 2));
        assert!(!is_p_local(&ratio(1, 6), 2));
    }

    #[test]
    fn residues() {
        assert_eq!(mod_p(&rat(7), 3), Some(1));
        assert_eq!(mod_p(&ratio(1, 2), 3), Some(2)); // 2^{-1} = 2 mod 3
        assert_eq!(mod_p(&ratio(1, 2), 2), None);
        assert_eq!(mod_p(&rat(-1), 5), Some(4));
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-17", "3/7", "-3/7"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
