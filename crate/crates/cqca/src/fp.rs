//! Scalar arithmetic in the prime field `F_p`.
//!
//! Residues are plain `u64` values in `0..p`; the modulus travels alongside as a
//! function argument.  Moduli up to `2^31` are supported so that products never
//! overflow `u64`.

use crate::error::{Error, Result};

/// Trial-division primality test; sufficient for the supported range `p <= 2^31`.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Validates that `p` is a supported prime modulus.
pub fn check_prime(p: u64) -> Result<()> {
    if p < 2 || p > (1 << 31) || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Reduces a signed integer into `0..p`.
pub fn norm(p: u64, v: i64) -> u64 {
    let m = p as i64;
    (((v % m) + m) % m) as u64
}

pub fn add(p: u64, a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub(p: u64, a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn neg(p: u64, a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn mul(p: u64, a: u64, b: u64) -> u64 {
    a * b % p
}

pub fn pow(p: u64, mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(p, acc, base);
        }
        base = mul(p, base, base);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse; panics on zero (callers must check).
pub fn inv(p: u64, a: u64) -> u64 {
    assert!(a % p != 0, "division by zero in F_{p}");
    pow(p, a, p - 2)
}

pub fn div(p: u64, a: u64, b: u64) -> u64 {
    mul(p, a, inv(p, b))
}

/// Whether a nonzero residue is a square in `F_p` (odd `p`).
pub fn is_square(p: u64, a: u64) -> bool {
    assert!(p % 2 == 1 && a % p != 0);
    pow(p, a, (p - 1) / 2) == 1
}

/// The smallest quadratic nonresidue modulo an odd prime.
pub fn smallest_nonresidue(p: u64) -> u64 {
    assert!(p % 2 == 1 && p > 2);
    (2..p).find(|&g| !is_square(p, g)).expect("odd prime has a nonresidue")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(17));
        assert!(!is_prime(1));
        assert!(!is_prime(15));
        assert!(check_prime(9).is_err());
        assert!(check_prime(13).is_ok());
    }

    #[test]
    fn field_ops() {
        let p = 7;
        for a in 0..p {
            for b in 0..p {
                assert_eq!(add(p, a, b), (a + b) % p);
                assert_eq!(sub(p, add(p, a, b), b), a);
                assert_eq!(mul(p, a, b), a * b % p);
            }
            if a != 0 {
                assert_eq!(mul(p, a, inv(p, a)), 1);
            }
        }
        assert_eq!(norm(p, -1), 6);
        assert_eq!(norm(p, -14), 0);
    }

    #[test]
    fn quadratic_residues() {
        // Squares mod 7 are {1, 2, 4}; smallest nonresidue is 3.
        assert!(is_square(7, 1));
        assert!(is_square(7, 2));
        assert!(is_square(7, 4));
        assert!(!is_square(7, 3));
        assert_eq!(smallest_nonresidue(7), 3);
        assert_eq!(smallest_nonresidue(5), 2);
        assert_eq!(smallest_nonresidue(3), 2);
    }
}
