//! Exact coefficient fields: the rationals and prime fields Z/p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// The coefficient field of a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    /// Z/p for an odd prime p.
    PrimeField(u64),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// Macaulay2's default prime, used to model an infinite residue field.
    pub fn default_prime() -> FieldSpec {
        FieldSpec::PrimeField(32003)
    }

    pub fn validate(&self) -> Result<(), String> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField(p) => {
                if *p < 3 {
                    return Err(format!("prime field characteristic must be >= 3, got {p}"));
                }
                if !is_prime(*p) {
                    return Err(format!("{p} is not prime"));
                }
                Ok(())
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element; the variant must match the ring's `FieldSpec`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    /// Residue in 0..p.
    Fp(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp(a) => *a == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp(a) => *a == 1,
        }
    }
}

impl FieldSpec {
    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::PrimeField(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::PrimeField(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp(r)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldSpec::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            (FieldSpec::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp((x + p - y) % p)
            }
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldSpec::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x * y) % p),
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldSpec::PrimeField(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "division by zero");
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            (FieldSpec::PrimeField(p), Scalar::Fp(x)) => Scalar::Fp(mod_inv(*x, *p)),
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let bi = self.inv(b);
        self.mul(a, &bi)
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on signed words; p < 2^31 so no overflow
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "element not invertible");
    t.rem_euclid(p as i64) as u64
}

/// Render for display; rationals as `a/b`, prime-field residues balanced to
/// the symmetric range for readability.
pub fn render_scalar(field: &FieldSpec, s: &Scalar) -> String {
    match (field, s) {
        (FieldSpec::Rationals, Scalar::Rat(r)) => {
            if r.denom().is_one() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        (FieldSpec::PrimeField(p), Scalar::Fp(a)) => {
            if *a > p / 2 {
                format!("-{}", p - a)
            } else {
                a.to_string()
            }
        }
        _ => panic!("scalar kind does not match field"),
    }
}

/// True if the rendered form starts with a minus sign.
pub fn scalar_is_negative(field: &FieldSpec, s: &Scalar) -> bool {
    match (field, s) {
        (FieldSpec::Rationals, Scalar::Rat(r)) => r.is_negative(),
        (FieldSpec::PrimeField(p), Scalar::Fp(a)) => *a > p / 2,
        _ => false,
    }
}
