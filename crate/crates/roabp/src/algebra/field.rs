//! Prime-field arithmetic on `u64` residues.
//!
//! The modulus is a per-session configuration carried by every value, so
//! mixed workloads (tests over tiny primes next to production runs over the
//! default Mersenne prime) coexist without global state.

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Default modulus: the Mersenne prime `2^31 - 1`.
pub const DEFAULT_MODULUS: u64 = (1 << 31) - 1;

/// A prime field `F_p`, validated at construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u64,
}

impl Field {
    /// Creates the field of integers modulo `p`. Fails unless `p` is a prime
    /// in `[2, 2^62)`.
    pub fn new(p: u64) -> Result<Field> {
        if !(2..1 << 62).contains(&p) || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Wraps an arbitrary integer into the field.
    pub fn el(&self, v: u64) -> Fp {
        Fp {
            value: v % self.p,
            field: *self,
        }
    }

    pub fn el_i64(&self, v: i64) -> Fp {
        let r = v.rem_euclid(self.p as i64) as u64;
        Fp {
            value: r,
            field: *self,
        }
    }

    pub fn zero(&self) -> Fp {
        self.el(0)
    }

    pub fn one(&self) -> Fp {
        self.el(1)
    }

    /// `count` pairwise distinct nonzero elements `1, 2, ...`, or an error if
    /// the field has too few.
    pub fn distinct_nonzero(&self, count: usize) -> Result<Vec<Fp>> {
        if (count as u128) >= self.p as u128 {
            return Err(Error::FieldTooSmall {
                needed: count as u128 + 1,
                modulus: self.p,
            });
        }
        Ok((1..=count as u64).map(|v| self.el(v)).collect())
    }
}

impl Default for Field {
    fn default() -> Self {
        Field { p: DEFAULT_MODULUS }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A field element: a residue `0 <= value < p` together with its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    field: Field,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero; callers guard with
    /// [`Fp::is_zero`] before dividing.
    pub fn inverse(&self) -> Fp {
        assert!(!self.is_zero(), "inverse of zero in {}", self.field);
        // p is prime, so a^(p-2) = a^-1.
        self.pow(self.field.p - 2)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
fn same_field(a: Fp, b: Fp) -> Field {
    debug_assert_eq!(a.field, b.field, "mixed moduli {} vs {}", a.field, b.field);
    a.field
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        let f = same_field(self, rhs);
        let mut s = self.value + rhs.value;
        if s >= f.p {
            s -= f.p;
        }
        Fp { value: s, field: f }
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        let f = same_field(self, rhs);
        let s = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + f.p - rhs.value
        };
        Fp { value: s, field: f }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        let f = same_field(self, rhs);
        let v = (self.value as u128 * rhs.value as u128 % f.p as u128) as u64;
        Fp { value: v, field: f }
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp {
                value: self.field.p - self.value,
                field: self.field,
            }
        }
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

impl Scalar for Fp {
    fn field(&self) -> Field {
        self.field
    }
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero(&self) -> bool {
        Fp::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn scale(&self, k: Fp) -> Self {
        *self * k
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for `u64` (the standard 12-witness set).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_default_and_small_primes() {
        assert!(Field::new(DEFAULT_MODULUS).is_ok());
        for p in [2u64, 3, 5, 101, 65537] {
            assert!(Field::new(p).is_ok(), "{p}");
        }
    }

    #[test]
    fn rejects_composites() {
        for p in [0u64, 1, 4, 100, 2147483647 * 2 + 1, 1 << 62] {
            assert!(Field::new(p).is_err(), "{p}");
        }
    }

    #[test]
    fn arithmetic_mod_101() {
        let f = Field::new(101).unwrap();
        let a = f.el(70);
        let b = f.el(60);
        assert_eq!((a + b).value(), 29);
        assert_eq!((a - b).value(), 10);
        assert_eq!((b - a).value(), 91);
        assert_eq!((a * b).value(), 70 * 60 % 101);
        assert_eq!((-a).value(), 31);
        assert_eq!((a * a.inverse()).value(), 1);
    }

    #[test]
    fn inverse_every_nonzero_small_prime() {
        let f = Field::new(13).unwrap();
        for v in 1..13 {
            let x = f.el(v);
            assert!((x * x.inverse()).is_one());
        }
    }

    #[test]
    fn distinct_nonzero_checks_field_size() {
        let f = Field::new(3).unwrap();
        assert_eq!(f.distinct_nonzero(2).unwrap().len(), 2);
        assert!(matches!(
            f.distinct_nonzero(3),
            Err(Error::FieldTooSmall { .. })
        ));
    }
}
