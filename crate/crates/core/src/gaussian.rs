//! Arbitrary-precision Gaussian integers `Z[i]`.
//!
//! Besides ring arithmetic this module provides the pieces the predictor
//! needs: Euclidean division, prime factorization with ramified / inert /
//! split classification, the `ρ`-adic valuation and digits for `ρ = −1 + i`,
//! and orders of `ρ` modulo `±1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intfactor;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    /// The ramified prime `ρ = −1 + i` above 2.
    pub fn rho() -> Self {
        Self::new(-1, 1)
    }

    /// The Frobenius of `y² = x³ + x` over `F_5`, `π₅ = 1 + 2i`.
    pub fn pi5() -> Self {
        Self::new(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn conj(&self) -> Self {
        GaussInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `(q, r)` with `self = q·d + r` and `N(r) ≤ N(d)/2`.
    ///
    /// Both coordinates of `self/d` are rounded to the nearest integer, ties
    /// toward zero.
    pub fn div_rem(&self, d: &GaussInt) -> Result<(GaussInt, GaussInt)> {
        if d.is_zero() {
            return Err(Error::domain("division by zero in Z[i]"));
        }
        let num = self * &d.conj();
        let den = d.norm();
        let q = GaussInt {
            re: round_div(&num.re, &den),
            im: round_div(&num.im, &den),
        };
        let r = self - &(&q * d);
        Ok((q, r))
    }

    pub fn divides(&self, z: &GaussInt) -> bool {
        if self.is_zero() {
            return z.is_zero();
        }
        let num = z * &self.conj();
        let den = self.norm();
        num.re.is_multiple_of(&den) && num.im.is_multiple_of(&den)
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &GaussInt) -> Option<GaussInt> {
        if d.is_zero() {
            return None;
        }
        let num = self * &d.conj();
        let den = d.norm();
        let (qr, rr) = num.re.div_rem(&den);
        let (qi, ri) = num.im.div_rem(&den);
        (rr.is_zero() && ri.is_zero()).then_some(GaussInt { re: qr, im: qi })
    }

    /// `self mod m`, the remainder of [`GaussInt::div_rem`].
    pub fn rem(&self, m: &GaussInt) -> Result<GaussInt> {
        Ok(self.div_rem(m)?.1)
    }

    pub fn gcd(&self, other: &GaussInt) -> GaussInt {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.canonical_associate()
    }

    /// The four associates `u·self` for `u ∈ {1, i, −1, −i}`.
    pub fn associates(&self) -> [GaussInt; 4] {
        let i = GaussInt::i();
        let a1 = self * &i;
        let a2 = &a1 * &i;
        let a3 = &a2 * &i;
        [self.clone(), a1, a2, a3]
    }

    /// Associate with `re > 0, im ≥ 0` (zero maps to zero).
    pub fn canonical_associate(&self) -> GaussInt {
        if self.is_zero() {
            return self.clone();
        }
        self.associates()
            .into_iter()
            .find(|z| z.re.is_positive() && !z.im.is_negative())
            .expect("exactly one associate lies in the first quadrant")
    }

    /// `base^e mod m`, reduced at every step.
    pub fn pow_mod(&self, mut e: u128, m: &GaussInt) -> Result<GaussInt> {
        let mut acc = GaussInt::one().rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            base = (&base * &base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    // den > 0; nearest integer with ties toward zero
    let (q, r) = num.div_mod_floor(den);
    let twice = &r * 2;
    if &twice > den || (&twice == den && num.is_negative()) {
        q + 1
    } else {
        q
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", fmt_imag(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}i", self.re, sign, fmt_imag(&self.im.abs()))
            }
        }
    }
}

fn fmt_imag(b: &BigInt) -> String {
    if b.is_one() {
        String::new()
    } else if *b == BigInt::from(-1) {
        "-".to_string()
    } else {
        b.to_string()
    }
}

impl fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a> $trait<&'a GaussInt> for &'a GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: &'a GaussInt) -> GaussInt {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait for GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: GaussInt) -> GaussInt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussInt {
    re: &a.re + &b.re,
    im: &a.im + &b.im
});
forward_binop!(Sub, sub, |a, b| GaussInt {
    re: &a.re - &b.re,
    im: &a.im - &b.im
});
forward_binop!(Mul, mul, |a, b| GaussInt {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re
});

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        -(self.clone())
    }
}

impl From<i64> for GaussInt {
    fn from(a: i64) -> Self {
        GaussInt::new(a, 0)
    }
}

/// How a prime of `Z[i]` sits over its rational prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeClass {
    /// `ρ`, the only prime over 2.
    Ramified,
    /// A rational prime `≡ 3 (mod 4)`; norm `q²`.
    Inert,
    /// One of two conjugate primes over a rational prime `≡ 1 (mod 4)`.
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub prime: GaussInt,
    pub exponent: u32,
    pub class: PrimeClass,
}

impl PrimePower {
    /// The rational prime under this prime: `N(π)` for split and ramified
    /// primes, `π` itself for inert ones.
    pub fn rational_prime(&self) -> u128 {
        let norm = self.prime.norm().to_u128().expect("prime norms are small");
        match self.class {
            PrimeClass::Inert => self.prime.re.to_u128().expect("inert primes are positive"),
            _ => norm,
        }
    }

    pub fn value(&self) -> GaussInt {
        self.prime.pow(self.exponent as u64)
    }
}

/// `unit · Π primeᵉ` with canonical primes; `ρ` (if present) first, then by
/// norm and coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussFactorization {
    pub unit: GaussInt,
    pub factors: Vec<PrimePower>,
}

impl GaussFactorization {
    pub fn product(&self) -> GaussInt {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, f| &acc * &f.value())
    }

    /// Exponent of `ρ` (the `e₀` of the decomposition).
    pub fn rho_exponent(&self) -> u32 {
        self.factors
            .iter()
            .find(|f| f.class == PrimeClass::Ramified)
            .map_or(0, |f| f.exponent)
    }

    /// Prime powers other than the power of `ρ`.
    pub fn odd_part(&self) -> impl Iterator<Item = &PrimePower> {
        self.factors.iter().filter(|f| f.class != PrimeClass::Ramified)
    }
}

impl fmt::Display for GaussFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.unit)?;
        for pp in &self.factors {
            if pp.exponent == 1 {
                write!(f, "·({})", pp.prime)?;
            } else {
                write!(f, "·({})^{}", pp.prime, pp.exponent)?;
            }
        }
        Ok(())
    }
}

/// Factors a nonzero Gaussian integer by trial division of its norm.
pub fn factor(z: &GaussInt, bound: u64) -> Result<GaussFactorization> {
    if z.is_zero() {
        return Err(Error::domain("cannot factor 0"));
    }
    let norm = z.norm().to_u128().ok_or_else(|| Error::Resource {
        what: format!("norm of {z} exceeds 128 bits"),
        cofactor: Some(z.norm().to_string()),
    })?;
    let mut rest = z.clone();
    let mut factors = Vec::new();
    for (q, e) in intfactor::factor(norm, bound)? {
        if q == 2 {
            let rho = GaussInt::rho();
            for _ in 0..e {
                rest = rest.exact_div(&rho).expect("ρ divides every element of even norm");
            }
            factors.push(PrimePower {
                prime: rho,
                exponent: e,
                class: PrimeClass::Ramified,
            });
        } else if q % 4 == 3 {
            let prime = GaussInt::new(BigInt::from(q), 0);
            for _ in 0..e / 2 {
                rest = rest.exact_div(&prime).expect("inert prime divides z");
            }
            factors.push(PrimePower {
                prime,
                exponent: e / 2,
                class: PrimeClass::Inert,
            });
        } else {
            let pi = split_prime_over(q);
            for prime in [pi.clone(), pi.conj().canonical_associate()] {
                let mut k = 0;
                while let Some(next) = rest.exact_div(&prime) {
                    rest = next;
                    k += 1;
                }
                if k > 0 {
                    factors.push(PrimePower {
                        prime,
                        exponent: k,
                        class: PrimeClass::Split,
                    });
                }
            }
        }
    }
    if !rest.is_unit() {
        return Err(Error::inconsistent(format!(
            "factoring {z} left the non-unit cofactor {rest}"
        )));
    }
    factors.sort_by(|a, b| {
        (a.class != PrimeClass::Ramified, a.prime.norm(), &a.prime.re, &a.prime.im).cmp(&(
            b.class != PrimeClass::Ramified,
            b.prime.norm(),
            &b.prime.re,
            &b.prime.im,
        ))
    });
    Ok(GaussFactorization {
        unit: rest,
        factors,
    })
}

/// Canonical prime of norm `q` for a rational prime `q ≡ 1 (mod 4)`.
fn split_prime_over(q: u128) -> GaussInt {
    // a square root of -1 mod q comes from any non-residue c: c^{(q-1)/4}
    let qq = BigInt::from(q);
    let exp = BigInt::from((q - 1) / 4);
    let minus_one = &qq - 1;
    let root = (2u64..)
        .map(|c| BigInt::from(c).modpow(&exp, &qq))
        .find(|s| (s * s) % &qq == minus_one)
        .expect("a quadratic non-residue exists");
    GaussInt::new(qq, 0).gcd(&GaussInt::new(root, 1))
}

/// Largest `k` with `ρᵏ | z`.
pub fn rho_valuation(z: &GaussInt) -> Result<u32> {
    if z.is_zero() {
        return Err(Error::domain("ρ-valuation of 0 is infinite"));
    }
    let rho = GaussInt::rho();
    let mut z = z.clone();
    let mut k = 0;
    while let Some(next) = z.exact_div(&rho) {
        z = next;
        k += 1;
    }
    Ok(k)
}

/// Exponent of 2 in `n!`, via `n − s₂(n)`.
pub fn v2_factorial(n: u64) -> u64 {
    n - n.count_ones() as u64
}

/// Digits `a₀ … a_{k−1} ∈ {0,1}` with `z ≡ Σ aⱼ ρʲ (mod ρᵏ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RhoDigits {
    pub digits: Vec<u8>,
}

impl RhoDigits {
    /// `Σ aⱼ ρʲ` as a Gaussian integer.
    pub fn value(&self) -> GaussInt {
        let rho = GaussInt::rho();
        self.digits.iter().rev().fold(GaussInt::zero(), |acc, &d| {
            &(&acc * &rho) + &GaussInt::from(d as i64)
        })
    }
}

pub fn rho_digits(z: &GaussInt, k: usize) -> RhoDigits {
    let rho = GaussInt::rho();
    let mut z = z.clone();
    let mut digits = Vec::with_capacity(k);
    for _ in 0..k {
        // Z[i]/ρ = F_2 and a + bi ≡ a + b there
        let d: u8 = if (&z.re + &z.im).is_even() { 0 } else { 1 };
        if d == 1 {
            z = &z - &GaussInt::one();
        }
        z = z.exact_div(&rho).expect("the residue was removed");
        digits.push(d);
    }
    RhoDigits { digits }
}

/// Which congruence `baseˡ ≡ ±1` holds at the minimal exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PmSign {
    Plus,
    Minus,
    /// Only when `1 ≡ −1`, i.e. the modulus divides 2.
    Both,
}

/// Smallest `l ≥ 1` with `baseˡ ≡ 1` or `baseˡ ≡ −1 (mod modulus)`.
///
/// Computed from the multiplicative order of `base`: the order divides the
/// size of `(Z[i]/modulus)*`, which is obtained by factoring the modulus.
pub fn mod_order_pm(modulus: &GaussInt, base: &GaussInt, bound: u64) -> Result<(u64, PmSign)> {
    if modulus.is_zero() || modulus.is_unit() {
        return Err(Error::domain(format!(
            "modulus {modulus} must be a nonzero non-unit"
        )));
    }
    if !base.gcd(modulus).is_unit() {
        return Err(Error::domain(format!("{base} is not invertible modulo {modulus}")));
    }
    let fac = factor(modulus, bound)?;
    let mut group_order: u128 = 1;
    for pp in &fac.factors {
        let np = pp.prime.norm().to_u128().expect("prime norms are small");
        group_order *= np.pow(pp.exponent - 1) * (np - 1);
    }
    let is_one = |x: &GaussInt| -> Result<bool> { Ok(modulus.divides(&(x - &GaussInt::one()))) };
    let mut order = group_order;
    for r in intfactor::prime_divisors(group_order, bound)? {
        while order % r == 0 && is_one(&base.pow_mod(order / r, modulus)?)? {
            order /= r;
        }
    }
    let order = u64::try_from(order)
        .map_err(|_| Error::resource(format!("order {order} does not fit in 64 bits")))?;
    if modulus.divides(&GaussInt::from(2)) {
        return Ok((order, PmSign::Both));
    }
    if order % 2 == 0 {
        let half = base.pow_mod(order as u128 / 2, modulus)?;
        if modulus.divides(&(&half + &GaussInt::one())) {
            return Ok((order / 2, PmSign::Minus));
        }
    }
    Ok((order, PmSign::Plus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GaussInt {
        GaussInt::new(a, b)
    }

    #[test]
    fn ring_basics() {
        assert_eq!(g(1, 2).norm(), BigInt::from(5));
        assert_eq!(&g(-1, 1) * &g(-1, -1), g(2, 0));
        assert_eq!(g(3, -4).conj().conj(), g(3, -4));
        assert_eq!(g(7, 3).pow(0), GaussInt::one());
    }

    #[test]
    fn frobenius_powers() {
        let pi3 = GaussInt::pi5().pow(3);
        assert_eq!(&pi3 - &GaussInt::one(), g(-12, -2));
        assert_eq!(&pi3 + &GaussInt::one(), g(-10, -2));
    }

    #[test]
    fn division() {
        let z = g(17, -9);
        assert_eq!(z.div_rem(&GaussInt::one()).unwrap(), (z.clone(), GaussInt::zero()));
        assert!(g(-12, -2).div_rem(&GaussInt::rho()).unwrap().1.is_zero());
        assert_eq!(g(5, 0).div_rem(&g(1, 2)).unwrap(), (g(1, -2), GaussInt::zero()));
        assert!(matches!(z.div_rem(&GaussInt::zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn rounding_ties_go_toward_zero() {
        // 1/2 -> 0 and -1/2 -> 0
        let (q, r) = g(1, -1).div_rem(&g(2, 0)).unwrap();
        assert_eq!(q, GaussInt::zero());
        assert_eq!(r, g(1, -1));
        let (q, _) = g(3, -3).div_rem(&g(2, 0)).unwrap();
        assert_eq!(q, g(1, -1));
    }

    #[test]
    fn worked_example_factorizations() {
        let a = factor(&g(-12, -2), intfactor::DEFAULT_TRIAL_BOUND).unwrap();
        assert_eq!(a.product(), g(-12, -2));
        assert_eq!(a.rho_exponent(), 2);
        let odd: Vec<_> = a.odd_part().collect();
        assert_eq!(odd.len(), 1);
        assert_eq!(odd[0].prime.norm(), BigInt::from(37));
        assert_eq!(odd[0].class, PrimeClass::Split);
        assert!(odd[0].prime.associates().contains(&g(1, -6)));

        let b = factor(&g(-10, -2), intfactor::DEFAULT_TRIAL_BOUND).unwrap();
        assert_eq!(b.product(), g(-10, -2));
        assert_eq!(b.rho_exponent(), 3);
        let odd: Vec<_> = b.odd_part().collect();
        assert_eq!(odd.len(), 1);
        assert_eq!(odd[0].prime.norm(), BigInt::from(13));
        assert!(odd[0].prime.associates().contains(&g(-3, 2)));
    }

    #[test]
    fn inert_and_unit_factorizations() {
        let f = factor(&g(3, 0), 100).unwrap();
        assert_eq!(f.unit, GaussInt::one());
        assert_eq!(
            f.factors,
            vec![PrimePower {
                prime: g(3, 0),
                exponent: 1,
                class: PrimeClass::Inert
            }]
        );
        let u = factor(&g(0, -1), 100).unwrap();
        assert!(u.factors.is_empty());
        assert_eq!(u.unit, g(0, -1));
        assert!(matches!(factor(&GaussInt::zero(), 100), Err(Error::Domain(_))));
    }

    #[test]
    fn conjugate_split_primes_are_distinct_factors() {
        let f = factor(&g(5, 0), 100).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_ne!(f.factors[0].prime, f.factors[1].prime);
        assert_eq!(f.product(), g(5, 0));
    }

    #[test]
    fn valuations() {
        let pi = GaussInt::pi5();
        assert_eq!(rho_valuation(&(&pi.pow(2) - &GaussInt::one())).unwrap(), 5);
        assert_eq!(rho_valuation(&(&pi.pow(3) - &GaussInt::one())).unwrap(), 2);
        assert_eq!(rho_valuation(&GaussInt::one()).unwrap(), 0);
        assert!(rho_valuation(&GaussInt::zero()).is_err());
    }

    #[test]
    fn legendre() {
        assert_eq!(v2_factorial(4), 3);
        assert_eq!(v2_factorial(1), 0);
        assert_eq!(v2_factorial(10), 8);
    }

    #[test]
    fn rho_digit_examples() {
        assert_eq!(rho_digits(&GaussInt::zero(), 5).digits, vec![0; 5]);
        assert_eq!(rho_digits(&GaussInt::i(), 2).digits, vec![1, 1]);
        assert_eq!(rho_digits(&g(2, 0), 3).digits, vec![0, 0, 1]);
    }

    #[test]
    fn worked_example_orders() {
        let b = intfactor::DEFAULT_TRIAL_BOUND;
        assert_eq!(mod_order_pm(&g(1, -6), &GaussInt::rho(), b).unwrap().0, 9);
        assert_eq!(mod_order_pm(&g(-3, 2), &GaussInt::rho(), b).unwrap().0, 6);
        assert!(matches!(
            mod_order_pm(&g(1, 1), &GaussInt::rho(), b),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            mod_order_pm(&GaussInt::one(), &GaussInt::rho(), b),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn display() {
        assert_eq!(g(-12, -2).to_string(), "-12-2i");
        assert_eq!(g(-1, 1).to_string(), "-1+i");
        assert_eq!(g(0, -1).to_string(), "-i");
        assert_eq!(g(4, 0).to_string(), "4");
    }
}
