//! Arithmetic in `F_{p^n} = F_p[t]/(m(t))`, the projective line over it, the
//! map θ, and the `A / B / C` partition of `P¹(F_{5^n})`.

mod conway;
mod poly;

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::intfactor;

/// Largest field the crate will build a discrete-log table for.
pub const DLOG_TABLE_LIMIT: u64 = 10_000_000;

/// An element of `F_{p^n}` in the polynomial basis `1, t, …, t^{n-1}`.
///
/// Entries are always reduced mod `p`; equality is coefficient-wise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Box<[u32]>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn from_poly(mut c: Vec<u32>, n: usize) -> Self {
        c.resize(n, 0);
        FieldElement {
            coeffs: c.into_boxed_slice(),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.coeffs[..])
    }
}

/// Polynomial in `t`, highest degree first, e.g. `t^2+3t+2`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A point of `P¹(F_{p^n}) = F_{p^n} ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum P1Element {
    Finite(FieldElement),
    Infinity,
}

/// Class of a point of `P¹(F_{5^n})`.
///
/// `A`: ∞ and the x-coordinates of points of `E(F_{5^n})`; `B`: x-coordinates
/// of points defined only over `F_{5^{2n}}`; `C`: `±1` when `n` is odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartitionClass {
    A,
    B,
    C,
}

/// The field `F_p[t]/(m)` together with a fixed multiplicative generator.
///
/// Construction checks that the modulus is irreducible and that the
/// generator has order `p^n − 1`. The discrete-log table is built lazily on
/// first use and is read-only afterwards.
pub struct FieldSpec {
    p: u32,
    n: usize,
    order: u64,
    modulus: Vec<u32>,
    generator: FieldElement,
    dlog: OnceLock<Vec<u32>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl Clone for FieldSpec {
    fn clone(&self) -> Self {
        FieldSpec {
            p: self.p,
            n: self.n,
            order: self.order,
            modulus: self.modulus.clone(),
            generator: self.generator.clone(),
            dlog: OnceLock::new(),
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus && self.generator == other.generator
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// `F_{p^n}` with the default modulus: the Conway polynomial for `p = 5`,
    /// `n ≤ 12`, otherwise the smallest monic primitive polynomial.
    pub fn new(p: u32, n: usize) -> Result<Self> {
        let order = check_parameters(p, n)?;
        let modulus = match conway::lookup(p, n) {
            Some(m) => m.to_vec(),
            None => smallest_primitive_polynomial(p, n, order)?,
        };
        Self::build(p, n, order, modulus, None)
    }

    /// `F_p[t]/(modulus)` where `modulus` lists coefficients from the constant
    /// term up to the leading 1. Without an explicit generator, `t` is used if
    /// it is primitive, otherwise the smallest primitive element.
    pub fn with_modulus(p: u32, modulus: Vec<u32>, generator: Option<Vec<u32>>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::usage("modulus must have degree at least 1"));
        }
        let n = modulus.len() - 1;
        let order = check_parameters(p, n)?;
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::usage(format!("modulus coefficients must lie in 0..{p}")));
        }
        if modulus[n] != 1 {
            return Err(Error::usage("modulus must be monic"));
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::usage(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        Self::build(p, n, order, modulus, generator)
    }

    fn build(
        p: u32,
        n: usize,
        order: u64,
        modulus: Vec<u32>,
        generator: Option<Vec<u32>>,
    ) -> Result<Self> {
        let mut field = FieldSpec {
            p,
            n,
            order,
            modulus,
            generator: FieldElement::from_poly(vec![], n),
            dlog: OnceLock::new(),
        };
        let group_primes = intfactor::prime_divisors(order as u128 - 1, intfactor::DEFAULT_TRIAL_BOUND)?;
        let generator = match generator {
            Some(g) => {
                let g = field.element(&g)?;
                if !field.is_primitive(&g, &group_primes) {
                    return Err(Error::usage(format!(
                        "generator {g} does not have multiplicative order {}",
                        order - 1
                    )));
                }
                g
            }
            None => {
                let t = field.t();
                if field.is_primitive(&t, &group_primes) {
                    t
                } else {
                    (1..order)
                        .map(|k| field.decode(k))
                        .find(|x| field.is_primitive(x, &group_primes))
                        .expect("the multiplicative group of a finite field is cyclic")
                }
            }
        };
        field.generator = generator;
        Ok(field)
    }

    fn is_primitive(&self, g: &FieldElement, group_primes: &[u128]) -> bool {
        !g.is_zero()
            && group_primes
                .iter()
                .all(|&r| !self.is_one(&self.pow(g, (self.order - 1) / r as u64)))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `p^n`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_poly(vec![], self.n)
    }

    pub fn one(&self) -> FieldElement {
        self.constant(1)
    }

    /// The residue class of `t`.
    pub fn t(&self) -> FieldElement {
        FieldElement::from_poly(poly::rem(&[0, 1], &self.modulus, self.p), self.n)
    }

    /// The image of an integer in the prime field.
    pub fn constant(&self, c: i64) -> FieldElement {
        let p = self.p as i64;
        FieldElement::from_poly(vec![c.rem_euclid(p) as u32], self.n)
    }

    /// Element from coefficients (constant term first); entries must already
    /// lie in `0..p` and there may be at most `n` of them.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.n {
            return Err(Error::usage(format!(
                "{} coefficients given for a degree-{} extension",
                coeffs.len(),
                self.n
            )));
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::usage(format!("coefficients must lie in 0..{}", self.p)));
        }
        Ok(FieldElement::from_poly(coeffs.to_vec(), self.n))
    }

    /// Base-`p` index of an element, constant coefficient least significant.
    pub fn encode(&self, x: &FieldElement) -> u64 {
        x.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// Inverse of [`FieldSpec::encode`]; `idx` must be below [`FieldSpec::order`].
    pub fn decode(&self, mut idx: u64) -> FieldElement {
        debug_assert!(idx < self.order);
        let p = self.p as u64;
        let coeffs = (0..self.n)
            .map(|_| {
                let c = (idx % p) as u32;
                idx /= p;
                c
            })
            .collect();
        FieldElement::from_poly(coeffs, self.n)
    }

    /// All field elements in [`FieldSpec::encode`] order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |k| self.decode(k))
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.coeffs.len() == self.n && x.coeffs.iter().all(|&c| c < self.p)
    }

    fn check(&self, x: &FieldElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "element {x:?} does not belong to F_{}^{}",
                self.p, self.n
            )))
        }
    }

    pub fn is_one(&self, x: &FieldElement) -> bool {
        x.coeffs[0] == 1 && x.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let p = self.p;
        let coeffs = x.coeffs.iter().zip(y.coeffs.iter()).map(|(&a, &b)| (a + b) % p).collect();
        FieldElement::from_poly(coeffs, self.n)
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let p = self.p;
        let coeffs = x
            .coeffs
            .iter()
            .zip(y.coeffs.iter())
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FieldElement::from_poly(coeffs, self.n)
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        let p = self.p;
        let coeffs = x.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement::from_poly(coeffs, self.n)
    }

    /// Product of two elements of this field.
    ///
    /// Panics if either operand has the wrong length; see [`FieldSpec::try_mul`].
    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        assert!(
            x.coeffs.len() == self.n && y.coeffs.len() == self.n,
            "operands from a different field"
        );
        FieldElement::from_poly(poly::mul_mod(&x.coeffs, &y.coeffs, &self.modulus, self.p), self.n)
    }

    pub fn try_mul(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn square(&self, x: &FieldElement) -> FieldElement {
        self.mul(x, x)
    }

    pub fn pow(&self, x: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, computed as `x^{q−2}`.
    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::domain("0 has no multiplicative inverse"));
        }
        Ok(self.pow(x, self.order - 2))
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// True iff `x = 0` or `x^{(q−1)/2} = 1`.
    pub fn is_square(&self, x: &FieldElement) -> bool {
        x.is_zero() || self.is_one(&self.pow(x, (self.order - 1) / 2))
    }

    /// `x^{p^k}`.
    pub fn frobenius(&self, x: &FieldElement, k: usize) -> FieldElement {
        (0..k).fold(x.clone(), |acc, _| self.pow(&acc, self.p as u64))
    }

    /// `θ(x) = x + x⁻¹`, with `θ(0) = θ(∞) = ∞`.
    pub fn theta(&self, x: &P1Element) -> P1Element {
        match x {
            P1Element::Infinity => P1Element::Infinity,
            P1Element::Finite(v) if v.is_zero() => P1Element::Infinity,
            P1Element::Finite(v) => {
                let inv = self.pow(v, self.order - 2);
                P1Element::Finite(self.add(v, &inv))
            }
        }
    }

    /// Partition class of `x`; only defined in characteristic 5.
    pub fn classify(&self, x: &P1Element) -> Result<PartitionClass> {
        if self.p != 5 {
            return Err(Error::unsupported(format!(
                "the A/B/C partition is defined for p = 5 only (got p = {})",
                self.p
            )));
        }
        let x = match x {
            P1Element::Infinity => return Ok(PartitionClass::A),
            P1Element::Finite(v) => v,
        };
        self.check(x)?;
        if self.n % 2 == 1 {
            let one = self.one();
            if *x == one || *x == self.neg(&one) {
                return Ok(PartitionClass::C);
            }
        }
        let rhs = self.add(&self.mul(&self.square(x), x), x);
        Ok(if self.is_square(&rhs) {
            PartitionClass::A
        } else {
            PartitionClass::B
        })
    }

    /// `k ∈ [0, q−2]` with `generator^k = x`.
    pub fn dlog(&self, x: &FieldElement) -> Result<u64> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::domain("discrete log of 0 is undefined"));
        }
        let table = self.dlog_table()?;
        Ok(table[self.encode(x) as usize] as u64)
    }

    /// Discrete-log table indexed by [`FieldSpec::encode`]; `u32::MAX` marks 0.
    pub fn dlog_table(&self) -> Result<&[u32]> {
        if self.order > DLOG_TABLE_LIMIT {
            return Err(Error::resource(format!(
                "discrete-log table for {} elements exceeds the limit of {DLOG_TABLE_LIMIT}",
                self.order
            )));
        }
        Ok(self.dlog.get_or_init(|| {
            let mut table = vec![u32::MAX; self.order as usize];
            let mut x = self.one();
            for k in 0..self.order - 1 {
                table[self.encode(&x) as usize] = k as u32;
                x = self.mul(&x, &self.generator);
            }
            table
        }))
    }

    /// `generator^k` for every `k ∈ [0, q−2]`, as encoded indices.
    pub fn power_table(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.order as usize - 1);
        let mut x = self.one();
        for _ in 0..self.order - 1 {
            out.push(self.encode(&x));
            x = self.mul(&x, &self.generator);
        }
        out
    }
}

fn check_parameters(p: u32, n: usize) -> Result<u64> {
    if p == 2 || !intfactor::is_prime(p as u64) {
        return Err(Error::usage(format!("characteristic must be an odd prime, got {p}")));
    }
    if n == 0 {
        return Err(Error::usage("extension degree must be at least 1"));
    }
    u32::try_from(n)
        .ok()
        .and_then(|n| (p as u64).checked_pow(n))
        .filter(|&q| q < (1 << 62))
        .ok_or_else(|| Error::resource(format!("F_{p}^{n} is too large to represent")))
}

/// Smallest monic primitive polynomial of degree `n`, comparing coefficient
/// vectors from `t^{n−1}` down to the constant term.
fn smallest_primitive_polynomial(p: u32, n: usize, order: u64) -> Result<Vec<u32>> {
    let group_primes = intfactor::prime_divisors(order as u128 - 1, intfactor::DEFAULT_TRIAL_BOUND)?;
    for k in 0..order {
        let mut m: Vec<u32> = Vec::with_capacity(n + 1);
        let mut rest = k;
        for _ in 0..n {
            m.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        if m[0] == 0 {
            continue;
        }
        m.push(1);
        if !poly::is_irreducible(&m, p) {
            continue;
        }
        let t = poly::rem(&[0, 1], &m, p);
        let primitive = group_primes.iter().all(|&r| {
            let y = poly::pow_mod(&t, (order - 1) / r as u64, &m, p);
            y != [1]
        });
        if primitive {
            return Ok(m);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldSpec {
        FieldSpec::new(5, 1).unwrap()
    }

    fn f125() -> FieldSpec {
        FieldSpec::new(5, 3).unwrap()
    }

    fn fin(x: FieldElement) -> P1Element {
        P1Element::Finite(x)
    }

    #[test]
    fn prime_field_mul_and_inv() {
        let f = f5();
        assert_eq!(f.mul(&f.constant(2), &f.constant(3)), f.one());
        assert_eq!(f.inv(&f.constant(2)).unwrap(), f.constant(3));
        assert_eq!(f.inv(&f.constant(4)).unwrap(), f.constant(4));
        assert!(matches!(f.inv(&f.zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn conway_cube_relation() {
        // alpha^3 = 2 alpha + 2 for the root of t^3 - 2t - 2
        let f = f125();
        let a = f.t();
        assert_eq!(f.mul(&a, &f.square(&a)), f.element(&[2, 2]).unwrap());
        assert_eq!(f.generator(), &a);
    }

    #[test]
    fn inverse_of_generator_is_its_123rd_power() {
        let f = f125();
        let g = f.generator().clone();
        assert_eq!(f.inv(&g).unwrap(), f.pow(&g, 123));
    }

    #[test]
    fn mismatched_fields_are_a_usage_error() {
        let (a, b) = (f5(), f125());
        let x = b.t();
        assert!(matches!(a.try_mul(&a.one(), &x), Err(Error::Usage(_))));
        assert!(matches!(a.inv(&x), Err(Error::Usage(_))));
    }

    #[test]
    fn squares() {
        let f = f5();
        assert!(f.is_square(&f.constant(4)));
        assert!(!f.is_square(&f.constant(2)));
        assert!(!f.is_square(&f.constant(3)));
        assert!(f.is_square(&f.zero()));
        // 2 and 3 become squares in F_25
        let f25 = FieldSpec::new(5, 2).unwrap();
        assert!(f25.is_square(&f25.constant(2)));
        assert!(f25.is_square(&f25.constant(3)));
    }

    #[test]
    fn theta_definition() {
        let f = f5();
        assert_eq!(f.theta(&P1Element::Infinity), P1Element::Infinity);
        assert_eq!(f.theta(&fin(f.zero())), P1Element::Infinity);
        assert_eq!(f.theta(&fin(f.one())), fin(f.constant(2)));
        assert_eq!(f.theta(&fin(f.constant(-1))), fin(f.constant(3)));
    }

    #[test]
    fn classification_examples() {
        for n in 1..=4 {
            let f = FieldSpec::new(5, n).unwrap();
            assert_eq!(f.classify(&fin(f.constant(2))).unwrap(), PartitionClass::A);
            assert_eq!(f.classify(&fin(f.zero())).unwrap(), PartitionClass::A);
            assert_eq!(f.classify(&P1Element::Infinity).unwrap(), PartitionClass::A);
        }
        let f = f125();
        assert_eq!(f.classify(&fin(f.one())).unwrap(), PartitionClass::C);
        assert_eq!(f.classify(&fin(f.constant(4))).unwrap(), PartitionClass::C);
        let f7 = FieldSpec::new(7, 1).unwrap();
        assert!(matches!(
            f7.classify(&P1Element::Infinity),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn dlog_examples() {
        let f = f5();
        assert_eq!(f.generator(), &f.constant(2));
        assert_eq!(f.dlog(&f.one()).unwrap(), 0);
        assert_eq!(f.dlog(&f.constant(2)).unwrap(), 1);
        assert_eq!(f.dlog(&f.constant(4)).unwrap(), 2);
        assert!(matches!(f.dlog(&f.zero()), Err(Error::Domain(_))));
        let g = f125();
        assert_eq!(g.dlog(g.generator()).unwrap(), 1);
        assert_eq!(g.dlog(&g.pow(g.generator(), 78)).unwrap(), 78);
    }

    #[test]
    fn conway_table_entries_are_primitive() {
        for n in 1..=8 {
            let f = FieldSpec::new(5, n).unwrap();
            assert_eq!(f.generator(), &f.t(), "n = {n}");
        }
    }

    #[test]
    fn default_modulus_for_other_primes() {
        let f = FieldSpec::new(7, 2).unwrap();
        assert_eq!(f.order(), 49);
        assert_eq!(f.generator(), &f.t());
        // smallest primitive quadratic over F_7 in this ordering: t^2 + t + 3
        assert_eq!(f.modulus(), &[3, 1, 1]);
    }

    #[test]
    fn overrides_are_validated() {
        assert!(matches!(
            FieldSpec::with_modulus(5, vec![1, 0, 1], None),
            Err(Error::Usage(_))
        ));
        assert!(matches!(FieldSpec::new(9, 1), Err(Error::Usage(_))));
        assert!(matches!(FieldSpec::new(2, 3), Err(Error::Usage(_))));
        // t^2 + 2 is irreducible but t has order 8, not 24
        let f = FieldSpec::with_modulus(5, vec![2, 0, 1], None).unwrap();
        assert_ne!(f.generator(), &f.t());
        assert_eq!(f.pow(f.generator(), 12), f.constant(-1));
        assert!(matches!(
            FieldSpec::with_modulus(5, vec![2, 0, 1], Some(vec![0, 1])),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn display() {
        let f = f125();
        assert_eq!(f.element(&[2, 3, 1]).unwrap().to_string(), "t^2+3t+2");
        assert_eq!(f.zero().to_string(), "0");
        assert_eq!(f.element(&[0, 1]).unwrap().to_string(), "t");
    }
}
