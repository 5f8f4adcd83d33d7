//! The curve `E: y² = x³ + x` over `F_{5^m}`.
//!
//! `E` has complex multiplication by `Z[i]`: Frobenius acts as `π₅ = 1 + 2i`
//! and the 2-isogeny `φ` (whose x-coordinate is θ) together with its dual
//! `φ̄` realize the two factors of `2 = (−1+i)(−1−i)`.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldSpec, P1Element};
use crate::gaussian::GaussInt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EcPoint {
    Infinity,
    Affine { x: FieldElement, y: FieldElement },
}

impl EcPoint {
    pub fn affine(x: FieldElement, y: FieldElement) -> Self {
        EcPoint::Affine { x, y }
    }

    pub fn x(&self) -> P1Element {
        match self {
            EcPoint::Infinity => P1Element::Infinity,
            EcPoint::Affine { x, .. } => P1Element::Finite(x.clone()),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, EcPoint::Infinity)
    }
}

/// `y² = x³ + x` over a field of characteristic 5.
#[derive(Clone, Debug)]
pub struct Curve<'f> {
    field: &'f FieldSpec,
    /// `c` in `[i](x, y) = (−x, c·y)`, with `c² = −1` in `F_5`.
    i_scale: FieldElement,
}

static I_SCALE: OnceLock<i64> = OnceLock::new();

/// The square root of −1 in `F_5` for which Frobenius acts as `1 + 2i`.
///
/// Decided once, by testing `π₅(P) = P + [2][i]P` on all of `E(F_25)`.
pub fn i_scale() -> i64 {
    *I_SCALE.get_or_init(|| {
        let f25 = FieldSpec::new(5, 2).expect("F_25 is constructible");
        [2i64, 3]
            .into_iter()
            .find(|&c| {
                let curve = Curve {
                    field: &f25,
                    i_scale: f25.constant(c),
                };
                curve.points().iter().all(|pt| {
                    let rhs = curve.add_unchecked(pt, &curve.double(&curve.endo_i(pt)));
                    curve.frobenius(pt, 1) == rhs
                })
            })
            .expect("one of the two square roots of -1 realizes 1 + 2i")
    })
}

impl<'f> Curve<'f> {
    pub fn new(field: &'f FieldSpec) -> Result<Self> {
        if field.p() != 5 {
            return Err(Error::unsupported(format!(
                "the CM curve is handled in characteristic 5 only (got p = {})",
                field.p()
            )));
        }
        Ok(Curve {
            field,
            i_scale: field.constant(i_scale()),
        })
    }

    pub fn field(&self) -> &'f FieldSpec {
        self.field
    }

    /// `x³ + x`.
    pub fn rhs(&self, x: &FieldElement) -> FieldElement {
        let f = self.field;
        f.add(&f.mul(&f.square(x), x), x)
    }

    pub fn contains(&self, pt: &EcPoint) -> bool {
        match pt {
            EcPoint::Infinity => true,
            EcPoint::Affine { x, y } => {
                self.field.contains(x)
                    && self.field.contains(y)
                    && self.field.square(y) == self.rhs(x)
            }
        }
    }

    fn check(&self, pt: &EcPoint) -> Result<()> {
        if self.contains(pt) {
            Ok(())
        } else {
            Err(Error::domain(format!("{pt:?} is not on y^2 = x^3 + x")))
        }
    }

    pub fn neg(&self, pt: &EcPoint) -> EcPoint {
        match pt {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine { x, y } => EcPoint::affine(x.clone(), self.field.neg(y)),
        }
    }

    /// Group law, rejecting points off the curve.
    pub fn add(&self, p: &EcPoint, q: &EcPoint) -> Result<EcPoint> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn add_unchecked(&self, p: &EcPoint, q: &EcPoint) -> EcPoint {
        let f = self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (EcPoint::Infinity, _) => return q.clone(),
            (_, EcPoint::Infinity) => return p.clone(),
            (EcPoint::Affine { x: x1, y: y1 }, EcPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2).is_zero() {
                return EcPoint::Infinity;
            }
            // tangent: (3x² + 1) / 2y
            let num = f.add(&f.mul(&f.constant(3), &f.square(x1)), &f.one());
            let den = f.mul(&f.constant(2), y1);
            f.div(&num, &den).expect("y ≠ 0 here")
        } else {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1)).expect("x1 ≠ x2")
        };
        let x3 = f.sub(&f.sub(&f.square(&lambda), x1), x2);
        let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
        EcPoint::affine(x3, y3)
    }

    /// `φ(x, y) = ((x² + 1)/x, y(x² − 1)/x²)`; `O` on the kernel `{O, (0,0)}`.
    pub fn phi(&self, pt: &EcPoint) -> EcPoint {
        self.isogeny(pt, 1, 1)
    }

    /// `φ̄(x, y) = ((−x² − 1)/x, 2y(x² − 1)/x²)`; `O` on `{O, (0,0)}`.
    pub fn phi_bar(&self, pt: &EcPoint) -> EcPoint {
        self.isogeny(pt, -1, 2)
    }

    fn isogeny(&self, pt: &EcPoint, x_sign: i64, y_scale: i64) -> EcPoint {
        let f = self.field;
        match pt {
            EcPoint::Affine { x, y } if !x.is_zero() => {
                let x2 = f.square(x);
                let x_inv = f.inv(x).expect("x ≠ 0");
                let nx = f.mul(&f.constant(x_sign), &f.mul(&f.add(&x2, &f.one()), &x_inv));
                let ny = f.mul(
                    &f.mul(&f.constant(y_scale), y),
                    &f.mul(&f.sub(&x2, &f.one()), &f.square(&x_inv)),
                );
                EcPoint::affine(nx, ny)
            }
            _ => EcPoint::Infinity,
        }
    }

    /// `[2]` from the explicit duplication formula
    /// `((x⁴ + 3x² + 1) / 4(x³ + x), (x⁶ − 1) / 3y(x³ + x))`.
    pub fn duplicate(&self, pt: &EcPoint) -> EcPoint {
        let f = self.field;
        match pt {
            EcPoint::Affine { x, y } if !y.is_zero() => {
                let x2 = f.square(x);
                let rhs = self.rhs(x);
                let nx_num = f.add(&f.add(&f.square(&x2), &f.mul(&f.constant(3), &x2)), &f.one());
                let nx = f
                    .div(&nx_num, &f.mul(&f.constant(4), &rhs))
                    .expect("x³ + x = y² ≠ 0");
                let ny_num = f.sub(&f.mul(&f.square(&x2), &x2), &f.one());
                let ny = f
                    .div(&ny_num, &f.mul(&f.mul(&f.constant(3), y), &rhs))
                    .expect("y ≠ 0");
                EcPoint::affine(nx, ny)
            }
            _ => EcPoint::Infinity,
        }
    }

    fn double(&self, pt: &EcPoint) -> EcPoint {
        self.add_unchecked(pt, pt)
    }

    /// `[i](x, y) = (−x, c·y)`.
    pub fn endo_i(&self, pt: &EcPoint) -> EcPoint {
        match pt {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine { x, y } => {
                EcPoint::affine(self.field.neg(x), self.field.mul(&self.i_scale, y))
            }
        }
    }

    /// `[k]P` for any integer `k`.
    pub fn scalar_mul(&self, k: &BigInt, pt: &EcPoint) -> EcPoint {
        let base = if k.is_negative() { self.neg(pt) } else { pt.clone() };
        let k = k.abs();
        let mut acc = EcPoint::Infinity;
        for bit in (0..k.bits()).rev() {
            acc = self.double(&acc);
            if k.bit(bit) {
                acc = self.add_unchecked(&acc, &base);
            }
        }
        acc
    }

    /// The endomorphism `a + bi`: `[a]P + [b][i]P`.
    pub fn endo_apply(&self, z: &GaussInt, pt: &EcPoint) -> EcPoint {
        let real = if z.re.is_zero() {
            EcPoint::Infinity
        } else {
            self.scalar_mul(&z.re, pt)
        };
        let imag = if z.im.is_zero() {
            EcPoint::Infinity
        } else {
            self.scalar_mul(&z.im, &self.endo_i(pt))
        };
        self.add_unchecked(&real, &imag)
    }

    /// `(x^{5^k}, y^{5^k})`.
    pub fn frobenius(&self, pt: &EcPoint, k: usize) -> EcPoint {
        match pt {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine { x, y } => {
                EcPoint::affine(self.field.frobenius(x, k), self.field.frobenius(y, k))
            }
        }
    }

    /// Every point of `E` over the field, `O` first, then by x and y encoding.
    pub fn points(&self) -> Vec<EcPoint> {
        let f = self.field;
        let mut roots: HashMap<FieldElement, Vec<FieldElement>> = HashMap::new();
        for y in f.elements() {
            roots.entry(f.square(&y)).or_default().push(y);
        }
        let mut out = vec![EcPoint::Infinity];
        for x in f.elements() {
            if let Some(ys) = roots.get(&self.rhs(&x)) {
                for y in ys {
                    out.push(EcPoint::affine(x.clone(), y.clone()));
                }
            }
        }
        out
    }

    /// `|E(F_q)|` including `O`, by counting square values of `x³ + x`.
    pub fn count_points(&self) -> u64 {
        let f = self.field;
        1 + f
            .elements()
            .map(|x| {
                let r = self.rhs(&x);
                if r.is_zero() {
                    1
                } else if f.is_square(&r) {
                    2
                } else {
                    0
                }
            })
            .sum::<u64>()
    }

    /// Square roots of `v`, if any.
    pub fn sqrt(&self, v: &FieldElement) -> Vec<FieldElement> {
        let f = self.field;
        f.elements().filter(|y| f.square(y) == *v).collect()
    }
}

/// `|E(F_{5^n})|` for the default field of degree `n`.
pub fn count_points(field: &FieldSpec) -> Result<u64> {
    Ok(Curve::new(field)?.count_points())
}

/// Data tied to `π₅ⁿ + 1`: points of `E(F_{5^{2n}})` killed by it.
///
/// `big` must be `F_{5^{2n}}`; subfield membership is tested through
/// `x^{5^n} = x`, so no embedding of `F_{5^n}` is needed.
pub struct PlusOneKernel<'f> {
    curve: Curve<'f>,
    n: usize,
}

impl<'f> PlusOneKernel<'f> {
    pub fn new(big: &'f FieldSpec, n: usize) -> Result<Self> {
        if big.n() != 2 * n {
            return Err(Error::usage(format!(
                "expected F_5^{} for n = {n}, got degree {}",
                2 * n,
                big.n()
            )));
        }
        Ok(PlusOneKernel {
            curve: Curve::new(big)?,
            n,
        })
    }

    pub fn curve(&self) -> &Curve<'f> {
        &self.curve
    }

    fn in_subfield(&self, v: &FieldElement) -> bool {
        self.curve.field.frobenius(v, self.n) == *v
    }

    /// All `P ∈ E(F_{5^{2n}})` with `π₅ⁿ(P) = −P`.
    pub fn kernel(&self) -> Vec<EcPoint> {
        self.curve
            .points()
            .into_iter()
            .filter(|pt| self.curve.frobenius(pt, self.n) == self.curve.neg(pt))
            .collect()
    }

    /// `E(F_{5^{2n}})_{B_n}`: points with `x ∈ B_n` and `y ∉ F_{5^n}`.
    pub fn b_points(&self) -> Vec<EcPoint> {
        let f = self.curve.field;
        let one = f.one();
        let minus_one = f.neg(&one);
        self.curve
            .points()
            .into_iter()
            .filter(|pt| match pt {
                EcPoint::Infinity => false,
                EcPoint::Affine { x, y } => {
                    let excluded = self.n % 2 == 1 && (*x == one || *x == minus_one);
                    self.in_subfield(x) && !self.in_subfield(y) && !excluded
                }
            })
            .collect()
    }

    /// The exceptional set `E*`: `O, (0,0), (2,0), (3,0)`, plus `(±1, ·)` for odd `n`.
    pub fn special_set(&self) -> Vec<EcPoint> {
        let f = self.curve.field;
        let mut out = vec![EcPoint::Infinity];
        for x in [0, 2, 3] {
            out.push(EcPoint::affine(f.constant(x), f.zero()));
        }
        if self.n % 2 == 1 {
            for x in [1, -1] {
                let x = f.constant(x);
                for y in self.curve.sqrt(&self.curve.rhs(&x)) {
                    out.push(EcPoint::affine(x.clone(), y));
                }
            }
        }
        out
    }
}
