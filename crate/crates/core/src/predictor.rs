//! Structure of the θ-graph over `P¹(F_{5^n})` computed from Gaussian-integer
//! arithmetic alone.
//!
//! The `A` side is governed by `R/(π₅ⁿ − 1)`, the `B` side by `R/(π₅ⁿ + 1)`,
//! where `R = Z[i] = End(E)` and θ acts as multiplication by `ρ = −1 + i` up
//! to sign. Write the modulus as `ρ^{e₀} · Π qᵢ^{eᵢ}`. A periodic point picks
//! an order `qᵢ^{hᵢ}` in each odd component; its period is the least `k` with
//! `ρᵏ ≡ ±1` modulo `Π qᵢ^{hᵢ}`, and trees hanging off cycles have depth
//! `e₀`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::gaussian::{self, GaussFactorization, GaussInt, PmSign, PrimeClass, PrimePower};
use crate::intfactor::DEFAULT_TRIAL_BOUND;

/// Which quotient ring a cycle lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `π₅ⁿ − 1`: points of `E(F_{5^n})`.
    A,
    /// `π₅ⁿ + 1`: points of `E(F_{5^{2n}})` negated by `π₅ⁿ`.
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// How the doubling exponent `ε` in `l = 2^ε · lcm(lᵢ)` is decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EpsilonRule {
    /// `ε = 0` iff every `ρ^{l′}` has the same sign `±1` modulo `qᵢ^{hᵢ}`,
    /// where `l′ = lcm(lᵢ)`. Gives the exact period.
    #[default]
    AtLcm,
    /// `ε = 0` iff the signs at the individual `lᵢ` all agree. Wrong whenever
    /// some `l′/lᵢ` is even; kept for comparison.
    PerFactor,
    /// Negation of [`EpsilonRule::AtLcm`]; a deliberately broken predictor.
    Inverted,
}

/// Chosen order exponent `hᵢ ∈ [0, eᵢ]` for each odd prime power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderVector(pub Vec<u32>);

impl OrderVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&h| h == 0)
    }
}

/// Period data of one odd prime power `qᵢ^{hᵢ}` with `hᵢ > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorPeriod {
    /// Least `k` with `ρᵏ ≡ ±1 (mod qᵢ^{hᵢ})`.
    pub l: u64,
    pub sign: PmSign,
    /// 1 when `ρ^{lᵢ} ≡ 1`, 0 when `ρ^{lᵢ} ≡ −1`.
    pub epsilon: u8,
}

/// One term of the cycle-counting formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClassReport {
    pub h: OrderVector,
    /// Number of points whose odd components have the orders chosen by `h`.
    pub point_count: u64,
    pub cycle_length: u64,
    pub cycle_count: u64,
    /// Entries for the factors with `hᵢ > 0`, in factorization order.
    pub factors: Vec<FactorPeriod>,
    pub epsilon: u8,
}

/// Multiset of cycle lengths on one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSpectrum {
    pub side: Side,
    /// Cycle length → number of cycles.
    pub entries: BTreeMap<u64, u64>,
    /// Whether the fixed point ∞ is included (A side only).
    pub fixed_point_infinity: bool,
}

impl CycleSpectrum {
    pub fn count_of(&self, length: u64) -> u64 {
        self.entries.get(&length).copied().unwrap_or(0)
    }

    pub fn total_cycles(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn periodic_points(&self) -> u64 {
        self.entries.iter().map(|(l, c)| l * c).sum()
    }
}

impl fmt::Display for CycleSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (l, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}x{c}")?;
        }
        f.write_str("}")
    }
}

/// Expected shape of the reversed tree hanging off a cycle vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeShape {
    pub depth: u32,
    /// Number of vertices at levels `1..=depth`.
    pub level_widths: Vec<u64>,
    pub root_children: u64,
    /// The tree rooted at ∞, whose level-2 vertices have a single child.
    pub special_infinity: bool,
}

impl TreeShape {
    fn generic(depth: u32) -> Self {
        TreeShape {
            depth,
            level_widths: (1..=depth).map(|k| 1u64 << (k - 1)).collect(),
            root_children: 1,
            special_infinity: false,
        }
    }

    /// Vertices in the tree, root included.
    pub fn size(&self) -> u64 {
        1 + self.level_widths.iter().sum::<u64>()
    }

    /// Children of each vertex at `level` (the root is level 0).
    pub fn expected_children(&self, level: u32) -> u64 {
        if level == 0 {
            self.root_children
        } else if level >= self.depth {
            0
        } else if self.special_infinity && level == 2 {
            1
        } else {
            2
        }
    }
}

/// One connected component as seen by the comparison with brute force.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentShape {
    pub side: Side,
    pub cycle_length: u64,
    pub size: u64,
    pub depth: u32,
    pub level_widths: Vec<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartitionSizes {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl PartitionSizes {
    pub fn total(&self) -> u64 {
        self.a + self.b + self.c
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidePrediction {
    pub side: Side,
    /// `π₅ⁿ − 1` or `π₅ⁿ + 1`.
    pub element: GaussInt,
    pub factorization: GaussFactorization,
    pub classes: Vec<CycleClassReport>,
    pub spectrum: CycleSpectrum,
    /// Shape of the trees on ordinary cycle vertices.
    pub tree: TreeShape,
}

/// Everything the predictor says about `P¹(F_{5^n})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedCensus {
    pub n: u32,
    pub a: SidePrediction,
    pub b: SidePrediction,
    pub infinity_tree: TreeShape,
    pub partition: PartitionSizes,
    /// Sorted.
    pub components: Vec<ComponentShape>,
}

impl PredictedCensus {
    pub fn side(&self, side: Side) -> &SidePrediction {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    pub fn total_vertices(&self) -> u64 {
        self.components.iter().map(|c| c.size).sum()
    }
}

/// Prediction settings: the factoring budget and the ε rule.
#[derive(Clone, Copy, Debug)]
pub struct Predictor {
    pub trial_bound: u64,
    pub epsilon_rule: EpsilonRule,
}

impl Default for Predictor {
    fn default() -> Self {
        Predictor {
            trial_bound: DEFAULT_TRIAL_BOUND,
            epsilon_rule: EpsilonRule::AtLcm,
        }
    }
}

impl Predictor {
    pub fn with_bound(trial_bound: u64) -> Self {
        Predictor {
            trial_bound,
            ..Self::default()
        }
    }

    pub fn with_rule(self, epsilon_rule: EpsilonRule) -> Self {
        Predictor {
            epsilon_rule,
            ..self
        }
    }

    pub fn factor_side(&self, n: u32, side: Side) -> Result<GaussFactorization> {
        gaussian::factor(&side_element(n, side)?, self.trial_bound)
    }

    /// Period of the points selected by a nonzero `h`.
    pub fn cycle_length_for(
        &self,
        factorization: &GaussFactorization,
        h: &OrderVector,
    ) -> Result<(u64, Vec<FactorPeriod>, u8)> {
        let odd: Vec<&PrimePower> = factorization.odd_part().collect();
        check_bounds(&odd, h)?;
        if h.is_zero() {
            return Err(Error::usage("the cycle length is defined for nonzero h only"));
        }
        let periods = odd
            .iter()
            .zip(&h.0)
            .filter(|(_, &hi)| hi > 0)
            .map(|(pp, &hi)| self.factor_period(pp, hi))
            .collect::<Result<Vec<_>>>()?;
        let (l, eps) = self.combine(&periods)?;
        Ok((l, periods, eps))
    }

    fn factor_period(&self, pp: &PrimePower, h: u32) -> Result<FactorPeriod> {
        let modulus = pp.prime.pow(h as u64);
        let (l, sign) = gaussian::mod_order_pm(&modulus, &GaussInt::rho(), self.trial_bound)?;
        Ok(FactorPeriod {
            l,
            sign,
            epsilon: u8::from(sign != PmSign::Minus),
        })
    }

    fn combine(&self, periods: &[FactorPeriod]) -> Result<(u64, u8)> {
        let lcm = periods.iter().fold(1u64, |acc, fp| acc.lcm(&fp.l));
        // sign of ρ^{lcm} modulo each factor; `Both` agrees with anything
        let at_lcm = |fp: &FactorPeriod| match fp.sign {
            PmSign::Both => None,
            PmSign::Plus => Some(PmSign::Plus),
            PmSign::Minus if (lcm / fp.l) % 2 == 0 => Some(PmSign::Plus),
            PmSign::Minus => Some(PmSign::Minus),
        };
        let agree = |signs: Vec<PmSign>| signs.windows(2).all(|w| w[0] == w[1]);
        let exact = u8::from(!agree(periods.iter().filter_map(at_lcm).collect()));
        let eps = match self.epsilon_rule {
            EpsilonRule::AtLcm => exact,
            EpsilonRule::PerFactor => u8::from(!agree(
                periods
                    .iter()
                    .filter(|fp| fp.sign != PmSign::Both)
                    .map(|fp| fp.sign)
                    .collect(),
            )),
            EpsilonRule::Inverted => 1 - exact,
        };
        let l = lcm
            .checked_mul(1 << eps)
            .ok_or_else(|| Error::resource("cycle length overflows 64 bits"))?;
        Ok((l, eps))
    }

    /// One report per nonzero `h ∈ H`, in odometer order.
    pub fn predict_classes(&self, n: u32, side: Side) -> Result<Vec<CycleClassReport>> {
        let factorization = self.factor_side(n, side)?;
        self.classes_for(&factorization)
    }

    fn classes_for(&self, factorization: &GaussFactorization) -> Result<Vec<CycleClassReport>> {
        let odd: Vec<&PrimePower> = factorization.odd_part().collect();
        let mut cache: HashMap<(usize, u32), FactorPeriod> = HashMap::new();
        let mut out = Vec::new();
        for h in order_vectors(&odd) {
            if h.is_zero() {
                continue;
            }
            let mut periods = Vec::new();
            for (i, (pp, &hi)) in odd.iter().zip(&h.0).enumerate() {
                if hi == 0 {
                    continue;
                }
                let fp = match cache.get(&(i, hi)) {
                    Some(fp) => *fp,
                    None => {
                        let fp = self.factor_period(pp, hi)?;
                        cache.insert((i, hi), fp);
                        fp
                    }
                };
                periods.push(fp);
            }
            let (l, eps) = self.combine(&periods)?;
            let m = count_points_of_order(factorization, &h)?;
            let denom = 2 * l as u128;
            if m as u128 % denom != 0 {
                return Err(Error::inconsistent(format!(
                    "h = {:?}: {m} points do not split into cycles of length {l}",
                    h.0
                )));
            }
            out.push(CycleClassReport {
                h,
                point_count: m,
                cycle_length: l,
                cycle_count: (m as u128 / denom) as u64,
                factors: periods,
                epsilon: eps,
            });
        }
        Ok(out)
    }

    pub fn predict_cycles(&self, n: u32, side: Side) -> Result<CycleSpectrum> {
        let classes = self.predict_classes(n, side)?;
        Ok(spectrum_from(side, &classes))
    }

    pub fn predict_side(&self, n: u32, side: Side) -> Result<SidePrediction> {
        let element = side_element(n, side)?;
        let factorization = gaussian::factor(&element, self.trial_bound)?;
        let classes = self.classes_for(&factorization)?;
        let spectrum = spectrum_from(side, &classes);
        Ok(SidePrediction {
            side,
            element,
            factorization,
            classes,
            spectrum,
            tree: predict_tree(n, side, false)?,
        })
    }

    /// Both sides, the ∞-tree, the partition sizes and the component list,
    /// with the vertex count checked against `5ⁿ + 1`.
    pub fn predict_summary(&self, n: u32) -> Result<PredictedCensus> {
        let a = self.predict_side(n, Side::A)?;
        let b = self.predict_side(n, Side::B)?;
        let infinity_tree = predict_tree(n, Side::A, true)?;

        let mut components = vec![ComponentShape {
            side: Side::A,
            cycle_length: 1,
            size: infinity_tree.size(),
            depth: infinity_tree.depth,
            level_widths: infinity_tree.level_widths.clone(),
        }];
        for sp in [&a, &b] {
            for (&l, &count) in &sp.spectrum.entries {
                if sp.side == Side::A && l == 1 {
                    // the fixed point ∞, added above
                    continue;
                }
                let size = l
                    .checked_mul(sp.tree.size())
                    .ok_or_else(|| Error::resource("component size overflows 64 bits"))?;
                for _ in 0..count {
                    components.push(ComponentShape {
                        side: sp.side,
                        cycle_length: l,
                        size,
                        depth: sp.tree.depth,
                        level_widths: sp.tree.level_widths.clone(),
                    });
                }
            }
        }
        components.sort();

        let partition = predict_partition(n, &a.element, &b.element)?;
        let vertices = 5u64
            .checked_pow(n)
            .and_then(|q| q.checked_add(1))
            .ok_or_else(|| Error::resource("5^n + 1 overflows 64 bits"))?;
        let census = PredictedCensus {
            n,
            a,
            b,
            infinity_tree,
            partition,
            components,
        };
        let side_total = |s: Side| -> u64 {
            census.components.iter().filter(|c| c.side == s).map(|c| c.size).sum()
        };
        if census.total_vertices() != vertices
            || partition.total() != vertices
            || side_total(Side::A) != partition.a + partition.c
            || side_total(Side::B) != partition.b
        {
            return Err(Error::inconsistent(format!(
                "vertex accounting failed for n = {n}: components cover {} (A {}, B {}), \
                 partition {:?}, expected {vertices}",
                census.total_vertices(),
                side_total(Side::A),
                side_total(Side::B),
                partition
            )));
        }
        Ok(census)
    }
}

/// `π₅ⁿ − 1` (A) or `π₅ⁿ + 1` (B).
pub fn side_element(n: u32, side: Side) -> Result<GaussInt> {
    if n == 0 {
        return Err(Error::usage("n must be at least 1"));
    }
    let pi_n = GaussInt::pi5().pow(n as u64);
    Ok(match side {
        Side::A => &pi_n - &GaussInt::one(),
        Side::B => &pi_n + &GaussInt::one(),
    })
}

fn check_bounds(odd: &[&PrimePower], h: &OrderVector) -> Result<()> {
    if h.0.len() != odd.len() || odd.iter().zip(&h.0).any(|(pp, &hi)| hi > pp.exponent) {
        return Err(Error::usage(format!(
            "order vector {:?} does not fit exponents {:?}",
            h.0,
            odd.iter().map(|pp| pp.exponent).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

/// All `h ∈ Π [0, eᵢ]`, first coordinate varying slowest.
fn order_vectors(odd: &[&PrimePower]) -> Vec<OrderVector> {
    let mut out = vec![OrderVector(Vec::new())];
    for pp in odd {
        out = out
            .into_iter()
            .flat_map(|h| {
                (0..=pp.exponent).map(move |hi| {
                    let mut v = h.0.clone();
                    v.push(hi);
                    OrderVector(v)
                })
            })
            .collect();
    }
    out
}

/// `Π N_{hᵢ}` over inert factors times `Π φ(pᵢ^{hᵢ})` over split ones.
pub fn count_points_of_order(factorization: &GaussFactorization, h: &OrderVector) -> Result<u64> {
    let odd: Vec<&PrimePower> = factorization.odd_part().collect();
    check_bounds(&odd, h)?;
    let mut m: u128 = 1;
    for (pp, &hi) in odd.iter().zip(&h.0) {
        if hi == 0 {
            continue;
        }
        let q = pp.rational_prime();
        let term = match pp.class {
            PrimeClass::Inert => q.pow(2 * hi) - q.pow(2 * (hi - 1)),
            PrimeClass::Split => q.pow(hi) - q.pow(hi - 1),
            PrimeClass::Ramified => unreachable!("odd part excludes ρ"),
        };
        m = m
            .checked_mul(term)
            .ok_or_else(|| Error::resource("point count overflows 128 bits"))?;
    }
    u64::try_from(m).map_err(|_| Error::resource(format!("point count {m} overflows 64 bits")))
}

fn spectrum_from(side: Side, classes: &[CycleClassReport]) -> CycleSpectrum {
    let mut entries = BTreeMap::new();
    if side == Side::A {
        entries.insert(1, 1);
    }
    for c in classes {
        *entries.entry(c.cycle_length).or_insert(0) += c.cycle_count;
    }
    CycleSpectrum {
        side,
        entries,
        fixed_point_infinity: side == Side::A,
    }
}

/// `ρ`-adic valuation of `π₅ⁿ ∓ 1` in closed form.
pub fn tree_depth(n: u32, side: Side) -> u32 {
    match (side, n % 2) {
        (Side::A, 1) => 2,
        (Side::A, _) => 3 + 2 * n.trailing_zeros(),
        (Side::B, 1) => 3,
        (Side::B, _) => 2,
    }
}

/// Expected tree on a cycle vertex; `at_infinity` selects the tree rooted at ∞.
pub fn predict_tree(n: u32, side: Side, at_infinity: bool) -> Result<TreeShape> {
    if n == 0 {
        return Err(Error::usage("n must be at least 1"));
    }
    if at_infinity && side == Side::B {
        return Err(Error::usage("∞ lies on the A side"));
    }
    if !at_infinity {
        return Ok(TreeShape::generic(tree_depth(n, side)));
    }
    // widths 1, 2, then 2^{k-2}; for odd n the third level is C = {1, -1}
    let depth = if n % 2 == 1 { 3 } else { tree_depth(n, Side::A) };
    let level_widths = (1..=depth)
        .map(|k| match k {
            1 => 1,
            2 => 2,
            k => 1u64 << (k - 2),
        })
        .collect();
    Ok(TreeShape {
        depth,
        level_widths,
        root_children: 1,
        special_infinity: true,
    })
}

/// `|A|, |B|, |C|` from the norms of `π₅ⁿ ∓ 1`.
fn predict_partition(n: u32, minus: &GaussInt, plus: &GaussInt) -> Result<PartitionSizes> {
    let norm = |z: &GaussInt| {
        z.norm()
            .to_u64()
            .ok_or_else(|| Error::resource("norm overflows 64 bits"))
    };
    // E(F_{5^n}) = O, three points with y = 0, and pairs ±(x, y)
    let a = (norm(minus)? - 4) / 2 + 4;
    let special = if n % 2 == 1 { 8 } else { 4 };
    let b = (norm(plus)? - special) / 2;
    let c = if n % 2 == 1 { 2 } else { 0 };
    Ok(PartitionSizes { a, b, c })
}

pub fn factor_side(n: u32, side: Side) -> Result<GaussFactorization> {
    Predictor::default().factor_side(n, side)
}

pub fn cycle_length_for(factorization: &GaussFactorization, h: &OrderVector) -> Result<u64> {
    Ok(Predictor::default().cycle_length_for(factorization, h)?.0)
}

pub fn predict_cycles(n: u32, side: Side) -> Result<CycleSpectrum> {
    Predictor::default().predict_cycles(n, side)
}

pub fn predict_summary(n: u32) -> Result<PredictedCensus> {
    Predictor::default().predict_summary(n)
}
