//! Constructions of pseudo hoops.
//!
//! Finite ones (Łukasiewicz and Gödel chains, ordinal sums, direct products) come out
//! as validated [`FiniteHoop`]s. Negative cones of `ℤ^k`, ordered pointwise or
//! lexicographically, are infinite and handled symbolically, with a seeded sampler
//! for spot-checking identities on them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteHoop, HoopTables};
use crate::error::{Error, Result};
use crate::Elem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Lukasiewicz,
    Godel,
}

fn from_fns(
    n: usize,
    unit: Elem,
    prod: impl Fn(Elem, Elem) -> Elem,
    rimp: impl Fn(Elem, Elem) -> Elem,
    limp: impl Fn(Elem, Elem) -> Elem,
) -> Result<FiniteHoop> {
    let table = |f: &dyn Fn(Elem, Elem) -> Elem| {
        (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect::<Vec<Vec<Elem>>>()
    };
    let t = HoopTables {
        size: n,
        unit,
        prod: table(&prod),
        rimp: Some(table(&rimp)),
        limp: Some(table(&limp)),
        leq: None,
        zero: None,
        name: None,
    };
    FiniteHoop::from_tables(&t)
}

/// An `n`-element chain with elements `0 < 1 < ... < n-1` and unit `n-1`.
///
/// The Łukasiewicz chain is the interval `[-u, 0]` of the integers with `u = n - 1`,
/// `x ⊙ y = max(x + y, -u)` and `x → y = min(y - x, 0)`. The Gödel chain has
/// `x ⊙ y = min(x, y)` and `x → y = 1` if `x ≤ y`, else `y`.
pub fn make_chain(kind: ChainKind, n: usize) -> FiniteHoop {
    assert!(n >= 1, "a chain needs at least one element");
    let top = n - 1;
    let m = match kind {
        ChainKind::Lukasiewicz => {
            let imp = |x: Elem, y: Elem| if x <= y { top } else { top - (x - y) };
            from_fns(n, top, |x, y| (x + y).saturating_sub(top), imp, imp)
        }
        ChainKind::Godel => {
            let imp = |x: Elem, y: Elem| if x <= y { top } else { y };
            from_fns(n, top, |x, y| x.min(y), imp, imp)
        }
    };
    let name = match kind {
        ChainKind::Lukasiewicz => format!("L{n}"),
        ChainKind::Godel => format!("G{n}"),
    };
    m.expect("chains are pseudo hoops").with_name(name)
}

/// Ordinal sum `lower ⊕ upper`: the non-units of `lower`, then the non-units of
/// `upper`, then a shared unit. Every element of `lower` sits below every element of
/// `upper`; across components `x ⊙ y` is the lower one, `x → y = 1` when `x ≤ y` and
/// `x → y = y` when `x` lies in the component above `y`.
pub fn ordinal_sum(lower: &FiniteHoop, upper: &FiniteHoop) -> Result<FiniteHoop> {
    let lo: Vec<Elem> = lower.elements().filter(|&x| x != lower.unit()).collect();
    let hi: Vec<Elem> = upper.elements().filter(|&x| x != upper.unit()).collect();
    let n = lo.len() + hi.len() + 1;
    let unit = n - 1;

    let to_lower = |g: Elem| match g {
        g if g == unit => Some(lower.unit()),
        g if g < lo.len() => Some(lo[g]),
        _ => None,
    };
    let to_upper = |g: Elem| match g {
        g if g == unit => Some(upper.unit()),
        g if g >= lo.len() => Some(hi[g - lo.len()]),
        _ => None,
    };
    let lo_index = |x: Elem| lo.iter().position(|&e| e == x).unwrap_or(unit);
    let hi_index = |x: Elem| hi.iter().position(|&e| e == x).map_or(unit, |i| i + lo.len());

    // `arrow` selects the cross-component rule: x → y = 1 for x below y, else x ⊙ y = x.
    let op = |f: fn(&FiniteHoop, Elem, Elem) -> Elem, arrow: bool| {
        move |x: Elem, y: Elem| {
            if let (Some(a), Some(b)) = (to_lower(x), to_lower(y)) {
                return lo_index(f(lower, a, b));
            }
            if let (Some(a), Some(b)) = (to_upper(x), to_upper(y)) {
                return hi_index(f(upper, a, b));
            }
            match (x < y, arrow) {
                (true, true) => unit,
                (true, false) => x,
                (false, _) => y,
            }
        }
    };
    let prod = op(FiniteHoop::mul, false);
    let rimp = op(FiniteHoop::rimp, true);
    let limp = op(FiniteHoop::limp, true);
    let m = from_fns(n, unit, prod, rimp, limp).map_err(|e| {
        Error::Inconsistency(format!("ordinal sum convention failed validation: {e}"))
    })?;
    Ok(match (lower.name(), upper.name()) {
        (Some(a), Some(b)) => m.with_name(format!("{a}+{b}")),
        _ => m,
    })
}

/// Componentwise product; element `(i, j)` has index `i * |b| + j`.
pub fn direct_product(a: &FiniteHoop, b: &FiniteHoop) -> Result<FiniteHoop> {
    let nb = b.size();
    let n = a.size() * nb;
    if n > crate::MAX_SIZE {
        return Err(Error::Contract(format!("product has {n} elements, more than {}", crate::MAX_SIZE)));
    }
    let lift = |f: fn(&FiniteHoop, Elem, Elem) -> Elem| {
        move |x: Elem, y: Elem| f(a, x / nb, y / nb) * nb + f(b, x % nb, y % nb)
    };
    let m = from_fns(
        n,
        a.unit() * nb + b.unit(),
        lift(FiniteHoop::mul),
        lift(FiniteHoop::rimp),
        lift(FiniteHoop::limp),
    )?;
    Ok(match (a.name(), b.name()) {
        (Some(x), Some(y)) => m.with_name(format!("{x}x{y}")),
        _ => m,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderMode {
    Pointwise,
    Lex,
}

/// The negative cone of `ℤ^k` under a pointwise or lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeModel {
    pub k: usize,
    pub order_mode: OrderMode,
}

/// An element of a negative cone, i.e. a vector `≤ e = (0, ..., 0)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConeElement(pub Vec<i64>);

impl fmt::Debug for ConeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeOps {
    pub prod: ConeElement,
    pub rimp: ConeElement,
    pub limp: ConeElement,
    pub meet: ConeElement,
}

impl ConeModel {
    pub fn new(k: usize, order_mode: OrderMode) -> Self {
        assert!(k >= 1, "cone dimension must be positive");
        Self { k, order_mode }
    }

    pub fn identity(&self) -> ConeElement {
        ConeElement(vec![0; self.k])
    }

    fn cmp_lex(x: &ConeElement, y: &ConeElement) -> Ordering {
        x.0.cmp(&y.0)
    }

    pub fn leq(&self, x: &ConeElement, y: &ConeElement) -> bool {
        match self.order_mode {
            OrderMode::Pointwise => x.0.iter().zip(&y.0).all(|(a, b)| a <= b),
            OrderMode::Lex => Self::cmp_lex(x, y) != Ordering::Greater,
        }
    }

    pub fn contains(&self, x: &ConeElement) -> bool {
        x.0.len() == self.k && self.leq(x, &self.identity())
    }

    pub fn meet(&self, x: &ConeElement, y: &ConeElement) -> ConeElement {
        match self.order_mode {
            OrderMode::Pointwise => ConeElement(x.0.iter().zip(&y.0).map(|(a, b)| *a.min(b)).collect()),
            OrderMode::Lex => if Self::cmp_lex(x, y) == Ordering::Greater { y.clone() } else { x.clone() },
        }
    }

    pub fn join(&self, x: &ConeElement, y: &ConeElement) -> ConeElement {
        match self.order_mode {
            OrderMode::Pointwise => ConeElement(x.0.iter().zip(&y.0).map(|(a, b)| *a.max(b)).collect()),
            OrderMode::Lex => if Self::cmp_lex(x, y) == Ordering::Greater { x.clone() } else { y.clone() },
        }
    }

    /// Group product `xy`, i.e. the coordinate sum.
    pub fn mul(&self, x: &ConeElement, y: &ConeElement) -> ConeElement {
        ConeElement(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect())
    }

    /// `(y x⁻¹) ∧ e`
    pub fn rimp(&self, x: &ConeElement, y: &ConeElement) -> ConeElement {
        let diff = ConeElement(y.0.iter().zip(&x.0).map(|(b, a)| b - a).collect());
        self.meet(&diff, &self.identity())
    }

    /// `(x⁻¹ y) ∧ e`; equal to [`rimp`](Self::rimp) since `ℤ^k` is abelian.
    pub fn limp(&self, x: &ConeElement, y: &ConeElement) -> ConeElement {
        let diff = ConeElement(x.0.iter().zip(&y.0).map(|(a, b)| b - a).collect());
        self.meet(&diff, &self.identity())
    }

    pub fn power(&self, x: &ConeElement, n: usize) -> ConeElement {
        ConeElement(x.0.iter().map(|c| c * n as i64).collect())
    }

    pub fn ops(&self, x: &ConeElement, y: &ConeElement) -> ConeOps {
        ConeOps {
            prod: self.mul(x, y),
            rimp: self.rimp(x, y),
            limp: self.limp(x, y),
            meet: self.meet(x, y),
        }
    }

    /// Evaluates a sampled property at `(x, y, z)` with power exponent `n`.
    /// `None` means the property does not apply to cones.
    pub fn holds(
        &self,
        property: SampleProperty,
        x: &ConeElement,
        y: &ConeElement,
        z: &ConeElement,
        n: usize,
    ) -> Option<bool> {
        let e = self.identity();
        Some(match property {
            SampleProperty::Eq61 => {
                let lhs = self.mul(&self.power(x, 2), &self.power(y, 2));
                self.leq(&lhs, &self.mul(y, x))
            }
            SampleProperty::Thm66ii => {
                let a = self.limp(&self.power(&self.rimp(x, y), n), y);
                let rhs = self.rimp(&self.power(&self.limp(x, y), 2 * n), y);
                self.leq(&self.power(&a, 2), &rhs)
            }
            SampleProperty::Thm66iii => {
                let a = self.rimp(&self.power(&self.limp(x, y), n), y);
                let rhs = self.limp(&self.power(&self.rimp(x, y), 2 * n), y);
                self.leq(&self.power(&a, 2), &rhs)
            }
            SampleProperty::Eq63 => return None,
            SampleProperty::Eq64 => {
                self.limp(&self.rimp(x, y), y) == self.rimp(&self.limp(x, y), y)
            }
            SampleProperty::Prop31 => {
                let m = self.meet(x, y);
                self.mul(z, &m) == self.meet(&self.mul(z, x), &self.mul(z, y))
                    && self.mul(&m, z) == self.meet(&self.mul(x, z), &self.mul(y, z))
            }
            SampleProperty::Prelinearity => {
                self.join(&self.rimp(x, y), &self.rimp(y, x)) == e
                    && self.join(&self.limp(x, y), &self.limp(y, x)) == e
            }
            SampleProperty::Residuation => {
                self.leq(&self.mul(z, x), y) == self.leq(z, &self.rimp(x, y))
                    && self.leq(&self.mul(x, z), y) == self.leq(z, &self.limp(x, y))
            }
        })
    }
}

/// Identities that [`sample_check`] can evaluate on a cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleProperty {
    /// `x² ⊙ y² ≤ y ⊙ x`
    Eq61,
    Thm66ii,
    Thm66iii,
    /// Needs a zero; cones are unbounded.
    Eq63,
    Eq64,
    /// `⊙` distributes over `∧` from both sides.
    Prop31,
    Prelinearity,
    /// `z ⊙ x ≤ y` iff `z ≤ x → y`, and the left-hand analogue.
    Residuation,
}

impl SampleProperty {
    pub const ALL: [SampleProperty; 8] = [
        SampleProperty::Eq61,
        SampleProperty::Thm66ii,
        SampleProperty::Thm66iii,
        SampleProperty::Eq63,
        SampleProperty::Eq64,
        SampleProperty::Prop31,
        SampleProperty::Prelinearity,
        SampleProperty::Residuation,
    ];
}

/// 64-bit linear congruential generator with Knuth's MMIX constants
/// (`a = 6364136223846793005`, `c = 1442695040888963407`), returning the high 32 bits.
#[derive(Debug, Clone)]
pub struct Lcg(u64);

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    /// Generator for trial `t` of a run seeded with `seed`; trials are independent of
    /// the order in which they are drawn.
    pub fn for_trial(seed: u64, t: u64) -> Self {
        // splitmix64 finaliser decorrelates neighbouring trial indices
        let mut z = seed ^ t.wrapping_mul(0x9E3779B97F4A7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        Lcg(z ^ (z >> 31))
    }

    pub fn next_u32(&mut self) -> u32 {
        self.0 = self.0.wrapping_mul(Self::MULTIPLIER).wrapping_add(Self::INCREMENT);
        (self.0 >> 32) as u32
    }

    /// Uniform integer in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        // rejection keeps the draw exactly uniform
        let zone = (1u64 << 32) - (1u64 << 32) % span;
        loop {
            let v = self.next_u32() as u64;
            if v < zone {
                return lo + (v % span) as i64;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub model: ConeModel,
    pub property: SampleProperty,
    pub trials: usize,
    pub passes: usize,
    pub inapplicable: bool,
    /// `(x, y, z, n)` of the first failing trial.
    pub counterexample: Option<(ConeElement, ConeElement, ConeElement, usize)>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        !self.inapplicable && self.counterexample.is_none() && self.passes == self.trials
    }
}

/// Largest exponent drawn for the power-indexed identities.
pub const SAMPLE_MAX_POWER: usize = 4;

/// The box `[-bound, 0]^k` lies inside both cones, so no rejection is needed.
fn draw(model: &ConeModel, rng: &mut Lcg, bound: i64) -> ConeElement {
    let x = ConeElement((0..model.k).map(|_| rng.range(-bound, 0)).collect());
    debug_assert!(model.contains(&x));
    x
}

/// Spot-checks a property on `trials` triples drawn uniformly from
/// `[-bound, 0]^k ∩ cone` with per-trial seeds derived from `seed`.
///
/// Abelian cones are representable, so any counterexample is reported as an inconsistency.
pub fn sample_check(
    model: &ConeModel,
    property: SampleProperty,
    trials: usize,
    bound: i64,
    seed: u64,
) -> Result<SampleReport> {
    if trials == 0 {
        return Err(Error::Contract("at least one trial required".into()));
    }
    if bound < 0 {
        return Err(Error::Contract("box bound must be non-negative".into()));
    }
    let mut report = SampleReport {
        model: *model,
        property,
        trials,
        passes: 0,
        inapplicable: false,
        counterexample: None,
    };
    for t in 0..trials {
        let mut rng = Lcg::for_trial(seed, t as u64);
        let x = draw(model, &mut rng, bound);
        let y = draw(model, &mut rng, bound);
        let z = draw(model, &mut rng, bound);
        let n = rng.range(1, SAMPLE_MAX_POWER as i64) as usize;
        match model.holds(property, &x, &y, &z, n) {
            None => {
                report.inapplicable = true;
                return Ok(report);
            }
            Some(true) => report.passes += 1,
            Some(false) => {
                if report.counterexample.is_none() {
                    report.counterexample = Some((x, y, z, n));
                }
            }
        }
    }
    if let Some(c) = &report.counterexample {
        return Err(Error::Inconsistency(format!(
            "{property:?} fails on the abelian cone {model:?} at {c:?}"
        )));
    }
    Ok(report)
}
