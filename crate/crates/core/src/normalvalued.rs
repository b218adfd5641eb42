//! Normal-valuedness: conjugates, the direct value-in-cover test, the equational basis
//!
//! ```text
//! (i)   x² ⊙ y² ≤ y ⊙ x
//! (ii)  ((x → y)ⁿ ⇝ y)² ≤ (x ⇝ y)²ⁿ → y
//! (iii) ((x ⇝ y)ⁿ → y)² ≤ (x → y)²ⁿ ⇝ y
//! ```
//!
//! a catalogue of checkable claims, and a search for basic algebras satisfying (i) that
//! are not normal-valued.
//!
//! Every "for all n" is checked for `n = 1..=nmax`; with `nmax = |M|` this is exhaustive
//! because powers are constant from the size on.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, InputError, Result};
use crate::filters::{
    all_filters, all_values, class_structure, filter_join, filter_lattice, generated_filter, has_strong_unit,
    is_filter, is_normal_filter, minimal_primes, perp, prime_extension, prime_tests, principal_filter, values_of,
    Filter, QuotientStructure, Side, ValueRecord,
};
use crate::rdp::check_filter_products;
use crate::{Elem, ElemSet, FiniteHoop};

/// `k₁ = 1`, `kₙ₊₁ = 2kₙ + 2`: exponents with `(a ⊙ b)ⁿ ≥ a^{kₙ} ⊙ b^{kₙ}` under (i).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KSequence {
    pub values: Vec<u64>,
}

impl KSequence {
    pub fn new(nmax: usize) -> Self {
        let mut values = Vec::with_capacity(nmax);
        let mut k = 1u64;
        for _ in 0..nmax {
            values.push(k);
            k = k.saturating_mul(2).saturating_add(2);
        }
        KSequence { values }
    }

    /// `kₙ` for `n ≥ 1`.
    pub fn get(&self, n: usize) -> u64 {
        self.values[n - 1]
    }
}

/// `(λ_f(x), ρ_f(x)) = (f ⇝ (x ⊙ f), f → (f ⊙ x))`.
pub fn conjugates(m: &FiniteHoop, f: Elem, x: Elem) -> (Elem, Elem) {
    (m.limp(f, m.mul(x, f)), m.rimp(f, m.mul(f, x)))
}

/// A value `V` of `g` and `f ∈ V*` with `λ_f(v) ∉ V` or `ρ_f(v) ∉ V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DirectWitness {
    pub g: Elem,
    pub value: Filter,
    pub f: Elem,
    pub v: Elem,
}

/// Whether `λ_f(S) ⊆ S` and `ρ_f(S) ⊆ S` for every `f` in `conj`.
fn conjugation_closed(m: &FiniteHoop, s: ElemSet, conj: ElemSet) -> Option<(Elem, Elem)> {
    conj.iter().find_map(|f| {
        s.iter().find_map(|v| {
            let (l, r) = conjugates(m, f, v);
            (!s.contains(l) || !s.contains(r)).then_some((f, v))
        })
    })
}

/// Every value normal in its cover. `Ok(None)` means normal-valued.
pub fn is_normal_valued_direct(m: &FiniteHoop) -> Result<Option<DirectWitness>> {
    if !m.flags().basic {
        return Err(Error::Inapplicable("basic"));
    }
    for rec in all_values(m)? {
        if let Some((f, v)) = conjugation_closed(m, rec.value.elements(), rec.cover.elements()) {
            return Ok(Some(DirectWitness { g: rec.g, value: rec.value, f, v }));
        }
    }
    Ok(None)
}

/// First `(x, y)` with `x² ⊙ y² ≰ y ⊙ x`.
pub fn check_61(m: &FiniteHoop) -> Option<(Elem, Elem)> {
    pairs(m).find(|&(x, y)| !m.leq(m.mul(m.power(x, 2), m.power(y, 2)), m.mul(y, x)))
}

fn pairs(m: &FiniteHoop) -> impl Iterator<Item = (Elem, Elem)> + '_ {
    m.elements().flat_map(move |x| m.elements().map(move |y| (x, y)))
}

fn triples(m: &FiniteHoop) -> impl Iterator<Item = (Elem, Elem, Elem)> + '_ {
    pairs(m).flat_map(move |(x, y)| m.elements().map(move |z| (x, y, z)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisWitness {
    /// 1, 2 or 3 for the inequality that failed.
    pub inequality: u8,
    pub x: Elem,
    pub y: Elem,
    pub n: usize,
}

/// `((x → y)ⁿ ⇝ y)² ≤ (x ⇝ y)²ⁿ → y`
fn basis_ii(m: &FiniteHoop, x: Elem, y: Elem, n: usize) -> bool {
    let lhs = m.power(m.limp(m.power(m.rimp(x, y), n), y), 2);
    m.leq(lhs, m.rimp(m.power(m.limp(x, y), 2 * n), y))
}

/// `((x ⇝ y)ⁿ → y)² ≤ (x → y)²ⁿ ⇝ y`
fn basis_iii(m: &FiniteHoop, x: Elem, y: Elem, n: usize) -> bool {
    let lhs = m.power(m.rimp(m.power(m.limp(x, y), n), y), 2);
    m.leq(lhs, m.limp(m.power(m.rimp(x, y), 2 * n), y))
}

/// Checks (i), then (ii) and (iii) for `n = 1..=nmax`. `None` means all hold.
pub fn equational_basis_check(m: &FiniteHoop, nmax: usize) -> Option<BasisWitness> {
    if let Some((x, y)) = check_61(m) {
        return Some(BasisWitness { inequality: 1, x, y, n: 1 });
    }
    for n in 1..=nmax {
        for (x, y) in pairs(m) {
            if !basis_ii(m, x, y, n) {
                return Some(BasisWitness { inequality: 2, x, y, n });
            }
            if !basis_iii(m, x, y, n) {
                return Some(BasisWitness { inequality: 3, x, y, n });
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClaimId {
    #[serde(rename = "PROP31")]
    Prop31,
    #[serde(rename = "EQ31")]
    Eq31,
    #[serde(rename = "EQ41")]
    Eq41,
    #[serde(rename = "EQ42")]
    Eq42,
    #[serde(rename = "PROP42")]
    Prop42,
    #[serde(rename = "PROP43")]
    Prop43,
    #[serde(rename = "LEMMA44")]
    Lemma44,
    #[serde(rename = "LEMMA46")]
    Lemma46,
    #[serde(rename = "EQ61")]
    Eq61,
    #[serde(rename = "EQ62")]
    Eq62,
    #[serde(rename = "PROP61")]
    Prop61,
    #[serde(rename = "LEMMA62")]
    Lemma62,
    #[serde(rename = "LEMMA63")]
    Lemma63,
    #[serde(rename = "REMARK64")]
    Remark64,
    #[serde(rename = "LEMMA65")]
    Lemma65,
    #[serde(rename = "THM66i")]
    Thm66i,
    #[serde(rename = "THM66ii")]
    Thm66ii,
    #[serde(rename = "THM66iii")]
    Thm66iii,
    #[serde(rename = "LEMMA67")]
    Lemma67,
    #[serde(rename = "THM68")]
    Thm68,
    #[serde(rename = "COR69")]
    Cor69,
    #[serde(rename = "LEMMA610")]
    Lemma610,
    #[serde(rename = "EQ63")]
    Eq63,
    #[serde(rename = "EQ64")]
    Eq64,
    #[serde(rename = "EQ65")]
    Eq65,
    #[serde(rename = "THM612")]
    Thm612,
    #[serde(rename = "CONJSUB")]
    ConjSub,
}

impl ClaimId {
    pub const ALL: [ClaimId; 27] = [
        ClaimId::Prop31,
        ClaimId::Eq31,
        ClaimId::Eq41,
        ClaimId::Eq42,
        ClaimId::Prop42,
        ClaimId::Prop43,
        ClaimId::Lemma44,
        ClaimId::Lemma46,
        ClaimId::Eq61,
        ClaimId::Eq62,
        ClaimId::Prop61,
        ClaimId::Lemma62,
        ClaimId::Lemma63,
        ClaimId::Remark64,
        ClaimId::Lemma65,
        ClaimId::Thm66i,
        ClaimId::Thm66ii,
        ClaimId::Thm66iii,
        ClaimId::Lemma67,
        ClaimId::Thm68,
        ClaimId::Cor69,
        ClaimId::Lemma610,
        ClaimId::Eq63,
        ClaimId::Eq64,
        ClaimId::Eq65,
        ClaimId::Thm612,
        ClaimId::ConjSub,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Prop31 => "PROP31",
            ClaimId::Eq31 => "EQ31",
            ClaimId::Eq41 => "EQ41",
            ClaimId::Eq42 => "EQ42",
            ClaimId::Prop42 => "PROP42",
            ClaimId::Prop43 => "PROP43",
            ClaimId::Lemma44 => "LEMMA44",
            ClaimId::Lemma46 => "LEMMA46",
            ClaimId::Eq61 => "EQ61",
            ClaimId::Eq62 => "EQ62",
            ClaimId::Prop61 => "PROP61",
            ClaimId::Lemma62 => "LEMMA62",
            ClaimId::Lemma63 => "LEMMA63",
            ClaimId::Remark64 => "REMARK64",
            ClaimId::Lemma65 => "LEMMA65",
            ClaimId::Thm66i => "THM66i",
            ClaimId::Thm66ii => "THM66ii",
            ClaimId::Thm66iii => "THM66iii",
            ClaimId::Lemma67 => "LEMMA67",
            ClaimId::Thm68 => "THM68",
            ClaimId::Cor69 => "COR69",
            ClaimId::Lemma610 => "LEMMA610",
            ClaimId::Eq63 => "EQ63",
            ClaimId::Eq64 => "EQ64",
            ClaimId::Eq65 => "EQ65",
            ClaimId::Thm612 => "THM612",
            ClaimId::ConjSub => "CONJSUB",
        }
    }

    /// The statement being checked, as a one-line formula.
    pub fn statement(self) -> &'static str {
        match self {
            ClaimId::Prop31 => "prelinear ⇒ z⊙(x∧y) = (z⊙x)∧(z⊙y) and (x∧y)⊙z = (x⊙z)∧(y⊙z)",
            ClaimId::Eq31 => "prelinear ⇒ x∨₁y = x∨₂y = x∨y",
            ClaimId::Eq41 => "F(a⊙b) = F(a) ∨ F(b) = F(b⊙a)",
            ClaimId::Eq42 => "F(a∨b) = F(a) ∩ F(b) when a∨b exists",
            ClaimId::Prop42 => "the filter lattice is distributive, also for arbitrary joins",
            ClaimId::Prop43 => "basic ⇒ the prime-filter conditions agree on every proper filter",
            ClaimId::Lemma44 => "basic ⇒ a filter missing a lattice ideal extends to a prime missing it",
            ClaimId::Lemma46 => "basic ⇒ f ≤ g iff Vf ≤ Vg for all values V",
            ClaimId::Eq61 => "x²⊙y² ≤ y⊙x",
            ClaimId::Eq62 => "x²⊙y² ≤ y⊙x ⇒ (a⊙b)ⁿ ≥ a^{kₙ}⊙b^{kₙ}",
            ClaimId::Prop61 => "x²⊙y² ≤ y⊙x ⇒ F(a)⊙F(b) = F(a⊙b); that law ⇔ F⊙G = F∨G = G⊙F",
            ClaimId::Lemma62 => "basic ⇒ X⊥ is a filter",
            ClaimId::Lemma63 => "basic, u strong unit ⇒ ⋂Val(u) ⊆ {a : aⁿ ≥ u for all n}",
            ClaimId::Remark64 => "basic ⇒ the minimal primes meet in {1}",
            ClaimId::Lemma65 => "basic, V(a⊙b) ≤ Vx for all V ∈ Val(x) ⇒ a²⊙b² ≤ x",
            ClaimId::Thm66i => "basic normal-valued ⇒ x²⊙y² ≤ y⊙x",
            ClaimId::Thm66ii => "basic normal-valued ⇒ ((x→y)ⁿ⇝y)² ≤ (x⇝y)²ⁿ→y",
            ClaimId::Thm66iii => "basic normal-valued ⇒ ((x⇝y)ⁿ→y)² ≤ (x→y)²ⁿ⇝y",
            ClaimId::Lemma67 => "x²⊙y² ≤ y⊙x ⇒ {x ≥ f⊙aⁿ} = {x ≥ aⁿ⊙f} = filter generated by F and a",
            ClaimId::Thm68 => "basic, (i)–(iii) ⇒ normal-valued",
            ClaimId::Cor69 => "basic ⇒ (normal-valued ⇔ (i)–(iii))",
            ClaimId::Lemma610 => "basic, x²⊙y² ≤ y⊙x, x ∈ V*∖V, Vx > Vx² ⇒ Vx ⊆ xV",
            ClaimId::Eq63 => "bounded ⇒ x⁻˜ = x˜⁻",
            ClaimId::Eq64 => "(x→y)⇝y = (x⇝y)→y",
            ClaimId::Eq65 => "basic, (x→y)⇝y = (x⇝y)→y ⇒ (x→y)ⁿ⇝y = (x⇝y)ⁿ→y",
            ClaimId::Thm612 => "basic, (x→y)⇝y = (x⇝y)→y ⇒ (normal-valued ⇔ x²⊙y² ≤ y⊙x)",
            ClaimId::ConjSub => "λ_f(x)⊙λ_f(y) ≤ λ_f(x⊙y) and ρ_f(x)⊙ρ_f(y) ≤ ρ_f(x⊙y)",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = InputError;

    fn from_str(s: &str) -> std::result::Result<Self, InputError> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| InputError::new("claim", format!("unknown claim id {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ClaimReport {
    Pass,
    Fail { witness: Vec<Elem>, detail: String },
    Inapplicable { hypothesis: &'static str },
}

impl ClaimReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, ClaimReport::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, ClaimReport::Fail { .. })
    }

    fn fail(witness: Vec<Elem>, detail: impl Into<String>) -> Self {
        ClaimReport::Fail { witness, detail: detail.into() }
    }

    fn from_witness<W: fmt::Debug>(found: Option<W>, witness: impl FnOnce(&W) -> Vec<Elem>) -> Self {
        match found {
            None => ClaimReport::Pass,
            Some(w) => ClaimReport::fail(witness(&w), format!("{w:?}")),
        }
    }
}

/// Inconsistencies raised by the filter layer become failures of the claim under test.
fn failing_on_inconsistency<T>(r: Result<T>, witness: impl FnOnce() -> Vec<Elem>) -> Result<std::result::Result<T, ClaimReport>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::Inconsistency(msg)) => Ok(Err(ClaimReport::fail(witness(), msg))),
        Err(e) => Err(e),
    }
}

macro_rules! require {
    ($cond:expr, $hyp:expr) => {
        if !$cond {
            return Ok(ClaimReport::Inapplicable { hypothesis: $hyp });
        }
    };
}

macro_rules! settle {
    ($e:expr) => {
        match $e? {
            Ok(v) => v,
            Err(report) => return Ok(report),
        }
    };
}

/// Right class structures of every value, paired with the value record.
fn value_structures(m: &FiniteHoop) -> Result<Vec<(ValueRecord, QuotientStructure)>> {
    all_values(m)?
        .into_iter()
        .map(|rec| Ok((rec, class_structure(m, rec.value, Side::Right)?)))
        .collect()
}

/// Evaluates one claim exhaustively, hypotheses first.
pub fn check_claim(m: &FiniteHoop, id: ClaimId, nmax: usize) -> Result<ClaimReport> {
    let flags = m.flags();
    let one = m.unit();
    match id {
        ClaimId::Prop31 => {
            require!(flags.prelinear, "prelinear");
            Ok(ClaimReport::from_witness(
                triples(m).find(|&(x, y, z)| {
                    m.mul(z, m.meet(x, y)) != m.meet(m.mul(z, x), m.mul(z, y))
                        || m.mul(m.meet(x, y), z) != m.meet(m.mul(x, z), m.mul(y, z))
                }),
                |&(x, y, z)| vec![x, y, z],
            ))
        }
        ClaimId::Eq31 => {
            require!(flags.prelinear, "prelinear");
            Ok(ClaimReport::from_witness(
                pairs(m).find(|&(x, y)| {
                    let j = m.join(x, y);
                    j.is_none() || j != Some(m.vee1(x, y)) || j != Some(m.vee2(x, y))
                }),
                |&(x, y)| vec![x, y],
            ))
        }
        ClaimId::Eq41 => Ok(ClaimReport::from_witness(
            pairs(m).find(|&(a, b)| {
                let ab = principal_filter(m, m.mul(a, b));
                let ba = principal_filter(m, m.mul(b, a));
                let join = filter_join(m, principal_filter(m, a), principal_filter(m, b));
                ab != join || join != ba
            }),
            |&(a, b)| vec![a, b],
        )),
        ClaimId::Eq42 => Ok(ClaimReport::from_witness(
            pairs(m).find(|&(a, b)| {
                m.join(a, b).is_some_and(|j| {
                    principal_filter(m, j) != principal_filter(m, a).meet(principal_filter(m, b))
                })
            }),
            |&(a, b)| vec![a, b],
        )),
        ClaimId::Prop42 => {
            let fl = filter_lattice(m);
            if let Some((f, g, h)) = fl.distributivity_witness {
                return Ok(ClaimReport::fail(vec![], format!("filters #{f}, #{g}, #{h} of {:?}", fl.filters)));
            }
            if let Some((f, mask)) = fl.family_witness {
                return Ok(ClaimReport::fail(vec![], format!("filter #{f} against family {mask:#b}")));
            }
            Ok(ClaimReport::Pass)
        }
        ClaimId::Prop43 => {
            require!(flags.basic, "basic");
            for f in all_filters(m).into_iter().filter(|f| f.is_proper(m)) {
                let r = settle!(failing_on_inconsistency(prime_tests(m, f), || f.elements().iter().collect()));
                if !r.agree {
                    return Ok(ClaimReport::fail(f.elements().iter().collect(), format!("{:?}", r.results)));
                }
            }
            Ok(ClaimReport::Pass)
        }
        ClaimId::Lemma44 => {
            require!(flags.basic, "basic");
            for f in all_filters(m) {
                for a in m.elements() {
                    // Lattice ideals of a finite lattice are the principal ideals.
                    let ideal = m.down(a);
                    if !f.elements().is_disjoint(ideal) {
                        continue;
                    }
                    let p = settle!(failing_on_inconsistency(prime_extension(m, f, ideal), || vec![a]));
                    if !f.elements().is_subset(p.elements()) || !p.elements().is_disjoint(ideal) {
                        return Ok(ClaimReport::fail(vec![a], format!("extension {:?} of {:?}", p, f)));
                    }
                }
            }
            Ok(ClaimReport::Pass)
        }
        ClaimId::Lemma46 => {
            require!(flags.basic, "basic");
            let vs = value_structures(m)?;
            let mut fixed: Vec<&QuotientStructure> = Vec::new();
            let mut seen = ElemSet::EMPTY;
            for (rec, qs) in &vs {
                if !seen.contains(rec.g) {
                    seen.insert(rec.g);
                    fixed.push(qs);
                }
            }
            Ok(ClaimReport::from_witness(
                pairs(m).find(|&(f, g)| {
                    let all = vs.iter().all(|(_, qs)| qs.leq(f, g));
                    let chosen = fixed.iter().all(|qs| qs.leq(f, g));
                    m.leq(f, g) != all || m.leq(f, g) != chosen
                }),
                |&(f, g)| vec![f, g],
            ))
        }
        ClaimId::Eq61 => Ok(ClaimReport::from_witness(check_61(m), |&(x, y)| vec![x, y])),
        ClaimId::Eq62 => {
            require!(check_61(m).is_none(), "x²⊙y² ≤ y⊙x");
            let ks = KSequence::new(nmax);
            for n in 1..=nmax {
                let k = usize::try_from(ks.get(n)).unwrap_or(usize::MAX);
                if let Some((a, b)) = pairs(m).find(|&(a, b)| {
                    !m.leq(m.mul(m.power(a, k), m.power(b, k)), m.power(m.mul(a, b), n))
                }) {
                    return Ok(ClaimReport::fail(vec![a, b, n], format!("n = {n}, k = {k}")));
                }
            }
            Ok(ClaimReport::Pass)
        }
        ClaimId::Prop61 => {
            let r = check_filter_products(m);
            if r.passed() {
                Ok(ClaimReport::Pass)
            } else {
                let w = r.principal_witness.map(|(a, b)| vec![a, b]).unwrap_or_default();
                Ok(ClaimReport::fail(w, format!("{r:?}")))
            }
        }
        ClaimId::Lemma62 => {
            require!(flags.basic, "basic");
            let n = m.size();
            let subsets: Box<dyn Iterator<Item = ElemSet>> = if n <= 16 {
                Box::new((0u64..1 << n).map(ElemSet::from_bits))
            } else {
                Box::new(pairs(m).map(|(x, y)| ElemSet::singleton(x).with(y)))
            };
            for xs in subsets {
                let f = settle!(failing_on_inconsistency(perp(m, xs), || xs.iter().collect()));
                if !is_filter(m, f.elements()) {
                    return Ok(ClaimReport::fail(xs.iter().collect(), "perp is not a filter"));
                }
            }
            Ok(ClaimReport::Pass)
        }
        ClaimId::Lemma63 => {
            require!(flags.basic, "basic");
            let units: Vec<Elem> = m.elements().filter(|&u| u != one && has_strong_unit(m, u)).collect();
            require!(!units.is_empty(), "strong unit");
            for u in units {
                let meet = values_of(m, u)?
                    .iter()
                    .fold(m.all(), |s, r| s.intersection(r.value.elements()));
                for a in meet {
                    if let Some(n) = (1..=nmax).find(|&n| !m.leq(u, m.power(a, n))) {
                        return Ok(ClaimReport::fail(vec![u, a, n], "aⁿ ≱ u"));
                    }
                }
            }
            Ok(ClaimReport::Pass)
        }
        ClaimId::Remark64 => {
            require!(flags.basic, "basic");
            let mins = minimal_primes(m);
            require!(!mins.is_empty(), "proper prime filter");
            let meet = mins.iter().fold(m.all(), |s, f| s.intersection(f.elements()));
            if meet == ElemSet::singleton(one) {
                Ok(ClaimReport::Pass)
            } else {
                Ok(ClaimReport::fail(meet.iter().collect(), "intersection of minimal primes"))
            }
        }
        ClaimId::Lemma65 => {
            require!(flags.basic, "basic");
            let vs = value_structures(m)?;
            Ok(ClaimReport::from_witness(
                triples(m).find(|&(a, b, x)| {
                    let premise = vs
                        .iter()
                        .filter(|(rec, _)| rec.g == x)
                        .all(|(_, qs)| qs.leq(m.mul(a, b), x));
                    premise && !m.leq(m.mul(m.power(a, 2), m.power(b, 2)), x)
                }),
                |&(a, b, x)| vec![a, b, x],
            ))
        }
        ClaimId::Thm66i | ClaimId::Thm66ii | ClaimId::Thm66iii => {
            require!(flags.basic, "basic");
            require!(is_normal_valued_direct(m)?.is_none(), "normal-valued");
            let found = match id {
                ClaimId::Thm66i => check_61(m).map(|(x, y)| vec![x, y]),
                ClaimId::Thm66ii => first_basis_failure(m, nmax, basis_ii),
                _ => first_basis_failure(m, nmax, basis_iii),
            };
            Ok(found.map_or(ClaimReport::Pass, |w| ClaimReport::fail(w, "inequality fails")))
        }
        ClaimId::Lemma67 => {
            require!(check_61(m).is_none(), "x²⊙y² ≤ y⊙x");
            for f in all_filters(m) {
                for a in m.elements() {
                    let target = generated_filter(m, f.elements().with(a)).elements();
                    let mut right = ElemSet::EMPTY;
                    let mut left = ElemSet::EMPTY;
                    for g in f.elements() {
                        for n in 1..=nmax {
                            right = right.union(m.up(m.mul(g, m.power(a, n))));
                            left = left.union(m.up(m.mul(m.power(a, n), g)));
                        }
                    }
                    if right != target || left != target {
                        return Ok(ClaimReport::fail(
                            vec![a],
                            format!("F = {:?}: {right:?}, {left:?} vs {target:?}", f.elements()),
                        ));
                    }
                }
            }
            Ok(ClaimReport::Pass)
        }
        ClaimId::Thm68 => {
            require!(flags.basic, "basic");
            require!(equational_basis_check(m, nmax).is_none(), "(i)–(iii)");
            Ok(ClaimReport::from_witness(is_normal_valued_direct(m)?, direct_witness_elems))
        }
        ClaimId::Cor69 => {
            require!(flags.basic, "basic");
            let direct = is_normal_valued_direct(m)?;
            let basis = equational_basis_check(m, nmax);
            if direct.is_none() == basis.is_none() {
                Ok(ClaimReport::Pass)
            } else {
                Ok(ClaimReport::fail(vec![], format!("direct: {direct:?}, equational: {basis:?}")))
            }
        }
        ClaimId::Lemma610 => {
            require!(flags.basic, "basic");
            require!(check_61(m).is_none(), "x²⊙y² ≤ y⊙x");
            for rec in all_values(m)? {
                let right = class_structure(m, rec.value, Side::Right)?;
                let left = class_structure(m, rec.value, Side::Left)?;
                for x in rec.cover.elements().difference(rec.value.elements()) {
                    if !right.lt(m.power(x, 2), x) {
                        continue;
                    }
                    let vx = right.classes[right.class_of[x]];
                    let xv = left.classes[left.class_of[x]];
                    if !vx.is_subset(xv) {
                        return Ok(ClaimReport::fail(
                            vec![rec.g, x],
                            format!("V = {:?}: Vx = {vx:?}, xV = {xv:?}", rec.value.elements()),
                        ));
                    }
                }
            }
            Ok(ClaimReport::Pass)
        }
        ClaimId::Eq63 => {
            require!(m.zero().is_some(), "bounded");
            Ok(ClaimReport::from_witness(
                m.elements().find(|&x| {
                    m.neg_l(m.neg_r(x).unwrap()) != m.neg_r(m.neg_l(x).unwrap())
                }),
                |&x| vec![x],
            ))
        }
        ClaimId::Eq64 => Ok(ClaimReport::from_witness(
            pairs(m).find(|&(x, y)| m.limp(m.rimp(x, y), y) != m.rimp(m.limp(x, y), y)),
            |&(x, y)| vec![x, y],
        )),
        ClaimId::Eq65 => {
            require!(flags.basic, "basic");
            require!(flags.eq64, "(x→y)⇝y = (x⇝y)→y");
            for n in 1..=nmax {
                if let Some((x, y)) = pairs(m).find(|&(x, y)| {
                    m.limp(m.power(m.rimp(x, y), n), y) != m.rimp(m.power(m.limp(x, y), n), y)
                }) {
                    return Ok(ClaimReport::fail(vec![x, y, n], format!("n = {n}")));
                }
            }
            Ok(ClaimReport::Pass)
        }
        ClaimId::Thm612 => {
            require!(flags.basic, "basic");
            require!(flags.eq64, "(x→y)⇝y = (x⇝y)→y");
            let direct = is_normal_valued_direct(m)?;
            let ineq = check_61(m);
            if direct.is_none() == ineq.is_none() {
                Ok(ClaimReport::Pass)
            } else {
                Ok(ClaimReport::fail(vec![], format!("direct: {direct:?}, x²⊙y² ≤ y⊙x: {ineq:?}")))
            }
        }
        ClaimId::ConjSub => Ok(ClaimReport::from_witness(
            triples(m).find(|&(f, x, y)| {
                let (lxy, rxy) = conjugates(m, f, m.mul(x, y));
                let (lx, rx) = conjugates(m, f, x);
                let (ly, ry) = conjugates(m, f, y);
                !m.leq(m.mul(lx, ly), lxy) || !m.leq(m.mul(rx, ry), rxy)
            }),
            |&(f, x, y)| vec![f, x, y],
        )),
    }
}

fn direct_witness_elems(w: &DirectWitness) -> Vec<Elem> {
    vec![w.g, w.f, w.v]
}

fn first_basis_failure(
    m: &FiniteHoop,
    nmax: usize,
    holds: fn(&FiniteHoop, Elem, Elem, usize) -> bool,
) -> Option<Vec<Elem>> {
    (1..=nmax).find_map(|n| pairs(m).find(|&(x, y)| !holds(m, x, y, n)).map(|(x, y)| vec![x, y, n]))
}

/// A filter is normal iff it is closed under all conjugates; compared with the
/// coset characterisation.
pub fn normal_by_conjugates(m: &FiniteHoop, f: Filter) -> Result<bool> {
    let by_conj = conjugation_closed(m, f.elements(), m.all()).is_none();
    let by_cosets = is_normal_filter(m, f)?;
    if by_conj != by_cosets {
        return Err(Error::Inconsistency(format!(
            "normality of {:?}: conjugates say {by_conj}, cosets say {by_cosets}",
            f.elements()
        )));
    }
    Ok(by_conj)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Q2Report {
    pub examined: usize,
    pub basic: usize,
    /// Basic algebras satisfying x² ⊙ y² ≤ y ⊙ x.
    pub satisfying_61: usize,
    /// Basic algebras that are not normal-valued; zero means the failing branch was
    /// never exercised.
    pub not_normal_valued: usize,
    /// Stream positions of basic algebras satisfying x² ⊙ y² ≤ y ⊙ x that are not normal-valued.
    pub candidates: Vec<usize>,
    /// Stream positions where the direct and equational tests disagree.
    pub inconsistencies: Vec<(usize, String)>,
}

impl Q2Report {
    pub fn failing_branch_exercised(&self) -> bool {
        self.not_normal_valued > 0
    }
}

#[derive(Debug)]
enum Verdict {
    NotBasic,
    Basic { sat61: bool, direct: bool, basis: bool },
}

/// Scans a stream of algebras for basic ones satisfying x² ⊙ y² ≤ y ⊙ x that fail the direct
/// definition, cross-checking the direct and equational tests on every basic algebra.
pub fn q2_search(source: &[FiniteHoop], nmax: Option<usize>) -> Result<Q2Report> {
    let verdicts: Vec<Result<Verdict>> = source
        .par_iter()
        .map(|m| {
            if !m.flags().basic {
                return Ok(Verdict::NotBasic);
            }
            let n = nmax.unwrap_or(m.size());
            Ok(Verdict::Basic {
                sat61: check_61(m).is_none(),
                direct: is_normal_valued_direct(m)?.is_none(),
                basis: equational_basis_check(m, n).is_none(),
            })
        })
        .collect();
    let mut report = Q2Report { examined: source.len(), ..Q2Report::default() };
    for (i, v) in verdicts.into_iter().enumerate() {
        let Verdict::Basic { sat61, direct, basis } = v? else { continue };
        report.basic += 1;
        report.satisfying_61 += usize::from(sat61);
        report.not_normal_valued += usize::from(!direct);
        if sat61 && !direct {
            report.candidates.push(i);
        }
        if direct != basis {
            report
                .inconsistencies
                .push((i, format!("direct says {direct}, equational basis says {basis}")));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn k_sequence() {
        assert_eq!(KSequence::new(5).values, vec![1, 4, 10, 22, 46]);
        assert_eq!(KSequence::new(3).get(2), 4);
    }

    #[test]
    fn conjugate_examples() {
        for m in [named::g3(), named::l3(), named::b4()] {
            for x in m.elements() {
                assert_eq!(conjugates(&m, m.unit(), x), (x, x));
            }
        }
        assert_eq!(conjugates(&named::g3(), 1, 0).0, 0);
        assert_eq!(conjugates(&named::l3(), 1, 1).0, 1);
    }

    #[test]
    fn direct_examples() {
        for m in [named::t1(), named::g3(), named::l3(), named::b4()] {
            assert_eq!(is_normal_valued_direct(&m).unwrap(), None);
            assert_eq!(check_61(&m), None);
            assert_eq!(equational_basis_check(&m, m.size()), None);
        }
    }

    #[test]
    fn claim_ids_parse() {
        for c in ClaimId::ALL {
            assert_eq!(c.as_str().parse::<ClaimId>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.as_str()));
        }
        assert!("THM99".parse::<ClaimId>().is_err());
    }

    #[test]
    fn claims_on_named_algebras() {
        for m in [named::t1(), named::b2(), named::g3(), named::l3(), named::b4()] {
            for c in ClaimId::ALL {
                let r = check_claim(&m, c, m.size()).unwrap();
                assert!(!r.is_fail(), "{c} on {:?}: {r:?}", m.name());
            }
        }
    }

    #[test]
    fn claim_examples() {
        assert!(check_claim(&named::l3(), ClaimId::Eq62, 3).unwrap().is_pass());
        assert!(check_claim(&named::g3(), ClaimId::Lemma46, 3).unwrap().is_pass());
        assert!(check_claim(&named::b4(), ClaimId::Eq63, 4).unwrap().is_pass());
        assert_eq!(
            check_claim(&named::t1(), ClaimId::Remark64, 1).unwrap(),
            ClaimReport::Inapplicable { hypothesis: "proper prime filter" }
        );
    }

    #[test]
    fn conjugates_are_submultiplicative_only_one_way() {
        // λ_a(0 ⊙ 0) = a but λ_a(0) ⊙ λ_a(0) = a ⊙ a = 0 in Ł3.
        let l3 = named::l3();
        let (l, r) = conjugates(&l3, 1, 0);
        assert_eq!((l, r), (1, 1));
        assert_eq!(l3.mul(l, l), 0);
        assert!(check_claim(&l3, ClaimId::ConjSub, 3).unwrap().is_pass());
    }

    #[test]
    fn normality_agrees() {
        for m in [named::g3(), named::l3(), named::b4()] {
            for f in all_filters(&m) {
                assert!(normal_by_conjugates(&m, f).unwrap());
            }
        }
    }

    #[test]
    fn q2_on_named() {
        let r = q2_search(&[named::t1()], None).unwrap();
        assert!(r.candidates.is_empty() && r.inconsistencies.is_empty());
        let r = q2_search(&[named::l3(), named::g3(), named::b4()], None).unwrap();
        assert_eq!((r.basic, r.satisfying_61, r.not_normal_valued), (3, 3, 0));
        assert!(r.candidates.is_empty() && r.inconsistencies.is_empty());
    }
}
