//! Filters of a finite pseudo hoop: generation, the filter lattice, normality,
//! right/left class structures, primality, values and covers.
//!
//! All results are sorted by the bit-set order of [`ElemSet`] so that every listing is
//! deterministic.

use serde::Serialize;

use crate::algebra::HoopTables;
use crate::error::{Error, Result};
use crate::{Elem, ElemSet, FiniteHoop};

/// A subset containing `1`, closed under `⊙` and upward closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Filter(ElemSet);

impl Filter {
    pub fn elements(self) -> ElemSet {
        self.0
    }

    pub fn contains(self, x: Elem) -> bool {
        self.0.contains(x)
    }

    pub fn is_proper(self, m: &FiniteHoop) -> bool {
        self.0 != m.all()
    }

    /// Wraps a set, checking the filter axioms.
    pub fn new(m: &FiniteHoop, s: ElemSet) -> Result<Filter> {
        if is_filter(m, s) {
            Ok(Filter(s))
        } else {
            Err(Error::Contract(format!("{s:?} is not a filter")))
        }
    }

    pub fn meet(self, other: Filter) -> Filter {
        Filter(self.0.intersection(other.0))
    }

    /// `{1}`.
    pub fn trivial(m: &FiniteHoop) -> Filter {
        Filter(ElemSet::singleton(m.unit()))
    }

    pub fn whole(m: &FiniteHoop) -> Filter {
        Filter(m.all())
    }
}

/// Checks the filter axioms directly.
pub fn is_filter(m: &FiniteHoop, s: ElemSet) -> bool {
    s.contains(m.unit())
        && s.iter().all(|x| m.up(x).is_subset(s))
        && s.iter().all(|x| s.iter().all(|y| s.contains(m.mul(x, y))))
}

/// The least filter containing `s`: upward closure of all finite products of elements of `s`.
pub fn generated_filter(m: &FiniteHoop, s: ElemSet) -> Filter {
    let mut cur = m.up_closure(s.with(m.unit()));
    loop {
        let mut next = cur;
        for x in cur {
            for y in cur {
                next.insert(m.mul(x, y));
            }
        }
        let next = m.up_closure(next);
        if next == cur {
            return Filter(cur);
        }
        cur = next;
    }
}

/// `F(a) = {x : x ≥ aⁿ for some n ≥ 1}`, computed from powers up to the size.
pub fn principal_filter(m: &FiniteHoop, a: Elem) -> Filter {
    let lowest = m.power(a, m.size());
    Filter(m.up(lowest))
}

/// Join in the filter lattice: the filter generated by the union.
pub fn filter_join(m: &FiniteHoop, f: Filter, g: Filter) -> Filter {
    generated_filter(m, f.0.union(g.0))
}

/// Every filter, in bit-set order.
///
/// In a finite pseudo hoop each filter is `F(p)` for `p` the product of its elements,
/// so the principal filters are all of them.
pub fn all_filters(m: &FiniteHoop) -> Vec<Filter> {
    let mut out: Vec<Filter> = m.elements().map(|a| principal_filter(m, a)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `A ⊙ B = {a ⊙ b : a ∈ A, b ∈ B}`.
pub fn set_product(m: &FiniteHoop, a: ElemSet, b: ElemSet) -> ElemSet {
    let mut out = ElemSet::EMPTY;
    for x in a {
        for y in b {
            out.insert(m.mul(x, y));
        }
    }
    out
}

/// The filter lattice with its operation tables (indices into `filters`).
#[derive(Debug, Clone, Serialize)]
pub struct FilterLattice {
    pub filters: Vec<Filter>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    /// A triple `(F, G, H)` with `F ∩ (G ∨ H) ≠ (F ∩ G) ∨ (F ∩ H)`, if any.
    pub distributivity_witness: Option<(usize, usize, usize)>,
    /// A filter and a family (as a bit mask over `filters`) breaking
    /// `F ∩ ⋁ Fᵢ = ⋁ (F ∩ Fᵢ)`, if any.
    pub family_witness: Option<(usize, u64)>,
    /// Whether every family was examined; false when there are too many filters.
    pub families_exhausted: bool,
}

impl FilterLattice {
    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness.is_none() && self.family_witness.is_none()
    }
}

/// Families are exhausted only up to this many filters.
pub const MAX_FAMILY_FILTERS: usize = 16;

pub fn filter_lattice(m: &FiniteHoop) -> FilterLattice {
    let filters = all_filters(m);
    let k = filters.len();
    let index = |f: Filter| filters.binary_search(&f).expect("closed under lattice operations");
    let meet: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).map(|j| index(filters[i].meet(filters[j]))).collect())
        .collect();
    let join: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).map(|j| index(filter_join(m, filters[i], filters[j]))).collect())
        .collect();

    let mut distributivity_witness = None;
    'outer: for f in 0..k {
        for g in 0..k {
            for h in 0..k {
                if meet[f][join[g][h]] != join[meet[f][g]][meet[f][h]] {
                    distributivity_witness = Some((f, g, h));
                    break 'outer;
                }
            }
        }
    }

    let families_exhausted = k <= MAX_FAMILY_FILTERS;
    let mut family_witness = None;
    if families_exhausted {
        'fam: for f in 0..k {
            for mask in 1u64..1 << k {
                let members = (0..k).filter(|i| mask >> i & 1 == 1);
                let union = members.clone().fold(ElemSet::EMPTY, |s, i| s.union(filters[i].0));
                let lhs = filters[f].meet(generated_filter(m, union));
                let pieces = members.fold(ElemSet::EMPTY, |s, i| s.union(filters[f].meet(filters[i]).0));
                if lhs != generated_filter(m, pieces) {
                    family_witness = Some((f, mask));
                    break 'fam;
                }
            }
        }
    }

    FilterLattice {
        filters,
        meet,
        join,
        distributivity_witness,
        family_witness,
        families_exhausted,
    }
}

/// Whether `F` is normal, by both characterisations: `a ⊙ F = F ⊙ a` for every `a`,
/// and `x → y ∈ F` iff `x ⇝ y ∈ F`. They must agree.
pub fn is_normal_filter(m: &FiniteHoop, f: Filter) -> Result<bool> {
    let by_cosets = m.elements().all(|a| {
        set_product(m, ElemSet::singleton(a), f.0) == set_product(m, f.0, ElemSet::singleton(a))
    });
    let by_arrows = m
        .elements()
        .all(|x| m.elements().all(|y| f.contains(m.rimp(x, y)) == f.contains(m.limp(x, y))));
    if by_cosets != by_arrows {
        return Err(Error::Inconsistency(format!(
            "normality of {:?}: coset test says {by_cosets}, arrow test says {by_arrows}",
            f.0
        )));
    }
    Ok(by_cosets)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Classes `Fa` of `a ≅ b` iff `a → b, b → a ∈ F`.
    Right,
    /// Classes `aF` of `a ≅ b` iff `a ⇝ b, b ⇝ a ∈ F`.
    Left,
}

/// The classes of a filter on one side, with the induced order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientStructure {
    pub side: Side,
    /// Classes ordered by their least element index.
    pub classes: Vec<ElemSet>,
    pub class_of: Vec<usize>,
    /// `order[i][j]` iff class `i` ≤ class `j`.
    pub order: Vec<Vec<bool>>,
}

impl QuotientStructure {
    /// Compares the classes of two elements.
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.order[self.class_of[x]][self.class_of[y]]
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        self.leq(x, y) && self.class_of[x] != self.class_of[y]
    }

    pub fn is_total(&self) -> bool {
        let k = self.classes.len();
        (0..k).all(|i| (0..k).all(|j| self.order[i][j] || self.order[j][i]))
    }

    /// Class ids sorted along the order; only meaningful when [`is_total`](Self::is_total).
    pub fn chain(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.classes.len()).collect();
        ids.sort_by_key(|&i| self.order[i].iter().filter(|&&b| b).count());
        ids.reverse();
        ids
    }
}

/// Right or left classes of any filter, with `Fa ≤ Fb` iff `a → b ∈ F`
/// (left: `a ⇝ b ∈ F`). Also confirms that this order agrees with
/// "`x ⊙ a ≤ b` for some `x ∈ F`" (left: `a ⊙ x ≤ b`).
pub fn class_structure(m: &FiniteHoop, f: Filter, side: Side) -> Result<QuotientStructure> {
    let arrow = |a: Elem, b: Elem| match side {
        Side::Right => m.rimp(a, b),
        Side::Left => m.limp(a, b),
    };
    let by_product = |a: Elem, b: Elem| {
        f.0.iter().any(|x| match side {
            Side::Right => m.leq(m.mul(x, a), b),
            Side::Left => m.leq(m.mul(a, x), b),
        })
    };
    let n = m.size();
    for a in 0..n {
        for b in 0..n {
            if f.contains(arrow(a, b)) != by_product(a, b) {
                return Err(Error::Inconsistency(format!(
                    "{side:?} class order of {:?} at ({a}, {b}): arrow and product tests disagree",
                    f.0
                )));
            }
        }
    }
    let mut classes: Vec<ElemSet> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let cls: ElemSet = (a..n)
            .filter(|&b| f.contains(arrow(a, b)) && f.contains(arrow(b, a)))
            .collect();
        for b in cls {
            class_of[b] = classes.len();
        }
        classes.push(cls);
    }
    let reps: Vec<Elem> = classes.iter().map(|c| c.first().unwrap()).collect();
    let order = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| f.contains(arrow(a, b))).collect())
        .collect();
    Ok(QuotientStructure {
        side,
        classes,
        class_of,
        order,
    })
}

/// `M/F` for a normal filter, with the projection `x ↦ x/F`.
pub fn quotient(m: &FiniteHoop, f: Filter) -> Result<(FiniteHoop, Vec<usize>)> {
    if !is_normal_filter(m, f)? {
        return Err(Error::Contract(format!("{:?} is not a normal filter", f.0)));
    }
    let qs = class_structure(m, f, Side::Right)?;
    let k = qs.classes.len();
    let reps: Vec<Elem> = qs.classes.iter().map(|c| c.first().unwrap()).collect();
    let induced = |op: fn(&FiniteHoop, Elem, Elem) -> Elem| -> Result<Vec<Vec<usize>>> {
        let mut t = vec![vec![0; k]; k];
        for x in 0..m.size() {
            for y in 0..m.size() {
                let c = qs.class_of[op(m, x, y)];
                let expected = qs.class_of[op(m, reps[qs.class_of[x]], reps[qs.class_of[y]])];
                if c != expected {
                    return Err(Error::Inconsistency(format!(
                        "θ_F is not a congruence at ({x}, {y}) for {:?}",
                        f.0
                    )));
                }
                t[qs.class_of[x]][qs.class_of[y]] = c;
            }
        }
        Ok(t)
    };
    let tables = HoopTables {
        size: k,
        unit: qs.class_of[m.unit()],
        prod: induced(FiniteHoop::mul)?,
        rimp: Some(induced(FiniteHoop::rimp)?),
        limp: Some(induced(FiniteHoop::limp)?),
        leq: None,
        zero: None,
        name: None,
    };
    let q = FiniteHoop::from_tables(&tables)
        .map_err(|e| Error::Inconsistency(format!("quotient is not a pseudo hoop: {e}")))?;
    Ok((q, qs.class_of))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PrimeCondition {
    /// `F₁ ∩ F₂ ⊆ F` implies `F₁ ⊆ F` or `F₂ ⊆ F`.
    I,
    /// `f ∨ g = 1` implies `f ∈ F` or `g ∈ F`.
    II,
    /// `f → g ∈ F` or `g → f ∈ F`.
    III,
    /// `f ⇝ g ∈ F` or `g ⇝ f ∈ F`.
    IIIp,
    /// `f ∨ g ∈ F` implies `f ∈ F` or `g ∈ F`.
    IV,
    /// Some `c ∈ F` has `c ⊙ f ≤ g` or `c ⊙ g ≤ f`.
    V,
    /// Filters containing `F` are pairwise comparable.
    VI,
    /// `F` is finitely meet-irreducible.
    VII,
    /// `f, g ∉ F` implies `f ∨ g ∉ F`.
    VIII,
}

impl PrimeCondition {
    pub const ALL: [PrimeCondition; 9] = [
        PrimeCondition::I,
        PrimeCondition::II,
        PrimeCondition::III,
        PrimeCondition::IIIp,
        PrimeCondition::IV,
        PrimeCondition::V,
        PrimeCondition::VI,
        PrimeCondition::VII,
        PrimeCondition::VIII,
    ];

    fn needs_joins(self) -> bool {
        matches!(self, PrimeCondition::II | PrimeCondition::IV | PrimeCondition::VIII)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeReport {
    /// `None` marks a condition that mentions joins on an algebra lacking them.
    pub results: Vec<(PrimeCondition, Option<bool>)>,
    pub agree: bool,
}

impl PrimeReport {
    pub fn get(&self, c: PrimeCondition) -> Option<bool> {
        self.results.iter().find(|(k, _)| *k == c).and_then(|(_, v)| *v)
    }

    /// Common value of the applicable conditions, when they agree.
    pub fn verdict(&self) -> Option<bool> {
        let mut vals = self.results.iter().filter_map(|(_, v)| *v);
        let first = vals.next()?;
        self.agree.then_some(first)
    }
}

/// Primality by definition: `F₁ ∩ F₂ ⊆ F` forces `F₁ ⊆ F` or `F₂ ⊆ F`.
pub fn is_prime(m: &FiniteHoop, f: Filter) -> bool {
    f.is_proper(m) && {
        let fs = all_filters(m);
        fs.iter().all(|a| {
            fs.iter().all(|b| {
                !a.meet(*b).0.is_subset(f.0) || a.0.is_subset(f.0) || b.0.is_subset(f.0)
            })
        })
    }
}

fn evaluate(m: &FiniteHoop, f: Filter, c: PrimeCondition, filters: &[Filter]) -> bool {
    let pairs = || m.elements().flat_map(|x| m.elements().map(move |y| (x, y)));
    let join = |x, y| m.join(x, y).expect("joins checked before evaluation");
    let one = m.unit();
    let above: Vec<Filter> = filters.iter().copied().filter(|g| f.0.is_subset(g.0)).collect();
    match c {
        PrimeCondition::I => filters.iter().all(|a| {
            filters.iter().all(|b| !a.meet(*b).0.is_subset(f.0) || a.0.is_subset(f.0) || b.0.is_subset(f.0))
        }),
        PrimeCondition::II => pairs().all(|(x, y)| join(x, y) != one || f.contains(x) || f.contains(y)),
        PrimeCondition::III => pairs().all(|(x, y)| f.contains(m.rimp(x, y)) || f.contains(m.rimp(y, x))),
        PrimeCondition::IIIp => pairs().all(|(x, y)| f.contains(m.limp(x, y)) || f.contains(m.limp(y, x))),
        PrimeCondition::IV => {
            pairs().all(|(x, y)| !f.contains(join(x, y)) || f.contains(x) || f.contains(y))
        }
        PrimeCondition::V => pairs().all(|(x, y)| {
            f.0.iter().any(|c| m.leq(m.mul(c, x), y) || m.leq(m.mul(c, y), x))
        }),
        PrimeCondition::VI => above
            .iter()
            .all(|a| above.iter().all(|b| a.0.is_subset(b.0) || b.0.is_subset(a.0))),
        PrimeCondition::VII => above.iter().all(|a| {
            above.iter().all(|b| {
                !(f.0.is_proper_subset(a.0) && f.0.is_proper_subset(b.0))
                    || f.0.is_proper_subset(a.meet(*b).0)
            })
        }),
        PrimeCondition::VIII => pairs().all(|(x, y)| f.contains(x) || f.contains(y) || !f.contains(join(x, y))),
    }
}

/// Evaluates every prime-filter condition independently by brute force.
///
/// On basic algebras the applicable conditions must all agree; a disagreement there
/// is an inconsistency.
pub fn prime_tests(m: &FiniteHoop, f: Filter) -> Result<PrimeReport> {
    if !f.is_proper(m) {
        return Err(Error::Contract("primality is defined for proper filters only".into()));
    }
    if !is_filter(m, f.0) {
        return Err(Error::Contract(format!("{:?} is not a filter", f.0)));
    }
    let filters = all_filters(m);
    let lattice = m.flags().lattice;
    let results: Vec<(PrimeCondition, Option<bool>)> = PrimeCondition::ALL
        .iter()
        .map(|&c| (c, (lattice || !c.needs_joins()).then(|| evaluate(m, f, c, &filters))))
        .collect();
    let mut vals = results.iter().filter_map(|(_, v)| *v);
    let first = vals.next();
    let agree = vals.all(|v| Some(v) == first);
    if m.flags().basic && !agree {
        return Err(Error::Inconsistency(format!(
            "prime conditions disagree on basic algebra for {:?}: {results:?}",
            f.0
        )));
    }
    Ok(PrimeReport { results, agree })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValueRecord {
    pub g: Elem,
    pub value: Filter,
    pub cover: Filter,
}

/// All filters maximal for omitting `g`, each with its cover (the filter generated by
/// the value and `g`). On basic algebras every value is checked to be prime.
pub fn values_of(m: &FiniteHoop, g: Elem) -> Result<Vec<ValueRecord>> {
    if g == m.unit() {
        return Err(Error::Contract("values exist only for elements below 1".into()));
    }
    let omitting: Vec<Filter> = all_filters(m).into_iter().filter(|f| !f.contains(g)).collect();
    let mut out = Vec::new();
    for &v in &omitting {
        if omitting.iter().any(|w| v.0.is_proper_subset(w.0)) {
            continue;
        }
        if m.flags().basic && prime_tests(m, v)?.verdict() != Some(true) {
            return Err(Error::Inconsistency(format!("value {:?} of {g} is not prime", v.0)));
        }
        out.push(ValueRecord {
            g,
            value: v,
            cover: generated_filter(m, v.0.with(g)),
        });
    }
    Ok(out)
}

/// Every value of every element below `1`.
pub fn all_values(m: &FiniteHoop) -> Result<Vec<ValueRecord>> {
    let mut out = Vec::new();
    for g in m.elements().filter(|&g| g != m.unit()) {
        out.extend(values_of(m, g)?);
    }
    Ok(out)
}

/// Proper prime filters (by definition) that contain no other proper prime.
pub fn minimal_primes(m: &FiniteHoop) -> Vec<Filter> {
    let primes: Vec<Filter> = all_filters(m).into_iter().filter(|&f| is_prime(m, f)).collect();
    primes
        .iter()
        .copied()
        .filter(|p| !primes.iter().any(|q| q.0.is_proper_subset(p.0)))
        .collect()
}

/// Proper filters not strictly contained in another proper filter.
pub fn maximal_filters(m: &FiniteHoop) -> Vec<Filter> {
    let proper: Vec<Filter> = all_filters(m).into_iter().filter(|f| f.is_proper(m)).collect();
    proper
        .iter()
        .copied()
        .filter(|f| !proper.iter().any(|g| f.0.is_proper_subset(g.0)))
        .collect()
}

/// `u` generates the whole algebra as a filter.
pub fn has_strong_unit(m: &FiniteHoop, u: Elem) -> bool {
    principal_filter(m, u).0 == m.all()
}

/// `X⊥ = {x : x ∨ a = 1 for all a ∈ X}` on a basic algebra; the result is checked to
/// be a filter.
pub fn perp(m: &FiniteHoop, xs: ElemSet) -> Result<Filter> {
    if !m.flags().basic {
        return Err(Error::Inapplicable("basic"));
    }
    let mut out = ElemSet::EMPTY;
    for x in m.elements() {
        let mut all = true;
        for a in xs {
            match m.join(x, a) {
                Some(j) => all &= j == m.unit(),
                None => return Err(Error::Inapplicable("joins")),
            }
        }
        if all {
            out.insert(x);
        }
    }
    if !is_filter(m, out) {
        return Err(Error::Inconsistency(format!("{xs:?}⊥ = {out:?} is not a filter")));
    }
    Ok(Filter(out))
}

/// Non-empty, downward closed and closed under existing joins.
pub fn is_lattice_ideal(m: &FiniteHoop, a: ElemSet) -> bool {
    !a.is_empty()
        && a.iter().all(|x| m.down(x).is_subset(a))
        && a.iter().all(|x| a.iter().all(|y| m.join(x, y).is_some_and(|j| a.contains(j))))
}

/// A filter containing `F`, disjoint from the lattice ideal `A`, and maximal with
/// that property; built greedily in element order. On basic algebras the result is
/// checked to be prime.
pub fn prime_extension(m: &FiniteHoop, f: Filter, a: ElemSet) -> Result<Filter> {
    if !m.flags().basic {
        return Err(Error::Inapplicable("basic"));
    }
    if !is_filter(m, f.0) {
        return Err(Error::Contract(format!("{:?} is not a filter", f.0)));
    }
    if !is_lattice_ideal(m, a) {
        return Err(Error::Contract(format!("{a:?} is not a lattice ideal")));
    }
    if !f.0.is_disjoint(a) {
        return Err(Error::Contract("filter meets the ideal".into()));
    }
    let mut p = f;
    for x in m.elements() {
        if p.contains(x) {
            continue;
        }
        let bigger = generated_filter(m, p.0.with(x));
        if bigger.0.is_disjoint(a) {
            p = bigger;
        }
    }
    if prime_tests(m, p)?.verdict() != Some(true) {
        return Err(Error::Inconsistency(format!(
            "maximal filter {:?} avoiding {a:?} is not prime",
            p.0
        )));
    }
    Ok(p)
}
