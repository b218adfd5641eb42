//! Finite pseudo hoops as validated operation tables.
//!
//! A pseudo hoop is an algebra `(M; ⊙, →, ⇝, 1)` with
//!
//! 1. `x ⊙ 1 = x = 1 ⊙ x`
//! 2. `x → x = 1 = x ⇝ x`
//! 3. `(x ⊙ y) → z = x → (y → z)`
//! 4. `(x ⊙ y) ⇝ z = y ⇝ (x ⇝ z)`
//! 5. `(x → y) ⊙ x = (y → x) ⊙ y = x ⊙ (x ⇝ y) = y ⊙ (y ⇝ x)`
//!
//! Tables are row-major with `prod[x][y] = x ⊙ y`. The order is `x ≤ y` iff
//! `x → y = 1`, and `x ∧ y = (x → y) ⊙ x`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::elemset::{ElemSet, MAX_SIZE};
use crate::error::{Error, InputError, Result};
use crate::Elem;

/// Raw tables as read from a file, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoopTables {
    pub size: usize,
    pub unit: Elem,
    pub prod: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rimp: Option<Vec<Vec<Elem>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limp: Option<Vec<Vec<Elem>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<Vec<bool>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<Elem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl HoopTables {
    /// Tables with only a product; arrows must come from `leq` or be supplied later.
    pub fn from_prod(unit: Elem, prod: Vec<Vec<Elem>>) -> Self {
        Self {
            size: prod.len(),
            unit,
            prod,
            rimp: None,
            limp: None,
            leq: None,
            zero: None,
            name: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `x ⊙ 1 = x = 1 ⊙ x`
    Unit,
    /// `x → x = 1 = x ⇝ x`
    SelfArrow,
    /// `(x ⊙ y) → z = x → (y → z)`
    RightCurry,
    /// `(x ⊙ y) ⇝ z = y ⇝ (x ⇝ z)`
    LeftCurry,
    /// The four-way divisibility identity.
    Divisibility,
    /// `⊙` is associative.
    Associativity,
    /// No greatest residual exists for a pair (arrows were being derived).
    Residuation,
    /// `x → y = 1` and `x ⇝ y = 1` disagree.
    ArrowOrder,
    /// The relation `x → y = 1` is not a partial order with top `1`.
    PartialOrder,
    /// `(x → y) ⊙ x` is not the greatest lower bound of `x, y`.
    Meet,
    /// The declared zero is not the least element.
    Zero,
    /// A supplied `leq` matrix disagrees with the arrows.
    LeqMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

/// Outcome of [`validate`]: either a pseudo hoop or every violated axiom instance.
#[derive(Debug, Clone)]
pub enum Validation {
    Valid(FiniteHoop),
    Invalid(Vec<AxiomViolation>),
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid(_))
    }

    pub fn ok(self) -> Option<FiniteHoop> {
        match self {
            Validation::Valid(m) => Some(m),
            Validation::Invalid(_) => None,
        }
    }

    pub fn violations(&self) -> &[AxiomViolation] {
        match self {
            Validation::Valid(_) => &[],
            Validation::Invalid(v) => v,
        }
    }
}

/// A validated finite pseudo hoop. Immutable after construction.
#[derive(Debug, Clone)]
pub struct FiniteHoop {
    size: usize,
    unit: Elem,
    zero: Option<Elem>,
    name: Option<String>,
    prod: Vec<Elem>,
    rimp: Vec<Elem>,
    limp: Vec<Elem>,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Option<Elem>>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
    flags: OnceLock<ClassFlags>,
}

impl PartialEq for FiniteHoop {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.unit == other.unit
            && self.prod == other.prod
            && self.rimp == other.rimp
            && self.limp == other.limp
    }
}

impl Eq for FiniteHoop {}

fn flatten<T: Copy>(rows: &[Vec<T>], n: usize, field: &str) -> Result<Vec<T>, InputError> {
    if rows.len() != n {
        return Err(InputError::new(field, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(InputError::at(
                field,
                &[i],
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        out.extend_from_slice(row);
    }
    Ok(out)
}

fn flatten_elems(rows: &[Vec<Elem>], n: usize, field: &str) -> Result<Vec<Elem>, InputError> {
    let flat = flatten(rows, n, field)?;
    if let Some(k) = flat.iter().position(|&v| v >= n) {
        return Err(InputError::at(
            field,
            &[k / n, k % n],
            format!("entry {} out of range 0..{n}", flat[k]),
        ));
    }
    Ok(flat)
}

/// Derives `→` and `⇝` from a product table and an order:
/// `x → y` is the greatest `z` with `z ⊙ x ≤ y`, `x ⇝ y` the greatest `z` with `x ⊙ z ≤ y`.
///
/// Fails with the first pair `(x, y)` (and the side) for which no greatest element exists.
pub fn derive_arrows(
    size: usize,
    prod: &[Elem],
    leq: &[bool],
) -> std::result::Result<(Vec<Elem>, Vec<Elem>), ArrowFailure> {
    let le = |a: Elem, b: Elem| leq[a * size + b];
    let greatest = |cands: &[Elem]| {
        cands
            .iter()
            .copied()
            .find(|&g| cands.iter().all(|&c| le(c, g)))
    };
    let mut rimp = vec![0; size * size];
    let mut limp = vec![0; size * size];
    let mut cands = Vec::with_capacity(size);
    for x in 0..size {
        for y in 0..size {
            cands.clear();
            cands.extend((0..size).filter(|&z| le(prod[z * size + x], y)));
            rimp[x * size + y] = greatest(&cands).ok_or(ArrowFailure { right: true, x, y })?;
            cands.clear();
            cands.extend((0..size).filter(|&z| le(prod[x * size + z], y)));
            limp[x * size + y] = greatest(&cands).ok_or(ArrowFailure { right: false, x, y })?;
        }
    }
    Ok((rimp, limp))
}

/// The pair for which [`derive_arrows`] found no greatest residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArrowFailure {
    /// `true` for `→`, `false` for `⇝`.
    pub right: bool,
    pub x: Elem,
    pub y: Elem,
}

/// Checks the tables and returns either a [`FiniteHoop`] or all violations.
///
/// When arrows are missing they are derived from `prod` and an order taken from
/// `leq`, or from whichever arrow table is present.
pub fn validate(t: &HoopTables) -> Result<Validation, InputError> {
    let n = t.size;
    if n == 0 {
        return Err(InputError::new("size", "carrier must be non-empty"));
    }
    if n > MAX_SIZE {
        return Err(InputError::new("size", format!("at most {MAX_SIZE} elements supported")));
    }
    if t.unit >= n {
        return Err(InputError::new("unit", format!("{} out of range 0..{n}", t.unit)));
    }
    if let Some(z) = t.zero {
        if z >= n {
            return Err(InputError::new("zero", format!("{z} out of range 0..{n}")));
        }
    }
    let prod = flatten_elems(&t.prod, n, "prod")?;
    let rimp = t.rimp.as_deref().map(|r| flatten_elems(r, n, "rimp")).transpose()?;
    let limp = t.limp.as_deref().map(|r| flatten_elems(r, n, "limp")).transpose()?;
    let leq = t.leq.as_deref().map(|r| flatten(r, n, "leq")).transpose()?;

    let (rimp, limp) = match (rimp, limp) {
        (Some(r), Some(l)) => (r, l),
        (r, l) => {
            let order = match (&leq, &r, &l) {
                (Some(o), _, _) => o.clone(),
                (None, Some(r), _) => r.iter().map(|&v| v == t.unit).collect(),
                (None, None, Some(l)) => l.iter().map(|&v| v == t.unit).collect(),
                (None, None, None) => {
                    return Err(InputError::new(
                        "rimp",
                        "at least one of rimp or leq is required when limp is absent",
                    ))
                }
            };
            match derive_arrows(n, &prod, &order) {
                Ok((dr, dl)) => (r.unwrap_or(dr), l.unwrap_or(dl)),
                Err(f) => {
                    return Ok(Validation::Invalid(vec![AxiomViolation {
                        axiom: Axiom::Residuation,
                        witness: vec![f.x, f.y],
                    }]))
                }
            }
        }
    };

    let violations = check_axioms(n, t.unit, t.zero, &prod, &rimp, &limp, leq.as_deref());
    if !violations.is_empty() {
        return Ok(Validation::Invalid(violations));
    }
    let mut m = FiniteHoop::assemble(n, t.unit, prod, rimp, limp);
    m.name = t.name.clone();
    Ok(Validation::Valid(m))
}

fn check_axioms(
    n: usize,
    unit: Elem,
    zero: Option<Elem>,
    prod: &[Elem],
    rimp: &[Elem],
    limp: &[Elem],
    leq: Option<&[bool]>,
) -> Vec<AxiomViolation> {
    let p = |x: Elem, y: Elem| prod[x * n + y];
    let r = |x: Elem, y: Elem| rimp[x * n + y];
    let l = |x: Elem, y: Elem| limp[x * n + y];
    let mut out = Vec::new();
    let mut push = |axiom, witness: &[Elem]| {
        out.push(AxiomViolation {
            axiom,
            witness: witness.to_vec(),
        })
    };

    for x in 0..n {
        if p(x, unit) != x || p(unit, x) != x {
            push(Axiom::Unit, &[x]);
        }
        if r(x, x) != unit || l(x, x) != unit {
            push(Axiom::SelfArrow, &[x]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if r(p(x, y), z) != r(x, r(y, z)) {
                    push(Axiom::RightCurry, &[x, y, z]);
                }
                if l(p(x, y), z) != l(y, l(x, z)) {
                    push(Axiom::LeftCurry, &[x, y, z]);
                }
                if p(p(x, y), z) != p(x, p(y, z)) {
                    push(Axiom::Associativity, &[x, y, z]);
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let m = p(r(x, y), x);
            if m != p(r(y, x), y) || m != p(x, l(x, y)) || m != p(y, l(y, x)) {
                push(Axiom::Divisibility, &[x, y]);
            }
            if (r(x, y) == unit) != (l(x, y) == unit) {
                push(Axiom::ArrowOrder, &[x, y]);
            }
            if let Some(o) = leq {
                if o[x * n + y] != (r(x, y) == unit) {
                    push(Axiom::LeqMismatch, &[x, y]);
                }
            }
        }
    }

    let le = |a: Elem, b: Elem| r(a, b) == unit;
    for x in 0..n {
        if !le(x, unit) {
            push(Axiom::PartialOrder, &[x, unit]);
        }
        for y in 0..n {
            if x != y && le(x, y) && le(y, x) {
                push(Axiom::PartialOrder, &[x, y]);
            }
            for z in 0..n {
                if le(x, y) && le(y, z) && !le(x, z) {
                    push(Axiom::PartialOrder, &[x, y, z]);
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let m = p(r(x, y), x);
            let is_lb = le(m, x) && le(m, y);
            let greatest = (0..n).all(|w| !(le(w, x) && le(w, y)) || le(w, m));
            if !is_lb || !greatest {
                push(Axiom::Meet, &[x, y]);
            }
        }
    }
    if let Some(z) = zero {
        if let Some(x) = (0..n).find(|&x| !le(z, x)) {
            push(Axiom::Zero, &[z, x]);
        }
    }
    out
}

impl FiniteHoop {
    /// Builds the derived structure from tables already known to satisfy the axioms.
    fn assemble(n: usize, unit: Elem, prod: Vec<Elem>, rimp: Vec<Elem>, limp: Vec<Elem>) -> Self {
        let leq: Vec<bool> = rimp.iter().map(|&v| v == unit).collect();
        let mut up = vec![ElemSet::EMPTY; n];
        let mut down = vec![ElemSet::EMPTY; n];
        for x in 0..n {
            for y in 0..n {
                if leq[x * n + y] {
                    up[x].insert(y);
                    down[y].insert(x);
                }
            }
        }
        let meet = (0..n * n)
            .map(|k| prod[rimp[k] * n + k / n])
            .collect::<Vec<_>>();
        let join = (0..n * n)
            .map(|k| {
                let ub = up[k / n].intersection(up[k % n]);
                ub.iter().find(|&u| ub.is_subset(up[u]))
            })
            .collect();
        let zero = (0..n).find(|&z| up[z] == ElemSet::full(n));
        FiniteHoop {
            size: n,
            unit,
            zero,
            name: None,
            prod,
            rimp,
            limp,
            leq,
            meet,
            join,
            up,
            down,
            flags: OnceLock::new(),
        }
    }

    /// Validates tables, turning violations into an error. Convenient for constructions
    /// that are known to produce pseudo hoops.
    pub fn from_tables(t: &HoopTables) -> Result<Self> {
        match validate(t)? {
            Validation::Valid(m) => Ok(m),
            Validation::Invalid(v) => Err(Error::Contract(format!(
                "tables are not a pseudo hoop: {} violation(s), first {:?}",
                v.len(),
                v[0]
            ))),
        }
    }

    /// Builds from a product table and an order, deriving both arrows.
    pub fn from_prod_and_order(unit: Elem, prod: Vec<Vec<Elem>>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let mut t = HoopTables::from_prod(unit, prod);
        t.leq = Some(leq);
        Self::from_tables(&t)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    /// The least element. Every finite pseudo hoop has one.
    pub fn zero(&self) -> Option<Elem> {
        self.zero
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.size)
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.prod[x * self.size + y]
    }

    /// `x → y`
    #[inline]
    pub fn rimp(&self, x: Elem, y: Elem) -> Elem {
        self.rimp[x * self.size + y]
    }

    /// `x ⇝ y`
    #[inline]
    pub fn limp(&self, x: Elem, y: Elem) -> Elem {
        self.limp[x * self.size + y]
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.size + y]
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    /// `(x → y) ⊙ x`
    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.size + y]
    }

    /// Least upper bound, if it exists.
    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.join[x * self.size + y]
    }

    /// Elements `≥ x`.
    pub fn up(&self, x: Elem) -> ElemSet {
        self.up[x]
    }

    /// Elements `≤ x`.
    pub fn down(&self, x: Elem) -> ElemSet {
        self.down[x]
    }

    /// Upward closure of a set.
    pub fn up_closure(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, x| acc.union(self.up[x]))
    }

    /// `xⁿ`, with `x⁰ = 1`. Powers are constant from `n = size` on.
    pub fn power(&self, x: Elem, n: usize) -> Elem {
        let n = n.min(self.size);
        (0..n).fold(self.unit, |acc, _| self.mul(acc, x))
    }

    /// Least `n ≥ 1` with `xⁿ = xⁿ⁺¹`; never exceeds the size.
    pub fn stab_index(&self, x: Elem) -> usize {
        let mut p = x;
        let mut n = 1;
        loop {
            let q = self.mul(p, x);
            if q == p {
                return n;
            }
            p = q;
            n += 1;
        }
    }

    /// `x⁻ = x → 0`
    pub fn neg_r(&self, x: Elem) -> Option<Elem> {
        self.zero.map(|z| self.rimp(x, z))
    }

    /// `x˜ = x ⇝ 0`
    pub fn neg_l(&self, x: Elem) -> Option<Elem> {
        self.zero.map(|z| self.limp(x, z))
    }

    /// `((x ⇝ y) → y) ∧ ((y ⇝ x) → x)`
    pub fn vee1(&self, x: Elem, y: Elem) -> Elem {
        self.meet(
            self.rimp(self.limp(x, y), y),
            self.rimp(self.limp(y, x), x),
        )
    }

    /// `((x → y) ⇝ y) ∧ ((y → x) ⇝ x)`
    pub fn vee2(&self, x: Elem, y: Elem) -> Elem {
        self.meet(
            self.limp(self.rimp(x, y), y),
            self.limp(self.rimp(y, x), x),
        )
    }

    /// Meet, both term joins and the order-theoretic join of a pair.
    ///
    /// On a prelinear algebra the three joins must coincide; a disagreement is reported
    /// as an inconsistency.
    pub fn meet_join(&self, x: Elem, y: Elem) -> Result<MeetJoin> {
        let mj = MeetJoin {
            meet: self.meet(x, y),
            vee1: self.vee1(x, y),
            vee2: self.vee2(x, y),
            join: self.join(x, y),
        };
        if self.flags().prelinear && (mj.join != Some(mj.vee1) || mj.join != Some(mj.vee2)) {
            return Err(Error::Inconsistency(format!(
                "prelinear algebra with ∨₁/∨₂/join disagreement at ({x}, {y}): {mj:?}"
            )));
        }
        Ok(mj)
    }

    /// Class flags, computed once by exhaustive checks.
    pub fn flags(&self) -> &ClassFlags {
        self.flags.get_or_init(|| classify(self))
    }

    /// Relabels elements: `perm[old] = new`.
    pub fn relabel(&self, perm: &[Elem]) -> FiniteHoop {
        let n = self.size;
        assert_eq!(perm.len(), n, "permutation length");
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let map = |table: &[Elem]| {
            let mut out = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    out[a * n + b] = perm[table[inv[a] * n + inv[b]]];
                }
            }
            out
        };
        let mut m = FiniteHoop::assemble(n, perm[self.unit], map(&self.prod), map(&self.rimp), map(&self.limp));
        m.name = self.name.clone();
        m
    }

    /// Row-major flat tables `(prod, rimp, limp)`.
    pub fn raw_tables(&self) -> (&[Elem], &[Elem], &[Elem]) {
        (&self.prod, &self.rimp, &self.limp)
    }

    pub fn to_tables(&self) -> HoopTables {
        let rows = |t: &[Elem]| t.chunks(self.size).map(<[Elem]>::to_vec).collect();
        HoopTables {
            size: self.size,
            unit: self.unit,
            prod: rows(&self.prod),
            rimp: Some(rows(&self.rimp)),
            limp: Some(rows(&self.limp)),
            leq: None,
            zero: self.zero,
            name: self.name.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MeetJoin {
    pub meet: Elem,
    pub vee1: Elem,
    pub vee2: Elem,
    pub join: Option<Elem>,
}

/// Class membership of a finite pseudo hoop, each decided by exhaustive evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassFlags {
    pub bounded: bool,
    pub commutative: bool,
    pub cancellative: bool,
    pub prelinear: bool,
    pub basic: bool,
    pub good: bool,
    pub eq64: bool,
    #[serde(rename = "pseudoBL")]
    pub pseudo_bl: bool,
    pub lattice: bool,
}

/// Names of the individual [`ClassFlags`], used to restrict enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Bounded,
    Commutative,
    Cancellative,
    Prelinear,
    Basic,
    Good,
    Eq64,
    PseudoBl,
    Lattice,
}

impl ClassFlags {
    pub fn get(&self, f: Flag) -> bool {
        match f {
            Flag::Bounded => self.bounded,
            Flag::Commutative => self.commutative,
            Flag::Cancellative => self.cancellative,
            Flag::Prelinear => self.prelinear,
            Flag::Basic => self.basic,
            Flag::Good => self.good,
            Flag::Eq64 => self.eq64,
            Flag::PseudoBl => self.pseudo_bl,
            Flag::Lattice => self.lattice,
        }
    }
}

fn all_pairs(n: usize) -> impl Iterator<Item = (Elem, Elem)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

/// Computes every class flag by brute force over pairs and triples.
pub fn classify(m: &FiniteHoop) -> ClassFlags {
    let n = m.size;
    let one = m.unit;
    let bounded = m.zero.is_some();
    let commutative = all_pairs(n).all(|(x, y)| m.mul(x, y) == m.mul(y, x));
    let cancellative = all_pairs(n).all(|(x, y)| {
        (0..n).all(|z| {
            (m.mul(x, y) != m.mul(x, z) || y == z) && (m.mul(y, x) != m.mul(z, x) || y == z)
        })
    });
    let lattice = m.join.iter().all(Option::is_some);
    let prelinear = all_pairs(n).all(|(x, y)| {
        m.join(m.rimp(x, y), m.rimp(y, x)) == Some(one) && m.join(m.limp(x, y), m.limp(y, x)) == Some(one)
    });
    let basic = all_pairs(n).all(|(x, y)| {
        (0..n).all(|z| {
            m.leq(m.rimp(m.rimp(x, y), z), m.rimp(m.rimp(m.rimp(y, x), z), z))
                && m.leq(m.limp(m.limp(x, y), z), m.limp(m.limp(m.limp(y, x), z), z))
        })
    });
    let good = match m.zero {
        Some(z) => (0..n).all(|x| m.limp(m.rimp(x, z), z) == m.rimp(m.limp(x, z), z)),
        None => false,
    };
    let eq64 = all_pairs(n).all(|(x, y)| m.limp(m.rimp(x, y), y) == m.rimp(m.limp(x, y), y));
    ClassFlags {
        bounded,
        commutative,
        cancellative,
        prelinear,
        basic,
        good,
        eq64,
        pseudo_bl: bounded && prelinear && lattice,
        lattice,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{make_chain, ChainKind};
    use crate::named;

    #[test]
    fn trivial_algebra_is_valid() {
        let t = HoopTables::from_prod(0, vec![vec![0]]);
        let mut t = t;
        t.rimp = Some(vec![vec![0]]);
        t.limp = Some(vec![vec![0]]);
        assert!(validate(&t).unwrap().is_valid());
    }

    #[test]
    fn boolean_two_is_valid() {
        let mut t = HoopTables::from_prod(1, vec![vec![0, 0], vec![0, 1]]);
        t.rimp = Some(vec![vec![1, 1], vec![0, 1]]);
        t.limp = t.rimp.clone();
        let m = validate(&t).unwrap().ok().unwrap();
        assert_eq!(m.zero(), Some(0));
    }

    #[test]
    fn corrupted_lukasiewicz_reports_violations() {
        let l3 = named::l3();
        let mut t = l3.to_tables();
        t.prod[1][1] = 1;
        let v = validate(&t).unwrap();
        let vs = v.violations();
        assert!(vs.iter().any(|v| v.axiom == Axiom::Divisibility));
        // (a ⊙ a) → 0 = a → (a → 0) fails once a ⊙ a = a while a → 0 stays a.
        assert!(vs
            .iter()
            .any(|v| v.axiom == Axiom::RightCurry && v.witness == [1, 1, 0]));
    }

    #[test]
    fn malformed_tables_are_input_errors() {
        let t = HoopTables::from_prod(0, vec![]);
        assert_eq!(validate(&t).unwrap_err().field, "size");
        let mut t = HoopTables::from_prod(1, vec![vec![0, 0], vec![0, 7]]);
        t.leq = Some(vec![vec![true, true], vec![false, true]]);
        let e = validate(&t).unwrap_err();
        assert_eq!((e.field.as_str(), e.position.as_slice()), ("prod", &[1, 1][..]));
        let t = HoopTables::from_prod(1, vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(validate(&t).unwrap_err().field, "rimp");
        let t = HoopTables::from_prod(1, vec![vec![0, 0], vec![0]]);
        assert_eq!(validate(&t).unwrap_err().position, vec![1]);
    }

    #[test]
    fn derive_arrows_by_scan() {
        let t1 = derive_arrows(1, &[0], &[true]).unwrap();
        assert_eq!(t1, (vec![0], vec![0]));

        let g3 = named::g3();
        let (prod, _, _) = g3.raw_tables();
        let (r, _) = derive_arrows(3, prod, &g3.leq).unwrap();
        assert_eq!(r[2 * 3 + 1], 1); // 1 → a = a
        assert_eq!(r[3 + 2], 2); // a → 1 = 1

        let l3 = named::l3();
        let (prod, _, _) = l3.raw_tables();
        let (r, _) = derive_arrows(3, prod, &l3.leq).unwrap();
        assert_eq!(r[3], 1); // a → 0 = a
    }

    #[test]
    fn derive_arrows_reports_non_residuated_pair() {
        let prod = [0, 0, 0, 0, 1, 1, 0, 1, 2];
        let chain = [true, true, true, false, true, true, false, false, true];
        assert!(derive_arrows(3, &prod, &chain).is_ok());
        // With 0 and 1 incomparable, nothing z satisfies z ⊙ 0 = 0 ≤ 1.
        let broken = [true, false, true, false, true, true, false, false, true];
        let err = derive_arrows(3, &prod, &broken).unwrap_err();
        assert_eq!((err.right, err.x, err.y), (true, 0, 1));
    }

    #[test]
    fn classify_named() {
        let l3 = *named::l3().flags();
        assert!(l3.bounded && l3.commutative && l3.prelinear && l3.basic && l3.good && l3.pseudo_bl);
        assert!(!l3.cancellative);
        assert_eq!(*named::g3().flags(), l3);
        let t1 = *named::t1().flags();
        assert!(t1.bounded && t1.commutative && t1.cancellative && t1.prelinear);
        assert!(t1.basic && t1.good && t1.eq64 && t1.pseudo_bl && t1.lattice);
    }

    #[test]
    fn meet_join_examples() {
        let g3 = named::g3();
        assert_eq!(g3.meet_join(1, 2).unwrap().meet, 1);
        let l3 = named::l3();
        let mj = l3.meet_join(1, 0).unwrap();
        assert_eq!((mj.vee1, mj.join), (1, Some(1)));
        let b4 = named::b4();
        let mj = b4.meet_join(named::B4_A, named::B4_B).unwrap();
        assert_eq!((mj.join, mj.vee1), (Some(3), 3));
    }

    #[test]
    fn powers() {
        let l3 = named::l3();
        assert_eq!(l3.power(1, 0), 2);
        assert_eq!(l3.power(1, 2), 0);
        assert_eq!(l3.stab_index(1), 2);
        assert_eq!(named::g3().stab_index(1), 1);
        let l6 = make_chain(ChainKind::Lukasiewicz, 6);
        assert_eq!(l6.stab_index(4), 5);
        assert_eq!(l6.power(4, 1000), 0);
    }

    #[test]
    fn relabel_round_trip() {
        let l3 = named::l3();
        let r = l3.relabel(&[1, 0, 2]);
        assert_eq!(r.mul(0, 0), 1);
        assert_eq!(r.relabel(&[1, 0, 2]), l3);
        assert!(validate(&r.to_tables()).unwrap().is_valid());
    }
}
