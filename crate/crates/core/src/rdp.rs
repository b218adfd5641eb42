//! Riesz decomposition: if `b ⊙ c ≤ a` then `a = b′ ⊙ c′` with `b ≤ b′` and `c ≤ c′`,
//! using the explicit witnesses
//!
//! ```text
//! c′ = (c → a) ⇝ a
//! b′ = c′ → a
//! ```
//!
//! plus the product laws for principal filters and filters.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::filters::{all_filters, filter_join, principal_filter, set_product, Filter};
use crate::normalvalued::check_61;
use crate::{Elem, FiniteHoop};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RdpWitness {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub b_prime: Elem,
    pub c_prime: Elem,
}

/// Computes the decomposition of `a` refining `b ⊙ c ≤ a`.
pub fn rdp_witness(m: &FiniteHoop, a: Elem, b: Elem, c: Elem) -> Result<RdpWitness> {
    if !m.leq(m.mul(b, c), a) {
        return Err(Error::Contract(format!("{b} ⊙ {c} is not below {a}")));
    }
    let c_prime = m.limp(m.rimp(c, a), a);
    let b_prime = m.rimp(c_prime, a);
    let w = RdpWitness { a, b, c, b_prime, c_prime };
    if !(m.leq(b, b_prime) && m.leq(c, c_prime) && m.mul(b_prime, c_prime) == a) {
        return Err(Error::Inconsistency(format!("decomposition fails: {w:?}")));
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RdpReport {
    /// Number of triples with `b ⊙ c ≤ a`.
    pub checked: usize,
    /// The first triple `(a, b, c)` whose witness failed, in lexicographic order.
    pub failure: Option<(Elem, Elem, Elem)>,
}

impl RdpReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn verify_rdp(m: &FiniteHoop) -> RdpReport {
    let mut checked = 0;
    for a in m.elements() {
        for b in m.elements() {
            for c in m.elements() {
                if !m.leq(m.mul(b, c), a) {
                    continue;
                }
                checked += 1;
                if rdp_witness(m, a, b, c).is_err() {
                    return RdpReport { checked, failure: Some((a, b, c)) };
                }
            }
        }
    }
    RdpReport { checked, failure: None }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterProductReport {
    pub satisfies_61: bool,
    /// Whether `F(a) ⊙ F(b) = F(a ⊙ b) = F(b ⊙ a) = F(b) ⊙ F(a)` for all `a, b`.
    pub principal_law: bool,
    pub principal_witness: Option<(Elem, Elem)>,
    /// Whether `F ⊙ G = F ∨ G = G ⊙ F` for all filters.
    pub filter_law: bool,
    pub filter_witness: Option<(Filter, Filter)>,
}

impl FilterProductReport {
    /// The principal law follows from x² ⊙ y² ≤ y ⊙ x, and the two laws are equivalent.
    pub fn passed(&self) -> bool {
        (!self.satisfies_61 || self.principal_law) && self.principal_law == self.filter_law
    }
}

pub fn check_filter_products(m: &FiniteHoop) -> FilterProductReport {
    let satisfies_61 = check_61(m).is_none();
    let principal_witness = m.elements().flat_map(|a| m.elements().map(move |b| (a, b))).find(|&(a, b)| {
        let fa = principal_filter(m, a).elements();
        let fb = principal_filter(m, b).elements();
        let ab = set_product(m, fa, fb);
        let ba = set_product(m, fb, fa);
        let fab = principal_filter(m, m.mul(a, b)).elements();
        let fba = principal_filter(m, m.mul(b, a)).elements();
        !(ab == fab && fab == fba && fba == ba)
    });
    let filters = all_filters(m);
    let filter_witness = filters
        .iter()
        .flat_map(|&f| filters.iter().map(move |&g| (f, g)))
        .find(|&(f, g)| {
            let fg = set_product(m, f.elements(), g.elements());
            let gf = set_product(m, g.elements(), f.elements());
            let join = filter_join(m, f, g).elements();
            !(fg == join && join == gf)
        });
    FilterProductReport {
        satisfies_61,
        principal_law: principal_witness.is_none(),
        principal_witness,
        filter_law: filter_witness.is_none(),
        filter_witness,
    }
}
