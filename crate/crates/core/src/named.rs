//! Small algebras used throughout the examples and tests.
//!
//! Element indices follow [`make_chain`]: the bottom is `0`, the unit is the last index.

use crate::cones::{direct_product, make_chain, ChainKind};
use crate::{Elem, FiniteHoop};

/// Atoms of [`b4`]: `a = (0, 1)` and `b = (1, 0)`.
pub const B4_A: Elem = 1;
pub const B4_B: Elem = 2;

/// The one-element algebra.
pub fn t1() -> FiniteHoop {
    make_chain(ChainKind::Lukasiewicz, 1).with_name("T1")
}

/// The two-element Boolean chain `{0, 1}`.
pub fn b2() -> FiniteHoop {
    make_chain(ChainKind::Lukasiewicz, 2).with_name("B2")
}

/// Gödel chain `{0, a, 1}` with `a ⊙ a = a`.
pub fn g3() -> FiniteHoop {
    make_chain(ChainKind::Godel, 3).with_name("G3")
}

/// Łukasiewicz chain `{0, a, 1}` with `a ⊙ a = 0`.
pub fn l3() -> FiniteHoop {
    make_chain(ChainKind::Lukasiewicz, 3).with_name("L3")
}

/// `B2 × B2`.
pub fn b4() -> FiniteHoop {
    direct_product(&b2(), &b2())
        .expect("B2 x B2 is a pseudo hoop")
        .with_name("B4")
}
