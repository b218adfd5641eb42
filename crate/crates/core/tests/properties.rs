use std::sync::OnceLock;

use proptest::prelude::*;

use hoopkit::algebra::derive_arrows;
use hoopkit::cones::{self, ConeElement, ConeModel, OrderMode, SampleProperty};
use hoopkit::enumerate::{are_isomorphic, canonical_form, enumerate_hoops, EnumOptions};
use hoopkit::filters::{
    all_filters, class_structure, filter_join, generated_filter, is_prime, principal_filter, Side,
};
use hoopkit::holland::{build_representation, verify_representation};
use hoopkit::named;
use hoopkit::normalvalued::{check_claim, normal_by_conjugates, ClaimId};
use hoopkit::rdp::verify_rdp;
use hoopkit::{ElemSet, FiniteHoop};

fn corpus() -> &'static [FiniteHoop] {
    static CORPUS: OnceLock<Vec<FiniteHoop>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut all: Vec<FiniteHoop> = (1..=5)
            .flat_map(|n| enumerate_hoops(&EnumOptions::new(n)).unwrap())
            .collect();
        let small = [named::b2(), named::g3(), named::l3()];
        for a in &small {
            for b in &small {
                all.push(cones::ordinal_sum(a, b).unwrap());
                all.push(cones::direct_product(a, b).unwrap());
            }
        }
        all.push(named::b4());
        all
    })
}

/// An algebra from the corpus together with a random relabelling of it.
fn relabelled() -> impl Strategy<Value = (FiniteHoop, FiniteHoop)> {
    (0..corpus().len()).prop_flat_map(|i| {
        let m = corpus()[i].clone();
        let n = m.size();
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |perm| (m.clone(), m.relabel(&perm)))
    })
}

fn basic_relabelled() -> impl Strategy<Value = FiniteHoop> {
    relabelled().prop_filter_map("basic", |(_, r)| r.flags().basic.then_some(r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn relabelling_preserves_class_and_flags((m, r) in relabelled()) {
        prop_assert_eq!(canonical_form(&m), canonical_form(&r));
        prop_assert!(are_isomorphic(&m, &r));
        prop_assert_eq!(m.flags(), r.flags());
    }

    #[test]
    fn product_below_meet_below_arguments((_, m) in relabelled()) {
        for x in m.elements() {
            for y in m.elements() {
                let meet = m.meet(x, y);
                prop_assert!(m.leq(m.mul(x, y), meet));
                prop_assert!(m.leq(meet, x) && m.leq(meet, y));
                prop_assert!(m.elements().all(|z| !(m.leq(z, x) && m.leq(z, y)) || m.leq(z, meet)));
            }
        }
    }

    #[test]
    fn arrows_are_the_greatest_residua((_, m) in relabelled()) {
        let n = m.size();
        let leq: Vec<bool> = (0..n * n).map(|i| m.leq(i / n, i % n)).collect();
        let (prod, rimp, limp) = m.raw_tables();
        let (r, l) = derive_arrows(n, prod, &leq).unwrap();
        prop_assert_eq!(r.as_slice(), rimp);
        prop_assert_eq!(l.as_slice(), limp);
    }

    #[test]
    fn filters_are_principal_and_joins_are_least((_, m) in relabelled()) {
        let filters = all_filters(&m);
        for &f in &filters {
            prop_assert_eq!(generated_filter(&m, f.elements()), f);
            let least = f.elements().iter().find(|&a| f.elements().iter().all(|b| m.leq(a, b)));
            prop_assert!(least.is_some(), "{:?} has no least element", f.elements());
            prop_assert_eq!(principal_filter(&m, least.unwrap()), f);
            for &g in &filters {
                let j = filter_join(&m, f, g);
                prop_assert!(f.elements().is_subset(j.elements()) && g.elements().is_subset(j.elements()));
                for &h in &filters {
                    if f.elements().union(g.elements()).is_subset(h.elements()) {
                        prop_assert!(j.elements().is_subset(h.elements()));
                    }
                }
            }
        }
    }

    #[test]
    fn normality_by_conjugates_matches_cosets((_, m) in relabelled()) {
        for f in all_filters(&m) {
            prop_assert!(normal_by_conjugates(&m, f).is_ok());
        }
    }

    #[test]
    fn filters_above_a_prime_form_a_chain(m in basic_relabelled()) {
        let filters = all_filters(&m);
        for &p in filters.iter().filter(|&&p| p.is_proper(&m) && is_prime(&m, p)) {
            let above: Vec<ElemSet> = filters
                .iter()
                .map(|f| f.elements())
                .filter(|f| p.elements().is_subset(*f))
                .collect();
            for a in &above {
                for b in &above {
                    prop_assert!(a.is_subset(*b) || b.is_subset(*a));
                }
            }
            for side in [Side::Right, Side::Left] {
                prop_assert!(class_structure(&m, p, side).unwrap().is_total());
            }
        }
    }

    #[test]
    fn catalogue_never_fails((_, m) in relabelled()) {
        for id in ClaimId::ALL {
            let r = check_claim(&m, id, m.size()).unwrap();
            prop_assert!(!r.is_fail(), "{id}: {r:?}");
        }
    }

    #[test]
    fn holland_representation_verifies(m in basic_relabelled()) {
        let rep = build_representation(&m).unwrap();
        let report = verify_representation(&rep);
        prop_assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn cone_residuation_and_prelinearity(
        k in 1usize..=4,
        lex in any::<bool>(),
        raw in proptest::collection::vec(-20i64..=20, 12),
    ) {
        let mode = if lex { OrderMode::Lex } else { OrderMode::Pointwise };
        let model = ConeModel::new(k, mode);
        // Lex elements may have positive coordinates after a negative leading one.
        let pick = |i: usize| {
            let mut v = raw[i * 4..i * 4 + k].to_vec();
            v[0] = -v[0].abs();
            if !lex || v[0] == 0 {
                v.iter_mut().for_each(|c| *c = -c.abs());
            }
            ConeElement(v)
        };
        let (x, y, z) = (pick(0), pick(1), pick(2));
        prop_assert!(model.contains(&x) && model.contains(&y) && model.contains(&z));
        for p in [SampleProperty::Residuation, SampleProperty::Prelinearity, SampleProperty::Eq61, SampleProperty::Prop31] {
            prop_assert_eq!(model.holds(p, &x, &y, &z, 1), Some(true), "{:?}", p);
        }
    }
}

#[test]
fn ordinal_sums_keep_rdp_and_eq64() {
    let small = [named::b2(), named::g3(), named::l3()];
    for a in &small {
        for b in &small {
            for m in [cones::ordinal_sum(a, b).unwrap(), cones::ordinal_sum(b, a).unwrap()] {
                assert!(verify_rdp(&m).passed());
                assert!(check_claim(&m, ClaimId::Eq64, m.size()).unwrap().is_pass());
                assert_eq!(m.size(), a.size() + b.size() - 1);
            }
        }
    }
}

#[test]
fn residual_must_read_a_to_x() {
    // The alternative x → a does not give a right adjoint of multiplication by a.
    let m = named::l3();
    let a = 1;
    let broken = m.elements().any(|x| {
        m.elements().any(|y| m.leq(m.mul(x, a), y) != m.leq(x, m.rimp(y, a)))
    });
    assert!(broken);
    let ok = m.elements().all(|x| {
        m.elements().all(|y| m.leq(m.mul(x, a), y) == m.leq(x, m.rimp(a, y)))
    });
    assert!(ok);
}
