use circsym_core::circulant::{
    build, common_neighbors_closed, common_neighbors_direct, connected_specs, is_edge_transitive, normalize,
    twin_classification, TwinClass,
};
use circsym_core::group::beta_flip;
use circsym_core::zmod::{gcd, symbol_stabilizer, units};
use circsym_core::*;
use proptest::prelude::*;

fn twin_class_of(s: &CirculantSpec) -> TwinClass {
    twin_classification(s).unwrap().variant
}

fn connected_spec() -> impl Strategy<Value = CirculantSpec> {
    (5usize..60, 1usize..60, 1usize..60).prop_filter_map("connected normalizable", |(n, a, b)| {
        let s = normalize(n, a % n, b % n).ok()?;
        s.is_connected().then_some(s)
    })
}

fn half_sum_arc() -> impl Strategy<Value = SubdividedSpec> {
    (2usize..8, 1usize..8, 1usize..4).prop_filter_map("half-sum arc", |(j, i, p)| {
        let base = CirculantSpec::connected(2 * j, i % j, j).ok()?;
        SubdividedSpec::new(base, Arc::J, p).ok()
    })
}

proptest! {
    #[test]
    fn stabilizers_are_closed(spec in connected_spec()) {
        let (n, i, j) = spec.as_tuple();
        let st = symbol_stabilizer(n, i, j).unwrap();
        for set in [&st.h, &st.h_prime] {
            prop_assert!(set.contains(&1) && set.contains(&(n - 1)));
            prop_assert!(set.len() == 2 || set.len() == 4);
            for &a in set.iter() {
                for &b in set.iter() {
                    prop_assert!(set.contains(&(a * b % n)));
                }
            }
        }
        prop_assert!(st.h_prime.iter().all(|t| st.h.contains(t)));
    }

    #[test]
    fn no_nontrivial_unit_fixes_both_generators(spec in connected_spec()) {
        let (n, i, j) = spec.as_tuple();
        for t in units(n).unwrap().elements {
            if t != 1 {
                prop_assert!(!(t * i % n == i && t * j % n == j));
            }
            if t != n - 1 {
                prop_assert!(!(t * i % n == n - i && t * j % n == n - j));
            }
        }
    }

    #[test]
    fn normalize_is_idempotent(n in 4usize..80, a in 1usize..80, b in 1usize..80) {
        if let Ok(s) = normalize(n, a % n, b % n) {
            prop_assert_eq!(normalize(s.n(), s.i(), s.j()).unwrap(), s);
            prop_assert_eq!(s.is_connected(), gcd(gcd(n, s.i()), s.j()) == 1);
        }
    }

    #[test]
    fn closed_form_elements_are_automorphisms(spec in connected_spec()) {
        let spec = GraphSpec::Base(spec);
        let g = spec.build();
        for e in group::group_generators(&spec).unwrap().1 {
            prop_assert!(g.is_automorphism(e.to_perm(&spec).unwrap().as_slice()));
        }
        match closed_form_group(&spec) {
            Ok(group) => {
                prop_assert_eq!(group.order(), group_order(&spec).unwrap());
                for p in group.perms().unwrap() {
                    prop_assert!(g.is_automorphism(p.as_slice()));
                }
            }
            Err(e) => {
                let over_cap = matches!(e, Error::BudgetExceeded { .. }) && spec.vertex_count() > 32;
                prop_assert!(over_cap);
            }
        }
    }

    #[test]
    fn conjugation_law(spec in connected_spec(), s in 0usize..60, k in 0usize..4) {
        let n = spec.n();
        let st = symbol_stabilizer(n, spec.i(), spec.j()).unwrap();
        if twin_class_of(&spec) != TwinClass::TwinFree {
            return Ok(());
        }
        let ctx = GraphSpec::Base(spec);
        let t = st.h[k % st.h.len()];
        let tinv = zmod::Residue::new(t as i64, n).inverse().unwrap().value();
        let s = s % n;
        let lhs = GroupElement::affine(0, tinv)
            .compose(&GroupElement::affine(s, 1), &ctx).unwrap()
            .compose(&GroupElement::affine(0, t), &ctx).unwrap();
        prop_assert_eq!(lhs.to_perm(&ctx).unwrap(), GroupElement::affine(s * tinv % n, 1).to_perm(&ctx).unwrap());
    }

    #[test]
    fn beta_commutes_with_affine(sub in half_sum_arc(), s in 0usize..16, neg in any::<bool>(), a in 0usize..16) {
        let ctx = GraphSpec::Subdivided(sub);
        let m = sub.n();
        let (s, a) = (s % m, a % m);
        let t = if neg { m - 1 } else { 1 };
        let st = GroupElement::affine(s, t);
        let lhs = st.compose(&beta_flip(&sub, a), &ctx).unwrap().to_perm(&ctx).unwrap();
        let rhs = beta_flip(&sub, (s + t * a) % m).compose(&st, &ctx).unwrap().to_perm(&ctx).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn common_neighbors_agree(spec in connected_spec(), a in 0usize..60, b in 0usize..60) {
        if twin_class_of(&spec) != TwinClass::TwinFree {
            return Ok(());
        }
        let n = spec.n();
        let (a, b) = (a % n, b % n);
        if a == b {
            return Ok(());
        }
        let closed = common_neighbors_closed(&spec, a, b).unwrap().map(|r| r.neighbors).unwrap_or_default();
        prop_assert_eq!(closed, common_neighbors_direct(&build(&spec), a, b));
    }
}

#[test]
fn twins_imply_edge_transitive() {
    for s in connected_specs(4, 40) {
        if twin_class_of(&s).has_twins() {
            assert!(is_edge_transitive(&s), "{s}");
        }
    }
}

#[test]
fn extension_is_unique() {
    for sub in subdivided::subdivided_specs(4, 12, 3) {
        let spec = GraphSpec::Subdivided(sub);
        let perms = closed_form_group(&spec).unwrap().perms().unwrap();
        let mut on_base: Vec<Vec<usize>> = perms.iter().map(|p| p.as_slice()[..sub.n()].to_vec()).collect();
        on_base.sort();
        on_base.dedup();
        assert_eq!(on_base.len() as u64, group_order(&spec).unwrap() / kernel_order(&sub), "{spec}");
    }
}

/// Automorphisms fixing every `u_a`: the β-flips for the half-sum arc, nothing else otherwise.
fn kernel_order(sub: &SubdividedSpec) -> u64 {
    match sub.regime() {
        ArcRegime::HalfSumArc => 1 << sub.base().j(),
        ArcRegime::GenericArc => 1,
    }
}
