use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use orbifold_chi::euler::{chi_a, chi_a_enumerated, chi_k_recursive, zeta_cellwise, zeta_direct, Limits};
use orbifold_chi::group::{build_group, direct_product, DEFAULT_ORDER_CAP};
use orbifold_chi::presentation::{count_homs, count_homs_generic, count_homs_into, FgPresentation};
use orbifold_chi::series::{format_rational, parse_rational, RationalSeries};
use orbifold_chi::space::{FiniteGSet, VirtualGSpace};
use orbifold_chi::{FiniteGroup, Subgroup};

const GROUPS: [&str; 7] = [
    "trivial",
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "product(cyclic:2,cyclic:2)",
    "symmetric:3",
    "dihedral:4",
];

fn group() -> impl Strategy<Value = Arc<FiniteGroup>> {
    prop::sample::select(GROUPS.to_vec()).prop_map(|s| build_group(s).unwrap())
}

fn presentation() -> impl Strategy<Value = FgPresentation> {
    prop_oneof![
        (1usize..=3).prop_map(FgPresentation::free_abelian),
        (1usize..=4).prop_map(FgPresentation::cyclic),
        (1usize..=3).prop_map(|m| FgPresentation::product(&FgPresentation::free_abelian(1), &FgPresentation::cyclic(m))),
        (2usize..=3, 2usize..=3)
            .prop_map(|(a, b)| FgPresentation::product(&FgPresentation::cyclic(a), &FgPresentation::cyclic(b))),
    ]
}

fn subgroup_of(g: &Arc<FiniteGroup>) -> impl Strategy<Value = Subgroup> {
    let g = g.clone();
    prop::collection::vec(0..g.order(), 0..=2).prop_map(move |gens| Subgroup::generated(&g, &gens).unwrap())
}

/// A union of up to three orbits `G/K`.
fn gset_over(g: &Arc<FiniteGroup>) -> impl Strategy<Value = FiniteGSet> {
    let g = g.clone();
    prop::collection::vec(subgroup_of(&g), 1..=3).prop_map(move |stabs| {
        stabs
            .iter()
            .map(|k| FiniteGSet::coset_space(&g, k).unwrap())
            .reduce(|a, b| a.disjoint_union(&b).unwrap())
            .unwrap()
    })
}

fn group_and_subgroup() -> impl Strategy<Value = (Arc<FiniteGroup>, Subgroup)> {
    group().prop_flat_map(|g| (Just(g.clone()), subgroup_of(&g)))
}

fn gset() -> impl Strategy<Value = FiniteGSet> {
    group().prop_flat_map(|g| gset_over(&g))
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn series(order: usize) -> impl Strategy<Value = RationalSeries> {
    prop::collection::vec(small_rational(), order + 1).prop_map(RationalSeries::new)
}

/// Series with constant term 1.
fn unit_series(order: usize) -> impl Strategy<Value = RationalSeries> {
    prop::collection::vec(small_rational(), order).prop_map(|mut c| {
        c.insert(0, BigRational::from_integer(1.into()));
        RationalSeries::new(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_multiplication_is_associative_and_commutative(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series(6)) {
        let inv = a.inverse().unwrap();
        prop_assert_eq!(a.mul(&inv), RationalSeries::one(6));
        prop_assert_eq!(inv.inverse().unwrap(), a);
    }

    #[test]
    fn integer_powers_add_exponents(a in unit_series(5), m in -3i64..=3, n in -3i64..=3) {
        let lhs = a.pow_int(m + n).unwrap();
        let rhs = a.pow_int(m).unwrap().mul(&a.pow_int(n).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_powers_agree_with_integer_powers(a in unit_series(5), n in -3i64..=3) {
        let e = BigRational::from_integer(n.into());
        prop_assert_eq!(a.pow_rational(&e).unwrap(), a.pow_int(n).unwrap());
    }

    #[test]
    fn square_root_squares_back(a in unit_series(5)) {
        let half = BigRational::new(1.into(), 2.into());
        let r = a.pow_rational(&half).unwrap();
        prop_assert_eq!(r.mul(&r), a);
    }

    #[test]
    fn rationals_round_trip_through_text(r in small_rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn series_file_round_trip(a in series(4)) {
        prop_assert_eq!(RationalSeries::from_file(&a.to_file()).unwrap(), a);
    }

    #[test]
    fn fast_hom_counts_match_generic_enumeration(g in group(), a in presentation()) {
        let full = Subgroup::full(&g);
        let fast = count_homs_into(&a, &full, u64::MAX).unwrap();
        let generic = count_homs_generic(&a.without_hint(), &full, u64::MAX).unwrap();
        prop_assert_eq!(fast, generic);
    }

    #[test]
    fn hom_counts_multiply_over_direct_products(g in group(), h in group(), a in presentation()) {
        let gh = direct_product(&g, &h, DEFAULT_ORDER_CAP).unwrap();
        let lhs = count_homs(&a, &gh, u64::MAX).unwrap();
        let rhs = count_homs(&a, &g, u64::MAX).unwrap() * count_homs(&a, &h, u64::MAX).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fixed_euler_counts_fixed_points((h, x) in group().prop_flat_map(|g| (subgroup_of(&g), gset_over(&g)))) {
        let brute = (0..x.size())
            .filter(|&p| h.elements().iter().all(|&e| x.act(e, p) == p))
            .count() as i64;
        prop_assert_eq!(x.to_virtual().fixed_euler(&h).unwrap(), brute);
        prop_assert_eq!(x.fixed_count(h.generators()) as i64, brute);
    }

    #[test]
    fn stabilizers_have_orbit_sized_index(x in gset()) {
        let g = x.group();
        let mut total = 0;
        for orbit in x.orbits() {
            let stab = x.stabilizer(orbit[0]);
            prop_assert_eq!(stab.order() * orbit.len(), g.order());
            total += orbit.len();
        }
        prop_assert_eq!(total, x.size());
    }

    #[test]
    fn engines_agree_on_chi(x in gset(), a in presentation()) {
        let v = x.to_virtual();
        let lim = Limits::default();
        let forced = chi_a(&v, &a, &Limits { force_enumeration: true, ..lim }).unwrap().0;
        let routed = chi_a(&v, &a, &lim).unwrap().0;
        prop_assert_eq!(&forced, &routed);
        if let Some(r) = a.free_abelian_rank() {
            if r >= 1 {
                prop_assert_eq!(forced.0, chi_k_recursive(&v, r - 1));
            }
        }
    }

    #[test]
    fn chi_is_additive(x in gset(), a in presentation()) {
        let lim = Limits::default();
        let x1 = x.to_virtual();
        let doubled = x1.disjoint_union(&x1).unwrap();
        let one = chi_a_enumerated(&x1, &a, lim.budget).unwrap();
        let two = chi_a_enumerated(&doubled, &a, lim.budget).unwrap();
        prop_assert_eq!(two, &one + &one);
    }

    #[test]
    fn chi_of_z_counts_orbits(x in gset()) {
        let chi = chi_a(&x.to_virtual(), &FgPresentation::free_abelian(1), &Limits::default()).unwrap().0;
        prop_assert_eq!(chi.0, BigRational::from_integer(x.orbits().len().into()));
    }

    #[test]
    fn induction_preserves_chi((g, k) in group_and_subgroup(), a in presentation()) {
        let lim = Limits::default();
        let z = VirtualGSpace::point(&k).disjoint_union(&VirtualGSpace::free(&k)).unwrap();
        let induced = z.induce_within(&Subgroup::full(&g)).unwrap();
        prop_assert_eq!(chi_a(&induced, &a, &lim).unwrap().0, chi_a(&z, &a, &lim).unwrap().0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn zeta_engines_agree(x in gset(), a in presentation()) {
        prop_assume!(x.size() <= 8);
        let lim = Limits::default();
        let direct = zeta_direct(&x, &a, 2, &lim).unwrap().0;
        let cellwise = zeta_cellwise(&x.to_virtual(), &a, 2, &lim).unwrap();
        prop_assert_eq!(direct, cellwise);
    }
}

#[test]
fn wreath_group_axioms_hold() {
    for spec in ["cyclic:2", "cyclic:3", "symmetric:3"] {
        let g = build_group(spec).unwrap();
        for n in 1..=2 {
            orbifold_chi::wreath::wreath_group(&g, n, DEFAULT_ORDER_CAP).unwrap().verify_axioms().unwrap();
        }
    }
}
