//! Identity checkers. Each verifier returns a report with one entry per
//! checked instance; comparisons are exact.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler::{
    chi_a, chi_a_enumerated, chi_k_recursive, chi_point, reduce_product, zeta_cellwise, zeta_direct,
    zeta_point_by_types, zeta_virtual, Limits,
};
use crate::group::{build_group, FiniteGroup, Subgroup};
use crate::presentation::{count_homs_into, for_each_hom, parse_presentation, FgPresentation};
use crate::series::{format_rational, integer, rational, RationalSeries};
use crate::space::{Embedding, FiniteGSet, VirtualGSpace};
use crate::wreath::{centralizer_order_by_type, wreath_group};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub desc: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub instances: Vec<Instance>,
    pub overall: Status,
}

impl VerificationReport {
    pub fn new(identity: &str, instances: Vec<Instance>) -> Self {
        let overall = Status::of(instances.iter().all(|i| i.status == Status::Pass));
        VerificationReport { identity: identity.to_string(), instances, overall }
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    /// Concatenates the instances of several reports.
    pub fn merge(identity: &str, reports: impl IntoIterator<Item = VerificationReport>) -> Self {
        VerificationReport::new(identity, reports.into_iter().flat_map(|r| r.instances).collect())
    }
}

fn instance(desc: impl Into<String>, ok: bool, detail: impl Into<String>) -> Instance {
    Instance { desc: desc.into(), status: Status::of(ok), detail: detail.into() }
}

fn errored(desc: impl Into<String>, e: &Error) -> Instance {
    instance(desc, false, format!("error: {e}"))
}

/// Exact comparison of two series, reporting the first differing
/// coefficient.
pub fn compare_series(desc: impl Into<String>, lhs: &RationalSeries, rhs: &RationalSeries) -> Instance {
    match lhs.first_difference(rhs) {
        None => instance(desc, true, format!("both sides {lhs}")),
        Some(i) => instance(
            desc,
            false,
            format!(
                "first difference at t^{i}: lhs {}, rhs {}",
                format_rational(lhs.coeff(i)),
                format_rational(rhs.coeff(i))
            ),
        ),
    }
}

fn compare_values(desc: impl Into<String>, lhs: &BigRational, rhs: &BigRational) -> Instance {
    let (l, r) = (format_rational(lhs), format_rational(rhs));
    if lhs == rhs {
        instance(desc, true, format!("both sides {l}"))
    } else {
        instance(desc, false, format!("lhs {l}, rhs {r}"))
    }
}

fn from_result(desc: String, r: Result<Instance>) -> Instance {
    r.unwrap_or_else(|e| errored(desc, &e))
}

/// `Σ χ(S^n X) t^n = (1 - t)^(-χ(X))` for a space over the trivial group.
pub fn verify_macdonald(x: &VirtualGSpace, order: usize, limits: &Limits) -> VerificationReport {
    let z = FgPresentation::free_abelian(1);
    let chi = x.euler();
    let rhs = RationalSeries::one_minus_power(1, order).pow_rational(&integer(-chi)).expect("constant term 1");
    let mut out = Vec::new();
    for (engine, result) in [
        ("direct", zeta_virtual(x, &z, order, limits)),
        ("cellwise", zeta_cellwise(x, &z, order, limits)),
    ] {
        let desc = format!("chi = {chi}, N = {order}, {engine}");
        out.push(match result {
            Ok(lhs) => compare_series(desc, &lhs, &rhs),
            Err(e) => errored(desc, &e),
        });
    }
    VerificationReport::new("macdonald", out)
}

pub fn macdonald_catalog(order: usize, limits: &Limits) -> VerificationReport {
    let e = Subgroup::full(&FiniteGroup::trivial());
    VerificationReport::merge(
        "macdonald",
        (-3..=3).map(|chi| verify_macdonald(&VirtualGSpace::points(&e, chi), order, limits)),
    )
}

/// `|W|` for the orbit `H/K`, counted over homomorphisms and over cosets.
fn incidence_counts(h: &Subgroup, k: &Subgroup, a: &FgPresentation, limits: &Limits) -> Result<(u128, u128)> {
    let g = h.parent().clone();
    let orbit = VirtualGSpace::orbit(h, k)?;
    let mut by_homs: u128 = 0;
    for_each_hom(a, h, limits.budget, &mut |images| by_homs += orbit.fixed_euler_gens(images) as u128)?;
    let mut by_cosets: u128 = 0;
    let mut seen = vec![false; g.order()];
    for &s in h.elements() {
        if seen[s] {
            continue;
        }
        for &kk in k.elements() {
            seen[g.mul(s, kk)] = true;
        }
        by_cosets += count_homs_into(a, &k.conjugate_by(s), limits.budget)?;
    }
    Ok((by_homs, by_cosets))
}

/// `χ^(A)(ind_G^H Z, H) = χ^(A)(Z, G)` along a chain `G = chain[0] ⊆ ..`
/// of subgroups of one parent, with the incidence count oracle on every
/// cell and transitivity of induction through standalone embeddings.
pub fn verify_induction(z: &VirtualGSpace, chain: &[Subgroup], a: &FgPresentation, limits: &Limits) -> VerificationReport {
    let mut out = Vec::new();
    let name = |s: &Subgroup| format!("order {}", s.order());
    let Some(first) = chain.first() else {
        return VerificationReport::new("induction", vec![instance("empty chain", false, "no groups given")]);
    };
    if z.acting() != first {
        return VerificationReport::new(
            "induction",
            vec![instance("chain", false, "the space does not live over the first group of the chain")],
        );
    }
    let base = chi_a(z, a, limits);
    for h in &chain[1..] {
        let desc = format!("{a}: {} -> {}", name(first), name(h));
        out.push(from_result(desc.clone(), (|| {
            let ind = z.induce_within(h)?;
            let lhs = chi_a(&ind, a, limits)?.0;
            let rhs = base.as_ref().map_err(|e| Error::Hypothesis(e.to_string()))?.0.clone();
            Ok(compare_values(desc, &lhs.0, &rhs.0))
        })()));
        for cell in z.cells() {
            let desc = format!("{a}: incidence count for H/K, |H| = {}, |K| = {}", h.order(), cell.stabilizer.order());
            out.push(from_result(desc.clone(), (|| {
                let (by_homs, by_cosets) = incidence_counts(h, &cell.stabilizer, a, limits)?;
                let index = (h.order() / cell.stabilizer.order()) as u128;
                let direct = index * count_homs_into(a, &cell.stabilizer, limits.budget)?;
                let chi_orbit = chi_a(&VirtualGSpace::orbit(h, &cell.stabilizer)?, a, limits)?.0;
                let chi_times_h = &chi_orbit.0 * integer(h.order() as i64);
                let ok = by_homs == by_cosets && by_cosets == direct && chi_times_h == integer(by_homs as i64);
                Ok(instance(
                    desc,
                    ok,
                    format!(
                        "|W| = {by_homs} over homomorphisms, {by_cosets} over cosets, |H/K||Hom(A,K)| = {direct}, |H| chi = {}",
                        format_rational(&chi_times_h)
                    ),
                ))
            })()));
        }
    }
    if chain.len() >= 3 {
        let desc = format!("transitivity {} -> {} -> {}", name(&chain[0]), name(&chain[1]), name(&chain[2]));
        out.push(from_result(desc.clone(), (|| {
            let local = |s: &Subgroup| Embedding::inclusion(s);
            let (i0, i1, i2) = (local(&chain[0]), local(&chain[1]), local(&chain[2]));
            let step = |from: &Embedding, to: &Embedding| {
                let map = from
                    .map
                    .iter()
                    .map(|x| to.map.binary_search(x).map_err(|_| Error::NotSubgroup("chain is not increasing".into())))
                    .collect::<Result<Vec<_>>>()?;
                Embedding::new(&from.source, &to.source, map)
            };
            let (e01, e12, e02) = (step(&i0, &i1)?, step(&i1, &i2)?, step(&i0, &i2)?);
            let zl = z.pull_back(&i0)?;
            let two = zl.induce(&e01)?.induce(&e12)?;
            let one = zl.induce(&e02)?;
            let (c2, c1) = (chi_a(&two, a, limits)?.0, chi_a(&one, a, limits)?.0);
            Ok(instance(desc, two == one && c1 == c2, format!("both chi = {c1}, cell lists equal: {}", two == one)))
        })()));
    }
    VerificationReport::new("induction", out)
}

/// Chains `Z_2 ⊂ Z_4`, `Z_2 ⊂ S_3`, `S_2 ⊂ S_3 ⊂ S_4`, spaces `pt`, a
/// free orbit and a two-orbit space, `A ∈ {Z^2, Z_2, Z × Z_2}`.
pub fn induction_catalog(limits: &Limits) -> Result<VerificationReport> {
    let z4 = build_group("cyclic:4")?;
    let s3 = build_group("symmetric:3")?;
    let s4 = build_group("symmetric:4")?;
    let s4w = s4.wreath().expect("symmetric groups are wreath products");
    let perm = |p: Vec<usize>| {
        s4w.encode(&crate::wreath::WreathElement { g_vector: vec![0; p.len()], perm: p })
    };
    let t01 = perm(vec![1, 0, 2, 3])?;
    let c012 = perm(vec![1, 2, 0, 3])?;
    let chains = vec![
        ("Z2 < Z4", vec![Subgroup::generated(&z4, &[2])?, Subgroup::full(&z4)]),
        ("Z2 < S3", vec![Subgroup::generated(&s3, &[1])?, Subgroup::full(&s3)]),
        (
            "S2 < S3 < S4",
            vec![Subgroup::generated(&s4, &[t01])?, Subgroup::generated(&s4, &[t01, c012])?, Subgroup::full(&s4)],
        ),
    ];
    let presentations = ["free-abelian:2", "cyclic:2", "product(free-abelian:1,cyclic:2)"];
    let mut reports = Vec::new();
    for (label, chain) in &chains {
        let g = &chain[0];
        let spaces = vec![
            ("pt", VirtualGSpace::point(g)),
            ("free orbit", VirtualGSpace::free(g)),
            ("pt + free orbit", VirtualGSpace::point(g).disjoint_union(&VirtualGSpace::free(g))?),
        ];
        for (sname, z) in &spaces {
            for spec in presentations {
                let a = parse_presentation(spec)?;
                let mut r = verify_induction(z, chain, &a, limits);
                for i in &mut r.instances {
                    i.desc = format!("{label}, Z = {sname}, {}", i.desc);
                }
                reports.push(r);
            }
        }
    }
    Ok(VerificationReport::merge("induction", reports))
}

/// `1 + Σ χ^(k)(pt, G_n) t^n = tamanoi_product(k, N)^(-χ^(k)(pt, G))`.
pub fn verify_tamanoi(g: &Arc<FiniteGroup>, k: usize, order: usize, limits: &Limits) -> VerificationReport {
    let desc = |what: &str| format!("G = {}, k = {k}, N = {order}, {what}", g.label());
    let rhs = (|| {
        let chi = chi_k_recursive(&VirtualGSpace::point_of(g), k);
        RationalSeries::tamanoi_product(k, order)?.pow_rational(&-chi)
    })();
    let rhs = match rhs {
        Ok(r) => r,
        Err(e) => return VerificationReport::new("tamanoi", vec![errored(desc("product side"), &e)]),
    };
    let mut out = Vec::new();
    let lhs = (|| {
        let mut coeffs = vec![BigRational::one()];
        for n in 1..=order {
            let gn = wreath_group(g, n, limits.order_cap)?;
            coeffs.push(chi_k_recursive(&VirtualGSpace::point_of(&gn), k));
        }
        Ok(RationalSeries::new(coeffs))
    })();
    out.push(match lhs {
        Ok(l) => compare_series(desc("class recursion in G_n"), &l, &rhs),
        Err(e) => errored(desc("class recursion in G_n"), &e),
    });
    out.push(match zeta_point_by_types(g, k, order) {
        Ok(l) => compare_series(desc("type census"), &l, &rhs),
        Err(e) => errored(desc("type census"), &e),
    });
    VerificationReport::new("tamanoi", out)
}

pub fn tamanoi_catalog(order: usize, limits: &Limits) -> Result<VerificationReport> {
    let mut reports = Vec::new();
    for spec in ["trivial", "cyclic:2", "cyclic:3", "product(cyclic:2,cyclic:2)", "symmetric:3"] {
        let g = build_group(spec)?;
        for k in 0..=2 {
            reports.push(verify_tamanoi(&g, k, order, limits));
        }
    }
    Ok(VerificationReport::merge("tamanoi", reports))
}

/// `ζ^(A)_(Z,{e}) = (ζ^(A)_(pt,{e}))^χ(Z)`.
pub fn verify_bryan_fulman(x: &VirtualGSpace, a: &FgPresentation, order: usize, limits: &Limits) -> VerificationReport {
    let chi = x.euler();
    let desc = |what: &str| format!("A = {a}, chi = {chi}, N = {order}, {what}");
    let e = FiniteGroup::trivial();
    let rhs = zeta_direct(&FiniteGSet::point(&e), a, order, limits).and_then(|(s, _)| s.pow_int(chi));
    let rhs = match rhs {
        Ok(r) => r,
        Err(err) => return VerificationReport::new("bryan-fulman", vec![errored(desc("point series"), &err)]),
    };
    let mut out = Vec::new();
    for (what, lhs) in [("direct", zeta_virtual(x, a, order, limits)), ("cellwise", zeta_cellwise(x, a, order, limits))]
    {
        out.push(match lhs {
            Ok(l) => compare_series(desc(what), &l, &rhs),
            Err(err) => errored(desc(what), &err),
        });
    }
    VerificationReport::new("bryan-fulman", out)
}

pub fn bryan_fulman_catalog(order: usize, limits: &Limits) -> Result<VerificationReport> {
    let e = Subgroup::full(&FiniteGroup::trivial());
    let mut reports = Vec::new();
    for spec in ["cyclic:2", "product(free-abelian:1,cyclic:2)", "free-abelian:2"] {
        let a = parse_presentation(spec)?;
        for chi in -2..=3 {
            reports.push(verify_bryan_fulman(&VirtualGSpace::points(&e, chi), &a, order, limits));
        }
    }
    Ok(VerificationReport::merge("bryan-fulman", reports))
}

/// Conjugation-orbit reduction against direct enumeration for
/// `A = A_1 × A_2`.
pub fn verify_prop_product(
    x: &VirtualGSpace,
    a1: &FgPresentation,
    a2: &FgPresentation,
    limits: &Limits,
) -> VerificationReport {
    let a = FgPresentation::product(a1, a2);
    let desc = format!("G = {}, chi(X) = {}, A = {a}", x.group().label(), x.euler());
    let r = (|| {
        let lhs = reduce_product(x, a1, a2, limits)?;
        let rhs = chi_a_enumerated(x, &a, limits.budget)?;
        Ok(compare_values(desc.clone(), &lhs, &rhs))
    })();
    VerificationReport::new("prop-product", vec![from_result(desc, r)])
}

pub fn prop_product_catalog(limits: &Limits) -> Result<VerificationReport> {
    let z = FgPresentation::free_abelian(1);
    let s3 = build_group("symmetric:3")?;
    let z2 = build_group("cyclic:2")?;
    let mut reports = vec![
        verify_prop_product(&VirtualGSpace::point_of(&s3), &z, &z, limits),
        verify_prop_product(&VirtualGSpace::point_of(&z2), &z, &FgPresentation::cyclic(2), limits),
    ];
    let full = Subgroup::full(&s3);
    let mixed = VirtualGSpace::orbit(&full, &Subgroup::generated(&s3, &[1])?)?.disjoint_union(&VirtualGSpace::free(&full))?;
    reports.push(verify_prop_product(&mixed, &z, &FgPresentation::cyclic(2), limits));
    reports.push(verify_prop_product(&mixed, &FgPresentation::cyclic(2), &FgPresentation::trivial(), limits));
    Ok(VerificationReport::merge("prop-product", reports))
}

/// `χ^(k)(K'/K', K') = r^k χ^(k)(K/K, K)` for `K' = K<a>` with `a`
/// commuting with `K`, `r` minimal with `a^r ∈ K` and `<a> ∩ K = <a^r>`.
pub fn verify_lemma3(kprime: &Arc<FiniteGroup>, k: &Subgroup, a: usize, kk: usize, limits: &Limits) -> VerificationReport {
    let desc = format!("K' = {}, |K| = {}, a = {a}, k = {kk}", kprime.label(), k.order());
    let r = (|| {
        kprime.check_element(a)?;
        if !Arc::ptr_eq(k.parent(), kprime) {
            return Err(Error::Hypothesis("K is not a subgroup of K'".into()));
        }
        if !k.elements().iter().all(|&x| kprime.commute(x, a)) {
            return Err(Error::Hypothesis("a does not commute with K".into()));
        }
        let mut r = 1;
        let mut p = a;
        while !k.contains(p) {
            p = kprime.mul(p, a);
            r += 1;
        }
        let cyc = Subgroup::generated(kprime, &[a])?;
        let meet: Vec<usize> = cyc.elements().iter().copied().filter(|&x| k.contains(x)).collect();
        if meet != Subgroup::generated(kprime, &[p])?.elements() {
            return Err(Error::Hypothesis("<a> ∩ K is not generated by a^r".into()));
        }
        let mut gens = k.generators().to_vec();
        gens.push(a);
        if Subgroup::generated(kprime, &gens)?.order() != kprime.order() {
            return Err(Error::Hypothesis("K and a do not generate K'".into()));
        }
        let zk = FgPresentation::free_abelian(kk + 1);
        let lhs = chi_point(kprime, &zk, limits.budget)?;
        let (kg, _) = k.to_group();
        let rhs = chi_point(&kg, &zk, limits.budget)? * BigRational::from_integer(BigInt::from(r).pow(kk as u32));
        Ok(compare_values(format!("{desc}, r = {r}"), &lhs, &rhs))
    })();
    VerificationReport::new("lemma3", vec![from_result(desc, r)])
}

pub fn lemma3_catalog(limits: &Limits) -> Result<VerificationReport> {
    let z4 = build_group("cyclic:4")?;
    let v4 = build_group("product(cyclic:2,cyclic:2)")?;
    let mut reports = Vec::new();
    for kk in 0..=2 {
        reports.push(verify_lemma3(&z4, &Subgroup::generated(&z4, &[2])?, 1, kk, limits));
        // (1,0) is index 2, (0,1) is index 1
        reports.push(verify_lemma3(&v4, &Subgroup::generated(&v4, &[2])?, 1, kk, limits));
    }
    Ok(VerificationReport::merge("lemma3", reports))
}

/// The four one-point series for `A ∈ {Z_2, Z × Z_2}` over `{e}` and
/// `Z_2`, checked against their expected low-order coefficients, and the
/// failure of `ζ^(A)_(pt,Z_2) = (ζ^(A)_(pt,{e}))^(χ^(A)(pt,Z_2))`.
pub fn verify_counterexamples(order: usize, limits: &Limits) -> VerificationReport {
    let mut out = Vec::new();
    let r = (|| {
        let e = FiniteGroup::trivial();
        let z2 = build_group("cyclic:2")?;
        let cases = [
            ("cyclic:2", vec![integer(1), integer(1), integer(1)], vec![integer(1), integer(1), rational(3, 4)]),
            ("product(free-abelian:1,cyclic:2)", vec![integer(1), integer(1), integer(2)], vec![integer(1), integer(2), integer(4)]),
        ];
        let mut out = Vec::new();
        for (spec, expect_e, expect_z2) in cases {
            let a = parse_presentation(spec)?;
            let base = zeta_direct(&FiniteGSet::point(&e), &a, order, limits)?.0;
            let over = zeta_direct(&FiniteGSet::point(&z2), &a, order, limits)?.0;
            let m = order.min(2);
            let want_e = RationalSeries::new(expect_e[..=m].to_vec());
            let want_z2 = RationalSeries::new(expect_z2[..=m].to_vec());
            out.push(compare_series(format!("A = {a}, G = trivial"), &base.truncate(m), &want_e));
            out.push(compare_series(format!("A = {a}, G = cyclic:2"), &over.truncate(m), &want_z2));
            let chi = chi_point(&z2, &a, limits.budget)?;
            let predicted = base.pow_rational(&chi)?;
            let desc = format!("A = {a}: series over cyclic:2 differs from the trivial-group series to the power {}", format_rational(&chi));
            out.push(match over.first_difference(&predicted) {
                Some(i) => instance(
                    desc,
                    true,
                    format!(
                        "first difference at t^{i}: {} vs {}",
                        format_rational(over.coeff(i)),
                        format_rational(predicted.coeff(i))
                    ),
                ),
                None => instance(desc, false, format!("series agree up to t^{order}")),
            });
        }
        Ok(out)
    })();
    match r {
        Ok(v) => out.extend(v),
        Err(e) => out.push(errored("counterexample series", &e)),
    }
    VerificationReport::new("counterexamples", out)
}

/// Brute-force conjugacy in `G_n` against the type census.
pub fn verify_conjugacy_types(g: &Arc<FiniteGroup>, n: usize, limits: &Limits) -> VerificationReport {
    let desc = |what: &str| format!("G = {}, n = {n}, {what}", g.label());
    let r = (|| {
        let gn = wreath_group(g, n, limits.order_cap)?;
        let repr = gn.wreath().expect("wreath group");
        let full = Subgroup::full(&gn);
        let classes = full.conjugacy_classes();
        let census = crate::wreath::conjugacy_classes_by_type(g, n)?;
        let mut out = Vec::new();
        let mut types_seen = std::collections::BTreeSet::new();
        let mut uniform = true;
        for c in &classes {
            let t = repr.type_of_index(c.representative);
            uniform &= c.members.iter().all(|&m| repr.type_of_index(m) == t);
            types_seen.insert(t);
        }
        let distinct = types_seen.len() == classes.len();
        out.push(instance(
            desc("classes versus types"),
            uniform && distinct && classes.len() == census.len(),
            format!("{} classes, {} distinct types among them, {} types in the census", classes.len(), types_seen.len(), census.len()),
        ));
        let mut mismatches = Vec::new();
        for c in &classes {
            let t = repr.type_of_index(c.representative);
            let brute = full.centralizer(c.representative).order() as u128;
            let formula = centralizer_order_by_type(&t, g)?;
            if brute != formula {
                mismatches.push(format!("class of {}: {brute} vs {formula}", c.representative));
            }
        }
        out.push(instance(
            desc("centralizer orders"),
            mismatches.is_empty(),
            if mismatches.is_empty() { format!("{} classes agree", classes.len()) } else { mismatches.join("; ") },
        ));
        let total: u128 = census.iter().map(|(_, s)| s).sum();
        out.push(instance(
            desc("class sizes"),
            total == gn.order() as u128,
            format!("sizes sum to {total}, |G_n| = {}", gn.order()),
        ));
        Ok(out)
    })();
    let instances = r.unwrap_or_else(|e| vec![errored(desc("census"), &e)]);
    VerificationReport::new("conjugacy-types", instances)
}

pub fn conjugacy_types_catalog(limits: &Limits) -> Result<VerificationReport> {
    let mut reports = Vec::new();
    for (spec, n) in [("trivial", 3), ("cyclic:2", 2), ("cyclic:2", 3), ("cyclic:3", 2), ("symmetric:3", 2)] {
        reports.push(verify_conjugacy_types(&build_group(spec)?, n, limits));
    }
    Ok(VerificationReport::merge("conjugacy-types", reports))
}

/// `zeta_direct = zeta_cellwise` on a finite `G`-set.
pub fn verify_engines(x: &FiniteGSet, a: &FgPresentation, order: usize, limits: &Limits) -> Instance {
    let desc = format!("G = {}, |X| = {}, A = {a}, N = {order}", x.group().label(), x.size());
    from_result(desc.clone(), (|| {
        let direct = zeta_direct(x, a, order, limits)?.0;
        let cellwise = zeta_cellwise(&x.to_virtual(), a, order, limits)?;
        Ok(compare_series(desc, &direct, &cellwise))
    })())
}

pub fn engines_catalog(order: usize, limits: &Limits) -> Result<VerificationReport> {
    let mut out = Vec::new();
    for spec in ["cyclic:2", "symmetric:3"] {
        let g = build_group(spec)?;
        let k = Subgroup::generated(&g, &[1])?;
        let mixed = FiniteGSet::point(&g).disjoint_union(&FiniteGSet::coset_space(&g, &k)?)?;
        let sets = [FiniteGSet::point(&g), FiniteGSet::free(&g), mixed];
        for x in &sets {
            for a in ["free-abelian:1", "free-abelian:2", "cyclic:2"] {
                out.push(verify_engines(x, &parse_presentation(a)?, order, limits));
            }
        }
    }
    Ok(VerificationReport::new("engines", out))
}

/// `χ^(A)` against its value with every homomorphism listed, `k`-fold
/// recursion against `χ^(Z^(k+1))`.
pub fn verify_definitions(x: &VirtualGSpace, k: usize, limits: &Limits) -> Instance {
    let desc = format!("G = {}, chi(X) = {}, k = {k}", x.group().label(), x.euler());
    from_result(desc.clone(), (|| {
        let a = FgPresentation::free_abelian(k + 1);
        let lhs = chi_a_enumerated(x, &a, limits.budget)?;
        let rhs = chi_k_recursive(x, k);
        let auto = chi_a(x, &a, limits)?.0;
        let mut inst = compare_values(desc.clone(), &lhs, &rhs);
        if auto.0 != lhs {
            inst = instance(desc, false, format!("routed value {auto} differs from enumeration {}", format_rational(&lhs)));
        }
        Ok(inst)
    })())
}

/// The spaces used by the definition-equivalence check: for each catalog
/// group, a point, a free orbit, each proper cyclic orbit and a virtual
/// mixture with a negative cell.
pub fn space_catalog() -> Result<Vec<VirtualGSpace>> {
    let mut out = Vec::new();
    for spec in ["trivial", "cyclic:2", "cyclic:3", "cyclic:4", "product(cyclic:2,cyclic:2)", "symmetric:3", "dihedral:4"] {
        let g = build_group(spec)?;
        let full = Subgroup::full(&g);
        out.push(VirtualGSpace::point(&full));
        out.push(VirtualGSpace::free(&full));
        let mut seen = Vec::new();
        for x in g.elements() {
            let k = Subgroup::generated(&g, &[x])?;
            if k.order() > 1 && k.order() < g.order() && !seen.contains(&k) {
                out.push(VirtualGSpace::orbit(&full, &k)?);
                seen.push(k);
            }
        }
        let sphere = crate::space::Cell { dim: 1, stabilizer: Subgroup::trivial(&g), mult: 2 };
        let cells = vec![crate::space::Cell { dim: 0, stabilizer: full.clone(), mult: 3 }, sphere];
        out.push(VirtualGSpace::new(full.clone(), cells)?);
    }
    Ok(out)
}

pub fn definitions_catalog(limits: &Limits) -> Result<VerificationReport> {
    let mut out = Vec::new();
    for x in space_catalog()? {
        for k in 0..=2 {
            out.push(verify_definitions(&x, k, limits));
        }
    }
    Ok(VerificationReport::new("definitions", out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_overall() {
        let r = VerificationReport::new("x", vec![instance("a", true, ""), instance("b", false, "")]);
        assert!(!r.passed());
        assert!(VerificationReport::new("x", vec![instance("a", true, "")]).passed());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["overall"], "fail");
        assert_eq!(json["instances"][0]["status"], "pass");
    }

    #[test]
    fn failing_series_report_first_coefficient() {
        let i = compare_series("s", &RationalSeries::from_ints(&[1, 2, 5]), &RationalSeries::from_ints(&[1, 2, 4]));
        assert_eq!(i.status, Status::Fail);
        assert_eq!(i.detail, "first difference at t^2: lhs 5, rhs 4");
    }

    #[test]
    fn small_verifiers() {
        let lim = Limits::default();
        let e = Subgroup::full(&FiniteGroup::trivial());
        assert!(verify_macdonald(&VirtualGSpace::points(&e, -1), 5, &lim).passed());
        assert!(verify_tamanoi(&build_group("cyclic:2").unwrap(), 1, 3, &lim).passed());
        assert!(verify_counterexamples(2, &lim).passed());
        assert!(verify_conjugacy_types(&build_group("cyclic:2").unwrap(), 2, &lim).passed());
        assert!(lemma3_catalog(&lim).unwrap().passed());
        assert!(prop_product_catalog(&lim).unwrap().passed());
    }

    #[test]
    fn lemma3_rejects_bad_hypotheses() {
        let lim = Limits::default();
        let s3 = build_group("symmetric:3").unwrap();
        let k = Subgroup::generated(&s3, &[3]).unwrap();
        let r = verify_lemma3(&s3, &k, 1, 1, &lim);
        assert!(!r.passed());
        assert!(r.instances[0].detail.contains("hypothesis"));
    }
}
