//! `χ^(A)(X, G)`, its recursive form `χ^(k)`, and the series
//! `ζ^(A)_(X,G)(t) = 1 + Σ_n χ^(A)(X^n, G_n) t^n`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};
use crate::presentation::{count_homs_into, for_each_hom, hom_orbits_into, FgPresentation, DEFAULT_BUDGET};
use crate::series::{format_rational, integer, RationalSeries};
use crate::space::{cartesian_power_set, FiniteGSet, VirtualGSpace};
use crate::wreath::{cycle_centralizer_factor, types_over, wreath_group};

/// An exact rational Euler characteristic, always in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EulerValue(pub BigRational);

impl EulerValue {
    pub fn integer(n: i64) -> Self {
        EulerValue(integer(n))
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl fmt::Display for EulerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Serialize for EulerValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<BigRational> for EulerValue {
    fn from(r: BigRational) -> Self {
        EulerValue(r)
    }
}

/// Which computation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Averaging fixed-point Euler characteristics over `Hom(A, G)`.
    HomEnumeration,
    /// Recursion over conjugacy classes and centralizers.
    ClassRecursion,
    /// Splitting `A = Z × A'` over conjugacy classes.
    ProductReduction,
    /// Orbit counting (`A = Z`).
    OrbitCount,
    /// `|Hom(A, G)|/|G|` per fixed point.
    OnePoint,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::HomEnumeration => "hom-enumeration",
            Engine::ClassRecursion => "class-recursion",
            Engine::ProductReduction => "product-reduction",
            Engine::OrbitCount => "orbit-count",
            Engine::OnePoint => "one-point",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Bound on relator evaluations per enumeration.
    pub budget: u64,
    /// Bound on the order of constructed groups.
    pub order_cap: usize,
    /// Always enumerate homomorphisms, never route to the recursions.
    pub force_enumeration: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { budget: DEFAULT_BUDGET, order_cap: DEFAULT_ORDER_CAP, force_enumeration: false }
    }
}

fn ratio(num: impl Into<BigInt>, den: usize) -> BigRational {
    BigRational::new(num.into(), BigInt::from(den))
}

fn image_key(g: &FiniteGroup, images: &[usize]) -> Vec<usize> {
    let mut key: Vec<usize> = images.iter().copied().filter(|&x| x != g.identity()).collect();
    key.sort_unstable();
    key.dedup();
    key
}

/// `(1/|G|) Σ_{φ ∈ Hom(A,G)} χ(X^<φ(A)>)` by enumeration.
pub fn chi_a_enumerated(x: &VirtualGSpace, a: &FgPresentation, budget: u64) -> Result<BigRational> {
    let g = x.group().clone();
    let mut cache: HashMap<Vec<usize>, i64> = HashMap::new();
    let mut total = BigInt::zero();
    for_each_hom(a, x.acting(), budget, &mut |images| {
        let key = image_key(&g, images);
        let v = *cache.entry(key).or_insert_with_key(|k| x.fixed_euler_gens(k));
        total += v;
    })?;
    Ok(ratio(total, x.acting().order()))
}

/// The same average for an honest `G`-set, counting fixed points directly.
pub fn chi_a_gset(x: &FiniteGSet, a: &FgPresentation, budget: u64) -> Result<BigRational> {
    let g = x.group().clone();
    let full = Subgroup::full(&g);
    let mut cache: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut total = BigInt::zero();
    for_each_hom(a, &full, budget, &mut |images| {
        let key = image_key(&g, images);
        let v = *cache.entry(key).or_insert_with_key(|k| x.fixed_count(k));
        total += v;
    })?;
    Ok(ratio(total, g.order()))
}

/// `χ^(k)`: `χ^(0)(X, G) = χ(X/G)` and
/// `χ^(k)(X, G) = Σ_[g] χ^(k-1)(X^<g>, C(g))`.
pub fn chi_k_recursive(x: &VirtualGSpace, k: usize) -> BigRational {
    integer(chi_k_int(x, k))
}

fn chi_k_int(x: &VirtualGSpace, k: usize) -> i64 {
    if k == 0 || x.cells().is_empty() {
        return x.quotient_euler();
    }
    x.acting()
        .class_reps()
        .into_iter()
        .map(|c| {
            let fixed = x.restrict_to_fixed(c.representative).expect("class representatives lie in the group");
            chi_k_int(&fixed, k - 1)
        })
        .sum()
}

/// `χ^(A)(G/G, G) = |Hom(A, G)|/|G|`.
pub fn chi_point(g: &Arc<FiniteGroup>, a: &FgPresentation, budget: u64) -> Result<BigRational> {
    Ok(ratio(count_homs_into(a, &Subgroup::full(g), budget)?, g.order()))
}

/// `χ^(A_1 × A_2)(X, G) = Σ_[φ] χ^(A_2)(X^<φ(A_1)>, C_G(φ))` over
/// conjugation orbits of `Hom(A_1, G)`.
pub fn reduce_product(
    x: &VirtualGSpace,
    a1: &FgPresentation,
    a2: &FgPresentation,
    limits: &Limits,
) -> Result<BigRational> {
    let reps: Vec<Vec<usize>> = if a1.free_abelian_rank() == Some(1) {
        x.acting().class_reps().into_iter().map(|c| vec![c.representative]).collect()
    } else {
        hom_orbits_into(a1, x.acting(), limits.budget)?.into_iter().map(|o| o.representative.images).collect()
    };
    let mut total = BigRational::zero();
    for images in reps {
        let fixed = x.restrict_to_fixed_set(&images)?;
        total += chi_a(&fixed, a2, limits)?.0 .0;
    }
    Ok(total)
}

fn budget_hint(e: Error, a: &FgPresentation) -> Error {
    match e {
        Error::BudgetExceeded { limit, .. } => Error::BudgetExceeded {
            limit,
            hint: format!(
                "; `{a}` has no free abelian or Z-factor structure to fall back on \
                 (raise --budget or split the presentation as a product)"
            ),
        },
        other => other,
    }
}

/// `χ^(A)(X, G)` with automatic routing: fixed points only go through
/// `|Hom(A, G)|`, everything else enumerates, falling back to the class
/// recursion (`A = Z^(k+1)`) or the product reduction (`A = Z × A'`) when
/// the budget runs out.
pub fn chi_a(x: &VirtualGSpace, a: &FgPresentation, limits: &Limits) -> Result<(EulerValue, Engine)> {
    if limits.force_enumeration {
        return Ok((chi_a_enumerated(x, a, limits.budget)?.into(), Engine::HomEnumeration));
    }
    if x.is_points_only() {
        let homs = count_homs_into(a, x.acting(), limits.budget).map_err(|e| budget_hint(e, a))?;
        let v = ratio(homs * BigInt::from(x.quotient_euler()), x.acting().order());
        return Ok((v.into(), Engine::OnePoint));
    }
    match chi_a_enumerated(x, a, limits.budget) {
        Ok(v) => Ok((v.into(), Engine::HomEnumeration)),
        Err(e) if e.is_resource_limit() => {
            if let Some(r) = a.free_abelian_rank() {
                Ok((chi_k_recursive(x, r - 1).into(), Engine::ClassRecursion))
            } else if let Some(rest) = a.z_cofactor() {
                let z = FgPresentation::free_abelian(1);
                Ok((reduce_product(x, &z, &rest, limits)?.into(), Engine::ProductReduction))
            } else {
                Err(budget_hint(e, a))
            }
        }
        Err(e) => Err(e),
    }
}

/// `χ^(A)(X^n, G_n)` for an honest `G`-set.
pub fn chi_power(x: &FiniteGSet, a: &FgPresentation, n: usize, limits: &Limits) -> Result<(BigRational, Engine)> {
    let p = cartesian_power_set(x, n, limits.order_cap)?;
    if limits.force_enumeration {
        return Ok((chi_a_gset(&p, a, limits.budget)?, Engine::HomEnumeration));
    }
    match a.free_abelian_rank() {
        Some(1) => return Ok((integer(p.orbits().len() as i64), Engine::OrbitCount)),
        Some(r) if n >= 3 || x.group().order() >= 3 => {
            return Ok((chi_k_recursive(&p.to_virtual(), r - 1), Engine::ClassRecursion));
        }
        _ => {}
    }
    match chi_a_gset(&p, a, limits.budget) {
        Ok(v) => Ok((v, Engine::HomEnumeration)),
        Err(e) if e.is_resource_limit() => match a.z_cofactor() {
            Some(rest) => {
                let z = FgPresentation::free_abelian(1);
                Ok((reduce_product(&p.to_virtual(), &z, &rest, limits)?, Engine::ProductReduction))
            }
            None => Err(budget_hint(e, a)),
        },
        Err(e) => Err(e),
    }
}

/// Coefficients computed in the explicit wreath products acting on the
/// Cartesian powers. Returns the engine used for each `n >= 1`.
pub fn zeta_direct(
    x: &FiniteGSet,
    a: &FgPresentation,
    order: usize,
    limits: &Limits,
) -> Result<(RationalSeries, Vec<Engine>)> {
    let mut coeffs = vec![BigRational::one()];
    let mut engines = Vec::new();
    for n in 1..=order {
        let (c, e) = chi_power(x, a, n, limits)?;
        coeffs.push(c);
        engines.push(e);
    }
    Ok((RationalSeries::new(coeffs), engines))
}

/// `1 + Σ_n |Hom(A, K_n)|/|K_n| t^n`.
pub fn point_series(k: &Arc<FiniteGroup>, a: &FgPresentation, order: usize, limits: &Limits) -> Result<RationalSeries> {
    let mut coeffs = vec![BigRational::one()];
    for n in 1..=order {
        let kn = wreath_group(k, n, limits.order_cap)?;
        let homs = count_homs_into(a, &Subgroup::full(&kn), limits.budget)?;
        coeffs.push(ratio(homs, kn.order()));
    }
    Ok(RationalSeries::new(coeffs))
}

/// `∏_cells ζ^(A)_(K/K, K)^(m (-1)^q)`, the one-point series of each
/// stabilizer raised to the signed multiplicity.
pub fn zeta_cellwise(x: &VirtualGSpace, a: &FgPresentation, order: usize, limits: &Limits) -> Result<RationalSeries> {
    let mut cache: HashMap<Vec<usize>, RationalSeries> = HashMap::new();
    let mut out = RationalSeries::one(order);
    for cell in x.cells() {
        let key = cell.stabilizer.elements().to_vec();
        let s = match cache.get(&key) {
            Some(s) => s.clone(),
            None => {
                let (k, _) = cell.stabilizer.to_group();
                let s = point_series(&k, a, order, limits)?;
                cache.insert(key, s.clone());
                s
            }
        };
        out = out.mul(&s.pow_int(cell.sign())?);
    }
    Ok(out)
}

/// For a virtual space `X = P - Q` (by cell sign), `ζ_X = ζ_P / ζ_Q` with
/// both factors computed directly.
pub fn zeta_virtual(x: &VirtualGSpace, a: &FgPresentation, order: usize, limits: &Limits) -> Result<RationalSeries> {
    let (p, q) = x.signed_parts()?;
    let zp = zeta_direct(&p, a, order, limits)?.0;
    if q.size() == 0 {
        return Ok(zp);
    }
    let zq = zeta_direct(&q, a, order, limits)?.0;
    Ok(zp.mul(&zq.inverse()?))
}

/// `1 + Σ_n χ^(k)(pt, G_n) t^n` from the type census alone: the
/// centralizer of a type is `∏ (C_G(c)·<a>) ≀ S_m`, and `χ^(k)` of a point
/// is multiplicative over direct products.
pub fn zeta_point_by_types(g: &Arc<FiniteGroup>, k: usize, order: usize) -> Result<RationalSeries> {
    let mut coeffs = vec![BigRational::one()];
    for n in 1..=order {
        coeffs.push(BigRational::from_integer(types_chi_k(g, k, n)?));
    }
    Ok(RationalSeries::new(coeffs))
}

/// `χ^(k)(pt, G ≀ S_n)` by the type recursion.
pub fn types_chi_k(g: &Arc<FiniteGroup>, k: usize, n: usize) -> Result<BigInt> {
    if k == 0 || n == 0 {
        return Ok(BigInt::one());
    }
    let reps: Vec<usize> = Subgroup::full(g).class_reps().iter().map(|c| c.representative).collect();
    let mut factors: HashMap<(usize, usize), Arc<FiniteGroup>> = HashMap::new();
    let mut values: HashMap<(usize, usize, usize), BigInt> = HashMap::new();
    let mut total = BigInt::zero();
    for t in types_over(&reps, n) {
        let mut term = BigInt::one();
        for (&(r, c), &m) in &t.counts {
            if let Some(v) = values.get(&(r, c, m)) {
                term *= v;
                continue;
            }
            let f = match factors.get(&(r, c)) {
                Some(f) => f.clone(),
                None => {
                    let f = cycle_centralizer_factor(g, c, r)?;
                    factors.insert((r, c), f.clone());
                    f
                }
            };
            let v = types_chi_k(&f, k - 1, m)?;
            term *= &v;
            values.insert((r, c, m), v);
        }
        total += term;
    }
    Ok(total)
}
