//! Wreath products `G_n = G ≀ S_n`, cycle products, types and centralizer
//! orders.
//!
//! An element is a pair `(g, s)` with `g = (g_1, .., g_n)` and `s` a
//! permutation given by its image array. Multiplication is
//!
//! ```text
//! ((g_1..g_n), s)((g'_1..g'_n), s') = ((g_1 g'_{s^-1(1)}, .., g_n g'_{s^-1(n)}), s s')
//! ```
//!
//! with `(s s')(i) = s(s'(i))`. Element index layout:
//! `rank(s) * |G|^n + Σ g_i |G|^(n-1-i)` (so `g_1` is the most significant
//! digit and permutations are ranked lexicographically). For `n = 1` the
//! indices coincide with those of `G`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ClassRep, ConjugacyClass, FiniteGroup, Subgroup};
use crate::perm;

/// Largest `n` supported by the on-demand multiplication.
pub const MAX_WREATH_N: usize = 10;
const PERM_TABLE_MAX: usize = 120;

pub struct WreathRepr {
    base: Arc<FiniteGroup>,
    n: usize,
    base_order: usize,
    block: usize,
    perms: Vec<Vec<u8>>,
    perm_mul: Option<Vec<u32>>,
    base_classes: Vec<ConjugacyClass>,
    /// class representative of every base element
    base_class_rep: Vec<usize>,
}

/// An element of `G ≀ S_n` in coordinates. `perm[i]` is the image of `i`
/// (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub g_vector: Vec<usize>,
    pub perm: Vec<usize>,
}

impl WreathRepr {
    pub(crate) fn new(base: &Arc<FiniteGroup>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWreath("n must be positive".into()));
        }
        if n > MAX_WREATH_N {
            return Err(Error::InvalidWreath(format!("n = {n} exceeds {MAX_WREATH_N}")));
        }
        let base_order = base.order();
        let block = base_order
            .checked_pow(n as u32)
            .ok_or_else(|| Error::OrderCap { order: u128::MAX, cap: usize::MAX })?;
        let perms = perm::all_perms(n);
        let perm_mul = (perms.len() <= PERM_TABLE_MAX).then(|| {
            let mut t = Vec::with_capacity(perms.len() * perms.len());
            for a in &perms {
                for b in &perms {
                    t.push(perm::rank(&perm::compose(a, b)) as u32);
                }
            }
            t
        });
        let base_classes = Subgroup::full(base).conjugacy_classes();
        let mut base_class_rep = vec![0; base_order];
        for c in &base_classes {
            for &x in &c.members {
                base_class_rep[x] = c.representative;
            }
        }
        Ok(WreathRepr {
            base: base.clone(),
            n,
            base_order,
            block,
            perms,
            perm_mul,
            base_classes,
            base_class_rep,
        })
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.block * self.perms.len()
    }

    pub fn identity(&self) -> usize {
        self.encode_parts(&vec![self.base.identity(); self.n], 0)
    }

    pub fn base_classes(&self) -> &[ConjugacyClass] {
        &self.base_classes
    }

    /// Class representative (minimal index) of a base element.
    pub fn base_class_of(&self, x: usize) -> usize {
        self.base_class_rep[x]
    }

    fn encode_parts(&self, g: &[usize], perm_rank: usize) -> usize {
        let code = g.iter().fold(0, |acc, &x| acc * self.base_order + x);
        perm_rank * self.block + code
    }

    #[inline]
    fn digits(&self, mut code: usize, out: &mut [usize; MAX_WREATH_N]) {
        for i in (0..self.n).rev() {
            out[i] = code % self.base_order;
            code /= self.base_order;
        }
    }

    pub fn encode(&self, a: &WreathElement) -> Result<usize> {
        if a.g_vector.len() != self.n || a.perm.len() != self.n {
            return Err(Error::InvalidWreath("coordinate length differs from n".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in &a.perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidWreath(format!("{:?} is not a permutation", a.perm)));
            }
        }
        for &x in &a.g_vector {
            self.base.check_element(x)?;
        }
        let p: Vec<u8> = a.perm.iter().map(|&x| x as u8).collect();
        Ok(self.encode_parts(&a.g_vector, perm::rank(&p)))
    }

    pub fn decode(&self, idx: usize) -> WreathElement {
        let mut d = [0usize; MAX_WREATH_N];
        self.digits(idx % self.block, &mut d);
        WreathElement {
            g_vector: d[..self.n].to_vec(),
            perm: self.perms[idx / self.block].iter().map(|&x| x as usize).collect(),
        }
    }

    pub(crate) fn mul(&self, a: usize, b: usize) -> usize {
        let n = self.n;
        let (pa, pb) = (a / self.block, b / self.block);
        let mut da = [0usize; MAX_WREATH_N];
        let mut db = [0usize; MAX_WREATH_N];
        self.digits(a % self.block, &mut da);
        self.digits(b % self.block, &mut db);
        let s = &self.perms[pa];
        let mut s_inv = [0usize; MAX_WREATH_N];
        for (i, &x) in s.iter().enumerate() {
            s_inv[x as usize] = i;
        }
        let mut code = 0;
        for i in 0..n {
            code = code * self.base_order + self.base.mul(da[i], db[s_inv[i]]);
        }
        let rank = match &self.perm_mul {
            Some(t) => t[pa * self.perms.len() + pb] as usize,
            None => perm::rank(&perm::compose(s, &self.perms[pb])),
        };
        rank * self.block + code
    }

    /// `(g, s)^-1 = (h, s^-1)` with `h_j = g_{s(j)}^-1`.
    pub(crate) fn inv(&self, a: usize) -> usize {
        let mut d = [0usize; MAX_WREATH_N];
        self.digits(a % self.block, &mut d);
        let s = &self.perms[a / self.block];
        let code = (0..self.n).fold(0, |acc, j| acc * self.base_order + self.base.inv(d[s[j] as usize]));
        perm::rank(&perm::inverse(s)) * self.block + code
    }

    /// Base generators in the first slot, a transposition and an n-cycle.
    pub(crate) fn generators(&self) -> Vec<usize> {
        let n = self.n;
        let e = self.base.identity();
        let mut gens = Vec::new();
        for &x in self.base.generators() {
            let mut g = vec![e; n];
            g[0] = x;
            gens.push(self.encode_parts(&g, 0));
        }
        let ident = vec![e; n];
        if n >= 2 {
            let mut t: Vec<u8> = (0..n as u8).collect();
            t.swap(0, 1);
            gens.push(self.encode_parts(&ident, perm::rank(&t)));
        }
        if n >= 3 {
            let c: Vec<u8> = (0..n as u8).map(|i| (i + 1) % n as u8).collect();
            gens.push(self.encode_parts(&ident, perm::rank(&c)));
        }
        gens
    }

    /// Cycle product of `cycle` (listed in the direction of `a.perm`).
    ///
    /// The product is taken against the direction of the permutation,
    /// `g_{i_1} g_{i_r} g_{i_{r-1}} .. g_{i_2}`, which is the `i_1` entry of
    /// `a^r`. Returns the class representative; the result does not depend
    /// on where the cycle starts.
    pub fn cycle_product(&self, a: &WreathElement, cycle: &[usize]) -> Result<usize> {
        if cycle.is_empty() {
            return Err(Error::InvalidWreath("empty cycle".into()));
        }
        let r = cycle.len();
        for (j, &i) in cycle.iter().enumerate() {
            if i >= self.n || a.perm[i] != cycle[(j + 1) % r] {
                return Err(Error::InvalidWreath(format!(
                    "{cycle:?} is not a cycle of {:?}",
                    a.perm
                )));
            }
        }
        let mut prod = a.g_vector[cycle[0]];
        for j in (1..r).rev() {
            prod = self.base.mul(prod, a.g_vector[cycle[j]]);
        }
        Ok(self.base_class_rep[prod])
    }

    pub fn type_of(&self, a: &WreathElement) -> WreathType {
        let p: Vec<u8> = a.perm.iter().map(|&x| x as u8).collect();
        let mut counts = BTreeMap::new();
        for cyc in perm::cycles(&p) {
            let c = self.cycle_product(a, &cyc).expect("cycles of its own permutation");
            *counts.entry((cyc.len(), c)).or_insert(0) += 1;
        }
        WreathType { counts }
    }

    pub fn type_of_index(&self, idx: usize) -> WreathType {
        self.type_of(&self.decode(idx))
    }

    /// A canonical element of the given type: cycles on consecutive blocks,
    /// the class representative in the first slot of each cycle.
    pub fn representative_of_type(&self, t: &WreathType) -> Result<usize> {
        if t.degree() != self.n {
            return Err(Error::InvalidWreath(format!("type of degree {} for n = {}", t.degree(), self.n)));
        }
        let e = self.base.identity();
        let mut g = vec![e; self.n];
        let mut p = vec![0u8; self.n];
        let mut pos = 0;
        for (&(r, c), &m) in &t.counts {
            if self.base_class_rep.get(c) != Some(&c) {
                return Err(Error::InvalidWreath(format!("{c} is not a class representative")));
            }
            for _ in 0..m {
                for i in 0..r {
                    p[pos + i] = (pos + (i + 1) % r) as u8;
                }
                g[pos] = c;
                pos += r;
            }
        }
        Ok(self.encode_parts(&g, perm::rank(&p)))
    }
}

/// `{m_r(c)}`: for each cycle length `r` and class representative `c` of
/// `G`, the number of `r`-cycles whose cycle product lies in the class of `c`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathType {
    pub counts: BTreeMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeEntry {
    pub r: usize,
    pub class_representative: usize,
    pub m: usize,
}

impl WreathType {
    /// `Σ r m_r(c)`.
    pub fn degree(&self) -> usize {
        self.counts.iter().map(|(&(r, _), &m)| r * m).sum()
    }

    pub fn entries(&self) -> Vec<TypeEntry> {
        self.counts
            .iter()
            .filter(|(_, &m)| m > 0)
            .map(|(&(r, c), &m)| TypeEntry { r, class_representative: c, m })
            .collect()
    }

    pub fn from_entries(entries: &[TypeEntry]) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for e in entries {
            if e.r == 0 {
                return Err(Error::InvalidWreath("cycle length 0".into()));
            }
            if e.m > 0 {
                *counts.entry((e.r, e.class_representative)).or_insert(0) += e.m;
            }
        }
        Ok(WreathType { counts })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.entries()).expect("plain data")
    }
}

pub fn wreath_group(g: &Arc<FiniteGroup>, n: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
    let label = format!("wreath({},{n})", g.label());
    wreath_group_labeled(g, n, cap, label)
}

pub(crate) fn wreath_group_labeled(
    g: &Arc<FiniteGroup>,
    n: usize,
    cap: usize,
    label: String,
) -> Result<Arc<FiniteGroup>> {
    let order = wreath_order(g.order(), n)?;
    if order > cap as u128 {
        return Err(Error::OrderCap { order, cap });
    }
    let repr = WreathRepr::new(g, n)?;
    Ok(Arc::new(FiniteGroup::new_wreath(label, repr)))
}

/// `|G|^n n!`.
pub fn wreath_order(base_order: usize, n: usize) -> Result<u128> {
    (base_order as u128)
        .checked_pow(n as u32)
        .and_then(|p| p.checked_mul(perm::factorial(n)))
        .ok_or_else(|| Error::OrderCap { order: u128::MAX, cap: usize::MAX })
}

fn factorial_checked(m: usize) -> Result<u128> {
    (1..=m as u128)
        .try_fold(1u128, |acc, x| acc.checked_mul(x))
        .ok_or_else(|| Error::InvalidWreath("factorial overflow".into()))
}

/// `∏ (r |C_G(c)|)^{m_r(c)} m_r(c)!`.
pub fn centralizer_order_by_type(t: &WreathType, g: &Arc<FiniteGroup>) -> Result<u128> {
    let classes = Subgroup::full(g).conjugacy_classes();
    centralizer_order_with(t, g.order(), &classes)
}

fn centralizer_order_with(t: &WreathType, order: usize, classes: &[ConjugacyClass]) -> Result<u128> {
    let overflow = || Error::InvalidWreath("centralizer order overflow".into());
    let mut acc: u128 = 1;
    for (&(r, c), &m) in &t.counts {
        if r == 0 {
            return Err(Error::InvalidWreath("cycle length 0".into()));
        }
        let class = classes
            .iter()
            .find(|cl| cl.representative == c)
            .ok_or_else(|| Error::InvalidWreath(format!("{c} is not a class representative")))?;
        let cent = (order / class.size()) as u128;
        let factor = (r as u128 * cent).checked_pow(m as u32).ok_or_else(overflow)?;
        acc = acc
            .checked_mul(factor)
            .and_then(|x| x.checked_mul(factorial_checked(m).ok()?))
            .ok_or_else(overflow)?;
    }
    Ok(acc)
}

/// Partitions of `m` as non-increasing part lists, in reverse
/// lexicographic order.
pub(crate) fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// All types of degree `n` over the given class representatives: one
/// partition per class, sizes summing to `n`.
pub(crate) fn types_over(class_reps: &[usize], n: usize) -> Vec<WreathType> {
    fn go(
        reps: &[usize],
        rest: usize,
        cur: &mut BTreeMap<(usize, usize), usize>,
        parts: &[Vec<Vec<usize>>],
        out: &mut Vec<WreathType>,
    ) {
        let Some((&c, tail)) = reps.split_first() else {
            if rest == 0 {
                out.push(WreathType { counts: cur.clone() });
            }
            return;
        };
        for share in 0..=rest {
            if tail.is_empty() && share != rest {
                continue;
            }
            for lambda in &parts[share] {
                let mut next = cur.clone();
                for &r in lambda {
                    *next.entry((r, c)).or_insert(0) += 1;
                }
                go(tail, rest - share, &mut next, parts, out);
            }
        }
    }
    let parts: Vec<Vec<Vec<usize>>> = (0..=n).map(partitions).collect();
    let mut out = Vec::new();
    go(class_reps, n, &mut BTreeMap::new(), &parts, &mut out);
    out.sort();
    out
}

/// One entry per type (colored partition of `n` by `Conj G`), with the
/// class size `|G_n| / |C(a)|`. Sorted by type.
pub fn conjugacy_classes_by_type(g: &Arc<FiniteGroup>, n: usize) -> Result<Vec<(WreathType, u128)>> {
    let classes = Subgroup::full(g).conjugacy_classes();
    let reps: Vec<usize> = classes.iter().map(|c| c.representative).collect();
    let total = wreath_order(g.order(), n)?;
    types_over(&reps, n)
        .into_iter()
        .map(|t| {
            let cent = centralizer_order_with(&t, g.order(), &classes)?;
            Ok((t, total / cent))
        })
        .collect()
}

/// Class representatives of a wreath-product group via types.
pub(crate) fn class_reps_by_type(g: &Arc<FiniteGroup>) -> Vec<ClassRep> {
    let repr = g.wreath().expect("wreath group");
    let reps: Vec<usize> = repr.base_classes.iter().map(|c| c.representative).collect();
    let total = g.order() as u128;
    types_over(&reps, repr.n)
        .into_iter()
        .map(|t| {
            let cent = centralizer_order_with(&t, repr.base_order, &repr.base_classes)
                .expect("types built from the base classes");
            ClassRep {
                representative: repr.representative_of_type(&t).expect("consistent type"),
                size: (total / cent) as u64,
            }
        })
        .collect()
}

/// `C_G(c) · <a>` for an `r`-cycle with cycle product `c`: pairs `(x, j)`,
/// `x ∈ C_G(c)`, `0 <= j < r`, standing for `x a^j` with `a` central and
/// `a^r = c`. Order `r |C_G(c)|`. Index `j |C_G(c)| + x'` where `x'` is the
/// index of `x` inside the centralizer.
pub fn cycle_centralizer_factor(g: &Arc<FiniteGroup>, c: usize, r: usize) -> Result<Arc<FiniteGroup>> {
    g.check_element(c)?;
    if r == 0 {
        return Err(Error::InvalidWreath("cycle length 0".into()));
    }
    let cent = Subgroup::full(g).centralizer(c);
    let (k, map) = cent.to_group();
    let c_local = map.binary_search(&c).expect("c centralizes itself");
    let m = k.order();
    let e = k.identity();
    let label = format!("ext({},{c},{r})", g.label());
    let group = FiniteGroup::from_fn(label, r * m, e, |a, b| {
        let (ja, xa) = (a / m, a % m);
        let (jb, xb) = (b / m, b % m);
        let mut x = k.mul(xa, xb);
        let mut j = ja + jb;
        if j >= r {
            j -= r;
            x = k.mul(x, c_local);
        }
        j * m + x
    });
    Ok(Arc::new(group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, DEFAULT_ORDER_CAP};

    fn z2() -> Arc<FiniteGroup> {
        build_group("cyclic:2").unwrap()
    }

    #[test]
    fn small_wreath_orders_and_classes() {
        let w = wreath_group(&FiniteGroup::trivial(), 3, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(w.order(), 6);
        let w = wreath_group(&z2(), 2, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(w.order(), 8);
        assert_eq!(Subgroup::full(&w).conjugacy_classes().len(), 5);
        let s3 = build_group("symmetric:3").unwrap();
        let w1 = wreath_group(&s3, 1, DEFAULT_ORDER_CAP).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(w1.mul(a, b), s3.mul(a, b));
            }
        }
    }

    #[test]
    fn wreath_axioms() {
        for (spec, n) in [("cyclic:2", 2), ("cyclic:3", 2), ("symmetric:3", 2), ("cyclic:2", 3)] {
            let w = wreath_group(&build_group(spec).unwrap(), n, DEFAULT_ORDER_CAP).unwrap();
            w.verify_axioms().unwrap();
        }
    }

    #[test]
    fn lazy_and_table_paths_agree() {
        let base = build_group("symmetric:3").unwrap();
        let table = wreath_group(&base, 2, DEFAULT_ORDER_CAP).unwrap();
        assert!(table.is_materialized());
        let lazy = FiniteGroup::new_wreath_lazy_for_tests(&base, 2);
        assert!(!lazy.is_materialized());
        for a in 0..table.order() {
            assert_eq!(table.inv(a), lazy.inv(a));
            for b in (0..table.order()).step_by(7) {
                assert_eq!(table.mul(a, b), lazy.mul(a, b));
            }
        }
    }

    #[test]
    fn multiplication_formula() {
        let s3 = build_group("symmetric:3").unwrap();
        let w = wreath_group(&s3, 3, DEFAULT_ORDER_CAP).unwrap();
        let repr = w.wreath().unwrap();
        let a = WreathElement { g_vector: vec![1, 2, 3], perm: vec![1, 2, 0] };
        let b = WreathElement { g_vector: vec![4, 5, 1], perm: vec![0, 2, 1] };
        let ab = repr.decode(w.mul(repr.encode(&a).unwrap(), repr.encode(&b).unwrap()));
        // s^-1 = [2, 0, 1]
        let expected_g: Vec<usize> =
            (0..3).map(|i| s3.mul(a.g_vector[i], b.g_vector[[2, 0, 1][i]])).collect();
        assert_eq!(ab.g_vector, expected_g);
        assert_eq!(ab.perm, vec![1, 0, 2]);
    }

    #[test]
    fn cycle_products() {
        let w = wreath_group(&z2(), 2, DEFAULT_ORDER_CAP).unwrap();
        let repr = w.wreath().unwrap();
        let id = repr.decode(w.identity());
        assert_eq!(repr.cycle_product(&id, &[0]).unwrap(), 0);
        let a = WreathElement { g_vector: vec![1, 0], perm: vec![1, 0] };
        assert_eq!(repr.cycle_product(&a, &[0, 1]).unwrap(), 1);
        assert_eq!(repr.cycle_product(&a, &[1, 0]).unwrap(), 1);
        assert!(repr.cycle_product(&a, &[0]).is_err());

        let s3 = build_group("symmetric:3").unwrap();
        let w1 = wreath_group(&s3, 1, DEFAULT_ORDER_CAP).unwrap();
        let r1 = w1.wreath().unwrap();
        for g in 0..6 {
            let el = WreathElement { g_vector: vec![g], perm: vec![0] };
            assert_eq!(r1.cycle_product(&el, &[0]).unwrap(), r1.base_class_of(g));
        }
    }

    #[test]
    fn cycle_product_independent_of_start() {
        let s3 = build_group("symmetric:3").unwrap();
        let w = wreath_group(&s3, 3, DEFAULT_ORDER_CAP).unwrap();
        let repr = w.wreath().unwrap();
        for idx in (0..w.order()).step_by(5) {
            let a = repr.decode(idx);
            let p: Vec<u8> = a.perm.iter().map(|&x| x as u8).collect();
            for cyc in perm::cycles(&p) {
                let base = repr.cycle_product(&a, &cyc).unwrap();
                for k in 1..cyc.len() {
                    let mut rot = cyc.clone();
                    rot.rotate_left(k);
                    assert_eq!(repr.cycle_product(&a, &rot).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn types_of_small_elements() {
        let w = wreath_group(&z2(), 2, DEFAULT_ORDER_CAP).unwrap();
        let repr = w.wreath().unwrap();
        let t = repr.type_of_index(w.identity());
        assert_eq!(t.counts, BTreeMap::from([((1, 0), 2)]));
        let a = WreathElement { g_vector: vec![0, 0], perm: vec![1, 0] };
        assert_eq!(repr.type_of(&a).counts, BTreeMap::from([((2, 0), 1)]));
        let b = WreathElement { g_vector: vec![1, 1], perm: vec![0, 1] };
        assert_eq!(repr.type_of(&b).counts, BTreeMap::from([((1, 1), 2)]));
        for idx in 0..w.order() {
            assert_eq!(repr.type_of_index(idx).degree(), 2);
        }
    }

    #[test]
    fn centralizer_orders() {
        let g = z2();
        let t = WreathType { counts: BTreeMap::from([((2, 0), 1)]) };
        assert_eq!(centralizer_order_by_type(&t, &g).unwrap(), 4);
        let ident = WreathType { counts: BTreeMap::from([((1, 0), 3)]) };
        assert_eq!(centralizer_order_by_type(&ident, &g).unwrap(), 8 * 6);
        let trivial = FiniteGroup::trivial();
        let t4 = WreathType { counts: BTreeMap::from([((1, 0), 4)]) };
        assert_eq!(centralizer_order_by_type(&t4, &trivial).unwrap(), 24);
        let bad = WreathType { counts: BTreeMap::from([((1, 7), 1)]) };
        assert!(centralizer_order_by_type(&bad, &g).is_err());
    }

    #[test]
    fn type_census() {
        let trivial = FiniteGroup::trivial();
        let p: Vec<usize> = (1..=6).map(|n| conjugacy_classes_by_type(&trivial, n).unwrap().len()).collect();
        assert_eq!(p, vec![1, 2, 3, 5, 7, 11]);
        assert_eq!(conjugacy_classes_by_type(&z2(), 2).unwrap().len(), 5);
        assert_eq!(conjugacy_classes_by_type(&z2(), 1).unwrap().len(), 2);
        let z3 = build_group("cyclic:3").unwrap();
        assert_eq!(conjugacy_classes_by_type(&z3, 2).unwrap().len(), 9);
        for (spec, n) in [("cyclic:2", 4), ("symmetric:3", 3), ("dihedral:4", 2)] {
            let g = build_group(spec).unwrap();
            let total: u128 = conjugacy_classes_by_type(&g, n).unwrap().iter().map(|(_, s)| s).sum();
            assert_eq!(total, wreath_order(g.order(), n).unwrap());
        }
    }

    #[test]
    fn representatives_have_their_type() {
        let s3 = build_group("symmetric:3").unwrap();
        let w = wreath_group(&s3, 3, DEFAULT_ORDER_CAP).unwrap();
        let repr = w.wreath().unwrap();
        for (t, _) in conjugacy_classes_by_type(&s3, 3).unwrap() {
            let idx = repr.representative_of_type(&t).unwrap();
            assert_eq!(repr.type_of_index(idx), t);
        }
    }

    #[test]
    fn type_json_is_sorted() {
        let t = WreathType { counts: BTreeMap::from([((2, 0), 1), ((1, 3), 2), ((1, 1), 1)]) };
        let v = t.to_json();
        assert_eq!(
            v.to_string(),
            r#"[{"class_representative":1,"m":1,"r":1},{"class_representative":3,"m":2,"r":1},{"class_representative":0,"m":1,"r":2}]"#
        );
        let back: Vec<TypeEntry> = serde_json::from_value(v).unwrap();
        assert_eq!(WreathType::from_entries(&back).unwrap(), t);
    }

    #[test]
    fn cycle_factor_group() {
        let z2 = z2();
        let k = cycle_centralizer_factor(&z2, 1, 2).unwrap();
        assert_eq!(k.order(), 4);
        k.verify_axioms().unwrap();
        // a^2 = c of order 2, so K' is cyclic of order 4
        assert_eq!(k.elements().map(|x| k.element_order(x)).max(), Some(4));
        let k0 = cycle_centralizer_factor(&z2, 0, 2).unwrap();
        assert_eq!(k0.elements().map(|x| k0.element_order(x)).max(), Some(2));
    }
}
