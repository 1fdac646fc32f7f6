//! `G`-spaces: virtual cell complexes (orbit cells `σ^q × G/K` with integer
//! multiplicities) and honest finite `G`-sets.

use std::collections::{HashMap, VecDeque};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupSpec, Subgroup};
use crate::spec_parse::{parse_index_list, parse_term, parse_usize, Term};
use crate::wreath::wreath_group;

/// Bound on the number of points of a Cartesian power.
pub const POINT_CAP: usize = 10_000_000;

/// One orbit cell `σ^dim × G/stabilizer`, counted `mult` times.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub dim: u32,
    pub stabilizer: Subgroup,
    pub mult: i64,
}

impl Cell {
    /// `mult · (-1)^dim`.
    pub fn sign(&self) -> i64 {
        if self.dim % 2 == 0 {
            self.mult
        } else {
            -self.mult
        }
    }
}

/// A formal integer combination of orbit cells. The acting group is a
/// subgroup of some parent group; stabilizers live in the same parent.
#[derive(Debug, Clone, PartialEq)]
pub struct VirtualGSpace {
    acting: Subgroup,
    cells: Vec<Cell>,
}

impl VirtualGSpace {
    pub fn new(acting: Subgroup, cells: Vec<Cell>) -> Result<Self> {
        for c in &cells {
            if !c.stabilizer.is_subgroup_of(&acting) {
                return Err(Error::NotSubgroup(format!(
                    "cell stabilizer of order {} is not contained in the acting group",
                    c.stabilizer.order()
                )));
            }
        }
        Ok(VirtualGSpace { acting, cells })
    }

    pub fn empty(acting: &Subgroup) -> Self {
        VirtualGSpace { acting: acting.clone(), cells: Vec::new() }
    }

    /// `G/G`.
    pub fn point(acting: &Subgroup) -> Self {
        VirtualGSpace::orbit_unchecked(acting, acting.clone())
    }

    /// `G/{e}`.
    pub fn free(acting: &Subgroup) -> Self {
        VirtualGSpace::orbit_unchecked(acting, Subgroup::trivial(acting.parent()))
    }

    /// `G/K` as a single 0-cell.
    pub fn orbit(acting: &Subgroup, k: &Subgroup) -> Result<Self> {
        VirtualGSpace::new(acting.clone(), vec![Cell { dim: 0, stabilizer: k.clone(), mult: 1 }])
    }

    fn orbit_unchecked(acting: &Subgroup, k: Subgroup) -> Self {
        VirtualGSpace { acting: acting.clone(), cells: vec![Cell { dim: 0, stabilizer: k, mult: 1 }] }
    }

    /// `chi` copies of a fixed point; a negative `chi` is realized by
    /// 1-cells so the sign enters through the dimension.
    pub fn points(acting: &Subgroup, chi: i64) -> Self {
        let cell = if chi >= 0 {
            Cell { dim: 0, stabilizer: acting.clone(), mult: chi }
        } else {
            Cell { dim: 1, stabilizer: acting.clone(), mult: -chi }
        };
        let cells = if chi == 0 { Vec::new() } else { vec![cell] };
        VirtualGSpace { acting: acting.clone(), cells }
    }

    pub fn point_of(g: &Arc<FiniteGroup>) -> Self {
        VirtualGSpace::point(&Subgroup::full(g))
    }

    pub fn acting(&self) -> &Subgroup {
        &self.acting
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.acting.parent()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// True when every cell is a fixed point of the whole acting group.
    pub fn is_points_only(&self) -> bool {
        self.cells.iter().all(|c| c.stabilizer.order() == self.acting.order())
    }

    /// `χ(X) = Σ m (-1)^q [G:K]`.
    pub fn euler(&self) -> i64 {
        self.cells.iter().map(|c| c.sign() * (self.acting.order() / c.stabilizer.order()) as i64).sum()
    }

    /// `χ(X/G) = Σ m (-1)^q`.
    pub fn quotient_euler(&self) -> i64 {
        self.cells.iter().map(Cell::sign).sum()
    }

    /// `χ(X^H)`.
    pub fn fixed_euler(&self, h: &Subgroup) -> Result<i64> {
        if !h.is_subgroup_of(&self.acting) {
            return Err(Error::NotSubgroup("fixed_euler: H is not a subgroup of the acting group".into()));
        }
        Ok(self.fixed_euler_gens(h.generators()))
    }

    /// `χ(X^H)` for `H` generated by `gens` (assumed to lie in the acting
    /// group). Per cell, `#{gK : g^-1 x g ∈ K for all x ∈ gens}`.
    pub fn fixed_euler_gens(&self, gens: &[usize]) -> i64 {
        let g = self.group();
        self.cells
            .iter()
            .map(|c| {
                let k = &c.stabilizer;
                let fixed = if k.order() == self.acting.order() {
                    1
                } else if gens.iter().all(|&x| x == g.identity()) {
                    self.acting.order() / k.order()
                } else {
                    let hits = self
                        .acting
                        .elements()
                        .iter()
                        .filter(|&&s| {
                            let s_inv = g.inv(s);
                            gens.iter().all(|&x| k.contains(g.mul(s_inv, g.mul(x, s))))
                        })
                        .count();
                    hits / k.order()
                };
                c.sign() * fixed as i64
            })
            .sum()
    }

    /// `X^<g>` as a space over `C(g)`.
    pub fn restrict_to_fixed(&self, g: usize) -> Result<VirtualGSpace> {
        self.restrict_to_fixed_set(&[g])
    }

    /// The common fixed locus of `xs` as a space over their centralizer
    /// in the acting group: fixed cosets split into centralizer orbits, one
    /// cell per orbit with the original dimension and multiplicity.
    pub fn restrict_to_fixed_set(&self, xs: &[usize]) -> Result<VirtualGSpace> {
        for &x in xs {
            if !self.acting.contains(x) {
                return Err(Error::NotSubgroup(format!("element {x} is not in the acting group")));
            }
        }
        let g = self.group().clone();
        let cent = self.acting.centralizer_of_set(xs);
        let mut cells = Vec::new();
        for cell in &self.cells {
            let k = &cell.stabilizer;
            if k.order() == self.acting.order() {
                cells.push(Cell { dim: cell.dim, stabilizer: cent.clone(), mult: cell.mult });
                continue;
            }
            let fixes = |s: usize| {
                let s_inv = g.inv(s);
                xs.iter().all(|&x| k.contains(g.mul(s_inv, g.mul(x, s))))
            };
            // Double cosets C s K inside the fixed set, explored by BFS.
            let mut seen = Bitset::new(g.order());
            for &s in self.acting.elements() {
                if seen.contains(s) || !fixes(s) {
                    continue;
                }
                seen.insert(s);
                let mut queue = VecDeque::from([s]);
                while let Some(y) = queue.pop_front() {
                    for &c in cent.generators() {
                        let z = g.mul(c, y);
                        if seen.insert(z) {
                            queue.push_back(z);
                        }
                    }
                    for &kk in k.generators() {
                        let z = g.mul(y, kk);
                        if seen.insert(z) {
                            queue.push_back(z);
                        }
                    }
                }
                let s_inv = g.inv(s);
                let stab: Vec<usize> = cent
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&c| k.contains(g.mul(s_inv, g.mul(c, s))))
                    .collect();
                cells.push(Cell {
                    dim: cell.dim,
                    stabilizer: Subgroup::from_sorted_unchecked(&g, stab),
                    mult: cell.mult,
                });
            }
        }
        Ok(VirtualGSpace { acting: cent, cells })
    }

    pub fn disjoint_union(&self, other: &VirtualGSpace) -> Result<VirtualGSpace> {
        if self.acting != other.acting {
            return Err(Error::GroupMismatch("disjoint union of spaces over different groups".into()));
        }
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        Ok(VirtualGSpace { acting: self.acting.clone(), cells })
    }

    /// Induction to an overgroup inside the same parent: the cells keep
    /// their stabilizers, the acting group grows.
    pub fn induce_within(&self, h: &Subgroup) -> Result<VirtualGSpace> {
        if !self.acting.is_subgroup_of(h) {
            return Err(Error::NotSubgroup("induction target does not contain the acting group".into()));
        }
        Ok(VirtualGSpace { acting: h.clone(), cells: self.cells.clone() })
    }

    /// The same space transported along an injective homomorphism from
    /// the parent group: acting group and stabilizers replaced by images.
    pub fn push_forward(&self, emb: &Embedding) -> Result<VirtualGSpace> {
        if !Arc::ptr_eq(&emb.source, self.group()) {
            return Err(Error::GroupMismatch("embedding source is not the space's group".into()));
        }
        let cells = self
            .cells
            .iter()
            .map(|c| Cell { dim: c.dim, stabilizer: emb.image(&c.stabilizer), mult: c.mult })
            .collect();
        Ok(VirtualGSpace { acting: emb.image(&self.acting), cells })
    }

    /// Induction along an injective homomorphism into `H`:
    /// `(q, K, m) ↦ (q, ι(K), m)` over the whole of `H`.
    pub fn induce(&self, emb: &Embedding) -> Result<VirtualGSpace> {
        self.push_forward(emb)?.induce_within(&Subgroup::full(&emb.target))
    }

    /// The same cells over the source of `emb`, whose image must be the
    /// acting group.
    pub fn pull_back(&self, emb: &Embedding) -> Result<VirtualGSpace> {
        if !Arc::ptr_eq(&emb.target, self.group()) || emb.image(&Subgroup::full(&emb.source)) != self.acting {
            return Err(Error::GroupMismatch("embedding image is not the acting group".into()));
        }
        let back: HashMap<usize, usize> = emb.map.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let local = |k: &Subgroup| {
            let mut elems: Vec<usize> = k.elements().iter().map(|x| back[x]).collect();
            elems.sort_unstable();
            Subgroup::from_sorted_unchecked(&emb.source, elems)
        };
        Ok(VirtualGSpace {
            acting: Subgroup::full(&emb.source),
            cells: self
                .cells
                .iter()
                .map(|c| Cell { dim: c.dim, stabilizer: local(&c.stabilizer), mult: c.mult })
                .collect(),
        })
    }

    /// Same cells over the standalone copy of the acting group.
    pub fn standalone(&self) -> VirtualGSpace {
        if self.acting.is_full() {
            return self.clone();
        }
        let (grp, map) = self.acting.to_group();
        let local = |k: &Subgroup| {
            let elems: Vec<usize> =
                k.elements().iter().map(|x| map.binary_search(x).expect("inside the acting group")).collect();
            let mut elems = elems;
            elems.sort_unstable();
            Subgroup::from_sorted_unchecked(&grp, elems)
        };
        VirtualGSpace {
            acting: Subgroup::full(&grp),
            cells: self
                .cells
                .iter()
                .map(|c| Cell { dim: c.dim, stabilizer: local(&c.stabilizer), mult: c.mult })
                .collect(),
        }
    }

    /// Splits into honest `G`-sets `(P, Q)` with `X = P - Q` (cells of
    /// negative sign go to `Q`). Requires the acting group to be a whole
    /// group.
    pub fn signed_parts(&self) -> Result<(FiniteGSet, FiniteGSet)> {
        let x = self.standalone();
        let g = x.group().clone();
        let mut pos = FiniteGSet::empty(&g);
        let mut neg = FiniteGSet::empty(&g);
        for c in &x.cells {
            let orbit = FiniteGSet::coset_space(&g, &c.stabilizer)?;
            let s = c.sign();
            for _ in 0..s.unsigned_abs() {
                if s > 0 {
                    pos = pos.disjoint_union(&orbit)?;
                } else {
                    neg = neg.disjoint_union(&orbit)?;
                }
            }
        }
        Ok((pos, neg))
    }

    pub fn to_json(&self, group_spec: &str) -> SpaceFile {
        SpaceFile {
            group: group_spec.to_string(),
            cells: self
                .cells
                .iter()
                .map(|c| CellFile { dim: c.dim, stabilizer: c.stabilizer.generators().to_vec(), mult: c.mult })
                .collect(),
        }
    }
}

/// An injective homomorphism `source -> target`, as the image of every
/// element.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    pub map: Vec<usize>,
}

impl Embedding {
    /// Validates that `map` is an injective homomorphism.
    pub fn new(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::InvalidHomomorphism(format!(
                "map has {} entries for a group of order {}",
                map.len(),
                source.order()
            )));
        }
        let mut hit = Bitset::new(target.order());
        for &y in &map {
            target.check_element(y)?;
            if !hit.insert(y) {
                return Err(Error::InvalidHomomorphism("map is not injective".into()));
            }
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::InvalidHomomorphism(format!("map is not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(Embedding { source: source.clone(), target: target.clone(), map })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        Embedding { source: g.clone(), target: g.clone(), map: g.elements().collect() }
    }

    /// The inclusion of a subgroup, from its standalone copy.
    pub fn inclusion(k: &Subgroup) -> Self {
        let (source, map) = k.to_group();
        Embedding { source, target: k.parent().clone(), map }
    }

    /// The lexicographically first injective homomorphism, searched over
    /// images of the source generators.
    pub fn find(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Result<Option<Self>> {
        let gens = source.generators().to_vec();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&s| {
                let o = source.element_order(s);
                target.elements().filter(|&t| target.element_order(t) == o).collect()
            })
            .collect();
        let mut choice = vec![0usize; gens.len()];
        if candidates.iter().any(|c| c.is_empty()) {
            return Ok(None);
        }
        loop {
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
            if let Some(map) = extend_map(source, target, &gens, &images) {
                if let Ok(e) = Embedding::new(source, target, map) {
                    return Ok(Some(e));
                }
            }
            // odometer, last generator fastest
            let mut i = gens.len();
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < candidates[i].len() {
                    break;
                }
                choice[i] = 0;
            }
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Result<Embedding> {
        if !Arc::ptr_eq(&self.target, &other.source) {
            return Err(Error::GroupMismatch("embeddings do not compose".into()));
        }
        Ok(Embedding {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    pub fn image(&self, k: &Subgroup) -> Subgroup {
        let mut elems: Vec<usize> = k.elements().iter().map(|&x| self.map[x]).collect();
        elems.sort_unstable();
        Subgroup::from_sorted_unchecked(&self.target, elems)
    }
}

fn extend_map(source: &FiniteGroup, target: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let mut map = vec![UNSET; source.order()];
    map[source.identity()] = target.identity();
    let mut queue = VecDeque::from([source.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = source.mul(x, s);
            let v = target.mul(map[x], t);
            if map[y] == UNSET {
                map[y] = v;
                queue.push_back(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    map.iter().all(|&v| v != UNSET).then_some(map)
}

#[derive(Debug, Clone)]
enum Action {
    /// `table[g * size + x]`
    Table(Vec<u32>),
    /// `X^n` under `G ≀ S_n`.
    Power { base: Arc<FiniteGSet>, n: usize },
}

/// A finite set with an explicit left action.
#[derive(Debug, Clone)]
pub struct FiniteGSet {
    group: Arc<FiniteGroup>,
    size: usize,
    action: Action,
}

impl FiniteGSet {
    /// Validates the action axioms exhaustively.
    pub fn new(group: &Arc<FiniteGroup>, size: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != group.order() * size {
            return Err(Error::InvalidAction(format!(
                "action table has {} entries, expected {}",
                table.len(),
                group.order() * size
            )));
        }
        if let Some(&bad) = table.iter().find(|&&y| y >= size) {
            return Err(Error::InvalidAction(format!("point {bad} out of range")));
        }
        let x = FiniteGSet {
            group: group.clone(),
            size,
            action: Action::Table(table.into_iter().map(|y| y as u32).collect()),
        };
        x.validate()?;
        Ok(x)
    }

    pub fn empty(g: &Arc<FiniteGroup>) -> Self {
        FiniteGSet { group: g.clone(), size: 0, action: Action::Table(Vec::new()) }
    }

    pub fn point(g: &Arc<FiniteGroup>) -> Self {
        FiniteGSet { group: g.clone(), size: 1, action: Action::Table(vec![0; g.order()]) }
    }

    /// `n` fixed points.
    pub fn points(g: &Arc<FiniteGroup>, n: usize) -> Self {
        let table = (0..g.order()).flat_map(|_| 0..n as u32).collect();
        FiniteGSet { group: g.clone(), size: n, action: Action::Table(table) }
    }

    pub fn free(g: &Arc<FiniteGroup>) -> Self {
        FiniteGSet::coset_space(g, &Subgroup::trivial(g)).expect("trivial subgroup")
    }

    /// Left cosets `G/K`, numbered by their minimal element.
    pub fn coset_space(g: &Arc<FiniteGroup>, k: &Subgroup) -> Result<Self> {
        if !Arc::ptr_eq(k.parent(), g) {
            return Err(Error::GroupMismatch("subgroup of a different group".into()));
        }
        const UNSET: u32 = u32::MAX;
        let mut coset_of = vec![UNSET; g.order()];
        let mut count = 0u32;
        for x in g.elements() {
            if coset_of[x] == UNSET {
                for &kk in k.elements() {
                    coset_of[g.mul(x, kk)] = count;
                }
                count += 1;
            }
        }
        let mut reps = vec![0usize; count as usize];
        for x in g.elements().rev() {
            reps[coset_of[x] as usize] = x;
        }
        let size = count as usize;
        let mut table = Vec::with_capacity(g.order() * size);
        for a in g.elements() {
            for &r in &reps {
                table.push(coset_of[g.mul(a, r)]);
            }
        }
        Ok(FiniteGSet { group: g.clone(), size, action: Action::Table(table) })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        match &self.action {
            Action::Table(t) => t[g * self.size + x] as usize,
            Action::Power { base, n } => {
                let w = self.group.wreath().expect("power of a G-set acts through a wreath product").decode(g);
                let b = base.size;
                let mut digits = vec![0usize; *n];
                let mut rest = x;
                for i in (0..*n).rev() {
                    digits[i] = rest % b;
                    rest /= b;
                }
                // y_{s(j)} = g_{s(j)} x_j
                let mut out = vec![0usize; *n];
                for j in 0..*n {
                    let i = w.perm[j];
                    out[i] = base.act(w.g_vector[i], digits[j]);
                }
                out.iter().fold(0, |acc, &d| acc * b + d)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        for x in 0..self.size {
            if self.act(g.identity(), x) != x {
                return Err(Error::InvalidAction(format!("identity moves point {x}")));
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                for x in 0..self.size {
                    if self.act(a, self.act(b, x)) != self.act(ab, x) {
                        return Err(Error::InvalidAction(format!("g(hx) != (gh)x for g={a}, h={b}, x={x}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn disjoint_union(&self, other: &FiniteGSet) -> Result<FiniteGSet> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::GroupMismatch("disjoint union of G-sets over different groups".into()));
        }
        let size = self.size + other.size;
        let mut table = Vec::with_capacity(self.group.order() * size);
        for g in self.group.elements() {
            for x in 0..self.size {
                table.push(self.act(g, x) as u32);
            }
            for x in 0..other.size {
                table.push((self.size + other.act(g, x)) as u32);
            }
        }
        Ok(FiniteGSet { group: self.group.clone(), size, action: Action::Table(table) })
    }

    /// Orbits in order of their minimal points, each sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let gens = self.group.generators();
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for start in 0..self.size {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &s in gens {
                    let y = self.act(s, x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                        queue.push_back(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let elems = self.group.elements().filter(|&g| self.act(g, x) == x).collect();
        Subgroup::from_sorted_unchecked(&self.group, elems)
    }

    /// Number of points fixed by every element of `gens`.
    pub fn fixed_count(&self, gens: &[usize]) -> usize {
        (0..self.size).filter(|&x| gens.iter().all(|&g| self.act(g, x) == x)).count()
    }

    /// One 0-cell per orbit, stabilized by the stabilizer of the orbit's
    /// minimal point.
    pub fn to_virtual(&self) -> VirtualGSpace {
        let acting = Subgroup::full(&self.group);
        let cells =
            self.orbits().iter().map(|o| Cell { dim: 0, stabilizer: self.stabilizer(o[0]), mult: 1 }).collect();
        VirtualGSpace { acting, cells }
    }

    pub fn to_json(&self, group_spec: &str) -> GSetFile {
        let action = self.group.elements().flat_map(|g| (0..self.size).map(move |x| (g, x))).map(|(g, x)| self.act(g, x)).collect();
        GSetFile { group: group_spec.to_string(), size: self.size, action }
    }
}

/// `X^n` with `G ≀ S_n` acting by `(g, s)·x = (g_i x_{s^-1(i)})_i`. Points
/// are encoded as `Σ x_i |X|^(n-1-i)`.
pub fn cartesian_power_set(x: &FiniteGSet, n: usize, order_cap: usize) -> Result<FiniteGSet> {
    let size = (x.size as u128).checked_pow(n as u32).filter(|&s| s <= POINT_CAP as u128).ok_or_else(|| {
        Error::BudgetExceeded {
            limit: POINT_CAP as u64,
            hint: format!(" ({}^{n} points)", x.size),
        }
    })? as usize;
    let group = wreath_group(&x.group, n, order_cap)?;
    Ok(FiniteGSet { group, size, action: Action::Power { base: Arc::new(x.clone()), n } })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellFile {
    pub dim: u32,
    pub stabilizer: Vec<usize>,
    pub mult: i64,
}

/// `{group, cells: [{dim, stabilizer, mult}]}`; stabilizers are given by
/// generating elements.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceFile {
    pub group: String,
    pub cells: Vec<CellFile>,
}

/// `{group, size, action}` with a row-major action table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GSetFile {
    pub group: String,
    pub size: usize,
    pub action: Vec<usize>,
}

impl SpaceFile {
    pub fn build(&self, cap: usize) -> Result<VirtualGSpace> {
        let g = GroupSpec::parse(&self.group)?.build(cap)?;
        self.build_over(&g)
    }

    fn build_over(&self, g: &Arc<FiniteGroup>) -> Result<VirtualGSpace> {
        let cells = self
            .cells
            .iter()
            .map(|c| Ok(Cell { dim: c.dim, stabilizer: Subgroup::generated(g, &c.stabilizer)?, mult: c.mult }))
            .collect::<Result<Vec<_>>>()?;
        VirtualGSpace::new(Subgroup::full(g), cells)
    }
}

impl GSetFile {
    pub fn build(&self, cap: usize) -> Result<FiniteGSet> {
        let g = GroupSpec::parse(&self.group)?.build(cap)?;
        FiniteGSet::new(&g, self.size, self.action.clone())
    }
}

/// A space read from a spec: honest `G`-set when possible.
#[derive(Debug, Clone)]
pub enum Space {
    Set(FiniteGSet),
    Virtual(VirtualGSpace),
}

impl Space {
    pub fn to_virtual(&self) -> VirtualGSpace {
        match self {
            Space::Set(x) => x.to_virtual(),
            Space::Virtual(x) => x.clone(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        match self {
            Space::Set(x) => x.group(),
            Space::Virtual(x) => x.group(),
        }
    }
}

/// Text grammar: `pt | free | empty | points:<n> | coset:[i,j,..] |
/// virtual:<chi> | union(<spec>,<spec>) | file:<path>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceSpec {
    Point,
    Free,
    Empty,
    Points(usize),
    Coset(Vec<usize>),
    Virtual(i64),
    Union(Box<SpaceSpec>, Box<SpaceSpec>),
    File(PathBuf),
}

impl SpaceSpec {
    pub fn parse(s: &str) -> Result<Self> {
        match parse_term(s)? {
            Term::Atom { name: "pt", arg: None } => Ok(SpaceSpec::Point),
            Term::Atom { name: "free", arg: None } => Ok(SpaceSpec::Free),
            Term::Atom { name: "empty", arg: None } => Ok(SpaceSpec::Empty),
            Term::Atom { name: "points", arg } => Ok(SpaceSpec::Points(parse_usize(arg, "points")?)),
            Term::Atom { name: "coset", arg: Some(a) } => Ok(SpaceSpec::Coset(parse_index_list(a)?)),
            Term::Atom { name: "virtual", arg: Some(a) } => a
                .parse::<i64>()
                .map(SpaceSpec::Virtual)
                .map_err(|_| Error::parse(format!("virtual: `{a}` is not an integer"))),
            Term::Atom { name: "file", arg: Some(p) } if !p.is_empty() => Ok(SpaceSpec::File(PathBuf::from(p))),
            Term::Call { name: "union", args } if args.len() == 2 => Ok(SpaceSpec::Union(
                Box::new(SpaceSpec::parse(args[0])?),
                Box::new(SpaceSpec::parse(args[1])?),
            )),
            _ => Err(Error::parse(format!("unknown space spec `{}`", s.trim()))),
        }
    }

    /// Builds over `g`. Files carry their own group, which must have the
    /// same label as `g`.
    pub fn build(&self, g: &Arc<FiniteGroup>) -> Result<Space> {
        Ok(match self {
            SpaceSpec::Point => Space::Set(FiniteGSet::point(g)),
            SpaceSpec::Free => Space::Set(FiniteGSet::free(g)),
            SpaceSpec::Empty => Space::Set(FiniteGSet::empty(g)),
            SpaceSpec::Points(n) => Space::Set(FiniteGSet::points(g, *n)),
            SpaceSpec::Coset(gens) => Space::Set(FiniteGSet::coset_space(g, &Subgroup::generated(g, gens)?)?),
            SpaceSpec::Virtual(chi) if *chi >= 0 => Space::Set(FiniteGSet::points(g, *chi as usize)),
            SpaceSpec::Virtual(chi) => Space::Virtual(VirtualGSpace::points(&Subgroup::full(g), *chi)),
            SpaceSpec::Union(a, b) => match (a.build(g)?, b.build(g)?) {
                (Space::Set(x), Space::Set(y)) => Space::Set(x.disjoint_union(&y)?),
                (x, y) => Space::Virtual(x.to_virtual().disjoint_union(&y.to_virtual())?),
            },
            SpaceSpec::File(p) => load_space_file(p, g)?,
        })
    }
}

fn load_space_file(path: &Path, g: &Arc<FiniteGroup>) -> Result<Space> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let group_label = value.get("group").and_then(|v| v.as_str()).unwrap_or_default().to_string();
    let file_group = GroupSpec::parse(&group_label)?.build(usize::MAX)?;
    if file_group.label() != g.label() {
        return Err(Error::GroupMismatch(format!(
            "space file is over `{}` but the group is `{}`",
            file_group.label(),
            g.label()
        )));
    }
    if value.get("cells").is_some() {
        let file: SpaceFile = serde_json::from_value(value)?;
        Ok(Space::Virtual(file.build_over(g)?))
    } else {
        let file: GSetFile = serde_json::from_value(value)?;
        Ok(Space::Set(FiniteGSet::new(g, file.size, file.action)?))
    }
}

pub fn parse_space(spec: &str, g: &Arc<FiniteGroup>) -> Result<Space> {
    SpaceSpec::parse(spec)?.build(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, DEFAULT_ORDER_CAP};

    fn s3() -> Arc<FiniteGroup> {
        build_group("symmetric:3").unwrap()
    }

    #[test]
    fn fixed_euler_examples() {
        let g = s3();
        let full = Subgroup::full(&g);
        assert_eq!(VirtualGSpace::free(&full).fixed_euler(&full).unwrap(), 0);
        assert_eq!(VirtualGSpace::point(&full).fixed_euler(&Subgroup::generated(&g, &[1]).unwrap()).unwrap(), 1);
        let t = Subgroup::generated(&g, &[1]).unwrap();
        let x = VirtualGSpace::orbit(&full, &t).unwrap();
        assert_eq!(x.fixed_euler(&t).unwrap(), 1);
        assert_eq!(x.fixed_euler(&Subgroup::trivial(&g)).unwrap(), x.euler());
        assert_eq!(x.euler(), 3);
        let other = build_group("cyclic:2").unwrap();
        assert!(x.fixed_euler(&Subgroup::full(&other)).is_err());
    }

    #[test]
    fn fixed_euler_matches_gset_counts() {
        let g = s3();
        for gens in [vec![], vec![1], vec![3], vec![1, 3]] {
            let k = Subgroup::generated(&g, &gens).unwrap();
            let x = FiniteGSet::coset_space(&g, &k).unwrap();
            x.validate().unwrap();
            let v = x.to_virtual();
            for h in [vec![], vec![1], vec![2], vec![3], vec![1, 2]] {
                let hs = Subgroup::generated(&g, &h).unwrap();
                assert_eq!(v.fixed_euler(&hs).unwrap(), x.fixed_count(hs.generators()) as i64);
            }
        }
    }

    #[test]
    fn conjugate_stabilizers_give_equal_fixed_counts() {
        let g = s3();
        let full = Subgroup::full(&g);
        let k = Subgroup::generated(&g, &[1]).unwrap();
        for h in g.elements() {
            let a = VirtualGSpace::orbit(&full, &k).unwrap();
            let b = VirtualGSpace::orbit(&full, &k.conjugate_by(h)).unwrap();
            for x in g.elements() {
                assert_eq!(a.fixed_euler_gens(&[x]), b.fixed_euler_gens(&[x]));
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let g = s3();
        let full = Subgroup::full(&g);
        let x = VirtualGSpace::orbit(&full, &Subgroup::generated(&g, &[1]).unwrap()).unwrap();
        let r = x.restrict_to_fixed(g.identity()).unwrap();
        assert_eq!(r.acting().order(), 6);
        for h in g.elements() {
            assert_eq!(r.fixed_euler_gens(&[h]), x.fixed_euler_gens(&[h]));
        }
        assert!(VirtualGSpace::free(&full).restrict_to_fixed(1).unwrap().cells().is_empty());
        let r = x.restrict_to_fixed(1).unwrap();
        assert_eq!(r.acting().order(), 2);
        assert_eq!(r.cells().len(), 1);
        assert_eq!(r.euler(), 1);
    }

    #[test]
    fn restriction_preserves_fixed_counts() {
        let g = build_group("dihedral:4").unwrap();
        let full = Subgroup::full(&g);
        let x = VirtualGSpace::orbit(&full, &Subgroup::generated(&g, &[4]).unwrap())
            .unwrap()
            .disjoint_union(&VirtualGSpace::free(&full))
            .unwrap();
        for a in g.elements() {
            let r = x.restrict_to_fixed(a).unwrap();
            for &h in r.acting().elements() {
                assert_eq!(r.fixed_euler_gens(&[h]), x.fixed_euler_gens(&[a, h]), "g={a} h={h}");
            }
        }
    }

    #[test]
    fn unions_and_induction() {
        let g = s3();
        let full = Subgroup::full(&g);
        let e = FiniteGroup::trivial();
        let p = VirtualGSpace::point_of(&e);
        assert_eq!(p.disjoint_union(&p).unwrap().euler(), 2);
        let x = VirtualGSpace::orbit(&full, &Subgroup::generated(&g, &[1]).unwrap()).unwrap();
        assert_eq!(x.disjoint_union(&VirtualGSpace::empty(&full)).unwrap(), x);
        let xx = x.disjoint_union(&x).unwrap();
        for h in g.elements() {
            assert_eq!(xx.fixed_euler_gens(&[h]), 2 * x.fixed_euler_gens(&[h]));
        }
        assert!(x.disjoint_union(&p).is_err());

        let k = Subgroup::generated(&g, &[1]).unwrap();
        let pt_k = VirtualGSpace::point(&k);
        let ind = pt_k.induce_within(&full).unwrap();
        assert_eq!(ind, x);
        let emb = Embedding::inclusion(&k);
        let pt_local = VirtualGSpace::point_of(&emb.source);
        let ind2 = pt_local.induce(&emb).unwrap();
        assert_eq!(ind2, x);
        assert_eq!(x.induce(&Embedding::identity(&g)).unwrap(), x);
    }

    #[test]
    fn induction_is_transitive() {
        let s4 = build_group("symmetric:4").unwrap();
        let s2 = build_group("symmetric:2").unwrap();
        let s3 = s3();
        let e23 = Embedding::find(&s2, &s3).unwrap().unwrap();
        let e34 = Embedding::find(&s3, &s4).unwrap().unwrap();
        let e24 = e23.then(&e34).unwrap();
        let z = VirtualGSpace::point_of(&s2);
        let two_step = z.induce(&e23).unwrap().induce(&e34).unwrap();
        let direct = z.induce(&e24).unwrap();
        assert_eq!(two_step, direct);
        assert_eq!(direct.euler(), 12);
    }

    #[test]
    fn embeddings_are_validated() {
        let z2 = build_group("cyclic:2").unwrap();
        let z4 = build_group("cyclic:4").unwrap();
        assert!(Embedding::new(&z2, &z4, vec![0, 1]).is_err());
        assert!(Embedding::new(&z2, &z4, vec![0, 2]).is_ok());
        assert!(Embedding::new(&z4, &z2, vec![0, 1, 0, 1]).is_err());
        assert!(Embedding::find(&z4, &build_group("product(cyclic:2,cyclic:2)").unwrap()).unwrap().is_none());
    }

    #[test]
    fn coset_spaces_and_tables() {
        let g = s3();
        let x = FiniteGSet::coset_space(&g, &Subgroup::generated(&g, &[1]).unwrap()).unwrap();
        assert_eq!(x.size(), 3);
        assert_eq!(x.orbits().len(), 1);
        let json = x.to_json("symmetric:3");
        let back = json.build(DEFAULT_ORDER_CAP).unwrap();
        for a in g.elements() {
            for p in 0..3 {
                assert_eq!(back.act(a, p), x.act(a, p));
            }
        }
        let z2 = build_group("cyclic:2").unwrap();
        assert!(FiniteGSet::new(&z2, 2, vec![0, 1, 0, 0]).is_err());
        assert!(FiniteGSet::new(&z2, 2, vec![0, 1, 1, 0]).is_ok());
    }

    #[test]
    fn cartesian_powers() {
        let z2 = build_group("cyclic:2").unwrap();
        let free = FiniteGSet::free(&z2);
        let p = cartesian_power_set(&free, 2, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(p.group().order(), 8);
        p.validate().unwrap();
        assert_eq!(p.orbits().len(), 1);
        let p1 = cartesian_power_set(&free, 1, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(p1.size(), 2);
        for a in z2.elements() {
            for x in 0..2 {
                assert_eq!(p1.act(a, x), free.act(a, x));
            }
        }
        let pt = cartesian_power_set(&FiniteGSet::point(&z2), 3, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(pt.size(), 1);
        assert_eq!(pt.fixed_count(pt.group().generators()), 1);
        let s3 = s3();
        let mixed = FiniteGSet::coset_space(&s3, &Subgroup::generated(&s3, &[1]).unwrap()).unwrap();
        cartesian_power_set(&mixed, 2, DEFAULT_ORDER_CAP).unwrap().validate().unwrap();
    }

    #[test]
    fn space_specs() {
        let g = s3();
        assert!(matches!(parse_space("pt", &g).unwrap(), Space::Set(x) if x.size() == 1));
        assert!(matches!(parse_space("coset:[1]", &g).unwrap(), Space::Set(x) if x.size() == 3));
        assert!(matches!(parse_space("union(free,points:2)", &g).unwrap(), Space::Set(x) if x.size() == 8));
        match parse_space("virtual:-2", &g).unwrap() {
            Space::Virtual(v) => assert_eq!(v.euler(), -2),
            _ => panic!("expected a virtual space"),
        }
        match parse_space("union(virtual:-1,free)", &g).unwrap() {
            Space::Virtual(v) => assert_eq!(v.euler(), 5),
            _ => panic!("expected a virtual space"),
        }
        assert!(parse_space("sphere", &g).is_err());
        let v = VirtualGSpace::points(&Subgroup::full(&g), -3);
        let (p, q) = v.signed_parts().unwrap();
        assert_eq!((p.size(), q.size()), (0, 3));
    }

    #[test]
    fn space_files() {
        let dir = tempfile::tempdir().unwrap();
        let g = s3();
        let x = VirtualGSpace::orbit(&Subgroup::full(&g), &Subgroup::generated(&g, &[1]).unwrap()).unwrap();
        let path = dir.path().join("x.json");
        std::fs::write(&path, serde_json::to_string(&x.to_json("symmetric:3")).unwrap()).unwrap();
        match parse_space(&format!("file:{}", path.display()), &g).unwrap() {
            Space::Virtual(v) => assert_eq!(v, x),
            _ => panic!("expected a virtual space"),
        }
        assert!(parse_space(&format!("file:{}", path.display()), &build_group("cyclic:2").unwrap()).is_err());
    }
}
