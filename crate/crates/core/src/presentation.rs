//! Finitely generated groups `A` given by presentations, and the
//! homomorphism sets `Hom(A, G)` into finite groups.
//!
//! Words are lists of signed 1-based generator indices: `[1, 2, -1, -2]` is
//! the commutator `x_1 x_2 x_1^-1 x_2^-1`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::spec_parse::{parse_term, parse_usize, Term};

/// Default bound on relator evaluations during enumeration.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

pub type Word = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureHint {
    /// `Z^r`
    FreeAbelian(usize),
    /// `Z_m`
    Cyclic(usize),
    Product(Box<FgPresentation>, Box<FgPresentation>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgPresentation {
    generator_count: usize,
    relators: Vec<Word>,
    label: String,
    hint: Option<StructureHint>,
}

/// JSON layout for presentation files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: usize,
    #[serde(default)]
    pub relators: Vec<Word>,
}

fn commutator(i: usize, j: usize) -> Word {
    let (a, b) = (i as i32 + 1, j as i32 + 1);
    vec![a, b, -a, -b]
}

impl FgPresentation {
    /// A presentation without structure hint; relators are validated.
    pub fn new(generator_count: usize, relators: Vec<Word>, label: impl Into<String>) -> Result<Self> {
        for w in &relators {
            for &l in w {
                if l == 0 || l.unsigned_abs() as usize > generator_count {
                    return Err(Error::InvalidPresentation(format!(
                        "letter {l} is not one of {generator_count} generators"
                    )));
                }
            }
        }
        Ok(FgPresentation { generator_count, relators, label: label.into(), hint: None })
    }

    /// `Z^r`: `r` generators, all pairwise commutators. `Z^0` is the
    /// trivial group `cyclic:1`.
    pub fn free_abelian(r: usize) -> Self {
        if r == 0 {
            return FgPresentation::cyclic(1);
        }
        let mut relators = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                relators.push(commutator(i, j));
            }
        }
        FgPresentation {
            generator_count: r,
            relators,
            label: format!("free-abelian:{r}"),
            hint: Some(StructureHint::FreeAbelian(r)),
        }
    }

    /// `Z_m = <x | x^m>`; `m = 1` is the trivial group.
    pub fn cyclic(m: usize) -> Self {
        FgPresentation {
            generator_count: 1,
            relators: vec![vec![1; m]],
            label: format!("cyclic:{m}"),
            hint: Some(StructureHint::Cyclic(m)),
        }
    }

    pub fn trivial() -> Self {
        FgPresentation::cyclic(1)
    }

    /// `A_1 × A_2`: generators concatenated, relators united, plus all
    /// cross commutators.
    pub fn product(a1: &FgPresentation, a2: &FgPresentation) -> Self {
        let shift = a1.generator_count as i32;
        let mut relators = a1.relators.clone();
        relators.extend(a2.relators.iter().map(|w| {
            w.iter().map(|&l| if l > 0 { l + shift } else { l - shift }).collect::<Word>()
        }));
        for i in 0..a1.generator_count {
            for j in 0..a2.generator_count {
                relators.push(commutator(i, a1.generator_count + j));
            }
        }
        FgPresentation {
            generator_count: a1.generator_count + a2.generator_count,
            relators,
            label: format!("product({},{})", a1.label, a2.label),
            hint: Some(StructureHint::Product(Box::new(a1.clone()), Box::new(a2.clone()))),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        let file: PresentationFile = serde_json::from_str(&text)?;
        FgPresentation::new(file.generators, file.relators, format!("file:{}", path.display()))
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn hint(&self) -> Option<&StructureHint> {
        self.hint.as_ref()
    }

    /// Same generators and relators, no hint (forces the generic paths).
    pub fn without_hint(&self) -> Self {
        FgPresentation { hint: None, ..self.clone() }
    }

    pub fn free_abelian_rank(&self) -> Option<usize> {
        match self.hint {
            Some(StructureHint::FreeAbelian(r)) => Some(r),
            _ => None,
        }
    }

    /// `A'` with `A = Z × A'`, when the hint exhibits a `Z` direct factor.
    pub fn z_cofactor(&self) -> Option<FgPresentation> {
        match &self.hint {
            Some(StructureHint::FreeAbelian(r)) if *r >= 1 => Some(FgPresentation::free_abelian(r - 1)),
            Some(StructureHint::Product(a, b)) => {
                if let Some(rest) = a.z_cofactor() {
                    Some(if rest.is_trivial_hint() { (**b).clone() } else { FgPresentation::product(&rest, b) })
                } else {
                    b.z_cofactor().map(|rest| {
                        if rest.is_trivial_hint() {
                            (**a).clone()
                        } else {
                            FgPresentation::product(a, &rest)
                        }
                    })
                }
            }
            _ => None,
        }
    }

    fn is_trivial_hint(&self) -> bool {
        matches!(self.hint, Some(StructureHint::Cyclic(1)))
    }

    /// Checks that the relators match the structure hint exactly.
    pub fn validate_hint(&self) -> Result<()> {
        let expected = match &self.hint {
            None => return Ok(()),
            Some(StructureHint::FreeAbelian(r)) => FgPresentation::free_abelian(*r),
            Some(StructureHint::Cyclic(m)) => FgPresentation::cyclic(*m),
            Some(StructureHint::Product(a, b)) => {
                a.validate_hint()?;
                b.validate_hint()?;
                FgPresentation::product(a, b)
            }
        };
        let normal = |p: &FgPresentation| {
            let mut r = p.relators.clone();
            r.sort();
            r
        };
        if expected.generator_count != self.generator_count || normal(&expected) != normal(self) {
            return Err(Error::InvalidPresentation(format!(
                "relators of `{}` do not match its structure hint",
                self.label
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FgPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Text grammar: `free-abelian:<k> | cyclic:<m> | trivial |
/// product(<spec>,<spec>) | file:<path>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentationSpec {
    FreeAbelian(usize),
    Cyclic(usize),
    Trivial,
    Product(Box<PresentationSpec>, Box<PresentationSpec>),
    File(PathBuf),
}

impl PresentationSpec {
    pub fn parse(s: &str) -> Result<Self> {
        match parse_term(s)? {
            Term::Atom { name: "free-abelian", arg } => {
                Ok(PresentationSpec::FreeAbelian(parse_usize(arg, "free-abelian")?))
            }
            Term::Atom { name: "cyclic", arg } => {
                let m = parse_usize(arg, "cyclic")?;
                if m == 0 {
                    return Err(Error::parse("cyclic:0 is ambiguous; use free-abelian:1 for Z"));
                }
                Ok(PresentationSpec::Cyclic(m))
            }
            Term::Atom { name: "trivial", arg: None } => Ok(PresentationSpec::Trivial),
            Term::Atom { name: "file", arg: Some(p) } if !p.is_empty() => {
                Ok(PresentationSpec::File(PathBuf::from(p)))
            }
            Term::Call { name: "product", args } if args.len() == 2 => Ok(PresentationSpec::Product(
                Box::new(PresentationSpec::parse(args[0])?),
                Box::new(PresentationSpec::parse(args[1])?),
            )),
            _ => Err(Error::parse(format!("unknown presentation spec `{}`", s.trim()))),
        }
    }

    pub fn build(&self) -> Result<FgPresentation> {
        Ok(match self {
            PresentationSpec::FreeAbelian(k) => FgPresentation::free_abelian(*k),
            PresentationSpec::Cyclic(m) => FgPresentation::cyclic(*m),
            PresentationSpec::Trivial => FgPresentation::trivial(),
            PresentationSpec::Product(a, b) => FgPresentation::product(&a.build()?, &b.build()?),
            PresentationSpec::File(p) => FgPresentation::from_file(p)?,
        })
    }
}

pub fn parse_presentation(s: &str) -> Result<FgPresentation> {
    PresentationSpec::parse(s)?.build()
}

/// A homomorphism `A -> G` given by generator images.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    pub target: Arc<FiniteGroup>,
    pub images: Vec<usize>,
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.target, &other.target) && self.images == other.images
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomOrbit {
    pub representative: Homomorphism,
    pub size: usize,
}

pub fn eval_word(g: &FiniteGroup, images: &[usize], word: &[i32]) -> usize {
    word.iter().fold(g.identity(), |acc, &l| {
        let x = images[l.unsigned_abs() as usize - 1];
        g.mul(acc, if l > 0 { x } else { g.inv(x) })
    })
}

struct Counter {
    used: u64,
    limit: u64,
}

impl Counter {
    fn charge(&mut self, n: u64) -> Result<()> {
        self.used += n;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit, hint: String::new() })
        } else {
            Ok(())
        }
    }
}

/// Generic backtracking over generator images in increasing order; a
/// relator is checked as soon as all of its generators are assigned.
pub fn for_each_hom_generic(
    a: &FgPresentation,
    target: &Subgroup,
    budget: u64,
    f: &mut dyn FnMut(&[usize]),
) -> Result<()> {
    let k = a.generator_count;
    let mut buckets: Vec<Vec<&Word>> = vec![Vec::new(); k.max(1)];
    let mut constant = Vec::new();
    for w in &a.relators {
        match w.iter().map(|l| l.unsigned_abs() as usize).max() {
            Some(m) => buckets[m - 1].push(w),
            None => constant.push(w),
        }
    }
    let g = target.parent();
    let mut counter = Counter { used: 0, limit: budget };
    if k == 0 {
        f(&[]);
        return Ok(());
    }
    let mut images = vec![g.identity(); k];
    fn go(
        depth: usize,
        images: &mut Vec<usize>,
        target: &Subgroup,
        buckets: &[Vec<&Word>],
        counter: &mut Counter,
        f: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        let g = target.parent();
        for &x in target.elements() {
            images[depth] = x;
            counter.charge(buckets[depth].len().max(1) as u64)?;
            if buckets[depth].iter().all(|w| eval_word(g, images, w) == g.identity()) {
                if depth + 1 == images.len() {
                    f(images);
                } else {
                    go(depth + 1, images, target, buckets, counter, f)?;
                }
            }
        }
        Ok(())
    }
    go(0, &mut images, target, &buckets, &mut counter, f)
}

/// Enumeration with the structure-hint fast paths: commuting tuples for
/// `Z^r`, order filtering for `Z_m`. Same order as the generic path.
pub fn for_each_hom(
    a: &FgPresentation,
    target: &Subgroup,
    budget: u64,
    f: &mut dyn FnMut(&[usize]),
) -> Result<()> {
    let g = target.parent().clone();
    match a.hint {
        Some(StructureHint::Cyclic(m)) => {
            for &x in target.elements() {
                if g.pow(x, m as u64) == g.identity() {
                    f(&[x]);
                }
            }
            Ok(())
        }
        Some(StructureHint::FreeAbelian(r)) => {
            let mut counter = Counter { used: 0, limit: budget };
            let mut images = Vec::with_capacity(r);
            fn go(
                r: usize,
                pool: &[usize],
                images: &mut Vec<usize>,
                g: &FiniteGroup,
                counter: &mut Counter,
                f: &mut dyn FnMut(&[usize]),
            ) -> Result<()> {
                if images.len() == r {
                    f(images);
                    return Ok(());
                }
                counter.charge(pool.len() as u64)?;
                for &x in pool {
                    images.push(x);
                    if images.len() == r {
                        f(images);
                    } else {
                        let next: Vec<usize> = pool.iter().copied().filter(|&y| g.commute(x, y)).collect();
                        go(r, &next, images, g, counter, f)?;
                    }
                    images.pop();
                }
                Ok(())
            }
            go(r, target.elements(), &mut images, &g, &mut counter, f)
        }
        _ => for_each_hom_generic(a, target, budget, f),
    }
}

pub fn enumerate_homs_into(a: &FgPresentation, target: &Subgroup, budget: u64) -> Result<Vec<Homomorphism>> {
    let mut out = Vec::new();
    let parent = target.parent().clone();
    for_each_hom(a, target, budget, &mut |img| {
        out.push(Homomorphism { target: parent.clone(), images: img.to_vec() })
    })?;
    Ok(out)
}

/// All of `Hom(A, G)`, lexicographic in the image tuples.
pub fn enumerate_homs(a: &FgPresentation, g: &Arc<FiniteGroup>, budget: u64) -> Result<Vec<Homomorphism>> {
    enumerate_homs_into(a, &Subgroup::full(g), budget)
}

pub fn count_homs_generic(a: &FgPresentation, target: &Subgroup, budget: u64) -> Result<u128> {
    let mut n = 0u128;
    for_each_hom_generic(a, target, budget, &mut |_| n += 1)?;
    Ok(n)
}

/// `|Hom(Z^r, S)|` via `Σ_[x] |S|/|C_S(x)| · |Hom(Z^{r-1}, C_S(x))|`.
fn count_commuting_tuples(r: usize, s: &Subgroup) -> u128 {
    if r == 0 {
        return 1;
    }
    if r == 1 {
        return s.order() as u128;
    }
    s.class_reps()
        .into_iter()
        .map(|c| c.size as u128 * count_commuting_tuples(r - 1, &s.centralizer(c.representative)))
        .sum()
}

/// `|Hom(A, S)|` into a subgroup, using the structure hint when present.
pub fn count_homs_into(a: &FgPresentation, target: &Subgroup, budget: u64) -> Result<u128> {
    match &a.hint {
        Some(StructureHint::FreeAbelian(r)) => Ok(count_commuting_tuples(*r, target)),
        Some(StructureHint::Cyclic(m)) => {
            let g = target.parent();
            Ok(target.elements().iter().filter(|&&x| g.pow(x, *m as u64) == g.identity()).count() as u128)
        }
        Some(StructureHint::Product(a1, a2)) => {
            if a1.free_abelian_rank() == Some(1) {
                let mut total = 0u128;
                for c in target.class_reps() {
                    total += c.size as u128 * count_homs_into(a2, &target.centralizer(c.representative), budget)?;
                }
                return Ok(total);
            }
            let mut total = 0u128;
            let mut err = None;
            for_each_hom(a1, target, budget, &mut |img| {
                if err.is_some() {
                    return;
                }
                match count_homs_into(a2, &target.centralizer_of_set(img), budget) {
                    Ok(n) => total += n,
                    Err(e) => err = Some(e),
                }
            })?;
            match err {
                Some(e) => Err(e),
                None => Ok(total),
            }
        }
        None => count_homs_generic(a, target, budget),
    }
}

pub fn count_homs(a: &FgPresentation, g: &Arc<FiniteGroup>, budget: u64) -> Result<u128> {
    count_homs_into(a, &Subgroup::full(g), budget)
}

/// Orbits of `S` acting on `Hom(A, S)` by `(h·φ)(x) = h φ(x) h^-1`, in
/// order of their lexicographically minimal representatives.
pub fn hom_orbits_into(a: &FgPresentation, target: &Subgroup, budget: u64) -> Result<Vec<HomOrbit>> {
    let homs = enumerate_homs_into(a, target, budget)?;
    let g = target.parent();
    let index: HashMap<&[usize], usize> =
        homs.iter().enumerate().map(|(i, h)| (h.images.as_slice(), i)).collect();
    let mut seen = vec![false; homs.len()];
    let mut out = Vec::new();
    for start in 0..homs.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut size = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &s in target.generators() {
                let s_inv = g.inv(s);
                let conj: Vec<usize> = homs[i].images.iter().map(|&x| g.mul(s, g.mul(x, s_inv))).collect();
                let j = index[conj.as_slice()];
                if !seen[j] {
                    seen[j] = true;
                    size += 1;
                    queue.push_back(j);
                }
            }
        }
        out.push(HomOrbit { representative: homs[start].clone(), size });
    }
    Ok(out)
}

pub fn hom_orbits(a: &FgPresentation, g: &Arc<FiniteGroup>, budget: u64) -> Result<Vec<HomOrbit>> {
    hom_orbits_into(a, &Subgroup::full(g), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, direct_product, DEFAULT_ORDER_CAP};

    fn g(spec: &str) -> Arc<FiniteGroup> {
        build_group(spec).unwrap()
    }

    #[test]
    fn spec_examples() {
        let z2 = FgPresentation::cyclic(2);
        assert_eq!(enumerate_homs(&z2, &g("cyclic:2"), DEFAULT_BUDGET).unwrap().len(), 2);
        let z_sq = FgPresentation::free_abelian(2);
        assert_eq!(enumerate_homs(&z_sq, &g("symmetric:3"), DEFAULT_BUDGET).unwrap().len(), 18);
        assert_eq!(enumerate_homs(&z2, &g("dihedral:4"), DEFAULT_BUDGET).unwrap().len(), 6);
        let zz2 = parse_presentation("product(free-abelian:1,cyclic:2)").unwrap();
        assert_eq!(count_homs(&zz2, &g("cyclic:2"), DEFAULT_BUDGET).unwrap(), 4);
        assert_eq!(count_homs(&z_sq, &g("symmetric:3"), DEFAULT_BUDGET).unwrap(), 18);
    }

    #[test]
    fn free_abelian_into_abelian_groups() {
        for spec in ["cyclic:5", "product(cyclic:2,cyclic:4)"] {
            let grp = g(spec);
            for r in 0..4 {
                let a = FgPresentation::free_abelian(r);
                let expected = (grp.order() as u128).pow(r as u32);
                assert_eq!(count_homs(&a, &grp, DEFAULT_BUDGET).unwrap(), expected);
                assert_eq!(
                    count_homs_generic(&a.without_hint(), &Subgroup::full(&grp), DEFAULT_BUDGET).unwrap(),
                    expected
                );
            }
        }
    }

    #[test]
    fn fast_paths_agree_with_generic() {
        let presentations = [
            FgPresentation::free_abelian(1),
            FgPresentation::free_abelian(2),
            FgPresentation::free_abelian(3),
            FgPresentation::cyclic(2),
            FgPresentation::cyclic(3),
            FgPresentation::cyclic(6),
            parse_presentation("product(free-abelian:1,cyclic:2)").unwrap(),
            parse_presentation("product(cyclic:2,cyclic:2)").unwrap(),
            parse_presentation("product(cyclic:3,free-abelian:1)").unwrap(),
        ];
        for spec in ["trivial", "symmetric:3", "dihedral:4", "product(cyclic:2,cyclic:2)", "cyclic:6"] {
            let grp = g(spec);
            let full = Subgroup::full(&grp);
            for a in &presentations {
                let fast = enumerate_homs(a, &grp, DEFAULT_BUDGET).unwrap();
                let mut slow = Vec::new();
                for_each_hom_generic(&a.without_hint(), &full, DEFAULT_BUDGET, &mut |x| slow.push(x.to_vec()))
                    .unwrap();
                let fast: Vec<Vec<usize>> = fast.into_iter().map(|h| h.images).collect();
                assert_eq!(fast, slow, "{a} into {spec}");
                assert_eq!(count_homs(a, &grp, DEFAULT_BUDGET).unwrap(), slow.len() as u128, "{a} into {spec}");
                for imgs in &slow {
                    for w in a.relators() {
                        assert_eq!(eval_word(&grp, imgs, w), grp.identity());
                    }
                }
            }
        }
    }

    #[test]
    fn counts_multiply_over_direct_products() {
        let (g1, g2) = (g("symmetric:3"), g("cyclic:4"));
        let p = direct_product(&g1, &g2, DEFAULT_ORDER_CAP).unwrap();
        for a in [FgPresentation::free_abelian(2), FgPresentation::cyclic(2)] {
            let lhs = count_homs(&a, &p, DEFAULT_BUDGET).unwrap();
            let rhs = count_homs(&a, &g1, DEFAULT_BUDGET).unwrap() * count_homs(&a, &g2, DEFAULT_BUDGET).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn orbits() {
        let z = FgPresentation::free_abelian(1);
        let s3 = g("symmetric:3");
        let orbits = hom_orbits(&z, &s3, DEFAULT_BUDGET).unwrap();
        let sizes: Vec<usize> = orbits.iter().map(|o| o.size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let reps: Vec<usize> = orbits.iter().map(|o| o.representative.images[0]).collect();
        let class_reps: Vec<usize> =
            Subgroup::full(&s3).conjugacy_classes().iter().map(|c| c.representative).collect();
        assert_eq!(reps, class_reps);
        let o = hom_orbits(&FgPresentation::cyclic(2), &g("cyclic:2"), DEFAULT_BUDGET).unwrap();
        assert_eq!(o.iter().map(|o| o.size).collect::<Vec<_>>(), vec![1, 1]);
        let d4 = g("dihedral:4");
        for a in [FgPresentation::free_abelian(2), FgPresentation::cyclic(2)] {
            let orbits = hom_orbits(&a, &d4, DEFAULT_BUDGET).unwrap();
            let total: usize = orbits.iter().map(|o| o.size).sum();
            assert_eq!(total as u128, count_homs(&a, &d4, DEFAULT_BUDGET).unwrap());
            assert!(orbits.iter().all(|o| d4.order() % o.size == 0));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let a = FgPresentation::free_abelian(3).without_hint();
        let err = count_homs_generic(&a, &Subgroup::full(&g("symmetric:4")), 1000).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn hints_validate() {
        FgPresentation::free_abelian(3).validate_hint().unwrap();
        parse_presentation("product(free-abelian:2,cyclic:2)").unwrap().validate_hint().unwrap();
        let mut bogus = FgPresentation::free_abelian(2);
        bogus.relators.pop();
        assert!(bogus.validate_hint().is_err());
        assert!(FgPresentation::new(2, vec![vec![3]], "bad").is_err());
    }

    #[test]
    fn z_cofactors() {
        assert_eq!(FgPresentation::free_abelian(3).z_cofactor().unwrap(), FgPresentation::free_abelian(2));
        assert_eq!(FgPresentation::free_abelian(1).z_cofactor().unwrap(), FgPresentation::trivial());
        let zz2 = parse_presentation("product(free-abelian:1,cyclic:2)").unwrap();
        assert_eq!(zz2.z_cofactor().unwrap(), FgPresentation::cyclic(2));
        let z2z = parse_presentation("product(cyclic:2,free-abelian:1)").unwrap();
        assert_eq!(z2z.z_cofactor().unwrap(), FgPresentation::cyclic(2));
        assert!(FgPresentation::cyclic(2).z_cofactor().is_none());
    }

    #[test]
    fn presentation_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("z2.json");
        std::fs::write(&path, r#"{"generators": 1, "relators": [[1, 1]]}"#).unwrap();
        let a = parse_presentation(&format!("file:{}", path.display())).unwrap();
        assert_eq!(count_homs(&a, &g("symmetric:3"), DEFAULT_BUDGET).unwrap(), 4);
        assert!(parse_presentation("cyclic:0").is_err());
        assert!(parse_presentation("free:2").is_err());
    }
}
