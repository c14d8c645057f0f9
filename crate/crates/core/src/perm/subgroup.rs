use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::{Perm, PermGroup};
use crate::error::{input, Error, Result};

const ABSENT: u32 = u32::MAX;

/// A subgroup of a permutation group, stored as the sorted list of ambient
/// element indices together with the subgroup as a group in its own right.
///
/// Because ambient elements are sorted lexicographically, local index `i`
/// and ambient index `to_ambient[i]` are both increasing in the same order.
#[derive(Clone)]
pub struct SubgroupEmbedding {
    ambient: Arc<PermGroup>,
    group: Arc<PermGroup>,
    to_ambient: Vec<usize>,
    from_ambient: Arc<Vec<u32>>,
    tag: String,
}

impl fmt::Debug for SubgroupEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupEmbedding")
            .field("tag", &self.tag)
            .field("order", &self.order())
            .field("generators", &self.group.generators())
            .finish()
    }
}

impl SubgroupEmbedding {
    /// The subgroup with the given ambient element indices.
    pub fn new(ambient: Arc<PermGroup>, elements: Vec<usize>, tag: impl Into<String>) -> Result<Self> {
        let mut elements = elements;
        elements.sort_unstable();
        elements.dedup();
        if !ambient.is_subgroup(&elements) {
            return input("element set is not a subgroup of the ambient group");
        }
        Ok(Self::from_valid(ambient, elements, tag.into()))
    }

    pub(crate) fn from_valid(ambient: Arc<PermGroup>, elements: Vec<usize>, tag: String) -> Self {
        let gens_idx = ambient.greedy_generators(&elements);
        let gens: Vec<Perm> = gens_idx.iter().map(|&g| ambient.element(g).clone()).collect();
        let perms: Vec<Perm> = elements.iter().map(|&g| ambient.element(g).clone()).collect();
        let group = Arc::new(PermGroup::from_sorted_elements(ambient.degree(), gens, perms));
        let mut from_ambient = vec![ABSENT; ambient.order()];
        for (i, &g) in elements.iter().enumerate() {
            from_ambient[g] = i as u32;
        }
        Self {
            ambient,
            group,
            to_ambient: elements,
            from_ambient: Arc::new(from_ambient),
            tag,
        }
    }

    /// The subgroup generated by ambient elements.
    pub fn generated_by(ambient: Arc<PermGroup>, gens: &[usize], tag: impl Into<String>) -> Self {
        let elements = ambient.closure_of(gens);
        Self::from_valid(ambient, elements, tag.into())
    }

    /// The subgroup generated by permutations, which must lie in the ambient
    /// group.
    pub fn from_perms(ambient: Arc<PermGroup>, gens: &[Perm], tag: impl Into<String>) -> Result<Self> {
        let idx = gens
            .iter()
            .map(|g| {
                ambient
                    .index_of(g)
                    .ok_or_else(|| Error::Input(format!("{g} is not in the ambient group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::generated_by(ambient, &idx, tag))
    }

    pub fn whole(ambient: Arc<PermGroup>, tag: impl Into<String>) -> Self {
        let all = (0..ambient.order()).collect();
        Self::from_valid(ambient, all, tag.into())
    }

    pub fn trivial(ambient: Arc<PermGroup>, tag: impl Into<String>) -> Self {
        Self::from_valid(ambient, vec![0], tag.into())
    }

    pub fn ambient(&self) -> &Arc<PermGroup> {
        &self.ambient
    }
    /// The subgroup as a permutation group in its own right.
    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }
    pub fn tag(&self) -> &str {
        &self.tag
    }
    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = tag.into();
        self
    }
    pub fn order(&self) -> usize {
        self.to_ambient.len()
    }
    pub fn index(&self) -> usize {
        self.ambient.order() / self.order()
    }
    /// Sorted ambient indices of the elements.
    pub fn elements(&self) -> &[usize] {
        &self.to_ambient
    }
    pub fn to_ambient(&self, local: usize) -> usize {
        self.to_ambient[local]
    }
    pub fn to_local(&self, g: usize) -> Option<usize> {
        match self.from_ambient[g] {
            ABSENT => None,
            i => Some(i as usize),
        }
    }
    pub fn contains(&self, g: usize) -> bool {
        self.from_ambient[g] != ABSENT
    }
    /// Ambient indices of the generators of the subgroup.
    pub fn generators(&self) -> Vec<usize> {
        self.group
            .generator_indices()
            .iter()
            .map(|&i| self.to_ambient[i])
            .collect()
    }

    pub fn same_ambient(&self, other: &SubgroupEmbedding) -> bool {
        self.ambient.same_group(&other.ambient)
    }

    pub fn is_contained_in(&self, other: &SubgroupEmbedding) -> bool {
        self.same_ambient(other) && self.to_ambient.iter().all(|&g| other.contains(g))
    }

    pub fn same_subgroup(&self, other: &SubgroupEmbedding) -> bool {
        self.same_ambient(other) && self.to_ambient == other.to_ambient
    }

    pub fn is_normal(&self) -> bool {
        self.ambient.generator_indices().iter().all(|&g| {
            self.to_ambient
                .iter()
                .all(|&x| self.contains(self.ambient.conj(g, x)))
        })
    }

    /// `g S g^{-1}`
    pub fn conjugate(&self, g: usize) -> Self {
        let elems = self.ambient.conjugate_set(g, &self.to_ambient);
        Self::from_valid(self.ambient.clone(), elems, format!("{}^{}", self.tag, g))
    }

    pub fn intersection(&self, other: &SubgroupEmbedding) -> Self {
        let elems: Vec<usize> = self
            .to_ambient
            .iter()
            .copied()
            .filter(|&g| other.contains(g))
            .collect();
        Self::from_valid(
            self.ambient.clone(),
            elems,
            format!("{}∩{}", self.tag, other.tag),
        )
    }

    pub fn is_conjugate_to(&self, other: &SubgroupEmbedding) -> bool {
        self.same_ambient(other) && self.ambient.are_conjugate(&self.to_ambient, &other.to_ambient)
    }

    pub fn is_subconjugate_to(&self, other: &SubgroupEmbedding) -> bool {
        self.same_ambient(other) && self.ambient.is_subconjugate(&self.to_ambient, &other.to_ambient)
    }

    /// This subgroup viewed inside `outer`, which must contain it.
    pub fn relative_to(&self, outer: &SubgroupEmbedding) -> Result<Self> {
        if !self.is_contained_in(outer) {
            return input(format!("{} is not contained in {}", self.tag, outer.tag));
        }
        let elems = self
            .to_ambient
            .iter()
            .map(|&g| outer.to_local(g).unwrap())
            .collect();
        Ok(Self::from_valid(outer.group.clone(), elems, self.tag.clone()))
    }

    /// Inverse of `relative_to`: a subgroup of `outer.group()` viewed in
    /// the ambient group of `outer`.
    pub fn lifted_through(&self, outer: &SubgroupEmbedding) -> Result<Self> {
        if !self.ambient.same_group(&outer.group) {
            return input(format!("{} is not a subgroup of {}", self.tag, outer.tag));
        }
        let elems = self.to_ambient.iter().map(|&x| outer.to_ambient(x)).collect();
        Ok(Self::from_valid(outer.ambient.clone(), elems, self.tag.clone()))
    }

    /// Left cosets `tS`, each represented by its minimal element, in
    /// increasing order of representatives.
    pub fn left_coset_reps(&self) -> Vec<usize> {
        let n = self.ambient.order();
        let mut seen = vec![false; n];
        let mut reps = Vec::with_capacity(self.index());
        for t in 0..n {
            if seen[t] {
                continue;
            }
            reps.push(t);
            for &h in &self.to_ambient {
                seen[self.ambient.mul(t, h)] = true;
            }
        }
        reps
    }

    /// Generators in cycle notation.
    pub fn generator_strings(&self) -> Vec<String> {
        self.group.generators().iter().map(|g| g.to_string()).collect()
    }
}

/// `N_G(D) = {g : g D g^{-1} = D}` by exhaustive conjugation.
pub fn normalizer(d: &SubgroupEmbedding) -> SubgroupEmbedding {
    let g = d.ambient();
    let elems: Vec<usize> = (0..g.order())
        .filter(|&x| d.elements().iter().all(|&y| d.contains(g.conj(x, y))))
        .collect();
    SubgroupEmbedding::from_valid(g.clone(), elems, format!("N({})", d.tag()))
}

fn p_part(mut n: usize, p: usize) -> usize {
    let mut part = 1;
    while n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

/// A Sylow `p`-subgroup of `g` (a subgroup of its ambient group).
///
/// Grows a `p`-subgroup one step at a time by adjoining the smallest element
/// `x` of `N(P) \ P` with `x^p ∈ P`; such an `x` exists while `P` is not
/// Sylow, so no backtracking is needed.
pub fn sylow(g: &SubgroupEmbedding, p: u32) -> Result<SubgroupEmbedding> {
    if !crate::fp::is_prime(p) {
        return input(format!("{p} is not prime"));
    }
    let p = p as usize;
    let amb = g.ambient();
    let target = p_part(g.order(), p);
    let mut current = vec![0usize];
    while current.len() < target {
        let mask = amb.mask(&current);
        let next = g.elements().iter().copied().find(|&x| {
            if mask[x] {
                return false;
            }
            let normalizes = current.iter().all(|&y| mask[amb.conj(x, y)]);
            if !normalizes {
                return false;
            }
            let mut xp = 0;
            for _ in 0..p {
                xp = amb.mul(x, xp);
            }
            mask[xp]
        });
        let Some(x) = next else {
            return Err(Error::TheoremViolation(format!(
                "Sylow growth stalled at order {} below {target}",
                current.len()
            )));
        };
        let mut gens = amb.greedy_generators(&current);
        gens.push(x);
        current = amb.closure_of(&gens);
    }
    if current.len() != target {
        return Err(Error::TheoremViolation(format!(
            "Sylow candidate has order {}, expected {target}",
            current.len()
        )));
    }
    Ok(SubgroupEmbedding::from_valid(
        amb.clone(),
        current,
        format!("Syl{p}({})", g.tag()),
    ))
}

fn is_prime_power(n: usize) -> bool {
    if n == 1 {
        return true;
    }
    let p = (2..=n).find(|d| n % d == 0).unwrap();
    p_part(n, p) == n
}

/// All subgroups of the `p`-group `q`, up to conjugacy in the ambient group,
/// sorted by order descending (ties by element list).
pub fn p_subgroups_up_to_conjugacy(q: &SubgroupEmbedding) -> Result<Vec<SubgroupEmbedding>> {
    if !is_prime_power(q.order()) {
        return input(format!("{} has order {}, not a prime power", q.tag(), q.order()));
    }
    let amb = q.ambient();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut all = vec![vec![0usize]];
    seen.insert(vec![0]);
    let mut frontier = 0;
    while frontier < all.len() {
        let s = all[frontier].clone();
        frontier += 1;
        let mask = amb.mask(&s);
        for &x in q.elements() {
            if mask[x] {
                continue;
            }
            let mut gens = amb.greedy_generators(&s);
            gens.push(x);
            let t = amb.closure_of(&gens);
            if seen.insert(t.clone()) {
                all.push(t);
            }
        }
    }
    all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut reps: Vec<Vec<usize>> = Vec::new();
    for s in all {
        if !reps.iter().any(|r| amb.are_conjugate(r, &s)) {
            reps.push(s);
        }
    }
    Ok(reps
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let tag = format!("Q{}_{}", s.len(), i);
            SubgroupEmbedding::from_valid(amb.clone(), s, tag)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&str]) -> Arc<PermGroup> {
        Arc::new(PermGroup::from_strings(n, gens).unwrap())
    }

    fn sub(g: &Arc<PermGroup>, gens: &[&str]) -> SubgroupEmbedding {
        let perms: Vec<Perm> = gens.iter().map(|s| Perm::parse(g.degree(), s).unwrap()).collect();
        SubgroupEmbedding::from_perms(g.clone(), &perms, "S").unwrap()
    }

    #[test]
    fn rejects_non_subgroup() {
        let s3 = group(3, &["(0 1)", "(0 1 2)"]);
        let t = s3.index_of(&Perm::parse(3, "(0 1)").unwrap()).unwrap();
        assert!(SubgroupEmbedding::new(s3.clone(), vec![t], "bad").is_err());
        assert!(SubgroupEmbedding::new(s3, vec![0, t], "ok").is_ok());
    }

    #[test]
    fn normalizers() {
        let s3 = group(3, &["(0 1)", "(0 1 2)"]);
        let c2 = sub(&s3, &["(0 1)"]);
        assert_eq!(normalizer(&c2).order(), 2);
        let c3 = sub(&s3, &["(0 1 2)"]);
        assert_eq!(normalizer(&c3).order(), 6);
        assert!(c3.is_normal());
        assert!(!c2.is_normal());

        let a5 = group(5, &["(0 1 2 3 4)", "(2 3 4)"]);
        let v4 = sub(&a5, &["(0 1)(2 3)", "(0 2)(1 3)"]);
        assert_eq!(v4.order(), 4);
        let n = normalizer(&v4);
        assert_eq!(n.order(), 12);
        // exhaustive oracle: count g with g V g^-1 = V directly on permutations
        let v: HashSet<Perm> = v4.elements().iter().map(|&i| a5.element(i).clone()).collect();
        let count = a5
            .elements()
            .iter()
            .filter(|g| {
                v.iter()
                    .all(|x| v.contains(&g.compose(x).compose(&g.inverse())))
            })
            .count();
        assert_eq!(count, 12);
    }

    #[test]
    fn sylow_orders() {
        let s4 = group(4, &["(0 1)", "(0 1 2 3)"]);
        let p = sylow(&SubgroupEmbedding::whole(s4, "S4"), 2).unwrap();
        assert_eq!(p.order(), 8);

        let a5 = group(5, &["(0 1 2 3 4)", "(2 3 4)"]);
        let p = sylow(&SubgroupEmbedding::whole(a5.clone(), "A5"), 2).unwrap();
        assert_eq!(p.order(), 4);
        for &x in &p.elements()[1..] {
            assert_eq!(a5.element_order(x), 2);
        }
        assert_eq!(sylow(&SubgroupEmbedding::whole(a5.clone(), "A5"), 5).unwrap().order(), 5);
        assert_eq!(sylow(&SubgroupEmbedding::whole(a5, "A5"), 7).unwrap().order(), 1);

        let c4 = group(4, &["(0 1 2 3)"]);
        assert_eq!(sylow(&SubgroupEmbedding::whole(c4, "C4"), 2).unwrap().order(), 4);
    }

    #[test]
    fn p_subgroups() {
        let a5 = group(5, &["(0 1 2 3 4)", "(2 3 4)"]);
        let v4 = sub(&a5, &["(0 1)(2 3)", "(0 2)(1 3)"]);
        let classes = p_subgroups_up_to_conjugacy(&v4).unwrap();
        let orders: Vec<usize> = classes.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![4, 2, 1]);

        let s3 = group(3, &["(0 1)", "(0 1 2)"]);
        let c2 = sub(&s3, &["(0 1)"]);
        let orders: Vec<usize> = p_subgroups_up_to_conjugacy(&c2)
            .unwrap()
            .iter()
            .map(|s| s.order())
            .collect();
        assert_eq!(orders, vec![2, 1]);
        let triv = SubgroupEmbedding::trivial(s3.clone(), "1");
        assert_eq!(p_subgroups_up_to_conjugacy(&triv).unwrap().len(), 1);
        assert!(p_subgroups_up_to_conjugacy(&SubgroupEmbedding::whole(s3, "S3")).is_err());
    }

    #[test]
    fn d8_in_s4_subgroup_classes() {
        // D8 has 10 subgroups; up to S4-conjugacy: D8, C4, V4 (normal), V4 (other),
        // C2 (double transposition), C2 (transposition), 1.
        let s4 = group(4, &["(0 1)", "(0 1 2 3)"]);
        let d8 = sub(&s4, &["(0 1 2 3)", "(0 2)"]);
        let orders: Vec<usize> = p_subgroups_up_to_conjugacy(&d8)
            .unwrap()
            .iter()
            .map(|s| s.order())
            .collect();
        assert_eq!(orders, vec![8, 4, 4, 4, 2, 2, 1]);
    }

    #[test]
    fn coset_reps_partition() {
        let s4 = group(4, &["(0 1)", "(0 1 2 3)"]);
        let d8 = sub(&s4, &["(0 1 2 3)", "(0 2)"]);
        let reps = d8.left_coset_reps();
        assert_eq!(reps.len(), 3);
        assert_eq!(reps[0], 0);
        let mut seen = HashSet::new();
        for &t in &reps {
            for &h in d8.elements() {
                assert!(seen.insert(s4.mul(t, h)));
            }
        }
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn relative_embedding() {
        let s4 = group(4, &["(0 1)", "(0 1 2 3)"]);
        let d8 = sub(&s4, &["(0 1 2 3)", "(0 2)"]);
        let c4 = sub(&s4, &["(0 1 2 3)"]);
        let rel = c4.relative_to(&d8).unwrap();
        assert_eq!(rel.ambient().order(), 8);
        assert_eq!(rel.order(), 4);
        assert!(d8.relative_to(&c4).is_err());
    }
}
