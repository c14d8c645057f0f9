//! Finite groups as permutation groups on `{0..n-1}`, stored by full element
//! enumeration.
//!
//! Elements are indexed in lexicographic order of their image tuples, so the
//! identity is always index 0 and every "choose a representative" step in
//! the crate (coset representatives, double-coset representatives, subgroup
//! generators) is reproducible.

mod cosets;
mod subgroup;

pub use cosets::{
    conjugacy_classes, double_cosets, family_tsv, x_y_u_families, DoubleCoset, Families,
    FamilyMember,
};
pub use subgroup::{
    normalizer, p_subgroups_up_to_conjugacy, sylow, SubgroupEmbedding,
};

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};

/// A permutation of `{0..n-1}` stored as its image tuple. The derived `Ord`
/// is the lexicographic order on image tuples.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || seen[x as usize] {
                return input(format!("{images:?} is not a permutation"));
            }
            seen[x as usize] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a as usize >= n || b as usize >= n {
                    return input(format!("cycle {cyc:?} exceeds degree {n}"));
                }
                if touched[a as usize] {
                    return input(format!("cycles are not disjoint at point {a}"));
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Perm::from_images(images)
    }

    /// Parses cycle notation such as `"(0 1)(2 3 4)"`, `"()"`, or an image
    /// tuple such as `"[1, 0, 2]"`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            let images: Vec<u32> = serde_json::from_str(s)
                .map_err(|e| Error::Parse(format!("bad image tuple {s:?}: {e}")))?;
            if images.len() != n {
                return input(format!("image tuple {s:?} has degree {}, expected {n}", images.len()));
            }
            return Perm::from_images(images);
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let body = &open[..close];
            let cyc: Vec<u32> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad point {t:?} in {s:?}")))
                })
                .collect::<Result<_>>()?;
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = open[close + 1..].trim_start();
        }
        Perm::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = vec![start as u32];
            seen[start] = true;
            let mut x = self.0[start] as usize;
            while x != start {
                seen[x] = true;
                cyc.push(x as u32);
                x = self.0[x] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite permutation group with every element enumerated.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    generator_indices: Vec<usize>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    /// Breadth-first tree in the Cayley graph: element `g` equals
    /// `generator[word_step[g].1] * element[word_step[g].0]`.
    word_step: Vec<(u32, u32)>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Closure of the generators, with elements sorted lexicographically.
    pub fn closure(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if degree == 0 {
            return input("permutation degree must be positive");
        }
        for g in &generators {
            if g.degree() != degree {
                return input(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                ));
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        let mut all = Vec::new();
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.compose(&x);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
            all.push(x);
        }
        all.sort();
        Ok(Self::from_sorted_elements(degree, generators, all))
    }

    /// `elements` must be sorted, closed, and contain the generators.
    pub(crate) fn from_sorted_elements(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> Self {
        let n = elements.len();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let mut mul = vec![0u32; n * n];
        for (a, ea) in elements.iter().enumerate() {
            for (b, eb) in elements.iter().enumerate() {
                mul[a * n + b] = index[&ea.compose(eb)] as u32;
            }
        }
        let inv = elements
            .iter()
            .map(|e| index[&e.inverse()] as u32)
            .collect();
        let generator_indices: Vec<usize> = generators.iter().map(|g| index[g]).collect();
        let mut word_step = vec![(u32::MAX, u32::MAX); n];
        word_step[0] = (0, u32::MAX);
        let mut queue = VecDeque::from([0usize]);
        let mut visited = vec![false; n];
        visited[0] = true;
        while let Some(x) = queue.pop_front() {
            for (s, &g) in generator_indices.iter().enumerate() {
                let y = mul[g * n + x] as usize;
                if !visited[y] {
                    visited[y] = true;
                    word_step[y] = (x as u32, s as u32);
                    queue.push_back(y);
                }
            }
        }
        Self {
            degree,
            generators,
            generator_indices,
            elements,
            index,
            mul,
            inv,
            word_step,
        }
    }

    /// Parses generators in cycle or image-tuple notation.
    pub fn from_strings(degree: usize, gens: &[impl AsRef<str>]) -> Result<Self> {
        let perms = gens
            .iter()
            .map(|s| Perm::parse(degree, s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::closure(degree, perms)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    /// Same element list (pointer equality short-circuits).
    pub fn same_group(&self, other: &PermGroup) -> bool {
        std::ptr::eq(self, other) || self.elements == other.elements
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }
    /// Element indices of the generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }
    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }
    pub fn identity(&self) -> usize {
        0
    }
    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elements.len() + b] as usize
    }
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
    /// `g x g^{-1}`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(a, x);
            k += 1;
        }
        k
    }

    /// One step of the Cayley-graph factorization of `g`: `(parent,
    /// generator slot)` with `g = gen[slot] * parent`, or `None` for the
    /// identity.
    pub fn word_step(&self, g: usize) -> Option<(usize, usize)> {
        if g == 0 {
            return None;
        }
        let (parent, s) = self.word_step[g];
        Some((parent as usize, s as usize))
    }

    /// Generator slots whose product (leftmost applied last) equals `g`.
    pub fn word(&self, g: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut x = g;
        while let Some((parent, s)) = self.word_step(x) {
            w.push(s);
            x = parent;
        }
        w
    }

    /// Closure of a set of element indices under multiplication.
    pub fn closure_of(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut out = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !member[y] {
                    member[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// True iff the sorted index set is a subgroup.
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        if elems.is_empty() || elems[0] != 0 {
            return false;
        }
        let n = self.order();
        let mut member = vec![false; n];
        for &e in elems {
            if e >= n {
                return false;
            }
            member[e] = true;
        }
        elems
            .iter()
            .all(|&a| elems.iter().all(|&b| member[self.mul(a, b)]))
    }

    pub fn conjugate_set(&self, g: usize, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&x| self.conj(g, x)).collect();
        out.sort_unstable();
        out
    }

    /// Membership bitmap for an index set.
    pub fn mask(&self, set: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.order()];
        for &x in set {
            m[x] = true;
        }
        m
    }

    /// Some `g` with `g A g^{-1} ⊆ B`, scanning in element order.
    pub fn subconjugating_element(&self, a: &[usize], b: &[usize]) -> Option<usize> {
        if b.len() % a.len() != 0 {
            return None;
        }
        let mb = self.mask(b);
        (0..self.order()).find(|&g| a.iter().all(|&x| mb[self.conj(g, x)]))
    }

    pub fn is_subconjugate(&self, a: &[usize], b: &[usize]) -> bool {
        self.subconjugating_element(a, b).is_some()
    }

    pub fn are_conjugate(&self, a: &[usize], b: &[usize]) -> bool {
        a.len() == b.len() && self.is_subconjugate(a, b)
    }

    /// A small generating set for an index subgroup, chosen greedily in
    /// element order.
    pub fn greedy_generators(&self, elems: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        let target = elems.len();
        for &e in elems {
            if span.len() == target {
                break;
            }
            if span.binary_search(&e).is_ok() {
                continue;
            }
            gens.push(e);
            span = self.closure_of(&gens);
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_cycles_and_tuples() {
        let a = Perm::parse(4, "(0 1)(2 3)").unwrap();
        assert_eq!(a.images(), &[1, 0, 3, 2]);
        assert_eq!(Perm::parse(4, "[1,0,3,2]").unwrap(), a);
        assert_eq!(Perm::parse(3, "()").unwrap(), Perm::identity(3));
        assert_eq!(a.to_string(), "(0 1)(2 3)");
        assert!(Perm::parse(3, "(0 3)").is_err());
        assert!(Perm::parse(3, "(0 1)(1 2)").is_err());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn composition_applies_right_first() {
        let a = Perm::parse(3, "(0 1)").unwrap();
        let b = Perm::parse(3, "(1 2)").unwrap();
        // (a∘b)(1) = a(b(1)) = a(2) = 2
        assert_eq!(a.compose(&b).apply(1), 2);
    }

    #[test]
    fn trivial_closure() {
        let g = PermGroup::closure(3, vec![]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn symmetric_group_s3() {
        let g = PermGroup::from_strings(3, &["(0 1)", "(0 1 2)"]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.element(0).is_identity());
        for w in g.elements().windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn a5_order_matches_brute_force() {
        // Brute force: count even permutations of 5 points.
        let mut even = 0;
        let mut perm: Vec<u32> = (0..5).collect();
        fn heap(k: usize, a: &mut Vec<u32>, sign: &mut i32, count: &mut usize) {
            if k == 1 {
                let p = Perm(a.clone());
                let transpositions: usize = p.cycles().iter().map(|c| c.len() - 1).sum();
                if transpositions % 2 == 0 {
                    *count += 1;
                }
                return;
            }
            for i in 0..k {
                heap(k - 1, a, sign, count);
                if k % 2 == 0 {
                    a.swap(i, k - 1);
                } else {
                    a.swap(0, k - 1);
                }
            }
        }
        heap(5, &mut perm, &mut 1, &mut even);
        assert_eq!(even, 60);
        let a5 = PermGroup::from_strings(5, &["(0 1 2 3 4)", "(2 3 4)"]).unwrap();
        assert_eq!(a5.order(), even);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let a = Perm::parse(3, "(0 1)").unwrap();
        assert!(PermGroup::closure(4, vec![a]).is_err());
    }

    #[test]
    fn words_reconstruct_elements() {
        let g = PermGroup::from_strings(4, &["(0 1 2 3)", "(0 1)"]).unwrap();
        for x in 0..g.order() {
            let mut acc = 0;
            for &s in g.word(x).iter().rev() {
                acc = g.mul(g.generator_indices()[s], acc);
            }
            assert_eq!(acc, x);
        }
    }
}
