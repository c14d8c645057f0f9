//! Finite groupoids in skeletal coordinates.
//!
//! Every connected component carries a vertex group and every object `x` a
//! fixed transport `τ_x` from the component's base object (its smallest
//! object, with `τ_base = id`). The morphism `(x, y, a)` stands for
//! `τ_y ∘ a ∘ τ_x^{-1}`, so
//!
//! ```text
//! (y, z, b) ∘ (x, y, a) = (x, z, b·a)
//! ```
//!
//! and the whole composition table is determined by the vertex groups.
//! Morphism ids enumerate `(x, y, a)` component by component, in
//! lexicographic order of `(local x, local y, a)`.

mod functor;
mod group;
mod isocomma;
mod json;

pub use functor::{GroupoidFunctor, TwoCell};
pub use group::FiniteGroup;
pub use isocomma::{
    coproduct_relabeling, induced_comparison, is_mackey_square, isocomma, IsocommaResult, Square,
};
pub use json::{FunctorJson, GroupoidJson, MorphismRecord};

use std::sync::Arc;

use crate::error::{input, Result};
use crate::perm::{PermGroup, SubgroupEmbedding};

/// A morphism in vertex coordinates: `τ_tgt ∘ label ∘ τ_src^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor {
    pub src: usize,
    pub tgt: usize,
    pub label: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    objects: Vec<usize>,
    group: Arc<FiniteGroup>,
    offset: usize,
}

impl Component {
    /// Sorted objects; the first is the base.
    pub fn objects(&self) -> &[usize] {
        &self.objects
    }
    pub fn base(&self) -> usize {
        self.objects[0]
    }
    /// The automorphism group of the base object.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn num_morphisms(&self) -> usize {
        self.objects.len() * self.objects.len() * self.group.order()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    labels: Vec<Vec<u32>>,
    comps: Vec<Component>,
    obj_comp: Vec<u32>,
    obj_local: Vec<u32>,
    n_morphisms: usize,
}

impl FiniteGroupoid {
    pub fn empty() -> Self {
        Self {
            labels: Vec::new(),
            comps: Vec::new(),
            obj_comp: Vec::new(),
            obj_local: Vec::new(),
            n_morphisms: 0,
        }
    }

    /// Builds a groupoid from object labels (strictly increasing) and a
    /// partition of the objects into components, each with its vertex group.
    pub fn from_components(
        labels: Vec<Vec<u32>>,
        components: Vec<(Vec<usize>, Arc<FiniteGroup>)>,
    ) -> Result<Self> {
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return input("object labels must be strictly increasing");
        }
        let n = labels.len();
        let mut comps: Vec<(Vec<usize>, Arc<FiniteGroup>)> = components
            .into_iter()
            .map(|(mut objs, g)| {
                objs.sort_unstable();
                (objs, g)
            })
            .collect();
        if comps.iter().any(|(o, _)| o.is_empty()) {
            return input("empty component");
        }
        comps.sort_by_key(|(o, _)| o[0]);
        let mut obj_comp = vec![u32::MAX; n];
        let mut obj_local = vec![0u32; n];
        let mut out = Vec::with_capacity(comps.len());
        let mut offset = 0;
        for (c, (objs, group)) in comps.into_iter().enumerate() {
            for (l, &x) in objs.iter().enumerate() {
                if x >= n || obj_comp[x] != u32::MAX {
                    return input(format!("object {x} is out of range or in two components"));
                }
                obj_comp[x] = c as u32;
                obj_local[x] = l as u32;
            }
            let comp = Component {
                objects: objs,
                group,
                offset,
            };
            offset += comp.num_morphisms();
            out.push(comp);
        }
        if obj_comp.iter().any(|&c| c == u32::MAX) {
            return input("some object lies in no component");
        }
        Ok(Self {
            labels,
            comps: out,
            obj_comp,
            obj_local,
            n_morphisms: offset,
        })
    }

    pub fn one_object(group: Arc<FiniteGroup>) -> Self {
        Self::from_components(vec![vec![0]], vec![(vec![0], group)]).unwrap()
    }

    pub fn from_perm_group(g: &PermGroup) -> Self {
        Self::one_object(Arc::new(FiniteGroup::from_perm_group(g)))
    }

    pub fn num_objects(&self) -> usize {
        self.labels.len()
    }
    pub fn num_morphisms(&self) -> usize {
        self.n_morphisms
    }
    pub fn labels(&self) -> &[Vec<u32>] {
        &self.labels
    }
    pub fn label(&self, x: usize) -> &[u32] {
        &self.labels[x]
    }
    pub fn components(&self) -> &[Component] {
        &self.comps
    }
    pub fn num_components(&self) -> usize {
        self.comps.len()
    }
    #[inline]
    pub fn component_of(&self, x: usize) -> usize {
        self.obj_comp[x] as usize
    }
    #[inline]
    pub fn local_index(&self, x: usize) -> usize {
        self.obj_local[x] as usize
    }
    pub fn vertex_group(&self, x: usize) -> &Arc<FiniteGroup> {
        &self.comps[self.component_of(x)].group
    }
    pub fn connected(&self, x: usize, y: usize) -> bool {
        self.obj_comp[x] == self.obj_comp[y]
    }

    pub fn identity(&self, x: usize) -> Mor {
        Mor {
            src: x,
            tgt: x,
            label: 0,
        }
    }

    /// The transport `τ_x` from the base of `x`'s component.
    pub fn transport(&self, x: usize) -> Mor {
        Mor {
            src: self.comps[self.component_of(x)].base(),
            tgt: x,
            label: 0,
        }
    }

    /// `g ∘ f`; panics if they are not composable.
    #[inline]
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        assert_eq!(f.tgt, g.src, "morphisms are not composable");
        Mor {
            src: f.src,
            tgt: g.tgt,
            label: self.vertex_group(f.src).mul(g.label, f.label),
        }
    }

    #[inline]
    pub fn inverse(&self, f: Mor) -> Mor {
        Mor {
            src: f.tgt,
            tgt: f.src,
            label: self.vertex_group(f.src).inv(f.label),
        }
    }

    pub fn is_valid(&self, f: Mor) -> bool {
        f.src < self.num_objects()
            && f.tgt < self.num_objects()
            && self.connected(f.src, f.tgt)
            && f.label < self.vertex_group(f.src).order()
    }

    #[inline]
    pub fn morphism_id(&self, f: Mor) -> usize {
        let c = &self.comps[self.component_of(f.src)];
        let m = c.objects.len();
        let n = c.group.order();
        c.offset + (self.local_index(f.src) * m + self.local_index(f.tgt)) * n + f.label
    }

    pub fn morphism(&self, id: usize) -> Mor {
        assert!(id < self.n_morphisms, "morphism id out of range");
        let c = match self.comps.binary_search_by(|c| c.offset.cmp(&id)) {
            Ok(c) => {
                // empty components do not exist, so offsets are distinct
                c
            }
            Err(c) => c - 1,
        };
        let comp = &self.comps[c];
        let n = comp.group.order();
        let m = comp.objects.len();
        let r = id - comp.offset;
        let label = r % n;
        let pair = r / n;
        Mor {
            src: comp.objects[pair / m],
            tgt: comp.objects[pair % m],
            label,
        }
    }

    /// Morphisms `x → y` in id order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<Mor> {
        if !self.connected(x, y) {
            return Vec::new();
        }
        (0..self.vertex_group(x).order())
            .map(|label| Mor { src: x, tgt: y, label })
            .collect()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        self.comps.iter().flat_map(|c| {
            let n = c.group.order();
            c.objects.iter().flat_map(move |&x| {
                c.objects
                    .iter()
                    .flat_map(move |&y| (0..n).map(move |label| Mor { src: x, tgt: y, label }))
            })
        })
    }

    /// The full subgroupoid on `objects`, re-indexed in increasing order,
    /// together with its inclusion functor. Vertex coordinates are kept.
    pub fn full_subgroupoid(self: &Arc<Self>, objects: &[usize]) -> Result<(Arc<Self>, GroupoidFunctor)> {
        let mut objs = objects.to_vec();
        objs.sort_unstable();
        objs.dedup();
        if objs.iter().any(|&x| x >= self.num_objects()) {
            return input("object out of range");
        }
        let mut new_index = vec![usize::MAX; self.num_objects()];
        for (i, &x) in objs.iter().enumerate() {
            new_index[x] = i;
        }
        let labels = objs.iter().map(|&x| self.labels[x].clone()).collect();
        let mut comps = Vec::new();
        for c in &self.comps {
            let kept: Vec<usize> = c
                .objects
                .iter()
                .filter(|&&x| new_index[x] != usize::MAX)
                .map(|&x| new_index[x])
                .collect();
            if !kept.is_empty() {
                comps.push((kept, c.group.clone()));
            }
        }
        let sub = Arc::new(Self::from_components(labels, comps)?);
        let object_map = objs.clone();
        // τ_x in the subgroupoid maps to (base', x, 0) in the ambient coordinates
        let transport = vec![0u32; objs.len()];
        let vertex = sub
            .comps
            .iter()
            .map(|c| (0..c.group.order() as u32).collect())
            .collect();
        let inc = GroupoidFunctor::from_structure(sub.clone(), self.clone(), object_map, transport, vertex)?;
        Ok((sub, inc))
    }

    /// Disjoint union with injections. Objects of `a` come first; labels are
    /// prefixed with 0 or 1.
    pub fn coproduct(
        a: &Arc<Self>,
        b: &Arc<Self>,
    ) -> (Arc<Self>, GroupoidFunctor, GroupoidFunctor) {
        let na = a.num_objects();
        let labels = a
            .labels
            .iter()
            .map(|l| std::iter::once(0).chain(l.iter().copied()).collect())
            .chain(
                b.labels
                    .iter()
                    .map(|l| std::iter::once(1).chain(l.iter().copied()).collect()),
            )
            .collect();
        let comps = a
            .comps
            .iter()
            .map(|c| (c.objects.clone(), c.group.clone()))
            .chain(
                b.comps
                    .iter()
                    .map(|c| (c.objects.iter().map(|&x| x + na).collect(), c.group.clone())),
            )
            .collect();
        let sum = Arc::new(Self::from_components(labels, comps).unwrap());
        let inj = |g: &Arc<Self>, shift: usize| {
            GroupoidFunctor::from_structure(
                g.clone(),
                sum.clone(),
                (0..g.num_objects()).map(|x| x + shift).collect(),
                vec![0; g.num_objects()],
                g.comps
                    .iter()
                    .map(|c| (0..c.group.order() as u32).collect())
                    .collect(),
            )
            .unwrap()
        };
        let ia = inj(a, 0);
        let ib = inj(b, na);
        (sum, ia, ib)
    }

    /// Components with their objects and base automorphism groups.
    pub fn connected_components(&self) -> Vec<ComponentInfo> {
        self.comps
            .iter()
            .map(|c| ComponentInfo {
                objects: c.objects.clone(),
                base: c.base(),
                automorphisms: c.group.clone(),
            })
            .collect()
    }

    /// Checks every groupoid axiom by brute force over the morphism list.
    /// Cubic in the number of morphisms per component; meant for small
    /// instances.
    pub fn check_axioms(&self) -> bool {
        let all: Vec<Mor> = self.morphisms().collect();
        if all.len() != self.n_morphisms {
            return false;
        }
        for (i, &f) in all.iter().enumerate() {
            if self.morphism_id(f) != i || self.morphism(i) != f {
                return false;
            }
            let inv = self.inverse(f);
            if self.compose(inv, f) != self.identity(f.src) || self.compose(f, inv) != self.identity(f.tgt) {
                return false;
            }
            if self.compose(f, self.identity(f.src)) != f || self.compose(self.identity(f.tgt), f) != f {
                return false;
            }
        }
        for &f in &all {
            for g in self.hom_from(f.tgt) {
                let gf = self.compose(g, f);
                if gf.src != f.src || gf.tgt != g.tgt {
                    return false;
                }
                for h in self.hom_from(g.tgt) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All morphisms with source `x`.
    pub fn hom_from(&self, x: usize) -> Vec<Mor> {
        let c = &self.comps[self.component_of(x)];
        c.objects.iter().flat_map(|&y| self.hom(x, y)).collect()
    }
}

/// The one-object groupoid of a permutation group.
pub fn group_groupoid(g: &PermGroup) -> Arc<FiniteGroupoid> {
    Arc::new(FiniteGroupoid::from_perm_group(g))
}

/// The inclusion of a subgroup as a functor into the one-object groupoid of
/// its ambient group.
pub fn subgroup_functor(sub: &SubgroupEmbedding, ambient: &Arc<FiniteGroupoid>) -> Result<GroupoidFunctor> {
    if ambient.num_objects() != 1 || ambient.vertex_group(0).order() != sub.ambient().order() {
        return input(format!("{} does not embed in this groupoid", sub.tag()));
    }
    let dom = group_groupoid(sub.group());
    let phi = sub.elements().iter().map(|&g| g as u32).collect();
    GroupoidFunctor::from_group_hom(dom, ambient.clone(), phi)
}

#[derive(Clone, Debug)]
pub struct ComponentInfo {
    pub objects: Vec<usize>,
    pub base: usize,
    pub automorphisms: Arc<FiniteGroup>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<FiniteGroupoid> {
        let g = PermGroup::from_strings(3, &["(0 1)", "(0 1 2)"]).unwrap();
        Arc::new(FiniteGroupoid::from_perm_group(&g))
    }

    fn two_components() -> Arc<FiniteGroupoid> {
        let c2 = Arc::new(FiniteGroup::from_table(2, vec![0, 1, 1, 0]).unwrap());
        let labels = (0..5u32).map(|i| vec![i]).collect();
        Arc::new(
            FiniteGroupoid::from_components(
                labels,
                vec![(vec![0, 3], c2.clone()), (vec![4, 1, 2], Arc::new(FiniteGroup::trivial()))],
            )
            .unwrap(),
        )
    }

    #[test]
    fn axioms_hold() {
        assert!(s3().check_axioms());
        let g = two_components();
        assert!(g.check_axioms());
        assert_eq!(g.num_morphisms(), 4 * 2 + 9);
        assert_eq!(g.components()[1].base(), 1);
    }

    #[test]
    fn ids_round_trip() {
        let g = two_components();
        for i in 0..g.num_morphisms() {
            assert_eq!(g.morphism_id(g.morphism(i)), i);
        }
    }

    #[test]
    fn rejects_bad_partition() {
        let t = Arc::new(FiniteGroup::trivial());
        let labels = vec![vec![0], vec![1]];
        assert!(FiniteGroupoid::from_components(labels.clone(), vec![(vec![0], t.clone())]).is_err());
        assert!(FiniteGroupoid::from_components(
            labels.clone(),
            vec![(vec![0, 1], t.clone()), (vec![1], t.clone())]
        )
        .is_err());
        assert!(FiniteGroupoid::from_components(vec![vec![1], vec![0]], vec![(vec![0, 1], t)]).is_err());
    }

    #[test]
    fn coproduct_counts() {
        let a = s3();
        let b = two_components();
        let (sum, ia, ib) = FiniteGroupoid::coproduct(&a, &b);
        assert_eq!(sum.num_objects(), 6);
        assert_eq!(sum.num_components(), 3);
        assert_eq!(sum.num_morphisms(), a.num_morphisms() + b.num_morphisms());
        assert!(ia.is_faithful() && ib.is_faithful());
        assert!(sum.check_axioms());
        let empty = Arc::new(FiniteGroupoid::empty());
        let (s, i, _) = FiniteGroupoid::coproduct(&a, &empty);
        assert!(i.is_equivalence());
        assert_eq!(s.num_morphisms(), a.num_morphisms());
    }

    #[test]
    fn full_subgroupoid_keeps_composition() {
        let g = two_components();
        let (sub, inc) = g.full_subgroupoid(&[2, 3, 4]).unwrap();
        assert_eq!(sub.num_objects(), 3);
        assert_eq!(sub.num_components(), 2);
        assert!(sub.check_axioms());
        assert!(inc.is_equivalence());
        inc.validate_exhaustively().unwrap();
        let (one, inc) = g.full_subgroupoid(&[3]).unwrap();
        assert_eq!(one.num_components(), 1);
        assert!(inc.is_faithful() && inc.is_full());
        assert!(!inc.is_essentially_surjective());
        inc.validate_exhaustively().unwrap();
    }
}
