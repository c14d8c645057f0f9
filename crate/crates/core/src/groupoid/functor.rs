use std::sync::Arc;

use super::{FiniteGroupoid, Mor};
use crate::error::{input, Error, Result};

pub(crate) fn same(a: &Arc<FiniteGroupoid>, b: &Arc<FiniteGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A functor between finite groupoids, stored by its action on transports
/// and vertex groups.
///
/// For a domain component with base `b`, `transport[x]` is the label of
/// `F(τ_x)` as a morphism `F(b) → F(x)` and `vertex[c][a]` is the label of
/// `F(b, b, a)`. Then `F(x, y, a) = (Fx, Fy, k_y · φ(a) · k_x^{-1})`.
#[derive(Clone, Debug)]
pub struct GroupoidFunctor {
    domain: Arc<FiniteGroupoid>,
    codomain: Arc<FiniteGroupoid>,
    object_map: Vec<u32>,
    transport: Vec<u32>,
    vertex: Vec<Vec<u32>>,
    comp_map: Vec<u32>,
    faithful: bool,
}

impl PartialEq for GroupoidFunctor {
    fn eq(&self, other: &Self) -> bool {
        same(&self.domain, &other.domain)
            && same(&self.codomain, &other.codomain)
            && self.object_map == other.object_map
            && self.transport == other.transport
            && self.vertex == other.vertex
    }
}

impl GroupoidFunctor {
    pub fn from_structure(
        domain: Arc<FiniteGroupoid>,
        codomain: Arc<FiniteGroupoid>,
        object_map: Vec<usize>,
        transport: Vec<u32>,
        vertex: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let n = domain.num_objects();
        if object_map.len() != n || transport.len() != n || vertex.len() != domain.num_components() {
            return input("functor data does not match the domain");
        }
        if object_map.iter().any(|&y| y >= codomain.num_objects()) {
            return input("object image out of range");
        }
        let mut comp_map = Vec::with_capacity(domain.num_components());
        for (c, comp) in domain.components().iter().enumerate() {
            let d = codomain.component_of(object_map[comp.base()]);
            let cod_group = &codomain.components()[d].group;
            for &x in comp.objects() {
                if codomain.component_of(object_map[x]) != d {
                    return input("a connected pair of objects maps to different components");
                }
                if transport[x] as usize >= cod_group.order() {
                    return input("transport label out of range");
                }
            }
            if transport[comp.base()] != 0 {
                return input("transport of a base object must be the identity");
            }
            if !comp.group.is_hom_into(cod_group, &vertex[c]) {
                return input("vertex map is not a group homomorphism");
            }
            comp_map.push(d as u32);
        }
        let faithful = vertex.iter().all(|phi| {
            let mut v = phi.clone();
            v.sort_unstable();
            v.dedup();
            v.len() == phi.len()
        });
        Ok(Self {
            domain,
            codomain,
            object_map: object_map.into_iter().map(|y| y as u32).collect(),
            transport,
            vertex,
            comp_map,
            faithful,
        })
    }

    /// Builds a functor from explicit object and morphism maps (by id),
    /// checking that the morphism map is a functor.
    pub fn from_maps(
        domain: Arc<FiniteGroupoid>,
        codomain: Arc<FiniteGroupoid>,
        object_map: Vec<usize>,
        morphism_map: &[usize],
    ) -> Result<Self> {
        if morphism_map.len() != domain.num_morphisms() || object_map.len() != domain.num_objects() {
            return input("functor maps do not match the domain");
        }
        if morphism_map.iter().any(|&m| m >= codomain.num_morphisms()) {
            return input("morphism image out of range");
        }
        let img = |f: Mor| codomain.morphism(morphism_map[domain.morphism_id(f)]);
        let mut transport = vec![0u32; domain.num_objects()];
        let mut vertex = Vec::new();
        for comp in domain.components() {
            let b = comp.base();
            for &x in comp.objects() {
                let t = img(domain.transport(x));
                if t.src != object_map[b] || t.tgt != object_map[x] {
                    return input("morphism map does not respect sources and targets");
                }
                transport[x] = t.label as u32;
            }
            let mut phi = Vec::with_capacity(comp.group.order());
            for a in 0..comp.group.order() {
                let t = img(Mor { src: b, tgt: b, label: a });
                if t.src != object_map[b] || t.tgt != object_map[b] {
                    return input("morphism map does not respect sources and targets");
                }
                phi.push(t.label as u32);
            }
            vertex.push(phi);
        }
        let f = Self::from_structure(domain.clone(), codomain.clone(), object_map, transport, vertex)?;
        for m in domain.morphisms() {
            if f.apply(m) != img(m) {
                return input("morphism map does not preserve composition");
            }
        }
        Ok(f)
    }

    pub fn identity(g: &Arc<FiniteGroupoid>) -> Self {
        Self::from_structure(
            g.clone(),
            g.clone(),
            (0..g.num_objects()).collect(),
            vec![0; g.num_objects()],
            g.components()
                .iter()
                .map(|c| (0..c.group.order() as u32).collect())
                .collect(),
        )
        .unwrap()
    }

    /// A functor between one-object groupoids given by a group homomorphism.
    pub fn from_group_hom(
        domain: Arc<FiniteGroupoid>,
        codomain: Arc<FiniteGroupoid>,
        phi: Vec<u32>,
    ) -> Result<Self> {
        if domain.num_objects() != 1 || codomain.num_objects() != 1 {
            return input("group homomorphisms need one-object groupoids");
        }
        Self::from_structure(domain, codomain, vec![0], vec![0], vec![phi])
    }

    pub fn domain(&self) -> &Arc<FiniteGroupoid> {
        &self.domain
    }
    pub fn codomain(&self) -> &Arc<FiniteGroupoid> {
        &self.codomain
    }
    #[inline]
    pub fn apply_object(&self, x: usize) -> usize {
        self.object_map[x] as usize
    }
    pub fn object_map(&self) -> Vec<usize> {
        self.object_map.iter().map(|&y| y as usize).collect()
    }
    /// Per domain component, the codomain component it lands in.
    pub fn component_map(&self) -> Vec<usize> {
        self.comp_map.iter().map(|&d| d as usize).collect()
    }
    pub fn vertex_map(&self, c: usize) -> &[u32] {
        &self.vertex[c]
    }
    pub fn transport_labels(&self) -> &[u32] {
        &self.transport
    }

    #[inline]
    pub fn apply(&self, f: Mor) -> Mor {
        let c = self.domain.component_of(f.src);
        let g = &self.codomain.components()[self.comp_map[c] as usize].group;
        let phi = self.vertex[c][f.label] as usize;
        let kx = self.transport[f.src] as usize;
        let ky = self.transport[f.tgt] as usize;
        Mor {
            src: self.object_map[f.src] as usize,
            tgt: self.object_map[f.tgt] as usize,
            label: g.mul(g.mul(ky, phi), g.inv(kx)),
        }
    }

    pub fn apply_id(&self, id: usize) -> usize {
        self.codomain.morphism_id(self.apply(self.domain.morphism(id)))
    }

    pub fn morphism_map(&self) -> Vec<usize> {
        self.domain
            .morphisms()
            .map(|m| self.codomain.morphism_id(self.apply(m)))
            .collect()
    }

    /// `g ∘ f`.
    pub fn compose(g: &GroupoidFunctor, f: &GroupoidFunctor) -> Result<Self> {
        if !same(&f.codomain, &g.domain) {
            return input("functors are not composable");
        }
        let object_map = f.object_map.iter().map(|&y| g.apply_object(y as usize)).collect();
        let mut transport = vec![0u32; f.domain.num_objects()];
        let mut vertex = Vec::with_capacity(f.domain.num_components());
        for comp in f.domain.components() {
            let b = comp.base();
            for &x in comp.objects() {
                transport[x] = g.apply(f.apply(f.domain.transport(x))).label as u32;
            }
            let phi = (0..comp.group.order())
                .map(|a| g.apply(f.apply(Mor { src: b, tgt: b, label: a })).label as u32)
                .collect();
            vertex.push(phi);
        }
        Self::from_structure(f.domain.clone(), g.codomain.clone(), object_map, transport, vertex)
    }

    /// The same functor with codomain narrowed to a full subgroupoid,
    /// given by its inclusion (as produced by `full_subgroupoid`).
    pub fn corestrict(&self, inclusion: &GroupoidFunctor) -> Result<Self> {
        if !same(inclusion.codomain(), &self.codomain) {
            return input("inclusion does not land in this functor's codomain");
        }
        let trivial_coords = inclusion.transport.iter().all(|&t| t == 0)
            && inclusion
                .vertex
                .iter()
                .all(|phi| phi.iter().enumerate().all(|(a, &b)| a as u32 == b));
        if !trivial_coords {
            return input("corestriction needs a full-subgroupoid inclusion");
        }
        let mut back = vec![u32::MAX; self.codomain.num_objects()];
        for (z, &y) in inclusion.object_map.iter().enumerate() {
            back[y as usize] = z as u32;
        }
        let object_map = self
            .object_map
            .iter()
            .map(|&y| match back[y as usize] {
                u32::MAX => input(format!("object {y} is outside the subgroupoid")),
                z => Ok(z as usize),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_structure(
            self.domain.clone(),
            inclusion.domain.clone(),
            object_map,
            self.transport.clone(),
            self.vertex.clone(),
        )
    }

    /// Injective on every hom-set.
    pub fn is_faithful(&self) -> bool {
        self.faithful
    }

    /// Surjective on every hom-set: distinct components stay apart and every
    /// vertex map is onto.
    pub fn is_full(&self) -> bool {
        let mut seen = vec![false; self.codomain.num_components()];
        for (c, &d) in self.comp_map.iter().enumerate() {
            if std::mem::replace(&mut seen[d as usize], true) {
                return false;
            }
            let target = self.codomain.components()[d as usize].group.order();
            let mut hit = vec![false; target];
            for &v in &self.vertex[c] {
                hit[v as usize] = true;
            }
            if hit.iter().any(|&h| !h) {
                return false;
            }
        }
        true
    }

    /// Every codomain component contains an image object.
    pub fn is_essentially_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.num_components()];
        for &d in &self.comp_map {
            hit[d as usize] = true;
        }
        hit.iter().all(|&h| h)
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_faithful() && self.is_full() && self.is_essentially_surjective()
    }

    /// True iff the functor is bijective on objects and an equivalence.
    pub fn is_isomorphism(&self) -> bool {
        let mut seen = vec![false; self.codomain.num_objects()];
        for &y in &self.object_map {
            if std::mem::replace(&mut seen[y as usize], true) {
                return false;
            }
        }
        seen.iter().all(|&s| s) && self.is_equivalence()
    }

    /// Brute-force check of the functor laws and of the cached
    /// faithfulness flag on the explicit morphism map.
    pub fn validate_exhaustively(&self) -> Result<()> {
        let dom = &self.domain;
        let cod = &self.codomain;
        for x in 0..dom.num_objects() {
            if self.apply(dom.identity(x)) != cod.identity(self.apply_object(x)) {
                return Err(Error::Input("identity not preserved".into()));
            }
        }
        let mut faithful = true;
        for comp in dom.components() {
            for &x in comp.objects() {
                for &y in comp.objects() {
                    let mut images: Vec<usize> = dom
                        .hom(x, y)
                        .into_iter()
                        .map(|f| {
                            let g = self.apply(f);
                            cod.morphism_id(g)
                        })
                        .collect();
                    for f in dom.hom(x, y) {
                        let g = self.apply(f);
                        if g.src != self.apply_object(x) || g.tgt != self.apply_object(y) || !cod.is_valid(g) {
                            return Err(Error::Input("source or target not preserved".into()));
                        }
                        for h in dom.hom_from(y) {
                            if self.apply(dom.compose(h, f)) != cod.compose(self.apply(h), g) {
                                return Err(Error::Input("composition not preserved".into()));
                            }
                        }
                    }
                    let len = images.len();
                    images.sort_unstable();
                    images.dedup();
                    faithful &= images.len() == len;
                }
            }
        }
        if faithful != self.faithful {
            return Err(Error::Input("cached faithfulness flag is wrong".into()));
        }
        Ok(())
    }
}

/// A natural isomorphism `source ⇒ target` between parallel functors.
#[derive(Clone, Debug)]
pub struct TwoCell {
    source: GroupoidFunctor,
    target: GroupoidFunctor,
    components: Vec<Mor>,
}

impl TwoCell {
    pub fn new(source: GroupoidFunctor, target: GroupoidFunctor, components: Vec<Mor>) -> Result<Self> {
        if !same(&source.domain, &target.domain) || !same(&source.codomain, &target.codomain) {
            return input("two-cell between functors that are not parallel");
        }
        let dom = source.domain.clone();
        let cod = source.codomain.clone();
        if components.len() != dom.num_objects() {
            return input("two-cell needs one component per object");
        }
        for (x, &g) in components.iter().enumerate() {
            if g.src != source.apply_object(x) || g.tgt != target.apply_object(x) || !cod.is_valid(g) {
                return input(format!("two-cell component at object {x} has the wrong endpoints"));
            }
        }
        for f in dom.morphisms() {
            let lhs = cod.compose(target.apply(f), components[f.src]);
            let rhs = cod.compose(components[f.tgt], source.apply(f));
            if lhs != rhs {
                return input("two-cell is not natural");
            }
        }
        Ok(Self {
            source,
            target,
            components,
        })
    }

    pub fn identity(f: &GroupoidFunctor) -> Self {
        let comps = (0..f.domain.num_objects())
            .map(|x| f.codomain.identity(f.apply_object(x)))
            .collect();
        Self {
            source: f.clone(),
            target: f.clone(),
            components: comps,
        }
    }

    pub fn source(&self) -> &GroupoidFunctor {
        &self.source
    }
    pub fn target(&self) -> &GroupoidFunctor {
        &self.target
    }
    pub fn component(&self, x: usize) -> Mor {
        self.components[x]
    }
    pub fn components(&self) -> &[Mor] {
        &self.components
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::FiniteGroup;
    use crate::perm::PermGroup;

    fn c2() -> Arc<FiniteGroupoid> {
        Arc::new(FiniteGroupoid::one_object(Arc::new(
            FiniteGroup::from_table(2, vec![0, 1, 1, 0]).unwrap(),
        )))
    }

    #[test]
    fn trivial_into_c2_not_full() {
        let t = Arc::new(FiniteGroupoid::one_object(Arc::new(FiniteGroup::trivial())));
        let f = GroupoidFunctor::from_group_hom(t, c2(), vec![0]).unwrap();
        assert!(f.is_faithful());
        assert!(!f.is_full());
        assert!(f.is_essentially_surjective());
        assert!(!f.is_equivalence());
    }

    #[test]
    fn identity_is_equivalence() {
        let s3 = PermGroup::from_strings(3, &["(0 1)", "(0 1 2)"]).unwrap();
        let g = Arc::new(FiniteGroupoid::from_perm_group(&s3));
        let id = GroupoidFunctor::identity(&g);
        assert!(id.is_equivalence());
        assert!(id.is_isomorphism());
        id.validate_exhaustively().unwrap();
    }

    #[test]
    fn rejects_non_homomorphism() {
        assert!(GroupoidFunctor::from_group_hom(c2(), c2(), vec![1, 0]).is_err());
        let zero = GroupoidFunctor::from_group_hom(c2(), c2(), vec![0, 0]).unwrap();
        assert!(!zero.is_faithful());
        zero.validate_exhaustively().unwrap();
    }

    #[test]
    fn from_maps_round_trip() {
        let c2 = c2();
        let labels = vec![vec![0], vec![1]];
        let g = Arc::new(
            FiniteGroupoid::from_components(labels, vec![(vec![0, 1], c2.vertex_group(0).clone())]).unwrap(),
        );
        let (skel, inc) = g.full_subgroupoid(&[1]).unwrap();
        let rebuilt =
            GroupoidFunctor::from_maps(skel.clone(), g.clone(), inc.object_map(), &inc.morphism_map()).unwrap();
        assert_eq!(rebuilt, inc);
        assert!(inc.is_equivalence());
        // sending the identity to the generator is not a functor
        let mut bad = inc.morphism_map();
        bad.swap(0, 1);
        assert!(GroupoidFunctor::from_maps(skel, g, inc.object_map(), &bad).is_err());
    }

    #[test]
    fn two_cell_naturality() {
        let s3 = PermGroup::from_strings(3, &["(0 1)", "(0 1 2)"]).unwrap();
        let g = Arc::new(FiniteGroupoid::from_perm_group(&s3));
        let id = GroupoidFunctor::identity(&g);
        assert!(TwoCell::new(id.clone(), id.clone(), vec![g.identity(0)]).is_ok());
        // a non-central element is not a natural transformation id ⇒ id
        let t = s3.index_of(&crate::perm::Perm::parse(3, "(0 1)").unwrap()).unwrap();
        assert!(TwoCell::new(id.clone(), id.clone(), vec![Mor { src: 0, tgt: 0, label: t }]).is_err());
        // conjugation by t is naturally isomorphic to the identity via t
        let phi = (0..6).map(|a| s3.conj(t, a) as u32).collect();
        let conj = GroupoidFunctor::from_group_hom(g.clone(), g.clone(), phi).unwrap();
        assert!(TwoCell::new(id, conj, vec![Mor { src: 0, tgt: 0, label: t }]).is_ok());
    }
}
