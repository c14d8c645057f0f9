//! The boundary operator `∂_i(E, F)`: the components of `(E/F/G)` that do
//! not meet the image of `(E/F/H)`.
//!
//! Boundaries always map to `H` through the first projection.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::groupoid::{isocomma, FiniteGroupoid, GroupoidFunctor, IsocommaResult, Mor, TwoCell};
use crate::perm::{FamilyMember, SubgroupEmbedding};

#[derive(Clone, Debug)]
pub struct PartialResult {
    /// `(E/F/G)`
    pub over_g: IsocommaResult,
    /// `(E/F/H)`
    pub over_h: IsocommaResult,
    /// `(E/F/i): (E/F/H) → (E/F/G)`, fully faithful.
    pub embedding: GroupoidFunctor,
    pub boundary: Arc<FiniteGroupoid>,
    pub boundary_inclusion: GroupoidFunctor,
    /// Union of the components of `(E/F/G)` meeting the image.
    pub h_part: Arc<FiniteGroupoid>,
    pub h_part_inclusion: GroupoidFunctor,
    /// `∂_i(E, F) → E`
    pub pr1: GroupoidFunctor,
    /// `∂_i(E, F) → F`
    pub pr2: GroupoidFunctor,
    /// `∂_i(E, F) → H` through the first projection.
    pub pr1_to_h: GroupoidFunctor,
    /// `i∘e∘pr1 ⇒ i∘f∘pr2` restricted to the boundary.
    pub gamma: TwoCell,
    /// Indices (in `over_g`) of the boundary components.
    pub boundary_components: Vec<usize>,
    e: GroupoidFunctor,
    f: GroupoidFunctor,
    i: GroupoidFunctor,
}

/// Computes `∂_i(E, F)` for faithful `i: H → G`, `e: E → H`, `f: F → H`.
pub fn partial(i: &GroupoidFunctor, e: &GroupoidFunctor, f: &GroupoidFunctor) -> Result<PartialResult> {
    if !i.is_faithful() || !e.is_faithful() || !f.is_faithful() {
        return input("the boundary operator needs faithful functors");
    }
    let ie = GroupoidFunctor::compose(i, e)?;
    let if_ = GroupoidFunctor::compose(i, f)?;
    let over_g = isocomma(&ie, &if_)?;
    let over_h = isocomma(e, f)?;
    let embedding = over_g.functor_into(
        over_h.groupoid.clone(),
        |o| {
            let (x, y, h) = over_h.triple(o);
            (x, y, i.apply(h))
        },
        |m| over_h.pair(m),
    )?;
    let mut hit = vec![false; over_g.groupoid.num_components()];
    for d in embedding.component_map() {
        hit[d] = true;
    }
    let mut boundary_objects = Vec::new();
    let mut h_objects = Vec::new();
    let mut boundary_components = Vec::new();
    for (c, comp) in over_g.groupoid.components().iter().enumerate() {
        if hit[c] {
            h_objects.extend_from_slice(comp.objects());
        } else {
            boundary_components.push(c);
            boundary_objects.extend_from_slice(comp.objects());
        }
    }
    let (boundary, boundary_inclusion) = over_g.groupoid.full_subgroupoid(&boundary_objects)?;
    let (h_part, h_part_inclusion) = over_g.groupoid.full_subgroupoid(&h_objects)?;
    let pr1 = GroupoidFunctor::compose(&over_g.pr1, &boundary_inclusion)?;
    let pr2 = GroupoidFunctor::compose(&over_g.pr2, &boundary_inclusion)?;
    let pr1_to_h = GroupoidFunctor::compose(e, &pr1)?;
    let gamma = TwoCell::new(
        GroupoidFunctor::compose(&ie, &pr1)?,
        GroupoidFunctor::compose(&if_, &pr2)?,
        boundary_inclusion
            .object_map()
            .into_iter()
            .map(|o| over_g.gamma.component(o))
            .collect(),
    )?;
    Ok(PartialResult {
        over_g,
        over_h,
        embedding,
        boundary,
        boundary_inclusion,
        h_part,
        h_part_inclusion,
        pr1,
        pr2,
        pr1_to_h,
        gamma,
        boundary_components,
        e: e.clone(),
        f: f.clone(),
        i: i.clone(),
    })
}

impl PartialResult {
    pub fn e(&self) -> &GroupoidFunctor {
        &self.e
    }
    pub fn f(&self) -> &GroupoidFunctor {
        &self.f
    }
    pub fn i(&self) -> &GroupoidFunctor {
        &self.i
    }

    /// The triple `(x, y, g)` of a boundary object.
    pub fn boundary_triple(&self, z: usize) -> (usize, usize, Mor) {
        self.over_g.triple(self.boundary_inclusion.apply_object(z))
    }

    /// The pair `(h, k)` of a boundary morphism.
    pub fn boundary_pair(&self, m: Mor) -> (Mor, Mor) {
        self.over_g.pair(self.boundary_inclusion.apply(m))
    }

    /// The boundary object `(x, y, g)`, if it exists and lies in the
    /// boundary.
    pub fn boundary_object(&self, x: usize, y: usize, g: Mor) -> Option<usize> {
        let o = self.over_g.object_index(x, y, g)?;
        self.boundary_inclusion.object_map().binary_search(&o).ok()
    }

    /// The boundary morphism with pair `(h, k)` between boundary objects.
    pub fn boundary_morphism(&self, z: usize, z2: usize, h: Mor, k: Mor) -> Option<Mor> {
        let o = self.boundary_inclusion.apply_object(z);
        let o2 = self.boundary_inclusion.apply_object(z2);
        let m = self.over_g.morphism_from_pair(o, o2, h, k)?;
        // full subgroupoid: same vertex coordinates
        Some(Mor { src: z, tgt: z2, label: m.label })
    }

    /// Automorphism-group orders of the boundary components.
    pub fn boundary_stabilizers(&self) -> Vec<usize> {
        self.boundary
            .components()
            .iter()
            .map(|c| c.group().order())
            .collect()
    }
}

/// `∂_i(k, ℓ): ∂_i(E, F) → ∂_i(E', F')`, the restriction of `(k/ℓ/G)` to
/// boundaries. Requires `e = e'∘k` and `f = f'∘ℓ` strictly.
pub fn diagonal_functor(
    src: &PartialResult,
    tgt: &PartialResult,
    k: &GroupoidFunctor,
    l: &GroupoidFunctor,
) -> Result<GroupoidFunctor> {
    if src.i != tgt.i {
        return input("boundaries are taken over different functors");
    }
    if GroupoidFunctor::compose(&tgt.e, k)? != src.e || GroupoidFunctor::compose(&tgt.f, l)? != src.f {
        return input("embeddings do not commute with k and l");
    }
    let into_g = tgt.over_g.functor_into(
        src.boundary.clone(),
        |z| {
            let (x, y, g) = src.boundary_triple(z);
            (k.apply_object(x), l.apply_object(y), g)
        },
        |m| {
            let (h, kk) = src.boundary_pair(m);
            (k.apply(h), l.apply(kk))
        },
    )?;
    into_g.corestrict(&tgt.boundary_inclusion).map_err(|_| {
        Error::TheoremViolation("a boundary object maps into the H-part".into())
    })
}

/// The comparison `∂_i(D1, D2) → (D1 / ∂_i(H, D2) / H)`,
/// `(x1, x2, g) ↦ (x1, (j1 x1, x2, g), id)`.
#[derive(Clone, Debug)]
pub struct GeographyResult {
    pub holds: bool,
    pub source: PartialResult,
    pub middle: PartialResult,
    pub target: IsocommaResult,
    pub functor: GroupoidFunctor,
}

pub fn geography_check(
    i: &GroupoidFunctor,
    j1: &GroupoidFunctor,
    j2: &GroupoidFunctor,
) -> Result<GeographyResult> {
    let h = i.domain().clone();
    let id_h = GroupoidFunctor::identity(&h);
    let source = partial(i, j1, j2)?;
    let middle = partial(i, &id_h, j2)?;
    let target = isocomma(j1, &middle.pr1_to_h)?;
    let hg = h.clone();
    let functor = target.functor_into(
        source.boundary.clone(),
        |z| {
            let (x1, x2, g) = source.boundary_triple(z);
            let hx = j1.apply_object(x1);
            let w = middle
                .boundary_object(hx, x2, g)
                .expect("boundary objects of ∂(D1,D2) stay in ∂(H,D2)");
            (x1, w, hg.identity(hx))
        },
        |m| {
            let (d1, d2) = source.boundary_pair(m);
            let w = middle.boundary_object(j1.apply_object(d1.src), d2.src, source.boundary_triple(m.src).2);
            let w2 = middle.boundary_object(j1.apply_object(d1.tgt), d2.tgt, source.boundary_triple(m.tgt).2);
            let mw = middle
                .boundary_morphism(w.unwrap(), w2.unwrap(), j1.apply(d1), d2)
                .expect("pairs of ∂(D1,D2) are pairs of ∂(H,D2)");
            (d1, mw)
        },
    )?;
    Ok(GeographyResult {
        holds: functor.is_equivalence(),
        source,
        middle,
        target,
        functor,
    })
}

/// The functor `u: (H / ∂_i(D,D) / G) → ∂_i(H, D)` with `pr1 ∘ u = pr1`.
#[derive(Clone, Debug)]
pub struct TrickyResult {
    pub holds: bool,
    pub domain: IsocommaResult,
    pub u: GroupoidFunctor,
    /// Number of domain objects `(x, w, g)` with `g` in the image of `i`.
    pub h_part_objects: usize,
    pub dd: PartialResult,
    pub hd: PartialResult,
}

fn lies_over(i: &GroupoidFunctor, x: usize, y: usize, g: Mor) -> bool {
    let h = i.domain();
    h.connected(x, y) && h.hom(x, y).into_iter().any(|m| i.apply(m) == g)
}

pub fn tricky_factorization(i: &GroupoidFunctor, j: &GroupoidFunctor) -> Result<TrickyResult> {
    let h = i.domain().clone();
    let id_h = GroupoidFunctor::identity(&h);
    let dd = partial(i, j, j)?;
    let hd = partial(i, &id_h, j)?;
    let to_g = GroupoidFunctor::compose(i, &dd.pr1_to_h)?;
    let domain = isocomma(i, &to_g)?;
    let mut in_h = vec![false; domain.num_objects()];
    for (o, flag) in in_h.iter_mut().enumerate() {
        let (x, w, g) = domain.triple(o);
        let (y1, _, _) = dd.boundary_triple(w);
        *flag = lies_over(i, x, j.apply_object(y1), g);
    }
    let g_gpd = i.codomain().clone();
    let into_g = hd.over_g.functor_into(
        domain.groupoid.clone(),
        |o| {
            let (x, w, g) = domain.triple(o);
            let (y1, y2, gw) = dd.boundary_triple(w);
            if in_h[o] {
                (x, y2, g_gpd.compose(gw, g))
            } else {
                (x, y1, g)
            }
        },
        |m| {
            let (a, mw) = domain.pair(m);
            let (d1, d2) = dd.boundary_pair(mw);
            if in_h[m.src] {
                (a, d2)
            } else {
                (a, d1)
            }
        },
    )?;
    let u = into_g.corestrict(&hd.boundary_inclusion).map_err(|_| {
        Error::TheoremViolation("the factorization leaves the boundary ∂(H,D)".into())
    })?;
    let lhs = GroupoidFunctor::compose(&hd.pr1_to_h, &u)?;
    let holds = lhs == domain.pr1;
    let h_part_objects = in_h.iter().filter(|&&b| b).count();
    if !holds {
        return Err(Error::TheoremViolation("pr1 ∘ u differs from pr1".into()));
    }
    Ok(TrickyResult {
        holds,
        domain,
        u,
        h_part_objects,
        dd,
        hd,
    })
}

/// One boundary component of `∂_i(E, F)` for subgroups, matched with its
/// double coset `E g F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponent {
    /// Minimal element of the matched double coset.
    pub coset_rep: usize,
    pub stabilizer_order: usize,
    pub objects: usize,
}

/// Boundary components of a partial built from one-object groupoids of
/// subgroups `E, F ≤ G`: the component through `g` is the orbit `F g E`
/// and matches the double coset `E g^{-1} F`.
pub fn boundary_components(
    p: &PartialResult,
    e: &SubgroupEmbedding,
    f: &SubgroupEmbedding,
) -> Vec<BoundaryComponent> {
    let g = e.ambient();
    let mut out: Vec<BoundaryComponent> = p
        .boundary
        .components()
        .iter()
        .map(|c| {
            let (_, _, gm) = p.boundary_triple(c.base());
            let ginv = g.inv(gm.label);
            let rep = e
                .elements()
                .iter()
                .flat_map(|&a| f.elements().iter().map(move |&b| (a, b)))
                .map(|(a, b)| g.mul(g.mul(a, ginv), b))
                .min()
                .unwrap();
            BoundaryComponent {
                coset_rep: rep,
                stabilizer_order: c.group().order(),
                objects: c.objects().len(),
            }
        })
        .collect();
    out.sort_by_key(|c| c.coset_rep);
    out
}

/// True iff the boundary components match the family members exactly:
/// same double-coset representatives, same subgroup orders.
pub fn matches_family(components: &[BoundaryComponent], members: &[FamilyMember]) -> bool {
    let mut a: Vec<(usize, usize)> = components.iter().map(|c| (c.coset_rep, c.stabilizer_order)).collect();
    let mut b: Vec<(usize, usize)> = members.iter().map(|m| (m.rep, m.subgroup.order())).collect();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

#[cfg(test)]
mod tests;
