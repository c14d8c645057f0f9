use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::functor::same;
use super::{FiniteGroup, FiniteGroupoid, GroupoidFunctor, Mor, TwoCell};
use crate::error::{input, Result};

const NONE: u32 = u32::MAX;

/// The isocomma groupoid `(i/u)` of a cospan `H --i--> G <--u-- K`, with its
/// projections and canonical 2-cell.
///
/// Objects are the triples `(x, y, g)` with `g: i(x) → u(y)`, indexed in
/// lexicographic order; object labels are `[x, y, id of g in G]`.
#[derive(Clone, Debug)]
pub struct IsocommaResult {
    pub groupoid: Arc<FiniteGroupoid>,
    pub pr1: GroupoidFunctor,
    pub pr2: GroupoidFunctor,
    pub gamma: TwoCell,
    i: GroupoidFunctor,
    u: GroupoidFunctor,
    triples: Vec<(u32, u32, u32)>,
    xy_offset: Vec<u32>,
    /// `τ_o` as a pair of morphisms from the component base.
    transports: Vec<(Mor, Mor)>,
    /// Vertex-group elements as pairs of base automorphism labels.
    stab: Vec<Vec<(u32, u32)>>,
    stab_index: Vec<HashMap<(u32, u32), u32>>,
}

pub fn isocomma(i: &GroupoidFunctor, u: &GroupoidFunctor) -> Result<IsocommaResult> {
    if !same(i.codomain(), u.codomain()) {
        return input("isocomma needs functors with a common codomain");
    }
    let hg = i.domain().clone();
    let kg = u.domain().clone();
    let g = i.codomain().clone();
    let nk = kg.num_objects();

    // enumerate objects in (x, y, label) order
    let mut triples = Vec::new();
    let mut xy_offset = vec![NONE; hg.num_objects() * nk];
    for x in 0..hg.num_objects() {
        let ix = i.apply_object(x);
        for y in 0..nk {
            let uy = u.apply_object(y);
            if g.connected(ix, uy) {
                xy_offset[x * nk + y] = triples.len() as u32;
                for a in 0..g.vertex_group(ix).order() {
                    triples.push((x as u32, y as u32, a as u32));
                }
            }
        }
    }
    let n = triples.len();
    let index = |x: usize, y: usize, a: usize| -> usize { xy_offset[x * nk + y] as usize + a };
    let g_of = |t: (u32, u32, u32)| Mor {
        src: i.apply_object(t.0 as usize),
        tgt: u.apply_object(t.1 as usize),
        label: t.2 as usize,
    };

    // breadth-first search for components, recording transports
    let mut comp_of = vec![NONE; n];
    let mut transports = vec![(Mor { src: 0, tgt: 0, label: 0 }, Mor { src: 0, tgt: 0, label: 0 }); n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    let h_gens: Vec<Vec<usize>> = hg.components().iter().map(|c| c.group.generators()).collect();
    let k_gens: Vec<Vec<usize>> = kg.components().iter().map(|c| c.group.generators()).collect();
    for start in 0..n {
        if comp_of[start] != NONE {
            continue;
        }
        let c = components.len() as u32;
        let (x0, y0, _) = triples[start];
        comp_of[start] = c;
        transports[start] = (hg.identity(x0 as usize), kg.identity(y0 as usize));
        let mut objs = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(o) = queue.pop_front() {
            let t = triples[o];
            let (x, y) = (t.0 as usize, t.1 as usize);
            let go = g_of(t);
            let (ho, ko) = transports[o];
            let hc = hg.component_of(x);
            let kc = kg.component_of(y);
            let h_moves = hg.components()[hc]
                .objects()
                .iter()
                .map(|&x2| Mor { src: x, tgt: x2, label: 0 })
                .chain(h_gens[hc].iter().map(|&s| Mor { src: x, tgt: x, label: s }));
            let k_moves = kg.components()[kc]
                .objects()
                .iter()
                .map(|&y2| Mor { src: y, tgt: y2, label: 0 })
                .chain(k_gens[kc].iter().map(|&s| Mor { src: y, tgt: y, label: s }));
            let mut visit = |o2: usize, tr: (Mor, Mor), objs: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
                if comp_of[o2] == NONE {
                    comp_of[o2] = c;
                    transports[o2] = tr;
                    objs.push(o2);
                    queue.push_back(o2);
                }
            };
            for h in h_moves {
                // (h, id): (x, y, g) → (x', y, g ∘ i(h)^{-1})
                let g2 = g.compose(go, g.inverse(i.apply(h)));
                let o2 = index(h.tgt, y, g2.label);
                visit(o2, (hg.compose(h, ho), ko), &mut objs, &mut queue);
            }
            for k in k_moves {
                // (id, k): (x, y, g) → (x, y', u(k) ∘ g)
                let g2 = g.compose(u.apply(k), go);
                let o2 = index(x, k.tgt, g2.label);
                visit(o2, (ho, kg.compose(k, ko)), &mut objs, &mut queue);
            }
        }
        objs.sort_unstable();
        components.push(objs);
    }

    // vertex groups: pairs (h, k) of base automorphisms fixing g0
    let mut stab = Vec::with_capacity(components.len());
    let mut stab_index = Vec::with_capacity(components.len());
    let mut groups = Vec::with_capacity(components.len());
    for objs in &components {
        let base = objs[0];
        let t = triples[base];
        let (x0, y0) = (t.0 as usize, t.1 as usize);
        let g0 = g_of(t);
        let hgrp = hg.vertex_group(x0).clone();
        let kgrp = kg.vertex_group(y0).clone();
        let mut by_image: HashMap<usize, Vec<usize>> = HashMap::new();
        for b in 0..kgrp.order() {
            let img = u.apply(Mor { src: y0, tgt: y0, label: b }).label;
            by_image.entry(img).or_default().push(b);
        }
        let mut pairs = Vec::new();
        for a in 0..hgrp.order() {
            let ih = i.apply(Mor { src: x0, tgt: x0, label: a });
            let need = g.compose(g.compose(g0, ih), g.inverse(g0)).label;
            if let Some(bs) = by_image.get(&need) {
                for &b in bs {
                    pairs.push((a as u32, b as u32));
                }
            }
        }
        let idx: HashMap<(u32, u32), u32> = pairs
            .iter()
            .enumerate()
            .map(|(k, &p)| (p, k as u32))
            .collect();
        let m = pairs.len();
        let mut table = Vec::with_capacity(m * m);
        for &(a1, b1) in &pairs {
            for &(a2, b2) in &pairs {
                let prod = (
                    hgrp.mul(a1 as usize, a2 as usize) as u32,
                    kgrp.mul(b1 as usize, b2 as usize) as u32,
                );
                table.push(idx[&prod]);
            }
        }
        groups.push(Arc::new(FiniteGroup::from_table_unchecked(m, table)));
        stab.push(pairs);
        stab_index.push(idx);
    }

    let labels: Vec<Vec<u32>> = triples
        .iter()
        .map(|&t| vec![t.0, t.1, g.morphism_id(g_of(t)) as u32])
        .collect();
    let groupoid = Arc::new(FiniteGroupoid::from_components(
        labels,
        components.into_iter().zip(groups).collect(),
    )?);

    let mut pr1_t = vec![0u32; n];
    let mut pr2_t = vec![0u32; n];
    for o in 0..n {
        pr1_t[o] = transports[o].0.label as u32;
        pr2_t[o] = transports[o].1.label as u32;
    }
    let pr1_v = stab.iter().map(|s| s.iter().map(|p| p.0).collect()).collect();
    let pr2_v = stab.iter().map(|s| s.iter().map(|p| p.1).collect()).collect();
    let pr1 = GroupoidFunctor::from_structure(
        groupoid.clone(),
        hg.clone(),
        triples.iter().map(|t| t.0 as usize).collect(),
        pr1_t,
        pr1_v,
    )?;
    let pr2 = GroupoidFunctor::from_structure(
        groupoid.clone(),
        kg.clone(),
        triples.iter().map(|t| t.1 as usize).collect(),
        pr2_t,
        pr2_v,
    )?;
    let ip = GroupoidFunctor::compose(i, &pr1)?;
    let up = GroupoidFunctor::compose(u, &pr2)?;
    let gamma = TwoCell::new(ip, up, triples.iter().map(|&t| g_of(t)).collect())?;
    Ok(IsocommaResult {
        groupoid,
        pr1,
        pr2,
        gamma,
        i: i.clone(),
        u: u.clone(),
        triples,
        xy_offset,
        transports,
        stab,
        stab_index,
    })
}

impl IsocommaResult {
    pub fn i(&self) -> &GroupoidFunctor {
        &self.i
    }
    pub fn u(&self) -> &GroupoidFunctor {
        &self.u
    }
    pub fn num_objects(&self) -> usize {
        self.triples.len()
    }

    /// The triple `(x, y, g)` of an object.
    pub fn triple(&self, o: usize) -> (usize, usize, Mor) {
        let t = self.triples[o];
        (
            t.0 as usize,
            t.1 as usize,
            Mor {
                src: self.i.apply_object(t.0 as usize),
                tgt: self.u.apply_object(t.1 as usize),
                label: t.2 as usize,
            },
        )
    }

    /// The object `(x, y, g)`, if `g: i(x) → u(y)`.
    pub fn object_index(&self, x: usize, y: usize, g: Mor) -> Option<usize> {
        let nk = self.u.domain().num_objects();
        if x >= self.i.domain().num_objects() || y >= nk {
            return None;
        }
        if g.src != self.i.apply_object(x) || g.tgt != self.u.apply_object(y) {
            return None;
        }
        let off = self.xy_offset[x * nk + y];
        (off != NONE).then(|| off as usize + g.label)
    }

    /// A morphism as its pair `(h, k)`.
    pub fn pair(&self, m: Mor) -> (Mor, Mor) {
        let hg = self.i.domain();
        let kg = self.u.domain();
        let c = self.groupoid.component_of(m.src);
        let (a, b) = self.stab[c][m.label];
        let (hs, ks) = self.transports[m.src];
        let (ht, kt) = self.transports[m.tgt];
        let x0 = hs.src;
        let y0 = ks.src;
        let h = hg.compose(
            hg.compose(ht, Mor { src: x0, tgt: x0, label: a as usize }),
            hg.inverse(hs),
        );
        let k = kg.compose(
            kg.compose(kt, Mor { src: y0, tgt: y0, label: b as usize }),
            kg.inverse(ks),
        );
        (h, k)
    }

    /// The morphism `(h, k): o → o'`, if the pair is compatible.
    pub fn morphism_from_pair(&self, o: usize, o2: usize, h: Mor, k: Mor) -> Option<Mor> {
        let hg = self.i.domain();
        let kg = self.u.domain();
        let g = self.i.codomain();
        let (x, y, go) = self.triple(o);
        let (x2, y2, go2) = self.triple(o2);
        if h.src != x || h.tgt != x2 || k.src != y || k.tgt != y2 {
            return None;
        }
        if !hg.is_valid(h) || !kg.is_valid(k) {
            return None;
        }
        if g.compose(go2, self.i.apply(h)) != g.compose(self.u.apply(k), go) {
            return None;
        }
        if !self.groupoid.connected(o, o2) {
            return None;
        }
        let (hs, ks) = self.transports[o];
        let (ht, kt) = self.transports[o2];
        let a = hg.compose(hg.compose(hg.inverse(ht), h), hs).label as u32;
        let b = kg.compose(kg.compose(kg.inverse(kt), k), ks).label as u32;
        let c = self.groupoid.component_of(o);
        self.stab_index[c].get(&(a, b)).map(|&s| Mor {
            src: o,
            tgt: o2,
            label: s as usize,
        })
    }

    /// Builds a functor into this isocomma from its action on objects (as
    /// triples) and morphisms (as pairs); checked on every morphism.
    pub fn functor_into<FO, FM>(
        &self,
        domain: Arc<FiniteGroupoid>,
        obj: FO,
        mor: FM,
    ) -> Result<GroupoidFunctor>
    where
        FO: Fn(usize) -> (usize, usize, Mor),
        FM: Fn(Mor) -> (Mor, Mor),
    {
        let mut object_map = Vec::with_capacity(domain.num_objects());
        for z in 0..domain.num_objects() {
            let (x, y, g) = obj(z);
            match self.object_index(x, y, g) {
                Some(o) => object_map.push(o),
                None => return input(format!("object {z} does not map to an isocomma object")),
            }
        }
        let lift = |f: Mor| -> Result<Mor> {
            let (h, k) = mor(f);
            self.morphism_from_pair(object_map[f.src], object_map[f.tgt], h, k)
                .ok_or_else(|| crate::Error::Input("morphism does not map to a compatible pair".into()))
        };
        let mut transport = vec![0u32; domain.num_objects()];
        let mut vertex = Vec::with_capacity(domain.num_components());
        for comp in domain.components() {
            let b = comp.base();
            for &z in comp.objects() {
                transport[z] = lift(domain.transport(z))?.label as u32;
            }
            let phi = (0..comp.group.order())
                .map(|a| lift(Mor { src: b, tgt: b, label: a }).map(|m| m.label as u32))
                .collect::<Result<Vec<_>>>()?;
            vertex.push(phi);
        }
        let f = GroupoidFunctor::from_structure(
            domain.clone(),
            self.groupoid.clone(),
            object_map,
            transport,
            vertex,
        )?;
        for m in domain.morphisms() {
            if self.pair(f.apply(m)) != mor(m) {
                return input("morphism assignment is not functorial");
            }
        }
        Ok(f)
    }

    /// The square `(pr1, pr2, γ)` over the cospan `(i, u)`.
    pub fn square(&self) -> Square {
        Square {
            i: self.i.clone(),
            u: self.u.clone(),
            v: self.pr1.clone(),
            j: self.pr2.clone(),
            gamma: self.gamma.clone(),
        }
    }

    /// Automorphism-group orders of the components, in component order.
    pub fn stabilizer_orders(&self) -> Vec<usize> {
        self.stab.iter().map(|s| s.len()).collect()
    }
}

/// A square `γ: i∘v ⇒ u∘j` over the cospan `(i, u)`.
#[derive(Clone, Debug)]
pub struct Square {
    pub i: GroupoidFunctor,
    pub u: GroupoidFunctor,
    pub v: GroupoidFunctor,
    pub j: GroupoidFunctor,
    pub gamma: TwoCell,
}

impl Square {
    pub fn new(
        i: GroupoidFunctor,
        u: GroupoidFunctor,
        v: GroupoidFunctor,
        j: GroupoidFunctor,
        gamma: TwoCell,
    ) -> Result<Self> {
        if !same(i.codomain(), u.codomain()) || !same(v.domain(), j.domain()) {
            return input("square sides do not match");
        }
        let iv = GroupoidFunctor::compose(&i, &v)?;
        let uj = GroupoidFunctor::compose(&u, &j)?;
        if *gamma.source() != iv || *gamma.target() != uj {
            return input("two-cell does not go from i∘v to u∘j");
        }
        Ok(Self { i, u, v, j, gamma })
    }

    /// The comparison `⟨v, j, γ⟩: L → (i/u)` into the given isocomma.
    pub fn comparison(&self, iso: &IsocommaResult) -> Result<GroupoidFunctor> {
        if iso.i != self.i || iso.u != self.u {
            return input("isocomma is over a different cospan");
        }
        iso.functor_into(
            self.v.domain().clone(),
            |z| (self.v.apply_object(z), self.j.apply_object(z), self.gamma.component(z)),
            |m| (self.v.apply(m), self.j.apply(m)),
        )
    }
}

pub fn induced_comparison(square: &Square) -> Result<(IsocommaResult, GroupoidFunctor)> {
    let iso = isocomma(&square.i, &square.u)?;
    let f = square.comparison(&iso)?;
    Ok((iso, f))
}

pub fn is_mackey_square(square: &Square) -> Result<bool> {
    Ok(induced_comparison(square)?.1.is_equivalence())
}

/// The isocommas `(i/u1)`, `(i/u2)`, `(i/[u1,u2])` and the canonical
/// comparison `(i/u1) ⊔ (i/u2) → (i/[u1,u2])`.
#[derive(Clone, Debug)]
pub struct CoproductSplit {
    pub whole: IsocommaResult,
    pub first: IsocommaResult,
    pub second: IsocommaResult,
    pub relabel: GroupoidFunctor,
}

pub fn coproduct_relabeling(
    i: &GroupoidFunctor,
    u1: &GroupoidFunctor,
    u2: &GroupoidFunctor,
) -> Result<CoproductSplit> {
    if !same(u1.codomain(), u2.codomain()) {
        return input("copairing needs a common codomain");
    }
    let (sum, in1, in2) = FiniteGroupoid::coproduct(u1.domain(), u2.domain());
    let mut object_map = u1.object_map();
    object_map.extend(u2.object_map());
    let mut transport = u1.transport_labels().to_vec();
    transport.extend_from_slice(u2.transport_labels());
    let vertex = (0..u1.domain().num_components())
        .map(|c| u1.vertex_map(c).to_vec())
        .chain((0..u2.domain().num_components()).map(|c| u2.vertex_map(c).to_vec()))
        .collect();
    let u = GroupoidFunctor::from_structure(sum.clone(), u1.codomain().clone(), object_map, transport, vertex)?;
    let whole = isocomma(i, &u)?;
    let first = isocomma(i, u1)?;
    let second = isocomma(i, u2)?;
    let (parts, _, _) = FiniteGroupoid::coproduct(&first.groupoid, &second.groupoid);
    let m1 = first.num_objects();
    let shift = |m: Mor, by: usize| Mor { src: m.src - by, tgt: m.tgt - by, label: m.label };
    let relabel = whole.functor_into(
        parts,
        |z| {
            if z < m1 {
                let (x, y, g) = first.triple(z);
                (x, in1.apply_object(y), g)
            } else {
                let (x, y, g) = second.triple(z - m1);
                (x, in2.apply_object(y), g)
            }
        },
        |m| {
            if m.src < m1 {
                let (h, k) = first.pair(m);
                (h, in1.apply(k))
            } else {
                let (h, k) = second.pair(shift(m, m1));
                (h, in2.apply(k))
            }
        },
    )?;
    Ok(CoproductSplit {
        whole,
        first,
        second,
        relabel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Perm, PermGroup, SubgroupEmbedding};

    fn embed(sub: &SubgroupEmbedding, amb: &Arc<FiniteGroupoid>) -> GroupoidFunctor {
        let dom = Arc::new(FiniteGroupoid::from_perm_group(sub.group()));
        let phi = sub.elements().iter().map(|&g| g as u32).collect();
        GroupoidFunctor::from_group_hom(dom, amb.clone(), phi).unwrap()
    }

    fn s3_setup() -> (Arc<PermGroup>, Arc<FiniteGroupoid>, SubgroupEmbedding) {
        let s3 = Arc::new(PermGroup::from_strings(3, &["(0 1)", "(0 1 2)"]).unwrap());
        let g = Arc::new(FiniteGroupoid::from_perm_group(&s3));
        let c2 = SubgroupEmbedding::from_perms(s3.clone(), &[Perm::parse(3, "(0 1)").unwrap()], "C2").unwrap();
        (s3, g, c2)
    }

    #[test]
    fn trivial_isocomma() {
        let t = Arc::new(FiniteGroupoid::one_object(Arc::new(FiniteGroup::trivial())));
        let id = GroupoidFunctor::identity(&t);
        let iso = isocomma(&id, &id).unwrap();
        assert_eq!(iso.groupoid.num_objects(), 1);
        assert_eq!(iso.groupoid.num_morphisms(), 1);
    }

    /// Components and automorphism counts of (H/K/G) by brute force over
    /// triples and pairs of group elements.
    fn brute_force(h: &SubgroupEmbedding, k: &SubgroupEmbedding) -> (usize, Vec<usize>, usize) {
        let g = h.ambient();
        let n = g.order();
        // objects: g ∈ G; morphisms (a, b): g → b g a^{-1}
        let mut comp = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        let mut auts = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = auts.len();
            let mut count = 0;
            for &a in h.elements() {
                for &b in k.elements() {
                    let t = g.mul(g.mul(b, s), g.inv(a));
                    if comp[t] == usize::MAX {
                        comp[t] = c;
                        count += 1;
                    }
                }
            }
            sizes.push(count);
            let mut aut = 0;
            for &a in h.elements() {
                for &b in k.elements() {
                    if g.mul(g.mul(b, s), g.inv(a)) == s {
                        aut += 1;
                    }
                }
            }
            auts.push(aut);
        }
        (n, auts, sizes.len())
    }

    #[test]
    fn s3_by_c2_matches_brute_force() {
        let (_, g, c2) = s3_setup();
        let i = embed(&c2, &g);
        let iso = isocomma(&i, &i).unwrap();
        assert_eq!(iso.groupoid.num_objects(), 6);
        assert_eq!(iso.groupoid.num_components(), 2);
        let mut auts = iso.stabilizer_orders();
        auts.sort_unstable();
        assert_eq!(auts, vec![1, 2]);
        let (objs, mut oracle, comps) = brute_force(&c2, &c2);
        oracle.sort_unstable();
        assert_eq!(objs, 6);
        assert_eq!(comps, 2);
        assert_eq!(oracle, auts);
        assert!(iso.groupoid.check_axioms());
        iso.pr1.validate_exhaustively().unwrap();
        iso.pr2.validate_exhaustively().unwrap();
    }

    #[test]
    fn labels_project() {
        let (_, g, c2) = s3_setup();
        let i = embed(&c2, &g);
        let u = GroupoidFunctor::identity(&g);
        let iso = isocomma(&i, &u).unwrap();
        for o in 0..iso.num_objects() {
            let (x, y, gm) = iso.triple(o);
            assert_eq!(iso.pr1.apply_object(o), x);
            assert_eq!(iso.pr2.apply_object(o), y);
            assert_eq!(iso.gamma.component(o), gm);
            assert_eq!(iso.groupoid.label(o)[2] as usize, g.morphism_id(gm));
        }
        for m in iso.groupoid.morphisms() {
            let (h, k) = iso.pair(m);
            assert_eq!(iso.pr1.apply(m), h);
            assert_eq!(iso.pr2.apply(m), k);
            assert_eq!(iso.morphism_from_pair(m.src, m.tgt, h, k), Some(m));
        }
    }

    #[test]
    fn own_square_is_mackey_and_comparison_is_identity() {
        let (_, g, c2) = s3_setup();
        let i = embed(&c2, &g);
        let iso = isocomma(&i, &i).unwrap();
        let f = iso.square().comparison(&iso).unwrap();
        assert_eq!(f, GroupoidFunctor::identity(&iso.groupoid));
        assert!(is_mackey_square(&iso.square()).unwrap());
    }

    #[test]
    fn identity_square_is_mackey() {
        // (Id_H, i, id_i) over (i, Id_G)
        let (_, g, c2) = s3_setup();
        let i = embed(&c2, &g);
        let h = i.domain().clone();
        let idg = GroupoidFunctor::identity(&g);
        let idh = GroupoidFunctor::identity(&h);
        let gamma = TwoCell::identity(&i);
        let sq = Square::new(i.clone(), idg, idh, i.clone(), gamma).unwrap();
        assert!(is_mackey_square(&sq).unwrap());
    }

    #[test]
    fn trivial_group_into_c2_square_is_not_mackey() {
        let c2 = Arc::new(FiniteGroupoid::one_object(Arc::new(
            FiniteGroup::from_table(2, vec![0, 1, 1, 0]).unwrap(),
        )));
        let t = Arc::new(FiniteGroupoid::one_object(Arc::new(FiniteGroup::trivial())));
        let id = GroupoidFunctor::identity(&c2);
        let incl = GroupoidFunctor::from_group_hom(t, c2.clone(), vec![0]).unwrap();
        let iid = GroupoidFunctor::compose(&id, &incl).unwrap();
        let gamma = TwoCell::identity(&iid);
        let sq = Square::new(id.clone(), id.clone(), incl.clone(), incl, gamma).unwrap();
        let (iso, f) = induced_comparison(&sq).unwrap();
        assert_eq!(iso.groupoid.num_objects(), 2);
        assert!(!f.is_full());
        assert!(!is_mackey_square(&sq).unwrap());
    }

    #[test]
    fn invalid_square_rejected() {
        let (_, g, c2) = s3_setup();
        let i = embed(&c2, &g);
        let idg = GroupoidFunctor::identity(&g);
        let gamma = TwoCell::identity(&i);
        // gamma goes i ⇒ i, not Id_G∘Id_G
        assert!(Square::new(idg.clone(), idg.clone(), idg.clone(), idg, gamma).is_err());
    }

    #[test]
    fn coproduct_splits_isocomma() {
        let (s3, g, c2) = s3_setup();
        let c3 = SubgroupEmbedding::from_perms(s3.clone(), &[Perm::parse(3, "(0 1 2)").unwrap()], "C3").unwrap();
        let i = embed(&c2, &g);
        let u1 = embed(&c2, &g);
        let u2 = embed(&c3, &g);
        let split = coproduct_relabeling(&i, &u1, &u2).unwrap();
        assert!(split.relabel.is_isomorphism());
        assert_eq!(
            split.whole.groupoid.num_components(),
            split.first.groupoid.num_components() + split.second.groupoid.num_components()
        );
        split.relabel.validate_exhaustively().unwrap();
    }

    #[test]
    fn mismatched_codomains_rejected() {
        let (_, g, c2) = s3_setup();
        let i = embed(&c2, &g);
        let other = Arc::new(FiniteGroupoid::one_object(Arc::new(FiniteGroup::trivial())));
        let id = GroupoidFunctor::identity(&other);
        assert!(isocomma(&i, &id).is_err());
    }
}
