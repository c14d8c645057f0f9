use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, FiniteGroupoid, GroupoidFunctor, Mor};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismRecord {
    pub id: usize,
    pub src: usize,
    pub tgt: usize,
}

/// Extensional form of a groupoid: object labels, morphisms, and the full
/// composition table as `[g, f, g∘f]` triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidJson {
    pub objects: Vec<Vec<u32>>,
    pub morphisms: Vec<MorphismRecord>,
    pub composition: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub domain: GroupoidJson,
    pub codomain: GroupoidJson,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

impl GroupoidJson {
    pub fn emit(g: &FiniteGroupoid) -> Self {
        let morphisms = g
            .morphisms()
            .enumerate()
            .map(|(id, m)| MorphismRecord {
                id,
                src: m.src,
                tgt: m.tgt,
            })
            .collect();
        let mut composition = Vec::new();
        for f in g.morphisms() {
            for h in g.hom_from(f.tgt) {
                composition.push([g.morphism_id(h), g.morphism_id(f), g.morphism_id(g.compose(h, f))]);
            }
        }
        Self {
            objects: g.labels().to_vec(),
            morphisms,
            composition,
        }
    }

    /// Rebuilds the groupoid in canonical coordinates. Also returns, for
    /// every input morphism id, its canonical id.
    pub fn parse(&self) -> Result<(FiniteGroupoid, Vec<usize>)> {
        let n = self.objects.len();
        let nm = self.morphisms.len();
        for (k, m) in self.morphisms.iter().enumerate() {
            if m.id != k {
                return parse_err("morphism ids must be 0, 1, 2, ... in order");
            }
            if m.src >= n || m.tgt >= n {
                return parse_err(format!("morphism {k} has an endpoint out of range"));
            }
        }
        let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut hom: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for m in &self.morphisms {
            out_of[m.src].push(m.id);
            hom.entry((m.src, m.tgt)).or_default().push(m.id);
        }
        let mut comp: HashMap<(usize, usize), usize> = HashMap::with_capacity(self.composition.len());
        for &[g, f, gf] in &self.composition {
            if g >= nm || f >= nm || gf >= nm {
                return parse_err("composition entry out of range");
            }
            let (mf, mg, mgf) = (&self.morphisms[f], &self.morphisms[g], &self.morphisms[gf]);
            if mf.tgt != mg.src || mgf.src != mf.src || mgf.tgt != mg.tgt {
                return parse_err(format!("composition [{g}, {f}, {gf}] has inconsistent endpoints"));
            }
            if comp.insert((g, f), gf).is_some() {
                return parse_err(format!("composition of ({g}, {f}) given twice"));
            }
        }
        let expected: usize = self.morphisms.iter().map(|m| out_of[m.tgt].len()).sum();
        if comp.len() != expected {
            return parse_err("composition table is not total on composable pairs");
        }
        let compose = |g: usize, f: usize| comp[&(g, f)];
        let mut identity = vec![usize::MAX; n];
        for x in 0..n {
            let loops = hom.get(&(x, x)).map(|v| v.as_slice()).unwrap_or(&[]);
            match loops.iter().find(|&&e| compose(e, e) == e) {
                Some(&e) => identity[x] = e,
                None => return parse_err(format!("object {x} has no identity")),
            }
        }

        // components by reachability
        let mut comp_of = vec![usize::MAX; n];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let c = components.len();
            let mut stack = vec![s];
            comp_of[s] = c;
            let mut objs = vec![];
            while let Some(x) = stack.pop() {
                objs.push(x);
                for &m in &out_of[x] {
                    let y = self.morphisms[m].tgt;
                    if comp_of[y] == usize::MAX {
                        comp_of[y] = c;
                        stack.push(y);
                    }
                }
            }
            objs.sort_unstable();
            components.push(objs);
        }

        let mut label_of = vec![usize::MAX; nm];
        let mut groups = Vec::with_capacity(components.len());
        for objs in &components {
            let b = objs[0];
            let mut aut: Vec<usize> = hom[&(b, b)].clone();
            aut.retain(|&e| e != identity[b]);
            aut.insert(0, identity[b]);
            let pos: HashMap<usize, usize> = aut.iter().enumerate().map(|(i, &e)| (e, i)).collect();
            let k = aut.len();
            let mut table = Vec::with_capacity(k * k);
            for &a in &aut {
                for &c in &aut {
                    table.push(pos[&compose(a, c)] as u32);
                }
            }
            let group = FiniteGroup::from_table(k, table).map_err(|e| Error::Parse(e.to_string()))?;
            // τ_x and its inverse for every object
            let mut tau = HashMap::new();
            let mut tau_inv = HashMap::new();
            for &x in objs {
                let t = if x == b {
                    identity[b]
                } else {
                    match hom.get(&(b, x)) {
                        Some(v) => v[0],
                        None => return parse_err(format!("objects {b} and {x} are not connected both ways")),
                    }
                };
                let back = hom
                    .get(&(x, b))
                    .and_then(|v| v.iter().copied().find(|&w| compose(w, t) == identity[b]))
                    .ok_or_else(|| Error::Parse(format!("morphism {t} has no inverse")))?;
                tau.insert(x, t);
                tau_inv.insert(x, back);
            }
            for &x in objs {
                for &m in &out_of[x] {
                    let y = self.morphisms[m].tgt;
                    let a = compose(tau_inv[&y], compose(m, tau[&x]));
                    label_of[m] = pos[&a];
                }
            }
            if objs.iter().any(|&x| out_of[x].len() != objs.len() * k) {
                return parse_err("hom-sets within a component must all have the same size");
            }
            groups.push(Arc::new(group));
        }
        let g = FiniteGroupoid::from_components(
            self.objects.clone(),
            components.into_iter().zip(groups).collect(),
        )
        .map_err(|e| Error::Parse(e.to_string()))?;
        let relabel: Vec<usize> = self
            .morphisms
            .iter()
            .map(|m| {
                g.morphism_id(Mor {
                    src: m.src,
                    tgt: m.tgt,
                    label: label_of[m.id],
                })
            })
            .collect();
        let mut seen = vec![false; nm];
        for &r in &relabel {
            if std::mem::replace(&mut seen[r], true) {
                return parse_err("two morphisms have the same coordinates");
            }
        }
        for (&(gi, fi), &gf) in &comp {
            let (gm, fm) = (g.morphism(relabel[gi]), g.morphism(relabel[fi]));
            if g.morphism_id(g.compose(gm, fm)) != relabel[gf] {
                return parse_err("composition table is not a groupoid");
            }
        }
        Ok((g, relabel))
    }
}

impl FunctorJson {
    pub fn emit(f: &GroupoidFunctor) -> Self {
        Self {
            domain: GroupoidJson::emit(f.domain()),
            codomain: GroupoidJson::emit(f.codomain()),
            object_map: f.object_map(),
            morphism_map: f.morphism_map(),
        }
    }

    pub fn parse(&self) -> Result<GroupoidFunctor> {
        let (dom, rd) = self.domain.parse()?;
        let (cod, rc) = self.codomain.parse()?;
        if self.morphism_map.len() != rd.len() || self.morphism_map.iter().any(|&m| m >= rc.len()) {
            return parse_err("morphism map does not match the groupoids");
        }
        let mut map = vec![0usize; rd.len()];
        for (old, &img) in self.morphism_map.iter().enumerate() {
            map[rd[old]] = rc[img];
        }
        GroupoidFunctor::from_maps(Arc::new(dom), Arc::new(cod), self.object_map.clone(), &map)
            .map_err(|e| Error::Parse(e.to_string()))
    }
}
