use super::SubgroupEmbedding;
use crate::error::{input, Error, Result};

/// One double coset `H g K`, represented by its minimal element `g`, with
/// the stabilizer-type subgroup `H ∩ gKg^{-1}`.
#[derive(Clone, Debug)]
pub struct DoubleCoset {
    pub rep: usize,
    pub size: usize,
    pub intersection: SubgroupEmbedding,
}

/// The double cosets `H\G/K` in increasing order of representatives.
///
/// Checks the orbit-counting identity `|G| = Σ |H||K| / |H ∩ gKg^{-1}|`
/// before returning.
pub fn double_cosets(h: &SubgroupEmbedding, k: &SubgroupEmbedding) -> Result<Vec<DoubleCoset>> {
    if !h.same_ambient(k) {
        return input(format!("{} and {} live in different groups", h.tag(), k.tag()));
    }
    let g = h.ambient();
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for rep in 0..n {
        if seen[rep] {
            continue;
        }
        let mut size = 0;
        for &a in h.elements() {
            let ar = g.mul(a, rep);
            for &b in k.elements() {
                let x = g.mul(ar, b);
                if !seen[x] {
                    seen[x] = true;
                    size += 1;
                }
            }
        }
        let conj = k.conjugate(rep);
        let mut intersection = h.intersection(&conj);
        intersection = intersection.with_tag(format!("{}∩{}^{}", h.tag(), k.tag(), rep));
        out.push(DoubleCoset {
            rep,
            size,
            intersection,
        });
    }
    let total: usize = out
        .iter()
        .map(|c| h.order() * k.order() / c.intersection.order())
        .sum();
    let sizes_ok = out
        .iter()
        .all(|c| c.size == h.order() * k.order() / c.intersection.order());
    if total != n || !sizes_ok {
        return Err(Error::TheoremViolation(format!(
            "double coset orbit count {total} does not match group order {n}"
        )));
    }
    Ok(out)
}

/// A double-coset representative with its family subgroup.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub rep: usize,
    pub subgroup: SubgroupEmbedding,
}

/// The three families attached to `D ≤ H ≤ G`, one member per double coset
/// outside `H`:
/// `x` = `D ∩ gDg^{-1}` over `DgD`, `y` = `H ∩ gDg^{-1}` over `HgD`,
/// `u` = `H ∩ gHg^{-1}` over `HgH`.
#[derive(Clone, Debug)]
pub struct Families {
    pub x: Vec<FamilyMember>,
    pub y: Vec<FamilyMember>,
    pub u: Vec<FamilyMember>,
}

fn outside(h: &SubgroupEmbedding, cosets: Vec<DoubleCoset>, tag: &str) -> Vec<FamilyMember> {
    cosets
        .into_iter()
        .filter(|c| !h.contains(c.rep))
        .enumerate()
        .map(|(i, c)| FamilyMember {
            rep: c.rep,
            subgroup: c.intersection.with_tag(format!("{tag}{i}")),
        })
        .collect()
}

pub fn x_y_u_families(h: &SubgroupEmbedding, d: &SubgroupEmbedding) -> Result<Families> {
    if !d.is_contained_in(h) {
        return input(format!("{} is not contained in {}", d.tag(), h.tag()));
    }
    Ok(Families {
        x: outside(h, double_cosets(d, d)?, "X"),
        y: outside(h, double_cosets(h, d)?, "Y"),
        u: outside(h, double_cosets(h, h)?, "U"),
    })
}

/// Members up to conjugacy in the ambient group, keeping the first
/// representative of each class.
pub fn conjugacy_classes(members: &[FamilyMember]) -> Vec<&FamilyMember> {
    let mut out: Vec<&FamilyMember> = Vec::new();
    for m in members {
        if !out.iter().any(|r| r.subgroup.is_conjugate_to(&m.subgroup)) {
            out.push(m);
        }
    }
    out
}

/// TSV with columns `coset_rep`, `subgroup_order`, `subgroup_generators`.
/// Representatives and generators are written in cycle notation; generators
/// are separated by `;`.
pub fn family_tsv(members: &[FamilyMember]) -> String {
    let mut s = String::from("coset_rep\tsubgroup_order\tsubgroup_generators\n");
    for m in members {
        let amb = m.subgroup.ambient();
        let gens = m.subgroup.generator_strings();
        let gens = if gens.is_empty() {
            "()".to_string()
        } else {
            gens.join(";")
        };
        s.push_str(&format!(
            "{}\t{}\t{}\n",
            amb.element(m.rep),
            m.subgroup.order(),
            gens
        ));
    }
    s
}

impl Families {
    pub fn is_empty(&self) -> bool {
        self.x.is_empty() && self.y.is_empty() && self.u.is_empty()
    }
}
