//! The Green correspondence for a chain `D ≤ H ≤ G`: quotient hom spaces,
//! membership in the families `X`, `Y`, and correspondents in both
//! directions.

mod report;

use std::sync::Arc;

use crate::catalog::ScenarioConfig;
use crate::error::{input, Error, Result};
use crate::fp::FpMatrix;
use crate::modrep::{
    decompose, factoring_subspace, hom_dim, vertex, FpModule, Indecomposable, Induction, Vertex,
};
use crate::perm::{conjugacy_classes, normalizer, x_y_u_families, Families, PermGroup, SubgroupEmbedding};

pub use report::{
    verify_scenario, CorrespondencePair, FamilyRow, FamilyTable, FfRow, GreenReport, MatrixJson, ModuleEntry,
    Verdicts, Witness, SCHEMA_VERSION,
};

/// A chain `D ≤ H ≤ G` with a prime and the derived families.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub p: u32,
    pub g: Arc<PermGroup>,
    pub h: SubgroupEmbedding,
    pub d: SubgroupEmbedding,
    pub families: Families,
    /// `N_G(D) ≤ H`.
    pub normalizer_condition: bool,
    d_in_h: SubgroupEmbedding,
    x_over_g: Vec<SubgroupEmbedding>,
    x_over_h: Vec<SubgroupEmbedding>,
    y_over_h: Vec<SubgroupEmbedding>,
    induction: Induction,
}

fn up_to_conjugacy(subs: Vec<SubgroupEmbedding>) -> Vec<SubgroupEmbedding> {
    let mut out: Vec<SubgroupEmbedding> = Vec::new();
    for s in subs {
        if !out.iter().any(|r| r.is_conjugate_to(&s)) {
            out.push(s);
        }
    }
    out
}

impl Scenario {
    pub fn new(config: &ScenarioConfig) -> Result<Self> {
        let (g, h, d) = config.groups()?;
        Self::build(config.clone(), g, h, d)
    }

    /// A scenario from subgroups `D ≤ H` of a common group.
    pub fn from_groups(name: &str, p: u32, h: &SubgroupEmbedding, d: &SubgroupEmbedding) -> Result<Self> {
        let g = h.ambient().clone();
        let config = ScenarioConfig {
            name: name.into(),
            p,
            degree: g.degree(),
            generators_g: g.generators().iter().map(|x| x.to_string()).collect(),
            generators_h: h.generator_strings(),
            generators_d: d.generator_strings(),
        };
        if !crate::fp::is_prime(p) {
            return input(format!("{p} is not prime"));
        }
        Self::build(config, g, h.clone().with_tag("H"), d.clone().with_tag("D"))
    }

    fn build(config: ScenarioConfig, g: Arc<PermGroup>, h: SubgroupEmbedding, d: SubgroupEmbedding) -> Result<Self> {
        if !h.ambient().same_group(&g) || !d.same_ambient(&h) {
            return input("H and D must be subgroups of G");
        }
        let families = x_y_u_families(&h, &d)?;
        let normalizer_condition = normalizer(&d).is_contained_in(&h);
        let d_in_h = d.relative_to(&h)?;
        let x_over_g = conjugacy_classes(&families.x).into_iter().map(|m| m.subgroup.clone()).collect();
        let x_over_h = up_to_conjugacy(
            families
                .x
                .iter()
                .map(|m| m.subgroup.relative_to(&h))
                .collect::<Result<Vec<_>>>()?,
        );
        let y_over_h = up_to_conjugacy(
            families
                .y
                .iter()
                .map(|m| m.subgroup.relative_to(&h))
                .collect::<Result<Vec<_>>>()?,
        );
        let induction = Induction::new(&h);
        Ok(Self {
            p: config.p,
            config,
            g,
            h,
            d,
            families,
            normalizer_condition,
            d_in_h,
            x_over_g,
            x_over_h,
            y_over_h,
            induction,
        })
    }

    pub fn name(&self) -> &str {
        &self.config.name
    }

    pub fn is_degenerate(&self) -> bool {
        self.h.order() == self.g.order()
    }

    /// `D` as a subgroup of `H`.
    pub fn d_in_h(&self) -> &SubgroupEmbedding {
        &self.d_in_h
    }

    /// Members of `X` up to `G`-conjugacy.
    pub fn x_over_g(&self) -> &[SubgroupEmbedding] {
        &self.x_over_g
    }

    /// Members of `X` as subgroups of `H`, up to `H`-conjugacy.
    pub fn x_over_h(&self) -> &[SubgroupEmbedding] {
        &self.x_over_h
    }

    /// Members of `Y` as subgroups of `H`, up to `H`-conjugacy.
    pub fn y_over_h(&self) -> &[SubgroupEmbedding] {
        &self.y_over_h
    }

    pub fn induction(&self) -> &Induction {
        &self.induction
    }

    pub fn induce(&self, n: &FpModule) -> Result<FpModule> {
        self.induction.induce(n)
    }

    pub fn restrict(&self, m: &FpModule) -> Result<FpModule> {
        self.induction.restrict(m)
    }

    /// Modules over `D` from which the finite test set is induced: trivial,
    /// regular, `Ω(k)`, `Ω^{-1}(k)`, and for cyclic `D` the Jordan-block
    /// modules of a generator.
    pub fn d_test_modules(&self) -> Result<Vec<(String, FpModule)>> {
        let dg = self.d_in_h.group().clone();
        let p = self.p;
        let n = dg.order();
        let reg = FpModule::regular(dg.clone(), p);
        let mut out = vec![
            ("k_D".to_string(), FpModule::trivial(dg.clone(), p)),
            ("kD".to_string(), reg.clone()),
        ];
        if n > 1 {
            let aug: Vec<Vec<u32>> = (1..n)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[0] = 1;
                    v[i] = p - 1;
                    v
                })
                .collect();
            out.push(("Omega(k_D)".into(), reg.submodule(&FpMatrix::from_columns(p, n, &aug))?));
            let norm = FpMatrix::from_columns(p, n, &[vec![1; n]]);
            out.push(("Omega^-1(k_D)".into(), reg.quotient(&norm)?));
        }
        if let Some(c) = (0..n).find(|&x| dg.element_order(x) == n) {
            let mut q = 1;
            while n % (q * p as usize) == 0 {
                q *= p as usize;
            }
            for len in 2..q {
                let mut j = FpMatrix::identity(p, len);
                for i in 0..len - 1 {
                    j.set(i, i + 1, 1);
                }
                let mut mats = vec![FpMatrix::zeros(p, len, len); n];
                let (mut x, mut power) = (dg.identity(), FpMatrix::identity(p, len));
                for _ in 0..n {
                    mats[x] = power.clone();
                    x = dg.mul(c, x);
                    power = j.mul(&power);
                }
                out.push((format!("J{len}"), FpModule::from_element_matrices(dg.clone(), p, len, mats)?));
            }
        }
        Ok(out)
    }

    /// The finite test set over `H`: inductions of the `D` test modules,
    /// the trivial and the regular module.
    pub fn h_test_modules(&self) -> Result<Vec<(String, FpModule)>> {
        let up = Induction::new(&self.d_in_h);
        let hg = self.h.group().clone();
        let mut out = Vec::new();
        for (label, m) in self.d_test_modules()? {
            out.push((format!("Ind({label})"), up.induce(&m)?));
        }
        out.push(("k_H".into(), FpModule::trivial(hg.clone(), self.p)));
        out.push(("kH".into(), FpModule::regular(hg, self.p)));
        Ok(out)
    }
}

/// An indecomposable module with its vertex.
#[derive(Clone, Debug)]
pub struct Classified {
    pub module: Indecomposable,
    pub vertex: Vertex,
}

impl Classified {
    pub fn new(m: Indecomposable) -> Result<Self> {
        let vertex = vertex(&m)?;
        Ok(Self { module: m, vertex })
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Vertex subconjugate to a member of the family.
    pub fn lies_in(&self, family: &[SubgroupEmbedding]) -> bool {
        family.iter().any(|x| self.vertex.subgroup.is_subconjugate_to(x))
    }

    pub fn is_trivial(&self) -> bool {
        let m = self.module.module();
        m.dim() == 1 && m.action().iter().all(|a| a.is_identity())
    }
}

fn check_family(m: &FpModule, family: &[SubgroupEmbedding]) -> Result<()> {
    match family.iter().find(|x| !x.ambient().same_group(m.group())) {
        Some(x) => input(format!("{} is not a subgroup of the module's group", x.tag())),
        None => Ok(()),
    }
}

/// `dim Hom(m, n)` minus the maps factoring through modules induced from
/// the family.
pub fn quotient_hom_dim(m: &FpModule, n: &FpModule, family: &[SubgroupEmbedding]) -> Result<usize> {
    Ok(hom_dim(m, n)? - factoring_subspace(m, n, family)?.len())
}

/// Whether `m` is relatively projective with respect to the family, decided
/// by vertex subconjugacy.
pub fn is_x_object(m: &Indecomposable, family: &[SubgroupEmbedding]) -> Result<bool> {
    check_family(m.module(), family)?;
    if family.is_empty() {
        return Ok(false);
    }
    Ok(Classified::new(m.clone())?.lies_in(family))
}

/// The same question decided by `m | Ind_X Res_X m` for some member `X`.
pub fn is_x_object_by_summands(m: &Indecomposable, family: &[SubgroupEmbedding]) -> Result<bool> {
    check_family(m.module(), family)?;
    for x in family {
        let ind = Induction::new(x);
        if m.is_summand_of(&ind.induce(&ind.restrict(m.module())?)?)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A correspondent with the split injection into the module it was cut
/// from (`Ind n` going up, `Res m` going down) and the retraction.
#[derive(Clone, Debug)]
pub struct Correspondent {
    pub module: Classified,
    pub injection: FpMatrix,
    pub retraction: FpMatrix,
    /// Dimensions of the discarded summands, with repetition.
    pub discarded: Vec<usize>,
}

fn free_part(big: &FpModule, family: &[SubgroupEmbedding], seed: u64) -> Result<Correspondent> {
    let dec = decompose(big, seed)?;
    let mut survivors = Vec::new();
    let mut discarded = Vec::new();
    for s in dec.summands {
        let c = Classified::new(s.indecomposable)?;
        if c.lies_in(family) {
            discarded.extend(std::iter::repeat(c.dim()).take(s.multiplicity));
        } else {
            survivors.push((c, s.multiplicity));
        }
    }
    if survivors.len() != 1 || survivors[0].1 != 1 {
        let found: Vec<(usize, usize)> = survivors.iter().map(|(c, k)| (c.dim(), *k)).collect();
        return Err(Error::TheoremViolation(format!(
            "expected exactly one free summand of multiplicity 1, found (dim, multiplicity) {found:?}"
        )));
    }
    let (module, _) = survivors.pop().unwrap();
    let (injection, retraction) = module
        .module
        .split_injection_into(big)?
        .ok_or_else(|| Error::TheoremViolation("decomposition summand is not a summand".into()))?;
    discarded.sort_unstable();
    Ok(Correspondent {
        module,
        injection,
        retraction,
        discarded,
    })
}

/// The `X`-free part of `Ind_H^G n`.
pub fn correspondent_up(n: &Classified, sc: &Scenario, seed: u64) -> Result<Correspondent> {
    if !n.module.module().group().same_group(sc.h.group()) {
        return input("module is not over H");
    }
    if !n.lies_in(std::slice::from_ref(&sc.d_in_h)) {
        return input("module is not relatively D-projective");
    }
    if n.lies_in(&sc.x_over_h) {
        return input("module is an X-object over H");
    }
    free_part(&sc.induce(n.module.module())?, &sc.x_over_g, seed)
}

/// The `Y`-free part of `Res_H^G m`.
pub fn correspondent_down(m: &Classified, sc: &Scenario, seed: u64) -> Result<Correspondent> {
    if !m.module.module().group().same_group(&sc.g) {
        return input("module is not over G");
    }
    if !m.lies_in(std::slice::from_ref(&sc.d)) {
        return input("module is not relatively D-projective");
    }
    if m.lies_in(&sc.x_over_g) {
        return input("module is an X-object over G");
    }
    free_part(&sc.restrict(m.module.module())?, &sc.y_over_h, seed)
}

#[cfg(test)]
mod tests;
