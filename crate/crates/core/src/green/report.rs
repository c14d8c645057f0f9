use serde::{Deserialize, Serialize};

use super::{correspondent_down, correspondent_up, is_x_object_by_summands, quotient_hom_dim, Classified, Scenario};
use crate::catalog::ScenarioConfig;
use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::groupoid::{group_groupoid, subgroup_functor, GroupoidFunctor};
use crate::modrep::{decompose, hom_dim, Certificate, FpModule, Indecomposable, ModuleJson};
use crate::partial::{boundary_components, matches_family, partial};
use crate::perm::{FamilyMember, SubgroupEmbedding};

pub const SCHEMA_VERSION: &str = "green-report/1";

/// Summand cross-checks of the vertex test run only up to this group order.
const CROSS_CHECK_MAX_ORDER: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub coset_rep: String,
    pub order: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTable {
    pub x: Vec<FamilyRow>,
    pub y: Vec<FamilyRow>,
    pub u: Vec<FamilyRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleEntry {
    pub id: String,
    /// Test module in whose decomposition the class first appeared.
    pub origin: String,
    pub dim: usize,
    pub certificate: Certificate,
    pub trivial: bool,
    pub vertex_order: usize,
    pub vertex_generators: Vec<String>,
    pub relatively_d_projective: bool,
    pub x_object: bool,
    /// Only reported over `H`.
    pub y_object: Option<bool>,
    pub eligible: bool,
    pub module: ModuleJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u32>,
}

impl From<&FpMatrix> for MatrixJson {
    fn from(m: &FpMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.flatten(),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self, p: u32) -> Result<FpMatrix> {
        FpMatrix::from_data(p, self.rows, self.cols, self.entries.clone())
    }
}

/// A split injection `source → target` with its retraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub injection: MatrixJson,
    pub retraction: MatrixJson,
    pub verified: bool,
}

impl Witness {
    fn new(source: &FpModule, target: &FpModule, injection: &FpMatrix, retraction: &FpMatrix) -> Self {
        let verified = source.is_hom_to(target, injection)
            && target.is_hom_to(source, retraction)
            && retraction.mul(injection).is_identity();
        Self {
            injection: injection.into(),
            retraction: retraction.into(),
            verified,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondencePair {
    pub h: String,
    pub g: String,
    /// `m → Ind n`.
    pub up_witness: Witness,
    /// `n → Res m`.
    pub down_witness: Witness,
    pub round_trip: bool,
    pub vertex_preserved: bool,
    pub vertex_is_d: (bool, bool),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FfRow {
    pub n1: String,
    pub n2: String,
    pub hom_h: usize,
    pub quotient_h: usize,
    pub hom_g: usize,
    pub quotient_g: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub families_match_boundaries: bool,
    pub fully_faithful: bool,
    pub bijection: bool,
    pub round_trips: bool,
    pub witnesses: bool,
    pub vertices_preserved: bool,
    /// `None` without the normalizer condition.
    pub vertex_d_restriction: Option<bool>,
    /// `None` when the group is too large for the summand test.
    pub x_membership_cross_check: Option<bool>,
    /// `None` unless `H = G`.
    pub identity_correspondence: Option<bool>,
}

impl Verdicts {
    pub fn all_pass(&self) -> bool {
        self.families_match_boundaries
            && self.fully_faithful
            && self.bijection
            && self.round_trips
            && self.witnesses
            && self.vertices_preserved
            && self.vertex_d_restriction != Some(false)
            && self.x_membership_cross_check != Some(false)
            && self.identity_correspondence != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenReport {
    pub schema_version: String,
    pub scenario: ScenarioConfig,
    pub seed: u64,
    pub normalizer_condition: bool,
    pub families: FamilyTable,
    pub indecomposables_h: Vec<ModuleEntry>,
    pub indecomposables_g: Vec<ModuleEntry>,
    pub correspondence_pairs: Vec<CorrespondencePair>,
    pub ff_table: Vec<FfRow>,
    pub verdicts: Verdicts,
    pub failures: Vec<String>,
}

impl GreenReport {
    pub fn passed(&self) -> bool {
        self.verdicts.all_pass() && self.failures.is_empty()
    }

    pub fn entry_h(&self, id: &str) -> Option<&ModuleEntry> {
        self.indecomposables_h.iter().find(|e| e.id == id)
    }

    pub fn entry_g(&self, id: &str) -> Option<&ModuleEntry> {
        self.indecomposables_g.iter().find(|e| e.id == id)
    }

    pub fn ff_tsv(&self) -> String {
        let mut s = String::from("n1\tn2\thom_h\tquotient_h\thom_g\tquotient_g\tequal\n");
        for r in &self.ff_table {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.n1, r.n2, r.hom_h, r.quotient_h, r.hom_g, r.quotient_g, r.equal
            ));
        }
        s
    }

    pub fn pairs_tsv(&self) -> String {
        let mut s = String::from("h\tg\tdim_h\tdim_g\tround_trip\tvertex_preserved\twitnesses\n");
        for c in &self.correspondence_pairs {
            let dim = |e: Option<&ModuleEntry>| e.map_or(0, |e| e.dim);
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                c.h,
                c.g,
                dim(self.entry_h(&c.h)),
                dim(self.entry_g(&c.g)),
                c.round_trip,
                c.vertex_preserved,
                c.up_witness.verified && c.down_witness.verified
            ));
        }
        s
    }

    pub fn verdicts_tsv(&self) -> String {
        let v = serde_json::to_value(&self.verdicts).expect("verdicts serialize");
        let mut s = String::from("verdict\tvalue\n");
        if let serde_json::Value::Object(map) = v {
            for (k, x) in map {
                s.push_str(&format!("{k}\t{x}\n"));
            }
        }
        s
    }
}

fn family_rows(members: &[FamilyMember]) -> Vec<FamilyRow> {
    members
        .iter()
        .map(|m| FamilyRow {
            coset_rep: m.subgroup.ambient().element(m.rep).to_string(),
            order: m.subgroup.order(),
            generators: m.subgroup.generator_strings(),
        })
        .collect()
}

fn families_match_boundaries(sc: &Scenario) -> Result<bool> {
    let g_gpd = group_groupoid(&sc.g);
    let i = subgroup_functor(&sc.h, &g_gpd)?;
    let j = subgroup_functor(sc.d_in_h(), i.domain())?;
    let id_h = GroupoidFunctor::identity(i.domain());
    let dd = partial(&i, &j, &j)?;
    let hd = partial(&i, &id_h, &j)?;
    let hh = partial(&i, &id_h, &id_h)?;
    let f = &sc.families;
    Ok(matches_family(&boundary_components(&dd, &sc.d, &sc.d), &f.x)
        && matches_family(&boundary_components(&hd, &sc.h, &sc.d), &f.y)
        && matches_family(&boundary_components(&hh, &sc.h, &sc.h), &f.u))
}

/// Indecomposable summands of the modules up to isomorphism, in order of
/// first appearance, labelled by the module they came from.
fn collect_classes(modules: Vec<(String, FpModule)>, seed: u64) -> Result<Vec<(String, Indecomposable)>> {
    let mut out: Vec<(String, Indecomposable)> = Vec::new();
    for (label, m) in modules {
        for s in decompose(&m, seed)?.summands {
            let mut known = false;
            for (_, c) in &out {
                if c.is_isomorphic_to(&s.indecomposable)? {
                    known = true;
                    break;
                }
            }
            if !known {
                out.push((label.clone(), s.indecomposable));
            }
        }
    }
    Ok(out)
}

fn find_class(classes: &[Classified], m: &Indecomposable) -> Result<Option<(usize, FpMatrix)>> {
    for (i, c) in classes.iter().enumerate() {
        if let Some(f) = m.isomorphism_to(&c.module)? {
            return Ok(Some((i, f)));
        }
    }
    Ok(None)
}

struct Side<'a> {
    prefix: &'static str,
    d: &'a SubgroupEmbedding,
    x: &'a [SubgroupEmbedding],
    y: Option<&'a [SubgroupEmbedding]>,
}

impl Side<'_> {
    fn eligible(&self, c: &Classified) -> bool {
        c.lies_in(std::slice::from_ref(self.d)) && !c.lies_in(self.x)
    }

    fn entry(&self, i: usize, origin: &str, c: &Classified) -> ModuleEntry {
        ModuleEntry {
            id: format!("{}{i}", self.prefix),
            origin: origin.to_string(),
            dim: c.dim(),
            certificate: c.module.certificate().clone(),
            trivial: c.is_trivial(),
            vertex_order: c.vertex.subgroup.order(),
            vertex_generators: c.vertex.subgroup.generator_strings(),
            relatively_d_projective: c.lies_in(std::slice::from_ref(self.d)),
            x_object: c.lies_in(self.x),
            y_object: self.y.map(|y| c.lies_in(y)),
            eligible: self.eligible(c),
            module: ModuleJson::emit(c.module.module()),
        }
    }
}

/// Checks the correspondence on the finite test set of the scenario.
/// Failed statements are recorded in `failures` and the verdicts.
pub fn verify_scenario(sc: &Scenario, seed: u64) -> Result<GreenReport> {
    let mut failures = Vec::new();
    let boundaries_ok = families_match_boundaries(sc)?;
    if !boundaries_ok {
        failures.push("families differ from the boundary components".to_string());
    }

    let h_side = Side {
        prefix: "H",
        d: sc.d_in_h(),
        x: sc.x_over_h(),
        y: Some(sc.y_over_h()),
    };
    let g_side = Side {
        prefix: "G",
        d: &sc.d,
        x: sc.x_over_g(),
        y: None,
    };

    let h_raw = collect_classes(sc.h_test_modules()?, seed)?;
    let mut h_classes = Vec::with_capacity(h_raw.len());
    for (_, m) in &h_raw {
        h_classes.push(Classified::new(m.clone())?);
    }
    let mut g_modules = Vec::new();
    for (i, c) in h_classes.iter().enumerate() {
        g_modules.push((format!("Ind(H{i})"), sc.induce(c.module.module())?));
    }
    g_modules.push(("k_G".into(), FpModule::trivial(sc.g.clone(), sc.p)));
    g_modules.push(("kG".into(), FpModule::regular(sc.g.clone(), sc.p)));
    let g_raw = collect_classes(g_modules, seed)?;
    let mut g_classes = Vec::with_capacity(g_raw.len());
    for (_, m) in &g_raw {
        g_classes.push(Classified::new(m.clone())?);
    }

    let x_membership_cross_check = if sc.g.order() <= CROSS_CHECK_MAX_ORDER {
        let mut ok = true;
        for (c, side) in h_classes
            .iter()
            .map(|c| (c, &h_side))
            .chain(g_classes.iter().map(|c| (c, &g_side)))
        {
            let by_summands = is_x_object_by_summands(&c.module, side.x)?;
            if by_summands != c.lies_in(side.x) {
                ok = false;
                failures.push(format!(
                    "X-membership of a {}-dimensional module differs between vertex and summand tests",
                    c.dim()
                ));
            }
        }
        Some(ok)
    } else {
        None
    };

    let eligible_h: Vec<usize> = (0..h_classes.len()).filter(|&i| h_side.eligible(&h_classes[i])).collect();
    let eligible_g: Vec<usize> = (0..g_classes.len()).filter(|&i| g_side.eligible(&g_classes[i])).collect();

    let mut pairs = Vec::new();
    let mut image: Vec<usize> = Vec::new();
    for &i in &eligible_h {
        let n = &h_classes[i];
        let up = match correspondent_up(n, sc, seed) {
            Ok(up) => up,
            Err(Error::TheoremViolation(msg)) => {
                failures.push(format!("H{i} up: {msg}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let ind_n = sc.induce(n.module.module())?;
        let Some((j, iso_m)) = find_class(&g_classes, &up.module.module)? else {
            failures.push(format!("H{i} up: correspondent missing from the G classes"));
            continue;
        };
        // transport the witness to the listed representative
        let iso_m_inv = iso_m.inverse().expect("isomorphisms are invertible");
        let m = &g_classes[j];
        let up_witness = Witness::new(
            m.module.module(),
            &ind_n,
            &up.injection.mul(&iso_m_inv),
            &iso_m.mul(&up.retraction),
        );

        let res_m = sc.restrict(m.module.module())?;
        let (round_trip, down_witness) = match correspondent_down(m, sc, seed) {
            Ok(down) => match down.module.module.isomorphism_to(&n.module)? {
                Some(f) => {
                    // f: n' → n
                    let f_inv = f.inverse().expect("isomorphisms are invertible");
                    let w = Witness::new(
                        n.module.module(),
                        &res_m,
                        &down.injection.mul(&f_inv),
                        &f.mul(&down.retraction),
                    );
                    (true, w)
                }
                None => {
                    failures.push(format!("H{i} -> G{j}: restriction returns a different class"));
                    let w = Witness::new(down.module.module.module(), &res_m, &down.injection, &down.retraction);
                    (false, w)
                }
            },
            Err(Error::TheoremViolation(msg)) => {
                failures.push(format!("G{j} down: {msg}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        if !up_witness.verified || !down_witness.verified {
            failures.push(format!("H{i} <-> G{j}: witness check failed"));
        }
        let lifted = n.vertex.subgroup.lifted_through(&sc.h)?;
        let vertex_preserved = lifted.is_conjugate_to(&m.vertex.subgroup);
        if !vertex_preserved {
            failures.push(format!("H{i} <-> G{j}: vertices are not conjugate"));
        }
        let vertex_is_d = (
            n.vertex.subgroup.is_conjugate_to(sc.d_in_h()),
            m.vertex.subgroup.is_conjugate_to(&sc.d),
        );
        image.push(j);
        pairs.push(CorrespondencePair {
            h: format!("H{i}"),
            g: format!("G{j}"),
            up_witness,
            down_witness,
            round_trip,
            vertex_preserved,
            vertex_is_d,
        });
    }

    let mut sorted_image = image.clone();
    sorted_image.sort_unstable();
    sorted_image.dedup();
    let bijection = pairs.len() == eligible_h.len() && sorted_image.len() == image.len() && sorted_image == eligible_g;
    if !bijection {
        failures.push(format!(
            "correspondence is not a bijection: {} eligible over H, {} over G, images {:?}",
            eligible_h.len(),
            eligible_g.len(),
            image
        ));
    }

    let vertex_d_restriction = sc.normalizer_condition.then(|| {
        let ok = pairs.iter().all(|c| c.vertex_is_d.0 == c.vertex_is_d.1);
        if !ok {
            failures.push("vertex D is not preserved by the correspondence".into());
        }
        ok
    });

    let mut ff_table = Vec::new();
    let induced: Vec<FpModule> = eligible_h
        .iter()
        .map(|&i| sc.induce(h_classes[i].module.module()))
        .collect::<Result<_>>()?;
    for (a, &i1) in eligible_h.iter().enumerate() {
        for (b, &i2) in eligible_h.iter().enumerate() {
            let (n1, n2) = (h_classes[i1].module.module(), h_classes[i2].module.module());
            let row = FfRow {
                n1: format!("H{i1}"),
                n2: format!("H{i2}"),
                hom_h: hom_dim(n1, n2)?,
                quotient_h: quotient_hom_dim(n1, n2, sc.x_over_h())?,
                hom_g: hom_dim(&induced[a], &induced[b])?,
                quotient_g: quotient_hom_dim(&induced[a], &induced[b], sc.x_over_g())?,
                equal: false,
            };
            let equal = row.quotient_h == row.quotient_g;
            if !equal {
                failures.push(format!("quotient hom dimensions differ for (H{i1}, H{i2})"));
            }
            ff_table.push(FfRow { equal, ..row });
        }
    }

    let round_trips = pairs.iter().all(|c| c.round_trip);
    let identity_correspondence = sc.is_degenerate().then(|| {
        sc.families.x.is_empty()
            && bijection
            && round_trips
            && pairs.iter().all(|c| {
                let dims = |id: &str, list: &[Classified]| list[id[1..].parse::<usize>().unwrap()].dim();
                dims(&c.h, &h_classes) == dims(&c.g, &g_classes)
            })
    });

    let verdicts = Verdicts {
        families_match_boundaries: boundaries_ok,
        fully_faithful: ff_table.iter().all(|r| r.equal),
        bijection,
        round_trips,
        witnesses: pairs.iter().all(|c| c.up_witness.verified && c.down_witness.verified),
        vertices_preserved: pairs.iter().all(|c| c.vertex_preserved),
        vertex_d_restriction,
        x_membership_cross_check,
        identity_correspondence,
    };

    Ok(GreenReport {
        schema_version: SCHEMA_VERSION.into(),
        scenario: sc.config.clone(),
        seed,
        normalizer_condition: sc.normalizer_condition,
        families: FamilyTable {
            x: family_rows(&sc.families.x),
            y: family_rows(&sc.families.y),
            u: family_rows(&sc.families.u),
        },
        indecomposables_h: h_classes
            .iter()
            .zip(&h_raw)
            .enumerate()
            .map(|(i, (c, (origin, _)))| h_side.entry(i, origin, c))
            .collect(),
        indecomposables_g: g_classes
            .iter()
            .zip(&g_raw)
            .enumerate()
            .map(|(i, (c, (origin, _)))| g_side.entry(i, origin, c))
            .collect(),
        correspondence_pairs: pairs,
        ff_table,
        verdicts,
        failures,
    })
}
