//! Command dispatch for the `green` binary. Every command produces a JSON
//! document and one or more TSV tables; `--format` picks which is written.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use green_core::catalog::ScenarioConfig;
use green_core::green::{verify_scenario, FamilyTable, GreenReport, Scenario};
use green_core::groupoid::{group_groupoid, isocomma, subgroup_functor, GroupoidFunctor};
use green_core::modrep::{decompose, vertex, Certificate, FpModule, ModuleJson};
use green_core::partial::{boundary_components, geography_check, matches_family, partial, tricky_factorization};
use green_core::perm::{family_tsv, FamilyMember, PermGroup};
use green_core::Error;

pub use green_core::green::SCHEMA_VERSION;

#[derive(Parser, Debug)]
#[command(name = "green", about = "Green correspondence computations for D ≤ H ≤ G", disable_version_flag = true)]
pub struct Cli {
    /// Print the report schema version.
    #[arg(long)]
    pub version: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Components of the isocommas (E/F/G) for E, F in {D, H}.
    Isocomma(Options),
    /// Boundary components against the families, geography and the
    /// factorization check.
    Partial(Options),
    /// The families X, Y, U.
    Families(Options),
    /// Krull-Schmidt decomposition of a module (default: regular module of G).
    Decompose(ModuleOptions),
    /// Vertices of the summands of a module (default: trivial module of G).
    Vertex(ModuleOptions),
    /// Correspondence pairs on the finite test set.
    Correspond(Options),
    /// Full verification report.
    Verify(Options),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Scenario file with p, degree and generators of G, H, D.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for report files instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ModuleOptions {
    #[command(flatten)]
    pub options: Options,
    /// Module file; overrides the scenario default.
    #[arg(long)]
    pub module: Option<PathBuf>,
}

/// Why a command did not succeed, with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit code 2: malformed or inconsistent input.
    Parse(String),
    /// Exit code 1: a failed check or an undecided computation.
    Violation(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Violation(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Violation(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremViolation(_) | Error::Undecided(_) => Failure::Violation(e.to_string()),
            _ => Failure::Parse(e.to_string()),
        }
    }
}

/// What a command produced: the JSON document, named TSV tables, and
/// whether every check passed.
pub struct Emitted {
    pub stem: &'static str,
    pub json: String,
    pub tables: Vec<(String, String)>,
    pub ok: bool,
    pub diagnostic: String,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn load_scenario(path: &Path) -> Result<ScenarioConfig, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let config: ScenarioConfig =
        serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    config.groups()?;
    Ok(config)
}

fn scenario(opts: &Options) -> Result<Scenario, Failure> {
    let path = opts
        .scenario
        .as_ref()
        .ok_or_else(|| Failure::Parse("--scenario is required".into()))?;
    Ok(Scenario::new(&load_scenario(path)?)?)
}

pub fn load_module(path: &Path, group: Option<Arc<PermGroup>>) -> Result<FpModule, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let json: ModuleJson =
        serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    Ok(json.parse(group)?)
}

fn perm_string(g: &PermGroup, x: usize) -> String {
    g.element(x).to_string()
}

#[derive(Serialize)]
struct Header<'a> {
    schema_version: &'a str,
    command: &'a str,
    scenario: &'a str,
}

fn header<'a>(command: &'a str, sc: &'a Scenario) -> Header<'a> {
    Header {
        schema_version: SCHEMA_VERSION,
        command,
        scenario: sc.name(),
    }
}

#[derive(Serialize)]
struct ComponentRow {
    coset_rep: String,
    objects: usize,
    stabilizer_order: usize,
}

#[derive(Serialize)]
struct IsocommaRow {
    pair: String,
    objects: usize,
    morphisms: usize,
    components: Vec<ComponentRow>,
}

#[derive(Serialize)]
struct IsocommaReport<'a> {
    #[serde(flatten)]
    header: Header<'a>,
    isocommas: Vec<IsocommaRow>,
}

fn rows_tsv(rows: &[(String, &[ComponentRow])]) -> String {
    let mut s = String::from("pair\tcoset_rep\tobjects\tstabilizer_order\n");
    for (pair, comps) in rows {
        for c in comps.iter() {
            s.push_str(&format!("{pair}\t{}\t{}\t{}\n", c.coset_rep, c.objects, c.stabilizer_order));
        }
    }
    s
}

fn run_isocomma(opts: &Options) -> Result<Emitted, Failure> {
    let sc = scenario(opts)?;
    let g = &sc.g;
    let gpd = group_groupoid(g);
    let mut rows = Vec::new();
    for (e, f) in [(&sc.d, &sc.d), (&sc.h, &sc.d), (&sc.h, &sc.h)] {
        let ie = subgroup_functor(e, &gpd)?;
        let if_ = subgroup_functor(f, &gpd)?;
        let iso = isocomma(&ie, &if_)?;
        let stabs = iso.stabilizer_orders();
        let components = iso
            .groupoid
            .components()
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                let x = iso.triple(comp.base()).2.label;
                // the component through x is the orbit F x E
                let rep = f
                    .elements()
                    .iter()
                    .flat_map(|&a| e.elements().iter().map(move |&b| g.mul(g.mul(a, x), b)))
                    .min()
                    .unwrap();
                (rep, comp.objects().len(), stabs[c])
            })
            .collect::<Vec<_>>();
        let mut components = components;
        components.sort_unstable();
        rows.push(IsocommaRow {
            pair: format!("{},{}", e.tag(), f.tag()),
            objects: iso.num_objects(),
            morphisms: iso.groupoid.num_morphisms(),
            components: components
                .into_iter()
                .map(|(rep, objects, stabilizer_order)| ComponentRow {
                    coset_rep: perm_string(g, rep),
                    objects,
                    stabilizer_order,
                })
                .collect(),
        });
    }
    let table: Vec<(String, &[ComponentRow])> = rows.iter().map(|r| (r.pair.clone(), &r.components[..])).collect();
    let tsv = rows_tsv(&table);
    Ok(Emitted {
        stem: "isocomma",
        json: to_json(&IsocommaReport {
            header: header("isocomma", &sc),
            isocommas: rows,
        }),
        tables: vec![("isocomma".into(), tsv)],
        ok: true,
        diagnostic: String::new(),
    })
}

#[derive(Serialize)]
struct BoundaryRow {
    pair: String,
    family: String,
    matches: bool,
    components: Vec<ComponentRow>,
}

#[derive(Serialize)]
struct PartialReport<'a> {
    #[serde(flatten)]
    header: Header<'a>,
    boundaries: Vec<BoundaryRow>,
    geography: bool,
    factorization: bool,
}

fn run_partial(opts: &Options) -> Result<Emitted, Failure> {
    let sc = scenario(opts)?;
    let gpd = group_groupoid(&sc.g);
    let i = subgroup_functor(&sc.h, &gpd)?;
    let j = subgroup_functor(sc.d_in_h(), i.domain())?;
    let id_h = GroupoidFunctor::identity(i.domain());
    let cases = [
        ("X", &j, &sc.d, &j, &sc.d, &sc.families.x),
        ("Y", &id_h, &sc.h, &j, &sc.d, &sc.families.y),
        ("U", &id_h, &sc.h, &id_h, &sc.h, &sc.families.u),
    ];
    let mut boundaries = Vec::new();
    for (family, e, e_sub, f, f_sub, members) in cases {
        let p = partial(&i, e, f)?;
        let comps = boundary_components(&p, e_sub, f_sub);
        boundaries.push(BoundaryRow {
            pair: format!("{},{}", e_sub.tag(), f_sub.tag()),
            family: family.into(),
            matches: matches_family(&comps, members),
            components: comps
                .iter()
                .map(|c| ComponentRow {
                    coset_rep: perm_string(&sc.g, c.coset_rep),
                    objects: c.objects,
                    stabilizer_order: c.stabilizer_order,
                })
                .collect(),
        });
    }
    let geography = geography_check(&i, &j, &j)?.holds;
    let factorization = tricky_factorization(&i, &j)?.holds;
    let ok = geography && factorization && boundaries.iter().all(|b| b.matches);
    let mut tsv = String::from("pair\tfamily\tmatches\tcoset_rep\tobjects\tstabilizer_order\n");
    for b in &boundaries {
        for c in &b.components {
            tsv.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                b.pair, b.family, b.matches, c.coset_rep, c.objects, c.stabilizer_order
            ));
        }
    }
    let checks = format!("check\tvalue\ngeography\t{geography}\nfactorization\t{factorization}\n");
    Ok(Emitted {
        stem: "partial",
        json: to_json(&PartialReport {
            header: header("partial", &sc),
            boundaries,
            geography,
            factorization,
        }),
        tables: vec![("boundaries".into(), tsv), ("checks".into(), checks)],
        ok,
        diagnostic: "boundary, geography or factorization check failed".into(),
    })
}

#[derive(Serialize)]
struct FamiliesReport<'a> {
    #[serde(flatten)]
    header: Header<'a>,
    normalizer_condition: bool,
    families: FamilyTable,
}

fn run_families(opts: &Options) -> Result<Emitted, Failure> {
    let sc = scenario(opts)?;
    let report = family_table(&sc);
    let f = &sc.families;
    Ok(Emitted {
        stem: "families",
        json: to_json(&FamiliesReport {
            header: header("families", &sc),
            normalizer_condition: sc.normalizer_condition,
            families: report,
        }),
        tables: vec![
            ("x".into(), family_tsv(&f.x)),
            ("y".into(), family_tsv(&f.y)),
            ("u".into(), family_tsv(&f.u)),
        ],
        ok: true,
        diagnostic: String::new(),
    })
}

fn family_table(sc: &Scenario) -> FamilyTable {
    let rows = |members: &[FamilyMember]| {
        members
            .iter()
            .map(|m| green_core::green::FamilyRow {
                coset_rep: perm_string(&sc.g, m.rep),
                order: m.subgroup.order(),
                generators: m.subgroup.generator_strings(),
            })
            .collect()
    };
    FamilyTable {
        x: rows(&sc.families.x),
        y: rows(&sc.families.y),
        u: rows(&sc.families.u),
    }
}

fn module_for(opts: &ModuleOptions, default: fn(Arc<PermGroup>, u32) -> FpModule) -> Result<FpModule, Failure> {
    match &opts.module {
        Some(path) => load_module(path, None),
        None => {
            let sc = scenario(&opts.options)?;
            Ok(default(sc.g.clone(), sc.p))
        }
    }
}

#[derive(Serialize)]
struct SummandRow {
    dim: usize,
    multiplicity: usize,
    certificate: Certificate,
    module: ModuleJson,
}

#[derive(Serialize)]
struct DecomposeReport {
    schema_version: &'static str,
    command: &'static str,
    p: u32,
    dim: usize,
    seed: u64,
    dims: Vec<usize>,
    verified: bool,
    summands: Vec<SummandRow>,
}

fn run_decompose(opts: &ModuleOptions) -> Result<Emitted, Failure> {
    let m = module_for(opts, FpModule::regular)?;
    let seed = opts.options.seed;
    let dec = decompose(&m, seed)?;
    let verified = dec.verify(&m);
    let summands: Vec<SummandRow> = dec
        .summands
        .iter()
        .map(|s| SummandRow {
            dim: s.indecomposable.dim(),
            multiplicity: s.multiplicity,
            certificate: s.indecomposable.certificate().clone(),
            module: ModuleJson::emit(s.module()),
        })
        .collect();
    let mut tsv = String::from("dim\tmultiplicity\tend_dim\tradical_dim\tresidue_degree\n");
    for s in &summands {
        let c = &s.certificate;
        tsv.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            s.dim, s.multiplicity, c.end_dim, c.radical_dim, c.residue_degree
        ));
    }
    Ok(Emitted {
        stem: "decompose",
        json: to_json(&DecomposeReport {
            schema_version: SCHEMA_VERSION,
            command: "decompose",
            p: m.prime(),
            dim: m.dim(),
            seed,
            dims: dec.dims(),
            verified,
            summands,
        }),
        tables: vec![("summands".into(), tsv)],
        ok: verified,
        diagnostic: "decomposition does not reassemble the module".into(),
    })
}

#[derive(Serialize)]
struct VertexRow {
    dim: usize,
    multiplicity: usize,
    vertex_order: usize,
    vertex_generators: Vec<String>,
    source_dim: usize,
}

#[derive(Serialize)]
struct VertexReport {
    schema_version: &'static str,
    command: &'static str,
    p: u32,
    dim: usize,
    summands: Vec<VertexRow>,
}

fn run_vertex(opts: &ModuleOptions) -> Result<Emitted, Failure> {
    let m = module_for(opts, FpModule::trivial)?;
    let dec = decompose(&m, opts.options.seed)?;
    let mut rows = Vec::new();
    for s in &dec.summands {
        let v = vertex(&s.indecomposable)?;
        rows.push(VertexRow {
            dim: s.indecomposable.dim(),
            multiplicity: s.multiplicity,
            vertex_order: v.subgroup.order(),
            vertex_generators: v.subgroup.generator_strings(),
            source_dim: v.source.dim(),
        });
    }
    let mut tsv = String::from("dim\tmultiplicity\tvertex_order\tvertex_generators\tsource_dim\n");
    for r in &rows {
        let gens = if r.vertex_generators.is_empty() {
            "()".to_string()
        } else {
            r.vertex_generators.join(";")
        };
        tsv.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.dim, r.multiplicity, r.vertex_order, gens, r.source_dim
        ));
    }
    Ok(Emitted {
        stem: "vertex",
        json: to_json(&VertexReport {
            schema_version: SCHEMA_VERSION,
            command: "vertex",
            p: m.prime(),
            dim: m.dim(),
            summands: rows,
        }),
        tables: vec![("vertices".into(), tsv)],
        ok: true,
        diagnostic: String::new(),
    })
}

#[derive(Serialize)]
struct PairRow {
    h: String,
    g: String,
    dim_h: usize,
    dim_g: usize,
    vertex_order: usize,
    round_trip: bool,
    vertex_preserved: bool,
    witnesses: bool,
}

#[derive(Serialize)]
struct CorrespondReport<'a> {
    #[serde(flatten)]
    header: Header<'a>,
    seed: u64,
    eligible_h: usize,
    eligible_g: usize,
    bijection: bool,
    pairs: Vec<PairRow>,
}

fn run_correspond(opts: &Options) -> Result<Emitted, Failure> {
    let sc = scenario(opts)?;
    let r = verify_scenario(&sc, opts.seed)?;
    let v = &r.verdicts;
    let ok = v.bijection
        && v.round_trips
        && v.witnesses
        && v.vertices_preserved
        && v.vertex_d_restriction != Some(false)
        && v.identity_correspondence != Some(false);
    let pairs = r
        .correspondence_pairs
        .iter()
        .map(|c| {
            let (n, m) = (r.entry_h(&c.h).unwrap(), r.entry_g(&c.g).unwrap());
            PairRow {
                h: c.h.clone(),
                g: c.g.clone(),
                dim_h: n.dim,
                dim_g: m.dim,
                vertex_order: m.vertex_order,
                round_trip: c.round_trip,
                vertex_preserved: c.vertex_preserved,
                witnesses: c.up_witness.verified && c.down_witness.verified,
            }
        })
        .collect();
    Ok(Emitted {
        stem: "correspond",
        json: to_json(&CorrespondReport {
            header: header("correspond", &sc),
            seed: opts.seed,
            eligible_h: r.indecomposables_h.iter().filter(|e| e.eligible).count(),
            eligible_g: r.indecomposables_g.iter().filter(|e| e.eligible).count(),
            bijection: v.bijection,
            pairs,
        }),
        tables: vec![("pairs".into(), r.pairs_tsv())],
        ok,
        diagnostic: r.failures.join("; "),
    })
}

fn run_verify(opts: &Options) -> Result<Emitted, Failure> {
    let sc = scenario(opts)?;
    let r: GreenReport = verify_scenario(&sc, opts.seed)?;
    Ok(Emitted {
        stem: "verify",
        json: to_json(&r),
        tables: vec![
            ("ff_table".into(), r.ff_tsv()),
            ("pairs".into(), r.pairs_tsv()),
            ("verdicts".into(), r.verdicts_tsv()),
        ],
        ok: r.passed(),
        diagnostic: r.failures.join("; "),
    })
}

pub fn execute(command: &Command) -> Result<Emitted, Failure> {
    match command {
        Command::Isocomma(o) => run_isocomma(o),
        Command::Partial(o) => run_partial(o),
        Command::Families(o) => run_families(o),
        Command::Decompose(o) => run_decompose(o),
        Command::Vertex(o) => run_vertex(o),
        Command::Correspond(o) => run_correspond(o),
        Command::Verify(o) => run_verify(o),
    }
}

fn options(command: &Command) -> &Options {
    match command {
        Command::Isocomma(o)
        | Command::Partial(o)
        | Command::Families(o)
        | Command::Correspond(o)
        | Command::Verify(o) => o,
        Command::Decompose(o) | Command::Vertex(o) => &o.options,
    }
}

/// The bytes written for `--format`: the JSON document, or the TSV tables
/// (each preceded by `# name` when there are several).
pub fn render(e: &Emitted, format: Format) -> Vec<(String, String)> {
    match format {
        Format::Json => vec![(format!("{}.json", e.stem), e.json.clone())],
        Format::Tsv if e.tables.len() == 1 => vec![(format!("{}.tsv", e.stem), e.tables[0].1.clone())],
        Format::Tsv => e
            .tables
            .iter()
            .map(|(name, t)| (format!("{}_{name}.tsv", e.stem), format!("# {name}\n{t}")))
            .collect(),
    }
}

/// Runs a command, writes its output and returns the exit code.
pub fn run(command: &Command) -> i32 {
    let opts = options(command);
    let emitted = match execute(command) {
        Ok(e) => e,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return f.exit_code();
        }
    };
    let files = render(&emitted, opts.format);
    match &opts.out {
        Some(dir) => {
            if let Err(e) = fs::create_dir_all(dir) {
                eprintln!("error: {}: {e}", dir.display());
                return 2;
            }
            for (name, body) in &files {
                let path = dir.join(name);
                if let Err(e) = fs::write(&path, body) {
                    eprintln!("error: {}: {e}", path.display());
                    return 2;
                }
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            for (_, body) in &files {
                if out.write_all(body.as_bytes()).and_then(|_| out.flush()).is_err() {
                    return 2;
                }
            }
        }
    }
    if emitted.ok {
        0
    } else {
        eprintln!("check failed: {}", emitted.diagnostic);
        1
    }
}
