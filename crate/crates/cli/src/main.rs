//! `origami`: analyze square-tiled surfaces, generate the example families,
//! and run the verification corpus.

mod render;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use origami::analysis::{analyze, Analysis, AnalysisOptions, Injection};
use origami::characters::CharacterTable;
use origami::families::{self, DiffRow, FamilyInstance};
use origami::homology::{minimal_veech_power, AffineHomologyAction, GammaAction, H1Model, Shear};
use origami::io::{OrigamiInput, SCHEMA};
use origami::lyapunov::{estimate_for, RandomProductConfig};
use origami::origami::GroupDataOrigami;
use origami::selftest::{self, SelftestOptions, Status};
use origami::{search, Config, Error};

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "origami", version, about = "Isotypic decomposition of origami homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an origami given as a JSON file or inline JSON.
    Analyze {
        input: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Build a family member and diff it against its predicted values.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Export the intersection form and the automorphism and shear matrices.
    Homology {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: OutArgs,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Lyapunov spectra of random products of affine elements, per block.
    Lyapunov {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        steps: usize,
        #[arg(long, default_value_t = 8)]
        renorm_period: usize,
        #[arg(long, default_value_t = 20)]
        batches: usize,
        #[arg(long, default_value_t = 1)]
        replicas: usize,
        #[arg(long)]
        threads: Option<usize>,
        /// Known signature of an irreducible, as `label=p,q`.
        #[arg(long = "signature", value_parser = parse_signature)]
        signatures: Vec<(String, (usize, usize))>,
        #[command(flatten)]
        out: OutArgs,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Look for an affine element permuting nonzero real isotypic components.
    SearchNontrivialAction {
        /// Random regular origamis to add to the family members.
        #[arg(long, default_value_t = 20)]
        random: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, default_value_t = 200)]
        max_order: usize,
        #[command(flatten)]
        out: OutArgs,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Run the acceptance corpus, one line per criterion.
    Selftest {
        /// Skip the Lyapunov run.
        #[arg(long)]
        quick: bool,
        /// Include the symmetric group on six letters.
        #[arg(long)]
        slow: bool,
        /// Corrupt the pipeline on purpose; the run must then fail.
        #[arg(long, value_enum)]
        inject: Option<InjectArg>,
        #[arg(long, default_value_t = 1_000_000)]
        lyapunov_steps: usize,
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InjectArg {
    WrongEll,
    BrokenForm,
}

impl From<InjectArg> for Injection {
    fn from(a: InjectArg) -> Self {
        match a {
            InjectArg::WrongEll => Injection::WrongMultiplicity,
            InjectArg::BrokenForm => Injection::BrokenIntersectionForm,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Sn,
    Klein,
    Sl2p,
    Heisenberg,
    HeisenbergQr,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(value_enum)]
    tag: FamilyName,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
}

/// An input file or inline JSON, or a family member.
#[derive(Args)]
struct Source {
    input: Option<String>,
    #[arg(long, value_enum, conflicts_with = "input")]
    family: Option<FamilyName>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
}

#[derive(Args)]
struct RunArgs {
    /// Skip the chain-level homology oracle.
    #[arg(long)]
    no_oracle: bool,
    /// Skip the shear actions.
    #[arg(long)]
    no_affine: bool,
    /// Known signature of an irreducible, as `label=p,q`.
    #[arg(long = "signature", value_parser = parse_signature)]
    signatures: Vec<(String, (usize, usize))>,
    #[arg(long, value_enum)]
    inject: Option<InjectArg>,
    #[command(flatten)]
    out: OutArgs,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct OutArgs {
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long)]
    element_cap: Option<usize>,
    #[arg(long)]
    class_cap: Option<usize>,
    #[arg(long)]
    homology_square_cap: Option<usize>,
    #[arg(long)]
    veech_search_factor: Option<usize>,
    #[arg(long)]
    orthogonality_tol: Option<f64>,
    #[arg(long)]
    integrality_tol: Option<f64>,
    #[arg(long)]
    table_seed: Option<u64>,
}

impl ConfigArgs {
    fn config(&self) -> Config {
        let mut c = Config::default();
        if let Some(x) = self.element_cap {
            c.element_cap = x;
        }
        if let Some(x) = self.class_cap {
            c.class_cap = x;
        }
        if let Some(x) = self.homology_square_cap {
            c.homology_square_cap = x;
        }
        if let Some(x) = self.veech_search_factor {
            c.veech_search_factor = x;
        }
        if let Some(x) = self.orthogonality_tol {
            c.orthogonality_tol = x;
        }
        if let Some(x) = self.integrality_tol {
            c.integrality_tol = x;
        }
        if let Some(x) = self.table_seed {
            c.table_seed = x;
        }
        c
    }
}

fn parse_signature(s: &str) -> Result<(String, (usize, usize)), String> {
    let (label, pq) = s.rsplit_once('=').ok_or("expected label=p,q")?;
    let (p, q) = pq.split_once(',').ok_or("expected label=p,q")?;
    let p = p.trim().parse().map_err(|_| format!("bad p in {s:?}"))?;
    let q = q.trim().parse().map_err(|_| format!("bad q in {s:?}"))?;
    Ok((label.to_string(), (p, q)))
}

/// `--threads`, else `ORIGAMI_HOMOLOGY_THREADS`, else 1.
fn threads(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("ORIGAMI_HOMOLOGY_THREADS").ok()?.parse().ok()).unwrap_or(1).max(1)
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Check(e.to_string())
        }
    }
}

type CliResult = Result<bool, Failure>;

fn read_input(input: &str) -> Result<(OrigamiInput, String), Failure> {
    let text = if input.trim_start().starts_with('{') {
        input.to_string()
    } else {
        std::fs::read_to_string(input).map_err(|e| Failure::Input(format!("cannot read {input}: {e}")))?
    };
    let parsed = OrigamiInput::parse(&text)?;
    let hash = hex::encode(Sha256::digest(parsed.to_json().as_bytes()));
    Ok((parsed, hash))
}

fn build_family(
    tag: FamilyName,
    n: Option<usize>,
    p: Option<u64>,
    a: Option<u64>,
    b: Option<u64>,
    cfg: &Config,
) -> Result<FamilyInstance, Failure> {
    let need = |name: &str| Failure::Input(format!("--{name} is required for this family"));
    let inst = match tag {
        FamilyName::Sn => families::sn(n.ok_or_else(|| need("n"))?, cfg)?,
        FamilyName::Klein => families::klein(cfg)?,
        FamilyName::Sl2p => {
            let p = p.ok_or_else(|| need("p"))?;
            if p > 13 {
                return Err(Failure::Input(format!("sl2p is limited to p ≤ 13 (got {p}); |SL(2,F_p)| grows as p³")));
            }
            families::sl2p(p, a.unwrap_or(1), b.unwrap_or(1), cfg)?
        }
        FamilyName::Heisenberg => families::heisenberg_regular(p.ok_or_else(|| need("p"))?, cfg)?,
        FamilyName::HeisenbergQr => families::heisenberg_quasiregular(p.ok_or_else(|| need("p"))?, cfg)?,
    };
    Ok(inst)
}

/// Group data, character table, a JSON echo of the input, and its hash.
struct Loaded {
    data: GroupDataOrigami,
    table: CharacterTable,
    echo: Value,
    hash: String,
    family: Option<FamilyInstance>,
}

fn load(source: &Source, cfg: &Config) -> Result<Loaded, Failure> {
    if let Some(tag) = source.family {
        let inst = build_family(tag, source.n, source.p, source.a, source.b, cfg)?;
        let echo = json!({ "family": inst.tag.cli_name(), "params": inst.params });
        return Ok(Loaded {
            data: inst.data.clone(),
            table: inst.table.clone(),
            hash: hex::encode(Sha256::digest(echo.to_string().as_bytes())),
            echo,
            family: Some(inst),
        });
    }
    let input = source.input.as_deref().ok_or_else(|| Failure::Input("give an input or --family".into()))?;
    let (parsed, hash) = read_input(input)?;
    let data = parsed.build(cfg)?;
    let table = CharacterTable::compute(data.gamma(), cfg)?;
    Ok(Loaded { data, table, echo: serde_json::to_value(&parsed).expect("input serializes"), hash, family: None })
}

fn emit(out: &OutArgs, value: &impl Serialize, markdown: impl FnOnce() -> String) -> Result<(), Failure> {
    let text = if out.json {
        let mut v = serde_json::to_value(value).expect("report serializes");
        render::stabilize(&mut v);
        serde_json::to_string_pretty(&v).expect("value serializes") + "\n"
    } else {
        markdown()
    };
    match &out.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct AnalysisReport<'a> {
    schema: &'static str,
    input: &'a Value,
    input_hash: &'a str,
    family: Option<String>,
    notes: Vec<String>,
    family_checks: Vec<origami::isotypic::Check>,
    diff: Vec<DiffRow>,
    analysis: &'a Analysis,
    passed: bool,
}

fn analysis_options(run: &RunArgs) -> AnalysisOptions {
    AnalysisOptions {
        run_oracle: !run.no_oracle,
        affine: !run.no_affine,
        check_conventions: true,
        signatures: run.signatures.iter().cloned().collect(),
        inject: run.inject.map(Injection::from),
    }
}

fn report_analysis(loaded: Loaded, run: &RunArgs, cfg: &Config) -> CliResult {
    let analysis = analyze(&loaded.data, &loaded.table, &analysis_options(run), cfg)?;
    let (family, notes, family_checks, diff) = match &loaded.family {
        Some(inst) => (Some(inst.name()), inst.notes.clone(), inst.checks.clone(), inst.diff(&analysis.observed())),
        None => (None, Vec::new(), Vec::new(), Vec::new()),
    };
    let passed = analysis.passed() && diff.iter().all(|d| d.matches) && family_checks.iter().all(|c| c.passed);
    let report = AnalysisReport {
        schema: SCHEMA,
        input: &loaded.echo,
        input_hash: &loaded.hash,
        family,
        notes,
        family_checks,
        diff,
        analysis: &analysis,
        passed,
    };
    emit(&run.out, &report, || {
        render::analysis(
            &report.family,
            report.input_hash,
            &report.notes,
            &report.family_checks,
            &report.diff,
            &analysis,
            passed,
        )
    })?;
    Ok(passed)
}

#[derive(Serialize)]
struct HomologyExport {
    schema: &'static str,
    input: Value,
    input_hash: String,
    rank: usize,
    genus: usize,
    intersection: Vec<Vec<i64>>,
    st_plane: Vec<Vec<i64>>,
    zero_basis: Vec<Vec<i64>>,
    automorphisms: Vec<Vec<Vec<i64>>>,
    shears: BTreeMap<String, ShearExport>,
}

#[derive(Serialize)]
struct ShearExport {
    power: i64,
    derivative: [[i64; 2]; 2],
    relabeling: Vec<usize>,
    matrix: Vec<Vec<i64>>,
}

fn rows(m: &origami::linalg::IntMatrix) -> Vec<Vec<i64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

fn cmd_homology(source: &Source, out: &OutArgs, cfg: &Config) -> CliResult {
    let loaded = load(source, cfg)?;
    let o = loaded.data.origami();
    if o.n_squares() > cfg.homology_square_cap {
        return Err(Failure::Input(format!(
            "{} squares exceed the homology cap of {}",
            o.n_squares(),
            cfg.homology_square_cap
        )));
    }
    let model = H1Model::new(o)?;
    let gamma = loaded.data.gamma();
    let action = GammaAction::new(&model, gamma, &loaded.table);
    let mut shears = BTreeMap::new();
    for shear in [Shear::Horizontal, Shear::Vertical] {
        let k = minimal_veech_power(o, shear, cfg.veech_search_factor)?;
        let a = AffineHomologyAction::new(&model, o, shear, k, 0)?;
        shears.insert(
            shear.name().to_string(),
            ShearExport {
                power: k,
                derivative: a.derivative,
                relabeling: a.relabeling.to_vec(),
                matrix: rows(&a.h1_matrix),
            },
        );
    }
    let export = HomologyExport {
        schema: SCHEMA,
        input: loaded.echo,
        input_hash: loaded.hash,
        rank: model.rank(),
        genus: o.genus(),
        intersection: rows(model.intersection()),
        st_plane: rows(model.st_plane()),
        zero_basis: rows(model.zero_basis()),
        automorphisms: gamma
            .generators()
            .iter()
            .map(|g| rows(&action.elements[gamma.index_of(g).expect("generator")]))
            .collect(),
        shears,
    };
    emit(out, &export, || {
        render::homology(
            &export.input_hash,
            export.rank,
            export.genus,
            &export.intersection,
            &export.shears.iter().map(|(k, v)| (k.clone(), v.power)).collect::<Vec<_>>(),
        )
    })?;
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn cmd_lyapunov(
    source: &Source,
    seed: u64,
    steps: usize,
    renorm_period: usize,
    batches: usize,
    replicas: usize,
    threads_flag: Option<usize>,
    signatures: &[(String, (usize, usize))],
    out: &OutArgs,
    cfg: &Config,
) -> CliResult {
    let loaded = load(source, cfg)?;
    let rc = RandomProductConfig {
        seed,
        steps,
        renorm_period,
        batches,
        replicas,
        threads: threads(threads_flag),
        signatures: signatures.iter().cloned().collect(),
        ..RandomProductConfig::default()
    };
    let report = estimate_for(&loaded.data, &loaded.table, &rc, cfg)?;
    let failures = report.failures();
    let wrapped = json!({
        "schema": SCHEMA,
        "input": loaded.echo,
        "input_hash": loaded.hash,
        "spectrum": report,
        "failures": failures,
    });
    emit(out, &wrapped, || render::lyapunov(&loaded.hash, &report))?;
    Ok(failures.is_empty())
}

fn cmd_search(random: usize, seed: u64, max_degree: usize, max_order: usize, out: &OutArgs, cfg: &Config) -> CliResult {
    let mut candidates: Vec<(String, GroupDataOrigami, CharacterTable)> = Vec::new();
    for inst in [
        families::heisenberg_regular(2, cfg)?,
        families::heisenberg_regular(3, cfg)?,
        families::heisenberg_regular(5, cfg)?,
        families::sl2p(5, 1, 1, cfg)?,
        families::sl2p(5, 1, 2, cfg)?,
    ] {
        candidates.push((inst.name(), inst.data, inst.table));
    }
    for (i, data) in search::random_regular(random, seed, max_degree, max_order).into_iter().enumerate() {
        let table = CharacterTable::compute(data.gamma(), cfg)?;
        candidates.push((format!("random regular #{i} (order {})", data.n_squares()), data, table));
    }
    let mut probes = Vec::new();
    let mut errors = Vec::new();
    for (name, data, table) in &candidates {
        if data.n_squares() > cfg.homology_square_cap {
            continue;
        }
        match search::probe(name, data, table, cfg) {
            Ok(p) => probes.extend(p),
            Err(e) => errors.push(format!("{name}: {e}")),
        }
    }
    let found: Vec<&search::Probe> = probes.iter().filter(|p| !p.moved.is_empty()).collect();
    let report = json!({
        "schema": SCHEMA,
        "seed": seed,
        "probes": probes,
        "found": found.len(),
        "errors": errors,
    });
    emit(out, &report, || render::search(&probes, &errors))?;
    Ok(true)
}

fn cmd_selftest(opts: SelftestOptions, out: &OutArgs, cfg: &Config) -> CliResult {
    let results = selftest::run(&opts, cfg);
    let passed = results.iter().all(|r| r.status != Status::Fail);
    let report = json!({ "schema": SCHEMA, "config": cfg, "criteria": results, "passed": passed });
    emit(out, &report, || {
        let mut s: String = results.iter().map(|r| r.line() + "\n").collect();
        s.push_str(if passed { "selftest: all criteria passed\n" } else { "selftest: FAILED\n" });
        s
    })?;
    Ok(passed)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Analyze { input, run } => {
            let cfg = run.config.config();
            let (parsed, hash) = read_input(&input)?;
            let data = parsed.build(&cfg)?;
            let table = CharacterTable::compute(data.gamma(), &cfg)?;
            let echo = serde_json::to_value(&parsed).expect("input serializes");
            report_analysis(Loaded { data, table, echo, hash, family: None }, &run, &cfg)
        }
        Command::Family { family, run } => {
            let cfg = run.config.config();
            let source =
                Source { input: None, family: Some(family.tag), n: family.n, p: family.p, a: family.a, b: family.b };
            report_analysis(load(&source, &cfg)?, &run, &cfg)
        }
        Command::Homology { source, out, config } => cmd_homology(&source, &out, &config.config()),
        Command::Lyapunov {
            source,
            seed,
            steps,
            renorm_period,
            batches,
            replicas,
            threads,
            signatures,
            out,
            config,
        } => cmd_lyapunov(
            &source,
            seed,
            steps,
            renorm_period,
            batches,
            replicas,
            threads,
            &signatures,
            &out,
            &config.config(),
        ),
        Command::SearchNontrivialAction { random, seed, max_degree, max_order, out, config } => {
            cmd_search(random, seed, max_degree, max_order, &out, &config.config())
        }
        Command::Selftest { quick, slow, inject, lyapunov_steps, threads: t, out, config } => {
            let opts = SelftestOptions {
                quick,
                slow,
                inject: inject.map(Injection::from),
                lyapunov_steps,
                threads: threads(t),
                ..SelftestOptions::default()
            };
            cmd_selftest(opts, &out, &config.config())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILURE),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("failure: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
