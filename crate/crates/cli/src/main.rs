//! `genwait`: command-line frontend for the generation-waiting-time engine.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails or
//! the analysis is inapplicable, 2 on parse and argument errors, 3 when a
//! size cap is exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use genwait::caps::{ENV_AUTOMORPHISM_ORDER, ENV_LATTICE_ORDER, ENV_ORDER, ENV_SUBGROUPS};
use genwait::constructions::BuilderSpec;
use genwait::perm::io::GroupFile;
use genwait::report::{self, with_schema};
use genwait::{corpus, crowns, genstats, montecarlo, par};
use genwait::{Caps, ElementSet, FiniteGroup, GroupError, Permutation, SubgroupLattice};

#[derive(Parser)]
#[command(name = "genwait", version, about = "Waiting times for generating finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, degree, minimal number of generators and class count.
    Info(GroupArgs),
    /// Subgroup and maximal-subgroup counts with a Möbius summary.
    Lattice {
        #[command(flatten)]
        group: GroupArgs,
        /// Emit every subgroup with its generators and Möbius value.
        #[arg(long)]
        export: bool,
    },
    /// Exact e(G,Y), P_{G,Y}(n), m_n(G,Y) and the growth degree.
    Estats {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        subset: SubsetArgs,
        /// Tabulate P_{G,Y}(n) for n = 0..=depth.
        #[arg(long, default_value_t = genstats::DEFAULT_DEPTH)]
        depth: usize,
    },
    /// e(G,g) for one representative of each conjugacy class.
    Scan(GroupArgs),
    /// Seeded simulation of the waiting time.
    Mc {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        subset: SubsetArgs,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        /// Required: the simulation never seeds itself.
        #[arg(long)]
        seed: u64,
    },
    /// Chief-factor classes, crown counts and the soluble-group inequalities.
    Crowns(GroupArgs),
    /// Bound verdicts for Y = ∅ and each class representative.
    Bounds {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        subset: SubsetArgs,
    },
    /// Builds a group from a builder expression and writes its group file.
    Construct {
        /// Builder expression such as `direct_power(alt(5),2)` or its JSON form.
        spec: String,
        /// Output file; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Runs the regression corpus and prints one line per criterion.
    Corpus(CommonArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// A group file path or `builtin:<builder expression>`.
    #[arg(long, short)]
    group: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SubsetArgs {
    /// An element of Y in cycle notation; repeat for several.
    #[arg(long = "y")]
    y: Vec<String>,
}

#[derive(Args, Clone)]
struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads, also the number of simulation streams.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=1024))]
    workers: u64,
    #[arg(long, env = ENV_ORDER)]
    order_cap: Option<usize>,
    #[arg(long, env = ENV_LATTICE_ORDER)]
    lattice_cap: Option<usize>,
    #[arg(long, env = ENV_SUBGROUPS)]
    subgroup_cap: Option<usize>,
    #[arg(long, env = ENV_AUTOMORPHISM_ORDER)]
    aut_cap: Option<usize>,
}

impl CommonArgs {
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        caps.order = self.order_cap.unwrap_or(caps.order);
        caps.lattice_order = self.lattice_cap.unwrap_or(caps.lattice_order);
        caps.subgroups = self.subgroup_cap.unwrap_or(caps.subgroups);
        caps.automorphism_order = self.aut_cap.unwrap_or(caps.automorphism_order);
        caps
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Rendered output and whether every check passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn new(format: Format, json: Value, csv: impl FnOnce() -> String, passed: bool) -> Self {
        let text = match format {
            Format::Json => serde_json::to_string_pretty(&json).expect("report serializes"),
            Format::Csv => csv(),
        };
        Outcome { text, passed }
    }
}

fn exit_code(e: &GroupError) -> u8 {
    match e {
        GroupError::CapExceeded { .. } | GroupError::IterationCap(_) => 3,
        GroupError::Parse(_)
        | GroupError::UnknownBuilder(_)
        | GroupError::DegreeMismatch { .. }
        | GroupError::InvalidArgument(_)
        | GroupError::Io(_)
        | GroupError::Json(_) => 2,
        _ => 1,
    }
}

fn error_kind(e: &GroupError) -> &'static str {
    match exit_code(e) {
        3 => "cap",
        2 => "input",
        _ => "analysis",
    }
}

fn load_group(source: &str, caps: &Caps) -> genwait::Result<Arc<FiniteGroup>> {
    let group = match source.strip_prefix("builtin:") {
        Some(expr) => expr.parse::<BuilderSpec>()?.build(caps)?,
        None => GroupFile::read(std::path::Path::new(source))?.build(caps)?,
    };
    Ok(Arc::new(group))
}

fn parse_subset(group: &FiniteGroup, y: &[String]) -> genwait::Result<ElementSet> {
    let mut set = ElementSet::new(group.order());
    for text in y {
        let p = Permutation::parse_cycles(text, group.degree())?;
        let i = group
            .index_of(&p)
            .ok_or_else(|| GroupError::InvalidArgument(format!("{text} is not an element of the group")))?;
        set.insert(i);
    }
    Ok(set)
}

fn csv_rows(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = format!("{header}\n");
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

fn info(args: &GroupArgs) -> genwait::Result<Outcome> {
    let caps = args.common.caps();
    let g = load_group(&args.group, &caps)?;
    let classes = g.conjugacy_classes().len();
    let d = if g.order() == 1 {
        Some(0)
    } else if g.order() <= caps.lattice_order {
        Some(genstats::min_generators(&SubgroupLattice::enumerate(g.clone(), &caps)?)?)
    } else {
        None
    };
    let value = with_schema(json!({
        "group": g.label(),
        "order": g.order(),
        "degree": g.degree(),
        "min_generators": d,
        "conjugacy_classes": classes,
        "soluble": g.is_soluble(),
        "abelian": g.is_abelian(),
    }));
    let csv = || {
        csv_rows(
            "group,order,degree,min_generators,conjugacy_classes",
            [format!(
                "\"{}\",{},{},{},{}",
                g.label(),
                g.order(),
                g.degree(),
                d.map_or(String::new(), |d| d.to_string()),
                classes
            )],
        )
    };
    Ok(Outcome::new(args.common.format, value, csv, true))
}

fn lattice(args: &GroupArgs, export: bool) -> genwait::Result<Outcome> {
    let caps = args.common.caps();
    let g = load_group(&args.group, &caps)?;
    let lattice = SubgroupLattice::enumerate(g, &caps)?;
    let value = if export {
        serde_json::to_value(lattice.export())?
    } else {
        report::lattice_json(&lattice)
    };
    let csv = || {
        csv_rows(
            "index,order,mobius,maximal,normal,generators",
            lattice.subgroups().iter().enumerate().map(|(i, s)| {
                let gens: Vec<String> = s
                    .generators
                    .iter()
                    .map(|&x| lattice.group().element(x).to_cycle_string())
                    .collect();
                format!(
                    "{i},{},{},{},{},\"{}\"",
                    s.order,
                    lattice.mu(i),
                    lattice.is_maximal(i),
                    lattice.is_normal(i),
                    gens.join(" ")
                )
            }),
        )
    };
    Ok(Outcome::new(args.common.format, value, csv, true))
}

fn estats(args: &GroupArgs, subset: &SubsetArgs, depth: usize) -> genwait::Result<Outcome> {
    let caps = args.common.caps();
    let g = load_group(&args.group, &caps)?;
    let y = parse_subset(&g, &subset.y)?;
    let lattice = SubgroupLattice::enumerate(g, &caps)?;
    let r = genstats::analyze(&lattice, &y, depth)?;
    let passed = r.bounds_ok();
    let value = report::generation_json(&r);
    Ok(Outcome::new(
        args.common.format,
        value,
        || report::generation_csv(std::slice::from_ref(&r)),
        passed,
    ))
}

fn scan(args: &GroupArgs) -> genwait::Result<Outcome> {
    let caps = args.common.caps();
    let g = load_group(&args.group, &caps)?;
    let lattice = SubgroupLattice::enumerate(g.clone(), &caps)?;
    let e = genstats::expected_waiting(&lattice, &ElementSet::new(g.order()))?;
    let rows = genstats::strong_scan(&lattice)?;
    let passed = rows.iter().all(|r| r.consistent());
    let value = report::scan_json(&g.label(), &e, &rows);
    Ok(Outcome::new(args.common.format, value, || report::scan_csv(&rows), passed))
}

fn mc(args: &GroupArgs, subset: &SubsetArgs, samples: u64, seed: u64) -> genwait::Result<Outcome> {
    let caps = args.common.caps();
    let g = load_group(&args.group, &caps)?;
    let y = parse_subset(&g, &subset.y)?;
    let y_list: Vec<usize> = y.iter().collect();
    let estimate = montecarlo::estimate_expectation(&g, &y_list, samples, seed, args.common.workers as usize)?;
    let exact = if g.order() > 1 && g.order() <= caps.lattice_order {
        let lattice = SubgroupLattice::enumerate(g.clone(), &caps)?;
        Some(genstats::expected_waiting(&lattice, &y)?)
    } else {
        None
    };
    let z = exact.as_ref().map(|e| estimate.z_score(e.to_f64()));
    let passed = z.is_none_or(|z| z <= 3.0);
    let value = report::mc_json(&g.label(), &estimate, exact.as_ref());
    let csv = || {
        csv_rows(
            "group,samples,seed,workers,mean,standard_error,exact,z_score",
            [format!(
                "\"{}\",{},{},{},{},{},{},{}",
                g.label(),
                estimate.sample_count,
                estimate.seed,
                estimate.workers,
                estimate.mean,
                estimate.standard_error,
                exact.as_ref().map_or(String::new(), |e| e.to_string()),
                z.map_or(String::new(), |z| z.to_string())
            )],
        )
    };
    Ok(Outcome::new(args.common.format, value, csv, passed))
}

fn crowns_cmd(args: &GroupArgs) -> genwait::Result<Outcome> {
    let caps = args.common.caps();
    let g = load_group(&args.group, &caps)?;
    let lattice = SubgroupLattice::enumerate(g.clone(), &caps)?;
    let classification = crowns::chief_classify(&lattice)?;
    let checks = if g.is_soluble() {
        corpus::class_representatives(&g)
            .into_iter()
            .map(|x| crowns::soluble_checks(&lattice, &classification, x))
            .collect::<genwait::Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let passed = classification.classes.iter().all(|c| c.crown.formula_holds()) && checks.iter().all(|c| c.all_hold());
    let value = report::crowns_json(&g.label(), &classification, &checks);
    let csv = || {
        csv_rows(
            "size,q,r,theta,delta,maximals,formula_expected,formula_actual,formula_check",
            classification.classes.iter().map(|c| {
                format!(
                    "{},{},{},{},{},{},{},{},{}",
                    c.size(),
                    c.invariants.q,
                    c.invariants.r,
                    c.invariants.theta,
                    c.delta(),
                    c.maximals.len(),
                    c.crown.formula_expected,
                    c.crown.formula_actual,
                    c.crown.formula_holds()
                )
            }),
        )
    };
    Ok(Outcome::new(args.common.format, value, csv, passed))
}

fn bounds(args: &GroupArgs, subset: &SubsetArgs) -> genwait::Result<Outcome> {
    let caps = args.common.caps();
    let g = load_group(&args.group, &caps)?;
    let lattice = SubgroupLattice::enumerate(g.clone(), &caps)?;
    let subsets: Vec<ElementSet> = if subset.y.is_empty() {
        std::iter::once(ElementSet::new(g.order()))
            .chain(
                corpus::class_representatives(&g)
                    .into_iter()
                    .map(|x| ElementSet::from_indices(g.order(), [x])),
            )
            .collect()
    } else {
        vec![parse_subset(&g, &subset.y)?]
    };
    let reports = subsets
        .iter()
        .map(|y| genstats::analyze(&lattice, y, 0))
        .collect::<genwait::Result<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.bounds_ok());
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "y": r.y,
                "e": r.e,
                "M": r.growth.to_decimal_string(),
                "ceil_M": r.growth.ceil,
                "bounds": r.bounds,
                "gap_check": r.gap,
                "bounds_ok": r.bounds_ok(),
            })
        })
        .collect();
    let value = with_schema(json!({ "group": g.label(), "all_hold": passed, "rows": rows }));
    Ok(Outcome::new(args.common.format, value, || report::generation_csv(&reports), passed))
}

fn construct(spec: &str, output: Option<&PathBuf>, common: &CommonArgs) -> genwait::Result<Outcome> {
    let caps = common.caps();
    let text = spec.strip_prefix("builtin:").unwrap_or(spec);
    let builder = if text.trim_start().starts_with('{') {
        BuilderSpec::from_json(text)?
    } else {
        text.parse::<BuilderSpec>()?
    };
    let group = builder.build(&caps)?;
    let file = GroupFile::from_group(&group).to_json();
    match output {
        Some(path) => {
            std::fs::write(path, format!("{file}\n"))?;
            let value = with_schema(json!({
                "group": group.label(),
                "order": group.order(),
                "degree": group.degree(),
                "written": path.display().to_string(),
            }));
            Ok(Outcome::new(
                common.format,
                value,
                || csv_rows("group,order,degree", [format!("\"{}\",{},{}", group.label(), group.order(), group.degree())]),
                true,
            ))
        }
        None => Ok(Outcome { text: file, passed: true }),
    }
}

fn corpus_cmd(common: &CommonArgs) -> genwait::Result<Outcome> {
    let results = corpus::run_all(&common.caps())?;
    let passed = results.iter().all(|r| r.passed);
    let text = match common.format {
        Format::Json => serde_json::to_string_pretty(&with_schema(json!({
            "all_passed": passed,
            "criteria": results,
        })))?,
        Format::Csv => csv_rows(
            "id,name,passed,seconds",
            results
                .iter()
                .map(|r| format!("{},\"{}\",{},{:.2}", r.id, r.name, r.passed, r.seconds)),
        ),
    };
    Ok(Outcome { text, passed })
}

fn run(cli: &Cli) -> genwait::Result<Outcome> {
    match &cli.command {
        Command::Info(g) => info(g),
        Command::Lattice { group, export } => lattice(group, *export),
        Command::Estats { group, subset, depth } => estats(group, subset, *depth),
        Command::Scan(g) => scan(g),
        Command::Mc {
            group,
            subset,
            samples,
            seed,
        } => mc(group, subset, *samples, *seed),
        Command::Crowns(g) => crowns_cmd(g),
        Command::Bounds { group, subset } => bounds(group, subset),
        Command::Construct { spec, output, common } => construct(spec, output.as_ref(), common),
        Command::Corpus(common) => corpus_cmd(common),
    }
}

fn workers(cli: &Cli) -> usize {
    let common = match &cli.command {
        Command::Info(g) | Command::Scan(g) | Command::Crowns(g) => &g.common,
        Command::Lattice { group, .. }
        | Command::Estats { group, .. }
        | Command::Mc { group, .. }
        | Command::Bounds { group, .. } => &group.common,
        Command::Construct { common, .. } | Command::Corpus(common) => common,
    };
    common.workers as usize
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match par::with_threads(workers(&cli), || run(&cli)) {
        Ok(outcome) => {
            println!("{}", outcome.text.trim_end());
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let diagnostic = with_schema(json!({
                "error": error_kind(&e),
                "message": e.to_string(),
            }));
            eprintln!("{diagnostic}");
            ExitCode::from(exit_code(&e))
        }
    }
}
