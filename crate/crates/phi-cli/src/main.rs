//! `phi` — build finite groups from descriptors, compute the generalized
//! totient and structure reports, and run batch catalog verification.
//!
//! Exit codes: 0 = everything asserted holds; 1 = a verification found a
//! disagreement witness; 2 = input or parameter error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use phi_core::analysis::{
    is_schmidt, schmidt_structure_report_with_lattice, verify_group_with_lattice, SchmidtReport,
    VerdictReport,
};
use phi_core::catalog::{self, default_catalog, CatalogSpec};
use phi_core::construct::Descriptor;
use phi_core::lattice::{all_subgroups, annotate, lattice_to_dot, SubgroupSet};
use phi_core::par::with_thread_count;
use phi_core::{GroupTable, Limits, PhiReport};

#[derive(Parser)]
#[command(
    name = "phi",
    version,
    about = "Generalized-totient computations on finite groups"
)]
struct Cli {
    /// Worker threads for parallel scans (defaults to all cores; builds
    /// without the `parallel` feature always run single-threaded)
    #[arg(long, global = true, value_name = "k")]
    parallel: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group from a JSON descriptor and write its Cayley table
    Build {
        /// Descriptor: inline JSON (starts with '{') or a path to a .json file
        descriptor: String,
        /// Output path for the canonical Cayley table
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Print the phi report of one group, with optional structure checks
    Analyze {
        /// Group source: inline JSON descriptor, a .json descriptor file,
        /// or a Cayley table text file
        group: String,
        /// Also compute the classification verdict
        #[arg(long)]
        verdict: bool,
        /// Also evaluate the Schmidt structure clauses
        #[arg(long)]
        schmidt: bool,
        /// Write the annotated subgroup lattice as DOT
        #[arg(long, value_name = "path")]
        dot: Option<PathBuf>,
        /// Write everything computed as JSON
        #[arg(long, value_name = "path")]
        json: Option<PathBuf>,
        /// Override the maximum group order
        #[arg(long, value_name = "n")]
        max_order: Option<usize>,
        /// Override the maximum order for lattice enumeration
        #[arg(long, value_name = "n")]
        max_lattice: Option<usize>,
    },
    /// Run the verification battery over a catalog and write JSON + TSV reports
    VerifyCatalog {
        /// Catalog JSON file (defaults to the built-in catalog)
        #[arg(long, value_name = "path")]
        catalog: Option<PathBuf>,
        /// Output directory for report.json and summary.tsv
        #[arg(long, short, value_name = "dir")]
        out: PathBuf,
        /// Override the maximum group order
        #[arg(long, value_name = "n")]
        max_order: Option<usize>,
        /// Override the maximum order for lattice enumeration
        #[arg(long, value_name = "n")]
        max_lattice: Option<usize>,
    },
    /// Write the built-in default catalog as JSON
    Catalog {
        /// Output path (stdout when omitted)
        #[arg(long, short, value_name = "path")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.parallel;
    let result = with_thread_count(threads, || match cli.command {
        Command::Build { descriptor, out } => cmd_build(&descriptor, &out),
        Command::Analyze {
            group,
            verdict,
            schmidt,
            dot,
            json,
            max_order,
            max_lattice,
        } => cmd_analyze(
            &group,
            verdict,
            schmidt,
            dot,
            json,
            limits_from(max_order, max_lattice),
        ),
        Command::VerifyCatalog {
            catalog,
            out,
            max_order,
            max_lattice,
        } => cmd_verify_catalog(catalog, &out, max_order, max_lattice),
        Command::Catalog { out } => cmd_catalog(out),
    });
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn limits_from(max_order: Option<usize>, max_lattice: Option<usize>) -> Limits {
    let default = Limits::default();
    Limits {
        max_group_order: max_order.unwrap_or(default.max_group_order),
        max_lattice_order: max_lattice.unwrap_or(default.max_lattice_order),
    }
}

/// Loads a descriptor from inline JSON or a file path; returns the base
/// directory for resolving any cayley_file references.
fn load_descriptor(source: &str) -> Result<(Descriptor, PathBuf), String> {
    if source.trim_start().starts_with('{') {
        let d = Descriptor::from_json(source).map_err(|e| e.to_string())?;
        return Ok((d, PathBuf::from(".")));
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| format!("reading {source}: {e}"))?;
    let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let d = Descriptor::from_json(&text).map_err(|e| e.to_string())?;
    Ok((d, base))
}

/// Loads a group from inline JSON, a descriptor file, or a Cayley table file.
fn load_group(source: &str, limits: &Limits) -> Result<GroupTable, String> {
    if source.trim_start().starts_with('{')
        || Path::new(source).extension().is_some_and(|e| e == "json")
    {
        let (descriptor, base) = load_descriptor(source)?;
        return descriptor.build(limits, &base).map_err(|e| e.to_string());
    }
    let text = std::fs::read_to_string(source).map_err(|e| format!("reading {source}: {e}"))?;
    let g = GroupTable::from_cayley_text(&text).map_err(|e| e.to_string())?;
    if g.order() > limits.max_group_order {
        return Err(format!(
            "group of order {} exceeds the size budget of {}",
            g.order(),
            limits.max_group_order
        ));
    }
    Ok(g)
}

fn cmd_build(descriptor: &str, out: &Path) -> Result<ExitCode, String> {
    let (descriptor, base) = load_descriptor(descriptor)?;
    let group = descriptor
        .build(&Limits::default(), &base)
        .map_err(|e| e.to_string())?;
    std::fs::write(out, group.to_cayley_text())
        .map_err(|e| format!("writing {}: {e}", out.display()))?;
    println!("wrote order-{} table to {}", group.order(), out.display());
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct AnalyzeOutput {
    phi_report: PhiReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<VerdictReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_schmidt: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    schmidt: Option<SchmidtReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lattice: Option<phi_core::LatticeExport>,
}

fn cmd_analyze(
    source: &str,
    want_verdict: bool,
    want_schmidt: bool,
    dot: Option<PathBuf>,
    json: Option<PathBuf>,
    limits: Limits,
) -> Result<ExitCode, String> {
    let g = load_group(source, &limits)?;
    let phi_report = g.phi_report();
    print_phi_report(&phi_report);

    let mut output = AnalyzeOutput {
        phi_report,
        verdict: None,
        is_schmidt: None,
        schmidt: None,
        lattice: None,
    };
    let mut violation = false;

    if want_verdict || want_schmidt || dot.is_some() {
        let lattice = all_subgroups(&g, &limits).map_err(|e| e.to_string())?;
        if json.is_some() {
            output.lattice =
                Some(phi_core::LatticeExport::new(&g, &lattice).map_err(|e| e.to_string())?);
        }

        if want_verdict {
            let verdict = verify_group_with_lattice(&g, &lattice).map_err(|e| e.to_string())?;
            print_verdict(&verdict);
            violation |= !verdict.agrees;
            output.verdict = Some(verdict);
        }

        if want_schmidt {
            let schmidt = is_schmidt(&g, &lattice);
            output.is_schmidt = Some(schmidt);
            if schmidt {
                let report = schmidt_structure_report_with_lattice(&g, &lattice, &limits)
                    .map_err(|e| e.to_string())?;
                print_schmidt(&report);
                violation |= !report.all_clauses_hold();
                output.schmidt = Some(report);
            } else {
                println!("schmidt      not a Schmidt group");
            }
        }

        if let Some(path) = dot {
            let annotations = annotate(&g, &lattice).map_err(|e| e.to_string())?;
            std::fs::write(&path, lattice_to_dot(&lattice, &annotations))
                .map_err(|e| format!("writing {}: {e}", path.display()))?;
        }
    }

    if let Some(path) = json {
        let mut text = serde_json::to_string_pretty(&output).map_err(|e| e.to_string())?;
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| format!("writing {}: {e}", path.display()))?;
    }

    Ok(if violation {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn print_phi_report(report: &PhiReport) {
    println!("order        {}", report.order);
    println!("exponent     {}", report.exponent);
    println!("phi          {}", report.phi);
    let spectrum: Vec<String> = report
        .spectrum
        .counts()
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect();
    println!("spectrum     {}", spectrum.join(" "));
}

fn describe_subgroup(s: &SubgroupSet) -> String {
    if s.order() <= 24 {
        format!("order {} {:?}", s.order(), s.members())
    } else {
        format!("order {} subgroup", s.order())
    }
}

fn print_verdict(v: &VerdictReport) {
    match &v.cond1.witness {
        Some(w) => println!(
            "cond1        false  witness: phi = 0 on {}",
            describe_subgroup(w)
        ),
        None => println!("cond1        {}", v.cond1.holds),
    }
    match &v.cond2.witness {
        Some(w) => println!(
            "cond2        false  witness: phi({}) = {} does not divide phi({}) = {}",
            describe_subgroup(&w.sub),
            w.phi_sub,
            describe_subgroup(&w.sup),
            w.phi_sup
        ),
        None => println!("cond2        {}", v.cond2.holds),
    }
    println!("nilpotent    {}", v.nilpotent);
    let shapes: Vec<String> = v
        .sylow_shapes
        .iter()
        .map(|(p, s)| format!("{p}:{s}"))
        .collect();
    println!(
        "sylow_shapes {}",
        if shapes.is_empty() {
            "-".into()
        } else {
            shapes.join(",")
        }
    );
    println!("classified   {}", v.classified);
    println!("agrees       {}", v.agrees);
}

fn print_schmidt(r: &SchmidtReport) {
    println!(
        "schmidt      p={} q={} m={} n={} r={}",
        r.p, r.q, r.m, r.n, r.r
    );
    for (name, value) in [
        ("yq_central", r.yq_central),
        ("center_eq_frattini", r.center_eq_frattini),
        ("center_eq_phiP_times_yq", r.center_eq_phi_p_times_yq),
        ("derived_eq_P", r.derived_eq_p),
        ("P_derived_eq_frattini_P", r.p_derived_eq_frattini_p),
        ("index_formula", r.index_formula),
        ("abelian_case", r.abelian_case),
        ("nonabelian_case", r.nonabelian_case),
        ("quotient_schmidt", r.quotient_schmidt),
        ("no_cyclic_pq", r.no_cyclic_pq),
    ] {
        println!("  {name:<26} {value}");
    }
}

fn cmd_verify_catalog(
    catalog_path: Option<PathBuf>,
    out_dir: &Path,
    max_order: Option<usize>,
    max_lattice: Option<usize>,
) -> Result<ExitCode, String> {
    let (mut spec, base) = match catalog_path {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("reading {}: {e}", path.display()))?;
            let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
            (
                CatalogSpec::from_json(&text).map_err(|e| e.to_string())?,
                base,
            )
        }
        None => (default_catalog(), PathBuf::from(".")),
    };
    if max_order.is_some() {
        spec.max_order = max_order;
    }
    if max_lattice.is_some() {
        spec.max_lattice = max_lattice;
    }

    let report = catalog::run_catalog(&spec, &base).map_err(|e| e.to_string())?;
    std::fs::create_dir_all(out_dir).map_err(|e| format!("creating {}: {e}", out_dir.display()))?;
    let tsv = catalog::to_tsv(&report);
    std::fs::write(out_dir.join("summary.tsv"), &tsv)
        .map_err(|e| format!("writing summary.tsv: {e}"))?;
    std::fs::write(
        out_dir.join("report.json"),
        catalog::to_json_pretty(&report),
    )
    .map_err(|e| format!("writing report.json: {e}"))?;
    print!("{tsv}");

    if !report.nonnilpotent_with_positive_subgroup_phi.is_empty() {
        println!(
            "non-nilpotent entries with phi > 0 on every subgroup: {}",
            report.nonnilpotent_with_positive_subgroup_phi.join(", ")
        );
    }
    if report.all_ok {
        println!("all {} entries ok", report.entries.len());
        Ok(ExitCode::SUCCESS)
    } else {
        let failures: Vec<&str> = report
            .entries
            .iter()
            .filter(|e| !e.ok)
            .map(|e| e.name.as_str())
            .collect();
        println!("FAILED entries: {}", failures.join(", "));
        Ok(ExitCode::from(1))
    }
}

fn cmd_catalog(out: Option<PathBuf>) -> Result<ExitCode, String> {
    let text = default_catalog().to_json_pretty();
    match out {
        Some(path) => {
            std::fs::write(&path, text).map_err(|e| format!("writing {}: {e}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
