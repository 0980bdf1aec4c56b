//! Command-line front end: subdivision construction, end-to-end obstruction
//! certificates, and named reproductions of the published computations.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use tropirrat::classify::{ClassifyOptions, KnownPolytopeDb};
use tropirrat::obstruction::{certify, Assumptions, AssumptionsJson, Verdict};
use tropirrat::polytope::{LatticePolytope, PolytopeJson};
use tropirrat::repro::{run_job, JobResult, JOB_NAMES};
use tropirrat::subdivision::{
    lower_envelope_subdivision, slice_subdivision, Lifting, LiftingJson, Subdivision,
};
use tropirrat::{Int, IntVec};

#[derive(Parser)]
#[command(name = "tropirrat", version, about = "Exact tropical obstructions to stable rationality of lattice polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a regular integral subdivision from a lifting file or a slicing
    /// and print the face-count table.
    Subdivide {
        /// Polytope JSON file.
        #[arg(long)]
        polytope: PathBuf,
        /// Lifting JSON file (heights on every lattice point).
        #[arg(long, conflicts_with_all = ["slice_functional", "levels"])]
        lifting: Option<PathBuf>,
        /// Slicing functional, comma-separated integers.
        #[arg(long, requires = "levels", allow_hyphen_values = true)]
        slice_functional: Option<String>,
        /// Slicing levels, comma-separated strictly increasing integers.
        #[arg(long, requires = "slice_functional", allow_hyphen_values = true)]
        levels: Option<String>,
        /// Write the subdivision JSON here (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full pipeline: subdivision, face classification, obstruction
    /// sum, verdict, certificate. Exit code 0 means the verdict is
    /// nontrivial.
    Certify {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long, conflicts_with_all = ["slice_functional", "levels"])]
        lifting: Option<PathBuf>,
        #[arg(long, requires = "levels", allow_hyphen_values = true)]
        slice_functional: Option<String>,
        #[arg(long, requires = "slice_functional", allow_hyphen_values = true)]
        levels: Option<String>,
        /// Registry JSON (built-in registry when omitted).
        #[arg(long)]
        db: Option<PathBuf>,
        /// Assumptions JSON: {"equal": [["unknown:3","unknown:5"]], ...}.
        #[arg(long)]
        assume: Option<PathBuf>,
        /// Fail instead of recording wildcard tags for unclassified faces.
        #[arg(long)]
        require_classified: bool,
        /// Write the certificate JSON here (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run a named reproduction (or all of them) against golden values.
    Repro {
        /// Job name; see `repro --all` for the list.
        name: Option<String>,
        /// Run every registered job.
        #[arg(long)]
        all: bool,
        /// Number of worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {what} file {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {what} file {}", path.display()))
}

fn parse_int_list(s: &str, what: &str) -> anyhow::Result<Vec<Int>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<Int>()
                .with_context(|| format!("bad integer `{t}` in {what}"))
        })
        .collect()
}

fn build_subdivision(
    polytope: &Path,
    lifting: &Option<PathBuf>,
    slice_functional: &Option<String>,
    levels: &Option<String>,
) -> anyhow::Result<Subdivision> {
    let polytope_json: PolytopeJson = read_json(polytope, "polytope")?;
    let p = LatticePolytope::from_json(polytope_json)?;
    match (lifting, slice_functional) {
        (Some(lifting_path), None) => {
            let lifting_json: LiftingJson = read_json(lifting_path, "lifting")?;
            let lifting = Lifting::from_json(lifting_json)?;
            if lifting.polytope() != &p {
                bail!("schema error in field `polytope`: the lifting is for a different polytope");
            }
            Ok(lower_envelope_subdivision(&lifting))
        }
        (None, Some(functional)) => {
            let functional = IntVec(parse_int_list(functional, "--slice-functional")?);
            let levels = parse_int_list(
                levels.as_deref().expect("clap enforces --levels"),
                "--levels",
            )?;
            Ok(slice_subdivision(&p, &functional, &levels)?)
        }
        _ => bail!("exactly one of --lifting or --slice-functional/--levels is required"),
    }
}

fn emit(path: &Option<PathBuf>, text: &str) -> anyhow::Result<bool> {
    match path {
        Some(p) => {
            std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            Ok(true)
        }
        None => {
            println!("{text}");
            Ok(false)
        }
    }
}

fn face_count_table(sub: &Subdivision) -> String {
    let counts = sub.face_count_by_dim();
    let mut out = String::from("dim   ");
    for d in 0..counts.len() {
        out.push_str(&format!("{d:>8}"));
    }
    out.push_str("\ncount ");
    for c in &counts {
        out.push_str(&format!("{c:>8}"));
    }
    out
}

fn run_subdivide(
    polytope: PathBuf,
    lifting: Option<PathBuf>,
    slice_functional: Option<String>,
    levels: Option<String>,
    out: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let sub = build_subdivision(&polytope, &lifting, &slice_functional, &levels)?;
    let json = serde_json::to_string_pretty(&sub.to_json())?;
    let to_file = emit(&out, &json)?;
    let table = face_count_table(&sub);
    if to_file {
        println!("{table}");
    } else {
        eprintln!("{table}");
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn run_certify(
    polytope: PathBuf,
    lifting: Option<PathBuf>,
    slice_functional: Option<String>,
    levels: Option<String>,
    db: Option<PathBuf>,
    assume: Option<PathBuf>,
    require_classified: bool,
    out: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let sub = build_subdivision(&polytope, &lifting, &slice_functional, &levels)?;
    let db = match db {
        Some(path) => KnownPolytopeDb::from_json(read_json(&path, "registry")?)?,
        None => KnownPolytopeDb::builtin(),
    };
    let assumptions = match assume {
        Some(path) => Assumptions::from_json(read_json::<AssumptionsJson>(&path, "assumptions")?)?,
        None => Assumptions::default(),
    };
    let options = ClassifyOptions::default();
    let (certificate, _) = certify(&sub, &db, &options, &assumptions, require_classified)?;
    let verdict = certificate.verdict;
    let json = serde_json::to_string_pretty(&certificate)?;
    let to_file = emit(&out, &json)?;
    let summary = format!(
        "verdict: {}",
        match verdict {
            Verdict::Nontrivial => "nontrivial",
            Verdict::Inconclusive => "inconclusive",
        }
    );
    if to_file {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(match verdict {
        Verdict::Nontrivial => ExitCode::SUCCESS,
        Verdict::Inconclusive => ExitCode::from(1),
    })
}

fn run_repro(name: Option<String>, all: bool, jobs: usize) -> anyhow::Result<ExitCode> {
    let names: Vec<&'static str> = if all {
        JOB_NAMES.to_vec()
    } else {
        let Some(name) = name else {
            bail!("pass a job name or --all; available: {}", JOB_NAMES.join(", "));
        };
        match JOB_NAMES.iter().find(|n| **n == name) {
            Some(n) => vec![*n],
            None => bail!("unknown job `{name}`; available: {}", JOB_NAMES.join(", ")),
        }
    };
    let jobs = jobs.max(1);
    let mut results: BTreeMap<&'static str, tropirrat::Result<JobResult>> = BTreeMap::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in names.chunks(names.len().div_ceil(jobs)) {
            handles.push(scope.spawn(move || {
                chunk
                    .iter()
                    .map(|n| (*n, run_job(n)))
                    .collect::<Vec<_>>()
            }));
        }
        for handle in handles {
            for (name, result) in handle.join().expect("worker panicked") {
                results.insert(name, result);
            }
        }
    });
    let mut all_pass = true;
    for (name, result) in &results {
        match result {
            Ok(job) => {
                let status = if job.pass() { "PASS" } else { "FAIL" };
                if !job.pass() {
                    all_pass = false;
                }
                println!("{status}  {name}");
                for check in &job.checks {
                    let mark = if check.pass { "ok  " } else { "FAIL" };
                    println!(
                        "  {mark} {}: expected {}, got {}  [{}]",
                        check.label, check.expected, check.got, check.citation
                    );
                }
            }
            Err(e) => {
                all_pass = false;
                println!("FAIL  {name}: {e}");
            }
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Subdivide {
            polytope,
            lifting,
            slice_functional,
            levels,
            out,
        } => run_subdivide(polytope, lifting, slice_functional, levels, out),
        Command::Certify {
            polytope,
            lifting,
            slice_functional,
            levels,
            db,
            assume,
            require_classified,
            out,
        } => run_certify(
            polytope,
            lifting,
            slice_functional,
            levels,
            db,
            assume,
            require_classified,
            out,
        ),
        Command::Repro { name, all, jobs } => run_repro(name, all, jobs),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
