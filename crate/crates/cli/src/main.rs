use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hopfcat_cli::fixtures::{by_name, NAMES};
use hopfcat_cli::format::{load, read, to_json, FieldSpec, StructureFile};
use hopfcat_cli::gen::{gen_crossed_product, gen_groupoid_kg, gen_perturbed, Params};
use hopfcat_cli::suite::{human, run_suite, SuiteReport, SUITES};
use serde_json::json;

#[derive(Parser)]
#[command(name = "hopfcat", version, about = "Check Hopf categories, Galois extensions and graded categories given by structure constants")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the axioms of every structure in a file.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Reinterpret the entries over `Q` or `Fp:<p>`.
        #[arg(long)]
        field: Option<String>,
    },
    /// Run a check suite on a file, or on every `*.json` file in a directory.
    Check {
        /// validate, galois, descent, duality, graded or all.
        suite: String,
        path: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        field: Option<String>,
    },
    /// Generate a structure file.
    Gen {
        kind: GenKind,
        /// Named fixture, for `fixture`, or the base of `perturbed` (fixture name or file).
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        objects: usize,
        /// Order of the vertex groups.
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Connect every pair of objects.
        #[arg(long)]
        indiscrete: bool,
        /// Dimension of the crossed product base algebra (1 or 2).
        #[arg(long, default_value_t = 1)]
        base_dim: usize,
        /// Only perturb tensors whose name contains this string.
        #[arg(long, default_value = "")]
        target: String,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write every named fixture into a directory.
    Fixtures { dir: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    #[value(name = "groupoid-kG")]
    GroupoidKg,
    CrossedProduct,
    Perturbed,
    Fixture,
}

fn field_flag(f: &Option<String>) -> Result<Option<FieldSpec>> {
    f.as_deref().map(FieldSpec::parse_flag).transpose().map_err(|e| anyhow!(e))
}

fn inputs(path: &Path) -> Result<Vec<PathBuf>> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)
        .with_context(|| format!("reading {}", path.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no .json files in {}", path.display());
    }
    Ok(files)
}

/// Runs a suite; `Err` is an input error, `Ok(false)` a failed check.
fn check(suite: &str, path: &Path, as_json: bool, field: &Option<String>) -> Result<bool> {
    if !SUITES.contains(&suite) {
        bail!("unknown suite {}; expected one of {}", suite, SUITES.join(", "));
    }
    let field = field_flag(field)?;
    let files = inputs(path)?;
    let mut reports: Vec<SuiteReport> = vec![];
    for f in &files {
        let loaded = load(f, field.as_ref()).map_err(|e| anyhow!("{}: {}", f.display(), e))?;
        let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        reports.push(run_suite(suite, &name, &loaded).map_err(|e| anyhow!(e))?);
    }
    let ok = reports.iter().all(SuiteReport::ok);
    if as_json {
        let doc = if path.is_dir() { json!({ "reports": reports }) } else { json!(reports[0]) };
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        for r in &reports {
            print!("{}", human(r));
        }
    }
    Ok(ok)
}

fn base_file(name: &str, field: Option<&FieldSpec>) -> Result<StructureFile> {
    let f = match field {
        Some(s) => s.field()?,
        None => hopfcat::Field::Rational,
    };
    match by_name(name, f) {
        Some(file) => Ok(file),
        None => Ok(read(Path::new(name))
            .map_err(|e| anyhow!("{} is neither a fixture ({}) nor a readable file: {}", name, NAMES.join(", "), e))?),
    }
}

fn emit(file: &StructureFile, out: &Option<PathBuf>) -> Result<()> {
    let text = to_json(file);
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Validate { file, json, field } => check("validate", &file, json, &field),
        Cmd::Check { suite, path, json, field } => check(&suite, &path, json, &field),
        Cmd::Gen { kind, name, seed, objects, order, indiscrete, base_dim, target, field, out } => {
            let field = field_flag(&field)?;
            let p = Params { objects, order, indiscrete, base_dim };
            let mut file = match kind {
                GenKind::GroupoidKg => gen_groupoid_kg(&p, seed).map_err(|e| anyhow!(e))?,
                GenKind::CrossedProduct => gen_crossed_product(&p, seed).map_err(|e| anyhow!(e))?,
                GenKind::Fixture => base_file(name.as_deref().ok_or_else(|| anyhow!("--name is required"))?, field.as_ref())?,
                GenKind::Perturbed => {
                    let base = base_file(name.as_deref().ok_or_else(|| anyhow!("--name is required"))?, field.as_ref())?;
                    gen_perturbed(&base, &target, seed).map_err(|e| anyhow!(e))?
                }
            };
            if let Some(f) = field {
                file.field = f;
            }
            emit(&file, &out)?;
            Ok(true)
        }
        Cmd::Fixtures { dir } => {
            std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            for name in NAMES {
                let file = by_name(name, hopfcat::Field::Rational).expect("listed fixtures exist");
                emit(&file, &Some(dir.join(format!("{}.json", name))))?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
