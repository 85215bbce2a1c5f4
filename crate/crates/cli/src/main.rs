use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use icosa_e8::groupkit::{build_cayley, character_table, conjugacy_classes, defining_character, mckay_graph, CharacterTableOptions};
use icosa_e8::icosian::{gamma_enumerate, icosian_zbasis};
use icosa_e8::klein::{build_invariants, cp1_configuration, parse_resolution, render_phase_portrait, syzygy_constants, IcosahedralMap, Window};
use icosa_e8::lattice::{e8_standard_basis, lattice_from_json, lattice_isometry, lattice_to_json, verify_isometry, IntegerLattice, IsometryOptions};
use icosa_e8::linalg::det;
use icosa_e8::numberfield::{format_rational, rat_int};
use icosa_e8::verify::{run_verification, Target, VerifyConfig, DEFAULT_SEED, DEFAULT_TOLERANCE, SCHEMA};
use icosa_e8::Error;

/// Verification and artifact tool for the icosians, E8 and Klein's icosahedral invariants.
#[derive(Parser, Debug)]
#[command(name = "icosa-e8", version)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Tolerance for floating-point checks.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Output file (JSON, or the image for `render`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for cached Cayley tables, character tables and short vectors.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification checks and print a report.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
    },
    /// Print a lattice or group artifact as JSON.
    Emit {
        #[command(subcommand)]
        what: Emit,
    },
    /// Search for an isometry between two lattice files.
    Isometry { file1: PathBuf, file2: PathBuf },
    /// Render an image.
    Render {
        #[command(subcommand)]
        what: Render,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyTarget {
    All,
    Icosians,
    Klein,
    Mckay,
    Polytope,
}

#[derive(Subcommand, Debug)]
enum Emit {
    Lattice {
        #[arg(value_enum)]
        which: LatticeKind,
    },
    Group {
        #[arg(value_enum)]
        which: GroupArtifact,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LatticeKind {
    Icosian,
    Standard,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupArtifact {
    Classes,
    CharacterTable,
    Mckay,
}

#[derive(Subcommand, Debug)]
enum Render {
    /// Phase portrait of the icosahedral map.
    Klein {
        /// re_min,re_max,im_min,im_max
        #[arg(long, default_value = "-2,2,-2,2", allow_hyphen_values = true)]
        window: String,
        /// WIDTHxHEIGHT
        #[arg(long, default_value = "800x800")]
        resolution: String,
    },
}

enum Failure {
    Check(Value),
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn emit(out: Option<&Path>, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_lattice(path: &Path) -> Result<IntegerLattice, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    lattice_from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Verify { target } => {
            if !(cli.tolerance.is_finite() && cli.tolerance >= 0.0) {
                return Err(Failure::Usage(format!("invalid tolerance {}", cli.tolerance)));
            }
            let target = match target {
                VerifyTarget::All => Target::All,
                VerifyTarget::Icosians => Target::Icosians,
                VerifyTarget::Klein => Target::Klein,
                VerifyTarget::Mckay => Target::Mckay,
                VerifyTarget::Polytope => Target::Polytope,
            };
            let cfg = VerifyConfig { seed: cli.seed, tolerance: cli.tolerance, cache_dir: cli.cache_dir.clone() };
            let report = run_verification(target, cfg);
            let value = report.to_json();
            emit(out, &value)?;
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::Check(json!(report.summary)))
            }
        }
        Command::Emit { what: Emit::Lattice { which } } => {
            let value = match which {
                LatticeKind::Standard => lattice_to_json(&e8_standard_basis()),
                LatticeKind::Icosian => {
                    let b = icosian_zbasis(&gamma_enumerate()?)?;
                    let mut v = lattice_to_json(&IntegerLattice::from_gram(b.gram.clone())?);
                    v["form"] = json!("2·τ(Re(p·q̄))");
                    v["quaternions"] = serde_json::to_value(&b.basis).expect("serializable");
                    v
                }
            };
            emit(out, &value)
        }
        Command::Emit { what: Emit::Group { which } } => {
            let g = gamma_enumerate()?;
            let t = build_cayley(&g)?;
            let value = match which {
                GroupArtifact::Classes => {
                    let classes = conjugacy_classes(&t);
                    json!({
                        "order": t.order,
                        "classes": classes.iter().map(|c| json!({
                            "size": c.len(),
                            "element_order": t.element_order(c[0]),
                            "representative": g.get(c[0]).to_string(),
                            "elements": c,
                        })).collect::<Vec<_>>(),
                    })
                }
                GroupArtifact::CharacterTable | GroupArtifact::Mckay => {
                    let opts = CharacterTableOptions { seed: cli.seed, ..CharacterTableOptions::default() };
                    let ct = character_table(&t, opts)?;
                    ct.verify()?;
                    if matches!(which, GroupArtifact::Mckay) {
                        let mk = mckay_graph(&ct, &defining_character(&g, &ct.classes))?;
                        let mut v = mk.to_json();
                        v["dot"] = json!(mk.to_dot());
                        v["affine_e8"] = json!(mk.is_affine_e8());
                        v
                    } else {
                        ct.to_json()
                    }
                }
            };
            emit(out, &value)
        }
        Command::Isometry { file1, file2 } => {
            let (l1, l2) = (read_lattice(file1)?, read_lattice(file2)?);
            let found = lattice_isometry(&l1, &l2, IsometryOptions::default())?;
            let value = match &found {
                Some(u) => {
                    let d = det(&u.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect::<Vec<_>>());
                    json!({ "schema": SCHEMA, "isometric": true, "verified": verify_isometry(&l1, &l2, u), "det": format_rational(&d), "u": u })
                }
                None => json!({ "schema": SCHEMA, "isometric": false }),
            };
            emit(out, &value)?;
            match found {
                Some(u) if verify_isometry(&l1, &l2, &u) => Ok(()),
                _ => Err(Failure::Check(value)),
            }
        }
        Command::Render { what: Render::Klein { window, resolution } } => {
            let window = Window::parse(window)?;
            let (w, h) = parse_resolution(resolution)?;
            let path = out.ok_or_else(|| Failure::Usage("render needs --out <file.ppm|file.png>".into()))?;
            let config = cp1_configuration()?;
            let inv = build_invariants(&config)?;
            let s = syzygy_constants(&inv.v, &inv.e, &inv.f)?;
            let map = IcosahedralMap::new(&inv.v, &inv.f, &s.norm())?;
            render_phase_portrait(&map, &window, (w, h), path).map_err(|e| match e {
                Error::Io(io) => Failure::Usage(format!("cannot write {}: {io}", path.display())),
                other => other.into(),
            })?;
            let summary = json!({ "schema": SCHEMA, "image": path.display().to_string(), "width": w, "height": h, "window": window, "norm": format_rational(&s.norm()) });
            println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(summary)) => {
            eprintln!("check failed: {summary}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
