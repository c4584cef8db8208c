use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ncsphere::cli::{self, Check, Report, RunConfig, Suite};
use ncsphere::moduli::{self, ModuliPoint};
use ncsphere::scalar::{Coeff, CycloScalar};

#[derive(Parser)]
#[command(name = "ncsphere", version, about = "Verification suites for theta-deformed and Sklyanin-type spheres")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite and print a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Three angles p/q (multiples of pi).
        #[arg(long, default_value = "1/3,1/4,1/6")]
        u: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Completion degree for A_u.
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Include wall-clock timings (makes the report non-reproducible).
        #[arg(long)]
        timing: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the scaling vector field and emit (t, phi, J, j) rows.
    Flow {
        /// Three angles, radians or p/q multiples of pi.
        #[arg(long)]
        u: String,
        #[arg(long, default_value_t = 10.0)]
        t: f64,
        #[arg(long, default_value_t = moduli::DEFAULT_DT)]
        dt: f64,
        /// Record every n-th step.
        #[arg(long, default_value_t = 100)]
        every: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Classify a point, or sweep the fundamental cell on a k^3 grid.
    Classify {
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        u: Option<String>,
        #[arg(long, default_value_t = moduli::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Free-product computation of the bracket mu and its commutator.
    Grassmann {
        #[arg(long)]
        report: bool,
    },
}

fn configure_threads() {
    if let Some(n) = std::env::var("NCSPHERE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    match real_main(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn real_main(args: Args) -> Result<bool, String> {
    match args.cmd {
        Cmd::Verify { suite, u, seed, degree, tol, timing, out } => {
            let cfg = RunConfig { suite, u: cli::parse_angles(&u)?, seed, degree, tol, timing };
            let r = cli::run(&cfg);
            emit(&(r.to_json() + "\n"), out.as_ref())?;
            Ok(r.passed)
        }
        Cmd::Flow { u, t, dt, every, csv } => {
            if dt <= 0.0 || t < 0.0 {
                return Err("need t >= 0 and dt > 0".into());
            }
            let u = cli::parse_radians(&u)?;
            emit(&cli::flow_csv(&u, t, dt, every), csv.as_ref())?;
            Ok(true)
        }
        Cmd::Classify { grid, u, tol, csv } => match (grid, u) {
            (Some(k), _) => {
                emit(&cli::classify_csv(k, tol), csv.as_ref())?;
                Ok(true)
            }
            (None, Some(u)) => {
                let p = ModuliPoint::from_array(cli::parse_radians(&u)?);
                match moduli::classify(&p, tol) {
                    Ok(l) => {
                        println!("{}", l.as_str());
                        Ok(true)
                    }
                    Err(e) => Err(e.to_string()),
                }
            }
            (None, None) => Err("classify needs --grid or --u".into()),
        },
        Cmd::Grassmann { report } => {
            let g = ncsphere::grassmann::report();
            if report {
                println!("{}", serde_json::to_string_pretty(&g).expect("serializes"));
                return Ok(true);
            }
            let i32 = CycloScalar::i().mul(&CycloScalar::from_ratio(1, 32)).to_string();
            let r = Report::new(
                "grassmann",
                BTreeMap::new(),
                vec![
                    Check::eq("coefficient of U^3 s2 U s2", i32.clone(), g.coeff_sigma2.clone()),
                    Check::eq("coefficient of U^3 s1 U s1", i32, g.coeff_sigma1.clone()),
                ],
            );
            println!("{}", r.to_json());
            Ok(r.passed)
        }
    }
}
