use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilcascade::invariants::{extract_generators, generators_to_json};
use nilcascade::lipswolf::verify_lipsman_wolf;
use nilcascade::verify::{parse_checks, run, status_word, RunConfig};
use nilcascade::{compute_cascade, CartanType, Error, RootSystem, Weight};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "nilcascade", version, about = "Cascades, S(n)^N and Lipsman-Wolf symbols in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the cascade of strongly orthogonal roots
    Cascade(Common),
    /// Compute the generators of S(n)^N
    Invariants {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Run verification checks
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Comma-separated subset of t1,t2,t3,t4,t6,t7,t8,t9,joseph
        #[arg(long)]
        checks: Option<String>,
        /// Highest weight for t9, fundamental-weight coordinates
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Codegree and top symbol of the matrix coefficient of V_lambda
    LipsmanWolf {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct Common {
    /// Cartan type such as B2 or A1xG2, or a family letter together with --rank
    #[arg(long = "type")]
    type_name: String,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MaxDegreeTooSmall { .. } => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl Common {
    fn cartan_type(&self) -> Result<CartanType, Error> {
        match self.rank {
            Some(r) => CartanType::from_family_and_rank(&self.type_name, r),
            None => self.type_name.parse(),
        }
    }

    fn emit(&self, text: String) -> Result<(), Failure> {
        let text = if text.ends_with('\n') { text } else { text + "\n" };
        match &self.out {
            Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn parse_weight(s: &str) -> Result<Weight, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map(Weight::new)
        .map_err(|_| Failure::Usage(format!("bad weight '{s}': expected comma-separated integers")))
}

fn execute(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Cascade(common) => {
            let rs = RootSystem::new(common.cartan_type()?);
            let c = compute_cascade(&rs);
            common.emit(match common.format {
                Format::Json => c.to_json(),
                Format::Text => c.to_text(),
            })
        }
        Command::Invariants { common, max_degree } => {
            let rs = RootSystem::new(common.cartan_type()?);
            let c = compute_cascade(&rs);
            let d = max_degree.unwrap_or_else(|| nilcascade::invariants::default_max_degree(&rs, &c));
            if d == 0 {
                return Err(Failure::Usage("max degree must be at least 1".into()));
            }
            let gens = extract_generators(&rs, &c, d)?;
            common.emit(match common.format {
                Format::Json => generators_to_json(&rs, &c, &gens),
                Format::Text => {
                    let mut out = format!("S(n)^N for {}: {} generators (m = {})\n", rs.cartan_type(), gens.len(), c.m());
                    for g in &gens.generators {
                        let w = rs.weight_of(&g.weight);
                        let b = nilcascade::cascade::lattice_membership(&rs, &w, &c);
                        out.push_str(&format!(
                            "  weight {w} = {:?} (simple)  degree {}  cascade coeffs {:?}\n    xi = {}\n",
                            g.weight, g.degree, b.unwrap_or_default(), g.xi
                        ));
                    }
                    out
                }
            })
        }
        Command::Verify {
            common,
            max_degree,
            checks,
            weight,
            seed,
        } => {
            let mut config = RunConfig::new(common.cartan_type()?);
            config.max_degree = max_degree;
            config.checks = checks.as_deref().map(parse_checks).transpose()?;
            config.weight = weight.as_deref().map(parse_weight).transpose()?;
            config.seed = seed;
            let report = run(&config)?;
            common.emit(match common.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            })?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification(format!("verification failed for {}", report.type_name)))
            }
        }
        Command::LipsmanWolf { common, weight, seed } => {
            let rs = RootSystem::new(common.cartan_type()?);
            let lambda = parse_weight(&weight)?;
            if lambda.fw().len() != rs.rank() {
                return Err(Error::RankMismatch {
                    expected: rs.rank(),
                    got: lambda.fw().len(),
                }
                .into());
            }
            let c = compute_cascade(&rs);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (lw, report) = verify_lipsman_wolf(&rs, &c, &lambda, &mut rng)?;
            common.emit(match common.format {
                Format::Json => serde_json::to_string(&lw).unwrap(),
                Format::Text => {
                    let mut out = format!(
                        "lambda = {lambda}  lambda* = {}  lambda + lambda* = {} = sum {:?} beta\n",
                        Weight::new(lw.lambda_star_fw.clone()),
                        Weight::new(lw.lambda_plus_star_fw.clone()),
                        lw.cascade_coeffs
                    );
                    out.push_str(&format!("dimension {}  codegree {:?}\n", lw.dimension, lw.codegree));
                    match (&lw.codegree, &lw.proportionality) {
                        (Some(0), Some(p)) => out.push_str(&format!("top symbol: constant {p}\n")),
                        (_, Some(p)) => out.push_str(&format!("top symbol = {p} * xi_(lambda+lambda*)\n")),
                        _ => out.push_str("top symbol not proportional to xi_(lambda+lambda*)\n"),
                    }
                    for cl in &report.clauses {
                        out.push_str(&format!("  {:<8}{}: {}\n", status_word(cl.status), cl.id, cl.detail));
                    }
                    out
                }
            })?;
            if lw.pass {
                Ok(())
            } else {
                Err(Failure::Verification("Lipsman-Wolf comparison failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
