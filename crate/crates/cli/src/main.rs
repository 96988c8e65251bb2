//! `polylin`: JSON front end to the linearization library.
//!
//! Reports go to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 2 malformed input, 3 dimension mismatch, 4 singular pencil or polynomial.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polylin::ansatz::{self, AnsatzFactor, Side};
use polylin::basis::{Basis, BasisKind};
use polylin::io::{self, complex_json, FactorJson, PencilJson, SpectrumReport};
use polylin::random::{self, RandomSpec};
use polylin::spectral::{self, Eigentriple};
use polylin::{blocksym, oracle, pencil, Error, MatrixPolynomial, Pencil};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "polylin",
    version,
    about = "Linearizations of matrix polynomials in orthogonal and degree-graded bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Problem JSON file.
    #[arg(short = 'p', long = "problem")]
    problem: Option<PathBuf>,
    /// Random instance `n,k,seed` with entries uniform in [-1, 1].
    #[arg(long, value_name = "N,K,SEED")]
    random: Option<String>,
}

#[derive(Args)]
struct Input {
    #[command(flatten)]
    source: Source,
    /// Basis family for `--random`: monomial, chebyshev1, chebyshev2,
    /// legendre, newton, custom or degree_graded.
    #[arg(long, default_value = "chebyshev1", requires = "random")]
    basis: String,
}

#[derive(Subcommand)]
enum Command {
    /// Anchor pencil F (three-term) or G (degree-graded).
    Anchor {
        #[command(flatten)]
        input: Input,
        /// Rewrite a three-term basis as degree-graded and emit G.
        #[arg(long)]
        degree_graded: bool,
    },
    /// Pencil of an ansatz factor.
    Ansatz {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'f', long)]
        factor: PathBuf,
        /// Overrides the side stored in the factor.
        #[arg(long, value_parser = parse_side)]
        side: Option<Side>,
    },
    /// Block-symmetric pencil for an ansatz vector.
    Blocksym {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "V1,V2,...", allow_hyphen_values = true)]
        v: String,
    },
    /// Rank test on [v ⊗ I  B].
    Check {
        #[arg(short = 'f', long)]
        factor: PathBuf,
        /// Optional problem to check the factor's shape against.
        #[arg(short = 'p', long = "problem")]
        problem: Option<PathBuf>,
        /// Relative singular value cutoff (default kn·eps).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Whether a pencil lies in the right or left ansatz space.
    Membership {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        pencil: PathBuf,
        #[arg(long, value_parser = parse_side, default_value = "m1")]
        side: Side,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Eigenvalues of the anchor or of a factor's pencil.
    Eig {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        factor: Option<PathBuf>,
        /// Attach pencil and recovered polynomial eigenvectors.
        #[arg(long)]
        recover: bool,
    },
    /// Eigenvectors of P recovered from a linearization, with residuals.
    Recover {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        factor: Option<PathBuf>,
    },
    /// Eigenvalue exclusion test for the block-symmetric pencil of v.
    Exclusion {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "V1,V2,...", allow_hyphen_values = true)]
        v: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Reference spectrum from the determinant.
    Oracle {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Read(PathBuf, std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Lib(e) => e.fmt(f),
            Self::Read(p, e) => write!(f, "cannot read {}: {e}", p.display()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Read(..) => 2,
            Self::Lib(e) => match e {
                Error::Malformed(_)
                | Error::Json(_)
                | Error::UnknownBasis(_)
                | Error::MissingNodes
                | Error::InvalidBasis(_)
                | Error::ZeroLeadingCoefficient
                | Error::ZeroAnsatzVector => 2,
                Error::Dimension(_)
                | Error::BasisTooShort { .. }
                | Error::WrongBasis { .. }
                | Error::DegreeTooSmall(_)
                | Error::SizeGuard { .. } => 3,
                Error::SingularPencil { .. } | Error::SingularPolynomial => 4,
                _ => 1,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn parse_side(s: &str) -> std::result::Result<Side, String> {
    Side::parse(s).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Read(path.to_owned(), e))
}

fn parse_vector(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            let x = x.trim();
            x.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Malformed(format!("bad vector entry `{x}`")).into())
        })
        .collect()
}

fn load_problem(input: &Input) -> Result<MatrixPolynomial> {
    if let Some(path) = &input.source.problem {
        return Ok(io::parse_problem(&read(path)?)?);
    }
    let spec: RandomSpec = input.source.random.as_deref().expect("clap enforces one source").parse()?;
    if input.basis == "degree_graded" {
        let mut r = random::rng(spec.seed);
        let basis = random::degree_graded_basis(&mut r, spec.k);
        return Ok(random::polynomial(&mut r, basis, spec.n, spec.k)?);
    }
    Ok(spec.generate(&BasisKind::parse(&input.basis)?)?)
}

fn load_factor(path: &Path) -> Result<AnsatzFactor> {
    Ok(io::parse_factor(&read(path)?)?)
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("plain data serializes")
}

fn pencil_of(p: &MatrixPolynomial, f: &AnsatzFactor) -> Result<Pencil> {
    Ok(match f.side {
        Side::M1 => ansatz::make_m1(p, f)?,
        Side::M2 => ansatz::make_m2(p, f)?,
    })
}

/// The factor whose pencil is analysed: the given one, or the anchor's.
fn factor_or_anchor(p: &MatrixPolynomial, path: Option<&Path>) -> Result<AnsatzFactor> {
    p.require_ansatz_degree()?;
    match path {
        Some(path) => {
            let f = load_factor(path)?;
            f.check_shape(p.n(), p.degree())?;
            Ok(f)
        }
        None => Ok(AnsatzFactor::anchor(p.degree(), p.n(), Side::M1)),
    }
}

/// Recovered eigenvectors of `P` for one eigentriple of a pencil built from
/// `f`. On the left side the roles of the pencil's eigenvectors swap.
fn recovery(p: &MatrixPolynomial, f: &AnsatzFactor, t: &Eigentriple) -> Value {
    let (structured, projected) = match f.side {
        Side::M1 => (&t.right, &t.left),
        Side::M2 => (&t.left, &t.right),
    };
    let from_structure = spectral::recover_right(p, t.eigenvalue, structured, 1e-6);
    let from_projection = spectral::recover_left(&f.v, projected);
    let report = |vec: std::result::Result<Vec<_>, Error>, left: bool| match vec {
        Ok(u) => {
            let r = if left {
                spectral::left_residual(p, t.eigenvalue, &u)
            } else {
                spectral::right_residual(p, t.eigenvalue, &u)
            };
            json!({ "vector": complex_json(&u), "residual": r })
        }
        Err(e) => json!({ "error": e.to_string() }),
    };
    let structured = report(from_structure.map(|r| r.u), f.side == Side::M2);
    let projected = report(from_projection, f.side == Side::M1);
    let (right, left) = match f.side {
        Side::M1 => (structured, projected),
        Side::M2 => (projected, structured),
    };
    json!({
        "eigenvalue": t.eigenvalue.finite().map(|z| [z.re, z.im]),
        "right": right,
        "left": left,
    })
}

fn eigentriples(p: &MatrixPolynomial, f: &AnsatzFactor) -> Result<Vec<Eigentriple>> {
    let l = pencil_of(p, f)?;
    Ok(spectral::pencil_eigen(&l)?)
}

fn run(cli: Cli) -> Result<Value> {
    Ok(match cli.command {
        Command::Anchor { input, degree_graded } => {
            let mut p = load_problem(&input)?;
            if degree_graded {
                if let Basis::ThreeTerm(b) = p.basis() {
                    let dg = b
                        .to_degree_graded(p.degree())
                        .ok_or(Error::BasisTooShort { requested: p.degree(), available: 0 })?;
                    p = MatrixPolynomial::new(dg, p.coeffs().to_vec())?;
                }
                to_value(&PencilJson::from_pencil(&pencil::build_anchor_dg(&p)?))
            } else {
                to_value(&PencilJson::from_pencil(&pencil::anchor(&p)?))
            }
        }
        Command::Ansatz { input, factor, side } => {
            let p = load_problem(&input)?;
            let mut f = load_factor(&factor)?;
            if let Some(side) = side {
                f.side = side;
            }
            to_value(&PencilJson::from_pencil(&pencil_of(&p, &f)?))
        }
        Command::Blocksym { input, v } => {
            let p = load_problem(&input)?;
            let v = parse_vector(&v)?;
            let f = blocksym::dm_factor(&p, &v)?;
            let l = ansatz::make_m1(&p, &f)?;
            json!({ "factor": to_value(&FactorJson::from_factor(&f)), "pencil": to_value(&PencilJson::from_pencil(&l)) })
        }
        Command::Check { factor, problem, tol } => {
            let f = load_factor(&factor)?;
            if let Some(path) = problem {
                let p = io::parse_problem(&read(&path)?)?;
                f.check_shape(p.n(), p.degree())?;
            }
            let c = ansatz::check_linearization_with_tol(&f, tol)?;
            json!({
                "rank": c.rank,
                "deficiency": c.deficiency,
                "is_strong_linearization": c.is_strong_linearization,
                "smallest_singular_value": c.smallest_singular_value,
            })
        }
        Command::Membership { input, pencil, side, tol } => {
            let p = load_problem(&input)?;
            let l = io::parse_pencil(&read(&pencil)?)?;
            let m = ansatz::verify_membership(&l, &p, side, tol)?;
            json!({ "member": m.member, "v": m.v, "residual": m.residual })
        }
        Command::Eig { input, factor, recover } => {
            let p = load_problem(&input)?;
            let f = factor_or_anchor(&p, factor.as_deref())?;
            let triples = eigentriples(&p, &f)?;
            let mut report = to_value(&SpectrumReport::from_triples(&triples, recover));
            if recover {
                let rec: Vec<Value> = triples.iter().map(|t| recovery(&p, &f, t)).collect();
                report["recovered"] = Value::Array(rec);
            }
            report
        }
        Command::Recover { input, factor } => {
            let p = load_problem(&input)?;
            let f = factor_or_anchor(&p, factor.as_deref())?;
            let triples = eigentriples(&p, &f)?;
            let items: Vec<Value> = triples.iter().map(|t| recovery(&p, &f, t)).collect();
            let worst = |side: &str| {
                items.iter().map(|i| i[side]["residual"].as_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
            };
            json!({
                "side": f.side,
                "worst_right_residual": worst("right"),
                "worst_left_residual": worst("left"),
                "eigenvectors": items,
            })
        }
        Command::Exclusion { input, v, tol } => {
            let p = load_problem(&input)?;
            let v = parse_vector(&v)?;
            let e = spectral::eigenvalue_exclusion(&p, &v, tol)?;
            let rank = ansatz::check_linearization(&blocksym::dm_factor(&p, &v)?)?;
            json!({
                "excluded": e.excluded,
                "polynomial": e.polynomial.coeffs(),
                "roots": complex_json(&e.roots),
                "min_distance": if e.min_distance.is_finite() { json!(e.min_distance) } else { Value::Null },
                "infinite_eigenvalues": e.infinite_eigenvalues,
                "is_strong_linearization": rank.is_strong_linearization,
            })
        }
        Command::Oracle { input } => {
            let p = load_problem(&input)?;
            to_value(&SpectrumReport::from_spectrum(&oracle::reference_spectrum(&p)?))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("plain data serializes"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("polylin: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
