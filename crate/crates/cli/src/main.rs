//! `arimat`: exact computations on matrices, arithmetic matroids and
//! labelled graphs from the command line.
//!
//! Every subcommand reads one JSON document and prints one. Exit status is 0
//! on success, 2 when the answer is a certified negative result, and 1 on
//! usage or input errors.

mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use arimat::arimat::{
    arith_power, classify, gcd_consistency, labelled_power, verify_axioms, ArimatError,
};
use arimat::decompose::{counterexample_fp, power_matrix, power_two, tad, DecomposeError};
use arimat::format;
use arimat::gpcheck::gp_r_check;
use arimat::plucker::{gp_verify, rgr_generators};
use arimat::{plucker, Caps, Matrix, MatroidView, PowerMode};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use input::Io;

#[derive(Parser)]
#[command(name = "arimat", version, about = "Exact computations for powers of matroids and arithmetic matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArg {
    /// Field to compute over: Q or Fp:<p>. Defaults to the document's field.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args)]
struct ModeArg {
    /// up-to-sign, odd-exact or sign-preserving.
    #[arg(long, default_value = "up-to-sign", value_parser = parse_mode)]
    mode: PowerMode,
}

fn parse_mode(s: &str) -> Result<PowerMode, String> {
    s.parse()
}

#[derive(Subcommand)]
enum Command {
    /// Plücker coordinates of a full-rank matrix.
    Plucker {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Grassmann-Plücker relations violated by a vector or a matrix's coordinates.
    GpVerify {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Whether the column matroid is regular, with a U(2,4) minor if not.
    Regular {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        field: FieldArg,
    },
    /// First U(2,4) minor of the column matroid.
    U24 {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Factor a representation of a regular matroid as T A D.
    Decompose {
        #[command(flatten)]
        io: Io,
        /// Totally unimodular factor to use instead of recovering one.
        #[arg(long)]
        tu: Option<PathBuf>,
    },
    /// A matrix whose Plücker coordinates are k-th powers.
    Power {
        #[command(flatten)]
        io: Io,
        #[arg(short)]
        k: u32,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// A matrix with |Δ| = |Δ(X1)|^k1 |Δ(X2)|^k2; X1 is --input, X2 is --second.
    Power2 {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        second: PathBuf,
        #[arg(long)]
        k1: u32,
        #[arg(long)]
        k2: u32,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// Multiplicity table and classification of a list or labelled graph.
    Arith {
        #[command(flatten)]
        io: Io,
    },
    /// A list realizing the k-th power of an arithmetic matroid.
    ArithPower {
        #[command(flatten)]
        io: Io,
        #[arg(short)]
        k: u32,
    },
    /// Check the (GP_r) conditions on a table, list or labelled graph.
    GpCheck {
        #[command(flatten)]
        io: Io,
        #[arg(short, default_value_t = 2)]
        r: usize,
    },
    /// Compare multiplicities of non-independent sets with gcds over bases.
    GcdCheck {
        #[command(flatten)]
        io: Io,
    },
    /// Check the arithmetic-matroid axioms (P), (A1), (A2).
    Axioms {
        #[command(flatten)]
        io: Io,
    },
    /// The list of a labelled graph, optionally with labels raised to the k-th power.
    LabelledGraph {
        #[command(flatten)]
        io: Io,
        #[arg(short, default_value_t = 1)]
        k: u32,
    },
    /// Generators of the ideal of the regular Grassmannian.
    RgrIdeal {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A non-regular pair over F_p whose minors are k-th powers.
    Counterexample {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        k: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A document to print, and whether it reports a negative result.
struct Outcome {
    doc: Value,
    negative: bool,
}

impl Outcome {
    fn ok(doc: Value) -> Outcome {
        Outcome { doc, negative: false }
    }

    fn negative_if(negative: bool, doc: Value) -> Outcome {
        Outcome { doc, negative }
    }
}

fn caps() -> Result<Caps> {
    match std::env::var("ARIMAT_CAP") {
        Ok(spec) => Ok(Caps::default().parse_overrides(&spec)?),
        Err(_) => Ok(Caps::default()),
    }
}

fn with_field(m: Matrix, field: &FieldArg) -> Result<Matrix> {
    match &field.field {
        None => Ok(m),
        Some(f) => Ok(m.to_field(arimat::Field::parse(f)?)?),
    }
}

fn not_regular(x: &Matrix, message: String) -> Outcome {
    let w = MatroidView::new(x.clone()).find_u24();
    Outcome::negative_if(
        true,
        json!({ "error": "not_regular", "message": message, "u24": format::u24_to_value(w.as_ref()) }),
    )
}

/// Maps mathematical negative results to documents, passing other errors on.
fn arimat_outcome(r: Result<Value, ArimatError>) -> Result<Outcome> {
    match r {
        Ok(doc) => Ok(Outcome::ok(doc)),
        Err(e @ ArimatError::NonRegular(_)) => {
            let ArimatError::NonRegular(w) = &e else { unreachable!() };
            Ok(Outcome::negative_if(
                true,
                json!({ "error": "non_regular", "message": e.to_string(), "certificate": format::witness_to_value(w) }),
            ))
        }
        Err(e @ ArimatError::NoMultiplicativeBasis { .. }) => {
            let ArimatError::NoMultiplicativeBasis { regular_lift, lifts_examined, exhaustive } = e else {
                unreachable!()
            };
            Ok(Outcome::negative_if(
                true,
                json!({
                    "error": "no_multiplicative_basis",
                    "message": e.to_string(),
                    "regular_lift": regular_lift,
                    "lifts_examined": lifts_examined,
                    "search_exhaustive": exhaustive,
                }),
            ))
        }
        Err(e) => Err(e.into()),
    }
}

fn decompose_outcome(x: &Matrix, r: Result<Value, DecomposeError>) -> Result<Outcome> {
    match r {
        Ok(doc) => Ok(Outcome::ok(doc)),
        Err(e @ DecomposeError::NotRegular(_)) => Ok(not_regular(x, e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn run(cmd: Command) -> Result<(Outcome, Option<PathBuf>)> {
    let caps = caps()?;
    let out = match cmd {
        Command::Plucker { io, field } => {
            let x = with_field(io.matrix()?, &field)?;
            (Outcome::ok(format::plucker_to_value(&plucker(&x)?)), io.output)
        }
        Command::GpVerify { io, field } => {
            let doc = io.document()?;
            let pv = if doc.get("coords").is_some() {
                let pv = format::plucker_from_value(&doc)?;
                match &field.field {
                    None => pv,
                    Some(_) => bail!("--field applies to matrix input only"),
                }
            } else {
                plucker(&with_field(format::matrix_from_value(&doc)?, &field)?)?
            };
            let violated = gp_verify(&pv)?;
            let doc = format::relations_to_value(pv.d(), pv.n(), &violated);
            (Outcome::negative_if(!violated.is_empty(), doc), io.output)
        }
        Command::Regular { io, field } => {
            let x = with_field(io.matrix()?, &field)?;
            let w = MatroidView::new(x).find_u24();
            let doc = json!({ "regular": w.is_none(), "u24": format::u24_to_value(w.as_ref()) });
            (Outcome::negative_if(w.is_some(), doc), io.output)
        }
        Command::U24 { io, field } => {
            let x = with_field(io.matrix()?, &field)?;
            let w = MatroidView::new(x).find_u24();
            (Outcome::ok(format::u24_to_value(w.as_ref())), io.output)
        }
        Command::Decompose { io, tu } => {
            let x = io.matrix()?;
            let a = match tu {
                None => None,
                Some(p) => Some(format::matrix_from_value(&input::read_document(Some(&p))?)?),
            };
            let r = tad(&x, a.as_ref(), &caps).map(|f| format::factorization_to_value(&f));
            (decompose_outcome(&x, r)?, io.output)
        }
        Command::Power { io, k, mode } => {
            let x = io.matrix()?;
            let r = power_matrix(&x, k, mode.mode, &caps).map(|m| format::matrix_to_value(&m));
            (decompose_outcome(&x, r)?, io.output)
        }
        Command::Power2 { io, second, k1, k2, mode } => {
            let x1 = io.matrix()?;
            let x2 = format::matrix_from_value(&input::read_document(Some(&second))?)?;
            let r = power_two(&x1, &x2, k1, k2, mode.mode, &caps).map(|m| format::matrix_to_value(&m));
            (decompose_outcome(&x1, r)?, io.output)
        }
        Command::Arith { io } => {
            let gl = io.list()?;
            let r = gl.full_table(&caps).and_then(|t| {
                let c = classify(&gl, &caps)?;
                Ok(json!({ "table": format::table_to_value(&t), "classification": format::classification_to_value(&c) }))
            });
            (arimat_outcome(r)?, io.output)
        }
        Command::ArithPower { io, k } => {
            let gl = io.list()?;
            let r = arith_power(&gl, k, &caps).map(|p| format::group_list_to_value(&p));
            (arimat_outcome(r)?, io.output)
        }
        Command::GpCheck { io, r } => {
            let t = io.table(&caps)?;
            let rep = gp_r_check(&t, r, &caps)?;
            (Outcome::negative_if(!rep.pass, format::gpr_report_to_value(&rep)), io.output)
        }
        Command::GcdCheck { io } => {
            let t = io.table(&caps)?;
            let v = gcd_consistency(&t);
            (Outcome::negative_if(!v.is_empty(), format::gcd_violations_to_value(&v)), io.output)
        }
        Command::Axioms { io } => {
            let t = io.table(&caps)?;
            let rep = verify_axioms(&t, &caps)?;
            (Outcome::negative_if(!rep.pass(), format::axiom_report_to_value(&rep)), io.output)
        }
        Command::LabelledGraph { io, k } => {
            let g = format::graph_from_value(&io.document()?)?;
            (Outcome::ok(format::group_list_to_value(&labelled_power(&g, k)?)), io.output)
        }
        Command::RgrIdeal { d, n, output } => (Outcome::ok(format::ideal_to_value(&rgr_generators(d, n)?)), output),
        Command::Counterexample { p, k, output } => {
            let c = counterexample_fp(p, k)?;
            (Outcome::ok(format::counterexample_to_value(p, k, c.as_ref())), output)
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = run(cli.command).and_then(|(outcome, path)| {
        input::write_output(path.as_deref(), &format::to_text(&outcome.doc)).context("writing output")?;
        Ok(outcome.negative)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
