//! Command-line front end for the perm-algebra workbench.
//!
//! Exit codes: 0 for success and true verdicts, 1 for false verdicts and
//! inputs outside the queried subalgebra, 2 for usage and parse errors.

use clap::{Parser as ClapParser, Subcommand};
use derperm_cli::{json, parser};
use derperm::identities::{
    builtin_identity, consequence_space, multilinear_magma_monomials, verify_vanishes,
    IdentityTemplate,
};
use derperm::rewrite::{enumerate_normal_monomials, phi, to_succ_combination};
use derperm::{dialgebra, DiffPoly, PermMonomial};
use num::One;
use serde_json::json;

use parser::{parse_expression, ParseError};

#[derive(ClapParser)]
#[command(
    name = "derperm",
    about = "Exact workbench for the free perm algebra with derivation",
    version
)]
struct Cli {
    /// Emit results as canonical JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression to a differential polynomial.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Test whether a monomial lies in the `>`-subalgebra.
    Member {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Map a normal-form monomial to its `>`-term.
    Phi {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Rewrite an expressible polynomial as a combination of `>`-terms.
    Tosucc {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// List the normal-form basis monomials of a multilinear component.
    Basis {
        #[arg(long)]
        arity: u32,
    },
    /// Compare the closed-form dimension with the enumerated basis size.
    Dim {
        #[arg(long)]
        arity: u32,
    },
    /// Check that a built-in identity vanishes under evaluation.
    Verify { name: String },
    /// Dimension of a multilinear operad component cut out by identities.
    OperadDim {
        #[arg(long)]
        arity: u32,
        /// Comma-separated identity names, e.g. id1,id2,id3.
        #[arg(long, value_delimiter = ',', required = true)]
        ids: Vec<String>,
    },
    /// Split a weight-(-1) polynomial into its two dialgebra parts.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check the six dialgebra axioms.
    Axioms,
}

enum CmdError {
    Parse(ParseError),
    Usage(String),
    Verdict(derperm::Error),
}

impl From<ParseError> for CmdError {
    fn from(e: ParseError) -> Self {
        CmdError::Parse(e)
    }
}

impl From<derperm::Error> for CmdError {
    fn from(e: derperm::Error) -> Self {
        match e {
            derperm::Error::UnknownIdentity(_) | derperm::Error::EmptyInput => {
                CmdError::Usage(e.to_string())
            }
            other => CmdError::Verdict(other),
        }
    }
}

fn parse_diff(src: &str) -> Result<DiffPoly, CmdError> {
    parse_expression(src)?
        .into_diff()
        .map_err(CmdError::Usage)
}

/// A single-monomial input with unit coefficient, as required by phi.
fn parse_monomial(src: &str) -> Result<PermMonomial, CmdError> {
    let p = parse_diff(src)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if c.is_one() => Ok(m.clone()),
        _ => Err(CmdError::Usage(
            "expected a single monomial with coefficient 1".into(),
        )),
    }
}

fn resolve_ids(names: &[String]) -> Result<Vec<IdentityTemplate>, CmdError> {
    names
        .iter()
        .map(|n| builtin_identity(n).map_err(CmdError::from))
        .collect()
}

fn run(cli: &Cli) -> Result<i32, CmdError> {
    match &cli.command {
        Cmd::Eval { expr } => {
            let p = parse_diff(expr)?;
            if cli.json {
                println!("{}", json::diff_poly(&p));
            } else {
                println!("{}", p);
            }
            Ok(0)
        }
        Cmd::Member { expr } => {
            let p = parse_diff(expr)?;
            let mut terms = p.terms();
            let m = match (terms.next(), terms.next()) {
                (Some((m, _)), None) => m,
                _ => return Err(CmdError::Usage("expected a single monomial".into())),
            };
            let member = m.is_succ_member();
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "member": member,
                        "weight": m.weight(),
                        "last_der": m.last().der(),
                    })
                );
            } else {
                let verdict = if member { "YES" } else { "NO" };
                println!("{} (wt={}, k_n={})", verdict, m.weight(), m.last().der());
            }
            Ok(if member { 0 } else { 1 })
        }
        Cmd::Phi { expr } => {
            let m = parse_monomial(expr)?;
            let t = phi(&m)?;
            if cli.json {
                println!("{}", json::magma_term(&t));
            } else {
                println!("{}", t);
            }
            Ok(0)
        }
        Cmd::Tosucc { expr } => {
            let p = parse_diff(expr)?;
            let q = to_succ_combination(&p)?;
            if cli.json {
                println!("{}", json::magma_poly(&q));
            } else {
                println!("{}", q);
            }
            Ok(0)
        }
        Cmd::Basis { arity } => {
            let basis = enumerate_normal_monomials(*arity)?;
            if cli.json {
                let items: Vec<_> = basis.iter().map(json::monomial).collect();
                println!("{}", json!({ "arity": arity, "monomials": items }));
            } else {
                for m in &basis {
                    println!("{}", m);
                }
            }
            Ok(0)
        }
        Cmd::Dim { arity } => {
            let formula = dialgebra::dim_succ_formula(*arity);
            let enumerated = enumerate_normal_monomials(*arity)?.len() as u64;
            if cli.json {
                println!(
                    "{}",
                    json!({ "arity": arity, "formula": formula, "enumerated": enumerated })
                );
            } else {
                println!("formula={} enumerated={}", formula, enumerated);
            }
            Ok(if formula == enumerated { 0 } else { 1 })
        }
        Cmd::Verify { name } => {
            let t = builtin_identity(name)?;
            let (vanishes, witness) = verify_vanishes(&t);
            if cli.json {
                let mut report = json!({ "name": name, "vanishes": vanishes });
                if !vanishes {
                    report["witness"] = json::diff_poly(&witness);
                }
                println!("{}", report);
            } else if vanishes {
                println!("{}: VANISHES", name);
            } else {
                println!("{}: FAILS witness={}", name, witness);
            }
            Ok(if vanishes { 0 } else { 1 })
        }
        Cmd::OperadDim { arity, ids } => {
            let templates = resolve_ids(ids)?;
            let ambient = multilinear_magma_monomials(*arity).len();
            let rank = consequence_space(&templates, *arity).rank();
            let quotient = ambient - rank;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "arity": arity,
                        "ids": ids,
                        "ambient": ambient,
                        "rank": rank,
                        "quotient": quotient,
                    })
                );
            } else {
                println!("ambient={} rank={} quotient={}", ambient, rank, quotient);
            }
            Ok(0)
        }
        Cmd::Decompose { expr } => {
            let p = parse_diff(expr)?;
            let d = dialgebra::decompose(&p)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "succ_part": json::diff_poly(&d.succ_part),
                        "prec_part": json::diff_poly(&d.prec_part),
                    })
                );
            } else {
                println!("succ_part: {}", d.succ_part);
                println!("prec_part: {}", d.prec_part);
            }
            Ok(0)
        }
        Cmd::Axioms => {
            let checks = dialgebra::verify_dialgebra_axioms();
            let all_pass = checks.iter().all(|c| c.passes);
            if cli.json {
                let items: Vec<_> = checks
                    .iter()
                    .map(|c| {
                        let mut item = json!({ "name": c.name, "vanishes": c.passes });
                        if !c.passes {
                            item["witness"] = json::diff_poly(&c.witness);
                        }
                        item
                    })
                    .collect();
                println!("{}", json!(items));
            } else {
                for c in &checks {
                    if c.passes {
                        println!("{}: VANISHES", c.name);
                    } else {
                        println!("{}: FAILS witness={}", c.name, c.witness);
                    }
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

fn main() {
    // DERPERM_THREADS is accepted for interface stability; every computation
    // is deterministic and the current implementation is single-threaded, so
    // the value only needs to be well-formed.
    if let Ok(v) = std::env::var("DERPERM_THREADS") {
        if v.parse::<usize>().map(|n| n >= 1) != Ok(true) {
            eprintln!("warning: ignoring invalid DERPERM_THREADS value {:?}", v);
        }
    }
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(CmdError::Parse(e)) => {
            eprintln!("parse error: {}", e);
            2
        }
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {}", msg);
            2
        }
        Err(CmdError::Verdict(e)) => {
            eprintln!("{}", e);
            1
        }
    };
    std::process::exit(code);
}
