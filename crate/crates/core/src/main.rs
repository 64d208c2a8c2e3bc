use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use crsym::catalog::{check_instance, default_grid, parse_grid, sweep_table, ModelSpec, RowId};
use crsym::chains::{
    chain_sum, decompose_xpair, normalize_chains, pure_chain_sum_closed_form, pure_pair, verify_xpair, ChainPair,
    PurePairParams,
};
use crsym::parse::{parse_field, parse_polynomial};
use crsym::report::{analyze_with, AnalyzeOptions};
use crsym::tangency::is_symmetry;
use crsym::{Error, GaussRat, MixedPoly, Result};

#[derive(Parser)]
#[command(name = "crsym", version, about = "Infinitesimal CR symmetries of models Im w = P(z, conj z) in C^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and classify the symmetry algebra of a model.
    Analyze {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        strip_pluriharmonic: bool,
        #[arg(long)]
        max_denominator: Option<i64>,
    },
    /// Print a catalog model, optionally checking its profile.
    Catalog {
        #[arg(long)]
        row: String,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        verify: bool,
    },
    /// Sweep a parameter grid over the catalog (JSON lines).
    TableCheck {
        #[arg(long)]
        grid: Option<std::path::PathBuf>,
    },
    /// Verify or build X-pairs of chains.
    Chains {
        #[command(subcommand)]
        command: ChainsCommand,
    },
}

#[derive(Subcommand)]
enum ChainsCommand {
    /// Check an X-pair read from a JSON file against a field and a model.
    Verify {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        field: String,
        #[arg(long)]
        chains: std::path::PathBuf,
    },
    /// Build a pure X-pair from its parameters.
    Build {
        #[arg(long)]
        params: String,
    },
}

fn strings(ps: &[MixedPoly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn pair_json(pair: &ChainPair) -> serde_json::Value {
    json!({
        "U": strings(&pair.u),
        "V": strings(&pair.v),
        "A": pair.a.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "B": pair.b.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

/// Chains file: an array of polynomial strings (used for both chains) or an
/// object {"U": [...], "V": [...]}.
fn read_chains(path: &std::path::Path) -> Result<ChainPair> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let list = |v: &serde_json::Value| -> Result<Vec<MixedPoly>> {
        let arr = v.as_array().ok_or_else(|| Error::Io("expected an array of polynomial strings".into()))?;
        arr.iter()
            .map(|s| s.as_str().ok_or_else(|| Error::Io("expected a polynomial string".into())).and_then(parse_polynomial))
            .collect()
    };
    match &value {
        serde_json::Value::Array(_) => {
            let u = list(&value)?;
            Ok(ChainPair::new(u.clone(), u))
        }
        serde_json::Value::Object(o) => {
            let get = |k: &str| o.get(k).ok_or_else(|| Error::Io(format!("missing key {k}")));
            Ok(ChainPair::new(list(get("U")?)?, list(get("V")?)?))
        }
        _ => Err(Error::Io("chains file must be a JSON array or object".into())),
    }
}

fn parse_pure_params(text: &str) -> Result<PurePairParams> {
    let mut params = PurePairParams::new(0, 0, 0, 0, 0, 0, 0);
    let mut seen = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| Error::InvalidParams(format!("expected key=value, got {item}")))?;
        let (k, v) = (k.trim(), v.trim());
        let int = || v.parse::<i64>().map_err(|_| Error::InvalidParams(format!("{k} must be an integer")));
        let nat = || int().and_then(|n| u32::try_from(n).map_err(|_| Error::InvalidParams(format!("{k} must be nonnegative"))));
        match k {
            "p" => params.p = nat()?,
            "q" => params.q = nat()?,
            "alpha" => params.alpha = int()?,
            "beta" => params.beta = int()?,
            "K" => params.k = nat()?,
            "N" => params.n = nat()?,
            "m" => params.m = nat()?,
            "tau" => {
                let c = parse_polynomial(v)?;
                if c.terms().any(|(m, _)| !m.is_one()) {
                    return Err(Error::InvalidParams("tau must be a number".into()));
                }
                params.tau = c.coeff(&crsym::Mono::ONE);
            }
            _ => return Err(Error::InvalidParams(format!("unknown parameter {k}"))),
        }
        seen.push(k.to_string());
    }
    for k in ["p", "q", "alpha", "beta", "K", "N", "m"] {
        if !seen.iter().any(|s| s == k) {
            return Err(Error::InvalidParams(format!("missing parameter {k}")));
        }
    }
    Ok(params)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { poly, json, strip_pluriharmonic, max_denominator } => {
            let p = parse_polynomial(&poly)?;
            let a = analyze_with(&p, &AnalyzeOptions { strip_pluriharmonic, max_denominator })?;
            if json {
                println!("{}", serde_json::to_string_pretty(&a.report()).expect("serializable"));
            } else {
                print!("{}", a.render_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { row, params, verify } => {
            let row: RowId = row.parse()?;
            let spec = ModelSpec::parse(row, &params)?;
            if !verify {
                println!("{}", crsym::catalog::build_model(&spec)?);
                return Ok(ExitCode::SUCCESS);
            }
            let (line, _) = check_instance(&spec);
            println!("{}", serde_json::to_string(&line).expect("serializable"));
            Ok(exit_for(&[line]))
        }
        Command::TableCheck { grid } => {
            let specs = match grid {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    parse_grid(&text)?
                }
                None => default_grid(),
            };
            let lines = sweep_table(&specs);
            for l in &lines {
                println!("{}", serde_json::to_string(l).expect("serializable"));
            }
            Ok(exit_for(&lines))
        }
        Command::Chains { command: ChainsCommand::Verify { poly, field, chains } } => {
            let p = parse_polynomial(&poly)?;
            let x = parse_field(&field)?;
            let pair = read_chains(&chains)?;
            let checked = verify_xpair(&x, &pair)?;
            let norm = normalize_chains(&x, &pair)?;
            let sum = chain_sum(&checked);
            let decomposition = match decompose_xpair(&x, &pair) {
                Ok(parts) => json!(parts.iter().map(pair_json).collect::<Vec<_>>()),
                Err(Error::NotMonomialDiagonal) => json!(null),
                Err(e) => return Err(e),
            };
            print_json(&json!({
                "pair": pair_json(&checked),
                "normalized": pair_json(&norm),
                "chain_sum": sum.to_string(),
                "chain_sum_equals_poly": sum == p,
                "field_is_symmetry": is_symmetry(&x, &p),
                "decomposition": decomposition,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Chains { command: ChainsCommand::Build { params } } => {
            let params = parse_pure_params(&params)?;
            let pair = pure_pair(&params)?;
            let x = params.field();
            let checked = verify_xpair(&x, &pair)?;
            let sum = chain_sum(&checked);
            let closed = pure_chain_sum_closed_form(&params)?;
            let ok = sum == closed && is_symmetry(&x, &sum);
            print_json(&json!({
                "field": x.to_string(),
                "pair": pair_json(&checked),
                "chain_sum": sum.to_string(),
                "closed_form_matches": sum == closed,
                "field_is_symmetry": is_symmetry(&x, &sum),
                "constant": GaussRat::imag(crsym::Rat::from_integer((params.p as i64 * params.beta - params.q as i64 * params.alpha).into())).to_string(),
            }));
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

/// 0 if every instance passed, 1 if one failed on its input, 2 if a profile
/// contradicted the expected one.
fn exit_for(lines: &[crsym::catalog::SweepLine]) -> ExitCode {
    if lines.iter().any(|l| !l.pass && l.actual.is_some()) {
        ExitCode::from(2)
    } else if lines.iter().any(|l| !l.pass) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
