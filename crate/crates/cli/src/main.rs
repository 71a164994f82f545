//! `krxm`: batch verifier for the Demazure / fermionic / one-dimensional-sum
//! character identities. Exit code 0 iff every requested verdict is true.

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use krxm_core::cartan::{root_system, Family, RootSystemData};
use krxm_core::demazure_side::{dside_normalized, kr_translation};
use krxm_core::groupring::classical_character;
use krxm_core::kr_crystal::{crystal_graph_edges, one_dim_sum};
use krxm_core::nu::NuSequence;
use krxm_core::report::{emit_report, verify_md, verify_xm, Format, VerificationReport};
use krxm_core::weyl::decompose_reduced;

#[derive(Parser)]
#[command(
    name = "krxm",
    about = "Exact verification of Demazure-operator, fermionic-form, and one-dimensional-sum character identities for simply-laced affine types",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TypeArgs {
    /// Root-system family: A, D, or E
    #[arg(long = "type", value_name = "FAMILY")]
    family: String,
    /// Rank n (A: n >= 1, D: n >= 4, E: n in {6,7,8})
    #[arg(long)]
    rank: usize,
}

impl TypeArgs {
    fn root_system(&self) -> anyhow::Result<RootSystemData> {
        let family: Family = self
            .family
            .parse()
            .map_err(|e: krxm_core::Error| anyhow!(e))?;
        root_system(family, self.rank).map_err(|e| anyhow!(e))
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format: json, csv, or text
    #[arg(long, default_value = "json")]
    format: String,
    /// Cap on intermediate monomials / crystal elements; exceeding it aborts
    /// with a sizing hint instead of thrashing
    #[arg(long)]
    budget: Option<u64>,
    /// Print per-weight detail and timings in text reports
    #[arg(long)]
    verbose: bool,
}

impl OutputArgs {
    fn format(&self) -> anyhow::Result<Format> {
        self.format.parse().map_err(|e: krxm_core::Error| anyhow!(e))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normalized Demazure side: classical decomposition and the constant C
    Dside {
        #[command(flatten)]
        ty: TypeArgs,
        /// Factor sequence "(r,l);(r,l);..." (whitespace ignored)
        #[arg(long)]
        nu: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fermionic side: M(nu, mu, q) over all dominant mu
    Mside {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        nu: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// One-dimensional sums q^{-D(u(B))} X(B, mu, q) (type A only)
    Xside {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        nu: String,
        /// Dump each factor's labeled affine crystal graph as an edge list
        /// instead of the sums
        #[arg(long)]
        dump_crystal: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Verify Demazure side == fermionic side for each given nu
    #[command(name = "verify-md")]
    VerifyMd {
        #[command(flatten)]
        ty: TypeArgs,
        /// Repeatable; one comparison per occurrence
        #[arg(long, required = true)]
        nu: Vec<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Verify one-dimensional sum == fermionic side for each given nu (type A)
    #[command(name = "verify-xm")]
    VerifyXm {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, required = true)]
        nu: Vec<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Irreducible classical character ch V(mu) as a weight-coefficient list
    Char {
        #[command(flatten)]
        ty: TypeArgs,
        /// Dominant weight in fundamental-weight coordinates, e.g. "1,0,2"
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reduced word and diagram automorphism for t_{w_0(w_r)}
    #[command(name = "reduced-word")]
    ReducedWord {
        #[command(flatten)]
        ty: TypeArgs,
        /// Classical node r in 1..=rank
        #[arg(long)]
        node: usize,
    },
}

fn parse_mu(s: &str, rank: usize) -> anyhow::Result<Vec<i64>> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().context("weight coordinate"))
        .collect::<anyhow::Result<_>>()?;
    if coords.len() != rank {
        return Err(anyhow!(
            "--mu has {} coordinates, expected rank {}",
            coords.len(),
            rank
        ));
    }
    Ok(coords)
}

/// Runs independent per-nu comparisons in a work pool, then assembles the
/// report in input order.
fn run_batch(
    rs: &RootSystemData,
    nus: &[String],
    budget: Option<u64>,
    f: impl Fn(&RootSystemData, &NuSequence, Option<u64>) -> krxm_core::Result<VerificationReport>
        + Sync,
) -> anyhow::Result<Vec<VerificationReport>> {
    let parsed: Vec<NuSequence> = nus
        .iter()
        .map(|s| NuSequence::parse(s).map_err(|e| anyhow!(e)))
        .collect::<anyhow::Result<_>>()?;
    parsed
        .par_iter()
        .map(|nu| f(rs, nu, budget).map_err(|e| anyhow!(e)))
        .collect::<Result<Vec<_>, _>>()
}

fn print_decomposition(
    dec: &krxm_core::groupring::ClassicalDecomposition,
    c: Option<krxm_core::Rat>,
    format: Format,
) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            let mut doc = serde_json::json!({ "decomposition": dec.to_json() });
            if let Some(c) = c {
                doc["C"] = serde_json::Value::String(c.to_string());
            }
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Csv => {
            println!("mu,poly");
            for (mu, poly) in &dec.coeffs {
                let wt = krxm_core::AffineWeight::from_classical(mu.clone());
                println!("\"{}\",\"{}\"", wt.render(), poly.render());
            }
        }
        Format::Text => {
            if let Some(c) = c {
                println!("C = {c}");
            }
            for (mu, poly) in &dec.coeffs {
                let wt = krxm_core::AffineWeight::from_classical(mu.clone());
                println!("{: <24} {}", wt.render(), poly.render());
            }
        }
    }
    Ok(())
}

fn main() {
    let code = match run() {
        Ok(all_true) => {
            if all_true {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    std::process::exit(code);
}

fn run() -> anyhow::Result<bool> {
    match Cli::parse().command {
        Command::Dside { ty, nu, out } => {
            let rs = ty.root_system()?;
            let nu = NuSequence::parse(&nu).map_err(|e| anyhow!(e))?;
            let (dec, c) = dside_normalized(&rs, &nu.sorted(), out.budget).map_err(|e| anyhow!(e))?;
            print_decomposition(&dec, Some(c), out.format()?)?;
            Ok(true)
        }
        Command::Mside { ty, nu, out } => {
            let rs = ty.root_system()?;
            let nu = NuSequence::parse(&nu).map_err(|e| anyhow!(e))?;
            let dec = krxm_core::fermionic::mside(&rs, &nu).map_err(|e| anyhow!(e))?;
            print_decomposition(&dec, None, out.format()?)?;
            Ok(true)
        }
        Command::Xside {
            ty,
            nu,
            dump_crystal,
            out,
        } => {
            let rs = ty.root_system()?;
            let nu = NuSequence::parse(&nu).map_err(|e| anyhow!(e))?;
            if dump_crystal {
                for &(r, l) in &nu.pairs {
                    let edges =
                        crystal_graph_edges(r, l as usize, rs.rank).map_err(|e| anyhow!(e))?;
                    match out.format()? {
                        Format::Json => {
                            let doc = serde_json::json!({
                                "r": r, "s": l,
                                "edges": edges.iter()
                                    .map(|(a, i, b)| serde_json::json!([a, i, b]))
                                    .collect::<Vec<_>>(),
                            });
                            println!("{}", serde_json::to_string_pretty(&doc)?);
                        }
                        _ => {
                            println!("# B^{{{r},{l}}} over A_{}", rs.rank);
                            for (a, i, b) in edges {
                                println!("{a} --{i}--> {b}");
                            }
                        }
                    }
                }
                return Ok(true);
            }
            let dec = one_dim_sum(&rs, &nu, out.budget).map_err(|e| anyhow!(e))?;
            print_decomposition(&dec, None, out.format()?)?;
            Ok(true)
        }
        Command::VerifyMd { ty, nu, out } => {
            let rs = ty.root_system()?;
            let reports = run_batch(&rs, &nu, out.budget, verify_md)?;
            print!("{}", emit_report(&reports, out.format()?, out.verbose));
            Ok(reports.iter().all(|r| r.verdict))
        }
        Command::VerifyXm { ty, nu, out } => {
            let rs = ty.root_system()?;
            let reports = run_batch(&rs, &nu, out.budget, verify_xm)?;
            print!("{}", emit_report(&reports, out.format()?, out.verbose));
            Ok(reports.iter().all(|r| r.verdict))
        }
        Command::Char { ty, mu, out } => {
            let rs = ty.root_system()?;
            let mu = parse_mu(&mu, rs.rank)?;
            let ch = classical_character(&rs, &mu).map_err(|e| anyhow!(e))?;
            match out.format()? {
                Format::Json => println!("{}", serde_json::to_string_pretty(&ch.to_json())?),
                Format::Csv => {
                    println!("weight,coeff");
                    for (w, c) in ch.terms() {
                        println!("\"{}\",{}", w.render(), c);
                    }
                }
                Format::Text => {
                    for (w, c) in ch.terms() {
                        println!("{: <24} {}", w.render(), c);
                    }
                }
            }
            Ok(true)
        }
        Command::ReducedWord { ty, node } => {
            let rs = ty.root_system()?;
            let t = kr_translation(&rs, node).map_err(|e| anyhow!(e))?;
            let (word, sigma) = decompose_reduced(&rs, &t).map_err(|e| anyhow!(e))?;
            println!(
                "t_{{w_0(w_{node})}} = s_{{{}}} * sigma, sigma: {:?}",
                word.iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                sigma.perm
            );
            Ok(true)
        }
    }
}
