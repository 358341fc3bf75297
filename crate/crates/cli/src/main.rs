//! `nholo`: command-line access to the nearly holomorphic forms library.

use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use nholo::brackets::{expand_product, rankin_cohen};
use nholo::classify::{classify_product, run_search, verify_remark, verify_theorem, SearchConfig};
use nholo::forms::{FormId, FormKind};
use nholo::hecke::{
    eigen_check, hecke_nearly, required_precision, DEFAULT_MIN_OVERLAP, DEFAULT_N_MAX,
};
use nholo::nearly::delta_iter;
use nholo::series::format_rational;
use nholo::{HolomorphicForm, NearlyHolomorphicForm, QExpansion};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "nholo",
    version,
    about = "Exact arithmetic for nearly holomorphic modular forms of level one"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Number of q-expansion coefficients to compute.
    #[arg(long, global = true, env = "NHOLO_PRECISION")]
    prec: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eisenstein series or normalized cusp eigenform: `form E 4`, `form D 16`.
    Form {
        #[arg(value_parser = ["E", "D", "Delta"])]
        kind: String,
        weight: u32,
    },
    /// Iterated Maass-Shimura operator applied to a form.
    Delta {
        form: FormId,
        #[arg(short, long, default_value_t = 1)]
        r: u32,
    },
    /// Hecke operator T_n applied to δ^r of a form.
    Hecke {
        form: FormId,
        #[arg(short, long)]
        n: u64,
        #[arg(short, long, default_value_t = 0)]
        r: u32,
    },
    /// Rankin-Cohen bracket [f, g]_j.
    Bracket {
        f: FormId,
        g: FormId,
        #[arg(short, long)]
        j: u32,
    },
    /// Expansion of δ^r(f)·δ^s(g) into δ-iterates of brackets.
    Expand {
        #[command(flatten)]
        product: Product,
        #[command(flatten)]
        hecke: HeckeBounds,
    },
    /// Hecke eigenform test for δ^r(f), or for the product δ^r(f)·δ^s(g).
    Check {
        #[arg(long)]
        f: FormId,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long, requires = "s")]
        g: Option<FormId>,
        #[arg(long, requires = "g")]
        s: Option<u32>,
        #[command(flatten)]
        hecke: HeckeBounds,
    },
    /// Classify every product within the bounds; JSON output is one line per case.
    Search(Bounds),
    /// Compare the census with the expected list of eigen products.
    VerifyTheorem {
        /// Use the default bounds (the other bound flags are ignored).
        #[arg(long)]
        default: bool,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Check 2δ(E_k)·E_k = δ(E_k²) and its eigen status for each k.
    VerifyRemark {
        #[arg(long, value_delimiter = ',', default_values_t = [4u32, 6, 8, 10, 12, 14])]
        k: Vec<u32>,
        #[command(flatten)]
        hecke: HeckeBounds,
    },
}

#[derive(Args)]
struct Product {
    #[arg(long)]
    f: FormId,
    #[arg(long, default_value_t = 0)]
    r: u32,
    #[arg(long)]
    g: FormId,
    #[arg(long, default_value_t = 0)]
    s: u32,
}

#[derive(Args, Clone, Copy)]
struct HeckeBounds {
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    n_max: u64,
    #[arg(long, default_value_t = DEFAULT_MIN_OVERLAP)]
    min_overlap: usize,
}

#[derive(Args)]
struct Bounds {
    #[arg(long, default_value_t = 26)]
    max_factor_weight: u32,
    #[arg(long, default_value_t = 30)]
    max_total_weight: u32,
    /// Bound on r + s.
    #[arg(long, default_value_t = 3)]
    max_delta_iters: u32,
    #[command(flatten)]
    hecke: HeckeBounds,
}

impl Bounds {
    fn config(&self, prec: Option<usize>) -> SearchConfig {
        SearchConfig {
            max_factor_weight: self.max_factor_weight,
            max_total_weight: self.max_total_weight,
            max_delta_iters: self.max_delta_iters,
            n_max: self.hecke.n_max,
            min_overlap: self.hecke.min_overlap,
            precision: prec,
        }
    }
}

fn series_text(s: &QExpansion) -> String {
    s.coeffs()
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(" ")
}

fn holomorphic_text(f: &HolomorphicForm) -> String {
    format!(
        "weight {}, precision {}{}\n{}",
        f.weight(),
        f.precision(),
        if f.is_cusp() { ", cuspidal" } else { "" },
        series_text(f.series())
    )
}

fn nearly_text(f: &NearlyHolomorphicForm) -> String {
    let mut out = format!("weight {}, precision {}", f.weight(), f.precision());
    if f.is_zero() {
        out.push_str("\n0");
    }
    for (i, c) in f.components().iter().enumerate() {
        out.push_str(&format!("\nY^{i}: {}", series_text(c)));
    }
    out
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(value)?)
}

fn run(cli: Cli) -> Result<bool> {
    let prec = cli
        .prec
        .unwrap_or_else(|| required_precision(DEFAULT_N_MAX, DEFAULT_MIN_OVERLAP));
    let out = match cli.command {
        Command::Form { kind, weight } => {
            let kind = if kind == "E" {
                FormKind::Eisenstein
            } else {
                FormKind::Cusp
            };
            let f = FormId { kind, weight }.build(prec)?;
            if cli.json {
                json(&f)?
            } else {
                holomorphic_text(&f)
            }
        }
        Command::Delta { form, r } => {
            let f = delta_iter(&form.build(prec)?, r);
            if cli.json {
                f.to_json()
            } else {
                nearly_text(&f)
            }
        }
        Command::Hecke { form, n, r } => {
            let f = hecke_nearly(n, &delta_iter(&form.build(prec)?, r))?;
            if cli.json {
                f.to_json()
            } else {
                nearly_text(&f)
            }
        }
        Command::Bracket { f, g, j } => {
            let b = rankin_cohen(&f.build(prec)?, &g.build(prec)?, j);
            if cli.json {
                json(&b)?
            } else {
                holomorphic_text(&b)
            }
        }
        Command::Expand { product: p, hecke } => {
            let x = expand_product(&p.f.build(prec)?, p.r, &p.g.build(prec)?, p.s);
            let report = x.report(hecke.n_max, hecke.min_overlap)?;
            if cli.json {
                json(&report)?
            } else {
                let mut out = format!("δ^{}({})·δ^{}({}) =", p.r, p.f, p.s, p.g);
                for t in &report.terms {
                    let note = if t.bracket_is_zero {
                        "bracket vanishes"
                    } else if t.term_is_eigen {
                        "eigen"
                    } else {
                        "not eigen"
                    };
                    out.push_str(&format!(
                        "\n  j={}: {} · δ^{}([{},{}]_{})  ({note})",
                        t.j,
                        t.alpha,
                        p.r + p.s - t.j,
                        p.f,
                        p.g,
                        t.j
                    ));
                }
                out
            }
        }
        Command::Check { f, r, g, s, hecke } => {
            let config = SearchConfig {
                n_max: hecke.n_max,
                min_overlap: hecke.min_overlap,
                precision: Some(prec),
                ..SearchConfig::default()
            };
            match (g, s) {
                (Some(g), Some(s)) => {
                    let case = classify_product(f, r, g, s, &config)?;
                    if cli.json {
                        json(&case)?
                    } else {
                        let tail = match &case.eigen_match {
                            Some(m) => format!(" = {m}"),
                            None => String::new(),
                        };
                        format!(
                            "{}: {}{tail}",
                            case.key(),
                            if case.is_eigen() {
                                "eigen"
                            } else {
                                "not eigen"
                            }
                        )
                    }
                }
                _ => {
                    config.validate()?;
                    let report = eigen_check(
                        &delta_iter(&f.build(prec)?, r),
                        hecke.n_max,
                        hecke.min_overlap,
                    )?;
                    if cli.json {
                        json(&report)?
                    } else {
                        let mut out = format!(
                            "δ^{r}({f}): {}",
                            if report.is_eigen {
                                "eigen"
                            } else {
                                "not eigen"
                            }
                        );
                        for (n, l) in &report.eigenvalues {
                            out.push_str(&format!("\n  λ_{n} = {}", format_rational(l)));
                        }
                        out
                    }
                }
            }
        }
        Command::Search(bounds) => {
            let census = run_search(&bounds.config(cli.prec))?;
            if cli.json {
                census.to_json_lines().trim_end().to_string()
            } else {
                let s = census.summary();
                let mut out = format!(
                    "{} cases at precision {}: {} eigen, {} not eigen",
                    s.total_cases, s.precision, s.eigen_cases, s.not_eigen_cases
                );
                for fam in &s.eigen_families {
                    out.push_str(&format!("\n  {fam}"));
                }
                out
            }
        }
        Command::VerifyTheorem { default, bounds } => {
            let config = if default {
                SearchConfig {
                    precision: cli.prec,
                    ..SearchConfig::default()
                }
            } else {
                bounds.config(cli.prec)
            };
            let (_, report) = verify_theorem(&config)?;
            let out = if cli.json {
                json(&report)?
            } else {
                let mut out = format!(
                    "{} eigen product families found",
                    report.summary.eigen_cases
                );
                for fam in &report.summary.eigen_families {
                    out.push_str(&format!("\n  {fam}"));
                }
                for k in &report.missing {
                    out.push_str(&format!("\nmissing: {k}"));
                }
                for k in &report.unexpected {
                    out.push_str(&format!("\nunexpected: {k}"));
                }
                out
            };
            println!("{out}");
            if !report.ok {
                eprintln!("error: census differs from the expected eigen products");
            }
            return Ok(report.ok);
        }
        Command::VerifyRemark { k, hecke } => {
            let config = SearchConfig {
                n_max: hecke.n_max,
                min_overlap: hecke.min_overlap,
                precision: cli.prec,
                ..SearchConfig::default()
            };
            let report = verify_remark(&k, &config)?;
            let out = if cli.json {
                json(&report)?
            } else {
                report
                    .entries
                    .iter()
                    .map(|e| {
                        format!(
                            "k={}: identity {}, {}",
                            e.k,
                            if e.identity_holds { "holds" } else { "fails" },
                            if e.is_eigen { "eigen" } else { "not eigen" }
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            println!("{out}");
            if !report.ok {
                eprintln!("error: remark check failed");
            }
            return Ok(report.ok);
        }
    };
    println!("{out}");
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
