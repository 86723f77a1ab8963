use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rho_lattice::cyclic_ring::{RingElement, RingModulus};
use rho_lattice::expr::parse_element;
use rho_lattice::json::{
    basis_to_json, catalog_to_json, descriptor_to_json, element_from_json, element_to_json,
    presentation_to_json, ring_to_json, suspension_to_json, tagged,
};
use rho_lattice::special::SpecialElementCatalog;
use rho_lattice::surgery::{
    cap_from_env, kernel_rho_bar, structure_set, LensParams, MethodChoice, StructureElement,
};
use rho_lattice::suspension::{
    elem_mu4m2, elem_nu, elem_omega, elem_sigma, elem_tau, suspend, torsion_basis,
};
use rho_lattice::verify::{run_verify, Suite, VerifyConfig};

#[derive(Parser)]
#[command(name = "rho-lattice", version, about = "Exact rho-invariant and structure-set computations for lens spaces")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression in x, f, f_k(k), g.
    Ring {
        expr: String,
        #[arg(long = "N")]
        n: usize,
        /// truncated, group_ring, binomial_plus:<l> or odd_truncated.
        #[arg(long, default_value = "truncated")]
        ideal: String,
    },
    /// The named elements f, f_k, f'_k, g, h_l, h, A_l.
    Special {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i64,
    },
    /// Free rank and torsion of the structure set.
    StructureSet {
        #[command(flatten)]
        lens: Lens,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Brute-force kernel of [rho~] on the 2-local normal invariants.
    Kernel {
        #[command(flatten)]
        lens: Lens,
    },
    /// Suspend an element to d+1.
    Suspend {
        #[command(flatten)]
        input: ElementInput,
    },
    /// The generators mu_4i, mu_(4i-2) of the torsion.
    TorsionBasis {
        #[command(flatten)]
        lens: Lens,
    },
    /// Coordinates of a torsion element in the torsion basis.
    Invariants {
        #[command(flatten)]
        input: ElementInput,
    },
    /// Transfer an element to the cover with N2 | N sheets.
    Transfer {
        #[command(flatten)]
        input: ElementInput,
        #[arg(long = "to")]
        to: usize,
    },
    /// Re-check the library's statements over parameter sweeps (JSON lines).
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "max-N")]
        max_n: Option<usize>,
        #[arg(long = "max-d", default_value_t = 8)]
        max_d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: all cores).
        #[arg(long, short = 'j')]
        workers: Option<usize>,
        /// Run a single statement id.
        #[arg(long)]
        only: Option<String>,
        /// Restrict to tasks with KEY=VALUE (repeatable).
        #[arg(long = "param", value_parser = parse_kv)]
        params: Vec<(String, i64)>,
    },
}

#[derive(Args, Clone, Copy)]
struct Lens {
    #[arg(long = "N")]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    k: i64,
}

impl Lens {
    fn params(&self) -> Result<LensParams> {
        Ok(LensParams::new(self.n, self.d, self.k)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Closed,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Named {
    Zero,
    Sigma,
    Omega,
    Tau,
    Nu,
    Mu,
}

#[derive(Args)]
struct ElementInput {
    /// Element JSON, `@path`, or `-` for stdin.
    #[arg(long, conflicts_with = "named")]
    element: Option<String>,
    /// A distinguished element instead of JSON (needs --N and --d).
    #[arg(long, value_enum)]
    named: Option<Named>,
    #[arg(long = "N", requires = "named")]
    n: Option<usize>,
    #[arg(long, requires = "named")]
    d: Option<usize>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    k: i64,
}

impl ElementInput {
    fn load(&self) -> Result<StructureElement> {
        if let Some(name) = self.named {
            let (n, d) = self.n.zip(self.d).ok_or_else(|| anyhow!("--named needs --N and --d"))?;
            let p = LensParams::new(n, d, self.k)?;
            return Ok(match name {
                Named::Zero => StructureElement::zero(&p),
                Named::Sigma => elem_sigma(&p)?,
                Named::Omega => elem_omega(&p)?,
                Named::Tau => elem_tau(&p)?,
                Named::Nu => elem_nu(&p)?,
                Named::Mu => elem_mu4m2(&p)?,
            });
        }
        let src = self.element.as_deref().ok_or_else(|| anyhow!("pass --element or --named"))?;
        let text = if src == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        } else if let Some(path) = src.strip_prefix('@') {
            std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
        } else {
            src.to_string()
        };
        let v: Value = serde_json::from_str(&text).context("element JSON")?;
        Ok(element_from_json(&v)?)
    }
}

fn parse_kv(s: &str) -> std::result::Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got {s:?}"))?;
    Ok((k.to_string(), v.parse().map_err(|_| format!("bad value in {s:?}"))?))
}

fn ring_tsv(a: &RingElement) -> String {
    a.coeffs().iter().enumerate().map(|(i, c)| format!("{i}\t{c}\n")).collect()
}

fn coords_tsv(x: &StructureElement) -> String {
    let t4: Vec<String> = x.coords.t4.iter().map(u64::to_string).collect();
    let t2: Vec<String> = x.coords.t4m2.iter().map(u64::to_string).collect();
    format!("{}\t{}\t{}\t{}", x.params, x.rho, t4.join(","), t2.join(","))
}

fn print(format: Format, v: Value, tsv: impl FnOnce() -> String) -> Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => writeln!(out, "{}", tagged(v))?,
        Format::Tsv => write!(out, "{}", tsv())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let fmt = cli.format;
    match cli.cmd {
        Cmd::Ring { expr, n, ideal } => {
            let m = RingModulus::from_kind_str(n, &ideal)?;
            let a = parse_element(&expr, m)?;
            print(fmt, ring_to_json(&a), || ring_tsv(&a))?;
        }
        Cmd::Special { n, k } => {
            let c = SpecialElementCatalog::new(n, k)?;
            print(fmt, catalog_to_json(&c), || {
                let mut s = format!("f\t{}\nf_k\t{}\nf_prime_k\t{}\ng\t{}\n", c.f, c.f_k, c.f_prime_k, c.g);
                for (l, h) in (1..).zip(&c.h_l) {
                    s += &format!("h_{l}\t{h}\n");
                }
                if let Some(h) = &c.h {
                    s += &format!("h\t{h}\n");
                }
                s
            })?;
        }
        Cmd::StructureSet { lens, method } => {
            let choice = match method {
                Method::Brute => MethodChoice::Brute,
                Method::Closed => MethodChoice::Closed,
                Method::Auto => MethodChoice::Auto,
            };
            let s = structure_set(&lens.params()?, choice, cap_from_env())?;
            print(fmt, descriptor_to_json(&s), || {
                format!("{}\t{}\t{}\n", s.params, s.free_rank, s.torsion)
            })?;
        }
        Cmd::Kernel { lens } => {
            let p = lens.params()?;
            let k = kernel_rho_bar(&p, cap_from_env())?;
            let v = json!({
                "params": serde_json::to_value(p)?,
                "torsion": presentation_to_json(&k.torsion),
                "t4_members": k.t4_members,
                "members": serde_json::to_value(&k.members)?,
            });
            print(fmt, v, || {
                k.members
                    .iter()
                    .map(|c| format!("{:?}\t{:?}\n", c.t4, c.t4m2))
                    .collect()
            })?;
        }
        Cmd::Suspend { input } => {
            let r = suspend(&input.load()?)?;
            print(fmt, suspension_to_json(&r), || {
                r.candidates.iter().map(|y| coords_tsv(y) + "\n").collect()
            })?;
        }
        Cmd::TorsionBasis { lens } => {
            let b = torsion_basis(&lens.params()?)?;
            print(fmt, basis_to_json(&b), || {
                let labels = basis_labels(b.params.c());
                b.elements()
                    .zip(&labels)
                    .zip(b.orders())
                    .map(|((x, l), o)| format!("{l}\t{o}\t{}\n", coords_tsv(x)))
                    .collect()
            })?;
        }
        Cmd::Invariants { input } => {
            let x = input.load()?;
            let b = torsion_basis(&x.params)?;
            let r = b.torsion_coordinates(&x)?;
            let labels = basis_labels(x.params.c());
            let v = json!({
                "params": serde_json::to_value(x.params)?,
                "labels": labels,
                "coordinates": r,
                "orders": b.orders(),
            });
            print(fmt, v, || labels.iter().zip(&r).map(|(l, c)| format!("{l}\t{c}\n")).collect())?;
        }
        Cmd::Transfer { input, to } => {
            let y = input.load()?.transfer(to)?;
            print(fmt, element_to_json(&y), || coords_tsv(&y) + "\n")?;
        }
        Cmd::Verify { suite, max_n, max_d, seed, workers, only, params } => {
            let cfg = VerifyConfig {
                suite: suite.parse::<Suite>()?,
                max_n,
                max_d,
                seed,
                workers,
                cap: cap_from_env(),
                only,
                params,
            };
            let start = Instant::now();
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            let mut io_err = None;
            let report = run_verify(&cfg, |r| {
                let line = match fmt {
                    Format::Json => r.to_json().to_string(),
                    Format::Tsv => r.to_tsv(),
                };
                if let Err(e) = writeln!(out, "{line}").and_then(|_| out.flush()) {
                    io_err.get_or_insert(e);
                }
            })?;
            if let Some(e) = io_err {
                return Err(e.into());
            }
            match fmt {
                Format::Json => writeln!(out, "{}", report.summary.to_json(report.suite))?,
                Format::Tsv => writeln!(
                    out,
                    "summary\t{}\t{}\t{}",
                    report.summary.total, report.summary.passed, report.summary.failed
                )?,
            }
            out.flush()?;
            eprintln!(
                "verify: {} checks, {} failed, {:.2}s",
                report.summary.total,
                report.summary.failed,
                start.elapsed().as_secs_f64()
            );
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn basis_labels(c: usize) -> Vec<String> {
    (1..=c)
        .map(|i| format!("r{}", 4 * i))
        .chain((1..=c).map(|i| format!("r{}", 4 * i - 2)))
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
