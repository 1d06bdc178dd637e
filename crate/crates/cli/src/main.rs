//! `nearadd`: command-line front end to the verifiers and constructors.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{FileConfig, Output, CONFIG_ENV};

#[derive(Parser, Debug)]
#[command(name = "nearadd", version, about = "Exotic additions on fixed scalar groups")]
struct Cli {
    /// PRNG seed for every sampled check.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Sample count for sampled checks.
    #[arg(long, global = true)]
    trials: Option<u64>,
    /// Largest admissible max(|num|, den) for rational inputs and samples.
    #[arg(long, global = true)]
    height_bound: Option<u64>,
    /// Norm ceiling for the K-sum of an exotic addition: integer, 10^k or "none".
    #[arg(long, global = true)]
    norm_ceiling: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// TOML file with defaults for the options above.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Signed prime factorization of a nonzero integer.
    FactorInt {
        #[arg(allow_hyphen_values = true)]
        n: String,
    },
    /// Signed prime-exponent vector of a nonzero rational p/q.
    FactorRat {
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Factorization of (a + bω)/den into canonical primes of ℤ[ω], ω = (1+√−19)/2.
    FactorQuad {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "1")]
        den: String,
    },
    /// σ(q) in ℚ(√−19).
    Sigma {
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// σ⁻¹((a + bω)/den).
    SigmaInv {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "1")]
        den: String,
    },
    /// α ⊞ β = σ⁻¹(σ(α) + σ(β)) on ℚ.
    ExoticAdd {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Applies a multiplicative endobijection of ℚ given by prime swaps and sign flips.
    Endoq {
        #[arg(allow_hyphen_values = true)]
        q: String,
        /// Prime transposition p,q (repeatable).
        #[arg(long = "swap", value_name = "P,Q")]
        swaps: Vec<String>,
        /// Prime whose image gets sign −1 (repeatable).
        #[arg(long = "eta", value_name = "P")]
        eta: Vec<u64>,
        /// Prime whose exponent is negated (repeatable).
        #[arg(long = "nu", value_name = "P")]
        nu: Vec<u64>,
    },
    /// Checks the near-field addition map axioms for ρ(α) = 1 ⊞ α.
    VerifyRho {
        /// f4, f8, f9, f25, f27, q (standard ℚ) or qx (ℚ with ⊞).
        #[arg(long)]
        carrier: String,
        /// native or a=K for finite carriers.
        #[arg(long, default_value = "native")]
        addition: String,
        /// Explicit ρ as a comma-separated table of element indices (finite carriers).
        #[arg(long)]
        table: Option<String>,
    },
    /// Characteristic map n ↦ sgn(n)ρ^|n|(0).
    CharMap {
        #[arg(long)]
        carrier: String,
        #[arg(long, default_value = "native")]
        addition: String,
        #[arg(long, default_value_t = 30)]
        bound: u32,
    },
    /// Distinct tables among α ⊞_a β = (α^a + β^a)^(1/a).
    EnumerateAdditions {
        #[arg(long)]
        field: String,
        /// Exhaustive axiom checks even on F25 and F27.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Power-map isomorphism between ⊞_a and ⊞_b.
    IsomCheck {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Right modnear-ring axioms on the additive maps of F9.
    ModnearCheck,
    /// Elementary near-vector space ⊞ = +_Ψ, α⊡β = Ψ⁻¹(φ(α)Ψ(β)).
    NvsVerify {
        #[arg(long, default_value = "f9")]
        field: String,
        /// id, pow:k or a comma-separated table.
        #[arg(long, default_value = "id")]
        psi: String,
        #[arg(long, default_value = "id")]
        phi: String,
        /// Element index λ; Ψ is replaced by λ·Ψ.
        #[arg(long)]
        psi_scale: Option<u16>,
    },
    /// The five quasi-multiplicative conditions on a bijection.
    QmcCheck {
        #[arg(long, default_value = "f9")]
        field: String,
        /// id, pow:k or a comma-separated table.
        #[arg(long)]
        phi: String,
        /// Element index λ; φ is replaced by φ·λ.
        #[arg(long)]
        scale: Option<u16>,
    },
    /// ε_α(r·s) = r^α·s (or r^α·s̄), with sampled multiplicativity and inverse checks.
    Epsilon {
        /// re,im
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        conjugate: bool,
        /// re,im point to evaluate.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let file = match cli.config.as_deref().map(FileConfig::load).transpose() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cfg = match config::resolve(file, cli.seed, cli.height_bound, cli.norm_ceiling.as_deref(), cli.trials, cli.json) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli.cmd, &cfg) {
        Ok(out) => {
            let text = match cfg.output {
                Output::Json => serde_json::to_string_pretty(&out.json).expect("serializable") + "\n",
                Output::Text => out.text,
            };
            // a closed pipe is not a verification failure
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                nearadd::Error::Integrity(_) => 1,
                _ => 2,
            })
        }
    }
}
