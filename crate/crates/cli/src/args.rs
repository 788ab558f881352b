use clap::{Args, Parser, Subcommand};

/// Exact q-Euler numbers, q-Bernstein polynomials and fermionic p-adic q-integrals.
#[derive(Debug, Parser)]
#[command(name = "qeuler", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a single exact value.
    #[command(subcommand)]
    Compute(ComputeKind),
    /// Verify identities over parameter grids.
    Verify(VerifyArgs),
    /// Track p-adic convergence of truncated sums to the closed form.
    Convergence(ConvergenceArgs),
    /// Tabulate q-Euler numbers over a range of n.
    Table(TableArgs),
}

#[derive(Debug, Subcommand)]
pub enum ComputeKind {
    /// xi_{n,q}
    EulerNumber {
        #[arg(long)]
        n: usize,
        /// Also evaluate at this rational q.
        #[arg(long = "q")]
        q0: Option<String>,
    },
    /// xi_{n,q}(x) at an integer x
    EulerPoly {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long = "q")]
        q0: Option<String>,
    },
    /// B_{k,n}(x, q) at an integer x
    Bernstein {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long = "q")]
        q0: Option<String>,
    },
    /// Classical Euler number E_n
    ClassicalEuler {
        #[arg(long)]
        n: usize,
    },
    /// Closed form of a fermionic p-adic q-integral
    IntegralClosedForm {
        #[command(flatten)]
        integrand: IntegrandArgs,
        #[arg(long = "q")]
        q0: Option<String>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct IntegrandArgs {
    /// Integrate [x + shift]_base^n.
    #[arg(long = "power-n", conflicts_with = "bernstein")]
    pub power_n: Option<usize>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub shift: i64,
    /// Base of the q-number: q or 1/q.
    #[arg(long, default_value = "q")]
    pub base: String,
    /// Use [1 - x + shift] instead of [x + shift].
    #[arg(long)]
    pub reflected: bool,
    /// Integrate a product of Bernstein polynomials, given as "k:n,k:n,...".
    #[arg(long)]
    pub bernstein: Option<String>,
    /// Measure base: q or 1/q.
    #[arg(long, default_value = "q")]
    pub measure: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity id, or "all".
    #[arg(long)]
    pub id: String,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub m_max: Option<usize>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub s_max: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<i64>,
    #[arg(long)]
    pub t9_n_max: Option<usize>,
    #[arg(long)]
    pub t9_k_max: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long = "q")]
    pub q0: String,
    #[arg(long = "max-N", alias = "max-n")]
    pub max_n: u32,
    #[command(flatten)]
    pub integrand: IntegrandArgs,
    /// Emit the table as CSV instead of JSON.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Inclusive range "a..b", or a single n.
    #[arg(long)]
    pub n: String,
    /// Specialize every entry at this rational q.
    #[arg(long = "q")]
    pub q0: Option<String>,
    #[arg(long)]
    pub csv: bool,
}
