//! Command-line front end for `ellcy-core`.
//!
//! Exit codes: 0 on success, 1 on a usage error, 2 on a domain error or a
//! failed consistency check.

pub mod check;
pub mod document;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use ellcy_core::invariants::{
    f_fiber_closed, f_multifiber_direct, f_multifiber_slice, f_section_closed,
    f_section_convolution, gv_fiber_direct, nl_number, Family, GvTable, Route,
};
use ellcy_core::lattice::{
    euler_characteristic, hodge_consistency, nl_discriminant, LatticeGram, NLIndex, H11, H21,
};
use ellcy_core::modular;
use ellcy_core::QSeries;
use thiserror::Error;

use check::Injection;
use document::SeriesDocument;

/// Largest `Δ/2` the `nl` command expands E10 to.
pub const NL_MAX_HALF_DISCRIMINANT: i64 = 2000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ellcy_core::Error),
    #[error("invalid series document: {0}")]
    Document(String),
    #[error("{0} of {1} checks failed")]
    ChecksFailed(usize, usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ellcy",
    version,
    about = "Exact genus-0 invariants of an elliptic Calabi-Yau threefold"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the q-expansion of a named modular object.
    Series {
        name: SeriesName,
        /// Number of terms, counted from the leading exponent.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        prec: u32,
        /// Emit a JSON series document instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Tabulate genus-0 Gopakumar-Vafa invariants of one curve family.
    Gv {
        target: Target,
        /// Fibre multiplicity, for `multifiber` only (m >= 2).
        #[arg(long)]
        m: Option<u32>,
        /// Number of invariants, n = 0 .. prec-1.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        prec: u32,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Noether-Lefschetz number NL_{h; d1, d2} of the K3 fibration.
    #[command(allow_negative_numbers = true)]
    Nl {
        #[arg(long, value_parser = clap::value_parser!(i64).range(-1_000_000..=1_000_000))]
        h: i64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(-1_000_000..=1_000_000))]
        d1: i64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(-1_000_000..=1_000_000))]
        d2: i64,
    },
    /// Euler characteristic of the Weierstrass model as a function of L·L.
    Euler {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(i64).range(1..=1_000_000))]
        lsq: i64,
    },
    /// Run the self-consistency suite.
    Check {
        /// Terms per generator.
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(2..=200))]
        prec: u32,
        /// Add 1 to one generator coefficient, e.g. `e10:3` or `eta12:5/2`.
        #[arg(long, value_name = "GEN:EXP")]
        inject: Option<Injection>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    Delta,
    InvDelta,
    E4,
    E6,
    E10,
    ThetaE8,
    InvSqrtDelta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Fiber,
    Section,
    Multifiber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Direct,
}

impl SeriesName {
    fn label(self) -> &'static str {
        match self {
            SeriesName::Delta => "delta",
            SeriesName::InvDelta => "inv-delta",
            SeriesName::E4 => "e4",
            SeriesName::E6 => "e6",
            SeriesName::E10 => "e10",
            SeriesName::ThetaE8 => "theta-e8",
            SeriesName::InvSqrtDelta => "inv-sqrt-delta",
        }
    }

    pub fn expand(self, terms: usize) -> QSeries {
        let weight = |k| modular::eisenstein(k, terms).expect("supported weight");
        match self {
            SeriesName::Delta => modular::delta(terms),
            SeriesName::InvDelta => modular::inv_delta(terms),
            SeriesName::E4 => weight(4),
            SeriesName::E6 => weight(6),
            SeriesName::E10 => weight(10),
            SeriesName::ThetaE8 => modular::theta_e8(terms),
            SeriesName::InvSqrtDelta => modular::inv_sqrt_delta(terms),
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Series { name, prec, json } => cmd_series(*name, *prec as usize, *json, out),
        Command::Gv {
            target,
            m,
            prec,
            method,
        } => cmd_gv(*target, *m, *prec as usize, *method, out),
        Command::Nl { h, d1, d2 } => cmd_nl(*h, *d1, *d2, out, err),
        Command::Euler { lsq } => cmd_euler(*lsq, out),
        Command::Check { prec, inject } => cmd_check(*prec as usize, *inject, out),
    }
}

fn cmd_series(
    name: SeriesName,
    terms: usize,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let s = name.expand(terms);
    if json {
        writeln!(out, "{}", SeriesDocument::from_series(&s).to_json())?;
        return Ok(());
    }
    writeln!(out, "# {} ({terms} terms): {s}", name.label())?;
    writeln!(out, "# exponent coefficient")?;
    let step = s.exp_den() as usize;
    for (e, c) in s.terms().step_by(step) {
        writeln!(out, "{e} {c}")?;
    }
    Ok(())
}

fn gv_table(
    target: Target,
    m: Option<u32>,
    n: usize,
    method: Method,
) -> Result<(Family, Route, GvTable), CliError> {
    let family = match (target, m) {
        (Target::Multifiber, None) => {
            return Err(CliError::Usage(
                "multifiber requires --m M with M >= 2".into(),
            ))
        }
        (Target::Multifiber, Some(m)) if m < 2 => {
            return Err(CliError::Usage(format!("--m must be at least 2, got {m}")))
        }
        (Target::Multifiber, Some(m)) => Family::MultiFiber(m),
        (_, Some(_)) => {
            return Err(CliError::Usage(
                "--m applies only to the multifiber target".into(),
            ))
        }
        (Target::Fiber, None) => Family::MultiFiber(1),
        (Target::Section, None) => Family::Section,
    };
    let (route, table) = match (family, method) {
        (Family::MultiFiber(1), Method::Closed) => (
            Route::ClosedForm,
            GvTable::from_series(&f_fiber_closed(n), family, Route::ClosedForm)?,
        ),
        (Family::MultiFiber(1), Method::Direct) => (Route::NlSum, gv_fiber_direct(n - 1)),
        (Family::MultiFiber(m), Method::Closed) => {
            let q = f_multifiber_slice(m, n)?.contract_power(m)?;
            (
                Route::Slice,
                GvTable::from_series(&q, family, Route::Slice)?,
            )
        }
        (Family::MultiFiber(m), Method::Direct) => (Route::NlSum, f_multifiber_direct(m, n - 1)?),
        (Family::Section, Method::Closed) => (
            Route::ClosedForm,
            GvTable::from_series(&f_section_closed(n), family, Route::ClosedForm)?,
        ),
        (Family::Section, Method::Direct) => (
            Route::Convolution,
            GvTable::from_series(&f_section_convolution(n)?, family, Route::Convolution)?,
        ),
    };
    Ok((family, route, table))
}

fn route_label(route: Route) -> &'static str {
    match route {
        Route::ClosedForm => "closed form",
        Route::NlSum => "Noether-Lefschetz sum",
        Route::Convolution => "E8 theta convolution",
        Route::Slice => "congruence slices",
    }
}

fn family_label(family: Family) -> String {
    match family {
        Family::MultiFiber(1) => "F+nE".into(),
        Family::MultiFiber(m) => format!("{m}F+nE"),
        Family::Section => "C+nE".into(),
    }
}

fn cmd_gv(
    target: Target,
    m: Option<u32>,
    n: usize,
    method: Method,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (family, route, table) = gv_table(target, m, n, method)?;
    let values = table.family_values(family)?;
    if values.len() < n {
        return Err(CliError::Core(ellcy_core::Error::Incomplete(
            family.class(values.len() as i64).to_string(),
        )));
    }
    writeln!(out, "# {} via {}", family_label(family), route_label(route))?;
    writeln!(out, "# n class exponent invariant")?;
    for (i, v) in values.iter().take(n).enumerate() {
        let i = i as i64;
        writeln!(out, "{i} {} {} {v}", family.class(i), family.exponent(i))?;
    }
    Ok(())
}

fn cmd_nl(
    h: i64,
    d1: i64,
    d2: i64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let disc = nl_discriminant(
        &LatticeGram::k3_polarization(),
        &NLIndex::new(h, vec![d1, d2]),
    )?;
    if disc < 0 {
        writeln!(
            err,
            "note: discriminant negative ({disc}); NL number vanishes"
        )?;
    } else if disc / 2 > NL_MAX_HALF_DISCRIMINANT {
        return Err(CliError::Core(ellcy_core::Error::OutOfRange(format!(
            "discriminant {disc} exceeds the supported bound {}",
            2 * NL_MAX_HALF_DISCRIMINANT
        ))));
    }
    let terms = (disc / 2 + 1).max(1) as usize;
    writeln!(out, "{}", nl_number(h, d1, d2, terms)?)?;
    Ok(())
}

fn cmd_euler(lsq: i64, out: &mut dyn Write) -> Result<(), CliError> {
    let e = euler_characteristic(lsq)?;
    writeln!(out, "L.L = {lsq}")?;
    writeln!(out, "deg K_Delta = {}", e.deg_k_delta)?;
    writeln!(out, "cusps = {}", e.cusps)?;
    writeln!(out, "e(Delta) = {}", e.e_delta)?;
    writeln!(out, "e(X) = {}", e.e_x)?;
    if lsq == 8 {
        let h = hodge_consistency();
        let verdict = if h.consistent() {
            "consistent"
        } else {
            "INCONSISTENT"
        };
        writeln!(
            out,
            "hodge: 2(h11 - h21) = 2({H11} - {H21}) = {}, b2 = {}, b3 = {}: {verdict}",
            h.hodge_euler, h.b2, h.b3
        )?;
        if !h.consistent() {
            return Err(CliError::ChecksFailed(1, 1));
        }
    }
    Ok(())
}

fn cmd_check(
    window: usize,
    inject: Option<Injection>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if let Some(inj) = inject {
        writeln!(out, "# injected fault: +1 at {inj}")?;
    }
    let results = check::run_suite(window, inject)?;
    for r in &results {
        writeln!(out, "{r}")?;
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    writeln!(
        out,
        "summary: {} passed, {failed} failed",
        results.len() - failed
    )?;
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed, results.len()));
    }
    Ok(())
}
