//! Self-consistency suite run by `ellcy check`.
//!
//! Every generator is expanded one term past the requested window, and each
//! one has at least one check that compares it, coefficient by coefficient
//! over the whole window, against a formula that does not use it. A single
//! corrupted coefficient anywhere in the window therefore fails the suite.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use ellcy_core::invariants::{
    fiber_closed_from, multifiber_direct_from, multifiber_slice_from, section_closed_from,
    section_convolution_from, Family, GvTable, NoetherLefschetz, Route,
};
use ellcy_core::lattice::{
    e8_roots, euler_characteristic, hodge_consistency, pairing_matrix, pushforward, CurveClass,
    Gamma19Class, NLIndex,
};
use ellcy_core::modular::{self, E8Shells, YauZaslowTable};
use ellcy_core::{linalg, Exec, QSeries};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Delta,
    Eta12,
    E4,
    E6,
    E10,
    Theta,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Delta,
        Generator::Eta12,
        Generator::E4,
        Generator::E6,
        Generator::E10,
        Generator::Theta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Delta => "delta",
            Generator::Eta12 => "eta12",
            Generator::E4 => "e4",
            Generator::E6 => "e6",
            Generator::E10 => "e10",
            Generator::Theta => "theta",
        }
    }
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| {
                format!("unknown generator {s:?}; expected one of delta, eta12, e4, e6, e10, theta")
            })
    }
}

/// Adds 1 to the coefficient of `q^exponent` in one generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Injection {
    pub generator: Generator,
    pub exponent: Rational64,
}

impl FromStr for Injection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (g, e) = s
            .split_once(':')
            .ok_or_else(|| format!("expected GEN:EXP, got {s:?}"))?;
        let exponent = Rational64::from_str(e)
            .map_err(|_| format!("exponent {e:?} is not a rational number"))?;
        Ok(Injection {
            generator: g.parse()?,
            exponent,
        })
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.generator.name(), self.exponent)
    }
}

/// The modular inputs shared by all checks, each with `window + 1` terms.
pub struct Generators {
    window: usize,
    delta: QSeries,
    eta12: QSeries,
    e4: QSeries,
    e6: QSeries,
    e10: QSeries,
    theta: QSeries,
    shells: Arc<E8Shells>,
}

impl Generators {
    pub fn new(window: usize) -> Self {
        let terms = window + 1;
        let weight = |k| modular::eisenstein(k, terms).expect("supported weight");
        Generators {
            window,
            delta: modular::delta(terms),
            eta12: modular::eta_power(12, terms).expect("12 is even"),
            e4: weight(4),
            e6: weight(6),
            e10: weight(10),
            theta: modular::theta_e8(terms),
            shells: E8Shells::cached(terms),
        }
    }

    fn get_mut(&mut self, g: Generator) -> &mut QSeries {
        match g {
            Generator::Delta => &mut self.delta,
            Generator::Eta12 => &mut self.eta12,
            Generator::E4 => &mut self.e4,
            Generator::E6 => &mut self.e6,
            Generator::E10 => &mut self.e10,
            Generator::Theta => &mut self.theta,
        }
    }

    /// Applies `inj`; the exponent must be one of the first `window` terms.
    pub fn inject(&mut self, inj: Injection) -> Result<(), CliError> {
        let window = self.window as i64;
        let s = self.get_mut(inj.generator);
        let lead = s.valuation().expect("generators are nonzero");
        let k = inj.exponent - lead;
        if !k.is_integer()
            || k < Rational64::from_integer(0)
            || k >= Rational64::from_integer(window)
        {
            return Err(CliError::Usage(format!(
                "exponent {} is not among the {window} checked terms of {} (starting at q^{lead})",
                inj.exponent,
                inj.generator.name()
            )));
        }
        let units = inj.exponent * Rational64::from_integer(s.exp_den() as i64);
        let bump = QSeries::monomial(
            BigRational::from_integer(1.into()),
            s.exp_den(),
            units.to_integer(),
            s.prec(),
        );
        *s = s.add(&bump);
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

type Outcome = Result<(bool, String), CliError>;

fn agree(a: &QSeries, b: &QSeries) -> (bool, String) {
    match a.first_disagreement(b) {
        None => {
            let bound = a.prec_exponent().min(b.prec_exponent());
            (true, format!("agree below q^{bound}"))
        }
        Some(e) => (false, format!("first disagreement at q^{e}")),
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ring_laws(g: &Generators) -> Outcome {
    let (a, b, c) = (&g.e4, &g.e6, &g.delta);
    let comm = a.mul(b) == b.mul(a);
    let assoc = a.mul(b).mul(c) == a.mul(&b.mul(c));
    let dist = a.mul(&b.add(c)).eq_to_joint_prec(&a.mul(b).add(&a.mul(c)));
    let unit = a
        .mul(&a.invert()?)
        .eq_to_joint_prec(&QSeries::one(a.prec()));
    let root = c.sqrt()?;
    let sqrt = root.mul(&root) == *c;
    let ok = comm && assoc && dist && unit && sqrt;
    Ok((
        ok,
        format!("comm={comm} assoc={assoc} dist={dist} inverse={unit} sqrt={sqrt}"),
    ))
}

fn slice_partition(g: &Generators) -> Outcome {
    let inv = g.delta.invert()?;
    for s in [&g.e10, &inv] {
        for m in 1..=4u32 {
            let mut total = QSeries::zero(1, s.prec());
            for k in 0..m as i64 {
                let part = s.slice(m, k)?;
                if part.slice(m, k)? != part {
                    return Ok((false, format!("slice ({m},{k}) not idempotent")));
                }
                total = total.add(&part);
            }
            if total != *s {
                return Ok((false, format!("slices mod {m} do not sum to the series")));
            }
        }
    }
    Ok((true, "E10 and 1/Δ for m = 1..4".into()))
}

fn precision_honesty(g: &Generators) -> Outcome {
    for s in [&g.delta, &g.eta12, &g.e4, &g.e6, &g.e10, &g.theta] {
        if s.coeff_at(s.prec_exponent()).is_ok() {
            return Ok((
                false,
                format!(
                    "coefficient at the bound q^{} was returned",
                    s.prec_exponent()
                ),
            ));
        }
    }
    let (a, b) = (g.delta.invert()?, &g.e10);
    let p = a.mul(b);
    let expected = (a.prec() + b.offset()).min(b.prec() + a.offset());
    Ok((
        p.prec() == expected,
        format!("product bound {} (expected {expected})", p.prec()),
    ))
}

fn theta_is_e4(g: &Generators) -> Outcome {
    Ok(agree(&g.theta, &g.e4))
}

fn e10_sigma(g: &Generators) -> Outcome {
    if g.e10.coeff(0)? != int(1) {
        return Ok((false, "constant term is not 1".into()));
    }
    let top = g.e10.prec_exponent().to_integer();
    for n in 1..top {
        if g.e10.coeff(n)?
            != BigRational::from_integer(modular::sigma(9, n as u64) * BigInt::from(-264))
        {
            return Ok((false, format!("first disagreement at q^{n}")));
        }
    }
    Ok((true, format!("agree below q^{top}")))
}

fn e10_product(g: &Generators) -> Outcome {
    Ok(agree(&g.e10, &g.e4.mul(&g.e6)))
}

fn delta_eisenstein(g: &Generators) -> Outcome {
    let rhs = g.e4.pow(3).sub(&g.e6.pow(2));
    Ok(agree(&g.delta.scale_int(1728), &rhs))
}

fn eta12_square(g: &Generators) -> Outcome {
    Ok(agree(&g.eta12.mul(&g.eta12), &g.delta))
}

fn inputs(g: &Generators) -> Result<(YauZaslowTable, NoetherLefschetz), CliError> {
    let yz = YauZaslowTable::from_inv_delta(&g.delta.invert()?)?;
    Ok((yz, NoetherLefschetz::new(g.e10.clone())))
}

/// Largest `n` whose Noether-Lefschetz sum for `mF + nE` stays within the inputs.
fn direct_nmax(g: &Generators, m: i64) -> usize {
    let half = g.window as i64;
    ((half - 1 + m * m) / m).max(0) as usize
}

fn fiber_routes(g: &Generators) -> Outcome {
    let (yz, nl) = inputs(g)?;
    let direct = multifiber_direct_from(1, direct_nmax(g, 1), &yz, &nl, Exec::default())?;
    let closed = fiber_closed_from(&g.e10, &g.delta)?;
    Ok(agree(&direct.series(Family::MultiFiber(1))?, &closed))
}

fn section_routes(g: &Generators) -> Outcome {
    let closed = section_closed_from(&g.e4, &g.delta)?;
    let conv = section_convolution_from(&g.shells, &g.eta12.invert()?, g.window)?;
    Ok(agree(&closed, &conv))
}

fn multifiber_routes(g: &Generators, m: u32) -> Outcome {
    let (yz, nl) = inputs(g)?;
    let direct = multifiber_direct_from(m, direct_nmax(g, m as i64), &yz, &nl, Exec::default())?;
    let slice = multifiber_slice_from(m, &g.delta.invert()?, &g.e10)?.contract_power(m)?;
    let q = direct.series(Family::MultiFiber(m))?;
    if slice.prec_exponent() <= q.valuation().unwrap_or(q.prec_exponent()) {
        return Ok((false, "slice route carries no coefficients in range".into()));
    }
    Ok(agree(&q, &slice))
}

fn integrality(g: &Generators) -> Outcome {
    let (yz, nl) = inputs(g)?;
    let mut tables = vec![
        GvTable::from_series(
            &fiber_closed_from(&g.e10, &g.delta)?,
            Family::MultiFiber(1),
            Route::ClosedForm,
        )?,
        GvTable::from_series(
            &section_closed_from(&g.e4, &g.delta)?,
            Family::Section,
            Route::ClosedForm,
        )?,
    ];
    for m in 1..=3u32 {
        tables.push(multifiber_direct_from(
            m,
            direct_nmax(g, m as i64),
            &yz,
            &nl,
            Exec::default(),
        )?);
    }
    let count: usize = tables.iter().map(GvTable::len).sum();
    let ok = tables.iter().all(GvTable::all_integral)
        && yz.values().iter().all(|r| r.is_integer() && *r > int(0));
    Ok((ok, format!("{count} invariants and the Yau-Zaslow counts")))
}

fn pairing_determinant(_: &Generators) -> Outcome {
    let m: Vec<Vec<i64>> = pairing_matrix().iter().map(|r| r.to_vec()).collect();
    let d = linalg::det(&m);
    Ok((d == -1, format!("det = {d}")))
}

fn pushforward_kernel(_: &Generators) -> Outcome {
    let roots = e8_roots();
    let (section, fibre) = (Gamma19Class::section(), Gamma19Class::fibre());
    let orthogonal = roots
        .iter()
        .all(|r| r.dot(&section) == 0 && r.dot(&fibre) == 0);
    let killed = roots
        .iter()
        .all(|r| pushforward(r) == CurveClass::default());
    let vecs: Vec<Vec<i64>> = roots.iter().map(Gamma19Class::to_vec).collect();
    let rank = linalg::rank(&vecs);
    // {C'', E''} spans a non-degenerate plane, so its complement has rank 8.
    let plane = section.dot(&section) * fibre.dot(&fibre) - section.dot(&fibre).pow(2);
    let ok = orthogonal && killed && rank == 8 && plane != 0;
    Ok((
        ok,
        format!("E8 rank {rank}, plane det {plane}, orthogonal={orthogonal}, in kernel={killed}"),
    ))
}

fn nl_vanishing(g: &Generators) -> Outcome {
    let nl = NoetherLefschetz::new(g.e10.clone());
    let mut tested = 0;
    for d1 in -4..=4 {
        for d2 in 0..=2 {
            let d = vec![d1, d2];
            let Some(hmax) = nl.h_bound(&d)? else {
                continue;
            };
            for h in hmax + 1..hmax + 4 {
                let idx = NLIndex::new(h, d.clone());
                if nl.discriminant(&idx)? >= 0 || nl.number(&idx)? != int(0) {
                    return Ok((false, format!("NL({h}; {d1}, {d2}) does not vanish")));
                }
                tested += 1;
            }
        }
    }
    Ok((
        true,
        format!("{tested} indices past the discriminant bound"),
    ))
}

fn euler_hodge(_: &Generators) -> Outcome {
    let e = euler_characteristic(8)?;
    let h = hodge_consistency();
    let ok =
        (e.deg_k_delta, e.cusps, e.e_delta, e.e_x) == (1056, 192, -672, -480) && h.consistent();
    Ok((
        ok,
        format!("e(X) = {}, 2(h11 - h21) = {}", e.e_x, h.hodge_euler),
    ))
}

type Check = (&'static str, fn(&Generators) -> Outcome);

const CHECKS: [Check; 17] = [
    ("ring-laws", ring_laws),
    ("slice-partition", slice_partition),
    ("precision-honesty", precision_honesty),
    ("theta-e8=e4", theta_is_e4),
    ("e10=-264sigma9", e10_sigma),
    ("e10=e4*e6", e10_product),
    ("1728delta=e4^3-e6^2", delta_eisenstein),
    ("eta12^2=delta", eta12_square),
    ("fiber-closed=nl-sum", fiber_routes),
    ("section-closed=convolution", section_routes),
    ("multifiber-2-slice=nl-sum", |g| multifiber_routes(g, 2)),
    ("multifiber-3-slice=nl-sum", |g| multifiber_routes(g, 3)),
    ("integrality", integrality),
    ("pairing-determinant", pairing_determinant),
    ("pushforward-kernel", pushforward_kernel),
    ("nl-vanishing", nl_vanishing),
    ("euler-hodge", euler_hodge),
];

/// Runs every check over a window of `window` terms per generator.
pub fn run_suite(
    window: usize,
    injection: Option<Injection>,
) -> Result<Vec<CheckResult>, CliError> {
    let mut g = Generators::new(window);
    if let Some(inj) = injection {
        g.inject(inj)?;
    }
    Ok(CHECKS
        .iter()
        .map(|(name, check)| match check(&g) {
            Ok((passed, detail)) => CheckResult {
                name,
                passed,
                detail,
            },
            Err(e) => CheckResult {
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        })
        .collect())
}
