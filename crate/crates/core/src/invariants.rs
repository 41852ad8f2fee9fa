//! Genus-0 Gopakumar-Vafa invariants of the threefold in the classes
//! `mF + nE` and `C + nE`, each generating function computed along two
//! independent routes:
//!
//! | family   | closed form                      | direct summation                      |
//! |----------|----------------------------------|---------------------------------------|
//! | `F + nE` | `-2 E10 / Δ`                     | `½ Σ_h r_{0,h} NL_{h; n-2, 1}`        |
//! | `C + nE` | `E4 / √Δ`                        | E8 shells convolved with `η^{-12}`    |
//! | `mF + nE`| `-2 Σ_ℓ (1/Δ)_{m,ℓ-1} (E10)_{m,1-ℓ}` | `½ Σ_h r_{0,h} NL_{h; n-2m, m}`   |
//!
//! Exponent conventions follow the displayed expansions: `F_F` carries
//! `q^{n-1}`, `F_C` carries `q^{n-1/2}` and `F_{mF}` carries `q^{n-m}`.
//!
//! Only genus 0 is computed. The all-genus generating function
//! `Σ_g Σ_β n_{g,β} Σ_k (1/k) (2 sin(kλ/2))^{2g-2} q^{kβ}` specializes at
//! genus 0 to the multiple-cover formula implemented by [`gv_to_gw_genus0`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lattice::{self, class_to_degrees, CurveClass, LatticeGram, NLIndex};
use crate::modular::{self, root_coords, E8Shells, YauZaslowTable};
use crate::series::QSeries;

/// Which computation produced an invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    ClosedForm,
    NlSum,
    Convolution,
    Slice,
}

/// A family of curve classes indexed by `n >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `mF + nE`; `MultiFiber(1)` is the fibre family `F + nE`.
    MultiFiber(u32),
    /// `C + nE`.
    Section,
}

impl Family {
    pub fn class(&self, n: i64) -> CurveClass {
        match *self {
            Family::MultiFiber(m) => CurveClass::new(0, n, m as i64),
            Family::Section => CurveClass::new(1, n, 0),
        }
    }

    /// Exponent denominator of the generating function.
    pub fn exp_den(&self) -> u32 {
        match self {
            Family::MultiFiber(_) => 1,
            Family::Section => 2,
        }
    }

    /// Position of `n_{β+nE}` in the generating function, in units of `1/exp_den`.
    fn position(&self, n: i64) -> i64 {
        match *self {
            Family::MultiFiber(m) => n - m as i64,
            Family::Section => 2 * n - 1,
        }
    }

    pub fn exponent(&self, n: i64) -> Rational64 {
        Rational64::new(self.position(n), self.exp_den() as i64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GvEntry {
    pub value: BigRational,
    pub route: Route,
    /// `(⟨L1, β⟩, ⟨L2, β⟩)`.
    pub degrees: (i64, i64),
    /// Set when the value was obtained from the resolved family `X̃` by the
    /// factor `n^{X̃} = 2 n^X`.
    pub resolution_halved: bool,
}

impl GvEntry {
    fn new(value: BigRational, route: Route, class: CurveClass) -> Self {
        GvEntry {
            value,
            route,
            degrees: class_to_degrees(class),
            resolution_halved: false,
        }
    }

    /// Entry for `X` from an invariant of the resolution `X̃`.
    fn from_resolution(tilde: BigRational, route: Route, class: CurveClass) -> Self {
        let mut e = GvEntry::new(tilde / BigInt::from(2), route, class);
        e.resolution_halved = true;
        e
    }
}

/// Genus-0 invariants keyed by curve class, complete for `n <= nmax` in
/// every family that was inserted.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GvTable {
    entries: BTreeMap<CurveClass, GvEntry>,
    nmax: i64,
}

impl GvTable {
    pub fn new(nmax: i64) -> Self {
        GvTable {
            entries: BTreeMap::new(),
            nmax,
        }
    }

    pub fn nmax(&self) -> i64 {
        self.nmax
    }

    pub fn insert(&mut self, class: CurveClass, entry: GvEntry) {
        self.entries.insert(class, entry);
    }

    pub fn get(&self, class: &CurveClass) -> Option<&GvEntry> {
        self.entries.get(class)
    }

    pub fn value(&self, class: &CurveClass) -> Option<&BigRational> {
        self.entries.get(class).map(|e| &e.value)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&CurveClass, &GvEntry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Merges another table; the merged bound is the smaller of the two.
    pub fn extend(&mut self, other: GvTable) {
        self.nmax = if self.entries.is_empty() {
            other.nmax
        } else {
            self.nmax.min(other.nmax)
        };
        self.entries.extend(other.entries);
    }

    pub fn all_integral(&self) -> bool {
        self.entries.values().all(|e| e.value.is_integer())
    }

    /// Values `n_{β+nE}` for `0 <= n <= nmax` in the given family.
    pub fn family_values(&self, family: Family) -> Result<Vec<BigRational>> {
        (0..=self.nmax)
            .map(|n| {
                let class = family.class(n);
                self.value(&class)
                    .cloned()
                    .ok_or_else(|| Error::Incomplete(class.to_string()))
            })
            .collect()
    }

    /// The generating function `F_β` for one family, exact for `n <= nmax`.
    pub fn series(&self, family: Family) -> Result<QSeries> {
        let values = self.family_values(family)?;
        let step = family.exp_den() as usize;
        let mut coeffs = vec![BigRational::zero(); values.len() * step];
        for (n, v) in values.into_iter().enumerate() {
            coeffs[n * step] = v;
        }
        Ok(QSeries::new(family.exp_den(), family.position(0), coeffs))
    }

    /// Reads a generating function back into a table, for every `n` whose
    /// exponent lies below the series' precision bound.
    pub fn from_series(series: &QSeries, family: Family, route: Route) -> Result<GvTable> {
        let mut table = GvTable::new(-1);
        let mut n = 0;
        loop {
            let e = family.exponent(n);
            if e >= series.prec_exponent() {
                break;
            }
            let class = family.class(n);
            table.insert(class, GvEntry::new(series.coeff_at(e)?, route, class));
            table.nmax = n;
            n += 1;
        }
        Ok(table)
    }
}

/// Noether-Lefschetz numbers of the resolved K3 family `X̃ → P^1`:
/// `NL_{h;d} = -4 [Δ(h;d)/2] E10`, vanishing when the discriminant is negative.
#[derive(Debug, Clone)]
pub struct NoetherLefschetz {
    lattice: LatticeGram,
    e10: QSeries,
}

impl NoetherLefschetz {
    /// Uses the polarization `Λ` of the K3 fibres.
    pub fn new(e10: QSeries) -> Self {
        Self::with_lattice(LatticeGram::k3_polarization(), e10)
    }

    pub fn with_lattice(lattice: LatticeGram, e10: QSeries) -> Self {
        NoetherLefschetz { lattice, e10 }
    }

    /// E10 expanded far enough to cover discriminants up to `2 * max_half`.
    pub fn to_half_discriminant(max_half: i64) -> Self {
        let terms = (max_half.max(0) + 1) as usize;
        Self::new(modular::eisenstein(10, terms).expect("weight 10 is supported"))
    }

    pub fn lattice(&self) -> &LatticeGram {
        &self.lattice
    }

    pub fn discriminant(&self, idx: &NLIndex) -> Result<i64> {
        lattice::nl_discriminant(&self.lattice, idx)
    }

    pub fn number(&self, idx: &NLIndex) -> Result<BigRational> {
        let disc = self.discriminant(idx)?;
        if disc < 0 {
            return Ok(BigRational::zero());
        }
        if disc % 2 != 0 {
            return Err(Error::Domain(format!(
                "odd discriminant {disc} for {idx:?}"
            )));
        }
        Ok(self.e10.coeff(disc / 2)? * BigInt::from(-4))
    }

    /// Largest `h` with non-negative discriminant for the degree vector `d`,
    /// or `None` if even `h = 0` is negative.
    pub fn h_bound(&self, d: &[i64]) -> Result<Option<i64>> {
        let d0 = self.discriminant(&NLIndex::new(0, d.to_vec()))?;
        let d1 = self.discriminant(&NLIndex::new(1, d.to_vec()))?;
        let slope = d1 - d0;
        if slope >= 0 {
            return Err(Error::Domain(
                "discriminant does not decrease in h; NL sum is unbounded".into(),
            ));
        }
        Ok((d0 >= 0).then(|| d0 / -slope))
    }
}

/// `NL_{h;d1,d2}` with E10 expanded to `terms` coefficients.
pub fn nl_number(h: i64, d1: i64, d2: i64, terms: usize) -> Result<BigRational> {
    let e10 = modular::eisenstein(10, terms)?;
    NoetherLefschetz::new(e10).number(&NLIndex::new(h, vec![d1, d2]))
}

/// `n_{mF+nE} = ½ Σ_h r_{0,h} NL_{h; n-2m, m}` for `0 <= n <= nmax`.
/// Each inner sum stops at the last `h` with non-negative discriminant.
pub fn multifiber_direct_from(
    m: u32,
    nmax: usize,
    yz: &YauZaslowTable,
    nl: &NoetherLefschetz,
    exec: Exec,
) -> Result<GvTable> {
    let family = Family::MultiFiber(m);
    let rows = exec.map_range(nmax + 1, |n| -> Result<(CurveClass, GvEntry)> {
        let class = family.class(n as i64);
        let (d1, d2) = class_to_degrees(class);
        let mut tilde = BigRational::zero();
        if let Some(hmax) = nl.h_bound(&[d1, d2])? {
            for h in 0..=hmax {
                let r = yz
                    .get(h as usize)
                    .ok_or_else(|| Error::Incomplete(format!("r_{{0,{h}}}")))?;
                let nl_h = nl.number(&NLIndex::new(h, vec![d1, d2]))?;
                tilde += r * nl_h;
            }
        }
        Ok((class, GvEntry::from_resolution(tilde, Route::NlSum, class)))
    });
    let mut table = GvTable::new(nmax as i64);
    for row in rows {
        let (class, entry) = row?;
        table.insert(class, entry);
    }
    Ok(table)
}

/// Largest `Δ/2` met by the direct sum for `mF + nE`, `n <= nmax`.
fn max_half_discriminant(m: u32, nmax: usize) -> i64 {
    let m = m as i64;
    (1 + nmax as i64 * m - m * m).max(0)
}

fn direct_inputs(m: u32, nmax: usize) -> (YauZaslowTable, NoetherLefschetz) {
    let half = max_half_discriminant(m, nmax);
    (
        modular::yau_zaslow(half as usize),
        NoetherLefschetz::to_half_discriminant(half),
    )
}

/// `n_{F+nE}` for `0 <= n <= nmax` by Noether-Lefschetz summation.
pub fn gv_fiber_direct(nmax: usize) -> GvTable {
    let (yz, nl) = direct_inputs(1, nmax);
    multifiber_direct_from(1, nmax, &yz, &nl, Exec::default())
        .expect("inputs cover the requested range")
}

/// `n_{mF+nE}` for `0 <= n <= nmax`, `m >= 2`, by Noether-Lefschetz summation.
pub fn f_multifiber_direct(m: u32, nmax: usize) -> Result<GvTable> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "multi-fibre family needs m >= 2, got {m}"
        )));
    }
    let (yz, nl) = direct_inputs(m, nmax);
    multifiber_direct_from(m, nmax, &yz, &nl, Exec::default())
}

/// `-2 E10 / Δ`.
pub fn fiber_closed_from(e10: &QSeries, delta: &QSeries) -> Result<QSeries> {
    Ok(e10.mul(&delta.invert()?).scale_int(-2))
}

/// `F_F(q) = -2 E10(q)/Δ(q)` with `terms` coefficients from `q^{-1}`.
pub fn f_fiber_closed(terms: usize) -> QSeries {
    let e10 = modular::eisenstein(10, terms).expect("weight 10 is supported");
    fiber_closed_from(&e10, &modular::delta(terms)).expect("Δ is invertible")
}

/// `E4 / √Δ`.
pub fn section_closed_from(e4: &QSeries, delta: &QSeries) -> Result<QSeries> {
    Ok(e4.mul(&delta.sqrt()?.invert()?))
}

/// `F_C(q) = E4(q)/√Δ(q)` with `terms` coefficients from `q^{-1/2}`.
pub fn f_section_closed(terms: usize) -> QSeries {
    let e4 = modular::eisenstein(4, terms).expect("weight 4 is supported");
    section_closed_from(&e4, &modular::delta(terms)).expect("Δ has a square root")
}

/// Section-class invariants of the rational elliptic surface,
/// `Σ_n n_{C''+nE''} q^{n-1/2} = η(q)^{-12}`.
pub fn bryan_leung(terms: usize) -> QSeries {
    modular::eta_power(12, terms)
        .and_then(|e| e.invert())
        .expect("η^12 is a unit")
}

/// `n_{C+nE} = Σ_{λ ∈ E8, C''+nE''+λ effective} n_{C''+(n+½λ·λ)E''}`.
///
/// Vectors are grouped by shell: every `λ` with `λ·λ = -2k` shifts the
/// rational-surface invariant by `k`, and effectivity is decided on a
/// representative of the shell.
pub fn section_convolution_from(
    shells: &E8Shells,
    bryan_leung: &QSeries,
    terms: usize,
) -> Result<QSeries> {
    if shells.len() < terms {
        return Err(Error::Domain(format!(
            "E8 shells enumerated to {} but {terms} terms requested",
            shells.len()
        )));
    }
    let reps = (0..terms)
        .map(|k| {
            shells
                .representative(k)
                .and_then(|y| root_coords(&y))
                .ok_or_else(|| Error::Domain(format!("E8 shell {k} has no lattice representative")))
        })
        .collect::<Result<Vec<_>>>()?;
    let bl = (0..terms as i64)
        .map(|n| bryan_leung.coeff_at(Rational64::new(2 * n - 1, 2)))
        .collect::<Result<Vec<_>>>()?;
    let mut coeffs = vec![BigRational::zero(); 2 * terms];
    for n in 0..terms {
        let mut acc = BigRational::zero();
        for (k, lambda) in reps.iter().enumerate() {
            if !lattice::is_effective(n as i64, lambda) {
                continue;
            }
            // Shell k shifts n down by -½λ·λ = k.
            acc += &bl[n - k] * BigInt::from(shells.counts()[k]);
        }
        coeffs[2 * n] = acc;
    }
    Ok(QSeries::new(2, -1, coeffs))
}

/// `F_C` by the E8 theta convolution, with `terms` coefficients.
pub fn f_section_convolution(terms: usize) -> Result<QSeries> {
    section_convolution_from(&E8Shells::cached(terms), &bryan_leung(terms), terms)
}

/// `-2 Σ_{ℓ=0}^{m-1} (1/Δ(u))_{m,ℓ-1} (E10(u))_{m,1-ℓ}`, a series in `u`
/// with `q = u^m`.
pub fn multifiber_slice_from(m: u32, inv_delta: &QSeries, e10: &QSeries) -> Result<QSeries> {
    if m == 0 {
        return Err(Error::Domain("slice modulus must be positive".into()));
    }
    let mut acc: Option<QSeries> = None;
    for l in 0..m as i64 {
        let term = inv_delta.slice(m, l - 1)?.mul(&e10.slice(m, 1 - l)?);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    Ok(acc.expect("m >= 1").scale_int(-2))
}

/// `F_{mF}` by congruence slicing, in the variable `u` (`q = u^m`), exact
/// for the first `terms` coefficients `n = 0..terms` of `Σ_n n_{mF+nE} q^{n-m}`.
pub fn f_multifiber_slice(m: u32, terms: usize) -> Result<QSeries> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "multi-fibre family needs m >= 2, got {m}"
        )));
    }
    // The last requested term sits at u^{m(terms-1-m)}.
    let u_prec = (m as i64 * (terms as i64 - 1 - m as i64) + 1).max(0);
    let u_terms = (u_prec + 1) as usize;
    let e10 = modular::eisenstein(10, u_terms)?;
    multifiber_slice_from(m, &modular::inv_delta(u_terms), &e10)
}

/// Genus-0 Gromov-Witten invariant `N_{0,β} = Σ_{kη=β} n_{0,η}/k³`.
pub fn gv_to_gw_genus0(table: &GvTable, beta: CurveClass) -> Result<BigRational> {
    if beta.is_zero() {
        return Err(Error::Domain(
            "multiple-cover formula needs a nonzero class".into(),
        ));
    }
    let g = beta.divisibility().abs();
    let mut acc = BigRational::zero();
    for k in (1..=g).filter(|k| g % k == 0) {
        let eta = CurveClass::new(beta.c / k, beta.e / k, beta.f / k);
        let n = table
            .value(&eta)
            .ok_or_else(|| Error::Incomplete(eta.to_string()))?;
        acc += n / BigInt::from(k).pow(3);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn nl_values() {
        assert_eq!(nl_number(0, 0, 0, 4).unwrap(), int(1056));
        assert_eq!(nl_number(1, -1, 1, 4).unwrap(), int(-4));
        // Δ(3; 0, 1) = 2 + 0 - 6 + 2 = -2
        assert_eq!(nl_number(3, 0, 1, 4).unwrap(), int(0));
        assert!(matches!(
            nl_number(0, 5, 1, 4),
            Err(Error::PrecisionExceeded { .. })
        ));
    }

    #[test]
    fn nl_rejects_odd_discriminant() {
        let lat = LatticeGram::new(vec![vec![1]]).unwrap();
        let nl = NoetherLefschetz::with_lattice(lat, modular::eisenstein(10, 5).unwrap());
        // -(1·(2h-2) - d²) = -(-2 - 1) = 3 at h = 0, d = 1.
        assert_eq!(nl.discriminant(&NLIndex::new(0, vec![1])), Ok(3));
        assert!(matches!(
            nl.number(&NLIndex::new(0, vec![1])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn fiber_direct_head() {
        let t = gv_fiber_direct(3);
        let v = t.family_values(Family::MultiFiber(1)).unwrap();
        assert_eq!(v, vec![int(-2), int(480), int(282888), int(17058560)]);
        assert!(t
            .entries()
            .all(|(_, e)| e.resolution_halved && e.route == Route::NlSum));
        assert_eq!(t.get(&CurveClass::F).unwrap().degrees, (-2, 1));
    }

    #[test]
    fn fiber_closed_head() {
        assert_eq!(
            f_fiber_closed(4),
            QSeries::from_ints(1, -1, &[-2, 480, 282888, 17058560])
        );
    }

    #[test]
    fn section_head() {
        let s = f_section_closed(4);
        assert_eq!(
            s,
            QSeries::from_ints(2, -1, &[1, 0, 252, 0, 5130, 0, 54760, 0])
        );
        assert_eq!(f_section_convolution(4).unwrap(), s);
    }

    #[test]
    fn multifiber_small_n_vanish() {
        let t = f_multifiber_direct(3, 6).unwrap();
        let v = t.family_values(Family::MultiFiber(3)).unwrap();
        assert!(v[..3].iter().all(Zero::is_zero));
        // n = m: h ∈ {0, 1}, -2(r0·[1]E10 + r1·[0]E10) = -2(-264 + 24)
        assert_eq!(v[3], int(480));
    }

    #[test]
    fn multifiber_rejects_small_m() {
        assert!(f_multifiber_direct(1, 4).is_err());
        assert!(f_multifiber_slice(1, 4).is_err());
    }

    #[test]
    fn multiple_cover() {
        let mut t = GvTable::new(1);
        let eta = CurveClass::new(0, 1, 1);
        t.insert(eta, GvEntry::new(int(5), Route::ClosedForm, eta));
        t.insert(2 * eta, GvEntry::new(int(7), Route::ClosedForm, 2 * eta));
        assert_eq!(gv_to_gw_genus0(&t, eta).unwrap(), int(5));
        assert_eq!(
            gv_to_gw_genus0(&t, 2 * eta).unwrap(),
            int(7) + BigRational::new(5.into(), 8.into())
        );
        assert!(matches!(
            gv_to_gw_genus0(&t, 3 * eta),
            Err(Error::Incomplete(_))
        ));
        assert!(gv_to_gw_genus0(&t, CurveClass::default()).is_err());
    }

    #[test]
    fn table_series_roundtrip() {
        let s = f_fiber_closed(6);
        let t = GvTable::from_series(&s, Family::MultiFiber(1), Route::ClosedForm).unwrap();
        assert_eq!(t.nmax(), 5);
        assert_eq!(t.series(Family::MultiFiber(1)).unwrap(), s);
    }
}
