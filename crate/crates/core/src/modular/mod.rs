//! q-expansions of the modular objects the generating functions are built
//! from: powers of eta, the discriminant, Eisenstein series of weight 4, 6
//! and 10, the E8 theta series and the K3 genus-0 (Yau-Zaslow) counts.
//!
//! Every generator takes `terms`, the number of integer-spaced terms to keep
//! starting at the series' leading exponent.

mod theta;

pub use theta::{root_coords, theta_e8, theta_e8_with, E8Shells, E8_SIMPLE_ROOTS_DOUBLED};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::QSeries;

/// Number of terms used when a caller does not ask for a specific count.
pub const DEFAULT_TERMS: usize = 32;

/// `σ_k(n) = Σ_{d | n} d^k`, by explicit divisor enumeration.
pub fn sigma(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma is defined for n >= 1");
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    acc
}

/// `η(q)^e = q^{e/24} ∏_{n≥1} (1 - q^n)^e` for positive even `e`.
///
/// The product is expanded with the logarithmic-derivative recurrence
/// `n p_n = -e Σ_{k=1}^{n} σ_1(k) p_{n-k}`, which stays in exact integers.
/// The result uses `exp_den = 24 / gcd(e, 24)`.
pub fn eta_power(e: u32, terms: usize) -> Result<QSeries> {
    if e == 0 || !e.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "eta power must be a positive even integer, got {e}"
        )));
    }
    let g = e.gcd(&24);
    let exp_den = 24 / g;
    let offset = (e / g) as i64;
    let sigma1: Vec<BigInt> = (1..terms as u64).map(|k| sigma(1, k)).collect();
    let e_big = BigInt::from(e);
    let mut p: Vec<BigInt> = Vec::with_capacity(terms);
    if terms > 0 {
        p.push(BigInt::one());
    }
    for n in 1..terms {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            acc += &sigma1[k - 1] * &p[n - k];
        }
        let (quot, rem) = (-&e_big * acc).div_rem(&BigInt::from(n));
        debug_assert!(rem.is_zero());
        p.push(quot);
    }
    let step = exp_den as usize;
    let mut coeffs = vec![BigRational::zero(); terms * step];
    for (i, c) in p.into_iter().enumerate() {
        coeffs[i * step] = BigRational::from_integer(c);
    }
    Ok(QSeries::new(exp_den, offset, coeffs))
}

/// `Δ(q) = η(q)^24`.
pub fn delta(terms: usize) -> QSeries {
    eta_power(24, terms).expect("24 is even")
}

/// `1/Δ(q)`, starting at `q^{-1}`.
pub fn inv_delta(terms: usize) -> QSeries {
    delta(terms).invert().expect("Δ has leading coefficient 1")
}

/// `1/√Δ(q)`, starting at `q^{-1/2}`, via the series square root of Δ.
pub fn inv_sqrt_delta(terms: usize) -> QSeries {
    delta(terms)
        .sqrt()
        .and_then(|s| s.invert())
        .expect("Δ has leading coefficient 1")
}

/// Eisenstein series `E_4 = 1 + 240 Σ σ_3(n) q^n`, `E_6 = 1 - 504 Σ σ_5(n) q^n`,
/// and `E_10 = E_4 · E_6`.
pub fn eisenstein(k: u32, terms: usize) -> Result<QSeries> {
    let divisor_series = |scale: i64, power: u32| {
        let coeffs = (0..terms as u64)
            .map(|n| {
                if n == 0 {
                    BigRational::one()
                } else {
                    BigRational::from_integer(sigma(power, n) * scale)
                }
            })
            .collect();
        QSeries::new(1, 0, coeffs)
    };
    match k {
        4 => Ok(divisor_series(240, 3)),
        6 => Ok(divisor_series(-504, 5)),
        10 => Ok(eisenstein(4, terms)?.mul(&eisenstein(6, terms)?)),
        _ => Err(Error::Domain(format!(
            "unsupported Eisenstein weight {k}; expected 4, 6 or 10"
        ))),
    }
}

/// Reduced genus-0 invariants `r_{0,h}` of K3 surfaces, read off from
/// `Σ_h r_{0,h} q^{h-1} = 1/Δ(q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct YauZaslowTable {
    r: Vec<BigRational>,
}

impl YauZaslowTable {
    /// Reads `r_{0,h}` for `h < prec(inv_delta) + 1` out of a `1/Δ` expansion.
    pub fn from_inv_delta(inv_delta: &QSeries) -> Result<Self> {
        let hmax = inv_delta.prec_exponent().ceil().to_integer();
        if hmax < 0 {
            return Err(Error::Domain(
                "1/Δ expansion carries no coefficients".into(),
            ));
        }
        let r = (0..=hmax)
            .map(|h| inv_delta.coeff(h - 1))
            .collect::<Result<_>>()?;
        Ok(YauZaslowTable { r })
    }

    pub fn hmax(&self) -> usize {
        self.r.len() - 1
    }

    pub fn get(&self, h: usize) -> Option<&BigRational> {
        self.r.get(h)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.r
    }
}

/// `r_{0,h}` for `0 <= h <= hmax`.
pub fn yau_zaslow(hmax: usize) -> YauZaslowTable {
    YauZaslowTable::from_inv_delta(&inv_delta(hmax + 1)).expect("1/Δ covers the requested range")
}
