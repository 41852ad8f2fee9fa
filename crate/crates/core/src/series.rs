//! Truncated Laurent/Puiseux series in one variable with exact rational
//! coefficients.
//!
//! A [`QSeries`] stores the coefficients of `q^{(offset + i)/exp_den}` for
//! `offset <= offset + i < prec`. Everything at or beyond `q^{prec/exp_den}`
//! is unknown, and every operation propagates that bound pessimistically.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Products shorter than this stay on the calling thread.
const PAR_MUL_MIN_LEN: usize = 48;

#[derive(Clone, Debug)]
pub struct QSeries {
    exp_den: u32,
    offset: i64,
    prec: i64,
    coeffs: Vec<BigRational>,
}

impl QSeries {
    /// Builds a series from coefficients starting at `q^{offset/exp_den}`.
    /// The precision bound is the first exponent past the last coefficient.
    pub fn new(exp_den: u32, offset: i64, coeffs: Vec<BigRational>) -> Self {
        assert!(exp_den >= 1, "exp_den must be positive");
        let prec = offset + coeffs.len() as i64;
        Self::from_parts(exp_den, offset, prec, coeffs)
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_ints(exp_den: u32, offset: i64, coeffs: &[i64]) -> Self {
        Self::new(
            exp_den,
            offset,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// The zero series, exact below `q^{prec/exp_den}`.
    pub fn zero(exp_den: u32, prec: i64) -> Self {
        Self::from_parts(exp_den, prec, prec, Vec::new())
    }

    /// The constant `c`, exact for integer exponents below `prec`.
    pub fn constant(c: BigRational, prec: i64) -> Self {
        if prec <= 0 {
            return Self::zero(1, prec);
        }
        let mut coeffs = vec![BigRational::zero(); prec as usize];
        coeffs[0] = c;
        Self::new(1, 0, coeffs)
    }

    pub fn one(prec: i64) -> Self {
        Self::constant(BigRational::one(), prec)
    }

    /// `c * q^{k/exp_den}`, exact below `q^{prec/exp_den}`.
    pub fn monomial(c: BigRational, exp_den: u32, k: i64, prec: i64) -> Self {
        if k >= prec {
            return Self::zero(exp_den, prec);
        }
        let mut coeffs = vec![BigRational::zero(); (prec - k) as usize];
        coeffs[0] = c;
        Self::from_parts(exp_den, k, prec, coeffs)
    }

    fn from_parts(exp_den: u32, offset: i64, prec: i64, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(prec - offset, coeffs.len() as i64);
        let mut s = QSeries {
            exp_den,
            offset,
            prec,
            coeffs,
        };
        s.canonicalize();
        s
    }

    /// Strips known-zero leading coefficients so `coeffs[0]` is nonzero.
    fn canonicalize(&mut self) {
        let lead = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i64;
        }
    }

    pub fn exp_den(&self) -> u32 {
        self.exp_den
    }

    /// Lowest stored exponent, in units of `1/exp_den`.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Precision bound, in units of `1/exp_den`.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first nonzero term, or `None` for the zero series.
    pub fn valuation(&self) -> Option<Rational64> {
        (!self.is_zero()).then(|| self.exponent_of(self.offset))
    }

    /// The exponent below which every coefficient is known.
    pub fn prec_exponent(&self) -> Rational64 {
        self.exponent_of(self.prec)
    }

    fn exponent_of(&self, k: i64) -> Rational64 {
        Rational64::new(k, self.exp_den as i64)
    }

    /// `(exponent, coefficient)` pairs for every stored position, zeros included.
    pub fn terms(&self) -> impl Iterator<Item = (Rational64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.exponent_of(self.offset + i as i64), c))
    }

    /// Like [`QSeries::terms`] but skipping zero coefficients.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (Rational64, &BigRational)> + '_ {
        self.terms().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficient at position `k` (units of `1/exp_den`); zero below the offset.
    fn at(&self, k: i64) -> BigRational {
        debug_assert!(k < self.prec);
        if k < self.offset {
            BigRational::zero()
        } else {
            self.coeffs[(k - self.offset) as usize].clone()
        }
    }

    /// The exact coefficient of `q^e`.
    ///
    /// Fails if `e` is not on this series' exponent grid, or if it lies at or
    /// beyond the precision bound. Never returns a fabricated zero for an
    /// unknown coefficient.
    pub fn coeff_at(&self, e: Rational64) -> Result<BigRational> {
        let d = self.exp_den as i64;
        let scaled = e * d;
        if !scaled.is_integer() {
            return Err(Error::ExponentNotRepresentable {
                exponent: e,
                exp_den: self.exp_den,
            });
        }
        let k = scaled.to_integer();
        if k >= self.prec {
            return Err(Error::PrecisionExceeded {
                exponent: e,
                bound: self.prec_exponent(),
            });
        }
        Ok(self.at(k))
    }

    /// Shorthand for [`QSeries::coeff_at`] at an integer exponent.
    pub fn coeff(&self, n: i64) -> Result<BigRational> {
        self.coeff_at(Rational64::from_integer(n))
    }

    /// Re-expresses the series over exponent denominator `exp_den * factor`.
    pub fn rescaled(&self, factor: u32) -> QSeries {
        assert!(factor >= 1);
        if factor == 1 {
            return self.clone();
        }
        let f = factor as i64;
        let mut coeffs = vec![BigRational::zero(); ((self.prec - self.offset) * f) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * factor as usize] = c.clone();
        }
        Self::from_parts(
            self.exp_den * factor,
            self.offset * f,
            self.prec * f,
            coeffs,
        )
    }

    fn reconcile(&self, other: &QSeries) -> (QSeries, QSeries) {
        let l = self.exp_den.lcm(&other.exp_den);
        (
            self.rescaled(l / self.exp_den),
            other.rescaled(l / other.exp_den),
        )
    }

    /// Drops everything at or beyond `q^{prec/exp_den}`. Never raises precision.
    pub fn truncated(&self, prec: i64) -> QSeries {
        let prec = prec.min(self.prec);
        if prec <= self.offset {
            return QSeries::zero(self.exp_den, prec);
        }
        let coeffs = self.coeffs[..(prec - self.offset) as usize].to_vec();
        Self::from_parts(self.exp_den, self.offset, prec, coeffs)
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let (a, b) = self.reconcile(other);
        let offset = a.offset.min(b.offset);
        let prec = a.prec.min(b.prec);
        let coeffs = (offset..prec).map(|k| a.at(k) + b.at(k)).collect();
        Self::from_parts(a.exp_den, offset, prec, coeffs)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &BigRational) -> QSeries {
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        Self::from_parts(self.exp_den, self.offset, self.prec, coeffs)
    }

    pub fn scale_int(&self, c: i64) -> QSeries {
        self.scale(&BigRational::from_integer(c.into()))
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        self.mul_with(other, Exec::default())
    }

    pub fn mul_with(&self, other: &QSeries, exec: Exec) -> QSeries {
        let (a, b) = self.reconcile(other);
        let offset = a.offset + b.offset;
        // Terms of a at or past a.prec meet b's lowest term at a.prec + b.offset.
        let prec = (a.prec + b.offset).min(b.prec + a.offset);
        let len = a.coeffs.len().min(b.coeffs.len());
        let coeffs = exec.map_range_min(len, PAR_MUL_MIN_LEN, |i| {
            let mut acc = BigRational::zero();
            for j in 0..=i {
                let (x, y) = (&a.coeffs[j], &b.coeffs[i - j]);
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
            acc
        });
        Self::from_parts(a.exp_den, offset, prec, coeffs)
    }

    /// `self^e`; `pow(0)` is 1 to the relative precision of `self`.
    pub fn pow(&self, e: u32) -> QSeries {
        if e == 0 {
            return QSeries::one(self.prec - self.offset);
        }
        (1..e).fold(self.clone(), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse, exact to the relative precision of `self`.
    pub fn invert(&self) -> Result<QSeries> {
        let a = &self.coeffs;
        if a.is_empty() {
            return Err(Error::NonInvertible);
        }
        let r = a.len();
        let inv_lead = a[0].recip();
        let mut b: Vec<BigRational> = Vec::with_capacity(r);
        b.push(inv_lead.clone());
        for n in 1..r {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !a[k].is_zero() && !b[n - k].is_zero() {
                    acc += &a[k] * &b[n - k];
                }
            }
            b.push(-acc * &inv_lead);
        }
        Ok(Self::from_parts(
            self.exp_den,
            -self.offset,
            -self.offset + r as i64,
            b,
        ))
    }

    /// Square root with positive leading coefficient.
    ///
    /// An odd leading exponent doubles `exp_den` so the root stays on the
    /// grid; e.g. `sqrt(q + ...)` is `q^{1/2}(...)` with `exp_den = 2`.
    pub fn sqrt(&self) -> Result<QSeries> {
        if self.is_zero() {
            let s = if self.prec % 2 != 0 {
                self.rescaled(2)
            } else {
                self.clone()
            };
            return Ok(QSeries::zero(s.exp_den, s.prec / 2));
        }
        if self.offset % 2 != 0 {
            return self.rescaled(2).sqrt();
        }
        let a = &self.coeffs;
        let root = rational_sqrt(&a[0]).ok_or_else(|| Error::NonSquareLeading(a[0].to_string()))?;
        let r = a.len();
        let two_root = &root * BigRational::from_integer(2.into());
        let mut g: Vec<BigRational> = Vec::with_capacity(r);
        g.push(root);
        for n in 1..r {
            let mut acc = a[n].clone();
            for i in 1..n {
                if !g[i].is_zero() && !g[n - i].is_zero() {
                    acc -= &g[i] * &g[n - i];
                }
            }
            g.push(acc / &two_root);
        }
        let offset = self.offset / 2;
        Ok(Self::from_parts(self.exp_den, offset, offset + r as i64, g))
    }

    /// The sub-series of terms whose exponent is congruent to `k` mod `m`.
    /// `k` is reduced mod `m`, so `slice(m, -1) == slice(m, m - 1)`.
    pub fn slice(&self, m: u32, k: i64) -> Result<QSeries> {
        if self.exp_den != 1 {
            return Err(Error::FractionalExponents(self.exp_den));
        }
        if m == 0 {
            return Err(Error::Domain("slice modulus must be positive".into()));
        }
        let m = m as i64;
        let k = k.rem_euclid(m);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if (self.offset + i as i64).rem_euclid(m) == k {
                    c.clone()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        Ok(Self::from_parts(1, self.offset, self.prec, coeffs))
    }

    /// Substitutes `q = u^m`: every exponent is multiplied by `m`.
    pub fn substitute_power(&self, m: u32) -> QSeries {
        assert!(m >= 1, "substitute_power needs a positive power");
        let f = m as i64;
        let mut coeffs = vec![BigRational::zero(); ((self.prec - self.offset) * f) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m as usize] = c.clone();
        }
        Self::from_parts(self.exp_den, self.offset * f, self.prec * f, coeffs)
    }

    /// Inverse of [`QSeries::substitute_power`]: reads a series in `u` whose
    /// exponents are all multiples of `m` as a series in `q = u^m`.
    pub fn contract_power(&self, m: u32) -> Result<QSeries> {
        if m == 0 {
            return Err(Error::Domain(
                "contract_power needs a positive power".into(),
            ));
        }
        let f = m as i64;
        if let Some((e, _)) = self.nonzero_terms().find(|(e, _)| {
            !(e * self.exp_den as i64)
                .to_integer()
                .rem_euclid(f)
                .is_zero()
        }) {
            return Err(Error::Domain(format!(
                "term q^{} is not a power of q^{m}",
                fmt_exponent(e)
            )));
        }
        let offset = Integer::div_ceil(&self.offset, &f);
        let prec = Integer::div_ceil(&self.prec, &f).max(offset);
        let coeffs = (offset..prec).map(|k| self.at(k * f)).collect();
        Ok(Self::from_parts(self.exp_den, offset, prec, coeffs))
    }

    /// True when both series agree at every exponent below the smaller of
    /// their two precision bounds.
    pub fn eq_to_joint_prec(&self, other: &QSeries) -> bool {
        self.first_disagreement(other).is_none()
    }

    /// The lowest exponent (below the joint precision) where the two series
    /// differ, if any.
    pub fn first_disagreement(&self, other: &QSeries) -> Option<Rational64> {
        let (a, b) = self.reconcile(other);
        let prec = a.prec.min(b.prec);
        let start = a.offset.min(b.offset);
        (start..prec)
            .find(|&k| a.at(k) != b.at(k))
            .map(|k| a.exponent_of(k))
    }
}

/// Positive square root of a rational, if it is a perfect square.
fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = int_sqrt(x.numer())?;
    let d = int_sqrt(x.denom())?;
    Some(BigRational::new(n, d))
}

fn int_sqrt(x: &BigInt) -> Option<BigInt> {
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

/// Mathematical equality: same precision bound and same coefficients once
/// both sides are expressed over a common exponent denominator.
impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.reconcile(other);
        a.offset == b.offset && a.prec == b.prec && a.coeffs == b.coeffs
    }
}

impl Eq for QSeries {}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: Self) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: Self) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: Self) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

pub(crate) fn fmt_exponent(e: Rational64) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.nonzero_terms() {
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_coeff = !mag.is_one() || e.is_zero();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if !e.is_zero() {
                if e.is_one() {
                    write!(f, "q")?;
                } else if e.is_integer() {
                    write!(f, "q^{}", e.to_integer())?;
                } else {
                    write!(f, "q^({})", fmt_exponent(e))?;
                }
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        let bound = self.prec_exponent();
        if bound.is_integer() {
            write!(f, "O(q^{})", bound.to_integer())
        } else {
            write!(f, "O(q^({}))", fmt_exponent(bound))
        }
    }
}

/// Converts an integer-valued rational to `i64` when it fits.
pub fn to_i64(c: &BigRational) -> Option<i64> {
    c.is_integer().then(|| c.to_integer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(exp_den: u32, offset: i64, c: &[i64]) -> QSeries {
        QSeries::from_ints(exp_den, offset, c)
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn additive_cancellation() {
        let f = s(1, -1, &[1, 24]);
        let g = s(1, 0, &[-24]);
        assert_eq!(f.add(&g), s(1, -1, &[1, 0]));
    }

    #[test]
    fn add_zero_is_identity() {
        let f = s(1, -1, &[1, 24, 324]);
        assert_eq!(f.add(&QSeries::zero(1, 10)), f);
    }

    #[test]
    fn add_coefficientwise() {
        assert_eq!(
            s(1, 0, &[1, 240]).add(&s(1, 0, &[1, -264])),
            s(1, 0, &[2, -24])
        );
    }

    #[test]
    fn add_keeps_lower_precision() {
        let f = s(1, 0, &[1, 2, 3, 4]);
        let g = s(1, 0, &[1, 1]);
        assert_eq!(f.add(&g).prec(), 2);
    }

    #[test]
    fn product_from_main_theorem() {
        let inv_delta = s(1, -1, &[1, 24, 324, 3200]);
        let e10 = s(1, 0, &[1, -264, -135432]);
        let p = inv_delta.mul(&e10);
        assert_eq!(p, s(1, -1, &[1, -240, -141444]));
        assert_eq!(p.scale_int(-2), s(1, -1, &[-2, 480, 282888]));
    }

    #[test]
    fn mul_by_one() {
        let f = s(1, -1, &[1, 24, 324, 3200]);
        assert!(f.mul(&QSeries::one(10)).eq_to_joint_prec(&f));
        assert_eq!(f.mul(&QSeries::one(10)), f);
    }

    #[test]
    fn mul_strategies_agree() {
        let f = QSeries::from_ints(1, 0, &(1..200).collect::<Vec<_>>());
        let g = QSeries::from_ints(1, 1, &(1..200).map(|x| x * x - 7).collect::<Vec<_>>());
        assert_eq!(
            f.mul_with(&g, Exec::Sequential),
            f.mul_with(&g, Exec::Parallel)
        );
    }

    #[test]
    fn invert_delta_head() {
        // q - 24q^2 + 252q^3 - 1472q^4
        let delta = s(1, 1, &[1, -24, 252, -1472]);
        assert_eq!(delta.invert().unwrap(), s(1, -1, &[1, 24, 324, 3200]));
    }

    #[test]
    fn invert_one() {
        assert_eq!(QSeries::one(5).invert().unwrap(), QSeries::one(5));
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(QSeries::zero(1, 4).invert(), Err(Error::NonInvertible));
    }

    #[test]
    fn sqrt_one() {
        assert_eq!(QSeries::one(5).sqrt().unwrap(), QSeries::one(5));
    }

    #[test]
    fn sqrt_of_odd_valuation_doubles_exp_den() {
        let delta = s(1, 1, &[1, -24, 252, -1472]);
        let root = delta.sqrt().unwrap();
        assert_eq!(root.exp_den(), 2);
        assert_eq!(root.offset(), 1);
        assert_eq!(root.coeff_at(Rational64::new(3, 2)).unwrap(), r(-12));
        assert_eq!(root.coeff_at(Rational64::new(5, 2)).unwrap(), r(54));
        assert_eq!(root.coeff(1).unwrap(), r(0));
        assert!(root.mul(&root).eq_to_joint_prec(&delta));
        assert_eq!(root.mul(&root), delta);
    }

    #[test]
    fn sqrt_rejects_non_square_leading() {
        assert!(matches!(
            s(1, 0, &[2, 1]).sqrt(),
            Err(Error::NonSquareLeading(_))
        ));
        assert!(matches!(
            s(1, 0, &[-1, 1]).sqrt(),
            Err(Error::NonSquareLeading(_))
        ));
    }

    #[test]
    fn sqrt_rational_leading() {
        let f = QSeries::new(1, 0, vec![BigRational::new(4.into(), 9.into()), r(1)]);
        let g = f.sqrt().unwrap();
        assert_eq!(g.coeffs()[0], BigRational::new(2.into(), 3.into()));
        assert_eq!(g.mul(&g), f);
    }

    #[test]
    fn coeff_at_edges() {
        let e10 = s(1, 0, &[1, -264, -135432]);
        assert_eq!(e10.coeff(1).unwrap(), r(-264));
        assert_eq!(e10.coeff(2).unwrap(), r(-135432));
        assert_eq!(e10.coeff(-5).unwrap(), r(0));
        assert!(matches!(e10.coeff(3), Err(Error::PrecisionExceeded { .. })));
        assert!(matches!(
            e10.coeff_at(Rational64::new(1, 2)),
            Err(Error::ExponentNotRepresentable { .. })
        ));
    }

    #[test]
    fn slice_examples() {
        let inv_delta = s(1, -1, &[1, 24, 324, 3200]);
        assert_eq!(inv_delta.slice(1, 0).unwrap(), inv_delta);
        let odd = inv_delta.slice(2, 1).unwrap();
        assert_eq!(odd, s(1, -1, &[1, 0, 324, 0]));
        assert_eq!(inv_delta.slice(2, -1).unwrap(), odd);
        let sum = inv_delta
            .slice(3, 0)
            .unwrap()
            .add(&inv_delta.slice(3, 1).unwrap())
            .add(&inv_delta.slice(3, 2).unwrap());
        assert_eq!(sum, inv_delta);
    }

    #[test]
    fn slice_needs_integer_exponents() {
        assert_eq!(
            s(2, 1, &[1]).slice(2, 0),
            Err(Error::FractionalExponents(2))
        );
    }

    #[test]
    fn substitute_power_scales_exponents() {
        let f = s(1, -1, &[1, 24]);
        let g = f.substitute_power(2);
        assert_eq!(g, s(1, -2, &[1, 0, 24, 0]));
        assert_eq!(f.substitute_power(1), f);
    }

    #[test]
    fn zero_series_canonical() {
        let z = s(1, 0, &[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.offset(), 3);
        assert_eq!(z.prec(), 3);
    }

    #[test]
    fn display() {
        let f = s(1, -1, &[1, 24, 324, -3200]);
        assert_eq!(f.to_string(), "q^-1 + 24 + 324q - 3200q^2 + O(q^3)");
        let g = s(2, -1, &[1, 0, 252]);
        assert_eq!(g.to_string(), "q^(-1/2) + 252q^(1/2) + O(q^1)");
        assert_eq!(
            QSeries::from_ints(2, -1, &[1, 0]).to_string(),
            "q^(-1/2) + O(q^(1/2))"
        );
    }
}
