//! JSON form of a [`QSeries`]. Coefficients are decimal strings so that
//! consumers without big-integer support never round them.

use std::str::FromStr;

use ellcy_core::QSeries;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDoc {
    pub num: String,
    pub den: String,
}

/// `Σ coeffs[i] · variable^{(offset + i)/exp_den} + O(variable^{prec/exp_den})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub variable: String,
    pub exp_den: u32,
    pub offset: i64,
    pub prec: i64,
    pub coeffs: Vec<RationalDoc>,
}

impl SeriesDocument {
    pub fn from_series(s: &QSeries) -> Self {
        let coeffs = s
            .coeffs()
            .iter()
            .map(|c| RationalDoc {
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        SeriesDocument {
            variable: "q".into(),
            exp_den: s.exp_den(),
            offset: s.offset(),
            prec: s.prec(),
            coeffs,
        }
    }

    pub fn to_series(&self) -> Result<QSeries, CliError> {
        let bad = |msg: String| CliError::Document(msg);
        if self.exp_den == 0 {
            return Err(bad("exp_den must be positive".into()));
        }
        if self.prec - self.offset != self.coeffs.len() as i64 {
            return Err(bad(format!(
                "offset {} and prec {} disagree with {} coefficients",
                self.offset,
                self.prec,
                self.coeffs.len()
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let num = BigInt::from_str(&c.num)
                    .map_err(|e| bad(format!("numerator {:?}: {e}", c.num)))?;
                let den = BigInt::from_str(&c.den)
                    .map_err(|e| bad(format!("denominator {:?}: {e}", c.den)))?;
                if den == BigInt::from(0) {
                    return Err(bad("zero denominator".into()));
                }
                Ok(BigRational::new(num, den))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Ok(QSeries::zero(self.exp_den, self.prec));
        }
        if coeffs[0] == BigRational::from_integer(0.into()) {
            return Err(bad("leading coefficient must be nonzero".into()));
        }
        Ok(QSeries::new(self.exp_den, self.offset, coeffs))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Document(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_half_integer_series() {
        let s = ellcy_core::modular::inv_sqrt_delta(6);
        let doc = SeriesDocument::from_series(&s);
        assert_eq!(doc.exp_den, 2);
        assert_eq!(doc.offset, -1);
        let back = SeriesDocument::from_json(&doc.to_json())
            .unwrap()
            .to_series()
            .unwrap();
        assert_eq!(back, s);
        assert_eq!(back.prec(), s.prec());
    }

    #[test]
    fn zero_series_keeps_its_precision() {
        let z = QSeries::zero(1, 5);
        let back = SeriesDocument::from_series(&z).to_series().unwrap();
        assert!(back.is_zero());
        assert_eq!(back.prec(), 5);
    }

    #[test]
    fn rejects_malformed_documents() {
        let mut doc = SeriesDocument::from_series(&QSeries::from_ints(1, 0, &[1, 2]));
        doc.prec += 1;
        assert!(doc.to_series().is_err());
        doc.prec -= 1;
        doc.coeffs[1].den = "0".into();
        assert!(doc.to_series().is_err());
        doc.coeffs[1].den = "1.5".into();
        assert!(doc.to_series().is_err());
    }
}
