//! JSON encodings of series and moonshine reports.
//!
//! Big integers travel as decimal strings. Rationals must arrive in lowest
//! terms with a positive denominator, so that decoding and re-encoding
//! reproduces the input byte for byte.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use qmock_core::moonshine::{BoundedDecomposition, DecompositionWitness};
use qmock_core::{GaussRat, Rational, Series, LATTICE_DEN};
use serde::{Deserialize, Serialize};

use crate::FormatError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub lattice_den: i64,
    pub min_exp: i64,
    pub prec: i64,
    pub coeffs: Vec<[String; 4]>,
}

fn parse_int(s: &str) -> Result<BigInt, FormatError> {
    // BigInt accepts a leading '+', which would not survive a round trip
    if s.starts_with('+') || (s.len() > 1 && s.starts_with('0')) || s.starts_with("-0") {
        return Err(FormatError::NonCanonical(s.to_string()));
    }
    BigInt::from_str(s).map_err(|_| FormatError::BadInteger(s.to_string()))
}

fn parse_rational(num: &str, den: &str) -> Result<Rational, FormatError> {
    let (n, d) = (parse_int(num)?, parse_int(den)?);
    if !d.is_positive() {
        return Err(FormatError::NonCanonical(format!("{num}/{den}")));
    }
    let r = Rational::new(n.clone(), d.clone());
    if *r.numer() != n || *r.denom() != d {
        return Err(FormatError::NonCanonical(format!("{num}/{den}")));
    }
    Ok(r)
}

impl From<&Series> for SeriesJson {
    fn from(s: &Series) -> Self {
        let coeffs = s
            .coeffs()
            .iter()
            .map(|c| {
                [c.re.numer().to_string(), c.re.denom().to_string(), c.im.numer().to_string(), c.im.denom().to_string()]
            })
            .collect();
        SeriesJson { lattice_den: LATTICE_DEN, min_exp: s.min_exp(), prec: s.prec(), coeffs }
    }
}

impl TryFrom<&SeriesJson> for Series {
    type Error = FormatError;

    fn try_from(j: &SeriesJson) -> Result<Series, FormatError> {
        if j.lattice_den != LATTICE_DEN {
            return Err(qmock_core::Error::LatticeMismatch(j.lattice_den).into());
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|[a, b, c, d]| Ok(GaussRat::new(parse_rational(a, b)?, parse_rational(c, d)?)))
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(Series::new(j.min_exp, j.prec, coeffs)?)
    }
}

pub fn series_to_json(s: &Series) -> String {
    serde_json::to_string(&SeriesJson::from(s)).expect("series JSON is always serializable")
}

pub fn series_from_json(text: &str) -> Result<Series, FormatError> {
    let j: SeriesJson = serde_json::from_str(text)?;
    Series::try_from(&j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoonshineReport {
    pub target: u64,
    pub distinct_witness: Option<Vec<u64>>,
    pub bounded_count: String,
    pub witnesses: Vec<Vec<u64>>,
}

impl MoonshineReport {
    pub fn new(target: u64, distinct: Option<&DecompositionWitness>, bounded: &BoundedDecomposition) -> Self {
        MoonshineReport {
            target,
            distinct_witness: distinct.map(DecompositionWitness::parts),
            bounded_count: bounded.count.to_string(),
            witnesses: bounded.witnesses.iter().map(|w| w.multiplicities.to_vec()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report JSON is always serializable")
    }
}

/// `num/den`, or just `num` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() || r.is_zero() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
