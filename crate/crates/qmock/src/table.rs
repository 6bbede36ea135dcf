//! CSV tables of invariants: `m,n,phi_num,phi_den,route`.

use std::str::FromStr;

use num_bigint::BigInt;
use qmock_core::uplane::{InvariantRecord, Route};
use qmock_core::Rational;
use serde::{Deserialize, Serialize};

use crate::FormatError;

pub const HEADER: [&str; 5] = ["m", "n", "phi_num", "phi_den", "route"];

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    m: u32,
    n: u32,
    phi_num: String,
    phi_den: String,
    route: String,
}

pub fn route_from_label(label: &str) -> Option<Route> {
    [Route::QplusTau8, Route::HOver12, Route::FinalFormula].into_iter().find(|r| r.label() == label)
}

pub fn write_csv(records: &[InvariantRecord]) -> Result<String, FormatError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    // an empty table still carries its header
    if records.is_empty() {
        w.write_record(HEADER)?;
    }
    for r in records {
        w.serialize(Row {
            m: r.m,
            n: r.n,
            phi_num: r.value.numer().to_string(),
            phi_den: r.value.denom().to_string(),
            route: r.route.label().to_string(),
        })?;
    }
    let bytes = w.into_inner().map_err(|e| FormatError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

pub fn read_csv(text: &str) -> Result<Vec<InvariantRecord>, FormatError> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    if rd.headers()?.iter().ne(HEADER) {
        return Err(FormatError::BadHeader);
    }
    rd.deserialize::<Row>()
        .map(|row| {
            let row = row?;
            let num = BigInt::from_str(&row.phi_num).map_err(|_| FormatError::BadInteger(row.phi_num.clone()))?;
            let den = BigInt::from_str(&row.phi_den).map_err(|_| FormatError::BadInteger(row.phi_den.clone()))?;
            if den <= BigInt::from(0) {
                return Err(FormatError::NonCanonical(row.phi_den));
            }
            let route = route_from_label(&row.route).ok_or(FormatError::UnknownRoute(row.route))?;
            Ok(InvariantRecord { m: row.m, n: row.n, value: Rational::new(num, den), route })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(m: u32, n: u32, num: i64, den: i64, route: Route) -> InvariantRecord {
        InvariantRecord { m, n, value: Rational::new(num.into(), den.into()), route }
    }

    #[test]
    fn writes_exact_rows() {
        let rows = [record(0, 0, -1, 1, Route::QplusTau8), record(1, 1, -5, 16, Route::FinalFormula)];
        assert_eq!(
            write_csv(&rows).unwrap(),
            "m,n,phi_num,phi_den,route\n0,0,-1,1,QplusTau8\n1,1,-5,16,FinalFormula\n"
        );
        assert_eq!(read_csv(&write_csv(&rows).unwrap()).unwrap(), rows);
    }

    #[test]
    fn empty_table_has_header() {
        assert_eq!(write_csv(&[]).unwrap(), "m,n,phi_num,phi_den,route\n");
        assert!(read_csv("m,n,phi_num,phi_den,route\n").unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(read_csv("a,b\n1,2\n"), Err(FormatError::BadHeader)));
        assert!(read_csv("m,n,phi_num,phi_den,route\n0,0,1,0,HOver12\n").is_err());
        assert!(read_csv("m,n,phi_num,phi_den,route\n0,0,1,1,Other\n").is_err());
    }
}
