//! Named series the command line can print.

use qmock_core::forms::{
    e_star, eisenstein_e2, eta, eta_quotient, theta_big, theta_nullwert, z0_hat, EtaQuotientSpec, HalfPeriodPoint,
};
use qmock_core::mock::{h_series, mock_theta_m, mu_half_period, q_plus, q_plus_rescaled};
use qmock_core::{Result, Series};

pub const NAMES: [&str; 21] = [
    "eta3", "theta2", "theta3", "theta4", "Theta2", "Theta3", "Theta4", "E2", "Estar", "Z0hat", "A", "B", "A38", "A78",
    "H", "Qplus", "QplusTau8", "mu:half", "mu:tauhalf", "mu:onetauhalf", "Mq",
];

/// Builds the named series to `order` lattice units, or `None` for an
/// unknown name.
pub fn build(name: &str, order: i64) -> Option<Result<Series>> {
    let a_form = || eta_quotient(&EtaQuotientSpec::a_form(), order);
    let s = match name {
        "eta3" => eta(1, order).pow_int(3),
        "theta2" => theta_nullwert(2, order),
        "theta3" => theta_nullwert(3, order),
        "theta4" => theta_nullwert(4, order),
        "Theta2" => theta_big(2, order),
        "Theta3" => theta_big(3, order),
        "Theta4" => theta_big(4, order),
        "E2" => Ok(eisenstein_e2(order)),
        "Estar" => Ok(e_star(order)),
        "Z0hat" => Ok(z0_hat(order)),
        "A" => Ok(a_form()),
        "B" => Ok(eta_quotient(&EtaQuotientSpec::b_form(), order)),
        "A38" => a_form().sieve(3, 8),
        "A78" => a_form().sieve(7, 8),
        "H" => h_series(order).map(|m| m.into_series()),
        "Qplus" => q_plus(order).map(|m| m.into_series()),
        "QplusTau8" => q_plus_rescaled(order).map(|m| m.into_series()),
        "mu:half" => mu_half_period(HalfPeriodPoint::HALF, order),
        "mu:tauhalf" => mu_half_period(HalfPeriodPoint::TAU_HALF, order),
        "mu:onetauhalf" => mu_half_period(HalfPeriodPoint::ONE_TAU_HALF, order),
        "Mq" => Ok(mock_theta_m(order)),
        _ => return None,
    };
    Some(s.map(|s| s.truncate(order)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmock_core::GaussRat;

    #[test]
    fn every_name_builds() {
        for name in NAMES {
            let s = build(name, 48).unwrap().unwrap();
            assert_eq!(s.prec(), 48, "{name}");
        }
        assert!(build("nope", 48).is_none());
    }

    #[test]
    fn sieved_parts_sum_into_a() {
        let a38 = build("A38", 24 * 40).unwrap().unwrap();
        assert_eq!(a38.coefficient(24 * 3).unwrap(), GaussRat::from_int(-8));
        assert!(a38.terms().all(|(e, _)| (e / 24).rem_euclid(8) == 3));
    }
}
