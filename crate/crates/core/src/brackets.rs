//! The Cohen-type bracket
//! `E^k[M] = sum_j (-1)^j C(k,j) Gamma(1/2)/Gamma(1/2+j) 2^(2j) 3^j E2^(k-j) (q d/dq)^j M`,
//! which sends a weight-1/2 mock modular form with shadow `eta^3` to a form
//! of weight `2k + 1/2`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{eisenstein_e2_scaled, eta_quotient, theta23_power, EtaQuotientSpec};
use crate::series::{Series, Q};
use crate::Rational;

/// The rational weights `c_{k,j}` of the bracket, `j = 0..=k`.
///
/// `Gamma(1/2)/Gamma(1/2 + j)` is the rational `2^j / (2j - 1)!!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketCoefficients {
    pub k: u32,
    pub terms: Vec<(u32, Rational)>,
}

impl BracketCoefficients {
    pub fn new(k: u32) -> Self {
        let terms = (0..=k).map(|j| (j, bracket_weight(k, j))).collect();
        BracketCoefficients { k, terms }
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(2j - 1)!!`, with `(-1)!! = 1`.
fn odd_double_factorial(j: u32) -> BigInt {
    (1..=j).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i - 1))
}

/// `c_{k,j} = (-1)^j C(k,j) 2^j/(2j-1)!! 2^(2j) 3^j`.
pub fn bracket_weight(k: u32, j: u32) -> Rational {
    let sign = if j.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let num = sign * binomial(k, j) * BigInt::from(2).pow(3 * j) * BigInt::from(3).pow(j);
    Rational::new(num, odd_double_factorial(j))
}

/// `E^k[M]` with `M` expanded in the ordinary `q = e^(2 pi i tau)`.
pub fn cohen_bracket(m: &Series, k: i64) -> Result<Series> {
    cohen_bracket_scaled(m, k, 1)
}

/// `E^k[M](scale * tau)` for `M` given as a series in `q^scale`, i.e. the
/// operand is already `M(scale * tau)`. Uses `E2(scale * tau)` and the
/// derivative `(1/scale) q d/dq`.
///
/// The result has the same absolute precision as the operand.
pub fn cohen_bracket_scaled(m: &Series, k: i64, scale: u32) -> Result<Series> {
    if k < 0 {
        return Err(Error::InvalidArgument("bracket order must be nonnegative"));
    }
    if scale == 0 {
        return Err(Error::InvalidArgument("variable scale must be positive"));
    }
    let k = k as u32;
    let weights = BracketCoefficients::new(k);
    let e2 = eisenstein_e2_scaled(scale, m.relative_prec().max(1));
    let inv_scale = Rational::new(BigInt::one(), BigInt::from(scale));

    let mut e2_powers = Vec::with_capacity(k as usize + 1);
    e2_powers.push(None);
    for i in 1..=k as usize {
        let next = match &e2_powers[i - 1] {
            None => e2.clone(),
            Some(prev) => prev * &e2,
        };
        e2_powers.push(Some(next));
    }

    let mut acc: Option<Series> = None;
    let mut deriv = m.clone();
    for (j, weight) in &weights.terms {
        if !weight.is_zero() {
            let term = match &e2_powers[(k - j) as usize] {
                None => deriv.clone(),
                Some(p) => p * &deriv,
            };
            let term = term.scale_rat(weight);
            acc = Some(match acc {
                None => term,
                Some(a) => &a + &term,
            });
        }
        deriv = deriv.q_derive().scale_rat(&inv_scale);
    }
    Ok(acc.expect("j = 0 always contributes").truncate(m.prec()))
}

/// `eta(8 tau)^3 / (Theta_2 Theta_3)^(2k+2) * E^k[M](8 tau)` for an operand
/// `M8 = M(8 tau)` written in the 8-tau variable.
pub fn bracket_hat(m8: &Series, k: i64) -> Result<Series> {
    let bracket = cohen_bracket_scaled(m8, k, 8)?;
    let rel = bracket.relative_prec();
    if bracket.is_zero() {
        return Ok(Series::zero(bracket.prec() + Q - 2 * Q * (k + 1)));
    }
    let eta3 = eta_quotient(&EtaQuotientSpec::new(&[(8, 3)]), Q + rel);
    let theta = theta23_power(2 * k + 2, rel);
    Ok(&(&eta3 * &theta) * &bracket)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::eisenstein_e2;
    use crate::gauss::GaussRat;
    use proptest::prelude::*;

    fn frac(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn small_weights() {
        assert_eq!(bracket_weight(1, 1), frac(-24, 1));
        assert_eq!(bracket_weight(2, 1), frac(-48, 1));
        assert_eq!(bracket_weight(2, 2), frac(192, 1));
        assert_eq!(bracket_weight(5, 0), frac(1, 1));
    }

    /// Gamma(1/2)/Gamma(1/2 + j) from Gamma(x + 1) = x Gamma(x), carried in rationals.
    #[test]
    fn gamma_ratio_recurrence_oracle() {
        let mut ratio = frac(1, 1);
        for j in 0..50u32 {
            let expected = binomial(49, j)
                * if j % 2 == 0 { BigInt::one() } else { -BigInt::one() }
                * BigInt::from(4).pow(j)
                * BigInt::from(3).pow(j);
            assert_eq!(bracket_weight(49, j), Rational::from_integer(expected) * &ratio, "j={j}");
            ratio /= frac(1, 2) + Rational::from_integer(j.into());
        }
    }

    fn sample() -> Series {
        Series::from_terms(
            [(-3, GaussRat::from_int(2)), (21, GaussRat::from_int(90)), (45, GaussRat::from_frac(7, 3))],
            24 * 4,
        )
    }

    #[test]
    fn order_zero_is_identity() {
        assert_eq!(cohen_bracket(&sample(), 0).unwrap(), sample());
    }

    #[test]
    fn order_one_and_two() {
        let m = sample();
        let e2 = eisenstein_e2(m.relative_prec());
        let d1 = m.q_derive();
        let d2 = d1.q_derive();
        let k1 = &(&e2 * &m) - &d1.scale_frac(24, 1);
        assert_eq!(cohen_bracket(&m, 1).unwrap(), k1.truncate(m.prec()));
        let e2sq = &e2 * &e2;
        let k2 = &(&(&e2sq * &m) - &(&e2 * &d1).scale_frac(48, 1)) + &d2.scale_frac(192, 1);
        assert_eq!(cohen_bracket(&m, 2).unwrap(), k2.truncate(m.prec()));
    }

    #[test]
    fn order_one_on_monomial() {
        // E^1[q^alpha] = (E2 - 24 alpha) q^alpha
        let alpha = -3;
        let m = Series::monomial(GaussRat::one(), alpha, 24 * 6);
        let e2 = eisenstein_e2(24 * 6 - alpha);
        let expected = (&e2 - &Series::constant(GaussRat::from_frac(24 * alpha, 24), 24 * 6 - alpha)).shift(alpha);
        assert_eq!(cohen_bracket(&m, 1).unwrap(), expected);
    }

    #[test]
    fn negative_order_rejected() {
        assert!(cohen_bracket(&sample(), -1).is_err());
    }

    #[test]
    fn scaled_bracket_commutes_with_rescaling() {
        let m = sample();
        for k in 0..4 {
            let direct = cohen_bracket_scaled(&m.rescale_exponents(8, 1).unwrap(), k, 8).unwrap();
            let via = cohen_bracket(&m, k).unwrap().rescale_exponents(8, 1).unwrap();
            assert_eq!(direct, via, "k={k}");
        }
    }

    #[test]
    fn bracket_hat_of_zero() {
        for k in 0..3 {
            assert!(bracket_hat(&Series::zero(24 * 8), k).unwrap().is_zero());
        }
    }

    proptest! {
        #[test]
        fn linear(a in -5i64..5, b in 1i64..5, c in -5i64..5, k in 0i64..4) {
            let m = sample();
            let n = Series::from_terms([(-3, GaussRat::from_int(c)), (9, GaussRat::from_frac(1, b))], 24 * 4);
            let lhs = cohen_bracket(&(&m.scale_frac(a, b) + &n.scale_frac(c, 1)), k).unwrap();
            let rhs = &cohen_bracket(&m, k).unwrap().scale_frac(a, b) + &cohen_bracket(&n, k).unwrap().scale_frac(c, 1);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
