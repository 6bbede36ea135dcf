//! Mock modular objects: the Appell-Lerch sum `mu(v; tau)` at half periods,
//! the K3 mock modular form `H(tau)`, the mock theta function `M(q)`, the
//! assembly of `Q+`, and the two-representation elliptic-genus check.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::{eta, eta_quotient, theta_char, EtaQuotientSpec, HalfPeriodPoint, ThetaChar};
use crate::gauss::GaussRat;
use crate::series::{Series, Q};
use crate::Rational;

/// How a [`MockSeries`] was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    MuSum,
    QPlusAssembly,
    ExplicitCoefficients(Vec<Rational>),
}

/// Holomorphic part `M+(tau) = q^(-1/8) sum_k H_k q^(k/2)` of a weight-1/2
/// harmonic Maass form with shadow proportional to `eta^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MockSeries {
    series: Series,
    construction: Construction,
}

impl MockSeries {
    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn into_series(self) -> Series {
        self.series
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    /// `H_k`, the coefficient of `q^(-1/8 + k/2)`.
    pub fn h_k(&self, k: u32) -> Result<Rational> {
        Ok(self.series.coefficient(-3 + 12 * k as i64)?.re)
    }

    /// `A_n` for the normalization `H = 2 q^(-1/8) (-1 + sum A_n q^n)`.
    pub fn a_n(&self, n: u32) -> Result<Rational> {
        let c = self.series.coefficient(Q * n as i64 - 3)?;
        Ok(c.re / Rational::from_integer(2.into()))
    }

    pub fn scale(&self, r: &Rational) -> MockSeries {
        MockSeries { series: self.series.scale_rat(r), construction: self.construction.clone() }
    }
}

fn sign(n: i64) -> GaussRat {
    GaussRat::from_int(if n.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// The Lerch sum `sum_n (-1)^n q^(n(n+1)/2) w^n / (1 - q^n w)` with
/// `w = e^(2 pi i v)`, expanded to absolute `order`.
///
/// For `v = r + s tau` the quantity `x = q^n w` has exponent `n + s` and phase
/// `(-1)^(2r)`. When that exponent is negative the geometric factor is
/// rewritten as `-x^-1 / (1 - x^-1)` so every piece is a power series.
pub fn appell_lerch_sum(v: HalfPeriodPoint, order: i64) -> Result<Series> {
    let w_phase = sign(v.r2);
    let base_exp = |n: i64| 12 * n * (n + 1) + 12 * n * v.s2;
    let x_exp = |n: i64| Q * n + 12 * v.s2;
    let lowest = |n: i64| {
        let x = x_exp(n);
        if x < 0 {
            base_exp(n) - x
        } else {
            base_exp(n)
        }
    };

    let mut terms: Vec<(i64, GaussRat)> = Vec::new();
    let mut push_term = |n: i64| -> Result<()> {
        let base = &sign(n) * &if n.rem_euclid(2) == 0 { GaussRat::from_int(1) } else { w_phase.clone() };
        let b = base_exp(n);
        let x = x_exp(n);
        if x == 0 {
            let denom = &GaussRat::from_int(1) - &w_phase;
            if denom.is_zero() {
                return Err(Error::PoleAtArgument);
            }
            terms.push((b, base.div(&denom)?));
        } else if x > 0 {
            let mut e = b;
            let mut c = base;
            while e < order {
                terms.push((e, c.clone()));
                e += x;
                c = &c * &w_phase;
            }
        } else {
            // w_phase = +-1 is its own inverse
            let mut e = b - x;
            let mut c = -(&base * &w_phase);
            while e < order {
                terms.push((e, c.clone()));
                e -= x;
                c = &c * &w_phase;
            }
        }
        Ok(())
    };

    // `base_exp` is a parabola with vertex at n = -(1 + 2s)/2 and the rewritten
    // lower bound `base_exp - x_exp` one with vertex at n = (1 - 2s)/2. Past
    // |n| > |2s| + 1 both branches are increasing away from the origin, so
    // the scan may stop at the first index beyond that point whose lowest
    // exponent reaches `order`.
    let guard = v.s2.abs() + 1;
    let mut n = 0;
    loop {
        if n > guard && lowest(n) >= order {
            debug_assert!((1..4).all(|d| lowest(n + d) >= order));
            break;
        }
        push_term(n)?;
        n += 1;
    }
    let mut n = -1;
    loop {
        if n < -guard && lowest(n) >= order {
            debug_assert!((1..4).all(|d| lowest(n - d) >= order));
            break;
        }
        push_term(n)?;
        n -= 1;
    }
    Ok(Series::from_terms(terms, order))
}

fn theta1_valuation(v: HalfPeriodPoint) -> Result<i64> {
    let floor = -3 * v.s2 * v.s2;
    for extra in 1..16 {
        let t = theta_char(ThetaChar::ONE, v, floor + Q * extra);
        if let Some(val) = t.valuation() {
            return Ok(val);
        }
    }
    Err(Error::PoleAtArgument)
}

/// `mu(v; tau) = i e^(pi i v) / theta_1(v | tau) * sum_n (-1)^n q^(n(n+1)/2) e^(2 pi i n v) / (1 - q^n e^(2 pi i v))`
/// at a half period `v = r + s tau`, to absolute `order`.
pub fn mu_half_period(v: HalfPeriodPoint, order: i64) -> Result<Series> {
    if v.r2.rem_euclid(2) == 0 && v.s2.rem_euclid(2) == 0 {
        // theta_1 vanishes identically on Z + Z tau
        return Err(Error::PoleAtArgument);
    }
    let prefactor_exp = 6 * v.s2;
    let prefactor = GaussRat::i_pow(1 + v.r2);
    let val1 = theta1_valuation(v)?;
    // mu = prefactor q^(s/2) S / theta_1; the min-rule fixes both input orders
    let target = order - prefactor_exp;
    let sum = appell_lerch_sum(v, target + val1)?;
    let val_s = sum.valuation().unwrap_or(sum.prec());
    let theta1 = theta_char(ThetaChar::ONE, v, target + 2 * val1 - val_s);
    let quotient = &sum * &theta1.invert().map_err(|_| Error::PoleAtArgument)?;
    let mu = quotient.scale(&prefactor).shift(prefactor_exp);
    debug_assert!(mu.prec() >= order);
    Ok(mu.truncate(order))
}

/// `H(tau) = -8 (mu(1/2) + mu((1+tau)/2) + mu(tau/2)) = 2 q^(-1/8) (-1 + 45 q + 231 q^2 + ...)`.
pub fn h_series(order: i64) -> Result<MockSeries> {
    let mut acc = Series::zero(order);
    for v in [HalfPeriodPoint::HALF, HalfPeriodPoint::ONE_TAU_HALF, HalfPeriodPoint::TAU_HALF] {
        acc = &acc + &mu_half_period(v, order)?;
    }
    let h = acc.scale(&GaussRat::from_int(-8));
    h.assert_real()?;
    Ok(MockSeries { series: h, construction: Construction::MuSum })
}

/// The mock theta function
/// `M(q) = q^-1 sum_n (-1)^(n+1) q^(8(n+1)^2) prod_{k<=n} (1 - q^(16k-8)) / prod_{k<=n+1} (1 + q^(16k-8))^2`.
pub fn mock_theta_m(order: i64) -> Series {
    let work = order + Q;
    let mut numerator = Series::one(work);
    let mut denominator_inv = Series::one(work);
    let mut acc = Series::zero(order);
    let mut n: i64 = 0;
    loop {
        let lead = Q * (8 * (n + 1) * (n + 1) - 1);
        if lead >= order {
            break;
        }
        if n >= 1 {
            let a = Q * (16 * n - 8);
            let factor = Series::from_terms([(0, GaussRat::from_int(1)), (a, GaussRat::from_int(-1))], work);
            numerator = &numerator * &factor;
        }
        // (1 + q^a)^-2 = sum_j (-1)^j (j + 1) q^(a j)
        let a = Q * (16 * (n + 1) - 8);
        let inv_sq = Series::from_terms(
            (0..).map(|j: i64| (a * j, GaussRat::from_int(if j % 2 == 0 { j + 1 } else { -(j + 1) })))
                .take_while(|(e, _)| *e < work),
            work,
        );
        denominator_inv = &denominator_inv * &inv_sq;
        let term = (&numerator * &denominator_inv).shift(lead).scale(&sign(n + 1));
        acc = &acc + &term.truncate(order);
        n += 1;
    }
    acc
}

/// `Q+(tau) = -(7/2) A_{3,8} + (3/2) A_{7,8} - (1/2) B + 4 M(q)` in the
/// variable `q = e^(2 pi i tau)`; all exponents are integral.
pub fn q_plus(order: i64) -> Result<MockSeries> {
    let a = eta_quotient(&EtaQuotientSpec::a_form(), order);
    let b = eta_quotient(&EtaQuotientSpec::b_form(), order);
    let a38 = a.sieve(3, 8)?;
    let a78 = a.sieve(7, 8)?;
    let m = mock_theta_m(order);
    let s = &(&(&a38.scale_frac(-7, 2) + &a78.scale_frac(3, 2)) + &b.scale_frac(-1, 2)) + &m.scale_frac(4, 1);
    s.assert_real()?;
    Ok(MockSeries { series: s, construction: Construction::QPlusAssembly })
}

/// `Q+(tau/8) = q^(-1/8) (1 + 28 q^(1/2) + 39 q + 196 q^(3/2) + 161 q^2 + ...)`.
pub fn q_plus_rescaled(order: i64) -> Result<MockSeries> {
    let s = q_plus(8 * order)?.into_series().rescale_exponents(1, 8)?;
    Ok(MockSeries { series: s.truncate(order), construction: Construction::QPlusAssembly })
}

/// `q^(-1/8) sum_k H_k q^(k/2)` from explicit coefficients; entries past the
/// end of `values` are zero.
pub fn mock_from_coefficients(values: &[Rational], order: i64) -> MockSeries {
    let s = Series::from_terms(
        values.iter().enumerate().map(|(k, h)| (-3 + 12 * k as i64, GaussRat::real(h.clone()))),
        order,
    );
    MockSeries { series: s, construction: Construction::ExplicitCoefficients(values.to_vec()) }
}

/// Evaluates `build(order + extra)` with growing `extra` until the result
/// is certified to `order`.
fn certified<F>(order: i64, build: F) -> Result<Series>
where
    F: Fn(i64) -> Result<Series>,
{
    let mut extra = 2 * Q;
    for _ in 0..8 {
        let s = build(order + extra)?;
        if s.prec() >= order {
            return Ok(s.truncate(order));
        }
        extra += order - s.prec() + Q;
    }
    Err(Error::NeedsOrder { needed: order, available: build(order + extra)?.prec() })
}

/// `8 [(theta_2(v)/theta_2)^2 + (theta_3(v)/theta_3)^2 + (theta_4(v)/theta_4)^2]`.
pub fn elliptic_genus_theta_side(v: HalfPeriodPoint, order: i64) -> Result<Series> {
    certified(order, |work| {
        let mut acc: Option<Series> = None;
        for ch in [ThetaChar::TWO, ThetaChar::THREE, ThetaChar::FOUR] {
            let num = theta_char(ch, v, work);
            let den = theta_char(ch, HalfPeriodPoint::ZERO, work).invert()?;
            let ratio = &num * &den;
            let sq = &ratio * &ratio;
            acc = Some(match acc {
                None => sq,
                Some(a) => &a + &sq,
            });
        }
        Ok(acc.expect("three terms").scale(&GaussRat::from_int(8)))
    })
}

/// `theta_1(v)^2 / eta^3 * (24 mu(v) + H)`.
pub fn elliptic_genus_mu_side(v: HalfPeriodPoint, order: i64) -> Result<Series> {
    certified(order, |work| {
        let t1 = theta_char(ThetaChar::ONE, v, work);
        let eta3_inv = eta(1, work).pow_int(-3)?;
        let inner = &mu_half_period(v, work)?.scale(&GaussRat::from_int(24)) + h_series(work)?.series();
        Ok(&(&(&t1 * &t1) * &eta3_inv) * &inner)
    })
}

/// Difference of the two representations of the K3 elliptic genus at `v`;
/// identically zero when both are correct.
pub fn elliptic_genus_check(v: HalfPeriodPoint, order: i64) -> Result<Series> {
    let rhs = elliptic_genus_mu_side(v, order)?;
    let lhs = elliptic_genus_theta_side(v, order)?;
    Ok(&lhs - &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn lerch_sum_negative_index_rewrite() {
        // v = tau/2 below q^3: n = 0 and n = -1 each give 1/(1 - q^(1/2));
        // n = 1 and n = -2 each give -q^(3/2)/(1 - q^(3/2)).
        let s = appell_lerch_sum(HalfPeriodPoint::TAU_HALF, 3 * Q).unwrap();
        let expected = Series::from_terms(
            [(0, 2), (12, 2), (24, 2), (48, 2), (60, 2)].map(|(e, c)| (e, GaussRat::from_int(c))),
            3 * Q,
        );
        assert_eq!(s, expected);
    }

    #[test]
    fn lerch_sum_zero_index_at_half() {
        let s = appell_lerch_sum(HalfPeriodPoint::HALF, 12).unwrap();
        assert_eq!(s.constant_term().unwrap(), GaussRat::from_frac(1, 2));
    }

    #[test]
    fn pole_at_lattice_points() {
        assert_eq!(mu_half_period(HalfPeriodPoint::ZERO, 48).unwrap_err(), Error::PoleAtArgument);
        assert_eq!(mu_half_period(HalfPeriodPoint::from_halves(2, 0), 48).unwrap_err(), Error::PoleAtArgument);
    }

    #[test]
    fn each_mu_is_real() {
        for v in [HalfPeriodPoint::HALF, HalfPeriodPoint::ONE_TAU_HALF, HalfPeriodPoint::TAU_HALF] {
            let mu = mu_half_period(v, 10 * Q).unwrap();
            assert!(mu.assert_real().is_ok(), "{v:?}");
            assert_eq!(mu.prec(), 10 * Q);
        }
    }

    /// mu(1/2) = S / theta_2 with S = sum q^(n(n+1)/2)/(1 + q^n), expanded termwise.
    #[test]
    fn mu_half_termwise_oracle() {
        let order = 8 * Q;
        let mut sum = Series::zero(order + 3);
        for n in -8i64..8 {
            let base = Series::monomial(GaussRat::one(), 12 * n * (n + 1), order + 3);
            let denom = Series::from_terms([(0, GaussRat::one()), (Q * n, GaussRat::one())], order + 3 + 24 * n.abs());
            let inv = denom.invert().unwrap();
            sum = &sum + &(&base * &inv).truncate(order + 3);
        }
        let theta2 = theta_char(ThetaChar::TWO, HalfPeriodPoint::ZERO, order + 6);
        let oracle = (&sum * &theta2.invert().unwrap()).truncate(order);
        assert_eq!(mu_half_period(HalfPeriodPoint::HALF, order).unwrap(), oracle);
    }

    #[test]
    fn h_leading_coefficients() {
        let h = h_series(9 * Q).unwrap();
        assert_eq!(h.series().valuation(), Some(-3));
        assert_eq!(h.series().coefficient(-3).unwrap(), GaussRat::from_int(-2));
        let a: Vec<Rational> = (1..=8).map(|n| h.a_n(n).unwrap()).collect();
        let expected = [45, 231, 770, 2277, 5796, 13915, 30843, 65550].map(int);
        assert_eq!(a, expected);
        assert_eq!(h.series().coefficient(21).unwrap(), GaussRat::from_int(90));
        // no terms at q^(-1/8 + k/2) for odd k
        assert!(h.series().terms().all(|(e, _)| (e + 3) % Q == 0));
        let twelfth = h.scale(&Rational::new(1.into(), 12.into()));
        assert_eq!(twelfth.h_k(0).unwrap(), Rational::new((-1).into(), 6.into()));
    }

    #[test]
    fn mock_theta_expansion() {
        let m = mock_theta_m(40 * Q);
        assert!(m.coefficient(0).unwrap().is_zero());
        assert_eq!(m.valuation(), Some(7 * Q));
        assert_eq!(m.coefficient(7 * Q).unwrap(), GaussRat::from_int(-1));
        assert_eq!(m.coefficient(15 * Q).unwrap(), GaussRat::from_int(2));
        assert_eq!(m.coefficient(23 * Q).unwrap(), GaussRat::from_int(-3));
    }

    /// First two summands of M(q) multiplied out by hand: below q^32 only
    /// n = 0 and n = 1 contribute.
    #[test]
    fn mock_theta_q31_two_summand_oracle() {
        // n = 0: -q^7 (1 + q^8)^-2 = -q^7 (1 - 2q^8 + 3q^16 - 4q^24 + ...)
        // n = 1: q^31 (1 - q^8)/((1 + q^8)^2 (1 + q^24)^2) = q^31 + ...
        // at q^31: -(-4) + 1 = 5
        assert_eq!(mock_theta_m(32 * Q).coefficient(31 * Q).unwrap(), GaussRat::from_int(5));
    }

    #[test]
    fn q_plus_rescaled_leading() {
        let q = q_plus_rescaled(3 * Q).unwrap();
        let h: Vec<Rational> = (0..5).map(|k| q.h_k(k).unwrap()).collect();
        assert_eq!(h, [1, 28, 39, 196, 161].map(int));
    }

    #[test]
    fn q_plus_support_is_minus_one_mod_four() {
        let q = q_plus(80 * Q).unwrap();
        for (e, _) in q.series().terms() {
            assert_eq!(e % Q, 0);
            assert_eq!((e / Q).rem_euclid(4), 3, "exponent {}", e / Q);
        }
    }

    #[test]
    fn q_plus_at_order_zero() {
        let q = q_plus(0).unwrap();
        assert_eq!(q.series().prec(), 0);
        assert!(q.series().coefficient(0).is_err());
    }

    #[test]
    fn explicit_coefficients() {
        let m = mock_from_coefficients(&[int(1)], 48);
        assert_eq!(*m.series(), Series::monomial(GaussRat::one(), -3, 48));
        let a = mock_from_coefficients(&[int(0), int(1)], 96);
        let b = mock_from_coefficients(&[int(0), int(0), int(0), int(1)], 96);
        let ab = mock_from_coefficients(&[int(0), int(1), int(0), int(1)], 96);
        assert_eq!(*ab.series(), a.series() + b.series());
    }

    #[test]
    fn genus_theta_side_at_zero_is_24() {
        assert_eq!(elliptic_genus_theta_side(HalfPeriodPoint::ZERO, 10 * Q).unwrap(), Series::constant(GaussRat::from_int(24), 10 * Q));
    }

    #[test]
    fn genus_representations_agree() {
        for v in [HalfPeriodPoint::HALF, HalfPeriodPoint::ONE_TAU_HALF] {
            let d = elliptic_genus_check(v, 8 * Q).unwrap();
            assert!(d.is_zero(), "{v:?}: {d}");
            assert_eq!(d.prec(), 8 * Q);
        }
        assert_eq!(elliptic_genus_check(HalfPeriodPoint::ZERO, 48).unwrap_err(), Error::PoleAtArgument);
    }

    #[test]
    fn genus_classical_values() {
        // sigma = 16 at z = 1/2 and A-hat = -2 at z = (1 + tau)/2
        let s = elliptic_genus_theta_side(HalfPeriodPoint::HALF, 48).unwrap();
        assert_eq!(s.constant_term().unwrap(), GaussRat::from_int(16));
        let a = elliptic_genus_theta_side(HalfPeriodPoint::ONE_TAU_HALF, 48).unwrap();
        assert_eq!(a.valuation(), Some(-12));
        assert_eq!(a.coefficient(-12).unwrap(), GaussRat::from_int(-2));
    }
}
