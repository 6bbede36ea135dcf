//! Classical modular objects: Dedekind eta and eta quotients, Jacobi theta
//! functions with characteristics at half periods, the theta constants in
//! both normalizations, `E2`, `E*(4 tau)` and the Hauptmodul `Z0hat`.
//!
//! All `order` arguments are absolute exponent bounds in lattice units.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gauss::GaussRat;
use crate::series::{Series, Q};

/// Formal product `prod eta(k tau)^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    pub factors: Vec<(u32, i64)>,
}

impl EtaQuotientSpec {
    pub fn new(factors: &[(u32, i64)]) -> Self {
        EtaQuotientSpec { factors: factors.to_vec() }
    }

    /// Leading exponent `sum k e / 24`, in lattice units.
    pub fn valuation(&self) -> i64 {
        self.factors.iter().map(|&(k, e)| k as i64 * e).sum()
    }

    /// `eta(4 tau)^8 / eta(8 tau)^7 = q^-1 - 8 q^3 + 27 q^7 - ...`
    pub fn a_form() -> Self {
        Self::new(&[(4, 8), (8, -7)])
    }

    /// `eta(8 tau)^5 / eta(16 tau)^4 = q^-1 - 5 q^7 + 9 q^15 - ...`
    pub fn b_form() -> Self {
        Self::new(&[(8, 5), (16, -4)])
    }

    /// `Theta2 = eta(16 tau)^2 / eta(8 tau)`
    pub fn big_theta2() -> Self {
        Self::new(&[(16, 2), (8, -1)])
    }

    /// `Theta3 = eta(8 tau)^5 / (eta(4 tau)^2 eta(16 tau)^2)`
    pub fn big_theta3() -> Self {
        Self::new(&[(8, 5), (4, -2), (16, -2)])
    }

    /// `Theta4 = eta(4 tau)^2 / eta(8 tau)`
    pub fn big_theta4() -> Self {
        Self::new(&[(4, 2), (8, -1)])
    }
}

/// A point `v = r + s tau` with `r, s` in `(1/2)Z`, stored as `2r` and `2s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfPeriodPoint {
    pub r2: i64,
    pub s2: i64,
}

impl HalfPeriodPoint {
    pub const ZERO: Self = HalfPeriodPoint { r2: 0, s2: 0 };
    /// `v = 1/2`
    pub const HALF: Self = HalfPeriodPoint { r2: 1, s2: 0 };
    /// `v = tau/2`
    pub const TAU_HALF: Self = HalfPeriodPoint { r2: 0, s2: 1 };
    /// `v = (1 + tau)/2`
    pub const ONE_TAU_HALF: Self = HalfPeriodPoint { r2: 1, s2: 1 };

    pub fn from_halves(r2: i64, s2: i64) -> Self {
        HalfPeriodPoint { r2, s2 }
    }

    pub fn new(r: Ratio<i64>, s: Ratio<i64>) -> Result<Self> {
        fn halves(x: Ratio<i64>, which: &'static str) -> Result<i64> {
            let twice = x * 2;
            if !twice.is_integer() {
                return Err(Error::PhaseError(which));
            }
            Ok(twice.to_integer())
        }
        Ok(HalfPeriodPoint { r2: halves(r, "r")?, s2: halves(s, "s")? })
    }
}

/// Characteristic `(a, b)` of `theta_ab`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaChar {
    pub a: u8,
    pub b: u8,
}

impl ThetaChar {
    /// `theta_1 = theta_11`
    pub const ONE: Self = ThetaChar { a: 1, b: 1 };
    /// `theta_2 = theta_10`
    pub const TWO: Self = ThetaChar { a: 1, b: 0 };
    /// `theta_3 = theta_00`
    pub const THREE: Self = ThetaChar { a: 0, b: 0 };
    /// `theta_4 = theta_01`
    pub const FOUR: Self = ThetaChar { a: 0, b: 1 };

    pub fn new(a: u8, b: u8) -> Result<Self> {
        if a > 1 || b > 1 {
            return Err(Error::InvalidArgument("theta characteristics are 0 or 1"));
        }
        Ok(ThetaChar { a, b })
    }
}

/// `eta(k tau) = sum_n (-1)^n q^(k (6n - 1)^2 / 24)` to absolute `order`.
pub fn eta(k: u32, order: i64) -> Series {
    let k = k as i64;
    let mut terms = Vec::new();
    // n >= 0 contributes q^(k(6n-1)^2/24), n = -j < 0 contributes q^(k(6j+1)^2/24)
    for (offset, start) in [(-1i64, 0i64), (1, 1)] {
        let mut n = start;
        loop {
            let m = 6 * n + offset;
            let e = k * m * m;
            if e >= order {
                break;
            }
            terms.push((e, GaussRat::from_int(if n % 2 == 0 { 1 } else { -1 })));
            n += 1;
        }
    }
    Series::from_terms(terms, order)
}

/// Product `prod eta(k tau)^e` to absolute `order`.
pub fn eta_quotient(spec: &EtaQuotientSpec, order: i64) -> Series {
    let rel = order - spec.valuation();
    if rel <= 0 {
        return Series::zero(order);
    }
    let mut acc = Series::one(rel);
    for &(k, e) in &spec.factors {
        let factor = eta(k, k as i64 + rel).pow_int(e).expect("eta(k tau) has unit leading coefficient");
        acc = &acc * &factor;
    }
    acc
}

/// `theta_ab(v | tau) = sum_n q^((2n+a)^2/8) e^(pi i (2n+a)(v + b/2))` at a
/// half-period `v = r + s tau`.
///
/// With `m = 2n + a` the term is `i^(m (2r + b)) q^((3 m^2 + 6 m (2s)) / 24)`.
pub fn theta_char(ch: ThetaChar, v: HalfPeriodPoint, order: i64) -> Series {
    let a = ch.a as i64;
    let b = ch.b as i64;
    let exponent = |m: i64| 3 * m * m + 6 * m * v.s2;
    let phase = |m: i64| GaussRat::i_pow(m * (v.r2 + b));
    // The exponent is a convex parabola in m with vertex at m = -2s; scan
    // outward from the vertex in steps of 2 and stop once past it and beyond `order`.
    let vertex = -v.s2;
    let mut m0 = vertex;
    if (m0 - a).rem_euclid(2) != 0 {
        m0 += 1;
    }
    let mut terms = Vec::new();
    let mut m = m0;
    loop {
        let e = exponent(m);
        if e >= order && m >= vertex {
            break;
        }
        if e < order {
            terms.push((e, phase(m)));
        }
        m += 2;
    }
    let mut m = m0 - 2;
    loop {
        let e = exponent(m);
        if e >= order && m <= vertex {
            break;
        }
        if e < order {
            terms.push((e, phase(m)));
        }
        m -= 2;
    }
    Series::from_terms(terms, order)
}

fn theta_index(j: u8) -> Result<ThetaChar> {
    match j {
        2 => Ok(ThetaChar::TWO),
        3 => Ok(ThetaChar::THREE),
        4 => Ok(ThetaChar::FOUR),
        _ => Err(Error::InvalidArgument("theta index must be 2, 3 or 4")),
    }
}

/// Theta constants `theta_j(tau) = theta_j(0 | tau)` from their defining sums.
pub fn theta_nullwert(j: u8, order: i64) -> Result<Series> {
    Ok(theta_char(theta_index(j)?, HalfPeriodPoint::ZERO, order))
}

/// `Theta_j(tau)` from eta quotients; `theta_2(tau) = 2 Theta_2(tau/8)`,
/// `theta_3(tau) = Theta_3(tau/8)`, `theta_4(tau) = Theta_4(tau/8)`.
pub fn theta_big(j: u8, order: i64) -> Result<Series> {
    let spec = match j {
        2 => EtaQuotientSpec::big_theta2(),
        3 => EtaQuotientSpec::big_theta3(),
        4 => EtaQuotientSpec::big_theta4(),
        _ => return Err(Error::InvalidArgument("theta index must be 2, 3 or 4")),
    };
    Ok(eta_quotient(&spec, order))
}

/// Sum of divisors by trial division.
pub fn sigma1(n: u64) -> u64 {
    let mut total = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += d;
            if d * d != n {
                total += n / d;
            }
        }
        d += 1;
    }
    total
}

/// `E2(tau) = 1 - 24 sum sigma_1(n) q^n`.
pub fn eisenstein_e2(order: i64) -> Series {
    eisenstein_e2_scaled(1, order)
}

/// `E2(scale * tau)`.
pub fn eisenstein_e2_scaled(scale: u32, order: i64) -> Series {
    let step = Q * scale as i64;
    let mut terms = vec![(0, GaussRat::one())];
    let mut n = 1u64;
    while (n as i64) * step < order {
        terms.push((n as i64 * step, GaussRat::from_int(-24 * sigma1(n) as i64)));
        n += 1;
    }
    Series::from_terms(terms, order)
}

/// `E*(4 tau) = 16 Theta_2^4 + Theta_3^4`.
pub fn e_star(order: i64) -> Series {
    let t2 = theta_big(2, Q + order).expect("valid index");
    let t3 = theta_big(3, order).expect("valid index");
    let t2_4 = t2.pow_int(4).expect("k > 0");
    let t3_4 = t3.pow_int(4).expect("k > 0");
    (&t2_4.scale(&GaussRat::from_int(16)) + &t3_4).truncate(order)
}

/// `Z0hat = E*(4 tau) / (Theta_2 Theta_3)^2`, leading term `q^-2`.
pub fn z0_hat(order: i64) -> Series {
    let rel = order + 2 * Q;
    let t2 = theta_big(2, Q + rel).expect("valid index");
    let t3 = theta_big(3, rel).expect("valid index");
    let denom = (&t2 * &t3).pow_int(-2).expect("Theta_2 Theta_3 = q + ...");
    &e_star(rel) * &denom
}

/// `Theta_4^9 / (Theta_2 Theta_3 eta(8 tau)^3)`.
///
/// This equals `-(1/2) q d/dq Z0hat` exactly; both have leading term
/// proportional to `q^-2`, with coefficients `1` and `-2` respectively.
pub fn z0_hat_derivative_quotient(order: i64) -> Series {
    let rel = order + 2 * Q;
    let t2 = theta_big(2, Q + rel).expect("valid index");
    let t3 = theta_big(3, rel).expect("valid index");
    let t4 = theta_big(4, rel).expect("valid index");
    let e8 = eta_quotient(&EtaQuotientSpec::new(&[(8, 3)]), Q + rel);
    let denom = (&(&t2 * &t3) * &e8).invert().expect("leading term q^2");
    &t4.pow_int(9).expect("k > 0") * &denom
}

/// `(Theta_2 Theta_3)^-k` with relative precision `rel`.
pub(crate) fn theta23_power(k: i64, rel: i64) -> Series {
    let t2 = theta_big(2, Q + rel).expect("valid index");
    let t3 = theta_big(3, rel).expect("valid index");
    (&t2 * &t3).pow_int(-k).expect("Theta_2 Theta_3 = q + ...")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;

    fn int_terms(s: &Series) -> Vec<(i64, i64)> {
        s.terms().map(|(e, c)| (e, i64::try_from(c.re.to_integer()).unwrap())).collect()
    }

    /// Product-side oracle for eta(k tau): expand prod (1 - q^(kn)) directly.
    fn eta_product_oracle(k: i64, order_q: i64) -> Vec<i64> {
        let n = order_q as usize;
        let mut c = vec![0i64; n];
        c[0] = 1;
        let mut j = k;
        while (j as usize) < n {
            for i in (j as usize..n).rev() {
                c[i] -= c[i - j as usize];
            }
            j += k;
        }
        c
    }

    #[test]
    fn eta_matches_product_expansion() {
        for k in [1i64, 2, 8] {
            let s = eta(k as u32, k + 60 * Q);
            let oracle = eta_product_oracle(k, 60);
            for (i, want) in oracle.iter().enumerate() {
                let got = s.coefficient(k + Q * i as i64).unwrap();
                assert_eq!(got, GaussRat::from_int(*want), "k={k} i={i}");
            }
        }
    }

    #[test]
    fn eta8_cubed() {
        let s = eta(8, 24 * 60).pow_int(3).unwrap();
        let t = int_terms(&s);
        assert_eq!(&t[..4], &[(24, 1), (24 * 9, -3), (24 * 25, 5), (24 * 49, -7)]);
    }

    #[test]
    fn eta1_leading_term() {
        assert_eq!(eta(1, 100).valuation(), Some(1));
    }

    #[test]
    fn a_and_b_forms() {
        let a = eta_quotient(&EtaQuotientSpec::a_form(), 24 * 20);
        let b = eta_quotient(&EtaQuotientSpec::b_form(), 24 * 20);
        assert_eq!(&int_terms(&a)[..4], &[(-24, 1), (72, -8), (168, 27), (264, -56)]);
        assert_eq!(&int_terms(&b)[..3], &[(-24, 1), (168, -5), (360, 9)]);
        assert_eq!(a.prec(), 24 * 20);
    }

    #[test]
    fn empty_eta_quotient_is_one() {
        assert_eq!(eta_quotient(&EtaQuotientSpec::new(&[]), 48), Series::one(48));
    }

    #[test]
    fn big_thetas_match_sums() {
        let order = 24 * 200;
        let t2 = theta_big(2, order).unwrap();
        let t3 = theta_big(3, order).unwrap();
        let t4 = theta_big(4, order).unwrap();
        let mut s2 = Vec::new();
        let mut s3 = vec![(0, GaussRat::one())];
        let mut s4 = vec![(0, GaussRat::one())];
        for n in 0..20i64 {
            s2.push((24 * (2 * n + 1) * (2 * n + 1), GaussRat::one()));
            if n > 0 {
                s3.push((24 * 4 * n * n, GaussRat::from_int(2)));
                s4.push((24 * 4 * n * n, GaussRat::from_int(if n % 2 == 0 { 2 } else { -2 })));
            }
        }
        assert_eq!(t2, Series::from_terms(s2, order));
        assert_eq!(t3, Series::from_terms(s3, order));
        assert_eq!(t4, Series::from_terms(s4, order));
    }

    #[test]
    fn theta_char_examples() {
        let order = 24 * 10;
        let t = theta_char(ThetaChar::ONE, HalfPeriodPoint::HALF, order);
        assert_eq!(t, -&theta_nullwert(2, order).unwrap());
        let t3 = theta_nullwert(3, order).unwrap();
        assert_eq!(&int_terms(&t3)[..3], &[(0, 1), (12, 2), (48, 2)]);
        let t4 = theta_nullwert(4, order).unwrap();
        assert_eq!(&int_terms(&t4)[..3], &[(0, 1), (12, -2), (48, 2)]);
        let t1 = theta_char(ThetaChar::ONE, HalfPeriodPoint::TAU_HALF, order);
        assert_eq!(t1.valuation(), Some(-3));
        assert_eq!(t1.coefficient(-3).unwrap(), -GaussRat::i());
    }

    /// Direct termwise oracle over a wide symmetric n-range.
    fn theta_oracle(ch: ThetaChar, v: HalfPeriodPoint, order: i64) -> Series {
        let mut terms = Vec::new();
        for n in -60i64..60 {
            let m = 2 * n + ch.a as i64;
            let e = Rational::new((m * m).into(), 8.into()) + Rational::new((m * v.s2).into(), 4.into());
            let e24 = (e * Rational::from_integer(24.into())).to_integer();
            let e24 = i64::try_from(e24).unwrap();
            // e^(pi i m (r + b/2)) with r + b/2 = (r2 + b)/2
            let quarter_turns = m * (v.r2 + ch.b as i64);
            terms.push((e24, GaussRat::i_pow(quarter_turns)));
        }
        Series::from_terms(terms, order)
    }

    #[test]
    fn theta_char_against_oracle() {
        for a in 0..2u8 {
            for b in 0..2u8 {
                for r2 in -2..3 {
                    for s2 in -2..3 {
                        let ch = ThetaChar::new(a, b).unwrap();
                        let v = HalfPeriodPoint::from_halves(r2, s2);
                        assert_eq!(theta_char(ch, v, 300), theta_oracle(ch, v, 300), "{ch:?} {v:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn phase_error_for_third_periods() {
        let err = HalfPeriodPoint::new(Ratio::new(1, 3), Ratio::new(0, 1)).unwrap_err();
        assert_eq!(err, Error::PhaseError("r"));
        assert!(HalfPeriodPoint::new(Ratio::new(3, 2), Ratio::new(-1, 2)).is_ok());
    }

    #[test]
    fn e2_coefficients() {
        let e2 = eisenstein_e2(24 * 5);
        assert_eq!(e2.coefficient(24).unwrap(), GaussRat::from_int(-24));
        assert_eq!(e2.coefficient(48).unwrap(), GaussRat::from_int(-72));
        assert_eq!(e2.coefficient(72).unwrap(), GaussRat::from_int(-96));
        assert_eq!(sigma1(12), 28);
        assert_eq!(sigma1(1), 1);
    }

    #[test]
    fn e_star_leading_terms() {
        let e = e_star(24 * 20);
        assert_eq!(e.constant_term().unwrap(), GaussRat::one());
        assert_eq!(e.coefficient(24 * 4).unwrap(), GaussRat::from_int(24));
        assert_eq!(e.coefficient(24 * 8).unwrap(), GaussRat::from_int(24));
        // E*(4 tau) lives in Z[[q^4]]: no q^2 term
        assert!(e.coefficient(24 * 2).unwrap().is_zero());
        assert_eq!(e.first_exponent_off(24 * 4), None);
    }

    #[test]
    fn z0_hat_shape() {
        let z = z0_hat(24 * 30);
        assert_eq!(z.valuation(), Some(-48));
        assert_eq!(z.coefficient(-48).unwrap(), GaussRat::one());
        assert_eq!(z.first_exponent_off(48), None);
        assert_eq!(z.prec(), 24 * 30);
    }

    #[test]
    fn z0_hat_derivative_is_minus_two_times_theta_quotient() {
        let order = 24 * 40;
        let lhs = z0_hat(order).q_derive();
        let rhs = z0_hat_derivative_quotient(order).scale(&GaussRat::from_int(-2));
        assert_eq!(lhs, rhs);
    }
}
