//! The u-plane constant-term functional `D_{m,2n}[M+]`, the SO(3)-Donaldson
//! invariants of CP² it produces, and the `Z0hat`-polynomial machinery
//! behind the vanishing of `D_{m,2n}` on differences of mock modular forms.
//!
//! Two independent evaluations of `Phi_{m,2n}` exist:
//!
//! * the theta form, in the variable `tau`:
//!   `D_{m,2n}[M+] = sum_k (-1)^(k+1) / (2^(n-1) 3^n) (2n)!/((n-k)! k!)
//!    [theta_4^9 (theta_2^4 + theta_3^4)^(m+n-k) / (theta_2 theta_3)^(2m+2n+3) E^k[M+]]_{q^0}`;
//! * the generating-function form, in the variable `8 tau`:
//!   `Z(p, S) = - sum p^m S^(2n) / (2^(2m+3n+4) 3^(n+1) m! n!)
//!    [W sum_k (-1)^k C(n,k) Z0hat^(m+n-k) Ehat^k[H(8 tau)]]_{q^0}`,
//!   with `W = Theta_4^9 / (Theta_2 Theta_3 eta(8 tau)^3)`.
//!
//! `W` equals `-(1/2) q d/dq Z0hat`, not `q d/dq Z0hat`: the leading terms are
//! `q^-2` and `-2 q^-2`. Using the plain derivative scales every invariant
//! by `-2`; [`DerivativeFactor`] selects either so the discrepancy can be
//! inspected.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::brackets::{bracket_hat, cohen_bracket};
use crate::error::{Error, Result};
use crate::forms::{theta_nullwert, z0_hat, z0_hat_derivative_quotient};
use crate::gauss::GaussRat;
use crate::mock::{h_series, mock_from_coefficients, q_plus, q_plus_rescaled, MockSeries};
use crate::series::{Series, Q};
use crate::Rational;

/// Extra lattice units requested beyond the exact pole budget.
pub const SAFETY_MARGIN: i64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    /// Theta form applied to `Q+(tau/8)`.
    QplusTau8,
    /// Theta form applied to `H(tau)/12`.
    HOver12,
    /// Generating-function form built from `H(8 tau)`.
    FinalFormula,
}

impl Route {
    pub fn label(self) -> &'static str {
        match self {
            Route::QplusTau8 => "QplusTau8",
            Route::HOver12 => "HOver12",
            Route::FinalFormula => "FinalFormula",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRecord {
    pub m: u32,
    pub n: u32,
    pub value: Rational,
    pub route: Route,
}

/// Which series stands in front of the generating-function form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeFactor {
    /// `Theta_4^9 / (Theta_2 Theta_3 eta(8 tau)^3)`.
    ThetaQuotient,
    /// `q d/dq Z0hat`, equal to `-2` times the theta quotient.
    QDerivative,
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn pow_rat(base: i64, exp: i64) -> Rational {
    let b = Rational::from_integer(base.into());
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        num_traits::pow(b.recip(), (-exp) as usize)
    }
}

fn real_constant_term(s: &Series) -> Result<Rational> {
    if s.prec() <= 0 {
        return Err(Error::NeedsOrder { needed: 1, available: s.prec() });
    }
    let c = s.constant_term()?;
    if !c.is_real() {
        return Err(Error::NonRealCoefficient { exp: 0 });
    }
    Ok(c.re)
}

/// Valuation of `theta_4^9 (theta_2^4 + theta_3^4)^(m+n-k) / (theta_2 theta_3)^(2m+2n+3)`.
fn theta_weight_valuation(m: u32, n: u32) -> i64 {
    -3 * (2 * (m + n) as i64 + 3)
}

/// Absolute order (lattice units) an input `M+` must be known to for
/// [`u_plane_coefficient`] at `(m, n)`. Independent of the valuation of `M+`.
pub fn required_order(m: u32, n: u32) -> i64 {
    1 - theta_weight_valuation(m, n) + SAFETY_MARGIN
}

/// `D_{m,2n}[M+]` from the theta form.
pub fn u_plane_coefficient(mplus: &Series, m: u32, n: u32) -> Result<Rational> {
    let needed = required_order(m, n);
    if mplus.prec() < needed {
        return Err(Error::NeedsOrder { needed, available: mplus.prec() });
    }
    let Some(val) = mplus.valuation() else {
        return Ok(Rational::zero());
    };
    if theta_weight_valuation(m, n) + val > 0 {
        return Ok(Rational::zero());
    }
    let rel = 1 - (theta_weight_valuation(m, n) + val) + SAFETY_MARGIN;
    let mplus = mplus.truncate(val + rel);

    let t2 = theta_nullwert(2, 3 + rel)?;
    let t3 = theta_nullwert(3, rel)?;
    let t4 = theta_nullwert(4, rel)?;
    let total = (m + n) as i64;
    let base = &t4.pow_int(9)? * &(&t2 * &t3).pow_int(-(2 * total + 3))?;
    let quartic = &t2.pow_int(4)? + &t3.pow_int(4)?;

    let prefactor = pow_rat(2, 1 - n as i64) * pow_rat(3, -(n as i64)) * Rational::from_integer(factorial(2 * n));
    let mut sum = Rational::zero();
    for k in 0..=n {
        let bracket = cohen_bracket(&mplus, k as i64)?;
        let x = &(&base * &quartic.pow_int(total - k as i64)?) * &bracket;
        let c = real_constant_term(&x)?;
        let weight = Rational::new(
            if k % 2 == 1 { BigInt::one() } else { -BigInt::one() },
            factorial(n - k) * factorial(k),
        );
        sum += weight * c;
    }
    Ok(prefactor * sum)
}

/// Largest `j` for which the basis mock `q^(-1/8 + j/2)` can reach the
/// constant term of `D_{m,2n}`; higher `H_j` never contribute.
pub fn column_support(m: u32, n: u32) -> u32 {
    (m + n) / 2 + 1
}

/// Coefficients of `D_{m,2n}` on `H_0, ..., H_{k_max}`.
pub fn column_extract(m: u32, n: u32, k_max: u32) -> Result<Vec<Rational>> {
    let order = required_order(m, n).max(-3 + 12 * k_max as i64 + 1);
    (0..=k_max)
        .map(|j| {
            let mut values = vec![Rational::zero(); j as usize + 1];
            values[j as usize] = Rational::one();
            u_plane_coefficient(mock_from_coefficients(&values, order).series(), m, n)
        })
        .collect()
}

/// `Phi_{m,2n}` from the generating-function form, with `h` the series of
/// `H(tau)` in the variable `tau`.
pub fn closing_formula_coefficient(h: &Series, m: u32, n: u32, factor: DerivativeFactor) -> Result<Rational> {
    let h8 = h.rescale_exponents(8, 1)?;
    let Some(val) = h8.valuation() else {
        return Ok(Rational::zero());
    };
    let total = (m + n) as i64;
    // W, Z0hat^(m+n-k) and Ehat^k have valuations -2Q, -2Q(m+n-k) and Q - 2Q(k+1) + val
    let pole = -2 * Q * (total + 2) + Q + val;
    let rel = 1 - pole + SAFETY_MARGIN;
    if h8.relative_prec() < rel {
        return Err(Error::NeedsOrder { needed: (val + rel + 7) / 8, available: h.prec() });
    }
    let h8 = h8.truncate(val + rel);
    let w = match factor {
        DerivativeFactor::ThetaQuotient => z0_hat_derivative_quotient(-2 * Q + rel),
        DerivativeFactor::QDerivative => z0_hat(-2 * Q + rel).q_derive(),
    };
    let z0 = z0_hat(-2 * Q + rel);

    let mut sum = Rational::zero();
    for k in 0..=n {
        let ehat = bracket_hat(&h8, k as i64)?;
        let x = &(&w * &z0.pow_int(total - k as i64)?) * &ehat;
        let c = real_constant_term(&x)?;
        let signed = Rational::from_integer(binomial(n, k)) * c;
        if k % 2 == 0 {
            sum += signed;
        } else {
            sum -= signed;
        }
    }
    // coefficient of p^m S^(2n) in Z(p, S), then Phi = m! (2n)! times it
    let denom = pow_rat(2, 2 * m as i64 + 3 * n as i64 + 4)
        * pow_rat(3, n as i64 + 1)
        * Rational::from_integer(factorial(m) * factorial(n));
    let z_coeff = -(sum / denom);
    Ok(z_coeff * Rational::from_integer(factorial(m) * factorial(2 * n)))
}

/// The mock modular inputs shared by every `(m, n)` up to a total degree.
#[derive(Clone, Debug)]
pub struct Inputs {
    pub max_total: u32,
    /// `H(tau)`
    pub h: MockSeries,
    /// `H(tau)/12`
    pub h_over_12: MockSeries,
    /// `Q+(tau/8)`
    pub q_plus: MockSeries,
}

impl Inputs {
    pub fn new(max_total: u32) -> Result<Self> {
        let order = required_order(max_total, 0);
        let h = h_series(order)?;
        let h_over_12 = h.scale(&Rational::new(BigInt::one(), BigInt::from(12)));
        let q_plus = q_plus_rescaled(order)?;
        Ok(Inputs { max_total, h, h_over_12, q_plus })
    }

    pub fn phi(&self, m: u32, n: u32, route: Route) -> Result<Rational> {
        match route {
            Route::QplusTau8 => u_plane_coefficient(self.q_plus.series(), m, n),
            Route::HOver12 => u_plane_coefficient(self.h_over_12.series(), m, n),
            Route::FinalFormula => closing_formula_coefficient(self.h.series(), m, n, DerivativeFactor::ThetaQuotient),
        }
    }

    /// `D_{m,2n}[Q+(tau/8) - H(tau)/12]`, zero by the kernel theorem.
    pub fn kernel_check(&self, m: u32, n: u32) -> Result<Rational> {
        let diff = self.q_plus.series() - self.h_over_12.series();
        u_plane_coefficient(&diff, m, n)
    }
}

/// `D_{m,2n}[Q+(tau/8) - H(tau)/12]`.
pub fn kernel_check(m: u32, n: u32) -> Result<Rational> {
    Inputs::new(m + n)?.kernel_check(m, n)
}

/// All `Phi_{m,2n}` with `m + n <= max_total`, computed along every route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingFunction {
    pub max_total: u32,
    pub records: Vec<InvariantRecord>,
}

impl GeneratingFunction {
    pub fn phi(&self, m: u32, n: u32) -> Option<&Rational> {
        self.records.iter().find(|r| r.m == m && r.n == n).map(|r| &r.value)
    }

    /// `Z(p,S) = sum Phi_{m,2n} p^m/m! S^(2n)/(2n)!` over the nonzero entries.
    pub fn format_z(&self) -> String {
        let mut out = String::from("Z(p,S) =");
        let mut first = true;
        for r in self.records.iter().filter(|r| r.route == Route::FinalFormula && !r.value.is_zero()) {
            let sign = if r.value.is_negative() { "-" } else { "+" };
            if first {
                let _ = write!(out, " {}", if r.value.is_negative() { "-" } else { "" });
            } else {
                let _ = write!(out, " {sign} ");
            }
            first = false;
            let _ = write!(out, "{}", r.value.abs());
            if r.m > 0 {
                let _ = write!(out, " p^{}/{}!", r.m, r.m);
            }
            if r.n > 0 {
                let _ = write!(out, " S^{}/{}!", 2 * r.n, 2 * r.n);
            }
        }
        if first {
            out.push_str(" 0");
        }
        out.push_str(" + ...");
        out
    }
}

/// Every `(m, n)` with `m + n <= max_total`, ordered by total degree then `n`.
pub fn grid(max_total: u32) -> Vec<(u32, u32)> {
    let mut cells = Vec::new();
    for total in 0..=max_total {
        for n in 0..=total {
            cells.push((total - n, n));
        }
    }
    cells
}

/// Computes every route on the grid and fails with [`Error::RouteMismatch`]
/// unless all of them agree.
pub fn generating_function(max_total: u32) -> Result<GeneratingFunction> {
    let inputs = Inputs::new(max_total)?;
    let mut records = Vec::new();
    for (m, n) in grid(max_total) {
        let a = inputs.phi(m, n, Route::HOver12)?;
        let b = inputs.phi(m, n, Route::FinalFormula)?;
        let q = inputs.phi(m, n, Route::QplusTau8)?;
        if a != b || a != q {
            return Err(Error::RouteMismatch { m, n });
        }
        for (route, value) in [(Route::QplusTau8, q), (Route::HOver12, a), (Route::FinalFormula, b)] {
            records.push(InvariantRecord { m, n, value, route });
        }
    }
    Ok(GeneratingFunction { max_total, records })
}

/// `sum c_i Z0hat^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z0Polynomial {
    pub coefficients: Vec<Rational>,
}

impl Z0Polynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn expand(&self, order: i64) -> Series {
        let d = self.degree() as i64;
        let z = z0_hat(order + 2 * Q * (d - 1).max(0));
        let mut acc = Series::constant(GaussRat::real(self.coefficients[0].clone()), order);
        let mut power = Series::one(order + 2 * Q * d);
        for c in &self.coefficients[1..=self.degree()] {
            power = &power * &z;
            if !c.is_zero() {
                acc = &acc + &power.scale_rat(c);
            }
        }
        acc.truncate(order)
    }
}

/// Writes `f` in `C((q^2))` as a polynomial in `Z0hat` by cancelling the
/// leading pole with `c Z0hat^d` until only a constant is left, then checks
/// that nothing else survives below the precision of `f`.
pub fn z0_reduce(f: &Series, max_degree: u32) -> Result<Z0Polynomial> {
    if let Some(exp) = f.first_exponent_off(2 * Q) {
        return Err(Error::OddExponent { exp });
    }
    if f.prec() <= 0 {
        return Err(Error::NeedsOrder { needed: 1, available: f.prec() });
    }
    let z = z0_hat(f.prec() + 2 * Q * (max_degree as i64 - 1));
    let lead = z.coefficient(-2 * Q)?;
    assert!(z.valuation() == Some(-2 * Q) && lead == GaussRat::one(), "Z0hat must start with q^-2");
    let mut powers = vec![Series::one(f.prec() + 2 * Q * max_degree as i64)];
    for d in 1..=max_degree as usize {
        let next = &powers[d - 1] * &z;
        powers.push(next);
    }

    let mut coefficients = vec![Rational::zero(); max_degree as usize + 1];
    let mut rest = f.clone();
    while let Some(v) = rest.valuation() {
        if v > 0 {
            return Err(Error::NotPolynomialInZ0 { exp: v });
        }
        let d = -v / (2 * Q);
        if d > max_degree as i64 {
            return Err(Error::PoleOrderExceeded { order: -v / Q, max_degree });
        }
        let c = rest.coefficient(v)?;
        if !c.is_real() {
            return Err(Error::NonRealCoefficient { exp: v });
        }
        rest = &rest - &powers[d as usize].scale(&c);
        coefficients[d as usize] += &c.re;
        if v == 0 {
            break;
        }
    }
    if let Some(v) = rest.valuation() {
        return Err(Error::NotPolynomialInZ0 { exp: v });
    }
    Ok(Z0Polynomial { coefficients })
}

/// `Hcal_k = eta(8 tau)^3 / (Theta_2 Theta_3)^(2k+2) E^k[diff]` for an operand
/// `diff` given in the `8 tau` variable; checks membership in `C((q^2))`.
pub fn h_k_from_difference(diff8: &Series, k: u32) -> Result<Series> {
    let s = bracket_hat(diff8, k as i64)?;
    if let Some(exp) = s.first_exponent_off(2 * Q) {
        return Err(Error::OddExponent { exp });
    }
    Ok(s)
}

/// `Hcal_k` with `M = H/12`: the operand is `Q+(tau) - H(8 tau)/12`.
/// `order` bounds the result.
pub fn h_k_series(k: u32, order: i64) -> Result<Series> {
    let operand_order = order - Q + 2 * Q * (k as i64 + 1);
    let qp = q_plus(operand_order)?;
    let h_order = (operand_order + 3 + 7) / 8 + 1;
    let h8 = h_series(h_order)?.into_series().rescale_exponents(8, 1)?;
    let diff = (qp.series() - &h8.scale_frac(1, 12)).truncate(operand_order);
    Ok(h_k_from_difference(&diff, k)?.truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn needs_enough_input() {
        let h = h_series(24).unwrap();
        assert_eq!(
            u_plane_coefficient(h.series(), 2, 2).unwrap_err(),
            Error::NeedsOrder { needed: required_order(2, 2), available: 24 }
        );
    }

    #[test]
    fn zero_input_gives_zero() {
        assert_eq!(u_plane_coefficient(&Series::zero(200), 1, 1).unwrap(), Rational::zero());
    }

    #[test]
    fn small_table_entries() {
        let inputs = Inputs::new(2).unwrap();
        assert_eq!(inputs.phi(0, 0, Route::HOver12).unwrap(), frac(-1, 1));
        assert_eq!(inputs.phi(1, 1, Route::QplusTau8).unwrap(), frac(-5, 16));
        assert_eq!(inputs.phi(1, 0, Route::QplusTau8).unwrap(), Rational::zero());
        assert_eq!(inputs.phi(2, 0, Route::FinalFormula).unwrap(), frac(-19, 16));
    }

    #[test]
    fn literal_derivative_factor_scales_by_minus_two() {
        let inputs = Inputs::new(2).unwrap();
        for (m, n) in [(0, 0), (0, 2), (1, 1)] {
            let theta = closing_formula_coefficient(inputs.h.series(), m, n, DerivativeFactor::ThetaQuotient).unwrap();
            let deriv = closing_formula_coefficient(inputs.h.series(), m, n, DerivativeFactor::QDerivative).unwrap();
            assert_eq!(deriv, theta * frac(-2, 1));
        }
    }

    #[test]
    fn columns_of_low_rows() {
        assert_eq!(column_extract(0, 0, 1).unwrap(), [frac(6, 1), frac(-1, 4)]);
        assert_eq!(column_extract(2, 0, 2).unwrap(), [frac(411, 64), frac(-1, 4), frac(-1, 64)]);
        // beyond the support every entry vanishes
        let wide = column_extract(1, 1, 5).unwrap();
        assert!(wide[column_support(1, 1) as usize + 1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn column_dot_matches_direct() {
        let inputs = Inputs::new(2).unwrap();
        let col = column_extract(0, 2, column_support(0, 2)).unwrap();
        let dot: Rational = col.iter().enumerate().map(|(k, c)| c * inputs.q_plus.h_k(k as u32).unwrap()).sum();
        assert_eq!(dot, inputs.phi(0, 2, Route::QplusTau8).unwrap());
    }

    #[test]
    fn reduce_simple_inputs() {
        let z = z0_hat(24 * 20);
        let z2 = &z * &z;
        let p = z0_reduce(&z2, 3).unwrap();
        assert_eq!(p.coefficients, [Rational::zero(), Rational::zero(), Rational::one(), Rational::zero()]);
        let five = Series::constant(GaussRat::from_int(5), 24 * 10);
        assert_eq!(z0_reduce(&five, 0).unwrap().coefficients, [frac(5, 1)]);
    }

    #[test]
    fn reduce_rejects_odd_and_non_polynomial() {
        let odd = Series::monomial(GaussRat::one(), 24, 96);
        assert_eq!(z0_reduce(&odd, 2).unwrap_err(), Error::OddExponent { exp: 24 });
        let tail = Series::monomial(GaussRat::one(), 48, 96);
        assert_eq!(z0_reduce(&tail, 2).unwrap_err(), Error::NotPolynomialInZ0 { exp: 48 });
        let deep = Series::monomial(GaussRat::one(), -48 * 3, 96);
        assert!(matches!(z0_reduce(&deep, 2).unwrap_err(), Error::PoleOrderExceeded { .. }));
    }

    #[test]
    fn reduce_round_trip() {
        let p = Z0Polynomial { coefficients: vec![frac(3, 2), frac(-7, 1), Rational::zero(), frac(1, 3)] };
        let f = p.expand(24 * 12);
        assert_eq!(z0_reduce(&f, 3).unwrap(), p);
    }

    #[test]
    fn hcal_is_even_and_reduces() {
        for k in 0..3 {
            let h = h_k_series(k, 24 * 16).unwrap();
            assert_eq!(h.first_exponent_off(48), None);
            assert!(h.valuation().unwrap() >= -48 * (k as i64 + 1));
            assert!(z0_reduce(&h, k + 1).is_ok(), "k={k}");
        }
    }

    #[test]
    fn hcal_of_zero_difference() {
        let qp = q_plus(24 * 20).unwrap();
        let zero = qp.series() - qp.series();
        assert!(h_k_from_difference(&zero, 2).unwrap().is_zero());
    }

    #[test]
    fn z_formatting() {
        let gf = generating_function(2).unwrap();
        let z = gf.format_z();
        assert!(z.starts_with("Z(p,S) = -1 - 19/16 p^2/2!"), "{z}");
    }
}
