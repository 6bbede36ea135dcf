//! Verification suites. Every check compares exact values; a check that
//! cannot be computed counts as failed and carries the error in its detail.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Result;
use crate::forms::{eta, theta_big, theta_nullwert, z0_hat, z0_hat_derivative_quotient, HalfPeriodPoint};
use crate::gauss::GaussRat;
use crate::mock::{elliptic_genus_check, elliptic_genus_theta_side, h_series, q_plus_rescaled};
use crate::moonshine::{decompose_bounded, decompose_distinct, verify_known_decompositions, LISTED_SUMS};
use crate::reference;
use crate::series::{Series, Q};
use crate::uplane::{column_extract, column_support, generating_function, h_k_series, z0_reduce, Inputs, Route};

/// Largest `m + n` covered by the kernel and route suites.
pub const MAX_TOTAL: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Published,
    Kernel,
    Jacobi,
    Genus,
    Moonshine,
    Routes,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Published, Suite::Kernel, Suite::Jacobi, Suite::Genus, Suite::Moonshine, Suite::Routes];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Published => "paper-table",
            Suite::Kernel => "kernel",
            Suite::Jacobi => "jacobi",
            Suite::Genus => "genus",
            Suite::Moonshine => "moonshine",
            Suite::Routes => "routes",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: impl Into<String>, outcome: Result<(bool, String)>) {
        let (passed, detail) = match outcome {
            Ok(pair) => pair,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(Check { suite: self.suite, name: name.into(), passed, detail });
    }

    fn equal<T: PartialEq + core::fmt::Display>(&mut self, name: impl Into<String>, got: Result<T>, want: T) {
        let outcome = got.map(|g| (g == want, format!("got {g}, want {want}")));
        self.record(name, outcome);
    }
}

/// `a - b` vanishes below `order` and both sides are known that far.
pub fn agree_to(a: &Series, b: &Series, order: i64) -> bool {
    a.prec() >= order && b.prec() >= order && (a - b).truncate(order).is_zero()
}

fn series_check(a: &Series, b: &Series, order: i64) -> (bool, String) {
    let diff = (a - b).truncate(order);
    let detail = match diff.valuation() {
        None if a.prec() >= order && b.prec() >= order => format!("equal below q^{}", crate::series::fmt_exponent(order)),
        None => String::from("not known far enough"),
        Some(e) => format!("first difference at q^{}", crate::series::fmt_exponent(e)),
    };
    (agree_to(a, b, order), detail)
}

/// `sum (-1)^n (2n+1) q^((2n+1)^2/8)`, in lattice units `3 (2n+1)^2`.
pub fn jacobi_eta_cubed_sum(order: i64) -> Series {
    let terms = (0..)
        .map(|n: i64| (3 * (2 * n + 1) * (2 * n + 1), n))
        .take_while(|&(e, _)| e < order)
        .map(|(e, n)| (e, GaussRat::from_int(if n % 2 == 0 { 2 * n + 1 } else { -(2 * n + 1) })));
    Series::from_terms(terms, order)
}

pub fn run(suite: Suite) -> Vec<Check> {
    let mut r = Recorder { suite, checks: Vec::new() };
    match suite {
        Suite::Published => published_table(&mut r),
        Suite::Kernel => kernel(&mut r),
        Suite::Jacobi => structural(&mut r),
        Suite::Genus => genus(&mut r),
        Suite::Moonshine => moonshine(&mut r),
        Suite::Routes => routes(&mut r),
    }
    r.checks
}

pub fn run_all() -> Vec<Check> {
    Suite::ALL.into_iter().flat_map(run).collect()
}

fn published_table(r: &mut Recorder) {
    let h_order = Q * 8 + 1;
    match h_series(h_order) {
        Ok(h) => {
            for (i, &a) in reference::A_N.iter().enumerate() {
                r.equal(format!("A_{}", i + 1), h.a_n(i as u32 + 1), reference::rat(a, 1));
            }
            let odd = h.series().terms().find(|(e, _)| (e + 3).rem_euclid(Q) != 0).map(|(e, _)| e);
            r.record("H has no odd half-powers", Ok((odd.is_none(), format!("{odd:?}"))));
        }
        Err(e) => r.record("H", Err(e)),
    }
    match q_plus_rescaled(Q * 3) {
        Ok(qp) => {
            for (k, &c) in reference::Q_PLUS_LEADING.iter().enumerate() {
                r.equal(format!("Q+(tau/8) H_{k}"), qp.h_k(k as u32), reference::rat(c, 1));
            }
        }
        Err(e) => r.record("Q+(tau/8)", Err(e)),
    }

    let inputs = match Inputs::new(MAX_TOTAL + 1) {
        Ok(i) => i,
        Err(e) => return r.record("inputs", Err(e)),
    };
    for &(m, n, num, den) in &reference::PHI_TABLE {
        for route in [Route::QplusTau8, Route::HOver12] {
            r.equal(format!("Phi({m},{n}) via {}", route.label()), inputs.phi(m, n, route), reference::rat(num, den));
        }
    }
    for &(m, n, _) in &reference::COLUMN_TABLE {
        let want = reference::column(m, n).unwrap_or_default();
        let got = column_extract(m, n, column_support(m, n));
        let outcome = got.map(|g| (g == want, format!("got {}", join(&g))));
        r.record(format!("column({m},{n})"), outcome);
    }
    for total in (1..=MAX_TOTAL + 1).step_by(2) {
        for n in 0..=total {
            let m = total - n;
            for route in [Route::QplusTau8, Route::HOver12] {
                r.equal(format!("parity D({m},{n}) via {}", route.label()), inputs.phi(m, n, route), Zero::zero());
            }
        }
    }
}

fn join(values: &[crate::Rational]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn kernel(r: &mut Recorder) {
    let inputs = match Inputs::new(MAX_TOTAL) {
        Ok(i) => i,
        Err(e) => return r.record("inputs", Err(e)),
    };
    for total in 0..=MAX_TOTAL {
        for n in 0..=total {
            let m = total - n;
            r.equal(format!("kernel({m},{n})"), inputs.kernel_check(m, n), Zero::zero());
        }
    }
}

fn structural(r: &mut Recorder) {
    let order = 200;
    let lhs = eta(1, order).pow_int(3);
    r.record("eta^3 = sum (-1)^n (2n+1) q^((2n+1)^2/8)", lhs.map(|l| series_check(&l, &jacobi_eta_cubed_sum(order), order)));

    let order = 128 * Q;
    let quartic = (|| {
        let t2 = theta_nullwert(2, order)?.pow_int(4)?;
        let t3 = theta_nullwert(3, order)?.pow_int(4)?;
        let t4 = theta_nullwert(4, order)?.pow_int(4)?;
        Ok(series_check(&(&t2 + &t4), &t3, order))
    })();
    r.record("theta_2^4 + theta_4^4 = theta_3^4", quartic);

    for j in [2u8, 3, 4] {
        let outcome = (|| {
            let small = theta_nullwert(j, order)?;
            let big = theta_big(j, 8 * order)?.rescale_exponents(1, 8)?;
            let big = if j == 2 { big.scale_frac(2, 1) } else { big };
            Ok(series_check(&small, &big, order))
        })();
        let factor = if j == 2 { "2 " } else { "" };
        r.record(format!("theta_{j}(tau) = {factor}Theta_{j}(tau/8)"), outcome);
    }

    // q d/dq Z0hat against the theta quotient: the two differ by the factor -2
    let derivative = z0_hat(order).q_derive();
    let quotient = z0_hat_derivative_quotient(order).scale_frac(-2, 1);
    r.record(
        "q d/dq Z0hat = -2 Theta_4^9/(Theta_2 Theta_3 eta(8 tau)^3)",
        Ok(series_check(&derivative, &quotient, order)),
    );

    for k in 0..=4u32 {
        let outcome = h_k_series(k, 16 * Q).and_then(|h| {
            let even = h.first_exponent_off(2 * Q).is_none();
            let poly = z0_reduce(&h, k + 1)?;
            Ok((even, format!("Z0hat polynomial {}", join(&poly.coefficients))))
        });
        r.record(format!("Hcal_{k} is a polynomial in Z0hat"), outcome);
    }
}

fn genus(r: &mut Recorder) {
    let order = 64 * Q;
    for (label, v) in [("1/2", HalfPeriodPoint::HALF), ("(1+tau)/2", HalfPeriodPoint::ONE_TAU_HALF)] {
        let outcome = elliptic_genus_check(v, order).map(|d| series_check(&d, &Series::zero(order), order));
        r.record(format!("elliptic genus at z = {label}"), outcome);
    }
    let outcome = elliptic_genus_theta_side(HalfPeriodPoint::ZERO, order)
        .map(|s| series_check(&s, &Series::constant(GaussRat::from_int(24), order), order));
    r.record("elliptic genus at z = 0 is 24", outcome);
}

fn moonshine(r: &mut Recorder) {
    let outcome = h_series(Q * 8).and_then(|h| verify_known_decompositions(&h)).map(|rep| {
        let computed: Vec<String> = rep.computed.iter().map(ToString::to_string).collect();
        (rep.passed(), format!("A_1..A_7 = {}", computed.join(", ")))
    });
    r.record("A_1..A_5 are dimensions, A_6 and A_7 are listed sums", outcome);
    for &(n, parts) in &LISTED_SUMS {
        let target: u64 = parts.iter().sum();
        let mut want = parts.to_vec();
        want.sort_unstable();
        let got = decompose_distinct(target).map(|w| w.parts());
        r.record(
            format!("distinct witness for A_{n}"),
            Ok((got.as_ref() == Some(&want), format!("{got:?}"))),
        );
    }
    let b = decompose_bounded(24, 1, 16);
    let found = b.witnesses.iter().any(|w| w.parts() == [1, 23]);
    r.record("24 = 1 + 23", Ok((found, format!("count {}", b.count))));
}

fn routes(r: &mut Recorder) {
    let outcome = generating_function(MAX_TOTAL).map(|gf| (true, format!("{} records agree", gf.records.len())));
    r.record(format!("all routes agree for m + n <= {MAX_TOTAL}"), outcome);
}
