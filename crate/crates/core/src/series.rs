//! Truncated Laurent series on the exponent lattice `(1/24)Z` with
//! Gaussian-rational coefficients and an explicit absolute precision.
//!
//! A [`Series`] stores a dense coefficient vector starting at `min_exp` and
//! asserts correctness for every exponent strictly below `prec` (both in
//! lattice units). Coefficients below `min_exp` are exactly zero.
//!
//! Precision follows one rule: for a product, `prec = min(a.prec + val(b),
//! b.prec + val(a))`, where `val` is the first nonzero exponent (or `prec`
//! when nothing nonzero is known). Sums take the smaller precision.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gauss::GaussRat;
use crate::Rational;

/// Exponent lattice denominator: one lattice unit is `q^(1/24)`.
pub const LATTICE_DEN: i64 = 24;

/// Lattice units per whole power of `q`.
pub const Q: i64 = LATTICE_DEN;

#[derive(Clone, Debug)]
pub struct Series {
    min_exp: i64,
    prec: i64,
    coeffs: Vec<GaussRat>,
}

impl Series {
    /// Dense constructor. `coeffs.len()` must equal `prec - min_exp`.
    pub fn new(min_exp: i64, prec: i64, coeffs: Vec<GaussRat>) -> Result<Self> {
        if min_exp > prec || coeffs.len() as i64 != prec - min_exp {
            return Err(Error::InvalidArgument("coefficient count must equal prec - min_exp"));
        }
        Ok(Series { min_exp, prec, coeffs })
    }

    pub fn zero(prec: i64) -> Self {
        Series { min_exp: prec, prec, coeffs: Vec::new() }
    }

    pub fn constant(c: GaussRat, prec: i64) -> Self {
        Self::monomial(c, 0, prec)
    }

    pub fn one(prec: i64) -> Self {
        Self::constant(GaussRat::one(), prec)
    }

    /// `c q^(exp/24) + O(q^(prec/24))`.
    pub fn monomial(c: GaussRat, exp: i64, prec: i64) -> Self {
        Self::from_terms([(exp, c)], prec)
    }

    /// Builds a series from sparse terms. Terms at or above `prec` are
    /// dropped and repeated exponents are summed.
    pub fn from_terms<I>(terms: I, prec: i64) -> Self
    where
        I: IntoIterator<Item = (i64, GaussRat)>,
    {
        let terms: Vec<(i64, GaussRat)> = terms.into_iter().filter(|(e, _)| *e < prec).collect();
        let min_exp = terms.iter().map(|(e, _)| *e).min().unwrap_or(prec);
        let mut coeffs = vec![GaussRat::zero(); (prec - min_exp) as usize];
        for (e, c) in terms {
            coeffs[(e - min_exp) as usize] += &c;
        }
        Series { min_exp, prec, coeffs }
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussRat)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Exponent of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<i64> {
        self.terms().next().map(|(e, _)| e)
    }

    fn val_or_prec(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    /// Number of lattice units known past the valuation.
    pub fn relative_prec(&self) -> i64 {
        self.prec - self.val_or_prec()
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn coefficient(&self, exp: i64) -> Result<GaussRat> {
        if exp >= self.prec {
            return Err(Error::InsufficientPrecision { requested: exp, prec: self.prec });
        }
        if exp < self.min_exp {
            return Ok(GaussRat::zero());
        }
        Ok(self.coeffs[(exp - self.min_exp) as usize].clone())
    }

    pub fn constant_term(&self) -> Result<GaussRat> {
        self.coefficient(0)
    }

    /// Lowers the precision to `prec` (no-op when already lower).
    pub fn truncate(&self, prec: i64) -> Series {
        if prec >= self.prec {
            return self.clone();
        }
        let min_exp = self.min_exp.min(prec);
        let keep = (prec - min_exp) as usize;
        Series { min_exp, prec, coeffs: self.coeffs[..keep].to_vec() }
    }

    /// Trims leading zeros so that `min_exp` is the valuation.
    pub fn normalized(&self) -> Series {
        let v = self.val_or_prec();
        let skip = (v - self.min_exp) as usize;
        Series { min_exp: v, prec: self.prec, coeffs: self.coeffs[skip..].to_vec() }
    }

    pub fn scale(&self, c: &GaussRat) -> Series {
        self.map_coeffs(|x| x * c)
    }

    pub fn scale_rat(&self, r: &Rational) -> Series {
        self.map_coeffs(|x| x.scale(r))
    }

    pub fn scale_frac(&self, num: i64, den: i64) -> Series {
        self.scale_rat(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn map_coeffs(&self, f: impl Fn(&GaussRat) -> GaussRat) -> Series {
        Series {
            min_exp: self.min_exp,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| if c.is_zero() { GaussRat::zero() } else { f(c) }).collect(),
        }
    }

    /// Multiplies by `q^(shift/24)`.
    pub fn shift(&self, shift: i64) -> Series {
        Series { min_exp: self.min_exp + shift, prec: self.prec + shift, coeffs: self.coeffs.clone() }
    }

    fn nonzero(&self) -> Vec<(i64, &GaussRat)> {
        self.terms().collect()
    }

    /// Multiplicative inverse. The result has valuation `-val(self)` and the
    /// same relative precision.
    pub fn invert(&self) -> Result<Series> {
        let v = self.valuation().ok_or(Error::NotInvertible { prec: self.prec })?;
        let rel = (self.prec - v) as usize;
        let lead = self.coefficient(v)?;
        let lead_inv = lead.inv()?;
        let tail: Vec<(usize, &GaussRat)> =
            self.terms().skip(1).map(|(e, c)| ((e - v) as usize, c)).collect();
        let mut out: Vec<GaussRat> = Vec::with_capacity(rel);
        out.push(lead_inv.clone());
        for t in 1..rel {
            let mut acc = GaussRat::zero();
            for &(j, a) in &tail {
                if j > t {
                    break;
                }
                let b = &out[t - j];
                if !b.is_zero() {
                    acc.mul_add_assign(a, b);
                }
            }
            out.push(if acc.is_zero() { acc } else { -(&acc * &lead_inv) });
        }
        Ok(Series { min_exp: -v, prec: self.prec - 2 * v, coeffs: out })
    }

    /// Integer power by binary exponentiation; negative powers go through
    /// [`Series::invert`].
    pub fn pow_int(&self, k: i64) -> Result<Series> {
        if k < 0 {
            return self.invert()?.pow_int(-k);
        }
        if k == 0 {
            return Ok(Series::one(self.relative_prec()));
        }
        let mut base = self.clone();
        let mut acc: Option<Series> = None;
        let mut k = k as u64;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = &base * &base;
        }
        Ok(acc.expect("k > 0"))
    }

    /// Applies `q d/dq`: the coefficient at `q^(e/24)` is multiplied by `e/24`.
    pub fn q_derive(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.min_exp + i as i64;
                if c.is_zero() || e == 0 {
                    GaussRat::zero()
                } else {
                    c.scale(&Rational::new(BigInt::from(e), BigInt::from(LATTICE_DEN)))
                }
            })
            .collect();
        Series { min_exp: self.min_exp, prec: self.prec, coeffs }
    }

    /// Substitutes `q -> q^(num/den)`.
    pub fn rescale_exponents(&self, num: i64, den: i64) -> Result<Series> {
        if num <= 0 || den <= 0 {
            return Err(Error::InvalidArgument("rescale factors must be positive"));
        }
        let mut terms = Vec::new();
        for (e, c) in self.terms() {
            if (e * num) % den != 0 {
                return Err(Error::LatticeError { exp: e, num, den });
            }
            terms.push((e * num / den, c.clone()));
        }
        let prec = Integer::div_ceil(&(self.prec * num), &den);
        let min_exp = Integer::div_ceil(&(self.min_exp * num), &den).min(prec);
        let mut out = Series { min_exp, prec, coeffs: vec![GaussRat::zero(); (prec - min_exp) as usize] };
        for (e, c) in terms {
            out.coeffs[(e - min_exp) as usize] = c;
        }
        Ok(out)
    }

    /// Keeps the terms whose integral q-exponent is congruent to `r` mod `m`.
    pub fn sieve(&self, r: i64, m: i64) -> Result<Series> {
        if m <= 0 {
            return Err(Error::InvalidArgument("sieve modulus must be positive"));
        }
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_exp + i as i64;
            if e % Q != 0 {
                return Err(Error::FractionalExponent { exp: e });
            }
            if (e / Q - r).rem_euclid(m) != 0 {
                *c = GaussRat::zero();
            }
        }
        Ok(out)
    }

    pub fn assert_real(&self) -> Result<RealSeries> {
        match self.terms().find(|(_, c)| !c.is_real()) {
            Some((exp, _)) => Err(Error::NonRealCoefficient { exp }),
            None => Ok(RealSeries(self.clone())),
        }
    }

    /// Exponents of nonzero terms must all be multiples of `step` lattice units.
    pub fn first_exponent_off(&self, step: i64) -> Option<i64> {
        self.terms().map(|(e, _)| e).find(|e| e.rem_euclid(step) != 0)
    }
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        if self.prec != other.prec {
            return false;
        }
        let lo = self.min_exp.min(other.min_exp);
        (lo..self.prec).all(|e| {
            let a = if e < self.min_exp { None } else { Some(&self.coeffs[(e - self.min_exp) as usize]) };
            let b = if e < other.min_exp { None } else { Some(&other.coeffs[(e - other.min_exp) as usize]) };
            match (a, b) {
                (Some(x), Some(y)) => x == y,
                (Some(x), None) | (None, Some(x)) => x.is_zero(),
                (None, None) => true,
            }
        })
    }
}

impl Eq for Series {}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let prec = self.prec.min(rhs.prec);
        let min_exp = self.min_exp.min(rhs.min_exp).min(prec);
        let mut coeffs = vec![GaussRat::zero(); (prec - min_exp) as usize];
        for s in [self, rhs] {
            for (e, c) in s.terms() {
                if e < prec {
                    coeffs[(e - min_exp) as usize] += c;
                }
            }
        }
        Series { min_exp, prec, coeffs }
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.map_coeffs(|c| -c)
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let va = self.val_or_prec();
        let vb = rhs.val_or_prec();
        let prec = (self.prec + vb).min(rhs.prec + va);
        let min_exp = (va + vb).min(prec);
        let mut coeffs = vec![GaussRat::zero(); (prec - min_exp) as usize];
        let nb = rhs.nonzero();
        for (ea, a) in self.terms() {
            for &(eb, b) in &nb {
                let e = ea + eb;
                if e >= prec {
                    break;
                }
                coeffs[(e - min_exp) as usize].mul_add_assign(a, b);
            }
        }
        Series { min_exp, prec, coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

/// Writes `e/24` in lowest terms.
pub(crate) fn fmt_exponent(e: i64) -> alloc::string::String {
    let g = e.gcd(&LATTICE_DEN);
    let (n, d) = (e / g, LATTICE_DEN / g);
    if d == 1 {
        alloc::format!("{n}")
    } else {
        alloc::format!("{n}/{d}")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in self.terms() {
            write!(f, "({c})q^({}) + ", fmt_exponent(e))?;
        }
        write!(f, "O(q^({}))", fmt_exponent(self.prec))
    }
}

/// A series whose known coefficients are all real.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealSeries(Series);

impl RealSeries {
    pub fn series(&self) -> &Series {
        &self.0
    }

    pub fn into_series(self) -> Series {
        self.0
    }

    pub fn coefficient(&self, exp: i64) -> Result<Rational> {
        Ok(self.0.coefficient(exp)?.re)
    }
}

impl core::ops::Deref for RealSeries {
    type Target = Series;
    fn deref(&self) -> &Series {
        &self.0
    }
}
