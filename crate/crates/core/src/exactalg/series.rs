//! Truncated formal power series with exact coefficients.
//!
//! A series records its truncation order `N` and holds exactly `N + 1`
//! coefficients. Binary operations truncate to the smaller order; nothing is
//! ever padded. The coefficient type is generic so that the same machinery
//! runs over plain rationals (polynomial pipelines) and over full rational
//! functions in `(t, u, s, k..)`.

use num_traits::{One, Zero};

use super::rational::Rational;
use super::scalar::ExactScalar;

/// Coefficient ring interface for truncated series.
pub trait Coeff: Clone + PartialEq + std::fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul_int(&self, n: i64) -> Self;
    fn div_int(&self, n: i64) -> Self;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_int(&self, n: i64) -> Self {
        self * Rational::from_integer(n.into())
    }
    fn div_int(&self, n: i64) -> Self {
        assert!(n != 0);
        self / Rational::from_integer(n.into())
    }
}

impl Coeff for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_int(&self, n: i64) -> Self {
        self.scale_rat(&Rational::from_integer(n.into()))
    }
    fn div_int(&self, n: i64) -> Self {
        ExactScalar::div_int(self, n)
    }
}

/// Errors raised by series operations with preconditions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series exp requires constant term 0, found {found}")]
    ExpNeedsZeroConstant { found: String },
    #[error("series log requires constant term 1, found {found}")]
    LogNeedsUnitConstant { found: String },
    #[error("coefficient index {requested} exceeds series order {order}")]
    OrderExceeded { requested: usize, order: usize },
}

/// Formal power series in `z`, truncated at a stated order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series<C: Coeff> {
    coeffs: Vec<C>, // coefficient of z^j at index j; length = order + 1
}

/// The default series over the full scalar field.
pub type TruncatedSeries = Series<ExactScalar>;

/// Series over plain rationals, used by the polynomial pipelines.
pub type RatSeries = Series<Rational>;

impl<C: Coeff> Series<C> {
    pub fn zero(order: usize) -> Series<C> {
        Series {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Series<C> {
        let mut s = Series::zero(order);
        s.coeffs[0] = C::one();
        s
    }

    /// Builds from coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<C>) -> Series<C> {
        assert!(!coeffs.is_empty(), "series needs at least the z^0 coefficient");
        Series { coeffs }
    }

    /// The monomial `c z^k`.
    pub fn monomial(c: C, k: usize, order: usize) -> Series<C> {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coefficient_at(&self, j: usize) -> Result<&C, SeriesError> {
        self.coeffs.get(j).ok_or(SeriesError::OrderExceeded {
            requested: j,
            order: self.order(),
        })
    }

    pub fn constant_term(&self) -> &C {
        &self.coeffs[0]
    }

    pub fn set_coeff(&mut self, j: usize, c: C) {
        assert!(j <= self.order());
        self.coeffs[j] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Series<C> {
        let keep = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    pub fn add(&self, other: &Series<C>) -> Series<C> {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n)
                .map(|j| self.coeffs[j].add(&other.coeffs[j]))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Series<C>) -> Series<C> {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n)
                .map(|j| self.coeffs[j].sub(&other.coeffs[j]))
                .collect(),
        }
    }

    pub fn neg(&self) -> Series<C> {
        Series {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Series<C>) -> Series<C> {
        let n = self.order().min(other.order());
        let mut out = Series::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Series<C> {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Formal derivative; the order drops by one.
    pub fn derivative(&self) -> Series<C> {
        if self.order() == 0 {
            return Series::zero(0);
        }
        Series {
            coeffs: (1..=self.order())
                .map(|j| self.coeffs[j].mul_int(j as i64))
                .collect(),
        }
    }

    /// `exp(f)` for `f(0) = 0`, truncated at the input order.
    pub fn exp(&self) -> Result<Series<C>, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpNeedsZeroConstant {
                found: self.coeffs[0].to_string(),
            });
        }
        let n = self.order();
        let mut out = Series::one(n);
        for m in 1..=n {
            // m * F_m = sum_{j=1..m} j * f_j * F_{m-j}
            let mut acc = C::zero();
            for j in 1..=m {
                if self.coeffs[j].is_zero() || out.coeffs[m - j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[j].mul_int(j as i64).mul(&out.coeffs[m - j]));
            }
            out.coeffs[m] = acc.div_int(m as i64);
        }
        Ok(out)
    }

    /// `log(f)` for `f(0) = 1`, truncated at the input order.
    pub fn log(&self) -> Result<Series<C>, SeriesError> {
        if self.coeffs[0] != C::one() {
            return Err(SeriesError::LogNeedsUnitConstant {
                found: self.coeffs[0].to_string(),
            });
        }
        let n = self.order();
        let mut out = Series::zero(n);
        for m in 1..=n {
            // g_m = f_m - (1/m) sum_{j=1..m-1} j * g_j * f_{m-j}
            let mut acc = C::zero();
            for j in 1..m {
                if out.coeffs[j].is_zero() || self.coeffs[m - j].is_zero() {
                    continue;
                }
                acc = acc.add(&out.coeffs[j].mul_int(j as i64).mul(&self.coeffs[m - j]));
            }
            out.coeffs[m] = self.coeffs[m].sub(&acc.div_int(m as i64));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    fn es(n: i64, d: i64) -> ExactScalar {
        ExactScalar::from_rational(rat(n, d))
    }

    #[test]
    fn exp_of_z_squared() {
        // exp(z^2) at order 4 = 1 + z^2 + z^4/2
        let f = TruncatedSeries::monomial(ExactScalar::one(), 2, 4);
        let e = f.exp().unwrap();
        assert_eq!(e.coeffs()[0], es(1, 1));
        assert_eq!(e.coeffs()[1], ExactScalar::zero());
        assert_eq!(e.coeffs()[2], es(1, 1));
        assert_eq!(e.coeffs()[3], ExactScalar::zero());
        assert_eq!(e.coeffs()[4], es(1, 2));
    }

    #[test]
    fn log_of_one_plus_z_squared() {
        // log(1 + z^2) at order 4 = z^2 - z^4/2
        let mut f = TruncatedSeries::one(4);
        f.set_coeff(2, ExactScalar::one());
        let l = f.log().unwrap();
        assert_eq!(l.coeffs()[2], es(1, 1));
        assert_eq!(l.coeffs()[4], es(-1, 2));
    }

    #[test]
    fn exp_log_round_trip() {
        // exp(log(1 + 3z + z^3)) at order 3
        let mut f = TruncatedSeries::one(3);
        f.set_coeff(1, es(3, 1));
        f.set_coeff(3, es(1, 1));
        let back = f.log().unwrap().exp().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn derivative_and_mul() {
        let z3 = RatSeries::monomial(rat(1, 1), 3, 4);
        let d = z3.derivative();
        assert_eq!(d.order(), 3);
        assert_eq!(d.coeffs()[2], rat(3, 1));
        // (1+z)(1-z) at order 2 = 1 - z^2
        let mut a = RatSeries::one(2);
        a.set_coeff(1, rat(1, 1));
        let mut b = RatSeries::one(2);
        b.set_coeff(1, rat(-1, 1));
        let p = a.mul(&b);
        assert_eq!(p.coeffs(), &[rat(1, 1), rat(0, 1), rat(-1, 1)]);
    }

    #[test]
    fn order_bookkeeping_truncates_to_min() {
        let a = RatSeries::one(5);
        let b = RatSeries::one(2);
        assert_eq!(a.mul(&b).order(), 2);
        assert_eq!(a.add(&b).order(), 2);
    }

    #[test]
    fn precondition_errors_name_constant_term() {
        let bad = TruncatedSeries::one(3);
        match bad.exp() {
            Err(SeriesError::ExpNeedsZeroConstant { found }) => assert_eq!(found, "1"),
            other => panic!("expected exp precondition error, got {other:?}"),
        }
        let bad2 = TruncatedSeries::monomial(es(5, 1), 0, 2);
        match bad2.log() {
            Err(SeriesError::LogNeedsUnitConstant { found }) => assert_eq!(found, "5"),
            other => panic!("expected log precondition error, got {other:?}"),
        }
    }

    #[test]
    fn coefficient_out_of_range() {
        let a = RatSeries::one(2);
        assert!(matches!(
            a.coefficient_at(3),
            Err(SeriesError::OrderExceeded { requested: 3, order: 2 })
        ));
    }
}
