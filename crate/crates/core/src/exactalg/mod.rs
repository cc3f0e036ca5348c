//! Exact scalar arithmetic: big rationals, sparse multivariate polynomials in
//! `{t, u, s}` plus formal sequence symbols, normalized rational functions,
//! and truncated power series with exp/log/derivative.

pub mod multipoly;
pub mod rational;
pub mod scalar;
pub mod series;

pub use multipoly::{poly_gcd, MultiPoly, Var, NVARS, VAR_NAMES};
pub use rational::{
    binomial, factorial, rat, rat_from_str, rat_int, rat_to_decimal, rat_to_f64, rat_to_string,
    rising_factorial, Rational, RationalParseError,
};
pub use scalar::ExactScalar;
pub use series::{Coeff, RatSeries, Series, SeriesError, TruncatedSeries};

/// Deformation base used by the q-machinery: either `q = s^2` itself or
/// `q^(-1/2) = 1/s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QBase {
    /// Base `q`, represented by `s^2`.
    Q,
    /// Base `q^(-1/2)`, represented by `1/s`.
    QInvSqrt,
}

impl QBase {
    /// The base as a scalar.
    pub fn value(self) -> ExactScalar {
        match self {
            QBase::Q => ExactScalar::var(Var::S).pow(2),
            QBase::QInvSqrt => ExactScalar::var(Var::S).inv(),
        }
    }
}

/// Pochhammer symbol `(v)_n = v (v+1) ... (v+n-1)`; `(v)_0 = 1`.
pub fn pochhammer(v: &ExactScalar, n: usize) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for i in 0..n {
        acc = &acc * &(v + &ExactScalar::from_int(i as i64));
    }
    acc
}

/// q-Pochhammer symbol `(a; q)_n = prod_{i=0}^{n-1} (1 - a q^i)` with `q = s^2`.
pub fn q_pochhammer(a: &ExactScalar, n: usize) -> ExactScalar {
    let q = QBase::Q.value();
    let mut acc = ExactScalar::one();
    let mut qi = ExactScalar::one();
    for _ in 0..n {
        acc = &acc * &(&ExactScalar::one() - &(a * &qi));
        qi = &qi * &q;
    }
    acc
}

/// q-number `[n]_q = 1 + q + ... + q^(n-1)` in the given base, with the
/// convention `[0] = 1`.
pub fn q_number_base(n: usize, base: QBase) -> ExactScalar {
    if n == 0 {
        return ExactScalar::one();
    }
    match base {
        QBase::Q => {
            let mut p = MultiPoly::zero();
            for i in 0..n {
                p = p.add(&MultiPoly::var_pow(Var::S, 2 * i as u16));
            }
            ExactScalar::from_poly(p)
        }
        QBase::QInvSqrt => {
            // [n] in base 1/s is sum_{i<n} s^(-i) = (sum_{j<n} s^j) / s^(n-1).
            let mut p = MultiPoly::zero();
            for j in 0..n {
                p = p.add(&MultiPoly::var_pow(Var::S, j as u16));
            }
            ExactScalar::new(p, MultiPoly::var_pow(Var::S, (n - 1) as u16))
        }
    }
}

/// q-number in base `q = s^2`.
pub fn q_number(n: usize) -> ExactScalar {
    q_number_base(n, QBase::Q)
}

/// q-factorial `n!_q = [1]_q [2]_q ... [n]_q` in the given base; `0!_q = 1`.
pub fn q_factorial_base(n: usize, base: QBase) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for k in 1..=n {
        acc = &acc * &q_number_base(k, base);
    }
    acc
}

/// q-factorial in base `q = s^2`.
pub fn q_factorial(n: usize) -> ExactScalar {
    q_factorial_base(n, QBase::Q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> ExactScalar {
        ExactScalar::var(Var::T)
    }
    fn u() -> ExactScalar {
        ExactScalar::var(Var::U)
    }
    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn pochhammer_small_cases() {
        // (t)_2 = t(t+1)
        assert_eq!(pochhammer(&t(), 2), &t() * &(&t() + &int(1)));
        // (-2)_2 = (-2)(-1) = 2
        assert_eq!(pochhammer(&int(-2), 2), int(2));
        // (u)_3 = u(u+1)(u+2)
        let expect = &(&u() * &(&u() + &int(1))) * &(&u() + &int(2));
        assert_eq!(pochhammer(&u(), 3), expect);
        assert_eq!(pochhammer(&t(), 0), int(1));
    }

    #[test]
    fn pochhammer_recurrence() {
        for n in 0..=10usize {
            let lhs = pochhammer(&t(), n + 1);
            let rhs = &pochhammer(&t(), n) * &(&t() + &int(n as i64));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn q_pochhammer_small_cases() {
        let one = ExactScalar::one();
        let q = QBase::Q.value();
        assert_eq!(q_pochhammer(&t(), 1), &one - &t());
        let expect = &(&one - &t()) * &(&one - &(&t() * &q));
        assert_eq!(q_pochhammer(&t(), 2), expect);
        assert_eq!(q_pochhammer(&ExactScalar::zero(), 5), one);
    }

    #[test]
    fn q_numbers_and_factorials() {
        let q = QBase::Q.value();
        // [3]_q = 1 + q + q^2
        let expect = &(&ExactScalar::one() + &q) + &q.pow(2);
        assert_eq!(q_number(3), expect);
        assert_eq!(q_number(0), ExactScalar::one());
        // 3!_q = (1+q)(1+q+q^2)
        let expect = &q_number(2) * &q_number(3);
        assert_eq!(q_factorial(3), expect);
        // Base q^(-1/2): [2] = 1 + 1/s = (s+1)/s
        let s = ExactScalar::var(Var::S);
        assert_eq!(
            q_number_base(2, QBase::QInvSqrt),
            (&s + &ExactScalar::one()) / s.clone()
        );
    }
}
