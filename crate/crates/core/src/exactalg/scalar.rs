//! Elements of the field of rational functions `Q(t, u, s, k2, ..., k14)`.
//!
//! Invariants held by every constructed value: the denominator is nonzero,
//! monic in graded lexicographic order, and coprime to the numerator. A pure
//! rational has denominator 1 and a constant numerator, so rational-only
//! arithmetic never touches the polynomial gcd.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::multipoly::{poly_gcd, MultiPoly, Var, NVARS};
use super::rational::{rat_to_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScalar {
    numer: MultiPoly,
    denom: MultiPoly,
}

impl ExactScalar {
    pub fn zero() -> ExactScalar {
        ExactScalar {
            numer: MultiPoly::zero(),
            denom: MultiPoly::one(),
        }
    }

    pub fn one() -> ExactScalar {
        ExactScalar {
            numer: MultiPoly::one(),
            denom: MultiPoly::one(),
        }
    }

    pub fn from_rational(c: Rational) -> ExactScalar {
        ExactScalar {
            numer: MultiPoly::constant(c),
            denom: MultiPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> ExactScalar {
        ExactScalar::from_rational(Rational::from_integer(n.into()))
    }

    pub fn var(v: Var) -> ExactScalar {
        ExactScalar {
            numer: MultiPoly::var(v),
            denom: MultiPoly::one(),
        }
    }

    pub fn from_poly(p: MultiPoly) -> ExactScalar {
        ExactScalar {
            numer: p,
            denom: MultiPoly::one(),
        }
    }

    /// General constructor; cancels the gcd and normalizes the denominator.
    /// Panics when `denom` is the zero polynomial.
    pub fn new(numer: MultiPoly, denom: MultiPoly) -> ExactScalar {
        assert!(!denom.is_zero(), "zero denominator in ExactScalar");
        if numer.is_zero() {
            return ExactScalar::zero();
        }
        if let Some(c) = denom.as_constant() {
            return ExactScalar {
                numer: numer.scale(&(Rational::one() / c)),
                denom: MultiPoly::one(),
            };
        }
        let g = poly_gcd(&numer, &denom);
        let (mut n, mut d) = if g.is_one() {
            (numer, denom)
        } else {
            (
                numer.div_exact(&g).expect("gcd divides numerator"),
                denom.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if let Some(c) = d.as_constant() {
            n = n.scale(&(Rational::one() / c));
            d = MultiPoly::one();
        } else {
            let lc = d.leading_coeff();
            if !lc.is_one() {
                let inv = Rational::one() / lc;
                n = n.scale(&inv);
                d = d.scale(&inv);
            }
        }
        ExactScalar { numer: n, denom: d }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.numer
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.denom.is_one() && self.numer.is_one()
    }

    /// True when the value lies in `Q` (denominator 1, constant numerator).
    pub fn is_rational(&self) -> bool {
        self.denom.is_one() && self.numer.is_constant()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.denom.is_one() {
            self.numer.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.is_one()
    }

    pub fn checked_inv(&self) -> Option<ExactScalar> {
        if self.is_zero() {
            return None;
        }
        // Swapping keeps coprimality; only the monic rescale is needed.
        let lc = self.numer.leading_coeff();
        let inv = Rational::one() / lc;
        Some(ExactScalar {
            numer: self.denom.scale(&inv),
            denom: self.numer.scale(&inv),
        })
    }

    pub fn inv(&self) -> ExactScalar {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn checked_div(&self, other: &ExactScalar) -> Option<ExactScalar> {
        other.checked_inv().map(|i| self * &i)
    }

    pub fn pow(&self, e: i64) -> ExactScalar {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut acc = ExactScalar::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by a plain integer (exact).
    pub fn div_int(&self, n: i64) -> ExactScalar {
        assert!(n != 0, "division by zero integer");
        let c = Rational::new(1.into(), n.into());
        ExactScalar {
            numer: self.numer.scale(&c),
            denom: self.denom.clone(),
        }
    }

    pub fn scale_rat(&self, c: &Rational) -> ExactScalar {
        if c.is_zero() {
            return ExactScalar::zero();
        }
        ExactScalar {
            numer: self.numer.scale(c),
            denom: self.denom.clone(),
        }
    }

    /// Full evaluation at a rational point; `None` when the denominator
    /// vanishes there.
    pub fn eval(&self, point: &[Rational; NVARS]) -> Option<Rational> {
        let d = self.denom.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.numer.eval(point) / d)
    }

    /// Substitutes rational values for a subset of variables.
    /// `None` when the substituted denominator becomes zero.
    pub fn subst(&self, assignments: &[(Var, Rational)]) -> Option<ExactScalar> {
        let d = self.denom.subst(assignments);
        if d.is_zero() {
            return None;
        }
        Some(ExactScalar::new(self.numer.subst(assignments), d))
    }

    /// Substitutes `s -> 1/s` (used to move between the bases `q` and
    /// `q^(-1/2)` of the deformation machinery).
    pub fn subst_s_inverse(&self) -> ExactScalar {
        let (n, en) = self.numer.flip_s();
        let (d, ed) = self.denom.flip_s();
        // numer/denom -> (n / s^en) / (d / s^ed) = n * s^ed / (d * s^en)
        let s = MultiPoly::var_pow(Var::S, 1);
        let mut nn = n;
        let mut dd = d;
        if ed > en {
            nn = nn.mul(&s.pow((ed - en) as u32));
        } else {
            dd = dd.mul(&s.pow((en - ed) as u32));
        }
        ExactScalar::new(nn, dd)
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        ExactScalar::zero()
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            if let Some(c) = self.numer.as_constant() {
                return write!(f, "{}", rat_to_string(&c));
            }
            return write!(f, "{}", self.numer);
        }
        let num = if self.numer.num_terms() > 1 {
            format!("({})", self.numer)
        } else {
            format!("{}", self.numer)
        };
        let den = if self.denom.num_terms() > 1 {
            format!("({})", self.denom)
        } else {
            format!("{}", self.denom)
        };
        write!(f, "{num}/{den}")
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, other: &ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.denom.is_one() && other.denom.is_one() {
            return ExactScalar {
                numer: self.numer.add(&other.numer),
                denom: MultiPoly::one(),
            };
        }
        if self.denom == other.denom {
            return ExactScalar::new(self.numer.add(&other.numer), self.denom.clone());
        }
        // Knuth-style addition: with reduced inputs, only gcd(t, g1) can cancel.
        let g1 = poly_gcd(&self.denom, &other.denom);
        if g1.is_one() {
            let n = self
                .numer
                .mul(&other.denom)
                .add(&other.numer.mul(&self.denom));
            if n.is_zero() {
                return ExactScalar::zero();
            }
            return ExactScalar {
                numer: n,
                denom: self.denom.mul(&other.denom),
            };
        }
        let b1 = self.denom.div_exact(&g1).expect("gcd divides");
        let d1 = other.denom.div_exact(&g1).expect("gcd divides");
        let t = self.numer.mul(&d1).add(&other.numer.mul(&b1));
        if t.is_zero() {
            return ExactScalar::zero();
        }
        let g2 = poly_gcd(&t, &g1);
        if g2.is_one() {
            return ExactScalar {
                numer: t,
                denom: b1.mul(&other.denom),
            };
        }
        let n = t.div_exact(&g2).expect("gcd divides");
        let d = b1.mul(&other.denom.div_exact(&g2).expect("gcd divides"));
        // d is a product of monic polynomials: still monic.
        ExactScalar { numer: n, denom: d }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, other: &ExactScalar) -> ExactScalar {
        self + &(-other)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, other: &ExactScalar) -> ExactScalar {
        if self.is_zero() || other.is_zero() {
            return ExactScalar::zero();
        }
        if self.denom.is_one() && other.denom.is_one() {
            return ExactScalar {
                numer: self.numer.mul(&other.numer),
                denom: MultiPoly::one(),
            };
        }
        // Cross-cancel; with reduced inputs the result is already reduced.
        let g1 = poly_gcd(&self.numer, &other.denom);
        let g2 = poly_gcd(&other.numer, &self.denom);
        let n1 = if g1.is_one() {
            self.numer.clone()
        } else {
            self.numer.div_exact(&g1).expect("gcd divides")
        };
        let n2 = if g2.is_one() {
            other.numer.clone()
        } else {
            other.numer.div_exact(&g2).expect("gcd divides")
        };
        let d1 = if g2.is_one() {
            self.denom.clone()
        } else {
            self.denom.div_exact(&g2).expect("gcd divides")
        };
        let d2 = if g1.is_one() {
            other.denom.clone()
        } else {
            other.denom.div_exact(&g1).expect("gcd divides")
        };
        let numer = n1.mul(&n2);
        let denom = d1.mul(&d2);
        if let Some(c) = denom.as_constant() {
            return ExactScalar {
                numer: numer.scale(&(Rational::one() / c)),
                denom: MultiPoly::one(),
            };
        }
        // The gcd cancellation above removed nontrivial factors but the
        // quotients may have lost monicity; restore it.
        let lc = denom.leading_coeff();
        if lc.is_one() {
            ExactScalar { numer, denom }
        } else {
            let inv = Rational::one() / lc;
            ExactScalar {
                numer: numer.scale(&inv),
                denom: denom.scale(&inv),
            }
        }
    }
}

impl Div for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, other: &ExactScalar) -> ExactScalar {
        self.checked_div(other).expect("division by zero scalar")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            numer: self.numer.neg(),
            denom: self.denom.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, other: ExactScalar) -> ExactScalar {
                $trait::$method(&self, &other)
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, other: &ExactScalar) -> ExactScalar {
                $trait::$method(&self, other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, other: &ExactScalar) {
        *self = &*self + other;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, other: &ExactScalar) {
        *self = &*self - other;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, other: &ExactScalar) {
        *self = &*self * other;
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    fn t() -> ExactScalar {
        ExactScalar::var(Var::T)
    }
    fn u() -> ExactScalar {
        ExactScalar::var(Var::U)
    }
    fn k(n: i64) -> ExactScalar {
        ExactScalar::from_rational(rat(n, 1))
    }

    #[test]
    fn rational_fast_path() {
        let a = k(3).div_int(2);
        let b = ExactScalar::from_rational(rat(1, 6));
        let sum = &a + &b;
        assert!(sum.is_rational());
        assert_eq!(sum.as_rational().unwrap(), rat(5, 3));
    }

    #[test]
    fn cancellation_on_construction() {
        // (t^2 - 1) / (t + 1) = t - 1
        let n = t().numer().mul(t().numer()).sub(&MultiPoly::one());
        let d = t().numer().add(&MultiPoly::one());
        let x = ExactScalar::new(n, d);
        assert!(x.is_polynomial());
        assert_eq!(x, &t() - &k(1));
    }

    #[test]
    fn monic_denominator_invariant() {
        // 1 / (2t + 2) -> numerator 1/2, denominator t + 1
        let x = k(1) / (&(&t() + &k(1)) * &k(2));
        assert!(x.denom().leading_coeff().is_one());
        assert_eq!(&x * &(&(&t() + &k(1)) * &k(2)), k(1));
    }

    #[test]
    fn add_reduces() {
        // 1/(t(t+1)) + 1/(t+1) = (1 + t)/(t(t+1)) = 1/t
        let tt = t();
        let tp1 = &t() + &k(1);
        let a = k(1) / (&tt * &tp1);
        let b = k(1) / tp1.clone();
        let sum = &a + &b;
        assert_eq!(sum, k(1) / tt);
    }

    #[test]
    fn field_identities_spot() {
        let x = (&t() + &u()).inv();
        assert_eq!(&x * &(&t() + &u()), k(1));
        assert_eq!(&t() - &t(), ExactScalar::zero());
        let y = &(&t() * &u()) + &k(1);
        assert_eq!((&y / &y.clone()), k(1));
    }

    #[test]
    fn subst_s_inverse_on_q_number() {
        // [2]_q = 1 + s^2; substituting s -> 1/s gives (s^2 + 1)/s^2.
        let s = ExactScalar::var(Var::S);
        let q2 = &k(1) + &(&s * &s);
        let flipped = q2.subst_s_inverse();
        let expect = (&k(1) + &(&s * &s)) / (&s * &s);
        assert_eq!(flipped, expect);
        // Involution up to nothing: flipping twice returns the original.
        assert_eq!(flipped.subst_s_inverse(), q2);
    }

    #[test]
    fn display_forms() {
        assert_eq!(k(5).div_int(2).to_string(), "5/2");
        assert_eq!((&t() * &u()).to_string(), "t*u");
        let frac = t() / (&u() + &k(1));
        assert_eq!(frac.to_string(), "t/(u + 1)");
    }
}
