//! Monic polynomials with exact coefficients: symmetric additive and
//! rectangular convolutions, their linearizing cumulants, empirical-root
//! moments, and the degree-lowering operator calculus behind the heat flow.
//!
//! Coefficient conventions. A polynomial is stored in the plain rectangular
//! convention `p(x) = x^d + sum_i a_{2i} x^{d-i}`; the signed convention
//! `p(x) = x^d + sum_i (-1)^i a_i x^{d-i}` used by the symmetric convolution
//! is exposed as a view (`signed_coeff`), conversion factor `(-1)^i`.

use num_traits::{One, Signed, Zero};

use crate::exactalg::{factorial, rat_int, rising_factorial, RatSeries, Rational};

/// Errors from the polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiniteFreeError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("the exponential operator needs n >= 1")]
    NIsZero,
    #[error("operator power {k} exceeds the degree {d}")]
    PowerExceedsDegree { k: usize, d: usize },
    #[error("a monic polynomial needs degree >= 1")]
    ZeroDegree,
}

/// Rectangular matrix-model parameters: `d` columns, `n + d` rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RectParams {
    pub n: usize,
    pub d: usize,
}

impl RectParams {
    pub fn new(n: usize, d: usize) -> RectParams {
        assert!(d >= 1);
        RectParams { n, d }
    }
}

/// Monic polynomial of degree `d`, stored by its `d` non-leading coefficients
/// in the plain rectangular convention (`coeffs[i-1]` is the coefficient of
/// `x^(d-i)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicPoly {
    coeffs: Vec<Rational>,
}

impl MonicPoly {
    pub fn from_plain_coeffs(coeffs: Vec<Rational>) -> Result<MonicPoly, FiniteFreeError> {
        if coeffs.is_empty() {
            return Err(FiniteFreeError::ZeroDegree);
        }
        Ok(MonicPoly { coeffs })
    }

    /// `x^d`.
    pub fn x_pow(d: usize) -> MonicPoly {
        assert!(d >= 1);
        MonicPoly {
            coeffs: vec![Rational::zero(); d],
        }
    }

    /// Monic polynomial with the given roots, by elementary symmetric
    /// expansion.
    pub fn from_roots(roots: &[Rational]) -> MonicPoly {
        assert!(!roots.is_empty());
        // Coefficients of prod (x - r); elem[i] = coefficient of x^(d-i).
        let mut elem = vec![Rational::one()];
        for r in roots {
            elem.push(Rational::zero());
            for i in (1..elem.len()).rev() {
                let delta = &elem[i - 1] * r;
                elem[i] = &elem[i] - &delta;
            }
        }
        MonicPoly {
            coeffs: elem[1..].to_vec(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Plain coefficient `a_{2i}` for `i = 0..=d` (`a_0 = 1`).
    pub fn plain_coeff(&self, i: usize) -> Rational {
        if i == 0 {
            Rational::one()
        } else {
            self.coeffs[i - 1].clone()
        }
    }

    /// Signed-view coefficient `a_i` with `p(x) = x^d + sum (-1)^i a_i x^(d-i)`.
    pub fn signed_coeff(&self, i: usize) -> Rational {
        let c = self.plain_coeff(i);
        if i % 2 == 0 {
            c
        } else {
            -c
        }
    }

    pub fn plain_coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Dense coefficient vector by ascending power of `x`, length `d + 1`.
    pub fn dense(&self) -> Vec<Rational> {
        let d = self.degree();
        let mut v = vec![Rational::zero(); d + 1];
        v[d] = Rational::one();
        for i in 1..=d {
            v[d - i] = self.coeffs[i - 1].clone();
        }
        v
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::one();
        for c in &self.coeffs {
            acc = acc * x + c;
        }
        acc
    }
}

fn check_degrees(p: &MonicPoly, r: &MonicPoly) -> Result<usize, FiniteFreeError> {
    if p.degree() != r.degree() {
        return Err(FiniteFreeError::DegreeMismatch {
            left: p.degree(),
            right: r.degree(),
        });
    }
    Ok(p.degree())
}

/// Symmetric additive convolution: in the signed convention,
/// `c_k = sum_{i+j=k} (d-i)! (d-j)! / (d! (d-k)!) a_i b_j`.
pub fn symmetric_additive_convolution(
    p: &MonicPoly,
    r: &MonicPoly,
) -> Result<MonicPoly, FiniteFreeError> {
    let d = check_degrees(p, r)?;
    let mut out = Vec::with_capacity(d);
    for k in 1..=d {
        let mut c = Rational::zero();
        for i in 0..=k {
            let j = k - i;
            let w = factorial(d - i) * factorial(d - j)
                / (factorial(d) * factorial(d - k));
            c += w * p.signed_coeff(i) * r.signed_coeff(j);
        }
        // Back to the plain convention.
        if k % 2 == 1 {
            c = -c;
        }
        out.push(c);
    }
    MonicPoly::from_plain_coeffs(out)
}

/// Rectangular convolution: in the plain convention,
/// `c_{2k} = sum_{i+j=k} [(d-i)!(d-j)!/(d!(d-k)!)] [(n+d-i)!(n+d-j)!/((n+d)!(n+d-k)!)] a_{2i} b_{2j}`.
pub fn rectangular_convolution(
    p: &MonicPoly,
    r: &MonicPoly,
    rp: RectParams,
) -> Result<MonicPoly, FiniteFreeError> {
    let d = check_degrees(p, r)?;
    if d != rp.d {
        return Err(FiniteFreeError::DegreeMismatch {
            left: d,
            right: rp.d,
        });
    }
    let n = rp.n;
    let mut out = Vec::with_capacity(d);
    for k in 1..=d {
        let mut c = Rational::zero();
        for i in 0..=k {
            let j = k - i;
            let w1 = factorial(d - i) * factorial(d - j) / (factorial(d) * factorial(d - k));
            let w2 = factorial(n + d - i) * factorial(n + d - j)
                / (factorial(n + d) * factorial(n + d - k));
            c += w1 * w2 * p.plain_coeff(i) * r.plain_coeff(j);
        }
        out.push(c);
    }
    MonicPoly::from_plain_coeffs(out)
}

/// Finite free cumulants `K_l[p] = l [z^l] ln(1 + sum_i a_i z^i / (-d)_i)`
/// in the signed convention, for `l = 1..=d`. These add under the symmetric
/// additive convolution.
pub fn finite_free_cumulants(p: &MonicPoly) -> Vec<Rational> {
    let d = p.degree();
    let minus_d = rat_int(-(d as i64));
    let mut f = RatSeries::one(d);
    for i in 1..=d {
        f.set_coeff(i, p.signed_coeff(i) / rising_factorial(&minus_d, i));
    }
    let g = f.log().expect("constant term is one");
    (1..=d)
        .map(|l| &g.coeffs()[l] * rat_int(l as i64))
        .collect()
}

/// Rectangular cumulants
/// `K^{n,d}_{2l}[p] = l [z^{2l}] ln(1 + sum_i a_{2i} z^{2i} / ((-d)_i (-d-n)_i))`
/// for `l = 1..=d`. Additive under the rectangular convolution.
pub fn rect_cumulants(p: &MonicPoly, rp: RectParams) -> Vec<Rational> {
    rect_cumulants_upto(p, rp, rp.d)
}

/// First `lmax` rectangular cumulants (`lmax <= d`); the cheap variant used
/// by the convergence experiments at large degree.
pub fn rect_cumulants_upto(p: &MonicPoly, rp: RectParams, lmax: usize) -> Vec<Rational> {
    let d = p.degree();
    assert_eq!(d, rp.d, "parameter d must match the polynomial degree");
    assert!(lmax <= d);
    let minus_d = rat_int(-(d as i64));
    let minus_dn = rat_int(-((d + rp.n) as i64));
    // Work in w = z^2: index i carries the z^{2i} coefficient.
    let mut f = RatSeries::one(lmax);
    for i in 1..=lmax.min(d) {
        let denom = rising_factorial(&minus_d, i) * rising_factorial(&minus_dn, i);
        f.set_coeff(i, p.plain_coeff(i) / denom);
    }
    let g = f.log().expect("constant term is one");
    (1..=lmax)
        .map(|l| &g.coeffs()[l] * rat_int(l as i64))
        .collect()
}

/// Inverse of [`rect_cumulants`]: rebuilds the unique monic polynomial of
/// degree `rp.d` whose first `d` rectangular cumulants are `cumulants[..d]`
/// (entries beyond `d` are ignored).
pub fn poly_from_rect_cumulants(cumulants: &[Rational], rp: RectParams) -> MonicPoly {
    let d = rp.d;
    assert!(cumulants.len() >= d, "need at least d cumulants");
    let minus_d = rat_int(-(d as i64));
    let minus_dn = rat_int(-((d + rp.n) as i64));
    let mut f = RatSeries::zero(d);
    for l in 1..=d {
        f.set_coeff(l, &cumulants[l - 1] / rat_int(l as i64));
    }
    let e = f.exp().expect("constant term is zero");
    let coeffs = (1..=d)
        .map(|i| {
            let denom = rising_factorial(&minus_d, i) * rising_factorial(&minus_dn, i);
            &e.coeffs()[i] * denom
        })
        .collect();
    MonicPoly::from_plain_coeffs(coeffs).expect("d >= 1")
}

/// Even moments of the symmetric empirical root distribution, from the
/// coefficients alone: the recursion `n a_{2n} / t = m_{2n} + sum m a` at
/// `t = -d`, with `a_{2n} = 0` past the degree. Entry `k` holds
/// `(1/d) sum_i alpha_i^{2k}` where `alpha_i^2` are the roots.
pub fn empirical_symmetric_moments(p: &MonicPoly, kmax: usize) -> Vec<Rational> {
    let d = p.degree();
    let t = rat_int(-(d as i64));
    let mut m: Vec<Rational> = Vec::with_capacity(kmax);
    for n in 1..=kmax {
        let a_2n = if n <= d { p.plain_coeff(n) } else { Rational::zero() };
        let mut v = a_2n * rat_int(n as i64) / &t;
        for k in 1..n {
            if n - k <= d {
                v -= &m[k - 1] * p.plain_coeff(n - k);
            }
        }
        m.push(v);
    }
    m
}

/// One application of the degree-lowering operator to a dense coefficient
/// vector (ascending powers): `x^i -> i (i+n) x^(i-1)`.
pub fn rect_diff_once(dense: &[Rational], n: usize) -> Vec<Rational> {
    if dense.len() <= 1 {
        return vec![Rational::zero()];
    }
    (1..dense.len())
        .map(|i| &dense[i] * rat_int((i * (i + n)) as i64))
        .collect()
}

/// The `k`-th operator power applied to `p`, by the closed form
/// `x^i -> (-i)_k (-i-n)_k x^(i-k)`; returns the dense coefficient vector
/// (ascending powers, length `d - k + 1`).
pub fn rect_diff_operator(
    p: &MonicPoly,
    n: usize,
    k: usize,
) -> Result<Vec<Rational>, FiniteFreeError> {
    let d = p.degree();
    if k > d {
        return Err(FiniteFreeError::PowerExceedsDegree { k, d });
    }
    let dense = p.dense();
    let mut out = vec![Rational::zero(); d - k + 1];
    for (i, c) in dense.iter().enumerate() {
        if i < k || c.is_zero() {
            continue;
        }
        let w = rising_factorial(&rat_int(-(i as i64)), k)
            * rising_factorial(&rat_int(-((i + n) as i64)), k);
        out[i - k] = c * w;
    }
    Ok(out)
}

/// `exp(-(s^2/n) x^{-n} D x^{n+1} D) p`, the finite heat-flow step: the sum
/// `sum_{k=0}^d (-s^2)^k / (n^k k!) (operator)^k p`. Computed both from the
/// closed-form operator powers and by iterating the single-step rule; the two
/// must agree.
pub fn exp_rect_operator(
    p: &MonicPoly,
    n: usize,
    s: &Rational,
) -> Result<MonicPoly, FiniteFreeError> {
    if n == 0 {
        return Err(FiniteFreeError::NIsZero);
    }
    let d = p.degree();
    let s2 = s * s;
    let mut acc = vec![Rational::zero(); d + 1];
    let mut factor = Rational::one(); // (-s^2)^k / (n^k k!)
    for k in 0..=d {
        if k > 0 {
            factor = &factor * &(-&s2) / rat_int((n * k) as i64);
        }
        let term = rect_diff_operator(p, n, k)?;
        for (i, c) in term.iter().enumerate() {
            acc[i] += c * &factor;
        }
    }
    // Redundant route: iterate the k = 1 rule and accumulate.
    let mut check = vec![Rational::zero(); d + 1];
    let mut v = p.dense();
    let mut factor = Rational::one();
    for k in 0..=d {
        if k > 0 {
            factor = &factor * &(-&s2) / rat_int((n * k) as i64);
            v = rect_diff_once(&v, n);
        }
        for (i, c) in v.iter().enumerate() {
            check[i] += c * &factor;
        }
    }
    assert_eq!(acc, check, "operator power routes disagree");
    assert!(acc[d].is_one(), "heat flow must preserve monicity");
    let coeffs = (1..=d).map(|i| acc[d - i].clone()).collect();
    MonicPoly::from_plain_coeffs(coeffs)
}

/// The companion polynomial of Main-Result-III shape: the monic polynomial
/// whose rectangular cumulant vector is `(-s^2/n, 0, ..., 0)`; convolving
/// with it is exactly the heat-flow step.
pub fn heat_flow_kernel(rp: RectParams, s: &Rational) -> MonicPoly {
    assert!(rp.n >= 1);
    let mut cumulants = vec![Rational::zero(); rp.d];
    cumulants[0] = -(s * s) / rat_int(rp.n as i64);
    poly_from_rect_cumulants(&cumulants, rp)
}
