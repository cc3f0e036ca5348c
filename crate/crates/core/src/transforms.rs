//! The generic `(t, u)` moment/cumulant/coefficient transition engine.
//!
//! Sequences `(a_2, a_4, ...)`, `(kappa_2, kappa_4, ...)` and
//! `(m_2, m_4, ...)` are tied together by the pair of generating identities
//!
//! ```text
//! exp( sum_l kappa_{2l} z^{2l} / l ) = 1 + sum_n a_{2n} z^{2n} / ((t)_n (u)_n)
//! exp( t * sum_k m_{2k} z^{2k} / k ) = 1 + sum_n a_{2n} z^{2n}
//! ```
//!
//! The cumulant-to-moment direction is computed by four independent routes
//! (series composition, even-set-partition sums, operator powers, weighted
//! path sums); their agreement is the main correctness certificate of the
//! whole crate and is enforced by the verification suite.

use rayon::prelude::*;

use crate::combin::{
    coarsenings, enumerate_even_partitions, enumerate_luk_odd, CombinError, SetPartition,
};
use crate::exactalg::{
    factorial, pochhammer, rat_int, ExactScalar, Rational, TruncatedSeries, Var,
};

/// Partition-sum routes enumerate all even partitions of `[2K]`.
pub const PARTITION_ROUTE_MAX_K: usize = 5;
/// Path-sum route enumerates all odd paths of length `2K`.
pub const PATH_ROUTE_MAX_K: usize = 7;

/// Errors surfaced by the transform engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("Pochhammer factor ({param})_{n} vanishes at the given specialization")]
    PochhammerZero { param: char, n: usize },
    #[error("this direction requires t != 0")]
    TIsZero,
    #[error("order {k} exceeds the guard {max} for this route")]
    GuardExceeded { k: usize, max: usize },
    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error(transparent)]
    Combin(#[from] CombinError),
}

macro_rules! sequence_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, PartialEq, Eq)]
        pub struct $name(Vec<ExactScalar>);

        impl $name {
            pub fn new(entries: Vec<ExactScalar>) -> Self {
                assert!(!entries.is_empty(), "sequences have length K >= 1");
                Self(entries)
            }

            pub fn from_rationals(entries: &[Rational]) -> Self {
                Self::new(
                    entries
                        .iter()
                        .map(|r| ExactScalar::from_rational(r.clone()))
                        .collect(),
                )
            }

            /// Fully symbolic sequence: entry `l` is the symbol `k{2l}`.
            pub fn symbolic(len: usize) -> Self {
                Self::new((1..=len).map(|l| ExactScalar::var(Var::seq(l))).collect())
            }

            pub fn zeros(len: usize) -> Self {
                Self::new(vec![ExactScalar::zero(); len])
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                false
            }

            /// 1-based entry: index `l` holds the `2l`-indexed element.
            pub fn entry(&self, l: usize) -> &ExactScalar {
                &self.0[l - 1]
            }

            pub fn entries(&self) -> &[ExactScalar] {
                &self.0
            }

            pub fn into_entries(self) -> Vec<ExactScalar> {
                self.0
            }
        }
    };
}

sequence_type!(
    /// Cumulant sequence; entry `l` holds `kappa_{2l}`.
    CumulantSeq
);
sequence_type!(
    /// Moment sequence; entry `k` holds `m_{2k}`.
    MomentSeq
);
sequence_type!(
    /// Coefficient sequence; entry `n` holds `a_{2n}` (`a_0` is implicitly 1).
    CoeffSeq
);

/// The transform parameters; each of `t`, `u` is symbolic or a rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TUParams {
    t: ExactScalar,
    u: ExactScalar,
}

impl TUParams {
    pub fn new(t: ExactScalar, u: ExactScalar) -> Self {
        TUParams { t, u }
    }

    /// Both parameters kept as formal symbols.
    pub fn symbolic() -> Self {
        TUParams {
            t: ExactScalar::var(Var::T),
            u: ExactScalar::var(Var::U),
        }
    }

    pub fn from_rationals(t: Rational, u: Rational) -> Self {
        TUParams {
            t: ExactScalar::from_rational(t),
            u: ExactScalar::from_rational(u),
        }
    }

    /// The rectangular specialization `t = -d`, `u = -d - n`.
    pub fn rectangular(n: usize, d: usize) -> Self {
        TUParams::from_rationals(rat_int(-(d as i64)), rat_int(-(d as i64) - (n as i64)))
    }

    pub fn t(&self) -> &ExactScalar {
        &self.t
    }

    pub fn u(&self) -> &ExactScalar {
        &self.u
    }

    /// `(t)_n (u)_n` with a zero check; `Err` identifies the vanishing factor.
    fn pochhammer_pair(&self, n: usize) -> Result<ExactScalar, TransformError> {
        let pt = pochhammer(&self.t, n);
        if pt.is_zero() {
            return Err(TransformError::PochhammerZero { param: 't', n });
        }
        let pu = pochhammer(&self.u, n);
        if pu.is_zero() {
            return Err(TransformError::PochhammerZero { param: 'u', n });
        }
        Ok(&pt * &pu)
    }
}

fn scalar_rat(r: Rational) -> ExactScalar {
    ExactScalar::from_rational(r)
}

// ---------------------------------------------------------------------------
// Generating-series route.
// ---------------------------------------------------------------------------

/// `a_{2n} = (t)_n (u)_n [z^{2n}] exp( sum_l kappa_{2l} z^{2l} / l )`.
pub fn coeffs_from_cumulants(kappa: &CumulantSeq, p: &TUParams) -> CoeffSeq {
    let cap = kappa.len();
    let mut f = TruncatedSeries::zero(2 * cap);
    for l in 1..=cap {
        f.set_coeff(2 * l, kappa.entry(l).div_int(l as i64));
    }
    let e = f.exp().expect("constant term is zero by construction");
    let entries = (1..=cap)
        .map(|n| {
            let poch = &pochhammer(p.t(), n) * &pochhammer(p.u(), n);
            &poch * &e.coeffs()[2 * n]
        })
        .collect();
    CoeffSeq::new(entries)
}

/// Exact inverse of [`coeffs_from_cumulants`]; requires every `(t)_n (u)_n`
/// to be invertible up to the sequence length.
pub fn cumulants_from_coeffs(a: &CoeffSeq, p: &TUParams) -> Result<CumulantSeq, TransformError> {
    let cap = a.len();
    let mut f = TruncatedSeries::one(2 * cap);
    for n in 1..=cap {
        let poch = p.pochhammer_pair(n)?;
        f.set_coeff(2 * n, a.entry(n) / &poch);
    }
    let g = f.log().expect("constant term is one by construction");
    let entries = (1..=cap)
        .map(|l| g.coeffs()[2 * l].mul_int(l as i64))
        .collect();
    Ok(CumulantSeq::new(entries))
}

/// `a_{2n} = [z^{2n}] exp( t * sum_k m_{2k} z^{2k} / k )`.
pub fn coeffs_from_moments(m: &MomentSeq, p: &TUParams) -> CoeffSeq {
    let cap = m.len();
    let mut f = TruncatedSeries::zero(2 * cap);
    for k in 1..=cap {
        f.set_coeff(2 * k, &m.entry(k).div_int(k as i64) * p.t());
    }
    let e = f.exp().expect("constant term is zero by construction");
    CoeffSeq::new((1..=cap).map(|n| e.coeffs()[2 * n].clone()).collect())
}

/// Inverts the coefficient relation through the triangular recursion
/// `n a_{2n} / t = m_{2n} + sum_{k<n} m_{2k} a_{2n-2k}`; requires `t != 0`.
pub fn moments_from_coeffs(a: &CoeffSeq, p: &TUParams) -> Result<MomentSeq, TransformError> {
    if p.t().is_zero() {
        return Err(TransformError::TIsZero);
    }
    let cap = a.len();
    let t_inv = p.t().inv();
    let mut m: Vec<ExactScalar> = Vec::with_capacity(cap);
    for n in 1..=cap {
        let mut v = &a.entry(n).mul_int(n as i64) * &t_inv;
        for k in 1..n {
            v = &v - &(&m[k - 1] * a.entry(n - k));
        }
        m.push(v);
    }
    Ok(MomentSeq::new(m))
}

/// Cumulants to moments through the coefficient sequence.
pub fn moments_from_cumulants_series(
    kappa: &CumulantSeq,
    p: &TUParams,
) -> Result<MomentSeq, TransformError> {
    moments_from_coeffs(&coeffs_from_cumulants(kappa, p), p)
}

/// Moments to cumulants through the coefficient sequence.
pub fn cumulants_from_moments_series(
    m: &MomentSeq,
    p: &TUParams,
) -> Result<CumulantSeq, TransformError> {
    cumulants_from_coeffs(&coeffs_from_moments(m, p), p)
}

// ---------------------------------------------------------------------------
// Even-set-partition routes.
// ---------------------------------------------------------------------------

/// Product of sequence entries over the blocks: `x_pi = prod_B x_{|B|}`.
fn sequence_product(entries: &[ExactScalar], pi: &SetPartition) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for size in pi.block_sizes() {
        acc = &acc * &entries[size / 2 - 1];
    }
    acc
}

/// Closed partition form of the cumulant-to-coefficient map:
/// `a_{2n} = (t)_n (u)_n / (2n)! * sum_{pi even} 2^#pi prod (|B|-1)! kappa_pi`.
pub fn coeffs_from_cumulants_partitions(
    kappa: &CumulantSeq,
    p: &TUParams,
) -> Result<CoeffSeq, TransformError> {
    let cap = check_guard(kappa.len(), PARTITION_ROUTE_MAX_K)?;
    let mut out = Vec::with_capacity(cap);
    for n in 1..=cap {
        let mut sum = ExactScalar::zero();
        for pi in enumerate_even_partitions(2 * n)? {
            let mut w = rat_int(2).pow(pi.block_count() as i32);
            for size in pi.block_sizes() {
                w *= factorial(size - 1);
            }
            sum = &sum + &sequence_product(kappa.entries(), &pi).scale_rat(&w);
        }
        let poch = &pochhammer(p.t(), n) * &pochhammer(p.u(), n);
        let norm = Rational::from_integer(1.into()) / factorial(2 * n);
        out.push((&poch * &sum).scale_rat(&norm));
    }
    Ok(CoeffSeq::new(out))
}

/// Closed partition form of the coefficient-to-cumulant map.
pub fn cumulants_from_coeffs_partitions(
    a: &CoeffSeq,
    p: &TUParams,
) -> Result<CumulantSeq, TransformError> {
    let cap = check_guard(a.len(), PARTITION_ROUTE_MAX_K)?;
    let mut out = Vec::with_capacity(cap);
    for n in 1..=cap {
        let mut sum = ExactScalar::zero();
        for pi in enumerate_even_partitions(2 * n)? {
            let blocks = pi.block_count();
            let sign = if blocks % 2 == 1 { 1 } else { -1 };
            let w = factorial(blocks - 1) * rat_int(sign);
            let mut term = sequence_product(a.entries(), &pi).scale_rat(&w);
            for size in pi.block_sizes() {
                let poch = p.pochhammer_pair(size / 2)?;
                term = &term.scale_rat(&factorial(size)) / &poch;
            }
            sum = &sum + &term;
        }
        let norm = Rational::from_integer(1.into()) / (factorial(2 * n - 1) * rat_int(2));
        out.push(sum.scale_rat(&norm));
    }
    Ok(CumulantSeq::new(out))
}

/// Closed partition form of the moment-to-coefficient map:
/// `a_{2n} = 1/(2n)! * sum_{pi even} (2t)^#pi prod (|B|-1)! m_pi`.
pub fn coeffs_from_moments_partitions(
    m: &MomentSeq,
    p: &TUParams,
) -> Result<CoeffSeq, TransformError> {
    let cap = check_guard(m.len(), PARTITION_ROUTE_MAX_K)?;
    let two_t = p.t().mul_int(2);
    let mut out = Vec::with_capacity(cap);
    for n in 1..=cap {
        let mut sum = ExactScalar::zero();
        for pi in enumerate_even_partitions(2 * n)? {
            let mut w = Rational::from_integer(1.into());
            for size in pi.block_sizes() {
                w *= factorial(size - 1);
            }
            let term = &sequence_product(m.entries(), &pi).scale_rat(&w)
                * &two_t.pow(pi.block_count() as i64);
            sum = &sum + &term;
        }
        let norm = Rational::from_integer(1.into()) / factorial(2 * n);
        out.push(sum.scale_rat(&norm));
    }
    Ok(CoeffSeq::new(out))
}

/// Closed partition form of the coefficient-to-moment map; requires `t != 0`.
pub fn moments_from_coeffs_partitions(
    a: &CoeffSeq,
    p: &TUParams,
) -> Result<MomentSeq, TransformError> {
    if p.t().is_zero() {
        return Err(TransformError::TIsZero);
    }
    let cap = check_guard(a.len(), PARTITION_ROUTE_MAX_K)?;
    let t_inv = p.t().inv();
    let mut out = Vec::with_capacity(cap);
    for n in 1..=cap {
        let mut sum = ExactScalar::zero();
        for pi in enumerate_even_partitions(2 * n)? {
            let blocks = pi.block_count();
            let sign = if blocks % 2 == 1 { 1 } else { -1 };
            let mut w = factorial(blocks - 1) * rat_int(sign);
            for size in pi.block_sizes() {
                w *= factorial(size);
            }
            sum = &sum + &sequence_product(a.entries(), &pi).scale_rat(&w);
        }
        let norm = Rational::from_integer(1.into()) / (factorial(2 * n - 1) * rat_int(2));
        out.push(&sum.scale_rat(&norm) * &t_inv);
    }
    Ok(MomentSeq::new(out))
}

/// Double partition sum for moments in terms of cumulants: the outer sum runs
/// over even partitions `sigma`, the inner over coarsenings `pi >= sigma`
/// (computed on `sigma`'s block set, not by filtering).
pub fn moments_from_cumulants_partitions(
    kappa: &CumulantSeq,
    p: &TUParams,
) -> Result<MomentSeq, TransformError> {
    if p.t().is_zero() {
        return Err(TransformError::TIsZero);
    }
    let cap = check_guard(kappa.len(), PARTITION_ROUTE_MAX_K)?;
    let t_inv = p.t().inv();
    let mut out = Vec::with_capacity(cap);
    for n in 1..=cap {
        let sigmas = enumerate_even_partitions(2 * n)?;
        let sum = sigmas
            .par_iter()
            .map(|sigma| {
                let mut outer = rat_int(2).pow(sigma.block_count() as i32);
                for size in sigma.block_sizes() {
                    outer *= factorial(size - 1);
                }
                let mut inner = ExactScalar::zero();
                for pi in coarsenings(sigma) {
                    let blocks = pi.block_count();
                    let sign = if blocks % 2 == 1 { 1 } else { -1 };
                    let w = factorial(blocks - 1) * rat_int(sign);
                    let mut term = ExactScalar::from_rational(w);
                    for size in pi.block_sizes() {
                        term = &term * &(&pochhammer(p.t(), size / 2) * &pochhammer(p.u(), size / 2));
                    }
                    inner = &inner + &term;
                }
                &sequence_product(kappa.entries(), sigma).scale_rat(&outer) * &inner
            })
            .reduce(ExactScalar::zero, |x, y| &x + &y);
        let norm = Rational::from_integer(1.into()) / (factorial(2 * n - 1) * rat_int(2));
        out.push(&sum.scale_rat(&norm) * &t_inv);
    }
    Ok(MomentSeq::new(out))
}

/// Double partition sum for cumulants in terms of moments.
pub fn cumulants_from_moments_partitions(
    m: &MomentSeq,
    p: &TUParams,
) -> Result<CumulantSeq, TransformError> {
    let cap = check_guard(m.len(), PARTITION_ROUTE_MAX_K)?;
    // Pre-check invertibility so the parallel loop cannot fail.
    for j in 1..=cap {
        p.pochhammer_pair(j)?;
    }
    let two_t = p.t().mul_int(2);
    let mut out = Vec::with_capacity(cap);
    for n in 1..=cap {
        let sigmas = enumerate_even_partitions(2 * n)?;
        let sum = sigmas
            .par_iter()
            .map(|sigma| {
                let mut outer = Rational::from_integer(1.into());
                for size in sigma.block_sizes() {
                    outer *= factorial(size - 1);
                }
                let outer = &scalar_rat(outer) * &two_t.pow(sigma.block_count() as i64);
                let mut inner = ExactScalar::zero();
                for pi in coarsenings(sigma) {
                    let blocks = pi.block_count();
                    let sign = if blocks % 2 == 1 { 1 } else { -1 };
                    let mut term = ExactScalar::from_rational(factorial(blocks - 1) * rat_int(sign));
                    for size in pi.block_sizes() {
                        let poch = &pochhammer(p.t(), size / 2) * &pochhammer(p.u(), size / 2);
                        term = &term / &poch;
                    }
                    inner = &inner + &term;
                }
                &(&sequence_product(m.entries(), sigma) * &outer) * &inner
            })
            .reduce(ExactScalar::zero, |x, y| &x + &y);
        let norm = Rational::from_integer(1.into()) / (factorial(2 * n - 1) * rat_int(2));
        out.push(sum.scale_rat(&norm));
    }
    Ok(CumulantSeq::new(out))
}

// ---------------------------------------------------------------------------
// Operator route.
// ---------------------------------------------------------------------------

/// The degree-lowering operator: `z^{2m+1} -> (u+m) z^{2m}`,
/// `z^{2m} -> (t+m) z^{2m-1}` for `m >= 1`, and `1 -> 0`.
pub fn apply_partial_tu(f: &TruncatedSeries, p: &TUParams) -> TruncatedSeries {
    let order = f.order();
    let mut out = TruncatedSeries::zero(order);
    for (deg, c) in f.coeffs().iter().enumerate() {
        if deg == 0 || c.is_zero() {
            continue;
        }
        let m = deg / 2;
        let weight = if deg % 2 == 1 {
            p.u() + &ExactScalar::from_int(m as i64)
        } else {
            p.t() + &ExactScalar::from_int(m as i64)
        };
        out.set_coeff(deg - 1, &weight * c);
    }
    out
}

/// Moments by operator powers: `m_{2k} = [z^0] (partial + *g)^{2k-1} g` with
/// `g(z) = sum_l kappa_{2l} z^{2l-1}`. The working order is `4K`; terms whose
/// degree exceeds what the remaining applications can bring back to `z^0` are
/// pruned, which never loses a constant-term contribution.
pub fn moments_from_cumulants_operator(kappa: &CumulantSeq, p: &TUParams) -> MomentSeq {
    let cap = kappa.len();
    let working_order = 4 * cap;
    let steps = 2 * cap - 1;
    assert!(
        2 * cap - 1 <= working_order,
        "working order cannot hold the seed series"
    );
    let mut g = TruncatedSeries::zero(working_order);
    for l in 1..=cap {
        g.set_coeff(2 * l - 1, kappa.entry(l).clone());
    }
    let mut out = Vec::with_capacity(cap);
    let mut h = g.clone();
    for j in 1..=steps {
        if j > 1 {
            h = apply_partial_tu(&h, p).add(&g.mul(&h));
        }
        // Degree D at step j reaches z^0 only if D <= steps - j.
        let reachable = steps - j;
        let mut pruned = TruncatedSeries::zero(working_order);
        for (deg, c) in h.coeffs().iter().enumerate() {
            if deg <= reachable && !c.is_zero() {
                pruned.set_coeff(deg, c.clone());
            }
        }
        h = pruned;
        if j % 2 == 1 {
            let k = (j + 1) / 2;
            if k <= cap && j == 2 * k - 1 {
                out.push(h.constant_term().clone());
            }
        }
    }
    MomentSeq::new(out)
}

// ---------------------------------------------------------------------------
// Path-sum route.
// ---------------------------------------------------------------------------

/// Moments as weighted sums over odd Łukasiewicz paths: up step `(1, 2s-1)`
/// carries `kappa_{2s}`, a down step from height `2s+1` carries `(u+s)`, and
/// a down step from height `2s` carries `(t+s)`.
pub fn moments_from_cumulants_paths(
    kappa: &CumulantSeq,
    p: &TUParams,
) -> Result<MomentSeq, TransformError> {
    let cap = check_guard(kappa.len(), PATH_ROUTE_MAX_K)?;
    let mut out = Vec::with_capacity(cap);
    for k in 1..=cap {
        let paths = enumerate_luk_odd(2 * k)?;
        let sum = paths
            .par_iter()
            .map(|path| {
                let st = path.stats();
                let mut w = ExactScalar::one();
                for (&h, &count) in &st.down_from_height {
                    let base = if h % 2 == 1 {
                        p.u() + &ExactScalar::from_int((h / 2) as i64)
                    } else {
                        p.t() + &ExactScalar::from_int((h / 2) as i64)
                    };
                    w = &w * &base.pow(count as i64);
                }
                for (&rise, &count) in &st.up_count_by_rise {
                    let s = (rise + 1) / 2;
                    w = &w * &kappa.entry(s).pow(count as i64);
                }
                w
            })
            .reduce(ExactScalar::zero, |x, y| &x + &y);
        out.push(sum);
    }
    Ok(MomentSeq::new(out))
}

// ---------------------------------------------------------------------------
// Plain sequence convolution (all-integer indices).
// ---------------------------------------------------------------------------

/// Convolution `c_k = sum_{i=0}^k a_i b_{k-i}` with `a_0 = b_0 = 1`.
pub fn sequence_convolution(
    a: &[ExactScalar],
    b: &[ExactScalar],
) -> Result<Vec<ExactScalar>, TransformError> {
    if a.len() != b.len() {
        return Err(TransformError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let cap = a.len();
    let mut c = Vec::with_capacity(cap);
    for k in 1..=cap {
        // i = 0 and i = k terms use the implicit unit entries.
        let mut v = &a[k - 1] + &b[k - 1];
        for i in 1..k {
            v = &v + &(&a[i - 1] * &b[k - i - 1]);
        }
        c.push(v);
    }
    Ok(c)
}

/// Cumulants of a plain sequence: `exp( sum_l kappa_l z^l ) = 1 + sum_n a_n z^n`.
/// These are additive under [`sequence_convolution`].
pub fn sequence_cumulants(a: &[ExactScalar]) -> Vec<ExactScalar> {
    let cap = a.len();
    let mut f = TruncatedSeries::one(cap);
    for (n, v) in a.iter().enumerate() {
        f.set_coeff(n + 1, v.clone());
    }
    let g = f.log().expect("constant term is one by construction");
    g.coeffs()[1..].to_vec()
}

/// Inverse of [`sequence_cumulants`].
pub fn sequence_from_cumulants(kappa: &[ExactScalar]) -> Vec<ExactScalar> {
    let cap = kappa.len();
    let mut f = TruncatedSeries::zero(cap);
    for (l, v) in kappa.iter().enumerate() {
        f.set_coeff(l + 1, v.clone());
    }
    let e = f.exp().expect("constant term is zero by construction");
    e.coeffs()[1..].to_vec()
}

fn check_guard(k: usize, max: usize) -> Result<usize, TransformError> {
    if k > max {
        return Err(TransformError::GuardExceeded { k, max });
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn sym_t() -> ExactScalar {
        ExactScalar::var(Var::T)
    }
    fn sym_u() -> ExactScalar {
        ExactScalar::var(Var::U)
    }
    fn sym_k(l: usize) -> ExactScalar {
        ExactScalar::var(Var::seq(l))
    }
    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn coeffs_from_cumulants_first_order() {
        // K=1 symbolic: a_2 = t u kappa_2.
        let a = coeffs_from_cumulants(&CumulantSeq::symbolic(1), &TUParams::symbolic());
        assert_eq!(a.entry(1), &(&(&sym_t() * &sym_u()) * &sym_k(1)));
        // Zero cumulants map to zero coefficients.
        let a = coeffs_from_cumulants(&CumulantSeq::zeros(3), &TUParams::symbolic());
        assert!(a.entries().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn coeffs_from_cumulants_rational_point() {
        // kappa_2 = 1, kappa_4 = 0, t = u = 1: a_2 = 1, a_4 = 4 * 1/2 = 2.
        let kappa = CumulantSeq::from_rationals(&[rat(1, 1), rat(0, 1)]);
        let p = TUParams::from_rationals(rat(1, 1), rat(1, 1));
        let a = coeffs_from_cumulants(&kappa, &p);
        assert_eq!(a.entry(1), &int(1));
        assert_eq!(a.entry(2), &int(2));
    }

    #[test]
    fn cumulants_from_coeffs_inverse_pair() {
        let kappa = CumulantSeq::from_rationals(&[rat(2, 3), rat(-1, 5), rat(7, 2), rat(1, 1)]);
        let p = TUParams::symbolic();
        let back = cumulants_from_coeffs(&coeffs_from_cumulants(&kappa, &p), &p).unwrap();
        assert_eq!(back, kappa);
        // a_2 symbolic: kappa_2 = a_2 / (t u).
        let a = CoeffSeq::symbolic(1);
        let k = cumulants_from_coeffs(&a, &p).unwrap();
        assert_eq!(k.entry(1), &(&sym_k(1) / &(&sym_t() * &sym_u())));
    }

    #[test]
    fn pochhammer_zero_detected() {
        let a = CoeffSeq::from_rationals(&[rat(1, 1), rat(1, 1), rat(1, 1)]);
        let p = TUParams::from_rationals(rat(-2, 1), rat(7, 1));
        match cumulants_from_coeffs(&a, &p) {
            Err(TransformError::PochhammerZero { param: 't', n: 3 }) => {}
            other => panic!("expected (t)_3 zero, got {other:?}"),
        }
    }

    #[test]
    fn moment_coeff_recursion() {
        // m_2 symbolic: a_2 = t m_2.
        let p = TUParams::symbolic();
        let a = coeffs_from_moments(&MomentSeq::symbolic(1), &p);
        assert_eq!(a.entry(1), &(&sym_t() * &sym_k(1)));
        // (x-1)^2 has plain coefficients (-2, 1); at t = -2 the empirical
        // moments are (1, 1).
        let a = CoeffSeq::from_rationals(&[rat(-2, 1), rat(1, 1)]);
        let p = TUParams::from_rationals(rat(-2, 1), rat(1, 1));
        let m = moments_from_coeffs(&a, &p).unwrap();
        assert_eq!(m.entry(1), &int(1));
        assert_eq!(m.entry(2), &int(1));
        // Zero moments map to zero coefficients.
        let z = coeffs_from_moments(&MomentSeq::zeros(3), &TUParams::symbolic());
        assert!(z.entries().iter().all(|x| x.is_zero()));
        // t = 0 rejected in the inverse direction.
        let p0 = TUParams::from_rationals(rat(0, 1), rat(1, 1));
        assert!(matches!(
            moments_from_coeffs(&a, &p0),
            Err(TransformError::TIsZero)
        ));
    }

    #[test]
    fn partition_lemma_routes_match_series() {
        let p = TUParams::symbolic();
        let kappa = CumulantSeq::symbolic(3);
        let a1 = coeffs_from_cumulants(&kappa, &p);
        let a2 = coeffs_from_cumulants_partitions(&kappa, &p).unwrap();
        assert_eq!(a1, a2);
        let k1 = cumulants_from_coeffs(&a1, &p).unwrap();
        let k2 = cumulants_from_coeffs_partitions(&a1, &p).unwrap();
        assert_eq!(k1, k2);
        assert_eq!(k1, kappa);
        let m = MomentSeq::symbolic(3);
        let b1 = coeffs_from_moments(&m, &p);
        let b2 = coeffs_from_moments_partitions(&m, &p).unwrap();
        assert_eq!(b1, b2);
        let m1 = moments_from_coeffs(&b1, &p).unwrap();
        let m2 = moments_from_coeffs_partitions(&b1, &p).unwrap();
        assert_eq!(m1, m2);
        assert_eq!(m1, m);
    }

    #[test]
    fn operator_examples() {
        let p = TUParams::symbolic();
        // z -> u, z^2 -> (t+1) z, 1 -> 0.
        let z = TruncatedSeries::monomial(ExactScalar::one(), 1, 4);
        assert_eq!(apply_partial_tu(&z, &p).coeffs()[0], sym_u());
        let z2 = TruncatedSeries::monomial(ExactScalar::one(), 2, 4);
        let d = apply_partial_tu(&z2, &p);
        assert_eq!(d.coeffs()[1], &sym_t() + &int(1));
        let one = TruncatedSeries::one(4);
        assert!(apply_partial_tu(&one, &p).is_zero());
    }

    #[test]
    fn operator_route_first_moments() {
        let p = TUParams::symbolic();
        // K = 1: m_2 = u kappa_2.
        let m = moments_from_cumulants_operator(&CumulantSeq::symbolic(1), &p);
        assert_eq!(m.entry(1), &(&sym_u() * &sym_k(1)));
        // kappa_2 = 1 only, t = u = 1: m_4 = 3.
        let kappa = CumulantSeq::from_rationals(&[rat(1, 1), rat(0, 1)]);
        let pr = TUParams::from_rationals(rat(1, 1), rat(1, 1));
        let m = moments_from_cumulants_operator(&kappa, &pr);
        assert_eq!(m.entry(2), &int(3));
    }

    #[test]
    fn path_route_first_moments() {
        let p = TUParams::symbolic();
        let m = moments_from_cumulants_paths(&CumulantSeq::symbolic(1), &p).unwrap();
        assert_eq!(m.entry(1), &(&sym_u() * &sym_k(1)));
        // K = 2 with kappa_4 = 0: m_4 = u (t + u + 1) kappa_2^2.
        let kappa = CumulantSeq::new(vec![sym_k(1), ExactScalar::zero()]);
        let m = moments_from_cumulants_paths(&kappa, &p).unwrap();
        let expect = &(&sym_u() * &(&(&sym_t() + &sym_u()) + &int(1))) * &sym_k(1).pow(2);
        assert_eq!(m.entry(2), &expect);
    }

    #[test]
    fn sequence_convolution_and_cumulants() {
        let a = vec![int(1), int(0)];
        let b = vec![int(2), int(0)];
        let c = sequence_convolution(&a, &b).unwrap();
        assert_eq!(c, vec![int(3), int(2)]);
        // kappa of (a1, a2) = (a1, a2 - a1^2/2).
        let a = vec![sym_k(1), sym_k(2)];
        let k = sequence_cumulants(&a);
        assert_eq!(k[0], sym_k(1));
        assert_eq!(k[1], &sym_k(2) - &sym_k(1).pow(2).div_int(2));
        // Round trip.
        assert_eq!(sequence_from_cumulants(&k), a);
        // Mismatched lengths rejected.
        assert!(sequence_convolution(&a, &[int(1)]).is_err());
    }

    #[test]
    fn sequence_cumulants_linearize() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let a: Vec<ExactScalar> = (0..5)
                .map(|_| ExactScalar::from_rational(rat(rng.gen_range(-9..10), rng.gen_range(1..7))))
                .collect();
            let b: Vec<ExactScalar> = (0..5)
                .map(|_| ExactScalar::from_rational(rat(rng.gen_range(-9..10), rng.gen_range(1..7))))
                .collect();
            let c = sequence_convolution(&a, &b).unwrap();
            let ka = sequence_cumulants(&a);
            let kb = sequence_cumulants(&b);
            let kc = sequence_cumulants(&c);
            for i in 0..5 {
                assert_eq!(kc[i], &ka[i] + &kb[i]);
            }
        }
    }

    #[test]
    fn guard_rejects_large_orders() {
        let kappa = CumulantSeq::zeros(8);
        assert!(matches!(
            moments_from_cumulants_paths(&kappa, &TUParams::symbolic()),
            Err(TransformError::GuardExceeded { k: 8, max: 7 })
        ));
        let kappa6 = CumulantSeq::zeros(6);
        assert!(matches!(
            moments_from_cumulants_partitions(&kappa6, &TUParams::symbolic()),
            Err(TransformError::GuardExceeded { k: 6, max: 5 })
        ));
    }
}
