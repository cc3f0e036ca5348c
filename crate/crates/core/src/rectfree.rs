//! q-rectangular free probability at the level of even moment sequences:
//! cumulants through the noncrossing-even-partition recursion, free
//! convolution by cumulant addition, and the rectangular Gaussian family
//! (moments exactly, density by quadrature cross-check only).

use num_traits::{One, Zero};

use crate::combin::{enumerate_nc_even, CombinError, SetPartition};
use crate::exactalg::{rat_to_f64, ExactScalar, Rational, Var};

/// Moment-level operations enumerate noncrossing even partitions of `[2K]`.
pub const QRECT_MAX_K: usize = 7;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RectFreeError {
    #[error("order {k} exceeds the guard {max}")]
    GuardExceeded { k: usize, max: usize },
    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("the density route requires q > 1, got {q}")]
    DensityNeedsQAboveOne { q: Rational },
    #[error(transparent)]
    Combin(#[from] CombinError),
}

/// Deformation parameter `q`: a rational `>= 1` or the symbol `s^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QParam {
    q: ExactScalar,
}

impl QParam {
    /// Symbolic `q = s^2`.
    pub fn symbolic() -> QParam {
        QParam {
            q: ExactScalar::var(Var::S).pow(2),
        }
    }

    pub fn from_rational(q: Rational) -> QParam {
        assert!(
            q >= Rational::one(),
            "rational specializations require q >= 1"
        );
        QParam {
            q: ExactScalar::from_rational(q),
        }
    }

    pub fn value(&self) -> &ExactScalar {
        &self.q
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.q.as_rational()
    }

    /// `q^(-e)`.
    fn inv_pow(&self, e: usize) -> ExactScalar {
        self.q.pow(-(e as i64))
    }
}

/// A symmetric measure seen through its even moments: entry `k` is `m_{2k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMeasureMoments {
    m: Vec<ExactScalar>,
}

impl SymMeasureMoments {
    pub fn new(m: Vec<ExactScalar>) -> SymMeasureMoments {
        assert!(!m.is_empty());
        SymMeasureMoments { m }
    }

    pub fn from_rationals(m: &[Rational]) -> SymMeasureMoments {
        SymMeasureMoments::new(
            m.iter()
                .map(|r| ExactScalar::from_rational(r.clone()))
                .collect(),
        )
    }

    pub fn zeros(len: usize) -> SymMeasureMoments {
        SymMeasureMoments::new(vec![ExactScalar::zero(); len])
    }

    pub fn order(&self) -> usize {
        self.m.len()
    }

    /// 1-based: `moment(k)` is `m_{2k}`.
    pub fn moment(&self, k: usize) -> &ExactScalar {
        &self.m[k - 1]
    }

    pub fn moments(&self) -> &[ExactScalar] {
        &self.m
    }
}

/// Weighted product over one noncrossing even partition:
/// `q^(-even(pi)) * prod_B kappa_{|B|}`.
fn partition_term(pi: &SetPartition, kappa: &[ExactScalar], q: &QParam) -> ExactScalar {
    let mut acc = q.inv_pow(pi.even_stat());
    for size in pi.block_sizes() {
        acc = &acc * &kappa[size / 2 - 1];
    }
    acc
}

/// Forward map: `m_{2k} = sum over NC_even(2k) of q^(-even(pi)) kappa_pi`.
pub fn moments_from_qrect_cumulants(
    kappa: &[ExactScalar],
    q: &QParam,
) -> Result<SymMeasureMoments, RectFreeError> {
    let cap = check_guard(kappa.len())?;
    let mut m = Vec::with_capacity(cap);
    for k in 1..=cap {
        let mut acc = ExactScalar::zero();
        for pi in enumerate_nc_even(2 * k)? {
            acc = &acc + &partition_term(&pi, kappa, q);
        }
        m.push(acc);
    }
    Ok(SymMeasureMoments::new(m))
}

/// Inverse map, solved recursively: the one-block partition isolates
/// `kappa_{2k}` with weight 1, every other term involves lower cumulants only.
pub fn qrect_cumulants_from_moments(
    mu: &SymMeasureMoments,
    q: &QParam,
) -> Result<Vec<ExactScalar>, RectFreeError> {
    let cap = check_guard(mu.order())?;
    let mut kappa: Vec<ExactScalar> = Vec::with_capacity(cap);
    for k in 1..=cap {
        kappa.push(ExactScalar::zero());
        let mut rest = ExactScalar::zero();
        for pi in enumerate_nc_even(2 * k)? {
            if pi.block_count() == 1 {
                continue;
            }
            rest = &rest + &partition_term(&pi, &kappa, q);
        }
        kappa[k - 1] = mu.moment(k) - &rest;
    }
    Ok(kappa)
}

/// q-rectangular free convolution at the moment level: transform both inputs
/// to cumulants, add, transform back.
pub fn qrect_free_convolution(
    mu: &SymMeasureMoments,
    nu: &SymMeasureMoments,
    q: &QParam,
) -> Result<SymMeasureMoments, RectFreeError> {
    if mu.order() != nu.order() {
        return Err(RectFreeError::LengthMismatch {
            left: mu.order(),
            right: nu.order(),
        });
    }
    let ka = qrect_cumulants_from_moments(mu, q)?;
    let kb = qrect_cumulants_from_moments(nu, q)?;
    let sum: Vec<ExactScalar> = ka.iter().zip(kb.iter()).map(|(a, b)| a + b).collect();
    moments_from_qrect_cumulants(&sum, q)
}

/// Moments of the rectangular Gaussian: the measure whose only nonzero
/// q-rectangular cumulant is `kappa_2 = sigma^2`.
pub fn rect_gaussian_moments(
    q: &QParam,
    sigma2: &Rational,
    order: usize,
) -> Result<SymMeasureMoments, RectFreeError> {
    let mut kappa = vec![ExactScalar::zero(); order];
    kappa[0] = ExactScalar::from_rational(sigma2.clone());
    moments_from_qrect_cumulants(&kappa, q)
}

/// One row of the quadrature cross-check report.
#[derive(Debug, Clone)]
pub struct DensityCheckRow {
    /// 0 for total mass, otherwise the moment index `2k`.
    pub moment: usize,
    pub quadrature: f64,
    pub exact: f64,
    pub abs_err: f64,
}

/// Report from [`rect_gaussian_density_check`].
#[derive(Debug, Clone)]
pub struct DensityCheckReport {
    pub rows: Vec<DensityCheckRow>,
    /// Largest |endpoint difference| between the support of the Gaussian with
    /// `sigma^2 = q s^2 / (q-1)` and the heat-flow support window `A(q, s)`.
    pub support_endpoint_err: f64,
    pub panels_per_interval: usize,
}

impl DensityCheckReport {
    pub fn max_abs_err(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_err).fold(0.0, f64::max)
    }
}

/// Numerical verification of the rectangular Gaussian density: composite
/// Simpson over the positive support interval (doubled by symmetry), mass and
/// even moments against the exact combinatorial values. Endpoints are clipped
/// by 1e-12 to avoid the square-root derivative blowup at the edges.
pub fn rect_gaussian_density_check(
    q: &Rational,
    sigma2: &Rational,
    order: usize,
) -> Result<DensityCheckReport, RectFreeError> {
    if *q <= Rational::one() {
        return Err(RectFreeError::DensityNeedsQAboveOne { q: q.clone() });
    }
    let qp = QParam::from_rational(q.clone());
    let exact = rect_gaussian_moments(&qp, sigma2, order)?;

    let qf = rat_to_f64(q);
    let s2f = rat_to_f64(sigma2);
    let sigma = s2f.sqrt();
    let qi = 1.0 / qf.sqrt();
    let lo = (1.0 - qi) * sigma;
    let hi = (1.0 + qi) * sigma;

    // density on x > 0: sqrt(4 q sigma^4 - (q x^2 - (q+1) sigma^2)^2) / (2 pi sigma^2 x)
    let density = |x: f64| -> f64 {
        let inner = 4.0 * qf * s2f * s2f - (qf * x * x - (qf + 1.0) * s2f).powi(2);
        if inner <= 0.0 {
            return 0.0;
        }
        inner.sqrt() / (2.0 * std::f64::consts::PI * s2f * x)
    };

    const PANELS: usize = 200_000;
    const CLIP: f64 = 1e-12;
    let a = lo + CLIP;
    let b = hi - CLIP;
    let h = (b - a) / PANELS as f64;
    let simpson = |f: &dyn Fn(f64) -> f64| -> f64 {
        let mut acc = f(a) + f(b);
        for i in 1..PANELS {
            let x = a + h * i as f64;
            acc += f(x) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * h / 3.0
    };

    let mut rows = Vec::with_capacity(order + 1);
    // Total mass: both symmetric halves.
    let mass = 2.0 * simpson(&density);
    rows.push(DensityCheckRow {
        moment: 0,
        quadrature: mass,
        exact: 1.0,
        abs_err: (mass - 1.0).abs(),
    });
    for k in 1..=order {
        let f = move |x: f64| x.powi(2 * k as i32) * density(x);
        let got = 2.0 * simpson(&f);
        let want = exact
            .moment(k)
            .as_rational()
            .map(|r| rat_to_f64(&r))
            .expect("rational q gives rational moments");
        rows.push(DensityCheckRow {
            moment: 2 * k,
            quadrature: got,
            exact: want,
            abs_err: (got - want).abs(),
        });
    }

    // Support identity: with sigma^2 = q s^2 / (q - 1), the interval
    // [(1 - q^{-1/2}) sigma, (1 + q^{-1/2}) sigma] equals
    // [sqrt(q-1) s / (sqrt(q) + 1), sqrt(q-1) s / (sqrt(q) - 1)].
    let s_heat = (s2f * (qf - 1.0) / qf).sqrt();
    let alt_lo = (qf - 1.0).sqrt() * s_heat / (qf.sqrt() + 1.0);
    let alt_hi = (qf - 1.0).sqrt() * s_heat / (qf.sqrt() - 1.0);
    let support_endpoint_err = (alt_lo - lo).abs().max((alt_hi - hi).abs());

    Ok(DensityCheckReport {
        rows,
        support_endpoint_err,
        panels_per_interval: PANELS,
    })
}

fn check_guard(k: usize) -> Result<usize, RectFreeError> {
    if k > QRECT_MAX_K {
        return Err(RectFreeError::GuardExceeded {
            k,
            max: QRECT_MAX_K,
        });
    }
    Ok(k)
}
