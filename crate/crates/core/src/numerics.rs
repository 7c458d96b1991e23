//! Shared numerical primitives: reference CDFs, quantiles, and ordinary
//! least squares. Everything here is a pure function.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Natural log of the gamma function (Lanczos approximation, g = 5).
pub fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 6] = [
        76.180_091_729_471_46,
        -86.505_320_329_416_77,
        24.014_098_240_830_91,
        -1.231_739_572_450_155,
        0.120_865_097_386_617_9e-2,
        -0.539_523_938_495_3e-5,
    ];
    let tmp = x + 5.5;
    let tmp = tmp - (x + 0.5) * tmp.ln();
    let mut ser = 1.000_000_000_190_015;
    for (j, c) in COEF.iter().enumerate() {
        ser += c / (x + 1.0 + j as f64);
    }
    -tmp + (2.506_628_274_631_000_5 * ser / x).ln()
}

/// Regularized lower incomplete gamma P(a, x) by series expansion.
/// Valid for x < a + 1.
fn gamma_p_series(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let gln = ln_gamma(a);
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..500 {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * 1e-16 {
            break;
        }
    }
    sum * (-x + a * x.ln() - gln).exp()
}

/// Regularized upper incomplete gamma Q(a, x) by continued fraction
/// (modified Lentz). Valid for x >= a + 1.
fn gamma_q_cf(a: f64, x: f64) -> f64 {
    const FPMIN: f64 = 1e-300;
    let gln = ln_gamma(a);
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b + an / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    let log_prefactor = -x + a * x.ln() - gln;
    if log_prefactor < -700.0 {
        return 0.0;
    }
    log_prefactor.exp() * h
}

/// Regularized lower incomplete gamma P(a, x).
pub fn gamma_p(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "gamma_p domain");
    if x < a + 1.0 {
        gamma_p_series(a, x)
    } else {
        1.0 - gamma_q_cf(a, x)
    }
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
pub fn gamma_q(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "gamma_q domain");
    if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_cf(a, x)
    }
}

/// Complementary error function, full double range.
pub fn erfc(x: f64) -> f64 {
    if x >= 0.0 {
        gamma_q(0.5, x * x)
    } else {
        1.0 + gamma_p(0.5, x * x)
    }
}

/// Standard normal CDF Phi(z).
///
/// ```
/// let p = benford_battery::numerics::std_normal_cdf(0.0);
/// assert!((p - 0.5).abs() < 1e-15);
/// ```
pub fn std_normal_cdf(z: f64) -> f64 {
    let half_tail = 0.5 * gamma_q(0.5, z * z / 2.0);
    if z < 0.0 {
        half_tail
    } else {
        1.0 - half_tail
    }
}

/// Standard normal density.
pub fn std_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Upper-tail probability of the chi-square distribution with `df`
/// degrees of freedom.
pub fn chi_square_sf(x: f64, df: u32) -> Result<f64> {
    if df == 0 {
        return Err(Error::InvalidParameter("chi-square df must be positive".into()));
    }
    if x < 0.0 {
        return Err(Error::InvalidParameter(format!("chi-square statistic {x} is negative")));
    }
    Ok(gamma_q(df as f64 / 2.0, x / 2.0))
}

/// Upper-tail critical value: the x with chi_square_sf(x, df) = alpha.
pub fn chi_square_critical(df: u32, alpha: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) || alpha <= 0.0 {
        return Err(Error::InvalidParameter(format!("alpha {alpha} outside (0,1)")));
    }
    let mut hi = df as f64;
    while chi_square_sf(hi, df)? > alpha {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if chi_square_sf(mid, df)? > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Inverse of erfc on (0, 2): returns t with erfc(t) = y.
/// Safeguarded Newton with a bisection bracket.
fn inv_erfc(y: f64) -> f64 {
    assert!(y > 0.0 && y < 2.0, "inv_erfc domain");
    if y > 1.0 {
        return -inv_erfc(2.0 - y);
    }
    // erfc(t) ~ exp(-t^2)/(t sqrt(pi)) gives a tail starting point.
    let mut t = if y < 0.5 { (-(y.ln())).sqrt() } else { 0.0 };
    let (mut lo, mut hi) = (0.0_f64, 40.0_f64);
    let sqrt_pi_over_2 = std::f64::consts::PI.sqrt() / 2.0;
    for _ in 0..100 {
        let f = erfc(t) - y;
        if f > 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let exp_t2 = (t * t).min(700.0).exp();
        let step = f * sqrt_pi_over_2 * exp_t2;
        let mut next = t + step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= 1e-15 * (1.0 + t.abs()) {
            return next;
        }
        t = next;
    }
    t
}

/// Standard normal quantile Phi^{-1}(u), u in (0, 1).
///
/// Implemented by inverting the CDF rather than by any rejection
/// method, so seeded generator streams are identical on every platform.
pub fn std_normal_quantile(u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::InvalidParameter(format!("normal quantile argument {u} outside (0,1)")));
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    if u < 0.5 {
        Ok(-sqrt2 * inv_erfc(2.0 * u))
    } else {
        Ok(sqrt2 * inv_erfc(2.0 * (1.0 - u)))
    }
}

/// Ordinary least squares fit.
#[derive(Debug, Clone)]
pub struct OlsFit {
    pub coefficients: Vec<f64>,
    pub standard_errors: Vec<f64>,
    pub residual_variance: f64,
    /// Gaussian log-likelihood: -(n/2)(ln(2*pi) + ln(SSR/n) + 1).
    pub log_likelihood: f64,
    pub n_obs: usize,
    pub n_params: usize,
}

impl OlsFit {
    pub fn aic(&self) -> f64 {
        -2.0 * self.log_likelihood + 2.0 * self.n_params as f64
    }

    pub fn sbc(&self) -> f64 {
        -2.0 * self.log_likelihood + self.n_params as f64 * (self.n_obs as f64).ln()
    }
}

/// Least squares via Householder QR. `design` is row-major: one inner
/// slice per observation. Rank deficiency is reported, not regularized.
pub fn ols_fit(design: &[Vec<f64>], response: &[f64]) -> Result<OlsFit> {
    let n = design.len();
    if n == 0 || n != response.len() {
        return Err(Error::InvalidParameter("design/response length mismatch".into()));
    }
    let k = design[0].len();
    if k == 0 || design.iter().any(|r| r.len() != k) {
        return Err(Error::InvalidParameter("ragged or empty design matrix".into()));
    }
    if n <= k {
        return Err(Error::TooShort { needed: k + 1, got: n });
    }
    let x = DMatrix::from_fn(n, k, |i, j| design[i][j]);
    let y = DVector::from_column_slice(response);
    let qr = x.clone().qr();
    let r = qr.r();
    let max_diag = (0..k).map(|i| r[(i, i)].abs()).fold(0.0_f64, f64::max);
    for i in 0..k {
        if r[(i, i)].abs() <= 1e-12 * max_diag.max(1e-300) {
            return Err(Error::RankDeficient { pivot: i, total: k });
        }
    }
    let qty = qr.q().transpose() * &y;
    let beta = r
        .solve_upper_triangular(&qty.rows(0, k).into_owned())
        .ok_or(Error::RankDeficient { pivot: 0, total: k })?;
    let residuals = &y - &x * &beta;
    let ssr: f64 = residuals.iter().map(|e| e * e).sum();
    let residual_variance = ssr / (n - k) as f64;
    // (X'X)^{-1} = R^{-1} R^{-T}; only the diagonal is needed.
    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(k, k))
        .ok_or(Error::RankDeficient { pivot: 0, total: k })?;
    let standard_errors: Vec<f64> = (0..k)
        .map(|i| {
            let d: f64 = (0..k).map(|j| r_inv[(i, j)] * r_inv[(i, j)]).sum();
            (residual_variance * d).sqrt()
        })
        .collect();
    let nf = n as f64;
    let sigma2_ml = (ssr / nf).max(1e-300);
    let log_likelihood = -0.5 * nf * ((2.0 * std::f64::consts::PI).ln() + sigma2_ml.ln() + 1.0);
    Ok(OlsFit {
        coefficients: beta.iter().copied().collect(),
        standard_errors,
        residual_variance,
        log_likelihood,
        n_obs: n,
        n_params: k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Independent oracle for Phi: composite Simpson quadrature of the
    /// normal density from 0 to |z|.
    fn cdf_quadrature(z: f64) -> f64 {
        let a = 0.0;
        let b = z.abs();
        let n = 20_000;
        let h = (b - a) / n as f64;
        let mut s = std_normal_pdf(a) + std_normal_pdf(b);
        for i in 1..n {
            let x = a + i as f64 * h;
            s += std_normal_pdf(x) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let half = s * h / 3.0;
        if z >= 0.0 {
            0.5 + half
        } else {
            0.5 - half
        }
    }

    #[test]
    fn normal_cdf_trivial_and_derived() {
        assert_eq!(std_normal_cdf(0.0), 0.5);
        // 0.975 quantile, frozen from the quadrature oracle.
        assert_abs_diff_eq!(cdf_quadrature(1.959964), 0.97500002, epsilon = 1e-7);
        assert_abs_diff_eq!(std_normal_cdf(1.959964), 0.975, epsilon = 1e-6);
        for z in [-3.0, -1.0, -0.3, 0.7, 2.5, 5.0] {
            assert_abs_diff_eq!(std_normal_cdf(z), cdf_quadrature(z), epsilon = 1e-10);
        }
    }

    #[test]
    fn normal_cdf_extreme_tail_underflows_to_zero() {
        let p = std_normal_cdf(-74.90);
        assert!(p < 1e-300);
    }

    #[test]
    fn chi_square_sf_examples() {
        assert_eq!(chi_square_sf(0.0, 8).unwrap(), 1.0);
        assert_abs_diff_eq!(chi_square_sf(15.507, 8).unwrap(), 0.05, epsilon = 5e-4);
        assert!(chi_square_sf(4397.26, 8).unwrap() < 1e-12);
        assert!(chi_square_sf(1.0, 0).is_err());
    }

    #[test]
    fn chi_square_critical_inverts_sf() {
        let cv = chi_square_critical(8, 0.05).unwrap();
        assert_abs_diff_eq!(cv, 15.507, epsilon = 5e-3);
        assert_abs_diff_eq!(chi_square_sf(cv, 8).unwrap(), 0.05, epsilon = 1e-10);
    }

    #[test]
    fn quantile_inverts_cdf() {
        for u in [1e-12, 1e-6, 0.025, 0.5, 0.8, 0.975, 1.0 - 1e-9] {
            let z = std_normal_quantile(u).unwrap();
            assert_abs_diff_eq!(std_normal_cdf(z), u, epsilon = 1e-12 + 1e-10 * u);
        }
        assert!(std_normal_quantile(0.0).is_err());
    }

    #[test]
    fn ols_exact_fit() {
        let x: Vec<Vec<f64>> = vec![vec![1.0], vec![2.0], vec![3.0]];
        let fit = ols_fit(&x, &[2.0, 4.0, 6.0]).unwrap();
        assert_abs_diff_eq!(fit.coefficients[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.residual_variance, 0.0, epsilon = 1e-20);
    }

    #[test]
    fn ols_intercept_only_is_mean() {
        let x: Vec<Vec<f64>> = vec![vec![1.0]; 3];
        let fit = ols_fit(&x, &[1.0, 2.0, 3.0]).unwrap();
        assert_abs_diff_eq!(fit.coefficients[0], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn ols_monte_carlo_slope_recovery() {
        // y = x + noise, slope must land within 3 SE of 1.
        let mut rng = crate::generators::SplitMix64::new(42);
        let n = 1000;
        let mut design = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            let xi = i as f64 / 100.0;
            let e = std_normal_quantile(rng.next_unit_open()).unwrap();
            design.push(vec![1.0, xi]);
            y.push(xi + e);
        }
        let fit = ols_fit(&design, &y).unwrap();
        assert!((fit.coefficients[1] - 1.0).abs() < 3.0 * fit.standard_errors[1]);
    }

    #[test]
    fn ols_rank_deficiency_reported() {
        let x: Vec<Vec<f64>> = vec![vec![1.0, 2.0], vec![2.0, 4.0], vec![3.0, 6.0]];
        assert!(matches!(ols_fit(&x, &[1.0, 2.0, 3.0]), Err(Error::RankDeficient { .. })));
    }

    proptest! {
        #[test]
        fn cdf_symmetry(z in -30.0_f64..30.0) {
            let s = std_normal_cdf(z) + std_normal_cdf(-z);
            prop_assert!((s - 1.0).abs() < 1e-12);
        }

        #[test]
        fn chi_sf_strictly_decreasing(x in 0.01_f64..50.0, dx in 0.01_f64..10.0, df in 1u32..20) {
            let a = chi_square_sf(x, df).unwrap();
            let b = chi_square_sf(x + dx, df).unwrap();
            prop_assert!(b < a);
        }

        #[test]
        fn ols_residuals_orthogonal(seed in 0u64..500) {
            let mut rng = crate::generators::SplitMix64::new(seed);
            let n = 40;
            let mut design = Vec::with_capacity(n);
            let mut y = Vec::with_capacity(n);
            for _ in 0..n {
                let a = rng.next_unit_open() * 4.0 - 2.0;
                let b = rng.next_unit_open() * 4.0 - 2.0;
                design.push(vec![1.0, a, b]);
                y.push(rng.next_unit_open() * 10.0);
            }
            let fit = ols_fit(&design, &y).unwrap();
            let scale: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            for j in 0..3 {
                let dot: f64 = (0..n).map(|i| {
                    let pred: f64 = (0..3).map(|c| design[i][c] * fit.coefficients[c]).sum();
                    (y[i] - pred) * design[i][j]
                }).sum();
                prop_assert!(dot.abs() < 1e-8 * scale.max(1.0));
            }
        }
    }
}
