//! Small numerical kernels: exponential integrals with their removable
//! singularities, Simpson quadrature on uniform grids, classical RK4, a
//! bracketing Brent root finder and simple linear least squares.

use crate::error::{Error, Result};

/// Below this value of `|x * t|` the series limits are used.
pub const SERIES_LIMIT: f64 = 1e-8;

/// `(e^{x t} - 1) / x`, i.e. `∫_0^t e^{x s} ds`, continuous through `x = 0`.
pub fn exp_integral(x: f64, t: f64) -> f64 {
    let xt = x * t;
    if xt.abs() < SERIES_LIMIT {
        t * (1.0 + 0.5 * xt)
    } else {
        xt.exp_m1() / x
    }
}

/// Derivative of [`exp_integral`] with respect to `x`: `∫_0^t s e^{x s} ds`.
pub fn exp_integral_dx(x: f64, t: f64) -> f64 {
    let xt = x * t;
    if xt.abs() < 1e-4 {
        // t²/2 + x t³/3 + x² t⁴/8
        t * t * (0.5 + xt / 3.0 + xt * xt / 8.0)
    } else {
        (t * x * xt.exp() - xt.exp_m1()) / (x * x)
    }
}

/// Running Simpson integral of uniformly spaced samples.
///
/// Even nodes accumulate whole Simpson panels. Odd nodes close with the 3/8
/// rule over the last three panels (node 1 uses the cubic through the first
/// four samples), so every node carries a fourth-order estimate and the final
/// value coincides with composite Simpson whenever the interval count is even.
pub fn cumulative_simpson(values: &[f64], step: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * step * (values[0] + values[1]);
        return out;
    }
    out[1] = if n == 3 {
        step / 12.0 * (5.0 * values[0] + 8.0 * values[1] - values[2])
    } else {
        step / 24.0 * (9.0 * values[0] + 19.0 * values[1] - 5.0 * values[2] + values[3])
    };
    for i in 2..n {
        let v = values;
        out[i] = if i % 2 == 0 {
            out[i - 2] + step / 3.0 * (v[i - 2] + 4.0 * v[i - 1] + v[i])
        } else {
            // 3/8 rule over the last three panels
            out[i - 3] + 3.0 * step / 8.0 * (v[i - 3] + 3.0 * v[i - 2] + 3.0 * v[i - 1] + v[i])
        };
    }
    out
}

/// Composite Simpson integral of uniformly spaced samples.
pub fn simpson(values: &[f64], step: f64) -> f64 {
    cumulative_simpson(values, step)
        .last()
        .copied()
        .unwrap_or(0.0)
}

/// One classical fourth-order Runge–Kutta step for a scalar ODE.
pub fn rk4_step<F>(f: &F, t: f64, y: f64, h: f64) -> f64
where
    F: Fn(f64, f64) -> f64,
{
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    let k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    let k4 = f(t + h, y + h * k3);
    y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Stopping rule for [`brent`].
#[derive(Debug, Clone, Copy)]
pub struct RootTolerance {
    /// Absolute tolerance on the abscissa.
    pub x_abs: f64,
    /// Stop as soon as `|f(x)|` falls below this.
    pub f_abs: f64,
    pub max_iter: usize,
}

/// Result of a root search.
#[derive(Debug, Clone, Copy)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

/// Brent's method (inverse quadratic interpolation, secant, bisection) on a
/// sign-changing bracket `[a, b]`.
pub fn brent<F>(f: F, mut a: f64, mut b: f64, tol: RootTolerance) -> Result<Root>
where
    F: Fn(f64) -> f64,
{
    let mut fa = f(a);
    let mut fb = f(b);
    if fa.abs() <= tol.f_abs {
        return Ok(Root {
            x: a,
            fx: fa,
            iterations: 0,
        });
    }
    if fb.abs() <= tol.f_abs {
        return Ok(Root {
            x: b,
            fx: fb,
            iterations: 0,
        });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Solver(format!(
            "root not bracketed: f({a}) = {fa}, f({b}) = {fb}"
        )));
    }
    let mut c = b;
    let mut fc = fb;
    let mut d = b - a;
    let mut e = d;
    for iter in 1..=tol.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol.x_abs;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb.abs() <= tol.f_abs {
            return Ok(Root {
                x: b,
                fx: fb,
                iterations: iter,
            });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    Err(Error::Solver(format!(
        "Brent iteration cap of {} reached (last x = {b}, f = {fb})",
        tol.max_iter
    )))
}

/// Ordinary least squares fit of `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub intercept: f64,
    pub slope: f64,
    pub intercept_se: f64,
    pub slope_se: f64,
    /// Residual standard error, `sqrt(SSR / (n - 2))`; zero for two points.
    pub residual_se: f64,
    pub r_squared: f64,
    pub n: usize,
}

pub fn linear_least_squares(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if x.len() != y.len() {
        return Err(Error::domain(format!(
            "regression inputs differ in length ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::RankDeficient(format!(
            "{n} point(s); need at least 2"
        )));
    }
    let nf = n as f64;
    let x_mean = x.iter().sum::<f64>() / nf;
    let y_mean = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|xi| (xi - x_mean).powi(2)).sum();
    let sxy: f64 = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| (xi - x_mean) * (yi - y_mean))
        .sum();
    let syy: f64 = y.iter().map(|yi| (yi - y_mean).powi(2)).sum();
    let x_scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1.0);
    if sxx <= (f64::EPSILON * x_scale).powi(2) * nf {
        return Err(Error::RankDeficient("all abscissae are equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ssr: f64 = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| (yi - intercept - slope * xi).powi(2))
        .sum();
    let residual_se = if n > 2 {
        (ssr / (nf - 2.0)).sqrt()
    } else {
        0.0
    };
    let r_squared = if syy > 0.0 { 1.0 - ssr / syy } else { 1.0 };
    Ok(LinearFit {
        intercept,
        slope,
        intercept_se: residual_se * (1.0 / nf + x_mean * x_mean / sxx).sqrt(),
        slope_se: residual_se / sxx.sqrt(),
        residual_se,
        r_squared,
        n,
    })
}
