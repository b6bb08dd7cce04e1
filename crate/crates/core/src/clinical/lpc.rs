//! Autocorrelation-method linear prediction and line spectral frequencies.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};

/// Prediction polynomial `A(z) = 1 + a_1 z^-1 + … + a_p z^-p`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpcModel {
    /// `[1, a_1, …, a_p]`.
    pub coefficients: Vec<f64>,
    /// Final prediction-error energy from the recursion.
    pub error: f64,
}

impl LpcModel {
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }
}

/// Biased autocorrelation at lags `0..=max_lag`.
pub fn autocorrelation(x: &[f64], max_lag: usize) -> Vec<f64> {
    (0..=max_lag)
        .map(|k| x.iter().zip(x.iter().skip(k)).map(|(a, b)| a * b).sum())
        .collect()
}

/// Levinson-Durbin recursion on autocorrelation `r[0..=order]`.
pub fn levinson_durbin(r: &[f64], order: usize) -> Result<LpcModel> {
    if r.len() <= order {
        return Err(Error::InvalidParameter(format!(
            "need {} autocorrelation lags, got {}",
            order + 1,
            r.len()
        )));
    }
    if !(r[0] > 0.0) {
        return Err(Error::DegenerateSignal("zero autocorrelation".into()));
    }
    let mut a = vec![0.0; order + 1];
    a[0] = 1.0;
    let mut err = r[0];
    for i in 1..=order {
        let acc: f64 = (1..i).map(|j| a[j] * r[i - j]).sum::<f64>() + r[i];
        let k = -acc / err;
        let prev = a.clone();
        for j in 1..i {
            a[j] = prev[j] + k * prev[i - j];
        }
        a[i] = k;
        err *= 1.0 - k * k;
        if err <= 0.0 {
            // Perfectly predictable: higher coefficients stay zero.
            err = 0.0;
            break;
        }
    }
    Ok(LpcModel { coefficients: a, error: err })
}

/// Linear prediction of the given order over the whole of `x`.
pub fn lpc(x: &[f64], order: usize) -> Result<LpcModel> {
    if order == 0 {
        return Err(Error::InvalidParameter("LPC order must be at least 1".into()));
    }
    if x.len() <= order {
        return Err(Error::SignalTooShort { needed: order + 1, got: x.len() });
    }
    levinson_durbin(&autocorrelation(x, order), order)
}

/// Roots of `c[0] z^n + c[1] z^(n-1) + … + c[n]` via companion-matrix eigenvalues.
pub fn polynomial_roots(c: &[f64]) -> Vec<Complex<f64>> {
    let mut c = c;
    while c.len() > 1 && c[0] == 0.0 {
        c = &c[1..];
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        m[(0, j)] = -c[j + 1] / c[0];
    }
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    m.complex_eigenvalues().iter().copied().collect()
}

/// Line spectral frequencies in radians, ascending in (0, π).
///
/// Returns `(p_angles, q_angles)` from the symmetric and antisymmetric
/// polynomials `A(z) ± z^-(p+1) A(1/z)`, trivial roots at z = ±1 removed.
pub fn lsf_split(a: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let p = a.len() - 1;
    let mut sym = vec![0.0; p + 2];
    let mut anti = vec![0.0; p + 2];
    for i in 0..=p + 1 {
        let fwd = if i <= p { a[i] } else { 0.0 };
        let rev = if i >= 1 { a[p + 1 - i] } else { 0.0 };
        sym[i] = fwd + rev;
        anti[i] = fwd - rev;
    }
    let angles = |poly: &[f64]| {
        let mut out: Vec<f64> = polynomial_roots(poly)
            .into_iter()
            .filter(|z| z.im > 0.0)
            .map(|z| z.arg())
            .filter(|&w| w > 1e-7 && w < std::f64::consts::PI - 1e-7)
            .collect();
        out.sort_by(f64::total_cmp);
        out
    };
    (angles(&sym), angles(&anti))
}

/// All line spectral frequencies, merged and sorted.
pub fn lsf(a: &[f64]) -> Vec<f64> {
    let (p, q) = lsf_split(a);
    let mut all: Vec<f64> = p.into_iter().chain(q).collect();
    all.sort_by(f64::total_cmp);
    all
}
