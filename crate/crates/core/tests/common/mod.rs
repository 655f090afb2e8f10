//! Closed-form oracles shared by the integration tests. They do not call the
//! library's Hamiltonian builders or propagators.

#![allow(dead_code)]

use ionparity::hilbert::{BasisLabel, Level};
use ionparity::State;

/// `e^{−x/2} L_n(x)` from the three-term Laguerre recurrence.
pub fn laguerre_diag(n: usize, x: f64) -> f64 {
    let (mut l0, mut l1) = (1.0, 1.0 - x);
    if n == 0 {
        return (-x / 2.0).exp();
    }
    for k in 1..n {
        let k = k as f64;
        let l2 = ((2.0 * k + 1.0 - x) * l1 - k * l0) / (k + 1.0);
        l0 = l1;
        l1 = l2;
    }
    (-x / 2.0).exp() * l1
}

/// Second-beam strength for the calibration `g₁(1 − η₁²/2) + g₂(1 − η₂²/2) = 0`.
pub fn paper_linear_g2(g1: f64, eta1: f64, eta2: f64) -> f64 {
    -g1 * (1.0 - eta1 * eta1 / 2.0) / (1.0 - eta2 * eta2 / 2.0)
}

/// The two-beam Hamiltonian on a single axis is `Σ_n c_n |n⟩⟨n| σ_x` with
/// `c_n = −(g₁ e^{−η₁²/2} L_n(η₁²) + g₂ e^{−η₂²/2} L_n(η₂²))` (exact for
/// `n` not above the series order). `|n, −⟩` evolves to
/// `cos(c_n t)|n, −⟩ − i sin(c_n t)|n, +⟩`, so the overlap with the
/// reflected probe is `Σ_n p_n (−1)^n cos(c_n t)`.
pub fn two_beam_fidelity(probe: &State, g1: f64, g2: f64, eta1: f64, eta2: f64, t: f64) -> f64 {
    let cutoff = probe.space().cutoff(ionparity::Axis::Z).unwrap();
    let mut overlap = 0.0;
    for n in 0..cutoff {
        let amp = probe.amplitude(BasisLabel::new(Level::Minus, [0, 0, n])).unwrap();
        let c = -(g1 * laguerre_diag(n, eta1 * eta1) + g2 * laguerre_diag(n, eta2 * eta2));
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        overlap += amp.norm_sqr() * sign * (c * t).cos();
    }
    overlap * overlap
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
