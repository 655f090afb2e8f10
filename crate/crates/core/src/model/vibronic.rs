//! Vibronic couplings: plane-wave operators, the Lamb-Dicke series, the
//! interaction-picture Hamiltonian with its sideband harmonics, the two-beam
//! parity coupling and its calibration.

use std::collections::BTreeMap;

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    electronic_transition, mode_operator, number_op, quadrature, sigma_x, Axis, Cutoffs, Direction, Level,
    OperatorMatrix, SpaceDescriptor,
};
use crate::linalg::{self, CMatrix};
use crate::scalar::{cplx, factorial, falling_factorial, re, Real};

/// Default truncation order of the Lamb-Dicke series.
pub const DEFAULT_SERIES_ORDER: usize = 8;

/// One effective Raman beam acting on the vibrational mode along `direction`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamSpec<T> {
    /// Coupling strength g (signed, rad per time unit).
    pub strength: T,
    /// Lamb-Dicke parameter η ≥ 0.
    pub eta: T,
    pub direction: Direction<T>,
    /// Largest `j` kept in the series.
    pub series_order: usize,
}

impl<T: Real> BeamSpec<T> {
    pub fn along(axis: Axis, strength: T, eta: T) -> Self {
        BeamSpec { strength, eta, direction: Direction::Axis(axis), series_order: DEFAULT_SERIES_ORDER }
    }

    pub fn with_order(mut self, series_order: usize) -> Self {
        self.series_order = series_order;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta >= T::zero()) {
            return Err(Error::InvalidParameter(format!("Lamb-Dicke parameter {:?} must be >= 0", self.eta)));
        }
        Ok(())
    }
}

/// `(−i)^m`.
fn minus_i_pow<T: Real>(m: usize) -> Complex<T> {
    match m % 4 {
        0 => cplx(T::one(), T::zero()),
        1 => cplx(T::zero(), -T::one()),
        2 => cplx(-T::one(), T::zero()),
        _ => cplx(T::zero(), T::one()),
    }
}

/// Generator `Σ_j η_j (a_j + a_j†)` of the plane wave `e^{−i k·r}`.
/// Axes with zero weight may be absent from the space.
pub fn plane_wave_generator<T: Real>(space: &SpaceDescriptor, eta: [T; 3]) -> Result<OperatorMatrix<T>> {
    let mut g = OperatorMatrix::zeros(*space);
    for axis in Axis::ALL {
        let e = eta[axis.index()];
        if e == T::zero() {
            continue;
        }
        g = &g + &quadrature(space, axis)?.scale(e);
    }
    Ok(g)
}

/// `exp(−i Σ_j η_j (a_j + a_j†))` by exact exponentiation in the truncated space.
pub fn plane_wave_from_vector<T: Real>(space: &SpaceDescriptor, eta: [T; 3]) -> Result<OperatorMatrix<T>> {
    if eta.iter().all(|e| *e == T::zero()) {
        return Ok(OperatorMatrix::identity(*space));
    }
    let g = plane_wave_generator(space, eta)?;
    let u = linalg::expm_hermitian(g.entries(), T::one())?;
    Ok(OperatorMatrix::from_raw(*space, u, false))
}

fn eta_vector<T: Real>(direction: Direction<T>, eta: T) -> Result<[T; 3]> {
    if !(eta >= T::zero()) {
        return Err(Error::InvalidParameter(format!("Lamb-Dicke parameter {eta:?} must be >= 0")));
    }
    Ok(direction.unit_vector().map(|u| u * eta))
}

/// `exp(−iη(a_L + a_L†))` by exact exponentiation inside the truncated space.
///
/// The truncated exponential differs from the untruncated matrix elements
/// near the cutoff; [`plane_wave_operator_padded`] gives the latter.
pub fn plane_wave_operator<T: Real>(
    space: &SpaceDescriptor,
    direction: Direction<T>,
    eta: T,
) -> Result<OperatorMatrix<T>> {
    plane_wave_from_vector(space, eta_vector(direction, eta)?)
}

/// Exact plane-wave operator computed with `extra_levels` additional Fock
/// levels on each participating axis, then projected back onto `space`.
pub fn plane_wave_operator_padded<T: Real>(
    space: &SpaceDescriptor,
    direction: Direction<T>,
    eta: T,
    extra_levels: usize,
) -> Result<OperatorMatrix<T>> {
    let eta_vec = eta_vector(direction, eta)?;
    let pad = |axis: Axis| {
        space
            .cutoff(axis)
            .map(|c| if eta_vec[axis.index()] != T::zero() { c + extra_levels } else { c })
    };
    let big = SpaceDescriptor::new(
        space.electronic_dim(),
        Cutoffs { x: pad(Axis::X), y: pad(Axis::Y), z: pad(Axis::Z) },
    )?;
    let full = plane_wave_from_vector(&big, eta_vec)?;
    let d = space.dim();
    let map: Vec<usize> = space.labels().map(|l| big.index(l).expect("padded space contains label")).collect();
    let mut m = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = full.entries()[(map[i], map[j])];
        }
    }
    Ok(OperatorMatrix::from_raw(*space, m, false))
}

/// Normally ordered series `e^{−η²/2} Σ_{s,j ≤ order} (−iη)^{s+j}/(s! j!) (a_L†)^j a_L^s`.
#[allow(clippy::needless_range_loop)]
pub fn plane_wave_series<T: Real>(
    space: &SpaceDescriptor,
    direction: Direction<T>,
    eta: T,
    order: usize,
) -> Result<OperatorMatrix<T>> {
    eta_vector(direction, eta)?;
    let a = mode_operator(space, direction)?;
    let (lower, raise) = ladder_powers(&a, order);
    let damp = (-eta * eta / T::lit(2.0)).exp();
    let mut out = OperatorMatrix::zeros(*space);
    for j in 0..=order {
        for s in 0..=order {
            let c = minus_i_pow::<T>(s + j)
                * re(damp * eta.powi((s + j) as i32) / (factorial::<T>(s) * factorial::<T>(j)));
            out = &out + &(&raise[j] * &lower[s]).scale_complex(c);
        }
    }
    Ok(out)
}

/// `[a^0 .. a^order]` and `[(a†)^0 .. (a†)^order]`.
fn ladder_powers<T: Real>(a: &OperatorMatrix<T>, order: usize) -> (Vec<OperatorMatrix<T>>, Vec<OperatorMatrix<T>>) {
    let mut lower = vec![OperatorMatrix::identity(*a.space())];
    for k in 1..=order {
        let next = &lower[k - 1] * a;
        lower.push(next);
    }
    let raise = lower.iter().map(OperatorMatrix::adjoint).collect();
    (lower, raise)
}

/// Diagonal Lamb-Dicke coefficient of Fock level `n`:
/// `e^{−η²/2} Σ_{j ≤ min(order, n)} (−η²)^j / j!² · n!/(n−j)!`.
///
/// At full order this is `e^{−η²/2} L_n(η²)`, the diagonal of the plane-wave
/// operator.
pub fn series_coefficient<T: Real>(eta: T, order: usize, n: usize) -> T {
    let x = eta * eta;
    let mut sum = T::zero();
    for j in 0..=order.min(n) {
        let fj = factorial::<T>(j);
        let term = x.powi(j as i32) / (fj * fj) * falling_factorial::<T>(n, j);
        sum += if j % 2 == 0 { term } else { -term };
    }
    (-x / T::lit(2.0)).exp() * sum
}

/// Vibrational factor `F(n_L)` of a beam's resonant Hamiltonian.
fn vibrational_factor<T: Real>(beam: &BeamSpec<T>, space: &SpaceDescriptor) -> Result<OperatorMatrix<T>> {
    match beam.direction {
        Direction::Axis(axis) => {
            space.require_axis(axis)?;
            Ok(OperatorMatrix::diagonal(*space, |l| {
                re(series_coefficient(beam.eta, beam.series_order, l.occupation(axis)))
            }))
        }
        Direction::Angles { .. } => {
            let a = mode_operator(space, beam.direction)?;
            let (lower, raise) = ladder_powers(&a, beam.series_order);
            let x = beam.eta * beam.eta;
            let damp = (-x / T::lit(2.0)).exp();
            let mut f = OperatorMatrix::zeros(*space);
            for j in 0..=beam.series_order {
                let fj = factorial::<T>(j);
                let mut c = damp * x.powi(j as i32) / (fj * fj);
                if j % 2 == 1 {
                    c = -c;
                }
                f = &f + &(&raise[j] * &lower[j]).scale(c);
            }
            Ok(f)
        }
    }
}

/// Resonant single-beam Hamiltonian with the fast sidebands dropped:
/// `H = −g e^{−η²/2} Σ_j (iη)^{2j}/j!² (a_L†)^j a_L^j σ_x`.
pub fn vibronic_series_hamiltonian<T: Real>(beam: &BeamSpec<T>, space: &SpaceDescriptor) -> Result<OperatorMatrix<T>> {
    beam.validate()?;
    space.require_electronic_dim(2)?;
    let f = vibrational_factor(beam, space)?;
    let sx = sigma_x(space)?;
    let h = (&f * &sx).scale(-beam.strength);
    // F may be non-diagonal for rotated modes; symmetrise the rounding.
    let sym = (&h + &h.adjoint()).scale(T::lit(0.5));
    sym.into_hermitian()
}

/// Change between series orders `J` and `J − 1` (max entry).
pub fn series_convergence<T: Real>(beam: &BeamSpec<T>, space: &SpaceDescriptor) -> Result<T> {
    let full = vibronic_series_hamiltonian(beam, space)?;
    if beam.series_order == 0 {
        return Ok(full.max_abs());
    }
    let lower = vibronic_series_hamiltonian(&beam.with_order(beam.series_order - 1), space)?;
    Ok(full.max_abs_diff(&lower))
}

/// Interaction-picture Hamiltonian keeping the sideband harmonics:
///
/// `H(t) = Σ_k e^{i(k ω₀ − δ) t} M_k + h.c.`, with
/// `M_k = −Σ_beams g e^{−η²/2} Σ_{j−s=k} (−iη)^{s+j}/(s! j!) (a_L†)^j a_L^s |−⟩⟨+|`
/// and `δ = ω̃_A − ω_L` the Raman detuning.
#[derive(Clone, Debug)]
pub struct InteractionHamiltonian<T: Real> {
    space: SpaceDescriptor,
    omega0: T,
    detuning: T,
    harmonics: Vec<(i64, OperatorMatrix<T>)>,
}

impl<T: Real> InteractionHamiltonian<T> {
    #[allow(clippy::needless_range_loop)]
    pub fn new(beams: &[BeamSpec<T>], space: &SpaceDescriptor, omega0: T, detuning: T) -> Result<Self> {
        space.require_electronic_dim(2)?;
        let lowering = electronic_transition(space, Level::Plus, Level::Minus)?;
        let mut by_k: BTreeMap<i64, OperatorMatrix<T>> = BTreeMap::new();
        for beam in beams {
            beam.validate()?;
            let a = mode_operator(space, beam.direction)?;
            let (lower, raise) = ladder_powers(&a, beam.series_order);
            let damp = (-beam.eta * beam.eta / T::lit(2.0)).exp();
            for j in 0..=beam.series_order {
                for s in 0..=beam.series_order {
                    let term = &raise[j] * &lower[s];
                    if term.max_abs() == T::zero() {
                        continue;
                    }
                    let c = minus_i_pow::<T>(s + j)
                        * re(-beam.strength * damp * beam.eta.powi((s + j) as i32)
                            / (factorial::<T>(s) * factorial::<T>(j)));
                    let k = j as i64 - s as i64;
                    let entry = by_k.entry(k).or_insert_with(|| OperatorMatrix::zeros(*space));
                    *entry = &*entry + &term.scale_complex(c);
                }
            }
        }
        let harmonics = by_k
            .into_iter()
            .filter(|(_, m)| m.max_abs() > T::zero())
            .map(|(k, m)| (k, &m * &lowering))
            .collect();
        Ok(InteractionHamiltonian { space: *space, omega0, detuning, harmonics })
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    /// Harmonic indices `k = j − s` with a nonzero coefficient matrix.
    pub fn harmonic_indices(&self) -> Vec<i64> {
        self.harmonics.iter().map(|(k, _)| *k).collect()
    }

    /// Coefficient matrix `M_k` (not Hermitian).
    pub fn harmonic(&self, k: i64) -> Option<&OperatorMatrix<T>> {
        self.harmonics.iter().find(|(kk, _)| *kk == k).map(|(_, m)| m)
    }

    fn frequency(&self, k: i64) -> T {
        T::lit(k as f64) * self.omega0 - self.detuning
    }

    /// Largest |k ω₀ − δ| among retained terms.
    pub fn max_frequency(&self) -> T {
        self.harmonics
            .iter()
            .fold(T::zero(), |acc, (k, _)| acc.max(self.frequency(*k).abs()))
    }

    /// `H(t)`.
    pub fn at(&self, t: T) -> OperatorMatrix<T> {
        let d = self.space.dim();
        let mut x = CMatrix::zeros(d, d);
        for (k, m) in &self.harmonics {
            let phase = self.frequency(*k) * t;
            x += m.entries() * cplx(phase.cos(), phase.sin());
        }
        let h = &x + x.adjoint();
        OperatorMatrix::from_raw(self.space, h, true)
    }

    /// Time-independent part kept by the rotating-wave approximation on
    /// resonance: `M_0 + M_0†`.
    pub fn resonant_part(&self) -> OperatorMatrix<T> {
        match self.harmonic(0) {
            Some(m) => OperatorMatrix::from_raw(self.space, m.entries() + m.entries().adjoint(), true),
            None => OperatorMatrix::zeros(self.space),
        }
    }
}

/// Single-beam interaction-picture Hamiltonian.
pub fn timedep_interaction_hamiltonian<T: Real>(
    beam: &BeamSpec<T>,
    space: &SpaceDescriptor,
    omega0: T,
    detuning_a: T,
) -> Result<InteractionHamiltonian<T>> {
    InteractionHamiltonian::new(std::slice::from_ref(beam), space, omega0, detuning_a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CalibrationMode {
    /// `g₁(1 − η₁²/2) + g₂(1 − η₂²/2) = 0`.
    PaperLinear,
    /// `g₁ e^{−η₁²/2} + g₂ e^{−η₂²/2} = 0`: cancels the carrier exactly.
    ExactCarrierCancel,
}

/// Second-beam strength and the resulting parity coupling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Calibration<T> {
    pub g2: T,
    /// Leading-order parity coupling `g = −g₁(η₂² − η₁²)`.
    pub g_parity: T,
    pub mode: CalibrationMode,
}

impl<T: Real> Calibration<T> {
    /// Nominal parity pulse `π/|g|`.
    pub fn pulse_time(&self) -> T {
        T::pi() / self.g_parity.abs()
    }
}

pub fn calibrate_two_beams<T: Real>(g1: T, eta1: T, eta2: T, mode: CalibrationMode) -> Result<Calibration<T>> {
    for eta in [eta1, eta2] {
        if !(eta >= T::zero() && eta < T::one()) {
            return Err(Error::InvalidParameter(format!("Lamb-Dicke parameter {eta:?} must lie in [0, 1)")));
        }
    }
    if eta1 == eta2 {
        return Err(Error::DegenerateEtas(eta1.as_f64()));
    }
    let half = T::lit(0.5);
    let (x1, x2) = (eta1 * eta1, eta2 * eta2);
    let g2 = match mode {
        CalibrationMode::PaperLinear => -g1 * (T::one() - x1 * half) / (T::one() - x2 * half),
        CalibrationMode::ExactCarrierCancel => -g1 * ((x2 - x1) * half).exp(),
    };
    Ok(Calibration { g2, g_parity: -g1 * (x2 - x1), mode })
}

/// Calibrated beam pair along `axis`.
pub fn calibrated_beams<T: Real>(
    g1: T,
    eta1: T,
    eta2: T,
    mode: CalibrationMode,
    axis: Axis,
    series_order: usize,
) -> Result<(BeamSpec<T>, BeamSpec<T>, Calibration<T>)> {
    let cal = calibrate_two_beams(g1, eta1, eta2, mode)?;
    let b1 = BeamSpec::along(axis, g1, eta1).with_order(series_order);
    let b2 = BeamSpec::along(axis, cal.g2, eta2).with_order(series_order);
    Ok((b1, b2, cal))
}

/// Sum of two resonant beams acting on the same direction.
pub fn two_beam_hamiltonian<T: Real>(
    beam1: &BeamSpec<T>,
    beam2: &BeamSpec<T>,
    space: &SpaceDescriptor,
) -> Result<OperatorMatrix<T>> {
    if beam1.direction != beam2.direction {
        return Err(Error::AxisMismatch);
    }
    let h1 = vibronic_series_hamiltonian(beam1, space)?;
    let h2 = vibronic_series_hamiltonian(beam2, space)?;
    Ok(&h1 + &h2)
}

/// Ideal parity coupling `H = g n_L σ_x`.
pub fn parity_hamiltonian<T: Real>(
    g: T,
    space: &SpaceDescriptor,
    direction: impl Into<Direction<T>>,
) -> Result<OperatorMatrix<T>> {
    space.require_electronic_dim(2)?;
    let direction = direction.into();
    let n = match direction {
        Direction::Axis(axis) => number_op(space, axis)?,
        Direction::Angles { .. } => {
            let a = mode_operator(space, direction)?;
            let n = &a.adjoint() * &a;
            (&n + &n.adjoint()).scale(T::lit(0.5))
        }
    };
    let sx = sigma_x(space)?;
    (&n * &sx).scale(g).into_hermitian()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::hilbert::{BasisLabel, Cutoffs};

    fn zspace(n: usize) -> SpaceDescriptor {
        SpaceDescriptor::new(2, Cutoffs::z(n)).unwrap()
    }

    /// Independent oracle: e^{−x/2} L_n(x) from the three-term recurrence.
    fn laguerre_diag(n: usize, x: f64) -> f64 {
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

    #[test]
    fn plane_wave_zero_eta_is_identity() {
        let s = zspace(6);
        let u = plane_wave_operator::<f64>(&s, Direction::Axis(Axis::Z), 0.0).unwrap();
        assert_eq!(u.max_abs_diff(&OperatorMatrix::identity(s)), 0.0);
    }

    #[test]
    fn plane_wave_vacuum_element() {
        let s = zspace(30);
        let u = plane_wave_operator::<f64>(&s, Direction::Axis(Axis::Z), 0.2).unwrap();
        let v = BasisLabel::new(Level::Minus, [0; 3]);
        let e = u.element(v, v).unwrap();
        assert!((e.re - (-0.02f64).exp()).abs() < 1e-9 && e.im.abs() < 1e-9);
        assert!((e.re - 0.980199).abs() < 1e-6);
        assert!(u.unitarity_deviation() < 1e-12);
    }

    #[test]
    fn series_matches_padded_exponential() {
        let s = zspace(10);
        let dir = Direction::Axis(Axis::Z);
        let series = plane_wave_series::<f64>(&s, dir, 0.3, 12).unwrap();
        let exact = plane_wave_operator_padded::<f64>(&s, dir, 0.3, 30).unwrap();
        assert!(series.max_abs_diff(&exact) < 1e-10);
    }

    #[test]
    fn truncated_exponential_agrees_away_from_cutoff() {
        let n = 10;
        let s = zspace(n);
        let dir = Direction::Axis(Axis::Z);
        let trunc = plane_wave_operator::<f64>(&s, dir, 0.3).unwrap();
        let exact = plane_wave_operator_padded::<f64>(&s, dir, 0.3, 30).unwrap();
        let mut interior: f64 = 0.0;
        for i in 0..2 * n {
            for j in 0..2 * n {
                let (li, lj) = (s.label(i), s.label(j));
                if li.occupation(Axis::Z) < n - 4 && lj.occupation(Axis::Z) < n - 4 {
                    interior = interior.max((trunc.entries()[(i, j)] - exact.entries()[(i, j)]).norm());
                }
            }
        }
        assert!(interior < 1e-6, "interior deviation {interior}");
        // The top level is badly wrong, which is why the padded form exists.
        assert!(trunc.max_abs_diff(&exact) > 1e-2);
    }

    #[test]
    fn series_hamiltonian_order_zero_is_carrier() {
        let s = zspace(5);
        let beam = BeamSpec::along(Axis::Z, 1.3, 0.25).with_order(0);
        let h = vibronic_series_hamiltonian::<f64>(&beam, &s).unwrap();
        let expect = sigma_x::<f64>(&s).unwrap().scale(-1.3 * (-0.25f64 * 0.25 / 2.0).exp());
        assert!(h.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn first_order_coefficients() {
        for n in 0..6 {
            let c = series_coefficient(0.2f64, 1, n);
            let expect = (-0.02f64).exp() * (1.0 - 0.04 * n as f64);
            assert!((c - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn full_order_coefficients_match_exact_diagonal() {
        let n = 12;
        let s = zspace(n);
        let eta = 0.3;
        let exact = plane_wave_operator_padded::<f64>(&s, Direction::Axis(Axis::Z), eta, 30).unwrap();
        for k in 0..n {
            let l = BasisLabel::new(Level::Minus, [0, 0, k]);
            let diag = exact.element(l, l).unwrap();
            let c = series_coefficient(eta, n, k);
            assert!((diag.re - c).abs() < 1e-10 && diag.im.abs() < 1e-10, "level {k}");
            assert!((laguerre_diag(k, eta * eta) - c).abs() < 1e-12);
        }
    }

    #[test]
    fn rotated_beam_matches_axis_beam() {
        let s = SpaceDescriptor::new(2, Cutoffs::xyz(1, 1, 6)).unwrap();
        let axis = BeamSpec::along(Axis::Z, 0.8, 0.2).with_order(4);
        let rotated = BeamSpec { direction: Direction::Angles { theta: 0.0, phi: 0.0 }, ..axis };
        let ha = vibronic_series_hamiltonian::<f64>(&axis, &s).unwrap();
        let hr = vibronic_series_hamiltonian::<f64>(&rotated, &s).unwrap();
        assert!(ha.max_abs_diff(&hr) < 1e-14);
    }

    #[test]
    fn series_converges() {
        let s = zspace(8);
        let beam = BeamSpec::along(Axis::Z, 1.0, 0.2);
        assert!(series_convergence::<f64>(&beam, &s).unwrap() < 1e-8);
    }

    #[test]
    fn interaction_picture_resonant_part_equals_series() {
        let s = zspace(7);
        let beam = BeamSpec::along(Axis::Z, 1.1, 0.3).with_order(5);
        let h = timedep_interaction_hamiltonian::<f64>(&beam, &s, 50.0, 0.0).unwrap();
        let rwa = vibronic_series_hamiltonian(&beam, &s).unwrap();
        assert!(h.resonant_part().max_abs_diff(&rwa) < 1e-14);
        for t in [0.0, 0.37, 2.0] {
            assert!(h.at(t).hermitian_deviation() < 1e-14);
        }
    }

    #[test]
    fn sideband_average_vanishes() {
        let s = zspace(6);
        let (g, eta, omega0) = (1.0, 0.2, 100.0);
        let beam = BeamSpec::along(Axis::Z, g, eta).with_order(5);
        let h = timedep_interaction_hamiltonian::<f64>(&beam, &s, omega0, 0.0).unwrap();
        let rwa = h.resonant_part();
        // Trapezoid rule over one trap period (exact for trigonometric polynomials).
        let period = 2.0 * PI / omega0;
        let m = 64;
        let mut avg = OperatorMatrix::zeros(s);
        for i in 0..m {
            let t = 0.123 + period * i as f64 / m as f64;
            avg = &avg + &(&h.at(t) - &rwa).scale(1.0 / m as f64);
        }
        assert!(avg.max_abs() < eta * g * 1e-2);
    }

    #[test]
    fn first_sideband_phase() {
        let s = zspace(4);
        let beam = BeamSpec::along(Axis::Z, 1.0, 0.1).with_order(1);
        let omega0 = 7.0;
        let h = timedep_interaction_hamiltonian::<f64>(&beam, &s, omega0, 0.0).unwrap();
        assert_eq!(h.harmonic_indices(), vec![-1, 0, 1]);
        // ⟨−, n=1| H(t) |+, n=0⟩ comes only from the (j=1, s=0) term.
        let t = 0.3;
        let row = BasisLabel::new(Level::Minus, [0, 0, 1]);
        let col = BasisLabel::new(Level::Plus, [0, 0, 0]);
        let v = h.at(t).element(row, col).unwrap();
        let expect = Complex::new(0.0, -1.0) * (-(-0.005f64).exp() * 0.1)
            * Complex::new((omega0 * t).cos(), (omega0 * t).sin());
        assert!((v - expect).norm() < 1e-15);
        assert!((h.max_frequency() - omega0).abs() < 1e-12);
    }

    #[test]
    fn calibration_values() {
        let lin = calibrate_two_beams(3.0f64, 0.2, 0.3, CalibrationMode::PaperLinear).unwrap();
        assert!((lin.g2 - -3.078_534_031_413_612_6).abs() < 1e-12);
        assert!((lin.g_parity - -0.15).abs() < 1e-15);
        assert!((lin.pulse_time() - 20.943_951_023_931_955).abs() < 1e-9);
        let ex = calibrate_two_beams(3.0f64, 0.2, 0.3, CalibrationMode::ExactCarrierCancel).unwrap();
        assert!((ex.g2 - -3.075_945_361_573_286_5).abs() < 1e-12);
        assert_eq!(ex.g_parity, lin.g_parity);
        assert!(matches!(
            calibrate_two_beams(3.0f64, 0.2, 0.2, CalibrationMode::PaperLinear),
            Err(Error::DegenerateEtas(_))
        ));
        assert!(calibrate_two_beams(3.0f64, 0.2, 1.2, CalibrationMode::PaperLinear).is_err());
    }

    #[test]
    fn calibration_constraints_hold() {
        for (g1, e1, e2) in [(3.0f64, 0.2, 0.3), (-1.7, 0.05, 0.4), (0.9, 0.35, 0.1)] {
            let lin = calibrate_two_beams(g1, e1, e2, CalibrationMode::PaperLinear).unwrap();
            let residual = g1 * (1.0 - e1 * e1 / 2.0) + lin.g2 * (1.0 - e2 * e2 / 2.0);
            assert!(residual.abs() < 4.0 * f64::EPSILON * g1.abs());
            let ex = calibrate_two_beams(g1, e1, e2, CalibrationMode::ExactCarrierCancel).unwrap();
            let carrier = g1 * series_coefficient(e1, 0, 0) + ex.g2 * series_coefficient(e2, 0, 0);
            assert!(carrier.abs() < 4.0 * f64::EPSILON * g1.abs());
        }
    }

    #[test]
    fn two_beam_limits() {
        let s = zspace(6);
        let b1 = BeamSpec::along(Axis::Z, 2.0, 0.2);
        let zero = BeamSpec::along(Axis::Z, 0.0, 0.3);
        let single = vibronic_series_hamiltonian::<f64>(&b1, &s).unwrap();
        assert!(two_beam_hamiltonian(&b1, &zero, &s).unwrap().max_abs_diff(&single) < 1e-15);

        let c1 = BeamSpec::along(Axis::Z, 2.0, 0.0);
        let c2 = BeamSpec::along(Axis::Z, -2.0, 0.0);
        assert_eq!(two_beam_hamiltonian::<f64>(&c1, &c2, &s).unwrap().max_abs(), 0.0);

        let sx = SpaceDescriptor::new(2, Cutoffs::xyz(2, 2, 2)).unwrap();
        let bx = BeamSpec::along(Axis::X, 1.0, 0.1);
        let bz = BeamSpec::along(Axis::Z, 1.0, 0.2);
        assert!(matches!(two_beam_hamiltonian::<f64>(&bx, &bz, &sx), Err(Error::AxisMismatch)));
    }

    #[test]
    fn two_beam_matches_parity_coupling_to_leading_order() {
        // Per-level bound 2|g1| η⁴ (n² + n) for n ≥ 1; the paper-linear
        // carrier residual at n = 0 is bounded by |g1| η⁴ / 4.
        let s = zspace(9);
        for mode in [CalibrationMode::PaperLinear, CalibrationMode::ExactCarrierCancel] {
            for (e1, e2) in [(0.2, 0.3), (0.1, 0.15), (0.05, 0.075)] {
                let g1 = 3.0;
                let (b1, b2, cal) = calibrated_beams(g1, e1, e2, mode, Axis::Z, DEFAULT_SERIES_ORDER).unwrap();
                let h = two_beam_hamiltonian::<f64>(&b1, &b2, &s).unwrap();
                let target = parity_hamiltonian(cal.g_parity, &s, Axis::Z).unwrap();
                let diff = &h - &target;
                let eta4 = f64::powi(e2, 4);
                for n in 0..=4usize {
                    let row = BasisLabel::new(Level::Minus, [0, 0, n]);
                    let col = BasisLabel::new(Level::Plus, [0, 0, n]);
                    let dev = diff.element(row, col).unwrap().norm();
                    let bound = if n == 0 {
                        match mode {
                            CalibrationMode::PaperLinear => g1 * eta4 / 4.0,
                            CalibrationMode::ExactCarrierCancel => 1e-14,
                        }
                    } else {
                        2.0 * g1 * eta4 * (n * n + n) as f64
                    };
                    assert!(dev <= bound, "{mode:?} η2={e2} n={n}: {dev} > {bound}");
                }
                // Regression bound on the n ≤ N block: C η⁴ N² with C = 4|g1|.
                let block_n = 4.0f64;
                let worst = (0..=4usize)
                    .map(|n| {
                        let r = BasisLabel::new(Level::Minus, [0, 0, n]);
                        let c = BasisLabel::new(Level::Plus, [0, 0, n]);
                        diff.element(r, c).unwrap().norm()
                    })
                    .fold(0.0, f64::max);
                assert!(worst <= 4.0 * g1 * eta4 * block_n * block_n);
            }
        }
    }

    #[test]
    fn parity_hamiltonian_structure() {
        let s = zspace(5);
        let g = 0.7;
        let h = parity_hamiltonian::<f64>(g, &s, Axis::Z).unwrap();
        let row = BasisLabel::new(Level::Minus, [0, 0, 2]);
        let col = BasisLabel::new(Level::Plus, [0, 0, 2]);
        assert!((h.element(row, col).unwrap().re - 2.0 * g).abs() < 1e-15);
        for lvl in [Level::Minus, Level::Plus] {
            let i = s.index(BasisLabel::new(lvl, [0; 3])).unwrap();
            assert!(h.entries().row(i).iter().all(|z| z.norm() == 0.0));
            assert!(h.entries().column(i).iter().all(|z| z.norm() == 0.0));
        }
        let n = number_op(&s, Axis::Z).unwrap();
        let sx = sigma_x(&s).unwrap();
        assert_eq!(h.commutator(&n).max_abs(), 0.0);
        assert_eq!(h.commutator(&sx).max_abs(), 0.0);
        let three = SpaceDescriptor::new(3, Cutoffs::z(3)).unwrap();
        assert!(matches!(
            parity_hamiltonian::<f64>(g, &three, Axis::Z),
            Err(Error::WrongElectronicDim { expected: 2, found: 3 })
        ));
    }
}
