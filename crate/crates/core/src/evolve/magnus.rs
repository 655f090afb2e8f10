use crate::error::{Error, Result};
use crate::evolve::check_norm;
use crate::evolve::observables::{electronic_populations, expectation_number};
use crate::evolve::record::EvolutionRecord;
use crate::hilbert::{Axis, OperatorMatrix, SpaceDescriptor, StateVector};
use crate::linalg::{CMatrix, HermitianEigen};
use crate::model::InteractionHamiltonian;
use crate::scalar::Real;
use crate::tolerances;

/// A Hamiltonian `H(t)` with a known fastest frequency.
pub trait TimeDependent<T: Real> {
    fn space(&self) -> &SpaceDescriptor;
    fn at(&self, t: T) -> OperatorMatrix<T>;
    /// Largest angular frequency in `H(t)`; zero if constant.
    fn max_frequency(&self) -> T;
}

impl<T: Real> TimeDependent<T> for InteractionHamiltonian<T> {
    fn space(&self) -> &SpaceDescriptor {
        InteractionHamiltonian::space(self)
    }

    fn at(&self, t: T) -> OperatorMatrix<T> {
        InteractionHamiltonian::at(self, t)
    }

    fn max_frequency(&self) -> T {
        InteractionHamiltonian::max_frequency(self)
    }
}

impl<T: Real> TimeDependent<T> for OperatorMatrix<T> {
    fn space(&self) -> &SpaceDescriptor {
        OperatorMatrix::space(self)
    }

    fn at(&self, _t: T) -> OperatorMatrix<T> {
        self.clone()
    }

    fn max_frequency(&self) -> T {
        T::zero()
    }
}

/// `H(t)` given by a closure.
pub struct FnHamiltonian<T: Real, F> {
    pub space: SpaceDescriptor,
    pub max_frequency: T,
    pub f: F,
}

impl<T: Real, F: Fn(T) -> OperatorMatrix<T>> TimeDependent<T> for FnHamiltonian<T, F> {
    fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    fn at(&self, t: T) -> OperatorMatrix<T> {
        (self.f)(t)
    }

    fn max_frequency(&self) -> T {
        self.max_frequency
    }
}

/// Largest step allowed for a fastest frequency `omega_max`:
/// a twentieth of its period.
pub fn step_limit<T: Real>(omega_max: T) -> Option<T> {
    if omega_max == T::zero() {
        None
    } else {
        Some(T::two_pi() / omega_max.abs() / T::lit(20.0))
    }
}

/// One fourth-order commutator-free Magnus step from `t` to `t + h`:
///
/// `U = exp(−ih(α₁H₁ + α₂H₂)) · exp(−ih(α₂H₁ + α₁H₂))`,
/// `H_k = H(t + c_k h)`, `c = ½ ∓ √3/6`, `α = ¼ ∓ √3/6`.
pub fn cf4_step<T: Real, H: TimeDependent<T> + ?Sized>(h_of_t: &H, t: T, h: T) -> Result<CMatrix<T>> {
    let s3 = T::lit(3.0).sqrt() / T::lit(6.0);
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let (c1, c2) = (half - s3, half + s3);
    let (a1, a2) = (quarter - s3, quarter + s3);
    let h1 = h_of_t.at(t + c1 * h);
    let h2 = h_of_t.at(t + c2 * h);
    let first = h1.entries() * nalgebra::Complex::new(a2, T::zero()) + h2.entries() * nalgebra::Complex::new(a1, T::zero());
    let second = h1.entries() * nalgebra::Complex::new(a1, T::zero()) + h2.entries() * nalgebra::Complex::new(a2, T::zero());
    let u1 = HermitianEigen::new(&first)?.exp_i(h);
    let u2 = HermitianEigen::new(&second)?.exp_i(h);
    Ok(u2 * u1)
}

#[derive(Clone, Debug)]
pub struct TimeDepOptions {
    /// Record every `record_every`-th step (the end point is always kept);
    /// 0 keeps only the start and end.
    pub record_every: usize,
    /// Accumulated norm drift tolerated before failing.
    pub norm_tolerance: f64,
    /// Skip the step-size guard. Only for convergence studies.
    pub allow_coarse_steps: bool,
}

impl Default for TimeDepOptions {
    fn default() -> Self {
        TimeDepOptions { record_every: 0, norm_tolerance: tolerances::NORM_DRIFT, allow_coarse_steps: false }
    }
}

/// Integrates `i dψ/dt = H(t)ψ` from `t0` to `t1` in equal steps no longer
/// than `dt`.
pub fn evolve_timedep<T: Real, H: TimeDependent<T> + ?Sized>(
    h_of_t: &H,
    t0: T,
    t1: T,
    dt: T,
    psi0: &StateVector<T>,
    opts: &TimeDepOptions,
) -> Result<EvolutionRecord<T>> {
    if psi0.space() != h_of_t.space() {
        return Err(Error::SpaceMismatch);
    }
    if !(dt > T::zero()) || !(t1 >= t0) {
        return Err(Error::InvalidParameter(format!(
            "need dt > 0 and t1 >= t0, got dt = {dt:?}, [{t0:?}, {t1:?}]"
        )));
    }
    if let Some(limit) = step_limit(h_of_t.max_frequency()) {
        if dt > limit && !opts.allow_coarse_steps {
            return Err(Error::StepTooLarge { dt: dt.as_f64(), limit: limit.as_f64() });
        }
    }
    let span = t1 - t0;
    let steps = (span / dt).ceil().to_usize().unwrap_or(0).max(if span > T::zero() { 1 } else { 0 });
    let h = if steps == 0 { T::zero() } else { span / T::from_count(steps) };
    let tolerance = T::lit(opts.norm_tolerance).max(T::tol(opts.norm_tolerance));

    let mut record = EvolutionRecord::new(*psi0.space());
    let mut psi = psi0.clone();
    record.push(t0, psi.clone(), observe(&psi));
    for k in 0..steps {
        let t = t0 + T::from_count(k) * h;
        let u = cf4_step(h_of_t, t, h)?;
        psi = StateVector::from_raw(*psi.space(), u * psi.amplitudes());
        check_norm(&psi, tolerance)?;
        let last = k + 1 == steps;
        if last || (opts.record_every > 0 && (k + 1) % opts.record_every == 0) {
            let time = if last { t1 } else { t0 + T::from_count(k + 1) * h };
            record.push(time, psi.clone(), observe(&psi));
        }
    }
    Ok(record)
}

/// Propagator `U(t1, t0)` of `H(t)` from CF4 steps no longer than `dt`.
pub fn propagator_timedep<T: Real, H: TimeDependent<T> + ?Sized>(
    h_of_t: &H,
    t0: T,
    t1: T,
    dt: T,
    opts: &TimeDepOptions,
) -> Result<OperatorMatrix<T>> {
    if !(dt > T::zero()) || !(t1 >= t0) {
        return Err(Error::InvalidParameter(format!(
            "need dt > 0 and t1 >= t0, got dt = {dt:?}, [{t0:?}, {t1:?}]"
        )));
    }
    if let Some(limit) = step_limit(h_of_t.max_frequency()) {
        if dt > limit && !opts.allow_coarse_steps {
            return Err(Error::StepTooLarge { dt: dt.as_f64(), limit: limit.as_f64() });
        }
    }
    let space = *h_of_t.space();
    let span = t1 - t0;
    let steps = (span / dt).ceil().to_usize().unwrap_or(0);
    let mut u = crate::linalg::identity::<T>(space.dim());
    if steps > 0 {
        let h = span / T::from_count(steps);
        for k in 0..steps {
            u = cf4_step(h_of_t, t0 + T::from_count(k) * h, h)? * u;
        }
    }
    let drift = crate::linalg::unitarity_deviation(&u);
    if drift > T::lit(opts.norm_tolerance).max(T::tol(opts.norm_tolerance)) {
        return Err(Error::NormDrift(drift.as_f64()));
    }
    Ok(OperatorMatrix::from_raw(space, u, false))
}

/// Standard observables recorded at each time point.
pub(crate) fn observe<T: Real>(psi: &StateVector<T>) -> Vec<(String, T)> {
    let space = psi.space();
    let mut out = Vec::new();
    let names = ["population_minus", "population_plus", "population_virtual"];
    for (name, p) in names.iter().zip(electronic_populations(psi)) {
        out.push((name.to_string(), p));
    }
    for axis in Axis::ALL.into_iter().filter(|a| space.has_axis(*a)) {
        let n = expectation_number(psi, axis).expect("axis present");
        out.push((format!("mean_n_{axis}"), n));
    }
    out.push(("norm_drift".to_string(), (psi.norm() - T::one()).abs()));
    out
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::evolve::{evolve_const, fidelity};
    use crate::hilbert::{electronic_transition, random_state, sigma_x, Cutoffs, Level};
    use crate::model::{parity_hamiltonian, timedep_interaction_hamiltonian, vibronic_series_hamiltonian, BeamSpec};

    fn qubit() -> SpaceDescriptor {
        SpaceDescriptor::new(2, Cutoffs::z(1)).unwrap()
    }

    fn driven(space: SpaceDescriptor, omega: f64) -> FnHamiltonian<f64, impl Fn(f64) -> OperatorMatrix<f64>> {
        let sx = sigma_x::<f64>(&space).unwrap();
        let pz = &electronic_transition::<f64>(&space, Level::Plus, Level::Plus).unwrap()
            - &electronic_transition::<f64>(&space, Level::Minus, Level::Minus).unwrap();
        FnHamiltonian {
            space,
            max_frequency: omega,
            f: move |t: f64| (&sx.scale(1.3 * (omega * t).cos()) + &pz.scale(0.4)).into_hermitian().unwrap(),
        }
    }

    #[test]
    fn constant_hamiltonian_matches_exact() {
        let s = SpaceDescriptor::new(2, Cutoffs::z(8)).unwrap();
        let h = parity_hamiltonian(0.6, &s, Axis::Z).unwrap();
        let psi = random_state(&s, 11);
        let rec = evolve_timedep(&h, 0.0, 2.5, 0.1, &psi, &TimeDepOptions::default()).unwrap();
        let exact = evolve_const(&h, 2.5, &psi).unwrap();
        assert!(rec.final_state().max_abs_diff(&exact).unwrap() < 1e-10);
    }

    #[test]
    fn fourth_order_convergence() {
        let s = qubit();
        let h = driven(s, 2.0);
        let psi = random_state(&s, 5);
        let opts = TimeDepOptions { allow_coarse_steps: true, ..Default::default() };
        let t1 = 3.0;
        let reference = evolve_timedep(&h, 0.0, t1, 1e-3, &psi, &opts).unwrap();
        let err = |dt: f64| {
            let r = evolve_timedep(&h, 0.0, t1, dt, &psi, &opts).unwrap();
            r.final_state().max_abs_diff(reference.final_state()).unwrap()
        };
        let (e1, e2, e3) = (err(0.2), err(0.1), err(0.05));
        for (a, b) in [(e1, e2), (e2, e3)] {
            let order = (a / b).log2();
            assert!((3.5..=4.5).contains(&order), "order {order} from {a:e} {b:e}");
        }
    }

    #[test]
    fn step_guard_and_unitarity() {
        let s = qubit();
        let h = driven(s, 10.0);
        let psi = random_state(&s, 1);
        let limit = step_limit(10.0).unwrap();
        assert!((limit - 2.0 * PI / 200.0).abs() < 1e-15);
        assert!(matches!(
            evolve_timedep(&h, 0.0, 1.0, 1.01 * limit, &psi, &TimeDepOptions::default()),
            Err(Error::StepTooLarge { .. })
        ));
        let u = cf4_step(&h, 0.3, limit).unwrap();
        assert!(crate::linalg::unitarity_deviation(&u) < 1e-12);
        let opts = TimeDepOptions { record_every: 10, ..Default::default() };
        let rec = evolve_timedep(&h, 0.0, 5.0, limit, &psi, &opts).unwrap();
        assert!(rec.times().windows(2).all(|w| w[1] > w[0]));
        assert_eq!(rec.times().len(), rec.states().len());
        assert!(rec.series("norm_drift").unwrap().iter().all(|d| *d < 1e-10));
    }

    #[test]
    fn sidebands_negligible_far_from_resonance() {
        // One beam, ω₀ = 100 g: the full interaction-picture evolution over a
        // π pulse stays close to the resonant (RWA) evolution.
        let s = SpaceDescriptor::new(2, Cutoffs::z(8)).unwrap();
        let beam = BeamSpec::along(Axis::Z, 1.0, 0.2).with_order(6);
        let full = timedep_interaction_hamiltonian(&beam, &s, 100.0, 0.0).unwrap();
        let rwa = vibronic_series_hamiltonian(&beam, &s).unwrap();
        let psi = crate::hilbert::random_state_where(&s, 2, |l| l.level == Level::Minus && l.n[2] < 4).unwrap();
        let limit = step_limit(full.max_frequency()).unwrap();
        let rec = evolve_timedep(&full, 0.0, PI, limit, &psi, &TimeDepOptions::default()).unwrap();
        let ideal = evolve_const(&rwa, PI, &psi).unwrap();
        assert!(fidelity(rec.final_state(), &ideal).unwrap() > 0.999);
    }

    #[test]
    fn propagator_matches_state_evolution() {
        let s = qubit();
        let h = driven(s, 3.0);
        let psi = random_state(&s, 8);
        let dt = step_limit(3.0).unwrap();
        let u = propagator_timedep(&h, 0.2, 1.7, dt, &TimeDepOptions::default()).unwrap();
        let rec = evolve_timedep(&h, 0.2, 1.7, dt, &psi, &TimeDepOptions::default()).unwrap();
        assert!(u.apply(&psi).unwrap().max_abs_diff(rec.final_state()).unwrap() < 1e-12);
    }

    #[test]
    fn zero_span() {
        let s = qubit();
        let psi = random_state(&s, 0);
        let rec = evolve_timedep(&driven(s, 1.0), 1.0, 1.0, 0.01, &psi, &TimeDepOptions::default()).unwrap();
        assert_eq!(rec.times(), &[1.0]);
    }
}
