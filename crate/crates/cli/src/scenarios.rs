//! One function per scenario: resolve parameters, run, collect results and
//! threshold checks.

use std::f64::consts::PI;

use ionparity::evolve::{
    evolve_timedep, fidelity, propagator, propagator_timedep, sample_trajectory, step_limit, TimeDepOptions,
};
use ionparity::hilbert::{cat_state, coherent_state, fock_state, quadrature, sigma_x, CatParity};
use ionparity::mirror::{
    adiabatic_elimination_check, not_gate_check, optimize_pulse_time, parity_gate_fidelity, time_reversal_check,
    GateReport, ProbeSuite, ProbeSuiteSpec,
};
use ionparity::model::{
    calibrate_two_beams, calibrated_beams, parity_hamiltonian, two_beam_hamiltonian, vibronic_series_hamiltonian,
    BeamConfig, CalibrationMode, Elimination, InteractionHamiltonian, RamanConfig, DEFAULT_SERIES_ORDER,
};
use ionparity::units::Quantity;
use ionparity::{Axis, Complex, Level, Raman, Record, SpaceDescriptor, State};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{Loaded, Scenario};
use crate::report::{CliError, Outcome, Series, Threshold};

const DEFAULT_SAMPLES: usize = 200;

pub fn run(scenario: Scenario, loaded: &Loaded) -> Result<Outcome, CliError> {
    match scenario {
        Scenario::ParityIdeal => parity_ideal(loaded),
        Scenario::ParityTwoBeam => parity_two_beam(loaded),
        Scenario::RwaCompare => rwa_compare(loaded),
        Scenario::AdiabaticCompare => adiabatic_compare(loaded),
        Scenario::NotGate => not_gate(loaded),
        Scenario::TimeReversal => time_reversal(loaded),
        Scenario::Design => design(loaded),
    }
}

fn to_value<S: Serialize>(s: &S) -> Value {
    serde_json::to_value(s).expect("serialisable")
}

fn text(s: &str) -> Quantity {
    Quantity::Text(s.to_string())
}

fn space(loaded: &Loaded, scenario: Scenario, electronic_dim: usize) -> Result<SpaceDescriptor, CliError> {
    Ok(SpaceDescriptor::new(electronic_dim, loaded.cutoffs(scenario))?)
}

fn samples(loaded: &Loaded) -> Result<usize, CliError> {
    match loaded.config.run.samples.unwrap_or(DEFAULT_SAMPLES) {
        0 => Err(CliError::ConfigInvalid("run.samples must be positive".into())),
        n => Ok(n),
    }
}

fn positive(name: &str, x: f64) -> Result<f64, CliError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::ConfigInvalid(format!("{name} must be positive and finite, got {x}")))
    }
}

/// The probe suite from `run.probe_suite`, or the standard suite.
fn probes(
    loaded: &Loaded,
    space: &SpaceDescriptor,
    axis: Axis,
    default_max_n: usize,
) -> Result<(ProbeSuiteSpec, ProbeSuite<f64>), CliError> {
    let spec = match loaded.probe_suite_path() {
        Some(path) => {
            let body = std::fs::read_to_string(&path)
                .map_err(|e| CliError::ConfigInvalid(format!("cannot read probe suite {}: {e}", path.display())))?;
            ProbeSuiteSpec::from_json(&body)?
        }
        None => ProbeSuiteSpec::standard(loaded.config.run.probe_max_n.unwrap_or(default_max_n), loaded.seed),
    };
    let suite = spec.build(space, axis)?;
    Ok((spec, suite))
}

fn worst_probe<'a>(suite: &'a ProbeSuite<f64>, report: &GateReport) -> &'a State {
    let i = suite.names.iter().position(|n| *n == report.worst_probe).unwrap_or(0);
    &suite.states[i]
}

fn record_series(title: String, record: &Record, names: &[String]) -> Series {
    let curves = names
        .iter()
        .filter_map(|n| record.series(n).map(|s| (n.clone(), s.to_vec())))
        .collect();
    Series { title, csv: record.to_csv(), x_label: "t (us)".into(), x: record.times().to_vec(), curves }
}

fn gate_curves(axis: Axis) -> Vec<String> {
    vec!["population_minus".into(), "population_plus".into(), format!("mean_n_{axis}")]
}

// parity-ideal

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ParityIdealParams {
    g: Quantity,
    axis: Axis,
}

impl Default for ParityIdealParams {
    fn default() -> Self {
        ParityIdealParams { g: text("150 kHz"), axis: Axis::Z }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct GateThresholds {
    min_worst_fidelity: f64,
    min_purity: f64,
    min_return_population: f64,
}

impl Default for GateThresholds {
    fn default() -> Self {
        GateThresholds { min_worst_fidelity: 1.0 - 1e-10, min_purity: 1.0 - 1e-9, min_return_population: 1.0 - 1e-10 }
    }
}

fn parity_ideal(loaded: &Loaded) -> Result<Outcome, CliError> {
    let p: ParityIdealParams = loaded.parameters()?;
    let th: GateThresholds = loaded.thresholds()?;
    let g = p.g.frequency()?;
    let s = space(loaded, Scenario::ParityIdeal, 2)?;
    let h = parity_hamiltonian(g, &s, p.axis)?;
    let (spec, suite) = probes(loaded, &s, p.axis, 6)?;
    let report = parity_gate_fidelity(&h, g, &s, p.axis, &suite)?;
    let record = sample_trajectory(&h, worst_probe(&suite, &report), report.pulse_time, samples(loaded)?)?;
    Ok(Outcome {
        parameters: json!({ "model": to_value(&p), "probe_suite": to_value(&spec) }),
        thresholds: vec![
            Threshold::min("worst_fidelity", th.min_worst_fidelity, report.worst_fidelity),
            Threshold::min("disentanglement_purity", th.min_purity, report.disentanglement_purity),
            Threshold::min("electronic_return_population", th.min_return_population, report.electronic_return_population),
        ],
        series: Some(record_series(format!("Parity pulse, probe {}", report.worst_probe), &record, &gate_curves(p.axis))),
        results: json!({ "g": g, "gate": to_value(&report) }),
    })
}

// parity-two-beam

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct TwoBeamParams {
    g1: Quantity,
    eta1: f64,
    eta2: f64,
    calibration: CalibrationMode,
    series_order: usize,
    axis: Axis,
    optimize_pulse_time: bool,
    optimizer_span: f64,
    optimizer_iterations: usize,
}

impl Default for TwoBeamParams {
    fn default() -> Self {
        TwoBeamParams {
            g1: text("3 MHz"),
            eta1: 0.2,
            eta2: 0.3,
            calibration: CalibrationMode::PaperLinear,
            series_order: DEFAULT_SERIES_ORDER,
            axis: Axis::Z,
            optimize_pulse_time: false,
            optimizer_span: 0.1,
            optimizer_iterations: 40,
        }
    }
}

/// Worst-case infidelity of the default configuration, from the closed-form
/// diagonal evolution.
const GOLDEN_TWO_BEAM_INFIDELITY: f64 = 0.9871186794588339;

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct TwoBeamThresholds {
    /// Set to null when running other parameters.
    golden_worst_infidelity: Option<f64>,
    golden_tolerance: f64,
    min_worst_fidelity: Option<f64>,
}

impl Default for TwoBeamThresholds {
    fn default() -> Self {
        TwoBeamThresholds {
            golden_worst_infidelity: Some(GOLDEN_TWO_BEAM_INFIDELITY),
            golden_tolerance: 1e-6,
            min_worst_fidelity: None,
        }
    }
}

fn parity_two_beam(loaded: &Loaded) -> Result<Outcome, CliError> {
    let p: TwoBeamParams = loaded.parameters()?;
    let th: TwoBeamThresholds = loaded.thresholds()?;
    let g1 = p.g1.frequency()?;
    let s = space(loaded, Scenario::ParityTwoBeam, 2)?;
    let (b1, b2, cal) = calibrated_beams(g1, p.eta1, p.eta2, p.calibration, p.axis, p.series_order)?;
    let h = two_beam_hamiltonian(&b1, &b2, &s)?;
    let (spec, suite) = probes(loaded, &s, p.axis, 4)?;
    let report = parity_gate_fidelity(&h, cal.g_parity, &s, p.axis, &suite)?;
    let optimized = if p.optimize_pulse_time {
        if !(p.optimizer_span > 0.0 && p.optimizer_span < 1.0) {
            return Err(CliError::ConfigInvalid("optimizer_span must lie in (0, 1)".into()));
        }
        let best = optimize_pulse_time(&h, cal.g_parity, &s, p.axis, &suite, p.optimizer_span, p.optimizer_iterations)?;
        Some(json!({ "pulse_time": best.pulse_time, "worst_fidelity": best.worst_fidelity, "worst_probe": best.worst_probe }))
    } else {
        None
    };
    let mut thresholds = Vec::new();
    if let Some(golden) = th.golden_worst_infidelity {
        thresholds.push(Threshold::near("worst_infidelity_golden", golden, th.golden_tolerance, report.worst_infidelity()));
    }
    if let Some(min) = th.min_worst_fidelity {
        thresholds.push(Threshold::min("worst_fidelity", min, report.worst_fidelity));
    }
    let record = sample_trajectory(&h, worst_probe(&suite, &report), report.pulse_time, samples(loaded)?)?;
    Ok(Outcome {
        parameters: json!({ "model": to_value(&p), "probe_suite": to_value(&spec) }),
        results: json!({
            "calibration": { "g1": g1, "g2": cal.g2, "g_parity": cal.g_parity, "pulse_time": cal.pulse_time(), "mode": cal.mode },
            "worst_infidelity": report.worst_infidelity(),
            "gate": to_value(&report),
            "optimized": optimized,
        }),
        thresholds,
        series: Some(record_series(
            format!("Two-beam parity pulse, probe {}", report.worst_probe),
            &record,
            &gate_curves(p.axis),
        )),
    })
}

// rwa-compare

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RwaParams {
    beams: Vec<BeamConfig>,
    omega0: Quantity,
    /// Defaults to π/|Σ strengths| for a single beam; required otherwise.
    pulse_time: Option<Quantity>,
    /// Axis the probe states are built on.
    probe_axis: Axis,
}

impl Default for RwaParams {
    fn default() -> Self {
        RwaParams {
            beams: vec![BeamConfig {
                strength: text("1 MHz"),
                eta: 0.2,
                axis: Some(Axis::Z),
                theta: None,
                phi: None,
                series_order: None,
            }],
            omega0: text("100 MHz"),
            pulse_time: None,
            probe_axis: Axis::Z,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RwaThresholds {
    min_worst_fidelity: f64,
}

impl Default for RwaThresholds {
    fn default() -> Self {
        RwaThresholds { min_worst_fidelity: 0.999 }
    }
}

fn rwa_compare(loaded: &Loaded) -> Result<Outcome, CliError> {
    let p: RwaParams = loaded.parameters()?;
    let th: RwaThresholds = loaded.thresholds()?;
    if p.beams.is_empty() {
        return Err(CliError::ConfigInvalid("at least one beam is required".into()));
    }
    let beams = p.beams.iter().map(BeamConfig::to_beam).collect::<Result<Vec<_>, _>>()?;
    let omega0 = positive("omega0", p.omega0.frequency()?)?;
    let t = match (&p.pulse_time, beams.len()) {
        (Some(q), _) => positive("pulse_time", q.time()?)?,
        (None, 1) => PI / positive("beam strength", beams[0].strength.abs())?,
        (None, _) => return Err(CliError::ConfigInvalid("pulse_time is required with several beams".into())),
    };
    let s = space(loaded, Scenario::RwaCompare, 2)?;
    let full = InteractionHamiltonian::new(&beams, &s, omega0, 0.0)?;
    let mut rwa = vibronic_series_hamiltonian(&beams[0], &s)?;
    for b in &beams[1..] {
        rwa = &rwa + &vibronic_series_hamiltonian(b, &s)?;
    }
    let limit = step_limit(full.max_frequency()).unwrap_or(t);
    let dt = match &loaded.config.run.dt {
        Some(q) => positive("run.dt", q.time()?)?,
        None => limit,
    };
    let (spec, suite) = probes(loaded, &s, p.probe_axis, 4)?;
    let u_full = propagator_timedep(&full, 0.0, t, dt, &TimeDepOptions::default())?;
    let u_rwa = propagator(&rwa, t)?;
    let mut per_probe = Vec::with_capacity(suite.len());
    for (name, psi) in suite.names.iter().zip(&suite.states) {
        per_probe.push((name.clone(), fidelity(&u_full.apply(psi)?, &u_rwa.apply(psi)?)?));
    }
    let (worst_name, worst) = per_probe
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .cloned()
        .expect("non-empty suite");
    let steps = (t / dt).ceil().max(1.0) as usize;
    let opts = TimeDepOptions { record_every: (steps / samples(loaded)?).max(1), ..TimeDepOptions::default() };
    let psi = &suite.states[suite.names.iter().position(|n| *n == worst_name).unwrap_or(0)];
    let record = evolve_timedep(&full, 0.0, t, dt, psi, &opts)?;
    let g_max = beams.iter().map(|b| b.strength.abs()).fold(0.0, f64::max);
    Ok(Outcome {
        parameters: json!({ "model": to_value(&p), "probe_suite": to_value(&spec) }),
        results: json!({
            "pulse_time": t,
            "dt": dt,
            "steps": steps,
            "omega0_over_max_strength": omega0 / g_max,
            "worst_fidelity": worst,
            "worst_probe": worst_name,
            "probes": per_probe.iter().map(|(n, f)| json!({ "name": n, "fidelity": f })).collect::<Vec<_>>(),
        }),
        thresholds: vec![Threshold::min("worst_fidelity", th.min_worst_fidelity, worst)],
        series: Some(record_series(
            format!("Full sideband evolution, probe {worst_name}"),
            &record,
            &gate_curves(p.probe_axis),
        )),
    })
}

// adiabatic-compare

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct AdiabaticParams {
    raman: RamanConfig,
    initial_fock: usize,
    axis: Axis,
    /// Defaults to π/(2|g_eff|) of the chosen elimination.
    t_final: Option<Quantity>,
    elimination: Elimination,
}

impl Default for AdiabaticParams {
    fn default() -> Self {
        let c = Complex::new(1.0, 0.0);
        let mut raman = Raman::from_detunings(0.2, 50.0, 1000.0, 100.0, 100.0, c, c);
        raman.k_a = raman.wavevector_for([0.0, 0.0, 0.1]);
        AdiabaticParams {
            raman: RamanConfig::from_params(&raman),
            initial_fock: 1,
            axis: Axis::Z,
            t_final: None,
            elimination: Elimination::SecondOrder,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct AdiabaticThresholds {
    min_end_fidelity: f64,
    /// Defaults to the `16(|g_a|² + |g_b|²)/Δ²` envelope.
    max_virtual_population: Option<f64>,
}

impl Default for AdiabaticThresholds {
    fn default() -> Self {
        AdiabaticThresholds { min_end_fidelity: 0.99, max_virtual_population: None }
    }
}

fn adiabatic_compare(loaded: &Loaded) -> Result<Outcome, CliError> {
    let p: AdiabaticParams = loaded.parameters()?;
    let th: AdiabaticThresholds = loaded.thresholds()?;
    let raman = p.raman.to_params()?;
    let s = space(loaded, Scenario::AdiabaticCompare, 3)?;
    let eff = ionparity::model::derive_effective_with(&raman, p.elimination)?;
    let t_final = match &p.t_final {
        Some(q) => positive("t_final", q.time()?)?,
        None => PI / (2.0 * positive("|g_eff|", eff.g_eff.norm())?),
    };
    let delta = raman.detuning_minus().abs().min(raman.detuning_plus().abs());
    let dt = match &loaded.config.run.dt {
        Some(q) => positive("run.dt", q.time()?)?,
        None => 2.0 * PI / positive("detuning", delta)? / 20.0,
    };
    let mut n = [0; 3];
    n[p.axis.index()] = p.initial_fock;
    let psi = fock_state::<f64>(&s, Level::Minus, n)?;
    let chosen = adiabatic_elimination_check(&raman, &s, &psi, t_final, dt, p.elimination)?;
    let other_kind = match p.elimination {
        Elimination::SecondOrder => Elimination::Published,
        Elimination::Published => Elimination::SecondOrder,
    };
    let other = adiabatic_elimination_check(&raman, &s, &psi, t_final, dt, other_kind)?;
    let full = ionparity::model::full_lambda_hamiltonian(&raman, &s)?;
    let record = sample_trajectory(&full, &psi, t_final, samples(loaded)?)?;
    let pv_limit = th.max_virtual_population.unwrap_or(chosen.virtual_population_envelope);
    let validity = raman.validity();
    Ok(Outcome {
        parameters: json!({ "model": to_value(&p), "dt": dt }),
        results: json!({
            "chosen": to_value(&chosen),
            "alternative": to_value(&other),
            "validity_ratios": validity.ratios.iter().map(|(k, v)| json!({ "name": k, "ratio": v })).collect::<Vec<_>>(),
            "lamb_dicke": raman.lamb_dicke(raman.k_a),
        }),
        thresholds: vec![
            Threshold::min("end_fidelity", th.min_end_fidelity, chosen.end_fidelity),
            Threshold::max("max_virtual_population", pv_limit, chosen.max_virtual_population),
        ],
        series: Some(record_series(
            "Three-level model: level populations".into(),
            &record,
            &["population_minus".into(), "population_plus".into(), "population_virtual".into()],
        )),
    })
}

// not-gate

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct NotGateParams {
    g: Quantity,
    cat_alpha: f64,
    axis: Axis,
}

impl Default for NotGateParams {
    fn default() -> Self {
        NotGateParams { g: text("150 kHz"), cat_alpha: 1.2, axis: Axis::Z }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct NotGateThresholds {
    min_fidelity: f64,
}

impl Default for NotGateThresholds {
    fn default() -> Self {
        NotGateThresholds { min_fidelity: 1.0 - 1e-9 }
    }
}

fn not_gate(loaded: &Loaded) -> Result<Outcome, CliError> {
    let p: NotGateParams = loaded.parameters()?;
    let th: NotGateThresholds = loaded.thresholds()?;
    let g = p.g.frequency()?;
    let s = space(loaded, Scenario::NotGate, 2)?;
    let gate = propagator(&parity_hamiltonian(g, &s, p.axis)?, PI / positive("|g|", g.abs())?)?;
    let mut one = [0; 3];
    one[p.axis.index()] = 1;
    let zero = fock_state::<f64>(&s, Level::Minus, [0; 3])?;
    let one = fock_state::<f64>(&s, Level::Minus, one)?;
    let alpha = Complex::new(p.cat_alpha, 0.0);
    let even = cat_state(&s, p.axis, alpha, CatParity::Even, Level::Minus)?;
    let odd = cat_state(&s, p.axis, alpha, CatParity::Odd, Level::Minus)?;
    let fock = not_gate_check(&zero, &one, &gate, p.axis)?;
    let cat = not_gate_check(&even, &odd, &gate, p.axis)?;
    let worst = |r: &ionparity::mirror::NotGateReport| r.fidelity_plus_to_minus.min(r.fidelity_minus_to_plus);
    Ok(Outcome {
        parameters: json!({ "model": to_value(&p) }),
        results: json!({ "pulse_time": PI / g.abs(), "fock_qubit": to_value(&fock), "cat_qubit": to_value(&cat) }),
        thresholds: vec![
            Threshold::min("fock_qubit_fidelity", th.min_fidelity, worst(&fock)),
            Threshold::min("cat_qubit_fidelity", th.min_fidelity, worst(&cat)),
            Threshold::min("fock_qubit_involution", th.min_fidelity, fock.involution_fidelity),
            Threshold::min("cat_qubit_involution", th.min_fidelity, cat.involution_fidelity),
        ],
        series: None,
    })
}

// time-reversal

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ReversalParams {
    lambda: Quantity,
    time: Quantity,
    coherent_alpha: f64,
    axis: Axis,
}

impl Default for ReversalParams {
    fn default() -> Self {
        ReversalParams { lambda: text("0.5 MHz"), time: text("1 us"), coherent_alpha: 1.0, axis: Axis::Z }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ReversalThresholds {
    max_identity_error: f64,
    min_recovery_fidelity: f64,
    min_three_pulse_fidelity: f64,
}

impl Default for ReversalThresholds {
    fn default() -> Self {
        ReversalThresholds {
            max_identity_error: 1e-9,
            min_recovery_fidelity: 1.0 - 1e-8,
            min_three_pulse_fidelity: 1.0 - 1e-8,
        }
    }
}

fn time_reversal(loaded: &Loaded) -> Result<Outcome, CliError> {
    let p: ReversalParams = loaded.parameters()?;
    let th: ReversalThresholds = loaded.thresholds()?;
    let lambda = p.lambda.frequency()?;
    let t = p.time.time()?;
    let s = space(loaded, Scenario::TimeReversal, 2)?;
    // λ (a + a†) σ_x anticommutes with the reflection.
    let h = (&quadrature::<f64>(&s, p.axis)? * &sigma_x(&s)?).scale(lambda).into_hermitian()?;
    let psi = coherent_state(&s, p.axis, Complex::new(p.coherent_alpha, 0.0), Level::Minus)?.state;
    let r = time_reversal_check(&h, t, &s, p.axis, &psi)?;
    // A generator that commutes with the reflection must be rejected.
    let commuting = parity_hamiltonian(lambda, &s, p.axis)?;
    let rejected = matches!(
        time_reversal_check(&commuting, t, &s, p.axis, &psi),
        Err(ionparity::Error::AnticommutationFailure(_))
    );
    Ok(Outcome {
        parameters: json!({ "model": to_value(&p) }),
        results: json!({ "report": to_value(&r), "commuting_generator_rejected": rejected }),
        thresholds: vec![
            Threshold::max("identity_error", th.max_identity_error, r.identity_error),
            Threshold::min("recovery_fidelity", th.min_recovery_fidelity, r.recovery_fidelity),
            Threshold::min("three_pulse_fidelity", th.min_three_pulse_fidelity, r.three_pulse_fidelity),
            Threshold::min("commuting_generator_rejected", 1.0, if rejected { 1.0 } else { 0.0 }),
        ],
        series: None,
    })
}

// design

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct DesignParams {
    g1: Quantity,
    eta1: f64,
    eta2: f64,
    omega0: Quantity,
    raman_detuning: Quantity,
    calibration: CalibrationMode,
}

impl Default for DesignParams {
    fn default() -> Self {
        DesignParams {
            g1: text("3 MHz"),
            eta1: 0.2,
            eta2: 0.3,
            omega0: text("11.2 MHz"),
            raman_detuning: text("12 GHz"),
            calibration: CalibrationMode::PaperLinear,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct DesignThresholds {
    /// Δ/|g₁|.
    min_detuning_ratio: f64,
    /// ω₀/|g_parity|.
    min_trap_ratio: f64,
}

impl Default for DesignThresholds {
    fn default() -> Self {
        DesignThresholds { min_detuning_ratio: 10.0, min_trap_ratio: 10.0 }
    }
}

fn design(loaded: &Loaded) -> Result<Outcome, CliError> {
    let p: DesignParams = loaded.parameters()?;
    let th: DesignThresholds = loaded.thresholds()?;
    let g1 = p.g1.frequency()?;
    let omega0 = p.omega0.frequency()?;
    let delta = p.raman_detuning.frequency()?;
    let cal = calibrate_two_beams(g1, p.eta1, p.eta2, p.calibration)?;
    let detuning_ratio = delta.abs() / g1.abs();
    let trap_ratio = omega0 / cal.g_parity.abs();
    Ok(Outcome {
        parameters: json!({ "model": to_value(&p) }),
        results: json!({
            "g1": g1,
            "g2": cal.g2,
            "g_parity": cal.g_parity,
            "g_parity_khz": cal.g_parity * 1e3,
            "pulse_time_us": cal.pulse_time(),
            "detuning_over_g1": detuning_ratio,
            "omega0_over_g_parity": trap_ratio,
            "omega0_over_g1": omega0 / g1.abs(),
        }),
        thresholds: vec![
            Threshold::min("detuning_over_g1", th.min_detuning_ratio, detuning_ratio),
            Threshold::min("omega0_over_g_parity", th.min_trap_ratio, trap_ratio),
        ],
        series: None,
    })
}
