use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{coherent_amplitudes, fock_state, random_state_where, Axis, BasisLabel, CatParity, Level, SpaceDescriptor, StateVector};
use crate::linalg::CVector;
use crate::scalar::{cplx, Real};

/// One probe state on the gate axis, other axes in vacuum, electronic `|−⟩`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProbeSpec {
    Fock { n: usize },
    /// Coherent state `|α⟩`, truncated at `max_n` and renormalised.
    Coherent { re: f64, im: f64 },
    /// `|α⟩ ± |−α⟩`, truncated at `max_n` and renormalised.
    Cat { re: f64, im: f64, parity: CatParity },
    /// Complex Gaussian amplitudes on `n ≤ max_n`.
    Random { seed: u64 },
}

/// A probe suite: every probe is supported on Fock levels `n ≤ max_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSuiteSpec {
    pub max_n: usize,
    pub probes: Vec<ProbeSpec>,
}

/// Number of random probes in the standard suite.
pub const STANDARD_RANDOM_PROBES: u64 = 20;

impl ProbeSuiteSpec {
    /// Fock states `0..=min(6, max_n)`, coherent states with α = 0.7 and
    /// α = 0.5 + 0.5i, even and odd cats with α = 1, and 20 random states
    /// with seeds `seed..seed + 20`.
    pub fn standard(max_n: usize, seed: u64) -> Self {
        let mut probes: Vec<ProbeSpec> = (0..=max_n.min(6)).map(|n| ProbeSpec::Fock { n }).collect();
        probes.push(ProbeSpec::Coherent { re: 0.7, im: 0.0 });
        probes.push(ProbeSpec::Coherent { re: 0.5, im: 0.5 });
        probes.push(ProbeSpec::Cat { re: 1.0, im: 0.0, parity: CatParity::Even });
        probes.push(ProbeSpec::Cat { re: 1.0, im: 0.0, parity: CatParity::Odd });
        probes.extend((0..STANDARD_RANDOM_PROBES).map(|k| ProbeSpec::Random { seed: seed + k }));
        ProbeSuiteSpec { max_n, probes }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build<T: Real>(&self, space: &SpaceDescriptor, axis: Axis) -> Result<ProbeSuite<T>> {
        let cutoff = space.require_axis(axis)?;
        space.require_level(Level::Minus)?;
        if self.max_n >= cutoff {
            return Err(Error::CutoffExceeded { axis, n: self.max_n, cutoff });
        }
        let mut names = Vec::with_capacity(self.probes.len());
        let mut states = Vec::with_capacity(self.probes.len());
        for spec in &self.probes {
            let (name, psi) = match spec {
                ProbeSpec::Fock { n } => {
                    if *n > self.max_n {
                        return Err(Error::CutoffExceeded { axis, n: *n, cutoff: self.max_n + 1 });
                    }
                    let mut occ = [0; 3];
                    occ[axis.index()] = *n;
                    (format!("fock {n}"), fock_state(space, Level::Minus, occ)?)
                }
                ProbeSpec::Coherent { re, im } => {
                    let c = coherent_amplitudes(cplx(T::lit(*re), T::lit(*im)), self.max_n + 1);
                    (format!("coherent {re}{im:+}i"), from_fock_amplitudes(space, axis, &c)?)
                }
                ProbeSpec::Cat { re, im, parity } => {
                    let alpha = cplx(T::lit(*re), T::lit(*im));
                    let plus = coherent_amplitudes(alpha, self.max_n + 1);
                    let minus = coherent_amplitudes(-alpha, self.max_n + 1);
                    let sign = if *parity == CatParity::Even { T::one() } else { -T::one() };
                    let c: Vec<Complex<T>> = plus.iter().zip(&minus).map(|(a, b)| *a + *b * sign).collect();
                    let label = if *parity == CatParity::Even { "even" } else { "odd" };
                    (format!("{label} cat {re}{im:+}i"), from_fock_amplitudes(space, axis, &c)?)
                }
                ProbeSpec::Random { seed } => {
                    let keep = |l: BasisLabel| {
                        l.level == Level::Minus
                            && Axis::ALL.iter().all(|a| {
                                let n = l.occupation(*a);
                                if *a == axis { n <= self.max_n } else { n == 0 }
                            })
                    };
                    (format!("random {seed}"), random_state_where(space, *seed, keep)?)
                }
            };
            names.push(name);
            states.push(psi);
        }
        Ok(ProbeSuite { names, states })
    }
}

fn from_fock_amplitudes<T: Real>(space: &SpaceDescriptor, axis: Axis, c: &[Complex<T>]) -> Result<StateVector<T>> {
    let mut amps = CVector::zeros(space.dim());
    for (n, a) in c.iter().enumerate() {
        let label = BasisLabel::new(Level::Minus, [0; 3]).with_occupation(axis, n);
        amps[space.index(label).ok_or(Error::CutoffExceeded { axis, n, cutoff: space.cutoff(axis).unwrap_or(0) })?] = *a;
    }
    StateVector::normalized(*space, amps)
}

/// Named probe states.
#[derive(Clone, Debug)]
pub struct ProbeSuite<T: Real> {
    pub names: Vec<String>,
    pub states: Vec<StateVector<T>>,
}

impl<T: Real> ProbeSuite<T> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Unnamed probes.
    pub fn from_states(states: Vec<StateVector<T>>) -> Self {
        let names = (0..states.len()).map(|i| format!("probe {i}")).collect();
        ProbeSuite { names, states }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve::expectation_number;
    use crate::hilbert::{reflection_operator, Cutoffs};

    #[test]
    fn standard_suite_layout() {
        let s = SpaceDescriptor::new(2, Cutoffs::z(10)).unwrap();
        let spec = ProbeSuiteSpec::standard(6, 100);
        let suite = spec.build::<f64>(&s, Axis::Z).unwrap();
        assert_eq!(suite.len(), 7 + 2 + 2 + 20);
        assert_eq!(suite.names[0], "fock 0");
        assert_eq!(suite.names[30], "random 119");
        for psi in &suite.states {
            assert!((psi.norm() - 1.0).abs() < 1e-12);
            assert!(psi.probabilities().all(|(l, p)| p == 0.0 || (l.level == Level::Minus && l.n[2] <= 6)));
        }
        let small = ProbeSuiteSpec::standard(4, 0);
        assert_eq!(small.probes.iter().filter(|p| matches!(p, ProbeSpec::Fock { .. })).count(), 5);
        assert!(expectation_number(&suite.states[7], Axis::Z).unwrap() > 0.4);
    }

    #[test]
    fn truncated_cats_keep_parity() {
        let s = SpaceDescriptor::new(2, Cutoffs::z(8)).unwrap();
        let suite = ProbeSuiteSpec::standard(4, 0).build::<f64>(&s, Axis::Z).unwrap();
        let p = reflection_operator::<f64>(&s, Axis::Z).unwrap();
        let even = &suite.states[7];
        let odd = &suite.states[8];
        assert!(p.apply(even).unwrap().max_abs_diff(even).unwrap() < 1e-15);
        assert!(p.apply(odd).unwrap().max_abs_diff(&odd.clone()).unwrap() > 0.1);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let spec = ProbeSuiteSpec::standard(3, 7);
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(ProbeSuiteSpec::from_json(&text).unwrap(), spec);
        let custom = r#"{"max_n": 2, "probes": [{"kind": "fock", "n": 2}, {"kind": "cat", "re": 0.5, "im": 0, "parity": "odd"}]}"#;
        let s = SpaceDescriptor::new(2, Cutoffs::z(5)).unwrap();
        assert_eq!(ProbeSuiteSpec::from_json(custom).unwrap().build::<f64>(&s, Axis::Z).unwrap().len(), 2);
        let too_high = r#"{"max_n": 2, "probes": [{"kind": "fock", "n": 3}]}"#;
        assert!(ProbeSuiteSpec::from_json(too_high).unwrap().build::<f64>(&s, Axis::Z).is_err());
        assert!(ProbeSuiteSpec::from_json(r#"{"max_n": 1, "probes": [], "x": 1}"#).is_err());
        assert!(ProbeSuiteSpec::standard(5, 0).build::<f64>(&s, Axis::Z).is_err());
    }
}
