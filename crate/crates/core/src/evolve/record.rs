use std::fmt::Write as _;

use serde::Serialize;

use crate::hilbert::{SpaceDescriptor, StateVector};
use crate::scalar::Real;

/// Sampled trajectory: times, states and named observable series.
#[derive(Clone, Debug)]
pub struct EvolutionRecord<T: Real> {
    space: SpaceDescriptor,
    times: Vec<T>,
    states: Vec<StateVector<T>>,
    observables: Vec<(String, Vec<T>)>,
}

impl<T: Real> EvolutionRecord<T> {
    pub(crate) fn new(space: SpaceDescriptor) -> Self {
        EvolutionRecord { space, times: Vec::new(), states: Vec::new(), observables: Vec::new() }
    }

    pub(crate) fn push(&mut self, t: T, psi: StateVector<T>, values: Vec<(String, T)>) {
        debug_assert!(self.times.last().is_none_or(|last| t > *last));
        if self.observables.is_empty() {
            self.observables = values.iter().map(|(n, _)| (n.clone(), Vec::new())).collect();
        }
        for ((_, series), (_, v)) in self.observables.iter_mut().zip(values) {
            series.push(v);
        }
        self.times.push(t);
        self.states.push(psi);
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn states(&self) -> &[StateVector<T>] {
        &self.states
    }

    pub fn final_state(&self) -> &StateVector<T> {
        self.states.last().expect("a record holds at least the initial state")
    }

    pub fn observable_names(&self) -> impl Iterator<Item = &str> {
        self.observables.iter().map(|(n, _)| n.as_str())
    }

    pub fn series(&self, name: &str) -> Option<&[T]> {
        self.observables.iter().find(|(n, _)| n == name).map(|(_, s)| s.as_slice())
    }

    /// Largest accumulated norm drift along the trajectory.
    pub fn max_norm_drift(&self) -> T {
        self.series("norm_drift")
            .map_or(T::zero(), |s| s.iter().fold(T::zero(), |a, b| a.max(*b)))
    }

    /// One row per time point: `time`, then every observable.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("time");
        for name in self.observable_names() {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        for (i, t) in self.times.iter().enumerate() {
            let _ = write!(out, "{:e}", t.as_f64());
            for (_, series) in &self.observables {
                let _ = write!(out, ",{:e}", series[i].as_f64());
            }
            out.push('\n');
        }
        out
    }

    /// JSON form; amplitudes as `[re, im]` pairs when `include_amplitudes`.
    pub fn to_json(&self, include_amplitudes: bool) -> serde_json::Value {
        #[derive(Serialize)]
        struct Json {
            dimension: usize,
            times: Vec<f64>,
            observables: serde_json::Map<String, serde_json::Value>,
            #[serde(skip_serializing_if = "Option::is_none")]
            amplitudes: Option<Vec<Vec<[f64; 2]>>>,
        }
        let observables = self
            .observables
            .iter()
            .map(|(n, s)| (n.clone(), serde_json::json!(s.iter().map(|v| v.as_f64()).collect::<Vec<_>>())))
            .collect();
        let amplitudes = include_amplitudes.then(|| {
            self.states
                .iter()
                .map(|psi| psi.amplitudes().iter().map(|z| [z.re.as_f64(), z.im.as_f64()]).collect())
                .collect()
        });
        serde_json::to_value(Json {
            dimension: self.space.dim(),
            times: self.times.iter().map(|t| t.as_f64()).collect(),
            observables,
            amplitudes,
        })
        .expect("record serialises")
    }
}
