use nalgebra::{Complex, ComplexField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::space::{Axis, BasisLabel, Level, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::scalar::{cplx, Real};
use crate::tolerances;

/// Unit-norm amplitude vector over a [`SpaceDescriptor`] basis.
///
/// Public constructors enforce unit norm. Evolution results are never
/// renormalised; norm drift is checked by the propagators instead.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    space: SpaceDescriptor,
    amplitudes: CVector<T>,
}

impl<T: Real> StateVector<T> {
    /// Wraps amplitudes that are already normalised.
    pub fn new(space: SpaceDescriptor, amplitudes: CVector<T>) -> Result<Self> {
        check_len(&space, &amplitudes)?;
        let norm = amplitudes.norm();
        if norm == T::zero() {
            return Err(Error::NormZero);
        }
        if (norm - T::one()).abs() > T::tol(tolerances::STATE_NORM) {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        Ok(StateVector { space, amplitudes })
    }

    /// Normalises `amplitudes`.
    pub fn normalized(space: SpaceDescriptor, amplitudes: CVector<T>) -> Result<Self> {
        check_len(&space, &amplitudes)?;
        let norm = amplitudes.norm();
        if norm == T::zero() {
            return Err(Error::NormZero);
        }
        Ok(StateVector { space, amplitudes: amplitudes.unscale(norm) })
    }

    pub(crate) fn from_raw(space: SpaceDescriptor, amplitudes: CVector<T>) -> Self {
        debug_assert_eq!(amplitudes.len(), space.dim());
        StateVector { space, amplitudes }
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn amplitudes(&self) -> &CVector<T> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> CVector<T> {
        self.amplitudes
    }

    pub fn amplitude(&self, label: BasisLabel) -> Option<Complex<T>> {
        self.space.index(label).map(|i| self.amplitudes[i])
    }

    pub fn norm(&self) -> T {
        self.amplitudes.norm()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Largest amplitude-wise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).modulus())))
    }

    /// Probability of each basis state.
    pub fn probabilities(&self) -> impl Iterator<Item = (BasisLabel, T)> + '_ {
        self.amplitudes
            .iter()
            .enumerate()
            .map(move |(i, a)| (self.space.label(i), a.norm_sqr()))
    }

    /// Same amplitudes with the vibrational factor moved to another level.
    /// The state must lie entirely in `from`.
    pub fn relabel_level(&self, from: Level, to: Level) -> Result<Self> {
        self.space.require_level(to)?;
        let mut out = CVector::zeros(self.space.dim());
        for (i, a) in self.amplitudes.iter().enumerate() {
            let label = self.space.label(i);
            if label.level == from {
                out[self.space.index(label.with_level(to)).expect("level present")] = *a;
            } else if *a != Complex::new(T::zero(), T::zero()) {
                return Err(Error::InvalidParameter(format!("state has population outside level {from}")));
            }
        }
        Ok(StateVector::from_raw(self.space, out))
    }
}

fn check_len<T: Real>(space: &SpaceDescriptor, amplitudes: &CVector<T>) -> Result<()> {
    if amplitudes.len() != space.dim() {
        return Err(Error::InvalidDimension(format!(
            "{} amplitudes for a space of dimension {}",
            amplitudes.len(),
            space.dim()
        )));
    }
    Ok(())
}

/// `|level⟩ ⊗ |n_x, n_y, n_z⟩`; occupations of absent axes must be zero.
pub fn fock_state<T: Real>(space: &SpaceDescriptor, level: Level, n: [usize; 3]) -> Result<StateVector<T>> {
    space.require_level(level)?;
    for axis in Axis::ALL {
        let k = n[axis.index()];
        match space.cutoff(axis) {
            Some(c) if k >= c => return Err(Error::CutoffExceeded { axis, n: k, cutoff: c }),
            None if k > 0 => return Err(Error::UnknownAxis(axis)),
            _ => {}
        }
    }
    let mut amps = CVector::zeros(space.dim());
    amps[space.index(BasisLabel::new(level, n)).expect("validated label")] = cplx(T::one(), T::zero());
    Ok(StateVector::from_raw(*space, amps))
}

/// A state renormalised after truncation, with the discarded weight.
#[derive(Clone, Debug)]
pub struct Truncated<T: Real> {
    pub state: StateVector<T>,
    /// `1 − Σ_n |c_n|²` before renormalisation.
    pub norm_deficit: T,
}

/// Fock amplitudes `e^{−|α|²/2} α^n / √n!` for `n < cutoff`.
pub fn coherent_amplitudes<T: Real>(alpha: Complex<T>, cutoff: usize) -> Vec<Complex<T>> {
    let mut out = Vec::with_capacity(cutoff);
    let mut c = cplx((-alpha.norm_sqr() / T::lit(2.0)).exp(), T::zero());
    for n in 0..cutoff {
        if n > 0 {
            c = c * alpha / T::from_count(n).sqrt();
        }
        out.push(c);
    }
    out
}

/// Coherent state `|α⟩` on `axis` (other axes in vacuum) times `|level⟩`,
/// truncated to the cutoff and renormalised.
pub fn coherent_state<T: Real>(
    space: &SpaceDescriptor,
    axis: Axis,
    alpha: Complex<T>,
    level: Level,
) -> Result<Truncated<T>> {
    let cutoff = space.require_axis(axis)?;
    space.require_level(level)?;
    let mean = alpha.norm_sqr();
    if mean + T::lit(5.0) * mean.sqrt() >= T::from_count(cutoff) {
        log::warn!(
            "coherent amplitude |α|² = {:.3} is close to the cutoff {cutoff} on axis {axis}",
            mean.as_f64()
        );
    }
    let coeffs = coherent_amplitudes(alpha, cutoff);
    let mut amps = CVector::zeros(space.dim());
    for (n, c) in coeffs.iter().enumerate() {
        let label = BasisLabel::new(level, [0; 3]).with_occupation(axis, n);
        amps[space.index(label).expect("within cutoff")] = *c;
    }
    let kept: T = coeffs.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr());
    let state = StateVector::normalized(*space, amps)?;
    Ok(Truncated { state, norm_deficit: T::one() - kept })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CatParity {
    Even,
    Odd,
}

/// Normalised `|α⟩ ± |−α⟩` on `axis`.
pub fn cat_state<T: Real>(
    space: &SpaceDescriptor,
    axis: Axis,
    alpha: Complex<T>,
    parity: CatParity,
    level: Level,
) -> Result<StateVector<T>> {
    let plus = coherent_state(space, axis, alpha, level)?.state;
    let minus = coherent_state(space, axis, -alpha, level)?.state;
    let sign = match parity {
        CatParity::Even => T::one(),
        CatParity::Odd => -T::one(),
    };
    superposition(&[(cplx(T::one(), T::zero()), &plus), (cplx(sign, T::zero()), &minus)])
}

/// Haar-like random state from complex Gaussian amplitudes; deterministic
/// for a given seed.
pub fn random_state<T: Real>(space: &SpaceDescriptor, seed: u64) -> StateVector<T> {
    random_state_where(space, seed, |_| true).expect("full support is non-empty")
}

/// Random state supported on the basis labels accepted by `keep`.
pub fn random_state_where<T: Real>(
    space: &SpaceDescriptor,
    seed: u64,
    keep: impl Fn(BasisLabel) -> bool,
) -> Result<StateVector<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amps = CVector::zeros(space.dim());
    for (i, label) in space.labels().enumerate() {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        if keep(label) {
            amps[i] = cplx(T::lit(re), T::lit(im));
        }
    }
    StateVector::normalized(*space, amps)
}

/// Normalised `Σ c_k |ψ_k⟩`.
pub fn superposition<T: Real>(terms: &[(Complex<T>, &StateVector<T>)]) -> Result<StateVector<T>> {
    let (_, first) = terms.first().ok_or(Error::NormZero)?;
    let space = *first.space();
    let mut amps = CVector::zeros(space.dim());
    for (c, psi) in terms {
        if psi.space() != &space {
            return Err(Error::SpaceMismatch);
        }
        amps += psi.amplitudes() * *c;
    }
    StateVector::normalized(space, amps)
}

/// Highest Fock level on `axis` whose population exceeds `threshold`.
pub fn max_occupied_level<T: Real>(psi: &StateVector<T>, axis: Axis, threshold: T) -> Option<usize> {
    psi.probabilities()
        .filter(|(_, p)| *p > threshold)
        .map(|(l, _)| l.occupation(axis))
        .max()
}

/// Total population in the top `count` Fock levels of `axis`.
pub fn top_levels_population<T: Real>(psi: &StateVector<T>, axis: Axis, count: usize) -> Result<T> {
    let cutoff = psi.space().require_axis(axis)?;
    let first = cutoff.saturating_sub(count);
    Ok(psi
        .probabilities()
        .filter(|(l, _)| l.occupation(axis) >= first)
        .fold(T::zero(), |acc, (_, p)| acc + p))
}
