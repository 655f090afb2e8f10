use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Electronic level. `Minus` is the ground state, `Virtual` the auxiliary
/// Raman level present only in three-level spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Minus,
    Plus,
    Virtual,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Minus, Level::Plus, Level::Virtual];

    pub fn index(self) -> usize {
        match self {
            Level::Minus => 0,
            Level::Plus => 1,
            Level::Virtual => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Level> {
        Level::ALL.get(i).copied()
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Minus => "-",
            Level::Plus => "+",
            Level::Virtual => "v",
        })
    }
}

/// Direction of a mode: either a trap axis or polar angles.
///
/// For `Angles { theta, phi }` the mode operator is
/// `a_L = cos θ a_z + sin θ cos φ a_x + sin θ sin φ a_y`, i.e. `theta` is
/// measured from the z axis and `phi` in the xy plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Direction<T> {
    Axis(Axis),
    Angles { theta: T, phi: T },
}

impl<T: Real> Direction<T> {
    /// Unit vector `(x, y, z)`.
    pub fn unit_vector(&self) -> [T; 3] {
        match *self {
            Direction::Axis(axis) => {
                let mut v = [T::zero(); 3];
                v[axis.index()] = T::one();
                v
            }
            Direction::Angles { theta, phi } => {
                [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
            }
        }
    }
}

impl<T> From<Axis> for Direction<T> {
    fn from(axis: Axis) -> Self {
        Direction::Axis(axis)
    }
}

/// Per-axis Fock cutoffs. A cutoff `N` keeps levels `0..N`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cutoffs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<usize>,
}

impl Cutoffs {
    pub fn z(nz: usize) -> Self {
        Cutoffs { x: None, y: None, z: Some(nz) }
    }

    pub fn xyz(nx: usize, ny: usize, nz: usize) -> Self {
        Cutoffs { x: Some(nx), y: Some(ny), z: Some(nz) }
    }

    fn as_array(&self) -> [Option<usize>; 3] {
        [self.x, self.y, self.z]
    }
}

/// A basis label `|level, n_x, n_y, n_z⟩`; absent axes carry `n = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub level: Level,
    pub n: [usize; 3],
}

impl BasisLabel {
    pub fn new(level: Level, n: [usize; 3]) -> Self {
        BasisLabel { level, n }
    }

    pub fn occupation(&self, axis: Axis) -> usize {
        self.n[axis.index()]
    }

    pub fn with_occupation(mut self, axis: Axis, n: usize) -> Self {
        self.n[axis.index()] = n;
        self
    }

    pub fn with_level(mut self, level: Level) -> Self {
        self.level = level;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceDescriptor {
    electronic_dim: usize,
    cutoffs: [Option<usize>; 3],
}

impl SpaceDescriptor {
    pub fn new(electronic_dim: usize, cutoffs: Cutoffs) -> Result<Self> {
        if electronic_dim != 2 && electronic_dim != 3 {
            return Err(Error::InvalidDimension(format!(
                "electronic dimension must be 2 or 3, got {electronic_dim}"
            )));
        }
        let cutoffs = cutoffs.as_array();
        if cutoffs.iter().all(Option::is_none) {
            return Err(Error::InvalidDimension("at least one vibrational axis is required".into()));
        }
        for (axis, c) in Axis::ALL.iter().zip(cutoffs) {
            if c == Some(0) {
                return Err(Error::InvalidDimension(format!("cutoff on axis {axis} must be at least 1")));
            }
        }
        Ok(SpaceDescriptor { electronic_dim, cutoffs })
    }

    pub fn electronic_dim(&self) -> usize {
        self.electronic_dim
    }

    pub fn cutoffs(&self) -> Cutoffs {
        let [x, y, z] = self.cutoffs;
        Cutoffs { x, y, z }
    }

    pub fn cutoff(&self, axis: Axis) -> Option<usize> {
        self.cutoffs[axis.index()]
    }

    pub fn has_axis(&self, axis: Axis) -> bool {
        self.cutoff(axis).is_some()
    }

    pub fn require_axis(&self, axis: Axis) -> Result<usize> {
        self.cutoff(axis).ok_or(Error::UnknownAxis(axis))
    }

    pub fn require_all_axes(&self) -> Result<()> {
        match Axis::ALL.iter().find(|a| !self.has_axis(**a)) {
            Some(a) => Err(Error::MissingAxis(format!("axis {a} is absent"))),
            None => Ok(()),
        }
    }

    pub fn require_level(&self, level: Level) -> Result<()> {
        if level.index() < self.electronic_dim {
            Ok(())
        } else {
            Err(Error::UnknownLevel(level))
        }
    }

    pub fn require_electronic_dim(&self, expected: usize) -> Result<()> {
        if self.electronic_dim == expected {
            Ok(())
        } else {
            Err(Error::WrongElectronicDim { expected, found: self.electronic_dim })
        }
    }

    /// Dimension of an axis factor; 1 when absent.
    fn axis_dim(&self, axis: Axis) -> usize {
        self.cutoff(axis).unwrap_or(1)
    }

    pub fn mode_dim(&self) -> usize {
        Axis::ALL.iter().map(|a| self.axis_dim(*a)).product()
    }

    pub fn dim(&self) -> usize {
        self.electronic_dim * self.mode_dim()
    }

    /// Same mode structure with a different electronic dimension.
    pub fn with_electronic_dim(&self, electronic_dim: usize) -> Result<Self> {
        SpaceDescriptor::new(electronic_dim, self.cutoffs())
    }

    /// Basis index of a label; `None` if any occupation is out of range.
    pub fn index(&self, label: BasisLabel) -> Option<usize> {
        if label.level.index() >= self.electronic_dim {
            return None;
        }
        let mut idx = label.level.index();
        for axis in Axis::ALL {
            let d = self.axis_dim(axis);
            let n = label.occupation(axis);
            if n >= d {
                return None;
            }
            idx = idx * d + n;
        }
        Some(idx)
    }

    pub fn label(&self, index: usize) -> BasisLabel {
        assert!(index < self.dim(), "basis index {index} out of range");
        let mut rest = index;
        let mut n = [0; 3];
        for axis in Axis::ALL.iter().rev() {
            let d = self.axis_dim(*axis);
            n[axis.index()] = rest % d;
            rest /= d;
        }
        let level = Level::from_index(rest).expect("level index in range");
        BasisLabel { level, n }
    }

    /// All basis labels in index order.
    pub fn labels(&self) -> impl Iterator<Item = BasisLabel> + '_ {
        (0..self.dim()).map(move |i| self.label(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(SpaceDescriptor::new(2, Cutoffs::z(4)).unwrap().dim(), 8);
        assert_eq!(SpaceDescriptor::new(3, Cutoffs::xyz(2, 2, 2)).unwrap().dim(), 24);
    }

    #[test]
    fn invalid_spaces() {
        assert!(matches!(SpaceDescriptor::new(2, Cutoffs::z(0)), Err(Error::InvalidDimension(_))));
        assert!(matches!(SpaceDescriptor::new(4, Cutoffs::z(3)), Err(Error::InvalidDimension(_))));
        assert!(matches!(SpaceDescriptor::new(1, Cutoffs::z(3)), Err(Error::InvalidDimension(_))));
        assert!(matches!(
            SpaceDescriptor::new(2, Cutoffs::default()),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn index_formula() {
        let s = SpaceDescriptor::new(3, Cutoffs::xyz(2, 3, 4)).unwrap();
        let l = BasisLabel::new(Level::Plus, [1, 2, 3]);
        assert_eq!(s.index(l), Some(((2 + 1) * 3 + 2) * 4 + 3));
        assert_eq!(s.index(BasisLabel::new(Level::Minus, [2, 0, 0])), None);
        let zonly = SpaceDescriptor::new(2, Cutoffs::z(5)).unwrap();
        assert_eq!(zonly.index(BasisLabel::new(Level::Plus, [0, 0, 2])), Some(7));
        assert_eq!(zonly.index(BasisLabel::new(Level::Virtual, [0, 0, 0])), None);
    }

    #[test]
    fn index_round_trip() {
        for s in [
            SpaceDescriptor::new(3, Cutoffs::xyz(2, 3, 4)).unwrap(),
            SpaceDescriptor::new(2, Cutoffs { x: Some(3), y: None, z: Some(2) }).unwrap(),
            SpaceDescriptor::new(2, Cutoffs::z(7)).unwrap(),
        ] {
            for i in 0..s.dim() {
                assert_eq!(s.index(s.label(i)), Some(i));
            }
        }
    }
}
