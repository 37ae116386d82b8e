//! Frames of discernment, belief mass assignments and focusing onto a binary frame.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::consts::{EPS_SUM, MAX_FRAME_ATOMS};
use crate::opinion::Opinion;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("a frame needs at least 2 atoms, got {0}")]
    TooFewAtoms(usize),
    #[error("a frame holds at most {MAX_FRAME_ATOMS} atoms, got {0}")]
    TooManyAtoms(usize),
    #[error("atom identifiers must be non-empty")]
    EmptyAtom,
    #[error("duplicate atom {0:?}")]
    DuplicateAtom(String),
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("negative or non-finite mass {mass} on {subset:?}")]
    InvalidMass { subset: Vec<String>, mass: f64 },
    #[error("the empty set cannot carry mass")]
    MassOnEmptySet,
    #[error("masses sum to {0}, expected 1")]
    SumViolation(f64),
    #[error("focus must be a non-empty proper subset of the frame")]
    DegenerateFocus,
}

/// An ordered set of mutually exclusive atomic states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    atoms: Vec<String>,
}

/// A set of atoms of a particular frame, stored as a bitmask over atom positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u32);

impl Subset {
    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }
}

impl Frame {
    pub fn new<I, S>(atoms: I) -> Result<Self, FrameError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.len() < 2 {
            return Err(FrameError::TooFewAtoms(atoms.len()));
        }
        if atoms.len() > MAX_FRAME_ATOMS {
            return Err(FrameError::TooManyAtoms(atoms.len()));
        }
        let mut seen = HashSet::new();
        for a in &atoms {
            if a.is_empty() {
                return Err(FrameError::EmptyAtom);
            }
            if !seen.insert(a.as_str()) {
                return Err(FrameError::DuplicateAtom(a.clone()));
            }
        }
        Ok(Frame { atoms })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// The whole frame, Θ.
    pub fn full(&self) -> Subset {
        Subset(((1u64 << self.atoms.len()) - 1) as u32)
    }

    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<Subset, FrameError> {
        let mut bits = 0u32;
        for name in names {
            let name = name.as_ref();
            let idx = self
                .atoms
                .iter()
                .position(|a| a == name)
                .ok_or_else(|| FrameError::UnknownAtom(name.to_string()))?;
            bits |= 1 << idx;
        }
        Ok(Subset(bits))
    }

    /// Atom names of `s`, in frame order.
    pub fn names(&self, s: Subset) -> Vec<String> {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| s.0 & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect()
    }

    fn check(&self, s: Subset) -> Result<(), FrameError> {
        if s.is_subset_of(self.full()) {
            Ok(())
        } else {
            Err(FrameError::UnknownAtom(format!("#bits {:#x}", s.0)))
        }
    }
}

/// Non-negative masses over non-empty subsets of a frame summing to one.
/// Subsets without an entry carry zero mass.
#[derive(Debug, Clone, PartialEq)]
pub struct MassAssignment {
    frame: Frame,
    masses: BTreeMap<Subset, f64>,
}

impl MassAssignment {
    pub fn new<I>(frame: Frame, masses: I) -> Result<Self, FrameError>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        let mut map = BTreeMap::new();
        for (subset, mass) in masses {
            frame.check(subset)?;
            if !mass.is_finite() || mass < 0.0 {
                return Err(FrameError::InvalidMass {
                    subset: frame.names(subset),
                    mass,
                });
            }
            if subset.is_empty() {
                if mass != 0.0 {
                    return Err(FrameError::MassOnEmptySet);
                }
                continue;
            }
            if mass > 0.0 {
                *map.entry(subset).or_insert(0.0) += mass;
            }
        }
        let total: f64 = map.values().sum();
        if (total - 1.0).abs() > EPS_SUM {
            return Err(FrameError::SumViolation(total));
        }
        Ok(MassAssignment { frame, masses: map })
    }

    /// Builds an assignment from atom-name lists.
    pub fn from_named<S: AsRef<str>>(
        frame: Frame,
        masses: &[(&[S], f64)],
    ) -> Result<Self, FrameError> {
        let entries = masses
            .iter()
            .map(|(names, m)| frame.subset(names).map(|s| (s, *m)))
            .collect::<Result<Vec<_>, _>>()?;
        MassAssignment::new(frame, entries)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn mass(&self, s: Subset) -> f64 {
        self.masses.get(&s).copied().unwrap_or(0.0)
    }

    /// Focal elements and their masses.
    pub fn focal_elements(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.masses.iter().map(|(s, m)| (*s, *m))
    }

    fn sum_where(&self, x: Subset, pred: impl Fn(Subset) -> bool) -> Result<f64, FrameError> {
        self.frame.check(x)?;
        Ok(self
            .masses
            .iter()
            .filter(|(y, _)| pred(**y))
            .map(|(_, m)| m)
            .sum())
    }

    /// Total mass on non-empty subsets of `x`.
    pub fn belief_of(&self, x: Subset) -> Result<f64, FrameError> {
        self.sum_where(x, |y| y.is_subset_of(x))
    }

    /// Total mass on subsets disjoint from `x`.
    pub fn disbelief_of(&self, x: Subset) -> Result<f64, FrameError> {
        self.sum_where(x, |y| !y.intersects(x))
    }

    /// Total mass on subsets overlapping `x` without being contained in it.
    pub fn uncertainty_of(&self, x: Subset) -> Result<f64, FrameError> {
        self.sum_where(x, |y| y.intersects(x) && !y.is_subset_of(x))
    }

    /// Collapses the assignment onto the binary frame `{x, ¬x}`.
    ///
    /// The result always carries base rate ½.
    pub fn focus(&self, x: Subset) -> Result<Opinion, FrameError> {
        self.frame.check(x)?;
        if x.is_empty() || x == self.frame.full() {
            return Err(FrameError::DegenerateFocus);
        }
        let b = self.belief_of(x)?;
        let d = self.disbelief_of(x)?;
        let u = self.uncertainty_of(x)?;
        Ok(Opinion::new(b, d, u).expect("focused masses form a valid opinion"))
    }
}

#[derive(Serialize, Deserialize)]
struct MassEntry {
    subset: Vec<String>,
    mass: f64,
}

#[derive(Serialize, Deserialize)]
struct RawAssignment {
    atoms: Vec<String>,
    masses: Vec<MassEntry>,
}

impl Serialize for MassAssignment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawAssignment {
            atoms: self.frame.atoms.clone(),
            masses: self
                .masses
                .iter()
                .map(|(s, m)| MassEntry {
                    subset: self.frame.names(*s),
                    mass: *m,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MassAssignment {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RawAssignment::deserialize(deserializer)?;
        let frame = Frame::new(raw.atoms).map_err(D::Error::custom)?;
        let entries = raw
            .masses
            .iter()
            .map(|e| frame.subset(&e.subset).map(|s| (s, e.mass)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        MassAssignment::new(frame, entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ternary() -> MassAssignment {
        let frame = Frame::new(["p", "q", "r"]).unwrap();
        MassAssignment::from_named(
            frame,
            &[(&["p"][..], 0.2), (&["p", "q"][..], 0.5), (&["p", "q", "r"][..], 0.3)],
        )
        .unwrap()
    }

    fn binary() -> MassAssignment {
        let frame = Frame::new(["x", "not_x"]).unwrap();
        MassAssignment::from_named(
            frame,
            &[(&["x"][..], 0.6), (&["not_x"][..], 0.1), (&["x", "not_x"][..], 0.3)],
        )
        .unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn belief_examples() {
        let t = ternary();
        let p = t.frame().subset(&["p"]).unwrap();
        assert!(close(t.belief_of(p).unwrap(), 0.2));
        assert!(close(t.belief_of(t.frame().full()).unwrap(), 1.0));
        let b = binary();
        let x = b.frame().subset(&["x"]).unwrap();
        assert!(close(b.belief_of(x).unwrap(), 0.6));
    }

    #[test]
    fn disbelief_and_uncertainty_examples() {
        let t = ternary();
        let p = t.frame().subset(&["p"]).unwrap();
        assert_eq!(t.disbelief_of(p).unwrap(), 0.0);
        assert!(close(t.uncertainty_of(p).unwrap(), 0.8));
        assert_eq!(t.disbelief_of(t.frame().full()).unwrap(), 0.0);
        assert_eq!(t.uncertainty_of(t.frame().full()).unwrap(), 0.0);
        let b = binary();
        let x = b.frame().subset(&["x"]).unwrap();
        assert!(close(b.disbelief_of(x).unwrap(), 0.1));
        assert!(close(b.uncertainty_of(x).unwrap(), 0.3));
    }

    #[test]
    fn focus_examples() {
        let b = binary();
        let x = b.frame().subset(&["x"]).unwrap();
        assert!(b.focus(x).unwrap().max_abs_diff(&Opinion::new(0.6, 0.1, 0.3).unwrap()) < 1e-12);
        let t = ternary();
        let p = t.frame().subset(&["p"]).unwrap();
        assert!(t.focus(p).unwrap().max_abs_diff(&Opinion::new(0.2, 0.0, 0.8).unwrap()) < 1e-12);

        let frame = Frame::new(["a", "b", "c", "d"]).unwrap();
        let full = frame.full();
        let ignorant = MassAssignment::new(frame, [(full, 1.0)]).unwrap();
        for bits in 1..full.bits() {
            let o = ignorant.focus(Subset::from_bits(bits)).unwrap();
            assert_eq!(o, Opinion::VACUOUS);
        }
    }

    #[test]
    fn error_paths() {
        let t = ternary();
        assert_eq!(
            t.frame().subset(&["z"]),
            Err(FrameError::UnknownAtom("z".into()))
        );
        assert!(matches!(t.belief_of(Subset::from_bits(0b1000)), Err(FrameError::UnknownAtom(_))));
        assert_eq!(t.focus(t.frame().full()), Err(FrameError::DegenerateFocus));
        assert_eq!(t.focus(Subset::from_bits(0)), Err(FrameError::DegenerateFocus));
        assert_eq!(Frame::new(["a"]), Err(FrameError::TooFewAtoms(1)));
        assert_eq!(Frame::new(["a", "a"]), Err(FrameError::DuplicateAtom("a".into())));
        assert_eq!(Frame::new(["a", ""]), Err(FrameError::EmptyAtom));
        assert!(Frame::new((0..17).map(|i| i.to_string())).is_err());
        let f = Frame::new(["a", "b"]).unwrap();
        assert!(matches!(
            MassAssignment::from_named(f.clone(), &[(&["a"][..], 0.5)]),
            Err(FrameError::SumViolation(_))
        ));
        assert!(matches!(
            MassAssignment::from_named(f.clone(), &[(&["a"][..], 1.5), (&["b"][..], -0.5)]),
            Err(FrameError::InvalidMass { .. })
        ));
        let empty: [&str; 0] = [];
        assert_eq!(
            MassAssignment::from_named(f, &[(&empty[..], 0.5), (&["a"][..], 0.5)]),
            Err(FrameError::MassOnEmptySet)
        );
    }

    #[test]
    fn json_round_trip() {
        let t = ternary();
        let s = serde_json::to_string(&t).unwrap();
        let back: MassAssignment = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        let bad = r#"{"atoms":["a","b"],"masses":[{"subset":["c"],"mass":1.0}]}"#;
        assert!(serde_json::from_str::<MassAssignment>(bad).is_err());
    }
}
