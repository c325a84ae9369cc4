use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::Int;
use crate::subspace::{QVec, Subspace};

/// A decreasing filtration `E(i)` of `Q^r`, stored by jump locations.
///
/// `steps[k]` is `E(k)` for the keys `k`; for any `i`, `E(i)` is the step
/// at the smallest key `>= i`, or zero past the last key. Consecutive
/// steps are strictly decreasing and nonzero, and the first one is the
/// whole space.
#[derive(Clone, PartialEq, Eq)]
pub struct Filtration {
    rank: usize,
    steps: BTreeMap<Int, Subspace>,
    zero: Subspace,
}

impl Filtration {
    /// `E(i) = E` for `i <= full_through`, then the listed steps.
    ///
    /// Steps must be decreasing in `at`; repeated subspaces and trailing
    /// zero steps are normalized away.
    pub fn new(rank: usize, full_through: Int, steps: Vec<(Int, Subspace)>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Validation("filtrations need a nonzero ambient space".into()));
        }
        let mut raw: BTreeMap<Int, Subspace> = BTreeMap::new();
        for (at, s) in steps {
            if s.ambient() != rank {
                return Err(Error::Dimension { expected: rank, found: s.ambient() });
            }
            if at <= full_through {
                if !s.is_full() {
                    return Err(Error::Validation(format!(
                        "step at {at} is not the whole space but lies at or below full_through = {full_through}"
                    )));
                }
                continue;
            }
            if raw.insert(at.clone(), s).is_some() {
                return Err(Error::Validation(format!("duplicate filtration step at {at}")));
            }
        }
        raw.insert(full_through, Subspace::full(rank));

        let mut prev: Option<&Subspace> = None;
        for (at, s) in &raw {
            if let Some(p) = prev {
                if !p.contains(s) {
                    return Err(Error::Validation(format!(
                        "filtration is not decreasing at {at}"
                    )));
                }
            }
            prev = Some(s);
        }

        // Keep k only when E(k) != E(k + 1).
        let entries: Vec<(Int, Subspace)> = raw.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        let mut normalized = BTreeMap::new();
        for (idx, (at, s)) in entries.iter().enumerate() {
            let next_same = entries.get(idx + 1).is_some_and(|(_, n)| n == s);
            if !next_same {
                normalized.insert(at.clone(), s.clone());
            }
        }
        Ok(Filtration { rank, steps: normalized, zero: Subspace::zero(rank) })
    }

    /// `E(i)` is the span of the lines whose weight is at least `i`.
    /// The lines must span `Q^r`.
    pub fn from_weighted_lines(rank: usize, lines: &[(QVec, Int)]) -> Result<Self> {
        let all = Subspace::span(rank, lines.iter().map(|(v, _)| v.clone()));
        if !all.is_full() {
            return Err(Error::Validation("weighted lines do not span the space".into()));
        }
        let min = lines.iter().map(|(_, w)| w).min().cloned().expect("nonempty");
        let mut weights: Vec<&Int> = lines.iter().map(|(_, w)| w).collect();
        weights.sort();
        weights.dedup();
        let steps = weights
            .into_iter()
            .map(|w| {
                let s = Subspace::span(rank, lines.iter().filter(|(_, x)| x >= w).map(|(v, _)| v.clone()));
                (w.clone(), s)
            })
            .collect();
        Self::new(rank, min, steps)
    }

    /// Rank-one filtration with a single jump at `a`.
    pub fn line_bundle(a: Int) -> Self {
        Self::new(1, a, Vec::new()).expect("rank-one filtration is valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn at(&self, i: &Int) -> &Subspace {
        self.steps.range(i..).next().map(|(_, s)| s).unwrap_or(&self.zero)
    }

    /// Jump locations, increasing.
    pub fn jumps(&self) -> impl DoubleEndedIterator<Item = &Int> {
        self.steps.keys()
    }

    pub fn steps(&self) -> impl Iterator<Item = (&Int, &Subspace)> {
        self.steps.iter()
    }

    /// Largest `i` with `E(i) = E`.
    pub fn full_through(&self) -> &Int {
        self.steps.keys().next().expect("first step is the whole space")
    }

    /// Largest `i` with `line` inside `E(i)`.
    pub fn jump_of(&self, v: &[crate::lattice::Rational]) -> Int {
        self.steps
            .iter()
            .rev()
            .find(|(_, s)| s.contains_vec(v))
            .map(|(k, _)| k.clone())
            .expect("every vector lies in the whole space")
    }

    /// `E'(i) = E(i - a)`.
    pub fn shift(&self, a: &Int) -> Filtration {
        let steps = self.steps.iter().map(|(k, s)| (k + a, s.clone())).collect();
        Filtration { rank: self.rank, steps, zero: self.zero.clone() }
    }

    /// Whether the filtration is the single jump `E(i) = E` for `i <= 0`.
    pub fn is_trivial(&self) -> bool {
        self.steps.len() == 1 && self.full_through() == &Int::from(0)
    }

    /// The next jump strictly above `i`, if any.
    pub fn next_jump(&self, i: &Int) -> Option<&Int> {
        self.steps.range((std::ops::Bound::Excluded(i), std::ops::Bound::Unbounded)).next().map(|(k, _)| k)
    }
}

impl fmt::Debug for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|(k, s)| format!("{k}: {s:?}")).collect();
        write!(f, "Filtration{{{}}}", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int, rat};

    fn q(v: &[i64]) -> QVec {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn lookups_follow_jumps() {
        let l = Subspace::line(q(&[1, 0]));
        let f = Filtration::new(2, int(0), vec![(int(1), l.clone())]).unwrap();
        assert!(f.at(&int(-5)).is_full());
        assert!(f.at(&int(0)).is_full());
        assert_eq!(f.at(&int(1)), &l);
        assert!(f.at(&int(2)).is_zero());
        assert_eq!(f.jump_of(&q(&[1, 0])), int(1));
        assert_eq!(f.jump_of(&q(&[1, 1])), int(0));
        assert_eq!(f.jumps().cloned().collect::<Vec<_>>(), vec![int(0), int(1)]);
    }

    #[test]
    fn normalization_drops_repeats() {
        let l = Subspace::line(q(&[1, 0]));
        let f = Filtration::new(
            2,
            int(0),
            vec![(int(1), Subspace::full(2)), (int(2), l.clone()), (int(3), l.clone()), (int(4), Subspace::zero(2))],
        )
        .unwrap();
        assert_eq!(f.jumps().cloned().collect::<Vec<_>>(), vec![int(1), int(3)]);
        assert_eq!(f.full_through(), &int(1));
        assert_eq!(f.at(&int(2)), &l);
    }

    #[test]
    fn rejects_increasing_steps() {
        let a = Subspace::line(q(&[1, 0]));
        let b = Subspace::line(q(&[0, 1]));
        assert!(Filtration::new(2, int(0), vec![(int(1), a), (int(2), b)]).is_err());
        assert!(Filtration::new(2, int(0), vec![(int(-1), Subspace::line(q(&[1, 1])))]).is_err());
    }

    #[test]
    fn weighted_lines_and_shift() {
        let f = Filtration::from_weighted_lines(2, &[(q(&[1, 0]), int(3)), (q(&[0, 1]), int(-1))]).unwrap();
        assert_eq!(f.full_through(), &int(-1));
        assert_eq!(f.at(&int(3)), &Subspace::line(q(&[1, 0])));
        let g = f.shift(&int(2));
        assert_eq!(g.full_through(), &int(1));
        assert_eq!(g.at(&int(5)), &Subspace::line(q(&[1, 0])));
        assert_eq!(Filtration::line_bundle(int(4)).jumps().cloned().collect::<Vec<_>>(), vec![int(4)]);
    }
}
