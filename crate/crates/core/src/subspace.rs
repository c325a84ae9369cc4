//! Subspaces of `Q^r` in reduced row-echelon form.

use std::fmt;

use num_traits::{One, Zero};

use crate::lattice::{fmt_rational, Rational};

pub type QVec = Vec<Rational>;

/// Row-reduces in place and drops zero rows. Returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<QVec>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<QVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(ambient, i)).collect();
        Subspace { ambient, basis }
    }

    pub fn span<I: IntoIterator<Item = QVec>>(ambient: usize, vectors: I) -> Self {
        let mut rows: Vec<QVec> = vectors.into_iter().collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        rref(&mut rows, ambient);
        Subspace { ambient, basis: rows }
    }

    pub fn line(v: QVec) -> Self {
        let n = v.len();
        Self::span(n, [v])
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    /// Reduces `v` against the echelon rows; `v` lies in the span exactly
    /// when nothing is left.
    pub fn contains_vec(&self, v: &[Rational]) -> bool {
        if self.is_full() {
            return true;
        }
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero");
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (x, r) in w.iter_mut().zip(row).skip(p) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vec(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Orthogonal complement under the standard bilinear form.
    pub fn perp(&self) -> Subspace {
        let n = self.ambient;
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        let free = (0..n).filter(|c| !pivots.contains(c));
        let null = free.map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in self.basis.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        });
        Subspace::span(n, null)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        if self.is_full() || self.contains(other) {
            return other.clone();
        }
        if other.is_full() || other.contains(self) {
            return self.clone();
        }
        self.perp().sum(&other.perp()).perp()
    }
}

pub fn unit(n: usize, i: usize) -> QVec {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Coordinates of `v` in the (independent) vectors `basis`, if `v` lies in
/// their span.
pub fn coordinates(basis: &[QVec], v: &[Rational]) -> Option<QVec> {
    let k = basis.len();
    let n = v.len();
    // Solve sum_j x_j basis[j] = v; augmented n x (k+1) system.
    let mut rows: Vec<QVec> = (0..n)
        .map(|i| {
            let mut r: QVec = basis.iter().map(|b| b[i].clone()).collect();
            r.push(v[i].clone());
            r
        })
        .collect();
    let pivots = rref(&mut rows, k + 1);
    if pivots.last() == Some(&k) || pivots.len() < k {
        return None;
    }
    Some(rows.into_iter().take(k).map(|mut r| r.pop().unwrap()).collect())
}

pub fn fmt_qvec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("({})", parts.join(","))
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(|r| fmt_qvec(r)).collect();
        write!(f, "span[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;
    use proptest::prelude::*;

    fn q(v: &[i64]) -> QVec {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn canonical_form_makes_equality_structural() {
        let a = Subspace::span(3, [q(&[1, 2, 0]), q(&[0, 1, 1])]);
        let b = Subspace::span(3, [q(&[1, 3, 1]), q(&[2, 4, 0]), q(&[1, 1, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(3, [q(&[1, 0, 0]), q(&[0, 1, 0])]);
        let b = Subspace::span(3, [q(&[0, 1, 0]), q(&[0, 0, 1])]);
        assert_eq!(a.intersection(&b), Subspace::line(q(&[0, 1, 0])));
        assert!(a.sum(&b).is_full());
        let l1 = Subspace::line(q(&[1, 0]));
        let l2 = Subspace::line(q(&[1, 1]));
        assert!(l1.intersection(&l2).is_zero());
        assert!(l1.sum(&l2).is_full());
    }

    #[test]
    fn coordinates_in_basis() {
        let basis = vec![q(&[1, 1]), q(&[0, 2])];
        assert_eq!(coordinates(&basis, &q(&[3, 7])).unwrap(), vec![rat(3, 1), rat(2, 1)]);
        assert!(coordinates(&[q(&[1, 1])], &q(&[1, 0])).is_none());
    }

    proptest! {
        #[test]
        fn dimension_formula(a in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..4),
                             b in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..4)) {
            let a = Subspace::span(4, a.iter().map(|v| q(v)));
            let b = Subspace::span(4, b.iter().map(|v| q(v)));
            let s = a.sum(&b);
            let i = a.intersection(&b);
            prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
            prop_assert!(a.contains(&i) && b.contains(&i));
            prop_assert!(s.contains(&a) && s.contains(&b));
            prop_assert_eq!(a.perp().perp(), a.clone());
        }
    }
}
