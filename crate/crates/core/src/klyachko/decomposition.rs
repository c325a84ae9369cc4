//! Adapted decompositions: a basis of lines such that every step of every
//! filtration in a family is spanned by the lines it contains.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::filtration::Filtration;
use crate::lattice::Int;
use crate::subspace::{QVec, Subspace};

/// Largest ambient dimension accepted by the search.
pub const MAX_RANK: usize = 6;

/// Node budget for the backtracking search. Compatible families are found
/// without backtracking in practice; the budget only bounds hopeless inputs.
const SEARCH_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompLine {
    /// Generator, scaled so that its first nonzero entry is 1.
    pub vector: QVec,
    /// Per filtration, the largest `i` with the line inside step `i`.
    pub jumps: Vec<Int>,
}

impl DecompLine {
    pub fn subspace(&self) -> Subspace {
        Subspace::line(self.vector.clone())
    }
}

/// Finds an adapted decomposition, visiting candidate jump vectors by
/// decreasing total depth and breaking ties lexicographically. Returns
/// `None` when the family admits no decomposition.
pub fn adapted_decomposition(family: &[Filtration]) -> Option<Vec<DecompLine>> {
    search(family, None)
}

/// Same search with complement choices shuffled by `seed`.
pub fn adapted_decomposition_seeded(family: &[Filtration], seed: u64) -> Option<Vec<DecompLine>> {
    search(family, Some(ChaCha8Rng::seed_from_u64(seed)))
}

fn search(family: &[Filtration], rng: Option<ChaCha8Rng>) -> Option<Vec<DecompLine>> {
    let rank = family.first()?.rank();
    assert!(family.iter().all(|f| f.rank() == rank), "family must share one ambient space");
    assert!(rank <= MAX_RANK, "rank {rank} exceeds the decomposition bound {MAX_RANK}");

    let mut cands = Vec::new();
    collect_candidates(family, 0, &mut Vec::new(), Subspace::full(rank), &mut cands);
    cands.sort_by(|(a, _), (b, _)| {
        let (sa, sb): (Int, Int) = (a.iter().sum(), b.iter().sum());
        sb.cmp(&sa).then_with(|| b.cmp(a))
    });

    let mut s = Search { family, cands, rng, budget: SEARCH_BUDGET };
    let mut chosen = Vec::new();
    if !s.go(0, &mut chosen) {
        return None;
    }
    let lines = chosen
        .into_iter()
        .map(|v| {
            let jumps = family.iter().map(|f| f.jump_of(&v)).collect();
            DecompLine { vector: v, jumps }
        })
        .collect();
    Some(lines)
}

/// Nonzero intersections `∩_k F_k(i_k)` over all jump vectors.
fn collect_candidates(
    family: &[Filtration],
    k: usize,
    prefix: &mut Vec<Int>,
    v: Subspace,
    out: &mut Vec<(Vec<Int>, Subspace)>,
) {
    if k == family.len() {
        out.push((prefix.clone(), v));
        return;
    }
    for (j, step) in family[k].steps() {
        let w = v.intersection(step);
        if w.is_zero() {
            continue;
        }
        prefix.push(j.clone());
        collect_candidates(family, k + 1, prefix, w, out);
        prefix.pop();
    }
}

struct Search<'a> {
    family: &'a [Filtration],
    cands: Vec<(Vec<Int>, Subspace)>,
    rng: Option<ChaCha8Rng>,
    budget: usize,
}

impl Search<'_> {
    fn go(&mut self, idx: usize, chosen: &mut Vec<QVec>) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        let Some((_, v)) = self.cands.get(idx) else {
            return is_adapted(self.family, chosen);
        };
        let v = v.clone();
        let inside: Vec<QVec> = chosen.iter().filter(|l| v.contains_vec(l)).cloned().collect();
        let p = Subspace::span(v.ambient(), inside);
        let need = v.dim() - p.dim();
        if need == 0 {
            return self.go(idx + 1, chosen);
        }

        let mut rows: Vec<QVec> = v.basis().to_vec();
        if let Some(rng) = self.rng.as_mut() {
            rows.shuffle(rng);
        }
        let all = Subspace::span(v.ambient(), chosen.iter().cloned());
        for combo in combinations(rows.len(), need) {
            let picked: Vec<QVec> = combo.iter().map(|&i| rows[i].clone()).collect();
            let grown = all.sum(&Subspace::span(v.ambient(), picked.iter().cloned()));
            if grown.dim() != all.dim() + need {
                continue;
            }
            let before = chosen.len();
            chosen.extend(picked.into_iter().map(normalize));
            if self.go(idx + 1, chosen) {
                return true;
            }
            chosen.truncate(before);
            if self.budget == 0 {
                return false;
            }
        }
        false
    }
}

fn normalize(mut v: QVec) -> QVec {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            for x in v.iter_mut() {
                *x = &*x / &lead;
            }
        }
    }
    v
}

/// Index subsets of size `k` of `0..n`, in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every step of every filtration equals the span of the lines inside it,
/// and the lines form a basis.
pub fn is_adapted(family: &[Filtration], lines: &[QVec]) -> bool {
    let Some(rank) = family.first().map(Filtration::rank) else {
        return false;
    };
    if lines.len() != rank || !Subspace::span(rank, lines.iter().cloned()).is_full() {
        return false;
    }
    family.iter().all(|f| {
        f.steps().all(|(_, step)| {
            let inside = lines.iter().filter(|l| step.contains_vec(l)).cloned();
            &Subspace::span(rank, inside) == step
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int, rat};

    fn q(v: &[i64]) -> QVec {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    fn line_filtration(v: &[i64]) -> Filtration {
        Filtration::new(v.len(), int(0), vec![(int(1), Subspace::line(q(v)))]).unwrap()
    }

    fn jumps_of(d: &[DecompLine]) -> Vec<Vec<Int>> {
        let mut j: Vec<Vec<Int>> = d.iter().map(|l| l.jumps.clone()).collect();
        j.sort();
        j
    }

    #[test]
    fn equal_lines_give_crossing_type() {
        let f = line_filtration(&[1, 1]);
        let d = adapted_decomposition(&[f.clone(), f]).unwrap();
        assert_eq!(jumps_of(&d), vec![vec![int(0), int(0)], vec![int(1), int(1)]]);
        let deep = d.iter().find(|l| l.jumps == vec![int(1), int(1)]).unwrap();
        assert_eq!(deep.subspace(), Subspace::line(q(&[1, 1])));
    }

    #[test]
    fn distinct_lines_split_apart() {
        let d = adapted_decomposition(&[line_filtration(&[1, 0]), line_filtration(&[1, 1])]).unwrap();
        assert_eq!(jumps_of(&d), vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
    }

    #[test]
    fn three_distinct_lines_in_the_plane_do_not_split() {
        let fam = [line_filtration(&[1, 0]), line_filtration(&[0, 1]), line_filtration(&[1, 1])];
        assert!(adapted_decomposition(&fam).is_none());
        for seed in 0..5 {
            assert!(adapted_decomposition_seeded(&fam, seed).is_none());
        }
    }

    #[test]
    fn seeds_agree_on_jump_multisets() {
        let plane = Subspace::span(3, [q(&[1, 0, 0]), q(&[0, 1, 0])]);
        let f1 = Filtration::new(3, int(0), vec![(int(2), plane)]).unwrap();
        let f2 = line_filtration(&[0, 1, 0]);
        let f3 = line_filtration(&[1, 1, 1]);
        let fam = [f1, f2, f3];
        let base = jumps_of(&adapted_decomposition(&fam).unwrap());
        for seed in 0..8 {
            let d = adapted_decomposition_seeded(&fam, seed).unwrap();
            assert!(is_adapted(&fam, &d.iter().map(|l| l.vector.clone()).collect::<Vec<_>>()));
            assert_eq!(jumps_of(&d), base);
        }
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
