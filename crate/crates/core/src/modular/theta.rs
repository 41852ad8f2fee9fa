//! Theta series of the E8 lattice by exhaustive short-vector enumeration.
//!
//! E8 is realized in the standard frame of R^8 as the vectors whose
//! coordinates are all integers or all half-integers with even coordinate
//! sum. Internally coordinates are doubled (`y = 2x`) so both cosets live in
//! `Z^8`: all `y_i` even or all odd, with `Σ y_i ≡ 0 (mod 4)`. A vector of
//! positive norm `2k` then has `Σ y_i² = 8k`.

use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Roots;
use num_rational::{BigRational, Rational64};

use crate::exec::Exec;
use crate::linalg;
use crate::series::QSeries;

/// Simple roots of E8 in doubled standard coordinates, in Bourbaki order:
/// α1 - α3 - α4 - α5 - α6 - α7 - α8 is the long chain and α2 hangs off α4.
pub const E8_SIMPLE_ROOTS_DOUBLED: [[i64; 8]; 8] = [
    [1, -1, -1, -1, -1, -1, -1, 1],
    [2, 2, 0, 0, 0, 0, 0, 0],
    [-2, 2, 0, 0, 0, 0, 0, 0],
    [0, -2, 2, 0, 0, 0, 0, 0],
    [0, 0, -2, 2, 0, 0, 0, 0],
    [0, 0, 0, -2, 2, 0, 0, 0],
    [0, 0, 0, 0, -2, 2, 0, 0],
    [0, 0, 0, 0, 0, -2, 2, 0],
];

/// Vector counts of E8 by shell, `counts[k] = #{λ : (λ,λ) = 2k}`, for
/// `k < counts.len()`, with one representative per non-empty shell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E8Shells {
    counts: Vec<u64>,
    reps: Vec<Option<[i64; 8]>>,
}

struct Walk {
    budget: i64,
    counts: Vec<u64>,
    reps: Vec<Option<[i64; 8]>>,
}

impl Walk {
    fn new(shells: usize) -> Self {
        Walk {
            budget: 8 * (shells as i64 - 1),
            counts: vec![0; shells],
            reps: vec![None; shells],
        }
    }

    fn descend(&mut self, y: &mut [i64; 8], depth: usize, used: i64, sum: i64) {
        if depth == 8 {
            if sum.rem_euclid(4) == 0 {
                debug_assert_eq!(used % 8, 0);
                let k = (used / 8) as usize;
                self.counts[k] += 1;
                if self.reps[k].is_none() {
                    self.reps[k] = Some(*y);
                }
            }
            return;
        }
        let rem = self.budget - used;
        let parity = y[0].rem_euclid(2);
        let mut bound = rem.sqrt();
        if bound.rem_euclid(2) != parity {
            bound -= 1;
        }
        let mut v = -bound;
        while v <= bound {
            y[depth] = v;
            self.descend(y, depth + 1, used + v * v, sum + v);
            v += 2;
        }
    }
}

impl E8Shells {
    /// Enumerates every E8 vector of positive norm below `2 * shells`.
    pub fn enumerate(shells: usize) -> Self {
        Self::enumerate_with(shells, Exec::default())
    }

    pub fn enumerate_with(shells: usize, exec: Exec) -> Self {
        if shells == 0 {
            return E8Shells {
                counts: Vec::new(),
                reps: Vec::new(),
            };
        }
        let budget = 8 * (shells as i64 - 1);
        // Fan out over the first two coordinates of both cosets.
        let mut prefixes = Vec::new();
        for parity in [0i64, 1] {
            let mut b = budget.sqrt();
            if b.rem_euclid(2) != parity {
                b -= 1;
            }
            let mut y0 = -b;
            while y0 <= b {
                let mut y1 = -b;
                while y1 <= b {
                    if y0 * y0 + y1 * y1 <= budget {
                        prefixes.push((y0, y1));
                    }
                    y1 += 2;
                }
                y0 += 2;
            }
        }
        let parts = exec.map_range(prefixes.len(), |i| {
            let (y0, y1) = prefixes[i];
            let mut walk = Walk::new(shells);
            let mut y = [0i64; 8];
            y[0] = y0;
            y[1] = y1;
            walk.descend(&mut y, 2, y0 * y0 + y1 * y1, y0 + y1);
            walk
        });
        let mut counts = vec![0u64; shells];
        let mut reps = vec![None; shells];
        for part in parts {
            for k in 0..shells {
                counts[k] += part.counts[k];
                if reps[k].is_none() {
                    reps[k] = part.reps[k];
                }
            }
        }
        E8Shells { counts, reps }
    }

    /// Shell table covering at least `shells` shells, shared per process.
    pub fn cached(shells: usize) -> Arc<E8Shells> {
        static CACHE: OnceLock<Mutex<Option<Arc<E8Shells>>>> = OnceLock::new();
        let cell = CACHE.get_or_init(|| Mutex::new(None));
        let mut guard = cell.lock().unwrap_or_else(|e| e.into_inner());
        match guard.as_ref() {
            Some(t) if t.len() >= shells => Arc::new(t.truncated(shells)),
            _ => {
                let t = Arc::new(E8Shells::enumerate(shells));
                *guard = Some(Arc::clone(&t));
                t
            }
        }
    }

    fn truncated(&self, shells: usize) -> E8Shells {
        E8Shells {
            counts: self.counts[..shells].to_vec(),
            reps: self.reps[..shells].to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// A vector of norm `2k` in doubled standard coordinates.
    pub fn representative(&self, k: usize) -> Option<[i64; 8]> {
        self.reps.get(k).copied().flatten()
    }

    /// `Σ_λ q^{(λ,λ)/2}` to the enumerated depth.
    pub fn theta_series(&self) -> QSeries {
        QSeries::new(
            1,
            0,
            self.counts
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }
}

/// Theta series of E8 with `terms` coefficients, from lattice enumeration.
pub fn theta_e8(terms: usize) -> QSeries {
    E8Shells::cached(terms).theta_series()
}

/// Uncached variant with an explicit execution strategy.
pub fn theta_e8_with(terms: usize, exec: Exec) -> QSeries {
    E8Shells::enumerate_with(terms, exec).theta_series()
}

fn root_basis_inverse() -> &'static Vec<Vec<Rational64>> {
    static INV: OnceLock<Vec<Vec<Rational64>>> = OnceLock::new();
    INV.get_or_init(|| {
        // Columns are the simple roots.
        let b: Vec<Vec<i64>> = (0..8)
            .map(|i| (0..8).map(|j| E8_SIMPLE_ROOTS_DOUBLED[j][i]).collect())
            .collect();
        linalg::inverse(&b).expect("simple roots are a basis")
    })
}

/// Coordinates of a lattice vector (doubled standard coordinates) in the
/// simple-root basis [`E8_SIMPLE_ROOTS_DOUBLED`]. Returns `None` if the
/// vector is not in E8.
pub fn root_coords(y: &[i64; 8]) -> Option<[i64; 8]> {
    let inv = root_basis_inverse();
    let mut c = [0i64; 8];
    for (i, row) in inv.iter().enumerate() {
        let v: Rational64 = row.iter().zip(y).map(|(a, &b)| a * b).sum();
        if !v.is_integer() {
            return None;
        }
        c[i] = v.to_integer();
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_shells() {
        let s = E8Shells::enumerate(4);
        // 240 σ_3(n)
        assert_eq!(s.counts(), &[1, 240, 2160, 6720]);
    }

    #[test]
    fn strategies_agree() {
        assert_eq!(
            E8Shells::enumerate_with(6, Exec::Sequential),
            E8Shells::enumerate_with(6, Exec::Parallel)
        );
    }

    #[test]
    fn representatives_have_their_norm() {
        let s = E8Shells::enumerate(6);
        for k in 0..6 {
            let y = s.representative(k).unwrap();
            assert_eq!(y.iter().map(|v| v * v).sum::<i64>(), 8 * k as i64);
            assert!(root_coords(&y).is_some());
        }
    }

    #[test]
    fn simple_root_gram_is_cartan() {
        let roots: Vec<Vec<i64>> = E8_SIMPLE_ROOTS_DOUBLED.iter().map(|r| r.to_vec()).collect();
        let id: Vec<Vec<i64>> = (0..8)
            .map(|i| (0..8).map(|j| if i == j { 1 } else { 0 }).collect())
            .collect();
        let g4 = linalg::gram_of(&roots, &id);
        let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
        for i in 0..8 {
            for j in 0..8 {
                let expected = if i == j {
                    2
                } else if edges.contains(&(i, j)) || edges.contains(&(j, i)) {
                    -1
                } else {
                    0
                };
                assert_eq!(g4[i][j], 4 * expected, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn root_coords_reject_non_lattice_vectors() {
        // (1/2, 1/2, 0, ..., 0) mixes cosets.
        assert_eq!(root_coords(&[1, 1, 0, 0, 0, 0, 0, 0]), None);
        assert_eq!(
            root_coords(&E8_SIMPLE_ROOTS_DOUBLED[3]),
            Some([0, 0, 0, 1, 0, 0, 0, 0])
        );
    }
}
