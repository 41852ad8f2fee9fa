//! Intersection-theoretic data of the threefold: the pairing of the Picard
//! basis `L1, L2, L3` against the curve basis `C, E, F`, triple intersections,
//! the rational elliptic surface lattice `Γ_{1,9} ≅ Γ_{1,1} ⊕ E8` and its
//! pushforward, bordered-Gram discriminants for Noether-Lefschetz divisors,
//! and the Euler characteristic bookkeeping of the Weierstrass model.
//!
//! Sign convention: the E8 summand here is negative definite, as it sits
//! inside `Γ_{1,9}`. The theta series enumeration in [`crate::modular`] works
//! with the positive-definite form; the sign flip happens only in this module.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeGram {
    gram: IntMatrix,
}

impl LatticeGram {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::Domain("lattice must have positive rank".into()));
        }
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::Domain("Gram matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Domain(format!(
                        "Gram matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(LatticeGram { gram })
    }

    /// `Λ`: the polarization `L1, L2` restricts to on a K3 fibre.
    pub fn k3_polarization() -> Self {
        LatticeGram {
            gram: vec![vec![-2, 1], vec![1, 0]],
        }
    }

    /// `Γ_{a,b} = diag(1^a, (-1)^b)`.
    pub fn diagonal(a: usize, b: usize) -> Self {
        let n = a + b;
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i != j {
                            0
                        } else if i < a {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect();
        LatticeGram { gram }
    }

    /// The negative-definite E8, as the Gram matrix of [`e8_roots`] in `Γ_{1,9}`.
    pub fn e8() -> Self {
        let vecs: Vec<Vec<i64>> = e8_roots().iter().map(Gamma19Class::to_vec).collect();
        LatticeGram {
            gram: linalg::gram_of(&vecs, &Self::diagonal(1, 9).gram),
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn det(&self) -> i64 {
        linalg::det(&self.gram)
    }

    pub fn dot(&self, u: &[i64], v: &[i64]) -> i64 {
        linalg::bilinear(&self.gram, u, v)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }
}

/// A curve class `cC + eE + fF` in `H_2(X, Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CurveClass {
    pub c: i64,
    pub e: i64,
    pub f: i64,
}

impl CurveClass {
    pub const C: CurveClass = CurveClass { c: 1, e: 0, f: 0 };
    pub const E: CurveClass = CurveClass { c: 0, e: 1, f: 0 };
    pub const F: CurveClass = CurveClass { c: 0, e: 0, f: 1 };

    pub const fn new(c: i64, e: i64, f: i64) -> Self {
        CurveClass { c, e, f }
    }

    pub fn is_zero(&self) -> bool {
        self.c == 0 && self.e == 0 && self.f == 0
    }

    /// gcd of the coordinates; 0 for the zero class.
    pub fn divisibility(&self) -> i64 {
        num_integer::gcd(num_integer::gcd(self.c, self.e), self.f)
    }

    pub fn is_primitive(&self) -> bool {
        self.divisibility() == 1
    }
}

impl Add for CurveClass {
    type Output = CurveClass;
    fn add(self, o: CurveClass) -> CurveClass {
        CurveClass::new(self.c + o.c, self.e + o.e, self.f + o.f)
    }
}

impl Sub for CurveClass {
    type Output = CurveClass;
    fn sub(self, o: CurveClass) -> CurveClass {
        CurveClass::new(self.c - o.c, self.e - o.e, self.f - o.f)
    }
}

impl Mul<CurveClass> for i64 {
    type Output = CurveClass;
    fn mul(self, b: CurveClass) -> CurveClass {
        CurveClass::new(self * b.c, self * b.e, self * b.f)
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (coef, name) in [(self.c, "C"), (self.f, "F"), (self.e, "E")] {
            if coef == 0 {
                continue;
            }
            let sign = if coef < 0 {
                "-"
            } else if parts.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = coef.abs();
            if mag == 1 {
                parts.push(format!("{sign}{name}"));
            } else {
                parts.push(format!("{sign}{mag}{name}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.concat())
        }
    }
}

/// A class `aH + Σ b_i C_i` on the rational elliptic surface `X_C`
/// (`P^2` blown up in nine points), with intersection form `Γ_{1,9}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gamma19Class {
    pub a: i64,
    pub b: [i64; 9],
}

impl Gamma19Class {
    pub const fn new(a: i64, b: [i64; 9]) -> Self {
        Gamma19Class { a, b }
    }

    pub fn line() -> Self {
        Gamma19Class::new(1, [0; 9])
    }

    pub fn exceptional(i: usize) -> Self {
        let mut b = [0; 9];
        b[i] = 1;
        Gamma19Class::new(0, b)
    }

    /// The section class `C'' = C_0`.
    pub fn section() -> Self {
        Self::exceptional(0)
    }

    /// The fibre class `E'' = 3H - Σ C_i`, also `-K`.
    pub fn fibre() -> Self {
        Gamma19Class::new(3, [-1; 9])
    }

    pub fn to_vec(&self) -> Vec<i64> {
        std::iter::once(self.a)
            .chain(self.b.iter().copied())
            .collect()
    }

    pub fn dot(&self, other: &Gamma19Class) -> i64 {
        self.a * other.a - self.b.iter().zip(&other.b).map(|(x, y)| x * y).sum::<i64>()
    }
}

impl Add for Gamma19Class {
    type Output = Gamma19Class;
    fn add(self, o: Gamma19Class) -> Gamma19Class {
        let mut b = self.b;
        for (x, y) in b.iter_mut().zip(o.b) {
            *x += y;
        }
        Gamma19Class::new(self.a + o.a, b)
    }
}

impl Sub for Gamma19Class {
    type Output = Gamma19Class;
    fn sub(self, o: Gamma19Class) -> Gamma19Class {
        self + (-1 * o)
    }
}

impl Mul<Gamma19Class> for i64 {
    type Output = Gamma19Class;
    fn mul(self, g: Gamma19Class) -> Gamma19Class {
        Gamma19Class::new(self * g.a, g.b.map(|x| self * x))
    }
}

/// Simple roots of the E8 summand orthogonal to `C''` and `E''`, ordered to
/// match [`crate::modular::E8_SIMPLE_ROOTS_DOUBLED`] node for node:
/// `C1-C2, H-C1-C2-C3, C2-C3, C3-C4, ..., C7-C8`.
pub fn e8_roots() -> [Gamma19Class; 8] {
    let c = Gamma19Class::exceptional;
    let h = Gamma19Class::line();
    [
        c(1) - c(2),
        h - c(1) - c(2) - c(3),
        c(2) - c(3),
        c(3) - c(4),
        c(4) - c(5),
        c(5) - c(6),
        c(6) - c(7),
        c(7) - c(8),
    ]
}

/// Embeds E8 coordinates (simple-root basis) into `Γ_{1,9}`.
pub fn e8_to_gamma19(lambda: &[i64; 8]) -> Gamma19Class {
    e8_roots()
        .iter()
        .zip(lambda)
        .fold(Gamma19Class::default(), |acc, (r, &k)| acc + k * *r)
}

/// `⟨L_i, β⟩` with rows `L1, L2, L3` and columns `C, F, E`.
pub fn pairing_matrix() -> [[i64; 3]; 3] {
    [[-1, -2, 1], [-1, 1, 0], [1, 0, 0]]
}

/// The degrees `(⟨L1, β⟩, ⟨L2, β⟩)` indexing Noether-Lefschetz data.
pub fn class_to_degrees(beta: CurveClass) -> (i64, i64) {
    let p = pairing_matrix();
    let col = [beta.c, beta.f, beta.e];
    let row = |r: usize| p[r].iter().zip(col).map(|(a, b)| a * b).sum::<i64>();
    (row(0), row(1))
}

/// `Γ_{ijk} = ∫ L_i L_j L_k` for indices in `1..=3`.
pub fn triple_intersection(i: usize, j: usize, k: usize) -> Result<i64> {
    for idx in [i, j, k] {
        if !(1..=3).contains(&idx) {
            return Err(Error::OutOfRange(format!(
                "triple intersection index {idx} not in 1..=3"
            )));
        }
    }
    let mut s = [i, j, k];
    s.sort_unstable();
    Ok(match s {
        [1, 1, 1] => 8,
        [1, 1, 2] => -1,
        [1, 1, 3] => -2,
        [1, 2, 2] => -1,
        [1, 2, 3] => 1,
        _ => 0,
    })
}

/// `(ι_2)_*`: H ↦ 3(C+E), C_0 ↦ C, C_i ↦ C+E for i ≥ 1.
pub fn pushforward(g: &Gamma19Class) -> CurveClass {
    let ce = CurveClass::C + CurveClass::E;
    let tail: i64 = g.b[1..].iter().sum();
    (3 * g.a + tail) * ce + g.b[0] * CurveClass::C
}

/// Whether `C'' + nE'' + λ` is effective on the rational elliptic surface,
/// with `λ` in simple-root coordinates of the negative-definite E8.
pub fn is_effective(n: i64, lambda: &[i64; 8]) -> bool {
    let sq = LatticeGram::e8().dot(lambda, lambda);
    is_effective_square(n, sq)
}

/// The effectivity criterion in terms of `λ·λ` alone: `λ·λ ≥ -2n`.
pub fn is_effective_square(n: i64, lambda_sq: i64) -> bool {
    lambda_sq >= -2 * n
}

/// Reflection of `λ` in the `i`-th simple root (an automorphism of E8).
pub fn reflect(lambda: &[i64; 8], i: usize) -> [i64; 8] {
    let e8 = LatticeGram::e8();
    let mut alpha = [0i64; 8];
    alpha[i] = 1;
    // s(λ) = λ - 2(λ·α)/(α·α) α with α·α = -2.
    let k = e8.dot(lambda, &alpha);
    let mut out = *lambda;
    out[i] += k;
    out
}

/// Index `(h; d_1, …, d_r)` of a Noether-Lefschetz divisor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NLIndex {
    pub h: i64,
    pub d: Vec<i64>,
}

impl NLIndex {
    pub fn new(h: i64, d: Vec<i64>) -> Self {
        NLIndex { h, d }
    }
}

/// `(-1)^r det` of `Λ` bordered by the column `(d_1, …, d_r, 2h - 2)`.
pub fn nl_discriminant(lattice: &LatticeGram, idx: &NLIndex) -> Result<i64> {
    let r = lattice.rank();
    if idx.d.len() != r {
        return Err(Error::Domain(format!(
            "degree vector has length {} but lattice rank is {r}",
            idx.d.len()
        )));
    }
    let mut m: IntMatrix = lattice
        .gram()
        .iter()
        .zip(&idx.d)
        .map(|(row, &di)| row.iter().copied().chain(std::iter::once(di)).collect())
        .collect();
    m.push(
        idx.d
            .iter()
            .copied()
            .chain(std::iter::once(2 * idx.h - 2))
            .collect(),
    );
    let sign = if r.is_multiple_of(2) { 1 } else { -1 };
    Ok(sign * linalg::det(&m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerData {
    pub deg_k_delta: i64,
    pub cusps: i64,
    pub e_delta: i64,
    pub e_x: i64,
}

/// Euler characteristic of the Weierstrass threefold with `L = -K_S`,
/// parameterized by `L·L`. The discriminant curve lies in `12L` and
/// `K_Δ = (K_S + Δ)·Δ = 11L·12L`; cusps are `4L·6L`. Resolving, a node
/// contributes 1 and a cusp 2, giving `e(X) = e(Δ) + #cusps`.
pub fn euler_characteristic(l_squared: i64) -> Result<EulerData> {
    if l_squared < 1 {
        return Err(Error::Domain(format!(
            "L·L must be positive, got {l_squared}"
        )));
    }
    let deg_k_delta = 11 * 12 * l_squared;
    let cusps = 4 * 6 * l_squared;
    let e_delta = -deg_k_delta + 2 * cusps;
    let e_x = e_delta + cusps;
    Ok(EulerData {
        deg_k_delta,
        cusps,
        e_delta,
        e_x,
    })
}

/// Degree of the del Pezzo surface obtained by blowing up `r` general
/// points of `P^2`: `K² = 9 + Σ E_i·E_i`.
pub fn blowup_degree(r: i64) -> Result<i64> {
    if !(0..=8).contains(&r) {
        return Err(Error::OutOfRange(format!(
            "number of blown-up points {r} not in 0..=8"
        )));
    }
    let exceptional_self_intersection = -1;
    Ok(9 + r * exceptional_self_intersection)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeierstrassDegrees {
    pub g2_deg: i64,
    pub g3_deg: i64,
    pub delta_deg: i64,
}

/// Plane-curve degrees of `g2 ∈ 4L`, `g3 ∈ 6L`, `Δ ∈ 12L` with `L = 3H - E`.
pub fn weierstrass_degrees() -> WeierstrassDegrees {
    // L = 3H - E; the degree as a plane curve is the coefficient of H.
    let l_h = 3;
    WeierstrassDegrees {
        g2_deg: 4 * l_h,
        g3_deg: 6 * l_h,
        delta_deg: 12 * l_h,
    }
}

pub const H11: i64 = 3;
pub const H21: i64 = 243;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HodgeReport {
    pub e_x: i64,
    pub hodge_euler: i64,
    pub b2: i64,
    pub b3: i64,
}

impl HodgeReport {
    pub fn consistent(&self) -> bool {
        self.e_x == self.hodge_euler && self.b2 == H11 && self.b3 == 2 + 2 * H21
    }
}

/// Compares `e(X)` at `L·L = 8` against `2(h^{1,1} - h^{2,1})` and the
/// Betti numbers of the Hodge diamond.
pub fn hodge_consistency() -> HodgeReport {
    let e_x = euler_characteristic(8).expect("8 is positive").e_x;
    // Hodge diamond of a Calabi-Yau threefold with h^{1,0} = h^{2,0} = 0.
    let b2 = H11;
    let b3 = 1 + H21 + H21 + 1;
    let betti = [1, 0, b2, b3, b2, 0, 1];
    let alternating: i64 = betti
        .iter()
        .enumerate()
        .map(|(i, b)| if i % 2 == 0 { *b } else { -b })
        .sum();
    debug_assert_eq!(alternating, 2 * (H11 - H21));
    HodgeReport {
        e_x,
        hodge_euler: alternating,
        b2,
        b3,
    }
}
