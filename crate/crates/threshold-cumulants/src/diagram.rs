//! Young diagrams, corner profiles, and transition measures.
//!
//! Diagrams are drawn in French convention: row 1 is the bottom row and is
//! the longest, and the box in row `r` (1-based, counted from the bottom)
//! and column `c` (1-based) has *Russian coordinate* `u = c − r`.  The
//! boundary of a diagram, read in Russian coordinates, is a zigzag whose
//! valleys are the *concave corners* `x_0 < x_1 < … < x_L` (positions where
//! a box may be added) and whose peaks are the *convex corners*
//! `y_1 < … < y_L` (positions where a box may be removed).  These always
//! strictly interlace:
//!
//! ```text
//! x_0 < y_1 < x_1 < y_2 < … < y_L < x_L .
//! ```
//!
//! Two exact analytic objects are attached to an interlacing sequence `Λ`:
//!
//! * the **Cauchy transform**, the rational function
//!   `G_Λ(z) = ∏_j (z − y_j) / ∏_i (z − x_i)`, with simple poles exactly at
//!   the concave corners; and
//! * the **transition measure**, the probability measure
//!   `μ_Λ = ∑_i μ_i δ_{x_i}` whose weight at `x_i` is the residue of `G_Λ`
//!   there: `μ_i = ∏_j (x_i − y_j) / ∏_{k ≠ i} (x_i − x_k)`.  For a strictly
//!   interlacing sequence all weights are positive and sum to one.
//!
//! The transition measure of a diagram governs its random growth: a new box
//! appears at the concave corner `x_i` with probability `μ_i`, and iterating
//! this growth from the empty diagram gives each diagram of size `n` the
//! same distribution as the shape of `n` uniform points inserted by the row
//! insertion algorithm (see [`crate::tableau`] and [`crate::growth`]).
//!
//! Everything here is exact rational arithmetic; corner sequences may be
//! non-integer (for example after [`InterlacingSequence::perturb`]).

use num::bigint::BigUint;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Russian coordinate `u = c − r` of the box in row `r`, column `c`
/// (both 1-based, rows counted from the bottom).
pub fn u_of_box(row: usize, col: usize) -> i64 {
    col as i64 - row as i64
}

/// An integer partition `λ_1 ≥ λ_2 ≥ … ≥ λ_ℓ > 0`, viewed as a Young
/// diagram with `λ_r` boxes in row `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    /// Builds a diagram from row lengths, which must be weakly decreasing.
    /// Trailing zero rows are allowed and stripped.
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "row lengths must be weakly decreasing, got {rows:?}"
            )));
        }
        let mut rows = rows;
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(Self { rows })
    }

    /// The empty diagram.
    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    /// Parses a comma-separated list of row lengths such as `"4,2,2,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let raw = s.trim();
        if raw.is_empty() {
            return Err(Error::InvalidPartition("empty partition string".into()));
        }
        let rows = raw
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad row length {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    /// Row lengths `λ_1 ≥ λ_2 ≥ …` (no trailing zeros).
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Number of non-empty rows.
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Length of row `r` (1-based); zero beyond the last row.
    pub fn row_len(&self, r: usize) -> usize {
        if r >= 1 {
            self.rows.get(r - 1).copied().unwrap_or(0)
        } else {
            0
        }
    }

    /// Total number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// `true` for the empty diagram.
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The conjugate (transposed) diagram.
    pub fn conjugate(&self) -> YoungDiagram {
        let cols = self.rows.first().copied().unwrap_or(0);
        let rows = (1..=cols)
            .map(|c| self.rows.iter().take_while(|&&len| len >= c).count())
            .collect();
        YoungDiagram { rows }
    }

    /// Rows (1-based) at which a box may be added, with the Russian
    /// coordinate of the box that would be created, in decreasing row order
    /// (hence increasing `u`).
    fn addable_rows(&self) -> Vec<(usize, i64)> {
        let ell = self.rows.len();
        let mut out = Vec::with_capacity(ell + 1);
        for r in (1..=ell + 1).rev() {
            let cur = self.row_len(r);
            let prev = if r == 1 { usize::MAX } else { self.row_len(r - 1) };
            if cur < prev {
                out.push((r, u_of_box(r, cur + 1)));
            }
        }
        out
    }

    /// Russian coordinates of the concave (addable) corners, ascending.
    ///
    /// The empty diagram has the single concave corner `u = 0`.
    pub fn concave_corners(&self) -> Vec<i64> {
        self.addable_rows().into_iter().map(|(_, u)| u).collect()
    }

    /// Russian coordinates of the convex (removable) corners, ascending.
    ///
    /// The empty diagram has none.
    pub fn convex_corners(&self) -> Vec<i64> {
        let ell = self.rows.len();
        let mut out = Vec::new();
        for r in (1..=ell).rev() {
            if self.row_len(r) > self.row_len(r + 1) {
                out.push(u_of_box(r, self.row_len(r)));
            }
        }
        out
    }

    /// The corner profile: concave and convex corner coordinates as an
    /// exact [`InterlacingSequence`].
    pub fn profile(&self) -> InterlacingSequence {
        InterlacingSequence::new(
            self.concave_corners().into_iter().map(int).collect(),
            self.convex_corners().into_iter().map(int).collect(),
        )
        .expect("diagram corners always interlace")
    }

    /// Adds one box at the concave corner with Russian coordinate `u`.
    ///
    /// # Errors
    ///
    /// [`Error::NotACorner`] if `u` is not an addable coordinate.
    pub fn add_box(&self, u: i64) -> Result<YoungDiagram> {
        let row = self
            .addable_rows()
            .into_iter()
            .find(|&(_, cu)| cu == u)
            .map(|(r, _)| r)
            .ok_or(Error::NotACorner { u })?;
        let mut rows = self.rows.clone();
        if row == rows.len() + 1 {
            rows.push(1);
        } else {
            rows[row - 1] += 1;
        }
        Ok(YoungDiagram { rows })
    }

    /// Hook lengths, one entry per box, in the same layout as the rows.
    ///
    /// The hook of a box consists of the box itself, the boxes to its right
    /// in its row (the arm), and the boxes above it in its column (the leg).
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.rows
            .iter()
            .enumerate()
            .map(|(r0, &len)| {
                (1..=len)
                    .map(|c| {
                        let arm = len - c;
                        let leg = conj.row_len(c) - (r0 + 1);
                        arm + leg + 1
                    })
                    .collect()
            })
            .collect()
    }

    /// Number of standard Young tableaux of this shape, by the hook length
    /// formula `n! / ∏ hooks`.
    ///
    /// The empty diagram has exactly one (empty) tableau.
    pub fn count_syt(&self) -> BigUint {
        let n = self.size() as u64;
        let mut numerator = BigUint::one();
        for k in 2..=n {
            numerator *= BigUint::from(k);
        }
        let mut denominator = BigUint::one();
        for row in self.hook_lengths() {
            for h in row {
                denominator *= BigUint::from(h);
            }
        }
        numerator / denominator
    }
}

impl std::fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n`, in lexicographically decreasing order of rows.
pub fn partitions_of(n: usize) -> Vec<YoungDiagram> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if remaining == 0 {
            out.push(YoungDiagram {
                rows: current.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(n, n.max(1), &mut current, &mut out);
    out
}

/// All partitions of size `0..=n` (the empty diagram first).
pub fn partitions_up_to(n: usize) -> Vec<YoungDiagram> {
    (0..=n).flat_map(partitions_of).collect()
}

/// Strictly interlacing corner sequences
/// `x_0 < y_1 < x_1 < … < y_L < x_L` with rational entries.
///
/// Integer sequences arise as corner profiles of Young diagrams; general
/// rational sequences arise from perturbation and parameterize "continuous
/// diagrams" with the same analytic toolkit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacingSequence {
    concave: Vec<Rational>,
    convex: Vec<Rational>,
}

impl InterlacingSequence {
    /// Validates and builds a sequence from ascending concave corners `x`
    /// and convex corners `y` with `|x| = |y| + 1`.
    ///
    /// # Errors
    ///
    /// [`Error::InterlacingViolation`] unless
    /// `x_0 < y_1 < x_1 < … < y_L < x_L` strictly.
    pub fn new(concave: Vec<Rational>, convex: Vec<Rational>) -> Result<Self> {
        if concave.len() != convex.len() + 1 {
            return Err(Error::InterlacingViolation {
                reason: format!(
                    "need one more concave than convex corner, got {} and {}",
                    concave.len(),
                    convex.len()
                ),
            });
        }
        for (j, y) in convex.iter().enumerate() {
            let left = &concave[j];
            let right = &concave[j + 1];
            if !(left < y && y < right) {
                return Err(Error::InterlacingViolation {
                    reason: format!(
                        "expected {} < {} < {} at position {}",
                        left,
                        y,
                        right,
                        j + 1
                    ),
                });
            }
        }
        Ok(Self { concave, convex })
    }

    /// Ascending concave corners `x_0, …, x_L`.
    pub fn concave(&self) -> &[Rational] {
        &self.concave
    }

    /// Ascending convex corners `y_1, …, y_L`.
    pub fn convex(&self) -> &[Rational] {
        &self.convex
    }

    /// The number `L` of convex corners.
    pub fn convex_count(&self) -> usize {
        self.convex.len()
    }

    /// Evaluates the Cauchy transform
    /// `G(z) = ∏_j (z − y_j) / ∏_i (z − x_i)`.
    ///
    /// # Errors
    ///
    /// [`Error::Pole`] if `z` is a concave corner.
    pub fn cauchy_transform(&self, z: &Rational) -> Result<Rational> {
        if self.concave.contains(z) {
            return Err(Error::Pole { point: z.clone() });
        }
        let mut value = Rational::one();
        for y in &self.convex {
            value *= z - y;
        }
        for x in &self.concave {
            value /= z - x;
        }
        Ok(value)
    }

    /// Evaluates the falling product
    /// `G^{↓k}(x) = G(x) G(x−1) ⋯ G(x−k+1)`; the empty product (`k = 0`)
    /// is 1.
    ///
    /// # Errors
    ///
    /// [`Error::Pole`] if any of `x, x−1, …, x−k+1` is a concave corner.
    pub fn falling_cauchy(&self, x: &Rational, k: u32) -> Result<Rational> {
        let mut value = Rational::one();
        let mut point = x.clone();
        for _ in 0..k {
            value *= self.cauchy_transform(&point)?;
            point -= Rational::one();
        }
        Ok(value)
    }

    /// The transition measure: the atomic probability measure on the
    /// concave corners whose weights are the residues of the Cauchy
    /// transform.
    pub fn transition_measure(&self) -> TransitionMeasure {
        let masses = self
            .concave
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let mut m = Rational::one();
                for y in &self.convex {
                    m *= x - y;
                }
                for (k, other) in self.concave.iter().enumerate() {
                    if k != i {
                        m /= x - other;
                    }
                }
                m
            })
            .collect::<Vec<_>>();
        debug_assert!(masses.iter().all(|m| m.is_positive()));
        debug_assert!(masses.iter().sum::<Rational>().is_one());
        TransitionMeasure {
            atoms: self.concave.clone(),
            masses,
        }
    }

    /// The damped total mass `G⁺(u₀) = ∑_i μ_i / (|u₀ − x_i| + 1)`, an
    /// a priori scale for cumulants of insertion thresholds at `u₀`.
    pub fn g_plus(&self, u0: &Rational) -> Rational {
        self.transition_measure()
            .iter()
            .map(|(x, m)| m / ((u0 - x).abs() + Rational::one()))
            .sum()
    }

    /// Shifts corners by index-proportional amounts: the concave corners
    /// become `x_j + j·ε` for `j = 0, …, L` and the convex corners become
    /// `y_j + j·ε` for `j = 1, …, L`.  The gaps `x_j − y_j` are preserved,
    /// and for `ε > 0` all corner differences become generic while the
    /// sequence stays interlacing.
    ///
    /// # Errors
    ///
    /// [`Error::InterlacingViolation`] if the shifted sequence no longer
    /// interlaces (possible for `ε < 0`).
    pub fn perturb(&self, eps: &Rational) -> Result<InterlacingSequence> {
        let concave = self
            .concave
            .iter()
            .enumerate()
            .map(|(j, x)| x + eps * int(j as i64))
            .collect();
        let convex = self
            .convex
            .iter()
            .enumerate()
            .map(|(j, y)| y + eps * int(j as i64 + 1))
            .collect();
        InterlacingSequence::new(concave, convex)
    }
}

/// An atomic probability measure supported on the concave corners of an
/// interlacing sequence, with atoms in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMeasure {
    atoms: Vec<Rational>,
    masses: Vec<Rational>,
}

impl TransitionMeasure {
    /// Atom locations, ascending.
    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    /// Atom weights, in the same order as [`Self::atoms`].
    pub fn masses(&self) -> &[Rational] {
        &self.masses
    }

    /// Iterates over `(atom, mass)` pairs in ascending atom order.
    pub fn iter(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.atoms.iter().zip(self.masses.iter())
    }

    /// The weight at `x`, or `None` if `x` is not an atom.
    pub fn mass_at(&self, x: &Rational) -> Option<&Rational> {
        self.atoms.iter().position(|a| a == x).map(|i| &self.masses[i])
    }

    /// Total mass of `(-∞, u₀]`.
    pub fn mass_at_most(&self, u0: &Rational) -> Rational {
        self.iter()
            .filter(|(x, _)| *x <= u0)
            .map(|(_, m)| m.clone())
            .sum()
    }

    /// Cumulative masses `μ_1, μ_1+μ_2, …` (the last entry is 1).
    pub fn cumulative(&self) -> Vec<Rational> {
        let mut acc = Rational::zero();
        self.masses
            .iter()
            .map(|m| {
                acc += m;
                acc.clone()
            })
            .collect()
    }
}
