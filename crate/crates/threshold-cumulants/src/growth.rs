//! Diagram growth, growth-path probabilities, and the exact moment oracle.
//!
//! The transition measure of a diagram (see [`crate::diagram`]) drives a
//! Markov growth chain: from diagram `λ`, a box is added at the concave
//! corner `x` with probability `μ_λ(x)`, giving a new diagram, and so on.
//! Started from the empty diagram, after `n` steps this chain reproduces
//! the shape distribution of `n` uniform values inserted by row insertion.
//!
//! For a uniformly filled tableau of shape `λ` and a cutoff `u₀`, the
//! moments of the insertion threshold reduce to growth probabilities:
//!
//! ```text
//! m_k = E[F_T(u₀)^k] = k! · P( u₀ ≥ U_1 > U_2 > … > U_k ),
//! ```
//!
//! where `U_1, U_2, …` are the Russian coordinates of the boxes the chain
//! adds to `λ`.  [`moment_oracle`] evaluates this probability exactly by
//! summing over all strictly decreasing growth paths; it serves as the
//! ground truth that all closed-form moment and cumulant formulas in
//! [`crate::cumulants`] are tested against.
//!
//! A strictly decreasing integer sequence decomposes uniquely into maximal
//! blocks of consecutive integers `x_i, x_i − 1, …, x_i − a_i + 1` with
//! `x_{i+1} ≤ x_i − a_i − 1`.  [`anti_pieri_formula`] evaluates the
//! probability that the chain follows one such block sequence in closed
//! form:
//!
//! ```text
//! P = Θ(x; a) · ∏_i  (−1)^{a_i − 1} / a_i · μ_λ(x_i) · G^{↓(a_i−1)}(x_i − 1) ,
//! ```
//!
//! where `Θ` is the pairwise interaction product
//! ([`crate::cumulants::theta`]) and `G^{↓}` the falling product of Cauchy
//! transforms.  The formula applies when each block
//! `{x_i − 1, …, x_i − a_i + 1}` avoids the concave corners of `λ`; blocks
//! that hit a concave corner are geometrically blocked and have
//! probability zero, and the formula reports the collision instead of a
//! value.

use num::{One, ToPrimitive, Zero};

use crate::cumulants::theta;
use crate::diagram::YoungDiagram;
use crate::error::{Error, Result};
use crate::rational::{factorial_rat, int, rat, Rational};

/// Probability that the growth chain started at `start` adds its next
/// boxes at exactly the Russian coordinates `coords`, in order.
///
/// A step at a coordinate that is not an addable corner makes the path
/// impossible, so its probability is 0.  The empty path has probability 1.
pub fn path_probability(start: &YoungDiagram, coords: &[i64]) -> Rational {
    let mut diagram = start.clone();
    let mut probability = Rational::one();
    for &u in coords {
        let measure = diagram.profile().transition_measure();
        match measure.mass_at(&int(u)) {
            Some(mass) => probability *= mass,
            None => return Rational::zero(),
        }
        diagram = diagram
            .add_box(u)
            .expect("transition-measure atoms are addable corners");
    }
    probability
}

/// Exact `k`-th moment of the insertion threshold at `u₀` for a uniformly
/// random filling of `shape`:
/// `m_k = k! · P(u₀ ≥ U_1 > U_2 > … > U_k)`, summed over all strictly
/// decreasing growth paths.  `m_0 = 1`.
pub fn moment_oracle(shape: &YoungDiagram, u0: &Rational, k: u32) -> Rational {
    fn descend(diagram: &YoungDiagram, bound: &Rational, strict: bool, depth: u32) -> Rational {
        let measure = diagram.profile().transition_measure();
        let mut total = Rational::zero();
        for (x, mass) in measure.iter() {
            let below = if strict { x < bound } else { x <= bound };
            if !below {
                continue;
            }
            if depth == 1 {
                total += mass;
            } else {
                let u = x
                    .to_integer()
                    .to_i64()
                    .expect("corner coordinates fit in i64");
                let grown = diagram.add_box(u).expect("atoms are addable corners");
                total += mass * descend(&grown, x, true, depth - 1);
            }
        }
        total
    }
    if k == 0 {
        return Rational::one();
    }
    factorial_rat(u64::from(k)) * descend(shape, u0, false, k)
}

/// Flattens block starts `x` and lengths `a` into the strictly decreasing
/// coordinate sequence `x_1, x_1−1, …, x_1−a_1+1, x_2, …`.
pub fn staircase_coordinates(x: &[i64], a: &[u32]) -> Vec<i64> {
    x.iter()
        .zip(a)
        .flat_map(|(&xi, &ai)| (0..i64::from(ai)).map(move |m| xi - m))
        .collect()
}

/// Validates a block sequence `(x, a)` against `shape`:
///
/// * `x` and `a` have equal positive length and every `a_i ≥ 1`;
/// * every `x_i` is a concave corner of `shape`;
/// * blocks are maximal and separated: `x_{i+1} ≤ x_i − a_i − 1`;
/// * no block interior `{x_i − 1, …, x_i − a_i + 1}` contains a concave
///   corner of `shape`.
///
/// # Errors
///
/// [`Error::InvalidInput`], [`Error::NotAConcaveCorner`], or
/// [`Error::CornerCollision`] accordingly.
pub fn validate_growth_blocks(shape: &YoungDiagram, x: &[i64], a: &[u32]) -> Result<()> {
    if x.is_empty() || x.len() != a.len() {
        return Err(Error::InvalidInput(format!(
            "need equally many block starts and lengths, got {} and {}",
            x.len(),
            a.len()
        )));
    }
    if let Some(pos) = a.iter().position(|&ai| ai == 0) {
        return Err(Error::InvalidInput(format!(
            "block length at position {} must be at least 1",
            pos + 1
        )));
    }
    for (xs, az) in x.windows(2).zip(a.windows(2)) {
        let (xi, xj) = (xs[0], xs[1]);
        let ai = az[0];
        if xj > xi - i64::from(ai) - 1 {
            return Err(Error::InvalidInput(format!(
                "blocks must be separated: need {xj} ≤ {xi} − {ai} − 1"
            )));
        }
    }
    let corners = shape.concave_corners();
    for &xi in x {
        if !corners.contains(&xi) {
            return Err(Error::NotAConcaveCorner { u: int(xi) });
        }
    }
    for (&xi, &ai) in x.iter().zip(a) {
        for m in 1..i64::from(ai) {
            if corners.contains(&(xi - m)) {
                return Err(Error::CornerCollision {
                    start: xi,
                    length: ai,
                    collision: xi - m,
                });
            }
        }
    }
    Ok(())
}

/// Closed-form probability that the growth chain from `shape` adds boxes
/// along the block sequence `(x, a)` (the strictly decreasing coordinates
/// [`staircase_coordinates`]`(x, a)`):
///
/// ```text
/// Θ(x; a) · ∏_i (−1)^{a_i−1}/a_i · μ(x_i) · G^{↓(a_i−1)}(x_i − 1) .
/// ```
///
/// Agrees with [`path_probability`] on the flattened sequence whenever the
/// blocks validate.
///
/// # Errors
///
/// Everything [`validate_growth_blocks`] reports.
pub fn anti_pieri_formula(shape: &YoungDiagram, x: &[i64], a: &[u32]) -> Result<Rational> {
    validate_growth_blocks(shape, x, a)?;
    let profile = shape.profile();
    let measure = profile.transition_measure();
    let xq: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
    let aq: Vec<Rational> = a.iter().map(|&v| int(i64::from(v))).collect();
    // Separated maximal blocks keep every pairwise denominator nonzero.
    let mut value = theta(&xq, &aq)?;
    for (&xi, &ai) in x.iter().zip(a) {
        let sign = if ai % 2 == 1 { 1 } else { -1 };
        value *= rat(sign, i64::from(ai));
        value *= measure
            .mass_at(&int(xi))
            .expect("validated block starts are atoms");
        // Block interiors avoid concave corners, so no pole can occur.
        value *= profile.falling_cauchy(&int(xi - 1), ai - 1)?;
    }
    Ok(value)
}

/// All ordered compositions of `k` into positive parts (there are
/// `2^{k−1}` of them for `k ≥ 1`, and one empty composition for `k = 0`).
pub fn compositions_of(k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in 1..=remaining {
            current.push(part);
            rec(remaining - part, current, out);
            current.pop();
        }
    }
    rec(k, &mut current, &mut out);
    out
}

/// All block sequences `(x, a)` with `Σ a_i = k` that validate against
/// `shape` (see [`validate_growth_blocks`]), i.e. the closed-form inputs
/// covering every strictly decreasing growth path of length `k` with
/// nonzero probability.
pub fn admissible_growth_blocks(shape: &YoungDiagram, k: u32) -> Vec<(Vec<i64>, Vec<u32>)> {
    let corners = shape.concave_corners();
    let mut out = Vec::new();
    for a in compositions_of(k) {
        if a.is_empty() {
            continue;
        }
        let mut x = Vec::with_capacity(a.len());
        fn extend(
            corners: &[i64],
            a: &[u32],
            shape: &YoungDiagram,
            x: &mut Vec<i64>,
            out: &mut Vec<(Vec<i64>, Vec<u32>)>,
        ) {
            let depth = x.len();
            if depth == a.len() {
                if validate_growth_blocks(shape, x, a).is_ok() {
                    out.push((x.clone(), a.to_vec()));
                }
                return;
            }
            for &c in corners {
                if depth > 0 && c > x[depth - 1] - i64::from(a[depth - 1]) - 1 {
                    continue;
                }
                x.push(c);
                extend(corners, a, shape, x, out);
                x.pop();
            }
        }
        extend(&corners, &a, shape, &mut x, &mut out);
    }
    out
}

/// The `k`-th moment assembled from closed-form block probabilities:
/// `k! · Σ anti_pieri_formula(shape, x, a)` over all admissible blocks
/// with `x_1 ≤ u₀`.  Must agree with [`moment_oracle`].
pub fn moment_from_growth_blocks(shape: &YoungDiagram, u0: &Rational, k: u32) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for (x, a) in admissible_growth_blocks(shape, k) {
        if int(x[0]) > *u0 {
            continue;
        }
        total += anti_pieri_formula(shape, &x, &a)
            .expect("admissible blocks evaluate without error");
    }
    factorial_rat(u64::from(k)) * total
}
