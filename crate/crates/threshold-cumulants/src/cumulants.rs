//! Exact moment and cumulant formulas for insertion thresholds.
//!
//! Throughout, `Λ` is an interlacing corner sequence with transition
//! measure `μ` (atoms `x`, see [`crate::diagram`]), `u₀` is the cutoff,
//! and atoms are split into *small* (`≤ u₀`) and *big* (`> u₀`).  The
//! central objects are the cumulants `κ_n` of the insertion threshold
//! `F_T(u₀)` of a uniformly random tableau, computed three independent
//! ways and cross-checked against the growth-path moment oracle
//! ([`crate::growth::moment_oracle`]):
//!
//! * **Tree formula** ([`cumulant_tree_formula`]): a signed sum over
//!   non-crossing alternating trees, decorated by small atoms on black
//!   vertices and big atoms on white ones,
//!
//!   ```text
//!   κ_n = (n−1)! Σ_T Σ_x (−1)^{|B_T|−1} ∏_v μ(x_v) / ∏_{(b→w)} (x_w − x_b + w − b).
//!   ```
//!
//!   The denominators are strictly positive on the decoration domain, so
//!   this formula is total — it works for every profile.
//!
//! * **Caterpillar formula** ([`cumulant_caterpillar_formula`]): the same
//!   shape of sum over caterpillar graphs whose red vertices range over
//!   *all* atoms.  Red decorations can make a denominator vanish when
//!   corner differences are integers, so this formula requires a generic
//!   profile and reports the offending edge otherwise.
//!
//! * **Interlacing moment sum** ([`moment_interlacing`]): a closed moment
//!   formula summing over strictly decreasing tuples of small atoms with
//!   multiplicities, built from the pairwise interaction product
//!   [`theta`] and falling products of Cauchy transforms.  It requires
//!   genericity (no two concave corners differing by an integer); for an
//!   integer diagram one first perturbs the profile and takes the limit
//!   ([`regularized_moment_limit_check`]).
//!
//! Moments and cumulants are linked by summing over set partitions
//! ([`moments_to_cumulants`], [`cumulants_to_moments`]), and the a priori
//! scale `|κ_n| ≤ (n−1)! · G⁺(u₀)^{n−1}` is checked by
//! [`cumulant_bound_check`].  The signed tree-sum kernel [`frak_t`]
//! underlies the unbiased Monte Carlo estimator of `κ_n`
//! (see [`crate::montecarlo`]).

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{partitions_up_to, InterlacingSequence, TransitionMeasure, YoungDiagram};
use crate::error::{Error, Result};
use crate::graphs::{
    decorations, enumerate_caterpillars, enumerate_multispines, enumerate_nca_trees, eval_f,
    Color, ColoredDigraph,
};
use crate::growth::{compositions_of, moment_oracle};
use crate::rational::{factorial_rat, format_rational, int, is_integer, parse_rational, rat, Rational};

/// The pairwise interaction product
///
/// ```text
/// Θ(x; a) = ∏_{i<j} (x_i − x_j)(x_i − x_j − a_i + a_j)
///           ────────────────────────────────────────── ,
///           (x_i − x_j + a_j)(x_i − x_j − a_i)
/// ```
///
/// which weighs how strongly the blocks `[x_i − a_i + 1, x_i]` interact.
/// It equals 1 when `ℓ ≤ 1` and factors over pairs.
///
/// # Errors
///
/// * [`Error::InvalidInput`] if `x` and `a` have different lengths.
/// * [`Error::ZeroPairDenominator`] if `x_i − x_j + a_j = 0` or
///   `x_i − x_j − a_i = 0` for some pair `i < j` (1-based indices in the
///   error).
pub fn theta(x: &[Rational], a: &[Rational]) -> Result<Rational> {
    if x.len() != a.len() {
        return Err(Error::InvalidInput(format!(
            "positions and multiplicities must have equal length, got {} and {}",
            x.len(),
            a.len()
        )));
    }
    let mut value = Rational::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let diff = &x[i] - &x[j];
            let den1 = &diff + &a[j];
            let den2 = &diff - &a[i];
            if den1.is_zero() || den2.is_zero() {
                return Err(Error::ZeroPairDenominator { i: i + 1, j: j + 1 });
            }
            value *= &diff * (&diff - &a[i] + &a[j]) / (den1 * den2);
        }
    }
    Ok(value)
}

/// Evaluates `Θ(x; a)` through its partial-fraction expansion over
/// multi-spines:
///
/// ```text
/// Θ(x; a) = Σ_MS  β_MS / ∏_{(i→j) ∈ MS} (x_j − x_i + a_i) ,
///
/// β_MS = (−1)^ℓ · ∏_j a_j / ∏_{paths P} ( − Σ_{i ∈ P} a_i ) ,
/// ```
///
/// summing over all arrangements of `1..ℓ` into vertex-disjoint directed
/// paths.  Agrees with [`theta`] whenever both sides are defined.
///
/// # Errors
///
/// * [`Error::InvalidInput`] on length mismatch.
/// * [`Error::ZeroSubsetSum`] if some nonempty subset of `a` sums to zero
///   (then some `β_MS` is undefined).
/// * [`Error::ZeroDenominator`] if an edge factor vanishes.
pub fn theta_via_multispines(x: &[Rational], a: &[Rational]) -> Result<Rational> {
    if x.len() != a.len() {
        return Err(Error::InvalidInput(format!(
            "positions and multiplicities must have equal length, got {} and {}",
            x.len(),
            a.len()
        )));
    }
    let ell = a.len();
    if ell == 0 {
        return Ok(Rational::one());
    }
    for mask in 1u64..(1 << ell) {
        let mut sum = Rational::zero();
        let mut positions = Vec::new();
        for (idx, ai) in a.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                sum += ai;
                positions.push(idx + 1);
            }
        }
        if sum.is_zero() {
            return Err(Error::ZeroSubsetSum { positions });
        }
    }
    let sign = if ell % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    let product_a: Rational = a.iter().product();
    let mut total = Rational::zero();
    for ms in enumerate_multispines(ell) {
        let mut beta = &sign * &product_a;
        for path in ms.paths() {
            let path_sum: Rational = path.iter().map(|&v| a[v - 1].clone()).sum();
            beta /= -path_sum;
        }
        let mut weight = Rational::one();
        for (i, j) in ms.edge_pairs() {
            let den = &x[j - 1] - &x[i - 1] + &a[i - 1];
            if den.is_zero() {
                return Err(Error::ZeroDenominator { from: i, to: j });
            }
            weight /= den;
        }
        total += beta * weight;
    }
    Ok(total)
}

/// Determinant of the Cauchy matrix `M_{ij} = 1 / (x_i − z_j)` in closed
/// form:
///
/// ```text
/// det M = ∏_{i<j} (x_i − x_j)(z_j − z_i)  /  ∏_{i,j} (x_i − z_j) .
/// ```
///
/// With `z_j = x_j − a_j` this ties into the interaction product:
/// `Θ(x; a) = (∏_j a_j) · det M`.
///
/// # Errors
///
/// * [`Error::InvalidInput`] on length mismatch.
/// * [`Error::ZeroPairDenominator`] if `x_i = z_j` for some pair (the
///   matrix entry is undefined).
pub fn cauchy_determinant(x: &[Rational], z: &[Rational]) -> Result<Rational> {
    if x.len() != z.len() {
        return Err(Error::InvalidInput(format!(
            "need equally many x and z values, got {} and {}",
            x.len(),
            z.len()
        )));
    }
    for (i, xi) in x.iter().enumerate() {
        for (j, zj) in z.iter().enumerate() {
            if xi == zj {
                return Err(Error::ZeroPairDenominator { i: i + 1, j: j + 1 });
            }
        }
    }
    let mut value = Rational::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            value *= (&x[i] - &x[j]) * (&z[j] - &z[i]);
        }
    }
    for xi in x {
        for zj in z {
            value /= xi - zj;
        }
    }
    Ok(value)
}

/// A partition of `{1, …, n}` into disjoint nonempty blocks, stored with
/// blocks ordered by their least element and elements ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// The blocks, ordered by least element.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

/// All set partitions of `{1, …, n}` via restricted growth strings; there
/// are Bell(n) of them (1, 1, 2, 5, 15, 52, …).
pub fn set_partitions(n: usize) -> Vec<SetPartition> {
    fn rec(n: usize, labels: &mut Vec<usize>, used: usize, out: &mut Vec<SetPartition>) {
        let idx = labels.len();
        if idx == n {
            let mut blocks = vec![Vec::new(); used];
            for (element0, &block) in labels.iter().enumerate() {
                blocks[block].push(element0 + 1);
            }
            out.push(SetPartition { blocks });
            return;
        }
        for block in 0..=used {
            labels.push(block);
            rec(n, labels, used.max(block + 1), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), 0, &mut out);
    out
}

/// Maps cumulants `(κ_1, …, κ_N)` to moments `(m_1, …, m_N)` via
/// `m_n = Σ_{π ⊢ {1..n}} ∏_{b ∈ π} κ_{|b|}`.
pub fn cumulants_to_moments(kappa: &[Rational]) -> Vec<Rational> {
    (1..=kappa.len())
        .map(|n| {
            set_partitions(n)
                .iter()
                .map(|pi| {
                    pi.blocks()
                        .iter()
                        .map(|b| kappa[b.len() - 1].clone())
                        .product::<Rational>()
                })
                .sum()
        })
        .collect()
}

/// Inverse of [`cumulants_to_moments`]: recovers `(κ_1, …, κ_N)` from
/// `(m_1, …, m_N)` by peeling off the partitions with more than one
/// block.
pub fn moments_to_cumulants(moments: &[Rational]) -> Vec<Rational> {
    let mut kappa: Vec<Rational> = Vec::with_capacity(moments.len());
    for n in 1..=moments.len() {
        let correction: Rational = set_partitions(n)
            .iter()
            .filter(|pi| pi.block_count() >= 2)
            .map(|pi| {
                pi.blocks()
                    .iter()
                    .map(|b| kappa[b.len() - 1].clone())
                    .product::<Rational>()
            })
            .sum();
        kappa.push(&moments[n - 1] - correction);
    }
    kappa
}

fn mass_of(measure: &TransitionMeasure, value: &Rational) -> Rational {
    measure
        .mass_at(value)
        .expect("decorations draw values from the atoms")
        .clone()
}

/// Signed decorated sum shared by the tree and caterpillar cumulant
/// formulas: `Σ_G Σ_x (−1)^{|B_G|−1} (∏_v μ(x_v)) f_G(x)`.
fn signed_decorated_sum(
    graphs: &[&ColoredDigraph],
    measure: &TransitionMeasure,
    u0: &Rational,
) -> Result<Rational> {
    let atoms = measure.atoms().to_vec();
    let mut total = Rational::zero();
    for graph in graphs {
        let sign = if graph.black_count() % 2 == 1 {
            Rational::one()
        } else {
            -Rational::one()
        };
        for values in decorations(graph, &atoms, u0) {
            let weight = eval_f(graph, &values)?;
            let mut term = &sign * weight;
            for v in &values {
                term *= mass_of(measure, v);
            }
            total += term;
        }
    }
    Ok(total)
}

/// The `n`-th cumulant of the insertion threshold at `u₀` by the
/// non-crossing alternating tree formula
///
/// ```text
/// κ_n = (n−1)! Σ_{T} Σ_{x ∈ D_T(u₀)} (−1)^{|B_T|−1}
///        ∏_v μ(x_v) / ∏_{(b→w) ∈ T} (x_w − x_b + w − b) .
/// ```
///
/// Every denominator is strictly positive on the decoration domain
/// (`x_w > u₀ ≥ x_b` and `w > b`), so this is defined for every profile.
///
/// # Panics
///
/// Panics if `order == 0`.
pub fn cumulant_tree_formula(
    profile: &InterlacingSequence,
    u0: &Rational,
    order: u32,
) -> Rational {
    assert!(order >= 1, "cumulants are indexed by order >= 1");
    let measure = profile.transition_measure();
    let trees = enumerate_nca_trees(order as usize);
    let refs: Vec<&ColoredDigraph> = trees.iter().collect();
    let sum = signed_decorated_sum(&refs, &measure, u0)
        .expect("tree denominators cannot vanish on the decoration domain");
    factorial_rat(u64::from(order) - 1) * sum
}

/// The `n`-th cumulant by the caterpillar formula: the same signed
/// decorated sum taken over the `2^{n−1}` caterpillars, whose red
/// vertices range over *all* atoms.
///
/// # Errors
///
/// [`Error::ZeroDenominator`] (naming the edge) if a red decoration makes
/// an edge factor vanish; this happens only for non-generic profiles,
/// e.g. unperturbed integer diagrams.
///
/// # Panics
///
/// Panics if `order == 0`.
pub fn cumulant_caterpillar_formula(
    profile: &InterlacingSequence,
    u0: &Rational,
    order: u32,
) -> Result<Rational> {
    assert!(order >= 1, "cumulants are indexed by order >= 1");
    let measure = profile.transition_measure();
    let caterpillars = enumerate_caterpillars(order as usize);
    let refs: Vec<&ColoredDigraph> = caterpillars.iter().map(|c| c.graph()).collect();
    Ok(factorial_rat(u64::from(order) - 1) * signed_decorated_sum(&refs, &measure, u0)?)
}

/// Requires that no two concave corners differ by an integer.
fn require_generic(profile: &InterlacingSequence) -> Result<()> {
    let corners = profile.concave();
    for (i, a) in corners.iter().enumerate() {
        for b in &corners[i + 1..] {
            if is_integer(&(a - b)) {
                return Err(Error::NonGenericProfile {
                    a: a.clone(),
                    b: b.clone(),
                });
            }
        }
    }
    Ok(())
}

/// The `n`-th moment of the insertion threshold for a *generic* profile,
/// by the interlacing moment sum
///
/// ```text
/// M_n = n! Σ_{a ⊨ n} Σ_{x_1 > … > x_ℓ small}
///        Θ(x; a) ∏_i (−1)^{a_i−1}/a_i · μ(x_i) · G^{↓(a_i−1)}(x_i − 1) ,
/// ```
///
/// where `a` runs over compositions of `n` and `x` over strictly
/// decreasing tuples of small atoms.
///
/// # Errors
///
/// [`Error::NonGenericProfile`] if two concave corners differ by an
/// integer (the sum is ill-defined there; perturb first — see
/// [`regularized_moment_limit_check`]).
///
/// # Panics
///
/// Panics if `order == 0`.
pub fn moment_interlacing(
    profile: &InterlacingSequence,
    u0: &Rational,
    order: u32,
) -> Result<Rational> {
    assert!(order >= 1, "moments are indexed by order >= 1");
    require_generic(profile)?;
    let measure = profile.transition_measure();
    let small: Vec<Rational> = measure
        .atoms()
        .iter()
        .filter(|x| *x <= u0)
        .cloned()
        .collect();
    let mut total = Rational::zero();
    for a in compositions_of(order) {
        let ell = a.len();
        if ell == 0 || ell > small.len() {
            continue;
        }
        let aq: Vec<Rational> = a.iter().map(|&v| int(i64::from(v))).collect();
        // Strictly decreasing tuples of distinct atoms = reversed
        // combinations.
        let mut stack = vec![Vec::<Rational>::new()];
        while let Some(tuple) = stack.pop() {
            if tuple.len() == ell {
                let mut term = theta(&tuple, &aq)?;
                for (xi, &ai) in tuple.iter().zip(&a) {
                    let sign = if ai % 2 == 1 { 1 } else { -1 };
                    term *= rat(sign, i64::from(ai));
                    term *= mass_of(&measure, xi);
                    term *= profile.falling_cauchy(&(xi - Rational::one()), ai - 1)?;
                }
                total += term;
                continue;
            }
            for candidate in &small {
                if tuple.last().map_or(true, |prev| candidate < prev) {
                    let mut next = tuple.clone();
                    next.push(candidate.clone());
                    stack.push(next);
                }
            }
        }
    }
    Ok(factorial_rat(u64::from(order)) * total)
}

/// Outcome of comparing the interlacing moment sum on perturbed profiles
/// against the exact moment oracle as the perturbation shrinks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularizationReport {
    /// The perturbation sizes, in the order given.
    pub epsilons: Vec<Rational>,
    /// The interlacing moment sum on each perturbed profile.
    pub values: Vec<Rational>,
    /// Absolute gaps `|value − oracle|`.
    pub gaps: Vec<Rational>,
    /// The exact moment of the unperturbed diagram.
    pub oracle: Rational,
    /// Whether the gaps strictly decrease along the sequence.
    pub gaps_strictly_decrease: bool,
    /// Last gap divided by `|oracle|` (or the last gap itself if the
    /// oracle is zero).
    pub final_relative_gap: Rational,
}

/// Perturbs the profile of `shape` by each `ε`, evaluates the interlacing
/// moment sum there, and reports convergence toward the exact moment
/// (`moment_oracle`) of the unperturbed diagram.
///
/// # Errors
///
/// * [`Error::IntegerPoint`] if `u₀` is an integer (the limit statement
///   requires a non-integer cutoff).
/// * [`Error::InvalidInput`] if `epsilons` is empty, non-positive, or not
///   strictly decreasing.
/// * Any error from perturbation or the moment sum itself.
///
/// # Panics
///
/// Panics if `order == 0`.
pub fn regularized_moment_limit_check(
    shape: &YoungDiagram,
    u0: &Rational,
    order: u32,
    epsilons: &[Rational],
) -> Result<RegularizationReport> {
    assert!(order >= 1, "moments are indexed by order >= 1");
    if is_integer(u0) {
        return Err(Error::IntegerPoint { u0: u0.clone() });
    }
    if epsilons.is_empty() {
        return Err(Error::InvalidInput("need at least one perturbation size".into()));
    }
    if epsilons.iter().any(|e| !e.is_positive()) {
        return Err(Error::InvalidInput("perturbation sizes must be positive".into()));
    }
    if epsilons.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidInput(
            "perturbation sizes must strictly decrease".into(),
        ));
    }
    let oracle = moment_oracle(shape, u0, order);
    let profile = shape.profile();
    let mut values = Vec::with_capacity(epsilons.len());
    let mut gaps = Vec::with_capacity(epsilons.len());
    for eps in epsilons {
        let perturbed = profile.perturb(eps)?;
        let value = moment_interlacing(&perturbed, u0, order)?;
        gaps.push((&value - &oracle).abs());
        values.push(value);
    }
    let gaps_strictly_decrease = gaps.windows(2).all(|w| w[0] > w[1]);
    let last = gaps.last().expect("nonempty").clone();
    let final_relative_gap = if oracle.is_zero() {
        last
    } else {
        last / oracle.abs()
    };
    Ok(RegularizationReport {
        epsilons: epsilons.to_vec(),
        values,
        gaps,
        oracle,
        gaps_strictly_decrease,
        final_relative_gap,
    })
}

/// Result of checking the a priori cumulant bound
/// `|κ_n| ≤ (n−1)! · G⁺(u₀)^{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    /// The exact cumulant `κ_n` (tree formula).
    pub cumulant: Rational,
    /// The bound `(n−1)! · G⁺(u₀)^{n−1}`.
    pub bound: Rational,
    /// Whether `|κ_n| ≤ bound`.
    pub holds: bool,
}

/// Evaluates the cumulant and its a priori bound at `u₀`.
///
/// # Panics
///
/// Panics if `order == 0`.
pub fn cumulant_bound_check(
    profile: &InterlacingSequence,
    u0: &Rational,
    order: u32,
) -> BoundCheck {
    assert!(order >= 1, "cumulants are indexed by order >= 1");
    let cumulant = cumulant_tree_formula(profile, u0, order);
    let g_plus = profile.g_plus(u0);
    let mut bound = factorial_rat(u64::from(order) - 1);
    for _ in 1..order {
        bound *= &g_plus;
    }
    BoundCheck {
        holds: cumulant.abs() <= bound,
        cumulant,
        bound,
    }
}

/// Membership of the point `x` in the decoration domain of `graph`:
/// black coordinates must be `≤ u₀`, white coordinates `> u₀`, red
/// coordinates are unrestricted.
fn in_domain(graph: &ColoredDigraph, x: &[Rational], u0: &Rational) -> bool {
    x.iter().enumerate().all(|(v0, value)| match graph.color(v0 + 1) {
        Color::Black => value <= u0,
        Color::White => value > u0,
        Color::Red => true,
    })
}

/// The signed tree-sum kernel at an arbitrary point `x ∈ ℚ^n`:
///
/// ```text
/// 𝔗_n(x) = Σ_{T : x ∈ D_T(u₀)} (−1)^{|B_T|} f_T(x) ,
/// ```
///
/// so that `κ_n = −(n−1)! Σ_x 𝔗_n(x) ∏ μ(x_i)` and
/// `Z = −(n−1)! 𝔗_n(X)` is an unbiased estimator of `κ_n` when
/// `X_1, …, X_n` are drawn i.i.d. from the transition measure.
/// For `n = 1` this is `−1` if `x_1 ≤ u₀` and `0` otherwise; it vanishes
/// whenever `x_n ≤ u₀` fails to put any tree in its domain.
///
/// Tree denominators are strictly positive on their domains, so this is
/// total.  [`frak_t_with_trees`] avoids re-enumerating trees in hot
/// loops.
pub fn frak_t(x: &[Rational], u0: &Rational) -> Rational {
    frak_t_with_trees(&enumerate_nca_trees(x.len()), x, u0)
}

/// [`frak_t`] with the tree list supplied by the caller (it must be
/// `enumerate_nca_trees(x.len())`).
pub fn frak_t_with_trees(
    trees: &[ColoredDigraph],
    x: &[Rational],
    u0: &Rational,
) -> Rational {
    let mut total = Rational::zero();
    for tree in trees {
        if !in_domain(tree, x, u0) {
            continue;
        }
        let weight = eval_f(tree, x)
            .expect("tree denominators cannot vanish on the decoration domain");
        if tree.black_count() % 2 == 1 {
            total -= weight;
        } else {
            total += weight;
        }
    }
    total
}

/// The caterpillar analogue of [`frak_t`]:
/// `𝔠_n(x) = Σ_{C : x ∈ D_C(u₀)} (−1)^{|B_C|} f_C(x)`, summed over
/// caterpillars.  Red vertices are unrestricted, so a denominator can
/// vanish at special points.
///
/// # Errors
///
/// [`Error::ZeroDenominator`] naming the offending edge.
pub fn frak_c(x: &[Rational], u0: &Rational) -> Result<Rational> {
    let mut total = Rational::zero();
    for caterpillar in enumerate_caterpillars(x.len()) {
        let graph = caterpillar.graph();
        if !in_domain(graph, x, u0) {
            continue;
        }
        let weight = eval_f(graph, x)?;
        if graph.black_count() % 2 == 1 {
            total -= weight;
        } else {
            total += weight;
        }
    }
    Ok(total)
}

/// Exact threshold statistics of a diagram at a cutoff: cumulants,
/// moments, a priori bounds, and optionally the independent oracle
/// moments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CumulantReport {
    /// Row lengths of the diagram.
    pub shape: Vec<usize>,
    /// The cutoff `u₀`.
    pub u0: Rational,
    /// Highest order computed.
    pub order: u32,
    /// `κ_1, …, κ_order` (tree formula).
    pub cumulants: Vec<Rational>,
    /// `m_1, …, m_order` (from the cumulants via set partitions).
    pub moments: Vec<Rational>,
    /// `(n−1)! · G⁺(u₀)^{n−1}` for `n = 1, …, order`.
    pub bounds: Vec<Rational>,
    /// Independent growth-path moments, if requested.
    pub oracle_moments: Option<Vec<Rational>>,
}

impl CumulantReport {
    /// Serializes to JSON with all rationals as exact strings.
    pub fn to_json(&self) -> serde_json::Value {
        let strings = |v: &[Rational]| -> Vec<String> { v.iter().map(format_rational).collect() };
        let dto = CumulantReportJson {
            shape: self.shape.clone(),
            u0: format_rational(&self.u0),
            order: self.order,
            cumulants: strings(&self.cumulants),
            moments: strings(&self.moments),
            bounds: strings(&self.bounds),
            oracle_moments: self.oracle_moments.as_deref().map(strings),
        };
        serde_json::to_value(dto).expect("report serialization cannot fail")
    }

    /// Parses the JSON produced by [`Self::to_json`].
    ///
    /// # Errors
    ///
    /// [`Error::InvalidInput`] for malformed JSON or unparsable rationals.
    pub fn from_json(json: &str) -> Result<Self> {
        let dto: CumulantReportJson = serde_json::from_str(json)
            .map_err(|e| Error::InvalidInput(format!("malformed report JSON: {e}")))?;
        let rationals = |v: &[String]| -> Result<Vec<Rational>> {
            v.iter().map(|s| parse_rational(s)).collect()
        };
        Ok(Self {
            shape: dto.shape,
            u0: parse_rational(&dto.u0)?,
            order: dto.order,
            cumulants: rationals(&dto.cumulants)?,
            moments: rationals(&dto.moments)?,
            bounds: rationals(&dto.bounds)?,
            oracle_moments: dto.oracle_moments.as_deref().map(rationals).transpose()?,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct CumulantReportJson {
    shape: Vec<usize>,
    u0: String,
    order: u32,
    cumulants: Vec<String>,
    moments: Vec<String>,
    bounds: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_moments: Option<Vec<String>>,
}

/// One disagreement found by [`verify_tree_formula_sweep`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepMismatch {
    /// Row lengths of the diagram.
    pub shape: Vec<usize>,
    /// The cutoff where the values disagree.
    pub u0: Rational,
    /// The moment order.
    pub order: u32,
    /// Moment derived from the tree-formula cumulants.
    pub from_cumulants: Rational,
    /// Moment from the growth-path oracle.
    pub oracle: Rational,
}

/// Outcome of a [`verify_tree_formula_sweep`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    /// Diagrams swept (the empty diagram included).
    pub shapes: usize,
    /// `(shape, u₀)` pairs evaluated.
    pub points: usize,
    /// `(shape, u₀, order)` comparisons made.
    pub checks: usize,
    /// Every comparison that failed (empty on success).
    pub mismatches: Vec<SweepMismatch>,
}

impl SweepReport {
    /// Whether every comparison agreed.
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Serializes to JSON with all rationals as exact strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "shapes": self.shapes,
            "points": self.points,
            "checks": self.checks,
            "ok": self.is_ok(),
            "mismatches": self
                .mismatches
                .iter()
                .map(|m| {
                    serde_json::json!({
                        "shape": m.shape,
                        "u0": format_rational(&m.u0),
                        "order": m.order,
                        "from_cumulants": format_rational(&m.from_cumulants),
                        "oracle": format_rational(&m.oracle),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

/// Cross-checks the tree formula against the growth-path oracle: for
/// every diagram with at most `max_boxes` boxes and every half-integer
/// cutoff spanning `[min corner − 1/2, max corner + 1/2]`, the moments
/// assembled from `κ_1..κ_{max_order}` (via set partitions) must equal
/// the oracle moments exactly.  Shapes are processed in parallel.
///
/// # Panics
///
/// Panics if `max_order == 0`.
pub fn verify_tree_formula_sweep(max_boxes: usize, max_order: u32) -> SweepReport {
    use rayon::prelude::*;

    assert!(max_order >= 1, "need at least order 1");
    let shapes = partitions_up_to(max_boxes);
    let per_shape: Vec<(usize, Vec<SweepMismatch>)> = shapes
        .par_iter()
        .map(|d| {
            let profile = d.profile();
            let corners = profile.concave();
            let half = rat(1, 2);
            let mut u0 = corners.first().expect("profiles have a corner") - &half;
            let hi = corners.last().expect("profiles have a corner") + &half;
            let mut points = 0;
            let mut mismatches = Vec::new();
            while u0 <= hi {
                points += 1;
                let kappa: Vec<Rational> = (1..=max_order)
                    .map(|n| cumulant_tree_formula(&profile, &u0, n))
                    .collect();
                let moments = cumulants_to_moments(&kappa);
                for order in 1..=max_order {
                    let oracle = moment_oracle(d, &u0, order);
                    if moments[order as usize - 1] != oracle {
                        mismatches.push(SweepMismatch {
                            shape: d.rows().to_vec(),
                            u0: u0.clone(),
                            order,
                            from_cumulants: moments[order as usize - 1].clone(),
                            oracle,
                        });
                    }
                }
                u0 += Rational::one();
            }
            (points, mismatches)
        })
        .collect();
    let points: usize = per_shape.iter().map(|(p, _)| p).sum();
    SweepReport {
        shapes: shapes.len(),
        points,
        checks: points * max_order as usize,
        mismatches: per_shape.into_iter().flat_map(|(_, m)| m).collect(),
    }
}

/// Computes the full exact report for `shape` at `u₀` up to `order`.
///
/// # Panics
///
/// Panics if `order == 0`.
pub fn cumulant_report(
    shape: &YoungDiagram,
    u0: &Rational,
    order: u32,
    with_oracle: bool,
) -> CumulantReport {
    assert!(order >= 1, "reports need order >= 1");
    let profile = shape.profile();
    let cumulants: Vec<Rational> = (1..=order)
        .map(|n| cumulant_tree_formula(&profile, u0, n))
        .collect();
    let moments = cumulants_to_moments(&cumulants);
    let bounds = (1..=order)
        .map(|n| cumulant_bound_check(&profile, u0, n).bound)
        .collect();
    let oracle_moments = with_oracle
        .then(|| (1..=order).map(|n| moment_oracle(shape, u0, n)).collect());
    CumulantReport {
        shape: shape.rows().to_vec(),
        u0: u0.clone(),
        order,
        cumulants,
        moments,
        bounds,
        oracle_moments,
    }
}
