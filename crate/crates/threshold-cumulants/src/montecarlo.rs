//! Reproducible Monte Carlo verification of the exact formulas.
//!
//! Sampling follows a fixed chunking discipline: the work is split into
//! chunks of [`CHUNK_SIZE`] samples, chunk `c` draws from its own
//! [`RngStream`] with stream index `c`, and chunks are written back in
//! index order.  The resulting sample sequence — and therefore every
//! statistic derived from it — is bit-identical for a given seed
//! regardless of how many worker threads participate.
//!
//! The estimators provided here are
//!
//! * [`estimate_threshold`]: samples insertion thresholds `F_T(u₀)` of
//!   uniformly random tableaux and summarizes them with unbiased
//!   cumulant estimators (k-statistics),
//! * [`estimate_z`]: the unbiased single-point estimator
//!   `Z = −(n−1)! 𝔗_n(X)` of the `n`-th cumulant, with `X` drawn i.i.d.
//!   from the transition measure (see [`crate::cumulants::frak_t`]),
//! * [`rectangle_experiment`]: fluctuations of the last first-row entry
//!   of a `p × q` tableau around its mean `q/(p+q)`, rescaled by
//!   `(pq)^{1/4}`, whose distribution approaches a centered Gaussian
//!   with variance `[α(1−α)]^{3/2}`, `α = q/(p+q)`.
//!
//! Uniform standard Young tableaux come from the hook-walk sampler
//! ([`sample_syt`]); uniform real-valued tableaux follow by placing
//! sorted i.i.d. uniforms into the sampled tableau's label positions
//! ([`sample_poissonized`]).

use num::BigInt;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cumulants::frak_t_with_trees;
use crate::diagram::{partitions_up_to, YoungDiagram};
use crate::graphs::enumerate_nca_trees;
use crate::rational::{factorial_rat, to_f64, Rational};
use crate::tableau::{PoissonizedTableau, StandardTableau};

/// Number of samples drawn from each RNG stream; also the batch length
/// for batch-mean standard errors.
pub const CHUNK_SIZE: usize = 1000;

/// A deterministic random stream: draws are a pure function of
/// `(seed, stream, draw index)`.
///
/// Chunk `c` of every sampler uses stream `c`, which is what makes the
/// overall sample sequence independent of the number of worker threads.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
}

impl RngStream {
    /// Opens stream `stream` of the generator seeded with `seed`.
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest);
    }
}

/// Runs `total` evaluations of `draw` split into [`CHUNK_SIZE`] chunks,
/// chunk `c` on stream `c`, in parallel, and concatenates the results in
/// chunk order.
fn sample_chunked<T, F>(total: usize, seed: u64, draw: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut RngStream) -> T + Sync,
{
    let chunks = total.div_ceil(CHUNK_SIZE);
    let per_chunk: Vec<Vec<T>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = RngStream::new(seed, c as u64);
            let count = CHUNK_SIZE.min(total - c * CHUNK_SIZE);
            (0..count).map(|_| draw(&mut rng)).collect()
        })
        .collect();
    per_chunk.into_iter().flatten().collect()
}

/// Draws a uniformly random standard Young tableau of shape `shape` by
/// the hook-walk method: repeatedly start at a uniform box of the
/// current diagram, walk to a uniform box of the current box's hook
/// (strictly right in its row or strictly below in its column) until a
/// removable corner is reached, label it with the largest unused label,
/// and remove it.
///
/// # Panics
///
/// Panics if `shape` is empty.
pub fn sample_syt(shape: &YoungDiagram, rng: &mut RngStream) -> StandardTableau {
    assert!(!shape.is_empty(), "cannot sample a tableau with no boxes");
    let mut rows: Vec<usize> = shape.rows().to_vec();
    let mut labels: Vec<Vec<usize>> = rows.iter().map(|&len| vec![0; len]).collect();
    for label in (1..=shape.size()).rev() {
        let remaining: usize = rows.iter().sum();
        let mut pick = rng.random_range(0..remaining);
        let mut r = 0;
        while pick >= rows[r] {
            pick -= rows[r];
            r += 1;
        }
        let mut c = pick;
        loop {
            let arm = rows[r] - c - 1;
            let leg = rows[r + 1..].iter().filter(|&&len| len > c).count();
            if arm + leg == 0 {
                break;
            }
            let jump = rng.random_range(0..arm + leg);
            if jump < arm {
                c += jump + 1;
            } else {
                r += jump - arm + 1;
            }
        }
        labels[r][c] = label;
        rows[r] -= 1;
    }
    StandardTableau::new(labels).expect("hook walks end at removable corners")
}

/// Draws a uniformly random tableau of shape `shape` with entries in
/// `[0, 1]`: sample a uniform standard tableau, draw `n` distinct
/// uniforms (64-bit dyadic rationals, redrawn wholesale in the
/// probability-zero event of a collision), sort them, and place the
/// `i`-th smallest where the standard tableau holds label `i`.
///
/// # Panics
///
/// Panics if `shape` is empty.
pub fn sample_poissonized(shape: &YoungDiagram, rng: &mut RngStream) -> PoissonizedTableau {
    let syt = sample_syt(shape, rng);
    let n = shape.size();
    let denominator = BigInt::from(1u128 << 64);
    let mut draws: Vec<u64> = Vec::new();
    loop {
        draws.clear();
        draws.extend((0..n).map(|_| rng.next_u64()));
        draws.sort_unstable();
        if draws.windows(2).all(|w| w[0] != w[1]) {
            break;
        }
    }
    let values: Vec<Rational> = draws
        .iter()
        .map(|&d| Rational::new(BigInt::from(d), denominator.clone()))
        .collect();
    let rows: Vec<Vec<Rational>> = syt
        .rows()
        .iter()
        .map(|row| row.iter().map(|&label| values[label - 1].clone()).collect())
        .collect();
    PoissonizedTableau::new(rows).expect("sorted distinct entries in standard positions are valid")
}

/// `total` independent uniform tableaux of shape `shape`, in the
/// deterministic chunk order.
///
/// # Panics
///
/// Panics if `shape` is empty.
pub fn poissonized_samples(
    shape: &YoungDiagram,
    total: usize,
    seed: u64,
) -> Vec<PoissonizedTableau> {
    sample_chunked(total, seed, |rng| sample_poissonized(shape, rng))
}

/// `total` exact threshold values `F_T(u₀)` of independent uniform
/// tableaux of shape `shape`, in the deterministic chunk order.
///
/// # Panics
///
/// Panics if `shape` is empty.
pub fn threshold_samples(
    shape: &YoungDiagram,
    u0: &Rational,
    total: usize,
    seed: u64,
) -> Vec<Rational> {
    sample_chunked(total, seed, |rng| {
        sample_poissonized(shape, rng).threshold(u0)
    })
}

/// Samples `F_T(u₀)` for `total` uniform tableaux of shape `shape` and
/// summarizes the results; the k-statistics estimate the exact cumulants
/// ([`crate::cumulants::cumulant_tree_formula`]).
///
/// # Panics
///
/// Panics if `shape` is empty or `total < 2`.
pub fn estimate_threshold(
    shape: &YoungDiagram,
    u0: &Rational,
    total: usize,
    seed: u64,
) -> SampleSummary {
    let values: Vec<f64> = threshold_samples(shape, u0, total, seed)
        .iter()
        .map(to_f64)
        .collect();
    summarize(&values)
}

/// `total` exact draws of the unbiased cumulant estimator
/// `Z = −(order−1)! 𝔗_order(X)` with `X₁, …, X_order` i.i.d. from the
/// transition measure of `shape`, in the deterministic chunk order.
///
/// # Panics
///
/// Panics if `order == 0`.
pub fn z_samples(
    shape: &YoungDiagram,
    u0: &Rational,
    order: u32,
    total: usize,
    seed: u64,
) -> Vec<Rational> {
    assert!(order >= 1, "cumulants are indexed by order >= 1");
    let measure = shape.profile().transition_measure();
    let atoms = measure.atoms().to_vec();
    let cumulative = measure.cumulative();
    let trees = enumerate_nca_trees(order as usize);
    let scale = -factorial_rat(u64::from(order) - 1);
    let denominator = BigInt::from(1u128 << 64);
    sample_chunked(total, seed, |rng| {
        let point: Vec<Rational> = (0..order)
            .map(|_| {
                let t = Rational::new(BigInt::from(rng.next_u64()), denominator.clone());
                let index = cumulative.partition_point(|c| *c <= t);
                atoms[index].clone()
            })
            .collect();
        &scale * frak_t_with_trees(&trees, &point, u0)
    })
}

/// Monte Carlo estimate of the `order`-th cumulant via the single-point
/// estimator `Z`; the summary's mean estimates `κ_order`.
///
/// # Panics
///
/// Panics if `order == 0` or `total < 2`.
pub fn estimate_z(
    shape: &YoungDiagram,
    u0: &Rational,
    order: u32,
    total: usize,
    seed: u64,
) -> SampleSummary {
    let values: Vec<f64> = z_samples(shape, u0, order, total, seed)
        .iter()
        .map(to_f64)
        .collect();
    summarize(&values)
}

/// Result of the rectangular corner-fluctuation experiment.
#[derive(Debug, Clone)]
pub struct RectangleExperiment {
    /// The rescaled fluctuations `Y = (pq)^{1/4} (corner − q/(p+q))`,
    /// one per sample, in the deterministic chunk order.
    pub y_samples: Vec<f64>,
    /// Summary statistics of `y_samples`.
    pub summary: SampleSummary,
    /// The limiting variance `[α(1−α)]^{3/2}` with `α = q/(p+q)`.
    pub sigma_alpha_squared: f64,
    /// Exact mean of the corner entry: `q/(p+q)`.
    pub corner_mean: Rational,
    /// Exact variance of the corner entry: `pq/((p+q)²(p+q+1))`.
    pub corner_variance: Rational,
}

/// Samples the last first-row entry of uniform `p × q` tableaux and
/// summarizes the rescaled fluctuation `Y = (pq)^{1/4}(corner − q/(p+q))`.
/// At large `p, q` with `α = q/(p+q)` fixed, `Y` approaches a centered
/// Gaussian with variance `[α(1−α)]^{3/2}`; at finite size its exact
/// mean is 0 and its exact variance is `√(pq) · pq/((p+q)²(p+q+1))`.
///
/// # Panics
///
/// Panics if `p` or `q` is zero, or `total < 2`.
pub fn rectangle_experiment(p: usize, q: usize, total: usize, seed: u64) -> RectangleExperiment {
    assert!(p >= 1 && q >= 1, "the rectangle must have positive sides");
    let shape = YoungDiagram::new(vec![q; p]).expect("rectangles are valid diagrams");
    let s = (p + q) as i64;
    let corner_mean = Rational::new(BigInt::from(q), BigInt::from(s));
    let corner_variance = Rational::new(
        BigInt::from((q * p) as i64),
        BigInt::from(s * s * (s + 1)),
    );
    let scale = ((p * q) as f64).powf(0.25);
    let y_samples: Vec<f64> = sample_chunked(total, seed, |rng| {
        let tableau = sample_poissonized(&shape, rng);
        let corner = &tableau.rows()[0][q - 1];
        scale * to_f64(&(corner - &corner_mean))
    });
    let summary = summarize(&y_samples);
    let alpha = to_f64(&corner_mean);
    RectangleExperiment {
        summary,
        sigma_alpha_squared: (alpha * (1.0 - alpha)).powf(1.5),
        corner_mean,
        corner_variance,
        y_samples,
    }
}

/// Summary statistics of a sample: central moments, unbiased cumulant
/// estimators `k₁..k₄` (k-statistics), and their standard errors.
///
/// Standard errors are batch-means estimates: the sample is cut into its
/// [`CHUNK_SIZE`]-long chunks, each k-statistic is recomputed per chunk,
/// and the error is the standard deviation of the chunk values divided
/// by `√(number of chunks)`.  With fewer than two full chunks,
/// normal-theory approximations are used instead.  Statistics that need
/// more data than provided (`k₃` with n < 3, `k₄` with n < 4) are NaN,
/// which serializes to `null`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleSummary {
    /// Number of samples.
    pub count: usize,
    /// Sample mean (= k₁).
    pub mean: f64,
    /// Unbiased sample variance (= k₂).
    pub variance: f64,
    /// Moment skewness `m₃ / m₂^{3/2}`.
    pub skewness: f64,
    /// Excess kurtosis `m₄ / m₂² − 3`.
    pub excess_kurtosis: f64,
    /// Unbiased cumulant estimators `k₁, k₂, k₃, k₄`.
    pub k_statistics: Vec<f64>,
    /// Standard errors of `k₁, k₂, k₃, k₄`.
    pub standard_errors: Vec<f64>,
}

fn k_statistics(values: &[f64]) -> [f64; 4] {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for v in values {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    let k2 = if values.len() >= 2 {
        m2 * n / (n - 1.0)
    } else {
        f64::NAN
    };
    let k3 = if values.len() >= 3 {
        m3 * n * n / ((n - 1.0) * (n - 2.0))
    } else {
        f64::NAN
    };
    let k4 = if values.len() >= 4 {
        n * n * ((n + 1.0) * m4 - 3.0 * (n - 1.0) * m2 * m2)
            / ((n - 1.0) * (n - 2.0) * (n - 3.0))
    } else {
        f64::NAN
    };
    [mean, k2, k3, k4]
}

/// Computes the [`SampleSummary`] of `values` (order-sensitive only in
/// the last floating-point bits; the samplers fix the order).
///
/// # Panics
///
/// Panics if fewer than two values are given.
pub fn summarize(values: &[f64]) -> SampleSummary {
    assert!(values.len() >= 2, "summaries need at least two samples");
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for v in values {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    let ks = k_statistics(values);
    let fully_chunked = values.len() / CHUNK_SIZE;
    let standard_errors = if fully_chunked >= 2 {
        let batches: Vec<[f64; 4]> = (0..fully_chunked)
            .map(|b| k_statistics(&values[b * CHUNK_SIZE..(b + 1) * CHUNK_SIZE]))
            .collect();
        let b = fully_chunked as f64;
        (0..4)
            .map(|j| {
                let avg = batches.iter().map(|k| k[j]).sum::<f64>() / b;
                let var = batches.iter().map(|k| (k[j] - avg).powi(2)).sum::<f64>() / (b - 1.0);
                (var / b).sqrt()
            })
            .collect()
    } else {
        // Normal-theory approximations, for small samples only.
        let k2 = ks[1];
        vec![
            (k2 / n).sqrt(),
            k2 * (2.0 / (n - 1.0)).sqrt(),
            (6.0 * k2.powi(3) / n).sqrt(),
            (24.0 * k2.powi(4) / n).sqrt(),
        ]
    };
    SampleSummary {
        count: values.len(),
        mean,
        variance: ks[1],
        skewness: m3 / m2.powf(1.5),
        excess_kurtosis: m4 / (m2 * m2) - 3.0,
        k_statistics: ks.to_vec(),
        standard_errors,
    }
}

/// Kolmogorov–Smirnov statistic `sup_x |F̂(x) − x|` of a sample against
/// the uniform distribution on `[0, 1]`.  The 1% critical value is
/// approximately `1.6276 / √n`.
pub fn ks_statistic_uniform(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("samples are not NaN"));
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let upper = (i as f64 + 1.0) / n - v;
            let lower = v - i as f64 / n;
            upper.max(lower)
        })
        .fold(0.0, f64::max)
}

/// A uniformly random nonempty diagram with at most `max_boxes` boxes
/// (uniform over diagrams, not over boxes).
///
/// # Panics
///
/// Panics if `max_boxes == 0`.
pub fn random_diagram(max_boxes: usize, rng: &mut RngStream) -> YoungDiagram {
    assert!(max_boxes >= 1, "need at least one box");
    let pool: Vec<YoungDiagram> = partitions_up_to(max_boxes)
        .into_iter()
        .filter(|d| !d.is_empty())
        .collect();
    pool[rng.random_range(0..pool.len())].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cumulants::cumulant_tree_formula;
    use crate::rational::{int, rat};

    fn diagram(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let mut a = RngStream::new(42, 0);
        let mut b = RngStream::new(42, 0);
        let draws_a: Vec<u64> = (0..5).map(|_| a.next_u64()).collect();
        let draws_b: Vec<u64> = (0..5).map(|_| b.next_u64()).collect();
        assert_eq!(draws_a, draws_b);
        let mut c = RngStream::new(42, 1);
        assert_ne!(draws_a, (0..5).map(|_| c.next_u64()).collect::<Vec<u64>>());
        let mut d = RngStream::new(43, 0);
        assert_ne!(draws_a, (0..5).map(|_| d.next_u64()).collect::<Vec<u64>>());
    }

    #[test]
    fn chunking_pins_every_sample_to_its_stream() {
        let shape = diagram(&[2, 1]);
        let u0 = rat(1, 2);
        let samples = threshold_samples(&shape, &u0, 2500, 7);
        assert_eq!(samples.len(), 2500);
        // Chunk 2 holds samples 2000..2500 and draws from stream 2.
        let mut rng = RngStream::new(7, 2);
        let expected = sample_poissonized(&shape, &mut rng).threshold(&u0);
        assert_eq!(samples[2000], expected);
        // Runs are reproducible.
        assert_eq!(samples, threshold_samples(&shape, &u0, 2500, 7));
    }

    #[test]
    fn single_box_tableaux_are_single_uniforms() {
        let shape = diagram(&[1]);
        let mut rng = RngStream::new(1, 0);
        let syt = sample_syt(&shape, &mut rng);
        assert_eq!(syt.rows(), &[vec![1]]);
        let t = sample_poissonized(&shape, &mut rng);
        assert_eq!(t.rows().len(), 1);
        assert_eq!(t.rows()[0].len(), 1);
    }

    #[test]
    fn hook_walk_is_uniform_on_two_tableau_shapes() {
        // (2,1) and (2,2) each have exactly two standard tableaux; both
        // should appear with frequency 1/2 up to 3σ over 10⁵ draws.
        for rows in [vec![2usize, 1], vec![2, 2]] {
            let shape = diagram(&rows);
            let mut rng = RngStream::new(5, 0);
            let total = 100_000;
            let mut first = 0usize;
            for _ in 0..total {
                let syt = sample_syt(&shape, &mut rng);
                assert_eq!(syt.shape(), shape);
                if syt.rows()[0][1] == 2 {
                    first += 1;
                }
            }
            let freq = first as f64 / total as f64;
            let sigma = (0.25 / total as f64).sqrt();
            assert!(
                (freq - 0.5).abs() < 3.0 * sigma,
                "shape {shape}: frequency {freq}"
            );
        }
    }

    #[test]
    fn poissonized_samples_are_valid_and_uniformly_ranked() {
        let shape = diagram(&[3, 2, 1]);
        let mut rng = RngStream::new(9, 0);
        for _ in 0..50 {
            let t = sample_poissonized(&shape, &mut rng);
            assert_eq!(t.shape(), shape);
            // Revalidation exercises the full constraint set.
            assert!(PoissonizedTableau::new(t.rows().to_vec()).is_ok());
        }
    }

    #[test]
    fn two_box_row_first_entry_estimates_min_of_two_uniforms() {
        // First entry of a (2) tableau is min(U₁, U₂); E = 1/3.
        let shape = diagram(&[2]);
        let total = 20_000;
        let values: Vec<f64> = sample_chunked(total, 11, |rng| {
            to_f64(&sample_poissonized(&shape, rng).rows()[0][0])
        });
        let mean = values.iter().sum::<f64>() / total as f64;
        // Var(min) = 1/18.
        let se = (1.0 / 18.0 / total as f64).sqrt();
        assert!((mean - 1.0 / 3.0).abs() < 4.0 * se, "mean {mean}");
    }

    #[test]
    fn threshold_summary_matches_uniform_law() {
        let summary = estimate_threshold(&diagram(&[1]), &int(0), 10_000, 3);
        assert_eq!(summary.count, 10_000);
        assert!((summary.mean - 0.5).abs() < 4.0 * summary.standard_errors[0]);
        assert!(
            (summary.variance - 1.0 / 12.0).abs() < 4.0 * summary.standard_errors[1],
            "variance {}",
            summary.variance
        );
    }

    #[test]
    fn threshold_distribution_of_single_box_is_uniform() {
        let values: Vec<f64> = threshold_samples(&diagram(&[1]), &int(0), 10_000, 13)
            .iter()
            .map(to_f64)
            .collect();
        let d = ks_statistic_uniform(&values);
        let critical = 1.6276 / (values.len() as f64).sqrt();
        assert!(d < critical, "KS statistic {d} vs critical {critical}");
    }

    #[test]
    fn z_estimator_is_an_indicator_at_order_one() {
        // Z = 1{x₁ ≤ u₀} at order 1; its mean estimates κ₁.
        let shape = diagram(&[2, 1]);
        let u0 = rat(1, 2);
        let samples = z_samples(&shape, &u0, 1, 3000, 17);
        assert!(samples.iter().all(|z| *z == int(0) || *z == int(1)));
        let kappa1 = cumulant_tree_formula(&shape.profile(), &u0, 1);
        let summary = estimate_z(&shape, &u0, 1, 3000, 17);
        assert!(
            (summary.mean - to_f64(&kappa1)).abs() < 4.0 * summary.standard_errors[0]
        );
    }

    #[test]
    fn z_estimator_matches_second_cumulant_of_single_box() {
        let shape = diagram(&[1]);
        let u0 = int(0);
        let summary = estimate_z(&shape, &u0, 2, 20_000, 23);
        let kappa2 = to_f64(&cumulant_tree_formula(&shape.profile(), &u0, 2));
        assert!(
            (summary.mean - kappa2).abs() < 4.0 * summary.standard_errors[0],
            "mean {} vs exact {kappa2}",
            summary.mean
        );
    }

    #[test]
    fn rectangle_experiment_on_a_single_box() {
        // p = q = 1: the corner is the single entry, Y = U − 1/2.
        let result = rectangle_experiment(1, 1, 5000, 29);
        assert_eq!(result.corner_mean, rat(1, 2));
        assert_eq!(result.corner_variance, rat(1, 12));
        assert!((result.sigma_alpha_squared - 0.125).abs() < 1e-12);
        assert!(result.y_samples.iter().all(|y| (-0.5..=0.5).contains(y)));
        let summary = &result.summary;
        assert!(summary.mean.abs() < 4.0 * summary.standard_errors[0]);
        assert!(
            (summary.variance - 1.0 / 12.0).abs() < 4.0 * summary.standard_errors[1]
        );
    }

    #[test]
    fn k_statistics_on_a_hand_computed_sample() {
        let summary = summarize(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(summary.count, 5);
        assert!((summary.mean - 3.0).abs() < 1e-12);
        assert!((summary.variance - 2.5).abs() < 1e-12);
        assert!((summary.k_statistics[2] - 0.0).abs() < 1e-12);
        assert!((summary.k_statistics[3] + 7.5).abs() < 1e-12);
        assert!(summary.skewness.abs() < 1e-12);
        assert!((summary.excess_kurtosis + 1.3).abs() < 1e-12);
        // Small sample: normal-theory errors, all finite.
        assert!(summary.standard_errors.iter().all(|se| se.is_finite()));
    }

    #[test]
    fn batch_errors_shrink_with_sample_size() {
        let small = estimate_threshold(&diagram(&[2, 1]), &rat(1, 2), 4000, 31);
        let large = estimate_threshold(&diagram(&[2, 1]), &rat(1, 2), 16_000, 31);
        for j in 0..2 {
            assert!(large.standard_errors[j] < small.standard_errors[j]);
        }
    }

    #[test]
    fn ks_statistic_detects_shifts() {
        let n = 1000;
        let grid: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        assert!(ks_statistic_uniform(&grid) < 1.0 / n as f64);
        let shifted: Vec<f64> = grid.iter().map(|v| v * 0.5).collect();
        assert!(ks_statistic_uniform(&shifted) > 0.4);
    }

    #[test]
    fn first_row_identity_on_random_tableaux() {
        // For u₀ strictly between λ₂ − 1 and λ₁ the threshold is the
        // last entry of the first row.
        let mut rng = RngStream::new(37, 0);
        for _ in 0..100 {
            let shape = random_diagram(7, &mut rng);
            let tableau = sample_poissonized(&shape, &mut rng);
            let lo = int(shape.row_len(2) as i64 - 1);
            let hi = int(shape.row_len(1) as i64);
            let fraction = Rational::new(
                BigInt::from(2u128 * u128::from(rng.next_u64()) + 1),
                BigInt::from(1u128 << 65),
            );
            let u0 = &lo + (&hi - &lo) * fraction;
            let first_row = tableau.rows()[0].last().unwrap().clone();
            assert_eq!(
                tableau.threshold(&u0),
                first_row,
                "shape {shape}, u0 {u0}"
            );
        }
    }

    #[test]
    fn random_diagrams_respect_the_size_cap() {
        let mut rng = RngStream::new(41, 0);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..200 {
            let d = random_diagram(5, &mut rng);
            assert!(!d.is_empty() && d.size() <= 5);
            seen.insert(d);
        }
        // 17 nonempty diagrams with ≤ 5 boxes; 200 draws see many.
        assert!(seen.len() > 10);
    }

    #[test]
    fn summary_serializes_with_plain_field_names() {
        let summary = summarize(&[0.0, 1.0, 2.0, 3.0]);
        let json = serde_json::to_value(&summary).unwrap();
        assert_eq!(json["count"], serde_json::json!(4));
        assert!(json["k_statistics"].as_array().unwrap().len() == 4);
        assert!(json["standard_errors"].as_array().unwrap().len() == 4);
    }
}
