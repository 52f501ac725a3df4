//! Acceptance gate: thirteen end-to-end criteria, each printing one
//! pass/fail line (visible with `--nocapture`, or automatically when a
//! criterion fails).
//!
//! Every exact criterion compares complete rational values with
//! tolerance zero; the Monte Carlo criteria pin their seeds, so their
//! outcomes are bit-reproducible too.

use std::time::Instant;

use num::{BigInt, One};
use rayon::prelude::*;

use threshold_cumulants::cumulants::{
    cumulant_bound_check, cumulant_caterpillar_formula, cumulant_tree_formula,
    cumulants_to_moments, frak_c, frak_t, regularized_moment_limit_check, theta,
    theta_via_multispines,
};
use threshold_cumulants::diagram::{partitions_up_to, YoungDiagram};
use threshold_cumulants::graphs::enumerate_nca_trees;
use threshold_cumulants::growth::{
    admissible_growth_blocks, anti_pieri_formula, moment_oracle, path_probability,
    staircase_coordinates,
};
use threshold_cumulants::montecarlo::{
    estimate_threshold, random_diagram, rectangle_experiment, sample_poissonized, RngStream,
};
use threshold_cumulants::rational::{int, rat, Rational};
use threshold_cumulants::Error;

use rand::{Rng, RngCore};

fn diagram(rows: &[usize]) -> YoungDiagram {
    YoungDiagram::new(rows.to_vec()).unwrap()
}

/// Prints the criterion's verdict line and panics on failure.
fn conclude(number: u32, name: &str, pass: bool, details: String, started: Instant) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {number:02} ({name}): {verdict} [{:.2}s]",
        started.elapsed().as_secs_f64()
    );
    assert!(pass, "criterion {number:02} ({name}) failed: {details}");
}

#[test]
fn criterion_01_tree_counts_are_catalan() {
    let started = Instant::now();
    let expected: [usize; 10] = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
    let counts: Vec<usize> = (1..=10).map(|n| enumerate_nca_trees(n).len()).collect();
    let within_budget = started.elapsed().as_secs_f64() < 10.0;
    let pass = counts == expected && within_budget;
    conclude(
        1,
        "non-crossing alternating tree counts",
        pass,
        format!("counts {counts:?}, elapsed {:?}", started.elapsed()),
        started,
    );
}

#[test]
fn criterion_02_tree_formula_equals_moment_oracle() {
    let started = Instant::now();
    let shapes = partitions_up_to(6);
    let failures: Vec<String> = shapes
        .par_iter()
        .flat_map(|d| {
            let profile = d.profile();
            let mut local = Vec::new();
            for k in 0..14 {
                let u0 = rat(2 * k - 13, 2); // −13/2, −11/2, …, 13/2
                let kappa: Vec<Rational> = (1..=4)
                    .map(|n| cumulant_tree_formula(&profile, &u0, n))
                    .collect();
                let moments = cumulants_to_moments(&kappa);
                for order in 1..=4usize {
                    let oracle = moment_oracle(d, &u0, order as u32);
                    if moments[order - 1] != oracle {
                        local.push(format!(
                            "shape {d}, u0 {u0}, order {order}: {} vs oracle {}",
                            moments[order - 1],
                            oracle
                        ));
                    }
                }
            }
            local
        })
        .collect();
    conclude(
        2,
        "cumulant tree formula vs growth oracle",
        failures.is_empty(),
        failures.join("; "),
        started,
    );
}

#[test]
fn criterion_03_rectangle_mean_and_variance() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let u0 = int(0);
    for p in 1..=6usize {
        for q in 1..=6usize {
            let profile = diagram(&vec![q; p]).profile();
            let s = (p + q) as i64;
            let kappa1 = cumulant_tree_formula(&profile, &u0, 1);
            let kappa2 = cumulant_tree_formula(&profile, &u0, 2);
            let expected1 = rat(q as i64, s);
            let expected2 = rat((q * p) as i64, s * s * (s + 1));
            if kappa1 != expected1 || kappa2 != expected2 {
                failures.push(format!("{p}x{q}: κ1 {kappa1}, κ2 {kappa2}"));
            }
        }
    }
    conclude(
        3,
        "rectangle threshold mean and variance",
        failures.is_empty(),
        failures.join("; "),
        started,
    );
}

#[test]
fn criterion_04_single_box_cumulants() {
    let started = Instant::now();
    let profile = diagram(&[1]).profile();
    let u0 = int(0);
    let kappa: Vec<Rational> = (1..=4)
        .map(|n| cumulant_tree_formula(&profile, &u0, n))
        .collect();
    let expected = vec![rat(1, 2), rat(1, 12), int(0), rat(-1, 120)];
    conclude(
        4,
        "single-box cumulants are uniform",
        kappa == expected,
        format!("got {kappa:?}"),
        started,
    );
}

#[test]
fn criterion_05_theta_multispine_decomposition() {
    let started = Instant::now();
    let mut rng = RngStream::new(5, 0);
    let mut checked = 0usize;
    let mut failures = Vec::new();
    while checked < 100 {
        let ell = rng.random_range(1..=5usize);
        let mut x: Vec<i64> = Vec::new();
        while x.len() < ell {
            let candidate = rng.random_range(-50..=50i64);
            if !x.contains(&candidate) {
                x.push(candidate);
            }
        }
        let a: Vec<i64> = (0..ell).map(|_| rng.random_range(1..=5i64)).collect();
        let xq: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
        let aq: Vec<Rational> = a.iter().map(|&v| int(v)).collect();
        let direct = match theta(&xq, &aq) {
            Ok(v) => v,
            Err(_) => continue, // Θ undefined here; draw another input.
        };
        checked += 1;
        match theta_via_multispines(&xq, &aq) {
            Ok(expanded) if expanded == direct => {}
            other => failures.push(format!("x {x:?}, a {a:?}: direct {direct}, got {other:?}")),
        }
    }
    let within_budget = started.elapsed().as_secs_f64() < 30.0;
    conclude(
        5,
        "pairwise product vs multi-spine expansion",
        failures.is_empty() && within_budget,
        format!("{}; elapsed {:?}", failures.join("; "), started.elapsed()),
        started,
    );
}

#[test]
fn criterion_06_caterpillars_match_trees() {
    let started = Instant::now();
    // (a) Full formulas on perturbed generic profiles.
    let eps = rat(1, 7);
    let shapes: Vec<YoungDiagram> = partitions_up_to(5)
        .into_iter()
        .filter(|d| !d.is_empty())
        .collect();
    let formula_failures: Vec<String> = shapes
        .par_iter()
        .flat_map(|d| {
            let profile = d.profile().perturb(&eps).unwrap();
            let mut local = Vec::new();
            for u0 in [rat(-3, 2), int(0), rat(1, 2), rat(5, 2)] {
                for order in 1..=4 {
                    let caterpillar =
                        cumulant_caterpillar_formula(&profile, &u0, order).unwrap();
                    let tree = cumulant_tree_formula(&profile, &u0, order);
                    if caterpillar != tree {
                        local.push(format!(
                            "shape {d}, u0 {u0}, order {order}: {caterpillar} vs {tree}"
                        ));
                    }
                }
            }
            local
        })
        .collect();

    // (b) Kernels at random rational points.
    let mut rng = RngStream::new(6, 0);
    let u0 = rat(1, 2);
    let mut kernel_failures = Vec::new();
    let mut checked = 0usize;
    while checked < 200 {
        let n = rng.random_range(1..=6usize);
        let point: Vec<Rational> = (0..n)
            .map(|_| {
                rat(
                    rng.random_range(-100..=100i64),
                    rng.random_range(1..=20i64),
                )
            })
            .collect();
        let caterpillar = match frak_c(&point, &u0) {
            Ok(v) => v,
            Err(Error::ZeroDenominator { .. }) => continue, // undefined point
            Err(e) => {
                kernel_failures.push(format!("{point:?}: unexpected error {e}"));
                checked += 1;
                continue;
            }
        };
        checked += 1;
        let tree = frak_t(&point, &u0);
        if caterpillar != tree {
            kernel_failures.push(format!("{point:?}: {caterpillar} vs {tree}"));
        }
    }

    let pass = formula_failures.is_empty() && kernel_failures.is_empty();
    conclude(
        6,
        "caterpillar formula and kernel vs trees",
        pass,
        format!(
            "formulas: {}; kernels: {}",
            formula_failures.join("; "),
            kernel_failures.join("; ")
        ),
        started,
    );
}

#[test]
fn criterion_07_regularized_moments_converge() {
    let started = Instant::now();
    let epsilons = [rat(1, 10), rat(1, 100), rat(1, 1000)];
    let mut failures = Vec::new();
    for d in [diagram(&[1]), diagram(&[2, 1]), diagram(&[2, 2])] {
        for order in 1..=3u32 {
            let report =
                regularized_moment_limit_check(&d, &rat(1, 2), order, &epsilons).unwrap();
            if !report.gaps_strictly_decrease || report.final_relative_gap >= rat(1, 100) {
                failures.push(format!(
                    "shape {d}, order {order}: gaps {:?}, final relative {}",
                    report.gaps, report.final_relative_gap
                ));
            }
        }
    }
    conclude(
        7,
        "perturbed moment sums approach the oracle",
        failures.is_empty(),
        failures.join("; "),
        started,
    );
}

#[test]
fn criterion_08_cumulant_bound() {
    let started = Instant::now();
    let shapes = partitions_up_to(6);
    let failures: Vec<String> = shapes
        .par_iter()
        .flat_map(|d| {
            let profile = d.profile();
            let corners = profile.concave();
            let half = rat(1, 2);
            let mut local = Vec::new();
            let mut u0 = corners.first().unwrap() - &half;
            let hi = corners.last().unwrap() + &half;
            while u0 <= hi {
                for order in 1..=4 {
                    let check = cumulant_bound_check(&profile, &u0, order);
                    if !check.holds {
                        local.push(format!(
                            "shape {d}, u0 {u0}, order {order}: |{}| > {}",
                            check.cumulant, check.bound
                        ));
                    }
                }
                u0 += Rational::one();
            }
            local
        })
        .collect();
    conclude(
        8,
        "a priori cumulant bound",
        failures.is_empty(),
        failures.join("; "),
        started,
    );
}

#[test]
fn criterion_09_sampled_thresholds_match_exact_cumulants() {
    let started = Instant::now();
    let u0 = rat(1, 2);
    let total = 200_000;
    let seed = 0;
    let mut failures = Vec::new();
    for rows in [vec![1usize], vec![2, 1], vec![4, 2, 2, 2], vec![3, 3, 3]] {
        let shape = diagram(&rows);
        let summary = estimate_threshold(&shape, &u0, total, seed);
        let profile = shape.profile();
        for j in 0..3 {
            let exact = threshold_cumulants::rational::to_f64(&cumulant_tree_formula(
                &profile,
                &u0,
                j as u32 + 1,
            ));
            let gap = (summary.k_statistics[j] - exact).abs();
            if gap > 4.0 * summary.standard_errors[j] {
                failures.push(format!(
                    "shape {shape}, k{}: estimate {} vs exact {exact} (SE {})",
                    j + 1,
                    summary.k_statistics[j],
                    summary.standard_errors[j]
                ));
            }
        }
    }
    let within_budget = started.elapsed().as_secs_f64() < 120.0;
    conclude(
        9,
        "Monte Carlo thresholds vs exact cumulants",
        failures.is_empty() && within_budget,
        format!("{}; elapsed {:?}", failures.join("; "), started.elapsed()),
        started,
    );
}

#[test]
fn criterion_10_rectangle_corner_fluctuations() {
    let started = Instant::now();
    let result = rectangle_experiment(15, 15, 20_000, 0);
    let summary = &result.summary;
    let mut failures = Vec::new();
    if summary.mean.abs() > 4.0 * summary.standard_errors[0] {
        failures.push(format!(
            "mean {} exceeds 4 x SE {}",
            summary.mean, summary.standard_errors[0]
        ));
    }
    // Exact Var(Y) = √(pq) · Var(corner) = 15 · (1/4) / 31.
    let exact_variance = 15.0 * 0.25 / 31.0;
    if (summary.variance - exact_variance).abs() > 3.0 * summary.standard_errors[1] {
        failures.push(format!(
            "variance {} vs exact {exact_variance} (SE {})",
            summary.variance, summary.standard_errors[1]
        ));
    }
    if summary.skewness.abs() >= 0.15 {
        failures.push(format!("skewness {}", summary.skewness));
    }
    if summary.excess_kurtosis.abs() >= 0.3 {
        failures.push(format!("excess kurtosis {}", summary.excess_kurtosis));
    }
    if (result.sigma_alpha_squared - 0.125).abs() > 1e-12 {
        failures.push(format!("limit variance {}", result.sigma_alpha_squared));
    }
    let within_budget = started.elapsed().as_secs_f64() < 120.0;
    conclude(
        10,
        "rectangle corner fluctuations are near-Gaussian",
        failures.is_empty() && within_budget,
        format!("{}; elapsed {:?}", failures.join("; "), started.elapsed()),
        started,
    );
}

#[test]
fn criterion_11_threshold_is_last_first_row_entry() {
    let started = Instant::now();
    let mut rng = RngStream::new(11, 0);
    let mut failures = Vec::new();
    for trial in 0..1000 {
        let shape = random_diagram(8, &mut rng);
        let tableau = sample_poissonized(&shape, &mut rng);
        let lo = int(shape.row_len(2) as i64 - 1);
        let hi = int(shape.row_len(1) as i64);
        let fraction = Rational::new(
            BigInt::from(2u128 * u128::from(rng.next_u64()) + 1),
            BigInt::from(1u128 << 65),
        );
        let u0 = &lo + (&hi - &lo) * fraction;
        let expected = tableau.rows()[0].last().unwrap().clone();
        if tableau.threshold(&u0) != expected {
            failures.push(format!("trial {trial}: shape {shape}, u0 {u0}"));
        }
    }
    conclude(
        11,
        "first-row identity for the threshold",
        failures.is_empty(),
        failures.join("; "),
        started,
    );
}

#[test]
fn criterion_12_block_probabilities_match_growth_paths() {
    let started = Instant::now();
    let shapes = partitions_up_to(6);
    let failures: Vec<String> = shapes
        .par_iter()
        .flat_map(|d| {
            let mut local = Vec::new();
            for k in 1..=4 {
                for (x, a) in admissible_growth_blocks(d, k) {
                    let closed = anti_pieri_formula(d, &x, &a).unwrap();
                    let direct = path_probability(d, &staircase_coordinates(&x, &a));
                    if closed != direct {
                        local.push(format!(
                            "shape {d}, x {x:?}, a {a:?}: {closed} vs {direct}"
                        ));
                    }
                }
            }
            local
        })
        .collect();
    conclude(
        12,
        "block probability closed form vs growth paths",
        failures.is_empty(),
        failures.join("; "),
        started,
    );
}

#[test]
fn criterion_13_insertion_order_equivalence() {
    let started = Instant::now();
    let mut rng = RngStream::new(13, 0);
    let denominator = BigInt::from(1u128 << 64);
    let mut failures = Vec::new();
    for trial in 0..10_000 {
        let shape = random_diagram(6, &mut rng);
        let tableau = sample_poissonized(&shape, &mut rng);
        let (z1, z2) = loop {
            let a = rng.next_u64();
            let b = rng.next_u64();
            if a != b {
                break (
                    Rational::new(BigInt::from(a), denominator.clone()),
                    Rational::new(BigInt::from(b), denominator.clone()),
                );
            }
        };
        let first = tableau.insert(&z1).unwrap();
        let u1 = first.new_box.1 as i64 - first.new_box.0 as i64;
        let second = first.tableau.insert(&z2).unwrap();
        let u2 = second.new_box.1 as i64 - second.new_box.0 as i64;
        if (z1 > z2) != (u1 > u2) || (z1 < z2) != (u1 < u2) {
            failures.push(format!(
                "trial {trial}: shape {shape}, z1 {z1}, z2 {z2}, u1 {u1}, u2 {u2}"
            ));
        }
    }
    conclude(
        13,
        "inserted values and new boxes are equally ordered",
        failures.is_empty(),
        failures.join("; "),
        started,
    );
}
