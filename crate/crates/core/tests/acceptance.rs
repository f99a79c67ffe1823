//! End-to-end acceptance gate. Each check prints one PASS/FAIL line and
//! panics on failure, so `cargo test --test acceptance` doubles as a
//! machine-readable scorecard. Checks are independent and seeded, so the
//! harness may run them in any order or in parallel.

use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use heisenspec::assignment::{kset_distance, min_assignment, CostMatrix};
use heisenspec::combin::binomial;
use heisenspec::diameter::{
    bound_from_diameter, estimate_generalized_diameter, estimate_with_distances,
    exact_generalized_diameter, upper_bound_from_estimate, upper_bound_lambda, ExponentRule,
};
use heisenspec::extint::{ExtInt, ExtReal};
use heisenspec::graph::{Graph, VertexSet};
use heisenspec::iso::{
    eip_bruteforce, family_certified_constant, family_constant, functional_g, functional_rho,
    indicator, iso_fit, sobolev_seminorm, verify_symprod_bound, FamilyMode,
};
use heisenspec::johnson::{
    assembly_deviation, meanfield_h1_spectrum, meanfield_lk_spectrum, reconstruct_lk,
};
use heisenspec::lower::{lower_bound_lambda_graph, lower_bound_lambda_lk};
use heisenspec::sympow::{
    build_heisenberg_dense, laplacian_lk, verify_decomposition, KSet, SymProduct,
};

const EIGEN_TOL: f64 = 1e-12;

fn verdict(num: u32, name: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("acceptance {num:02} [{name}]: {tag} - {detail}");
    assert!(pass, "acceptance {num:02} [{name}] failed: {detail}");
}

fn random_graph(rng: &mut ChaCha8Rng, n_lo: usize, n_hi: usize) -> Graph {
    let n = rng.gen_range(n_lo..=n_hi);
    let p = rng.gen_range(0.25..0.9);
    Graph::random_gnp(n, p, rng)
}

fn random_connected(rng: &mut ChaCha8Rng, n_lo: usize, n_hi: usize) -> Graph {
    loop {
        let g = random_graph(rng, n_lo, n_hi);
        if g.n() >= 2 && g.is_connected() {
            return g;
        }
    }
}

fn lk_spectrum(g: &Graph, k: usize) -> Vec<f64> {
    laplacian_lk(g, k)
        .unwrap()
        .eigenvalues(EIGEN_TOL)
        .unwrap()
        .eigenvalues()
        .to_vec()
}

#[test]
fn check_01_operator_splits_into_token_sectors() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC01);
    let mut corpus: Vec<Graph> = (0..50).map(|_| random_graph(&mut rng, 2, 6)).collect();
    corpus.push(Graph::path(3));
    corpus.push(Graph::complete(4));
    corpus.push(Graph::cycle(6));

    let mut worst = 0.0f64;
    for g in &corpus {
        let report = verify_decomposition(g, 1e-8).unwrap();
        assert!(
            report.pass,
            "decomposition mismatch on n = {}, deviation {}",
            g.n(),
            report.max_spectrum_deviation
        );
        worst = worst.max(report.max_spectrum_deviation);
    }
    let elapsed = start.elapsed();
    verdict(
        1,
        "sector decomposition",
        worst <= 1e-8 && elapsed < Duration::from_secs(60),
        &format!(
            "{} graphs, max spectrum deviation {worst:.3e}, elapsed {:.2?}",
            corpus.len(),
            elapsed
        ),
    );
}

#[test]
fn check_02_gap_is_uniform_across_token_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC02);
    let mut corpus: Vec<Graph> = (0..20).map(|_| random_connected(&mut rng, 2, 8)).collect();
    corpus.push(Graph::path(8));
    corpus.push(Graph::cycle(8));
    corpus.push(Graph::complete(5));
    corpus.push(Graph::star(7));
    corpus.push(Graph::path(3));

    let mut worst_spread = 0.0f64;
    for g in &corpus {
        let n = g.n();
        let gaps: Vec<f64> = (1..n).map(|k| lk_spectrum(g, k)[1]).collect();
        let lo = gaps.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = gaps.iter().cloned().fold(0.0f64, f64::max);
        worst_spread = worst_spread.max(hi - lo);
    }
    verdict(
        2,
        "gap uniform in k",
        worst_spread <= 1e-9,
        &format!(
            "{} connected graphs, worst gap spread across sectors {worst_spread:.3e}",
            corpus.len()
        ),
    );
}

#[test]
fn check_03_complete_graph_closed_forms() {
    let mut worst_value = 0.0f64;
    let mut worst_frob = 0.0f64;
    for n in 3..=8usize {
        let g = Graph::complete(n);
        let h = build_heisenberg_dense(&g).unwrap();
        let clusters = h.eigenvalues(EIGEN_TOL).unwrap().clustered(1e-6);
        let expected = meanfield_h1_spectrum(n);
        assert_eq!(
            clusters.len(),
            expected.len(),
            "cluster count mismatch at n = {n}"
        );
        for ((got_v, got_m), (want_v, want_m)) in clusters.iter().zip(expected.iter()) {
            assert_eq!(
                *got_m as u128, *want_m,
                "multiplicity mismatch at n = {n}, eigenvalue {want_v}"
            );
            worst_value = worst_value.max((got_v - want_v).abs());
        }
        for k in 1..=n / 2 {
            let direct = laplacian_lk(&g, k).unwrap();
            let rebuilt = reconstruct_lk(n, k).unwrap();
            worst_frob = worst_frob.max(direct.frobenius_distance(&rebuilt));
        }
    }
    let dev5 = assembly_deviation(5).unwrap();
    let dev6 = assembly_deviation(6).unwrap();
    let pass = worst_value <= 1e-8 && worst_frob < 1e-9 && dev5 < 1e-9 && dev6 < 1e-9;
    verdict(
        3,
        "mean-field closed forms",
        pass,
        &format!(
            "n = 3..8: eigenvalue error {worst_value:.3e}, projector rebuild error {worst_frob:.3e}, full assembly deviation {dev5:.3e} (n=5) {dev6:.3e} (n=6)"
        ),
    );
}

#[test]
fn check_04_token_laplacians_of_complete_graphs() {
    let mut worst = 0.0f64;
    let mut cells = 0usize;
    for n in 2..=8usize {
        for k in 1..=4.min(n) {
            let mut expected: Vec<f64> = Vec::new();
            for (value, mult) in meanfield_lk_spectrum(n, k.min(n - k)).unwrap() {
                expected.extend(std::iter::repeat_n(value, mult as usize));
            }
            if expected.len() > 1 {
                // The gap of every complete-graph token Laplacian is the
                // vertex count itself, exactly.
                assert_eq!(expected[1], n as f64, "gap is not n at n = {n}, k = {k}");
            }
            let got = lk_spectrum(&Graph::complete(n), k);
            assert_eq!(got.len(), expected.len());
            for (a, b) in got.iter().zip(expected.iter()) {
                worst = worst.max((a - b).abs());
            }
            cells += 1;
        }
    }
    verdict(
        4,
        "complete-graph token spectra",
        worst <= 1e-8,
        &format!("{cells} (n, k) cells, max eigenvalue deviation {worst:.3e}"),
    );
}

#[test]
fn check_05_upper_bound_never_undercuts_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC05);
    let corpus: Vec<Graph> = (0..50).map(|_| random_connected(&mut rng, 3, 8)).collect();

    let mut checked = 0usize;
    for (gi, g) in corpus.iter().enumerate() {
        let n = g.n();
        let dist = g.all_pairs_distances();
        for k in 1..=n / 2 {
            let spectrum = lk_spectrum(g, k);
            let count = spectrum.len();
            let violations: Vec<String> = (1..count)
                .into_par_iter()
                .filter_map(|j| {
                    let seed = (gi as u64) << 8 | k as u64;
                    let est = estimate_with_distances(n, &dist, k, j, 4, seed).unwrap();
                    let rec = upper_bound_from_estimate(g, est, ExponentRule::DMinusOne).unwrap();
                    if rec.bound.is_finite() && rec.bound.0 < spectrum[j] - 1e-9 {
                        Some(format!(
                            "n = {n}, k = {k}, j = {j}: bound {} < eigenvalue {}",
                            rec.bound, spectrum[j]
                        ))
                    } else {
                        None
                    }
                })
                .collect();
            assert!(violations.is_empty(), "{}", violations.join("; "));
            checked += count - 1;
        }
    }

    // Worked arithmetic, certified and uncertified exponent rules.
    let certified = bound_from_diameter(12.0, 15, ExtInt::Finite(2), ExponentRule::DMinusOne);
    let deeper = bound_from_diameter(12.0, 15, ExtInt::Finite(3), ExponentRule::DMinusOne);
    assert!((certified.0 - 10.5).abs() <= 1e-9, "got {certified}");
    assert!((deeper.0 - 7.074885692215856).abs() <= 1e-9, "got {deeper}");

    // Disconnected graphs: some pair of singleton sets straddles the split,
    // the witnessed diameter is infinite, and the zero bound is tight.
    let two_triangles = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
    let rec = upper_bound_lambda(&two_triangles, 1, 1, 8, 0, ExponentRule::DMinusOne).unwrap();
    assert_eq!(
        rec.estimate.d,
        ExtInt::Infinite,
        "estimator missed the split"
    );
    assert_eq!(rec.bound, ExtReal(0.0));
    let lambda1 = lk_spectrum(&two_triangles, 1)[1];
    assert!(lambda1.abs() <= 1e-9, "second eigenvalue is {lambda1}");

    verdict(
        5,
        "diameter upper bound",
        true,
        &format!(
            "{checked} (graph, k, j) cells valid; worked values 10.5 and 7.074885692215856 reproduced; disconnected case gives the exact zero"
        ),
    );
}

fn brute_force_assignment(cost: &CostMatrix, dim: usize) -> ExtInt {
    let mut best = ExtInt::Infinite;
    let mut perm: Vec<usize> = (0..dim).collect();
    permute_all(&mut perm, 0, &mut |p| {
        let mut total = ExtInt::Finite(0);
        for (r, &c) in p.iter().enumerate() {
            total = total.add(cost.get(r, c));
        }
        if total < best {
            best = total;
        }
    });
    best
}

fn permute_all(arr: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == arr.len() {
        f(arr);
        return;
    }
    for j in i..arr.len() {
        arr.swap(i, j);
        permute_all(arr, i + 1, f);
        arr.swap(i, j);
    }
}

#[test]
fn check_06_assignment_solver_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC06);
    for trial in 0..500 {
        let dim = rng.gen_range(1..=6usize);
        let inf_prob = [0.0, 0.2, 0.5][trial % 3];
        let entries: Vec<ExtInt> = (0..dim * dim)
            .map(|_| {
                if rng.gen_bool(inf_prob) {
                    ExtInt::Infinite
                } else {
                    ExtInt::Finite(rng.gen_range(0..=9))
                }
            })
            .collect();
        let cost = CostMatrix::new(dim, entries).unwrap();
        let fast = min_assignment(&cost);
        let slow = brute_force_assignment(&cost, dim);
        assert_eq!(
            fast.value, slow,
            "trial {trial}: solver {} vs brute force {}",
            fast.value, slow
        );
    }

    // Token-set distance on the 3-path: the two edge pairs differ by one
    // endpoint swap of length two.
    let p3 = Graph::path(3);
    let dist = p3.all_pairs_distances();
    let x = KSet::new(vec![0, 1], 3).unwrap();
    let y = KSet::new(vec![1, 2], 3).unwrap();
    let d = kset_distance(&x, &y, &dist).unwrap();
    assert_eq!(d, ExtInt::Finite(2));
    let product = SymProduct::build(&p3, 2).unwrap();
    let pd = product
        .graph()
        .all_pairs_distances()
        .get(product.rank_of(&x), product.rank_of(&y));
    assert_eq!(d, pd, "matching distance disagrees with product BFS");

    verdict(
        6,
        "assignment solver",
        true,
        "500 random cost matrices (with infinities) match brute force; 3-path token distance is 2",
    );
}

#[test]
fn check_07_estimator_never_exceeds_true_diameter() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC07);
    let mut corpus: Vec<Graph> = Vec::new();
    for n in 3..=6usize {
        corpus.push(Graph::path(n));
        corpus.push(Graph::cycle(n));
        corpus.push(Graph::complete(n));
        corpus.push(Graph::star(n));
    }
    for _ in 0..30 {
        corpus.push(random_graph(&mut rng, 2, 6));
    }

    let mut cells = 0usize;
    for g in &corpus {
        let n = g.n();
        for k in 1..=2.min(n) {
            let count = binomial(n as u128, k as u128);
            for j in 1..=4usize {
                if (j + 1) as u128 > count {
                    continue;
                }
                let exact = exact_generalized_diameter(g, k, j).unwrap();
                for seed in [0u64, 1, 7] {
                    let est = estimate_generalized_diameter(g, k, j, 8, seed).unwrap();
                    assert!(
                        est.d <= exact.d,
                        "estimate {} exceeds exact {} on n = {n}, k = {k}, j = {j}",
                        est.d,
                        exact.d
                    );
                }
                cells += 1;
            }
        }
    }

    let pinned = exact_generalized_diameter(&Graph::path(5), 1, 2).unwrap();
    assert_eq!(pinned.d, ExtInt::Finite(2), "5-path triple diameter");

    verdict(
        7,
        "diameter estimator soundness",
        true,
        &format!("{cells} (graph, k, j) cells, three seeds each, all estimates below the exact value; 5-path j = 2 gives 2"),
    );
}

#[test]
fn check_08_indicator_functional_sandwich() {
    // Seminorm-boundary identity over every subset of a mixed corpus.
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC08);
    let mut seminorm_checks = 0usize;
    let corpus = [
        Graph::cycle(12),
        Graph::path(12),
        Graph::star(12),
        Graph::complete(6),
        random_graph(&mut rng, 9, 10),
        random_graph(&mut rng, 11, 12),
    ];
    for g in &corpus {
        let n = g.n();
        for mask in 0u64..1 << n {
            let x = VertexSet::from_mask(mask, n);
            let boundary = g.edge_boundary(&x).unwrap().len() as f64;
            let norm = sobolev_seminorm(g, &indicator(&x, n)).unwrap();
            assert!(
                (norm - boundary).abs() <= 1e-9,
                "seminorm {norm} vs boundary {boundary} on mask {mask:#b}"
            );
            seminorm_checks += 1;
        }
    }

    // Two-sided functional sandwich with the balanced-split constant, over
    // every indicator up to 12 vertices. The functionals depend only on the
    // vertex count and the subset size, so complete graphs cover all cases.
    let mut violations: Vec<String> = Vec::new();
    let mut p1_gap = 0.0f64;
    for n in 2..=12usize {
        let g = Graph::complete(n);
        for size in 0..=n {
            let x = VertexSet::new((0..size).collect()).unwrap();
            let f = indicator(&x, n);
            for p in [1.0, 1.5, 2.0, 3.0] {
                let gp = functional_g(&g, &x, p).unwrap();
                let rho = functional_rho(&f, p).unwrap();
                let floor = 2f64.powf(-(1.0 - 1.0 / p)) * gp;
                if rho > gp + 1e-9 {
                    violations.push(format!(
                        "n = {n}, |X| = {size}, p = {p}: rho {rho} above g {gp}"
                    ));
                }
                if rho + 1e-9 < floor {
                    violations.push(format!(
                        "n = {n}, |X| = {size}, p = {p}: rho {rho:.6} below floor {floor:.6} = 2^(-(1-1/p)) g"
                    ));
                }
                if p == 1.0 {
                    p1_gap = p1_gap.max((rho - gp).abs());
                }
            }
        }
    }
    assert!(p1_gap <= 1e-9, "p = 1 functionals differ by {p1_gap}");

    let detail = if violations.is_empty() {
        format!("{seminorm_checks} subsets match the boundary; sandwich holds for p in {{1, 1.5, 2, 3}} up to 12 vertices")
    } else {
        format!(
            "{} sandwich violations at the balanced-split constant; first: {}. Seminorm identity and p = 1 equality hold; the floor 2^(-(1-1/p)) g is only valid for p >= 2, the sharp universal floor is 2^(-max(1/p, 1-1/p)) g",
            violations.len(),
            violations[0]
        )
    };
    verdict(
        8,
        "indicator functional sandwich",
        violations.is_empty(),
        &detail,
    );
}

#[test]
fn check_09_token_boundary_bound_certified() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC09);
    let mut corpus: Vec<(Graph, usize)> = vec![
        (Graph::complete(4), 1),
        (Graph::complete(4), 2),
        (Graph::complete(5), 1),
        (Graph::complete(6), 1),
        (Graph::complete(6), 2),
        (Graph::cycle(6), 1),
        (Graph::cycle(6), 2),
        (Graph::path(4), 1),
        (Graph::path(4), 2),
        (Graph::path(6), 2),
        (Graph::star(5), 1),
        (Graph::star(5), 2),
    ];
    for _ in 0..10 {
        corpus.push((random_connected(&mut rng, 4, 6), 2));
    }

    let mut cells = 0usize;
    let mut tightest = f64::INFINITY;
    for (g, k) in &corpus {
        let (g, k) = (g, *k);
        if binomial(g.n() as u128, k as u128) > 15 {
            continue;
        }
        for p in [1.0, 2.0] {
            let c = family_certified_constant(g, k, p).unwrap();
            let report = verify_symprod_bound(g, k, p, c).unwrap();
            assert!(
                report.pass,
                "certified constant {c} fails on n = {}, k = {k}, p = {p}: ratio {}",
                g.n(),
                report.tightest_ratio
            );
            tightest = tightest.min(report.tightest_ratio);
            cells += 1;
        }
    }

    // Complete graphs with one token meet the bound with equality.
    let mut equality_gap = 0.0f64;
    for n in 3..=6usize {
        let c = family_certified_constant(&Graph::complete(n), 1, 1.0).unwrap();
        assert!((c - n as f64 / 2.0).abs() <= 1e-9, "constant is {c}");
        let report = verify_symprod_bound(&Graph::complete(n), 1, 1.0, c).unwrap();
        assert!(report.pass);
        equality_gap = equality_gap.max((report.tightest_ratio - 1.0).abs());
    }

    verdict(
        9,
        "token boundary bound",
        equality_gap <= 1e-9,
        &format!(
            "{cells} certified (graph, k, p) cells scanned exhaustively, tightest ratio {tightest:.6}; complete-graph equality gap {equality_gap:.3e}"
        ),
    );
}

#[test]
fn check_10_lower_bound_never_overshoots() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC0A);
    let mut corpus: Vec<Graph> = vec![
        Graph::complete(4),
        Graph::complete(5),
        Graph::complete(6),
        Graph::cycle(6),
        Graph::cycle(8),
        Graph::path(5),
        Graph::path(7),
        Graph::star(6),
    ];
    for _ in 0..15 {
        corpus.push(random_connected(&mut rng, 4, 8));
    }

    let mut single_cells = 0usize;
    let mut token_cells = 0usize;
    for g in &corpus {
        let n = g.n();
        let profile = eip_bruteforce(g).unwrap();
        let beta = g.degree_profile().max_degree as f64;
        let m = g.edge_count() as f64;
        let spectrum = lk_spectrum(g, 1);

        for delta in [2.5, 3.0, f64::INFINITY] {
            let fit = iso_fit(&profile, delta).unwrap();
            for (j, &lambda_j) in spectrum.iter().enumerate().skip(1) {
                let outcome = lower_bound_lambda_graph(1.0, beta, fit.c, delta, j, m).unwrap();
                if let Some(v) = outcome.value() {
                    assert!(
                        v <= lambda_j + 1e-9,
                        "single-graph bound {v} above eigenvalue {lambda_j} at n = {n}, j = {j}, delta = {delta}"
                    );
                    single_cells += 1;
                }
            }

            for k in 1..=3.min(n / 2) {
                for delta_k in [3.0, f64::INFINITY] {
                    let fam = family_constant(g, k, delta_k, FamilyMode::Exhaustive).unwrap();
                    let token_spectrum = lk_spectrum(g, k);
                    for (j, &lambda_j) in token_spectrum.iter().enumerate().take(6).skip(1) {
                        let rec = lower_bound_lambda_lk(g, k, j, fam.a, delta_k, &fit).unwrap();
                        if let Some(v) = rec.outcome.value() {
                            assert!(
                                v <= lambda_j + 1e-9,
                                "token bound {v} above eigenvalue {lambda_j} at n = {n}, k = {k}, j = {j}"
                            );
                            token_cells += 1;
                        }
                    }
                }
            }
        }
    }

    // Worked instance: b = 3, beta = 4, c = 1, delta = 3, j = 1, m = 12.
    let worked = lower_bound_lambda_graph(3.0, 4.0, 1.0, 3.0, 1, 12.0)
        .unwrap()
        .value()
        .unwrap();
    assert!(
        (worked - 7.54e-5).abs() <= 5e-8,
        "worked value {worked:.6e} is not 7.54e-5 to three significant figures"
    );

    verdict(
        10,
        "isoperimetric lower bound",
        true,
        &format!(
            "{single_cells} single-graph and {token_cells} token cells stay below the spectrum; worked value {worked:.3e}"
        ),
    );
}

#[test]
fn check_11_estimator_cost_scales_with_pair_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC0B);
    let g = loop {
        let g = Graph::random_gnp(40, 0.2, &mut rng);
        if g.is_connected() {
            break g;
        }
    };

    let full_start = Instant::now();
    let dist = g.all_pairs_distances();
    estimate_with_distances(40, &dist, 5, 20, 16, 7).unwrap();
    let full = full_start.elapsed();
    assert!(full < Duration::from_secs(10), "single run took {full:.2?}");

    let time_phase = |j: usize, reps: usize| {
        let start = Instant::now();
        for _ in 0..reps {
            estimate_with_distances(40, &dist, 5, j, 16, 7).unwrap();
        }
        start.elapsed().as_secs_f64() / reps as f64
    };

    // Repeat each measurement long enough to swamp timer noise.
    let calib = time_phase(20, 1);
    let reps = ((0.025 / calib).ceil() as usize).clamp(1, 400);

    let mut ratios: Vec<f64> = (0..5)
        .map(|_| time_phase(40, reps) / time_phase(20, reps))
        .collect();
    ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = ratios[2];

    verdict(
        11,
        "estimator runtime scaling",
        (3.0..=5.5).contains(&median),
        &format!(
            "median time ratio j = 40 vs j = 20 is {median:.2} over 5 samples ({reps} reps each); single run {full:.2?}"
        ),
    );
}
