//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qsym_core::cqg::{
    build_qblock, build_qblock_unchecked, check_hinf_relations, check_magic_relations, find_block_witness,
    model_magic_unitary, model_rep, random_phases, verify_classical_group_law, verify_homomorphism,
    verify_tau_preservation, verify_tau_preservation_forced, ClassicalPoint, ModelKind,
    FORCED_FAILURE_THRESHOLD, VERIFY_TOL,
};
use qsym_core::graph::{DirectedMultigraph, VertexMatrix};
use qsym_core::kms::{
    check_invariance, check_subinvariance, critical_beta, eigenspace_dimension, kms_exists_at_critical,
    perron_vector, spectral_radius_detailed, KmsWeightVector,
};
use qsym_core::loops::{random_exact_element, Cyclotomic12};
use qsym_core::partitions::{classify_weights, descriptors_for_n, enumerate_partitions, partition_count};
use qsym_core::{Error, ExactLoopElement, ExactWeights};
use support::q;
use support::rewrite::{all_words, letter_monomial, reduce, to_monomial};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn exact_weights(ws: &[(i64, i64)]) -> ExactWeights {
    KmsWeightVector::at_zero(ws.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
}

fn loops_spectral_pipeline() -> Outcome {
    for n in 1..=8 {
        let g = DirectedMultigraph::loops(n).unwrap();
        let d = g.vertex_matrix();
        ensure!(d == VertexMatrix::identity(n), "n = {n}: vertex matrix {:?}", d.rows());
        let rho = spectral_radius_detailed(&d);
        ensure!(rho.exact == Some(1.into()), "n = {n}: rho = {:?}", rho);
        ensure!(critical_beta(&d).unwrap() == 0.0, "n = {n}: critical beta not 0");
        ensure!(eigenspace_dimension(&d) == n, "n = {n}: eigenspace dimension {}", eigenspace_dimension(&d));
        ensure!(kms_exists_at_critical(&d), "n = {n}: no KMS state at the critical temperature");
    }
    Ok("n = 1..8".into())
}

fn word_oracle_equivalence() -> Outcome {
    let mut count = 0;
    for n in 1..=3 {
        for word in all_words(n, 4) {
            let mut product = ExactLoopElement::monomial(n, letter_monomial(word[0])).unwrap();
            for &l in &word[1..] {
                product = product.multiply(&ExactLoopElement::monomial(n, letter_monomial(l)).unwrap()).unwrap();
            }
            let oracle = match reduce(&word) {
                None => ExactLoopElement::zero(n),
                Some(w) => ExactLoopElement::monomial(n, to_monomial(&w)).unwrap(),
            };
            ensure!(product == oracle, "n = {n}, word {word:?}: {product} vs oracle {oracle}");
            count += 1;
        }
    }
    Ok(format!("{count} words"))
}

/// Seeded corpus shared by the trace and gauge criteria.
fn random_pairs() -> Vec<(ExactLoopElement, ExactLoopElement)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a0);
    (0..500)
        .map(|_| (random_exact_element(3, 6, 6, &mut rng), random_exact_element(3, 6, 6, &mut rng)))
        .collect()
}

fn trace_weights() -> Vec<ExactWeights> {
    vec![
        exact_weights(&[(1, 2), (1, 3), (1, 6)]),
        exact_weights(&[(1, 3), (1, 3), (1, 3)]),
        exact_weights(&[(5, 7), (1, 7), (1, 7)]),
    ]
}

fn trace_property() -> Outcome {
    let weights = trace_weights();
    for (k, (x, y)) in random_pairs().iter().enumerate() {
        let c = &weights[k % weights.len()];
        let xy = x.multiply(y).unwrap().tau(c).unwrap();
        let yx = y.multiply(x).unwrap().tau(c).unwrap();
        ensure!(xy == yx, "pair {k}: tau(xy) = {xy} but tau(yx) = {yx}");
    }
    Ok("500 pairs, exact".into())
}

fn gauge_invariance() -> Outcome {
    let weights = trace_weights();
    let roots: Vec<Cyclotomic12> = (0..4)
        .map(|k| Cyclotomic12::root_of_order(4, k).unwrap())
        .chain((0..6).map(|k| Cyclotomic12::root_of_order(6, k).unwrap()))
        .collect();
    let mut checked = 0;
    for (k, (x, y)) in random_pairs().iter().enumerate() {
        let c = &weights[k % weights.len()];
        for e in [x.clone(), y.clone(), x.multiply(y).unwrap()] {
            let e = e.map_coefficients(Cyclotomic12::from_gaussian);
            let base = e.tau(c).unwrap();
            for z in &roots {
                let moved = e.gauge_action(z).unwrap().tau(c).unwrap();
                ensure!(moved == base, "pair {k}, z = {z}: {moved} vs {base}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} evaluations, 4th and 6th roots"))
}

/// `p(n)` as the coefficient of `x^n` in `prod_k 1/(1 - x^k)`.
fn generating_function_counts(max: usize) -> Vec<u128> {
    let mut coeffs = vec![0u128; max + 1];
    coeffs[0] = 1;
    for k in 1..=max {
        for i in k..=max {
            coeffs[i] += coeffs[i - k];
        }
    }
    coeffs
}

fn partition_correspondence() -> Outcome {
    const EXPECTED: [u128; 12] = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
    let gf = generating_function_counts(30);
    for n in 1..=30 {
        let count = partition_count(n).unwrap();
        let descriptors = descriptors_for_n(n).unwrap();
        ensure!(descriptors.len() as u128 == count, "n = {n}: {} descriptors, p(n) = {count}", descriptors.len());
        ensure!(count == gf[n], "n = {n}: p(n) = {count}, generating function gives {}", gf[n]);
        if n <= 12 {
            let brute = enumerate_partitions(n).unwrap().len() as u128;
            ensure!(brute == count && count == EXPECTED[n - 1], "n = {n}: enumeration {brute}, p(n) = {count}");
        }
    }
    Ok("n = 1..30".into())
}

fn descriptor_spot_checks() -> Outcome {
    const SUB: [&str; 9] = ["", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈"];
    for n in 1..=8usize {
        let uniform = classify_weights(&exact_weights(&vec![(1, n as i64); n]), &q(0, 1)).unwrap();
        let want = if n == 1 { "C(S¹)".to_string() } else { format!("C(S¹) ≀ S{}⁺", SUB[n]) };
        ensure!(uniform.descriptor().canonical_name() == want, "uniform n = {n}: {}", uniform.descriptor());

        let total = (n * (n + 1) / 2) as i64;
        let distinct: Vec<(i64, i64)> = (1..=n as i64).map(|k| (k, total)).collect();
        let class = classify_weights(&exact_weights(&distinct), &q(0, 1)).unwrap();
        let want = vec!["C(S¹)"; n].join(" ⋆ ");
        ensure!(class.descriptor().canonical_name() == want, "distinct n = {n}: {}", class.descriptor());
    }
    let class = classify_weights(&exact_weights(&[(1, 2), (1, 4), (1, 4)]), &q(0, 1)).unwrap();
    let name = class.descriptor().canonical_name();
    ensure!(name == "(C(S¹) ≀ S₂⁺) ⋆ C(S¹)", "(1/2, 1/4, 1/4): {name}");
    Ok("uniform, distinct, (2,1)".into())
}

fn model_soundness() -> Outcome {
    let mut worst = 0.0f64;
    let mut kinds = [0usize; 3];
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = 1 + (seed % 8) as usize;
        let d = if m <= 3 { 1 + (seed / 8 % 4) as usize } else { 2 + (seed / 8 % 3) as usize };
        let (u, kind) = model_magic_unitary::<f64, _>(m, d, &mut rng).map_err(|e| e.to_string())?;
        let want = match m {
            1..=3 => ModelKind::Classical,
            4 => ModelKind::TwoProjection,
            _ => ModelKind::Mixed,
        };
        ensure!(kind == want, "seed {seed}: m = {m} produced {kind:?}");
        kinds[kind as usize] += 1;
        let block = build_qblock(&u, &random_phases(m * m, &mut rng)).map_err(|e| e.to_string())?;
        let magic = check_magic_relations(&u, VERIFY_TOL);
        let hinf = check_hinf_relations(&block, VERIFY_TOL);
        ensure!(magic.passed() && hinf.passed(), "seed {seed}, m = {m}, d = {d}: {magic:?} {hinf:?}");
        worst = worst.max(magic.max_deviation()).max(hinf.max_deviation());
    }
    Ok(format!(
        "100 blocks ({} classical, {} two-projection, {} mixed), max deviation {worst:.1e}",
        kinds[0], kinds[1], kinds[2]
    ))
}

fn coaction_verification() -> Outcome {
    let cases: [&[(i64, i64)]; 4] = [
        &[(1, 4), (1, 4), (1, 4), (1, 4)],
        &[(1, 3), (1, 6), (1, 3), (1, 6)],
        &[(1, 5), (1, 3), (1, 5), (4, 15)],
        &[(1, 10), (2, 10), (3, 10), (4, 10)],
    ];
    let mut worst = 0.0f64;
    let mut degree_zero = 0.0f64;
    for (k, ws) in cases.iter().enumerate() {
        let c = exact_weights(ws);
        let class = classify_weights(&c, &q(0, 1)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(100 + k as u64);
        let (rep, kind) = model_rep::<f64, _>(&class.vertex_blocks(), &mut rng).unwrap();
        if class.partition().blocks() == [4] {
            ensure!(kind == ModelKind::TwoProjection && rep.d() == 2, "partition (4) built {kind:?}");
        }
        let hom = verify_homomorphism(&rep, 100, 6, VERIFY_TOL, &mut rng).unwrap();
        let tau = verify_tau_preservation(&rep, &c, 100, 6, VERIFY_TOL, &mut rng).unwrap();
        ensure!(hom.passed(), "{}: {hom:?}", class.partition());
        ensure!(tau.passed(), "{}: {tau:?}", class.partition());
        let dz = tau.get("tau_degree_zero_identity").ok_or("degree-zero identity not exercised")?;
        degree_zero = degree_zero.max(dz.max_deviation);
        worst = worst.max(hom.max_deviation()).max(tau.max_deviation());
    }
    Ok(format!(
        "(4), (2,2), (2,1,1), (1,1,1,1); max deviation {worst:.1e}, degree-zero identity {degree_zero:.1e}"
    ))
}

fn negative_controls() -> Outcome {
    let c = exact_weights(&[(1, 3), (2, 3)]);
    let single = vec![vec![1, 2]];
    let witness = find_block_witness(&single, &c).unwrap().ok_or("no witness found")?;
    ensure!(
        witness.deviation >= FORCED_FAILURE_THRESHOLD && witness.deviation >= witness.lower_bound - 1e-12,
        "witness deviation {}",
        witness.deviation
    );
    let sigma: Vec<usize> = witness.permutation.iter().map(|s| s - 1).collect();
    let point = ClassicalPoint::new(sigma, vec![Complex::one(); 2]).unwrap();
    let rep = point.to_qrep::<f64>(&single).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    ensure!(
        matches!(verify_tau_preservation(&rep, &c, 10, 6, VERIFY_TOL, &mut rng), Err(Error::PartitionMismatch(_))),
        "precondition did not reject mismatched weights"
    );
    let forced = verify_tau_preservation_forced(&rep, &c, 10, 6, VERIFY_TOL, &mut rng).unwrap();
    let dev = forced.max_deviation();
    ensure!(dev >= FORCED_FAILURE_THRESHOLD, "forced deviation {dev}");

    let mut phase_failures = 0;
    for (m, d) in [(2, 1), (3, 1), (4, 2), (6, 2)] {
        let (u, _) = model_magic_unitary::<f64, _>(m, d, &mut rng).unwrap();
        let mut phases = random_phases(m * m, &mut rng);
        let (nu, mu) = (0..m * m)
            .map(|k| (k / m, k % m))
            .find(|&(i, j)| u.entry(i, j).frobenius_norm() > 0.5)
            .unwrap();
        phases[nu * m + mu] = Complex::new(1.5, 0.0);
        ensure!(build_qblock(&u, &phases).is_err(), "modulus 1.5 accepted");
        let r = check_hinf_relations(&build_qblock_unchecked(&u, &phases), VERIFY_TOL);
        ensure!(!r.passed() && r.max_deviation() >= FORCED_FAILURE_THRESHOLD, "m = {m}: corrupted block passed");
        phase_failures += 1;
    }
    Ok(format!("witness deviation {:.3}, forced deviation {dev:.3}, {phase_failures} corrupted blocks rejected", witness.deviation))
}

fn classical_group_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut pairs = 0;
    for p in enumerate_partitions(4).unwrap() {
        let blocks = p.consecutive_vertices();
        for _ in 0..50 {
            let g = ClassicalPoint::random(&blocks, &mut rng);
            let h = ClassicalPoint::random(&blocks, &mut rng);
            let check = verify_classical_group_law(&blocks, &g, &h, 4).unwrap();
            ensure!(check.max_deviation == 0.0, "partition {p}: deviation {}", check.max_deviation);
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs over 5 partitions, exact"))
}

fn subinvariance_and_invariance() -> Outcome {
    let d = VertexMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap();
    let fixed = exact_weights(&[(1, 1), (0, 1)]);
    let half = exact_weights(&[(1, 2), (1, 2)]);
    ensure!(check_subinvariance(&d, &fixed).unwrap(), "(1, 0) not subinvariant");
    ensure!(check_invariance(&d, &fixed).unwrap(), "(1, 0) not invariant");
    ensure!(!check_invariance(&d, &half).unwrap(), "(1/2, 1/2) accepted as invariant");
    ensure!(eigenspace_dimension(&d) == 1, "eigenspace not one-dimensional");
    let perron = perron_vector(&d).ok_or("no Perron vector")?;
    let want = [BigRational::one(), BigRational::zero()];
    ensure!(perron.exact() == Some(&want[..]), "Perron vector {perron:?}");
    Ok("unique invariant vector (1, 0)".into())
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 11] = [
        ("loops-graph spectral pipeline", Duration::from_secs(1), loops_spectral_pipeline),
        ("word calculus vs rewriting oracle", Duration::from_secs(5), word_oracle_equivalence),
        ("trace property at beta = 0", Duration::from_secs(5), trace_property),
        ("gauge invariance", Duration::from_secs(2), gauge_invariance),
        ("partition correspondence", Duration::from_secs(2), partition_correspondence),
        ("symmetry descriptor spot checks", Duration::from_secs(1), descriptor_spot_checks),
        ("model representation soundness", Duration::from_secs(30), model_soundness),
        ("coaction verification", Duration::from_secs(60), coaction_verification),
        ("negative controls", Duration::from_secs(10), negative_controls),
        ("classical group law", Duration::from_secs(10), classical_group_law),
        ("subinvariance and invariance", Duration::from_secs(1), subinvariance_and_invariance),
    ];
    let mut failures = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), budget.as_secs());
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} [{detail}] ({timing})", k + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {name}: {why} ({timing})", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
