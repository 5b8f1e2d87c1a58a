//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion failed.
//!
//! Run with `cargo test -p ergogap --test acceptance`.

use std::time::{Duration, Instant};

use ergogap::correlation::{is_classically_correlated, CC_TOL};
use ergogap::ergotropy::{
    bell_mixture_gap, ergotropic_gap, gap_from_passive_energies, global_ergotropy, local_ergotropy,
    mixed_product_gap, passive_state, werner_gap,
};
use ergogap::hamiltonian::qubit_params;
use ergogap::oracle::{
    correlation_gap_scan, min_energy_product_unitaries, probe_global_passivity, Correlation,
    Ensemble, ScanConfig, SearchConfig,
};
use ergogap::random::{
    haar_unitary, haar_vector, random_hermitian, seeded_rng, simplex_point, SeededRng,
};
use ergogap::state::BellState;
use ergogap::thermal::thermal_report;
use ergogap::{CompositeHamiltonian, DensityMatrix, LocalHamiltonian, Result};
use rand::Rng;

type Criterion = (u32, &'static str, fn() -> (bool, String), Option<Duration>);

struct Outcome {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn uniform(rng: &mut SeededRng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Diagonal qubit Hamiltonians `(e⁰, e¹)` with `e¹ - e⁰ ∈ [0.1, 2]`.
fn random_qubit_energies(rng: &mut SeededRng) -> Vec<f64> {
    let e0 = uniform(rng, -1.0, 1.0);
    vec![e0, e0 + uniform(rng, 0.1, 2.0)]
}

/// Two diagonal qubit Hamiltonians with the first spacing at least the second.
fn ordered_pair(rng: &mut SeededRng) -> CompositeHamiltonian {
    let mut a = random_qubit_energies(rng);
    let mut b = random_qubit_energies(rng);
    if a[1] - a[0] < b[1] - b[0] {
        std::mem::swap(&mut a, &mut b);
    }
    CompositeHamiltonian::from_energies(&[a, b]).unwrap()
}

fn spacings(h: &CompositeHamiltonian) -> Vec<f64> {
    h.locals()
        .iter()
        .map(|l| l.energies()[l.dim() - 1] - l.energies()[0])
        .collect()
}

fn random_local(d: usize, rng: &mut SeededRng) -> LocalHamiltonian {
    LocalHamiltonian::new(random_hermitian(d, rng)).unwrap()
}

/// Gap with the local part taken from the brute-force optimum instead of the
/// marginals.
fn oracle_gap(rho: &DensityMatrix, h: &CompositeHamiltonian, seed: u64) -> Result<(f64, bool)> {
    let cfg = SearchConfig {
        seed,
        ..SearchConfig::default()
    };
    let r = min_energy_product_unitaries(rho, h, &cfg)?;
    let e = rho.expectation(h.total())?;
    Ok((global_ergotropy(rho, h)? - (e - r.best_value), r.converged))
}

fn werner_law() -> (bool, String) {
    let h = CompositeHamiltonian::unit_gap_qubits(2).unwrap();
    let mut worst = 0.0f64;
    for k in 0..=20 {
        let p = k as f64 * 0.05;
        let gap = ergotropic_gap(&DensityMatrix::werner(p).unwrap(), &h)
            .unwrap()
            .ergotropic_gap;
        worst = worst.max((gap - p).abs());
    }
    (
        worst <= 1e-9,
        format!("21 weights, max |gap - p| = {worst:.2e}"),
    )
}

fn general_werner_law() -> (bool, String) {
    let mut rng = seeded_rng(2);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let h = CompositeHamiltonian::from_energies(&[
            random_qubit_energies(&mut rng),
            random_qubit_energies(&mut rng),
        ])
        .unwrap();
        let p = rng.random::<f64>();
        let g = spacings(&h);
        let expected = 0.5 * p * (g[0] + g[1]);
        let gap = ergotropic_gap(&DensityMatrix::werner(p).unwrap(), &h)
            .unwrap()
            .ergotropic_gap;
        let q1 = qubit_params(&h.locals()[0]).unwrap();
        let q2 = qubit_params(&h.locals()[1]).unwrap();
        let closed = werner_gap(p, &q1, &q2).unwrap();
        worst = worst
            .max((gap - expected).abs())
            .max((closed - expected).abs());
    }
    (
        worst <= 1e-9,
        format!("50 energy tuples, max deviation {worst:.2e}"),
    )
}

fn bell_mixture_law() -> (bool, String) {
    let mut rng = seeded_rng(3);
    let unit = CompositeHamiltonian::unit_gap_qubits(2).unwrap();
    let mut worst_unit = 0.0f64;
    let mut worst_general = 0.0f64;
    for _ in 0..100 {
        let v = simplex_point(4, &mut rng);
        let p = [v[0], v[1], v[2], v[3]];
        let rho = DensityMatrix::bell_mixture(p).unwrap();
        let max = p.iter().cloned().fold(f64::MIN, f64::max);
        let min = p.iter().cloned().fold(f64::MAX, f64::min);
        let gap = ergotropic_gap(&rho, &unit).unwrap().ergotropic_gap;
        worst_unit = worst_unit.max((gap - (max - min)).abs());

        let h = CompositeHamiltonian::from_energies(&[
            random_qubit_energies(&mut rng),
            random_qubit_energies(&mut rng),
        ])
        .unwrap();
        let q1 = qubit_params(&h.locals()[0]).unwrap();
        let q2 = qubit_params(&h.locals()[1]).unwrap();
        let display = bell_mixture_gap(p, &q1, &q2).unwrap();
        let general = gap_from_passive_energies(&rho, &h).unwrap();
        worst_general = worst_general.max((display - general).abs());
    }
    (
        worst_unit <= 1e-9 && worst_general <= 1e-9,
        format!(
            "100 mixtures, unit gaps max dev {worst_unit:.2e}, general display vs passive-energy path {worst_general:.2e}"
        ),
    )
}

fn pure_product_nullity() -> (bool, String) {
    let mut rng = seeded_rng(4);
    let shapes: [&[usize]; 6] = [
        &[2, 2],
        &[2, 3],
        &[3, 3],
        &[2, 2, 2],
        &[2, 3, 2],
        &[3, 3, 3],
    ];
    let mut worst = 0.0f64;
    for k in 0..100 {
        let dims = shapes[k % shapes.len()];
        let h = CompositeHamiltonian::compose(
            dims.iter().map(|&d| random_local(d, &mut rng)).collect(),
        )
        .unwrap();
        let locals: Vec<_> = dims.iter().map(|&d| haar_vector(d, &mut rng)).collect();
        let rho = DensityMatrix::pure_product(&locals).unwrap();
        worst = worst.max(ergotropic_gap(&rho, &h).unwrap().ergotropic_gap.abs());
    }
    (
        worst <= 1e-8,
        format!("100 states up to [3,3,3], max |gap| = {worst:.2e}"),
    )
}

fn cc_dichotomy() -> (bool, String) {
    let mut rng = seeded_rng(5);
    let mut worst_nonzero = 0.0f64;
    let mut worst_oracle = 0.0f64;
    let mut worst_zero = 0.0f64;
    let mut all_cc = true;
    for k in 0..20 {
        let h = ordered_pair(&mut rng);
        let g = spacings(&h);

        let l2 = uniform(&mut rng, 0.01, 0.49);
        let nonzero = DensityMatrix::cc_diagonal(&[2, 2], &[1.0 - l2, 0.0, 0.0, l2]).unwrap();
        let gap = ergotropic_gap(&nonzero, &h).unwrap().ergotropic_gap;
        worst_nonzero = worst_nonzero.max((gap - l2 * g[0]).abs());
        if k < 5 {
            let (og, _) = oracle_gap(&nonzero, &h, 50 + k as u64).unwrap();
            worst_oracle = worst_oracle.max((og - l2 * g[0]).abs());
        }

        let mut p = simplex_point(4, &mut rng);
        p.sort_by(f64::total_cmp);
        let zero = DensityMatrix::cc_diagonal(&[2, 2], &p).unwrap();
        worst_zero = worst_zero.max(ergotropic_gap(&zero, &h).unwrap().ergotropic_gap);

        for rho in [&nonzero, &zero] {
            all_cc &= is_classically_correlated(rho, CC_TOL)
                .map(|w| w.is_cc)
                .unwrap_or(false);
        }
    }
    (
        worst_nonzero <= 1e-9 && worst_oracle <= 1e-5 && worst_zero <= 1e-9 && all_cc,
        format!(
            "|gap - λ₂(e¹₁-e⁰₁)| ≤ {worst_nonzero:.2e} (oracle {worst_oracle:.2e}), ascending family gap ≤ {worst_zero:.2e}, all classified CC: {all_cc}"
        ),
    )
}

fn correlation_scan() -> (bool, String) {
    let h = CompositeHamiltonian::unit_gap_qubits(2).unwrap();
    let weights: Vec<f64> = (1..=20).map(|k| k as f64 * 0.05).collect();
    let report = correlation_gap_scan(
        &[
            Ensemble::HaarPure { count: 100 },
            Ensemble::Werner { weights },
        ],
        &h,
        &ScanConfig {
            seed: 6,
            ..ScanConfig::default()
        },
    )
    .unwrap();
    let min_gap = report
        .samples
        .iter()
        .filter(|s| s.correlation == Correlation::Quantum)
        .map(|s| s.gap)
        .fold(f64::INFINITY, f64::min);
    (
        report.passed && report.inconclusive == 0 && report.quantum == 120,
        format!(
            "{} quantum / {} classical / {} inconclusive, smallest quantum gap {min_gap:.3e}",
            report.quantum, report.classical, report.inconclusive
        ),
    )
}

fn oracle_equivalence() -> (bool, String) {
    let mut rng = seeded_rng(7);
    let mut worst = 0.0f64;
    let mut bound_ok = true;
    let mut converged = 0;
    for k in 0..50 {
        let ancilla = 1 + k % 4;
        let rho = DensityMatrix::induced_random_mixed(&[2, 2], ancilla, 700 + k as u64).unwrap();
        let h = CompositeHamiltonian::from_energies(&[
            random_qubit_energies(&mut rng),
            random_qubit_energies(&mut rng),
        ])
        .unwrap();
        let exact: f64 = ergotropic_gap(&rho, &h)
            .unwrap()
            .local_passive_energies
            .iter()
            .sum();
        let r = min_energy_product_unitaries(
            &rho,
            &h,
            &SearchConfig {
                restarts: 32,
                seed: k as u64,
                ..SearchConfig::default()
            },
        )
        .unwrap();
        worst = worst.max((r.best_value - exact).abs());
        bound_ok &= r.best_value >= exact - 1e-12;
        converged += usize::from(r.converged);
    }
    (
        worst <= 1e-5 && bound_ok,
        format!("50 states, max |oracle - exact| = {worst:.2e}, lower bound held: {bound_ok}, converged {converged}/50"),
    )
}

fn passivity_probe() -> (bool, String) {
    let mut rng = seeded_rng(8);
    let shapes: [&[usize]; 2] = [&[2, 2], &[2, 3]];
    let mut worst = f64::NEG_INFINITY;
    for k in 0..20 {
        let dims = shapes[k % 2];
        let h = CompositeHamiltonian::compose(
            dims.iter().map(|&d| random_local(d, &mut rng)).collect(),
        )
        .unwrap();
        let rho = DensityMatrix::induced_random_mixed(dims, 1 + k % 3, 800 + k as u64).unwrap();
        let passive = passive_state(&rho, &h).unwrap();
        worst = worst.max(probe_global_passivity(&passive, &h, 1000, 80 + k as u64).unwrap());
    }
    (
        worst <= 1e-9,
        format!("20 passive states x 1000 unitaries, largest energy drop {worst:.2e}"),
    )
}

fn thermal_paths() -> (bool, String) {
    let mut rng = seeded_rng(9);
    let shapes: [&[usize]; 3] = [&[2, 2], &[2, 3], &[3, 3]];
    let mut worst_paths = 0.0f64;
    let mut worst_product = 0.0f64;
    for k in 0..50 {
        let dims = shapes[k % 3];
        let h = CompositeHamiltonian::compose(
            dims.iter().map(|&d| random_local(d, &mut rng)).collect(),
        )
        .unwrap();
        let rho = DensityMatrix::induced_random_mixed(dims, 2, 900 + k as u64).unwrap();
        let locals: Vec<_> = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                DensityMatrix::induced_random_mixed(&[d], 2, 950 + (2 * k + i) as u64).unwrap()
            })
            .collect();
        let product = DensityMatrix::product_state(&locals).unwrap();
        for beta in [0.5, 1.0, 2.0] {
            let r = thermal_report(&rho, &h, beta).unwrap();
            worst_paths = worst_paths.max((r.gap_free_energy_path - r.thermal_gap).abs());
            let p = thermal_report(&product, &h, beta).unwrap();
            worst_product = worst_product
                .max(p.thermal_gap.abs())
                .max(p.gap_free_energy_path.abs());
        }
    }
    let bell = DensityMatrix::pure(&[2, 2], &BellState::PsiMinus.vector()).unwrap();
    let unit = CompositeHamiltonian::unit_gap_qubits(2).unwrap();
    let b = thermal_report(&bell, &unit, 1.0).unwrap();
    let bell_dev = (b.thermal_gap - 2.0 * std::f64::consts::LN_2)
        .abs()
        .max((b.gap_free_energy_path - 2.0 * std::f64::consts::LN_2).abs());
    (
        worst_paths <= 1e-8 && worst_product <= 1e-9 && bell_dev <= 1e-9,
        format!(
            "path difference {worst_paths:.2e}, product states {worst_product:.2e}, singlet vs 2 ln 2 {bell_dev:.2e}"
        ),
    )
}

fn two_path_equality() -> (bool, String) {
    let mut rng = seeded_rng(10);
    let degenerate: [Vec<f64>; 4] = [
        vec![0.0, 0.0],
        vec![0.0, 1.0, 1.0],
        vec![0.5, 0.5, 0.5],
        vec![-1.0, 0.0],
    ];
    let mut worst = 0.0f64;
    let mut degenerate_cases = 0;
    for k in 0..100 {
        let (dims, h): (Vec<usize>, CompositeHamiltonian) = if k % 2 == 0 {
            // degenerate spectra, rotated out of the computational basis
            let a = degenerate[k / 2 % 4].clone();
            let b = degenerate[(k / 2 + 1) % 4].clone();
            let rotate = |e: &[f64], rng: &mut SeededRng| {
                let d = e.len();
                let u = haar_unitary(d, rng);
                let diag = ergogap::ComplexMatrix::from_diagonal(e);
                LocalHamiltonian::new(diag.conjugate_by(&u).unwrap().hermitian_part()).unwrap()
            };
            degenerate_cases += 1;
            (
                vec![a.len(), b.len()],
                CompositeHamiltonian::compose(vec![rotate(&a, &mut rng), rotate(&b, &mut rng)])
                    .unwrap(),
            )
        } else {
            let dims = vec![2 + k % 2, 2, 2];
            let h = CompositeHamiltonian::compose(
                dims.iter().map(|&d| random_local(d, &mut rng)).collect(),
            )
            .unwrap();
            (dims, h)
        };
        let rho = DensityMatrix::induced_random_mixed(&dims, 1 + k % 4, 1000 + k as u64).unwrap();
        let difference = global_ergotropy(&rho, &h).unwrap() - local_ergotropy(&rho, &h).unwrap();
        let passive_path = gap_from_passive_energies(&rho, &h).unwrap();
        worst = worst.max((difference - passive_path).abs());
    }
    (
        worst <= 1e-9,
        format!("100 states ({degenerate_cases} degenerate Hamiltonians), max path difference {worst:.2e}"),
    )
}

/// The coefficient printed alongside the mixed-product example.
fn printed_mixed_product(alpha: f64, beta: f64, e: &[Vec<f64>]) -> f64 {
    (alpha - beta) * (e[1][0] - e[0][0]) + (alpha + beta) * e[0][1] + (beta - alpha) * e[1][1]
}

fn mixed_product_discrepancy() -> (bool, String) {
    let mut rng = seeded_rng(11);
    let mut worst_oracle = 0.0f64;
    let mut worst_general = 0.0f64;
    let mut printed_dev = 0.0f64;
    for k in 0..20 {
        let alpha = uniform(&mut rng, 0.05, 0.45);
        let beta = uniform(&mut rng, 0.0, alpha - 0.02);
        let h = ordered_pair(&mut rng);
        let g = spacings(&h);
        let energies: Vec<Vec<f64>> = h.locals().iter().map(|l| l.energies().to_vec()).collect();
        let rho = DensityMatrix::product_state(&[
            DensityMatrix::cc_diagonal(&[2], &[alpha, 1.0 - alpha]).unwrap(),
            DensityMatrix::cc_diagonal(&[2], &[beta, 1.0 - beta]).unwrap(),
        ])
        .unwrap();
        let derived = mixed_product_gap(alpha, beta, g[0], g[1]).unwrap();
        let (og, _) = oracle_gap(&rho, &h, 1100 + k as u64).unwrap();
        worst_oracle = worst_oracle.max((derived - og).abs());
        worst_general =
            worst_general.max((derived - ergotropic_gap(&rho, &h).unwrap().ergotropic_gap).abs());
        printed_dev =
            printed_dev.max((printed_mixed_product(alpha, beta, &energies) - derived).abs());
    }
    println!(
        "    note: the derived value (α-β)[(e¹₁-e⁰₁)-(e¹₂-e⁰₂)] is used; the printed display \
         (α-β)(e⁰₂-e⁰₁)+(α+β)e¹₁+(β-α)e¹₂ is not gauge invariant and deviates by up to {printed_dev:.3} on these samples"
    );
    (
        worst_oracle <= 1e-5 && worst_general <= 1e-9,
        format!("20 tuples, derived vs oracle {worst_oracle:.2e}, vs passive-energy path {worst_general:.2e}"),
    )
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "Werner law, unit gaps",
            werner_law,
            Some(Duration::from_secs(1)),
        ),
        (2, "Werner law, general energies", general_werner_law, None),
        (3, "Bell-mixture law", bell_mixture_law, None),
        (4, "pure-product nullity", pure_product_nullity, None),
        (5, "CC dichotomy", cc_dichotomy, None),
        (
            6,
            "quantum correlations imply a gap",
            correlation_scan,
            None,
        ),
        (
            7,
            "oracle equivalence",
            oracle_equivalence,
            Some(Duration::from_secs(300)),
        ),
        (8, "passivity probe", passivity_probe, None),
        (9, "thermal path equivalence", thermal_paths, None),
        (10, "two-path gap equality", two_path_equality, None),
        (11, "mixed-product value", mixed_product_discrepancy, None),
    ];

    let mut outcomes = Vec::new();
    for (id, title, run, budget) in criteria {
        let start = Instant::now();
        let (ok, mut detail) = run();
        let elapsed = start.elapsed();
        let in_budget = budget.is_none_or(|b| elapsed <= b);
        if let Some(b) = budget {
            detail.push_str(&format!(
                "; {:.2}s of {}s budget",
                elapsed.as_secs_f64(),
                b.as_secs()
            ));
        }
        let o = Outcome {
            id,
            title,
            passed: ok && in_budget,
            detail,
            elapsed,
        };
        println!(
            "{} criterion {:>2} {}: {} [{:.2}s]",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail,
            o.elapsed.as_secs_f64()
        );
        outcomes.push(o);
    }

    let failed: Vec<u32> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    println!(
        "{}/{} criteria passed",
        outcomes.len() - failed.len(),
        outcomes.len()
    );
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
