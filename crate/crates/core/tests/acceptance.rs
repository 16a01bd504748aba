//! End-to-end acceptance checks. Each test prints one PASS/FAIL line to
//! stderr (uncaptured) and then asserts the same verdict.

use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use uvqc::arealaw::{balanced_cuts, contiguous_cuts, max_ebits, sweep};
use uvqc::circuit::random::{
    random_circuit, random_clifford_circuit, random_product_map, random_self_inverse_circuit,
};
use uvqc::circuit::{swap_test_circuit, Circuit, Gate};
use uvqc::clock::{build_h_prop, gap_lower_bound, walk_sector_eigenvalues, ClockSystem};
use uvqc::pauli::{conjugate_circuit, PauliSum, PauliWord};
use uvqc::simulator::{
    expected_value, run, sampled_expected_value, shots_per_term, spectral_report, stability_bounds,
    StateVector, DEFAULT_EIGEN_DIM,
};
use uvqc::telescope::{ancilla_zero_probability, TelescopeObjective, DEFAULT_CARDINALITY_CAP};
use uvqc::variational::{
    minimize, minimize_with, witness_check, AnsatzSpec, Geometry, OptimizerConfig, Witness,
    DEFAULT_BUDGET,
};
use uvqc::Complex64;

fn verdict(id: u32, name: &str, pass: bool, elapsed: Duration, limit_s: f64, detail: &str) {
    let secs = elapsed.as_secs_f64();
    let ok = pass && secs <= limit_s;
    let line = format!(
        "acceptance {id:>2} {name}: {} ({detail}; {secs:.2}s of {limit_s}s)\n",
        if ok { "PASS" } else { "FAIL" }
    );
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    assert!(ok, "{line}");
}

fn note(text: &str) {
    let _ = std::io::stderr().lock().write_all(text.as_bytes());
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    let amps = (0..1usize << n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    StateVector::from_amplitudes(amps).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Random circuit (n ≤ 6, ≤ 40 gates, ≤ 3 non-Clifford), with a random
/// product input map on odd indices.
fn telescope_fixtures() -> Vec<(Circuit, Option<Circuit>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..50)
        .map(|i| {
            let n = rng.random_range(1..=6);
            let len = rng.random_range(0..=40);
            let t = rng.random_range(0..=3);
            let c = random_circuit(&mut rng, n, len, t);
            let v = (i % 2 == 1).then(|| random_product_map(&mut rng, n));
            (c, v)
        })
        .collect()
}

/// Random self-inverse circuits, n ≤ 3 and 1 ≤ L ≤ 7.
fn clock_fixtures() -> Vec<Circuit> {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    (0..20)
        .map(|_| {
            let n = rng.random_range(1..=3);
            let len = rng.random_range(1..=7);
            random_self_inverse_circuit(&mut rng, n, len)
        })
        .collect()
}

fn identity_circuit(l: usize) -> Circuit {
    Circuit::from_gates(1, vec![Gate::id(0); l]).unwrap()
}

/// `Σ_t |ψ_t> ⊗ |t> / sqrt(L+1)` built gate by gate.
fn history_oracle(register: &Circuit, total_qubits: usize) -> StateVector {
    let n = register.n();
    let l = register.len();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << total_qubits];
    let mut psi = StateVector::zero(n).unwrap();
    let w = 1.0 / ((l + 1) as f64).sqrt();
    for t in 0..=l {
        if t > 0 {
            psi.apply_gate(&register.gates()[t - 1]).unwrap();
        }
        for (r, a) in psi.amplitudes().iter().enumerate() {
            amps[r | (t << n)] = a * w;
        }
    }
    StateVector::from_amplitudes(amps).unwrap()
}

#[test]
fn c01_telescope_spectrum_law() {
    let start = Instant::now();
    let mut prefixes = 0;
    let mut failures = Vec::new();
    for (i, (c, v)) in telescope_fixtures().into_iter().enumerate() {
        let n = c.n();
        let mut t = TelescopeObjective::new(c, v).unwrap();
        loop {
            let cert = t.certify().unwrap();
            prefixes += 1;
            let mut expected: Vec<f64> = Vec::new();
            for w in 0..=n {
                expected.extend(std::iter::repeat_n(w as f64, binomial(n, w)));
            }
            let spectrum_ok = cert.eigenvalues.len() == expected.len()
                && cert
                    .eigenvalues
                    .iter()
                    .zip(&expected)
                    .all(|(a, b)| (a - b).abs() <= 1e-8);
            if !spectrum_ok || (cert.gap - 1.0).abs() > 1e-8 || cert.ground_overlap < 1.0 - 1e-9 {
                failures.push(format!("fixture {i} prefix {}", cert.k));
            }
            if t.is_complete() {
                break;
            }
            t.extend().unwrap();
        }
    }
    verdict(
        1,
        "telescope spectrum law",
        failures.is_empty(),
        start.elapsed(),
        120.0,
        &format!(
            "50 circuits, {prefixes} prefixes, {} failures {:?}",
            failures.len(),
            failures
        ),
    );
}

#[test]
fn c02_clifford_invariance() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mismatches = 0;
    for _ in 0..200 {
        let n = rng.random_range(3..=8);
        let mut h = PauliSum::new(n);
        while h.cardinality() < 30 {
            let x = rng.random_range(0..1u64 << n);
            let z = rng.random_range(0..1u64 << n);
            let coeff = rng.random_range(0.1..1.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let w = PauliWord::from_masks(n, x, z).unwrap();
            if h.coefficient(&w) == 0.0 {
                h.add_term(w, coeff).unwrap();
            }
        }
        let len = rng.random_range(1..=60);
        let c = random_clifford_circuit(&mut rng, n, len);
        let after = conjugate_circuit(&h, &c).unwrap();
        if after.cardinality() != h.cardinality() {
            mismatches += 1;
        }
    }
    verdict(
        2,
        "Clifford cardinality invariance",
        mismatches == 0,
        start.elapsed(),
        30.0,
        &format!("200 circuits on 30-term sums, {mismatches} mismatches"),
    );
}

#[test]
fn c03_stability_sandwich() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut accepted = 0;
    let mut drawn = 0;
    let mut violations = 0;
    while accepted < 10_000 {
        drawn += 1;
        let n = rng.random_range(1..=3);
        let dim = 1usize << n;
        let gap = rng.random_range(0.05..2.0);
        let ground = rng.random_range(0..dim);
        let lambda: Vec<f64> = (0..dim)
            .map(|x| {
                if x == ground {
                    0.0
                } else {
                    gap + rng.random_range(0.0..4.0)
                }
            })
            .collect();
        let true_gap = lambda
            .iter()
            .enumerate()
            .filter(|&(x, _)| x != ground)
            .map(|(_, &l)| l)
            .fold(f64::INFINITY, f64::min);
        let trace: f64 = lambda.iter().sum();
        // Diagonal operator as a sum of Z words.
        let mut h = PauliSum::new(n);
        for mask in 0..dim as u64 {
            let c: f64 = lambda
                .iter()
                .enumerate()
                .map(|(x, l)| {
                    if (x as u64 & mask).count_ones().is_multiple_of(2) {
                        *l
                    } else {
                        -*l
                    }
                })
                .sum::<f64>()
                / dim as f64;
            h.add_term(PauliWord::from_masks(n, 0, mask).unwrap(), c)
                .unwrap();
        }
        let spread = rng.random_range(0.0..1.5);
        let mut amps: Vec<Complex64> = (0..dim)
            .map(|_| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)) * spread
            })
            .collect();
        amps[ground] += Complex64::new(1.0, 0.0);
        let phi = StateVector::from_amplitudes(amps).unwrap();
        let energy = expected_value(&phi, &h).unwrap();
        if energy >= true_gap {
            continue;
        }
        accepted += 1;
        let overlap = phi.probability(ground);
        let (lo, hi) = stability_bounds(energy, true_gap, trace).unwrap();
        if overlap < lo - 1e-9 || overlap > hi + 1e-9 {
            violations += 1;
        }
    }
    verdict(
        3,
        "variational stability sandwich",
        violations == 0,
        start.elapsed(),
        30.0,
        &format!("{accepted} instances below the gap from {drawn} draws, {violations} violations"),
    );
}

#[test]
fn c04_clock_walk_spectrum() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for l in 1..=7 {
        let h = build_h_prop(&identity_circuit(l)).unwrap();
        let got = walk_sector_eigenvalues(&h, 1, l).unwrap();
        let mut want: Vec<f64> = (0..=l)
            .map(|k| 1.0 - (PI * k as f64 / (1 + l) as f64).cos())
            .collect();
        want.sort_by(f64::total_cmp);
        assert_eq!(got.len(), want.len());
        for (a, b) in got.iter().zip(&want) {
            worst = worst.max((a - b).abs());
        }
    }
    verdict(
        4,
        "clock walk spectrum",
        worst <= 1e-9,
        start.elapsed(),
        60.0,
        &format!("L = 1..7, max deviation {worst:.2e}"),
    );
}

#[test]
fn c05_history_ground_state() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut min_overlap: f64 = 1.0;
    for (i, c) in clock_fixtures().into_iter().enumerate() {
        let sys = ClockSystem::new(c, None, 1.0, 1.0, 0).unwrap();
        assert!(sys.l() <= 7);
        let h = sys.build_objective().unwrap();
        let r = spectral_report(&h).unwrap();
        let hist = history_oracle(&sys.register_circuit(), sys.total_qubits());
        let overlap = r.ground_vector.overlap(&hist).unwrap();
        min_overlap = min_overlap.min(overlap);
        let cert = sys.certify().unwrap();
        if r.degenerate || r.eigenvalues[0].abs() > 1e-9 || overlap < 1.0 - 1e-9 || !cert.passed() {
            failures.push(i);
        }
    }
    verdict(
        5,
        "history-state ground state",
        failures.is_empty(),
        start.elapsed(),
        180.0,
        &format!(
            "20 circuits, min overlap 1 - {:.1e}, failures {failures:?}",
            1.0 - min_overlap
        ),
    );
}

#[test]
fn c06_gap_bound() {
    let start = Instant::now();
    let weights = [0.1, 1.0, 10.0];
    let mut cases = 0;
    let mut sound = true;
    let mut violations = Vec::new();
    for (i, c) in clock_fixtures().into_iter().enumerate() {
        for &j in &weights {
            for &k in &weights {
                let sys = ClockSystem::new(c.clone(), None, j, k, 0).unwrap();
                let r = spectral_report(&sys.build_objective().unwrap()).unwrap();
                cases += 1;
                if r.degenerate || r.gap <= 1e-9 {
                    sound = false;
                }
                let bound = gap_lower_bound(sys.l(), j, k);
                if r.gap < bound - 1e-9 {
                    violations.push(format!(
                        "  fixture {i:>2}: n={} L={} J={j} K={k} gap={:.6} bound={:.6}\n",
                        sys.n(),
                        sys.l(),
                        r.gap,
                        bound
                    ));
                }
            }
        }
    }
    if !violations.is_empty() {
        note(&format!(
            "gap bound violation report: {} of {cases} cases fall below max(J, K·π²/(2(L+1)²))\n",
            violations.len()
        ));
        for v in &violations {
            note(v);
        }
    }
    verdict(
        6,
        "clock gap bound",
        sound,
        start.elapsed(),
        180.0,
        &format!(
            "{cases} cases, all gapped and non-degenerate: {sound}; bound held in {}, violations reported: {}",
            cases - violations.len(),
            violations.len()
        ),
    );
}

#[test]
fn c07_padding_overlap() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let mut circuits = vec![Circuit::from_gates(1, [Gate::x(0)]).unwrap()];
    for _ in 0..4 {
        let n = rng.random_range(1..=2);
        let len = rng.random_range(1..=3);
        circuits.push(random_self_inverse_circuit(&mut rng, n, len));
    }
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    for c in circuits {
        let base = ClockSystem::new(c, None, 1.0, 1.0, 0).unwrap();
        let l = base.core_len();
        for pad in [l + 1, 4 * (l + 1), 9 * (l + 1)] {
            let sys = base.with_padding(pad).unwrap();
            let target = 1.0 / (1.0 + (l + 1) as f64 / pad as f64);
            let (_, measured) = sys.output_window_overlap().unwrap();
            // Same overlap read off the certified ground vector.
            let g = spectral_report(&sys.build_objective().unwrap())
                .unwrap()
                .ground_vector;
            let out = sys.output_state().unwrap();
            let n = sys.n();
            let mut amp = Complex64::new(0.0, 0.0);
            for t in (l + 1)..=(l + pad) {
                for (r, o) in out.amplitudes().iter().enumerate() {
                    amp += o.conj() * g.amplitudes()[r | (t << n)];
                }
            }
            let from_ground = amp.norm_sqr() / pad as f64;
            worst = worst
                .max((measured - target).abs())
                .max((from_ground - target).abs());
            checks += 1;
        }
    }
    verdict(
        7,
        "identity padding overlap",
        worst <= 1e-9,
        start.elapsed(),
        60.0,
        &format!("{checks} padded systems, max deviation {worst:.2e}"),
    );
}

#[test]
fn c08_cardinality_scaling() {
    let start = Instant::now();
    let points: Vec<(f64, f64)> = (2..=12)
        .map(|l| {
            let sys = ClockSystem::new(identity_circuit(l), None, 1.0, 1.0, 0).unwrap();
            let card = sys.build_objective().unwrap().cardinality();
            ((l as f64).ln(), (card as f64).ln())
        })
        .collect();
    let m = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let alpha = sxy / sxx;
    let c = (my - alpha * mx).exp();
    verdict(
        8,
        "clock cardinality scaling",
        alpha <= 2.2,
        start.elapsed(),
        60.0,
        &format!("L = 2..12, fit {c:.2}·L^{alpha:.3}"),
    );
}

#[test]
fn c09_swap_test() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let circuit = swap_test_circuit(1).unwrap();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let rho = random_state(&mut rng, 1);
        let tau = random_state(&mut rng, 1);
        let input = StateVector::zero(1)
            .unwrap()
            .tensor(&rho)
            .unwrap()
            .tensor(&tau)
            .unwrap();
        let p0 = ancilla_zero_probability(&run(&circuit, &input).unwrap());
        let inner: Complex64 = rho
            .amplitudes()
            .iter()
            .zip(tau.amplitudes())
            .map(|(a, b)| a.conj() * b)
            .sum();
        worst = worst.max((p0 - (0.5 + 0.5 * inner.norm_sqr())).abs());
    }
    verdict(
        9,
        "swap test",
        worst <= 1e-9,
        start.elapsed(),
        10.0,
        &format!("100 pairs, max deviation {worst:.2e}"),
    );
}

#[test]
fn c10_acceptance_loop() {
    let start = Instant::now();
    let config = OptimizerConfig {
        budget: 200,
        stop_below: Some(1e-12),
        ..OptimizerConfig::default()
    };
    let mut shaped_failures = Vec::new();
    let mut fixtures = telescope_fixtures();
    fixtures.push((uvqc::circuit::bell_circuit(), None));
    for (i, (c, v)) in fixtures.into_iter().enumerate() {
        let h = TelescopeObjective::build(c.clone(), v.clone(), DEFAULT_CARDINALITY_CAP)
            .unwrap()
            .into_h();
        let mut template = v.unwrap_or_else(|| Circuit::new(c.n()));
        for g in c.gates() {
            template.push(g.clone()).unwrap();
        }
        let spec = AnsatzSpec::circuit_shaped(template);
        let best = minimize_with(&h, &spec, 1.0, i as u64, &config).unwrap();
        let witness = Witness::Circuit(spec.circuit(&best.best_params).unwrap());
        let check = witness_check(&h, &witness, 1.0, DEFAULT_EIGEN_DIM).unwrap();
        if !(best.accepted && check.accepted && check.energy <= 1e-9) {
            shaped_failures.push(i);
        }
    }

    let xh = Circuit::from_gates(1, [Gate::x(0), Gate::h(0)]).unwrap();
    let sys = ClockSystem::new(xh, None, 1.0, 1.0, 0).unwrap();
    assert_eq!(sys.l(), 2);
    let h = sys.build_objective().unwrap();
    let gap = spectral_report(&h).unwrap().gap;
    let spec = AnsatzSpec::hardware_efficient(h.n(), 3, Geometry::Line);
    let energies: Vec<f64> = (0..10)
        .map(|seed| {
            minimize(&h, &spec, gap, DEFAULT_BUDGET, seed)
                .unwrap()
                .best_value
        })
        .collect();
    let below = energies.iter().filter(|&&e| e < gap).count();
    let worst = energies.iter().copied().fold(0.0, f64::max);
    verdict(
        10,
        "acceptance loop",
        shaped_failures.is_empty() && below >= 9,
        start.elapsed(),
        300.0,
        &format!(
            "circuit_shaped failures {shaped_failures:?} of 51; hardware_efficient depth 3 \
             below gap {gap:.4} in {below}/10 seeds at budget {DEFAULT_BUDGET}, worst {worst:.2e}"
        ),
    );
}

#[test]
fn c11_area_law_ceiling() {
    let start = Instant::now();
    let mut combos = 0;
    let mut violations = 0;
    let mut worst_excess = f64::NEG_INFINITY;
    for geometry in Geometry::ALL {
        for n in 2..=8 {
            if geometry == Geometry::Grid && Geometry::grid_side(n).is_err() {
                continue;
            }
            let mut cuts = contiguous_cuts(n);
            for m in balanced_cuts(n).unwrap() {
                if !cuts.contains(&m) {
                    cuts.push(m);
                }
            }
            for c in 0..=4 {
                let spec = AnsatzSpec::hardware_efficient(n, c, geometry);
                let r = sweep(&spec, &cuts, 1000, 1000 * n as u64 + c as u64).unwrap();
                assert_eq!(r.bound, max_ebits(n, c));
                combos += 1;
                violations += r.violations;
                worst_excess = worst_excess.max(r.max_rank_ebits - r.bound as f64);
            }
        }
    }
    verdict(
        11,
        "area-law ceiling",
        violations == 0,
        start.elapsed(),
        120.0,
        &format!(
            "{combos} (geometry, n, c) combinations x 1000 draws, {violations} violations, \
             max rank minus bound {worst_excess:.3}"
        ),
    );
}

#[test]
fn c12_shot_calibration() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let state = random_state(&mut rng, 3);
    let h =
        PauliSum::from_strs(&[(0.3, "III"), (0.7, "XZI"), (-0.4, "IYY"), (1.0, "ZZZ")]).unwrap();
    let exact = expected_value(&state, &h).unwrap();
    let (eps, delta) = (0.05, 0.01);
    let hits = (0..1000u64)
        .filter(|&seed| {
            let s = sampled_expected_value(&state, &h, eps, delta, seed).unwrap();
            (s.value - exact).abs() <= eps
        })
        .count();
    let n1 = shots_per_term(&h, eps, delta).unwrap();
    let n2 = shots_per_term(&h, eps / 2.0, delta).unwrap();
    let scaling = n2 + 3 >= 4 * n1 && n2 <= 4 * n1;
    verdict(
        12,
        "shot calibration",
        hits >= 990 && scaling,
        start.elapsed(),
        60.0,
        &format!("{hits}/1000 within eps; shots per term {n1} at eps, {n2} at eps/2"),
    );
}
