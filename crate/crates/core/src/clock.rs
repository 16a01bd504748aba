//! Clock-register objectives whose ground state is the history state
//! `(L+1)^{-1/2} Σ_t U_t...U_1 V|0> ⊗ |t>`.
//!
//! Register qubits come first (`0..n`), clock qubits after them; the clock
//! holds `t` in plain binary, so index `r | t << n` is register state `r` at
//! time `t`. Every gate is compiled to self-inverse form before use, which
//! makes each propagation term `H_t` an orthogonal projector.
//!
//! When `L + 1` is not a power of two, clock values above `L` are never
//! visited by the walk. They are pushed up by `K` so they stay out of the
//! ground space.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::circuit::{compile_self_inverse, Circuit, Gate};
use crate::error::{Error, Result};
use crate::linalg::eigh;
use crate::pauli::{gate_expansion, PauliOperator, PauliSum, PauliTerm, PauliWord};
use crate::simulator::{
    expected_value, spectral_report_with_cap, StateVector, DEFAULT_EIGEN_DIM, DEFAULT_STATE_QUBITS,
};
use crate::telescope::initial_hamiltonian;

/// `⌈log2(L + 1)⌉`.
pub fn clock_qubits(l: usize) -> usize {
    (l + 1).next_power_of_two().trailing_zeros() as usize
}

/// `max{J, K π² / (2 (L+1)²)}`.
pub fn gap_lower_bound(l: usize, j: f64, k: f64) -> f64 {
    let walk = k * PI * PI / (2.0 * ((l + 1) as f64).powi(2));
    j.max(walk)
}

fn check_clock_value(t: usize, m: usize) -> Result<()> {
    if m >= usize::BITS as usize || t >> m != 0 {
        return Err(Error::InvalidArgument(format!(
            "clock value {t} does not fit in {m} clock qubits"
        )));
    }
    Ok(())
}

/// `|a><b|` on `m` qubits, via `|0><0| = (I+Z)/2`, `|1><1| = (I−Z)/2`,
/// `|0><1| = (X+iY)/2`, `|1><0| = (X−iY)/2` on each qubit.
fn outer(a: usize, b: usize, m: usize) -> Result<PauliOperator> {
    use crate::pauli::Letter;
    let half = Complex64::new(0.5, 0.0);
    let mut op = PauliOperator::from_terms(
        0,
        [PauliTerm {
            word: PauliWord::identity(0),
            coeff: Complex64::new(1.0, 0.0),
        }],
    )?;
    for q in 0..m {
        let (ai, bi) = ((a >> q) & 1, (b >> q) & 1);
        let factors: [(Letter, Complex64); 2] = match (ai, bi) {
            (0, 0) => [(Letter::I, half), (Letter::Z, half)],
            (1, 1) => [(Letter::I, half), (Letter::Z, -half)],
            (0, 1) => [(Letter::X, half), (Letter::Y, Complex64::new(0.0, 0.5))],
            _ => [(Letter::X, half), (Letter::Y, Complex64::new(0.0, -0.5))],
        };
        let local = PauliOperator::from_terms(
            1,
            factors.map(|(l, c)| PauliTerm {
                word: PauliWord::single(1, 0, l),
                coeff: c,
            }),
        )?;
        op = op.tensor(&local)?;
    }
    Ok(op)
}

/// `|t><t|` on `m` clock qubits, i.e. `Π_i ½(I + (−1)^{t_i} Z_i)`.
pub fn clock_projector(t: usize, m: usize) -> Result<PauliSum> {
    check_clock_value(t, m)?;
    outer(t, t, m)?.into_hermitian()
}

/// `|t><t−1| + |t−1><t|` on `m` clock qubits.
pub fn transition_operator(t: usize, m: usize) -> Result<PauliSum> {
    if t == 0 {
        return Err(Error::InvalidArgument("transition needs t >= 1".into()));
    }
    check_clock_value(t, m)?;
    outer(t, t - 1, m)?
        .add(&outer(t - 1, t, m)?)?
        .into_hermitian()
}

/// `H_t = ½(I⊗|t><t| + I⊗|t−1><t−1| − U_t⊗(|t><t−1| + |t−1><t|))` on
/// `n + m` qubits. Requires a self-inverse gate.
pub fn propagation_term(gate: &Gate, t: usize, n: usize, m: usize) -> Result<PauliSum> {
    if !gate.is_self_inverse() {
        return Err(Error::NotSelfInverse(gate.to_string()));
    }
    let u = gate_expansion(gate, n)?;
    let diag = clock_projector(t, m)?.add(&clock_projector(t - 1, m)?)?;
    let hop = transition_operator(t, m)?;
    let idle = PauliSum::identity(n, 1.0).tensor(&diag)?;
    let step = u.tensor(&hop)?;
    Ok(idle.sub(&step)?.scaled(0.5))
}

/// `Σ_t H_t` for a circuit, compiled to self-inverse gates first.
/// The clock width is `⌈log2(L + 1)⌉` for the compiled length `L`.
pub fn build_h_prop(c: &Circuit) -> Result<PauliSum> {
    let compiled = compile_self_inverse(c)?;
    let m = clock_qubits(compiled.len());
    h_prop_on(&compiled, m)
}

fn h_prop_on(compiled: &Circuit, m: usize) -> Result<PauliSum> {
    let n = compiled.n();
    let terms: Vec<PauliSum> = compiled
        .gates()
        .par_iter()
        .enumerate()
        .map(|(i, g)| propagation_term(g, i + 1, n, m))
        .collect::<Result<_>>()?;
    let mut h = PauliSum::new(n + m);
    for t in &terms {
        h = h.add(t)?;
    }
    Ok(h)
}

/// `V(Σ_i |1><1|_i)V† ⊗ |0><0|_clock`.
pub fn build_h_in(n: usize, v: Option<&Circuit>, m: usize) -> Result<PauliSum> {
    initial_hamiltonian(n, v)?.tensor(&clock_projector(0, m)?)
}

/// `Σ_{c > L} I ⊗ |c><c|` over the unused clock values.
pub fn unused_clock_penalty(n: usize, l: usize, m: usize) -> Result<PauliSum> {
    let mut p = PauliSum::new(n + m);
    for c in (l + 1)..(1usize << m) {
        p = p.add(&PauliSum::identity(n, 1.0).tensor(&clock_projector(c, m)?)?)?;
    }
    Ok(p)
}

/// Eigenvalues of a propagation Hamiltonian restricted to register state
/// `|0...0>` and clock values `0..=l`. For identity-gate circuits this block
/// is the whole walk.
pub fn walk_sector_eigenvalues(h_prop: &PauliSum, n: usize, l: usize) -> Result<Vec<f64>> {
    let dense = h_prop.to_dense(h_prop.n())?;
    let idx: Vec<usize> = (0..=l).map(|t| t << n).collect();
    let block =
        crate::linalg::CMatrix::from_fn(idx.len(), idx.len(), |r, c| dense[(idx[r], idx[c])]);
    Ok(eigh(&block).0)
}

/// Register circuit plus clock and weights.
#[derive(Debug, Clone)]
pub struct ClockSystem {
    source: Circuit,
    compiled: Circuit,
    input_map: Option<Circuit>,
    j: f64,
    k: f64,
    padding: usize,
}

impl ClockSystem {
    /// Compile `circuit` to self-inverse form and append `padding`
    /// identity gates.
    pub fn new(
        circuit: Circuit,
        input_map: Option<Circuit>,
        j: f64,
        k: f64,
        padding: usize,
    ) -> Result<Self> {
        if !(j > 0.0 && j.is_finite()) || !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "weights must be positive, got J = {j}, K = {k}"
            )));
        }
        if circuit.n() == 0 {
            return Err(Error::InvalidArgument("register needs a qubit".into()));
        }
        if let Some(v) = &input_map {
            if v.n() != circuit.n() {
                return Err(Error::Dimension {
                    expected: circuit.n(),
                    found: v.n(),
                });
            }
        }
        let compiled = compile_self_inverse(&circuit)?;
        let sys = ClockSystem {
            source: circuit,
            compiled,
            input_map,
            j,
            k,
            padding,
        };
        if sys.total_qubits() > crate::pauli::MAX_QUBITS {
            return Err(Error::TooManyQubits(sys.total_qubits()));
        }
        Ok(sys)
    }

    /// Same system with a different padding length.
    pub fn with_padding(&self, padding: usize) -> Result<Self> {
        ClockSystem::new(
            self.source.clone(),
            self.input_map.clone(),
            self.j,
            self.k,
            padding,
        )
    }

    pub fn source(&self) -> &Circuit {
        &self.source
    }

    pub fn n(&self) -> usize {
        self.source.n()
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn padding(&self) -> usize {
        self.padding
    }

    /// Compiled length before padding.
    pub fn core_len(&self) -> usize {
        self.compiled.len()
    }

    /// Total step count `L`, padding included.
    pub fn l(&self) -> usize {
        self.compiled.len() + self.padding
    }

    pub fn clock_qubits(&self) -> usize {
        clock_qubits(self.l())
    }

    pub fn total_qubits(&self) -> usize {
        self.n() + self.clock_qubits()
    }

    /// Compiled register circuit with the padding appended.
    pub fn register_circuit(&self) -> Circuit {
        let mut c = self.compiled.clone();
        for _ in 0..self.padding {
            c.push(Gate::id(0)).expect("register has qubit 0");
        }
        c
    }

    pub fn gap_lower_bound(&self) -> f64 {
        gap_lower_bound(self.l(), self.j, self.k)
    }

    pub fn h_in(&self) -> Result<PauliSum> {
        build_h_in(self.n(), self.input_map.as_ref(), self.clock_qubits())
    }

    pub fn h_prop(&self) -> Result<PauliSum> {
        h_prop_on(&self.register_circuit(), self.clock_qubits())
    }

    /// `J H_in + K (H_prop + unused-clock penalty)`.
    pub fn build_objective(&self) -> Result<PauliSum> {
        let m = self.clock_qubits();
        let walk = self
            .h_prop()?
            .add(&unused_clock_penalty(self.n(), self.l(), m)?)?;
        self.h_in()?.scaled(self.j).add(&walk.scaled(self.k))
    }

    pub fn input_state(&self) -> Result<StateVector> {
        let zero = StateVector::zero(self.n())?;
        match &self.input_map {
            Some(v) => crate::simulator::run(v, &zero),
            None => Ok(zero),
        }
    }

    /// Register states `U_t...U_1 V|0>` for `t = 0..=L`.
    fn trajectory(&self) -> Result<Vec<StateVector>> {
        let mut s = self.input_state()?;
        let mut out = vec![s.clone()];
        for g in self.register_circuit().gates() {
            s.apply_gate(g)?;
            out.push(s.clone());
        }
        Ok(out)
    }

    /// `(L+1)^{-1/2} Σ_t U_t...U_1 V|0> ⊗ |t>`.
    pub fn history_state(&self) -> Result<StateVector> {
        let total = self.total_qubits();
        if total > DEFAULT_STATE_QUBITS {
            return Err(Error::CapExceeded {
                what: "statevector qubits",
                needed: total,
                cap: DEFAULT_STATE_QUBITS,
            });
        }
        let n = self.n();
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << total];
        for (t, s) in self.trajectory()?.iter().enumerate() {
            for (r, a) in s.amplitudes().iter().enumerate() {
                amps[r | (t << n)] = *a;
            }
        }
        StateVector::from_amplitudes(amps)
    }

    /// Register output after the whole (compiled) circuit.
    pub fn output_state(&self) -> Result<StateVector> {
        Ok(self.trajectory()?.pop().expect("trajectory is never empty"))
    }

    /// Output-window overlap for the current padding `K_pad`.
    ///
    /// The target is the register output tensored with the uniform
    /// superposition of the padded clock values `L_core+1 ..= L_core+K_pad`,
    /// where the register already holds the output. Returns
    /// `(predicted, measured)` with `predicted = 1/(1 + (L_core+1)/K_pad)`
    /// (zero when there is no padding).
    pub fn output_window_overlap(&self) -> Result<(f64, f64)> {
        let core = self.core_len();
        let pad = self.padding;
        if pad == 0 {
            return Ok((0.0, 0.0));
        }
        let predicted = 1.0 / (1.0 + (core + 1) as f64 / pad as f64);
        let history = self.history_state()?;
        let out = self.output_state()?;
        let n = self.n();
        let w = 1.0 / (pad as f64).sqrt();
        let mut amp = Complex64::new(0.0, 0.0);
        for t in (core + 1)..=(core + pad) {
            for (r, o) in out.amplitudes().iter().enumerate() {
                amp += o.conj() * history.amplitudes()[r | (t << n)] * w;
            }
        }
        Ok((predicted, amp.norm_sqr()))
    }

    /// `|<output ⊗ t|history>|^2` for clock value `t`; equals `1/(L+1)` for
    /// any `t` that has run the whole circuit.
    pub fn output_overlap_at(&self, t: usize) -> Result<f64> {
        if t > self.l() {
            return Err(Error::InvalidArgument(format!(
                "clock value {t} beyond L = {}",
                self.l()
            )));
        }
        let history = self.history_state()?;
        let out = self.output_state()?;
        let n = self.n();
        let amp: Complex64 = out
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(r, o)| o.conj() * history.amplitudes()[r | (t << n)])
            .sum();
        Ok(amp.norm_sqr())
    }

    pub fn certify(&self) -> Result<ClockCertification> {
        self.certify_with_cap(DEFAULT_EIGEN_DIM)
    }

    /// Dense certification of the objective against the history state.
    pub fn certify_with_cap(&self, max_dim: usize) -> Result<ClockCertification> {
        let h = self.build_objective()?;
        let report = spectral_report_with_cap(&h, max_dim)?;
        let history = self.history_state()?;
        let (eq18_predicted, eq18_measured) = self.output_window_overlap()?;
        let gap_bound = self.gap_lower_bound();
        Ok(ClockCertification {
            l: self.l(),
            clock_qubits: self.clock_qubits(),
            cardinality: h.cardinality(),
            ground_energy: report.eigenvalues[0],
            gap: report.gap,
            gap_bound,
            bound_holds: report.gap >= gap_bound - 1e-9,
            degenerate: report.degenerate,
            ground_overlap_with_history: report.ground_vector.overlap(&history)?,
            history_energy: expected_value(&history, &h)?,
            eq18_predicted,
            eq18_measured,
        })
    }
}

/// Objective for `sys` padded with `k_pad` identity gates, with the
/// predicted and measured output-window overlaps.
pub fn pad_and_project(sys: &ClockSystem, k_pad: usize) -> Result<(PauliSum, f64, f64)> {
    let padded = sys.with_padding(k_pad)?;
    let (predicted, measured) = padded.output_window_overlap()?;
    Ok((padded.build_objective()?, predicted, measured))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClockCertification {
    pub l: usize,
    pub clock_qubits: usize,
    pub cardinality: usize,
    pub ground_energy: f64,
    pub gap: f64,
    pub gap_bound: f64,
    /// `gap >= gap_bound − 1e-9`. A `false` here is reported, not raised.
    pub bound_holds: bool,
    pub degenerate: bool,
    pub ground_overlap_with_history: f64,
    pub history_energy: f64,
    pub eq18_predicted: f64,
    pub eq18_measured: f64,
}

impl ClockCertification {
    /// Non-degenerate zero ground energy whose ground vector is the history
    /// state.
    pub fn passed(&self) -> bool {
        !self.degenerate
            && self.ground_energy.abs() <= 1e-9
            && self.history_energy.abs() <= 1e-9
            && self.ground_overlap_with_history >= 1.0 - 1e-9
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::random::random_self_inverse_circuit;
    use crate::linalg::{embed, identity, kron, max_abs_diff, CMatrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sum(terms: &[(f64, &str)]) -> PauliSum {
        PauliSum::from_strs(terms).unwrap()
    }

    fn basis_outer(a: usize, b: usize, dim: usize) -> CMatrix {
        let mut m = CMatrix::zeros(dim, dim);
        m[(a, b)] = Complex64::new(1.0, 0.0);
        m
    }

    fn identity_circuit(l: usize) -> Circuit {
        Circuit::from_gates(1, (0..l).map(|_| Gate::id(0))).unwrap()
    }

    #[test]
    fn qubit_counts() {
        let expect = [
            (0, 0),
            (1, 1),
            (2, 2),
            (3, 2),
            (4, 3),
            (7, 3),
            (8, 4),
            (15, 4),
        ];
        for (l, m) in expect {
            assert_eq!(clock_qubits(l), m, "L = {l}");
        }
    }

    #[test]
    fn projector_examples() {
        assert_eq!(
            clock_projector(0, 1).unwrap(),
            sum(&[(0.5, "I"), (0.5, "Z")])
        );
        assert_eq!(
            clock_projector(1, 1).unwrap(),
            sum(&[(0.5, "I"), (-0.5, "Z")])
        );
        for t in 0..8 {
            let d = clock_projector(t, 3).unwrap().to_dense(3).unwrap();
            assert!(max_abs_diff(&d, &basis_outer(t, t, 8)) < 1e-15);
        }
        assert!(clock_projector(2, 1).is_err());
    }

    #[test]
    fn transition_examples() {
        assert_eq!(transition_operator(1, 1).unwrap(), sum(&[(1.0, "X")]));
        let t2 = transition_operator(2, 2).unwrap();
        assert_eq!(t2, sum(&[(0.5, "XX"), (0.5, "YY")]));
        for t in 1..8 {
            let d = transition_operator(t, 3).unwrap().to_dense(3).unwrap();
            let oracle = basis_outer(t, t - 1, 8) + basis_outer(t - 1, t, 8);
            assert!(max_abs_diff(&d, &oracle) < 1e-15, "t = {t}");
        }
        assert!(transition_operator(0, 2).is_err());
        assert!(transition_operator(4, 2).is_err());
    }

    #[test]
    fn terms_are_projectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let c = random_self_inverse_circuit(&mut rng, 2, 5);
        let m = clock_qubits(5);
        for (i, g) in c.gates().iter().enumerate() {
            let d = propagation_term(g, i + 1, 2, m)
                .unwrap()
                .to_dense(5)
                .unwrap();
            assert!(max_abs_diff(&(&d * &d), &d) < 1e-10);
            // Dense oracle for the same term.
            let u = embed(&g.matrix(), g.qubits(), 2);
            let id = identity(4);
            let dim = 1 << m;
            let hop = basis_outer(i + 1, i, dim) + basis_outer(i, i + 1, dim);
            let diag = basis_outer(i + 1, i + 1, dim) + basis_outer(i, i, dim);
            let oracle = (kron(&diag, &id) - kron(&hop, &u)) * Complex64::new(0.5, 0.0);
            assert!(max_abs_diff(&d, &oracle) < 1e-12);
        }
        assert!(propagation_term(&Gate::t(0), 1, 1, 1).is_err());
    }

    #[test]
    fn x_gate_prop_spectrum() {
        let c = Circuit::from_gates(1, [Gate::x(0)]).unwrap();
        let h = build_h_prop(&c).unwrap();
        let (ev, _) = eigh(&h.to_dense(2).unwrap());
        for (a, b) in ev.iter().zip([0.0, 0.0, 1.0, 1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn walk_eigenvalues() {
        let h = build_h_prop(&identity_circuit(3)).unwrap();
        let ev = walk_sector_eigenvalues(&h, 1, 3).unwrap();
        for (k, e) in ev.iter().enumerate() {
            assert!((e - (1.0 - (PI * k as f64 / 4.0).cos())).abs() < 1e-12);
        }
        assert!((ev[1] - 0.292_893_218_813_452_4).abs() < 1e-12);
    }

    #[test]
    fn h_in_example() {
        let h = build_h_in(1, None, 1).unwrap();
        assert_eq!(
            h,
            sum(&[(0.25, "II"), (-0.25, "ZI"), (0.25, "IZ"), (-0.25, "ZZ")])
        );
        let d = h.to_dense(2).unwrap();
        // Kernel contains |ζ>|1> for any ζ and |0>|0>.
        for idx in [0b00, 0b10, 0b11] {
            assert!(d[(idx, idx)].norm() < 1e-15);
        }
        assert!((d[(1, 1)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn l1_x_gate_ground_state() {
        let sys = ClockSystem::new(
            Circuit::from_gates(1, [Gate::x(0)]).unwrap(),
            None,
            1.0,
            1.0,
            0,
        )
        .unwrap();
        let cert = sys.certify().unwrap();
        assert!(cert.passed(), "{cert:?}");
        let s = sys.history_state().unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitudes()[0b00].re - r).abs() < 1e-12);
        assert!((s.amplitudes()[0b11].re - r).abs() < 1e-12);
        // The sector spanned by |1>|0> and |0>|1> is [[J + 1/2, -1/2], [-1/2, 1/2]],
        // whose lower eigenvalue (J + 1 - sqrt(J^2 + 1)) / 2 sets the gap.
        let expect = (2.0 - 2f64.sqrt()) / 2.0;
        assert!((cert.gap - expect).abs() < 1e-10);
        assert!(!cert.bound_holds);
    }

    #[test]
    fn empty_circuit_has_no_clock() {
        let sys = ClockSystem::new(Circuit::new(2), None, 1.0, 1.0, 0).unwrap();
        assert_eq!(sys.clock_qubits(), 0);
        assert_eq!(sys.history_state().unwrap(), StateVector::zero(2).unwrap());
        assert!(sys.certify().unwrap().passed());
    }

    #[test]
    fn history_is_ground_state_with_spectators() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for len in [2, 4, 5, 6] {
            let c = random_self_inverse_circuit(&mut rng, 2, len);
            let sys = ClockSystem::new(c, None, 1.0, 1.0, 0).unwrap();
            let cert = sys.certify().unwrap();
            assert!(cert.passed(), "L = {len}: {cert:?}");
        }
    }

    #[test]
    fn output_overlap_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sys = ClockSystem::new(
            random_self_inverse_circuit(&mut rng, 2, 3),
            None,
            1.0,
            1.0,
            0,
        )
        .unwrap();
        assert!((sys.output_overlap_at(3).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn padding_window_law() {
        let c = Circuit::from_gates(1, [Gate::h(0), Gate::x(0)]).unwrap();
        let sys = ClockSystem::new(c, None, 1.0, 1.0, 0).unwrap();
        for (pad, want) in [(3, 0.5), (27, 0.9)] {
            let (h, predicted, measured) = pad_and_project(&sys, pad).unwrap();
            assert!((predicted - want).abs() < 1e-12);
            assert!((measured - predicted).abs() < 1e-9);
            assert_eq!(h.n(), 1 + clock_qubits(2 + pad));
        }
        let (_, p0, m0) = pad_and_project(&sys, 0).unwrap();
        assert_eq!((p0, m0), (0.0, 0.0));
    }

    #[test]
    fn gap_bound_arithmetic() {
        assert_eq!(gap_lower_bound(3, 1.0, 1.0), 1.0);
        assert!((gap_lower_bound(1, 0.01, 1.0) - PI * PI / 8.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(ClockSystem::new(Circuit::new(1), None, 0.0, 1.0, 0).is_err());
        assert!(ClockSystem::new(Circuit::new(1), None, 1.0, -1.0, 0).is_err());
    }
}
