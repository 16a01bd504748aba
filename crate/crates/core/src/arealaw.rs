//! Entanglement ceilings for shallow circuits: interaction graphs, the
//! `min(⌊n/2⌋, c)` ebit bound, saturating depths per geometry and Monte-Carlo
//! sweeps of ansatz states.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::PauliSum;
use crate::simulator::schmidt_ebits;
use crate::variational::{ansatz_state, AnsatzSpec, Geometry};

/// Largest register for which every balanced cut is enumerated.
pub const MAX_BALANCED_CUT_QUBITS: usize = 16;

/// Slack when comparing a measured rank against the ceiling.
pub const CEILING_TOL: f64 = 1e-9;

/// Which qubit pairs share a term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionGraph {
    n: usize,
    adjacency: Vec<Vec<u8>>,
}

impl InteractionGraph {
    pub fn empty(n: usize) -> Self {
        InteractionGraph {
            n,
            adjacency: vec![vec![0; n]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &[Vec<u8>] {
        &self.adjacency
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j] == 1
    }

    fn connect(&mut self, i: usize, j: usize) {
        if i != j {
            self.adjacency[i][j] = 1;
            self.adjacency[j][i] = 1;
        }
    }

    /// Edges `(i, j)` with `i < j`, row-major.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.has_edge(i, j))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }
}

pub fn interaction_graph(h: &PauliSum) -> InteractionGraph {
    let mut g = InteractionGraph::empty(h.n());
    for word in h.words() {
        let support: Vec<usize> = (0..h.n())
            .filter(|q| word.support() >> q & 1 == 1)
            .collect();
        for (a, &i) in support.iter().enumerate() {
            for &j in &support[a + 1..] {
                g.connect(i, j);
            }
        }
    }
    g
}

/// Most ebits `c` two-qubit gates can place across any cut of `n` qubits.
pub fn max_ebits(n: usize, c: usize) -> usize {
    (n / 2).min(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeometrySpec {
    pub kind: Geometry,
    pub n: usize,
}

impl GeometrySpec {
    pub fn new(kind: Geometry, n: usize) -> Result<Self> {
        if kind == Geometry::Grid {
            Geometry::grid_side(n)?;
        }
        Ok(GeometrySpec { kind, n })
    }

    pub fn saturating_depth(&self) -> Result<f64> {
        saturating_depth(*self)
    }
}

/// Depth at which the ceiling `⌊n/2⌋` can first be reached.
pub fn saturating_depth(g: GeometrySpec) -> Result<f64> {
    let n = g.n as f64;
    Ok(match g.kind {
        Geometry::Line => n / 2.0,
        Geometry::Ring => n / 4.0,
        Geometry::Grid => Geometry::grid_side(g.n)? as f64 / 2.0,
    })
}

/// `{0..k} | {k..n}` for `k = 1..n−1`.
pub fn contiguous_cuts(n: usize) -> Vec<u64> {
    (1..n).map(|k| (1u64 << k) - 1).collect()
}

/// Every bipartition into `⌊n/2⌋` and `⌈n/2⌉` qubits, each listed once.
pub fn balanced_cuts(n: usize) -> Result<Vec<u64>> {
    if n > MAX_BALANCED_CUT_QUBITS {
        return Err(Error::CapExceeded {
            what: "balanced cut enumeration",
            needed: n,
            cap: MAX_BALANCED_CUT_QUBITS,
        });
    }
    if n < 2 {
        return Ok(Vec::new());
    }
    let half = (n / 2) as u32;
    let full = (1u64 << n) - 1;
    Ok((1..full)
        .filter(|m| m.count_ones() == half)
        // Even n: a mask and its complement name the same cut.
        .filter(|m| n % 2 == 1 || m & 1 == 1)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutEbits {
    pub cut: u64,
    pub rank_ebits: f64,
    pub entropy_ebits: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EbitProfile {
    pub cuts: Vec<CutEbits>,
    pub max_rank: f64,
    pub max_entropy: f64,
}

pub fn measure_ebits(spec: &AnsatzSpec, params: &[f64], cuts: &[u64]) -> Result<EbitProfile> {
    let state = ansatz_state(spec, params)?;
    let cuts = cuts
        .iter()
        .map(|&cut| {
            let e = schmidt_ebits(&state, cut)?;
            Ok(CutEbits {
                cut,
                rank_ebits: e.rank,
                entropy_ebits: e.entropy,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_rank = cuts.iter().map(|c| c.rank_ebits).fold(0.0, f64::max);
    let max_entropy = cuts.iter().map(|c| c.entropy_ebits).fold(0.0, f64::max);
    Ok(EbitProfile {
        cuts,
        max_rank,
        max_entropy,
    })
}

/// Equal-width bins on `[0, hi]`; the last bin is closed.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub hi: f64,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn new(hi: f64, bins: usize) -> Self {
        Histogram {
            hi,
            counts: vec![0; bins.max(1)],
        }
    }

    pub fn bin_width(&self) -> f64 {
        self.hi / self.counts.len() as f64
    }

    pub fn insert(&mut self, x: f64) {
        let bins = self.counts.len();
        let i = if self.hi > 0.0 {
            ((x / self.bin_width()).floor().max(0.0) as usize).min(bins - 1)
        } else {
            0
        };
        self.counts[i] += 1;
    }

    /// `(lower edge, count)` per bin.
    pub fn bins(&self) -> Vec<(f64, usize)> {
        let w = self.bin_width();
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as f64 * w, c))
            .collect()
    }
}

/// Per-cut maxima over all draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutSummary {
    pub cut: u64,
    pub max_rank_ebits: f64,
    pub max_entropy_ebits: f64,
    pub mean_entropy_ebits: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub n: usize,
    pub two_qubit_gates: usize,
    pub draws: usize,
    pub seed: u64,
    pub bound: usize,
    pub cuts: Vec<CutSummary>,
    pub max_rank_ebits: f64,
    pub max_entropy_ebits: f64,
    /// Draws whose rank exceeded the bound on some cut.
    pub violations: usize,
    /// Per-draw maximum entropy over the cuts, in tenth-of-an-ebit bins.
    pub histogram: Histogram,
}

impl SweepReport {
    pub fn within_bound(&self) -> bool {
        self.violations == 0
    }
}

/// Uniform angles for draw `index`, reproducible from `seed` alone. The
/// range covers the full period of every supported rotation.
pub fn random_parameters(count: usize, seed: u64, index: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    (0..count)
        .map(|_| rng.random_range(0.0..2.0 * TAU))
        .collect()
}

/// Random-parameter sweep of `spec` across `cuts`. The bound counts every
/// two-qubit gate as depth one.
pub fn sweep(spec: &AnsatzSpec, cuts: &[u64], draws: usize, seed: u64) -> Result<SweepReport> {
    let template = spec.template()?;
    let n = template.n();
    let count = template.parameter_slots().len();
    let two_qubit_gates = template
        .gates()
        .iter()
        .filter(|g| g.qubits().len() >= 2)
        .count();
    let bound = max_ebits(n, two_qubit_gates);
    let profiles = (0..draws)
        .into_par_iter()
        .map(|d| measure_ebits(spec, &random_parameters(count, seed, d as u64), cuts))
        .collect::<Result<Vec<_>>>()?;

    let mut summaries: Vec<CutSummary> = cuts
        .iter()
        .map(|&cut| CutSummary {
            cut,
            max_rank_ebits: 0.0,
            max_entropy_ebits: 0.0,
            mean_entropy_ebits: 0.0,
        })
        .collect();
    let mut histogram = Histogram::new((n / 2) as f64, 10 * (n / 2));
    let mut violations = 0;
    for p in &profiles {
        for (s, c) in summaries.iter_mut().zip(&p.cuts) {
            s.max_rank_ebits = s.max_rank_ebits.max(c.rank_ebits);
            s.max_entropy_ebits = s.max_entropy_ebits.max(c.entropy_ebits);
            s.mean_entropy_ebits += c.entropy_ebits;
        }
        if p.max_rank > bound as f64 + CEILING_TOL {
            violations += 1;
        }
        histogram.insert(p.max_entropy);
    }
    if draws > 0 {
        for s in &mut summaries {
            s.mean_entropy_ebits /= draws as f64;
        }
    }
    Ok(SweepReport {
        n,
        two_qubit_gates,
        draws,
        seed,
        bound,
        max_rank_ebits: summaries
            .iter()
            .map(|s| s.max_rank_ebits)
            .fold(0.0, f64::max),
        max_entropy_ebits: summaries
            .iter()
            .map(|s| s.max_entropy_ebits)
            .fold(0.0, f64::max),
        cuts: summaries,
        violations,
        histogram,
    })
}
