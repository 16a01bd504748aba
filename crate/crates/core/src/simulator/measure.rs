use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use super::StateVector;
use crate::error::{Error, Result};
use crate::pauli::{PauliSum, PauliWord};

fn check_width(s: &StateVector, h: &PauliSum) -> Result<()> {
    if s.n() != h.n() {
        return Err(Error::Dimension {
            expected: h.n(),
            found: s.n(),
        });
    }
    Ok(())
}

/// `<s|P|s>` for a single Pauli word; always real.
pub fn word_expectation(s: &StateVector, word: &PauliWord) -> f64 {
    let x = word.x_mask() as usize;
    let z = word.z_mask() as usize;
    let amps = s.amplitudes();
    // P|i> = i^{#Y} (-1)^{|i & z|} |i ^ x>
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, a) in amps.iter().enumerate() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        let b = amps[i ^ x].conj() * a;
        if (i & z).count_ones() % 2 == 1 {
            acc -= b;
        } else {
            acc += b;
        }
    }
    let phase = match word.y_count() % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    (phase * acc).re
}

/// `<s|H|s>` evaluated term by term.
pub fn expected_value(s: &StateVector, h: &PauliSum) -> Result<f64> {
    check_width(s, h)?;
    let terms: Vec<(&PauliWord, f64)> = h.iter().collect();
    let parts: Vec<f64> = terms
        .par_iter()
        .map(|(w, c)| c * word_expectation(s, w))
        .collect();
    Ok(parts.iter().sum())
}

/// `H|s>` as a raw (unnormalised) amplitude vector.
pub fn apply_sum(s: &StateVector, h: &PauliSum) -> Result<Vec<Complex64>> {
    check_width(s, h)?;
    let amps = s.amplitudes();
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    for (w, c) in h.iter() {
        let x = w.x_mask() as usize;
        let z = w.z_mask() as usize;
        let phase = match w.y_count() % 4 {
            0 => Complex64::new(c, 0.0),
            1 => Complex64::new(0.0, c),
            2 => Complex64::new(-c, 0.0),
            _ => Complex64::new(0.0, -c),
        };
        for (i, a) in amps.iter().enumerate() {
            let sign = if (i & z).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[i ^ x] += phase * a * sign;
        }
    }
    Ok(out)
}

/// `<H^2> - <H>^2`, with `H^2` formed symbolically.
pub fn dispersion(s: &StateVector, h: &PauliSum) -> Result<f64> {
    let mean = expected_value(s, h)?;
    let second = expected_value(s, &h.square()?)?;
    Ok(second - mean * mean)
}

fn check_eps_delta(epsilon: f64, delta: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {epsilon}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "failure probability must lie in (0, 1), got {delta}"
        )));
    }
    Ok(())
}

/// Shots per measured term so that the sampled estimate is within `epsilon`
/// of the exact value with probability at least `1 - delta`.
///
/// With `m` non-identity terms each outcome of term `j` lies in
/// `[-|J_j|, |J_j|]`. Requiring every term to be within `epsilon / m`
/// (Hoeffding, union bound over `m` terms) gives
/// `N = ceil(2 ln(2m/delta) (m max|J|)^2 / epsilon^2)`.
/// Returns zero when there is nothing to measure.
pub fn shots_per_term(h: &PauliSum, epsilon: f64, delta: f64) -> Result<u64> {
    check_eps_delta(epsilon, delta)?;
    let measured: Vec<f64> = h
        .iter()
        .filter(|(w, _)| !w.is_identity())
        .map(|(_, c)| c.abs())
        .collect();
    let m = measured.len() as f64;
    if measured.is_empty() {
        return Ok(0);
    }
    let jmax = measured.iter().cloned().fold(0.0, f64::max);
    let n = 2.0 * (2.0 * m / delta).ln() * (m * jmax).powi(2) / (epsilon * epsilon);
    Ok(n.ceil().max(1.0) as u64)
}

/// Result of a shot-sampled expectation.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledEstimate {
    pub value: f64,
    pub shots_per_term: u64,
    pub measured_terms: usize,
}

/// Shot-sampled `<s|H|s>` with the Hoeffding allocation of [`shots_per_term`].
pub fn sampled_expected_value(
    s: &StateVector,
    h: &PauliSum,
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<SampledEstimate> {
    let shots = shots_per_term(h, epsilon, delta)?;
    sampled_with_shots(s, h, shots, seed)
}

/// Shot-sampled `<s|H|s>` with a fixed number of shots per term.
///
/// Each non-identity term draws its `+1` count from a binomial with
/// probability `(1 + <P>)/2`; term `j` uses stream `j` of the seeded
/// generator, so the estimate does not depend on thread scheduling.
pub fn sampled_with_shots(
    s: &StateVector,
    h: &PauliSum,
    shots: u64,
    seed: u64,
) -> Result<SampledEstimate> {
    check_width(s, h)?;
    let terms: Vec<(usize, &PauliWord, f64)> = h
        .iter()
        .filter(|(w, _)| !w.is_identity())
        .enumerate()
        .map(|(j, (w, c))| (j, w, c))
        .collect();
    if shots == 0 && !terms.is_empty() {
        return Err(Error::InvalidArgument("shot count must be positive".into()));
    }
    let parts: Vec<f64> = terms
        .par_iter()
        .map(|&(j, w, c)| {
            let exact = word_expectation(s, w);
            let p = ((1.0 + exact) / 2.0).clamp(0.0, 1.0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(j as u64);
            let plus = Binomial::new(shots, p)
                .expect("probability clamped to [0, 1]")
                .sample(&mut rng);
            let mean = (2.0 * plus as f64 - shots as f64) / shots as f64;
            c * mean
        })
        .collect();
    Ok(SampledEstimate {
        value: h.identity_coefficient() + parts.iter().sum::<f64>(),
        shots_per_term: shots,
        measured_terms: terms.len(),
    })
}
