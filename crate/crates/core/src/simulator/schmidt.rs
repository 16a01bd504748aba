use crate::error::{Error, Result};
use crate::linalg::{singular_values, CMatrix};

use super::StateVector;

/// Singular values at or below this are treated as zero.
pub const SCHMIDT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ebits {
    /// `log2` of the numerical Schmidt rank.
    pub rank: f64,
    /// Entanglement entropy in bits.
    pub entropy: f64,
}

fn compress(index: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .enumerate()
        .map(|(j, &q)| ((index >> q) & 1) << j)
        .sum()
}

/// Schmidt coefficients across the cut `A | B`, where bit `q` of `cut` puts
/// qubit `q` on side A. Descending.
pub fn schmidt_coefficients(s: &StateVector, cut: u64) -> Result<Vec<f64>> {
    let n = s.n();
    let full = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    if cut & !full != 0 {
        return Err(Error::InvalidArgument(format!(
            "cut mask {cut:#b} names qubits beyond {n}"
        )));
    }
    if cut == 0 || cut == full {
        return Err(Error::InvalidArgument("bipartition is trivial".into()));
    }
    let a: Vec<usize> = (0..n).filter(|q| cut >> q & 1 == 1).collect();
    let b: Vec<usize> = (0..n).filter(|q| cut >> q & 1 == 0).collect();
    let mut m = CMatrix::zeros(1 << a.len(), 1 << b.len());
    for (i, amp) in s.amplitudes().iter().enumerate() {
        m[(compress(i, &a), compress(i, &b))] = *amp;
    }
    Ok(singular_values(&m))
}

pub fn schmidt_ebits(s: &StateVector, cut: u64) -> Result<Ebits> {
    let sv = schmidt_coefficients(s, cut)?;
    let rank = sv.iter().filter(|&&x| x > SCHMIDT_TOL).count().max(1);
    let entropy = sv
        .iter()
        .map(|x| x * x)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum::<f64>()
        .max(0.0);
    Ok(Ebits {
        rank: (rank as f64).log2(),
        entropy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::random::random_circuit;
    use crate::circuit::{bell_circuit, Circuit, Gate};
    use crate::simulator::run_from_zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bell_pair_is_one_ebit() {
        let s = run_from_zero(&bell_circuit()).unwrap();
        let e = schmidt_ebits(&s, 0b01).unwrap();
        assert!((e.rank - 1.0).abs() < 1e-12 && (e.entropy - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_state_is_zero() {
        let c = Circuit::from_gates(3, [Gate::h(0), Gate::ry(1, 0.4), Gate::rx(2, 1.1)]).unwrap();
        let s = run_from_zero(&c).unwrap();
        for cut in 1..7u64 {
            let e = schmidt_ebits(&s, cut).unwrap();
            assert_eq!(e.rank, 0.0);
            assert!(e.entropy.abs() < 1e-9);
        }
    }

    #[test]
    fn two_bell_pairs_across_middle() {
        // Pairs on (0,2) and (1,3); the cut {0,1}|{2,3} severs both.
        let c = Circuit::from_gates(
            4,
            [Gate::h(0), Gate::cnot(0, 2), Gate::h(1), Gate::cnot(1, 3)],
        )
        .unwrap();
        let s = run_from_zero(&c).unwrap();
        let e = schmidt_ebits(&s, 0b0011).unwrap();
        assert!((e.rank - 2.0).abs() < 1e-12 && (e.entropy - 2.0).abs() < 1e-9);
        let e = schmidt_ebits(&s, 0b0101).unwrap();
        assert!(e.rank.abs() < 1e-12);
    }

    #[test]
    fn entropy_never_exceeds_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let s = run_from_zero(&random_circuit(&mut rng, 5, 25, 6)).unwrap();
            for cut in [0b00001u64, 0b00011, 0b10101] {
                let e = schmidt_ebits(&s, cut).unwrap();
                assert!(e.entropy <= e.rank + 1e-9);
            }
        }
    }

    #[test]
    fn trivial_cut_rejected() {
        let s = StateVector::zero(2).unwrap();
        assert!(schmidt_ebits(&s, 0).is_err());
        assert!(schmidt_ebits(&s, 0b11).is_err());
        assert!(schmidt_ebits(&s, 0b100).is_err());
    }
}
