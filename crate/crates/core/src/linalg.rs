//! Small dense linear-algebra helpers shared by the oracles and certifiers.
//!
//! Basis ordering is little-endian throughout: qubit `i` is bit `i` of a
//! computational-basis index.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Kronecker product `a ⊗ b` where `b` occupies the low-order bits.
///
/// This matches the little-endian convention: `kron(high, low)`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// 2x2 matrix of a single Pauli letter (0 = I, 1 = X, 2 = Y, 3 = Z).
pub fn pauli_matrix(letter: u8) -> CMatrix {
    match letter {
        0 => CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ONE]),
        1 => CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        2 => CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        3 => CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        _ => panic!("pauli letter index out of range: {letter}"),
    }
}

/// Embed a `k`-qubit local matrix acting on `qubits` into an `n`-qubit
/// operator. Local index bit `j` corresponds to `qubits[j]`.
pub fn embed(local: &CMatrix, qubits: &[usize], n: usize) -> CMatrix {
    let dim = 1usize << n;
    let k = qubits.len();
    assert_eq!(local.nrows(), 1 << k);
    let mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
    let local_index = |full: usize| -> usize {
        qubits
            .iter()
            .enumerate()
            .map(|(j, &q)| ((full >> q) & 1) << j)
            .sum()
    };
    let mut out = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let lc = local_index(col);
        let rest = col & !mask;
        for lr in 0..(1usize << k) {
            let v = local[(lr, lc)];
            if v == ZERO {
                continue;
            }
            let mut row = rest;
            for (j, &q) in qubits.iter().enumerate() {
                row |= ((lr >> j) & 1) << q;
            }
            out[(row, col)] += v;
        }
    }
    out
}

/// Largest elementwise deviation between two matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Returns the eigenvalues and a matrix whose column `i` is the
/// eigenvector of eigenvalue `i`.
pub fn eigh(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let dim = h.nrows();
    if dim == 0 {
        return (vec![], CMatrix::zeros(0, 0));
    }
    // Symmetrise to scrub rounding asymmetry before the tridiagonal reduction.
    let sym = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(dim, dim);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Singular values of a general complex matrix, descending.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return vec![];
    }
    let svd = m.clone().svd(false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}
