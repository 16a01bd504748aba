use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::word::{mul_words_unchecked, PauliWord, MAX_QUBITS};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Coefficients with magnitude below this are dropped.
pub const DEFAULT_PRUNE_TOL: f64 = 1e-12;

/// Imaginary parts above this make an operator non-Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Default cap on the qubit count of a densified sum.
pub const DEFAULT_DENSE_QUBITS: usize = 12;

/// A Pauli word with a complex coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerm {
    pub word: PauliWord,
    pub coeff: Complex64,
}

/// General (not necessarily Hermitian) complex combination of Pauli words.
///
/// Intermediate products and ladder operators live here; anything handed
/// to a caller as an objective is converted to a [`PauliSum`].
#[derive(Debug, Clone, PartialEq)]
pub struct PauliOperator {
    n: usize,
    terms: BTreeMap<PauliWord, Complex64>,
    tol: f64,
}

impl PauliOperator {
    pub fn new(n: usize) -> Self {
        PauliOperator {
            n,
            terms: BTreeMap::new(),
            tol: DEFAULT_PRUNE_TOL,
        }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = PauliTerm>) -> Result<Self> {
        let mut op = PauliOperator::new(n);
        for t in terms {
            op.add_term(t.word, t.coeff)?;
        }
        Ok(op)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cardinality(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = PauliTerm> + '_ {
        self.terms
            .iter()
            .map(|(w, &c)| PauliTerm { word: *w, coeff: c })
    }

    pub fn add_term(&mut self, word: PauliWord, coeff: Complex64) -> Result<()> {
        check_width(self.n, word.n())?;
        let entry = self.terms.entry(word).or_insert(Complex64::new(0.0, 0.0));
        *entry += coeff;
        if entry.norm() < self.tol {
            self.terms.remove(&word);
        }
        Ok(())
    }

    pub fn add(&self, other: &PauliOperator) -> Result<PauliOperator> {
        check_width(self.n, other.n)?;
        let mut out = self.clone();
        for t in other.iter() {
            out.add_term(t.word, t.coeff)?;
        }
        Ok(out)
    }

    pub fn scaled(&self, s: Complex64) -> PauliOperator {
        let mut out = PauliOperator {
            n: self.n,
            terms: BTreeMap::new(),
            tol: self.tol,
        };
        for (w, c) in &self.terms {
            let v = c * s;
            if v.norm() >= self.tol {
                out.terms.insert(*w, v);
            }
        }
        out
    }

    pub fn adjoint(&self) -> PauliOperator {
        PauliOperator {
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| (*w, c.conj())).collect(),
            tol: self.tol,
        }
    }

    /// Operator product `self * other`.
    pub fn mul(&self, other: &PauliOperator) -> Result<PauliOperator> {
        check_width(self.n, other.n)?;
        let mut out = PauliOperator::new(self.n);
        out.tol = self.tol;
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let (w, ph) = mul_words_unchecked(wa, wb);
                *out.terms.entry(w).or_insert(Complex64::new(0.0, 0.0)) +=
                    ca * cb * ph.to_complex();
            }
        }
        out.prune();
        Ok(out)
    }

    /// Tensor product with `high` placed on the qubits after `self`'s.
    pub fn tensor(&self, high: &PauliOperator) -> Result<PauliOperator> {
        let mut out = PauliOperator::new(self.n + high.n);
        out.tol = self.tol;
        for (wa, ca) in &self.terms {
            for (wb, cb) in &high.terms {
                out.add_term(wa.concat(wb)?, ca * cb)?;
            }
        }
        Ok(out)
    }

    fn prune(&mut self) {
        let tol = self.tol;
        self.terms.retain(|_, c| c.norm() >= tol);
    }

    /// Convert to a real-weighted sum, failing if any coefficient carries an
    /// imaginary part above [`HERMITIAN_TOL`].
    pub fn into_hermitian(self) -> Result<PauliSum> {
        for (w, c) in &self.terms {
            if c.im.abs() > HERMITIAN_TOL * c.norm().max(1.0) {
                return Err(Error::NotHermitian {
                    word: w.to_string(),
                    imag: c.im,
                });
            }
        }
        let mut sum = PauliSum::new(self.n).with_tolerance(self.tol);
        for (w, c) in self.terms {
            if c.re.abs() >= sum.tol {
                sum.terms.insert(w, c.re);
            }
        }
        Ok(sum)
    }

    pub fn to_dense(&self, max_qubits: usize) -> Result<CMatrix> {
        dense_from_terms(self.n, max_qubits, self.iter())
    }
}

/// Hermitian operator as a real-weighted sum of Pauli words.
///
/// Words are kept in canonical order (see [`PauliWord`]'s `Ord`), so
/// iteration and the text serialisation are deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliWord, f64>,
    tol: f64,
}

impl PauliSum {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "qubit count {n} exceeds {MAX_QUBITS}");
        PauliSum {
            n,
            terms: BTreeMap::new(),
            tol: DEFAULT_PRUNE_TOL,
        }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        let t = tol;
        self.terms.retain(|_, c| c.abs() >= t);
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// `c * I` on `n` qubits.
    pub fn identity(n: usize, c: f64) -> Self {
        let mut s = PauliSum::new(n);
        s.add_term(PauliWord::identity(n), c)
            .expect("width matches");
        s
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (PauliWord, f64)>) -> Result<Self> {
        let mut s = PauliSum::new(n);
        for (w, c) in terms {
            s.add_term(w, c)?;
        }
        Ok(s)
    }

    /// Parse `(coefficient, letter string)` pairs, e.g. `[(0.5, "ZI")]`.
    pub fn from_strs(terms: &[(f64, &str)]) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("no terms given".into()))?;
        let n = first.1.len();
        let mut s = PauliSum::new(n);
        for &(c, w) in terms {
            s.add_term(w.parse()?, c)?;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored words, identity included.
    pub fn cardinality(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliWord, f64)> + '_ {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn words(&self) -> impl Iterator<Item = &PauliWord> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, word: &PauliWord) -> f64 {
        self.terms.get(word).copied().unwrap_or(0.0)
    }

    pub fn identity_coefficient(&self) -> f64 {
        self.coefficient(&PauliWord::identity(self.n))
    }

    /// `Tr(H) = 2^n` times the identity coefficient.
    pub fn trace(&self) -> f64 {
        self.identity_coefficient() * 2f64.powi(self.n as i32)
    }

    /// Largest coefficient magnitude among non-identity words.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.iter()
            .filter(|(w, _)| !w.is_identity())
            .map(|(_, c)| c.abs())
            .fold(0.0, f64::max)
    }

    pub fn add_term(&mut self, word: PauliWord, coeff: f64) -> Result<()> {
        check_width(self.n, word.n())?;
        let entry = self.terms.entry(word).or_insert(0.0);
        *entry += coeff;
        if entry.abs() < self.tol {
            self.terms.remove(&word);
        }
        Ok(())
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        check_width(self.n, other.n)?;
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.add_term(*w, c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PauliSum) -> Result<PauliSum> {
        self.add(&other.scaled(-1.0))
    }

    pub fn scaled(&self, s: f64) -> PauliSum {
        let tol = self.tol;
        PauliSum {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (*w, c * s))
                .filter(|(_, c)| c.abs() >= tol)
                .collect(),
            tol,
        }
    }

    pub fn to_operator(&self) -> PauliOperator {
        PauliOperator {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, &c)| (*w, Complex64::new(c, 0.0)))
                .collect(),
            tol: self.tol,
        }
    }

    /// Operator product; generally not Hermitian.
    pub fn mul(&self, other: &PauliSum) -> Result<PauliOperator> {
        self.to_operator().mul(&other.to_operator())
    }

    /// Exact symbolic square `H^2`.
    pub fn square(&self) -> Result<PauliSum> {
        self.mul(self)?.into_hermitian()
    }

    /// `self ⊗ high`, with `high` on the qubits after `self`'s.
    pub fn tensor(&self, high: &PauliSum) -> Result<PauliSum> {
        let mut out = PauliSum::new(self.n + high.n).with_tolerance(self.tol);
        for (wa, ca) in self.iter() {
            for (wb, cb) in high.iter() {
                out.add_term(wa.concat(wb)?, ca * cb)?;
            }
        }
        Ok(out)
    }

    /// Same operator on `n >= self.n` qubits (identity on the new ones).
    pub fn widen(&self, n: usize) -> Result<PauliSum> {
        let mut out = PauliSum::new(n).with_tolerance(self.tol);
        for (w, c) in self.iter() {
            out.terms.insert(w.widen(n)?, c);
        }
        Ok(out)
    }

    /// Dense `2^n x 2^n` matrix. Fails above `max_qubits`.
    pub fn to_dense(&self, max_qubits: usize) -> Result<CMatrix> {
        dense_from_terms(
            self.n,
            max_qubits,
            self.iter().map(|(w, c)| PauliTerm {
                word: *w,
                coeff: Complex64::new(c, 0.0),
            }),
        )
    }

    /// Serialise in the line format `<coefficient> <letters>`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parse the line format; the qubit count comes from the first term.
    pub fn parse(text: &str) -> Result<PauliSum> {
        parse_sum(text, None)
    }

    /// Parse the line format with a known qubit count (allows empty files).
    pub fn parse_with_qubits(text: &str, n: usize) -> Result<PauliSum> {
        parse_sum(text, Some(n))
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, c) in self.iter() {
            writeln!(f, "{c:?} {w}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PauliSum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PauliSum::parse(s)
    }
}

fn parse_sum(text: &str, n: Option<usize>) -> Result<PauliSum> {
    let mut sum: Option<PauliSum> = n.map(PauliSum::new);
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let mut parts = line.split_whitespace();
        let coeff: f64 = parts
            .next()
            .ok_or_else(|| err("missing coefficient".into()))?
            .parse()
            .map_err(|e| err(format!("bad coefficient: {e}")))?;
        let letters = parts
            .next()
            .ok_or_else(|| err("missing Pauli word".into()))?;
        if parts.next().is_some() {
            return Err(err("trailing tokens".into()));
        }
        if !coeff.is_finite() {
            return Err(err("coefficient is not finite".into()));
        }
        let word: PauliWord = letters.parse().map_err(|e: Error| err(e.to_string()))?;
        let s = sum.get_or_insert_with(|| PauliSum::new(word.n()));
        if word.n() != s.n {
            return Err(err(format!(
                "word {letters} has {} qubits, expected {}",
                word.n(),
                s.n
            )));
        }
        s.add_term(word, coeff).map_err(|e| err(e.to_string()))?;
    }
    sum.ok_or_else(|| Error::Parse {
        line: 0,
        msg: "no terms; qubit count cannot be inferred".into(),
    })
}

fn check_width(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}

fn dense_from_terms(
    n: usize,
    max_qubits: usize,
    terms: impl Iterator<Item = PauliTerm>,
) -> Result<CMatrix> {
    if n > max_qubits {
        return Err(Error::CapExceeded {
            what: "dense operator qubits",
            needed: n,
            cap: max_qubits,
        });
    }
    let dim = 1usize << n;
    let mut m = CMatrix::zeros(dim, dim);
    for t in terms {
        let x = t.word.x_mask() as usize;
        let z = t.word.z_mask() as usize;
        let base =
            t.coeff * super::word::Phase::from_exponent(t.word.y_count() as i64).to_complex();
        // P|col> = i^{#Y} (-1)^{|col & z|} |col ^ x>
        for col in 0..dim {
            let sign = if (col & z).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            m[(col ^ x, col)] += base * sign;
        }
    }
    Ok(m)
}
