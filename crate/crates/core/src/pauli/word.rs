use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum qubit count representable by a packed word.
pub const MAX_QUBITS: usize = 64;

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    /// Index in the order I, X, Y, Z.
    pub fn index(self) -> u8 {
        match self {
            Letter::I => 0,
            Letter::X => 1,
            Letter::Y => 2,
            Letter::Z => 3,
        }
    }

    pub fn from_index(i: u8) -> Self {
        match i & 3 {
            0 => Letter::I,
            1 => Letter::X,
            2 => Letter::Y,
            _ => Letter::Z,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

/// Power of `i` in `{1, i, -1, -i}`, stored as the exponent mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(e: i64) -> Self {
        Phase(e.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// Tensor product of single-qubit Paulis on `n` qubits, packed as two masks.
///
/// Bit `q` of `x`/`z` describes qubit `q`; `Y` has both bits set and denotes
/// the Hermitian `Y`, not `XZ`. Words order by `(z, x)`, Z-mask major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliWord {
    n: usize,
    x: u64,
    z: u64,
}

impl Ord for PauliWord {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.z, self.x, self.n).cmp(&(other.z, other.x, other.n))
    }
}

impl PartialOrd for PauliWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn mask_for(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "qubit count {n} exceeds {MAX_QUBITS}");
        PauliWord { n, x: 0, z: 0 }
    }

    pub fn from_masks(n: usize, x: u64, z: u64) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        let m = mask_for(n);
        if x & !m != 0 || z & !m != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask bits set beyond qubit count {n}"
            )));
        }
        Ok(PauliWord { n, x, z })
    }

    /// Word with a single non-identity letter.
    pub fn single(n: usize, qubit: usize, letter: Letter) -> Self {
        assert!(qubit < n, "qubit {qubit} out of range for {n} qubits");
        let mut w = PauliWord::identity(n);
        w.set(qubit, letter);
        w
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Self> {
        if letters.len() > MAX_QUBITS {
            return Err(Error::TooManyQubits(letters.len()));
        }
        let mut w = PauliWord::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            w.set(q, l);
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    /// Qubits where the word acts non-trivially.
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> u32 {
        self.support().count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.support() == 0
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits((self.x >> qubit) & 1 == 1, (self.z >> qubit) & 1 == 1)
    }

    pub fn set(&mut self, qubit: usize, letter: Letter) {
        let (xb, zb) = letter.bits();
        let bit = 1u64 << qubit;
        self.x = (self.x & !bit) | if xb { bit } else { 0 };
        self.z = (self.z & !bit) | if zb { bit } else { 0 };
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.n).map(|q| self.letter(q)).collect()
    }

    /// Number of `Y` letters.
    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Whether two words commute.
    pub fn commutes_with(&self, other: &PauliWord) -> bool {
        // Letters anticommute exactly where they differ and are both non-identity.
        let differ = ((self.x ^ other.x) | (self.z ^ other.z)) & self.support() & other.support();
        differ.count_ones().is_multiple_of(2)
    }

    /// Concatenate `self` (low qubits) with `high` (qubits `n..n+high.n`).
    pub fn concat(&self, high: &PauliWord) -> Result<PauliWord> {
        let n = self.n + high.n;
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        let shift = |m: u64| if self.n >= 64 { 0 } else { m << self.n };
        Ok(PauliWord {
            n,
            x: self.x | shift(high.x),
            z: self.z | shift(high.z),
        })
    }

    /// Widen to `n` qubits by padding identities on the high end.
    pub fn widen(&self, n: usize) -> Result<PauliWord> {
        if n < self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: n,
            });
        }
        PauliWord::from_masks(n, self.x, self.z)
    }

    /// Letters restricted to `qubits`, packed as a base-4 local index
    /// (digit `j` is the letter on `qubits[j]`).
    pub fn local_index(&self, qubits: &[usize]) -> usize {
        qubits
            .iter()
            .enumerate()
            .map(|(j, &q)| (self.letter(q).index() as usize) << (2 * j))
            .sum()
    }

    /// Replace the letters on `qubits` by those of a base-4 local index.
    pub fn with_local(&self, qubits: &[usize], local: usize) -> PauliWord {
        let mut w = *self;
        for (j, &q) in qubits.iter().enumerate() {
            w.set(q, Letter::from_index(((local >> (2 * j)) & 3) as u8));
        }
        w
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            write!(f, "{}", self.letter(q).as_char())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| {
                Letter::from_char(c).ok_or_else(|| {
                    Error::InvalidArgument(format!("invalid Pauli letter {c:?} in {s:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PauliWord::from_letters(&letters)
    }
}

/// Multiply two words: `a * b = phase * word`.
pub fn mul_words(a: &PauliWord, b: &PauliWord) -> Result<(PauliWord, Phase)> {
    if a.n != b.n {
        return Err(Error::Dimension {
            expected: a.n,
            found: b.n,
        });
    }
    Ok(mul_words_unchecked(a, b))
}

pub(crate) fn mul_words_unchecked(a: &PauliWord, b: &PauliWord) -> (PauliWord, Phase) {
    let (x1, z1, x2, z2) = (a.x, a.z, b.x, b.z);
    let xl = x1 & !z1;
    let yl = x1 & z1;
    let zl = !x1 & z1;
    let xr = x2 & !z2;
    let yr = x2 & z2;
    let zr = !x2 & z2;
    // Cyclic order X -> Y -> Z -> X contributes +i, anticyclic -i.
    let plus = (xl & yr) | (yl & zr) | (zl & xr);
    let minus = (yl & xr) | (zl & yr) | (xl & zr);
    let e = plus.count_ones() as i64 - minus.count_ones() as i64;
    (
        PauliWord {
            n: a.n,
            x: x1 ^ x2,
            z: z1 ^ z2,
        },
        Phase::from_exponent(e),
    )
}
