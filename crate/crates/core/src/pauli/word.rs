use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest register a word can describe.
pub const MAX_WORD_QUBITS: usize = 64;

/// Tensor product of I, X, Y, Z over `n` qubits, held as two bitmasks.
///
/// Bit q of `x`/`z` describes qubit q: I = (0, 0), X = (1, 0), Z = (0, 1),
/// Y = (1, 1). The operator is exactly the letter product, so as a matrix
/// it equals i^{|x∧z|} X^x Z^z. Text form lists qubit 0 first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliWord {
    n: usize,
    x: u64,
    z: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
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

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_WORD_QUBITS, "at most {MAX_WORD_QUBITS} qubits");
        Self { n, x: 0, z: 0 }
    }

    pub fn from_masks(n: usize, x: u64, z: u64) -> Result<Self> {
        if n > MAX_WORD_QUBITS {
            return Err(Error::QubitCapExceeded {
                requested: n,
                max: MAX_WORD_QUBITS,
            });
        }
        if (x | z) & !mask(n) != 0 {
            let q = 63 - ((x | z) & !mask(n)).leading_zeros() as usize;
            return Err(Error::QubitOutOfRange { qubit: q, n_qubits: n });
        }
        Ok(Self { n, x, z })
    }

    /// Word with `letter` on qubit `q` and identity elsewhere.
    pub fn single(n: usize, q: usize, letter: Letter) -> Result<Self> {
        if q >= n {
            return Err(Error::QubitOutOfRange { qubit: q, n_qubits: n });
        }
        let mut w = Self::identity(n);
        w.set(q, letter);
        Ok(w)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn letter(&self, q: usize) -> Letter {
        Letter::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    pub fn set(&mut self, q: usize, letter: Letter) {
        assert!(q < self.n, "qubit {q} outside {}-qubit word", self.n);
        let (x, z) = letter.bits();
        let bit = 1u64 << q;
        self.x = if x { self.x | bit } else { self.x & !bit };
        self.z = if z { self.z | bit } else { self.z & !bit };
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Qubits carrying a non-identity letter.
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> u32 {
        self.support().count_ones()
    }

    /// Number of Y letters.
    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// Letterwise product: `self · other = i^k · result`, returns (k, result).
    pub fn mul(&self, other: &Self) -> (u8, Self) {
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let k = self.y_count() as i64 + other.y_count() as i64 + 2 * (self.z & other.x).count_ones() as i64
            - (x & z).count_ones() as i64;
        (k.rem_euclid(4) as u8, Self { n: self.n, x, z })
    }

    /// Drops the listed qubits and compacts the rest, keeping their order.
    pub fn remove_qubits(&self, qubits: &[usize]) -> Self {
        let mut out = Self::identity(self.n - qubits.len());
        let mut k = 0;
        for q in 0..self.n {
            if qubits.contains(&q) {
                continue;
            }
            out.set(k, self.letter(q));
            k += 1;
        }
        out
    }

    fn code(&self, q: usize) -> u8 {
        self.letter(q) as u8
    }
}

impl Ord for PauliWord {
    /// Lexicographic with I < X < Y < Z, qubit 0 most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            let diff = (self.x ^ other.x) | (self.z ^ other.z);
            if diff == 0 {
                Ordering::Equal
            } else {
                let q = diff.trailing_zeros() as usize;
                self.code(q).cmp(&other.code(q))
            }
        })
    }
}

impl PartialOrd for PauliWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
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

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = s.chars().count();
        if n > MAX_WORD_QUBITS {
            return Err(Error::QubitCapExceeded {
                requested: n,
                max: MAX_WORD_QUBITS,
            });
        }
        let mut w = Self::identity(n);
        for (q, c) in s.chars().enumerate() {
            let letter = match c.to_ascii_uppercase() {
                'I' => Letter::I,
                'X' => Letter::X,
                'Y' => Letter::Y,
                'Z' => Letter::Z,
                _ => {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("invalid Pauli letter {c:?}"),
                    })
                }
            };
            w.set(q, letter);
        }
        Ok(w)
    }
}

/// A Pauli word with a phase i^k, k ∈ {0, 1, 2, 3}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub phase: u8,
    pub word: PauliWord,
}

impl PauliString {
    pub fn new(phase: u8, word: PauliWord) -> Self {
        Self { phase: phase % 4, word }
    }
}

impl From<PauliWord> for PauliString {
    fn from(word: PauliWord) -> Self {
        Self { phase: 0, word }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = ["", "i", "-", "-i"][self.phase as usize];
        write!(f, "{p}{}", self.word)
    }
}

/// Product of two Pauli strings with exact phase.
pub fn multiply(a: &PauliString, b: &PauliString) -> Result<PauliString> {
    if a.word.n != b.word.n {
        return Err(Error::DimensionMismatch(format!(
            "Pauli strings on {} and {} qubits",
            a.word.n, b.word.n
        )));
    }
    let (k, word) = a.word.mul(&b.word);
    Ok(PauliString::new(a.phase + b.phase + k, word))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    fn ps(s: &str) -> PauliString {
        w(s).into()
    }

    #[test]
    fn single_qubit_table() {
        assert_eq!(multiply(&ps("X"), &ps("X")).unwrap(), PauliString::new(0, w("I")));
        assert_eq!(multiply(&ps("X"), &ps("Y")).unwrap(), PauliString::new(1, w("Z")));
        assert_eq!(multiply(&ps("Y"), &ps("X")).unwrap(), PauliString::new(3, w("Z")));
        assert_eq!(multiply(&ps("Y"), &ps("Z")).unwrap(), PauliString::new(1, w("X")));
        assert_eq!(multiply(&ps("Z"), &ps("X")).unwrap(), PauliString::new(1, w("Y")));
        assert_eq!(multiply(&ps("Z"), &ps("Y")).unwrap(), PauliString::new(3, w("X")));
        assert_eq!(multiply(&ps("Y"), &ps("Y")).unwrap(), PauliString::new(0, w("I")));
    }

    #[test]
    fn two_qubit_product() {
        assert_eq!(multiply(&ps("XZ"), &ps("YZ")).unwrap(), PauliString::new(1, w("ZI")));
        assert!(multiply(&ps("X"), &ps("XX")).is_err());
    }

    #[test]
    fn ordering_and_text() {
        let mut v = [w("ZI"), w("IX"), w("YI"), w("XZ"), w("II"), w("IZ")];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["II", "IX", "IZ", "XZ", "YI", "ZI"]);
        assert!("XQ".parse::<PauliWord>().is_err());
    }

    #[test]
    fn commutation() {
        assert!(!w("X").commutes_with(&w("Z")));
        assert!(w("XX").commutes_with(&w("ZZ")));
        assert!(w("XI").commutes_with(&w("IZ")));
    }

    #[test]
    fn remove_qubits_compacts() {
        assert_eq!(w("XYZI").remove_qubits(&[1, 3]), w("XZ"));
    }

    #[test]
    fn masks_are_checked() {
        assert!(PauliWord::from_masks(2, 0b100, 0).is_err());
        assert!(PauliWord::single(3, 3, Letter::X).is_err());
        assert_eq!(PauliWord::from_masks(2, 0b10, 0b11).unwrap(), w("ZY"));
    }
}
