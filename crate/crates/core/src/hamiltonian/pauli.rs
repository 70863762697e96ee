//! Pauli strings and weighted sums of them.
//!
//! Qubit `q` of a string acts on bit `q` of a computational basis index, so
//! basis state `b` has qubit 0 in its least significant bit.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Tensor product of single-qubit Paulis on `n` qubits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct PauliString {
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            letters: vec![Pauli::I; n],
        }
    }

    pub fn from_letters(letters: Vec<Pauli>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::invalid("letters", "a Pauli string needs at least one qubit"));
        }
        Ok(PauliString { letters })
    }

    /// Identity everywhere except the listed `(qubit, letter)` pairs.
    pub fn with_letters(n: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut s = PauliString::identity(n);
        for &(q, p) in ops {
            if q >= n {
                return Err(Error::invalid(
                    "letters",
                    format!("qubit {q} out of range for {n} qubits"),
                ));
            }
            s.letters[q] = p;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    /// Bit-mask form, usable when the string fits a machine word.
    pub fn mask(&self) -> Result<PauliMask> {
        if self.n() > usize::BITS as usize - 1 {
            return Err(Error::capacity(self.n()));
        }
        let mut m = PauliMask::default();
        for (q, p) in self.letters.iter().enumerate() {
            let bit = 1usize << q;
            match p {
                Pauli::I => {}
                Pauli::X => m.x |= bit,
                Pauli::Z => m.z |= bit,
                Pauli::Y => {
                    m.x |= bit;
                    m.z |= bit;
                }
            }
        }
        Ok(m)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.letters {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| {
                Pauli::from_symbol(c)
                    .ok_or_else(|| Error::invalid("letters", format!("unknown Pauli letter {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PauliString::from_letters(letters)
    }
}

impl From<PauliString> for String {
    fn from(s: PauliString) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for PauliString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A Pauli string as X and Z bit masks; Y sets both bits.
///
/// `P|b> = phase(b) |b ^ x>` with `phase(b) = i^{#Y} (-1)^{popcount(b & z)}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PauliMask {
    pub x: usize,
    pub z: usize,
}

impl PauliMask {
    /// Pauli with index `k` in `0..4^n`: low `n` bits are the X mask, high bits the Z mask.
    pub fn from_index(k: usize, n: usize) -> Self {
        let d = 1usize << n;
        PauliMask {
            x: k & (d - 1),
            z: k >> n,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Image of basis state `b`: `(b ^ x, phase)`.
    pub fn apply(&self, b: usize) -> (usize, Complex64) {
        let phase = match self.y_count() % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        let phase = if (b & self.z).count_ones() % 2 == 1 {
            -phase
        } else {
            phase
        };
        (b ^ self.x, phase)
    }
}

/// `H = identity_coefficient * I + sum_j a_j P_j` over distinct non-identity strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliDecomposition {
    n: usize,
    terms: BTreeMap<PauliString, f64>,
    identity_coefficient: f64,
}

impl PauliDecomposition {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n", "qubit count must be positive"));
        }
        Ok(PauliDecomposition {
            n,
            terms: BTreeMap::new(),
            identity_coefficient: 0.0,
        })
    }

    /// Adds `coefficient * string`, merging with an existing equal string.
    /// Terms whose merged coefficient is exactly zero are dropped.
    pub fn add_term(&mut self, string: PauliString, coefficient: f64) -> Result<()> {
        if string.n() != self.n {
            return Err(Error::invalid(
                "terms",
                format!("string {string} has {} qubits, expected {}", string.n(), self.n),
            ));
        }
        if !coefficient.is_finite() {
            return Err(Error::invalid("terms", format!("coefficient of {string} is not finite")));
        }
        if string.is_identity() {
            self.identity_coefficient += coefficient;
            return Ok(());
        }
        match self.terms.entry(string) {
            Entry::Vacant(v) => {
                if coefficient != 0.0 {
                    v.insert(coefficient);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if *o.get() == 0.0 {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    pub fn add_identity(&mut self, coefficient: f64) -> Result<()> {
        if !coefficient.is_finite() {
            return Err(Error::invalid("identity_coefficient", "not finite"));
        }
        self.identity_coefficient += coefficient;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, f64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn coefficient(&self, string: &PauliString) -> Option<f64> {
        self.terms.get(string).copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Equals `Tr[H] / d`.
    pub fn identity_coefficient(&self) -> f64 {
        self.identity_coefficient
    }

    /// Sum of squared coefficients over the non-identity strings.
    pub fn norm2_squared(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum()
    }

    /// `Tr[H^2] / d`, which also counts the identity weight.
    pub fn frobenius_squared(&self) -> f64 {
        self.norm2_squared() + self.identity_coefficient * self.identity_coefficient
    }
}

/// Free-function form of [`PauliDecomposition::norm2_squared`].
pub fn norm2_squared(decomp: &PauliDecomposition) -> f64 {
    decomp.norm2_squared()
}
