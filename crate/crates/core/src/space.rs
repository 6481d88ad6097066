//! The graded module `H`: a coefficient ring plus a finite table of basis
//! letters, and words over those letters (basis tensors of `H^{⊗k}`).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Index into a [`GeneratorTable`]. Letter `0` is always the unit `1`.
pub type Letter = u8;

pub const UNIT: Letter = 0;

/// Basis letters of `H` with their (possibly negative) degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorTable {
    names: Vec<String>,
    degrees: Vec<i64>,
}

impl GeneratorTable {
    /// Builds `{1} ∪ generators`; the unit is added implicitly at degree 0.
    pub fn new<S: AsRef<str>>(generators: &[(S, i64)]) -> Result<GeneratorTable> {
        let mut names = vec!["1".to_string()];
        let mut degrees = vec![0];
        for (name, degree) in generators {
            let name = name.as_ref();
            validate_name(name)?;
            if names.iter().any(|n| n == name) {
                return Err(Error::InvalidGenerators(format!("duplicate generator `{name}`")));
            }
            names.push(name.to_string());
            degrees.push(*degree);
        }
        if names.len() < 2 {
            return Err(Error::InvalidGenerators("at least one generator besides 1 is required".into()));
        }
        if names.len() > Letter::MAX as usize {
            return Err(Error::InvalidGenerators("too many generators".into()));
        }
        Ok(GeneratorTable { names, degrees })
    }

    /// Number of basis letters, unit included.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter as usize]
    }

    pub fn degree(&self, letter: Letter) -> i64 {
        self.degrees[letter as usize]
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as Letter)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.names.len() as Letter
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, i64)> {
        self.names.iter().map(String::as_str).zip(self.degrees.iter().copied())
    }
}

fn validate_name(name: &str) -> Result<()> {
    let bad = name.is_empty()
        || name == "1"
        || name == "x"
        || name.chars().next().is_some_and(|c| c.is_ascii_digit())
        || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
    if bad {
        return Err(Error::InvalidGenerators(format!("`{name}` is not a usable generator name")));
    }
    Ok(())
}

/// A basis tensor `a₁|a₂|⋯|a_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub(crate) Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn units(k: usize) -> Word {
        Word(vec![UNIT; k])
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Word {
        Word(letters)
    }
}

/// A graded module `H` over a coefficient ring.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Space {
    ring: Ring,
    generators: GeneratorTable,
}

impl Space {
    pub fn new(ring: Ring, generators: GeneratorTable) -> Arc<Space> {
        Arc::new(Space { ring, generators })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &GeneratorTable {
        &self.generators
    }

    pub fn degree(&self, letter: Letter) -> i64 {
        self.generators.degree(letter)
    }

    pub fn word_degree(&self, letters: &[Letter]) -> i64 {
        letters.iter().map(|&l| self.generators.degree(l)).sum()
    }

    /// Parses `y|1|y`. A bare `1` is the length-one unit word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let letters = text
            .split('|')
            .map(|part| self.generators.letter(part.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word(letters))
    }

    pub fn format_word(&self, word: &Word) -> String {
        self.format_letters(word.letters())
    }

    pub fn format_letters(&self, letters: &[Letter]) -> String {
        let mut out = String::new();
        for (i, &l) in letters.iter().enumerate() {
            if i > 0 {
                out.push('|');
            }
            out.push_str(self.generators.name(l));
        }
        out
    }

    /// `(#letters)^k`.
    pub fn basis_size(&self, k: usize) -> u128 {
        (self.generators.len() as u128).saturating_pow(k as u32)
    }

    /// Every basis word of `H^{⊗k}` in lexicographic order.
    pub fn basis(&self, k: usize) -> BasisIter {
        BasisIter {
            radix: self.generators.len() as Letter,
            next: Some(vec![UNIT; k]),
        }
    }

    pub(crate) fn same_as(&self, other: &Space) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H = <")?;
        for (i, (name, degree)) in self.generators.entries().skip(1).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name}:{degree}")?;
        }
        write!(f, "> over {}", self.ring)
    }
}

/// Odometer over `{0..radix}^k`.
pub struct BasisIter {
    radix: Letter,
    next: Option<Vec<Letter>>,
}

impl Iterator for BasisIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut successor = current.clone();
        let mut carried = true;
        for slot in successor.iter_mut().rev() {
            if *slot + 1 < self.radix {
                *slot += 1;
                carried = false;
                break;
            }
            *slot = 0;
        }
        if !carried {
            self.next = Some(successor);
        }
        Some(Word(current))
    }
}
