//! Monomials: finite maps from generator index to positive exponent.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::alphabet::Alphabet;

/// A monomial in some alphabet. The empty map is the constant monomial `1`.
///
/// Invariant: no zero exponents are stored. Dimension is always computed from
/// the alphabet, never cached.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(BTreeMap<u32, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn generator(index: u32) -> Self {
        Monomial(BTreeMap::from([(index, 1)]))
    }

    pub fn from_exps<I: IntoIterator<Item = (u32, u32)>>(exps: I) -> Self {
        let mut map = BTreeMap::new();
        for (i, e) in exps {
            if e > 0 {
                *map.entry(i).or_insert(0) += e;
            }
        }
        Monomial(map)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exps(&self) -> &BTreeMap<u32, u32> {
        &self.0
    }

    pub fn exponent(&self, index: u32) -> u32 {
        self.0.get(&index).copied().unwrap_or(0)
    }

    /// Total number of generator factors counted with multiplicity.
    pub fn total_exponent(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn dimension(&self, alphabet: Alphabet) -> u32 {
        self.0
            .iter()
            .map(|(&i, &e)| alphabet.gen_dim(i).saturating_mul(e))
            .fold(0u32, |a, b| a.saturating_add(b))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map = self.0.clone();
        for (&i, &e) in &other.0 {
            *map.entry(i).or_insert(0) += e;
        }
        Monomial(map)
    }

    pub fn pow(&self, n: u32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(&i, &e)| (i, e * n)).collect())
    }

    /// Graded-lex key: dimension first, then the (index, exponent) sequence.
    pub fn graded_key(&self, alphabet: Alphabet) -> (u32, Vec<(u32, u32)>) {
        (
            self.dimension(alphabet),
            self.0.iter().map(|(&i, &e)| (i, e)).collect(),
        )
    }

    pub fn display(&self, alphabet: Alphabet) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|(&i, &e)| {
                if e == 1 {
                    alphabet.gen_name(i)
                } else {
                    format!("{}^{}", alphabet.gen_name(i), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(i, e)| if *e == 1 { format!("g{i}") } else { format!("g{i}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}
