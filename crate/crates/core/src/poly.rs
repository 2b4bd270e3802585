//! Sparse graded polynomials with exact rational coefficients.
//!
//! A `GradedPoly` lives in a fixed alphabet and carries a dimension bound `D`:
//! every term of dimension greater than `D` is identically discarded, and all
//! binary operations re-truncate to the minimum bound of their inputs.
//!
//! Invariants:
//! - no zero coefficients are stored,
//! - no stored monomial has dimension above `dim_bound`,
//! - binary operations require equal alphabets and fail otherwise.

use num_traits::Zero;
use std::collections::BTreeMap;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::rational::{self, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    alphabet: Alphabet,
    dim_bound: u32,
    terms: BTreeMap<Monomial, Rat>,
}

impl GradedPoly {
    pub fn zero(alphabet: Alphabet, dim_bound: u32) -> Self {
        GradedPoly {
            alphabet,
            dim_bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(alphabet: Alphabet, dim_bound: u32, c: Rat) -> Self {
        let mut p = Self::zero(alphabet, dim_bound);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one(alphabet: Alphabet, dim_bound: u32) -> Self {
        Self::constant(alphabet, dim_bound, rational::rat(1))
    }

    pub fn int(alphabet: Alphabet, dim_bound: u32, n: i64) -> Self {
        Self::constant(alphabet, dim_bound, rational::rat(n))
    }

    /// The generator `g_index`, or zero when its dimension exceeds the bound.
    pub fn generator(alphabet: Alphabet, dim_bound: u32, index: u32) -> Self {
        Self::from_terms(
            alphabet,
            dim_bound,
            [(Monomial::generator(index), rational::rat(1))],
        )
    }

    /// Build from terms, merging duplicates, dropping zeros and over-bound
    /// monomials.
    pub fn from_terms<I>(alphabet: Alphabet, dim_bound: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut map: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() || m.dimension(alphabet) > dim_bound {
                continue;
            }
            let entry = map.entry(m).or_insert_with(Rat::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        GradedPoly {
            alphabet,
            dim_bound,
            terms: map,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn dim_bound(&self) -> u32 {
        self.dim_bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one())
    }

    /// Re-truncate to a smaller dimension bound. Raising the bound instead
    /// treats the stored polynomial as exact and only widens the contract.
    pub fn truncated(&self, dim_bound: u32) -> Self {
        if dim_bound >= self.dim_bound {
            let mut p = self.clone();
            p.dim_bound = dim_bound;
            return p;
        }
        GradedPoly {
            alphabet: self.alphabet,
            dim_bound,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.dimension(self.alphabet) <= dim_bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_alphabet(&self, rhs: &Self) -> Result<()> {
        if self.alphabet != rhs.alphabet {
            return Err(Error::AlphabetMismatch(
                self.alphabet.to_string(),
                rhs.alphabet.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_alphabet(rhs)?;
        let bound = self.dim_bound.min(rhs.dim_bound);
        Ok(Self::from_terms(
            self.alphabet,
            bound,
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(m, c)| (m.clone(), c.clone())),
        ))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        GradedPoly {
            alphabet: self.alphabet,
            dim_bound: self.dim_bound,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero(self.alphabet, self.dim_bound);
        }
        GradedPoly {
            alphabet: self.alphabet,
            dim_bound: self.dim_bound,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&rational::rat(k))
    }

    /// Sparse product, truncated to the minimum dimension bound. Pairs whose
    /// combined dimension exceeds the bound are skipped before any rational
    /// work happens.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_alphabet(rhs)?;
        let bound = self.dim_bound.min(rhs.dim_bound);
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.dimension(self.alphabet);
            if da > bound {
                continue;
            }
            for (mb, cb) in &rhs.terms {
                if da + mb.dimension(self.alphabet) > bound {
                    continue;
                }
                let m = ma.mul(mb);
                let entry = acc.entry(m).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(GradedPoly {
            alphabet: self.alphabet,
            dim_bound: bound,
            terms: acc,
        })
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(self.alphabet, self.dim_bound);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Largest dimension among stored terms.
    pub fn max_term_dimension(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.dimension(self.alphabet)).max()
    }

    /// `Some(d)` when every term has dimension `d`; `None` for mixed terms.
    /// The zero polynomial is homogeneous of every dimension and reports
    /// `Some(0)` by convention via [`GradedPoly::homogeneous_dimension_or`].
    pub fn homogeneous_dimension(&self) -> Option<u32> {
        let mut dims = self.terms.keys().map(|m| m.dimension(self.alphabet));
        let first = dims.next()?;
        if dims.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Homogeneous dimension, with zero treated as homogeneous of `fallback`.
    pub fn homogeneous_dimension_or(&self, fallback: u32) -> Option<u32> {
        if self.is_zero() {
            Some(fallback)
        } else {
            self.homogeneous_dimension()
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_dimension().is_some()
    }

    /// The slice of terms of exactly dimension `d`.
    pub fn dimension_part(&self, d: u32) -> Self {
        GradedPoly {
            alphabet: self.alphabet,
            dim_bound: self.dim_bound,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.dimension(self.alphabet) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(rational::is_integer)
    }

    pub fn is_p_local(&self, p: u32) -> bool {
        self.terms.values().all(|c| rational::is_p_local(c, p))
    }

    /// First non-p-local coefficient, for error reporting.
    pub fn first_non_p_local(&self, p: u32) -> Option<Rat> {
        self.terms
            .values()
            .find(|c| !rational::is_p_local(c, p))
            .cloned()
    }

    /// Substitute every generator `g_i` by `images[i-1]`. All images must
    /// share one alphabet; generator indices beyond the table are an error.
    pub fn substitute(&self, images: &[GradedPoly]) -> Result<GradedPoly> {
        let target = match images.first() {
            Some(img) => img.alphabet(),
            // Nothing to substitute into: only constants may survive.
            None => self.alphabet,
        };
        let bound = images
            .iter()
            .map(|i| i.dim_bound)
            .fold(self.dim_bound, u32::min);
        let mut acc = GradedPoly::zero(target, bound);
        // cache powers of each image as they get used
        let mut pow_cache: BTreeMap<(u32, u32), GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut term = GradedPoly::constant(target, bound, c.clone());
            for (&i, &e) in m.exps() {
                let img = images.get((i - 1) as usize).ok_or_else(|| {
                    Error::TruncationInsufficient(format!(
                        "no substitution image for generator index {i}"
                    ))
                })?;
                let pw = match pow_cache.entry((i, e)) {
                    std::collections::btree_map::Entry::Occupied(o) => o.into_mut(),
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(img.truncated(bound).pow(e)?)
                    }
                };
                term = term.mul(pw)?;
                if term.is_zero() {
                    break;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Terms in canonical graded-lex order (dimension, then index/exponent
    /// sequence). This is the order used by all serialized output.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| m.graded_key(self.alphabet));
        v
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.sorted_terms()
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    rational::format_rat(c)
                } else if **c == rational::rat(1) {
                    m.display(self.alphabet)
                } else if **c == rational::rat(-1) {
                    format!("-{}", m.display(self.alphabet))
                } else {
                    format!("{}*{}", rational::format_rat(c), m.display(self.alphabet))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn b(i: u32) -> GradedPoly {
        GradedPoly::generator(Alphabet::B, 6, i)
    }

    #[test]
    fn product_of_generators() {
        let sq = b(1).mul(&b(1)).unwrap();
        assert_eq!(sq.coeff(&Monomial::from_exps([(1, 2)])), rat(1));
        assert_eq!(sq.num_terms(), 1);
    }

    #[test]
    fn multiplication_by_zero_annihilates() {
        let two_b1 = b(1).scale_int(2);
        let z = GradedPoly::zero(Alphabet::B, 6);
        assert!(two_b1.mul(&z).unwrap().is_zero());
    }

    #[test]
    fn truncation_drops_high_dimension_terms() {
        // (b1+b2)(b1-b2) at bound 3: b2^2 has dimension 4 and is dropped.
        let a = b(1).add(&b(2)).unwrap().truncated(3);
        let c = b(1).sub(&b(2)).unwrap().truncated(3);
        let prod = a.mul(&c).unwrap();
        let expected = GradedPoly::from_terms(
            Alphabet::B,
            3,
            [(Monomial::from_exps([(1, 2)]), rat(1))],
        );
        assert_eq!(prod, expected);
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let vb = GradedPoly::generator(Alphabet::V(2), 6, 1);
        assert!(matches!(b(1).mul(&vb), Err(Error::AlphabetMismatch(_, _))));
        assert!(matches!(b(1).add(&vb), Err(Error::AlphabetMismatch(_, _))));
    }

    #[test]
    fn homogeneity() {
        let h = b(1).mul(&b(2)).unwrap();
        assert_eq!(h.homogeneous_dimension(), Some(3));
        let mixed = b(1).add(&b(2)).unwrap();
        assert_eq!(mixed.homogeneous_dimension(), None);
        assert!(GradedPoly::zero(Alphabet::B, 6).is_homogeneous());
    }

    #[test]
    fn generator_beyond_bound_is_zero() {
        assert!(GradedPoly::generator(Alphabet::B, 3, 4).is_zero());
        assert!(GradedPoly::generator(Alphabet::V(2), 6, 3).is_zero()); // dim 7 > 6
    }

    #[test]
    fn substitution_respects_grading() {
        // b1 -> -m1 style substitution
        let img = GradedPoly::generator(Alphabet::M, 6, 1).neg();
        let p = b(1).scale_int(3);
        let q = p.substitute(std::slice::from_ref(&img)).unwrap();
        assert_eq!(q.coeff(&Monomial::generator(1)), rat(-3));
        assert_eq!(q.alphabet(), Alphabet::M);
    }

    #[test]
    fn cancellation_removes_terms() {
        let s = b(1).add(&b(1).neg()).unwrap();
        assert!(s.is_zero());
    }
}
