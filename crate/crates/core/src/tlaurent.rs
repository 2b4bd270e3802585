//! Finitely supported Laurent objects in the degree `-1` variable `t`.
//!
//! Coefficients are graded polynomials sharing one alphabet and one dimension
//! bound. The retained degree window `[t_lo, t_hi]` is tracked per object:
//! `t_lo` means "guaranteed zero below", `t_hi` means "exact up to here".
//! Objects built from polynomial data are exact everywhere and carry the
//! sentinel `EXACT` as `t_hi`. Lower bounds carry mathematical meaning, so
//! clamping below the support is an error, never a silent truncation.
//!
//! Equality compares alphabet, dimension bound and coefficients; the window
//! fields are truncation metadata and do not participate.

use std::collections::BTreeMap;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::poly::GradedPoly;
use crate::rational::{self, Rat};

/// Sentinel for "exact at every degree" (polynomial data).
pub const EXACT: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
pub struct TLaurent {
    alphabet: Alphabet,
    dim_bound: u32,
    t_lo: i64,
    t_hi: i64,
    coeffs: BTreeMap<i64, GradedPoly>,
}

impl PartialEq for TLaurent {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.dim_bound == other.dim_bound
            && self.coeffs == other.coeffs
    }
}

impl Eq for TLaurent {}

fn sat(x: i64) -> i64 {
    x.clamp(-EXACT, EXACT)
}

impl TLaurent {
    pub fn zero(alphabet: Alphabet, dim_bound: u32) -> Self {
        TLaurent {
            alphabet,
            dim_bound,
            t_lo: EXACT,
            t_hi: EXACT,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: Alphabet, dim_bound: u32) -> Self {
        Self::from_poly(GradedPoly::one(alphabet, dim_bound))
    }

    /// A graded polynomial placed at `t^0`.
    pub fn from_poly(p: GradedPoly) -> Self {
        Self::monomial(p, 0)
    }

    /// `p * t^k`.
    pub fn monomial(p: GradedPoly, k: i64) -> Self {
        let mut l = TLaurent::zero(p.alphabet(), p.dim_bound());
        if !p.is_zero() {
            l.t_lo = k;
            l.coeffs.insert(k, p);
        }
        l
    }

    /// The variable `t` itself (coefficient 1 at degree 1).
    pub fn t(alphabet: Alphabet, dim_bound: u32) -> Self {
        Self::monomial(GradedPoly::one(alphabet, dim_bound), 1)
    }

    pub fn from_coeffs<I>(alphabet: Alphabet, dim_bound: u32, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (i64, GradedPoly)>,
    {
        let mut map: BTreeMap<i64, GradedPoly> = BTreeMap::new();
        for (k, p) in coeffs {
            let p = p.truncated(dim_bound);
            if p.is_zero() {
                continue;
            }
            match map.remove(&k) {
                None => {
                    map.insert(k, p);
                }
                Some(q) => {
                    let s = q.add(&p).expect("same alphabet");
                    if !s.is_zero() {
                        map.insert(k, s);
                    }
                }
            }
        }
        let t_lo = map.keys().next().copied().unwrap_or(EXACT);
        TLaurent {
            alphabet,
            dim_bound,
            t_lo,
            t_hi: EXACT,
            coeffs: map,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn dim_bound(&self) -> u32 {
        self.dim_bound
    }

    pub fn t_lo(&self) -> i64 {
        self.t_lo
    }

    pub fn t_hi(&self) -> i64 {
        self.t_hi
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> GradedPoly {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| GradedPoly::zero(self.alphabet, self.dim_bound))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &GradedPoly)> {
        self.coeffs.iter()
    }

    pub fn support_min(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn support_max(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
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

    fn normalized(mut self) -> Self {
        self.coeffs.retain(|_, p| !p.is_zero());
        self
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_alphabet(rhs)?;
        let dim_bound = self.dim_bound.min(rhs.dim_bound);
        let mut coeffs = BTreeMap::new();
        for k in self.coeffs.keys().chain(rhs.coeffs.keys()) {
            if coeffs.contains_key(k) {
                continue;
            }
            let s = self
                .coeff(*k)
                .truncated(dim_bound)
                .add(&rhs.coeff(*k).truncated(dim_bound))?;
            coeffs.insert(*k, s);
        }
        Ok(TLaurent {
            alphabet: self.alphabet,
            dim_bound,
            t_lo: sat(self.t_lo.min(rhs.t_lo)),
            t_hi: sat(self.t_hi.min(rhs.t_hi)),
            coeffs,
        }
        .normalized())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        TLaurent {
            alphabet: self.alphabet,
            dim_bound: self.dim_bound,
            t_lo: self.t_lo,
            t_hi: self.t_hi,
            coeffs: self.coeffs.iter().map(|(&k, p)| (k, p.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TLaurent {
            alphabet: self.alphabet,
            dim_bound: self.dim_bound,
            t_lo: self.t_lo,
            t_hi: self.t_hi,
            coeffs: self.coeffs.iter().map(|(&k, p)| (k, p.scale(c))).collect(),
        }
        .normalized()
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_alphabet(rhs)?;
        let dim_bound = self.dim_bound.min(rhs.dim_bound);
        let t_hi = sat(i64::min(
            sat(self.t_hi) + sat(rhs.t_lo),
            sat(rhs.t_hi) + sat(self.t_lo),
        ));
        let mut coeffs: BTreeMap<i64, GradedPoly> = BTreeMap::new();
        for (&ka, pa) in &self.coeffs {
            for (&kb, pb) in &rhs.coeffs {
                let k = ka + kb;
                if k > t_hi {
                    continue;
                }
                let prod = pa.truncated(dim_bound).mul(&pb.truncated(dim_bound))?;
                if prod.is_zero() {
                    continue;
                }
                match coeffs.remove(&k) {
                    None => {
                        coeffs.insert(k, prod);
                    }
                    Some(q) => {
                        let s = q.add(&prod)?;
                        coeffs.insert(k, s);
                    }
                }
            }
        }
        Ok(TLaurent {
            alphabet: self.alphabet,
            dim_bound,
            t_lo: sat(sat(self.t_lo) + sat(rhs.t_lo)),
            t_hi,
            coeffs,
        }
        .normalized())
    }

    /// Multiply every coefficient by a graded polynomial.
    pub fn mul_poly(&self, p: &GradedPoly) -> Result<Self> {
        self.mul(&TLaurent::from_poly(p.clone()))
    }

    /// Shift by `t^k` (exact monomial shift).
    pub fn shift(&self, k: i64) -> Self {
        TLaurent {
            alphabet: self.alphabet,
            dim_bound: self.dim_bound,
            t_lo: sat(sat(self.t_lo) + k),
            t_hi: sat(sat(self.t_hi) + k),
            coeffs: self.coeffs.iter().map(|(&j, p)| (j + k, p.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = TLaurent::one(self.alphabet, self.dim_bound);
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

    /// Multiplicative inverse. Requires the lowest nonzero coefficient to be
    /// a scalar (monomial-free) rational, a p-local unit when the alphabet
    /// carries a prime. The rest inverts as a geometric series, which
    /// terminates by dimension truncation when the tail has positive
    /// dimension, and otherwise needs a finite retention window.
    pub fn invert(&self) -> Result<Self> {
        use num_traits::Zero;
        let k0 = self.support_min().ok_or_else(|| {
            Error::NonInvertibleLeadingCoefficient("zero object".to_string())
        })?;
        let lead = self.coeff(k0);
        let c0 = lead.constant_term();
        if c0.is_zero() || lead.num_terms() != 1 {
            return Err(Error::NonInvertibleLeadingCoefficient(lead.display()));
        }
        if let Some(p) = self.alphabet.prime() {
            if rational::padic_val(&c0, p) != 0 {
                return Err(Error::NotPLocalUnit);
            }
        }
        // self = c0 t^k0 (1 + n); inverse = c0^{-1} t^{-k0} sum (-n)^j.
        // n is exact up to t_hi - k0, the geometric sum is exact on the same
        // range, and the final shift puts the knowledge bound at t_hi - 2 k0.
        let c0_inv = c0.recip();
        let unit_inv = self.shift(-k0).scale(&c0_inv);
        let one = TLaurent::one(self.alphabet, self.dim_bound);
        let tail = unit_inv.sub(&one)?;
        let sum_cap = if self.t_hi < EXACT {
            Some(sat(self.t_hi) - k0)
        } else if tail
            .coeffs
            .values()
            .any(|p| p.terms().any(|(m, _)| m.is_one()))
        {
            // scalar term in the tail: the geometric series never dies by
            // dimension, so a finite window is required
            return Err(Error::TruncationInsufficient(
                "inverse of an object with scalar tail needs a finite t-window".to_string(),
            ));
        } else {
            None
        };
        let mut acc = one.clone();
        let mut pw = one;
        loop {
            pw = pw.mul(&tail)?.neg();
            if let Some(hi) = sum_cap {
                pw = pw.drop_above(hi);
            }
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw)?;
        }
        let mut res = acc.scale(&c0_inv).shift(-k0);
        if let Some(hi) = sum_cap {
            let hi_final = hi - k0;
            res = res.drop_above(hi_final);
            res.t_hi = sat(hi_final);
        }
        Ok(res)
    }

    fn drop_above(&self, hi: i64) -> Self {
        let mut l = self.clone();
        l.coeffs.retain(|&k, _| k <= hi);
        l
    }

    /// Keep only coefficients at t-degree <= `bound`.
    pub fn slice_leq(&self, bound: i64) -> Self {
        let mut l = self.clone();
        l.coeffs.retain(|&k, _| k <= bound);
        l.t_hi = EXACT; // the slice is exact: everything above is zero by fiat
        l
    }

    /// Restrict the retained window. Truncating from above is silent;
    /// nonzero mass below `lo` is an error.
    pub fn clamp_window(&self, lo: i64, hi: i64) -> Result<Self> {
        if let Some(min) = self.support_min() {
            if min < lo {
                return Err(Error::WindowUnderflow {
                    degree: min,
                    tlow: lo,
                });
            }
        }
        let mut l = self.drop_above(hi);
        l.t_lo = lo;
        l.t_hi = sat(hi.min(self.t_hi));
        Ok(l)
    }

    pub fn is_p_local(&self, p: u32) -> bool {
        self.coeffs.values().all(|c| c.is_p_local(p))
    }

    /// Total dimension `d` with `dim(coeff at t^k) = d + k`, when consistent.
    pub fn total_dimension(&self) -> Option<i64> {
        let mut d: Option<i64> = None;
        for (&k, p) in &self.coeffs {
            let pd = p.homogeneous_dimension()? as i64 - k;
            match d {
                None => d = Some(pd),
                Some(prev) if prev == pd => {}
                _ => return None,
            }
        }
        d
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|(k, p)| match k {
                0 => format!("({})", p.display()),
                1 => format!("({})*t", p.display()),
                _ => format!("({})*t^{}", p.display(), k),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn bpoly(i: u32) -> GradedPoly {
        GradedPoly::generator(Alphabet::B, 5, i)
    }

    #[test]
    fn invert_of_one_is_one() {
        let one = TLaurent::one(Alphabet::B, 5);
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn geometric_series_inverse() {
        // a = -t + b1 t^2 = -t (1 - b1 t); a^{-1} = -t^{-1}(1 + b1 t + b1^2 t^2 + ...)
        let a = TLaurent::from_coeffs(
            Alphabet::B,
            3,
            [(1, GradedPoly::int(Alphabet::B, 3, -1)), (2, bpoly(1).truncated(3))],
        );
        let inv = a.invert().unwrap();
        let prod = a.mul(&inv).unwrap();
        assert_eq!(prod, TLaurent::one(Alphabet::B, 3));
        assert_eq!(inv.coeff(-1), GradedPoly::int(Alphabet::B, 3, -1));
        assert_eq!(inv.coeff(0), bpoly(1).truncated(3).neg());
        let b1sq = bpoly(1).truncated(3).pow(2).unwrap();
        assert_eq!(inv.coeff(1), b1sq.neg());
    }

    #[test]
    fn non_scalar_leading_coefficient_fails() {
        let a = TLaurent::monomial(bpoly(1), 0);
        assert!(matches!(
            a.invert(),
            Err(Error::NonInvertibleLeadingCoefficient(_))
        ));
    }

    #[test]
    fn non_p_local_unit_fails() {
        let two = TLaurent::monomial(GradedPoly::int(Alphabet::V(2), 5, 2), 0);
        assert!(matches!(two.invert(), Err(Error::NotPLocalUnit)));
    }

    #[test]
    fn scalar_tail_without_window_fails() {
        let a = TLaurent::from_coeffs(
            Alphabet::B,
            5,
            [
                (0, GradedPoly::one(Alphabet::B, 5)),
                (1, GradedPoly::one(Alphabet::B, 5)),
            ],
        );
        assert!(matches!(a.invert(), Err(Error::TruncationInsufficient(_))));
        // with a declared window the same inverse is fine
        let capped = a.clamp_window(0, 4).unwrap();
        let inv = capped.invert().unwrap();
        for k in 0..=4 {
            assert_eq!(inv.coeff(k).constant_term(), rat(if k % 2 == 0 { 1 } else { -1 }));
        }
    }

    #[test]
    fn windowed_inverse_with_shifted_leading_degree() {
        // a = t + t^2 known through t^5: the inverse t^{-1} - 1 + t - t^2 + t^3
        // is exact through degree 5 - 2 = 3
        let a = TLaurent::from_coeffs(
            Alphabet::B,
            5,
            [
                (1, GradedPoly::one(Alphabet::B, 5)),
                (2, GradedPoly::one(Alphabet::B, 5)),
            ],
        )
        .clamp_window(1, 5)
        .unwrap();
        let inv = a.invert().unwrap();
        assert_eq!(inv.t_hi(), 3);
        for k in -1..=3 {
            let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(inv.coeff(k).constant_term(), rat(sign), "degree {k}");
        }
        // the product is one on the window where both factors are known
        let prod = a.mul(&inv).unwrap();
        assert_eq!(prod.coeff(0).constant_term(), rat(1));
        for k in 1..=prod.t_hi() {
            assert!(prod.coeff(k).is_zero(), "degree {k} should cancel");
        }
    }

    #[test]
    fn clamp_below_support_is_an_error() {
        let a = TLaurent::monomial(GradedPoly::one(Alphabet::B, 5), -2);
        assert!(matches!(
            a.clamp_window(0, 5),
            Err(Error::WindowUnderflow { .. })
        ));
    }

    #[test]
    fn homogeneous_dimension_bookkeeping() {
        // b1 at t^0 plus b2-dimension mass at t^1 is not homogeneous;
        // b1 t^0 has total dimension 1, b2 t^1 has total dimension 1 as well.
        let h = TLaurent::from_coeffs(Alphabet::B, 5, [(0, bpoly(1)), (1, bpoly(2))]);
        assert_eq!(h.total_dimension(), Some(1));
        let bad = TLaurent::from_coeffs(Alphabet::B, 5, [(0, bpoly(1)), (1, bpoly(1))]);
        assert_eq!(bad.total_dimension(), None);
    }

    #[test]
    fn slices() {
        let a = TLaurent::from_coeffs(
            Alphabet::B,
            5,
            [(-1, bpoly(1)), (0, bpoly(2)), (2, bpoly(3))],
        );
        let s = a.slice_leq(-1);
        assert_eq!(s.support_max(), Some(-1));
        assert_eq!(a.slice_leq(100), a);
        assert!(TLaurent::zero(Alphabet::B, 5).slice_leq(0).is_zero());
    }
}
