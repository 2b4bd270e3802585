//! Truncated power series in one or more variables over a coefficient ring.
//!
//! The coefficient ring is abstract ([`Coeff`]): graded polynomials for the
//! formal group law computations, Laurent objects for the twisted series of
//! the Steenrod operation. Rings here carry runtime parameters (alphabet,
//! bounds), so every series stores a zero prototype of its coefficient ring
//! and derived values are built with `zero_like`/`one_like`.
//!
//! The formal variables carry dimension `-1`; a series is truncated by total
//! variable degree (`x_bound`, inclusive). Substitution is exact in the
//! truncated quotient provided every substituted value is topologically
//! nilpotent: each of its terms must either sit in strictly positive variable
//! degree or carry a coefficient of positive dimension.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::GradedPoly;
use crate::rational::Rat;
use crate::tlaurent::TLaurent;

/// Ring operations needed from series coefficients.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Result<Self>;
    fn mul(&self, rhs: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn scale(&self, k: &Rat) -> Self;
    /// Action of the base polynomial ring on this coefficient ring.
    fn mul_base(&self, p: &GradedPoly) -> Result<Self>;
    fn invert(&self) -> Result<Self>;
    /// True when powers of this value eventually vanish under truncation.
    fn is_top_nilpotent(&self) -> bool;
    /// Total dimension when homogeneous (counting `t` as dimension `-1`).
    fn homogeneous_total_dim(&self) -> Option<i64>;
}

impl Coeff for GradedPoly {
    fn is_zero(&self) -> bool {
        GradedPoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        GradedPoly::zero(self.alphabet(), self.dim_bound())
    }
    fn one_like(&self) -> Self {
        GradedPoly::one(self.alphabet(), self.dim_bound())
    }
    fn add(&self, rhs: &Self) -> Result<Self> {
        GradedPoly::add(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Result<Self> {
        GradedPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        GradedPoly::neg(self)
    }
    fn scale(&self, k: &Rat) -> Self {
        GradedPoly::scale(self, k)
    }
    fn mul_base(&self, p: &GradedPoly) -> Result<Self> {
        GradedPoly::mul(self, p)
    }
    /// Geometric-series inverse: the constant term must be a nonzero
    /// rational, the positive-dimension tail dies by truncation.
    fn invert(&self) -> Result<Self> {
        use num_traits::Zero;
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NonInvertibleLeadingCoefficient(self.display()));
        }
        let c0_inv = c0.recip();
        let unit = self.scale(&c0_inv);
        let tail = unit.sub(&self.one_like())?;
        let mut acc = self.one_like();
        let mut pw = self.one_like();
        loop {
            pw = pw.mul(&tail)?.neg();
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw)?;
        }
        Ok(acc.scale(&c0_inv))
    }
    fn is_top_nilpotent(&self) -> bool {
        use num_traits::Zero;
        self.constant_term().is_zero()
    }
    fn homogeneous_total_dim(&self) -> Option<i64> {
        self.homogeneous_dimension().map(|d| d as i64)
    }
}

impl Coeff for TLaurent {
    fn is_zero(&self) -> bool {
        TLaurent::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        TLaurent::zero(self.alphabet(), self.dim_bound())
    }
    fn one_like(&self) -> Self {
        TLaurent::one(self.alphabet(), self.dim_bound())
    }
    fn add(&self, rhs: &Self) -> Result<Self> {
        TLaurent::add(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Result<Self> {
        TLaurent::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        TLaurent::neg(self)
    }
    fn scale(&self, k: &Rat) -> Self {
        TLaurent::scale(self, k)
    }
    fn mul_base(&self, p: &GradedPoly) -> Result<Self> {
        TLaurent::mul_poly(self, p)
    }
    fn invert(&self) -> Result<Self> {
        TLaurent::invert(self)
    }
    fn is_top_nilpotent(&self) -> bool {
        use num_traits::Zero;
        self.coeffs()
            .all(|(&k, p)| k >= 1 || p.constant_term().is_zero())
    }
    fn homogeneous_total_dim(&self) -> Option<i64> {
        self.total_dimension()
    }
}

/// Exponent key: one entry per variable.
pub type Key = Vec<u16>;

fn key_degree(k: &[u16]) -> u32 {
    k.iter().map(|&e| e as u32).sum()
}

#[derive(Debug, Clone)]
pub struct Series<C: Coeff = GradedPoly> {
    vars: usize,
    x_bound: u32,
    proto: C,
    coeffs: BTreeMap<Key, C>,
}

impl<C: Coeff> PartialEq for Series<C> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.x_bound == other.x_bound && self.coeffs == other.coeffs
    }
}

impl<C: Coeff> Eq for Series<C> {}

impl<C: Coeff> Series<C> {
    pub fn zero(proto: &C, vars: usize, x_bound: u32) -> Self {
        Series {
            vars,
            x_bound,
            proto: proto.zero_like(),
            coeffs: BTreeMap::new(),
        }
    }

    /// The variable `x_index` as an n-variable series.
    pub fn var(proto: &C, vars: usize, x_bound: u32, x_index: usize) -> Self {
        let mut s = Self::zero(proto, vars, x_bound);
        let mut key = vec![0u16; vars];
        key[x_index] = 1;
        if x_bound >= 1 {
            s.coeffs.insert(key, proto.one_like());
        }
        s
    }

    /// The identity series `x` in one variable.
    pub fn identity(proto: &C, x_bound: u32) -> Self {
        Self::var(proto, 1, x_bound, 0)
    }

    pub fn constant(c: C, vars: usize, x_bound: u32) -> Self {
        let mut s = Self::zero(&c, vars, x_bound);
        if !c.is_zero() {
            s.coeffs.insert(vec![0u16; vars], c);
        }
        s
    }

    pub fn from_coeffs<I>(proto: &C, vars: usize, x_bound: u32, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (Key, C)>,
    {
        let mut s = Self::zero(proto, vars, x_bound);
        for (k, c) in coeffs {
            assert_eq!(k.len(), vars, "key length must equal variable count");
            if c.is_zero() || key_degree(&k) > x_bound {
                continue;
            }
            s.coeffs.insert(k, c);
        }
        s
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn x_bound(&self) -> u32 {
        self.x_bound
    }

    pub fn proto(&self) -> &C {
        &self.proto
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Key, &C)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, key: &[u16]) -> C {
        self.coeffs
            .get(key)
            .cloned()
            .unwrap_or_else(|| self.proto.zero_like())
    }

    /// Coefficient of `x^n` in a one-variable series.
    pub fn coeff1(&self, n: u16) -> C {
        assert_eq!(self.vars, 1);
        self.coeff(&[n])
    }

    pub fn truncated(&self, x_bound: u32) -> Self {
        let bound = x_bound.min(self.x_bound);
        Series {
            vars: self.vars,
            x_bound,
            proto: self.proto.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| key_degree(k) <= bound)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_compatible(&self, rhs: &Self) -> Result<()> {
        if self.vars != rhs.vars {
            return Err(Error::Precondition(format!(
                "variable count mismatch: {} vs {}",
                self.vars, rhs.vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let bound = self.x_bound.min(rhs.x_bound);
        let mut out = Self::zero(&self.proto, self.vars, bound);
        for key in self.coeffs.keys().chain(rhs.coeffs.keys()) {
            if out.coeffs.contains_key(key) || key_degree(key) > bound {
                continue;
            }
            let s = self.coeff(key).add(&rhs.coeff(key))?;
            if !s.is_zero() {
                out.coeffs.insert(key.clone(), s);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Series {
            vars: self.vars,
            x_bound: self.x_bound,
            proto: self.proto.clone(),
            coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut s = Series {
            vars: self.vars,
            x_bound: self.x_bound,
            proto: self.proto.clone(),
            coeffs: self.coeffs.iter().map(|(key, c)| (key.clone(), c.scale(k))).collect(),
        };
        s.coeffs.retain(|_, c| !c.is_zero());
        s
    }

    /// Multiply every coefficient by a fixed coefficient-ring value.
    pub fn mul_coeff(&self, c: &C) -> Result<Self> {
        let mut out = Self::zero(&self.proto, self.vars, self.x_bound);
        for (k, v) in &self.coeffs {
            let p = v.mul(c)?;
            if !p.is_zero() {
                out.coeffs.insert(k.clone(), p);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let bound = self.x_bound.min(rhs.x_bound);
        let mut out = Self::zero(&self.proto, self.vars, bound);
        for (ka, ca) in &self.coeffs {
            let da = key_degree(ka);
            if da > bound {
                continue;
            }
            for (kb, cb) in &rhs.coeffs {
                if da + key_degree(kb) > bound {
                    continue;
                }
                let key: Key = ka.iter().zip(kb.iter()).map(|(a, b)| a + b).collect();
                let prod = ca.mul(cb)?;
                match out.coeffs.remove(&key) {
                    None => {
                        if !prod.is_zero() {
                            out.coeffs.insert(key, prod);
                        }
                    }
                    Some(prev) => {
                        let s = prev.add(&prod)?;
                        if !s.is_zero() {
                            out.coeffs.insert(key, s);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::constant(self.proto.one_like(), self.vars, self.x_bound);
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

    /// Re-embed a series into a larger variable set, placing the existing
    /// variables at the given positions.
    pub fn embed(&self, vars: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.vars);
        let mut out = Series {
            vars,
            x_bound: self.x_bound,
            proto: self.proto.clone(),
            coeffs: BTreeMap::new(),
        };
        for (k, c) in &self.coeffs {
            let mut key = vec![0u16; vars];
            for (i, &p) in positions.iter().enumerate() {
                key[p] = k[i];
            }
            out.coeffs.insert(key, c.clone());
        }
        out
    }

    /// Multiply by the variable `x_index` (shift exponents by one).
    pub fn shift_var(&self, x_index: usize, by: u16) -> Self {
        let mut out = Series {
            vars: self.vars,
            x_bound: self.x_bound,
            proto: self.proto.clone(),
            coeffs: BTreeMap::new(),
        };
        for (k, c) in &self.coeffs {
            let mut key = k.clone();
            key[x_index] += by;
            if key_degree(&key) <= self.x_bound {
                out.coeffs.insert(key, c.clone());
            }
        }
        out
    }

    /// Slice of terms linear in the last variable, as a series in the others.
    pub fn linear_slice_last_var(&self) -> Self {
        assert!(self.vars >= 2);
        let mut out = Series {
            vars: self.vars - 1,
            x_bound: self.x_bound,
            proto: self.proto.clone(),
            coeffs: BTreeMap::new(),
        };
        for (k, c) in &self.coeffs {
            if k[self.vars - 1] == 1 {
                out.coeffs.insert(k[..self.vars - 1].to_vec(), c.clone());
            }
        }
        out
    }

    pub fn constant_coeff(&self) -> C {
        self.coeff(&vec![0u16; self.vars])
    }

    /// Total dimension when dimension-homogeneous (variables count as `-1`).
    pub fn total_dimension(&self) -> Option<i64> {
        let mut dim: Option<i64> = None;
        for (k, c) in &self.coeffs {
            let d = c.homogeneous_total_dim()? - key_degree(k) as i64;
            match dim {
                None => dim = Some(d),
                Some(prev) if prev == d => {}
                _ => return None,
            }
        }
        dim
    }
}

/// Substitute the series `args` for the variables of `outer`. All arguments
/// must share a variable count and have topologically nilpotent constant
/// coefficients; the result is exact in the truncated quotient.
pub fn substitute_args<C: Coeff>(outer: &Series<C>, args: &[Series<C>]) -> Result<Series<C>> {
    let arg_pows = prepare_powers(outer, args)?;
    accumulate(outer, &arg_pows, |term, c| term.mul_coeff(c))
}

/// Substitution where the outer series has base-polynomial coefficients
/// acting on the coefficient ring of the arguments.
pub fn substitute_base<C: Coeff>(
    outer: &Series<GradedPoly>,
    args: &[Series<C>],
) -> Result<Series<C>> {
    let arg_pows = prepare_powers(outer, args)?;
    accumulate(outer, &arg_pows, |term, c| {
        let mut out = Series::zero(&term.proto, term.vars, term.x_bound);
        for (k, v) in &term.coeffs {
            let p = v.mul_base(c)?;
            if !p.is_zero() {
                out.coeffs.insert(k.clone(), p);
            }
        }
        Ok(out)
    })
}

fn prepare_powers<C: Coeff, D: Coeff>(
    outer: &Series<D>,
    args: &[Series<C>],
) -> Result<Vec<Vec<Series<C>>>> {
    if args.is_empty() {
        return Err(Error::Precondition("substitution needs arguments".into()));
    }
    if outer.vars() != args.len() {
        return Err(Error::Precondition(format!(
            "outer has {} variables but {} arguments were given",
            outer.vars(),
            args.len()
        )));
    }
    let vars = args[0].vars();
    for a in args {
        if a.vars() != vars {
            return Err(Error::Precondition(
                "substituted series must share a variable count".into(),
            ));
        }
        if !a.constant_coeff().is_top_nilpotent() {
            return Err(Error::ConstantTermNonzero);
        }
    }
    let mut pows: Vec<Vec<Series<C>>> = Vec::with_capacity(args.len());
    for (i, a) in args.iter().enumerate() {
        let need = outer
            .coeffs()
            .map(|(k, _)| k[i])
            .max()
            .unwrap_or(0) as u32;
        let one = Series::constant(a.proto().one_like(), vars, a.x_bound());
        let mut list = vec![one];
        for _ in 1..=need {
            let next = list.last().unwrap().mul(a)?;
            let dead = next.is_zero();
            list.push(next);
            if dead {
                break;
            }
        }
        pows.push(list);
    }
    Ok(pows)
}

fn accumulate<C: Coeff, D: Coeff>(
    outer: &Series<D>,
    arg_pows: &[Vec<Series<C>>],
    apply_coeff: impl Fn(&Series<C>, &D) -> Result<Series<C>>,
) -> Result<Series<C>> {
    let template = &arg_pows[0][0];
    let mut acc = Series::zero(template.proto(), template.vars(), template.x_bound());
    'terms: for (key, c) in outer.coeffs() {
        let mut term = template.clone(); // the constant one
        for (i, &e) in key.iter().enumerate() {
            let e = e as usize;
            match arg_pows[i].get(e) {
                Some(p) if !p.is_zero() || e == 0 => term = term.mul(p)?,
                // power died under truncation: the whole term vanishes
                _ => continue 'terms,
            }
            if term.is_zero() {
                continue 'terms;
            }
        }
        acc = acc.add(&apply_coeff(&term, c)?)?;
    }
    Ok(acc)
}

/// Composition of one-variable series: `outer(inner)`. The inner series must
/// have a vanishing constant term.
pub fn compose<C: Coeff>(outer: &Series<C>, inner: &Series<C>) -> Result<Series<C>> {
    if outer.vars() != 1 {
        return Err(Error::Precondition("compose needs a one-variable outer".into()));
    }
    if !inner.constant_coeff().is_zero() {
        return Err(Error::ConstantTermNonzero);
    }
    substitute_args(outer, std::slice::from_ref(inner))
}

/// Compositional inverse of `f = u x + ...` with `u` invertible: returns `g`
/// with `compose(f, g) = x = compose(g, f)` up to the bound. Solved degree by
/// degree; the correction at degree `n` is `-u^{-1}` times the defect.
pub fn reversion<C: Coeff>(f: &Series<C>) -> Result<Series<C>> {
    if f.vars() != 1 {
        return Err(Error::Precondition("reversion needs one variable".into()));
    }
    if !f.constant_coeff().is_zero() {
        return Err(Error::ConstantTermNonzero);
    }
    let u = f.coeff1(1);
    let u_inv = u
        .invert()
        .map_err(|e| Error::NonInvertibleLeadingCoefficient(format!("{e}")))?;
    let bound = f.x_bound();
    let mut g = Series::from_coeffs(f.proto(), 1, bound, [(vec![1u16], u_inv.clone())]);
    for n in 2..=bound.min(u16::MAX as u32) as u16 {
        let comp = substitute_args(&f.truncated(n as u32), &[g.truncated(n as u32)])?;
        let defect = comp.coeff1(n);
        if defect.is_zero() {
            continue;
        }
        let corr = u_inv.mul(&defect)?.neg();
        g.coeffs.insert(vec![n], corr);
    }
    Ok(g)
}

/// Multiplicative inverse `1/f` of a one-variable series whose constant
/// coefficient is invertible.
pub fn series_inverse<C: Coeff>(f: &Series<C>) -> Result<Series<C>> {
    if f.vars() != 1 {
        return Err(Error::Precondition("series_inverse needs one variable".into()));
    }
    let f0 = f.constant_coeff();
    let f0_inv = f0.invert()?;
    let bound = f.x_bound();
    let mut g = Series::from_coeffs(f.proto(), 1, bound, [(vec![0u16], f0_inv.clone())]);
    for n in 1..=bound.min(u16::MAX as u32) as u16 {
        // g_n = -f0^{-1} sum_{k=1}^{n} f_k g_{n-k}
        let mut s = f.proto().zero_like();
        for k in 1..=n {
            let fk = f.coeff1(k);
            if fk.is_zero() {
                continue;
            }
            let gnk = g.coeff1(n - k);
            if gnk.is_zero() {
                continue;
            }
            s = s.add(&fk.mul(&gnk)?)?;
        }
        let gn = f0_inv.mul(&s)?.neg();
        if !gn.is_zero() {
            g.coeffs.insert(vec![n], gn);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::monomial::Monomial;
    use crate::rational::rat;

    const D: u32 = 6;

    fn proto() -> GradedPoly {
        GradedPoly::zero(Alphabet::B, D)
    }

    fn b(i: u32) -> GradedPoly {
        GradedPoly::generator(Alphabet::B, D, i)
    }

    fn one() -> GradedPoly {
        GradedPoly::one(Alphabet::B, D)
    }

    /// x + b1 x^2 (+ b2 x^3 ...) up to the requested length
    fn generic_series(n_coeffs: u32, x_bound: u32) -> Series {
        let mut coeffs = vec![(vec![1u16], one())];
        for i in 1..=n_coeffs {
            coeffs.push((vec![(i + 1) as u16], b(i)));
        }
        Series::from_coeffs(&proto(), 1, x_bound, coeffs)
    }

    #[test]
    fn compose_with_identity_on_either_side() {
        let f = generic_series(2, 4);
        let x = Series::identity(&proto(), 4);
        assert_eq!(compose(&x, &f).unwrap(), f);
        assert_eq!(compose(&f, &x).unwrap(), f);
    }

    #[test]
    fn compose_hand_expansion() {
        // compose(x + b1 x^2, x + b1 x^2) = x + 2 b1 x^2 + 2 b1^2 x^3 at bound 3
        let f = generic_series(1, 3);
        let c = compose(&f, &f).unwrap();
        assert_eq!(c.coeff1(1), one());
        assert_eq!(c.coeff1(2), b(1).scale_int(2));
        assert_eq!(c.coeff1(3), b(1).pow(2).unwrap().scale_int(2));
    }

    #[test]
    fn compose_rejects_nonzero_constant_term() {
        let f = generic_series(1, 3);
        let g = Series::from_coeffs(&proto(), 1, 3, [(vec![0u16], one()), (vec![1u16], one())]);
        assert!(matches!(compose(&f, &g), Err(Error::ConstantTermNonzero)));
    }

    #[test]
    fn reversion_of_identity() {
        let x = Series::identity(&proto(), 5);
        assert_eq!(reversion(&x).unwrap(), x);
    }

    #[test]
    fn reversion_hand_values() {
        // invert(x + b1 x^2 + b2 x^3) = x - b1 x^2 + (2 b1^2 - b2) x^3
        let f = generic_series(2, 3);
        let g = reversion(&f).unwrap();
        assert_eq!(g.coeff1(2), b(1).neg());
        let expected = b(1).pow(2).unwrap().scale_int(2).sub(&b(2)).unwrap();
        assert_eq!(g.coeff1(3), expected);
        // and the classical degree-4 value -5b1^3 + 5b1b2 - b3
        let f4 = generic_series(3, 4);
        let g4 = reversion(&f4).unwrap();
        let m3 = GradedPoly::from_terms(
            Alphabet::B,
            D,
            [
                (Monomial::from_exps([(1, 3)]), rat(-5)),
                (Monomial::from_exps([(1, 1), (2, 1)]), rat(5)),
                (Monomial::from_exps([(3, 1)]), rat(-1)),
            ],
        );
        assert_eq!(g4.coeff1(4), m3);
    }

    #[test]
    fn reversion_is_two_sided() {
        let f = generic_series(3, 5);
        let g = reversion(&f).unwrap();
        let x = Series::identity(&proto(), 5);
        assert_eq!(compose(&f, &g).unwrap(), x);
        assert_eq!(compose(&g, &f).unwrap(), x);
        assert_eq!(reversion(&g).unwrap(), f);
    }

    #[test]
    fn reversion_needs_invertible_leading_coefficient() {
        let f = Series::from_coeffs(&proto(), 1, 3, [(vec![1u16], b(1))]);
        assert!(matches!(
            reversion(&f),
            Err(Error::NonInvertibleLeadingCoefficient(_))
        ));
    }

    #[test]
    fn series_inverse_times_self_is_one() {
        let w = Series::from_coeffs(
            &proto(),
            1,
            4,
            [(vec![0u16], one()), (vec![1u16], b(1)), (vec![2u16], b(2))],
        );
        let winv = series_inverse(&w).unwrap();
        let prod = w.mul(&winv).unwrap();
        let one_series = Series::constant(one(), 1, 4);
        assert_eq!(prod, one_series);
    }

    #[test]
    fn two_variable_substitution() {
        // F = x + y + x*y; F(a, a) with a = x gives 2x + x^2
        let f = Series::from_coeffs(
            &proto(),
            2,
            4,
            [
                (vec![1u16, 0], one()),
                (vec![0u16, 1], one()),
                (vec![1u16, 1], one()),
            ],
        );
        let a = Series::identity(&proto(), 4);
        let r = substitute_args(&f, &[a.clone(), a]).unwrap();
        assert_eq!(r.coeff1(1), one().scale_int(2));
        assert_eq!(r.coeff1(2), one());
    }

    #[test]
    fn total_dimension_of_homogeneous_series() {
        // x + b1 x^2 is homogeneous of total dimension -1
        let f = generic_series(1, 3);
        assert_eq!(f.total_dimension(), Some(-1));
    }
}
