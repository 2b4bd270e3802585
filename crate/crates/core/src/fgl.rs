//! The universal formal group law in `b`-coordinates and formal arithmetic.
//!
//! The Lazard ring is represented through its image in `Z[b1, b2, ...]`: the
//! law classified by the change of variable `y = x + b1 x^2 + b2 x^3 + ...`
//! applied to the additive law. `log` is the compositional inverse of that
//! change of variable; its coefficients `m_n` carry the projective-space
//! classes via `[P^n] = (n+1) m_n`. The sign conventions downstream (for
//! example the `xy`-coefficient `2 b1`) follow mechanically from this choice
//! and are pinned by the tests.

use std::collections::BTreeMap;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::GradedPoly;
use crate::rational::{self, Rat};
use crate::series::{self, Coeff, Series};
use crate::tlaurent::TLaurent;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawKind {
    /// The universal law over `Z[b1, b2, ...]`.
    UniversalB,
    /// The p-typical law over `Z_(p)[v1, v2, ...]`.
    PTypical,
    /// `F(x, y) = x + y`.
    Additive,
}

/// A bivariate series with verified unit and commutativity axioms;
/// associativity is expensive and checked on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalGroupLaw {
    kind: LawKind,
    series: Series,
}

impl FormalGroupLaw {
    pub fn new(kind: LawKind, series: Series) -> Result<Self> {
        let law = FormalGroupLaw { kind, series };
        law.check_unit()?;
        law.check_commutative()?;
        Ok(law)
    }

    pub fn additive(alphabet: Alphabet, x_bound: u32, dim_bound: u32) -> Self {
        let proto = GradedPoly::zero(alphabet, dim_bound);
        let one = GradedPoly::one(alphabet, dim_bound);
        let series = Series::from_coeffs(
            &proto,
            2,
            x_bound,
            [(vec![1u16, 0], one.clone()), (vec![0u16, 1], one)],
        );
        FormalGroupLaw {
            kind: LawKind::Additive,
            series,
        }
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn x_bound(&self) -> u32 {
        self.series.x_bound()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.series.proto().alphabet()
    }

    /// Coefficient of `x^i y^j`.
    pub fn coefficient(&self, i: u16, j: u16) -> GradedPoly {
        self.series.coeff(&[i, j])
    }

    /// `F(x, 0) = x` and `F(0, y) = y`, exactly, up to the bound.
    pub fn check_unit(&self) -> Result<()> {
        for (key, c) in self.series.coeffs() {
            let (i, j) = (key[0], key[1]);
            let ok = if j == 0 {
                i == 1 && *c == c.one_like()
            } else if i == 0 {
                j == 1 && *c == c.one_like()
            } else {
                true
            };
            if !ok {
                return Err(Error::Precondition(format!(
                    "unit axiom fails at x^{i} y^{j}"
                )));
            }
        }
        Ok(())
    }

    pub fn check_commutative(&self) -> Result<()> {
        for (key, c) in self.series.coeffs() {
            if self.series.coeff(&[key[1], key[0]]) != *c {
                return Err(Error::Precondition(format!(
                    "commutativity fails at x^{} y^{}",
                    key[0], key[1]
                )));
            }
        }
        Ok(())
    }

    /// `F(F(x,y),z) = F(x,F(y,z))` up to the bound. Cubic in the bound, so
    /// opt-in.
    pub fn check_associative(&self) -> Result<()> {
        let proto = self.series.proto();
        let x = Series::var(proto, 3, self.x_bound(), 0);
        let y = Series::var(proto, 3, self.x_bound(), 1);
        let z = Series::var(proto, 3, self.x_bound(), 2);
        let fxy = series::substitute_args(&self.series, &[x.clone(), y.clone()])?;
        let fyz = series::substitute_args(&self.series, &[y, z.clone()])?;
        let left = series::substitute_args(&self.series, &[fxy, z])?;
        let right = series::substitute_args(&self.series, &[x, fyz])?;
        if left != right {
            return Err(Error::Precondition("associativity fails".into()));
        }
        Ok(())
    }
}

/// The generic change of variable `x + g1 x^2 + g2 x^3 + ...` over the given
/// alphabet, truncated by both bounds.
pub fn generic_change_of_variable(alphabet: Alphabet, x_bound: u32, dim_bound: u32) -> Series {
    let proto = GradedPoly::zero(alphabet, dim_bound);
    let mut coeffs = vec![(vec![1u16], GradedPoly::one(alphabet, dim_bound))];
    for n in 1..x_bound.min(u16::MAX as u32 - 1) {
        let g = GradedPoly::generator(alphabet, dim_bound, n);
        if !g.is_zero() {
            coeffs.push((vec![(n + 1) as u16], g));
        }
    }
    Series::from_coeffs(&proto, 1, x_bound, coeffs)
}

/// Exponential and logarithm of the universal law, with the coordinate
/// tables both ways.
#[derive(Debug, Clone)]
pub struct HurewiczTables {
    x_bound: u32,
    dim_bound: u32,
    exp: Series,
    log: Series,
    /// `b_n` as a polynomial in the `m`-alphabet, index `n - 1`.
    b_in_m: Vec<GradedPoly>,
}

impl HurewiczTables {
    pub fn new(x_bound: u32, dim_bound: u32) -> Result<Self> {
        if x_bound < 1 || dim_bound < 1 {
            return Err(Error::Precondition("bounds must be at least 1".into()));
        }
        let exp = generic_change_of_variable(Alphabet::B, x_bound, dim_bound);
        let log = series::reversion(&exp)?;
        let generic_log = generic_change_of_variable(Alphabet::M, x_bound, dim_bound);
        let exp_in_m = series::reversion(&generic_log)?;
        let b_in_m = (1..=dim_bound.min(x_bound.saturating_sub(1)))
            .map(|n| exp_in_m.coeff1((n + 1) as u16))
            .collect();
        Ok(HurewiczTables {
            x_bound,
            dim_bound,
            exp,
            log,
            b_in_m,
        })
    }

    pub fn x_bound(&self) -> u32 {
        self.x_bound
    }

    pub fn dim_bound(&self) -> u32 {
        self.dim_bound
    }

    /// `exp(x) = x + b1 x^2 + b2 x^3 + ...`
    pub fn exp(&self) -> &Series {
        &self.exp
    }

    /// `log = exp^{-1}`, coefficients `m_n` in the `b`-alphabet.
    pub fn log(&self) -> &Series {
        &self.log
    }

    /// `m_n` (dimension `n`), the coefficient of `x^{n+1}` in `log`.
    pub fn m(&self, n: u32) -> GradedPoly {
        self.log.coeff1((n + 1) as u16)
    }

    /// `[P^n] = (n+1) m_n`.
    pub fn p_class(&self, n: u32) -> GradedPoly {
        self.m(n).scale_int(n as i64 + 1)
    }

    /// Rewrite a `b`-alphabet polynomial in `m`-coordinates.
    pub fn to_m(&self, c: &GradedPoly) -> Result<GradedPoly> {
        if c.alphabet() != Alphabet::B {
            return Err(Error::AlphabetMismatch(
                c.alphabet().to_string(),
                Alphabet::B.to_string(),
            ));
        }
        if c.max_term_dimension().unwrap_or(0) > self.b_in_m.len() as u32 {
            return Err(Error::TruncationInsufficient(format!(
                "m-coordinate table covers dimension {} but the element reaches {}",
                self.b_in_m.len(),
                c.max_term_dimension().unwrap_or(0)
            )));
        }
        if self.b_in_m.is_empty() {
            return Ok(GradedPoly::constant(
                Alphabet::M,
                self.dim_bound,
                c.constant_term(),
            ));
        }
        c.substitute(&self.b_in_m)
    }

    /// Rewrite an `m`-alphabet polynomial back in `b`-coordinates.
    pub fn to_b(&self, c: &GradedPoly) -> Result<GradedPoly> {
        if c.alphabet() != Alphabet::M {
            return Err(Error::AlphabetMismatch(
                c.alphabet().to_string(),
                Alphabet::M.to_string(),
            ));
        }
        let table: Vec<GradedPoly> = (1..=self.dim_bound.min(self.x_bound.saturating_sub(1)))
            .map(|n| self.m(n))
            .collect();
        if table.is_empty() {
            return Ok(GradedPoly::constant(
                Alphabet::B,
                self.dim_bound,
                c.constant_term(),
            ));
        }
        c.substitute(&table)
    }

    /// The universal law `F(x, y) = exp(log x + log y)`. Every coefficient
    /// must come out integral; a rational denominator signals a bug.
    pub fn universal_fgl(&self) -> Result<FormalGroupLaw> {
        let logx = self.log.embed(2, &[0]);
        let logy = self.log.embed(2, &[1]);
        let sum = logx.add(&logy)?;
        let f = series::substitute_args(&self.exp, &[sum])?;
        for (key, c) in f.coeffs() {
            if !c.is_integral() {
                return Err(Error::IntegralityFailure(format!(
                    "x^{} y^{}: {}",
                    key[0],
                    key[1],
                    c.display()
                )));
            }
        }
        FormalGroupLaw::new(LawKind::UniversalB, f)
    }
}

/// `F(a, b)` for series deformations with nilpotent constant coefficients.
pub fn formal_sum<C: Coeff>(
    law: &FormalGroupLaw,
    a: &Series<C>,
    b: &Series<C>,
) -> Result<Series<C>> {
    series::substitute_base(law.series(), &[a.clone(), b.clone()])
}

/// `F(a, b)` for Laurent deformations. Both arguments must be topologically
/// nilpotent (supported in positive t-degrees up to positive-dimension
/// coefficients).
pub fn formal_sum_t(law: &FormalGroupLaw, a: &TLaurent, b: &TLaurent) -> Result<TLaurent> {
    for arg in [a, b] {
        if !Coeff::is_top_nilpotent(arg) {
            return Err(Error::ConstantTermNonzero);
        }
    }
    // Laurent objects have no variable-degree slot, so dropped law
    // coefficients beyond the x-bound must already be dead by dimension.
    let dim_bound = a.dim_bound().min(b.dim_bound());
    if law.x_bound() <= dim_bound {
        return Err(Error::TruncationInsufficient(format!(
            "formal sum over Laurent objects needs law x-bound > dimension bound ({} <= {})",
            law.x_bound(),
            dim_bound
        )));
    }
    let need_a = law.series().coeffs().map(|(k, _)| k[0]).max().unwrap_or(0);
    let need_b = law.series().coeffs().map(|(k, _)| k[1]).max().unwrap_or(0);
    let pows = |v: &TLaurent, need: u16| -> Result<Vec<TLaurent>> {
        let mut list = vec![TLaurent::one(v.alphabet(), v.dim_bound())];
        for _ in 1..=need {
            let next = list.last().unwrap().mul(v)?;
            let dead = next.is_zero();
            list.push(next);
            if dead {
                break;
            }
        }
        Ok(list)
    };
    let a_pows = pows(a, need_a)?;
    let b_pows = pows(b, need_b)?;
    let mut acc = TLaurent::zero(a.alphabet(), a.dim_bound().min(b.dim_bound()));
    for (key, c) in law.series().coeffs() {
        let (i, j) = (key[0] as usize, key[1] as usize);
        let (Some(pa), Some(pb)) = (a_pows.get(i), b_pows.get(j)) else {
            continue; // the power died under truncation
        };
        let term = pa.mul(pb)?.mul_poly(c)?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `[n](t)` for `n >= 0`: `[0] = 0`, `[n] = F([n-1], t)`.
pub fn formal_multiple(law: &FormalGroupLaw, n: u32, t: &TLaurent) -> Result<TLaurent> {
    let mut acc = TLaurent::zero(t.alphabet(), t.dim_bound());
    for _ in 0..n {
        acc = formal_sum_t(law, &acc, t)?;
    }
    Ok(acc)
}

/// The formal inverse: the unique `i(t)` with `F(t, i(t)) = 0`, solved degree
/// by degree (the defect at `t^k` corrects the coefficient exactly because
/// `dF/dy` starts with 1).
pub fn formal_inverse(law: &FormalGroupLaw, t: &TLaurent) -> Result<TLaurent> {
    let mut inv = t.neg();
    let top = t.dim_bound() as i64 + 1;
    for k in 2..=top {
        let defect = formal_sum_t(law, t, &inv)?;
        let dk = defect.coeff(k);
        if dk.is_zero() {
            continue;
        }
        inv = inv.sub(&TLaurent::monomial(dk, k))?;
    }
    debug_assert!(formal_sum_t(law, t, &inv).unwrap().is_zero());
    Ok(inv)
}

/// `[n](t)` for arbitrary integer `n`, negative multiples via the formal
/// inverse.
pub fn formal_multiple_signed(law: &FormalGroupLaw, n: i64, t: &TLaurent) -> Result<TLaurent> {
    if n >= 0 {
        formal_multiple(law, n as u32, t)
    } else {
        let inv = formal_inverse(law, t)?;
        formal_multiple(law, (-n) as u32, &inv)
    }
}

/// All monomials of exactly the given dimension, in graded-lex order.
pub fn monomials_of_dimension(alphabet: Alphabet, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let indices = alphabet.indices_within(d);
    let mut stack: Vec<(u32, u32)> = Vec::new(); // (index, exponent)
    fn recurse(
        alphabet: Alphabet,
        indices: &[u32],
        start: usize,
        remaining: u32,
        stack: &mut Vec<(u32, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial::from_exps(stack.iter().copied()));
            return;
        }
        for (pos, &i) in indices.iter().enumerate().skip(start) {
            let dim = alphabet.gen_dim(i);
            if dim == 0 || dim > remaining {
                continue;
            }
            let max_e = remaining / dim;
            for e in 1..=max_e {
                stack.push((i, e));
                recurse(alphabet, indices, pos + 1, remaining - dim * e, stack, out);
                stack.pop();
            }
        }
    }
    recurse(alphabet, &indices, 0, d, &mut stack, &mut out);
    out.sort_by_key(|m| m.graded_key(alphabet));
    out
}

/// The full coefficient map of a homogeneous integral class, zero entries
/// included. Non-integral coefficients are flagged, not fatal, so rational
/// inputs can still be inspected.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicNumbers {
    pub dimension: u32,
    pub values: BTreeMap<Monomial, Rat>,
    pub all_integral: bool,
}

pub fn characteristic_numbers(c: &GradedPoly, d: u32) -> Result<CharacteristicNumbers> {
    if c.alphabet() != Alphabet::B {
        return Err(Error::AlphabetMismatch(
            c.alphabet().to_string(),
            Alphabet::B.to_string(),
        ));
    }
    if !c.is_zero() && c.homogeneous_dimension() != Some(d) {
        return Err(Error::Precondition(format!(
            "element is not homogeneous of dimension {d}"
        )));
    }
    let mut values = BTreeMap::new();
    let mut all_integral = true;
    for m in monomials_of_dimension(Alphabet::B, d) {
        let v = c.coeff(&m);
        if !rational::is_integer(&v) {
            all_integral = false;
        }
        values.insert(m, v);
    }
    Ok(CharacteristicNumbers {
        dimension: d,
        values,
        all_integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn tables(x_bound: u32, dim_bound: u32) -> HurewiczTables {
        HurewiczTables::new(x_bound, dim_bound).unwrap()
    }

    fn b(i: u32, d: u32) -> GradedPoly {
        GradedPoly::generator(Alphabet::B, d, i)
    }

    #[test]
    fn exp_matches_the_generic_change_of_variable() {
        let t = tables(3, 3);
        assert_eq!(t.exp().coeff1(1), GradedPoly::one(Alphabet::B, 3));
        assert_eq!(t.exp().coeff1(2), b(1, 3));
        assert_eq!(t.exp().coeff1(3), b(2, 3));
        let t1 = tables(1, 3);
        assert_eq!(t1.exp(), &Series::identity(&GradedPoly::zero(Alphabet::B, 3), 1));
    }

    #[test]
    fn log_coefficients() {
        let t = tables(4, 4);
        assert_eq!(t.m(1), b(1, 4).neg());
        let m2 = b(1, 4).pow(2).unwrap().scale_int(2).sub(&b(2, 4)).unwrap();
        assert_eq!(t.m(2), m2);
        // coefficient of x^{n+1} has dimension n
        for n in 1..=3 {
            assert_eq!(t.m(n).homogeneous_dimension(), Some(n));
        }
    }

    #[test]
    fn universal_law_low_coefficients() {
        let t = tables(4, 4);
        let f = t.universal_fgl().unwrap();
        // a_{11} = 2 b1 under the pinned conventions
        assert_eq!(f.coefficient(1, 1), b(1, 4).scale_int(2));
        f.check_unit().unwrap();
        f.check_commutative().unwrap();
        f.check_associative().unwrap();
        assert!(f.series().total_dimension() == Some(-1));
    }

    #[test]
    fn formal_sum_of_x_with_itself() {
        let t = tables(3, 3);
        let f = t.universal_fgl().unwrap();
        let proto = GradedPoly::zero(Alphabet::B, 3);
        let x = Series::identity(&proto, 2);
        let s = formal_sum(&f, &x, &x).unwrap();
        assert_eq!(s.coeff1(1), GradedPoly::int(Alphabet::B, 3, 2));
        assert_eq!(s.coeff1(2), b(1, 3).scale_int(2));
    }

    #[test]
    fn formal_sum_unit_and_additive() {
        let t = tables(5, 4);
        let f = t.universal_fgl().unwrap();
        let tvar = TLaurent::t(Alphabet::B, 4);
        let zero = TLaurent::zero(Alphabet::B, 4);
        assert_eq!(formal_sum_t(&f, &tvar, &zero).unwrap(), tvar);
        let add = FormalGroupLaw::additive(Alphabet::B, 5, 4);
        let two_t = formal_sum_t(&add, &tvar, &tvar).unwrap();
        assert_eq!(two_t, tvar.scale(&rat(2)));
    }

    #[test]
    fn formal_multiples() {
        let t = tables(5, 4);
        let f = t.universal_fgl().unwrap();
        let tvar = TLaurent::t(Alphabet::B, 4);
        assert_eq!(formal_multiple(&f, 1, &tvar).unwrap(), tvar);
        let two = formal_multiple(&f, 2, &tvar).unwrap();
        assert_eq!(two.coeff(1), GradedPoly::int(Alphabet::B, 4, 2));
        assert_eq!(two.coeff(2), b(1, 4).scale_int(2));
        // [n](t) = n t modulo positive-dimension generators
        let five = formal_multiple(&f, 5, &tvar).unwrap();
        assert_eq!(five.coeff(1).constant_term(), rat(5));
        for (&k, p) in five.coeffs() {
            if k > 1 {
                assert!(p.constant_term() == rat(0));
            }
        }
    }

    #[test]
    fn formal_inverse_kills_the_sum() {
        let t = tables(6, 5);
        let f = t.universal_fgl().unwrap();
        let tvar = TLaurent::t(Alphabet::B, 5);
        let inv = formal_inverse(&f, &tvar).unwrap();
        assert!(formal_sum_t(&f, &tvar, &inv).unwrap().is_zero());
        assert_eq!(inv.coeff(1), GradedPoly::int(Alphabet::B, 5, -1));
        // [-1](t) composed once more with [1](t) is zero
        let m1 = formal_multiple_signed(&f, -1, &tvar).unwrap();
        assert_eq!(m1, inv);
    }

    #[test]
    fn m_b_coordinate_round_trip() {
        let t = tables(6, 5);
        let c = b(1, 5)
            .mul(&b(2, 5))
            .unwrap()
            .add(&b(3, 5).scale_int(4))
            .unwrap();
        let m = t.to_m(&c).unwrap();
        assert_eq!(m.alphabet(), Alphabet::M);
        let back = t.to_b(&m).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn characteristic_numbers_of_projective_classes() {
        let t = tables(4, 4);
        // [P^1] = 2 m_1 = -2 b1
        let p1 = t.p_class(1);
        let nums = characteristic_numbers(&p1, 1).unwrap();
        assert_eq!(nums.values[&Monomial::generator(1)], rat(-2));
        assert!(nums.all_integral);
        // [P^2] = 3 m_2 = 6 b1^2 - 3 b2
        let p2 = t.p_class(2);
        let nums = characteristic_numbers(&p2, 2).unwrap();
        assert_eq!(nums.values[&Monomial::from_exps([(1, 2)])], rat(6));
        assert_eq!(nums.values[&Monomial::generator(2)], rat(-3));
        // zero element: all zeros, integral
        let z = GradedPoly::zero(Alphabet::B, 4);
        let nums = characteristic_numbers(&z, 2).unwrap();
        assert!(nums.values.values().all(|v| *v == rat(0)));
        assert_eq!(nums.values.len(), 2); // b1^2 and b2
    }

    #[test]
    fn characteristic_numbers_flag_rational_input() {
        // a rational class is reported, not rejected, with the flag cleared
        let half = GradedPoly::generator(Alphabet::B, 4, 1).scale(&crate::rational::ratio(1, 2));
        let nums = characteristic_numbers(&half, 1).unwrap();
        assert!(!nums.all_integral);
        assert_eq!(nums.values[&Monomial::generator(1)], crate::rational::ratio(1, 2));
        // mixed dimensions are a hard precondition failure
        let mixed = b(1, 4).add(&b(2, 4)).unwrap();
        assert!(characteristic_numbers(&mixed, 1).is_err());
    }

    #[test]
    fn monomial_enumeration_counts_partitions() {
        // partitions of 5: 7 of them
        assert_eq!(monomials_of_dimension(Alphabet::B, 5).len(), 7);
        // v-alphabet at p=2: dimensions 1, 3, 7 -> partitions of 4 into {1,3}: 2
        assert_eq!(monomials_of_dimension(Alphabet::V(2), 4).len(), 2);
    }
}
