//! The p-typical coefficient ring: Quillen projector, Hazewinkel generators,
//! the p-series and the ideal filtration.
//!
//! A [`BpContext`] is built once per (prime, dimension bound) and holds every
//! coordinate table: the Hazewinkel generators expressed in `b`-coordinates,
//! the p-typical logarithm coefficients `lambda_k` both ways (`lambda` in
//! terms of `v`, `v` in terms of `lambda`), and the p-typical law itself over
//! the `v`-alphabet. Everything is immutable afterwards and safe to share
//! across threads.
//!
//! Generator choice: the Hazewinkel recursion
//! `p lambda_k = sum_{i=0}^{k-1} lambda_i v_{k-i}^{p^i}` is the constructive
//! definition; the congruence of the p-series with `sum v_l t^{p^l - 1}`
//! modulo the square of the filtration ideal is verified as a theorem rather
//! than used as a definition.

use std::collections::BTreeMap;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::fgl::{self, FormalGroupLaw, HurewiczTables, LawKind};
use crate::monomial::Monomial;
use crate::poly::GradedPoly;
use crate::rational::{self, Rat};
use crate::series::{self, Series};
use crate::tlaurent::TLaurent;

#[derive(Debug, Clone)]
pub struct BpContext {
    prime: u32,
    dim_bound: u32,
    max_gen: u32,
    hurewicz: HurewiczTables,
    /// Hazewinkel `v_k` in `b`-coordinates, index `k-1`.
    v_in_b: Vec<GradedPoly>,
    /// `lambda_k` as a rational polynomial in the `v`-generators, index `k-1`.
    lambda_in_v: Vec<GradedPoly>,
    /// `v_k` as an integral polynomial in the `lambda`-generators, index `k-1`.
    v_in_lambda: Vec<GradedPoly>,
    log_bp: Series,
    exp_bp: Series,
    f_bp: FormalGroupLaw,
    p_series: TLaurent,
}

fn is_small_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn is_power_of(mut n: u32, p: u32) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

impl BpContext {
    pub fn new(prime: u32, dim_bound: u32) -> Result<Self> {
        if !is_small_prime(prime) {
            return Err(Error::Precondition(format!("{prime} is not prime")));
        }
        if dim_bound < 1 {
            return Err(Error::Precondition("dimension bound must be >= 1".into()));
        }
        let hurewicz = HurewiczTables::new(dim_bound + 1, dim_bound)?;
        let valph = Alphabet::V(prime);
        let lalph = Alphabet::Lambda(prime);
        let max_gen = valph.indices_within(dim_bound).len() as u32;

        // Hazewinkel generators in b-coordinates:
        // v_k = p*lambda_k - sum_{i=1}^{k-1} lambda_i * v_{k-i}^{p^i}
        let lambda_b: Vec<GradedPoly> = (1..=max_gen)
            .map(|k| hurewicz.m(valph.gen_dim(k)))
            .collect();
        let mut v_in_b: Vec<GradedPoly> = Vec::new();
        for k in 1..=max_gen as usize {
            let mut vk = lambda_b[k - 1].scale_int(prime as i64);
            for i in 1..k {
                let pw = v_in_b[k - i - 1].pow(prime.pow(i as u32))?;
                vk = vk.sub(&lambda_b[i - 1].mul(&pw)?)?;
            }
            if !vk.is_p_local(prime) {
                return Err(Error::NotPLocal {
                    prime,
                    coeff: rational::format_rat(&vk.first_non_p_local(prime).unwrap()),
                });
            }
            v_in_b.push(vk);
        }

        // lambda_k in v-coordinates: the same recursion solved for lambda.
        let p_inv = rational::ratio(1, prime as i64);
        let mut lambda_in_v: Vec<GradedPoly> = Vec::new();
        for k in 1..=max_gen as usize {
            let mut s = GradedPoly::generator(valph, dim_bound, k as u32); // i = 0 term
            for i in 1..k {
                let vg = GradedPoly::generator(valph, dim_bound, (k - i) as u32);
                let pw = vg.pow(prime.pow(i as u32))?;
                s = s.add(&lambda_in_v[i - 1].mul(&pw)?)?;
            }
            lambda_in_v.push(s.scale(&p_inv));
        }

        // v_k in lambda-coordinates.
        let mut v_in_lambda: Vec<GradedPoly> = Vec::new();
        for k in 1..=max_gen as usize {
            let mut vk =
                GradedPoly::generator(lalph, dim_bound, k as u32).scale_int(prime as i64);
            for i in 1..k {
                let pw = v_in_lambda[k - i - 1].pow(prime.pow(i as u32))?;
                let li = GradedPoly::generator(lalph, dim_bound, i as u32);
                vk = vk.sub(&li.mul(&pw)?)?;
            }
            v_in_lambda.push(vk);
        }

        // The p-typical law over the v-alphabet.
        let proto = GradedPoly::zero(valph, dim_bound);
        let x_bound = dim_bound + 1;
        let mut log_coeffs = vec![(vec![1u16], GradedPoly::one(valph, dim_bound))];
        for k in 1..=max_gen {
            let pk = prime.pow(k);
            if pk <= x_bound {
                log_coeffs.push((vec![pk as u16], lambda_in_v[k as usize - 1].clone()));
            }
        }
        let log_bp = Series::from_coeffs(&proto, 1, x_bound, log_coeffs);
        let exp_bp = series::reversion(&log_bp)?;
        let logx = log_bp.embed(2, &[0]);
        let logy = log_bp.embed(2, &[1]);
        let f_series = series::substitute_args(&exp_bp, &[logx.add(&logy)?])?;
        for (key, c) in f_series.coeffs() {
            if !c.is_p_local(prime) {
                return Err(Error::NotPLocal {
                    prime,
                    coeff: format!(
                        "x^{} y^{}: {}",
                        key[0],
                        key[1],
                        rational::format_rat(&c.first_non_p_local(prime).unwrap())
                    ),
                });
            }
        }
        let f_bp = FormalGroupLaw::new(LawKind::PTypical, f_series)?;

        // [p] = (p . t)/t, an exact monomial shift.
        let t = TLaurent::t(valph, dim_bound);
        let p_series = fgl::formal_multiple(&f_bp, prime, &t)?.shift(-1);
        debug_assert_eq!(
            p_series.coeff(0).constant_term(),
            rational::rat(prime as i64)
        );

        Ok(BpContext {
            prime,
            dim_bound,
            max_gen,
            hurewicz,
            v_in_b,
            lambda_in_v,
            v_in_lambda,
            log_bp,
            exp_bp,
            f_bp,
            p_series,
        })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn dim_bound(&self) -> u32 {
        self.dim_bound
    }

    /// Largest `k` with `dim(v_k) <= dim_bound`.
    pub fn max_gen(&self) -> u32 {
        self.max_gen
    }

    pub fn v_alphabet(&self) -> Alphabet {
        Alphabet::V(self.prime)
    }

    pub fn hurewicz(&self) -> &HurewiczTables {
        &self.hurewicz
    }

    pub fn bp_fgl(&self) -> &FormalGroupLaw {
        &self.f_bp
    }

    /// `log(x) = x + lambda_1 x^p + lambda_2 x^{p^2} + ...` over the
    /// `v`-alphabet.
    pub fn log_bp(&self) -> &Series {
        &self.log_bp
    }

    pub fn exp_bp(&self) -> &Series {
        &self.exp_bp
    }

    /// Hazewinkel `v_k` in `b`-coordinates.
    pub fn hazewinkel_v_in_b(&self, k: u32) -> Result<&GradedPoly> {
        self.v_in_b.get(k as usize - 1).ok_or_else(|| {
            Error::TruncationInsufficient(format!(
                "v_{k} has dimension beyond the bound {}",
                self.dim_bound
            ))
        })
    }

    /// `lambda_k` as a rational polynomial in the `v`-generators.
    pub fn lambda_in_v(&self, k: u32) -> Result<&GradedPoly> {
        self.lambda_in_v.get(k as usize - 1).ok_or_else(|| {
            Error::TruncationInsufficient(format!(
                "lambda_{k} has dimension beyond the bound {}",
                self.dim_bound
            ))
        })
    }

    fn expect_alphabet(&self, c: &GradedPoly, want: Alphabet) -> Result<()> {
        if c.alphabet() != want {
            return Err(Error::AlphabetMismatch(
                c.alphabet().to_string(),
                want.to_string(),
            ));
        }
        Ok(())
    }

    /// Validate an element of the p-typical coefficient ring: `v`-alphabet at
    /// this prime with p-local coefficients.
    pub fn element(&self, value: GradedPoly) -> Result<GradedPoly> {
        self.expect_alphabet(&value, self.v_alphabet())?;
        if let Some(c) = value.first_non_p_local(self.prime) {
            return Err(Error::NotPLocal {
                prime: self.prime,
                coeff: rational::format_rat(&c),
            });
        }
        Ok(value.truncated(self.dim_bound))
    }

    /// The multiplicative projector: rewrite in `m`-coordinates, keep `m_n`
    /// exactly when `n + 1` is a power of p, send the rest to zero, rewrite
    /// back. Idempotent by construction.
    pub fn quillen_project(&self, c: &GradedPoly) -> Result<GradedPoly> {
        let m = self.hurewicz.to_m(c)?;
        let kept = GradedPoly::from_terms(
            Alphabet::M,
            m.dim_bound(),
            m.terms()
                .filter(|(mono, _)| {
                    mono.exps().keys().all(|&n| is_power_of(n + 1, self.prime))
                })
                .map(|(mono, coeff)| (mono.clone(), coeff.clone())),
        );
        self.hurewicz.to_b(&kept)
    }

    /// True when the element is fixed by the projector, i.e. lies in the
    /// rational span of the `v`-monomials.
    pub fn is_p_typical(&self, c: &GradedPoly) -> Result<bool> {
        let m = self.hurewicz.to_m(c)?;
        let typical = m
            .terms()
            .all(|(mono, _)| mono.exps().keys().all(|&n| is_power_of(n + 1, self.prime)));
        Ok(typical)
    }

    /// Rewrite a p-typical `b`-alphabet element as a rational polynomial in
    /// the `v`-generators. Inverse of [`BpContext::v_to_b`] on its image.
    pub fn to_v_basis(&self, c: &GradedPoly) -> Result<GradedPoly> {
        let m = self.hurewicz.to_m(c)?;
        let mut lambda_terms: Vec<(Monomial, Rat)> = Vec::new();
        for (mono, coeff) in m.terms() {
            let mut exps: Vec<(u32, u32)> = Vec::new();
            for (&n, &e) in mono.exps() {
                if !is_power_of(n + 1, self.prime) {
                    return Err(Error::NotPTypical(n));
                }
                let k = (n + 1).ilog(self.prime);
                exps.push((k, e));
            }
            lambda_terms.push((Monomial::from_exps(exps), coeff.clone()));
        }
        let lambda_poly = GradedPoly::from_terms(
            Alphabet::Lambda(self.prime),
            self.dim_bound.min(m.dim_bound()),
            lambda_terms,
        );
        self.lambda_to_v(&lambda_poly)
    }

    /// Expand a `v`-alphabet element in `b`-coordinates via the Hazewinkel
    /// expansions.
    pub fn v_to_b(&self, c: &GradedPoly) -> Result<GradedPoly> {
        self.expect_alphabet(c, self.v_alphabet())?;
        if self.v_in_b.is_empty() {
            return Ok(GradedPoly::constant(
                Alphabet::B,
                self.dim_bound,
                c.constant_term(),
            ));
        }
        c.substitute(&self.v_in_b)
    }

    /// Rewrite a `v`-alphabet element as a polynomial in the `lambda`s.
    pub fn to_lambda(&self, c: &GradedPoly) -> Result<GradedPoly> {
        self.expect_alphabet(c, self.v_alphabet())?;
        if self.v_in_lambda.is_empty() {
            return Ok(GradedPoly::constant(
                Alphabet::Lambda(self.prime),
                self.dim_bound,
                c.constant_term(),
            ));
        }
        c.substitute(&self.v_in_lambda)
    }

    /// Inverse of [`BpContext::to_lambda`].
    pub fn lambda_to_v(&self, c: &GradedPoly) -> Result<GradedPoly> {
        self.expect_alphabet(c, Alphabet::Lambda(self.prime))?;
        if self.lambda_in_v.is_empty() {
            return Ok(GradedPoly::constant(
                self.v_alphabet(),
                self.dim_bound,
                c.constant_term(),
            ));
        }
        c.substitute(&self.lambda_in_v)
    }

    /// `[p] = (p . t)/t`: constant term `p`, dimension-homogeneous of total
    /// dimension zero.
    pub fn p_series(&self) -> &TLaurent {
        &self.p_series
    }

    /// The exact finite sum `p + v_1 t^{p-1} + ... + v_i t^{p^i - 1}`;
    /// generators beyond the dimension bound are zero in the truncated ring.
    pub fn p_series_leq(&self, i: u32) -> TLaurent {
        let valph = self.v_alphabet();
        let mut coeffs = vec![(
            0i64,
            GradedPoly::int(valph, self.dim_bound, self.prime as i64),
        )];
        for l in 1..=i.min(self.max_gen) {
            let g = GradedPoly::generator(valph, self.dim_bound, l);
            coeffs.push((valph.gen_dim(l) as i64, g));
        }
        TLaurent::from_coeffs(valph, self.dim_bound, coeffs)
    }

    /// Membership in the m-th power of the filtration ideal `(p, v_1, ...)`:
    /// a term `c v^alpha` with `k` generator factors needs `val_p(c) >= m-k`.
    /// Exact, because the generators are polynomial variables.
    pub fn ideal_membership(&self, x: &GradedPoly, m: u32) -> Result<bool> {
        self.expect_alphabet(x, self.v_alphabet())?;
        if let Some(c) = x.first_non_p_local(self.prime) {
            return Err(Error::NotPLocal {
                prime: self.prime,
                coeff: rational::format_rat(&c),
            });
        }
        Ok(x.terms().all(|(mono, coeff)| {
            let k = mono.total_exponent() as i64;
            rational::padic_val(coeff, self.prime) >= m as i64 - k
        }))
    }

    /// Per-degree membership of every Laurent coefficient in the m-th ideal
    /// power. Returns the failing degrees.
    pub fn laurent_membership(&self, x: &TLaurent, m: u32) -> Result<Vec<i64>> {
        let mut failures = Vec::new();
        for (&k, c) in x.coeffs() {
            if !self.ideal_membership(c, m)? {
                failures.push(k);
            }
        }
        Ok(failures)
    }

    /// The p-series congruence: `[p] - sum_l v_l t^{p^l - 1}` lies in the
    /// square of the filtration ideal, coefficient by coefficient.
    pub fn p_series_congruence(&self) -> Result<CongruenceReport> {
        let diff = self.p_series.sub(&self.p_series_leq(self.max_gen))?;
        let mut rows = BTreeMap::new();
        if let (Some(lo), Some(hi)) = (diff.support_min(), diff.support_max()) {
            for k in lo..=hi {
                rows.insert(k, self.ideal_membership(&diff.coeff(k), 2)?);
            }
        }
        Ok(CongruenceReport {
            pass: rows.values().all(|&b| b),
            per_degree: rows,
            difference: diff,
        })
    }

    /// Characteristic-number criterion for a dimension `p^k - 1` class: all
    /// numbers divisible by p, the `b_1`-power number not divisible by p^2.
    pub fn nu_criterion(&self, k: u32) -> Result<NuElementReport> {
        let v = self.hazewinkel_v_in_b(k)?;
        let dim = self.v_alphabet().gen_dim(k);
        let numbers = fgl::characteristic_numbers(v, dim)?;
        let p = rational::rat(self.prime as i64);
        let p2 = rational::rat((self.prime * self.prime) as i64);
        let all_divisible_by_p = numbers
            .values
            .values()
            .all(|c| rational::is_integer(&(c / &p)));
        let additive = numbers
            .values
            .get(&Monomial::from_exps([(1, dim)]))
            .cloned()
            .unwrap_or_else(|| rational::rat(0));
        let additive_not_divisible_by_p2 = !rational::is_integer(&(&additive / &p2));
        Ok(NuElementReport {
            k,
            dimension: dim,
            all_divisible_by_p,
            additive_number: additive,
            additive_not_divisible_by_p2,
            numbers,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CongruenceReport {
    pub pass: bool,
    pub per_degree: BTreeMap<i64, bool>,
    pub difference: TLaurent,
}

#[derive(Debug, Clone)]
pub struct NuElementReport {
    pub k: u32,
    pub dimension: u32,
    pub all_divisible_by_p: bool,
    pub additive_number: Rat,
    pub additive_not_divisible_by_p2: bool,
    pub numbers: fgl::CharacteristicNumbers,
}
