//! Deterministic sample generators for the verification suite.
//!
//! Batch checks over "random" elements must produce byte-identical reports
//! run to run, so every generator takes an explicit seed and draws from a
//! counter-based stream cipher.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::bp::BpContext;
use crate::error::{Error, Result};
use crate::fgl;
use crate::monomial::Monomial;
use crate::poly::GradedPoly;
use crate::rational::rat;

/// Dimensions up to `max_dim` that carry at least one generator monomial.
fn populated_dimensions(bp: &BpContext, max_dim: u32) -> Vec<(u32, Vec<Monomial>)> {
    (1..=max_dim)
        .filter_map(|d| {
            let monos = fgl::monomials_of_dimension(bp.v_alphabet(), d);
            let monos: Vec<Monomial> =
                monos.into_iter().filter(|m| !m.is_one()).collect();
            if monos.is_empty() {
                None
            } else {
                Some((d, monos))
            }
        })
        .collect()
}

fn p_coprime_unit(rng: &mut ChaCha8Rng, p: u32) -> i64 {
    loop {
        let u = rng.gen_range(-5i64..=5);
        if u != 0 && u.rem_euclid(p as i64) != 0 {
            return u;
        }
    }
}

/// Homogeneous positive-dimension elements of the m-th ideal power: each
/// term is a generator monomial with `k` factors scaled by `p^{max(0, m-k)}`
/// (sometimes more) times a unit, so membership holds by construction.
pub fn ideal_power_samples(
    bp: &BpContext,
    m: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<GradedPoly>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_dim = bp.dim_bound().min(6);
    let dims = populated_dimensions(bp, max_dim);
    if dims.is_empty() {
        return Err(Error::TruncationInsufficient(
            "dimension bound too small to generate samples".into(),
        ));
    }
    let p = bp.prime() as i64;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (d, monos) = &dims[rng.gen_range(0..dims.len())];
        let n_terms = rng.gen_range(1..=2.min(monos.len()));
        let mut terms = Vec::new();
        for _ in 0..n_terms {
            let mono = monos[rng.gen_range(0..monos.len())].clone();
            let k = mono.total_exponent();
            let needed = m.saturating_sub(k);
            let extra = rng.gen_range(0..=1);
            let scale = p.pow(needed + extra);
            terms.push((mono, rat(scale * p_coprime_unit(&mut rng, bp.prime()))));
        }
        let sample = GradedPoly::from_terms(bp.v_alphabet(), bp.dim_bound(), terms);
        if sample.is_zero() {
            continue;
        }
        debug_assert_eq!(sample.homogeneous_dimension(), Some(*d));
        debug_assert!(bp.ideal_membership(&sample, m).unwrap());
        out.push(sample);
    }
    Ok(out)
}

/// Pairs of p-local homogeneous elements sharing one dimension.
pub fn homogeneous_pairs(
    bp: &BpContext,
    count: usize,
    seed: u64,
) -> Result<Vec<(GradedPoly, GradedPoly)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_dim = bp.dim_bound().min(4);
    let dims = populated_dimensions(bp, max_dim);
    if dims.is_empty() {
        return Err(Error::TruncationInsufficient(
            "dimension bound too small to generate pairs".into(),
        ));
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (_, monos) = &dims[rng.gen_range(0..dims.len())];
        let draw = |rng: &mut ChaCha8Rng| {
            let n_terms = rng.gen_range(1..=2.min(monos.len()));
            let terms: Vec<_> = (0..n_terms)
                .map(|_| {
                    let mono = monos[rng.gen_range(0..monos.len())].clone();
                    (mono, rat(p_coprime_unit(rng, bp.prime())))
                })
                .collect();
            GradedPoly::from_terms(bp.v_alphabet(), bp.dim_bound(), terms)
        };
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        if x.is_zero() || y.is_zero() {
            continue;
        }
        out.push((x, y));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_deterministic_and_valid() {
        let bp = BpContext::new(2, 6).unwrap();
        let a = ideal_power_samples(&bp, 2, 10, 7).unwrap();
        let b = ideal_power_samples(&bp, 2, 10, 7).unwrap();
        assert_eq!(a, b);
        for s in &a {
            assert!(s.homogeneous_dimension().unwrap() >= 1);
            assert!(bp.ideal_membership(s, 2).unwrap());
        }
        let c = ideal_power_samples(&bp, 2, 10, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn samples_exist_at_p3() {
        let bp = BpContext::new(3, 8).unwrap();
        let a = ideal_power_samples(&bp, 2, 10, 42).unwrap();
        assert_eq!(a.len(), 10);
        for s in &a {
            assert!(bp.ideal_membership(s, 2).unwrap());
        }
    }

    #[test]
    fn tiny_bounds_error_instead_of_panicking() {
        // no generator monomial exists below dimension 2 at p = 3
        let bp = BpContext::new(3, 1).unwrap();
        assert!(ideal_power_samples(&bp, 1, 3, 0).is_err());
        assert!(homogeneous_pairs(&bp, 3, 0).is_err());
    }

    #[test]
    fn pairs_share_a_dimension() {
        let bp = BpContext::new(2, 6).unwrap();
        for (x, y) in homogeneous_pairs(&bp, 12, 3).unwrap() {
            assert_eq!(
                x.homogeneous_dimension().unwrap(),
                y.homogeneous_dimension().unwrap()
            );
        }
    }
}
