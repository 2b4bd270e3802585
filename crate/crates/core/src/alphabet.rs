//! Generator alphabets and their dimension gradings.
//!
//! Two alphabets appear in serialized data: `b` (generator `b_i` of dimension
//! `i`) and `v` (generator `v_i` of dimension `p^i - 1`, with the scalar `p`
//! playing the role of `v_0`). Two more are internal coordinate systems used
//! for change of basis: `m` (the logarithm coefficients `m_i`, dimension `i`)
//! and `lambda` (the p-typical logarithm coefficients, dimension `p^i - 1`).

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    /// `b_i`, dimension `i`.
    B,
    /// `m_i`, dimension `i` (internal: logarithm coordinates).
    M,
    /// `v_i`, dimension `p^i - 1`.
    V(u32),
    /// `lambda_i`, dimension `p^i - 1` (internal: p-typical log coordinates).
    Lambda(u32),
}

impl Alphabet {
    /// Dimension of the generator with the given index (index >= 1).
    pub fn gen_dim(self, index: u32) -> u32 {
        match self {
            Alphabet::B | Alphabet::M => index,
            Alphabet::V(p) | Alphabet::Lambda(p) => {
                pow_u64(p as u64, index)
                    .and_then(|q| q.checked_sub(1))
                    .and_then(|q| u32::try_from(q).ok())
                    .unwrap_or(u32::MAX)
            }
        }
    }

    pub fn prime(self) -> Option<u32> {
        match self {
            Alphabet::V(p) | Alphabet::Lambda(p) => Some(p),
            _ => None,
        }
    }

    /// Generator indices whose dimension is at most `dim_bound`.
    pub fn indices_within(self, dim_bound: u32) -> Vec<u32> {
        (1..)
            .take_while(|&i| self.gen_dim(i) <= dim_bound && self.gen_dim(i) != u32::MAX)
            .collect()
    }

    pub fn gen_name(self, index: u32) -> String {
        let stem = match self {
            Alphabet::B => "b",
            Alphabet::M => "m",
            Alphabet::V(_) => "v",
            Alphabet::Lambda(_) => "l",
        };
        format!("{stem}{index}")
    }
}

fn pow_u64(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::B => write!(f, "b"),
            Alphabet::M => write!(f, "m"),
            Alphabet::V(p) => write!(f, "v(p={p})"),
            Alphabet::Lambda(p) => write!(f, "lambda(p={p})"),
        }
    }
}
