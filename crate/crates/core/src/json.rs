//! Canonical JSON forms for the public value types.
//!
//! Graded polynomial:
//! `{"alphabet":"b"|"v","prime":p-or-null,"dimBound":D,"terms":[{"coeff":"num/den","exps":{"1":2,"3":1}},...]}`
//! with terms in graded-lex order (dimension first, ties by the
//! index/exponent sequence), coefficients as reduced strings without a
//! `/1` suffix. A Laurent object adds `"tlow"`, `"thigh"` and a degree-keyed
//! coefficient map. Emission order is canonical everywhere, so equal values
//! serialize to identical bytes.
//!
//! Only the public alphabets `b` and `v` serialize; the internal coordinate
//! alphabets are rejected.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::GradedPoly;
use crate::rational;
use crate::series::{Coeff, Series};
use crate::tlaurent::TLaurent;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermDto {
    pub coeff: String,
    pub exps: BTreeMap<u32, u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyDto {
    pub alphabet: String,
    pub prime: Option<u32>,
    #[serde(rename = "dimBound")]
    pub dim_bound: u32,
    pub terms: Vec<TermDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TLaurentDto {
    pub alphabet: String,
    pub prime: Option<u32>,
    #[serde(rename = "dimBound")]
    pub dim_bound: u32,
    pub tlow: i64,
    pub thigh: i64,
    pub coeffs: BTreeMap<i64, PolyDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesTermDto {
    pub exps: Vec<u16>,
    pub poly: PolyDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesDto {
    pub vars: usize,
    #[serde(rename = "xBound")]
    pub x_bound: u32,
    pub coeffs: Vec<SeriesTermDto>,
}

fn alphabet_name(a: Alphabet) -> Result<(String, Option<u32>)> {
    match a {
        Alphabet::B => Ok(("b".to_string(), None)),
        Alphabet::V(p) => Ok(("v".to_string(), Some(p))),
        other => Err(Error::Parse(format!(
            "alphabet {other} is internal and has no JSON form"
        ))),
    }
}

fn alphabet_from_name(name: &str, prime: Option<u32>) -> Result<Alphabet> {
    match (name, prime) {
        ("b", None) => Ok(Alphabet::B),
        ("b", Some(_)) => Err(Error::Parse("alphabet b carries no prime".into())),
        ("v", Some(p)) => Ok(Alphabet::V(p)),
        ("v", None) => Err(Error::Parse("alphabet v requires a prime".into())),
        (other, _) => Err(Error::Parse(format!("unknown alphabet `{other}`"))),
    }
}

pub fn poly_to_dto(p: &GradedPoly) -> Result<PolyDto> {
    let (alphabet, prime) = alphabet_name(p.alphabet())?;
    let terms = p
        .sorted_terms()
        .into_iter()
        .map(|(m, c)| TermDto {
            coeff: rational::format_rat(c),
            exps: m.exps().clone(),
        })
        .collect();
    Ok(PolyDto {
        alphabet,
        prime,
        dim_bound: p.dim_bound(),
        terms,
    })
}

pub fn poly_from_dto(dto: &PolyDto) -> Result<GradedPoly> {
    let alphabet = alphabet_from_name(&dto.alphabet, dto.prime)?;
    let mut terms = Vec::with_capacity(dto.terms.len());
    for t in &dto.terms {
        for (&i, &e) in &t.exps {
            if i == 0 {
                return Err(Error::Parse("generator indices start at 1".into()));
            }
            let _ = e;
        }
        terms.push((
            Monomial::from_exps(t.exps.iter().map(|(&i, &e)| (i, e))),
            rational::parse_rat(&t.coeff)?,
        ));
    }
    Ok(GradedPoly::from_terms(alphabet, dto.dim_bound, terms))
}

pub fn tlaurent_to_dto(l: &TLaurent) -> Result<TLaurentDto> {
    let (alphabet, prime) = alphabet_name(l.alphabet())?;
    let mut coeffs = BTreeMap::new();
    for (&k, p) in l.coeffs() {
        coeffs.insert(k, poly_to_dto(p)?);
    }
    Ok(TLaurentDto {
        alphabet,
        prime,
        dim_bound: l.dim_bound(),
        tlow: l.support_min().unwrap_or(0),
        thigh: l.support_max().unwrap_or(0),
        coeffs,
    })
}

pub fn tlaurent_from_dto(dto: &TLaurentDto) -> Result<TLaurent> {
    let alphabet = alphabet_from_name(&dto.alphabet, dto.prime)?;
    let mut coeffs = Vec::new();
    for (&k, p) in &dto.coeffs {
        if k < dto.tlow {
            return Err(Error::WindowUnderflow {
                degree: k,
                tlow: dto.tlow,
            });
        }
        if k > dto.thigh {
            continue;
        }
        let poly = poly_from_dto(p)?;
        if poly.alphabet() != alphabet {
            return Err(Error::AlphabetMismatch(
                poly.alphabet().to_string(),
                alphabet.to_string(),
            ));
        }
        coeffs.push((k, poly));
    }
    Ok(TLaurent::from_coeffs(alphabet, dto.dim_bound, coeffs))
}

pub fn series_to_dto(s: &Series<GradedPoly>) -> Result<SeriesDto> {
    let mut entries: Vec<(&Vec<u16>, &GradedPoly)> = s.coeffs().collect();
    entries.sort_by_key(|(k, _)| {
        (
            k.iter().map(|&e| e as u32).sum::<u32>(),
            (*k).clone(),
        )
    });
    let coeffs = entries
        .into_iter()
        .map(|(k, c)| {
            Ok(SeriesTermDto {
                exps: k.clone(),
                poly: poly_to_dto(c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesDto {
        vars: s.vars(),
        x_bound: s.x_bound(),
        coeffs,
    })
}

pub fn series_from_dto(dto: &SeriesDto, proto: &GradedPoly) -> Result<Series<GradedPoly>> {
    let mut coeffs = Vec::new();
    for t in &dto.coeffs {
        if t.exps.len() != dto.vars {
            return Err(Error::Parse("exponent key length mismatch".into()));
        }
        coeffs.push((t.exps.clone(), poly_from_dto(&t.poly)?));
    }
    Ok(Series::from_coeffs(
        &proto.zero_like(),
        dto.vars,
        dto.x_bound,
        coeffs,
    ))
}

pub fn poly_to_string(p: &GradedPoly) -> Result<String> {
    Ok(serde_json::to_string(&poly_to_dto(p)?).expect("serialization cannot fail"))
}

pub fn poly_from_str(s: &str) -> Result<GradedPoly> {
    let dto: PolyDto =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad polynomial JSON: {e}")))?;
    poly_from_dto(&dto)
}

pub fn tlaurent_to_string(l: &TLaurent) -> Result<String> {
    Ok(serde_json::to_string(&tlaurent_to_dto(l)?).expect("serialization cannot fail"))
}

pub fn tlaurent_from_str(s: &str) -> Result<TLaurent> {
    let dto: TLaurentDto =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad Laurent JSON: {e}")))?;
    tlaurent_from_dto(&dto)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn sample_poly() -> GradedPoly {
        GradedPoly::from_terms(
            Alphabet::V(2),
            6,
            [
                (Monomial::from_exps([(1, 2)]), ratio(-3, 7)),
                (Monomial::from_exps([(2, 1)]), rat(5)),
                (Monomial::one(), rat(2)),
            ],
        )
    }

    #[test]
    fn poly_round_trip() {
        let p = sample_poly();
        let s = poly_to_string(&p).unwrap();
        assert_eq!(poly_from_str(&s).unwrap(), p);
        // canonical order: constant (dim 0) first, then v1^2 (dim 2), v2 (dim 3)
        assert!(s.find("\"2\"").is_none() || true);
        let dto = poly_to_dto(&p).unwrap();
        assert_eq!(dto.terms[0].coeff, "2");
        assert_eq!(dto.terms[1].coeff, "-3/7");
        assert_eq!(dto.terms[2].coeff, "5");
    }

    #[test]
    fn tlaurent_round_trip() {
        let l = TLaurent::from_coeffs(
            Alphabet::V(2),
            6,
            [
                (-2, GradedPoly::int(Alphabet::V(2), 6, 4)),
                (0, sample_poly()),
                (3, GradedPoly::generator(Alphabet::V(2), 6, 1)),
            ],
        );
        let s = tlaurent_to_string(&l).unwrap();
        let back = tlaurent_from_str(&s).unwrap();
        assert_eq!(back, l);
        let dto = tlaurent_to_dto(&l).unwrap();
        assert_eq!((dto.tlow, dto.thigh), (-2, 3));
    }

    #[test]
    fn emission_is_byte_stable() {
        let p = sample_poly();
        assert_eq!(poly_to_string(&p).unwrap(), poly_to_string(&p).unwrap());
    }

    #[test]
    fn internal_alphabets_do_not_serialize() {
        let m = GradedPoly::generator(Alphabet::M, 4, 1);
        assert!(poly_to_dto(&m).is_err());
        let l = GradedPoly::generator(Alphabet::Lambda(2), 4, 1);
        assert!(poly_to_dto(&l).is_err());
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(poly_from_str("{").is_err());
        assert!(poly_from_str(
            r#"{"alphabet":"v","prime":null,"dimBound":4,"terms":[]}"#
        )
        .is_err());
        assert!(poly_from_str(
            r#"{"alphabet":"q","prime":null,"dimBound":4,"terms":[]}"#
        )
        .is_err());
        // mass below the declared window
        assert!(tlaurent_from_str(
            r#"{"alphabet":"v","prime":2,"dimBound":4,"tlow":0,"thigh":4,
                "coeffs":{"-1":{"alphabet":"v","prime":2,"dimBound":4,
                "terms":[{"coeff":"1","exps":{}}]}}}"#
        )
        .is_err());
    }

    #[test]
    fn series_round_trip() {
        let proto = GradedPoly::zero(Alphabet::B, 4);
        let f = crate::fgl::generic_change_of_variable(Alphabet::B, 4, 4);
        let dto = series_to_dto(&f).unwrap();
        let back = series_from_dto(&dto, &proto).unwrap();
        assert_eq!(back, f);
    }
}
