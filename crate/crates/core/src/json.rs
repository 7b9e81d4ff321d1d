//! JSON encoding of exact data.
//!
//! - scalar: string, `"n"` or `"n/d"` (residues as their representative)
//! - U(W) monomial: list of `[index, exponent]` pairs
//! - U_c(𝔇) monomial: exponent vector of length p
//! - term: `{"coeff": scalar, "factors": [monomial, ...]}`
//! - element: list of terms in ascending monomial order
//! - series: `{"<t-degree>": [term, ...], ...}`
//!
//! Objects are emitted with sorted keys and terms in ascending order, so
//! equal inputs give byte-identical output.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::{Coeff, Lin, Mono};
use crate::exactnum::{FpElem, Prime, Rational};
use crate::hopfp::{HopfParamsP, PolyP, PolyP2, QuantumP, TMode};
use crate::ucdp::RestrictedMonomial;
use crate::uwitt::PbwMonomial;
use crate::Error;

fn bad(what: &str, v: &Value) -> Error {
    Error::Format(format!("expected {what}, found {v}"))
}

pub trait JsonCoeff: Coeff + Sized {
    fn encode(&self) -> String;
    /// `p` is the modulus implied by the surrounding monomials, if any.
    fn decode(s: &str, p: Option<Prime>) -> Result<Self, Error>;
}

impl JsonCoeff for Rational {
    fn encode(&self) -> String {
        self.to_string()
    }

    fn decode(s: &str, _: Option<Prime>) -> Result<Self, Error> {
        let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Format(format!("bad scalar {s:?}")));
        match s.split_once('/') {
            None => Ok(Rational::from_integer(parse(s)?)),
            Some((n, d)) => {
                let d = parse(d)?;
                if d == BigInt::from(0) {
                    return Err(Error::Format(format!("zero denominator in {s:?}")));
                }
                Ok(Rational::new(parse(n)?, d))
            }
        }
    }
}

impl JsonCoeff for FpElem {
    fn encode(&self) -> String {
        self.to_string()
    }

    fn decode(s: &str, p: Option<Prime>) -> Result<Self, Error> {
        let p = p.ok_or_else(|| Error::Format(format!("residue {s:?} without a modulus")))?;
        let n: u32 = s.trim().parse().map_err(|_| Error::Format(format!("bad residue {s:?}")))?;
        if n >= p.get() {
            return Err(Error::Format(format!("residue {n} not below {}", p.get())));
        }
        Ok(p.elem(i64::from(n)))
    }
}

pub trait JsonMono: Mono {
    fn encode(&self) -> Value;
    fn decode(v: &Value) -> Result<Self, Error>;
    fn modulus(&self) -> Option<Prime>;
}

impl JsonMono for PbwMonomial {
    fn encode(&self) -> Value {
        Value::Array(self.pairs().iter().map(|&(k, m)| json!([k, m])).collect())
    }

    fn decode(v: &Value) -> Result<Self, Error> {
        let items = v.as_array().ok_or_else(|| bad("pair list", v))?;
        let mut pairs = Vec::with_capacity(items.len());
        for item in items {
            match item.as_array().map(Vec::as_slice) {
                Some([k, m]) => {
                    let k = k.as_i64().ok_or_else(|| bad("index", k))?;
                    let m = m.as_u64().and_then(|m| u32::try_from(m).ok()).ok_or_else(|| bad("exponent", m))?;
                    pairs.push((k, m));
                }
                _ => return Err(bad("[index, exponent]", item)),
            }
        }
        PbwMonomial::from_pairs(pairs).ok_or_else(|| bad("ascending indices with positive exponents", v))
    }

    fn modulus(&self) -> Option<Prime> {
        None
    }
}

impl JsonMono for RestrictedMonomial {
    fn encode(&self) -> Value {
        json!(self.exponents())
    }

    fn decode(v: &Value) -> Result<Self, Error> {
        let items = v.as_array().ok_or_else(|| bad("exponent vector", v))?;
        let exps: Vec<u32> = items
            .iter()
            .map(|a| a.as_u64().and_then(|a| u32::try_from(a).ok()).ok_or_else(|| bad("exponent", a)))
            .collect::<Result<_, _>>()?;
        let p = Prime::new(exps.len() as u32)?;
        RestrictedMonomial::from_exponents(&exps, p).ok_or_else(|| bad("exponents below p", v))
    }

    fn modulus(&self) -> Option<Prime> {
        Some(RestrictedMonomial::modulus(*self))
    }
}

/// A monomial seen as its list of tensor factors.
pub trait JsonFactors: Mono {
    fn factors(&self) -> Vec<Value>;
    fn from_factors(vs: &[Value]) -> Result<Self, Error>;
    fn modulus(&self) -> Option<Prime>;
}

macro_rules! single_factor {
    ($t:ty) => {
        impl JsonFactors for $t {
            fn factors(&self) -> Vec<Value> {
                vec![JsonMono::encode(self)]
            }

            fn from_factors(vs: &[Value]) -> Result<Self, Error> {
                match vs {
                    [v] => <$t as JsonMono>::decode(v),
                    _ => Err(Error::Format(format!("expected 1 factor, found {}", vs.len()))),
                }
            }

            fn modulus(&self) -> Option<Prime> {
                JsonMono::modulus(self)
            }
        }
    };
}

single_factor!(PbwMonomial);
single_factor!(RestrictedMonomial);

impl<M: JsonMono, const R: usize> JsonFactors for [M; R] {
    fn factors(&self) -> Vec<Value> {
        self.iter().map(JsonMono::encode).collect()
    }

    fn from_factors(vs: &[Value]) -> Result<Self, Error> {
        if vs.len() != R {
            return Err(Error::Format(format!("expected {R} factors, found {}", vs.len())));
        }
        let parts: Vec<M> = vs.iter().map(M::decode).collect::<Result<_, _>>()?;
        let p = parts[0].modulus();
        if parts.iter().any(|m| m.modulus() != p) {
            return Err(Error::Format("tensor factors with different moduli".to_string()));
        }
        Ok(parts.try_into().unwrap_or_else(|_| unreachable!("length checked")))
    }

    fn modulus(&self) -> Option<Prime> {
        self.first().and_then(JsonMono::modulus)
    }
}

fn encode_term<C: JsonCoeff, M: JsonFactors>(m: &M, c: &C) -> Value {
    json!({ "coeff": c.encode(), "factors": m.factors() })
}

fn decode_term<C: JsonCoeff, M: JsonFactors>(v: &Value) -> Result<(M, C), Error> {
    let coeff = v.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("term with a string coeff", v))?;
    let factors = v.get("factors").and_then(Value::as_array).ok_or_else(|| bad("term with factors", v))?;
    let m = M::from_factors(factors)?;
    let c = C::decode(coeff, m.modulus())?;
    Ok((m, c))
}

pub fn encode_element<C: JsonCoeff, M: JsonFactors>(x: &Lin<C, M>) -> Value {
    Value::Array(x.sorted().into_iter().map(|(m, c)| encode_term(m, c)).collect())
}

pub fn decode_element<C: JsonCoeff, M: JsonFactors>(v: &Value) -> Result<Lin<C, M>, Error> {
    let items = v.as_array().ok_or_else(|| bad("term list", v))?;
    let mut out = Lin::zero();
    for item in items {
        let (m, c) = decode_term::<C, M>(item)?;
        if out.get(&m).is_some() {
            return Err(Error::Format(format!("repeated monomial in {item}")));
        }
        out.add_term(m, c);
    }
    Ok(out)
}

pub fn encode_series<C: JsonCoeff, M: JsonFactors>(x: &Lin<C, (u32, M)>) -> Value {
    let mut by_degree: BTreeMap<u32, Lin<C, M>> = BTreeMap::new();
    for ((d, m), c) in x.iter() {
        by_degree.entry(*d).or_default().add_term(m.clone(), c.clone());
    }
    let map: serde_json::Map<String, Value> = by_degree.iter().map(|(d, s)| (d.to_string(), encode_element(s))).collect();
    Value::Object(map)
}

pub fn decode_series<C: JsonCoeff, M: JsonFactors>(v: &Value) -> Result<Lin<C, (u32, M)>, Error> {
    let map = v.as_object().ok_or_else(|| bad("degree map", v))?;
    let mut out = Lin::zero();
    for (d, terms) in map {
        let d: u32 = d.parse().map_err(|_| Error::Format(format!("bad t-degree {d:?}")))?;
        for (m, c) in decode_element::<C, M>(terms)?.iter() {
            out.add_term((d, m.clone()), c.clone());
        }
    }
    Ok(out)
}

/// Canonical text of a JSON value: sorted keys, two-space indentation.
pub fn to_canonical(v: &Value) -> String {
    // serde_json's default map is ordered by key
    serde_json::to_string_pretty(v).expect("values always serialize")
}

/// Δ, S and ε on every generator of U_c(𝔇) for one family.
#[derive(Clone, Debug, PartialEq)]
pub struct Tables {
    pub p: Prime,
    pub i: FpElem,
    pub t: TMode,
    pub coproduct: Vec<(u32, PolyP2)>,
    pub antipode: Vec<(u32, PolyP)>,
    pub counit: Vec<(u32, FpElem)>,
}

impl Tables {
    pub fn compute(params: HopfParamsP) -> Tables {
        let q = QuantumP::new(params);
        let p = params.p;
        let gens = 0..p.get();
        Tables {
            p,
            i: params.i,
            t: params.t,
            coproduct: gens.clone().map(|k| (k, q.coproduct_p(p.elem(i64::from(k))))).collect(),
            antipode: gens.clone().map(|k| (k, q.antipode_p(p.elem(i64::from(k))))).collect(),
            counit: gens.map(|k| (k, p.elem(0))).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let entries = |xs: Vec<(u32, Value)>| Value::Array(xs.into_iter().map(|(k, v)| json!({ "k": k, "value": v })).collect());
        json!({
            "char": self.p.get(),
            "i": self.i.encode(),
            "t": self.t.to_string(),
            "coproduct": entries(self.coproduct.iter().map(|(k, x)| (*k, encode_series(x))).collect()),
            "antipode": entries(self.antipode.iter().map(|(k, x)| (*k, encode_series(x))).collect()),
            "counit": entries(self.counit.iter().map(|(k, c)| (*k, Value::String(c.encode()))).collect()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Tables, Error> {
        let field = |name: &str| v.get(name).ok_or_else(|| Error::Format(format!("missing field {name:?}")));
        let p = field("char")?.as_u64().and_then(|p| u32::try_from(p).ok()).ok_or_else(|| bad("prime", v))?;
        let p = Prime::new(p)?;
        let i = FpElem::decode(field("i")?.as_str().ok_or_else(|| bad("string i", v))?, Some(p))?;
        let t = match field("t")?.as_str() {
            Some("symbolic") => TMode::Symbolic,
            Some(c) => TMode::Specialized(FpElem::decode(c, Some(p))?),
            None => return Err(bad("string t", v)),
        };
        fn entries<T>(v: &Value, f: impl Fn(&Value) -> Result<T, Error>) -> Result<Vec<(u32, T)>, Error> {
            let items = v.as_array().ok_or_else(|| bad("entry list", v))?;
            items
                .iter()
                .map(|e| {
                    let k = e.get("k").and_then(Value::as_u64).ok_or_else(|| bad("entry with k", e))?;
                    let value = e.get("value").ok_or_else(|| bad("entry with value", e))?;
                    Ok((k as u32, f(value)?))
                })
                .collect()
        }
        Ok(Tables {
            p,
            i,
            t,
            coproduct: entries(field("coproduct")?, decode_series)?,
            antipode: entries(field("antipode")?, decode_series)?,
            counit: entries(field("counit")?, |c| FpElem::decode(c.as_str().ok_or_else(|| bad("string scalar", c))?, Some(p)))?,
        })
    }
}

/// Write the structure-constant tables of `(p, i)` with symbolic `t`.
pub fn emit_tables(p: u32, i: i64, path: &Path) -> Result<(), Error> {
    let tables = Tables::compute(HopfParamsP::new(p, i, TMode::Symbolic)?);
    std::fs::write(path, to_canonical(&tables.to_json()) + "\n")?;
    Ok(())
}

pub fn read_tables(path: &Path) -> Result<Tables, Error> {
    let text = std::fs::read_to_string(path)?;
    Tables::from_json(&serde_json::from_str(&text)?)
}
