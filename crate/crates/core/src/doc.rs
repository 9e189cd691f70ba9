//! JSON module specifications.
//!
//! ```json
//! {"algebra": "mirror",
//!  "construction": {"type": "character_induced", "inner": "D(1,1)", "outer": "full",
//!                   "character": {"d:1": "a1", "h:3/2": "b1", "c1": "c", "c2": "level"}},
//!  "params": {"a1": "2", "b1": "3", "c": "1/2", "level": "1"},
//!  "truncation": 6}
//! ```
//!
//! Scalar fields take a rational (`"p/q"` or an integer) or the name of a
//! parameter. Nested constructions may carry their own `params`, which
//! extend the enclosing ones.

use crate::algebra::{AlgebraKind, Generator, Subalgebra};
use crate::error::{Error, Result};
use crate::modules::{
    Carrier, Centrals, Character, Fock, Induced, Laurent, ModuleHandle, Poly, SugawaraDressed, Tensor, VirTrivial,
};
use crate::rational::{parse_q, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A rational literal or a parameter name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Token {
    Int(i64),
    Str(String),
}

pub type Params = BTreeMap<String, Token>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Construction {
    Fock {
        #[serde(default)]
        level: Option<Token>,
        #[serde(default)]
        mu: Option<Token>,
        #[serde(default)]
        params: Params,
    },
    Sugawara {
        base: Box<Construction>,
        #[serde(default)]
        z: Option<Token>,
        #[serde(default)]
        params: Params,
    },
    Poly {
        #[serde(default)]
        level: Option<Token>,
        lambda: Vec<Token>,
        a: Vec<Token>,
        #[serde(default)]
        params: Params,
    },
    Laurent {
        window: (i64, i64),
        #[serde(default)]
        c1: Option<Token>,
        #[serde(default)]
        c2: Option<Token>,
        #[serde(default)]
        c3: Option<Token>,
        #[serde(default)]
        zprime: Option<Token>,
        #[serde(default)]
        params: Params,
    },
    CharacterInduced {
        inner: String,
        outer: String,
        character: BTreeMap<String, Token>,
        #[serde(default)]
        params: Params,
    },
    Induced {
        base: Box<Construction>,
        outer: String,
        #[serde(default)]
        params: Params,
    },
    Tensor {
        left: Box<Construction>,
        right: Box<Construction>,
        #[serde(default)]
        params: Params,
    },
    VirTrivial {
        base: Box<Construction>,
        #[serde(default)]
        params: Params,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpecDoc {
    pub algebra: AlgebraKind,
    pub construction: Construction,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub truncation: Option<i64>,
}

impl ModuleSpecDoc {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("module spec: {e}")))
    }

    /// Value of a top-level parameter.
    pub fn param(&self, name: &str) -> Result<Option<Q>> {
        self.params.get(name).map(|t| literal(t, &self.params)).transpose()
    }

    pub fn build(&self) -> Result<ModuleHandle> {
        if let Some(n) = self.truncation {
            if n < 0 {
                return Err(Error::Parse("truncation must be nonnegative".into()));
            }
        }
        let carrier = build(self.algebra, &self.construction, &self.params)?;
        Ok(ModuleHandle::new(carrier, self.truncation))
    }
}

fn literal(t: &Token, params: &Params) -> Result<Q> {
    resolve(t, params, 0)
}

fn resolve(t: &Token, params: &Params, depth: usize) -> Result<Q> {
    match t {
        Token::Int(n) => Ok(Q::from_integer((*n).into())),
        Token::Str(s) => {
            if let Ok(x) = parse_q(s) {
                return Ok(x);
            }
            if depth > 16 {
                return Err(Error::Parse(format!("parameter {s:?} refers to itself")));
            }
            let next = params.get(s).ok_or_else(|| Error::Parse(format!("unknown parameter {s:?}")))?;
            resolve(next, params, depth + 1)
        }
    }
}

/// Explicit token, else the parameter `name`, else `default`.
fn field(t: &Option<Token>, name: &str, params: &Params, default: Option<Q>) -> Result<Q> {
    match t {
        Some(t) => literal(t, params),
        None => match params.get(name) {
            Some(t) => literal(t, params),
            None => default.ok_or_else(|| Error::Parse(format!("missing value for {name:?}"))),
        },
    }
}

fn merged(outer: &Params, own: &Params) -> Params {
    let mut p = outer.clone();
    p.extend(own.iter().map(|(k, v)| (k.clone(), v.clone())));
    p
}

fn build(kind: AlgebraKind, c: &Construction, params: &Params) -> Result<Arc<dyn Carrier>> {
    Ok(match c {
        Construction::Fock { level, mu, params: own } => {
            let p = merged(params, own);
            let level = field(level, "level", &p, None)?;
            let mu = field(mu, "mu", &p, Some(Q::zero()))?;
            Arc::new(Fock::new(kind, level, mu)?)
        }
        Construction::Sugawara { base, z, params: own } => {
            let p = merged(params, own);
            let z = field(z, "z", &p, Some(Q::zero()))?;
            Arc::new(SugawaraDressed::new(build(kind, base, &p)?, z)?)
        }
        Construction::Poly { level, lambda, a, params: own } => {
            if kind != AlgebraKind::Mirror {
                return Err(Error::Unsupported("the polynomial carrier is built for the mirror algebra".into()));
            }
            let p = merged(params, own);
            let level = field(level, "level", &p, None)?;
            let lambda = lambda.iter().map(|t| literal(t, &p)).collect::<Result<Vec<_>>>()?;
            let a = a.iter().map(|t| literal(t, &p)).collect::<Result<Vec<_>>>()?;
            Arc::new(Poly::new(level, lambda, a)?)
        }
        Construction::Laurent { window, c1, c2, c3, zprime, params: own } => {
            let p = merged(params, own);
            let zero = Some(Q::zero());
            let centrals = Centrals([
                field(c1, "c1", &p, zero.clone())?,
                field(c2, "c2", &p, zero.clone())?,
                field(c3, "c3", &p, zero.clone())?,
            ]);
            let zprime = field(zprime, "zprime", &p, zero)?;
            Arc::new(Laurent::new(kind, *window, centrals, zprime)?)
        }
        Construction::CharacterInduced { inner, outer, character, params: own } => {
            let p = merged(params, own);
            let inner = Subalgebra::parse(kind, inner)?;
            let outer = Subalgebra::parse(kind, outer)?;
            let mut chi = BTreeMap::new();
            for (gen, t) in character {
                let g: Generator = gen.parse()?;
                chi.insert(g, literal(t, &p)?);
            }
            let base = Arc::new(Character::new(inner, chi)?);
            Arc::new(Induced::new(base, outer)?)
        }
        Construction::Induced { base, outer, params: own } => {
            let p = merged(params, own);
            let outer = Subalgebra::parse(kind, outer)?;
            Arc::new(Induced::new(build(kind, base, &p)?, outer)?)
        }
        Construction::Tensor { left, right, params: own } => {
            let p = merged(params, own);
            Arc::new(Tensor::new(build(kind, left, &p)?, build(kind, right, &p)?)?)
        }
        Construction::VirTrivial { base, params: own } => {
            let p = merged(params, own);
            Arc::new(VirTrivial::new(build(kind, base, &p)?)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn semi_whittaker_spec() {
        let doc = ModuleSpecDoc::from_json(
            r#"{"algebra": "mirror",
                "construction": {"type": "character_induced", "inner": "D(1,1)", "outer": "full",
                                 "character": {"d:1": "a1", "h:3/2": "b1", "c1": "c", "c2": "level"}},
                "params": {"a1": "2", "b1": "3", "c": "1/2", "level": 1},
                "truncation": 6}"#,
        )
        .unwrap();
        let m = doc.build().unwrap();
        assert_eq!(m.level(), q(1));
        assert_eq!(m.central(Generator::C1), qf(1, 2));
        assert_eq!(m.basis().unwrap().len(), 139);
    }

    #[test]
    fn nested_params_and_errors() {
        let doc = ModuleSpecDoc::from_json(
            r#"{"algebra": "twisted",
                "construction": {"type": "sugawara", "base": {"type": "fock", "params": {"mu": "2"}}},
                "params": {"level": "1", "z": "1/3"}}"#,
        )
        .unwrap();
        let m = doc.build().unwrap();
        assert_eq!(m.central(Generator::C1), qf(-1, 3));
        assert_eq!(doc.param("z").unwrap(), Some(qf(1, 3)));

        let bad = ModuleSpecDoc::from_json(r#"{"algebra": "mirror", "construction": {"type": "fock"}}"#).unwrap();
        assert!(matches!(bad.build(), Err(Error::Parse(_))));
        let zero = ModuleSpecDoc::from_json(
            r#"{"algebra": "mirror", "construction": {"type": "fock", "level": 0}}"#,
        )
        .unwrap();
        assert_eq!(zero.build().err(), Some(Error::ZeroLevel));
        assert!(ModuleSpecDoc::from_json(r#"{"algebra": "mirror", "construction": {"type": "nope"}}"#).is_err());
    }
}
