//! Concrete restricted modules.
//!
//! A [`Carrier`] knows how single generators act on its basis. A
//! [`ModuleHandle`] wraps a carrier with an optional truncation and is what
//! the rest of the crate passes around.

mod dressed;
mod fock;
mod induced;
mod laurent;
mod poly;
mod tensor;

pub use dressed::SugawaraDressed;
pub use fock::Fock;
pub use induced::{Character, Induced};
pub use laurent::Laurent;
pub use poly::Poly;
pub use tensor::{Tensor, VirTrivial};

use crate::algebra::{AlgebraKind, Generator, LieElement, Subalgebra};
use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::pbw::{EnvElement, Monomial};
use crate::rational::{fmt_q, parse_q, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Index of a basis vector in some carrier.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// The generating vector of a one-dimensional module.
    V0,
    /// Product of negative Heisenberg modes applied to the vacuum.
    Fock(Monomial),
    /// Exponents of a monomial `x_1^{e_1} ... x_n^{e_n}`.
    Poly(Vec<u32>),
    /// `t^k / (t - 1)`.
    Laurent(i64),
    Induced { monomial: Monomial, base: Box<Basis> },
    Pair(Box<Basis>, Box<Basis>),
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::V0 => f.write_str("v0"),
            Basis::Fock(m) => write!(f, "{m}|0>"),
            Basis::Poly(e) => write!(f, "x^{e:?}"),
            Basis::Laurent(k) => write!(f, "f_{k}"),
            Basis::Induced { monomial, base } => write!(f, "{monomial}⊗{base}"),
            Basis::Pair(a, b) => write!(f, "({a})⊗({b})"),
        }
    }
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type Vector = Lin<Basis>;

#[derive(Serialize, Deserialize)]
struct VecTerm {
    basis: Basis,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct VecDoc {
    terms: Vec<VecTerm>,
}

pub fn vec_to_json(v: &Vector) -> serde_json::Value {
    let doc = VecDoc { terms: v.iter().map(|(b, c)| VecTerm { basis: b.clone(), coeff: fmt_q(c) }).collect() };
    serde_json::to_value(doc).expect("serializable")
}

pub fn vec_from_json(v: &serde_json::Value) -> Result<Vector> {
    let doc: VecDoc = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = Vector::zero();
    for t in doc.terms {
        out.add_term(t.basis, parse_q(&t.coeff)?);
    }
    Ok(out)
}

/// Generator actions on a fixed basis.
pub trait Carrier: Send + Sync {
    fn kind(&self) -> AlgebraKind;

    fn name(&self) -> &'static str;

    /// The subalgebra acting on this carrier.
    fn admits(&self) -> Subalgebra;

    /// Action of an admitted generator on a basis vector, without truncation.
    fn act_basis(&self, g: Generator, b: &Basis) -> Result<Vector>;

    /// Twice a degree `K` such that every admitted generator of degree `> K`
    /// annihilates `b`.
    fn bound(&self, b: &Basis) -> i64;

    /// Twice the filtration weight used for truncation.
    fn weight2(&self, b: &Basis) -> i64;

    /// All basis vectors with `weight2 <= max_w2`.
    fn basis_upto(&self, max_w2: i64) -> Result<Vec<Basis>>;

    /// Scalar by which an admitted central element acts.
    fn central_value(&self, g: Generator) -> Q;

    /// Extra validity check on a produced basis vector (index windows).
    fn check_key(&self, _b: &Basis) -> Result<()> {
        Ok(())
    }

    fn as_induced(&self) -> Option<&Induced> {
        None
    }
}

/// Lazy action of `g` on a vector; rejects generators outside the acting subalgebra.
pub fn act_vec(c: &dyn Carrier, g: Generator, v: &Vector) -> Result<Vector> {
    g.validate(c.kind())?;
    if !c.admits().contains(&g) {
        return Err(Error::InvalidGenerator(format!("{g} does not act on the {} carrier", c.name())));
    }
    if g.is_central() {
        return Ok(v.scaled(&c.central_value(g)));
    }
    v.map_linear(|b| c.act_basis(g, b))
}

/// Twice the annihilation bound of a vector (maximum over its support).
pub fn vec_bound(c: &dyn Carrier, v: &Vector) -> i64 {
    v.keys().map(|b| c.bound(b)).max().unwrap_or(0)
}

/// What can act on a vector.
#[derive(Clone, Copy)]
pub enum Actor<'a> {
    Gen(Generator),
    Lie(&'a LieElement),
    Env(&'a EnvElement),
}

/// A carrier plus an optional truncation `N` (maximum weight, plain units).
#[derive(Clone)]
pub struct ModuleHandle {
    carrier: Arc<dyn Carrier>,
    truncation: Option<i64>,
}

impl ModuleHandle {
    pub fn new(carrier: Arc<dyn Carrier>, truncation: Option<i64>) -> Self {
        ModuleHandle { carrier, truncation }
    }

    pub fn carrier(&self) -> &Arc<dyn Carrier> {
        &self.carrier
    }

    pub fn kind(&self) -> AlgebraKind {
        self.carrier.kind()
    }

    pub fn truncation(&self) -> Option<i64> {
        self.truncation
    }

    pub fn with_truncation(&self, truncation: Option<i64>) -> Self {
        ModuleHandle { carrier: self.carrier.clone(), truncation }
    }

    pub fn admits(&self, g: &Generator) -> bool {
        self.carrier.admits().contains(g)
    }

    pub fn central(&self, g: Generator) -> Q {
        if self.admits(&g) {
            self.carrier.central_value(g)
        } else {
            Q::zero()
        }
    }

    pub fn level(&self) -> Q {
        self.central(self.kind().level_central())
    }

    pub fn bound(&self, v: &Vector) -> i64 {
        vec_bound(self.carrier.as_ref(), v)
    }

    pub fn weight2(&self, b: &Basis) -> i64 {
        self.carrier.weight2(b)
    }

    /// Fails if `v` leaves the truncation or an index window.
    pub fn check(&self, v: &Vector) -> Result<()> {
        for b in v.keys() {
            self.carrier.check_key(b)?;
            if let Some(n) = self.truncation {
                let w = self.carrier.weight2(b);
                if w > 2 * n {
                    return Err(Error::BoundExceeded(format!(
                        "{b} has weight {} beyond truncation {n}",
                        fmt_q(&crate::rational::half(w))
                    )));
                }
            }
        }
        Ok(())
    }

    /// Action with truncation and window checks on the result.
    pub fn act_gen(&self, g: Generator, v: &Vector) -> Result<Vector> {
        let out = self.act_gen_lazy(g, v)?;
        self.check(&out)?;
        Ok(out)
    }

    pub fn act_gen_lazy(&self, g: Generator, v: &Vector) -> Result<Vector> {
        act_vec(self.carrier.as_ref(), g, v)
    }

    pub fn act(&self, x: Actor<'_>, v: &Vector) -> Result<Vector> {
        let out = self.act_lazy(x, v)?;
        self.check(&out)?;
        Ok(out)
    }

    pub fn act_lazy(&self, x: Actor<'_>, v: &Vector) -> Result<Vector> {
        match x {
            Actor::Gen(g) => self.act_gen_lazy(g, v),
            Actor::Lie(l) => {
                let mut out = Vector::zero();
                for (g, c) in l.iter() {
                    out.add_scaled(&self.act_gen_lazy(*g, v)?, c);
                }
                Ok(out)
            }
            Actor::Env(e) => {
                let mut out = Vector::zero();
                for (m, c) in e.iter() {
                    let mut w = v.clone();
                    for g in m.word().iter().rev() {
                        w = self.act_gen_lazy(*g, &w)?;
                    }
                    out.add_scaled(&w, c);
                }
                Ok(out)
            }
        }
    }

    /// Basis within the truncation.
    pub fn basis(&self) -> Result<Vec<Basis>> {
        let n = self
            .truncation
            .ok_or_else(|| Error::Unsupported("basis enumeration needs a truncation".into()))?;
        self.basis_upto(n)
    }

    /// Basis vectors of weight at most `n` (plain units).
    pub fn basis_upto(&self, n: i64) -> Result<Vec<Basis>> {
        if n < 0 {
            return Ok(Vec::new());
        }
        self.carrier.basis_upto(2 * n)
    }
}

/// Scalars shared by carriers: values of `c1`, `c2`, `c3`.
#[derive(Clone, Debug, Default)]
pub struct Centrals(pub [Q; 3]);

impl Centrals {
    pub fn get(&self, g: Generator) -> Q {
        use crate::algebra::Tag;
        match g.tag {
            Tag::C1 => self.0[0].clone(),
            Tag::C2 => self.0[1].clone(),
            Tag::C3 => self.0[2].clone(),
            _ => Q::zero(),
        }
    }
}
