//! Ordered monomials and normal ordering in the enveloping algebra.

use crate::algebra::{bracket, AlgebraKind, Generator, Tag};
use crate::error::Result;
use crate::lin::Lin;
use crate::rational::{fmt_q, one, parse_q, Q};
use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

/// Sort key of the canonical factor order: centrals, then `h`, then `d`;
/// ascending degree inside each class.
pub fn canonical_key(g: &Generator) -> (u8, i64, Tag) {
    let class = match g.tag {
        Tag::C1 | Tag::C2 | Tag::C3 => 0,
        Tag::H => 1,
        Tag::D => 2,
    };
    (class, g.twice, g.tag)
}

/// Product of powers of generators, factors kept in a fixed order chosen by
/// whoever builds it.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<(Generator, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree2(&self) -> i64 {
        self.0.iter().map(|(g, e)| g.twice * *e as i64).sum()
    }

    /// Factors expanded into a word.
    pub fn word(&self) -> Vec<Generator> {
        self.0.iter().flat_map(|(g, e)| std::iter::repeat_n(*g, *e as usize)).collect()
    }

    /// `g * self` when `g` sorts at or before the first factor.
    pub fn prepend(&self, g: Generator) -> Monomial {
        let mut f = Vec::with_capacity(self.0.len() + 1);
        match self.0.first() {
            Some((h, e)) if *h == g => {
                f.push((g, e + 1));
                f.extend_from_slice(&self.0[1..]);
            }
            _ => {
                f.push((g, 1));
                f.extend_from_slice(&self.0);
            }
        }
        Monomial(f)
    }

    /// Splits off one copy of the first factor.
    pub fn split_first(&self) -> Option<(Generator, Monomial)> {
        let (g, e) = *self.0.first()?;
        let mut rest = Vec::with_capacity(self.0.len());
        if e > 1 {
            rest.push((g, e - 1));
        }
        rest.extend_from_slice(&self.0[1..]);
        Some((g, Monomial(rest)))
    }

    pub fn from_sorted_word(word: &[Generator]) -> Monomial {
        let mut m: Vec<(Generator, u32)> = Vec::new();
        for g in word {
            match m.last_mut() {
                Some((h, e)) if h == g => *e += 1,
                _ => m.push((*g, 1)),
            }
        }
        Monomial(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, (g, e)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("·")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(String, u32)> = self.0.iter().map(|(g, e)| (g.to_string(), *e)).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(Generator, u32)> = Vec::deserialize(d)?;
        Ok(Monomial(v.into_iter().filter(|(_, e)| *e > 0).collect()))
    }
}

pub type EnvElement = Lin<Monomial>;

#[derive(Serialize, Deserialize)]
struct EnvTerm {
    monomial: Monomial,
    coeff: String,
}

pub fn env_to_json(x: &EnvElement) -> serde_json::Value {
    let terms: Vec<EnvTerm> =
        x.iter().map(|(m, c)| EnvTerm { monomial: m.clone(), coeff: fmt_q(c) }).collect();
    serde_json::to_value(terms).expect("serializable")
}

pub fn env_from_json(v: &serde_json::Value) -> Result<EnvElement> {
    let terms: Vec<EnvTerm> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = EnvElement::zero();
    for t in terms {
        out.add_term(t.monomial, parse_q(&t.coeff)?);
    }
    Ok(out)
}

/// Normal-ordering engine for `U(g)` of one algebra kind.
///
/// Products are built by left multiplication with single generators; the
/// result of `g * m` is cached per `(g, m)`.
pub struct Pbw {
    kind: AlgebraKind,
    memo: Mutex<HashMap<(Generator, Monomial), EnvElement>>,
}

impl Pbw {
    pub fn new(kind: AlgebraKind) -> Self {
        Pbw { kind, memo: Mutex::new(HashMap::new()) }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    /// `g * m` rewritten into canonical monomials.
    pub fn left_mul_gen(&self, g: Generator, m: &Monomial) -> Result<EnvElement> {
        let Some((f, rest)) = m.split_first() else {
            g.validate(self.kind)?;
            return Ok(EnvElement::basis(Monomial(vec![(g, 1)])));
        };
        if canonical_key(&g) <= canonical_key(&f) {
            g.validate(self.kind)?;
            return Ok(EnvElement::basis(m.prepend(g)));
        }
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(&(g, m.clone())) {
            return Ok(hit.clone());
        }
        // g f rest = f (g rest) + [g, f] rest
        let mut out = EnvElement::zero();
        for (x, c) in self.left_mul_gen(g, &rest)?.iter() {
            out.add_scaled(&self.left_mul_gen(f, x)?, c);
        }
        for (h, c) in bracket(self.kind, g, f)?.iter() {
            out.add_scaled(&self.left_mul_gen(*h, &rest)?, c);
        }
        self.memo.lock().expect("memo poisoned").insert((g, m.clone()), out.clone());
        Ok(out)
    }

    pub fn left_mul(&self, g: Generator, x: &EnvElement) -> Result<EnvElement> {
        x.map_linear(|m| self.left_mul_gen(g, m))
    }

    /// The word read as a product in `U(g)`, in canonical form.
    pub fn normal_form(&self, word: &[Generator]) -> Result<EnvElement> {
        let mut acc = EnvElement::basis(Monomial::one());
        for g in word.iter().rev() {
            acc = self.left_mul(*g, &acc)?;
        }
        Ok(acc)
    }

    pub fn mul(&self, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        let mut out = EnvElement::zero();
        for (m, c) in a.iter() {
            let mut acc = b.clone();
            for g in m.word().iter().rev() {
                acc = self.left_mul(*g, &acc)?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// `ab - ba`.
    pub fn commutator(&self, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        Ok(self.mul(a, b)?.minus(&self.mul(b, a)?))
    }
}

pub fn gen_elem(g: Generator) -> EnvElement {
    EnvElement::single(Monomial(vec![(g, 1)]), one())
}

pub fn scalar_elem(c: Q) -> EnvElement {
    EnvElement::single(Monomial::one(), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_word;
    use crate::rational::{q, qf};
    use AlgebraKind::*;

    fn nf(kind: AlgebraKind, w: &str) -> EnvElement {
        Pbw::new(kind).normal_form(&parse_word(w).unwrap()).unwrap()
    }

    fn mono(w: &str) -> Monomial {
        Monomial::from_sorted_word(&parse_word(w).unwrap())
    }

    #[test]
    fn documented_normal_forms() {
        let mut want = EnvElement::zero();
        want.add_term(mono("h:-1/2,h:1/2"), q(1));
        want.add_term(mono("c2"), qf(1, 2));
        assert_eq!(nf(Mirror, "h:1/2,h:-1/2"), want);

        let mut want = EnvElement::zero();
        want.add_term(mono("d:-1,d:1"), q(1));
        want.add_term(mono("d:0"), q(2));
        assert_eq!(nf(Mirror, "d:1,d:-1"), want);

        let mut want = EnvElement::zero();
        want.add_term(mono("d:-2,d:-1"), q(1));
        want.add_term(mono("d:-3"), q(1));
        assert_eq!(nf(Mirror, "d:-1,d:-2"), want);

        assert_eq!(nf(Mirror, ""), EnvElement::basis(Monomial::one()));
    }

    #[test]
    fn ordered_words_are_fixed() {
        let w = "c1,h:-3/2,h:-1/2,h:-1/2,h:5/2,d:-2,d:0,d:3";
        assert_eq!(nf(Mirror, w), EnvElement::basis(mono(w)));
    }

    #[test]
    fn commutator_of_degree_one_elements() {
        let p = Pbw::new(Mirror);
        let a = gen_elem("d:1".parse().unwrap());
        let b = gen_elem("d:-1".parse().unwrap());
        assert_eq!(p.commutator(&a, &b).unwrap(), EnvElement::single(mono("d:0"), q(2)));
        assert_eq!(p.mul(&scalar_elem(q(1)), &a).unwrap(), a);
    }

    #[test]
    fn small_associativity() {
        let p = Pbw::new(Mirror);
        let h = gen_elem("h:1/2".parse().unwrap());
        let hm = gen_elem("h:-1/2".parse().unwrap());
        let l = p.mul(&p.mul(&h, &h).unwrap(), &hm).unwrap();
        let r = p.mul(&h, &p.mul(&h, &hm).unwrap()).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn json_round_trip() {
        let x = nf(Twisted, "d:1,h:-1,c3");
        let back = env_from_json(&env_to_json(&x)).unwrap();
        assert_eq!(back, x);
    }
}
