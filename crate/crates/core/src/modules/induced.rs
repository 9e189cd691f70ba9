use super::{Basis, Carrier, Vector};
use crate::algebra::{bracket, AlgebraKind, Generator, Range, Subalgebra, Tag};
use crate::error::{Error, Result};
use crate::pbw::Monomial;
use crate::rational::{fmt_q, Q};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// One-dimensional module of a subalgebra given by a character.
pub struct Character {
    kind: AlgebraKind,
    inner: Subalgebra,
    chi: BTreeMap<Generator, Q>,
}

/// Extra degrees (plain units) scanned past the character support.
const MARGIN: i64 = 3;

impl Character {
    pub fn new(inner: Subalgebra, chi: BTreeMap<Generator, Q>) -> Result<Self> {
        let kind = inner.kind;
        for g in chi.keys() {
            g.validate(kind)?;
            if !inner.contains(g) {
                return Err(Error::InvalidGenerator(format!("{g} is outside the subalgebra carrying the character")));
            }
        }
        let chi: BTreeMap<Generator, Q> = chi.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let c = Character { kind, inner, chi };
        c.check_consistency()?;
        Ok(c)
    }

    fn value(&self, g: &Generator) -> Q {
        self.chi.get(g).cloned().unwrap_or_else(Q::zero)
    }

    /// The character must vanish on `[inner, inner]`. Brackets of degree
    /// outside the support land on zero values, so a finite window suffices.
    fn check_consistency(&self) -> Result<()> {
        let mut low = i64::MAX;
        for r in [self.inner.d, self.inner.h] {
            match r {
                Range::Empty => {}
                Range::From(t) => low = low.min(t),
                Range::All => return Err(Error::Unsupported("character on a subalgebra unbounded below".into())),
            }
        }
        if low == i64::MAX {
            return Ok(());
        }
        let top = self.chi.keys().filter(|g| !g.is_central()).map(|g| g.twice).max().unwrap_or(0).max(0);
        let high = top - low + 2 * MARGIN;
        let mut gens = Vec::new();
        for t in low..=high {
            for g in [Generator::d(0), Generator::h2(0)] {
                let g = Generator { tag: g.tag, twice: t };
                if g.validate(self.kind).is_ok() && self.inner.contains(&g) {
                    gens.push(g);
                }
            }
        }
        for (a, x) in gens.iter().enumerate() {
            for y in &gens[a + 1..] {
                let br = bracket(self.kind, *x, *y)?;
                let val: Q = br.iter().map(|(g, c)| c * self.value(g)).sum();
                if !val.is_zero() {
                    return Err(Error::InconsistentCharacter(format!(
                        "[{x}, {y}] = {br} has character value {}",
                        fmt_q(&val)
                    )));
                }
            }
        }
        Ok(())
    }
}

impl Carrier for Character {
    fn kind(&self) -> AlgebraKind {
        self.kind
    }

    fn name(&self) -> &'static str {
        "character"
    }

    fn admits(&self) -> Subalgebra {
        self.inner
    }

    fn act_basis(&self, g: Generator, b: &Basis) -> Result<Vector> {
        Ok(Vector::single(b.clone(), self.value(&g)))
    }

    fn bound(&self, _b: &Basis) -> i64 {
        self.chi.keys().filter(|g| !g.is_central()).map(|g| g.twice).max().unwrap_or(0).max(0)
    }

    fn weight2(&self, _b: &Basis) -> i64 {
        0
    }

    fn basis_upto(&self, _max_w2: i64) -> Result<Vec<Basis>> {
        Ok(vec![Basis::V0])
    }

    fn central_value(&self, g: Generator) -> Q {
        self.value(&g)
    }
}

/// Threshold data for one family of outer-but-not-inner generators:
/// twice-indices `floor <= t < threshold`.
#[derive(Clone, Copy, Debug)]
struct Family {
    tag: Tag,
    threshold: i64,
    floor: Option<i64>,
}

/// `Ind_inner^outer(base)`: basis `m ⊗ v` with `m` an ordered monomial in
/// generators of `outer` outside `inner`.
///
/// The truncation weight of a factor `g` is `threshold - index(g)` (twice
/// units) where `threshold` is the lowest index of its family inside `inner`;
/// for `Ind` from `D(0,-n)` this is the position in the exponent vectors.
pub struct Induced {
    kind: AlgebraKind,
    outer: Subalgebra,
    inner: Subalgebra,
    base: Arc<dyn Carrier>,
    families: Vec<Family>,
    memo: Mutex<HashMap<(Generator, Basis), Vector>>,
}

impl Induced {
    pub fn new(base: Arc<dyn Carrier>, outer: Subalgebra) -> Result<Self> {
        let kind = base.kind();
        if outer.kind != kind {
            return Err(Error::KindMismatch);
        }
        let inner = base.admits().meet(&outer);
        let mut families = Vec::new();
        for (tag, o, i) in [(Tag::H, outer.h, inner.h), (Tag::D, outer.d, inner.d)] {
            let floor = match o {
                Range::Empty => continue,
                Range::All => None,
                Range::From(a) => Some(a),
            };
            match i {
                Range::From(b) => {
                    if floor.is_none_or(|a| a < b) {
                        families.push(Family { tag, threshold: b, floor });
                    }
                }
                Range::All => {}
                Range::Empty => {
                    return Err(Error::Unsupported(format!(
                        "the base carries none of the {tag:?} generators of the outer algebra"
                    )))
                }
            }
        }
        for g in kind.centrals() {
            if outer.contains(g) && !inner.contains(g) {
                return Err(Error::Unsupported(format!("the base does not assign a value to {g}")));
            }
        }
        Ok(Induced { kind, outer, inner, base, families, memo: Mutex::new(HashMap::new()) })
    }

    pub fn base(&self) -> &Arc<dyn Carrier> {
        &self.base
    }

    pub fn inner(&self) -> Subalgebra {
        self.inner
    }

    pub fn outer(&self) -> Subalgebra {
        self.outer
    }

    fn family(&self, g: &Generator) -> Option<&Family> {
        self.families.iter().find(|f| f.tag == g.tag)
    }

    /// Lowest index inside `inner` for the family of `tag`, if the family is induced.
    pub fn threshold(&self, tag: Tag) -> Option<i64> {
        self.families.iter().find(|f| f.tag == tag).map(|f| f.threshold)
    }

    /// Twice the truncation weight of an outer-but-not-inner generator.
    pub fn cost2(&self, g: &Generator) -> i64 {
        self.family(g).map(|f| f.threshold - g.twice).expect("generator is not induced")
    }

    fn key(&self, g: &Generator) -> (u8, u8, i64) {
        let class = match g.tag {
            Tag::H => 1,
            Tag::D => 2,
            _ => 0,
        };
        let tier = if self.inner.contains(g) { 1 } else { 0 };
        (tier, class, g.twice)
    }

    fn wrap(m: Monomial, v: Basis) -> Basis {
        Basis::Induced { monomial: m, base: Box::new(v) }
    }

    /// `g · (m ⊗ v)`.
    fn left_mul(&self, g: Generator, m: &Monomial, v: &Basis) -> Result<Vector> {
        if g.is_central() {
            return Ok(Vector::single(Self::wrap(m.clone(), v.clone()), self.base.central_value(g)));
        }
        let Some((f, rest)) = m.split_first() else {
            if self.inner.contains(&g) {
                let w = self.base.act_basis(g, v)?;
                return Ok(w.iter().map(|(b, c)| (Self::wrap(Monomial::one(), b.clone()), c.clone())).collect());
            }
            return Ok(Vector::basis(Self::wrap(Monomial(vec![(g, 1)]), v.clone())));
        };
        if self.key(&g) <= self.key(&f) {
            return Ok(Vector::basis(Self::wrap(m.prepend(g), v.clone())));
        }
        let memo_key = (g, Self::wrap(m.clone(), v.clone()));
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(&memo_key) {
            return Ok(hit.clone());
        }
        // g f rest = f (g rest) + [g, f] rest
        let mut out = Vector::zero();
        for (b, c) in self.left_mul(g, &rest, v)?.iter() {
            let Basis::Induced { monomial, base } = b else { unreachable!() };
            out.add_scaled(&self.left_mul(f, monomial, base)?, c);
        }
        for (h, c) in bracket(self.kind, g, f)?.iter() {
            out.add_scaled(&self.left_mul(*h, &rest, v)?, c);
        }
        self.memo.lock().expect("memo poisoned").insert(memo_key, out.clone());
        Ok(out)
    }

    /// Outer-but-not-inner generators of twice-weight at most `max_w2`, in factor order.
    fn free_generators(&self, max_w2: i64) -> Vec<Generator> {
        let mut out = Vec::new();
        for f in &self.families {
            let mut t = f.threshold - 2;
            while f.threshold - t <= max_w2 && f.floor.is_none_or(|a| t >= a) {
                out.push(Generator { tag: f.tag, twice: t });
                t -= 2;
            }
        }
        out.sort_by_key(|g| self.key(g));
        out
    }

    fn max_free_degree2(&self) -> i64 {
        self.families.iter().map(|f| f.threshold - 2).max().unwrap_or(i64::MIN)
    }

    pub fn split(b: &Basis) -> (&Monomial, &Basis) {
        match b {
            Basis::Induced { monomial, base } => (monomial, base),
            other => panic!("not an induced basis vector: {other}"),
        }
    }
}

impl Carrier for Induced {
    fn kind(&self) -> AlgebraKind {
        self.kind
    }

    fn name(&self) -> &'static str {
        "induced"
    }

    fn admits(&self) -> Subalgebra {
        self.outer
    }

    fn act_basis(&self, g: Generator, b: &Basis) -> Result<Vector> {
        let (m, v) = Self::split(b);
        self.left_mul(g, m, v)
    }

    fn bound(&self, b: &Basis) -> i64 {
        let (m, v) = Self::split(b);
        let neg: i64 = m.0.iter().filter(|(g, _)| g.twice < 0).map(|(g, e)| -g.twice * *e as i64).sum();
        self.base.bound(v).max(self.max_free_degree2()) + neg
    }

    fn weight2(&self, b: &Basis) -> i64 {
        let (m, v) = Self::split(b);
        let own: i64 = m.0.iter().map(|(g, e)| self.cost2(g) * *e as i64).sum();
        own + self.base.weight2(v)
    }

    fn basis_upto(&self, max_w2: i64) -> Result<Vec<Basis>> {
        let gens = self.free_generators(max_w2);
        let base: Vec<(Basis, i64)> =
            self.base.basis_upto(max_w2)?.into_iter().map(|b| { let w = self.base.weight2(&b); (b, w) }).collect();
        let mut monos: Vec<(Vec<(Generator, u32)>, i64)> = Vec::new();
        let mut stack = vec![(0usize, Vec::new(), 0i64)];
        while let Some((i, f, used)) = stack.pop() {
            if i == gens.len() {
                monos.push((f, used));
                continue;
            }
            let c = self.cost2(&gens[i]);
            let mut e = 0u32;
            while used + e as i64 * c <= max_w2 {
                let mut g = f.clone();
                if e > 0 {
                    g.push((gens[i], e));
                }
                stack.push((i + 1, g, used + e as i64 * c));
                e += 1;
            }
        }
        let mut out = Vec::new();
        for (f, used) in monos {
            for (b, w) in &base {
                if used + w <= max_w2 {
                    out.push(Self::wrap(Monomial(f.clone()), b.clone()));
                }
            }
        }
        out.sort_by_cached_key(|b| (self.weight2(b), b.clone()));
        Ok(out)
    }

    fn central_value(&self, g: Generator) -> Q {
        self.base.central_value(g)
    }

    fn check_key(&self, b: &Basis) -> Result<()> {
        self.base.check_key(Self::split(b).1)
    }

    fn as_induced(&self) -> Option<&Induced> {
        Some(self)
    }
}
