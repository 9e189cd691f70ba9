use super::{Basis, Carrier, Vector};
use crate::algebra::{AlgebraKind, Generator, Range, Subalgebra, Tag};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::sugawara::{sugawara_central_charge, sugawara_on};
use num_traits::Zero;
use std::sync::Arc;

/// A Heisenberg module made into a module over the full algebra by letting
/// `d_n` act as the Sugawara operator.
pub struct SugawaraDressed {
    base: Arc<dyn Carrier>,
    level: Q,
    z: Q,
    c1: Q,
}

impl SugawaraDressed {
    /// `z` is the value of `c2` on the twisted side and must be 0 for the mirror algebra.
    pub fn new(base: Arc<dyn Carrier>, z: Q) -> Result<Self> {
        let kind = base.kind();
        if base.admits().h != Range::All {
            return Err(Error::NonRestrictedVector(format!("the {} carrier lacks the full Heisenberg action", base.name())));
        }
        if kind == AlgebraKind::Mirror && !z.is_zero() {
            return Err(Error::Unsupported("z only exists for the twisted algebra".into()));
        }
        let level = base.central_value(kind.level_central());
        let c1 = sugawara_central_charge(kind, &level, &z)?;
        Ok(SugawaraDressed { base, level, z, c1 })
    }

    pub fn base(&self) -> &Arc<dyn Carrier> {
        &self.base
    }
}

impl Carrier for SugawaraDressed {
    fn kind(&self) -> AlgebraKind {
        self.base.kind()
    }

    fn name(&self) -> &'static str {
        "sugawara"
    }

    fn admits(&self) -> Subalgebra {
        Subalgebra::full(self.kind())
    }

    fn act_basis(&self, g: Generator, b: &Basis) -> Result<Vector> {
        match g.tag {
            Tag::D => sugawara_on(self.base.as_ref(), g.twice / 2, &self.level, &self.z, &Vector::basis(b.clone())),
            _ => self.base.act_basis(g, b),
        }
    }

    fn bound(&self, b: &Basis) -> i64 {
        (2 * self.base.bound(b)).max(0)
    }

    fn weight2(&self, b: &Basis) -> i64 {
        self.base.weight2(b)
    }

    fn basis_upto(&self, max_w2: i64) -> Result<Vec<Basis>> {
        self.base.basis_upto(max_w2)
    }

    fn central_value(&self, g: Generator) -> Q {
        match (self.kind(), g.tag) {
            (_, Tag::C1) => self.c1.clone(),
            (AlgebraKind::Mirror, Tag::C2) => self.level.clone(),
            (AlgebraKind::Twisted, Tag::C2) => self.z.clone(),
            (AlgebraKind::Twisted, Tag::C3) => self.level.clone(),
            _ => Q::zero(),
        }
    }

    fn check_key(&self, b: &Basis) -> Result<()> {
        self.base.check_key(b)
    }
}
