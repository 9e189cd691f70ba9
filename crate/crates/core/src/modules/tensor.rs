use super::{Basis, Carrier, Vector};
use crate::algebra::{AlgebraKind, Generator, Range, Subalgebra, Tag};
use crate::error::{Error, Result};
use crate::rational::Q;
use num_traits::Zero;
use std::sync::Arc;

/// `A ⊗ B` with generators acting by `g ⊗ 1 + 1 ⊗ g` and centrals summed.
pub struct Tensor {
    left: Arc<dyn Carrier>,
    right: Arc<dyn Carrier>,
    admits: Subalgebra,
}

impl Tensor {
    pub fn new(left: Arc<dyn Carrier>, right: Arc<dyn Carrier>) -> Result<Self> {
        if left.kind() != right.kind() {
            return Err(Error::KindMismatch);
        }
        let admits = left.admits().meet(&right.admits());
        let t = Tensor { left, right, admits };
        let lc = t.kind().level_central();
        if t.central_value(lc).is_zero() {
            return Err(Error::ZeroLevel);
        }
        Ok(t)
    }

    fn pair(b: &Basis) -> (&Basis, &Basis) {
        match b {
            Basis::Pair(a, b) => (a, b),
            other => panic!("not a tensor basis vector: {other}"),
        }
    }
}

impl Carrier for Tensor {
    fn kind(&self) -> AlgebraKind {
        self.left.kind()
    }

    fn name(&self) -> &'static str {
        "tensor"
    }

    fn admits(&self) -> Subalgebra {
        self.admits
    }

    fn act_basis(&self, g: Generator, b: &Basis) -> Result<Vector> {
        let (x, y) = Self::pair(b);
        let mut out = Vector::zero();
        for (x2, c) in self.left.act_basis(g, x)?.iter() {
            out.add_term(Basis::Pair(Box::new(x2.clone()), Box::new(y.clone())), c.clone());
        }
        for (y2, c) in self.right.act_basis(g, y)?.iter() {
            out.add_term(Basis::Pair(Box::new(x.clone()), Box::new(y2.clone())), c.clone());
        }
        Ok(out)
    }

    fn bound(&self, b: &Basis) -> i64 {
        let (x, y) = Self::pair(b);
        self.left.bound(x).max(self.right.bound(y))
    }

    fn weight2(&self, b: &Basis) -> i64 {
        let (x, y) = Self::pair(b);
        self.left.weight2(x) + self.right.weight2(y)
    }

    fn basis_upto(&self, max_w2: i64) -> Result<Vec<Basis>> {
        let ls = self.left.basis_upto(max_w2)?;
        let rs = self.right.basis_upto(max_w2)?;
        let mut out = Vec::new();
        for x in &ls {
            let wx = self.left.weight2(x);
            for y in &rs {
                if wx + self.right.weight2(y) <= max_w2 {
                    out.push(Basis::Pair(Box::new(x.clone()), Box::new(y.clone())));
                }
            }
        }
        out.sort_by_cached_key(|b| (self.weight2(b), b.clone()));
        Ok(out)
    }

    fn central_value(&self, g: Generator) -> Q {
        let side = |c: &Arc<dyn Carrier>| if c.admits().contains(&g) { c.central_value(g) } else { Q::zero() };
        side(&self.left) + side(&self.right)
    }

    fn check_key(&self, b: &Basis) -> Result<()> {
        let (x, y) = Self::pair(b);
        self.left.check_key(x)?;
        self.right.check_key(y)
    }
}

/// A module over the Virasoro part extended to the full algebra by letting
/// `h` and the Heisenberg centrals act as 0.
pub struct VirTrivial {
    inner: Arc<dyn Carrier>,
}

impl VirTrivial {
    pub fn new(inner: Arc<dyn Carrier>) -> Result<Self> {
        let a = inner.admits();
        if a.d != Range::All {
            return Err(Error::Unsupported(format!("the {} carrier lacks the full Virasoro action", inner.name())));
        }
        Ok(VirTrivial { inner })
    }
}

impl Carrier for VirTrivial {
    fn kind(&self) -> AlgebraKind {
        self.inner.kind()
    }

    fn name(&self) -> &'static str {
        "vir_trivial"
    }

    fn admits(&self) -> Subalgebra {
        Subalgebra::full(self.kind())
    }

    fn act_basis(&self, g: Generator, b: &Basis) -> Result<Vector> {
        match g.tag {
            Tag::D => self.inner.act_basis(g, b),
            _ => Ok(Vector::zero()),
        }
    }

    fn bound(&self, b: &Basis) -> i64 {
        self.inner.bound(b)
    }

    fn weight2(&self, b: &Basis) -> i64 {
        self.inner.weight2(b)
    }

    fn basis_upto(&self, max_w2: i64) -> Result<Vec<Basis>> {
        self.inner.basis_upto(max_w2)
    }

    fn central_value(&self, g: Generator) -> Q {
        match g.tag {
            Tag::C1 => self.inner.central_value(g),
            _ => Q::zero(),
        }
    }

    fn check_key(&self, b: &Basis) -> Result<()> {
        self.inner.check_key(b)
    }
}
