use super::{Basis, Carrier, Centrals, Vector};
use crate::algebra::{AlgebraKind, Generator, Subalgebra, Tag};
use crate::error::{Error, Result};
use crate::rational::{q, qf, Q};
use num_traits::Zero;

/// The space `(t-1)^{-1} Q[t, t^{-1}]` with basis `f_k = t^k/(t-1)`,
/// carrying `h f = t f' + f/(t^2 (t-1))` and `e f = t f`. On the basis
/// `h f_k = (k-1) f_k - f_{k-1} - f_{k-2}` and `e f_k = f_{k+1}`.
///
/// Mirror: `d_0 = -h/2`, `h_{1/2} = e`, higher modes zero.
/// Twisted: `d_0 = -h`, `h_1 = e`, `h_0 = z'`, higher modes zero.
pub struct Laurent {
    kind: AlgebraKind,
    window: (i64, i64),
    centrals: Centrals,
    zprime: Q,
}

impl Laurent {
    /// `centrals` holds the values of `c1, c2, c3`; the Heisenberg level must be nonzero.
    pub fn new(kind: AlgebraKind, window: (i64, i64), centrals: Centrals, zprime: Q) -> Result<Self> {
        if centrals.get(kind.level_central()).is_zero() {
            return Err(Error::ZeroLevel);
        }
        if window.0 > window.1 {
            return Err(Error::Unsupported("empty index window".into()));
        }
        if kind == AlgebraKind::Mirror && !zprime.is_zero() {
            return Err(Error::Unsupported("the mirror algebra has no zero mode".into()));
        }
        Ok(Laurent { kind, window, centrals, zprime })
    }

    pub fn h(k: i64) -> Vector {
        let mut out = Vector::zero();
        out.add_term(Basis::Laurent(k), q(k - 1));
        out.add_term(Basis::Laurent(k - 1), q(-1));
        out.add_term(Basis::Laurent(k - 2), q(-1));
        out
    }

    pub fn e(k: i64) -> Vector {
        Vector::basis(Basis::Laurent(k + 1))
    }
}

fn index(b: &Basis) -> i64 {
    match b {
        Basis::Laurent(k) => *k,
        other => panic!("not a Laurent basis vector: {other}"),
    }
}

impl Carrier for Laurent {
    fn kind(&self) -> AlgebraKind {
        self.kind
    }

    fn name(&self) -> &'static str {
        "laurent"
    }

    fn admits(&self) -> Subalgebra {
        Subalgebra::dmn(self.kind, 0, 0)
    }

    fn act_basis(&self, g: Generator, b: &Basis) -> Result<Vector> {
        let k = index(b);
        let e_mode = match self.kind {
            AlgebraKind::Mirror => 1,
            AlgebraKind::Twisted => 2,
        };
        Ok(match (g.tag, g.twice) {
            (Tag::D, 0) => match self.kind {
                AlgebraKind::Mirror => Self::h(k).scaled(&qf(-1, 2)),
                AlgebraKind::Twisted => Self::h(k).scaled(&q(-1)),
            },
            (Tag::H, 0) => Vector::single(b.clone(), self.zprime.clone()),
            (Tag::H, t) if t == e_mode => Self::e(k),
            _ => Vector::zero(),
        })
    }

    fn bound(&self, _b: &Basis) -> i64 {
        match self.kind {
            AlgebraKind::Mirror => 1,
            AlgebraKind::Twisted => 2,
        }
    }

    fn weight2(&self, _b: &Basis) -> i64 {
        0
    }

    fn basis_upto(&self, _max_w2: i64) -> Result<Vec<Basis>> {
        Ok((self.window.0..=self.window.1).map(Basis::Laurent).collect())
    }

    fn central_value(&self, g: Generator) -> Q {
        self.centrals.get(g)
    }

    fn check_key(&self, b: &Basis) -> Result<()> {
        let k = index(b);
        if k < self.window.0 || k > self.window.1 {
            return Err(Error::WindowExceeded(k));
        }
        Ok(())
    }
}
