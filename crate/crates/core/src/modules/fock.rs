use super::{Basis, Carrier, Vector};
use crate::algebra::{AlgebraKind, Generator, Subalgebra, Tag};
use crate::error::{Error, Result};
use crate::pbw::Monomial;
use crate::rational::{half, Q};
use num_traits::Zero;

/// Heisenberg module induced from the nonnegative modes: basis is products
/// of negative modes on the vacuum, positive modes act by commutation.
///
/// The truncation weight is the grading `sum |r|` over the factors.
pub struct Fock {
    kind: AlgebraKind,
    level: Q,
    /// Eigenvalue of `h_0` (twisted only).
    mu: Q,
}

impl Fock {
    pub fn new(kind: AlgebraKind, level: Q, mu: Q) -> Result<Self> {
        if level.is_zero() {
            return Err(Error::ZeroLevel);
        }
        if kind == AlgebraKind::Mirror && !mu.is_zero() {
            return Err(Error::Unsupported("the mirror algebra has no zero mode".into()));
        }
        Ok(Fock { kind, level, mu })
    }

    pub fn vacuum() -> Basis {
        Basis::Fock(Monomial::one())
    }
}

fn mono(b: &Basis) -> &Monomial {
    match b {
        Basis::Fock(m) => m,
        other => panic!("not a Fock basis vector: {other}"),
    }
}

impl Carrier for Fock {
    fn kind(&self) -> AlgebraKind {
        self.kind
    }

    fn name(&self) -> &'static str {
        "fock"
    }

    fn admits(&self) -> Subalgebra {
        Subalgebra::heis(self.kind)
    }

    fn act_basis(&self, g: Generator, b: &Basis) -> Result<Vector> {
        let m = mono(b);
        debug_assert_eq!(g.tag, Tag::H);
        let t = g.twice;
        if t < 0 {
            // negative modes commute with each other; keep ascending order
            let mut f = m.0.clone();
            match f.iter().position(|(x, _)| x.twice >= t) {
                Some(p) if f[p].0.twice == t => f[p].1 += 1,
                Some(p) => f.insert(p, (g, 1)),
                None => f.push((g, 1)),
            }
            return Ok(Vector::basis(Basis::Fock(Monomial(f))));
        }
        if t == 0 {
            return Ok(Vector::single(b.clone(), self.mu.clone()));
        }
        let Some(p) = m.0.iter().position(|(x, _)| x.twice == -t) else {
            return Ok(Vector::zero());
        };
        let e = m.0[p].1;
        let mut f = m.0.clone();
        if e == 1 {
            f.remove(p);
        } else {
            f[p].1 -= 1;
        }
        let c = half(t) * &self.level * Q::from_integer(e.into());
        Ok(Vector::single(Basis::Fock(Monomial(f)), c))
    }

    fn bound(&self, b: &Basis) -> i64 {
        mono(b).0.iter().map(|(g, _)| -g.twice).max().unwrap_or(0)
    }

    fn weight2(&self, b: &Basis) -> i64 {
        -mono(b).total_degree2()
    }

    fn basis_upto(&self, max_w2: i64) -> Result<Vec<Basis>> {
        let start = if self.kind == AlgebraKind::Mirror { 1 } else { 2 };
        let modes: Vec<i64> = (start..=max_w2).step_by(2).collect();
        let mut out = Vec::new();
        let mut stack: Vec<(usize, i64, Vec<(Generator, u32)>)> = vec![(0, max_w2, Vec::new())];
        while let Some((i, budget, f)) = stack.pop() {
            if i == modes.len() {
                let mut f = f;
                f.sort_by_key(|(g, _)| g.twice);
                out.push(Basis::Fock(Monomial(f)));
                continue;
            }
            let w = modes[i];
            let mut e = 0u32;
            while (e as i64) * w <= budget {
                let mut g = f.clone();
                if e > 0 {
                    g.push((Generator::h2(-w), e));
                }
                stack.push((i + 1, budget - e as i64 * w, g));
                e += 1;
            }
        }
        out.sort_by_key(|b| (self.weight2(b), b.clone()));
        Ok(out)
    }

    fn central_value(&self, g: Generator) -> Q {
        if g == self.kind.level_central() {
            self.level.clone()
        } else {
            Q::zero()
        }
    }
}
