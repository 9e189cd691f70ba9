use super::{Basis, Carrier, Vector};
use crate::algebra::{AlgebraKind, Generator, Subalgebra};
use crate::error::{Error, Result};
use crate::rational::{qf, Q};
use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

/// Polynomials in `x_1..x_n` as a module over the mirror Heisenberg modes
/// `h_r`, `r >= -n + 1/2`:
///
/// * `h_{i-1/2} f = λ_i f(x_i - 1)`
/// * `h_{-i+1/2} f = -ℓ(i - 1/2)/λ_i (x_i + a_i) f(x_i + 1)`
/// * `h_{n+j+1/2} f = 0`, `c2 = ℓ`
///
/// Truncation weight is the total degree.
pub struct Poly {
    n: usize,
    level: Q,
    lambda: Vec<Q>,
    a: Vec<Q>,
}

impl Poly {
    pub fn new(level: Q, lambda: Vec<Q>, a: Vec<Q>) -> Result<Self> {
        if level.is_zero() {
            return Err(Error::ZeroLevel);
        }
        if lambda.len() != a.len() || lambda.is_empty() {
            return Err(Error::Unsupported("lambda and a must have the same positive length".into()));
        }
        if let Some(i) = lambda.iter().position(Zero::is_zero) {
            return Err(Error::ZeroLambda(i + 1));
        }
        Ok(Poly { n: lambda.len(), level, lambda, a })
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

fn exps(b: &Basis) -> &[u32] {
    match b {
        Basis::Poly(e) => e,
        other => panic!("not a polynomial basis vector: {other}"),
    }
}

fn binom(n: u32, k: u32) -> Q {
    Q::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// `x^e` with `x_i` replaced by `x_i + s`.
fn shift(e: &[u32], i: usize, s: i64) -> Vector {
    let mut out = Vector::zero();
    let top = e[i];
    for k in 0..=top {
        let mut f = e.to_vec();
        f[i] = k;
        let c = binom(top, k) * Q::from_integer(BigInt::from(s).pow(top - k));
        out.add_term(Basis::Poly(f), c);
    }
    out
}

impl Carrier for Poly {
    fn kind(&self) -> AlgebraKind {
        AlgebraKind::Mirror
    }

    fn name(&self) -> &'static str {
        "poly"
    }

    fn admits(&self) -> Subalgebra {
        Subalgebra::heis_from(AlgebraKind::Mirror, -(self.n as i64))
    }

    fn act_basis(&self, g: Generator, b: &Basis) -> Result<Vector> {
        let e = exps(b);
        let t = g.twice;
        let n = self.n as i64;
        if t > 0 {
            let i = ((t + 1) / 2) as usize;
            if i as i64 > n {
                return Ok(Vector::zero());
            }
            return Ok(shift(e, i - 1, -1).scaled(&self.lambda[i - 1]));
        }
        let i = ((1 - t) / 2) as usize;
        let c = -(&self.level * qf(2 * i as i64 - 1, 2)) / &self.lambda[i - 1];
        let shifted = shift(e, i - 1, 1);
        let mut out = Vector::zero();
        for (f, x) in shifted.iter() {
            let mut up = exps(f).to_vec();
            up[i - 1] += 1;
            out.add_term(Basis::Poly(up), x * &c);
            out.add_term(f.clone(), x * &c * &self.a[i - 1]);
        }
        Ok(out)
    }

    fn bound(&self, _b: &Basis) -> i64 {
        2 * self.n as i64 - 1
    }

    fn weight2(&self, b: &Basis) -> i64 {
        2 * exps(b).iter().map(|&x| x as i64).sum::<i64>()
    }

    fn basis_upto(&self, max_w2: i64) -> Result<Vec<Basis>> {
        let deg = (max_w2 / 2) as u32;
        let mut out = vec![vec![]];
        for _ in 0..self.n {
            let mut next = Vec::new();
            for p in &out {
                let used: u32 = p.iter().sum();
                for k in 0..=deg - used {
                    let mut q = p.clone();
                    q.push(k);
                    next.push(q);
                }
            }
            out = next;
        }
        Ok(out.into_iter().map(Basis::Poly).collect())
    }

    fn central_value(&self, g: Generator) -> Q {
        if g == Generator::C2 {
            self.level.clone()
        } else {
            Q::zero()
        }
    }
}
