//! Sugawara operators built from the Heisenberg action of a module, the
//! shifted operators `d'_n = d_n - L_n`, and exact checks of their relations.

use crate::algebra::{AlgebraKind, Generator, Range};
use crate::error::{Error, Result};
use crate::modules::{vec_bound, vec_to_json, Carrier, ModuleHandle, Vector};
use crate::rational::{fmt_q, q, qf, Q};
use crate::report::{Counterexample, Report};
use num_traits::{One, Zero};
use std::fmt;

/// Sugawara operator on a carrier with a full Heisenberg action.
///
/// Mirror: `L_n = (1/2l) sum_k h_{n-k} h_k`, with `L_0` taken as
/// `(1/l) sum_{k>0} h_{-k} h_k + 1/16`. Twisted: the normal-ordered sum plus
/// `((n+1) z / l) h_n`. Only `k` with both factors able to act nontrivially
/// are visited, so the sum is finite.
pub fn sugawara_on(c: &dyn Carrier, n: i64, level: &Q, z: &Q, v: &Vector) -> Result<Vector> {
    if level.is_zero() {
        return Err(Error::ZeroLevel);
    }
    if c.admits().h != Range::All {
        return Err(Error::NonRestrictedVector(format!("the {} carrier lacks the full Heisenberg action", c.name())));
    }
    let kind = c.kind();
    let h = |t: i64, w: &Vector| -> Result<Vector> { w.map_linear(|b| c.act_basis(Generator::h2(t), b)) };
    let big_k = vec_bound(c, v);
    let n2 = 2 * n;
    let mut out = Vector::zero();
    let parity = kind.h_parity();
    let first = |lo: i64| if lo.rem_euclid(2) == parity { lo } else { lo + 1 };
    match kind {
        AlgebraKind::Mirror if n == 0 => {
            let mut k = 1;
            while k <= big_k {
                out.add(&h(-k, &h(k, v)?)?);
                k += 2;
            }
            out = out.scaled(&(Q::one() / level));
            out.add_scaled(v, &qf(1, 16));
        }
        AlgebraKind::Mirror => {
            // n != 0: the two factors commute, so either one may act first
            let mut k = first(n2 - big_k);
            while k <= big_k {
                let (a, b) = if k >= n2 - k { (k, n2 - k) } else { (n2 - k, k) };
                out.add(&h(b, &h(a, v)?)?);
                k += 2;
            }
            out = out.scaled(&(Q::one() / (q(2) * level)));
        }
        AlgebraKind::Twisted => {
            let mut k = first(n2 - big_k);
            while k <= big_k {
                let (hi, lo) = if k >= n2 - k { (k, n2 - k) } else { (n2 - k, k) };
                out.add(&h(lo, &h(hi, v)?)?);
                k += 2;
            }
            out = out.scaled(&(Q::one() / (q(2) * level)));
            if !z.is_zero() {
                out.add_scaled(&h(n2, v)?, &(q(n + 1) * z / level));
            }
        }
    }
    Ok(out)
}

/// `L_n v` on a mirror module.
pub fn sugawara_l(m: &ModuleHandle, n: i64, v: &Vector) -> Result<Vector> {
    if m.kind() != AlgebraKind::Mirror {
        return Err(Error::KindMismatch);
    }
    sugawara_on(m.carrier().as_ref(), n, &m.level(), &Q::zero(), v)
}

/// `Lbar_n v` on a twisted module.
pub fn sugawara_lbar(m: &ModuleHandle, n: i64, z: &Q, v: &Vector) -> Result<Vector> {
    if m.kind() != AlgebraKind::Twisted {
        return Err(Error::KindMismatch);
    }
    sugawara_on(m.carrier().as_ref(), n, &m.level(), z, v)
}

/// `L_n` or `Lbar_n` by kind; `z` is ignored for the mirror algebra.
pub fn sugawara(m: &ModuleHandle, n: i64, z: &Q, v: &Vector) -> Result<Vector> {
    sugawara_on(m.carrier().as_ref(), n, &m.level(), z, v)
}

/// The value of `z` a module carries: `c2` on twisted modules, 0 otherwise.
pub fn module_z(m: &ModuleHandle) -> Q {
    match m.kind() {
        AlgebraKind::Mirror => Q::zero(),
        AlgebraKind::Twisted => m.central(Generator::C2),
    }
}

/// Central charge of the Sugawara operators: 1, or `1 - 12 z^2 / l`.
pub fn sugawara_central_charge(kind: AlgebraKind, level: &Q, z: &Q) -> Result<Q> {
    if level.is_zero() {
        return Err(Error::ZeroLevel);
    }
    Ok(match kind {
        AlgebraKind::Mirror => Q::one(),
        AlgebraKind::Twisted => Q::one() - q(12) * z * z / level,
    })
}

/// `d'_n v = d_n v - L_n v`, with `z` read off the module.
pub fn d_prime(m: &ModuleHandle, n: i64, v: &Vector) -> Result<Vector> {
    let d = m.act_gen_lazy(Generator::d(n), v)?;
    Ok(d.minus(&sugawara(m, n, &module_z(m), v)?))
}

/// Operators the checks compose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Gen(Generator),
    Sug(i64),
    DPrime(i64),
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Gen(g) => write!(f, "{g}"),
            Op::Sug(n) => write!(f, "L_{n}"),
            Op::DPrime(n) => write!(f, "d'_{n}"),
        }
    }
}

/// Applies an operator lazily with the given `z`.
pub fn apply(m: &ModuleHandle, op: Op, z: &Q, v: &Vector) -> Result<Vector> {
    match op {
        Op::Gen(g) => m.act_gen_lazy(g, v),
        Op::Sug(n) => sugawara(m, n, z, v),
        Op::DPrime(n) => {
            let d = m.act_gen_lazy(Generator::d(n), v)?;
            Ok(d.minus(&sugawara(m, n, z, v)?))
        }
    }
}

/// `[x, y] v`.
pub fn commutator(m: &ModuleHandle, x: Op, y: Op, z: &Q, v: &Vector) -> Result<Vector> {
    let xy = apply(m, x, z, &apply(m, y, z, v)?)?;
    let yx = apply(m, y, z, &apply(m, x, z, v)?)?;
    Ok(xy.minus(&yx))
}

struct Ctx<'a> {
    m: &'a ModuleHandle,
    z: Q,
    report: Report,
}

impl Ctx<'_> {
    fn check(&mut self, identity: impl FnOnce() -> String, v: &Vector, lhs: Vector, rhs: Vector) {
        let ok = lhs == rhs;
        self.report.record(ok, || Counterexample {
            identity: identity(),
            vector: vec_to_json(v),
            lhs: vec_to_json(&lhs),
            rhs: vec_to_json(&rhs),
        });
    }

    /// `[A_a, A_b] = (a-b) A_{a+b} + delta (a^3-a)/12 c` for the family `mk`.
    fn virasoro(&mut self, mk: fn(i64) -> Op, c: &Q, r: i64, v: &Vector) -> Result<()> {
        for a in -r..=r {
            for b in -r..a {
                let lhs = commutator(self.m, mk(a), mk(b), &self.z, v)?;
                let mut rhs = apply(self.m, mk(a + b), &self.z, v)?.scaled(&q(a - b));
                if a + b == 0 {
                    rhs.add_scaled(v, &(qf(a * a * a - a, 12) * c));
                }
                self.check(|| format!("[{}, {}] = {}*{} + central {}", mk(a), mk(b), a - b, mk(a + b), fmt_q(c)), v, lhs, rhs);
            }
        }
        Ok(())
    }

    /// `[A_n, h_t] = rhs(n, t)` for every `h_t` with `|t| <= r`.
    fn with_h(
        &mut self,
        mk: fn(i64) -> Op,
        r: i64,
        v: &Vector,
        rhs: impl Fn(&Self, i64, i64) -> Result<Vector>,
    ) -> Result<()> {
        let kind = self.m.kind();
        for n in -r..=r {
            for t in -2 * r..=2 * r {
                if t.rem_euclid(2) != kind.h_parity() {
                    continue;
                }
                let g = Generator::h2(t);
                let lhs = commutator(self.m, mk(n), Op::Gen(g), &self.z, v)?;
                let want = rhs(self, n, t)?;
                self.check(|| format!("[{}, {g}]", mk(n)), v, lhs, want);
            }
        }
        Ok(())
    }
}

fn test_vectors(m: &ModuleHandle, r: i64) -> Result<Vec<Vector>> {
    let n = m
        .truncation()
        .ok_or_else(|| Error::Unsupported("verification needs a truncation".into()))?;
    Ok(m.basis_upto((n - 2 * r).max(0))?.into_iter().map(Vector::basis).collect())
}

fn has_full_d(m: &ModuleHandle) -> bool {
    m.carrier().admits().d == Range::All
}

/// Checks the Sugawara relations on every basis vector of weight at most
/// `N - 2R`: the bracket with `h`, the Virasoro relations of `L`, and on
/// modules with a full `d` action the relations of `d'` and `[d_m, L_n] = [L_m, L_n]`.
///
/// `z` defaults to the value of `c2` on twisted modules.
pub fn verify_sugawara_relations(m: &ModuleHandle, r: i64, z: Option<Q>) -> Result<Report> {
    let level = m.level();
    let z = z.unwrap_or_else(|| module_z(m));
    let c_l = sugawara_central_charge(m.kind(), &level, &z)?;
    let kind = m.kind();
    let mut ctx = Ctx { m, z: z.clone(), report: Report::new() };
    for v in test_vectors(m, r)? {
        ctx.with_h(Op::Sug, r, &v, |cx, n, t| {
            let mut out = cx.m.act_gen_lazy(Generator::h2(2 * n + t), &v)?.scaled(&qf(-t, 2));
            if kind == AlgebraKind::Twisted && 2 * n + t == 0 {
                out.add_scaled(&v, &(q(n * n + n) * &cx.z));
            }
            Ok(out)
        })?;
        ctx.virasoro(Op::Sug, &c_l, r, &v)?;
        if has_full_d(m) {
            let c_prime = m.central(Generator::C1) - &c_l;
            ctx.virasoro(Op::DPrime, &c_prime, r, &v)?;
            ctx.with_h(Op::DPrime, r, &v, |_, _, _| Ok(Vector::zero()))?;
            for a in -r..=r {
                for b in -r..=r {
                    let lhs = commutator(m, Op::Gen(Generator::d(a)), Op::Sug(b), &ctx.z, &v)?;
                    let rhs = commutator(m, Op::Sug(a), Op::Sug(b), &ctx.z, &v)?;
                    ctx.check(|| format!("[d:{a}, L_{b}] = [L_{a}, L_{b}]"), &v, lhs, rhs);
                }
            }
        }
    }
    Ok(ctx.report)
}

/// Checks that `d'_n = d_n - L_n` commutes with `h` and with `L`, and
/// satisfies the Virasoro relations with central charge `c - c_L`.
pub fn appendix_decomposition_check(m: &ModuleHandle, r: i64) -> Result<Report> {
    if !has_full_d(m) {
        return Err(Error::Unsupported("the decomposition needs a module with the full d action".into()));
    }
    let level = m.level();
    let z = module_z(m);
    let c_l = sugawara_central_charge(m.kind(), &level, &z)?;
    let c_prime = m.central(Generator::C1) - &c_l;
    let mut ctx = Ctx { m, z, report: Report::new() };
    for v in test_vectors(m, r)? {
        ctx.with_h(Op::DPrime, r, &v, |_, _, _| Ok(Vector::zero()))?;
        ctx.virasoro(Op::DPrime, &c_prime, r, &v)?;
        for a in -r..=r {
            for b in -r..=r {
                let lhs = commutator(m, Op::DPrime(a), Op::Sug(b), &ctx.z, &v)?;
                ctx.check(|| format!("[d'_{a}, L_{b}]"), &v, lhs, Vector::zero());
            }
        }
    }
    Ok(ctx.report)
}
