//! Carrier actions checked against hand-computed values and independent
//! evaluations of the underlying functions.

use hv_core::algebra::{AlgebraKind, Generator, Subalgebra};
use hv_core::modules::{
    Basis, Carrier, Centrals, Character, Fock, Induced, Laurent, ModuleHandle, Poly, SugawaraDressed, Tensor, Vector,
    VirTrivial,
};
use hv_core::pbw::Monomial;
use hv_core::rational::{q, qf, Q};
use hv_core::Error;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

use AlgebraKind::{Mirror, Twisted};

fn g(s: &str) -> Generator {
    s.parse().unwrap()
}

fn handle(c: Arc<dyn Carrier>, n: Option<i64>) -> ModuleHandle {
    ModuleHandle::new(c, n)
}

fn act(m: &ModuleHandle, s: &str, v: &Vector) -> Vector {
    m.act_gen_lazy(g(s), v).unwrap()
}

fn vac() -> Vector {
    Vector::basis(Fock::vacuum())
}

fn one_dim(inner: Subalgebra, pairs: &[(&str, Q)]) -> Result<Character, Error> {
    let chi: BTreeMap<Generator, Q> = pairs.iter().map(|(s, c)| (g(s), c.clone())).collect();
    Character::new(inner, chi)
}

fn top() -> Vector {
    Vector::basis(Basis::Induced { monomial: Monomial::one(), base: Box::new(Basis::V0) })
}

#[test]
fn fock_mirror_commutators() {
    let m = handle(Arc::new(Fock::new(Mirror, q(2), Q::zero()).unwrap()), None);
    let w = act(&m, "h:-1/2", &vac());
    assert_eq!(act(&m, "h:1/2", &w), vac());
    let w3 = act(&m, "h:-3/2", &vac());
    assert_eq!(act(&m, "h:3/2", &w3), vac().scaled(&q(3)));
    let ww = act(&m, "h:-1/2", &w);
    assert_eq!(act(&m, "h:1/2", &ww), w.scaled(&q(2)));
    assert!(act(&m, "h:1/2", &vac()).is_zero());
    assert_eq!(m.central(g("c2")), q(2));
}

#[test]
fn fock_twisted_zero_mode() {
    let m = handle(Arc::new(Fock::new(Twisted, q(1), q(2)).unwrap()), None);
    assert_eq!(act(&m, "h:0", &vac()), vac().scaled(&q(2)));
    let w = act(&m, "h:-1", &vac());
    assert_eq!(act(&m, "h:1", &w), vac());
    assert_eq!(act(&m, "h:0", &w), w.scaled(&q(2)));
}

#[test]
fn fock_rejects_zero_level_and_mirror_zero_mode() {
    assert_eq!(Fock::new(Mirror, Q::zero(), Q::zero()).err(), Some(Error::ZeroLevel));
    assert!(matches!(Fock::new(Mirror, q(1), q(1)), Err(Error::Unsupported(_))));
}

#[test]
fn fock_truncation_is_enforced_by_strict_action() {
    let m = handle(Arc::new(Fock::new(Mirror, q(1), Q::zero()).unwrap()), Some(1));
    let w = m.act_gen(g("h:-1/2"), &vac()).unwrap();
    assert!(matches!(m.act_gen(g("h:-3/2"), &w), Err(Error::BoundExceeded(_))));
    assert!(m.act_gen_lazy(g("h:-3/2"), &w).is_ok());
}

/// Evaluates a one-variable polynomial vector at `x`.
fn eval_poly(v: &Vector, x: &Q) -> Q {
    let mut out = Q::zero();
    for (b, c) in v.iter() {
        let Basis::Poly(e) = b else { panic!("not a polynomial") };
        let mut p = Q::one();
        for _ in 0..e[0] {
            p *= x;
        }
        out += c * p;
    }
    out
}

#[test]
fn poly_action_matches_evaluation() {
    let (level, lambda, a) = (qf(3, 2), qf(2, 5), qf(-1, 3));
    let m = handle(Arc::new(Poly::new(level.clone(), vec![lambda.clone()], vec![a.clone()]).unwrap()), None);
    let f = Vector::basis(Basis::Poly(vec![3])).plus(&Vector::single(Basis::Poly(vec![1]), q(-2)));
    let up = act(&m, "h:1/2", &f);
    let down = act(&m, "h:-1/2", &f);
    for x in [q(0), q(2), qf(-7, 3), qf(5, 4)] {
        let fx = |t: &Q| eval_poly(&f, t);
        assert_eq!(eval_poly(&up, &x), &lambda * fx(&(&x - q(1))));
        let want = -(&level * qf(1, 2)) / &lambda * (&x + &a) * fx(&(&x + q(1)));
        assert_eq!(eval_poly(&down, &x), want);
    }
    assert!(act(&m, "h:3/2", &f).is_zero());
}

#[test]
fn poly_rejects_degenerate_parameters() {
    assert_eq!(Poly::new(q(1), vec![q(1), q(0)], vec![q(0), q(0)]).err(), Some(Error::ZeroLambda(2)));
    assert_eq!(Poly::new(q(0), vec![q(1)], vec![q(0)]).err(), Some(Error::ZeroLevel));
}

/// `f_k(t) = t^k / (t - 1)` and its derivative, evaluated directly.
fn f_at(k: i64, t: &Q) -> (Q, Q) {
    let tk = if k >= 0 { pow(t, k as u32) } else { Q::one() / pow(t, (-k) as u32) };
    let tkm1 = &tk / t;
    let d = t - q(1);
    let f = &tk / &d;
    let fp = q(k) * tkm1 / &d - &tk / (&d * &d);
    (f, fp)
}

fn pow(t: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * t)
}

fn eval_laurent(v: &Vector, t: &Q) -> Q {
    v.iter()
        .map(|(b, c)| {
            let Basis::Laurent(k) = b else { panic!("not a Laurent vector") };
            c * f_at(*k, t).0
        })
        .sum()
}

fn laurent_centrals() -> Centrals {
    Centrals([qf(1, 2), q(1), Q::zero()])
}

#[test]
fn laurent_action_matches_rational_functions() {
    let l = Laurent::new(Mirror, (-20, 20), laurent_centrals(), Q::zero()).unwrap();
    let m = handle(Arc::new(l), None);
    for k in [-5, -1, 0, 1, 4] {
        let v = Vector::basis(Basis::Laurent(k));
        let d0 = act(&m, "d:0", &v);
        let e = act(&m, "h:1/2", &v);
        for t in [q(3), qf(1, 2), qf(-5, 2)] {
            let (f, fp) = f_at(k, &t);
            let hf = &t * fp + &f / (&t * &t * (&t - q(1)));
            assert_eq!(eval_laurent(&d0, &t), -hf / q(2));
            assert_eq!(eval_laurent(&e, &t), &t * f);
        }
    }
}

#[test]
fn laurent_basis_formula() {
    let mut want = Vector::single(Basis::Laurent(0), q(-1));
    want.add_term(Basis::Laurent(-1), q(-1));
    want.add_term(Basis::Laurent(-2), q(-1));
    assert_eq!(Laurent::h(0), want);
}

#[test]
fn laurent_window_is_checked() {
    let l = Laurent::new(Mirror, (-2, 2), laurent_centrals(), Q::zero()).unwrap();
    let m = handle(Arc::new(l), None);
    let v = Vector::basis(Basis::Laurent(2));
    assert_eq!(m.act_gen(g("h:1/2"), &v).err(), Some(Error::WindowExceeded(3)));
    assert!(Laurent::new(Mirror, (0, 0), Centrals([q(1), q(0), q(0)]), Q::zero()).is_err());
}

#[test]
fn laurent_twisted_action() {
    let l = Laurent::new(Twisted, (-20, 20), Centrals([q(0), q(0), q(1)]), qf(1, 3)).unwrap();
    let m = handle(Arc::new(l), None);
    let v = Vector::basis(Basis::Laurent(1));
    assert_eq!(act(&m, "d:0", &v), Laurent::h(1).scaled(&q(-1)));
    assert_eq!(act(&m, "h:0", &v), v.scaled(&qf(1, 3)));
    assert_eq!(act(&m, "h:1", &v), Laurent::e(1));
}

#[test]
fn character_consistency() {
    let inner = Subalgebra::dmn(Mirror, 0, 0);
    let bad = one_dim(inner, &[("d:0", q(1)), ("h:1/2", q(2)), ("c2", q(1))]);
    assert!(matches!(bad, Err(Error::InconsistentCharacter(_))));
    let ok = one_dim(inner, &[("d:0", q(1)), ("c1", q(1)), ("c2", q(1))]);
    assert!(ok.is_ok());
    let outside = one_dim(Subalgebra::dmn(Mirror, 1, 1), &[("d:0", q(1))]);
    assert!(outside.is_err());
}

fn verma(h: Q, c: Q) -> Arc<Induced> {
    let base = Arc::new(one_dim(Subalgebra::dmn(Mirror, 0, 0), &[("d:0", h), ("c1", c), ("c2", q(1))]).unwrap());
    Arc::new(Induced::new(base, Subalgebra::full(Mirror)).unwrap())
}

#[test]
fn verma_virasoro_values() {
    let (h, c) = (qf(3, 2), qf(-2, 5));
    let m = handle(verma(h.clone(), c.clone()), None);
    let v = top();
    assert_eq!(act(&m, "d:0", &v), v.scaled(&h));
    assert_eq!(act(&m, "d:1", &act(&m, "d:-1", &v)), v.scaled(&(q(2) * &h)));
    assert_eq!(act(&m, "d:2", &act(&m, "d:-2", &v)), v.scaled(&(q(4) * &h + &c / q(2))));
    assert_eq!(act(&m, "h:1/2", &act(&m, "h:-1/2", &v)), v.scaled(&qf(1, 2)));
    let w = act(&m, "d:-1", &v);
    assert_eq!(act(&m, "d:0", &w), w.scaled(&(&h + q(1))));
}

#[test]
fn semi_whittaker_values() {
    let base = Arc::new(
        one_dim(
            Subalgebra::dmn(Mirror, 1, 1),
            &[("d:1", q(2)), ("h:3/2", q(3)), ("c1", qf(1, 2)), ("c2", q(1))],
        )
        .unwrap(),
    );
    let m = handle(Arc::new(Induced::new(base, Subalgebra::full(Mirror)).unwrap()), None);
    let v = top();
    let w = act(&m, "h:-3/2", &v);
    assert_eq!(act(&m, "h:3/2", &w), v.scaled(&qf(3, 2)).plus(&w.scaled(&q(3))));
    let u = act(&m, "h:-1/2", &v);
    let half = act(&m, "h:1/2", &v);
    assert_eq!(act(&m, "d:1", &u), half.scaled(&qf(1, 2)).plus(&u.scaled(&q(2))));
    assert!(act(&m, "d:5", &w).is_zero());
    assert!(act(&m, "h:5/2", &v).is_zero());
}

#[test]
fn induction_needs_a_base_part_of_each_family() {
    let base: Arc<dyn Carrier> = Arc::new(Fock::new(Mirror, q(1), Q::zero()).unwrap());
    assert!(matches!(Induced::new(base, Subalgebra::full(Mirror)), Err(Error::Unsupported(_))));
}

#[test]
fn dressed_tensor_weight() {
    let h_a = qf(2, 3);
    let fock: Arc<dyn Carrier> = Arc::new(Fock::new(Mirror, q(1), Q::zero()).unwrap());
    let dressed = Arc::new(SugawaraDressed::new(fock, Q::zero()).unwrap());
    let vt = Arc::new(VirTrivial::new(verma(h_a.clone(), qf(-1, 2))).unwrap());
    let t = handle(Arc::new(Tensor::new(vt, dressed).unwrap()), None);
    let v = Vector::basis(Basis::Pair(
        Box::new(Basis::Induced { monomial: Monomial::one(), base: Box::new(Basis::V0) }),
        Box::new(Fock::vacuum()),
    ));
    assert_eq!(act(&t, "d:0", &v), v.scaled(&(h_a + qf(1, 16))));
    assert_eq!(t.central(g("c1")), qf(1, 2));
    assert_eq!(t.central(g("c2")), q(1));
    assert!(act(&t, "h:1/2", &v).is_zero());
}

#[test]
fn tensor_rejects_mixed_kinds() {
    let a: Arc<dyn Carrier> = Arc::new(Fock::new(Mirror, q(1), Q::zero()).unwrap());
    let b: Arc<dyn Carrier> = Arc::new(Fock::new(Twisted, q(1), Q::zero()).unwrap());
    assert_eq!(Tensor::new(a, b).err(), Some(Error::KindMismatch));
}

#[test]
fn tensor_rejects_cancelling_levels() {
    let a: Arc<dyn Carrier> = Arc::new(Fock::new(Mirror, q(1), Q::zero()).unwrap());
    let b: Arc<dyn Carrier> = Arc::new(Fock::new(Mirror, q(-1), Q::zero()).unwrap());
    assert_eq!(Tensor::new(a, b).err(), Some(Error::ZeroLevel));
}

#[test]
fn vir_trivial_kills_heisenberg() {
    let m = handle(Arc::new(VirTrivial::new(verma(q(1), q(3))).unwrap()), None);
    let v = top();
    assert!(act(&m, "h:-1/2", &v).is_zero());
    assert_eq!(act(&m, "d:0", &v), v);
    assert_eq!(m.central(g("c1")), q(3));
    assert_eq!(m.central(g("c2")), Q::zero());
    let fock: Arc<dyn Carrier> = Arc::new(Fock::new(Mirror, q(1), Q::zero()).unwrap());
    assert!(VirTrivial::new(fock).is_err());
}

#[test]
fn dressing_needs_full_heisenberg() {
    let v: Arc<dyn Carrier> =
        Arc::new(one_dim(Subalgebra::dmn(Mirror, 0, 0), &[("d:0", q(1)), ("c2", q(1))]).unwrap());
    assert!(matches!(SugawaraDressed::new(v, Q::zero()), Err(Error::NonRestrictedVector(_))));
    let fock: Arc<dyn Carrier> = Arc::new(Fock::new(Mirror, q(1), Q::zero()).unwrap());
    assert!(matches!(SugawaraDressed::new(fock, q(1)), Err(Error::Unsupported(_))));
}

#[test]
fn basis_enumeration_counts() {
    // monomials h_{-1/2}^a h_{-3/2}^b h_{-5/2}^c of weight a/2 + 3b/2 + 5c/2 <= 3
    let m = handle(Arc::new(Fock::new(Mirror, q(1), Q::zero()).unwrap()), Some(3));
    let mut want = 0;
    for a in 0..=6 {
        for b in 0..=2 {
            for c in 0..=1 {
                if a + 3 * b + 5 * c <= 6 {
                    want += 1;
                }
            }
        }
    }
    assert_eq!(m.basis().unwrap().len(), want);
    assert!(handle(m.carrier().clone(), None).basis().is_err());
}
