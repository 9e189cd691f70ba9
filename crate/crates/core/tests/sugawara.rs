use hv_core::algebra::{AlgebraKind, Generator};
use hv_core::modules::{Carrier, Fock, ModuleHandle, SugawaraDressed, Vector};
use hv_core::rational::{q, qf, Q};
use hv_core::sugawara::{
    appendix_decomposition_check, commutator, d_prime, sugawara_central_charge, sugawara_l, sugawara_lbar,
    verify_sugawara_relations, Op,
};
use hv_core::Error;
use num_traits::Zero;
use std::sync::Arc;

use AlgebraKind::{Mirror, Twisted};

fn g(s: &str) -> Generator {
    s.parse().unwrap()
}

fn vac() -> Vector {
    Vector::basis(Fock::vacuum())
}

fn fock(kind: AlgebraKind, level: Q, mu: Q) -> ModuleHandle {
    ModuleHandle::new(Arc::new(Fock::new(kind, level, mu).unwrap()), Some(6))
}

#[test]
fn mirror_vacuum_values() {
    for level in [q(1), q(3), qf(-1, 2)] {
        let m = fock(Mirror, level.clone(), Q::zero());
        assert_eq!(sugawara_l(&m, 0, &vac()).unwrap(), vac().scaled(&qf(1, 16)));
        let hh = m.act_gen(g("h:-1/2"), &m.act_gen(g("h:-1/2"), &vac()).unwrap()).unwrap();
        let want = hh.scaled(&(q(1) / (q(2) * &level)));
        assert_eq!(sugawara_l(&m, -1, &vac()).unwrap(), want);
        assert!(sugawara_l(&m, 1, &vac()).unwrap().is_zero());
        let w = m.act_gen(g("h:-1/2"), &vac()).unwrap();
        assert_eq!(sugawara_l(&m, 0, &w).unwrap(), w.scaled(&qf(9, 16)));
    }
}

#[test]
fn mirror_virasoro_commutators_on_vacuum() {
    let m = fock(Mirror, q(1), Q::zero());
    let z = Q::zero();
    let c11 = commutator(&m, Op::Sug(1), Op::Sug(-1), &z, &vac()).unwrap();
    assert_eq!(c11, vac().scaled(&qf(1, 8)));
    let c22 = commutator(&m, Op::Sug(2), Op::Sug(-2), &z, &vac()).unwrap();
    assert_eq!(c22, vac().scaled(&qf(3, 4)));
}

#[test]
fn twisted_zero_mode_value() {
    for (level, mu, z) in [(q(1), q(2), qf(1, 3)), (q(2), q(-1), q(1)), (qf(1, 2), q(3), Q::zero())] {
        let m = fock(Twisted, level.clone(), mu.clone());
        let want = &mu * &mu / (q(2) * &level) + &z * &mu / &level;
        assert_eq!(sugawara_lbar(&m, 0, &z, &vac()).unwrap(), vac().scaled(&want));
    }
}

#[test]
fn twisted_shift_term() {
    let m = fock(Twisted, q(2), q(1));
    let v = m.act_gen(g("h:-2"), &vac()).unwrap();
    let z = qf(2, 3);
    for n in -2..=2 {
        let diff = sugawara_lbar(&m, n, &z, &v).unwrap().minus(&sugawara_lbar(&m, n, &Q::zero(), &v).unwrap());
        let hn = m.act_gen_lazy(Generator::h2(2 * n), &v).unwrap();
        assert_eq!(diff, hn.scaled(&(q(n + 1) * &z / q(2))));
    }
}

#[test]
fn kind_and_level_errors() {
    let t = fock(Twisted, q(1), Q::zero());
    assert_eq!(sugawara_l(&t, 0, &vac()).err(), Some(Error::KindMismatch));
    assert_eq!(sugawara_central_charge(Mirror, &Q::zero(), &Q::zero()).err(), Some(Error::ZeroLevel));
    assert_eq!(sugawara_central_charge(Mirror, &q(5), &Q::zero()).unwrap(), q(1));
    assert_eq!(sugawara_central_charge(Twisted, &q(2), &q(1)).unwrap(), q(-5));
    assert_eq!(sugawara_central_charge(Twisted, &q(3), &qf(1, 2)).unwrap(), Q::zero());
}

#[test]
fn relations_hold_on_fock() {
    let m = fock(Mirror, qf(2, 3), Q::zero()).with_truncation(Some(5));
    let r = verify_sugawara_relations(&m, 2, None).unwrap();
    assert!(r.pass, "{:?}", r.counterexample);
    assert!(r.checked > 0);
    let t = fock(Twisted, q(2), q(1)).with_truncation(Some(5));
    let r = verify_sugawara_relations(&t, 2, Some(qf(1, 2))).unwrap();
    assert!(r.pass, "{:?}", r.counterexample);
}

#[test]
fn shifted_operators_vanish_on_dressed_fock() {
    let base: Arc<dyn Carrier> = Arc::new(Fock::new(Mirror, q(1), Q::zero()).unwrap());
    let m = ModuleHandle::new(Arc::new(SugawaraDressed::new(base, Q::zero()).unwrap()), Some(4));
    for b in m.basis().unwrap() {
        let v = Vector::basis(b);
        for n in -3..=3 {
            assert!(d_prime(&m, n, &v).unwrap().is_zero());
        }
    }
    let r = appendix_decomposition_check(&m, 2).unwrap();
    assert!(r.pass);
}

#[test]
fn appendix_check_needs_a_virasoro_action() {
    let m = fock(Mirror, q(1), Q::zero());
    assert!(matches!(appendix_decomposition_check(&m, 2), Err(Error::Unsupported(_))));
}

#[test]
fn op_labels() {
    assert_eq!(Op::Sug(-2).to_string(), "L_-2");
    assert_eq!(Op::DPrime(3).to_string(), "d'_3");
}
