//! Property tests for the enveloping algebra and the exponent orders.

use hv_core::algebra::{generators_up_to, AlgebraKind, Generator};
use hv_core::expvec::{cmp_pair, cmp_pair_prime, cmp_revlex, ExpVec, Pair};
use hv_core::pbw::{gen_elem, EnvElement, Pbw};
use hv_core::rational::q;
use proptest::prelude::*;
use std::cmp::Ordering;
use std::sync::OnceLock;

use AlgebraKind::{Mirror, Twisted};

struct Env {
    pbw: Pbw,
    gens: Vec<Generator>,
}

fn env(kind: AlgebraKind) -> &'static Env {
    static MIRROR: OnceLock<Env> = OnceLock::new();
    static TWISTED: OnceLock<Env> = OnceLock::new();
    let cell = match kind {
        Mirror => &MIRROR,
        Twisted => &TWISTED,
    };
    cell.get_or_init(|| Env { pbw: Pbw::new(kind), gens: generators_up_to(kind, 4) })
}

fn kind_of(mirror: bool) -> AlgebraKind {
    if mirror {
        Mirror
    } else {
        Twisted
    }
}

fn word(e: &Env, idx: &[usize]) -> Vec<Generator> {
    idx.iter().map(|i| e.gens[i % e.gens.len()]).collect()
}

/// A small element: sum of up to three short words with small integer coefficients.
fn element(e: &Env, parts: &[(Vec<usize>, i64)]) -> EnvElement {
    let mut out = EnvElement::zero();
    for (w, c) in parts {
        out.add_scaled(&e.pbw.normal_form(&word(e, w)).unwrap(), &q(*c));
    }
    out
}

fn parts() -> impl Strategy<Value = Vec<(Vec<usize>, i64)>> {
    prop::collection::vec((prop::collection::vec(0usize..64, 0..=2), -2i64..=2), 1..=2)
}

fn expvec() -> impl Strategy<Value = ExpVec> {
    prop::collection::vec(0u32..=2, 0..=3).prop_map(|v| ExpVec::from_entries(&v))
}

fn pair() -> impl Strategy<Value = Pair> {
    (expvec(), expvec())
}

fn sub(a: &Pair, b: &Pair) -> Option<Pair> {
    Some((a.0.checked_sub(&b.0).ok()?, a.1.checked_sub(&b.1).ok()?))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_multiplicative(mirror: bool, u in prop::collection::vec(0usize..64, 0..=5), w in prop::collection::vec(0usize..64, 0..=5)) {
        let e = env(kind_of(mirror));
        let (u, w) = (word(e, &u), word(e, &w));
        let joined: Vec<Generator> = u.iter().chain(w.iter()).copied().collect();
        let lhs = e.pbw.normal_form(&joined).unwrap();
        let rhs = e.pbw.mul(&e.pbw.normal_form(&u).unwrap(), &e.pbw.normal_form(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_associative(mirror: bool, a in parts(), b in parts(), c in parts()) {
        let e = env(kind_of(mirror));
        let (a, b, c) = (element(e, &a), element(e, &b), element(e, &c));
        let left = e.pbw.mul(&e.pbw.mul(&a, &b).unwrap(), &c).unwrap();
        let right = e.pbw.mul(&a, &e.pbw.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutator_of_generators_is_the_bracket(mirror: bool, x in 0usize..64, y in 0usize..64) {
        let e = env(kind_of(mirror));
        let (x, y) = (e.gens[x % e.gens.len()], e.gens[y % e.gens.len()]);
        let comm = e.pbw.commutator(&gen_elem(x), &gen_elem(y)).unwrap();
        let br = hv_core::algebra::bracket(e.pbw.kind(), x, y).unwrap();
        let mut want = EnvElement::zero();
        for (g, c) in br.iter() {
            want.add_scaled(&gen_elem(*g), c);
        }
        prop_assert_eq!(comm, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn revlex_is_a_total_order(a in expvec(), b in expvec(), c in expvec()) {
        prop_assert_eq!(cmp_revlex(&a, &b), cmp_revlex(&b, &a).reverse());
        prop_assert_eq!(cmp_revlex(&a, &b) == Ordering::Equal, a == b);
        if cmp_revlex(&a, &b).is_le() && cmp_revlex(&b, &c).is_le() {
            prop_assert!(cmp_revlex(&a, &c).is_le());
        }
    }

    #[test]
    fn pair_orders_are_total(a in pair(), b in pair(), c in pair()) {
        for cmp in [cmp_pair as fn(&Pair, &Pair) -> Ordering, cmp_pair_prime] {
            prop_assert_eq!(cmp(&a, &b), cmp(&b, &a).reverse());
            prop_assert_eq!(cmp(&a, &b) == Ordering::Equal, a == b);
            if cmp(&a, &b).is_le() && cmp(&b, &c).is_le() {
                prop_assert!(cmp(&a, &c).is_le());
            }
        }
    }

    /// `x <= y` and `x' < y'` give `x - y' < y - x'` whenever both differences exist.
    #[test]
    fn pair_order_is_monotone(x in pair(), y in pair(), xp in pair(), yp in pair()) {
        for cmp in [cmp_pair as fn(&Pair, &Pair) -> Ordering, cmp_pair_prime] {
            if !(cmp(&x, &y).is_le() && cmp(&xp, &yp).is_lt()) {
                continue;
            }
            if let (Some(l), Some(r)) = (sub(&x, &yp), sub(&y, &xp)) {
                prop_assert!(cmp(&l, &r).is_lt(), "{:?} vs {:?}", l, r);
            }
        }
    }
}
