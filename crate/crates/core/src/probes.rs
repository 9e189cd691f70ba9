//! Exact linear-algebra probes on truncated modules: annihilators, the
//! invariants `n_S`, `m_S`, `r_S`, `n_M`, `r_M`, leading exponents of
//! induced-module vectors, the degree-lowering checks, and injectivity and
//! nilpotency scans.

use crate::algebra::{AlgebraKind, Generator, Range, Subalgebra, Tag};
use crate::error::{Error, Result};
use crate::expvec::{cmp_pair, cmp_pair_prime, weight, ExpVec, Pair};
use crate::linalg::{Echelon, Matrix};
use crate::modules::{vec_to_json, Basis, Induced, ModuleHandle, Vector};
use crate::rational::{fmt_q, q, Q};
use crate::report::{Counterexample, Report};
use crate::sugawara::{apply, module_z, Op};
use num_traits::Zero;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Basis vectors of a truncated module as vectors.
pub fn truncated_space(m: &ModuleHandle) -> Result<Vec<Vector>> {
    Ok(m.basis()?.into_iter().map(Vector::basis).collect())
}

/// Coordinates of `ops` applied to each vector of `space`, one column per vector.
fn op_matrix(m: &ModuleHandle, ops: &[Op], z: &Q, space: &[Vector]) -> Result<Echelon> {
    let mut rows: HashMap<(usize, Basis), BTreeMap<usize, Q>> = HashMap::new();
    for (j, v) in space.iter().enumerate() {
        for (o, op) in ops.iter().enumerate() {
            for (b, c) in apply(m, *op, z, v)?.iter() {
                rows.entry((o, b.clone())).or_default().insert(j, c.clone());
            }
        }
    }
    let mut e = Echelon::new(space.len());
    for (_, r) in rows {
        e.insert(r);
    }
    Ok(e)
}

fn combine(space: &[Vector], coeffs: &[Q]) -> Vector {
    let mut out = Vector::zero();
    for (v, c) in space.iter().zip(coeffs) {
        if !c.is_zero() {
            out.add_scaled(v, c);
        }
    }
    out
}

/// Basis of the joint kernel of `ops` on the span of `space` (assumed independent).
pub fn joint_kernel(m: &ModuleHandle, ops: &[Op], z: &Q, space: &[Vector]) -> Result<Vec<Vector>> {
    if ops.is_empty() || space.is_empty() {
        return Ok(space.to_vec());
    }
    let e = op_matrix(m, ops, z, space)?;
    Ok(e.kernel().iter().map(|k| combine(space, k)).collect())
}

/// Generator families whose annihilators the probes take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    /// Non-central part of the Heisenberg subalgebra starting at index `r`:
    /// `h_{r+1/2}, h_{r+3/2}, ...` (mirror) or `h_r, h_{r+1}, ...` (twisted).
    Heis(i64),
    /// `d_r, d_{r+1}, ...`.
    Vir(i64),
    /// `d'_r, d'_{r+1}, ...`.
    DPrime(i64),
}

impl Filter {
    fn at(self, kind: AlgebraKind, s: i64) -> Op {
        match self {
            Filter::Heis(_) => Op::Gen(Generator::h2(2 * s + kind.h_parity())),
            Filter::Vir(_) => Op::Gen(Generator::d(s)),
            Filter::DPrime(_) => Op::DPrime(s),
        }
    }

    fn start(self) -> i64 {
        match self {
            Filter::Heis(r) | Filter::Vir(r) | Filter::DPrime(r) => r,
        }
    }

    fn with_start(self, r: i64) -> Filter {
        match self {
            Filter::Heis(_) => Filter::Heis(r),
            Filter::Vir(_) => Filter::Vir(r),
            Filter::DPrime(_) => Filter::DPrime(r),
        }
    }
}

impl FromStr for Filter {
    type Err = Error;
    /// `heis:r`, `vir:r` or `dprime:r`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown generator filter {s:?}"));
        let (name, r) = s.split_once(':').ok_or_else(bad)?;
        let r: i64 = r.trim().parse().map_err(|_| bad())?;
        match name.trim() {
            "heis" => Ok(Filter::Heis(r)),
            "vir" => Ok(Filter::Vir(r)),
            "dprime" => Ok(Filter::DPrime(r)),
            _ => Err(bad()),
        }
    }
}

/// Largest index (plain units) at which a filter operator can act nontrivially on `space`.
fn top_index(m: &ModuleHandle, space: &[Vector]) -> i64 {
    space.iter().map(|v| m.bound(v)).max().unwrap_or(0).max(0)
}

fn check_level(m: &ModuleHandle, f: Filter) -> Result<()> {
    if matches!(f, Filter::DPrime(_)) && m.level().is_zero() {
        return Err(Error::ZeroLevel);
    }
    Ok(())
}

/// Joint kernel of a filter on a subspace. Operators of index above the
/// space's annihilation bound act as zero and are skipped.
pub fn annihilator_in(m: &ModuleHandle, f: Filter, space: &[Vector]) -> Result<Vec<Vector>> {
    check_level(m, f)?;
    let top = top_index(m, space);
    let ops: Vec<Op> = (f.start()..=top).map(|s| f.at(m.kind(), s)).collect();
    joint_kernel(m, &ops, &module_z(m), space)
}

/// Joint kernel of a filter on the truncated module.
pub fn annihilator(m: &ModuleHandle, f: Filter) -> Result<Vec<Vector>> {
    annihilator_in(m, f, &truncated_space(m)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Invariant {
    #[serde(rename = "n_S")]
    NS,
    #[serde(rename = "m_S")]
    MS,
    #[serde(rename = "r_S")]
    RS,
    #[serde(rename = "n_M")]
    NM,
    #[serde(rename = "r_M")]
    RM,
}

impl FromStr for Invariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n_S" => Ok(Invariant::NS),
            "m_S" => Ok(Invariant::MS),
            "r_S" => Ok(Invariant::RS),
            "n_M" => Ok(Invariant::NM),
            "r_M" => Ok(Invariant::RM),
            _ => Err(Error::Parse(format!("unknown invariant {s:?}"))),
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::NS => "n_S",
            Invariant::MS => "m_S",
            Invariant::RS => "r_S",
            Invariant::NM => "n_M",
            Invariant::RM => "r_M",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantValue {
    Finite(i64),
    MinusInfinity,
    /// The space was still zero at the top of the scan.
    Undetermined(i64),
}

impl Serialize for InvariantValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            InvariantValue::Finite(r) => s.serialize_i64(*r),
            InvariantValue::MinusInfinity => s.serialize_str("−∞"),
            InvariantValue::Undetermined(b) => s.serialize_str(&format!("undetermined ≥ {b}")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub name: Invariant,
    pub value: InvariantValue,
    /// Basis of the annihilator at the reported index.
    pub witness: Vec<Value>,
    pub truncation: Option<i64>,
    pub scan_bound: i64,
}

struct Scan {
    value: InvariantValue,
    space: Vec<Vector>,
}

/// Finds the least `r` in `[-b, b]` with `A(r) != 0` where
/// `A(r) = ∩_{s>=r} Ann(F_s)` inside `space`, by descending intersection.
fn descend(m: &ModuleHandle, f: Filter, space: &[Vector], b: i64) -> Result<Scan> {
    check_level(m, f)?;
    let z = module_z(m);
    let mut cur = annihilator_in(m, f.with_start(b), space)?;
    if cur.is_empty() {
        return Ok(Scan { value: InvariantValue::Undetermined(b), space: cur });
    }
    let mut r = b;
    while r > -b {
        let next = joint_kernel(m, &[f.at(m.kind(), r - 1)], &z, &cur)?;
        if next.is_empty() {
            return Ok(Scan { value: InvariantValue::Finite(r), space: cur });
        }
        cur = next;
        r -= 1;
    }
    Ok(Scan { value: InvariantValue::MinusInfinity, space: cur })
}

/// Computes an invariant on a truncated module, scanning indices in `[-b, b]`.
pub fn invariant(m: &ModuleHandle, which: Invariant, b: i64) -> Result<InvariantReport> {
    let kind = m.kind();
    let expect = match which {
        Invariant::NS | Invariant::MS | Invariant::RS => AlgebraKind::Mirror,
        Invariant::NM | Invariant::RM => AlgebraKind::Twisted,
    };
    if kind != expect {
        return Err(Error::KindMismatch);
    }
    if m.level().is_zero() {
        return Err(Error::ZeroLevel);
    }
    let full = truncated_space(m)?;
    let first = descend(m, Filter::Heis(0), &full, b)?;
    let scan = match which {
        Invariant::NS | Invariant::NM => first,
        Invariant::MS | Invariant::RS => {
            if !matches!(first.value, InvariantValue::Finite(_)) {
                Scan { value: InvariantValue::Undetermined(b), space: Vec::new() }
            } else {
                let second = descend(m, Filter::Vir(0), &first.space, b)?;
                match (which, &second.value) {
                    (Invariant::MS, _) => second,
                    (_, InvariantValue::Finite(_)) => descend(m, Filter::DPrime(0), &second.space, b)?,
                    _ => Scan { value: InvariantValue::Undetermined(b), space: Vec::new() },
                }
            }
        }
        Invariant::RM => {
            if !matches!(first.value, InvariantValue::Finite(_)) {
                Scan { value: InvariantValue::Undetermined(b), space: Vec::new() }
            } else {
                descend(m, Filter::DPrime(0), &first.space, b)?
            }
        }
    };
    Ok(InvariantReport {
        name: which,
        value: scan.value,
        witness: scan.space.iter().map(vec_to_json).collect(),
        truncation: m.truncation(),
        scan_bound: b,
    })
}

/// Exponent pair `(i, j)` of an induced basis monomial: `h` factors go to
/// `i`, `d` factors to `j`, each at its position (the truncation weight of the factor).
pub fn exponents(ind: &Induced, b: &Basis) -> Pair {
    let (mono, _) = Induced::split(b);
    let mut i = ExpVec::zero();
    let mut j = ExpVec::zero();
    for (g, e) in &mono.0 {
        let p = (ind.cost2(g) / 2) as usize;
        match g.tag {
            Tag::H => i.bump(p, *e),
            _ => j.bump(p, *e),
        }
    }
    (i, j)
}

fn induced_of(m: &ModuleHandle) -> Result<&Induced> {
    m.carrier()
        .as_induced()
        .ok_or_else(|| Error::Unsupported("leading exponents need an induced module".into()))
}

/// Distinct exponent pairs occurring in `v`.
pub fn supp(ind: &Induced, v: &Vector) -> Vec<Pair> {
    let mut out: Vec<Pair> = Vec::new();
    for b in v.keys() {
        let p = exponents(ind, b);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn leading(ind: &Induced, v: &Vector, cmp: fn(&Pair, &Pair) -> Ordering) -> Result<Pair> {
    supp(ind, v).into_iter().max_by(cmp).ok_or(Error::ZeroVector)
}

/// Largest element of `supp(v)` in the primary order.
pub fn deg(m: &ModuleHandle, v: &Vector) -> Result<Pair> {
    leading(induced_of(m)?, v, cmp_pair)
}

/// Largest element of `supp(v)` in the swapped order.
pub fn deg_prime(m: &ModuleHandle, v: &Vector) -> Result<Pair> {
    leading(induced_of(m)?, v, cmp_pair_prime)
}

pub fn pair_json(p: &Pair) -> Value {
    json!([p.0, p.1])
}

/// The four degree-lowering statements for `Ind` from `D(0,-n)` to the full algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    /// `deg(h_{p+n-1/2} v) = (i - e_p, j)` when `i != 0`.
    HLower,
    /// `deg(d_{q+l} v) = (0, j - e_q)` when `deg v = (0, j)`.
    DLower,
    /// `deg'(h_{p+k-1/2} v) = (i, j - e_p)` when `j != 0`.
    HLowerPrime,
    /// The two-case statement for `deg' v = (i, 0)`.
    Mixed,
}

impl FromStr for Lemma {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h-lower" => Ok(Lemma::HLower),
            "d-lower" => Ok(Lemma::DLower),
            "h-lower-prime" => Ok(Lemma::HLowerPrime),
            "mixed" => Ok(Lemma::Mixed),
            _ => Err(Error::Parse(format!("unknown lemma {s:?}"))),
        }
    }
}

/// Data read off a base module over `D(0,-n)` within its truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseShape {
    pub n: i64,
    /// Largest `i` with `h_{i-1/2} V != 0`.
    pub k: i64,
    /// Largest `j >= 0` with `d_j V != 0`.
    pub l: Option<i64>,
    pub h_injective: bool,
    pub d_injective: bool,
}

fn is_injective(m: &ModuleHandle, g: Generator, space: &[Vector]) -> Result<bool> {
    Ok(joint_kernel(m, &[Op::Gen(g)], &Q::zero(), space)?.is_empty())
}

fn acts_nonzero(m: &ModuleHandle, g: Generator, space: &[Vector]) -> Result<bool> {
    for v in space {
        if !m.act_gen_lazy(g, v)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Reads `n`, `k`, `l` and the injectivity flags off a truncated base.
pub fn base_shape(base: &ModuleHandle) -> Result<BaseShape> {
    if base.kind() != AlgebraKind::Mirror {
        return Err(Error::Unsupported("the degree lemmas are stated for the mirror algebra".into()));
    }
    let a = base.carrier().admits();
    let n = match (a.d, a.h) {
        (Range::From(0), Range::From(t)) => (1 - t) / 2,
        _ => return Err(Error::HypothesisViolated("the base must be a module over D(0,-n)".into())),
    };
    let space = truncated_space(base)?;
    let top = top_index(base, &space);
    let mut k = None;
    let mut i = top + 1;
    while i + n >= 1 {
        if acts_nonzero(base, Generator::h2(2 * i - 1), &space)? {
            k = Some(i);
            break;
        }
        i -= 1;
    }
    let k = k.ok_or_else(|| Error::HypothesisViolated("no Heisenberg generator of the base acts nontrivially".into()))?;
    let mut l = None;
    for j in (0..=top).rev() {
        if acts_nonzero(base, Generator::d(j), &space)? {
            l = Some(j);
            break;
        }
    }
    let h_injective = is_injective(base, Generator::h2(2 * k - 1), &space)?;
    let d_injective = match l {
        Some(j) => is_injective(base, Generator::d(j), &space)?,
        None => false,
    };
    Ok(BaseShape { n, k, l, h_injective, d_injective })
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(what.into()))
    }
}

fn check_hypotheses(which: Lemma, s: &BaseShape) -> Result<()> {
    require(s.h_injective, &format!("h_{{k-1/2}} must act injectively on the base (k = {})", s.k))?;
    match which {
        Lemma::HLower => {
            require(s.n >= 1, "n must be positive")?;
            require(s.k == s.n, &format!("h_{{i-1/2}} V = 0 for i > n fails: k = {}, n = {}", s.k, s.n))
        }
        Lemma::DLower => {
            require(s.n >= 1, "n must be positive")?;
            require(s.k == s.n, &format!("h_{{i-1/2}} V = 0 for i > n fails: k = {}, n = {}", s.k, s.n))?;
            let l = s.l.ok_or_else(|| Error::HypothesisViolated("no d_j acts nontrivially on the base".into()))?;
            require(l >= 2 * s.n, &format!("l >= 2n fails: l = {l}, n = {}", s.n))?;
            require(s.d_injective, &format!("d_{l} must act injectively on the base"))
        }
        Lemma::HLowerPrime => {
            require(s.k >= 1 && s.k >= s.n, &format!("k >= n fails: k = {}, n = {}", s.k, s.n))?;
            require(s.k + s.n >= 2, "k + n >= 2 fails")
        }
        Lemma::Mixed => {
            require(s.k >= 1 && s.k > s.n, &format!("k > n fails: k = {}, n = {}", s.k, s.n))?;
            require(s.k + s.n >= 2, "k + n >= 2 fails")?;
            require(
                s.l.is_none_or(|l| l < s.k + s.n),
                &format!("d_j V = 0 for j > k+n-1 fails: l = {:?}", s.l),
            )
        }
    }
}

fn minus_unit(v: &ExpVec, p: usize) -> ExpVec {
    v.checked_sub(&ExpVec::unit(p)).expect("position is in the support")
}

/// One application of the lemma to `v`: operator, expected leading pair, and which order.
struct Claim {
    g: Generator,
    expected: Pair,
    prime: bool,
    label: String,
}

fn claim(which: Lemma, ind: &Induced, s: &BaseShape, v: &Vector) -> Option<Claim> {
    let d = leading(ind, v, cmp_pair).ok()?;
    let dp = leading(ind, v, cmp_pair_prime).ok()?;
    match which {
        Lemma::HLower => {
            let p = d.0.min_position()?;
            let g = Generator::h2(2 * (p as i64 + s.n) - 1);
            Some(Claim { g, expected: (minus_unit(&d.0, p), d.1.clone()), prime: false, label: "h-lower".into() })
        }
        Lemma::DLower => {
            if !d.0.is_zero() {
                return None;
            }
            let q = d.1.min_position()?;
            let g = Generator::d(q as i64 + s.l?);
            Some(Claim { g, expected: (ExpVec::zero(), minus_unit(&d.1, q)), prime: false, label: "d-lower".into() })
        }
        Lemma::HLowerPrime => {
            let p = dp.1.min_position()?;
            let g = Generator::h2(2 * (p as i64 + s.k) - 1);
            Some(Claim { g, expected: (dp.0.clone(), minus_unit(&dp.1, p)), prime: true, label: "h-lower-prime".into() })
        }
        Lemma::Mixed => {
            if !dp.1.is_zero() || dp.0.is_zero() {
                return None;
            }
            let i = &dp.0;
            let q = i.min_position()?;
            let wi = weight(i) as i64;
            let qi = q as i64;
            let support = supp(ind, v);
            let case2 = support.iter().any(|(k, l)| {
                let (wk, wl) = (weight(k) as i64, weight(l) as i64);
                wk + wl == wi && wi - qi <= wk && wk < wi
            });
            if !case2 {
                let g = Generator::d(qi + s.k + s.n - 1);
                return Some(Claim { g, expected: (minus_unit(i, q), ExpVec::zero()), prime: true, label: "mixed case 1".into() });
            }
            let mut v2 = Vector::zero();
            for (b, c) in v.iter() {
                let (k, l) = exponents(ind, b);
                if !(l.is_zero() && weight(&k) as i64 == wi) {
                    v2.add_term(b.clone(), c.clone());
                }
            }
            let (ks, ls) = leading(ind, &v2, cmp_pair_prime).ok()?;
            let t = ls.min_position()?;
            let g = Generator::h2(2 * (s.k + t as i64) - 1);
            Some(Claim { g, expected: (ks, minus_unit(&ls, t)), prime: true, label: "mixed case 2".into() })
        }
    }
}

/// Draws `samples` seeded vectors of `Ind(V) \ V` meeting the lemma's
/// shape condition and checks the asserted leading exponents of the image.
///
/// The base must carry a truncation; it bounds both the hypothesis scan on
/// `V` and the weight of the sampled vectors.
pub fn check_degree_lemma(which: Lemma, base: &ModuleHandle, samples: usize, seed: u64) -> Result<Report> {
    let shape = base_shape(base)?;
    check_hypotheses(which, &shape)?;
    let n_trunc = base.truncation().expect("checked by base_shape");
    let ind = Arc::new(Induced::new(base.carrier().clone(), Subalgebra::full(base.kind()))?);
    let handle = ModuleHandle::new(ind.clone(), Some(n_trunc));
    let pool: Vec<Basis> = handle.basis()?;
    if !pool.iter().any(|b| !Induced::split(b).0.is_one()) {
        return Err(Error::BoundExceeded("the truncation leaves no vectors outside the base".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();
    let mut drawn = 0usize;
    let max_attempts = 2000 * samples.max(1);
    let mut attempts = 0usize;
    while drawn < samples {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::HypothesisViolated(format!(
                "only {drawn} of {samples} samples of the required shape found within the truncation"
            )));
        }
        let terms = rng.random_range(1..=4usize);
        let mut v = Vector::zero();
        for _ in 0..terms {
            let b = pool[rng.random_range(0..pool.len())].clone();
            let mut c = 0i64;
            while c == 0 {
                c = rng.random_range(-3..=3i64);
            }
            v.add_term(b, q(c));
        }
        if v.is_zero() || v.keys().all(|b| Induced::split(b).0.is_one()) {
            continue;
        }
        let Some(cl) = claim(which, &ind, &shape, &v) else { continue };
        drawn += 1;
        let w = handle.act_gen_lazy(cl.g, &v)?;
        let got = if cl.prime { leading(&ind, &w, cmp_pair_prime) } else { leading(&ind, &w, cmp_pair) };
        let ok = got.as_ref().map(|p| *p == cl.expected).unwrap_or(false);
        report.record(ok, || Counterexample {
            identity: format!(
                "{}: leading exponents of {} v should be {}",
                cl.label,
                cl.g,
                pair_json(&cl.expected)
            ),
            vector: vec_to_json(&v),
            lhs: got.map(|p| pair_json(&p)).unwrap_or(Value::Null),
            rhs: pair_json(&cl.expected),
        });
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityReport {
    pub injective_on_scanned_slices: bool,
    pub kernel_witness: Vec<Value>,
    pub scanned: usize,
}

/// Kernel of one operator on the truncated module.
pub fn injectivity_probe(m: &ModuleHandle, op: Op) -> Result<InjectivityReport> {
    let space = truncated_space(m)?;
    if matches!(op, Op::DPrime(_) | Op::Sug(_)) && m.level().is_zero() {
        return Err(Error::ZeroLevel);
    }
    let ker = joint_kernel(m, &[op], &module_z(m), &space)?;
    Ok(InjectivityReport {
        injective_on_scanned_slices: ker.is_empty(),
        kernel_witness: ker.iter().map(vec_to_json).collect(),
        scanned: space.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyReport {
    pub nilpotent_within_bound: bool,
    pub power: Option<u32>,
}

/// Least `p <= maxpow` with `g^p v = 0`, using truncation-checked actions.
pub fn local_nilpotency_probe(m: &ModuleHandle, g: Generator, v: &Vector, maxpow: u32) -> Result<NilpotencyReport> {
    let mut w = v.clone();
    for p in 0..=maxpow {
        if w.is_zero() {
            return Ok(NilpotencyReport { nilpotent_within_bound: true, power: Some(p) });
        }
        if p < maxpow {
            w = m.act_gen(g, &w)?;
        }
    }
    Ok(NilpotencyReport { nilpotent_within_bound: false, power: None })
}

/// Basis vectors of one truncation weight.
#[derive(Clone, Debug)]
pub struct WeightSlice {
    /// Twice the weight.
    pub weight2: i64,
    pub basis: Vec<Basis>,
}

impl WeightSlice {
    pub fn weight(&self) -> Q {
        crate::rational::half(self.weight2)
    }
}

/// The truncated basis grouped by weight.
pub fn slices(m: &ModuleHandle) -> Result<Vec<WeightSlice>> {
    let mut by: BTreeMap<i64, Vec<Basis>> = BTreeMap::new();
    for b in m.basis()? {
        by.entry(m.weight2(&b)).or_default().push(b);
    }
    Ok(by.into_iter().map(|(weight2, basis)| WeightSlice { weight2, basis }).collect())
}

/// Matrix of `op` from the truncated module to the span of the image basis.
pub struct OpMatrix {
    pub matrix: Matrix,
    pub col_basis: Vec<Basis>,
    pub row_basis: Vec<Basis>,
}

pub fn op_matrix_full(m: &ModuleHandle, op: Op) -> Result<OpMatrix> {
    let cols = m.basis()?;
    let z = module_z(m);
    let images: Vec<Vector> = cols.iter().map(|b| apply(m, op, &z, &Vector::basis(b.clone()))).collect::<Result<_>>()?;
    let mut rows: Vec<Basis> = images.iter().flat_map(|w| w.keys().cloned()).collect();
    rows.sort();
    rows.dedup();
    let index: HashMap<&Basis, usize> = rows.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut matrix = Matrix::new(rows.len(), cols.len());
    for (j, w) in images.iter().enumerate() {
        for (b, c) in w.iter() {
            matrix.set(index[b], j, c.clone());
        }
    }
    Ok(OpMatrix { matrix, col_basis: cols, row_basis: rows })
}

/// `{"rows", "cols", "entries": [[i, j, "p/q"]], "row_basis", "col_basis"}`.
pub fn dump_matrix(m: &ModuleHandle, op: Op) -> Result<Value> {
    let om = op_matrix_full(m, op)?;
    let entries: Vec<Value> = om.matrix.entries().map(|(i, j, x)| json!([i, j, fmt_q(x)])).collect();
    Ok(json!({
        "rows": om.matrix.rows,
        "cols": om.matrix.cols,
        "entries": entries,
        "row_basis": om.row_basis,
        "col_basis": om.col_basis,
    }))
}
