//! Checks of the commutator expansions of a single generator against an
//! ordered product of modes, evaluated in `U(g)` for the mirror algebra.
//!
//! For `[h, h...h]` and `[d, h...h]` every coefficient is explicit and the
//! check is exact. For `[h, d...d]` and `[d, d...d]` only the single-removal
//! terms are explicit; the remaining terms are only required to lie in the
//! span of the allowed shapes.

use crate::algebra::{bracket, generators_up_to, jacobi_defect, AlgebraKind, Generator};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::pbw::{env_to_json, gen_elem, EnvElement, Monomial, Pbw};
use crate::rational::{q, qf, Q};
use crate::report::{Counterexample, Report};
use std::collections::BTreeMap;
use std::str::FromStr;

pub const DEFAULT_T_BOUND: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formula {
    /// `[h_{i-1/2}, h_{j_1+1/2} ... h_{j_t+1/2}]`
    HeisHeis,
    /// `[d_i, h_{j_1+1/2} ... h_{j_t+1/2}]`
    VirHeis,
    /// `[h_{i-1/2}, d_{j_1} ... d_{j_t}]`
    HeisVir,
    /// `[d_i, d_{j_1} ... d_{j_t}]`
    VirVir,
}

impl Formula {
    pub const ALL: [Formula; 4] = [Formula::HeisHeis, Formula::VirHeis, Formula::HeisVir, Formula::VirVir];

    pub fn name(self) -> &'static str {
        match self {
            Formula::HeisHeis => "heis-heis",
            Formula::VirHeis => "vir-heis",
            Formula::HeisVir => "heis-vir",
            Formula::VirVir => "vir-vir",
        }
    }
}

impl FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Formula::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown formula {s:?}")))
    }
}

fn h_half(twice: i64) -> Generator {
    Generator::h2(twice)
}

fn without(word: &[Generator], drop: &[usize]) -> Vec<Generator> {
    word.iter().enumerate().filter(|(k, _)| !drop.contains(k)).map(|(_, g)| *g).collect()
}

fn with_tail(mut word: Vec<Generator>, g: Generator) -> Vec<Generator> {
    word.push(g);
    word
}

/// Index subsets of `0..t` with at least two elements.
fn big_subsets(t: usize) -> Vec<Vec<usize>> {
    (0u32..1 << t)
        .filter(|m| m.count_ones() >= 2)
        .map(|m| (0..t).filter(|k| m & (1 << k) != 0).collect())
        .collect()
}

fn in_span(target: &EnvElement, shapes: &[EnvElement]) -> bool {
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut row = |x: &EnvElement| -> BTreeMap<usize, Q> {
        x.iter()
            .map(|(m, c)| {
                let n = index.len();
                (*index.entry(m.clone()).or_insert(n), c.clone())
            })
            .collect()
    };
    let rows: Vec<_> = shapes.iter().map(&mut row).collect();
    let t = row(target);
    let mut e = Echelon::new(index.len());
    for r in rows {
        e.insert(r);
    }
    !e.insert(t)
}

/// Checks one instance of the chosen expansion.
pub fn verify_formula(pbw: &Pbw, which: Formula, i: i64, js: &[i64]) -> Result<Report> {
    verify_formula_bounded(pbw, which, i, js, DEFAULT_T_BOUND)
}

pub fn verify_formula_bounded(pbw: &Pbw, which: Formula, i: i64, js: &[i64], t_bound: usize) -> Result<Report> {
    if pbw.kind() != AlgebraKind::Mirror {
        return Err(Error::Unsupported("the expansions are stated for the mirror algebra".into()));
    }
    let t = js.len();
    if t > t_bound {
        return Err(Error::BoundExceeded(format!("product length {t} exceeds {t_bound}")));
    }
    let nf = |w: &[Generator]| pbw.normal_form(w);
    let heis_word: Vec<Generator> = js.iter().map(|j| h_half(2 * j + 1)).collect();
    let vir_word: Vec<Generator> = js.iter().map(|j| Generator::d(*j)).collect();

    let head = match which {
        Formula::HeisHeis | Formula::HeisVir => h_half(2 * i - 1),
        Formula::VirHeis | Formula::VirVir => Generator::d(i),
    };
    let product = match which {
        Formula::HeisHeis | Formula::VirHeis => &heis_word,
        Formula::HeisVir | Formula::VirVir => &vir_word,
    };
    let lhs = pbw.commutator(&gen_elem(head), &nf(product)?)?;

    let mut explicit = EnvElement::zero();
    let mut shapes: Vec<EnvElement> = Vec::new();
    match which {
        Formula::HeisHeis => {
            for (s, j) in js.iter().enumerate() {
                if i + j == 0 {
                    let w = with_tail(without(product, &[s]), Generator::C2);
                    explicit.add_scaled(&nf(&w)?, &qf(2 * i - 1, 2));
                }
            }
        }
        Formula::VirHeis => {
            for (s, j) in js.iter().enumerate() {
                let w = with_tail(without(product, &[s]), h_half(2 * (i + j) + 1));
                explicit.add_scaled(&nf(&w)?, &qf(-(2 * j + 1), 2));
            }
            for s1 in 0..t {
                for s2 in s1 + 1..t {
                    let (j1, j2) = (js[s1], js[s2]);
                    if i + j1 + j2 + 1 == 0 {
                        let c = qf(-(2 * j1 + 1), 2) * qf(2 * (i + j1) + 1, 2);
                        let w = with_tail(without(product, &[s1, s2]), Generator::C2);
                        explicit.add_scaled(&nf(&w)?, &c);
                    }
                }
            }
        }
        Formula::HeisVir => {
            for (s, j) in js.iter().enumerate() {
                let w = with_tail(without(product, &[s]), h_half(2 * (i + j) - 1));
                explicit.add_scaled(&nf(&w)?, &qf(2 * i - 1, 2));
            }
            for set in big_subsets(t) {
                let sum: i64 = set.iter().map(|k| js[*k]).sum();
                shapes.push(nf(&with_tail(without(product, &set), h_half(2 * (i + sum) - 1)))?);
            }
        }
        Formula::VirVir => {
            for (s, j) in js.iter().enumerate() {
                let rest = without(product, &[s]);
                explicit.add_scaled(&nf(&with_tail(rest.clone(), Generator::d(i + j)))?, &q(i - j));
                if i + j == 0 {
                    let c = q(i - j) * qf(j * j - 1, 24);
                    explicit.add_scaled(&nf(&with_tail(rest, Generator::C1))?, &c);
                }
            }
            for set in big_subsets(t) {
                let sum: i64 = set.iter().map(|k| js[*k]).sum();
                let rest = without(product, &set);
                shapes.push(nf(&with_tail(rest.clone(), Generator::d(i + sum)))?);
                if i + sum == 0 {
                    shapes.push(nf(&with_tail(rest, Generator::C1))?);
                }
            }
        }
    }

    let remainder = lhs.minus(&explicit);
    let ok = if shapes.is_empty() { remainder.is_zero() } else { in_span(&remainder, &shapes) };
    let mut report = Report::new();
    report.record(ok, || Counterexample {
        identity: format!("{} i={i} js={js:?}", which.name()),
        vector: serde_json::Value::Null,
        lhs: env_to_json(&lhs),
        rhs: env_to_json(&explicit),
    });
    Ok(report)
}

/// Every expansion for `t <= t_max`, `i` and all `j` in `[-range, range]`
/// (products taken as sorted multisets).
pub fn formula_sweep(range: i64, t_max: usize) -> Result<Report> {
    let pbw = Pbw::new(AlgebraKind::Mirror);
    let mut report = Report::new();
    let mut lists: Vec<Vec<i64>> = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..t_max {
        let mut next = Vec::new();
        for l in &lists {
            let lo = l.last().copied().unwrap_or(-range);
            for j in lo..=range {
                let mut m = l.clone();
                m.push(j);
                next.push(m);
            }
        }
        all.extend(next.iter().cloned());
        lists = next;
    }
    for which in Formula::ALL {
        for i in -range..=range {
            for js in &all {
                report.merge(verify_formula_bounded(&pbw, which, i, js, t_max.max(DEFAULT_T_BOUND))?);
            }
        }
    }
    Ok(report)
}

/// Jacobi identity on all generator triples with `|degree| <= bound`.
pub fn jacobi_sweep(kind: AlgebraKind, bound: i64) -> Result<Report> {
    let gens = generators_up_to(kind, bound);
    let mut report = Report::new();
    for &x in &gens {
        for &y in &gens {
            for &z in &gens {
                let defect = jacobi_defect(kind, x, y, z)?;
                report.record(defect.is_zero(), || Counterexample {
                    identity: format!("jacobi({x}, {y}, {z})"),
                    vector: serde_json::Value::Null,
                    lhs: serde_json::json!(defect.to_string()),
                    rhs: serde_json::json!("0"),
                });
            }
        }
    }
    Ok(report)
}

/// Antisymmetry and degree additivity of the bracket for `|degree| <= bound`.
pub fn bracket_sweep(kind: AlgebraKind, bound: i64) -> Result<Report> {
    let gens = generators_up_to(kind, bound);
    let mut report = Report::new();
    for &x in &gens {
        for &y in &gens {
            let xy = bracket(kind, x, y)?;
            let yx = bracket(kind, y, x)?;
            let graded = xy.keys().all(|g| {
                if g.is_central() {
                    x.degree2() + y.degree2() == 0 && !x.is_central() && !y.is_central()
                } else {
                    g.degree2() == x.degree2() + y.degree2()
                }
            });
            report.record(xy.plus(&yx).is_zero() && graded, || Counterexample {
                identity: format!("[{x},{y}]"),
                vector: serde_json::Value::Null,
                lhs: serde_json::json!(xy.to_string()),
                rhs: serde_json::json!(yx.to_string()),
            });
        }
    }
    Ok(report)
}
