//! Generators and structure constants of the mirror and twisted
//! Heisenberg-Virasoro algebras.
//!
//! Indices are stored doubled so that half-integer modes stay integral:
//! `d_m` has `twice = 2m` and `h_r` has `twice = 2r`.

use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::rational::{q, qf, Q};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    /// Half-integer Heisenberg modes, centrals `c1`, `c2`.
    Mirror,
    /// Integer Heisenberg modes, centrals `c1`, `c2` (the anomaly), `c3` (the level).
    Twisted,
}

impl AlgebraKind {
    /// The central element acting as the Heisenberg level.
    pub fn level_central(self) -> Generator {
        match self {
            AlgebraKind::Mirror => Generator::C2,
            AlgebraKind::Twisted => Generator::C3,
        }
    }

    /// Parity of the twice-index of Heisenberg modes (1 = odd).
    pub fn h_parity(self) -> i64 {
        match self {
            AlgebraKind::Mirror => 1,
            AlgebraKind::Twisted => 0,
        }
    }

    pub fn centrals(self) -> &'static [Generator] {
        match self {
            AlgebraKind::Mirror => &[Generator::C1, Generator::C2],
            AlgebraKind::Twisted => &[Generator::C1, Generator::C2, Generator::C3],
        }
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mirror" => Ok(AlgebraKind::Mirror),
            "twisted" => Ok(AlgebraKind::Twisted),
            _ => Err(Error::Parse(format!("unknown algebra kind {s:?}"))),
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::Mirror => "mirror",
            AlgebraKind::Twisted => "twisted",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    D,
    H,
    C1,
    C2,
    C3,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub tag: Tag,
    pub twice: i64,
}

impl Generator {
    pub const C1: Generator = Generator { tag: Tag::C1, twice: 0 };
    pub const C2: Generator = Generator { tag: Tag::C2, twice: 0 };
    pub const C3: Generator = Generator { tag: Tag::C3, twice: 0 };

    pub fn d(m: i64) -> Self {
        Generator { tag: Tag::D, twice: 2 * m }
    }

    /// `h_r` with `r = twice / 2`.
    pub fn h2(twice: i64) -> Self {
        Generator { tag: Tag::H, twice }
    }

    pub fn is_central(&self) -> bool {
        matches!(self.tag, Tag::C1 | Tag::C2 | Tag::C3)
    }

    /// Twice the degree; zero for centrals.
    pub fn degree2(&self) -> i64 {
        self.twice
    }

    pub fn degree(&self) -> Q {
        qf(self.twice, 2)
    }

    pub fn validate(&self, kind: AlgebraKind) -> Result<()> {
        let ok = match self.tag {
            Tag::D => self.twice % 2 == 0,
            Tag::H => self.twice.rem_euclid(2) == kind.h_parity(),
            Tag::C1 | Tag::C2 => self.twice == 0,
            Tag::C3 => self.twice == 0 && kind == AlgebraKind::Twisted,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidGenerator(format!("{self} is not a generator of the {kind} algebra")))
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            Tag::D => write!(f, "d:{}", self.twice / 2),
            Tag::H if self.twice % 2 == 0 => write!(f, "h:{}", self.twice / 2),
            Tag::H => write!(f, "h:{}/2", self.twice),
            Tag::C1 => f.write_str("c1"),
            Tag::C2 => f.write_str("c2"),
            Tag::C3 => f.write_str("c3"),
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a generator token: {s:?}"));
        match s {
            "c1" => return Ok(Generator::C1),
            "c2" => return Ok(Generator::C2),
            "c3" => return Ok(Generator::C3),
            _ => {}
        }
        let (tag, idx) = s.split_once(':').ok_or_else(bad)?;
        match tag {
            "d" => Ok(Generator::d(idx.parse().map_err(|_| bad())?)),
            "h" => match idx.split_once('/') {
                None => Ok(Generator::h2(2 * idx.parse::<i64>().map_err(|_| bad())?)),
                Some((num, "2")) => {
                    let t: i64 = num.parse().map_err(|_| bad())?;
                    if t % 2 == 0 {
                        return Err(bad());
                    }
                    Ok(Generator::h2(t))
                }
                Some(_) => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated word of generator tokens.
pub fn parse_word(s: &str) -> Result<Vec<Generator>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(str::parse).collect()
}

pub type LieElement = Lin<Generator>;

/// `[x, y]` from the defining relations.
pub fn bracket(kind: AlgebraKind, x: Generator, y: Generator) -> Result<LieElement> {
    x.validate(kind)?;
    y.validate(kind)?;
    let mut out = LieElement::zero();
    match (x.tag, y.tag) {
        (Tag::D, Tag::D) => {
            let (m, n) = (x.twice / 2, y.twice / 2);
            out.add_term(Generator::d(m + n), q(m - n));
            if m + n == 0 {
                out.add_term(Generator::C1, qf(m * m * m - m, 12));
            }
        }
        (Tag::D, Tag::H) => d_h(kind, x.twice / 2, y.twice, &mut out),
        (Tag::H, Tag::D) => {
            d_h(kind, y.twice / 2, x.twice, &mut out);
            out = out.scaled(&q(-1));
        }
        (Tag::H, Tag::H) => {
            if x.twice + y.twice == 0 {
                out.add_term(kind.level_central(), qf(x.twice, 2));
            }
        }
        _ => {}
    }
    Ok(out)
}

fn d_h(kind: AlgebraKind, m: i64, r2: i64, out: &mut LieElement) {
    out.add_term(Generator::h2(2 * m + r2), qf(-r2, 2));
    if kind == AlgebraKind::Twisted && 2 * m + r2 == 0 {
        out.add_term(Generator::C2, q(m * m + m));
    }
}

/// Bilinear extension of [`bracket`].
pub fn bracket_lin(kind: AlgebraKind, x: &LieElement, y: &LieElement) -> Result<LieElement> {
    let mut out = LieElement::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&bracket(kind, *a, *b)?, &(ca * cb));
        }
    }
    Ok(out)
}

/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
pub fn jacobi_defect(kind: AlgebraKind, x: Generator, y: Generator, z: Generator) -> Result<LieElement> {
    let g = |a: Generator| LieElement::basis(a);
    let mut out = bracket_lin(kind, &g(x), &bracket(kind, y, z)?)?;
    out.add(&bracket_lin(kind, &g(y), &bracket(kind, z, x)?)?);
    out.add(&bracket_lin(kind, &g(z), &bracket(kind, x, y)?)?);
    Ok(out)
}

/// All generators of `kind` with `|degree| <= bound`.
pub fn generators_up_to(kind: AlgebraKind, bound: i64) -> Vec<Generator> {
    let mut out: Vec<Generator> = (-bound..=bound).map(Generator::d).collect();
    for t in -2 * bound..=2 * bound {
        if t.rem_euclid(2) == kind.h_parity() {
            out.push(Generator::h2(t));
        }
    }
    out.extend_from_slice(kind.centrals());
    out
}

/// Lower bound on the twice-indices of one family of generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Range {
    Empty,
    All,
    From(i64),
}

impl Range {
    fn contains(self, twice: i64) -> bool {
        match self {
            Range::Empty => false,
            Range::All => true,
            Range::From(t) => twice >= t,
        }
    }

    fn meet(self, other: Range) -> Range {
        match (self, other) {
            (Range::Empty, _) | (_, Range::Empty) => Range::Empty,
            (Range::All, r) | (r, Range::All) => r,
            (Range::From(a), Range::From(b)) => Range::From(a.max(b)),
        }
    }
}

/// A subalgebra described as a predicate over generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    pub kind: AlgebraKind,
    pub d: Range,
    pub h: Range,
    pub centrals: [bool; 3],
}

impl Subalgebra {
    pub fn full(kind: AlgebraKind) -> Self {
        Subalgebra { kind, d: Range::All, h: Range::All, centrals: all_centrals(kind) }
    }

    /// `d_{m+i}`, `h_{n+i+1/2}` (mirror) or `h_{n+i}` (twisted), `i >= 0`, with all centrals.
    pub fn dmn(kind: AlgebraKind, m: i64, n: i64) -> Self {
        Subalgebra { kind, d: Range::From(2 * m), h: Range::From(h_start(kind, n)), centrals: all_centrals(kind) }
    }

    /// The Heisenberg subalgebra with its level central.
    pub fn heis(kind: AlgebraKind) -> Self {
        Subalgebra { kind, d: Range::Empty, h: Range::All, centrals: level_only(kind) }
    }

    pub fn heis_from(kind: AlgebraKind, n: i64) -> Self {
        Subalgebra { kind, d: Range::Empty, h: Range::From(h_start(kind, n)), centrals: level_only(kind) }
    }

    pub fn vir(kind: AlgebraKind) -> Self {
        Subalgebra { kind, d: Range::All, h: Range::Empty, centrals: [true, false, false] }
    }

    pub fn vir_from(kind: AlgebraKind, m: i64) -> Self {
        Subalgebra { kind, d: Range::From(2 * m), h: Range::Empty, centrals: [true, false, false] }
    }

    pub fn contains(&self, g: &Generator) -> bool {
        match g.tag {
            Tag::D => self.d.contains(g.twice),
            Tag::H => self.h.contains(g.twice),
            Tag::C1 => self.centrals[0],
            Tag::C2 => self.centrals[1],
            Tag::C3 => self.centrals[2],
        }
    }

    pub fn meet(&self, other: &Subalgebra) -> Subalgebra {
        Subalgebra {
            kind: self.kind,
            d: self.d.meet(other.d),
            h: self.h.meet(other.h),
            centrals: [
                self.centrals[0] && other.centrals[0],
                self.centrals[1] && other.centrals[1],
                self.centrals[2] && other.centrals[2],
            ],
        }
    }

    pub fn is_subset_of(&self, other: &Subalgebra) -> bool {
        self.meet(other) == *self
    }

    /// Parses `full`, `heis`, `vir`, `D(m,n)`, `H(n)`, `Vir(m)`.
    pub fn parse(kind: AlgebraKind, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("unknown subalgebra {s:?}"));
        let args = |body: &str| -> Result<Vec<i64>> {
            body.split(',').map(|a| a.parse::<i64>().map_err(|_| bad())).collect()
        };
        match s.as_str() {
            "full" => return Ok(Self::full(kind)),
            "heis" => return Ok(Self::heis(kind)),
            "vir" => return Ok(Self::vir(kind)),
            _ => {}
        }
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let a = args(body)?;
        match (head, a.as_slice()) {
            ("D", [m, n]) => Ok(Self::dmn(kind, *m, *n)),
            ("H", [n]) => Ok(Self::heis_from(kind, *n)),
            ("Vir", [m]) => Ok(Self::vir_from(kind, *m)),
            _ => Err(bad()),
        }
    }
}

fn h_start(kind: AlgebraKind, n: i64) -> i64 {
    match kind {
        AlgebraKind::Mirror => 2 * n + 1,
        AlgebraKind::Twisted => 2 * n,
    }
}

fn all_centrals(kind: AlgebraKind) -> [bool; 3] {
    [true, true, kind == AlgebraKind::Twisted]
}

fn level_only(kind: AlgebraKind) -> [bool; 3] {
    match kind {
        AlgebraKind::Mirror => [false, true, false],
        AlgebraKind::Twisted => [false, false, true],
    }
}
