//! The prefix grammar for group constructions.
//!
//! ```text
//! expr   := word arg* | "(" expr ")"
//! word   := cyclic n | dihedral n | quaternion 2^m | cpc2n p k | frobenius q
//!         | elemab p r | metacyclic m n r | sym n | alt n | sl2 p | psl3_2
//!         | m4_2 | c4_central_d4 | c2sq_c4 | c3sq_c4 | c2cube_c7
//!         | dp (expr) (expr)+ | sdp (expr) (expr) action
//!         | perm <degree> <file> | table <file>
//! action := trivial | invert | power r | matrix a,b;c,d
//! ```
//!
//! `dihedral n` has order `2n`. In `sdp (G) (K) action` the acting group `K`
//! must be cyclic; the action fixes the image of its smallest generator.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::{
    alternating_group, c2_cubed_rtimes_c7, c2_squared_rtimes_c4, c3_squared_rtimes_c4, central_product_c4_d4,
    direct_product, general_linear_3_2, matrix_action, group_from_permutation_text, make_named_family,
    modular_group_16, read_cayley_table, read_permutation_generators, semidirect_product, special_linear_2, symmetric_group, Action, Family,
    GroupTable, Provenance,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionSpec {
    Trivial,
    Invert,
    Power(usize),
    /// Rows of the matrix acting on row vectors of an elementary abelian group.
    Matrix(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builder {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion(usize),
    CpC2n(usize, u32),
    Frobenius(usize),
    ElemAb(usize, u32),
    Metacyclic(usize, usize, usize),
    Sym(usize),
    Alt(usize),
    Sl2(usize),
    Psl3_2,
    M4_2,
    C4CentralD4,
    C2SqC4,
    C3SqC4,
    C2CubeC7,
    Dp(Vec<Builder>),
    Sdp(Box<Builder>, Box<Builder>, ActionSpec),
    Perm { degree: usize, path: String },
    Table { path: String },
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionSpec::Trivial => f.write_str("trivial"),
            ActionSpec::Invert => f.write_str("invert"),
            ActionSpec::Power(r) => write!(f, "power {r}"),
            ActionSpec::Matrix(rows) => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "matrix {}", rows.join(";"))
            }
        }
    }
}

impl fmt::Display for Builder {
    /// The canonical spelling; parsing it gives back the same builder.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Builder::*;
        match self {
            Cyclic(n) => write!(f, "cyclic {n}"),
            Dihedral(n) => write!(f, "dihedral {n}"),
            Quaternion(n) => write!(f, "quaternion {n}"),
            CpC2n(p, k) => write!(f, "cpc2n {p} {k}"),
            Frobenius(q) => write!(f, "frobenius {q}"),
            ElemAb(p, r) => write!(f, "elemab {p} {r}"),
            Metacyclic(m, n, r) => write!(f, "metacyclic {m} {n} {r}"),
            Sym(n) => write!(f, "sym {n}"),
            Alt(n) => write!(f, "alt {n}"),
            Sl2(p) => write!(f, "sl2 {p}"),
            Psl3_2 => f.write_str("psl3_2"),
            M4_2 => f.write_str("m4_2"),
            C4CentralD4 => f.write_str("c4_central_d4"),
            C2SqC4 => f.write_str("c2sq_c4"),
            C3SqC4 => f.write_str("c3sq_c4"),
            C2CubeC7 => f.write_str("c2cube_c7"),
            Dp(parts) => {
                f.write_str("dp")?;
                for p in parts {
                    write!(f, " ({p})")?;
                }
                Ok(())
            }
            Sdp(g, k, a) => write!(f, "sdp ({g}) ({k}) {a}"),
            Perm { degree, path } => write!(f, "perm {degree} {path}"),
            Table { path } => write!(f, "table {path}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Word(String),
}

fn tokenize(s: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut Vec<Token>| {
        if !word.is_empty() {
            out.push(Token::Word(std::mem::take(word)));
        }
    };
    for c in s.chars() {
        match c {
            '(' | ')' => {
                flush(&mut word, &mut out);
                out.push(if c == '(' { Token::Open } else { Token::Close });
            }
            c if c.is_whitespace() => flush(&mut word, &mut out),
            c => word.push(c),
        }
    }
    flush(&mut word, &mut out);
    out
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

impl Parser {
    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn word(&mut self, what: &str) -> Result<String> {
        match self.next() {
            Some(Token::Word(w)) => Ok(w),
            other => Err(bad(format!("expected {what}, found {other:?}"))),
        }
    }

    fn num(&mut self, what: &str) -> Result<usize> {
        let w = self.word(what)?;
        w.parse().map_err(|_| bad(format!("expected {what} as an integer, found `{w}`")))
    }

    fn group_arg(&mut self) -> Result<Builder> {
        match self.next() {
            Some(Token::Open) => {
                let b = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(b),
                    other => Err(bad(format!("expected `)`, found {other:?}"))),
                }
            }
            other => Err(bad(format!("expected `(` before a nested group, found {other:?}"))),
        }
    }

    fn action(&mut self) -> Result<ActionSpec> {
        Ok(match self.word("an action")?.as_str() {
            "trivial" => ActionSpec::Trivial,
            "invert" => ActionSpec::Invert,
            "power" => ActionSpec::Power(self.num("an exponent")?),
            "matrix" => {
                let spec = self.word("matrix rows")?;
                let rows = spec
                    .split(';')
                    .map(|r| {
                        r.split(',')
                            .map(|x| x.trim().parse::<usize>().map_err(|_| bad(format!("bad matrix entry `{x}`"))))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                ActionSpec::Matrix(rows)
            }
            other => return Err(bad(format!("unknown action `{other}`"))),
        })
    }

    fn expr(&mut self) -> Result<Builder> {
        if self.peek() == Some(&Token::Open) {
            return self.group_arg();
        }
        let head = self.word("a group constructor")?;
        use Builder::*;
        Ok(match head.as_str() {
            "cyclic" => Cyclic(self.num("n")?),
            "dihedral" => Dihedral(self.num("n")?),
            "quaternion" => Quaternion(self.num("the order")?),
            "cpc2n" => CpC2n(self.num("p")?, self.num("k")? as u32),
            "frobenius" => Frobenius(self.num("q")?),
            "elemab" => ElemAb(self.num("p")?, self.num("r")? as u32),
            "metacyclic" => Metacyclic(self.num("m")?, self.num("n")?, self.num("r")?),
            "sym" => Sym(self.num("n")?),
            "alt" => Alt(self.num("n")?),
            "sl2" => Sl2(self.num("p")?),
            "psl3_2" => Psl3_2,
            "m4_2" => M4_2,
            "c4_central_d4" => C4CentralD4,
            "c2sq_c4" => C2SqC4,
            "c3sq_c4" => C3SqC4,
            "c2cube_c7" => C2CubeC7,
            "dp" => {
                let mut parts = vec![self.group_arg()?];
                while self.peek() == Some(&Token::Open) {
                    parts.push(self.group_arg()?);
                }
                if parts.len() < 2 {
                    return Err(bad("dp needs at least two factors"));
                }
                Dp(parts)
            }
            "sdp" => {
                let g = self.group_arg()?;
                let k = self.group_arg()?;
                Sdp(Box::new(g), Box::new(k), self.action()?)
            }
            "perm" => Perm {
                degree: self.num("the degree")?,
                path: self.word("a file path")?,
            },
            "table" => Table {
                path: self.word("a file path")?,
            },
            other => return Err(bad(format!("unknown constructor `{other}`"))),
        })
    }
}

impl std::str::FromStr for Builder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            tokens: tokenize(s),
            pos: 0,
        };
        let b = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(bad(format!("trailing input after `{b}`")));
        }
        Ok(b)
    }
}

impl Builder {
    /// The order implied by the expression, when it can be read off without
    /// building anything (files are opaque).
    pub fn predicted_order(&self) -> Option<usize> {
        use Builder::*;
        Some(match self {
            Cyclic(n) => *n,
            Dihedral(n) => 2 * n,
            Quaternion(n) => *n,
            CpC2n(p, k) => p << k,
            Frobenius(q) => q * q.checked_sub(1)?,
            ElemAb(p, r) => p.checked_pow(*r)?,
            Metacyclic(m, n, _) => m * n,
            Sym(n) => (1..=*n).product(),
            Alt(n) => (1..=*n).product::<usize>() / if *n >= 2 { 2 } else { 1 },
            Sl2(p) => p * (p * p - 1),
            Psl3_2 => 168,
            M4_2 | C4CentralD4 | C2SqC4 => 16,
            C3SqC4 => 36,
            C2CubeC7 => 56,
            Dp(parts) => parts.iter().map(|p| p.predicted_order()).product::<Option<usize>>()?,
            Sdp(g, k, _) => g.predicted_order()? * k.predicted_order()?,
            Perm { .. } | Table { .. } => return None,
        })
    }

    /// File paths referenced anywhere in the expression.
    pub fn files(&self) -> Vec<&str> {
        match self {
            Builder::Perm { path, .. } | Builder::Table { path } => vec![path.as_str()],
            Builder::Dp(parts) => parts.iter().flat_map(|p| p.files()).collect(),
            Builder::Sdp(g, k, _) => g.files().into_iter().chain(k.files()).collect(),
            _ => vec![],
        }
    }

    /// Construct the group, resolving relative paths against `base`.
    pub fn build(&self, base: &Path) -> Result<GroupTable> {
        use Builder::*;
        let named = |f: Family| make_named_family(f);
        let g = match self {
            Cyclic(n) => named(Family::Cyclic(*n))?,
            Dihedral(n) => named(Family::Dihedral(*n))?,
            Quaternion(n) => named(Family::GeneralizedQuaternion(*n))?,
            CpC2n(p, k) => named(Family::CpRtimesC2n { p: *p, k: *k })?,
            Frobenius(q) => named(Family::FieldFrobenius(*q))?,
            ElemAb(p, r) => named(Family::ElementaryAbelian { p: *p, r: *r })?,
            Metacyclic(m, n, r) => named(Family::Metacyclic { m: *m, n: *n, r: *r })?,
            Sym(n) => symmetric_group(*n)?,
            Alt(n) => alternating_group(*n)?,
            Sl2(p) => special_linear_2(*p)?,
            Psl3_2 => general_linear_3_2()?,
            M4_2 => modular_group_16()?,
            C4CentralD4 => central_product_c4_d4()?,
            C2SqC4 => c2_squared_rtimes_c4()?,
            C3SqC4 => c3_squared_rtimes_c4()?,
            C2CubeC7 => c2_cubed_rtimes_c7()?,
            Dp(_) | Sdp(..) => match self.extension_parts(base)?.expect("composite builder") {
                ExtensionParts::Direct(tables) => {
                    let mut it = tables.into_iter();
                    let first = it.next().expect("parser guarantees two factors");
                    it.fold(first, |acc, t| direct_product(&acc, &t))
                }
                ExtensionParts::Semidirect(g, k, action) => semidirect_product(&g, &k, &action)?,
            },
            Perm { degree, path } => {
                let text = std::fs::read_to_string(base.join(path))?;
                let (declared, _) = read_permutation_generators(&text)?;
                if declared != *degree {
                    return Err(Error::Parameter(format!("{path} declares degree {declared}, expected {degree}")));
                }
                group_from_permutation_text(&text)?
            }
            Table { path } => {
                let full: PathBuf = base.join(path);
                read_cayley_table(&std::fs::read_to_string(&full)?, path)?
            }
        };
        if let Some(n) = self.predicted_order() {
            if g.order() != n {
                return Err(Error::Invariant(format!("`{self}` built a group of order {}, expected {n}", g.order())));
            }
        }
        Ok(g.with_provenance(Provenance::Derived(self.to_string())))
    }
}

impl Builder {
    /// The factors of a `dp` or `sdp` builder, built; `None` otherwise.
    pub fn extension_parts(&self, base: &Path) -> Result<Option<ExtensionParts>> {
        Ok(Some(match self {
            Builder::Dp(parts) => ExtensionParts::Direct(parts.iter().map(|p| p.build(base)).collect::<Result<_>>()?),
            Builder::Sdp(gb, kb, ActionSpec::Matrix(rows)) => {
                let (Builder::ElemAb(p, r), Builder::Cyclic(m)) = (gb.as_ref(), kb.as_ref()) else {
                    return Err(Error::Action("matrix actions need (elemab p r) by (cyclic m)".into()));
                };
                if !is_prime(*p as u64) {
                    return Err(Error::Action(format!("{p} is not prime")));
                }
                if rows.len() != *r as usize {
                    return Err(Error::Action(format!("matrix must be {r} x {r}")));
                }
                let (g, k, action) = matrix_action(*p, rows, *m)?;
                ExtensionParts::Semidirect(g, k, action)
            }
            Builder::Sdp(gb, kb, spec) => {
                let (g, k) = (gb.build(base)?, kb.build(base)?);
                let action = cyclic_action(&g, &k, spec)?;
                ExtensionParts::Semidirect(g, k, action)
            }
            _ => return Ok(None),
        }))
    }
}

/// Built factors of a composite builder.
pub enum ExtensionParts {
    Direct(Vec<GroupTable>),
    Semidirect(GroupTable, GroupTable, Action),
}

/// The action of a cyclic `K` determined by the image of its smallest
/// generator.
fn cyclic_action(g: &GroupTable, k: &GroupTable, spec: &ActionSpec) -> Result<Action> {
    let nk = k.order();
    let Some(gen) = (0..nk).find(|&x| k.element_order(x) == nk) else {
        return Err(Error::Action("the acting group must be cyclic".into()));
    };
    let ng = g.order();
    let image: Vec<usize> = match spec {
        ActionSpec::Trivial => return Ok(Action::trivial(g, k)),
        ActionSpec::Invert => (0..ng).map(|x| g.inv(x)).collect(),
        ActionSpec::Power(r) => (0..ng).map(|x| g.pow(x, *r as u64)).collect(),
        ActionSpec::Matrix(_) => unreachable!("handled by the caller"),
    };
    if nk == 1 {
        return Ok(Action::trivial(g, k));
    }
    Action::from_generators(g, k, &[(gen, image)])
}
