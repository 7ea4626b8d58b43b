//! Fuzzy-subset expressions over quantified variables `μ, ν, ρ` and the
//! constant subset `1`.
//!
//! Two interpreters are kept: an exact one over [`FuzzySubset`] built on the
//! library operations, and a dense one over integer numerators with a common
//! denominator that the harness uses in its inner loops.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::fuzzy::{self, FuzzySubset};
use crate::grade::{Grade, Thresholds};
use crate::magma::CayleyTable;

pub const VAR_NAMES: [&str; 3] = ["μ", "ν", "ρ"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    One,
    Star(Box<Expr>),
    Meet(Box<Expr>, Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
    MeetStar(Box<Expr>, Box<Expr>),
    JoinStar(Box<Expr>, Box<Expr>),
    /// Plain sup-min composition `∘`.
    Compose(Box<Expr>, Box<Expr>),
    /// Clamped composition `∗`.
    Prod(Box<Expr>, Box<Expr>),
}

pub fn var(i: usize) -> Expr {
    Expr::Var(i)
}

pub fn one() -> Expr {
    Expr::One
}

pub fn star(a: Expr) -> Expr {
    Expr::Star(Box::new(a))
}

pub fn meet(a: Expr, b: Expr) -> Expr {
    Expr::Meet(Box::new(a), Box::new(b))
}

pub fn join(a: Expr, b: Expr) -> Expr {
    Expr::Join(Box::new(a), Box::new(b))
}

pub fn meet_star(a: Expr, b: Expr) -> Expr {
    Expr::MeetStar(Box::new(a), Box::new(b))
}

pub fn join_star(a: Expr, b: Expr) -> Expr {
    Expr::JoinStar(Box::new(a), Box::new(b))
}

pub fn compose(a: Expr, b: Expr) -> Expr {
    Expr::Compose(Box::new(a), Box::new(b))
}

pub fn prod(a: Expr, b: Expr) -> Expr {
    Expr::Prod(Box::new(a), Box::new(b))
}

impl Expr {
    fn fmt_inner(&self, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr| -> fmt::Result {
            if !top {
                f.write_str("(")?;
            }
            a.fmt_inner(f, false)?;
            write!(f, " {op} ")?;
            b.fmt_inner(f, false)?;
            if !top {
                f.write_str(")")?;
            }
            Ok(())
        };
        match self {
            Expr::Var(i) => f.write_str(VAR_NAMES[*i]),
            Expr::One => f.write_str("1"),
            Expr::Star(a) => match **a {
                Expr::Var(_) | Expr::One => {
                    a.fmt_inner(f, false)?;
                    f.write_str("*")
                }
                _ => {
                    f.write_str("(")?;
                    a.fmt_inner(f, true)?;
                    f.write_str(")*")
                }
            },
            Expr::Meet(a, b) => bin(f, a, "∧", b),
            Expr::Join(a, b) => bin(f, a, "∨", b),
            Expr::MeetStar(a, b) => bin(f, a, "∧*", b),
            Expr::JoinStar(a, b) => bin(f, a, "∨*", b),
            Expr::Compose(a, b) => bin(f, a, "∘", b),
            Expr::Prod(a, b) => bin(f, a, "∗", b),
        }
    }

    /// Exact evaluation.
    pub fn eval(&self, t: &CayleyTable, vars: &[&FuzzySubset], th: &Thresholds) -> FuzzySubset {
        use fuzzy::ops;
        match self {
            Expr::Var(i) => vars[*i].clone(),
            Expr::One => FuzzySubset::one(t.order()),
            Expr::Star(a) => a.eval(t, vars, th).star(th),
            Expr::Meet(a, b) => ops::meet(&a.eval(t, vars, th), &b.eval(t, vars, th)),
            Expr::Join(a, b) => ops::join(&a.eval(t, vars, th), &b.eval(t, vars, th)),
            Expr::MeetStar(a, b) => ops::meet_star(&a.eval(t, vars, th), &b.eval(t, vars, th), th),
            Expr::JoinStar(a, b) => ops::join_star(&a.eval(t, vars, th), &b.eval(t, vars, th), th),
            Expr::Compose(a, b) => fuzzy::compose_unchecked(t, &a.eval(t, vars, th), &b.eval(t, vars, th)),
            Expr::Prod(a, b) => ops::prod_star(t, &a.eval(t, vars, th), &b.eval(t, vars, th), th),
        }
    }

    fn compile_into(&self, prog: &mut Vec<Op>) -> usize {
        let op = match self {
            Expr::Var(i) => Op::Var(*i),
            Expr::One => Op::One,
            Expr::Star(a) => Op::Star(a.compile_into(prog)),
            Expr::Meet(a, b) => Op::Meet(a.compile_into(prog), b.compile_into(prog)),
            Expr::Join(a, b) => Op::Join(a.compile_into(prog), b.compile_into(prog)),
            Expr::MeetStar(a, b) => Op::MeetStar(a.compile_into(prog), b.compile_into(prog)),
            Expr::JoinStar(a, b) => Op::JoinStar(a.compile_into(prog), b.compile_into(prog)),
            Expr::Compose(a, b) => Op::Compose(a.compile_into(prog), b.compile_into(prog)),
            Expr::Prod(a, b) => Op::Prod(a.compile_into(prog), b.compile_into(prog)),
        };
        prog.push(op);
        prog.len() - 1
    }

    pub fn compile(&self) -> Program {
        let mut ops = Vec::new();
        self.compile_into(&mut ops);
        Program { ops }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_inner(f, true)
    }
}

impl Serialize for Expr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Var(usize),
    One,
    Star(usize),
    Meet(usize, usize),
    Join(usize, usize),
    MeetStar(usize, usize),
    JoinStar(usize, usize),
    Compose(usize, usize),
    Prod(usize, usize),
}

/// A flattened expression; each op reads earlier slots only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    ops: Vec<Op>,
}

/// Grades scaled to a common denominator so min, max and clamping are
/// integer operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scale {
    pub den: u64,
    pub gamma: u32,
    pub delta: u32,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Scale {
    /// `None` when the common denominator does not fit in `u32`.
    pub fn new(th: &Thresholds, dens: impl IntoIterator<Item = u64>) -> Option<Scale> {
        let mut den = 1u64;
        for d in dens.into_iter().chain([th.gamma().denom(), th.delta().denom()]) {
            den = den.checked_mul(d / gcd(den, d))?;
            if den > u32::MAX as u64 {
                return None;
            }
        }
        let mut s = Scale {
            den,
            gamma: 0,
            delta: 0,
        };
        s.gamma = s.num(th.gamma())?;
        s.delta = s.num(th.delta())?;
        Some(s)
    }

    pub fn num(&self, g: Grade) -> Option<u32> {
        if !self.den.is_multiple_of(g.denom()) {
            return None;
        }
        u32::try_from(g.numer() * (self.den / g.denom())).ok()
    }

    pub fn dense(&self, mu: &FuzzySubset) -> Option<Vec<u32>> {
        mu.grades().iter().map(|&g| self.num(g)).collect()
    }

    pub fn grade(&self, v: u32) -> Grade {
        Grade::new(v as u64, self.den).expect("scaled grade in range")
    }

    #[inline]
    fn clamp(&self, v: u32) -> u32 {
        v.max(self.gamma).min(self.delta)
    }
}

/// Scratch space for evaluating one [`Program`] on one table.
pub struct Machine<'a> {
    cells: &'a [u8],
    n: usize,
    scale: Scale,
    slots: Vec<u32>,
}

impl<'a> Machine<'a> {
    pub fn new(t: &'a CayleyTable, scale: Scale, prog: &Program) -> Self {
        Machine {
            cells: t.cells(),
            n: t.order(),
            scale,
            slots: vec![0; prog.ops.len() * t.order()],
        }
    }

    /// Evaluates `prog`; the result is the returned slice.
    pub fn run(&mut self, prog: &Program, vars: &[&[u32]]) -> &[u32] {
        let n = self.n;
        for (k, op) in prog.ops.iter().enumerate() {
            let (done, rest) = self.slots.split_at_mut(k * n);
            let out = &mut rest[..n];
            let slot = |i: usize| &done[i * n..(i + 1) * n];
            match *op {
                Op::Var(i) => out.copy_from_slice(vars[i]),
                Op::One => out.fill(self.scale.den as u32),
                Op::Star(a) => {
                    for (o, &x) in out.iter_mut().zip(slot(a)) {
                        *o = self.scale.clamp(x);
                    }
                }
                Op::Meet(a, b) | Op::MeetStar(a, b) => {
                    let clamp = matches!(op, Op::MeetStar(..));
                    for ((o, &x), &y) in out.iter_mut().zip(slot(a)).zip(slot(b)) {
                        let v = x.min(y);
                        *o = if clamp { self.scale.clamp(v) } else { v };
                    }
                }
                Op::Join(a, b) | Op::JoinStar(a, b) => {
                    let clamp = matches!(op, Op::JoinStar(..));
                    for ((o, &x), &y) in out.iter_mut().zip(slot(a)).zip(slot(b)) {
                        let v = x.max(y);
                        *o = if clamp { self.scale.clamp(v) } else { v };
                    }
                }
                Op::Compose(a, b) | Op::Prod(a, b) => {
                    out.fill(0);
                    let (l, r) = (slot(a), slot(b));
                    for y in 0..n {
                        let ly = l[y];
                        if ly == 0 {
                            continue;
                        }
                        let row = &self.cells[y * n..(y + 1) * n];
                        for z in 0..n {
                            let v = ly.min(r[z]);
                            let x = row[z] as usize;
                            if v > out[x] {
                                out[x] = v;
                            }
                        }
                    }
                    if matches!(op, Op::Prod(..)) {
                        for o in out.iter_mut() {
                            *o = self.scale.clamp(*o);
                        }
                    }
                }
            }
        }
        let last = prog.ops.len() - 1;
        &self.slots[last * n..(last + 1) * n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::samples;

    fn th(a: &str, b: &str) -> Thresholds {
        Thresholds::new(a.parse().unwrap(), b.parse().unwrap()).unwrap()
    }

    #[test]
    fn display_forms() {
        assert_eq!(meet_star(meet_star(var(0), var(1)), var(2)).to_string(), "(μ ∧* ν) ∧* ρ");
        assert_eq!(prod(prod(var(0), one()), var(0)).to_string(), "(μ ∗ 1) ∗ μ");
        assert_eq!(compose(star(var(0)), star(var(1))).to_string(), "μ* ∘ ν*");
        assert_eq!(star(meet(var(0), var(1))).to_string(), "(μ ∧ ν)*");
    }

    #[test]
    fn dense_matches_exact() {
        let t = samples::example_table();
        let mu = FuzzySubset::from_fractions(10, &[3, 2, 6, 3]).unwrap();
        let nu = FuzzySubset::from_fractions(10, &[4, 3, 4, 5]).unwrap();
        let exprs = [
            meet_star(var(0), var(1)),
            join_star(var(0), var(1)),
            prod(var(0), var(1)),
            compose(star(var(0)), star(var(1))),
            prod(prod(var(0), one()), var(0)),
            meet(prod(var(0), var(1)), prod(var(1), var(0))),
            join(var(0), star(var(1))),
        ];
        for th in [th("0", "3/5"), th("1/5", "3/5"), th("1/4", "1/2")] {
            let scale = Scale::new(&th, [10]).unwrap();
            let (dm, dn) = (scale.dense(&mu).unwrap(), scale.dense(&nu).unwrap());
            for e in &exprs {
                let exact = e.eval(&t, &[&mu, &nu], &th);
                let prog = e.compile();
                let mut m = Machine::new(&t, scale, &prog);
                let got: Vec<Grade> = m.run(&prog, &[&dm, &dn]).iter().map(|&v| scale.grade(v)).collect();
                assert_eq!(got, exact.grades(), "{e} at {th}");
            }
        }
    }

    #[test]
    fn scale_rejects_foreign_denominators() {
        let s = Scale::new(&th("0", "1/2"), [4]).unwrap();
        assert_eq!(s.den, 4);
        assert_eq!(s.num("1/3".parse().unwrap()), None);
        assert_eq!(s.num("3/4".parse().unwrap()), Some(3));
    }
}
