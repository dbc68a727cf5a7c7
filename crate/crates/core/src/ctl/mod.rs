//! CTL over the canonical transition system: formulas, the formula families
//! that describe a tile assembly system, a textual syntax, and an
//! explicit-state fixpoint model checker.
//!
//! Atom `t[m][i][j]` holds when location `(i, j)` carries tile `TileId(m - 1)`,
//! or is empty for `m = 0`.
//!
//! Path quantifiers range over maximal paths. A terminal state has no
//! successor; for the until/future/globally operators it behaves as if it
//! looped on itself, `EX` is false there and `AX` is vacuously true.

mod check;
mod gen;
mod query;
mod syntax;

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::config::Loc;
use crate::system::TileId;

pub use check::{check, CheckOutcome, ModelChecker, Trace};
pub use gen::{
    axioms, competing_rules, local_determinism_formulas, shape_formula, terminal_formula,
    transition_rules, Axioms, LocalDeterminism, TransitionRule,
};
pub use query::{
    unique_terminal_assembly_query, QueryError, QueryOptions, QueryVerdict,
};
pub use syntax::{parse_formula, FormulaParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub m: u32,
    pub i: usize,
    pub j: usize,
}

impl Atom {
    pub fn new(m: u32, i: usize, j: usize) -> Self {
        Self { m, i, j }
    }

    /// `loc` is empty.
    pub fn empty(loc: Loc) -> Self {
        Self::new(0, loc.x, loc.y)
    }

    /// `tile` sits at `loc`.
    pub fn tile(tile: TileId, loc: Loc) -> Self {
        Self::new(tile.0 + 1, loc.x, loc.y)
    }

    pub fn loc(&self) -> Loc {
        Loc::new(self.i, self.j)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t[{}][{}][{}]", self.m, self.i, self.j)
    }
}

/// A CTL formula. `And` and `Or` are n-ary so that large conjunctions stay
/// shallow.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Ex(Box<Formula>),
    Ax(Box<Formula>),
    Ef(Box<Formula>),
    Af(Box<Formula>),
    Eg(Box<Formula>),
    Ag(Box<Formula>),
    Eu(Box<Formula>, Box<Formula>),
    Au(Box<Formula>, Box<Formula>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CtlError {
    #[error("atom {atom} is out of range for {tiles} tile types on a {size}x{size} surface")]
    AtomOutOfRange {
        atom: Atom,
        tiles: usize,
        size: usize,
    },
    #[error("configuration of size {config} does not fit the {size}x{size} surface")]
    ShapeTooLarge { config: usize, size: usize },
}

impl Formula {
    pub fn atom(m: u32, i: usize, j: usize) -> Self {
        Formula::Atom(Atom::new(m, i, j))
    }

    pub fn empty(loc: Loc) -> Self {
        Formula::Atom(Atom::empty(loc))
    }

    pub fn tile(tile: TileId, loc: Loc) -> Self {
        Formula::Atom(Atom::tile(tile, loc))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(alloc::vec![a, b])
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(alloc::vec![a, b])
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Conjunction; `True` when empty, the sole element when singleton.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Self {
        let mut v: Vec<Formula> = parts.into_iter().collect();
        match v.len() {
            0 => Formula::True,
            1 => v.pop().expect("one element"),
            _ => Formula::And(v),
        }
    }

    /// Disjunction; `False` when empty, the sole element when singleton.
    pub fn disj(parts: impl IntoIterator<Item = Formula>) -> Self {
        let mut v: Vec<Formula> = parts.into_iter().collect();
        match v.len() {
            0 => Formula::False,
            1 => v.pop().expect("one element"),
            _ => Formula::Or(v),
        }
    }

    pub fn ex(f: Formula) -> Self {
        Formula::Ex(Box::new(f))
    }

    pub fn ax(f: Formula) -> Self {
        Formula::Ax(Box::new(f))
    }

    pub fn ef(f: Formula) -> Self {
        Formula::Ef(Box::new(f))
    }

    pub fn af(f: Formula) -> Self {
        Formula::Af(Box::new(f))
    }

    pub fn eg(f: Formula) -> Self {
        Formula::Eg(Box::new(f))
    }

    pub fn ag(f: Formula) -> Self {
        Formula::Ag(Box::new(f))
    }

    pub fn eu(a: Formula, b: Formula) -> Self {
        Formula::Eu(Box::new(a), Box::new(b))
    }

    pub fn au(a: Formula, b: Formula) -> Self {
        Formula::Au(Box::new(a), Box::new(b))
    }

    /// Every atom occurring in the formula, in order of appearance.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::True | Formula::False => {}
                Formula::Atom(a) => out.push(*a),
                Formula::Not(g)
                | Formula::Ex(g)
                | Formula::Ax(g)
                | Formula::Ef(g)
                | Formula::Af(g)
                | Formula::Eg(g)
                | Formula::Ag(g) => stack.push(g),
                Formula::And(v) | Formula::Or(v) => stack.extend(v.iter().rev()),
                Formula::Implies(a, b) | Formula::Eu(a, b) | Formula::Au(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 1,
            Formula::Not(g)
            | Formula::Ex(g)
            | Formula::Ax(g)
            | Formula::Ef(g)
            | Formula::Af(g)
            | Formula::Eg(g)
            | Formula::Ag(g) => 1 + g.size(),
            Formula::And(v) | Formula::Or(v) => 1 + v.iter().map(Formula::size).sum::<usize>(),
            Formula::Implies(a, b) | Formula::Eu(a, b) | Formula::Au(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }
}
