//! Bottom-up fixpoint labelling.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{CtlError, Formula};
use crate::transition::{StateId, TransitionSystem};

/// A path through the transition system. When `loop_start` is set, the path
/// continues forever by jumping from the last state back to
/// `states[loop_start]`; otherwise it is finite (ending in a terminal state
/// for path-long witnesses).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub states: Vec<StateId>,
    pub loop_start: Option<usize>,
}

impl Trace {
    fn then(mut self, rest: Option<Trace>) -> Trace {
        if let Some(rest) = rest {
            debug_assert_eq!(self.states.last(), rest.states.first());
            let offset = self.states.len() - 1;
            self.states.extend_from_slice(&rest.states[1..]);
            self.loop_start = rest.loop_start.map(|i| i + offset);
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    /// Truth value at the initial state.
    pub holds: bool,
    /// Satisfaction set, indexed by state.
    pub satisfied: Vec<bool>,
    /// Witness (when the formula holds) or counterexample (when it fails),
    /// starting at the initial state, when one is meaningful.
    pub trace: Option<Trace>,
}

impl CheckOutcome {
    pub fn satisfied_states(&self) -> Vec<StateId> {
        (0..self.satisfied.len())
            .filter(|&s| self.satisfied[s])
            .collect()
    }

    pub fn holds_everywhere(&self) -> bool {
        self.satisfied.iter().all(|&b| b)
    }
}

/// Checks `f` at the initial state of `ts`.
pub fn check(ts: &TransitionSystem, f: &Formula) -> Result<CheckOutcome, CtlError> {
    ModelChecker::new(ts).check(f)
}

/// Checker with cached predecessor lists, for running many formulas against
/// one system.
#[derive(Debug, Clone)]
pub struct ModelChecker<'a> {
    ts: &'a TransitionSystem,
    pred: Vec<Vec<StateId>>,
}

impl<'a> ModelChecker<'a> {
    pub fn new(ts: &'a TransitionSystem) -> Self {
        Self {
            ts,
            pred: ts.predecessors(),
        }
    }

    pub fn system(&self) -> &TransitionSystem {
        self.ts
    }

    pub fn check(&self, f: &Formula) -> Result<CheckOutcome, CtlError> {
        let satisfied = self.satisfaction(f)?;
        let init = self.ts.initial();
        let holds = satisfied[init];
        let trace = self.explain(f, init, holds);
        Ok(CheckOutcome {
            holds,
            satisfied,
            trace,
        })
    }

    /// Satisfaction set of `f`, indexed by state.
    pub fn satisfaction(&self, f: &Formula) -> Result<Vec<bool>, CtlError> {
        self.validate(f)?;
        Ok(self.eval(f))
    }

    fn validate(&self, f: &Formula) -> Result<(), CtlError> {
        let (tiles, size) = (self.ts.tile_count(), self.ts.size());
        for atom in f.atoms() {
            if atom.m as usize > tiles || atom.i >= size || atom.j >= size {
                return Err(CtlError::AtomOutOfRange { atom, tiles, size });
            }
        }
        Ok(())
    }

    fn len(&self) -> usize {
        self.ts.state_count()
    }

    fn eval(&self, f: &Formula) -> Vec<bool> {
        let n = self.len();
        match f {
            Formula::True => alloc::vec![true; n],
            Formula::False => alloc::vec![false; n],
            Formula::Atom(a) => {
                let want = a.m.checked_sub(1).map(crate::system::TileId);
                let loc = a.loc();
                (0..n).map(|s| self.ts.state(s).get(loc) == want).collect()
            }
            Formula::Not(g) => self.eval(g).into_iter().map(|b| !b).collect(),
            Formula::And(v) => {
                let mut acc = alloc::vec![true; n];
                for g in v {
                    for (a, b) in acc.iter_mut().zip(self.eval(g)) {
                        *a &= b;
                    }
                }
                acc
            }
            Formula::Or(v) => {
                let mut acc = alloc::vec![false; n];
                for g in v {
                    for (a, b) in acc.iter_mut().zip(self.eval(g)) {
                        *a |= b;
                    }
                }
                acc
            }
            Formula::Implies(a, b) => self
                .eval(a)
                .into_iter()
                .zip(self.eval(b))
                .map(|(a, b)| !a || b)
                .collect(),
            Formula::Ex(g) => {
                let sg = self.eval(g);
                (0..n)
                    .map(|s| self.ts.successors(s).iter().any(|e| sg[e.target]))
                    .collect()
            }
            Formula::Ax(g) => {
                let sg = self.eval(g);
                (0..n)
                    .map(|s| self.ts.successors(s).iter().all(|e| sg[e.target]))
                    .collect()
            }
            Formula::Ef(g) => self.eu(&alloc::vec![true; n], &self.eval(g)),
            Formula::Af(g) => self.au(&alloc::vec![true; n], &self.eval(g)),
            Formula::Eg(g) => self.eg(&self.eval(g)),
            Formula::Ag(g) => {
                let not_g: Vec<bool> = self.eval(g).into_iter().map(|b| !b).collect();
                self.eu(&alloc::vec![true; n], &not_g)
                    .into_iter()
                    .map(|b| !b)
                    .collect()
            }
            Formula::Eu(a, b) => self.eu(&self.eval(a), &self.eval(b)),
            Formula::Au(a, b) => self.au(&self.eval(a), &self.eval(b)),
        }
    }

    fn eu(&self, a: &[bool], b: &[bool]) -> Vec<bool> {
        let mut z = b.to_vec();
        let mut queue: VecDeque<StateId> = (0..self.len()).filter(|&s| b[s]).collect();
        while let Some(t) = queue.pop_front() {
            for &p in &self.pred[t] {
                if !z[p] && a[p] {
                    z[p] = true;
                    queue.push_back(p);
                }
            }
        }
        z
    }

    fn au(&self, a: &[bool], b: &[bool]) -> Vec<bool> {
        let mut z = b.to_vec();
        let mut pending: Vec<usize> = (0..self.len())
            .map(|s| self.ts.successors(s).len())
            .collect();
        let mut queue: VecDeque<StateId> = (0..self.len()).filter(|&s| b[s]).collect();
        while let Some(t) = queue.pop_front() {
            for &p in &self.pred[t] {
                if z[p] {
                    continue;
                }
                pending[p] -= 1;
                if pending[p] == 0 && a[p] {
                    z[p] = true;
                    queue.push_back(p);
                }
            }
        }
        z
    }

    fn eg(&self, g: &[bool]) -> Vec<bool> {
        let mut z = g.to_vec();
        let mut alive: Vec<usize> = (0..self.len())
            .map(|s| {
                self.ts
                    .successors(s)
                    .iter()
                    .filter(|e| g[e.target])
                    .count()
            })
            .collect();
        let mut queue: VecDeque<StateId> = (0..self.len())
            .filter(|&s| z[s] && alive[s] == 0 && !self.ts.successors(s).is_empty())
            .collect();
        for &s in &queue {
            z[s] = false;
        }
        while let Some(t) = queue.pop_front() {
            for &p in &self.pred[t] {
                if !z[p] {
                    continue;
                }
                alive[p] -= 1;
                if alive[p] == 0 {
                    z[p] = false;
                    queue.push_back(p);
                }
            }
        }
        z
    }

    /// Shortest path from `s` whose states before the last are in `through`
    /// and whose last state is in `target`.
    fn path_to(&self, s: StateId, through: &[bool], target: &[bool]) -> Option<Trace> {
        let mut parent: HashMap<StateId, StateId> = HashMap::new();
        let mut queue = VecDeque::from([s]);
        parent.insert(s, s);
        while let Some(t) = queue.pop_front() {
            if target[t] {
                let mut states = alloc::vec![t];
                let mut cur = t;
                while cur != s {
                    cur = parent[&cur];
                    states.push(cur);
                }
                states.reverse();
                return Some(Trace {
                    states,
                    loop_start: None,
                });
            }
            if !through[t] {
                continue;
            }
            for e in self.ts.successors(t) {
                if !parent.contains_key(&e.target) {
                    parent.insert(e.target, t);
                    queue.push_back(e.target);
                }
            }
        }
        None
    }

    /// A maximal path from `s` staying inside `eg_set` (an `EG` satisfaction
    /// set containing `s`).
    fn stay_in(&self, s: StateId, eg_set: &[bool]) -> Trace {
        let mut states = Vec::new();
        let mut seen: HashMap<StateId, usize> = HashMap::new();
        let mut cur = s;
        loop {
            if let Some(&i) = seen.get(&cur) {
                return Trace {
                    states,
                    loop_start: Some(i),
                };
            }
            seen.insert(cur, states.len());
            states.push(cur);
            match self.ts.successors(cur).iter().find(|e| eg_set[e.target]) {
                Some(e) => cur = e.target,
                None => {
                    return Trace {
                        states,
                        loop_start: None,
                    }
                }
            }
        }
    }

    fn step_to(&self, s: StateId, f: &Formula, value: bool) -> Option<Trace> {
        let sf = self.eval(f);
        let e = self
            .ts
            .successors(s)
            .iter()
            .find(|e| sf[e.target] == value)?;
        let head = Trace {
            states: alloc::vec![s, e.target],
            loop_start: None,
        };
        Some(head.then(self.explain(f, e.target, value)))
    }

    /// Evidence that `f` evaluates to `value` at `s`, starting at `s`.
    fn explain(&self, f: &Formula, s: StateId, value: bool) -> Option<Trace> {
        let n = self.len();
        match (f, value) {
            (Formula::Not(g), v) => self.explain(g, s, !v),
            (Formula::Implies(_, b), false) => self.explain(b, s, false),
            (Formula::Implies(a, b), true) => {
                if self.eval(a)[s] {
                    self.explain(b, s, true)
                } else {
                    self.explain(a, s, false)
                }
            }
            (Formula::And(v), false) | (Formula::Or(v), true) => {
                let g = v.iter().find(|g| self.eval(g)[s] == value)?;
                self.explain(g, s, value)
            }
            (Formula::And(v), true) | (Formula::Or(v), false) => {
                v.iter().find_map(|g| self.explain(g, s, value))
            }
            (Formula::Ex(g), true) | (Formula::Ax(g), false) => self.step_to(s, g, value),
            (Formula::Ef(g), true) => {
                let sg = self.eval(g);
                let p = self.path_to(s, &alloc::vec![true; n], &sg)?;
                let t = *p.states.last()?;
                Some(p.then(self.explain(g, t, true)))
            }
            (Formula::Eu(a, b), true) => {
                let sb = self.eval(b);
                let p = self.path_to(s, &self.eval(a), &sb)?;
                let t = *p.states.last()?;
                Some(p.then(self.explain(b, t, true)))
            }
            (Formula::Ag(g), false) => {
                let not_g: Vec<bool> = self.eval(g).into_iter().map(|b| !b).collect();
                let p = self.path_to(s, &alloc::vec![true; n], &not_g)?;
                let t = *p.states.last()?;
                Some(p.then(self.explain(g, t, false)))
            }
            (Formula::Eg(g), true) => {
                let set = self.eg(&self.eval(g));
                set[s].then(|| self.stay_in(s, &set))
            }
            (Formula::Af(g), false) => {
                let not_g: Vec<bool> = self.eval(g).into_iter().map(|b| !b).collect();
                let set = self.eg(&not_g);
                set[s].then(|| self.stay_in(s, &set))
            }
            (Formula::Au(a, b), false) => {
                let sa = self.eval(a);
                let sb = self.eval(b);
                let not_b: Vec<bool> = sb.iter().map(|b| !b).collect();
                let stuck: Vec<bool> = (0..n).map(|t| !sa[t] && !sb[t]).collect();
                if let Some(p) = self.path_to(s, &not_b, &stuck) {
                    let t = *p.states.last()?;
                    return Some(p.then(self.explain(a, t, false)));
                }
                let set = self.eg(&not_b);
                set[s].then(|| self.stay_in(s, &set))
            }
            _ => None,
        }
    }
}
