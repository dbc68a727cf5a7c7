//! Formula families describing a tile assembly system on an `n × n` surface.

use alloc::vec::Vec;

use super::{CtlError, Formula};
use crate::config::{Configuration, Loc};
use crate::rules::{Pattern, RuleTable};
use crate::system::{TileAssemblySystem, TileId};

fn locations(n: usize) -> impl Iterator<Item = Loc> {
    (0..n).flat_map(move |y| (0..n).map(move |x| Loc::new(x, y)))
}

/// Tile `tile` may bind at empty `loc` because the neighbours in `pattern`
/// are present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionRule {
    pub loc: Loc,
    pub tile: TileId,
    pub pattern: Pattern,
}

impl TransitionRule {
    /// `loc` is empty and every input of the pattern is in place.
    pub fn antecedent(&self) -> Formula {
        let mut parts = alloc::vec![Formula::empty(self.loc)];
        for &(side, t) in self.pattern.inputs() {
            let nb = self.loc.step(side).expect("pattern stays on the surface");
            parts.push(Formula::tile(t, nb));
        }
        Formula::conj(parts)
    }

    /// `loc` is no longer empty and holds `tile`.
    pub fn consequent(&self) -> Formula {
        Formula::and(
            Formula::not(Formula::empty(self.loc)),
            Formula::tile(self.tile, self.loc),
        )
    }
}

/// Every transition rule on the surface: locations row-major, then tile
/// types in declaration order, then patterns shortest first.
pub fn transition_rules(sys: &TileAssemblySystem, n: usize) -> Vec<TransitionRule> {
    let table = RuleTable::new(sys);
    let mut out = Vec::new();
    for loc in locations(n) {
        for tile in sys.tile_ids() {
            for pattern in table.patterns_at(tile, loc, n) {
                out.push(TransitionRule {
                    loc,
                    tile,
                    pattern: pattern.clone(),
                });
            }
        }
    }
    out
}

/// Indices of the rules other than `rules[index]` that act on the same
/// location.
pub fn competing_rules(rules: &[TransitionRule], index: usize) -> Vec<usize> {
    let loc = rules[index].loc;
    (0..rules.len())
        .filter(|&i| i != index && rules[i].loc == loc)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axioms {
    /// `t⁰ᵢⱼ → ¬(t¹ᵢⱼ ∨ … ∨ tᵏᵢⱼ)`, one per location.
    pub empty_exclusion: Vec<Formula>,
    /// `tᵐᵢⱼ → ¬⋁_{y ≠ m} tʸᵢⱼ`, one per tile type and location.
    pub exclusivity: Vec<Formula>,
    /// `tᵐᵢⱼ → AG tᵐᵢⱼ`, one per tile type and location.
    pub permanence: Vec<Formula>,
    /// `antecedent → EX consequent`, one per transition rule.
    pub binding: Vec<Formula>,
    /// Seed tiles in place, every other location empty.
    pub seed: Formula,
}

impl Axioms {
    /// Every formula that must hold at every reachable state; the seed formula
    /// only holds initially and is not included.
    pub fn invariants(&self) -> impl Iterator<Item = &Formula> {
        self.empty_exclusion
            .iter()
            .chain(&self.exclusivity)
            .chain(&self.permanence)
            .chain(&self.binding)
    }

    pub fn len(&self) -> usize {
        self.empty_exclusion.len()
            + self.exclusivity.len()
            + self.permanence.len()
            + self.binding.len()
            + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn axioms(sys: &TileAssemblySystem, n: usize) -> Result<Axioms, CtlError> {
    let k = sys.tile_count() as u32;
    let cells: Vec<Loc> = locations(n).collect();
    let empty_exclusion = cells
        .iter()
        .map(|l| {
            Formula::implies(
                Formula::empty(*l),
                Formula::not(Formula::disj((1..=k).map(|m| Formula::atom(m, l.x, l.y)))),
            )
        })
        .collect();
    let mut exclusivity = Vec::new();
    let mut permanence = Vec::new();
    for m in 1..=k {
        for l in &cells {
            let here = Formula::atom(m, l.x, l.y);
            let others = (1..=k)
                .filter(|&y| y != m)
                .map(|y| Formula::atom(y, l.x, l.y));
            exclusivity.push(Formula::implies(
                here.clone(),
                Formula::not(Formula::disj(others)),
            ));
            permanence.push(Formula::implies(here.clone(), Formula::ag(here)));
        }
    }
    let binding = transition_rules(sys, n)
        .iter()
        .map(|r| Formula::implies(r.antecedent(), Formula::ex(r.consequent())))
        .collect();
    let seed_config = sys.seed_configuration(n).ok_or(CtlError::ShapeTooLarge {
        config: sys.seed().extent(),
        size: n,
    })?;
    let seed = shape_formula(&seed_config, n)?;
    Ok(Axioms {
        empty_exclusion,
        exclusivity,
        permanence,
        binding,
        seed,
    })
}

/// `ψ_{S,n}`: one atom per surface location, naming the tile `S` has there
/// or asserting emptiness.
pub fn shape_formula(shape: &Configuration, n: usize) -> Result<Formula, CtlError> {
    if shape
        .tiles()
        .any(|(l, _)| l.x >= n || l.y >= n)
    {
        return Err(CtlError::ShapeTooLarge {
            config: shape.size(),
            size: n,
        });
    }
    Ok(Formula::conj(locations(n).map(|l| {
        let tile = if l.x < shape.size() && l.y < shape.size() {
            shape.get(l)
        } else {
            None
        };
        match tile {
            Some(t) => Formula::tile(t, l),
            None => Formula::empty(l),
        }
    })))
}

/// `⋀ᵢⱼ (t⁰ᵢⱼ → AG t⁰ᵢⱼ)`: true exactly at states where no empty location
/// will ever be filled.
pub fn terminal_formula(n: usize) -> Formula {
    Formula::conj(
        locations(n).map(|l| Formula::implies(Formula::empty(l), Formula::ag(Formula::empty(l)))),
    )
}

/// `η` for one transition rule: once enabled, the rule eventually fires and
/// no competing rule at that location is enabled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalDeterminism {
    pub rule: TransitionRule,
    pub formula: Formula,
}

pub fn local_determinism_formulas(sys: &TileAssemblySystem, n: usize) -> Vec<LocalDeterminism> {
    let rules = transition_rules(sys, n);
    (0..rules.len())
        .map(|i| {
            let rule = &rules[i];
            let mut rhs = alloc::vec![Formula::af(rule.consequent())];
            rhs.extend(
                competing_rules(&rules, i)
                    .into_iter()
                    .map(|j| Formula::not(rules[j].antecedent())),
            );
            LocalDeterminism {
                rule: rule.clone(),
                formula: Formula::implies(rule.antecedent(), Formula::conj(rhs)),
            }
        })
        .collect()
}
