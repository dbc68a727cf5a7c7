//! "Does the system have a unique terminal assembly that fits the surface?"
//! answered by model checking the canonical transition system.

use thiserror::Error;

use super::{check, shape_formula, CtlError, Formula};
use crate::config::Configuration;
use crate::system::TileAssemblySystem;
use crate::transition::{
    beyond_surface_growth, build_with, AssemblySequence, BuildError, BuildOptions, GrowthSite,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryOptions {
    pub build: BuildOptions,
    /// How many times the surface may be doubled when the unique terminal
    /// state could keep growing past its edge.
    pub retries: u32,
}

impl Default for QueryOptions {
    fn default() -> Self {
        Self {
            build: BuildOptions::default(),
            retries: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryVerdict {
    /// Every maximal assembly sequence ends in `terminal`.
    Unique {
        terminal: Configuration,
        surface: usize,
    },
    /// Two assembly sequences ending in distinct terminal assemblies.
    NonUnique {
        witnesses: [AssemblySequence; 2],
        surface: usize,
    },
    /// The candidate shape still admits a tile addition.
    NotTerminal,
    /// The candidate shape is terminal but some maximal sequence avoids it;
    /// `witness` ends in a different terminal assembly.
    NotProducible {
        witness: AssemblySequence,
        surface: usize,
    },
    /// The only terminal assembly on the largest surface tried still has an
    /// outward glue that a tile can bind to.
    GrowsBeyondSurface { surface: usize, site: GrowthSite },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Ctl(#[from] CtlError),
}

pub fn unique_terminal_assembly_query(
    sys: &TileAssemblySystem,
    n: usize,
    shape: Option<&Configuration>,
    opts: QueryOptions,
) -> Result<QueryVerdict, QueryError> {
    match shape {
        Some(s) => query_shape(sys, n, s, opts),
        None => query_open(sys, n, opts),
    }
}

fn query_shape(
    sys: &TileAssemblySystem,
    n: usize,
    shape: &Configuration,
    opts: QueryOptions,
) -> Result<QueryVerdict, QueryError> {
    let psi = shape_formula(shape, n)?;
    let on_surface = if shape.size() == n {
        shape.clone()
    } else {
        shape.resized(n)
    };
    if !sys.frontier(&on_surface).is_empty() {
        return Ok(QueryVerdict::NotTerminal);
    }
    let ts = build_with(sys, n, opts.build)?;
    let out = check(&ts, &Formula::af(psi))?;
    if out.holds {
        return Ok(QueryVerdict::Unique {
            terminal: on_surface,
            surface: n,
        });
    }
    let trace = out.trace.expect("a failed AF has a counterexample");
    let avoiding = ts
        .sequence_along(&trace.states)
        .expect("traces start at the initial state");
    match ts.find(&on_surface) {
        Some(id) => {
            let reaching = ts.sequence_to(id).expect("found states are reachable");
            Ok(QueryVerdict::NonUnique {
                witnesses: [reaching, avoiding],
                surface: n,
            })
        }
        None => Ok(QueryVerdict::NotProducible {
            witness: avoiding,
            surface: n,
        }),
    }
}

fn query_open(
    sys: &TileAssemblySystem,
    n: usize,
    opts: QueryOptions,
) -> Result<QueryVerdict, QueryError> {
    let mut size = n;
    let mut attempt = 0;
    loop {
        let ts = build_with(sys, size, opts.build)?;
        let terminals = ts.terminal_states();
        if terminals.len() > 1 {
            let first = ts.sequence_to(terminals[0]).expect("reachable");
            let second = ts.sequence_to(terminals[1]).expect("reachable");
            return Ok(QueryVerdict::NonUnique {
                witnesses: [first, second],
                surface: size,
            });
        }
        let terminal = ts.state(terminals[0]).clone();
        match beyond_surface_growth(sys, &terminal) {
            None => {
                return Ok(QueryVerdict::Unique {
                    terminal,
                    surface: size,
                })
            }
            Some(site) if attempt >= opts.retries => {
                return Ok(QueryVerdict::GrowsBeyondSurface {
                    surface: size,
                    site,
                })
            }
            Some(_) => {
                attempt += 1;
                size *= 2;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::config::Loc;
    use crate::transition::build;

    fn full(sys: &TileAssemblySystem, n: usize) -> Configuration {
        let ts = build(sys, n).unwrap();
        ts.state(ts.terminal_states()[0]).clone()
    }

    #[test]
    fn sierpinski_with_known_shape() {
        let sys = catalog::sierpinski();
        let s = full(&sys, 3);
        let v = unique_terminal_assembly_query(&sys, 3, Some(&s), QueryOptions::default()).unwrap();
        assert_eq!(v, QueryVerdict::Unique { terminal: s, surface: 3 });
    }

    #[test]
    fn ambiguous_system_has_two_witnesses() {
        let sys = catalog::ambiguous_sierpinski();
        let v = unique_terminal_assembly_query(&sys, 2, None, QueryOptions::default()).unwrap();
        let QueryVerdict::NonUnique { witnesses, surface } = v else {
            panic!("expected two terminals, got {v:?}");
        };
        assert_eq!(surface, 2);
        let a = witnesses[0].replay(&sys, 2).unwrap();
        let b = witnesses[1].replay(&sys, 2).unwrap();
        assert_ne!(a, b);
        assert!(sys.frontier(&a).is_empty() && sys.frontier(&b).is_empty());
    }

    #[test]
    fn ambiguous_system_fails_af_with_a_path_to_the_other_shape() {
        let sys = catalog::ambiguous_sierpinski();
        let ts = build(&sys, 2).unwrap();
        let terms = ts.terminal_states();
        assert_eq!(terms.len(), 2);
        let s1 = ts.state(terms[0]).clone();
        let v = unique_terminal_assembly_query(&sys, 2, Some(&s1), QueryOptions::default()).unwrap();
        let QueryVerdict::NonUnique { witnesses, .. } = v else {
            panic!("{v:?}");
        };
        assert_eq!(witnesses[0].replay(&sys, 2).unwrap(), s1);
        assert_eq!(&witnesses[1].replay(&sys, 2).unwrap(), ts.state(terms[1]));
    }

    #[test]
    fn partial_shape_is_not_terminal() {
        let sys = catalog::sierpinski();
        let seed = sys.seed_configuration(3).unwrap();
        let v = unique_terminal_assembly_query(&sys, 3, Some(&seed), QueryOptions::default()).unwrap();
        assert_eq!(v, QueryVerdict::NotTerminal);
    }

    #[test]
    fn unreachable_terminal_shape() {
        let sys = catalog::sierpinski();
        // a lone `row` tile is terminal on a 1x1 surface but never assembled
        let mut other = Configuration::empty(1);
        other.set(Loc::new(0, 0), Some(sys.find("row").unwrap()));
        let v = unique_terminal_assembly_query(&sys, 1, Some(&other), QueryOptions::default()).unwrap();
        assert!(matches!(v, QueryVerdict::NotProducible { .. }));
    }

    #[test]
    fn open_surface_growth() {
        let sys = catalog::sierpinski();
        let v = unique_terminal_assembly_query(&sys, 2, None, QueryOptions::default()).unwrap();
        assert!(matches!(v, QueryVerdict::GrowsBeyondSurface { surface: 4, .. }));
        let hook = catalog::hook();
        let v = unique_terminal_assembly_query(&hook, 2, None, QueryOptions::default()).unwrap();
        assert!(matches!(v, QueryVerdict::Unique { surface: 2, .. }));
        // the hook needs two columns, so on a 1x1 surface it grows; doubling once suffices
        let v = unique_terminal_assembly_query(&hook, 1, None, QueryOptions::default()).unwrap();
        assert!(matches!(v, QueryVerdict::Unique { surface: 2, .. }));
        let none = QueryOptions { retries: 0, ..QueryOptions::default() };
        let v = unique_terminal_assembly_query(&hook, 1, None, none).unwrap();
        assert!(matches!(v, QueryVerdict::GrowsBeyondSurface { surface: 1, .. }));
    }
}
