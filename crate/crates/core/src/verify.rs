//! Polynomial-time verification of rectilinear systems with a single-tile
//! seed at the origin.
//!
//! Growth is explored in waves. Wave `i` first fixes the row `y = i` up to
//! `x = i - 2` and the column `x = i` up to `y = i - 2`, one configuration per
//! location. It then handles the diagonal region `{(i-1, i), (i, i-1), (i, i)}`,
//! where the arrival order of the two precursors matters, with four
//! configurations. Together with the seed that is `n² + n - 1`
//! configurations on a complete run.

use alloc::vec::Vec;

use thiserror::Error;

use crate::config::{Configuration, Loc, Placement};
use crate::system::{TileAssemblySystem, TileId};
use crate::tile::Side;
use crate::transition::{complete_to_terminal, AssemblySequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    UniqueTerminal,
    NotRectilinear,
    NonUniqueTerminal,
    NotLocallyDeterministic,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::UniqueTerminal => "UniqueTerminal",
            Verdict::NotRectilinear => "NotRectilinear",
            Verdict::NonUniqueTerminal => "NonUniqueTerminal",
            Verdict::NotLocallyDeterministic => "NotLocallyDeterministic",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RectilinearityViolation {
    /// The tile at `loc` took strength through its north or east side.
    BoundThrough { loc: Loc, side: Side },
    /// The tile at `loc` exposes an unattached full-strength glue on `side`
    /// away from the edge where that is allowed.
    ExposedGlue { loc: Loc, side: Side },
    /// The tile at `loc` lets `placement` attach to its south or west.
    EnablesBackwardGrowth { loc: Loc, placement: Placement },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LocalDeterminismViolation {
    /// Bound with more than the temperature.
    OverBinding { strength: u32 },
    /// Other tile types could have taken the same location.
    Competing { others: Vec<TileId> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    /// Several tile types can attach at `loc`.
    Ambiguous { loc: Loc, candidates: Vec<TileId> },
    Rectilinearity(RectilinearityViolation),
    LocalDeterminism {
        placement: Placement,
        kind: LocalDeterminismViolation,
    },
}

impl Violation {
    pub fn loc(&self) -> Loc {
        match self {
            Violation::Ambiguous { loc, .. } => *loc,
            Violation::Rectilinearity(
                RectilinearityViolation::BoundThrough { loc, .. }
                | RectilinearityViolation::ExposedGlue { loc, .. },
            ) => *loc,
            Violation::Rectilinearity(RectilinearityViolation::EnablesBackwardGrowth {
                placement,
                ..
            }) => placement.loc,
            Violation::LocalDeterminism { placement, .. } => placement.loc,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub verdict: Verdict,
    /// None for `UniqueTerminal`, two for `NonUniqueTerminal`, one otherwise.
    pub witnesses: Vec<AssemblySequence>,
    pub configurations_evaluated: usize,
    pub surface: usize,
    pub violation: Option<Violation>,
    /// The terminal assembly, for `UniqueTerminal`.
    pub terminal: Option<Configuration>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Check unattached west glues (instead of east glues) away from the
    /// south edge.
    pub strict_paper_rectilinearity: bool,
    /// Check every placement for over-binding.
    pub local_determinism_check: bool,
    /// Treat a multi-tile seed as one pre-placed block instead of rejecting it.
    pub reencode_seed: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            strict_paper_rectilinearity: false,
            local_determinism_check: true,
            reencode_seed: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("seed has {0} tiles; a single seed tile is required")]
    SeedNotSingleton(usize),
    #[error("seed needs a {needed}x{needed} surface, got {given}x{given}")]
    SurfaceTooSmall { needed: usize, given: usize },
}

/// The most configurations a run on an `n × n` surface evaluates.
pub fn configuration_budget(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        n * n + n - 1
    }
}

/// Checks a tile just placed at `loc` in `c` (which already contains it).
pub fn rectilinearity_check(
    sys: &TileAssemblySystem,
    c: &Configuration,
    loc: Loc,
    strict: bool,
) -> Result<(), RectilinearityViolation> {
    let tile = c.get(loc).expect("checked location holds a tile");
    let nb = sys.neighborhood(loc, c);
    let contrib = sys.contributions(tile, &nb);
    for side in [Side::North, Side::East] {
        if contrib[side.index()] > 0 {
            return Err(RectilinearityViolation::BoundThrough { loc, side });
        }
    }
    let exposed = |side: Side| {
        nb[side.index()].is_none()
            && sys
                .tile_ids()
                .any(|u| sys.bond(u, side.opposite(), tile) >= sys.temperature())
    };
    if loc.x > 0 && exposed(Side::North) {
        return Err(RectilinearityViolation::ExposedGlue {
            loc,
            side: Side::North,
        });
    }
    let side = if strict { Side::West } else { Side::East };
    if loc.y > 0 && exposed(side) {
        return Err(RectilinearityViolation::ExposedGlue { loc, side });
    }
    for side in [Side::South, Side::West] {
        let Some(back) = loc.neighbor(side, c.size()) else {
            continue;
        };
        if c.get(back).is_some() {
            continue;
        }
        for u in sys.candidates(back, c) {
            if sys.bond(u, side.opposite(), tile) > 0 {
                return Err(RectilinearityViolation::EnablesBackwardGrowth {
                    loc,
                    placement: Placement::new(u, back),
                });
            }
        }
    }
    Ok(())
}

/// Checks a legal placement into `before` (which does not yet contain it).
pub fn local_determinism_online(
    sys: &TileAssemblySystem,
    placement: Placement,
    before: &Configuration,
) -> Result<(), LocalDeterminismViolation> {
    let nb = sys.neighborhood(placement.loc, before);
    let others: Vec<TileId> = sys
        .candidates_in(&nb)
        .into_iter()
        .filter(|&t| t != placement.tile)
        .collect();
    if !others.is_empty() {
        return Err(LocalDeterminismViolation::Competing { others });
    }
    let strength = sys.strength_in(placement.tile, &nb);
    if strength > sys.temperature() {
        return Err(LocalDeterminismViolation::OverBinding { strength });
    }
    Ok(())
}

/// Replays `witness` and reports whether some step breaks rectilinear growth.
pub fn exhibits_violation(
    sys: &TileAssemblySystem,
    n: usize,
    witness: &AssemblySequence,
    strict: bool,
) -> bool {
    let Some(mut c) = sys.seed_configuration(n) else {
        return false;
    };
    for p in &witness.steps {
        if !sys.can_attach(p.tile, p.loc, &c) {
            return false;
        }
        c.set(p.loc, Some(p.tile));
        if rectilinearity_check(sys, &c, p.loc, strict).is_err() {
            return true;
        }
    }
    false
}

enum Stop {
    Found(VerificationReport),
}

struct Run<'a> {
    sys: &'a TileAssemblySystem,
    n: usize,
    opts: VerifyOptions,
    config: Configuration,
    steps: Vec<Placement>,
    evaluated: usize,
}

impl Run<'_> {
    fn stop(&self, verdict: Verdict, witnesses: Vec<AssemblySequence>, v: Violation) -> Stop {
        Stop::Found(VerificationReport {
            verdict,
            witnesses,
            configurations_evaluated: self.evaluated,
            surface: self.n,
            violation: Some(v),
            terminal: None,
        })
    }

    fn prefix_with(&self, extra: &[Placement]) -> AssemblySequence {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(extra);
        AssemblySequence::new(steps)
    }

    fn completed(&self, extra: Placement) -> AssemblySequence {
        complete_to_terminal(self.sys, self.n, &self.prefix_with(&[extra]))
            .expect("schedule placements are legal")
            .0
    }

    /// Fixes one location: returns the tile now there, if any.
    fn slot(&mut self, loc: Loc) -> Result<Option<TileId>, Stop> {
        if let Some(t) = self.config.get(loc) {
            return Ok(Some(t));
        }
        let candidates = self.sys.candidates(loc, &self.config);
        match candidates.len() {
            0 => Ok(None),
            1 => {
                self.place(Placement::new(candidates[0], loc))?;
                Ok(Some(candidates[0]))
            }
            _ => {
                let a = self.completed(Placement::new(candidates[0], loc));
                let b = self.completed(Placement::new(candidates[1], loc));
                Err(self.stop(
                    Verdict::NonUniqueTerminal,
                    alloc::vec![a, b],
                    Violation::Ambiguous { loc, candidates },
                ))
            }
        }
    }

    fn place(&mut self, p: Placement) -> Result<(), Stop> {
        if self.opts.local_determinism_check {
            if let Err(kind) = local_determinism_online(self.sys, p, &self.config) {
                let w = self.prefix_with(&[p]);
                return Err(self.stop(
                    Verdict::NotLocallyDeterministic,
                    alloc::vec![w],
                    Violation::LocalDeterminism { placement: p, kind },
                ));
            }
        }
        self.config.set(p.loc, Some(p.tile));
        self.steps.push(p);
        if let Err(v) =
            rectilinearity_check(self.sys, &self.config, p.loc, self.opts.strict_paper_rectilinearity)
        {
            let mut w = self.prefix_with(&[]);
            if let RectilinearityViolation::EnablesBackwardGrowth { placement, .. } = v {
                w.steps.push(placement);
            }
            return Err(self.stop(
                Verdict::NotRectilinear,
                alloc::vec![w],
                Violation::Rectilinearity(v),
            ));
        }
        Ok(())
    }

    fn region(&mut self, i: usize) -> Result<(), Stop> {
        let pw = Loc::new(i - 1, i);
        let ps = Loc::new(i, i - 1);
        let corner = Loc::new(i, i);

        // west precursor only
        self.evaluated += 1;
        let w = self.slot(pw)?;
        let from_west = if w.is_some() {
            self.sys.candidates(corner, &self.config)
        } else {
            Vec::new()
        };
        let before_south = self.steps.len();

        // south precursor only
        self.evaluated += 1;
        let s = self.slot(ps)?;
        let from_south = match s {
            Some(_) if self.config.get(corner).is_none() => {
                let mut nb = self.sys.neighborhood(corner, &self.config);
                nb[Side::West.index()] = None;
                self.sys.candidates_in(&nb)
            }
            _ => Vec::new(),
        };

        // both precursors
        self.evaluated += 1;
        let u = self.slot(corner)?;

        // corner filled: could it have arrived before one of its precursors,
        // which would then bind through the corner?
        self.evaluated += 1;
        let Some(u) = u else { return Ok(()) };
        if self.steps.len() == before_south + 2 {
            let s_place = self.steps[before_south];
            let c_place = self.steps[before_south + 1];
            if let Some(s) = s {
                if from_west.contains(&u) && self.sys.bond(s, Side::North, u) > 0 {
                    let mut steps = self.steps[..before_south].to_vec();
                    steps.push(c_place);
                    steps.push(s_place);
                    return Err(self.stop(
                        Verdict::NotRectilinear,
                        alloc::vec![AssemblySequence::new(steps)],
                        Violation::Rectilinearity(RectilinearityViolation::BoundThrough {
                            loc: ps,
                            side: Side::North,
                        }),
                    ));
                }
            }
        }
        if let (Some(w), true) = (w, from_south.contains(&u)) {
            if self.sys.bond(w, Side::East, u) > 0 {
                if let Some(wi) = self.steps.iter().rposition(|p| p.loc == pw) {
                    let mut steps = self.steps.clone();
                    let w_place = steps.remove(wi);
                    steps.push(w_place);
                    return Err(self.stop(
                        Verdict::NotRectilinear,
                        alloc::vec![AssemblySequence::new(steps)],
                        Violation::Rectilinearity(RectilinearityViolation::BoundThrough {
                            loc: pw,
                            side: Side::East,
                        }),
                    ));
                }
            }
        }
        Ok(())
    }

    fn execute(&mut self) -> Result<(), Stop> {
        self.evaluated = 1;
        for i in 1..self.n {
            for x in 0..i.saturating_sub(1) {
                self.evaluated += 1;
                self.slot(Loc::new(x, i))?;
            }
            for y in 0..i.saturating_sub(1) {
                self.evaluated += 1;
                self.slot(Loc::new(i, y))?;
            }
            self.region(i)?;
        }
        // anything still attachable grew outside the schedule
        if let Some(p) = self.sys.frontier(&self.config).first() {
            let w = self.prefix_with(&[*p]);
            let contrib = self
                .sys
                .contributions(p.tile, &self.sys.neighborhood(p.loc, &self.config));
            let side = if contrib[Side::East.index()] > 0 {
                Side::East
            } else {
                Side::North
            };
            return Err(self.stop(
                Verdict::NotRectilinear,
                alloc::vec![w],
                Violation::Rectilinearity(RectilinearityViolation::BoundThrough {
                    loc: p.loc,
                    side,
                }),
            ));
        }
        Ok(())
    }
}

pub fn verify(sys: &TileAssemblySystem, n: usize) -> Result<VerificationReport, VerifyError> {
    verify_with(sys, n, VerifyOptions::default())
}

pub fn verify_with(
    sys: &TileAssemblySystem,
    n: usize,
    opts: VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let seed_len = sys.seed().len();
    if seed_len != 1 && !opts.reencode_seed {
        return Err(VerifyError::SeedNotSingleton(seed_len));
    }
    let config = sys
        .seed_configuration(n)
        .filter(|_| n > 0)
        .ok_or(VerifyError::SurfaceTooSmall {
            needed: sys.seed().extent(),
            given: n,
        })?;
    let mut run = Run {
        sys,
        n,
        opts,
        config,
        steps: Vec::new(),
        evaluated: 0,
    };
    match run.execute() {
        Ok(()) => Ok(VerificationReport {
            verdict: Verdict::UniqueTerminal,
            witnesses: Vec::new(),
            configurations_evaluated: run.evaluated,
            surface: n,
            violation: None,
            terminal: Some(run.config),
        }),
        Err(Stop::Found(report)) => Ok(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::tile::{Glue, TileType};
    use crate::transition::build;
    use proptest::prelude::*;

    #[test]
    fn sierpinski_budget_is_exact() {
        let sys = catalog::sierpinski();
        for n in 1..12 {
            let r = verify(&sys, n).unwrap();
            assert_eq!(r.verdict, Verdict::UniqueTerminal);
            assert_eq!(r.configurations_evaluated, n * n + n - 1);
            assert!(r.witnesses.is_empty());
            assert!(r.terminal.unwrap().is_full());
        }
    }

    #[test]
    fn terminal_matches_explicit_system() {
        for sys in [catalog::sierpinski(), catalog::pascal_mod3(), catalog::truncated_sierpinski()] {
            for n in 2..5 {
                let ts = build(&sys, n).unwrap();
                let term = ts.terminal_states();
                assert_eq!(term.len(), 1);
                let r = verify(&sys, n).unwrap();
                assert_eq!(r.verdict, Verdict::UniqueTerminal);
                assert_eq!(r.terminal.as_ref(), Some(ts.state(term[0])));
                assert_eq!(r.configurations_evaluated, configuration_budget(n));
            }
        }
    }

    #[test]
    fn ambiguous_corner() {
        let sys = catalog::ambiguous_sierpinski();
        let r = verify(&sys, 3).unwrap();
        assert_eq!(r.verdict, Verdict::NonUniqueTerminal);
        assert_eq!(r.violation.as_ref().unwrap().loc(), Loc::new(1, 1));
        assert_eq!(r.witnesses.len(), 2);
        let a = r.witnesses[0].replay(&sys, 3).unwrap();
        let b = r.witnesses[1].replay(&sys, 3).unwrap();
        assert_ne!(a, b);
        assert!(sys.frontier(&a).is_empty() && sys.frontier(&b).is_empty());
        let diff: Vec<Loc> = a.locations().filter(|&l| a.get(l) != b.get(l)).collect();
        assert_eq!(diff[0], Loc::new(1, 1));
        assert!(r.configurations_evaluated <= configuration_budget(3));
    }

    #[test]
    fn hook_grows_backwards() {
        let sys = catalog::hook();
        for strict in [false, true] {
            let opts = VerifyOptions { strict_paper_rectilinearity: strict, ..VerifyOptions::default() };
            let r = verify_with(&sys, 2, opts).unwrap();
            assert_eq!(r.verdict, Verdict::NotRectilinear);
            assert_eq!(r.witnesses.len(), 1);
            let w = &r.witnesses[0];
            w.replay(&sys, 2).unwrap();
            assert!(exhibits_violation(&sys, 2, w, strict));
            if strict {
                // `post` only exposes an east glue, so `hang` growing south is what gets caught
                assert_eq!(w.steps.last().unwrap().tile, sys.find("hang").unwrap());
            } else {
                assert!(matches!(
                    r.violation,
                    Some(Violation::Rectilinearity(RectilinearityViolation::ExposedGlue { side: Side::East, .. }))
                ));
            }
        }
    }

    #[test]
    fn overbinding_depends_on_mode() {
        let sys = catalog::overbinding();
        let r = verify(&sys, 2).unwrap();
        assert_eq!(r.verdict, Verdict::NotRectilinear);
        assert!(matches!(
            r.violation,
            Some(Violation::Rectilinearity(RectilinearityViolation::ExposedGlue { side: Side::East, .. }))
        ));
        let strict = VerifyOptions { strict_paper_rectilinearity: true, ..VerifyOptions::default() };
        let r = verify_with(&sys, 2, strict).unwrap();
        assert_eq!(r.verdict, Verdict::NotLocallyDeterministic);
        assert!(matches!(
            r.violation,
            Some(Violation::LocalDeterminism { kind: LocalDeterminismViolation::OverBinding { strength: 3 }, .. })
        ));
        r.witnesses[0].replay(&sys, 2).unwrap();
        // without the online check the corner arrival order gives it away
        let lax = VerifyOptions { local_determinism_check: false, ..strict };
        let r = verify_with(&sys, 2, lax).unwrap();
        assert_eq!(r.verdict, Verdict::NotRectilinear);
        assert!(exhibits_violation(&sys, 2, &r.witnesses[0], true));
    }

    #[test]
    fn growth_stopping_early_counts_absent_slots() {
        let g = Glue::new("v", 2).unwrap();
        let sys = TileAssemblySystem::builder()
            .tile(TileType::new("seed", [g.clone(), Glue::null(), Glue::null(), Glue::null()]).unwrap())
            .tile(TileType::new("top", [Glue::null(), Glue::null(), g, Glue::null()]).unwrap())
            .seed_tile("seed", 0, 0)
            .build()
            .unwrap();
        let r = verify(&sys, 4).unwrap();
        assert_eq!(r.verdict, Verdict::UniqueTerminal);
        assert_eq!(r.configurations_evaluated, 19);
        assert_eq!(r.terminal.unwrap().tile_count(), 2);
    }

    #[test]
    fn multi_tile_seeds() {
        let g = Glue::new("v", 2).unwrap();
        let sys = TileAssemblySystem::builder()
            .tile(TileType::new("a", [g.clone(), Glue::null(), Glue::null(), Glue::null()]).unwrap())
            .tile(TileType::new("b", [Glue::null(), Glue::null(), g, Glue::null()]).unwrap())
            .seed_tile("a", 0, 0)
            .seed_tile("b", 0, 1)
            .build()
            .unwrap();
        assert_eq!(verify(&sys, 2).unwrap_err(), VerifyError::SeedNotSingleton(2));
        let opts = VerifyOptions { reencode_seed: true, ..VerifyOptions::default() };
        let r = verify_with(&sys, 2, opts).unwrap();
        assert_eq!(r.verdict, Verdict::UniqueTerminal);
        assert_eq!(verify_with(&sys, 1, opts).unwrap_err(), VerifyError::SurfaceTooSmall { needed: 2, given: 1 });
    }

    #[test]
    fn online_check_examples() {
        let sys = catalog::sierpinski();
        let seed = sys.seed_configuration(2).unwrap();
        let col = Placement::new(sys.find("col").unwrap(), Loc::new(0, 1));
        assert_eq!(local_determinism_online(&sys, col, &seed), Ok(()));
        let amb = catalog::ambiguous_sierpinski();
        let mut c = amb.seed_configuration(2).unwrap();
        c.set(Loc::new(0, 1), amb.find("col"));
        c.set(Loc::new(1, 0), amb.find("row"));
        let p = Placement::new(amb.find("1+1").unwrap(), Loc::new(1, 1));
        assert_eq!(
            local_determinism_online(&amb, p, &c),
            Err(LocalDeterminismViolation::Competing { others: alloc::vec![amb.find("1+1*").unwrap()] })
        );
    }

    #[test]
    fn sierpinski_placements_are_rectilinear() {
        // every edge of the explicit 3x3 system
        let sys = catalog::sierpinski();
        let ts = build(&sys, 3).unwrap();
        for s in 0..ts.state_count() {
            for e in ts.successors(s) {
                let c = ts.state(e.target);
                assert_eq!(rectilinearity_check(&sys, c, e.placement.loc, false), Ok(()));
                assert_eq!(rectilinearity_check(&sys, c, e.placement.loc, true), Ok(()));
            }
        }
    }

    #[test]
    fn backward_binding_is_flagged() {
        // `b` attaches west of the seed using only the seed's strength-2 west glue
        let g = Glue::new("w", 2).unwrap();
        let sys = TileAssemblySystem::builder()
            .tile(TileType::new("seed", [Glue::null(), Glue::null(), Glue::null(), g.clone()]).unwrap())
            .tile(TileType::new("b", [Glue::null(), g, Glue::null(), Glue::null()]).unwrap())
            .seed_tile("seed", 1, 0)
            .build()
            .unwrap();
        // the seed is re-rooted at the origin, so place the pair by hand
        let mut c = Configuration::empty(2);
        c.set(Loc::new(1, 0), sys.find("seed"));
        c.set(Loc::new(0, 0), sys.find("b"));
        assert_eq!(
            rectilinearity_check(&sys, &c, Loc::new(0, 0), false),
            Err(RectilinearityViolation::BoundThrough { loc: Loc::new(0, 0), side: Side::East })
        );
    }

    #[test]
    fn exposed_north_glue_in_interior() {
        let sys = catalog::sierpinski();
        let mut c = Configuration::empty(3);
        c.set(Loc::new(2, 1), sys.find("col"));
        assert_eq!(
            rectilinearity_check(&sys, &c, Loc::new(2, 1), false),
            Err(RectilinearityViolation::ExposedGlue { loc: Loc::new(2, 1), side: Side::North })
        );
    }

    fn random_reachable(sys: &TileAssemblySystem, n: usize, picks: &[u8]) -> Configuration {
        let mut c = sys.seed_configuration(n).unwrap();
        for &p in picks {
            let f = sys.frontier(&c);
            if f.is_empty() {
                break;
            }
            let pl = f[p as usize % f.len()];
            c.set(pl.loc, Some(pl.tile));
        }
        c
    }

    proptest! {
        #[test]
        fn binding_ignores_far_quadrants(picks in proptest::collection::vec(any::<u8>(), 0..30), x in 0usize..6, y in 0usize..6, which in 0usize..2) {
            let sys = [catalog::sierpinski(), catalog::pascal_mod3()][which].clone();
            let c = random_reachable(&sys, 6, &picks);
            let loc = Loc::new(x, y);
            prop_assume!(c.get(loc).is_none());
            let mut pruned = c.clone();
            for (l, _) in c.tiles() {
                let nw = l.x < x && l.y > y;
                let se = l.x > x && l.y < y;
                if nw || se {
                    pruned.set(l, None);
                }
            }
            for t in sys.tile_ids() {
                prop_assert_eq!(sys.can_attach(t, loc, &c), sys.can_attach(t, loc, &pruned));
            }
        }
    }
}
