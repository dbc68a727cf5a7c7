//! Tile assembly systems and the single-tile attachment rules.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::config::{Configuration, Loc, Placement};
use crate::error::{AttachError, ModelError};
use crate::stability;
use crate::tile::{interaction_strength, GlueRelation, Side, TileType};

/// Index of a tile type inside its system, in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TileId(pub u32);

impl TileId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for TileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Tiles present in the neighbourhood of a location, indexed by [`Side::index`].
pub type Neighborhood = [Option<TileId>; 4];

/// The seed assembly, translated so its bounding box starts at `(0,0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeedAssembly {
    placements: Vec<Placement>,
}

impl SeedAssembly {
    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    /// Smallest surface side that contains the seed.
    pub fn extent(&self) -> usize {
        self.placements
            .iter()
            .map(|p| p.loc.x.max(p.loc.y) + 1)
            .max()
            .unwrap_or(0)
    }
}

/// A tile assembly system `(T, σ, τ, R)` with its temperature.
///
/// Immutable once built. Alongside the declared data it keeps a table of
/// pairwise side interactions so attachment tests are table lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileAssemblySystem {
    tiles: Vec<TileType>,
    seed: SeedAssembly,
    relation: GlueRelation,
    temperature: u32,
    by_name: Vec<TileId>,
    bonds: Vec<u8>,
}

impl TileAssemblySystem {
    pub fn builder() -> SystemBuilder {
        SystemBuilder::default()
    }

    pub fn tiles(&self) -> &[TileType] {
        &self.tiles
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn tile(&self, id: TileId) -> &TileType {
        &self.tiles[id.index()]
    }

    pub fn tile_ids(&self) -> impl Iterator<Item = TileId> + '_ {
        (0..self.tiles.len() as u32).map(TileId)
    }

    /// Tile ids sorted lexicographically by name (the global tie-break).
    pub fn ids_by_name(&self) -> &[TileId] {
        &self.by_name
    }

    pub fn find(&self, name: &str) -> Option<TileId> {
        self.by_name
            .binary_search_by(|id| self.tiles[id.index()].name().cmp(name))
            .ok()
            .map(|i| self.by_name[i])
    }

    pub fn name(&self, id: TileId) -> &str {
        self.tiles[id.index()].name()
    }

    pub fn seed(&self) -> &SeedAssembly {
        &self.seed
    }

    pub fn relation(&self) -> &GlueRelation {
        &self.relation
    }

    pub fn temperature(&self) -> u32 {
        self.temperature
    }

    /// Strength between `tile`'s glue on `side` and the facing glue of
    /// `neighbor` sitting on that side.
    #[inline]
    pub fn bond(&self, tile: TileId, side: Side, neighbor: TileId) -> u32 {
        let k = self.tiles.len();
        u32::from(self.bonds[(side.index() * k + tile.index()) * k + neighbor.index()])
    }

    /// The seed placed on a `size × size` surface, or `None` if it does not fit.
    pub fn seed_configuration(&self, size: usize) -> Option<Configuration> {
        if self.seed.extent() > size {
            return None;
        }
        let mut c = Configuration::empty(size);
        for p in &self.seed.placements {
            c.set(p.loc, Some(p.tile));
        }
        Some(c)
    }

    pub fn neighborhood(&self, loc: Loc, c: &Configuration) -> Neighborhood {
        let mut nb = [None; 4];
        for side in Side::ALL {
            nb[side.index()] = loc.neighbor(side, c.size()).and_then(|l| c.get(l));
        }
        nb
    }

    /// Per-side contributions of `tile` given the tiles around it.
    pub fn contributions(&self, tile: TileId, nb: &Neighborhood) -> [u32; 4] {
        let mut out = [0; 4];
        for side in Side::ALL {
            if let Some(u) = nb[side.index()] {
                out[side.index()] = self.bond(tile, side, u);
            }
        }
        out
    }

    pub fn strength_in(&self, tile: TileId, nb: &Neighborhood) -> u32 {
        self.contributions(tile, nb).iter().sum()
    }

    /// Tile types reaching the temperature in neighbourhood `nb`, by name.
    pub fn candidates_in(&self, nb: &Neighborhood) -> Vec<TileId> {
        if nb.iter().all(Option::is_none) {
            return Vec::new();
        }
        self.by_name
            .iter()
            .copied()
            .filter(|&t| self.strength_in(t, nb) >= self.temperature)
            .collect()
    }

    /// Tile types that can attach at the empty location `loc` of `c`.
    pub fn candidates(&self, loc: Loc, c: &Configuration) -> Vec<TileId> {
        if !c.is_empty_at(loc) {
            return Vec::new();
        }
        self.candidates_in(&self.neighborhood(loc, c))
    }

    /// Total glue strength binding `tile` at the empty location `loc` of `c`.
    pub fn binding_strength(
        &self,
        tile: TileId,
        loc: Loc,
        c: &Configuration,
    ) -> Result<u32, AttachError> {
        if !c.contains(loc) {
            return Err(AttachError::OutOfBounds { loc, size: c.size() });
        }
        if c.get(loc).is_some() {
            return Err(AttachError::OccupiedLocation(loc));
        }
        Ok(self.strength_in(tile, &self.neighborhood(loc, c)))
    }

    pub fn can_attach(&self, tile: TileId, loc: Loc, c: &Configuration) -> bool {
        self.binding_strength(tile, loc, c)
            .is_ok_and(|s| s >= self.temperature)
    }

    /// Every legal single-tile addition to `c`, row-major then by tile name.
    pub fn frontier(&self, c: &Configuration) -> Vec<Placement> {
        let mut out = Vec::new();
        for loc in c.locations() {
            if c.get(loc).is_none() && c.has_occupied_neighbor(loc) {
                out.extend(
                    self.candidates(loc, c)
                        .into_iter()
                        .map(|t| Placement::new(t, loc)),
                );
            }
        }
        out
    }

    /// Cut-stability: every split of the tiles of `c` into two nonempty parts
    /// is crossed by glue strength at least the temperature.
    pub fn is_stable(&self, c: &Configuration) -> bool {
        stability::min_cut(self, c).is_none_or(|cut| cut >= self.temperature)
    }
}

/// Collects the parts of a [`TileAssemblySystem`] and validates them.
#[derive(Debug, Clone)]
pub struct SystemBuilder {
    tiles: Vec<TileType>,
    seed: Vec<(String, i64, i64)>,
    relation: GlueRelation,
    temperature: u32,
}

impl Default for SystemBuilder {
    fn default() -> Self {
        Self {
            tiles: Vec::new(),
            seed: Vec::new(),
            relation: GlueRelation::Diagonal,
            temperature: 2,
        }
    }
}

impl SystemBuilder {
    pub fn tile(mut self, tile: TileType) -> Self {
        self.tiles.push(tile);
        self
    }

    pub fn tiles(mut self, tiles: impl IntoIterator<Item = TileType>) -> Self {
        self.tiles.extend(tiles);
        self
    }

    /// Adds a seed tile. Coordinates may be anywhere; the seed is translated
    /// so its bounding box starts at the origin.
    pub fn seed_tile(mut self, name: impl Into<String>, x: i64, y: i64) -> Self {
        self.seed.push((name.into(), x, y));
        self
    }

    pub fn relation(mut self, relation: GlueRelation) -> Self {
        self.relation = relation;
        self
    }

    pub fn temperature(mut self, temperature: u32) -> Self {
        self.temperature = temperature;
        self
    }

    pub fn build(self) -> Result<TileAssemblySystem, ModelError> {
        if self.tiles.is_empty() {
            return Err(ModelError::EmptySystem);
        }
        if self.temperature == 0 {
            return Err(ModelError::ZeroTemperature);
        }
        let mut by_name: Vec<TileId> = (0..self.tiles.len() as u32).map(TileId).collect();
        by_name.sort_by(|a, b| self.tiles[a.index()].name().cmp(self.tiles[b.index()].name()));
        for w in by_name.windows(2) {
            let name = self.tiles[w[0].index()].name();
            if name == self.tiles[w[1].index()].name() {
                return Err(ModelError::DuplicateTileName(name.into()));
            }
        }

        let k = self.tiles.len();
        let mut bonds = alloc::vec![0u8; 4 * k * k];
        for side in Side::ALL {
            for (t, tt) in self.tiles.iter().enumerate() {
                for (u, ut) in self.tiles.iter().enumerate() {
                    let s = interaction_strength(
                        tt.glue(side),
                        ut.glue(side.opposite()),
                        &self.relation,
                    );
                    bonds[(side.index() * k + t) * k + u] = s as u8;
                }
            }
        }

        let mut sys = TileAssemblySystem {
            tiles: self.tiles,
            seed: SeedAssembly {
                placements: Vec::new(),
            },
            relation: self.relation,
            temperature: self.temperature,
            by_name,
            bonds,
        };

        if self.seed.is_empty() {
            return Err(ModelError::EmptySeed);
        }
        let min_x = self.seed.iter().map(|s| s.1).min().unwrap_or(0);
        let min_y = self.seed.iter().map(|s| s.2).min().unwrap_or(0);
        let mut placements = Vec::with_capacity(self.seed.len());
        for (name, x, y) in &self.seed {
            let tile = sys
                .find(name)
                .ok_or_else(|| ModelError::UnknownTile(name.clone()))?;
            let loc = Loc::new((x - min_x) as usize, (y - min_y) as usize);
            placements.push(Placement::new(tile, loc));
        }
        placements.sort();
        for w in placements.windows(2) {
            if w[0].loc == w[1].loc {
                return Err(ModelError::DuplicateSeedLocation(w[0].loc));
            }
        }
        sys.seed = SeedAssembly { placements };

        let extent = sys.seed.extent();
        let config = sys
            .seed_configuration(extent)
            .expect("seed fits its own extent");
        if !config.is_connected() {
            return Err(ModelError::DisconnectedSeed);
        }
        if !sys.is_stable(&config) {
            return Err(ModelError::UnstableSeed(sys.temperature));
        }
        Ok(sys)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::tile::Glue;
    use proptest::prelude::*;

    fn id(sys: &TileAssemblySystem, name: &str) -> TileId {
        sys.find(name).unwrap()
    }

    #[test]
    fn sierpinski_binding_strengths() {
        let sys = catalog::sierpinski();
        let mut c = sys.seed_configuration(3).unwrap();
        // boundary tile at (0,1) only sees the seed's strength-2 north glue
        assert_eq!(sys.binding_strength(id(&sys, "col"), Loc::new(0, 1), &c), Ok(2));
        c.set(Loc::new(0, 1), Some(id(&sys, "col")));
        c.set(Loc::new(1, 0), Some(id(&sys, "row")));
        // both inputs are "1" with strength 1
        assert_eq!(sys.binding_strength(id(&sys, "1+1"), Loc::new(1, 1), &c), Ok(2));
        assert_eq!(sys.binding_strength(id(&sys, "0+1"), Loc::new(1, 1), &c), Ok(1));
        assert!(sys.can_attach(id(&sys, "1+1"), Loc::new(1, 1), &c));
        assert!(!sys.can_attach(id(&sys, "0+1"), Loc::new(1, 1), &c));
        // nothing around (2,2)
        assert_eq!(sys.binding_strength(id(&sys, "1+1"), Loc::new(2, 2), &c), Ok(0));
    }

    #[test]
    fn binding_strength_errors() {
        let sys = catalog::sierpinski();
        let c = sys.seed_configuration(2).unwrap();
        let t = id(&sys, "col");
        assert_eq!(
            sys.binding_strength(t, Loc::new(0, 0), &c),
            Err(AttachError::OccupiedLocation(Loc::new(0, 0)))
        );
        assert!(matches!(
            sys.binding_strength(t, Loc::new(2, 0), &c),
            Err(AttachError::OutOfBounds { .. })
        ));
        assert!(!sys.can_attach(t, Loc::new(0, 0), &c));
    }

    #[test]
    fn single_side_thresholds() {
        let one = Glue::new("a", 1).unwrap();
        let two = Glue::new("b", 2).unwrap();
        let sys = TileAssemblySystem::builder()
            .tile(TileType::new("s", [one.clone(), two.clone(), Glue::null(), Glue::null()]).unwrap())
            .tile(TileType::new("weak", [Glue::null(), Glue::null(), one, Glue::null()]).unwrap())
            .tile(TileType::new("strong", [Glue::null(), Glue::null(), Glue::null(), two]).unwrap())
            .seed_tile("s", 0, 0)
            .build()
            .unwrap();
        let c = sys.seed_configuration(2).unwrap();
        assert!(!sys.can_attach(id(&sys, "weak"), Loc::new(0, 1), &c));
        assert!(sys.can_attach(id(&sys, "strong"), Loc::new(1, 0), &c));
    }

    #[test]
    fn frontier_of_sierpinski_seed() {
        let sys = catalog::sierpinski();
        let c = sys.seed_configuration(2).unwrap();
        // brute force over all 4 locations x 7 tiles
        let mut brute = Vec::new();
        for loc in c.locations() {
            for &t in sys.ids_by_name() {
                if sys.can_attach(t, loc, &c) {
                    brute.push(Placement::new(t, loc));
                }
            }
        }
        assert_eq!(sys.frontier(&c), brute);
        assert_eq!(
            sys.frontier(&c),
            [
                Placement::new(id(&sys, "row"), Loc::new(1, 0)),
                Placement::new(id(&sys, "col"), Loc::new(0, 1)),
            ]
        );
    }

    #[test]
    fn frontier_of_full_and_empty() {
        let sys = catalog::sierpinski();
        let mut full = Configuration::empty(2);
        for loc in full.clone().locations() {
            full.set(loc, Some(TileId(1)));
        }
        assert!(sys.frontier(&full).is_empty());
        assert!(sys.frontier(&Configuration::empty(3)).is_empty());
    }

    #[test]
    fn stability_examples() {
        let sys = catalog::sierpinski();
        let seed = sys.seed_configuration(2).unwrap();
        assert!(sys.is_stable(&seed));
        let mut diag = Configuration::empty(2);
        diag.set(Loc::new(0, 0), Some(id(&sys, "seed")));
        diag.set(Loc::new(1, 1), Some(id(&sys, "1+1")));
        assert!(!sys.is_stable(&diag));
        let grown = seed.with(Loc::new(0, 1), id(&sys, "col"));
        assert!(sys.is_stable(&grown));
    }

    #[test]
    fn builder_rejects_bad_systems() {
        let g = || [Glue::null(), Glue::null(), Glue::null(), Glue::null()];
        assert_eq!(TileAssemblySystem::builder().build(), Err(ModelError::EmptySystem));
        let dup = TileAssemblySystem::builder()
            .tile(TileType::new("a", g()).unwrap())
            .tile(TileType::new("a", g()).unwrap())
            .seed_tile("a", 0, 0)
            .build();
        assert_eq!(dup, Err(ModelError::DuplicateTileName("a".into())));
        let unknown = TileAssemblySystem::builder()
            .tile(TileType::new("a", g()).unwrap())
            .seed_tile("Z", 0, 0)
            .build();
        assert_eq!(unknown, Err(ModelError::UnknownTile("Z".into())));
        let apart = TileAssemblySystem::builder()
            .tile(TileType::new("a", g()).unwrap())
            .seed_tile("a", 0, 0)
            .seed_tile("a", 2, 0)
            .build();
        assert_eq!(apart, Err(ModelError::DisconnectedSeed));
        let loose = TileAssemblySystem::builder()
            .tile(TileType::new("a", g()).unwrap())
            .seed_tile("a", 0, 0)
            .seed_tile("a", 1, 0)
            .build();
        assert_eq!(loose, Err(ModelError::UnstableSeed(2)));
    }

    #[test]
    fn seed_is_translated_to_origin() {
        let sys = catalog::sierpinski();
        let moved = TileAssemblySystem::builder()
            .tiles(sys.tiles().iter().cloned())
            .seed_tile("seed", 5, 7)
            .build()
            .unwrap();
        assert_eq!(moved.seed().placements()[0].loc, Loc::new(0, 0));
    }

    fn random_config(sys: &TileAssemblySystem, n: usize, cells: &[u8]) -> Configuration {
        let k = sys.tile_count() as u8 + 1;
        let mut c = Configuration::empty(n);
        for (loc, v) in c.clone().locations().zip(cells) {
            let v = v % k;
            c.set(loc, (v > 0).then(|| TileId(u32::from(v) - 1)));
        }
        c
    }

    proptest! {
        #[test]
        fn binding_strength_is_monotone(cells in proptest::collection::vec(any::<u8>(), 16), extra in any::<u8>(), at in 0usize..16, target in 0usize..16, tile in 0u32..7) {
            let sys = catalog::sierpinski();
            let mut c = random_config(&sys, 4, &cells);
            let target = Loc::new(target % 4, target / 4);
            let at = Loc::new(at % 4, at / 4);
            c.set(target, None);
            prop_assume!(at != target);
            c.set(at, None);
            let before = sys.binding_strength(TileId(tile), target, &c).unwrap();
            c.set(at, Some(TileId(u32::from(extra) % 7)));
            let after = sys.binding_strength(TileId(tile), target, &c).unwrap();
            prop_assert!(after >= before);
        }

        #[test]
        fn attachment_is_local(cells in proptest::collection::vec(any::<u8>(), 25), noise in proptest::collection::vec(any::<u8>(), 25), tile in 0u32..7) {
            let sys = catalog::sierpinski();
            let mut c = random_config(&sys, 5, &cells);
            let target = Loc::new(2, 2);
            c.set(target, None);
            let before = sys.can_attach(TileId(tile), target, &c);
            let mut d = random_config(&sys, 5, &noise);
            for side in Side::ALL {
                let nb = target.neighbor(side, 5).unwrap();
                d.set(nb, c.get(nb));
            }
            d.set(target, None);
            prop_assert_eq!(before, sys.can_attach(TileId(tile), target, &d));
        }

        #[test]
        fn frontier_locations_are_bounded(cells in proptest::collection::vec(any::<u8>(), 25)) {
            let sys = catalog::sierpinski();
            let c = random_config(&sys, 5, &cells);
            let mut locs: Vec<Loc> = sys.frontier(&c).into_iter().map(|p| p.loc).collect();
            locs.dedup();
            prop_assert!(locs.len() <= 4 * c.tile_count());
        }
    }
}
