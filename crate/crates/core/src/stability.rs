//! Cut-stability of configurations via a global minimum cut (Stoer–Wagner).

use alloc::vec::Vec;

use crate::config::{Configuration, Loc};
use crate::system::TileAssemblySystem;
use crate::tile::Side;

/// Weight of the lightest cut splitting the tiles of `c` into two nonempty
/// parts, where adjacent tiles are joined by the strength of their facing
/// glues. `None` when `c` holds fewer than two tiles.
pub fn min_cut(sys: &TileAssemblySystem, c: &Configuration) -> Option<u32> {
    let nodes: Vec<Loc> = c.tiles().map(|(l, _)| l).collect();
    let v = nodes.len();
    if v < 2 {
        return None;
    }
    let index_of = |loc: Loc| nodes.binary_search(&loc).ok();
    let mut w = alloc::vec![alloc::vec![0u64; v]; v];
    for (i, &loc) in nodes.iter().enumerate() {
        let t = c.get(loc).expect("occupied");
        for side in [Side::North, Side::East] {
            if let Some(nb) = loc.neighbor(side, c.size()) {
                if let (Some(u), Some(j)) = (c.get(nb), index_of(nb)) {
                    let s = u64::from(sys.bond(t, side, u));
                    w[i][j] += s;
                    w[j][i] += s;
                }
            }
        }
    }

    let mut active: Vec<usize> = (0..v).collect();
    let mut best = u64::MAX;
    while active.len() > 1 {
        let m = active.len();
        let mut weight = alloc::vec![0u64; m];
        let mut added = alloc::vec![false; m];
        let mut prev = 0;
        let mut last = 0;
        for step in 0..m {
            let mut sel = usize::MAX;
            for j in 0..m {
                if !added[j] && (sel == usize::MAX || weight[j] > weight[sel]) {
                    sel = j;
                }
            }
            added[sel] = true;
            if step == m - 1 {
                best = best.min(weight[sel]);
                last = sel;
            } else {
                prev = sel;
                for j in 0..m {
                    if !added[j] {
                        weight[j] += w[active[sel]][active[j]];
                    }
                }
            }
        }
        let (keep, gone) = (active[prev], active[last]);
        for &j in &active {
            w[keep][j] += w[gone][j];
            w[j][keep] = w[keep][j];
        }
        w[keep][keep] = 0;
        active.swap_remove(last);
    }
    Some(best.min(u64::from(u32::MAX)) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::TileAssemblySystem;
    use crate::tile::{Glue, TileType};

    fn uniform(strength: u32) -> TileAssemblySystem {
        let g = Glue::new("g", strength).unwrap();
        TileAssemblySystem::builder()
            .tile(TileType::new("t", [g.clone(), g.clone(), g.clone(), g]).unwrap())
            .seed_tile("t", 0, 0)
            .build()
            .unwrap()
    }

    fn block(sys: &TileAssemblySystem, w: usize, h: usize) -> Configuration {
        let mut c = Configuration::empty(w.max(h));
        for y in 0..h {
            for x in 0..w {
                c.set(Loc::new(x, y), Some(sys.find("t").unwrap()));
            }
        }
        c
    }

    // Exhaustive oracle: minimum over all bipartitions.
    fn brute_min_cut(sys: &TileAssemblySystem, c: &Configuration) -> u32 {
        let nodes: Vec<Loc> = c.tiles().map(|(l, _)| l).collect();
        let v = nodes.len();
        let mut best = u32::MAX;
        for mask in 1u32..(1 << v) - 1 {
            let mut cut = 0;
            for (i, &a) in nodes.iter().enumerate() {
                for (j, &b) in nodes.iter().enumerate() {
                    let adjacent = (a.x == b.x && a.y + 1 == b.y) || (a.y == b.y && a.x + 1 == b.x);
                    if adjacent && ((mask >> i) & 1) != ((mask >> j) & 1) {
                        let side = if a.x == b.x { Side::North } else { Side::East };
                        cut += sys.bond(c.get(a).unwrap(), side, c.get(b).unwrap());
                    }
                }
            }
            best = best.min(cut);
        }
        best
    }

    #[test]
    fn ring_of_weak_bonds_is_stable() {
        let sys = uniform(1);
        let c = block(&sys, 2, 2);
        assert_eq!(min_cut(&sys, &c), Some(2));
        assert!(sys.is_stable(&c));
        let line = block(&sys, 3, 1);
        assert_eq!(min_cut(&sys, &line), Some(1));
        assert!(!sys.is_stable(&line));
    }

    #[test]
    fn agrees_with_exhaustive_cuts() {
        let sys = uniform(1);
        for (w, h) in [(2, 3), (3, 3), (1, 4), (2, 2)] {
            let c = block(&sys, w, h);
            assert_eq!(min_cut(&sys, &c), Some(brute_min_cut(&sys, &c)), "{w}x{h}");
        }
        let mut c = block(&sys, 3, 3);
        c.set(Loc::new(1, 1), None);
        c.set(Loc::new(2, 2), None);
        assert_eq!(min_cut(&sys, &c), Some(brute_min_cut(&sys, &c)));
    }

    #[test]
    fn single_tile_has_no_cut() {
        let sys = uniform(2);
        assert_eq!(min_cut(&sys, &block(&sys, 1, 1)), None);
        assert!(sys.is_stable(&Configuration::empty(3)));
    }
}
