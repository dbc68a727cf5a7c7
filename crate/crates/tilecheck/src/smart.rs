//! Export of the guarded Petri net as a SMART-language model.

use std::fmt::Write as _;

use tilecheck_core::petri::{translate, PetriError, Transition};
use tilecheck_core::rules::Pattern;
use tilecheck_core::{Loc, Side, TileAssemblySystem, TileId};

fn index_expr(side: Side, symbolic: bool, loc: Loc) -> String {
    if symbolic {
        match side {
            Side::North => "[i][j+1]".into(),
            Side::East => "[i+1][j]".into(),
            Side::South => "[i][j-1]".into(),
            Side::West => "[i-1][j]".into(),
        }
    } else {
        let nb = loc.step(side).expect("guards stay on the surface");
        format!("[{}][{}]", nb.x, nb.y)
    }
}

fn guard_body<'a>(patterns: impl Iterator<Item = &'a Pattern>, symbolic: bool, loc: Loc) -> String {
    let disjuncts: Vec<String> = patterns
        .map(|p| {
            let terms: Vec<String> = p
                .inputs()
                .iter()
                .map(|&(side, u)| format!("tk(tile[{}]{}) > 0", u.0, index_expr(side, symbolic, loc)))
                .collect();
            format!("({})", terms.join(" & "))
        })
        .collect();
    if disjuncts.is_empty() {
        "false".into()
    } else {
        disjuncts.join("|")
    }
}

/// Writes the SMART model of `sys` on an `n × n` surface. Guards of interior
/// locations are emitted once inside a loop over symbolic indices; boundary
/// locations get explicit guards.
pub fn export_smart(sys: &TileAssemblySystem, n: usize, model_name: &str) -> Result<String, PetriError> {
    let net = translate(sys, n)?;
    let k = sys.tile_count();
    let last = n - 1;
    let mut o = String::new();

    writeln!(o, "pn {model_name} := {{").unwrap();
    o.push('\n');
    o.push_str("// the locations of the Petri net correspond to the presence (or absence) of a tile from a specific location\n");
    o.push_str("// first the possibility that locations are empty\n");
    writeln!(o, "for (int i in {{0..{last}}}) {{").unwrap();
    writeln!(o, "  for (int j in {{0..{last}}}) {{").unwrap();
    o.push_str("    place empty[i][j];\n}}\n\n");

    o.push_str("// now the possibility that locations have tiles\n");
    let triple = |o: &mut String, body: &str| {
        writeln!(o, "for (int k in {{0..{}}}) {{", k - 1).unwrap();
        writeln!(o, "  for (int i in {{0..{last}}}) {{").unwrap();
        writeln!(o, "    for (int j in {{0..{last}}}) {{").unwrap();
        writeln!(o, "      {body}").unwrap();
        o.push_str("}}}\n");
    };
    triple(&mut o, "place tile[k][i][j];");
    o.push('\n');

    o.push_str("// the transitions of the Petri net correspond to all potential bonds that may be formed\n");
    triple(&mut o, "trans bond[k][i][j];");
    o.push('\n');

    o.push_str("// initialization command translating the tiles of the seed assembly\n");
    o.push_str("// to an initial configuration of tokens in the Petri net\n");
    let seeded: Vec<String> = sys
        .seed()
        .placements()
        .iter()
        .map(|p| format!("tile[{}][{}][{}]:1", p.tile.0, p.loc.x, p.loc.y))
        .collect();
    writeln!(o, "init({});", seeded.join(", ")).unwrap();
    let seed_cfg = sys.seed_configuration(n).expect("translate checked the seed fits");
    let rows: Vec<String> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| seed_cfg.get(Loc::new(i, j)).is_none())
                .map(|j| format!("empty[{i}][{j}]:1"))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .filter(|r| !r.is_empty())
        .collect();
    if !rows.is_empty() {
        writeln!(o, "init({});", rows.join(",\n  ")).unwrap();
    }
    o.push('\n');

    o.push_str("// this section produces the arcs/transitions for the Petri net\n");
    o.push_str("// first produce (unguarded) transitions from empty location (x,y) to each possible tile at (x,y)\n");
    triple(&mut o, "arcs(empty[i][j]:bond[k][i][j], bond[k][i][j]:tile[k][i][j]);");

    o.push_str("// now produce guards that activate the bond transition only if the binding rule is true\n");
    if n >= 3 {
        o.push_str("// first a loop that takes care of all non-boundary conditions\n");
        writeln!(o, "for (int i in {{1..{}}}) {{", n - 2).unwrap();
        writeln!(o, "  for (int j in {{1..{}}}) {{", n - 2).unwrap();
        let inner = Loc::new(1, 1);
        for t in 0..k as u32 {
            let tr = Transition { tile: TileId(t), loc: inner };
            writeln!(o, "    guard(bond[{t}][i][j]:{});", guard_body(net.guard(tr), true, inner)).unwrap();
        }
        o.push_str("}}\n");
    }
    o.push_str("// then the boundary locations\n");
    for i in 0..n {
        for j in 0..n {
            if i != 0 && j != 0 && i != last && j != last {
                continue;
            }
            let loc = Loc::new(i, j);
            for t in 0..k as u32 {
                let tr = Transition { tile: TileId(t), loc };
                writeln!(o, "guard(bond[{t}][{i}][{j}]:{});", guard_body(net.guard(tr), false, loc)).unwrap();
            }
        }
    }
    o.push('\n');

    o.push_str("// the following commands generate statesets and related expressions for use by the model checking program\n");
    o.push_str("bigint numStates := card(reachable);\n");
    o.push_str("stateset nonTerminalStates := EX(potential(true));\n");
    o.push_str("stateset terminalStates := reachable \\ nonTerminalStates;\n");
    o.push_str("bigint numTerminalStates := card(terminalStates);\n");
    o.push_str("};\n");
    writeln!(o, "print(\"reachable states: \", {model_name}.numStates, \"\\n\");").unwrap();
    writeln!(o, "print(\"terminal states: \", {model_name}.numTerminalStates, \"\\n\");").unwrap();
    Ok(o)
}
