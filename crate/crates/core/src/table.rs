//! Reader and writer for the `relgame-table v1` text format.
//!
//! ```text
//! relgame-table v1
//! order 3
//! labels e a a^2        (optional)
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! gens 1
//! ```
//! A generator may carry its own name as `index:name` (`gens 1:x`); it is
//! otherwise named by its element label. Lines starting with `#` are comments; blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::GroupError;
use crate::group::{Element, GeneratingSet, Generator, Group};

const MAGIC: &str = "relgame-table v1";

pub fn load_group_table(path: &Path) -> Result<(Group, GeneratingSet), GroupError> {
    let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("table").to_string();
    parse_group_table(&name, &text)
}

pub fn parse_group_table(name: &str, text: &str) -> Result<(Group, GeneratingSet), GroupError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let perr = |line: usize, message: String| GroupError::Parse { line, message };

    let (ln, magic) = lines.next().ok_or_else(|| perr(0, "empty file".into()))?;
    if magic != MAGIC {
        return Err(perr(ln, format!("expected {MAGIC:?}")));
    }
    let (ln, order_line) = lines.next().ok_or_else(|| perr(ln, "missing order line".into()))?;
    let order: usize = order_line
        .strip_prefix("order ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| perr(ln, "expected `order N`".into()))?;
    if order == 0 || order > crate::group::MAX_GROUP_ORDER {
        return Err(perr(ln, format!("order {order} out of range")));
    }

    let mut labels = None;
    let mut rows: Vec<usize> = Vec::with_capacity(order * order);
    let mut row_count = 0;
    let mut gens_line = None;
    for (ln, line) in lines.by_ref() {
        if let Some(rest) = line.strip_prefix("labels") {
            if row_count > 0 || labels.is_some() {
                return Err(perr(ln, "labels must precede the table".into()));
            }
            labels = Some(rest.split_whitespace().map(str::to_string).collect::<Vec<_>>());
            continue;
        }
        if let Some(rest) = line.strip_prefix("gens") {
            gens_line = Some((ln, rest.to_string()));
            break;
        }
        let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|e| perr(ln, format!("bad table row: {e}")))?;
        if row.len() != order {
            return Err(perr(ln, format!("row has {} entries, expected {order}", row.len())));
        }
        rows.extend(row);
        row_count += 1;
    }
    if let Some((ln, _)) = lines.next() {
        return Err(perr(ln, "content after gens line".into()));
    }
    if row_count != order {
        return Err(perr(0, format!("found {row_count} table rows, expected {order}")));
    }
    let (gln, gens_text) = gens_line.ok_or_else(|| perr(0, "missing gens line".into()))?;
    let group = Group::from_table(name, order, rows, labels)?;
    let mut gens = Vec::new();
    for tok in gens_text.split_whitespace() {
        let (index, name) = match tok.split_once(':') {
            Some((i, n)) if !n.is_empty() => (i, Some(n)),
            Some(_) => return Err(perr(gln, format!("empty generator name in {tok:?}"))),
            None => (tok, None),
        };
        let i: usize = index.parse().map_err(|_| perr(gln, format!("bad generator index {tok:?}")))?;
        if i >= order {
            return Err(perr(gln, format!("generator index {i} out of range")));
        }
        let e = Element::from_index(i);
        gens.push(Generator::new(name.unwrap_or(group.label(e)), e));
    }
    let gens = GeneratingSet::new(&group, gens)?;
    Ok((group, gens))
}

/// Serializes a group and generating set; [`parse_group_table`] reads it back.
pub fn write_group_table(group: &Group, gens: &GeneratingSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "# {}", group.name());
    let _ = writeln!(out, "order {}", group.order());
    let _ = writeln!(out, "labels {}", group.labels().join(" "));
    for g in group.elements() {
        let row: Vec<String> = group.elements().map(|h| group.mul(g, h).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    let idx: Vec<String> = gens
        .generators()
        .iter()
        .map(|g| match group.label(g.element) == g.name {
            true => g.element.to_string(),
            false => format!("{}:{}", g.element, g.name),
        })
        .collect();
    let _ = writeln!(out, "gens {}", idx.join(" "));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z3: &str = "relgame-table v1\n# cyclic\norder 3\n0 1 2\n1 2 0\n2 0 1\ngens 1\n";

    #[test]
    fn parses_z3() {
        let (g, gens) = parse_group_table("z3", Z3).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(gens.len(), 1);
        assert_eq!(g.label(Element(1)), "g1");
    }

    #[test]
    fn broken_associativity_names_triple() {
        // a commutative Latin square with identity 0 that is not a group
        let text = "relgame-table v1\norder 5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\ngens 1 2\n";
        let err = parse_group_table("bad", text).unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative(..)), "{err}");
        assert!(err.to_string().contains('*'));
    }

    #[test]
    fn non_generating_gens() {
        let text = "relgame-table v1\norder 4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\ngens 2\n";
        assert_eq!(
            parse_group_table("z4", text).unwrap_err(),
            GroupError::NotGenerating { reached: 2, order: 4 }
        );
    }

    #[test]
    fn parse_errors_carry_line() {
        let err = parse_group_table("x", "relgame-table v1\norder 2\n0 1\n1\ngens 1\n").unwrap_err();
        assert!(matches!(err, GroupError::Parse { line: 4, .. }), "{err}");
        assert!(parse_group_table("x", "nope\n").is_err());
    }

    #[test]
    fn labels_line_is_used() {
        let text = "relgame-table v1\norder 2\nlabels e t\n0 1\n1 0\ngens 1\n";
        let (g, gens) = parse_group_table("z2", text).unwrap();
        assert_eq!(g.label(Element(1)), "t");
        assert_eq!(gens.generators()[0].name, "t");
    }

    #[test]
    fn generator_names_survive_round_trip() {
        let (g, gens) = crate::families::build_group(&crate::families::GroupSpec::DicyclicTriangle(3)).unwrap();
        let text = write_group_table(&g, &gens);
        assert!(text.contains(":c"));
        let (g2, gens2) = parse_group_table("dic3", &text).unwrap();
        assert_eq!(g2.table(), g.table());
        assert_eq!(gens2.display(), gens.display());
        assert!(parse_group_table("z2", "relgame-table v1\norder 2\n0 1\n1 0\ngens 1:\n").is_err());
    }
}
