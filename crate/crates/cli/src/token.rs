//! Group tokens such as `dihedral:5`, `product:4x3` or `cyclic:5@all`.

use std::path::PathBuf;

use relgame::{GensSpec, GroupSpec, Instance};

const GRAMMAR: &str = "cyclic:N | product:NxM | dihedral:N[:coxeter] | dicyclic:N[:abc] | quaternion \
                       | gendih:F1,F2,... | table:PATH, optionally followed by @all or @co:<gen>";

fn num(s: &str, what: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("{what}: expected a positive integer, got {s:?}"))
}

fn split_gens(token: &str) -> Result<(&str, GensSpec), String> {
    match token.rsplit_once('@') {
        Some((base, "all")) => Ok((base, GensSpec::AllNonIdentity)),
        Some((base, rest)) if rest.starts_with("co:") => {
            let g = &rest[3..];
            if g.is_empty() {
                return Err("@co: needs a generator name".into());
            }
            Ok((base, GensSpec::ComplementOf(g.to_string())))
        }
        // an `@` inside a table path
        Some(_) if token.starts_with("table:") => Ok((token, GensSpec::Canonical)),
        Some((_, rest)) => Err(format!("unknown generating-set suffix @{rest}")),
        None => Ok((token, GensSpec::Canonical)),
    }
}

/// Parses a group token into an instance. Parameters are validated here so
/// that bad input fails before any group is built.
pub fn parse_group_token(token: &str) -> Result<Instance, String> {
    let (base, gens) = split_gens(token.trim())?;
    let (family, rest) = base.split_once(':').unwrap_or((base, ""));
    let spec = match family {
        "cyclic" => GroupSpec::Cyclic(num(rest, "cyclic")?),
        "product" => {
            let (n, m) = rest.split_once('x').ok_or("product: expected NxM")?;
            GroupSpec::ProductCyclic(num(n, "product")?, num(m, "product")?)
        }
        "dihedral" => match rest.split_once(':') {
            None => GroupSpec::Dihedral(num(rest, "dihedral")?),
            Some((n, "coxeter")) => GroupSpec::DihedralCoxeter(num(n, "dihedral")?),
            Some((_, v)) => return Err(format!("dihedral: unknown variant {v:?}")),
        },
        "dicyclic" => match rest.split_once(':') {
            None => GroupSpec::Dicyclic(num(rest, "dicyclic")?),
            Some((n, "abc")) => GroupSpec::DicyclicTriangle(num(n, "dicyclic")?),
            Some((_, v)) => return Err(format!("dicyclic: unknown variant {v:?}")),
        },
        "quaternion" if rest.is_empty() => GroupSpec::Quaternion,
        "gendih" => GroupSpec::GeneralizedDihedral(
            rest.split(',').map(|f| num(f, "gendih")).collect::<Result<_, _>>()?,
        ),
        "table" if !rest.is_empty() => GroupSpec::FromTable(PathBuf::from(rest)),
        _ => return Err(format!("unrecognized group token {token:?}; expected {GRAMMAR}")),
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(Instance::new(spec, gens))
}
