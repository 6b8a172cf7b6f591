//! Built-in group families.
//!
//! Each family is described by a multiplication rule on its normal form,
//! materialized into a [`Group`] table and then checked against its defining
//! relators.

use std::fmt;
use std::path::PathBuf;

use crate::error::GroupError;
use crate::group::{monomial, Element, GeneratingSet, Generator, Group};
use crate::table;

/// Family and parameters of a group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    ProductCyclic(usize, usize),
    Dihedral(usize),
    DihedralCoxeter(usize),
    Dicyclic(usize),
    DicyclicTriangle(usize),
    /// Alias for `Dicyclic(2)` with quaternion labels.
    Quaternion,
    /// `H ⋊ Z_2` with `H` a product of cyclic groups and the involution
    /// acting by inversion.
    GeneralizedDihedral(Vec<usize>),
    FromTable(PathBuf),
}

impl GroupSpec {
    /// Short display name, e.g. `D_5` or `Z_4xZ_3`.
    pub fn display_name(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("Z_{n}"),
            GroupSpec::ProductCyclic(n, m) => format!("Z_{n}xZ_{m}"),
            GroupSpec::Dihedral(n) => format!("D_{n}"),
            GroupSpec::DihedralCoxeter(n) => format!("D_{n}"),
            GroupSpec::Dicyclic(n) => format!("Dic_{n}"),
            GroupSpec::DicyclicTriangle(n) => format!("Dic_{n}"),
            GroupSpec::Quaternion => "Q_8".to_string(),
            GroupSpec::GeneralizedDihedral(f) => {
                let h: Vec<String> = f.iter().map(|k| format!("Z_{k}")).collect();
                format!("Dih({})", h.join("x"))
            }
            GroupSpec::FromTable(p) => format!("table:{}", p.display()),
        }
    }

    /// Order implied by the parameters, when known without building.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::ProductCyclic(n, m) => Some(n * m),
            GroupSpec::Dihedral(n) | GroupSpec::DihedralCoxeter(n) => Some(2 * n),
            GroupSpec::Dicyclic(n) | GroupSpec::DicyclicTriangle(n) => Some(4 * n),
            GroupSpec::Quaternion => Some(8),
            GroupSpec::GeneralizedDihedral(f) => Some(2 * f.iter().product::<usize>()),
            GroupSpec::FromTable(_) => None,
        }
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let bad = |family: &'static str, reason: &str| {
            Err(GroupError::InvalidParameters { family, reason: reason.to_string() })
        };
        match *self {
            GroupSpec::Cyclic(n) if n < 1 => bad("cyclic", "n must be at least 1"),
            GroupSpec::ProductCyclic(n, m) if n < 2 || m < 2 => {
                bad("product", "both factors must be at least 2")
            }
            GroupSpec::Dihedral(n) | GroupSpec::DihedralCoxeter(n) if n < 3 => {
                bad("dihedral", "n must be at least 3")
            }
            GroupSpec::Dicyclic(n) | GroupSpec::DicyclicTriangle(n) if n < 2 => {
                bad("dicyclic", "n must be at least 2")
            }
            GroupSpec::GeneralizedDihedral(ref f) => {
                if f.is_empty() || f.len() > GENDIH_NAMES.len() {
                    bad("gendih", "between 1 and 8 cyclic factors required")
                } else if f.iter().any(|&k| k < 2) {
                    bad("gendih", "every factor must be at least 2")
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }?;
        if let Some(order) = self.order() {
            if order > crate::group::MAX_GROUP_ORDER {
                return Err(GroupError::OrderTooLarge { order, max: crate::group::MAX_GROUP_ORDER });
            }
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name())
    }
}

const GENDIH_NAMES: [&str; 8] = ["a", "b", "c", "d", "f", "g", "h", "k"];

/// A word over generator indices, as `(generator, exponent)` syllables.
type Relator = (&'static str, Vec<(usize, i64)>);

/// Builds a group together with its canonical generating set.
pub fn build_group(spec: &GroupSpec) -> Result<(Group, GeneratingSet), GroupError> {
    spec.validate()?;
    let (group, gens, relators) = match spec {
        GroupSpec::Cyclic(n) => cyclic(*n)?,
        GroupSpec::ProductCyclic(n, m) => product(*n, *m)?,
        GroupSpec::Dihedral(n) => dihedral(*n)?,
        GroupSpec::DihedralCoxeter(n) => dihedral_coxeter(*n)?,
        GroupSpec::Dicyclic(n) => dicyclic(*n)?,
        GroupSpec::DicyclicTriangle(n) => dicyclic_triangle(*n)?,
        GroupSpec::Quaternion => quaternion()?,
        GroupSpec::GeneralizedDihedral(f) => generalized_dihedral(f)?,
        GroupSpec::FromTable(path) => return table::load_group_table(path),
    };
    check_relators(&group, &gens, &relators)?;
    let gens = GeneratingSet::new(&group, gens)?;
    Ok((group, gens))
}

fn check_relators(group: &Group, gens: &[Generator], relators: &[Relator]) -> Result<(), GroupError> {
    for (name, word) in relators {
        let syllables: Vec<(Element, i64)> = word.iter().map(|&(g, k)| (gens[g].element, k)).collect();
        let value = group.eval(&syllables);
        if value != Element::IDENTITY {
            return Err(GroupError::RelatorFailed {
                group: group.name().to_string(),
                relator: name.to_string(),
                value: group.label(value).to_string(),
            });
        }
    }
    Ok(())
}

type Built = (Group, Vec<Generator>, Vec<Relator>);

fn cyclic(n: usize) -> Result<Built, GroupError> {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let g = Group::from_rule(format!("Z_{n}"), n, |a, b| (a + b) % n, labels)?;
    let gen = Generator::new("1", Element::from_index(1 % n));
    Ok((g, vec![gen], vec![("1^n", vec![(0, n as i64)])]))
}

/// `a^i b^j` at index `i + n*j`.
fn product(n: usize, m: usize) -> Result<Built, GroupError> {
    let split = |x: usize| (x % n, x / n);
    let labels = (0..n * m)
        .map(|x| {
            let (i, j) = split(x);
            monomial(&[("a", i), ("b", j)])
        })
        .collect();
    let g = Group::from_rule(
        format!("Z_{n}xZ_{m}"),
        n * m,
        |x, y| {
            let ((i, j), (k, l)) = (split(x), split(y));
            (i + k) % n + n * ((j + l) % m)
        },
        labels,
    )?;
    let gens = vec![Generator::new("a", Element(1)), Generator::new("b", Element::from_index(n))];
    let rels = vec![
        ("a^n", vec![(0, n as i64)]),
        ("b^m", vec![(1, m as i64)]),
        ("aba^-1b^-1", vec![(0, 1), (1, 1), (0, -1), (1, -1)]),
    ];
    Ok((g, gens, rels))
}

/// `r^i s^j` at index `i + n*j`, with `s r = r^-1 s`.
fn dihedral_group(n: usize) -> Result<Group, GroupError> {
    let split = |x: usize| (x % n, x / n);
    let labels = (0..2 * n)
        .map(|x| {
            let (i, j) = split(x);
            monomial(&[("r", i), ("s", j)])
        })
        .collect();
    Group::from_rule(
        format!("D_{n}"),
        2 * n,
        |x, y| {
            let ((i, j), (k, l)) = (split(x), split(y));
            let rot = if j == 0 { i + k } else { i + n - k };
            rot % n + n * ((j + l) % 2)
        },
        labels,
    )
}

fn dihedral(n: usize) -> Result<Built, GroupError> {
    let g = dihedral_group(n)?;
    let gens = vec![Generator::new("r", Element(1)), Generator::new("s", Element::from_index(n))];
    let rels = vec![
        ("r^n", vec![(0, n as i64)]),
        ("s^2", vec![(1, 2)]),
        ("rsrs", vec![(0, 1), (1, 1), (0, 1), (1, 1)]),
    ];
    Ok((g, gens, rels))
}

/// Coxeter generators `s` and `t = rs`.
fn dihedral_coxeter(n: usize) -> Result<Built, GroupError> {
    let g = dihedral_group(n)?;
    let gens = vec![Generator::new("s", Element::from_index(n)), Generator::new("t", Element::from_index(n + 1))];
    let rels = vec![
        ("s^2", vec![(0, 2)]),
        ("t^2", vec![(1, 2)]),
        ("(st)^n", (0..n).flat_map(|_| [(0, 1), (1, 1)]).collect()),
    ];
    Ok((g, gens, rels))
}

/// `a^i x^j` at index `i + 2n*j`, following
/// `a^k x a^l = a^(k-l) x` and `a^k x a^l x = a^(k-l+n)`.
fn dicyclic_group(n: usize) -> Result<Group, GroupError> {
    let two_n = 2 * n;
    let split = |x: usize| (x % two_n, x / two_n);
    let labels = (0..4 * n)
        .map(|x| {
            let (i, j) = split(x);
            monomial(&[("a", i), ("x", j)])
        })
        .collect();
    Group::from_rule(
        format!("Dic_{n}"),
        4 * n,
        |p, q| {
            let ((k, j), (l, m)) = (split(p), split(q));
            match (j, m) {
                (0, _) => (k + l) % two_n + two_n * m,
                (1, 0) => (k + two_n - l) % two_n + two_n,
                _ => (k + two_n - l + n) % two_n,
            }
        },
        labels,
    )
}

fn dicyclic(n: usize) -> Result<Built, GroupError> {
    let g = dicyclic_group(n)?;
    let gens = vec![Generator::new("a", Element(1)), Generator::new("x", Element::from_index(2 * n))];
    let rels = vec![
        ("a^2n", vec![(0, 2 * n as i64)]),
        ("x^4", vec![(1, 4)]),
        ("x^-1axa", vec![(1, -1), (0, 1), (1, 1), (0, 1)]),
    ];
    Ok((g, gens, rels))
}

/// Same indexing as [`dicyclic`], generators `a`, `b = x^-1`, `c = a x^-1`,
/// and labels rewritten in the `a^i b^j` normal form (`a^i x = a^(i+n) b`).
fn dicyclic_triangle(n: usize) -> Result<Built, GroupError> {
    let mut g = dicyclic_group(n)?;
    let two_n = 2 * n;
    let x = Element::from_index(two_n);
    let a = Element(1);
    let b = g.inv(x);
    let c = g.mul(a, b);
    let labels = (0..4 * n)
        .map(|p| {
            let (i, j) = (p % two_n, p / two_n);
            if j == 0 {
                monomial(&[("a", i)])
            } else {
                monomial(&[("a", (i + n) % two_n), ("b", 1)])
            }
        })
        .collect();
    g.set_labels(labels);
    let gens = vec![Generator::new("a", a), Generator::new("b", b), Generator::new("c", c)];
    let ni = n as i64;
    // a^n = b^2 = c^2 = abc
    let rels = vec![
        ("a^n b^-2", vec![(0, ni), (1, -2)]),
        ("b^2 c^-2", vec![(1, 2), (2, -2)]),
        ("c^2 (abc)^-1", vec![(2, 2), (2, -1), (1, -1), (0, -1)]),
        ("a^2n", vec![(0, 2 * ni)]),
    ];
    Ok((g, gens, rels))
}

fn quaternion() -> Result<Built, GroupError> {
    let (mut g, _, rels) = dicyclic(2)?;
    g.set_name("Q_8");
    g.set_labels(["1", "i", "-1", "-i", "j", "k", "-j", "-k"].iter().map(|s| s.to_string()).collect());
    let gens = vec![Generator::new("i", Element(1)), Generator::new("j", Element(4))];
    Ok((g, gens, rels))
}

/// `(h, j)` with `h` in mixed radix over `factors`, index `h + |H|*j`.
fn generalized_dihedral(factors: &[usize]) -> Result<Built, GroupError> {
    let h_order: usize = factors.iter().product();
    let digits = |mut h: usize| -> Vec<usize> {
        factors
            .iter()
            .map(|&f| {
                let d = h % f;
                h /= f;
                d
            })
            .collect()
    };
    let undigits = |d: &[usize]| -> usize {
        d.iter().zip(factors).rev().fold(0, |acc, (&x, &f)| acc * f + x)
    };
    let labels = (0..2 * h_order)
        .map(|p| {
            let (h, j) = (p % h_order, p / h_order);
            let mut parts: Vec<(&str, usize)> = digits(h).into_iter().enumerate().map(|(i, d)| (GENDIH_NAMES[i], d)).collect();
            parts.push(("s", j));
            monomial(&parts)
        })
        .collect();
    let name = GroupSpec::GeneralizedDihedral(factors.to_vec()).display_name();
    let g = Group::from_rule(
        name,
        2 * h_order,
        |p, q| {
            let (h1, j1) = (digits(p % h_order), p / h_order);
            let (h2, j2) = (digits(q % h_order), q / h_order);
            let sum: Vec<usize> = h1
                .iter()
                .zip(&h2)
                .zip(factors)
                .map(|((&x, &y), &f)| if j1 == 0 { (x + y) % f } else { (x + f - y) % f })
                .collect();
            undigits(&sum) + h_order * ((j1 + j2) % 2)
        },
        labels,
    )?;
    let mut gens: Vec<Generator> = Vec::new();
    let mut stride = 1;
    for (i, &f) in factors.iter().enumerate() {
        gens.push(Generator::new(GENDIH_NAMES[i], Element::from_index(stride)));
        stride *= f;
    }
    let s = gens.len();
    gens.push(Generator::new("s", Element::from_index(h_order)));
    let mut rels: Vec<Relator> = vec![("s^2", vec![(s, 2)])];
    for (i, &f) in factors.iter().enumerate() {
        rels.push(("h^f", vec![(i, f as i64)]));
        rels.push(("shsh", vec![(s, 1), (i, 1), (s, 1), (i, 1)]));
        for j in 0..i {
            rels.push(("[h_i,h_j]", vec![(i, 1), (j, 1), (i, -1), (j, -1)]));
        }
    }
    Ok((g, gens, rels))
}

/// Which generating set to attach to a group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum GensSpec {
    #[default]
    Canonical,
    /// `S = G - {e}`, named by element labels.
    AllNonIdentity,
    /// `S = G - <g>` for the named canonical generator `g`.
    ComplementOf(String),
}

/// A group family with a choice of generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    pub spec: GroupSpec,
    pub gens: GensSpec,
}

impl Instance {
    pub fn canonical(spec: GroupSpec) -> Self {
        Instance { spec, gens: GensSpec::Canonical }
    }

    pub fn new(spec: GroupSpec, gens: GensSpec) -> Self {
        Instance { spec, gens }
    }

    pub fn build(&self) -> Result<(Group, GeneratingSet), GroupError> {
        let (group, canonical) = build_group(&self.spec)?;
        let gens = match &self.gens {
            GensSpec::Canonical => canonical,
            GensSpec::AllNonIdentity => {
                let gens = group.elements().skip(1).map(|g| Generator::new(group.label(g), g)).collect();
                GeneratingSet::new(&group, gens)?
            }
            GensSpec::ComplementOf(name) => {
                let (_, gen) = canonical.by_name(name).ok_or_else(|| GroupError::InvalidParameters {
                    family: "generating set",
                    reason: format!("no canonical generator named {name:?}"),
                })?;
                let sub = group.closure(&[gen.element]);
                let gens = group
                    .elements()
                    .filter(|g| !sub.contains(g))
                    .map(|g| Generator::new(group.label(g), g))
                    .collect();
                GeneratingSet::new(&group, gens)?
            }
        };
        Ok((group, gens))
    }

    /// Human-readable generating set description, e.g. `{r,s}` or `G-{e}`.
    pub fn gens_display(&self, gens: &GeneratingSet) -> String {
        match &self.gens {
            GensSpec::Canonical => gens.display(),
            GensSpec::AllNonIdentity => "G-{e}".to_string(),
            GensSpec::ComplementOf(g) => format!("G-<{g}>"),
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.gens {
            GensSpec::Canonical => write!(f, "{}", self.spec),
            GensSpec::AllNonIdentity => write!(f, "{}@all", self.spec),
            GensSpec::ComplementOf(g) => write!(f, "{}@co:{g}", self.spec),
        }
    }
}
