//! Cayley graphs, their letter alphabets and shape predicates.

use std::fmt::Write as _;

use crate::error::GraphError;
use crate::group::{Element, GeneratingSet, Group};

/// Largest order accepted by [`undirected_isomorphic`].
pub const ISOMORPHISM_ORDER_LIMIT: usize = 16;

/// Position of a letter in the alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetterId(pub u8);

impl LetterId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// One move symbol: a generator or the inverse of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub id: LetterId,
    /// Index of the generator in the generating set.
    pub generator: usize,
    pub sign: Sign,
    pub element: Element,
    /// `r` or `r^-1`.
    pub name: String,
}

/// The Cayley graph of `(G, S)` with one arc per `(element, letter)`.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    group: Group,
    gens: GeneratingSet,
    letters: Vec<Letter>,
    inverse: Vec<LetterId>,
    succ: Vec<Element>,
}

impl CayleyGraph {
    /// Builds the alphabet and adjacency.
    ///
    /// The alphabet is the set `S ∪ S⁻¹` of group elements: each generator
    /// is followed by its inverse unless that inverse is the generator
    /// itself (an involution) or already another generator, in which case
    /// it is listed once under the generator's own name.
    pub fn new(group: Group, gens: GeneratingSet) -> Self {
        let gen_elements: Vec<Element> = gens.generators().iter().map(|g| g.element).collect();
        let mut letters: Vec<Letter> = Vec::new();
        let present = |letters: &[Letter], e: Element| letters.iter().any(|l| l.element == e);
        for (gi, gen) in gens.generators().iter().enumerate() {
            if !present(&letters, gen.element) {
                letters.push(Letter {
                    id: LetterId(letters.len() as u8),
                    generator: gi,
                    sign: Sign::Plus,
                    element: gen.element,
                    name: gen.name.clone(),
                });
            }
            let inv = group.inv(gen.element);
            if inv != gen.element && !gen_elements.contains(&inv) && !present(&letters, inv) {
                letters.push(Letter {
                    id: LetterId(letters.len() as u8),
                    generator: gi,
                    sign: Sign::Minus,
                    element: inv,
                    name: format!("{}^-1", gen.name),
                });
            }
        }
        assert!(letters.len() < u8::MAX as usize, "alphabet too large");
        let inverse = letters
            .iter()
            .map(|l| {
                let target = group.inv(l.element);
                letters
                    .iter()
                    .find(|m| m.element == target)
                    .map(|m| m.id)
                    .expect("alphabet is closed under inverses")
            })
            .collect();
        let mut succ = Vec::with_capacity(group.order() * letters.len());
        for g in group.elements() {
            for l in &letters {
                succ.push(group.mul(g, l.element));
            }
        }
        CayleyGraph { group, gens, letters, inverse, succ }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn gens(&self) -> &GeneratingSet {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.letters
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn letter(&self, id: LetterId) -> &Letter {
        &self.letters[id.index()]
    }

    #[inline]
    pub fn inverse(&self, id: LetterId) -> LetterId {
        self.inverse[id.index()]
    }

    /// `g · ℓ`.
    #[inline]
    pub fn step(&self, g: Element, id: LetterId) -> Element {
        self.succ[g.index() * self.letters.len() + id.index()]
    }

    /// Successors of `g` in alphabet order.
    pub fn successors(&self, g: Element) -> &[Element] {
        let k = self.letters.len();
        &self.succ[g.index() * k..(g.index() + 1) * k]
    }

    pub fn letter_ids(&self) -> impl Iterator<Item = LetterId> + '_ {
        (0..self.letters.len()).map(|i| LetterId(i as u8))
    }

    /// Resolves `r`, `r^-1` or any name whose element is in the alphabet.
    /// Involution letters reject the `^-1` form.
    pub fn parse_letter(&self, token: &str) -> Option<LetterId> {
        let token = token.trim();
        if let Some(l) = self.letters.iter().find(|l| l.name == token) {
            return Some(l.id);
        }
        let (base, inverted) = match token.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (token, false),
        };
        let (_, gen) = self.gens.by_name(base)?;
        let element = if inverted {
            if self.group.inv(gen.element) == gen.element {
                return None;
            }
            self.group.inv(gen.element)
        } else {
            gen.element
        };
        self.letters.iter().find(|l| l.element == element).map(|l| l.id)
    }

    /// Edge multiplicities `m[u][v]` = number of letters taking `u` to `v`.
    pub fn multiplicities(&self) -> Vec<Vec<u8>> {
        let n = self.order();
        let mut m = vec![vec![0u8; n]; n];
        for g in self.group.elements() {
            for &h in self.successors(g) {
                m[g.index()][h.index()] += 1;
            }
        }
        m
    }

    fn simple_adjacency(&self) -> Vec<Vec<bool>> {
        self.multiplicities()
            .into_iter()
            .map(|row| row.into_iter().map(|c| c > 0).collect())
            .collect()
    }
}

/// Checks whether the simple undirected reduction is complete bipartite and
/// returns the two parts (the part containing the identity first).
pub fn complete_bipartition(graph: &CayleyGraph) -> Option<(Vec<Element>, Vec<Element>)> {
    let n = graph.order();
    if n < 2 {
        return None;
    }
    let adj = graph.simple_adjacency();
    let mut color = vec![None; n];
    color[0] = Some(false);
    let mut stack = vec![0usize];
    while let Some(u) = stack.pop() {
        let cu = color[u].expect("colored before push");
        for v in 0..n {
            if !adj[u][v] {
                continue;
            }
            match color[v] {
                None => {
                    color[v] = Some(!cu);
                    stack.push(v);
                }
                Some(cv) if cv == cu => return None,
                _ => {}
            }
        }
    }
    let part = |c: bool| -> Vec<Element> {
        (0..n).filter(|&i| color[i] == Some(c)).map(Element::from_index).collect()
    };
    let (a, b) = (part(false), part(true));
    if a.len() + b.len() != n || b.is_empty() {
        return None;
    }
    let complete = a.iter().all(|u| b.iter().all(|v| adj[u.index()][v.index()]));
    complete.then_some((a, b))
}

pub fn is_complete_bipartite(graph: &CayleyGraph) -> bool {
    complete_bipartition(graph).is_some()
}

/// Every pair of distinct vertices is adjacent.
pub fn is_complete(graph: &CayleyGraph) -> bool {
    let adj = graph.simple_adjacency();
    let n = graph.order();
    (0..n).all(|u| (0..n).all(|v| u == v || adj[u][v]))
}

/// Exhaustive isomorphism test for the undirected multigraphs (edge
/// multiplicities respected).
///
/// Cayley graphs are vertex-transitive under left multiplication, so the
/// identity of the first graph is mapped to the identity of the second
/// without loss of generality; everything else is a full backtracking
/// search in BFS order.
pub fn undirected_isomorphic(a: &CayleyGraph, b: &CayleyGraph) -> Result<bool, GraphError> {
    for g in [a, b] {
        if g.order() > ISOMORPHISM_ORDER_LIMIT {
            return Err(GraphError::OrderLimit { order: g.order(), max: ISOMORPHISM_ORDER_LIMIT });
        }
    }
    let n = a.order();
    if n != b.order() {
        return Ok(false);
    }
    let ma = a.multiplicities();
    let mb = b.multiplicities();
    let profile = |m: &Vec<Vec<u8>>| {
        let mut rows: Vec<Vec<u8>> = m
            .iter()
            .map(|r| {
                let mut r: Vec<u8> = r.iter().copied().filter(|&c| c > 0).collect();
                r.sort_unstable();
                r
            })
            .collect();
        rows.sort();
        rows
    };
    if profile(&ma) != profile(&mb) {
        return Ok(false);
    }

    // BFS order of A with each vertex's first-seen parent
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for v in 0..n {
            if ma[u][v] > 0 && !seen[v] {
                seen[v] = true;
                parent[v] = u;
                order.push(v);
            }
        }
    }
    if order.len() != n {
        return Ok(false);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    Ok(extend(1, &order, &parent, &ma, &mb, &mut map, &mut used))
}

fn extend(
    depth: usize,
    order: &[usize],
    parent: &[usize],
    ma: &[Vec<u8>],
    mb: &[Vec<u8>],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let anchor = map[parent[v]];
    for cand in 0..mb.len() {
        if used[cand] || mb[anchor][cand] == 0 {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| ma[v][w] == mb[cand][map[w]] && ma[w][v] == mb[map[w]][cand]);
        if !consistent {
            continue;
        }
        map[v] = cand;
        used[cand] = true;
        if extend(depth + 1, order, parent, ma, mb, map, used) {
            return true;
        }
        used[cand] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Graphviz rendering. One edge line per generator and vertex; involution
/// edges are emitted once, from the lower-indexed endpoint.
pub fn export_dot(graph: &CayleyGraph) -> String {
    let group = graph.group();
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", group.name());
    for g in group.elements() {
        let _ = writeln!(out, "  {} [label=\"{}\"];", g, group.label(g));
    }
    for gen in graph.gens().generators() {
        let involution = group.mul(gen.element, gen.element) == Element::IDENTITY;
        for g in group.elements() {
            let h = group.mul(g, gen.element);
            if involution && g.index() >= h.index() {
                continue;
            }
            let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", g, h, gen.name);
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_group, GensSpec, GroupSpec, Instance};

    fn graph(spec: GroupSpec) -> CayleyGraph {
        let (g, s) = build_group(&spec).unwrap();
        CayleyGraph::new(g, s)
    }

    fn graph_with(spec: GroupSpec, gens: GensSpec) -> CayleyGraph {
        let (g, s) = Instance::new(spec, gens).build().unwrap();
        CayleyGraph::new(g, s)
    }

    fn names(g: &CayleyGraph) -> Vec<&str> {
        g.alphabet().iter().map(|l| l.name.as_str()).collect()
    }

    #[test]
    fn alphabets() {
        assert_eq!(names(&graph(GroupSpec::Dihedral(5))), ["r", "r^-1", "s"]);
        assert_eq!(names(&graph(GroupSpec::Cyclic(6))), ["1", "1^-1"]);
        assert_eq!(graph(GroupSpec::DicyclicTriangle(3)).degree(), 6);
        // S closed under inverses: one letter per element
        assert_eq!(names(&graph_with(GroupSpec::Cyclic(4), GensSpec::AllNonIdentity)), ["1", "2", "3"]);
    }

    #[test]
    fn inverse_is_involution_and_steps_undo() {
        for spec in [GroupSpec::Dihedral(4), GroupSpec::Dicyclic(3), GroupSpec::ProductCyclic(3, 2)] {
            let g = graph(spec);
            for l in g.letter_ids() {
                assert_eq!(g.inverse(g.inverse(l)), l);
                for v in g.group().elements() {
                    assert_eq!(g.step(g.step(v, l), g.inverse(l)), v);
                }
            }
        }
    }

    #[test]
    fn parse_letters() {
        let g = graph(GroupSpec::Dihedral(5));
        assert_eq!(g.parse_letter("r^-1"), Some(LetterId(1)));
        assert_eq!(g.parse_letter("s"), Some(LetterId(2)));
        assert_eq!(g.parse_letter("s^-1"), None);
        assert_eq!(g.parse_letter("q"), None);
    }

    #[test]
    fn q8_is_complete_bipartite() {
        let g = graph(GroupSpec::Quaternion);
        let (a, b) = complete_bipartition(&g).unwrap();
        let labels = |p: &[Element]| {
            let mut v: Vec<&str> = p.iter().map(|&e| g.group().label(e)).collect();
            v.sort();
            v
        };
        assert_eq!(labels(&a), ["-1", "-k", "1", "k"]);
        assert_eq!(labels(&b), ["-i", "-j", "i", "j"]);
    }

    #[test]
    fn bipartite_shapes() {
        assert!(!is_complete_bipartite(&graph(GroupSpec::Cyclic(5))));
        assert!(is_complete_bipartite(&graph(GroupSpec::Cyclic(4))));
        assert!(is_complete_bipartite(&graph_with(GroupSpec::Dihedral(4), GensSpec::ComplementOf("r".into()))));
    }

    #[test]
    fn complete_shapes() {
        assert!(is_complete(&graph_with(GroupSpec::Cyclic(4), GensSpec::AllNonIdentity)));
        assert!(is_complete(&graph_with(GroupSpec::Dihedral(3), GensSpec::AllNonIdentity)));
        assert!(!is_complete(&graph(GroupSpec::Dihedral(4))));
    }

    #[test]
    fn isomorphisms() {
        let cox = graph(GroupSpec::DihedralCoxeter(4));
        let z8 = graph(GroupSpec::Cyclic(8));
        assert!(undirected_isomorphic(&cox, &z8).unwrap());
        for n in 3..=5 {
            let d = graph(GroupSpec::Dihedral(n));
            let p = graph(GroupSpec::ProductCyclic(n, 2));
            assert!(undirected_isomorphic(&d, &p).unwrap(), "n={n}");
            assert!(undirected_isomorphic(&p, &d).unwrap());
        }
        let z6 = graph(GroupSpec::Cyclic(6));
        let (g, _) = build_group(&GroupSpec::Cyclic(6)).unwrap();
        let s = crate::group::GeneratingSet::new(
            &g,
            vec![
                crate::group::Generator::new("1", Element(1)),
                crate::group::Generator::new("2", Element(2)),
            ],
        )
        .unwrap();
        assert!(!undirected_isomorphic(&z6, &CayleyGraph::new(g, s)).unwrap());
        // D_4 {r,s} is the cube, Z_8 {1} is an octagon
        assert!(!undirected_isomorphic(&graph(GroupSpec::Dihedral(4)), &z8).unwrap());
        // Q8 {i,j} is K_{4,4} while D_4 {r,s} is 3-regular
        assert!(!undirected_isomorphic(&graph(GroupSpec::Quaternion), &graph(GroupSpec::Dihedral(4))).unwrap());
    }

    #[test]
    fn isomorphism_order_guard() {
        let big = graph(GroupSpec::Dihedral(9));
        assert!(undirected_isomorphic(&big, &big).is_err());
    }

    #[test]
    fn dot_counts() {
        let count = |g: &CayleyGraph| export_dot(g).lines().filter(|l| l.contains("--")).count();
        assert_eq!(count(&graph(GroupSpec::Cyclic(3))), 3);
        assert_eq!(count(&graph(GroupSpec::Dihedral(3))), 9);
        assert_eq!(count(&graph(GroupSpec::Quaternion)), 16);
        assert_eq!(count(&graph(GroupSpec::Dihedral(5))), 15);
    }

    #[test]
    fn dot_exact_z3() {
        let dot = export_dot(&graph(GroupSpec::Cyclic(3)));
        let expected = "graph \"Z_3\" {\n  0 [label=\"0\"];\n  1 [label=\"1\"];\n  2 [label=\"2\"];\n  0 -- 1 [label=\"1\"];\n  1 -- 2 [label=\"1\"];\n  2 -- 0 [label=\"1\"];\n}\n";
        assert_eq!(dot, expected);
    }
}
