//! Finite groups as dense multiplication tables.
//!
//! Elements are indices `0..order` with the identity fixed at index 0. Every
//! element carries a display label (its normal form for the built-in
//! families).

use std::collections::HashSet;
use std::fmt;

use crate::error::GroupError;

/// Largest group order accepted by the table constructors.
pub const MAX_GROUP_ORDER: usize = 512;

/// A group element, stored as its index in the multiplication table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Element(pub u16);

impl Element {
    pub const IDENTITY: Element = Element(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        Element(i as u16)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite group with materialized multiplication and inverse tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    name: String,
    order: usize,
    mul: Vec<Element>,
    inv: Vec<Element>,
    labels: Vec<String>,
}

impl Group {
    /// Builds a group from a row-major table without checking the group
    /// axioms. Only the shape is validated: the table is square, every entry
    /// is in range and labels are distinct. Elements without a right inverse
    /// get the identity as a placeholder, which [`check_group_axioms`]
    /// reports.
    pub fn from_raw_table(
        name: impl Into<String>,
        order: usize,
        mul: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::EmptyGroup);
        }
        if order > MAX_GROUP_ORDER {
            return Err(GroupError::OrderTooLarge { order, max: MAX_GROUP_ORDER });
        }
        if mul.len() != order * order {
            return Err(GroupError::TableShape { expected: order * order, found: mul.len() });
        }
        if let Some(&bad) = mul.iter().find(|&&x| x >= order) {
            return Err(GroupError::EntryOutOfRange { entry: bad, order });
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != order {
                    return Err(GroupError::LabelCount { expected: order, found: l.len() });
                }
                l
            }
            None => (0..order).map(|i| format!("g{i}")).collect(),
        };
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(GroupError::DuplicateLabel(l.clone()));
            }
        }
        let mul: Vec<Element> = mul.into_iter().map(Element::from_index).collect();
        let inv = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| mul[g * order + h] == Element::IDENTITY)
                    .map(Element::from_index)
                    .unwrap_or(Element::IDENTITY)
            })
            .collect();
        Ok(Group { name: name.into(), order, mul, inv, labels })
    }

    /// Like [`Group::from_raw_table`] but rejects tables that fail any
    /// group axiom, naming the first violation.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        mul: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let g = Self::from_raw_table(name, order, mul, labels)?;
        check_group_axioms(&g).into_result()?;
        Ok(g)
    }

    /// Materializes a table from a multiplication rule on indices.
    pub(crate) fn from_rule(
        name: impl Into<String>,
        order: usize,
        rule: impl Fn(usize, usize) -> usize,
        labels: Vec<String>,
    ) -> Result<Self, GroupError> {
        let mut mul = Vec::with_capacity(order * order);
        for g in 0..order {
            for h in 0..order {
                mul.push(rule(g, h));
            }
        }
        Self::from_table(name, order, mul, Some(labels))
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self::from_raw_table("1", 1, vec![0], Some(vec!["e".to_string()]))
            .expect("trivial table is well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub(crate) fn set_labels(&mut self, labels: Vec<String>) {
        debug_assert_eq!(labels.len(), self.order);
        self.labels = labels;
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Element {
        Element::IDENTITY
    }

    #[inline]
    pub fn mul(&self, g: Element, h: Element) -> Element {
        self.mul[g.index() * self.order + h.index()]
    }

    #[inline]
    pub fn inv(&self, g: Element) -> Element {
        self.inv[g.index()]
    }

    pub fn label(&self, g: Element) -> &str {
        &self.labels[g.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label).map(Element::from_index)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(Element::from_index)
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: Element, k: i64) -> Element {
        let base = if k < 0 { self.inv(g) } else { g };
        (0..k.unsigned_abs()).fold(Element::IDENTITY, |acc, _| self.mul(acc, base))
    }

    /// Multiplicative order of `g`.
    pub fn element_order(&self, g: Element) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != Element::IDENTITY {
            x = self.mul(x, g);
            k += 1;
            if k > self.order {
                // only reachable on tables that fail the axioms
                break;
            }
        }
        k
    }

    /// Evaluates a word given as `(element, exponent)` syllables.
    pub fn eval(&self, word: &[(Element, i64)]) -> Element {
        word.iter()
            .fold(Element::IDENTITY, |acc, &(g, k)| self.mul(acc, self.pow(g, k)))
    }

    /// Subgroup generated by `gens`, as a sorted list of elements.
    pub fn closure(&self, gens: &[Element]) -> Vec<Element> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = vec![Element::IDENTITY];
        while let Some(g) = queue.pop() {
            for &s in gens {
                for h in [self.mul(g, s), self.mul(g, self.inv(s))] {
                    if !seen[h.index()] {
                        seen[h.index()] = true;
                        queue.push(h);
                    }
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| Element::from_index(i))
            .collect()
    }

    /// Row-major multiplication table as plain indices.
    pub fn table(&self) -> Vec<usize> {
        self.mul.iter().map(|e| e.index()).collect()
    }
}

/// Outcome of a full axiom scan.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    /// First `(row or column, index)` where index 0 does not act as identity.
    pub identity_failure: Option<Element>,
    /// First element with no two-sided inverse.
    pub inverse_failure: Option<Element>,
    /// First triple `(a, b, c)` with `(ab)c != a(bc)`.
    pub associativity_failure: Option<(Element, Element, Element)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.identity_failure.is_none()
            && self.inverse_failure.is_none()
            && self.associativity_failure.is_none()
    }

    pub fn into_result(self) -> Result<(), GroupError> {
        if let Some(g) = self.identity_failure {
            return Err(GroupError::Identity(g.index()));
        }
        if let Some(g) = self.inverse_failure {
            return Err(GroupError::NoInverse(g.index()));
        }
        if let Some((a, b, c)) = self.associativity_failure {
            return Err(GroupError::NotAssociative(a.index(), b.index(), c.index()));
        }
        Ok(())
    }
}

/// Scans identity, inverse and associativity laws over the whole table.
/// Associativity is checked on all `order³` triples.
pub fn check_group_axioms(group: &Group) -> AxiomReport {
    let mut report = AxiomReport::default();
    let e = Element::IDENTITY;
    report.identity_failure = group
        .elements()
        .find(|&g| group.mul(e, g) != g || group.mul(g, e) != g);
    report.inverse_failure = group.elements().find(|&g| {
        let h = group.inv(g);
        group.mul(g, h) != e || group.mul(h, g) != e
    });
    'outer: for a in group.elements() {
        for b in group.elements() {
            let ab = group.mul(a, b);
            for c in group.elements() {
                if group.mul(ab, c) != group.mul(a, group.mul(b, c)) {
                    report.associativity_failure = Some((a, b, c));
                    break 'outer;
                }
            }
        }
    }
    report
}

/// A named generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub element: Element,
}

impl Generator {
    pub fn new(name: impl Into<String>, element: Element) -> Self {
        Generator { name: name.into(), element }
    }
}

/// An ordered, validated generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    generators: Vec<Generator>,
}

impl GeneratingSet {
    /// Validates that no generator is the identity, that names and elements
    /// are unique, and that the generators reach every element.
    pub fn new(group: &Group, generators: Vec<Generator>) -> Result<Self, GroupError> {
        let mut names = HashSet::new();
        let mut elems = HashSet::new();
        for g in &generators {
            if g.element.index() >= group.order() {
                return Err(GroupError::EntryOutOfRange { entry: g.element.index(), order: group.order() });
            }
            if g.element == Element::IDENTITY {
                return Err(GroupError::IdentityGenerator(g.name.clone()));
            }
            if g.name.is_empty() || g.name.contains(char::is_whitespace) || g.name.ends_with("^-1") {
                return Err(GroupError::BadGeneratorName(g.name.clone()));
            }
            if !names.insert(g.name.clone()) {
                return Err(GroupError::DuplicateGenerator(g.name.clone()));
            }
            if !elems.insert(g.element) {
                return Err(GroupError::DuplicateGenerator(g.name.clone()));
            }
        }
        let elements: Vec<Element> = generators.iter().map(|g| g.element).collect();
        let reached = group.closure(&elements).len();
        if reached != group.order() {
            return Err(GroupError::NotGenerating { reached, order: group.order() });
        }
        Ok(GeneratingSet { generators })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn by_name(&self, name: &str) -> Option<(usize, &Generator)> {
        self.generators.iter().enumerate().find(|(_, g)| g.name == name)
    }

    /// `{r,s}`-style rendering used in reports.
    pub fn display(&self) -> String {
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Formats a normal form such as `r^2s` from `(symbol, exponent)` pairs;
/// the empty product renders as `e`.
pub(crate) fn monomial(parts: &[(&str, usize)]) -> String {
    let mut out = String::new();
    for &(sym, k) in parts {
        match k {
            0 => {}
            1 => out.push_str(sym),
            _ => {
                out.push_str(sym);
                out.push('^');
                out.push_str(&k.to_string());
            }
        }
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}
