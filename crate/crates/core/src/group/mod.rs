//! The three groups acting regularly on the factorizations, behind one
//! table-driven interface.
//!
//! Every group is enumerated once in a fixed canonical order (identity at
//! index 0), its full Cayley table is computed from the exact element
//! arithmetic, and all later work is index arithmetic on [`Elem`].

mod dicyclic;
mod quaternion;
mod sl23;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use dicyclic::DicyclicElt;
pub use quaternion::{HalfSurd, QuatQR2};
pub use sl23::SL23Elt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupId {
    /// Binary octahedral group, order 48.
    #[serde(rename = "2O")]
    BinaryOctahedral,
    /// Dicyclic group, order 24.
    #[serde(rename = "Q24")]
    Dicyclic24,
    /// Special linear group over `Z/3`, order 24.
    #[serde(rename = "SL23")]
    SpecialLinear23,
}

impl GroupId {
    pub const ALL: [GroupId; 3] = [
        GroupId::BinaryOctahedral,
        GroupId::Dicyclic24,
        GroupId::SpecialLinear23,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GroupId::BinaryOctahedral => "2O",
            GroupId::Dicyclic24 => "Q24",
            GroupId::SpecialLinear23 => "SL23",
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2O" => Ok(GroupId::BinaryOctahedral),
            "Q24" => Ok(GroupId::Dicyclic24),
            "SL23" | "SL2(3)" => Ok(GroupId::SpecialLinear23),
            other => Err(Error::UnknownGroup(other.to_string())),
        }
    }
}

/// Text rendering of `√2` and `±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Notation {
    /// `1/r2(...)`, `+-`: the interchange format.
    #[default]
    Ascii,
    /// `1/√2(...)`, `±`.
    Unicode,
}

/// Index of an element in its group's canonical enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u8);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Elem {
        debug_assert!(i < ElemSet::CAPACITY);
        Elem(i as u8)
    }
}

/// A subset of a group of order at most 64, as a bitmask over element indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const CAPACITY: usize = 64;

    pub const fn empty() -> Self {
        ElemSet(0)
    }

    /// All elements of a group of the given order.
    pub fn full(order: usize) -> Self {
        if order == 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << order) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: Elem) -> bool {
        self.0 & (1 << e.0) != 0
    }

    pub fn insert(&mut self, e: Elem) -> bool {
        let fresh = !self.contains(e);
        self.0 |= 1 << e.0;
        fresh
    }

    pub fn remove(&mut self, e: Elem) {
        self.0 &= !(1 << e.0);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: ElemSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Least element, if any.
    pub fn first(self) -> Option<Elem> {
        (self.0 != 0).then(|| Elem(self.0.trailing_zeros() as u8))
    }

    /// Elements in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = Elem> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            Some(Elem(i as u8))
        })
    }
}

impl FromIterator<Elem> for ElemSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        let mut s = ElemSet::empty();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

/// The exact value behind an element index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementValue {
    Quaternion(QuatQR2),
    Dicyclic(DicyclicElt),
    Matrix(SL23Elt),
}

#[derive(Clone, Debug)]
enum Universe {
    Quaternion(Vec<QuatQR2>),
    Dicyclic(Vec<DicyclicElt>),
    Matrix(Vec<SL23Elt>),
}

impl Universe {
    fn len(&self) -> usize {
        match self {
            Universe::Quaternion(v) => v.len(),
            Universe::Dicyclic(v) => v.len(),
            Universe::Matrix(v) => v.len(),
        }
    }
}

/// A fully tabulated finite group.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    id: GroupId,
    universe: Universe,
    order: usize,
    /// Row-major Cayley table: `table[g * order + h] = g·h`.
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    involution: Option<Elem>,
}

/// Builds and self-checks one of the supported groups. The checked table is
/// kept for the life of the process.
pub fn build_group(id: GroupId) -> Result<FiniteGroup> {
    static BUILT: [OnceLock<FiniteGroup>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = &BUILT[id as usize];
    if let Some(g) = slot.get() {
        return Ok(g.clone());
    }
    let g = FiniteGroup::build(id)?;
    Ok(slot.get_or_init(|| g).clone())
}

impl FiniteGroup {
    pub fn build(id: GroupId) -> Result<Self> {
        let universe = match id {
            GroupId::BinaryOctahedral => Universe::Quaternion(QuatQR2::binary_octahedral()),
            GroupId::Dicyclic24 => Universe::Dicyclic(DicyclicElt::all()),
            GroupId::SpecialLinear23 => Universe::Matrix(SL23Elt::all()),
        };
        let order = universe.len();
        let defect = |detail: String| Error::Construction { group: id, detail };
        if order > ElemSet::CAPACITY {
            return Err(defect(format!("order {order} exceeds {}", ElemSet::CAPACITY)));
        }

        let mut table = Vec::with_capacity(order * order);
        for g in 0..order {
            for h in 0..order {
                let product = match &universe {
                    Universe::Quaternion(v) => v[g]
                        .checked_mul(&v[h])
                        .filter(QuatQR2::is_group_element)
                        .and_then(|p| v.iter().position(|x| *x == p)),
                    Universe::Dicyclic(v) => {
                        let p = v[g].mul(v[h]);
                        v.iter().position(|x| *x == p)
                    }
                    Universe::Matrix(v) => {
                        let p = v[g].mul(v[h]);
                        v.iter().position(|x| *x == p)
                    }
                };
                let p = product.ok_or_else(|| defect(format!("product of #{g} and #{h} escapes")))?;
                table.push(Elem(p as u8));
            }
        }

        let mut group = FiniteGroup {
            id,
            universe,
            order,
            table,
            inverses: Vec::new(),
            involution: None,
        };

        if !(0..order).all(|g| group.mul(Elem::IDENTITY, Elem(g as u8)) == Elem(g as u8)
            && group.mul(Elem(g as u8), Elem::IDENTITY) == Elem(g as u8))
        {
            return Err(defect("element 0 is not the identity".into()));
        }
        for g in group.elements() {
            let inv = group
                .elements()
                .find(|&h| group.mul(g, h) == Elem::IDENTITY)
                .ok_or_else(|| defect(format!("#{} has no inverse", g.0)))?;
            if group.mul(inv, g) != Elem::IDENTITY {
                return Err(defect(format!("#{} has only a one-sided inverse", g.0)));
            }
            group.inverses.push(inv);
        }
        // The presentation/conjugate inverse must agree with the table.
        for g in group.elements() {
            let closed_form = group.index_of(&match group.value(g) {
                ElementValue::Quaternion(q) => ElementValue::Quaternion(q.conjugate()),
                ElementValue::Dicyclic(d) => ElementValue::Dicyclic(d.inverse()),
                ElementValue::Matrix(m) => ElementValue::Matrix(m.inverse()),
            });
            if closed_form != Some(group.inverse(g)) {
                return Err(defect(format!("closed-form inverse of #{} disagrees", g.0)));
            }
        }
        for a in group.elements() {
            for b in group.elements() {
                let ab = group.mul(a, b);
                for c in group.elements() {
                    if group.mul(ab, c) != group.mul(a, group.mul(b, c)) {
                        return Err(defect(format!(
                            "associativity fails on #{}, #{}, #{}",
                            a.0, b.0, c.0
                        )));
                    }
                }
            }
        }
        let involutions: Vec<Elem> = group
            .elements()
            .filter(|&g| g != Elem::IDENTITY && group.mul(g, g) == Elem::IDENTITY)
            .collect();
        if let [only] = involutions.as_slice() {
            group.involution = Some(*only);
        }
        Ok(group)
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order).map(|i| Elem(i as u8))
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.order)
    }

    #[inline]
    pub fn mul(&self, g: Elem, h: Elem) -> Elem {
        self.table[g.index() * self.order + h.index()]
    }

    #[inline]
    pub fn inverse(&self, g: Elem) -> Elem {
        self.inverses[g.index()]
    }

    /// `x·y⁻¹`, the difference carried by the edge from `y` to `x`.
    #[inline]
    pub fn quotient(&self, x: Elem, y: Elem) -> Elem {
        self.mul(x, self.inverse(y))
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != Elem::IDENTITY {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn commutes(&self, g: Elem, h: Elem) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    /// The unique `x != 1` with `x² = 1`, verified by exhaustive scan.
    pub fn unique_involution(&self) -> Result<Elem> {
        self.involution.ok_or_else(|| {
            let count = self
                .elements()
                .filter(|&g| g != Elem::IDENTITY && self.mul(g, g) == Elem::IDENTITY)
                .count();
            Error::UnsupportedGroup(format!("{} has {count} involutions, expected exactly one", self.id))
        })
    }

    pub fn value(&self, g: Elem) -> ElementValue {
        match &self.universe {
            Universe::Quaternion(v) => ElementValue::Quaternion(v[g.index()]),
            Universe::Dicyclic(v) => ElementValue::Dicyclic(v[g.index()]),
            Universe::Matrix(v) => ElementValue::Matrix(v[g.index()]),
        }
    }

    pub fn index_of(&self, value: &ElementValue) -> Option<Elem> {
        let i = match (&self.universe, value) {
            (Universe::Quaternion(v), ElementValue::Quaternion(x)) => v.iter().position(|y| y == x),
            (Universe::Dicyclic(v), ElementValue::Dicyclic(x)) => v.iter().position(|y| y == x),
            (Universe::Matrix(v), ElementValue::Matrix(x)) => v.iter().position(|y| y == x),
            _ => None,
        }?;
        Some(Elem(i as u8))
    }

    /// Parses an element in this group's notation.
    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        let parse_err = |reason: String| Error::Parse {
            group: self.id,
            text: text.to_string(),
            reason,
        };
        let value = match self.id {
            GroupId::BinaryOctahedral => {
                ElementValue::Quaternion(QuatQR2::parse(text).map_err(parse_err)?)
            }
            GroupId::Dicyclic24 => ElementValue::Dicyclic(DicyclicElt::parse(text).map_err(parse_err)?),
            GroupId::SpecialLinear23 => ElementValue::Matrix(SL23Elt::parse(text).map_err(parse_err)?),
        };
        self.index_of(&value).ok_or_else(|| Error::NotAnElement {
            group: self.id,
            text: text.to_string(),
        })
    }

    pub fn format_element(&self, g: Elem, notation: Notation) -> String {
        match self.value(g) {
            ElementValue::Quaternion(q) => q.format(notation),
            ElementValue::Dicyclic(d) => d.to_string(),
            ElementValue::Matrix(m) => m.to_string(),
        }
    }

    /// ASCII canonical text of an element.
    pub fn name(&self, g: Elem) -> String {
        self.format_element(g, Notation::Ascii)
    }

    pub fn subgroup_closure(&self, generators: &[Elem]) -> Subgroup {
        Subgroup::generated(self, generators)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            group: self.id,
            elements: self.elements().collect(),
            generators: Vec::new(),
            set: self.all(),
        }
    }

    /// A small generating set: greedy, highest element order first.
    pub fn generating_set(&self) -> Vec<Elem> {
        let mut order: Vec<Elem> = self.elements().collect();
        order.sort_by_key(|&g| std::cmp::Reverse(self.element_order(g)));
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        for g in order {
            if !span.contains(g) {
                gens.push(g);
                span = self.subgroup_closure(&gens);
            }
        }
        gens
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::generated(self, &[])
    }
}

/// A subgroup, stored as its sorted element list. Equality ignores the
/// generators it was built from.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: GroupId,
    elements: Vec<Elem>,
    generators: Vec<Elem>,
    set: ElemSet,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.set == other.set
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.group.hash(state);
        self.set.hash(state);
    }
}

impl Subgroup {
    /// Smallest subgroup containing `generators`.
    pub fn generated(group: &FiniteGroup, generators: &[Elem]) -> Subgroup {
        let mut set = ElemSet::empty();
        set.insert(Elem::IDENTITY);
        let mut frontier = vec![Elem::IDENTITY];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = group.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        let sub = Subgroup {
            group: group.id(),
            elements: set.iter().collect(),
            generators: generators.to_vec(),
            set,
        };
        debug_assert!(sub.is_closed_in(group));
        sub
    }

    /// Wraps an element set, checking the subgroup axioms.
    pub fn from_set(group: &FiniteGroup, set: ElemSet) -> Option<Subgroup> {
        let sub = Subgroup {
            group: group.id(),
            elements: set.iter().collect(),
            generators: Vec::new(),
            set,
        };
        sub.is_closed_in(group).then_some(sub)
    }

    /// Closure under products and inverses, contains 1, Lagrange.
    pub fn is_closed_in(&self, group: &FiniteGroup) -> bool {
        self.group == group.id()
            && self.set.contains(Elem::IDENTITY)
            && group.order() % self.order() == 0
            && self.elements.iter().all(|&a| {
                self.set.contains(group.inverse(a))
                    && self.elements.iter().all(|&b| self.set.contains(group.mul(a, b)))
            })
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn set(&self) -> ElemSet {
        self.set
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.set.contains(g)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let set = self.set.intersection(other.set);
        Subgroup {
            group: self.group,
            elements: set.iter().collect(),
            generators: Vec::new(),
            set,
        }
    }

    /// Left-coset representatives `g` with `G = ⊔ g·S`, least element of each coset.
    pub fn left_transversal(&self, group: &FiniteGroup) -> Vec<Elem> {
        let mut seen = ElemSet::empty();
        let mut reps = Vec::new();
        for g in group.elements() {
            if seen.contains(g) {
                continue;
            }
            reps.push(g);
            for &s in &self.elements {
                seen.insert(group.mul(g, s));
            }
        }
        reps
    }

    /// Representatives of the right cosets `S·g`.
    pub fn right_transversal(&self, group: &FiniteGroup) -> Vec<Elem> {
        let mut seen = ElemSet::empty();
        let mut reps = Vec::new();
        for g in group.elements() {
            if seen.contains(g) {
                continue;
            }
            reps.push(g);
            for &s in &self.elements {
                seen.insert(group.mul(s, g));
            }
        }
        reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_all(g: &FiniteGroup, texts: &[&str]) -> Vec<Elem> {
        texts.iter().map(|t| g.parse_element(t).unwrap()).collect()
    }

    #[test]
    fn orders() {
        assert_eq!(build_group(GroupId::BinaryOctahedral).unwrap().order(), 48);
        assert_eq!(build_group(GroupId::Dicyclic24).unwrap().order(), 24);
        assert_eq!(build_group(GroupId::SpecialLinear23).unwrap().order(), 24);
    }

    #[test]
    fn product_i_j_is_k() {
        let g = build_group(GroupId::BinaryOctahedral).unwrap();
        let [i, j, k] = [g.parse_element("i").unwrap(), g.parse_element("j").unwrap(), g.parse_element("k").unwrap()];
        assert_eq!(g.mul(i, j), k);
        assert_eq!(g.mul(k, Elem::IDENTITY), k);
        assert_eq!(g.name(g.inverse(k)), "-k");
        assert_eq!(g.inverse(Elem::IDENTITY), Elem::IDENTITY);
    }

    #[test]
    fn dicyclic_products() {
        let g = build_group(GroupId::Dicyclic24).unwrap();
        let a6 = g.parse_element("a6").unwrap();
        assert_eq!(g.mul(a6, a6), Elem::IDENTITY);
        let a3 = g.parse_element("a3").unwrap();
        assert_eq!(g.name(g.inverse(a3)), "a9");
    }

    #[test]
    fn involutions() {
        let expected = [
            (GroupId::BinaryOctahedral, "-1"),
            (GroupId::Dicyclic24, "a6"),
            (GroupId::SpecialLinear23, "[[2,0],[0,2]]"),
        ];
        for (id, name) in expected {
            let g = build_group(id).unwrap();
            let iota = g.unique_involution().unwrap();
            assert_eq!(g.name(iota), name);
            assert!(g.elements().all(|x| g.commutes(x, iota)));
        }
    }

    #[test]
    fn solution_subgroups() {
        let g = build_group(GroupId::BinaryOctahedral).unwrap();
        let k = g.subgroup_closure(&parse_all(&g, &["k", "1/r2(j-k)"]));
        let l = g.subgroup_closure(&parse_all(&g, &["1/r2(j-k)", "1/2(-1-i+j+k)"]));
        assert_eq!(k.order(), 16);
        assert_eq!(l.order(), 12);

        let q = build_group(GroupId::Dicyclic24).unwrap();
        let h = q.subgroup_closure(&parse_all(&q, &["b"]));
        assert_eq!(
            h.elements().to_vec(),
            {
                let mut v = parse_all(&q, &["1", "b", "a6", "a6b"]);
                v.sort();
                v
            }
        );
        assert_eq!(q.subgroup_closure(&parse_all(&q, &["a2"])).order(), 6);
        let l = q.subgroup_closure(&parse_all(&q, &["a2b", "a3"]));
        let mut listed = parse_all(&q, &["1", "a3", "a6", "a9", "a2b", "a8b", "a5b", "a11b"]);
        listed.sort();
        assert_eq!(l.elements().to_vec(), listed);

        let s = build_group(GroupId::SpecialLinear23).unwrap();
        let h = s.subgroup_closure(&parse_all(&s, &["[[0,1],[2,1]]"]));
        let mut listed = parse_all(
            &s,
            &["[[1,0],[0,1]]", "[[0,1],[2,1]]", "[[2,1],[2,0]]", "[[2,0],[0,2]]", "[[0,2],[1,2]]", "[[1,2],[1,0]]"],
        );
        listed.sort();
        assert_eq!(h.elements().to_vec(), listed);
        let qsub = s.subgroup_closure(&parse_all(&s, &["[[1,1],[1,2]]", "[[0,2],[1,0]]"]));
        assert_eq!(qsub.order(), 8);
        // quaternion group: one involution, six elements of order 4
        let order4 = qsub.elements().iter().filter(|&&x| s.element_order(x) == 4).count();
        assert_eq!(order4, 6);
    }

    #[test]
    fn parse_errors_are_typed() {
        let g = build_group(GroupId::BinaryOctahedral).unwrap();
        assert!(matches!(g.parse_element("1+i"), Err(Error::NotAnElement { .. })));
        assert!(matches!(g.parse_element("q"), Err(Error::Parse { .. })));
        let s = build_group(GroupId::SpecialLinear23).unwrap();
        assert!(matches!(s.parse_element("[[1,0],[0,2]]"), Err(Error::NotAnElement { .. })));
    }

    #[test]
    fn transversals_partition() {
        let g = build_group(GroupId::Dicyclic24).unwrap();
        let l = g.subgroup_closure(&parse_all(&g, &["a2b", "a3"]));
        assert_eq!(l.left_transversal(&g).len(), 3);
        assert_eq!(l.right_transversal(&g).len(), 3);
    }

    #[test]
    fn generating_sets_generate() {
        for id in GroupId::ALL {
            let g = build_group(id).unwrap();
            let gens = g.generating_set();
            assert!(gens.len() <= 2, "{id}: {}", gens.len());
            assert_eq!(g.subgroup_closure(&gens).order(), g.order());
        }
    }

    #[test]
    fn elemset_ops() {
        let mut s = ElemSet::empty();
        assert!(s.insert(Elem::from_index(5)));
        assert!(!s.insert(Elem::from_index(5)));
        s.insert(Elem::from_index(1));
        assert_eq!(s.iter().map(Elem::index).collect::<Vec<_>>(), vec![1, 5]);
        assert_eq!(s.first(), Some(Elem::from_index(1)));
        assert_eq!(ElemSet::full(48).len(), 48);
        assert_eq!(ElemSet::full(64).len(), 64);
    }
}
