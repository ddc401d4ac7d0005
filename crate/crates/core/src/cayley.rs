//! Cayley graphs `Cay[G:S]` with edges `{g, s·g}`.
//!
//! Right translations `g ↦ g·h` are automorphisms of every such graph, which
//! is what makes base-cycle orbits under right translation decompose them.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::{Elem, ElemSet, FiniteGroup, GroupId, Notation};

/// An identity-free, inverse-closed subset of a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    group: GroupId,
    set: ElemSet,
}

impl ConnectionSet {
    /// Validates `elements` as a connection set.
    pub fn new(group: &FiniteGroup, elements: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let set: ElemSet = elements.into_iter().collect();
        if set.contains(Elem::IDENTITY) {
            return Err(Error::InvalidConnectionSet("contains the identity".into()));
        }
        if let Some(s) = set.iter().find(|&s| !set.contains(group.inverse(s))) {
            return Err(Error::InvalidConnectionSet(format!(
                "{} is present but its inverse {} is not",
                group.name(s),
                group.name(group.inverse(s))
            )));
        }
        Ok(ConnectionSet { group: group.id(), set })
    }

    /// `{elements}^{±1}`: closes under inversion first.
    pub fn symmetric_closure(
        group: &FiniteGroup,
        elements: impl IntoIterator<Item = Elem>,
    ) -> Result<Self> {
        let base: ElemSet = elements.into_iter().collect();
        let closed = base.iter().fold(base, |mut acc, s| {
            acc.insert(group.inverse(s));
            acc
        });
        Self::new(group, closed.iter())
    }

    pub fn empty(group: &FiniteGroup) -> Self {
        ConnectionSet {
            group: group.id(),
            set: ElemSet::empty(),
        }
    }

    /// `G ∖ {1}`: the complete graph.
    pub fn complete(group: &FiniteGroup) -> Self {
        let mut set = group.all();
        set.remove(Elem::IDENTITY);
        ConnectionSet { group: group.id(), set }
    }

    /// `G ∖ {1, ι}`: the cocktail party graph `K_v - I`.
    pub fn cocktail_party(group: &FiniteGroup) -> Result<Self> {
        let mut set = Self::complete(group).set;
        set.remove(group.unique_involution()?);
        Ok(ConnectionSet { group: group.id(), set })
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn set(&self) -> ElemSet {
        self.set
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.set.contains(g)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> {
        self.set.iter()
    }

    /// One element from each `{s, s⁻¹}` pair (the smaller index).
    pub fn representatives(&self, group: &FiniteGroup) -> Vec<Elem> {
        self.set
            .iter()
            .filter(|&s| s <= group.inverse(s))
            .collect()
    }

    /// `{r1, r2, ...}^{±1}` over the pair representatives.
    pub fn format(&self, group: &FiniteGroup, notation: Notation) -> String {
        let reps: Vec<String> = self
            .representatives(group)
            .into_iter()
            .map(|s| group.format_element(s, notation))
            .collect();
        let exponent = match notation {
            Notation::Ascii => "+-1",
            Notation::Unicode => "±1",
        };
        format!("{{{}}}^{{{exponent}}}", reps.join(", "))
    }
}

/// An undirected edge between two distinct vertices, stored with the
/// smaller index first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(Elem, Elem);

impl Edge {
    pub fn new(a: Elem, b: Elem) -> Edge {
        debug_assert_ne!(a, b);
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn ends(self) -> (Elem, Elem) {
        (self.0, self.1)
    }

    /// Position in the strict upper triangle of an `order x order` matrix.
    pub fn slot(self, order: usize) -> usize {
        self.0.index() * order + self.1.index()
    }
}

#[derive(Clone, Debug)]
pub struct CayleyGraph {
    group: GroupId,
    order: usize,
    connection: ConnectionSet,
    edges: Vec<Edge>,
}

/// `Cay[G:S]`, edges `{g, s·g}` for all `g ∈ G`, `s ∈ S`.
pub fn cayley_graph(group: &FiniteGroup, connection: &ConnectionSet) -> Result<CayleyGraph> {
    // revalidate: a ConnectionSet built for another group would be meaningless
    let connection = ConnectionSet::new(group, connection.iter())?;
    let mut edges: Vec<Edge> = group
        .elements()
        .flat_map(|g| connection.iter().map(move |s| (g, s)))
        .map(|(g, s)| Edge::new(g, group.mul(s, g)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Ok(CayleyGraph {
        group: group.id(),
        order: group.order(),
        connection,
        edges,
    })
}

/// The perfect matching `Cay[G:{ι}]` removed from `K_v`.
pub fn one_factor(group: &FiniteGroup) -> Result<CayleyGraph> {
    let iota = group.unique_involution()?;
    cayley_graph(group, &ConnectionSet::new(group, [iota])?)
}

impl CayleyGraph {
    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn connection(&self) -> &ConnectionSet {
        &self.connection
    }

    /// Sorted, deduplicated.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degree(&self, v: Elem) -> usize {
        self.edges
            .iter()
            .filter(|e| e.0 == v || e.1 == v)
            .count()
    }

    /// Adjacency listing, one `vertex: neighbour neighbour ...` line per vertex.
    pub fn adjacency_text(&self, group: &FiniteGroup, notation: Notation) -> String {
        let mut adjacency = vec![Vec::new(); self.order];
        for e in &self.edges {
            adjacency[e.0.index()].push(e.1);
            adjacency[e.1.index()].push(e.0);
        }
        let mut out = String::new();
        for (v, neighbours) in adjacency.iter_mut().enumerate() {
            neighbours.sort_unstable();
            let names: Vec<String> = neighbours
                .iter()
                .map(|&n| group.format_element(n, notation))
                .collect();
            let _ = writeln!(
                out,
                "{}: {}",
                group.format_element(Elem::from_index(v), notation),
                names.join(" ")
            );
        }
        out
    }
}
