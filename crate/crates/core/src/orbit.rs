//! Cycles of the Cayley graph, their orbits under right translation, their
//! stabilizers, and the partial differences they carry.

use std::collections::BTreeSet;

use crate::cayley::{cayley_graph, ConnectionSet, Edge};
use crate::error::{Error, Result};
use crate::group::{Elem, ElemSet, FiniteGroup, Notation, Subgroup};

/// A cycle on distinct group elements, kept in the order it was given.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleSeq {
    vertices: Vec<Elem>,
}

impl CycleSeq {
    pub fn new(vertices: Vec<Elem>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidCycle(format!(
                "a cycle needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let mut seen = ElemSet::empty();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(Error::InvalidCycle(format!(
                    "vertex #{} appears twice",
                    v.index()
                )));
            }
        }
        Ok(CycleSeq { vertices })
    }

    pub fn parse(group: &FiniteGroup, texts: &[impl AsRef<str>]) -> Result<Self> {
        let vertices = texts
            .iter()
            .map(|t| group.parse_element(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Elem] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> ElemSet {
        self.vertices.iter().copied().collect()
    }

    /// Least sequence among all rotations of both orientations. Vertices are
    /// distinct, so it starts at the least vertex.
    pub fn canonical(&self) -> CycleSeq {
        let v = &self.vertices;
        let n = v.len();
        let m = (0..n).min_by_key(|&i| v[i]).unwrap_or(0);
        let forward = (0..n).map(|t| v[(m + t) % n]);
        let backward = (0..n).map(|t| v[(m + n - t) % n]);
        let vertices = if n > 1 && v[(m + n - 1) % n] < v[(m + 1) % n] {
            backward.collect()
        } else {
            forward.collect()
        };
        CycleSeq { vertices }
    }

    /// Same cycle of the graph, up to rotation and reflection.
    pub fn same_cycle(&self, other: &CycleSeq) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }

    /// Undirected edges `{c_t, c_(t+1)}`, cyclically.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |t| Edge::new(self.vertices[t], self.vertices[(t + 1) % n]))
    }

    /// `(c_1·h, ..., c_l·h)` without canonicalizing.
    pub fn right_mul(&self, group: &FiniteGroup, h: Elem) -> CycleSeq {
        CycleSeq {
            vertices: self.vertices.iter().map(|&c| group.mul(c, h)).collect(),
        }
    }

    pub fn format(&self, group: &FiniteGroup, notation: Notation) -> String {
        let names: Vec<String> = self
            .vertices
            .iter()
            .map(|&v| group.format_element(v, notation))
            .collect();
        format!("({})", names.join(", "))
    }
}

/// `C·h` in canonical form.
pub fn translate_cycle(group: &FiniteGroup, h: Elem, cycle: &CycleSeq) -> CycleSeq {
    cycle.right_mul(group, h).canonical()
}

/// `{h ∈ G : C·h = C}`. Only `h = c₁⁻¹·c` for vertices `c` can qualify.
pub fn stabilizer(group: &FiniteGroup, cycle: &CycleSeq) -> Subgroup {
    let base = cycle.canonical();
    let first_inv = group.inverse(cycle.vertices()[0]);
    let set: ElemSet = cycle
        .vertices()
        .iter()
        .map(|&c| group.mul(first_inv, c))
        .filter(|&h| translate_cycle(group, h, cycle) == base)
        .collect();
    Subgroup::from_set(group, set).expect("a cycle stabilizer is a subgroup")
}

#[derive(Clone, Debug)]
pub struct CycleOrbit {
    pub base: CycleSeq,
    pub acting: Subgroup,
    /// Distinct translates, canonical, sorted.
    pub cycles: Vec<CycleSeq>,
    /// `Stab_G(C) ∩ acting`.
    pub stabilizer: Subgroup,
}

impl CycleOrbit {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn vertex_multiset_len(&self) -> usize {
        self.cycles.iter().map(CycleSeq::len).sum()
    }
}

/// `Orb_S(C) = {C·s : s ∈ S}`.
pub fn cycle_orbit(group: &FiniteGroup, acting: &Subgroup, cycle: &CycleSeq) -> CycleOrbit {
    let cycles: BTreeSet<CycleSeq> = acting
        .elements()
        .iter()
        .map(|&s| translate_cycle(group, s, cycle))
        .collect();
    let stab = stabilizer(group, cycle).intersection(acting);
    let orbit = CycleOrbit {
        base: cycle.clone(),
        acting: acting.clone(),
        cycles: cycles.into_iter().collect(),
        stabilizer: stab,
    };
    debug_assert_eq!(orbit.len() * orbit.stabilizer.order(), acting.order());
    orbit
}

/// All `2ℓ` oriented differences `c_t·c_(t+1)⁻¹` and their inverses, as a
/// list with multiplicity.
pub fn difference_list(group: &FiniteGroup, cycle: &CycleSeq) -> Vec<Elem> {
    let v = cycle.vertices();
    let n = v.len();
    (0..n)
        .flat_map(|t| {
            let d = group.quotient(v[t], v[(t + 1) % n]);
            [d, group.inverse(d)]
        })
        .collect()
}

/// `Ω(C)`: the set of differences of `C`, closed under inversion.
pub fn partial_differences(group: &FiniteGroup, cycle: &CycleSeq) -> ConnectionSet {
    ConnectionSet::new(group, difference_list(group, cycle))
        .expect("differences of distinct vertices avoid 1 and are inverse-closed")
}

/// Outcome of checking that `Orb_G(C)` decomposes `Cay[G:Ω(C)]`.
#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    pub omega: ConnectionSet,
    pub orbit_length: usize,
    pub graph_edges: usize,
    /// Edges of the graph covered exactly once.
    pub covered_once: usize,
    /// First offending edge with its coverage count, if any.
    pub witness: Option<(Edge, usize)>,
}

impl OrbitDecomposition {
    pub fn passed(&self) -> bool {
        self.witness.is_none() && self.covered_once == self.graph_edges
    }
}

/// Counts how often each edge of `Cay[G:Ω(C)]` is used by the cycles of
/// `Orb_G(C)`; every count must be exactly one.
pub fn verify_orbit_decomposition(group: &FiniteGroup, cycle: &CycleSeq) -> OrbitDecomposition {
    let omega = partial_differences(group, cycle);
    let graph = cayley_graph(group, &omega).expect("omega is a valid connection set");
    let orbit = cycle_orbit(group, &group.whole(), cycle);
    let n = group.order();
    let mut counts = vec![0usize; n * n];
    for c in &orbit.cycles {
        for e in c.edges() {
            counts[e.slot(n)] += 1;
        }
    }
    let mut covered_once = 0;
    let mut witness = None;
    for &e in graph.edges() {
        match counts[e.slot(n)] {
            1 => covered_once += 1,
            k if witness.is_none() => witness = Some((e, k)),
            _ => {}
        }
        counts[e.slot(n)] = 0;
    }
    if witness.is_none() {
        // anything left over lies outside Cay[G:Ω]
        if let Some(slot) = counts.iter().position(|&k| k > 0) {
            let e = Edge::new(Elem::from_index(slot / n), Elem::from_index(slot % n));
            witness = Some((e, counts[slot]));
        }
    }
    OrbitDecomposition {
        omega,
        orbit_length: orbit.len(),
        graph_edges: graph.edge_count(),
        covered_once,
        witness,
    }
}

#[derive(Clone, Debug, Default)]
pub struct PartitionReport {
    /// Elements lying in two or more of the sets, with the set indices.
    pub overlaps: Vec<(Elem, Vec<usize>)>,
    /// Elements of `G ∖ {1, ι}` in none of the sets.
    pub gaps: Vec<Elem>,
    /// The involution, if some set contains it.
    pub contains_involution: Option<usize>,
    pub union_size: usize,
    pub target_size: usize,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.overlaps.is_empty() && self.gaps.is_empty() && self.contains_involution.is_none()
    }
}

/// Checks that the sets are pairwise disjoint with union `G ∖ {1, ι}`.
pub fn verify_partition(group: &FiniteGroup, sets: &[ConnectionSet]) -> Result<PartitionReport> {
    let iota = group.unique_involution()?;
    let mut target = group.all();
    target.remove(Elem::IDENTITY);
    target.remove(iota);

    let mut report = PartitionReport {
        target_size: target.len(),
        ..Default::default()
    };
    let mut union = ElemSet::empty();
    for g in group.elements() {
        let owners: Vec<usize> = sets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains(g))
            .map(|(i, _)| i)
            .collect();
        if owners.len() > 1 {
            report.overlaps.push((g, owners.clone()));
        }
        if g == iota && !owners.is_empty() {
            report.contains_involution = Some(owners[0]);
        }
        if !owners.is_empty() {
            union.insert(g);
        }
    }
    report.gaps = target.difference(union).iter().collect();
    report.union_size = union.len();
    Ok(report)
}
