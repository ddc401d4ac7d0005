//! Depth-first construction of G-regular solutions for a fixed orbit-type
//! signature.
//!
//! Each signature entry `(length, orbit, S)` asks for one 2-factor `F` with
//! `Stab_G(F) = S` and `|G|/|S| = orbit` translates. A factor is grown as a
//! union of sub-orbits `Orb_S(C)`: the next base cycle always passes through
//! the least vertex the factor does not cover yet, and is written from that
//! vertex in the orientation with the smaller second vertex. Cycles are
//! extended one difference at a time, trying the unconsumed differences in
//! element order. When a cycle closes it must
//!
//! * use only unconsumed differences, each exactly `|Stab_G(C)|` times
//!   among its `2ℓ` oriented differences,
//! * have `Stab_G(C) ≤ S`,
//! * have an `S`-orbit of vertex-disjoint cycles missing the covered vertices.
//!
//! A completed factor must have stabilizer exactly `S`. Interchangeable
//! consecutive entries are ordered by their first base cycle. States at
//! factor boundaries that are known to fail are remembered by
//! [`PruningKey`].
//!
//! The node budget is the primary limit; a wall-clock limit is advisory.
//! Every solution is handed to [`verify_solution`] before it is returned.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::{hwp_feasibility, HwpParams};
use crate::group::{build_group, Elem, ElemSet, FiniteGroup, GroupId, Subgroup};
use crate::orbit::{translate_cycle, CycleSeq};
use crate::solutions::{verify_solution, Annotations, FactorSpec, SolutionSpec, WHOLE_GROUP};
use crate::certificate::FactorizationCertificate;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureEntry {
    /// Cycle length, 3 or 4.
    pub length: usize,
    /// Length of the factor's G-orbit.
    pub orbit: usize,
    pub subgroup: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budget {
    pub nodes: Option<u64>,
    /// Advisory; results under a time limit are not reproducible.
    pub time_ms: Option<u64>,
}

/// A search request. Same layout as a solution file without cycles and
/// factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchTarget {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub group: GroupId,
    #[serde(default)]
    pub subgroups: IndexMap<String, Vec<String>>,
    pub expected: HwpParams,
    pub signature: Vec<SignatureEntry>,
    #[serde(default)]
    pub budget: Budget,
}

impl SearchTarget {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn from_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("target serializes")
    }

    pub fn node_budget(&self) -> u64 {
        self.budget.nodes.unwrap_or(DEFAULT_NODE_BUDGET)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchVerdict {
    Found,
    Exhausted,
    BudgetExceeded,
}

/// Counters that depend only on the target and the node budget.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Vertex extensions tried.
    pub nodes: u64,
    /// Closed cycles or completed factors that failed a check.
    pub prunes: u64,
    pub cycles_accepted: u64,
    pub factors_completed: u64,
    pub table_hits: u64,
    /// Complete assignments rejected by the verifier.
    pub rejected: u64,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.prunes += o.prunes;
        self.cycles_accepted += o.cycles_accepted;
        self.factors_completed += o.factors_completed;
        self.table_hits += o.table_hits;
        self.rejected += o.rejected;
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub verdict: SearchVerdict,
    pub solution: Option<SolutionSpec>,
    pub certificate: Option<FactorizationCertificate>,
    pub stats: SearchStats,
    pub reason: Option<String>,
    pub elapsed: Duration,
}

impl SearchOutcome {
    fn infeasible(reason: String) -> Self {
        SearchOutcome {
            verdict: SearchVerdict::Exhausted,
            solution: None,
            certificate: None,
            stats: SearchStats::default(),
            reason: Some(reason),
            elapsed: Duration::ZERO,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    /// Explore first-level branches on the rayon pool. The reported solution
    /// is the one the sequential search would find first, but the counters
    /// are summed over all branches.
    pub parallel: bool,
    /// Overrides the target's node budget.
    pub node_budget: Option<u64>,
}

/// A partial assignment at a factor boundary or inside a factor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialAssignment {
    /// Signature entry being built.
    pub entry: usize,
    /// Differences used by all accepted base cycles.
    pub consumed: ElemSet,
    /// Vertices covered by the factor under construction.
    pub covered: ElemSet,
    /// First base cycle of the previous factor, when the current entry
    /// repeats the previous one (it bounds the current first cycle).
    pub bound: Option<Vec<Elem>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PruningKey {
    pub entry: usize,
    pub consumed: u64,
    pub covered: u64,
    pub bound: Vec<u8>,
}

impl PruningKey {
    pub fn is_empty(&self) -> bool {
        *self == PruningKey::default()
    }
}

pub fn canonical_pruning_key(partial: &PartialAssignment) -> PruningKey {
    PruningKey {
        entry: partial.entry,
        consumed: partial.consumed.bits(),
        covered: partial.covered.bits(),
        bound: partial
            .bound
            .iter()
            .flatten()
            .map(|e| e.index() as u8)
            .collect(),
    }
}

struct Entry {
    length: usize,
    orbit: usize,
    subgroup_name: String,
    subgroup: Subgroup,
}

impl Entry {
    fn same_as(&self, other: &Entry) -> bool {
        self.length == other.length && self.orbit == other.orbit && self.subgroup == other.subgroup
    }
}

/// Checks the target and resolves its subgroups.
fn prepare(target: &SearchTarget) -> std::result::Result<(FiniteGroup, Vec<Entry>), String> {
    let e = target.expected;
    hwp_feasibility(e.v, e.r, e.s)?;
    let group = build_group(target.group).map_err(|e| e.to_string())?;
    if group.order() != e.v {
        return Err(format!("{} has order {}, not v = {}", target.group, group.order(), e.v));
    }
    group.unique_involution().map_err(|e| e.to_string())?;
    if target.signature.is_empty() {
        return Err("empty signature".into());
    }
    let mut entries = Vec::new();
    let (mut r, mut s) = (0, 0);
    for sig in &target.signature {
        let subgroup = if sig.subgroup == WHOLE_GROUP {
            group.whole()
        } else {
            let gens = target
                .subgroups
                .get(&sig.subgroup)
                .ok_or_else(|| format!("subgroup {} is not defined", sig.subgroup))?;
            let gens = gens
                .iter()
                .map(|t| group.parse_element(t))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| e.to_string())?;
            group.subgroup_closure(&gens)
        };
        match sig.length {
            3 => r += sig.orbit,
            4 => s += sig.orbit,
            l => return Err(format!("cycle length {l} is not 3 or 4")),
        }
        if sig.orbit * subgroup.order() != group.order() {
            return Err(format!(
                "orbit length {} with |{}| = {} does not give |G| = {}",
                sig.orbit,
                sig.subgroup,
                subgroup.order(),
                group.order()
            ));
        }
        entries.push(Entry {
            length: sig.length,
            orbit: sig.orbit,
            subgroup_name: sig.subgroup.clone(),
            subgroup,
        });
    }
    if (r, s) != (e.r, e.s) {
        return Err(format!("signature gives (r, s) = ({r}, {s}), target is ({}, {})", e.r, e.s));
    }
    Ok((group, entries))
}

enum Stop {
    Nodes,
    Time,
}

struct Searcher<'a> {
    target: &'a SearchTarget,
    group: &'a FiniteGroup,
    iota: Elem,
    entries: &'a [Entry],
    budget: u64,
    deadline: Option<Instant>,
    /// Only this first difference is tried, when set.
    forced_first: Option<Elem>,
    stats: SearchStats,
    stop: Option<Stop>,
    failed: HashSet<PruningKey>,

    consumed: ElemSet,
    covered: ElemSet,
    /// Cycles of the factor under construction, canonical.
    factor_cycles: Vec<CycleSeq>,
    /// Base cycles per factor.
    bases: Vec<Vec<Vec<Elem>>>,
    found: Option<(SolutionSpec, FactorizationCertificate)>,
}

impl<'a> Searcher<'a> {
    fn new(
        target: &'a SearchTarget,
        group: &'a FiniteGroup,
        entries: &'a [Entry],
        budget: u64,
        forced_first: Option<Elem>,
    ) -> Self {
        Searcher {
            target,
            group,
            iota: group.unique_involution().expect("checked in prepare"),
            entries,
            budget,
            deadline: target
                .budget
                .time_ms
                .map(|ms| Instant::now() + Duration::from_millis(ms)),
            forced_first,
            stats: SearchStats::default(),
            stop: None,
            failed: HashSet::new(),
            consumed: ElemSet::empty(),
            covered: ElemSet::empty(),
            factor_cycles: Vec::new(),
            bases: Vec::new(),
            found: None,
        }
    }

    fn available(&self) -> ElemSet {
        let mut a = self.group.all().difference(self.consumed);
        a.remove(Elem::IDENTITY);
        a.remove(self.iota);
        a
    }

    fn tick(&mut self) -> bool {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            self.stop = Some(Stop::Nodes);
        } else if self.stats.nodes % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.stop = Some(Stop::Time);
                }
            }
        }
        self.stop.is_none()
    }

    fn bound_for(&self, i: usize) -> Option<Vec<Elem>> {
        (i > 0 && self.entries[i].same_as(&self.entries[i - 1]))
            .then(|| self.bases[i - 1][0].clone())
    }

    /// Builds entry `i` and everything after it.
    fn solve_entry(&mut self, i: usize) -> bool {
        if i == self.entries.len() {
            return self.accept();
        }
        let key = canonical_pruning_key(&PartialAssignment {
            entry: i,
            consumed: self.consumed,
            covered: ElemSet::empty(),
            bound: self.bound_for(i),
        });
        if self.failed.contains(&key) {
            self.stats.table_hits += 1;
            return false;
        }
        let saved_covered = std::mem::take(&mut self.covered);
        let saved_cycles = std::mem::take(&mut self.factor_cycles);
        self.bases.push(Vec::new());
        let ok = self.extend_factor(i);
        self.bases.pop();
        self.covered = saved_covered;
        self.factor_cycles = saved_cycles;
        if !ok && self.stop.is_none() {
            self.failed.insert(key);
        }
        ok
    }

    fn extend_factor(&mut self, i: usize) -> bool {
        if self.covered == self.group.all() {
            let entry = &self.entries[i];
            let mut cycles = self.factor_cycles.clone();
            cycles.sort();
            let stab_is_s = self.group.elements().all(|h| {
                let mut moved: Vec<CycleSeq> =
                    cycles.iter().map(|c| translate_cycle(self.group, h, c)).collect();
                moved.sort();
                (moved == cycles) == entry.subgroup.contains(h)
            });
            if !stab_is_s {
                self.stats.prunes += 1;
                return false;
            }
            self.stats.factors_completed += 1;
            return self.solve_entry(i + 1);
        }
        let u = self
            .group
            .all()
            .difference(self.covered)
            .first()
            .expect("factor is not complete");
        let mut path = vec![u];
        let mut on_path = ElemSet::empty();
        on_path.insert(u);
        self.grow(i, &mut path, on_path)
    }

    fn grow(&mut self, i: usize, path: &mut Vec<Elem>, on_path: ElemSet) -> bool {
        let length = self.entries[i].length;
        if path.len() == length {
            return self.close(i, path);
        }
        let x = *path.last().expect("path is never empty");
        let mut choices = self.available();
        if let (Some(d), true) = (self.forced_first, i == 0 && self.bases[0].is_empty() && path.len() == 1) {
            choices = choices.intersection([d].into_iter().collect());
        }
        for d in choices.iter() {
            if !self.tick() {
                return false;
            }
            // x·y⁻¹ = d
            let y = self.group.mul(self.group.inverse(d), x);
            if self.covered.contains(y) || on_path.contains(y) {
                continue;
            }
            if path.len() == length - 1 && y < path[1] {
                continue;
            }
            path.push(y);
            let mut next = on_path;
            next.insert(y);
            let ok = self.grow(i, path, next);
            path.pop();
            if ok || self.stop.is_some() {
                return ok;
            }
        }
        false
    }

    fn close(&mut self, i: usize, path: &[Elem]) -> bool {
        let g = self.group;
        let entry = &self.entries[i];
        let n = path.len();
        let mut mult = [0u8; ElemSet::CAPACITY];
        let mut omega = ElemSet::empty();
        for t in 0..n {
            let d = g.quotient(path[t], path[(t + 1) % n]);
            for e in [d, g.inverse(d)] {
                mult[e.index()] += 1;
                omega.insert(e);
            }
        }
        if !omega.is_disjoint(self.consumed) || omega.contains(self.iota) {
            self.stats.prunes += 1;
            return false;
        }
        if self.bases[i].is_empty() {
            if let Some(bound) = self.bound_for(i) {
                if path <= bound.as_slice() {
                    self.stats.prunes += 1;
                    return false;
                }
            }
        }
        let cycle = CycleSeq::new(path.to_vec()).expect("path vertices are distinct");
        let base = cycle.canonical();
        // the stabilizer maps path[0] into the cycle
        let u_inv = g.inverse(path[0]);
        let stab: Vec<Elem> = path
            .iter()
            .map(|&c| g.mul(u_inv, c))
            .filter(|&h| translate_cycle(g, h, &cycle) == base)
            .collect();
        let k = stab.len() as u8;
        if omega.iter().any(|e| mult[e.index()] != k)
            || stab.iter().any(|&h| !entry.subgroup.contains(h))
        {
            self.stats.prunes += 1;
            return false;
        }
        let mut orbit = Vec::new();
        let mut touched = ElemSet::empty();
        for &s in entry.subgroup.elements() {
            let c = translate_cycle(g, s, &cycle);
            if !orbit.contains(&c) {
                for &v in c.vertices() {
                    touched.insert(v);
                }
                orbit.push(c);
            }
        }
        if touched.len() != orbit.len() * n || !touched.is_disjoint(self.covered) {
            self.stats.prunes += 1;
            return false;
        }
        self.stats.cycles_accepted += 1;

        let (saved_consumed, saved_covered, saved_len) =
            (self.consumed, self.covered, self.factor_cycles.len());
        self.consumed = self.consumed.union(omega);
        self.covered = self.covered.union(touched);
        self.factor_cycles.extend(orbit);
        self.bases[i].push(path.to_vec());
        let ok = self.extend_factor(i);
        self.bases[i].pop();
        self.factor_cycles.truncate(saved_len);
        self.consumed = saved_consumed;
        self.covered = saved_covered;
        ok
    }

    fn accept(&mut self) -> bool {
        let spec = self.to_spec();
        match verify_solution(&spec) {
            Ok(cert) if cert.is_verified() => {
                self.found = Some((spec, cert));
                true
            }
            _ => {
                self.stats.rejected += 1;
                false
            }
        }
    }

    fn to_spec(&self) -> SolutionSpec {
        let g = self.group;
        let t = self.target;
        let mut cycles = IndexMap::new();
        let mut factors = Vec::new();
        for (entry, bases) in self.entries.iter().zip(&self.bases) {
            let mut names = Vec::new();
            for b in bases {
                let name = format!("C{}", cycles.len() + 1);
                cycles.insert(name.clone(), b.iter().map(|&v| g.name(v)).collect());
                names.push(name);
            }
            factors.push(FactorSpec {
                cycles: names,
                subgroup: entry.subgroup_name.clone(),
            });
        }
        let used: std::collections::BTreeSet<&str> =
            self.entries.iter().map(|e| e.subgroup_name.as_str()).collect();
        let subgroups = t
            .subgroups
            .iter()
            .filter(|(k, _)| used.contains(k.as_str()))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let e = t.expected;
        SolutionSpec {
            id: t.id.clone().unwrap_or_else(|| format!("{}-{}-{}-search", e.v, e.r, e.s)),
            group: t.group,
            subgroups,
            cycles,
            factors,
            expected: e,
            annotations: Annotations {
                factor_orbit_lengths: self.entries.iter().map(|e| e.orbit).collect(),
                ..Annotations::default()
            },
        }
    }

    fn outcome(self, started: Instant) -> SearchOutcome {
        let (verdict, reason) = match (&self.found, &self.stop) {
            (Some(_), _) => (SearchVerdict::Found, None),
            (None, Some(Stop::Nodes)) => (
                SearchVerdict::BudgetExceeded,
                Some(format!("node budget of {} exhausted", self.budget)),
            ),
            (None, Some(Stop::Time)) => (SearchVerdict::BudgetExceeded, Some("time limit reached".into())),
            (None, None) => (SearchVerdict::Exhausted, Some("no solution with this signature".into())),
        };
        let (solution, certificate) = match self.found {
            Some((s, c)) => (Some(s), Some(c)),
            None => (None, None),
        };
        SearchOutcome {
            verdict,
            solution,
            certificate,
            stats: self.stats,
            reason,
            elapsed: started.elapsed(),
        }
    }
}

/// Single-threaded reference search.
pub fn search_hwp(target: &SearchTarget) -> SearchOutcome {
    search_hwp_with(target, &SearchOptions::default())
}

pub fn search_hwp_with(target: &SearchTarget, options: &SearchOptions) -> SearchOutcome {
    let started = Instant::now();
    let (group, entries) = match prepare(target) {
        Ok(p) => p,
        Err(reason) => return SearchOutcome::infeasible(format!("infeasible target: {reason}")),
    };
    let budget = options.node_budget.unwrap_or_else(|| target.node_budget());
    if !options.parallel {
        let mut s = Searcher::new(target, &group, &entries, budget, None);
        s.solve_entry(0);
        return s.outcome(started);
    }

    let probe = Searcher::new(target, &group, &entries, budget, None);
    let firsts: Vec<Elem> = probe.available().iter().collect();
    let branches: Vec<SearchOutcome> = firsts
        .par_iter()
        .map(|&d| {
            let mut s = Searcher::new(target, &group, &entries, budget, Some(d));
            s.solve_entry(0);
            s.outcome(started)
        })
        .collect();
    let mut stats = SearchStats::default();
    for b in &branches {
        stats.add(&b.stats);
    }
    // least branch in sequential order wins; a budget stop before it hides
    // whether the sequential search would have got there first
    let mut result = SearchOutcome {
        verdict: SearchVerdict::Exhausted,
        solution: None,
        certificate: None,
        stats,
        reason: Some("no solution with this signature".into()),
        elapsed: Duration::ZERO,
    };
    for b in branches {
        match b.verdict {
            SearchVerdict::Found => {
                result.verdict = SearchVerdict::Found;
                result.solution = b.solution;
                result.certificate = b.certificate;
                result.reason = None;
                break;
            }
            SearchVerdict::BudgetExceeded if result.verdict == SearchVerdict::Exhausted => {
                result.verdict = SearchVerdict::BudgetExceeded;
                result.reason = b.reason;
            }
            _ => {}
        }
    }
    result.elapsed = started.elapsed();
    result
}
