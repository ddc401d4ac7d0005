//! 2-factors assembled from sub-orbits, their G-orbits, and the full
//! verification of a Hamilton-Waterloo 2-factorization of `K_v - I`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cayley::Edge;
use crate::certificate::{
    BaseCycleReport, CoverageSummary, FactorReport, FactorizationCertificate, PartReport,
    PartitionSummary, Verdict,
};
use crate::error::{Error, Result};
use crate::group::{Elem, ElemSet, FiniteGroup, Notation, Subgroup};
use crate::orbit::{cycle_orbit, partial_differences, stabilizer, verify_partition, CycleSeq};

/// One `Orb_S(C)` contribution to a factor.
#[derive(Clone, Debug)]
pub struct RecipePart {
    pub cycle_name: String,
    pub cycle: CycleSeq,
    pub subgroup_name: String,
    pub subgroup: Subgroup,
}

/// Sub-orbits whose union is meant to be a single 2-factor.
#[derive(Clone, Debug)]
pub struct FactorRecipe {
    pub name: String,
    pub parts: Vec<RecipePart>,
}

impl FactorRecipe {
    /// The acting subgroup shared by every part, if there is one.
    pub fn declared_subgroup(&self) -> Option<(&str, &Subgroup)> {
        let first = self.parts.first()?;
        self.parts
            .iter()
            .all(|p| p.subgroup == first.subgroup)
            .then_some((first.subgroup_name.as_str(), &first.subgroup))
    }
}

/// A spanning set of vertex-disjoint cycles, each in canonical form, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoFactor {
    cycles: Vec<CycleSeq>,
}

impl TwoFactor {
    /// Checks that `cycles` cover each of the `order` vertices exactly once.
    pub fn new(order: usize, cycles: Vec<CycleSeq>) -> Result<Self, RecipeDefect> {
        let mut seen = ElemSet::empty();
        for c in &cycles {
            for &v in c.vertices() {
                if !seen.insert(v) {
                    return Err(RecipeDefect::Overlap(v));
                }
            }
        }
        if let Some(gap) = ElemSet::full(order).difference(seen).first() {
            return Err(RecipeDefect::Gap(gap));
        }
        let mut cycles: Vec<CycleSeq> = cycles.iter().map(CycleSeq::canonical).collect();
        cycles.sort();
        Ok(TwoFactor { cycles })
    }

    pub fn cycles(&self) -> &[CycleSeq] {
        &self.cycles
    }

    pub fn edge_count(&self) -> usize {
        self.cycles.iter().map(CycleSeq::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.cycles.iter().flat_map(CycleSeq::edges)
    }

    /// Common cycle length, or `None` for a mixed factor.
    pub fn uniform_length(&self) -> Option<usize> {
        let first = self.cycles.first()?.len();
        self.cycles.iter().all(|c| c.len() == first).then_some(first)
    }

    pub fn kind(&self) -> &'static str {
        match self.uniform_length() {
            Some(3) => "triangle",
            Some(4) => "quadrangle",
            Some(_) => "uniform",
            None => "mixed",
        }
    }

    /// The two neighbours of every vertex, smaller first.
    pub fn neighbours(&self, order: usize) -> Vec<[Elem; 2]> {
        let mut nb = vec![[Elem::IDENTITY; 2]; order];
        for c in &self.cycles {
            let v = c.vertices();
            let l = v.len();
            for t in 0..l {
                let (a, b) = (v[(t + l - 1) % l], v[(t + 1) % l]);
                nb[v[t].index()] = [a.min(b), a.max(b)];
            }
        }
        nb
    }

    /// `F·h`.
    pub fn translate(&self, group: &FiniteGroup, h: Elem) -> TwoFactor {
        let mut cycles: Vec<CycleSeq> = self
            .cycles
            .iter()
            .map(|c| c.right_mul(group, h).canonical())
            .collect();
        cycles.sort();
        TwoFactor { cycles }
    }
}

/// Why a recipe does not give a 2-factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecipeDefect {
    /// The vertex lies on two cycles.
    Overlap(Elem),
    /// The vertex lies on no cycle.
    Gap(Elem),
}

impl RecipeDefect {
    pub fn describe(self, group: &FiniteGroup) -> String {
        match self {
            RecipeDefect::Overlap(v) => format!("vertex {} lies on two cycles", group.name(v)),
            RecipeDefect::Gap(v) => format!("vertex {} is not covered", group.name(v)),
        }
    }
}

/// Union of the sub-orbits of a recipe, checked to be a 2-factor.
pub fn try_assemble(group: &FiniteGroup, recipe: &FactorRecipe) -> Result<TwoFactor, RecipeDefect> {
    let cycles: Vec<CycleSeq> = recipe
        .parts
        .iter()
        .flat_map(|p| cycle_orbit(group, &p.subgroup, &p.cycle).cycles)
        .collect();
    TwoFactor::new(group.order(), cycles)
}

pub fn assemble_factor(group: &FiniteGroup, recipe: &FactorRecipe) -> Result<TwoFactor> {
    try_assemble(group, recipe).map_err(|d| {
        Error::InvalidRecipe(format!("{}: {}", recipe.name, d.describe(group)))
    })
}

/// `{h : F·h = F}`, compared through neighbour sets: `F·h = F` iff the
/// neighbours of `v·h` are the neighbours of `v` times `h`, for every `v`.
pub fn factor_stabilizer(group: &FiniteGroup, factor: &TwoFactor) -> Subgroup {
    let nb = factor.neighbours(group.order());
    let set: ElemSet = group
        .elements()
        .filter(|&h| {
            group.elements().all(|v| {
                let [a, b] = nb[v.index()];
                let (a, b) = (group.mul(a, h), group.mul(b, h));
                nb[group.mul(v, h).index()] == [a.min(b), a.max(b)]
            })
        })
        .collect();
    Subgroup::from_set(group, set).expect("a factor stabilizer is a subgroup")
}

/// The distinct translates `F·h`, one per right coset `Stab·h`, with the
/// coset representative used.
pub fn factor_orbit(group: &FiniteGroup, factor: &TwoFactor) -> Vec<(Elem, TwoFactor)> {
    orbit_with_stabilizer(group, factor, &factor_stabilizer(group, factor))
}

fn orbit_with_stabilizer(group: &FiniteGroup, factor: &TwoFactor, stab: &Subgroup) -> Vec<(Elem, TwoFactor)> {
    stab.right_transversal(group)
        .into_iter()
        .map(|h| (h, factor.translate(group, h)))
        .collect()
}

/// `HWP(v; 3, 4; r, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HwpParams {
    pub v: usize,
    pub r: usize,
    pub s: usize,
}

impl fmt::Display for HwpParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HWP({}; 3, 4; {}, {})", self.v, self.r, self.s)
    }
}

/// Necessary conditions for `HWP(v; 3, 4; r, s)` on `K_v - I`.
pub fn hwp_feasibility(v: usize, r: usize, s: usize) -> Result<(), String> {
    if v % 2 != 0 {
        return Err(format!("v = {v} is odd"));
    }
    if v < 4 {
        return Err(format!("v = {v} is too small"));
    }
    if r + s != v / 2 - 1 {
        return Err(format!("r + s = {} but v/2 - 1 = {}", r + s, v / 2 - 1));
    }
    if r > 0 && v % 3 != 0 {
        return Err(format!("triangle-factors need 3 | v, v = {v}"));
    }
    if s > 0 && v % 4 != 0 {
        return Err(format!("quadrangle-factors need 4 | v, v = {v}"));
    }
    Ok(())
}

fn stabilizer_kind(stab: &Subgroup, cycle: &CycleSeq) -> &'static str {
    if stab.order() == 1 {
        "trivial"
    } else if stab.set() == cycle.vertex_set() {
        "vertex-set"
    } else {
        "other"
    }
}

/// Expands every factor orbit and checks the whole factorization by direct
/// edge accounting over `K_v - I`.
pub fn verify_factorization(group: &FiniteGroup, recipes: &[FactorRecipe]) -> FactorizationCertificate {
    let n = group.order();
    let mut cert = FactorizationCertificate::new(group.id(), n);
    let iota = match group.unique_involution() {
        Ok(i) => i,
        Err(e) => {
            cert.failures.push(e.to_string());
            cert.finish();
            return cert;
        }
    };

    // base cycles, in first-use order
    let mut seen_names = BTreeSet::new();
    let mut omegas = Vec::new();
    for part in recipes.iter().flat_map(|r| &r.parts) {
        if !seen_names.insert(part.cycle_name.clone()) {
            continue;
        }
        let stab = stabilizer(group, &part.cycle);
        let omega = partial_differences(group, &part.cycle);
        cert.base_cycles.push(BaseCycleReport {
            name: part.cycle_name.clone(),
            vertices: part.cycle.vertices().iter().map(|&v| group.name(v)).collect(),
            length: part.cycle.len(),
            stabilizer_order: stab.order(),
            stabilizer: stabilizer_kind(&stab, &part.cycle).to_string(),
            omega: omega.iter().map(|g| group.name(g)).collect(),
            omega_text: omega.format(group, Notation::Ascii),
        });
        omegas.push(omega);
    }
    match verify_partition(group, &omegas) {
        Ok(p) => {
            cert.partition = PartitionSummary {
                sizes: omegas.iter().map(|o| o.len()).collect(),
                union_size: p.union_size,
                target_size: p.target_size,
                overlaps: p.overlaps.iter().map(|(g, _)| group.name(*g)).collect(),
                gaps: p.gaps.iter().map(|&g| group.name(g)).collect(),
                passed: p.passed(),
            };
            if !p.passed() {
                let mut why = Vec::new();
                if let Some((g, owners)) = p.overlaps.first() {
                    let names: Vec<&str> = owners.iter().map(|&i| cert.base_cycles[i].name.as_str()).collect();
                    why.push(format!("{} lies in the differences of {}", group.name(*g), names.join(" and ")));
                }
                if let Some(&g) = p.gaps.first() {
                    why.push(format!("{} is not a difference of any base cycle", group.name(g)));
                }
                if let Some(i) = p.contains_involution {
                    why.push(format!("the involution is a difference of {}", cert.base_cycles[i].name));
                }
                cert.failures.push(format!("difference sets do not partition G minus {{1, involution}}: {}", why.join("; ")));
            }
        }
        Err(e) => cert.failures.push(e.to_string()),
    }

    // factors and their orbits
    let mut all_factors: Vec<(String, Vec<(Elem, TwoFactor)>)> = Vec::new();
    let (mut r, mut s, mut mixed) = (0usize, 0usize, false);
    for recipe in recipes {
        let mut report = FactorReport {
            name: recipe.name.clone(),
            parts: recipe
                .parts
                .iter()
                .map(|p| PartReport {
                    cycle: p.cycle_name.clone(),
                    subgroup: p.subgroup_name.clone(),
                    subgroup_order: p.subgroup.order(),
                    sub_orbit_length: cycle_orbit(group, &p.subgroup, &p.cycle).len(),
                })
                .collect(),
            ..FactorReport::default()
        };
        let factor = match try_assemble(group, recipe) {
            Ok(f) => f,
            Err(d) => {
                report.kind = "invalid".into();
                cert.failures.push(format!("{} is not a 2-factor: {}", recipe.name, d.describe(group)));
                cert.factors.push(report);
                continue;
            }
        };
        let stab = factor_stabilizer(group, &factor);
        let orbit = orbit_with_stabilizer(group, &factor, &stab);
        report.cycles = factor.cycles().len();
        report.cycle_length = factor.uniform_length();
        report.kind = factor.kind().into();
        report.stabilizer_order = stab.order();
        report.orbit_length = orbit.len();
        report.translators = orbit.iter().map(|(h, _)| group.name(*h)).collect();
        match recipe.declared_subgroup() {
            Some((name, sub)) => {
                report.declared_stabilizer = Some(name.to_string());
                report.stabilizer_matches = stab == *sub;
                if !report.stabilizer_matches {
                    cert.failures.push(format!(
                        "{}: stabilizer has order {} but the recipe declares {} of order {}",
                        recipe.name,
                        stab.order(),
                        name,
                        sub.order()
                    ));
                }
            }
            None => report.stabilizer_matches = false,
        }
        match factor.uniform_length() {
            Some(3) => r += orbit.len(),
            Some(4) => s += orbit.len(),
            other => {
                mixed = true;
                cert.failures.push(match other {
                    Some(l) => format!("{} consists of {l}-cycles, expected triangles or quadrangles", recipe.name),
                    None => format!("{} mixes cycle lengths", recipe.name),
                });
            }
        }
        cert.factors.push(report);
        all_factors.push((recipe.name.clone(), orbit));
    }
    if !mixed {
        cert.computed = Some(HwpParams { v: n, r, s });
    }

    // edge accounting
    let mut owner: Vec<Option<(usize, usize)>> = vec![None; n * n];
    let mut count = vec![0u32; n * n];
    for (fi, (_, orbit)) in all_factors.iter().enumerate() {
        for (ti, (_, f)) in orbit.iter().enumerate() {
            for e in f.edges() {
                count[e.slot(n)] += 1;
                owner[e.slot(n)].get_or_insert((fi, ti));
            }
        }
    }
    let mut cov = CoverageSummary {
        edges_expected: n * (n - 2) / 2,
        ..CoverageSummary::default()
    };
    let mut hasher = Sha256::new();
    for a in group.elements() {
        for b in group.elements().filter(|&b| b > a) {
            let e = Edge::new(a, b);
            let k = count[e.slot(n)];
            let describe = |k: u32| {
                format!("edge {{{}, {}}} is covered {k} times", group.name(a), group.name(b))
            };
            if group.mul(a, iota) == b {
                if k > 0 {
                    cov.matching_edges_used += 1;
                    cov.witness.get_or_insert_with(|| format!("{} but lies in the removed 1-factor", describe(k)));
                }
                continue;
            }
            match k {
                0 => cov.uncovered += 1,
                1 => cov.covered_once += 1,
                _ => cov.overcovered += 1,
            }
            if k != 1 {
                cov.witness.get_or_insert_with(|| describe(k));
            }
            // (a, b, factor, translate), 0xffff for an uncovered edge
            let (fi, ti) = owner[e.slot(n)].map_or((0xffff, 0xffff), |(f, t)| (f as u16, t as u16));
            hasher.update([a.index() as u8, b.index() as u8]);
            hasher.update(fi.to_le_bytes());
            hasher.update(ti.to_le_bytes());
        }
    }
    cov.total_edge_uses = count.iter().map(|&k| k as usize).sum();
    cov.passed = cov.witness.is_none() && cov.covered_once == cov.edges_expected;
    if !cov.passed {
        cert.failures.push(format!(
            "edge coverage fails: {}",
            cov.witness.clone().unwrap_or_else(|| "not every edge is covered once".into())
        ));
    }
    cert.checksum = hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    cert.coverage = cov;

    if let Some(p) = cert.computed {
        if let Err(why) = hwp_feasibility(p.v, p.r, p.s) {
            cert.failures.push(format!("computed {p} is not admissible: {why}"));
        }
    }

    // translating by any h permutes the factors; generators suffice
    let family: BTreeSet<&TwoFactor> = all_factors.iter().flat_map(|(_, o)| o.iter().map(|(_, f)| f)).collect();
    cert.g_regular = group
        .generating_set()
        .into_iter()
        .all(|h| family.iter().all(|f| family.contains(&f.translate(group, h))));
    if !cert.g_regular {
        cert.failures.push("the factor family is not closed under translation".into());
    }

    cert.finish();
    cert
}

impl FactorizationCertificate {
    pub(crate) fn finish(&mut self) {
        self.verdict = if self.failures.is_empty() {
            Verdict::Verified
        } else {
            Verdict::Failed
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupId};

    fn part(g: &FiniteGroup, name: &str, cycle: &[&str], sub: &str, gens: &[&str]) -> RecipePart {
        let gens: Vec<Elem> = gens.iter().map(|t| g.parse_element(t).unwrap()).collect();
        RecipePart {
            cycle_name: name.into(),
            cycle: CycleSeq::parse(g, cycle).unwrap(),
            subgroup_name: sub.into(),
            subgroup: if sub == "G" { g.whole() } else { g.subgroup_closure(&gens) },
        }
    }

    fn recipe(name: &str, parts: Vec<RecipePart>) -> FactorRecipe {
        FactorRecipe { name: name.into(), parts }
    }

    #[test]
    fn feasibility() {
        assert!(hwp_feasibility(48, 5, 18).is_ok());
        assert!(hwp_feasibility(24, 7, 4).is_ok());
        assert!(hwp_feasibility(24, 7, 5).is_err());
        assert!(hwp_feasibility(25, 7, 5).is_err());
        assert!(hwp_feasibility(20, 9, 0).is_err());
        assert!(hwp_feasibility(18, 0, 8).is_err());
    }

    #[test]
    fn octahedral_factors() {
        let g = build_group(GroupId::BinaryOctahedral).unwrap();
        let k = ["k", "1/r2(j-k)"];
        let f1 = assemble_factor(&g, &recipe("F1", vec![part(&g, "C1", &["1", "-1/r2(1-k)", "1/2(1-i-j-k)"], "K", &k)])).unwrap();
        assert_eq!(f1.cycles().len(), 16);
        assert_eq!(f1.kind(), "triangle");
        assert_eq!(factor_stabilizer(&g, &f1).order(), 16);
        assert_eq!(factor_orbit(&g, &f1).len(), 3);

        let f4 = assemble_factor(&g, &recipe("F4", vec![part(&g, "C4", &["1", "k", "-1", "-k"], "G", &[])])).unwrap();
        assert_eq!(f4.cycles().len(), 12);
        assert_eq!(f4.edge_count(), 48);
        assert_eq!(factor_orbit(&g, &f4).len(), 1);
        let stab = factor_stabilizer(&g, &f4);
        for &h in stab.elements() {
            assert_eq!(f4.translate(&g, h), f4);
        }
    }

    #[test]
    fn composite_dicyclic_factor() {
        let g = build_group(GroupId::Dicyclic24).unwrap();
        let f = assemble_factor(
            &g,
            &recipe(
                "F4",
                vec![
                    part(&g, "C4", &["1", "a3b", "a8b"], "H", &["b"]),
                    part(&g, "C5", &["a4", "a7", "a5"], "H", &["b"]),
                ],
            ),
        )
        .unwrap();
        assert_eq!(f.cycles().len(), 8);
        let stab = factor_stabilizer(&g, &f);
        assert_eq!(stab, g.subgroup_closure(&[g.parse_element("b").unwrap()]));
        assert_eq!(factor_orbit(&g, &f).len(), 6);
    }

    #[test]
    fn overlap_is_a_defect() {
        let g = build_group(GroupId::Dicyclic24).unwrap();
        let bad = recipe("F", vec![part(&g, "C4", &["1", "a3b", "a8b"], "G", &[])]);
        assert!(matches!(try_assemble(&g, &bad), Err(RecipeDefect::Overlap(_))));
        let gap = recipe("F", vec![part(&g, "C4", &["1", "a3b", "a8b"], "H", &["b"])]);
        assert!(matches!(try_assemble(&g, &gap), Err(RecipeDefect::Gap(_))));
        assert!(matches!(assemble_factor(&g, &gap), Err(Error::InvalidRecipe(_))));
    }
}
