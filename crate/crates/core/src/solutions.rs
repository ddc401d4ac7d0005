//! The nine embedded solutions, the solution file format and the
//! solution-level verifier that layers data claims on top of
//! [`verify_factorization`].
//!
//! A solution file is TOML:
//!
//! ```toml
//! id = "24-9-2"
//! group = "Q24"                 # "2O", "Q24" or "SL23"
//!
//! [subgroups]                   # name -> generators; "G" is the whole group
//! H = ["b"]
//!
//! [cycles]                      # name -> vertices, in cycle order
//! C4 = ["1", "a3b", "a8b"]
//! C5 = ["a4", "a7", "a5"]
//!
//! [[factors]]                   # one 2-factor: union of Orb_subgroup(cycle)
//! cycles = ["C4", "C5"]
//! subgroup = "H"
//!
//! [expected]
//! v = 24
//! r = 9
//! s = 2
//!
//! [annotations]                 # optional, all keys optional
//! factor_orbit_lengths = [6]
//! notes = ["free text"]
//! printed_cycles = { C4 = ["..."] }
//! [annotations.stabilizers]     # "trivial" or "vertex-set"
//! C4 = "trivial"
//! [annotations.printed_omega]
//! C4 = { label = "Omega4", elements = ["a3b", "a2b", "a5"] }
//! ```
//!
//! Unknown keys are rejected.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::cayley::ConnectionSet;
use crate::certificate::{ClaimCheck, FactorizationCertificate, OmegaListingDiff};
use crate::error::{Error, Result};
use crate::factorization::{
    factor_orbit, hwp_feasibility, try_assemble, verify_factorization, FactorRecipe, HwpParams,
    RecipePart,
};
use crate::group::{build_group, Elem, FiniteGroup, GroupId, Subgroup};
use crate::orbit::{partial_differences, CycleSeq};

/// Name reserved for the whole group in `subgroup` fields.
pub const WHOLE_GROUP: &str = "G";

const EMBEDDED: [(&str, &str); 9] = [
    ("48-5-18", include_str!("../data/48-5-18.toml")),
    ("48-7-16", include_str!("../data/48-7-16.toml")),
    ("48-9-14", include_str!("../data/48-9-14.toml")),
    ("48-13-10", include_str!("../data/48-13-10.toml")),
    ("48-15-8", include_str!("../data/48-15-8.toml")),
    ("48-17-6", include_str!("../data/48-17-6.toml")),
    ("24-7-4", include_str!("../data/24-7-4.toml")),
    ("24-9-2", include_str!("../data/24-9-2.toml")),
    ("24-5-6", include_str!("../data/24-5-6.toml")),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub cycles: Vec<String>,
    pub subgroup: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrintedOmega {
    pub label: String,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Annotations {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factor_orbit_lengths: Vec<usize>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub printed_cycles: IndexMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub stabilizers: IndexMap<String, String>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub printed_omega: IndexMap<String, PrintedOmega>,
}

impl Annotations {
    fn is_empty(&self) -> bool {
        *self == Annotations::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionSpec {
    pub id: String,
    pub group: GroupId,
    #[serde(default)]
    pub subgroups: IndexMap<String, Vec<String>>,
    pub cycles: IndexMap<String, Vec<String>>,
    pub factors: Vec<FactorSpec>,
    pub expected: HwpParams,
    #[serde(default, skip_serializing_if = "Annotations::is_empty")]
    pub annotations: Annotations,
}

/// Ids of the embedded solutions, 48 first, in a fixed order.
pub fn list_solutions() -> Vec<&'static str> {
    EMBEDDED.iter().map(|(id, _)| *id).collect()
}

pub fn load_solution(id: &str) -> Result<SolutionSpec> {
    let (_, text) = EMBEDDED
        .iter()
        .find(|(k, _)| *k == id)
        .ok_or_else(|| Error::UnknownSolution(id.to_string()))?;
    SolutionSpec::from_toml_str(text)
}

/// An embedded id, or else a path to a solution file.
pub fn load_solution_or_file(id_or_path: &str) -> Result<SolutionSpec> {
    if list_solutions().contains(&id_or_path) {
        load_solution(id_or_path)
    } else if Path::new(id_or_path).exists() {
        SolutionSpec::from_file(id_or_path)
    } else {
        Err(Error::UnknownSolution(id_or_path.to_string()))
    }
}

/// Solution data turned into group objects.
#[derive(Clone, Debug)]
pub struct ResolvedSolution {
    pub group: FiniteGroup,
    pub subgroups: IndexMap<String, Subgroup>,
    pub cycles: IndexMap<String, CycleSeq>,
    pub recipes: Vec<FactorRecipe>,
}

impl ResolvedSolution {
    pub fn subgroup(&self, name: &str) -> Result<&Subgroup> {
        self.subgroups.get(name).ok_or_else(|| Error::Undefined {
            kind: "subgroup",
            name: name.to_string(),
        })
    }

    pub fn cycle(&self, name: &str) -> Result<&CycleSeq> {
        self.cycles.get(name).ok_or_else(|| Error::Undefined {
            kind: "cycle",
            name: name.to_string(),
        })
    }
}

impl SolutionSpec {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let spec: SolutionSpec = toml::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("solution serializes")
    }

    /// Names referenced by factors exist; the expected parameters are
    /// admissible.
    pub fn validate(&self) -> Result<()> {
        if self.subgroups.contains_key(WHOLE_GROUP) {
            return Err(Error::Document(format!("subgroup name {WHOLE_GROUP:?} is reserved")));
        }
        if self.factors.is_empty() {
            return Err(Error::Document("no factors".into()));
        }
        for f in &self.factors {
            if f.cycles.is_empty() {
                return Err(Error::Document("a factor lists no cycles".into()));
            }
            for c in &f.cycles {
                if !self.cycles.contains_key(c) {
                    return Err(Error::Undefined { kind: "cycle", name: c.clone() });
                }
            }
            if f.subgroup != WHOLE_GROUP && !self.subgroups.contains_key(&f.subgroup) {
                return Err(Error::Undefined {
                    kind: "subgroup",
                    name: f.subgroup.clone(),
                });
            }
        }
        let a = &self.annotations;
        for name in a.stabilizers.keys().chain(a.printed_omega.keys()).chain(a.printed_cycles.keys()) {
            if !self.cycles.contains_key(name) {
                return Err(Error::Undefined { kind: "cycle", name: name.clone() });
            }
        }
        for claim in a.stabilizers.values() {
            if claim != "trivial" && claim != "vertex-set" {
                return Err(Error::Document(format!(
                    "stabilizer claim {claim:?} is neither \"trivial\" nor \"vertex-set\""
                )));
            }
        }
        let e = self.expected;
        hwp_feasibility(e.v, e.r, e.s).map_err(|why| Error::Document(format!("expected {e}: {why}")))?;
        Ok(())
    }

    /// Parses every element. Repeated or too few vertices give
    /// [`Error::InvalidCycle`]; everything else is an input error.
    pub fn resolve(&self) -> Result<ResolvedSolution> {
        let group = build_group(self.group)?;
        let mut subgroups = IndexMap::new();
        subgroups.insert(WHOLE_GROUP.to_string(), group.whole());
        for (name, gens) in &self.subgroups {
            let gens = gens
                .iter()
                .map(|t| group.parse_element(t))
                .collect::<Result<Vec<Elem>>>()?;
            subgroups.insert(name.clone(), group.subgroup_closure(&gens));
        }
        let mut cycles = IndexMap::new();
        for (name, texts) in &self.cycles {
            let vertices = texts
                .iter()
                .map(|t| group.parse_element(t))
                .collect::<Result<Vec<Elem>>>()?;
            let mut seen = BTreeSet::new();
            if let Some(&dup) = vertices.iter().find(|&&v| !seen.insert(v)) {
                return Err(Error::InvalidCycle(format!(
                    "{name} visits {} twice",
                    group.name(dup)
                )));
            }
            let cycle = CycleSeq::new(vertices).map_err(|e| match e {
                Error::InvalidCycle(msg) => Error::InvalidCycle(format!("{name}: {msg}")),
                other => other,
            })?;
            cycles.insert(name.clone(), cycle);
        }
        let recipes = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| FactorRecipe {
                name: format!("F{}", i + 1),
                parts: f
                    .cycles
                    .iter()
                    .map(|c| RecipePart {
                        cycle_name: c.clone(),
                        cycle: cycles[c].clone(),
                        subgroup_name: f.subgroup.clone(),
                        subgroup: subgroups[&f.subgroup].clone(),
                    })
                    .collect(),
            })
            .collect();
        Ok(ResolvedSolution {
            group,
            subgroups,
            cycles,
            recipes,
        })
    }
}

/// Full check of a solution: the factorization itself, the declared
/// parameters, stabilizer and orbit-length claims, and a diff of every
/// printed difference listing.
///
/// `Err` means the input could not be interpreted; a malformed cycle or any
/// failed check gives `Ok` with a failed certificate.
pub fn verify_solution(spec: &SolutionSpec) -> Result<FactorizationCertificate> {
    let resolved = match spec.resolve() {
        Ok(r) => r,
        Err(Error::InvalidCycle(msg)) => {
            let mut cert = FactorizationCertificate::rejected(
                Some(spec.group),
                Some(spec.id.clone()),
                vec![format!("invalid cycle: {msg}")],
            );
            cert.declared = Some(spec.expected);
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    let group = &resolved.group;
    let mut cert = verify_factorization(group, &resolved.recipes);
    cert.solution = Some(spec.id.clone());
    cert.declared = Some(spec.expected);

    let params_hold = cert.computed == Some(spec.expected);
    cert.claims.push(ClaimCheck {
        subject: "parameters".into(),
        claimed: spec.expected.to_string(),
        computed: cert.computed.map(|p| p.to_string()).unwrap_or_else(|| "none".into()),
        holds: params_hold,
    });
    if !params_hold {
        cert.failures.push(format!(
            "declared {} but computed {}",
            spec.expected,
            cert.computed.map(|p| p.to_string()).unwrap_or_else(|| "no uniform factor counts".into())
        ));
    }

    let a = &spec.annotations;
    for (name, claim) in &a.stabilizers {
        let computed = cert
            .base_cycles
            .iter()
            .find(|c| &c.name == name)
            .map(|c| c.stabilizer.clone())
            .unwrap_or_else(|| "unused".into());
        let holds = *claim == computed;
        if !holds {
            cert.failures.push(format!("stabilizer of {name}: claimed {claim}, computed {computed}"));
        }
        cert.claims.push(ClaimCheck {
            subject: format!("stabilizer of {name}"),
            claimed: claim.clone(),
            computed,
            holds,
        });
    }
    if !a.factor_orbit_lengths.is_empty() {
        if a.factor_orbit_lengths.len() != spec.factors.len() {
            cert.failures.push(format!(
                "{} orbit lengths claimed for {} factors",
                a.factor_orbit_lengths.len(),
                spec.factors.len()
            ));
        }
        for (f, &claimed) in cert.factors.iter().zip(&a.factor_orbit_lengths) {
            let holds = f.orbit_length == claimed;
            if !holds {
                cert.failures.push(format!(
                    "orbit of {}: claimed length {claimed}, computed {}",
                    f.name, f.orbit_length
                ));
            }
            cert.claims.push(ClaimCheck {
                subject: format!("orbit length of {}", f.name),
                claimed: claimed.to_string(),
                computed: f.orbit_length.to_string(),
                holds,
            });
        }
    }

    for (name, printed) in &a.printed_omega {
        let omega = partial_differences(group, &resolved.cycles[name]);
        let listed = printed
            .elements
            .iter()
            .map(|t| group.parse_element(t))
            .collect::<Result<Vec<Elem>>>()?;
        let listed = match ConnectionSet::symmetric_closure(group, listed) {
            Ok(s) => s,
            Err(_) => {
                cert.discrepancies.push(format!("printed {} lists the identity", printed.label));
                continue;
            }
        };
        let missing: Vec<String> = omega.set().difference(listed.set()).iter().map(|g| group.name(g)).collect();
        let extra: Vec<String> = listed.set().difference(omega.set()).iter().map(|g| group.name(g)).collect();
        let matches = missing.is_empty() && extra.is_empty();
        if !matches {
            cert.discrepancies.push(format!(
                "printed {} for {name} differs from the recomputed differences",
                printed.label
            ));
        }
        cert.omega_listings.push(OmegaListingDiff {
            cycle: name.clone(),
            label: printed.label.clone(),
            printed: printed.elements.clone(),
            missing_from_printed: missing,
            extra_in_printed: extra,
            matches,
        });
    }
    for (name, printed) in &a.printed_cycles {
        cert.discrepancies.push(format!(
            "printed {name} = ({}) replaced by ({})",
            printed.join(", "),
            spec.cycles[name].join(", ")
        ));
    }
    cert.discrepancies.extend(a.notes.iter().cloned());
    cert.finish();
    Ok(cert)
}

/// Graphviz rendering of the whole factorization; each edge is labelled with
/// the factor `F<i>.<t>` (factor, translate) it belongs to.
pub fn solution_dot(spec: &SolutionSpec) -> Result<String> {
    let resolved = spec.resolve()?;
    let group = &resolved.group;
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", spec.id);
    let _ = writeln!(out, "  node [shape=circle];");
    for v in group.elements() {
        let _ = writeln!(out, "  \"{}\";", group.name(v));
    }
    for recipe in &resolved.recipes {
        let factor = try_assemble(group, recipe)
            .map_err(|d| Error::InvalidRecipe(format!("{}: {}", recipe.name, d.describe(group))))?;
        for (t, (_, f)) in factor_orbit(group, &factor).iter().enumerate() {
            for e in f.edges() {
                let (x, y) = e.ends();
                let _ = writeln!(
                    out,
                    "  \"{}\" -- \"{}\" [label=\"{}.{t}\"];",
                    group.name(x),
                    group.name(y),
                    recipe.name
                );
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_ids() {
        let ids = list_solutions();
        assert_eq!(ids.len(), 9);
        assert_eq!(ids.iter().collect::<BTreeSet<_>>().len(), 9);
        for id in ids {
            let s = load_solution(id).unwrap();
            assert_eq!(s.id, id);
            let e = s.expected;
            assert!(e.r + e.s == 23 || e.r + e.s == 11);
        }
    }

    #[test]
    fn assignments() {
        let s = load_solution("48-7-16").unwrap();
        assert_eq!(s.cycles.len(), 7);
        let subs: Vec<&str> = s.factors.iter().map(|f| f.subgroup.as_str()).collect();
        assert_eq!(subs, ["K", "K", "G", "L", "L", "L", "L"]);
        let s = load_solution("24-9-2").unwrap();
        assert_eq!(s.cycles.len(), 5);
        assert_eq!(s.factors[3].cycles, ["C4", "C5"]);
        let s = load_solution("24-5-6").unwrap();
        let subs: Vec<&str> = s.factors.iter().map(|f| f.subgroup.as_str()).collect();
        assert_eq!(subs, ["Q", "G", "G", "G", "G", "H"]);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = load_solution("24-9-2").unwrap().to_toml_string();
        let bad = text.replacen("[expected]", "[expected]\nw = 1", 1);
        assert!(matches!(SolutionSpec::from_toml_str(&bad), Err(Error::Document(_))));
        assert!(matches!(load_solution("24-9-3"), Err(Error::UnknownSolution(_))));
    }

    #[test]
    fn toml_round_trip() {
        for id in list_solutions() {
            let s = load_solution(id).unwrap();
            let again = SolutionSpec::from_toml_str(&s.to_toml_string()).unwrap();
            assert_eq!(s, again);
        }
    }

    #[test]
    fn undefined_names() {
        let mut s = load_solution("24-9-2").unwrap();
        s.factors[0].subgroup = "Z".into();
        assert!(matches!(s.validate(), Err(Error::Undefined { .. })));
    }

    #[test]
    fn verifies_dicyclic() {
        let cert = verify_solution(&load_solution("24-9-2").unwrap()).unwrap();
        assert!(cert.is_verified(), "{:?}", cert.failures);
        assert_eq!(cert.computed, Some(HwpParams { v: 24, r: 9, s: 2 }));
    }

    #[test]
    fn repeated_vertex_fails_without_error() {
        let mut s = load_solution("24-9-2").unwrap();
        s.cycles["C3"][1] = "1".into();
        let cert = verify_solution(&s).unwrap();
        assert!(!cert.is_verified());
        assert!(cert.witness().unwrap().contains("C3"));
    }
}
