//! Verification certificates and their two renderings: canonical JSON
//! (stable field order, ASCII element names) and a human-readable report.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::factorization::HwpParams;
use crate::group::GroupId;

pub const CERTIFICATE_FORMAT: &str = "hwp-certificate/1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    #[default]
    Failed,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseCycleReport {
    pub name: String,
    pub vertices: Vec<String>,
    pub length: usize,
    pub stabilizer_order: usize,
    /// `trivial`, `vertex-set` or `other`.
    pub stabilizer: String,
    pub omega: Vec<String>,
    pub omega_text: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartReport {
    pub cycle: String,
    pub subgroup: String,
    pub subgroup_order: usize,
    pub sub_orbit_length: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub name: String,
    pub parts: Vec<PartReport>,
    pub cycles: usize,
    pub cycle_length: Option<usize>,
    pub kind: String,
    pub declared_stabilizer: Option<String>,
    pub stabilizer_order: usize,
    pub stabilizer_matches: bool,
    pub orbit_length: usize,
    /// Right-coset representatives `h`; the orbit is `{F·h}`.
    pub translators: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSummary {
    pub sizes: Vec<usize>,
    pub union_size: usize,
    pub target_size: usize,
    pub overlaps: Vec<String>,
    pub gaps: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageSummary {
    /// `v(v-2)/2`.
    pub edges_expected: usize,
    pub covered_once: usize,
    pub uncovered: usize,
    pub overcovered: usize,
    pub matching_edges_used: usize,
    pub total_edge_uses: usize,
    pub witness: Option<String>,
    pub passed: bool,
}

/// Recomputed differences against a printed listing (closed under inversion
/// before comparing).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaListingDiff {
    pub cycle: String,
    pub label: String,
    pub printed: Vec<String>,
    pub missing_from_printed: Vec<String>,
    pub extra_in_printed: Vec<String>,
    pub matches: bool,
}

/// A checked statement about the data: stabilizer type, orbit length, or
/// the declared parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub subject: String,
    pub claimed: String,
    pub computed: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationCertificate {
    pub format: String,
    pub solution: Option<String>,
    pub group: Option<GroupId>,
    pub order: usize,
    pub declared: Option<HwpParams>,
    pub computed: Option<HwpParams>,
    pub verdict: Verdict,
    pub base_cycles: Vec<BaseCycleReport>,
    pub factors: Vec<FactorReport>,
    pub partition: PartitionSummary,
    pub coverage: CoverageSummary,
    pub g_regular: bool,
    pub claims: Vec<ClaimCheck>,
    pub omega_listings: Vec<OmegaListingDiff>,
    pub discrepancies: Vec<String>,
    pub failures: Vec<String>,
    /// sha256 over the edge-to-factor assignment.
    pub checksum: String,
}

impl FactorizationCertificate {
    pub fn new(group: GroupId, order: usize) -> Self {
        FactorizationCertificate {
            format: CERTIFICATE_FORMAT.into(),
            group: Some(group),
            order,
            ..Default::default()
        }
    }

    /// A certificate for input that could not even be expanded.
    pub fn rejected(group: Option<GroupId>, solution: Option<String>, failures: Vec<String>) -> Self {
        FactorizationCertificate {
            format: CERTIFICATE_FORMAT.into(),
            group,
            solution,
            failures,
            verdict: Verdict::Failed,
            ..Default::default()
        }
    }

    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    /// First failure, used as the witness in short reports.
    pub fn witness(&self) -> Option<&str> {
        self.failures.first().map(String::as_str)
    }

    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let title = self
            .computed
            .or(self.declared)
            .map(|p| p.to_string())
            .unwrap_or_else(|| "HWP(?)".into());
        let _ = writeln!(
            out,
            "{} {} over {}: {}",
            self.solution.as_deref().unwrap_or("input"),
            title,
            self.group.map(|g| g.as_str()).unwrap_or("?"),
            match self.verdict {
                Verdict::Verified => "VERIFIED",
                Verdict::Failed => "FAILED",
            }
        );
        if let (Some(d), Some(c)) = (self.declared, self.computed) {
            if d != c {
                let _ = writeln!(out, "  declared {d}, computed {c}");
            }
        }
        let _ = writeln!(out, "base cycles:");
        for c in &self.base_cycles {
            let _ = writeln!(
                out,
                "  {} = ({})  stabilizer {} (order {})  Omega = {}",
                c.name,
                unicode(&c.vertices.join(", ")),
                c.stabilizer,
                c.stabilizer_order,
                unicode(&c.omega_text)
            );
        }
        let _ = writeln!(out, "factors:");
        for f in &self.factors {
            let parts: Vec<String> = f
                .parts
                .iter()
                .map(|p| format!("Orb_{}({})", p.subgroup, p.cycle))
                .collect();
            let _ = writeln!(
                out,
                "  {} = {}  {} x {}  |Stab| = {}  orbit length {}",
                f.name,
                parts.join(" ∪ "),
                f.cycles,
                f.kind,
                f.stabilizer_order,
                f.orbit_length
            );
        }
        let p = &self.partition;
        let _ = writeln!(
            out,
            "partition: sizes {:?}, union {} of {}{}",
            p.sizes,
            p.union_size,
            p.target_size,
            if p.passed { "" } else { " (FAILED)" }
        );
        let c = &self.coverage;
        let _ = writeln!(
            out,
            "coverage: {} of {} edges covered exactly once, {} uncovered, {} multiply covered",
            c.covered_once, c.edges_expected, c.uncovered, c.overcovered
        );
        let _ = writeln!(out, "G-regular: {}", if self.g_regular { "yes" } else { "no" });
        for claim in self.claims.iter().filter(|c| !c.holds) {
            let _ = writeln!(
                out,
                "claim fails: {} claimed {}, computed {}",
                claim.subject, claim.claimed, claim.computed
            );
        }
        for d in self.omega_listings.iter().filter(|d| !d.matches) {
            let _ = writeln!(
                out,
                "printed {} for {}: missing {:?}, extra {:?}",
                d.label,
                d.cycle,
                d.missing_from_printed.iter().map(|s| unicode(s)).collect::<Vec<_>>(),
                d.extra_in_printed.iter().map(|s| unicode(s)).collect::<Vec<_>>()
            );
        }
        if !self.omega_listings.is_empty() && self.omega_listings.iter().all(|d| d.matches) {
            let _ = writeln!(out, "printed difference listings: all {} match", self.omega_listings.len());
        }
        for d in &self.discrepancies {
            let _ = writeln!(out, "note: {d}");
        }
        for f in &self.failures {
            let _ = writeln!(out, "failure: {}", unicode(f));
        }
        let _ = writeln!(out, "checksum: {}", self.checksum);
        out
    }
}

/// ASCII element text to the display form.
pub fn unicode(text: &str) -> String {
    text.replace("1/r2(", "1/√2(").replace("+-1", "±1")
}
