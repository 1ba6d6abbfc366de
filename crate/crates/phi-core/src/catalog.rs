//! Named collections of groups and the batch verification runner.
//!
//! The default catalog covers, with positive and negative instances, every
//! family the classification touches: cyclic groups, elementary abelian
//! groups, the five order-p^3 types for p in {2, 3, 5}, generalized
//! quaternion and dihedral 2-groups, small symmetric/alternating groups,
//! Schmidt semidirect products, and mixed direct products.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{
    self, is_schmidt, recognize_p_group, schmidt_structure_report_with_lattice, SchmidtReport,
    VerdictReport,
};
use crate::arith::prime_power_base;
use crate::construct::{q8_order3_action, Descriptor};
use crate::error::{GroupError, Result};
use crate::group::{GroupTable, PhiReport};
use crate::lattice::all_subgroups;
use crate::par;
use crate::Limits;

/// One named catalog entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub descriptor: Descriptor,
}

/// A list of named groups plus optional budget overrides.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogSpec {
    pub entries: Vec<CatalogEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_lattice: Option<usize>,
}

impl CatalogSpec {
    pub fn from_json(text: &str) -> Result<CatalogSpec> {
        let spec: CatalogSpec =
            serde_json::from_str(text).map_err(|e| GroupError::Parse(format!("catalog: {e}")))?;
        spec.check_names()?;
        Ok(spec)
    }

    pub fn to_json_pretty(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("catalog serialization");
        out.push('\n');
        out
    }

    pub fn limits(&self) -> Limits {
        let default = Limits::default();
        Limits {
            max_group_order: self.max_order.unwrap_or(default.max_group_order),
            max_lattice_order: self.max_lattice.unwrap_or(default.max_lattice_order),
        }
    }

    fn check_names(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            if !seen.insert(e.name.as_str()) {
                return Err(GroupError::Parse(format!(
                    "duplicate catalog name {:?}",
                    e.name
                )));
            }
        }
        Ok(())
    }

    /// Builds every entry, resolving cayley_file paths against `base_dir`.
    pub fn build_all(&self, base_dir: &Path) -> Result<Vec<(String, GroupTable)>> {
        self.check_names()?;
        let limits = self.limits();
        par::map_slice(&self.entries, |e| {
            e.descriptor
                .build(&limits, base_dir)
                .map(|g| (e.name.clone(), g))
                .map_err(|err| GroupError::Parse(format!("entry {:?}: {err}", e.name)))
        })
        .into_iter()
        .collect()
    }
}

/// Everything the runner computed for one catalog entry.
#[derive(Debug, Clone, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub order: usize,
    pub phi_report: PhiReport,
    pub verdict: VerdictReport,
    /// Lower-central-series nilpotency agrees with the all-sections test.
    pub nilpotency_cross_check: bool,
    /// For p-groups: divisibility holds iff the shape is admissible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_group_check: Option<bool>,
    /// Structure clauses, for Schmidt entries.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schmidt: Option<SchmidtReport>,
    pub ok: bool,
}

/// Result of a full catalog verification run.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogRunReport {
    pub entries: Vec<EntryResult>,
    /// Names of non-nilpotent entries whose subgroups all have nonzero phi.
    pub nonnilpotent_with_positive_subgroup_phi: Vec<String>,
    pub all_ok: bool,
}

fn evaluate_entry(name: &str, g: &GroupTable, limits: &Limits) -> Result<EntryResult> {
    let lattice = all_subgroups(g, limits)?;
    let verdict = analysis::verify_group_with_lattice(g, &lattice)?;
    let nilpotency_cross_check =
        analysis::is_nilpotent_by_sections(g, limits)? == verdict.nilpotent;
    let p_group_check = match prime_power_base(g.order()) {
        Some(_) => Some(verdict.cond2.holds == recognize_p_group(g)?.is_admissible()),
        None => None,
    };
    let schmidt = if is_schmidt(g, &lattice) {
        Some(schmidt_structure_report_with_lattice(g, &lattice, limits)?)
    } else {
        None
    };
    let ok = verdict.agrees
        && nilpotency_cross_check
        && p_group_check.unwrap_or(true)
        && schmidt.as_ref().is_none_or(SchmidtReport::all_clauses_hold);
    Ok(EntryResult {
        name: name.to_string(),
        order: g.order(),
        phi_report: g.phi_report(),
        verdict,
        nilpotency_cross_check,
        p_group_check,
        schmidt,
        ok,
    })
}

/// Runs the full verification battery over every entry. Entries run in
/// parallel; the report is merged in catalog order, so the output is
/// deterministic at any thread count.
pub fn run_catalog(spec: &CatalogSpec, base_dir: &Path) -> Result<CatalogRunReport> {
    let limits = spec.limits();
    let groups = spec.build_all(base_dir)?;
    let entries: Vec<EntryResult> =
        par::map_slice(&groups, |(name, g)| evaluate_entry(name, g, &limits))
            .into_iter()
            .collect::<Result<_>>()?;

    let nonnilpotent_with_positive_subgroup_phi = entries
        .iter()
        .filter(|e| !e.verdict.nilpotent && e.verdict.cond1.holds)
        .map(|e| e.name.clone())
        .collect();
    let all_ok = entries.iter().all(|e| e.ok);
    Ok(CatalogRunReport {
        entries,
        nonnilpotent_with_positive_subgroup_phi,
        all_ok,
    })
}

/// Tab-separated summary, one row per entry.
pub fn to_tsv(report: &CatalogRunReport) -> String {
    let mut out = String::from(
        "name\torder\texp\tphi\tcond1\tcond2\tnilpotent\tshapes\tclassified\tagrees\n",
    );
    for e in &report.entries {
        let shapes = if e.verdict.sylow_shapes.is_empty() {
            "-".to_string()
        } else {
            e.verdict
                .sylow_shapes
                .iter()
                .map(|(p, s)| format!("{p}:{s}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            e.name,
            e.order,
            e.phi_report.exponent,
            e.phi_report.phi,
            e.verdict.cond1.holds,
            e.verdict.cond2.holds,
            e.verdict.nilpotent,
            shapes,
            e.verdict.classified,
            e.verdict.agrees,
        ));
    }
    out
}

pub fn to_json_pretty(report: &CatalogRunReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serialization");
    out.push('\n');
    out
}

fn cyclic(n: usize) -> Descriptor {
    Descriptor::Cyclic { n }
}

fn product(factors: Vec<Descriptor>) -> Descriptor {
    Descriptor::DirectProduct { factors }
}

/// The catalog shipped with the project: positive and negative instances
/// for every family the classification touches, all with order at most 256.
pub fn default_catalog() -> CatalogSpec {
    let mut entries = Vec::new();
    let mut add = |name: &str, descriptor: Descriptor| {
        entries.push(CatalogEntry {
            name: name.to_string(),
            descriptor,
        });
    };

    for n in [
        1usize, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15, 16, 18, 20, 21, 24, 27, 30, 32, 36, 48,
        60, 64, 81, 100, 125,
    ] {
        add(&format!("Z{n}"), cyclic(n));
    }

    for (p, k) in [
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 2),
        (3, 3),
        (3, 4),
        (5, 2),
        (5, 3),
    ] {
        add(&format!("Z{p}^{k}"), Descriptor::ElementaryAbelian { p, k });
    }

    for p in [2usize, 3, 5] {
        add(
            &format!("Z{p}xZ{}", p * p),
            product(vec![cyclic(p), cyclic(p * p)]),
        );
    }

    for p in [3usize, 5] {
        add(&format!("M{}", p * p * p), Descriptor::ModularMP3 { p });
        add(
            &format!("E{}", p * p * p),
            Descriptor::ExtraspecialEP3 { p },
        );
    }

    for order in [8usize, 16, 32] {
        add(
            &format!("Q{order}"),
            Descriptor::GeneralizedQuaternion { order },
        );
    }

    for order in [8usize, 10, 12, 16, 20, 24, 28, 32] {
        add(&format!("D{order}"), Descriptor::Dihedral { order });
    }

    add("S3", Descriptor::Symmetric { n: 3 });
    add("S4", Descriptor::Symmetric { n: 4 });
    add("A4", Descriptor::Alternating { n: 4 });

    for (p, q, q_exp) in [(2, 3, 1), (2, 3, 2), (3, 2, 1)] {
        add(
            &format!("schmidt_{p}_{q}_{q_exp}"),
            Descriptor::Schmidt { p, q, q_exp },
        );
    }

    let (_, _, action) = q8_order3_action().expect("order-3 action on Q8");
    add(
        "Q8:Z3",
        Descriptor::SemidirectProduct {
            normal: Box::new(Descriptor::GeneralizedQuaternion { order: 8 }),
            acting: Box::new(cyclic(3)),
            action: action.maps().to_vec(),
        },
    );

    add(
        "Q8xZ3",
        product(vec![
            Descriptor::GeneralizedQuaternion { order: 8 },
            cyclic(3),
        ]),
    );
    add(
        "Q8xZ5",
        product(vec![
            Descriptor::GeneralizedQuaternion { order: 8 },
            cyclic(5),
        ]),
    );
    add("Z3xZ3xZ2", product(vec![cyclic(3), cyclic(3), cyclic(2)]));
    add("Z9xZ2xZ2", product(vec![cyclic(9), cyclic(2), cyclic(2)]));
    add(
        "Z4xQ8",
        product(vec![
            cyclic(4),
            Descriptor::GeneralizedQuaternion { order: 8 },
        ]),
    );

    CatalogSpec {
        entries,
        max_order: None,
        max_lattice: None,
    }
}
