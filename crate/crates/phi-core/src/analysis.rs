//! The structural predicates behind the phi-divisibility classification:
//! Sylow decomposition, two independent nilpotency tests, the positivity
//! and divisibility conditions on subgroup phi values, p-group shape
//! recognition, and structure checks for minimal non-nilpotent (Schmidt)
//! groups.
//!
//! The headline fact these pieces verify, exhaustively per group: when every
//! subgroup of G has nonzero phi, nested subgroups have dividing phi values
//! exactly when G is nilpotent with every Sylow subgroup cyclic, quaternion
//! of order 8, or p x p.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::arith::{factorize, is_prime, prime_power_base};
use crate::construct::multiplicative_order;
use crate::error::{GroupError, Result};
use crate::group::{ElementId, GroupTable};
use crate::lattice::{self, all_subgroups, Lattice, SubgroupSet};
use crate::par;
use crate::Limits;

/// Divisibility with the phi = 0 convention: 0 divides only 0, and
/// everything divides 0.
pub fn phi_divides(phi_sub: usize, phi_sup: usize) -> bool {
    if phi_sub == 0 {
        phi_sup == 0
    } else {
        phi_sup.is_multiple_of(phi_sub)
    }
}

/// Shape of a p-group as far as the classification cares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SylowShape {
    #[serde(rename = "cyclic")]
    Cyclic,
    #[serde(rename = "Q8")]
    Q8,
    #[serde(rename = "p_by_p")]
    PByP,
    #[serde(rename = "generalized_quaternion")]
    GeneralizedQuaternion,
    #[serde(rename = "other")]
    Other,
}

impl SylowShape {
    /// Shapes allowed by the classification: cyclic, Q8, or p x p.
    pub fn is_admissible(self) -> bool {
        matches!(self, SylowShape::Cyclic | SylowShape::Q8 | SylowShape::PByP)
    }

    /// Collapses to the four-way shape reported in verdicts.
    pub fn reduced(self) -> SylowShape {
        match self {
            SylowShape::GeneralizedQuaternion => SylowShape::Other,
            s => s,
        }
    }
}

impl fmt::Display for SylowShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SylowShape::Cyclic => "cyclic",
            SylowShape::Q8 => "Q8",
            SylowShape::PByP => "p_by_p",
            SylowShape::GeneralizedQuaternion => "generalized_quaternion",
            SylowShape::Other => "other",
        };
        f.write_str(s)
    }
}

/// Recognizes the shape of a p-group from its spectrum, with fixed
/// precedence: cyclic, then Q8, then p x p, then generalized quaternion.
pub fn recognize_p_group(g: &GroupTable) -> Result<SylowShape> {
    let order = g.order();
    let p = prime_power_base(order).ok_or(GroupError::NotPrimePower { order })?;
    let spectrum = g.order_spectrum();
    if spectrum.count_of(order) > 0 {
        return Ok(SylowShape::Cyclic);
    }
    let q8_spectrum = [(1, 1), (2, 1), (4, 6)].into_iter().collect();
    if order == 8 && !g.is_abelian() && spectrum == q8_spectrum {
        return Ok(SylowShape::Q8);
    }
    if order == p * p && spectrum.exponent() == p {
        return Ok(SylowShape::PByP);
    }
    if order >= 8 && order.is_power_of_two() && spectrum.count_of(2) == 1 {
        return Ok(SylowShape::GeneralizedQuaternion);
    }
    Ok(SylowShape::Other)
}

/// One prime's worth of Sylow data.
#[derive(Debug, Clone, Serialize)]
pub struct SylowComponent {
    pub prime: usize,
    pub valuation: u32,
    pub subgroup: SubgroupSet,
    pub unique: bool,
}

/// The first Sylow p-subgroup in canonical lattice order, plus whether it
/// is the only one (equivalently, normal).
pub fn sylow_subgroup(g: &GroupTable, lattice: &Lattice, p: usize) -> Result<(SubgroupSet, bool)> {
    if !is_prime(p) {
        return Err(GroupError::InvalidParameter(format!(
            "sylow_subgroup: {p} is not prime"
        )));
    }
    let valuation = factorize(g.order())
        .into_iter()
        .find(|&(q, _)| q == p)
        .map(|(_, v)| v)
        .ok_or(GroupError::PrimeDoesNotDivide {
            p,
            order: g.order(),
        })?;
    let target = p.pow(valuation);
    let mut found = None;
    let mut count = 0;
    for s in lattice.subgroups() {
        if s.order() == target {
            count += 1;
            if found.is_none() {
                found = Some(s.clone());
            }
        }
    }
    let subgroup = found.ok_or_else(|| {
        GroupError::Inconsistent(format!(
            "no subgroup of order {target} in a complete lattice"
        ))
    })?;
    Ok((subgroup, count == 1))
}

/// Sylow data for every prime dividing the order, ascending.
pub fn sylow_decomposition(g: &GroupTable, lattice: &Lattice) -> Result<Vec<SylowComponent>> {
    factorize(g.order())
        .into_iter()
        .map(|(prime, valuation)| {
            let (subgroup, unique) = sylow_subgroup(g, lattice, prime)?;
            Ok(SylowComponent {
                prime,
                valuation,
                subgroup,
                unique,
            })
        })
        .collect()
}

/// Lower-central-series nilpotency test, run inside the parent table on an
/// arbitrary subgroup member set.
fn is_nilpotent_subset(g: &GroupTable, members: &[ElementId]) -> bool {
    let mut current = members.to_vec();
    loop {
        let next = g.commutator_set(members, &current);
        if next.len() == current.len() {
            return next.len() == 1;
        }
        current = next;
    }
}

/// True iff the lower central series G > `[G,G]` > `[G,[G,G]]` > ... reaches
/// the trivial subgroup.
pub fn is_nilpotent(g: &GroupTable) -> bool {
    let all: Vec<ElementId> = g.elements().collect();
    is_nilpotent_subset(g, &all)
}

/// Independent nilpotency test: every section H/N has nonzero phi.
pub fn is_nilpotent_by_sections(g: &GroupTable, limits: &Limits) -> Result<bool> {
    let lattice = all_subgroups(g, limits)?;
    let sections = lattice::all_sections(g, &lattice, limits)?;
    Ok(sections.iter().all(|s| s.quotient.quotient.phi() != 0))
}

/// Outcome of the positivity condition: phi nonzero on every subgroup.
#[derive(Debug, Clone, Serialize)]
pub struct PositivityCheck {
    pub holds: bool,
    /// A minimal-order subgroup with phi = 0, when the condition fails.
    pub witness: Option<SubgroupSet>,
}

/// Outcome of the divisibility condition on nested subgroups.
#[derive(Debug, Clone, Serialize)]
pub struct DivisibilityCheck {
    pub holds: bool,
    pub witness: Option<DivisibilityWitness>,
}

/// A nested pair H inside K whose phi values fail to divide.
#[derive(Debug, Clone, Serialize)]
pub struct DivisibilityWitness {
    pub sub: SubgroupSet,
    pub sup: SubgroupSet,
    pub phi_sub: usize,
    pub phi_sup: usize,
}

/// phi(H) != 0 for every subgroup H. Witness is the first failure in
/// canonical lattice order, hence of minimal order.
pub fn phi_positive_on_subgroups(lattice: &Lattice, phis: &[usize]) -> PositivityCheck {
    for (s, &phi) in lattice.subgroups().iter().zip(phis) {
        if phi == 0 {
            return PositivityCheck {
                holds: false,
                witness: Some(s.clone()),
            };
        }
    }
    PositivityCheck {
        holds: true,
        witness: None,
    }
}

/// phi(H) divides phi(K) for every nested pair H inside K, under the
/// phi = 0 convention of [`phi_divides`]. Witness is the first failing pair
/// in canonical order.
pub fn phi_divisibility(lattice: &Lattice, phis: &[usize]) -> DivisibilityCheck {
    let subgroups = lattice.subgroups();
    for (i, h) in subgroups.iter().enumerate() {
        for (j, k) in subgroups.iter().enumerate() {
            if i == j || !h.is_subset_of(k) {
                continue;
            }
            if !phi_divides(phis[i], phis[j]) {
                return DivisibilityCheck {
                    holds: false,
                    witness: Some(DivisibilityWitness {
                        sub: h.clone(),
                        sup: k.clone(),
                        phi_sub: phis[i],
                        phi_sup: phis[j],
                    }),
                };
            }
        }
    }
    DivisibilityCheck {
        holds: true,
        witness: None,
    }
}

/// Full verdict for one group: both conditions, nilpotency, Sylow shapes,
/// the classification predicate, and whether everything agrees.
///
/// `agrees` is the per-group statement of the classification: whenever the
/// positivity condition holds, divisibility must coincide with "nilpotent
/// with admissible Sylow shapes". A false `agrees` anywhere is a finding.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub cond1: PositivityCheck,
    pub cond2: DivisibilityCheck,
    pub nilpotent: bool,
    /// Per prime, reduced to the four-way shape set of the classification.
    pub sylow_shapes: BTreeMap<usize, SylowShape>,
    pub classified: bool,
    pub agrees: bool,
}

/// The classification predicate: nilpotent with every Sylow shape in
/// {cyclic, Q8, p x p}. Carries the full (five-way) shape per prime.
#[derive(Debug, Clone)]
pub struct Classification {
    pub holds: bool,
    pub shapes: BTreeMap<usize, SylowShape>,
}

/// Evaluates the classification predicate from a precomputed lattice.
pub fn classify(g: &GroupTable, lattice: &Lattice) -> Result<Classification> {
    let mut shapes = BTreeMap::new();
    let mut all_admissible = true;
    for component in sylow_decomposition(g, lattice)? {
        let shape = recognize_p_group(&component.subgroup.as_group(g)?)?;
        all_admissible &= shape.is_admissible();
        shapes.insert(component.prime, shape);
    }
    Ok(Classification {
        holds: is_nilpotent(g) && all_admissible,
        shapes,
    })
}

/// Computes a [`VerdictReport`] from a precomputed lattice.
pub fn verify_group_with_lattice(g: &GroupTable, lattice: &Lattice) -> Result<VerdictReport> {
    let annotations = lattice::annotate(g, lattice)?;
    let phis: Vec<usize> = annotations.iter().map(|r| r.phi).collect();
    let cond1 = phi_positive_on_subgroups(lattice, &phis);
    let cond2 = phi_divisibility(lattice, &phis);
    let nilpotent = is_nilpotent(g);
    let classification = classify(g, lattice)?;
    let sylow_shapes = classification
        .shapes
        .iter()
        .map(|(&p, &s)| (p, s.reduced()))
        .collect();
    let classified = classification.holds;
    let agrees = !cond1.holds || (cond2.holds == classified);
    Ok(VerdictReport {
        cond1,
        cond2,
        nilpotent,
        sylow_shapes,
        classified,
        agrees,
    })
}

/// Builds the lattice and computes the verdict.
pub fn verify_group(g: &GroupTable, limits: &Limits) -> Result<VerdictReport> {
    let lattice = all_subgroups(g, limits)?;
    verify_group_with_lattice(g, &lattice)
}

/// For a p-group: divisibility on nested subgroups holds iff the shape is
/// cyclic, Q8, or p x p. Returns the biconditional's truth; `false` anywhere
/// is a finding.
pub fn p_group_divisibility_classification(g: &GroupTable, limits: &Limits) -> Result<bool> {
    let shape = recognize_p_group(g)?;
    let lattice = all_subgroups(g, limits)?;
    let phis: Vec<usize> = lattice::annotate(g, &lattice)?
        .iter()
        .map(|r| r.phi)
        .collect();
    let cond2 = phi_divisibility(&lattice, &phis);
    Ok(cond2.holds == shape.is_admissible())
}

/// Non-nilpotent with every proper subgroup nilpotent.
pub fn is_schmidt(g: &GroupTable, lattice: &Lattice) -> bool {
    if is_nilpotent(g) {
        return false;
    }
    let subgroups = lattice.subgroups();
    !par::any_index(subgroups.len(), |i| {
        !subgroups[i].is_full(g) && !is_nilpotent_subset(g, subgroups[i].members())
    })
}

/// Structural facts of a Schmidt group G of order p^m q^n with normal Sylow
/// p-subgroup P and cyclic Sylow q-subgroup generated by y. Every boolean
/// clause must be true; a false clause is a finding.
#[derive(Debug, Clone, Serialize)]
pub struct SchmidtReport {
    pub is_schmidt: bool,
    pub p: usize,
    pub q: usize,
    pub m: u32,
    pub n: u32,
    pub r: usize,
    /// y^q lies in the center.
    pub yq_central: bool,
    /// Z(G) equals the Frattini subgroup of G.
    pub center_eq_frattini: bool,
    /// Z(G) equals Frattini(P) * <y^q> as a set.
    #[serde(rename = "center_eq_phiP_times_yq")]
    pub center_eq_phi_p_times_yq: bool,
    /// The derived subgroup of G is exactly P.
    #[serde(rename = "derived_eq_P")]
    pub derived_eq_p: bool,
    /// P' equals Frattini(P).
    #[serde(rename = "P_derived_eq_frattini_P")]
    pub p_derived_eq_frattini_p: bool,
    /// |P / P'| = p^r with r the order of p mod q.
    pub index_formula: bool,
    /// When P is abelian: elementary abelian of order p^r and minimal
    /// normal in G. Vacuously true otherwise.
    pub abelian_case: bool,
    /// When P is non-abelian: Z(P) = P' = Frattini(P) and |P/Z(P)| = p^r.
    /// Vacuously true otherwise.
    pub nonabelian_case: bool,
    /// G/Z(G) is again Schmidt, of order p^r q.
    pub quotient_schmidt: bool,
    /// G/Z(G) has no cyclic subgroup of order pq.
    pub no_cyclic_pq: bool,
}

impl SchmidtReport {
    pub fn all_clauses_hold(&self) -> bool {
        self.is_schmidt
            && self.yq_central
            && self.center_eq_frattini
            && self.center_eq_phi_p_times_yq
            && self.derived_eq_p
            && self.p_derived_eq_frattini_p
            && self.index_formula
            && self.abelian_case
            && self.nonabelian_case
            && self.quotient_schmidt
            && self.no_cyclic_pq
    }
}

/// Evaluates every Schmidt structure clause for `g`. Errors with
/// [`GroupError::NotSchmidt`] when `g` is not a Schmidt group.
pub fn schmidt_structure_report(g: &GroupTable, limits: &Limits) -> Result<SchmidtReport> {
    let lattice = all_subgroups(g, limits)?;
    schmidt_structure_report_with_lattice(g, &lattice, limits)
}

/// Same as [`schmidt_structure_report`] with a precomputed lattice.
pub fn schmidt_structure_report_with_lattice(
    g: &GroupTable,
    lattice: &Lattice,
    limits: &Limits,
) -> Result<SchmidtReport> {
    if !is_schmidt(g, lattice) {
        return Err(GroupError::NotSchmidt);
    }

    let factors = factorize(g.order());
    if factors.len() != 2 {
        return Err(GroupError::Inconsistent(format!(
            "Schmidt group order {} should have exactly two prime factors",
            g.order()
        )));
    }
    let decomposition = sylow_decomposition(g, lattice)?;
    let normal_part = decomposition.iter().filter(|c| c.unique).count();
    if normal_part != 1 {
        return Err(GroupError::Inconsistent(
            "Schmidt group should have exactly one normal Sylow subgroup".into(),
        ));
    }
    let (p_comp, q_comp) = if decomposition[0].unique {
        (&decomposition[0], &decomposition[1])
    } else {
        (&decomposition[1], &decomposition[0])
    };
    let (p, m) = (p_comp.prime, p_comp.valuation);
    let (q, n) = (q_comp.prime, q_comp.valuation);
    let r = multiplicative_order(p, q)?;

    // y: a generator of the chosen Sylow q-subgroup (first in canonical
    // order), of minimal id.
    let q_order = q.pow(n);
    let y = q_comp
        .subgroup
        .members()
        .iter()
        .copied()
        .find(|&a| g.element_order(a) == q_order)
        .ok_or_else(|| {
            GroupError::Inconsistent("Sylow q-subgroup of a Schmidt group should be cyclic".into())
        })?;
    let y_q = g.pow(y, q);

    let center = SubgroupSet::from_sorted_unchecked(g.center_set());
    let yq_central = center.contains(y_q);
    let frattini_g = lattice::frattini(g, lattice);
    let center_eq_frattini = center == frattini_g;

    let p_set = &p_comp.subgroup;
    let p_table = p_set.as_group(g)?;
    let p_lattice = all_subgroups(&p_table, limits)?;
    let to_parent = |local: &SubgroupSet| -> Vec<ElementId> {
        local
            .members()
            .iter()
            .map(|&i| p_set.members()[i])
            .collect()
    };
    let frattini_p = to_parent(&lattice::frattini(&p_table, &p_lattice));

    // Frattini(P) * <y^q> as a plain product set, compared with the center.
    let yq_span = g.generated_set(&[y_q]);
    let mut product: Vec<ElementId> = frattini_p
        .iter()
        .flat_map(|&f| yq_span.iter().map(move |&c| (f, c)))
        .map(|(f, c)| g.mul(f, c))
        .collect();
    product.sort_unstable();
    product.dedup();
    let center_eq_phi_p_times_yq = product == center.members();

    let derived_g = g.derived_set();
    let derived_eq_p = derived_g == p_set.members();
    let p_derived = g.commutator_set(p_set.members(), p_set.members());
    let p_derived_eq_frattini_p = p_derived == frattini_p;

    let p_pow_r = p.pow(r as u32);
    let index_formula = p_set.order() == p_derived.len() * p_pow_r;

    let abelian = p_table.is_abelian();
    let abelian_case = if abelian {
        let elementary = p_table.exponent() == p && p_set.order() == p_pow_r;
        // minimal normal: no proper nontrivial subgroup of P is normal in G
        let minimal = p_lattice.subgroups().iter().all(|w| {
            w.is_trivial()
                || w.order() == p_set.order()
                || !SubgroupSet::from_sorted_unchecked(to_parent(w)).is_normal_in(g)
        });
        elementary && minimal
    } else {
        true
    };
    let nonabelian_case = if abelian {
        true
    } else {
        let center_p = to_parent(&SubgroupSet::from_sorted_unchecked(p_table.center_set()));
        center_p == p_derived
            && p_derived == frattini_p
            && p_set.order() == center_p.len() * p_pow_r
    };

    let quotient_by_center = lattice::quotient(g, &center)?;
    let gz = &quotient_by_center.quotient;
    let gz_lattice = all_subgroups(gz, limits)?;
    let quotient_schmidt = is_schmidt(gz, &gz_lattice) && gz.order() == p_pow_r * q;
    let no_cyclic_pq = gz.order_spectrum().count_of(p * q) == 0;

    Ok(SchmidtReport {
        is_schmidt: true,
        p,
        q,
        m,
        n,
        r,
        yq_central,
        center_eq_frattini,
        center_eq_phi_p_times_yq,
        derived_eq_p,
        p_derived_eq_frattini_p,
        index_formula,
        abelian_case,
        nonabelian_case,
        quotient_schmidt,
        no_cyclic_pq,
    })
}

/// Which Sylow-p shape a Schmidt group's normal subgroup has, for the three
/// shapes the divisibility analysis covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SchmidtCase {
    #[serde(rename = "cyclic")]
    CyclicP,
    #[serde(rename = "p_by_p")]
    PByP,
    #[serde(rename = "Q8")]
    Q8,
}

/// Concrete evidence that a Schmidt group cannot satisfy both conditions.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObstructionWitness {
    /// phi(G) = 0: positivity already fails at G itself.
    PhiZero { exponent: usize },
    /// G satisfies positivity, and G/Z(G) contains a cyclic subgroup of
    /// order pq, contradicting the Schmidt quotient structure.
    CyclicPqInQuotient { element: ElementId, order: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct SchmidtObstruction {
    pub case: SchmidtCase,
    pub witness: ObstructionWitness,
}

/// For a Schmidt group whose normal Sylow subgroup is cyclic, p x p, or Q8:
/// returns which case applies and a concrete witness that positivity and
/// divisibility cannot both hold.
pub fn schmidt_obstruction(g: &GroupTable, limits: &Limits) -> Result<SchmidtObstruction> {
    let lattice = all_subgroups(g, limits)?;
    if !is_schmidt(g, &lattice) {
        return Err(GroupError::NotApplicable("not a Schmidt group".into()));
    }
    let decomposition = sylow_decomposition(g, &lattice)?;
    let p_comp = decomposition
        .iter()
        .find(|c| c.unique)
        .ok_or_else(|| GroupError::NotApplicable("no normal Sylow subgroup".into()))?;
    let q_comp = decomposition
        .iter()
        .find(|c| c.prime != p_comp.prime)
        .ok_or_else(|| GroupError::NotApplicable("expected two primes".into()))?;
    let case = match recognize_p_group(&p_comp.subgroup.as_group(g)?)? {
        SylowShape::Cyclic => SchmidtCase::CyclicP,
        SylowShape::PByP => SchmidtCase::PByP,
        SylowShape::Q8 => SchmidtCase::Q8,
        shape => {
            return Err(GroupError::NotApplicable(format!(
                "normal Sylow subgroup has shape {shape}"
            )))
        }
    };

    let report = g.phi_report();
    if report.phi == 0 {
        return Ok(SchmidtObstruction {
            case,
            witness: ObstructionWitness::PhiZero {
                exponent: report.exponent,
            },
        });
    }
    let center = SubgroupSet::from_sorted_unchecked(g.center_set());
    let gz = lattice::quotient(g, &center)?.quotient;
    let pq = p_comp.prime * q_comp.prime;
    match gz.elements().find(|&a| gz.element_order(a) == pq) {
        Some(element) => Ok(SchmidtObstruction {
            case,
            witness: ObstructionWitness::CyclicPqInQuotient { element, order: pq },
        }),
        None => Err(GroupError::Inconsistent(
            "Schmidt group with nonzero phi but no order-pq element in G/Z(G)".into(),
        )),
    }
}

/// Scans a list of groups for the non-nilpotent ones that still have phi
/// nonzero on every subgroup. Returns their indices; empty is an expected
/// outcome on small catalogs.
pub fn nonnilpotent_with_positive_subgroup_phi(
    groups: &[GroupTable],
    limits: &Limits,
) -> Result<Vec<usize>> {
    let flags = par::map_slice(groups, |g| -> Result<bool> {
        if is_nilpotent(g) {
            return Ok(false);
        }
        let lattice = all_subgroups(g, limits)?;
        let phis: Vec<usize> = lattice::annotate(g, &lattice)?
            .iter()
            .map(|r| r.phi)
            .collect();
        Ok(phi_positive_on_subgroups(&lattice, &phis).holds)
    });
    let mut out = Vec::new();
    for (i, flag) in flags.into_iter().enumerate() {
        if flag? {
            out.push(i);
        }
    }
    Ok(out)
}
