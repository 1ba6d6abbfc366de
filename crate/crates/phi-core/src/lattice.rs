//! Complete subgroup-lattice enumeration, quotient groups, and sections.
//!
//! Enumeration seeds with every cyclic subgroup and closes under pairwise
//! joins until a fixed point. The result is the full set of subgroups (every
//! subgroup is a join of the cyclic subgroups it contains), independent of
//! the seed order.

use serde::Serialize;

use crate::error::{GroupError, Result};
use crate::group::{ElementId, GroupTable, PhiReport};
use crate::par;
use crate::Limits;

/// Default cap on the group order for full lattice enumeration.
pub const DEFAULT_MAX_LATTICE_ORDER: usize = 256;

/// A subgroup of a parent [`GroupTable`], stored as a strictly sorted list
/// of parent element ids. Always contains the identity (id 0).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SubgroupSet {
    members: Vec<ElementId>,
}

impl SubgroupSet {
    /// Wraps a member list, checking it really is a subgroup of `g`.
    pub fn from_members(g: &GroupTable, mut members: Vec<ElementId>) -> Result<SubgroupSet> {
        members.sort_unstable();
        members.dedup();
        let set = SubgroupSet { members };
        set.validate(g)?;
        Ok(set)
    }

    /// The subgroup generated by `seeds`.
    pub fn generated(g: &GroupTable, seeds: &[ElementId]) -> SubgroupSet {
        SubgroupSet {
            members: g.generated_set(seeds),
        }
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<ElementId>) -> SubgroupSet {
        SubgroupSet { members }
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: ElementId) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_full(&self, g: &GroupTable) -> bool {
        self.members.len() == g.order()
    }

    pub fn is_subset_of(&self, other: &SubgroupSet) -> bool {
        if self.members.len() > other.members.len() {
            return false;
        }
        let mut it = other.members.iter();
        'outer: for &m in &self.members {
            for &o in it.by_ref() {
                if o == m {
                    continue 'outer;
                }
                if o > m {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Checks the subgroup axioms: identity, closure, inverses, Lagrange.
    pub fn validate(&self, g: &GroupTable) -> Result<()> {
        if self.members.is_empty() || self.members[0] != 0 {
            return Err(GroupError::InvalidParameter(
                "subgroup must contain the identity".into(),
            ));
        }
        for &m in &self.members {
            if m >= g.order() {
                return Err(GroupError::InvalidParameter(format!(
                    "element id {m} out of range for a group of order {}",
                    g.order()
                )));
            }
        }
        for &a in &self.members {
            if !self.contains(g.inv(a)) {
                return Err(GroupError::InvalidParameter(format!(
                    "subgroup is missing the inverse of {a}"
                )));
            }
            for &b in &self.members {
                if !self.contains(g.mul(a, b)) {
                    return Err(GroupError::InvalidParameter(format!(
                        "subgroup is not closed: {a}*{b} escapes"
                    )));
                }
            }
        }
        if !g.order().is_multiple_of(self.members.len()) {
            return Err(GroupError::Inconsistent(
                "subgroup order does not divide the group order".into(),
            ));
        }
        Ok(())
    }

    /// True iff g^-1 h g stays in the subgroup for all g in the parent.
    pub fn is_normal_in(&self, g: &GroupTable) -> bool {
        g.elements().all(|x| {
            let xi = g.inv(x);
            self.members
                .iter()
                .all(|&h| self.contains(g.mul(g.mul(xi, h), x)))
        })
    }

    /// Materializes the subgroup as its own canonical [`GroupTable`]. Local
    /// id `i` corresponds to `members()[i]`; the identity lands at local id
    /// 0 because the member list is sorted.
    pub fn as_group(&self, g: &GroupTable) -> Result<GroupTable> {
        let local = |id: ElementId| self.members.binary_search(&id).expect("closed subgroup");
        let raw: Vec<Vec<usize>> = self
            .members
            .iter()
            .map(|&a| self.members.iter().map(|&b| local(g.mul(a, b))).collect())
            .collect();
        GroupTable::from_raw(&raw)
    }

    fn bitset(&self, n: usize) -> Vec<u64> {
        let mut words = vec![0u64; n.div_ceil(64)];
        for &m in &self.members {
            words[m / 64] |= 1 << (m % 64);
        }
        words
    }
}

/// All subgroups of one group plus the cover (Hasse) relation.
///
/// Subgroups are in canonical order: by size, then lexicographically by
/// member list. The trivial subgroup is first and the full group last.
/// `edges` holds pairs of indices (sub, super) with no subgroup strictly
/// between.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    subgroups: Vec<SubgroupSet>,
    edges: Vec<(usize, usize)>,
}

impl Lattice {
    pub fn subgroups(&self) -> &[SubgroupSet] {
        &self.subgroups
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn full_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn index_of(&self, members: &[ElementId]) -> Option<usize> {
        self.subgroups.iter().position(|s| s.members() == members)
    }

    /// Proper subgroups covered only by the full group.
    pub fn maximal_subgroups(&self) -> Vec<&SubgroupSet> {
        let full = self.full_index();
        self.edges
            .iter()
            .filter(|&&(_, sup)| sup == full)
            .map(|&(sub, _)| &self.subgroups[sub])
            .collect()
    }
}

/// Enumerates every subgroup of `g`: all cyclic subgroups, closed under
/// pairwise joins to a fixed point, plus the full group.
pub fn all_subgroups(g: &GroupTable, limits: &Limits) -> Result<Lattice> {
    let order: Vec<ElementId> = g.elements().collect();
    all_subgroups_in_order(g, &order, limits)
}

/// Same enumeration with an explicit seed order. The resulting lattice is
/// identical for every permutation of the elements; exposing the order makes
/// that property directly testable.
pub fn all_subgroups_in_order(
    g: &GroupTable,
    seed_order: &[ElementId],
    limits: &Limits,
) -> Result<Lattice> {
    if g.order() > limits.max_lattice_order {
        return Err(GroupError::LatticeBudgetExceeded {
            order: g.order(),
            budget: limits.max_lattice_order,
        });
    }

    let mut known: std::collections::BTreeSet<Vec<ElementId>> = Default::default();
    let mut frontier: Vec<Vec<ElementId>> = Vec::new();
    let push = |set: Vec<ElementId>,
                known: &mut std::collections::BTreeSet<Vec<ElementId>>,
                frontier: &mut Vec<Vec<ElementId>>| {
        if !known.contains(&set) {
            known.insert(set.clone());
            frontier.push(set);
        }
    };

    push(g.elements().collect(), &mut known, &mut frontier);
    for &a in seed_order {
        push(g.generated_set(&[a]), &mut known, &mut frontier);
    }

    while !frontier.is_empty() {
        let existing: Vec<Vec<ElementId>> = known.iter().cloned().collect();
        let batches = par::map_slice(&frontier, |new_set| {
            let mut joins = Vec::new();
            for old in &existing {
                if sorted_subset(new_set, old) || sorted_subset(old, new_set) {
                    continue;
                }
                let mut union = old.clone();
                union.extend_from_slice(new_set);
                joins.push(g.generated_set(&union));
            }
            joins
        });
        frontier = Vec::new();
        for batch in batches {
            for set in batch {
                push(set, &mut known, &mut frontier);
            }
        }
    }

    let mut subgroups: Vec<SubgroupSet> = known
        .into_iter()
        .map(SubgroupSet::from_sorted_unchecked)
        .collect();
    subgroups.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.members().cmp(b.members()))
    });
    let edges = cover_edges(g, &subgroups);
    Ok(Lattice { subgroups, edges })
}

fn sorted_subset(a: &[ElementId], b: &[ElementId]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut it = b.iter();
    'outer: for &m in a {
        for &o in it.by_ref() {
            if o == m {
                continue 'outer;
            }
            if o > m {
                return false;
            }
        }
        return false;
    }
    true
}

fn cover_edges(g: &GroupTable, subgroups: &[SubgroupSet]) -> Vec<(usize, usize)> {
    let n = g.order();
    let bitsets: Vec<Vec<u64>> = subgroups.iter().map(|s| s.bitset(n)).collect();
    let subset = |i: usize, j: usize| -> bool {
        bitsets[i].iter().zip(&bitsets[j]).all(|(a, b)| a & !b == 0)
    };
    let count = subgroups.len();
    let edge_lists = par::map_indices(count, |i| {
        let mut edges = Vec::new();
        for j in 0..count {
            if subgroups[j].order() <= subgroups[i].order() || !subset(i, j) {
                continue;
            }
            let intermediate = (0..count).any(|k| {
                k != i
                    && k != j
                    && subgroups[k].order() > subgroups[i].order()
                    && subgroups[k].order() < subgroups[j].order()
                    && subset(i, k)
                    && subset(k, j)
            });
            if !intermediate {
                edges.push((i, j));
            }
        }
        edges
    });
    edge_lists.into_iter().flatten().collect()
}

/// Intersection of all maximal subgroups; the whole group when there are no
/// maximal subgroups (the trivial group).
pub fn frattini(g: &GroupTable, lattice: &Lattice) -> SubgroupSet {
    let maximals = lattice.maximal_subgroups();
    if maximals.is_empty() {
        return SubgroupSet::from_sorted_unchecked(g.elements().collect());
    }
    let members: Vec<ElementId> = g
        .elements()
        .filter(|&a| maximals.iter().all(|m| m.contains(a)))
        .collect();
    SubgroupSet::from_sorted_unchecked(members)
}

/// A quotient table together with the projection from parent element ids to
/// coset labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientResult {
    pub quotient: GroupTable,
    pub projection: Vec<ElementId>,
}

/// G/N for a normal subgroup N. Cosets are labelled in order of their
/// smallest member id, so the identity coset is label 0 and the table is
/// canonical.
pub fn quotient(g: &GroupTable, normal: &SubgroupSet) -> Result<QuotientResult> {
    if !normal.is_normal_in(g) {
        return Err(GroupError::NotNormal);
    }
    let n = g.order();
    let mut label = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if label[a] != usize::MAX {
            continue;
        }
        let current = reps.len();
        reps.push(a);
        for &h in normal.members() {
            label[g.mul(h, a)] = current;
        }
    }
    let raw: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| label[g.mul(a, b)]).collect())
        .collect();
    Ok(QuotientResult {
        quotient: GroupTable::from_raw(&raw)?,
        projection: label,
    })
}

/// One section H/N of a parent group: a subgroup H, a subgroup N normal in
/// H (both as parent-id sets), and the materialized quotient.
#[derive(Debug, Clone)]
pub struct Section {
    pub subgroup: SubgroupSet,
    pub normal: SubgroupSet,
    pub quotient: QuotientResult,
}

/// Every section H/N: H runs over the lattice, N over the normal subgroups
/// of H (each H gets its own lattice). Includes all subgroups (N trivial)
/// and all quotients of G (H = G).
pub fn all_sections(g: &GroupTable, lattice: &Lattice, limits: &Limits) -> Result<Vec<Section>> {
    let per_subgroup = par::map_slice(lattice.subgroups(), |h| -> Result<Vec<Section>> {
        let h_table = h.as_group(g)?;
        let h_lattice = if h.is_full(g) {
            lattice.clone()
        } else {
            all_subgroups(&h_table, limits)?
        };
        let mut sections = Vec::new();
        for n_local in h_lattice.subgroups() {
            if !n_local.is_normal_in(&h_table) {
                continue;
            }
            let q = quotient(&h_table, n_local)?;
            let n_parent: Vec<ElementId> =
                n_local.members().iter().map(|&i| h.members()[i]).collect();
            sections.push(Section {
                subgroup: h.clone(),
                normal: SubgroupSet::from_sorted_unchecked(n_parent),
                quotient: q,
            });
        }
        Ok(sections)
    });
    let mut out = Vec::new();
    for batch in per_subgroup {
        out.extend(batch?);
    }
    Ok(out)
}

/// DOT rendering of the lattice with per-subgroup annotations. Cover edges
/// point from subgroup to supergroup; edges where the sub's phi does not
/// divide the super's are drawn bold red.
pub fn lattice_to_dot(lattice: &Lattice, annotations: &[PhiReport]) -> String {
    assert_eq!(
        lattice.len(),
        annotations.len(),
        "one annotation per subgroup"
    );
    let mut out = String::from("digraph subgroup_lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, report) in annotations.iter().enumerate() {
        out.push_str(&format!(
            "  n{i} [label=\"\u{2016}H\u{2016}={}, exp={}, \u{03c6}={}\"];\n",
            report.order, report.exponent, report.phi
        ));
    }
    for &(sub, sup) in lattice.edges() {
        if crate::analysis::phi_divides(annotations[sub].phi, annotations[sup].phi) {
            out.push_str(&format!("  n{sub} -> n{sup};\n"));
        } else {
            out.push_str(&format!("  n{sub} -> n{sup} [color=red, style=bold];\n"));
        }
    }
    out.push_str("}\n");
    out
}

/// JSON export of a lattice: member arrays, cover edges, per-node reports.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeExport {
    pub subgroups: Vec<SubgroupSet>,
    pub edges: Vec<(usize, usize)>,
    pub annotations: Vec<PhiReport>,
}

impl LatticeExport {
    pub fn new(g: &GroupTable, lattice: &Lattice) -> Result<LatticeExport> {
        Ok(LatticeExport {
            subgroups: lattice.subgroups().to_vec(),
            edges: lattice.edges().to_vec(),
            annotations: annotate(g, lattice)?,
        })
    }
}

/// Computes the phi report of every subgroup, in lattice order.
pub fn annotate(g: &GroupTable, lattice: &Lattice) -> Result<Vec<PhiReport>> {
    par::map_slice(lattice.subgroups(), |s| Ok(s.as_group(g)?.phi_report()))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn cyclic_lattice_matches_divisors() {
        for n in [1usize, 2, 6, 12, 30] {
            let g = construct::cyclic(n).unwrap();
            let lat = all_subgroups(&g, &limits()).unwrap();
            let divisors = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(lat.len(), divisors, "Z{n}");
        }
    }

    #[test]
    fn q8_has_six_subgroups_all_normal() {
        let q8 = construct::generalized_quaternion(8).unwrap();
        let lat = all_subgroups(&q8, &limits()).unwrap();
        assert_eq!(lat.len(), 6);
        for s in lat.subgroups() {
            assert!(s.is_normal_in(&q8));
        }
        let order4 = lat.subgroups().iter().filter(|s| s.order() == 4).count();
        assert_eq!(order4, 3);
    }

    #[test]
    fn s4_has_thirty_subgroups() {
        let s4 = construct::symmetric(4).unwrap();
        let lat = all_subgroups(&s4, &limits()).unwrap();
        assert_eq!(lat.len(), 30);
        for s in lat.subgroups() {
            s.validate(&s4).unwrap();
        }
    }

    #[test]
    fn s5_and_a5_subgroup_counts() {
        let s5 = construct::symmetric(5).unwrap();
        assert_eq!(all_subgroups(&s5, &limits()).unwrap().len(), 156);
        let a5 = construct::alternating(5).unwrap();
        assert_eq!(all_subgroups(&a5, &limits()).unwrap().len(), 59);
    }

    #[test]
    fn dihedral_counts_match_divisor_formula() {
        // D_{2n} has tau(n) + sigma(n) subgroups
        for two_n in [8usize, 10, 12, 16, 20, 24, 28, 32, 40, 48] {
            let d = construct::dihedral(two_n).unwrap();
            let lat = all_subgroups(&d, &limits()).unwrap();
            let n = two_n / 2;
            let tau = (1..=n).filter(|d| n % d == 0).count();
            let sigma: usize = (1..=n).filter(|d| n % d == 0).sum();
            assert_eq!(lat.len(), tau + sigma, "D{two_n}");
        }
    }

    #[test]
    fn seed_order_does_not_matter() {
        let s4 = construct::symmetric(4).unwrap();
        let forward = all_subgroups(&s4, &limits()).unwrap();
        let reversed: Vec<usize> = (0..24).rev().collect();
        let backward = all_subgroups_in_order(&s4, &reversed, &limits()).unwrap();
        assert_eq!(forward, backward);
    }

    #[test]
    fn normality_examples() {
        let s3 = construct::symmetric(3).unwrap();
        let lat = all_subgroups(&s3, &limits()).unwrap();
        for s in lat.subgroups() {
            let expected = s.order() != 2; // the three reflections are not normal
            assert_eq!(s.is_normal_in(&s3), expected);
        }
    }

    #[test]
    fn maximal_and_frattini_examples() {
        let z6 = construct::cyclic(6).unwrap();
        let lat = all_subgroups(&z6, &limits()).unwrap();
        let mut maximal_orders: Vec<usize> =
            lat.maximal_subgroups().iter().map(|s| s.order()).collect();
        maximal_orders.sort_unstable();
        assert_eq!(maximal_orders, vec![2, 3]);

        let z7 = construct::cyclic(7).unwrap();
        let lat7 = all_subgroups(&z7, &limits()).unwrap();
        assert_eq!(frattini(&z7, &lat7).order(), 1);

        let q8 = construct::generalized_quaternion(8).unwrap();
        let lat8 = all_subgroups(&q8, &limits()).unwrap();
        assert_eq!(lat8.maximal_subgroups().len(), 3);
        let phi = frattini(&q8, &lat8);
        assert_eq!(phi.members(), q8.center_set().as_slice());

        let v4 = construct::elementary_abelian(2, 2).unwrap();
        let lat_v = all_subgroups(&v4, &limits()).unwrap();
        assert!(frattini(&v4, &lat_v).is_trivial());

        let trivial = construct::cyclic(1).unwrap();
        let lat1 = all_subgroups(&trivial, &limits()).unwrap();
        assert_eq!(lat1.len(), 1);
        assert!(frattini(&trivial, &lat1).is_full(&trivial));
    }

    #[test]
    fn quotient_examples() {
        let q8 = construct::generalized_quaternion(8).unwrap();
        let trivial = SubgroupSet::generated(&q8, &[]);
        let q = quotient(&q8, &trivial).unwrap();
        assert_eq!(q.quotient, q8);

        let full = SubgroupSet::generated(&q8, &[1, 4]);
        assert!(full.is_full(&q8));
        let q = quotient(&q8, &full).unwrap();
        assert_eq!(q.quotient.order(), 1);

        let center = SubgroupSet::from_members(&q8, q8.center_set()).unwrap();
        let q = quotient(&q8, &center).unwrap();
        let spectrum = q.quotient.order_spectrum();
        assert_eq!(spectrum, [(1, 1), (2, 3)].into_iter().collect());

        // projection is a homomorphism
        for a in q8.elements() {
            for b in q8.elements() {
                assert_eq!(
                    q.projection[q8.mul(a, b)],
                    q.quotient.mul(q.projection[a], q.projection[b])
                );
            }
        }
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = construct::symmetric(3).unwrap();
        let reflection = s3.elements().find(|&a| s3.element_order(a) == 2).unwrap();
        let h = SubgroupSet::generated(&s3, &[reflection]);
        assert_eq!(quotient(&s3, &h).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn sections_examples() {
        let z4 = construct::cyclic(4).unwrap();
        let lat = all_subgroups(&z4, &limits()).unwrap();
        let sections = all_sections(&z4, &lat, &limits()).unwrap();
        let mut orders: Vec<usize> = sections
            .iter()
            .map(|s| s.quotient.quotient.order())
            .collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 1, 1, 2, 2, 4]);

        let s3 = construct::symmetric(3).unwrap();
        let lat = all_subgroups(&s3, &limits()).unwrap();
        let sections = all_sections(&s3, &lat, &limits()).unwrap();
        assert!(sections.iter().any(|s| s.quotient.quotient.phi() == 0));

        let q8 = construct::generalized_quaternion(8).unwrap();
        let lat = all_subgroups(&q8, &limits()).unwrap();
        let sections = all_sections(&q8, &lat, &limits()).unwrap();
        assert!(sections.iter().all(|s| s.quotient.quotient.phi() != 0));
    }

    #[test]
    fn lattice_budget_enforced() {
        let g = construct::cyclic(300).unwrap();
        assert!(matches!(
            all_subgroups(&g, &limits()),
            Err(GroupError::LatticeBudgetExceeded {
                order: 300,
                budget: 256
            })
        ));
    }

    #[test]
    fn dot_output() {
        let trivial = construct::cyclic(1).unwrap();
        let lat = all_subgroups(&trivial, &limits()).unwrap();
        let dot = lattice_to_dot(&lat, &annotate(&trivial, &lat).unwrap());
        assert_eq!(dot.matches("label=").count(), 1);
        assert!(!dot.contains("->"));

        let z6 = construct::cyclic(6).unwrap();
        let lat = all_subgroups(&z6, &limits()).unwrap();
        let dot = lattice_to_dot(&lat, &annotate(&z6, &lat).unwrap());
        assert_eq!(dot.matches("label=").count(), 4);
        assert_eq!(dot.matches("->").count(), 4);
        assert!(!dot.contains("color=red"));

        let d8 = construct::dihedral(8).unwrap();
        let lat = all_subgroups(&d8, &limits()).unwrap();
        assert_eq!(lat.len(), 10);
        let dot = lattice_to_dot(&lat, &annotate(&d8, &lat).unwrap());
        assert!(dot.contains("color=red"));
    }
}
