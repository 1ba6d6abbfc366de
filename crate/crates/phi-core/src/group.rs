//! Finite groups as validated multiplication tables.
//!
//! A [`GroupTable`] stores the full n x n product table over 0-based element
//! ids, with the identity renumbered to id 0 and inverses precomputed.
//! Validation checks every group axiom; everything downstream treats the
//! table as read-only, so tables can be shared freely across threads.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::lcm;
use crate::error::{GroupError, Result};
use crate::par;

/// Index of an element within one [`GroupTable`]. Only meaningful relative
/// to the table that produced it.
pub type ElementId = usize;

/// Orders above this get the full n^3 associativity scan; larger tables use
/// Light's test over a generating set instead.
pub const FULL_ASSOCIATIVITY_SCAN_LIMIT: usize = 256;

/// A finite group as an immutable multiplication table.
///
/// `mul[a * n + b]` is the product `a * b`. Id 0 is always the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    mul: Vec<ElementId>,
    inv: Vec<ElementId>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable(order={})", self.n)
    }
}

impl GroupTable {
    /// Validates a raw square table and returns the canonical group.
    ///
    /// The identity may sit at any id in the input; the output always has it
    /// at id 0. Rejects tables that are not closed, have no identity, are
    /// not associative (reporting a violating triple), or miss an inverse.
    pub fn from_raw(raw: &[Vec<usize>]) -> Result<GroupTable> {
        let n = raw.len();
        if n == 0 {
            return Err(GroupError::NoIdentity);
        }
        for (row, r) in raw.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::NotClosed {
                        row,
                        col,
                        value,
                        order: n,
                    });
                }
            }
        }

        let mut flat = Vec::with_capacity(n * n);
        for r in raw {
            flat.extend_from_slice(r);
        }

        // Two-sided identity.
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| flat[e * n + a] == a && flat[a * n + e] == a))
            .ok_or(GroupError::NoIdentity)?;

        if identity != 0 {
            flat = relabel(&flat, n, &swap_permutation(n, identity));
        }

        // Tables failing both the inverse and associativity axioms report
        // the missing inverse.
        let mut inv = vec![0usize; n];
        for a in 0..n {
            match (0..n).find(|&b| flat[a * n + b] == 0 && flat[b * n + a] == 0) {
                Some(b) => inv[a] = b,
                None => return Err(GroupError::NoInverse { element: a }),
            }
        }

        if n <= FULL_ASSOCIATIVITY_SCAN_LIMIT {
            check_associativity_full(&flat, n)?;
        } else {
            check_associativity_light(&flat, n)?;
        }

        Ok(GroupTable { n, mul: flat, inv })
    }

    /// Builds a table from a closed-form product rule. The result goes
    /// through the same validation as a raw input table.
    pub(crate) fn from_product_fn(
        n: usize,
        product: impl Fn(usize, usize) -> usize,
    ) -> Result<GroupTable> {
        let mut raw = Vec::with_capacity(n);
        for a in 0..n {
            raw.push((0..n).map(|b| product(a, b)).collect());
        }
        GroupTable::from_raw(&raw)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inv[a]
    }

    #[inline]
    pub(crate) fn row(&self, a: ElementId) -> &[ElementId] {
        &self.mul[a * self.n..(a + 1) * self.n]
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        0..self.n
    }

    /// a^-1 b^-1 a b
    pub fn commutator(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// a^k by repeated multiplication (k is small at this scale).
    pub fn pow(&self, a: ElementId, k: usize) -> ElementId {
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    /// Smallest k >= 1 with a^k = identity. Divides the group order.
    pub fn element_order(&self, a: ElementId) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .fold(1, |acc, a| lcm(acc, self.element_order(a)))
    }

    /// Number of elements whose order equals the exponent. Generalizes the
    /// integer totient: for the cyclic group of order n this is phi(n).
    pub fn phi(&self) -> usize {
        let spectrum = self.order_spectrum();
        let exponent = spectrum.exponent();
        spectrum.count_of(exponent)
    }

    /// Histogram of element orders.
    pub fn order_spectrum(&self) -> OrderSpectrum {
        let orders = par::map_indices(self.n, |a| self.element_order(a));
        let mut counts = BTreeMap::new();
        for o in orders {
            *counts.entry(o).or_insert(0) += 1;
        }
        OrderSpectrum { counts }
    }

    pub fn phi_report(&self) -> PhiReport {
        let spectrum = self.order_spectrum();
        let exponent = spectrum.exponent();
        PhiReport {
            order: self.n,
            exponent,
            phi: spectrum.count_of(exponent),
            spectrum,
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closure of `seeds` under products: the smallest subgroup containing
    /// them, as a sorted id list. The empty seed set gives the trivial
    /// subgroup. Once more than half the group is reached the closure must
    /// be everything (a proper subgroup has index at least 2), so the scan
    /// stops early.
    pub fn generated_set(&self, seeds: &[ElementId]) -> Vec<ElementId> {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut list = vec![0];
        for &s in seeds {
            if !member[s] {
                member[s] = true;
                list.push(s);
            }
        }
        let mut i = 0;
        while i < list.len() {
            if list.len() > self.n / 2 {
                return (0..self.n).collect();
            }
            let x = list[i];
            let mut j = 0;
            while j < list.len() {
                let y = list[j];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !member[p] {
                        member[p] = true;
                        list.push(p);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// Elements commuting with everything.
    pub fn center_set(&self) -> Vec<ElementId> {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Subgroup generated by all commutators.
    pub fn derived_set(&self) -> Vec<ElementId> {
        let all: Vec<ElementId> = self.elements().collect();
        self.commutator_set(&all, &all)
    }

    /// Subgroup generated by the commutators [a, b], a in `left`, b in `right`.
    pub fn commutator_set(&self, left: &[ElementId], right: &[ElementId]) -> Vec<ElementId> {
        let mut seeds = Vec::new();
        for &a in left {
            for &b in right {
                let c = self.commutator(a, b);
                if c != 0 {
                    seeds.push(c);
                }
            }
        }
        seeds.sort_unstable();
        seeds.dedup();
        self.generated_set(&seeds)
    }

    /// Serializes to the Cayley table text format: line 1 is the order, then
    /// n rows of n space-separated ids. Always emits the canonical form
    /// (identity at id 0).
    pub fn to_cayley_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.n.to_string());
        out.push('\n');
        for a in 0..self.n {
            let row: Vec<String> = self.row(a).iter().map(|x| x.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the Cayley table text format and validates it. The identity
    /// may be any id in the file; the result is canonical.
    pub fn from_cayley_text(text: &str) -> Result<GroupTable> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| GroupError::Parse("empty table file".into()))?
            .trim()
            .parse()
            .map_err(|_| GroupError::Parse("first line must be the group order".into()))?;
        let mut raw = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| GroupError::Parse(format!("expected {n} rows, found {i}")))?;
            let row: std::result::Result<Vec<usize>, _> =
                line.split_whitespace().map(str::parse).collect();
            raw.push(row.map_err(|_| GroupError::Parse(format!("row {i}: ids must be integers")))?);
        }
        if lines.next().is_some() {
            return Err(GroupError::Parse(format!("trailing data after {n} rows")));
        }
        GroupTable::from_raw(&raw)
    }

    /// Relabels elements by `perm` (new id of x is `perm[x]`) and
    /// re-canonicalizes. The result is isomorphic to `self`.
    pub fn relabeled(&self, perm: &[ElementId]) -> Result<GroupTable> {
        if perm.len() != self.n {
            return Err(GroupError::InvalidParameter(
                "relabeling permutation has wrong length".into(),
            ));
        }
        let flat = relabel(&self.mul, self.n, perm);
        let raw: Vec<Vec<usize>> = (0..self.n)
            .map(|a| flat[a * self.n..(a + 1) * self.n].to_vec())
            .collect();
        GroupTable::from_raw(&raw)
    }
}

/// Element-order histogram of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrderSpectrum {
    counts: BTreeMap<usize, usize>,
}

impl OrderSpectrum {
    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    pub fn count_of(&self, order: usize) -> usize {
        self.counts.get(&order).copied().unwrap_or(0)
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> usize {
        self.counts.keys().fold(1, |acc, &d| lcm(acc, d))
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

impl FromIterator<(usize, usize)> for OrderSpectrum {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        OrderSpectrum {
            counts: iter.into_iter().collect(),
        }
    }
}

/// Exponent, phi, and the full order spectrum of one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    pub order: usize,
    pub exponent: usize,
    pub phi: usize,
    pub spectrum: OrderSpectrum,
}

fn swap_permutation(n: usize, e: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, e);
    perm
}

fn relabel(flat: &[usize], n: usize, perm: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            out[perm[a] * n + perm[b]] = perm[flat[a * n + b]];
        }
    }
    out
}

/// Full n^3 scan. The inner loop compares two rows pointwise, which keeps it
/// cache-friendly; rows are scanned in parallel.
fn check_associativity_full(flat: &[usize], n: usize) -> Result<()> {
    let witness = par::find_map_first_indices(n, |a| {
        let row_a = &flat[a * n..(a + 1) * n];
        for b in 0..n {
            let ab = row_a[b];
            let row_ab = &flat[ab * n..(ab + 1) * n];
            let row_b = &flat[b * n..(b + 1) * n];
            for c in 0..n {
                if row_ab[c] != row_a[row_b[c]] {
                    return Some((a, b, c));
                }
            }
        }
        None
    });
    match witness {
        Some((a, b, c)) => Err(GroupError::NotAssociative { a, b, c }),
        None => Ok(()),
    }
}

/// Light's test: a(gb) = (ag)b for all a, b and every g in a set that
/// generates the table under its own operation implies full associativity.
fn check_associativity_light(flat: &[usize], n: usize) -> Result<()> {
    let generators = greedy_generating_set(flat, n);
    let witness = par::find_map_first_indices(generators.len(), |gi| {
        let g = generators[gi];
        let row_g = &flat[g * n..(g + 1) * n];
        for a in 0..n {
            let ag = flat[a * n + g];
            let row_ag = &flat[ag * n..(ag + 1) * n];
            let row_a = &flat[a * n..(a + 1) * n];
            for b in 0..n {
                if row_a[row_g[b]] != row_ag[b] {
                    return Some((a, g, b));
                }
            }
        }
        None
    });
    match witness {
        Some((a, b, c)) => Err(GroupError::NotAssociative { a, b, c }),
        None => Ok(()),
    }
}

/// Greedily picks elements until their closure under the raw operation
/// covers the whole table.
fn greedy_generating_set(flat: &[usize], n: usize) -> Vec<usize> {
    let mut generators = Vec::new();
    let mut closed = vec![false; n];
    closed[0] = true;
    let mut list = vec![0usize];
    for next in 1..n {
        if closed[next] {
            continue;
        }
        generators.push(next);
        closed[next] = true;
        list.push(next);
        // close under products
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            let mut j = 0;
            while j < list.len() {
                let y = list[j];
                for p in [flat[x * n + y], flat[y * n + x]] {
                    if !closed[p] {
                        closed[p] = true;
                        list.push(p);
                    }
                }
                j += 1;
            }
            i += 1;
        }
    }
    generators
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn z_table(n: usize) -> Vec<Vec<usize>> {
        (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect()
    }

    #[test]
    fn trivial_group_validates() {
        let g = GroupTable::from_raw(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.phi(), 1);
        assert_eq!(g.exponent(), 1);
        let spec: OrderSpectrum = [(1, 1)].into_iter().collect();
        assert_eq!(g.order_spectrum(), spec);
    }

    #[test]
    fn z2_validates() {
        let g = GroupTable::from_raw(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.element_order(1), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn identity_renumbered_to_zero() {
        // Z3 with elements written in the order (1, 2, 0): identity is id 2.
        let raw = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = GroupTable::from_raw(&raw).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.element_order(1), 3);
    }

    #[test]
    fn mutated_z6_rejected() {
        // Exhaustively check: every single-entry mutation of the Z6 table
        // must fail validation (a group table is a Latin square, so any
        // one-cell change breaks an axiom).
        let base = z_table(6);
        for i in 0..6 {
            for j in 0..6 {
                for v in 0..6 {
                    if v == base[i][j] {
                        continue;
                    }
                    let mut raw = base.clone();
                    raw[i][j] = v;
                    assert!(
                        GroupTable::from_raw(&raw).is_err(),
                        "mutation at ({i},{j}) -> {v} accepted"
                    );
                }
            }
        }
    }

    #[test]
    fn not_closed_reported() {
        let err = GroupTable::from_raw(&[vec![0, 1], vec![1, 7]]).unwrap_err();
        assert_eq!(
            err,
            GroupError::NotClosed {
                row: 1,
                col: 1,
                value: 7,
                order: 2
            }
        );
    }

    #[test]
    fn no_identity_reported() {
        // constant table
        let err = GroupTable::from_raw(&[vec![0, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(err, GroupError::NoIdentity);
    }

    #[test]
    fn element_orders_in_q8_and_z12() {
        let q8 = construct::generalized_quaternion(8).unwrap();
        // id 1 is `a` in the presentation encoding
        assert_eq!(q8.element_order(1), 4);
        let z12 = construct::cyclic(12).unwrap();
        assert_eq!(z12.element_order(1), 12);
        assert_eq!(z12.element_order(0), 1);
    }

    #[test]
    fn exponent_examples() {
        let v4 = construct::elementary_abelian(2, 2).unwrap();
        assert_eq!(v4.exponent(), 2);
        let s3 = construct::symmetric(3).unwrap();
        assert_eq!(s3.exponent(), 6);
        let q16 = construct::generalized_quaternion(16).unwrap();
        assert_eq!(q16.exponent(), 8);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(construct::generalized_quaternion(8).unwrap().phi(), 6);
        assert_eq!(construct::generalized_quaternion(16).unwrap().phi(), 4);
        assert_eq!(construct::cyclic(12).unwrap().phi(), 4);
        assert_eq!(construct::symmetric(3).unwrap().phi(), 0);
        let z3xz9 = construct::direct_product(
            &construct::cyclic(3).unwrap(),
            &construct::cyclic(9).unwrap(),
        )
        .unwrap();
        assert_eq!(z3xz9.phi(), 18);
    }

    #[test]
    fn spectrum_examples() {
        let z4 = construct::cyclic(4).unwrap();
        let expected: OrderSpectrum = [(1, 1), (2, 1), (4, 2)].into_iter().collect();
        assert_eq!(z4.order_spectrum(), expected);

        let q8 = construct::generalized_quaternion(8).unwrap();
        let expected: OrderSpectrum = [(1, 1), (2, 1), (4, 6)].into_iter().collect();
        assert_eq!(q8.order_spectrum(), expected);
    }

    #[test]
    fn generated_subgroup_examples() {
        let s3 = construct::symmetric(3).unwrap();
        assert_eq!(s3.generated_set(&[]), vec![0]);
        let transposition = s3.elements().find(|&a| s3.element_order(a) == 2).unwrap();
        assert_eq!(s3.generated_set(&[transposition]).len(), 2);

        let q8 = construct::generalized_quaternion(8).unwrap();
        let span = q8.generated_set(&[1]);
        assert_eq!(span, vec![0, 1, 2, 3]);
    }

    #[test]
    fn center_examples() {
        let z6 = construct::cyclic(6).unwrap();
        assert_eq!(z6.center_set().len(), 6);
        let q8 = construct::generalized_quaternion(8).unwrap();
        let center = q8.center_set();
        assert_eq!(center.len(), 2);
        assert_eq!(q8.element_order(center[1]), 2);
        let a4 = construct::alternating(4).unwrap();
        assert_eq!(a4.center_set(), vec![0]);
    }

    #[test]
    fn derived_subgroup_examples() {
        let z8 = construct::cyclic(8).unwrap();
        assert_eq!(z8.derived_set(), vec![0]);
        let s3 = construct::symmetric(3).unwrap();
        assert_eq!(s3.derived_set().len(), 3);
        let q8 = construct::generalized_quaternion(8).unwrap();
        assert_eq!(q8.derived_set(), q8.center_set());
    }

    #[test]
    fn cayley_text_round_trip() {
        let d8 = construct::dihedral(8).unwrap();
        let text = d8.to_cayley_text();
        let back = GroupTable::from_cayley_text(&text).unwrap();
        assert_eq!(d8, back);
    }

    #[test]
    fn cayley_text_noncanonical_identity() {
        // Z2 written with identity at id 1.
        let g = GroupTable::from_cayley_text("2\n1 0\n0 1\n").unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.to_cayley_text(), "2\n0 1\n1 0\n");
    }

    #[test]
    fn cayley_text_errors() {
        assert!(GroupTable::from_cayley_text("").is_err());
        assert!(GroupTable::from_cayley_text("2\n0 1\n").is_err());
        assert!(GroupTable::from_cayley_text("2\n0 x\n1 0\n").is_err());
        assert!(GroupTable::from_cayley_text("2\n0 1\n1 0\n0 1\n").is_err());
    }

    #[test]
    fn light_test_path_matches_full_scan() {
        // Order 300 forces the Light's-test path; phi(Z300) = 80.
        let g = construct::cyclic(300).unwrap();
        assert_eq!(g.phi(), 80);

        // Breaking one entry far from the identity row must still be caught.
        let mut raw: Vec<Vec<usize>> = (0..300)
            .map(|a| (0..300).map(|b| (a + b) % 300).collect())
            .collect();
        raw[17][23] = 17 + 23 + 5;
        assert!(GroupTable::from_raw(&raw).is_err());
    }

    #[test]
    fn relabeling_preserves_spectrum() {
        let d8 = construct::dihedral(8).unwrap();
        let perm: Vec<usize> = vec![3, 0, 7, 1, 6, 2, 5, 4];
        let relabeled = d8.relabeled(&perm).unwrap();
        assert_eq!(relabeled.order_spectrum(), d8.order_spectrum());
        assert_eq!(relabeled.phi(), d8.phi());
    }
}
