//! Constructors for the group families the analysis needs: cyclic,
//! elementary abelian, dihedral, generalized quaternion, the two
//! non-abelian groups of order p^3, symmetric/alternating groups, direct
//! and semidirect products, and the minimal non-nilpotent (Schmidt)
//! semidirect products Z_p^r x| Z_{q^e}.
//!
//! Every constructor output goes through the full table validation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::{self, is_prime};
use crate::error::{GroupError, Result};
use crate::group::{ElementId, GroupTable};
use crate::Limits;

/// Default cap on the order of any constructed group.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 1024;

fn check_budget(order: usize) -> Result<usize> {
    if order > DEFAULT_MAX_GROUP_ORDER {
        return Err(GroupError::SizeBudgetExceeded {
            requested: order,
            budget: DEFAULT_MAX_GROUP_ORDER,
        });
    }
    Ok(order)
}

/// Z_n with product (i, j) -> (i + j) mod n.
pub fn cyclic(n: usize) -> Result<GroupTable> {
    if n < 1 {
        return Err(GroupError::InvalidParameter(
            "cyclic: n must be >= 1".into(),
        ));
    }
    check_budget(n)?;
    GroupTable::from_product_fn(n, |a, b| (a + b) % n)
}

/// Z_p^k: ids are base-p digit strings, product is digitwise addition mod p.
pub fn elementary_abelian(p: usize, k: u32) -> Result<GroupTable> {
    if !is_prime(p) {
        return Err(GroupError::InvalidParameter(format!(
            "elementary_abelian: p = {p} is not prime"
        )));
    }
    if k < 1 {
        return Err(GroupError::InvalidParameter(
            "elementary_abelian: k must be >= 1".into(),
        ));
    }
    let n = arith::checked_pow(p, k)
        .ok_or_else(|| GroupError::InvalidParameter("elementary_abelian: p^k overflows".into()))?;
    check_budget(n)?;
    GroupTable::from_product_fn(n, |a, b| {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..k {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    })
}

/// A x B on pairs (a, b) with id a * |B| + b.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    let n = check_budget(a.order() * b.order())?;
    let bn = b.order();
    GroupTable::from_product_fn(n, |x, y| {
        let (xa, xb) = (x / bn, x % bn);
        let (ya, yb) = (y / bn, y % bn);
        a.mul(xa, ya) * bn + b.mul(xb, yb)
    })
}

/// Dihedral group of order `two_n` (symmetries of the (two_n/2)-gon).
/// Elements r^i s^j encoded as i + (two_n/2) * j.
pub fn dihedral(two_n: usize) -> Result<GroupTable> {
    if two_n < 4 || !two_n.is_multiple_of(2) {
        return Err(GroupError::InvalidParameter(format!(
            "dihedral: order must be an even integer >= 4, got {two_n}"
        )));
    }
    check_budget(two_n)?;
    let n = two_n / 2;
    // r^i s^j * r^k s^l = r^(i + k*(-1)^j) s^(j xor l)
    GroupTable::from_product_fn(two_n, |x, y| {
        let (i1, j1) = (x % n, x / n);
        let (i2, j2) = (y % n, y / n);
        let k = if j1 == 0 { i2 } else { (n - i2) % n };
        (i1 + k) % n + n * (j1 ^ j2)
    })
}

/// Generalized quaternion group of order 2^n, n >= 3, from the presentation
/// with a of order 2^(n-1), b^2 = a^(2^(n-2)), and b a b^-1 = a^-1.
/// Elements a^i b^j encoded as i + 2^(n-1) * j.
pub fn generalized_quaternion(order: usize) -> Result<GroupTable> {
    if order < 8 || !order.is_power_of_two() {
        return Err(GroupError::InvalidParameter(format!(
            "generalized_quaternion: order must be a power of 2 and >= 8, got {order}"
        )));
    }
    check_budget(order)?;
    let m = order / 2;
    let half = m / 2;
    GroupTable::from_product_fn(order, |x, y| {
        let (i1, j1) = (x % m, x / m);
        let (i2, j2) = (y % m, y / m);
        let k = if j1 == 0 { i2 } else { (m - i2) % m };
        let mut i = (i1 + k) % m;
        let mut j = j1 + j2;
        if j == 2 {
            i = (i + half) % m;
            j = 0;
        }
        i + m * j
    })
}

/// The non-abelian group of order p^3 with exponent p^2 (p odd):
/// x of order p^2, y of order p, y^-1 x y = x^(p+1).
/// Elements x^i y^j encoded as i + p^2 * j.
pub fn modular_m_p3(p: usize) -> Result<GroupTable> {
    if p == 2 {
        return Err(GroupError::InvalidParameter(
            "modular_M_p3: p = 2 gives the dihedral group of order 8; use dihedral(8)".into(),
        ));
    }
    if !is_prime(p) {
        return Err(GroupError::InvalidParameter(format!(
            "modular_M_p3: p = {p} is not prime"
        )));
    }
    let p2 = p * p;
    let n = check_budget(p2 * p)?;
    // exponents of (p+1)^j mod p^2
    let mut twist = vec![1usize; p];
    for j in 1..p {
        twist[j] = twist[j - 1] * (p + 1) % p2;
    }
    GroupTable::from_product_fn(n, |x, y| {
        let (i1, j1) = (x % p2, x / p2);
        let (i2, j2) = (y % p2, y / p2);
        (i1 + i2 * twist[j1]) % p2 + p2 * ((j1 + j2) % p)
    })
}

/// The non-abelian group of order p^3 with exponent p (p odd): unitriangular
/// 3x3 matrices over F_p. Elements (a, b, c) encoded as a + p*b + p^2*c.
pub fn extraspecial_e_p3(p: usize) -> Result<GroupTable> {
    if p == 2 {
        return Err(GroupError::InvalidParameter(
            "extraspecial_E_p3: exponent 2 forces an abelian group; p must be an odd prime".into(),
        ));
    }
    if !is_prime(p) {
        return Err(GroupError::InvalidParameter(format!(
            "extraspecial_E_p3: p = {p} is not prime"
        )));
    }
    let n = check_budget(p * p * p)?;
    GroupTable::from_product_fn(n, |x, y| {
        let (a1, b1, c1) = (x % p, x / p % p, x / (p * p));
        let (a2, b2, c2) = (y % p, y / p % p, y / (p * p));
        (a1 + a2) % p + p * ((b1 + b2) % p) + p * p * ((c1 + c2 + a1 * b2) % p)
    })
}

/// Symmetric group on n points via its regular multiplication table.
pub fn symmetric(n: usize) -> Result<GroupTable> {
    let perms = permutations(n)?;
    check_budget(perms.len())?;
    permutation_table(&perms)
}

/// Alternating group on n points.
pub fn alternating(n: usize) -> Result<GroupTable> {
    let perms: Vec<Vec<u8>> = permutations(n)?
        .into_iter()
        .filter(|p| parity_even(p))
        .collect();
    check_budget(perms.len())?;
    permutation_table(&perms)
}

fn permutations(n: usize) -> Result<Vec<Vec<u8>>> {
    if n < 1 {
        return Err(GroupError::InvalidParameter(
            "permutation degree must be >= 1".into(),
        ));
    }
    let mut size: usize = 1;
    for k in 2..=n {
        size = size.checked_mul(k).ok_or(GroupError::SizeBudgetExceeded {
            requested: usize::MAX,
            budget: DEFAULT_MAX_GROUP_ORDER,
        })?;
    }
    if size > 2 * DEFAULT_MAX_GROUP_ORDER {
        // even the alternating half would blow the budget
        return Err(GroupError::SizeBudgetExceeded {
            requested: size,
            budget: DEFAULT_MAX_GROUP_ORDER,
        });
    }
    let mut out = Vec::with_capacity(size);
    let mut current: Vec<u8> = (0..n as u8).collect();
    emit_permutations(&mut current, 0, &mut out);
    out.sort();
    Ok(out)
}

fn emit_permutations(current: &mut Vec<u8>, from: usize, out: &mut Vec<Vec<u8>>) {
    if from == current.len() {
        out.push(current.clone());
        return;
    }
    for i in from..current.len() {
        current.swap(from, i);
        emit_permutations(current, from + 1, out);
        current.swap(from, i);
    }
}

fn parity_even(p: &[u8]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn permutation_table(perms: &[Vec<u8>]) -> Result<GroupTable> {
    let index: std::collections::HashMap<&[u8], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let n = perms.len();
    let mut raw = Vec::with_capacity(n);
    for a in perms {
        let mut row = Vec::with_capacity(n);
        for b in perms {
            let composed: Vec<u8> = b.iter().map(|&x| a[x as usize]).collect();
            row.push(*index.get(composed.as_slice()).ok_or_else(|| {
                GroupError::Inconsistent("permutation set not closed under composition".into())
            })?);
        }
        raw.push(row);
    }
    GroupTable::from_raw(&raw)
}

/// An action of a group H on a group N: one permutation of N's element ids
/// per element of H. Valid when every image is an automorphism of N and the
/// assignment h -> map is a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTable {
    maps: Vec<Vec<ElementId>>,
}

impl ActionTable {
    pub fn new(maps: Vec<Vec<ElementId>>) -> ActionTable {
        ActionTable { maps }
    }

    /// The trivial action of H on N.
    pub fn trivial(n_order: usize, h_order: usize) -> ActionTable {
        ActionTable {
            maps: vec![(0..n_order).collect(); h_order],
        }
    }

    pub fn maps(&self) -> &[Vec<ElementId>] {
        &self.maps
    }

    pub fn apply(&self, h: ElementId, x: ElementId) -> ElementId {
        self.maps[h][x]
    }

    fn validate(&self, normal: &GroupTable, acting: &GroupTable) -> Result<()> {
        let n = normal.order();
        if self.maps.len() != acting.order() {
            return Err(GroupError::InvalidParameter(format!(
                "action table has {} maps, expected one per acting element ({})",
                self.maps.len(),
                acting.order()
            )));
        }
        for (h, map) in self.maps.iter().enumerate() {
            if map.len() != n {
                return Err(GroupError::InvalidParameter(format!(
                    "action map for element {h} has length {}, expected {n}",
                    map.len()
                )));
            }
            let mut seen = vec![false; n];
            for &img in map {
                if img >= n || seen[img] {
                    return Err(GroupError::ActionNotAutomorphism {
                        acting: h,
                        x: 0,
                        y: 0,
                    });
                }
                seen[img] = true;
            }
            for x in 0..n {
                for y in 0..n {
                    if map[normal.mul(x, y)] != normal.mul(map[x], map[y]) {
                        return Err(GroupError::ActionNotAutomorphism { acting: h, x, y });
                    }
                }
            }
        }
        for a in 0..acting.order() {
            for b in 0..acting.order() {
                let ab = acting.mul(a, b);
                let composed_ok = (0..n).all(|x| self.maps[ab][x] == self.maps[a][self.maps[b][x]]);
                if !composed_ok {
                    return Err(GroupError::ActionNotHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }
}

/// N x| H under the given action: pairs (n, h) with id n * |H| + h and
/// product `(n1, h1)(n2, h2) = (n1 * action[h1](n2), h1 h2)`.
pub fn semidirect_product(
    normal: &GroupTable,
    acting: &GroupTable,
    action: &ActionTable,
) -> Result<GroupTable> {
    action.validate(normal, acting)?;
    let n = check_budget(normal.order() * acting.order())?;
    let h_ord = acting.order();
    GroupTable::from_product_fn(n, |x, y| {
        let (n1, h1) = (x / h_ord, x % h_ord);
        let (n2, h2) = (y / h_ord, y % h_ord);
        normal.mul(n1, action.apply(h1, n2)) * h_ord + acting.mul(h1, h2)
    })
}

/// Least r >= 1 with p^r = 1 mod q.
pub fn multiplicative_order(p: usize, q: usize) -> Result<usize> {
    if !is_prime(q) {
        return Err(GroupError::InvalidParameter(format!(
            "multiplicative_order: q = {q} is not prime"
        )));
    }
    if p.is_multiple_of(q) {
        return Err(GroupError::InvalidParameter(format!(
            "multiplicative_order: q = {q} divides p = {p}"
        )));
    }
    let mut x = p % q;
    let mut r = 1;
    while x != 1 {
        x = x * p % q;
        r += 1;
    }
    Ok(r)
}

/// Minimal non-nilpotent semidirect product Z_p^r x| Z_{q^q_exp}, where
/// r is the order of p mod q and the generator of the cyclic part acts by a
/// matrix of order q with no proper nonzero invariant subspace. The q-th
/// power of the generator acts trivially, so it is central.
pub fn schmidt_group(p: usize, q: usize, q_exp: u32) -> Result<GroupTable> {
    if !is_prime(p) || !is_prime(q) || p == q {
        return Err(GroupError::InvalidParameter(format!(
            "schmidt_group: p = {p} and q = {q} must be distinct primes"
        )));
    }
    if q_exp < 1 {
        return Err(GroupError::InvalidParameter(
            "schmidt_group: q_exp must be >= 1".into(),
        ));
    }
    let r = multiplicative_order(p, q)?;
    let p_part = arith::checked_pow(p, r as u32)
        .ok_or_else(|| GroupError::InvalidParameter("schmidt_group: p^r overflows".into()))?;
    let q_part = arith::checked_pow(q, q_exp)
        .ok_or_else(|| GroupError::InvalidParameter("schmidt_group: q^q_exp overflows".into()))?;
    check_budget(
        p_part
            .checked_mul(q_part)
            .ok_or(GroupError::SizeBudgetExceeded {
                requested: usize::MAX,
                budget: DEFAULT_MAX_GROUP_ORDER,
            })?,
    )?;

    let matrix = irreducible_order_q_matrix(p, q, r)?;
    let normal = elementary_abelian(p, r as u32)?;
    let acting = cyclic(q_part)?;

    // The generator y acts by `matrix`; y^t acts by matrix^t, so y^q acts
    // trivially because the matrix has order q.
    let mut maps = Vec::with_capacity(q_part);
    let mut power = identity_matrix(r);
    for _ in 0..q_part {
        maps.push(matrix_permutation(&power, p, r, normal.order()));
        power = mat_mul(&power, &matrix, p);
    }
    let action = ActionTable::new(maps);
    semidirect_product(&normal, &acting, &action)
}

type Matrix = Vec<Vec<usize>>;

fn identity_matrix(r: usize) -> Matrix {
    (0..r)
        .map(|i| (0..r).map(|j| usize::from(i == j)).collect())
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix, p: usize) -> Matrix {
    let r = a.len();
    let mut out = vec![vec![0usize; r]; r];
    for i in 0..r {
        for k in 0..r {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..r {
                out[i][j] = (out[i][j] + a[i][k] * b[k][j]) % p;
            }
        }
    }
    out
}

fn apply_matrix(m: &Matrix, v: &[usize], p: usize) -> Vec<usize> {
    let r = m.len();
    (0..r)
        .map(|i| (0..r).map(|j| m[i][j] * v[j]).sum::<usize>() % p)
        .collect()
}

/// Permutation of Z_p^r element ids induced by a matrix (ids are base-p
/// digit encodings, least significant digit = coordinate 0).
fn matrix_permutation(m: &Matrix, p: usize, r: usize, n: usize) -> Vec<ElementId> {
    (0..n)
        .map(|id| {
            let v: Vec<usize> = (0..r).map(|i| id / p.pow(i as u32) % p).collect();
            let w = apply_matrix(m, &v, p);
            w.iter()
                .enumerate()
                .map(|(i, &d)| d * p.pow(i as u32))
                .sum()
        })
        .collect()
}

/// First matrix in lexicographic entry order with order exactly q and no
/// proper nonzero invariant subspace. Irreducibility is checked by
/// requiring the cyclic span of every nonzero vector to be the full space.
fn irreducible_order_q_matrix(p: usize, q: usize, r: usize) -> Result<Matrix> {
    let cells = r * r;
    let total =
        arith::checked_pow(p, cells as u32).ok_or(GroupError::NoIrreducibleAction { p, q, r })?;
    'candidates: for code in 0..total {
        let mut m = vec![vec![0usize; r]; r];
        let mut c = code;
        for row in m.iter_mut() {
            for cell in row.iter_mut() {
                *cell = c % p;
                c /= p;
            }
        }
        // order exactly q (q prime: enough that m != I and m^q == I)
        let identity = identity_matrix(r);
        if m == identity {
            continue;
        }
        let mut power = m.clone();
        for _ in 1..q {
            power = mat_mul(&power, &m, p);
        }
        if power != identity {
            continue;
        }
        for v_id in 1..arith::checked_pow(p, r as u32).unwrap() {
            let v: Vec<usize> = (0..r).map(|i| v_id / p.pow(i as u32) % p).collect();
            if krylov_rank(&m, &v, p) < r {
                continue 'candidates;
            }
        }
        return Ok(m);
    }
    Err(GroupError::NoIrreducibleAction { p, q, r })
}

/// Dimension of span{v, Mv, M^2 v, ...}.
fn krylov_rank(m: &Matrix, v: &[usize], p: usize) -> usize {
    let r = m.len();
    let mut basis: Vec<Vec<usize>> = Vec::new();
    let mut w = v.to_vec();
    for _ in 0..r {
        reduce_and_insert(&mut basis, w.clone(), p);
        if basis.len() == r {
            break;
        }
        w = apply_matrix(m, &w, p);
    }
    basis.len()
}

/// Gaussian elimination step: reduces `v` against `basis` (rows in echelon
/// form) and inserts it when nonzero.
fn reduce_and_insert(basis: &mut Vec<Vec<usize>>, mut v: Vec<usize>, p: usize) {
    let r = v.len();
    for row in basis.iter() {
        let lead = row.iter().position(|&x| x != 0).unwrap();
        if v[lead] != 0 {
            let factor = v[lead] * mod_inverse(row[lead], p) % p;
            for j in 0..r {
                v[j] = (v[j] + p * p - factor * row[j] % p) % p;
            }
        }
    }
    if v.iter().any(|&x| x != 0) {
        basis.push(v);
        basis.sort_by_key(|row| row.iter().position(|&x| x != 0));
    }
}

fn mod_inverse(a: usize, p: usize) -> usize {
    // p prime, a != 0 mod p
    let mut result = 1usize;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp % 2 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp /= 2;
    }
    result
}

/// Builds the homomorphism extending `gens[i] -> images[i]`, if it exists:
/// elements are reached by right-multiplying known elements by generators,
/// and the candidate map is then fully verified on all products.
pub fn homomorphism_from_generators(
    domain: &GroupTable,
    codomain: &GroupTable,
    gens: &[ElementId],
    images: &[ElementId],
) -> Result<Vec<ElementId>> {
    if gens.len() != images.len() {
        return Err(GroupError::InvalidParameter(
            "homomorphism_from_generators: gens and images differ in length".into(),
        ));
    }
    let n = domain.order();
    let mut map: Vec<Option<ElementId>> = vec![None; n];
    map[0] = Some(0);
    for (&g, &img) in gens.iter().zip(images) {
        if let Some(prev) = map[g] {
            if prev != img {
                return Err(GroupError::InvalidParameter(
                    "homomorphism_from_generators: conflicting generator images".into(),
                ));
            }
        }
        map[g] = Some(img);
    }
    let mut frontier: Vec<ElementId> = vec![0];
    frontier.extend(gens.iter().copied().filter(|&g| g != 0));
    frontier.dedup();
    while let Some(x) = frontier.pop() {
        let fx = map[x].unwrap();
        for (&g, &img) in gens.iter().zip(images) {
            let xg = domain.mul(x, g);
            let fxg = codomain.mul(fx, img);
            match map[xg] {
                Some(existing) if existing != fxg => {
                    return Err(GroupError::InvalidParameter(
                        "homomorphism_from_generators: generator images are inconsistent".into(),
                    ))
                }
                Some(_) => {}
                None => {
                    map[xg] = Some(fxg);
                    frontier.push(xg);
                }
            }
        }
    }
    let map: Vec<ElementId> = map.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| {
        GroupError::InvalidParameter(
            "homomorphism_from_generators: generators do not generate the domain".into(),
        )
    })?;
    for a in 0..n {
        for b in 0..n {
            if map[domain.mul(a, b)] != codomain.mul(map[a], map[b]) {
                return Err(GroupError::InvalidParameter(
                    "homomorphism_from_generators: map is not a homomorphism".into(),
                ));
            }
        }
    }
    Ok(map)
}

/// The action of Z_3 on Q8 by the order-3 automorphism cycling the three
/// cyclic subgroups of order 4 (a -> b -> ab -> a).
pub fn q8_order3_action() -> Result<(GroupTable, GroupTable, ActionTable)> {
    let q8 = generalized_quaternion(8)?;
    let z3 = cyclic(3)?;
    // a is id 1, b is id 4, ab is id 5 in the quaternion encoding.
    let sigma = homomorphism_from_generators(&q8, &q8, &[1, 4], &[4, 5])?;
    let sigma2: Vec<ElementId> = (0..8).map(|x| sigma[sigma[x]]).collect();
    let action = ActionTable::new(vec![(0..8).collect(), sigma, sigma2]);
    Ok((q8, z3, action))
}

/// Q8 x| Z3: the smallest group whose normal Sylow subgroup is Q8 and whose
/// proper subgroups are all nilpotent.
pub fn q8_semidirect_z3() -> Result<GroupTable> {
    let (q8, z3, action) = q8_order3_action()?;
    semidirect_product(&q8, &z3, &action)
}

/// Declarative description of a constructible group, as stored in catalog
/// and descriptor JSON files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Descriptor {
    Cyclic {
        n: usize,
    },
    ElementaryAbelian {
        p: usize,
        k: u32,
    },
    Dihedral {
        order: usize,
    },
    GeneralizedQuaternion {
        order: usize,
    },
    #[serde(rename = "modular_M_p3")]
    ModularMP3 {
        p: usize,
    },
    #[serde(rename = "extraspecial_E_p3")]
    ExtraspecialEP3 {
        p: usize,
    },
    Symmetric {
        n: usize,
    },
    Alternating {
        n: usize,
    },
    DirectProduct {
        factors: Vec<Descriptor>,
    },
    SemidirectProduct {
        normal: Box<Descriptor>,
        acting: Box<Descriptor>,
        action: Vec<Vec<ElementId>>,
    },
    Schmidt {
        p: usize,
        q: usize,
        q_exp: u32,
    },
    CayleyFile {
        path: String,
    },
}

impl Descriptor {
    pub fn from_json(text: &str) -> Result<Descriptor> {
        serde_json::from_str(text).map_err(|e| GroupError::Parse(format!("descriptor: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serialization")
    }

    /// Builds the group, resolving any `cayley_file` path against
    /// `base_dir` and enforcing `limits.max_group_order`.
    pub fn build(&self, limits: &Limits, base_dir: &Path) -> Result<GroupTable> {
        let table = match self {
            Descriptor::Cyclic { n } => cyclic(*n)?,
            Descriptor::ElementaryAbelian { p, k } => elementary_abelian(*p, *k)?,
            Descriptor::Dihedral { order } => dihedral(*order)?,
            Descriptor::GeneralizedQuaternion { order } => generalized_quaternion(*order)?,
            Descriptor::ModularMP3 { p } => modular_m_p3(*p)?,
            Descriptor::ExtraspecialEP3 { p } => extraspecial_e_p3(*p)?,
            Descriptor::Symmetric { n } => symmetric(*n)?,
            Descriptor::Alternating { n } => alternating(*n)?,
            Descriptor::DirectProduct { factors } => {
                if factors.is_empty() {
                    return Err(GroupError::InvalidParameter(
                        "direct_product: needs at least one factor".into(),
                    ));
                }
                let mut acc = factors[0].build(limits, base_dir)?;
                for f in &factors[1..] {
                    acc = direct_product(&acc, &f.build(limits, base_dir)?)?;
                }
                acc
            }
            Descriptor::SemidirectProduct {
                normal,
                acting,
                action,
            } => {
                let n = normal.build(limits, base_dir)?;
                let h = acting.build(limits, base_dir)?;
                semidirect_product(&n, &h, &ActionTable::new(action.clone()))?
            }
            Descriptor::Schmidt { p, q, q_exp } => schmidt_group(*p, *q, *q_exp)?,
            Descriptor::CayleyFile { path } => {
                let full = base_dir.join(path);
                let text = std::fs::read_to_string(&full)
                    .map_err(|e| GroupError::Parse(format!("reading {}: {e}", full.display())))?;
                GroupTable::from_cayley_text(&text)?
            }
        };
        if table.order() > limits.max_group_order {
            return Err(GroupError::SizeBudgetExceeded {
                requested: table.order(),
                budget: limits.max_group_order,
            });
        }
        Ok(table)
    }
}
