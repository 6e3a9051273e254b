//! Finite groups given by Cayley tables, and a small catalog of examples.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::sets::Carrier;
use crate::verdict::Verdict;

/// An unvalidated multiplication table with a designated identity and
/// inverse map. [`validate_group`] decides whether it is a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCandidate {
    carrier: Arc<Carrier>,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupCandidate {
    pub fn new(
        carrier: Arc<Carrier>,
        table: Vec<Vec<usize>>,
        identity: usize,
        inverse: Vec<usize>,
    ) -> Result<Self, Error> {
        let n = carrier.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::TableShape { order: n });
        }
        if identity >= n || inverse.len() != n {
            return Err(Error::TableShape { order: n });
        }
        let table: Vec<usize> = table.into_iter().flatten().collect();
        if table.iter().chain(&inverse).any(|&v| v >= n) {
            return Err(Error::TableShape { order: n });
        }
        Ok(GroupCandidate { carrier, table, identity, inverse })
    }

    /// Takes the identity to be the first two-sided unit of the table and each
    /// inverse to be the first right inverse; falls back to element 0 when
    /// none exists, leaving the failure for [`validate_group`] to report.
    pub fn from_table(carrier: Arc<Carrier>, table: Vec<Vec<usize>>) -> Result<Self, Error> {
        let n = carrier.len();
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(Error::TableShape { order: n });
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .unwrap_or(0);
        let inverse = (0..n)
            .map(|x| (0..n).find(|&y| table[x][y] == identity).unwrap_or(0))
            .collect();
        GroupCandidate::new(carrier, table, identity, inverse)
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    /// Overwrites one table cell. Used to build deliberately broken tables.
    pub fn set_product(&mut self, a: usize, b: usize, value: usize) {
        let n = self.order();
        assert!(a < n && b < n && value < n);
        self.table[a * n + b] = value;
    }
}

/// First violated group axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupViolation {
    /// `(ab)c != a(bc)`.
    Associativity { a: usize, b: usize, c: usize },
    /// `ex != x` or `xe != x`.
    Identity { x: usize },
    /// `x x⁻¹ != e` or `x⁻¹ x != e`.
    Inverse { x: usize },
}

impl fmt::Display for GroupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupViolation::Associativity { a, b, c } => write!(f, "associativity fails at ({a},{b},{c})"),
            GroupViolation::Identity { x } => write!(f, "identity law fails at {x}"),
            GroupViolation::Inverse { x } => write!(f, "inverse law fails at {x}"),
        }
    }
}

/// Exhaustive check of associativity, then the identity law, then the
/// inverse law.
pub fn validate_group(candidate: &GroupCandidate) -> Verdict<GroupViolation> {
    let n = candidate.order();
    let op = |a, b| candidate.op(a, b);
    for a in 0..n {
        for b in 0..n {
            let ab = op(a, b);
            for c in 0..n {
                if op(ab, c) != op(a, op(b, c)) {
                    return Verdict::Violated(GroupViolation::Associativity { a, b, c });
                }
            }
        }
    }
    let e = candidate.identity;
    if let Some(x) = (0..n).find(|&x| op(e, x) != x || op(x, e) != x) {
        return Verdict::Violated(GroupViolation::Identity { x });
    }
    let inv = &candidate.inverse;
    if let Some(x) = (0..n).find(|&x| op(x, inv[x]) != e || op(inv[x], x) != e) {
        return Verdict::Violated(GroupViolation::Inverse { x });
    }
    Verdict::Holds
}

/// A validated finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup(GroupCandidate);

impl FiniteGroup {
    pub fn new(candidate: GroupCandidate) -> Result<Self, Error> {
        match validate_group(&candidate) {
            Verdict::Holds => Ok(FiniteGroup(candidate)),
            Verdict::Violated(v) => Err(Error::NotAGroup(v)),
        }
    }

    pub fn from_table(carrier: Arc<Carrier>, table: Vec<Vec<usize>>) -> Result<Self, Error> {
        FiniteGroup::new(GroupCandidate::from_table(carrier, table)?)
    }

    /// Builds a group from an element list and a closed binary operation.
    pub fn from_operation<T: PartialEq>(
        labels: Vec<String>,
        elements: &[T],
        op: impl Fn(&T, &T) -> T,
    ) -> Result<Self, Error> {
        let carrier = Arc::new(Carrier::new(labels)?);
        let n = elements.len();
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let p = op(&elements[a], &elements[b]);
                        elements
                            .iter()
                            .position(|x| *x == p)
                            .ok_or(Error::TableShape { order: n })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        FiniteGroup::from_table(carrier, table)
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.0.carrier
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.0.op(a, b)
    }

    pub fn identity(&self) -> usize {
        self.0.identity
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.0.inverse[x]
    }

    pub fn label(&self, x: usize) -> &str {
        self.0.carrier.label(x)
    }

    pub fn as_candidate(&self) -> &GroupCandidate {
        &self.0
    }

    /// Table rows as label indices.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| (0..n).map(|b| self.op(a, b)).collect()).collect()
    }

    /// The subgroup on `members` (carrier indices, any order), with elements
    /// kept in the parent's carrier order.
    pub fn subgroup(&self, members: &[usize]) -> Result<(FiniteGroup, Vec<usize>), Error> {
        if let Verdict::Violated(w) = check_subgroup(self, members) {
            return Err(Error::NotASubgroup(w));
        }
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let carrier = Arc::new(Carrier::new(sorted.iter().map(|&i| self.label(i).to_string()))?);
        let local = |x: usize| sorted.binary_search(&x).expect("closed under product");
        let table = sorted
            .iter()
            .map(|&a| sorted.iter().map(|&b| local(self.op(a, b))).collect())
            .collect();
        Ok((FiniteGroup::from_table(carrier, table)?, sorted))
    }
}

/// Why a subset is not a subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupViolation {
    Empty,
    MissingIdentity,
    ProductEscapes { a: usize, b: usize },
    InverseEscapes { x: usize },
}

impl fmt::Display for SubgroupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupViolation::Empty => f.write_str("subset is empty"),
            SubgroupViolation::MissingIdentity => f.write_str("identity is missing"),
            SubgroupViolation::ProductEscapes { a, b } => write!(f, "product of {a} and {b} leaves the subset"),
            SubgroupViolation::InverseEscapes { x } => write!(f, "inverse of {x} leaves the subset"),
        }
    }
}

/// Crisp subgroup test on a subset given by carrier indices.
pub fn check_subgroup(group: &FiniteGroup, members: &[usize]) -> Verdict<SubgroupViolation> {
    let n = group.order();
    let mut inside = vec![false; n];
    for &m in members {
        if m >= n {
            return Verdict::Violated(SubgroupViolation::Empty);
        }
        inside[m] = true;
    }
    if members.is_empty() {
        return Verdict::Violated(SubgroupViolation::Empty);
    }
    if !inside[group.identity()] {
        return Verdict::Violated(SubgroupViolation::MissingIdentity);
    }
    for a in (0..n).filter(|&a| inside[a]) {
        for b in (0..n).filter(|&b| inside[b]) {
            if !inside[group.op(a, b)] {
                return Verdict::Violated(SubgroupViolation::ProductEscapes { a, b });
            }
        }
    }
    match (0..n).find(|&x| inside[x] && !inside[group.inverse(x)]) {
        Some(x) => Verdict::Violated(SubgroupViolation::InverseEscapes { x }),
        None => Verdict::Holds,
    }
}

/// The cyclic group `Z_n` with elements `0..n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    let elements: Vec<usize> = (0..n).collect();
    FiniteGroup::from_operation(
        elements.iter().map(usize::to_string).collect(),
        &elements,
        |a, b| (a + b) % n,
    )
    .expect("Z_n is a group")
}

/// Direct product with elements labelled `(g,h)`.
pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> FiniteGroup {
    let carrier = Arc::new(Carrier::product(left.carrier(), right.carrier()));
    let m = right.order();
    let n = left.order() * m;
    let table = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| left.op(a / m, b / m) * m + right.op(a % m, b % m))
                .collect()
        })
        .collect();
    FiniteGroup::from_table(carrier, table).expect("direct product of groups is a group")
}

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for v in 0..k {
            if !prefix.contains(&v) {
                prefix.push(v);
                extend(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), k, &mut out);
    out
}

/// One-line notation, 1-based: the permutation sending `i` to `p[i]`.
pub fn permutation_label(p: &[usize]) -> String {
    p.iter().map(|v| (v + 1).to_string()).collect()
}

/// `(p ∘ q)(i) = p(q(i))`: apply `q` first.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

/// The symmetric group on `k` points, elements in lexicographic one-line
/// order (so the identity `12..k` comes first).
pub fn symmetric(k: usize) -> FiniteGroup {
    let perms = permutations(k);
    FiniteGroup::from_operation(
        perms.iter().map(|p| permutation_label(p)).collect(),
        &perms,
        |p, q| compose(p, q),
    )
    .expect("S_k is a group")
}

/// Dihedral group of order `2n`: rotations `r0..`, reflections `s0..`, with
/// `s_i = r_i s_0`.
pub fn dihedral(n: usize) -> FiniteGroup {
    // (reflected, k) acts on Z_n by x -> (reflected ? -x : x) + k.
    let elements: Vec<(bool, usize)> = (0..n)
        .map(|k| (false, k))
        .chain((0..n).map(|k| (true, k)))
        .collect();
    let labels = elements
        .iter()
        .map(|&(s, k)| format!("{}{k}", if s { "s" } else { "r" }))
        .collect();
    FiniteGroup::from_operation(labels, &elements, |&(s1, k1), &(s2, k2)| {
        // (s1,k1)∘(s2,k2): x -> e1(e2 x + k2) + k1
        let k = if s1 { (k1 + n - k2) % n } else { (k1 + k2) % n };
        (s1 ^ s2, k)
    })
    .expect("D_n is a group")
}

/// Quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion() -> FiniteGroup {
    // unit index: 0 = 1, 1 = i, 2 = j, 3 = k
    const PRODUCT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let names = ["1", "i", "j", "k"];
    let elements: Vec<(bool, usize)> = (0..4).flat_map(|u| [(false, u), (true, u)]).collect();
    let labels = elements
        .iter()
        .map(|&(neg, u)| format!("{}{}", if neg { "-" } else { "" }, names[u]))
        .collect();
    FiniteGroup::from_operation(labels, &elements, |&(n1, u1), &(n2, u2)| {
        let (n3, u3) = PRODUCT[u1][u2];
        (n1 ^ n2 ^ n3, u3)
    })
    .expect("Q8 is a group")
}

/// Every group of order at most 8 used by the property suites:
/// `Z2..Z8`, `Z2×Z2`, `Z2×Z4`, `Z2³`, `S3`, `D4`, `Q8`.
pub fn catalog() -> Vec<(&'static str, FiniteGroup)> {
    let z2 = cyclic(2);
    vec![
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z5", cyclic(5)),
        ("Z6", cyclic(6)),
        ("Z7", cyclic(7)),
        ("Z8", cyclic(8)),
        ("Z2xZ2", direct_product(&z2, &z2)),
        ("Z2xZ4", direct_product(&z2, &cyclic(4))),
        ("Z2xZ2xZ2", direct_product(&direct_product(&z2, &z2), &z2)),
        ("S3", symmetric(3)),
        ("D4", dihedral(4)),
        ("Q8", quaternion()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups_validate() {
        let orders: Vec<usize> = catalog().iter().map(|(_, g)| g.order()).collect();
        assert_eq!(orders, vec![2, 3, 4, 5, 6, 7, 8, 4, 8, 8, 6, 8, 8]);
        for (name, g) in catalog() {
            assert!(validate_group(g.as_candidate()).holds(), "{name}");
        }
    }

    #[test]
    fn z4_table_passes() {
        let c = Arc::new(Carrier::numbered(4).unwrap());
        let table = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        let cand = GroupCandidate::from_table(c, table).unwrap();
        assert_eq!(validate_group(&cand), Verdict::Holds);
    }

    #[test]
    fn corrupted_cell_is_caught_with_a_triple() {
        let mut cand = cyclic(4).as_candidate().clone();
        cand.set_product(1, 2, 0);
        match validate_group(&cand) {
            Verdict::Violated(GroupViolation::Associativity { a, b, c }) => {
                // the reported triple genuinely fails
                assert_ne!(cand.op(cand.op(a, b), c), cand.op(a, cand.op(b, c)));
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn missing_identity_is_reported() {
        // constant table: associative but no identity
        let c = Arc::new(Carrier::numbered(2).unwrap());
        let cand = GroupCandidate::from_table(c, vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(validate_group(&cand), Verdict::Violated(GroupViolation::Identity { x: 1 }));
    }

    #[test]
    fn s3_is_nonabelian_and_closed() {
        let s3 = symmetric(3);
        assert_eq!(s3.label(s3.identity()), "123");
        let a = s3.carrier().require("213").unwrap();
        let b = s3.carrier().require("132").unwrap();
        assert_ne!(s3.op(a, b), s3.op(b, a));
        // 213 ∘ 132: 1->1->2, 2->3->3, 3->2->1
        assert_eq!(s3.label(s3.op(a, b)), "231");
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion();
        let id = |l: &str| q.carrier().require(l).unwrap();
        assert_eq!(q.op(id("i"), id("j")), id("k"));
        assert_eq!(q.op(id("j"), id("i")), id("-k"));
        assert_eq!(q.op(id("i"), id("i")), id("-1"));
        assert_eq!(q.identity(), id("1"));
    }

    #[test]
    fn dihedral_relations() {
        let d = dihedral(4);
        let id = |l: &str| d.carrier().require(l).unwrap();
        // s r s = r^-1
        let srs = d.op(d.op(id("s0"), id("r1")), id("s0"));
        assert_eq!(srs, id("r3"));
        assert_eq!(d.op(id("r1"), id("s0")), id("s1"));
        assert_eq!(d.op(id("s0"), id("r1")), id("s3"));
    }

    #[test]
    fn subgroup_checks() {
        let s3 = symmetric(3);
        let a3: Vec<usize> = ["123", "231", "312"].iter().map(|l| s3.carrier().require(l).unwrap()).collect();
        assert!(check_subgroup(&s3, &a3).holds());
        let (h, members) = s3.subgroup(&a3).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(members, {
            let mut m = a3.clone();
            m.sort();
            m
        });
        let bad = [s3.identity(), s3.carrier().require("213").unwrap(), s3.carrier().require("132").unwrap()];
        assert!(matches!(check_subgroup(&s3, &bad), Verdict::Violated(SubgroupViolation::ProductEscapes { .. })));
        assert_eq!(check_subgroup(&s3, &[]), Verdict::Violated(SubgroupViolation::Empty));
        assert_eq!(check_subgroup(&s3, &[1]), Verdict::Violated(SubgroupViolation::MissingIdentity));
    }
}
