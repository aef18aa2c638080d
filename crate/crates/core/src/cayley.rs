//! Finite groups given by multiplication tables, and the builtin groups.
//!
//! Builtin element orders are fixed so that action tables and reports refer
//! to the same indices on every run:
//!
//! * `Cn`: element `k` is `r^k`.
//! * `Cn1xCn2x...`: element with coordinates `(e1, e2, ...)` has index
//!   `e1*n2*n3*... + e2*n3*... + ...` (first factor most significant).
//!   `V4` is `C2xC2`.
//! * `D2n` (order `2n`, `n >= 3`): `r^i s^j` has index `i + n*j`, with
//!   `s r s = r^-1`.
//! * `Q8`: `1, i, j, k, -1, -i, -j, -k`.
//! * `S3`: permutations of `{0,1,2}` in lexicographic order of image lists,
//!   multiplied left to right.
//! * `A4`: even permutations of `{0,1,2,3}`, same conventions.

use std::collections::HashMap;

use thiserror::Error;

use crate::abelian::AbelianInvariants;
use crate::fpgroup::{regular_representation, todd_coxeter, EnumError, Presentation};
use crate::perm::{Perm, PermError, PermGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty group table")]
    Empty,
    #[error("table has {rows} rows but {elements} elements are named")]
    Shape { rows: usize, elements: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: u32 },
    #[error("table is not a Latin square (row or column {0} repeats an element)")]
    NotLatin(usize),
    #[error("table has no identity element")]
    NoIdentity,
    #[error("multiplication is not associative: ({a} {b}) {c} != {a} ({b} {c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("unknown builtin group {0:?}")]
    UnknownBuiltin(String),
    #[error("group of order {0} exceeds the table size limit")]
    TooLarge(u64),
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

/// Largest order accepted for multiplication-table groups.
pub const MAX_TABLE_ORDER: usize = 512;

/// A finite group as a validated multiplication table over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
}

impl FiniteGroup {
    /// Validates the table (closure, Latin square, identity, associativity).
    pub fn from_table(names: Vec<String>, rows: Vec<Vec<u32>>) -> Result<FiniteGroup, GroupError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::TooLarge(n as u64));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::Shape { rows: rows.len(), elements: n });
        }
        let mut seen_names = std::collections::HashSet::new();
        for name in &names {
            if !seen_names.insert(name) {
                return Err(GroupError::DuplicateName(name.clone()));
            }
        }
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v as usize >= n {
                    return Err(GroupError::OutOfRange { row: i, col: j, value: v });
                }
            }
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let r = rows[i][j] as usize;
                let c = rows[j][i] as usize;
                if row_seen[r] || col_seen[c] {
                    return Err(GroupError::NotLatin(i));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] as usize == x && rows[x][e] as usize == x))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                let ab = rows[a][b] as usize;
                for c in 0..n {
                    if rows[ab][c] != rows[a][rows[b][c] as usize] {
                        return Err(GroupError::NotAssociative {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            c: names[c].clone(),
                        });
                    }
                }
            }
        }
        let table: Vec<u32> = rows.into_iter().flatten().collect();
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] as usize == identity).expect("Latin square") as u32)
            .collect();
        Ok(FiniteGroup { names, table, identity, inverse })
    }

    /// Builds the table from a rule on indices; used for trusted constructions.
    fn from_rule(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> FiniteGroup {
        let n = names.len();
        let rows = (0..n).map(|a| (0..n).map(|b| mul(a, b) as u32).collect()).collect();
        FiniteGroup::from_table(names, rows).expect("builtin construction is a group")
    }

    /// Elements of a permutation group, identity first, in breadth-first
    /// order over the generators.
    pub fn from_perm_group(group: &PermGroup) -> Result<FiniteGroup, GroupError> {
        if group.order() > MAX_TABLE_ORDER as u64 {
            return Err(GroupError::TooLarge(group.order()));
        }
        let elements = group.elements();
        let index: HashMap<Vec<u32>, usize> =
            elements.iter().enumerate().map(|(i, g)| (group.element_key(g), i)).collect();
        let names = elements.iter().map(|g| format!("{g:?}")).collect();
        let rows = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&group.element_key(&a.mul(b))] as u32).collect())
            .collect();
        FiniteGroup::from_table(names, rows)
    }

    pub fn from_permutations(gens: Vec<Perm>) -> Result<FiniteGroup, GroupError> {
        let group = PermGroup::from_generators(gens)?;
        FiniteGroup::from_perm_group(&group)
    }

    /// Enumerates the presentation over the trivial subgroup.
    pub fn from_presentation(p: &Presentation, max_cosets: usize) -> Result<FiniteGroup, GroupError> {
        let table = todd_coxeter(p, &[], max_cosets)?;
        let (group, _) = regular_representation(&table)?;
        FiniteGroup::from_perm_group(&group)
    }

    /// Resolves a builtin name: `Cn`, products such as `C2xC4`, `V4`,
    /// `D2n`, `Q8`, `S3`, `A4`.
    pub fn builtin(name: &str) -> Result<FiniteGroup, GroupError> {
        let unknown = || GroupError::UnknownBuiltin(name.to_string());
        match name {
            "V4" => return Ok(cyclic_product(&[2, 2])),
            "Q8" => return Ok(quaternion()),
            "S3" => return Ok(permutation_group(3, false)),
            "A4" => return Ok(permutation_group(4, true)),
            _ => {}
        }
        let num = |s: &str| -> Option<usize> {
            if s.is_empty() || s.starts_with('0') || !s.bytes().all(|c| c.is_ascii_digit()) {
                return None;
            }
            s.parse().ok()
        };
        if let Some(rest) = name.strip_prefix('D') {
            let order = num(rest).ok_or_else(unknown)?;
            if order < 6 || order % 2 != 0 || order > MAX_TABLE_ORDER {
                return Err(unknown());
            }
            return Ok(dihedral(order / 2));
        }
        let factors: Option<Vec<usize>> =
            name.split('x').map(|f| f.strip_prefix('C').and_then(num)).collect();
        let factors = factors.ok_or_else(unknown)?;
        let order = factors.iter().try_fold(1usize, |acc, &f| acc.checked_mul(f)).ok_or_else(unknown)?;
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::TooLarge(order as u64));
        }
        Ok(cyclic_product(&factors))
    }

    pub fn trivial() -> FiniteGroup {
        cyclic_product(&[1])
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `h^-1 g h`
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.order()).map(<[u32]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Non-identity elements in index order.
    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(move |&a| a != self.identity)
    }

    /// Right regular permutation of `a`: `x -> x a`.
    pub fn regular_perm(&self, a: usize) -> Perm {
        Perm::from_images((0..self.order()).map(|x| self.mul(x, a) as u32).collect()).expect("Latin square row")
    }

    /// Right regular representation generated by all elements.
    pub fn to_perm_group(&self) -> PermGroup {
        let gens = (0..self.order()).map(|a| self.regular_perm(a)).collect();
        PermGroup::from_semiregular_generators(self.order(), gens).expect("order within the table limit")
    }

    /// Element index of a member of [`FiniteGroup::to_perm_group`].
    pub fn element_of_regular(&self, p: &Perm) -> usize {
        p.apply(self.identity as u32) as usize
    }

    /// Subgroup generated by the given elements, as sorted indices.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[self.identity] = true;
        let mut list = vec![self.identity];
        let mut i = 0;
        while i < list.len() {
            for &g in gens {
                let y = self.mul(list[i], g);
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// Whether the index set is a subgroup.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.iter().any(|&a| a >= self.order()) || !set.contains(&self.identity) {
            return false;
        }
        let mut member = vec![false; self.order()];
        for &a in set {
            member[a] = true;
        }
        set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, b)]))
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let comms: Vec<usize> = (0..self.order())
            .flat_map(|a| (0..self.order()).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.closure(&comms)
    }

    /// Invariant factors of the abelianization.
    pub fn abelian_invariants(&self) -> AbelianInvariants {
        self.to_perm_group().abelian_invariants()
    }

    /// Element index of `name`, if present.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn cyclic_product(factors: &[usize]) -> FiniteGroup {
    let order: usize = factors.iter().product();
    let coords = |mut x: usize| -> Vec<usize> {
        let mut c = vec![0; factors.len()];
        for (i, &f) in factors.iter().enumerate().rev() {
            c[i] = x % f;
            x /= f;
        }
        c
    };
    let index = |c: &[usize]| c.iter().zip(factors).fold(0, |acc, (&e, &f)| acc * f + e);
    let names = (0..order)
        .map(|x| {
            if factors.len() == 1 {
                match x {
                    0 => "1".to_string(),
                    1 => "r".to_string(),
                    k => format!("r^{k}"),
                }
            } else {
                let c: Vec<String> = coords(x).iter().map(usize::to_string).collect();
                format!("({})", c.join(","))
            }
        })
        .collect();
    FiniteGroup::from_rule(names, |a, b| {
        let (ca, cb) = (coords(a), coords(b));
        let sum: Vec<usize> = ca.iter().zip(&cb).zip(factors).map(|((x, y), f)| (x + y) % f).collect();
        index(&sum)
    })
}

fn dihedral(n: usize) -> FiniteGroup {
    let names = (0..2 * n)
        .map(|x| {
            let (i, j) = (x % n, x / n);
            let r = match i {
                0 => String::new(),
                1 => "r".to_string(),
                k => format!("r^{k}"),
            };
            match (r.is_empty(), j) {
                (true, 0) => "1".to_string(),
                (true, _) => "s".to_string(),
                (false, 0) => r,
                (false, _) => format!("{r} s"),
            }
        })
        .collect();
    FiniteGroup::from_rule(names, |a, b| {
        let (ai, aj) = (a % n, a / n);
        let (bi, bj) = (b % n, b / n);
        // r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b + d)
        let i = if aj == 0 { (ai + bi) % n } else { (ai + n - bi) % n };
        i + n * ((aj + bj) % 2)
    })
}

fn quaternion() -> FiniteGroup {
    let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"].map(String::from).to_vec();
    // unit index u in 0..4 for 1,i,j,k; sign bit 4
    let unit_mul = |a: usize, b: usize| -> (usize, bool) {
        match (a, b) {
            (0, x) | (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    FiniteGroup::from_rule(names, |a, b| {
        let (u, neg) = unit_mul(a % 4, b % 4);
        let sign = (a / 4 + b / 4 + neg as usize) % 2;
        u + 4 * sign
    })
}

fn permutation_group(n: u32, even_only: bool) -> FiniteGroup {
    let mut perms: Vec<Vec<u32>> = Vec::new();
    let mut current: Vec<u32> = (0..n).collect();
    loop {
        perms.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (0..current.len().saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..current.len()).rev().find(|&j| current[j] > current[i]).expect("exists");
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    let perms: Vec<Perm> = perms
        .into_iter()
        .map(|p| Perm::from_images(p).expect("permutation"))
        .filter(|p| !even_only || p.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count() % 2 == 0)
        .collect();
    let index: HashMap<Perm, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let names = perms.iter().map(|p| format!("{p:?}")).collect();
    FiniteGroup::from_rule(names, |a, b| index[&perms[a].mul(&perms[b])])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        for (name, order) in [
            ("C1", 1),
            ("C2", 2),
            ("C12", 12),
            ("V4", 4),
            ("C2xC4", 8),
            ("C2xC6", 12),
            ("C2xC2xC2", 8),
            ("D6", 6),
            ("D8", 8),
            ("D10", 10),
            ("D12", 12),
            ("Q8", 8),
            ("S3", 6),
            ("A4", 12),
        ] {
            let g = FiniteGroup::builtin(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
            assert_eq!(g.identity(), 0, "{name}");
        }
        for bad in ["C0", "D4", "D7", "X", "C", "C2x", "Q16", "C02"] {
            assert!(FiniteGroup::builtin(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn builtin_structure() {
        let d8 = FiniteGroup::builtin("D8").unwrap();
        assert!(!d8.is_abelian());
        assert_eq!(d8.derived_subgroup().len(), 2);
        assert_eq!(d8.element_order(1), 4);
        assert_eq!(d8.element_order(4), 2);
        let q8 = FiniteGroup::builtin("Q8").unwrap();
        assert_eq!((1..8).filter(|&a| q8.element_order(a) == 2).count(), 1);
        assert_eq!(q8.derived_subgroup(), vec![0, 4]);
        let a4 = FiniteGroup::builtin("A4").unwrap();
        assert_eq!(a4.derived_subgroup().len(), 4);
        let s3 = FiniteGroup::builtin("S3").unwrap();
        assert_eq!(s3.derived_subgroup().len(), 3);
        assert!(FiniteGroup::builtin("C2xC6").unwrap().is_abelian());
    }

    #[test]
    fn table_validation() {
        let names = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        assert_eq!(FiniteGroup::from_table(vec![], vec![]).unwrap_err(), GroupError::Empty);
        assert!(matches!(
            FiniteGroup::from_table(names(2), vec![vec![0, 1], vec![1, 1]]),
            Err(GroupError::NotLatin(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table(names(2), vec![vec![0, 2], vec![1, 0]]),
            Err(GroupError::OutOfRange { .. })
        ));
        // a Latin square without an identity
        assert_eq!(
            FiniteGroup::from_table(names(3), vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap_err(),
            GroupError::NoIdentity
        );
        // identity at index 1 is allowed
        let g = FiniteGroup::from_table(names(2), vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.identity(), 1);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn perm_and_presentation_inputs() {
        let g = FiniteGroup::from_permutations(vec![
            Perm::from_cycles(3, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
        ])
        .unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        let p = crate::fpgroup::parse_presentation("< a, b | a^4, b^2, (a b)^2 >").unwrap();
        let d8 = FiniteGroup::from_presentation(&p, 100).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.derived_subgroup().len(), 2);
    }

    #[test]
    fn regular_perms() {
        let g = FiniteGroup::builtin("S3").unwrap();
        let pg = g.to_perm_group();
        assert_eq!(pg.order(), 6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(g.regular_perm(a).mul(&g.regular_perm(b)), g.regular_perm(g.mul(a, b)));
            }
            assert_eq!(g.element_of_regular(&g.regular_perm(a)), a);
        }
    }
}
