//! Mutual actions of two finite groups and their compatibility.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cayley::FiniteGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("action table is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    SizeMismatch { rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
    #[error("action table entry ({row}, {col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: u32 },
    #[error("invalid action of {acting} on {acted}: {count} violations, first: {first}")]
    Invalid { acting: &'static str, acted: &'static str, count: usize, first: Violation },
}

/// Right action of an acting group on an acted group: row `h` lists `g^h`
/// for every element `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTable {
    acted_order: usize,
    rows: Vec<Vec<u32>>,
}

impl ActionTable {
    pub fn new(rows: Vec<Vec<u32>>, acted_order: usize, acting_order: usize) -> Result<ActionTable, ActionError> {
        if rows.len() != acting_order || rows.iter().any(|r| r.len() != acted_order) {
            return Err(ActionError::SizeMismatch {
                rows: rows.len(),
                cols: rows.iter().map(Vec::len).find(|&l| l != acted_order).unwrap_or(acted_order),
                expected_rows: acting_order,
                expected_cols: acted_order,
            });
        }
        for (i, r) in rows.iter().enumerate() {
            if let Some((j, &v)) = r.iter().enumerate().find(|(_, &v)| v as usize >= acted_order) {
                return Err(ActionError::OutOfRange { row: i, col: j, value: v });
            }
        }
        Ok(ActionTable { acted_order, rows })
    }

    pub fn trivial(acted: &FiniteGroup, acting: &FiniteGroup) -> ActionTable {
        let row: Vec<u32> = (0..acted.order() as u32).collect();
        ActionTable { acted_order: acted.order(), rows: vec![row; acting.order()] }
    }

    /// A group acting on itself by conjugation: `g^h = h^-1 g h`.
    pub fn conjugation(group: &FiniteGroup) -> ActionTable {
        ActionTable::conjugation_via(group, &(0..group.order()).collect::<Vec<_>>())
    }

    /// Element `h` of the acting group acts as conjugation by `images[h]`.
    pub fn conjugation_via(acted: &FiniteGroup, images: &[usize]) -> ActionTable {
        let rows = images
            .iter()
            .map(|&c| (0..acted.order()).map(|g| acted.conj(g, c) as u32).collect())
            .collect();
        ActionTable { acted_order: acted.order(), rows }
    }

    #[inline]
    pub fn apply(&self, g: usize, h: usize) -> usize {
        self.rows[h][g] as usize
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn acted_order(&self) -> usize {
        self.acted_order
    }

    pub fn acting_order(&self) -> usize {
        self.rows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.iter().all(|r| r.iter().enumerate().all(|(i, &v)| v as usize == i))
    }
}

/// One failed action axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// row `h` is not a bijection
    NotBijection { h: usize },
    /// `(g1 g2)^h != g1^h g2^h`
    NotHomomorphic { h: usize, g1: usize, g2: usize, lhs: usize, rhs: usize },
    /// `g^(h1 h2) != (g^h1)^h2`
    NotAction { h1: usize, h2: usize, g: usize, lhs: usize, rhs: usize },
    /// the acting identity moves `g`
    IdentityMoves { g: usize, image: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Violation::NotBijection { h } => write!(f, "row {h} is not a bijection"),
            Violation::NotHomomorphic { h, g1, g2, lhs, rhs } => {
                write!(f, "({g1}*{g2})^{h} = {lhs} but {g1}^{h} * {g2}^{h} = {rhs}")
            }
            Violation::NotAction { h1, h2, g, lhs, rhs } => {
                write!(f, "{g}^({h1}*{h2}) = {lhs} but ({g}^{h1})^{h2} = {rhs}")
            }
            Violation::IdentityMoves { g, image } => write!(f, "identity row sends {g} to {image}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub violations: Vec<Violation>,
}

impl ActionReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every action axiom instance and reports each violation.
pub fn validate_action(
    table: &ActionTable,
    acted: &FiniteGroup,
    acting: &FiniteGroup,
) -> Result<ActionReport, ActionError> {
    if table.acted_order != acted.order() || table.acting_order() != acting.order() {
        return Err(ActionError::SizeMismatch {
            rows: table.acting_order(),
            cols: table.acted_order,
            expected_rows: acting.order(),
            expected_cols: acted.order(),
        });
    }
    let n = acted.order();
    let mut violations = Vec::new();
    for h in 0..acting.order() {
        let mut seen = vec![false; n];
        if table.rows[h].iter().any(|&v| std::mem::replace(&mut seen[v as usize], true)) {
            violations.push(Violation::NotBijection { h });
        }
        for g1 in 0..n {
            for g2 in 0..n {
                let lhs = table.apply(acted.mul(g1, g2), h);
                let rhs = acted.mul(table.apply(g1, h), table.apply(g2, h));
                if lhs != rhs {
                    violations.push(Violation::NotHomomorphic { h, g1, g2, lhs, rhs });
                }
            }
        }
    }
    for h1 in 0..acting.order() {
        for h2 in 0..acting.order() {
            for g in 0..n {
                let lhs = table.apply(g, acting.mul(h1, h2));
                let rhs = table.apply(table.apply(g, h1), h2);
                if lhs != rhs {
                    violations.push(Violation::NotAction { h1, h2, g, lhs, rhs });
                }
            }
        }
    }
    for g in 0..n {
        let image = table.apply(g, acting.identity());
        if image != g {
            violations.push(Violation::IdentityMoves { g, image });
        }
    }
    Ok(ActionReport { violations })
}

/// Two groups acting on each other, both actions validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionPair {
    g: FiniteGroup,
    h: FiniteGroup,
    /// `H` acting on `G`
    act_on_g: ActionTable,
    /// `G` acting on `H`
    act_on_h: ActionTable,
}

impl ActionPair {
    pub fn new(g: FiniteGroup, h: FiniteGroup, act_on_g: ActionTable, act_on_h: ActionTable) -> Result<ActionPair, ActionError> {
        for (table, acted, acting, names) in [(&act_on_g, &g, &h, ("H", "G")), (&act_on_h, &h, &g, ("G", "H"))] {
            let report = validate_action(table, acted, acting)?;
            if let Some(first) = report.violations.first() {
                return Err(ActionError::Invalid {
                    acting: names.0,
                    acted: names.1,
                    count: report.violations.len(),
                    first: first.clone(),
                });
            }
        }
        Ok(ActionPair { g, h, act_on_g, act_on_h })
    }

    /// `G = H` with both actions conjugation.
    pub fn conjugation(g: &FiniteGroup) -> ActionPair {
        let t = ActionTable::conjugation(g);
        ActionPair { g: g.clone(), h: g.clone(), act_on_g: t.clone(), act_on_h: t }
    }

    pub fn trivial(g: &FiniteGroup, h: &FiniteGroup) -> ActionPair {
        ActionPair {
            g: g.clone(),
            h: h.clone(),
            act_on_g: ActionTable::trivial(g, h),
            act_on_h: ActionTable::trivial(h, g),
        }
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn action_on_g(&self) -> &ActionTable {
        &self.act_on_g
    }

    pub fn action_on_h(&self) -> &ActionTable {
        &self.act_on_h
    }

    /// `g^h` for `g` in `G`, `h` in `H`.
    #[inline]
    pub fn g_by_h(&self, g: usize, h: usize) -> usize {
        self.act_on_g.apply(g, h)
    }

    /// `h^g` for `h` in `H`, `g` in `G`.
    #[inline]
    pub fn h_by_g(&self, h: usize, g: usize) -> usize {
        self.act_on_h.apply(h, g)
    }

    pub fn is_trivial(&self) -> bool {
        self.act_on_g.is_trivial() && self.act_on_h.is_trivial()
    }

    /// The same data with the roles of `G` and `H` exchanged.
    pub fn swapped(&self) -> ActionPair {
        ActionPair {
            g: self.h.clone(),
            h: self.g.clone(),
            act_on_g: self.act_on_h.clone(),
            act_on_h: self.act_on_g.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompatFamily {
    /// `g^(h^g1) = ((g^(g1^-1))^h)^g1` over `(g, g1, h)`
    GSide,
    /// `h^(g^h1) = ((h^(h1^-1))^g)^h1` over `(h, h1, g)`
    HSide,
}

/// A triple on which the compatibility condition fails. For the `G` side
/// `x, x1` are elements of `G` and `y` of `H`; for the `H` side the roles are
/// exchanged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatFailure {
    pub family: CompatFamily,
    pub x: usize,
    pub x1: usize,
    pub y: usize,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatReport {
    pub triples_checked: u64,
    pub failures: Vec<CompatFailure>,
}

impl CompatReport {
    pub fn is_compatible(&self) -> bool {
        self.failures.is_empty()
    }
}

fn family_failures(
    family: CompatFamily,
    x_group: &FiniteGroup,
    y_group: &FiniteGroup,
    x_by_y: &ActionTable,
    y_by_x: &ActionTable,
) -> Vec<CompatFailure> {
    let n = x_group.order();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut out = Vec::new();
            for x1 in 0..n {
                let x1_inv = x_group.inv(x1);
                for y in 0..y_group.order() {
                    let lhs = x_by_y.apply(x, y_by_x.apply(y, x1));
                    let rhs = x_group.conj(x_by_y.apply(x_group.conj(x, x1_inv), y), x1);
                    if lhs != rhs {
                        out.push(CompatFailure { family, x, x1, y, lhs, rhs });
                    }
                }
            }
            out
        })
        .collect()
}

/// Evaluates both compatibility conditions on all triples.
pub fn check_compatibility(pair: &ActionPair) -> CompatReport {
    let (g, h) = (&pair.g, &pair.h);
    let mut failures = family_failures(CompatFamily::GSide, g, h, &pair.act_on_g, &pair.act_on_h);
    failures.extend(family_failures(CompatFamily::HSide, h, g, &pair.act_on_h, &pair.act_on_g));
    let triples_checked = (g.order() * g.order() * h.order() + h.order() * h.order() * g.order()) as u64;
    CompatReport { triples_checked, failures }
}

/// The incompatible example: `S3` acted on by `C2` through conjugation by a
/// transposition, with `S3` acting trivially on `C2`.
pub fn incompatible_example() -> ActionPair {
    let s3 = FiniteGroup::builtin("S3").expect("builtin");
    let c2 = FiniteGroup::builtin("C2").expect("builtin");
    let t = (0..s3.order()).find(|&a| s3.element_order(a) == 2).expect("S3 has involutions");
    let act_on_g = ActionTable::conjugation_via(&s3, &[s3.identity(), t]);
    let act_on_h = ActionTable::trivial(&c2, &s3);
    ActionPair::new(s3, c2, act_on_g, act_on_h).expect("both tables are actions")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_and_trivial_tables_are_valid() {
        for name in ["C1", "C4", "V4", "S3", "D8", "Q8", "A4"] {
            let g = FiniteGroup::builtin(name).unwrap();
            assert!(validate_action(&ActionTable::conjugation(&g), &g, &g).unwrap().is_valid(), "{name}");
            assert!(validate_action(&ActionTable::trivial(&g, &g), &g, &g).unwrap().is_valid(), "{name}");
        }
    }

    #[test]
    fn mutated_row_is_reported() {
        let g = FiniteGroup::builtin("S3").unwrap();
        let mut rows = ActionTable::conjugation(&g).rows().to_vec();
        // row 1 swaps the identity with element 1: still a bijection
        rows[1].swap(0, 1);
        let t = ActionTable::new(rows, 6, 6).unwrap();
        let report = validate_action(&t, &g, &g).unwrap();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| matches!(v, Violation::NotHomomorphic { h: 1, .. })));
        assert!(!report.violations.iter().any(|v| matches!(v, Violation::NotBijection { .. })));
    }

    #[test]
    fn size_mismatch() {
        let g = FiniteGroup::builtin("C3").unwrap();
        let h = FiniteGroup::builtin("C2").unwrap();
        let t = ActionTable::trivial(&g, &g);
        assert!(matches!(validate_action(&t, &g, &h), Err(ActionError::SizeMismatch { .. })));
        assert!(ActionTable::new(vec![vec![0, 1]], 2, 2).is_err());
        assert!(ActionTable::new(vec![vec![0, 2], vec![0, 1]], 2, 2).is_err());
    }

    #[test]
    fn compatibility_examples() {
        for name in ["C2", "S3", "Q8", "A4"] {
            let g = FiniteGroup::builtin(name).unwrap();
            assert!(check_compatibility(&ActionPair::conjugation(&g)).is_compatible());
            let c3 = FiniteGroup::builtin("C3").unwrap();
            assert!(check_compatibility(&ActionPair::trivial(&g, &c3)).is_compatible());
        }
        let bad = incompatible_example();
        let report = check_compatibility(&bad);
        assert!(!report.is_compatible());
        assert_eq!(report.triples_checked, 6 * 6 * 2 + 2 * 2 * 6);
        let s3 = bad.g();
        assert!(report
            .failures
            .iter()
            .any(|f| f.family == CompatFamily::GSide && s3.element_order(f.x1) == 3));
        // swapping the roles exchanges the families but not the verdict
        let swapped = check_compatibility(&bad.swapped());
        assert_eq!(swapped.failures.len(), report.failures.len());
        assert!(swapped.failures.iter().all(|f| f.family == CompatFamily::HSide));
    }
}
