//! Integer linear algebra for finite abelian groups: Smith normal form,
//! invariant factors, Z-tensor products and the diagonal formula.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have the
    /// same length.
    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> IntMatrix {
        let mut m = IntMatrix::zeros(entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * factor;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * factor;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of a Smith normal form computation: `u * m * v == d` where `d` is
/// the rectangular diagonal matrix built from `diagonal`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.u.rows(), self.v.cols());
        for (i, x) in self.diagonal.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

/// Smith normal form with unimodular transforms.
///
/// The pivot is the entry of least absolute value in the remaining block,
/// first occurrence in row-major order. The diagonal has length
/// `min(rows, cols)`, is non-negative and forms a divisor chain (zeros last).
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        loop {
            let Some((pi, pj)) = least_entry(&a, t) else {
                // remaining block is zero
                return finish(a, u, v, steps);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                let nq = -q;
                a.add_row(i, t, &nq);
                u.add_row(i, t, &nq);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                let nq = -q;
                a.add_col(j, t, &nq);
                v.add_col(j, t, &nq);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the whole remaining block.
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !a[(i, j)].is_multiple_of(&a[(t, t)]) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(a, u, v, steps)
}

fn least_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn finish(a: IntMatrix, u: IntMatrix, v: IntMatrix, steps: usize) -> SmithForm {
    let diagonal = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SmithForm { diagonal, u, v }
}

/// Incrementally maintained row lattice in Hermite-style echelon form.
///
/// Used to absorb large numbers of relation rows without ever holding the
/// full relation matrix.
#[derive(Clone, Debug)]
pub struct LatticeBuilder {
    dim: usize,
    /// basis rows indexed by pivot column
    basis: Vec<Option<Vec<BigInt>>>,
}

impl LatticeBuilder {
    pub fn new(dim: usize) -> LatticeBuilder {
        LatticeBuilder { dim, basis: vec![None; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn insert_i64(&mut self, row: &[i64]) {
        if row.iter().all(|&x| x == 0) {
            return;
        }
        self.insert(row.iter().map(|&x| BigInt::from(x)).collect());
    }

    pub fn insert(&mut self, mut row: Vec<BigInt>) {
        assert_eq!(row.len(), self.dim);
        for c in 0..self.dim {
            if row[c].is_zero() {
                continue;
            }
            match self.basis[c].take() {
                None => {
                    if row[c].is_negative() {
                        row.iter_mut().for_each(|x| *x = -std::mem::take(x));
                    }
                    self.basis[c] = Some(row);
                    self.reduce_above(c);
                    return;
                }
                Some(b) => {
                    let e = b[c].extended_gcd(&row[c]);
                    let (g, x, y) = (e.gcd, e.x, e.y);
                    let bq = &b[c] / &g;
                    let rq = &row[c] / &g;
                    let new_b: Vec<BigInt> =
                        b.iter().zip(&row).map(|(bi, ri)| &x * bi + &y * ri).collect();
                    let rest: Vec<BigInt> =
                        row.iter().zip(&b).map(|(ri, bi)| &bq * ri - &rq * bi).collect();
                    self.basis[c] = Some(new_b);
                    self.reduce_above(c);
                    row = rest;
                }
            }
        }
    }

    /// Reduces entries above the pivot at column `c` and the entries of row
    /// `c` to the right, keeping numbers bounded by the pivots.
    fn reduce_above(&mut self, c: usize) {
        let pivot_row = self.basis[c].clone().expect("pivot row");
        let p = pivot_row[c].clone();
        for r in 0..c {
            if let Some(row) = self.basis[r].as_mut() {
                let q = row[c].div_floor(&p);
                if !q.is_zero() {
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
        }
        for d in c + 1..self.dim {
            let Some(lower) = self.basis[d].clone() else { continue };
            let row = self.basis[c].as_mut().expect("pivot row");
            let q = row[d].div_floor(&lower[d]);
            if !q.is_zero() {
                for (x, y) in row.iter_mut().zip(&lower) {
                    *x -= &q * y;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.iter().filter(|b| b.is_some()).count()
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        let rows: Vec<&Vec<BigInt>> = self.basis.iter().flatten().collect();
        let mut m = IntMatrix::zeros(rows.len(), self.dim);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Invariants of `Z^dim / lattice`. Returns `None` when the quotient is
    /// infinite.
    pub fn quotient_invariants(&self) -> Option<AbelianInvariants> {
        if self.rank() < self.dim {
            return None;
        }
        let snf = smith_normal_form(&self.basis_matrix());
        let orders = snf
            .diagonal
            .iter()
            .map(|d| d.to_u64().expect("invariant factor fits in u64"))
            .collect::<Vec<_>>();
        Some(AbelianInvariants::from_cyclic_orders(&orders))
    }
}

/// Canonical invariant factors `d1 | d2 | ... | dk`, each at least 2, of a
/// finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct AbelianInvariants(Vec<u64>);

impl AbelianInvariants {
    pub fn trivial() -> AbelianInvariants {
        AbelianInvariants(Vec::new())
    }

    /// Canonicalizes an arbitrary list of cyclic factor orders (entries of 1
    /// are dropped, 0 is rejected).
    pub fn from_cyclic_orders(orders: &[u64]) -> AbelianInvariants {
        // prime -> exponents of the p-primary cyclic factors
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in orders {
            assert!(n > 0, "infinite cyclic factor in a finite abelian group");
            for (p, e) in factorize(n) {
                primary.entry(p).or_default().push(e);
            }
        }
        let k = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; k];
        for (p, mut exps) in primary {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            // the largest exponent goes to the last invariant factor
            for (i, e) in exps.into_iter().enumerate() {
                factors[k - 1 - i] *= p.pow(e);
            }
        }
        AbelianInvariants(factors)
    }

    pub fn factors(&self) -> &[u64] {
        &self.0
    }

    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    /// Invariants of the Z-tensor product: the direct sum of `C_gcd(d_i, e_j)`.
    pub fn z_tensor(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let mut orders = Vec::with_capacity(self.0.len() * other.0.len());
        for &d in &self.0 {
            for &e in &other.0 {
                orders.push(d.gcd(&e));
            }
        }
        AbelianInvariants::from_cyclic_orders(&orders)
    }

    /// The diagonal subgroup of the tensor square of the abelian group with
    /// cyclic factors `n_1, ..., n_r`: `prod C_{n_i} x prod_{j<k} C_{gcd(n_j, n_k)}`.
    /// The divisor chain itself is used as the cyclic decomposition.
    pub fn delta_of_abelian(&self) -> AbelianInvariants {
        let n = &self.0;
        let mut orders = n.clone();
        for j in 0..n.len() {
            for k in j + 1..n.len() {
                orders.push(n[j].gcd(&n[k]));
            }
        }
        AbelianInvariants::from_cyclic_orders(&orders)
    }

    /// Primes dividing the exponent (equivalently the order).
    pub fn pi_set(&self) -> BTreeSet<u64> {
        self.0.iter().flat_map(|&d| factorize(d).into_iter().map(|(p, _)| p)).collect()
    }

    /// Reconstructs invariants from the sizes of the `p^k`-torsion subgroups
    /// of an explicitly enumerated abelian group. `torsion(p, k)` must return
    /// the number of elements killed by `p^k`.
    pub fn from_torsion_counts(order: u64, mut torsion: impl FnMut(u64, u32) -> u64) -> AbelianInvariants {
        let mut orders = Vec::new();
        for (p, e) in factorize(order) {
            // |A[p^k]| = p^{sum_i min(k, e_i)}; the number of p-primary cyclic
            // factors of exponent >= k is log_p(|A[p^k]| / |A[p^{k-1}]|).
            let mut prev_log = 0u32;
            let mut at_least = Vec::new();
            for k in 1..=e {
                let log = log_p(torsion(p, k), p);
                at_least.push(log - prev_log);
                prev_log = log;
            }
            for k in 1..=e as usize {
                let here = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
                for _ in 0..here {
                    orders.push(p.pow(k as u32));
                }
            }
        }
        AbelianInvariants::from_cyclic_orders(&orders)
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

impl From<Vec<u64>> for AbelianInvariants {
    fn from(orders: Vec<u64>) -> Self {
        AbelianInvariants::from_cyclic_orders(&orders)
    }
}

fn log_p(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0, "torsion count is not a power of p");
        n /= p;
        k += 1;
    }
    k
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Primes dividing a positive integer, ascending.
pub fn pi_set_of_order(n: u64) -> BTreeSet<u64> {
    assert!(n > 0);
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Tensor square and its diagonal subgroup for a finite abelian group given
/// by a relation lattice on `r` generators and the exponent vectors of all
/// of its elements.
///
/// The tensor square is presented on the `r*r` symbols `e_i (x) e_j` with
/// relations `L (x) Z^r + Z^r (x) L`. The diagonal is enumerated by closure
/// inside the resulting product of cyclic groups and its invariants are
/// read off from torsion counts.
pub fn tensor_square_with_diagonal(
    relations: &LatticeBuilder,
    elements: &[Vec<i64>],
) -> (AbelianInvariants, AbelianInvariants) {
    let r = relations.dim();
    if r == 0 {
        return (AbelianInvariants::trivial(), AbelianInvariants::trivial());
    }
    let basis = relations.basis_matrix();
    let mut bilinear = LatticeBuilder::new(r * r);
    for i in 0..basis.rows() {
        let row = basis.row(i);
        for j in 0..r {
            let mut left = vec![BigInt::zero(); r * r];
            let mut right = vec![BigInt::zero(); r * r];
            for (a, x) in row.iter().enumerate() {
                left[a * r + j] = x.clone();
                right[j * r + a] = x.clone();
            }
            bilinear.insert(left);
            bilinear.insert(right);
        }
    }
    assert_eq!(bilinear.rank(), r * r, "tensor square of a finite group must be finite");
    let snf = smith_normal_form(&bilinear.basis_matrix());
    let moduli: Vec<i64> =
        snf.diagonal.iter().map(|d| d.to_i64().expect("modulus fits in i64")).collect();
    let square = AbelianInvariants::from_cyclic_orders(
        &moduli.iter().map(|&d| d as u64).collect::<Vec<_>>(),
    );

    // coordinates of x (x) x in the cyclic decomposition: (vec(x x^T) * V) mod d
    let to_coords = |x: &[i64]| -> Vec<i64> {
        let mut out = vec![0i64; r * r];
        for (c, slot) in out.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for a in 0..r {
                for b in 0..r {
                    let w = x[a] * x[b];
                    if w != 0 {
                        acc += BigInt::from(w) * &snf.v[(a * r + b, c)];
                    }
                }
            }
            *slot = acc.mod_floor(&BigInt::from(moduli[c])).to_i64().unwrap();
        }
        out
    };
    let gens: Vec<Vec<i64>> = elements.iter().map(|x| to_coords(x)).collect();
    let add = |a: &[i64], b: &[i64]| -> Vec<i64> {
        a.iter().zip(b).zip(&moduli).map(|((x, y), m)| (x + y) % m).collect()
    };

    let zero = vec![0i64; r * r];
    let mut members: HashSet<Vec<i64>> = HashSet::from([zero.clone()]);
    let mut queue = vec![zero];
    while let Some(x) = queue.pop() {
        for g in &gens {
            let y = add(&x, g);
            if members.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    let order = members.len() as u64;
    let diagonal = AbelianInvariants::from_torsion_counts(order, |p, k| {
        let q = p.pow(k) as i64;
        members
            .iter()
            .filter(|x| x.iter().zip(&moduli).all(|(&v, &m)| (v * q) % m == 0))
            .count() as u64
    });
    (square, diagonal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_u64(s: &SmithForm) -> Vec<u64> {
        s.diagonal.iter().map(|d| d.to_u64().unwrap()).collect()
    }

    fn check_transforms(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.diagonal_matrix());
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        for w in s.diagonal.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "{:?}", s.diagonal);
            }
        }
        s
    }

    #[test]
    fn snf_identity() {
        let s = check_transforms(&IntMatrix::identity(2));
        assert_eq!(diag_u64(&s), vec![1, 1]);
    }

    #[test]
    fn snf_coprime_diagonal() {
        let s = check_transforms(&IntMatrix::diagonal(&[2, 3]));
        assert_eq!(diag_u64(&s), vec![1, 6]);
    }

    #[test]
    fn snf_zero() {
        let s = check_transforms(&IntMatrix::zeros(1, 1));
        assert_eq!(diag_u64(&s), vec![0]);
    }

    #[test]
    fn snf_rectangular() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16], vec![0, 0, 0]]);
        let s = check_transforms(&m);
        assert_eq!(diag_u64(&s), vec![2, 6, 12]);
    }

    #[test]
    fn z_tensor_examples() {
        let c = |v: &[u64]| AbelianInvariants::from_cyclic_orders(v);
        assert_eq!(c(&[2]).z_tensor(&c(&[2])), c(&[2]));
        assert_eq!(c(&[6]).z_tensor(&c(&[4])).factors(), &[2]);
        assert!(c(&[]).z_tensor(&c(&[5, 10])).is_trivial());
        assert_eq!(c(&[2, 6]).z_tensor(&c(&[2])).factors(), &[2, 2]);
    }

    #[test]
    fn delta_formula_examples() {
        let c = |v: &[u64]| AbelianInvariants::from_cyclic_orders(v);
        assert_eq!(c(&[7]).delta_of_abelian().factors(), &[7]);
        assert_eq!(c(&[2, 4]).delta_of_abelian().factors(), &[2, 2, 4]);
        assert!(c(&[]).delta_of_abelian().is_trivial());
    }

    #[test]
    fn canonical_form() {
        assert_eq!(AbelianInvariants::from_cyclic_orders(&[6, 4, 1]).factors(), &[2, 12]);
        assert_eq!(AbelianInvariants::from_cyclic_orders(&[2, 3]).factors(), &[6]);
        assert_eq!(AbelianInvariants::from_cyclic_orders(&[4, 2, 2]).factors(), &[2, 2, 4]);
    }

    #[test]
    fn pi_sets() {
        assert!(pi_set_of_order(1).is_empty());
        assert_eq!(AbelianInvariants::from_cyclic_orders(&[6]).pi_set(), BTreeSet::from([2, 3]));
        assert_eq!(pi_set_of_order(12), BTreeSet::from([2, 3]));
    }

    #[test]
    fn lattice_quotient() {
        let mut l = LatticeBuilder::new(2);
        l.insert_i64(&[2, 0]);
        l.insert_i64(&[0, 3]);
        l.insert_i64(&[4, 6]);
        assert_eq!(l.quotient_invariants().unwrap().factors(), &[6]);
        let mut l = LatticeBuilder::new(2);
        l.insert_i64(&[2, 0]);
        assert!(l.quotient_invariants().is_none());
    }

    #[test]
    fn torsion_count_reconstruction() {
        // C2 x C4 x C8 enumerated explicitly
        let moduli = [2i64, 4, 8];
        let mut elems = Vec::new();
        for a in 0..2 {
            for b in 0..4 {
                for c in 0..8 {
                    elems.push([a, b, c]);
                }
            }
        }
        let inv = AbelianInvariants::from_torsion_counts(64, |p, k| {
            let q = p.pow(k) as i64;
            elems.iter().filter(|x| x.iter().zip(&moduli).all(|(v, m)| v * q % m == 0)).count() as u64
        });
        assert_eq!(inv.factors(), &[2, 4, 8]);
    }
}
