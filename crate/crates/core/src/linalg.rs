//! Dense linear algebra over prime fields, and matrix representations of
//! enumerated groups.

use std::fmt;

use crate::error::{GroupError, Result};
use crate::perm::FiniteGroup;

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime: a^(p-2)
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// A square matrix over the field with `p` elements, row-major.
///
/// Vectors are rows and matrices act on the right: `v ↦ v·A`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    p: u32,
    n: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn identity(p: u32, n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        FpMatrix { p, n, data }
    }

    pub fn zero(p: u32, n: usize) -> Self {
        FpMatrix {
            p,
            n,
            data: vec![0; n * n],
        }
    }

    pub fn scalar(p: u32, n: usize, c: u32) -> Self {
        let mut m = Self::identity(p, n);
        for x in m.data.iter_mut() {
            *x *= c % p;
        }
        m
    }

    /// Builds a matrix from rows, reducing entries (negative allowed) mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::InvalidArgument("matrix must be square".into()));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|&x| x.rem_euclid(p as i64) as u32)
            .collect();
        Ok(FpMatrix { p, n, data })
    }

    pub(crate) fn from_data(p: u32, n: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        FpMatrix { p, n, data }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        let n = self.n;
        let p = self.p as u64;
        let mut data = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let cell = &mut data[i * n + j];
                    *cell = ((*cell as u64 + a * other.data[k * n + j] as u64) % p) as u32;
                }
            }
        }
        FpMatrix { p: self.p, n, data }
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a + b) % self.p)
            .collect();
        FpMatrix {
            p: self.p,
            n: self.n,
            data,
        }
    }

    /// `v·A` for a row vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let n = self.n;
        let p = self.p as u64;
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| v[i] as u64 * self.data[i * n + j] as u64)
                    .sum::<u64>()
                    % p
            } as u32)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.p, self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<u32>> = (0..self.n).map(|i| self.row(i).to_vec()).collect();
        let mut s = Subspace::new(self.p, self.n);
        for r in rows {
            s.insert(&r);
        }
        s.dim()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn order(&self) -> Option<usize> {
        if !self.is_invertible() {
            return None;
        }
        let id = Self::identity(self.p, self.n);
        let mut acc = self.clone();
        let mut k = 1;
        while acc != id {
            acc = acc.mul(self);
            k += 1;
        }
        Some(k)
    }

    /// Dimension of the fixed space `{v : v·A = v}`.
    pub fn fixed_dim(&self) -> usize {
        let minus_id = FpMatrix::scalar(self.p, self.n, self.p - 1);
        self.n - self.add(&minus_id).rank()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        let k = self.order()?;
        let mut acc = Self::identity(self.p, self.n);
        for _ in 0..k - 1 {
            acc = acc.mul(self);
        }
        Some(acc)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = (0..self.n).map(|i| self.row(i)).collect();
        write!(f, "F{}{:?}", self.p, rows)
    }
}

/// Encodes a vector over `F_p` as an integer, first coordinate least significant.
pub fn encode(v: &[u32], p: u32) -> usize {
    v.iter()
        .rev()
        .fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

pub fn decode(mut code: usize, p: u32, dim: usize) -> Vec<u32> {
    let mut v = vec![0; dim];
    for slot in v.iter_mut() {
        *slot = (code % p as usize) as u32;
        code /= p as usize;
    }
    v
}

/// A subspace of `F_p^n` kept in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: u32,
    n: usize,
    /// Echelon rows with their pivot columns, sorted by pivot.
    rows: Vec<(usize, Vec<u32>)>,
}

impl Subspace {
    pub fn new(p: u32, n: usize) -> Self {
        Subspace {
            p,
            n,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot] as u64;
            if c != 0 {
                for j in 0..self.n {
                    v[j] = ((v[j] as u64 + (p - c) * row[j] as u64) % p) as u32;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`, returning true when the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut r = self.reduce(v);
        let Some(pivot) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p as u64;
        let inv = inv_mod(r[pivot], self.p) as u64;
        for x in r.iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot] as u64;
            if c != 0 {
                for j in 0..self.n {
                    row[j] = ((row[j] as u64 + (p - c) * r[j] as u64) % p) as u32;
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < pivot);
        self.rows.insert(at, (pivot, r));
        true
    }

    pub fn basis(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

/// Basis of the solution space of the homogeneous system `rows · x = 0`.
pub fn nullspace(p: u32, ncols: usize, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let pp = p as u64;
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, sel);
        let inv = inv_mod(m[r][c], p) as u64;
        for x in m[r].iter_mut() {
            *x = (*x as u64 * inv % pp) as u32;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c] as u64;
                for j in 0..ncols {
                    m[i][j] = ((m[i][j] as u64 + (pp - f) * m[r][j] as u64) % pp) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u32; ncols];
            x[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = ((pp - m[i][f] as u64) % pp) as u32;
            }
            x
        })
        .collect()
}

/// A linear representation given by one invertible matrix per group generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    pub p: u32,
    pub dim: usize,
    pub matrices: Vec<FpMatrix>,
}

impl Representation {
    pub fn new(p: u32, dim: usize, matrices: Vec<FpMatrix>) -> Result<Self> {
        if !crate::constructions::is_prime(p as u64) {
            return Err(GroupError::InvalidAction(format!("{p} is not prime")));
        }
        for m in &matrices {
            if m.prime() != p || m.dim() != dim || !m.is_invertible() {
                return Err(GroupError::InvalidAction(
                    "matrices must be invertible over the stated field".into(),
                ));
            }
        }
        Ok(Representation { p, dim, matrices })
    }

    pub fn size(&self) -> usize {
        (self.p as usize).pow(self.dim as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.matrices.iter().all(|m| m.is_identity())
    }

    /// Matrices of every element of `h`, checking that the generator
    /// matrices define a homomorphism.
    pub fn element_matrices(&self, h: &FiniteGroup) -> Result<Vec<FpMatrix>> {
        if self.matrices.len() != h.generators().len() {
            return Err(GroupError::InvalidAction(format!(
                "{} matrices for {} generators",
                self.matrices.len(),
                h.generators().len()
            )));
        }
        let mut mats = vec![FpMatrix::identity(self.p, self.dim); h.order()];
        for &x in &h.bfs_order()[1..] {
            let x = x as usize;
            let (parent, s) = h.tree_edge(x).unwrap();
            mats[x] = mats[parent].mul(&self.matrices[s]);
        }
        for x in 0..h.order() {
            for (s, m) in self.matrices.iter().enumerate() {
                if mats[h.mul_generator(x, s)] != mats[x].mul(m) {
                    return Err(GroupError::InvalidAction(
                        "matrices do not satisfy the group relations".into(),
                    ));
                }
            }
        }
        Ok(mats)
    }

    /// Irreducibility by spinning: every nonzero vector generates the whole space.
    pub fn is_irreducible(&self) -> bool {
        let total = self.size();
        (1..total).all(|code| {
            let v = decode(code, self.p, self.dim);
            self.spin(&v).dim() == self.dim
        })
    }

    /// The submodule generated by `v`.
    pub fn spin(&self, v: &[u32]) -> Subspace {
        let mut span = Subspace::new(self.p, self.dim);
        let mut queue = vec![v.to_vec()];
        while let Some(w) = queue.pop() {
            if span.insert(&w) {
                for m in &self.matrices {
                    queue.push(m.apply(&w));
                }
            }
        }
        span
    }

    /// Basis of `Hom_G(self, other)`: matrices `T` with `A_s T = T B_s`.
    pub fn hom_space(&self, other: &Representation) -> Vec<RectMatrix> {
        let (n, m) = (self.dim, other.dim);
        let p = self.p;
        // Unknown T is n×m, entry (i, j) at i*m + j.
        let mut rows = Vec::new();
        for (a, b) in self.matrices.iter().zip(&other.matrices) {
            for i in 0..n {
                for j in 0..m {
                    let mut row = vec![0u32; n * m];
                    // (A T)_{ij} = Σ_k A_{ik} T_{kj}
                    for k in 0..n {
                        let idx = k * m + j;
                        row[idx] = (row[idx] + a.get(i, k)) % p;
                    }
                    // - (T B)_{ij} = - Σ_k T_{ik} B_{kj}
                    for k in 0..m {
                        let idx = i * m + k;
                        row[idx] = (row[idx] + (p - b.get(k, j)) % p) % p;
                    }
                    rows.push(row);
                }
            }
        }
        nullspace(p, n * m, &rows)
            .into_iter()
            .map(|data| RectMatrix {
                p,
                rows: n,
                cols: m,
                data,
            })
            .collect()
    }

    /// Basis of the commutant `End_G(V)`, as square matrices.
    pub fn endomorphism_basis(&self) -> Vec<FpMatrix> {
        self.hom_space(self)
            .into_iter()
            .map(|t| FpMatrix::from_data(self.p, self.dim, t.data))
            .collect()
    }
}

/// A rectangular matrix over `F_p`, acting on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RectMatrix {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl RectMatrix {
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.cols)
            .map(|j| {
                ((0..self.rows)
                    .map(|i| v[i] as u64 * self.data[i * self.cols + j] as u64)
                    .sum::<u64>()
                    % p) as u32
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_simple_system() {
        // x + y = 0 over F_3
        let ns = nullspace(3, 2, &[vec![1, 1]]);
        assert_eq!(ns, vec![vec![2, 1]]);
        assert_eq!(nullspace(5, 3, &[]).len(), 3);
    }

    #[test]
    fn matrix_order_and_inverse() {
        let a = FpMatrix::from_rows(3, &[vec![1, 1], vec![-1, 1]]).unwrap();
        assert_eq!(a.order(), Some(8));
        assert!(a.mul(&a.inverse().unwrap()).is_identity());
        assert_eq!(FpMatrix::identity(3, 2).fixed_dim(), 2);
    }

    #[test]
    fn subspace_membership() {
        let mut s = Subspace::new(2, 3);
        assert!(s.insert(&[1, 1, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 0, 1]));
        assert!(s.contains(&[1, 0, 1]));
        assert!(!s.contains(&[1, 0, 0]));
    }

    #[test]
    fn encode_round_trip() {
        for code in 0..27 {
            assert_eq!(encode(&decode(code, 3, 3), 3), code);
        }
    }

    #[test]
    fn inversion_module_commutant_is_scalars() {
        let rep = Representation::new(3, 1, vec![FpMatrix::scalar(3, 1, 2)]).unwrap();
        assert_eq!(rep.endomorphism_basis().len(), 1);
        assert!(rep.is_irreducible());
        let rep2 = Representation::new(
            2,
            2,
            vec![FpMatrix::from_rows(2, &[vec![0, 1], vec![1, 1]]).unwrap()],
        )
        .unwrap();
        // C_3 acting on F_2^2: commutant is F_4.
        assert_eq!(rep2.endomorphism_basis().len(), 2);
        assert!(rep2.is_irreducible());
    }
}
