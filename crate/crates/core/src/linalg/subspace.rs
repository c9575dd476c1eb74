use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

/// A subspace of `F_p^n` stored by its reduced row echelon basis, so two
/// subspaces are equal iff their values are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    /// Orders by dimension, then by basis entries.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, self.dim(), self.basis.entries()).cmp(&(
            other.ambient,
            other.dim(),
            other.basis.entries(),
        ))
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `m`.
    pub fn from_rows(m: &Matrix) -> Self {
        let r = m.rref();
        let basis = r.matrix.submatrix(0, r.rank, 0, m.cols());
        Subspace {
            ambient: m.cols(),
            basis,
            pivots: r.pivots,
        }
    }

    pub fn from_vectors(field: Field, ambient: usize, vectors: &[Vec<u64>]) -> Self {
        let rows: Vec<Vec<u64>> = vectors.to_vec();
        let m = Matrix::from_rows(field, ambient, &rows).expect("vector length mismatch");
        Subspace::from_rows(&m)
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Basis rows in reduced echelon form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u64>> {
        self.basis.to_rows()
    }

    /// Canonical representative of the coset `v + self`: zero at every pivot.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = f.sub(*o, f.mul(c, b));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the echelon basis, when `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Vector with the given coordinates in the echelon basis.
    pub fn combine(&self, coords: &[u64]) -> Vec<u64> {
        assert_eq!(coords.len(), self.dim(), "coordinate count mismatch");
        let f = self.field();
        let mut out = vec![0; self.ambient];
        for (r, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = f.add(*o, f.mul(c, b));
            }
        }
        out
    }

    /// Positions outside the pivot set; the unit vectors there span a
    /// complement, and the reduced form of `v` is supported on them.
    pub fn free_positions(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the class of `v` in the quotient by `self`, against the
    /// unit vectors at [`free_positions`](Self::free_positions).
    pub fn quotient_coordinates(&self, v: &[u64]) -> Vec<u64> {
        let r = self.reduce(v);
        self.free_positions().into_iter().map(|c| r[c]).collect()
    }

    /// The projection `F^n -> F^n / self` in quotient coordinates, and the
    /// section sending each quotient coordinate to its unit vector.
    pub fn quotient_maps(&self) -> (Matrix, Matrix) {
        let f = self.field();
        let n = self.ambient;
        let unit = |j: usize| {
            let mut e = vec![0; n];
            e[j] = 1;
            e
        };
        let proj_cols: Vec<Vec<u64>> = (0..n)
            .map(|j| self.quotient_coordinates(&unit(j)))
            .collect();
        let proj = Matrix::from_columns(f, n - self.dim(), &proj_cols);
        let lift_cols: Vec<Vec<u64>> = self.free_positions().into_iter().map(unit).collect();
        (proj, Matrix::from_columns(f, n, &lift_cols))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.field() != other.field() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.field().modulus(),
                self.ambient,
                other.field().modulus(),
                other.ambient
            )));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.basis_vectors().iter().all(|v| other.contains(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::from_rows(&self.basis.vstack(&other.basis)))
    }

    /// `{x : <b, x> = 0 for every basis row b}`.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel_basis()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let ann = self.annihilator().sum(&other.annihilator())?;
        Ok(ann.annihilator())
    }

    /// Smallest subspace containing `self` and stable under every operator
    /// `v -> A v`.
    pub fn close_under(&self, operators: &[Matrix]) -> Subspace {
        let mut current = self.clone();
        loop {
            let mut vectors = current.basis_vectors();
            for a in operators {
                for v in current.basis_vectors() {
                    vectors.push(a.mul_vec(&v));
                }
            }
            let next = Subspace::from_vectors(self.field(), self.ambient, &vectors);
            if next.dim() == current.dim() {
                return current;
            }
            current = next;
        }
    }

    pub fn is_stable_under(&self, a: &Matrix) -> bool {
        self.basis_vectors()
            .iter()
            .all(|v| self.contains(&a.mul_vec(v)))
    }
}
