//! Nilpotent operators on finite-dimensional spaces: a homogeneous tube.
//!
//! Objects are pairs `(V, N)` with `N` nilpotent. Every indecomposable is a
//! Jordan block `J_l`, the translate is the identity and Serre duality holds
//! on the nose through the trace form.

mod category;
mod ext;

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};

pub use category::TubeCategory;
pub use ext::{gram_matrix, serre_pairing, TubeExtSpace};

/// A space `F_p^dim` with a nilpotent endomorphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NilpotentPair {
    n: Matrix,
}

impl NilpotentPair {
    pub fn new(n: Matrix) -> Result<Self> {
        if !n.is_square() {
            return Err(Error::InvalidObject(format!(
                "operator must be square, got {}x{}",
                n.rows(),
                n.cols()
            )));
        }
        if !n.is_nilpotent() {
            return Err(Error::InvalidObject("operator is not nilpotent".into()));
        }
        Ok(NilpotentPair { n })
    }

    pub fn zero(field: Field) -> Self {
        NilpotentPair {
            n: Matrix::zeros(field, 0, 0),
        }
    }

    /// `J_l`: ones on the superdiagonal, so `N e_{i+1} = e_i`.
    pub fn jordan(field: Field, l: usize) -> Self {
        let mut n = Matrix::zeros(field, l, l);
        for i in 1..l {
            n.set(i - 1, i, 1);
        }
        NilpotentPair { n }
    }

    /// Block diagonal sum of Jordan blocks in the given order.
    pub fn from_partition(field: Field, parts: &[usize]) -> Self {
        let blocks: Vec<Matrix> = parts.iter().map(|&l| Self::jordan(field, l).n).collect();
        NilpotentPair {
            n: Matrix::block_diag(field, &blocks),
        }
    }

    pub fn field(&self) -> Field {
        self.n.field()
    }

    pub fn dim(&self) -> usize {
        self.n.rows()
    }

    pub fn operator(&self) -> &Matrix {
        &self.n
    }

    pub fn partition(&self) -> Partition {
        Partition::from_ranks(self)
    }

    /// Jordan type together with `P` such that `P⁻¹ N P` is the block form of
    /// the partition, blocks in weakly decreasing order.
    pub fn normal_form(&self) -> NormalForm {
        let field = self.field();
        let d = self.dim();
        let partition = self.partition();
        let mut chains: Vec<Vec<Vec<u64>>> = Vec::new();
        let mut span = Subspace::zero(field, d);
        let max = partition.parts().first().copied().unwrap_or(0);
        for k in (1..=max).rev() {
            let wanted = partition.parts().iter().filter(|&&l| l == k).count();
            if wanted == 0 {
                continue;
            }
            let lower = self.n.pow(k - 1).kernel_basis();
            let mut avoid = lower.sum(&span).expect("same ambient");
            let mut found = 0;
            for v in self.n.pow(k).kernel_basis().basis_vectors() {
                if found == wanted {
                    break;
                }
                if avoid.contains(&v) {
                    continue;
                }
                let mut chain = vec![v];
                for _ in 1..k {
                    let next = self.n.mul_vec(chain.last().unwrap());
                    chain.push(next);
                }
                chain.reverse();
                let s = Subspace::from_vectors(field, d, &chain);
                span = span.sum(&s).expect("same ambient");
                avoid = avoid.sum(&s).expect("same ambient");
                chains.push(chain);
                found += 1;
            }
            debug_assert_eq!(found, wanted);
        }
        let columns: Vec<Vec<u64>> = chains.into_iter().flatten().collect();
        NormalForm {
            partition,
            change_of_basis: Matrix::from_columns(field, d, &columns),
        }
    }
}

impl fmt::Debug for NilpotentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NilpotentPair({:?})", self.n)
    }
}

/// Jordan type, weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&l| l > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Read off from the ranks of the powers of `N`: the number of blocks of
    /// size at least `i` is `rank N^{i-1} - rank N^i`.
    fn from_ranks(x: &NilpotentPair) -> Self {
        let d = x.dim();
        let mut ranks = vec![d];
        let mut power = Matrix::identity(x.field(), d);
        while *ranks.last().unwrap() > 0 {
            power = &power * &x.n;
            ranks.push(power.rank());
        }
        let mut parts = Vec::new();
        for i in 1..ranks.len() {
            let at_least_i = ranks[i - 1] - ranks[i];
            let at_least_next = ranks[i] - ranks.get(i + 1).copied().unwrap_or(0);
            for _ in 0..at_least_i - at_least_next {
                parts.push(i);
            }
        }
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max_part(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(left: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for l in (1..=left.min(max)).rev() {
            prefix.push(l);
            rec(left - l, l, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug)]
pub struct NormalForm {
    pub partition: Partition,
    pub change_of_basis: Matrix,
}

/// An intertwiner `f` with `N_target f = f N_source`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TubeMorphism {
    source: NilpotentPair,
    target: NilpotentPair,
    f: Matrix,
}

impl TubeMorphism {
    pub fn new(source: NilpotentPair, target: NilpotentPair, f: Matrix) -> Result<Self> {
        if f.shape() != (target.dim(), source.dim()) {
            return Err(Error::InvalidMorphism(format!(
                "expected a {}x{} matrix, got {}x{}",
                target.dim(),
                source.dim(),
                f.rows(),
                f.cols()
            )));
        }
        if &target.n * &f != &f * &source.n {
            return Err(Error::InvalidMorphism(
                "matrix does not intertwine the operators".into(),
            ));
        }
        Ok(TubeMorphism { source, target, f })
    }

    pub(crate) fn new_unchecked(source: NilpotentPair, target: NilpotentPair, f: Matrix) -> Self {
        debug_assert!(&target.n * &f == &f * &source.n);
        TubeMorphism { source, target, f }
    }

    pub fn source(&self) -> &NilpotentPair {
        &self.source
    }

    pub fn target(&self) -> &NilpotentPair {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.f
    }
}

impl fmt::Debug for TubeMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TubeMorphism({} -> {}: {:?})",
            self.source.partition(),
            self.target.partition(),
            self.f
        )
    }
}
