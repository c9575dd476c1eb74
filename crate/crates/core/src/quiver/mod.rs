//! Finite-dimensional representations of acyclic quivers over `F_p`.

mod category;
mod enumerate;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};

pub use category::{Decomposition, QuiverCategory};
pub use enumerate::{enumerate_indecomposables, positive_root_count_type_a};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// An acyclic quiver. Vertices and arrows are addressed by index; names are
/// kept for input and output.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let n = vertices.len();
        for a in &arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::InvalidObject(format!(
                    "arrow {} has an endpoint outside the {} vertices",
                    a.name, n
                )));
            }
        }
        let q = Quiver { vertices, arrows };
        if q.topological_order().is_none() {
            return Err(Error::InvalidObject("quiver has an oriented cycle".into()));
        }
        Ok(q)
    }

    /// Linearly oriented `A_n`: vertices `1..=n`, arrows `a_i: i -> i+1`.
    pub fn linear_a(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (0..n.saturating_sub(1))
            .map(|i| Arrow {
                name: format!("a{}", i + 1),
                source: i,
                target: i + 1,
            })
            .collect();
        Quiver { vertices, arrows }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
    }

    pub fn arrows_out_of(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
    }

    fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    ready.push(a.target);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// The same vertices with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// Vertex order along the underlying graph when it is a path (type A).
    pub fn type_a_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        if n == 0 {
            return Some(Vec::new());
        }
        if self.arrows.len() != n - 1 {
            return None;
        }
        let mut nbrs = vec![Vec::new(); n];
        for a in &self.arrows {
            if a.source == a.target || nbrs[a.source].contains(&a.target) {
                return None;
            }
            nbrs[a.source].push(a.target);
            nbrs[a.target].push(a.source);
        }
        if nbrs.iter().any(|v| v.len() > 2) {
            return None;
        }
        let start = (0..n).find(|&v| nbrs[v].len() <= 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = nbrs[cur].iter().find(|&&w| w != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        (order.len() == n).then_some(order)
    }

    /// All paths starting at `from`, as arrow sequences, shortest first and
    /// lexicographic by arrow index within a length.
    pub fn paths_from(&self, from: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut frontier: Vec<(usize, Vec<usize>)> = vec![(from, Vec::new())];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (v, path) in &frontier {
                for (ai, a) in self.arrows_out_of(*v) {
                    let mut p = path.clone();
                    p.push(ai);
                    next.push((a.target, p));
                }
            }
            next.sort_by(|a, b| a.1.cmp(&b.1));
            out.extend(next.iter().map(|(_, p)| p.clone()));
            frontier = next;
        }
        out
    }

    pub fn path_end(&self, from: usize, path: &[usize]) -> usize {
        path.last().map_or(from, |&a| self.arrows[a].target)
    }

    /// Paths from `from` to `to`, in the order of [`paths_from`](Self::paths_from).
    pub fn paths_between(&self, from: usize, to: usize) -> Vec<Vec<usize>> {
        self.paths_from(from)
            .into_iter()
            .filter(|p| self.path_end(from, p) == to)
            .collect()
    }
}

/// A representation: a vector space per vertex and a matrix per arrow of
/// shape `dim(target) x dim(source)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    field: Field,
    quiver: Arc<Quiver>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(
        field: Field,
        quiver: Arc<Quiver>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::InvalidObject(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::InvalidObject(format!(
                "{} matrices for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) || m.field() != field {
                return Err(Error::InvalidObject(format!(
                    "arrow {} carries a {}x{} matrix, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        Ok(Representation {
            field,
            quiver,
            dims,
            maps,
        })
    }

    pub fn zero(field: Field, quiver: Arc<Quiver>) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let maps = quiver
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(field, 0, 0))
            .collect();
        Representation {
            field,
            quiver,
            dims,
            maps,
        }
    }

    pub fn simple(field: Field, quiver: Arc<Quiver>, vertex: usize) -> Self {
        let mut dims = vec![0; quiver.vertex_count()];
        dims[vertex] = 1;
        Representation::with_zero_maps(field, quiver, dims)
    }

    /// Given dimensions with every arrow acting by zero.
    pub fn with_zero_maps(field: Field, quiver: Arc<Quiver>, dims: Vec<usize>) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims[a.target], dims[a.source]))
            .collect();
        Representation {
            field,
            quiver,
            dims,
            maps,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    /// Matrix of a path, composed along its arrows.
    pub fn path_map(&self, from: usize, path: &[usize]) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.dims[from]);
        for &a in path {
            acc = &self.maps[a] * &acc;
        }
        acc
    }

    /// Vertex-wise dual, a representation of the opposite quiver.
    pub fn dual(&self) -> Representation {
        Representation {
            field: self.field,
            quiver: Arc::new(self.quiver.opposite()),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Canonical sort key: total dimension, dimension vector, arrow entries.
    pub fn canonical_key(&self) -> (usize, Vec<usize>, Vec<Vec<u64>>) {
        (
            self.total_dim(),
            self.dims.clone(),
            self.maps.iter().map(|m| m.entries().to_vec()).collect(),
        )
    }

    pub fn same_category(&self, other: &Representation) -> Result<()> {
        if self.field != other.field {
            return Err(Error::CategoryMismatch(format!(
                "{} vs {}",
                self.field, other.field
            )));
        }
        if self.quiver != other.quiver {
            return Err(Error::CategoryMismatch("different quivers".into()));
        }
        Ok(())
    }

    /// The subrepresentation spanned at each vertex by the columns of
    /// `bases[v]`, with its inclusion. The spans must be arrow-stable and the
    /// columns independent.
    pub fn subrepresentation(&self, bases: Vec<Matrix>) -> RepMorphism {
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                let moved = m * &bases[a.source];
                bases[a.target]
                    .solve_matrix(&moved)
                    .expect("shapes agree")
                    .expect("subspaces are arrow-stable")
            })
            .collect();
        let sub = Representation {
            field: self.field,
            quiver: self.quiver.clone(),
            dims,
            maps,
        };
        RepMorphism::new_unchecked(sub, self.clone(), bases)
    }

    /// The quotient by arrow-stable subspaces, with its projection.
    pub fn quotient(&self, subs: &[Subspace]) -> RepMorphism {
        let f = self.field;
        let (proj, lifts): (Vec<Matrix>, Vec<Matrix>) =
            subs.iter().map(Subspace::quotient_maps).unzip();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| &(&proj[a.target] * m) * &lifts[a.source])
            .collect();
        let dims = proj.iter().map(Matrix::rows).collect();
        let q = Representation {
            field: f,
            quiver: self.quiver.clone(),
            dims,
            maps,
        };
        RepMorphism::new_unchecked(self.clone(), q, proj)
    }
}

/// A morphism of representations: one matrix per vertex, commuting with
/// every arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    maps: Vec<Matrix>,
}

impl RepMorphism {
    pub fn new(source: Representation, target: Representation, maps: Vec<Matrix>) -> Result<Self> {
        source.same_category(&target)?;
        if maps.len() != source.dims.len() {
            return Err(Error::InvalidMorphism(format!(
                "{} vertex matrices for {} vertices",
                maps.len(),
                source.dims.len()
            )));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.shape() != (target.dims[v], source.dims[v]) {
                return Err(Error::InvalidMorphism(format!(
                    "vertex {} carries a {}x{} matrix, expected {}x{}",
                    source.quiver.vertices()[v],
                    m.rows(),
                    m.cols(),
                    target.dims[v],
                    source.dims[v]
                )));
            }
        }
        let f = RepMorphism {
            source,
            target,
            maps,
        };
        if let Some(a) = f.failing_square() {
            return Err(Error::InvalidMorphism(format!(
                "square at arrow {} does not commute",
                f.source.quiver.arrows()[a].name
            )));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: Representation,
        target: Representation,
        maps: Vec<Matrix>,
    ) -> Self {
        let f = RepMorphism {
            source,
            target,
            maps,
        };
        debug_assert!(f.failing_square().is_none(), "non-commuting square");
        f
    }

    /// First arrow whose square `target(a) f_s = f_t source(a)` fails.
    pub fn failing_square(&self) -> Option<usize> {
        self.source
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .find(|(i, a)| {
                let lhs = self.target.map(*i) * &self.maps[a.source];
                let rhs = &self.maps[a.target] * self.source.map(*i);
                lhs != rhs
            })
            .map(|(i, _)| i)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map_at(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    /// Vertex-wise transpose, a morphism of dual representations.
    pub fn dual(&self) -> RepMorphism {
        RepMorphism {
            source: self.target.dual(),
            target: self.source.dual(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_are_rejected() {
        let v = vec!["x".to_string(), "y".to_string()];
        let arrows = vec![
            Arrow {
                name: "a".into(),
                source: 0,
                target: 1,
            },
            Arrow {
                name: "b".into(),
                source: 1,
                target: 0,
            },
        ];
        assert!(Quiver::new(v, arrows).is_err());
    }

    #[test]
    fn paths_in_linear_a3() {
        let q = Quiver::linear_a(3);
        assert_eq!(q.paths_from(0), vec![vec![], vec![0], vec![0, 1]]);
        assert_eq!(q.paths_between(0, 2), vec![vec![0, 1]]);
        assert_eq!(q.paths_between(2, 0), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn type_a_detection() {
        assert_eq!(Quiver::linear_a(3).type_a_order(), Some(vec![0, 1, 2]));
        let v: Vec<String> = (0..4).map(|i| i.to_string()).collect();
        let star = (1..4)
            .map(|i| Arrow {
                name: format!("a{i}"),
                source: i,
                target: 0,
            })
            .collect();
        assert_eq!(Quiver::new(v, star).unwrap().type_a_order(), None);
    }

    #[test]
    fn bad_shapes_rejected() {
        let f = Field::prime(2);
        let q = Arc::new(Quiver::linear_a(2));
        let bad = Representation::new(f, q.clone(), vec![1, 1], vec![Matrix::zeros(f, 2, 1)]);
        assert!(bad.is_err());
        let s1 = Representation::simple(f, q.clone(), 0);
        let p1 = Representation::new(f, q, vec![1, 1], vec![Matrix::identity(f, 1)]).unwrap();
        // f_1 = 1, f_2 = 0 from P1 to P1 does not commute.
        let m = RepMorphism::new(
            p1.clone(),
            p1.clone(),
            vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)],
        );
        assert!(m.is_err());
        let ok = RepMorphism::new(p1, s1, vec![Matrix::identity(f, 1), Matrix::zeros(f, 0, 1)]);
        assert!(ok.is_ok());
    }
}
