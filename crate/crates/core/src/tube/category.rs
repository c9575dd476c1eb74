use crate::category::{Biproduct, Category, Extensions, Limits, ShortExact, Summand, Translate};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};
use crate::tube::{partitions, NilpotentPair, TubeExtSpace, TubeMorphism};

/// Finite-dimensional nilpotent pairs over `F_p`.
#[derive(Clone, Debug)]
pub struct TubeCategory {
    field: Field,
    limits: Limits,
}

impl TubeCategory {
    pub fn new(field: Field) -> Self {
        TubeCategory {
            field,
            limits: Limits::default(),
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn jordan(&self, l: usize) -> NilpotentPair {
        NilpotentPair::jordan(self.field, l)
    }

    pub fn from_partition(&self, parts: &[usize]) -> NilpotentPair {
        NilpotentPair::from_partition(self.field, parts)
    }

    pub fn check(&self, x: &NilpotentPair) -> Result<()> {
        if x.field() != self.field {
            return Err(Error::CategoryMismatch(format!(
                "object over F_{} in a category over F_{}",
                x.field().modulus(),
                self.field.modulus()
            )));
        }
        Ok(())
    }

    pub fn morphism(
        &self,
        x: &NilpotentPair,
        y: &NilpotentPair,
        f: Matrix,
    ) -> Result<TubeMorphism> {
        self.check(x)?;
        self.check(y)?;
        TubeMorphism::new(x.clone(), y.clone(), f)
    }

    /// One canonical object per partition of each `n <= bound`.
    pub fn enumerate_objects(&self, bound: usize) -> Result<Vec<NilpotentPair>> {
        let mut out = Vec::new();
        for n in 1..=bound {
            for p in partitions(n) {
                out.push(self.from_partition(p.parts()));
                if out.len() as u64 > self.limits.enumeration {
                    return Err(Error::limit(
                        format!("objects of length <= {bound}"),
                        out.len() as u64,
                        self.limits.enumeration,
                    ));
                }
            }
        }
        Ok(out)
    }

    pub fn ext1(&self, x: &NilpotentPair, y: &NilpotentPair) -> TubeExtSpace {
        TubeExtSpace::new(x, y)
    }

    /// The sequence `0 -> J_l -> J_{l+1} ⊕ J_{l-1} -> J_l -> 0`.
    pub fn almost_split_sequence(&self, l: usize) -> Result<ShortExact<TubeMorphism>> {
        if l == 0 {
            return Err(Error::InvalidObject("J_0 is the zero object".into()));
        }
        let j = self.jordan(l);
        let ext = self.ext1(&j, &j);
        let mut phi = Matrix::zeros(self.field, l, l);
        phi.set(0, 0, 1);
        Ok(ext.materialize(&phi))
    }

    /// Sub-pair spanned by the columns of `basis`.
    fn sub_pair(&self, x: &NilpotentPair, basis: Matrix) -> TubeMorphism {
        let moved = x.operator() * &basis;
        let n = basis
            .solve_matrix(&moved)
            .expect("shapes agree")
            .expect("subspace is N-stable");
        TubeMorphism::new_unchecked(
            NilpotentPair::new(n).expect("restriction is nilpotent"),
            x.clone(),
            basis,
        )
    }
}

impl Category for TubeCategory {
    type Object = NilpotentPair;
    type Morphism = TubeMorphism;

    fn field(&self) -> Field {
        self.field
    }

    fn limits(&self) -> Limits {
        self.limits
    }

    fn describe(&self, x: &NilpotentPair) -> String {
        let p = x.partition();
        if p.parts().is_empty() {
            "0".into()
        } else {
            format!("J{p}")
        }
    }

    fn source(&self, f: &TubeMorphism) -> NilpotentPair {
        f.source().clone()
    }

    fn target(&self, f: &TubeMorphism) -> NilpotentPair {
        f.target().clone()
    }

    fn length(&self, x: &NilpotentPair) -> usize {
        x.dim()
    }

    fn zero_object(&self) -> NilpotentPair {
        NilpotentPair::zero(self.field)
    }

    fn identity(&self, x: &NilpotentPair) -> TubeMorphism {
        TubeMorphism::new_unchecked(x.clone(), x.clone(), Matrix::identity(self.field, x.dim()))
    }

    fn compose(&self, g: &TubeMorphism, f: &TubeMorphism) -> TubeMorphism {
        assert_eq!(
            f.target().dim(),
            g.source().dim(),
            "composition of non-composable morphisms"
        );
        TubeMorphism::new_unchecked(
            f.source().clone(),
            g.target().clone(),
            g.matrix() * f.matrix(),
        )
    }

    /// Flat unknowns are the entries of `f` in row-major order; the
    /// constraints are `N_y f - f N_x = 0`.
    fn hom_space(&self, x: &NilpotentPair, y: &NilpotentPair) -> Subspace {
        let fd = self.field;
        let (dx, dy) = (x.dim(), y.dim());
        let (nx, ny) = (x.operator(), y.operator());
        let mut rows = Vec::with_capacity(dx * dy);
        for i in 0..dy {
            for j in 0..dx {
                let mut row = vec![0; dx * dy];
                for k in 0..dy {
                    let idx = k * dx + j;
                    row[idx] = fd.add(row[idx], ny.get(i, k));
                }
                for l in 0..dx {
                    let idx = i * dx + l;
                    row[idx] = fd.sub(row[idx], nx.get(l, j));
                }
                rows.push(row);
            }
        }
        Matrix::from_rows(fd, dx * dy, &rows)
            .expect("constraint rows have equal length")
            .kernel_basis()
    }

    fn flatten(&self, f: &TubeMorphism) -> Vec<u64> {
        f.matrix().entries().to_vec()
    }

    fn unflatten(&self, x: &NilpotentPair, y: &NilpotentPair, v: &[u64]) -> TubeMorphism {
        TubeMorphism::new_unchecked(
            x.clone(),
            y.clone(),
            Matrix::from_flat(self.field, y.dim(), x.dim(), v),
        )
    }

    fn kernel(&self, f: &TubeMorphism) -> TubeMorphism {
        let basis = f.matrix().kernel_basis().basis().transpose();
        self.sub_pair(f.source(), basis)
    }

    fn cokernel(&self, f: &TubeMorphism) -> TubeMorphism {
        let (proj, lift) = f.matrix().image_basis().quotient_maps();
        let n = &(&proj * f.target().operator()) * &lift;
        let q = NilpotentPair::new(n).expect("quotient operator is nilpotent");
        TubeMorphism::new_unchecked(f.target().clone(), q, proj)
    }

    fn image(&self, f: &TubeMorphism) -> TubeMorphism {
        let basis = f.matrix().image_basis().basis().transpose();
        self.sub_pair(f.target(), basis)
    }

    fn is_epi(&self, f: &TubeMorphism) -> bool {
        f.matrix().rank() == f.target().dim()
    }

    fn is_mono(&self, f: &TubeMorphism) -> bool {
        f.matrix().rank() == f.source().dim()
    }

    fn direct_sum(&self, objects: &[NilpotentPair]) -> Biproduct<NilpotentPair, TubeMorphism> {
        let fd = self.field;
        let blocks: Vec<Matrix> = objects.iter().map(|o| o.operator().clone()).collect();
        let sum = NilpotentPair::new(Matrix::block_diag(fd, &blocks)).expect("sum of nilpotents");
        let total = sum.dim();
        let mut off = 0;
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        for o in objects {
            let mut i = Matrix::zeros(fd, total, o.dim());
            i.paste(off, 0, &Matrix::identity(fd, o.dim()));
            projections.push(TubeMorphism::new_unchecked(
                sum.clone(),
                o.clone(),
                i.transpose(),
            ));
            injections.push(TubeMorphism::new_unchecked(o.clone(), sum.clone(), i));
            off += o.dim();
        }
        Biproduct {
            object: sum,
            injections,
            projections,
        }
    }

    fn decompose(&self, x: &NilpotentPair) -> Result<Vec<Summand<NilpotentPair, TubeMorphism>>> {
        self.check(x)?;
        let nf = x.normal_form();
        let p = &nf.change_of_basis;
        let inv = p.inverse().expect("change of basis is invertible");
        let mut off = 0;
        let mut out = Vec::new();
        for &l in nf.partition.parts() {
            let j = self.jordan(l);
            out.push(Summand {
                inclusion: TubeMorphism::new_unchecked(
                    j.clone(),
                    x.clone(),
                    p.submatrix(0, x.dim(), off, l),
                ),
                projection: TubeMorphism::new_unchecked(
                    x.clone(),
                    j.clone(),
                    inv.submatrix(off, l, 0, x.dim()),
                ),
                object: j,
            });
            off += l;
        }
        Ok(out)
    }

    fn is_indecomposable(&self, x: &NilpotentPair) -> Result<bool> {
        self.check(x)?;
        Ok(x.partition().parts().len() == 1)
    }

    fn iso_test(&self, x: &NilpotentPair, y: &NilpotentPair) -> Result<Option<TubeMorphism>> {
        self.check(x)?;
        self.check(y)?;
        let (a, b) = (x.normal_form(), y.normal_form());
        if a.partition != b.partition {
            return Ok(None);
        }
        let inv = a
            .change_of_basis
            .inverse()
            .expect("change of basis is invertible");
        Ok(Some(TubeMorphism::new_unchecked(
            x.clone(),
            y.clone(),
            &b.change_of_basis * &inv,
        )))
    }

    /// `J_1, ..., J_bound`.
    fn pool(&self, bound: usize) -> Result<Vec<NilpotentPair>> {
        Ok((1..=bound).map(|l| self.jordan(l)).collect())
    }

    fn pool_is_exhaustive(&self, _bound: usize) -> bool {
        false
    }
}

impl Extensions for TubeCategory {
    fn ext_dim(&self, x: &NilpotentPair, y: &NilpotentPair) -> usize {
        self.ext1(x, y).dim()
    }

    fn ext_basis(&self, x: &NilpotentPair, y: &NilpotentPair) -> Vec<ShortExact<TubeMorphism>> {
        let ext = self.ext1(x, y);
        ext.class_reps()
            .iter()
            .map(|phi| ext.materialize(phi))
            .collect()
    }
}

/// The translate of a homogeneous tube is the identity.
impl Translate for TubeCategory {
    fn tau(&self, x: &NilpotentPair) -> Result<NilpotentPair> {
        self.check(x)?;
        Ok(x.clone())
    }

    fn tau_inverse(&self, x: &NilpotentPair) -> Result<NilpotentPair> {
        self.check(x)?;
        Ok(x.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(p: u64) -> TubeCategory {
        TubeCategory::new(Field::prime(p))
    }

    #[test]
    fn hom_dimensions_are_min() {
        let c = cat(2);
        assert_eq!(c.hom_dim(&c.jordan(2), &c.jordan(1)), 1);
        for a in 1..=5 {
            assert_eq!(c.hom_dim(&c.jordan(a), &c.jordan(a)), a);
            for b in 1..=5 {
                assert_eq!(c.hom_dim(&c.jordan(a), &c.jordan(b)), a.min(b));
            }
        }
        assert_eq!(c.hom_dim(&c.jordan(3), &c.zero_object()), 0);
    }

    #[test]
    fn kernel_and_cokernel_examples() {
        let c = cat(3);
        let (j1, j2) = (c.jordan(1), c.jordan(2));
        let q = c.hom_basis(&j2, &j1).remove(0);
        assert!(c.is_epi(&q));
        let k = c.kernel(&q);
        assert!(c.iso_test(k.source(), &j1).unwrap().is_some());
        let i = c.hom_basis(&j1, &j2).remove(0);
        assert!(c.is_mono(&i));
        let coker = c.cokernel(&i);
        assert!(c.iso_test(coker.target(), &j1).unwrap().is_some());
        assert_eq!(c.kernel(&c.identity(&j2)).source().dim(), 0);
        assert_eq!(c.compose(&coker, &i), c.zero_morphism(&j1, coker.target()));
    }

    #[test]
    fn enumerate_objects_counts() {
        let c = cat(2);
        assert_eq!(c.enumerate_objects(0).unwrap().len(), 0);
        let two = c.enumerate_objects(2).unwrap();
        let names: Vec<String> = two.iter().map(|x| c.describe(x)).collect();
        assert_eq!(names, vec!["J(1)", "J(2)", "J(1,1)"]);
        assert_eq!(c.enumerate_objects(3).unwrap().len(), 6);
    }

    #[test]
    fn decompose_and_iso() {
        let c = cat(5);
        let x = c.from_partition(&[1, 3, 2]);
        let parts = c.decompose(&x).unwrap();
        let lens: Vec<usize> = parts.iter().map(|s| s.object.dim()).collect();
        assert_eq!(lens, vec![3, 2, 1]);
        let mut acc = c.zero_morphism(&x, &x);
        for s in &parts {
            assert_eq!(
                c.compose(&s.projection, &s.inclusion),
                c.identity(&s.object)
            );
            acc = c.add(&acc, &c.compose(&s.inclusion, &s.projection));
        }
        assert_eq!(acc, c.identity(&x));
        let y = c.from_partition(&[3, 2, 1]);
        let iso = c.iso_test(&x, &y).unwrap().unwrap();
        assert!(c.is_iso(&iso));
        assert!(c
            .iso_test(&x, &c.from_partition(&[3, 3]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn almost_split_middle_terms() {
        let c = cat(2);
        for l in 1..=4 {
            let seq = c.almost_split_sequence(l).unwrap();
            let e = seq.projection.source().clone();
            assert_eq!(e.dim(), 2 * l);
            let mut expect = vec![l + 1];
            if l > 1 {
                expect.push(l - 1);
            }
            assert_eq!(e.partition().parts(), &expect[..]);
        }
        assert!(c.almost_split_sequence(0).is_err());
    }
}
