use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{Biproduct, Category, Limits, Summand};
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Field, Matrix, Subspace};
use crate::quiver::{enumerate_indecomposables, Quiver, RepMorphism, Representation};

/// `mod A` for the path algebra `A` of an acyclic quiver over `F_p`.
#[derive(Clone, Debug)]
pub struct QuiverCategory {
    field: Field,
    quiver: Arc<Quiver>,
    limits: Limits,
}

/// Result of a Krull-Schmidt decomposition.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand<Representation, RepMorphism>>,
    /// Iso-classes of the summands with multiplicities, in canonical order.
    pub classes: Vec<(Representation, usize)>,
    /// False when some summand was declared indecomposable after a random
    /// (not exhaustive) search of its endomorphism ring.
    pub certified: bool,
}

impl QuiverCategory {
    pub fn new(field: Field, quiver: Quiver) -> Self {
        QuiverCategory {
            field,
            quiver: Arc::new(quiver),
            limits: Limits::default(),
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn simple(&self, v: usize) -> Representation {
        Representation::simple(self.field, self.quiver.clone(), v)
    }

    /// Representation from dimensions and arrow matrices, validated.
    pub fn representation(&self, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation> {
        Representation::new(self.field, self.quiver.clone(), dims, maps)
    }

    pub(crate) fn check_object(&self, m: &Representation) -> Result<()> {
        if m.field() != self.field || **m.quiver() != *self.quiver {
            return Err(Error::CategoryMismatch(
                "representation belongs to another quiver or field".into(),
            ));
        }
        Ok(())
    }

    fn offsets(m: &Representation, n: &Representation) -> Vec<usize> {
        let mut off = Vec::with_capacity(m.dims().len() + 1);
        let mut acc = 0;
        off.push(0);
        for v in 0..m.dims().len() {
            acc += n.dim_at(v) * m.dim_at(v);
            off.push(acc);
        }
        off
    }

    /// Linear constraints `N_a f_s - f_t M_a = 0` on the flat unknowns.
    fn hom_constraints(&self, m: &Representation, n: &Representation) -> Matrix {
        let f = self.field;
        let off = Self::offsets(m, n);
        let unknowns = *off.last().unwrap();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (ai, a) in self.quiver.arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let (ma, na) = (m.map(ai), n.map(ai));
            for i in 0..n.dim_at(t) {
                for j in 0..m.dim_at(s) {
                    let mut row = vec![0; unknowns];
                    for k in 0..n.dim_at(s) {
                        let idx = off[s] + k * m.dim_at(s) + j;
                        row[idx] = f.add(row[idx], na.get(i, k));
                    }
                    for l in 0..m.dim_at(t) {
                        let idx = off[t] + i * m.dim_at(t) + l;
                        row[idx] = f.sub(row[idx], ma.get(l, j));
                    }
                    rows.push(row);
                }
            }
        }
        Matrix::from_rows(f, unknowns, &rows).expect("constraint rows have equal length")
    }

    /// Basis of `Hom(m, n)` in canonical order.
    pub fn hom(&self, m: &Representation, n: &Representation) -> Result<Vec<RepMorphism>> {
        self.check_object(m)?;
        self.check_object(n)?;
        Ok(self.hom_basis(m, n))
    }

    /// Fitting splitting: an endomorphism power that is neither nilpotent nor
    /// invertible, if one is found. The flag reports whether the search was
    /// exhaustive.
    fn find_split(&self, m: &Representation) -> (Option<RepMorphism>, bool) {
        let space = self.hom_space(m, m);
        let d = space.dim();
        if d <= 1 || m.total_dim() <= 1 {
            return (None, true);
        }
        let power = m.dims().iter().copied().max().unwrap_or(0);
        let try_elem = |coords: &[u64]| -> Option<RepMorphism> {
            if coords.iter().all(|&c| c == 0) {
                return None;
            }
            let e = self.unflatten(m, m, &space.combine(coords));
            let ep = RepMorphism::new_unchecked(
                m.clone(),
                m.clone(),
                e.maps().iter().map(|x| x.pow(power)).collect(),
            );
            let nilpotent = ep.maps().iter().all(Matrix::is_zero);
            let invertible = ep.maps().iter().all(Matrix::is_invertible);
            (!nilpotent && !invertible).then_some(ep)
        };
        match self.field.space_size(d) {
            Some(size) if size <= self.limits.enumeration => {
                for c in all_vectors(self.field, d) {
                    if let Some(ep) = try_elem(&c) {
                        return (Some(ep), true);
                    }
                }
                (None, true)
            }
            _ => {
                for i in 0..d {
                    let mut c = vec![0; d];
                    c[i] = 1;
                    if let Some(ep) = try_elem(&c) {
                        return (Some(ep), true);
                    }
                }
                let mut rng = ChaCha8Rng::seed_from_u64(self.limits.seed);
                for _ in 0..self.limits.random_trials {
                    let c: Vec<u64> = (0..d)
                        .map(|_| rng.gen_range(0..self.field.modulus()))
                        .collect();
                    if let Some(ep) = try_elem(&c) {
                        return (Some(ep), true);
                    }
                }
                (None, false)
            }
        }
    }

    fn split_parts(&self, m: &Representation, certified: &mut bool) -> Vec<RepMorphism> {
        if m.total_dim() == 0 {
            return Vec::new();
        }
        let (split, exhaustive) = self.find_split(m);
        match split {
            None => {
                *certified &= exhaustive;
                vec![self.identity(m)]
            }
            Some(ep) => {
                let mut out = Vec::new();
                for incl in [self.kernel(&ep), self.image(&ep)] {
                    for part in self.split_parts(incl.source(), certified) {
                        out.push(self.compose(&incl, &part));
                    }
                }
                out
            }
        }
    }

    /// Krull-Schmidt decomposition with iso-class multiplicities.
    pub fn decomposition(&self, m: &Representation) -> Result<Decomposition> {
        self.check_object(m)?;
        let mut certified = true;
        let inclusions = self.split_parts(m, &mut certified);
        let n = m.dims().len();
        let mut projections: Vec<Vec<Matrix>> = vec![Vec::new(); inclusions.len()];
        for v in 0..n {
            let blocks: Vec<&Matrix> = inclusions.iter().map(|i| i.map_at(v)).collect();
            let mut whole = Matrix::zeros(self.field, m.dim_at(v), 0);
            for b in &blocks {
                whole = whole.hstack(b);
            }
            let inv = whole.inverse().expect("summand inclusions span the object");
            let mut r0 = 0;
            for (k, b) in blocks.iter().enumerate() {
                projections[k].push(inv.submatrix(r0, b.cols(), 0, m.dim_at(v)));
                r0 += b.cols();
            }
        }
        let summands: Vec<_> = inclusions
            .into_iter()
            .zip(projections)
            .map(|(inc, proj)| Summand {
                object: inc.source().clone(),
                projection: RepMorphism::new_unchecked(m.clone(), inc.source().clone(), proj),
                inclusion: inc,
            })
            .collect();
        let mut classes: Vec<(Representation, usize)> = Vec::new();
        for s in &summands {
            let mut found = false;
            for (rep, count) in classes.iter_mut() {
                if rep.dims() == s.object.dims() && self.iso_test(rep, &s.object)?.is_some() {
                    *count += 1;
                    found = true;
                    break;
                }
            }
            if !found {
                classes.push((s.object.clone(), 1));
            }
        }
        classes.sort_by_key(|a| a.0.canonical_key());
        Ok(Decomposition {
            summands,
            classes,
            certified,
        })
    }

    /// Interval module on the vertices `order[lo..=hi]` of a type-A quiver.
    fn interval(&self, order: &[usize], lo: usize, hi: usize) -> Representation {
        let f = self.field;
        let mut dims = vec![0; self.quiver.vertex_count()];
        for &v in &order[lo..=hi] {
            dims[v] = 1;
        }
        let maps = self
            .quiver
            .arrows()
            .iter()
            .map(|a| {
                if dims[a.source] == 1 && dims[a.target] == 1 {
                    Matrix::identity(f, 1)
                } else {
                    Matrix::zeros(f, dims[a.target], dims[a.source])
                }
            })
            .collect();
        Representation::new(f, self.quiver.clone(), dims, maps).expect("interval shapes agree")
    }

    /// Interval modules of length at most `bound`; for type-A quivers these are
    /// all indecomposables up to isomorphism.
    pub fn interval_modules(&self, bound: usize) -> Option<Vec<Representation>> {
        let order = self.quiver.type_a_order()?;
        let mut out = Vec::new();
        for lo in 0..order.len() {
            for hi in lo..order.len() {
                if hi - lo < bound {
                    out.push(self.interval(&order, lo, hi));
                }
            }
        }
        out.sort_by_key(Representation::canonical_key);
        Some(out)
    }
}

impl Category for QuiverCategory {
    type Object = Representation;
    type Morphism = RepMorphism;

    fn field(&self) -> Field {
        self.field
    }

    fn limits(&self) -> Limits {
        self.limits
    }

    fn describe(&self, x: &Representation) -> String {
        let dims: Vec<String> = x.dims().iter().map(|d| d.to_string()).collect();
        format!("rep({})", dims.join(","))
    }

    fn source(&self, f: &RepMorphism) -> Representation {
        f.source().clone()
    }

    fn target(&self, f: &RepMorphism) -> Representation {
        f.target().clone()
    }

    fn length(&self, x: &Representation) -> usize {
        x.total_dim()
    }

    fn zero_object(&self) -> Representation {
        Representation::zero(self.field, self.quiver.clone())
    }

    fn identity(&self, x: &Representation) -> RepMorphism {
        let maps = x
            .dims()
            .iter()
            .map(|&d| Matrix::identity(self.field, d))
            .collect();
        RepMorphism::new_unchecked(x.clone(), x.clone(), maps)
    }

    fn compose(&self, g: &RepMorphism, f: &RepMorphism) -> RepMorphism {
        assert_eq!(
            f.target().dims(),
            g.source().dims(),
            "composition of non-composable morphisms"
        );
        let maps = g.maps().iter().zip(f.maps()).map(|(a, b)| a * b).collect();
        RepMorphism::new_unchecked(f.source().clone(), g.target().clone(), maps)
    }

    fn hom_space(&self, x: &Representation, y: &Representation) -> Subspace {
        self.hom_constraints(x, y).kernel_basis()
    }

    fn flatten(&self, f: &RepMorphism) -> Vec<u64> {
        f.maps().iter().flat_map(|m| m.entries().to_vec()).collect()
    }

    fn unflatten(&self, x: &Representation, y: &Representation, v: &[u64]) -> RepMorphism {
        let off = Self::offsets(x, y);
        let maps = (0..x.dims().len())
            .map(|k| {
                Matrix::from_flat(self.field, y.dim_at(k), x.dim_at(k), &v[off[k]..off[k + 1]])
            })
            .collect();
        RepMorphism::new_unchecked(x.clone(), y.clone(), maps)
    }

    fn kernel(&self, f: &RepMorphism) -> RepMorphism {
        let bases = f
            .maps()
            .iter()
            .map(|m| {
                let k = m.kernel_basis();
                k.basis().transpose()
            })
            .collect();
        f.source().subrepresentation(bases)
    }

    fn cokernel(&self, f: &RepMorphism) -> RepMorphism {
        let subs: Vec<Subspace> = f.maps().iter().map(Matrix::image_basis).collect();
        f.target().quotient(&subs)
    }

    fn image(&self, f: &RepMorphism) -> RepMorphism {
        let bases = f
            .maps()
            .iter()
            .map(|m| m.image_basis().basis().transpose())
            .collect();
        f.target().subrepresentation(bases)
    }

    fn is_epi(&self, f: &RepMorphism) -> bool {
        f.maps().iter().all(|m| m.rank() == m.rows())
    }

    fn is_mono(&self, f: &RepMorphism) -> bool {
        f.maps().iter().all(|m| m.rank() == m.cols())
    }

    fn direct_sum(&self, objects: &[Representation]) -> Biproduct<Representation, RepMorphism> {
        let f = self.field;
        let n = self.quiver.vertex_count();
        let dims: Vec<usize> = (0..n)
            .map(|v| objects.iter().map(|o| o.dim_at(v)).sum())
            .collect();
        let maps = (0..self.quiver.arrows().len())
            .map(|a| {
                let blocks: Vec<Matrix> = objects.iter().map(|o| o.map(a).clone()).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        let sum = Representation::new(f, self.quiver.clone(), dims.clone(), maps)
            .expect("block diagonal shapes agree");
        let mut offsets = vec![0; n];
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        for o in objects {
            let mut inj = Vec::with_capacity(n);
            let mut proj = Vec::with_capacity(n);
            for v in 0..n {
                let mut i = Matrix::zeros(f, dims[v], o.dim_at(v));
                i.paste(offsets[v], 0, &Matrix::identity(f, o.dim_at(v)));
                proj.push(i.transpose());
                inj.push(i);
                offsets[v] += o.dim_at(v);
            }
            injections.push(RepMorphism::new_unchecked(o.clone(), sum.clone(), inj));
            projections.push(RepMorphism::new_unchecked(sum.clone(), o.clone(), proj));
        }
        Biproduct {
            object: sum,
            injections,
            projections,
        }
    }

    fn decompose(&self, x: &Representation) -> Result<Vec<Summand<Representation, RepMorphism>>> {
        Ok(self.decomposition(x)?.summands)
    }

    fn is_indecomposable(&self, x: &Representation) -> Result<bool> {
        if x.total_dim() == 0 {
            return Ok(false);
        }
        let (split, exhaustive) = self.find_split(x);
        match (split, exhaustive) {
            (Some(_), _) => Ok(false),
            (None, true) => Ok(true),
            (None, false) => Err(Error::Inconclusive(format!(
                "endomorphism ring of {} too large to search exhaustively",
                self.describe(x)
            ))),
        }
    }

    fn iso_test(&self, x: &Representation, y: &Representation) -> Result<Option<RepMorphism>> {
        self.check_object(x)?;
        self.check_object(y)?;
        if x.dims() != y.dims() {
            return Ok(None);
        }
        let space = self.hom_space(x, y);
        let d = space.dim();
        let invariants_agree =
            d == self.hom_dim(x, x) && d == self.hom_dim(y, y) && d == self.hom_dim(y, x);
        if !invariants_agree {
            return Ok(None);
        }
        let build = |c: &[u64]| self.unflatten(x, y, &space.combine(c));
        let invertible = |f: &RepMorphism| f.maps().iter().all(Matrix::is_invertible);
        match self.field.space_size(d) {
            Some(size) if size <= self.limits.enumeration => Ok(all_vectors(self.field, d)
                .map(|c| build(&c))
                .find(invertible)),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.limits.seed);
                for _ in 0..self.limits.random_trials {
                    let c: Vec<u64> = (0..d)
                        .map(|_| rng.gen_range(0..self.field.modulus()))
                        .collect();
                    let f = build(&c);
                    if invertible(&f) {
                        return Ok(Some(f));
                    }
                }
                Err(Error::Inconclusive(format!(
                    "{} vs {}: Hom has {} elements and invariants agree",
                    self.describe(x),
                    self.describe(y),
                    self.field
                        .space_size(d)
                        .map_or("too many".into(), |s| s.to_string())
                )))
            }
        }
    }

    fn pool(&self, bound: usize) -> Result<Vec<Representation>> {
        match self.interval_modules(bound) {
            Some(v) => Ok(v),
            None => enumerate_indecomposables(self, bound),
        }
    }

    fn pool_is_exhaustive(&self, bound: usize) -> bool {
        self.quiver.type_a_order().is_some() && bound >= self.quiver.vertex_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> QuiverCategory {
        QuiverCategory::new(Field::prime(2), Quiver::linear_a(2))
    }

    fn p1(cat: &QuiverCategory) -> Representation {
        cat.representation(vec![1, 1], vec![Matrix::identity(cat.field(), 1)])
            .unwrap()
    }

    #[test]
    fn hom_dimensions_in_a2() {
        let cat = a2();
        let (s1, s2, p1) = (cat.simple(0), cat.simple(1), p1(&cat));
        assert_eq!(cat.hom(&p1, &s1).unwrap().len(), 1);
        assert_eq!(cat.hom(&s1, &p1).unwrap().len(), 0);
        assert_eq!(cat.hom(&s2, &p1).unwrap().len(), 1);
        assert_eq!(cat.hom(&p1, &p1).unwrap().len(), 1);
        let z = cat.zero_object();
        assert_eq!(cat.hom_dim(&z, &p1), 0);
        assert_eq!(cat.hom_dim(&p1, &z), 0);
    }

    #[test]
    fn kernel_of_top_projection_is_s2() {
        let cat = a2();
        let (s1, p1) = (cat.simple(0), p1(&cat));
        let pi = cat.hom(&p1, &s1).unwrap().remove(0);
        assert!(cat.is_epi(&pi));
        assert!(!cat.is_mono(&pi));
        let k = cat.kernel(&pi);
        assert_eq!(k.source().dims(), &[0, 1]);
        assert!(cat.is_mono(&k));
        let id = cat.identity(&p1);
        assert_eq!(cat.kernel(&id).source().total_dim(), 0);
    }

    #[test]
    fn cokernel_of_zero_is_target() {
        let cat = a2();
        let p = p1(&cat);
        let z = cat.zero_morphism(&cat.zero_object(), &p);
        let q = cat.cokernel(&z);
        assert!(cat.iso_test(q.target(), &p).unwrap().is_some());
        assert!(cat.is_mono(&z));
        assert!(!cat.is_epi(&z));
    }

    #[test]
    fn semisimple_sum_is_not_p1() {
        let cat = a2();
        let sum = cat.direct_sum(&[cat.simple(0), cat.simple(1)]).object;
        assert_eq!(sum.dims(), &[1, 1]);
        assert!(sum.map(0).is_zero());
        assert!(cat.iso_test(&sum, &p1(&cat)).unwrap().is_none());
        assert!(cat.direct_sum(&[]).object.total_dim() == 0);
    }

    #[test]
    fn decompose_rank_one_arrow() {
        let cat = a2();
        let f = cat.field();
        let m = cat
            .representation(
                vec![2, 2],
                vec![Matrix::from_rows(f, 2, &[vec![1, 0], vec![0, 0]]).unwrap()],
            )
            .unwrap();
        let d = cat.decomposition(&m).unwrap();
        assert!(d.certified);
        let dims: Vec<Vec<usize>> = d.classes.iter().map(|(r, _)| r.dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(d.classes.iter().all(|(_, k)| *k == 1));
    }

    #[test]
    fn decompose_repeated_simple() {
        let cat = a2();
        let m = cat.direct_sum(&[cat.simple(0), cat.simple(0)]).object;
        let d = cat.decomposition(&m).unwrap();
        assert_eq!(d.classes.len(), 1);
        assert_eq!(d.classes[0].1, 2);
        assert_eq!(cat.decompose(&p1(&cat)).unwrap().len(), 1);
    }
}
