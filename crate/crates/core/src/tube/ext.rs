use crate::category::ShortExact;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};
use crate::tube::{NilpotentPair, TubeMorphism};

/// `Ext¹(x, y)` as cocycles `φ: dim x -> dim y` modulo the coboundaries
/// `N_y g - g N_x`. The class of `φ` is the extension with middle operator
/// `[[N_y, φ], [0, N_x]]`.
#[derive(Clone, Debug)]
pub struct TubeExtSpace {
    x: NilpotentPair,
    y: NilpotentPair,
    coboundaries: Subspace,
    class_reps: Vec<Matrix>,
}

impl TubeExtSpace {
    pub fn new(x: &NilpotentPair, y: &NilpotentPair) -> Self {
        let field = x.field();
        let (dx, dy) = (x.dim(), y.dim());
        let mut images = Vec::with_capacity(dx * dy);
        for k in 0..dx * dy {
            let mut g = vec![0; dx * dy];
            g[k] = 1;
            let g = Matrix::from_flat(field, dy, dx, &g);
            images.push((&(y.operator() * &g) - &(&g * x.operator())).flatten());
        }
        let coboundaries = Subspace::from_vectors(field, dx * dy, &images);
        let class_reps = coboundaries
            .free_positions()
            .into_iter()
            .map(|k| {
                let mut v = vec![0; dx * dy];
                v[k] = 1;
                Matrix::from_flat(field, dy, dx, &v)
            })
            .collect();
        TubeExtSpace {
            x: x.clone(),
            y: y.clone(),
            coboundaries,
            class_reps,
        }
    }

    pub fn dim(&self) -> usize {
        self.class_reps.len()
    }

    pub fn left(&self) -> &NilpotentPair {
        &self.y
    }

    pub fn right(&self) -> &NilpotentPair {
        &self.x
    }

    pub fn coboundaries(&self) -> &Subspace {
        &self.coboundaries
    }

    /// One cocycle per basis class.
    pub fn class_reps(&self) -> &[Matrix] {
        &self.class_reps
    }

    fn check_cocycle(&self, phi: &Matrix) -> Result<()> {
        if phi.shape() != (self.y.dim(), self.x.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "cocycle must be {}x{}, got {}x{}",
                self.y.dim(),
                self.x.dim(),
                phi.rows(),
                phi.cols()
            )));
        }
        Ok(())
    }

    /// Coordinates of the class of `phi` against [`class_reps`](Self::class_reps).
    pub fn class_coordinates(&self, phi: &Matrix) -> Result<Vec<u64>> {
        self.check_cocycle(phi)?;
        Ok(self.coboundaries.quotient_coordinates(&phi.flatten()))
    }

    pub fn is_split(&self, phi: &Matrix) -> Result<bool> {
        self.check_cocycle(phi)?;
        Ok(self.coboundaries.contains(&phi.flatten()))
    }

    pub fn combine(&self, coords: &[u64]) -> Matrix {
        let field = self.x.field();
        let mut acc = Matrix::zeros(field, self.y.dim(), self.x.dim());
        for (rep, &c) in self.class_reps.iter().zip(coords) {
            acc = &acc + &rep.scale(c);
        }
        acc
    }

    /// `0 -> y -> E -> x -> 0` for the cocycle `phi`.
    pub fn materialize(&self, phi: &Matrix) -> ShortExact<TubeMorphism> {
        let field = self.x.field();
        let (dx, dy) = (self.x.dim(), self.y.dim());
        let mut n = Matrix::zeros(field, dx + dy, dx + dy);
        n.paste(0, 0, self.y.operator());
        n.paste(0, dy, phi);
        n.paste(dy, dy, self.x.operator());
        let e = NilpotentPair::new(n).expect("block upper triangular with nilpotent diagonal");
        let mut i = Matrix::zeros(field, dx + dy, dy);
        i.paste(0, 0, &Matrix::identity(field, dy));
        let mut p = Matrix::zeros(field, dx, dx + dy);
        p.paste(0, dy, &Matrix::identity(field, dx));
        ShortExact {
            inclusion: TubeMorphism::new_unchecked(self.y.clone(), e.clone(), i),
            projection: TubeMorphism::new_unchecked(e, self.x.clone(), p),
        }
    }

    /// Pullback along `t: T -> x`: the cocycle `φ t` of `Ext¹(T, y)`, with the
    /// materialized sequence and the comparison map into the original middle
    /// term.
    pub fn pullback(&self, phi: &Matrix, t: &TubeMorphism) -> Result<Pullback> {
        self.check_cocycle(phi)?;
        if t.target() != &self.x {
            return Err(Error::DimensionMismatch(
                "t must end at the right term".into(),
            ));
        }
        let ext = TubeExtSpace::new(t.source(), &self.y);
        let cocycle = phi * t.matrix();
        let sequence = ext.materialize(&cocycle);
        let original = self.materialize(phi);
        let field = self.x.field();
        let dy = self.y.dim();
        let dt = t.source().dim();
        let mut m = Matrix::zeros(field, dy + self.x.dim(), dy + dt);
        m.paste(0, 0, &Matrix::identity(field, dy));
        m.paste(dy, dy, t.matrix());
        let comparison = TubeMorphism::new(
            sequence.projection.source().clone(),
            original.projection.source().clone(),
            m,
        )?;
        Ok(Pullback {
            ext,
            cocycle,
            sequence,
            original,
            comparison,
            t: t.clone(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Pullback {
    pub ext: TubeExtSpace,
    pub cocycle: Matrix,
    pub sequence: ShortExact<TubeMorphism>,
    pub original: ShortExact<TubeMorphism>,
    /// `E' -> E` over `t` and the identity of the left term.
    pub comparison: TubeMorphism,
    pub t: TubeMorphism,
}

impl Pullback {
    /// Both squares commute and `E'` is the kernel of `(π, -t): E ⊕ T -> X`.
    pub fn is_pullback_square(&self) -> bool {
        let (i2, p2) = (&self.sequence.inclusion, &self.sequence.projection);
        let (i, p) = (&self.original.inclusion, &self.original.projection);
        let m = &self.comparison;
        let left = m.matrix() * i2.matrix() == *i.matrix();
        let right = p.matrix() * m.matrix() == self.t.matrix() * p2.matrix();
        // (m, π'): E' -> E ⊕ T is injective with image of the right dimension.
        let joint = m.matrix().vstack(p2.matrix());
        let kernel_dim = p.source().dim() + self.t.source().dim() - p.target().dim();
        left && right && joint.rank() == p2.source().dim() && kernel_dim == p2.source().dim()
    }
}

/// `trace(f φ)` for a cocycle `φ ∈ Ext¹(x, y)` and `f: y -> x`.
pub fn serre_pairing(phi: &Matrix, f: &TubeMorphism) -> Result<u64> {
    let prod = f.matrix().checked_mul(phi)?;
    if !prod.is_square() {
        return Err(Error::DimensionMismatch("pairing needs f: Y -> X".into()));
    }
    Ok(prod.trace())
}

/// Pairing of each basis class of `Ext¹(x, y)` (rows) with each basis element
/// of `Hom(y, x)` (columns).
pub fn gram_matrix(ext: &TubeExtSpace, homs: &[TubeMorphism]) -> Result<Matrix> {
    let field: Field = ext.x.field();
    let mut g = Matrix::zeros(field, ext.dim(), homs.len());
    for (i, phi) in ext.class_reps.iter().enumerate() {
        for (j, f) in homs.iter().enumerate() {
            g.set(i, j, serre_pairing(phi, f)?);
        }
    }
    Ok(g)
}
