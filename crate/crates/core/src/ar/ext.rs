use crate::ar::ProjectivePresentation;
use crate::category::{Category, Extensions, ShortExact};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::quiver::{QuiverCategory, RepMorphism, Representation};

/// `Ext¹(x, y)` as cocycles `P₁ -> y` modulo those factoring through `d`,
/// for the minimal presentation `P₁ --d--> P₀ -> x`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub x: Representation,
    pub y: Representation,
    pub presentation: ProjectivePresentation,
    cocycle_space: Subspace,
    coboundaries: Subspace,
    class_reps: Vec<RepMorphism>,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_reps(&self) -> &[RepMorphism] {
        &self.class_reps
    }

    /// Coordinates of the class of a cocycle against [`class_reps`](Self::class_reps).
    pub fn class_coordinates(&self, cat: &QuiverCategory, phi: &RepMorphism) -> Result<Vec<u64>> {
        if phi.source() != &self.presentation.p1.object || phi.target() != &self.y {
            return Err(Error::DimensionMismatch(
                "cocycle must be a map P₁ -> Y".into(),
            ));
        }
        let coords = self
            .cocycle_space
            .coordinates(&cat.flatten(phi))
            .expect("cocycle lies in Hom(P₁, Y)");
        Ok(self.coboundaries.quotient_coordinates(&coords))
    }

    pub fn combine(&self, cat: &QuiverCategory, coords: &[u64]) -> RepMorphism {
        cat.linear_combination(
            &self.presentation.p1.object,
            &self.y,
            &self.class_reps,
            coords,
        )
    }

    /// `0 -> y -> E -> x -> 0` with `E` the pushout of the presentation
    /// along `phi`.
    pub fn materialize(&self, cat: &QuiverCategory, phi: &RepMorphism) -> ShortExact<RepMorphism> {
        let pres = &self.presentation;
        let sum = cat.direct_sum(&[pres.p0.object.clone(), self.y.clone()]);
        let u = cat.add(
            &cat.compose(&sum.injections[0], &pres.d),
            &cat.scale(
                cat.field().modulus() - 1,
                &cat.compose(&sum.injections[1], phi),
            ),
        );
        let q = cat.cokernel(&u);
        let inclusion = cat.compose(&q, &sum.injections[1]);
        let h = cat.compose(&pres.cover, &sum.projections[0]);
        let maps = q
            .maps()
            .iter()
            .zip(h.maps())
            .map(|(qv, hv)| {
                let section = qv
                    .solve_matrix(&Matrix::identity(cat.field(), qv.rows()))
                    .expect("shapes agree")
                    .expect("cokernel maps are surjective");
                hv * &section
            })
            .collect();
        let projection = RepMorphism::new(q.target().clone(), self.x.clone(), maps)
            .expect("cover vanishes on the pushout relations");
        ShortExact {
            inclusion,
            projection,
        }
    }
}

impl QuiverCategory {
    pub fn ext1(&self, x: &Representation, y: &Representation) -> Result<ExtSpace> {
        self.check_object(y)?;
        let presentation = self.projective_cover(x)?;
        let p1 = &presentation.p1.object;
        let cocycle_space = self.hom_space(p1, y);
        let coboundary_vectors: Vec<Vec<u64>> = self
            .hom_basis(&presentation.p0.object, y)
            .iter()
            .map(|g| {
                cocycle_space
                    .coordinates(&self.flatten(&self.compose(g, &presentation.d)))
                    .expect("g ∘ d lies in Hom(P₁, Y)")
            })
            .collect();
        let coboundaries =
            Subspace::from_vectors(self.field(), cocycle_space.dim(), &coboundary_vectors);
        let class_reps = coboundaries
            .free_positions()
            .into_iter()
            .map(|k| self.unflatten(p1, y, &cocycle_space.basis_vectors()[k]))
            .collect();
        Ok(ExtSpace {
            x: x.clone(),
            y: y.clone(),
            presentation,
            cocycle_space,
            coboundaries,
            class_reps,
        })
    }
}

impl Extensions for QuiverCategory {
    fn ext_dim(&self, x: &Representation, y: &Representation) -> usize {
        self.ext1(x, y).expect("objects of this category").dim()
    }

    fn ext_basis(&self, x: &Representation, y: &Representation) -> Vec<ShortExact<RepMorphism>> {
        let ext = self.ext1(x, y).expect("objects of this category");
        ext.class_reps()
            .iter()
            .map(|phi| ext.materialize(self, phi))
            .collect()
    }
}
