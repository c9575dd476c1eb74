//! The interface the determinedness engine runs against.
//!
//! A [`Category`] is a Hom-finite `F_p`-linear abelian category whose Hom
//! spaces are realized as subspaces of a flat coordinate space. Every
//! morphism flattens to a vector; the engine does all of its work on those
//! vectors and only asks the instance for composition, kernels and the like.

use std::fmt::Debug;

use crate::error::Result;
use crate::linalg::{all_vectors, Field, Subspace};

/// Enumeration caps and randomness shared by the search-heavy operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest finite set (Hom set, module, endomorphism ring) that is
    /// enumerated element by element.
    pub enumeration: u64,
    /// Random trials used once a set is too large to enumerate.
    pub random_trials: usize,
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 1 << 16,
            random_trials: 256,
            seed: 0x5eed,
        }
    }
}

/// `X_1 ⊕ ... ⊕ X_n` with its structure maps.
#[derive(Clone, Debug)]
pub struct Biproduct<O, M> {
    pub object: O,
    pub injections: Vec<M>,
    pub projections: Vec<M>,
}

/// An indecomposable summand of an object, with split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand<O, M> {
    pub object: O,
    pub inclusion: M,
    pub projection: M,
}

/// `0 -> left -> middle -> right -> 0`, stored by its two maps.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortExact<M> {
    pub inclusion: M,
    pub projection: M,
}

pub trait Category {
    type Object: Clone + Debug + PartialEq;
    type Morphism: Clone + Debug + PartialEq;

    fn field(&self) -> Field;
    fn limits(&self) -> Limits;
    fn describe(&self, x: &Self::Object) -> String;

    fn source(&self, f: &Self::Morphism) -> Self::Object;
    fn target(&self, f: &Self::Morphism) -> Self::Object;
    /// Composition length; the total dimension for the instances here.
    fn length(&self, x: &Self::Object) -> usize;
    fn zero_object(&self) -> Self::Object;
    fn identity(&self, x: &Self::Object) -> Self::Morphism;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Morphism, f: &Self::Morphism) -> Self::Morphism;

    /// `Hom(x, y)` inside the flat coordinate space of `x -> y` maps.
    fn hom_space(&self, x: &Self::Object, y: &Self::Object) -> Subspace;
    fn flatten(&self, f: &Self::Morphism) -> Vec<u64>;
    fn unflatten(&self, x: &Self::Object, y: &Self::Object, v: &[u64]) -> Self::Morphism;

    /// Mono into the source.
    fn kernel(&self, f: &Self::Morphism) -> Self::Morphism;
    /// Epi out of the target.
    fn cokernel(&self, f: &Self::Morphism) -> Self::Morphism;
    /// Mono into the target.
    fn image(&self, f: &Self::Morphism) -> Self::Morphism;
    fn is_epi(&self, f: &Self::Morphism) -> bool;
    fn is_mono(&self, f: &Self::Morphism) -> bool;

    fn direct_sum(&self, objects: &[Self::Object]) -> Biproduct<Self::Object, Self::Morphism>;
    /// Krull-Schmidt decomposition into indecomposable summands.
    fn decompose(&self, x: &Self::Object) -> Result<Vec<Summand<Self::Object, Self::Morphism>>>;
    fn is_indecomposable(&self, x: &Self::Object) -> Result<bool>;
    fn iso_test(&self, x: &Self::Object, y: &Self::Object) -> Result<Option<Self::Morphism>>;

    /// Indecomposable test objects of length at most `bound`, one per
    /// iso-class, in canonical order.
    fn pool(&self, bound: usize) -> Result<Vec<Self::Object>>;
    /// Whether `pool(bound)` contains every indecomposable of the category.
    fn pool_is_exhaustive(&self, bound: usize) -> bool;

    // Provided linear structure.

    fn hom_basis(&self, x: &Self::Object, y: &Self::Object) -> Vec<Self::Morphism> {
        self.hom_space(x, y)
            .basis_vectors()
            .iter()
            .map(|v| self.unflatten(x, y, v))
            .collect()
    }

    fn hom_dim(&self, x: &Self::Object, y: &Self::Object) -> usize {
        self.hom_space(x, y).dim()
    }

    fn zero_morphism(&self, x: &Self::Object, y: &Self::Object) -> Self::Morphism {
        let n = self.hom_space(x, y).ambient_dim();
        self.unflatten(x, y, &vec![0; n])
    }

    fn is_zero(&self, f: &Self::Morphism) -> bool {
        self.flatten(f).iter().all(|&x| x == 0)
    }

    fn add(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism {
        let field = self.field();
        let v: Vec<u64> = self
            .flatten(f)
            .iter()
            .zip(self.flatten(g))
            .map(|(&a, b)| field.add(a, b))
            .collect();
        self.unflatten(&self.source(f), &self.target(f), &v)
    }

    fn scale(&self, c: u64, f: &Self::Morphism) -> Self::Morphism {
        let field = self.field();
        let v: Vec<u64> = self.flatten(f).iter().map(|&a| field.mul(a, c)).collect();
        self.unflatten(&self.source(f), &self.target(f), &v)
    }

    fn linear_combination(
        &self,
        x: &Self::Object,
        y: &Self::Object,
        terms: &[Self::Morphism],
        coeffs: &[u64],
    ) -> Self::Morphism {
        assert_eq!(terms.len(), coeffs.len());
        let field = self.field();
        let n = self.hom_space(x, y).ambient_dim();
        let mut acc = vec![0; n];
        for (t, &c) in terms.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (a, b) in acc.iter_mut().zip(self.flatten(t)) {
                *a = field.add(*a, field.mul(b, c));
            }
        }
        self.unflatten(x, y, &acc)
    }

    /// Coordinates against [`hom_basis`](Self::hom_basis).
    fn hom_coordinates(&self, f: &Self::Morphism) -> Vec<u64> {
        let space = self.hom_space(&self.source(f), &self.target(f));
        space
            .coordinates(&self.flatten(f))
            .expect("morphism lies in its Hom space")
    }

    fn is_iso(&self, f: &Self::Morphism) -> bool {
        self.is_epi(f) && self.is_mono(f)
    }

    fn is_zero_object(&self, x: &Self::Object) -> bool {
        self.length(x) == 0
    }

    /// Largest length of an indecomposable summand.
    fn max_part(&self, x: &Self::Object) -> Result<usize> {
        Ok(self
            .decompose(x)?
            .iter()
            .map(|s| self.length(&s.object))
            .max()
            .unwrap_or(0))
    }

    /// Every element of `Hom(x, y)`, refusing sets above the enumeration limit.
    fn enumerate_hom(&self, x: &Self::Object, y: &Self::Object) -> Result<Vec<Self::Morphism>> {
        let space = self.hom_space(x, y);
        let size = self
            .field()
            .space_size(space.dim())
            .filter(|&s| s <= self.limits().enumeration)
            .ok_or_else(|| {
                crate::Error::limit(
                    format!("Hom({}, {})", self.describe(x), self.describe(y)),
                    self.field().space_size(space.dim()).unwrap_or(u64::MAX),
                    self.limits().enumeration,
                )
            })?;
        let mut out = Vec::with_capacity(size as usize);
        for c in all_vectors(self.field(), space.dim()) {
            out.push(self.unflatten(x, y, &space.combine(&c)));
        }
        Ok(out)
    }
}

/// Ext¹ realized by explicit short exact sequences.
pub trait Extensions: Category {
    fn ext_dim(&self, x: &Self::Object, y: &Self::Object) -> usize;
    /// One sequence `0 -> y -> E -> x -> 0` per basis class of `Ext¹(x, y)`.
    fn ext_basis(&self, x: &Self::Object, y: &Self::Object) -> Vec<ShortExact<Self::Morphism>>;
}

/// The Auslander-Reiten translate, where the instance can compute it.
pub trait Translate: Category {
    fn tau(&self, x: &Self::Object) -> Result<Self::Object>;
    fn tau_inverse(&self, x: &Self::Object) -> Result<Self::Object>;
}

/// The opposite category: same objects and morphisms, arrows reversed.
///
/// Left-sided notions (left determined, left equivalent) are computed by
/// running the right-sided engine on this adapter.
#[derive(Clone, Copy, Debug)]
pub struct Opposite<'a, C: ?Sized>(pub &'a C);

impl<C: Category + ?Sized> Category for Opposite<'_, C> {
    type Object = C::Object;
    type Morphism = C::Morphism;

    fn field(&self) -> Field {
        self.0.field()
    }

    fn limits(&self) -> Limits {
        self.0.limits()
    }

    fn describe(&self, x: &Self::Object) -> String {
        self.0.describe(x)
    }

    fn source(&self, f: &Self::Morphism) -> Self::Object {
        self.0.target(f)
    }

    fn target(&self, f: &Self::Morphism) -> Self::Object {
        self.0.source(f)
    }

    fn length(&self, x: &Self::Object) -> usize {
        self.0.length(x)
    }

    fn zero_object(&self) -> Self::Object {
        self.0.zero_object()
    }

    fn identity(&self, x: &Self::Object) -> Self::Morphism {
        self.0.identity(x)
    }

    fn compose(&self, g: &Self::Morphism, f: &Self::Morphism) -> Self::Morphism {
        self.0.compose(f, g)
    }

    fn hom_space(&self, x: &Self::Object, y: &Self::Object) -> Subspace {
        self.0.hom_space(y, x)
    }

    fn flatten(&self, f: &Self::Morphism) -> Vec<u64> {
        self.0.flatten(f)
    }

    fn unflatten(&self, x: &Self::Object, y: &Self::Object, v: &[u64]) -> Self::Morphism {
        self.0.unflatten(y, x, v)
    }

    fn kernel(&self, f: &Self::Morphism) -> Self::Morphism {
        self.0.cokernel(f)
    }

    fn cokernel(&self, f: &Self::Morphism) -> Self::Morphism {
        self.0.kernel(f)
    }

    fn image(&self, f: &Self::Morphism) -> Self::Morphism {
        // The coimage X -> X / Ker f of the underlying category.
        self.0.cokernel(&self.0.kernel(f))
    }

    fn is_epi(&self, f: &Self::Morphism) -> bool {
        self.0.is_mono(f)
    }

    fn is_mono(&self, f: &Self::Morphism) -> bool {
        self.0.is_epi(f)
    }

    fn direct_sum(&self, objects: &[Self::Object]) -> Biproduct<Self::Object, Self::Morphism> {
        let b = self.0.direct_sum(objects);
        Biproduct {
            object: b.object,
            injections: b.projections,
            projections: b.injections,
        }
    }

    fn decompose(&self, x: &Self::Object) -> Result<Vec<Summand<Self::Object, Self::Morphism>>> {
        Ok(self
            .0
            .decompose(x)?
            .into_iter()
            .map(|s| Summand {
                object: s.object,
                inclusion: s.projection,
                projection: s.inclusion,
            })
            .collect())
    }

    fn is_indecomposable(&self, x: &Self::Object) -> Result<bool> {
        self.0.is_indecomposable(x)
    }

    fn iso_test(&self, x: &Self::Object, y: &Self::Object) -> Result<Option<Self::Morphism>> {
        self.0.iso_test(y, x)
    }

    fn pool(&self, bound: usize) -> Result<Vec<Self::Object>> {
        self.0.pool(bound)
    }

    fn pool_is_exhaustive(&self, bound: usize) -> bool {
        self.0.pool_is_exhaustive(bound)
    }
}
