//! Morphisms determined by objects, computed over any [`Category`].
//!
//! Morphisms into a fixed `Y` are handled as [`Fan`]s: a family of
//! components `X_k -> Y`, standing for the induced map `⊕ X_k -> Y`. The
//! representer of a pair `(C, H)` is naturally a large sum, and keeping it
//! as a fan avoids ever materializing that sum.

mod brute;
mod dichotomy;
mod gamma;
mod oracle;
mod represent;
mod table;

use crate::category::Category;
use crate::linalg::{Matrix, Subspace};

pub use brute::{right_classes, RightClassCensus};
pub use dichotomy::{epi_mono_dichotomy_report, DichotomyParams, DichotomyReport, SideReport};
pub use gamma::{enumerate_submodules, gamma_module, GammaModule, GammaSubmodule};
pub use oracle::{
    cond_subspace, cond_subspace_for, determiner_candidates, f_alpha_dims, find_witness,
    is_left_determined, is_right_determined, minimal_determiner, DeterminedReport, Verdict,
};
pub use represent::{represent_pair, right_minimize, Minimized};
pub use table::{auslander_table, BijectionTable, TableRow};

/// A morphism `⊕ X_k -> Y` given by its components `X_k -> Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fan<O, M> {
    pub target: O,
    pub components: Vec<M>,
}

impl<O: Clone, M: Clone> Fan<O, M> {
    pub fn single<C>(cat: &C, alpha: &M) -> Self
    where
        C: Category<Object = O, Morphism = M> + ?Sized,
    {
        Fan {
            target: cat.target(alpha),
            components: vec![alpha.clone()],
        }
    }

    pub fn empty(target: O) -> Self {
        Fan {
            target,
            components: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// The same fan without component `skip`.
    pub fn without(&self, skip: usize) -> Self {
        Fan {
            target: self.target.clone(),
            components: self
                .components
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, c)| c.clone())
                .collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Fan {
            target: self.target.clone(),
            components,
        }
    }

    pub fn sources<C>(&self, cat: &C) -> Vec<O>
    where
        C: Category<Object = O, Morphism = M> + ?Sized,
    {
        self.components.iter().map(|c| cat.source(c)).collect()
    }
}

/// The fan as an honest morphism out of the direct sum of its sources.
pub fn materialize<C: Category + ?Sized>(
    cat: &C,
    fan: &Fan<C::Object, C::Morphism>,
) -> C::Morphism {
    let sum = cat.direct_sum(&fan.sources(cat));
    let mut acc = cat.zero_morphism(&sum.object, &fan.target);
    for (comp, proj) in fan.components.iter().zip(&sum.projections) {
        acc = cat.add(&acc, &cat.compose(comp, proj));
    }
    acc
}

/// Coordinates of `f: x -> y` against `Hom(x, y)`'s canonical basis, given the
/// precomputed space.
fn coords<C: Category + ?Sized>(cat: &C, space: &Subspace, f: &C::Morphism) -> Vec<u64> {
    space
        .coordinates(&cat.flatten(f))
        .expect("morphism lies in its Hom space")
}

/// Witness components `s_k: T -> X_k` with `Σ α_k ∘ s_k = t`, if `t` factors
/// through the fan.
pub fn factors_through<C: Category + ?Sized>(
    cat: &C,
    t: &C::Morphism,
    fan: &Fan<C::Object, C::Morphism>,
) -> Option<Vec<C::Morphism>> {
    let t_obj = cat.source(t);
    let target_flat = cat.flatten(t);
    let field = cat.field();
    let mut columns: Vec<Vec<u64>> = Vec::new();
    let mut pieces: Vec<(usize, Vec<C::Morphism>)> = Vec::new();
    for (k, comp) in fan.components.iter().enumerate() {
        let basis = cat.hom_basis(&t_obj, &cat.source(comp));
        for b in &basis {
            columns.push(cat.flatten(&cat.compose(comp, b)));
        }
        pieces.push((k, basis));
    }
    let a = Matrix::from_columns(field, target_flat.len(), &columns);
    let x = a.solve(&target_flat).expect("shapes agree")?;
    let mut out = Vec::with_capacity(fan.len());
    let mut off = 0;
    for (k, basis) in pieces {
        let src = cat.source(&fan.components[k]);
        let c = &x[off..off + basis.len()];
        out.push(cat.linear_combination(&t_obj, &src, &basis, c));
        off += basis.len();
    }
    Some(out)
}

/// Image of `Hom(T, fan)` inside `Hom(T, Y)`, in coordinates of
/// `hom_basis(T, Y)`.
pub fn image_of_hom<C: Category + ?Sized>(
    cat: &C,
    t_obj: &C::Object,
    fan: &Fan<C::Object, C::Morphism>,
) -> Subspace {
    let space = cat.hom_space(t_obj, &fan.target);
    let mut vectors = Vec::new();
    for comp in &fan.components {
        for b in cat.hom_basis(t_obj, &cat.source(comp)) {
            vectors.push(coords(cat, &space, &cat.compose(comp, &b)));
        }
    }
    Subspace::from_vectors(cat.field(), space.dim(), &vectors)
}

/// `Im Hom(C, α)` as a subspace of `Hom(C, Y)` in basis coordinates.
pub fn im_hom<C: Category + ?Sized>(
    cat: &C,
    c: &C::Object,
    fan: &Fan<C::Object, C::Morphism>,
) -> Subspace {
    image_of_hom(cat, c, fan)
}

/// Mutual factorization.
pub fn right_equivalent<C: Category + ?Sized>(
    cat: &C,
    a: &Fan<C::Object, C::Morphism>,
    b: &Fan<C::Object, C::Morphism>,
) -> bool {
    a.components
        .iter()
        .all(|t| factors_through(cat, t, b).is_some())
        && b.components
            .iter()
            .all(|t| factors_through(cat, t, a).is_some())
}

/// Whether `t` is a split epimorphism.
pub fn is_retraction<C: Category + ?Sized>(cat: &C, t: &C::Morphism) -> bool {
    let y = cat.target(t);
    factors_through(cat, &cat.identity(&y), &Fan::single(cat, t)).is_some()
}

/// Whether the fan, as a morphism out of the sum, is an epimorphism.
pub fn fan_is_epi<C: Category + ?Sized>(cat: &C, fan: &Fan<C::Object, C::Morphism>) -> bool {
    cat.is_epi(&materialize(cat, fan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::tube::{NilpotentPair, TubeCategory};

    #[test]
    fn factorization_examples_in_the_tube() {
        let cat = TubeCategory::new(Field::prime(2));
        let j1 = NilpotentPair::jordan(cat.field(), 1);
        let j2 = NilpotentPair::jordan(cat.field(), 2);
        let quotient = cat.hom_basis(&j2, &j1).remove(0);
        let alpha = Fan::single(&cat, &quotient);
        // t = α factors (through the identity).
        let w = factors_through(&cat, &quotient, &alpha).unwrap();
        assert_eq!(cat.compose(&quotient, &w[0]), quotient);
        // t = 0 factors through 0.
        let z = cat.zero_morphism(&j1, &j1);
        let w = factors_through(&cat, &z, &alpha).unwrap();
        assert!(cat.is_zero(&cat.compose(&quotient, &w[0])));
        // J2 -> J1 does not split: id_{J1} does not lift.
        let id = cat.identity(&j1);
        assert!(factors_through(&cat, &id, &alpha).is_none());
        assert!(!is_retraction(&cat, &quotient));
        assert!(is_retraction(&cat, &id));
    }

    #[test]
    fn right_equivalence_examples() {
        let cat = TubeCategory::new(Field::prime(3));
        let j2 = NilpotentPair::jordan(cat.field(), 2);
        let j3 = NilpotentPair::jordan(cat.field(), 3);
        let alpha = cat.hom_basis(&j3, &j2).remove(0);
        let a = Fan::single(&cat, &alpha);
        assert!(right_equivalent(&cat, &a, &a));
        let id = Fan::single(&cat, &cat.identity(&j2));
        let zero = Fan::single(&cat, &cat.zero_morphism(&j2, &j2));
        assert!(!right_equivalent(&cat, &id, &zero));
        // α vs α ∘ (split epi J3 ⊕ J1 -> J3).
        let sum = cat.direct_sum(&[j3.clone(), NilpotentPair::jordan(cat.field(), 1)]);
        let composite = cat.compose(&alpha, &sum.projections[0]);
        assert!(right_equivalent(&cat, &a, &Fan::single(&cat, &composite)));
    }
}
