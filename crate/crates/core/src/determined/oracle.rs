use crate::category::{Category, Opposite};
use crate::determined::{im_hom, image_of_hom, Fan};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<O, M> {
    /// Every indecomposable was tested.
    Determined,
    /// Every pool object up to the bound was tested; longer ones were not.
    DeterminedUpToBound,
    /// `witness: T -> Y` satisfies the condition but does not factor.
    NotDetermined { witness_object: O, witness: M },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeterminedReport<O, M> {
    pub verdict: Verdict<O, M>,
    pub bound: usize,
    pub pool_size: usize,
    pub checks_performed: usize,
}

impl<O, M> DeterminedReport<O, M> {
    /// True for both the exact and the bounded positive verdict.
    pub fn is_determined(&self) -> bool {
        !matches!(self.verdict, Verdict::NotDetermined { .. })
    }

    pub fn witness(&self) -> Option<(&O, &M)> {
        match &self.verdict {
            Verdict::NotDetermined {
                witness_object,
                witness,
            } => Some((witness_object, witness)),
            _ => None,
        }
    }
}

/// `{t ∈ Hom(T, Y) : t ∘ g ∈ H for all g: C -> T}` in coordinates of
/// `hom_basis(T, Y)`, where `H` is given in coordinates of `hom_basis(C, Y)`.
pub fn cond_subspace_for<C: Category + ?Sized>(
    cat: &C,
    c: &C::Object,
    h: &Subspace,
    y: &C::Object,
    t_obj: &C::Object,
) -> Subspace {
    let space_cy = cat.hom_space(c, y);
    let hom_ty = cat.hom_basis(t_obj, y);
    let hom_ct = cat.hom_basis(c, t_obj);
    let quotient_dim = space_cy.dim() - h.dim();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for g in &hom_ct {
        let cols: Vec<Vec<u64>> = hom_ty
            .iter()
            .map(|t| {
                let coords = space_cy
                    .coordinates(&cat.flatten(&cat.compose(t, g)))
                    .expect("t ∘ g lies in Hom(C, Y)");
                h.quotient_coordinates(&coords)
            })
            .collect();
        rows.extend(Matrix::from_columns(cat.field(), quotient_dim, &cols).to_rows());
    }
    Matrix::from_rows(cat.field(), hom_ty.len(), &rows)
        .expect("rows have equal length")
        .kernel_basis()
}

/// The condition subspace for `H = Im Hom(C, α)`.
pub fn cond_subspace<C: Category + ?Sized>(
    cat: &C,
    c: &C::Object,
    fan: &Fan<C::Object, C::Morphism>,
    t_obj: &C::Object,
) -> Subspace {
    cond_subspace_for(cat, c, &im_hom(cat, c, fan), &fan.target, t_obj)
}

/// Is the fan right `c`-determined? Tests `G(T) ⊆ Im Hom(T, α)` for every
/// pool object `T` of length at most `bound`; by additivity indecomposable
/// test objects suffice.
pub fn is_right_determined<C: Category + ?Sized>(
    cat: &C,
    fan: &Fan<C::Object, C::Morphism>,
    c: &C::Object,
    bound: usize,
) -> Result<DeterminedReport<C::Object, C::Morphism>> {
    let pool = cat.pool(bound)?;
    let h = im_hom(cat, c, fan);
    let y = &fan.target;
    let mut report = DeterminedReport {
        verdict: if cat.pool_is_exhaustive(bound) {
            Verdict::Determined
        } else {
            Verdict::DeterminedUpToBound
        },
        bound,
        pool_size: pool.len(),
        checks_performed: 0,
    };
    for t_obj in pool {
        report.checks_performed += 1;
        let g = cond_subspace_for(cat, c, &h, y, &t_obj);
        let f = image_of_hom(cat, &t_obj, fan);
        if let Some(v) = g.basis_vectors().into_iter().find(|v| !f.contains(v)) {
            let witness = cat.linear_combination(&t_obj, y, &cat.hom_basis(&t_obj, y), &v);
            report.verdict = Verdict::NotDetermined {
                witness_object: t_obj,
                witness,
            };
            return Ok(report);
        }
    }
    Ok(report)
}

/// Left determinedness of a family of morphisms out of `fan.target`, run as
/// right determinedness in the opposite category.
pub fn is_left_determined<C: Category + ?Sized>(
    cat: &C,
    fan: &Fan<C::Object, C::Morphism>,
    c: &C::Object,
    bound: usize,
) -> Result<DeterminedReport<C::Object, C::Morphism>> {
    is_right_determined(&Opposite(cat), fan, c, bound)
}

/// A non-determinedness witness, if one exists up to the bound.
pub fn find_witness<C: Category + ?Sized>(
    cat: &C,
    fan: &Fan<C::Object, C::Morphism>,
    c: &C::Object,
    bound: usize,
) -> Result<Option<(C::Object, C::Morphism)>> {
    Ok(match is_right_determined(cat, fan, c, bound)?.verdict {
        Verdict::NotDetermined {
            witness_object,
            witness,
        } => Some((witness_object, witness)),
        _ => None,
    })
}

/// `dim F^α(T) = dim Hom(T, Y) - dim Im Hom(T, α)` over the pool.
pub fn f_alpha_dims<C: Category + ?Sized>(
    cat: &C,
    fan: &Fan<C::Object, C::Morphism>,
    bound: usize,
) -> Result<Vec<(C::Object, usize)>> {
    Ok(cat
        .pool(bound)?
        .into_iter()
        .map(|t| {
            let d = cat.hom_dim(&t, &fan.target) - image_of_hom(cat, &t, fan).dim();
            (t, d)
        })
        .collect())
}

/// Multiplicity-free sums of pool objects with total length at most
/// `max_len`, the zero object first, ordered by length and then by subset.
pub fn determiner_candidates<C: Category + ?Sized>(
    cat: &C,
    max_len: usize,
) -> Result<Vec<C::Object>> {
    let pool = cat.pool(max_len)?;
    if pool.len() > 20 {
        return Err(Error::limit(
            "determiner candidate subsets",
            1 << pool.len().min(63),
            1 << 20,
        ));
    }
    let lens: Vec<usize> = pool.iter().map(|x| cat.length(x)).collect();
    let mut subsets: Vec<(usize, u32)> = (0u32..(1 << pool.len()))
        .map(|mask| {
            let total = (0..pool.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| lens[i])
                .sum();
            (total, mask)
        })
        .filter(|&(total, _)| total <= max_len)
        .collect();
    subsets.sort_by_key(|&(total, mask)| (total, mask.count_ones(), mask));
    Ok(subsets
        .into_iter()
        .map(|(_, mask)| {
            let parts: Vec<C::Object> = (0..pool.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| pool[i].clone())
                .collect();
            cat.direct_sum(&parts).object
        })
        .collect())
}

/// The first candidate (in [`determiner_candidates`] order) that determines
/// the fan at the given test bound.
#[allow(clippy::type_complexity)]
pub fn minimal_determiner<C: Category + ?Sized>(
    cat: &C,
    fan: &Fan<C::Object, C::Morphism>,
    max_len: usize,
    bound: usize,
) -> Result<Option<(C::Object, DeterminedReport<C::Object, C::Morphism>)>> {
    for c in determiner_candidates(cat, max_len)? {
        let report = is_right_determined(cat, fan, &c, bound)?;
        if report.is_determined() {
            return Ok(Some((c, report)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::quiver::{Quiver, QuiverCategory};
    use crate::tube::TubeCategory;

    #[test]
    fn epi_in_the_tube_is_determined_by_its_kernel() {
        let cat = TubeCategory::new(Field::prime(2));
        let (j1, j2) = (cat.jordan(1), cat.jordan(2));
        let alpha = cat.hom_basis(&j2, &j1).remove(0);
        let r = is_right_determined(&cat, &Fan::single(&cat, &alpha), &j1, 5).unwrap();
        assert_eq!(r.verdict, Verdict::DeterminedUpToBound);
        assert_eq!(r.checks_performed, 5);
    }

    #[test]
    fn zero_onto_j1_is_not_determined() {
        let cat = TubeCategory::new(Field::prime(2));
        let j1 = cat.jordan(1);
        let zero = Fan::single(&cat, &cat.zero_morphism(&j1, &j1));
        for c in cat.pool(3).unwrap() {
            let r = is_right_determined(&cat, &zero, &c, cat.length(&c) + 1).unwrap();
            let (t_obj, t) = r.witness().expect("a witness exists");
            assert!(!cat.is_zero(t));
            assert_eq!(cat.length(t_obj), cat.length(&c) + 1);
        }
    }

    #[test]
    fn zero_object_determines_only_split_epis() {
        let cat = QuiverCategory::new(Field::prime(2), Quiver::linear_a(2));
        let zero = cat.zero_object();
        let s1 = cat.simple(0);
        let id = Fan::single(&cat, &cat.identity(&s1));
        assert_eq!(
            is_right_determined(&cat, &id, &zero, 2).unwrap().verdict,
            Verdict::Determined
        );
        let z = Fan::single(&cat, &cat.zero_morphism(&s1, &s1));
        assert!(!is_right_determined(&cat, &z, &zero, 2)
            .unwrap()
            .is_determined());
    }

    #[test]
    fn left_determined_mono() {
        let cat = TubeCategory::new(Field::prime(2));
        let (j1, j2) = (cat.jordan(1), cat.jordan(2));
        let beta = cat.hom_basis(&j1, &j2).remove(0);
        let op = Opposite(&cat);
        let fan = Fan::single(&op, &beta);
        assert_eq!(fan.target, j1);
        // τ(Cok β) = J1.
        assert!(is_left_determined(&cat, &fan, &j1, 5)
            .unwrap()
            .is_determined());
    }

    #[test]
    fn candidate_order() {
        let cat = TubeCategory::new(Field::prime(2));
        let names: Vec<String> = determiner_candidates(&cat, 3)
            .unwrap()
            .iter()
            .map(|c| cat.describe(c))
            .collect();
        assert_eq!(names, vec!["0", "J(1)", "J(2)", "J(3)", "J(2,1)"]);
    }
}
