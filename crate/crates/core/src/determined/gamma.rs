use std::collections::BTreeSet;

use crate::category::Category;
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Field, Matrix, Subspace};

/// `Hom(C, Y)` as a module over `Γ(C) = End(C)^op`, acting by precomposition.
#[derive(Clone, Debug)]
pub struct GammaModule<O, M> {
    pub field: Field,
    pub c: O,
    pub y: O,
    pub hom_basis: Vec<M>,
    pub end_basis: Vec<M>,
    /// Matrix of `h ↦ h ∘ γ_k` in the coordinates of `hom_basis`, one per
    /// element `γ_k` of `end_basis`.
    pub action: Vec<Matrix>,
}

impl<O, M> GammaModule<O, M> {
    pub fn dim(&self) -> usize {
        self.hom_basis.len()
    }

    pub fn is_submodule(&self, carrier: &Subspace) -> bool {
        carrier.ambient_dim() == self.dim()
            && self.action.iter().all(|a| carrier.is_stable_under(a))
    }
}

/// A `Γ(C)`-stable subspace of `Hom(C, Y)`, in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaSubmodule {
    pub carrier: Subspace,
}

pub fn gamma_module<C: Category + ?Sized>(
    cat: &C,
    c: &C::Object,
    y: &C::Object,
) -> GammaModule<C::Object, C::Morphism> {
    let space = cat.hom_space(c, y);
    let hom_basis = cat.hom_basis(c, y);
    let end_basis = cat.hom_basis(c, c);
    let action = end_basis
        .iter()
        .map(|g| {
            let cols: Vec<Vec<u64>> = hom_basis
                .iter()
                .map(|h| {
                    space
                        .coordinates(&cat.flatten(&cat.compose(h, g)))
                        .expect("h ∘ γ lies in Hom(C, Y)")
                })
                .collect();
            Matrix::from_columns(cat.field(), hom_basis.len(), &cols)
        })
        .collect();
    GammaModule {
        field: cat.field(),
        c: c.clone(),
        y: y.clone(),
        hom_basis,
        end_basis,
        action,
    }
}

/// Every submodule, sorted by dimension and then by carrier. Submodules are
/// sums of cyclic ones, so the cyclic submodules are generated first and
/// then joined breadth first.
pub fn enumerate_submodules<O, M>(
    module: &GammaModule<O, M>,
    limit: u64,
) -> Result<Vec<GammaSubmodule>> {
    let d = module.dim();
    let field = module.field;
    let vectors = field.space_size(d).filter(|&s| s <= limit).ok_or_else(|| {
        Error::limit(
            "vectors of Hom(C, Y)",
            field.space_size(d).unwrap_or(u64::MAX),
            limit,
        )
    })?;
    let mut cyclic: BTreeSet<Subspace> = BTreeSet::new();
    for v in all_vectors(field, d).take(vectors as usize) {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        cyclic.insert(Subspace::from_vectors(field, d, &[v]).close_under(&module.action));
    }
    let cyclic: Vec<Subspace> = cyclic.into_iter().collect();
    let mut all: BTreeSet<Subspace> = BTreeSet::new();
    all.insert(Subspace::zero(field, d));
    let mut frontier: Vec<Subspace> = vec![Subspace::zero(field, d)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic {
                let t = s.sum(c).expect("same ambient");
                if all.insert(t.clone()) {
                    if all.len() as u64 > limit {
                        return Err(Error::limit(
                            "submodules of Hom(C, Y)",
                            all.len() as u64,
                            limit,
                        ));
                    }
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<GammaSubmodule> = all
        .into_iter()
        .map(|carrier| GammaSubmodule { carrier })
        .collect();
    out.sort_by(|a, b| (a.carrier.dim(), &a.carrier).cmp(&(b.carrier.dim(), &b.carrier)));
    Ok(out)
}
