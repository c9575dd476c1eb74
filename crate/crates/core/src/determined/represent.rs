use crate::category::Category;
use crate::determined::{factors_through, materialize, oracle::cond_subspace_for, Fan};
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Matrix, Subspace};

/// The representer of `(C, H)`: for each pool object `T` up to the bound, a
/// basis of `G_H(T) = {t : t ∘ g ∈ H for all g: C -> T}`. When the bound is at
/// least `maxpart(C)`, `Im Hom(C, α_H) = H`.
pub fn represent_pair<C: Category + ?Sized>(
    cat: &C,
    c: &C::Object,
    y: &C::Object,
    h: &Subspace,
    bound: usize,
) -> Result<Fan<C::Object, C::Morphism>> {
    if h.ambient_dim() != cat.hom_dim(c, y) {
        return Err(Error::DimensionMismatch(format!(
            "H lives in a space of dimension {}, Hom(C, Y) has dimension {}",
            h.ambient_dim(),
            cat.hom_dim(c, y)
        )));
    }
    let mut fan = Fan::empty(y.clone());
    for t_obj in cat.pool(bound)? {
        let g = cond_subspace_for(cat, c, h, y, &t_obj);
        if g.is_zero() {
            continue;
        }
        let basis = cat.hom_basis(&t_obj, y);
        for v in g.basis_vectors() {
            fan.components
                .push(cat.linear_combination(&t_obj, y, &basis, &v));
        }
    }
    Ok(fan)
}

#[derive(Clone, Debug)]
pub struct Minimized<O, M> {
    pub fan: Fan<O, M>,
    /// Every `φ` with `α φ = α` was enumerated and found invertible.
    pub certified: bool,
    pub removed: usize,
}

/// Right-minimal version of the fan, in the same right class. Components are
/// split into indecomposable pieces, zero pieces dropped, and any piece that
/// factors through the rest removed; by the exchange property what remains
/// is right minimal. The result is then certified by enumerating the affine
/// set `{φ : α' φ = α'}` when it is small enough.
pub fn right_minimize<C: Category + ?Sized>(
    cat: &C,
    fan: &Fan<C::Object, C::Morphism>,
) -> Result<Minimized<C::Object, C::Morphism>> {
    let mut pieces = Fan::empty(fan.target.clone());
    for comp in &fan.components {
        for s in cat.decompose(&cat.source(comp))? {
            let piece = cat.compose(comp, &s.inclusion);
            if !cat.is_zero(&piece) {
                pieces.components.push(piece);
            }
        }
    }
    let expanded = pieces.len();
    let mut i = pieces.len();
    while i > 0 {
        i -= 1;
        let rest = pieces.without(i);
        if factors_through(cat, &pieces.components[i], &rest).is_some() {
            pieces = rest;
        }
    }
    let removed = expanded - pieces.len();
    let certified = certify_minimal(cat, &pieces)?;
    Ok(Minimized {
        fan: pieces,
        certified,
        removed,
    })
}

/// Enumerates `φ = 1 + ψ` with `α ψ = 0`; errors if some such `φ` is not
/// invertible, returns false if the set is too large to enumerate.
fn certify_minimal<C: Category + ?Sized>(
    cat: &C,
    fan: &Fan<C::Object, C::Morphism>,
) -> Result<bool> {
    if fan.is_empty() {
        return Ok(true);
    }
    let alpha = materialize(cat, fan);
    let x = cat.source(&alpha);
    let ends = cat.hom_basis(&x, &x);
    let cols: Vec<Vec<u64>> = ends
        .iter()
        .map(|e| cat.flatten(&cat.compose(&alpha, e)))
        .collect();
    let rows = cat.hom_space(&x, &fan.target).ambient_dim();
    let killers = Matrix::from_columns(cat.field(), rows, &cols).kernel_basis();
    let field = cat.field();
    match field.space_size(killers.dim()) {
        Some(size) if size <= cat.limits().enumeration => {
            let id = cat.identity(&x);
            for c in all_vectors(field, killers.dim()) {
                let psi = cat.linear_combination(&x, &x, &ends, &killers.combine(&c));
                let phi = cat.add(&id, &psi);
                if !cat.is_iso(&phi) {
                    return Err(Error::Counterexample(
                        "reduced morphism admits a non-invertible φ with αφ = α".into(),
                    ));
                }
            }
            Ok(true)
        }
        _ => Ok(false),
    }
}
