use crate::category::Category;
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Matrix};
use crate::quiver::{QuiverCategory, Representation};

/// Number of positive roots of `A_n`, i.e. of indecomposables by Gabriel.
pub fn positive_root_count_type_a(n: usize) -> usize {
    n * (n + 1) / 2
}

fn dimension_vectors(vertices: usize, max_total: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, left: usize, remaining: usize, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for d in 0..=remaining {
            prefix.push(d);
            rec(prefix, left - 1, remaining - d, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), vertices, max_total, &mut out);
    out.retain(|d| d.iter().sum::<usize>() > 0);
    out.sort_by(|a, b| (a.iter().sum::<usize>(), a).cmp(&(b.iter().sum::<usize>(), b)));
    out
}

/// Exhaustive search for indecomposables of total dimension at most `bound`,
/// one per iso-class. Each class is represented by its lexicographically
/// first arrow-matrix tuple, and the output is in canonical order.
pub fn enumerate_indecomposables(
    cat: &QuiverCategory,
    bound: usize,
) -> Result<Vec<Representation>> {
    let field = cat.field();
    let quiver = cat.quiver().clone();
    let limit = cat.limits().enumeration;
    let mut out: Vec<Representation> = Vec::new();
    for dims in dimension_vectors(quiver.vertex_count(), bound) {
        let shapes: Vec<(usize, usize)> = quiver
            .arrows()
            .iter()
            .map(|a| (dims[a.target], dims[a.source]))
            .collect();
        let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let count = field
            .space_size(entries)
            .filter(|&c| c <= limit)
            .ok_or_else(|| {
                Error::limit(
                    format!("representations with dimension vector {dims:?}"),
                    field.space_size(entries).unwrap_or(u64::MAX),
                    limit,
                )
            })?;
        let mut found: Vec<Representation> = Vec::new();
        for flat in all_vectors(field, entries).take(count as usize) {
            let mut maps = Vec::with_capacity(shapes.len());
            let mut off = 0;
            for &(r, c) in &shapes {
                maps.push(Matrix::from_flat(field, r, c, &flat[off..off + r * c]));
                off += r * c;
            }
            let rep = cat.representation(dims.clone(), maps)?;
            if !cat.is_indecomposable(&rep)? {
                continue;
            }
            let mut seen = false;
            for r in &found {
                if cat.iso_test(r, &rep)?.is_some() {
                    seen = true;
                    break;
                }
            }
            if !seen {
                found.push(rep);
            }
        }
        out.extend(found);
    }
    out.sort_by_key(Representation::canonical_key);
    Ok(out)
}
