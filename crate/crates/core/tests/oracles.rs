//! Independent brute-force oracles. Counts obtained from them are frozen as
//! literals so later changes to the engine cannot drift silently.

use std::collections::HashSet;

use detmor_core::determined::{auslander_table, is_right_determined, Fan};
use detmor_core::linalg::{all_vectors, Field, Matrix};
use detmor_core::quiver::{Quiver, QuiverCategory};
use detmor_core::tube::TubeCategory;
use detmor_core::Category;

/// Every matrix of the given shape.
fn all_matrices(field: Field, rows: usize, cols: usize) -> impl Iterator<Item = Matrix> {
    all_vectors(field, rows * cols).map(move |v| Matrix::new(field, rows, cols, v).unwrap())
}

#[test]
fn tube_hom_sets_by_enumeration() {
    let cat = TubeCategory::new(Field::prime(2));
    let objs = cat.enumerate_objects(3).unwrap();
    let mut total = 0u64;
    for x in &objs {
        for y in &objs {
            let (nx, ny) = (x.operator(), y.operator());
            let count = all_matrices(cat.field(), y.dim(), x.dim())
                .filter(|f| (ny * f) == (f * nx))
                .count() as u64;
            assert_eq!(
                count,
                1 << cat.hom_dim(x, y),
                "{} -> {}",
                cat.describe(x),
                cat.describe(y)
            );
            total += count;
        }
    }
    assert_eq!(total, 990);
}

#[test]
fn tube_epis_by_rank() {
    let cat = TubeCategory::new(Field::prime(2));
    let objs = cat.enumerate_objects(3).unwrap();
    let mut epis = 0;
    let mut monos = 0;
    for x in &objs {
        for y in &objs {
            for f in cat.enumerate_hom(x, y).unwrap() {
                let rank = f.matrix().rank();
                assert_eq!(cat.is_epi(&f), rank == y.dim());
                assert_eq!(cat.is_mono(&f), rank == x.dim());
                epis += (rank == y.dim()) as usize;
                monos += (rank == x.dim()) as usize;
            }
        }
    }
    assert_eq!((epis, monos), (258, 258));
}

#[test]
fn quiver_hom_sets_by_enumeration() {
    for n in 2..=3 {
        let cat = QuiverCategory::new(Field::prime(2), Quiver::linear_a(n));
        let pool = cat.pool(n).unwrap();
        for x in &pool {
            for y in &pool {
                let mut count = 0u64;
                let shapes: Vec<(usize, usize)> =
                    (0..n).map(|v| (y.dim_at(v), x.dim_at(v))).collect();
                let total: usize = shapes.iter().map(|(r, c)| r * c).sum();
                for v in all_vectors(cat.field(), total) {
                    let mut off = 0;
                    let maps: Vec<Matrix> = shapes
                        .iter()
                        .map(|&(r, c)| {
                            let m = Matrix::new(cat.field(), r, c, v[off..off + r * c].to_vec())
                                .unwrap();
                            off += r * c;
                            m
                        })
                        .collect();
                    let commutes = cat.quiver().arrows().iter().enumerate().all(|(k, a)| {
                        (y.map(k) * &maps[a.source]) == (&maps[a.target] * x.map(k))
                    });
                    count += commutes as u64;
                }
                assert_eq!(count, 1 << cat.hom_dim(x, y));
            }
        }
    }
}

/// Right determinedness straight from the definition, by enumerating every
/// `t: T -> Y`, every `g: C -> T` and every candidate lift.
fn brute_determined<C: Category>(
    cat: &C,
    alpha: &C::Morphism,
    c: &C::Object,
    bound: usize,
) -> bool {
    let (x, y) = (cat.source(alpha), cat.target(alpha));
    let image: HashSet<Vec<u64>> = cat
        .enumerate_hom(c, &x)
        .unwrap()
        .iter()
        .map(|h| cat.flatten(&cat.compose(alpha, h)))
        .collect();
    for t_obj in cat.pool(bound).unwrap() {
        let through: HashSet<Vec<u64>> = cat
            .enumerate_hom(&t_obj, &x)
            .unwrap()
            .iter()
            .map(|s| cat.flatten(&cat.compose(alpha, s)))
            .collect();
        let gs = cat.enumerate_hom(c, &t_obj).unwrap();
        for t in cat.enumerate_hom(&t_obj, &y).unwrap() {
            let condition = gs
                .iter()
                .all(|g| image.contains(&cat.flatten(&cat.compose(&t, g))));
            if condition && !through.contains(&cat.flatten(&t)) {
                return false;
            }
        }
    }
    true
}

#[test]
fn determinedness_matches_the_definition_in_the_tube() {
    let cat = TubeCategory::new(Field::prime(2));
    let objs = cat.enumerate_objects(3).unwrap();
    let mut cs = vec![cat.zero_object()];
    cs.extend(cat.enumerate_objects(2).unwrap());
    let bound = 4;
    let mut determined = 0;
    let mut checked = 0;
    for x in &objs {
        for y in &objs {
            for alpha in cat.enumerate_hom(x, y).unwrap() {
                for c in &cs {
                    let fast = is_right_determined(&cat, &Fan::single(&cat, &alpha), c, bound)
                        .unwrap()
                        .is_determined();
                    let slow = brute_determined(&cat, &alpha, c, bound);
                    assert_eq!(fast, slow, "{:?} with C = {}", alpha, cat.describe(c));
                    determined += fast as usize;
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 990 * 4);
    assert_eq!(determined, 1009);
}

#[test]
fn determinedness_matches_the_definition_in_a3() {
    let cat = QuiverCategory::new(Field::prime(2), Quiver::linear_a(3));
    let pool = cat.pool(3).unwrap();
    let mut cs = vec![cat.zero_object()];
    cs.extend(pool.iter().cloned());
    let mut determined = 0;
    for x in &pool {
        for y in &pool {
            for alpha in cat.enumerate_hom(x, y).unwrap() {
                for c in &cs {
                    let fast = is_right_determined(&cat, &Fan::single(&cat, &alpha), c, 3)
                        .unwrap()
                        .is_determined();
                    assert_eq!(fast, brute_determined(&cat, &alpha, c, 3));
                    determined += fast as usize;
                }
            }
        }
    }
    assert_eq!(determined, 86);
}

#[test]
fn frozen_table_sizes() {
    let tube = TubeCategory::new(Field::prime(2));
    let (j1, j2) = (tube.jordan(1), tube.jordan(2));
    let sum = tube.from_partition(&[2, 1]);
    let rows = |c, y, b| auslander_table(&tube, c, y, b).unwrap().rows.len();
    assert_eq!(rows(&j1, &j1, 3), 2);
    assert_eq!(rows(&j2, &j2, 5), 3);
    assert_eq!(rows(&sum, &j2, 5), 4);

    let a2 = QuiverCategory::new(Field::prime(2), Quiver::linear_a(2));
    let c = a2.direct_sum(&a2.projectives()).object;
    let counts: Vec<usize> = [a2.simple(0), a2.simple(1), a2.projectives()[0].clone()]
        .iter()
        .map(|y| auslander_table(&a2, &c, y, 2).unwrap().rows.len())
        .collect();
    assert_eq!(counts, vec![2, 2, 3]);
}
