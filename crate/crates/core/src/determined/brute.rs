use std::collections::BTreeMap;

use crate::category::Category;
use crate::determined::{im_hom, image_of_hom, oracle::cond_subspace_for, Fan};
use crate::error::Result;
use crate::linalg::Subspace;

/// Census of right classes of morphisms into `Y` built from pool objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightClassCensus {
    pub morphisms_enumerated: usize,
    /// Classes of single morphisms `T -> Y`.
    pub single_classes: usize,
    /// Classes after closing under direct sums.
    pub classes: usize,
    /// Classes that are right `C`-determined at the bound.
    pub determined: usize,
    /// `Im Hom(C, α)` for each determined class, sorted.
    pub determined_images: Vec<Subspace>,
}

/// Brute-force count of right `C`-determined classes into `y`.
///
/// Every morphism `T -> y` from a pool object is enumerated. A sum of such
/// morphisms `α` is classified by the subspaces `Im Hom(T, α)` over the
/// pool: two sums are right equivalent exactly when these agree, since
/// their components come from the pool. Sums correspond to joins.
pub fn right_classes<C: Category + ?Sized>(
    cat: &C,
    c: &C::Object,
    y: &C::Object,
    bound: usize,
) -> Result<RightClassCensus> {
    let pool = cat.pool(bound)?;
    let key_of = |fan: &Fan<C::Object, C::Morphism>| -> Vec<Subspace> {
        pool.iter().map(|t| image_of_hom(cat, t, fan)).collect()
    };
    let mut singles: BTreeMap<Vec<Subspace>, Fan<C::Object, C::Morphism>> = BTreeMap::new();
    let mut enumerated = 0;
    for t_obj in &pool {
        for t in cat.enumerate_hom(t_obj, y)? {
            enumerated += 1;
            let fan = Fan::single(cat, &t);
            singles.entry(key_of(&fan)).or_insert(fan);
        }
    }
    type Keyed<O, M> = Vec<(Vec<Subspace>, Fan<O, M>)>;
    let single_list: Keyed<C::Object, C::Morphism> = singles
        .iter()
        .map(|(k, f)| (k.clone(), f.clone()))
        .collect();
    let mut all = singles.clone();
    let mut frontier: Keyed<C::Object, C::Morphism> = single_list.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (k, f) in &frontier {
            for (k2, f2) in &single_list {
                let joined: Vec<Subspace> = k
                    .iter()
                    .zip(k2)
                    .map(|(a, b)| a.sum(b).expect("same ambient"))
                    .collect();
                if !all.contains_key(&joined) {
                    let fan = f.concat(f2);
                    all.insert(joined.clone(), fan.clone());
                    next.push((joined, fan));
                }
            }
        }
        frontier = next;
    }
    let mut determined_images = Vec::new();
    for (key, fan) in &all {
        let h = im_hom(cat, c, fan);
        let ok = pool.iter().zip(key).all(|(t, image)| {
            cond_subspace_for(cat, c, &h, y, t)
                .is_subset(image)
                .expect("same ambient")
        });
        if ok {
            determined_images.push(h);
        }
    }
    determined_images.sort();
    Ok(RightClassCensus {
        morphisms_enumerated: enumerated,
        single_classes: singles.len(),
        classes: all.len(),
        determined: determined_images.len(),
        determined_images,
    })
}
