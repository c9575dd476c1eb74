use detmor_core::linalg::{Field, Matrix};
use detmor_core::tube::{NilpotentPair, Partition, TubeCategory, TubeMorphism};
use detmor_core::Category;
use proptest::prelude::*;

fn partition(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=3usize, 0..=max).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

/// A random invertible `n x n` matrix, found by rejection.
fn invertible(field: Field, n: usize, seed: u64) -> Matrix {
    let mut s = seed;
    loop {
        let data = (0..n * n)
            .map(|_| {
                s = s
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (s >> 33) % field.modulus()
            })
            .collect();
        let m = Matrix::new(field, n, n, data).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

fn random_morphism(
    cat: &TubeCategory,
    x: &NilpotentPair,
    y: &NilpotentPair,
    seed: u64,
) -> TubeMorphism {
    let basis = cat.hom_basis(x, y);
    let coeffs: Vec<u64> = (0..basis.len())
        .map(|i| (seed >> (3 * i % 60)) % cat.field().modulus())
        .collect();
    cat.linear_combination(x, y, &basis, &coeffs)
}

proptest! {
    #[test]
    fn normal_form_recovers_conjugated_partitions(p in prime(), parts in partition(3), seed in any::<u64>()) {
        let f = Field::prime(p);
        let j = NilpotentPair::from_partition(f, &parts);
        let q = invertible(f, j.dim(), seed);
        let n = &(&q * j.operator()) * &q.inverse().unwrap();
        let x = NilpotentPair::new(n.clone()).unwrap();
        prop_assert_eq!(x.partition(), Partition::new(parts.clone()));
        let nf = x.normal_form();
        let back = &(&nf.change_of_basis.inverse().unwrap() * &n) * &nf.change_of_basis;
        prop_assert_eq!(&back, j.operator());
    }

    #[test]
    fn hom_is_additive(p in prime(), a in partition(2), b in partition(2), c in partition(2)) {
        let cat = TubeCategory::new(Field::prime(p));
        let (x, y, z) = (cat.from_partition(&a), cat.from_partition(&b), cat.from_partition(&c));
        let sum = cat.direct_sum(&[x.clone(), y.clone()]).object;
        prop_assert_eq!(cat.hom_dim(&sum, &z), cat.hom_dim(&x, &z) + cat.hom_dim(&y, &z));
        prop_assert_eq!(cat.hom_dim(&z, &sum), cat.hom_dim(&z, &x) + cat.hom_dim(&z, &y));
        let expected: usize = a.iter().flat_map(|&i| c.iter().map(move |&k| i.min(k))).sum();
        prop_assert_eq!(cat.hom_dim(&x, &z), expected);
    }

    #[test]
    fn decompose_round_trip(p in prime(), parts in partition(3)) {
        let cat = TubeCategory::new(Field::prime(p));
        let x = cat.from_partition(&parts);
        let summands = cat.decompose(&x).unwrap();
        let mut lens: Vec<usize> = summands.iter().map(|s| cat.length(&s.object)).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(&lens, &parts);
        let pieces: Vec<NilpotentPair> = summands.iter().map(|s| s.object.clone()).collect();
        let rebuilt = cat.direct_sum(&pieces).object;
        prop_assert!(cat.iso_test(&rebuilt, &x).unwrap().is_some());
        for s in &summands {
            let e = cat.compose(&s.projection, &s.inclusion);
            prop_assert!(cat.is_iso(&e));
        }
    }

    #[test]
    fn kernel_image_cokernel_lengths(p in prime(), a in partition(2), b in partition(2), seed in any::<u64>()) {
        let cat = TubeCategory::new(Field::prime(p));
        let (x, y) = (cat.from_partition(&a), cat.from_partition(&b));
        let f = random_morphism(&cat, &x, &y, seed);
        let k = cat.kernel(&f);
        let c = cat.cokernel(&f);
        let i = cat.image(&f);
        prop_assert!(cat.is_zero(&cat.compose(&f, &k)));
        prop_assert!(cat.is_zero(&cat.compose(&c, &f)));
        prop_assert!(cat.is_mono(&k) && cat.is_epi(&c) && cat.is_mono(&i));
        let rank = f.matrix().rank();
        prop_assert_eq!(cat.length(&cat.source(&k)), x.dim() - rank);
        prop_assert_eq!(cat.length(&cat.target(&c)), y.dim() - rank);
        prop_assert_eq!(cat.length(&cat.source(&i)), rank);
    }
}
