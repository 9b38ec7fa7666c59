use proptest::prelude::*;
use ranklab::code::from_prime_coordinates;
use ranklab::transforms::{delsarte_dual, macwilliams_transform};
use ranklab::{Field, Linearity, Matrix, RankMetricCode};

fn random_code(q: (u32, u32), n: usize, m: usize, words: &[Vec<u32>], lin: Linearity) -> RankMetricCode {
    let f = Field::new(q.0, q.1).unwrap();
    let len = n * m * q.1 as usize;
    let basis: Vec<Matrix> = words
        .iter()
        .map(|w| {
            let v: Vec<u32> = (0..len).map(|i| w[i % w.len()] % q.0).collect();
            from_prime_coordinates(&f, n, m, &v)
        })
        .collect();
    let basis: Vec<Matrix> = if lin == Linearity::Fq {
        basis.iter().flat_map(|a| f.prime_basis().into_iter().map(move |b| a.scale(b))).collect()
    } else {
        basis
    };
    let c = RankMetricCode::from_spanning_set(&f, (n, m), &basis).unwrap();
    if lin == Linearity::Fq { c.upgrade_linearity() } else { c }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn macwilliams_predicts_brute_force_dual(
        shape in prop::sample::select(vec![((2u32, 1u32), 2usize, 3usize), ((3, 1), 2, 2), ((2, 2), 2, 2), ((2, 1), 3, 3), ((2, 1), 3, 2)]),
        words in prop::collection::vec(prop::collection::vec(0u32..3, 1..23), 0..5),
        fq in any::<bool>(),
    ) {
        let (q, n, m) = shape;
        let lin = if fq { Linearity::Fq } else { Linearity::Fp };
        let c = random_code(q, n, m, &words, lin);
        let dual = delsarte_dual(&c).unwrap();
        prop_assert_eq!(dual.prime_dim() + c.prime_dim(), n * m * q.1 as usize);
        let (rn, rm) = (n.max(m), n.min(m));
        let qq = q.0.pow(q.1) as u64;
        let predicted = macwilliams_transform(&c.rank_distribution().unwrap(), qq, rn, rm).unwrap();
        prop_assert_eq!(predicted, dual.rank_distribution().unwrap());
        prop_assert!(delsarte_dual(&dual).unwrap().same_code(&c));
    }
}
