//! Census orbit counts against a Burnside count computed independently.

use ranklab::explore::{census, sample_mrd_fraction, scan_subspaces, CensusParams};
use ranklab::field::Field;
use ranklab::matrix::{general_linear_group, Matrix, SubspaceEnumerator};
use ranklab::code::Linearity;

/// Image of a row-major n x m vector under A -> X A^T? Y.
fn act(f: &Field, x: &Matrix, y: &Matrix, t: bool, n: usize, m: usize, v: &[u32]) -> Vec<u32> {
    let a = Matrix::from_vec(f, n, m, v.to_vec()).unwrap();
    let a = if t { a.transpose() } else { a };
    x.mul(&a).unwrap().mul(y).unwrap().into_data()
}

fn fixed(f: &Field, x: &Matrix, y: &Matrix, t: bool, n: usize, m: usize, k: usize) -> u64 {
    SubspaceEnumerator::new(f, n * m, k)
        .unwrap()
        .iter()
        .filter(|s| s.rows().iter().all(|r| s.contains(f, &act(f, x, y, t, n, m, r))))
        .count() as u64
}

/// Conjugacy class representatives of GL(n, q) with class sizes.
fn classes(group: &[Matrix]) -> Vec<(Matrix, u64)> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for g in group {
        if seen.contains(g.data()) {
            continue;
        }
        let mut size = 0;
        for h in group {
            let c = h.mul(g).unwrap().mul(&h.inverse().unwrap()).unwrap();
            if seen.insert(c.data().to_vec()) {
                size += 1;
            }
        }
        out.push((g.clone(), size));
    }
    out
}

/// Orbits of k-subspaces of n x m matrices under (X, Y) by Burnside's lemma.
fn burnside(f: &Field, n: usize, m: usize, k: usize) -> u64 {
    let (gn, gm) = (general_linear_group(f, n, 1 << 20).unwrap(), general_linear_group(f, m, 1 << 20).unwrap());
    let (cn, cm) = (classes(&gn), classes(&gm));
    let mut sum = 0u64;
    for (x, sx) in &cn {
        for (y, sy) in &cm {
            sum += sx * sy * fixed(f, x, y, false, n, m, k);
        }
    }
    let order = (gn.len() * gm.len()) as u64;
    assert_eq!(sum % order, 0);
    sum / order
}

/// Burnside over the full group including transpose, by brute force.
fn burnside_with_transpose(f: &Field, n: usize, k: usize) -> u64 {
    let g = general_linear_group(f, n, 1 << 20).unwrap();
    let mut sum = 0u64;
    for x in &g {
        for y in &g {
            for t in [false, true] {
                sum += fixed(f, x, y, t, n, n, k);
            }
        }
    }
    sum / (2 * (g.len() * g.len()) as u64)
}

#[test]
fn orbit_counts_match_burnside() {
    let f2 = Field::prime(2).unwrap();
    for (n, m, k) in [(2, 2, 2), (2, 3, 2), (2, 3, 3), (2, 2, 1)] {
        let mut p = CensusParams::new(&f2, n, m, k, 1);
        p.transpose = false;
        let r = census(&p).unwrap();
        assert_eq!(r.classes_without_transpose, Some(burnside(&f2, n, m, k)), "{n}x{m} dim {k}");
        assert_eq!(r.orbit_stabilizer_checked, Some(true));
    }
    let f3 = Field::prime(3).unwrap();
    let r = census(&CensusParams::new(&f3, 2, 2, 2, 2)).unwrap();
    assert_eq!(r.classes_without_transpose, Some(burnside(&f3, 2, 2, 2)));
    assert_eq!(r.classes_with_transpose, Some(burnside_with_transpose(&f3, 2, 2)));
}

#[test]
fn census_3x3_matches_burnside_without_transpose() {
    let f = Field::prime(2).unwrap();
    let mut p = CensusParams::new(&f, 3, 3, 3, 3);
    p.transpose = false;
    let r = census(&p).unwrap();
    assert_eq!(r.total_subspaces, 788035);
    assert_eq!(r.filter_count, 192);
    assert_eq!(r.classes_without_transpose, Some(burnside(&f, 3, 3, 3)));
}

#[test]
fn scan_and_sampling_agree() {
    let f = Field::prime(2).unwrap();
    let scan = scan_subspaces(&f, 2, 3, 3, 2, 64).unwrap();
    let s = sample_mrd_fraction(&f, 2, 3, 3, Linearity::Fq, 1, 0).unwrap();
    assert!(s.exact);
    assert_eq!((s.mrd, s.samples), (scan.hits, scan.total));
}

#[test]
fn frobenius_merges_orbits() {
    let f4 = Field::new(2, 2).unwrap();
    let r = census(&CensusParams::new(&f4, 2, 2, 1, 2)).unwrap();
    // rank-2 lines of M_2(GF(4)) form one orbit under GL x GL
    assert_eq!(r.filter_classes_without_transpose, Some(1));
    assert_eq!(r.orbit_stabilizer_checked, Some(true));
}
