//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p ranklab --test acceptance -- --nocapture` to see the lines.
//! Criteria listed in `KNOWN_GAPS` are expected to fail; the test still checks that
//! every other criterion passes and that each known gap keeps failing the same way.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ranklab::code::delsarte_rank_distribution;
use ranklab::constructions::{
    albert_multiplication, gabidulin, scattered_pair_code, skew_mrd, spread_set_of, twist_condition_witness,
    twisted_code, SkewParams, TwistFamily, TwistSpec,
};
use ranklab::explore::{
    binary_spread_sets, census, classify_spread_sets, sample_mrd_fraction, CensusParams,
};
use ranklab::matrix::general_linear_order;
use ranklab::representations::{
    dickson_matrix, linpoly_to_matrix, linpoly_to_tensor, moore_matrix, vector_rank, vector_to_matrix,
};
use ranklab::semifield::{isotopic, mult_from_spread, IsotopyResult, SemifieldMultiplication};
use ranklab::symmetric::{commutative_to_symmetric, congruence_orbits, max_additive_symmetric, schmidt_bound};
use ranklab::transforms::{
    apply_equivalence, delsarte_dual, idealisers, lift_matrix, macwilliams_transform, shorten, subspace_distance,
    Axis, EquivalenceMove,
};
use ranklab::{Field, Linearity, Matrix, RankMetricCode, SigmaPolynomial, SubspaceBasis};

type Outcome = Result<String, String>;

/// Criteria that cannot be met as stated; see the README.
const KNOWN_GAPS: [usize; 1] = [1];

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: ranklab::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Rank of `x ↦ f(x)` on GF(q^n) read off the image size.
fn rank_by_image(ext: &Field, f: impl Fn(u32) -> u32) -> usize {
    let mut image: Vec<u32> = (0..ext.size() as u32).map(f).collect();
    image.sort_unstable();
    image.dedup();
    let q = ext.base_size() as usize;
    let mut r = 0;
    let mut size = 1;
    while size < image.len() {
        size *= q;
        r += 1;
    }
    r
}

fn c1_census() -> Outcome {
    let f = lib(Field::prime(2))?;
    let r = lib(census(&CensusParams::new(&f, 3, 3, 3, 3)))?;
    let got = (r.total_subspaces, r.filter_count, r.class_count(), r.filter_class_count());
    let detail = format!(
        "spaces {} MRD {} classes {:?} (without transpose {:?}) MRD classes {:?}; orbit-stabilizer {:?}; {} ms",
        got.0, got.1, got.2, r.classes_without_transpose, got.3, r.orbit_stabilizer_checked, r.elapsed_ms
    );
    if got == (788035, 192, Some(48), Some(1)) {
        Ok(detail)
    } else {
        Err(format!("{detail}; expected 788035 192 48 1"))
    }
}

fn c2_gabidulin_grid() -> Outcome {
    let mut checked = 0;
    let mut skipped = Vec::new();
    for q in [2u32, 3] {
        let base = lib(Field::prime(q))?;
        for n in 2u32..=5 {
            for k in 1..n as usize {
                for s in (1..n).filter(|&s| gcd(s, n) == 1) {
                    let code = lib(gabidulin(&base, n, k, s))?;
                    if code.representative_count() > 1 << 22 {
                        skipped.push(format!("({q},{n},{k},{s})"));
                        continue;
                    }
                    let d = lib(code.min_distance())?;
                    check(d == n as usize - k + 1 && lib(code.is_mrd())?, || {
                        format!("q={q} n={n} k={k} s={s}: d={d}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} codes d = n-k+1 and MRD; over cap: {}", skipped.join(" ")))
}

fn c3_distribution_uniqueness() -> Outcome {
    // independent oracle for (2,3,3,2): ranks of all maps c0 x + c1 x^2 on GF(8)
    let ext = lib(Field::prime(2).and_then(|b| b.extension(3, None)))?;
    let mut oracle = vec![0u128; 4];
    for c0 in 0..8u32 {
        for c1 in 0..8u32 {
            oracle[rank_by_image(&ext, |x| ext.add(ext.mul(c0, x), ext.mul(c1, ext.mul(x, x))))] += 1;
        }
    }
    check(oracle == [1, 0, 49, 14], || format!("oracle gave {oracle:?}"))?;

    let mut by_params: BTreeMap<(u64, usize, usize, usize), Vec<(String, Vec<u128>)>> = BTreeMap::new();
    let mut add = |label: String, code: &RankMetricCode| -> Result<(), String> {
        let dist = lib(code.rank_distribution())?;
        let d = dist.min_distance().ok_or("empty code")?;
        if lib(code.is_mrd())? {
            by_params
                .entry((code.q(), code.n(), code.m(), d))
                .or_default()
                .push((label, dist.0));
        }
        Ok(())
    };
    for q in [2u32, 3] {
        let base = lib(Field::prime(q))?;
        for n in 2u32..=4 {
            for k in 1..n as usize {
                for s in (1..n).filter(|&s| gcd(s, n) == 1) {
                    add(format!("gabidulin {q} {n} {k} {s}"), &lib(gabidulin(&base, n, k, s))?)?;
                }
                if q == 3 && n == 4 {
                    continue;
                }
                let ext = lib(base.extension(n, None))?;
                for eta in 1..ext.size() as u32 {
                    if let Ok(c) = twisted_code(&TwistSpec::new(TwistFamily::Gtg, k, eta, 1), &base, n, 1) {
                        add(format!("twisted {q} {n} {k} eta={eta}"), &c)?;
                    }
                }
            }
        }
    }
    let f2 = lib(Field::prime(2))?;
    add("skew order 16".into(), &lib(skew_mrd(&f2, &SkewParams::new(2, 2, 1, 0)))?)?;
    for s in lib(binary_spread_sets(3))? {
        add("spread order 8".into(), &s)?;
    }
    let mut groups = 0;
    let mut codes = 0;
    for ((q, n, m, d), list) in &by_params {
        let expected = lib(delsarte_rank_distribution(*q, *n, *m, *d))?.0;
        for (label, dist) in list {
            check(*dist == expected, || format!("{label}: {dist:?} differs from {expected:?}"))?;
        }
        groups += 1;
        codes += list.len();
    }
    let g = &by_params[&(2, 3, 3, 2)][0].1;
    check(*g == [1, 0, 49, 14], || format!("(2,3,3,2) gave {g:?}"))?;
    Ok(format!("{codes} MRD codes in {groups} parameter groups agree with the closed form"))
}

fn random_binary_code(rng: &mut ChaCha8Rng, f: &Field, dim: usize) -> RankMetricCode {
    loop {
        let words: Vec<Matrix> = (0..dim)
            .map(|_| Matrix::from_vec(f, 3, 3, (0..9).map(|_| rng.random_range(0..2)).collect()).unwrap())
            .collect();
        let c = RankMetricCode::from_spanning_set(f, (3, 3), &words).unwrap();
        if c.prime_dim() == dim {
            return c;
        }
    }
}

fn c4_duality() -> Outcome {
    let f = lib(Field::prime(2))?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut mrd_seen = 0;
    for dim in 1..=8 {
        for _ in 0..200 {
            let c = random_binary_code(&mut rng, &f, dim);
            let dual = lib(delsarte_dual(&c))?;
            let dist = lib(c.rank_distribution())?;
            let predicted = lib(macwilliams_transform(&dist, 2, 3, 3))?;
            check(predicted == lib(dual.rank_distribution())?, || format!("MacWilliams mismatch at dim {dim}"))?;
            check(lib(delsarte_dual(&dual))?.same_code(&c), || format!("biduality fails at dim {dim}"))?;
            let mv = EquivalenceMove::random(&f, 3, 3, false, &mut rng);
            let moved_dual = lib(delsarte_dual(&lib(apply_equivalence(&c, &mv))?))?;
            let inv_t = EquivalenceMove {
                x: lib(mv.x.inverse())?.transpose(),
                y: lib(mv.y.inverse())?.transpose(),
                rho: 0,
                transpose: false,
            };
            check(moved_dual.same_code(&lib(apply_equivalence(&dual, &inv_t))?), || {
                format!("(XCY)^⊥ identity fails at dim {dim}")
            })?;
            if lib(c.is_mrd())? {
                mrd_seen += 1;
                check(lib(dual.is_mrd())?, || format!("dual of an MRD code of dim {dim} is not MRD"))?;
            }
        }
    }
    // constructed MRD codes as well
    for c in lib(binary_spread_sets(3))? {
        check(lib(lib(delsarte_dual(&c))?.is_mrd())?, || "dual of a spread set of order 8 not MRD".into())?;
        mrd_seen += 1;
    }
    for k in 1..3 {
        let g = lib(gabidulin(&f, 3, k, 1))?;
        check(lib(lib(delsarte_dual(&g))?.is_mrd())?, || format!("dual of Gabidulin k={k} not MRD"))?;
        mrd_seen += 1;
    }
    Ok(format!("1600 random codes; {mrd_seen} MRD codes had MRD duals"))
}

fn c5_shortening() -> Outcome {
    let mut checked = 0;
    for q in [2u32, 3] {
        let base = lib(Field::prime(q))?;
        let ext = lib(base.extension(3, None))?;
        let mut codes = vec![lib(gabidulin(&base, 3, 2, 1))?, lib(gabidulin(&base, 3, 2, 2))?];
        for eta in 1..ext.size() as u32 {
            if let Ok(c) = twisted_code(&TwistSpec::new(TwistFamily::Gtg, 2, eta, 1), &base, 3, 1) {
                codes.push(c);
            }
        }
        for code in &codes {
            check(lib(code.is_mrd())? && lib(code.min_distance())? == 2, || "input is not MRD".into())?;
            for u in lib(ranklab::matrix::SubspaceEnumerator::new(&base, 3, 1))?.iter() {
                let s = lib(shorten(code, &u, Axis::Row))?;
                check(lib(s.is_mrd())? && lib(s.min_distance())? == 2, || {
                    format!("shortening of a q={q} code by {:?} is not MRD with d=2", u.rows())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} row-shortenings MRD with d = 2"))
}

/// Norm to the base field as the product of conjugates.
fn norm(ext: &Field, a: u32) -> u32 {
    (0..ext.degree()).fold(1, |acc, i| ext.mul(acc, ext.frobenius(a, i)))
}

fn c6_twisted_gate() -> Outcome {
    let mut accepted = 0;
    let mut rejected = 0;
    for (q, nmax) in [(2u32, 4u32), (3, 3)] {
        let base = lib(Field::prime(q))?;
        for n in 2..=nmax {
            let ext = lib(base.extension(n, None))?;
            for k in 1..n as usize {
                let mut specs = Vec::new();
                for eta in 0..ext.size() as u32 {
                    specs.push(TwistSpec::new(TwistFamily::Tg, k, eta, 1));
                    for h in 1..n {
                        specs.push(TwistSpec::new(TwistFamily::Gtg, k, eta, h));
                    }
                    for h in 1..ext.prime_degree() {
                        specs.push(TwistSpec::new(TwistFamily::Agtg, k, eta, h));
                    }
                    if n % 2 == 0 {
                        specs.push(TwistSpec::new(TwistFamily::Tz, k, eta, 0));
                    }
                }
                for spec in specs {
                    let (p1, p2) = lib(spec.maps(&ext))?;
                    let sign_odd = (n as usize * k) % 2 == 1;
                    let passes = (1..ext.size() as u32).all(|a| {
                        let rhs = norm(&ext, p2.apply(a));
                        let rhs = if sign_odd { base.neg(rhs) } else { rhs };
                        norm(&ext, p1.apply(a)) != rhs
                    });
                    match twisted_code(&spec, &base, n, 1) {
                        Ok(code) => {
                            check(passes, || format!("{spec:?} accepted but fails the norm condition"))?;
                            check(lib(code.is_mrd())?, || format!("{spec:?} accepted but not MRD"))?;
                            accepted += 1;
                        }
                        Err(e) => {
                            check(!passes, || format!("{spec:?} rejected although the norm condition holds: {e}"))?;
                            check(e.witness().is_some(), || format!("{spec:?} rejected without witness"))?;
                            rejected += 1;
                        }
                    }
                }
            }
        }
    }
    let f2 = lib(Field::prime(2))?;
    let err = twisted_code(&TwistSpec::new(TwistFamily::Tg, 1, 1, 1), &f2, 3, 1).err().ok_or("TG q=2 accepted")?;
    let w = err.witness().ok_or("TG q=2 rejection has no witness")?.to_string();
    let ext = lib(f2.extension(3, None))?;
    let id = ranklab::constructions::AdditiveMap::from_fn(&ext, |a| a);
    let tw = ranklab::constructions::AdditiveMap::from_fn(&ext, |a| ext.frobenius(a, 1));
    check(lib(twist_condition_witness(&ext, 1, &id, &tw))?.is_some(), || "no norm witness for TG q=2".into())?;
    Ok(format!("{accepted} accepted (all MRD), {rejected} rejected; TG over GF(2) rejected with witness {w}"))
}

fn c7_scattered() -> Outcome {
    let mut monomials = 0;
    for q in [2u32, 3, 4] {
        let base = lib(Field::parse(&q.to_string()))?;
        for n in 2u32..=6 {
            if (q as u64).pow(n) > 4096 {
                continue;
            }
            let ext = lib(base.extension(n, None))?;
            for s in (1..n).filter(|&s| gcd(s, n) == 1) {
                let f = lib(SigmaPolynomial::monomial(&ext, s, 1, 1))?;
                check(lib(f.is_scattered())?, || format!("x^(q^{s}) not scattered at q={q} n={n}"))?;
                monomials += 1;
            }
        }
    }
    let mut lp = 0;
    let mut codes = 0;
    for (q, n) in [(3u32, 4u32), (2, 5)] {
        let ext = lib(Field::prime(q).and_then(|b| b.extension(n, None)))?;
        for eta in 0..ext.size() as u32 {
            if ext.norm(eta) == 1 {
                continue;
            }
            let mut c = vec![0u32; n as usize];
            c[1] = 1;
            c[n as usize - 1] = eta;
            let f = lib(SigmaPolynomial::new(&ext, 1, &c))?;
            check(lib(f.is_scattered())?, || format!("LP polynomial with eta={eta} not scattered (q={q}, n={n})"))?;
            lp += 1;
            if eta < 4 {
                let code = lib(scattered_pair_code(&f))?;
                check(lib(code.is_mrd())? && lib(code.min_distance())? == n as usize - 1, || {
                    format!("<x, f(x)> not MRD at q={q} n={n} eta={eta}")
                })?;
                codes += 1;
            }
        }
    }
    // x^q + x^(q^3) + b x^(q^5) with b^2 + b = 1: scattered over GF(9^6); over GF(4^6) b lies in GF(4) and it is not
    let mut trinomials = Vec::new();
    for (p, e, want) in [(3u32, 2u32, true), (2, 2, false)] {
        let base = lib(Field::new(p, e))?;
        let ext = lib(base.extension(6, None))?;
        for b in (0..ext.size() as u32).filter(|&b| ext.add(ext.mul(b, b), b) == 1) {
            let f = lib(SigmaPolynomial::new(&ext, 1, &[0, 1, 0, 1, 0, b]))?;
            let mut fibres: BTreeMap<u32, u64> = BTreeMap::new();
            for x in 1..ext.size() as u32 {
                *fibres.entry(ext.mul(f.evaluate(x), lib(ext.inv(x))?)).or_default() += 1;
            }
            let brute = fibres.values().all(|&c| c == base.size() - 1);
            check(brute == want && lib(f.is_scattered())? == want, || {
                format!("trinomial over GF({}^6) b={b}: brute {brute}, library disagrees or expected {want}", base.size())
            })?;
        }
        trinomials.push(format!("GF({}^6) {}", base.size(), if want { "scattered" } else { "not scattered" }));
    }
    Ok(format!("{monomials} monomials and {lp} LP polynomials scattered; trinomial {}; {codes} pair codes MRD with d=n-1", trinomials.join(", ")))
}

fn c8_skew() -> Outcome {
    let f2 = lib(Field::prime(2))?;
    let code = lib(skew_mrd(&f2, &SkewParams::new(2, 2, 1, 0)))?;
    check(code.q() == 4 && code.n() == 2 && code.m() == 2, || format!("shape {}x{} over GF({})", code.n(), code.m(), code.q()))?;
    check(code.size() == 16u32.into(), || format!("size {}", code.size()))?;
    let d = lib(code.min_distance())?;
    check(lib(code.is_mrd())? && d == 2, || format!("d = {d}"))?;
    Ok("skew spread set: 16 matrices in M_2(GF(4)), MRD with d = 2".into())
}

fn c9_semifields() -> Outcome {
    let sets = lib(binary_spread_sets(4))?;
    let classes = lib(classify_spread_sets(&sets))?;
    check(classes.len() == 3, || format!("{} classes", classes.len()))?;
    // one member per class, chosen by idealiser orders (the classes are separated by them)
    let mut reps: BTreeMap<(String, String), RankMetricCode> = BTreeMap::new();
    for s in &sets {
        let ids = lib(idealisers(s))?;
        reps.entry((ids.left_order.to_string(), ids.right_order.to_string())).or_insert_with(|| s.clone());
        if reps.len() == 3 {
            break;
        }
    }
    let reps: Vec<RankMetricCode> = reps.into_values().collect();
    let mults: Vec<SemifieldMultiplication> = reps.iter().map(|c| lib(mult_from_spread(c))).collect::<Result<_, _>>()?;
    for (c, m) in reps.iter().zip(&mults) {
        check(lib(spread_set_of(m))?.same_code(c), || "spread -> multiplication -> spread changed the set".into())?;
        check(lib(mult_from_spread(&lib(spread_set_of(m))?))? == *m, || "multiplication round trip differs".into())?;
    }
    for i in 0..3 {
        for j in 0..3 {
            let r = lib(isotopic(&mults[i], &mults[j]))?;
            let want = i == j;
            check(r.is_isotopic() == Some(want), || format!("isotopic({i}, {j}) gave {r:?}"))?;
        }
    }
    // a second member of the largest class is isotopic to its representative
    let big = classes.iter().max_by_key(|c| c.members).unwrap();
    let other = sets
        .iter()
        .rev()
        .find(|s| {
            let ids = idealisers(s).unwrap();
            ids.left_order.to_string() == big.left_idealiser_order && !s.same_code(&reps[0])
        })
        .unwrap();
    let rep = reps
        .iter()
        .find(|r| idealisers(r).unwrap().left_order.to_string() == big.left_idealiser_order)
        .unwrap();
    let r = lib(isotopic(&lib(mult_from_spread(other))?, &lib(mult_from_spread(rep))?))?;
    check(matches!(r, IsotopyResult::Isotopic { .. }), || format!("same-class pair gave {r:?}"))?;
    // round trip for a non-binary presemifield as well
    let albert = lib(albert_multiplication(3, 3, 1, 2, 2))?;
    let spread = lib(spread_set_of(&albert))?;
    check(lib(mult_from_spread(&spread))? == albert, || "Albert multiplication round trip differs".into())?;
    let sizes: Vec<usize> = classes.iter().map(|c| c.members).collect();
    Ok(format!("{} spread sets containing I in 3 isotopy classes {sizes:?}; representatives pairwise non-isotopic", sets.len()))
}

fn c10_appendix() -> Outcome {
    let run = |q: u32, n: u32, trials: Option<usize>| -> Result<usize, String> {
        let base = lib(Field::prime(q))?;
        let ext = lib(base.extension(n, None))?;
        let size = ext.size() as u32;
        let pb = ext.polynomial_basis();
        let mut rng = ChaCha8Rng::seed_from_u64(10 + q as u64);
        let all: Vec<Vec<u32>> = match trials {
            None => (0..size.pow(n))
                .map(|mut t| {
                    (0..n)
                        .map(|_| {
                            let c = t % size;
                            t /= size;
                            c
                        })
                        .collect()
                })
                .collect(),
            Some(count) => (0..count).map(|_| (0..n).map(|_| rng.random_range(0..size)).collect()).collect(),
        };
        let embed = |x: &Matrix| Matrix::from_vec(&ext, x.rows(), x.cols(), x.data().to_vec()).unwrap();
        let mut count = 0;
        for (idx, cf) in all.iter().enumerate() {
            let f = lib(SigmaPolynomial::new(&ext, 1, cf))?;
            let g = match trials {
                None => lib(SigmaPolynomial::new(&ext, 1, &all[(idx * 7 + 3) % all.len()]))?,
                Some(_) => lib(SigmaPolynomial::new(&ext, 1, &(0..n).map(|_| rng.random_range(0..size)).collect::<Vec<_>>()))?,
            };
            let df = dickson_matrix(&f);
            let fg = lib(f.compose_mod(&g))?;
            check(lib(df.mul(&dickson_matrix(&g)))? == dickson_matrix(&fg), || "D_f D_g != D_(f∘g)".into())?;
            let mb = moore_matrix(&ext, 1, &pb);
            let x = lib(linpoly_to_matrix(&f, &pb))?;
            check(lib(df.mul(&mb))? == lib(mb.mul(&embed(&x)))?, || "D_f M_B != M_B X_(f,B)".into())?;
            // six ranks: map, matrix, Dickson, vector, Moore, tensor
            let v: Vec<u32> = pb.iter().map(|&b| f.evaluate(b)).collect();
            let a = lib(vector_to_matrix(&ext, &v, &pb))?;
            let pairs = lib(linpoly_to_tensor(&f))?;
            let mut t = Matrix::zero(&base, n as usize, n as usize);
            for (u, w) in &pairs {
                let (cu, cw) = (ext.coeffs(*u), ext.coeffs(*w));
                for i in 0..n as usize {
                    for j in 0..n as usize {
                        t.set(i, j, base.add(t.get(i, j), base.mul(cu[i], cw[j])));
                    }
                }
            }
            let ranks = [
                f.rank(),
                x.rank(),
                df.rank(),
                vector_rank(&ext, &v),
                moore_matrix(&ext, 1, &v).rank(),
                a.rank(),
                t.rank(),
                rank_by_image(&ext, |y| f.evaluate(y)),
            ];
            check(ranks.iter().all(|&r| r == ranks[0]), || format!("ranks disagree: {ranks:?}"))?;
            count += 1;
        }
        Ok(count)
    };
    let exhaustive = run(2, 3, None)?;
    let random = run(3, 4, Some(10_000))?;
    Ok(format!("{exhaustive} polynomials over GF(8) exhaustively, {random} random over GF(81)"))
}

fn c11_lifting() -> Outcome {
    let f = lib(Field::prime(2))?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let random = |rng: &mut ChaCha8Rng| Matrix::from_vec(&f, 3, 3, (0..9).map(|_| rng.random_range(0..2)).collect()).unwrap();
    for _ in 0..10_000 {
        let (a, b) = (random(&mut rng), random(&mut rng));
        let (la, lb): (SubspaceBasis, SubspaceBasis) = (lift_matrix(&a), lift_matrix(&b));
        let d = lib(subspace_distance(&f, &la, &lb))?;
        let r = lib(a.sub(&b))?.rank();
        check(d == 2 * r, || format!("d_S = {d}, 2 rank = {}", 2 * r))?;
    }
    Ok("10000 random pairs satisfy d_S = 2 rank(A - B)".into())
}

fn c12_symmetric() -> Outcome {
    // hand-evaluated bounds
    let cases: [((u64, u32, u32, bool), u64); 7] = [
        ((3, 2, 2, true), 9),
        ((3, 3, 3, true), 27),
        ((3, 3, 2, true), 81),
        ((5, 3, 3, false), 125),
        ((3, 4, 3, false), 243),
        ((3, 3, 2, false), 202),
        ((2, 4, 2, false), 384),
    ];
    for ((q, n, d, add), want) in cases {
        let b = lib(schmidt_bound(q, n, d, add))?;
        check(b == want.into(), || format!("schmidt_bound({q},{n},{d},{add}) = {b}, expected {want}"))?;
    }
    let f3 = lib(Field::prime(3))?;
    let (size, count) = lib(max_additive_symmetric(&f3, 2, 2))?;
    check(size == 9u32.into(), || format!("largest additive S_2(GF(3)) code with d=2 has size {size}"))?;
    for n in [2, 3] {
        let orbits = lib(congruence_orbits(&f3, n))?;
        for r in 1..=n {
            let of_rank: Vec<_> = orbits.iter().filter(|o| o.rank == r).collect();
            check(of_rank.len() == 2 && of_rank.iter().all(|o| o.type_constant), || {
                format!("S_{n}(GF(3)) rank {r}: {} orbits", of_rank.len())
            })?;
            check(of_rank.iter().any(|o| o.sign == Some(1)) && of_rank.iter().any(|o| o.sign == Some(-1)), || {
                format!("S_{n}(GF(3)) rank {r}: signs not separated")
            })?;
        }
    }
    let ext = lib(f3.extension(2, None))?;
    let sym = lib(commutative_to_symmetric(&SemifieldMultiplication::field_multiplication(&ext)))?;
    let all_symmetric = lib(sym.codewords())?.iter().all(|a| a.is_symmetric());
    check(all_symmetric && lib(sym.is_mrd())?, || "GF(9) symmetric code is not a symmetric MRD code".into())?;
    Ok(format!("7 bounds by hand; max additive S_2(GF(3)) d=2 code has size 9 ({count} codes); two orbits per rank in S_2, S_3; GF(9) gives a symmetric MRD code"))
}

fn c13_ubiquity() -> Outcome {
    let mut parts = Vec::new();
    for (q, n) in [(2u32, 2usize), (2, 3), (3, 2)] {
        let f = lib(Field::prime(q))?;
        let r = lib(sample_mrd_fraction(&f, n, n, 1, Linearity::Fqn, 1, 0))?;
        let gl = general_linear_order(n as u32, q as u64);
        let all = num_bigint::BigUint::from(q).pow((n * n) as u32) - 1u32;
        let want = num_rational::Ratio::new(gl, all);
        check(r.exact && r.ratio() == want, || format!("({q},{n}) gave {} expected {want}", r.fraction))?;
        parts.push(format!("({q},{n}) {}", r.fraction));
    }
    Ok(parts.join(", "))
}

#[test]
fn acceptance() {
    let criteria: [(usize, &str, fn() -> Outcome); 13] = [
        (1, "census (2,3,3,3,3)", c1_census),
        (2, "Gabidulin grid", c2_gabidulin_grid),
        (3, "rank-distribution uniqueness", c3_distribution_uniqueness),
        (4, "duality suite", c4_duality),
        (5, "shortening", c5_shortening),
        (6, "twisted-family gate", c6_twisted_gate),
        (7, "scattered table", c7_scattered),
        (8, "skew construction", c8_skew),
        (9, "semifield correspondence", c9_semifields),
        (10, "appendix identities", c10_appendix),
        (11, "lifting", c11_lifting),
        (12, "symmetric suite", c12_symmetric),
        (13, "ubiquity formula", c13_ubiquity),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        let start = std::time::Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                println!("FAIL {id:>2} {name}: {detail} [{secs:.1}s]");
                failed.push(id);
            }
        }
    }
    assert_eq!(failed, KNOWN_GAPS.to_vec(), "unexpected acceptance failures");
}
