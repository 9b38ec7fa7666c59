//! Exhaustive censuses of small subspace codes, MRD sampling, code equivalence
//! search and classification of small semifield spread sets.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{from_prime_coordinates, Linearity, RankMetricCode};
use crate::error::{check_cap, exhaustive_cap, Error, Result, DEFAULT_SUBSPACE_CAP};
use crate::field::Field;
use crate::matrix::{
    general_linear_generators, general_linear_group, general_linear_order, rank_in_place, rref_rows, Matrix,
    SubspaceBasis, SubspaceEnumerator,
};
use crate::representations::vector_to_matrix;
use crate::semifield::mult_from_spread;
use crate::transforms::{
    apply_equivalence, idealisers, multiplier_space, random_invertible, shorten, Axis, EquivalenceMove,
};

/// Minimum rank over the nonzero GF(q)-combinations of `n x m` row-major vectors (0 for the zero space).
fn min_rank_of_rows(field: &Field, n: usize, m: usize, rows: &[Vec<u32>]) -> usize {
    let q = field.size();
    let k = rows.len();
    let mut best = usize::MAX;
    let mut coeffs = vec![0u32; k];
    let total = q.pow(k as u32);
    let mut buf = vec![0u32; n * m];
    for t in 1..total {
        let mut x = t;
        for c in coeffs.iter_mut() {
            *c = (x % q) as u32;
            x /= q;
        }
        // one representative per line: last nonzero coefficient equal to 1
        if coeffs.iter().rev().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        buf.iter_mut().for_each(|b| *b = 0);
        for (c, r) in coeffs.iter().zip(rows) {
            if *c == 0 {
                continue;
            }
            for (b, &v) in buf.iter_mut().zip(r) {
                *b = field.add(*b, field.mul(*c, v));
            }
        }
        let r = rank_in_place(field, &mut buf.clone(), n, m);
        best = best.min(r);
        if best <= 1 {
            break;
        }
    }
    if best == usize::MAX {
        0
    } else {
        best
    }
}

/// Whether `q^dim` equals the Singleton-like bound at distance `d` for `n x m` matrices.
fn meets_singleton(q_dim_log: usize, n: usize, m: usize, d: usize) -> bool {
    let (big, small) = (n.max(m), n.min(m));
    d >= 1 && d <= small && q_dim_log == big * (small - d + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScanCounts {
    pub total: u64,
    pub hits: u64,
}

/// Counts `dim`-dimensional subspaces of `M_{n x m}(GF(q))` with minimum distance `>= d`,
/// scanning the enumeration in chunks of `chunk` subspaces.
pub fn scan_subspaces(field: &Field, n: usize, m: usize, dim: usize, d: usize, chunk: u64) -> Result<ScanCounts> {
    let en = SubspaceEnumerator::with_cap(field, n * m, dim, DEFAULT_SUBSPACE_CAP)?;
    let total = en.total();
    let chunk = chunk.max(1);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let hits = starts
        .par_iter()
        .map(|&s| {
            en.range(s, s + chunk)
                .filter(|sub| dim > 0 && min_rank_of_rows(field, n, m, sub.rows()) >= d)
                .count() as u64
        })
        .sum();
    Ok(ScanCounts { total, hits })
}

#[derive(Clone, Debug)]
enum Move {
    Left(Matrix),
    Right(Matrix),
    Frob(u32),
    Transpose,
}

fn apply_move(field: &Field, n: usize, m: usize, mv: &Move, v: &[u32]) -> Vec<u32> {
    match mv {
        Move::Left(x) => {
            let mut out = vec![0u32; n * m];
            for i in 0..n {
                for k in 0..n {
                    let c = x.get(i, k);
                    if c == 0 {
                        continue;
                    }
                    for j in 0..m {
                        out[i * m + j] = field.add(out[i * m + j], field.mul(c, v[k * m + j]));
                    }
                }
            }
            out
        }
        Move::Right(y) => {
            let mut out = vec![0u32; n * m];
            for i in 0..n {
                for k in 0..m {
                    let a = v[i * m + k];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..m {
                        out[i * m + j] = field.add(out[i * m + j], field.mul(a, y.get(k, j)));
                    }
                }
            }
            out
        }
        Move::Frob(r) => v.iter().map(|&x| field.frobenius_prime(x, *r)).collect(),
        Move::Transpose => (0..m * n).map(|t| v[(t % n) * m + t / n]).collect(),
    }
}

struct Packer {
    bits: u32,
}

impl Packer {
    fn new(field: &Field, len: usize) -> Result<Self> {
        let bits = 64 - (field.size() - 1).leading_zeros();
        if bits as usize * len > 128 {
            return Err(Error::Unsupported(format!(
                "subspace keys need {} bits (limit 128)",
                bits as usize * len
            )));
        }
        Ok(Packer { bits: bits.max(1) })
    }

    fn key(&self, rows: &[Vec<u32>]) -> u128 {
        rows.iter()
            .flatten()
            .fold(0u128, |acc, &x| (acc << self.bits) | x as u128)
    }
}

fn canonical(field: &Field, mut rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    rref_rows(field, &mut rows);
    rows
}

struct Orbits {
    reps: Vec<Vec<Vec<u32>>>,
    sizes: Vec<u64>,
    index: HashMap<u128, u32>,
}

fn orbits(field: &Field, n: usize, m: usize, dim: usize, gens: &[Move], packer: &Packer) -> Result<Orbits> {
    let en = SubspaceEnumerator::with_cap(field, n * m, dim, DEFAULT_SUBSPACE_CAP)?;
    let mut index: HashMap<u128, u32> = HashMap::with_capacity(en.total() as usize);
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for sub in en.iter() {
        let key = packer.key(sub.rows());
        if index.contains_key(&key) {
            continue;
        }
        let id = reps.len() as u32;
        index.insert(key, id);
        let mut queue = VecDeque::from([sub.rows().to_vec()]);
        let mut size = 0u64;
        while let Some(rows) = queue.pop_front() {
            size += 1;
            for g in gens {
                let image = canonical(field, rows.iter().map(|r| apply_move(field, n, m, g, r)).collect());
                let k = packer.key(&image);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
                    e.insert(id);
                    queue.push_back(image);
                }
            }
        }
        reps.push(sub.rows().to_vec());
        sizes.push(size);
    }
    Ok(Orbits { reps, sizes, index })
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Census parameters; `d` filters on minimum distance `>= d`.
#[derive(Clone, Debug)]
pub struct CensusParams {
    pub field: Field,
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    pub d: usize,
    /// Count classes with transpose in the group (square shapes only).
    pub transpose: bool,
    /// Skip orbit classification and report only the scan counts.
    pub classify: bool,
    pub chunk: u64,
}

impl CensusParams {
    pub fn new(field: &Field, n: usize, m: usize, dim: usize, d: usize) -> Self {
        CensusParams {
            field: field.clone(),
            n,
            m,
            dim,
            d,
            transpose: true,
            classify: true,
            chunk: 1 << 14,
        }
    }
}

/// Invariants of one equivalence class.
#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub size: u64,
    pub min_distance: usize,
    pub meets_filter: bool,
    pub mrd: bool,
    pub rank_distribution: Vec<u128>,
    pub left_idealiser_order: String,
    pub right_idealiser_order: String,
    /// Sorted rank distributions of the row-shortenings by 1-dimensional subspaces.
    pub shortening_profile: Vec<String>,
    pub stabilizer_order: Option<u64>,
    pub representative: Vec<String>,
}

/// Published counts shown next to a census for comparison.
#[derive(Clone, Debug, Serialize)]
pub struct ReferenceRow {
    pub spaces: u64,
    pub mrd: u64,
    pub classes: u64,
    pub mrd_classes: u64,
    pub classes_match_with_transpose: Option<bool>,
    pub classes_match_without_transpose: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub version: String,
    pub q: String,
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    pub d: usize,
    pub linearity: String,
    pub total_subspaces: u64,
    pub mrd_count: u64,
    pub filter_count: u64,
    pub classes_without_transpose: Option<u64>,
    pub filter_classes_without_transpose: Option<u64>,
    pub classes_with_transpose: Option<u64>,
    pub filter_classes_with_transpose: Option<u64>,
    /// Convention used for `classes` below.
    pub transpose_in_group: bool,
    pub group_order: String,
    pub orbit_stabilizer_checked: Option<bool>,
    pub classes: Vec<ClassInfo>,
    pub reference: Option<ReferenceRow>,
    pub elapsed_ms: u128,
    pub seed: u64,
    pub jobs: usize,
}

impl CensusReport {
    pub fn class_count(&self) -> Option<u64> {
        if self.transpose_in_group {
            self.classes_with_transpose.or(self.classes_without_transpose)
        } else {
            self.classes_without_transpose
        }
    }

    pub fn filter_class_count(&self) -> Option<u64> {
        if self.transpose_in_group {
            self.filter_classes_with_transpose.or(self.filter_classes_without_transpose)
        } else {
            self.filter_classes_without_transpose
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Aligned text table `q n m dim d | #Spaces #MRD #Classes #MRD Classes`.
    pub fn to_table(&self) -> String {
        let show = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        let mut s = String::new();
        let header = ["q", "n", "m", "dim", "d", "#Spaces", "#MRD", "#Classes", "#MRD Classes"];
        let row = [
            self.q.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.dim.to_string(),
            self.d.to_string(),
            self.total_subspaces.to_string(),
            self.filter_count.to_string(),
            show(self.class_count()),
            show(self.filter_class_count()),
        ];
        let widths: Vec<usize> = header.iter().zip(&row).map(|(h, r)| h.len().max(r.len())).collect();
        let line = |cells: Vec<String>| -> String {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let _ = writeln!(s, "{}", line(header.iter().map(|h| h.to_string()).collect()));
        let _ = writeln!(s, "{}", line(row.to_vec()));
        if self.n == self.m {
            let _ = writeln!(
                s,
                "classes without transpose: {}  with transpose: {}",
                show(self.classes_without_transpose),
                show(self.classes_with_transpose)
            );
        }
        if let Some(r) = &self.reference {
            let _ = writeln!(
                s,
                "reference: {} {} {} {} (classes match with transpose: {}, without: {})",
                r.spaces,
                r.mrd,
                r.classes,
                r.mrd_classes,
                r.classes_match_with_transpose.map_or("-".into(), |b| b.to_string()),
                r.classes_match_without_transpose
            );
        }
        s
    }
}

fn rows_to_code(field: &Field, n: usize, m: usize, rows: &[Vec<u32>]) -> Result<RankMetricCode> {
    let words: Vec<Matrix> = rows
        .iter()
        .map(|r| Matrix::from_vec(field, n, m, r.clone()))
        .collect::<Result<_>>()?;
    Ok(RankMetricCode::from_spanning_set(field, (n, m), &words)?.upgrade_linearity())
}

fn shortening_profile(code: &RankMetricCode) -> Result<Vec<String>> {
    let f = code.field();
    let m = code.m();
    if code.n().min(m) < 2 {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for u in SubspaceEnumerator::new(f, m, 1)?.iter() {
        out.push(shorten(code, &u, Axis::Row)?.rank_distribution()?.to_string());
    }
    out.sort();
    Ok(out)
}

fn class_info(
    field: &Field,
    p: &CensusParams,
    rows: &[Vec<u32>],
    size: u64,
    stabilizer: Option<u64>,
) -> Result<ClassInfo> {
    let code = rows_to_code(field, p.n, p.m, rows)?;
    let dist = if p.dim == 0 {
        vec![1]
    } else {
        code.rank_distribution()?.0
    };
    let md = min_rank_of_rows(field, p.n, p.m, rows);
    let ids = idealisers(&code)?;
    Ok(ClassInfo {
        size,
        min_distance: md,
        meets_filter: p.dim > 0 && md >= p.d,
        mrd: p.dim > 0 && meets_singleton(p.dim, p.n, p.m, md),
        rank_distribution: dist,
        left_idealiser_order: ids.left_order.to_string(),
        right_idealiser_order: ids.right_order.to_string(),
        shortening_profile: shortening_profile(&code)?,
        stabilizer_order: stabilizer,
        representative: rows
            .iter()
            .map(|r| Matrix::from_vec(field, p.n, p.m, r.clone()).map(|a| a.to_text()))
            .collect::<Result<_>>()?,
    })
}

/// Number of group tuples `(X, Y, ρ, t)` fixing the subspace.
fn stabilizer_order(
    field: &Field,
    n: usize,
    m: usize,
    rows: &[Vec<u32>],
    gl_n: &[Matrix],
    gl_m: &[Matrix],
    transpose: bool,
    packer: &Packer,
) -> u64 {
    let target = packer.key(rows);
    let e = field.prime_degree();
    let flips: Vec<bool> = if transpose { vec![false, true] } else { vec![false] };
    gl_n.par_iter()
        .map(|x| {
            let mut count = 0u64;
            for &t in &flips {
                for r in 0..e {
                    let base: Vec<Vec<u32>> = rows
                        .iter()
                        .map(|v| {
                            let mut w = apply_move(field, n, m, &Move::Frob(r), v);
                            if t {
                                w = apply_move(field, n, m, &Move::Transpose, &w);
                            }
                            apply_move(field, n, m, &Move::Left(x.clone()), &w)
                        })
                        .collect();
                    for y in gl_m {
                        let image = canonical(
                            field,
                            base.iter().map(|v| apply_move(field, n, m, &Move::Right(y.clone()), v)).collect(),
                        );
                        if packer.key(&image) == target {
                            count += 1;
                        }
                    }
                }
            }
            count
        })
        .sum()
}

/// Exhaustive census of `dim`-dimensional GF(q)-subspaces of `M_{n x m}(GF(q))`, classified
/// up to `A ↦ X A^ρ Y` (and transpose for square shapes).
pub fn census(params: &CensusParams) -> Result<CensusReport> {
    let start = Instant::now();
    let f = &params.field;
    let (n, m, dim) = (params.n, params.m, params.dim);
    if dim > n * m {
        return Err(Error::Argument(format!("dim {dim} exceeds n*m = {}", n * m)));
    }
    let scan = scan_subspaces(f, n, m, dim, params.d, params.chunk)?;
    let mrd_count = if dim > 0 && (1..=n.min(m)).any(|d| meets_singleton(dim, n, m, d)) {
        let d = (1..=n.min(m)).find(|&d| meets_singleton(dim, n, m, d)).expect("exists");
        if d == params.d {
            scan.hits
        } else {
            scan_subspaces(f, n, m, dim, d, params.chunk)?.hits
        }
    } else {
        0
    };
    let e = f.prime_degree() as u64;
    let square = n == m;
    let base_order = general_linear_order(n as u32, f.size()) * general_linear_order(m as u32, f.size()) * e;
    let use_t = params.transpose && square;
    let group_order = if use_t { base_order.clone() * 2u32 } else { base_order.clone() };
    let mut report = CensusReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        q: f.size().to_string(),
        n,
        m,
        dim,
        d: params.d,
        linearity: Linearity::Fq.to_string(),
        total_subspaces: scan.total,
        mrd_count,
        filter_count: scan.hits,
        classes_without_transpose: None,
        filter_classes_without_transpose: None,
        classes_with_transpose: None,
        filter_classes_with_transpose: None,
        transpose_in_group: use_t,
        group_order: group_order.to_string(),
        orbit_stabilizer_checked: None,
        classes: Vec::new(),
        reference: None,
        elapsed_ms: 0,
        seed: 0,
        jobs: rayon::current_num_threads(),
    };
    if params.classify {
        let packer = Packer::new(f, dim * n * m)?;
        let mut gens: Vec<Move> = general_linear_generators(f, n).into_iter().map(Move::Left).collect();
        gens.extend(general_linear_generators(f, m).into_iter().map(Move::Right));
        if e > 1 {
            gens.push(Move::Frob(1));
        }
        let orb = orbits(f, n, m, dim, &gens, &packer)?;
        let hits: Vec<bool> = orb
            .reps
            .iter()
            .map(|r| dim > 0 && min_rank_of_rows(f, n, m, r) >= params.d)
            .collect();
        let orbit_hits: u64 = orb.sizes.iter().zip(&hits).filter(|(_, &h)| h).map(|(s, _)| s).sum();
        if orbit_hits != scan.hits {
            return Err(Error::Structural(format!(
                "orbit sizes account for {orbit_hits} filtered subspaces, scan found {}",
                scan.hits
            )));
        }
        report.classes_without_transpose = Some(orb.reps.len() as u64);
        report.filter_classes_without_transpose = Some(hits.iter().filter(|&&h| h).count() as u64);
        // merge orbits swapped by transposition
        let mut parent: Vec<usize> = (0..orb.reps.len()).collect();
        if square {
            for (i, rows) in orb.reps.iter().enumerate() {
                let t = canonical(f, rows.iter().map(|r| apply_move(f, n, m, &Move::Transpose, r)).collect());
                let j = orb.index[&packer.key(&t)] as usize;
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
            let roots: Vec<usize> = (0..parent.len()).filter(|&i| find(&mut parent, i) == i).collect();
            report.classes_with_transpose = Some(roots.len() as u64);
            report.filter_classes_with_transpose = Some(roots.iter().filter(|&&r| hits[r]).count() as u64);
        }
        let mut class_sizes: HashMap<usize, u64> = HashMap::new();
        for i in 0..orb.reps.len() {
            let root = if use_t { find(&mut parent, i) } else { i };
            *class_sizes.entry(root).or_default() += orb.sizes[i];
        }
        let mut roots: Vec<usize> = class_sizes.keys().copied().collect();
        roots.sort();
        let tuples = group_order.to_u64().unwrap_or(u64::MAX) as u128 * roots.len() as u128;
        let stab_ok = tuples <= exhaustive_cap() as u128 * 4;
        let (gl_n, gl_m) = if stab_ok {
            (
                general_linear_group(f, n, exhaustive_cap())?,
                general_linear_group(f, m, exhaustive_cap())?,
            )
        } else {
            (vec![], vec![])
        };
        let mut all_ok = true;
        for &r in &roots {
            let size = class_sizes[&r];
            let stab = if stab_ok {
                let s = stabilizer_order(f, n, m, &orb.reps[r], &gl_n, &gl_m, use_t, &packer);
                all_ok &= BigUint::from(size) * s == group_order;
                Some(s)
            } else {
                None
            };
            report.classes.push(class_info(f, params, &orb.reps[r], size, stab)?);
        }
        if stab_ok {
            report.orbit_stabilizer_checked = Some(all_ok);
        }
    }
    if (f.size(), n, m, dim, params.d) == (2, 3, 3, 3, 3) {
        report.reference = Some(ReferenceRow {
            spaces: 788035,
            mrd: 192,
            classes: 48,
            mrd_classes: 1,
            classes_match_with_transpose: report.classes_with_transpose.map(|c| c == 48),
            classes_match_without_transpose: report.classes_without_transpose == Some(48),
        });
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Monte-Carlo or exact estimate of the MRD fraction among random subspaces.
#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub q: String,
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    pub linearity: String,
    pub exact: bool,
    pub samples: u64,
    pub mrd: u64,
    /// Reduced fraction `num/den`.
    pub fraction: String,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl SampleReport {
    pub fn ratio(&self) -> Ratio<BigUint> {
        let (a, b) = self.fraction.split_once('/').expect("num/den");
        Ratio::new(a.parse().expect("integer"), b.parse().expect("integer"))
    }
}

/// Scalar level and vector length of the subspaces sampled for each linearity.
struct SampleSpace {
    scalar: Field,
    len: usize,
    /// Matrix of a vector over the scalar level.
    to_matrix: Box<dyn Fn(&[u32]) -> Matrix + Sync>,
    /// `log_q |C|` per scalar-level dimension.
    q_per_dim: usize,
}

fn sample_space(field: &Field, n: usize, m: usize, lin: Linearity) -> Result<SampleSpace> {
    let e = field.prime_degree() as usize;
    Ok(match lin {
        Linearity::Fp => {
            let f = field.clone();
            SampleSpace {
                scalar: field.prime_field(),
                len: n * m * e,
                to_matrix: Box::new(move |v| from_prime_coordinates(&f, n, m, v)),
                q_per_dim: 0,
            }
        }
        Linearity::Fq => {
            let f = field.clone();
            SampleSpace {
                scalar: field.clone(),
                len: n * m,
                to_matrix: Box::new(move |v| Matrix::from_vec(&f, n, m, v.to_vec()).expect("n x m")),
                q_per_dim: 1,
            }
        }
        Linearity::Fqn => {
            if m > n {
                return Err(Error::Argument("GF(q^n)-linear codes need m <= n".into()));
            }
            let ext = field.extension(n as u32, None)?;
            let pb = ext.polynomial_basis();
            let e2 = ext.clone();
            SampleSpace {
                scalar: ext,
                len: m,
                to_matrix: Box::new(move |v| vector_to_matrix(&e2, v, &pb).expect("valid basis")),
                q_per_dim: n,
            }
        }
    })
}

fn is_mrd_span(space: &SampleSpace, field: &Field, n: usize, m: usize, rows: &[Vec<u32>]) -> bool {
    let s = &space.scalar;
    let k = rows.len();
    let qs = s.size();
    let mut best = usize::MAX;
    let mut coeffs = vec![0u32; k];
    for t in 1..qs.pow(k as u32) {
        let mut x = t;
        for c in coeffs.iter_mut() {
            *c = (x % qs) as u32;
            x /= qs;
        }
        if coeffs.iter().rev().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![0u32; space.len];
        for (c, r) in coeffs.iter().zip(rows) {
            if *c != 0 {
                for (a, &b) in v.iter_mut().zip(r) {
                    *a = s.add(*a, s.mul(*c, b));
                }
            }
        }
        best = best.min((space.to_matrix)(&v).rank());
        if best == 0 {
            break;
        }
    }
    // log_q |C| = k * q_per_dim, or k / e for prime-field spans
    let e = field.prime_degree() as usize;
    let log_q = if space.q_per_dim == 0 {
        if k % e != 0 {
            return false;
        }
        k / e
    } else {
        k * space.q_per_dim
    };
    best != usize::MAX && meets_singleton(log_q, n, m, best)
}

/// Fraction of MRD codes among uniformly random `dim`-dimensional subspaces of the given
/// linearity; enumerates exactly when the subspace count is within the cap.
pub fn sample_mrd_fraction(
    field: &Field,
    n: usize,
    m: usize,
    dim: usize,
    lin: Linearity,
    trials: u64,
    seed: u64,
) -> Result<SampleReport> {
    if dim == 0 {
        return Err(Error::Argument("the MRD fraction is undefined for dimension 0".into()));
    }
    if trials == 0 {
        return Err(Error::Argument("need at least one trial".into()));
    }
    let space = sample_space(field, n, m, lin)?;
    if dim > space.len {
        return Err(Error::Argument(format!("dim {dim} exceeds the ambient dimension {}", space.len)));
    }
    let en = SubspaceEnumerator::with_cap(&space.scalar, space.len, dim, u64::MAX);
    let exact_total = en.as_ref().ok().map(|e| e.total()).filter(|&t| t <= exhaustive_cap());
    let (exact, samples, hits) = match exact_total {
        Some(total) => {
            let en = en?;
            let chunk = 1u64 << 12;
            let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
            let hits: u64 = starts
                .par_iter()
                .map(|&s| {
                    en.range(s, s + chunk)
                        .filter(|sub| is_mrd_span(&space, field, n, m, sub.rows()))
                        .count() as u64
                })
                .sum();
            (true, total, hits)
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let qs = space.scalar.size();
            let mut hits = 0u64;
            for _ in 0..trials {
                let rows = loop {
                    let rows: Vec<Vec<u32>> = (0..dim)
                        .map(|_| (0..space.len).map(|_| rng.random_range(0..qs) as u32).collect())
                        .collect();
                    if SubspaceBasis::from_vectors(&space.scalar, space.len, rows.clone()).dim() == dim {
                        break rows;
                    }
                };
                if is_mrd_span(&space, field, n, m, &rows) {
                    hits += 1;
                }
            }
            (false, trials, hits)
        }
    };
    let ratio = Ratio::new(BigUint::from(hits), BigUint::from(samples));
    let est = hits as f64 / samples as f64;
    let (lo, hi) = if exact { (est, est) } else { wilson(hits, samples) };
    Ok(SampleReport {
        q: field.size().to_string(),
        n,
        m,
        dim,
        linearity: lin.to_string(),
        exact,
        samples,
        mrd: hits,
        fraction: format!("{}/{}", ratio.numer(), ratio.denom()),
        estimate: est,
        ci_low: lo,
        ci_high: hi,
        seed,
    })
}

/// 95% Wilson score interval.
fn wilson(hits: u64, n: u64) -> (f64, f64) {
    let z = 1.959_963_984_540_054f64;
    let nf = n as f64;
    let p = hits as f64 / nf;
    let denom = 1.0 + z * z / nf;
    let centre = (p + z * z / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z * z / (4.0 * nf * nf)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Outcome of [`equivalence_test`].
#[derive(Clone, Debug)]
pub enum EquivalenceVerdict {
    Equivalent(EquivalenceMove),
    NotEquivalent { reason: String },
    Indeterminate { reason: String },
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> Option<bool> {
        match self {
            EquivalenceVerdict::Equivalent(_) => Some(true),
            EquivalenceVerdict::NotEquivalent { .. } => Some(false),
            EquivalenceVerdict::Indeterminate { .. } => None,
        }
    }
}

/// Invariants compared before any search.
fn invariant_gap(c1: &RankMetricCode, c2: &RankMetricCode) -> Result<Option<String>> {
    if c1.field() != c2.field() || (c1.n(), c1.m()) != (c2.n(), c2.m()) {
        return Ok(Some("different field or shape".into()));
    }
    if c1.prime_dim() != c2.prime_dim() {
        return Ok(Some(format!("sizes differ (p^{} vs p^{})", c1.prime_dim(), c2.prime_dim())));
    }
    let (i1, i2) = (idealisers(c1)?, idealisers(c2)?);
    if (&i1.left_order, &i1.right_order) != (&i2.left_order, &i2.right_order) {
        // transpose swaps the two idealisers
        let swapped = c1.n() == c1.m() && (&i1.left_order, &i1.right_order) == (&i2.right_order, &i2.left_order);
        if !swapped {
            return Ok(Some(format!(
                "idealiser orders differ: ({}, {}) vs ({}, {})",
                i1.left_order, i1.right_order, i2.left_order, i2.right_order
            )));
        }
    }
    let (d1, d2) = (c1.rank_distribution()?, c2.rank_distribution()?);
    if d1 != d2 {
        return Ok(Some(format!("rank distributions differ: {d1} vs {d2}")));
    }
    Ok(None)
}

/// Decide whether `C2 = X C1^ρ Y` (or with `C1` transposed) for some move. `X` and `ρ`
/// are enumerated; for each, the admissible `Y` form a GF(p)-space solved linearly.
pub fn equivalence_test(c1: &RankMetricCode, c2: &RankMetricCode) -> Result<EquivalenceVerdict> {
    equivalence_test_with_cap(c1, c2, exhaustive_cap())
}

pub fn equivalence_test_with_cap(c1: &RankMetricCode, c2: &RankMetricCode, cap: u64) -> Result<EquivalenceVerdict> {
    if let Some(reason) = invariant_gap(c1, c2)? {
        return Ok(EquivalenceVerdict::NotEquivalent { reason });
    }
    let f = c1.field();
    let (n, m) = (c1.n(), c1.m());
    let e = f.prime_degree();
    let flips: Vec<bool> = if n == m { vec![false, true] } else { vec![false] };
    let gl_size = general_linear_order(n as u32, f.size());
    let work = gl_size.clone() * e * flips.len() as u32;
    if work > BigUint::from(cap) {
        return Ok(EquivalenceVerdict::Indeterminate {
            reason: format!("search over {work} left factors exceeds cap {cap}; invariants agree"),
        });
    }
    let gl = general_linear_group(f, n, cap.max(1 << 20))?;
    let basis = c1.prime_basis_matrices();
    let p = f.characteristic() as u64;
    let mut undecided = false;
    for &t in &flips {
        for rho in 0..e {
            let found = gl.par_iter().find_map_first(|x| -> Option<std::result::Result<EquivalenceMove, ()>> {
                let mv0 = EquivalenceMove {
                    x: x.clone(),
                    y: Matrix::identity(f, m),
                    rho,
                    transpose: t,
                };
                let bs: Vec<Matrix> = basis.iter().map(|a| mv0.apply_matrix(a).expect("shapes")).collect();
                let ys = multiplier_space(&bs, c2, false).ok()?;
                if ys.is_empty() {
                    return None;
                }
                let y = invertible_in_span(f, &ys, p, cap);
                match y {
                    Some(Some(y)) => Some(Ok(EquivalenceMove { y, ..mv0 })),
                    Some(None) => None,
                    None => Some(Err(())),
                }
            });
            match found {
                Some(Ok(mv)) => {
                    debug_assert!(apply_equivalence(c1, &mv).map(|c| c.same_code(c2)).unwrap_or(false));
                    return Ok(EquivalenceVerdict::Equivalent(mv));
                }
                Some(Err(())) => undecided = true,
                None => {}
            }
        }
    }
    Ok(if undecided {
        EquivalenceVerdict::Indeterminate {
            reason: "a right-factor space was too large to search".into(),
        }
    } else {
        EquivalenceVerdict::NotEquivalent {
            reason: "exhaustive search over GL(n, q) and field automorphisms found no move".into(),
        }
    })
}

/// `Some(Some(Y))` for an invertible element of the GF(p)-span, `Some(None)` when there is
/// none, `None` when the span is too large to decide.
fn invertible_in_span(f: &Field, span: &[Matrix], p: u64, cap: u64) -> Option<Option<Matrix>> {
    let combine = |coeffs: &[u32]| -> Matrix {
        let mut acc = Matrix::zero(f, span[0].rows(), span[0].cols());
        for (c, b) in coeffs.iter().zip(span) {
            if *c != 0 {
                acc = acc.add(&b.map(|v| f.scale_prime(*c, v))).expect("same shape");
            }
        }
        acc
    };
    let total = (p as u128).checked_pow(span.len() as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        let mut rng = ChaCha8Rng::seed_from_u64(span.len() as u64);
        for _ in 0..512 {
            let coeffs: Vec<u32> = (0..span.len()).map(|_| rng.random_range(0..p) as u32).collect();
            let y = combine(&coeffs);
            if y.is_invertible() {
                return Some(Some(y));
            }
        }
        return None;
    }
    for t in 1..total as u64 {
        let mut v = t;
        let coeffs: Vec<u32> = (0..span.len())
            .map(|_| {
                let d = (v % p) as u32;
                v /= p;
                d
            })
            .collect();
        let y = combine(&coeffs);
        if y.is_invertible() {
            return Some(Some(y));
        }
    }
    Some(None)
}

/// A random move applied to `code`, for planted-equivalence checks.
pub fn random_equivalent(code: &RankMetricCode, seed: u64) -> Result<(RankMetricCode, EquivalenceMove)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = code.field();
    let mv = EquivalenceMove {
        x: random_invertible(f, code.n(), &mut rng),
        y: random_invertible(f, code.m(), &mut rng),
        rho: rng.random_range(0..f.prime_degree()),
        transpose: code.n() == code.m() && rng.random_bool(0.5),
    };
    Ok((apply_equivalence(code, &mv)?, mv))
}

/// GF(p)-subspaces of `M_n(field)` of size `|field|^n` that contain `I` and have every
/// nonzero element invertible.
pub fn spread_sets_with_identity(field: &Field, n: usize) -> Result<Vec<RankMetricCode>> {
    let pf = field.prime_field();
    let e = field.prime_degree() as usize;
    let ambient = n * n * e;
    let k = n * e;
    let identity = crate::code::prime_coordinates(&Matrix::identity(field, n));
    let en = SubspaceEnumerator::with_cap(&pf, ambient, k, DEFAULT_SUBSPACE_CAP)?;
    check_cap("spread-set candidates", en.total() as u128, exhaustive_cap())?;
    let chunk = 1u64 << 12;
    let starts: Vec<u64> = (0..en.total()).step_by(chunk as usize).collect();
    let mut found: Vec<(u64, RankMetricCode)> = starts
        .par_iter()
        .flat_map_iter(|&s| {
            let pf = pf.clone();
            let identity = identity.clone();
            en.range(s, s + chunk).enumerate().filter_map(move |(off, sub)| {
                if !sub.contains(&pf, &identity) {
                    return None;
                }
                let code = RankMetricCode::from_spanning_set(
                    field,
                    (n, n),
                    &sub.rows()
                        .iter()
                        .map(|v| from_prime_coordinates(field, n, n, v))
                        .collect::<Vec<_>>(),
                )
                .ok()?;
                let all_invertible = code.rank_distribution().ok()?.0[..n].iter().skip(1).all(|&c| c == 0);
                all_invertible.then_some((s + off as u64, code))
            })
        })
        .collect();
    found.sort_by_key(|(i, _)| *i);
    Ok(found.into_iter().map(|(_, c)| c).collect())
}

/// Spread sets in `M_n(GF(2))` containing `I`, for `n <= 8`. Each is listed once through
/// its unique basis `M_1 = I, ..., M_n` with first column of `M_i` equal to `e_i`.
pub fn binary_spread_sets(n: usize) -> Result<Vec<RankMetricCode>> {
    if !(1..=8).contains(&n) {
        return Err(Error::Unsupported(format!("binary spread sets need 1 <= n <= 8, got {n}")));
    }
    let free = n * (n - 1);
    check_cap("spread-set search", 1u128 << free, exhaustive_cap())?;
    // matrix as u64: row r occupies bits 8r..8r+n, bit j of a row is column j
    let invertible = |a: u64| -> bool {
        let mut r: [u8; 8] = a.to_le_bytes();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| r[i] >> col & 1 == 1) else { return false };
            r.swap(col, p);
            let pivot = r[col];
            for (i, row) in r.iter_mut().enumerate().take(n) {
                if i != col && *row >> col & 1 == 1 {
                    *row ^= pivot;
                }
            }
        }
        true
    };
    let dense = |a: u64| -> usize {
        (0..n).fold(0usize, |acc, r| acc | ((a >> (8 * r) & 0xff) as usize) << (n * r))
    };
    // lookup table of invertible matrices when it fits in 2^16 entries
    let table: Vec<bool> = if n <= 4 {
        (0..1u64 << (n * n))
            .map(|d| invertible((0..n).fold(0u64, |acc, r| acc | ((d >> (n * r)) & ((1 << n) - 1)) << (8 * r))))
            .collect()
    } else {
        Vec::new()
    };
    let invertible = |a: u64| -> bool {
        if table.is_empty() {
            invertible(a)
        } else {
            table[dense(a)]
        }
    };
    let candidate = |i: usize, bits: u64| -> u64 {
        (0..n).fold(0u64, |acc, row| {
            let rest = (bits >> (row * (n - 1))) & ((1 << (n - 1)) - 1);
            acc | (((rest << 1) | (row == i) as u64) << (8 * row))
        })
    };
    let identity = (0..n).fold(0u64, |acc, i| acc | 1 << (9 * i));
    // depth-first over M_2..M_n; `span` holds every combination of the chosen prefix
    let mut sets: Vec<Vec<u64>> = Vec::new();
    let mut stack: Vec<(Vec<u64>, Vec<u64>)> = vec![(vec![identity], vec![0, identity])];
    while let Some((chosen, span)) = stack.pop() {
        let i = chosen.len();
        if i == n {
            sets.push(chosen);
            continue;
        }
        let next: Vec<u64> = (0..1u64 << free)
            .into_par_iter()
            .map(|bits| candidate(i, bits))
            .filter(|&c| span.iter().all(|&s| invertible(s ^ c)))
            .collect();
        for c in next.into_iter().rev() {
            let mut ch = chosen.clone();
            ch.push(c);
            let mut sp = span.clone();
            sp.extend(span.iter().map(|s| s ^ c));
            stack.push((ch, sp));
        }
    }
    let f = Field::prime(2)?;
    sets.into_par_iter()
        .map(|basis| {
            let mats: Vec<Matrix> = basis
                .iter()
                .map(|&a| {
                    let data = (0..n * n).map(|t| (a >> (8 * (t / n) + t % n) & 1) as u32).collect();
                    Matrix::from_vec(&f, n, n, data)
                })
                .collect::<Result<_>>()?;
            RankMetricCode::from_matrices_shaped(&f, Some((n, n)), mats, Linearity::Fq)
        })
        .collect()
}

/// One isotopy class of presemifields found by [`classify_spread_sets`].
#[derive(Clone, Debug, Serialize)]
pub struct SemifieldClass {
    pub members: usize,
    pub left_idealiser_order: String,
    pub right_idealiser_order: String,
    pub commutative_representative: bool,
    pub representative: Vec<String>,
}

fn spread_key(pf: &Field, mats: &[Matrix]) -> Vec<u32> {
    let mut rows: Vec<Vec<u32>> = mats.iter().map(crate::code::prime_coordinates).collect();
    rref_rows(pf, &mut rows);
    rows.concat()
}

/// Exact isotopy classification of spread sets containing `I`. Two such sets are isotopic
/// exactly when one is `X (C M^{-1})^ρ X^{-1}` for some `M` in the other, so classes are the
/// components of a search over conjugations, right divisions and field automorphisms.
/// Every input must contain `I`; sets outside the input that turn up are still followed.
pub fn classify_spread_sets(codes: &[RankMetricCode]) -> Result<Vec<SemifieldClass>> {
    let Some(first) = codes.first() else { return Ok(vec![]) };
    let f = first.field().clone();
    let n = first.n();
    let pf = f.prime_field();
    let id = Matrix::identity(&f, n);
    let gens = general_linear_generators(&f, n);
    let gens: Vec<(Matrix, Matrix)> = gens
        .into_iter()
        .map(|g| {
            let inv = g.inverse()?;
            Ok((g, inv))
        })
        .collect::<Result<_>>()?;
    let e = f.prime_degree();
    let mut class_of: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut classes: Vec<SemifieldClass> = Vec::new();
    for code in codes {
        if code.n() != n || code.m() != n || code.field() != &f || !code.contains(&id) {
            return Err(Error::Argument("spread sets must be n x n over one field and contain I".into()));
        }
        let start = code.prime_basis_matrices();
        let key = spread_key(&pf, &start);
        if let Some(&c) = class_of.get(&key) {
            classes[c].members += 1;
            continue;
        }
        let cid = classes.len();
        let ids = idealisers(code)?;
        classes.push(SemifieldClass {
            members: 1,
            left_idealiser_order: ids.left_order.to_string(),
            right_idealiser_order: ids.right_order.to_string(),
            commutative_representative: mult_from_spread(code)?.is_commutative(),
            representative: code.basis().iter().map(|b| b.to_text()).collect(),
        });
        class_of.insert(key, cid);
        let mut queue = VecDeque::from([start]);
        while let Some(mats) = queue.pop_front() {
            let mut images: Vec<Vec<Matrix>> = Vec::new();
            for (g, gi) in &gens {
                images.push(mats.iter().map(|a| g.mul(a)?.mul(gi)).collect::<Result<_>>()?);
            }
            if e > 1 {
                images.push(mats.iter().map(|a| a.map(|x| f.frobenius_prime(x, 1))).collect());
            }
            for w in span_elements(&pf, &f, &mats) {
                if w.is_zero() || w == id {
                    continue;
                }
                let wi = w.inverse()?;
                images.push(mats.iter().map(|a| a.mul(&wi)).collect::<Result<_>>()?);
            }
            for img in images {
                let k = spread_key(&pf, &img);
                if !class_of.contains_key(&k) {
                    class_of.insert(k, cid);
                    queue.push_back(img);
                }
            }
        }
    }
    Ok(classes)
}

/// All GF(p)-combinations of a prime basis of matrices.
fn span_elements(pf: &Field, f: &Field, mats: &[Matrix]) -> Vec<Matrix> {
    let p = pf.size();
    let total = p.pow(mats.len() as u32);
    (0..total)
        .map(|mut t| {
            let mut acc = Matrix::zero(f, mats[0].rows(), mats[0].cols());
            for b in mats {
                let c = (t % p) as u32;
                t /= p;
                if c != 0 {
                    acc = acc.add(&b.map(|v| f.scale_prime(c, v))).expect("same shape");
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_space_is_one_subspace() {
        let f = Field::prime(2).unwrap();
        let r = census(&CensusParams::new(&f, 2, 2, 4, 1)).unwrap();
        assert_eq!(r.total_subspaces, 1);
        assert_eq!(r.classes_without_transpose, Some(1));
        assert_eq!(r.orbit_stabilizer_checked, Some(true));
    }

    #[test]
    fn spread_sets_2x2() {
        let f = Field::prime(2).unwrap();
        let r = census(&CensusParams::new(&f, 2, 2, 2, 2)).unwrap();
        assert_eq!(r.filter_classes_with_transpose, Some(1));
        assert_eq!(r.filter_classes_without_transpose, Some(1));
        assert_eq!(r.orbit_stabilizer_checked, Some(true));
    }

    #[test]
    fn ubiquity_2x2() {
        let f = Field::prime(2).unwrap();
        let r = sample_mrd_fraction(&f, 2, 2, 1, Linearity::Fqn, 1, 0).unwrap();
        assert!(r.exact);
        assert_eq!(r.fraction, "2/5");
        assert!(sample_mrd_fraction(&f, 2, 2, 0, Linearity::Fqn, 1, 0).is_err());
    }

    #[test]
    fn partition_independent_scan() {
        let f = Field::prime(2).unwrap();
        let a = scan_subspaces(&f, 2, 3, 2, 2, 7).unwrap();
        let b = scan_subspaces(&f, 2, 3, 2, 2, 1000).unwrap();
        assert_eq!(a, b);
    }
}
