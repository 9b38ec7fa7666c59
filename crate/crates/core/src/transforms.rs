//! Equivalence moves, Delsarte duality and the MacWilliams transform,
//! shortening and puncturing, lifting, and idealisers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{from_prime_coordinates, prime_coordinates, Linearity, RankDistribution, RankMetricCode};
use crate::error::{check_cap, exhaustive_cap, Error, Result};
use crate::field::Field;
use crate::linearized::SigmaPolynomial;
use crate::matrix::{gaussian_binomial, Matrix, SubspaceBasis};

/// `A ↦ X · op(A^ρ) · Y` where `op` is the transpose when requested and
/// `ρ: x ↦ x^(p^rho)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceMove {
    pub x: Matrix,
    pub y: Matrix,
    pub rho: u32,
    pub transpose: bool,
}

impl EquivalenceMove {
    pub fn identity(field: &Field, n: usize, m: usize) -> Self {
        EquivalenceMove {
            x: Matrix::identity(field, n),
            y: Matrix::identity(field, m),
            rho: 0,
            transpose: false,
        }
    }

    /// Uniformly random invertible `X`, `Y` and automorphism exponent.
    pub fn random(field: &Field, n: usize, m: usize, transpose: bool, rng: &mut impl Rng) -> Self {
        EquivalenceMove {
            x: random_invertible(field, n, rng),
            y: random_invertible(field, m, rng),
            rho: rng.random_range(0..field.prime_degree()),
            transpose,
        }
    }

    pub fn apply_matrix(&self, a: &Matrix) -> Result<Matrix> {
        let f = a.field();
        let mut b = a.map(|v| f.frobenius_prime(v, self.rho));
        if self.transpose {
            b = b.transpose();
        }
        self.x.mul(&b)?.mul(&self.y)
    }
}

pub fn random_invertible(field: &Field, n: usize, rng: &mut impl Rng) -> Matrix {
    let q = field.size();
    loop {
        let data: Vec<u32> = (0..n * n).map(|_| rng.random_range(0..q) as u32).collect();
        let m = Matrix::from_vec(field, n, n, data).expect("n x n");
        if m.is_invertible() {
            return m;
        }
    }
}

/// `{X A^ρ Y : A ∈ C}` (with the optional transpose for square codes).
pub fn apply_equivalence(code: &RankMetricCode, mv: &EquivalenceMove) -> Result<RankMetricCode> {
    let (n, m) = (code.n(), code.m());
    if mv.transpose && n != m {
        return Err(Error::Argument("transpose moves need square codes".into()));
    }
    if (mv.x.rows(), mv.x.cols(), mv.y.rows(), mv.y.cols()) != (n, n, m, m) {
        return Err(Error::Argument(format!("move shapes do not fit an {n}x{m} code")));
    }
    if !mv.x.is_invertible() || !mv.y.is_invertible() {
        return Err(Error::Argument("equivalence move with a singular matrix".into()));
    }
    if mv.rho >= code.field().prime_degree() {
        return Err(Error::Argument(format!("automorphism exponent {} out of range", mv.rho)));
    }
    let out = match code.fq_basis() {
        Some(basis) => {
            let images = basis.iter().map(|a| mv.apply_matrix(a)).collect::<Result<Vec<_>>>()?;
            RankMetricCode::from_matrices_shaped(code.field(), Some((n, m)), images, Linearity::Fq)?
        }
        None => {
            let images = code
                .prime_basis_matrices()
                .iter()
                .map(|a| mv.apply_matrix(a))
                .collect::<Result<Vec<_>>>()?;
            RankMetricCode::from_matrices_shaped(code.field(), Some((n, m)), images, Linearity::Fp)?
        }
    };
    Ok(carry(code, out))
}

fn carry(from: &RankMetricCode, mut to: RankMetricCode) -> RankMetricCode {
    for (k, v) in from.provenance() {
        to = to.with_provenance(k, v.clone());
    }
    to
}

/// Gram matrix of `(a, b) ↦ tr_{GF(q)/GF(p)}(ab)` on the prime basis.
fn prime_trace_gram(field: &Field) -> Vec<Vec<u32>> {
    let pb = field.prime_basis();
    pb.iter()
        .map(|&a| pb.iter().map(|&b| field.prime_trace(field.mul(a, b))).collect())
        .collect()
}

/// Dual under `(A, B) = tr_{GF(q)/GF(p)}(Tr(A B^T))`.
pub fn delsarte_dual(code: &RankMetricCode) -> Result<RankMetricCode> {
    let f = code.field();
    let pf = f.prime_field();
    let e = f.prime_degree() as usize;
    let (n, m) = (code.n(), code.m());
    let gram = prime_trace_gram(f);
    let ambient = n * m * e;
    let rows: Vec<u32> = code
        .prime_basis()
        .rows()
        .iter()
        .flat_map(|a| {
            let mut r = vec![0u32; ambient];
            for cell in 0..n * m {
                for u in 0..e {
                    let mut acc = 0u32;
                    for t in 0..e {
                        acc = pf.add(acc, pf.mul(a[cell * e + t], gram[t][u]));
                    }
                    r[cell * e + u] = acc;
                }
            }
            r
        })
        .collect();
    let kernel = if code.prime_dim() == 0 {
        SubspaceBasis::full(&pf, ambient)
    } else {
        Matrix::from_vec(&pf, code.prime_dim(), ambient, rows)?.right_kernel()
    };
    let dual = RankMetricCode::from_prime_vectors(f, n, m, kernel.rows().to_vec())?
        .set_transposed(code.transposed());
    Ok(if code.linearity() != Linearity::Fp {
        dual.upgrade_linearity()
    } else {
        dual
    })
}

/// Dual under `(A, B) = Tr(B1^T A B2 B^T)` for nondegenerate forms with matrices `B1`, `B2`.
pub fn bilinear_form_dual(code: &RankMetricCode, b1: &Matrix, b2: &Matrix) -> Result<RankMetricCode> {
    let images = code
        .prime_basis_matrices()
        .iter()
        .map(|a| b1.transpose().mul(a)?.mul(b2))
        .collect::<Result<Vec<_>>>()?;
    if !b1.is_invertible() || !b2.is_invertible() {
        return Err(Error::Argument("bilinear forms must be nondegenerate".into()));
    }
    let moved = RankMetricCode::from_matrices_shaped(code.field(), Some((code.n(), code.m())), images, Linearity::Fp)?;
    delsarte_dual(&moved)
}

fn binom2(x: i64) -> i64 {
    x * (x - 1) / 2
}

fn gauss(m: i64, i: i64, q: u64) -> BigInt {
    if i < 0 || m < 0 || i > m {
        return BigInt::zero();
    }
    BigInt::from(gaussian_binomial(m as u32, i as u32, q).expect("in range"))
}

/// Dual rank distribution from `a_j^⊥ = |C|^{-1} Σ_i a_i Σ_s (-1)^{j-s} q^{ns + C(j-s,2)} [m-s, m-j]_q [m-i, s]_q`.
pub fn macwilliams_transform(dist: &RankDistribution, q: u64, n: usize, m: usize) -> Result<RankDistribution> {
    if dist.0.len() != m + 1 {
        return Err(Error::Argument(format!("distribution must have {} entries", m + 1)));
    }
    if m > n {
        return Err(Error::Argument("need m <= n".into()));
    }
    let total = BigInt::from(dist.total());
    let p = crate::field::Field::prime(smallest_prime_factor(q) as u32)?.characteristic() as u64;
    let mut t = total.clone();
    while t > BigInt::one() && (&t % p).is_zero() {
        t /= p;
    }
    if dist.0[0] != 1 || t != BigInt::one() {
        return Err(Error::Argument("distribution of an additive code has a_0 = 1 and prime-power size".into()));
    }
    let qb = BigInt::from(q);
    let (ni, mi) = (n as i64, m as i64);
    let mut out = Vec::with_capacity(m + 1);
    for j in 0..=mi {
        let mut acc = BigInt::zero();
        for (i, &ai) in dist.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let mut inner = BigInt::zero();
            for s in 0..=mi {
                let g = gauss(mi - s, mi - j, q) * gauss(mi - (i as i64), s, q);
                if g.is_zero() {
                    continue;
                }
                let sign = if (j - s).rem_euclid(2) == 0 { BigInt::one() } else { -BigInt::one() };
                let exp = ni * s + binom2(j - s);
                inner += sign * qb.pow(exp as u32) * g;
            }
            acc += BigInt::from(ai) * inner;
        }
        let (quot, rem) = acc.div_rem(&total);
        if !rem.is_zero() || quot.is_negative() {
            return Err(Error::Argument("distribution is not that of an additive code".into()));
        }
        out.push(quot.to_u128().ok_or_else(|| Error::Unsupported("dual count exceeds 128 bits".into()))?);
    }
    Ok(RankDistribution(out))
}

fn smallest_prime_factor(q: u64) -> u64 {
    (2..=q).find(|d| q % d == 0).unwrap_or(q)
}

/// Which side of the matrix a shortening or puncturing acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl std::str::FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "row" => Ok(Axis::Row),
            "column" | "col" => Ok(Axis::Column),
            _ => Err(Error::Argument(format!("unknown axis '{s}'"))),
        }
    }
}

/// Subcode of codewords `A` with `lin(A) = 0`, where `lin` is GF(p)-linear.
fn subcode_where(code: &RankMetricCode, lin: impl Fn(&Matrix) -> Vec<u32>) -> Result<Vec<Matrix>> {
    let basis = code.prime_basis_matrices();
    if basis.is_empty() {
        return Ok(vec![]);
    }
    let f = code.field();
    let pf = f.prime_field();
    let cols: Vec<Vec<u32>> = basis
        .iter()
        .map(|b| lin(b).into_iter().flat_map(|x| f.prime_digits(x)).collect())
        .collect();
    let rows = cols[0].len();
    if rows == 0 {
        return Ok(basis);
    }
    let mut data = vec![0u32; rows * cols.len()];
    for (l, c) in cols.iter().enumerate() {
        for (r, &v) in c.iter().enumerate() {
            data[r * cols.len() + l] = v;
        }
    }
    let kernel = Matrix::from_vec(&pf, rows, cols.len(), data)?.right_kernel();
    Ok(kernel
        .rows()
        .iter()
        .map(|c| {
            let mut acc = Matrix::zero(f, code.n(), code.m());
            for (coef, b) in c.iter().zip(&basis) {
                if *coef != 0 {
                    acc = acc.add(&b.map(|x| f.scale_prime(*coef, x))).expect("same shape");
                }
            }
            acc
        })
        .collect())
}

fn finish(code: &RankMetricCode, words: Vec<Matrix>, shape: (usize, usize)) -> Result<RankMetricCode> {
    let out = RankMetricCode::from_matrices_shaped(code.field(), Some(shape), words, Linearity::Fp)?;
    let out = if code.linearity() != Linearity::Fp { out.upgrade_linearity() } else { out };
    Ok(carry(code, out))
}

/// Row-shortening by `U ≤ GF(q)^m` (`{A : A u = 0 ∀u ∈ U}` as `n × dim U^*`
/// matrices) or column-shortening by `W ≤ GF(q)^n` (`{A : w^T A = 0}` as
/// `dim W^* × m`). Coordinates are taken at the pivot positions of the RREF basis of the complement.
pub fn shorten(code: &RankMetricCode, u: &SubspaceBasis, axis: Axis) -> Result<RankMetricCode> {
    let f = code.field();
    let (n, m) = (code.n(), code.m());
    let ambient = match axis {
        Axis::Row => m,
        Axis::Column => n,
    };
    if u.ambient() != ambient {
        return Err(Error::Argument(format!(
            "shortening subspace must live in dimension {ambient}, got {}",
            u.ambient()
        )));
    }
    let star = u.perp(f);
    if star.dim() == 0 {
        return Err(Error::Argument("shortening by the whole space leaves no coordinates".into()));
    }
    let pivots = star.pivots();
    let vectors: Vec<Vec<u32>> = u.rows().to_vec();
    match axis {
        Axis::Row => {
            let sub = subcode_where(code, |a| {
                vectors.iter().flat_map(|v| a.mul_vec(v).expect("length m")).collect()
            })?;
            let words = sub
                .iter()
                .map(|a| {
                    let data = (0..n).flat_map(|i| pivots.iter().map(move |&c| a.get(i, c))).collect();
                    Matrix::from_vec(f, n, pivots.len(), data)
                })
                .collect::<Result<Vec<_>>>()?;
            finish(code, words, (n, pivots.len()))
        }
        Axis::Column => {
            let sub = subcode_where(code, |a| {
                let at = a.transpose();
                vectors.iter().flat_map(|v| at.mul_vec(v).expect("length n")).collect()
            })?;
            let words = sub
                .iter()
                .map(|a| {
                    let data = pivots.iter().flat_map(|&r| a.row(r).to_vec()).collect();
                    Matrix::from_vec(f, pivots.len(), m, data)
                })
                .collect::<Result<Vec<_>>>()?;
            finish(code, words, (pivots.len(), m))
        }
    }
}

/// Row-puncturing by `X` (`n × n`, rank `t`): `XC` read inside `im_r(X)`, i.e. the
/// column-shortening of `XC` by `im_r(X)^*`, giving `t × m` matrices.
/// Column-puncturing by `Y` (`m × m`, rank `s`): the row-shortening of `CY` by `im_l(Y)^*`.
pub fn puncture(code: &RankMetricCode, mat: &Matrix, axis: Axis) -> Result<RankMetricCode> {
    let f = code.field();
    let (n, m) = (code.n(), code.m());
    let size = match axis {
        Axis::Row => n,
        Axis::Column => m,
    };
    if mat.rows() != size || mat.cols() != size || mat.field() != f {
        return Err(Error::Argument(format!("puncturing matrix must be {size}x{size} over the code's field")));
    }
    let words = code
        .prime_basis_matrices()
        .iter()
        .map(|a| match axis {
            Axis::Row => mat.mul(a),
            Axis::Column => a.mul(mat),
        })
        .collect::<Result<Vec<_>>>()?;
    let moved = RankMetricCode::from_spanning_set(f, (n, m), &words)?;
    let moved = if code.linearity() != Linearity::Fp { moved.upgrade_linearity() } else { moved };
    let moved = carry(code, moved);
    match axis {
        Axis::Row => shorten(&moved, &mat.right_image().perp(f), Axis::Column),
        Axis::Column => shorten(&moved, &mat.left_image().perp(f), Axis::Row),
    }
}

/// `S_A = {(x, Ax)}` in `GF(q)^(m+n)`, with basis rows `(e_j, A e_j)`.
pub fn lift_matrix(a: &Matrix) -> SubspaceBasis {
    let (n, m) = (a.rows(), a.cols());
    let rows = (0..m)
        .map(|j| {
            let mut v = vec![0u32; m + n];
            v[j] = 1;
            for i in 0..n {
                v[m + i] = a.get(i, j);
            }
            v
        })
        .collect();
    SubspaceBasis::from_vectors(a.field(), m + n, rows)
}

/// Constant-dimension subspace code from all codewords.
pub fn lift(code: &RankMetricCode) -> Result<Vec<SubspaceBasis>> {
    Ok(code.codewords()?.iter().map(lift_matrix).collect())
}

/// `dim(U+V) - dim(U∩V)`.
pub fn subspace_distance(field: &Field, u: &SubspaceBasis, v: &SubspaceBasis) -> Result<usize> {
    if u.ambient() != v.ambient() {
        return Err(Error::Structural("subspaces of different ambient spaces".into()));
    }
    let sum = u.sum(field, v).dim();
    Ok(2 * sum - u.dim() - v.dim())
}

/// Left and right idealisers `{X : XC ⊆ C}`, `{Y : CY ⊆ C}`.
#[derive(Clone, Debug)]
pub struct Idealisers {
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
    pub left_order: BigUint,
    pub right_order: BigUint,
    /// The left idealiser contains a field of order `q^n`.
    pub fqn_linear: bool,
}

/// GF(p)-basis of `{X : X·B ∈ target ∀B ∈ basis}` (`left`) or `{X : B·X ∈ target}`.
pub(crate) fn multiplier_space(basis: &[Matrix], target: &RankMetricCode, left: bool) -> Result<Vec<Matrix>> {
    let f = target.field();
    let pf = f.prime_field();
    let e = f.prime_degree() as usize;
    let size = if left { target.n() } else { target.m() };
    let parity = target.prime_basis().perp(&pf);
    let pb = f.prime_basis();
    let unknowns: Vec<Matrix> = (0..size * size * e)
        .map(|r| {
            let mut x = Matrix::zero(f, size, size);
            x.set(r / e / size, (r / e) % size, pb[r % e]);
            x
        })
        .collect();
    if parity.dim() == 0 || basis.is_empty() {
        return Ok(unknowns);
    }
    let images: Vec<Vec<Vec<u32>>> = unknowns
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|b| Ok(prime_coordinates(&if left { x.mul(b)? } else { b.mul(x)? })))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for l in 0..basis.len() {
        for h in parity.rows() {
            rows.push(
                images
                    .iter()
                    .map(|img| {
                        img[l]
                            .iter()
                            .zip(h)
                            .fold(0u32, |acc, (&a, &b)| pf.add(acc, pf.mul(a, b)))
                    })
                    .collect::<Vec<u32>>(),
            );
        }
    }
    let mat = Matrix::from_rows(&pf, &rows)?;
    Ok(mat
        .right_kernel()
        .rows()
        .iter()
        .map(|c| {
            let mut acc = Matrix::zero(f, size, size);
            for (coef, x) in c.iter().zip(&unknowns) {
                if *coef != 0 {
                    acc = acc.add(&x.map(|v| f.scale_prime(*coef, v))).expect("same shape");
                }
            }
            acc
        })
        .collect())
}

pub fn idealisers(code: &RankMetricCode) -> Result<Idealisers> {
    let basis = code.prime_basis_matrices();
    let left = multiplier_space(&basis, code, true)?;
    let right = multiplier_space(&basis, code, false)?;
    let p = BigUint::from(code.field().characteristic());
    let fqn_linear = contains_field_of_order(code.field(), &left, code.n())?;
    Ok(Idealisers {
        left_order: p.pow(left.len() as u32),
        right_order: p.pow(right.len() as u32),
        left,
        right,
        fqn_linear,
    })
}

/// Degree and coefficients of the minimal polynomial of `x` over GF(p).
fn prime_minimal_polynomial(x: &Matrix) -> Result<Vec<u32>> {
    let f = x.field();
    let pf = f.prime_field();
    let size = x.rows();
    let mut powers = vec![Matrix::identity(f, size)];
    loop {
        let next = powers.last().unwrap().mul(x)?;
        let span: Vec<Vec<u32>> = powers.iter().map(prime_coordinates).collect();
        let d = powers.len();
        let target = prime_coordinates(&next);
        let mut cols = vec![0u32; target.len() * d];
        for (j, v) in span.iter().enumerate() {
            for (i, &c) in v.iter().enumerate() {
                cols[i * d + j] = c;
            }
        }
        let sys = Matrix::from_vec(&pf, target.len(), d, cols)?;
        if let Some(sol) = sys.solve(&target)? {
            let mut poly: Vec<u32> = sol.iter().map(|&c| pf.neg(c)).collect();
            poly.push(1);
            return Ok(poly);
        }
        powers.push(next);
    }
}

/// Whether some element of the span of `algebra` generates a field of order `q^n` over GF(p).
fn contains_field_of_order(field: &Field, algebra: &[Matrix], n: usize) -> Result<bool> {
    let target = field.prime_degree() as usize * n;
    let pf = field.prime_field();
    if algebra.len() < target {
        return Ok(false);
    }
    let p = field.characteristic() as u64;
    let total = (p as u128).checked_pow(algebra.len() as u32).unwrap_or(u128::MAX);
    let check = |coeffs: &[u32]| -> Result<bool> {
        let mut x = Matrix::zero(field, n, n);
        for (c, b) in coeffs.iter().zip(algebra) {
            if *c != 0 {
                x = x.add(&b.map(|v| field.scale_prime(*c, v)))?;
            }
        }
        let poly = prime_minimal_polynomial(&x)?;
        Ok(poly.len() - 1 == target && pf.is_irreducible(&poly)?)
    };
    if total <= 1 << 14 {
        for t in 1..total as u64 {
            let mut v = t;
            let coeffs: Vec<u32> = (0..algebra.len())
                .map(|_| {
                    let d = (v % p) as u32;
                    v /= p;
                    d
                })
                .collect();
            if check(&coeffs)? {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1dea1);
    for _ in 0..4096 {
        let coeffs: Vec<u32> = (0..algebra.len()).map(|_| rng.random_range(0..p) as u32).collect();
        if check(&coeffs)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Dual of a GF(p)-linear set of σ-linearized polynomials under
/// `(f, g) = tr_{GF(q^n)/GF(p)}(Σ f_i g_i)`.
pub fn linpoly_dual(ext: &Field, s: u32, basis: &[SigmaPolynomial]) -> Result<Vec<SigmaPolynomial>> {
    let n = ext.degree() as usize;
    let pf = ext.prime_field();
    let e = ext.prime_degree() as usize;
    let pb = ext.prime_basis();
    let dim = n * e;
    let unknown = |r: usize| -> (usize, u32) { (r / e, pb[r % e]) };
    if basis.is_empty() {
        return (0..dim)
            .map(|r| {
                let (i, b) = unknown(r);
                SigmaPolynomial::monomial(ext, s, i, b)
            })
            .collect();
    }
    let rows: Vec<Vec<u32>> = basis
        .iter()
        .map(|f| {
            (0..dim)
                .map(|r| {
                    let (i, b) = unknown(r);
                    ext.prime_trace(ext.mul(f.coeffs()[i], b))
                })
                .collect()
        })
        .collect();
    let kernel = Matrix::from_rows(&pf, &rows)?.right_kernel();
    kernel
        .rows()
        .iter()
        .map(|c| {
            let mut coeffs = vec![0u32; n];
            for (r, &v) in c.iter().enumerate() {
                if v != 0 {
                    let (i, b) = unknown(r);
                    coeffs[i] = ext.add(coeffs[i], ext.scale_prime(v, b));
                }
            }
            SigmaPolynomial::new(ext, s, &coeffs)
        })
        .collect()
}

/// Matrix code of a set of σ-linearized polynomials (polynomial basis, GF(p)-span).
pub fn linpoly_code(ext: &Field, polys: &[SigmaPolynomial]) -> Result<RankMetricCode> {
    let n = ext.degree() as usize;
    let k = ext.base_field();
    let words: Vec<Matrix> = polys.iter().map(|f| f.to_base_matrix()).collect();
    let span = SubspaceBasis::from_vectors(
        &k.prime_field(),
        n * n * k.prime_degree() as usize,
        words.iter().map(prime_coordinates).collect(),
    );
    RankMetricCode::from_prime_vectors(&k, n, n, span.rows().to_vec())
}

/// Rank of every codeword of a GF(p)-basis list, exhaustively (for small property checks).
pub fn prime_span(field: &Field, n: usize, m: usize, words: &[Matrix]) -> Result<Vec<Matrix>> {
    let pf = field.prime_field();
    let span = SubspaceBasis::from_vectors(
        &pf,
        n * m * field.prime_degree() as usize,
        words.iter().map(prime_coordinates).collect(),
    );
    let total = (field.characteristic() as u128).pow(span.dim() as u32);
    check_cap("span listing", total, exhaustive_cap())?;
    let p = field.characteristic() as u64;
    Ok((0..total as u64)
        .map(|t| {
            let mut v = t;
            let mut acc = vec![0u32; n * m * field.prime_degree() as usize];
            for row in span.rows() {
                let c = (v % p) as u32;
                v /= p;
                for (a, &b) in acc.iter_mut().zip(row) {
                    *a = pf.add(*a, pf.mul(c, b));
                }
            }
            from_prime_coordinates(field, n, m, &acc)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::RankDistribution;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    fn gf4_spread() -> RankMetricCode {
        let f = gf2();
        RankMetricCode::from_matrices(
            &f,
            vec![Matrix::identity(&f, 2), Matrix::parse(&f, "0,1;1,1").unwrap()],
            Linearity::Fp,
        )
        .unwrap()
    }

    #[test]
    fn identity_move_is_trivial() {
        let c = gf4_spread();
        let mv = EquivalenceMove::identity(c.field(), 2, 2);
        assert!(apply_equivalence(&c, &mv).unwrap().same_code(&c));
    }

    #[test]
    fn singular_move_rejected() {
        let c = gf4_spread();
        let mut mv = EquivalenceMove::identity(c.field(), 2, 2);
        mv.x = Matrix::zero(c.field(), 2, 2);
        assert!(matches!(apply_equivalence(&c, &mv), Err(Error::Argument(_))));
    }

    #[test]
    fn dual_of_full_and_zero() {
        let f = Field::new(2, 2).unwrap();
        let zero = RankMetricCode::from_matrices_shaped(&f, Some((2, 2)), vec![], Linearity::Fp).unwrap();
        let full = delsarte_dual(&zero).unwrap();
        assert_eq!(full.prime_dim(), 8);
        assert_eq!(delsarte_dual(&full).unwrap().prime_dim(), 0);
    }

    #[test]
    fn macwilliams_full_space() {
        let d = RankDistribution(vec![1, 9, 6]);
        assert_eq!(macwilliams_transform(&d, 2, 2, 2).unwrap(), RankDistribution(vec![1, 0, 0]));
        assert!(macwilliams_transform(&RankDistribution(vec![1, 1, 1]), 2, 2, 2).is_err());
    }

    #[test]
    fn macwilliams_matches_dual_of_spread() {
        let c = gf4_spread();
        let dual = delsarte_dual(&c).unwrap();
        let predicted = macwilliams_transform(&c.rank_distribution().unwrap(), 2, 2, 2).unwrap();
        assert_eq!(predicted, dual.rank_distribution().unwrap());
    }

    #[test]
    fn lifting_examples() {
        let f = gf2();
        let a = lift_matrix(&Matrix::zero(&f, 2, 2));
        let b = lift_matrix(&Matrix::identity(&f, 2));
        assert_eq!(subspace_distance(&f, &a, &b).unwrap(), 4);
        assert_eq!(subspace_distance(&f, &a, &a).unwrap(), 0);
    }

    #[test]
    fn full_space_idealiser() {
        let f = gf2();
        let basis: Vec<Matrix> = (0..4)
            .map(|t| {
                let mut a = Matrix::zero(&f, 2, 2);
                a.set(t / 2, t % 2, 1);
                a
            })
            .collect();
        let c = RankMetricCode::from_matrices(&f, basis, Linearity::Fp).unwrap();
        let id = idealisers(&c).unwrap();
        assert_eq!(id.left_order, BigUint::from(16u32));
        assert!(id.fqn_linear);
    }

    #[test]
    fn shorten_by_zero_subspace_keeps_code() {
        let c = gf4_spread();
        let s = shorten(&c, &SubspaceBasis::zero(2), Axis::Row).unwrap();
        assert!(s.same_code(&c));
    }

    #[test]
    fn minimal_polynomial_of_companion() {
        let f = gf2();
        let c = Matrix::parse(&f, "0,1;1,1").unwrap();
        assert_eq!(prime_minimal_polynomial(&c).unwrap(), vec![1, 1, 1]);
    }
}
