//! Conversions between vectors over GF(q^n), their expansion matrices over
//! GF(q), Moore matrices, linearized polynomials, Dickson matrices and
//! rank-one tensor sums.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linearized::SigmaPolynomial;
use crate::matrix::Matrix;

fn sigma(ext: &Field, s: u32, a: u32, i: usize) -> u32 {
    let n = ext.degree() as u64;
    ext.frobenius(a, ((s as u64 * i as u64) % n.max(1)) as u32)
}

/// Rank of a vector over GF(q^n): dimension of the GF(q)-span of its entries.
pub fn vector_rank(ext: &Field, v: &[u32]) -> usize {
    expansion(ext, v).rank()
}

/// Expansion in the polynomial basis: column `j` holds the coordinates of `v_j`.
fn expansion(ext: &Field, v: &[u32]) -> Matrix {
    let n = ext.degree() as usize;
    let m = v.len();
    let mut data = vec![0u32; n * m];
    for (j, &x) in v.iter().enumerate() {
        for (i, c) in ext.coeffs(x).into_iter().enumerate() {
            data[i * m + j] = c;
        }
    }
    Matrix::from_vec(&ext.base_field(), n, m, data).expect("n x m")
}

/// Matrix whose column `i` holds the polynomial-basis coordinates of `basis[i]`.
fn basis_change(ext: &Field, basis: &[u32]) -> Result<Matrix> {
    let n = ext.degree() as usize;
    if basis.len() != n {
        return Err(Error::Argument(format!("basis needs {n} elements, got {}", basis.len())));
    }
    let b = expansion(ext, basis);
    if !b.is_invertible() {
        return Err(Error::Argument("basis elements are dependent".into()));
    }
    Ok(b)
}

/// The `n x m` matrix `A_{v,B}` over GF(q) with column `j` the coordinates of
/// `v_j` in `basis`.
pub fn vector_to_matrix(ext: &Field, v: &[u32], basis: &[u32]) -> Result<Matrix> {
    let b = basis_change(ext, basis)?;
    b.inverse()?.mul(&expansion(ext, v))
}

/// Inverse of [`vector_to_matrix`].
pub fn matrix_to_vector(ext: &Field, a: &Matrix, basis: &[u32]) -> Result<Vec<u32>> {
    let n = ext.degree() as usize;
    if a.rows() != n || a.field() != &ext.base_field() {
        return Err(Error::Structural(format!(
            "expected an {n}-row matrix over the base field"
        )));
    }
    let b = basis_change(ext, basis)?;
    let c = b.mul(a)?;
    Ok((0..a.cols()).map(|j| ext.from_coeffs(&c.column(j))).collect())
}

/// Moore matrix: row `i` is `(v_1^(σ^i), ..., v_m^(σ^i))`, `i = 0..n`.
pub fn moore_matrix(ext: &Field, s: u32, v: &[u32]) -> Matrix {
    moore_rows(ext, s, v, ext.degree() as usize)
}

fn moore_rows(ext: &Field, s: u32, v: &[u32], rows: usize) -> Matrix {
    let m = v.len();
    let mut data = Vec::with_capacity(rows * m);
    for i in 0..rows {
        data.extend(v.iter().map(|&x| sigma(ext, s, x, i)));
    }
    Matrix::from_vec(ext, rows, m, data).expect("rows x m")
}

/// `X_{f,B}` with `f(e_j) = Σ_i X_ij e_i`.
pub fn linpoly_to_matrix(f: &SigmaPolynomial, basis: &[u32]) -> Result<Matrix> {
    let images: Vec<u32> = basis.iter().map(|&b| f.evaluate(b)).collect();
    vector_to_matrix(f.field(), &images, basis)
}

/// The unique σ-linearized polynomial with matrix `X` in `basis`.
pub fn matrix_to_linpoly(ext: &Field, s: u32, x: &Matrix, basis: &[u32]) -> Result<SigmaPolynomial> {
    if !x.is_square() {
        return Err(Error::Argument("linearized polynomials need a square matrix".into()));
    }
    let images = matrix_to_vector(ext, x, basis)?;
    linpoly_interpolate(ext, s, &images, basis)
}

/// The unique `f` of σ-degree `< m` with `f(alphas_i) = v_i`, via the Moore system.
pub fn linpoly_interpolate(ext: &Field, s: u32, v: &[u32], alphas: &[u32]) -> Result<SigmaPolynomial> {
    let m = alphas.len();
    if v.len() != m {
        return Err(Error::Structural("values and points differ in length".into()));
    }
    if m > ext.degree() as usize {
        return Err(Error::Argument("more points than the extension degree".into()));
    }
    if vector_rank(ext, alphas) < m {
        return Err(Error::Argument("interpolation points are dependent over the base field".into()));
    }
    let moore = moore_rows(ext, s, alphas, m);
    let sol = moore
        .transpose()
        .solve(v)?
        .ok_or_else(|| Error::Argument("interpolation system is singular".into()))?;
    SigmaPolynomial::new(ext, s, &sol)
}

/// Dickson matrix: entry `(i, j)` is `f_{(j-i) mod n}^(σ^i)`.
pub fn dickson_matrix(f: &SigmaPolynomial) -> Matrix {
    let n = f.n();
    let ext = f.field();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(f.sigma_pow(f.coeffs()[(j + n - i) % n], i));
        }
    }
    Matrix::from_vec(ext, n, n, data).expect("n x n")
}

/// Read a polynomial back from a Dickson matrix, checking the autocirculant pattern.
pub fn dickson_to_linpoly(ext: &Field, s: u32, d: &Matrix) -> Result<SigmaPolynomial> {
    let n = ext.degree() as usize;
    if d.rows() != n || d.cols() != n || d.field() != ext {
        return Err(Error::Structural(format!("expected an {n}x{n} matrix over the extension")));
    }
    let f = SigmaPolynomial::new(ext, s, d.row(0))?;
    if dickson_matrix(&f) != *d {
        return Err(Error::domain("matrix is not autocirculant"));
    }
    Ok(f)
}

/// `Σ a_k tr(b_k x)` with `tr` written through σ-powers.
pub fn tensor_to_linpoly(ext: &Field, s: u32, pairs: &[(u32, u32)]) -> Result<SigmaPolynomial> {
    let n = ext.degree() as usize;
    let mut c = vec![0u32; n];
    for &(a, b) in pairs {
        for (i, slot) in c.iter_mut().enumerate() {
            *slot = ext.add(*slot, ext.mul(a, sigma(ext, s, b, i)));
        }
    }
    SigmaPolynomial::new(ext, s, &c)
}

/// Trace-dual basis: `tr(basis_i · dual_j) = δ_ij`.
pub fn dual_basis(ext: &Field, basis: &[u32]) -> Result<Vec<u32>> {
    basis_change(ext, basis)?;
    let n = basis.len();
    let k = ext.base_field();
    let mut gram = Matrix::zero(&k, n, n);
    for i in 0..n {
        for j in 0..n {
            gram.set(i, j, ext.trace(ext.mul(basis[i], basis[j])));
        }
    }
    let c = gram.inverse()?;
    Ok((0..n)
        .map(|j| {
            (0..n).fold(0, |acc, i| ext.add(acc, ext.mul(c.get(i, j), basis[i])))
        })
        .collect())
}

/// Rank-one decomposition `f(x) = Σ_j f(e_j) tr(e_j^* x)` over the polynomial basis.
pub fn linpoly_to_tensor(f: &SigmaPolynomial) -> Result<Vec<(u32, u32)>> {
    let ext = f.field();
    let basis = ext.polynomial_basis();
    let dual = dual_basis(ext, &basis)?;
    Ok(basis
        .iter()
        .zip(dual)
        .map(|(&e, d)| (f.evaluate(e), d))
        .filter(|&(a, _)| a != 0)
        .collect())
}

/// One of the interchangeable representations handled by [`convert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representation {
    Vector(Vec<u32>),
    Matrix(Matrix),
    Linpoly(SigmaPolynomial),
    Dickson(Matrix),
    Moore(Matrix),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    Vector,
    Matrix,
    Linpoly,
    Dickson,
    Moore,
}

impl std::str::FromStr for RepKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "vector" => RepKind::Vector,
            "matrix" => RepKind::Matrix,
            "linpoly" => RepKind::Linpoly,
            "dickson" => RepKind::Dickson,
            "moore" => RepKind::Moore,
            _ => return Err(Error::Argument(format!("unknown representation '{s}'"))),
        })
    }
}

impl Representation {
    /// Rank of the underlying vector or map.
    pub fn rank(&self, ext: &Field) -> usize {
        match self {
            Representation::Vector(v) => vector_rank(ext, v),
            Representation::Matrix(m) | Representation::Dickson(m) | Representation::Moore(m) => m.rank(),
            Representation::Linpoly(f) => f.rank(),
        }
    }
}

/// Convert through the vector form, using the polynomial basis throughout.
/// Vector and map forms are identified via `v_j = f(w^j)`, which requires `m = n`
/// whenever a linearized polynomial or Dickson matrix is involved.
pub fn convert(ext: &Field, s: u32, from: &Representation, to: RepKind) -> Result<Representation> {
    let basis = ext.polynomial_basis();
    let v: Vec<u32> = match from {
        Representation::Vector(v) => v.clone(),
        Representation::Matrix(a) => matrix_to_vector(ext, a, &basis)?,
        Representation::Linpoly(f) => basis.iter().map(|&b| f.evaluate(b)).collect(),
        Representation::Dickson(d) => {
            let f = dickson_to_linpoly(ext, s, d)?;
            basis.iter().map(|&b| f.evaluate(b)).collect()
        }
        Representation::Moore(m) => {
            if m.rows() != ext.degree() as usize || m.field() != ext {
                return Err(Error::Structural("Moore matrix has the wrong shape or field".into()));
            }
            let v = m.row(0).to_vec();
            if moore_matrix(ext, s, &v) != *m {
                return Err(Error::domain("rows are not successive σ-powers"));
            }
            v
        }
    };
    let as_map = |v: &[u32]| -> Result<SigmaPolynomial> {
        if v.len() != ext.degree() as usize {
            return Err(Error::Argument(format!(
                "a vector of length {} does not define a map on GF(q^{})",
                v.len(),
                ext.degree()
            )));
        }
        linpoly_interpolate(ext, s, v, &basis)
    };
    Ok(match to {
        RepKind::Vector => Representation::Vector(v),
        RepKind::Matrix => Representation::Matrix(vector_to_matrix(ext, &v, &basis)?),
        RepKind::Moore => Representation::Moore(moore_matrix(ext, s, &v)),
        RepKind::Linpoly => Representation::Linpoly(as_map(&v)?),
        RepKind::Dickson => Representation::Dickson(dickson_matrix(&as_map(&v)?)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::prime(2).unwrap().extension(2, None).unwrap()
    }

    #[test]
    fn vector_rank_examples() {
        let f = gf4();
        assert_eq!(vector_rank(&f, &[1, 2]), 2);
        assert_eq!(vector_rank(&f, &[1, 1, 1]), 1);
        assert_eq!(vector_rank(&f, &[0, 0]), 0);
    }

    #[test]
    fn expansion_example() {
        let f = gf4();
        let a = vector_to_matrix(&f, &[1, 2], &f.polynomial_basis()).unwrap();
        assert_eq!(a.to_text(), "1,0;0,1");
        assert!(vector_to_matrix(&f, &[1], &[1, 1]).is_err());
    }

    #[test]
    fn moore_example() {
        let f = gf4();
        let m = moore_matrix(&f, 1, &[1, 2]);
        assert_eq!(m.to_text(), "1,2;1,3");
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn dickson_of_frobenius_over_gf4() {
        let f = gf4();
        let g = SigmaPolynomial::monomial(&f, 1, 1, 1).unwrap();
        assert_eq!(dickson_matrix(&g).to_text(), "0,1;1,0");
    }

    #[test]
    fn identity_interpolation() {
        let f = Field::prime(3).unwrap().extension(3, None).unwrap();
        let alphas = [1, 3];
        let g = linpoly_interpolate(&f, 1, &alphas, &alphas).unwrap();
        assert_eq!(g, SigmaPolynomial::identity(&f, 1).unwrap());
        assert!(linpoly_interpolate(&f, 1, &[1, 2], &[1, 2]).is_err());
    }

    #[test]
    fn rank_one_tensor() {
        let f = Field::prime(2).unwrap().extension(3, None).unwrap();
        let g = tensor_to_linpoly(&f, 1, &[(1, 1)]).unwrap();
        assert_eq!(g.rank(), 1);
    }

    #[test]
    fn tensor_round_trip() {
        let f = Field::prime(3).unwrap().extension(3, None).unwrap();
        let g = SigmaPolynomial::new(&f, 1, &[5, 0, 22]).unwrap();
        let pairs = linpoly_to_tensor(&g).unwrap();
        assert_eq!(tensor_to_linpoly(&f, 1, &pairs).unwrap(), g);
    }

    #[test]
    fn convert_round_trips() {
        let f = gf4();
        let v = Representation::Vector(vec![2, 3]);
        for kind in [RepKind::Matrix, RepKind::Linpoly, RepKind::Dickson, RepKind::Moore] {
            let r = convert(&f, 1, &v, kind).unwrap();
            assert_eq!(convert(&f, 1, &r, RepKind::Vector).unwrap(), v);
        }
    }
}
