//! Bilinear products on GF(q)^n given by structure constants, their spread
//! sets, presemifield checks and isotopy search.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::code::{Linearity, RankMetricCode};
use crate::error::{check_cap, exhaustive_cap, Error, Result};
use crate::field::Field;
use crate::matrix::{general_linear_group, Matrix};

/// `x∘y = Σ x_i y_j T[i][j][k] e_k` with constants stored at `(i*n + j)*n + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemifieldMultiplication {
    field: Field,
    n: usize,
    consts: Vec<u32>,
}

/// Outcome of checking a product for the presemifield axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresemifieldCheck {
    Presemifield,
    /// Right multiplications are bijective and only `(x+x')∘y = x∘y + x'∘y` holds.
    LeftQuasifieldOnly,
    Fails { x: Vec<u32>, y: Vec<u32>, reason: String },
}

fn vector_of(index: u64, q: u64, n: usize) -> Vec<u32> {
    let mut x = index;
    (0..n)
        .map(|_| {
            let d = (x % q) as u32;
            x /= q;
            d
        })
        .collect()
}

fn index_of(v: &[u32], q: u64) -> u64 {
    v.iter().rev().fold(0u64, |acc, &d| acc * q + d as u64)
}

impl SemifieldMultiplication {
    pub fn new(field: &Field, n: usize, consts: Vec<u32>) -> Result<Self> {
        if consts.len() != n * n * n {
            return Err(Error::Structural(format!(
                "expected {} structure constants, got {}",
                n * n * n,
                consts.len()
            )));
        }
        if let Some(&c) = consts.iter().find(|&&c| !field.contains(c)) {
            return Err(Error::Argument(format!("structure constant {c} outside the field")));
        }
        Ok(SemifieldMultiplication {
            field: field.clone(),
            n,
            consts,
        })
    }

    /// Constants read off a product given on basis vectors.
    pub fn from_basis_products(field: &Field, n: usize, prod: impl Fn(usize, usize) -> Vec<u32>) -> Result<Self> {
        let mut consts = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let v = prod(i, j);
                if v.len() != n {
                    return Err(Error::Structural("product has the wrong length".into()));
                }
                consts.extend(v);
            }
        }
        Self::new(field, n, consts)
    }

    /// Multiplication of GF(q^n) in polynomial-basis coordinates over GF(q).
    pub fn field_multiplication(ext: &Field) -> Self {
        let n = ext.degree() as usize;
        let pb = ext.polynomial_basis();
        Self::from_basis_products(&ext.base_field(), n, |i, j| ext.coeffs(ext.mul(pb[i], pb[j])))
            .expect("consistent shape")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constants(&self) -> &[u32] {
        &self.consts
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.consts[(i * self.n + j) * self.n + k]
    }

    pub fn multiply(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let n = self.n;
        let mut out = vec![0u32; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, o) in out.iter_mut().enumerate() {
                    let t = self.constant(i, j, k);
                    if t != 0 {
                        *o = f.add(*o, f.mul(c, t));
                    }
                }
            }
        }
        out
    }

    /// `R_y`: column `i` holds `e_i ∘ y`.
    pub fn right_matrix(&self, y: &[u32]) -> Matrix {
        let n = self.n;
        let mut m = Matrix::zero(&self.field, n, n);
        for i in 0..n {
            let mut e = vec![0u32; n];
            e[i] = 1;
            for (k, v) in self.multiply(&e, y).into_iter().enumerate() {
                m.set(k, i, v);
            }
        }
        m
    }

    /// `L_x`: column `j` holds `x ∘ e_j`.
    pub fn left_matrix(&self, x: &[u32]) -> Matrix {
        let n = self.n;
        let mut m = Matrix::zero(&self.field, n, n);
        for j in 0..n {
            let mut e = vec![0u32; n];
            e[j] = 1;
            for (k, v) in self.multiply(x, &e).into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.constant(i, j, k) == self.constant(j, i, k))))
    }

    /// The same product over GF(p), on the flattened prime coordinates.
    pub fn to_prime(&self) -> SemifieldMultiplication {
        let f = &self.field;
        let e = f.prime_degree() as usize;
        if e == 1 {
            return self.clone();
        }
        let n = self.n;
        let pb = f.prime_basis();
        let unit = |idx: usize| -> Vec<u32> {
            let mut v = vec![0u32; n];
            v[idx / e] = pb[idx % e];
            v
        };
        let flat = |v: Vec<u32>| -> Vec<u32> { v.into_iter().flat_map(|x| f.prime_digits(x)).collect() };
        Self::from_basis_products(&f.prime_field(), n * e, |a, b| flat(self.multiply(&unit(a), &unit(b))))
            .expect("consistent shape")
    }

    /// Structure constants as text, row-major.
    pub fn to_text(&self) -> String {
        self.consts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse(field: &Field, n: usize, text: &str) -> Result<Self> {
        let consts = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad structure constant '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, n, consts)
    }

    fn space_size(&self) -> Result<u64> {
        let total = (self.field.size() as u128).pow(self.n as u32);
        check_cap("semifield elements", total, exhaustive_cap())?;
        Ok(total as u64)
    }
}

/// Structure constants are bilinear, so only zero divisors can fail.
pub fn verify_presemifield(mult: &SemifieldMultiplication) -> Result<PresemifieldCheck> {
    let total = mult.space_size()?;
    let q = mult.field.size();
    for yi in 1..total {
        let y = vector_of(yi, q, mult.n);
        let r = mult.right_matrix(&y);
        if !r.is_invertible() {
            let x = r.right_kernel().rows()[0].clone();
            return Ok(PresemifieldCheck::Fails {
                x,
                y,
                reason: "zero divisor".into(),
            });
        }
    }
    Ok(PresemifieldCheck::Presemifield)
}

/// Check an arbitrary product on GF(q)^n (vectors indexed base-q, first coordinate least significant).
pub fn verify_product_table(
    field: &Field,
    n: usize,
    product: impl Fn(&[u32], &[u32]) -> Vec<u32>,
) -> Result<PresemifieldCheck> {
    let total = (field.size() as u128).pow(n as u32);
    check_cap("product table (cubic check)", total.pow(3), exhaustive_cap().saturating_mul(64))?;
    let total = total as u64;
    let q = field.size();
    let vadd = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect() };
    let table: Vec<Vec<u32>> = (0..total * total)
        .map(|t| product(&vector_of(t / total, q, n), &vector_of(t % total, q, n)))
        .collect();
    let get = |x: u64, y: u64| -> &Vec<u32> { &table[(x * total + y) as usize] };
    let mut left_dist = None;
    let mut right_dist = None;
    'outer: for a in 0..total {
        for b in 0..total {
            let s = index_of(&vadd(&vector_of(a, q, n), &vector_of(b, q, n)), q);
            for c in 0..total {
                if left_dist.is_none() && *get(s, c) != vadd(get(a, c), get(b, c)) {
                    left_dist = Some((s, c));
                }
                if right_dist.is_none() && *get(c, s) != vadd(get(c, a), get(c, b)) {
                    right_dist = Some((c, s));
                }
                if left_dist.is_some() && right_dist.is_some() {
                    break 'outer;
                }
            }
        }
    }
    for y in 1..total {
        let mut seen = vec![false; total as usize];
        for x in 0..total {
            let idx = index_of(get(x, y), q) as usize;
            if seen[idx] {
                return Ok(PresemifieldCheck::Fails {
                    x: vector_of(x, q, n),
                    y: vector_of(y, q, n),
                    reason: "right multiplication is not injective".into(),
                });
            }
            seen[idx] = true;
        }
    }
    match (left_dist, right_dist) {
        (None, None) => Ok(PresemifieldCheck::Presemifield),
        (None, Some(_)) => Ok(PresemifieldCheck::LeftQuasifieldOnly),
        (Some((x, y)), _) => Ok(PresemifieldCheck::Fails {
            x: vector_of(x, q, n),
            y: vector_of(y, q, n),
            reason: "left distributivity fails".into(),
        }),
    }
}

/// The product whose right multiplications are spanned by the given spread set:
/// `T[i][j][k] = (B_j)[k][i]` for a GF(q)-basis `B_j` of the code. Codes that are
/// only additive are read over the prime field.
pub fn mult_from_spread(code: &RankMetricCode) -> Result<SemifieldMultiplication> {
    if code.n() != code.m() {
        return Err(Error::domain("a spread set must consist of square matrices"));
    }
    let q = code.q();
    let n = code.n();
    if code.size() != num_bigint::BigUint::from(q).pow(n as u32) {
        return Err(Error::domain(format!("a spread set needs exactly q^n = {q}^{n} elements")));
    }
    let (field, basis) = match code.fq_basis() {
        Some(b) => (code.field().clone(), b),
        None => {
            let p = code.over_prime_field()?;
            (p.field().clone(), p.basis().to_vec())
        }
    };
    let n = basis.len();
    SemifieldMultiplication::from_basis_products(&field, n, |i, j| basis[j].column(i))
}

/// Isotopy verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotopyResult {
    /// `X(x∘y) = Y(x)∘'Z(y)` over the prime field.
    Isotopic { x: Matrix, y: Matrix, z: Matrix },
    NotIsotopic { reason: String },
    Indeterminate { reason: String },
}

impl IsotopyResult {
    pub fn is_isotopic(&self) -> Option<bool> {
        match self {
            IsotopyResult::Isotopic { .. } => Some(true),
            IsotopyResult::NotIsotopic { .. } => Some(false),
            IsotopyResult::Indeterminate { .. } => None,
        }
    }
}

pub(crate) fn spread_code(mult: &SemifieldMultiplication) -> Result<RankMetricCode> {
    let n = mult.n;
    let basis = (0..n)
        .map(|j| {
            let mut e = vec![0u32; n];
            e[j] = 1;
            mult.right_matrix(&e)
        })
        .collect();
    RankMetricCode::from_matrices(&mult.field, basis, Linearity::Fq)
}

/// Search for an isotopism between two presemifields, working over the prime field.
pub fn isotopic(m1: &SemifieldMultiplication, m2: &SemifieldMultiplication) -> Result<IsotopyResult> {
    isotopic_with_cap(m1, m2, exhaustive_cap())
}

pub fn isotopic_with_cap(
    m1: &SemifieldMultiplication,
    m2: &SemifieldMultiplication,
    cap: u64,
) -> Result<IsotopyResult> {
    let a = m1.to_prime();
    let b = m2.to_prime();
    if a.field != b.field || a.n != b.n {
        return Err(Error::Structural("products over different prime fields or dimensions".into()));
    }
    for (name, m) in [("first", &a), ("second", &b)] {
        if let PresemifieldCheck::Fails { .. } = verify_presemifield(m)? {
            return Err(Error::domain(format!("{name} product has zero divisors")));
        }
    }
    let c1 = spread_code(&a)?;
    let c2 = spread_code(&b)?;
    let i1 = crate::transforms::idealisers(&c1)?;
    let i2 = crate::transforms::idealisers(&c2)?;
    if (&i1.left_order, &i1.right_order) != (&i2.left_order, &i2.right_order) {
        return Ok(IsotopyResult::NotIsotopic {
            reason: format!(
                "idealiser orders differ: ({}, {}) vs ({}, {})",
                i1.left_order, i1.right_order, i2.left_order, i2.right_order
            ),
        });
    }
    let n = a.n;
    let f = a.field.clone();
    let p = f.size();
    let all = (p as u128).pow((n * n) as u32);
    let work = all * (p as u128).pow(n as u32);
    if work > cap as u128 {
        return Ok(IsotopyResult::Indeterminate {
            reason: format!(
                "search space {work} exceeds cap {cap}; idealiser orders agree ({}, {})",
                i1.left_order, i1.right_order
            ),
        });
    }
    let unit = |j: usize| -> Vec<u32> {
        let mut e = vec![0u32; n];
        e[j] = 1;
        e
    };
    let r1: Vec<Matrix> = (0..n).map(|j| a.right_matrix(&unit(j))).collect();
    let total = p.pow(n as u32);
    let mut lookup: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    let mut members = Vec::new();
    for yi in 1..total {
        let y = vector_of(yi, p, n);
        let r = b.right_matrix(&y);
        lookup.insert(r.data().to_vec(), y);
        members.push(r);
    }
    let r0inv = r1[0].inverse()?;
    let gl = general_linear_group(&f, n, cap)?;
    let found = gl.par_iter().find_map_first(|ym| {
        let yinv = ym.inverse().ok()?;
        let base = ym.mul(&r0inv).ok()?;
        for s in &members {
            let x = s.mul(&base).ok()?;
            let mut zcols = vec![lookup.get(s.data())?.clone()];
            let mut ok = true;
            for rj in &r1[1..] {
                let mj = x.mul(rj).ok()?.mul(&yinv).ok()?;
                match lookup.get(mj.data()) {
                    Some(z) => zcols.push(z.clone()),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let mut z = Matrix::zero(&f, n, n);
                for (j, col) in zcols.iter().enumerate() {
                    for (i, &v) in col.iter().enumerate() {
                        z.set(i, j, v);
                    }
                }
                return Some((x, ym.clone(), z));
            }
        }
        None
    });
    Ok(match found {
        Some((x, y, z)) => IsotopyResult::Isotopic { x, y, z },
        None => IsotopyResult::NotIsotopic {
            reason: "exhaustive search over GL(n, p) found no isotopism".into(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, n: u32) -> Field {
        Field::prime(p).unwrap().extension(n, None).unwrap()
    }

    #[test]
    fn field_product_is_presemifield() {
        let m = SemifieldMultiplication::field_multiplication(&gf(2, 3));
        assert_eq!(verify_presemifield(&m).unwrap(), PresemifieldCheck::Presemifield);
        assert!(m.is_commutative());
    }

    #[test]
    fn zero_divisor_is_reported() {
        let k = Field::prime(2).unwrap();
        // componentwise product on GF(2)^2
        let m = SemifieldMultiplication::from_basis_products(&k, 2, |i, j| {
            let mut v = vec![0, 0];
            if i == j {
                v[i] = 1;
            }
            v
        })
        .unwrap();
        match verify_presemifield(&m).unwrap() {
            PresemifieldCheck::Fails { x, y, .. } => assert_eq!(m.multiply(&x, &y), vec![0, 0]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn spread_round_trip() {
        let m = SemifieldMultiplication::field_multiplication(&gf(3, 2));
        let c = spread_code(&m).unwrap();
        assert_eq!(mult_from_spread(&c).unwrap(), m);
    }

    #[test]
    fn product_table_check_matches_constants() {
        let m = SemifieldMultiplication::field_multiplication(&gf(2, 2));
        let r = verify_product_table(m.field(), 2, |x, y| m.multiply(x, y)).unwrap();
        assert_eq!(r, PresemifieldCheck::Presemifield);
    }

    #[test]
    fn self_isotopy_verifies() {
        let m = SemifieldMultiplication::field_multiplication(&gf(2, 3));
        match isotopic(&m, &m).unwrap() {
            IsotopyResult::Isotopic { x, y, z } => {
                for a in 0..8u64 {
                    for b in 0..8u64 {
                        let (va, vb) = (vector_of(a, 2, 3), vector_of(b, 2, 3));
                        let lhs = x.mul_vec(&m.multiply(&va, &vb)).unwrap();
                        let rhs = m.multiply(&y.mul_vec(&va).unwrap(), &z.mul_vec(&vb).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn text_round_trip() {
        let m = SemifieldMultiplication::field_multiplication(&gf(2, 2));
        assert_eq!(SemifieldMultiplication::parse(m.field(), 2, &m.to_text()).unwrap(), m);
        assert!(SemifieldMultiplication::parse(m.field(), 2, "1,0").is_err());
    }
}
