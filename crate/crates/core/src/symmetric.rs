//! Symmetric rank-metric codes: plus/minus types (odd q), type distributions,
//! Schmidt's size bounds and the commutative-semifield bridge.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::code::{Linearity, RankMetricCode};
use crate::error::{check_cap, exhaustive_cap, Error, Result};
use crate::field::Field;
use crate::matrix::{general_linear_generators, Matrix, SubspaceBasis, SubspaceEnumerator};
use crate::semifield::SemifieldMultiplication;

/// Sign of a symmetric matrix class: `+1` plus, `-1` minus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SymmetricType {
    pub rank: usize,
    pub sign: i8,
}

impl fmt::Display for SymmetricType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.rank, if self.sign > 0 { '+' } else { '-' })
    }
}

fn require_odd(field: &Field) -> Result<()> {
    if field.characteristic() == 2 {
        return Err(Error::Unsupported(
            "plus/minus types are only implemented for odd q".into(),
        ));
    }
    Ok(())
}

/// Rank and `χ((-1)^⌊r/2⌋ · disc)` of the nondegenerate part; even-rank plus is hyperbolic.
pub fn symmetric_type(a: &Matrix) -> Result<SymmetricType> {
    let f = a.field();
    require_odd(f)?;
    if !a.is_square() || !a.is_symmetric() {
        return Err(Error::domain("matrix is not symmetric"));
    }
    let n = a.rows();
    let radical = a.right_kernel();
    let r = n - radical.dim();
    if r == 0 {
        return Ok(SymmetricType { rank: 0, sign: 1 });
    }
    let pivots = radical.pivots();
    let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let gram = Matrix::from_vec(
        f,
        r,
        r,
        free.iter()
            .flat_map(|&i| free.iter().map(move |&j| a.get(i, j)))
            .collect(),
    )?;
    let mut disc = gram.determinant()?;
    if (r / 2) % 2 == 1 {
        disc = f.neg(disc);
    }
    Ok(SymmetricType {
        rank: r,
        sign: f.quadratic_character(disc) as i8,
    })
}

/// Size bound for a code in `S_n(GF(q))` with minimum distance `d`. Non-additive
/// bounds for even `d` read `m` as `n` and are rounded down.
pub fn schmidt_bound(q: u64, n: u32, d: u32, additive: bool) -> Result<BigUint> {
    if d == 0 || d > n {
        return Err(Error::Argument(format!("need 1 <= d <= n (d={d}, n={n})")));
    }
    let qb = BigUint::from(q);
    let odd_branch = |cond: bool| -> BigUint {
        if cond {
            qb.pow(n * (n - d + 2) / 2)
        } else {
            qb.pow((n + 1) * (n - d + 1) / 2)
        }
    };
    if additive {
        return Ok(odd_branch((n - d) % 2 == 0));
    }
    if d % 2 == 1 {
        return Ok(odd_branch(n % 2 == 1));
    }
    // q^E (1 + q^(c)) / (q + 1) with c = -n+1 or -n+d-1, i.e. (q^E + q^(E+c)) / (q + 1).
    let (e, c) = if n % 2 == 1 {
        (n * (n - d + 3) / 2, 1i64 - n as i64)
    } else {
        ((n + 1) * (n - d + 2) / 2, d as i64 - 1 - n as i64)
    };
    let shifted = e as i64 + c;
    let (num, den) = if shifted >= 0 {
        (qb.pow(e) + qb.pow(shifted as u32), BigUint::from(q + 1))
    } else {
        let scale = qb.pow((-shifted) as u32);
        (qb.pow(e) * &scale + BigUint::one(), BigUint::from(q + 1) * scale)
    };
    Ok(num.div_floor(&den))
}

/// Tallies `a_{i,+}`, `a_{i,-}`; the zero matrix is counted in `plus[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeDistribution {
    pub plus: Vec<u128>,
    pub minus: Vec<u128>,
}

impl TypeDistribution {
    pub fn total(&self) -> u128 {
        self.plus.iter().sum::<u128>() + self.minus.iter().sum::<u128>()
    }

    pub fn rank_distribution(&self) -> Vec<u128> {
        self.plus.iter().zip(&self.minus).map(|(a, b)| a + b).collect()
    }
}

impl fmt::Display for TypeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a0={}", self.plus[0])?;
        for i in 1..self.plus.len() {
            write!(f, " a{i}+={} a{i}-={}", self.plus[i], self.minus[i])?;
        }
        Ok(())
    }
}

pub fn type_distribution(code: &RankMetricCode) -> Result<TypeDistribution> {
    require_odd(code.field())?;
    if code.n() != code.m() {
        return Err(Error::domain("symmetric codes consist of square matrices"));
    }
    let n = code.n();
    let mut out = TypeDistribution {
        plus: vec![0; n + 1],
        minus: vec![0; n + 1],
    };
    for a in code.codewords()? {
        if !a.is_symmetric() {
            return Err(Error::rejected("codeword is not symmetric", a.to_text()));
        }
        let t = symmetric_type(&a)?;
        if t.sign > 0 {
            out.plus[t.rank] += 1;
        } else {
            out.minus[t.rank] += 1;
        }
    }
    Ok(out)
}

/// Basis of `S_n(GF(q))` over GF(p): `β(E_ij + E_ji)` for `i <= j` (`β E_ii` on the diagonal).
fn symmetric_space_basis(field: &Field, n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for beta in field.prime_basis() {
                let mut m = Matrix::zero(field, n, n);
                m.set(i, j, beta);
                m.set(j, i, beta);
                out.push(m);
            }
        }
    }
    out
}

/// `{B ∈ S_n : tr_{GF(q)/GF(p)}(Tr(AB)) = 0 ∀A ∈ C}`.
pub fn symmetric_dual(code: &RankMetricCode) -> Result<RankMetricCode> {
    let f = code.field();
    let n = code.n();
    if n != code.m() {
        return Err(Error::domain("symmetric codes consist of square matrices"));
    }
    let words = code.prime_basis_matrices();
    if let Some(a) = words.iter().find(|a| !a.is_symmetric()) {
        return Err(Error::rejected("codeword is not symmetric", a.to_text()));
    }
    let space = symmetric_space_basis(f, n);
    let pf = f.prime_field();
    let sol = if words.is_empty() {
        SubspaceBasis::full(&pf, space.len())
    } else {
        let rows: Vec<Vec<u32>> = words
            .iter()
            .map(|a| {
                space
                    .iter()
                    .map(|b| Ok(f.prime_trace(a.mul(b)?.trace()?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Matrix::from_rows(&pf, &rows)?.right_kernel()
    };
    let dual: Vec<Matrix> = sol
        .rows()
        .iter()
        .map(|c| {
            let mut acc = Matrix::zero(f, n, n);
            for (&k, b) in c.iter().zip(&space) {
                if k != 0 {
                    acc = acc.add(&b.map(|x| f.scale_prime(k, x))).expect("same shape");
                }
            }
            acc
        })
        .collect();
    let out = RankMetricCode::from_spanning_set(f, (n, n), &dual)?;
    Ok(if code.linearity() != Linearity::Fp { out.upgrade_linearity() } else { out })
}

/// Span of the slices `S_k[i][j] = T_ijk` of a commutative product.
pub fn commutative_to_symmetric(mult: &SemifieldMultiplication) -> Result<RankMetricCode> {
    if let Some((i, j)) = first_noncommuting(mult) {
        return Err(Error::rejected(
            "multiplication is not commutative",
            format!("e{i}∘e{j} != e{j}∘e{i}"),
        ));
    }
    let n = mult.n();
    let f = mult.field();
    let slices = (0..n)
        .map(|k| {
            Matrix::from_vec(
                f,
                n,
                n,
                (0..n).flat_map(|i| (0..n).map(move |j| mult.constant(i, j, k))).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let code = RankMetricCode::from_spanning_set(f, (n, n), &slices)?.upgrade_linearity();
    Ok(code.with_provenance("family", "commutative-symmetric"))
}

fn first_noncommuting(mult: &SemifieldMultiplication) -> Option<(usize, usize)> {
    let n = mult.n();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| (0..n).any(|k| mult.constant(i, j, k) != mult.constant(j, i, k)))
}

/// One orbit of `A ↦ X^T A X` on `S_n(GF(q))`.
#[derive(Clone, Debug, Serialize)]
pub struct CongruenceOrbit {
    pub rank: usize,
    /// Type of the representative (odd q only).
    pub sign: Option<i8>,
    pub size: u64,
    pub representative: String,
    /// All orbit members share the representative's type.
    pub type_constant: bool,
}

fn sym_index(a: &Matrix, q: u64) -> u64 {
    let n = a.rows();
    let mut idx = 0u64;
    for i in 0..n {
        for j in i..n {
            idx = idx * q + a.get(i, j) as u64;
        }
    }
    idx
}

fn sym_from_index(field: &Field, n: usize, mut idx: u64) -> Matrix {
    let q = field.size();
    let mut m = Matrix::zero(field, n, n);
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    for &(i, j) in cells.iter().rev() {
        let v = (idx % q) as u32;
        idx /= q;
        m.set(i, j, v);
        m.set(j, i, v);
    }
    m
}

/// Orbits of the congruence action on all symmetric matrices, by breadth-first search.
pub fn congruence_orbits(field: &Field, n: usize) -> Result<Vec<CongruenceOrbit>> {
    let q = field.size();
    let total = (q as u128).pow((n * (n + 1) / 2) as u32);
    check_cap("symmetric matrices", total, exhaustive_cap())?;
    let total = total as u64;
    let gens = general_linear_generators(field, n);
    let gens_t: Vec<Matrix> = gens.iter().map(|g| g.transpose()).collect();
    let mut orbit_of: HashMap<u64, usize> = HashMap::new();
    let mut out = Vec::new();
    let typed = field.characteristic() != 2;
    for start in 0..total {
        if orbit_of.contains_key(&start) {
            continue;
        }
        let id = out.len();
        let rep = sym_from_index(field, n, start);
        let rep_type = if typed { Some(symmetric_type(&rep)?) } else { None };
        let mut queue = VecDeque::from([rep.clone()]);
        orbit_of.insert(start, id);
        let mut size = 0u64;
        let mut constant = true;
        while let Some(a) = queue.pop_front() {
            size += 1;
            if let Some(t) = rep_type {
                constant &= symmetric_type(&a)? == t;
            }
            for (g, gt) in gens.iter().zip(&gens_t) {
                let b = gt.mul(&a)?.mul(g)?;
                let key = sym_index(&b, q);
                if let std::collections::hash_map::Entry::Vacant(e) = orbit_of.entry(key) {
                    e.insert(id);
                    queue.push_back(b);
                }
            }
        }
        out.push(CongruenceOrbit {
            rank: rep.rank(),
            sign: rep_type.map(|t| t.sign),
            size,
            representative: rep.to_text(),
            type_constant: constant,
        });
    }
    Ok(out)
}

/// Largest additive code in `S_n(GF(q))` with minimum distance at least `d`, by
/// exhaustive search over GF(p)-subspaces; returns `(size, number of such codes)`.
pub fn max_additive_symmetric(field: &Field, n: usize, d: usize) -> Result<(BigUint, u64)> {
    let space = symmetric_space_basis(field, n);
    let pf = field.prime_field();
    let p = BigUint::from(field.characteristic());
    for k in (1..=space.len()).rev() {
        let mut hits = 0u64;
        for sub in SubspaceEnumerator::with_cap(&pf, space.len(), k, exhaustive_cap())?.iter() {
            let words: Vec<Matrix> = sub
                .rows()
                .iter()
                .map(|c| {
                    c.iter().zip(&space).fold(Matrix::zero(field, n, n), |acc, (&x, b)| {
                        if x == 0 {
                            acc
                        } else {
                            acc.add(&b.map(|v| field.scale_prime(x, v))).expect("same shape")
                        }
                    })
                })
                .collect();
            let code = RankMetricCode::from_spanning_set(field, (n, n), &words)?;
            if code.min_distance()? >= d {
                hits += 1;
            }
        }
        if hits > 0 {
            return Ok((p.pow(k as u32), hits));
        }
    }
    Ok((BigUint::one(), 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn types_over_gf3() {
        let f = gf3();
        assert_eq!(symmetric_type(&Matrix::zero(&f, 2, 2)).unwrap(), SymmetricType { rank: 0, sign: 1 });
        assert_eq!(symmetric_type(&Matrix::identity(&f, 2)).unwrap().sign, -1);
        assert_eq!(symmetric_type(&Matrix::parse(&f, "1,0;0,2").unwrap()).unwrap().sign, 1);
        assert!(symmetric_type(&Matrix::identity(&Field::prime(2).unwrap(), 2)).is_err());
    }

    #[test]
    fn bounds_by_hand() {
        assert_eq!(schmidt_bound(3, 3, 3, true).unwrap(), BigUint::from(27u32));
        assert_eq!(schmidt_bound(2, 3, 2, true).unwrap(), BigUint::from(16u32));
        assert_eq!(schmidt_bound(5, 4, 4, true).unwrap(), BigUint::from(625u32));
        // n=3 odd, d=2: 3^6 (1 + 3^-2)/4 = 729*10/9/4 = 202.5
        assert_eq!(schmidt_bound(3, 3, 2, false).unwrap(), BigUint::from(202u32));
    }

    #[test]
    fn gf9_bridge() {
        let ext = gf3().extension(2, None).unwrap();
        let code = commutative_to_symmetric(&SemifieldMultiplication::field_multiplication(&ext)).unwrap();
        assert_eq!(code.size(), BigUint::from(9u32));
        assert_eq!(code.min_distance().unwrap(), 2);
        let td = type_distribution(&code).unwrap();
        assert_eq!(td.total(), 9);
    }

    #[test]
    fn two_orbits_per_rank_s2() {
        let orbits = congruence_orbits(&gf3(), 2).unwrap();
        assert_eq!(orbits.len(), 5);
        assert!(orbits.iter().all(|o| o.type_constant));
    }

    #[test]
    fn dual_dimension() {
        let f = gf3();
        let c = RankMetricCode::from_matrices(&f, vec![Matrix::identity(&f, 2)], Linearity::Fp).unwrap();
        assert_eq!(symmetric_dual(&c).unwrap().prime_dim(), 2);
    }
}
