//! σ-linearized polynomials `f0 x + f1 x^σ + ... + f_{n-1} x^{σ^(n-1)}` over a
//! tower GF(q^n)/GF(q), with `σ: x ↦ x^(q^s)`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{check_cap, exhaustive_cap, Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::{rank_in_place, Matrix};

#[derive(Clone, PartialEq, Eq)]
pub struct SigmaPolynomial {
    field: Field,
    s: u32,
    coeffs: Vec<u32>,
}

impl fmt::Debug for SigmaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SigmaPolynomial({})", self.to_text())
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl SigmaPolynomial {
    /// Coefficients beyond index `n-1` are folded back using `x^(σ^n) = x`.
    pub fn new(field: &Field, s: u32, coeffs: &[u32]) -> Result<Self> {
        let n = field.degree() as usize;
        if n > 1 && s as usize >= n {
            return Err(Error::Argument(format!("twist exponent {s} out of range 0..{n}")));
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| !field.contains(c)) {
            return Err(Error::Argument(format!("coefficient {bad} outside the field")));
        }
        let mut c = vec![0u32; n];
        for (i, &x) in coeffs.iter().enumerate() {
            c[i % n] = field.add(c[i % n], x);
        }
        Ok(SigmaPolynomial {
            field: field.clone(),
            s,
            coeffs: c,
        })
    }

    pub fn zero(field: &Field, s: u32) -> Result<Self> {
        Self::new(field, s, &[])
    }

    /// The identity map `x`.
    pub fn identity(field: &Field, s: u32) -> Result<Self> {
        Self::new(field, s, &[1])
    }

    /// `c x^(σ^i)`.
    pub fn monomial(field: &Field, s: u32, i: usize, c: u32) -> Result<Self> {
        let mut v = vec![0u32; i + 1];
        v[i] = c;
        Self::new(field, s, &v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Whether `σ` generates the Galois group.
    pub fn twist_generates(&self) -> bool {
        gcd(self.s as u64, self.n() as u64) == 1
    }

    /// Largest index with a nonzero coefficient.
    pub fn sigma_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.sigma_degree().is_none()
    }

    /// `a^(σ^i)`.
    pub fn sigma_pow(&self, a: u32, i: usize) -> u32 {
        let n = self.n() as u64;
        let e = (self.s as u64 * i as u64) % n.max(1);
        self.field.frobenius(a, e as u32)
    }

    pub fn evaluate(&self, x: u32) -> u32 {
        let f = &self.field;
        let mut acc = 0;
        let mut xp = x;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xp = f.frobenius(xp, self.s);
            }
            if c != 0 {
                acc = f.add(acc, f.mul(c, xp));
            }
        }
        acc
    }

    pub fn evaluate_element(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.field() != &self.field {
            return Err(Error::Structural("argument outside the polynomial's field".into()));
        }
        FieldElement::new(&self.field, self.evaluate(x.code()))
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.s != other.s {
            return Err(Error::Structural("polynomials over different towers or twists".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let c: Vec<u32> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Self::new(&self.field, self.s, &c)
    }

    pub fn scale(&self, a: u32) -> Self {
        let c: Vec<u32> = self.coeffs.iter().map(|&x| self.field.mul(a, x)).collect();
        Self::new(&self.field, self.s, &c).expect("same shape")
    }

    /// `f ∘ g` reduced mod `x^(σ^n) - x`.
    pub fn compose_mod(&self, g: &Self) -> Result<Self> {
        self.compatible(g)?;
        let n = self.n();
        let f = &self.field;
        let mut out = vec![0u32; n];
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if fi == 0 {
                continue;
            }
            for (j, &gj) in g.coeffs.iter().enumerate() {
                if gj == 0 {
                    continue;
                }
                let k = (i + j) % n;
                out[k] = f.add(out[k], f.mul(fi, self.sigma_pow(gj, i)));
            }
        }
        Self::new(f, self.s, &out)
    }

    /// Adjoint with respect to the trace form `tr(x f(y)) = tr(f̂(x) y)`.
    pub fn adjoint(&self) -> Self {
        let n = self.n();
        let mut out = vec![0u32; n];
        for (i, &fi) in self.coeffs.iter().enumerate() {
            let k = (n - i) % n;
            out[k] = self.sigma_pow(fi, k);
        }
        Self::new(&self.field, self.s, &out).expect("same shape")
    }

    /// Matrix of the map over GF(q) in the polynomial basis: column `j` holds
    /// the coordinates of `f(w^j)`.
    pub(crate) fn base_matrix_data(&self) -> Vec<u32> {
        let n = self.n();
        let basis = self.field.polynomial_basis();
        let mut data = vec![0u32; n * n];
        for (j, &b) in basis.iter().enumerate() {
            for (i, c) in self.field.coeffs(self.evaluate(b)).into_iter().enumerate() {
                data[i * n + j] = c;
            }
        }
        data
    }

    /// `(rank, nullity)` of the GF(q)-linear map.
    pub fn rank_nullity(&self) -> (usize, usize) {
        let n = self.n();
        let mut data = self.base_matrix_data();
        let r = rank_in_place(&self.field.base_field(), &mut data, n, n);
        (r, n - r)
    }

    pub fn rank(&self) -> usize {
        self.rank_nullity().0
    }

    /// Two GF(q)-independent points `x, y` with `f(x)/x = f(y)/y`, if any.
    pub fn scattered_witness(&self) -> Result<Option<(u32, u32)>> {
        let f = &self.field;
        check_cap("scattered test (field elements)", f.size() as u128 - 1, exhaustive_cap())?;
        let q = f.base_size() as u32;
        let mut first: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        for x in 1..f.size() as u32 {
            let r = f.div(self.evaluate(x), x)?;
            match first.get(&r) {
                None => {
                    first.insert(r, x);
                }
                Some(&y) => {
                    if f.div(x, y)? >= q {
                        return Ok(Some((y, x)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Number of distinct values of `f(x)/x` over nonzero `x`.
    pub fn quotient_count(&self) -> Result<usize> {
        let f = &self.field;
        check_cap("scattered test (field elements)", f.size() as u128 - 1, exhaustive_cap())?;
        let mut seen = HashSet::new();
        for x in 1..f.size() as u32 {
            seen.insert(f.div(self.evaluate(x), x)?);
        }
        Ok(seen.len())
    }

    /// `#{f(x)/x : x ≠ 0} = (q^n - 1)/(q - 1)`.
    pub fn is_scattered(&self) -> Result<bool> {
        let f = &self.field;
        let target = (f.size() - 1) / (f.base_size() - 1);
        Ok(self.quotient_count()? as u64 == target)
    }

    /// Matrix of the map over GF(q) in the polynomial basis.
    pub fn to_base_matrix(&self) -> Matrix {
        let n = self.n();
        Matrix::from_vec(&self.field.base_field(), n, n, self.base_matrix_data()).expect("n x n")
    }

    /// `s=<int>; coeffs=[c0,...]`.
    pub fn to_text(&self) -> String {
        let c: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("s={}; coeffs=[{}]", self.s, c.join(","))
    }

    pub fn parse(field: &Field, text: &str) -> Result<Self> {
        let mut s = None;
        let mut coeffs = None;
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{part}'")))?;
            match k.trim() {
                "s" => {
                    s = Some(
                        v.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad twist '{v}'")))?,
                    )
                }
                "coeffs" => coeffs = Some(crate::field::parse_list(v.trim())?),
                other => return Err(Error::Parse(format!("unknown key '{other}'"))),
            }
        }
        let s = s.ok_or_else(|| Error::Parse("missing s=".into()))?;
        let coeffs = coeffs.ok_or_else(|| Error::Parse("missing coeffs=".into()))?;
        if coeffs.len() != field.degree() as usize {
            return Err(Error::Parse(format!(
                "expected {} coefficients, got {}",
                field.degree(),
                coeffs.len()
            )));
        }
        Self::new(field, s, &coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::prime(2).unwrap().extension(2, None).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let f = gf4();
        let x = SigmaPolynomial::identity(&f, 1).unwrap();
        assert_eq!(x.evaluate(2), 2);
        let xs = SigmaPolynomial::monomial(&f, 1, 1, 1).unwrap();
        assert_eq!(xs.evaluate(2), 3);
        assert_eq!(xs.evaluate(0), 0);
    }

    #[test]
    fn composition_of_frobenius_monomials() {
        let f = Field::prime(3).unwrap().extension(3, None).unwrap();
        let xs = SigmaPolynomial::monomial(&f, 1, 1, 1).unwrap();
        let x2 = SigmaPolynomial::monomial(&f, 1, 2, 1).unwrap();
        assert_eq!(xs.compose_mod(&xs).unwrap(), x2);
        let id = SigmaPolynomial::identity(&f, 1).unwrap();
        let g = SigmaPolynomial::new(&f, 1, &[5, 0, 7]).unwrap();
        assert_eq!(id.compose_mod(&g).unwrap(), g);
    }

    #[test]
    fn rank_examples() {
        let f = Field::prime(2).unwrap().extension(3, None).unwrap();
        assert_eq!(SigmaPolynomial::identity(&f, 1).unwrap().rank_nullity(), (3, 0));
        let tr = SigmaPolynomial::new(&f, 1, &[1, 1, 1]).unwrap();
        assert_eq!(tr.rank_nullity(), (1, 2));
    }

    #[test]
    fn adjoint_is_an_involution() {
        let f = Field::prime(3).unwrap().extension(3, None).unwrap();
        let g = SigmaPolynomial::new(&f, 2, &[4, 11, 19]).unwrap();
        assert_eq!(g.adjoint().adjoint(), g);
        let id = SigmaPolynomial::identity(&f, 1).unwrap();
        assert_eq!(id.adjoint(), id);
    }

    #[test]
    fn adjoint_satisfies_trace_identity() {
        let f = Field::prime(2).unwrap().extension(4, None).unwrap();
        let g = SigmaPolynomial::new(&f, 1, &[3, 9, 0, 14]).unwrap();
        let h = g.adjoint();
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!(
                    f.trace(f.mul(x, g.evaluate(y))),
                    f.trace(f.mul(h.evaluate(x), y))
                );
            }
        }
    }

    #[test]
    fn scattered_examples() {
        let f = Field::prime(3).unwrap().extension(4, None).unwrap();
        assert!(SigmaPolynomial::monomial(&f, 1, 1, 1).unwrap().is_scattered().unwrap());
        let id = SigmaPolynomial::identity(&f, 1).unwrap();
        assert!(!id.is_scattered().unwrap());
        assert_eq!(id.quotient_count().unwrap(), 1);
        let (x, y) = id.scattered_witness().unwrap().unwrap();
        assert!(f.div(x, y).unwrap() >= 3);
    }

    #[test]
    fn text_round_trip() {
        let f = gf4();
        let g = SigmaPolynomial::new(&f, 1, &[2, 3]).unwrap();
        assert_eq!(g.to_text(), "s=1; coeffs=[2,3]");
        assert_eq!(SigmaPolynomial::parse(&f, &g.to_text()).unwrap(), g);
        assert!(SigmaPolynomial::parse(&f, "s=1; coeffs=[1]").is_err());
        assert!(SigmaPolynomial::parse(&f, "coeffs=[1,0]").is_err());
    }
}
