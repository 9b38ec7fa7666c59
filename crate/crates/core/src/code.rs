//! Additive rank-metric codes in `M_{n×m}(GF(q))` and their rank statistics.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, exhaustive_cap, Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::{gaussian_binomial, rank_bits, rank_in_place, Matrix, SubspaceBasis};
use crate::representations::vector_to_matrix;

/// Scalar field over which the stored basis is independent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Linearity {
    Fp,
    Fq,
    Fqn,
}

impl fmt::Display for Linearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Linearity::Fp => "Fp",
            Linearity::Fq => "Fq",
            Linearity::Fqn => "Fqn",
        })
    }
}

impl std::str::FromStr for Linearity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Fp" | "fp" => Ok(Linearity::Fp),
            "Fq" | "fq" => Ok(Linearity::Fq),
            "Fqn" | "fqn" => Ok(Linearity::Fqn),
            _ => Err(Error::Argument(format!("unknown linearity '{s}'"))),
        }
    }
}

/// Flattened prime-field coordinates of a matrix: entry `(i, j)` contributes
/// its `e` prime digits at positions `(i*m + j)*e ..`.
pub fn prime_coordinates(a: &Matrix) -> Vec<u32> {
    let f = a.field();
    a.data().iter().flat_map(|&x| f.prime_digits(x)).collect()
}

pub fn from_prime_coordinates(field: &Field, rows: usize, cols: usize, v: &[u32]) -> Matrix {
    let e = field.prime_degree() as usize;
    let data = v.chunks(e).map(|c| field.from_prime_digits(c)).collect();
    Matrix::from_vec(field, rows, cols, data).expect("consistent shape")
}

#[derive(Clone)]
pub struct RankMetricCode {
    field: Field,
    n: usize,
    m: usize,
    transposed: bool,
    linearity: Linearity,
    basis: Vec<Matrix>,
    ext: Option<Field>,
    generator: Option<Matrix>,
    prime: SubspaceBasis,
    provenance: BTreeMap<String, serde_json::Value>,
}

impl PartialEq for RankMetricCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.m == other.m
            && self.transposed == other.transposed
            && self.linearity == other.linearity
            && self.basis == other.basis
            && self.ext == other.ext
            && self.generator == other.generator
            && self.provenance == other.provenance
    }
}

impl fmt::Debug for RankMetricCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RankMetricCode({} {}x{} {} dim_p={})",
            self.field.to_text(),
            self.n,
            self.m,
            self.linearity,
            self.prime_dim()
        )
    }
}

impl RankMetricCode {
    /// Code spanned by matrices over `field`, linear over GF(p) or GF(q).
    /// Inputs with more columns than rows are stored transposed.
    pub fn from_matrices(field: &Field, basis: Vec<Matrix>, linearity: Linearity) -> Result<Self> {
        Self::from_matrices_shaped(field, None, basis, linearity)
    }

    /// As [`from_matrices`](Self::from_matrices) with an explicit shape, needed for the zero code.
    pub fn from_matrices_shaped(
        field: &Field,
        shape: Option<(usize, usize)>,
        basis: Vec<Matrix>,
        linearity: Linearity,
    ) -> Result<Self> {
        if linearity == Linearity::Fqn {
            return Err(Error::Argument("GF(q^n)-linear codes are given by a generator matrix".into()));
        }
        let (r, c) = match (shape, basis.first()) {
            (Some(s), _) => s,
            (None, Some(b)) => (b.rows(), b.cols()),
            (None, None) => return Err(Error::Argument("empty basis needs an explicit shape".into())),
        };
        for b in &basis {
            if b.field() != field {
                return Err(Error::Structural("basis matrix over a different field".into()));
            }
            if (b.rows(), b.cols()) != (r, c) {
                return Err(Error::Structural(format!(
                    "basis matrix is {}x{}, expected {r}x{c}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        if r == 0 || c == 0 {
            return Err(Error::Argument("matrix dimensions must be positive".into()));
        }
        let transposed = c > r;
        let basis: Vec<Matrix> = if transposed {
            basis.iter().map(|b| b.transpose()).collect()
        } else {
            basis
        };
        let (n, m) = if transposed { (c, r) } else { (r, c) };
        let prime_gens = match linearity {
            Linearity::Fp => basis.iter().map(prime_coordinates).collect::<Vec<_>>(),
            _ => scalar_expand(field, &basis),
        };
        let expected = match linearity {
            Linearity::Fp => basis.len(),
            _ => basis.len() * field.prime_degree() as usize,
        };
        let prime = SubspaceBasis::from_vectors(&field.prime_field(), n * m * field.prime_degree() as usize, prime_gens);
        if prime.dim() != expected {
            return Err(Error::Argument(format!(
                "basis matrices are dependent over {}",
                if linearity == Linearity::Fp { "the prime field" } else { "GF(q)" }
            )));
        }
        Ok(RankMetricCode {
            field: field.clone(),
            n,
            m,
            transposed,
            linearity,
            basis,
            ext: None,
            generator: None,
            prime,
            provenance: BTreeMap::new(),
        })
    }

    /// GF(p)-span of arbitrary (possibly dependent) `r x c` matrices.
    pub fn from_spanning_set(field: &Field, shape: (usize, usize), words: &[Matrix]) -> Result<Self> {
        let (r, c) = shape;
        if r == 0 || c == 0 {
            return Err(Error::Argument("matrix dimensions must be positive".into()));
        }
        if let Some(w) = words.iter().find(|w| (w.rows(), w.cols()) != shape || w.field() != field) {
            return Err(Error::Structural(format!("spanning matrix is {}x{}, expected {r}x{c}", w.rows(), w.cols())));
        }
        let transposed = c > r;
        let (n, m) = if transposed { (c, r) } else { (r, c) };
        let vectors = words
            .iter()
            .map(|w| prime_coordinates(&if transposed { w.transpose() } else { w.clone() }))
            .collect();
        Ok(Self::from_prime_vectors(field, n, m, vectors)?.set_transposed(transposed))
    }

    /// GF(q^n)-linear code with the rows of `generator` (k×m over `ext`) as a basis.
    /// Codewords are expanded column-wise in the polynomial basis of `ext` over its base.
    pub fn from_generator(ext: &Field, generator: Matrix) -> Result<Self> {
        if generator.field() != ext {
            return Err(Error::Structural("generator is not over the extension field".into()));
        }
        let k_field = ext.base_field();
        let n = ext.degree() as usize;
        let m = generator.cols();
        if m > n {
            return Err(Error::Argument(format!("GF(q^n)-linear codes need m <= n (m={m}, n={n})")));
        }
        if generator.rank() != generator.rows() {
            return Err(Error::Argument("generator rows are dependent".into()));
        }
        let pb = ext.polynomial_basis();
        let mut prime_gens = Vec::new();
        let mut basis = Vec::new();
        for i in 0..generator.rows() {
            let row = generator.row(i);
            basis.push(vector_to_matrix(ext, row, &pb)?);
            for beta in ext.prime_basis() {
                let scaled: Vec<u32> = row.iter().map(|&x| ext.mul(beta, x)).collect();
                prime_gens.push(prime_coordinates(&vector_to_matrix(ext, &scaled, &pb)?));
            }
        }
        let prime = SubspaceBasis::from_vectors(
            &k_field.prime_field(),
            n * m * k_field.prime_degree() as usize,
            prime_gens,
        );
        Ok(RankMetricCode {
            field: k_field,
            n,
            m,
            transposed: false,
            linearity: Linearity::Fqn,
            basis,
            ext: Some(ext.clone()),
            generator: Some(generator),
            prime,
            provenance: BTreeMap::new(),
        })
    }

    /// Code with the given GF(p)-basis of prime coordinate vectors (already in the stored orientation).
    pub(crate) fn from_prime_vectors(field: &Field, n: usize, m: usize, vectors: Vec<Vec<u32>>) -> Result<Self> {
        let prime = SubspaceBasis::from_vectors(&field.prime_field(), n * m * field.prime_degree() as usize, vectors);
        let basis = prime
            .rows()
            .iter()
            .map(|v| from_prime_coordinates(field, n, m, v))
            .collect();
        Ok(RankMetricCode {
            field: field.clone(),
            n,
            m,
            transposed: false,
            linearity: Linearity::Fp,
            basis,
            ext: None,
            generator: None,
            prime,
            provenance: BTreeMap::new(),
        })
    }

    /// The same set of codewords described over the prime field, in canonical basis.
    pub fn as_prime_linear(&self) -> RankMetricCode {
        let mut c = Self::from_prime_vectors(&self.field, self.n, self.m, self.prime.rows().to_vec())
            .expect("valid prime basis");
        c.transposed = self.transposed;
        c.provenance = self.provenance.clone();
        c
    }

    /// Whether the code is closed under GF(q)-scalars (always true for Fq/Fqn codes).
    pub fn is_fq_linear(&self) -> bool {
        if self.linearity != Linearity::Fp {
            return true;
        }
        let w = self.field.generator();
        if self.field.prime_degree() == 1 {
            return true;
        }
        self.basis.iter().all(|b| self.contains(&b.scale(w)))
    }

    /// Relabel as GF(q)-linear when the span is closed under GF(q)-scalars.
    pub fn upgrade_linearity(self) -> RankMetricCode {
        if self.linearity == Linearity::Fp && self.is_fq_linear() {
            let e = self.field.prime_degree() as usize;
            let k = self.prime_dim() / e;
            let mut rows = Vec::new();
            let mut span = SubspaceBasis::zero(self.prime.ambient());
            let pf = self.field.prime_field();
            for b in &self.basis {
                if rows.len() == k {
                    break;
                }
                if span.contains(&pf, &prime_coordinates(b)) {
                    continue;
                }
                rows.push(b.clone());
                span = SubspaceBasis::from_vectors(&pf, span.ambient(), scalar_expand(&self.field, &rows));
            }
            return RankMetricCode {
                linearity: Linearity::Fq,
                basis: rows,
                ..self
            };
        }
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn transposed(&self) -> bool {
        self.transposed
    }

    pub fn linearity(&self) -> Linearity {
        self.linearity
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn ext(&self) -> Option<&Field> {
        self.ext.as_ref()
    }

    pub fn generator(&self) -> Option<&Matrix> {
        self.generator.as_ref()
    }

    pub fn prime_basis(&self) -> &SubspaceBasis {
        &self.prime
    }

    pub fn prime_basis_matrices(&self) -> Vec<Matrix> {
        self.prime
            .rows()
            .iter()
            .map(|v| from_prime_coordinates(&self.field, self.n, self.m, v))
            .collect()
    }

    /// Dimension over GF(p).
    pub fn prime_dim(&self) -> usize {
        self.prime.dim()
    }

    /// `log_p |C|` as an exact count.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.field.characteristic()).pow(self.prime_dim() as u32)
    }

    pub fn q(&self) -> u64 {
        self.field.size()
    }

    pub fn provenance(&self) -> &BTreeMap<String, serde_json::Value> {
        &self.provenance
    }

    pub fn with_provenance(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.provenance.insert(key.to_string(), value.into());
        self
    }

    pub(crate) fn set_transposed(mut self, t: bool) -> Self {
        self.transposed = t;
        self
    }

    pub fn contains(&self, a: &Matrix) -> bool {
        a.rows() == self.n
            && a.cols() == self.m
            && a.field() == &self.field
            && self.prime.contains(&self.field.prime_field(), &prime_coordinates(a))
    }

    /// Same codeword set (orientation and field included).
    pub fn same_code(&self, other: &RankMetricCode) -> bool {
        self.field == other.field
            && (self.n, self.m) == (other.n, other.m)
            && self.prime == other.prime
    }

    /// Scalar field size used for the projective enumeration.
    fn scalar_generators(&self) -> (u64, Vec<Vec<Vec<u32>>>) {
        // For each scalar-level basis element, the K-matrices of its GF(p)-multiples by the scalar field's prime basis.
        match self.linearity {
            Linearity::Fp => (
                self.field.characteristic() as u64,
                self.prime
                    .rows()
                    .iter()
                    .map(|v| vec![from_prime_coordinates(&self.field, self.n, self.m, v).into_data()])
                    .collect(),
            ),
            Linearity::Fq => (
                self.field.size(),
                self.basis
                    .iter()
                    .map(|b| {
                        self.field
                            .prime_basis()
                            .into_iter()
                            .map(|w| b.scale(w).into_data())
                            .collect()
                    })
                    .collect(),
            ),
            Linearity::Fqn => {
                let ext = self.ext.as_ref().expect("extension present");
                let g = self.generator.as_ref().expect("generator present");
                let pb = ext.polynomial_basis();
                (
                    ext.size(),
                    (0..g.rows())
                        .map(|i| {
                            ext.prime_basis()
                                .into_iter()
                                .map(|beta| {
                                    let row: Vec<u32> = g.row(i).iter().map(|&x| ext.mul(beta, x)).collect();
                                    vector_to_matrix(ext, &row, &pb).expect("valid basis").into_data()
                                })
                                .collect()
                        })
                        .collect(),
                )
            }
        }
    }

    /// A GF(q)-basis of the code, when it is GF(q)-linear.
    pub fn fq_basis(&self) -> Option<Vec<Matrix>> {
        match self.linearity {
            Linearity::Fq => Some(self.basis.clone()),
            Linearity::Fqn => {
                let ext = self.ext.as_ref()?;
                let g = self.generator.as_ref()?;
                let pb = ext.polynomial_basis();
                let mut out = Vec::new();
                for i in 0..g.rows() {
                    for &w in &pb {
                        let row: Vec<u32> = g.row(i).iter().map(|&x| ext.mul(w, x)).collect();
                        out.push(vector_to_matrix(ext, &row, &pb).ok()?);
                    }
                }
                Some(out)
            }
            Linearity::Fp => {
                if self.field.prime_degree() == 1 {
                    Some(self.basis.clone())
                } else if self.is_fq_linear() {
                    Some(self.clone().upgrade_linearity().basis)
                } else {
                    None
                }
            }
        }
    }

    /// The same code read over GF(p): each entry becomes the `e x e` matrix of
    /// multiplication by it on the prime basis, so ranks scale by `e`.
    pub fn over_prime_field(&self) -> Result<RankMetricCode> {
        if self.field.prime_degree() == 1 {
            return Ok(self.clone());
        }
        let pf = self.field.prime_field();
        let basis: Vec<Matrix> = self.prime_basis_matrices().iter().map(|a| expand_matrix(a)).collect();
        let e = self.field.prime_degree() as usize;
        let c = RankMetricCode::from_matrices_shaped(&pf, Some((self.n * e, self.m * e)), basis, Linearity::Fp)?;
        Ok(c.set_transposed(self.transposed))
    }

    /// Number of codewords visited by the projective rank tally.
    pub fn representative_count(&self) -> u128 {
        let (s, gens) = self.scalar_generators();
        let k = gens.len() as u32;
        if k == 0 {
            return 1;
        }
        (s as u128).pow(k).saturating_sub(1) / (s as u128 - 1)
    }

    /// Rank distribution `(a_0, ..., a_m)` by exhaustive enumeration of one
    /// codeword per scalar line (ranks are constant on lines).
    pub fn rank_distribution(&self) -> Result<RankDistribution> {
        self.rank_distribution_with_cap(exhaustive_cap())
    }

    pub fn rank_distribution_with_cap(&self, cap: u64) -> Result<RankDistribution> {
        check_cap("codeword enumeration", self.representative_count(), cap)?;
        let (s, gens) = self.scalar_generators();
        let mut counts = vec![0u128; self.m + 1];
        counts[0] = 1;
        for t in 0..gens.len() {
            let offset = &gens[t][0];
            let fp_gens: Vec<Vec<u32>> = gens[t + 1..].iter().flatten().cloned().collect();
            let layer = tally_affine(&self.field, self.n, self.m, offset, &fp_gens);
            for (c, x) in counts.iter_mut().zip(layer) {
                *c += x as u128 * (s as u128 - 1);
            }
        }
        Ok(RankDistribution(counts))
    }

    /// Minimum rank distance; needs at least two codewords.
    pub fn min_distance(&self) -> Result<usize> {
        if self.prime_dim() == 0 {
            return Err(Error::domain("minimum distance is undefined for a code with fewer than two codewords"));
        }
        Ok(self.rank_distribution()?.min_distance().expect("nonzero codeword"))
    }

    pub fn weight_enumerator(&self) -> Result<WeightEnumerator> {
        Ok(WeightEnumerator {
            m: self.m,
            coeffs: self.rank_distribution()?.0,
        })
    }

    /// `|C|` meets the Singleton-like bound at its minimum distance.
    pub fn is_mrd(&self) -> Result<bool> {
        let d = self.min_distance()?;
        Ok(self.size() == singleton_bound(self.q(), self.n, self.m, d)?)
    }

    /// All codewords, in GF(p)-Gray order starting from zero.
    pub fn codewords(&self) -> Result<Vec<Matrix>> {
        let total = (self.field.characteristic() as u128).pow(self.prime_dim() as u32);
        check_cap("codeword listing", total, exhaustive_cap())?;
        let gens: Vec<Vec<u32>> = self.prime_basis_matrices().into_iter().map(|m| m.into_data()).collect();
        let mut out = Vec::with_capacity(total as usize);
        let mut word = vec![0u32; self.n * self.m];
        let p = self.field.characteristic();
        let mut digits = vec![0u32; gens.len()];
        out.push(Matrix::from_vec(&self.field, self.n, self.m, word.clone())?);
        for _ in 1..total {
            let j = gray_step(&mut digits, p);
            for (w, &g) in word.iter_mut().zip(&gens[j]) {
                *w = self.field.add(*w, g);
            }
            out.push(Matrix::from_vec(&self.field, self.n, self.m, word.clone())?);
        }
        Ok(out)
    }

    /// Codewords in the original orientation (undoing the stored transpose).
    pub fn codewords_as_given(&self) -> Result<Vec<Matrix>> {
        let c = self.codewords()?;
        Ok(if self.transposed {
            c.into_iter().map(|a| a.transpose()).collect()
        } else {
            c
        })
    }

    pub fn to_file(&self) -> CodeFile {
        let desc = self.field.descriptor();
        CodeFile {
            version: env!("CARGO_PKG_VERSION").to_string(),
            q: FieldSpec { ext: None, ..desc },
            n: self.n,
            m: self.m,
            transposed: self.transposed,
            linearity: self.linearity,
            basis: self.basis.iter().map(|b| b.to_text()).collect(),
            generator: self.generator.as_ref().map(|g| g.to_text()),
            ext_modulus: self.ext.as_ref().map(|e| e.modulus().to_vec()),
            provenance: self.provenance.clone(),
        }
    }

    pub fn from_file(file: &CodeFile) -> Result<Self> {
        let field = file.q.build()?;
        let mut code = match file.linearity {
            Linearity::Fqn => {
                let g = file
                    .generator
                    .as_ref()
                    .ok_or_else(|| Error::Parse("Fqn code without a generator".into()))?;
                let ext = field.extension(file.n as u32, file.ext_modulus.clone())?;
                RankMetricCode::from_generator(&ext, Matrix::parse(&ext, g)?)?
            }
            lin => {
                let basis = file
                    .basis
                    .iter()
                    .map(|t| Matrix::parse(&field, t))
                    .collect::<Result<Vec<_>>>()?;
                let c = RankMetricCode::from_matrices_shaped(&field, Some((file.n, file.m)), basis, lin)?;
                c.set_transposed(file.transposed)
            }
        };
        if (code.n, code.m) != (file.n, file.m) {
            return Err(Error::Parse("stored shape does not match the basis".into()));
        }
        code.provenance = file.provenance.clone();
        Ok(code)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CodeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }
}

/// Block expansion of a matrix over GF(p^e) into one over GF(p).
pub fn expand_matrix(a: &Matrix) -> Matrix {
    let f = a.field();
    let e = f.prime_degree() as usize;
    let pf = f.prime_field();
    let basis = f.prime_basis();
    let mut out = Matrix::zero(&pf, a.rows() * e, a.cols() * e);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            for (t, &b) in basis.iter().enumerate() {
                for (r, d) in f.prime_digits(f.mul(x, b)).into_iter().enumerate() {
                    out.set(i * e + r, j * e + t, d);
                }
            }
        }
    }
    out
}

/// K-matrices `w * b` for `w` in the prime basis of GF(q), as prime coordinates.
fn scalar_expand(field: &Field, basis: &[Matrix]) -> Vec<Vec<u32>> {
    let pb = field.prime_basis();
    basis
        .iter()
        .flat_map(|b| pb.iter().map(move |&w| prime_coordinates(&b.scale(w))))
        .collect()
}

/// On-disk code description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeFile {
    #[serde(default)]
    pub version: String,
    pub q: FieldSpec,
    pub n: usize,
    pub m: usize,
    #[serde(default)]
    pub transposed: bool,
    pub linearity: Linearity,
    #[serde(default)]
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext_modulus: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub provenance: BTreeMap<String, serde_json::Value>,
}

/// Advance a modular `p`-ary Gray counter; returns the index whose generator is added.
pub(crate) fn gray_step(digits: &mut [u32], p: u32) -> usize {
    let mut j = 0;
    while digits[j] == p - 1 {
        digits[j] = 0;
        j += 1;
    }
    digits[j] += 1;
    j
}

const CHUNK_DIGITS_BITS: u32 = 14;

/// Rank tally over `offset + span_p(gens)`.
pub(crate) fn tally_affine(field: &Field, n: usize, m: usize, offset: &[u32], gens: &[Vec<u32>]) -> Vec<u64> {
    let p = field.characteristic();
    let k = gens.len();
    let chunk_digits = {
        let mut c = 0usize;
        while c < k && (p as u64).pow(c as u32 + 1) <= 1 << CHUNK_DIGITS_BITS {
            c += 1;
        }
        c
    };
    let chunks = (p as u64).pow((k - chunk_digits) as u32);
    let per_chunk = (p as u64).pow(chunk_digits as u32);
    let bits = field.size() == 2 && m <= 64 && n <= 64;
    let run = |chunk: u64| -> Vec<u64> {
        // Gray word at index chunk * per_chunk: g_j = d_j - d_{j+1} mod p.
        let i0 = chunk * per_chunk;
        let mut d = vec![0u32; k + 1];
        let mut x = i0;
        for slot in d.iter_mut().take(k) {
            *slot = (x % p as u64) as u32;
            x /= p as u64;
        }
        let mut word = offset.to_vec();
        for j in 0..k {
            let g = (d[j] + p - d[j + 1]) % p;
            if g != 0 {
                for (w, &b) in word.iter_mut().zip(&gens[j]) {
                    *w = field.add(*w, field.scale_prime(g, b));
                }
            }
        }
        let mut counts = vec![0u64; m + 1];
        let mut digits = vec![0u32; chunk_digits + 1];
        if bits {
            let pack = |v: &[u32]| -> Vec<u64> {
                (0..n)
                    .map(|i| (0..m).fold(0u64, |acc, j| acc | ((v[i * m + j] as u64) << j)))
                    .collect()
            };
            let mut w = pack(&word);
            let g: Vec<Vec<u64>> = gens[..chunk_digits].iter().map(|v| pack(v)).collect();
            let mut tmp = vec![0u64; n];
            for step in 0..per_chunk {
                if step > 0 {
                    let j = gray_step(&mut digits, p);
                    for (a, b) in w.iter_mut().zip(&g[j]) {
                        *a ^= b;
                    }
                }
                tmp.copy_from_slice(&w);
                counts[rank_bits(&mut tmp)] += 1;
            }
        } else {
            let mut tmp = vec![0u32; n * m];
            for step in 0..per_chunk {
                if step > 0 {
                    let j = gray_step(&mut digits, p);
                    for (a, &b) in word.iter_mut().zip(&gens[j]) {
                        *a = field.add(*a, b);
                    }
                }
                tmp.copy_from_slice(&word);
                counts[rank_in_place(field, &mut tmp, n, m)] += 1;
            }
        }
        counts
    };
    (0..chunks)
        .into_par_iter()
        .map(run)
        .reduce(|| vec![0u64; m + 1], |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        })
}

/// Tallies `a_0, ..., a_m` of codewords by rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankDistribution(pub Vec<u128>);

impl RankDistribution {
    pub fn total(&self) -> u128 {
        self.0.iter().sum()
    }

    /// Smallest positive rank that occurs.
    pub fn min_distance(&self) -> Option<usize> {
        self.0.iter().skip(1).position(|&a| a > 0).map(|i| i + 1)
    }

    pub fn as_slice(&self) -> &[u128] {
        &self.0
    }
}

impl fmt::Display for RankDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `W_C(x, y) = Σ a_i x^i y^(m-i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub m: usize,
    pub coeffs: Vec<u128>,
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut t = a.to_string();
            match i {
                0 => {}
                1 => t.push_str("*x"),
                _ => t.push_str(&format!("*x^{i}")),
            }
            match self.m - i {
                0 => {}
                1 => t.push_str("*y"),
                k => t.push_str(&format!("*y^{k}")),
            }
            terms.push(t);
        }
        f.write_str(&terms.join(" + "))
    }
}

fn check_params(n: usize, m: usize, d: usize) -> Result<()> {
    if !(1 <= d && d <= m && m <= n) {
        return Err(Error::Argument(format!(
            "need 1 <= d <= m <= n, got n={n}, m={m}, d={d}"
        )));
    }
    Ok(())
}

/// `q^(n(m-d+1))`.
pub fn singleton_bound(q: u64, n: usize, m: usize, d: usize) -> Result<BigUint> {
    check_params(n, m, d)?;
    Ok(BigUint::from(q).pow((n * (m - d + 1)) as u32))
}

/// Rank distribution shared by every additive MRD code with parameters `(q, n, m, d)`:
/// `a_i = [m,i]_q Σ_{s=0}^{i-d} (-1)^s q^(s(s-1)/2) [i,s]_q (q^(n(i-d-s+1)) - 1)` for `i >= d`.
pub fn delsarte_rank_distribution(q: u64, n: usize, m: usize, d: usize) -> Result<RankDistribution> {
    check_params(n, m, d)?;
    let qb = BigInt::from(q);
    let mut out = vec![0u128; m + 1];
    out[0] = 1;
    for (i, slot) in out.iter_mut().enumerate().skip(d) {
        let mut sum = BigInt::zero();
        for s in 0..=(i - d) {
            let sign = if s % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let term = sign
                * qb.pow((s * s.saturating_sub(1) / 2) as u32)
                * BigInt::from(gaussian_binomial(i as u32, s as u32, q)?)
                * (qb.pow((n * (i - d - s + 1)) as u32) - 1);
            sum += term;
        }
        let a = BigInt::from(gaussian_binomial(m as u32, i as u32, q)?) * sum;
        *slot = a
            .to_u128()
            .ok_or_else(|| Error::Unsupported("rank distribution entry exceeds 128 bits".into()))?;
    }
    Ok(RankDistribution(out))
}

/// Minimum pairwise rank distance of an arbitrary set of matrices.
pub fn min_distance_of_set(words: &[Matrix]) -> Result<usize> {
    if words.len() < 2 {
        return Err(Error::domain("minimum distance is undefined for fewer than two codewords"));
    }
    let pairs = words.len() as u128 * (words.len() as u128 - 1) / 2;
    check_cap("pairwise distance computation", pairs, exhaustive_cap())?;
    let mut best = usize::MAX;
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            best = best.min(a.sub(b)?.rank());
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    fn gf4_spread() -> RankMetricCode {
        let f = gf2();
        let basis = vec![
            Matrix::identity(&f, 2),
            Matrix::parse(&f, "0,1;1,1").unwrap(),
        ];
        RankMetricCode::from_matrices(&f, basis, Linearity::Fp).unwrap()
    }

    #[test]
    fn full_space_has_distance_one() {
        let f = Field::prime(3).unwrap();
        let basis: Vec<Matrix> = (0..4)
            .map(|t| {
                let mut a = Matrix::zero(&f, 2, 2);
                a.set(t / 2, t % 2, 1);
                a
            })
            .collect();
        let c = RankMetricCode::from_matrices(&f, basis, Linearity::Fq).unwrap();
        assert_eq!(c.min_distance().unwrap(), 1);
        assert!(c.is_mrd().unwrap());
    }

    #[test]
    fn gf4_spread_set_is_mrd() {
        let c = gf4_spread();
        assert_eq!(c.min_distance().unwrap(), 2);
        assert!(c.is_mrd().unwrap());
        assert_eq!(c.rank_distribution().unwrap(), RankDistribution(vec![1, 0, 3]));
    }

    #[test]
    fn zero_code() {
        let c = RankMetricCode::from_matrices_shaped(&gf2(), Some((2, 2)), vec![], Linearity::Fp).unwrap();
        assert_eq!(c.rank_distribution().unwrap(), RankDistribution(vec![1, 0, 0]));
        assert!(c.min_distance().is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(singleton_bound(2, 3, 3, 3).unwrap(), BigUint::from(8u32));
        assert_eq!(singleton_bound(3, 4, 3, 2).unwrap(), BigUint::from(6561u32));
        assert!(singleton_bound(2, 2, 3, 1).is_err());
    }

    #[test]
    fn delsarte_examples() {
        assert_eq!(delsarte_rank_distribution(2, 3, 3, 3).unwrap().0, vec![1, 0, 0, 7]);
        assert_eq!(delsarte_rank_distribution(2, 3, 3, 2).unwrap().0, vec![1, 0, 49, 14]);
        let d = delsarte_rank_distribution(3, 4, 3, 2).unwrap();
        assert_eq!(d.total(), 3u128.pow(8));
    }

    #[test]
    fn dependent_basis_rejected() {
        let f = gf2();
        let a = Matrix::identity(&f, 2);
        assert!(RankMetricCode::from_matrices(&f, vec![a.clone(), a], Linearity::Fp).is_err());
    }

    #[test]
    fn wide_input_is_stored_transposed() {
        let f = gf2();
        let a = Matrix::parse(&f, "1,0,0;0,1,0").unwrap();
        let c = RankMetricCode::from_matrices(&f, vec![a.clone()], Linearity::Fp).unwrap();
        assert!(c.transposed());
        assert_eq!((c.n(), c.m()), (3, 2));
        assert_eq!(c.codewords_as_given().unwrap()[1], a);
    }

    #[test]
    fn json_round_trip() {
        let c = gf4_spread().with_provenance("family", "spread");
        let back = RankMetricCode::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), c.to_json());
    }

    #[test]
    fn weight_enumerator_text() {
        let w = gf4_spread().weight_enumerator().unwrap();
        assert_eq!(w.to_string(), "1*y^2 + 3*x^2");
    }

    #[test]
    fn pairwise_distance() {
        let f = gf2();
        let words = vec![Matrix::zero(&f, 2, 2), Matrix::identity(&f, 2)];
        assert_eq!(min_distance_of_set(&words).unwrap(), 2);
        assert!(min_distance_of_set(&words[..1]).is_err());
    }
}
