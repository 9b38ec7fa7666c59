//! MRD constructions: Gabidulin, twisted families `H_k(φ1, φ2)`, skew-polynomial
//! quotient codes, scattered-pair codes and semifield spread sets.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::code::RankMetricCode;
use crate::error::{check_cap, exhaustive_cap, Error, Result};
use crate::field::Field;
use crate::linearized::{gcd, SigmaPolynomial};
use crate::matrix::{rank_in_place, Matrix, SubspaceBasis};
use crate::semifield::{spread_code, verify_presemifield, PresemifieldCheck, SemifieldMultiplication};

fn check_twist(n: u32, s: u32) -> Result<()> {
    if n > 1 && (s == 0 || s >= n) {
        return Err(Error::Argument(format!("twist s={s} must lie in 1..{n}")));
    }
    if gcd(s as u64, n as u64) != 1 {
        return Err(Error::Argument(format!("gcd(s, n) = gcd({s}, {n}) must be 1")));
    }
    Ok(())
}

/// `G_{k,σ} = {f_0 x + ... + f_{k-1} x^(σ^(k-1))}` with `σ = x^(q^s)`, as a
/// GF(q^n)-linear code in `M_n(GF(q))` (polynomial basis).
pub fn gabidulin(base: &Field, n: u32, k: usize, s: u32) -> Result<RankMetricCode> {
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    check_twist(n, s)?;
    if k == 0 || k > n as usize {
        return Err(Error::Argument(format!("need 1 <= k <= n (k={k}, n={n})")));
    }
    let ext = base.extension(n, None)?;
    let pb = ext.polynomial_basis();
    let mut data = Vec::with_capacity(k * n as usize);
    for i in 0..k {
        data.extend(pb.iter().map(|&a| ext.frobenius(a, s * i as u32)));
    }
    let g = Matrix::from_vec(&ext, k, n as usize, data)?;
    Ok(RankMetricCode::from_generator(&ext, g)?
        .with_provenance("family", "gabidulin")
        .with_provenance("params", json!({"q": base.size(), "n": n, "k": k, "s": s})))
}

/// A GF(p)-linear map on a field, stored by its images of the prime basis.
#[derive(Clone, PartialEq, Eq)]
pub struct AdditiveMap {
    field: Field,
    images: Vec<u32>,
}

impl fmt::Debug for AdditiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdditiveMap({:?})", self.images)
    }
}

impl AdditiveMap {
    pub fn from_images(field: &Field, images: Vec<u32>) -> Result<Self> {
        if images.len() != field.prime_degree() as usize {
            return Err(Error::Structural(format!(
                "an additive map needs {} images",
                field.prime_degree()
            )));
        }
        if images.iter().any(|&c| !field.contains(c)) {
            return Err(Error::Argument("image outside the field".into()));
        }
        Ok(AdditiveMap {
            field: field.clone(),
            images,
        })
    }

    /// Read off an additive function (only its values on the prime basis are used).
    pub fn from_fn(field: &Field, f: impl Fn(u32) -> u32) -> Self {
        AdditiveMap {
            field: field.clone(),
            images: field.prime_basis().into_iter().map(f).collect(),
        }
    }

    pub fn from_sigma(poly: &SigmaPolynomial) -> Self {
        Self::from_fn(poly.field(), |x| poly.evaluate(x))
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_fn(field, |_| 0)
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, a: u32) -> u32 {
        let f = &self.field;
        f.prime_digits(a)
            .iter()
            .zip(&self.images)
            .fold(0, |acc, (&d, &img)| if d == 0 { acc } else { f.add(acc, f.scale_prime(d, img)) })
    }
}

/// Rows of the twisted-family table, or a custom pair of maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistFamily {
    /// `φ2(a) = η a^(q^h)`, `σ = x^q`.
    Tg,
    /// `φ2(a) = η a^(q^h)`.
    Gtg,
    /// `φ2(a) = η a^(p^h)`.
    Agtg,
    /// `φ1(a) = a0`, `φ2(a) = η a1` for `a = a0 + a1 θ`, `n` even.
    Tz,
    Custom,
}

impl fmt::Display for TwistFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwistFamily::Tg => "tg",
            TwistFamily::Gtg => "gtg",
            TwistFamily::Agtg => "agtg",
            TwistFamily::Tz => "tz",
            TwistFamily::Custom => "custom",
        })
    }
}

impl std::str::FromStr for TwistFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tg" => Ok(TwistFamily::Tg),
            "gtg" => Ok(TwistFamily::Gtg),
            "agtg" => Ok(TwistFamily::Agtg),
            "tz" => Ok(TwistFamily::Tz),
            "custom" => Ok(TwistFamily::Custom),
            _ => Err(Error::Argument(format!("unknown twisted family '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSpec {
    pub family: TwistFamily,
    pub k: usize,
    /// Element code in GF(q^n).
    pub eta: u32,
    pub h: u32,
    /// `(φ1, φ2)` for [`TwistFamily::Custom`].
    pub maps: Option<(AdditiveMap, AdditiveMap)>,
}

impl TwistSpec {
    pub fn new(family: TwistFamily, k: usize, eta: u32, h: u32) -> Self {
        TwistSpec {
            family,
            k,
            eta,
            h,
            maps: None,
        }
    }

    pub fn custom(k: usize, phi1: AdditiveMap, phi2: AdditiveMap) -> Self {
        TwistSpec {
            family: TwistFamily::Custom,
            k,
            eta: 0,
            h: 0,
            maps: Some((phi1, phi2)),
        }
    }

    /// The pair `(φ1, φ2)` over `ext`.
    pub fn maps(&self, ext: &Field) -> Result<(AdditiveMap, AdditiveMap)> {
        if !ext.contains(self.eta) {
            return Err(Error::Argument(format!("eta={} is not an element of {}", self.eta, ext.to_text())));
        }
        let eta = self.eta;
        let h = self.h;
        let id = AdditiveMap::from_fn(ext, |a| a);
        Ok(match self.family {
            TwistFamily::Tg | TwistFamily::Gtg => (id, AdditiveMap::from_fn(ext, |a| ext.mul(eta, ext.frobenius(a, h)))),
            TwistFamily::Agtg => (
                id,
                AdditiveMap::from_fn(ext, |a| ext.mul(eta, ext.frobenius_prime(a, h))),
            ),
            TwistFamily::Tz => {
                let n = ext.degree();
                if n % 2 != 0 {
                    return Err(Error::Argument("the TZ family needs n even".into()));
                }
                let halves = tz_decomposition(ext)?;
                (
                    AdditiveMap::from_fn(ext, |a| halves[&a].0),
                    AdditiveMap::from_fn(ext, |a| ext.mul(eta, halves[&a].1)),
                )
            }
            TwistFamily::Custom => {
                let (a, b) = self
                    .maps
                    .clone()
                    .ok_or_else(|| Error::Argument("custom family needs explicit maps".into()))?;
                if a.field != *ext || b.field != *ext {
                    return Err(Error::Structural("custom maps over a different field".into()));
                }
                (a, b)
            }
        })
    }
}

/// `a ↦ (a0, a1)` with `a = a0 + a1 θ`, `a_i ∈ GF(q^(n/2))`, `θ` the generator of GF(q^n) over GF(q).
fn tz_decomposition(ext: &Field) -> Result<HashMap<u32, (u32, u32)>> {
    check_cap("field elements", ext.size() as u128, exhaustive_cap())?;
    let half = ext.prime_degree() / 2;
    let sub = ext.subfield_elements(half);
    let theta = ext.generator();
    let mut out = HashMap::with_capacity(ext.size() as usize);
    for &a0 in &sub {
        for &a1 in &sub {
            out.insert(ext.add(a0, ext.mul(a1, theta)), (a0, a1));
        }
    }
    Ok(out)
}

/// Exhaustive check of `N(φ1(a)) ≠ (-1)^(nk) N(φ2(a))` on `GF(q^n)^*`; returns a failing `a`.
pub fn twist_condition_witness(ext: &Field, k: usize, phi1: &AdditiveMap, phi2: &AdditiveMap) -> Result<Option<u32>> {
    check_cap("norm condition (field elements)", ext.size() as u128, exhaustive_cap())?;
    let base = ext.base_field();
    let sign_odd = (ext.degree() as usize * k) % 2 == 1;
    for a in 1..ext.size() as u32 {
        let lhs = ext.norm(phi1.apply(a));
        let mut rhs = ext.norm(phi2.apply(a));
        if sign_odd {
            rhs = base.neg(rhs);
        }
        if lhs == rhs {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// `H_k(φ1, φ2) = {φ1(a) x + Σ_{i=1}^{k-1} f_i x^(σ^i) + φ2(a) x^(σ^k)}` in `M_n(GF(q))`.
pub fn twisted_code(spec: &TwistSpec, base: &Field, n: u32, s: u32) -> Result<RankMetricCode> {
    check_twist(n, s)?;
    if spec.family == TwistFamily::Tg && s != 1 {
        return Err(Error::Argument("the TG family uses σ = x^q (s = 1); use gtg for other s".into()));
    }
    let k = spec.k;
    if k == 0 || k >= n as usize {
        return Err(Error::Argument(format!("need 1 <= k <= n-1 (k={k}, n={n})")));
    }
    let ext = base.extension(n, None)?;
    let (phi1, phi2) = spec.maps(&ext)?;
    if let Some(a) = twist_condition_witness(&ext, k, &phi1, &phi2)? {
        return Err(Error::rejected(
            format!(
                "norm condition fails: N(φ1(a)) = (-1)^(nk) N(φ2(a)) at a = {a} (N(φ1(a)) = {})",
                ext.norm(phi1.apply(a))
            ),
            format!("a={a}"),
        ));
    }
    let mut words = Vec::new();
    for beta in ext.prime_basis() {
        let mut c = vec![0u32; n as usize];
        c[0] = phi1.apply(beta);
        c[k] = ext.add(c[k], phi2.apply(beta));
        words.push(SigmaPolynomial::new(&ext, s, &c)?.to_base_matrix());
        for i in 1..k {
            words.push(SigmaPolynomial::monomial(&ext, s, i, beta)?.to_base_matrix());
        }
    }
    let code = RankMetricCode::from_spanning_set(base, (n as usize, n as usize), &words)?.upgrade_linearity();
    Ok(code
        .with_provenance("family", spec.family.to_string())
        .with_provenance(
            "params",
            json!({"q": base.size(), "n": n, "k": k, "s": s, "eta": spec.eta, "h": spec.h}),
        ))
}

/// Element of `GF(q^n)[t; σ] / (fbar(t^n))`, coefficients indexed by t-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPolynomial {
    pub coeffs: Vec<u32>,
}

/// The quotient ring `GF(q^n)[t; σ] / (fbar(t^n))`, `σ = x^(q^s)`.
#[derive(Clone, Debug)]
pub struct SkewQuotient {
    ext: Field,
    s: u32,
    fbar: Vec<u32>,
}

impl SkewQuotient {
    pub fn new(ext: &Field, s: u32, fbar: Vec<u32>) -> Result<Self> {
        let base = ext.base_field();
        check_twist(ext.degree(), s)?;
        if !base.is_irreducible(&fbar)? {
            return Err(Error::Argument(format!("fbar={fbar:?} is reducible over {}", base.to_text())));
        }
        if fbar[0] == 0 {
            return Err(Error::Argument("fbar = y gives a non-simple quotient".into()));
        }
        Ok(SkewQuotient {
            ext: ext.clone(),
            s,
            fbar,
        })
    }

    /// `N = n · deg fbar`, the number of t-coefficients.
    pub fn len(&self) -> usize {
        self.ext.degree() as usize * (self.fbar.len() - 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn s_deg(&self) -> usize {
        self.fbar.len() - 1
    }

    /// `a t^i · b t^j = a σ^i(b) t^(i+j)`, reduced with `t^N = -Σ_l c_l t^(nl)`.
    pub fn mul(&self, a: &SkewPolynomial, b: &SkewPolynomial) -> SkewPolynomial {
        let f = &self.ext;
        let big = self.len();
        let mut raw = vec![0u32; 2 * big];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let term = f.mul(x, f.frobenius(y, self.s * i as u32));
                raw[i + j] = f.add(raw[i + j], term);
            }
        }
        let n = f.degree() as usize;
        let sd = self.s_deg();
        for d in (big..raw.len()).rev() {
            let c = raw[d];
            if c == 0 {
                continue;
            }
            raw[d] = 0;
            for l in 0..sd {
                let t = f.mul(c, self.fbar[l]);
                let idx = d - big + n * l;
                raw[idx] = f.sub(raw[idx], t);
            }
        }
        raw.truncate(big);
        SkewPolynomial { coeffs: raw }
    }

    fn basis(&self) -> Vec<SkewPolynomial> {
        let big = self.len();
        let pb = self.ext.prime_basis();
        (0..big)
            .flat_map(|i| {
                pb.iter().map(move |&b| {
                    let mut c = vec![0u32; big];
                    c[i] = b;
                    SkewPolynomial { coeffs: c }
                })
            })
            .collect()
    }

    fn coords(&self, a: &SkewPolynomial) -> Vec<u32> {
        a.coeffs.iter().flat_map(|&c| self.ext.prime_digits(c)).collect()
    }

    /// GF(p)-rank of `x ↦ a x` on the quotient.
    fn left_rank(&self, a: &SkewPolynomial, basis: &[SkewPolynomial]) -> usize {
        let pf = self.ext.prime_field();
        let mut data: Vec<u32> = basis.iter().flat_map(|b| self.coords(&self.mul(a, b))).collect();
        rank_in_place(&pf, &mut data, basis.len(), basis.len())
    }

    /// Rank of `a` as an element of `M_n(GF(q^(deg fbar)))`.
    pub fn rank(&self, a: &SkewPolynomial) -> usize {
        let basis = self.basis();
        let mult = self.ext.degree() as usize * self.s_deg() * self.ext.base_field().prime_degree() as usize;
        self.left_rank(a, &basis) / mult
    }

    fn random(&self, rng: &mut impl Rng) -> SkewPolynomial {
        let q = self.ext.size();
        SkewPolynomial {
            coeffs: (0..self.len()).map(|_| rng.random_range(0..q) as u32).collect(),
        }
    }

    /// Explicit isomorphism data: a basis `v_1..v_n` over `F = GF(q)[y]/(fbar)` of a minimal left ideal.
    fn module_basis(&self, seed: u64) -> Result<(Field, Vec<SkewPolynomial>)> {
        let n = self.ext.degree() as usize;
        let basis = self.basis();
        let base = self.ext.base_field();
        let unit = self.ext.degree() as usize * self.s_deg() * base.prime_degree() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut z = None;
        'search: for _ in 0..64 {
            let mut cur = self.random(&mut rng);
            let mut r = self.left_rank(&cur, &basis) / unit;
            if r == 0 {
                continue;
            }
            for _ in 0..4096 {
                if r == 1 {
                    z = Some(cur);
                    break 'search;
                }
                let w = self.random(&mut rng);
                if self.left_rank(&w, &basis) / unit != n - 1 {
                    continue;
                }
                let next = self.mul(&cur, &w);
                let nr = self.left_rank(&next, &basis) / unit;
                if nr >= 1 && nr < r {
                    cur = next;
                    r = nr;
                }
            }
        }
        let z = z.ok_or_else(|| Error::Unsupported("no rank-one element found in the quotient".into()))?;
        let field_f = if self.s_deg() == 1 {
            base.clone()
        } else {
            base.extension(self.s_deg() as u32, Some(self.fbar.clone()))?
        };
        let pf = self.ext.prime_field();
        let ideal = SubspaceBasis::from_vectors(
            &pf,
            unit * n,
            basis.iter().map(|b| self.coords(&self.mul(b, &z))).collect(),
        );
        let mut chosen: Vec<SkewPolynomial> = Vec::new();
        let mut span = SubspaceBasis::zero(unit * n);
        for row in ideal.rows() {
            if chosen.len() == n {
                break;
            }
            if span.contains(&pf, row) {
                continue;
            }
            let v = self.from_coords(row);
            chosen.push(v);
            span = SubspaceBasis::from_vectors(&pf, unit * n, self.central_span(&chosen));
        }
        Ok((field_f, chosen))
    }

    fn from_coords(&self, v: &[u32]) -> SkewPolynomial {
        let e = self.ext.prime_degree() as usize;
        SkewPolynomial {
            coeffs: v.chunks(e).map(|c| self.ext.from_prime_digits(c)).collect(),
        }
    }

    /// `β y^j v_i` for `β` in the prime basis of GF(q), `y = t^n`, in order `(i, j, β)`.
    fn central_span(&self, vs: &[SkewPolynomial]) -> Vec<Vec<u32>> {
        let n = self.ext.degree() as usize;
        let base = self.ext.base_field();
        let mut out = Vec::new();
        for v in vs {
            for j in 0..self.s_deg() {
                for beta in base.prime_basis() {
                    let mut c = vec![0u32; self.len()];
                    c[n * j] = beta;
                    out.push(self.coords(&self.mul(&SkewPolynomial { coeffs: c }, v)));
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by each `a` on the module basis, over `F`.
    fn matrices(&self, elems: &[SkewPolynomial], seed: u64) -> Result<(Field, Vec<Matrix>)> {
        let (field_f, vs) = self.module_basis(seed)?;
        let n = vs.len();
        let pf = self.ext.prime_field();
        let cols = self.central_span(&vs);
        let dim = cols.len();
        let len = cols[0].len();
        let mut data = vec![0u32; len * dim];
        for (c, v) in cols.iter().enumerate() {
            for (r, &x) in v.iter().enumerate() {
                data[r * dim + c] = x;
            }
        }
        let system = Matrix::from_vec(&pf, len, dim, data)?;
        let base = self.ext.base_field();
        let e = base.prime_degree() as usize;
        let sd = self.s_deg();
        let mut out = Vec::with_capacity(elems.len());
        for a in elems {
            let mut m = Matrix::zero(&field_f, n, n);
            for (col, v) in vs.iter().enumerate() {
                let img = self.coords(&self.mul(a, v));
                let sol = system
                    .solve(&img)?
                    .ok_or_else(|| Error::Structural("image left the minimal ideal".into()))?;
                for row in 0..n {
                    let ks: Vec<u32> = (0..sd)
                        .map(|j| base.from_prime_digits(&sol[(row * sd + j) * e..(row * sd + j + 1) * e]))
                        .collect();
                    m.set(row, col, field_f.from_coeffs(&ks));
                }
            }
            out.push(m);
        }
        Ok((field_f, out))
    }
}

/// Parameters for [`skew_mrd`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewParams {
    pub n: u32,
    pub s_deg: u32,
    pub k: usize,
    pub eta: u32,
    pub twist: u32,
    /// Monic irreducible over GF(q) of degree `s_deg`; default when absent.
    pub fbar: Option<Vec<u32>>,
    pub seed: u64,
}

impl SkewParams {
    pub fn new(n: u32, s_deg: u32, k: usize, eta: u32) -> Self {
        SkewParams {
            n,
            s_deg,
            k,
            eta,
            twist: 1,
            fbar: None,
            seed: 0,
        }
    }
}

fn skew_setup(base: &Field, params: &SkewParams) -> Result<(SkewQuotient, Vec<SkewPolynomial>)> {
    let n = params.n;
    if n < 2 {
        return Err(Error::Argument("need n >= 2".into()));
    }
    if params.s_deg == 0 {
        return Err(Error::Argument("fbar must have positive degree".into()));
    }
    if params.k == 0 || params.k >= n as usize {
        return Err(Error::Argument(format!("need 1 <= k <= n-1 (k={}, n={n})", params.k)));
    }
    let ext = base.extension(n, None)?;
    let fbar = match &params.fbar {
        Some(f) => f.clone(),
        None if params.s_deg == 1 => vec![1, 1],
        None => base.default_irreducible(params.s_deg)?,
    };
    if fbar.len() != params.s_deg as usize + 1 {
        return Err(Error::Argument(format!("fbar must have degree {}", params.s_deg)));
    }
    let ring = SkewQuotient::new(&ext, params.twist, fbar)?;
    check_cap(
        "skew quotient dimension",
        (ring.len() * ext.prime_degree() as usize) as u128,
        4096,
    )?;
    if !ext.contains(params.eta) {
        return Err(Error::Argument(format!("eta={} is not an element of {}", params.eta, ext.to_text())));
    }
    let sign = (n as usize * params.k * params.s_deg as usize) % 2 == 1;
    let one = if sign { base.neg(1) } else { 1 };
    if ext.norm(params.eta) == one {
        return Err(Error::rejected(
            format!("N(eta) = (-1)^(nks) = {one}"),
            format!("eta={}", params.eta),
        ));
    }
    let sk = params.s_deg as usize * params.k;
    let mut gens = Vec::new();
    for beta in ext.prime_basis() {
        let mut c = vec![0u32; ring.len()];
        c[0] = beta;
        c[sk] = ext.add(c[sk], ext.mul(params.eta, beta));
        gens.push(SkewPolynomial { coeffs: c });
        for i in 1..sk {
            let mut c = vec![0u32; ring.len()];
            c[i] = beta;
            gens.push(SkewPolynomial { coeffs: c });
        }
    }
    Ok((ring, gens))
}

/// Image of `{f : deg f ≤ s_deg·k, f_(s_deg·k) = η f_0}` in `M_n(GF(q^s_deg))`.
pub fn skew_mrd(base: &Field, params: &SkewParams) -> Result<RankMetricCode> {
    let (ring, gens) = skew_setup(base, params)?;
    let n = params.n as usize;
    let (field_f, mats) = ring.matrices(&gens, params.seed)?;
    let code = RankMetricCode::from_spanning_set(&field_f, (n, n), &mats)?;
    Ok(code.with_provenance("family", "skew").with_provenance(
        "params",
        json!({
            "q": base.size(), "n": params.n, "s_deg": params.s_deg, "k": params.k,
            "eta": params.eta, "twist": params.twist, "fbar": ring.fbar, "seed": params.seed
        }),
    ))
}

/// Rank distribution of the skew code computed from left-multiplication ranks in the quotient.
pub fn skew_rank_distribution(base: &Field, params: &SkewParams) -> Result<Vec<u128>> {
    let (ring, gens) = skew_setup(base, params)?;
    let p = base.characteristic() as u64;
    let total = (p as u128).pow(gens.len() as u32);
    check_cap("skew codewords", total, exhaustive_cap())?;
    let basis = ring.basis();
    let unit = ring.ext.degree() as usize * ring.s_deg() * base.prime_degree() as usize;
    let mut counts = vec![0u128; params.n as usize + 1];
    let f = &ring.ext;
    for t in 0..total as u64 {
        let mut v = t;
        let mut acc = vec![0u32; ring.len()];
        for g in &gens {
            let d = (v % p) as u32;
            v /= p;
            if d != 0 {
                for (a, &c) in acc.iter_mut().zip(&g.coeffs) {
                    *a = f.add(*a, f.scale_prime(d, c));
                }
            }
        }
        counts[ring.left_rank(&SkewPolynomial { coeffs: acc }, &basis) / unit] += 1;
    }
    Ok(counts)
}

/// `⟨x, f(x)⟩` over GF(q^n): generator rows `(α_j)` and `(f(α_j))` on the polynomial basis.
pub fn scattered_pair_code(f: &SigmaPolynomial) -> Result<RankMetricCode> {
    let ext = f.field();
    if let Some((x, y)) = f.scattered_witness()? {
        return Err(Error::rejected(
            format!("f is not scattered: f(x)/x = f(y)/y for GF(q)-independent x={x}, y={y}"),
            format!("x={x},y={y}"),
        ));
    }
    let pb = ext.polynomial_basis();
    let mut data = pb.clone();
    data.extend(pb.iter().map(|&a| f.evaluate(a)));
    let g = Matrix::from_vec(ext, 2, pb.len(), data)?;
    Ok(RankMetricCode::from_generator(ext, g)?
        .with_provenance("family", "scattered")
        .with_provenance("params", json!({"field": ext.to_text(), "f": f.to_text()})))
}

/// `x∘y = xy - c x^(p^i) y^(p^j)` on GF(p^e), in coordinates over GF(p).
pub fn albert_multiplication(p: u32, e: u32, i: u32, j: u32, c: u32) -> Result<SemifieldMultiplication> {
    let f = Field::new(p, e)?;
    if !f.contains(c) {
        return Err(Error::Argument(format!("c={c} is not an element of GF({p}^{e})")));
    }
    let pb = f.polynomial_basis();
    SemifieldMultiplication::from_basis_products(&f.prime_field(), e as usize, |a, b| {
        let (x, y) = (pb[a], pb[b]);
        let t = f.mul(c, f.mul(f.frobenius_prime(x, i), f.frobenius_prime(y, j)));
        f.coeffs(f.sub(f.mul(x, y), t))
    })
}

/// Spread set of the Albert twisted field `x∘y = xy - c x^(p^i) y^(p^j)`.
pub fn albert_twisted_field(p: u32, e: u32, i: u32, j: u32, c: u32) -> Result<RankMetricCode> {
    let mult = albert_multiplication(p, e, i, j, c)?;
    Ok(spread_set_of(&mult)?
        .with_provenance("family", "albert")
        .with_provenance("params", json!({"p": p, "e": e, "i": i, "j": j, "c": c})))
}

/// `{R_y : y}` for a presemifield product; a singular `R_y` is rejected with `y` as witness.
pub fn spread_set_of(mult: &SemifieldMultiplication) -> Result<RankMetricCode> {
    match verify_presemifield(mult)? {
        PresemifieldCheck::Fails { x, y, reason } => Err(Error::rejected(
            format!("R_y is singular ({reason}): x∘y = 0 for x={x:?}, y={y:?}"),
            format!("y={y:?}"),
        )),
        _ => Ok(spread_code(mult)?.with_provenance("family", "spread")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gabidulin_small() {
        let f = Field::prime(2).unwrap();
        let g = gabidulin(&f, 3, 2, 1).unwrap();
        assert_eq!(g.rank_distribution().unwrap().0, vec![1, 0, 49, 14]);
        assert!(gabidulin(&f, 4, 2, 2).is_err());
        let full = gabidulin(&f, 3, 3, 1).unwrap();
        assert_eq!(full.prime_dim(), 9);
    }

    #[test]
    fn tg_over_gf2_rejected() {
        let f = Field::prime(2).unwrap();
        let spec = TwistSpec::new(TwistFamily::Tg, 1, 1, 1);
        let err = twisted_code(&spec, &f, 3, 1).unwrap_err();
        assert!(err.witness().is_some());
    }

    #[test]
    fn zero_phi2_is_gabidulin() {
        let f = Field::prime(3).unwrap();
        let ext = f.extension(3, None).unwrap();
        let spec = TwistSpec::custom(2, AdditiveMap::from_fn(&ext, |a| a), AdditiveMap::zero(&ext));
        let t = twisted_code(&spec, &f, 3, 1).unwrap();
        assert!(t.same_code(&gabidulin(&f, 3, 2, 1).unwrap()));
    }

    #[test]
    fn skew_s1_matches_left_rank() {
        let f = Field::prime(2).unwrap();
        let p = SkewParams::new(3, 1, 2, 0);
        let code = skew_mrd(&f, &p).unwrap();
        assert_eq!(code.rank_distribution().unwrap().0, skew_rank_distribution(&f, &p).unwrap());
    }

    #[test]
    fn skew_order_16() {
        let f = Field::prime(2).unwrap();
        let code = skew_mrd(&f, &SkewParams::new(2, 2, 1, 0)).unwrap();
        assert_eq!(code.field().size(), 4);
        assert_eq!(code.size(), 16u32.into());
        assert_eq!(code.min_distance().unwrap(), 2);
    }

    #[test]
    fn albert_rejects_norm_one() {
        assert!(albert_twisted_field(3, 3, 1, 2, 1).is_err());
        let c = albert_twisted_field(3, 3, 1, 2, 0).unwrap();
        assert_eq!(c.min_distance().unwrap(), 3);
    }

    #[test]
    fn scalar_is_not_scattered() {
        let f = Field::prime(2).unwrap().extension(3, None).unwrap();
        let poly = SigmaPolynomial::new(&f, 1, &[2]).unwrap();
        assert!(scattered_pair_code(&poly).unwrap_err().witness().is_some());
    }
}
