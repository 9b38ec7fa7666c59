//! Exact arithmetic in GF(p^e) and in extension towers GF(q^n) over GF(q).
//!
//! Every element is an integer code: the base-`q` digits of the code are the
//! coefficients of the element in the polynomial basis of its level, so a code
//! read in base `p` gives the flattened prime-field coordinate vector. Addition
//! is therefore digitwise mod `p` at every level (plain XOR when `p = 2`).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fields up to this size get log/exp tables.
const TABLE_CAP: u64 = 1 << 20;
/// Largest supported field; element codes are `u32`.
const SIZE_LIMIT: u64 = 1 << 31;

#[derive(Clone)]
enum Base {
    Prime(u32),
    Field(Field),
}

impl Base {
    fn size(&self) -> u64 {
        match self {
            Base::Prime(p) => *p as u64,
            Base::Field(f) => f.size(),
        }
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        match self {
            Base::Prime(p) => ((a as u64 + b as u64) % *p as u64) as u32,
            Base::Field(f) => f.add(a, b),
        }
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        match self {
            Base::Prime(p) => ((a as u64 + *p as u64 - b as u64) % *p as u64) as u32,
            Base::Field(f) => f.sub(a, b),
        }
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        match self {
            Base::Prime(p) => ((a as u64 * b as u64) % *p as u64) as u32,
            Base::Field(f) => f.mul(a, b),
        }
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    base: Base,
    degree: u32,
    modulus: Vec<u32>,
    prime_degree: u32,
    size: u64,
    tables: Option<Tables>,
}

/// A finite field descriptor. Cheap to clone; all values are immutable.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        self.0.p == other.0.p
            && self.0.degree == other.0.degree
            && self.0.modulus == other.0.modulus
            && self.base() == other.base()
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.to_text())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn checked_pow(b: u64, e: u32) -> Option<u64> {
    let mut r: u64 = 1;
    for _ in 0..e {
        r = r.checked_mul(b)?;
    }
    Some(r)
}

// Polynomials over a base level, coefficient codes low degree first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `b`.
fn poly_rem(base: &Base, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &c) in b.iter().enumerate() {
            let t = base.mul(lead, c);
            r[shift + i] = base.sub(r[shift + i], t);
        }
        poly_trim(&mut r);
    }
    r
}

fn is_irreducible_over(base: &Base, modulus: &[u32]) -> Result<bool> {
    let d = modulus.len() - 1;
    if d == 1 {
        return Ok(true);
    }
    if modulus[0] == 0 {
        return Ok(false);
    }
    let q = base.size();
    let mut candidates: u128 = 0;
    for k in 1..=d / 2 {
        candidates += (q as u128).pow(k as u32);
    }
    crate::error::check_cap("irreducibility trial divisors", candidates, 1 << 26)?;
    for k in 1..=d / 2 {
        let count = q.pow(k as u32);
        for t in 0..count {
            let mut div = Vec::with_capacity(k + 1);
            let mut x = t;
            for _ in 0..k {
                div.push((x % q) as u32);
                x /= q;
            }
            div.push(1);
            if poly_rem(base, modulus, &div).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lexicographically smallest monic irreducible of degree `d`, comparing the
/// coefficient sequence `c0, c1, ..., c_{d-1}` from the constant term upward.
fn default_modulus(base: &Base, d: u32) -> Result<Vec<u32>> {
    let q = base.size();
    let total = checked_pow(q, d).ok_or_else(|| Error::Argument("degree too large".into()))?;
    for t in 0..total {
        let mut coeffs = vec![0u32; d as usize + 1];
        let mut x = t;
        for i in (0..d as usize).rev() {
            coeffs[i] = (x % q) as u32;
            x /= q;
        }
        coeffs[d as usize] = 1;
        if is_irreducible_over(base, &coeffs)? {
            return Ok(coeffs);
        }
    }
    Err(Error::Argument(format!("no irreducible polynomial of degree {d}")))
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1)
    }

    /// GF(p^e) over GF(p) with the default modulus.
    pub fn new(p: u32, e: u32) -> Result<Field> {
        Field::build(Base::Prime(Self::check_p(p)?), e, None)
    }

    /// GF(p^e) over GF(p) with an explicit monic modulus `[c0, ..., c_e]`.
    pub fn with_modulus(p: u32, e: u32, modulus: Vec<u32>) -> Result<Field> {
        Field::build(Base::Prime(Self::check_p(p)?), e, Some(modulus))
    }

    /// The tower GF(q^n) over this field GF(q).
    pub fn extension(&self, n: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        Field::build(Base::Field(self.clone()), n, modulus)
    }

    fn check_p(p: u32) -> Result<u32> {
        if p > 257 || !is_prime(p as u64) {
            return Err(Error::Argument(format!("characteristic {p} must be a prime <= 257")));
        }
        Ok(p)
    }

    fn build(base: Base, degree: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if degree == 0 {
            return Err(Error::Argument("extension degree must be >= 1".into()));
        }
        let q = base.size();
        let size = checked_pow(q, degree)
            .filter(|&s| s <= SIZE_LIMIT)
            .ok_or_else(|| Error::Unsupported(format!("field of size {q}^{degree} exceeds 2^31")))?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != degree as usize + 1 || m[degree as usize] != 1 {
                    return Err(Error::Argument(format!(
                        "modulus must be monic with {} coefficients",
                        degree + 1
                    )));
                }
                if m.iter().any(|&c| c as u64 >= q) {
                    return Err(Error::Argument("modulus coefficient outside base field".into()));
                }
                if !is_irreducible_over(&base, &m)? {
                    return Err(Error::Argument(format!("modulus {m:?} is reducible")));
                }
                m
            }
            None => default_modulus(&base, degree)?,
        };
        let (p, prime_degree) = match &base {
            Base::Prime(p) => (*p, degree),
            Base::Field(f) => (f.characteristic(), f.prime_degree() * degree),
        };
        let mut field = Inner {
            p,
            base,
            degree,
            modulus,
            prime_degree,
            size,
            tables: None,
        };
        if size <= TABLE_CAP {
            field.tables = Some(Self::make_tables(&field));
        }
        Ok(Field(Arc::new(field)))
    }

    fn make_tables(f: &Inner) -> Tables {
        let order = f.size - 1;
        let mut log = vec![0u32; f.size as usize];
        let mut exp = vec![0u32; order.max(1) as usize];
        if order == 1 {
            exp[0] = 1;
            return Tables { exp, log };
        }
        let factors = prime_factors(order);
        let g = (2..f.size as u32)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| Self::slow_pow(f, g, (order / r) as u128) != 1)
            })
            .expect("multiplicative group is cyclic");
        let mut x = 1u32;
        for i in 0..order {
            exp[i as usize] = x;
            log[x as usize] = i as u32;
            x = Self::slow_mul(f, x, g);
        }
        Tables { exp, log }
    }

    fn slow_mul(f: &Inner, a: u32, b: u32) -> u32 {
        if f.degree == 1 {
            return f.base.mul(a, b);
        }
        let q = f.base.size() as u32;
        let d = f.degree as usize;
        let da = Self::digits(a, q, d);
        let db = Self::digits(b, q, d);
        let mut prod = vec![0u32; 2 * d - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                prod[i + j] = f.base.add(prod[i + j], f.base.mul(x, y));
            }
        }
        let r = poly_rem(&f.base, &prod, &f.modulus);
        Self::undigits(&r, q)
    }

    fn slow_pow(f: &Inner, a: u32, mut e: u128) -> u32 {
        let mut r = 1u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = Self::slow_mul(f, r, b);
            }
            b = Self::slow_mul(f, b, b);
            e >>= 1;
        }
        r
    }

    fn digits(mut a: u32, q: u32, d: usize) -> Vec<u32> {
        let mut out = vec![0u32; d];
        for slot in out.iter_mut() {
            *slot = a % q;
            a /= q;
        }
        out
    }

    fn undigits(d: &[u32], q: u32) -> u32 {
        d.iter().rev().fold(0u64, |acc, &c| acc * q as u64 + c as u64) as u32
    }

    /// Whether the monic polynomial `[c0, ..., 1]` over this field is irreducible.
    pub fn is_irreducible(&self, coeffs: &[u32]) -> Result<bool> {
        if coeffs.len() < 2 || coeffs.last() != Some(&1) {
            return Err(Error::Argument("expected a monic polynomial of degree >= 1".into()));
        }
        if coeffs.iter().any(|&c| !self.contains(c)) {
            return Err(Error::Argument("coefficient outside the field".into()));
        }
        is_irreducible_over(&Base::Field(self.clone()), coeffs)
    }

    /// Default monic irreducible of degree `d` over this field.
    pub fn default_irreducible(&self, d: u32) -> Result<Vec<u32>> {
        default_modulus(&Base::Field(self.clone()), d)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Degree over the level below.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    /// Size of the level below (`q` for a tower GF(q^n), `p` for GF(p^e)).
    pub fn base_size(&self) -> u64 {
        self.0.base.size()
    }

    /// Degree over the prime field.
    pub fn prime_degree(&self) -> u32 {
        self.0.prime_degree
    }

    /// The level below, or `None` when it is the prime field.
    pub fn base(&self) -> Option<Field> {
        match &self.0.base {
            Base::Prime(_) => None,
            Base::Field(f) => Some(f.clone()),
        }
    }

    /// The level below as a field value (GF(p) for a prime-level field).
    pub fn base_field(&self) -> Field {
        match &self.0.base {
            Base::Prime(p) => Field::prime(*p).expect("valid prime"),
            Base::Field(f) => f.clone(),
        }
    }

    pub fn prime_field(&self) -> Field {
        Field::prime(self.0.p).expect("valid prime")
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.prime_degree == 1
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// Code of the polynomial-basis generator of this level over its base.
    pub fn generator(&self) -> u32 {
        if self.0.degree == 1 {
            // the level is the base itself; pick a primitive element of it
            return self.primitive_element();
        }
        self.0.base.size() as u32
    }

    pub fn primitive_element(&self) -> u32 {
        match &self.0.tables {
            Some(t) => t.exp[if self.0.size > 2 { 1 } else { 0 }],
            None => {
                let order = self.0.size - 1;
                let factors = prime_factors(order);
                (2..self.0.size as u32)
                    .find(|&g| factors.iter().all(|&r| self.pow(g, (order / r) as u128) != 1))
                    .expect("cyclic group")
            }
        }
    }

    pub fn contains(&self, a: u32) -> bool {
        (a as u64) < self.0.size
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut r, mut place) = (0u64, 1u64);
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            r += d as u64 * place;
            place *= p as u64;
            a /= p;
            b /= p;
        }
        r as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let mut a = a;
        let (mut r, mut place) = (0u64, 1u64);
        while a > 0 {
            let d = (p - a % p) % p;
            r += d as u64 * place;
            place *= p as u64;
            a /= p;
        }
        r as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.0.tables {
            Some(t) => {
                let order = t.exp.len() as u64;
                let s = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % order;
                t.exp[s as usize]
            }
            None => Self::slow_mul(&self.0, a, b),
        }
    }

    /// Multiply by an element of the prime field given as an integer `0..p`.
    pub fn scale_prime(&self, c: u32, a: u32) -> u32 {
        match c {
            0 => 0,
            1 => a,
            _ => self.mul(c, a),
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::domain("inverse of zero"));
        }
        Ok(match &self.0.tables {
            Some(t) => {
                let order = t.exp.len() as u64;
                t.exp[((order - t.log[a as usize] as u64) % order) as usize]
            }
            None => self.pow(a, (self.0.size - 2) as u128),
        })
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u128) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.0.size - 1) as u128;
        let e = e % order;
        match &self.0.tables {
            Some(t) => {
                let s = (t.log[a as usize] as u128 * e) % order;
                t.exp[s as usize]
            }
            None => Self::slow_pow(&self.0, a, e),
        }
    }

    /// `a^(q^s)` where `q` is the size of the level below.
    pub fn frobenius(&self, a: u32, s: u32) -> u32 {
        let q = self.base_size() as u128;
        self.pow_exp_power(a, q, s)
    }

    /// `a^(p^r)`.
    pub fn frobenius_prime(&self, a: u32, r: u32) -> u32 {
        self.pow_exp_power(a, self.0.p as u128, r)
    }

    fn pow_exp_power(&self, a: u32, b: u128, s: u32) -> u32 {
        if a == 0 || a == 1 {
            return a;
        }
        let order = (self.0.size - 1) as u128;
        let mut e = 1u128;
        for _ in 0..s {
            e = (e * b) % order;
        }
        if e == 0 {
            e = order;
        }
        self.pow(a, e)
    }

    /// Checked Frobenius: `s` must lie in `0..n`.
    pub fn frobenius_checked(&self, a: u32, s: u32) -> Result<u32> {
        if s >= self.0.degree {
            return Err(Error::Argument(format!(
                "frobenius exponent {s} out of range 0..{}",
                self.0.degree
            )));
        }
        Ok(self.frobenius(a, s))
    }

    /// Norm down to the level below: `a^((q^n - 1)/(q - 1))`.
    pub fn norm(&self, a: u32) -> u32 {
        let q = self.base_size() as u128;
        let e = (self.0.size as u128 - 1) / (q - 1);
        self.pow(a, e)
    }

    /// Trace down to the level below: sum of the `n` conjugates.
    pub fn trace(&self, a: u32) -> u32 {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.0.degree {
            t = self.add(t, x);
            x = self.frobenius(x, 1);
        }
        t
    }

    /// Norm to the subfield of size `p^k` (`k` must divide the prime degree).
    pub fn norm_to_subfield(&self, a: u32, k: u32) -> u32 {
        let r = (self.0.p as u128).pow(k);
        self.pow(a, (self.0.size as u128 - 1) / (r - 1))
    }

    /// Absolute trace to the prime field.
    pub fn prime_trace(&self, a: u32) -> u32 {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.0.prime_degree {
            t = self.add(t, x);
            x = self.frobenius_prime(x, 1);
        }
        t
    }

    /// Quadratic character: `1` for nonzero squares, `-1` for non-squares, `0` at zero.
    pub fn quadratic_character(&self, a: u32) -> i32 {
        if a == 0 {
            return 0;
        }
        if self.0.p == 2 {
            return 1;
        }
        if self.pow(a, ((self.0.size - 1) / 2) as u128) == 1 {
            1
        } else {
            -1
        }
    }

    /// Coefficients over the level below (length = degree).
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        Self::digits(a, self.base_size() as u32, self.0.degree as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> u32 {
        Self::undigits(c, self.base_size() as u32)
    }

    /// Flattened prime-field coordinates (length = prime degree).
    pub fn prime_digits(&self, a: u32) -> Vec<u32> {
        Self::digits(a, self.0.p, self.0.prime_degree as usize)
    }

    pub fn from_prime_digits(&self, d: &[u32]) -> u32 {
        Self::undigits(d, self.0.p)
    }

    /// Iterator over all element codes.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.size as u32
    }

    /// The prime-field basis `p^0, p^1, ...` of the flattened coordinates.
    pub fn prime_basis(&self) -> Vec<u32> {
        (0..self.0.prime_degree)
            .map(|i| (self.0.p as u64).pow(i) as u32)
            .collect()
    }

    /// The polynomial basis `1, w, ..., w^(n-1)` over the level below.
    pub fn polynomial_basis(&self) -> Vec<u32> {
        let q = self.base_size();
        (0..self.0.degree).map(|i| q.pow(i) as u32).collect()
    }

    /// Elements of the subfield of size `p^k` (requires `k | prime degree`).
    pub fn subfield_elements(&self, k: u32) -> Vec<u32> {
        let r = (self.0.p as u128).pow(k);
        self.elements()
            .filter(|&a| self.pow(a, r) == a)
            .collect()
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        FieldElement::new(self, code)
    }

    /// Text descriptor `p^e[^n][:modulus=[..]...]`.
    pub fn to_text(&self) -> String {
        match self.base() {
            None => format!(
                "{}^{}:modulus={}",
                self.0.p,
                self.0.degree,
                fmt_list(&self.0.modulus)
            ),
            Some(b) => {
                let inner = b.base().is_none();
                if inner {
                    format!(
                        "{}^{}^{}:modulus={}:modulus={}",
                        self.0.p,
                        b.degree(),
                        self.0.degree,
                        fmt_list(b.modulus()),
                        fmt_list(&self.0.modulus)
                    )
                } else {
                    format!("tower(size={})", self.0.size)
                }
            }
        }
    }

    /// Parse `q`, `p^e` or `p^e^n`, each optionally followed by `:modulus=[c0,...]` per level.
    pub fn parse(text: &str) -> Result<Field> {
        let mut parts = text.trim().split(':');
        let head = parts.next().unwrap_or("");
        let nums: Vec<u32> = head
            .split('^')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad field descriptor '{text}'")))
            })
            .collect::<Result<_>>()?;
        let mut moduli = Vec::new();
        for part in parts {
            let part = part.trim();
            let body = part
                .strip_prefix("modulus=")
                .ok_or_else(|| Error::Parse(format!("unknown descriptor option '{part}'")))?;
            moduli.push(parse_list(body)?);
        }
        let mut moduli = moduli.into_iter();
        match nums.as_slice() {
            [q] => {
                let (p, e) = prime_power(*q).ok_or_else(|| Error::Argument(format!("{q} is not a prime power")))?;
                match moduli.next() {
                    Some(m) => Field::with_modulus(p, e, m),
                    None => Field::new(p, e),
                }
            }
            [p, e] => match moduli.next() {
                Some(m) => Field::with_modulus(*p, *e, m),
                None => Field::new(*p, *e),
            },
            [p, e, n] => {
                let base = match moduli.next() {
                    Some(m) => Field::with_modulus(*p, *e, m)?,
                    None => Field::new(*p, *e)?,
                };
                base.extension(*n, moduli.next())
            }
            _ => Err(Error::Parse(format!("bad field descriptor '{text}'"))),
        }
    }

    pub fn descriptor(&self) -> FieldSpec {
        match self.base() {
            None => FieldSpec {
                p: self.0.p,
                e: self.0.degree,
                modulus: self.0.modulus.clone(),
                ext: None,
            },
            Some(b) => {
                let mut spec = b.descriptor();
                spec.ext = Some(ExtSpec {
                    n: self.0.degree,
                    modulus: self.0.modulus.clone(),
                });
                spec
            }
        }
    }
}

/// `(p, e)` with `q = p^e`, if `q` is a prime power.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut r = q;
    let mut e = 0;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

fn fmt_list(v: &[u32]) -> String {
    let body: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", body.join(","))
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    let body = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..] list, got '{s}'")))?;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|c| {
            c.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad integer '{c}'")))
        })
        .collect()
}

/// Serializable field descriptor used by the file formats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext: Option<ExtSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtSpec {
    pub n: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<Field> {
        let base = Field::with_modulus(self.p, self.e, self.modulus.clone())?;
        match &self.ext {
            None => Ok(base),
            Some(x) => base.extension(x.n, Some(x.modulus.clone())),
        }
    }
}

/// Arithmetic operations accepted by [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(u64),
}

/// An element paired with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    code: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl FieldElement {
    pub fn new(field: &Field, code: u32) -> Result<Self> {
        if !field.contains(code) {
            return Err(Error::Argument(format!(
                "code {code} outside field of size {}",
                field.size()
            )));
        }
        Ok(FieldElement {
            field: field.clone(),
            code,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.code)
    }

    fn same(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Structural("operands from different fields".into()));
        }
        Ok(())
    }

    fn wrap(&self, code: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            code,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.code, other.code)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.div(self.code, other.code)?))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.code)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.wrap(self.field.pow(self.code, e as u128))
    }

    /// `a^(q^s)` with `0 <= s < n`.
    pub fn frobenius(&self, s: u32) -> Result<FieldElement> {
        Ok(self.wrap(self.field.frobenius_checked(self.code, s)?))
    }

    /// Norm and trace down to the level below, both as elements of that level.
    pub fn norm_trace(&self) -> Result<(FieldElement, FieldElement)> {
        let base = self.field.base_field();
        let n = self.field.norm(self.code);
        let t = self.field.trace(self.code);
        Ok((FieldElement::new(&base, n)?, FieldElement::new(&base, t)?))
    }
}

/// Dispatch one arithmetic operation; `b` is ignored for `Inv` and `Pow`.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b),
        FieldOp::Inv => {
            a.same(b)?;
            a.inv()
        }
        FieldOp::Pow(e) => {
            a.same(b)?;
            Ok(a.pow(e))
        }
    }
}
