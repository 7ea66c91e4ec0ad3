//! Arithmetic in `F_q`, `q = p^k` with `p` an odd prime.
//!
//! Elements are stored as a canonical integer encoding: the coefficient
//! vector `(c_0, .., c_{k-1})` of the residue class modulo the defining
//! polynomial becomes `c_0 + c_1 p + .. + c_{k-1} p^{k-1}`. For prime fields
//! this is simply the residue in `[0, p)`. Polynomials and the hot loops work
//! on these raw `u64` encodings through a shared [`Field`] handle, while
//! [`FqElem`] is the checked value type used at API boundaries.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Largest field order accepted. The encoding must fit in a `u64`.
pub const MAX_ORDER: u64 = (1 << 63) - 1;

/// Description of `F_q`: odd prime `p`, extension degree `k` and, for
/// `k > 1`, the monic irreducible modulus over `F_p` (constant term first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
    pub modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Self {
        FieldSpec {
            p,
            k: 1,
            modulus: None,
        }
    }

    pub fn extension(p: u64, modulus: Vec<u64>) -> Self {
        let k = modulus.len().saturating_sub(1) as u32;
        FieldSpec {
            p,
            k,
            modulus: Some(modulus),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "p": self.p, "k": self.k, "modulus": self.modulus })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.k)
        }
    }
}

/// Deterministic primality test for `u64` (trial division up to 2^32 would be
/// too slow, so Miller-Rabin with the standard 12-base witness set).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Quadratic character of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Squareness {
    Square,
    NonSquare,
    Zero,
}

struct FieldInner {
    spec: FieldSpec,
    q: u64,
    /// `p^i` for `i < k`, used to encode and decode extension elements.
    place: Vec<u64>,
}

/// Shared, validated handle on a [`FieldSpec`]. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.0.spec)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl Field {
    /// Validates `spec` and builds the handle.
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let p = spec.p;
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not an odd prime")));
        }
        if spec.k == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let mut q: u64 = 1;
        let mut place = Vec::with_capacity(spec.k as usize);
        for _ in 0..spec.k {
            place.push(q);
            q = q
                .checked_mul(p)
                .filter(|&v| v <= MAX_ORDER)
                .ok_or_else(|| Error::InvalidField(format!("p^k exceeds {MAX_ORDER}")))?;
        }
        match (&spec.modulus, spec.k) {
            (None, 1) => {}
            (Some(m), 1) if m.is_empty() => {}
            (None, _) => {
                return Err(Error::InvalidField(
                    "extension fields require a modulus polynomial".into(),
                ))
            }
            (Some(m), k) => {
                if m.len() != k as usize + 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus has degree {}, expected {k}",
                        m.len() as i64 - 1
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField(
                        "modulus coefficient out of range".into(),
                    ));
                }
                if m[k as usize] != 1 {
                    return Err(Error::InvalidField("modulus must be monic".into()));
                }
            }
        }
        let spec = if spec.k == 1 {
            FieldSpec::prime(p)
        } else {
            spec
        };
        let field = Field(Arc::new(FieldInner { spec, q, place }));
        if let Some(m) = field.spec().modulus.clone() {
            let base = Field::prime(p)?;
            let poly = crate::poly::Poly::from_raw(&base, m);
            if !crate::factor::is_irreducible(&poly)? {
                return Err(Error::InvalidField("modulus is reducible over F_p".into()));
            }
        }
        Ok(field)
    }

    pub fn prime(p: u64) -> Result<Self> {
        Field::new(FieldSpec::prime(p))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u64 {
        self.0.spec.p
    }

    pub fn k(&self) -> u32 {
        self.0.spec.k
    }

    pub fn order(&self) -> u64 {
        self.0.q
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.0.spec.k == 1
    }

    /// Builds a checked element from a raw encoding in `[0, q)`.
    pub fn elem(&self, raw: u64) -> Result<FqElem> {
        if raw >= self.order() {
            return Err(Error::OutOfRange(raw, self.order()));
        }
        Ok(FqElem {
            field: self.clone(),
            raw,
        })
    }

    /// Element from an integer, reduced into the prime subfield.
    pub fn from_int(&self, v: i64) -> FqElem {
        FqElem {
            field: self.clone(),
            raw: self.reduce_int(v),
        }
    }

    pub fn zero(&self) -> FqElem {
        FqElem {
            field: self.clone(),
            raw: 0,
        }
    }

    pub fn one(&self) -> FqElem {
        FqElem {
            field: self.clone(),
            raw: 1,
        }
    }

    /// Element from a coordinate vector (low coordinate first).
    pub fn from_coords(&self, coords: &[u64]) -> Result<FqElem> {
        if coords.len() > self.k() as usize || coords.iter().any(|&c| c >= self.p()) {
            return Err(Error::InvalidField(format!(
                "coordinates {coords:?} do not describe an element of {}",
                self.spec()
            )));
        }
        Ok(FqElem {
            field: self.clone(),
            raw: self.encode(coords),
        })
    }

    /// All `q` elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(move |raw| FqElem {
            field: self.clone(),
            raw,
        })
    }

    // Raw arithmetic on canonical encodings. Callers guarantee inputs < q.

    #[inline]
    pub(crate) fn reduce_int(&self, v: i64) -> u64 {
        let p = self.p() as i128;
        (((v as i128) % p + p) % p) as u64
    }

    pub(crate) fn decode(&self, raw: u64) -> Vec<u64> {
        let p = self.p();
        let mut out = Vec::with_capacity(self.k() as usize);
        let mut r = raw;
        for _ in 0..self.k() {
            out.push(r % p);
            r /= p;
        }
        out
    }

    pub(crate) fn encode(&self, coords: &[u64]) -> u64 {
        coords.iter().zip(&self.0.place).map(|(&c, &w)| c * w).sum()
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        if self.is_prime_field() {
            let p = self.p();
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else {
            let p = self.p();
            let (mut a, mut b, mut out, mut w) = (a, b, 0, 1);
            for _ in 0..self.k() {
                out += ((a % p + b % p) % p) * w;
                a /= p;
                b /= p;
                w = w.wrapping_mul(p);
            }
            out
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u64) -> u64 {
        if self.is_prime_field() {
            if a == 0 {
                0
            } else {
                self.p() - a
            }
        } else {
            let p = self.p();
            let (mut a, mut out, mut w) = (a, 0, 1);
            for _ in 0..self.k() {
                out += ((p - a % p) % p) * w;
                a /= p;
                w = w.wrapping_mul(p);
            }
            out
        }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if self.is_prime_field() {
            let p = self.p();
            if p < (1 << 32) {
                a * b % p
            } else {
                (a as u128 * b as u128 % p as u128) as u64
            }
        } else {
            self.mul_ext(a, b)
        }
    }

    fn mul_ext(&self, a: u64, b: u64) -> u64 {
        let p = self.p() as u128;
        let k = self.k() as usize;
        let (x, y) = (self.decode(a), self.decode(b));
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u128 * yj as u128) % p;
            }
        }
        let m = self.0.spec.modulus.as_ref().expect("extension modulus");
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (j, &mj) in m.iter().take(k).enumerate() {
                let idx = top - k + j;
                prod[idx] = (prod[idx] + (p - c) * mj as u128) % p;
            }
        }
        let coords: Vec<u64> = prod[..k].iter().map(|&c| c as u64).collect();
        self.encode(&coords)
    }

    pub(crate) fn pow_raw(&self, mut base: u64, mut e: u128) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element; returns `None` for zero.
    pub(crate) fn inv_raw(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if self.is_prime_field() {
            let p = self.p() as i128;
            let (mut r0, mut r1) = (p, a as i128);
            let (mut t0, mut t1) = (0i128, 1i128);
            while r1 != 0 {
                let qt = r0 / r1;
                (r0, r1) = (r1, r0 - qt * r1);
                (t0, t1) = (t1, t0 - qt * t1);
            }
            Some(((t0 % p + p) % p) as u64)
        } else {
            Some(self.pow_raw(a, self.order() as u128 - 2))
        }
    }

    #[inline]
    pub(crate) fn squareness_raw(&self, a: u64) -> Squareness {
        if a == 0 {
            return Squareness::Zero;
        }
        if self.pow_raw(a, (self.order() as u128 - 1) / 2) == 1 {
            Squareness::Square
        } else {
            Squareness::NonSquare
        }
    }

    /// JSON form of a raw element: an integer over prime fields, the
    /// coordinate list otherwise.
    pub(crate) fn raw_to_json(&self, raw: u64) -> Value {
        if self.is_prime_field() {
            json!(raw)
        } else {
            json!(self.decode(raw))
        }
    }
}

/// An element of `F_q` together with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FqElem {
    field: Field,
    raw: u64,
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_prime_field() {
            write!(f, "{}", self.raw)
        } else {
            write!(f, "{:?}", self.field.decode(self.raw))
        }
    }
}

impl FqElem {
    pub(crate) fn from_raw_unchecked(field: &Field, raw: u64) -> Self {
        debug_assert!(raw < field.order());
        FqElem {
            field: field.clone(),
            raw,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Canonical integer encoding.
    pub fn raw(&self) -> u64 {
        self.raw
    }

    /// Coordinates over the prime field, low first (length `k`).
    pub fn coords(&self) -> Vec<u64> {
        self.field.decode(self.raw)
    }

    pub fn is_zero(&self) -> bool {
        self.raw == 0
    }

    fn same_field(&self, other: &FqElem) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &FqElem) -> Result<FqElem> {
        self.same_field(other)?;
        Ok(self.with_raw(self.field.add_raw(self.raw, other.raw)))
    }

    pub fn sub(&self, other: &FqElem) -> Result<FqElem> {
        self.same_field(other)?;
        Ok(self.with_raw(self.field.sub_raw(self.raw, other.raw)))
    }

    pub fn neg(&self) -> FqElem {
        self.with_raw(self.field.neg_raw(self.raw))
    }

    pub fn mul(&self, other: &FqElem) -> Result<FqElem> {
        self.same_field(other)?;
        Ok(self.with_raw(self.field.mul_raw(self.raw, other.raw)))
    }

    pub fn inv(&self) -> Result<FqElem> {
        self.field
            .inv_raw(self.raw)
            .map(|r| self.with_raw(r))
            .ok_or(Error::ZeroInverse)
    }

    /// `self^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, e: u128) -> FqElem {
        self.with_raw(self.field.pow_raw(self.raw, e))
    }

    /// Euler's criterion: `a^((q-1)/2)` decides squareness of nonzero `a`.
    pub fn squareness(&self) -> Squareness {
        self.field.squareness_raw(self.raw)
    }

    pub fn to_json(&self) -> Value {
        self.field.raw_to_json(self.raw)
    }

    fn with_raw(&self, raw: u64) -> FqElem {
        FqElem {
            field: self.field.clone(),
            raw,
        }
    }
}
