//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are raw field encodings, lowest degree first, with no
//! trailing zeros; the zero polynomial has no coefficients.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{Field, FqElem};

/// Default guard on the degree of compositions and iterates.
pub const DEFAULT_DEGREE_CAP: usize = 512;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field.spec(), self.to_text())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = FqElem::from_raw_unchecked(&self.field, c);
            match (i, c) {
                (0, _) => write!(f, "{coef}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{coef}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{coef}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Builds a polynomial from raw encodings (each must be `< q`).
    pub(crate) fn from_raw(field: &Field, mut coeffs: Vec<u64>) -> Poly {
        debug_assert!(coeffs.iter().all(|&c| c < field.order()));
        trim(&mut coeffs);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::from_raw(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::from_raw(field, vec![1])
    }

    /// The identity polynomial `x`.
    pub fn x(field: &Field) -> Poly {
        Poly::from_raw(field, vec![0, 1])
    }

    pub fn constant(c: &FqElem) -> Poly {
        Poly::from_raw(c.field(), vec![c.raw()])
    }

    /// Polynomial with integer coefficients reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        let raw = coeffs.iter().map(|&c| field.reduce_int(c)).collect();
        Poly::from_raw(field, raw)
    }

    /// Polynomial from canonical encodings, validated against `q`.
    pub fn from_encodings(field: &Field, coeffs: &[u64]) -> Result<Poly> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= field.order()) {
            return Err(Error::OutOfRange(bad, field.order()));
        }
        Ok(Poly::from_raw(field, coeffs.to_vec()))
    }

    pub fn from_elems(field: &Field, coeffs: &[FqElem]) -> Result<Poly> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Poly::from_raw(
            field,
            coeffs.iter().map(FqElem::raw).collect(),
        ))
    }

    /// `x - root`.
    pub fn linear(root: &FqElem) -> Poly {
        let f = root.field();
        Poly::from_raw(f, vec![f.neg_raw(root.raw()), 1])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn raw_coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeffs(&self) -> Vec<FqElem> {
        self.coeffs
            .iter()
            .map(|&c| FqElem::from_raw_unchecked(&self.field, c))
            .collect()
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        FqElem::from_raw_unchecked(&self.field, self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial (negative infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub(crate) fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> FqElem {
        FqElem::from_raw_unchecked(&self.field, self.lc_raw())
    }

    pub(crate) fn lc_raw(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc_raw() == 1
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(Poly::from_raw(
            &self.field,
            add_slices(&self.field, &self.coeffs, &other.coeffs),
        ))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(Poly::from_raw(
            &self.field,
            sub_slices(&self.field, &self.coeffs, &other.coeffs),
        ))
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&c| f.neg_raw(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(Poly::from_raw(
            &self.field,
            mul_slices(&self.field, &self.coeffs, &other.coeffs),
        ))
    }

    pub fn scale(&self, c: &FqElem) -> Result<Poly> {
        if c.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.scale_raw(c.raw()))
    }

    pub(crate) fn scale_raw(&self, c: u64) -> Poly {
        let f = &self.field;
        Poly::from_raw(f, self.coeffs.iter().map(|&a| f.mul_raw(a, c)).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.field.inv_raw(self.lc_raw()) {
            Some(inv) if inv != 1 => self.scale_raw(inv),
            _ => self.clone(),
        }
    }

    /// `(quotient, remainder)` with `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let f = &self.field;
        let d = divisor.deg();
        if self.coeffs.len() <= d {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv = f
            .inv_raw(divisor.lc_raw())
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = f.mul_raw(rem[top], inv);
            quot[top - d] = c;
            if c == 0 {
                continue;
            }
            for (j, &bj) in divisor.coeffs.iter().enumerate() {
                let idx = top - d + j;
                rem[idx] = f.sub_raw(rem[idx], f.mul_raw(c, bj));
            }
        }
        rem.truncate(d);
        Ok((Poly::from_raw(f, quot), Poly::from_raw(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        if divisor.is_monic() && self.field == divisor.field {
            let mut r = self.coeffs.clone();
            rem_monic(&self.field, &mut r, &divisor.coeffs);
            return Ok(Poly::from_raw(&self.field, r));
        }
        Ok(self.divmod(divisor)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        Ok(Poly::from_raw(
            &self.field,
            gcd_slices(&self.field, &self.coeffs, &other.coeffs),
        ))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FqElem) -> Result<FqElem> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(FqElem::from_raw_unchecked(
            &self.field,
            self.eval_raw(x.raw()),
        ))
    }

    #[inline]
    pub(crate) fn eval_raw(&self, x: u64) -> u64 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add_raw(f.mul_raw(acc, x), c))
    }

    /// `self(inner(x))` with the default degree cap.
    pub fn compose(&self, inner: &Poly) -> Result<Poly> {
        self.compose_capped(inner, DEFAULT_DEGREE_CAP)
    }

    /// `self(inner(x))` by Horner's rule on polynomials, refusing results of
    /// degree above `cap`.
    pub fn compose_capped(&self, inner: &Poly, cap: usize) -> Result<Poly> {
        self.check(inner)?;
        let degree = self.deg() * inner.deg();
        if degree > cap {
            return Err(Error::DegreeCap { degree, cap });
        }
        let f = &self.field;
        let mut acc: Vec<u64> = Vec::new();
        for &c in self.coeffs.iter().rev() {
            acc = mul_slices(f, &acc, &inner.coeffs);
            if acc.is_empty() {
                acc.push(c);
            } else {
                acc[0] = f.add_raw(acc[0], c);
            }
        }
        Ok(Poly::from_raw(f, acc))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul_raw(c, (i as u64) % f.p()))
            .collect();
        Poly::from_raw(f, coeffs)
    }

    /// True iff `gcd(a, a')` is constant and `a'` is not identically zero.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = self.derivative();
        if d.is_zero() {
            return Ok(false);
        }
        Ok(self.gcd(&d)?.is_constant())
    }

    /// `x -> 2*center - x` reflection followed by `(-1)^deg` so that monic
    /// inputs stay monic.
    pub fn reflect(&self, center: &FqElem) -> Result<Poly> {
        let f = &self.field;
        let two_c = f.add_raw(center.raw(), center.raw());
        let inner = Poly::from_raw(f, vec![two_c, f.neg_raw(1)]);
        let r = self.compose_capped(&inner, usize::MAX)?;
        Ok(if self.deg() % 2 == 1 { r.neg() } else { r })
    }

    /// Comma-separated coefficient list, constant term first.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the text format of [`Poly::to_text`]. Over a prime field any
    /// integer is accepted and reduced mod `p`; over an extension field each
    /// entry must be a canonical encoding in `[0, q)`.
    pub fn parse(field: &Field, text: &str) -> Result<Poly> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut raw = Vec::new();
        for tok in text.split(',') {
            let tok = tok.trim();
            let v: i128 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))?;
            if field.is_prime_field() {
                let p = field.p() as i128;
                raw.push((((v % p) + p) % p) as u64);
            } else {
                if v < 0 || v >= field.order() as i128 {
                    return Err(Error::Parse(format!(
                        "coefficient {v} outside [0, {})",
                        field.order()
                    )));
                }
                raw.push(v as u64);
            }
        }
        Ok(Poly::from_raw(field, raw))
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .coeffs
            .iter()
            .map(|&c| self.field.raw_to_json(c))
            .collect::<Vec<_>>())
    }

    /// Ordering key: degree first, then the coefficient tuple (constant
    /// term first) compared lexicographically on canonical encodings.
    pub(crate) fn canonical_key(&self) -> (usize, &[u64]) {
        (self.coeffs.len(), &self.coeffs)
    }
}

/// A monic quadratic `x^2 + a x + b`, also written `(x - gamma)^2 + gamma + c`.
#[derive(Clone, PartialEq, Eq)]
pub struct MonicQuadratic {
    field: Field,
    a: u64,
    b: u64,
    gamma: u64,
    c: u64,
}

impl fmt::Debug for MonicQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MonicQuadratic[{}]({})",
            self.field.spec(),
            self.as_poly()
        )
    }
}

impl MonicQuadratic {
    pub fn new(a: &FqElem, b: &FqElem) -> Result<MonicQuadratic> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(MonicQuadratic::from_raw(a.field(), a.raw(), b.raw()))
    }

    pub(crate) fn from_raw(field: &Field, a: u64, b: u64) -> MonicQuadratic {
        let inv2 = field.inv_raw(2).expect("odd characteristic");
        let gamma = field.neg_raw(field.mul_raw(a, inv2));
        let c = field.sub_raw(field.sub_raw(b, field.mul_raw(gamma, gamma)), gamma);
        MonicQuadratic {
            field: field.clone(),
            a,
            b,
            gamma,
            c,
        }
    }

    /// `(x - gamma)^2 + gamma + c`.
    pub fn from_gamma_c(gamma: &FqElem, c: &FqElem) -> Result<MonicQuadratic> {
        let f = gamma.field();
        if c.field() != f {
            return Err(Error::FieldMismatch);
        }
        let a = f.neg_raw(f.add_raw(gamma.raw(), gamma.raw()));
        let b = f.add_raw(
            f.add_raw(f.mul_raw(gamma.raw(), gamma.raw()), gamma.raw()),
            c.raw(),
        );
        Ok(MonicQuadratic::from_raw(f, a, b))
    }

    pub fn from_poly(p: &Poly) -> Result<MonicQuadratic> {
        if p.degree() != Some(2) {
            return Err(Error::Parse(format!("{p} is not quadratic")));
        }
        if !p.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(MonicQuadratic::from_raw(
            p.field(),
            p.coeff(1).raw(),
            p.coeff(0).raw(),
        ))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn a(&self) -> FqElem {
        FqElem::from_raw_unchecked(&self.field, self.a)
    }

    pub fn b(&self) -> FqElem {
        FqElem::from_raw_unchecked(&self.field, self.b)
    }

    /// Critical point `-a/2`.
    pub fn gamma(&self) -> FqElem {
        FqElem::from_raw_unchecked(&self.field, self.gamma)
    }

    pub fn c(&self) -> FqElem {
        FqElem::from_raw_unchecked(&self.field, self.c)
    }

    pub fn as_poly(&self) -> Poly {
        Poly::from_raw(&self.field, vec![self.b, self.a, 1])
    }

    #[inline]
    pub(crate) fn eval_raw(&self, x: u64) -> u64 {
        let f = &self.field;
        f.add_raw(f.mul_raw(f.add_raw(x, self.a), x), self.b)
    }

    pub fn eval(&self, x: &FqElem) -> Result<FqElem> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(FqElem::from_raw_unchecked(
            &self.field,
            self.eval_raw(x.raw()),
        ))
    }

    /// `[b, a]`, the report encoding of `x^2 + a x + b`.
    pub fn to_json(&self) -> Value {
        json!([
            self.field.raw_to_json(self.b),
            self.field.raw_to_json(self.a)
        ])
    }
}

/// The `n`-th iterate `f^n`, with `f^0 = x`.
pub fn iterate(f: &MonicQuadratic, n: u32, cap: usize) -> Result<Poly> {
    let degree = 1usize.checked_shl(n).filter(|&d| n < 63 && d <= cap);
    if degree.is_none() {
        return Err(Error::DegreeCap {
            degree: if n < 63 { 1usize << n } else { usize::MAX },
            cap,
        });
    }
    let quad = f.as_poly();
    let mut acc = Poly::x(f.field());
    for _ in 0..n {
        acc = quad.compose_capped(&acc, cap)?;
    }
    Ok(acc)
}

// Slice-level kernels shared with the factoring code.

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn add_slices(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = f.add_raw(*o, s);
    }
    out
}

pub(crate) fn sub_slices(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (o, &s) in out.iter_mut().zip(b) {
        *o = f.sub_raw(*o, s);
    }
    out
}

/// Whether `terms` products of reduced prime-field residues can be summed in
/// a `u64` before reducing.
#[inline]
pub(crate) fn lazy_ok(f: &Field, terms: usize) -> bool {
    if !f.is_prime_field() {
        return false;
    }
    let p1 = f.p() - 1;
    p1.checked_mul(p1)
        .and_then(|sq| sq.checked_mul(terms as u64 + 1))
        .is_some()
}

pub(crate) fn mul_slices(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    if lazy_ok(f, a.len().min(b.len())) {
        let p = f.p();
        let mut acc = vec![0u64; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (o, &bj) in acc[i..i + b.len()].iter_mut().zip(b) {
                *o += ai * bj;
            }
        }
        for v in acc.iter_mut() {
            *v %= p;
        }
        trim(&mut acc);
        acc
    } else {
        let mut acc = vec![0u64; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                acc[i + j] = f.add_raw(acc[i + j], f.mul_raw(ai, bj));
            }
        }
        trim(&mut acc);
        acc
    }
}

/// Reduces `r` in place modulo the monic polynomial `m`.
pub(crate) fn rem_monic(f: &Field, r: &mut Vec<u64>, m: &[u64]) {
    let d = m.len() - 1;
    if r.len() <= d {
        trim(r);
        return;
    }
    if lazy_ok(f, d + 1) {
        let p = f.p();
        for top in (d..r.len()).rev() {
            let c = r[top] % p;
            if c == 0 {
                continue;
            }
            let negc = p - c;
            let base = top - d;
            for (o, &mj) in r[base..top].iter_mut().zip(&m[..d]) {
                *o += negc * mj;
            }
        }
        r.truncate(d);
        for v in r.iter_mut() {
            *v %= p;
        }
    } else {
        for top in (d..r.len()).rev() {
            let c = r[top];
            if c == 0 {
                continue;
            }
            let base = top - d;
            for (j, &mj) in m[..d].iter().enumerate() {
                r[base + j] = f.sub_raw(r[base + j], f.mul_raw(c, mj));
            }
        }
        r.truncate(d);
    }
    trim(r);
}

pub(crate) fn mulmod(f: &Field, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    let mut prod = mul_slices(f, a, b);
    rem_monic(f, &mut prod, m);
    prod
}

/// `base^e mod m` for monic `m`.
pub(crate) fn powmod(f: &Field, base: &[u64], mut e: u128, m: &[u64]) -> Vec<u64> {
    let mut b = base.to_vec();
    rem_monic(f, &mut b, m);
    let mut acc = vec![1u64];
    rem_monic(f, &mut acc, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(f, &b, &b, m);
        }
    }
    acc
}

fn make_monic(f: &Field, v: &mut [u64]) {
    if let Some(&lc) = v.last() {
        if lc != 1 {
            let inv = f.inv_raw(lc).expect("nonzero leading coefficient");
            for c in v.iter_mut() {
                *c = f.mul_raw(*c, inv);
            }
        }
    }
}

/// Monic gcd by the Euclidean algorithm; `gcd(0, 0)` is returned as zero.
pub(crate) fn gcd_slices(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        make_monic(f, &mut y);
        rem_monic(f, &mut x, &y);
        std::mem::swap(&mut x, &mut y);
    }
    make_monic(f, &mut x);
    x
}
