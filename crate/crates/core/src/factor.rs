//! Irreducibility testing and complete factorization over `F_q`, `q` odd.
//!
//! The pipeline is the classical one: squarefree decomposition, then
//! distinct-degree factorization, then Cantor-Zassenhaus equal-degree
//! splitting. All three lean on [`FrobeniusMap`], the `F_q`-linear map
//! `h -> h^q` modulo a fixed polynomial, precomputed as a matrix so that each
//! application costs one dense matrix-vector product.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{Field, FqElem};
use crate::poly::{gcd_slices, lazy_ok, mulmod, powmod, rem_monic, sub_slices, trim, Poly};

/// Attempts allowed for one equal-degree split before giving up.
pub const SPLIT_RETRY_CAP: u32 = 256;

/// Matrix of `x^(i q) mod m` for `i < deg m`.
pub(crate) struct FrobeniusMap {
    field: Field,
    modulus: Vec<u64>,
    n: usize,
    rows: Vec<u64>,
}

impl FrobeniusMap {
    /// `modulus` must be monic of degree at least one.
    pub(crate) fn new(field: &Field, modulus: &[u64]) -> FrobeniusMap {
        let n = modulus.len() - 1;
        let q = field.order();
        let mut rows = vec![0u64; n * n];
        let mut row = vec![1u64];
        rem_monic(field, &mut row, modulus);
        let shift = (q as usize) < n;
        let xq = if shift {
            Vec::new()
        } else {
            powmod(field, &[0, 1], q as u128, modulus)
        };
        for i in 0..n {
            rows[i * n..i * n + row.len()].copy_from_slice(&row);
            if i + 1 == n {
                break;
            }
            row = if shift {
                let mut shifted = vec![0u64; q as usize];
                shifted.extend_from_slice(&row);
                rem_monic(field, &mut shifted, modulus);
                shifted
            } else {
                mulmod(field, &row, &xq, modulus)
            };
        }
        FrobeniusMap {
            field: field.clone(),
            modulus: modulus.to_vec(),
            n,
            rows,
        }
    }

    /// `h^q mod modulus` for `h` already reduced.
    pub(crate) fn apply(&self, h: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let n = self.n;
        let mut out = vec![0u64; n];
        if lazy_ok(f, n) {
            for (i, &hi) in h.iter().enumerate() {
                if hi == 0 {
                    continue;
                }
                let row = &self.rows[i * n..(i + 1) * n];
                for (o, &r) in out.iter_mut().zip(row) {
                    *o += hi * r;
                }
            }
            let p = f.p();
            for v in out.iter_mut() {
                *v %= p;
            }
        } else {
            // h^q = sum h_i x^(iq) since h_i^q = h_i in F_q
            for (i, &hi) in h.iter().enumerate() {
                if hi == 0 {
                    continue;
                }
                let row = &self.rows[i * n..(i + 1) * n];
                for (o, &r) in out.iter_mut().zip(row) {
                    *o = f.add_raw(*o, f.mul_raw(hi, r));
                }
            }
        }
        trim(&mut out);
        out
    }

    fn x_reduced(&self) -> Vec<u64> {
        let mut x = vec![0, 1];
        rem_monic(&self.field, &mut x, &self.modulus);
        x
    }
}

fn require_nonconstant(a: &Poly) -> Result<()> {
    match a.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::ConstantPolynomial),
        _ => Ok(()),
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
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

/// Rabin's test: `a` of degree `n` is irreducible iff `x^(q^n) = x mod a`
/// and `gcd(x^(q^(n/r)) - x, a) = 1` for every prime `r | n`.
pub fn is_irreducible(a: &Poly) -> Result<bool> {
    require_nonconstant(a)?;
    let a = a.monic();
    let n = a.deg();
    if n == 1 {
        return Ok(true);
    }
    let f = a.field();
    let m = a.raw_coeffs();
    // cheap early exit on a root
    if f.order() <= 64 && (0..f.order()).any(|x| a.eval_raw(x) == 0) {
        return Ok(false);
    }
    let frob = FrobeniusMap::new(f, m);
    let x = frob.x_reduced();
    let checkpoints: Vec<usize> = prime_divisors(n).into_iter().map(|r| n / r).collect();
    let mut h = x.clone();
    for i in 1..=n {
        h = frob.apply(&h);
        if checkpoints.contains(&i) {
            let g = gcd_slices(f, &sub_slices(f, &h, &x), m);
            if g.len() != 1 {
                return Ok(false);
            }
        }
    }
    Ok(h == x)
}

/// `c(x)^(1/p)` for a polynomial whose exponents are all multiples of `p`.
fn pth_root(f: &Field, c: &[u64]) -> Vec<u64> {
    let p = f.p() as usize;
    // a^(1/p) = a^(p^(k-1)) in F_q
    let e = (f.order() / f.p()) as u128;
    c.iter()
        .step_by(p)
        .map(|&v| {
            if f.is_prime_field() {
                v
            } else {
                f.pow_raw(v, e)
            }
        })
        .collect()
}

/// Squarefree decomposition: pairwise coprime monic squarefree parts with
/// multiplicities, whose weighted product is `a / lc(a)`.
pub fn squarefree_part(a: &Poly) -> Result<Vec<(Poly, u32)>> {
    require_nonconstant(a)?;
    let f = a.field().clone();
    let mut out = Vec::new();
    squarefree_rec(&f, a.monic().raw_coeffs(), 1, &mut out);
    Ok(out
        .into_iter()
        .map(|(c, m)| (Poly::from_raw(&f, c), m))
        .collect())
}

fn exact_div(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (q, r) = Poly::from_raw(f, a.to_vec())
        .divmod(&Poly::from_raw(f, b.to_vec()))
        .expect("nonzero divisor");
    debug_assert!(r.is_zero());
    q.raw_coeffs().to_vec()
}

fn squarefree_rec(f: &Field, a: &[u64], mult: u32, out: &mut Vec<(Vec<u64>, u32)>) {
    let deriv = Poly::from_raw(f, a.to_vec()).derivative();
    let mut c = gcd_slices(f, a, deriv.raw_coeffs());
    let mut w = exact_div(f, a, &c);
    let mut i = 1u32;
    while w.len() > 1 {
        let y = gcd_slices(f, &w, &c);
        let fac = exact_div(f, &w, &y);
        if fac.len() > 1 {
            out.push((fac, i * mult));
        }
        c = exact_div(f, &c, &y);
        w = y;
        i += 1;
    }
    if c.len() > 1 {
        let root = pth_root(f, &c);
        squarefree_rec(f, &root, mult * f.p() as u32, out);
    }
}

/// Splits a monic squarefree polynomial into `(product, d)` pairs, each the
/// product of all its irreducible factors of degree exactly `d`.
pub fn distinct_degree(a: &Poly) -> Result<Vec<(Poly, usize)>> {
    require_nonconstant(a)?;
    if !a.is_monic() {
        return Err(Error::NotMonic);
    }
    let f = a.field();
    let frob = FrobeniusMap::new(f, a.raw_coeffs());
    Ok(ddf_with(f, a.raw_coeffs(), &frob)
        .into_iter()
        .map(|(c, d)| (Poly::from_raw(f, c), d))
        .collect())
}

fn ddf_with(f: &Field, a: &[u64], frob: &FrobeniusMap) -> Vec<(Vec<u64>, usize)> {
    let mut out = Vec::new();
    let x = frob.x_reduced();
    let mut rest = a.to_vec();
    let mut h = x.clone();
    let mut i = 0;
    while rest.len() > 1 {
        i += 1;
        if 2 * i > rest.len() - 1 {
            let d = rest.len() - 1;
            out.push((rest, d));
            break;
        }
        h = frob.apply(&h);
        let g = gcd_slices(f, &sub_slices(f, &h, &x), &rest);
        if g.len() > 1 {
            rest = exact_div(f, &rest, &g);
            out.push((g, i));
        }
    }
    out
}

/// Cantor-Zassenhaus splitting of a monic squarefree `a` whose irreducible
/// factors all have degree `d`. Random elements come from a generator seeded
/// with `seed`.
pub fn equal_degree_split(a: &Poly, d: usize, seed: u64) -> Result<Vec<Poly>> {
    require_nonconstant(a)?;
    if !a.is_monic() {
        return Err(Error::NotMonic);
    }
    if d == 0 || a.deg() % d != 0 {
        return Err(Error::Parse(format!(
            "degree {} is not a multiple of {d}",
            a.deg()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = a.field();
    let mut out = Vec::new();
    edf_rec(f, a.raw_coeffs().to_vec(), d, &mut rng, None, &mut out)?;
    let mut polys: Vec<Poly> = out.into_iter().map(|c| Poly::from_raw(f, c)).collect();
    polys.sort_by(|x, y| x.canonical_key().cmp(&y.canonical_key()));
    Ok(polys)
}

/// One split of `a` into two nontrivial factors. With
/// `Tr(r) = r + r^q + .. + r^(q^(d-1))` each CRT component of `Tr(r)` lies in `F_q`, so
/// `gcd(Tr(r)^((q-1)/2) - 1, a)` collects exactly the factors on which that
/// component is a nonzero square.
fn edf_rec(
    f: &Field,
    a: Vec<u64>,
    d: usize,
    rng: &mut ChaCha8Rng,
    frob: Option<&FrobeniusMap>,
    out: &mut Vec<Vec<u64>>,
) -> Result<()> {
    let n = a.len() - 1;
    if n == d {
        out.push(a);
        return Ok(());
    }
    let owned;
    let frob = match frob {
        Some(fr) if fr.modulus == a => fr,
        _ => {
            owned = FrobeniusMap::new(f, &a);
            &owned
        }
    };
    let q = f.order();
    for _ in 0..SPLIT_RETRY_CAP {
        let mut r: Vec<u64> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        trim(&mut r);
        if r.is_empty() {
            continue;
        }
        let mut trace = r.clone();
        let mut conj = r;
        for _ in 1..d {
            conj = frob.apply(&conj);
            trace = add_vec(f, &trace, &conj);
        }
        if trace.is_empty() {
            continue;
        }
        let w = powmod(f, &trace, (q as u128 - 1) / 2, &a);
        let g = gcd_slices(f, &sub_slices(f, &w, &[1]), &a);
        if g.len() > 1 && g.len() < a.len() {
            let other = exact_div(f, &a, &g);
            edf_rec(f, g, d, rng, None, out)?;
            edf_rec(f, other, d, rng, None, out)?;
            return Ok(());
        }
    }
    Err(Error::SplitRetries(SPLIT_RETRY_CAP))
}

fn add_vec(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (o, &v) in out.iter_mut().zip(b) {
        *o = f.add_raw(*o, v);
    }
    trim(&mut out);
    out
}

/// `unit * prod(factor^multiplicity)`, factors monic irreducible and sorted
/// by degree, then by coefficient tuple (constant term first).
#[derive(Clone, PartialEq, Eq)]
pub struct Factorization {
    pub input: Poly,
    pub unit: FqElem,
    pub parts: Vec<(Poly, u32)>,
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)?;
        for (p, m) in &self.parts {
            write!(f, " * ({})^{m}", p.to_text())?;
        }
        Ok(())
    }
}

impl Factorization {
    /// Total number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> usize {
        self.parts.iter().map(|(_, m)| *m as usize).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.parts.iter().all(|(_, m)| *m == 1)
    }

    pub fn reconstruct(&self) -> Poly {
        let mut acc = Poly::constant(&self.unit);
        for (p, m) in &self.parts {
            for _ in 0..*m {
                acc = acc.mul(p).expect("same field");
            }
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        json!({
            "unit": self.unit.to_json(),
            "parts": self
                .parts
                .iter()
                .map(|(p, m)| json!([p.to_json(), m]))
                .collect::<Vec<_>>(),
        })
    }
}

/// Complete factorization; identical `(a, seed)` gives identical output.
pub fn factor(a: &Poly, seed: u64) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = a.field();
    let unit = a.leading_coeff();
    let mut parts: Vec<(Poly, u32)> = Vec::new();
    if !a.is_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (sqf, mult) in squarefree_part(a)? {
            let frob = FrobeniusMap::new(f, sqf.raw_coeffs());
            for (prod, d) in ddf_with(f, sqf.raw_coeffs(), &frob) {
                let mut pieces = Vec::new();
                let reuse = (prod.as_slice() == sqf.raw_coeffs()).then_some(&frob);
                edf_rec(f, prod, d, &mut rng, reuse, &mut pieces)?;
                parts.extend(pieces.into_iter().map(|c| (Poly::from_raw(f, c), mult)));
            }
        }
    }
    parts.sort_by(|x, y| x.0.canonical_key().cmp(&y.0.canonical_key()));
    let result = Factorization {
        input: a.clone(),
        unit,
        parts,
    };
    if cfg!(feature = "audit") {
        for (p, _) in &result.parts {
            assert!(is_irreducible(p)?, "factor {p:?} is reducible");
        }
        assert_eq!(result.reconstruct(), *a);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn poly(field: &Field, c: &[i64]) -> Poly {
        Poly::from_ints(field, c)
    }

    #[test]
    fn irreducibility_examples() {
        let f7 = f(7);
        let g = poly(&f7, &[1, 1, 0, 1]);
        assert!(is_irreducible(&g).unwrap());
        assert!(f7.elements().all(|x| !g.eval(&x).unwrap().is_zero()));
        assert!(is_irreducible(&poly(&f(3), &[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&poly(&f7, &[6, 0, 1])).unwrap());
        assert!(matches!(
            is_irreducible(&poly(&f7, &[3])),
            Err(Error::ConstantPolynomial)
        ));
        assert!(matches!(
            is_irreducible(&Poly::zero(&f7)),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn rootless_but_reducible() {
        // (x^2+1)^2 over F_3 has no roots but is reducible
        let f3 = f(3);
        let a = poly(&f3, &[1, 0, 1]).mul(&poly(&f3, &[1, 0, 1])).unwrap();
        assert!(!is_irreducible(&a).unwrap());
        // (x^2+1)(x^2+x+2) over F_3
        let b = poly(&f3, &[1, 0, 1]).mul(&poly(&f3, &[2, 1, 1])).unwrap();
        assert!(!is_irreducible(&b).unwrap());
    }

    #[test]
    fn squarefree_examples() {
        let f5 = f(5);
        let a = poly(&f5, &[-1, 1])
            .mul(&poly(&f5, &[-1, 1]))
            .unwrap()
            .mul(&poly(&f5, &[1, 1]))
            .unwrap();
        let mut parts = squarefree_part(&a).unwrap();
        parts.sort_by_key(|(_, m)| *m);
        assert_eq!(
            parts,
            vec![(poly(&f5, &[1, 1]), 1), (poly(&f5, &[4, 1]), 2)]
        );
        let sf = poly(&f5, &[2, 0, 3]);
        assert_eq!(squarefree_part(&sf).unwrap(), vec![(sf.monic(), 1)]);
        let x5 = poly(&f5, &[0, 0, 0, 0, 0, 1]);
        assert_eq!(squarefree_part(&x5).unwrap(), vec![(Poly::x(&f5), 5)]);
    }

    #[test]
    fn squarefree_mixed_pth_powers() {
        // (x+1)^3 (x+2)^6 (x^2+1) over F_3
        let f3 = f(3);
        let l1 = poly(&f3, &[1, 1]);
        let l2 = poly(&f3, &[2, 1]);
        let q = poly(&f3, &[1, 0, 1]);
        let mut a = q.clone();
        for _ in 0..3 {
            a = a.mul(&l1).unwrap();
        }
        for _ in 0..6 {
            a = a.mul(&l2).unwrap();
        }
        let mut parts = squarefree_part(&a).unwrap();
        parts.sort_by_key(|(_, m)| *m);
        assert_eq!(parts, vec![(q, 1), (l1, 3), (l2, 6)]);
    }

    #[test]
    fn distinct_degree_examples() {
        let f7 = f(7);
        let a = poly(&f7, &[6, 0, 1]);
        assert_eq!(distinct_degree(&a).unwrap(), vec![(a.clone(), 1)]);
        let f3 = f(3);
        // x^4 + x + 2 is irreducible over F_3
        let quartic = poly(&f3, &[2, 1, 0, 0, 1]);
        assert!(is_irreducible(&quartic).unwrap());
        assert_eq!(
            distinct_degree(&quartic).unwrap(),
            vec![(quartic.clone(), 4)]
        );
        let mixed = poly(&f3, &[1, 0, 1]).mul(&poly(&f3, &[1, 1])).unwrap();
        assert_eq!(
            distinct_degree(&mixed).unwrap(),
            vec![(poly(&f3, &[1, 1]), 1), (poly(&f3, &[1, 0, 1]), 2)]
        );
    }

    #[test]
    fn equal_degree_examples() {
        let f7 = f(7);
        let got = equal_degree_split(&poly(&f7, &[6, 0, 1]), 1, 0).unwrap();
        assert_eq!(got, vec![poly(&f7, &[1, 1]), poly(&f7, &[6, 1])]);
        let g = poly(&f7, &[1, 1, 0, 1]);
        assert_eq!(equal_degree_split(&g, 3, 9).unwrap(), vec![g]);
    }

    #[test]
    fn equal_degree_many_linear_factors() {
        // x^q - x over F_q splits into all q linear factors
        for p in [3u64, 5, 7, 11, 13] {
            let k = f(p);
            let mut c = vec![0i64; p as usize + 1];
            c[p as usize] = 1;
            c[1] = -1;
            for seed in 0..3 {
                let got = equal_degree_split(&poly(&k, &c), 1, seed).unwrap();
                let roots: Vec<u64> = got.iter().map(|l| k.neg_raw(l.raw_coeffs()[0])).collect();
                let mut sorted = roots.clone();
                sorted.sort();
                assert_eq!(sorted, (0..p).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn factor_examples() {
        let f7 = f(7);
        let fac = factor(&poly(&f7, &[6, 0, 1]), 0).unwrap();
        assert_eq!(fac.unit.raw(), 1);
        assert_eq!(
            fac.parts,
            vec![(poly(&f7, &[1, 1]), 1), (poly(&f7, &[6, 1]), 1)]
        );
        let f3 = f(3);
        let fac = factor(&poly(&f3, &[1, 0, 1]), 0).unwrap();
        assert_eq!(fac.parts, vec![(poly(&f3, &[1, 0, 1]), 1)]);
        assert!(matches!(
            factor(&Poly::zero(&f3), 0),
            Err(Error::ZeroPolynomial)
        ));
        let c = factor(&poly(&f3, &[2]), 0).unwrap();
        assert_eq!(c.unit.raw(), 2);
        assert!(c.parts.is_empty());
    }

    #[test]
    fn factor_is_deterministic() {
        let f13 = f(13);
        let a = poly(&f13, &[3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9]);
        let x = factor(&a, 42).unwrap();
        let y = factor(&a, 42).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.to_json().to_string(), y.to_json().to_string());
        assert_eq!(factor(&a, 7).unwrap().parts, x.parts);
    }

    #[test]
    fn extension_field_factoring() {
        use crate::ffield::FieldSpec;
        let k = Field::new(FieldSpec::extension(3, vec![1, 0, 1])).unwrap();
        // x^2 + 1 splits over F_9; x^9 - x has all nine roots
        let fac = factor(&Poly::from_ints(&k, &[1, 0, 1]), 0).unwrap();
        assert_eq!(fac.count(), 2);
        let mut c = vec![0i64; 10];
        c[9] = 1;
        c[1] = -1;
        let fac = factor(&Poly::from_ints(&k, &c), 1).unwrap();
        assert_eq!(fac.count(), 9);
        assert!(fac.parts.iter().all(|(p, _)| p.degree() == Some(1)));
        // x^2 - t is irreducible iff t is a nonsquare in F_9
        for t in k.elements().skip(1) {
            let a = Poly::from_elems(&k, &[t.neg(), k.zero(), k.one()]).unwrap();
            let irreducible = is_irreducible(&a).unwrap();
            assert_eq!(
                irreducible,
                t.squareness() == crate::ffield::Squareness::NonSquare
            );
            assert_eq!(
                factor(&a, 0).unwrap().count(),
                if irreducible { 1 } else { 2 }
            );
        }
    }
}
