//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use iterquad::{Field, Poly};

/// Every monic polynomial of degree `deg`.
pub fn monic_of_degree(field: &Field, deg: usize) -> Vec<Poly> {
    let q = field.order();
    let count = q.pow(deg as u32);
    (0..count)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                c.push(idx % q);
                idx /= q;
            }
            c.push(1);
            Poly::from_encodings(field, &c).unwrap()
        })
        .collect()
}

/// Every polynomial of degree `deg` (any nonzero leading coefficient).
pub fn all_of_degree(field: &Field, deg: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    for lead in field.elements().filter(|e| !e.is_zero()) {
        for m in monic_of_degree(field, deg) {
            out.push(m.scale(&lead).unwrap());
        }
    }
    out
}

fn has_root(g: &Poly) -> bool {
    g.field().elements().any(|x| g.eval(&x).unwrap().is_zero())
}

/// Monic irreducibles of degree 1 and 2, found by root search.
pub fn small_irreducibles(field: &Field) -> Vec<Poly> {
    let mut out = monic_of_degree(field, 1);
    out.extend(
        monic_of_degree(field, 2)
            .into_iter()
            .filter(|g| !has_root(g)),
    );
    out
}

/// Factorization of a polynomial of degree at most 4 by repeated trial
/// division. A cofactor of degree 3 or 4 with no factor of degree at most 2
/// is irreducible. Parts are returned as sorted `(coeffs, multiplicity)`.
pub fn trial_division(a: &Poly) -> (u64, Vec<(Vec<u64>, u32)>) {
    let field = a.field();
    let unit = a.leading_coeff().raw();
    let mut rest = a.monic();
    let mut parts = Vec::new();
    for d in small_irreducibles(field) {
        let mut mult = 0;
        loop {
            let (quot, rem) = rest.divmod(&d).unwrap();
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            mult += 1;
        }
        if mult > 0 {
            parts.push((d.raw_coeffs().to_vec(), mult));
        }
    }
    assert!(rest.degree().unwrap() <= 4);
    if !rest.is_constant() {
        parts.push((rest.raw_coeffs().to_vec(), 1));
    }
    parts.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
    (unit, parts)
}
