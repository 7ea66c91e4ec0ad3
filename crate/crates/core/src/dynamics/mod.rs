//! Post-critical orbits, f-types and the action of `f` on the type space.
//!
//! For a monic quadratic `f` with critical point `gamma`, the forward orbit
//! `b_i = f^i(gamma)` is eventually periodic: `m >= 0` and `n >= 1` are the
//! least integers with `f^m(gamma) = f^(m+n)(gamma)`. The post-critical set
//! is `{b_1, .., b_{o_f}}` with `o_f = m + n - 1` when `m >= 1` and
//! `o_f = n` when the critical point is itself periodic.
//!
//! An f-type records, for each `b_k`, whether `g(b_k)` is a square (`s`),
//! a nonsquare (`n`), or zero (`z`, a degenerate case).

mod census;
mod descend;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::ffield::{Field, FqElem, Squareness};
use crate::poly::{MonicQuadratic, Poly};

pub use census::{field_label, orbit_census, CensusReport, CensusScope};
pub use descend::{
    immediate_descendants, transition_chain, DescendantTree, Expansion, Node, StopReason,
    TransitionRecord, Truncation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    S,
    N,
    Z,
}

impl Letter {
    pub fn from_squareness(s: Squareness) -> Letter {
        match s {
            Squareness::Square => Letter::S,
            Squareness::NonSquare => Letter::N,
            Squareness::Zero => Letter::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::S => 's',
            Letter::N => 'n',
            Letter::Z => 'z',
        }
    }

    /// Product of quadratic characters with `s = +1`, `n = -1`.
    pub fn times(self, other: Letter) -> Letter {
        match (self, other) {
            (Letter::Z, _) | (_, Letter::Z) => Letter::Z,
            (a, b) if a == b => Letter::S,
            _ => Letter::N,
        }
    }
}

/// A type string over `{s, n, z}`, one letter per post-critical point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FType {
    letters: Vec<Letter>,
}

impl fmt::Display for FType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for FType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FType({self})")
    }
}

impl FromStr for FType {
    type Err = Error;

    fn from_str(s: &str) -> Result<FType> {
        let letters = s
            .chars()
            .map(|c| match c {
                's' => Ok(Letter::S),
                'n' => Ok(Letter::N),
                'z' => Ok(Letter::Z),
                other => Err(Error::Parse(format!("bad type letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FType { letters })
    }
}

impl FType {
    pub fn new(letters: Vec<Letter>) -> FType {
        FType { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// 1-based access, matching the `b_k` indexing.
    pub fn at(&self, k: usize) -> Letter {
        self.letters[k - 1]
    }

    pub fn is_degenerate(&self) -> bool {
        self.letters.contains(&Letter::Z)
    }

    pub fn starts_with(&self, prefix: &str) -> bool {
        let mut chars = prefix.chars();
        self.letters.len() >= prefix.len()
            && self
                .letters
                .iter()
                .zip(&mut chars)
                .all(|(l, c)| l.as_char() == c)
    }

    /// The last `k` letters as a string.
    pub fn suffix(&self, k: usize) -> String {
        let start = self.letters.len().saturating_sub(k);
        self.letters[start..].iter().map(|l| l.as_char()).collect()
    }
}

/// Orbit data of the critical point of a monic quadratic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitProfile {
    f: MonicQuadratic,
    m: usize,
    n: usize,
    orbit: Vec<u64>,
}

impl OrbitProfile {
    pub fn quadratic(&self) -> &MonicQuadratic {
        &self.f
    }

    pub fn field(&self) -> &Field {
        self.f.field()
    }

    /// Orbit type `(m, n)`.
    pub fn orbit_type(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `o_f`, the size of the post-critical set.
    pub fn size(&self) -> usize {
        self.orbit.len()
    }

    /// `[b_1, .., b_{o_f}]`.
    pub fn orbit(&self) -> Vec<FqElem> {
        self.orbit
            .iter()
            .map(|&r| self.field().elem(r).expect("reduced"))
            .collect()
    }

    /// `b_k` for `k >= 1`, continuing the orbit past `o_f` periodically.
    pub fn b(&self, k: usize) -> FqElem {
        self.field().elem(self.b_raw(k)).expect("reduced")
    }

    pub(crate) fn b_raw(&self, k: usize) -> u64 {
        assert!(k >= 1, "orbit points are indexed from 1");
        let len = self.orbit.len();
        if k <= len {
            return self.orbit[k - 1];
        }
        // b_{o_f + j} = b_{r + j - 1} where r is the recycle index
        let r = self.recycle_index();
        let period = len + 1 - r;
        self.orbit[r - 1 + (k - len - 1) % period]
    }

    /// `k` with `f^(o_f + 1)(gamma) = f^k(gamma)`: `m` when `m >= 1`, else `1`.
    pub fn recycle_index(&self) -> usize {
        if self.m >= 1 {
            self.m
        } else {
            1
        }
    }

    /// Orbit type `(2, n)` or `(3, 1)`.
    pub fn is_exceptional(&self) -> bool {
        self.m == 2 || (self.m == 3 && self.n == 1)
    }

    pub fn orbit_type_label(&self) -> String {
        format!("({},{})", self.m, self.n)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "f": self.f.to_json(),
            "gamma": self.f.gamma().to_json(),
            "c": self.f.c().to_json(),
            "m": self.m,
            "n": self.n,
            "orbit": self.orbit.iter().map(|&r| self.field().raw_to_json(r)).collect::<Vec<_>>(),
        })
    }
}

/// Iterates the critical point until the first repeat.
pub fn orbit_profile(f: &MonicQuadratic) -> OrbitProfile {
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut seq = vec![f.gamma().raw()];
    seen.insert(seq[0], 0);
    loop {
        let next = f.eval_raw(*seq.last().expect("nonempty"));
        if let Some(&first) = seen.get(&next) {
            let m = first;
            let n = seq.len() - first;
            let size = if m >= 1 { m + n - 1 } else { n };
            seq.push(next);
            let orbit = seq[1..=size].to_vec();
            return OrbitProfile {
                f: f.clone(),
                m,
                n,
                orbit,
            };
        }
        seen.insert(next, seq.len());
        seq.push(next);
    }
}

/// Type letters of `g` along the orbit, without any precondition checks.
pub(crate) fn ftype_raw(g: &Poly, profile: &OrbitProfile) -> FType {
    let field = g.field();
    FType {
        letters: profile
            .orbit
            .iter()
            .map(|&b| Letter::from_squareness(field.squareness_raw(g.eval_raw(b))))
            .collect(),
    }
}

/// The f-type of a monic irreducible `g`. Irreducibility is the caller's
/// responsibility; non-monic input is rejected since types are only defined
/// for monic polynomials.
pub fn ftype(g: &Poly, profile: &OrbitProfile) -> Result<FType> {
    if g.field() != profile.field() {
        return Err(Error::FieldMismatch);
    }
    if g.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(ftype_raw(g, profile))
}

fn check_length(t: &FType, profile: &OrbitProfile) -> Result<()> {
    if t.len() != profile.size() {
        return Err(Error::TypeLength {
            got: t.len(),
            expected: profile.size(),
        });
    }
    Ok(())
}

/// Left shift, with the former entry at the recycle index appended.
pub fn shift_type(t: &FType, profile: &OrbitProfile) -> Result<FType> {
    check_length(t, profile)?;
    if t.is_degenerate() {
        return Err(Error::DegenerateType(t.to_string()));
    }
    let mut letters = t.letters[1..].to_vec();
    letters.push(t.at(profile.recycle_index()));
    Ok(FType { letters })
}

/// Whether `child` may occur as an immediate descendant of the `s`-led
/// `parent`: always when `m = 0`, otherwise iff `d_{m-1} d_{m+n-1} = a_m`.
/// For `m = 1` the missing `d_0` is taken as the empty product `s`; see
/// [`uses_empty_product_convention`].
pub fn allowable(parent: &FType, child: &FType, profile: &OrbitProfile) -> Result<bool> {
    check_length(parent, profile)?;
    check_length(child, profile)?;
    for t in [parent, child] {
        if t.is_degenerate() {
            return Err(Error::DegenerateType(t.to_string()));
        }
    }
    if parent.at(1) != Letter::S {
        return Err(Error::NotSplitting(parent.to_string()));
    }
    let (m, n) = profile.orbit_type();
    Ok(match m {
        0 => true,
        1 => child.at(n) == parent.at(1),
        _ => child.at(m - 1).times(child.at(m + n - 1)) == parent.at(m),
    })
}

/// True when [`allowable`] relies on the `d_0 = s` convention (`m = 1`).
/// A periodic-free critical point cannot have `m = 1` (the only preimage of
/// `f(gamma)` is `gamma`), so this never fires for genuine orbit profiles.
pub fn uses_empty_product_convention(profile: &OrbitProfile) -> bool {
    profile.m == 1
}

/// All `q^2` monic quadratics `x^2 + a x + b`, `a` outer, `b` inner.
pub fn enumerate_quadratics(field: &Field) -> impl Iterator<Item = MonicQuadratic> + '_ {
    let q = field.order();
    (0..q).flat_map(move |a| (0..q).map(move |b| MonicQuadratic::from_raw(field, a, b)))
}

/// All monic polynomials of the given degree, ordered by their coefficient
/// tuple with the constant term most significant.
pub fn enumerate_monic(field: &Field, degree: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.order() as u128;
    let total = q.checked_pow(degree as u32).unwrap_or(u128::MAX);
    (0..total).map(move |mut idx| {
        let mut coeffs = vec![0u64; degree + 1];
        coeffs[degree] = 1;
        for slot in (0..degree).rev() {
            coeffs[slot] = (idx % q) as u64;
            idx /= q;
        }
        Poly::from_raw(field, coeffs)
    })
}

/// All monic irreducible polynomials of exactly `degree`, canonical order.
pub fn enumerate_irreducibles(field: &Field, degree: usize) -> impl Iterator<Item = Poly> + '_ {
    enumerate_monic(field, degree.max(1))
        .filter(move |p| degree >= 1 && is_irreducible(p).unwrap_or(false))
}
