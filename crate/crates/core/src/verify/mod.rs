//! Executable checks of the orbit identities, the square-value theorems for
//! the exceptional families, the reflection pairing of split factors and the
//! missing multi-step transitions.
//!
//! Single-instance checks return a [`Verdict`]; [`run`] sweeps whole fields
//! and aggregates everything into a [`CensusReport`].

mod scan;

use std::fmt;

use serde_json::{json, Value};

use crate::dynamics::{orbit_profile, DescendantTree, FType, OrbitProfile};
use crate::error::{Error, Result};
use crate::factor::{factor, is_irreducible};
use crate::ffield::{Field, FieldSpec, FqElem, Squareness};
use crate::poly::{iterate, MonicQuadratic, Poly, DEFAULT_DEGREE_CAP};

pub use scan::{conjecture_evidence, run, Claim, ClaimSet, ClaimStatus, RunOutput};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
    Inconclusive,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skip => "skip",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

/// Result of one check. Anything but a pass carries a witness: the
/// counterexample data for failures, the reason otherwise.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub claim: String,
    pub field: FieldSpec,
    pub f: Option<MonicQuadratic>,
    pub g: Option<Poly>,
    pub depth: Option<usize>,
    pub outcome: Outcome,
    /// Instances that actually exercised the conclusion.
    pub exercised: u64,
    pub witness: Option<Value>,
    pub detail: Value,
    pub seed: u64,
}

impl Verdict {
    fn new(claim: &str, field: &Field, seed: u64) -> Verdict {
        Verdict {
            claim: claim.to_string(),
            field: field.spec().clone(),
            f: None,
            g: None,
            depth: None,
            outcome: Outcome::Pass,
            exercised: 0,
            witness: None,
            detail: Value::Null,
            seed,
        }
    }

    fn with_f(mut self, f: &MonicQuadratic) -> Self {
        self.f = Some(f.clone());
        self
    }

    fn with_g(mut self, g: &Poly) -> Self {
        self.g = Some(g.clone());
        self
    }

    fn skip(mut self, reason: &str) -> Self {
        self.outcome = Outcome::Skip;
        self.witness = Some(json!({ "reason": reason }));
        self
    }

    fn fail(mut self, witness: Value) -> Self {
        self.outcome = Outcome::Fail;
        self.witness = Some(witness);
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn is_skip(&self) -> bool {
        self.outcome == Outcome::Skip
    }

    pub fn to_json(&self) -> Value {
        json!({
            "claim": self.claim,
            "field": self.field.to_json(),
            "f": self.f.as_ref().map(MonicQuadratic::to_json),
            "g": self.g.as_ref().map(Poly::to_json),
            "depth": self.depth,
            "passed": self.passed(),
            "skip": self.is_skip(),
            "inconclusive": self.outcome == Outcome::Inconclusive,
            "exercised": self.exercised,
            "witness": self.witness,
            "detail": self.detail,
            "seed": self.seed,
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{} over {}", self.claim, self.field)?;
        if let Some(f) = &self.f {
            write!(out, " f={}", f.as_poly().to_text())?;
        }
        if let Some(g) = &self.g {
            write!(out, " g={}", g.to_text())?;
        }
        write!(out, ": {}", self.outcome.as_str())
    }
}

fn wrong_type(profile: &OrbitProfile, wanted: &str) -> Error {
    Error::WrongOrbitType {
        m: profile.m(),
        n: profile.n(),
        wanted: wanted.to_string(),
    }
}

fn sq(a: &FqElem) -> FqElem {
    a.mul(a).expect("same field")
}

/// `(b_n - gamma)^2 = -2c` for orbit type `(2, n)`.
pub fn check_identity_2n(profile: &OrbitProfile) -> Result<Verdict> {
    if profile.m() != 2 {
        return Err(wrong_type(profile, "(2,n)"));
    }
    let f = profile.quadratic();
    let field = profile.field();
    let lhs = sq(&profile.b(profile.n()).sub(&f.gamma())?);
    let rhs = field.from_int(-2).mul(&f.c())?;
    let mut v = Verdict::new("identity-2n", field, 0).with_f(f);
    v.exercised = 1;
    v.detail = json!({ "lhs": lhs.to_json(), "rhs": rhs.to_json() });
    Ok(if lhs == rhs {
        v
    } else {
        let w = json!({ "orbit": profile.to_json(), "lhs": lhs.to_json(), "rhs": rhs.to_json() });
        v.fail(w)
    })
}

/// `(b_1 - gamma)^2 (b_2 - gamma)^2 = 2(b_2 - gamma)` and
/// `(b_1 - gamma)^2 + (b_2 - gamma)^2 = -2c` for orbit type `(3, 1)`.
pub fn check_identity_31(profile: &OrbitProfile) -> Result<Verdict> {
    if profile.orbit_type() != (3, 1) {
        return Err(wrong_type(profile, "(3,1)"));
    }
    let f = profile.quadratic();
    let field = profile.field();
    let c1 = profile.b(1).sub(&f.gamma())?;
    let c2 = profile.b(2).sub(&f.gamma())?;
    let prod_lhs = sq(&c1).mul(&sq(&c2))?;
    let prod_rhs = field.from_int(2).mul(&c2)?;
    let sum_lhs = sq(&c1).add(&sq(&c2))?;
    let sum_rhs = field.from_int(-2).mul(&f.c())?;
    let detail = json!({
        "product": [prod_lhs.to_json(), prod_rhs.to_json()],
        "sum": [sum_lhs.to_json(), sum_rhs.to_json()],
    });
    let mut v = Verdict::new("identity-31", field, 0).with_f(f);
    v.exercised = 1;
    v.detail = detail.clone();
    Ok(if prod_lhs == prod_rhs && sum_lhs == sum_rhs {
        v
    } else {
        v.fail(json!({ "orbit": profile.to_json(), "values": detail }))
    })
}

/// Whether `h2 = (-1)^deg(h1) h1(2 gamma - x)`.
pub fn reflection_pair(h1: &Poly, h2: &Poly, gamma: &FqElem) -> Result<bool> {
    Ok(h1.reflect(gamma)? == *h2)
}

/// Reflection pairing of the two factors of `g(f^(i+1))` when `g(f^i)` is
/// irreducible and `g(f^(i+1))` is reducible and squarefree.
pub fn check_pairing(g: &Poly, f: &MonicQuadratic, i: u32, seed: u64) -> Result<Verdict> {
    if g.field() != f.field() {
        return Err(Error::FieldMismatch);
    }
    if g.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let inner = iterate(f, i, DEFAULT_DEGREE_CAP)?;
    let big = g.compose(&inner)?;
    if !is_irreducible(&big)? {
        return Err(Error::Precondition(format!("g(f^{i}) is reducible")));
    }
    let next = big.compose(&f.as_poly())?;
    let fact = factor(&next, seed)?;
    if !fact.is_squarefree() {
        return Err(Error::Precondition(format!(
            "g(f^{}) is not squarefree",
            i + 1
        )));
    }
    if fact.parts.len() < 2 {
        return Err(Error::Precondition(format!(
            "g(f^{}) is irreducible",
            i + 1
        )));
    }
    let mut v = Verdict::new("pairing", f.field(), seed).with_f(f).with_g(g);
    v.exercised = 1;
    v.detail = json!({ "i": i });
    let witness = || json!({ "i": i, "factorization": fact.to_json() });
    if fact.parts.len() != 2 {
        return Ok(v.fail(witness()));
    }
    let ok = reflection_pair(&fact.parts[0].0, &fact.parts[1].0, &f.gamma())?
        && fact.unit == g.leading_coeff();
    Ok(if ok { v } else { v.fail(witness()) })
}

/// Outcome of a check on one node of a descendant tree.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Check {
    Pass,
    Fail(Value),
    Skip(&'static str),
}

fn usable(tree: &DescendantTree, idx: usize) -> std::result::Result<(), &'static str> {
    let node = tree.node(idx);
    if node.degree() % 2 == 1 {
        return Err("odd-degree");
    }
    if node.ftype.is_degenerate() {
        return Err("degenerate");
    }
    Ok(())
}

fn factors_below(
    tree: &mut DescendantTree,
    idx: usize,
    steps: usize,
) -> Result<std::result::Result<Vec<usize>, &'static str>> {
    let (gen, trunc) = tree.generation(idx, steps)?;
    Ok(match trunc {
        Some(t) => Err(t.reason.as_str()),
        None => Ok(gen),
    })
}

fn node_witness(tree: &DescendantTree, idx: usize, factor_idx: usize, value: Value) -> Value {
    let node = tree.node(idx);
    let h = tree.node(factor_idx);
    json!({
        "g": node.poly.to_json(),
        "g_type": node.ftype.to_string(),
        "factor": h.poly.to_json(),
        "factor_type": h.ftype.to_string(),
        "value": value,
    })
}

/// Every factor `H` of `g(f^2)` has `H(b_n)` a square, for `g` of even
/// degree whose type starts with `ns` and `f` of orbit type `(2, n)`.
pub(crate) fn theorem_2n_at(tree: &mut DescendantTree, idx: usize) -> Result<Check> {
    let profile = tree.profile().clone();
    if profile.m() != 2 {
        return Ok(Check::Skip("orbit-type"));
    }
    if let Err(r) = usable(tree, idx) {
        return Ok(Check::Skip(r));
    }
    if !tree.node(idx).ftype.starts_with("ns") {
        return Ok(Check::Skip("type-prefix"));
    }
    let gen = match factors_below(tree, idx, 2)? {
        Ok(g) => g,
        Err(r) => return Ok(Check::Skip(r)),
    };
    let bn = profile.b_raw(profile.n());
    let field = profile.field();
    for &h in &gen {
        match field.squareness_raw(tree.node(h).poly.eval_raw(bn)) {
            Squareness::Square => {}
            Squareness::Zero => return Ok(Check::Skip("degenerate")),
            Squareness::NonSquare => {
                let value = field.raw_to_json(tree.node(h).poly.eval_raw(bn));
                return Ok(Check::Fail(node_witness(tree, idx, h, value)));
            }
        }
    }
    Ok(Check::Pass)
}

/// Every factor `H` of `g(f^3)` has `H(b_1) H(b_2)` a square, for `f` of
/// orbit type `(3, 1)` and `g` of even degree. Unless `literal` is set,
/// only `g` with `g(f^2)` irreducible (type starting `nn`) qualify; this is
/// the situation the square-product argument applies to, and the
/// statement fails for other `g`.
pub(crate) fn theorem_31_at(tree: &mut DescendantTree, idx: usize, literal: bool) -> Result<Check> {
    let profile = tree.profile().clone();
    if profile.orbit_type() != (3, 1) {
        return Ok(Check::Skip("orbit-type"));
    }
    if let Err(r) = usable(tree, idx) {
        return Ok(Check::Skip(r));
    }
    if !literal && !tree.node(idx).ftype.starts_with("nn") {
        return Ok(Check::Skip("outside-hypothesis"));
    }
    let gen = match factors_below(tree, idx, 3)? {
        Ok(g) => g,
        Err(r) => return Ok(Check::Skip(r)),
    };
    let field = profile.field();
    let (b1, b2) = (profile.b_raw(1), profile.b_raw(2));
    for &h in &gen {
        let poly = &tree.node(h).poly;
        let prod = field.mul_raw(poly.eval_raw(b1), poly.eval_raw(b2));
        match field.squareness_raw(prod) {
            Squareness::Square => {}
            Squareness::Zero => return Ok(Check::Skip("degenerate")),
            Squareness::NonSquare => {
                let value = field.raw_to_json(prod);
                return Ok(Check::Fail(node_witness(tree, idx, h, value)));
            }
        }
    }
    Ok(Check::Pass)
}

fn single_check(
    claim: &str,
    g: &Poly,
    f: &MonicQuadratic,
    seed: u64,
    run: impl FnOnce(&mut DescendantTree) -> Result<Check>,
) -> Result<Verdict> {
    if g.field() != f.field() {
        return Err(Error::FieldMismatch);
    }
    let v = Verdict::new(claim, f.field(), seed).with_f(f).with_g(g);
    if g.is_constant() || !g.is_monic() {
        return Ok(v.skip("not-monic"));
    }
    if !is_irreducible(g)? {
        return Ok(v.skip("reducible"));
    }
    let profile = orbit_profile(f);
    let mut tree =
        DescendantTree::new(&profile, std::slice::from_ref(g), seed, DEFAULT_DEGREE_CAP)?;
    Ok(match run(&mut tree)? {
        Check::Pass => Verdict { exercised: 1, ..v },
        Check::Fail(w) => Verdict { exercised: 1, ..v }.fail(w),
        Check::Skip(r) => v.skip(r),
    })
}

/// Square values at `b_n` for the factors of `g(f^2)`; preconditions that do
/// not hold give a skip.
pub fn check_theorem_2n(g: &Poly, f: &MonicQuadratic, seed: u64) -> Result<Verdict> {
    single_check("theorem-2n", g, f, seed, |t| theorem_2n_at(t, 0))
}

/// Square products at `b_1, b_2` for the factors of `g(f^3)`, restricted to
/// `g` with `g(f^2)` irreducible.
pub fn check_theorem_31(g: &Poly, f: &MonicQuadratic, seed: u64) -> Result<Verdict> {
    single_check("theorem-31", g, f, seed, |t| theorem_31_at(t, 0, false))
}

/// The same square-product test for every even-degree `g`.
pub fn check_theorem_31_literal(g: &Poly, f: &MonicQuadratic, seed: u64) -> Result<Verdict> {
    single_check("theorem-31-literal", g, f, seed, |t| {
        theorem_31_at(t, 0, true)
    })
}

/// Classification of a multi-step window below one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Window {
    pub family: &'static str,
    pub signature: String,
    pub class: String,
    pub kind: WindowKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum WindowKind {
    Forbidden,
    Complement,
    Other,
}

impl WindowKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WindowKind::Forbidden => "forbidden",
            WindowKind::Complement => "complement",
            WindowKind::Other => "other",
        }
    }
}

pub(crate) const FORBIDDEN_2N: [&str; 3] = ["nn/nn", "nn/ns", "ns/ns"];
pub(crate) const COMPLEMENT_2N: [&str; 3] = ["sn/sn", "sn/ss", "ss/ss"];
pub(crate) const FORBIDDEN_31: [&str; 2] = ["nss/nss", "snn/snn"];
pub(crate) const COMPLEMENT_31: [&str; 2] = ["nnn/nnn", "sss/sss"];

fn pair_class(a: String, b: String) -> String {
    if a <= b {
        format!("{a}/{b}")
    } else {
        format!("{b}/{a}")
    }
}

/// The 2-step window below an `ns`-led node (orbit type `(2, n)`, classed by
/// the last two letters of the final pair) or the 3-step window below an
/// `nns` node (orbit type `(3, 1)`, classed by the final pair).
pub(crate) fn window_at(
    tree: &mut DescendantTree,
    idx: usize,
) -> Result<std::result::Result<Window, &'static str>> {
    let profile = tree.profile().clone();
    let (family, steps) = match profile.orbit_type() {
        (2, _) => ("(2,n)", 2),
        (3, 1) => ("(3,1)", 3),
        _ => return Ok(Err("orbit-type")),
    };
    if let Err(r) = usable(tree, idx) {
        return Ok(Err(r));
    }
    let t = &tree.node(idx).ftype;
    let qualifies = if steps == 2 {
        t.starts_with("ns")
    } else {
        t.to_string() == "nns"
    };
    if !qualifies {
        return Ok(Err("type-prefix"));
    }
    let rec = tree.chain(idx, steps)?;
    if let Some(tr) = rec.truncation {
        return Ok(Err(tr.reason.as_str()));
    }
    if rec.is_degenerate() {
        return Ok(Err("degenerate"));
    }
    let signature = format!("{} {}", profile.orbit_type_label(), rec.signature());
    let last = &rec.levels[steps];
    let class = if last.len() == 2 {
        if steps == 2 {
            pair_class(last[0].suffix(2), last[1].suffix(2))
        } else {
            pair_class(last[0].to_string(), last[1].to_string())
        }
    } else {
        last.iter()
            .map(FType::to_string)
            .collect::<Vec<_>>()
            .join("/")
    };
    let (forbidden, complement): (&[&str], &[&str]) = if steps == 2 {
        (&FORBIDDEN_2N, &COMPLEMENT_2N)
    } else {
        (&FORBIDDEN_31, &COMPLEMENT_31)
    };
    let kind = if forbidden.contains(&class.as_str()) {
        WindowKind::Forbidden
    } else if complement.contains(&class.as_str()) {
        WindowKind::Complement
    } else {
        WindowKind::Other
    };
    Ok(Ok(Window {
        family,
        signature,
        class,
        kind,
    }))
}

/// Forbidden-transition census for one quadratic over the factors of
/// `f^i`, `i <= depth`. Inconclusive when no qualifying chain exists.
pub fn check_missing_transitions(
    profile: &OrbitProfile,
    depth: usize,
    seed: u64,
) -> Result<Verdict> {
    if !profile.is_exceptional() {
        return Err(wrong_type(profile, "(2,n) or (3,1)"));
    }
    let f = profile.quadratic();
    let mut v = Verdict::new("missing-transitions", profile.field(), seed).with_f(f);
    v.depth = Some(depth);
    let mut tree = DescendantTree::of_iterates(profile, seed, DEFAULT_DEGREE_CAP)?;
    let roots = tree.roots().to_vec();
    for &r in &roots {
        tree.expand_below(r, depth.saturating_sub(1))?;
    }
    let candidates: Vec<usize> = (0..tree.len())
        .filter(|&i| tree.node(i).level < depth)
        .collect();
    let mut classes = std::collections::BTreeMap::<String, u64>::new();
    let mut witnesses = Vec::new();
    for idx in candidates {
        if let Ok(w) = window_at(&mut tree, idx)? {
            v.exercised += 1;
            *classes.entry(w.class.clone()).or_insert(0) += 1;
            if w.kind == WindowKind::Forbidden {
                witnesses.push(json!({
                    "g": tree.node(idx).poly.to_json(),
                    "signature": w.signature,
                    "class": w.class,
                }));
            }
        }
    }
    v.detail = json!({ "classes": classes });
    if !witnesses.is_empty() {
        return Ok(v.fail(json!({ "occurrences": witnesses })));
    }
    if v.exercised == 0 {
        v.outcome = Outcome::Inconclusive;
        v.witness = Some(json!({ "reason": "no qualifying chains" }));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{enumerate_quadratics, Letter};

    fn quad(field: &Field, a: i64, b: i64) -> MonicQuadratic {
        MonicQuadratic::new(&field.from_int(a), &field.from_int(b)).unwrap()
    }

    #[test]
    fn identity_examples() {
        let f5 = Field::prime(5).unwrap();
        let prof = orbit_profile(&quad(&f5, 0, 2));
        assert!(check_identity_2n(&prof).unwrap().passed());
        assert!(matches!(
            check_identity_31(&prof),
            Err(Error::WrongOrbitType { m: 2, n: 2, .. })
        ));
        let f7 = Field::prime(7).unwrap();
        let prof = orbit_profile(&quad(&f7, 0, 1));
        let v = check_identity_31(&prof).unwrap();
        assert!(v.passed());
        assert_eq!(v.detail["product"], json!([4, 4]));
        assert_eq!(v.detail["sum"], json!([5, 5]));
        assert!(check_identity_2n(&prof).is_err());
    }

    #[test]
    fn identities_hold_up_to_31() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let field = Field::prime(p).unwrap();
            for f in enumerate_quadratics(&field) {
                let prof = orbit_profile(&f);
                match prof.orbit_type() {
                    (2, _) => assert!(check_identity_2n(&prof).unwrap().passed()),
                    (3, 1) => assert!(check_identity_31(&prof).unwrap().passed()),
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let f7 = Field::prime(7).unwrap();
        let f = quad(&f7, 0, 1);
        let prof = orbit_profile(&f);
        let mut checked = 0;
        for g in crate::dynamics::enumerate_irreducibles(&f7, 2) {
            let t = crate::dynamics::ftype(&g, &prof).unwrap();
            if t.is_degenerate() {
                continue;
            }
            if t.at(1) == Letter::S {
                let v = check_pairing(&g, &f, 0, 1).unwrap();
                assert!(v.passed(), "{v}");
                checked += 1;
            } else if t.at(2) == Letter::S {
                // irreducible at step 1, splits at step 2
                let v = check_pairing(&g, &f, 1, 1).unwrap();
                assert!(v.passed(), "{v}");
                checked += 1;
            } else {
                assert!(matches!(
                    check_pairing(&g, &f, 0, 1),
                    Err(Error::Precondition(_))
                ));
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn reflection_is_an_involution() {
        let f7 = Field::prime(7).unwrap();
        let gamma = f7.from_int(3);
        for g in crate::dynamics::enumerate_irreducibles(&f7, 3).take(20) {
            let r = g.reflect(&gamma).unwrap();
            assert!(r.is_monic());
            assert!(reflection_pair(&r, &g, &gamma).unwrap());
        }
    }

    #[test]
    fn theorem_2n_skips() {
        let f5 = Field::prime(5).unwrap();
        let f = quad(&f5, 0, 2);
        let prof = orbit_profile(&f);
        let mut pass = 0;
        for g in crate::dynamics::enumerate_irreducibles(&f5, 2) {
            let t = crate::dynamics::ftype(&g, &prof).unwrap();
            let v = check_theorem_2n(&g, &f, 0).unwrap();
            if t.is_degenerate() {
                assert!(v.is_skip());
            } else if t.starts_with("ns") {
                assert!(v.passed(), "{v}");
                pass += 1;
            } else {
                assert!(v.is_skip());
                assert_eq!(v.witness.unwrap()["reason"], "type-prefix");
            }
        }
        assert!(pass > 0);
        let odd = Poly::from_ints(&f5, &[1, 1, 0, 1]);
        if is_irreducible(&odd).unwrap() {
            assert!(check_theorem_2n(&odd, &f, 0).unwrap().is_skip());
        }
        let cubic = crate::dynamics::enumerate_irreducibles(&f5, 3)
            .next()
            .unwrap();
        let v = check_theorem_2n(&cubic, &f, 0).unwrap();
        assert_eq!(v.witness.unwrap()["reason"], "odd-degree");
    }

    #[test]
    fn theorem_31_on_the_worked_quadratic() {
        let f7 = Field::prime(7).unwrap();
        let f = quad(&f7, 0, 1);
        let mut exercised = 0;
        for d in [2, 4] {
            for g in crate::dynamics::enumerate_irreducibles(&f7, d) {
                let v = check_theorem_31(&g, &f, 0).unwrap();
                assert_ne!(v.outcome, Outcome::Fail, "{v}");
                exercised += v.exercised;
            }
        }
        assert!(exercised > 0);
    }

    #[test]
    fn theorem_31_literal_statement_has_counterexamples() {
        // g of type nsn: g(f) is snn, and an n-led factor h of g(f^2) has
        // h(f) irreducible with differing letters at b_1 and b_2
        let f7 = Field::prime(7).unwrap();
        let f = quad(&f7, 0, 1);
        let prof = orbit_profile(&f);
        let g = crate::dynamics::enumerate_irreducibles(&f7, 2)
            .find(|g| crate::dynamics::ftype(g, &prof).unwrap().to_string() == "nsn")
            .expect("an nsn quadratic");
        let v = check_theorem_31_literal(&g, &f, 0).unwrap();
        assert_eq!(v.outcome, Outcome::Fail);
        let restricted = check_theorem_31(&g, &f, 0).unwrap();
        assert_eq!(restricted.witness.unwrap()["reason"], "outside-hypothesis");
    }

    #[test]
    fn missing_transitions_on_the_worked_quadratic() {
        let f7 = Field::prime(7).unwrap();
        let prof = orbit_profile(&quad(&f7, 0, 1));
        let v = check_missing_transitions(&prof, 6, 0).unwrap();
        assert_ne!(v.outcome, Outcome::Fail, "{}", v.to_json());
        let prof = orbit_profile(&quad(&f7, 0, 0));
        assert!(check_missing_transitions(&prof, 6, 0).is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let f5 = Field::prime(5).unwrap();
        let v = check_identity_2n(&orbit_profile(&quad(&f5, 0, 2))).unwrap();
        let j = v.to_json();
        for key in [
            "claim", "field", "f", "g", "passed", "skip", "witness", "seed",
        ] {
            assert!(j.get(key).is_some(), "{key}");
        }
        assert_eq!(j["f"], json!([2, 0]));
    }
}
