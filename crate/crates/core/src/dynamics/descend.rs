//! Immediate descendants and lazily expanded descendant trees.

use serde_json::{json, Value};

use super::{ftype_raw, FType, OrbitProfile};
use crate::error::{Error, Result};
use crate::factor::{factor, is_irreducible};
use crate::ffield::FqElem;
use crate::poly::Poly;

/// Factors of `H(f(x))` for one node.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub unit: FqElem,
    pub parts: Vec<(Poly, FType)>,
    /// `H(f)` had a repeated factor; `parts` then lists each factor once.
    pub squarefree: bool,
}

fn check_input(h: &Poly, profile: &OrbitProfile) -> Result<()> {
    if h.field() != profile.field() {
        return Err(Error::FieldMismatch);
    }
    if h.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !h.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(())
}

/// Irreducible factors of `H(f(x))` with their f-types.
pub fn immediate_descendants(
    h: &Poly,
    profile: &OrbitProfile,
    seed: u64,
    cap: usize,
) -> Result<Expansion> {
    check_input(h, profile)?;
    if !is_irreducible(h)? {
        return Err(Error::Reducible);
    }
    expand_unchecked(h, profile, seed, cap)
}

fn expand_unchecked(h: &Poly, profile: &OrbitProfile, seed: u64, cap: usize) -> Result<Expansion> {
    let composed = h.compose_capped(&profile.quadratic().as_poly(), cap)?;
    let fact = factor(&composed, seed)?;
    let squarefree = fact.is_squarefree();
    Ok(Expansion {
        unit: fact.unit,
        parts: fact
            .parts
            .into_iter()
            .map(|(p, _)| {
                let t = ftype_raw(&p, profile);
                (p, t)
            })
            .collect(),
        squarefree,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StopReason {
    DegreeCap,
    NotSquarefree,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::DegreeCap => "degree-cap",
            StopReason::NotSquarefree => "not-squarefree",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub poly: Poly,
    pub ftype: FType,
    /// Distance from the root of its tree.
    pub level: usize,
    pub parent: Option<usize>,
    /// `None` until expanded.
    pub children: Option<Vec<usize>>,
    pub stop: Option<StopReason>,
    /// Leading coefficient of `H(f)` once expanded.
    pub unit: Option<FqElem>,
}

impl Node {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn is_expanded(&self) -> bool {
        self.children.is_some() || self.stop.is_some()
    }
}

/// Nodes are monic irreducibles; the children of a node `H` are the
/// irreducible factors of `H(f)`. Expansion happens on demand.
#[derive(Clone, Debug)]
pub struct DescendantTree {
    profile: OrbitProfile,
    seed: u64,
    cap: usize,
    nodes: Vec<Node>,
    roots: Vec<usize>,
}

impl DescendantTree {
    /// `roots` must be monic irreducible; this is checked.
    pub fn new(profile: &OrbitProfile, roots: &[Poly], seed: u64, cap: usize) -> Result<Self> {
        for r in roots {
            check_input(r, profile)?;
            if !is_irreducible(r)? {
                return Err(Error::Reducible);
            }
        }
        Ok(Self::from_trusted_roots(profile, roots, seed, cap))
    }

    pub(crate) fn from_trusted_roots(
        profile: &OrbitProfile,
        roots: &[Poly],
        seed: u64,
        cap: usize,
    ) -> Self {
        let mut tree = DescendantTree {
            profile: profile.clone(),
            seed,
            cap,
            nodes: Vec::new(),
            roots: Vec::new(),
        };
        for r in roots {
            let idx = tree.push(r.clone(), 0, None);
            tree.roots.push(idx);
        }
        tree
    }

    /// Rooted at the irreducible factors of `f` itself, so level `i` holds
    /// the factors of `f^(i+1)`.
    pub fn of_iterates(profile: &OrbitProfile, seed: u64, cap: usize) -> Result<Self> {
        let fact = factor(&profile.quadratic().as_poly(), seed)?;
        let roots: Vec<Poly> = fact.parts.into_iter().map(|(p, _)| p).collect();
        Ok(Self::from_trusted_roots(profile, &roots, seed, cap))
    }

    fn push(&mut self, poly: Poly, level: usize, parent: Option<usize>) -> usize {
        let ftype = ftype_raw(&poly, &self.profile);
        self.nodes.push(Node {
            poly,
            ftype,
            level,
            parent,
            children: None,
            stop: None,
            unit: None,
        });
        self.nodes.len() - 1
    }

    pub fn profile(&self) -> &OrbitProfile {
        &self.profile
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn node(&self, idx: usize) -> &Node {
        &self.nodes[idx]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Children of `idx`, expanding it if needed. A node whose composition
    /// exceeds the cap or is not squarefree gets a stop reason and no children.
    pub fn expand(&mut self, idx: usize) -> Result<Vec<usize>> {
        if let Some(ch) = &self.nodes[idx].children {
            return Ok(ch.clone());
        }
        if self.nodes[idx].stop.is_some() {
            return Ok(Vec::new());
        }
        let node_seed = self.seed ^ (idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let exp = match expand_unchecked(&self.nodes[idx].poly, &self.profile, node_seed, self.cap)
        {
            Ok(e) => e,
            Err(Error::DegreeCap { .. }) => {
                self.nodes[idx].stop = Some(StopReason::DegreeCap);
                return Ok(Vec::new());
            }
            Err(e) => return Err(e),
        };
        if !exp.squarefree {
            self.nodes[idx].stop = Some(StopReason::NotSquarefree);
            self.nodes[idx].unit = Some(exp.unit);
            return Ok(Vec::new());
        }
        let level = self.nodes[idx].level + 1;
        let children: Vec<usize> = exp
            .parts
            .into_iter()
            .map(|(p, _)| self.push(p, level, Some(idx)))
            .collect();
        self.nodes[idx].unit = Some(exp.unit);
        self.nodes[idx].children = Some(children.clone());
        Ok(children)
    }

    /// Expands everything below `idx` down to `steps` levels further.
    pub fn expand_below(&mut self, idx: usize, steps: usize) -> Result<()> {
        let mut frontier = vec![idx];
        for _ in 0..steps {
            let mut next = Vec::new();
            for i in frontier {
                next.extend(self.expand(i)?);
            }
            frontier = next;
        }
        Ok(())
    }

    /// Nodes exactly `steps` levels below `idx` (expanding as needed) and
    /// the first stop encountered on the way, if any.
    pub fn generation(
        &mut self,
        idx: usize,
        steps: usize,
    ) -> Result<(Vec<usize>, Option<Truncation>)> {
        let mut frontier = vec![idx];
        let mut trunc = None;
        for step in 0..steps {
            let mut next = Vec::new();
            for &i in &frontier {
                next.extend(self.expand(i)?);
                if let (None, Some(reason)) = (&trunc, self.nodes[i].stop) {
                    trunc = Some(Truncation {
                        level: step,
                        reason,
                    });
                }
            }
            frontier = next;
        }
        Ok((frontier, trunc))
    }

    /// The chain of type multisets from `idx` down `depth` levels.
    pub fn chain(&mut self, idx: usize, depth: usize) -> Result<TransitionRecord> {
        let mut levels = vec![vec![self.nodes[idx].ftype.clone()]];
        let mut frontier = vec![idx];
        let mut truncation = None;
        for step in 0..depth {
            let mut next = Vec::new();
            for &i in &frontier {
                next.extend(self.expand(i)?);
                if let (None, Some(reason)) = (&truncation, self.nodes[i].stop) {
                    truncation = Some(Truncation {
                        level: step,
                        reason,
                    });
                }
            }
            if truncation.is_some() {
                break;
            }
            let mut types: Vec<FType> = next.iter().map(|&c| self.nodes[c].ftype.clone()).collect();
            types.sort();
            levels.push(types);
            frontier = next;
        }
        Ok(TransitionRecord {
            f: self.profile.clone(),
            seed_g: self.nodes[idx].poly.clone(),
            levels,
            truncation,
        })
    }
}

/// Where and why a chain stopped before its requested depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    /// Level whose expansion failed.
    pub level: usize,
    pub reason: StopReason,
}

/// Type multisets of the factors of `g, g(f), .., g(f^k)`.
#[derive(Clone, Debug)]
pub struct TransitionRecord {
    pub f: OrbitProfile,
    pub seed_g: Poly,
    pub levels: Vec<Vec<FType>>,
    pub truncation: Option<Truncation>,
}

impl TransitionRecord {
    pub fn steps(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn is_degenerate(&self) -> bool {
        self.levels.iter().flatten().any(FType::is_degenerate)
    }

    /// Levels joined by "→", types within a level by "/".
    pub fn signature(&self) -> String {
        signature_of(&self.levels)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.f.field().spec().to_json(),
            "f": self.f.quadratic().to_json(),
            "orbit_type": [self.f.m(), self.f.n()],
            "g": self.seed_g.to_json(),
            "steps": self.steps(),
            "signature": self.signature(),
            "degenerate": self.is_degenerate(),
            "truncated": self.truncation.map(|t| json!({
                "level": t.level,
                "reason": t.reason.as_str(),
            })),
        })
    }
}

pub(crate) fn signature_of(levels: &[Vec<FType>]) -> String {
    levels
        .iter()
        .map(|l| {
            l.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("/")
        })
        .collect::<Vec<_>>()
        .join("→")
}

/// Chain of `depth` steps from a monic irreducible `g`.
pub fn transition_chain(
    g: &Poly,
    profile: &OrbitProfile,
    depth: usize,
    seed: u64,
    cap: usize,
) -> Result<TransitionRecord> {
    let mut tree = DescendantTree::new(profile, std::slice::from_ref(g), seed, cap)?;
    tree.chain(0, depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{orbit_profile, shift_type, Letter};
    use crate::ffield::Field;
    use crate::poly::{iterate, MonicQuadratic};

    fn quad(field: &Field, a: i64, b: i64) -> MonicQuadratic {
        MonicQuadratic::new(&field.from_int(a), &field.from_int(b)).unwrap()
    }

    #[test]
    fn descendants_follow_leading_letter() {
        let f7 = Field::prime(7).unwrap();
        let prof = orbit_profile(&quad(&f7, 0, 1));
        let mut seen_n = 0;
        let mut seen_s = 0;
        for g in crate::dynamics::enumerate_irreducibles(&f7, 2) {
            let t = ftype_raw(&g, &prof);
            if t.is_degenerate() {
                continue;
            }
            let e = immediate_descendants(&g, &prof, 1, 512).unwrap();
            match t.at(1) {
                Letter::N => {
                    seen_n += 1;
                    assert_eq!(e.parts.len(), 1);
                    assert_eq!(e.parts[0].1, shift_type(&t, &prof).unwrap());
                }
                _ => {
                    seen_s += 1;
                    assert_eq!(e.parts.len(), 2);
                    assert_eq!(e.parts[0].0.degree(), e.parts[1].0.degree());
                }
            }
        }
        assert!(seen_n > 0 && seen_s > 0);
    }

    #[test]
    fn linear_descendants_match_root_count() {
        // (x - beta)(f) = f - beta splits iff it has a root in F_5
        let f5 = Field::prime(5).unwrap();
        for fq in crate::dynamics::enumerate_quadratics(&f5) {
            let prof = orbit_profile(&fq);
            for beta in f5.elements() {
                let h = Poly::linear(&beta);
                let target = fq.as_poly().sub(&Poly::constant(&beta)).unwrap();
                let roots = f5
                    .elements()
                    .filter(|x| target.eval(x).unwrap().is_zero())
                    .count();
                let e = immediate_descendants(&h, &prof, 0, 512).unwrap();
                let degrees: Vec<usize> =
                    e.parts.iter().map(|(p, _)| p.degree().unwrap()).collect();
                match roots {
                    0 => assert_eq!(degrees, vec![2]),
                    1 => assert!(!e.squarefree && degrees == vec![1]),
                    _ => assert_eq!(degrees, vec![1, 1]),
                }
            }
        }
    }

    #[test]
    fn chain_examples() {
        let f7 = Field::prime(7).unwrap();
        let prof = orbit_profile(&quad(&f7, 0, 1));
        let g = Poly::from_ints(&f7, &[1, 0, 1]);
        let rec = transition_chain(&g, &prof, 0, 0, 512).unwrap();
        assert_eq!(rec.levels.len(), 1);
        assert_eq!(rec.levels[0], vec![ftype_raw(&g, &prof)]);

        let mut found_nn = false;
        let mut found_nns = false;
        for deg in [2, 4] {
            for g in crate::dynamics::enumerate_irreducibles(&f7, deg) {
                let t = ftype_raw(&g, &prof);
                if t.is_degenerate() {
                    continue;
                }
                if t.starts_with("nn") {
                    found_nn = true;
                    let rec = transition_chain(&g, &prof, 2, 0, 512).unwrap();
                    let sizes: Vec<usize> = rec.levels.iter().map(Vec::len).collect();
                    assert_eq!(sizes, vec![1, 1, 1]);
                }
                if t.to_string() == "nns" {
                    found_nns = true;
                    let rec = transition_chain(&g, &prof, 3, 0, 512).unwrap();
                    assert_eq!(rec.levels[3].len(), 2);
                    let last = rec.signature().rsplit('→').next().unwrap().to_string();
                    assert_ne!(last, "nss/nss");
                    assert_ne!(last, "snn/snn");
                }
            }
        }
        assert!(found_nn && found_nns);
    }

    #[test]
    fn chain_truncates_at_cap() {
        let f7 = Field::prime(7).unwrap();
        let prof = orbit_profile(&quad(&f7, 0, 1));
        let g = Poly::from_ints(&f7, &[1, 0, 1]);
        let rec = transition_chain(&g, &prof, 40, 0, 16).unwrap();
        let t = rec.truncation.unwrap();
        assert_eq!(t.reason, StopReason::DegreeCap);
        assert_eq!(t.level, rec.levels.len() - 1);
        let rec = transition_chain(&g, &prof, 3, 0, 2).unwrap();
        assert_eq!(rec.levels.len(), 1);
        assert_eq!(rec.truncation.unwrap().level, 0);
        assert!(rec.to_json()["truncated"].is_object());
    }

    #[test]
    fn descendant_partition_matches_direct_factorization() {
        for p in [3u64, 5, 7] {
            let field = Field::prime(p).unwrap();
            for fq in crate::dynamics::enumerate_quadratics(&field).step_by(3) {
                let prof = orbit_profile(&fq);
                for g in crate::dynamics::enumerate_irreducibles(&field, 2).take(4) {
                    let mut tree = DescendantTree::new(&prof, &[g.clone()], 7, 512).unwrap();
                    for i in 0..3usize {
                        let (gen, trunc) = tree.generation(0, i + 1).unwrap();
                        if trunc.is_some() {
                            break;
                        }
                        let mut via_tree: Vec<Poly> =
                            gen.iter().map(|&c| tree.node(c).poly.clone()).collect();
                        via_tree.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
                        let direct = g
                            .compose(&iterate(&fq, i as u32 + 1, 512).unwrap())
                            .unwrap();
                        let fact = factor(&direct, 3).unwrap();
                        let direct_parts: Vec<Poly> =
                            fact.parts.into_iter().map(|(p, _)| p).collect();
                        assert_eq!(via_tree, direct_parts, "f = {fq:?}, g = {g}, i = {i}");
                    }
                }
            }
        }
    }
}
