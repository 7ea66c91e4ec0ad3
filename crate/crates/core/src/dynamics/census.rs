//! Aggregated census counts with order-independent merging.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{enumerate_quadratics, orbit_profile};
use crate::ffield::{Field, FieldSpec};
use crate::TOOL_VERSION;

/// Parameters that determine a census run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusScope {
    pub depth: usize,
    pub g_degree_max: usize,
    pub degree_cap: usize,
    pub seed: u64,
}

impl Default for CensusScope {
    fn default() -> Self {
        CensusScope {
            depth: 6,
            g_degree_max: 4,
            degree_cap: crate::poly::DEFAULT_DEGREE_CAP,
            seed: 0,
        }
    }
}

impl CensusScope {
    pub fn to_json(&self) -> Value {
        json!({
            "depth": self.depth,
            "g_degree_max": self.g_degree_max,
            "degree_cap": self.degree_cap,
            "seed": self.seed,
        })
    }
}

/// Counts keyed by name, merged by addition. Listings (exceptional
/// instances, counterexamples) are kept sorted by their serialization so
/// that merging in any order gives the same report.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusReport {
    pub version: String,
    pub scope: CensusScope,
    pub fields: Vec<FieldSpec>,
    /// field label -> "(m,n)" -> number of quadratics
    pub orbit_types: BTreeMap<String, BTreeMap<String, u64>>,
    /// transition signature -> occurrences
    pub signatures: BTreeMap<String, u64>,
    pub counters: BTreeMap<String, u64>,
    pub listings: BTreeMap<String, Vec<Value>>,
    pub counterexamples: Vec<Value>,
}

impl CensusReport {
    pub fn new(scope: CensusScope) -> Self {
        CensusReport {
            version: TOOL_VERSION.to_string(),
            scope,
            fields: Vec::new(),
            orbit_types: BTreeMap::new(),
            signatures: BTreeMap::new(),
            counters: BTreeMap::new(),
            listings: BTreeMap::new(),
            counterexamples: Vec::new(),
        }
    }

    pub fn add_field(&mut self, spec: &FieldSpec) {
        if let Err(pos) = self.fields.binary_search(spec) {
            self.fields.insert(pos, spec.clone());
        }
    }

    pub fn bump(&mut self, key: &str, by: u64) {
        *self.counters.entry(key.to_string()).or_insert(0) += by;
    }

    pub fn counter(&self, key: &str) -> u64 {
        self.counters.get(key).copied().unwrap_or(0)
    }

    pub fn bump_signature(&mut self, sig: &str) {
        *self.signatures.entry(sig.to_string()).or_insert(0) += 1;
    }

    pub fn list(&mut self, key: &str, item: Value) {
        self.listings.entry(key.to_string()).or_default().push(item);
    }

    pub fn counterexample(&mut self, item: Value) {
        self.counterexamples.push(item);
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Commutative, associative combination of two reports of the same scope.
    pub fn merge(&mut self, other: CensusReport) {
        for f in &other.fields {
            self.add_field(f);
        }
        for (field, types) in other.orbit_types {
            let slot = self.orbit_types.entry(field).or_default();
            for (t, c) in types {
                *slot.entry(t).or_insert(0) += c;
            }
        }
        for (k, v) in other.signatures {
            *self.signatures.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.counters {
            *self.counters.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.listings {
            self.listings.entry(k).or_default().extend(v);
        }
        self.counterexamples.extend(other.counterexamples);
        self.normalize();
    }

    /// Sorts every listing by its serialized form.
    pub fn normalize(&mut self) {
        let key = |v: &Value| v.to_string();
        for v in self.listings.values_mut() {
            v.sort_by_cached_key(key);
        }
        self.counterexamples.sort_by_cached_key(key);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "version": self.version,
            "scope": self.scope.to_json(),
            "fields": self.fields.iter().map(FieldSpec::to_json).collect::<Vec<_>>(),
            "orbit_types": self.orbit_types,
            "signatures": self.signatures,
            "counters": self.counters,
            "listings": self.listings,
            "counterexamples": self.counterexamples,
            "passed": self.passed(),
        })
    }
}

/// Report key for a field; extension fields include their modulus.
pub fn field_label(spec: &FieldSpec) -> String {
    match &spec.modulus {
        Some(m) if spec.k > 1 => format!(
            "{spec}[{}]",
            m.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        ),
        _ => spec.to_string(),
    }
}

/// Orbit-type frequencies over all monic quadratics of one field, listing
/// every quadratic of type `(2,n)` or `(3,1)`.
pub fn orbit_census(field: &Field, scope: CensusScope) -> CensusReport {
    let mut report = CensusReport::new(scope);
    report.add_field(field.spec());
    let label = field_label(field.spec());
    let slot = report.orbit_types.entry(label.clone()).or_default();
    let mut exceptional = Vec::new();
    for f in enumerate_quadratics(field) {
        let prof = orbit_profile(&f);
        *slot.entry(prof.orbit_type_label()).or_insert(0) += 1;
        if prof.is_exceptional() {
            let mut v = prof.to_json();
            v["field"] = json!(label);
            exceptional.push(v);
        }
    }
    report.bump("quadratics", field.order() * field.order());
    for v in exceptional {
        report.list("exceptional", v);
    }
    report.normalize();
    report
}
