//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{all_of_degree, trial_division};
use iterquad::cli::main_with;
use iterquad::dynamics::CensusScope;
use iterquad::verify::{run, Claim, ClaimSet, RunOutput};
use iterquad::{factor, is_irreducible, Field, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const IDENTITY_PRIME_MAX: u64 = 61;
const IDENTITY_TIME_LIMIT: Duration = Duration::from_secs(60);
const CENSUS_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];
const CENSUS_TIME_LIMIT: Duration = Duration::from_secs(600);
const DEPTH: usize = 6;
const G_DEGREE_MAX: usize = 4;
const DEGREE_CAP: usize = 512;
const SEED: u64 = 0;
const ORACLE_PRIMES: [u64; 3] = [3, 5, 7];
const ORACLE_DEGREE_MAX: usize = 4;
const RANDOM_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];
const RANDOM_INPUTS: u64 = 1000;
const RANDOM_DEGREE_MAX: usize = 12;
const DETERMINISM_PRIMES: &str = "3,5,7";
const ALLOWED_FAILURES: u64 = 0;

const FORBIDDEN_2N: [&str; 3] = ["nn/nn", "nn/ns", "ns/ns"];
const COMPLEMENT_2N: [&str; 3] = ["sn/sn", "sn/ss", "ss/ss"];
const FORBIDDEN_31: [&str; 2] = ["nss/nss", "snn/snn"];
const COMPLEMENT_31: [&str; 2] = ["nnn/nnn", "sss/sss"];

struct Line {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn scope() -> CensusScope {
    CensusScope {
        depth: DEPTH,
        g_degree_max: G_DEGREE_MAX,
        degree_cap: DEGREE_CAP,
        seed: SEED,
    }
}

fn fields(primes: impl IntoIterator<Item = u64>) -> Vec<Field> {
    primes
        .into_iter()
        .map(|p| Field::prime(p).unwrap())
        .collect()
}

fn claims(list: &[Claim]) -> ClaimSet {
    list.iter().copied().collect()
}

fn identities() -> Line {
    let primes: Vec<u64> = (3..=IDENTITY_PRIME_MAX)
        .filter(|&p| iterquad::ffield::is_prime(p))
        .collect();
    let start = Instant::now();
    let out = run(
        &fields(primes.clone()),
        &scope(),
        &claims(&[Claim::Identities]),
    )
    .unwrap();
    let took = start.elapsed();
    let r = &out.report;
    let checked_2n = r.counter("identity-2n:checked");
    let checked_31 = r.counter("identity-31:checked");
    let failures = r.counter("identity-2n:failures") + r.counter("identity-31:failures");
    let quadratics: u64 = r.orbit_types.values().flat_map(|t| t.values()).sum();
    let expected: u64 = primes.iter().map(|p| p * p).sum();
    Line {
        id: 1,
        name: "orbit identities for (2,n) and (3,1), p <= 61",
        pass: failures == ALLOWED_FAILURES
            && quadratics == expected
            && checked_2n > 0
            && checked_31 > 0
            && took < IDENTITY_TIME_LIMIT,
        detail: format!(
            "{} primes, {quadratics} quadratics, {checked_2n} (2,n) and {checked_31} (3,1) profiles, {failures} failures, {:.1}s",
            primes.len(),
            took.as_secs_f64()
        ),
    }
}

fn theorem_line(
    out: &RunOutput,
    id: u32,
    name: &'static str,
    key: &str,
    took: Duration,
) -> (Line, u64) {
    let r = &out.report;
    let exercised = r.counter(&format!("{key}:exercised"));
    let failures = r.counter(&format!("{key}:failures"));
    let line = Line {
        id,
        name,
        pass: exercised > 0 && failures == ALLOWED_FAILURES && took < CENSUS_TIME_LIMIT,
        detail: format!("{exercised} exercised, {failures} counterexamples"),
    };
    (line, exercised)
}

fn census_criteria() -> Vec<Line> {
    let start = Instant::now();
    let out = run(&fields(CENSUS_PRIMES), &scope(), &claims(&Claim::ALL)).unwrap();
    let took = start.elapsed();
    let r = &out.report;

    let (mut l2, _) = theorem_line(
        &out,
        2,
        "factors of g(f^2) are square at b_n, type (2,n)",
        "theorem-2n",
        took,
    );
    l2.detail
        .push_str(&format!(", census {:.1}s", took.as_secs_f64()));

    let (mut l3, _) = theorem_line(
        &out,
        3,
        "H(b1)H(b2) is a square for factors H of g(f^3), type (3,1)",
        "theorem-31",
        took,
    );
    let x2_plus_1 = out
        .verdicts
        .iter()
        .find(|v| {
            v.claim == "theorem-31"
                && v.field.p == 7
                && v.f.as_ref().map(|f| f.to_json()) == Some(json!([1, 0]))
        })
        .map(|v| v.exercised)
        .unwrap_or(0);
    l3.pass &= x2_plus_1 > 0;
    l3.detail.push_str(&format!(
        " (g with g(f^2) irreducible; x^2+1 over F_7: {x2_plus_1} exercised); all even-degree g: {} exercised, {} violations",
        r.counter("theorem-31-literal:exercised"),
        r.counter("theorem-31-literal:violations")
    ));

    let mut forbidden = 0;
    let mut missing = Vec::new();
    let mut windows = 0;
    for (family, bad, good) in [
        ("(2,n)", &FORBIDDEN_2N[..], &COMPLEMENT_2N[..]),
        ("(3,1)", &FORBIDDEN_31[..], &COMPLEMENT_31[..]),
    ] {
        windows += r.counter(&format!("missing:{family}:windows"));
        for class in bad {
            forbidden += r.counter(&format!("missing:{family}:class:{class}"));
        }
        for class in good {
            if r.counter(&format!("missing:{family}:class:{class}")) == 0 {
                missing.push(format!("{family} {class}"));
            }
        }
    }
    let other = r.counter("missing:(2,n):other") + r.counter("missing:(3,1):other");
    let l4 = Line {
        id: 4,
        name: "forbidden transitions absent, complements realized",
        pass: forbidden == 0 && missing.is_empty() && other == 0 && windows > 0,
        detail: format!(
            "{windows} windows, {forbidden} forbidden, {other} unclassified, unrealized complements: [{}]",
            missing.join(", ")
        ),
    };

    let allow_checked = r.counter("structure:allowable-checked");
    let allow_viol = r.counter("violations:allowable");
    let l5 = Line {
        id: 5,
        name: "descendants of s-led parents are allowable",
        pass: allow_checked > 0 && allow_viol == ALLOWED_FAILURES,
        detail: format!(
            "{allow_checked} pairs checked, {allow_viol} violations ({} odd-degree parents counted apart)",
            r.counter("structure:odd-degree-parents")
        ),
    };

    let pair_checked = r.counter("structure:pairing-checked");
    let pair_viol = r.counter("violations:pairing");
    let l6 = Line {
        id: 6,
        name: "split factors are reflections through gamma, unit preserved",
        pass: pair_checked > 0 && pair_viol == ALLOWED_FAILURES,
        detail: format!("{pair_checked} splits checked, {pair_viol} violations"),
    };
    vec![l2, l3, l4, l5, l6]
}

fn factor_oracle() -> Line {
    let mut exhaustive = 0;
    let mut mismatches = 0;
    for p in ORACLE_PRIMES {
        let field = Field::prime(p).unwrap();
        for deg in 0..=ORACLE_DEGREE_MAX {
            for a in all_of_degree(&field, deg) {
                let got = factor(&a, SEED).unwrap();
                let parts: Vec<(Vec<u64>, u32)> = got
                    .parts
                    .iter()
                    .map(|(q, m)| (q.raw_coeffs().to_vec(), *m))
                    .collect();
                if (got.unit.raw(), parts) != trial_division(&a) {
                    mismatches += 1;
                }
                exhaustive += 1;
            }
        }
    }
    let mut random = 0;
    let mut bad_reconstruction = 0;
    for p in RANDOM_PRIMES {
        let field = Field::prime(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ p);
        for i in 0..RANDOM_INPUTS {
            let deg = rng.gen_range(0..=RANDOM_DEGREE_MAX);
            let mut c: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
            c.push(rng.gen_range(1..p));
            let a = Poly::from_encodings(&field, &c).unwrap();
            let fz = factor(&a, i).unwrap();
            let irreducible = fz
                .parts
                .iter()
                .all(|(q, _)| q.is_monic() && is_irreducible(q).unwrap());
            if fz.reconstruct() != a || !irreducible {
                bad_reconstruction += 1;
            }
            random += 1;
        }
    }
    Line {
        id: 7,
        name: "factorization agrees with trial division and reconstructs",
        pass: mismatches == 0 && bad_reconstruction == 0,
        detail: format!(
            "{exhaustive} exhaustive inputs, {mismatches} mismatches; {random} random inputs, {bad_reconstruction} bad reconstructions"
        ),
    }
}

fn determinism() -> Line {
    let depth = DEPTH.to_string();
    let seed = SEED.to_string();
    let args = [
        "iterquad",
        "verify",
        "all",
        "--primes",
        DETERMINISM_PRIMES,
        "--depth",
        &depth,
        "--seed",
        &seed,
    ];
    let once = || {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with(args, &mut out, &mut err);
        (code, out)
    };
    let (c1, a) = once();
    let (c2, b) = once();
    Line {
        id: 8,
        name: "verify all is byte-deterministic",
        pass: c1 == c2 && a == b && !a.is_empty(),
        detail: format!(
            "primes {DETERMINISM_PRIMES}, depth {DEPTH}: {} bytes, exit codes {c1}/{c2}",
            a.len()
        ),
    }
}

fn main() -> ExitCode {
    let mut lines = vec![identities()];
    lines.extend(census_criteria());
    lines.push(factor_oracle());
    lines.push(determinism());
    lines.sort_by_key(|l| l.id);
    let mut ok = true;
    for l in &lines {
        ok &= l.pass;
        println!(
            "{} criterion {}: {} ({})",
            if l.pass { "PASS" } else { "FAIL" },
            l.id,
            l.name,
            l.detail
        );
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
