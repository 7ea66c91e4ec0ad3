#![no_main]

use iterquad::{factor, is_irreducible, Field, Poly};
use libfuzzer_sys::fuzz_target;

// First byte picks the prime, the rest are coefficients (constant first).
fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else {
        return;
    };
    let p = [3u64, 5, 7, 11, 13][pick as usize % 5];
    let field = Field::prime(p).unwrap();
    let coeffs: Vec<i64> = rest.iter().take(40).map(|&b| b as i64).collect();
    let a = Poly::from_ints(&field, &coeffs);
    if a.is_zero() {
        return;
    }
    let fz = factor(&a, pick as u64).unwrap();
    assert_eq!(fz.reconstruct(), a);
    for (part, _) in &fz.parts {
        assert!(is_irreducible(part).unwrap());
    }
});
