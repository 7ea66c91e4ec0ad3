#![no_main]

use iterquad::cli::parse_primes;
use iterquad::ffield::is_prime;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(primes) = parse_primes(&text) {
        assert!(primes.windows(2).all(|w| w[0] < w[1]));
        assert!(primes.iter().all(|&p| p > 2 && is_prime(p)));
    }
});
