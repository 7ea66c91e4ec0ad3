#![no_main]

use iterquad::cli::parse_field_spec;
use iterquad::Field;
use libfuzzer_sys::fuzz_target;

// Layout: 8 bytes of p, 1 byte of k, the rest is the modulus text.
fuzz_target!(|data: &[u8]| {
    if data.len() < 9 {
        return;
    }
    let p = u64::from_le_bytes(data[..8].try_into().unwrap()) % 1_000;
    let k = data[8] as u32 % 6;
    let text = String::from_utf8_lossy(&data[9..]);
    let modulus = (!text.is_empty()).then_some(text.as_ref());
    if let Ok(spec) = parse_field_spec(p, Some(k), modulus) {
        let field = Field::new(spec).unwrap();
        assert!(field.order() >= 3);
    }
});
