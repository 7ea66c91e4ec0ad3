#![no_main]

use iterquad::{Field, FieldSpec, MonicQuadratic, Poly};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    let fields = [
        Field::prime(3).unwrap(),
        Field::prime(7).unwrap(),
        Field::prime(61).unwrap(),
        Field::new(FieldSpec::extension(3, vec![1, 0, 1])).unwrap(),
    ];
    for field in &fields {
        if let Ok(p) = Poly::parse(field, &text) {
            let again = Poly::parse(field, &p.to_text()).unwrap();
            assert_eq!(p, again);
            let _ = MonicQuadratic::from_poly(&p);
        }
    }
});
