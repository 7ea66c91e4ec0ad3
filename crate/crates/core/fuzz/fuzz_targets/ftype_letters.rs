#![no_main]

use iterquad::FType;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(t) = text.parse::<FType>() {
        assert_eq!(t.to_string().parse::<FType>().unwrap(), t);
    }
});
