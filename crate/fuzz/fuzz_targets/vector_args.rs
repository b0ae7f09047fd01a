#![no_main]

use libfuzzer_sys::fuzz_target;
use mukai_bn_cli::args::{parse_int, parse_vector, parse_vector_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = parse_vector(text) {
        // Display prints `(r,d,a)`, which must parse back to the same vector.
        assert_eq!(parse_vector(&v.to_string()), Ok(v));
    }
    if let Ok(x) = parse_int(text) {
        assert_eq!(parse_int(&x.to_string()), Ok(x));
    }
    let _ = parse_vector_list(text);
});
