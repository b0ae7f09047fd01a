#![no_main]

use libfuzzer_sys::fuzz_target;
use mukai_bn_cli::golden::{parse_counterexamples, parse_exceptional, parse_twisted};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_counterexamples(text);
    let _ = parse_exceptional(text);
    let _ = parse_twisted(text);
});
