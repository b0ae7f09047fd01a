#![no_main]

use libfuzzer_sys::fuzz_target;
use mukai_bn_cli::args::INPUT_BOUND;
use mukai_bn_cli::config::parse_config;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = parse_config(text) {
        for value in [cfg.n, cfg.max_rank, cfg.r1_max, cfg.d1_max, cfg.a1_max].into_iter().flatten() {
            assert!(value.abs() <= INPUT_BOUND);
        }
    }
});
