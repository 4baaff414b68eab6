#![no_main]

use libfuzzer_sys::fuzz_target;
use tadic_cli::config::parse_config;
use tadic_cli::RunConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(pairs) = parse_config(text) {
        let _ = RunConfig::from_pairs(&pairs);
    }
});
