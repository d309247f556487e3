#![no_main]

use incdep::grammar::{check_grammar, load_grammar};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let report = check_grammar(text);
        // the loader fails exactly when the checker finds an error
        assert_eq!(load_grammar(text).is_ok(), report.errors.is_empty());
    }
});
