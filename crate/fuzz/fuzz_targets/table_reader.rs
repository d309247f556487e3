#![no_main]

use incdep::table::{read_table, write_table};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(blocks) = read_table(text) {
            for block in blocks {
                let again = read_table(&write_table(&block.analysis)).unwrap();
                if !block.analysis.sentence().is_empty() {
                    assert_eq!(again[0].analysis.links(), block.analysis.links());
                }
            }
        }
    }
});
