#![no_main]

use libfuzzer_sys::fuzz_target;
use pathcert::io::{read_dimacs, write_dimacs};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = read_dimacs(text) {
        assert_eq!(read_dimacs(&write_dimacs(&g)).unwrap(), g);
    }
});
