#![no_main]

use libfuzzer_sys::fuzz_target;
use pathcert::io::{read_graph_auto, read_graph_json, write_graph_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = read_graph_auto(text);
    if let Ok(g) = read_graph_json(text) {
        assert_eq!(read_graph_json(&write_graph_json(&g)).unwrap(), g);
    }
});
