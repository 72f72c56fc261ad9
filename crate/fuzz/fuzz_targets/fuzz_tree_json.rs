#![no_main]

use libfuzzer_sys::fuzz_target;
use pathcert::tree::{spider_cover, TreeJson};
use pathcert::RootedTree;

fuzz_target!(|data: &[u8]| {
    let Ok(json) = serde_json::from_slice::<TreeJson>(data) else { return };
    let Ok(tree) = RootedTree::from_json(&json) else { return };
    assert_eq!(RootedTree::from_json(&tree.to_json()).unwrap(), tree);
    if tree.len() <= 64 {
        let _ = spider_cover(&tree);
    }
});
