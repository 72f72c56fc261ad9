#![no_main]

use libfuzzer_sys::fuzz_target;
use pathcert::certificate::{verify, Certificate};
use pathcert::families::cycle;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(cert) = Certificate::from_json(text) else { return };
    assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert);
    // The verifier must reject or accept, never panic.
    let _ = verify(&cycle(5).unwrap(), &cert);
});
