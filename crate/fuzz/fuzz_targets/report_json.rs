#![no_main]

use libfuzzer_sys::fuzz_target;
use liegrade::report::Report;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(report) = Report::from_json(s) else {
        return;
    };
    // Accepted reports must round-trip bit-identically through the
    // deterministic serializer.
    let printed = report.to_json();
    let back = Report::from_json(&printed).expect("own output parses");
    assert_eq!(back, report);
    assert_eq!(back.to_json(), printed);
});
