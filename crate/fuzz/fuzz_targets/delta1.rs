#![no_main]

use libfuzzer_sys::fuzz_target;
use liegrade::report::parse_delta1;
use liegrade::rootsys::MarkedSet;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(indices) = parse_delta1(s) else { return };
    // Accepted lists are sorted, deduplicated, nonempty, and in range.
    assert!(!indices.is_empty());
    assert!(indices.windows(2).all(|w| w[0] < w[1]));
    let max = *indices.last().unwrap();
    let set = MarkedSet::new(max, indices.iter().copied()).expect("fits its own maximum");
    assert_eq!(set.to_vec(), indices);
});
