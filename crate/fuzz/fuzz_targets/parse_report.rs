#![no_main]

use gaussdist_cli::Report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(report) = Report::from_json(text) else { return };
    let again = Report::from_json(&report.to_json()).expect("serialized report parses");
    assert_eq!(again, report);
    let _ = report.render_text();
});
