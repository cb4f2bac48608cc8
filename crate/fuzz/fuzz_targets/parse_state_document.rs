#![no_main]

use gaussdist::document::{parse_document, parse_document_bytes};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(doc) = parse_document_bytes(data) else { return };
    // accepted documents re-serialize to an equivalent document
    let text = serde_json::to_string(&doc).expect("document serializes");
    let again = parse_document(&text).expect("serialized document parses");
    assert_eq!(again, doc);
    let _ = doc.to_states();
});
