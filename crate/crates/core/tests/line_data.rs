//! The JSON line table shipped in `constants/` must stay in lock-step with
//! the built-in table, so that file-driven and programmatic runs agree bit
//! for bit.

use std::path::Path;

use spinsqueeze::TransitionLine;

#[test]
fn shipped_cs_d1_matches_builtin() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../constants/cs_d1.json");
    let loaded = TransitionLine::from_json_file(Path::new(path)).expect("constants/cs_d1.json");
    assert_eq!(loaded, TransitionLine::cs_d1());
}
