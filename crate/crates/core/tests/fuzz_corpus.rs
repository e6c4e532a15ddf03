//! Replays the checked-in fuzz seeds through the same round-trip checks the
//! fuzz targets run.

use std::path::PathBuf;

use bincov::roundtrip;

fn replay(target: &str, check: fn(&[u8])) {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display())) {
        let path = entry.unwrap().path();
        check(&std::fs::read(&path).unwrap());
        seen += 1;
    }
    assert!(seen > 0, "no seeds for {target}");
}

#[test]
fn seeds_round_trip() {
    replay("parse_poly_text", roundtrip::poly_text);
    replay("parse_poly_json", roundtrip::poly_json);
    replay("parse_bracket_text", roundtrip::bracket_text);
    replay("parse_bracket_json", roundtrip::bracket_json);
    replay("parse_covariant_json", roundtrip::covariant_json);
    replay("parse_scalar", roundtrip::scalar);
}

#[test]
fn hostile_inputs_do_not_panic() {
    let inputs: [&[u8]; 8] = [
        b"a0^99999999999",
        b"(((((((((((((((((((((((((((((((((((((((((a0",
        b"1/0",
        b"\x04[1u][1u][11]",
        b"\xff\xfe",
        b"{\"n\": 4294967295, \"p\": 3, \"d\": 1, \"m\": 0, \"w\": 0, \"poly\": {\"ring\": [], \"terms\": []}}",
        b"{\"ring\": [\"a0\"], \"terms\": [{\"c\": \"1/0\", \"e\": [1]}]}",
        b"\x02[12]^100000",
    ];
    for input in inputs {
        roundtrip::poly_text(input);
        roundtrip::poly_json(input);
        roundtrip::bracket_text(input);
        roundtrip::bracket_json(input);
        roundtrip::covariant_json(input);
        roundtrip::scalar(input);
    }
}

mod smoke {
    use bincov::roundtrip;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig { cases: 2000, failure_persistence: None, ..ProptestConfig::default() })]

        #[test]
        fn poly_text(s in "[a0-4xz0-9 +*^()/-]{0,40}") {
            roundtrip::poly_text(s.as_bytes());
        }

        #[test]
        fn bracket_text(n in 0u8..12, s in "[\\[\\]0-9u,^*+ -]{0,30}") {
            let mut data = vec![n];
            data.extend(s.as_bytes());
            roundtrip::bracket_text(&data);
        }

        #[test]
        fn scalar(s in "[-0-9/ ]{0,12}") {
            roundtrip::scalar(s.as_bytes());
        }

        #[test]
        fn arbitrary_bytes(data in prop::collection::vec(any::<u8>(), 0..64)) {
            roundtrip::poly_text(&data);
            roundtrip::poly_json(&data);
            roundtrip::bracket_text(&data);
            roundtrip::bracket_json(&data);
            roundtrip::covariant_json(&data);
            roundtrip::scalar(&data);
        }
    }
}
