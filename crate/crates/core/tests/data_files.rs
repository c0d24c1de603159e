use std::path::PathBuf;

use coverage_depth::cli::{parse_matrix_file, write_matrix};
use coverage_depth::families::{family_generator, FamilySpec};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(format!("{name}.txt"))
}

#[test]
fn shipped_matrices_match_generators() {
    let cases = [
        ("identity_7", FamilySpec::Identity { n: 7 }),
        ("mds_8_7_3", FamilySpec::Mds { q: 8, n: 7, k: 3 }),
        ("mds_8_7_4", FamilySpec::Mds { q: 8, n: 7, k: 4 }),
        ("simplex_2_3", FamilySpec::Simplex { q: 2, k: 3 }),
        ("hamming_2_3", FamilySpec::Hamming { q: 2, m: 3 }),
        ("ratehalf_3", FamilySpec::RateHalf { k: 3 }),
    ];
    for (name, spec) in cases {
        let path = data(name);
        let g = parse_matrix_file(&path).unwrap();
        assert_eq!(g, family_generator(&spec).unwrap(), "{name}");
        let text = std::fs::read_to_string(&path).unwrap();
        let body: String = text
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| format!("{l}\n"))
            .collect();
        assert_eq!(write_matrix(&g), body, "{name}");
    }
}

#[test]
fn missing_file_is_an_error() {
    assert!(parse_matrix_file(&data("no_such_code")).is_err());
}
