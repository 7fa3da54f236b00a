//! The shipped corpus manifest records expected outcomes per named
//! generator; this test recomputes every claim.

use serde_json::Value;

use mombetti::{
    complex::{f_to_h, f_vector},
    corpus::parse_generator,
    hochster::hochster_betti,
    koszul::koszul_betti,
    linalg::PrimeField,
    neighbourliness,
    quasitoric::{freeness_check, SubgroupMatrix},
};

#[test]
fn manifest_claims_hold() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/manifest.json");
    let text = std::fs::read_to_string(path).expect("corpus/manifest.json present");
    let doc: Value = serde_json::from_str(&text).unwrap();
    let field = PrimeField::new(doc["field"].as_u64().unwrap() as u32).unwrap();
    let items = doc["items"].as_array().unwrap();
    assert!(items.len() >= 50);

    for item in items {
        let spec = item["generator"].as_str().unwrap();
        let expect = &item["expect"];
        let k = parse_generator(spec).unwrap();
        assert_eq!(k.m() as u64, item["m"].as_u64().unwrap(), "{spec}: m");
        assert_eq!(
            k.polytope_dim() as u64,
            item["n"].as_u64().unwrap(),
            "{spec}: n"
        );

        let table = koszul_betti(&k, field).unwrap();
        let totals: Vec<u64> = table.totals().iter().map(|&x| x as u64).collect();
        let expected_totals: Vec<u64> = expect["totals"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap())
            .collect();
        assert_eq!(totals, expected_totals, "{spec}: totals");

        let f = f_vector(&k);
        let fe: Vec<i64> = expect["f_vector"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_i64().unwrap())
            .collect();
        assert_eq!(f.entries, fe, "{spec}: f-vector");
        let h = f_to_h(&f);
        let he: Vec<i64> = expect["h_vector"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_i64().unwrap())
            .collect();
        assert_eq!(h.entries, he, "{spec}: h-vector");

        assert_eq!(
            neighbourliness(&k) as u64,
            expect["neighbourliness"].as_u64().unwrap(),
            "{spec}: neighbourliness"
        );

        if expect["oracle_equivalence"].as_bool().unwrap() {
            let other = hochster_betti(&k, field).unwrap();
            assert!(table.diff(&other).is_empty(), "{spec}: oracle diff");
        }
        if expect["diagonal_circle_free"].as_bool().unwrap() {
            let s = SubgroupMatrix::diagonal_circle(k.m());
            assert!(freeness_check(&k, &s).unwrap().pass, "{spec}: freeness");
        }
        assert!(expect["all_pass"].as_bool().unwrap(), "{spec}: all_pass recorded false");
    }
}
