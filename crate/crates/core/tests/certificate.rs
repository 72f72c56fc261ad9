mod common;

use pathcert::certificate::{verify, Certificate, Verdict};
use pathcert::dichotomy::{spider_dichotomy, Outcome};
use pathcert::families::clique_number_exact;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn certificates_round_trip_and_detect_tampering(g in common::graph(12), pick in any::<prop::sample::Index>()) {
        let t = clique_number_exact(&g).unwrap() + 1;
        let r = spider_dichotomy(&g, 2, 2, t).unwrap();
        let cert = Certificate::from_dichotomy(&r);
        let text = cert.to_json();
        let back = Certificate::from_json(&text).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(verify(&g, &back), Verdict::Valid);

        match (cert, &r.outcome) {
            (Certificate::Coloring(mut c), Outcome::Coloring { .. }) => {
                let edges: Vec<_> = g.edges().collect();
                prop_assume!(!edges.is_empty());
                let (u, v) = edges[pick.index(edges.len())];
                let cv = c.assignment[&v];
                c.assignment.insert(u, cv);
                prop_assert!(!verify(&g, &Certificate::Coloring(c)).is_valid());
            }
            (Certificate::Embedding(mut e), Outcome::Embedding(_)) => {
                let leaf = *e.map.keys().last().unwrap();
                let root = e.map[&0];
                e.map.insert(leaf, root);
                prop_assert!(!verify(&g, &Certificate::Embedding(e)).is_valid());
            }
            _ => prop_assert!(false, "certificate kind differs from outcome"),
        }
    }
}

#[test]
fn malformed_json_is_an_error() {
    for bad in ["", "{}", r#"{"kind":"poem"}"#, r#"{"kind":"coloring","palette":"x"}"#, "[1,2]"] {
        assert!(Certificate::from_json(bad).is_err(), "{bad}");
    }
}
