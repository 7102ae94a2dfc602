//! Bundled certificate drawings.

use crate::drawing::{validate_drawing, Drawing};
use crate::graph::Graph;

const RAW: &[(&str, &str)] = &[
    (
        "k6_three_crossings",
        include_str!("../fixtures/k6_three_crossings.json"),
    ),
    (
        "c3_join_c5_six_crossings",
        include_str!("../fixtures/c3_join_c5_six_crossings.json"),
    ),
];

fn load(name: &str) -> Drawing {
    let (_, raw) = RAW.iter().find(|(n, _)| *n == name).expect("fixture exists");
    Drawing::from_json(raw).expect("bundled fixture parses")
}

/// A drawing of K6 (vertices and edges as built by `construct_named("K6")`)
/// with three crossings.
pub fn k6_three_crossings() -> Drawing {
    load("k6_three_crossings")
}

/// A drawing of `join(C3,C5)` with six crossings, found by the solver.
pub fn c3_join_c5_six_crossings() -> Drawing {
    load("c3_join_c5_six_crossings")
}

pub fn all() -> Vec<(&'static str, Drawing)> {
    RAW.iter().map(|(name, _)| (*name, load(name))).collect()
}

/// A valid bundled drawing of exactly `g`, if there is one.
pub fn known_drawing(g: &Graph) -> Option<Drawing> {
    all()
        .into_iter()
        .map(|(_, d)| d)
        .find(|d| d.base() == g && validate_drawing(d).is_valid())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::construct_named;

    #[test]
    fn fixtures_are_valid() {
        for (name, raw) in RAW {
            let d = load(name);
            assert!(validate_drawing(&d).is_valid(), "{name}");
            assert_eq!(d.to_json() + "\n", *raw, "{name} is stored in normal form");
        }
        assert_eq!(k6_three_crossings(), crate::drawing::tests::k6_three_crossings());
        assert!(known_drawing(&construct_named("K6").unwrap()).is_some());
        assert!(known_drawing(&construct_named("K5").unwrap()).is_none());
        let c = c3_join_c5_six_crossings();
        assert_eq!(c.base(), &construct_named("join(C3,C5)").unwrap());
        assert_eq!(c.crossing_count(), 6);
        assert!(crate::drawing::is_good(&c).unwrap());
    }
}
