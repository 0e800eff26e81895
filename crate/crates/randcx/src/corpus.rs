//! Bundled example complexes, addressable from the command line as `corpus:<name>`.

use randcx_core::Complex;

use crate::format::parse_facet_text;

pub const CORPUS: &[(&str, &str)] = &[
    ("boundary_tetrahedron", include_str!("../corpus/boundary_tetrahedron.txt")),
    ("rp2_six", include_str!("../corpus/rp2_six.txt")),
    ("torus_seven", include_str!("../corpus/torus_seven.txt")),
    ("s3", include_str!("../corpus/s3.txt")),
    ("s4", include_str!("../corpus/s4.txt")),
    ("unbalanced_disc", include_str!("../corpus/unbalanced_disc.txt")),
];

pub const PREFIX: &str = "corpus:";

pub fn names() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|(name, _)| *name)
}

pub fn text(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn complex(name: &str) -> Option<Complex> {
    text(name).map(|t| parse_facet_text(t).expect("bundled corpus parses"))
}

pub fn all() -> Vec<(&'static str, Complex)> {
    names().map(|n| (n, complex(n).expect("listed name"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use randcx_core::catalog;

    #[test]
    fn files_match_catalog() {
        assert_eq!(complex("boundary_tetrahedron").unwrap(), catalog::simplex_boundary(3));
        assert_eq!(complex("rp2_six").unwrap(), catalog::rp2_six());
        assert_eq!(complex("torus_seven").unwrap(), catalog::torus_seven());
        assert_eq!(complex("s3").unwrap(), catalog::s_t(3));
        assert_eq!(complex("s4").unwrap(), catalog::s_t(4));
        assert_eq!(complex("unbalanced_disc").unwrap(), catalog::unbalanced_disc());
        assert!(complex("missing").is_none());
    }
}
