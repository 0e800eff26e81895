//! File formats.
//!
//! Complexes are read and written in two forms:
//!
//! * Text: one facet per line as whitespace-separated vertex labels, `#` starts a comment, and the
//!   downward closure is taken on load. A line with a single label is an isolated vertex; a file
//!   with no facet lines is the empty complex.
//! * JSON: `{"n": 7, "r": 2, "seed": 1, "faces_by_dim": [[[1], [2]], [[1, 2]]]}` listing every
//!   face. `n`, `r` and `seed` may be `null`.
//!
//! Rationals appear in JSON as `"num/den"` strings, except inside domain constraints where each
//! coefficient is a `[num, den]` pair.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use randcx_core::density::{DensityDomain, Polygon2d};
use randcx_core::rational::parse_rational;
use randcx_core::{Complex, Rational, Vertex};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A complex together with whatever context its file recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedComplex {
    pub complex: Complex,
    pub n: Option<u32>,
    pub r: Option<usize>,
    pub seed: Option<u64>,
}

pub fn parse_facet_text(text: &str) -> Result<Complex> {
    let mut facets: Vec<Vec<Vertex>> = Vec::new();
    for (number, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let facet = content
            .split_whitespace()
            .map(|token| {
                token
                    .parse::<Vertex>()
                    .map_err(|_| Error::Input(format!("line {}: `{token}` is not a vertex label", number + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        facets.push(facet);
    }
    Ok(Complex::from_facets(facets)?)
}

/// Facets one per line, preceded by an optional comment header.
pub fn write_facet_text(complex: &Complex, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    for facet in complex.facets() {
        let labels: Vec<String> = facet.iter().map(|v| v.to_string()).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: Option<u32>,
    pub r: Option<usize>,
    pub seed: Option<u64>,
    pub faces_by_dim: Vec<Vec<Vec<Vertex>>>,
}

impl ComplexJson {
    pub fn new(complex: &Complex, n: Option<u32>, r: Option<usize>, seed: Option<u64>) -> Self {
        ComplexJson { n, r, seed, faces_by_dim: complex.faces_by_dim() }
    }

    /// Rebuilds the complex and checks that every listed face is really present after closure,
    /// so that a file missing some subface is rejected instead of silently completed.
    pub fn into_loaded(self) -> Result<LoadedComplex> {
        let complex = Complex::from_facets(self.faces_by_dim.iter().flatten().cloned())?;
        let listed: usize = self.faces_by_dim.iter().map(Vec::len).sum();
        if listed != complex.total_faces() {
            return Err(Error::Input(format!(
                "faces_by_dim lists {listed} faces but their closure has {}",
                complex.total_faces()
            )));
        }
        Ok(LoadedComplex { complex, n: self.n, r: self.r, seed: self.seed })
    }
}

pub fn complex_to_json(complex: &Complex, n: Option<u32>, r: Option<usize>, seed: Option<u64>) -> String {
    let mut text = serde_json::to_string(&ComplexJson::new(complex, n, r, seed)).expect("serializable");
    text.push('\n');
    text
}

/// Reads either format; input whose first non-blank character is `{` is taken as JSON.
pub fn read_complex(text: &str) -> Result<LoadedComplex> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str::<ComplexJson>(text)?.into_loaded()
    } else {
        Ok(LoadedComplex { complex: parse_facet_text(text)?, n: None, r: None, seed: None })
    }
}

/// `"num/den"`, with the denominator always written.
pub fn rational_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn parse_rational_string(text: &str) -> Result<Rational> {
    Ok(parse_rational(text)?)
}

fn integer_value(value: &BigInt) -> Value {
    match value.to_i64() {
        Some(v) => json!(v),
        None => json!(value.to_string()),
    }
}

/// `[num, den]`; integers beyond 64 bits fall back to strings.
pub fn rational_pair(value: &Rational) -> Value {
    json!([integer_value(value.numer()), integer_value(value.denom())])
}

fn point_pairs(points: &[[Rational; 2]]) -> Value {
    Value::Array(points.iter().map(|p| json!([rational_pair(&p[0]), rational_pair(&p[1])])).collect())
}

/// `{"r", "reduced", "constraints": [{"W", "nu"}], "polygon_2d", "polygon_rays"}`.
pub fn domain_json(domain: &DensityDomain, polygon: Option<&Polygon2d>) -> Value {
    let constraints: Vec<Value> = domain
        .constraints
        .iter()
        .map(|c| json!({ "W": c.label, "nu": c.nu.iter().map(rational_pair).collect::<Vec<_>>() }))
        .collect();
    let mut out = json!({ "r": domain.r, "reduced": domain.reduced, "constraints": constraints });
    if let Some(poly) = polygon {
        out["polygon_2d"] = point_pairs(&poly.vertices);
        out["polygon_rays"] = point_pairs(&poly.rays);
    }
    out
}

/// Points as `["num/den", "num/den"]` pairs.
pub fn points_json(points: &[[Rational; 2]]) -> Value {
    Value::Array(points.iter().map(|p| json!([rational_string(&p[0]), rational_string(&p[1])])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use randcx_core::catalog;
    use randcx_core::density::{polygon_2d, reduced_density_domain, DEFAULT_VERTEX_CAP};
    use randcx_core::rational::ratio;

    #[test]
    fn text_round_trip() {
        for c in [catalog::torus_seven(), catalog::unbalanced_disc(), Complex::empty(), catalog::full_simplex(0)] {
            let text = write_facet_text(&c, &["header".into()]);
            assert_eq!(parse_facet_text(&text).unwrap(), c);
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let c = parse_facet_text("# a triangle\n\n1 2 3 # trailing\n  4\n").unwrap();
        assert_eq!(c.f_vector(2).unwrap().counts(), &[4, 3, 1]);
    }

    #[test]
    fn bad_text_is_rejected() {
        assert!(parse_facet_text("1 x 3").is_err());
        assert!(parse_facet_text("1 1 3").is_err());
        assert!(parse_facet_text("-1 2").is_err());
    }

    #[test]
    fn json_round_trip_keeps_context() {
        let c = catalog::rp2_six();
        let loaded = read_complex(&complex_to_json(&c, Some(9), Some(2), Some(42))).unwrap();
        assert_eq!(loaded, LoadedComplex { complex: c, n: Some(9), r: Some(2), seed: Some(42) });
    }

    #[test]
    fn json_must_be_closed() {
        let text = r#"{"n": 3, "r": 2, "seed": null, "faces_by_dim": [[[1],[2],[3]], [], [[1,2,3]]]}"#;
        assert!(read_complex(text).is_err());
    }

    #[test]
    fn rationals_and_domains() {
        assert_eq!(rational_string(&ratio(4, 2)), "2/1");
        assert_eq!(parse_rational_string("2/3").unwrap(), ratio(2, 3));
        let d = reduced_density_domain(&catalog::full_simplex(2), 2, DEFAULT_VERTEX_CAP).unwrap();
        let poly = polygon_2d(&d).unwrap();
        let v = domain_json(&d, Some(&poly));
        assert_eq!(v["constraints"][0]["W"], json!([1, 2, 3]));
        assert_eq!(v["constraints"][0]["nu"], json!([[1, 1], [1, 3]]));
        assert_eq!(v["polygon_2d"][2], json!([[0, 1], [3, 1]]));
    }
}
