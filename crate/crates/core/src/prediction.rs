//! A.a.s. verdicts from the exponent vector alone.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::complex::{Complex, Vertex};
use crate::density::{normalize_alpha, reduced_density_domain};
use crate::error::{Error, Result};
use crate::measure::ProbVector;
use crate::rational::{binomial, parse_rational_list, to_f64, Rational};

/// `(α_0, ..., α_r)` with `p_i = n^{-α_i}`; all entries are non-negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<Rational>);

impl ExponentVector {
    pub fn new(alpha: Vec<Rational>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::domain("exponent vector needs at least alpha_0"));
        }
        if let Some(a) = alpha.iter().find(|a| a.is_negative()) {
            return Err(Error::domain(format!("exponents must be non-negative, got {a}")));
        }
        Ok(ExponentVector(alpha))
    }

    /// Parses a comma-separated list of integers, fractions or decimals.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_rational_list(text)?)
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn r(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.0[0] >= Rational::one()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    /// `p_i = n^{-α_i}`.
    pub fn probabilities(&self, n: u32) -> Result<ProbVector<f64>> {
        crate::sampler::probs_from_exponents(n, &self.0)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictValue {
    ContainsAas,
    NotContainsAas,
    IndeterminateBoundary,
}

impl VerdictValue {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictValue::ContainsAas => "contains_aas",
            VerdictValue::NotContainsAas => "not_contains_aas",
            VerdictValue::IndeterminateBoundary => "indeterminate_boundary",
        }
    }
}

impl fmt::Display for VerdictValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub value: VerdictValue,
    /// Growth exponent of the expected number of copies, `f_0 − Σ_i α_i f_i`.
    pub exponent: f64,
    pub exponent_exact: Rational,
    /// Vertex set of the induced subcomplex whose constraint is tightest.
    pub binding: Vec<Vertex>,
    /// `α_0 + Σ_i ν_i α_i` for the binding constraint; the verdict compares it with 1.
    pub binding_value: Rational,
}

/// Whether `Y_r(n, n^{-α})` contains a copy of `S` a.a.s.
///
/// For `α_0 < 1` this is membership of the normalized vector in the reduced density domain.
/// Scaling the constraint `Σ ν_i α_i/(1−α_0) < 1` by `1 − α_0` gives `α_0 + Σ ν_i α_i < 1`, which
/// is the form evaluated here; it also covers `α_0 ≥ 1`, where single vertices already fail.
pub fn containment_verdict(s: &Complex, alpha: &ExponentVector, max_vertices: usize) -> Result<Verdict> {
    let r = alpha.r();
    if s.dim() > r as isize {
        return Err(Error::DimensionCap { dim: s.dim(), r });
    }
    let a = alpha.as_slice();
    if s.is_empty() {
        return Ok(Verdict {
            value: VerdictValue::ContainsAas,
            exponent: 0.0,
            exponent_exact: Rational::zero(),
            binding: Vec::new(),
            binding_value: Rational::zero(),
        });
    }
    let domain = reduced_density_domain(s, r, max_vertices)?;

    // A single vertex contributes the constraint α_0 < 1 that pruning removed.
    let mut binding = vec![s.vertices()[0]];
    let mut binding_value = a[0].clone();
    for c in &domain.constraints {
        let v = &a[0] + c.value(&a[1..]);
        if v > binding_value {
            binding_value = v;
            binding = c.label.clone();
        }
    }
    let value = match binding_value.cmp(&Rational::one()) {
        Ordering::Less => VerdictValue::ContainsAas,
        Ordering::Equal => VerdictValue::IndeterminateBoundary,
        Ordering::Greater => VerdictValue::NotContainsAas,
    };

    let f = s.f_vector(r)?;
    let exponent_exact = (0..=r).fold(Rational::from_integer(BigInt::from(f[0])), |acc, i| {
        acc - &a[i] * Rational::from_integer(BigInt::from(f[i]))
    });
    Ok(Verdict { value, exponent: to_f64(&exponent_exact), exponent_exact, binding, binding_value })
}

/// Same verdict after normalizing `α` (only defined for `α_0 < 1`).
pub fn normalized_containment_verdict(s: &Complex, alpha: &ExponentVector, max_vertices: usize) -> Result<Verdict> {
    containment_verdict(s, &normalize_alpha(alpha)?, max_vertices)
}

/// `D_s(α) = Σ_{i=0}^{s} C(s+1, i+1)/(s+1) · α_i`.
pub fn dimension_functional(alpha: &ExponentVector, s: usize) -> Result<Rational> {
    if s > alpha.r() {
        return Err(Error::domain(format!("D_{s} needs s ≤ r = {}", alpha.r())));
    }
    Ok(dimension_coefficients(s).iter().zip(alpha.as_slice()).map(|(c, a)| c * a).sum())
}

/// `C(s+1, i+1)/(s+1)` for `i = 0..=s`.
pub fn dimension_coefficients(s: usize) -> Vec<Rational> {
    let m = s as u64 + 1;
    (0..m).map(|i| Rational::new(binomial(m, i + 1), BigInt::from(m))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DimensionVerdict {
    /// `D_s < 1`: `dim Y ≥ s` a.a.s.
    AtLeast,
    /// `D_s > 1`: `dim Y < s` a.a.s.
    Below,
    /// `D_s = 1`.
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionPrediction {
    pub r: usize,
    /// `α_0 ≥ 1`: the complex is empty or a single vertex a.a.s.
    pub degenerate: bool,
    /// Largest `s` with `D_s < 1`.
    pub lower: Option<usize>,
    /// `dim Y = lower` a.a.s.; always true when `lower = r`, since `dim Y ≤ r`.
    pub exact: bool,
    pub functionals: Vec<Rational>,
    pub per_s: Vec<DimensionVerdict>,
}

pub fn predict_dimension(alpha: &ExponentVector) -> DimensionPrediction {
    let r = alpha.r();
    let functionals: Vec<Rational> =
        (0..=r).map(|s| dimension_functional(alpha, s).expect("s within range")).collect();
    let one = Rational::one();
    let per_s: Vec<DimensionVerdict> = functionals
        .iter()
        .map(|d| match d.cmp(&one) {
            Ordering::Less => DimensionVerdict::AtLeast,
            Ordering::Equal => DimensionVerdict::Indeterminate,
            Ordering::Greater => DimensionVerdict::Below,
        })
        .collect();
    let degenerate = alpha.is_degenerate();
    let lower = if degenerate { None } else { per_s.iter().rposition(|v| *v == DimensionVerdict::AtLeast) };
    let exact = match lower {
        Some(s) if s == r => true,
        Some(s) => per_s[s + 1] == DimensionVerdict::Below,
        None => false,
    };
    DimensionPrediction { r, degenerate, lower, exact, functionals, per_s }
}

impl fmt::Display for DimensionPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lower {
            None => f.write_str("degenerate: Y is empty or a single vertex a.a.s."),
            Some(s) if self.exact => write!(f, "dim = {s} a.a.s."),
            Some(s) => write!(f, "dim ≥ {s} a.a.s. (D_{} = 1 is a boundary case)", s + 1),
        }
    }
}

/// Axis-aligned clipping box `[0, max_a1] × [0, max_a2]` for unbounded regions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundingBox {
    pub max_a1: Rational,
    pub max_a2: Rational,
}

impl Default for BoundingBox {
    fn default() -> Self {
        BoundingBox { max_a1: Rational::from_integer(3.into()), max_a2: Rational::from_integer(4.into()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionRegion {
    pub s: usize,
    /// Counterclockwise corners of `{D_s ≤ 1 ≤ D_{s+1}}` in the `(α_1, α_2)` slice, clipped.
    pub vertices: Vec<[Rational; 2]>,
    pub label: String,
}

/// Regions of the `(α_1, α_2)` plane (all other exponents zero) where `dim Y = s`, `s = 0..=r`.
/// Empty regions are omitted.
pub fn dimension_regions_2d(r: usize, bbox: &BoundingBox) -> Vec<DimensionRegion> {
    let zero = Rational::zero();
    let rect = vec![
        [zero.clone(), zero.clone()],
        [bbox.max_a1.clone(), zero.clone()],
        [bbox.max_a1.clone(), bbox.max_a2.clone()],
        [zero.clone(), bbox.max_a2.clone()],
    ];
    let slice = |s: usize| -> (Rational, Rational) {
        let c = dimension_coefficients(s);
        (c.get(1).cloned().unwrap_or_else(Rational::zero), c.get(2).cloned().unwrap_or_else(Rational::zero))
    };
    let mut regions = Vec::new();
    for s in 0..=r {
        let mut poly = rect.clone();
        if s >= 1 {
            let (a, b) = slice(s);
            poly = clip(&poly, &a, &b, true);
        }
        if s < r {
            let (a, b) = slice(s + 1);
            poly = clip(&poly, &a, &b, false);
        }
        if poly.len() >= 3 {
            regions.push(DimensionRegion { s, vertices: poly, label: format!("dim = {s}") });
        }
    }
    regions
}

/// Keeps the part of a convex polygon with `a·x + b·y ≤ 1` (`below`) or `≥ 1`.
fn clip(poly: &[[Rational; 2]], a: &Rational, b: &Rational, below: bool) -> Vec<[Rational; 2]> {
    let side = |p: &[Rational; 2]| {
        let v = a * &p[0] + b * &p[1] - Rational::one();
        if below { -v } else { v }
    };
    let mut out: Vec<[Rational; 2]> = Vec::new();
    let push = |p: [Rational; 2], out: &mut Vec<[Rational; 2]>| {
        if out.last() != Some(&p) && out.first() != Some(&p) {
            out.push(p);
        }
    };
    for i in 0..poly.len() {
        let (p, q) = (&poly[i], &poly[(i + 1) % poly.len()]);
        let (sp, sq) = (side(p), side(q));
        if !sp.is_negative() {
            push(p.clone(), &mut out);
        }
        if (sp.is_negative() && sq.is_positive()) || (sp.is_positive() && sq.is_negative()) {
            let t = &sp / (&sp - &sq);
            push([&p[0] + &t * (&q[0] - &p[0]), &p[1] + &t * (&q[1] - &p[1])], &mut out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::density::DEFAULT_VERTEX_CAP;
    use crate::rational::{int, ratio};
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn alpha(values: &[(i64, i64)]) -> ExponentVector {
        ExponentVector::new(values.iter().map(|&(a, b)| ratio(a, b)).collect()).unwrap()
    }

    fn verdict(s: &Complex, a: &ExponentVector) -> VerdictValue {
        containment_verdict(s, a, DEFAULT_VERTEX_CAP).unwrap().value
    }

    #[test]
    fn triangle_verdicts() {
        let tri = catalog::full_simplex(2);
        assert_eq!(verdict(&tri, &alpha(&[(0, 1), (1, 2), (3, 5)])), VerdictValue::ContainsAas);
        assert_eq!(verdict(&tri, &alpha(&[(0, 1), (9, 10), (3, 2)])), VerdictValue::NotContainsAas);
        assert_eq!(verdict(&tri, &alpha(&[(0, 1), (1, 2), (3, 2)])), VerdictValue::IndeterminateBoundary);
        let v = containment_verdict(&tri, &alpha(&[(0, 1), (1, 2), (3, 5)]), DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(v.exponent_exact, ratio(9, 10));
        assert_eq!(v.binding, vec![1, 2, 3]);
    }

    #[test]
    fn zero_alpha_contains_everything() {
        let zero = alpha(&[(0, 1), (0, 1), (0, 1)]);
        for s in [catalog::torus_seven(), catalog::s_t(4), catalog::unbalanced_disc(), Complex::empty()] {
            assert_eq!(verdict(&s, &zero), VerdictValue::ContainsAas);
        }
    }

    #[test]
    fn dimension_cap_and_degenerate_regime() {
        let tet = catalog::full_simplex(3);
        assert!(matches!(
            containment_verdict(&tet, &alpha(&[(0, 1), (0, 1)]), DEFAULT_VERTEX_CAP),
            Err(Error::DimensionCap { .. })
        ));
        let point = catalog::full_simplex(0);
        assert_eq!(verdict(&point, &alpha(&[(2, 1), (0, 1)])), VerdictValue::NotContainsAas);
        assert_eq!(verdict(&point, &alpha(&[(1, 1), (0, 1)])), VerdictValue::IndeterminateBoundary);
    }

    #[test]
    fn functional_values() {
        let a = alpha(&[(0, 1), (1, 2), (3, 5), (0, 1)]);
        assert_eq!(dimension_functional(&a, 2).unwrap(), ratio(7, 10));
        assert_eq!(dimension_functional(&a, 3).unwrap(), ratio(27, 20));
        assert!(dimension_functional(&a, 4).is_err());
        assert_eq!(dimension_coefficients(1), vec![int(1), ratio(1, 2)]);
        assert_eq!(dimension_coefficients(3), vec![int(1), ratio(3, 2), int(1), ratio(1, 4)]);
        assert_eq!(dimension_coefficients(5)[1..3], [ratio(5, 2), ratio(10, 3)]);
    }

    #[test]
    fn dimension_predictions() {
        let p = predict_dimension(&alpha(&[(0, 1), (1, 2), (3, 5), (0, 1)]));
        assert_eq!((p.lower, p.exact), (Some(2), true));
        assert_eq!(p.to_string(), "dim = 2 a.a.s.");
        let p = predict_dimension(&alpha(&[(2, 1), (0, 1)]));
        assert!(p.degenerate);
        assert_eq!(p.lower, None);
        let p = predict_dimension(&alpha(&[(0, 1); 4]));
        assert_eq!((p.lower, p.exact), (Some(3), true));
        let p = predict_dimension(&alpha(&[(0, 1), (2, 1), (0, 1)]));
        assert_eq!((p.lower, p.exact), (Some(0), false));
        assert_eq!(p.to_string(), "dim ≥ 0 a.a.s. (D_1 = 1 is a boundary case)");
    }

    #[test]
    fn regions_follow_functional_lines() {
        let regions = dimension_regions_2d(4, &BoundingBox::default());
        assert_eq!(regions.iter().map(|r| r.s).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        let dim2 = &regions[2].vertices;
        // (1, 0) and (0, 3) on D_2 = 1; (2/3, 0) and (0, 1) on D_3 = 1.
        for corner in [[int(1), int(0)], [int(0), int(3)], [ratio(2, 3), int(0)], [int(0), int(1)]] {
            assert!(dim2.contains(&corner), "{corner:?} missing from {dim2:?}");
        }
        let dim4 = &regions[4].vertices;
        assert!(dim4.contains(&[ratio(1, 2), int(0)]));
        assert!(dim4.contains(&[int(0), ratio(1, 2)]));
        let dim0 = &regions[0].vertices;
        assert!(dim0.contains(&[int(2), int(0)]) && dim0.contains(&[int(3), int(4)]));
    }

    #[test]
    fn clipped_polygon_is_counterclockwise() {
        for region in dimension_regions_2d(5, &BoundingBox::default()) {
            let v = &region.vertices;
            let twice_area: Rational = (0..v.len())
                .map(|i| {
                    let (p, q) = (&v[i], &v[(i + 1) % v.len()]);
                    &p[0] * &q[1] - &q[0] * &p[1]
                })
                .sum();
            assert!(twice_area.is_positive(), "region {} is not counterclockwise", region.s);
        }
    }

    fn arb_alpha(len: usize) -> impl Strategy<Value = ExponentVector> {
        prop::collection::vec((0i64..40, 1i64..20), len)
            .prop_map(|v| ExponentVector::new(v.into_iter().map(|(a, b)| ratio(a, b)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn functional_is_monotone(a in arb_alpha(5)) {
            for s in 0..4 {
                prop_assert!(dimension_functional(&a, s).unwrap() <= dimension_functional(&a, s + 1).unwrap());
            }
        }

        #[test]
        fn normalization_preserves_verdicts(a in arb_alpha(3)) {
            prop_assume!(!a.is_degenerate());
            let b = normalize_alpha(&a).unwrap();
            for s in [catalog::full_simplex(2), catalog::s_t(3), catalog::torus_seven()] {
                prop_assert_eq!(verdict(&s, &a), verdict(&s, &b));
            }
        }

        #[test]
        fn dimension_matches_simplex_containment(a in arb_alpha(4)) {
            prop_assume!(!a.is_degenerate());
            let p = predict_dimension(&a);
            for s in 0..=3usize {
                let v = verdict(&catalog::full_simplex(s), &a);
                let expected = match p.per_s[s] {
                    DimensionVerdict::AtLeast => VerdictValue::ContainsAas,
                    DimensionVerdict::Below => VerdictValue::NotContainsAas,
                    DimensionVerdict::Indeterminate => VerdictValue::IndeterminateBoundary,
                };
                prop_assert_eq!(v, expected);
            }
        }

        #[test]
        fn verdict_switches_once_along_rays(a in arb_alpha(3)) {
            prop_assume!(a.as_slice().iter().any(|x| x.is_positive()));
            let s = catalog::s_t(4);
            let mut seen_outside = false;
            for k in 0..60i64 {
                let t = ratio(k, 10);
                let scaled = ExponentVector::new(a.as_slice().iter().map(|x| x * &t).collect()).unwrap();
                match verdict(&s, &scaled) {
                    VerdictValue::ContainsAas => prop_assert!(!seen_outside),
                    _ => seen_outside = true,
                }
            }
        }
    }
}
