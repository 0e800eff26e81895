//! Density invariants and density domains.
//!
//! For a complex `S` the density invariants are `μ_i(S) = f_0(S) / f_i(S)`. They are stored in
//! the inverse form `ν_i = f_i / f_0`, which is always finite: `ν_i = 0` means `μ_i = ∞`.
//!
//! A density domain is a set of exponent vectors `α = (α_1, ..., α_r) ≥ 0` cut out by linear
//! constraints `Σ_i ν_i α_i < 1`. The reduced domain of `S` intersects the domains of all
//! subcomplexes of `S`; it suffices to take the subcomplexes induced on vertex subsets `W`,
//! since any subcomplex `T` on `W` has `ν(T) ≤ ν(S_W)` entrywise.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::complex::{Complex, Vertex};
use crate::error::{Error, Result};
use crate::prediction::ExponentVector;
use crate::rational::Rational;

/// Default limit on `|V(S)|` for the `2^|V|` subset enumerations.
pub const DEFAULT_VERTEX_CAP: usize = 22;

/// Absolute tolerance for deciding `Σ ν_i α_i = 1` with floating point `α`.
pub const FLOAT_BOUNDARY_TOLERANCE: f64 = 1e-9;

/// `ν_i(S) = f_i(S) / f_0(S)` for `i = 1..=r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityProfile {
    nu: Vec<Rational>,
}

impl DensityProfile {
    /// `(ν_1, ..., ν_r)`.
    pub fn nu(&self) -> &[Rational] {
        &self.nu
    }

    pub fn r(&self) -> usize {
        self.nu.len()
    }

    /// `μ_i`, `None` standing for `∞`. `μ_0 = 1`.
    pub fn mu(&self, i: usize) -> Option<Rational> {
        if i == 0 {
            return Some(Rational::one());
        }
        let nu = &self.nu[i - 1];
        (!nu.is_zero()).then(|| nu.recip())
    }

    /// `(μ_0, ..., μ_r)`.
    pub fn mu_vector(&self) -> Vec<Option<Rational>> {
        (0..=self.r()).map(|i| self.mu(i)).collect()
    }
}

pub fn density_profile(s: &Complex, r: usize) -> Result<DensityProfile> {
    if s.is_empty() {
        return Err(Error::domain("density invariants are undefined for the empty complex"));
    }
    let f = s.f_vector(r)?;
    let f0 = BigInt::from(f[0]);
    Ok(DensityProfile { nu: (1..=r).map(|i| Rational::new(BigInt::from(f[i]), f0.clone())).collect() })
}

/// `(μ_1, μ_2)` of a 2-complex through Euler characteristic and `L`:
/// `μ_1 = 1/3 + (χ + L/3)/e`, `μ_2 = 1/2 + (χ + L/2)/f`.
pub fn mu_from_l_formula(s: &Complex) -> Result<(Rational, Rational)> {
    if s.dim() != 2 {
        return Err(Error::domain(format!("the L formula needs a 2-complex, got dimension {}", s.dim())));
    }
    let chi = Rational::from_integer(BigInt::from(s.euler_characteristic()));
    let l = Rational::from_integer(BigInt::from(s.l_value()));
    let e = Rational::from_integer(BigInt::from(s.num_faces(1)));
    let f = Rational::from_integer(BigInt::from(s.num_faces(2)));
    let third = Rational::new(1.into(), 3.into());
    let half = Rational::new(1.into(), 2.into());
    let mu1 = &third + (&chi + &l * &third) / e;
    let mu2 = &half + (&chi + &l * &half) / f;
    Ok((mu1, mu2))
}

/// Average degrees `d̄_i = Σ_{dim σ = i} deg σ / f_i` for `i = 0..=dim S`, from explicit degrees.
pub fn average_degrees(s: &Complex) -> Result<Vec<Rational>> {
    if s.is_empty() {
        return Err(Error::domain("average degree of the empty complex divides by zero"));
    }
    Ok((0..=s.dim() as usize)
        .map(|i| {
            let total: u64 = s.degrees(i).iter().sum();
            Rational::new(BigInt::from(total), BigInt::from(s.num_faces(i)))
        })
        .collect())
}

/// `μ_i = (i+1)! / (d̄_0 ⋯ d̄_{i−1})`, in inverse form.
pub fn mu_from_average_degrees(s: &Complex, r: usize) -> Result<DensityProfile> {
    if s.dim() > r as isize {
        return Err(Error::DimensionCap { dim: s.dim(), r });
    }
    let degrees = average_degrees(s)?;
    let mut product = Rational::one();
    let mut factorial = Rational::one();
    let mut nu = Vec::with_capacity(r);
    for i in 1..=r {
        factorial *= Rational::from_integer(BigInt::from(i + 1));
        // Past the top dimension the product is already zero.
        if !product.is_zero() {
            product *= degrees.get(i - 1).cloned().unwrap_or_else(Rational::zero);
        }
        nu.push(&product / &factorial);
    }
    Ok(DensityProfile { nu })
}

/// `{α ≥ 0 : Σ_i nu_i α_i < 1}`, tagged with the vertex set whose induced subcomplex produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub label: Vec<Vertex>,
    pub nu: Vec<Rational>,
}

impl Constraint {
    pub fn value(&self, alpha: &[Rational]) -> Rational {
        self.nu.iter().zip(alpha).map(|(n, a)| n * a).sum()
    }

    pub fn value_f64(&self, alpha: &[f64]) -> f64 {
        self.nu.iter().zip(alpha).map(|(n, a)| crate::rational::to_f64(n) * a).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.nu.iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    /// Every constraint holds strictly.
    Inside,
    /// All constraints hold weakly and at least one with equality.
    Boundary,
    Outside,
}

/// An intersection of constraint half-spaces in `ℝ^r_{≥0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityDomain {
    pub r: usize,
    pub constraints: Vec<Constraint>,
    /// No constraint is entrywise below another one.
    pub reduced: bool,
}

impl DensityDomain {
    /// The domain `μ(S)` of the complex alone.
    pub fn of_complex(s: &Complex, r: usize) -> Result<Self> {
        let profile = density_profile(s, r)?;
        Ok(DensityDomain {
            r,
            constraints: vec![Constraint { label: s.vertices().to_vec(), nu: profile.nu }],
            reduced: true,
        })
    }

    pub fn membership(&self, alpha: &[Rational]) -> Result<Membership> {
        self.check_alpha(alpha.len(), alpha.iter().any(Signed::is_negative))?;
        let one = Rational::one();
        Ok(classify(self.constraints.iter().map(|c| c.value(alpha).cmp(&one))))
    }

    /// Float version; values within [`FLOAT_BOUNDARY_TOLERANCE`] of 1 count as equal.
    pub fn membership_f64(&self, alpha: &[f64]) -> Result<Membership> {
        self.check_alpha(alpha.len(), alpha.iter().any(|a| a.is_nan() || *a < 0.0))?;
        Ok(classify(self.constraints.iter().map(|c| {
            let v = c.value_f64(alpha);
            if libm::fabs(v - 1.0) <= FLOAT_BOUNDARY_TOLERANCE {
                Ordering::Equal
            } else if v < 1.0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })))
    }

    /// The constraint with the largest value at `alpha` (first in order on ties).
    pub fn binding(&self, alpha: &[Rational]) -> Option<&Constraint> {
        let mut best: Option<(&Constraint, Rational)> = None;
        for c in &self.constraints {
            let v = c.value(alpha);
            if best.as_ref().is_none_or(|(_, b)| v > *b) {
                best = Some((c, v));
            }
        }
        best.map(|(c, _)| c)
    }

    /// Drops trivial (all-zero) constraints and every constraint entrywise below another one;
    /// among equal coefficient vectors the lexicographically smallest label survives.
    pub fn reduce(self) -> Self {
        let mut front: Vec<Constraint> = Vec::new();
        for c in self.constraints.into_iter().filter(|c| !c.is_trivial()) {
            insert_maximal(&mut front, c, |a, b| dominance(&a.nu, &b.nu), |a, b| a.label.cmp(&b.label));
        }
        front.sort_by(|a, b| a.label.cmp(&b.label));
        DensityDomain { r: self.r, constraints: front, reduced: true }
    }

    fn check_alpha(&self, len: usize, negative: bool) -> Result<()> {
        if len != self.r {
            return Err(Error::domain(format!("expected {} exponents, got {len}", self.r)));
        }
        if negative {
            return Err(Error::domain("exponents must be non-negative"));
        }
        Ok(())
    }
}

fn classify(orderings: impl Iterator<Item = Ordering>) -> Membership {
    let mut result = Membership::Inside;
    for ord in orderings {
        match ord {
            Ordering::Greater => return Membership::Outside,
            Ordering::Equal => result = Membership::Boundary,
            Ordering::Less => {}
        }
    }
    result
}

/// How `a` compares with `b` in the entrywise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dominance {
    Equal,
    Above,
    Below,
    Incomparable,
}

fn dominance<T: Ord>(a: &[T], b: &[T]) -> Dominance {
    let (mut above, mut below) = (false, false);
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Greater => above = true,
            Ordering::Less => below = true,
            Ordering::Equal => {}
        }
    }
    match (above, below) {
        (false, false) => Dominance::Equal,
        (true, false) => Dominance::Above,
        (false, true) => Dominance::Below,
        (true, true) => Dominance::Incomparable,
    }
}

/// Maintains the set of entrywise-maximal items.
fn insert_maximal<T>(
    front: &mut Vec<T>,
    item: T,
    compare: impl Fn(&T, &T) -> Dominance,
    tie_break: impl Fn(&T, &T) -> Ordering,
) {
    for existing in front.iter_mut() {
        match compare(&item, existing) {
            Dominance::Below => return,
            Dominance::Equal => {
                if tie_break(&item, existing) == Ordering::Less {
                    *existing = item;
                }
                return;
            }
            Dominance::Above | Dominance::Incomparable => {}
        }
    }
    front.retain(|existing| compare(&item, existing) != Dominance::Above);
    front.push(item);
}

/// Face counts of every induced subcomplex `S_W`, indexed by the vertex mask of `W`.
struct InducedCounts {
    k: usize,
    /// `counts[i][mask] = f_i(S_mask)` for `i = 0..=min(r, dim S)`.
    counts: Vec<Vec<u32>>,
    r: usize,
}

impl InducedCounts {
    fn new(s: &Complex, r: usize, max_vertices: usize) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::domain("density domains are undefined for the empty complex"));
        }
        if s.dim() > r as isize {
            return Err(Error::DimensionCap { dim: s.dim(), r });
        }
        let k = s.num_vertices();
        let limit = max_vertices.min(30);
        if k > limit {
            return Err(Error::ResourceCap { what: "vertex count", limit, actual: k });
        }
        let size = 1usize << k;
        let mut counts = Vec::new();
        for level in s.levels() {
            let mut arr = vec![0u32; size];
            for face in level {
                arr[face.iter().fold(0usize, |m, &v| m | (1 << v))] += 1;
            }
            // Subset-sum transform: arr[W] becomes the number of faces contained in W.
            for bit in 0..k {
                let b = 1usize << bit;
                for mask in 0..size {
                    if mask & b != 0 {
                        arr[mask] += arr[mask ^ b];
                    }
                }
            }
            counts.push(arr);
        }
        Ok(InducedCounts { k, counts, r })
    }

    fn full(&self) -> usize {
        (1usize << self.k) - 1
    }

    fn f(&self, i: usize, mask: usize) -> u64 {
        self.counts.get(i).map_or(0, |arr| u64::from(arr[mask]))
    }

    /// `ν(S_W)` as exact fractions with the common denominator `f_0(S_W)`.
    fn nu(&self, mask: usize) -> SmallNu {
        SmallNu { f0: mask.count_ones() as u64, f: (1..=self.r).map(|i| self.f(i, mask)).collect() }
    }

    fn label(&self, s: &Complex, mask: usize) -> Vec<Vertex> {
        (0..self.k).filter(|&v| mask & (1 << v) != 0).map(|v| s.label(v as u32)).collect()
    }
}

/// `ν_i = f[i] / f0`, compared by cross multiplication.
#[derive(Debug, Clone)]
struct SmallNu {
    f0: u64,
    f: Vec<u64>,
}

impl SmallNu {
    fn cmp_entry(&self, other: &SmallNu, i: usize) -> Ordering {
        (u128::from(self.f[i]) * u128::from(other.f0)).cmp(&(u128::from(other.f[i]) * u128::from(self.f0)))
    }

    fn dominance(&self, other: &SmallNu) -> Dominance {
        let (mut above, mut below) = (false, false);
        for i in 0..self.f.len() {
            match self.cmp_entry(other, i) {
                Ordering::Greater => above = true,
                Ordering::Less => below = true,
                Ordering::Equal => {}
            }
        }
        match (above, below) {
            (false, false) => Dominance::Equal,
            (true, false) => Dominance::Above,
            (false, true) => Dominance::Below,
            (true, true) => Dominance::Incomparable,
        }
    }

    fn is_zero(&self) -> bool {
        self.f.iter().all(|&x| x == 0)
    }

    fn to_rationals(&self) -> Vec<Rational> {
        self.f.iter().map(|&x| Rational::new(BigInt::from(x), BigInt::from(self.f0))).collect()
    }
}

/// Lexicographic order of the sorted vertex lists encoded by two masks.
fn mask_lex_cmp(mut a: usize, mut b: usize) -> Ordering {
    loop {
        if a == b {
            return Ordering::Equal;
        }
        if a == 0 {
            return Ordering::Less;
        }
        if b == 0 {
            return Ordering::Greater;
        }
        let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
        if la != lb {
            return la.cmp(&lb);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// One constraint per nonempty vertex subset `W`, from the induced subcomplex `S_W`, ordered by
/// label. Has `2^|V| − 1` entries.
pub fn induced_density_domain(s: &Complex, r: usize, max_vertices: usize) -> Result<DensityDomain> {
    let counts = InducedCounts::new(s, r, max_vertices)?;
    let mut masks: Vec<usize> = (1..=counts.full()).collect();
    masks.sort_by(|&a, &b| mask_lex_cmp(a, b));
    let constraints = masks
        .into_iter()
        .map(|mask| Constraint { label: counts.label(s, mask), nu: counts.nu(mask).to_rationals() })
        .collect();
    Ok(DensityDomain { r, constraints, reduced: false })
}

/// The reduced density domain `μ̃(S)`: induced constraints with dominated and trivial ones pruned.
pub fn reduced_density_domain(s: &Complex, r: usize, max_vertices: usize) -> Result<DensityDomain> {
    let counts = InducedCounts::new(s, r, max_vertices)?;
    let mut front: Vec<(usize, SmallNu)> = Vec::new();
    for mask in 1..=counts.full() {
        let nu = counts.nu(mask);
        if nu.is_zero() {
            continue;
        }
        insert_maximal(&mut front, (mask, nu), |a, b| a.1.dominance(&b.1), |a, b| mask_lex_cmp(a.0, b.0));
    }
    front.sort_by(|a, b| mask_lex_cmp(a.0, b.0));
    let constraints = front
        .into_iter()
        .map(|(mask, nu)| Constraint { label: counts.label(s, mask), nu: nu.to_rationals() })
        .collect();
    Ok(DensityDomain { r, constraints, reduced: true })
}

/// Balancedness of a complex, with a witness vertex set when a property fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Balance {
    /// Every proper nonempty induced subcomplex is strictly sparser in some dimension.
    StrictlyBalanced,
    /// Balanced; `witness` induces a proper subcomplex with exactly the same densities.
    Balanced { witness: Vec<Vertex> },
    /// `witness` induces a subcomplex denser than `S` in some dimension.
    Unbalanced { witness: Vec<Vertex> },
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        !matches!(self, Balance::Unbalanced { .. })
    }

    pub fn is_strictly_balanced(&self) -> bool {
        matches!(self, Balance::StrictlyBalanced)
    }

    pub fn witness(&self) -> Option<&[Vertex]> {
        match self {
            Balance::StrictlyBalanced => None,
            Balance::Balanced { witness } | Balance::Unbalanced { witness } => Some(witness),
        }
    }
}

/// Classifies `S` by comparing `ν(S_W)` with `ν(S)` over all nonempty vertex subsets `W`.
///
/// Witnesses are chosen as the largest offending `W`, ties broken lexicographically.
pub fn balance(s: &Complex, r: usize, max_vertices: usize) -> Result<Balance> {
    let counts = InducedCounts::new(s, r, max_vertices)?;
    let full = counts.full();
    let whole = counts.nu(full);

    let mut denser: Option<usize> = None;
    let mut equal: Option<usize> = None;
    let better = |candidate: usize, current: Option<usize>| match current {
        None => true,
        Some(c) => match candidate.count_ones().cmp(&c.count_ones()) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => mask_lex_cmp(candidate, c) == Ordering::Less,
        },
    };
    for mask in 1..full {
        let nu = counts.nu(mask);
        let any_above = (0..r).any(|i| nu.cmp_entry(&whole, i) == Ordering::Greater);
        let any_below = (0..r).any(|i| nu.cmp_entry(&whole, i) == Ordering::Less);
        if any_above {
            if better(mask, denser) {
                denser = Some(mask);
            }
        } else if !any_below && better(mask, equal) {
            equal = Some(mask);
        }
    }
    Ok(match (denser, equal) {
        (Some(mask), _) => Balance::Unbalanced { witness: counts.label(s, mask) },
        (None, Some(mask)) => Balance::Balanced { witness: counts.label(s, mask) },
        (None, None) => Balance::StrictlyBalanced,
    })
}

pub fn is_balanced(s: &Complex, r: usize, max_vertices: usize) -> Result<bool> {
    balance(s, r, max_vertices).map(|b| b.is_balanced())
}

pub fn is_strictly_balanced(s: &Complex, r: usize, max_vertices: usize) -> Result<bool> {
    balance(s, r, max_vertices).map(|b| b.is_strictly_balanced())
}

/// `α' = (0, α_1/(1−α_0), ..., α_r/(1−α_0))`: the point on the ray from `(1, 0, ..., 0)` with
/// first coordinate zero.
pub fn normalize_alpha(alpha: &ExponentVector) -> Result<ExponentVector> {
    let a0 = &alpha.as_slice()[0];
    let scale = Rational::one() - a0;
    if !scale.is_positive() {
        return Err(Error::Degenerate(format!(
            "alpha_0 = {a0} ≥ 1: the random complex is empty or a single vertex a.a.s."
        )));
    }
    let mut out = Vec::with_capacity(alpha.as_slice().len());
    out.push(Rational::zero());
    out.extend(alpha.as_slice()[1..].iter().map(|a| a / &scale));
    ExponentVector::new(out)
}

/// A convex polygon in the `(α_1, α_2)` plane, possibly unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon2d {
    /// Corners in counterclockwise order, starting at the origin.
    pub vertices: Vec<[Rational; 2]>,
    /// Recession directions; empty for a bounded polygon.
    pub rays: Vec<[Rational; 2]>,
}

/// Corners of the closure of a two-dimensional density domain.
pub fn polygon_2d(domain: &DensityDomain) -> Result<Polygon2d> {
    if domain.r != 2 {
        return Err(Error::domain(format!("polygons need r = 2, got r = {}", domain.r)));
    }
    let lines: Vec<(&Rational, &Rational)> =
        domain.constraints.iter().filter(|c| !c.is_trivial()).map(|c| (&c.nu[0], &c.nu[1])).collect();
    let zero = Rational::zero();
    let origin = [zero.clone(), zero.clone()];

    let max_a = lines.iter().map(|l| l.0).max().cloned().unwrap_or_else(Rational::zero);
    let max_b = lines.iter().map(|l| l.1).max().cloned().unwrap_or_else(Rational::zero);
    match (max_a.is_zero(), max_b.is_zero()) {
        (true, true) => {
            let one = Rational::one();
            return Ok(Polygon2d {
                vertices: vec![origin],
                rays: vec![[one.clone(), zero.clone()], [zero.clone(), one]],
            });
        }
        (false, true) => {
            return Ok(Polygon2d {
                vertices: vec![origin, [max_a.recip(), zero.clone()]],
                rays: vec![[zero.clone(), Rational::one()]],
            });
        }
        (true, false) => {
            return Ok(Polygon2d {
                vertices: vec![origin, [zero.clone(), max_b.recip()]],
                rays: vec![[Rational::one(), zero.clone()]],
            });
        }
        (false, false) => {}
    }

    let feasible = |x: &Rational, y: &Rational| {
        !x.is_negative() && !y.is_negative() && lines.iter().all(|(a, b)| *a * x + *b * y <= Rational::one())
    };
    let mut chain: Vec<[Rational; 2]> = vec![[max_a.recip(), zero.clone()], [zero.clone(), max_b.recip()]];
    for (i, (a1, b1)) in lines.iter().enumerate() {
        for (a2, b2) in &lines[i + 1..] {
            let det = *a1 * *b2 - *a2 * *b1;
            if det.is_zero() {
                continue;
            }
            let x = (*b2 - *b1) / &det;
            let y = (*a1 - *a2) / &det;
            if feasible(&x, &y) {
                chain.push([x, y]);
            }
        }
    }
    chain.sort_by(|p, q| q[0].cmp(&p[0]).then_with(|| p[1].cmp(&q[1])));
    chain.dedup();

    let mut vertices = vec![origin];
    for point in chain {
        while vertices.len() >= 2 {
            let (a, b) = (&vertices[vertices.len() - 2], &vertices[vertices.len() - 1]);
            let cross = (&b[0] - &a[0]) * (&point[1] - &a[1]) - (&b[1] - &a[1]) * (&point[0] - &a[0]);
            if cross.is_zero() {
                vertices.pop();
            } else {
                break;
            }
        }
        vertices.push(point);
    }
    Ok(Polygon2d { vertices, rays: Vec::new() })
}
