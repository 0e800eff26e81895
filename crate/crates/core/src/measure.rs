//! The probability function on subcomplexes of `Δ_n^{(r)}`:
//!
//! ```text
//! P_r(Y) = Π_i p_i^{f_i(Y)} · q_i^{e_i(Y)},   q_i = 1 − p_i
//! ```
//!
//! Every function here is generic over the weight type, so the same code evaluates exactly over
//! [`Rational`](crate::Rational) and approximately over `f64`. Powers use `0^0 = 1`, which is
//! what makes `p_i ∈ {0, 1}` work.

use alloc::vec::Vec;
use core::fmt::Debug;

use num_traits::{FromPrimitive, Num};

use crate::complex::{canonical_cmp, AmbientContext, Complex, FaceVector};
use crate::error::{Error, Result};

/// Number types the measure can be evaluated in.
pub trait Weight: Clone + Debug + Num + PartialOrd + FromPrimitive {}

impl<T: Clone + Debug + Num + PartialOrd + FromPrimitive> Weight for T {}

/// `(p_0, ..., p_r)` with every entry in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector<T = f64> {
    p: Vec<T>,
}

impl<T: Weight> ProbVector<T> {
    pub fn new(p: Vec<T>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::domain("probability vector needs at least p_0"));
        }
        if let Some(i) = p.iter().position(|x| !(*x >= T::zero() && *x <= T::one())) {
            return Err(Error::domain(alloc::format!("p_{i} = {:?} is not in [0, 1]", p[i])));
        }
        Ok(ProbVector { p })
    }

    /// The top dimension `r`.
    pub fn r(&self) -> usize {
        self.p.len() - 1
    }

    pub fn p(&self, i: usize) -> &T {
        &self.p[i]
    }

    pub fn q(&self, i: usize) -> T {
        T::one() - self.p[i].clone()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.p
    }

    fn check_context(&self, ctx: &AmbientContext) -> Result<()> {
        if self.r() != ctx.r {
            return Err(Error::domain(alloc::format!(
                "probability vector has {} entries but r = {} needs {}",
                self.p.len(),
                ctx.r,
                ctx.r + 1
            )));
        }
        Ok(())
    }

    fn product(&self, f: &FaceVector, e: &FaceVector) -> T {
        let mut acc = T::one();
        for i in 0..=self.r() {
            acc = acc * pow(self.p[i].clone(), f.get(i)) * pow(self.q(i), e.get(i));
        }
        acc
    }
}

fn pow<T: Weight>(base: T, exp: u64) -> T {
    num_traits::pow(base, exp as usize)
}

/// Limits for the exhaustive enumerations (default `n ≤ 5`, `r ≤ 2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceCap {
    pub max_n: u32,
    pub max_r: usize,
}

impl Default for BruteForceCap {
    fn default() -> Self {
        BruteForceCap { max_n: 5, max_r: 2 }
    }
}

impl BruteForceCap {
    pub fn check(&self, ctx: &AmbientContext) -> Result<()> {
        if ctx.n > self.max_n {
            return Err(Error::ResourceCap { what: "n", limit: self.max_n as usize, actual: ctx.n as usize });
        }
        if ctx.r > self.max_r {
            return Err(Error::ResourceCap { what: "r", limit: self.max_r, actual: ctx.r });
        }
        Ok(())
    }
}

/// `P_r(Y)`.
pub fn probability<T: Weight>(y: &Complex, ctx: &AmbientContext, p: &ProbVector<T>) -> Result<T> {
    p.check_context(ctx)?;
    let f = y.f_vector(ctx.r).map_err(|_| context_dim_error(y, ctx))?;
    let e = y.external_faces(ctx)?;
    Ok(p.product(&f, &e))
}

/// `ln P_r(Y)`, for instances where the product underflows. `−∞` when `P_r(Y) = 0`.
pub fn log_probability(y: &Complex, ctx: &AmbientContext, p: &ProbVector<f64>) -> Result<f64> {
    p.check_context(ctx)?;
    let f = y.f_vector(ctx.r).map_err(|_| context_dim_error(y, ctx))?;
    let e = y.external_faces(ctx)?;
    let term = |count: u64, prob: f64| if count == 0 { 0.0 } else { count as f64 * libm::log(prob) };
    Ok((0..=ctx.r).map(|i| term(f[i], *p.p(i)) + term(e[i], p.q(i))).sum())
}

/// `P_r(A ⊆ Y ⊆ B) = Π p_i^{f_i(A)} · q_i^{e_i(B)}`.
///
/// Only valid when the boundary of every external face of `B` lies in `A`; otherwise returns
/// [`Error::Precondition`] naming one offending external face.
pub fn sandwich_probability<T: Weight>(
    lower: &Complex,
    upper: &Complex,
    ctx: &AmbientContext,
    p: &ProbVector<T>,
) -> Result<T> {
    p.check_context(ctx)?;
    ctx.check(lower)?;
    ctx.check(upper)?;
    if !lower.is_subcomplex_of(upper) {
        return Err(Error::domain("lower complex is not a subcomplex of the upper complex"));
    }
    check_sandwich_condition(lower, upper, ctx)?;
    let f = lower.f_vector(ctx.r)?;
    let e = upper.external_faces(ctx)?;
    Ok(p.product(&f, &e))
}

/// Verifies that every external face of `upper` has its boundary in `lower`.
pub fn check_sandwich_condition(lower: &Complex, upper: &Complex, ctx: &AmbientContext) -> Result<()> {
    for i in 1..=ctx.r {
        for face in upper.external_face_list(ctx, i)? {
            for skip in 0..face.len() {
                let facet: Vec<_> = face.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
                if !lower.contains_face(&facet) {
                    return Err(Error::Precondition { face });
                }
            }
        }
    }
    Ok(())
}

/// Calls `visit` on every complex `Y` with `lower ⊆ Y ⊆ upper`, choosing faces level by level
/// among those whose boundary was already chosen.
pub fn for_each_subcomplex_between(lower: &Complex, upper: &Complex, mut visit: impl FnMut(&Complex)) -> Result<()> {
    if !lower.is_subcomplex_of(upper) {
        return Err(Error::domain("lower complex is not a subcomplex of the upper complex"));
    }
    let forced: Vec<Vec<Vec<u32>>> = (0..upper.levels().len())
        .map(|d| lower.faces(d).map(|face| upper.to_internal(&face).expect("subcomplex")).collect())
        .collect();
    let mut chosen: Vec<Vec<Vec<u32>>> = Vec::new();
    descend(upper, &forced, &mut chosen, &mut visit);
    Ok(())
}

/// All complexes between `lower` and `upper`, ordered by total face count, then lexicographically.
pub fn subcomplexes_between(lower: &Complex, upper: &Complex) -> Result<Vec<Complex>> {
    let mut out = Vec::new();
    for_each_subcomplex_between(lower, upper, |y| out.push(y.clone()))?;
    out.sort_by(canonical_cmp);
    Ok(out)
}

/// Every subcomplex of `Δ_n^{(r)}`, including the empty one.
pub fn all_subcomplexes(ctx: &AmbientContext, cap: &BruteForceCap) -> Result<Vec<Complex>> {
    cap.check(ctx)?;
    subcomplexes_between(&Complex::empty(), &ctx.full_skeleton())
}

fn descend(upper: &Complex, forced: &[Vec<Vec<u32>>], chosen: &mut Vec<Vec<Vec<u32>>>, visit: &mut dyn FnMut(&Complex)) {
    let d = chosen.len();
    if d == upper.levels().len() || chosen.last().is_some_and(|l| l.is_empty()) {
        let labels = chosen.first().map(|l| l.iter().map(|f| upper.label(f[0])).collect()).unwrap_or_default();
        let mut remap = alloc::vec![u32::MAX; upper.num_vertices()];
        if let Some(vertices) = chosen.first() {
            for (new, f) in vertices.iter().enumerate() {
                remap[f[0] as usize] = new as u32;
            }
        }
        let faces = chosen
            .iter()
            .map(|level| level.iter().map(|f| f.iter().map(|&v| remap[v as usize]).collect()).collect())
            .collect();
        visit(&Complex::from_levels(labels, faces));
        return;
    }

    let candidates: Vec<&Vec<u32>> = upper.levels()[d]
        .iter()
        .filter(|face| {
            d == 0
                || (0..face.len()).all(|skip| chosen[d - 1].binary_search(&crate::complex::without(face, skip)).is_ok())
        })
        .collect();
    let is_forced = |face: &Vec<u32>| forced.get(d).is_some_and(|l| l.binary_search(face).is_ok());

    // Include/exclude over the optional candidates, keeping lexicographic order within the level.
    #[allow(clippy::too_many_arguments)]
    fn choose(
        i: usize,
        candidates: &[&Vec<u32>],
        is_forced: &dyn Fn(&Vec<u32>) -> bool,
        level: &mut Vec<Vec<u32>>,
        upper: &Complex,
        forced: &[Vec<Vec<u32>>],
        chosen: &mut Vec<Vec<Vec<u32>>>,
        visit: &mut dyn FnMut(&Complex),
    ) {
        if i == candidates.len() {
            chosen.push(level.clone());
            descend(upper, forced, chosen, visit);
            chosen.pop();
            return;
        }
        level.push(candidates[i].clone());
        choose(i + 1, candidates, is_forced, level, upper, forced, chosen, visit);
        level.pop();
        if !is_forced(candidates[i]) {
            choose(i + 1, candidates, is_forced, level, upper, forced, chosen, visit);
        }
    }
    let mut level = Vec::with_capacity(candidates.len());
    choose(0, &candidates, &is_forced, &mut level, upper, forced, chosen, visit);
}

/// `Σ_Y P_r(Y)` over every subcomplex of `Δ_n^{(r)}` by exhaustive enumeration.
pub fn partition_sum<T: Weight>(ctx: &AmbientContext, p: &ProbVector<T>, cap: &BruteForceCap) -> Result<T> {
    p.check_context(ctx)?;
    cap.check(ctx)?;
    brute_force_sum(&Complex::empty(), &ctx.full_skeleton(), ctx, p)
}

/// `Σ_{A ⊆ Y ⊆ B} P_r(Y)` by exhaustive enumeration; the oracle for [`sandwich_probability`].
pub fn sandwich_brute_force<T: Weight>(
    lower: &Complex,
    upper: &Complex,
    ctx: &AmbientContext,
    p: &ProbVector<T>,
    cap: &BruteForceCap,
) -> Result<T> {
    p.check_context(ctx)?;
    cap.check(ctx)?;
    ctx.check(lower)?;
    ctx.check(upper)?;
    brute_force_sum(lower, upper, ctx, p)
}

fn brute_force_sum<T: Weight>(lower: &Complex, upper: &Complex, ctx: &AmbientContext, p: &ProbVector<T>) -> Result<T> {
    let mut total = T::zero();
    let mut failure = None;
    for_each_subcomplex_between(lower, upper, |y| match probability(y, ctx, p) {
        Ok(v) => total = total.clone() + v,
        Err(e) => failure = Some(e),
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// First moment of the number of copies of `S`: `n (n−1) ⋯ (n − f_0 + 1) · Π p_i^{f_i(S)}`.
pub fn expected_copies<T: Weight>(s: &Complex, ctx: &AmbientContext, p: &ProbVector<T>) -> Result<T> {
    p.check_context(ctx)?;
    let f = s.f_vector(ctx.r)?;
    if f[0] > u64::from(ctx.n) {
        return Ok(T::zero());
    }
    let mut acc = T::one();
    for k in 0..f[0] {
        acc = acc * T::from_u64(u64::from(ctx.n) - k).expect("integer fits");
    }
    for i in 0..=ctx.r {
        acc = acc * pow(p.p(i).clone(), f[i]);
    }
    Ok(acc)
}

fn context_dim_error(y: &Complex, ctx: &AmbientContext) -> Error {
    Error::Context { n: ctx.n, r: ctx.r, reason: alloc::format!("dimension {} exceeds r", y.dim()) }
}

/// Energy parameters `H(Y) = Σ_i β_i f_i(Y) + γ_i e_i(Y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GibbsParams {
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
}

/// Tolerance on `e^{β_i} + e^{γ_i} = 1`.
pub const GIBBS_CONSTRAINT_TOLERANCE: f64 = 1e-12;

impl GibbsParams {
    pub fn new(beta: Vec<f64>, gamma: Vec<f64>) -> Result<Self> {
        if beta.len() != gamma.len() || beta.is_empty() {
            return Err(Error::domain("beta and gamma must have the same nonzero length"));
        }
        Ok(GibbsParams { beta, gamma })
    }

    pub fn r(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn energy(&self, y: &Complex, ctx: &AmbientContext) -> Result<f64> {
        if self.r() != ctx.r {
            return Err(Error::domain("Gibbs parameters do not match r"));
        }
        let f = y.f_vector(ctx.r).map_err(|_| context_dim_error(y, ctx))?;
        let e = y.external_faces(ctx)?;
        Ok((0..=ctx.r).map(|i| self.beta[i] * f[i] as f64 + self.gamma[i] * e[i] as f64).sum())
    }

    pub fn satisfies_constraint(&self) -> bool {
        self.beta
            .iter()
            .zip(&self.gamma)
            .all(|(&b, &g)| libm::fabs(libm::exp(b) + libm::exp(g) - 1.0) <= GIBBS_CONSTRAINT_TOLERANCE)
    }
}

/// `p_i = e^{β_i}`; requires `e^{β_i} + e^{γ_i} = 1`.
pub fn gibbs_to_p(g: &GibbsParams) -> Result<ProbVector<f64>> {
    if !g.satisfies_constraint() {
        return Err(Error::domain("Gibbs parameters violate e^beta + e^gamma = 1"));
    }
    ProbVector::new(g.beta.iter().map(|&b| libm::exp(b)).collect())
}

/// `β_i = ln p_i`, `γ_i = ln(1 − p_i)`; requires `0 < p_i < 1`.
pub fn p_to_gibbs(p: &ProbVector<f64>) -> Result<GibbsParams> {
    if let Some(i) = p.as_slice().iter().position(|&x| x <= 0.0 || x >= 1.0) {
        return Err(Error::domain(alloc::format!("p_{i} must lie strictly between 0 and 1")));
    }
    GibbsParams::new(
        p.as_slice().iter().map(|&x| libm::log(x)).collect(),
        p.as_slice().iter().map(|&x| libm::log1p(-x)).collect(),
    )
}

/// `Z = Σ_Y e^{H(Y)}` by exhaustive enumeration.
pub fn gibbs_partition(ctx: &AmbientContext, g: &GibbsParams, cap: &BruteForceCap) -> Result<f64> {
    cap.check(ctx)?;
    let mut z = 0.0;
    let mut failure = None;
    for_each_subcomplex_between(&Complex::empty(), &ctx.full_skeleton(), |y| match g.energy(y, ctx) {
        Ok(h) => z += libm::exp(h),
        Err(e) => failure = Some(e),
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(z),
    }
}

/// `e^{H(Y)} / Z`.
pub fn gibbs_probability(y: &Complex, ctx: &AmbientContext, g: &GibbsParams, cap: &BruteForceCap) -> Result<f64> {
    let z = gibbs_partition(ctx, g, cap)?;
    Ok(libm::exp(g.energy(y, ctx)?) / z)
}
