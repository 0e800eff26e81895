//! Level-by-level sampling of `Y_r(n, p)`.
//!
//! # Reproducibility
//!
//! Trial `t` of a run with seed `s` draws from ChaCha8 keyed by `ChaCha8Rng::seed_from_u64(s)`
//! on stream `t`. Coins are consumed in a fixed order: vertices `1..=n`, then for each level
//! `i = 1..=r` one coin per candidate `i`-simplex (one whose boundary is already present),
//! candidates taken in lexicographic order. The same `(s, t)` therefore produces the same complex
//! on every platform, whatever the number of worker threads. This scheme is frozen.

use alloc::vec::Vec;

use rand::distr::{Bernoulli, Distribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{for_each_filled_boundary, AmbientContext, Complex, Vertex};
use crate::error::{Error, Result};
use crate::measure::ProbVector;
use crate::rational::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub ctx: AmbientContext,
    pub p: ProbVector<f64>,
    pub seed: u64,
}

impl SamplerConfig {
    pub fn new(ctx: AmbientContext, p: ProbVector<f64>, seed: u64) -> Result<Self> {
        if p.r() != ctx.r {
            return Err(Error::domain(alloc::format!(
                "probability vector has {} entries but r = {}",
                p.as_slice().len(),
                ctx.r
            )));
        }
        Ok(SamplerConfig { ctx, p, seed })
    }
}

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Trial 0 of the configuration.
pub fn sample(cfg: &SamplerConfig) -> Complex {
    sample_trial(cfg, 0)
}

pub fn sample_trial(cfg: &SamplerConfig, trial: u64) -> Complex {
    sample_with_rng(&cfg.ctx, &cfg.p, &mut trial_rng(cfg.seed, trial))
}

/// Trials `0..trials`, each from its own generator.
pub fn sample_batch(cfg: &SamplerConfig, trials: u64) -> impl Iterator<Item = Complex> + '_ {
    (0..trials).map(move |t| sample_trial(cfg, t))
}

/// One draw using the caller's generator.
pub fn sample_with_rng<R: Rng + ?Sized>(ctx: &AmbientContext, p: &ProbVector<f64>, rng: &mut R) -> Complex {
    let coin = |i: usize| Bernoulli::new(*p.p(i)).expect("probability in [0, 1]");

    let vertex_coin = coin(0);
    let labels: Vec<Vertex> = (1..=ctx.n).filter(|_| vertex_coin.sample(rng)).collect();
    let k = labels.len();
    let mut faces: Vec<Vec<Vec<u32>>> = Vec::with_capacity(ctx.r + 1);
    faces.push((0..k as u32).map(|v| alloc::vec![v]).collect());

    let mut adjacency: Vec<Vec<u32>> = Vec::new();
    for i in 1..=ctx.r {
        if faces[i - 1].is_empty() {
            break;
        }
        let c = coin(i);
        let mut level = Vec::new();
        for_each_filled_boundary(&faces[i - 1], k, &adjacency, |candidate| {
            if c.sample(rng) {
                level.push(candidate.to_vec());
            }
        });
        if i == 1 {
            adjacency = alloc::vec![Vec::new(); k];
            for e in &level {
                adjacency[e[0] as usize].push(e[1]);
                adjacency[e[1] as usize].push(e[0]);
            }
            for list in &mut adjacency {
                list.sort_unstable();
            }
        }
        faces.push(level);
    }
    Complex::from_levels(labels, faces)
}

/// `p_i = n^{−α_i}`.
pub fn probs_from_exponents(n: u32, alpha: &[Rational]) -> Result<ProbVector<f64>> {
    let ln_n = libm::log(f64::from(n));
    ProbVector::new(alpha.iter().map(|a| libm::exp(-to_f64(a) * ln_n).clamp(0.0, 1.0)).collect())
}

/// The classical one-parameter models as special cases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    /// `r = 1`, `p = (1, p)`.
    ErdosRenyi,
    /// `r = 2`, `p = (1, 1, p)`.
    LinialMeshulam,
    /// `p = (1, ..., 1, p)`.
    MeshulamWallach,
    /// `p = (1, p, 1, ..., 1)`: clique complexes of random graphs.
    Clique,
}

impl Preset {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "erdos-renyi" => Ok(Preset::ErdosRenyi),
            "linial-meshulam" => Ok(Preset::LinialMeshulam),
            "meshulam-wallach" => Ok(Preset::MeshulamWallach),
            "clique" => Ok(Preset::Clique),
            other => Err(Error::UnknownPreset(other.into())),
        }
    }

    /// The probability vector; `r` is required for the Meshulam–Wallach and clique presets and
    /// must match the fixed dimension of the other two when given.
    pub fn probs(self, p: f64, r: Option<usize>) -> Result<ProbVector<f64>> {
        let fixed = |dim: usize| match r {
            Some(r) if r != dim => Err(Error::domain(alloc::format!("this preset has r = {dim}, got {r}"))),
            _ => Ok(dim),
        };
        let needs_r = || r.ok_or_else(|| Error::domain("this preset needs r"));
        let mut v = match self {
            Preset::ErdosRenyi => alloc::vec![1.0; fixed(1)? + 1],
            Preset::LinialMeshulam => alloc::vec![1.0; fixed(2)? + 1],
            Preset::MeshulamWallach | Preset::Clique => {
                let r = needs_r()?;
                if self == Preset::Clique && r == 0 {
                    return Err(Error::domain("clique preset needs r ≥ 1"));
                }
                alloc::vec![1.0; r + 1]
            }
        };
        let slot = if self == Preset::Clique { 1 } else { v.len() - 1 };
        v[slot] = p;
        ProbVector::new(v)
    }
}

/// Convenience wrapper over [`Preset::from_name`] and [`Preset::probs`].
pub fn preset(name: &str, p: f64, r: Option<usize>) -> Result<ProbVector<f64>> {
    Preset::from_name(name)?.probs(p, r)
}

/// Analytic statistics of the vertex count `f_0(Y) ~ Binomial(n, p_0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexStats {
    pub mean: f64,
    pub variance: f64,
    /// `ω = n p_0`.
    pub omega: f64,
    /// `δ = ω^{−1/2 + ε}`; `f_0 ∈ [(1 − δ)ω, (1 + δ)ω]` a.a.s. when `ω → ∞`.
    pub delta: f64,
}

impl VertexStats {
    pub fn band(&self) -> (f64, f64) {
        ((1.0 - self.delta) * self.omega, (1.0 + self.delta) * self.omega)
    }

    /// `P(Y = ∅) = (1 − p_0)^n`.
    pub fn empty_probability(n: u32, p0: f64) -> f64 {
        libm::pow(1.0 - p0, f64::from(n))
    }
}

/// Requires `0 ≤ p_0 ≤ 1` and `0 < ε < 1/2`.
pub fn vertex_stats(n: u32, p0: f64, epsilon: f64) -> Result<VertexStats> {
    if !(0.0..=1.0).contains(&p0) {
        return Err(Error::domain("p_0 must lie in [0, 1]"));
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::domain("epsilon must lie in (0, 1/2)"));
    }
    let omega = f64::from(n) * p0;
    Ok(VertexStats {
        mean: omega,
        variance: omega * (1.0 - p0),
        omega,
        delta: libm::pow(omega, -0.5 + epsilon),
    })
}
