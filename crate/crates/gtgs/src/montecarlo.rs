//! Compound-Poisson simulation of GTGS increments and paths with small-jump Gaussian refinement.

use std::sync::OnceLock;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use rayon::prelude::*;
use rayon::ThreadPool;
use serde::{Deserialize, Serialize};

use crate::error::{GtgsError, Result};
use crate::model::{GtgsParams, Side, SideParams};
use crate::oracle::QuadratureConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmallJumpMode {
    DriftOnly,
    GaussianRefinement,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub epsilon: f64,
    pub small_jump_mode: SmallJumpMode,
    pub tabulation_points: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig { epsilon: 0.01, small_jump_mode: SmallJumpMode::GaussianRefinement, tabulation_points: 4096 }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(GtgsError::InvalidParams(format!("epsilon = {} must lie in (0,1)", self.epsilon)));
        }
        if self.tabulation_points < 1024 {
            return Err(GtgsError::InvalidParams(format!(
                "tabulation_points = {} must be at least 1024",
                self.tabulation_points
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub epsilon: f64,
    pub seed: u64,
    pub n_jumps: u64,
}

impl PathSample {
    /// `time,value` rows with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("time,value\n");
        for (t, v) in self.times.iter().zip(&self.values) {
            out.push_str(&format!("{t:.16e},{v:.16e}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("PathSample serializes")
    }
}

/// Worker pool honouring `GTGS_THREADS`.
pub fn thread_pool() -> &'static ThreadPool {
    static POOL: OnceLock<ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var("GTGS_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
            if n > 0 {
                b = b.num_threads(n);
            }
        }
        b.build().expect("thread pool")
    })
}

/// Stream for draw `index` under `seed`; independent of scheduling.
pub fn keyed_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

/// Inverse CDF of m restricted to (ε, ∞) on one side.
#[derive(Debug, Clone)]
struct JumpTable {
    xs: Vec<f64>,
    dens: Vec<f64>,
    cum: Vec<f64>,
    tail_mass: f64,
    tail_index: f64,
}

impl JumpTable {
    fn build(s: &SideParams, eps: f64, points: usize, quad: &QuadratureConfig) -> Result<JumpTable> {
        let x_max = if s.exp_rate() > 0.0 {
            (45.0 / s.exp_rate()).max(10.0 * eps)
        } else {
            (1e3 / s.lambda).powf(1.0 / s.alpha).min(1e30).max(10.0 * eps)
        };
        let n = points;
        let ratio = (x_max / eps).ln();
        let xs: Vec<f64> = (0..=n).map(|k| eps * (ratio * k as f64 / n as f64).exp()).collect();
        let pieces: Vec<f64> = xs
            .par_windows(2)
            .map(|w| s.moment_integral(0.0, w[0], w[1], quad))
            .collect::<Result<_>>()?;
        let mut cum = Vec::with_capacity(n + 1);
        cum.push(0.0);
        let mut acc = 0.0;
        for p in pieces {
            if !(p >= 0.0) || !p.is_finite() {
                return Err(GtgsError::TabulationFailure(format!("non-positive cell mass {p}")));
            }
            acc += p;
            cum.push(acc);
        }
        let dens: Vec<f64> = xs.iter().map(|&x| s.levy(x)).collect();
        if dens.iter().any(|d| !d.is_finite()) {
            return Err(GtgsError::TabulationFailure("non-finite Lévy density on the grid".into()));
        }
        let (tail_mass, tail_index) = if s.exp_rate() > 0.0 {
            (0.0, 0.0)
        } else {
            (s.moment_integral(0.0, x_max, f64::INFINITY, quad)?, s.alpha + s.gamma)
        };
        Ok(JumpTable { xs, dens, cum, tail_mass, tail_index })
    }

    fn mass(&self) -> f64 {
        self.cum.last().unwrap() + self.tail_mass
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> f64 {
        let u = rng.gen::<f64>() * self.mass();
        let top = *self.cum.last().unwrap();
        if u >= top {
            let v: f64 = rng.gen();
            return self.xs.last().unwrap() * (1.0 - v).powf(-1.0 / self.tail_index);
        }
        let k = self.cum.partition_point(|&c| c <= u).saturating_sub(1).min(self.xs.len() - 2);
        let f = ((u - self.cum[k]) / (self.cum[k + 1] - self.cum[k])).clamp(0.0, 1.0);
        let (x0, x1) = (self.xs[k], self.xs[k + 1]);
        let (d0, d1) = (self.dens[k], self.dens[k + 1]);
        // local power law m ∝ x^{−β} inside the cell
        let beta = if d0 > 0.0 && d1 > 0.0 { -(d1 / d0).ln() / (x1 / x0).ln() } else { 1.0 };
        let e = 1.0 - beta;
        if e.abs() < 1e-9 {
            return x0 * (x1 / x0).powf(f);
        }
        let (a, b) = (x0.powf(e), x1.powf(e));
        (a + f * (b - a)).powf(1.0 / e)
    }
}

/// Precomputed jump tables and small-jump moments for one parameter record.
#[derive(Debug, Clone)]
pub struct Simulator {
    params: GtgsParams,
    config: SimConfig,
    tables: Vec<(Side, JumpTable)>,
    drift: f64,
    small_var: f64,
}

impl Simulator {
    pub fn new(params: &GtgsParams, config: SimConfig) -> Result<Simulator> {
        let params = params.validate()?;
        config.validate()?;
        let quad = QuadratureConfig::default();
        let eps = config.epsilon;
        let mut tables = Vec::new();
        let mut drift = params.mu;
        let mut small_var = 0.0;
        for side in params.active_sides() {
            let s = params.side(side);
            tables.push((side, JumpTable::build(&s, eps, config.tabulation_points, &quad)?));
            // b_ε = μ − ∫_{ε<|x|<1} x m(x) dx
            drift -= side.sign() * s.moment_integral(1.0, eps, 1.0, &quad)?;
            small_var += s.moment_integral(2.0, 0.0, eps, &quad)?;
        }
        Ok(Simulator { params, config, tables, drift, small_var })
    }

    pub fn params(&self) -> &GtgsParams {
        &self.params
    }

    /// Intensity of jumps larger than ε in absolute value.
    pub fn jump_rate(&self) -> f64 {
        self.tables.iter().map(|(_, t)| t.mass()).sum()
    }

    /// Drift b_ε replacing the compensated small jumps.
    pub fn small_jump_drift(&self) -> f64 {
        self.drift
    }

    /// σ²(ε) = ∫_{|x|<ε} x² m(x) dx.
    pub fn small_jump_variance(&self) -> f64 {
        self.small_var
    }

    /// One draw of X_t and its number of big jumps.
    pub fn draw<R: Rng>(&self, t: f64, rng: &mut R) -> (f64, u64) {
        let mut x = self.drift * t;
        if self.config.small_jump_mode == SmallJumpMode::GaussianRefinement && self.small_var > 0.0 {
            let z: f64 = StandardNormal.sample(rng);
            x += (t * self.small_var).sqrt() * z;
        }
        let mut jumps = 0;
        for (side, table) in &self.tables {
            let rate = t * table.mass();
            if rate <= 0.0 {
                continue;
            }
            let n = Poisson::new(rate).map(|p| p.sample(rng) as u64).unwrap_or(0);
            let mut s = 0.0;
            for _ in 0..n {
                s += table.draw(rng);
            }
            x += side.sign() * s;
            jumps += n;
        }
        (x, jumps)
    }

    /// n i.i.d. draws of X_t; draw j uses stream (seed, j).
    pub fn sample(&self, t: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
        if !(t > 0.0) {
            return Err(GtgsError::Domain("t must be positive".into()));
        }
        Ok(thread_pool().install(|| {
            (0..n)
                .into_par_iter()
                .map(|j| {
                    let mut rng = keyed_rng(seed, j as u64);
                    self.draw(t, &mut rng).0
                })
                .collect()
        }))
    }

    /// Path on increasing times ≥ 0 with X_0 = 0; interval i (ending at times[i]) uses stream (seed, i).
    pub fn path(&self, times: &[f64], seed: u64) -> Result<PathSample> {
        if times.is_empty() {
            return Err(GtgsError::Domain("empty time grid".into()));
        }
        if times[0] < 0.0 || times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(GtgsError::Domain("times must be nonnegative and strictly increasing".into()));
        }
        let incs: Vec<(f64, u64)> = thread_pool().install(|| {
            (0..times.len())
                .into_par_iter()
                .map(|i| {
                    let dt = if i == 0 { times[0] } else { times[i] - times[i - 1] };
                    if dt == 0.0 {
                        return (0.0, 0);
                    }
                    let mut rng = keyed_rng(seed, i as u64);
                    self.draw(dt, &mut rng)
                })
                .collect()
        });
        let mut values = Vec::with_capacity(times.len());
        let mut acc = 0.0;
        let mut n_jumps = 0;
        for (d, j) in incs {
            acc += d;
            n_jumps += j;
            values.push(acc);
        }
        Ok(PathSample { times: times.to_vec(), values, epsilon: self.config.epsilon, seed, n_jumps })
    }
}

pub fn sample_increment(params: &GtgsParams, t: f64, n: usize, config: SimConfig, seed: u64) -> Result<Vec<f64>> {
    Simulator::new(params, config)?.sample(t, n, seed)
}

pub fn sample_path(params: &GtgsParams, times: &[f64], config: SimConfig, seed: u64) -> Result<PathSample> {
    Simulator::new(params, config)?.path(times, seed)
}

/// (1/n) Σ e^{i z x_j} for each z.
pub fn empirical_cf(samples: &[f64], z_grid: &[f64]) -> Vec<Complex64> {
    let n = samples.len() as f64;
    z_grid
        .par_iter()
        .map(|&z| {
            let (mut c, mut s) = (0.0, 0.0);
            for &x in samples {
                let (sn, cs) = (z * x).sin_cos();
                c += cs;
                s += sn;
            }
            Complex64::new(c / n, s / n)
        })
        .collect()
}

/// Two-sample Kolmogorov–Smirnov statistic sup |F_a − F_b|.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}
