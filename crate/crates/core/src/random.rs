//! Erdős–Rényi experiments at `p = n^{-β}`.
//!
//! Sampling uses ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`). The
//! pairs `{u, v}`, `u < v`, are visited in lexicographic order and each is
//! kept when the next `f64` drawn from the stream (uniform on `[0, 1)`) is
//! below `p`. Trial `i` at size `n` is seeded with a splitmix64 hash of
//! `(base_seed, n, i)`, so records never depend on the thread schedule.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use crate::cycles::count_cycles_by_length_capped;
use crate::error::{Error, Result};
use crate::gamma::{gamma1, gamma2, gamma_truncated_ordered, polytope_dim};
use crate::graph::Graph;
use crate::numeric::{binomial, pow2};
use crate::triangulation::{bad_pair_count, enumerate_faces_with, Caps, EdgeOrder, Mode};

pub fn sample_er(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("pairs are distinct and in range")
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub fn trial_seed(base_seed: u64, n: usize, trial: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(base_seed) ^ n as u64) ^ trial as u64)
}

/// `C(n, 2) p`.
pub fn expected_edges(n: usize, p: &BigRational) -> BigRational {
    BigRational::from_integer(binomial(n, 2).into()) * p
}

/// `C(n, ℓ) (ℓ-1)! / 2`, the number of ℓ-cycles of `K_n`.
pub fn cycle_coefficient(n: usize, l: usize) -> BigUint {
    let fact: BigUint = (1..l).map(BigUint::from).product();
    binomial(n, l) * fact / 2u32
}

/// `C(n, ℓ) (ℓ-1)!/2 · p^ℓ`.
pub fn expected_cycles(n: usize, p: &BigRational, l: usize) -> Result<BigRational> {
    if l < 3 {
        return Err(Error::Precondition("cycles have length at least 3".into()));
    }
    let mut pl = BigRational::one();
    for _ in 0..l {
        pl *= p;
    }
    Ok(BigRational::from_integer(cycle_coefficient(n, l).into()) * pl)
}

/// [`expected_cycles`] for an irrational `p` such as `n^{-β}`: the exact
/// coefficient times `p^ℓ` in floating point.
pub fn expected_cycles_f64(n: usize, p: f64, l: usize) -> f64 {
    big_to_f64(&cycle_coefficient(n, l).into()) * p.powi(l as i32)
}

pub fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Parses `1.5`, `3/2` or `2`.
pub fn parse_rational(s: &str) -> Result<Ratio<i64>> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(a, b));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let den = 10i64.pow(frac.len() as u32);
    let negative = int.starts_with('-');
    let int: i64 = if int.is_empty() || int == "-" {
        0
    } else {
        int.parse().map_err(|_| bad())?
    };
    let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let num = int.abs() * den + frac;
    Ok(Ratio::new(if negative { -num } else { num }, den))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub beta: Ratio<i64>,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub k: usize,
    pub base_seed: u64,
    pub caps: Caps,
    /// Writes wall-clock milliseconds into the CSV. Off by default so that
    /// equal configurations give byte-identical output.
    pub record_timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            beta: Ratio::new(1, 2),
            n_values: vec![16],
            trials: 10,
            k: 2,
            base_seed: 0,
            caps: Caps::default(),
            record_timing: false,
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in list")))
        })
        .collect()
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad value {v:?} for {key}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(Error::Parse(format!("bad value {v:?} for {key}"))),
    }
}

impl ExperimentConfig {
    pub fn p(&self, n: usize) -> f64 {
        let beta = *self.beta.numer() as f64 / *self.beta.denom() as f64;
        (n as f64).powf(-beta)
    }

    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim() {
            "beta" => self.beta = parse_rational(value)?,
            "n" | "n_values" => self.n_values = parse_list(value)?,
            "trials" => self.trials = parse_num(key, value)?,
            "k" => self.k = parse_num(key, value)?,
            "seed" | "base_seed" => self.base_seed = parse_num(key, value)?,
            "cap_cycles" | "cap-cycles" => self.caps.cycles = parse_num(key, value)?,
            "cap_faces" | "cap-faces" | "cap_work" => self.caps.work = parse_num(key, value)?,
            "timing" | "record_timing" => self.record_timing = parse_bool(key, value)?,
            other => return Err(Error::Parse(format!("unknown experiment key {other:?}"))),
        }
        Ok(())
    }

    /// Whitespace- or newline-separated `key=value` tokens; `#` starts a
    /// comment.
    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for token in line.split_whitespace() {
                let (k, v) = token
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected key=value, got {token:?}")))?;
                cfg.set(k, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("experiment config must be a JSON object".into()))?;
        let mut cfg = ExperimentConfig::default();
        let scalar = |key: &str, x: &Value| -> Result<String> {
            match x {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                Value::Bool(b) => Ok(b.to_string()),
                Value::Array(items) => items
                    .iter()
                    .map(|i| match i {
                        Value::Number(n) => Ok(n.to_string()),
                        _ => Err(Error::Parse(format!("{key} must hold integers"))),
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(|v| v.join(",")),
                _ => Err(Error::Parse(format!("unsupported value for {key}"))),
            }
        };
        for (key, x) in obj {
            if key == "caps" {
                let caps = x
                    .as_object()
                    .ok_or_else(|| Error::Parse("caps must be an object".into()))?;
                for (ck, cv) in caps {
                    let name = match ck.as_str() {
                        "cycles" => "cap_cycles",
                        "work" | "faces" => "cap_work",
                        other => return Err(Error::Parse(format!("unknown cap {other:?}"))),
                    };
                    cfg.set(name, &scalar(ck, cv)?)?;
                }
            } else {
                cfg.set(key, &scalar(key, x)?)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// JSON when the text starts with `{`, key=value otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_key_values(text)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "beta": self.beta.to_string(),
            "n_values": self.n_values,
            "trials": self.trials,
            "k": self.k,
            "base_seed": self.base_seed,
            "caps": { "cycles": self.caps.cycles, "work": self.caps.work },
            "record_timing": self.record_timing,
        })
        .to_string()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(m.into()));
        if *self.beta.numer() <= 0 {
            return bad("beta must be positive");
        }
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.k == 0 {
            return bad("k must be at least 1");
        }
        if self.n_values.is_empty() {
            return bad("no n values");
        }
        if self.n_values.iter().any(|&n| n < 3) {
            return bad("every n must be at least 3");
        }
        Ok(())
    }

    /// Rough upper bound on the face-counter work for `n`: the number of
    /// antipodal-free sets of size at most `k` over the expected edge count.
    pub fn estimated_work(&self, n: usize) -> f64 {
        let m = ((n * (n - 1) / 2) as f64 * self.p(n)).ceil();
        let mut total = 0.0;
        let mut choose = 1.0;
        for j in 1..=self.k {
            choose *= (m - (j - 1) as f64).max(0.0) / j as f64;
            total += 2f64.powi(j as i32) * choose;
        }
        total
    }

    /// Refuses sizes that need face enumeration (`k ≥ 3`) beyond the cap.
    pub fn check_feasible(&self) -> Result<()> {
        if self.k < 3 {
            return Ok(());
        }
        for &n in &self.n_values {
            let estimate = self.estimated_work(n);
            if estimate > self.caps.work as f64 {
                return Err(Error::CapRefused {
                    n,
                    l: self.k,
                    estimate: estimate.min(u64::MAX as f64) as u64,
                    limit: self.caps.work,
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleRecord {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub edges: usize,
    pub connected: bool,
    /// `X_3..X_{2k}`.
    pub cycles: Vec<u64>,
    /// `n_0..n_{k-1}`.
    pub nonfaces: Vec<BigUint>,
    /// `f_0..f_{k-1}`.
    pub faces: Vec<BigUint>,
    /// `γ_0..γ_k`; entries past `⌊dim/2⌋` are zero.
    pub gamma: Vec<BigInt>,
    pub millis: u64,
}

impl SampleRecord {
    pub fn is_acyclic(&self) -> bool {
        self.gamma.get(1).is_none_or(|g| g.is_zero())
    }

    pub fn cycles_of_length(&self, l: usize) -> u64 {
        l.checked_sub(3).and_then(|i| self.cycles.get(i)).copied().unwrap_or(0)
    }
}

/// One sample's invariants. γ₁ and γ₂ come from the cycle formulas; higher
/// entries from the truncated recursion over the components.
pub fn analyze(g: &Graph, k: usize, caps: Caps) -> Result<(Vec<u64>, Vec<BigUint>, Vec<BigUint>, Vec<BigInt>)> {
    let order = EdgeOrder::identity(g.m());
    let cycles = if 2 * k >= 3 && g.n() >= 3 {
        let counts = count_cycles_by_length_capped(g, 2 * k, caps.cycles)?;
        (3..=2 * k).map(|l| counts.get(&l).copied().unwrap_or(0)).collect()
    } else {
        Vec::new()
    };
    let m = g.m();
    let all_sets = |l: usize| pow2(l) * binomial(m, l);
    let (faces, nonfaces): (Vec<BigUint>, Vec<BigUint>) = if k <= 2 {
        let mut f = vec![BigUint::from(2 * m)];
        let mut nf = vec![BigUint::zero()];
        if k == 2 {
            let n1 = bad_pair_count(g, &order)?;
            f.push(all_sets(2) - &n1);
            nf.push(n1);
        }
        (f, nf)
    } else {
        let rep = enumerate_faces_with(g, &order, Mode::UpTo(k), caps)?;
        (1..=k)
            .map(|l| {
                (
                    rep.f.get(l).cloned().unwrap_or_default(),
                    rep.nonfaces.get(l).cloned().unwrap_or_default(),
                )
            })
            .unzip()
    };
    let half = polytope_dim(g) / 2;
    let mut gamma = vec![BigInt::one()];
    if k >= 3 && half >= 3 {
        gamma = gamma_truncated_ordered(g, k.min(half), &order, caps)?.gamma;
    } else {
        if half >= 1 {
            gamma.push(gamma1(g));
        }
        if half >= 2 && k >= 2 {
            gamma.push(gamma2(g, &order)?);
        }
    }
    gamma.resize(k + 1, BigInt::zero());
    Ok((cycles, nonfaces, faces, gamma))
}

/// All trials of all sizes, in `(n, trial)` order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<SampleRecord>> {
    cfg.validate()?;
    cfg.check_feasible()?;
    let jobs: Vec<(usize, usize)> = cfg
        .n_values
        .iter()
        .flat_map(|&n| (0..cfg.trials).map(move |i| (n, i)))
        .collect();
    jobs.into_par_iter()
        .map(|(n, trial)| {
            let start = Instant::now();
            let seed = trial_seed(cfg.base_seed, n, trial);
            let g = sample_er(n, cfg.p(n), seed);
            let (cycles, nonfaces, faces, gamma) = analyze(&g, cfg.k, cfg.caps).map_err(|e| match e {
                Error::CapExceeded { limit, .. } => Error::CapRefused {
                    n,
                    l: cfg.k,
                    estimate: limit.saturating_add(1),
                    limit,
                },
                other => other,
            })?;
            let millis = if cfg.record_timing {
                start.elapsed().as_millis() as u64
            } else {
                0
            };
            Ok(SampleRecord {
                n,
                trial,
                seed,
                edges: g.m(),
                connected: g.is_connected(),
                cycles,
                nonfaces,
                faces,
                gamma,
                millis,
            })
        })
        .collect()
}

pub fn csv_header(k: usize) -> String {
    let mut cols: Vec<String> = ["n", "trial", "seed", "edges", "connected"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    cols.extend((3..=2 * k).map(|l| format!("x{l}")));
    cols.extend((0..k).map(|i| format!("nf{i}")));
    cols.extend((0..k).map(|i| format!("f{i}")));
    cols.extend((0..=k).map(|i| format!("g{i}")));
    cols.push("millis".into());
    cols.join(",")
}

pub fn to_csv(records: &[SampleRecord], k: usize) -> String {
    let mut out = csv_header(k);
    out.push('\n');
    for r in records {
        let _ = write!(out, "{},{},{},{},{}", r.n, r.trial, r.seed, r.edges, u8::from(r.connected));
        for x in &r.cycles {
            let _ = write!(out, ",{x}");
        }
        for x in &r.nonfaces {
            let _ = write!(out, ",{x}");
        }
        for x in &r.faces {
            let _ = write!(out, ",{x}");
        }
        for x in &r.gamma {
            let _ = write!(out, ",{x}");
        }
        let _ = writeln!(out, ",{}", r.millis);
    }
    out
}

/// Per-size aggregates.
#[derive(Clone, Debug, PartialEq)]
pub struct SizeSummary {
    pub n: usize,
    pub trials: usize,
    pub acyclic_fraction: f64,
    pub connected_fraction: f64,
    pub mean_edges: f64,
    /// Mean of `γ_ℓ`, `ℓ = 0..=k`.
    pub mean_gamma: Vec<f64>,
    /// `(mean, standard error)` of `X_ℓ`, `ℓ = 3..=2k`.
    pub cycles: Vec<(f64, f64)>,
}

pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn summarize(records: &[SampleRecord]) -> Vec<SizeSummary> {
    let mut by_n: BTreeMap<usize, Vec<&SampleRecord>> = BTreeMap::new();
    for r in records {
        by_n.entry(r.n).or_default().push(r);
    }
    by_n.into_iter()
        .map(|(n, rs)| {
            let t = rs.len() as f64;
            let frac = |f: &dyn Fn(&SampleRecord) -> bool| rs.iter().filter(|r| f(r)).count() as f64 / t;
            let glen = rs.iter().map(|r| r.gamma.len()).max().unwrap_or(0);
            let clen = rs.iter().map(|r| r.cycles.len()).max().unwrap_or(0);
            SizeSummary {
                n,
                trials: rs.len(),
                acyclic_fraction: frac(&|r| r.is_acyclic()),
                connected_fraction: frac(&|r| r.connected),
                mean_edges: rs.iter().map(|r| r.edges as f64).sum::<f64>() / t,
                mean_gamma: (0..glen)
                    .map(|i| {
                        rs.iter()
                            .map(|r| r.gamma.get(i).map(big_to_f64).unwrap_or(0.0))
                            .sum::<f64>()
                            / t
                    })
                    .collect(),
                cycles: (0..clen)
                    .map(|i| {
                        let xs: Vec<f64> = rs.iter().map(|r| r.cycles[i] as f64).collect();
                        mean_and_stderr(&xs)
                    })
                    .collect(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// `(n, mean γ_ℓ)` per size.
    pub points: Vec<(usize, f64)>,
    /// Residuals of `log mean` against the fitted line.
    pub residuals: Vec<f64>,
}

/// Least-squares slope of `log(mean γ_ℓ)` against `log n`.
pub fn estimate_exponent(records: &[SampleRecord], l: usize) -> Result<ExponentFit> {
    let points: Vec<(usize, f64)> = summarize(records)
        .into_iter()
        .map(|s| (s.n, s.mean_gamma.get(l).copied().unwrap_or(0.0)))
        .collect();
    fit_power_law(&points)
}

pub fn fit_power_law(points: &[(usize, f64)]) -> Result<ExponentFit> {
    let usable: Vec<(usize, f64)> = points.iter().copied().filter(|p| p.1 > 0.0).collect();
    if usable.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "need at least 3 sizes with a positive mean, got {}",
            usable.len()
        )));
    }
    let xs: Vec<f64> = usable.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = usable.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData("all sizes are equal".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = xs.iter().zip(&ys).map(|(x, y)| y - (intercept + slope * x)).collect();
    Ok(ExponentFit {
        slope,
        intercept,
        points: usable,
        residuals,
    })
}
