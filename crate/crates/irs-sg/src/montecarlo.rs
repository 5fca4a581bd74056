//! Monte-Carlo oracle: full network snapshots with exact 3-D geometry.
//!
//! A snapshot places the typical user at the origin, M IRSs uniformly on
//! the disk of radius R at height H_R and BSs as a PPP at height H_B on a
//! disk of radius `BS_DISK_FACTOR * R` (the outer ring only matters for the
//! direct BS interference, whose analytic form integrates to infinity).
//! Every reflected path uses the exact BS-IRS distance; none of the
//! analytic-side approximations appear here.
//!
//! In conditional mode the serving IRS sits at r00, the nearest BS at d0
//! with the remaining BSs as a PPP beyond it, and the other M - 1 IRSs are
//! i.i.d. uniform, which is how the analytic model conditions. BS
//! interference then comes from the BSs beyond d0 in both modes. In
//! marginal mode an IRS-assisted user is served by the BS nearest to its
//! IRS and suffers interference from every other BS.
//!
//! Batch files are little-endian: magic `IRSGBAT1`, u32 version, u32
//! column count (6), u64 seed, u64 n_trials, 32-byte scenario hash, then
//! six f64 columns of n_trials values in the order S_R0, S_D0, I_B, I_R,
//! I_B_hat, I_R_hat.

use crate::channel::sample_cn;
use crate::error::{Error, Result};
use crate::geometry::{sample_bpp_disk, sample_ppp_annulus, PlanarPoint};
use crate::metrics::{conditioning_distances, Estimate, LinkDistances};
use crate::rng::{derive_seed, stream, StreamRng};
use crate::scenario::{ConditioningMode, OraclePhaseMode, Scenario};
use crate::signal::{optimal_phases, signal_power, CascadeFading, CascadeGeometry};
use crate::specfun::compensated_sum;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::{Read, Write};
use std::path::Path;

/// BSs are drawn out to this multiple of R.
pub const BS_DISK_FACTOR: f64 = 3.0;

const MAGIC: &[u8; 8] = b"IRSGBAT1";
const VERSION: u32 = 1;
const COLUMNS: usize = 6;

/// One complete draw. Only the serving link keeps its element fading; the
/// interfering paths are reduced to the aggregates.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkRealization {
    pub bs_points: Vec<PlanarPoint>,
    /// Index 0 is the serving (nearest) IRS.
    pub irs_points: Vec<PlanarPoint>,
    /// BS that serves the IRS-assisted link. None in conditional mode,
    /// where it is only placed at distance t0j.
    pub serving_bs_index: Option<usize>,
    /// Nearest BS to the user.
    pub nearest_bs_index: usize,
    pub distances: LinkDistances,
    pub serving_fading: CascadeFading,
    pub powers: TrialPowers,
}

/// The six per-trial powers, in W.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TrialPowers {
    pub s_r0: f64,
    pub s_d0: f64,
    pub i_b: f64,
    pub i_r: f64,
    pub i_b_hat: f64,
    pub i_r_hat: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    SignalIndirect,
    SignalDirect,
    BsIndirect,
    IrsIndirect,
    BsDirect,
    IrsDirect,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialBatch {
    pub seed: u64,
    pub scenario_hash: [u8; 32],
    pub s_r0: Vec<f64>,
    pub s_d0: Vec<f64>,
    pub i_b: Vec<f64>,
    pub i_r: Vec<f64>,
    pub i_b_hat: Vec<f64>,
    pub i_r_hat: Vec<f64>,
}

impl TrialBatch {
    pub fn from_trials(seed: u64, scenario_hash: [u8; 32], trials: &[TrialPowers]) -> Self {
        let col = |f: fn(&TrialPowers) -> f64| trials.iter().map(f).collect::<Vec<_>>();
        TrialBatch {
            seed,
            scenario_hash,
            s_r0: col(|t| t.s_r0),
            s_d0: col(|t| t.s_d0),
            i_b: col(|t| t.i_b),
            i_r: col(|t| t.i_r),
            i_b_hat: col(|t| t.i_b_hat),
            i_r_hat: col(|t| t.i_r_hat),
        }
    }

    pub fn n_trials(&self) -> usize {
        self.s_r0.len()
    }

    pub fn column(&self, q: Quantity) -> &[f64] {
        match q {
            Quantity::SignalIndirect => &self.s_r0,
            Quantity::SignalDirect => &self.s_d0,
            Quantity::BsIndirect => &self.i_b,
            Quantity::IrsIndirect => &self.i_r,
            Quantity::BsDirect => &self.i_b_hat,
            Quantity::IrsDirect => &self.i_r_hat,
        }
    }

    fn columns(&self) -> [&[f64]; COLUMNS] {
        [&self.s_r0, &self.s_d0, &self.i_b, &self.i_r, &self.i_b_hat, &self.i_r_hat]
    }

    /// SINR of each trial for the given mode.
    pub fn sinr(&self, mode: crate::interference::LinkMode, noise: f64) -> Vec<f64> {
        use crate::interference::LinkMode;
        let (s, b, r) = match mode {
            LinkMode::Indirect => (&self.s_r0, &self.i_b, &self.i_r),
            LinkMode::Direct => (&self.s_d0, &self.i_b_hat, &self.i_r_hat),
        };
        s.iter().zip(b).zip(r).map(|((s, b), r)| s / (b + r + noise)).collect()
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        let n = self.n_trials();
        for c in self.columns() {
            if c.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: c.len() });
            }
        }
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&(COLUMNS as u32).to_le_bytes())?;
        w.write_all(&self.seed.to_le_bytes())?;
        w.write_all(&(n as u64).to_le_bytes())?;
        w.write_all(&self.scenario_hash)?;
        let mut buf = Vec::with_capacity(8 * n);
        for c in self.columns() {
            buf.clear();
            for v in c {
                buf.extend_from_slice(&v.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::BatchFormat("bad magic".into()));
        }
        let mut b4 = [0u8; 4];
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b4)?;
        let version = u32::from_le_bytes(b4);
        if version != VERSION {
            return Err(Error::BatchFormat(format!("unsupported version {version}")));
        }
        r.read_exact(&mut b4)?;
        let cols = u32::from_le_bytes(b4) as usize;
        if cols != COLUMNS {
            return Err(Error::BatchFormat(format!("expected {COLUMNS} columns, found {cols}")));
        }
        r.read_exact(&mut b8)?;
        let seed = u64::from_le_bytes(b8);
        r.read_exact(&mut b8)?;
        let n = usize::try_from(u64::from_le_bytes(b8)).map_err(|_| Error::BatchFormat("trial count".into()))?;
        let mut scenario_hash = [0u8; 32];
        r.read_exact(&mut scenario_hash)?;
        let mut read_col = || -> Result<Vec<f64>> {
            let mut raw = vec![0u8; 8 * n];
            r.read_exact(&mut raw).map_err(|e| Error::BatchFormat(format!("truncated column: {e}")))?;
            Ok(raw.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect())
        };
        Ok(TrialBatch {
            seed,
            scenario_hash,
            s_r0: read_col()?,
            s_d0: read_col()?,
            i_b: read_col()?,
            i_r: read_col()?,
            i_b_hat: read_col()?,
            i_r_hat: read_col()?,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut f)?;
        f.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut f = std::io::BufReader::new(std::fs::File::open(path)?);
        Self::read_from(&mut f)
    }
}

// Rayleigh magnitude with E[|h|^2] = 1.
#[inline]
fn unit_rayleigh<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let e: f64 = Exp1.sample(rng);
    e.sqrt()
}

// r^-alpha from a squared distance, with the alpha = 4 case kept cheap.
#[inline]
fn inv_pow(d2: f64, half_alpha: f64) -> f64 {
    if half_alpha == 2.0 {
        1.0 / (d2 * d2)
    } else {
        d2.powf(-half_alpha)
    }
}

fn draw_cascade<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CascadeFading {
    let mut f = CascadeFading {
        g_mag: Vec::with_capacity(n),
        g_phase: Vec::with_capacity(n),
        f_mag: Vec::with_capacity(n),
        f_phase: Vec::with_capacity(n),
    };
    for _ in 0..n {
        let (gm, gp) = sample_cn(rng);
        let (fm, fp) = sample_cn(rng);
        f.g_mag.push(gm);
        f.g_phase.push(gp);
        f.f_mag.push(fm);
        f.f_phase.push(fp);
    }
    f
}

/// Optimal-phase received power of one cascaded link with fresh fading.
pub fn sample_signal_optimal<R: Rng + ?Sized>(geo: &CascadeGeometry, n: usize, rng: &mut R) -> Result<f64> {
    let fading = draw_cascade(n, rng);
    let phases = optimal_phases(&fading.g_phase, &fading.f_phase)?;
    signal_power(&fading, &phases, geo)
}

/// Received power of one cascaded link whose phases are uniform and
/// independent of the channel.
pub fn sample_signal_random<R: Rng + ?Sized>(geo: &CascadeGeometry, n: usize, rng: &mut R) -> Result<f64> {
    let fading = draw_cascade(n, rng);
    let phases = crate::signal::PhaseConfig::random(n, rng);
    signal_power(&fading, &phases, geo)
}

/// sum_j p beta^2 |h_j|^2 d_j^-alpha over BSs at 3-D squared distances `d2`.
fn bs_sum<R: Rng + ?Sized>(d2: impl Iterator<Item = f64>, half_alpha: f64, rng: &mut R) -> f64 {
    let mut acc = 0.0;
    for d in d2 {
        let h: f64 = Exp1.sample(rng);
        acc += h * inv_pow(d, half_alpha);
    }
    acc
}

/// One draw of BS interference (without the transmit power and beta^2
/// factors) from a PPP beyond the horizontal radius of a BS at 3-D
/// distance d0.
pub fn sample_bs_interference_unit<R: Rng + ?Sized>(sc: &Scenario, d0: f64, rng: &mut R) -> f64 {
    let d = &sc.deployment;
    let hb2 = d.h_b * d.h_b;
    let rho0 = (d0 * d0 - hb2).max(0.0).sqrt();
    let pts = sample_ppp_annulus(d.lambda_b, rho0, BS_DISK_FACTOR * d.radius, rng);
    bs_sum(pts.iter().map(|p| p.x * p.x + p.y * p.y + hb2), 0.5 * sc.alpha, rng)
}

/// Aggregate reflected interference split by whether it passes the IRS at
/// index 0; values exclude P beta^2.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IrsAggregate {
    pub others: f64,
    pub first: f64,
    /// Pairs evaluated with exact element fading.
    pub exact_pairs: usize,
    pub total_pairs: usize,
}

impl IrsAggregate {
    pub fn all(&self) -> f64 {
        self.others + self.first
    }
}

/// E[Y] of one interfering path under the oracle phase mode, unit power.
pub fn mean_path_gain(n: usize, mode: OraclePhaseMode) -> f64 {
    let n = n as f64;
    match mode {
        // E[|f||g|] = (sqrt(pi)/2)^2, E[|f|^2 |g|^2] = 1
        OraclePhaseMode::WorstCase => n + n * (n - 1.0) * (PI / 4.0).powi(2),
        OraclePhaseMode::OwnUser => n,
    }
}

/// Reflected interference from every (IRS, BS) pair with the BS within R
/// of the user. `g_first` supplies the IRS-0 to user magnitudes when that
/// IRS is the serving one.
///
/// Interfering IRSs are aligned to their own users; with i.i.d. uniform
/// channel phases the residuals toward the typical user are then i.i.d.
/// uniform, which is what OwnUser draws directly.
pub fn sample_irs_interference_unit<R: Rng + ?Sized>(
    sc: &Scenario,
    irs: &[PlanarPoint],
    bs: &[PlanarPoint],
    g_first: Option<&[f64]>,
    mode: OraclePhaseMode,
    rng: &mut R,
) -> IrsAggregate {
    let d = &sc.deployment;
    let n = sc.n_elements;
    let half = 0.5 * sc.alpha;
    let hr2 = d.h_r * d.h_r;
    let dh2 = d.dh() * d.dh();
    let r2 = d.radius * d.radius;
    let near: Vec<&PlanarPoint> = bs.iter().filter(|p| p.x * p.x + p.y * p.y <= r2).collect();
    let nb = near.len();
    let total_pairs = irs.len() * nb;
    if total_pairs == 0 {
        return IrsAggregate::default();
    }
    let mut w = Vec::with_capacity(total_pairs);
    for m in irs {
        let rm = inv_pow(m.x * m.x + m.y * m.y + hr2, half);
        for b in &near {
            w.push(rm * inv_pow(m.dist2(b) + dh2, half));
        }
    }
    let frac = sc.config.exact_weight_fraction;
    // power-of-two cut such that the pairs at or above it hold at least
    // `frac` of the weight sum, from a histogram of binary exponents
    let cut = if frac >= 1.0 {
        f64::NEG_INFINITY
    } else {
        let mut bins = [0.0f64; 2048];
        for v in &w {
            bins[(v.to_bits() >> 52) as usize & 0x7ff] += v;
        }
        let target = frac * bins.iter().sum::<f64>();
        let mut acc = 0.0;
        let mut e = 2047;
        while e > 0 {
            acc += bins[e];
            if acc >= target {
                break;
            }
            e -= 1;
        }
        f64::from_bits((e as u64) << 52)
    };
    let mean_y = mean_path_gain(n, mode);
    let mut exact: Vec<u32> = Vec::new();
    let mut tail_first = 0.0;
    let mut tail_others = 0.0;
    for (i, v) in w.iter().enumerate() {
        if *v >= cut {
            exact.push(i as u32);
        } else if i < nb {
            tail_first += v;
        } else {
            tail_others += v;
        }
    }
    let mut out = IrsAggregate {
        first: tail_first * mean_y,
        others: tail_others * mean_y,
        exact_pairs: exact.len(),
        total_pairs,
    };
    let mut g = vec![0.0; n];
    let mut current = usize::MAX;
    for i in exact.iter() {
        let i = *i as usize;
        let m = i / nb;
        if m != current {
            current = m;
            match (m, g_first) {
                (0, Some(g0)) => g.copy_from_slice(&g0[..n]),
                _ => g.iter_mut().for_each(|v| *v = unit_rayleigh(rng)),
            }
        }
        let y = draw_y(&g, mode, rng);
        if m == 0 {
            out.first += w[i] * y;
        } else {
            out.others += w[i] * y;
        }
    }
    out
}

// |sum_n g_n |f_n| e^{j beta_n}|^2 for fresh |f_n| and the phase mode.
fn draw_y<R: Rng + ?Sized>(g: &[f64], mode: OraclePhaseMode, rng: &mut R) -> f64 {
    match mode {
        OraclePhaseMode::WorstCase => {
            let mut a = 0.0;
            for gn in g {
                a += gn * unit_rayleigh(rng);
            }
            a * a
        }
        OraclePhaseMode::OwnUser => {
            // |f| e^{j beta} with uniform beta is CN(0, 1)
            let (mut re, mut im) = (0.0, 0.0);
            for gn in g {
                let x: f64 = StandardNormal.sample(rng);
                let y: f64 = StandardNormal.sample(rng);
                re += gn * x;
                im += gn * y;
            }
            0.5 * (re * re + im * im)
        }
    }
}

fn nearest(points: &[PlanarPoint], from: &PlanarPoint) -> Option<(usize, f64)> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| (i, p.dist2(from)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

/// One complete network snapshot.
pub fn simulate_snapshot<R: Rng + ?Sized>(sc: &Scenario, rng: &mut R) -> Result<NetworkRealization> {
    let d = sc.deployment;
    let n = sc.n_elements;
    let half = 0.5 * sc.alpha;
    let hb2 = d.h_b * d.h_b;
    let hr2 = d.h_r * d.h_r;
    let dh2 = d.dh() * d.dh();
    let origin = PlanarPoint::new(0.0, 0.0);
    let bs_radius = BS_DISK_FACTOR * d.radius;
    let (bs_points, irs_points, serving_bs_index, nearest_bs_index, dist) = match sc.config.conditioning {
        ConditioningMode::Conditional => {
            let dist = conditioning_distances(sc);
            let rho0 = (dist.d0 * dist.d0 - hb2).max(0.0).sqrt();
            let mut bs = vec![PlanarPoint::polar(rho0, 2.0 * PI * rng.random::<f64>())];
            bs.extend(sample_ppp_annulus(d.lambda_b, rho0, bs_radius, rng));
            let mut irs = Vec::with_capacity(d.m);
            if d.m >= 1 {
                let rho = (dist.r00 * dist.r00 - hr2).max(0.0).sqrt();
                irs.push(PlanarPoint::polar(rho, 2.0 * PI * rng.random::<f64>()));
                irs.extend(sample_bpp_disk(d.m - 1, d.radius, rng));
            }
            (bs, irs, None, 0, dist)
        }
        ConditioningMode::Marginal => {
            let mut bs = sample_ppp_annulus(d.lambda_b, 0.0, bs_radius, rng);
            while bs.is_empty() {
                bs = sample_ppp_annulus(d.lambda_b, 0.0, bs_radius, rng);
            }
            let mut irs = sample_bpp_disk(d.m, d.radius, rng);
            let (ib, b2) = nearest(&bs, &origin).expect("non-empty");
            let mut dist = LinkDistances {
                r00: f64::NAN,
                t0j: f64::NAN,
                d0: (b2 + hb2).sqrt(),
            };
            let mut serving = None;
            if let Some((ir, r2)) = nearest(&irs, &origin) {
                irs.swap(0, ir);
                let (j, t2) = nearest(&bs, &irs[0]).expect("non-empty");
                dist.r00 = (r2 + hr2).sqrt();
                dist.t0j = (t2 + dh2).sqrt();
                serving = Some(j);
            }
            (bs, irs, serving, ib, dist)
        }
    };

    let serving_fading = draw_cascade(if d.m >= 1 { n } else { 0 }, rng);
    let s_r0 = if d.m >= 1 {
        let geo = CascadeGeometry {
            r00: dist.r00,
            t0j: dist.t0j,
            alpha: sc.alpha,
            p_tx: sc.p_indirect,
            beta_gain: sc.beta,
        };
        let phases = optimal_phases(&serving_fading.g_phase, &serving_fading.f_phase)?;
        signal_power(&serving_fading, &phases, &geo)?
    } else {
        0.0
    };
    let h0: f64 = Exp1.sample(rng);
    let s_d0 = sc.p_direct * sc.beta2() * h0 * dist.d0.powf(-sc.alpha);

    // one fading draw per BS, shared by both modes
    let gains: Vec<f64> = bs_points
        .iter()
        .map(|p| {
            let h: f64 = Exp1.sample(rng);
            h * inv_pow(p.x * p.x + p.y * p.y + hb2, half)
        })
        .collect();
    let sum_except = |skip: Option<usize>| compensated_sum(gains.iter().enumerate().filter(|(i, _)| Some(*i) != skip).map(|(_, g)| *g));
    let (ib_unit, ib_hat_unit) = match serving_bs_index {
        None => {
            let v = sum_except(Some(nearest_bs_index));
            (v, v)
        }
        Some(j) => (sum_except(Some(j)), sum_except(Some(nearest_bs_index))),
    };
    let agg = sample_irs_interference_unit(
        sc,
        &irs_points,
        &bs_points,
        if d.m >= 1 { Some(&serving_fading.g_mag) } else { None },
        sc.config.oracle_phase_mode,
        rng,
    );
    let b2 = sc.beta2();
    let powers = TrialPowers {
        s_r0,
        s_d0,
        i_b: sc.ib_power_indirect() * b2 * ib_unit,
        i_r: sc.p_indirect * b2 * agg.others,
        i_b_hat: sc.p_direct * b2 * ib_hat_unit,
        i_r_hat: sc.p_direct * b2 * agg.all(),
    };
    Ok(NetworkRealization {
        bs_points,
        irs_points,
        serving_bs_index,
        nearest_bs_index,
        distances: dist,
        serving_fading,
        powers,
    })
}

/// `n_trials` snapshots on independent streams keyed by (seed, trial).
/// Results are identical for any thread count.
pub fn simulate_batch(sc: &Scenario, n_trials: usize, seed: u64) -> Result<TrialBatch> {
    let base = derive_seed(seed, "snapshot");
    let trials: Vec<TrialPowers> = (0..n_trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(base, t);
            simulate_snapshot(sc, &mut rng).map(|r| r.powers)
        })
        .collect::<Result<_>>()?;
    Ok(TrialBatch::from_trials(seed, sc.hash(), &trials))
}

/// Run `f` on `n` independent streams in parallel, in trial order.
pub fn parallel_samples<T, F>(n: usize, seed: u64, label: &str, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut StreamRng) -> T + Sync + Send,
{
    let base = derive_seed(seed, label);
    (0..n as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(base, t);
            f(&mut rng)
        })
        .collect()
}

/// Sample mean of exp(-s X) for each s, with its standard error.
pub fn empirical_lt(samples: &[f64], s_grid: &[f64]) -> Vec<Estimate> {
    s_grid
        .iter()
        .map(|s| {
            let v: Vec<f64> = samples.iter().map(|x| (-s * x).exp()).collect();
            mean_and_stderr(&v)
        })
        .collect()
}

/// Mean with the standard error of the mean; stderr is 0 for one sample.
pub fn mean_and_stderr(v: &[f64]) -> Estimate {
    let n = v.len();
    if n == 0 {
        return Estimate {
            value: f64::NAN,
            stderr: f64::NAN,
        };
    }
    let mean = compensated_sum(v.iter().copied()) / n as f64;
    if n == 1 {
        return Estimate { value: mean, stderr: 0.0 };
    }
    let ss = compensated_sum(v.iter().map(|x| (x - mean) * (x - mean)));
    Estimate {
        value: mean,
        stderr: (ss / ((n - 1) * n) as f64).sqrt(),
    }
}

/// Fraction with its binomial standard error and 95% Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageEstimate {
    pub p: f64,
    pub stderr: f64,
    pub lo: f64,
    pub hi: f64,
}

pub fn wilson(successes: usize, n: usize) -> CoverageEstimate {
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z = 1.959963984540054;
    let z2 = z * z;
    let den = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / den;
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / den;
    CoverageEstimate {
        p,
        stderr: (p * (1.0 - p) / nf).sqrt(),
        // the bounds are exactly 0 and 1 at the extremes
        lo: if successes == 0 { 0.0 } else { (centre - half).clamp(0.0, p) },
        hi: if successes == n { 1.0 } else { (centre + half).clamp(p, 1.0) },
    }
}

/// Empirical Pr(SINR >= tau) per threshold from a batch.
pub fn coverage_from_batch(
    batch: &TrialBatch,
    tau_grid: &[f64],
    mode: crate::interference::LinkMode,
    noise: f64,
) -> Vec<CoverageEstimate> {
    let mut sinr = batch.sinr(mode, noise);
    sinr.sort_unstable_by(|a, b| a.total_cmp(b));
    let n = sinr.len();
    tau_grid
        .iter()
        .map(|t| {
            let below = sinr.partition_point(|x| x < t);
            wilson(n - below, n)
        })
        .collect()
}

/// Simulate and return empirical coverage over `tau_grid` (linear).
pub fn empirical_coverage(
    sc: &Scenario,
    tau_grid: &[f64],
    n_trials: usize,
    mode: crate::interference::LinkMode,
) -> Result<Vec<CoverageEstimate>> {
    if n_trials < 100 {
        return Err(Error::domain("empirical_coverage", format!("n_trials = {n_trials} < 100")));
    }
    let batch = simulate_batch(sc, n_trials, sc.config.seed)?;
    Ok(coverage_from_batch(&batch, tau_grid, mode, sc.noise))
}

/// Empirical E[ln(1 + SINR)] in nats.
pub fn empirical_rate(batch: &TrialBatch, mode: crate::interference::LinkMode, noise: f64) -> Estimate {
    let v: Vec<f64> = batch.sinr(mode, noise).iter().map(|x| x.ln_1p()).collect();
    mean_and_stderr(&v)
}

/// Comparison of one analytic curve against its empirical counterpart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationEntry {
    pub quantity: String,
    pub points: usize,
    pub max_abs_gap: f64,
    pub mean_gap: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ValidationEntry {
    pub fn compare(quantity: impl Into<String>, analytic: &[f64], empirical: &[f64], tolerance: f64) -> Result<Self> {
        if analytic.len() != empirical.len() {
            return Err(Error::LengthMismatch {
                expected: analytic.len(),
                got: empirical.len(),
            });
        }
        let gaps: Vec<f64> = analytic.iter().zip(empirical).map(|(a, e)| a - e).collect();
        let max_abs_gap = gaps.iter().fold(0.0f64, |m, g| m.max(g.abs()));
        let mean_gap = if gaps.is_empty() {
            0.0
        } else {
            compensated_sum(gaps.iter().copied()) / gaps.len() as f64
        };
        Ok(ValidationEntry {
            quantity: quantity.into(),
            points: gaps.len(),
            max_abs_gap,
            mean_gap,
            tolerance,
            // NaN gaps fail
            pass: max_abs_gap <= tolerance && gaps.iter().all(|g| g.is_finite()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub scenario_hash: String,
    pub seed: u64,
    pub n_trials: usize,
    pub entries: Vec<ValidationEntry>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    /// quantity,points,max_abs_gap,mean_gap,tolerance,pass
    pub fn to_csv(&self) -> String {
        let mut s = String::from("quantity,points,max_abs_gap,mean_gap,tolerance,pass\n");
        for e in &self.entries {
            s.push_str(&format!(
                "{},{},{:e},{:e},{:e},{}\n",
                e.quantity, e.points, e.max_abs_gap, e.mean_gap, e.tolerance, e.pass
            ));
        }
        s
    }
}

/// Tolerances used by `validation_report`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub lt_signal: f64,
    pub lt_bs: f64,
    pub lt_irs: f64,
    pub coverage: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            lt_signal: 0.02,
            lt_bs: 0.02,
            lt_irs: 0.05,
            coverage: 0.03,
        }
    }
}

/// Transform arguments c / mean for c log-spaced over [1e-2, 1e2].
pub fn s_grid_for(mean: f64, points: usize) -> Vec<f64> {
    let points = points.max(2);
    (0..points)
        .map(|k| 10f64.powf(-2.0 + 4.0 * k as f64 / (points - 1) as f64) / mean)
        .collect()
}

/// Analytic counterparts of the batch quantities.
pub trait AnalyticSource {
    fn lt(&self, q: Quantity, s: f64) -> Result<f64>;
    fn coverage(&self, mode: crate::interference::LinkMode, tau: f64) -> Result<f64>;
}

/// Analytic model in the phase convention matching the oracle mode.
pub struct MatchedAnalytic<'a> {
    pub an: crate::metrics::Analytic<'a>,
    pub cond: crate::metrics::Conditioning,
}

impl AnalyticSource for MatchedAnalytic<'_> {
    fn lt(&self, q: Quantity, s: f64) -> Result<f64> {
        use crate::interference::LinkMode;
        use crate::metrics::Conditioning;
        let d = match self.cond {
            Conditioning::At(d) => d,
            Conditioning::Marginal => crate::metrics::median_distances(self.an.sc),
        };
        match q {
            Quantity::SignalIndirect => self.an.lt_signal_indirect(s, d.r00, d.t0j),
            Quantity::SignalDirect => Ok(self.an.lt_signal_direct(s, d.d0)),
            Quantity::BsIndirect => self.an.lt_ib(s, d.d0, LinkMode::Indirect),
            Quantity::IrsIndirect => self.an.lt_ir(s, LinkMode::Indirect),
            Quantity::BsDirect => self.an.lt_ib(s, d.d0, LinkMode::Direct),
            Quantity::IrsDirect => self.an.lt_ir(s, LinkMode::Direct),
        }
    }

    fn coverage(&self, mode: crate::interference::LinkMode, tau: f64) -> Result<f64> {
        self.an.coverage(mode, tau, &self.cond)
    }
}

/// The scenario with its analytic interferer model set to the one the
/// oracle phase mode realizes.
pub fn matched_scenario(sc: &Scenario) -> Result<Scenario> {
    use crate::interference::InterfererModel;
    sc.with_config(|c| {
        c.interferer_model = match c.oracle_phase_mode {
            OraclePhaseMode::OwnUser => InterfererModel::RandomPhase,
            OraclePhaseMode::WorstCase => InterfererModel::WorstCase,
        }
    })
}

/// Compare analytic transforms and coverage curves with a batch.
pub fn validation_report_with(
    analytic: &dyn AnalyticSource,
    batch: &TrialBatch,
    tau_grid: &[f64],
    noise: f64,
    tol: &Tolerances,
) -> Result<ValidationReport> {
    use crate::interference::LinkMode;
    let mut entries = Vec::new();
    let lt_items = [
        (Quantity::SignalIndirect, "lt_signal_indirect", tol.lt_signal),
        (Quantity::SignalDirect, "lt_signal_direct", tol.lt_signal),
        (Quantity::BsIndirect, "lt_bs_indirect", tol.lt_bs),
        (Quantity::BsDirect, "lt_bs_direct", tol.lt_bs),
        (Quantity::IrsIndirect, "lt_irs_indirect", tol.lt_irs),
        (Quantity::IrsDirect, "lt_irs_direct", tol.lt_irs),
    ];
    for (q, name, t) in lt_items {
        let col = batch.column(q);
        let mean = mean_and_stderr(col).value;
        if !(mean > 0.0) {
            continue;
        }
        let grid = s_grid_for(mean, 13);
        let emp: Vec<f64> = empirical_lt(col, &grid).iter().map(|e| e.value).collect();
        let ana = grid.iter().map(|s| analytic.lt(q, *s)).collect::<Result<Vec<_>>>()?;
        entries.push(ValidationEntry::compare(name, &ana, &emp, t)?);
    }
    for (mode, name) in [(LinkMode::Indirect, "coverage_indirect"), (LinkMode::Direct, "coverage_direct")] {
        let emp: Vec<f64> = coverage_from_batch(batch, tau_grid, mode, noise).iter().map(|c| c.p).collect();
        let ana = tau_grid.iter().map(|t| analytic.coverage(mode, *t)).collect::<Result<Vec<_>>>()?;
        entries.push(ValidationEntry::compare(name, &ana, &emp, tol.coverage)?);
    }
    Ok(ValidationReport {
        scenario_hash: hex(&batch.scenario_hash),
        seed: batch.seed,
        n_trials: batch.n_trials(),
        entries,
    })
}

/// Full validation of a scenario: simulate, then compare against the
/// analytic model in the matching phase convention.
pub fn validation_report(sc: &Scenario, n_trials: usize, tol: &Tolerances) -> Result<ValidationReport> {
    let matched = matched_scenario(sc)?;
    let an = crate::metrics::Analytic::new(&matched)?;
    let source = MatchedAnalytic {
        an,
        cond: crate::metrics::Conditioning::from_scenario(&matched),
    };
    let batch = simulate_batch(sc, n_trials, sc.config.seed)?;
    validation_report_with(&source, &batch, &sc.tau_grid, sc.noise, tol)
}

fn hex(b: &[u8]) -> String {
    b.iter().map(|x| format!("{x:02x}")).collect()
}

/// One draw of Z = sum_m r_{0,m}^-alpha t^-alpha Y_m over `m_eff` uniform
/// IRSs with t held fixed, Y from the oracle phase mode.
pub fn sample_z<R: Rng + ?Sized>(sc: &Scenario, m_eff: usize, t: f64, mode: OraclePhaseMode, rng: &mut R) -> f64 {
    let d = &sc.deployment;
    let n = sc.n_elements;
    let half = 0.5 * sc.alpha;
    let ta = inv_pow(t * t, half);
    let pts = sample_bpp_disk(m_eff, d.radius, rng);
    let mut g = vec![0.0; n];
    let mut acc = 0.0;
    for p in pts {
        let r = inv_pow(p.x * p.x + p.y * p.y + d.h_r * d.h_r, half);
        g.iter_mut().for_each(|v| *v = unit_rayleigh(rng));
        let y = draw_y(&g, mode, rng);
        acc += r * ta * y;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interference::LinkMode;

    #[test]
    fn no_irs_means_no_reflected_interference() {
        let sc = Scenario::default()
            .with_config(|c| {
                c.n_irs = 0;
                c.d0_m = Some(30.0);
            })
            .unwrap();
        let mut rng = stream(3, 0);
        let r = simulate_snapshot(&sc, &mut rng).unwrap();
        assert_eq!(r.powers.i_r, 0.0);
        assert_eq!(r.powers.i_r_hat, 0.0);
        assert_eq!(r.powers.s_r0, 0.0);
        // S_D0 = P_hat beta^2 |h|^2 d0^-alpha with |h|^2 > 0
        let unit = r.powers.s_d0 / (sc.p_direct * 30f64.powi(-4));
        assert!(unit > 0.0 && unit.is_finite());
    }

    #[test]
    fn snapshots_reproducible() {
        let sc = Scenario::default().with_config(|c| c.n_irs = 50).unwrap();
        let a = simulate_snapshot(&sc, &mut stream(9, 4)).unwrap();
        let b = simulate_snapshot(&sc, &mut stream(9, 4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exact_lt_cases() {
        let c = vec![2.0; 10];
        let e = empirical_lt(&c, &[0.0, 0.5]);
        assert_eq!(e[0].value, 1.0);
        assert_eq!(e[1].value, (-1.0f64).exp());
        assert_eq!(e[1].stderr, 0.0);
    }

    #[test]
    fn exponential_lt_within_three_stderr() {
        let x = parallel_samples(20_000, 5, "exp", |r| Exp1.sample(r));
        for (s, e) in [0.3, 1.0, 4.0].iter().zip(empirical_lt(&x, &[0.3, 1.0, 4.0])) {
            assert!((e.value - 1.0 / (1.0 + s)).abs() < 3.0 * e.stderr, "{s}: {e:?}");
        }
    }

    #[test]
    fn coverage_monotone_and_trivial_threshold() {
        let sc = Scenario::default().with_config(|c| c.n_irs = 60).unwrap();
        let batch = simulate_batch(&sc, 300, 2).unwrap();
        let sinr = batch.sinr(LinkMode::Direct, sc.noise);
        let min = sinr.iter().cloned().fold(f64::INFINITY, f64::min);
        let grid: Vec<f64> = (0..30).map(|k| 10f64.powf(-3.0 + 0.2 * k as f64)).collect();
        let cov = coverage_from_batch(&batch, &grid, LinkMode::Direct, sc.noise);
        assert!(cov.windows(2).all(|w| w[1].p <= w[0].p));
        let c = coverage_from_batch(&batch, &[0.5 * min], LinkMode::Direct, sc.noise);
        assert_eq!(c[0].p, 1.0);
        for c in cov {
            assert!(c.lo <= c.p && c.p <= c.hi);
        }
    }

    #[test]
    fn batch_round_trip() {
        let sc = Scenario::default().with_config(|c| c.n_irs = 20).unwrap();
        let batch = simulate_batch(&sc, 25, 7).unwrap();
        let mut buf = Vec::new();
        batch.write_to(&mut buf).unwrap();
        assert_eq!(buf.len(), 8 + 4 + 4 + 8 + 8 + 32 + 6 * 8 * 25);
        let back = TrialBatch::read_from(&mut buf.as_slice()).unwrap();
        assert_eq!(back, batch);
        buf[0] = b'X';
        assert!(TrialBatch::read_from(&mut buf.as_slice()).is_err());
    }

    #[test]
    fn corrupted_analytic_is_flagged() {
        let emp = [0.9, 0.5, 0.1];
        let ok = ValidationEntry::compare("x", &emp, &emp, 0.01).unwrap();
        assert!(ok.pass && ok.max_abs_gap == 0.0 && ok.mean_gap == 0.0);
        let bad: Vec<f64> = emp.iter().map(|v| v + 0.1).collect();
        assert!(!ValidationEntry::compare("x", &bad, &emp, 0.05).unwrap().pass);
    }

    #[test]
    fn wilson_interval_contains_estimate() {
        let w = wilson(0, 100);
        assert_eq!(w.p, 0.0);
        assert!(w.lo == 0.0 && w.hi > 0.0);
        let w = wilson(100, 100);
        assert!(w.hi == 1.0 && w.lo < 1.0);
    }
}
