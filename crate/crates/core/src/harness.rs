//! Monte-Carlo BER sweeps, bound sweeps and mapping searches driven by a
//! [`SimConfig`], with CSV output.
//!
//! Frames are simulated in fixed batches; frame `f` at SNR index `i` always
//! draws from the stream `(seed(channel_seed, i), f)`, so results do not
//! depend on the number of worker threads. All mappings at one SNR see the
//! same information words and channel draws.

use std::io::Write;
use std::path::Path;

use rand::Rng;
use serde::Serialize;

use crate::analysis::{bound_point, BoundResult};
use crate::channel::{frame_rng, transmit};
use crate::codec::ConvCode;
use crate::config::{ConstellationKind, SimConfig};
use crate::constellation::{from_db, symbol_snr, Constellation};
use crate::demod::{bits_to_levels, DemodContext};
use crate::error::{Error, Result};
use crate::mapping::Mapping;
use crate::mapsearch::{ProfileTable, SearchParams, SearchResult};
use crate::receiver::Link;

const BATCH: u64 = 64;
const WILSON_Z: f64 = 1.959_963_984_540_054;

/// One row of a BER table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BerRecord {
    pub gamma_b_db: f64,
    pub mapping_id: String,
    pub iteration: usize,
    pub frames: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// 95% Wilson score interval for `errors` out of `trials`.
pub fn wilson_interval(errors: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = WILSON_Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if errors == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if errors == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

fn record(gamma_b_db: f64, id: &str, iteration: usize, frames: u64, errors: u64, bits: u64) -> BerRecord {
    let (ci_low, ci_high) = wilson_interval(errors, bits);
    BerRecord {
        gamma_b_db,
        mapping_id: id.to_string(),
        iteration,
        frames,
        bit_errors: errors,
        ber: errors as f64 / bits as f64,
        ci_low,
        ci_high,
    }
}

fn point_seed(channel_seed: u64, snr_index: usize) -> u64 {
    // splitmix64 finalizer
    let mut z = channel_seed ^ (snr_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(feature = "parallel")]
fn map_frames<T, F>(range: std::ops::Range<u64>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_frames<T, F>(range: std::ops::Range<u64>, f: F) -> Result<Vec<T>>
where
    F: Fn(u64) -> Result<T>,
{
    range.map(f).collect()
}

/// Runs batches until `frames` are done or the stop rule fires. `sim`
/// returns per-pass error counts for one frame.
fn run_point<F>(frames: u64, passes: usize, max_errors: u64, sim: F) -> Result<(u64, Vec<u64>)>
where
    F: Fn(u64) -> Result<Vec<u64>> + Sync + Send,
{
    let mut totals = vec![0u64; passes];
    let mut done = 0;
    while done < frames {
        let end = (done + BATCH).min(frames);
        for errs in map_frames(done..end, &sim)? {
            for (t, e) in totals.iter_mut().zip(errs) {
                *t += e;
            }
        }
        done = end;
        if max_errors > 0 && totals[passes - 1] >= max_errors {
            break;
        }
    }
    Ok((done, totals))
}

fn build_constellation(kind: ConstellationKind, bits: u32, gamma: f64) -> Result<Constellation> {
    match kind {
        ConstellationKind::Optimal => Constellation::optimal(bits, gamma, 1.0),
        ConstellationKind::EquidistantAsk => Constellation::equidistant_ask(bits, gamma, 1.0),
    }
}

/// Coded BER per (SNR, mapping, pass).
pub fn run_ber_sweep(cfg: &SimConfig) -> Result<Vec<BerRecord>> {
    let (k, n) = cfg.code_rate();
    let mut out = Vec::new();
    for (si, &gb) in cfg.snr_b_db.iter().enumerate() {
        let gamma = symbol_snr(from_db(gb), cfg.bits, k, n);
        let constellation = build_constellation(cfg.constellation, cfg.bits, gamma)?;
        let seed = point_seed(cfg.channel_seed, si);
        for (id, mapping) in &cfg.mappings {
            let demod = DemodContext::new(&constellation, mapping, cfg.antennas)?;
            let link = Link::new(
                cfg.code.clone(),
                constellation.clone(),
                demod,
                cfg.interleaver_seed,
                cfg.info_block_length,
            )?;
            let (frames, totals) = run_point(cfg.frames, cfg.iterations + 1, cfg.max_bit_errors, |f| {
                let trace = link.simulate_frame(cfg.iterations, &mut frame_rng(seed, f))?;
                Ok(trace.errors.iter().map(|&e| e as u64).collect())
            })?;
            let bits = frames * cfg.info_block_length as u64;
            for (it, &e) in totals.iter().enumerate() {
                out.push(record(gb, id, it, frames, e, bits));
            }
        }
    }
    Ok(out)
}

/// Index of the most likely level for each energy.
pub fn ml_levels(demod: &DemodContext, energies: &[f64]) -> Vec<usize> {
    energies
        .iter()
        .map(|&t| {
            let ll = demod.symbol_loglikelihoods(t);
            (0..ll.len())
                .max_by(|&a, &b| ll[a].total_cmp(&ll[b]))
                .expect("at least two levels")
        })
        .collect()
}

/// Uncoded transmission with symbol-wise ML detection. The information
/// rate is `m` bits per symbol, so the bit SNR converts with rate 1.
pub fn run_uncoded_baseline(cfg: &SimConfig) -> Result<Vec<BerRecord>> {
    let m = cfg.bits as usize;
    if cfg.info_block_length % m != 0 {
        return Err(Error::Config(format!(
            "information block length {} is not a multiple of {m} bits",
            cfg.info_block_length
        )));
    }
    let symbols = cfg.info_block_length / m;
    let mut out = Vec::new();
    for (si, &gb) in cfg.snr_b_db.iter().enumerate() {
        let gamma = symbol_snr(from_db(gb), cfg.bits, 1, 1);
        let constellation = build_constellation(cfg.constellation, cfg.bits, gamma)?;
        let seed = point_seed(cfg.channel_seed, si);
        for (id, mapping) in &cfg.mappings {
            let demod = DemodContext::new(&constellation, mapping, cfg.antennas)?;
            let (frames, totals) = run_point(cfg.frames, 1, cfg.max_bit_errors, |f| {
                let mut rng = frame_rng(seed, f);
                let bits: Vec<u8> = (0..symbols * m).map(|_| rng.random_range(0..2u8)).collect();
                let levels = bits_to_levels(&bits, mapping)?;
                let rx = transmit(&levels, &constellation, cfg.antennas, &mut rng)?;
                let decided = ml_levels(&demod, &rx.energies);
                let errors: u64 = levels
                    .iter()
                    .zip(&decided)
                    .map(|(&a, &b)| u64::from((mapping.label(a) ^ mapping.label(b)).count_ones()))
                    .sum();
                Ok(vec![errors])
            })?;
            out.push(record(gb, id, 0, frames, totals[0], frames * cfg.info_block_length as u64));
        }
    }
    Ok(out)
}

/// Bound rows for every (mapping, mode, SNR).
pub fn run_bound_sweep(cfg: &SimConfig) -> Result<Vec<BoundResult>> {
    let mut out = Vec::new();
    for (id, mapping) in &cfg.mappings {
        for &mode in &cfg.modes {
            for &gb in &cfg.snr_b_db {
                out.push(bound_point(id, mapping, mode, gb, cfg.code_rate(), cfg.d_min, cfg.antennas)?);
            }
        }
    }
    Ok(out)
}

/// One search per SNR point.
pub fn run_map_search(cfg: &SimConfig) -> Result<Vec<SearchResult>> {
    let table = ProfileTable::build(cfg.bits)?;
    cfg.snr_b_db
        .iter()
        .map(|&gb| {
            table.search(&SearchParams {
                gamma_b_db: gb,
                antennas: cfg.antennas,
                d_min: cfg.d_min,
                bits: cfg.bits,
                epsilon: cfg.epsilon,
                code_rate: cfg.code_rate(),
            })
        })
        .collect()
}

pub fn write_ber_csv<W: Write>(records: &[BerRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct BoundRow<'a> {
    mapping_id: &'a str,
    mode: &'a str,
    gamma_b_db: f64,
    delta: f64,
    log10_bound: f64,
    n1: usize,
    #[serde(rename = "N_n1")]
    n_n1: u32,
    diversity: f64,
}

pub fn write_bound_csv<W: Write>(rows: &[BoundResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(BoundRow {
            mapping_id: &r.mapping_id,
            mode: r.mode.short_name(),
            gamma_b_db: r.gamma_b_db,
            delta: r.delta,
            log10_bound: r.log10_bound,
            n1: r.n1,
            n_n1: r.n_n1,
            diversity: r.diversity,
        })?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SearchRow {
    rho: usize,
    mapping: String,
    delta_kappa_log10: f64,
    delta_rho_log10: f64,
}

/// Best-mapping table of one SNR point.
pub fn write_search_csv<W: Write>(result: &SearchResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for b in &result.best {
        w.serialize(SearchRow {
            rho: b.rho,
            mapping: b.mapping.to_string(),
            delta_kappa_log10: b.delta_kappa_log10,
            delta_rho_log10: b.delta_rho_log10,
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Output path for the search table at one SNR: `table4.csv` becomes
/// `table4_9.5dB.csv`.
pub fn search_output_path(base: &Path, gamma_b_db: f64) -> std::path::PathBuf {
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("mapsearch");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    base.with_file_name(format!("{stem}_{gamma_b_db}dB.{ext}"))
}

/// A coded link at one bit SNR, for callers that drive frames themselves.
pub fn build_link(
    code: &ConvCode,
    mapping: &Mapping,
    kind: ConstellationKind,
    gamma_b_db: f64,
    antennas: usize,
    interleaver_seed: u64,
    info_len: usize,
) -> Result<Link> {
    let bits = mapping.bits_per_symbol();
    let gamma = symbol_snr(from_db(gamma_b_db), bits, code.k(), code.n());
    let constellation = build_constellation(kind, bits, gamma)?;
    let demod = DemodContext::new(&constellation, mapping, antennas)?;
    Link::new(code.clone(), constellation, demod, interleaver_seed, info_len)
}
