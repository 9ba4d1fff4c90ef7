//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes plain numbers or strings and returns a JSON document,
//! so the page needs no generated type glue beyond `wasm-bindgen` itself.

use bicem::analysis::bound_point;
use bicem::constellation::{from_db, symbol_snr, Constellation};
use bicem::mapping::{Mapping, NeighborMode};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_POINTS: usize = 2001;

#[derive(Serialize)]
struct LevelPoint {
    gamma_b_db: f64,
    ring_ratio: f64,
    optimal: Vec<f64>,
    ask: Vec<f64>,
}

#[derive(Serialize)]
struct ModeCurve {
    mode: &'static str,
    profile: Vec<u32>,
    n1: usize,
    n_n1: u32,
    diversity: f64,
    curve: Vec<(f64, f64)>,
}

#[derive(Serialize)]
struct Bounds {
    mapping: String,
    modes: Vec<ModeCurve>,
}

#[derive(Serialize)]
struct Neighbors {
    mapping: String,
    bits: u32,
    labels: Vec<String>,
    kappa: Vec<Vec<usize>>,
    varrho: Vec<Vec<usize>>,
    profile_ff: Vec<u32>,
    profile_eff: Vec<u32>,
    n1_ff: usize,
    n1_eff: usize,
}

fn grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, String> {
    if !(from.is_finite() && to.is_finite() && step > 0.0 && to >= from) {
        return Err(format!("bad SNR range {from}..{to} step {step}"));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize + 1;
    if n > MAX_POINTS {
        return Err(format!("{n} points requested, at most {MAX_POINTS}"));
    }
    Ok((0..n).map(|i| from + i as f64 * step).collect())
}

fn parse_mapping(text: &str) -> Result<Mapping, String> {
    Mapping::resolve(text).map_err(|e| e.to_string())
}

fn json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

/// Level energies of the optimal and the equidistant constellation, scaled
/// to unit mean, over a bit-SNR range.
pub fn levels_json(bits: u32, code_k: usize, code_n: usize, from: f64, to: f64, step: f64) -> Result<String, String> {
    if !(1..=8).contains(&bits) || code_k == 0 || code_n < code_k {
        return Err(format!("unsupported parameters m = {bits}, rate {code_k}/{code_n}"));
    }
    let points = grid(from, to, step)?
        .into_iter()
        .map(|g| {
            let gamma = symbol_snr(from_db(g), bits, code_k, code_n);
            let opt = Constellation::optimal(bits, gamma, 1.0 / gamma).map_err(|e| e.to_string())?;
            let ask = Constellation::equidistant_ask(bits, gamma, 1.0 / gamma).map_err(|e| e.to_string())?;
            Ok(LevelPoint {
                gamma_b_db: g,
                ring_ratio: opt.ring_ratio().unwrap_or(f64::NAN),
                optimal: opt.energies(),
                ask: ask.energies(),
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    json(&points)
}

/// `log10` of the pairwise error bound in both feedback modes.
#[allow(clippy::too_many_arguments)]
pub fn bounds_json(
    mapping: &str,
    antennas: usize,
    d_min: u32,
    code_k: usize,
    code_n: usize,
    from: f64,
    to: f64,
    step: f64,
) -> Result<String, String> {
    let m = parse_mapping(mapping)?;
    if antennas == 0 || d_min == 0 || code_k == 0 || code_n < code_k {
        return Err("antennas, d_min and the code rate must be positive".into());
    }
    let snr = grid(from, to, step)?;
    let mut modes = Vec::new();
    for mode in [NeighborMode::FeedbackFree, NeighborMode::ErrorFreeFeedback] {
        let mut curve = Vec::with_capacity(snr.len());
        let mut last = None;
        for &g in &snr {
            let p = bound_point("", &m, mode, g, (code_k, code_n), d_min, antennas).map_err(|e| e.to_string())?;
            curve.push((g, p.log10_bound));
            last = Some(p);
        }
        let p = last.ok_or("empty grid")?;
        modes.push(ModeCurve {
            mode: mode.short_name(),
            profile: m.neighbor_profile(mode).counts().to_vec(),
            n1: p.n1,
            n_n1: p.n_n1,
            diversity: p.diversity,
            curve,
        });
    }
    json(&Bounds { mapping: m.to_string(), modes })
}

/// `kappa`, `varrho` and the neighbor profiles of one labeling.
pub fn neighbors_json(mapping: &str) -> Result<String, String> {
    let m = parse_mapping(mapping)?;
    let bits = m.bits_per_symbol();
    let levels = m.num_levels();
    let table = |mode| {
        (1..=bits)
            .map(|w| (0..levels).map(|l| m.neighbor(mode, l, w)).collect())
            .collect::<Vec<Vec<usize>>>()
    };
    json(&Neighbors {
        mapping: m.to_string(),
        bits,
        labels: (0..levels).map(|l| format!("{:0width$b}", m.label(l), width = bits as usize)).collect(),
        kappa: table(NeighborMode::FeedbackFree),
        varrho: table(NeighborMode::ErrorFreeFeedback),
        profile_ff: m.neighbor_profile(NeighborMode::FeedbackFree).counts().to_vec(),
        profile_eff: m.neighbor_profile(NeighborMode::ErrorFreeFeedback).counts().to_vec(),
        n1_ff: m.n1(NeighborMode::FeedbackFree),
        n1_eff: m.n1(NeighborMode::ErrorFreeFeedback),
    })
}

#[wasm_bindgen]
pub fn levels(bits: u32, code_k: usize, code_n: usize, from: f64, to: f64, step: f64) -> Result<String, JsError> {
    levels_json(bits, code_k, code_n, from, to, step).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn bounds(
    mapping: &str,
    antennas: usize,
    d_min: u32,
    code_k: usize,
    code_n: usize,
    from: f64,
    to: f64,
    step: f64,
) -> Result<String, JsError> {
    bounds_json(mapping, antennas, d_min, code_k, code_n, from, to, step).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn neighbors(mapping: &str) -> Result<String, JsError> {
    neighbors_json(mapping).map_err(|e| JsError::new(&e))
}
