//! Experiment configuration: flat `key = value` files (TOML syntax) plus
//! command-line overrides.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::codec::ConvCode;
use crate::constellation::{from_db, to_db};
use crate::error::{Error, Result};
use crate::mapping::{Mapping, NeighborMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ConstellationKind {
    #[default]
    Optimal,
    #[serde(alias = "ask")]
    EquidistantAsk,
}

/// Raw file contents; every key is optional and defaulted in [`SimConfig`].
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(rename = "M")]
    max_level: Option<usize>,
    #[serde(rename = "R")]
    antennas: Option<usize>,
    code: Option<String>,
    code_rate: Option<String>,
    mappings: Option<Vec<String>>,
    snr_b_db: Option<Vec<f64>>,
    snr_db: Option<Vec<f64>>,
    iterations: Option<usize>,
    frames: Option<u64>,
    max_bit_errors: Option<u64>,
    info_block_length: Option<usize>,
    interleaver_seed: Option<u64>,
    channel_seed: Option<u64>,
    constellation: Option<ConstellationKind>,
    d_min: Option<u32>,
    epsilon: Option<f64>,
    modes: Option<Vec<String>>,
    output: Option<PathBuf>,
}

/// A validated experiment.
#[derive(Clone, Debug)]
pub struct SimConfig {
    pub bits: u32,
    pub antennas: usize,
    pub code: ConvCode,
    /// `(label, mapping)` pairs; the label is what the user wrote.
    pub mappings: Vec<(String, Mapping)>,
    /// Bit SNR grid in dB.
    pub snr_b_db: Vec<f64>,
    pub iterations: usize,
    pub frames: u64,
    /// Stop a point early once the final pass has this many errors (0 = off).
    pub max_bit_errors: u64,
    pub info_block_length: usize,
    pub interleaver_seed: u64,
    pub channel_seed: u64,
    pub constellation: ConstellationKind,
    pub d_min: u32,
    pub epsilon: f64,
    pub modes: Vec<NeighborMode>,
    pub output: Option<PathBuf>,
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_table(text: &str, origin: &str) -> Result<toml::Table> {
    text.parse::<toml::Table>()
        .map_err(|e| config_err(format!("{origin}: {e}")))
}

/// Turns `key=value` into a table entry. Values that are not valid TOML are
/// taken as strings, so `code=171 133` and `mappings=["l1"]` both work.
fn parse_override(item: &str) -> Result<(String, toml::Value)> {
    let (key, value) = item
        .split_once('=')
        .ok_or_else(|| config_err(format!("override {item:?} is not key=value")))?;
    let key = key.trim().to_string();
    let value = value.trim();
    let parsed = format!("v = {value}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(value.to_string()));
    Ok((key, parsed))
}

fn parse_rate(s: &str) -> Result<(usize, usize)> {
    let (k, n) = s
        .split_once('/')
        .ok_or_else(|| config_err(format!("code_rate {s:?} is not k/n")))?;
    let k = k.trim().parse().map_err(|_| config_err(format!("bad code_rate {s:?}")))?;
    let n = n.trim().parse().map_err(|_| config_err(format!("bad code_rate {s:?}")))?;
    Ok((k, n))
}

impl SimConfig {
    /// Reads a configuration file and applies `key=value` overrides.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let mut table = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| config_err(format!("cannot read {}: {e}", p.display())))?;
                parse_table(&text, &p.display().to_string())?
            }
            None => toml::Table::new(),
        };
        for item in overrides {
            let (k, v) = parse_override(item)?;
            table.insert(k, v);
        }
        Self::from_table(table)
    }

    pub fn from_str(text: &str) -> Result<Self> {
        Self::from_table(parse_table(text, "configuration")?)
    }

    fn from_table(table: toml::Table) -> Result<Self> {
        let raw: RawConfig = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| config_err(e.to_string()))?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawConfig) -> Result<Self> {
        let max_level = raw.max_level.unwrap_or(7);
        if max_level == 0 || !(max_level + 1).is_power_of_two() || max_level > 255 {
            return Err(config_err(format!("M = {max_level}: M + 1 must be a power of two up to 256")));
        }
        let bits = (max_level + 1).trailing_zeros();
        let code = ConvCode::from_spec(raw.code.as_deref().unwrap_or("rate23_m10"))?;
        if let Some(rate) = raw.code_rate.as_deref() {
            let (k, n) = parse_rate(rate)?;
            if k * code.n() != n * code.k() {
                return Err(config_err(format!(
                    "code_rate {rate} disagrees with code {} of rate {}/{}",
                    code.name(),
                    code.k(),
                    code.n()
                )));
            }
        }
        let mappings = raw
            .mappings
            .unwrap_or_else(|| vec![default_mapping(bits)])
            .into_iter()
            .map(|label| {
                let m = Mapping::resolve(&label).map_err(|e| config_err(format!("mapping {label:?}: {e}")))?;
                if m.bits_per_symbol() != bits {
                    return Err(config_err(format!(
                        "mapping {label:?} has {} levels, M = {max_level}",
                        m.num_levels()
                    )));
                }
                Ok((label, m))
            })
            .collect::<Result<Vec<_>>>()?;
        if mappings.is_empty() {
            return Err(config_err("no mappings given"));
        }
        let rate_factor = f64::from(bits) * code.rate();
        let snr_b_db = match (raw.snr_b_db, raw.snr_db) {
            (Some(_), Some(_)) => return Err(config_err("give either snr_b_db or snr_db, not both")),
            (Some(g), None) => g,
            (None, Some(g)) => g.into_iter().map(|s| to_db(from_db(s) / rate_factor)).collect(),
            (None, None) => return Err(config_err("an SNR grid (snr_b_db or snr_db) is required")),
        };
        if snr_b_db.is_empty() {
            return Err(config_err("the SNR grid is empty"));
        }
        if snr_b_db.iter().any(|g| !g.is_finite()) {
            return Err(config_err("the SNR grid contains a non-finite value"));
        }
        let frames = raw.frames.unwrap_or(1000);
        if frames == 0 {
            return Err(config_err("frames must be at least 1"));
        }
        let antennas = raw.antennas.unwrap_or(5);
        if antennas == 0 {
            return Err(config_err("R must be at least 1"));
        }
        let info_block_length = raw.info_block_length.unwrap_or(600);
        let epsilon = raw.epsilon.unwrap_or(4e-4);
        if !(epsilon > 0.0) {
            return Err(config_err("epsilon must be positive"));
        }
        let d_min = match raw.d_min {
            Some(d) => d,
            None => code.free_distance()?,
        };
        let modes = raw
            .modes
            .unwrap_or_else(|| vec!["FF".into(), "EFF".into()])
            .iter()
            .map(|s| s.parse().map_err(|_| config_err(format!("unknown mode {s:?}"))))
            .collect::<Result<Vec<NeighborMode>>>()?;
        Ok(Self {
            bits,
            antennas,
            code,
            mappings,
            snr_b_db,
            iterations: raw.iterations.unwrap_or(8),
            frames,
            max_bit_errors: raw.max_bit_errors.unwrap_or(0),
            info_block_length,
            interleaver_seed: raw.interleaver_seed.unwrap_or(1),
            channel_seed: raw.channel_seed.unwrap_or(2),
            constellation: raw.constellation.unwrap_or_default(),
            d_min,
            epsilon,
            modes,
            output: raw.output,
        })
    }

    pub fn max_level(&self) -> usize {
        (1 << self.bits) - 1
    }

    pub fn code_rate(&self) -> (usize, usize) {
        (self.code.k(), self.code.n())
    }

    /// Information block length used in the simulations of the original
    /// study, `6000 - nu`, rounded down so the coded block fills whole
    /// symbols.
    pub fn full_scale_block_length(&self) -> usize {
        let k = self.code.k();
        let mut len = (6000 - self.code.nu() as usize) / k * k;
        while len > k && self.code.coded_len(len).map_or(true, |c| c % self.bits as usize != 0) {
            len -= k;
        }
        len
    }
}

fn default_mapping(bits: u32) -> String {
    match bits {
        1 => "ook".into(),
        2 => "gray4".into(),
        3 => "l1".into(),
        _ => Mapping::gray(bits).map(|m| m.to_string()).unwrap_or_default(),
    }
}
