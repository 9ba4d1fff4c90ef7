//! Soft-output energy demodulator.
//!
//! With `R` antennas the likelihood of level `l` given the energy `T` is
//! proportional to `exp(-T / s_l) / s_l^R`, where `s_l = p_l + N0`. All
//! sums over levels run in the log domain after subtracting the maximum.

use crate::channel::ChannelOutput;
use crate::codec::{SoftBit, PRIOR_FLOOR};
use crate::constellation::Constellation;
use crate::error::{domain, Error, Result};
use crate::mapping::Mapping;

/// Smallest probability handed on to the decoder.
pub const OUTPUT_FLOOR: f64 = 1e-12;

/// 1-based bit position `k` to (symbol `v`, label bit `w`), both 1-based.
pub fn bit_index_split(k: usize, bits_per_symbol: u32, coded_len: usize) -> Result<(usize, u32)> {
    if k == 0 || k > coded_len {
        return Err(domain(format!("bit position {k} outside 1..={coded_len}")));
    }
    let m = bits_per_symbol as usize;
    Ok(((k - 1) / m + 1, ((k - 1) % m) as u32 + 1))
}

/// Coded bits grouped per symbol into level indices.
pub fn bits_to_levels(bits: &[u8], mapping: &Mapping) -> Result<Vec<usize>> {
    let m = mapping.bits_per_symbol() as usize;
    if bits.len() % m != 0 {
        return Err(Error::Dimension(format!(
            "{} coded bits do not fill whole {m}-bit symbols",
            bits.len()
        )));
    }
    Ok(bits
        .chunks(m)
        .map(|chunk| {
            let label = chunk
                .iter()
                .enumerate()
                .fold(0usize, |acc, (i, &b)| acc | (usize::from(b) << i));
            mapping.level_of(label)
        })
        .collect())
}

/// Per-constellation demodulation tables.
#[derive(Clone, Debug)]
pub struct DemodContext {
    mapping: Mapping,
    antennas: usize,
    variances: Vec<f64>,
    inv_var: Vec<f64>,
    log_norm: Vec<f64>,
}

impl DemodContext {
    pub fn new(constellation: &Constellation, mapping: &Mapping, antennas: usize) -> Result<Self> {
        if constellation.num_points() != mapping.num_levels() {
            return Err(Error::Dimension(format!(
                "{} constellation points but {} labels",
                constellation.num_points(),
                mapping.num_levels()
            )));
        }
        if antennas == 0 {
            return Err(domain("at least one receive antenna is required"));
        }
        let variances = constellation.variances();
        Ok(Self {
            mapping: mapping.clone(),
            antennas,
            inv_var: variances.iter().map(|s| 1.0 / s).collect(),
            log_norm: variances.iter().map(|s| antennas as f64 * s.ln()).collect(),
            variances,
        })
    }

    pub fn mapping(&self) -> &Mapping {
        &self.mapping
    }

    pub fn antennas(&self) -> usize {
        self.antennas
    }

    pub fn variances(&self) -> &[f64] {
        &self.variances
    }

    /// `-T / s_l - R ln s_l` for every level.
    pub fn symbol_loglikelihoods(&self, energy: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.variances.len()];
        self.fill_loglikelihoods(energy, &mut out);
        out
    }

    #[inline]
    fn fill_loglikelihoods(&self, energy: f64, out: &mut [f64]) {
        for (l, slot) in out.iter_mut().enumerate() {
            *slot = -energy * self.inv_var[l] - self.log_norm[l];
        }
    }

    fn check(&self, output: &ChannelOutput) -> Result<()> {
        if output.antennas != self.antennas {
            return Err(Error::Dimension(format!(
                "channel output from {} antennas, demodulator built for {}",
                output.antennas, self.antennas
            )));
        }
        if let Some(t) = output.energies.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
            return Err(domain(format!("energy statistic {t} is not a finite nonnegative value")));
        }
        Ok(())
    }

    /// Bit probabilities without decoder feedback.
    pub fn first_pass(&self, output: &ChannelOutput) -> Result<Vec<SoftBit>> {
        self.check(output)?;
        let m = self.mapping.bits_per_symbol();
        let levels = self.mapping.num_levels();
        let mut ll = vec![0.0; levels];
        let mut out = Vec::with_capacity(output.energies.len() * m as usize);
        for &t in &output.energies {
            self.fill_loglikelihoods(t, &mut ll);
            let peak = ll.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            for w in 1..=m {
                let mut p = [0.0; 2];
                for (l, &x) in ll.iter().enumerate() {
                    p[usize::from(self.mapping.bit(l, w))] += (x - peak).exp();
                }
                out.push(finish(p));
            }
        }
        Ok(out)
    }

    /// Extrinsic bit probabilities given priors on every coded bit in
    /// channel order. The prior of the bit being computed is left out.
    pub fn with_priors(&self, output: &ChannelOutput, priors: &[SoftBit]) -> Result<Vec<SoftBit>> {
        self.check(output)?;
        let m = self.mapping.bits_per_symbol() as usize;
        if priors.len() != output.energies.len() * m {
            return Err(Error::Dimension(format!(
                "{} priors for {} symbols of {m} bits",
                priors.len(),
                output.energies.len()
            )));
        }
        let levels = self.mapping.num_levels();
        let mut ll = vec![0.0; levels];
        let mut own = vec![0.0; levels * m];
        let mut out = Vec::with_capacity(priors.len());
        for (v, &t) in output.energies.iter().enumerate() {
            let lp: Vec<[f64; 2]> = priors[v * m..(v + 1) * m]
                .iter()
                .map(|p| [p[0].max(PRIOR_FLOOR).ln(), p[1].max(PRIOR_FLOOR).ln()])
                .collect();
            self.fill_loglikelihoods(t, &mut ll);
            for l in 0..levels {
                let mut total = ll[l];
                for w in 0..m {
                    let b = usize::from(self.mapping.bit(l, w as u32 + 1));
                    own[l * m + w] = lp[w][b];
                    total += lp[w][b];
                }
                ll[l] = total;
            }
            for w in 0..m {
                let peak = (0..levels)
                    .map(|l| ll[l] - own[l * m + w])
                    .fold(f64::NEG_INFINITY, f64::max);
                let mut p = [0.0; 2];
                for l in 0..levels {
                    let b = usize::from(self.mapping.bit(l, w as u32 + 1));
                    p[b] += (ll[l] - own[l * m + w] - peak).exp();
                }
                out.push(finish(p));
            }
        }
        Ok(out)
    }
}

fn finish(p: [f64; 2]) -> SoftBit {
    let s = p[0] + p[1];
    let a = (p[0] / s).max(OUTPUT_FLOOR);
    let b = (p[1] / s).max(OUTPUT_FLOOR);
    [a / (a + b), b / (a + b)]
}
