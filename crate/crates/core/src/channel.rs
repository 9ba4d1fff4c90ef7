//! I.i.d. Rayleigh fading with `R` receive antennas and complex AWGN.
//!
//! The receiver only needs the energy statistic `T_v = sum_a |y_{v,a}|^2`;
//! given level `q`, `T_v` is Gamma distributed with shape `R` and scale
//! equal to the level variance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::constellation::Constellation;
use crate::error::{domain, Error, Result};

/// Independent random stream for frame `frame` of a run keyed by `seed`.
pub fn frame_rng(seed: u64, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(frame);
    rng
}

/// Energy statistics of one received frame.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelOutput {
    pub energies: Vec<f64>,
    pub antennas: usize,
    pub n0: f64,
}

// CN(0, var) sample as (re, im)
fn complex_normal<G: Rng + ?Sized>(rng: &mut G, var: f64) -> (f64, f64) {
    let s = (var / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    (s * re, s * im)
}

fn check_levels(levels: &[usize], constellation: &Constellation, antennas: usize) -> Result<()> {
    if antennas == 0 {
        return Err(domain("at least one receive antenna is required"));
    }
    if let Some(&q) = levels.iter().find(|&&q| q > constellation.max_level()) {
        return Err(domain(format!(
            "level {q} exceeds the constellation's maximum {}",
            constellation.max_level()
        )));
    }
    Ok(())
}

/// Raw received samples `y[v][a] = h * sqrt(p_q) + n`.
pub fn transmit_samples<G: Rng + ?Sized>(
    levels: &[usize],
    constellation: &Constellation,
    antennas: usize,
    rng: &mut G,
) -> Result<Vec<Vec<(f64, f64)>>> {
    check_levels(levels, constellation, antennas)?;
    let n0 = constellation.n0();
    let amps = constellation.amplitudes();
    Ok(levels
        .iter()
        .map(|&q| {
            (0..antennas)
                .map(|_| {
                    let h = complex_normal(rng, 1.0);
                    let n = complex_normal(rng, n0);
                    (h.0 * amps[q] + n.0, h.1 * amps[q] + n.1)
                })
                .collect()
        })
        .collect())
}

/// Collapses raw samples to the energy statistic.
pub fn energy_statistic(samples: &[Vec<(f64, f64)>], n0: f64) -> ChannelOutput {
    ChannelOutput {
        energies: samples
            .iter()
            .map(|row| row.iter().map(|(re, im)| re * re + im * im).sum())
            .collect(),
        antennas: samples.first().map_or(0, Vec::len),
        n0,
    }
}

/// Sends a level sequence through the channel.
pub fn transmit<G: Rng + ?Sized>(
    levels: &[usize],
    constellation: &Constellation,
    antennas: usize,
    rng: &mut G,
) -> Result<ChannelOutput> {
    check_levels(levels, constellation, antennas)?;
    let n0 = constellation.n0();
    let amps = constellation.amplitudes();
    let energies = levels
        .iter()
        .map(|&q| {
            (0..antennas)
                .map(|_| {
                    let h = complex_normal(rng, 1.0);
                    let n = complex_normal(rng, n0);
                    let re = h.0 * amps[q] + n.0;
                    let im = h.1 * amps[q] + n.1;
                    re * re + im * im
                })
                .sum()
        })
        .collect();
    Ok(ChannelOutput { energies, antennas, n0 })
}

/// Monte-Carlo pairwise error probability with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PepEstimate {
    pub probability: f64,
    pub std_error: f64,
    pub trials: u64,
}

/// Probability that the energy detector prefers `decided` over the sent
/// sequence `sent`: with `|Z|^2` unit exponentials and variances `s_q`,
/// `sum_{v,a} (1 - s_q/s_qhat) |Z|^2 > R sum_v ln(s_qhat/s_q)`.
pub fn pairwise_error_trial(
    sent: &[usize],
    decided: &[usize],
    constellation: &Constellation,
    antennas: usize,
    trials: u64,
    seed: u64,
) -> Result<PepEstimate> {
    if trials == 0 {
        return Err(domain("pairwise error trial needs at least one trial"));
    }
    if sent.len() != decided.len() {
        return Err(Error::Dimension(format!(
            "sequences of length {} and {}",
            sent.len(),
            decided.len()
        )));
    }
    check_levels(sent, constellation, antennas)?;
    check_levels(decided, constellation, antennas)?;
    let var = constellation.variances();
    let terms: Vec<(f64, f64)> = sent
        .iter()
        .zip(decided)
        .filter(|(q, qh)| q != qh)
        .map(|(&q, &qh)| (1.0 - var[q] / var[qh], (var[qh] / var[q]).ln()))
        .collect();
    let threshold = antennas as f64 * terms.iter().map(|t| t.1).sum::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..trials {
        let mut lhs = 0.0;
        for &(coef, _) in &terms {
            for _ in 0..antennas {
                let z: f64 = rng.sample(Exp1);
                lhs += coef * z;
            }
        }
        if lhs > threshold {
            hits += 1;
        }
    }
    let p = hits as f64 / trials as f64;
    Ok(PepEstimate {
        probability: p,
        std_error: (p * (1.0 - p) / trials as f64).sqrt(),
        trials,
    })
}
