//! Transmitter chain and the iterative demodulate/decode loop.

use rand::Rng;

use crate::channel::{transmit, ChannelOutput};
use crate::codec::{hard_decisions, ConvCode, SoftBit};
use crate::constellation::Constellation;
use crate::demod::{bits_to_levels, DemodContext};
use crate::error::{Error, Result};
use crate::interleave::Permutation;

/// Outcome of one received frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationTrace {
    /// Information-bit errors after each pass; index 0 is the pass without
    /// feedback.
    pub errors: Vec<usize>,
    /// Decisions after the last pass.
    pub decisions: Vec<u8>,
    pub iterations: usize,
}

/// Everything fixed across frames of one link.
#[derive(Clone, Debug)]
pub struct Link {
    pub code: ConvCode,
    pub constellation: Constellation,
    pub demod: DemodContext,
    pub interleaver: Permutation,
    pub info_len: usize,
}

impl Link {
    pub fn new(
        code: ConvCode,
        constellation: Constellation,
        demod: DemodContext,
        interleaver_seed: u64,
        info_len: usize,
    ) -> Result<Self> {
        let coded = code.coded_len(info_len)?;
        let m = constellation.bits_per_symbol() as usize;
        if coded % m != 0 {
            return Err(Error::Config(format!(
                "coded length {coded} is not a multiple of {m} bits per symbol; \
                 adjust the information block length"
            )));
        }
        let interleaver = Permutation::random(interleaver_seed, coded)?;
        Ok(Self { code, constellation, demod, interleaver, info_len })
    }

    pub fn coded_len(&self) -> usize {
        self.interleaver.len()
    }

    pub fn symbols(&self) -> usize {
        self.coded_len() / self.constellation.bits_per_symbol() as usize
    }

    /// Encodes, interleaves and maps `info` to levels.
    pub fn modulate(&self, info: &[u8]) -> Result<Vec<usize>> {
        let coded = self.code.encode(info)?;
        let channel_order = self.interleaver.apply(&coded)?;
        bits_to_levels(&channel_order, self.demod.mapping())
    }

    /// Random information word, its channel output and the receiver trace.
    pub fn simulate_frame<G: Rng + ?Sized>(&self, iterations: usize, rng: &mut G) -> Result<IterationTrace> {
        let info: Vec<u8> = (0..self.info_len).map(|_| rng.random_range(0..2u8)).collect();
        let levels = self.modulate(&info)?;
        let output = transmit(&levels, &self.constellation, self.demod.antennas(), rng)?;
        run_receiver(self, &output, iterations, &info)
    }
}

/// Runs the feedback-free pass and `iterations` feedback passes, counting
/// information-bit errors against `truth` after each.
pub fn run_receiver(
    link: &Link,
    output: &ChannelOutput,
    iterations: usize,
    truth: &[u8],
) -> Result<IterationTrace> {
    if output.energies.len() != link.symbols() {
        return Err(Error::Dimension(format!(
            "{} received symbols, link expects {}",
            output.energies.len(),
            link.symbols()
        )));
    }
    if truth.len() != link.info_len {
        return Err(Error::Dimension(format!(
            "{} reference bits, link carries {}",
            truth.len(),
            link.info_len
        )));
    }
    let count = |post: &[SoftBit]| {
        hard_decisions(post)
            .iter()
            .zip(truth)
            .filter(|(a, b)| a != b)
            .count()
    };
    let mut errors = Vec::with_capacity(iterations + 1);
    let mut demod_out = link.demod.first_pass(output)?;
    let mut posterior;
    let mut iter = 0;
    loop {
        let code_order = link.interleaver.invert(&demod_out)?;
        let (extrinsic, post) = link.code.siso_decode(&code_order, link.info_len)?;
        errors.push(count(&post));
        posterior = post;
        if iter == iterations {
            break;
        }
        iter += 1;
        let priors = link.interleaver.apply(&extrinsic)?;
        demod_out = link.demod.with_priors(output, &priors)?;
    }
    Ok(IterationTrace {
        errors,
        decisions: hard_decisions(&posterior),
        iterations,
    })
}
