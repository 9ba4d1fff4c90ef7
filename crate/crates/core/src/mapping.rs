//! Bit-to-level labelings and their neighbor structure.
//!
//! A mapping is written as the vector `L` of decimal labels, one per level
//! `l = 0..=M`, in ascending energy order. Label bits are numbered
//! `w = 1..=m` from the left of the written label, and the rightmost bit is
//! the most significant one: bit `w` of label `x` is `(x >> (w - 1)) & 1`.
//! For example the label `4` is written `0 0 1`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{domain, Error, Result};

/// Which neighbor function defines the pairs entering the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NeighborMode {
    /// No decoder feedback: the neighbor is the index-nearest level with the
    /// complementary bit (`kappa`).
    FeedbackFree,
    /// Perfect feedback on the other label bits: the neighbor differs only in
    /// bit `w` (`varrho`).
    ErrorFreeFeedback,
}

impl NeighborMode {
    pub const BOTH: [NeighborMode; 2] = [NeighborMode::FeedbackFree, NeighborMode::ErrorFreeFeedback];

    pub fn short_name(self) -> &'static str {
        match self {
            NeighborMode::FeedbackFree => "FF",
            NeighborMode::ErrorFreeFeedback => "EFF",
        }
    }
}

impl fmt::Display for NeighborMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for NeighborMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "FF" => Ok(NeighborMode::FeedbackFree),
            "EFF" => Ok(NeighborMode::ErrorFreeFeedback),
            other => Err(domain(format!("unknown neighbor mode {other:?}"))),
        }
    }
}

/// A labeling of the `2^m` levels with distinct `m`-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mapping {
    labels: Vec<u16>,
    // level carrying each label; inverse of `labels`
    levels: Vec<u16>,
    bits: u32,
}

impl Mapping {
    /// Builds a mapping from its decimal label vector.
    pub fn new(labels: &[usize]) -> Result<Self> {
        let n = labels.len();
        if n < 2 || !n.is_power_of_two() || n > 1 << 12 {
            return Err(domain(format!(
                "mapping length must be a power of two in 2..=4096, got {n}"
            )));
        }
        let mut levels = vec![u16::MAX; n];
        for (l, &x) in labels.iter().enumerate() {
            if x >= n {
                return Err(domain(format!("label {x} out of range for {n} levels")));
            }
            if levels[x] != u16::MAX {
                return Err(domain(format!("label {x} appears twice")));
            }
            levels[x] = l as u16;
        }
        Ok(Self {
            labels: labels.iter().map(|&x| x as u16).collect(),
            levels,
            bits: n.trailing_zeros(),
        })
    }

    /// Identity labeling `[0 1 2 ... M]`.
    pub fn natural(bits: u32) -> Result<Self> {
        let n = 1usize << bits;
        Self::new(&(0..n).collect::<Vec<_>>())
    }

    /// Binary-reflected Gray labeling in the rightmost-most-significant
    /// convention, e.g. `[0 4 6 2 3 7 5 1]` for 8 levels.
    pub fn gray(bits: u32) -> Result<Self> {
        let n = 1usize << bits;
        let labels: Vec<usize> = (0..n)
            .map(|l| reverse_bits(l ^ (l >> 1), bits))
            .collect();
        Self::new(&labels)
    }

    /// Named mappings used throughout the experiments.
    ///
    /// `gray8`, `sp8`, `l1` and the `rho1`..`rho14` rows of the best-mapping
    /// table are the published vectors. `msp8` and `msew8` are the usual
    /// modified set-partitioning and minimum-squared-Euclidean-weight 8-ary
    /// labelings from the coherent BICM-ID literature.
    pub fn preset(name: &str) -> Option<Self> {
        let labels: &[usize] = match name.to_ascii_lowercase().as_str() {
            "ook" => &[0, 1],
            "gray4" | "natural4" => &[0, 2, 3, 1],
            "sp4" => &[0, 2, 1, 3],
            "gray8" => &[0, 4, 6, 2, 3, 7, 5, 1],
            "sp8" => &[0, 4, 2, 6, 1, 5, 3, 7],
            "msp8" => &[0, 1, 2, 7, 4, 5, 6, 3],
            "msew8" => &[0, 3, 5, 6, 1, 2, 4, 7],
            "l1" | "rho14" => &[0, 5, 6, 3, 4, 1, 2, 7],
            "rho1" => &[1, 3, 0, 2, 4, 6, 5, 7],
            "rho2" => &[1, 3, 0, 2, 4, 5, 6, 7],
            "rho3" => &[0, 3, 1, 2, 4, 6, 5, 7],
            "rho4" => &[0, 3, 1, 2, 4, 5, 6, 7],
            "rho5" => &[5, 1, 4, 2, 0, 3, 6, 7],
            "rho6" => &[1, 2, 0, 3, 5, 6, 4, 7],
            "rho7" => &[1, 4, 5, 6, 0, 3, 2, 7],
            "rho8" => &[4, 1, 2, 3, 0, 5, 6, 7],
            "rho9" => &[1, 4, 2, 3, 0, 5, 6, 7],
            "rho10" => &[4, 2, 1, 3, 5, 0, 6, 7],
            "rho11" => &[1, 2, 4, 3, 0, 5, 6, 7],
            "rho12" => &[0, 6, 5, 3, 1, 2, 4, 7],
            "rho13" => &[0, 6, 3, 5, 1, 2, 4, 7],
            _ => return None,
        };
        Self::new(labels).ok()
    }

    /// Resolves either a preset name or a whitespace-separated label vector.
    pub fn resolve(spec: &str) -> Result<Self> {
        match Self::preset(spec.trim()) {
            Some(m) => Ok(m),
            None => spec.parse(),
        }
    }

    pub fn labels(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.labels.iter().map(|&x| usize::from(x))
    }

    pub fn label(&self, level: usize) -> usize {
        usize::from(self.labels[level])
    }

    /// Level whose label is `label`.
    pub fn level_of(&self, label: usize) -> usize {
        usize::from(self.levels[label])
    }

    pub fn bits_per_symbol(&self) -> u32 {
        self.bits
    }

    pub fn num_levels(&self) -> usize {
        self.labels.len()
    }

    pub fn max_level(&self) -> usize {
        self.labels.len() - 1
    }

    /// Bit `w` (1-based) of the label of level `l`, unchecked beyond debug
    /// assertions.
    #[inline]
    pub fn bit(&self, l: usize, w: u32) -> u8 {
        debug_assert!(w >= 1 && w <= self.bits);
        ((self.labels[l] >> (w - 1)) & 1) as u8
    }

    /// Checked form of [`Mapping::bit`].
    pub fn label_bit(&self, l: usize, w: u32) -> Result<u8> {
        self.check_index(l, w)?;
        Ok(self.bit(l, w))
    }

    /// Level `l` and the written bits of its label.
    pub fn label_bits(&self, l: usize) -> Vec<u8> {
        (1..=self.bits).map(|w| self.bit(l, w)).collect()
    }

    fn check_index(&self, l: usize, w: u32) -> Result<()> {
        if l > self.max_level() || w == 0 || w > self.bits {
            return Err(domain(format!(
                "(l, w) = ({l}, {w}) outside 0..={} x 1..={}",
                self.max_level(),
                self.bits
            )));
        }
        Ok(())
    }

    /// Levels whose bit `w` equals `b`.
    pub fn subset(&self, w: u32, b: u8) -> Vec<usize> {
        (0..self.num_levels()).filter(|&l| self.bit(l, w) == b).collect()
    }

    /// Index-nearest level whose bit `w` differs from that of level `l`.
    /// Equidistant candidates resolve to the upper one for even `l` and the
    /// lower one for odd `l`.
    pub fn kappa(&self, l: usize, w: u32) -> usize {
        let b = self.bit(l, w);
        let n = self.num_levels();
        for dist in 1..n {
            let below = dist <= l && self.bit(l - dist, w) != b;
            let above = l + dist < n && self.bit(l + dist, w) != b;
            match (below, above) {
                // ties go to the partner side of the pair {2k, 2k + 1}
                (true, true) => return if l % 2 == 0 { l + dist } else { l - dist },
                (true, false) => return l - dist,
                (false, true) => return l + dist,
                (false, false) => {}
            }
        }
        unreachable!("every bit position takes both values")
    }

    /// Level whose label differs from that of level `l` only in bit `w`.
    pub fn varrho(&self, l: usize, w: u32) -> usize {
        self.level_of(self.label(l) ^ (1 << (w - 1)))
    }

    pub fn neighbor(&self, mode: NeighborMode, l: usize, w: u32) -> usize {
        match mode {
            NeighborMode::FeedbackFree => self.kappa(l, w),
            NeighborMode::ErrorFreeFeedback => self.varrho(l, w),
        }
    }

    /// Counts `N_j` of `(l, w)` pairs at index distance `j` from their neighbor.
    pub fn neighbor_profile(&self, mode: NeighborMode) -> NeighborProfile {
        let mut counts = vec![0u32; self.max_level()];
        for l in 0..self.num_levels() {
            for w in 1..=self.bits {
                let j = l.abs_diff(self.neighbor(mode, l, w));
                counts[j - 1] += 1;
            }
        }
        NeighborProfile { mode, counts }
    }

    /// Smallest occupied neighbor distance.
    pub fn n1(&self, mode: NeighborMode) -> usize {
        self.neighbor_profile(mode).n1()
    }

    /// The mapping with its level order reversed (`l -> M - l`).
    pub fn reversed(&self) -> Self {
        let labels: Vec<usize> = self.labels().rev().collect();
        Self::new(&labels).expect("reversal preserves the permutation")
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.labels.iter().join(" "))
    }
}

impl FromStr for Mapping {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| domain(format!("bad label {t:?} in mapping {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&labels)
    }
}

fn reverse_bits(x: usize, bits: u32) -> usize {
    (0..bits).fold(0, |acc, i| acc | (((x >> i) & 1) << (bits - 1 - i)))
}

/// Neighbor-distance distribution `N_1..N_M` of one mapping in one mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NeighborProfile {
    pub mode: NeighborMode,
    counts: Vec<u32>,
}

impl NeighborProfile {
    pub fn new(mode: NeighborMode, counts: Vec<u32>) -> Self {
        Self { mode, counts }
    }

    /// `N_1, ..., N_M`.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// `N_j` for `j` in `1..=M`.
    pub fn count(&self, j: usize) -> u32 {
        self.counts[j - 1]
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Occupied distances `n_1 < ... < n_K`.
    pub fn occupied(&self) -> Vec<usize> {
        (1..=self.counts.len()).filter(|&j| self.count(j) > 0).collect()
    }

    pub fn n1(&self) -> usize {
        self.counts
            .iter()
            .position(|&c| c > 0)
            .map(|i| i + 1)
            .expect("profile of a valid mapping is never empty")
    }

    /// `N_{n_1}`.
    pub fn n1_count(&self) -> u32 {
        self.count(self.n1())
    }
}

/// All `(2^m)!` labelings in lexicographic order of their label vectors.
///
/// Only `m <= 3` is accepted; 16! labelings cannot be enumerated.
pub fn enumerate_mappings(bits: u32) -> Result<impl Iterator<Item = Mapping>> {
    if bits == 0 || bits > 3 {
        return Err(Error::Infeasible(format!(
            "exhaustive enumeration supports 1 to 3 bits per symbol, got {bits}"
        )));
    }
    let n = 1usize << bits;
    Ok((0..n)
        .permutations(n)
        .map(|p| Mapping::new(&p).expect("permutation is a valid mapping")))
}
