//! Exhaustive search for labelings that trade feedback-free against
//! error-free-feedback performance.
//!
//! Every labeling is scored by `log10 delta^{d_min}` in both neighbor
//! modes. Labelings are stably sorted by the feedback-free score (ties keep
//! lexicographic order), cut greedily into runs whose feedback-free scores
//! span at most `epsilon` decades, and the run member with the lowest
//! feedback score represents the run. A representative is retained when its
//! feedback score improves on the last retained one.

use std::collections::HashMap;

use crate::analysis::{delta_from_profile, ring_ratio_at};
use crate::error::{domain, Result};
use crate::mapping::{enumerate_mappings, Mapping, NeighborMode, NeighborProfile};

#[derive(Clone, Debug, PartialEq)]
pub struct SearchParams {
    pub gamma_b_db: f64,
    pub antennas: usize,
    pub d_min: u32,
    pub bits: u32,
    pub epsilon: f64,
    /// `(k_c, n_c)` of the code, fixing the symbol SNR.
    pub code_rate: (usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BestMapping {
    /// 1-based rank in the retained list.
    pub rho: usize,
    pub mapping: Mapping,
    pub delta_kappa_log10: f64,
    pub delta_rho_log10: f64,
    /// 1-based index of the partition this entry represents.
    pub partition: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub params: SearchParams,
    pub best: Vec<BestMapping>,
    /// Size of every partition in sorted order.
    pub partition_sizes: Vec<usize>,
}

/// Partition diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub sizes: Vec<usize>,
    pub count: usize,
    pub total: usize,
}

/// Neighbor profiles of every labeling, computed once and reused across SNRs.
#[derive(Clone, Debug)]
pub struct ProfileTable {
    bits: u32,
    mappings: Vec<Mapping>,
    // per mapping: indices into `profiles` for FF and EFF
    keys: Vec<(u32, u32)>,
    profiles: Vec<NeighborProfile>,
}

impl ProfileTable {
    pub fn build(bits: u32) -> Result<Self> {
        let mappings: Vec<Mapping> = enumerate_mappings(bits)?.collect();
        let mut index: HashMap<(NeighborMode, Vec<u32>), u32> = HashMap::new();
        let mut profiles = Vec::new();
        let mut intern = |p: NeighborProfile| {
            *index.entry((p.mode, p.counts().to_vec())).or_insert_with(|| {
                profiles.push(p);
                profiles.len() as u32 - 1
            })
        };
        let keys = mappings
            .iter()
            .map(|m| {
                (
                    intern(m.neighbor_profile(NeighborMode::FeedbackFree)),
                    intern(m.neighbor_profile(NeighborMode::ErrorFreeFeedback)),
                )
            })
            .collect();
        Ok(Self { bits, mappings, keys, profiles })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.mappings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mappings.is_empty()
    }

    pub fn distinct_profiles(&self) -> usize {
        self.profiles.len()
    }

    /// Runs the selection at one operating point.
    pub fn search(&self, params: &SearchParams) -> Result<SearchResult> {
        if params.bits != self.bits {
            return Err(domain(format!(
                "table holds {}-bit labelings, search asked for {}",
                self.bits, params.bits
            )));
        }
        if !(params.epsilon > 0.0) {
            return Err(domain(format!("epsilon must be positive, got {}", params.epsilon)));
        }
        let r = ring_ratio_at(params.gamma_b_db, params.bits, params.code_rate)?;
        let d = f64::from(params.d_min);
        let scores: Vec<f64> = self
            .profiles
            .iter()
            .map(|p| Ok(d * delta_from_profile(p, r, params.antennas)?.log10()))
            .collect::<Result<_>>()?;
        let kappa: Vec<f64> = self.keys.iter().map(|k| scores[k.0 as usize]).collect();
        let varrho: Vec<f64> = self.keys.iter().map(|k| scores[k.1 as usize]).collect();

        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| kappa[a].total_cmp(&kappa[b]));

        let mut best: Vec<BestMapping> = Vec::new();
        let mut partition_sizes = Vec::new();
        let mut start = 0;
        while start < order.len() {
            let head = kappa[order[start]];
            let mut end = start + 1;
            while end < order.len() && kappa[order[end]] - head <= params.epsilon {
                end += 1;
            }
            partition_sizes.push(end - start);
            let winner = (start..end)
                .min_by(|&a, &b| varrho[order[a]].total_cmp(&varrho[order[b]]))
                .map(|i| order[i])
                .expect("partition is non-empty");
            let improves = best
                .last()
                .is_none_or(|last| varrho[winner] < last.delta_rho_log10);
            if improves {
                best.push(BestMapping {
                    rho: best.len() + 1,
                    mapping: self.mappings[winner].clone(),
                    delta_kappa_log10: kappa[winner],
                    delta_rho_log10: varrho[winner],
                    partition: partition_sizes.len(),
                });
            }
            start = end;
        }
        Ok(SearchResult { params: params.clone(), best, partition_sizes })
    }
}

/// Builds the profile table and runs one search.
pub fn search_best_mappings(params: &SearchParams) -> Result<SearchResult> {
    ProfileTable::build(params.bits)?.search(params)
}

pub fn partition_report(result: &SearchResult) -> PartitionReport {
    PartitionReport {
        sizes: result.partition_sizes.clone(),
        count: result.partition_sizes.len(),
        total: result.partition_sizes.iter().sum(),
    }
}
