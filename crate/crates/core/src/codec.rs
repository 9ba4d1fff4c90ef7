//! Feedforward convolutional codes: terminated encoding, distance
//! properties and BCJR soft-input soft-output decoding.
//!
//! A code with `k` inputs and `n` outputs keeps one shift register of
//! length `m_i` per input. Generators are written in octal; bit `d` of a
//! generator (counting from the least significant bit) taps the register
//! cell at delay `m_i - d`, so the most significant bit is the current
//! input. `(7, 5)` is therefore `1 + D + D^2, 1 + D^2`.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;

use crate::error::{domain, Error, Result};

/// `(P(bit = 0), P(bit = 1))` for one bit position.
pub type SoftBit = [f64; 2];

/// Smallest probability allowed into a trellis product.
pub const PRIOR_FLOOR: f64 = 1e-300;

/// A feedforward convolutional code with its trellis tables.
#[derive(Clone, Debug)]
pub struct ConvCode {
    name: String,
    n: usize,
    k: usize,
    memories: Vec<u32>,
    // generators[i][j]: input i to output j
    generators: Vec<Vec<u32>>,
    nu: u32,
    // indexed by state * 2^k + input
    next: Vec<u32>,
    output: Vec<u8>,
    // indexed by state * 2^k + j: the j-th predecessor and its output; all
    // predecessors of a state share the input `entry_input[state]`
    prev: Vec<u32>,
    prev_output: Vec<u8>,
    entry_input: Vec<u8>,
    // every edge as (state, next state), grouped by (input, output pattern);
    // group g spans group_start[g]..group_start[g + 1]
    grouped: Vec<(u32, u32)>,
    group_start: Vec<usize>,
}

impl ConvCode {
    /// Builds a code from its generator matrix, one row per input.
    pub fn new(name: impl Into<String>, generators: Vec<Vec<u32>>) -> Result<Self> {
        let k = generators.len();
        if k == 0 || k > 4 {
            return Err(domain(format!("number of inputs must be 1..=4, got {k}")));
        }
        let n = generators[0].len();
        if n <= k || n > 8 || generators.iter().any(|row| row.len() != n) {
            return Err(domain(
                "generator rows must have equal length n with k < n <= 8",
            ));
        }
        let memories: Vec<u32> = generators
            .iter()
            .map(|row| {
                let top = row.iter().copied().max().unwrap_or(0);
                if top == 0 {
                    Err(domain("a generator row is all zero"))
                } else {
                    Ok(31 - top.leading_zeros())
                }
            })
            .collect::<Result<_>>()?;
        let nu: u32 = memories.iter().sum();
        if nu > 16 {
            return Err(Error::Infeasible(format!("total memory {nu} exceeds 16")));
        }
        let mut code = Self {
            name: name.into(),
            n,
            k,
            memories,
            generators,
            nu,
            next: Vec::new(),
            output: Vec::new(),
            prev: Vec::new(),
            prev_output: Vec::new(),
            entry_input: Vec::new(),
            grouped: Vec::new(),
            group_start: Vec::new(),
        };
        code.build_trellis();
        Ok(code)
    }

    /// Memory-6 rate-1/2 code with generators `(171, 133)`, free distance 10.
    pub fn rate12_m6() -> Self {
        Self::new("rate12_m6", vec![vec![0o171, 0o133]]).expect("valid built-in code")
    }

    /// Rate-2/3 code with two memory-5 registers (1024 states), free distance 10.
    pub fn rate23_m10() -> Self {
        Self::new(
            "rate23_m10",
            vec![vec![0o63, 0o15, 0o46], vec![0o32, 0o65, 0o61]],
        )
        .expect("valid built-in code")
    }

    /// Looks up a named code or parses an octal generator matrix: rows
    /// separated by `;`, entries by whitespace or commas, e.g. `"171 133"`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "rate12_m6" => return Ok(Self::rate12_m6()),
            "rate23_m10" => return Ok(Self::rate23_m10()),
            _ => {}
        }
        let rows = spec
            .split(';')
            .map(|row| {
                row.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        u32::from_str_radix(t, 8)
                            .map_err(|_| Error::Config(format!("bad octal generator {t:?}")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec, rows).map_err(|e| Error::Config(format!("code {spec:?}: {e}")))
    }

    fn build_trellis(&mut self) {
        let states = self.num_states();
        let inputs = self.num_inputs();
        self.next = vec![0; states * inputs];
        self.output = vec![0; states * inputs];
        for s in 0..states {
            for u in 0..inputs {
                let (ns, out) = self.step(s as u32, u as u32);
                self.next[s * inputs + u] = ns;
                self.output[s * inputs + u] = out;
            }
        }
        self.prev = vec![0; states * inputs];
        self.prev_output = vec![0; states * inputs];
        self.entry_input = vec![0; states];
        let mut fill = vec![0usize; states];
        for s in 0..states {
            for u in 0..inputs {
                let e = s * inputs + u;
                let ns = self.next[e] as usize;
                let slot = ns * inputs + fill[ns];
                self.prev[slot] = s as u32;
                self.prev_output[slot] = self.output[e];
                self.entry_input[ns] = u as u8;
                fill[ns] += 1;
            }
        }
        debug_assert!(fill.iter().all(|&f| f == inputs));

        let patterns = 1usize << self.n;
        let mut keyed: Vec<(usize, u32, u32)> = (0..states * inputs)
            .map(|e| (e % inputs * patterns + usize::from(self.output[e]), (e / inputs) as u32, self.next[e]))
            .collect();
        keyed.sort_unstable();
        self.group_start = vec![0; inputs * patterns + 1];
        for &(g, _, _) in &keyed {
            self.group_start[g + 1] += 1;
        }
        for g in 0..inputs * patterns {
            self.group_start[g + 1] += self.group_start[g];
        }
        self.grouped = keyed.into_iter().map(|(_, s, ns)| (s, ns)).collect();
    }

    // Register i occupies bits offset_i..offset_i + m_i of the state, with
    // the most recent input at the top.
    fn step(&self, state: u32, input: u32) -> (u32, u8) {
        let mut out = 0u8;
        let mut next = 0u32;
        let mut offset = 0;
        let mut windows = Vec::with_capacity(self.k);
        for (i, &m) in self.memories.iter().enumerate() {
            let reg = (state >> offset) & ((1 << m) - 1);
            let window = (((input >> i) & 1) << m) | reg;
            windows.push(window);
            next |= (window >> 1) << offset;
            offset += m;
        }
        for j in 0..self.n {
            let parity = (0..self.k)
                .map(|i| (self.generators[i][j] & windows[i]).count_ones())
                .sum::<u32>()
                & 1;
            out |= (parity as u8) << j;
        }
        (next, out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Outputs per trellis step.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Inputs per trellis step.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Total memory, `log2` of the number of states.
    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn memories(&self) -> &[u32] {
        &self.memories
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn num_states(&self) -> usize {
        1 << self.nu
    }

    pub fn num_inputs(&self) -> usize {
        1 << self.k
    }

    /// Next state and packed output bits (bit `j` is output `j`).
    #[inline]
    pub fn edge(&self, state: usize, input: usize) -> (usize, u8) {
        let e = state * self.num_inputs() + input;
        (self.next[e] as usize, self.output[e])
    }

    /// Zero-input steps that flush every register.
    pub fn termination_steps(&self) -> usize {
        *self.memories.iter().max().expect("at least one input") as usize
    }

    /// Number of appended zero bits, `k * max(m_i)`; equals `nu` for
    /// registers of equal length.
    pub fn termination_bits(&self) -> usize {
        self.k * self.termination_steps()
    }

    fn check_info_len(&self, info_len: usize) -> Result<()> {
        if info_len == 0 || info_len % self.k != 0 {
            return Err(Error::Config(format!(
                "information block length {info_len} must be a positive multiple of {}",
                self.k
            )));
        }
        Ok(())
    }

    /// Trellis steps spanned by a terminated block.
    pub fn num_steps(&self, info_len: usize) -> Result<usize> {
        self.check_info_len(info_len)?;
        Ok(info_len / self.k + self.termination_steps())
    }

    /// Coded length `n (L_I + termination bits) / k`.
    pub fn coded_len(&self, info_len: usize) -> Result<usize> {
        Ok(self.n * self.num_steps(info_len)?)
    }

    /// Encodes `info` and the zero tail that returns the encoder to state 0.
    pub fn encode(&self, info: &[u8]) -> Result<Vec<u8>> {
        let steps = self.num_steps(info.len())?;
        let mut out = Vec::with_capacity(steps * self.n);
        let mut state = 0usize;
        for t in 0..steps {
            let mut u = 0usize;
            if t * self.k < info.len() {
                for i in 0..self.k {
                    match info[t * self.k + i] {
                        0 => {}
                        1 => u |= 1 << i,
                        b => return Err(domain(format!("information bit {b} is not binary"))),
                    }
                }
            }
            let (ns, bits) = self.edge(state, u);
            out.extend((0..self.n).map(|j| (bits >> j) & 1));
            state = ns;
        }
        debug_assert_eq!(state, 0);
        Ok(out)
    }

    /// True if some cycle avoiding state 0 produces only zero outputs.
    pub fn is_catastrophic(&self) -> bool {
        let states = self.num_states();
        // 0 unvisited, 1 on stack, 2 done
        let mut mark = vec![0u8; states];
        for root in 1..states {
            if mark[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            mark[root] = 1;
            while let Some(&mut (s, ref mut u)) = stack.last_mut() {
                if *u == self.num_inputs() {
                    mark[s] = 2;
                    stack.pop();
                    continue;
                }
                let (ns, out) = self.edge(s, *u);
                *u += 1;
                if out != 0 || ns == 0 {
                    continue;
                }
                match mark[ns] {
                    0 => {
                        mark[ns] = 1;
                        stack.push((ns, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            }
        }
        false
    }

    /// Minimum output weight over paths that leave state 0 and return to it.
    pub fn free_distance(&self) -> Result<u32> {
        if self.is_catastrophic() {
            return Err(Error::Numerical(format!(
                "code {} is catastrophic; free distance is not defined",
                self.name
            )));
        }
        let states = self.num_states();
        let mut dist = vec![u32::MAX; states];
        let mut heap = BinaryHeap::new();
        for u in 1..self.num_inputs() {
            let (ns, out) = self.edge(0, u);
            let w = out.count_ones();
            if ns == 0 {
                heap.push(Reverse((w, 0usize, true)));
            } else if w < dist[ns] {
                dist[ns] = w;
                heap.push(Reverse((w, ns, false)));
            }
        }
        let mut pops = 0usize;
        while let Some(Reverse((w, s, returned))) = heap.pop() {
            if returned {
                return Ok(w);
            }
            pops += 1;
            if pops > 64 * states * self.num_inputs() {
                break;
            }
            if w > dist[s] {
                continue;
            }
            for u in 0..self.num_inputs() {
                let (ns, out) = self.edge(s, u);
                let nw = w + out.count_ones();
                if ns == 0 {
                    heap.push(Reverse((nw, 0, true)));
                } else if nw < dist[ns] {
                    dist[ns] = nw;
                    heap.push(Reverse((nw, ns, false)));
                }
            }
        }
        Err(Error::Numerical(format!(
            "free-distance search for {} exceeded its budget",
            self.name
        )))
    }

    /// Information-weight spectrum: entry `d` is the summed input weight of
    /// all first-return error events of output weight `d`, for `d <= d_max`.
    pub fn weight_spectrum(&self, d_max: u32) -> Result<Vec<f64>> {
        if self.is_catastrophic() {
            return Err(Error::Numerical(format!(
                "code {} is catastrophic; its spectrum diverges",
                self.name
            )));
        }
        let states = self.num_states();
        let width = d_max as usize + 1;
        // paths[s * width + d] = (number of paths, summed input weight)
        let mut paths = vec![(0f64, 0f64); states * width];
        let mut spectrum = vec![0f64; width];
        let mut seed = |ns: usize, d: usize, iw: f64, paths: &mut Vec<(f64, f64)>| {
            if d > d_max as usize {
                return;
            }
            if ns == 0 {
                spectrum[d] += iw;
            } else {
                let cell = &mut paths[ns * width + d];
                cell.0 += 1.0;
                cell.1 += iw;
            }
        };
        for u in 1..self.num_inputs() {
            let (ns, out) = self.edge(0, u);
            seed(ns, out.count_ones() as usize, f64::from(u.count_ones()), &mut paths);
        }
        let limit = (d_max as usize + 2) * states + 64;
        for _ in 0..limit {
            let mut fresh = vec![(0f64, 0f64); states * width];
            let mut alive = false;
            for s in 1..states {
                for d in 0..width {
                    let (count, iw) = paths[s * width + d];
                    if count == 0.0 {
                        continue;
                    }
                    for u in 0..self.num_inputs() {
                        let (ns, out) = self.edge(s, u);
                        let nd = d + out.count_ones() as usize;
                        if nd > d_max as usize {
                            continue;
                        }
                        let niw = iw + count * f64::from(u.count_ones());
                        if ns == 0 {
                            spectrum[nd] += niw;
                        } else {
                            let cell = &mut fresh[ns * width + nd];
                            cell.0 += count;
                            cell.1 += niw;
                            alive = true;
                        }
                    }
                }
            }
            paths = fresh;
            if !alive {
                return Ok(spectrum);
            }
        }
        Err(Error::Numerical("weight enumeration did not terminate".into()))
    }

    /// BCJR decoding of a terminated block from coded-bit priors.
    ///
    /// Returns the extrinsic probabilities of every coded bit (its own prior
    /// excluded) and the posterior probabilities of the `info_len`
    /// information bits.
    pub fn siso_decode(
        &self,
        priors: &[SoftBit],
        info_len: usize,
    ) -> Result<(Vec<SoftBit>, Vec<SoftBit>)> {
        let steps = self.num_steps(info_len)?;
        let n = self.n;
        if priors.len() != steps * n {
            return Err(Error::Dimension(format!(
                "expected {} coded-bit priors, got {}",
                steps * n,
                priors.len()
            )));
        }
        let states = self.num_states();
        let inputs = self.num_inputs();
        let patterns = 1usize << n;
        let info_steps = info_len / self.k;

        let q: Vec<SoftBit> = priors
            .iter()
            .map(|p| [p[0].max(PRIOR_FLOOR), p[1].max(PRIOR_FLOOR)])
            .collect();
        let pattern_probs = |t: usize, table: &mut [f64]| {
            for (c, slot) in table.iter_mut().enumerate() {
                *slot = (0..n).map(|j| q[t * n + j][(c >> j) & 1]).product();
            }
        };

        let mut table = vec![0f64; patterns];
        let mut alpha = vec![0f64; (steps + 1) * states];
        alpha[0] = 1.0;
        for t in 0..steps {
            pattern_probs(t, &mut table);
            let allowed = if t < info_steps { inputs } else { 1 };
            let (cur, nxt) = alpha.split_at_mut((t + 1) * states);
            let cur = &cur[t * states..];
            let nxt = &mut nxt[..states];
            let edges = self.prev.chunks_exact(inputs).zip(self.prev_output.chunks_exact(inputs));
            for ((slot, &u), (ps, cs)) in nxt.iter_mut().zip(&self.entry_input).zip(edges) {
                if usize::from(u) < allowed {
                    *slot = ps.iter().zip(cs).map(|(&p, &c)| cur[p as usize] * table[c as usize]).sum();
                }
            }
            normalize(nxt, t)?;
        }

        let mut beta_next = vec![0f64; states];
        beta_next[0] = 1.0;
        let mut beta = vec![0f64; states];
        let mut extrinsic = vec![[0.5, 0.5]; steps * n];
        let mut posterior = vec![[0.5, 0.5]; info_len];
        // sum of alpha * beta over the edges of each (input, output pattern)
        let mut joint = vec![0f64; inputs * patterns];
        let mut weight = vec![0f64; patterns];
        for t in (0..steps).rev() {
            pattern_probs(t, &mut table);
            let allowed = if t < info_steps { inputs } else { 1 };
            let a = &alpha[t * states..(t + 1) * states];
            for (g, slot) in joint.iter_mut().enumerate() {
                *slot = if g / patterns < allowed {
                    self.grouped[self.group_start[g]..self.group_start[g + 1]]
                        .iter()
                        .map(|&(s, ns)| a[s as usize] * beta_next[ns as usize])
                        .sum()
                } else {
                    0.0
                };
            }
            let edges = self.next.chunks_exact(inputs).zip(self.output.chunks_exact(inputs));
            for (slot, (ns, cs)) in beta.iter_mut().zip(edges) {
                *slot = ns[..allowed]
                    .iter()
                    .zip(&cs[..allowed])
                    .map(|(&ns, &c)| beta_next[ns as usize] * table[c as usize])
                    .sum();
            }
            normalize(&mut beta, t)?;
            std::mem::swap(&mut beta, &mut beta_next);

            for (c, w) in weight.iter_mut().enumerate() {
                *w = (0..allowed).map(|u| joint[u * patterns + c]).sum();
            }
            for j in 0..n {
                let mut e = [0f64; 2];
                for (c, &w) in weight.iter().enumerate() {
                    if w == 0.0 {
                        continue;
                    }
                    let others: f64 = (0..n)
                        .filter(|&i| i != j)
                        .map(|i| q[t * n + i][(c >> i) & 1])
                        .product();
                    e[(c >> j) & 1] += w * others;
                }
                extrinsic[t * n + j] = normalized_pair(e, t)?;
            }
            if t < info_steps {
                for i in 0..self.k {
                    let mut p = [0f64; 2];
                    for u in 0..inputs {
                        let row = &joint[u * patterns..(u + 1) * patterns];
                        p[(u >> i) & 1] += row.iter().zip(&table).map(|(x, y)| x * y).sum::<f64>();
                    }
                    posterior[t * self.k + i] = normalized_pair(p, t)?;
                }
            }
        }
        Ok((extrinsic, posterior))
    }
}

impl fmt::Display for ConvCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .generators
            .iter()
            .map(|row| row.iter().map(|g| format!("{g:o}")).collect::<Vec<_>>().join(" "))
            .collect();
        write!(
            f,
            "{} ({}, {}, {}) [{}]",
            self.name,
            self.n,
            self.k,
            self.nu,
            rows.join("; ")
        )
    }
}

fn normalize(v: &mut [f64], t: usize) -> Result<()> {
    let sum: f64 = v.iter().sum();
    if !(sum > 0.0 && sum.is_finite()) {
        return Err(Error::Numerical(format!(
            "trellis stage {t} has zero or non-finite total likelihood"
        )));
    }
    let inv = 1.0 / sum;
    v.iter_mut().for_each(|x| {
        *x *= inv;
        if *x < 1e-200 {
            *x = 0.0;
        }
    });
    Ok(())
}

fn normalized_pair(p: [f64; 2], t: usize) -> Result<SoftBit> {
    let sum = p[0] + p[1];
    if !(sum > 0.0 && sum.is_finite()) {
        return Err(Error::Numerical(format!(
            "degenerate soft output at trellis stage {t}"
        )));
    }
    Ok([p[0] / sum, p[1] / sum])
}

/// Hard decisions `P(1) > P(0)`.
pub fn hard_decisions(soft: &[SoftBit]) -> Vec<u8> {
    soft.iter().map(|p| u8::from(p[1] > p[0])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn code75() -> ConvCode {
        ConvCode::from_spec("7 5").unwrap()
    }

    fn all_words(len: usize) -> impl Iterator<Item = Vec<u8>> {
        (0..1u32 << len).map(move |x| (0..len).map(|i| ((x >> i) & 1) as u8).collect())
    }

    /// Exhaustive marginalization over every codeword of the block.
    fn brute_force(code: &ConvCode, q: &[SoftBit], info_len: usize) -> (Vec<SoftBit>, Vec<SoftBit>) {
        let lc = q.len();
        let mut ext = vec![[0f64; 2]; lc];
        let mut post = vec![[0f64; 2]; info_len];
        for info in all_words(info_len) {
            let c = code.encode(&info).unwrap();
            let p: f64 = c.iter().enumerate().map(|(i, &b)| q[i][b as usize]).product();
            for j in 0..lc {
                let others: f64 = c
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(i, &b)| q[i][b as usize])
                    .product();
                ext[j][c[j] as usize] += others;
            }
            for (i, &b) in info.iter().enumerate() {
                post[i][b as usize] += p;
            }
        }
        let norm = |v: &mut Vec<SoftBit>| {
            for p in v.iter_mut() {
                let s = p[0] + p[1];
                *p = [p[0] / s, p[1] / s];
            }
        };
        norm(&mut ext);
        norm(&mut post);
        (ext, post)
    }

    fn random_priors(rng: &mut ChaCha8Rng, len: usize) -> Vec<SoftBit> {
        (0..len)
            .map(|_| {
                let p: f64 = rng.random_range(0.02..0.98);
                [1.0 - p, p]
            })
            .collect()
    }

    #[test]
    fn shipped_codes_reach_distance_ten() {
        let r12 = ConvCode::rate12_m6();
        assert_eq!((r12.n(), r12.k(), r12.nu()), (2, 1, 6));
        assert_eq!(r12.free_distance().unwrap(), 10);
        let r23 = ConvCode::rate23_m10();
        assert_eq!((r23.n(), r23.k(), r23.nu()), (3, 2, 10));
        assert!(!r23.is_catastrophic());
        assert_eq!(r23.free_distance().unwrap(), 10);
    }

    #[test]
    fn free_distance_matches_lightest_short_codeword() {
        let cases = [(code75(), 8), (ConvCode::rate12_m6(), 14), (ConvCode::rate23_m10(), 16)];
        for (code, len) in cases {
            let lightest = all_words(len)
                .skip(1)
                .map(|info| code.encode(&info).unwrap().iter().map(|&b| u32::from(b)).sum::<u32>())
                .min()
                .unwrap();
            assert_eq!(lightest, code.free_distance().unwrap(), "{code}");
        }
    }

    #[test]
    fn small_free_distances() {
        assert_eq!(ConvCode::from_spec("1 3").unwrap().free_distance().unwrap(), 3);
        assert_eq!(code75().free_distance().unwrap(), 5);
    }

    #[test]
    fn catastrophic_code_is_rejected() {
        // 1 + D and 1 + D^2 share the factor 1 + D
        let c = ConvCode::from_spec("6 5").unwrap();
        assert!(c.is_catastrophic());
        assert!(c.free_distance().is_err());
        assert!(!code75().is_catastrophic());
    }

    #[test]
    fn spectrum_of_7_5_matches_transfer_function() {
        // T(D, N) = D^5 N / (1 - 2 D N), so c_{5+i} = (i + 1) 2^i
        let c = code75().weight_spectrum(12).unwrap();
        for i in 0..=7 {
            assert_eq!(c[5 + i], ((i + 1) << i) as f64);
        }
        assert!(c[..5].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn spectrum_of_171_133() {
        let c = ConvCode::rate12_m6().weight_spectrum(16).unwrap();
        assert_eq!(&c[10..=16], &[36.0, 0.0, 211.0, 0.0, 1404.0, 0.0, 11633.0]);
    }

    #[test]
    fn spectrum_starts_at_free_distance() {
        let code = ConvCode::rate23_m10();
        let c = code.weight_spectrum(12).unwrap();
        assert!(c[..10].iter().all(|&x| x == 0.0));
        assert!(c[10] > 0.0);
    }

    #[test]
    fn trellis_is_regular() {
        for code in [code75(), ConvCode::rate12_m6(), ConvCode::rate23_m10()] {
            let mut incoming = vec![0usize; code.num_states()];
            for s in 0..code.num_states() {
                for u in 0..code.num_inputs() {
                    incoming[code.edge(s, u).0] += 1;
                }
            }
            assert!(incoming.iter().all(|&c| c == code.num_inputs()));
        }
    }

    #[test]
    fn encoding_lengths_and_zero_word() {
        let r23 = ConvCode::rate23_m10();
        assert_eq!(r23.termination_bits(), 10);
        assert_eq!(r23.coded_len(600).unwrap(), 3 * 305);
        assert!(r23.encode(&[0; 600]).unwrap().iter().all(|&b| b == 0));
        assert!(r23.encode(&[0; 5]).is_err());
        let r12 = ConvCode::rate12_m6();
        assert_eq!(r12.termination_bits(), 6);
        assert_eq!(r12.encode(&[0; 10]).unwrap().len(), 2 * 16);
    }

    #[test]
    fn impulse_weight_is_at_least_free_distance() {
        for code in [ConvCode::rate12_m6(), ConvCode::rate23_m10()] {
            let d = code.free_distance().unwrap();
            for pos in 0..code.k() {
                let mut info = vec![0u8; 40];
                info[pos] = 1;
                let w: u32 = code.encode(&info).unwrap().iter().map(|&b| u32::from(b)).sum();
                assert!(w >= d);
            }
        }
    }

    #[test]
    fn encoding_is_linear() {
        let code = ConvCode::rate23_m10();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a: Vec<u8> = (0..60).map(|_| rng.random_range(0..2)).collect();
        let b: Vec<u8> = (0..60).map(|_| rng.random_range(0..2)).collect();
        let ab: Vec<u8> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
        let ca = code.encode(&a).unwrap();
        let cb = code.encode(&b).unwrap();
        let cab = code.encode(&ab).unwrap();
        assert!(ca.iter().zip(&cb).zip(&cab).all(|((x, y), z)| x ^ y == *z));
    }

    #[test]
    fn octal_parsing() {
        let c = ConvCode::from_spec("63 15 46; 32 65 61").unwrap();
        assert_eq!(c.memories(), &[5, 5]);
        assert_eq!(c.num_states(), 1024);
        assert!(ConvCode::from_spec("19 5").is_err());
        assert!(ConvCode::from_spec("7").is_err());
        assert!(ConvCode::from_spec("7 5; 3").is_err());
        assert!(matches!(ConvCode::from_spec("rate12_m6"), Ok(c) if c.free_distance().unwrap() == 10));
    }

    #[test]
    fn siso_matches_exhaustive_marginalization() {
        let code = code75();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let q = random_priors(&mut rng, code.coded_len(6).unwrap());
            let (ext, post) = code.siso_decode(&q, 6).unwrap();
            let (ext_bf, post_bf) = brute_force(&code, &q, 6);
            for (a, b) in ext.iter().zip(&ext_bf).chain(post.iter().zip(&post_bf)) {
                assert!((a[1] - b[1]).abs() < 1e-8, "{a:?} vs {b:?}");
                assert!((a[0] + a[1] - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn siso_matches_exhaustive_marginalization_two_inputs() {
        let code = ConvCode::from_spec("3 1 2; 2 3 3").unwrap();
        assert_eq!(code.k(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let q = random_priors(&mut rng, code.coded_len(8).unwrap());
            let (ext, post) = code.siso_decode(&q, 8).unwrap();
            let (ext_bf, post_bf) = brute_force(&code, &q, 8);
            for (a, b) in ext.iter().zip(&ext_bf).chain(post.iter().zip(&post_bf)) {
                assert!((a[1] - b[1]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn uniform_priors_give_uniform_outputs() {
        let code = code75();
        let q = vec![[0.5, 0.5]; code.coded_len(6).unwrap()];
        let (ext, post) = code.siso_decode(&q, 6).unwrap();
        let (ext_bf, _) = brute_force(&code, &q, 6);
        for (a, b) in ext.iter().zip(&ext_bf) {
            assert!((a[1] - b[1]).abs() < 1e-12);
        }
        // the zero tail pins the last coded bits; the rest stay uncertain
        assert!(ext[..8].iter().all(|p| (p[1] - 0.5).abs() < 1e-12));
        assert!(post.iter().all(|p| (p[1] - 0.5).abs() < 1e-12));
    }

    #[test]
    fn noiseless_priors_recover_information() {
        let code = ConvCode::rate23_m10();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let info: Vec<u8> = (0..120).map(|_| rng.random_range(0..2)).collect();
        let c = code.encode(&info).unwrap();
        let q: Vec<SoftBit> = c.iter().map(|&b| if b == 1 { [0.0, 1.0] } else { [1.0, 0.0] }).collect();
        let (_, post) = code.siso_decode(&q, info.len()).unwrap();
        assert_eq!(hard_decisions(&post), info);
        assert!(post.iter().zip(&info).all(|(p, &b)| p[b as usize] > 1.0 - 1e-12));
    }

    #[test]
    fn strong_correct_priors_decode_without_errors() {
        let code = ConvCode::rate12_m6();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let info: Vec<u8> = (0..64).map(|_| rng.random_range(0..2)).collect();
            let c = code.encode(&info).unwrap();
            let q: Vec<SoftBit> = c
                .iter()
                .map(|&b| {
                    let p = rng.random_range(0.7..0.99);
                    if b == 1 { [1.0 - p, p] } else { [p, 1.0 - p] }
                })
                .collect();
            let (_, post) = code.siso_decode(&q, info.len()).unwrap();
            assert_eq!(hard_decisions(&post), info);
        }
    }

    #[test]
    fn wrong_prior_length_is_rejected() {
        let code = code75();
        assert!(matches!(code.siso_decode(&[[0.5, 0.5]; 10], 6), Err(Error::Dimension(_))));
    }
}
