//! Multi-level energy constellations.
//!
//! The optimal non-coherent constellation places its energies on a geometric
//! grid: `p_l = (r^l - 1) N0`, where the ring ratio `r > 1` is the unique root
//! of `sum_{l=0..M} r^l = (M + 1)(gamma + 1)`. With this choice the received
//! energy per antenna under level `l` has variance `N0 r^l`, which is what makes
//! index distance (rather than Euclidean distance) the natural metric.

use crate::error::{domain, Error, Result};

const MAX_ITERATIONS: usize = 200;
const RESIDUAL_TOLERANCE: f64 = 1e-12;

/// Converts decibels to a linear power ratio.
pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear power ratio to decibels.
pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Symbol SNR from per-information-bit SNR: `gamma = (m k_c / n_c) gamma_b`.
pub fn symbol_snr(gamma_b: f64, bits_per_symbol: u32, k_c: usize, n_c: usize) -> f64 {
    gamma_b * f64::from(bits_per_symbol) * k_c as f64 / n_c as f64
}

fn ring_polynomial(r: f64, max_level: usize) -> (f64, f64) {
    // Horner evaluation of sum r^l and its derivative.
    let mut value = 0.0;
    let mut slope = 0.0;
    for _ in 0..=max_level {
        slope = slope * r + value;
        value = value * r + 1.0;
    }
    (value, slope)
}

/// Solves `sum_{l=0..M} r^l - (M + 1)(gamma + 1) = 0` for the root `r > 1`.
///
/// Bracketed Newton iteration: the polynomial is increasing and convex on
/// `r > 1`, is negative at `r = 1` and non-negative at
/// `((M + 1)(gamma + 1))^(1/M)`. Newton steps that leave the bracket are
/// replaced by bisection.
pub fn solve_ring_ratio(max_level: usize, gamma: f64) -> Result<f64> {
    if max_level == 0 {
        return Err(domain("M must be at least 1"));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(domain(format!("SNR must be positive and finite, got {gamma}")));
    }
    let target = (max_level as f64 + 1.0) * (gamma + 1.0);
    let tolerance = RESIDUAL_TOLERANCE * target.max(1.0);
    let m = max_level as f64;

    let mut lo = 1.0;
    let mut hi = target.powf(1.0 / m).max(1.0 + f64::EPSILON);
    let mut r = ((m + 1.0) * gamma).powf(1.0 / m).clamp(lo, hi);

    for _ in 0..MAX_ITERATIONS {
        let (value, slope) = ring_polynomial(r, max_level);
        let residual = value - target;
        if residual.abs() <= tolerance {
            return Ok(r);
        }
        if residual < 0.0 {
            lo = r;
        } else {
            hi = r;
        }
        let newton = r - residual / slope;
        r = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(r);
        }
    }
    Err(Error::Numerical(format!(
        "ring ratio did not converge for M = {max_level}, gamma = {gamma}"
    )))
}

/// Amplitudes `sqrt((r^l - 1) N0)` for `l = 0..=M`.
pub fn build_levels(r: f64, n0: f64, max_level: usize) -> Result<Vec<f64>> {
    if !(r > 1.0 && r.is_finite()) {
        return Err(domain(format!("ring ratio must exceed 1, got {r}")));
    }
    if !(n0 > 0.0 && n0.is_finite()) {
        return Err(domain(format!("N0 must be positive, got {n0}")));
    }
    Ok((0..=max_level)
        .map(|l| ((r.powi(l as i32) - 1.0) * n0).sqrt())
        .collect())
}

/// Equidistant ASK amplitudes `a * l`, scaled so the mean energy is `es`.
pub fn build_equidistant_ask(max_level: usize, es: f64) -> Result<Vec<f64>> {
    if max_level == 0 {
        return Err(domain("M must be at least 1"));
    }
    if !(es > 0.0 && es.is_finite()) {
        return Err(domain(format!("mean energy must be positive, got {es}")));
    }
    let m = max_level as f64;
    // mean of l^2 over 0..=M is M(2M + 1)/6
    let step = (es * 6.0 / (m * (2.0 * m + 1.0))).sqrt();
    Ok((0..=max_level).map(|l| step * l as f64).collect())
}

/// Large-SNR approximation `r ~ (varpi gamma_b)^(1/M)` with
/// `varpi = (m k_c / n_c)(M + 1)`.
pub fn asymptotic_ratio(
    gamma_b: f64,
    bits_per_symbol: u32,
    k_c: usize,
    n_c: usize,
    max_level: usize,
) -> Result<f64> {
    if !(gamma_b > 0.0) || max_level == 0 || k_c == 0 || n_c == 0 {
        return Err(domain("asymptotic ratio needs positive SNR, M, k_c and n_c"));
    }
    Ok((varpi(bits_per_symbol, k_c, n_c, max_level) * gamma_b).powf(1.0 / max_level as f64))
}

/// The constant `(m k_c / n_c)(M + 1)` relating per-bit SNR to the ring ratio.
pub fn varpi(bits_per_symbol: u32, k_c: usize, n_c: usize, max_level: usize) -> f64 {
    f64::from(bits_per_symbol) * k_c as f64 / n_c as f64 * (max_level as f64 + 1.0)
}

/// How the energy levels were placed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LevelPlacement {
    /// Geometric energies with the given ring ratio.
    Optimal { ring_ratio: f64 },
    /// Equidistant amplitudes (conventional ASK).
    EquidistantAsk,
}

/// An `(M + 1)`-point energy constellation together with its noise level.
#[derive(Clone, Debug, PartialEq)]
pub struct Constellation {
    bits_per_symbol: u32,
    n0: f64,
    gamma: f64,
    placement: LevelPlacement,
    amplitudes: Vec<f64>,
}

impl Constellation {
    fn check_size(bits_per_symbol: u32) -> Result<usize> {
        if bits_per_symbol == 0 || bits_per_symbol > 8 {
            return Err(domain(format!(
                "bits per symbol must be in 1..=8, got {bits_per_symbol}"
            )));
        }
        Ok((1usize << bits_per_symbol) - 1)
    }

    /// Optimal geometric constellation with `2^m` points at symbol SNR `gamma`.
    pub fn optimal(bits_per_symbol: u32, gamma: f64, n0: f64) -> Result<Self> {
        let max_level = Self::check_size(bits_per_symbol)?;
        let r = solve_ring_ratio(max_level, gamma)?;
        Ok(Self {
            bits_per_symbol,
            n0,
            gamma,
            placement: LevelPlacement::Optimal { ring_ratio: r },
            amplitudes: build_levels(r, n0, max_level)?,
        })
    }

    /// Equidistant ASK with `2^m` points at symbol SNR `gamma`.
    pub fn equidistant_ask(bits_per_symbol: u32, gamma: f64, n0: f64) -> Result<Self> {
        let max_level = Self::check_size(bits_per_symbol)?;
        if !(n0 > 0.0) {
            return Err(domain(format!("N0 must be positive, got {n0}")));
        }
        Ok(Self {
            bits_per_symbol,
            n0,
            gamma,
            placement: LevelPlacement::EquidistantAsk,
            amplitudes: build_equidistant_ask(max_level, gamma * n0)?,
        })
    }

    pub fn bits_per_symbol(&self) -> u32 {
        self.bits_per_symbol
    }

    /// Number of positive levels `M`.
    pub fn max_level(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn num_points(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n0(&self) -> f64 {
        self.n0
    }

    /// Symbol SNR `E_s / N0` (linear).
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn placement(&self) -> LevelPlacement {
        self.placement
    }

    pub fn ring_ratio(&self) -> Option<f64> {
        match self.placement {
            LevelPlacement::Optimal { ring_ratio } => Some(ring_ratio),
            LevelPlacement::EquidistantAsk => None,
        }
    }

    /// Amplitudes `sqrt(p_l)`, ascending, starting at 0.
    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    /// Energies `p_l`.
    pub fn energies(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a * a).collect()
    }

    /// Per-antenna received-energy variances `p_l + N0`.
    pub fn variances(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a * a + self.n0).collect()
    }

    pub fn mean_energy(&self) -> f64 {
        self.energies().iter().sum::<f64>() / self.num_points() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain bisection to 1e-14 width; independent of the Newton path.
    fn bisect_root(max_level: usize, gamma: f64) -> f64 {
        let target = (max_level as f64 + 1.0) * (gamma + 1.0);
        let f = |r: f64| (0..=max_level).map(|l| r.powi(l as i32)).sum::<f64>() - target;
        let (mut lo, mut hi) = (1.0, 2.0 * target);
        while hi - lo > 1e-14 * hi {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn ring_ratio_matches_reported_value() {
        let r = solve_ring_ratio(7, 100.0).unwrap();
        assert!((r - 2.41).abs() < 0.01, "r = {r}");
    }

    #[test]
    fn ook_ring_ratio_is_closed_form() {
        for g in [0.1, 1.0, 3.7, 100.0, 1e4] {
            let r = solve_ring_ratio(1, g).unwrap();
            assert!((r - (2.0 * g + 1.0)).abs() <= 1e-12 * r, "g = {g}");
        }
    }

    #[test]
    fn ring_ratio_agrees_with_bisection() {
        let r = solve_ring_ratio(3, 10.0).unwrap();
        let oracle = bisect_root(3, 10.0);
        assert!((r - oracle).abs() < 1e-12, "{r} vs {oracle}");
    }

    #[test]
    fn residual_and_mean_energy_on_grid() {
        for max_level in [1usize, 3, 7, 15] {
            for step in 0..=40 {
                let gamma = from_db(f64::from(step));
                let r = solve_ring_ratio(max_level, gamma).unwrap();
                let target = (max_level as f64 + 1.0) * (gamma + 1.0);
                let sum: f64 = (0..=max_level).map(|l| r.powi(l as i32)).sum();
                assert!(((sum - target) / target).abs() < 1e-10);

                let levels = build_levels(r, 1.0, max_level).unwrap();
                let mean = levels.iter().map(|a| a * a).sum::<f64>() / (max_level as f64 + 1.0);
                assert!(((mean - gamma) / gamma).abs() < 1e-10, "M={max_level} g={gamma}");
            }
        }
    }

    #[test]
    fn ring_ratio_monotone_in_snr_and_size() {
        for max_level in [1usize, 3, 7, 15] {
            let mut prev = 1.0;
            for step in 0..=40 {
                let r = solve_ring_ratio(max_level, from_db(f64::from(step))).unwrap();
                assert!(r > prev);
                prev = r;
            }
        }
        for step in 0..=40 {
            let g = from_db(f64::from(step));
            let rs: Vec<f64> = [1usize, 3, 7, 15]
                .iter()
                .map(|&m| solve_ring_ratio(m, g).unwrap())
                .collect();
            assert!(rs.windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn euclidean_spot_check() {
        let r = solve_ring_ratio(7, 100.0).unwrap();
        let a = build_levels(r, 0.01, 7).unwrap();
        assert_eq!(a[0], 0.0);
        assert!(((a[4] - a[1]).abs() - 0.45).abs() < 0.01);
        assert!(((a[4] - a[6]).abs() - 0.82).abs() < 0.01);
    }

    #[test]
    fn levels_reject_bad_arguments() {
        assert!(build_levels(1.0, 1.0, 3).is_err());
        assert!(build_levels(2.0, 0.0, 3).is_err());
        assert!(solve_ring_ratio(0, 1.0).is_err());
        assert!(solve_ring_ratio(3, -1.0).is_err());
        assert!(build_equidistant_ask(0, 1.0).is_err());
    }

    #[test]
    fn equidistant_ask_energy() {
        let a = build_equidistant_ask(1, 1.0).unwrap();
        assert_eq!(a[0], 0.0);
        assert!((a[1] - 2f64.sqrt()).abs() < 1e-15);

        let a = build_equidistant_ask(3, 2.5).unwrap();
        let mean = a.iter().map(|x| x * x).sum::<f64>() / 4.0;
        assert!((mean - 2.5).abs() < 1e-12);
        let d = a[1] - a[0];
        assert!(a.windows(2).all(|w| (w[1] - w[0] - d).abs() < 1e-12));
    }

    #[test]
    fn asymptotic_ratio_lemma() {
        assert_eq!(varpi(3, 2, 3, 7), 16.0);
        // 30 dB per-bit SNR, 8-ary, rate 2/3
        let gamma_b = from_db(30.0);
        let approx = asymptotic_ratio(gamma_b, 3, 2, 3, 7).unwrap();
        let exact = solve_ring_ratio(7, symbol_snr(gamma_b, 3, 2, 3)).unwrap();
        assert!((approx - exact).abs() / exact < 0.05);

        // OOK with a rate-1/2 code: varpi = 1, exact r = gamma_b + 1
        for db in [20.0, 40.0, 60.0] {
            let gb = from_db(db);
            let approx = asymptotic_ratio(gb, 1, 1, 2, 1).unwrap();
            assert!((approx - gb).abs() < 1e-9 * gb);
            let exact = solve_ring_ratio(1, symbol_snr(gb, 1, 1, 2)).unwrap();
            assert!((exact - (gb + 1.0)).abs() < 1e-9 * gb);
        }
    }

    #[test]
    fn asymptotic_ratio_converges_above_20db() {
        let mut prev = f64::INFINITY;
        for db in (20..=60).step_by(2) {
            let gb = from_db(f64::from(db));
            let exact = solve_ring_ratio(7, symbol_snr(gb, 3, 2, 3)).unwrap();
            let gap = (exact / asymptotic_ratio(gb, 3, 2, 3, 7).unwrap() - 1.0).abs();
            assert!(gap < prev, "gap at {db} dB did not shrink");
            prev = gap;
        }
    }

    #[test]
    fn constellation_variances_follow_ring() {
        let c = Constellation::optimal(3, 100.0, 1.0).unwrap();
        let r = c.ring_ratio().unwrap();
        for (l, v) in c.variances().iter().enumerate() {
            let expect = r.powi(l as i32);
            assert!((v - expect).abs() <= 1e-12 * expect);
        }
        assert!((c.mean_energy() - 100.0).abs() < 1e-9);
        let ask = Constellation::equidistant_ask(3, 100.0, 1.0).unwrap();
        assert!((ask.mean_energy() - 100.0).abs() < 1e-9);
        assert!(ask.ring_ratio().is_none());
    }
}
