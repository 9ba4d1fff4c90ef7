//! Chernoff-type error bounds for energy-level labelings.
//!
//! For a transmitted level `q` and competitor `q'` with ring ratio `r`, one
//! symbol contributes the Chernoff factor
//! `(r^{t(q-q')} / (1 - t(1 - r^{q-q'})))^R`. At `t = 1/2` the factor for an
//! index gap `j` equals `cosh^{-R}(j ln(r) / 2)`, and averaging it over the
//! neighbor pairs of a labeling gives `delta`, with `delta^d` bounding the
//! pairwise error probability of a distance-`d` event.

use crate::constellation::{from_db, solve_ring_ratio, symbol_snr, to_db, varpi};
use crate::error::{domain, Error, Result};
use crate::mapping::{Mapping, NeighborMode, NeighborProfile};

/// `ln cosh x`, switching to `|x| - ln 2` where `cosh` would overflow.
pub fn ln_cosh(x: f64) -> f64 {
    let x = x.abs();
    if x > 30.0 {
        x - std::f64::consts::LN_2
    } else {
        x.cosh().ln()
    }
}

/// `cosh^{-R}(j ln(r) / 2)`, the `t = 1/2` Chernoff factor of gap `j`.
pub fn gap_factor(j: usize, r: f64, antennas: usize) -> f64 {
    (-(antennas as f64) * ln_cosh(j as f64 * r.ln() / 2.0)).exp()
}

/// Largest admissible Chernoff parameter, `1 / (1 - r^{-M})`.
pub fn chernoff_t_max(r: f64, max_level: usize) -> f64 {
    1.0 / (1.0 - r.powi(-(max_level as i32)))
}

fn check_ratio(r: f64) -> Result<()> {
    if !(r > 1.0 && r.is_finite()) {
        return Err(domain(format!("ring ratio must exceed 1, got {r}")));
    }
    Ok(())
}

/// Chernoff factor of one symbol pair with exponent `u = r^{q - q'}`.
pub fn chernoff_factor(u: f64, t: f64) -> f64 {
    u.powf(t) / (1.0 - t * (1.0 - u))
}

/// Chernoff bound on the probability of preferring `decided` over `sent`.
pub fn chernoff_pep_bound(
    sent: &[usize],
    decided: &[usize],
    r: f64,
    antennas: usize,
    max_level: usize,
    t: f64,
) -> Result<f64> {
    check_ratio(r)?;
    if sent.len() != decided.len() {
        return Err(Error::Dimension(format!(
            "sequences of length {} and {}",
            sent.len(),
            decided.len()
        )));
    }
    let t_max = chernoff_t_max(r, max_level);
    if !(0.0..=t_max).contains(&t) {
        return Err(domain(format!("t = {t} outside [0, {t_max}]")));
    }
    if let Some(q) = sent.iter().chain(decided).find(|&&q| q > max_level) {
        return Err(domain(format!("level {q} exceeds {max_level}")));
    }
    let log: f64 = sent
        .iter()
        .zip(decided)
        .map(|(&q, &qh)| {
            let u = r.powi(q as i32 - qh as i32);
            chernoff_factor(u, t).ln()
        })
        .sum();
    Ok((antennas as f64 * log).exp())
}

/// `delta` by direct summation over every `(l, w)` neighbor pair.
pub fn delta_direct(mapping: &Mapping, mode: NeighborMode, r: f64, antennas: usize) -> Result<f64> {
    check_ratio(r)?;
    let m = mapping.bits_per_symbol();
    let mut sum = 0.0;
    for l in 0..mapping.num_levels() {
        for w in 1..=m {
            let j = l.abs_diff(mapping.neighbor(mode, l, w));
            sum += gap_factor(j, r, antennas);
        }
    }
    Ok(sum / (m as usize * mapping.num_levels()) as f64)
}

/// `delta` from a neighbor profile, `sum_j N_j cosh^{-R}(j ln(r)/2) / (m(M+1))`.
pub fn delta_from_profile(profile: &NeighborProfile, r: f64, antennas: usize) -> Result<f64> {
    check_ratio(r)?;
    let total = profile.total();
    if total == 0 {
        return Err(domain("empty neighbor profile"));
    }
    let sum: f64 = profile
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(i, &n)| f64::from(n) * gap_factor(i + 1, r, antennas))
        .sum();
    Ok(sum / f64::from(total))
}

pub fn delta(mapping: &Mapping, mode: NeighborMode, r: f64, antennas: usize) -> Result<f64> {
    delta_from_profile(&mapping.neighbor_profile(mode), r, antennas)
}

/// `delta^d`.
pub fn pep_upper_bound(mapping: &Mapping, mode: NeighborMode, d: u32, r: f64, antennas: usize) -> Result<f64> {
    Ok(delta(mapping, mode, r, antennas)?.powi(d as i32))
}

/// `d log10(delta)`, safe where `delta^d` would underflow.
pub fn log10_pep_bound(mapping: &Mapping, mode: NeighborMode, d: u32, r: f64, antennas: usize) -> Result<f64> {
    Ok(f64::from(d) * delta(mapping, mode, r, antennas)?.log10())
}

/// Average of the Chernoff factors over the neighbor pairs at parameter `t`.
pub fn average_chernoff(mapping: &Mapping, mode: NeighborMode, r: f64, antennas: usize, t: f64) -> Result<f64> {
    check_ratio(r)?;
    let m = mapping.bits_per_symbol();
    let mut sum = 0.0;
    for l in 0..mapping.num_levels() {
        for w in 1..=m {
            let other = mapping.neighbor(mode, l, w);
            let u = r.powi(l as i32 - other as i32);
            sum += chernoff_factor(u, t).powi(antennas as i32);
        }
    }
    Ok(sum / (m as usize * mapping.num_levels()) as f64)
}

/// Grid minimization of the averaged Chernoff bound over `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernoffScan {
    pub t_opt: f64,
    pub value: f64,
    pub min_second_difference: f64,
    pub points: usize,
}

/// Scans `t = 0, step, 2 step, ...` strictly below `1 / (1 - r^{-M})`, where
/// the bound has a pole.
pub fn chernoff_t_optimum(
    mapping: &Mapping,
    mode: NeighborMode,
    r: f64,
    antennas: usize,
    step: f64,
) -> Result<ChernoffScan> {
    check_ratio(r)?;
    if !(step > 0.0 && step <= 1e-3) {
        return Err(domain(format!("grid step must lie in (0, 1e-3], got {step}")));
    }
    let t_max = chernoff_t_max(r, mapping.max_level());
    let n = ((t_max / step).ceil() as usize).max(1);
    let values: Vec<(f64, f64)> = (0..n)
        .map(|i| i as f64 * step)
        .filter(|&t| t < t_max)
        .map(|t| Ok((t, average_chernoff(mapping, mode, r, antennas, t)?)))
        .collect::<Result<_>>()?;
    let &(t_opt, value) = values
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::Numerical("empty t grid".into()))?;
    let min_second_difference = values
        .windows(3)
        .map(|w| w[0].1 - 2.0 * w[1].1 + w[2].1)
        .fold(f64::INFINITY, f64::min);
    Ok(ChernoffScan { t_opt, value, min_second_difference, points: values.len() })
}

/// Diversity order `n1 R d_min / (2M)`.
pub fn diversity_order(n1: usize, antennas: usize, d_min: u32, max_level: usize) -> f64 {
    (n1 * antennas) as f64 * f64::from(d_min) / (2 * max_level) as f64
}

/// Exact probability, for one antenna, that level `l_hat` is preferred over
/// the transmitted level `l`: with `phi(x) = x / (1 - r^x)` this is
/// `exp(phi(l - l_hat) ln r)` for `l_hat > l` and its complement otherwise.
pub fn exact_symbol_pep(l: usize, l_hat: usize, r: f64) -> Result<f64> {
    check_ratio(r)?;
    if l == l_hat {
        return Err(domain("pairwise error between identical levels"));
    }
    let x = l as f64 - l_hat as f64;
    let phi = x / (1.0 - r.powf(x));
    let e = (phi * r.ln()).exp();
    Ok(if l_hat > l { e } else { 1.0 - e })
}

/// Large-SNR decomposition of `log10 delta^{d_min}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Asymptote {
    /// `d_min log10(N_{n1} / (m(M+1)))`.
    pub lambda: f64,
    /// `R d_min log10 cosh(n1 ([varpi]_dB + [gamma_b]_dB) / (8.7 M))`.
    pub omega: f64,
    /// Ratio of the full profile sum to its leading term; tends to 1.
    pub xi: f64,
    /// `lambda - omega`.
    pub log10_proxy: f64,
}

fn db_cosh_arg(j: usize, varpi_db: f64, gamma_b_db: f64, max_level: usize) -> f64 {
    j as f64 * (varpi_db + gamma_b_db) / (8.7 * max_level as f64)
}

pub fn union_bound_asymptote(
    profile: &NeighborProfile,
    bits: u32,
    code_rate: (usize, usize),
    d_min: u32,
    antennas: usize,
    gamma_b_db: f64,
) -> Asymptote {
    let max_level = (1usize << bits) - 1;
    let varpi_db = to_db(varpi(bits, code_rate.0, code_rate.1, max_level));
    let n1 = profile.n1();
    let n_n1 = f64::from(profile.n1_count());
    let total = f64::from(profile.total());
    let d = f64::from(d_min);
    let rr = antennas as f64;
    let lead = ln_cosh(db_cosh_arg(n1, varpi_db, gamma_b_db, max_level));
    let xi = profile
        .occupied()
        .into_iter()
        .map(|j| {
            let lc = ln_cosh(db_cosh_arg(j, varpi_db, gamma_b_db, max_level));
            f64::from(profile.count(j)) / n_n1 * (-rr * (lc - lead)).exp()
        })
        .sum();
    let lambda = d * (n_n1 / total).log10();
    let omega = rr * d * lead / std::f64::consts::LN_10;
    Asymptote { lambda, omega, xi, log10_proxy: lambda - omega }
}

/// Truncated union bound on the information BER.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnionBound {
    pub ber: f64,
    /// Contribution of the `d_min` term alone.
    pub leading: f64,
    /// Geometric tail estimate `delta^{d_max + 1} / (1 - delta)`.
    pub tail: f64,
}

/// `(1/k) sum_d c_d delta^d` over a spectrum indexed by distance.
pub fn union_bound_ber(spectrum: &[f64], k_c: usize, delta: f64) -> Result<UnionBound> {
    let first = spectrum
        .iter()
        .position(|&c| c > 0.0)
        .ok_or_else(|| domain("empty weight spectrum"))?;
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(domain(format!("delta = {delta} outside (0, 1]")));
    }
    let k = k_c as f64;
    let ber = spectrum
        .iter()
        .enumerate()
        .map(|(d, &c)| c * delta.powi(d as i32))
        .sum::<f64>()
        / k;
    let leading = spectrum[first] * delta.powi(first as i32) / k;
    let d_max = spectrum.len() - 1;
    let tail = if delta < 1.0 {
        delta.powi(d_max as i32 + 1) / (1.0 - delta)
    } else {
        f64::INFINITY
    };
    Ok(UnionBound { ber, leading, tail })
}

/// Ring ratio of the optimal constellation at bit SNR `gamma_b_db`.
pub fn ring_ratio_at(gamma_b_db: f64, bits: u32, code_rate: (usize, usize)) -> Result<f64> {
    let gamma = symbol_snr(from_db(gamma_b_db), bits, code_rate.0, code_rate.1);
    solve_ring_ratio((1usize << bits) - 1, gamma)
}

/// One row of a bound sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundResult {
    pub mapping_id: String,
    pub mode: NeighborMode,
    pub gamma_b_db: f64,
    pub delta: f64,
    pub log10_bound: f64,
    pub n1: usize,
    pub n_n1: u32,
    pub diversity: f64,
}

pub fn bound_point(
    mapping_id: &str,
    mapping: &Mapping,
    mode: NeighborMode,
    gamma_b_db: f64,
    code_rate: (usize, usize),
    d_min: u32,
    antennas: usize,
) -> Result<BoundResult> {
    let r = ring_ratio_at(gamma_b_db, mapping.bits_per_symbol(), code_rate)?;
    let profile = mapping.neighbor_profile(mode);
    let delta = delta_from_profile(&profile, r, antennas)?;
    Ok(BoundResult {
        mapping_id: mapping_id.to_string(),
        mode,
        gamma_b_db,
        delta,
        log10_bound: f64::from(d_min) * delta.log10(),
        n1: profile.n1(),
        n_n1: profile.n1_count(),
        diversity: diversity_order(profile.n1(), antennas, d_min, mapping.max_level()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::pairwise_error_trial;
    use crate::constellation::Constellation;
    use crate::mapping::enumerate_mappings;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use NeighborMode::*;

    fn l1() -> Mapping {
        Mapping::preset("l1").unwrap()
    }

    fn gray() -> Mapping {
        Mapping::preset("gray8").unwrap()
    }

    #[test]
    fn ln_cosh_is_continuous_at_switch() {
        let below = 30.0f64.cosh().ln();
        assert!((ln_cosh(30.0) - below).abs() < 1e-12);
        assert!((ln_cosh(30.0 + 1e-9) - below).abs() < 1e-8);
        assert_eq!(ln_cosh(-2.0), ln_cosh(2.0));
        assert!(ln_cosh(1e5).is_finite());
    }

    #[test]
    fn chernoff_trivial_cases() {
        let r = 2.41;
        assert_eq!(chernoff_pep_bound(&[0, 3], &[5, 1], r, 5, 7, 0.0).unwrap(), 1.0);
        assert_relative_eq!(chernoff_pep_bound(&[2, 4], &[2, 4], r, 5, 7, 0.7).unwrap(), 1.0);
        assert!(chernoff_pep_bound(&[0], &[1], r, 1, 7, -0.1).is_err());
        assert!(chernoff_pep_bound(&[0], &[1], r, 1, 7, 2.0).is_err());
        assert!(chernoff_pep_bound(&[0], &[1], 0.9, 1, 7, 0.5).is_err());
    }

    #[test]
    fn chernoff_half_is_cosh_identity() {
        for r in [1.5, 2.41, 7.0] {
            let b = chernoff_pep_bound(&[0], &[1], r, 1, 7, 0.5).unwrap();
            assert_relative_eq!(b, 1.0 / (r.ln() / 2.0).cosh(), max_relative = 1e-12);
            let b3 = chernoff_pep_bound(&[5], &[2], r, 3, 7, 0.5).unwrap();
            assert_relative_eq!(b3, gap_factor(3, r, 3), max_relative = 1e-12);
        }
    }

    #[test]
    fn chernoff_bounds_simulated_pep() {
        let c = Constellation::optimal(3, from_db(20.0), 1.0).unwrap();
        let r = c.ring_ratio().unwrap();
        let bound = chernoff_pep_bound(&[0, 4], &[1, 2], r, 2, 7, 0.5).unwrap();
        let est = pairwise_error_trial(&[0, 4], &[1, 2], &c, 2, 100_000, 3).unwrap();
        assert!(est.probability <= bound + 3.0 * est.std_error);
    }

    #[test]
    fn delta_forms_agree() {
        for mapping in enumerate_mappings(3).unwrap().step_by(331) {
            for mode in NeighborMode::BOTH {
                for (r, rr) in [(1.3, 1), (2.41, 5), (6.0, 20)] {
                    let a = delta_direct(&mapping, mode, r, rr).unwrap();
                    let b = delta(&mapping, mode, r, rr).unwrap();
                    assert!((a - b).abs() <= 1e-12 * a.max(1e-300));
                    let c = average_chernoff(&mapping, mode, r, rr, 0.5).unwrap();
                    assert!((a - c).abs() <= 1e-12 * a.max(1e-300));
                }
            }
        }
    }

    #[test]
    fn delta_of_single_gap_profile() {
        let p = NeighborProfile::new(ErrorFreeFeedback, vec![0, 0, 24, 0, 0, 0, 0]);
        assert_relative_eq!(delta_from_profile(&p, 2.0, 5).unwrap(), gap_factor(3, 2.0, 5), max_relative = 1e-15);
    }

    #[test]
    fn delta_lies_in_unit_interval_and_modes_differ() {
        for m in [gray(), l1()] {
            let ff = delta(&m, FeedbackFree, 2.41, 5).unwrap();
            let eff = delta(&m, ErrorFreeFeedback, 2.41, 5).unwrap();
            assert!(ff > 0.0 && ff <= 1.0 && eff > 0.0 && eff <= 1.0);
            assert!((ff - eff).abs() > 1e-6);
        }
    }

    #[test]
    fn first_table_row_at_lowest_snr() {
        let m = Mapping::preset("rho1").unwrap();
        let r = ring_ratio_at(9.5, 3, (2, 3)).unwrap();
        let ff = log10_pep_bound(&m, FeedbackFree, 10, r, 5).unwrap();
        let eff = log10_pep_bound(&m, ErrorFreeFeedback, 10, r, 5).unwrap();
        assert!((ff + 2.3).abs() < 0.05, "{ff}");
        assert!((eff + 3.2).abs() < 0.05, "{eff}");
    }

    #[test]
    fn bound_is_a_power_law_in_distance() {
        let m = l1();
        assert_eq!(pep_upper_bound(&m, FeedbackFree, 0, 2.41, 5).unwrap(), 1.0);
        let a = pep_upper_bound(&m, ErrorFreeFeedback, 3, 2.41, 5).unwrap();
        let b = pep_upper_bound(&m, ErrorFreeFeedback, 4, 2.41, 5).unwrap();
        let ab = pep_upper_bound(&m, ErrorFreeFeedback, 7, 2.41, 5).unwrap();
        assert_relative_eq!(a * b, ab, max_relative = 1e-12);
    }

    #[test]
    fn diversity_formula() {
        assert_relative_eq!(diversity_order(2, 5, 10, 7), 100.0 / 14.0);
        assert_relative_eq!(diversity_order(2, 5, 10, 7) / 10.0, 0.7143, epsilon = 1e-4);
        assert_relative_eq!(diversity_order(4, 5, 10, 7), 2.0 * diversity_order(2, 5, 10, 7));
    }

    fn fitted_slope(m: &Mapping, mode: NeighborMode, antennas: usize, lo: f64, hi: f64) -> f64 {
        let xs: Vec<f64> = (0..=20).map(|i| lo + (hi - lo) * i as f64 / 20.0).collect();
        let ys: Vec<f64> = xs
            .iter()
            .map(|&g| {
                let r = ring_ratio_at(g, 3, (2, 3)).unwrap();
                log10_pep_bound(m, mode, 10, r, antennas).unwrap()
            })
            .collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        -sxy / sxx
    }

    #[test]
    fn fitted_slope_near_forty_to_sixty_db() {
        // n1 = 2 labelings are already close to their asymptote there
        let slope = fitted_slope(&l1(), ErrorFreeFeedback, 5, 40.0, 60.0);
        assert!((slope - 0.712).abs() < 0.02, "{slope}");
    }

    #[test]
    fn fitted_slope_matches_diversity() {
        // n1 = 1 labelings converge slowly (tanh of the cosh argument), so
        // fit far into the asymptotic range
        for mapping in enumerate_mappings(3).unwrap().step_by(4021).take(10) {
            for mode in NeighborMode::BOTH {
                let n1 = mapping.n1(mode);
                let predicted = diversity_order(n1, 5, 10, 7) / 10.0;
                let slope = fitted_slope(&mapping, mode, 5, 200.0, 240.0);
                assert!((slope - predicted).abs() < 0.03 * predicted, "{mapping} {mode}: {slope} vs {predicted}");
            }
        }
    }

    #[test]
    fn exact_pep_values() {
        let r = 2.41f64;
        let phi = -1.0 / (1.0 - 1.0 / r);
        assert_relative_eq!(exact_symbol_pep(0, 1, r).unwrap(), (phi * r.ln()).exp(), max_relative = 1e-14);
        assert!(exact_symbol_pep(2, 2, r).is_err());
        assert!(exact_symbol_pep(0, 1, 1e9).unwrap() < 1e-6);
        for l in 0..7 {
            for lh in l + 2..8 {
                assert!(exact_symbol_pep(l, lh, r).unwrap() < exact_symbol_pep(l, lh - 1, r).unwrap());
            }
        }
    }

    #[test]
    fn exact_pep_matches_simulation() {
        let c = Constellation::optimal(3, from_db(20.0), 1.0).unwrap();
        let r = c.ring_ratio().unwrap();
        for (l, lh) in [(0, 1), (3, 2), (6, 1), (2, 7)] {
            let exact = exact_symbol_pep(l, lh, r).unwrap();
            let est = pairwise_error_trial(&[l], &[lh], &c, 1, 100_000, 9).unwrap();
            assert!((est.probability - exact).abs() < 4.0 * est.std_error.max(1e-4), "{l}->{lh}");
        }
    }

    #[test]
    fn eff_optimum_is_one_half() {
        let scan = chernoff_t_optimum(&l1(), ErrorFreeFeedback, 2.41, 5, 1e-3).unwrap();
        assert!((scan.t_opt - 0.5).abs() <= 1e-3 + 1e-12);
        assert!(scan.min_second_difference > 0.0);
        let ook = Mapping::natural(1).unwrap();
        let scan = chernoff_t_optimum(&ook, ErrorFreeFeedback, 3.0, 2, 1e-3).unwrap();
        assert!((scan.t_opt - 0.5).abs() < 1e-9);
    }

    #[test]
    fn ff_optimum_is_near_one_half() {
        for m in [gray(), l1(), Mapping::preset("sp8").unwrap()] {
            let scan = chernoff_t_optimum(&m, FeedbackFree, 2.41, 5, 1e-3).unwrap();
            assert!((scan.t_opt - 0.5).abs() < 0.05, "{m}: {}", scan.t_opt);
        }
    }

    #[test]
    fn asymptote_pieces() {
        let g = gray().neighbor_profile(ErrorFreeFeedback);
        let rho1 = Mapping::preset("rho1").unwrap().neighbor_profile(ErrorFreeFeedback);
        assert_eq!(g.n1_count(), 14);
        assert_eq!(rho1.n1_count(), 8);
        let a = union_bound_asymptote(&g, 3, (2, 3), 10, 5, 20.0);
        let b = union_bound_asymptote(&rho1, 3, (2, 3), 10, 5, 20.0);
        assert_relative_eq!(a.lambda - b.lambda, 10.0 * (14.0f64 / 8.0).log10(), epsilon = 1e-12);
        assert_relative_eq!(a.omega, b.omega);
        let far = union_bound_asymptote(&g, 3, (2, 3), 10, 5, 60.0);
        assert!((far.xi - 1.0).abs() < 0.01, "xi = {}", far.xi);
        assert!(a.xi > far.xi);
    }

    #[test]
    fn asymptote_tracks_exact_bound() {
        // the chain of approximations should land close at high SNR
        let m = l1();
        let p = m.neighbor_profile(ErrorFreeFeedback);
        let gb = 50.0;
        let asym = union_bound_asymptote(&p, 3, (2, 3), 10, 5, gb);
        let r = ring_ratio_at(gb, 3, (2, 3)).unwrap();
        let exact = log10_pep_bound(&m, ErrorFreeFeedback, 10, r, 5).unwrap();
        let with_xi = asym.log10_proxy + 10.0 * asym.xi.log10();
        assert!((with_xi - exact).abs() < 0.05 * exact.abs(), "{with_xi} vs {exact}");
    }

    #[test]
    fn union_bound_terms() {
        assert!(union_bound_ber(&[0.0, 0.0], 1, 0.5).is_err());
        let single = union_bound_ber(&[0.0, 0.0, 0.0, 6.0], 2, 0.1).unwrap();
        assert_relative_eq!(single.ber, 3.0 * 1e-3, max_relative = 1e-12);
        assert_relative_eq!(single.leading, single.ber);
    }

    #[test]
    fn union_bound_is_dominated_by_free_distance_term() {
        let spec = crate::codec::ConvCode::rate12_m6().weight_spectrum(18).unwrap();
        let m = l1();
        let mut prev = f64::INFINITY;
        for gb in [10.0, 20.0, 30.0, 50.0] {
            let r = ring_ratio_at(gb, 3, (1, 2)).unwrap();
            let d = delta(&m, ErrorFreeFeedback, r, 5).unwrap();
            let ub = union_bound_ber(&spec, 1, d).unwrap();
            let ratio = ub.ber / ub.leading;
            assert!(ratio >= 1.0 && ratio <= prev + 1e-12);
            prev = ratio;
        }
        assert!(prev - 1.0 < 1e-3);
    }

    #[test]
    fn bound_point_fields() {
        let b = bound_point("l1", &l1(), ErrorFreeFeedback, 12.0, (2, 3), 10, 5).unwrap();
        assert_eq!((b.n1, b.n_n1), (2, 4));
        assert_relative_eq!(b.log10_bound, 10.0 * b.delta.log10());
        assert_relative_eq!(b.diversity, 100.0 / 14.0);
    }

    proptest! {
        #[test]
        fn reflected_pairs_share_the_half_point_factor(j in 1i32..8, r in 1.01f64..20.0, antennas in 1usize..10) {
            let u = r.powi(j);
            let a = chernoff_factor(u, 0.5).powi(antennas as i32);
            let b = chernoff_factor(1.0 / u, 0.5).powi(antennas as i32);
            prop_assert!((a - b).abs() <= 1e-12 * a);
        }
    }
}
