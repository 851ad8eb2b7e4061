//! Finite discrete distributions over non-negative integer counts.
//!
//! [`DiscreteDist`] stores a contiguous window of probability masses starting
//! at `offset`, together with the mass that was dropped when tails were
//! trimmed. Every constructor keeps `sum(masses) + truncation_loss` within
//! `1 ± 1e-9`.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{domain, validation, Result};

/// Mass budget that trimming may drop from a single constructed distribution.
pub const TRIM_BUDGET: f64 = 1e-12;

/// Hard cap on the number of stored support points.
pub const MAX_SUPPORT: usize = 1_000_000;

/// Output lengths below this use direct summation; longer ones use the FFT.
pub const DIRECT_CONVOLUTION_LIMIT: usize = 4096;

const NORMALIZATION_TOL: f64 = 1e-9;

/// Mean and variance of a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

impl Moments {
    pub fn new(mean: f64, variance: f64) -> Self {
        Self { mean, variance }
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.max(0.0).sqrt()
    }
}

/// Convolution backend selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConvolutionMethod {
    /// Direct summation below [`DIRECT_CONVOLUTION_LIMIT`] output points, FFT above.
    #[default]
    Auto,
    Direct,
    Fft,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteDist {
    offset: usize,
    masses: Vec<f64>,
    truncation_loss: f64,
}

impl DiscreteDist {
    /// Builds a distribution from explicit masses and recorded loss.
    pub fn new(offset: usize, masses: Vec<f64>, truncation_loss: f64) -> Result<Self> {
        if masses.is_empty() {
            return Err(validation("distribution needs at least one support point"));
        }
        if let Some(bad) = masses.iter().find(|m| !m.is_finite() || **m < 0.0) {
            return Err(validation(format!("invalid probability mass {bad}")));
        }
        if !truncation_loss.is_finite() || truncation_loss < 0.0 {
            return Err(validation(format!("invalid truncation loss {truncation_loss}")));
        }
        let total: f64 = masses.iter().sum::<f64>() + truncation_loss;
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(validation(format!(
                "masses plus truncation loss sum to {total}, expected 1"
            )));
        }
        Ok(Self {
            offset,
            masses,
            truncation_loss,
        })
    }

    /// Builds a distribution whose missing mass (if any) is booked as truncation loss.
    pub fn from_masses(offset: usize, masses: Vec<f64>) -> Result<Self> {
        let total: f64 = masses.iter().sum();
        Self::new(offset, masses, (1.0 - total).max(0.0))
    }

    /// Empirical distribution of a histogram indexed from zero.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let shots: u64 = counts.iter().sum();
        if shots == 0 {
            return Err(validation("histogram is empty"));
        }
        let first = counts.iter().position(|&c| c > 0).unwrap_or(0);
        let last = counts.iter().rposition(|&c| c > 0).unwrap_or(0);
        let inv = 1.0 / shots as f64;
        let masses = counts[first..=last].iter().map(|&c| c as f64 * inv).collect();
        Self::from_masses(first, masses)
    }

    pub fn point_mass(k: usize) -> Self {
        Self {
            offset: k,
            masses: vec![1.0],
            truncation_loss: 0.0,
        }
    }

    /// Poisson law with mean `omega`; shorthand for [`poisson_pmf`].
    pub fn poisson(omega: f64) -> Result<Self> {
        poisson_pmf(omega)
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    /// One past the largest stored count.
    pub fn end(&self) -> usize {
        self.offset + self.masses.len()
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn truncation_loss(&self) -> f64 {
        self.truncation_loss
    }

    pub fn support_len(&self) -> usize {
        self.masses.len()
    }

    pub fn stored_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// Probability of count `k` (zero outside the stored window).
    pub fn pmf(&self, k: usize) -> f64 {
        if k < self.offset {
            return 0.0;
        }
        self.masses.get(k - self.offset).copied().unwrap_or(0.0)
    }

    /// Iterates `(count, mass)` pairs over the stored window.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .map(move |(i, &m)| (self.offset + i, m))
    }

    /// Weighted sums over the stored support.
    pub fn moments(&self) -> Moments {
        let mean: f64 = self.iter().map(|(k, m)| k as f64 * m).sum();
        let variance: f64 = self
            .iter()
            .map(|(k, m)| {
                let d = k as f64 - mean;
                d * d * m
            })
            .sum();
        Moments { mean, variance }
    }

    pub fn mean(&self) -> f64 {
        self.moments().mean
    }

    pub fn variance(&self) -> f64 {
        self.moments().variance
    }

    /// Mass at counts `k >= eta`, where a non-integer `eta` rounds up.
    pub fn tail_ge(&self, eta: f64) -> f64 {
        match self.first_index_ge(eta) {
            None => self.stored_mass(),
            Some(i) if i >= self.masses.len() => 0.0,
            Some(i) => self.masses[i..].iter().sum(),
        }
    }

    /// Mass at counts `k < eta`; complement of [`tail_ge`](Self::tail_ge) over stored mass.
    pub fn head_lt(&self, eta: f64) -> f64 {
        match self.first_index_ge(eta) {
            None => 0.0,
            Some(i) => self.masses[..i.min(self.masses.len())].iter().sum(),
        }
    }

    /// Index into `masses` of the first count assigned to outcome 1, or
    /// `None` when the threshold sits at or below the offset.
    fn first_index_ge(&self, eta: f64) -> Option<usize> {
        let cut = eta.ceil();
        if cut <= self.offset as f64 {
            return None;
        }
        if cut >= self.end() as f64 {
            return Some(self.masses.len());
        }
        Some(cut as usize - self.offset)
    }

    pub fn convolve(&self, other: &Self) -> Self {
        convolve_with(self, other, ConvolutionMethod::Auto)
    }

    /// `n`-fold self-convolution by repeated squaring. `n = 0` gives the
    /// point mass at zero.
    pub fn n_fold(&self, n: usize) -> Self {
        n_fold_convolve(self, n)
    }

    /// Weighted sum `Σ wᵢ dᵢ`. Weight missing from `Σ wᵢ = 1` is booked as
    /// truncation loss, so callers may skip negligible components.
    pub fn mixture<'a, I>(components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, &'a DiscreteDist)>,
    {
        let components: Vec<(f64, &DiscreteDist)> = components.into_iter().collect();
        if components.is_empty() {
            return Err(validation("mixture needs at least one component"));
        }
        let weight_sum: f64 = components.iter().map(|(w, _)| w).sum();
        if components.iter().any(|(w, _)| !w.is_finite() || *w < 0.0)
            || weight_sum > 1.0 + NORMALIZATION_TOL
        {
            return Err(validation(format!(
                "mixture weights must be non-negative and sum to at most 1 (sum {weight_sum})"
            )));
        }
        let lo = components.iter().map(|(_, d)| d.offset).min().unwrap();
        let hi = components.iter().map(|(_, d)| d.end()).max().unwrap();
        let mut masses = vec![0.0; hi - lo];
        let mut loss = (1.0 - weight_sum).max(0.0);
        for (w, d) in &components {
            loss += w * d.truncation_loss;
            for (k, m) in d.iter() {
                masses[k - lo] += w * m;
            }
        }
        Self::new(lo, masses, loss)
    }
}

/// Poisson law `L_ω(k) = ωᵏ e^{-ω} / k!`, truncated so that at most
/// `TRIM_BUDGET` of mass is dropped.
///
/// Values are anchored at the mode in log space and extended outward by the
/// ratio recurrence, which stays accurate for ω in the thousands.
pub fn poisson_pmf(omega: f64) -> Result<DiscreteDist> {
    if !omega.is_finite() || omega < 0.0 {
        return Err(domain(format!("Poisson mean must be finite and >= 0 (got {omega})")));
    }
    if omega == 0.0 {
        return Ok(DiscreteDist::point_mass(0));
    }
    let mode = omega.floor() as usize;
    let ln_mode = mode as f64 * omega.ln() - omega - ln_gamma(mode as f64 + 1.0);
    let at_mode = ln_mode.exp();

    // Grow a window [lo, hi] around the mode, always taking the heavier
    // neighbour, until geometric bounds on both tails fit the budget.
    let mut right: Vec<f64> = vec![at_mode];
    let mut left: Vec<f64> = Vec::new();
    let mut total = at_mode;
    let (mut lo, mut hi) = (mode, mode);
    let mut next_left = if lo > 0 { at_mode * lo as f64 / omega } else { 0.0 };
    let mut next_right = at_mode * omega / (hi + 1) as f64;
    let tail_bounds = |lo: usize, hi: usize, next_left: f64, next_right: f64| {
        let left_tail = if lo == 0 { 0.0 } else { next_left / (1.0 - (lo - 1) as f64 / omega) };
        let right_tail = next_right / (1.0 - omega / (hi + 2) as f64);
        left_tail + right_tail
    };
    while right.len() + left.len() < MAX_SUPPORT
        && tail_bounds(lo, hi, next_left, next_right) > 0.5 * TRIM_BUDGET * total
    {
        if next_left >= next_right {
            left.push(next_left);
            total += next_left;
            lo -= 1;
            next_left = if lo > 0 { next_left * lo as f64 / omega } else { 0.0 };
        } else {
            right.push(next_right);
            total += next_right;
            hi += 1;
            next_right *= omega / (hi + 1) as f64;
        }
    }
    // Normalising by the accumulated total removes the rounding in the
    // log-gamma anchor; the tail bound is booked as truncation loss.
    let loss = (tail_bounds(lo, hi, next_left, next_right) / total).min(1.0);
    let scale = (1.0 - loss) / total;
    left.reverse();
    left.extend(right);
    left.iter_mut().for_each(|m| *m *= scale);
    DiscreteDist::new(lo, left, loss)
}

pub fn convolve(a: &DiscreteDist, b: &DiscreteDist) -> DiscreteDist {
    convolve_with(a, b, ConvolutionMethod::Auto)
}

/// Convolution with an explicit backend. The result offset is
/// `a.offset + b.offset`; tails are trimmed within `TRIM_BUDGET`.
pub fn convolve_with(a: &DiscreteDist, b: &DiscreteDist, method: ConvolutionMethod) -> DiscreteDist {
    let offset = a.offset + b.offset;
    let loss = a.truncation_loss + b.truncation_loss - a.truncation_loss * b.truncation_loss;
    // Shifting by a point mass is exact and must not re-trim.
    if a.masses.len() == 1 || b.masses.len() == 1 {
        let (scale, d) = if a.masses.len() == 1 { (a.masses[0], b) } else { (b.masses[0], a) };
        let masses = d.masses.iter().map(|m| m * scale).collect();
        return DiscreteDist {
            offset,
            masses,
            truncation_loss: loss,
        };
    }
    let out_len = a.masses.len() + b.masses.len() - 1;
    let use_fft = match method {
        ConvolutionMethod::Auto => out_len >= DIRECT_CONVOLUTION_LIMIT,
        ConvolutionMethod::Direct => false,
        ConvolutionMethod::Fft => true,
    };
    let raw = if use_fft {
        convolve_fft(&a.masses, &b.masses)
    } else {
        convolve_direct(&a.masses, &b.masses)
    };
    trimmed(offset, raw, loss)
}

fn convolve_direct(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (o, &y) in out[i..].iter_mut().zip(b) {
            *o += x * y;
        }
    }
    out
}

fn convolve_fft(a: &[f64], b: &[f64]) -> Vec<f64> {
    let out_len = a.len() + b.len() - 1;
    let size = out_len.next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(size);
    let inverse = planner.plan_fft_inverse(size);
    let pad = |v: &[f64]| {
        let mut buf: Vec<Complex<f64>> = v.iter().map(|&x| Complex::new(x, 0.0)).collect();
        buf.resize(size, Complex::new(0.0, 0.0));
        buf
    };
    let mut fa = pad(a);
    let mut fb = pad(b);
    forward.process(&mut fa);
    forward.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    inverse.process(&mut fa);
    let scale = 1.0 / size as f64;
    // Round-off leaves ~1e-17 noise in the tails, including tiny negatives.
    fa[..out_len].iter().map(|c| (c.re * scale).max(0.0)).collect()
}

/// Drops leading and trailing mass (at most half the budget per side), then
/// enforces the support cap.
fn trimmed(mut offset: usize, mut masses: Vec<f64>, mut loss: f64) -> DiscreteDist {
    let side_budget = 0.5 * TRIM_BUDGET;
    let mut dropped = 0.0;
    let mut start = 0;
    while start + 1 < masses.len() && dropped + masses[start] <= side_budget {
        dropped += masses[start];
        start += 1;
    }
    let mut end = masses.len();
    let mut dropped_right = 0.0;
    while end > start + 1 && dropped_right + masses[end - 1] <= side_budget {
        dropped_right += masses[end - 1];
        end -= 1;
    }
    while end - start > MAX_SUPPORT {
        if masses[start] <= masses[end - 1] {
            dropped += masses[start];
            start += 1;
        } else {
            dropped_right += masses[end - 1];
            end -= 1;
        }
    }
    loss += dropped + dropped_right;
    masses.truncate(end);
    masses.drain(..start);
    offset += start;
    DiscreteDist {
        offset,
        masses,
        truncation_loss: loss,
    }
}

pub fn n_fold_convolve(d: &DiscreteDist, n: usize) -> DiscreteDist {
    let mut result: Option<DiscreteDist> = None;
    let mut base = d.clone();
    let mut remaining = n;
    while remaining > 0 {
        if remaining & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => r.convolve(&base),
            });
        }
        remaining >>= 1;
        if remaining > 0 {
            base = base.convolve(&base);
        }
    }
    result.unwrap_or_else(|| DiscreteDist::point_mass(0))
}

/// Half the L1 distance over the union of stored supports.
pub fn tv_distance(a: &DiscreteDist, b: &DiscreteDist) -> f64 {
    let lo = a.offset.min(b.offset);
    let hi = a.end().max(b.end());
    let sum: f64 = (lo..hi).map(|k| (a.pmf(k) - b.pmf(k)).abs()).sum();
    (0.5 * sum).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn poisson_zero_is_point_mass() {
        let d = poisson_pmf(0.0).unwrap();
        assert_eq!(d.offset(), 0);
        assert_eq!(d.masses(), &[1.0]);
    }

    #[test]
    fn poisson_at_zero_count() {
        let d = poisson_pmf(1.0).unwrap();
        assert!(close(d.pmf(0), (-1.0f64).exp(), 1e-15));
        assert!(close(d.pmf(0), 0.3678794412, 1e-10));
    }

    #[test]
    fn poisson_rejects_bad_means() {
        assert!(poisson_pmf(-0.1).is_err());
        assert!(poisson_pmf(f64::NAN).is_err());
        assert!(poisson_pmf(f64::INFINITY).is_err());
    }

    #[test]
    fn poisson_moments_and_loss() {
        for &w in &[0.3, 3.5, 14.0, 140.0, 1400.0] {
            let d = poisson_pmf(w).unwrap();
            let m = d.moments();
            assert!(d.truncation_loss() <= 1e-12, "loss {}", d.truncation_loss());
            assert!(((m.mean - w) / w).abs() < 1e-9, "mean {} vs {w}", m.mean);
            assert!(((m.variance - w) / w).abs() < 1e-9, "var {} vs {w}", m.variance);
        }
    }

    #[test]
    fn point_mass_moments() {
        let m = DiscreteDist::point_mass(7).moments();
        assert_eq!((m.mean, m.variance), (7.0, 0.0));
    }

    #[test]
    fn convolve_with_zero_point_mass_is_identity() {
        let d = poisson_pmf(4.2).unwrap();
        let e = d.convolve(&DiscreteDist::point_mass(0));
        assert_eq!(d, e);
    }

    #[test]
    fn poisson_closure_under_convolution() {
        let c = poisson_pmf(2.0).unwrap().convolve(&poisson_pmf(3.0).unwrap());
        let l5 = poisson_pmf(5.0).unwrap();
        assert_eq!(c.offset(), 0);
        for k in 0..60 {
            assert!(close(c.pmf(k), l5.pmf(k), 1e-12), "k={k}");
        }
    }

    #[test]
    fn fft_and_direct_agree() {
        let a = poisson_pmf(900.0).unwrap();
        let b = poisson_pmf(1500.0).unwrap();
        let direct = convolve_with(&a, &b, ConvolutionMethod::Direct);
        let fft = convolve_with(&a, &b, ConvolutionMethod::Fft);
        let lo = direct.offset().min(fft.offset());
        let hi = direct.end().max(fft.end());
        for k in lo..hi {
            assert!(close(direct.pmf(k), fft.pmf(k), 1e-12), "k={k}");
        }
    }

    #[test]
    fn n_fold_zero_and_one() {
        let d = poisson_pmf(2.5).unwrap();
        assert_eq!(d.n_fold(0), DiscreteDist::point_mass(0));
        assert_eq!(d.n_fold(1), d);
    }

    #[test]
    fn n_fold_matches_scaled_poisson() {
        let d = poisson_pmf(1.75).unwrap().n_fold(6);
        let e = poisson_pmf(10.5).unwrap();
        for k in 0..80 {
            assert!(close(d.pmf(k), e.pmf(k), 1e-12));
        }
    }

    #[test]
    fn tail_edges() {
        let d = poisson_pmf(3.5).unwrap();
        assert!(close(d.tail_ge(0.0), 1.0 - d.truncation_loss(), 1e-12));
        assert!(close(d.tail_ge(-4.0), 1.0 - d.truncation_loss(), 1e-12));
        assert_eq!(d.tail_ge(1e6), 0.0);
        let shifted = DiscreteDist::from_masses(10, vec![0.25, 0.5, 0.25]).unwrap();
        assert_eq!(shifted.tail_ge(10.0), 1.0);
        assert_eq!(shifted.tail_ge(10.5), 0.75);
        assert_eq!(shifted.tail_ge(11.0), 0.75);
        assert_eq!(shifted.head_lt(11.0), 0.25);
        assert_eq!(shifted.tail_ge(13.0), 0.0);
    }

    #[test]
    fn tail_complement() {
        let d = poisson_pmf(17.3).unwrap();
        for eta in [-1.0, 0.0, 3.2, 17.0, 17.3, 40.9, 1000.0] {
            let s = d.tail_ge(eta) + d.head_lt(eta);
            assert!(close(s, 1.0 - d.truncation_loss(), 1e-12), "eta={eta}");
        }
    }

    #[test]
    fn tv_edges() {
        let d = poisson_pmf(6.0).unwrap();
        assert_eq!(tv_distance(&d, &d), 0.0);
        assert_eq!(
            tv_distance(&DiscreteDist::point_mass(2), &DiscreteDist::point_mass(5)),
            1.0
        );
    }

    #[test]
    fn constructor_validation() {
        assert!(DiscreteDist::new(0, vec![], 0.0).is_err());
        assert!(DiscreteDist::new(0, vec![0.5, -0.1, 0.6], 0.0).is_err());
        assert!(DiscreteDist::new(0, vec![0.5, 0.4], 0.0).is_err());
        assert!(DiscreteDist::new(0, vec![0.5, 0.4], 0.1).is_ok());
        assert!(DiscreteDist::from_masses(0, vec![0.7, 0.7]).is_err());
    }

    #[test]
    fn mixture_books_skipped_weight() {
        let a = DiscreteDist::point_mass(1);
        let b = DiscreteDist::point_mass(3);
        let m = DiscreteDist::mixture([(0.25, &a), (0.75 - 1e-15, &b)]).unwrap();
        assert_eq!(m.offset(), 1);
        assert_eq!(m.masses().len(), 3);
        assert!(close(m.truncation_loss(), 1e-15, 1e-16));
    }

    #[test]
    fn from_counts_strips_empty_bins() {
        let d = DiscreteDist::from_counts(&[0, 0, 1, 3, 0]).unwrap();
        assert_eq!(d.offset(), 2);
        assert_eq!(d.masses(), &[0.25, 0.75]);
        assert!(DiscreteDist::from_counts(&[0, 0]).is_err());
    }
}
