//! Adaptive composite Gauss–Legendre quadrature.
//!
//! [`integrate_family`] integrates a whole family of integrands that share
//! one panel subdivision, which is what the decaying-Poisson pmf needs: one
//! integral per photon count, all smooth in the same variable.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// `n`-point rule; nodes found by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone)]
pub struct QuadratureOptions {
    /// Relative accuracy demanded of every member of the family.
    pub rel_tol: f64,
    /// Nodes per panel.
    pub order: usize,
    /// Uniform panels before refinement.
    pub initial_panels: usize,
    /// Refinement stops once this many panels exist.
    pub max_panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            order: 10,
            initial_panels: 8,
            max_panels: 20_000,
        }
    }
}

/// Integrates `len` integrands over `[a, b]`. `eval(x, out)` must write the
/// value of every integrand at `x` into `out`.
///
/// Each panel is compared against its two halves; a panel is split while any
/// member's error estimate exceeds its share (by width) of
/// `rel_tol · |integral|`.
pub fn integrate_family<F>(eval: F, len: usize, a: f64, b: f64, opts: &QuadratureOptions) -> Vec<f64>
where
    F: Fn(f64, &mut [f64]),
{
    if len == 0 || a == b {
        return vec![0.0; len];
    }
    let rule = GaussLegendre::new(opts.order);
    let mut scratch = vec![0.0; len];
    let mut panel_sum = |lo: f64, hi: f64, out: &mut [f64]| {
        out.iter_mut().for_each(|o| *o = 0.0);
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (x, w) in rule.nodes().iter().zip(rule.weights()) {
            eval(mid + half * x, &mut scratch);
            for (o, v) in out.iter_mut().zip(&scratch) {
                *o += w * half * v;
            }
        }
    };

    struct Panel {
        lo: f64,
        hi: f64,
        fine: Vec<f64>,
        err: Vec<f64>,
    }
    let mut evaluate = |lo: f64, hi: f64| {
        let mid = 0.5 * (lo + hi);
        let mut whole = vec![0.0; len];
        let mut left = vec![0.0; len];
        let mut right = vec![0.0; len];
        panel_sum(lo, hi, &mut whole);
        panel_sum(lo, mid, &mut left);
        panel_sum(mid, hi, &mut right);
        let fine: Vec<f64> = left.iter().zip(&right).map(|(l, r)| l + r).collect();
        let err = fine.iter().zip(&whole).map(|(f, w)| (f - w).abs()).collect();
        Panel { lo, hi, fine, err }
    };

    let width = b - a;
    let n0 = opts.initial_panels.max(1);
    let mut panels: Vec<Panel> = (0..n0)
        .map(|i| {
            let lo = a + width * i as f64 / n0 as f64;
            let hi = if i + 1 == n0 { b } else { a + width * (i + 1) as f64 / n0 as f64 };
            evaluate(lo, hi)
        })
        .collect();

    loop {
        let mut totals = vec![0.0; len];
        for p in &panels {
            for (t, f) in totals.iter_mut().zip(&p.fine) {
                *t += f;
            }
        }
        if panels.len() >= opts.max_panels {
            return totals;
        }
        let needs_split = |p: &Panel| {
            let share = ((p.hi - p.lo) / width).abs();
            p.err
                .iter()
                .zip(&totals)
                .any(|(e, t)| *e > opts.rel_tol * t.abs() * share && *e > f64::MIN_POSITIVE)
        };
        let (split, keep): (Vec<Panel>, Vec<Panel>) = panels.into_iter().partition(needs_split);
        if split.is_empty() {
            return totals;
        }
        panels = keep;
        for p in split {
            let mid = 0.5 * (p.lo + p.hi);
            panels.push(evaluate(p.lo, mid));
            panels.push(evaluate(mid, p.hi));
        }
        panels.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    }
}

/// Scalar convenience wrapper around [`integrate_family`].
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, opts: &QuadratureOptions) -> f64 {
    integrate_family(|x, out| out[0] = f(x), 1, a, b, opts)[0]
}
