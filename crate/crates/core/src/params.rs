//! Sampling constants and enumeration knobs.
//!
//! Defaults are the constants the algorithms are proven with. At small `n`
//! they push every probability to 1, so each constant that multiplies `ln n`
//! is additionally multiplied by `scale`.

#[derive(Clone, Debug, PartialEq)]
pub struct Constants {
    /// Global multiplier applied to every `ln n` sampling constant.
    pub scale: f64,
    /// `80` in the uniform subsampling probability `80 ln n / (eps^2 c)`.
    pub uniform_subsample: f64,
    /// `40` in the concentration probability `40 ln n / (eps^2 c)`.
    pub concentration: f64,
    /// `100 * 40` in the strength-estimation rate `q_j = 4000 ln n / kappa_j`.
    pub strength_subsample: f64,
    /// Fraction `4/5` of `q_j * kappa_j` below which cuts are removed.
    pub removal_fraction: f64,
    /// Factor `2` in the sparsifier rate `2 q_j / eps^2`.
    pub sparsifier_factor: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self {
            scale: 1.0,
            uniform_subsample: 80.0,
            concentration: 40.0,
            strength_subsample: 4000.0,
            removal_fraction: 0.8,
            sparsifier_factor: 2.0,
        }
    }
}

impl Constants {
    pub fn scaled(scale: f64) -> Self {
        Self { scale, ..Self::default() }
    }

    /// `min(scale * 80 ln n / (eps^2 c), 1)`.
    pub fn uniform_probability(&self, n: usize, epsilon: f64, c: f64) -> f64 {
        clamp_probability(self.scale * self.uniform_subsample * ln(n) / (epsilon * epsilon * c))
    }

    /// `min(scale * 40 ln n / (eps^2 c), 1)`.
    pub fn concentration_probability(&self, n: usize, epsilon: f64, c: f64) -> f64 {
        clamp_probability(self.scale * self.concentration * ln(n) / (epsilon * epsilon * c))
    }

    /// `q_j = min(scale * 4000 ln n / kappa, 1)`.
    pub fn strength_probability(&self, n: usize, kappa: f64) -> f64 {
        clamp_probability(self.scale * self.strength_subsample * ln(n) / kappa)
    }

    /// `min(2 q / eps^2, 1)`.
    pub fn sparsifier_probability(&self, q: f64, epsilon: f64) -> f64 {
        clamp_probability(self.sparsifier_factor * q / (epsilon * epsilon))
    }
}

pub(crate) fn ln(n: usize) -> f64 {
    (n.max(2) as f64).ln()
}

fn clamp_probability(p: f64) -> f64 {
    if p.is_nan() || p >= 1.0 {
        1.0
    } else {
        p.max(0.0)
    }
}

/// Controls how near-minimum cuts are enumerated.
#[derive(Clone, Debug, PartialEq)]
pub struct EnumerationConfig {
    /// After sound pre-contraction, graphs with at most this many nodes are
    /// enumerated exhaustively.
    pub exhaustive_limit: usize,
    /// Up to this many nodes, exact flow-bounded branching is used.
    pub branching_limit: usize,
    /// Number of recursive-contraction runs for larger graphs; `None` picks
    /// `2 ceil(log2 k)`.
    pub contraction_runs: Option<usize>,
    /// Enumeration stops once more than this many cuts are found.
    pub max_cuts: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self { exhaustive_limit: 20, branching_limit: 48, contraction_runs: None, max_cuts: 1 << 12 }
    }
}
