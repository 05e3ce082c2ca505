//! Switching panels between contact modes.
//!
//! Treat the contact label as a continuous coordinate `beta` in `[-1, 1]`
//! that blends the two modes' connections: `beta = -1` is pure mode `i`,
//! `beta = +1` pure mode `j`, and in between a smooth interpolation profile
//! weighs the two. Swinging the rotor while blended moves the body; moving
//! `beta` alone never does, so the blended connection's `beta` column is
//! identically zero.
//!
//! The curl of this blended connection over the `(alpha, beta)` sheet
//! collapses, once integrated across `beta`, to a one-dimensional panel
//! density
//!
//! ```text
//! dz_ij(alpha) = A_j(alpha) - A_i(alpha)
//! ```
//!
//! whose integral over an `alpha` interval equals the displacement of the
//! counter-clockwise cycle that swings forward pinned in mode `i`, switches
//! to mode `j`, swings back, and switches home. Every cyclic gait's
//! displacement is a signed sum of such panel integrals.

use nalgebra::Vector2;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

use crate::kinematics::{ContactMode, SpecError, SystemSpec};

#[derive(Debug, Error, PartialEq)]
pub enum PanelError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("degenerate mode pair ({0}, {0}); panels need two distinct modes")]
    SameMode(ContactMode),
    #[error("blend coordinate {0} is outside [-1, 1]")]
    BetaOutOfRange(f64),
    #[error("grid needs at least 2 samples per axis, got {n} on the {axis} axis")]
    GridTooCoarse { axis: &'static str, n: usize },
    #[error("alpha {0} is outside the rotor swing range")]
    AlphaOutOfBounds(f64),
    #[error("invalid interpolation profile: {0}")]
    InvalidProfile(String),
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Smooth blend between two contact modes' connections.
///
/// Holds the weight `c1(beta)` of the first mode and its derivative;
/// the second mode's weight is `c2 = 1 - c1`. A profile must satisfy
/// `c1(-1) = 1` and `c1(1) = 0` and be differentiable on `[-1, 1]`.
#[derive(Clone)]
pub struct InterpolationProfile {
    name: String,
    c1: ScalarFn,
    c1_prime: ScalarFn,
}

impl InterpolationProfile {
    /// Cosine easing: `c1(beta) = (1 + cos(pi/2 * (beta + 1))) / 2`.
    ///
    /// Flat at both ends, so blended swings start and stop without a kink.
    pub fn cosine() -> Self {
        InterpolationProfile {
            name: "cosine".to_string(),
            c1: Arc::new(|beta| 0.5 * (1.0 + (FRAC_PI_2 * (beta + 1.0)).cos())),
            c1_prime: Arc::new(|beta| -FRAC_PI_4 * (FRAC_PI_2 * (beta + 1.0)).sin()),
        }
    }

    /// Straight-line blend: `c1(beta) = (1 - beta) / 2`.
    pub fn linear() -> Self {
        InterpolationProfile {
            name: "linear".to_string(),
            c1: Arc::new(|beta| 0.5 * (1.0 - beta)),
            c1_prime: Arc::new(|_| -0.5),
        }
    }

    /// Custom profile. `c1` must map `-1 -> 1` and `1 -> 0`; `c1_prime` is
    /// its derivative. Endpoint values are checked, differentiability is the
    /// caller's contract.
    pub fn new(
        name: impl Into<String>,
        c1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        c1_prime: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self, PanelError> {
        let profile = InterpolationProfile {
            name: name.into(),
            c1: Arc::new(c1),
            c1_prime: Arc::new(c1_prime),
        };
        let at_minus = profile.c1(-1.0);
        let at_plus = profile.c1(1.0);
        if !((at_minus - 1.0).abs() <= 1e-9 && at_plus.abs() <= 1e-9) {
            return Err(PanelError::InvalidProfile(format!(
                "c1 endpoints must be (1, 0), got ({at_minus}, {at_plus})"
            )));
        }
        for k in 0..=16 {
            let beta = -1.0 + 0.125 * k as f64;
            if !profile.c1(beta).is_finite() || !profile.c1_prime(beta).is_finite() {
                return Err(PanelError::InvalidProfile(format!(
                    "non-finite weight at beta = {beta}"
                )));
            }
        }
        Ok(profile)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Weight of the first mode.
    pub fn c1(&self, beta: f64) -> f64 {
        (self.c1)(beta)
    }

    /// Weight of the second mode; the weights always sum to one.
    pub fn c2(&self, beta: f64) -> f64 {
        1.0 - self.c1(beta)
    }

    pub fn c1_prime(&self, beta: f64) -> f64 {
        (self.c1_prime)(beta)
    }

    pub fn c2_prime(&self, beta: f64) -> f64 {
        -self.c1_prime(beta)
    }
}

impl fmt::Debug for InterpolationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InterpolationProfile")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

/// The default blend used throughout: [`InterpolationProfile::cosine`].
pub fn default_profile() -> InterpolationProfile {
    InterpolationProfile::cosine()
}

fn check_pair(spec: &SystemSpec, i: ContactMode, j: ContactMode) -> Result<(), PanelError> {
    spec.check_mode(i)?;
    spec.check_mode(j)?;
    if i == j {
        return Err(PanelError::SameMode(i));
    }
    Ok(())
}

/// Rotor-rate column of the blended connection between modes `i` and `j`:
/// `c1(beta) * A_i(alpha) + c2(beta) * A_j(alpha)`.
///
/// The blend coordinate's own column is identically zero (changing contact
/// in place does not move the body), so this vector is the whole story.
pub fn hybrid_connection(
    spec: &SystemSpec,
    i: ContactMode,
    j: ContactMode,
    alpha: f64,
    beta: f64,
    profile: &InterpolationProfile,
) -> Result<Vector2<f64>, PanelError> {
    check_pair(spec, i, j)?;
    if !(-1.0..=1.0).contains(&beta) {
        return Err(PanelError::BetaOutOfRange(beta));
    }
    Ok(blend(spec, i, j, alpha, beta, profile))
}

/// Unchecked blend used internally; tolerates `i == j` (the blend is then
/// just `A_i`, constant in `beta`).
fn blend(
    spec: &SystemSpec,
    i: ContactMode,
    j: ContactMode,
    alpha: f64,
    beta: f64,
    profile: &InterpolationProfile,
) -> Vector2<f64> {
    let a_i = spec.local_connection(i, alpha).expect("mode checked");
    if i == j {
        return a_i;
    }
    let a_j = spec.local_connection(j, alpha).expect("mode checked");
    profile.c1(beta) * a_i + profile.c2(beta) * a_j
}

/// Curl of the blended connection over the `(alpha, beta)` sheet, evaluated
/// analytically: `c1'(beta) * (A_i(alpha) - A_j(alpha))`.
///
/// The blend coordinate's column of the connection is identically zero, so
/// its `alpha` derivative contributes nothing and the curl reduces to the
/// `beta` derivative of the rotor-rate column.
pub fn curvature_analytic(
    spec: &SystemSpec,
    i: ContactMode,
    j: ContactMode,
    alpha: f64,
    beta: f64,
    profile: &InterpolationProfile,
) -> Result<Vector2<f64>, PanelError> {
    spec.check_mode(i)?;
    spec.check_mode(j)?;
    if !(-1.0..=1.0).contains(&beta) {
        return Err(PanelError::BetaOutOfRange(beta));
    }
    let a_i = spec.local_connection(i, alpha).expect("mode checked");
    let a_j = spec.local_connection(j, alpha).expect("mode checked");
    Ok(profile.c1_prime(beta) * (a_i - a_j))
}

/// Finite-difference curl values along one `alpha = const` column.
///
/// Second-order central differences inside, second-order one-sided stencils
/// at the `beta` edges. `betas` must be uniform with at least two nodes.
fn column_curl(
    spec: &SystemSpec,
    i: ContactMode,
    j: ContactMode,
    alpha: f64,
    betas: &[f64],
    profile: &InterpolationProfile,
) -> Vec<Vector2<f64>> {
    let n = betas.len();
    debug_assert!(n >= 2);
    if i == j {
        // Blending a mode with itself is the pure mode at every beta; the
        // beta-derivative is identically zero, not just zero up to stencil
        // rounding.
        return vec![Vector2::new(0.0, 0.0); n];
    }
    let h = betas[1] - betas[0];
    let f: Vec<Vector2<f64>> = betas
        .iter()
        .map(|&b| blend(spec, i, j, alpha, b, profile))
        .collect();
    let mut curl = Vec::with_capacity(n);
    if n == 2 {
        let d = (f[1] - f[0]) / h;
        return vec![d, d];
    }
    curl.push((-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h));
    for k in 1..n - 1 {
        curl.push((f[k + 1] - f[k - 1]) / (2.0 * h));
    }
    curl.push((3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h));
    curl
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n)
        .map(|k| {
            if k == 0 {
                lo
            } else if k == n - 1 {
                hi
            } else if lo == -hi {
                // Symmetric ranges sample symmetrically: the midpoint of an
                // odd count lands on exactly zero.
                hi * (2.0 * k as f64 / last - 1.0)
            } else {
                lo + (hi - lo) * (k as f64 / last)
            }
        })
        .collect()
}

/// Sampled curl of the blended connection over
/// `[-swing_bound, swing_bound] x [-1, 1]`.
///
/// Exists as a numerical cross-check of the closed-form panel density:
/// integrating a column across `beta` (see [`CurvatureGrid::strip_integral`])
/// must converge to [`StratifiedPanel::dz`] at second order in the `beta`
/// spacing.
#[derive(Debug, Clone)]
pub struct CurvatureGrid {
    alphas: Vec<f64>,
    betas: Vec<f64>,
    /// Node values, row-major: `curl[ai * n_beta + bi]`.
    curl: Vec<Vector2<f64>>,
}

impl CurvatureGrid {
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn n_alpha(&self) -> usize {
        self.alphas.len()
    }

    pub fn n_beta(&self) -> usize {
        self.betas.len()
    }

    /// Curl at node `(ai, bi)`.
    pub fn value(&self, ai: usize, bi: usize) -> Vector2<f64> {
        self.curl[ai * self.betas.len() + bi]
    }

    /// Trapezoid integral of the curl across `beta` at `alphas()[ai]`.
    pub fn strip_integral(&self, ai: usize) -> Vector2<f64> {
        let n = self.betas.len();
        let h = self.betas[1] - self.betas[0];
        let mut acc = 0.5 * (self.value(ai, 0) + self.value(ai, n - 1));
        for bi in 1..n - 1 {
            acc += self.value(ai, bi);
        }
        acc * h
    }
}

/// Build the curl grid for the mode pair `(i, j)` at the given resolution.
///
/// Accepts `i == j`, for which every value is zero. Needs at least two nodes
/// per axis.
pub fn curvature_grid(
    spec: &SystemSpec,
    i: ContactMode,
    j: ContactMode,
    profile: &InterpolationProfile,
    n_alpha: usize,
    n_beta: usize,
) -> Result<CurvatureGrid, PanelError> {
    spec.check_mode(i)?;
    spec.check_mode(j)?;
    if n_alpha < 2 {
        return Err(PanelError::GridTooCoarse { axis: "alpha", n: n_alpha });
    }
    if n_beta < 2 {
        return Err(PanelError::GridTooCoarse { axis: "beta", n: n_beta });
    }
    let alphas = linspace(-spec.swing_bound(), spec.swing_bound(), n_alpha);
    let betas = linspace(-1.0, 1.0, n_beta);
    let mut curl = Vec::with_capacity(n_alpha * n_beta);
    for &alpha in &alphas {
        curl.extend(column_curl(spec, i, j, alpha, &betas, profile));
    }
    Ok(CurvatureGrid { alphas, betas, curl })
}

/// One-off strip integral at a single `alpha`, without building a full grid:
/// finite-difference curl across `n_beta` nodes, integrated by trapezoid.
pub fn strip_integral(
    spec: &SystemSpec,
    i: ContactMode,
    j: ContactMode,
    alpha: f64,
    n_beta: usize,
    profile: &InterpolationProfile,
) -> Result<Vector2<f64>, PanelError> {
    spec.check_mode(i)?;
    spec.check_mode(j)?;
    if n_beta < 2 {
        return Err(PanelError::GridTooCoarse { axis: "beta", n: n_beta });
    }
    let betas = linspace(-1.0, 1.0, n_beta);
    let curl = column_curl(spec, i, j, alpha, &betas, profile);
    let h = betas[1] - betas[0];
    let mut acc = 0.5 * (curl[0] + curl[n_beta - 1]);
    for value in curl.iter().take(n_beta - 1).skip(1) {
        acc += *value;
    }
    Ok(acc * h)
}

/// Closed-form panel density for an ordered mode pair.
///
/// `dz(alpha) = A_j(alpha) - A_i(alpha)` is what one radian of rotor travel
/// at `alpha` contributes to the displacement of the counter-clockwise cycle
/// that goes out pinned in `i` and returns pinned in `j`. Independent of the
/// interpolation profile: any valid blend integrates across `beta` to the
/// same density.
#[derive(Debug, Clone, PartialEq)]
pub struct StratifiedPanel {
    i: ContactMode,
    j: ContactMode,
    leg_length: f64,
    offset_i: f64,
    offset_j: f64,
}

impl StratifiedPanel {
    pub fn pair(&self) -> (ContactMode, ContactMode) {
        (self.i, self.j)
    }

    /// Panel density at rotor angle `alpha`.
    pub fn dz(&self, alpha: f64) -> Vector2<f64> {
        let r = self.leg_length;
        let (sin_i, cos_i) = (alpha + self.offset_i).sin_cos();
        let (sin_j, cos_j) = (alpha + self.offset_j).sin_cos();
        // A_j - A_i with A = (-r sin, r cos)
        Vector2::new(r * (sin_i - sin_j), r * (cos_j - cos_i))
    }

    /// Exact integral of the density over `[alpha_minus, alpha_plus]`:
    /// the displacement of the four-move cycle spanning that interval.
    pub fn displacement(&self, alpha_minus: f64, alpha_plus: f64) -> Vector2<f64> {
        let anti = |alpha: f64| {
            let r = self.leg_length;
            let (sin_i, cos_i) = (alpha + self.offset_i).sin_cos();
            let (sin_j, cos_j) = (alpha + self.offset_j).sin_cos();
            // antiderivative of dz: r*(cos_j - cos_i, sin_j - sin_i)
            Vector2::new(r * (cos_j - cos_i), r * (sin_j - sin_i))
        };
        anti(alpha_plus) - anti(alpha_minus)
    }
}

/// Panel for the ordered pair `(i, j)`; errors when the modes coincide or do
/// not belong to the walker.
pub fn stratified_panel(
    spec: &SystemSpec,
    i: ContactMode,
    j: ContactMode,
) -> Result<StratifiedPanel, PanelError> {
    check_pair(spec, i, j)?;
    let offsets = spec.leg_offsets();
    Ok(StratifiedPanel {
        i,
        j,
        leg_length: spec.leg_length(),
        offset_i: offsets[i.pinned_leg() - 1],
        offset_j: offsets[j.pinned_leg() - 1],
    })
}

/// Exact displacement of the counter-clockwise cycle over
/// `[alpha_minus, alpha_plus]` on the `(i, j)` panel: swing forward pinned in
/// `i`, switch to `j`, swing back, switch home. Signed in the interval: a
/// reversed interval negates the result.
pub fn panel_displacement(
    spec: &SystemSpec,
    i: ContactMode,
    j: ContactMode,
    alpha_minus: f64,
    alpha_plus: f64,
) -> Result<Vector2<f64>, PanelError> {
    let panel = stratified_panel(spec, i, j)?;
    for alpha in [alpha_minus, alpha_plus] {
        if !spec.alpha_in_bounds(alpha) {
            return Err(PanelError::AlphaOutOfBounds(alpha));
        }
    }
    Ok(panel.displacement(alpha_minus, alpha_plus))
}
