//! Edge-preserving pre-smoothing.
//!
//! Classical bilateral filter: each output sample is the average of its
//! `(2r+1)²` neighbourhood weighted by a spatial Gaussian of the pixel
//! distance times a range Gaussian of the intensity difference to the centre.
//!
//! The result is pinned to the bit: weights are evaluated in `f64` as
//! `exp(-d² / (2σ²))`, accumulated over the window in row-major order, and the
//! quotient is rounded half away from zero. Rows may be computed on any number
//! of threads without changing a single output byte.

use rayon::prelude::*;

use crate::error::ParamError;
use crate::image::{ImageU8, Plane};

/// How the window is extended past the image edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BorderPolicy {
    /// Clamp coordinates to the nearest valid pixel.
    #[default]
    Replicate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilateralParams {
    sigma_spatial: f64,
    sigma_range: f64,
    radius: usize,
    border: BorderPolicy,
}

impl BilateralParams {
    pub const DEFAULT_SIGMA_SPATIAL: f64 = 3.0;
    pub const DEFAULT_SIGMA_RANGE: f64 = 30.0;
    /// `ceil(3 * DEFAULT_SIGMA_SPATIAL)`
    pub const DEFAULT_RADIUS: usize = 9;

    pub fn new(sigma_spatial: f64, sigma_range: f64, radius: usize) -> Result<Self, ParamError> {
        if !(sigma_spatial.is_finite() && sigma_spatial > 0.0) {
            return Err(ParamError::NotPositive {
                name: "sigma_spatial",
                value: sigma_spatial,
            });
        }
        if !(sigma_range.is_finite() && sigma_range > 0.0) {
            return Err(ParamError::NotPositive {
                name: "sigma_range",
                value: sigma_range,
            });
        }
        if radius == 0 {
            return Err(ParamError::Radius(radius));
        }
        Ok(Self {
            sigma_spatial,
            sigma_range,
            radius,
            border: BorderPolicy::Replicate,
        })
    }

    pub fn sigma_spatial(&self) -> f64 {
        self.sigma_spatial
    }

    pub fn sigma_range(&self) -> f64 {
        self.sigma_range
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn border(&self) -> BorderPolicy {
        self.border
    }
}

impl Default for BilateralParams {
    fn default() -> Self {
        Self {
            sigma_spatial: Self::DEFAULT_SIGMA_SPATIAL,
            sigma_range: Self::DEFAULT_SIGMA_RANGE,
            radius: Self::DEFAULT_RADIUS,
            border: BorderPolicy::Replicate,
        }
    }
}

/// Precomputed weights for one parameter set.
struct Kernel {
    side: usize,
    /// Spatial weights in row-major window order.
    spatial: Vec<f64>,
    /// Range weight indexed by absolute intensity difference.
    range: [f64; 256],
}

impl Kernel {
    fn new(params: &BilateralParams) -> Self {
        let r = params.radius as i64;
        let side = 2 * params.radius + 1;
        let spatial_denom = 2.0 * params.sigma_spatial * params.sigma_spatial;
        let mut spatial = Vec::with_capacity(side * side);
        for dy in -r..=r {
            for dx in -r..=r {
                let d2 = (dx * dx + dy * dy) as f64;
                spatial.push((-d2 / spatial_denom).exp());
            }
        }
        let range_denom = 2.0 * params.sigma_range * params.sigma_range;
        let mut range = [0.0; 256];
        for (d, w) in range.iter_mut().enumerate() {
            let d = d as f64;
            *w = (-(d * d) / range_denom).exp();
        }
        Self {
            side,
            spatial,
            range,
        }
    }
}

/// Copy of `src` grown by `r` replicated pixels on every side.
fn pad_replicate(src: &Plane, r: usize) -> (Vec<u8>, usize) {
    let (w, h) = (src.width(), src.height());
    let pw = w + 2 * r;
    let mut out = Vec::with_capacity(pw * (h + 2 * r));
    for py in 0..h + 2 * r {
        let row = &src.data()[py.saturating_sub(r).min(h - 1) * w..][..w];
        out.extend(std::iter::repeat_n(row[0], r));
        out.extend_from_slice(row);
        out.extend(std::iter::repeat_n(row[w - 1], r));
    }
    (out, pw)
}

/// Filters a single channel.
pub fn bilateral_plane(src: &Plane, params: &BilateralParams) -> Plane {
    let kernel = Kernel::new(params);
    let (w, h) = (src.width(), src.height());
    let (padded, pw) = pad_replicate(src, params.radius);
    let r = params.radius;
    let side = kernel.side;

    let mut out = vec![0u8; w * h];
    out.par_chunks_mut(w).enumerate().for_each(|(y, row_out)| {
        for (x, dst) in row_out.iter_mut().enumerate() {
            let center = padded[(y + r) * pw + x + r];
            let mut num = 0.0f64;
            let mut den = 0.0f64;
            for wy in 0..side {
                let window_row = &padded[(y + wy) * pw + x..][..side];
                let spatial_row = &kernel.spatial[wy * side..][..side];
                for (&sample, &ws) in window_row.iter().zip(spatial_row) {
                    let weight = ws * kernel.range[center.abs_diff(sample) as usize];
                    num += weight * f64::from(sample);
                    den += weight;
                }
            }
            // den >= 1: the centre contributes exp(0) * exp(0)
            *dst = (num / den).round().clamp(0.0, 255.0) as u8;
        }
    });
    Plane::new(w, h, out).expect("output geometry matches input")
}

/// Filters every channel of `src` independently.
pub fn bilateral_image(src: &ImageU8, params: &BilateralParams) -> ImageU8 {
    let planes: Vec<Plane> = src
        .split_channels()
        .iter()
        .map(|p| bilateral_plane(p, params))
        .collect();
    ImageU8::merge_channels(&planes).expect("planes share the source geometry")
}
