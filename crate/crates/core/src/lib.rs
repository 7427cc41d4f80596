//! Three-tone image posterization.
//!
//! The image is pre-smoothed with a bilateral filter, every channel is then
//! classified pixel by pixel as dark, gray or bright with a small fuzzy rule
//! base, and each class is replaced by a fixed output tone. Optional
//! post-effects mix the result back with the original image.
//!
//! ```
//! use posterize::{posterize, ImageU8, PipelineConfig};
//!
//! let img = ImageU8::filled(8, 8, 3, 200).unwrap();
//! let out = posterize(&img, &PipelineConfig::default()).unwrap();
//! assert!(out.data().iter().all(|&v| v == 255));
//! ```

pub mod bilateral;
pub mod cli;
pub mod config;
pub mod effects;
pub mod error;
pub mod fuzzy;
pub mod image;
pub mod pipeline;
pub mod pnm;

pub use bilateral::{bilateral_image, bilateral_plane, BilateralParams, BorderPolicy};
pub use config::{ConfigOverrides, PipelineConfig};
pub use effects::{apply_effect, Alpha, Effect, EffectKind};
pub use error::{ConfigError, ImageError, ParamError, PipelineError, PnmError};
pub use fuzzy::{
    build_lut, classify, defuzzify, mu_bright, mu_dark, mu_gray, quantize_plane, quantize_value,
    FuzzyLabel, MembershipParams, MembershipValues, QuantizeLut,
};
pub use image::{ImageU8, Plane};
pub use pipeline::{
    count_distinct_colors, distinct_values_per_channel, posterize, quantize_image, with_threads,
};
pub use pnm::{read_pnm, write_pnm};
