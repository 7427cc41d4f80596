//! Post-effects combining the original image `I` with the raw posterized
//! output `O`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{ImageError, ParamError};
use crate::image::ImageU8;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Effect {
    /// `O`
    #[default]
    Raw,
    /// `max(I, O)`
    Max,
    /// `min(I, O)`
    Min,
    /// `α·O + (1 − α)·I`
    Blend(Alpha),
}

impl Effect {
    pub fn blend(alpha: f64) -> Result<Self, ParamError> {
        Alpha::new(alpha).map(Effect::Blend)
    }

    pub fn kind(&self) -> EffectKind {
        match self {
            Effect::Raw => EffectKind::Raw,
            Effect::Max => EffectKind::Max,
            Effect::Min => EffectKind::Min,
            Effect::Blend(_) => EffectKind::Blend,
        }
    }
}

/// Blend weight in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(alpha: f64) -> Result<Self, ParamError> {
        if (0.0..=1.0).contains(&alpha) {
            Ok(Self(alpha))
        } else {
            Err(ParamError::Alpha(alpha))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EffectKind {
    Raw,
    Max,
    Min,
    Blend,
}

impl FromStr for EffectKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "raw" => Ok(EffectKind::Raw),
            "max" => Ok(EffectKind::Max),
            "min" => Ok(EffectKind::Min),
            "blend" => Ok(EffectKind::Blend),
            other => Err(format!(
                "unknown effect `{other}` (expected raw, min, max or blend)"
            )),
        }
    }
}

impl fmt::Display for EffectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EffectKind::Raw => "raw",
            EffectKind::Max => "max",
            EffectKind::Min => "min",
            EffectKind::Blend => "blend",
        })
    }
}

#[inline]
fn blend_sample(original: u8, posterized: u8, alpha: f64) -> u8 {
    let v = alpha * f64::from(posterized) + (1.0 - alpha) * f64::from(original);
    v.round().clamp(0.0, 255.0) as u8
}

pub fn apply_effect(
    original: &ImageU8,
    posterized: &ImageU8,
    effect: Effect,
) -> Result<ImageU8, ImageError> {
    if !original.same_shape(posterized) {
        return Err(ImageError::ShapeMismatch(format!(
            "original {}x{}x{} vs posterized {}x{}x{}",
            original.width(),
            original.height(),
            original.channels(),
            posterized.width(),
            posterized.height(),
            posterized.channels()
        )));
    }
    let combine: fn(u8, u8, f64) -> u8 = match effect {
        Effect::Raw => return Ok(posterized.clone()),
        Effect::Max => |i, o, _| i.max(o),
        Effect::Min => |i, o, _| i.min(o),
        Effect::Blend(_) => blend_sample,
    };
    let alpha = match effect {
        Effect::Blend(a) => a.get(),
        _ => 0.0,
    };

    let mut out = vec![0u8; original.data().len()];
    let stride = original.row_stride();
    out.par_chunks_mut(stride)
        .zip(original.data().par_chunks(stride))
        .zip(posterized.data().par_chunks(stride))
        .for_each(|((dst, i_row), o_row)| {
            for ((d, &i), &o) in dst.iter_mut().zip(i_row).zip(o_row) {
                *d = combine(i, o, alpha);
            }
        });
    ImageU8::new(
        original.width(),
        original.height(),
        original.channels(),
        out,
    )
}
