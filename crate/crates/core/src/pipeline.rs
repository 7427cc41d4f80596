//! End-to-end posterization: bilateral pre-smoothing, fuzzy three-tone
//! quantization of each channel, then an optional post-effect against the
//! original image.

use std::borrow::Cow;

use rayon::prelude::*;

use crate::bilateral::bilateral_image;
use crate::config::PipelineConfig;
use crate::effects::apply_effect;
use crate::error::PipelineError;
use crate::fuzzy::{build_lut, QuantizeLut};
use crate::image::ImageU8;

/// Runs the full pipeline on `cfg.threads` workers (0 = machine default).
///
/// Output bytes do not depend on the thread count.
pub fn posterize(img: &ImageU8, cfg: &PipelineConfig) -> Result<ImageU8, PipelineError> {
    with_threads(cfg.threads, || posterize_on_current_pool(img, cfg))?
}

fn posterize_on_current_pool(
    img: &ImageU8,
    cfg: &PipelineConfig,
) -> Result<ImageU8, PipelineError> {
    let blurred = if cfg.skip_blur {
        Cow::Borrowed(img)
    } else {
        Cow::Owned(bilateral_image(img, &cfg.bilateral))
    };
    let lut = build_lut(&cfg.membership);
    let raw = quantize_image(&blurred, &lut);
    Ok(apply_effect(img, &raw, cfg.effect)?)
}

/// Quantizes every channel with the same table.
///
/// Because one table serves all channels, mapping the interleaved buffer
/// directly is the same as splitting, mapping each plane and merging.
pub fn quantize_image(img: &ImageU8, lut: &QuantizeLut) -> ImageU8 {
    let mut data = img.data().to_vec();
    lut.apply_in_place(&mut data);
    ImageU8::new(img.width(), img.height(), img.channels(), data).expect("geometry unchanged")
}

/// Runs `f` inside a dedicated pool of `threads` workers, or on the global
/// pool when `threads` is 0.
pub fn with_threads<T: Send>(
    threads: usize,
    f: impl FnOnce() -> T + Send,
) -> Result<T, PipelineError> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| PipelineError::ThreadPool(e.to_string()))?;
    Ok(pool.install(f))
}

/// Number of distinct pixel values: colour triples for RGB, scalars for gray.
pub fn count_distinct_colors(img: &ImageU8) -> usize {
    let c = img.channels();
    let key = |px: &[u8]| -> usize { px.iter().fold(0usize, |acc, &s| (acc << 8) | s as usize) };
    let bits = 1usize << (8 * c);
    let words = bits.div_ceil(64);
    // per-band bitmaps OR-ed together; union is order-independent
    let rows_per_band = (img.height() / rayon::current_num_threads().max(1)).max(16);
    let band_len = rows_per_band * img.row_stride();
    let seen = img
        .data()
        .par_chunks(band_len)
        .map(|band| {
            let mut set = vec![0u64; words];
            for px in band.chunks_exact(c) {
                let k = key(px);
                set[k / 64] |= 1 << (k % 64);
            }
            set
        })
        .reduce(
            || vec![0u64; words],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x |= y);
                a
            },
        );
    seen.iter().map(|w| w.count_ones() as usize).sum()
}

/// Distinct sample values found in each channel.
pub fn distinct_values_per_channel(img: &ImageU8) -> Vec<usize> {
    let c = img.channels();
    (0..c)
        .map(|k| {
            let mut seen = [false; 256];
            for &s in img.data().iter().skip(k).step_by(c) {
                seen[s as usize] = true;
            }
            seen.iter().filter(|&&b| b).count()
        })
        .collect()
}
