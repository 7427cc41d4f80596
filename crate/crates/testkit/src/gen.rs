//! Seeded input generators. `ChaCha8Rng` output is fixed for a given seed on
//! every platform, so generated rasters are reproducible from the seed alone.

use posterize::{ImageU8, MembershipParams, MembershipValues, Plane};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform noise.
pub fn random_image(width: usize, height: usize, channels: usize, seed: u64) -> ImageU8 {
    let mut rng = rng(seed);
    let data = (0..width * height * channels).map(|_| rng.gen()).collect();
    ImageU8::new(width, height, channels, data).expect("valid geometry")
}

pub fn random_plane(width: usize, height: usize, seed: u64) -> Plane {
    let mut rng = rng(seed);
    Plane::new(
        width,
        height,
        (0..width * height).map(|_| rng.gen()).collect(),
    )
    .expect("valid geometry")
}

/// Smooth gradients with a few hard-edged discs and light noise; closer to a
/// photograph than uniform noise, so blur and quantization both matter.
pub fn synthetic_scene(width: usize, height: usize, channels: usize, seed: u64) -> ImageU8 {
    let mut rng = rng(seed);
    let discs: Vec<(f64, f64, f64, [u8; 3])> = (0..4)
        .map(|_| {
            (
                rng.gen_range(0.0..width as f64),
                rng.gen_range(0.0..height as f64),
                rng.gen_range(2.0..(width.min(height) as f64 / 3.0).max(3.0)),
                rng.gen(),
            )
        })
        .collect();
    let tilt: [f64; 3] = rng.gen();
    let mut data = Vec::with_capacity(width * height * channels);
    for y in 0..height {
        for x in 0..width {
            let fx = x as f64 / width as f64;
            let fy = y as f64 / height as f64;
            let disc = discs
                .iter()
                .find(|(cx, cy, r, _)| (x as f64 - cx).powi(2) + (y as f64 - cy).powi(2) < r * r);
            for c in 0..channels {
                let base = match disc {
                    Some((_, _, _, colour)) => colour[c] as f64,
                    None => 255.0 * (tilt[c] * fx + (1.0 - tilt[c]) * fy),
                };
                let noisy = base + rng.gen_range(-12.0..12.0);
                data.push(noisy.round().clamp(0.0, 255.0) as u8);
            }
        }
    }
    ImageU8::new(width, height, channels, data).expect("valid geometry")
}

/// Valid membership parameters drawn at random: centres anywhere in
/// `[0, 255]`, half-widths in `[1, 120)`, distinct outputs.
pub fn random_membership(rng: &mut impl Rng) -> MembershipParams {
    loop {
        let values = MembershipValues {
            a_dr: rng.gen_range(0.0..=255.0),
            b_dr: rng.gen_range(1.0..120.0),
            a_g: rng.gen_range(0.0..=255.0),
            b_g: rng.gen_range(1.0..120.0),
            a_br: rng.gen_range(0.0..=255.0),
            b_br: rng.gen_range(1.0..120.0),
            v_dr: rng.gen(),
            v_g: rng.gen(),
            v_br: rng.gen(),
        };
        if let Ok(p) = MembershipParams::new(values) {
            return p;
        }
    }
}

/// Like [`random_membership`] but with integer centres and widths, which
/// makes breakpoints land exactly on sample values.
pub fn random_integer_membership(rng: &mut impl Rng) -> MembershipParams {
    loop {
        let values = MembershipValues {
            a_dr: rng.gen_range(0..=255) as f64,
            b_dr: rng.gen_range(1..120) as f64,
            a_g: rng.gen_range(0..=255) as f64,
            b_g: rng.gen_range(1..120) as f64,
            a_br: rng.gen_range(0..=255) as f64,
            b_br: rng.gen_range(1..120) as f64,
            v_dr: rng.gen(),
            v_g: rng.gen(),
            v_br: rng.gen(),
        };
        if let Ok(p) = MembershipParams::new(values) {
            return p;
        }
    }
}
