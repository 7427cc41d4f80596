//! Golden regression cases.
//!
//! Each case lives in its own directory under `golden/`:
//!
//! ```text
//! golden/<name>/config.txt    pipeline settings (+ generator seed as a comment)
//! golden/<name>/input.pnm     input image
//! golden/<name>/expected.pnm  known-good output
//! golden/<name>/digest        SHA-256 of expected.pnm, hex
//! ```
//!
//! Set `BLESS_GOLDEN=1` when running the golden test to regenerate the files
//! from [`standard_cases`].

use std::fs;
use std::path::{Path, PathBuf};

use posterize::{posterize, read_pnm, write_pnm, ConfigOverrides, Effect, ImageU8, PipelineConfig};
use sha2::{Digest, Sha256};

use crate::gen;

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

#[derive(Debug, Clone)]
pub struct GoldenCase {
    pub name: String,
    pub input: ImageU8,
    pub config: PipelineConfig,
    pub expected_digest: String,
}

impl GoldenCase {
    /// Loads a case and checks that the stored output still hashes to the
    /// stored digest.
    pub fn load(dir: &Path) -> Result<Self, String> {
        let name = dir
            .file_name()
            .and_then(|n| n.to_str())
            .ok_or_else(|| format!("bad case directory {}", dir.display()))?
            .to_string();
        let read = |file: &str| fs::read(dir.join(file)).map_err(|e| format!("{name}/{file}: {e}"));

        let config_text = String::from_utf8(read("config.txt")?)
            .map_err(|e| format!("{name}/config.txt: {e}"))?;
        let config = ConfigOverrides::parse(&config_text)
            .map_err(|e| format!("{name}/config.txt: {e}"))?
            .resolve()
            .map_err(|e| format!("{name}/config.txt: {e}"))?;
        let input = read_pnm(&read("input.pnm")?).map_err(|e| format!("{name}/input.pnm: {e}"))?;
        let expected_digest = String::from_utf8(read("digest")?)
            .map_err(|e| format!("{name}/digest: {e}"))?
            .trim()
            .to_string();
        let stored = digest(&read("expected.pnm")?);
        if stored != expected_digest {
            return Err(format!(
                "{name}: expected.pnm hashes to {stored}, digest file says {expected_digest}"
            ));
        }
        Ok(Self {
            name,
            input,
            config,
            expected_digest,
        })
    }

    /// Runs the pipeline on `threads` workers and compares output digests.
    pub fn check(&self, threads: usize) -> Result<(), String> {
        let cfg = PipelineConfig {
            threads,
            ..self.config.clone()
        };
        let out = posterize(&self.input, &cfg).map_err(|e| format!("{}: {e}", self.name))?;
        let got = digest(&write_pnm(&out));
        if got == self.expected_digest {
            Ok(())
        } else {
            Err(format!(
                "{} ({} threads): output digest {got}, expected {}",
                self.name, threads, self.expected_digest
            ))
        }
    }
}

/// Every case directory under `root`, sorted by name.
pub fn load_all(root: &Path) -> Result<Vec<GoldenCase>, String> {
    let mut dirs: Vec<PathBuf> = fs::read_dir(root)
        .map_err(|e| format!("{}: {e}", root.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_dir())
        .collect();
    dirs.sort();
    dirs.iter().map(|d| GoldenCase::load(d)).collect()
}

/// A generated case before its expected output is computed.
pub struct CaseSpec {
    pub name: &'static str,
    pub seed: u64,
    pub generator: &'static str,
    pub input: ImageU8,
    pub config: PipelineConfig,
}

pub fn standard_cases() -> Vec<CaseSpec> {
    let scene = |w, h, c, seed| gen::synthetic_scene(w, h, c, seed);
    let with = |f: fn(&mut PipelineConfig)| {
        let mut cfg = PipelineConfig::default();
        f(&mut cfg);
        cfg
    };
    vec![
        CaseSpec {
            name: "scene_rgb_default",
            seed: 11,
            generator: "synthetic_scene 40x30x3",
            input: scene(40, 30, 3, 11),
            config: PipelineConfig::default(),
        },
        CaseSpec {
            name: "scene_gray_default",
            seed: 12,
            generator: "synthetic_scene 40x30x1",
            input: scene(40, 30, 1, 12),
            config: PipelineConfig::default(),
        },
        CaseSpec {
            name: "scene_rgb_blend_0_3",
            seed: 13,
            generator: "synthetic_scene 32x32x3",
            input: scene(32, 32, 3, 13),
            config: with(|c| c.effect = Effect::blend(0.3).unwrap()),
        },
        CaseSpec {
            name: "scene_rgb_min",
            seed: 14,
            generator: "synthetic_scene 32x32x3",
            input: scene(32, 32, 3, 14),
            config: with(|c| c.effect = Effect::Min),
        },
        CaseSpec {
            name: "scene_rgb_max",
            seed: 15,
            generator: "synthetic_scene 32x32x3",
            input: scene(32, 32, 3, 15),
            config: with(|c| c.effect = Effect::Max),
        },
        CaseSpec {
            name: "noise_rgb_no_blur",
            seed: 16,
            generator: "random_image 24x16x3",
            input: gen::random_image(24, 16, 3, 16),
            config: with(|c| c.skip_blur = true),
        },
        CaseSpec {
            name: "scene_rgb_custom_params",
            seed: 17,
            generator: "synthetic_scene 36x28x3",
            input: scene(36, 28, 3, 17),
            config: ConfigOverrides::parse(
                "a_dr = 60\nb_dr = 35\na_g = 120\nb_g = 40\na_br = 190\nb_br = 45\n\
                 v_dr = 20\nv_g = 110\nv_br = 235\n\
                 sigma_spatial = 1.5\nsigma_range = 18\nradius = 4\n",
            )
            .expect("static config")
            .resolve()
            .expect("valid static config"),
        },
    ]
}

/// Writes `spec` and its current pipeline output as a golden case.
pub fn bless(root: &Path, spec: &CaseSpec) -> Result<(), String> {
    let dir = root.join(spec.name);
    fs::create_dir_all(&dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let out = posterize(&spec.input, &spec.config).map_err(|e| e.to_string())?;
    let expected = write_pnm(&out);
    let config = format!(
        "# generator: {}, seed = {}\n{}",
        spec.generator,
        spec.seed,
        spec.config.to_config_text()
    );
    let files: [(&str, Vec<u8>); 4] = [
        ("config.txt", config.into_bytes()),
        ("input.pnm", write_pnm(&spec.input)),
        ("digest", format!("{}\n", digest(&expected)).into_bytes()),
        ("expected.pnm", expected),
    ];
    for (file, bytes) in files {
        fs::write(dir.join(file), bytes).map_err(|e| format!("{}/{file}: {e}", dir.display()))?;
    }
    Ok(())
}
