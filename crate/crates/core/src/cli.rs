//! The `posterize` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;

use crate::config::ConfigOverrides;
use crate::effects::EffectKind;
use crate::image::ImageU8;
use crate::pipeline::{count_distinct_colors, posterize};
use crate::pnm::{read_pnm, write_pnm};

#[derive(Debug, Parser)]
#[command(
    name = "posterize",
    about = "Posterize an image to three tones per channel",
    version
)]
struct Args {
    /// Input image (.pgm, .ppm or .pnm; .png when built with the `png` feature)
    #[arg(long)]
    input: PathBuf,
    /// Output image; format chosen by extension
    #[arg(long)]
    output: PathBuf,
    /// `key = value` parameter file, overridden by flags
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(EffectKind))]
    effect: Option<EffectKind>,
    /// Blend weight of the posterized image, in [0, 1]
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    sigma_spatial: Option<f64>,
    #[arg(long)]
    sigma_range: Option<f64>,
    #[arg(long)]
    radius: Option<usize>,
    /// Skip bilateral pre-smoothing
    #[arg(long)]
    no_blur: bool,
    /// Worker threads (0 = all cores)
    #[arg(long)]
    threads: Option<usize>,
    /// Print `distinct_colors=<n>` for the output image
    #[arg(long)]
    report_colors: bool,
    /// Print `elapsed_ms=<n>` for the posterization step
    #[arg(long)]
    time: bool,
}

impl clap::builder::ValueParserFactory for EffectKind {
    type Parser = clap::builder::ValueParser;

    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<EffectKind>())
    }
}

/// Parses `args` (including the program name), runs the pipeline and returns
/// the process exit status. Report lines go to `out`, diagnostics to `err`.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "posterize: {}", first.trim_start_matches("error: "));
            return 2;
        }
    };
    match run(&args, out) {
        Ok(()) => 0,
        Err(msg) => {
            let _ = writeln!(err, "posterize: {msg}");
            1
        }
    }
}

fn run(args: &Args, out: &mut dyn Write) -> Result<(), String> {
    let file = match &args.params {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read params file {}: {e}", path.display()))?;
            ConfigOverrides::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => ConfigOverrides::default(),
    };
    let flags = ConfigOverrides {
        effect: args.effect,
        alpha: args.alpha,
        sigma_spatial: args.sigma_spatial,
        sigma_range: args.sigma_range,
        radius: args.radius,
        skip_blur: args.no_blur.then_some(true),
        threads: args.threads,
        ..Default::default()
    };
    let cfg = file
        .layer(flags)
        .resolve()
        .map_err(|e| format!("invalid parameter: {e}"))?;

    let img = load_image(&args.input)?;
    let start = Instant::now();
    let result = posterize(&img, &cfg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    save_image(&args.output, &result)?;

    if args.report_colors {
        let n = count_distinct_colors(&result);
        writeln!(out, "distinct_colors={n}").map_err(|e| e.to_string())?;
    }
    if args.time {
        writeln!(out, "elapsed_ms={}", elapsed.as_millis()).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn extension(path: &Path) -> String {
    path.extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase()
}

/// Reads an image, choosing the decoder from the file extension.
pub fn load_image(path: &Path) -> Result<ImageU8, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    match extension(path).as_str() {
        "pgm" | "ppm" | "pnm" => read_pnm(&bytes).map_err(|e| format!("{}: {e}", path.display())),
        "png" => png::decode(&bytes).map_err(|e| format!("{}: {e}", path.display())),
        other => Err(format!(
            "{}: unsupported input format `{other}`",
            path.display()
        )),
    }
}

/// Writes an image, choosing the encoder from the file extension.
pub fn save_image(path: &Path, img: &ImageU8) -> Result<(), String> {
    let bytes = match extension(path).as_str() {
        "pgm" | "ppm" | "pnm" => write_pnm(img),
        "png" => png::encode(img).map_err(|e| format!("{}: {e}", path.display()))?,
        other => {
            return Err(format!(
                "{}: unsupported output format `{other}`",
                path.display()
            ))
        }
    };
    std::fs::write(path, bytes).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

#[cfg(feature = "png")]
mod png {
    use crate::image::ImageU8;
    use image::{ColorType, DynamicImage, ImageFormat};

    pub fn decode(bytes: &[u8]) -> Result<ImageU8, String> {
        let decoded = image::load_from_memory_with_format(bytes, ImageFormat::Png)
            .map_err(|e| e.to_string())?;
        let (img, channels) = match decoded.color() {
            ColorType::L8 | ColorType::La8 | ColorType::L16 | ColorType::La16 => {
                let g = decoded.into_luma8();
                ((g.width(), g.height(), g.into_raw()), 1)
            }
            _ => {
                let c = decoded.into_rgb8();
                ((c.width(), c.height(), c.into_raw()), 3)
            }
        };
        ImageU8::new(img.0 as usize, img.1 as usize, channels, img.2).map_err(|e| e.to_string())
    }

    pub fn encode(img: &ImageU8) -> Result<Vec<u8>, String> {
        let (w, h) = (img.width() as u32, img.height() as u32);
        let dynamic = if img.is_color() {
            image::RgbImage::from_raw(w, h, img.data().to_vec()).map(DynamicImage::ImageRgb8)
        } else {
            image::GrayImage::from_raw(w, h, img.data().to_vec()).map(DynamicImage::ImageLuma8)
        }
        .ok_or("buffer size mismatch")?;
        let mut out = std::io::Cursor::new(Vec::new());
        dynamic
            .write_to(&mut out, ImageFormat::Png)
            .map_err(|e| e.to_string())?;
        Ok(out.into_inner())
    }
}

#[cfg(not(feature = "png"))]
mod png {
    use crate::image::ImageU8;

    const DISABLED: &str = "PNG support not compiled in (rebuild with --features png)";

    pub fn decode(_: &[u8]) -> Result<ImageU8, String> {
        Err(DISABLED.into())
    }

    pub fn encode(_: &ImageU8) -> Result<Vec<u8>, String> {
        Err(DISABLED.into())
    }
}
