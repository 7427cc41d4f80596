//! Binary PGM (`P5`) and PPM (`P6`) with maxval 255.
//!
//! Reading accepts any PNM-conformant header layout: tokens separated by
//! arbitrary whitespace, `#` comments running to the end of the line. Writing
//! always produces the canonical `P6\n{w} {h}\n255\n` form so that encoded
//! bytes are a stable function of the image.

use crate::error::PnmError;
use crate::image::ImageU8;

/// Decodes a binary PGM or PPM file.
pub fn read_pnm(bytes: &[u8]) -> Result<ImageU8, PnmError> {
    let magic = bytes.get(..2).unwrap_or(bytes);
    let channels = match magic {
        b"P5" => 1,
        b"P6" => 3,
        _ => {
            return Err(PnmError::BadMagic(
                String::from_utf8_lossy(magic).into_owned(),
            ))
        }
    };

    let mut header = HeaderReader { bytes, pos: 2 };
    let width = header.next_number("width")?;
    let height = header.next_number("height")?;
    let maxval = header.next_number("maxval")?;
    // exactly one whitespace byte separates maxval from the raster
    match bytes.get(header.pos) {
        Some(b) if b.is_ascii_whitespace() => header.pos += 1,
        Some(_) => return Err(PnmError::Header("missing whitespace after maxval".into())),
        None => {}
    }

    if width == 0 || height == 0 {
        return Err(crate::error::ImageError::ZeroDimension {
            width: width as usize,
            height: height as usize,
        }
        .into());
    }
    if maxval != 255 {
        return Err(PnmError::Maxval(maxval));
    }

    let (width, height) = (width as usize, height as usize);
    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or(crate::error::ImageError::TooLarge { width, height })?;
    let payload = &bytes[header.pos.min(bytes.len())..];
    if payload.len() < expected {
        return Err(PnmError::Truncated {
            expected,
            actual: payload.len(),
        });
    }
    Ok(ImageU8::new(
        width,
        height,
        channels,
        payload[..expected].to_vec(),
    )?)
}

/// Encodes an image with the canonical header followed by the raw samples.
pub fn write_pnm(img: &ImageU8) -> Vec<u8> {
    let magic = if img.is_color() { "P6" } else { "P5" };
    let header = format!("{magic}\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.data().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.data());
    out
}

struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderReader<'_> {
    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn next_number(&mut self, what: &str) -> Result<u32, PnmError> {
        let before = self.pos;
        self.skip_separators();
        if self.pos == before {
            return Err(PnmError::Header(format!(
                "expected whitespace before {what}"
            )));
        }
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PnmError::Header(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| PnmError::Header(format!("{what} out of range")))
    }
}
