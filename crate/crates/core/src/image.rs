//! 8-bit raster types shared by every stage of the pipeline.
//!
//! [`ImageU8`] stores samples interleaved (`RGBRGB...` or plain gray), which is
//! also the payload order of binary PNM. Fuzzy quantization works on single
//! channels, so [`Plane`]s are split out on demand and merged back afterwards.

use crate::error::ImageError;

/// An interleaved 8-bit image with one (gray) or three (color) channels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ImageU8 {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<u8>,
}

impl ImageU8 {
    /// Wraps an interleaved sample buffer, checking its length against the
    /// declared geometry.
    pub fn new(
        width: usize,
        height: usize,
        channels: usize,
        data: Vec<u8>,
    ) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension { width, height });
        }
        if channels != 1 && channels != 3 {
            return Err(ImageError::UnsupportedChannels(channels));
        }
        let expected = width
            .checked_mul(height)
            .and_then(|n| n.checked_mul(channels))
            .ok_or(ImageError::TooLarge { width, height })?;
        if data.len() != expected {
            return Err(ImageError::BufferLength {
                expected,
                actual: data.len(),
            });
        }
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    /// An image with every sample set to `value`.
    pub fn filled(
        width: usize,
        height: usize,
        channels: usize,
        value: u8,
    ) -> Result<Self, ImageError> {
        let len = width
            .checked_mul(height)
            .and_then(|n| n.checked_mul(channels))
            .ok_or(ImageError::TooLarge { width, height })?;
        Self::new(width, height, channels, vec![value; len])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn is_color(&self) -> bool {
        self.channels == 3
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    /// Number of samples in one row (`width * channels`).
    pub fn row_stride(&self) -> usize {
        self.width * self.channels
    }

    /// True when both images have the same width, height and channel count.
    pub fn same_shape(&self, other: &ImageU8) -> bool {
        self.width == other.width && self.height == other.height && self.channels == other.channels
    }

    /// Splits the interleaved buffer into one plane per channel.
    pub fn split_channels(&self) -> Vec<Plane> {
        if self.channels == 1 {
            return vec![Plane {
                width: self.width,
                height: self.height,
                data: self.data.clone(),
            }];
        }
        (0..self.channels)
            .map(|k| Plane {
                width: self.width,
                height: self.height,
                data: self
                    .data
                    .iter()
                    .skip(k)
                    .step_by(self.channels)
                    .copied()
                    .collect(),
            })
            .collect()
    }

    /// Interleaves one or three equally sized planes into an image.
    pub fn merge_channels(planes: &[Plane]) -> Result<Self, ImageError> {
        let first = match planes {
            [p] | [p, _, _] => p,
            _ => return Err(ImageError::UnsupportedChannels(planes.len())),
        };
        if let Some(bad) = planes
            .iter()
            .find(|p| p.width != first.width || p.height != first.height)
        {
            return Err(ImageError::PlaneMismatch {
                expected: (first.width, first.height),
                actual: (bad.width, bad.height),
            });
        }
        let channels = planes.len();
        let data = if channels == 1 {
            first.data.clone()
        } else {
            let mut data = Vec::with_capacity(first.data.len() * channels);
            for i in 0..first.data.len() {
                data.extend(planes.iter().map(|p| p.data[i]));
            }
            data
        };
        Self::new(first.width, first.height, channels, data)
    }
}

impl std::fmt::Debug for ImageU8 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ImageU8")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("channels", &self.channels)
            .field("len", &self.data.len())
            .finish()
    }
}

/// A single 8-bit channel, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Plane {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl Plane {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension { width, height });
        }
        let expected = width
            .checked_mul(height)
            .ok_or(ImageError::TooLarge { width, height })?;
        if data.len() != expected {
            return Err(ImageError::BufferLength {
                expected,
                actual: data.len(),
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self, ImageError> {
        let len = width
            .checked_mul(height)
            .ok_or(ImageError::TooLarge { width, height })?;
        Self::new(width, height, vec![value; len])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    /// Sample at column `x`, row `y`. Panics when out of bounds.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.data[y * self.width + x]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, u8> {
        self.data.chunks_exact(self.width)
    }
}

impl std::fmt::Debug for Plane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Plane")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("len", &self.data.len())
            .finish()
    }
}
