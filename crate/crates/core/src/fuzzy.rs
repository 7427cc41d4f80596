//! Three-tone quantization by fuzzy classification.
//!
//! Every intensity is fuzzified against three membership functions (a dark
//! left shoulder, a gray triangle and a bright right shoulder), defuzzified by
//! the centre of gravity of the constant rule outputs, and finally snapped to
//! the rule output nearest to that crisp value:
//!
//! ```text
//! v0    = (μ_dr·v_dr + μ_g·v_g + μ_br·v_br) / (μ_dr + μ_g + μ_br)
//! label = argmin_K |v0 − v_K|          (ties: Dark, then Gray, then Bright)
//! out   = v_label
//! ```
//!
//! The mapping only depends on the 8-bit input, so images are processed
//! through a 256-entry [`QuantizeLut`].

use rayon::prelude::*;

use crate::error::ParamError;
use crate::image::Plane;

/// Unvalidated membership constants, as read from a config file or flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipValues {
    /// Dark shoulder: saturated below `a_dr`, falls to 0 at `a_dr + b_dr`.
    pub a_dr: f64,
    pub b_dr: f64,
    /// Gray triangle apex and half-width.
    pub a_g: f64,
    pub b_g: f64,
    /// Bright shoulder: rises from `a_br - b_br`, saturated above `a_br`.
    pub a_br: f64,
    pub b_br: f64,
    pub v_dr: u8,
    pub v_g: u8,
    pub v_br: u8,
}

impl Default for MembershipValues {
    fn default() -> Self {
        Self {
            a_dr: 73.0,
            b_dr: 50.0,
            a_g: 127.0,
            b_g: 50.0,
            a_br: 177.0,
            b_br: 50.0,
            v_dr: 0,
            v_g: 127,
            v_br: 255,
        }
    }
}

/// Validated membership parameters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MembershipParams(MembershipValues);

impl MembershipParams {
    pub fn new(values: MembershipValues) -> Result<Self, ParamError> {
        let widths = [
            ("b_dr", values.b_dr),
            ("b_g", values.b_g),
            ("b_br", values.b_br),
        ];
        for (name, value) in widths {
            if !(value.is_finite() && value > 0.0) {
                return Err(ParamError::NotPositive { name, value });
            }
        }
        let centres = [
            ("a_dr", values.a_dr),
            ("a_g", values.a_g),
            ("a_br", values.a_br),
        ];
        for (name, value) in centres {
            if !(0.0..=255.0).contains(&value) {
                return Err(ParamError::OutOfRange { name, value });
            }
        }
        let MembershipValues {
            v_dr, v_g, v_br, ..
        } = values;
        if v_dr == v_g || v_g == v_br || v_dr == v_br {
            return Err(ParamError::OutputsNotDistinct(v_dr, v_g, v_br));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &MembershipValues {
        &self.0
    }

    pub fn output(&self, label: FuzzyLabel) -> u8 {
        match label {
            FuzzyLabel::Dark => self.0.v_dr,
            FuzzyLabel::Gray => self.0.v_g,
            FuzzyLabel::Bright => self.0.v_br,
        }
    }

    fn centre(&self, label: FuzzyLabel) -> f64 {
        match label {
            FuzzyLabel::Dark => self.0.a_dr,
            FuzzyLabel::Gray => self.0.a_g,
            FuzzyLabel::Bright => self.0.a_br,
        }
    }
}

/// Linguistic label of a pixel. Declaration order is the tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FuzzyLabel {
    Dark,
    Gray,
    Bright,
}

impl FuzzyLabel {
    pub const ALL: [FuzzyLabel; 3] = [FuzzyLabel::Dark, FuzzyLabel::Gray, FuzzyLabel::Bright];
}

pub fn mu_dark(p: f64, params: &MembershipParams) -> f64 {
    let MembershipValues {
        a_dr: a, b_dr: b, ..
    } = params.0;
    if p < a {
        1.0
    } else if p <= a + b {
        1.0 - (p - a) / b
    } else {
        0.0
    }
}

pub fn mu_gray(p: f64, params: &MembershipParams) -> f64 {
    let MembershipValues { a_g: a, b_g: b, .. } = params.0;
    if a - b <= p && p < a {
        1.0 - (a - p) / b
    } else if a <= p && p <= a + b {
        1.0 - (p - a) / b
    } else {
        0.0
    }
}

pub fn mu_bright(p: f64, params: &MembershipParams) -> f64 {
    let MembershipValues {
        a_br: a, b_br: b, ..
    } = params.0;
    if a - b <= p && p <= a {
        1.0 - (a - p) / b
    } else if p > a {
        1.0
    } else {
        0.0
    }
}

/// Centre of gravity of the three constant rule outputs.
///
/// Where no membership function covers `p` the crisp value is the output of
/// the label whose centre `a_K` is nearest to `p`.
pub fn defuzzify(p: f64, params: &MembershipParams) -> f64 {
    let (dr, g, br) = (mu_dark(p, params), mu_gray(p, params), mu_bright(p, params));
    let den = dr + g + br;
    if den > 0.0 {
        let v = params.values();
        (dr * f64::from(v.v_dr) + g * f64::from(v.v_g) + br * f64::from(v.v_br)) / den
    } else {
        let nearest = argmin_by(|label| (p - params.centre(label)).abs());
        f64::from(params.output(nearest))
    }
}

pub fn classify(p: f64, params: &MembershipParams) -> FuzzyLabel {
    let v0 = defuzzify(p, params);
    argmin_by(|label| (v0 - f64::from(params.output(label))).abs())
}

pub fn quantize_value(p: u8, params: &MembershipParams) -> u8 {
    params.output(classify(f64::from(p), params))
}

/// First label with the smallest key; later labels must be strictly smaller.
fn argmin_by(key: impl Fn(FuzzyLabel) -> f64) -> FuzzyLabel {
    let mut best = FuzzyLabel::Dark;
    let mut best_key = key(best);
    for label in [FuzzyLabel::Gray, FuzzyLabel::Bright] {
        let k = key(label);
        if k < best_key {
            best = label;
            best_key = k;
        }
    }
    best
}

/// The quantization rule tabulated over all 256 intensities.
#[derive(Clone, PartialEq)]
pub struct QuantizeLut {
    params: MembershipParams,
    table: [u8; 256],
}

impl QuantizeLut {
    pub fn new(params: MembershipParams) -> Self {
        let mut table = [0u8; 256];
        for (p, entry) in table.iter_mut().enumerate() {
            *entry = quantize_value(p as u8, &params);
        }
        Self { params, table }
    }

    pub fn params(&self) -> &MembershipParams {
        &self.params
    }

    pub fn table(&self) -> &[u8; 256] {
        &self.table
    }

    #[inline]
    pub fn map(&self, p: u8) -> u8 {
        self.table[p as usize]
    }

    /// Maps a sample buffer in place, in parallel.
    pub fn apply_in_place(&self, samples: &mut [u8]) {
        const CHUNK: usize = 1 << 16;
        samples.par_chunks_mut(CHUNK).for_each(|chunk| {
            for s in chunk {
                *s = self.table[*s as usize];
            }
        });
    }
}

impl std::fmt::Debug for QuantizeLut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuantizeLut")
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

pub fn build_lut(params: &MembershipParams) -> QuantizeLut {
    QuantizeLut::new(*params)
}

pub fn quantize_plane(src: &Plane, lut: &QuantizeLut) -> Plane {
    let mut data = src.data().to_vec();
    lut.apply_in_place(&mut data);
    Plane::new(src.width(), src.height(), data).expect("geometry unchanged")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn defaults() -> MembershipParams {
        MembershipParams::default()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn default_values() {
        let v = defaults().values().to_owned();
        assert_eq!((v.v_dr, v.v_g, v.v_br), (0, 127, 255));
        assert_eq!(
            (v.a_dr, v.b_dr, v.a_g, v.b_g, v.a_br, v.b_br),
            (73.0, 50.0, 127.0, 50.0, 177.0, 50.0)
        );
    }

    #[test]
    fn validation() {
        let ok = MembershipValues::default();
        assert!(MembershipParams::new(ok).is_ok());
        let err = |v| MembershipParams::new(v).unwrap_err();
        assert!(matches!(
            err(MembershipValues { b_g: 0.0, ..ok }),
            ParamError::NotPositive { name: "b_g", .. }
        ));
        assert!(matches!(
            err(MembershipValues {
                b_dr: f64::NAN,
                ..ok
            }),
            ParamError::NotPositive { .. }
        ));
        assert!(matches!(
            err(MembershipValues { a_br: 256.0, ..ok }),
            ParamError::OutOfRange { name: "a_br", .. }
        ));
        assert!(matches!(
            err(MembershipValues { a_dr: -1.0, ..ok }),
            ParamError::OutOfRange { .. }
        ));
        assert!(matches!(
            err(MembershipValues { v_g: 0, ..ok }),
            ParamError::OutputsNotDistinct(0, 0, 255)
        ));
    }

    #[test]
    fn dark_shoulder() {
        let p = defaults();
        assert_eq!(mu_dark(0.0, &p), 1.0);
        assert!(close(mu_dark(98.0, &p), 0.5));
        assert_eq!(mu_dark(123.0, &p), 0.0);
        assert_eq!(mu_dark(200.0, &p), 0.0);
    }

    #[test]
    fn gray_triangle() {
        let p = defaults();
        assert_eq!(mu_gray(127.0, &p), 1.0);
        assert_eq!(mu_gray(77.0, &p), 0.0);
        assert!(close(mu_gray(152.0, &p), 0.5));
        assert_eq!(mu_gray(10.0, &p), 0.0);
        assert_eq!(mu_gray(250.0, &p), 0.0);
    }

    #[test]
    fn bright_shoulder() {
        let p = defaults();
        assert_eq!(mu_bright(255.0, &p), 1.0);
        assert_eq!(mu_bright(127.0, &p), 0.0);
        assert!(close(mu_bright(152.0, &p), 0.5));
        assert_eq!(mu_bright(0.0, &p), 0.0);
    }

    #[test]
    fn breakpoints_are_continuous() {
        // both neighbouring branches agree at every breakpoint
        let p = defaults();
        let v = p.values();
        assert_eq!(mu_dark(v.a_dr, &p), 1.0);
        assert_eq!(mu_dark(v.a_dr + v.b_dr, &p), 0.0);
        assert_eq!(mu_gray(v.a_g - v.b_g, &p), 0.0);
        assert_eq!(mu_gray(v.a_g + v.b_g, &p), 0.0);
        assert_eq!(mu_bright(v.a_br - v.b_br, &p), 0.0);
        assert_eq!(mu_bright(v.a_br, &p), 1.0);
        for f in [mu_dark, mu_gray, mu_bright] {
            for bp in [
                v.a_dr,
                v.a_dr + v.b_dr,
                v.a_g - v.b_g,
                v.a_g,
                v.a_g + v.b_g,
                v.a_br - v.b_br,
                v.a_br,
            ] {
                let (l, m, r) = (f(bp - 1e-9, &p), f(bp, &p), f(bp + 1e-9, &p));
                assert!((l - m).abs() < 1e-6 && (r - m).abs() < 1e-6, "jump at {bp}");
            }
        }
    }

    #[test]
    fn defuzzify_examples() {
        let p = defaults();
        assert_eq!(defuzzify(127.0, &p), 127.0);
        assert_eq!(defuzzify(100.0, &p), 63.5);
        assert!(close(defuzzify(150.0, &p), 185.88));
    }

    #[test]
    fn defuzzify_falls_back_to_nearest_centre() {
        // gap between the dark shoulder (ends at 30) and the gray foot (starts at 100)
        let values = MembershipValues {
            a_dr: 20.0,
            b_dr: 10.0,
            a_g: 127.0,
            b_g: 27.0,
            a_br: 200.0,
            b_br: 20.0,
            ..MembershipValues::default()
        };
        let p = MembershipParams::new(values).unwrap();
        assert_eq!(
            mu_dark(50.0, &p) + mu_gray(50.0, &p) + mu_bright(50.0, &p),
            0.0
        );
        assert_eq!(defuzzify(50.0, &p), 0.0);
        assert_eq!(defuzzify(90.0, &p), 127.0);
        assert_eq!(classify(90.0, &p), FuzzyLabel::Gray);
        // equidistant from a_g=127 and a_br=200 inside the gap 154..180
        assert_eq!(defuzzify(163.5, &p), 127.0);
        assert_eq!(defuzzify(170.0, &p), 255.0);
    }

    #[test]
    fn classify_examples() {
        let p = defaults();
        assert_eq!(classify(200.0, &p), FuzzyLabel::Bright);
        assert_eq!(classify(100.0, &p), FuzzyLabel::Dark);
        assert_eq!(classify(150.0, &p), FuzzyLabel::Gray);
    }

    #[test]
    fn ties_resolve_in_label_order() {
        assert_eq!(argmin_by(|_| 1.0), FuzzyLabel::Dark);
        assert_eq!(
            argmin_by(|l| if l == FuzzyLabel::Dark { 2.0 } else { 1.0 }),
            FuzzyLabel::Gray
        );
        assert_eq!(
            argmin_by(|l| if l == FuzzyLabel::Bright { 0.0 } else { 1.0 }),
            FuzzyLabel::Bright
        );
    }

    #[test]
    fn quantize_examples() {
        let p = defaults();
        assert_eq!(quantize_value(100, &p), 0);
        assert_eq!(quantize_value(150, &p), 127);
        assert_eq!(quantize_value(200, &p), 255);
    }

    #[test]
    fn default_lut_shape() {
        let lut = build_lut(&defaults());
        assert_eq!((lut.map(0), lut.map(127), lut.map(255)), (0, 127, 255));
        assert!(lut.table().iter().all(|v| [0, 127, 255].contains(v)));
        // transitions computed with an independent scalar evaluation
        for p in 0..=255u8 {
            let expected = match p {
                0..=100 => 0,
                101..=152 => 127,
                _ => 255,
            };
            assert_eq!(lut.map(p), expected, "p={p}");
        }
    }

    #[test]
    fn quantize_plane_examples() {
        let lut = build_lut(&defaults());
        let src = Plane::filled(3, 3, 200).unwrap();
        assert_eq!(
            quantize_plane(&src, &lut),
            Plane::filled(3, 3, 255).unwrap()
        );

        let fixed = Plane::new(3, 1, vec![0, 127, 255]).unwrap();
        let before = fixed.clone();
        assert_eq!(quantize_plane(&fixed, &lut), fixed);
        assert_eq!(fixed, before);
    }

    #[test]
    fn partition_covers_every_intensity_under_defaults() {
        let p = defaults();
        for i in 0..=255 {
            let x = f64::from(i);
            assert!(
                mu_dark(x, &p) + mu_gray(x, &p) + mu_bright(x, &p) > 0.0,
                "gap at {i}"
            );
        }
    }

    fn arb_params() -> impl Strategy<Value = MembershipParams> {
        (
            (0.0f64..=255.0, 0.5f64..120.0),
            (0.0f64..=255.0, 0.5f64..120.0),
            (0.0f64..=255.0, 0.5f64..120.0),
            any::<[u8; 3]>(),
        )
            .prop_filter_map(
                "outputs must differ",
                |((a_dr, b_dr), (a_g, b_g), (a_br, b_br), [v_dr, v_g, v_br])| {
                    MembershipParams::new(MembershipValues {
                        a_dr,
                        b_dr,
                        a_g,
                        b_g,
                        a_br,
                        b_br,
                        v_dr,
                        v_g,
                        v_br,
                    })
                    .ok()
                },
            )
    }

    proptest! {
        #[test]
        fn memberships_are_bounded(params in arb_params()) {
            for i in 0..=255 {
                let x = f64::from(i);
                for mu in [mu_dark(x, &params), mu_gray(x, &params), mu_bright(x, &params)] {
                    prop_assert!((0.0..=1.0).contains(&mu));
                }
            }
        }

        #[test]
        fn lut_matches_scalar_rule(params in arb_params()) {
            let lut = build_lut(&params);
            let v = params.values();
            for p in 0..=255u8 {
                prop_assert_eq!(lut.map(p), quantize_value(p, &params));
                prop_assert!([v.v_dr, v.v_g, v.v_br].contains(&lut.map(p)));
            }
        }
    }
}
