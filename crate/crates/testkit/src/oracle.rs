//! Reference implementations written as straight transcriptions of the
//! formulas. They use only the data types of `posterize`, never its kernels,
//! LUT or helpers.

use posterize::{BilateralParams, MembershipParams, Plane};

/// Scalar evaluation of membership, centre of gravity, nearest output and
/// rule firing for a single intensity.
pub fn oracle_quantize_value(p: u8, params: &MembershipParams) -> u8 {
    let m = params.values();
    let p = p as f64;

    let dark = if p < m.a_dr {
        1.0
    } else if m.a_dr <= p && p <= m.a_dr + m.b_dr {
        1.0 - (p - m.a_dr) / m.b_dr
    } else {
        0.0
    };

    let gray = if m.a_g - m.b_g <= p && p < m.a_g {
        1.0 - (m.a_g - p) / m.b_g
    } else if m.a_g <= p && p <= m.a_g + m.b_g {
        1.0 - (p - m.a_g) / m.b_g
    } else {
        0.0
    };

    let bright = if m.a_br - m.b_br <= p && p <= m.a_br {
        1.0 - (m.a_br - p) / m.b_br
    } else if p > m.a_br {
        1.0
    } else {
        0.0
    };

    let (vd, vg, vb) = (m.v_dr as f64, m.v_g as f64, m.v_br as f64);
    let sum = dark + gray + bright;
    let v0 = if sum == 0.0 {
        // uncovered intensity: output of the nearest centre, earlier label on ties
        let (ed, eg, eb) = ((p - m.a_dr).abs(), (p - m.a_g).abs(), (p - m.a_br).abs());
        if ed <= eg && ed <= eb {
            vd
        } else if eg <= eb {
            vg
        } else {
            vb
        }
    } else {
        (dark * vd + gray * vg + bright * vb) / sum
    };

    let (dd, dg, db) = ((v0 - vd).abs(), (v0 - vg).abs(), (v0 - vb).abs());
    if dd <= dg && dd <= db {
        m.v_dr
    } else if dg <= db {
        m.v_g
    } else {
        m.v_br
    }
}

/// Naive bilateral filter: for every pixel, every window offset, clamped
/// coordinates and freshly evaluated Gaussians. Window offsets are visited
/// row by row, left to right.
pub fn oracle_bilateral(src: &Plane, params: &BilateralParams) -> Plane {
    let w = src.width() as i64;
    let h = src.height() as i64;
    let r = params.radius() as i64;
    let ss = params.sigma_spatial();
    let sr = params.sigma_range();

    let mut out = Vec::with_capacity((w * h) as usize);
    for y in 0..h {
        for x in 0..w {
            let centre = src.get(x as usize, y as usize) as f64;
            let mut num = 0.0f64;
            let mut den = 0.0f64;
            for dy in -r..=r {
                for dx in -r..=r {
                    let sx = (x + dx).clamp(0, w - 1) as usize;
                    let sy = (y + dy).clamp(0, h - 1) as usize;
                    let value = src.get(sx, sy) as f64;
                    let dist2 = (dx * dx + dy * dy) as f64;
                    let spatial = (-dist2 / (2.0 * ss * ss)).exp();
                    let diff = centre - value;
                    let range = (-(diff * diff) / (2.0 * sr * sr)).exp();
                    let weight = spatial * range;
                    num += weight * value;
                    den += weight;
                }
            }
            let v = (num / den).round();
            out.push(v.clamp(0.0, 255.0) as u8);
        }
    }
    Plane::new(src.width(), src.height(), out).expect("same geometry as source")
}

#[cfg(test)]
mod tests {
    use super::*;
    use posterize::MembershipValues;

    #[test]
    fn quantize_examples() {
        let d = MembershipParams::default();
        assert_eq!(oracle_quantize_value(100, &d), 0);
        assert_eq!(oracle_quantize_value(127, &d), 127);
        assert_eq!(oracle_quantize_value(150, &d), 127);
        assert_eq!(oracle_quantize_value(200, &d), 255);
    }

    #[test]
    fn default_breakpoints() {
        // transitions from an offline evaluation of the same formulas
        let d = MembershipParams::default();
        let table: Vec<u8> = (0..=255).map(|p| oracle_quantize_value(p, &d)).collect();
        assert!(table[..=100].iter().all(|&v| v == 0));
        assert!(table[101..=152].iter().all(|&v| v == 127));
        assert!(table[153..].iter().all(|&v| v == 255));
    }

    #[test]
    fn fallback_uses_nearest_centre() {
        let p = MembershipParams::new(MembershipValues {
            a_dr: 20.0,
            b_dr: 10.0,
            a_g: 127.0,
            b_g: 27.0,
            a_br: 200.0,
            b_br: 20.0,
            ..MembershipValues::default()
        })
        .unwrap();
        assert_eq!(oracle_quantize_value(50, &p), 0);
        assert_eq!(oracle_quantize_value(90, &p), 127);
        assert_eq!(oracle_quantize_value(170, &p), 255);
    }

    #[test]
    fn bilateral_trivial_cases() {
        let params = BilateralParams::new(2.0, 10.0, 3).unwrap();
        let flat = Plane::filled(6, 4, 77).unwrap();
        assert_eq!(oracle_bilateral(&flat, &params), flat);
        let one = Plane::new(1, 1, vec![42]).unwrap();
        assert_eq!(oracle_bilateral(&one, &params), one);
    }
}
