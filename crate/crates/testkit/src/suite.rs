//! Seeded sweep over every invariant of the pipeline.

use std::fmt;

use posterize::{
    apply_effect, bilateral_plane, build_lut, count_distinct_colors, distinct_values_per_channel,
    mu_bright, mu_dark, mu_gray, posterize, quantize_value, read_pnm, write_pnm, BilateralParams,
    Effect, MembershipParams, PipelineConfig, Plane,
};
use rand::Rng;

use crate::gen;
use crate::golden::digest;
use crate::oracle::{oracle_bilateral, oracle_quantize_value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LutFault {
    pub index: u8,
    pub value: u8,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Overwrites one entry of every table checked by the LUT equivalence
    /// property, to prove the property can fail.
    pub lut_fault: Option<LutFault>,
    /// Thread counts for the determinism property.
    pub thread_counts: Vec<usize>,
}

impl SuiteOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            lut_fault: None,
            thread_counts: vec![1, 2, 8],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    /// `None` on success, otherwise the first counterexample.
    pub failure: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, Default)]
pub struct PropertyReport {
    pub outcomes: Vec<PropertyOutcome>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(PropertyOutcome::passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.failure {
                None => writeln!(f, "PASS {}", o.name)?,
                Some(why) => writeln!(f, "FAIL {}: {why}", o.name)?,
            }
        }
        Ok(())
    }
}

type Check = Result<(), String>;
type Property = (&'static str, fn(&SuiteOptions) -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn run_property_suite() -> PropertyReport {
    run_property_suite_with(&SuiteOptions::with_seed(0x5eed))
}

pub fn run_property_suite_with(opts: &SuiteOptions) -> PropertyReport {
    let props: [Property; 15] = [
        ("membership_bounded", membership_bounded),
        ("default_partition_coverage", default_partition_coverage),
        ("quantize_codomain", quantize_codomain),
        ("lut_oracle_equivalence", lut_oracle_equivalence),
        ("default_fixed_points", default_fixed_points),
        ("default_idempotence", default_idempotence),
        ("default_monotonicity", default_monotonicity),
        ("bilateral_oracle_equivalence", bilateral_oracle_equivalence),
        ("bilateral_range_containment", bilateral_range_containment),
        (
            "bilateral_constant_preservation",
            bilateral_constant_preservation,
        ),
        ("blend_betweenness", blend_betweenness),
        ("effects_algebra", effects_algebra),
        ("pnm_round_trip", pnm_round_trip),
        ("raw_color_bound", raw_color_bound),
        ("thread_determinism", thread_determinism),
    ];
    PropertyReport {
        outcomes: props
            .iter()
            .map(|(name, check)| PropertyOutcome {
                name,
                failure: check(opts).err(),
            })
            .collect(),
    }
}

fn fuzzed_params(opts: &SuiteOptions, salt: u64, n: usize) -> Vec<MembershipParams> {
    let mut rng = gen::rng(opts.seed ^ salt);
    let mut out = vec![MembershipParams::default()];
    for i in 0..n {
        out.push(if i % 2 == 0 {
            gen::random_membership(&mut rng)
        } else {
            gen::random_integer_membership(&mut rng)
        });
    }
    out
}

fn membership_bounded(opts: &SuiteOptions) -> Check {
    for params in fuzzed_params(opts, 1, 200) {
        for p in 0..=255 {
            let x = p as f64;
            for (label, mu) in [
                ("dark", mu_dark(x, &params)),
                ("gray", mu_gray(x, &params)),
                ("bright", mu_bright(x, &params)),
            ] {
                ensure((0.0..=1.0).contains(&mu), || {
                    format!("mu_{label}({p}) = {mu} for {params:?}")
                })?;
            }
        }
    }
    Ok(())
}

fn default_partition_coverage(_: &SuiteOptions) -> Check {
    let d = MembershipParams::default();
    for p in 0..=255 {
        let x = p as f64;
        let sum = mu_dark(x, &d) + mu_gray(x, &d) + mu_bright(x, &d);
        ensure(sum > 0.0, || format!("no membership at p={p}"))?;
    }
    Ok(())
}

fn quantize_codomain(opts: &SuiteOptions) -> Check {
    for params in fuzzed_params(opts, 2, 200) {
        let v = params.values();
        for p in 0..=255u8 {
            let q = quantize_value(p, &params);
            ensure([v.v_dr, v.v_g, v.v_br].contains(&q), || {
                format!("quantize({p}) = {q} for {params:?}")
            })?;
        }
    }
    Ok(())
}

fn lut_oracle_equivalence(opts: &SuiteOptions) -> Check {
    for params in fuzzed_params(opts, 3, 200) {
        let mut table = *build_lut(&params).table();
        if let Some(fault) = opts.lut_fault {
            table[fault.index as usize] = fault.value;
        }
        for p in 0..=255u8 {
            let want = oracle_quantize_value(p, &params);
            ensure(table[p as usize] == want, || {
                format!(
                    "lut[{p}] = {}, oracle {want} for {params:?}",
                    table[p as usize]
                )
            })?;
        }
    }
    Ok(())
}

fn default_fixed_points(_: &SuiteOptions) -> Check {
    let d = MembershipParams::default();
    for p in [0u8, 127, 255] {
        let q = quantize_value(p, &d);
        ensure(q == p, || format!("quantize({p}) = {q}"))?;
    }
    Ok(())
}

fn default_idempotence(_: &SuiteOptions) -> Check {
    let d = MembershipParams::default();
    for p in 0..=255u8 {
        let once = quantize_value(p, &d);
        let twice = quantize_value(once, &d);
        ensure(once == twice, || format!("p={p}: {once} then {twice}"))?;
    }
    Ok(())
}

fn default_monotonicity(_: &SuiteOptions) -> Check {
    let d = MembershipParams::default();
    for p in 1..=255u8 {
        let (a, b) = (quantize_value(p - 1, &d), quantize_value(p, &d));
        ensure(a <= b, || {
            format!("quantize({}) = {a} > quantize({p}) = {b}", p - 1)
        })?;
    }
    Ok(())
}

fn bilateral_grid() -> Vec<BilateralParams> {
    let mut grid = Vec::new();
    for ss in [1.0, 3.0] {
        for sr in [10.0, 30.0] {
            for r in [2, 5] {
                grid.push(BilateralParams::new(ss, sr, r).expect("valid grid"));
            }
        }
    }
    grid
}

fn bilateral_oracle_equivalence(opts: &SuiteOptions) -> Check {
    let mut rng = gen::rng(opts.seed ^ 4);
    for i in 0..6 {
        let (w, h) = (rng.gen_range(1..20), rng.gen_range(1..20));
        let plane = gen::random_plane(w, h, rng.gen());
        for params in bilateral_grid() {
            ensure(
                bilateral_plane(&plane, &params) == oracle_bilateral(&plane, &params),
                || format!("plane #{i} ({w}x{h}) differs from oracle with {params:?}"),
            )?;
        }
    }
    Ok(())
}

fn window_bounds(src: &Plane, x: usize, y: usize, r: usize) -> (u8, u8) {
    let (w, h) = (src.width() as i64, src.height() as i64);
    let r = r as i64;
    let mut lo = u8::MAX;
    let mut hi = u8::MIN;
    for dy in -r..=r {
        for dx in -r..=r {
            let v = src.get(
                (x as i64 + dx).clamp(0, w - 1) as usize,
                (y as i64 + dy).clamp(0, h - 1) as usize,
            );
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    (lo, hi)
}

fn bilateral_range_containment(opts: &SuiteOptions) -> Check {
    let mut rng = gen::rng(opts.seed ^ 5);
    for _ in 0..10 {
        let plane = gen::random_plane(rng.gen_range(1..24), rng.gen_range(1..24), rng.gen());
        let params = BilateralParams::new(
            rng.gen_range(0.5..5.0),
            rng.gen_range(1.0..100.0),
            rng.gen_range(1..6),
        )
        .expect("valid random params");
        let out = bilateral_plane(&plane, &params);
        for y in 0..plane.height() {
            for x in 0..plane.width() {
                let (lo, hi) = window_bounds(&plane, x, y, params.radius());
                let v = out.get(x, y);
                ensure(
                    v >= lo.saturating_sub(1) && v <= hi.saturating_add(1),
                    || format!("({x},{y}) = {v} outside [{lo}, {hi}] with {params:?}"),
                )?;
            }
        }
    }
    Ok(())
}

fn bilateral_constant_preservation(opts: &SuiteOptions) -> Check {
    let mut rng = gen::rng(opts.seed ^ 6);
    for params in bilateral_grid() {
        let v: u8 = rng.gen();
        let plane = Plane::filled(rng.gen_range(1..20), rng.gen_range(1..20), v).expect("valid");
        ensure(bilateral_plane(&plane, &params) == plane, || {
            format!("constant {v} changed with {params:?}")
        })?;
    }
    Ok(())
}

fn image_pairs(opts: &SuiteOptions, salt: u64) -> Vec<(posterize::ImageU8, posterize::ImageU8)> {
    let mut rng = gen::rng(opts.seed ^ salt);
    (0..10)
        .map(|_| {
            let (w, h, c) = (
                rng.gen_range(1..32),
                rng.gen_range(1..32),
                if rng.gen() { 3 } else { 1 },
            );
            (
                gen::random_image(w, h, c, rng.gen()),
                gen::random_image(w, h, c, rng.gen()),
            )
        })
        .collect()
}

fn blend_betweenness(opts: &SuiteOptions) -> Check {
    let mut rng = gen::rng(opts.seed ^ 7);
    for (i, o) in image_pairs(opts, 8) {
        let alpha: f64 = rng.gen();
        let out = apply_effect(&i, &o, Effect::blend(alpha).expect("alpha in range"))
            .map_err(|e| e.to_string())?;
        ensure(out.same_shape(&i), || "blend changed shape".into())?;
        for ((&a, &b), &v) in i.data().iter().zip(o.data()).zip(out.data()) {
            ensure(a.min(b) <= v && v <= a.max(b), || {
                format!("blend({a}, {b}, {alpha}) = {v}")
            })?;
        }
    }
    Ok(())
}

fn effects_algebra(opts: &SuiteOptions) -> Check {
    for (i, o) in image_pairs(opts, 9) {
        let run = |e| apply_effect(&i, &o, e).map_err(|e| e.to_string());
        ensure(run(Effect::blend(0.0).unwrap())? == i, || {
            "blend alpha=0 is not I".into()
        })?;
        ensure(run(Effect::blend(1.0).unwrap())? == o, || {
            "blend alpha=1 is not O".into()
        })?;
        ensure(run(Effect::Raw)? == o, || "raw is not O".into())?;
        let max: Vec<u8> = i
            .data()
            .iter()
            .zip(o.data())
            .map(|(a, b)| *a.max(b))
            .collect();
        let min: Vec<u8> = i
            .data()
            .iter()
            .zip(o.data())
            .map(|(a, b)| *a.min(b))
            .collect();
        ensure(run(Effect::Max)?.data() == max.as_slice(), || {
            "max differs from pointwise max".into()
        })?;
        ensure(run(Effect::Min)?.data() == min.as_slice(), || {
            "min differs from pointwise min".into()
        })?;
    }
    Ok(())
}

fn pnm_round_trip(opts: &SuiteOptions) -> Check {
    let mut rng = gen::rng(opts.seed ^ 10);
    for k in 0..20 {
        let c = if k % 2 == 0 { 1 } else { 3 };
        let img = gen::random_image(rng.gen_range(1..40), rng.gen_range(1..40), c, rng.gen());
        let bytes = write_pnm(&img);
        let back = read_pnm(&bytes).map_err(|e| e.to_string())?;
        ensure(back == img, || format!("image #{k} changed in round trip"))?;
        ensure(write_pnm(&back) == bytes, || {
            format!("image #{k} re-encodes differently")
        })?;
    }
    Ok(())
}

fn raw_color_bound(opts: &SuiteOptions) -> Check {
    let mut rng = gen::rng(opts.seed ^ 11);
    for k in 0..5 {
        let img = gen::random_image(48, 48, 3, rng.gen());
        let out = posterize(&img, &PipelineConfig::default()).map_err(|e| e.to_string())?;
        let per_channel = distinct_values_per_channel(&out);
        let colors = count_distinct_colors(&out);
        ensure(per_channel.iter().all(|&n| n <= 3) && colors <= 27, || {
            format!("image #{k}: {per_channel:?} values per channel, {colors} colours")
        })?;
    }
    Ok(())
}

fn thread_determinism(opts: &SuiteOptions) -> Check {
    let img = gen::synthetic_scene(96, 64, 3, opts.seed ^ 12);
    let mut digests = Vec::new();
    for &threads in &opts.thread_counts {
        let cfg = PipelineConfig {
            threads,
            ..Default::default()
        };
        let out = posterize(&img, &cfg).map_err(|e| e.to_string())?;
        digests.push((threads, digest(&write_pnm(&out))));
    }
    ensure(digests.windows(2).all(|w| w[0].1 == w[1].1), || {
        format!("digests differ: {digests:?}")
    })
}
