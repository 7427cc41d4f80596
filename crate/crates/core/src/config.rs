//! Pipeline configuration and its `key = value` file format.
//!
//! ```text
//! # membership shape
//! a_dr = 73
//! b_dr = 50
//! sigma_spatial = 2.5
//! ```
//!
//! Recognised keys are the nine membership constants (`a_dr`, `b_dr`, `a_g`,
//! `b_g`, `a_br`, `b_br`, `v_dr`, `v_g`, `v_br`), the bilateral settings
//! (`sigma_spatial`, `sigma_range`, `radius`) and the post-processing
//! selection (`effect`, `alpha`, `skip_blur`). Blank lines and `#` comments
//! are ignored; a repeated key keeps its last value.

use crate::bilateral::BilateralParams;
use crate::effects::{Effect, EffectKind};
use crate::error::{ConfigError, ParamError};
use crate::fuzzy::{MembershipParams, MembershipValues};

/// Blend weight used when `blend` is selected without an explicit alpha.
pub const DEFAULT_BLEND_ALPHA: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PipelineConfig {
    pub bilateral: BilateralParams,
    pub membership: MembershipParams,
    pub effect: Effect,
    pub skip_blur: bool,
    /// Worker threads; 0 picks the machine default.
    pub threads: usize,
}

/// Partial settings, as read from a file or gathered from flags. Unset
/// fields fall through to whatever they are layered on.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub a_dr: Option<f64>,
    pub b_dr: Option<f64>,
    pub a_g: Option<f64>,
    pub b_g: Option<f64>,
    pub a_br: Option<f64>,
    pub b_br: Option<f64>,
    pub v_dr: Option<u8>,
    pub v_g: Option<u8>,
    pub v_br: Option<u8>,
    pub sigma_spatial: Option<f64>,
    pub sigma_range: Option<f64>,
    pub radius: Option<usize>,
    pub effect: Option<EffectKind>,
    pub alpha: Option<f64>,
    pub skip_blur: Option<bool>,
    pub threads: Option<usize>,
}

impl ConfigOverrides {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut out = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: line_no,
                message: format!("expected `key = value`, got {line:?}"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || ConfigError::BadValue {
                line: line_no,
                key: key.to_string(),
                value: value.to_string(),
            };
            let real = || value.parse::<f64>().map_err(|_| bad());
            let byte = || value.parse::<u8>().map_err(|_| bad());
            match key {
                "a_dr" => out.a_dr = Some(real()?),
                "b_dr" => out.b_dr = Some(real()?),
                "a_g" => out.a_g = Some(real()?),
                "b_g" => out.b_g = Some(real()?),
                "a_br" => out.a_br = Some(real()?),
                "b_br" => out.b_br = Some(real()?),
                "v_dr" => out.v_dr = Some(byte()?),
                "v_g" => out.v_g = Some(byte()?),
                "v_br" => out.v_br = Some(byte()?),
                "sigma_spatial" => out.sigma_spatial = Some(real()?),
                "sigma_range" => out.sigma_range = Some(real()?),
                "radius" => out.radius = Some(value.parse().map_err(|_| bad())?),
                "effect" => out.effect = Some(value.parse().map_err(|_| bad())?),
                "alpha" => out.alpha = Some(real()?),
                "skip_blur" => out.skip_blur = Some(value.parse().map_err(|_| bad())?),
                _ => {
                    return Err(ConfigError::UnknownKey {
                        line: line_no,
                        key: key.to_string(),
                    })
                }
            }
        }
        Ok(out)
    }

    /// Fields set in `over` replace those in `self`.
    pub fn layer(self, over: ConfigOverrides) -> Self {
        Self {
            a_dr: over.a_dr.or(self.a_dr),
            b_dr: over.b_dr.or(self.b_dr),
            a_g: over.a_g.or(self.a_g),
            b_g: over.b_g.or(self.b_g),
            a_br: over.a_br.or(self.a_br),
            b_br: over.b_br.or(self.b_br),
            v_dr: over.v_dr.or(self.v_dr),
            v_g: over.v_g.or(self.v_g),
            v_br: over.v_br.or(self.v_br),
            sigma_spatial: over.sigma_spatial.or(self.sigma_spatial),
            sigma_range: over.sigma_range.or(self.sigma_range),
            radius: over.radius.or(self.radius),
            effect: over.effect.or(self.effect),
            alpha: over.alpha.or(self.alpha),
            skip_blur: over.skip_blur.or(self.skip_blur),
            threads: over.threads.or(self.threads),
        }
    }

    /// Fills unset fields from the defaults and validates the result.
    pub fn resolve(&self) -> Result<PipelineConfig, ParamError> {
        let d = MembershipValues::default();
        let membership = MembershipParams::new(MembershipValues {
            a_dr: self.a_dr.unwrap_or(d.a_dr),
            b_dr: self.b_dr.unwrap_or(d.b_dr),
            a_g: self.a_g.unwrap_or(d.a_g),
            b_g: self.b_g.unwrap_or(d.b_g),
            a_br: self.a_br.unwrap_or(d.a_br),
            b_br: self.b_br.unwrap_or(d.b_br),
            v_dr: self.v_dr.unwrap_or(d.v_dr),
            v_g: self.v_g.unwrap_or(d.v_g),
            v_br: self.v_br.unwrap_or(d.v_br),
        })?;
        let bilateral = BilateralParams::new(
            self.sigma_spatial
                .unwrap_or(BilateralParams::DEFAULT_SIGMA_SPATIAL),
            self.sigma_range
                .unwrap_or(BilateralParams::DEFAULT_SIGMA_RANGE),
            self.radius.unwrap_or(BilateralParams::DEFAULT_RADIUS),
        )?;
        // an alpha is validated even when it ends up unused
        let alpha = self.alpha.map(crate::effects::Alpha::new).transpose()?;
        let effect = match self.effect.unwrap_or(EffectKind::Raw) {
            EffectKind::Raw => Effect::Raw,
            EffectKind::Max => Effect::Max,
            EffectKind::Min => Effect::Min,
            EffectKind::Blend => match alpha {
                Some(a) => Effect::Blend(a),
                None => Effect::blend(DEFAULT_BLEND_ALPHA)?,
            },
        };
        Ok(PipelineConfig {
            bilateral,
            membership,
            effect,
            skip_blur: self.skip_blur.unwrap_or(false),
            threads: self.threads.unwrap_or(0),
        })
    }
}

impl PipelineConfig {
    /// Renders the configuration in the file format accepted by
    /// [`ConfigOverrides::parse`]. Thread count is a runtime concern and is
    /// not written.
    pub fn to_config_text(&self) -> String {
        let m = self.membership.values();
        let b = &self.bilateral;
        let mut s = format!(
            "a_dr = {}\nb_dr = {}\na_g = {}\nb_g = {}\na_br = {}\nb_br = {}\n\
             v_dr = {}\nv_g = {}\nv_br = {}\n\
             sigma_spatial = {}\nsigma_range = {}\nradius = {}\n\
             effect = {}\n",
            m.a_dr,
            m.b_dr,
            m.a_g,
            m.b_g,
            m.a_br,
            m.b_br,
            m.v_dr,
            m.v_g,
            m.v_br,
            b.sigma_spatial(),
            b.sigma_range(),
            b.radius(),
            self.effect.kind(),
        );
        if let Effect::Blend(a) = self.effect {
            s.push_str(&format!("alpha = {}\n", a.get()));
        }
        s.push_str(&format!("skip_blur = {}\n", self.skip_blur));
        s
    }
}
