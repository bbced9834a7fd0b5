//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # BCH(256,239) with ORDEPT
//! code.name = bch
//! code.r = 8
//! code.t = 2
//! code.extended = true
//! decoder.variant = ordept
//! decoder.qmax = 1024
//! decoder.cmax = 3
//! decoder.threshold_t = 256
//! channel.metric = ebn0
//! ```

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::channel::SnrMetric;
use crate::code::{load_parity_check, LinearCode, DEFAULT_CRC8_POLY};
use crate::decoders::{DecoderConfig, Variant};
use crate::error::{Error, Result};
use crate::turbo::{AdaptiveParams, FactorSchedule, Factors, HalfOrder, TurboConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum CodeSpec {
    Bch { r: u32, t: usize, extended: bool },
    Hamming { r: u32, extended: bool },
    Crc { poly: u64, n: usize },
    Uncoded { n: usize },
    File(PathBuf),
}

impl Default for CodeSpec {
    fn default() -> Self {
        CodeSpec::Bch {
            r: 8,
            t: 2,
            extended: true,
        }
    }
}

impl CodeSpec {
    pub fn build(&self) -> Result<LinearCode> {
        match self {
            CodeSpec::Bch { r, t, extended } => LinearCode::bch(*r, *t, *extended),
            CodeSpec::Hamming { r, extended: false } => LinearCode::hamming(*r),
            CodeSpec::Hamming { r, extended: true } => LinearCode::extended_hamming(*r),
            CodeSpec::Crc { poly, n } => LinearCode::crc(*poly, *n),
            CodeSpec::Uncoded { n } => LinearCode::uncoded(*n),
            CodeSpec::File(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                load_parity_check(&text)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub code: CodeSpec,
    pub decoder: DecoderConfig,
    pub turbo: TurboConfig,
    pub metric: SnrMetric,
    pub sweep_db: Option<Vec<f64>>,
    pub frames: Option<u64>,
    pub min_block_errors: Option<u64>,
    pub seed: Option<u64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            code: CodeSpec::default(),
            decoder: DecoderConfig::default(),
            turbo: TurboConfig::default(),
            metric: SnrMetric::EbN0,
            sweep_db: None,
            frames: None,
            min_block_errors: None,
            seed: None,
        }
    }
}

fn bad(key: &str, value: &str) -> Error {
    Error::Config(format!("invalid value {value:?} for {key}"))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(bad(key, v)),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| bad(key, v))
}

fn parse_u64_radix(key: &str, v: &str) -> Result<u64> {
    let r = match v.strip_prefix("0x").or_else(|| v.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => v.parse(),
    };
    r.map_err(|_| bad(key, v))
}

/// Comma-separated list of reals.
pub fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_num(key, s))
        .collect()
}

/// Parses configuration text. Relative `code.h_file` paths resolve against `base`.
pub fn parse_config(text: &str, base: Option<&Path>) -> Result<ExperimentConfig> {
    let mut kv: HashMap<String, String> = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    let get = |k: &str| kv.get(k).map(String::as_str);
    let mut cfg = ExperimentConfig::default();

    let r: Option<u32> = get("code.r").map(|v| parse_num("code.r", v)).transpose()?;
    let t: Option<usize> = get("code.t").map(|v| parse_num("code.t", v)).transpose()?;
    let n: Option<usize> = get("code.n").map(|v| parse_num("code.n", v)).transpose()?;
    let ext = get("code.extended").map(|v| parse_bool("code.extended", v)).transpose()?;
    let poly = get("code.crc_poly").map(|v| parse_u64_radix("code.crc_poly", v)).transpose()?;

    cfg.code = if let Some(file) = get("code.h_file") {
        let p = PathBuf::from(file);
        CodeSpec::File(match base {
            Some(b) if p.is_relative() => b.join(p),
            _ => p,
        })
    } else {
        let name = get("code.name").unwrap_or("bch").to_ascii_lowercase();
        let need_n = || n.ok_or_else(|| Error::Config(format!("code.n is required for {name}")));
        match name.as_str() {
            "bch" | "ebch" => CodeSpec::Bch {
                r: r.unwrap_or(8),
                t: t.unwrap_or(2),
                extended: ext.unwrap_or(true),
            },
            "hamming" => CodeSpec::Hamming {
                r: r.unwrap_or(3),
                extended: ext.unwrap_or(false),
            },
            "ehamming" | "extended_hamming" => CodeSpec::Hamming {
                r: r.unwrap_or(3),
                extended: true,
            },
            "crc" => CodeSpec::Crc {
                poly: poly.unwrap_or(DEFAULT_CRC8_POLY),
                n: need_n()?,
            },
            "uncoded" | "none" => CodeSpec::Uncoded { n: need_n()? },
            other => return Err(Error::Config(format!("unknown code.name {other:?}"))),
        }
    };

    let d = &mut cfg.decoder;
    if let Some(v) = get("decoder.variant") {
        d.variant = v.parse()?;
    }
    if let Some(v) = get("decoder.x") {
        let x = parse_num("decoder.x", v)?;
        d.variant = match d.variant {
            Variant::Ordept | Variant::OrdeptX(_) => Variant::OrdeptX(x),
            other => other,
        };
    }
    if let Some(v) = get("decoder.chase_p") {
        if let Variant::Chase2(_) = d.variant {
            d.variant = Variant::Chase2(parse_num("decoder.chase_p", v)?);
        }
    }
    if let Some(v) = get("decoder.qmax") {
        d.q_max = parse_num("decoder.qmax", v)?;
        d.threshold_t = d.q_max;
    }
    if let Some(v) = get("decoder.cmax") {
        d.c_max = parse_num("decoder.cmax", v)?;
    }
    if let Some(v) = get("decoder.threshold_t") {
        d.threshold_t = parse_num("decoder.threshold_t", v)?;
    }
    if let Some(v) = get("decoder.shot_size") {
        d.shot_size = parse_num("decoder.shot_size", v)?;
    }
    if let Some(v) = get("decoder.parity_split") {
        d.use_parity_split = parse_bool("decoder.parity_split", v)?;
    }
    if let Some(v) = get("decoder.shot_batching") {
        d.shot_batching = parse_bool("decoder.shot_batching", v)?;
    }
    if let Some(v) = get("decoder.soft_output") {
        d.soft_output = parse_bool("decoder.soft_output", v)?;
    }

    let tb = &mut cfg.turbo;
    if let Some(v) = get("turbo.iterations") {
        tb.iterations = parse_num("turbo.iterations", v)?;
    }
    if let Some(v) = get("turbo.order") {
        tb.order = match v.to_ascii_lowercase().as_str() {
            "rows" | "rows_first" => HalfOrder::RowsFirst,
            "columns" | "cols" | "columns_first" => HalfOrder::ColumnsFirst,
            _ => return Err(bad("turbo.order", v)),
        };
    }
    let adaptive = get("turbo.adaptive")
        .map(|v| parse_bool("turbo.adaptive", v))
        .transpose()?
        .unwrap_or(false);
    if adaptive {
        let list = |k: &str| -> Result<Vec<f64>> {
            let v = get(k).ok_or_else(|| Error::Config(format!("{k} is required when turbo.adaptive is set")))?;
            parse_list(k, v)
        };
        let p = AdaptiveParams {
            a_alpha: list("turbo.a_alpha")?,
            b_alpha: list("turbo.b_alpha")?,
            k_alpha: list("turbo.k_alpha")?,
            a_beta: list("turbo.a_beta")?,
            b_beta: list("turbo.b_beta")?,
            k_beta: list("turbo.k_beta")?,
            eps_scale: get("turbo.eps_scale")
                .map(|v| parse_num("turbo.eps_scale", v))
                .transpose()?
                .unwrap_or(1.0),
        };
        p.validate()?;
        tb.factors = Factors::Adaptive(p);
    } else {
        let mut s = FactorSchedule::default();
        if let Some(v) = get("turbo.alpha") {
            s.alpha = parse_list("turbo.alpha", v)?;
        }
        if let Some(v) = get("turbo.beta") {
            s.beta = parse_list("turbo.beta", v)?;
        }
        s.validate()?;
        tb.factors = Factors::Fixed(s);
    }

    if let Some(v) = get("channel.metric") {
        cfg.metric = v.parse()?;
    }
    if let Some(v) = get("sim.snr") {
        cfg.sweep_db = Some(parse_list("sim.snr", v)?);
    }
    if let Some(v) = get("sim.frames") {
        cfg.frames = Some(parse_num("sim.frames", v)?);
    }
    if let Some(v) = get("sim.min_block_errors") {
        cfg.min_block_errors = Some(parse_num("sim.min_block_errors", v)?);
    }
    if let Some(v) = get("sim.seed") {
        cfg.seed = Some(parse_num("sim.seed", v)?);
    }

    const KNOWN: &[&str] = &[
        "code.name", "code.h_file", "code.r", "code.t", "code.n", "code.extended", "code.crc_poly",
        "decoder.variant", "decoder.qmax", "decoder.cmax", "decoder.threshold_t", "decoder.shot_size",
        "decoder.parity_split", "decoder.chase_p", "decoder.x", "decoder.shot_batching",
        "decoder.soft_output", "turbo.iterations", "turbo.alpha", "turbo.beta", "turbo.adaptive",
        "turbo.a_alpha", "turbo.b_alpha", "turbo.k_alpha", "turbo.a_beta", "turbo.b_beta",
        "turbo.k_beta", "turbo.eps_scale", "turbo.order", "channel.metric", "sim.snr", "sim.frames",
        "sim.min_block_errors", "sim.seed",
    ];
    if let Some(k) = kv.keys().find(|k| !KNOWN.contains(&k.as_str())) {
        return Err(Error::Config(format!("unknown key {k:?}")));
    }
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text, path.parent())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = parse_config("", None).unwrap();
        assert_eq!(c.code, CodeSpec::default());
        assert_eq!(c.decoder.variant, Variant::Ordept);
        assert_eq!(c.metric, SnrMetric::EbN0);
    }

    #[test]
    fn full_example() {
        let text = "
# comment
code.name = bch
code.r = 8
code.t = 3
decoder.variant = ordeptx
decoder.x = 2
decoder.qmax = 2048
decoder.cmax = 8
decoder.threshold_t = 128
decoder.shot_size = 16
decoder.parity_split = false
turbo.iterations = 6
turbo.alpha = 0.3, 0.5
channel.metric = snr
sim.snr = 3.5,3.75
";
        let c = parse_config(text, None).unwrap();
        assert_eq!(c.code, CodeSpec::Bch { r: 8, t: 3, extended: true });
        assert_eq!(c.decoder.variant, Variant::OrdeptX(2));
        assert_eq!(c.decoder.q_max, 2048);
        assert_eq!(c.decoder.threshold_t, 128);
        assert!(!c.decoder.use_parity_split);
        assert_eq!(c.turbo.iterations, 6);
        assert_eq!(c.metric, SnrMetric::EsN0);
        assert_eq!(c.sweep_db, Some(vec![3.5, 3.75]));
        match c.turbo.factors {
            Factors::Fixed(s) => assert_eq!(s.alpha, vec![0.3, 0.5]),
            _ => panic!(),
        }
    }

    #[test]
    fn adaptive_requires_lists() {
        assert!(parse_config("turbo.adaptive = true", None).is_err());
        let text = "turbo.adaptive = 1
turbo.a_alpha = 0.5
turbo.b_alpha = 0.2
turbo.k_alpha = 0.05
turbo.a_beta = 0.6
turbo.b_beta = 0.2
turbo.k_beta = 0.05";
        let c = parse_config(text, None).unwrap();
        assert!(matches!(c.turbo.factors, Factors::Adaptive(_)));
    }

    #[test]
    fn errors() {
        assert!(parse_config("code.r 8", None).is_err());
        assert!(parse_config("code.q = 1", None).is_err());
        assert!(parse_config("decoder.qmax = x", None).is_err());
        assert!(parse_config("code.name = crc", None).is_err());
        let c = parse_config("code.name = crc\ncode.n = 40\ncode.crc_poly = 0x107", None).unwrap();
        assert_eq!(c.code, CodeSpec::Crc { poly: 0x107, n: 40 });
        assert_eq!(c.code.build().unwrap().m(), 8);
    }

    #[test]
    fn relative_h_file() {
        let c = parse_config("code.h_file = h.txt", Some(Path::new("/tmp/x"))).unwrap();
        assert_eq!(c.code, CodeSpec::File(PathBuf::from("/tmp/x/h.txt")));
    }
}
