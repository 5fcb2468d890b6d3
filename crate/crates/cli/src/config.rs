//! `key = value` annealing config files.

use anyhow::{bail, Context, Result};
use fracdef::anneal::AnnealConfig;

/// Apply every `key = value` line of `text` to `cfg`. Blank lines and `#`
/// comments are skipped; unknown keys are errors.
pub fn apply(cfg: &mut AnnealConfig, text: &str) -> Result<()> {
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {}: expected key = value", i + 1);
        };
        let (key, value) = (key.trim(), value.trim());
        let bad = || format!("line {}: bad value {value:?} for {key}", i + 1);
        match key {
            "k" => cfg.k = value.parse().with_context(bad)?,
            "iterations" => cfg.iterations = value.parse().with_context(bad)?,
            "restarts" => cfg.restarts = value.parse().with_context(bad)?,
            "initial_temperature" => cfg.initial_temperature = value.parse().with_context(bad)?,
            "cooling_rate" => cfg.cooling_rate = value.parse().with_context(bad)?,
            "move_scale" => cfg.move_scale = value.parse().with_context(bad)?,
            "seed" => cfg.seed = value.parse().with_context(bad)?,
            "snap_max_denominator" => cfg.snap_max_denominator = value.parse().with_context(bad)?,
            other => bail!("line {}: unknown key {other:?}", i + 1),
        }
    }
    Ok(())
}
