//! Run configuration: a self-contained description of a carrier, its
//! generators, and every truncation parameter. Configs round-trip
//! through JSON and can be derived from the built-in scenarios.

use gact_core::acts::MapSpec;
use gact_core::carrier::CarrierSpec;
use gact_core::catalog::{build_scenario, Scenario, ScenarioParams};
use gact_core::{CarrierRef, EndoMap, MonoidClosure, Point};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Name of the scenario this config was derived from, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    pub carrier: CarrierSpec,
    pub generators: Vec<MapSpec>,
    pub max_word_len: usize,
    pub max_elements: usize,
    /// Half-open range of constants for the difference-against-constant
    /// sets.
    pub const_window: (Point, Point),
    /// Half-open range of points the analysis probes.
    pub probe: (Point, Point),
    /// Special-sequence length; the base point is the first probe point.
    pub length: usize,
    /// Half-open range the sequence construction draws points from.
    pub search_window: (Point, Point),
    /// Recursion depth for neighborhood chains and separation.
    pub depth: usize,
    /// Echoed into reports so identical runs are byte-identical.
    pub seed: u64,
}

/// A config error names the offending field.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid config: {}", self.0)
    }
}

impl RunConfig {
    pub fn from_scenario(name: &str) -> Result<RunConfig, gact_core::Error> {
        let scenario = build_scenario(name, &ScenarioParams::default())?;
        Ok(Self::of_scenario(&scenario))
    }

    pub fn of_scenario(scenario: &Scenario) -> RunConfig {
        let window_range =
            |points: &[Point]| -> (Point, Point) { (points[0], points[points.len() - 1] + 1) };
        let search_window = match scenario.carrier.as_ref() {
            gact_core::Carrier::IntLine { .. } => (0, 4096),
            gact_core::Carrier::NatLine { .. } => (0, 4096),
            _ => (0, scenario.carrier.size().unwrap() as Point),
        };
        RunConfig {
            scenario: Some(scenario.name.clone()),
            carrier: CarrierSpec::of(&scenario.carrier),
            generators: scenario.generators.iter().map(EndoMap::spec).collect(),
            max_word_len: scenario.max_word_len,
            max_elements: scenario.max_elements,
            const_window: window_range(&scenario.const_window),
            probe: window_range(&scenario.probe),
            length: 12,
            search_window,
            depth: 4,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.max_word_len == 0 {
            return Err(ConfigError("max_word_len must be positive".into()));
        }
        if self.max_elements == 0 {
            return Err(ConfigError("max_elements must be positive".into()));
        }
        if self.length == 0 {
            return Err(ConfigError("length must be positive".into()));
        }
        if self.const_window.0 >= self.const_window.1 {
            return Err(ConfigError("const_window must be a nonempty range".into()));
        }
        if self.probe.0 >= self.probe.1 {
            return Err(ConfigError("probe must be a nonempty range".into()));
        }
        if self.search_window.0 >= self.search_window.1 {
            return Err(ConfigError("search_window must be a nonempty range".into()));
        }
        let carrier = self
            .carrier
            .build()
            .map_err(|e| ConfigError(format!("carrier: {e}")))?;
        let (lo, hi) = carrier.window();
        if self.probe.0 < lo || self.probe.1 > hi {
            return Err(ConfigError(format!(
                "probe {:?} must lie within the display window [{lo},{hi})",
                self.probe
            )));
        }
        for (i, spec) in self.generators.iter().enumerate() {
            spec.build(&carrier)
                .map_err(|e| ConfigError(format!("generators[{i}]: {e}")))?;
        }
        Ok(())
    }

    pub fn carrier(&self) -> Result<CarrierRef, gact_core::Error> {
        self.carrier.build()
    }

    pub fn closure(&self) -> Result<MonoidClosure, gact_core::Error> {
        let carrier = self.carrier()?;
        let generators: Result<Vec<EndoMap>, _> =
            self.generators.iter().map(|s| s.build(&carrier)).collect();
        gact_core::closure(&carrier, &generators?, self.max_word_len, self.max_elements)
    }

    pub fn const_points(&self) -> Vec<Point> {
        (self.const_window.0..self.const_window.1).collect()
    }

    pub fn probe_points(&self) -> Vec<Point> {
        (self.probe.0..self.probe.1).collect()
    }
}

/// Parses a half-open `lo..hi` range with optional negative bounds.
pub fn parse_range(text: &str) -> Result<(Point, Point), ConfigError> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| ConfigError(format!("range `{text}` must look like lo..hi")))?;
    let lo: Point = lo
        .trim()
        .parse()
        .map_err(|_| ConfigError(format!("bad range start `{lo}`")))?;
    let hi: Point = hi
        .trim()
        .parse()
        .map_err(|_| ConfigError(format!("bad range end `{hi}`")))?;
    Ok((lo, hi))
}
