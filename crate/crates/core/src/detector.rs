//! Threshold-and-debounce shake detection.
//!
//! A sample fires when `max(|ax|, |ay|)` strictly exceeds the threshold and
//! strictly more than `delay` seconds have elapsed since the last emitted
//! event. Before the first event the elapsed-time condition always holds.
//! Direction is read off the triggering sample alone.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default debounce delay, seconds.
pub const DEFAULT_DELAY: f64 = 0.5;

/// One timestamped accelerometer reading. Accelerations in g, time in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelSample {
    pub t: f64,
    pub ax: f64,
    pub ay: f64,
    /// Carried through from logs; detection never looks at it.
    pub az: f64,
}

impl AccelSample {
    pub fn new(t: f64, ax: f64, ay: f64, az: f64) -> Self {
        Self { t, ax, ay, az }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("t", self.t),
            ("ax", self.ax),
            ("ay", self.ay),
            ("az", self.az),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidSample(format!("{name} is not finite ({v})")));
            }
        }
        Ok(())
    }

    pub fn coordinates(&self) -> Coordinates {
        Coordinates {
            ax: self.ax,
            ay: self.ay,
        }
    }

    /// `max(|ax|, |ay|)`.
    pub fn magnitude(&self) -> f64 {
        self.ax.abs().max(self.ay.abs())
    }
}

/// The planar acceleration pair that triggered an event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coordinates {
    pub ax: f64,
    pub ay: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShakeDirection {
    Up,
    Down,
    Left,
    Right,
    Unknown,
}

impl ShakeDirection {
    pub const ALL: [ShakeDirection; 5] = [
        ShakeDirection::Up,
        ShakeDirection::Down,
        ShakeDirection::Left,
        ShakeDirection::Right,
        ShakeDirection::Unknown,
    ];

    /// Lowercase wire name.
    pub fn as_str(self) -> &'static str {
        match self {
            ShakeDirection::Up => "up",
            ShakeDirection::Down => "down",
            ShakeDirection::Left => "left",
            ShakeDirection::Right => "right",
            ShakeDirection::Unknown => "unknown",
        }
    }
}

impl fmt::Display for ShakeDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ShakeDirection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ShakeDirection::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| Error::Format(format!("unknown direction {s:?}")))
    }
}

/// Named sensitivity presets. Lighter presets fire on gentler shakes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sensibility {
    Lightest,
    Light,
    Normal,
    Hard,
    Hardest,
}

impl Sensibility {
    pub const ALL: [Sensibility; 5] = [
        Sensibility::Lightest,
        Sensibility::Light,
        Sensibility::Normal,
        Sensibility::Hard,
        Sensibility::Hardest,
    ];

    /// Threshold in g.
    pub fn threshold(self) -> f64 {
        match self {
            Sensibility::Lightest => 0.6,
            Sensibility::Light => 0.9,
            Sensibility::Normal => 1.2,
            Sensibility::Hard => 1.5,
            Sensibility::Hardest => 1.8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sensibility::Lightest => "lightest",
            Sensibility::Light => "light",
            Sensibility::Normal => "normal",
            Sensibility::Hard => "hard",
            Sensibility::Hardest => "hardest",
        }
    }
}

impl fmt::Display for Sensibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sensibility {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Sensibility::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown sensibility {s:?}")))
    }
}

/// Threshold (g) and debounce delay (s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorConfig {
    threshold: f64,
    delay: f64,
}

impl DetectorConfig {
    pub fn new(threshold: f64, delay: f64) -> Result<Self> {
        if !threshold.is_finite() || threshold <= 0.0 {
            return Err(Error::Config(format!(
                "threshold must be finite and > 0, got {threshold}"
            )));
        }
        if !delay.is_finite() || delay < 0.0 {
            return Err(Error::Config(format!(
                "delay must be finite and >= 0, got {delay}"
            )));
        }
        Ok(Self { threshold, delay })
    }

    pub fn from_sensibility(sensibility: Sensibility, delay: f64) -> Result<Self> {
        Self::new(sensibility.threshold(), delay)
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn delay(&self) -> f64 {
        self.delay
    }
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            threshold: Sensibility::Normal.threshold(),
            delay: DEFAULT_DELAY,
        }
    }
}

/// A detected shake.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShakeEvent {
    /// Timestamp of the triggering sample.
    pub t: f64,
    pub direction: ShakeDirection,
    /// `max(|ax|, |ay|)` of the triggering sample.
    pub magnitude: f64,
    pub coordinates: Coordinates,
}

impl ShakeEvent {
    pub(crate) fn from_sample(sample: &AccelSample) -> Self {
        let coordinates = sample.coordinates();
        Self {
            t: sample.t,
            direction: direction_of(coordinates.ax, coordinates.ay),
            magnitude: sample.magnitude(),
            coordinates,
        }
    }
}

/// Everything the detection rule needs to remember between samples.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DetectorState {
    /// Timestamp of the most recently emitted event.
    pub last_event_t: Option<f64>,
}

fn direction_of(ax: f64, ay: f64) -> ShakeDirection {
    let (x, y) = (ax.abs(), ay.abs());
    if x > y {
        if ax > 0.0 {
            ShakeDirection::Right
        } else {
            ShakeDirection::Left
        }
    } else if x < y {
        if ay > 0.0 {
            ShakeDirection::Down
        } else {
            ShakeDirection::Up
        }
    } else {
        ShakeDirection::Unknown
    }
}

/// Classifies a planar acceleration by its dominant axis and sign.
///
/// Ties `|ax| == |ay|` (compared exactly) give `Unknown`. Positive y is down.
pub fn classify_direction(ax: f64, ay: f64) -> Result<ShakeDirection> {
    if !ax.is_finite() || !ay.is_finite() {
        return Err(Error::InvalidSample(format!(
            "direction needs finite coordinates, got ({ax}, {ay})"
        )));
    }
    Ok(direction_of(ax, ay))
}

/// True iff `max(|ax|, |ay|) > threshold`.
pub fn shake_predicate(sample: &AccelSample, threshold: f64) -> Result<bool> {
    sample.validate()?;
    if !threshold.is_finite() || threshold <= 0.0 {
        return Err(Error::Config(format!(
            "threshold must be finite and > 0, got {threshold}"
        )));
    }
    Ok(sample.magnitude() > threshold)
}

/// One step of the detection state machine.
///
/// The pure form can only check ordering against the last emitted event;
/// [`ShakeDetector`] also tracks the last sample seen and rejects any
/// non-increasing timestamp.
pub fn detect_step(
    state: DetectorState,
    sample: &AccelSample,
    config: &DetectorConfig,
) -> Result<(DetectorState, Option<ShakeEvent>)> {
    sample.validate()?;
    if let Some(last) = state.last_event_t {
        if sample.t <= last {
            return Err(Error::Ordering {
                previous: last,
                t: sample.t,
            });
        }
    }
    Ok(step_unchecked(state, sample, config))
}

#[inline]
fn step_unchecked(
    state: DetectorState,
    sample: &AccelSample,
    config: &DetectorConfig,
) -> (DetectorState, Option<ShakeEvent>) {
    let debounced = match state.last_event_t {
        None => true,
        Some(last) => sample.t - last > config.delay,
    };
    if debounced && sample.magnitude() > config.threshold {
        let next = DetectorState {
            last_event_t: Some(sample.t),
        };
        (next, Some(ShakeEvent::from_sample(sample)))
    } else {
        (state, None)
    }
}

/// Streaming detector fed one sample at a time.
#[derive(Debug, Clone)]
pub struct ShakeDetector {
    config: DetectorConfig,
    state: DetectorState,
    last_sample_t: Option<f64>,
}

impl ShakeDetector {
    pub fn new(config: DetectorConfig) -> Self {
        Self {
            config,
            state: DetectorState::default(),
            last_sample_t: None,
        }
    }

    pub fn config(&self) -> &DetectorConfig {
        &self.config
    }

    pub fn state(&self) -> DetectorState {
        self.state
    }

    pub fn push(&mut self, sample: &AccelSample) -> Result<Option<ShakeEvent>> {
        sample.validate()?;
        if let Some(previous) = self.last_sample_t {
            if sample.t <= previous {
                return Err(Error::Ordering {
                    previous,
                    t: sample.t,
                });
            }
        }
        self.last_sample_t = Some(sample.t);
        let (state, event) = step_unchecked(self.state, sample, &self.config);
        self.state = state;
        Ok(event)
    }

    /// Forgets all history.
    pub fn reset(&mut self) {
        self.state = DetectorState::default();
        self.last_sample_t = None;
    }
}

/// Runs a fresh detector over a whole trace.
pub fn process_trace(samples: &[AccelSample], config: &DetectorConfig) -> Result<Vec<ShakeEvent>> {
    let mut detector = ShakeDetector::new(*config);
    let mut events = Vec::new();
    for (index, sample) in samples.iter().enumerate() {
        if let Some(event) = detector.push(sample).map_err(|e| e.at_sample(index))? {
            events.push(event);
        }
    }
    Ok(events)
}
