//! Text formats: trace CSV, event JSONL and label JSONL.
//!
//! All numbers are written with six decimal places and a `.` separator, so
//! identical documents always serialize to identical bytes. Readers report
//! the 1-based line of the first problem and never return partial results.

use std::fmt::Write as _;

use serde::Deserialize;

use crate::detector::{AccelSample, Coordinates, DetectorConfig, ShakeDirection, ShakeEvent};
use crate::error::{Error, Result};
use crate::synth::LabeledBurst;

pub const TRACE_HEADER: &str = "t,ax,ay,az";

/// An ordered accelerometer trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceDocument {
    pub samples: Vec<AccelSample>,
    /// File path, or `"synthetic"`.
    pub source: String,
}

impl TraceDocument {
    /// Validates samples and ordering.
    pub fn new(samples: Vec<AccelSample>, source: impl Into<String>) -> Result<Self> {
        for (index, s) in samples.iter().enumerate() {
            s.validate().map_err(|e| e.at_sample(index))?;
            if index > 0 && samples[index - 1].t >= s.t {
                return Err(Error::Ordering {
                    previous: samples[index - 1].t,
                    t: s.t,
                }
                .at_sample(index));
            }
        }
        Ok(Self {
            samples,
            source: source.into(),
        })
    }
}

/// Events together with the configuration that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct EventDocument {
    pub events: Vec<ShakeEvent>,
    pub config: DetectorConfig,
}

impl EventDocument {
    /// Checks ordering and that consecutive events respect `config.delay()`.
    pub fn new(events: Vec<ShakeEvent>, config: DetectorConfig) -> Result<Self> {
        for (index, pair) in events.windows(2).enumerate() {
            if pair[1].t <= pair[0].t {
                return Err(Error::Ordering {
                    previous: pair[0].t,
                    t: pair[1].t,
                }
                .at_sample(index + 1));
            }
            if pair[1].t - pair[0].t <= config.delay() {
                return Err(Error::Format(format!(
                    "events at {} and {} are not separated by more than the delay {}",
                    pair[0].t,
                    pair[1].t,
                    config.delay()
                ))
                .at_sample(index + 1));
            }
        }
        Ok(Self { events, config })
    }
}

fn parse_field(raw: &str, name: &str) -> Result<f64> {
    let v: f64 = raw
        .parse()
        .map_err(|_| Error::Format(format!("{name}: {raw:?} is not a number")))?;
    if !v.is_finite() {
        return Err(Error::Format(format!("{name}: {raw:?} is not finite")));
    }
    Ok(v)
}

/// Lines of `text`, 1-based. A final newline does not start another line.
fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    (!text.is_empty())
        .then(|| body.split('\n'))
        .into_iter()
        .flatten()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
}

pub fn parse_trace(text: &str, source: impl Into<String>) -> Result<TraceDocument> {
    let mut lines = numbered_lines(text);
    match lines.next() {
        Some((_, TRACE_HEADER)) => {}
        Some((line, other)) => {
            return Err(
                Error::Format(format!("expected header {TRACE_HEADER:?}, found {other:?}"))
                    .at_line(line),
            )
        }
        None => return Err(Error::Format(format!("missing header {TRACE_HEADER:?}")).at_line(1)),
    }

    let mut samples: Vec<AccelSample> = Vec::new();
    for (line, row) in lines {
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 4 {
            return Err(
                Error::Format(format!("expected 4 columns, found {}", fields.len())).at_line(line),
            );
        }
        let mut values = [0.0; 4];
        for (slot, (raw, name)) in values
            .iter_mut()
            .zip(fields.iter().zip(["t", "ax", "ay", "az"]))
        {
            *slot = parse_field(raw, name).map_err(|e| e.at_line(line))?;
        }
        let sample = AccelSample::new(values[0], values[1], values[2], values[3]);
        if let Some(prev) = samples.last() {
            if sample.t <= prev.t {
                return Err(Error::Ordering {
                    previous: prev.t,
                    t: sample.t,
                }
                .at_line(line));
            }
        }
        samples.push(sample);
    }
    Ok(TraceDocument {
        samples,
        source: source.into(),
    })
}

pub fn write_trace(doc: &TraceDocument) -> String {
    let mut out = String::with_capacity(16 + doc.samples.len() * 40);
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for s in &doc.samples {
        let _ = writeln!(out, "{:.6},{:.6},{:.6},{:.6}", s.t, s.ax, s.ay, s.az);
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EventLine {
    t: f64,
    direction: String,
    magnitude: f64,
    ax: f64,
    ay: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelLine {
    start_t: f64,
    direction: String,
    amplitude: f64,
    duration: f64,
}

fn parse_json_line<'a, T: Deserialize<'a>>(row: &'a str) -> Result<T> {
    serde_json::from_str(row).map_err(|e| Error::Format(format!("malformed JSON: {e}")))
}

fn finite(v: f64, name: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Format(format!("{name} is not finite")))
    }
}

pub fn write_event(out: &mut String, e: &ShakeEvent) {
    let _ = writeln!(
        out,
        "{{\"t\":{:.6},\"direction\":\"{}\",\"magnitude\":{:.6},\"ax\":{:.6},\"ay\":{:.6}}}",
        e.t, e.direction, e.magnitude, e.coordinates.ax, e.coordinates.ay
    );
}

/// One JSON object per event; no output for an empty list.
pub fn write_events(events: &[ShakeEvent]) -> String {
    let mut out = String::with_capacity(events.len() * 96);
    for e in events {
        write_event(&mut out, e);
    }
    out
}

/// Reads event JSONL. The producing config is not part of the wire format;
/// pair the result with one through [`EventDocument::new`].
pub fn read_events(text: &str) -> Result<Vec<ShakeEvent>> {
    let mut events: Vec<ShakeEvent> = Vec::new();
    for (line, row) in numbered_lines(text) {
        let parsed = (|| -> Result<ShakeEvent> {
            let raw: EventLine = parse_json_line(row)?;
            Ok(ShakeEvent {
                t: finite(raw.t, "t")?,
                direction: raw.direction.parse()?,
                magnitude: finite(raw.magnitude, "magnitude")?,
                coordinates: Coordinates {
                    ax: finite(raw.ax, "ax")?,
                    ay: finite(raw.ay, "ay")?,
                },
            })
        })()
        .map_err(|e| e.at_line(line))?;
        if let Some(prev) = events.last() {
            if parsed.t <= prev.t {
                return Err(Error::Ordering {
                    previous: prev.t,
                    t: parsed.t,
                }
                .at_line(line));
            }
        }
        events.push(parsed);
    }
    Ok(events)
}

pub fn write_labels(labels: &[LabeledBurst]) -> String {
    let mut out = String::with_capacity(labels.len() * 80);
    for b in labels {
        let _ = writeln!(
            out,
            "{{\"start_t\":{:.6},\"direction\":\"{}\",\"amplitude\":{:.6},\"duration\":{:.6}}}",
            b.start_t, b.direction, b.amplitude, b.duration
        );
    }
    out
}

pub fn read_labels(text: &str) -> Result<Vec<LabeledBurst>> {
    let mut labels: Vec<LabeledBurst> = Vec::new();
    for (line, row) in numbered_lines(text) {
        let burst = (|| -> Result<LabeledBurst> {
            let raw: LabelLine = parse_json_line(row)?;
            let direction: ShakeDirection = raw.direction.parse()?;
            LabeledBurst::new(
                finite(raw.start_t, "start_t")?,
                direction,
                finite(raw.amplitude, "amplitude")?,
                finite(raw.duration, "duration")?,
            )
            .map_err(|e| Error::Format(e.root().to_string()))
        })()
        .map_err(|e| e.at_line(line))?;
        if let Some(prev) = labels.last() {
            if burst.start_t <= prev.start_t {
                return Err(Error::Ordering {
                    previous: prev.start_t,
                    t: burst.start_t,
                }
                .at_line(line));
            }
        }
        labels.push(burst);
    }
    Ok(labels)
}
