//! Scoring detections against ground truth, and θ/τ grid sweeps.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::detector::{process_trace, AccelSample, DetectorConfig, ShakeEvent};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::synth::LabeledBurst;
use crate::trace_io::TraceDocument;

/// Default slack after a burst ends during which a detection still counts.
pub const DEFAULT_TOLERANCE: f64 = 0.1;

pub const SWEEP_HEADER: &str =
    "threshold,delay,tp,fp,fn,precision,recall,mean_latency,direction_accuracy";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    /// 1.0 when nothing was detected.
    pub precision: f64,
    /// 1.0 when there was nothing to detect.
    pub recall: f64,
    /// Mean of `event.t - start_t` over matches; `None` without matches.
    pub mean_latency: Option<f64>,
    /// Share of matches whose directions agree; 1.0 without matches.
    pub direction_accuracy: f64,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

/// Greedy chronological one-to-one matching.
///
/// Each event, in order, claims the earliest unclaimed label whose window
/// `[start_t, start_t + duration + tolerance]` contains it. Direction
/// disagreement still counts as a true positive.
pub fn match_events(
    events: &[ShakeEvent],
    labels: &[LabeledBurst],
    tolerance: f64,
) -> Result<EvalReport> {
    if !tolerance.is_finite() || tolerance < 0.0 {
        return Err(Error::Config(format!(
            "tolerance must be finite and >= 0, got {tolerance}"
        )));
    }
    for (i, w) in events.windows(2).enumerate() {
        if w[1].t < w[0].t {
            return Err(Error::Ordering {
                previous: w[0].t,
                t: w[1].t,
            }
            .at_sample(i + 1));
        }
    }
    for (i, w) in labels.windows(2).enumerate() {
        if w[1].start_t < w[0].start_t {
            return Err(Error::Ordering {
                previous: w[0].start_t,
                t: w[1].start_t,
            }
            .at_sample(i + 1));
        }
    }

    let mut claimed = vec![false; labels.len()];
    let mut first_open = 0;
    let mut tp = 0;
    let mut agree = 0;
    let mut latency_sum = 0.0;
    for e in events {
        // Labels whose window closed before this event stay closed for later ones.
        while first_open < labels.len()
            && (claimed[first_open]
                || labels[first_open].start_t + labels[first_open].duration + tolerance < e.t)
        {
            first_open += 1;
        }
        for (j, l) in labels.iter().enumerate().skip(first_open) {
            if l.start_t > e.t {
                break;
            }
            if !claimed[j] && e.t <= l.start_t + l.duration + tolerance {
                claimed[j] = true;
                tp += 1;
                latency_sum += e.t - l.start_t;
                if e.direction == l.direction {
                    agree += 1;
                }
                break;
            }
        }
    }

    Ok(EvalReport {
        true_positives: tp,
        false_positives: events.len() - tp,
        false_negatives: labels.len() - tp,
        precision: ratio(tp, events.len()),
        recall: ratio(tp, labels.len()),
        mean_latency: (tp > 0).then(|| latency_sum / tp as f64),
        direction_accuracy: ratio(agree, tp),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub threshold: f64,
    pub delay: f64,
    pub report: EvalReport,
}

fn grid_configs(thresholds: &[f64], delays: &[f64]) -> Result<Vec<DetectorConfig>> {
    if thresholds.is_empty() || delays.is_empty() {
        return Err(Error::Config(
            "threshold and delay grids must be non-empty".into(),
        ));
    }
    let mut configs = Vec::with_capacity(thresholds.len() * delays.len());
    for &threshold in thresholds {
        for &delay in delays {
            configs.push(DetectorConfig::new(threshold, delay)?);
        }
    }
    Ok(configs)
}

/// One cell per (threshold, delay), thresholds outermost.
pub fn sweep(
    trace: &TraceDocument,
    labels: &[LabeledBurst],
    thresholds: &[f64],
    delays: &[f64],
    tolerance: f64,
) -> Result<Vec<SweepCell>> {
    sweep_with(
        Execution::default(),
        trace,
        labels,
        thresholds,
        delays,
        tolerance,
    )
}

pub fn sweep_with(
    exec: Execution,
    trace: &TraceDocument,
    labels: &[LabeledBurst],
    thresholds: &[f64],
    delays: &[f64],
    tolerance: f64,
) -> Result<Vec<SweepCell>> {
    let configs = grid_configs(thresholds, delays)?;
    // Fail on bad tolerance or label order before fanning out.
    match_events(&[], labels, tolerance)?;
    par::map(exec, &configs, |cfg| {
        let events = process_trace(&trace.samples, cfg)?;
        Ok(SweepCell {
            threshold: cfg.threshold(),
            delay: cfg.delay(),
            report: match_events(&events, labels, tolerance)?,
        })
    })
    .into_iter()
    .collect()
}

/// Runs one detector per trace.
pub fn detect_batch(
    exec: Execution,
    traces: &[Vec<AccelSample>],
    config: &DetectorConfig,
) -> Vec<Result<Vec<ShakeEvent>>> {
    par::map(exec, traces, |samples| process_trace(samples, config))
}

pub fn write_sweep_csv(cells: &[SweepCell]) -> String {
    let mut out = String::with_capacity(64 + cells.len() * 80);
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for c in cells {
        let r = &c.report;
        let latency = r
            .mean_latency
            .map(|v| format!("{v:.6}"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{:.6},{:.6},{},{},{},{:.6},{:.6},{},{:.6}",
            c.threshold,
            c.delay,
            r.true_positives,
            r.false_positives,
            r.false_negatives,
            r.precision,
            r.recall,
            latency,
            r.direction_accuracy
        );
    }
    out
}

pub fn read_sweep_csv(text: &str) -> Result<Vec<SweepCell>> {
    let mut lines = text
        .strip_suffix('\n')
        .unwrap_or(text)
        .split('\n')
        .enumerate();
    match lines.next() {
        Some((_, SWEEP_HEADER)) => {}
        _ => return Err(Error::Format(format!("expected header {SWEEP_HEADER:?}")).at_line(1)),
    }
    let float = |raw: &str| -> Result<f64> {
        raw.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Format(format!("{raw:?} is not a finite number")))
    };
    let count = |raw: &str| -> Result<usize> {
        raw.parse()
            .map_err(|_| Error::Format(format!("{raw:?} is not a count")))
    };
    let mut cells = Vec::new();
    for (i, row) in lines {
        let line = i + 1;
        let parsed = (|| -> Result<SweepCell> {
            let f: Vec<&str> = row.split(',').collect();
            if f.len() != 9 {
                return Err(Error::Format(format!(
                    "expected 9 columns, found {}",
                    f.len()
                )));
            }
            Ok(SweepCell {
                threshold: float(f[0])?,
                delay: float(f[1])?,
                report: EvalReport {
                    true_positives: count(f[2])?,
                    false_positives: count(f[3])?,
                    false_negatives: count(f[4])?,
                    precision: float(f[5])?,
                    recall: float(f[6])?,
                    mean_latency: if f[7].is_empty() {
                        None
                    } else {
                        Some(float(f[7])?)
                    },
                    direction_accuracy: float(f[8])?,
                },
            })
        })()
        .map_err(|e| e.at_line(line))?;
        cells.push(parsed);
    }
    Ok(cells)
}
