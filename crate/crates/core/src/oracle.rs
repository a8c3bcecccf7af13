//! Non-incremental reference for [`process_trace`](crate::detector::process_trace).
//!
//! Shares nothing with the streaming detector except direction
//! classification: each sample is judged against the full list of events
//! accepted so far.

use crate::detector::{classify_direction, AccelSample, Coordinates, DetectorConfig, ShakeEvent};
use crate::error::{Error, Result};

pub fn oracle_detect(samples: &[AccelSample], config: &DetectorConfig) -> Result<Vec<ShakeEvent>> {
    for (index, s) in samples.iter().enumerate() {
        if [s.t, s.ax, s.ay, s.az].iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSample(format!("non-finite field in {s:?}")).at_sample(index));
        }
        if index > 0 && samples[index - 1].t >= s.t {
            return Err(Error::Ordering {
                previous: samples[index - 1].t,
                t: s.t,
            }
            .at_sample(index));
        }
    }

    let theta = config.threshold();
    let tau = config.delay();
    let mut accepted: Vec<ShakeEvent> = Vec::new();
    for s in samples {
        let peak = if s.ax.abs() >= s.ay.abs() {
            s.ax.abs()
        } else {
            s.ay.abs()
        };
        if peak <= theta {
            continue;
        }
        let blocked = accepted.iter().any(|e| s.t - e.t <= tau);
        if blocked {
            continue;
        }
        accepted.push(ShakeEvent {
            t: s.t,
            direction: classify_direction(s.ax, s.ay)?,
            magnitude: peak,
            coordinates: Coordinates { ax: s.ax, ay: s.ay },
        });
    }
    Ok(accepted)
}
