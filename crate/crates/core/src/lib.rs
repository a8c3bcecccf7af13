//! Shake gesture detection over accelerometer sample streams.
//!
//! A sample fires a [`ShakeEvent`] when `max(|ax|, |ay|)` strictly exceeds a
//! threshold and strictly more than a debounce delay has passed since the
//! previous event. The event's direction comes from the dominant axis of
//! the triggering sample.
//!
//! ```
//! use shakekit::{process_trace, AccelSample, DetectorConfig, ShakeDirection};
//!
//! let config = DetectorConfig::new(1.0, 0.5).unwrap();
//! let trace = [
//!     AccelSample::new(0.00, 1.2, 0.1, 0.0),
//!     AccelSample::new(0.30, 1.5, 0.0, 0.0),
//!     AccelSample::new(0.60, 0.2, -1.4, 0.0),
//! ];
//! let events = process_trace(&trace, &config).unwrap();
//! assert_eq!(events.len(), 2);
//! assert_eq!(events[1].direction, ShakeDirection::Up);
//! ```

pub mod cli;
pub mod detector;
pub mod error;
pub mod eval;
pub mod oracle;
pub mod par;
pub mod rng;
pub mod synth;
pub mod trace_io;

pub use detector::{
    classify_direction, detect_step, process_trace, shake_predicate, AccelSample, Coordinates,
    DetectorConfig, DetectorState, Sensibility, ShakeDetector, ShakeDirection, ShakeEvent,
};
pub use error::{Error, Result};
pub use eval::{match_events, sweep, EvalReport, SweepCell};
pub use oracle::oracle_detect;
pub use par::Execution;
pub use synth::{generate_trace, standard_corpus, LabeledBurst, SynthSpec};
pub use trace_io::{EventDocument, TraceDocument};
