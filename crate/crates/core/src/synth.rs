//! Synthetic accelerometer traces with labeled shake bursts.
//!
//! Samples fall at `t = k / rate` for `k = 0..=floor(duration * rate)`.
//! Each burst is a half-sine pulse `amplitude * sin(π (t - start_t) / duration)`
//! on one axis: right is +x, left is -x, down is +y, up is -y. Every sample
//! then draws three normals from [`SplitMix64`] (x, y, z in that order),
//! scales them by `noise_sigma` and adds them to the axes.

use crate::detector::{AccelSample, ShakeDirection};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::trace_io::TraceDocument;

/// Seed for [`standard_corpus`] unless told otherwise.
pub const CORPUS_SEED: u64 = 42;
pub const CORPUS_RATE: f64 = 50.0;

// Absorbs representation error in duration * rate, e.g. 199.98 * 50.
const SAMPLE_COUNT_SLACK: f64 = 1e-9;

/// Ground-truth shake: a half-sine pulse on one axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledBurst {
    pub start_t: f64,
    pub direction: ShakeDirection,
    /// Peak, g.
    pub amplitude: f64,
    pub duration: f64,
}

impl LabeledBurst {
    pub fn new(
        start_t: f64,
        direction: ShakeDirection,
        amplitude: f64,
        duration: f64,
    ) -> Result<Self> {
        if direction == ShakeDirection::Unknown {
            return Err(Error::Spec("burst direction cannot be unknown".into()));
        }
        if !start_t.is_finite() {
            return Err(Error::Spec(format!(
                "burst start_t must be finite, got {start_t}"
            )));
        }
        if !amplitude.is_finite() || amplitude <= 0.0 {
            return Err(Error::Spec(format!(
                "burst amplitude must be > 0, got {amplitude}"
            )));
        }
        if !duration.is_finite() || duration <= 0.0 {
            return Err(Error::Spec(format!(
                "burst duration must be > 0, got {duration}"
            )));
        }
        Ok(Self {
            start_t,
            direction,
            amplitude,
            duration,
        })
    }

    pub fn end_t(&self) -> f64 {
        self.start_t + self.duration
    }

    /// Signed (ax, ay) contribution at time `t`; zero outside the burst.
    pub fn pulse_at(&self, t: f64) -> (f64, f64) {
        if t < self.start_t || t > self.end_t() {
            return (0.0, 0.0);
        }
        let v = self.amplitude * (std::f64::consts::PI * (t - self.start_t) / self.duration).sin();
        match self.direction {
            ShakeDirection::Right => (v, 0.0),
            ShakeDirection::Left => (-v, 0.0),
            ShakeDirection::Down => (0.0, v),
            ShakeDirection::Up => (0.0, -v),
            ShakeDirection::Unknown => (0.0, 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub total_duration: f64,
    pub sample_rate: f64,
    pub noise_sigma: f64,
    pub bursts: Vec<LabeledBurst>,
    pub seed: u64,
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.total_duration.is_finite() || self.total_duration < 0.0 {
            return Err(Error::Spec(format!(
                "total_duration must be finite and >= 0, got {}",
                self.total_duration
            )));
        }
        if !self.sample_rate.is_finite() || self.sample_rate <= 0.0 {
            return Err(Error::Spec(format!(
                "sample_rate must be finite and > 0, got {}",
                self.sample_rate
            )));
        }
        if !self.noise_sigma.is_finite() || self.noise_sigma < 0.0 {
            return Err(Error::Spec(format!(
                "noise_sigma must be finite and >= 0, got {}",
                self.noise_sigma
            )));
        }
        for (i, b) in self.bursts.iter().enumerate() {
            LabeledBurst::new(b.start_t, b.direction, b.amplitude, b.duration)
                .map_err(|e| Error::Spec(format!("burst {i}: {}", e.root())))?;
            if b.start_t < 0.0 || b.end_t() > self.total_duration {
                return Err(Error::Spec(format!(
                    "burst {i} [{}, {}] lies outside [0, {}]",
                    b.start_t,
                    b.end_t(),
                    self.total_duration
                )));
            }
            if i > 0 {
                let prev = &self.bursts[i - 1];
                if b.start_t < prev.start_t {
                    return Err(Error::Spec(format!("burst {i} is not sorted by start_t")));
                }
                if b.start_t < prev.end_t() {
                    return Err(Error::Spec(format!(
                        "burst {i} starting at {} overlaps burst {} ending at {}",
                        b.start_t,
                        i - 1,
                        prev.end_t()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn sample_count(&self) -> usize {
        (self.total_duration * self.sample_rate + SAMPLE_COUNT_SLACK).floor() as usize + 1
    }
}

/// Renders `spec` into a trace and returns its bursts as labels.
pub fn generate_trace(spec: &SynthSpec) -> Result<(TraceDocument, Vec<LabeledBurst>)> {
    spec.validate()?;
    let n = spec.sample_count();
    let mut rng = SplitMix64::new(spec.seed);
    let mut samples = Vec::with_capacity(n);
    let mut next_burst = 0;
    for k in 0..n {
        let t = k as f64 / spec.sample_rate;
        while next_burst < spec.bursts.len() && spec.bursts[next_burst].end_t() < t {
            next_burst += 1;
        }
        let (mut ax, mut ay) = (0.0, 0.0);
        for b in spec.bursts[next_burst..]
            .iter()
            .take_while(|b| b.start_t <= t)
        {
            let (dx, dy) = b.pulse_at(t);
            ax += dx;
            ay += dy;
        }
        ax += spec.noise_sigma * rng.next_normal();
        ay += spec.noise_sigma * rng.next_normal();
        let az = 0.0 + spec.noise_sigma * rng.next_normal();
        samples.push(AccelSample::new(t, ax, ay, az));
    }
    let doc = TraceDocument::new(samples, "synthetic")?;
    Ok((doc, spec.bursts.clone()))
}

/// A named member of the fixed evaluation corpus.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub spec: SynthSpec,
    pub trace: TraceDocument,
    pub labels: Vec<LabeledBurst>,
}

const CYCLE: [ShakeDirection; 4] = [
    ShakeDirection::Right,
    ShakeDirection::Left,
    ShakeDirection::Down,
    ShakeDirection::Up,
];

/// `count` bursts two seconds apart, cycling right, left, down, up.
pub fn burst_train(
    count: usize,
    first_start: f64,
    amplitude: f64,
    duration: f64,
) -> Vec<LabeledBurst> {
    (0..count)
        .map(|i| LabeledBurst {
            start_t: first_start + 2.0 * i as f64,
            direction: CYCLE[i % CYCLE.len()],
            amplitude,
            duration,
        })
        .collect()
}

/// Ten sharp 1.5 g flicks, no noise. Starts sit 5 ms off the 50 Hz grid so
/// the first sample inside each burst is already past a 1.0 g threshold.
pub fn clean_spec(seed: u64) -> SynthSpec {
    SynthSpec {
        total_duration: 21.0,
        sample_rate: CORPUS_RATE,
        noise_sigma: 0.0,
        bursts: burst_train(10, 1.005, 1.5, 0.06),
        seed,
    }
}

pub fn noisy_spec(seed: u64) -> SynthSpec {
    SynthSpec {
        total_duration: 21.0,
        sample_rate: CORPUS_RATE,
        noise_sigma: 0.1,
        bursts: burst_train(10, 1.0, 2.0, 0.2),
        seed,
    }
}

/// 10⁴ samples of noise at one fifth of the normal threshold.
pub fn pure_noise_spec(seed: u64) -> SynthSpec {
    SynthSpec {
        total_duration: 9_999.0 / CORPUS_RATE,
        sample_rate: CORPUS_RATE,
        noise_sigma: crate::detector::Sensibility::Normal.threshold() / 5.0,
        bursts: Vec::new(),
        seed,
    }
}

/// Bursts peaking at 1.05x the normal threshold, lightly noised.
pub fn near_threshold_spec(seed: u64) -> SynthSpec {
    SynthSpec {
        total_duration: 21.0,
        sample_rate: CORPUS_RATE,
        noise_sigma: 0.01,
        bursts: burst_train(
            10,
            1.01,
            1.05 * crate::detector::Sensibility::Normal.threshold(),
            0.2,
        ),
        seed,
    }
}

pub const CORPUS_NAMES: [&str; 4] = ["clean", "noisy", "pure-noise", "near-threshold"];

pub fn corpus_spec(name: &str, seed: u64) -> Option<SynthSpec> {
    match name {
        "clean" => Some(clean_spec(seed)),
        "noisy" => Some(noisy_spec(seed)),
        "pure-noise" => Some(pure_noise_spec(seed)),
        "near-threshold" => Some(near_threshold_spec(seed)),
        _ => None,
    }
}

pub fn standard_corpus(seed: u64) -> Vec<CorpusEntry> {
    CORPUS_NAMES
        .iter()
        .map(|&name| {
            let spec = corpus_spec(name, seed).expect("corpus name table");
            let (trace, labels) = generate_trace(&spec).expect("corpus specs are valid");
            CorpusEntry {
                name,
                spec,
                trace,
                labels,
            }
        })
        .collect()
}
