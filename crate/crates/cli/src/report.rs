use std::collections::BTreeMap;
use std::fmt;

use hallkit::laurent::LaurentPoly;
use hallkit::report::{Comparison, Sweep};
use hallkit::Limits;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Human,
    Json,
}

/// Everything that determines a run, echoed into its report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub quiver: Option<String>,
    pub primes: Vec<u64>,
    pub max_total_dim: usize,
    pub limits: Limits,
    pub format: Format,
    pub args: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentEntry {
    pub label: String,
    pub value: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    /// All binding comparisons and sweeps hold.
    pub ok: bool,
    pub entries: Vec<Entry>,
    pub laurent: Vec<LaurentEntry>,
    pub comparisons: Vec<Comparison>,
    pub sweeps: Vec<Sweep>,
    /// Sweeps reported for information only; they do not affect the verdict.
    pub readings: Vec<Sweep>,
    pub details: Vec<serde_json::Value>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: RunConfig) -> Self {
        Report {
            command: command.into(),
            config,
            ok: true,
            entries: vec![],
            laurent: vec![],
            comparisons: vec![],
            sweeps: vec![],
            readings: vec![],
            details: vec![],
        }
    }

    pub fn arg(&mut self, key: &str, value: impl fmt::Display) {
        self.config.args.insert(key.to_string(), value.to_string());
    }

    pub fn entry(&mut self, label: impl Into<String>, value: impl fmt::Display) {
        self.entries.push(Entry { label: label.into(), value: value.to_string() });
    }

    pub fn laurent(&mut self, label: impl Into<String>, value: LaurentPoly) {
        self.laurent.push(LaurentEntry { label: label.into(), value });
    }

    pub fn compare(&mut self, c: Comparison) {
        self.ok &= c.holds;
        self.comparisons.push(c);
    }

    pub fn sweep(&mut self, s: Sweep) {
        self.ok &= s.ok();
        self.sweeps.push(s);
    }

    pub fn reading(&mut self, s: Sweep) {
        self.readings.push(s);
    }

    pub fn detail<T: Serialize>(&mut self, value: &T) -> serde_json::Result<()> {
        self.details.push(serde_json::to_value(value)?);
        Ok(())
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Human => self.to_string(),
            Format::Json => serde_json::to_string_pretty(self).expect("reports serialize") + "\n",
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(f, "hallkit {}", self.command)?;
        let primes: Vec<String> = c.primes.iter().map(u64::to_string).collect();
        write!(f, "config: quiver={} primes={} max-total-dim={}", c.quiver.as_deref().unwrap_or("-"), primes.join(","), c.max_total_dim)?;
        for (k, v) in &c.args {
            write!(f, " {k}={v}")?;
        }
        writeln!(f)?;
        for e in &self.entries {
            writeln!(f, "{} = {}", e.label, e.value)?;
        }
        for e in &self.laurent {
            writeln!(f, "{} = {}", e.label, e.value)?;
        }
        for cmp in &self.comparisons {
            writeln!(f, "{cmp}")?;
        }
        for s in &self.sweeps {
            write!(f, "{s}")?;
        }
        for s in &self.readings {
            write!(f, "(reading) {s}")?;
        }
        writeln!(f, "verdict: {}", if self.ok { "ok" } else { "IDENTITY VIOLATED" })
    }
}
