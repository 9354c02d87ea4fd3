//! Side-by-side comparisons collected by the verifiers.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One instance of an identity with both sides rendered exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Comparison {
    pub fn new(case: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        Comparison { case: case.into(), holds: lhs == rhs, lhs, rhs, notes: vec![] }
    }

    /// A comparison whose verdict is decided by the caller, e.g. for equal values with different renderings.
    pub fn with_verdict(case: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display, holds: bool) -> Self {
        Comparison { case: case.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), holds, notes: vec![] }
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.holds { "ok" } else { "FAIL" };
        write!(f, "[{mark}] {}: {} = {}", self.case, self.lhs, self.rhs)?;
        for n in &self.notes {
            write!(f, "\n      {n}")?;
        }
        Ok(())
    }
}

/// Results of checking one identity over many instances.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub title: String,
    pub checked: usize,
    pub passed: usize,
    pub failures: Vec<Comparison>,
    /// The first few passing instances, kept for display.
    pub examples: Vec<Comparison>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

const KEEP: usize = 3;

impl Sweep {
    pub fn new(title: impl Into<String>) -> Self {
        Sweep { title: title.into(), ..Default::default() }
    }

    pub fn push(&mut self, c: Comparison) {
        self.checked += 1;
        if c.holds {
            self.passed += 1;
            if self.examples.len() < KEEP {
                self.examples.push(c);
            }
        } else {
            self.failures.push(c);
        }
    }

    pub fn extend(&mut self, other: Sweep) {
        self.checked += other.checked;
        self.passed += other.passed;
        self.failures.extend(other.failures);
        for e in other.examples {
            if self.examples.len() < KEEP {
                self.examples.push(e);
            }
        }
        self.notes.extend(other.notes);
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}/{} instances hold", self.title, self.passed, self.checked)?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for c in &self.examples {
            writeln!(f, "  {c}")?;
        }
        for c in &self.failures {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

/// Serde adapter writing big integers and rationals as decimal strings.
pub mod text {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }

    /// The same for a list.
    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
        where
            T: FromStr,
            T::Err: Display,
            D: Deserializer<'de>,
        {
            Vec::<String>::deserialize(d)?.into_iter().map(|x| x.parse().map_err(D::Error::custom)).collect()
        }
    }
}
