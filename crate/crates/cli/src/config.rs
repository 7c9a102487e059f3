//! Run configuration, echoed into every JSON document.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use qcg::HalfInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub q: String,
    pub precision: u32,
    /// Spin labels in canonical form ("3/2", "-1", "0").
    pub spins: BTreeMap<String, String>,
    pub format: String,
    pub tolerance: Option<String>,
    pub flags: Vec<String>,
}

impl RunConfig {
    pub fn new(command: &str, q: &str, precision: u32, format: &str) -> Self {
        RunConfig {
            command: command.to_string(),
            q: q.trim().to_string(),
            precision,
            spins: BTreeMap::new(),
            format: format.to_string(),
            tolerance: None,
            flags: Vec::new(),
        }
    }

    pub fn spin(mut self, name: &str, v: HalfInt) -> Self {
        self.spins.insert(name.to_string(), v.to_string());
        self
    }

    pub fn flag(mut self, f: impl Into<String>) -> Self {
        self.flags.push(f.into());
        self
    }
}

/// `command q=.. precision=.. format=.. [tolerance=..] [name=spin ..] [+flag ..]`
impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} q={} precision={} format={}", self.command, self.q, self.precision, self.format)?;
        if let Some(t) = &self.tolerance {
            write!(f, " tolerance={}", t)?;
        }
        for (k, v) in &self.spins {
            write!(f, " {}={}", k, v)?;
        }
        for fl in &self.flags {
            write!(f, " +{}", fl)?;
        }
        Ok(())
    }
}

impl FromStr for RunConfig {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut parts = s.split_whitespace();
        let command = parts.next().ok_or("empty config")?;
        let mut c = RunConfig::new(command, "", 0, "");
        for p in parts {
            if let Some(fl) = p.strip_prefix('+') {
                c.flags.push(fl.to_string());
                continue;
            }
            let (k, v) = p.split_once('=').ok_or_else(|| format!("bad config field {:?}", p))?;
            match k {
                "q" => c.q = v.to_string(),
                "precision" => c.precision = v.parse().map_err(|_| format!("bad precision {:?}", v))?,
                "format" => c.format = v.to_string(),
                "tolerance" => c.tolerance = Some(v.to_string()),
                _ => {
                    let h: HalfInt = v.parse().map_err(|e| format!("{}", e))?;
                    c.spins.insert(k.to_string(), h.to_string());
                }
            }
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let mut c = RunConfig::new("cgc", "0.5", 50, "json")
            .spin("j1", HalfInt::from_twice(3))
            .spin("m1", HalfInt::from_twice(-1))
            .flag("verify");
        c.tolerance = Some("1e-30".into());
        let s = c.to_string();
        assert_eq!(s, "cgc q=0.5 precision=50 format=json tolerance=1e-30 j1=3/2 m1=-1/2 +verify");
        assert_eq!(s.parse::<RunConfig>().unwrap(), c);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&json).unwrap(), c);
    }

    #[test]
    fn canonicalizes_spins() {
        let c: RunConfig = "table q=0.9 precision=40 format=csv j1=1/1 j2=1.5".parse().unwrap();
        assert_eq!(c.spins["j1"], "1");
        assert_eq!(c.spins["j2"], "3/2");
        assert!("x q".parse::<RunConfig>().is_err());
    }
}
