//! Flag parsing and experiment configuration.
//!
//! Flags are `--key value` or `--key=value`. An optional `--config FILE`
//! (JSON object) supplies defaults; explicit flags win. Only the thread
//! count may come from the environment (`MAXVAR_THREADS`), everything else
//! is flag- or config-driven.

use std::collections::BTreeMap;

use maxvar_core::unipotent::{GroupSpec, MulCase};

#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Default, Clone)]
pub struct Flags {
    values: BTreeMap<String, String>,
    pub positionals: Vec<String>,
}

impl Flags {
    pub fn parse(args: &[String]) -> Result<Flags, UsageError> {
        let mut flags = Flags::default();
        let mut i = 0;
        while i < args.len() {
            let a = &args[i];
            if let Some(rest) = a.strip_prefix("--") {
                if let Some((k, v)) = rest.split_once('=') {
                    flags.values.insert(k.to_string(), v.to_string());
                } else if rest == "default" || rest == "timing" || rest == "table" || rest == "list"
                {
                    // Boolean switches.
                    flags.values.insert(rest.to_string(), "true".to_string());
                } else {
                    let v = args
                        .get(i + 1)
                        .ok_or_else(|| UsageError(format!("flag --{rest} needs a value")))?;
                    flags.values.insert(rest.to_string(), v.clone());
                    i += 1;
                }
            } else {
                flags.positionals.push(a.clone());
            }
            i += 1;
        }
        if let Some(path) = flags.values.get("config").cloned() {
            flags.merge_config(&path)?;
        }
        Ok(flags)
    }

    /// Loads defaults from a JSON object file; existing flags win.
    fn merge_config(&mut self, path: &str) -> Result<(), UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {path}: {e}")))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| UsageError(format!("config {path} is not valid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| UsageError(format!("config {path} must be a JSON object")))?;
        for (k, v) in obj {
            if self.values.contains_key(k) {
                continue;
            }
            let rendered = match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            self.values.insert(k.clone(), rendered);
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }

    pub fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn u64_flag(&self, key: &str) -> Result<Option<u64>, UsageError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<u64>()
                .map(Some)
                .map_err(|_| UsageError(format!("--{key} expects an integer, got {v:?}"))),
        }
    }

    pub fn require_u64(&self, key: &str) -> Result<u64, UsageError> {
        self.u64_flag(key)?
            .ok_or_else(|| UsageError(format!("missing required flag --{key}")))
    }

    /// Group spec from `--p --f --n --case` (user-facing: rank at least 2).
    pub fn group_spec(&self) -> Result<GroupSpec, UsageError> {
        let p = self.require_u64("p")?;
        let f = self.require_u64("f")? as u32;
        let n = self.require_u64("n")? as u32;
        let case = self.require_u64("case")? as u8;
        if n < 2 {
            return Err(UsageError("rank --n must be at least 2".into()));
        }
        let case = MulCase::from_u8(case).map_err(|e| UsageError(e.to_string()))?;
        GroupSpec::new(p, f, n, case).map_err(|e| UsageError(e.to_string()))
    }

    pub fn threads(&self) -> Result<usize, UsageError> {
        if let Some(v) = self.u64_flag("threads")? {
            return Ok((v.max(1)) as usize);
        }
        if let Ok(env) = std::env::var("MAXVAR_THREADS") {
            if let Ok(v) = env.parse::<u64>() {
                return Ok(v.max(1) as usize);
            }
        }
        Ok(1)
    }

    pub fn budget(&self) -> Result<Budget, UsageError> {
        Ok(Budget {
            ops: self.u64_flag("budget-ops")?.unwrap_or(Budget::DEFAULT_OPS),
            secs: self
                .u64_flag("budget-secs")?
                .unwrap_or(Budget::DEFAULT_SECS),
        })
    }
}

/// Enumeration budget. Wall-clock limits are translated into a deterministic
/// operation budget through a fixed nominal rate, so skip decisions never
/// depend on measured time and reports stay byte-identical.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub ops: u64,
    pub secs: u64,
}

impl Budget {
    pub const DEFAULT_OPS: u64 = 1 << 34;
    pub const DEFAULT_SECS: u64 = 300;
    /// Nominal sustained field operations per second.
    pub const NOMINAL_OPS_PER_SEC: u64 = 50_000_000;

    pub fn effective_ops(&self) -> u64 {
        self.ops
            .min(self.secs.saturating_mul(Self::NOMINAL_OPS_PER_SEC))
    }

    /// Whether a sweep of `space` points at `ops_per_point` cost fits.
    pub fn allows(&self, space: u128, ops_per_point: u64) -> bool {
        space.saturating_mul(ops_per_point as u128) <= self.effective_ops() as u128
    }
}
