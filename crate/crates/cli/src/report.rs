use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const OK: u8 = 0;
pub const IO: u8 = 1;
pub const USAGE: u8 = 2;
pub const CAP: u8 = 3;
pub const CERTIFICATION: u8 = 4;
pub const ACCEPTANCE: u8 = 5;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn new(code: u8, msg: impl Into<String>) -> Self {
        Failure {
            code,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl From<uvqc::Error> for Failure {
    fn from(e: uvqc::Error) -> Self {
        use uvqc::Error::*;
        let code = match &e {
            Parse { .. } | InvalidArgument(_) | Dimension { .. } => USAGE,
            CapExceeded { .. } | BudgetExceeded { .. } | TooManyQubits(_) => CAP,
            Certification(_) => CERTIFICATION,
            _ => IO,
        };
        Failure::new(code, e.to_string())
    }
}

/// Bookkeeping shared by every subcommand's report.
pub struct Run {
    seed: u64,
    inputs: BTreeMap<String, String>,
    start: Instant,
}

impl Run {
    pub fn start(seed: u64) -> Self {
        Run {
            seed,
            inputs: BTreeMap::new(),
            start: Instant::now(),
        }
    }

    /// Read an input file and record its SHA-256.
    pub fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path)
            .map_err(|e| Failure::new(IO, format!("reading {}: {e}", path.display())))?;
        self.inputs.insert(
            path.display().to_string(),
            hex::encode(Sha256::digest(&bytes)),
        );
        String::from_utf8(bytes)
            .map_err(|_| Failure::new(USAGE, format!("{} is not UTF-8", path.display())))
    }

    pub fn finish(self, payload: Value) -> Value {
        json!({
            "tool": "uvqc",
            "version": env!("CARGO_PKG_VERSION"),
            "command": std::env::args().collect::<Vec<_>>(),
            "seed": self.seed,
            "inputs": self.inputs,
            "wall_time_s": self.start.elapsed().as_secs_f64(),
            "payload": payload,
        })
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::new(IO, format!("writing {}: {e}", path.display())))
}

/// To `path`, or stdout.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}
