use crate::error::CliResult;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const ARTIFACT_VERSION: &str = concat!("beltrami-cli/", env!("CARGO_PKG_VERSION"));

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    artifact_version: &'a str,
    config_hash: &'a str,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
    #[serde(flatten)]
    body: &'a T,
}

/// Writes artifacts into the output directory, stamping each with the run identity.
pub struct Sink {
    dir: PathBuf,
    hash: String,
    command: String,
    note: Option<&'static str>,
    written: Vec<PathBuf>,
}

/// `-0.0` prints as `0`.
pub fn clean(v: f64) -> f64 {
    v + 0.0
}

impl Sink {
    pub fn new(dir: &Path, hash: &str, command: &str, note: Option<&'static str>) -> CliResult<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            hash: hash.to_string(),
            command: command.to_string(),
            note,
            written: Vec::new(),
        })
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    pub fn json<T: Serialize>(&mut self, name: &str, body: &T) -> CliResult<()> {
        let env = Envelope {
            artifact_version: ARTIFACT_VERSION,
            config_hash: &self.hash,
            command: &self.command,
            note: self.note,
            body,
        };
        let mut bytes = serde_json::to_vec_pretty(&env)?;
        bytes.push(b'\n');
        self.put(name, &bytes)
    }

    /// CSV with `#`-prefixed header lines carrying the run identity.
    pub fn csv<R: Serialize>(&mut self, name: &str, rows: impl IntoIterator<Item = R>) -> CliResult<()> {
        let mut buf = Vec::new();
        writeln!(buf, "# artifact_version={ARTIFACT_VERSION}")?;
        writeln!(buf, "# config_hash={}", self.hash)?;
        writeln!(buf, "# command={}", self.command)?;
        if let Some(note) = self.note {
            writeln!(buf, "# note={note}")?;
        }
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        self.put(name, &buf)
    }

    fn put(&mut self, name: &str, bytes: &[u8]) -> CliResult<()> {
        let path = self.dir.join(name);
        std::fs::write(&path, bytes)?;
        self.written.push(path);
        Ok(())
    }
}
