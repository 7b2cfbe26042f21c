//! Run manifests: a plain `key = value` record written next to every output
//! so that a run can be repeated exactly.

use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Verify,
    Evolve,
    Transform,
    Bell,
    Observables,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Verify => "verify",
            Self::Evolve => "evolve",
            Self::Transform => "transform",
            Self::Bell => "bell",
            Self::Observables => "observables",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunManifest {
    pub command: CommandKind,
    pub config_path: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub seed: u64,
    /// SHA-256 of the config file, or of the canonical argument list when
    /// the command takes no config file.
    pub config_hash: String,
    pub args: Vec<(String, String)>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: CommandKind, seed: u64, args: Vec<(String, String)>) -> Self {
        let canonical: String = args.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
        Self {
            command,
            config_path: None,
            output: None,
            seed,
            config_hash: sha256_hex(canonical.as_bytes()),
            args,
        }
    }

    pub fn with_config(mut self, path: &Path, contents: &[u8]) -> Self {
        self.config_path = Some(path.to_path_buf());
        self.config_hash = sha256_hex(contents);
        self
    }

    pub fn with_output(mut self, path: &Path) -> Self {
        self.output = Some(path.to_path_buf());
        self
    }

    pub fn render(&self) -> String {
        let opt = |p: &Option<PathBuf>| {
            p.as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default()
        };
        let mut s = format!(
            "command = {}\nconfig_path = {}\noutput = {}\nseed = {}\nconfig_sha256 = {}\nkdp_version = {}\nkdp_cli_version = {}\n",
            self.command.name(),
            opt(&self.config_path),
            opt(&self.output),
            self.seed,
            self.config_hash,
            kdp::VERSION,
            env!("CARGO_PKG_VERSION"),
        );
        for (k, v) in &self.args {
            s.push_str(&format!("arg.{k} = {v}\n"));
        }
        s
    }

    pub fn write_to(&self, path: &Path) -> std::io::Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.render().as_bytes())
    }
}
