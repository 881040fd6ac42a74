//! The bundled development, embedded at build time.

use std::path::Path;

use crate::signature::Signature;
use crate::syntax::ParseError;

/// A bundled source file.
#[derive(Debug, Clone, Copy)]
pub struct CorpusFile {
    /// File name, e.g. `02-vec.ced`.
    pub name: &'static str,
    pub text: &'static str,
}

impl CorpusFile {
    /// File name without the ordering prefix and extension, e.g. `vec`.
    pub fn short_name(&self) -> &'static str {
        let stem = self.name.strip_suffix(".ced").unwrap_or(self.name);
        stem.split_once('-').map_or(stem, |(_, rest)| rest)
    }
}

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        &[$(CorpusFile { name: $name, text: include_str!(concat!("../../../corpus/", $name)) }),*]
    };
}

/// All bundled files in dependency order.
pub const FILES: &[CorpusFile] = corpus![
    "00-nat.ced",
    "01-list.ced",
    "02-vec.ced",
    "03-v2l.ced",
    "04-l2v.ced",
    "05-reuse-vec.ced",
    "06-vecl.ced",
    "07-reuse-list.ced",
    "08-map.ced",
    "09-reuse-nested.ced",
    "10-negative.ced",
];

/// Find a bundled file by its full or short name, or by the file name of a path.
pub fn find(name: &str) -> Option<usize> {
    let file = Path::new(name)
        .file_name()
        .and_then(|f| f.to_str())
        .unwrap_or(name);
    let stem = file.strip_suffix(".ced").unwrap_or(file);
    FILES
        .iter()
        .position(|f| f.name == file || f.short_name() == stem)
}

/// Error while loading bundled sources, naming the offending file.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{file}:{source}")]
pub struct LoadError {
    pub file: String,
    #[source]
    pub source: ParseError,
}

/// The whole development as one signature.
pub fn signature() -> Result<Signature, LoadError> {
    prefix(FILES.len())
}

/// The first `n` files, in order.
pub fn prefix(n: usize) -> Result<Signature, LoadError> {
    let mut sig = Signature::new();
    for f in &FILES[..n] {
        sig.extend(f.text).map_err(|source| LoadError {
            file: f.name.to_string(),
            source,
        })?;
    }
    Ok(sig)
}

/// A file together with everything it depends on.
pub fn closure(name: &str) -> Option<Result<Signature, LoadError>> {
    find(name).map(|i| prefix(i + 1))
}
