use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use super::{code_size_bound, greedy_code, random_code, CoveringCode};
use crate::error::CodeError;
use crate::formats::code::{read_code, write_code};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeMethod {
    Greedy,
    /// `random_code` with the given size (`None`: the existence bound) and seed.
    Random { size: Option<usize>, seed: u64 },
}

impl CodeMethod {
    pub fn build(self, q: u8, t: usize, r: usize) -> Result<CoveringCode, CodeError> {
        match self {
            CodeMethod::Greedy => greedy_code(q, t, r),
            CodeMethod::Random { size, seed } => {
                let size = match size {
                    Some(s) => s,
                    None => code_size_bound(q, t, r)? as usize,
                };
                random_code(q, t, r, size, seed)
            }
        }
    }
}

impl fmt::Display for CodeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeMethod::Greedy => write!(f, "greedy"),
            CodeMethod::Random { size: Some(s), seed } => write!(f, "random-n{s}-s{seed}"),
            CodeMethod::Random { size: None, seed } => write!(f, "random-s{seed}"),
        }
    }
}

type Key = (u8, usize, usize, CodeMethod);

/// Memoizes constructed codes in memory and, optionally, as code files in
/// a directory keyed by `(q, t, r, method)`.
#[derive(Debug, Default)]
pub struct CodeCache {
    dir: Option<PathBuf>,
    codes: HashMap<Key, Arc<CoveringCode>>,
}

impl CodeCache {
    pub fn in_memory() -> CodeCache {
        CodeCache::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> CodeCache {
        CodeCache {
            dir: Some(dir.into()),
            codes: HashMap::new(),
        }
    }

    fn file_for(&self, key: &Key) -> Option<PathBuf> {
        let (q, t, r, m) = key;
        self.dir.as_ref().map(|d| d.join(format!("code_q{q}_t{t}_r{r}_{m}.txt")))
    }

    pub fn get(&mut self, q: u8, t: usize, r: usize, method: CodeMethod) -> Result<Arc<CoveringCode>, CodeError> {
        let key = (q, t, r, method);
        if let Some(c) = self.codes.get(&key) {
            return Ok(Arc::clone(c));
        }
        let code = match self.load(&key) {
            Some(c) => c,
            None => {
                let c = method.build(q, t, r)?;
                self.store(&key, &c);
                c
            }
        };
        let code = Arc::new(code);
        self.codes.insert(key, Arc::clone(&code));
        Ok(code)
    }

    fn load(&self, key: &Key) -> Option<CoveringCode> {
        let path = self.file_for(key)?;
        let text = fs::read(&path).ok()?;
        let mut code = match read_code(&text) {
            Ok(c) => c,
            Err(e) => {
                log::warn!("ignoring unreadable cached code {}: {e}", path.display());
                return None;
            }
        };
        if (code.q(), code.t(), code.radius()) != (key.0, key.1, key.2) {
            log::warn!("cached code {} has unexpected parameters", path.display());
            return None;
        }
        match code.verify_cover() {
            Ok(true) => Some(code),
            _ => {
                log::warn!("cached code {} failed verification", path.display());
                None
            }
        }
    }

    fn store(&self, key: &Key, code: &CoveringCode) {
        let Some(path) = self.file_for(key) else { return };
        let result = fs::create_dir_all(path.parent().expect("cache file has a parent"))
            .and_then(|_| fs::write(&path, write_code(code)));
        if let Err(e) = result {
            log::warn!("could not cache code at {}: {e}", path.display());
        }
    }
}
