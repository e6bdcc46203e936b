//! JSON-lines cache of enumerated classes, one file per edge count and mode.
//!
//! Layout of `dessins_n<k>_<mode>.jsonl`: a header line `{"format":1}`, then
//! one record per class: the dessin object plus its `"key"` and `"passport"`.
//! Every record is re-validated and re-canonicalized on load.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalKey};
use crate::dessin::{Dessin, Passport, RawDessin};
use crate::enumerate::{enumerate_exact_with, BasisWindow, Mode, WindowOptions};
use crate::error::{Error, Result};

pub const CACHE_FORMAT: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Header {
    format: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct Record {
    #[serde(flatten)]
    dessin: RawDessin,
    key: String,
    passport: Passport,
}

pub fn cache_file(dir: &Path, edges: usize, mode: Mode) -> PathBuf {
    dir.join(format!("dessins_n{edges}_{mode}.jsonl"))
}

pub fn save_level(dir: &Path, edges: usize, mode: Mode, keys: &[CanonicalKey]) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_file(dir, edges, mode);
    let tmp = path.with_extension("jsonl.tmp");
    {
        let mut out = std::io::BufWriter::new(fs::File::create(&tmp)?);
        serde_json::to_writer(&mut out, &Header { format: CACHE_FORMAT.into() })?;
        out.write_all(b"\n")?;
        for key in keys {
            let d = key.to_dessin();
            let record = Record {
                passport: d.passport(),
                dessin: d.into(),
                key: key.to_string(),
            };
            serde_json::to_writer(&mut out, &record)?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Loads one level; `Ok(None)` when the file does not exist.
pub fn load_level(dir: &Path, edges: usize, mode: Mode) -> Result<Option<Vec<CanonicalKey>>> {
    let path = cache_file(dir, edges, mode);
    let file = match fs::File::open(&path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let corrupt = |line: usize, message: String| Error::CorruptCache {
        path: path.clone(),
        line,
        message,
    };
    let mut lines = BufReader::new(file).lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => return Err(corrupt(1, "missing format header".into())),
    };
    let header: Header = serde_json::from_str(&header).map_err(|e| corrupt(1, e.to_string()))?;
    if header.format != serde_json::Value::from(CACHE_FORMAT) {
        return Err(Error::CacheVersion {
            path,
            found: header.format.to_string(),
            expected: CACHE_FORMAT,
        });
    }
    let mut keys = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let line = line?;
        let record: Record = serde_json::from_str(&line).map_err(|e| corrupt(lineno, e.to_string()))?;
        let d = Dessin::try_from(record.dessin).map_err(|e| corrupt(lineno, e.to_string()))?;
        let (key, rep) = canonical_form(&d);
        if key.as_str() != record.key || rep != d {
            return Err(corrupt(lineno, format!("record is not canonical (expected key {key})")));
        }
        if d.edge_count() != edges || (mode == Mode::Connected && !d.is_connected()) {
            return Err(corrupt(lineno, format!("record does not belong in {edges}-edge {mode} file")));
        }
        if record.passport != d.passport() {
            return Err(corrupt(lineno, "stored passport does not match".into()));
        }
        keys.push(key);
    }
    if keys.windows(2).any(|p| p[0] >= p[1]) {
        return Err(corrupt(0, "records are not sorted and unique".into()));
    }
    Ok(Some(keys))
}

/// Window built from cached levels where present; missing levels are enumerated and written back.
pub fn load_or_build_window(dir: Option<&Path>, max_edges: usize, options: WindowOptions) -> Result<BasisWindow> {
    let mut levels = Vec::with_capacity(max_edges + 1);
    for n in 0..=max_edges {
        let cached = match dir {
            Some(dir) => load_level(dir, n, options.mode)?,
            None => None,
        };
        let keys = match cached {
            Some(keys) => keys,
            None => {
                let keys = enumerate_exact_with(n, options.mode, options.enumeration)?;
                if let Some(dir) = dir {
                    save_level(dir, n, options.mode, &keys)?;
                }
                keys
            }
        };
        levels.push(keys);
    }
    Ok(BasisWindow::from_levels(max_edges, options.mode, options.include_empty, levels))
}

/// Saves every level of `window` and loads it back.
pub fn cache_roundtrip(window: &BasisWindow, dir: &Path) -> Result<BasisWindow> {
    for n in 0..=window.max_edges() {
        let mut keys: Vec<CanonicalKey> = window.keys().iter().filter(|k| k.edge_count() == n).cloned().collect();
        if n == 0 && window.mode() == Mode::All && keys.is_empty() {
            // the empty class is a real class even when the window leaves it out
            keys.push(canonical_form(&Dessin::empty()).0);
        }
        save_level(dir, n, window.mode(), &keys)?;
    }
    let levels = (0..=window.max_edges())
        .map(|n| {
            load_level(dir, n, window.mode())?.ok_or_else(|| {
                Error::Io(std::io::Error::new(std::io::ErrorKind::NotFound, "cache file vanished"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BasisWindow::from_levels(
        window.max_edges(),
        window.mode(),
        window.include_empty(),
        levels,
    ))
}
