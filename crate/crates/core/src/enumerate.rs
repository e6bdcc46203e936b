//! Isomorphism classes of dessins by edge count, and indexed basis windows.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, canonical_key, CanonicalKey};
use crate::dessin::Dessin;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::perm::{all_permutations, cycle_type_representative, partitions, Permutation};

pub const DEFAULT_ENUMERATION_BOUND: usize = 7;
pub const ORACLE_BOUND: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    All,
    Connected,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::All => "all",
            Mode::Connected => "connected",
        }
    }

    fn admits(self, d: &Dessin) -> bool {
        match self {
            Mode::All => true,
            Mode::Connected => d.is_connected(),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(Mode::All),
            "connected" => Ok(Mode::Connected),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerationConfig {
    pub bound: usize,
    pub exec: Exec,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            bound: DEFAULT_ENUMERATION_BOUND,
            exec: Exec::default(),
        }
    }
}

fn check_bound(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::BoundExceeded {
            what: "edges",
            value: n,
            limit,
        });
    }
    Ok(())
}

/// One key per isomorphism class of dessins with `n` edges, sorted.
pub fn enumerate_exact(n: usize, mode: Mode) -> Result<Vec<CanonicalKey>> {
    enumerate_exact_with(n, mode, EnumerationConfig::default())
}

/// σ0 ranges over one representative per cycle type, σ1 over all of Sₙ.
pub fn enumerate_exact_with(n: usize, mode: Mode, config: EnumerationConfig) -> Result<Vec<CanonicalKey>> {
    check_bound(n, config.bound)?;
    let sigma1s: Vec<Permutation> = all_permutations(n).collect();
    let total = sigma1s.len();
    let chunk = 720.min(total).max(1);
    let blocks: Vec<(Permutation, std::ops::Range<usize>)> = partitions(n)
        .iter()
        .flat_map(|parts| {
            let rep = cycle_type_representative(parts);
            (0..total)
                .step_by(chunk)
                .map(move |lo| (rep.clone(), lo..(lo + chunk).min(total)))
        })
        .collect();
    let found = config.exec.map(blocks, |(sigma0, range)| {
        let mut keys = BTreeSet::new();
        for sigma1 in &sigma1s[range] {
            let d = Dessin::new(sigma0.clone(), sigma1.clone()).expect("equal degree");
            if mode.admits(&d) {
                keys.insert(canonical_key(&d));
            }
        }
        keys
    });
    let merged: BTreeSet<CanonicalKey> = found.into_iter().flatten().collect();
    Ok(merged.into_iter().collect())
}

/// Reference enumeration scanning every pair in Sₙ × Sₙ.
pub fn oracle_enumerate(n: usize, mode: Mode) -> Result<Vec<CanonicalKey>> {
    check_bound(n, ORACLE_BOUND)?;
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let mut keys = BTreeSet::new();
    for a in &perms {
        for b in &perms {
            let d = Dessin::new(a.clone(), b.clone()).expect("equal degree");
            if mode.admits(&d) {
                keys.insert(canonical_key(&d));
            }
        }
    }
    Ok(keys.into_iter().collect())
}

/// All classes with at most `max_edges` edges, in window order, with a key index.
#[derive(Clone, Debug)]
pub struct BasisWindow {
    max_edges: usize,
    mode: Mode,
    include_empty: bool,
    keys: Vec<CanonicalKey>,
    dessins: Vec<Dessin>,
    index: HashMap<CanonicalKey, usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct WindowOptions {
    pub mode: Mode,
    pub include_empty: bool,
    pub enumeration: EnumerationConfig,
}

impl Default for WindowOptions {
    fn default() -> Self {
        WindowOptions {
            mode: Mode::All,
            include_empty: true,
            enumeration: EnumerationConfig::default(),
        }
    }
}

impl BasisWindow {
    /// Builds a window from per-edge-count key lists (`levels[n]` holds the `n`-edge classes).
    pub fn from_levels(max_edges: usize, mode: Mode, include_empty: bool, levels: Vec<Vec<CanonicalKey>>) -> Self {
        let mut keys: Vec<CanonicalKey> = levels.into_iter().flatten().collect();
        if !(include_empty && mode == Mode::All) {
            keys.retain(|k| k.edge_count() > 0);
        }
        keys.sort();
        keys.dedup();
        let dessins = keys.iter().map(CanonicalKey::to_dessin).collect();
        let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        BasisWindow {
            max_edges,
            mode,
            include_empty,
            keys,
            dessins,
            index,
        }
    }

    pub fn max_edges(&self) -> usize {
        self.max_edges
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn include_empty(&self) -> bool {
        self.include_empty
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[CanonicalKey] {
        &self.keys
    }

    pub fn dessins(&self) -> &[Dessin] {
        &self.dessins
    }

    pub fn index_of(&self, key: &CanonicalKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.index.contains_key(key)
    }

    /// Classes with exactly `n` edges.
    pub fn classes_with_edges(&self, n: usize) -> impl Iterator<Item = (&CanonicalKey, &Dessin)> {
        self.keys
            .iter()
            .zip(&self.dessins)
            .filter(move |(k, _)| k.edge_count() == n)
    }

    /// The window on `max_edges - 1` edges with the same options.
    pub fn shrink(&self) -> Option<BasisWindow> {
        let max = self.max_edges.checked_sub(1)?;
        let keys = self.keys.iter().filter(|k| k.edge_count() <= max).cloned().collect();
        Some(BasisWindow::from_levels(max, self.mode, self.include_empty, vec![keys]))
    }
}

/// Concatenation of `enumerate_exact(0..=max_edges)` in window order.
pub fn enumerate_window(max_edges: usize, options: WindowOptions) -> Result<BasisWindow> {
    check_bound(max_edges, options.enumeration.bound)?;
    let levels = (0..=max_edges)
        .map(|n| enumerate_exact_with(n, options.mode, options.enumeration))
        .collect::<Result<Vec<_>>>()?;
    Ok(BasisWindow::from_levels(max_edges, options.mode, options.include_empty, levels))
}

/// Whether `key` is a fixed point of canonicalization.
pub fn is_canonical(key: &CanonicalKey) -> bool {
    canonical_form(&key.to_dessin()).0 == *key
}
