//! Canonical labelings of dessins.
//!
//! Each connected component is relabeled by a breadth-first traversal from
//! every possible start edge (labels are issued in first-visit order: the
//! lowest labeled edge with unlabeled neighbours labels `σ0(e)` and then
//! `σ1(e)`). The component word is the lexicographically least relabeled
//! `(σ0, σ1)` image sequence over all starts. Components are then sorted by
//! word and concatenated with cumulative offsets.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dessin::Dessin;
use crate::error::{Error, Result};

/// Text key `"n:a0,a1,…/b0,b1,…"` of an isomorphism class; the empty dessin is `"0:/"`.
///
/// Ordered by edge count, then by the key text.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CanonicalKey {
    edges: usize,
    text: Arc<str>,
}

impl CanonicalKey {
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    /// Decodes the key into its canonical representative.
    pub fn to_dessin(&self) -> Dessin {
        parse_key(&self.text).expect("keys are only built from valid dessins")
    }

    fn from_canonical(d: &Dessin) -> Self {
        CanonicalKey {
            edges: d.edge_count(),
            text: encode(d).into(),
        }
    }
}

impl Ord for CanonicalKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .cmp(&other.edges)
            .then_with(|| self.text.cmp(&other.text))
    }
}

impl PartialOrd for CanonicalKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.text)
    }
}

impl FromStr for CanonicalKey {
    type Err = Error;

    /// Accepts only keys that are fixed points of [`canonical_form`].
    fn from_str(s: &str) -> Result<Self> {
        let d = parse_key(s)?;
        let (key, _) = canonical_form(&d);
        if key.as_str() != s {
            return Err(Error::MalformedKey(s.to_owned()));
        }
        Ok(key)
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.text)
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn encode(d: &Dessin) -> String {
    let join = |xs: &[usize]| {
        xs.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "{}:{}/{}",
        d.edge_count(),
        join(d.sigma0().images()),
        join(d.sigma1().images())
    )
}

fn parse_key(s: &str) -> Result<Dessin> {
    let bad = || Error::MalformedKey(s.to_owned());
    let (n, rest) = s.split_once(':').ok_or_else(bad)?;
    let (a, b) = rest.split_once('/').ok_or_else(bad)?;
    let n: i64 = n.parse().map_err(|_| bad())?;
    let list = |t: &str| -> Result<Vec<i64>> {
        if t.is_empty() {
            return Ok(Vec::new());
        }
        t.split(',').map(|x| x.parse().map_err(|_| bad())).collect()
    };
    Dessin::validate(n, &list(a)?, &list(b)?)
}

/// Traversal from `start` on a connected dessin: returns `order` with `order[label] = edge`.
fn traversal(d: &Dessin, start: usize, label: &mut [usize]) -> Vec<usize> {
    label.fill(usize::MAX);
    let mut order = Vec::with_capacity(d.edge_count());
    label[start] = 0;
    order.push(start);
    let mut i = 0;
    while i < order.len() {
        let e = order[i];
        for x in [d.sigma0().apply(e), d.sigma1().apply(e)] {
            if label[x] == usize::MAX {
                label[x] = order.len();
                order.push(x);
            }
        }
        i += 1;
    }
    order
}

/// Least traversal word of a connected component, and the labeling achieving it.
fn component_word(d: &Dessin, marks: Option<&[bool]>) -> (Vec<usize>, Vec<usize>) {
    let n = d.edge_count();
    let mut label = vec![0; n];
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for start in 0..n {
        let order = traversal(d, start, &mut label);
        let mut word = Vec::with_capacity(3 * n);
        word.extend(order.iter().map(|&e| label[d.sigma0().apply(e)]));
        word.extend(order.iter().map(|&e| label[d.sigma1().apply(e)]));
        if let Some(m) = marks {
            word.extend(order.iter().map(|&e| m[e] as usize));
        }
        if best.as_ref().map_or(true, |(w, _)| word < *w) {
            best = Some((word, order));
        }
    }
    best.expect("components are non-empty")
}

/// Canonical relabeling of a (possibly marked) dessin: returns the representative
/// and, for each original edge, its canonical index.
fn canonical_labeling(d: &Dessin, marks: Option<&[bool]>) -> (Dessin, Vec<usize>) {
    let mut pieces: Vec<(Vec<usize>, Vec<usize>)> = d
        .orbits()
        .into_iter()
        .map(|orbit| {
            let comp = d.restrict_to_orbit(&orbit);
            let comp_marks: Option<Vec<bool>> = marks.map(|m| orbit.iter().map(|&e| m[e]).collect());
            let (word, order) = component_word(&comp, comp_marks.as_deref());
            // map local traversal order back to original edges
            (word, order.into_iter().map(|local| orbit[local]).collect())
        })
        .collect();
    pieces.sort();

    let n = d.edge_count();
    let mut new_index = vec![0; n];
    let mut next = 0;
    for (_, order) in &pieces {
        for &e in order {
            new_index[e] = next;
            next += 1;
        }
    }
    let mut s0 = vec![0; n];
    let mut s1 = vec![0; n];
    for e in 0..n {
        s0[new_index[e]] = new_index[d.sigma0().apply(e)];
        s1[new_index[e]] = new_index[d.sigma1().apply(e)];
    }
    (Dessin::from_images_unchecked(s0, s1), new_index)
}

/// Canonical key and canonical representative of the isomorphism class of `d`.
pub fn canonical_form(d: &Dessin) -> (CanonicalKey, Dessin) {
    let (rep, _) = canonical_labeling(d, None);
    (CanonicalKey::from_canonical(&rep), rep)
}

pub fn canonical_key(d: &Dessin) -> CanonicalKey {
    canonical_form(d).0
}

/// Canonical text for a dessin with a marked edge subset; equal iff some
/// isomorphism carries one marked set onto the other.
pub fn marked_canonical_text(d: &Dessin, marked: &[usize]) -> String {
    let mut marks = vec![false; d.edge_count()];
    for &e in marked {
        marks[e] = true;
    }
    let (rep, new_index) = canonical_labeling(d, Some(&marks));
    let mut canon_marks: Vec<usize> = marked.iter().map(|&e| new_index[e]).collect();
    canon_marks.sort_unstable();
    let list: Vec<String> = canon_marks.iter().map(usize::to_string).collect();
    format!("{}|{}", encode(&rep), list.join(","))
}

/// Whether a relabeling carries `a` onto `b`.
pub fn isomorphic(a: &Dessin, b: &Dessin) -> bool {
    a.edge_count() == b.edge_count() && canonical_key(a) == canonical_key(b)
}
