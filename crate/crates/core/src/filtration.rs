//! Optional-edge expansions, the dessin filtration, the product of covers
//! branched over `{0, 1, ∞}`, the product filtration built from it, and
//! their comparison inside a basis window.
//!
//! All spans are built from generators whose every term lies in the window.
//! Generator production is data-parallel; insertion into a [`Subspace`] is
//! sequential and in generator order, so results never depend on the
//! execution mode.

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use num::One;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, canonical_key, marked_canonical_text, CanonicalKey};
use crate::dessin::Dessin;
use crate::enumerate::BasisWindow;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{int, Rational, SparseVector, Subspace};

/// `Σ_{T ⊆ S} (−1)^{|T|} [D ∖ T]`.
pub fn expansion(d: &Dessin, optional: &[usize]) -> Result<SparseVector> {
    let mut s: Vec<usize> = optional.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&bad) = s.iter().find(|&&e| e >= d.edge_count()) {
        return Err(Error::IndexOutOfRange {
            index: bad as i64,
            edges: d.edge_count(),
        });
    }
    if s.len() >= usize::BITS as usize {
        return Err(Error::BoundExceeded {
            what: "optional edges",
            value: s.len(),
            limit: usize::BITS as usize - 1,
        });
    }
    let mut out = SparseVector::zero();
    let mut deleted = Vec::with_capacity(s.len());
    for mask in 0usize..(1 << s.len()) {
        deleted.clear();
        deleted.extend(s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
        let (rest, _) = d.delete_edges(&deleted)?;
        let sign = if deleted.len() % 2 == 0 { 1 } else { -1 };
        out.add_term(canonical_key(&rest), &int(sign));
    }
    Ok(out)
}

/// Expansion with every edge optional.
pub fn full_expansion(d: &Dessin) -> SparseVector {
    let all: Vec<usize> = (0..d.edge_count()).collect();
    expansion(d, &all).expect("all edges are in range")
}

/// `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for x in start..n {
            if n - x < k - prefix.len() {
                break;
            }
            prefix.push(x);
            go(x + 1, n, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn supported_in(window: &BasisWindow, v: &SparseVector) -> bool {
    v.keys().all(|k| window.contains(k))
}

/// Expansions of every window class with `level` optional edges, one per marked
/// isomorphism class, dropping any with a term outside the window.
pub fn dessin_generators(window: &BasisWindow, level: usize, exec: Exec) -> Vec<SparseVector> {
    let classes: Vec<&Dessin> = window
        .dessins()
        .iter()
        .filter(|d| d.edge_count() >= level)
        .collect();
    exec.flat_map(classes, |d| {
        let mut seen = HashSet::new();
        subsets(d.edge_count(), level)
            .into_iter()
            .filter(|s| seen.insert(marked_canonical_text(d, s)))
            .map(|s| expansion(d, &s).expect("subsets are in range"))
            .filter(|v| !v.is_zero() && supported_in(window, v))
            .collect()
    })
}

/// Product of two dessins as the diagonal action of `(σ0, σ1)` on edge pairs,
/// returned in canonical form. Edge `(i, j)` of the raw product has index `i·n2 + j`.
pub fn product(a: &Dessin, b: &Dessin) -> Dessin {
    canonical_form(&product_raw(a, b)).1
}

pub(crate) fn product_raw(a: &Dessin, b: &Dessin) -> Dessin {
    let (n1, n2) = (a.edge_count(), b.edge_count());
    let diag = |s: &crate::perm::Permutation, t: &crate::perm::Permutation| -> Vec<usize> {
        (0..n1 * n2)
            .map(|x| s.apply(x / n2) * n2 + t.apply(x % n2))
            .collect()
    };
    Dessin::from_images_unchecked(diag(a.sigma0(), b.sigma0()), diag(a.sigma1(), b.sigma1()))
}

/// Fully expanded `(A₁ − B₁) ∘ … ∘ (Aₙ − Bₙ)`.
pub fn product_vector(factors: &[(Dessin, Dessin)]) -> SparseVector {
    assert!(!factors.is_empty(), "product_vector needs at least one factor");
    // running sum of classes, keyed canonically, with a representative for each
    let mut terms: BTreeMap<CanonicalKey, (Dessin, Rational)> = BTreeMap::new();
    terms.insert(canonical_key(&Dessin::single_edge()), (Dessin::single_edge(), Rational::one()));
    for (a, b) in factors {
        let mut next: BTreeMap<CanonicalKey, (Dessin, Rational)> = BTreeMap::new();
        for (d, c) in terms.values() {
            for (factor, sign) in [(a, 1), (b, -1)] {
                let (key, rep) = canonical_form(&product_raw(d, factor));
                let slot = next.entry(key).or_insert_with(|| (rep, num::zero()));
                slot.1 += c * int(sign);
            }
        }
        next.retain(|_, (_, c)| *c != num::zero());
        terms = next;
    }
    SparseVector::from_terms(terms.into_iter().map(|(k, (_, c))| (k, c)))
}

/// Descriptors for product generators: non-decreasing sequences of indices into
/// `pairs` whose size product stays within `budget`. `pairs` is sorted by size.
fn factor_tuples(sizes: &[usize], level: usize, budget: usize) -> Vec<Vec<usize>> {
    fn go(sizes: &[usize], start: usize, level: usize, budget: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == level {
            out.push(prefix.clone());
            return;
        }
        for i in start..sizes.len() {
            let m = sizes[i];
            if m > budget {
                break;
            }
            prefix.push(i);
            go(sizes, i, level, budget / m, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(sizes, 0, level, budget, &mut Vec::new(), &mut out);
    out
}

/// Product generators of the given level with factors drawn from window classes.
///
/// Each factor is an unordered pair of distinct classes `A < B` (swapping only
/// flips the sign). Tuples are multisets of factors since `∘` is commutative,
/// and `Π max(|Aᵢ|, |Bᵢ|) ≤ N` keeps every expanded term inside the window.
pub fn belyi_generators(window: &BasisWindow, level: usize, exec: Exec) -> Vec<SparseVector> {
    if level == 0 {
        return window.keys().iter().cloned().map(SparseVector::basis).collect();
    }
    let dessins = window.dessins();
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..dessins.len() {
        for j in i + 1..dessins.len() {
            let m = dessins[i].edge_count().max(dessins[j].edge_count());
            pairs.push((m, i, j));
        }
    }
    // stable sort keeps window order within each size
    pairs.sort_by_key(|p| p.0);
    let sizes: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let tuples = factor_tuples(&sizes, level, window.max_edges());
    exec.map(tuples, |tuple| {
        let factors: Vec<(Dessin, Dessin)> = tuple
            .iter()
            .map(|&p| {
                let (_, i, j) = pairs[p];
                (dessins[i].clone(), dessins[j].clone())
            })
            .collect();
        product_vector(&factors)
    })
    .into_iter()
    .filter(|v| !v.is_zero() && supported_in(window, v))
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiltrationKind {
    Dessin,
    Belyi,
}

impl std::str::FromStr for FiltrationKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dessin" => Ok(FiltrationKind::Dessin),
            "belyi" => Ok(FiltrationKind::Belyi),
            other => Err(format!("unknown filtration kind {other:?}")),
        }
    }
}

/// A windowed filtration level together with how it was produced.
#[derive(Clone, Debug)]
pub struct LevelSpan {
    pub kind: FiltrationKind,
    pub level: usize,
    pub span: Subspace,
    pub generators: usize,
    pub elapsed: Duration,
}

pub fn generators(window: &BasisWindow, kind: FiltrationKind, level: usize, exec: Exec) -> Vec<SparseVector> {
    match kind {
        FiltrationKind::Dessin => dessin_generators(window, level, exec),
        FiltrationKind::Belyi => belyi_generators(window, level, exec),
    }
}

pub fn level_span(window: &BasisWindow, kind: FiltrationKind, level: usize, exec: Exec) -> LevelSpan {
    let start = Instant::now();
    let gens = generators(window, kind, level, exec);
    let mut span = Subspace::new();
    span.extend(&gens);
    let elapsed = start.elapsed();
    log::debug!(
        "{kind:?} level {level} on window {}: {} generators, rank {} in {elapsed:?}",
        window.max_edges(),
        gens.len(),
        span.rank()
    );
    LevelSpan {
        kind,
        level,
        span,
        generators: gens.len(),
        elapsed,
    }
}

/// Span of the expansions with `level` optional edges.
pub fn dessin_level_span(window: &BasisWindow, level: usize, exec: Exec) -> Subspace {
    level_span(window, FiltrationKind::Dessin, level, exec).span
}

/// Inner approximation of the product filtration: factors are dessins.
pub fn belyi_level_span_inner(window: &BasisWindow, level: usize, exec: Exec) -> Subspace {
    level_span(window, FiltrationKind::Belyi, level, exec).span
}

pub const MAX_WITNESSES: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub window: usize,
    pub level: usize,
    pub dim: usize,
    pub rank_dessin: usize,
    pub rank_belyi_inner: usize,
    pub belyi_in_dessin: bool,
    pub dessin_in_belyi_inner: bool,
    pub stable_at_prev_window: bool,
    /// Rows of one span outside the other; product-side rows come first.
    pub witnesses: Vec<SparseVector>,
    #[serde(skip)]
    pub generators_dessin: usize,
    #[serde(skip)]
    pub generators_belyi: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// `dim(span ∩ V^{≤N−1})`, computed as rank minus the rank of the projection onto top-degree keys.
fn restricted_rank(span: &Subspace, max_edges: usize) -> usize {
    span.rank() - span.projected(|k| k.edge_count() == max_edges).rank()
}

pub fn compare_levels(window: &BasisWindow, level: usize, exec: Exec) -> ComparisonReport {
    let start = Instant::now();
    let dessin = level_span(window, FiltrationKind::Dessin, level, exec);
    let belyi = level_span(window, FiltrationKind::Belyi, level, exec);

    let belyi_in_dessin = belyi.span.is_subspace_of(&dessin.span);
    let dessin_in_belyi_inner = dessin.span.is_subspace_of(&belyi.span);
    let witnesses: Vec<SparseVector> = belyi
        .span
        .outside(&dessin.span)
        .chain(dessin.span.outside(&belyi.span))
        .take(MAX_WITNESSES)
        .cloned()
        .collect();

    let stable_at_prev_window = match window.shrink() {
        None => true,
        Some(prev) => [&dessin, &belyi].iter().all(|full| {
            let small = level_span(&prev, full.kind, level, exec);
            small.span.rank() == restricted_rank(&full.span, window.max_edges())
        }),
    };

    ComparisonReport {
        window: window.max_edges(),
        level,
        dim: window.len(),
        rank_dessin: dessin.span.rank(),
        rank_belyi_inner: belyi.span.rank(),
        belyi_in_dessin,
        dessin_in_belyi_inner,
        stable_at_prev_window,
        witnesses,
        generators_dessin: dessin.generators,
        generators_belyi: belyi.generators,
        elapsed: start.elapsed(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub level: usize,
    pub rank_level: usize,
    pub rank_next: usize,
    pub quotient_dimension: usize,
    /// Number of window classes with exactly `level` edges.
    pub classes_with_level_edges: usize,
    /// Whether every level generator lies in the next level's span plus the
    /// full expansions of the `level`-edge classes.
    pub spanning_claim_holds: bool,
}

/// `rank(V_{D,d}) − rank(V_{D,d+1})` inside the window, with the spanning check.
pub fn quotient_dimension(window: &BasisWindow, level: usize, exec: Exec) -> QuotientReport {
    let gens = dessin_generators(window, level, exec);
    let mut current = Subspace::new();
    current.extend(&gens);
    let next = dessin_level_span(window, level + 1, exec);

    let mut augmented = next.clone();
    let mut classes = 0;
    for (_, d) in window.classes_with_edges(level) {
        classes += 1;
        let v = full_expansion(d);
        if supported_in(window, &v) {
            augmented.insert(&v);
        }
    }
    let spanning_claim_holds = gens.iter().all(|g| augmented.contains(g));

    QuotientReport {
        level,
        rank_level: current.rank(),
        rank_next: next.rank(),
        quotient_dimension: current.rank() - next.rank(),
        classes_with_level_edges: classes,
        spanning_claim_holds,
    }
}
