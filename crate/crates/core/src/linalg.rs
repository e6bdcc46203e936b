//! Exact rational sparse vectors over canonical dessin keys, and subspaces
//! kept in fully reduced row-echelon form.
//!
//! The pivot of a row is its least key in window order (edge count, then key
//! text). Because every row is reduced against every other pivot, reducing a
//! vector needs a single pass over the pivot keys it touches.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::canon::CanonicalKey;
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

/// `"p/q"` with `q > 0`, always with an explicit denominator.
pub fn format_fraction(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_fraction(s: &str) -> Result<Rational> {
    let bad = || Error::MalformedCoefficient(s.to_owned());
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Formal finite sum of classes; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct SparseVector {
    entries: BTreeMap<CanonicalKey, Rational>,
}

impl SparseVector {
    pub fn zero() -> Self {
        SparseVector::default()
    }

    pub fn basis(key: CanonicalKey) -> Self {
        let mut v = SparseVector::zero();
        v.entries.insert(key, Rational::one());
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (CanonicalKey, Rational)>>(terms: I) -> Self {
        let mut v = SparseVector::zero();
        for (k, c) in terms {
            v.add_term(k, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<&Rational> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalKey, &Rational)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &CanonicalKey> {
        self.entries.keys()
    }

    /// Least key in window order.
    pub fn leading(&self) -> Option<(&CanonicalKey, &Rational)> {
        self.entries.iter().next()
    }

    /// Sum of all coefficients.
    pub fn augmentation(&self) -> Rational {
        self.entries.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn add_term(&mut self, key: CanonicalKey, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.entries.entry(key);
        match slot {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, factor: &Rational, other: &SparseVector) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.entries {
            self.add_term(k.clone(), &(factor * c));
        }
    }

    pub fn scaled(&self, factor: &Rational) -> SparseVector {
        if factor.is_zero() {
            return SparseVector::zero();
        }
        SparseVector {
            entries: self.entries.iter().map(|(k, c)| (k.clone(), c * factor)).collect(),
        }
    }

    /// Drops every coordinate whose key fails `keep`.
    pub fn project(&self, keep: impl Fn(&CanonicalKey) -> bool) -> SparseVector {
        SparseVector {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

/// `a·u + b·v`.
pub fn vector_combine(a: &Rational, u: &SparseVector, b: &Rational, v: &SparseVector) -> SparseVector {
    let mut out = u.scaled(a);
    out.add_scaled(b, v);
    out
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    key: CanonicalKey,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct WireVector {
    terms: Vec<WireTerm>,
}

impl Serialize for SparseVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WireVector {
            terms: self
                .entries
                .iter()
                .map(|(k, c)| WireTerm {
                    key: k.clone(),
                    coeff: format_fraction(c),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SparseVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = WireVector::deserialize(deserializer)?;
        let mut v = SparseVector::zero();
        for t in wire.terms {
            let c = parse_fraction(&t.coeff).map_err(serde::de::Error::custom)?;
            v.add_term(t.key, &c);
        }
        Ok(v)
    }
}

/// Span of inserted vectors in reduced row-echelon form with unit pivots.
#[derive(Clone, Default, Debug)]
pub struct Subspace {
    rows: Vec<SparseVector>,
    pivot_of: HashMap<CanonicalKey, usize>,
}

impl Subspace {
    pub fn new() -> Self {
        Subspace::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn pivot_row(&self, key: &CanonicalKey) -> Option<&SparseVector> {
        self.pivot_of.get(key).map(|&i| &self.rows[i])
    }

    /// Remainder of `v` after eliminating every pivot key; zero iff `v` is in the span.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter_map(|(k, c)| self.pivot_of.get(k).map(|&i| (i, c.clone())))
            .collect();
        let mut out = v.clone();
        for (i, c) in hits {
            out.add_scaled(&-c, &self.rows[i]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVector) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.leading() else {
            return false;
        };
        let pivot = pivot.clone();
        let r = r.scaled(&lead.recip());
        for row in &mut self.rows {
            if let Some(c) = row.get(&pivot).cloned() {
                row.add_scaled(&-c, &r);
            }
        }
        self.pivot_of.insert(pivot, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn extend<'a, I: IntoIterator<Item = &'a SparseVector>>(&mut self, vs: I) -> usize {
        vs.into_iter().filter(|v| self.insert(v)).count()
    }

    /// Whether every row of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Rows of `self` that `other` does not contain.
    pub fn outside<'a>(&'a self, other: &'a Subspace) -> impl Iterator<Item = &'a SparseVector> + 'a {
        self.rows.iter().filter(move |r| !other.contains(r))
    }

    /// Span of the rows after dropping coordinates that fail `keep`.
    pub fn projected(&self, keep: impl Fn(&CanonicalKey) -> bool) -> Subspace {
        let mut out = Subspace::new();
        for r in &self.rows {
            out.insert(&r.project(&keep));
        }
        out
    }

    #[cfg(test)]
    pub(crate) fn check_invariants(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| {
            let Some((p, c)) = r.leading() else { return false };
            c.is_one()
                && self.pivot_of.get(p) == Some(&i)
                && self
                    .pivot_of
                    .iter()
                    .all(|(k, &j)| j == i || r.get(k).is_none())
        }) && self.pivot_of.len() == self.rows.len()
    }
}

pub fn subspace_leq(a: &Subspace, b: &Subspace) -> bool {
    a.is_subspace_of(b)
}
