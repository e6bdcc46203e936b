//! Dessins as permutation pairs `(σ0, σ1)` on the edge set.
//!
//! Cycles of `σ0` are the black vertices, cycles of `σ1` the white vertices,
//! and cycles of `σ0·σ1` the faces. Disconnected and empty dessins are
//! ordinary values.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default bound on edge count for [`Dessin::monodromy_order`].
pub const DEFAULT_MONODROMY_BOUND: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawDessin", into = "RawDessin")]
pub struct Dessin {
    sigma0: Permutation,
    sigma1: Permutation,
}

/// Wire form: `{"edges": n, "sigma0": [...], "sigma1": [...]}` with 0-based images.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawDessin {
    pub edges: i64,
    pub sigma0: Vec<i64>,
    pub sigma1: Vec<i64>,
}

impl TryFrom<RawDessin> for Dessin {
    type Error = Error;

    fn try_from(raw: RawDessin) -> Result<Self> {
        Dessin::validate(raw.edges, &raw.sigma0, &raw.sigma1)
    }
}

impl From<Dessin> for RawDessin {
    fn from(d: Dessin) -> Self {
        RawDessin {
            edges: d.edge_count() as i64,
            sigma0: d.sigma0.images().iter().map(|&x| x as i64).collect(),
            sigma1: d.sigma1.images().iter().map(|&x| x as i64).collect(),
        }
    }
}

/// `survivor_map[old] = Some(new)` for surviving edges, `None` for deleted ones.
pub type SurvivorMap = Vec<Option<usize>>;

/// Multiset invariants; every list is stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Passport {
    pub black_degrees: Vec<usize>,
    pub white_degrees: Vec<usize>,
    pub face_degrees: Vec<usize>,
    pub component_count: usize,
    pub genus_list: Vec<usize>,
}

impl Dessin {
    pub fn new(sigma0: Permutation, sigma1: Permutation) -> Result<Self> {
        if sigma0.len() != sigma1.len() {
            return Err(Error::LengthMismatch {
                edges: sigma0.len(),
                sigma0: sigma0.len(),
                sigma1: sigma1.len(),
            });
        }
        Ok(Dessin { sigma0, sigma1 })
    }

    /// Validates an untrusted edge count and pair of image sequences.
    pub fn validate(edges: i64, sigma0: &[i64], sigma1: &[i64]) -> Result<Self> {
        if edges < 0 || sigma0.len() as i64 != edges || sigma1.len() as i64 != edges {
            return Err(Error::LengthMismatch {
                edges: edges.max(0) as usize,
                sigma0: sigma0.len(),
                sigma1: sigma1.len(),
            });
        }
        let n = edges as usize;
        let check = |images: &[i64]| -> Result<Permutation> {
            let mut out = Vec::with_capacity(n);
            for &x in images {
                if x < 0 || x as usize >= n {
                    return Err(Error::IndexOutOfRange { index: x, edges: n });
                }
                out.push(x as usize);
            }
            Permutation::from_images(out)
        };
        Ok(Dessin {
            sigma0: check(sigma0)?,
            sigma1: check(sigma1)?,
        })
    }

    pub fn from_images(sigma0: Vec<usize>, sigma1: Vec<usize>) -> Result<Self> {
        Dessin::new(
            Permutation::from_images(sigma0)?,
            Permutation::from_images(sigma1)?,
        )
    }

    pub(crate) fn from_images_unchecked(sigma0: Vec<usize>, sigma1: Vec<usize>) -> Self {
        Dessin {
            sigma0: Permutation::from_images_unchecked(sigma0),
            sigma1: Permutation::from_images_unchecked(sigma1),
        }
    }

    pub fn empty() -> Self {
        Dessin::from_images_unchecked(vec![], vec![])
    }

    /// The unique dessin with a single edge.
    pub fn single_edge() -> Self {
        Dessin::from_images_unchecked(vec![0], vec![0])
    }

    pub fn edge_count(&self) -> usize {
        self.sigma0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count() == 0
    }

    pub fn sigma0(&self) -> &Permutation {
        &self.sigma0
    }

    pub fn sigma1(&self) -> &Permutation {
        &self.sigma1
    }

    /// Face permutation `σ0·σ1`.
    pub fn face_permutation(&self) -> Permutation {
        self.sigma0.compose(&self.sigma1)
    }

    /// Relabels edges through `pi`: returns `(πσ0π⁻¹, πσ1π⁻¹)`.
    pub fn conjugate_by(&self, pi: &Permutation) -> Dessin {
        Dessin {
            sigma0: self.sigma0.conjugate_by(pi),
            sigma1: self.sigma1.conjugate_by(pi),
        }
    }

    /// Removes the edges in `deleted`; each vertex keeps the cyclic order of its remaining edges.
    pub fn delete_edges(&self, deleted: &[usize]) -> Result<(Dessin, SurvivorMap)> {
        let n = self.edge_count();
        let mut gone = vec![false; n];
        for &e in deleted {
            if e >= n {
                return Err(Error::IndexOutOfRange {
                    index: e as i64,
                    edges: n,
                });
            }
            gone[e] = true;
        }
        let mut survivor_map = vec![None; n];
        let mut next = 0;
        for e in 0..n {
            if !gone[e] {
                survivor_map[e] = Some(next);
                next += 1;
            }
        }
        let restrict = |sigma: &Permutation| -> Vec<usize> {
            (0..n)
                .filter(|&e| !gone[e])
                .map(|e| {
                    let mut x = sigma.apply(e);
                    while gone[x] {
                        x = sigma.apply(x);
                    }
                    survivor_map[x].unwrap()
                })
                .collect()
        };
        let d = Dessin::from_images_unchecked(restrict(&self.sigma0), restrict(&self.sigma1));
        Ok((d, survivor_map))
    }

    /// Orbits of `⟨σ0, σ1⟩` on edges, each sorted ascending, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.edge_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(e) = queue.pop_front() {
                for x in [self.sigma0.apply(e), self.sigma1.apply(e)] {
                    if !seen[x] {
                        seen[x] = true;
                        orbit.push(x);
                        queue.push_back(x);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Restriction to an edge subset closed under σ0 and σ1, relabeled in increasing original order.
    pub(crate) fn restrict_to_orbit(&self, orbit: &[usize]) -> Dessin {
        let mut local = vec![usize::MAX; self.edge_count()];
        for (i, &e) in orbit.iter().enumerate() {
            local[e] = i;
        }
        let map = |sigma: &Permutation| orbit.iter().map(|&e| local[sigma.apply(e)]).collect();
        Dessin::from_images_unchecked(map(&self.sigma0), map(&self.sigma1))
    }

    /// Connected components with the original edge indices of each.
    pub fn components(&self) -> Vec<(Dessin, Vec<usize>)> {
        self.orbits()
            .into_iter()
            .map(|orbit| (self.restrict_to_orbit(&orbit), orbit))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Euler characteristic count `c(σ0) + c(σ1) + c(σ0σ1) − n` (equals `2 − 2g` when connected).
    pub fn euler_characteristic(&self) -> i64 {
        (self.sigma0.cycle_count() + self.sigma1.cycle_count() + self.face_permutation().cycle_count())
            as i64
            - self.edge_count() as i64
    }

    /// Genus of a connected, non-empty dessin.
    pub fn genus(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        let components = self.orbits().len();
        if components != 1 {
            return Err(Error::Disconnected(components));
        }
        let chi = self.euler_characteristic();
        debug_assert!(chi <= 2 && chi % 2 == 0);
        Ok(((2 - chi) / 2) as usize)
    }

    pub fn passport(&self) -> Passport {
        let mut genus_list: Vec<usize> = self
            .components()
            .iter()
            .map(|(c, _)| c.genus().expect("components are connected and non-empty"))
            .collect();
        genus_list.sort_unstable();
        Passport {
            black_degrees: self.sigma0.cycle_type(),
            white_degrees: self.sigma1.cycle_type(),
            face_degrees: self.face_permutation().cycle_type(),
            component_count: genus_list.len(),
            genus_list,
        }
    }

    /// Order of the monodromy group `⟨σ0, σ1⟩`, by closure enumeration.
    pub fn monodromy_order(&self, bound: usize) -> Result<usize> {
        let n = self.edge_count();
        if n > bound {
            return Err(Error::BoundExceeded {
                what: "edges",
                value: n,
                limit: bound,
            });
        }
        let components = self.orbits().len();
        if components > 1 {
            return Err(Error::Disconnected(components));
        }
        let generators = [&self.sigma0, &self.sigma1];
        let identity = Permutation::identity(n);
        let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(g) = queue.pop_front() {
            for s in generators {
                let h = s.compose(&g);
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        Ok(seen.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s0: &[usize], s1: &[usize]) -> Dessin {
        Dessin::from_images(s0.to_vec(), s1.to_vec()).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(Dessin::validate(1, &[0], &[0]).unwrap(), Dessin::single_edge());
        assert!(Dessin::validate(2, &[1, 0], &[0, 1]).is_ok());
        assert!(matches!(
            Dessin::validate(2, &[0, 0], &[0, 1]),
            Err(Error::NotBijective(0))
        ));
        assert!(matches!(
            Dessin::validate(2, &[0, 1], &[0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            Dessin::validate(2, &[-1, 1], &[0, 1]),
            Err(Error::IndexOutOfRange { index: -1, .. })
        ));
        assert!(matches!(
            Dessin::validate(-1, &[], &[]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn json_wire_format() {
        let x: Dessin = serde_json::from_str(r#"{"edges":2,"sigma0":[1,0],"sigma1":[0,1]}"#).unwrap();
        assert_eq!(x, d(&[1, 0], &[0, 1]));
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"{"edges":2,"sigma0":[1,0],"sigma1":[0,1]}"#
        );
        assert!(serde_json::from_str::<Dessin>(r#"{"edges":2,"sigma0":[0,0],"sigma1":[0,1]}"#).is_err());
    }

    #[test]
    fn delete_examples() {
        let one = Dessin::single_edge();
        let (same, map) = one.delete_edges(&[]).unwrap();
        assert_eq!(same, one);
        assert_eq!(map, vec![Some(0)]);
        assert_eq!(one.delete_edges(&[0]).unwrap().0, Dessin::empty());

        // σ0 = (0 1 2), σ1 = id, delete edge 1
        let tri = d(&[1, 2, 0], &[0, 1, 2]);
        let (rest, map) = tri.delete_edges(&[1]).unwrap();
        assert_eq!(rest, d(&[1, 0], &[0, 1]));
        assert_eq!(map, vec![Some(0), None, Some(1)]);

        assert!(matches!(
            tri.delete_edges(&[3]),
            Err(Error::IndexOutOfRange { index: 3, edges: 3 })
        ));
    }

    #[test]
    fn component_examples() {
        assert!(Dessin::empty().components().is_empty());
        let comps = Dessin::single_edge().components();
        assert_eq!(comps, vec![(Dessin::single_edge(), vec![0])]);
        let two = d(&[0, 1], &[0, 1]).components();
        assert_eq!(two.len(), 2);
        assert!(two.iter().all(|(c, _)| *c == Dessin::single_edge()));
        assert_eq!(d(&[1, 0], &[0, 1]).components().len(), 1);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(Dessin::single_edge().genus().unwrap(), 0);
        assert_eq!(d(&[1, 2, 0], &[1, 2, 0]).genus().unwrap(), 1);
        assert_eq!(d(&[1, 0], &[1, 0]).genus().unwrap(), 0);
        assert!(matches!(Dessin::empty().genus(), Err(Error::Empty)));
        assert!(matches!(d(&[0, 1], &[0, 1]).genus(), Err(Error::Disconnected(2))));
    }

    #[test]
    fn passport_examples() {
        let p = Dessin::single_edge().passport();
        assert_eq!(
            (p.black_degrees, p.white_degrees, p.face_degrees, p.genus_list),
            (vec![1], vec![1], vec![1], vec![0])
        );
        let p = d(&[1, 0], &[0, 1]).passport();
        assert_eq!(p.black_degrees, vec![2]);
        assert_eq!(p.white_degrees, vec![1, 1]);
        assert_eq!(p.face_degrees, vec![2]);
        assert_eq!(p.genus_list, vec![0]);
        let p = Dessin::empty().passport();
        assert!(p.black_degrees.is_empty() && p.face_degrees.is_empty() && p.genus_list.is_empty());
        assert_eq!(p.component_count, 0);
    }

    #[test]
    fn monodromy_examples() {
        assert_eq!(Dessin::single_edge().monodromy_order(8).unwrap(), 1);
        assert_eq!(d(&[1, 2, 0], &[0, 1, 2]).monodromy_order(8).unwrap(), 3);
        assert_eq!(d(&[1, 2, 0], &[1, 0, 2]).monodromy_order(8).unwrap(), 6);
        assert!(matches!(
            d(&[0, 1], &[0, 1]).monodromy_order(8),
            Err(Error::Disconnected(2))
        ));
        let big = Dessin::from_images((1..10).chain([0]).collect(), (0..10).collect()).unwrap();
        assert!(matches!(big.monodromy_order(8), Err(Error::BoundExceeded { .. })));
    }
}
