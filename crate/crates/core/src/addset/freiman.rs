use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::PointSet;
use crate::seq::{GroupDescriptor, Point};
use crate::{Error, Result};

/// Injective map `A -> Z`. `verified` is set only by [`verify_freiman_order2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreimanMap {
    domain: PointSet,
    images: BTreeMap<Point, i64>,
    verified: bool,
}

impl FreimanMap {
    pub fn new(domain: PointSet, images: BTreeMap<Point, i64>) -> Result<Self> {
        if images.len() != domain.len() || domain.iter().any(|p| !images.contains_key(p)) {
            return Err(Error::InvalidArgument(
                "images must be given for exactly the domain points".into(),
            ));
        }
        let distinct: BTreeSet<i64> = images.values().copied().collect();
        if distinct.len() != images.len() {
            return Err(Error::InvalidArgument("map is not injective".into()));
        }
        Ok(FreimanMap { domain, images, verified: false })
    }

    pub fn domain(&self) -> &PointSet {
        &self.domain
    }

    pub fn image(&self, p: &[i64]) -> Option<i64> {
        self.images.get(p).copied()
    }

    /// `(point, image)` pairs in ascending point order.
    pub fn iter(&self) -> impl Iterator<Item = (&Point, i64)> {
        self.images.iter().map(|(p, &v)| (p, v))
    }

    /// Sorted image values.
    pub fn image_set(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.images.values().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn diameter(&self) -> i64 {
        let v = self.image_set();
        v[v.len() - 1] - v[0]
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }
}

/// Pair sums `a_i + a_j` (`i <= j`) alongside the image sums.
fn pair_sums(group: GroupDescriptor, pts: &[(&Point, i64)]) -> Vec<(Point, i64)> {
    let mut out = Vec::with_capacity(pts.len() * (pts.len() + 1) / 2);
    for i in 0..pts.len() {
        for j in i..pts.len() {
            out.push((group.add(pts[i].0, pts[j].0), pts[i].1 + pts[j].1));
        }
    }
    out
}

/// True iff the relation between pair sums and image pair sums is a bijection.
fn sums_consistent(sums: &[(Point, i64)]) -> bool {
    let mut fwd: BTreeMap<&Point, i64> = BTreeMap::new();
    let mut back: BTreeMap<i64, &Point> = BTreeMap::new();
    for (s, t) in sums {
        if *fwd.entry(s).or_insert(*t) != *t {
            return false;
        }
        if *back.entry(*t).or_insert(s) != s {
            return false;
        }
    }
    true
}

/// Checks `a1 + a2 = b1 + b2  <=>  phi(a1) + phi(a2) = phi(b1) + phi(b2)` over
/// the whole domain and records the outcome in the map's `verified` flag.
pub fn verify_freiman_order2(map: &mut FreimanMap) -> bool {
    let pts: Vec<(&Point, i64)> = map.iter().collect();
    let ok = sums_consistent(&pair_sums(map.domain.group(), &pts));
    map.verified = ok;
    ok
}

/// Translates `A` to nonnegative coordinates and reads each point as a base-`M`
/// integer with `M = 2 max_i w_i + 1`, so pairwise sums never carry.
pub fn base_expand_compress(a: &PointSet) -> Result<FreimanMap> {
    let d = a.group().arity();
    let mins: Vec<i64> = (0..d).map(|i| a.iter().map(|p| p[i]).min().unwrap_or(0)).collect();
    let spread = a
        .iter()
        .flat_map(|p| p.iter().zip(&mins).map(|(v, m)| v - m))
        .max()
        .unwrap_or(0);
    let base = spread
        .checked_mul(2)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::InvalidArgument("coordinate spread too large".into()))?;
    let mut images = BTreeMap::new();
    for p in a.iter() {
        let mut value: i64 = 0;
        let mut scale: i64 = 1;
        for (i, (v, m)) in p.iter().zip(&mins).enumerate() {
            let term = (v - m)
                .checked_mul(scale)
                .ok_or_else(|| Error::InvalidArgument("base expansion overflows i64".into()))?;
            value = value
                .checked_add(term)
                .ok_or_else(|| Error::InvalidArgument("base expansion overflows i64".into()))?;
            if i + 1 < d {
                scale = scale
                    .checked_mul(base)
                    .ok_or_else(|| Error::InvalidArgument("base expansion overflows i64".into()))?;
            }
        }
        images.insert(p.clone(), value);
    }
    let mut map = FreimanMap::new(a.clone(), images)?;
    if !verify_freiman_order2(&mut map) {
        return Err(Error::InvalidArgument(format!("base {base} expansion is not order-2")));
    }
    Ok(map)
}

struct Search<'a> {
    group: GroupDescriptor,
    pts: &'a [Point],
    diameter: i64,
    images: Vec<i64>,
    used: BTreeSet<i64>,
}

impl Search<'_> {
    fn consistent(&self, k: usize) -> bool {
        let assigned: Vec<(&Point, i64)> = (0..=k).map(|i| (&self.pts[i], self.images[i])).collect();
        sums_consistent(&pair_sums(self.group, &assigned))
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.pts.len() {
            return self.used.contains(&0);
        }
        // at least one of the remaining slots must take the value 0
        let zero_open = self.used.contains(&0);
        for v in 0..=self.diameter {
            if self.used.contains(&v) {
                continue;
            }
            if !zero_open && k + 1 == self.pts.len() && v != 0 {
                break;
            }
            self.images[k] = v;
            if !self.consistent(k) {
                continue;
            }
            self.used.insert(v);
            if self.run(k + 1) {
                return true;
            }
            self.used.remove(&v);
        }
        false
    }
}

/// Smallest-diameter order-2 Freiman map of `A` into `[0, n_max)`, by
/// backtracking over diameters `|A| - 1, |A|, ...`. Images are tried in
/// ascending order, so the result is the lexicographically first optimum.
pub fn min_diameter_search(a: &PointSet, n_max: usize) -> Result<FreimanMap> {
    if a.len() > 6 {
        return Err(Error::InvalidArgument(format!("search supports |A| <= 6, got {}", a.len())));
    }
    if n_max > 64 {
        return Err(Error::InvalidArgument(format!("n_max {n_max} exceeds 64")));
    }
    let pts = a.to_vec();
    let m = pts.len() as i64;
    for diameter in (m - 1)..(n_max as i64) {
        let mut search = Search {
            group: a.group(),
            pts: &pts,
            diameter,
            images: vec![0; pts.len()],
            used: BTreeSet::new(),
        };
        if search.run(0) {
            let images = pts.iter().cloned().zip(search.images).collect();
            let mut map = FreimanMap::new(a.clone(), images)?;
            verify_freiman_order2(&mut map);
            return Ok(map);
        }
    }
    Err(Error::NotFound { n_max })
}
