use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{base_expand_compress, min_diameter_search, FreimanMap, PointSet};
use crate::seq::{GroupDescriptor, Point, SparseSeq};
use crate::{Error, Result};

/// How to build the Freiman map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// No-carry base expansion, any `|A| <= 24`.
    BaseExpand,
    /// Exhaustive minimal-diameter search, `|A| <= 6`.
    Search { n_max: usize },
}

/// A sparse pair transported onto `[0, n)` in `Z`.
#[derive(Clone, Debug)]
pub struct CompressedPair {
    pub x: SparseSeq,
    pub y: SparseSeq,
    /// Map on `A = supp(x - x_shift) u supp(y - y_shift)`.
    pub map: FreimanMap,
    pub x_shift: Point,
    pub y_shift: Point,
    /// Interval length: one more than the largest image.
    pub n: usize,
}

impl CompressedPair {
    /// Position in the compressed convolution of the original point `g`
    /// in `supp(x) + supp(y)`.
    pub fn sum_image(&self, group: GroupDescriptor, g: &[i64]) -> Option<i64> {
        let shifted = group.sub(&group.sub(g, &self.x_shift), &self.y_shift);
        let a: Vec<(&Point, i64)> = self.map.iter().collect();
        for (p, u) in &a {
            let rest = group.sub(&shifted, p);
            if let Some(v) = self.map.image(&rest) {
                return Some(u + v);
            }
        }
        None
    }
}

/// Shifts `x` and `y` so both supports contain 0, maps `A` into `Z` by an
/// order-2 Freiman isomorphism `phi` with `min phi = 0` and transports the
/// amplitudes: `x~(phi(a)) = x(a + x_shift)`, likewise for `y`.
pub fn compress_convolution(x: &SparseSeq, y: &SparseSeq, strategy: Strategy) -> Result<CompressedPair> {
    if x.group() != y.group() {
        return Err(Error::GroupMismatch);
    }
    let group = x.group();
    group.require_torsion_free()?;
    if x.is_empty() || y.is_empty() {
        return Err(Error::InvalidArgument("sequences must be nonzero".into()));
    }
    let x_shift = x.support()[0].clone();
    let y_shift = y.support()[0].clone();
    let neg = |p: &Point| -> Point { p.iter().map(|v| -v).collect() };
    let xs = x.translate(&neg(&x_shift))?;
    let ys = y.translate(&neg(&y_shift))?;
    let points: BTreeSet<Point> = xs.support().into_iter().chain(ys.support()).collect();
    let limit = match strategy {
        Strategy::BaseExpand => 24,
        Strategy::Search { .. } => 6,
    };
    if points.len() > limit {
        return Err(Error::InvalidArgument(format!(
            "combined support has {} points, strategy allows {limit}",
            points.len()
        )));
    }
    let a = PointSet::new(group, points)?;
    let map = match strategy {
        Strategy::BaseExpand => base_expand_compress(&a)?,
        Strategy::Search { n_max } => min_diameter_search(&a, n_max)?,
    };
    let low = map.image_set()[0];
    let transport = |s: &SparseSeq| -> Result<SparseSeq> {
        SparseSeq::from_entries(
            GroupDescriptor::Integers,
            s.iter().map(|(p, v)| (vec![map.image(p).expect("point in domain") - low], *v)),
        )
    };
    let xt = transport(&xs)?;
    let yt = transport(&ys)?;
    let images: BTreeMap<Point, i64> = map.iter().map(|(p, v)| (p.clone(), v - low)).collect();
    let mut map = FreimanMap::new(a, images)?;
    super::verify_freiman_order2(&mut map);
    let n = (map.image_set().last().copied().unwrap_or(0) + 1) as usize;
    Ok(CompressedPair { x: xt, y: yt, map, x_shift, y_shift, n })
}
