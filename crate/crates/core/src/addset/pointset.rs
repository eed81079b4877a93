use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::seq::{GroupDescriptor, Point};
use crate::{Error, Result};

/// Nonempty finite set of points in `Z` or `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    group: GroupDescriptor,
    points: BTreeSet<Point>,
}

impl PointSet {
    /// Duplicates are an error.
    pub fn new<I: IntoIterator<Item = Point>>(group: GroupDescriptor, points: I) -> Result<Self> {
        let group = group.validate()?;
        group.require_torsion_free()?;
        let mut set = BTreeSet::new();
        for p in points {
            let p = group.normalize(p)?;
            if set.contains(&p) {
                return Err(Error::InvalidPoint(format!("duplicate point {p:?}")));
            }
            set.insert(p);
        }
        if set.is_empty() {
            return Err(Error::InvalidArgument("point set must be nonempty".into()));
        }
        Ok(PointSet { group, points: set })
    }

    /// A subset of `Z`.
    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(GroupDescriptor::Integers, values.iter().map(|&v| vec![v]))
    }

    pub(crate) fn from_set(group: GroupDescriptor, points: BTreeSet<Point>) -> Self {
        PointSet { group, points }
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.contains(p)
    }

    /// Points in ascending lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    pub fn to_vec(&self) -> Vec<Point> {
        self.points.iter().cloned().collect()
    }

    /// Integer values of a subset of `Z` (or of any rank-1 lattice).
    pub fn ints(&self) -> Option<Vec<i64>> {
        (self.group.arity() == 1).then(|| self.points.iter().map(|p| p[0]).collect())
    }
}

fn combine(a: &PointSet, b: &PointSet, sub: bool) -> Result<PointSet> {
    if a.group != b.group {
        return Err(Error::GroupMismatch);
    }
    let g = a.group;
    let mut out = BTreeSet::new();
    for p in &a.points {
        for q in &b.points {
            out.insert(if sub { g.sub(p, q) } else { g.add(p, q) });
        }
    }
    Ok(PointSet::from_set(g, out))
}

/// `A + B`.
pub fn sumset(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    combine(a, b, false)
}

/// `A - B`.
pub fn diffset(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    combine(a, b, true)
}
