//! Oriented-tree quivers and the combinatorics the stability arguments use.
//!
//! Vertices are labelled `1..=n`. An arrow is identified by its `(tail, head)`
//! pair, which is unambiguous because multiple arrows are not allowed.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{malformed, precondition, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
}

impl Arrow {
    pub const fn new(tail: usize, head: usize) -> Self {
        Self { tail, head }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.tail == v || self.head == v
    }

    /// The endpoint other than `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

impl core::fmt::Display for Arrow {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

/// A quiver with labelled vertices `1..=n`. Construction checks label ranges
/// only; [`Quiver::validate_tree`] decides whether it is an oriented tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    arrows: Vec<Arrow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeVerdict {
    pub is_tree: bool,
    pub diagnostic: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SubQuiver {
    pub vertices: BTreeSet<usize>,
    pub arrows: BTreeSet<Arrow>,
}

/// An end vertex of a subquiver with its boundary arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct End {
    pub vertex: usize,
    pub ingoing: BTreeSet<Arrow>,
    pub outgoing: BTreeSet<Arrow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RescaleFlag {
    Unit,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundednessSlot {
    Zero,
    Full,
    G,
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<Arrow>) -> Result<Self> {
        for a in &arrows {
            for v in [a.tail, a.head] {
                if v == 0 || v > n {
                    return Err(malformed(format!("arrow {a} references vertex {v} outside 1..={n}")));
                }
            }
        }
        Ok(Self { n, arrows })
    }

    /// Convenience constructor from `(tail, head)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(t, h)| Arrow::new(t, h)).collect())
    }

    /// Builds and validates an oriented tree.
    pub fn tree(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let q = Self::from_pairs(n, pairs)?;
        q.require_tree()?;
        Ok(q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    pub fn arrow_index(&self, a: Arrow) -> Option<usize> {
        self.arrows.iter().position(|&b| b == a)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(malformed(format!("vertex {v} outside 1..={}", self.n)))
        } else {
            Ok(())
        }
    }

    fn check_arrow(&self, a: Arrow) -> Result<usize> {
        self.arrow_index(a)
            .ok_or_else(|| malformed(format!("{a} is not an arrow of the quiver")))
    }

    /// Indices of arrows incident to `v`.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.touches(v))
            .map(|(k, _)| k)
    }

    pub fn validate_tree(&self) -> TreeVerdict {
        let bad = |d: String| TreeVerdict { is_tree: false, diagnostic: d };
        let distinct: BTreeSet<Arrow> = self.arrows.iter().copied().collect();
        if distinct.len() != self.arrows.len() {
            return bad("multiple arrows between the same ordered pair".into());
        }
        if let Some(a) = self.arrows.iter().find(|a| a.tail == a.head) {
            return bad(format!("loop at vertex {}", a.tail));
        }
        if self.n != self.arrows.len() + 1 {
            return bad(format!(
                "{} vertices but {} arrows; a tree needs #V = #A + 1",
                self.n,
                self.arrows.len()
            ));
        }
        let all: BTreeSet<usize> = self.vertices().collect();
        let reached = self.component(1, &all, &BTreeSet::new());
        if reached.len() != self.n {
            return bad("underlying graph is disconnected".into());
        }
        TreeVerdict { is_tree: true, diagnostic: "oriented tree".into() }
    }

    pub fn is_tree(&self) -> bool {
        self.validate_tree().is_tree
    }

    pub(crate) fn require_tree(&self) -> Result<()> {
        let v = self.validate_tree();
        if v.is_tree {
            Ok(())
        } else {
            Err(precondition(format!("quiver is not an oriented tree: {}", v.diagnostic)))
        }
    }

    /// Vertices reachable from `start` inside `allowed`, never crossing the
    /// arrows listed in `blocked`.
    fn component(&self, start: usize, allowed: &BTreeSet<usize>, blocked: &BTreeSet<Arrow>) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        if !allowed.contains(&start) {
            return seen;
        }
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            for a in self.arrows.iter().filter(|a| a.touches(v) && !blocked.contains(a)) {
                let w = a.other(v);
                if allowed.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Connected components of the full subquiver on `vertices`.
    pub fn components(&self, vertices: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut left = vertices.clone();
        let mut out = Vec::new();
        while let Some(&v) = left.iter().next() {
            let c = self.component(v, vertices, &BTreeSet::new());
            for w in &c {
                left.remove(w);
            }
            out.push(c);
        }
        out
    }

    /// Star of `i`: the arrows touching `i` and their endpoints.
    pub fn star(&self, i: usize) -> Result<SubQuiver> {
        self.check_vertex(i)?;
        let arrows: BTreeSet<Arrow> = self.arrows.iter().copied().filter(|a| a.touches(i)).collect();
        let vertices = arrows.iter().flat_map(|a| [a.tail, a.head]).collect();
        Ok(SubQuiver { vertices, arrows })
    }

    pub fn full_subquiver(&self, vertices: BTreeSet<usize>) -> SubQuiver {
        let arrows = self
            .arrows
            .iter()
            .copied()
            .filter(|a| vertices.contains(&a.tail) && vertices.contains(&a.head))
            .collect();
        SubQuiver { vertices, arrows }
    }

    pub fn check_subquiver(&self, sub: &SubQuiver) -> Result<()> {
        for &v in &sub.vertices {
            self.check_vertex(v)?;
        }
        for &a in &sub.arrows {
            self.check_arrow(a)?;
            if !sub.vertices.contains(&a.tail) || !sub.vertices.contains(&a.head) {
                return Err(malformed(format!("arrow {a} has an endpoint outside the subquiver")));
            }
        }
        Ok(())
    }

    /// END set of `sub` with the boundary arrows at each end.
    pub fn ends_and_boundary(&self, sub: &SubQuiver) -> Result<Vec<End>> {
        self.check_subquiver(sub)?;
        let mut ends = Vec::new();
        for &v in &sub.vertices {
            let outside: Vec<Arrow> = self
                .arrows
                .iter()
                .copied()
                .filter(|a| a.touches(v) && !sub.arrows.contains(a))
                .collect();
            if outside.is_empty() {
                continue;
            }
            ends.push(End {
                vertex: v,
                ingoing: outside.iter().copied().filter(|a| a.head == v).collect(),
                outgoing: outside.iter().copied().filter(|a| a.tail == v).collect(),
            });
        }
        Ok(ends)
    }

    /// Smallest vertex whose star has exactly one arrow.
    pub fn find_leaf(&self) -> Result<usize> {
        self.require_tree()?;
        if self.n < 2 {
            return Err(precondition("a leaf needs at least two vertices"));
        }
        self.vertices()
            .find(|&v| self.incident(v).count() == 1)
            .ok_or_else(|| precondition("tree without leaves"))
    }

    /// Vertex sets of the two subtrees left after deleting `a0`
    /// (tail side first).
    pub fn split_at_arrow(&self, a0: Arrow) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
        self.check_arrow(a0)?;
        self.require_tree()?;
        let all: BTreeSet<usize> = self.vertices().collect();
        let blocked = BTreeSet::from([a0]);
        Ok((
            self.component(a0.tail, &all, &blocked),
            self.component(a0.head, &all, &blocked),
        ))
    }

    /// Diagonal group element multiplying `f_{a0}` by `z` and fixing the rest:
    /// `z` on the head side of `a0`, `1` on the tail side.
    pub fn rescale_vector(&self, a0: Arrow) -> Result<Vec<RescaleFlag>> {
        let (_, head_side) = self.split_at_arrow(a0)?;
        Ok(self
            .vertices()
            .map(|v| if head_side.contains(&v) { RescaleFlag::Z } else { RescaleFlag::Unit })
            .collect())
    }

    /// Marks each `i != i0` zero if its path to `i0` enters through an
    /// ingoing arrow of `i0`, full otherwise. Index `k` holds vertex `k + 1`.
    pub fn boundedness_split(&self, i0: usize) -> Result<Vec<BoundednessSlot>> {
        self.check_vertex(i0)?;
        self.require_tree()?;
        let mut slots = alloc::vec![BoundednessSlot::Full; self.n];
        slots[i0 - 1] = BoundednessSlot::G;
        let rest: BTreeSet<usize> = self.vertices().filter(|&v| v != i0).collect();
        for a in self.arrows.iter().filter(|a| a.touches(i0)) {
            let slot = if a.head == i0 { BoundednessSlot::Zero } else { BoundednessSlot::Full };
            for v in self.component(a.other(i0), &rest, &BTreeSet::new()) {
                slots[v - 1] = slot;
            }
        }
        Ok(slots)
    }

    /// Breadth-first arrow order from `root`: each arrow is reported with its
    /// already-visited endpoint first.
    pub(crate) fn bfs_arrows(&self, root: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for k in self.incident(v).collect::<Vec<_>>() {
                let w = self.arrows[k].other(v);
                if seen.insert(w) {
                    out.push((k, v, w));
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// For each vertex outside `core`, the vertex of `core`'s neighbourhood
    /// through which it hangs off `core`. Assumes a tree.
    pub(crate) fn attachment(&self, core: &BTreeSet<usize>) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        let mut queue: VecDeque<(usize, Option<usize>)> = core.iter().map(|&v| (v, None)).collect();
        let mut seen = core.clone();
        while let Some((v, att)) = queue.pop_front() {
            for k in self.incident(v).collect::<Vec<_>>() {
                let w = self.arrows[k].other(v);
                if seen.insert(w) {
                    let a = att.unwrap_or(w);
                    out.insert(w, a);
                    queue.push_back((w, Some(a)));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Quiver {
        Quiver::tree(3, &[(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn tree_validation() {
        assert!(path3().is_tree());
        assert!(!Quiver::from_pairs(3, &[(1, 2), (2, 3), (1, 3)]).unwrap().is_tree());
        assert!(!Quiver::from_pairs(3, &[(1, 2)]).unwrap().is_tree());
        assert!(Quiver::from_pairs(2, &[(0, 1)]).is_err());
        assert!(!Quiver::from_pairs(2, &[(1, 2), (1, 2)]).unwrap().is_tree());
    }

    #[test]
    fn stars() {
        let q = path3();
        let s = q.star(2).unwrap();
        assert_eq!(s.vertices, BTreeSet::from([1, 2, 3]));
        assert_eq!(s.arrows.len(), 2);
        let s = q.star(1).unwrap();
        assert_eq!(s.vertices, BTreeSet::from([1, 2]));
        assert_eq!(s.arrows, BTreeSet::from([Arrow::new(1, 2)]));
        let single = Quiver::from_pairs(1, &[]).unwrap();
        assert!(single.star(1).unwrap().arrows.is_empty());
        assert!(q.star(4).is_err());
    }

    #[test]
    fn ends() {
        let q = path3();
        let sub = q.full_subquiver(BTreeSet::from([1, 2]));
        let ends = q.ends_and_boundary(&sub).unwrap();
        assert_eq!(ends.len(), 1);
        assert_eq!(ends[0].vertex, 2);
        assert!(ends[0].ingoing.is_empty());
        assert_eq!(ends[0].outgoing, BTreeSet::from([Arrow::new(2, 3)]));
        let whole = q.full_subquiver(BTreeSet::from([1, 2, 3]));
        assert!(q.ends_and_boundary(&whole).unwrap().is_empty());

        let fork = Quiver::tree(3, &[(1, 2), (3, 2)]).unwrap();
        let sub = SubQuiver { vertices: BTreeSet::from([2]), arrows: BTreeSet::new() };
        let ends = fork.ends_and_boundary(&sub).unwrap();
        assert_eq!(ends[0].ingoing, BTreeSet::from([Arrow::new(1, 2), Arrow::new(3, 2)]));

        let bogus = SubQuiver { vertices: BTreeSet::from([1]), arrows: BTreeSet::from([Arrow::new(1, 2)]) };
        assert!(q.ends_and_boundary(&bogus).is_err());
    }

    #[test]
    fn leaves() {
        assert_eq!(path3().find_leaf().unwrap(), 1);
        assert_eq!(Quiver::tree(2, &[(1, 2)]).unwrap().find_leaf().unwrap(), 1);
        assert_eq!(Quiver::tree(3, &[(1, 2), (3, 2)]).unwrap().find_leaf().unwrap(), 1);
        assert!(Quiver::from_pairs(3, &[(1, 2)]).unwrap().find_leaf().is_err());
    }

    #[test]
    fn splits() {
        let q = path3();
        assert_eq!(
            q.split_at_arrow(Arrow::new(1, 2)).unwrap(),
            (BTreeSet::from([1]), BTreeSet::from([2, 3]))
        );
        assert_eq!(
            q.split_at_arrow(Arrow::new(2, 3)).unwrap(),
            (BTreeSet::from([1, 2]), BTreeSet::from([3]))
        );
        assert!(q.split_at_arrow(Arrow::new(1, 3)).is_err());
        use RescaleFlag::*;
        assert_eq!(q.rescale_vector(Arrow::new(1, 2)).unwrap(), [Unit, Z, Z]);
        assert_eq!(q.rescale_vector(Arrow::new(2, 3)).unwrap(), [Unit, Unit, Z]);
    }

    #[test]
    fn boundedness() {
        use BoundednessSlot::*;
        let q = path3();
        assert_eq!(q.boundedness_split(2).unwrap(), [Zero, G, Full]);
        assert_eq!(q.boundedness_split(1).unwrap(), [G, Full, Full]);
        assert_eq!(q.boundedness_split(3).unwrap(), [Zero, Zero, G]);
        assert!(q.boundedness_split(0).is_err());
    }
}
