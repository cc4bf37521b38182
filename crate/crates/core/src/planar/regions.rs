//! Region bookkeeping for deciding which way a closed loop turns.
//!
//! Faces of the pieces being glued are merged into regions of the glued
//! picture; every curve of the result is an edge between the regions on its
//! two sides. A loop runs clockwise exactly when the side reaching the output
//! boundary, once the loop itself is removed, is on its left.

use std::collections::VecDeque;

use super::{find, PlanarError};
use crate::smoothing::RegionSign;

pub(crate) struct RegionGraph {
    parent: Vec<usize>,
    outer: Vec<bool>,
    curves: Vec<(usize, usize)>,
}

impl RegionGraph {
    pub(crate) fn new(faces: usize) -> Self {
        RegionGraph {
            parent: (0..faces).collect(),
            outer: vec![false; faces],
            curves: Vec::new(),
        }
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (find(&mut self.parent, a), find(&mut self.parent, b));
        self.parent[ra] = rb;
    }

    pub(crate) fn mark_outer(&mut self, face: usize) {
        self.outer[face] = true;
    }

    /// Record a curve with `left` on its left when followed along its
    /// orientation. Returns the curve id.
    pub(crate) fn add_curve(&mut self, left: usize, right: usize) -> usize {
        self.curves.push((left, right));
        self.curves.len() - 1
    }

    pub(crate) fn loop_sign(&mut self, curve: usize) -> Result<RegionSign, PlanarError> {
        let n = self.parent.len();
        let class: Vec<usize> = (0..n).map(|f| find(&mut self.parent, f)).collect();
        let mut outer_class = vec![false; n];
        for f in 0..n {
            if self.outer[f] {
                outer_class[class[f]] = true;
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (c, &(l, r)) in self.curves.iter().enumerate() {
            if c != curve {
                adj[class[l]].push(class[r]);
                adj[class[r]].push(class[l]);
            }
        }
        let reaches_outer = |start: usize| {
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(x) = queue.pop_front() {
                if outer_class[x] {
                    return true;
                }
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            false
        };
        let (l, r) = self.curves[curve];
        let (left_out, right_out) = (reaches_outer(class[l]), reaches_outer(class[r]));
        match (left_out, right_out) {
            (true, false) => Ok(RegionSign::Negative),
            (false, true) => Ok(RegionSign::Positive),
            _ => Err(PlanarError::AmbiguousEmbedding),
        }
    }
}
