use super::RectMesh;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// Side of an element, in local edge order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Bottom, Side::Right, Side::Top, Side::Left];

    /// Local node positions `(start, end)` of this side, running in the
    /// direction of increasing x or y.
    fn local_nodes(self) -> (usize, usize) {
        match self {
            Side::Bottom => (0, 1),
            Side::Right => (1, 2),
            Side::Top => (3, 2),
            Side::Left => (0, 3),
        }
    }

    fn orientation(self) -> Orientation {
        match self {
            Side::Bottom | Side::Top => Orientation::Horizontal,
            Side::Left | Side::Right => Orientation::Vertical,
        }
    }

    /// True when the element lies on the positive (above / right) side.
    fn element_on_plus(self) -> bool {
        matches!(self, Side::Bottom | Side::Left)
    }
}

/// A mesh edge. `nodes` is stored lower index first; `minus` is the element
/// below (horizontal) or left of (vertical) the edge, `plus` the one above or
/// right. Boundary edges have exactly one of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub nodes: [usize; 2],
    pub orientation: Orientation,
    pub minus: Option<usize>,
    pub plus: Option<usize>,
}

impl Edge {
    pub fn is_boundary(&self) -> bool {
        self.minus.is_none() || self.plus.is_none()
    }

    /// The incident element with the lower index.
    pub fn element(&self) -> usize {
        match (self.minus, self.plus) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!("edge without incident element"),
        }
    }

    pub fn incident(&self) -> impl Iterator<Item = usize> {
        self.minus.into_iter().chain(self.plus)
    }

    pub fn side_in(&self, element: usize) -> Option<Side> {
        let plus = if self.plus == Some(element) {
            true
        } else if self.minus == Some(element) {
            false
        } else {
            return None;
        };
        Some(match (self.orientation, plus) {
            (Orientation::Horizontal, true) => Side::Bottom,
            (Orientation::Horizontal, false) => Side::Top,
            (Orientation::Vertical, true) => Side::Left,
            (Orientation::Vertical, false) => Side::Right,
        })
    }

    /// Reference coordinates, inside `element` (whose node list is
    /// `element_nodes`), of the point at parameter `t` running from
    /// `nodes[0]` (t = 0) to `nodes[1]` (t = 1).
    pub fn reference_point(&self, element: usize, element_nodes: &[usize; 4], t: f64) -> Option<[f64; 2]> {
        let side = self.side_in(element)?;
        let (start, _) = side.local_nodes();
        let s = if element_nodes[start] == self.nodes[0] { t } else { 1.0 - t };
        Some(match side {
            Side::Bottom => [s, 0.0],
            Side::Top => [s, 1.0],
            Side::Left => [0.0, s],
            Side::Right => [1.0, s],
        })
    }
}

/// All edges of a mesh, sorted by node pair, plus the element-to-edge map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    edges: Vec<Edge>,
    element_edges: Vec<[usize; 4]>,
}

/// Two elements claim the same side of an edge.
pub(crate) struct EdgeConflict {
    pub first: usize,
    pub second: usize,
}

impl EdgeSet {
    pub(crate) fn build(mesh: &RectMesh) -> EdgeSet {
        match Self::try_build(mesh.elements()) {
            Ok(set) => set,
            Err(c) => panic!("validated mesh has overlapping elements {} and {}", c.first, c.second),
        }
    }

    pub(crate) fn try_build(elements: &[[usize; 4]]) -> Result<EdgeSet, EdgeConflict> {
        let mut entries: Vec<(usize, usize, usize, Side)> = Vec::with_capacity(4 * elements.len());
        for (e, nodes) in elements.iter().enumerate() {
            for side in Side::ALL {
                let (s, t) = side.local_nodes();
                let (a, b) = (nodes[s], nodes[t]);
                entries.push((a.min(b), a.max(b), e, side));
            }
        }
        entries.sort_unstable_by_key(|&(a, b, e, _)| (a, b, e));

        let mut edges: Vec<Edge> = Vec::with_capacity(2 * elements.len() + 1);
        let mut element_edges = vec![[0usize; 4]; elements.len()];
        for &(a, b, e, side) in &entries {
            let new_edge = match edges.last() {
                Some(last) => last.nodes != [a, b],
                None => true,
            };
            if new_edge {
                edges.push(Edge { nodes: [a, b], orientation: side.orientation(), minus: None, plus: None });
            }
            let k = edges.len() - 1;
            let edge = &mut edges[k];
            let slot = if side.element_on_plus() { &mut edge.plus } else { &mut edge.minus };
            if let Some(first) = *slot {
                return Err(EdgeConflict { first, second: e });
            }
            if edge.orientation != side.orientation() {
                let first = edge.plus.or(edge.minus).unwrap_or(e);
                return Err(EdgeConflict { first, second: e });
            }
            *slot = Some(e);
            element_edges[e][side as usize] = k;
        }
        Ok(EdgeSet { edges, element_edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Edge> {
        self.edges.iter()
    }

    pub fn get(&self, k: usize) -> &Edge {
        &self.edges[k]
    }

    /// Edge indices of element `e` in local order (bottom, right, top, left).
    pub fn element_edges(&self, e: usize) -> [usize; 4] {
        self.element_edges[e]
    }
}

impl std::ops::Index<usize> for EdgeSet {
    type Output = Edge;

    fn index(&self, k: usize) -> &Edge {
        &self.edges[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Domain;

    #[test]
    fn square_level_one() {
        let m = RectMesh::uniform_level(Domain::symmetric_unit(), 1).unwrap();
        let edges = m.edges();
        assert_eq!(edges.len(), 12);
        let interior = edges.iter().filter(|e| !e.is_boundary()).count();
        assert_eq!(interior, 4);
        let horizontal = edges.iter().filter(|e| e.orientation == Orientation::Horizontal).count();
        assert_eq!(horizontal, 6);
        // nodes are stored lower index first, edges sorted
        for w in edges.iter().collect::<Vec<_>>().windows(2) {
            assert!(w[0].nodes < w[1].nodes);
        }
        for e in edges.iter() {
            assert!(e.nodes[0] < e.nodes[1]);
        }
    }

    #[test]
    fn interior_edges_have_consistent_sides() {
        let m = RectMesh::uniform(Domain::symmetric_unit(), 3, 2).unwrap();
        for edge in m.edges().iter().filter(|e| !e.is_boundary()) {
            let (lo, hi) = (edge.minus.unwrap(), edge.plus.unwrap());
            let (clo, chi) = (m.map_point(lo, [0.5, 0.5]), m.map_point(hi, [0.5, 0.5]));
            match edge.orientation {
                Orientation::Horizontal => assert!(clo[1] < chi[1] && clo[0] == chi[0]),
                Orientation::Vertical => assert!(clo[0] < chi[0] && clo[1] == chi[1]),
            }
            // both elements see the same physical point for every t
            for t in [0.0, 0.3, 1.0] {
                let p = m.map_point(lo, edge.reference_point(lo, &m.elements()[lo], t).unwrap());
                let q = m.map_point(hi, edge.reference_point(hi, &m.elements()[hi], t).unwrap());
                assert!((p[0] - q[0]).abs() < 1e-15 && (p[1] - q[1]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn reference_point_follows_node_order() {
        let m = RectMesh::uniform(Domain::new(0.0, 1.0, 0.0, 1.0).unwrap(), 1, 1).unwrap();
        let nodes = m.elements()[0];
        for edge in m.edges().iter() {
            let start = m.nodes()[edge.nodes[0]];
            let r = edge.reference_point(0, &nodes, 0.0).unwrap();
            assert_eq!(m.map_point(0, r), start);
            assert_eq!(edge.element(), 0);
            assert!(edge.reference_point(1, &nodes, 0.0).is_none());
        }
    }
}
