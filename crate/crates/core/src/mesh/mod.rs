//! Meshes of equal-size axis-aligned rectangles.
//!
//! Every element lists its nodes in local order N1 (bottom-left), N2
//! (bottom-right), N3 (top-right), N4 (top-left). Generated meshes number
//! nodes row-major from the bottom-left corner, x fastest.

mod edges;
mod text;
mod validate;

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::bfs_basis::ElementSize;

pub use edges::{Edge, EdgeSet, Orientation, Side};
pub use text::{parse_mesh, write_mesh};

/// Axis-aligned rectangular domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Domain {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self, MeshError> {
        let ok = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) && xmax > xmin && ymax > ymin;
        if ok {
            Ok(Domain { xmin, xmax, ymin, ymax })
        } else {
            Err(MeshError::DegenerateDomain { xmin, xmax, ymin, ymax })
        }
    }

    /// The square `(-1, 1)²`.
    pub fn symmetric_unit() -> Self {
        Domain { xmin: -1.0, xmax: 1.0, ymin: -1.0, ymax: 1.0 }
    }

    pub fn area(&self) -> f64 {
        (self.xmax - self.xmin) * (self.ymax - self.ymin)
    }
}

/// Optional source line attached to validation errors from parsed files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Loc(pub Option<usize>);

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(line) => write!(f, " (line {line})"),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeshError {
    #[error("degenerate domain [{xmin}, {xmax}] x [{ymin}, {ymax}]")]
    DegenerateDomain { xmin: f64, xmax: f64, ymin: f64, ymax: f64 },
    #[error("mesh must have at least one element in each direction")]
    NoElements,
    #[error("node {node} has non-finite coordinates{loc}")]
    NonFiniteNode { node: usize, loc: Loc },
    #[error("element {element} references node {node}, but the mesh has {count} nodes{loc}")]
    DanglingNode { element: usize, node: usize, count: usize, loc: Loc },
    #[error("element {element} is not an axis-aligned rectangle{loc}")]
    NonRectangular { element: usize, loc: Loc },
    #[error("element {element} nodes are not ordered counter-clockwise from the bottom-left corner{loc}")]
    Orientation { element: usize, loc: Loc },
    #[error("element {element} has size ({hx}, {hy}), expected ({expected_hx}, {expected_hy}){loc}")]
    InconsistentSize { element: usize, hx: f64, hy: f64, expected_hx: f64, expected_hy: f64, loc: Loc },
    #[error("nodes {first} and {second} coincide{loc}")]
    DuplicateNode { first: usize, second: usize, loc: Loc },
    #[error("node {node} lies on the boundary or inside element {element} without belonging to it{loc}")]
    NonConforming { node: usize, element: usize, loc: Loc },
    #[error("elements {first} and {second} overlap along a shared edge{loc}")]
    Overlap { first: usize, second: usize, loc: Loc },
}

/// Rectangular mesh with equal-size elements. Immutable once built.
#[derive(Debug, Clone)]
pub struct RectMesh {
    nodes: Vec<[f64; 2]>,
    elements: Vec<[usize; 4]>,
    size: ElementSize,
    grid: Option<(usize, usize)>,
    edges: OnceLock<EdgeSet>,
}

impl RectMesh {
    /// Builds a mesh from raw arrays (0-based node indices) and validates it.
    pub fn new(nodes: Vec<[f64; 2]>, elements: Vec<[usize; 4]>) -> Result<Self, MeshError> {
        validate::build(nodes, elements, None)
    }

    /// Uniform `nx × ny` grid on `domain`.
    pub fn uniform(domain: Domain, nx: usize, ny: usize) -> Result<Self, MeshError> {
        let domain = Domain::new(domain.xmin, domain.xmax, domain.ymin, domain.ymax)?;
        if nx == 0 || ny == 0 {
            return Err(MeshError::NoElements);
        }
        let (w, h) = (domain.xmax - domain.xmin, domain.ymax - domain.ymin);
        let size =
            ElementSize::new(w / nx as f64, h / ny as f64).map_err(|_| MeshError::DegenerateDomain {
                xmin: domain.xmin,
                xmax: domain.xmax,
                ymin: domain.ymin,
                ymax: domain.ymax,
            })?;
        let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1));
        for j in 0..=ny {
            let y = if j == ny { domain.ymax } else { domain.ymin + h * (j as f64 / ny as f64) };
            for i in 0..=nx {
                let x = if i == nx { domain.xmax } else { domain.xmin + w * (i as f64 / nx as f64) };
                nodes.push([x, y]);
            }
        }
        let id = |i: usize, j: usize| j * (nx + 1) + i;
        let mut elements = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                elements.push([id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
            }
        }
        Ok(RectMesh { nodes, elements, size, grid: Some((nx, ny)), edges: OnceLock::new() })
    }

    /// Uniform mesh at refinement `level`: `2^level` elements per direction.
    pub fn uniform_level(domain: Domain, level: u32) -> Result<Self, MeshError> {
        let n = 1usize.checked_shl(level).ok_or(MeshError::NoElements)?;
        Self::uniform(domain, n, n)
    }

    pub(crate) fn from_parts_unchecked(
        nodes: Vec<[f64; 2]>,
        elements: Vec<[usize; 4]>,
        size: ElementSize,
    ) -> Self {
        RectMesh { nodes, elements, size, grid: None, edges: OnceLock::new() }
    }

    pub fn nodes(&self) -> &[[f64; 2]] {
        &self.nodes
    }

    pub fn elements(&self) -> &[[usize; 4]] {
        &self.elements
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn size(&self) -> ElementSize {
        self.size
    }

    /// `(nx, ny)` for meshes produced by [`RectMesh::uniform`].
    pub fn grid_shape(&self) -> Option<(usize, usize)> {
        self.grid
    }

    /// Bottom-left corner of element `e`.
    #[inline]
    pub fn origin(&self, e: usize) -> [f64; 2] {
        self.nodes[self.elements[e][0]]
    }

    /// Physical image of reference point `r` in element `e`.
    #[inline]
    pub fn map_point(&self, e: usize, r: [f64; 2]) -> [f64; 2] {
        let o = self.origin(e);
        [o[0] + r[0] * self.size.hx(), o[1] + r[1] * self.size.hy()]
    }

    pub fn edges(&self) -> &EdgeSet {
        self.edges.get_or_init(|| EdgeSet::build(self))
    }

    pub fn element_midpoints(&self) -> Vec<[f64; 2]> {
        (0..self.num_elements()).map(|e| self.map_point(e, [0.5, 0.5])).collect()
    }

    pub fn edge_midpoints(&self) -> Vec<[f64; 2]> {
        self.edges()
            .iter()
            .map(|edge| {
                let [a, b] = edge.nodes.map(|n| self.nodes[n]);
                [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])]
            })
            .collect()
    }

    pub fn total_area(&self) -> f64 {
        self.num_elements() as f64 * self.size.area()
    }

    /// Splits every element into four congruent children.
    ///
    /// Existing nodes keep their indices. New nodes follow: one per edge in
    /// edge order, then one per element center. Children of element `e` are
    /// `4e..4e+4` in the order bottom-left, bottom-right, top-right, top-left.
    pub fn refine(&self) -> RectMesh {
        let edges = self.edges();
        let n0 = self.num_nodes();
        let ne = self.num_elements();
        let mut nodes = Vec::with_capacity(n0 + edges.len() + ne);
        nodes.extend_from_slice(&self.nodes);
        for edge in edges.iter() {
            let [a, b] = edge.nodes.map(|n| self.nodes[n]);
            nodes.push([0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])]);
        }
        let centers = nodes.len();
        nodes.extend(self.element_midpoints());

        let mut elements = Vec::with_capacity(4 * ne);
        for (e, &[a, b, c, d]) in self.elements.iter().enumerate() {
            let [eb, er, et, el] = edges.element_edges(e).map(|k| n0 + k);
            let z = centers + e;
            elements.push([a, eb, z, el]);
            elements.push([eb, b, er, z]);
            elements.push([z, er, c, et]);
            elements.push([el, z, et, d]);
        }
        RectMesh::from_parts_unchecked(nodes, elements, self.size.halved())
    }
}
