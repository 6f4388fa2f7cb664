use std::collections::HashMap;
use std::sync::OnceLock;

use super::edges::EdgeSet;
use super::{Loc, MeshError, RectMesh};
use crate::bfs_basis::ElementSize;

/// Relative tolerance for corner positions and element sizes.
const SHAPE_TOL: f64 = 1e-9;
/// Relative tolerance under which two nodes count as the same point.
const DUPLICATE_TOL: f64 = 1e-12;

/// Source lines of each node and element record, when parsed from text.
pub(crate) struct Lines<'a> {
    pub nodes: &'a [usize],
    pub elements: &'a [usize],
}

impl Lines<'_> {
    fn node(lines: Option<&Self>, n: usize) -> Loc {
        Loc(lines.and_then(|l| l.nodes.get(n).copied()))
    }

    fn element(lines: Option<&Self>, e: usize) -> Loc {
        Loc(lines.and_then(|l| l.elements.get(e).copied()))
    }
}

pub(crate) fn build(
    nodes: Vec<[f64; 2]>,
    elements: Vec<[usize; 4]>,
    lines: Option<&Lines<'_>>,
) -> Result<RectMesh, MeshError> {
    if elements.is_empty() {
        return Err(MeshError::NoElements);
    }
    if let Some(node) = nodes.iter().position(|p| !(p[0].is_finite() && p[1].is_finite())) {
        return Err(MeshError::NonFiniteNode { node, loc: Lines::node(lines, node) });
    }
    for (element, el) in elements.iter().enumerate() {
        if let Some(&node) = el.iter().find(|&&n| n >= nodes.len()) {
            return Err(MeshError::DanglingNode {
                element,
                node,
                count: nodes.len(),
                loc: Lines::element(lines, element),
            });
        }
    }

    let mut size: Option<(f64, f64)> = None;
    for (element, el) in elements.iter().enumerate() {
        let loc = Lines::element(lines, element);
        let (ex, ey) = check_shape(el.map(|n| nodes[n])).map_err(|kind| match kind {
            ShapeFault::NotRectangle => MeshError::NonRectangular { element, loc },
            ShapeFault::Orientation => MeshError::Orientation { element, loc },
        })?;
        match size {
            None => size = Some((ex, ey)),
            Some((hx, hy)) => {
                let tol = SHAPE_TOL * hx.min(hy);
                if (ex - hx).abs() > tol || (ey - hy).abs() > tol {
                    return Err(MeshError::InconsistentSize {
                        element,
                        hx: ex,
                        hy: ey,
                        expected_hx: hx,
                        expected_hy: hy,
                        loc,
                    });
                }
            }
        }
    }
    let (hx, hy) = size.expect("at least one element");
    let size = ElementSize::new(hx, hy)
        .map_err(|_| MeshError::NonRectangular { element: 0, loc: Lines::element(lines, 0) })?;

    let edges = EdgeSet::try_build(&elements).map_err(|c| MeshError::Overlap {
        first: c.first,
        second: c.second,
        loc: Lines::element(lines, c.second),
    })?;

    check_spatial(&nodes, &elements, size, lines)?;

    let mesh = RectMesh::from_parts_unchecked(nodes, elements, size);
    let cell = OnceLock::new();
    let _ = cell.set(edges);
    Ok(RectMesh { edges: cell, ..mesh })
}

enum ShapeFault {
    NotRectangle,
    Orientation,
}

/// Returns the side lengths when the four points are the corners of an
/// axis-aligned rectangle listed counter-clockwise from the bottom-left.
fn check_shape(p: [[f64; 2]; 4]) -> Result<(f64, f64), ShapeFault> {
    let fold = |i: usize, f: fn(f64, f64) -> f64| p.iter().map(|q| q[i]).reduce(f).unwrap();
    let (xmin, xmax) = (fold(0, f64::min), fold(0, f64::max));
    let (ymin, ymax) = (fold(1, f64::min), fold(1, f64::max));
    let (ex, ey) = (xmax - xmin, ymax - ymin);
    if !(ex > 0.0 && ey > 0.0 && ex.is_finite() && ey.is_finite()) {
        return Err(ShapeFault::NotRectangle);
    }
    let tol = SHAPE_TOL * ex.min(ey);
    let snap = |v: f64, lo: f64, hi: f64| {
        if (v - lo).abs() <= tol {
            Some(false)
        } else if (v - hi).abs() <= tol {
            Some(true)
        } else {
            None
        }
    };
    let mut corners = [(false, false); 4];
    for (c, q) in corners.iter_mut().zip(&p) {
        match (snap(q[0], xmin, xmax), snap(q[1], ymin, ymax)) {
            (Some(a), Some(b)) => *c = (a, b),
            _ => return Err(ShapeFault::NotRectangle),
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if corners[i] == corners[j] {
                return Err(ShapeFault::NotRectangle);
            }
        }
    }
    if corners == [(false, false), (true, false), (true, true), (false, true)] {
        Ok((ex, ey))
    } else {
        Err(ShapeFault::Orientation)
    }
}

/// Detects coincident nodes and nodes lying on or inside an element they do
/// not belong to (hanging nodes, overlaps).
fn check_spatial(
    nodes: &[[f64; 2]],
    elements: &[[usize; 4]],
    size: ElementSize,
    lines: Option<&Lines<'_>>,
) -> Result<(), MeshError> {
    let x0 = nodes.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
    let y0 = nodes.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min);
    let (hx, hy) = (size.hx(), size.hy());
    let cell = |p: [f64; 2]| (((p[0] - x0) / hx).floor() as i64, ((p[1] - y0) / hy).floor() as i64);

    let mut bins: HashMap<(i64, i64), Vec<usize>> = HashMap::with_capacity(nodes.len());
    for (n, &p) in nodes.iter().enumerate() {
        bins.entry(cell(p)).or_default().push(n);
    }
    let near = |cx: i64, cy: i64| {
        (-1..=1)
            .flat_map(move |dx| (-1..=1).map(move |dy| (cx.saturating_add(dx), cy.saturating_add(dy))))
            .filter_map(|c| bins.get(&c))
            .flatten()
            .copied()
    };

    let dup_tol = DUPLICATE_TOL * size.min();
    for (n, &p) in nodes.iter().enumerate() {
        let (cx, cy) = cell(p);
        for m in near(cx, cy) {
            if m > n {
                let q = nodes[m];
                if (p[0] - q[0]).abs() <= dup_tol && (p[1] - q[1]).abs() <= dup_tol {
                    return Err(MeshError::DuplicateNode { first: n, second: m, loc: Lines::node(lines, m) });
                }
            }
        }
    }

    let tol = SHAPE_TOL * size.min();
    for (element, el) in elements.iter().enumerate() {
        let lo = nodes[el[0]];
        let hi = nodes[el[2]];
        let center = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])];
        let (cx, cy) = cell(center);
        for m in near(cx, cy) {
            if el.contains(&m) {
                continue;
            }
            let q = nodes[m];
            let inside =
                q[0] >= lo[0] - tol && q[0] <= hi[0] + tol && q[1] >= lo[1] - tol && q[1] <= hi[1] + tol;
            if inside {
                return Err(MeshError::NonConforming {
                    node: m,
                    element,
                    loc: Lines::element(lines, element),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_nodes() -> Vec<[f64; 2]> {
        vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    }

    #[test]
    fn single_element() {
        let m = RectMesh::new(unit_nodes(), vec![[0, 1, 2, 3]]).unwrap();
        assert_eq!(m.size(), ElementSize::new(1.0, 1.0).unwrap());
        assert_eq!(m.edges().len(), 4);
    }

    #[test]
    fn shape_faults() {
        let err = RectMesh::new(unit_nodes(), vec![[1, 2, 3, 0]]).unwrap_err();
        assert!(matches!(err, MeshError::Orientation { element: 0, .. }));
        let err = RectMesh::new(unit_nodes(), vec![[0, 3, 2, 1]]).unwrap_err();
        assert!(matches!(err, MeshError::Orientation { .. }));
        let err = RectMesh::new(unit_nodes(), vec![[0, 2, 1, 3]]).unwrap_err();
        assert!(matches!(err, MeshError::Orientation { .. }));
        let mut skew = unit_nodes();
        skew[2] = [1.2, 1.0];
        let err = RectMesh::new(skew, vec![[0, 1, 2, 3]]).unwrap_err();
        assert!(matches!(err, MeshError::NonRectangular { .. }));
        let err = RectMesh::new(unit_nodes(), vec![[0, 1, 1, 3]]).unwrap_err();
        assert!(matches!(err, MeshError::NonRectangular { .. }));
        let err = RectMesh::new(unit_nodes(), vec![[0, 1, 2, 4]]).unwrap_err();
        assert!(matches!(err, MeshError::DanglingNode { node: 4, count: 4, .. }));
        assert!(matches!(RectMesh::new(unit_nodes(), vec![]), Err(MeshError::NoElements)));
    }

    #[test]
    fn unequal_sizes() {
        let mut nodes = unit_nodes();
        nodes.extend([[3.0, 0.0], [3.0, 1.0]]);
        let err = RectMesh::new(nodes, vec![[0, 1, 2, 3], [1, 4, 5, 2]]).unwrap_err();
        assert!(matches!(err, MeshError::InconsistentSize { element: 1, .. }));
    }

    #[test]
    fn duplicates_and_overlaps() {
        let mut nodes = unit_nodes();
        nodes.push([1.0, 1.0]);
        let err = RectMesh::new(nodes, vec![[0, 1, 2, 3]]).unwrap_err();
        assert!(matches!(err, MeshError::DuplicateNode { first: 2, second: 4, .. }));

        let err = RectMesh::new(unit_nodes(), vec![[0, 1, 2, 3], [0, 1, 2, 3]]).unwrap_err();
        assert!(matches!(err, MeshError::Overlap { first: 0, second: 1, .. }));

        // brick pattern: second row shifted by half an element
        let nodes = vec![
            [0.0, 0.0],
            [1.0, 0.0],
            [2.0, 0.0],
            [0.0, 1.0],
            [1.0, 1.0],
            [2.0, 1.0],
            [0.5, 1.0],
            [1.5, 1.0],
            [0.5, 2.0],
            [1.5, 2.0],
        ];
        let elements = vec![[0, 1, 4, 3], [1, 2, 5, 4], [6, 7, 9, 8]];
        let err = RectMesh::new(nodes, elements).unwrap_err();
        assert!(matches!(err, MeshError::NonConforming { .. }));
    }

    #[test]
    fn l_shape_is_valid() {
        let nodes = vec![
            [0.0, 0.0],
            [1.0, 0.0],
            [2.0, 0.0],
            [0.0, 1.0],
            [1.0, 1.0],
            [2.0, 1.0],
            [0.0, 2.0],
            [1.0, 2.0],
        ];
        let m = RectMesh::new(nodes, vec![[0, 1, 4, 3], [1, 2, 5, 4], [3, 4, 7, 6]]).unwrap();
        assert_eq!(m.num_nodes(), 8);
        assert_eq!(m.edges().len(), 10);
        assert_eq!(m.edges().iter().filter(|e| !e.is_boundary()).count(), 2);
    }
}
