//! CSV and legacy-VTK writers for tables, fields and quadrature points.

use std::io::{self, Write};

use crate::bfs_basis::{DerivSlot, DerivTable, ShapeTable};
use crate::error::Result;
use crate::field::{eval_on_edges, C1Field, PointEvaluator};
use crate::format::fmt_f64;
use crate::mesh::RectMesh;
use crate::quadrature::{mapped_points, QuadratureRule};

pub const SHAPE_HEADER: &str = "i,x,y,slot,value";
pub const SAMPLE_HEADER: &str = "element,x,y,v,vx,vy,vxx,vyy,vxy";

/// Long-format dump of a shape table and, optionally, its derivatives.
/// `i` is written 1-based; slot is `v` for values or a [`DerivSlot`] name.
pub fn write_shape_csv<W: Write>(
    mut w: W,
    points: &[[f64; 2]],
    shape: &ShapeTable,
    deriv: Option<&DerivTable>,
) -> io::Result<()> {
    writeln!(w, "{SHAPE_HEADER}")?;
    for i in 0..16 {
        for (p, pt) in points.iter().enumerate() {
            let (x, y) = (fmt_f64(pt[0]), fmt_f64(pt[1]));
            writeln!(w, "{},{x},{y},v,{}", i + 1, fmt_f64(shape.get(i, p)))?;
            if let Some(d) = deriv {
                for s in DerivSlot::ALL {
                    writeln!(w, "{},{x},{y},{},{}", i + 1, s.name(), fmt_f64(d.get(i, p, s)))?;
                }
            }
        }
    }
    Ok(())
}

/// Values and all derivatives at the given reference points of every
/// element, with physical coordinates.
pub fn write_samples_csv<W: Write>(mut w: W, field: &C1Field<'_>, points: &[[f64; 2]]) -> Result<()> {
    let mesh = field.mesh();
    let ev = PointEvaluator::new(points, mesh)?;
    writeln!(w, "{SAMPLE_HEADER}")?;
    for e in 0..mesh.num_elements() {
        let c = field.element_coeffs(e);
        for (p, &r) in points.iter().enumerate() {
            let [x, y] = mesh.map_point(e, r);
            write!(w, "{e},{},{}", fmt_f64(x), fmt_f64(y))?;
            for v in ev.all(&c, p).as_array() {
                write!(w, ",{}", fmt_f64(v))?;
            }
            writeln!(w)?;
        }
    }
    Ok(())
}

/// Field values at edge midpoints: `edge,x,y,v`.
pub fn write_edge_midpoints_csv<W: Write>(mut w: W, field: &C1Field<'_>) -> Result<()> {
    let values = eval_on_edges(field, &[0.5])?;
    writeln!(w, "edge,x,y,v")?;
    for (k, p) in field.mesh().edge_midpoints().iter().enumerate() {
        writeln!(w, "{k},{},{},{}", fmt_f64(p[0]), fmt_f64(p[1]), fmt_f64(values[[k, 0]]))?;
    }
    Ok(())
}

pub fn write_midpoints_csv<W: Write>(mut w: W, label: &str, points: &[[f64; 2]]) -> io::Result<()> {
    writeln!(w, "{label},x,y")?;
    for (k, p) in points.iter().enumerate() {
        writeln!(w, "{k},{},{}", fmt_f64(p[0]), fmt_f64(p[1]))?;
    }
    Ok(())
}

pub fn write_rule_csv<W: Write>(mut w: W, rule: &QuadratureRule) -> io::Result<()> {
    writeln!(w, "qx,qy,w")?;
    for (p, wt) in rule.points().iter().zip(rule.weights()) {
        writeln!(w, "{},{},{}", fmt_f64(p[0]), fmt_f64(p[1]), fmt_f64(*wt))?;
    }
    Ok(())
}

/// Gauss points mapped into every element; `w` includes the element area.
pub fn write_mapped_points_csv<W: Write>(mut w: W, mesh: &RectMesh, rule: &QuadratureRule) -> io::Result<()> {
    writeln!(w, "element,x,y,w")?;
    for (e, p, wt) in mapped_points(mesh, rule) {
        writeln!(w, "{e},{},{},{}", fmt_f64(p[0]), fmt_f64(p[1]), fmt_f64(wt))?;
    }
    Ok(())
}

/// Legacy ASCII VTK file with the four nodal dof columns as point data.
/// Generated grids are written as STRUCTURED_GRID, other meshes as
/// UNSTRUCTURED_GRID of quads.
pub fn write_vtk<W: Write>(mut w: W, field: &C1Field<'_>, title: &str) -> io::Result<()> {
    let mesh = field.mesh();
    let title: String = title.chars().filter(|c| *c != '\n').take(255).collect();
    writeln!(w, "# vtk DataFile Version 3.0")?;
    writeln!(w, "{title}")?;
    writeln!(w, "ASCII")?;
    match mesh.grid_shape() {
        Some((nx, ny)) => {
            writeln!(w, "DATASET STRUCTURED_GRID")?;
            writeln!(w, "DIMENSIONS {} {} 1", nx + 1, ny + 1)?;
            write_points(&mut w, mesh)?;
        }
        None => {
            writeln!(w, "DATASET UNSTRUCTURED_GRID")?;
            write_points(&mut w, mesh)?;
            let ne = mesh.num_elements();
            writeln!(w, "CELLS {ne} {}", 5 * ne)?;
            for el in mesh.elements() {
                writeln!(w, "4 {} {} {} {}", el[0], el[1], el[2], el[3])?;
            }
            writeln!(w, "CELL_TYPES {ne}")?;
            for _ in 0..ne {
                writeln!(w, "9")?;
            }
        }
    }
    writeln!(w, "POINT_DATA {}", mesh.num_nodes())?;
    let dofs = field.dofs();
    for (k, name) in ["v", "vx", "vy", "vxy"].iter().enumerate() {
        writeln!(w, "SCALARS {name} double 1")?;
        writeln!(w, "LOOKUP_TABLE default")?;
        for v in dofs.column(k) {
            writeln!(w, "{}", fmt_f64(*v))?;
        }
    }
    Ok(())
}

fn write_points<W: Write>(w: &mut W, mesh: &RectMesh) -> io::Result<()> {
    writeln!(w, "POINTS {} double", mesh.num_nodes())?;
    for p in mesh.nodes() {
        writeln!(w, "{} {} 0", fmt_f64(p[0]), fmt_f64(p[1]))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bfs_basis::{shapeder, shapefun, ElementSize};
    use crate::field::interpolate;
    use crate::functions::quartic;
    use crate::mesh::Domain;
    use crate::quadrature::GaussRule;

    fn text(buf: Vec<u8>) -> String {
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn shape_dump() {
        let pts = [[0.5, 0.5]];
        let s = ElementSize::new(2.0, 3.0).unwrap();
        let mut buf = Vec::new();
        write_shape_csv(&mut buf, &pts, &shapefun(&pts, s).unwrap(), Some(&shapeder(&pts, s).unwrap()))
            .unwrap();
        let t = text(buf);
        assert_eq!(t.lines().count(), 1 + 16 * 6);
        assert_eq!(t.lines().nth(1).unwrap(), "1,0.5,0.5,v,0.25");
    }

    #[test]
    fn vtk_structured_and_unstructured() {
        let m = RectMesh::uniform_level(Domain::symmetric_unit(), 1).unwrap();
        let f = interpolate(&quartic(), &m).unwrap();
        let mut buf = Vec::new();
        write_vtk(&mut buf, &f, "quartic").unwrap();
        let t = text(buf);
        assert!(t.contains("DIMENSIONS 3 3 1"));
        assert!(t.contains("POINT_DATA 9"));

        let r = m.refine();
        let f = interpolate(&quartic(), &r).unwrap();
        let mut buf = Vec::new();
        write_vtk(&mut buf, &f, "refined").unwrap();
        let t = text(buf);
        assert!(t.contains("CELLS 16 80"));
        assert_eq!(t.lines().filter(|l| *l == "9").count(), 16);
    }

    #[test]
    fn samples_and_points() {
        let m = RectMesh::uniform_level(Domain::symmetric_unit(), 1).unwrap();
        let f = interpolate(&quartic(), &m).unwrap();
        let mut buf = Vec::new();
        write_samples_csv(&mut buf, &f, &[[0.5, 0.5]]).unwrap();
        let t = text(buf);
        assert_eq!(t.lines().next().unwrap(), SAMPLE_HEADER);
        assert_eq!(t.lines().count(), 5);

        let mut buf = Vec::new();
        write_edge_midpoints_csv(&mut buf, &f).unwrap();
        assert_eq!(text(buf).lines().count(), 13);

        let mut buf = Vec::new();
        write_mapped_points_csv(&mut buf, &m, &GaussRule::Nine.rule()).unwrap();
        assert_eq!(text(buf).lines().count(), 1 + 36);
    }
}
