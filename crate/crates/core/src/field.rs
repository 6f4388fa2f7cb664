//! C1 fields on rectangular meshes.
//!
//! A field stores four degrees of freedom per node, `(v, ∂v/∂x, ∂v/∂y,
//! ∂²v/∂x∂y)`. Evaluation gathers the 16 coefficients of each element and
//! contracts them with a basis table shared by all elements.

use std::io::{self, Write};

use ndarray::{Array2, ArrayView2};
use rayon::prelude::*;

use crate::bfs_basis::{shapeder, shapefun, DerivSlot, DerivTable, ShapeTable, NUM_BASIS};
use crate::error::{Error, ParseError, Result};
use crate::format::{capacity_hint, check_arity, fmt_f64, parse_real, Records};
use crate::functions::AnalyticField;
use crate::mesh::RectMesh;

/// Relative finite-difference half-width for derivatives an
/// [`AnalyticField`] does not provide.
pub const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone)]
pub struct C1Field<'m> {
    mesh: &'m RectMesh,
    dofs: Array2<f64>,
}

impl<'m> C1Field<'m> {
    pub fn new(mesh: &'m RectMesh, dofs: Array2<f64>) -> Result<Self> {
        if dofs.nrows() != mesh.num_nodes() || dofs.ncols() != 4 {
            return Err(Error::DofCount { expected: mesh.num_nodes(), found: dofs.nrows() });
        }
        if let Some(row) = dofs.rows().into_iter().position(|r| r.iter().any(|v| !v.is_finite())) {
            return Err(Error::NonFiniteDof { row });
        }
        Ok(C1Field { mesh, dofs })
    }

    pub fn zeros(mesh: &'m RectMesh) -> Self {
        C1Field { mesh, dofs: Array2::zeros((mesh.num_nodes(), 4)) }
    }

    pub fn mesh(&self) -> &'m RectMesh {
        self.mesh
    }

    pub fn dofs(&self) -> ArrayView2<'_, f64> {
        self.dofs.view()
    }

    pub fn into_dofs(self) -> Array2<f64> {
        self.dofs
    }

    pub fn scaled(&self, c: f64) -> C1Field<'m> {
        C1Field { mesh: self.mesh, dofs: &self.dofs * c }
    }

    /// The 16 coefficients of element `e` in basis order.
    #[inline]
    pub fn element_coeffs(&self, e: usize) -> [f64; NUM_BASIS] {
        let el = &self.mesh.elements()[e];
        let mut c = [0.0; NUM_BASIS];
        for kind in 0..4 {
            for (local, &node) in el.iter().enumerate() {
                c[4 * kind + local] = self.dofs[[node, kind]];
            }
        }
        c
    }

    /// Reads a field from the dofs text format for the given mesh.
    pub fn from_text(mesh: &'m RectMesh, text: &str) -> Result<Self> {
        C1Field::new(mesh, parse_dofs(text)?)
    }
}

/// Samples `f` and its derivatives at every mesh node.
pub fn interpolate<'m>(f: &AnalyticField, mesh: &'m RectMesh) -> Result<C1Field<'m>> {
    let step = FD_STEP * mesh.size().min();
    let rows: Vec<[f64; 4]> = mesh.nodes().par_iter().map(|&[x, y]| f.nodal(x, y, step)).collect();
    const NAMES: [&str; 4] = ["value", "x-derivative", "y-derivative", "mixed derivative"];
    let mut dofs = Array2::zeros((rows.len(), 4));
    for (node, row) in rows.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                let [x, y] = mesh.nodes()[node];
                return Err(Error::NonFiniteNodal { what: NAMES[k], node, x, y });
            }
            dofs[[node, k]] = v;
        }
    }
    Ok(C1Field { mesh, dofs })
}

/// Per-element coefficient rows, `ne × 16`.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementCoeffs(pub Array2<f64>);

impl ElementCoeffs {
    /// Inverse of [`gather`]: averages every copy of a nodal dof.
    pub fn scatter_average(&self, mesh: &RectMesh) -> Array2<f64> {
        let mut sum = Array2::<f64>::zeros((mesh.num_nodes(), 4));
        let mut count = vec![0usize; mesh.num_nodes()];
        for (e, el) in mesh.elements().iter().enumerate() {
            for (local, &node) in el.iter().enumerate() {
                count[node] += 1;
                for kind in 0..4 {
                    sum[[node, kind]] += self.0[[e, 4 * kind + local]];
                }
            }
        }
        for (node, &c) in count.iter().enumerate() {
            if c > 0 {
                sum.row_mut(node).mapv_inplace(|v| v / c as f64);
            }
        }
        sum
    }
}

pub fn gather(field: &C1Field<'_>) -> ElementCoeffs {
    let ne = field.mesh.num_elements();
    let mut coeffs = Array2::zeros((ne, NUM_BASIS));
    coeffs.axis_iter_mut(ndarray::Axis(0)).into_par_iter().enumerate().for_each(|(e, mut row)| {
        for (dst, v) in row.iter_mut().zip(field.element_coeffs(e)) {
            *dst = v;
        }
    });
    ElementCoeffs(coeffs)
}

/// Field values, `ne × np`: entry `(e, p)` is the value at the image of
/// reference point `p` in element `e`.
pub fn eval_at_ref_points(field: &C1Field<'_>, points: &[[f64; 2]]) -> Result<Array2<f64>> {
    let table = shapefun(points, field.mesh.size())?;
    Ok(gather(field).0.dot(&table.values()))
}

/// The five derivative fields at reference points of every element.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivatives {
    slots: [Array2<f64>; 5],
}

impl Derivatives {
    pub fn get(&self, slot: DerivSlot) -> &Array2<f64> {
        &self.slots[slot.index()]
    }

    pub fn dx(&self) -> &Array2<f64> {
        self.get(DerivSlot::Dx)
    }

    pub fn dy(&self) -> &Array2<f64> {
        self.get(DerivSlot::Dy)
    }

    pub fn dxx(&self) -> &Array2<f64> {
        self.get(DerivSlot::Dxx)
    }

    pub fn dyy(&self) -> &Array2<f64> {
        self.get(DerivSlot::Dyy)
    }

    pub fn dxy(&self) -> &Array2<f64> {
        self.get(DerivSlot::Dxy)
    }
}

pub fn eval_derivatives_at_ref_points(field: &C1Field<'_>, points: &[[f64; 2]]) -> Result<Derivatives> {
    let table = shapeder(points, field.mesh.size())?;
    let coeffs = gather(field).0;
    let slots = DerivSlot::ALL.map(|s| coeffs.dot(&table.slot(s)));
    Ok(Derivatives { slots })
}

/// Value and all derivatives up to second order at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PointValues {
    pub v: f64,
    pub vx: f64,
    pub vy: f64,
    pub vxx: f64,
    pub vyy: f64,
    pub vxy: f64,
}

impl PointValues {
    pub fn as_array(&self) -> [f64; 6] {
        [self.v, self.vx, self.vy, self.vxx, self.vyy, self.vxy]
    }
}

/// Basis and derivative tables for a fixed point set, reused across elements.
#[derive(Debug, Clone)]
pub struct PointEvaluator {
    shape: ShapeTable,
    deriv: DerivTable,
}

impl PointEvaluator {
    pub fn new(points: &[[f64; 2]], mesh: &RectMesh) -> Result<Self> {
        Ok(PointEvaluator { shape: shapefun(points, mesh.size())?, deriv: shapeder(points, mesh.size())? })
    }

    pub fn num_points(&self) -> usize {
        self.shape.num_points()
    }

    #[inline]
    pub fn value(&self, coeffs: &[f64; NUM_BASIS], p: usize) -> f64 {
        let col = self.shape.values();
        (0..NUM_BASIS).map(|i| coeffs[i] * col[[i, p]]).sum()
    }

    #[inline]
    pub fn all(&self, coeffs: &[f64; NUM_BASIS], p: usize) -> PointValues {
        let dot = |slot: DerivSlot| {
            let t = self.deriv.slot(slot);
            (0..NUM_BASIS).map(|i| coeffs[i] * t[[i, p]]).sum::<f64>()
        };
        PointValues {
            v: self.value(coeffs, p),
            vx: dot(DerivSlot::Dx),
            vy: dot(DerivSlot::Dy),
            vxx: dot(DerivSlot::Dxx),
            vyy: dot(DerivSlot::Dyy),
            vxy: dot(DerivSlot::Dxy),
        }
    }
}

/// Evaluates the field inside element `e` at one reference point.
pub fn eval_point(field: &C1Field<'_>, e: usize, r: [f64; 2]) -> Result<PointValues> {
    let ev = PointEvaluator::new(&[r], field.mesh)?;
    Ok(ev.all(&field.element_coeffs(e), 0))
}

/// Field values along every edge, `nedges × t.len()`. Parameter `t` runs from
/// the edge's first node to its second; each edge is evaluated in its
/// lower-index incident element.
pub fn eval_on_edges(field: &C1Field<'_>, t: &[f64]) -> Result<Array2<f64>> {
    for &s in t {
        crate::hermite1d::check_reference(s)?;
    }
    let mesh = field.mesh;
    let edges = mesh.edges();
    let mut out = Array2::zeros((edges.len(), t.len()));
    for (k, edge) in edges.iter().enumerate() {
        let e = edge.element();
        let pts: Vec<[f64; 2]> = t
            .iter()
            .map(|&s| edge.reference_point(e, &mesh.elements()[e], s).expect("incident element"))
            .collect();
        let table = shapefun(&pts, mesh.size())?;
        let c = field.element_coeffs(e);
        for p in 0..t.len() {
            out[[k, p]] = (0..NUM_BASIS).map(|i| c[i] * table.get(i, p)).sum();
        }
    }
    Ok(out)
}

pub fn parse_dofs(text: &str) -> Result<Array2<f64>, ParseError> {
    let mut records = Records::new(text);
    let (_, n) = records.header("dofs")?;
    let mut data = Vec::with_capacity(4 * capacity_hint(n));
    for _ in 0..n {
        let (line, fields) = records.expect_record("four dof values")?;
        check_arity(line, &fields, 4)?;
        for f in &fields {
            data.push(parse_real(line, f)?);
        }
    }
    records.expect_end()?;
    Ok(Array2::from_shape_vec((n, 4), data).expect("row count matches"))
}

pub fn write_dofs<W: Write>(mut w: W, field: &C1Field<'_>) -> io::Result<()> {
    writeln!(w, "dofs {}", field.dofs.nrows())?;
    for row in field.dofs.rows() {
        writeln!(w, "{} {} {} {}", fmt_f64(row[0]), fmt_f64(row[1]), fmt_f64(row[2]), fmt_f64(row[3]))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ParseErrorKind;
    use crate::functions::{quartic, AnalyticField};
    use crate::mesh::Domain;

    fn square(level: u32) -> RectMesh {
        RectMesh::uniform_level(Domain::symmetric_unit(), level).unwrap()
    }

    #[test]
    fn interpolate_quartic() {
        let m = square(2);
        let f = interpolate(&quartic(), &m).unwrap();
        for (k, &[x, y]) in m.nodes().iter().enumerate() {
            let row = f.dofs().row(k).to_vec();
            if x == 0.0 && y == 0.0 {
                assert_eq!(row, vec![1.0, 0.0, 0.0, 0.0]);
            }
            if x.abs() == 1.0 || y.abs() == 1.0 {
                assert_eq!(row[0], 0.0);
            }
            if x == 0.5 && y == 0.5 {
                assert_eq!(row[0], 0.31640625);
            }
        }
    }

    #[test]
    fn non_finite_samples_name_the_node() {
        let m = square(1);
        let f = AnalyticField::new(|x, y| 1.0 / (x * x + y * y));
        match interpolate(&f, &m).unwrap_err() {
            Error::NonFiniteNodal { node: 4, x, y, .. } => assert_eq!((x, y), (0.0, 0.0)),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn gather_places_one_dof() {
        let m = RectMesh::uniform(Domain::new(0.0, 1.0, 0.0, 1.0).unwrap(), 1, 1).unwrap();
        for (local, &node) in m.elements()[0].iter().enumerate() {
            for kind in 0..4 {
                let mut d = Array2::zeros((4, 4));
                d[[node, kind]] = 1.0;
                let c = gather(&C1Field::new(&m, d).unwrap()).0;
                let nz: Vec<usize> = (0..16).filter(|&i| c[[0, i]] != 0.0).collect();
                assert_eq!(nz, vec![4 * kind + local]);
            }
        }
    }

    #[test]
    fn shared_node_appears_in_every_element() {
        let m = square(1);
        let center = m.nodes().iter().position(|p| *p == [0.0, 0.0]).unwrap();
        let mut d = Array2::zeros((9, 4));
        d[[center, 0]] = 7.0;
        let c = gather(&C1Field::new(&m, d.clone()).unwrap());
        for e in 0..4 {
            assert_eq!(c.0.row(e).iter().filter(|&&v| v == 7.0).count(), 1);
        }
        assert_eq!(c.scatter_average(&m), d);
    }

    #[test]
    fn constant_field() {
        let m = square(2);
        let f = interpolate(&AnalyticField::constant(1.0), &m).unwrap();
        let pts = [[0.1, 0.2], [0.5, 0.5], [1.0, 0.0]];
        let v = eval_at_ref_points(&f, &pts).unwrap();
        assert!(v.iter().all(|&x| (x - 1.0).abs() < 1e-15));
        let d = eval_derivatives_at_ref_points(&f, &pts).unwrap();
        for s in DerivSlot::ALL {
            assert!(d.get(s).iter().all(|&x| x.abs() < 1e-13));
        }
        let e = eval_on_edges(&f, &[0.0, 0.25, 1.0]).unwrap();
        assert_eq!(e.dim(), (m.edges().len(), 3));
        assert!(e.iter().all(|&x| (x - 1.0).abs() < 1e-15));
    }

    #[test]
    fn bad_dof_matrices() {
        let m = square(1);
        assert!(matches!(
            C1Field::new(&m, Array2::zeros((8, 4))),
            Err(Error::DofCount { expected: 9, found: 8 })
        ));
        let mut d = Array2::zeros((9, 4));
        d[[3, 2]] = f64::NAN;
        assert!(matches!(C1Field::new(&m, d), Err(Error::NonFiniteDof { row: 3 })));
    }

    #[test]
    fn edge_parameters_are_checked() {
        let m = square(1);
        assert!(eval_on_edges(&C1Field::zeros(&m), &[1.5]).is_err());
    }

    #[test]
    fn dofs_text_round_trip() {
        let m = square(1);
        let f = interpolate(&quartic(), &m).unwrap();
        let mut buf = Vec::new();
        write_dofs(&mut buf, &f).unwrap();
        let g = C1Field::from_text(&m, std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(f.dofs(), g.dofs());
        assert!(matches!(
            parse_dofs("dofs 1\n1 2 3").unwrap_err().kind,
            ParseErrorKind::FieldCount { expected: 4, found: 3 }
        ));
        assert!(C1Field::from_text(&m, "dofs 1\n1 2 3 4").is_err());
    }
}
