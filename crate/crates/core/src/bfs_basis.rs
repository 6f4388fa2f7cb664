//! The 16 Bogner-Fox-Schmit shape functions on a rectangle of size `hx × hy`.
//!
//! Basis function `i` is the product `H_j(x̂) H_k(ŷ)` of two reference Hermite
//! functions, with `(j, k)` taken from [`INDEX_PAIRS`]. The ordering groups
//! the degrees of freedom by kind:
//!
//! | basis    | dof at nodes N1..N4 |
//! |----------|---------------------|
//! | 0..4     | `v`                 |
//! | 4..8     | `∂v/∂x`             |
//! | 8..12    | `∂v/∂y`             |
//! | 12..16   | `∂²v/∂x∂y`          |
//!
//! with reference nodes N1 = (0,0), N2 = (1,0), N3 = (1,1), N4 = (0,1).
//! Derivative-type functions are scaled by `hx`, `hy` or `hx·hy` (see
//! [`dof_scale`]) so that every coefficient is the nodal value of the
//! corresponding quantity on the actual rectangle.
//!
//! Indices in this module are 0-based throughout, for both basis functions
//! and the Hermite factors.

use ndarray::{Array2, Array3, ArrayView2};

use crate::error::{Error, Result};
use crate::hermite1d::{eval_ref, HermiteValues, Order};

pub const NUM_BASIS: usize = 16;

/// Hermite factor pair `(j, k)` of each basis function, `φ_i = H_j(x̂) H_k(ŷ)`.
pub const INDEX_PAIRS: [(usize, usize); NUM_BASIS] = [
    (0, 0),
    (1, 0),
    (1, 1),
    (0, 1),
    (2, 0),
    (3, 0),
    (3, 1),
    (2, 1),
    (0, 2),
    (1, 2),
    (1, 3),
    (0, 3),
    (2, 2),
    (3, 2),
    (3, 3),
    (2, 3),
];

/// Reference rectangle nodes in local order.
pub const REF_NODES: [[f64; 2]; 4] = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];

pub fn index_map(i: usize) -> Result<(usize, usize)> {
    INDEX_PAIRS.get(i).copied().ok_or(Error::BasisIndex(i))
}

/// Side lengths shared by every element of a mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementSize {
    hx: f64,
    hy: f64,
}

impl ElementSize {
    pub fn new(hx: f64, hy: f64) -> Result<Self> {
        if hx > 0.0 && hy > 0.0 && hx.is_finite() && hy.is_finite() {
            Ok(ElementSize { hx, hy })
        } else {
            Err(Error::InvalidSize { hx, hy })
        }
    }

    pub fn hx(&self) -> f64 {
        self.hx
    }

    pub fn hy(&self) -> f64 {
        self.hy
    }

    pub fn area(&self) -> f64 {
        self.hx * self.hy
    }

    pub fn min(&self) -> f64 {
        self.hx.min(self.hy)
    }

    pub fn halved(&self) -> Self {
        ElementSize { hx: 0.5 * self.hx, hy: 0.5 * self.hy }
    }
}

/// Factor that turns the reference product into the basis function whose
/// coefficient is a nodal quantity on the actual rectangle.
pub fn dof_scale(i: usize, size: ElementSize) -> Result<f64> {
    Ok(scale_table(size)[check_index(i)?])
}

fn check_index(i: usize) -> Result<usize> {
    if i < NUM_BASIS {
        Ok(i)
    } else {
        Err(Error::BasisIndex(i))
    }
}

fn scale_table(size: ElementSize) -> [f64; NUM_BASIS] {
    let groups = [1.0, size.hx, size.hy, size.hx * size.hy];
    std::array::from_fn(|i| groups[i / 4])
}

/// One of the five derivatives evaluated by [`shapeder`], in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivSlot {
    Dx,
    Dy,
    Dxx,
    Dyy,
    Dxy,
}

impl DerivSlot {
    pub const ALL: [DerivSlot; 5] =
        [DerivSlot::Dx, DerivSlot::Dy, DerivSlot::Dxx, DerivSlot::Dyy, DerivSlot::Dxy];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            DerivSlot::Dx => "dx",
            DerivSlot::Dy => "dy",
            DerivSlot::Dxx => "dxx",
            DerivSlot::Dyy => "dyy",
            DerivSlot::Dxy => "dxy",
        }
    }
}

/// Basis values: row `i` is basis function `i`, column `p` is point `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeTable {
    values: Array2<f64>,
}

impl ShapeTable {
    pub fn num_points(&self) -> usize {
        self.values.ncols()
    }

    pub fn values(&self) -> ArrayView2<'_, f64> {
        self.values.view()
    }

    pub fn get(&self, i: usize, p: usize) -> f64 {
        self.values[[i, p]]
    }

    /// Column `p` as a fixed-size array.
    pub fn column(&self, p: usize) -> [f64; NUM_BASIS] {
        std::array::from_fn(|i| self.values[[i, p]])
    }
}

/// Derivative values, logically `16 × np × 5`. Stored slot-major so each
/// slot is a contiguous `16 × np` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivTable {
    values: Array3<f64>,
}

impl DerivTable {
    pub fn num_points(&self) -> usize {
        self.values.dim().2
    }

    /// `(16, np, 5)`, the logical shape.
    pub fn dim(&self) -> (usize, usize, usize) {
        let (s, b, p) = self.values.dim();
        (b, p, s)
    }

    pub fn slot(&self, slot: DerivSlot) -> ArrayView2<'_, f64> {
        self.values.index_axis(ndarray::Axis(0), slot.index())
    }

    pub fn get(&self, i: usize, p: usize, slot: DerivSlot) -> f64 {
        self.values[[slot.index(), i, p]]
    }

    pub fn column(&self, p: usize, slot: DerivSlot) -> [f64; NUM_BASIS] {
        std::array::from_fn(|i| self.values[[slot.index(), i, p]])
    }
}

fn check_points(points: &[[f64; 2]]) -> Result<()> {
    match points.iter().position(|p| !(p[0].is_finite() && p[1].is_finite())) {
        Some(index) => Err(Error::NonFinitePoint { index }),
        None => Ok(()),
    }
}

/// Rejects points outside the closed unit square.
pub fn check_reference_points(points: &[[f64; 2]]) -> Result<()> {
    for p in points {
        crate::hermite1d::check_reference(p[0])?;
        crate::hermite1d::check_reference(p[1])?;
    }
    Ok(())
}

/// Evaluates all 16 basis functions at reference points.
pub fn shapefun(points: &[[f64; 2]], size: ElementSize) -> Result<ShapeTable> {
    check_points(points)?;
    let scale = scale_table(size);
    let mut values = Array2::zeros((NUM_BASIS, points.len()));
    for (p, &[xh, yh]) in points.iter().enumerate() {
        let hx = eval_ref(xh, Order::Value);
        let hy = eval_ref(yh, Order::Value);
        for (i, &(j, k)) in INDEX_PAIRS.iter().enumerate() {
            values[[i, p]] = scale[i] * hx[j] * hy[k];
        }
    }
    Ok(ShapeTable { values })
}

/// Basis values at a single reference point, without allocating.
#[inline]
pub fn shape_values(r: [f64; 2], size: ElementSize) -> [f64; NUM_BASIS] {
    let scale = scale_table(size);
    let hx = eval_ref(r[0], Order::Value);
    let hy = eval_ref(r[1], Order::Value);
    std::array::from_fn(|i| {
        let (j, k) = INDEX_PAIRS[i];
        scale[i] * hx[j] * hy[k]
    })
}

/// Evaluates the five first and second derivatives of all basis functions,
/// with respect to physical coordinates on a rectangle of the given size.
pub fn shapeder(points: &[[f64; 2]], size: ElementSize) -> Result<DerivTable> {
    check_points(points)?;
    let scale = scale_table(size);
    let (ihx, ihy) = (1.0 / size.hx, 1.0 / size.hy);
    let mut values = Array3::zeros((5, NUM_BASIS, points.len()));
    for (p, &[xh, yh]) in points.iter().enumerate() {
        let x: [HermiteValues; 3] =
            [eval_ref(xh, Order::Value), eval_ref(xh, Order::First), eval_ref(xh, Order::Second)];
        let y: [HermiteValues; 3] =
            [eval_ref(yh, Order::Value), eval_ref(yh, Order::First), eval_ref(yh, Order::Second)];
        for (i, &(j, k)) in INDEX_PAIRS.iter().enumerate() {
            let s = scale[i];
            values[[0, i, p]] = s * x[1][j] * y[0][k] * ihx;
            values[[1, i, p]] = s * x[0][j] * y[1][k] * ihy;
            values[[2, i, p]] = s * x[2][j] * y[0][k] * ihx * ihx;
            values[[3, i, p]] = s * x[0][j] * y[2][k] * ihy * ihy;
            values[[4, i, p]] = s * x[1][j] * y[1][k] * ihx * ihy;
        }
    }
    Ok(DerivTable { values })
}
