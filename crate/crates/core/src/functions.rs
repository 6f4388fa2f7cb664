//! Analytic functions that can be interpolated into C1 fields, including the
//! built-in quartic bump and bivariate polynomials.

use std::sync::Arc;

use ndarray::Array2;

use crate::error::{ParseError, ParseErrorKind};
use crate::format::{check_arity, parse_real, Records};
use crate::integrals::IntegralValues;
use crate::mesh::Domain;

pub type ScalarFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A function `v(x, y)` with optional closed-form derivatives. Missing
/// derivatives are approximated by central differences when interpolating.
#[derive(Clone)]
pub struct AnalyticField {
    value: ScalarFn,
    dx: Option<ScalarFn>,
    dy: Option<ScalarFn>,
    dxy: Option<ScalarFn>,
}

impl std::fmt::Debug for AnalyticField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AnalyticField")
            .field("dx", &self.dx.is_some())
            .field("dy", &self.dy.is_some())
            .field("dxy", &self.dxy.is_some())
            .finish_non_exhaustive()
    }
}

impl AnalyticField {
    pub fn new(value: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        AnalyticField { value: Arc::new(value), dx: None, dy: None, dxy: None }
    }

    pub fn with_dx(mut self, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.dx = Some(Arc::new(f));
        self
    }

    pub fn with_dy(mut self, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.dy = Some(Arc::new(f));
        self
    }

    pub fn with_dxy(mut self, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.dxy = Some(Arc::new(f));
        self
    }

    pub fn constant(c: f64) -> Self {
        AnalyticField::new(move |_, _| c).with_dx(|_, _| 0.0).with_dy(|_, _| 0.0).with_dxy(|_, _| 0.0)
    }

    #[inline]
    pub fn value(&self, x: f64, y: f64) -> f64 {
        (self.value)(x, y)
    }

    /// `(v, v_x, v_y, v_xy)` at a point; `step` is the finite-difference
    /// half-width used for derivatives without a closed form.
    pub fn nodal(&self, x: f64, y: f64, step: f64) -> [f64; 4] {
        let f = &self.value;
        let d = step;
        let dx = match &self.dx {
            Some(g) => g(x, y),
            None => (f(x + d, y) - f(x - d, y)) / (2.0 * d),
        };
        let dy = match &self.dy {
            Some(g) => g(x, y),
            None => (f(x, y + d) - f(x, y - d)) / (2.0 * d),
        };
        let dxy = match &self.dxy {
            Some(g) => g(x, y),
            None => (f(x + d, y + d) - f(x + d, y - d) - f(x - d, y + d) + f(x - d, y - d)) / (4.0 * d * d),
        };
        [f(x, y), dx, dy, dxy]
    }
}

/// `v(x, y) = (1 - x²)² (1 - y²)²` with its exact nodal derivatives.
pub fn quartic() -> AnalyticField {
    let p = |t: f64| 1.0 - t * t;
    AnalyticField::new(move |x, y| p(x).powi(2) * p(y).powi(2))
        .with_dx(move |x, y| -4.0 * x * p(x) * p(y).powi(2))
        .with_dy(move |x, y| -4.0 * y * p(x).powi(2) * p(y))
        .with_dxy(move |x, y| 16.0 * x * y * p(x) * p(y))
}

/// [`quartic`] as a polynomial, for exact integrals on other domains.
pub fn quartic_poly() -> Poly2 {
    let p = Poly2::from_terms(&[(1.0, 0, 0), (-2.0, 2, 0), (1.0, 4, 0)]);
    let q = Poly2::from_terms(&[(1.0, 0, 0), (-2.0, 0, 2), (1.0, 0, 4)]);
    p.mul(&q)
}

/// `f(x, y) = x² y²`, the load paired with [`quartic`].
pub fn quartic_load() -> AnalyticField {
    AnalyticField::new(|x, y| x * x * y * y)
        .with_dx(|x, y| 2.0 * x * y * y)
        .with_dy(|x, y| 2.0 * x * x * y)
        .with_dxy(|x, y| 4.0 * x * y)
}

/// Closed-form integrals of [`quartic`] and [`quartic_load`] over `(-1, 1)²`.
pub const QUARTIC_EXACT: IntegralValues = IntegralValues {
    l2_sq: 65536.0 / 99225.0,
    h1_semi_sq: 131072.0 / 33075.0,
    h2_semi_sq: 65536.0 / 1225.0,
    load: 256.0 / 11025.0,
};

/// Largest exponent accepted by [`parse_poly`].
pub const MAX_EXPONENT: usize = 24;

/// Bivariate polynomial `Σ c[i, j] x^i y^j` with dense coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    coeffs: Array2<f64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { coeffs: Array2::zeros((1, 1)) }
    }

    /// From `(coefficient, x exponent, y exponent)` terms; repeated
    /// exponent pairs add up.
    pub fn from_terms(terms: &[(f64, usize, usize)]) -> Self {
        let dx = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let dy = terms.iter().map(|t| t.2).max().unwrap_or(0);
        let mut coeffs = Array2::zeros((dx + 1, dy + 1));
        for &(c, i, j) in terms {
            coeffs[[i, j]] += c;
        }
        Poly2 { coeffs }
    }

    /// Degree bound in x and in y (storage size minus one).
    pub fn degrees(&self) -> (usize, usize) {
        let (a, b) = self.coeffs.dim();
        (a - 1, b - 1)
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.coeffs.get([i, j]).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let (dx, dy) = self.degrees();
        let mut acc = 0.0;
        for i in (0..=dx).rev() {
            let mut row = 0.0;
            for j in (0..=dy).rev() {
                row = row * y + self.coeffs[[i, j]];
            }
            acc = acc * x + row;
        }
        acc
    }

    /// Partial derivative of order `kx` in x and `ky` in y.
    pub fn derivative(&self, kx: usize, ky: usize) -> Poly2 {
        let (dx, dy) = self.degrees();
        if kx > dx || ky > dy {
            return Poly2::zero();
        }
        let falling = |n: usize, k: usize| (0..k).map(|m| (n - m) as f64).product::<f64>();
        let mut coeffs = Array2::zeros((dx - kx + 1, dy - ky + 1));
        for ((i, j), c) in coeffs.indexed_iter_mut() {
            *c = self.coeffs[[i + kx, j + ky]] * falling(i + kx, kx) * falling(j + ky, ky);
        }
        Poly2 { coeffs }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let (a, b) = self.degrees();
        let (c, d) = other.degrees();
        let mut coeffs = Array2::zeros((a + c + 1, b + d + 1));
        for ((i, j), &p) in self.coeffs.indexed_iter() {
            if p == 0.0 {
                continue;
            }
            for ((k, l), &q) in other.coeffs.indexed_iter() {
                coeffs[[i + k, j + l]] += p * q;
            }
        }
        Poly2 { coeffs }
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let (a, b) = self.degrees();
        let (c, d) = other.degrees();
        let mut coeffs = Array2::zeros((a.max(c) + 1, b.max(d) + 1));
        for ((i, j), &p) in self.coeffs.indexed_iter() {
            coeffs[[i, j]] += p;
        }
        for ((i, j), &q) in other.coeffs.indexed_iter() {
            coeffs[[i, j]] += q;
        }
        Poly2 { coeffs }
    }

    pub fn scale(&self, s: f64) -> Poly2 {
        Poly2 { coeffs: &self.coeffs * s }
    }

    /// Exact integral over a rectangle (up to floating-point rounding).
    pub fn integrate(&self, d: &Domain) -> f64 {
        let moment = |lo: f64, hi: f64, k: usize| {
            let e = (k + 1) as i32;
            (hi.powi(e) - lo.powi(e)) / (k + 1) as f64
        };
        self.coeffs
            .indexed_iter()
            .filter(|(_, &c)| c != 0.0)
            .map(|((i, j), &c)| c * moment(d.xmin, d.xmax, i) * moment(d.ymin, d.ymax, j))
            .sum()
    }

    /// The four integrals `‖v‖², ‖∇v‖², ‖∇²v‖², (f, v)` for `v = self`.
    pub fn exact_integrals(&self, load: &Poly2, d: &Domain) -> IntegralValues {
        let sq = |p: &Poly2| p.mul(p);
        let (vx, vy) = (self.derivative(1, 0), self.derivative(0, 1));
        let (vxx, vyy, vxy) = (self.derivative(2, 0), self.derivative(0, 2), self.derivative(1, 1));
        IntegralValues {
            l2_sq: sq(self).integrate(d),
            h1_semi_sq: sq(&vx).add(&sq(&vy)).integrate(d),
            h2_semi_sq: sq(&vxx).add(&sq(&vyy)).add(&sq(&vxy).scale(2.0)).integrate(d),
            load: load.mul(self).integrate(d),
        }
    }

    pub fn to_analytic(&self) -> AnalyticField {
        let v = Arc::new(self.clone());
        let dx = Arc::new(self.derivative(1, 0));
        let dy = Arc::new(self.derivative(0, 1));
        let dxy = Arc::new(self.derivative(1, 1));
        AnalyticField::new(move |x, y| v.eval(x, y))
            .with_dx(move |x, y| dx.eval(x, y))
            .with_dy(move |x, y| dy.eval(x, y))
            .with_dxy(move |x, y| dxy.eval(x, y))
    }
}

/// Parses polynomial coefficient files: one term `c i j` per line meaning
/// `c · x^i · y^j`, with `#` comments.
pub fn parse_poly(text: &str) -> Result<Poly2, ParseError> {
    let mut records = Records::new(text);
    let mut terms = Vec::new();
    while let Some((line, fields)) = records.next_record() {
        check_arity(line, &fields, 3)?;
        let c = parse_real(line, fields[0])?;
        let exp = |s: &str| -> Result<usize, ParseError> {
            let k = s
                .parse::<usize>()
                .map_err(|_| ParseError::new(line, ParseErrorKind::BadCount(s.to_string())))?;
            if k > MAX_EXPONENT {
                return Err(ParseError::new(
                    line,
                    ParseErrorKind::ExponentTooLarge { max: MAX_EXPONENT as u32 },
                ));
            }
            Ok(k)
        };
        terms.push((c, exp(fields[1])?, exp(fields[2])?));
    }
    Ok(Poly2::from_terms(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_closed_forms() {
        let f = quartic();
        assert_eq!(f.nodal(0.0, 0.0, 1e-5), [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(f.value(0.5, 0.5), 0.31640625);
        assert_eq!(f.value(1.0, 0.3), 0.0);
        let p = quartic_poly();
        for (x, y) in [(0.3, -0.7), (-0.9, 0.1), (0.5, 0.5)] {
            let [v, vx, vy, vxy] = f.nodal(x, y, 1e-5);
            assert!((v - p.eval(x, y)).abs() < 1e-14);
            assert!((vx - p.derivative(1, 0).eval(x, y)).abs() < 1e-13);
            assert!((vy - p.derivative(0, 1).eval(x, y)).abs() < 1e-13);
            assert!((vxy - p.derivative(1, 1).eval(x, y)).abs() < 1e-13);
        }
    }

    #[test]
    fn polynomial_integrals_reproduce_reference_fractions() {
        let load = Poly2::from_terms(&[(1.0, 2, 2)]);
        let got = quartic_poly().exact_integrals(&load, &Domain::symmetric_unit());
        let want = QUARTIC_EXACT;
        assert!((got.l2_sq - want.l2_sq).abs() < 1e-14);
        assert!((got.h1_semi_sq - want.h1_semi_sq).abs() < 1e-13);
        assert!((got.h2_semi_sq - want.h2_semi_sq).abs() < 1e-12);
        assert!((got.load - want.load).abs() < 1e-15);
    }

    #[test]
    fn finite_difference_fill() {
        let f = AnalyticField::new(|x, y| (x * y).sin());
        let [_, vx, vy, vxy] = f.nodal(0.3, 0.4, 1e-5);
        let (x, y) = (0.3f64, 0.4f64);
        assert!((vx - y * (x * y).cos()).abs() < 1e-8);
        assert!((vy - x * (x * y).cos()).abs() < 1e-8);
        assert!((vxy - ((x * y).cos() - x * y * (x * y).sin())).abs() < 1e-5);
    }

    #[test]
    fn parse_terms() {
        let p = parse_poly("# x^2 y - 3\n1 2 1\n-3 0 0\n0.5 2 1\n").unwrap();
        assert_eq!(p.coeff(2, 1), 1.5);
        assert_eq!(p.coeff(0, 0), -3.0);
        assert_eq!(p.eval(2.0, 3.0), 1.5 * 4.0 * 3.0 - 3.0);
        assert_eq!(parse_poly("").unwrap(), Poly2::zero());
        assert!(matches!(parse_poly("1 2").unwrap_err().kind, ParseErrorKind::FieldCount { .. }));
        assert!(matches!(parse_poly("1 99 0").unwrap_err().kind, ParseErrorKind::ExponentTooLarge { .. }));
        assert_eq!(parse_poly("1 0 0\n1 -1 0").unwrap_err().line, 2);
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let c = Poly2::from_terms(&[(3.0, 0, 0)]);
        assert_eq!(c.derivative(1, 0).eval(1.0, 2.0), 0.0);
        assert_eq!(c.derivative(0, 2).degrees(), (0, 0));
    }
}
