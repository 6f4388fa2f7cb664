//! Cubic Hermite basis on the unit interval and on a general interval.
//!
//! The reference functions are
//!
//! ```text
//! H1(t) = 2t^3 - 3t^2 + 1      H3(t) = t^3 - 2t^2 + t
//! H2(t) = -2t^3 + 3t^2         H4(t) = t^3 - t^2
//! ```
//!
//! H1/H2 carry the endpoint values, H3/H4 the endpoint slopes. On an actual
//! interval `[a, b]` of length `h` the slope functions are multiplied by `h`
//! so that their derivative at the matching endpoint is exactly one.

use crate::error::{Error, Result};

/// Monomial coefficients `[c0, c1, c2, c3]` of the reference functions.
const COEFFS: [[f64; 4]; 4] =
    [[1.0, 0.0, -3.0, 2.0], [0.0, 0.0, 3.0, -2.0], [0.0, 1.0, -2.0, 1.0], [0.0, 0.0, -1.0, 1.0]];

const fn differentiate(c: [[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    let mut i = 0;
    while i < 4 {
        out[i] = [c[i][1], 2.0 * c[i][2], 3.0 * c[i][3], 0.0];
        i += 1;
    }
    out
}

const COEFFS_D1: [[f64; 4]; 4] = differentiate(COEFFS);
const COEFFS_D2: [[f64; 4]; 4] = differentiate(COEFFS_D1);

/// Derivative order of an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Value,
    First,
    Second,
}

impl Order {
    pub fn as_u8(self) -> u8 {
        match self {
            Order::Value => 0,
            Order::First => 1,
            Order::Second => 2,
        }
    }

    fn coeffs(self) -> &'static [[f64; 4]; 4] {
        match self {
            Order::Value => &COEFFS,
            Order::First => &COEFFS_D1,
            Order::Second => &COEFFS_D2,
        }
    }
}

impl TryFrom<u8> for Order {
    type Error = Error;

    fn try_from(k: u8) -> Result<Self> {
        match k {
            0 => Ok(Order::Value),
            1 => Ok(Order::First),
            2 => Ok(Order::Second),
            _ => Err(Error::InvalidOrder(k)),
        }
    }
}

/// Values (or derivatives) of the four Hermite functions at one coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HermiteValues(pub [f64; 4]);

impl HermiteValues {
    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }
}

impl std::ops::Index<usize> for HermiteValues {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Affine map from `[a, b]` onto the reference interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalMap {
    a: f64,
    b: f64,
}

impl IntervalMap {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b - a > 0.0) {
            return Err(Error::DegenerateInterval { a, b });
        }
        Ok(IntervalMap { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn h(&self) -> f64 {
        self.b - self.a
    }

    pub fn to_reference(&self, x: f64) -> f64 {
        (x - self.a) / self.h()
    }
}

#[inline]
fn horner(c: &[f64; 4], t: f64) -> f64 {
    ((c[3] * t + c[2]) * t + c[1]) * t + c[0]
}

/// Evaluates the reference functions (or a derivative) at `t`.
///
/// `t` is not range-checked; see [`check_reference`].
#[inline]
pub fn eval_ref(t: f64, order: Order) -> HermiteValues {
    let c = order.coeffs();
    HermiteValues([horner(&c[0], t), horner(&c[1], t), horner(&c[2], t), horner(&c[3], t)])
}

/// Evaluates the basis of an actual interval at a physical coordinate `x`.
///
/// Value functions scale with `1/h^k`, slope functions with `h^(1-k)`.
pub fn eval_actual(x: f64, map: &IntervalMap, order: Order) -> HermiteValues {
    let h = map.h();
    let r = eval_ref(map.to_reference(x), order);
    let (sv, ss) = match order {
        Order::Value => (1.0, h),
        Order::First => (1.0 / h, 1.0),
        Order::Second => (1.0 / (h * h), 1.0 / h),
    };
    HermiteValues([r[0] * sv, r[1] * sv, r[2] * ss, r[3] * ss])
}

/// Rejects reference coordinates outside `[0, 1]` (or non-finite ones).
/// Evaluation itself never clamps; this is for callers that want the check.
pub fn check_reference(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::OutsideReference(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: HermiteValues, b: [f64; 4], tol: f64) {
        for i in 0..4 {
            assert!((a[i] - b[i]).abs() <= tol, "{:?} vs {:?}", a, b);
        }
    }

    #[test]
    fn endpoint_conditions() {
        close(eval_ref(0.0, Order::Value), [1.0, 0.0, 0.0, 0.0], 0.0);
        close(eval_ref(1.0, Order::Value), [0.0, 1.0, 0.0, 0.0], 0.0);
        close(eval_ref(0.0, Order::First), [0.0, 0.0, 1.0, 0.0], 0.0);
        close(eval_ref(1.0, Order::First), [0.0, 0.0, 0.0, 1.0], 0.0);
    }

    #[test]
    fn midpoint_values() {
        // 2/8 - 3/4 + 1, -2/8 + 3/4, 1/8 - 2/4 + 1/2, 1/8 - 1/4
        close(eval_ref(0.5, Order::Value), [0.5, 0.5, 0.125, -0.125], 1e-15);
    }

    #[test]
    fn second_derivatives_are_linear() {
        // H1'' = 12t - 6, H2'' = -12t + 6, H3'' = 6t - 4, H4'' = 6t - 2
        close(eval_ref(0.25, Order::Second), [-3.0, 3.0, -2.5, -0.5], 1e-15);
    }

    #[test]
    fn actual_interval_values() {
        let map = IntervalMap::new(2.0, 5.0).unwrap();
        close(eval_actual(3.5, &map, Order::Value), [0.5, 0.5, 0.375, -0.375], 1e-15);
        close(eval_actual(2.0, &map, Order::Value), [1.0, 0.0, 0.0, 0.0], 0.0);
        close(eval_actual(2.0, &map, Order::First), [0.0, 0.0, 1.0, 0.0], 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(Order::try_from(3), Err(Error::InvalidOrder(3))));
        assert!(IntervalMap::new(1.0, 1.0).is_err());
        assert!(IntervalMap::new(2.0, 1.0).is_err());
        assert!(IntervalMap::new(0.0, f64::NAN).is_err());
        assert!(check_reference(1.5).is_err());
        assert!(check_reference(-1e-300).is_err());
        assert!(check_reference(f64::NAN).is_err());
        assert!(check_reference(1.0).is_ok());
    }

    proptest! {
        #[test]
        fn kronecker_on_actual_interval(a in -1e3f64..1e3, logh in -3.0f64..3.0) {
            let h = 10f64.powf(logh);
            let map = IntervalMap::new(a, a + h).unwrap();
            let b = map.b();
            let rows = [
                eval_actual(a, &map, Order::Value),
                eval_actual(b, &map, Order::Value),
                eval_actual(a, &map, Order::First),
                eval_actual(b, &map, Order::First),
            ];
            for (r, row) in rows.iter().enumerate() {
                for c in 0..4 {
                    let want = if r == c { 1.0 } else { 0.0 };
                    prop_assert!((row[c] - want).abs() <= 1e-13, "row {r} col {c}: {}", row[c]);
                }
            }
        }

        #[test]
        fn derivatives_match_finite_differences(t in 0.05f64..0.95, a in -10.0f64..10.0, h in 0.1f64..10.0) {
            let map = IntervalMap::new(a, a + h).unwrap();
            let x = a + t * h;
            let d = 1e-5 * h;
            let f = |x| eval_actual(x, &map, Order::Value);
            let g = |x| eval_actual(x, &map, Order::First);
            let d1 = eval_actual(x, &map, Order::First);
            let d2 = eval_actual(x, &map, Order::Second);
            for i in 0..4 {
                let fd1 = (f(x + d)[i] - f(x - d)[i]) / (2.0 * d);
                let fd2 = (g(x + d)[i] - g(x - d)[i]) / (2.0 * d);
                let s1 = d1[i].abs().max(1.0 / h);
                let s2 = d2[i].abs().max(1.0 / (h * h));
                prop_assert!((fd1 - d1[i]).abs() / s1 <= 1e-6);
                prop_assert!((fd2 - d2[i]).abs() / s2 <= 1e-6);
            }
        }

        #[test]
        fn value_functions_partition_unity(t in 0.0f64..=1.0) {
            let v = eval_ref(t, Order::Value);
            prop_assert!((v[0] + v[1] - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn slope_functions_vanish_at_endpoints() {
        let map = IntervalMap::new(-3.0, 4.0).unwrap();
        for x in [map.a(), map.b()] {
            let v = eval_actual(x, &map, Order::Value);
            assert!(v[2].abs() < 1e-14 && v[3].abs() < 1e-14);
        }
    }
}
