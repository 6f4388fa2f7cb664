//! Tensor-product Gauss-Legendre rules on the unit square.

use crate::error::{Error, Result};
use crate::mesh::RectMesh;
use crate::sum::{par_chunks, CompensatedSum};

/// The supported rules, by total point count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GaussRule {
    One,
    Four,
    Nine,
}

impl GaussRule {
    pub const ALL: [GaussRule; 3] = [GaussRule::One, GaussRule::Four, GaussRule::Nine];

    pub fn num_points(self) -> usize {
        match self {
            GaussRule::One => 1,
            GaussRule::Four => 4,
            GaussRule::Nine => 9,
        }
    }

    pub fn points_per_direction(self) -> usize {
        match self {
            GaussRule::One => 1,
            GaussRule::Four => 2,
            GaussRule::Nine => 3,
        }
    }

    pub fn rule(self) -> QuadratureRule {
        let (x, w) = gauss_1d(self.points_per_direction());
        let mut points = Vec::with_capacity(self.num_points());
        let mut weights = Vec::with_capacity(self.num_points());
        for (yq, wy) in x.iter().zip(&w) {
            for (xq, wx) in x.iter().zip(&w) {
                points.push([*xq, *yq]);
                weights.push(wx * wy);
            }
        }
        QuadratureRule { kind: self, points, weights }
    }
}

impl TryFrom<usize> for GaussRule {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        match n {
            1 => Ok(GaussRule::One),
            4 => Ok(GaussRule::Four),
            9 => Ok(GaussRule::Nine),
            _ => Err(Error::UnsupportedRule(n)),
        }
    }
}

/// Gauss-Legendre nodes and weights on [0, 1].
fn gauss_1d(m: usize) -> (Vec<f64>, Vec<f64>) {
    match m {
        1 => (vec![0.5], vec![1.0]),
        2 => {
            let d = 0.5 / 3f64.sqrt();
            (vec![0.5 - d, 0.5 + d], vec![0.5, 0.5])
        }
        3 => {
            let d = 15f64.sqrt() / 10.0;
            (vec![0.5 - d, 0.5, 0.5 + d], vec![5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0])
        }
        _ => unreachable!("only 1-3 point Gauss rules are tabulated"),
    }
}

/// Points on the reference square with weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    kind: GaussRule,
    points: Vec<[f64; 2]>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn kind(&self) -> GaussRule {
        self.kind
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Integral of `g` over the reference square.
    pub fn apply(&self, g: impl Fn([f64; 2]) -> f64) -> f64 {
        self.points.iter().zip(&self.weights).map(|(&p, &w)| w * g(p)).sum()
    }
}

pub fn gauss_rule(np: usize) -> Result<QuadratureRule> {
    Ok(GaussRule::try_from(np)?.rule())
}

/// `Σ_e hx·hy Σ_q w_q g(e, r_q)` over all elements, summed in a fixed order.
pub fn integrate_on_mesh<G>(mesh: &RectMesh, rule: &QuadratureRule, integrand: G) -> Result<f64>
where
    G: Fn(usize, [f64; 2]) -> f64 + Sync,
{
    let jac = mesh.size().area();
    let parts = par_chunks(mesh.num_elements(), |range| {
        let mut acc = CompensatedSum::new();
        for e in range {
            let mut local = 0.0;
            for (&r, &w) in rule.points.iter().zip(&rule.weights) {
                let g = integrand(e, r);
                if !g.is_finite() {
                    return Err(Error::NonFiniteIntegrand { element: e, xi: r[0], eta: r[1] });
                }
                local += w * g;
            }
            acc.add(jac * local);
        }
        Ok(acc)
    });
    let mut total = CompensatedSum::new();
    for part in parts {
        total.merge(&part?);
    }
    Ok(total.value())
}

/// Physical Gauss points of every element: `(element, [x, y], weight)`,
/// where the weight includes the element area.
pub fn mapped_points(mesh: &RectMesh, rule: &QuadratureRule) -> Vec<(usize, [f64; 2], f64)> {
    let jac = mesh.size().area();
    (0..mesh.num_elements())
        .flat_map(|e| {
            rule.points.iter().zip(&rule.weights).map(move |(&r, &w)| (e, mesh.map_point(e, r), w * jac))
        })
        .collect()
}
