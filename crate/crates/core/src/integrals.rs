//! Sobolev-type integrals of C1 fields and the refinement study.
//!
//! For a field `v` and load `f` on Ω:
//!
//! ```text
//! ‖v‖²   = ∫ v²
//! ‖∇v‖²  = ∫ v_x² + v_y²
//! ‖∇²v‖² = ∫ v_xx² + 2 v_xy² + v_yy²
//! (f, v) = ∫ f v
//! ```

use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::time::Instant;

use crate::bfs_basis::shape_values;
use crate::error::{Error, Result};
use crate::field::{interpolate, C1Field, PointEvaluator};
use crate::format::fmt_f64;
use crate::functions::AnalyticField;
use crate::mesh::{Domain, RectMesh};
use crate::quadrature::{GaussRule, QuadratureRule};
use crate::sum::{par_chunks, CompensatedSum};

/// Finest refinement level accepted by [`convergence_study`].
pub const MAX_LEVEL: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IntegralValues {
    pub l2_sq: f64,
    pub h1_semi_sq: f64,
    pub h2_semi_sq: f64,
    pub load: f64,
}

impl IntegralValues {
    pub fn get(&self, q: Quantity) -> f64 {
        match q {
            Quantity::L2 => self.l2_sq,
            Quantity::H1 => self.h1_semi_sq,
            Quantity::H2 => self.h2_semi_sq,
            Quantity::Load => self.load,
        }
    }

    /// Full H² norm `(‖v‖² + ‖∇v‖² + ‖∇²v‖²)^½`.
    pub fn h2_norm(&self) -> f64 {
        (self.l2_sq + self.h1_semi_sq + self.h2_semi_sq).sqrt()
    }

    pub fn abs_diff(&self, other: &IntegralValues) -> IntegralValues {
        IntegralValues {
            l2_sq: (self.l2_sq - other.l2_sq).abs(),
            h1_semi_sq: (self.h1_semi_sq - other.h1_semi_sq).abs(),
            h2_semi_sq: (self.h2_semi_sq - other.h2_semi_sq).abs(),
            load: (self.load - other.load).abs(),
        }
    }

    fn all_finite(&self) -> Option<&'static str> {
        Quantity::ALL.into_iter().find(|&q| !self.get(q).is_finite()).map(Quantity::name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    L2,
    H1,
    H2,
    Load,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [Quantity::L2, Quantity::H1, Quantity::H2, Quantity::Load];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::L2 => "L2sq",
            Quantity::H1 => "H1sq",
            Quantity::H2 => "H2sq",
            Quantity::Load => "load",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Norms {
    pub l2_sq: f64,
    pub h1_semi_sq: f64,
    pub h2_semi_sq: f64,
}

fn accumulate(field: &C1Field<'_>, rule: &QuadratureRule, load: Option<&AnalyticField>) -> Result<[f64; 4]> {
    let mesh = field.mesh();
    let ev = PointEvaluator::new(rule.points(), mesh)?;
    let jac = mesh.size().area();
    let parts = par_chunks(mesh.num_elements(), |range| {
        let mut acc = [CompensatedSum::new(); 4];
        for e in range {
            let c = field.element_coeffs(e);
            let mut local = [0.0; 4];
            for (q, (&r, &w)) in rule.points().iter().zip(rule.weights()).enumerate() {
                let pv = ev.all(&c, q);
                local[0] += w * pv.v * pv.v;
                local[1] += w * (pv.vx * pv.vx + pv.vy * pv.vy);
                local[2] += w * (pv.vxx * pv.vxx + 2.0 * pv.vxy * pv.vxy + pv.vyy * pv.vyy);
                if let Some(f) = load {
                    let [x, y] = mesh.map_point(e, r);
                    let fx = f.value(x, y);
                    if !fx.is_finite() {
                        return Err(Error::NonFiniteIntegrand { element: e, xi: r[0], eta: r[1] });
                    }
                    local[3] += w * fx * pv.v;
                }
            }
            for (a, l) in acc.iter_mut().zip(local) {
                a.add(jac * l);
            }
        }
        Ok(acc)
    });
    let mut total = [CompensatedSum::new(); 4];
    for part in parts {
        for (t, p) in total.iter_mut().zip(part?) {
            t.merge(&p);
        }
    }
    Ok(total.map(|t| t.value()))
}

pub fn norms(field: &C1Field<'_>, rule: &QuadratureRule) -> Result<Norms> {
    let [l2_sq, h1_semi_sq, h2_semi_sq, _] = accumulate(field, rule, None)?;
    Ok(Norms { l2_sq, h1_semi_sq, h2_semi_sq })
}

/// `(f, v)` by quadrature, with `f` sampled at the physical Gauss points.
pub fn load_functional(field: &C1Field<'_>, f: &AnalyticField, rule: &QuadratureRule) -> Result<f64> {
    let mesh = field.mesh();
    let size = mesh.size();
    crate::quadrature::integrate_on_mesh(mesh, rule, |e, r| {
        let [x, y] = mesh.map_point(e, r);
        let phi = shape_values(r, size);
        let c = field.element_coeffs(e);
        let v: f64 = c.iter().zip(&phi).map(|(a, b)| a * b).sum();
        f.value(x, y) * v
    })
}

/// All four integrals in a single pass over the elements.
pub fn integrals(field: &C1Field<'_>, f: &AnalyticField, rule: &QuadratureRule) -> Result<IntegralValues> {
    let [l2_sq, h1_semi_sq, h2_semi_sq, load] = accumulate(field, rule, Some(f))?;
    Ok(IntegralValues { l2_sq, h1_semi_sq, h2_semi_sq, load })
}

/// Inputs of a refinement study on a rectangular domain.
#[derive(Debug, Clone)]
pub struct StudyConfig<'a> {
    pub domain: Domain,
    pub field: &'a AnalyticField,
    pub load: &'a AnalyticField,
    pub exact: IntegralValues,
    pub levels: RangeInclusive<u32>,
    pub rules: Vec<GaussRule>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyRow {
    pub level: u32,
    pub rule: GaussRule,
    pub nodes: usize,
    pub elements: usize,
    pub values: IntegralValues,
    pub errors: IntegralValues,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceReport {
    pub rows: Vec<StudyRow>,
}

pub const REPORT_HEADER: &str =
    "level,rule,nodes,elements,L2sq,H1sq,H2sq,load,errL2,errH1,errH2,errLoad,seconds";

impl ConvergenceReport {
    pub fn row(&self, level: u32, rule: GaussRule) -> Option<&StudyRow> {
        self.rows.iter().find(|r| r.level == level && r.rule == rule)
    }

    /// `(level, |value - exact|)` for one rule and quantity, by level.
    pub fn errors(&self, rule: GaussRule, q: Quantity) -> Vec<(u32, f64)> {
        let mut v: Vec<_> =
            self.rows.iter().filter(|r| r.rule == rule).map(|r| (r.level, r.errors.get(q))).collect();
        v.sort_by_key(|p| p.0);
        v
    }

    /// Observed orders `log2(err_L / err_{L+1})`, keyed by the coarser level.
    pub fn observed_orders(&self, rule: GaussRule, q: Quantity) -> Vec<(u32, f64)> {
        self.errors(rule, q)
            .windows(2)
            .filter(|w| w[1].0 == w[0].0 + 1)
            .map(|w| (w[0].0, (w[0].1 / w[1].1).log2()))
            .collect()
    }

    /// Writes the report as CSV. `with_timing = false` writes 0 in the
    /// seconds column so the output is reproducible byte for byte.
    pub fn write_csv<W: Write>(&self, mut w: W, with_timing: bool) -> io::Result<()> {
        writeln!(w, "{REPORT_HEADER}")?;
        for r in &self.rows {
            let v = r.values;
            let e = r.errors;
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.level,
                r.rule.num_points(),
                r.nodes,
                r.elements,
                fmt_f64(v.l2_sq),
                fmt_f64(v.h1_semi_sq),
                fmt_f64(v.h2_semi_sq),
                fmt_f64(v.load),
                fmt_f64(e.l2_sq),
                fmt_f64(e.h1_semi_sq),
                fmt_f64(e.h2_semi_sq),
                fmt_f64(e.load),
                if with_timing { format!("{:.6}", r.seconds) } else { "0".into() },
            )?;
        }
        Ok(())
    }
}

/// Interpolates the field on each uniform level and evaluates all four
/// integrals with each requested rule.
pub fn convergence_study(cfg: &StudyConfig<'_>) -> Result<ConvergenceReport> {
    if *cfg.levels.end() > MAX_LEVEL {
        return Err(Error::LevelTooLarge(*cfg.levels.end()));
    }
    if let Some(name) = cfg.exact.all_finite() {
        return Err(Error::NonFiniteExact(name));
    }
    let rules: Vec<QuadratureRule> = cfg.rules.iter().map(|r| r.rule()).collect();
    let mut report = ConvergenceReport::default();
    for level in cfg.levels.clone() {
        let start = Instant::now();
        let mesh = RectMesh::uniform_level(cfg.domain, level)?;
        let field = interpolate(cfg.field, &mesh)?;
        let setup = start.elapsed().as_secs_f64();
        for rule in &rules {
            let t = Instant::now();
            let values = integrals(&field, cfg.load, rule)?;
            if let Some(name) = values.all_finite() {
                return Err(Error::NonFiniteExact(name));
            }
            report.rows.push(StudyRow {
                level,
                rule: rule.kind(),
                nodes: mesh.num_nodes(),
                elements: mesh.num_elements(),
                values,
                errors: values.abs_diff(&cfg.exact),
                seconds: setup + t.elapsed().as_secs_f64(),
            });
        }
    }
    Ok(report)
}
