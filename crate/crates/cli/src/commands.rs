use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use bfs_core::export::{
    write_edge_midpoints_csv, write_mapped_points_csv, write_midpoints_csv, write_rule_csv,
    write_samples_csv, write_shape_csv, write_vtk,
};
use bfs_core::field::write_dofs;
use bfs_core::format::fmt_f64;
use bfs_core::functions::{parse_poly, quartic, quartic_load, quartic_poly, QUARTIC_EXACT};
use bfs_core::hermite1d::{eval_actual, eval_ref, IntervalMap, Order};
use bfs_core::mesh::{parse_mesh, write_mesh};
use bfs_core::{
    convergence_study, interpolate, shapeder, shapefun, AnalyticField, C1Field, DerivSlot, Domain,
    ElementSize, IntegralValues, Poly2, Quantity, RectMesh, StudyConfig,
};

use crate::args::{
    BasisArgs, DomainArgs, FieldArgs, FunctionSpec, IntegrateArgs, IpsArgs, LoadSpec, ShapeArgs,
};
use crate::CliError;

/// Writes files below one output directory and remembers what was written.
struct OutDir {
    root: PathBuf,
    written: Vec<PathBuf>,
}

impl OutDir {
    fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root).map_err(|e| CliError::io(root, e))?;
        Ok(OutDir { root: root.to_path_buf(), written: Vec::new() })
    }

    fn write<F>(&mut self, name: &str, body: F) -> Result<(), CliError>
    where
        F: FnOnce(&mut BufWriter<fs::File>) -> Result<(), CliError>,
    {
        let path = self.root.join(name);
        let file = fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
        let mut w = BufWriter::new(file);
        body(&mut w)?;
        w.flush().map_err(|e| CliError::io(&path, e))?;
        self.written.push(path);
        Ok(())
    }

    fn report(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for p in &self.written {
            writeln!(out, "wrote {}", p.display())?;
        }
        Ok(())
    }
}

fn io_in(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::io(path, e)
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))
}

fn domain(d: &DomainArgs) -> Result<Domain, CliError> {
    let [a, b, c, e] = d.domain[..] else {
        return Err(CliError::Config("--domain takes four values".into()));
    };
    Domain::new(a, b, c, e).map_err(|e| CliError::Config(e.to_string()))
}

fn element_size(v: &[f64]) -> Result<ElementSize, CliError> {
    ElementSize::new(v[0], v[1]).map_err(|e| CliError::Config(e.to_string()))
}

/// `n` equally spaced points of `[0, 1]`, both ends included.
fn unit_grid(n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    if n < 2 {
        return Err(CliError::Config(format!("{what} must be at least 2")));
    }
    Ok((0..n).map(|k| k as f64 / (n - 1) as f64).collect())
}

fn load_poly(path: &Path) -> Result<Poly2, CliError> {
    let text = read_input(path)?;
    parse_poly(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

const ORDERS: [Order; 3] = [Order::Value, Order::First, Order::Second];

pub fn basis(a: &BasisArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let ts = unit_grid(a.samples, "--samples")?;
    let grid = unit_grid(a.grid, "--grid")?;
    let map = IntervalMap::new(a.interval[0], a.interval[1]).map_err(|e| CliError::Config(e.to_string()))?;
    let size = element_size(&a.size)?;
    if let Some(&bad) = a.basis.iter().find(|&&i| !(1..=16).contains(&i)) {
        return Err(CliError::Config(format!("basis index {bad} out of range 1..16")));
    }
    let mut dir = OutDir::create(&a.out.out)?;

    dir.write("hermite_ref.csv", |w| {
        writeln!(w, "x,order,H1,H2,H3,H4")?;
        for order in ORDERS {
            for &t in &ts {
                let h = eval_ref(t, order);
                writeln!(
                    w,
                    "{},{},{},{},{},{}",
                    fmt_f64(t),
                    order.as_u8(),
                    fmt_f64(h[0]),
                    fmt_f64(h[1]),
                    fmt_f64(h[2]),
                    fmt_f64(h[3])
                )?;
            }
        }
        Ok(())
    })?;

    dir.write("hermite_actual.csv", |w| {
        writeln!(w, "x,order,H1,H2,H3,H4")?;
        for order in ORDERS {
            for &t in &ts {
                let x = map.a() + t * map.h();
                let h = eval_actual(x, &map, order);
                writeln!(
                    w,
                    "{},{},{},{},{},{}",
                    fmt_f64(x),
                    order.as_u8(),
                    fmt_f64(h[0]),
                    fmt_f64(h[1]),
                    fmt_f64(h[2]),
                    fmt_f64(h[3])
                )?;
            }
        }
        Ok(())
    })?;

    let points: Vec<[f64; 2]> = grid.iter().flat_map(|&y| grid.iter().map(move |&x| [x, y])).collect();
    let vals = shapefun(&points, size)?;
    let ders = shapeder(&points, size)?;
    dir.write("bfs_basis.csv", |w| {
        writeln!(w, "i,x,y,v,dx,dy,dxx,dyy,dxy")?;
        for &i in &a.basis {
            for (p, pt) in points.iter().enumerate() {
                write!(w, "{i},{},{},{}", fmt_f64(pt[0]), fmt_f64(pt[1]), fmt_f64(vals.get(i - 1, p)))?;
                for s in DerivSlot::ALL {
                    write!(w, ",{}", fmt_f64(ders.get(i - 1, p, s)))?;
                }
                writeln!(w)?;
            }
        }
        Ok(())
    })?;
    dir.report(out).map_err(io_in(&a.out.out))
}

pub fn shape(a: &ShapeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let size = element_size(&a.size)?;
    let rule = a.rule.rule();
    let vals = shapefun(rule.points(), size)?;
    let ders = shapeder(rule.points(), size)?;
    let mut dir = OutDir::create(&a.out.out)?;
    dir.write("shape.csv", |w| Ok(write_shape_csv(w, rule.points(), &vals, Some(&ders))?))?;
    dir.report(out).map_err(io_in(&a.out.out))
}

fn analytic(spec: &FunctionSpec) -> Result<AnalyticField, CliError> {
    Ok(match spec {
        FunctionSpec::Quartic => quartic(),
        FunctionSpec::Poly(path) => load_poly(path)?.to_analytic(),
    })
}

pub fn field(a: &FieldArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mesh = match &a.mesh {
        Some(path) => {
            let text = read_input(path)?;
            parse_mesh(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        }
        None => RectMesh::uniform_level(domain(&a.domain)?, a.level)?,
    };
    let field = match &a.dofs {
        Some(path) => {
            let text = read_input(path)?;
            C1Field::from_text(&mesh, &text)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        }
        None => interpolate(&analytic(&a.function)?, &mesh)?,
    };
    let grid = unit_grid(a.samples, "--samples")?;
    let points: Vec<[f64; 2]> = grid.iter().flat_map(|&y| grid.iter().map(move |&x| [x, y])).collect();

    let mut dir = OutDir::create(&a.out.out)?;
    dir.write("mesh.txt", |w| Ok(write_mesh(w, &mesh)?))?;
    dir.write("dofs.txt", |w| Ok(write_dofs(w, &field)?))?;
    dir.write("samples.csv", |w| Ok(write_samples_csv(w, &field, &points)?))?;
    dir.write("element_midpoints.csv", |w| {
        Ok(write_midpoints_csv(w, "element", &mesh.element_midpoints())?)
    })?;
    dir.write("edge_midpoints.csv", |w| Ok(write_edge_midpoints_csv(w, &field)?))?;
    dir.write("field.vtk", |w| Ok(write_vtk(w, &field, "bfs field")?))?;
    writeln!(out, "{} nodes, {} elements", mesh.num_nodes(), mesh.num_elements())
        .map_err(io_in(&a.out.out))?;
    dir.report(out).map_err(io_in(&a.out.out))
}

pub fn ips(a: &IpsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mesh = RectMesh::uniform_level(domain(&a.domain)?, 1)?;
    let mut dir = OutDir::create(&a.out.out)?;
    for kind in &a.rules.0 {
        let rule = kind.rule();
        let n = kind.num_points();
        dir.write(&format!("rule{n}.csv"), |w| Ok(write_rule_csv(w, &rule)?))?;
        dir.write(&format!("ips{n}.csv"), |w| Ok(write_mapped_points_csv(w, &mesh, &rule)?))?;
    }
    dir.report(out).map_err(io_in(&a.out.out))
}

const QUARTIC_FRACTIONS: [&str; 4] = ["65536/99225", "131072/33075", "65536/1225", "256/11025"];

pub fn integrate(a: &IntegrateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let d = domain(&a.domain)?;
    let (load, f_poly) = match &a.load {
        LoadSpec::X2Y2 => (quartic_load(), Poly2::from_terms(&[(1.0, 2, 2)])),
        LoadSpec::Poly(path) => {
            let p = load_poly(path)?;
            (p.to_analytic(), p)
        }
    };
    let builtin =
        a.function == FunctionSpec::Quartic && a.load == LoadSpec::X2Y2 && d == Domain::symmetric_unit();
    let (field, exact): (AnalyticField, IntegralValues) = match &a.function {
        _ if builtin => (quartic(), QUARTIC_EXACT),
        FunctionSpec::Quartic => (quartic(), quartic_poly().exact_integrals(&f_poly, &d)),
        FunctionSpec::Poly(path) => {
            let p = load_poly(path)?;
            let exact = p.exact_integrals(&f_poly, &d);
            (p.to_analytic(), exact)
        }
    };
    let report = convergence_study(&StudyConfig {
        domain: d,
        field: &field,
        load: &load,
        exact,
        levels: a.levels.clone(),
        rules: a.rules.0.clone(),
    })?;

    let mut dir = OutDir::create(&a.out.out)?;
    dir.write("report.csv", |w| Ok(report.write_csv(w, a.timing)?))?;

    let mut summary = || -> std::io::Result<()> {
        writeln!(out, "exact values")?;
        for (k, q) in Quantity::ALL.into_iter().enumerate() {
            if builtin {
                writeln!(out, "  {:<5} = {} = {}", q.name(), QUARTIC_FRACTIONS[k], fmt_f64(exact.get(q)))?;
            } else {
                writeln!(out, "  {:<5} = {}", q.name(), fmt_f64(exact.get(q)))?;
            }
        }
        let finest = *a.levels.end();
        writeln!(out, "errors at level {finest}")?;
        for kind in &a.rules.0 {
            if let Some(row) = report.row(finest, *kind) {
                write!(out, "  {}-pt", kind.num_points())?;
                for q in Quantity::ALL {
                    write!(out, "  {} {:.3e}", q.name(), row.errors.get(q))?;
                }
                writeln!(out)?;
            }
        }
        dir.report(out)
    };
    summary().map_err(io_in(&a.out.out))
}
