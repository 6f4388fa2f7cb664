//! Plain-text mesh format.
//!
//! ```text
//! # comment
//! nodes 4
//! 0 0
//! 1 0
//! 1 1
//! 0 1
//! elements 1
//! 1 2 3 4
//! ```
//!
//! Element node indices are 1-based and listed counter-clockwise starting at
//! the bottom-left corner.

use std::io::{self, Write};

use super::validate::{self, Lines};
use super::RectMesh;
use crate::error::{Error, ParseError, ParseErrorKind};
use crate::format::{capacity_hint, check_arity, fmt_f64, parse_real, Records};

pub fn parse_mesh(text: &str) -> Result<RectMesh, Error> {
    let mut records = Records::new(text);

    let (_, n) = records.header("nodes")?;
    let mut nodes = Vec::with_capacity(capacity_hint(n));
    let mut node_lines = Vec::with_capacity(capacity_hint(n));
    for _ in 0..n {
        let (line, fields) = records.expect_record("node coordinates")?;
        check_arity(line, &fields, 2)?;
        nodes.push([parse_real(line, fields[0])?, parse_real(line, fields[1])?]);
        node_lines.push(line);
    }

    let (_, ne) = records.header("elements")?;
    let mut elements = Vec::with_capacity(capacity_hint(ne));
    let mut element_lines = Vec::with_capacity(capacity_hint(ne));
    for _ in 0..ne {
        let (line, fields) = records.expect_record("element node indices")?;
        check_arity(line, &fields, 4)?;
        let mut el = [0usize; 4];
        for (slot, s) in el.iter_mut().zip(&fields) {
            *slot = match s.parse::<usize>() {
                Ok(i) if i >= 1 => i - 1,
                _ => return Err(ParseError::new(line, ParseErrorKind::BadIndex(s.to_string())).into()),
            };
        }
        elements.push(el);
        element_lines.push(line);
    }
    records.expect_end()?;

    let lines = Lines { nodes: &node_lines, elements: &element_lines };
    Ok(validate::build(nodes, elements, Some(&lines))?)
}

pub fn write_mesh<W: Write>(mut w: W, mesh: &RectMesh) -> io::Result<()> {
    writeln!(w, "nodes {}", mesh.num_nodes())?;
    for p in mesh.nodes() {
        writeln!(w, "{} {}", fmt_f64(p[0]), fmt_f64(p[1]))?;
    }
    writeln!(w, "elements {}", mesh.num_elements())?;
    for el in mesh.elements() {
        writeln!(w, "{} {} {} {}", el[0] + 1, el[1] + 1, el[2] + 1, el[3] + 1)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{Domain, MeshError};

    const SQUARE: &str = "\
# level-1 mesh of (-1,1)^2, numbered column-major
nodes 9
-1 -1
-1 0
-1 1
0 -1
0 0
0 1
1 -1
1 0
1 1
elements 4
1 4 5 2
4 7 8 5
2 5 6 3
5 8 9 6
";

    #[test]
    fn parses_square_with_other_numbering() {
        let m = parse_mesh(SQUARE).unwrap();
        let u = RectMesh::uniform_level(Domain::symmetric_unit(), 1).unwrap();
        assert_eq!(m.num_nodes(), u.num_nodes());
        assert_eq!(m.num_elements(), u.num_elements());
        assert_eq!(m.size(), u.size());
        let mut a: Vec<_> = m.element_midpoints();
        let mut b: Vec<_> = u.element_midpoints();
        a.sort_by(|p, q| p.partial_cmp(q).unwrap());
        b.sort_by(|p, q| p.partial_cmp(q).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn write_then_parse() {
        let u = RectMesh::uniform(Domain::new(0.0, 3.0, -1.0, 0.5).unwrap(), 3, 4).unwrap();
        let mut buf = Vec::new();
        write_mesh(&mut buf, &u).unwrap();
        let m = parse_mesh(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(m.nodes(), u.nodes());
        assert_eq!(m.elements(), u.elements());
    }

    #[test]
    fn cyclic_permutation_reports_line() {
        let bad = SQUARE.replace("4 7 8 5", "7 8 5 4");
        match parse_mesh(&bad).unwrap_err() {
            Error::Mesh(MeshError::Orientation { element: 1, loc }) => assert_eq!(loc.0, Some(14)),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn syntax_errors() {
        let kind = |text: &str| match parse_mesh(text).unwrap_err() {
            Error::Parse(p) => (p.line, p.kind),
            e => panic!("unexpected {e}"),
        };
        assert!(matches!(kind(""), (1, ParseErrorKind::UnexpectedEof { .. })));
        assert!(matches!(kind("vertices 1"), (1, ParseErrorKind::ExpectedHeader { .. })));
        assert!(matches!(kind("nodes -1"), (1, ParseErrorKind::BadCount(_))));
        assert!(matches!(kind("nodes 1\n0 0 0"), (2, ParseErrorKind::FieldCount { .. })));
        assert!(matches!(kind("nodes 1\n0 zero"), (2, ParseErrorKind::BadNumber(_))));
        assert!(matches!(kind("nodes 1\n0 inf"), (2, ParseErrorKind::NonFinite(_))));
        assert!(matches!(kind("nodes 2\n0 0"), (3, ParseErrorKind::UnexpectedEof { .. })));
        let four = "nodes 4\n0 0\n1 0\n1 1\n0 1\n";
        assert!(matches!(kind(&format!("{four}elements 1\n0 1 2 3")), (7, ParseErrorKind::BadIndex(_))));
        assert!(matches!(
            kind(&format!("{four}elements 1\n1 2 3 4\n1 2 3 4")),
            (8, ParseErrorKind::TrailingContent)
        ));
        let err = parse_mesh(&format!("{four}elements 1\n1 2 3 9")).unwrap_err();
        assert!(matches!(
            err,
            Error::Mesh(MeshError::DanglingNode { node: 8, loc: crate::mesh::Loc(Some(7)), .. })
        ));
    }

    #[test]
    fn huge_declared_counts_fail_cleanly() {
        assert!(parse_mesh("nodes 18446744073709551615\n0 0").is_err());
    }
}
