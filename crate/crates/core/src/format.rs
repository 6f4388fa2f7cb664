//! Shared pieces of the plain-text formats: number formatting and a
//! comment-aware record reader.

use crate::error::{ParseError, ParseErrorKind};

/// Formats a float with the shortest representation that round-trips.
/// Plain notation in `[1e-5, 1e16)`, scientific otherwise.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Iterates over non-empty lines with `#` comments removed, yielding
/// `(line_number, fields)` with 1-based line numbers.
pub(crate) struct Records<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
    last_line: usize,
}

impl<'a> Records<'a> {
    pub fn new(text: &'a str) -> Self {
        Records { lines: text.lines().enumerate(), last_line: 0 }
    }

    pub fn next_record(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.lines.by_ref() {
            let body = raw.split('#').next().unwrap_or("");
            let fields: Vec<&str> = body.split_whitespace().collect();
            if !fields.is_empty() {
                self.last_line = i + 1;
                return Some((i + 1, fields));
            }
        }
        None
    }

    pub fn expect_record(&mut self, expected: &'static str) -> Result<(usize, Vec<&'a str>), ParseError> {
        let after = self.last_line;
        self.next_record()
            .ok_or_else(|| ParseError::new(after + 1, ParseErrorKind::UnexpectedEof { expected }))
    }

    /// Reads `<keyword> <count>`.
    pub fn header(&mut self, keyword: &'static str) -> Result<(usize, usize), ParseError> {
        let (line, fields) = self.expect_record(keyword)?;
        if fields.len() != 2 || fields[0] != keyword {
            return Err(ParseError::new(line, ParseErrorKind::ExpectedHeader { keyword }));
        }
        let count = fields[1]
            .parse::<usize>()
            .map_err(|_| ParseError::new(line, ParseErrorKind::BadCount(fields[1].to_string())))?;
        Ok((line, count))
    }

    pub fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.next_record() {
            Some((line, _)) => Err(ParseError::new(line, ParseErrorKind::TrailingContent)),
            None => Ok(()),
        }
    }
}

pub(crate) fn check_arity(line: usize, fields: &[&str], expected: usize) -> Result<(), ParseError> {
    if fields.len() == expected {
        Ok(())
    } else {
        Err(ParseError::new(line, ParseErrorKind::FieldCount { expected, found: fields.len() }))
    }
}

pub(crate) fn parse_real(line: usize, s: &str) -> Result<f64, ParseError> {
    let v = s.parse::<f64>().map_err(|_| ParseError::new(line, ParseErrorKind::BadNumber(s.to_string())))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ParseError::new(line, ParseErrorKind::NonFinite(s.to_string())))
    }
}

/// Initial capacity for a declared record count; declared counts are not
/// trusted for allocation.
pub(crate) fn capacity_hint(count: usize) -> usize {
    count.min(1 << 16)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_round_trips() {
        for v in [0.0, 1.0, -0.5, 0.1, 1.0 / 3.0, 65536.0 / 99225.0, 1e-7, 3e20, -2.5e-300] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(fmt_f64(0.25), "0.25");
        assert_eq!(fmt_f64(1e-7), "1e-7");
        assert_eq!(fmt_f64(2.0), "2");
    }

    #[test]
    fn records_skip_comments() {
        let mut r = Records::new("# head\n\n  nodes 2 # trailing\nx");
        assert_eq!(r.next_record(), Some((3, vec!["nodes", "2"])));
        assert_eq!(r.next_record(), Some((4, vec!["x"])));
        assert_eq!(r.next_record(), None);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(parse_real(1, "nan").unwrap_err().kind, ParseErrorKind::NonFinite(_)));
        assert!(matches!(parse_real(1, "1e999").unwrap_err().kind, ParseErrorKind::NonFinite(_)));
        assert!(matches!(parse_real(1, "1,0").unwrap_err().kind, ParseErrorKind::BadNumber(_)));
    }
}
