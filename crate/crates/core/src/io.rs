//! Matrix Market and CSV writers.

use std::io::Write;

use crate::exact_arith::{to_decimal_string, MultiPoly, Rational, Ring};
use crate::tridiag::Tridiagonal;
use crate::Error;

/// Entry types that can be written as a Matrix Market `real` value.
pub trait MatrixMarketValue: Ring {
    /// Exact decimal text for the value.
    fn to_mm(&self) -> Result<String, Error>;
}

impl MatrixMarketValue for f64 {
    fn to_mm(&self) -> Result<String, Error> {
        if !self.is_finite() {
            return Err(Error::Usage(format!("cannot write non-finite value {self}")));
        }
        // Display for f64 is the shortest string that parses back to the
        // same bits.
        Ok(format!("{self}"))
    }
}

impl MatrixMarketValue for Rational {
    fn to_mm(&self) -> Result<String, Error> {
        to_decimal_string(self).ok_or_else(|| {
            Error::Usage(format!(
                "{self} has no finite decimal expansion; use numeric mode for Matrix Market output"
            ))
        })
    }
}

impl MatrixMarketValue for MultiPoly {
    fn to_mm(&self) -> Result<String, Error> {
        self.as_constant()
            .ok_or_else(|| Error::Usage("symbolic entries cannot be written as Matrix Market".into()))?
            .to_mm()
    }
}

/// Writes `m` as `coordinate real general` with 1-based indices, omitting
/// zero entries. Entries are listed column by column.
pub fn write_matrix_market<R: MatrixMarketValue, W: Write + ?Sized>(out: &mut W, m: &Tridiagonal<R>) -> Result<(), Error> {
    let size = m.order();
    let mut entries: Vec<(usize, usize, String)> = Vec::with_capacity(3 * size);
    for col in 0..size {
        let mut push = |row: usize, v: &R| -> Result<(), Error> {
            if !v.is_zero() {
                entries.push((row + 1, col + 1, v.to_mm()?));
            }
            Ok(())
        };
        if col > 0 {
            push(col - 1, &m.superdiag()[col - 1])?;
        }
        push(col, &m.diag()[col])?;
        if col + 1 < size {
            push(col + 1, &m.subdiag()[col])?;
        }
    }
    writeln!(out, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(out, "{size} {size} {}", entries.len())?;
    for (i, j, v) in entries {
        writeln!(out, "{i} {j} {v}")?;
    }
    Ok(())
}

/// Quotes a CSV field when it contains a delimiter, quote or line break.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_csv_rows<W: Write + ?Sized, S: AsRef<str>>(out: &mut W, rows: &[Vec<S>]) -> Result<(), Error> {
    for row in rows {
        let line: Vec<String> = row.iter().map(|s| csv_field(s.as_ref())).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use crate::families::clement;

    #[test]
    fn clement3_matrix_market() {
        let mut buf = Vec::new();
        write_matrix_market(&mut buf, &clement::<Rational>(3)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("%%MatrixMarket matrix coordinate real general"));
        assert_eq!(lines.next(), Some("4 4 6"));
        assert_eq!(lines.next(), Some("2 1 3"));
        assert_eq!(lines.count(), 5);
    }

    #[test]
    fn non_decimal_rationals_are_refused() {
        let m = Tridiagonal::new(vec![rat(1, 3)], vec![], vec![]).unwrap();
        assert!(write_matrix_market(&mut Vec::new(), &m).is_err());
        let m = Tridiagonal::new(vec![rat(-3, 8)], vec![], vec![]).unwrap();
        let mut buf = Vec::new();
        write_matrix_market(&mut buf, &m).unwrap();
        assert!(String::from_utf8(buf).unwrap().ends_with("1 1 -0.375\n"));
    }

    #[test]
    fn symbolic_entries_are_refused() {
        let m = Tridiagonal::new(vec![MultiPoly::var(crate::Var::X)], vec![], vec![]).unwrap();
        assert!(write_matrix_market(&mut Vec::new(), &m).is_err());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("-3"), "-3");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
