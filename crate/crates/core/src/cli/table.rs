use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn render(&self, out: &mut String) {
        match self {
            Cell::Int(v) => write!(out, "{v}").unwrap(),
            Cell::Real(v) => write_real(out, *v),
            Cell::Text(s) => out.push_str(s),
            Cell::Bool(b) => out.push_str(if *b { "pass" } else { "fail" }),
        }
    }
}

/// Seventeen significant digits, enough to round-trip any double.
pub fn write_real(out: &mut String, v: f64) {
    if v.is_finite() {
        write!(out, "{v:.16e}").unwrap();
    } else {
        write!(out, "{v}").unwrap();
    }
}

/// Named columns with one row per record. The header is always emitted.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultTable {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl ResultTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "ragged table row");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[j]).collect())
    }

    /// Comma-separated, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                cell.render(&mut out);
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only() {
        let t = ResultTable::new(["n", "E_n"]);
        assert_eq!(t.to_csv(), "n,E_n\n");
    }

    #[test]
    fn seventeen_digits() {
        let mut t = ResultTable::new(["x", "ok"]);
        t.push(vec![Cell::Real(0.1), Cell::Bool(true)]);
        let csv = t.to_csv();
        assert_eq!(csv, "x,ok\n1.0000000000000001e-1,pass\n");
        let back: f64 = csv.lines().nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
        assert_eq!(back, 0.1);
    }
}
