//! Deterministic table rendering.
//!
//! Numbers print in lowercase scientific notation with a fixed count of
//! significant digits, `.` decimal point, LF line endings, UTF-8, and no
//! trailing delimiters, so identical runs are byte-identical.

use crate::run::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

/// An ordered axis with equally long named value columns.
#[derive(Debug, Clone)]
pub struct Table {
    pub axis_name: String,
    pub axis_values: Vec<f64>,
    pub columns: Vec<Column>,
}

impl Table {
    /// Assembles a table from per-point rows, which must all have one value
    /// per column name. Row order follows the axis order.
    pub fn from_rows(
        axis_name: &str,
        axis_values: Vec<f64>,
        column_names: &[&str],
        rows: Vec<Vec<f64>>,
    ) -> Self {
        assert_eq!(axis_values.len(), rows.len());
        let mut columns: Vec<Column> = column_names
            .iter()
            .map(|name| Column {
                name: (*name).to_string(),
                values: Vec::with_capacity(rows.len()),
            })
            .collect();
        for row in rows {
            assert_eq!(row.len(), columns.len(), "ragged table row");
            for (column, value) in columns.iter_mut().zip(row) {
                column.values.push(value);
            }
        }
        Self {
            axis_name: axis_name.to_string(),
            axis_values,
            columns,
        }
    }

    pub fn render(&self, format: OutputFormat, precision: usize) -> Result<String, CliError> {
        if !(1..=17).contains(&precision) {
            return Err(CliError::invalid(format!(
                "precision must lie in [1, 17], got {precision}"
            )));
        }
        for value in self
            .axis_values
            .iter()
            .chain(self.columns.iter().flat_map(|c| c.values.iter()))
        {
            if !value.is_finite() {
                return Err(CliError::invalid(
                    "refusing to format a non-finite value".to_string(),
                ));
            }
        }
        Ok(match format {
            OutputFormat::Csv => self.render_csv(precision),
            OutputFormat::Json => self.render_json(precision),
        })
    }

    fn render_csv(&self, precision: usize) -> String {
        let mut out = String::new();
        out.push_str(&self.axis_name);
        for column in &self.columns {
            out.push(',');
            out.push_str(&column.name);
        }
        out.push('\n');
        for (row, axis) in self.axis_values.iter().enumerate() {
            out.push_str(&format_significant(*axis, precision));
            for column in &self.columns {
                out.push(',');
                out.push_str(&format_significant(column.values[row], precision));
            }
            out.push('\n');
        }
        out
    }

    fn render_json(&self, precision: usize) -> String {
        let join = |values: &[f64]| {
            values
                .iter()
                .map(|v| format_significant(*v, precision))
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = String::new();
        out.push_str("{\"axis\":{\"name\":\"");
        out.push_str(&self.axis_name);
        out.push_str("\",\"values\":[");
        out.push_str(&join(&self.axis_values));
        out.push_str("]},\"columns\":[");
        for (index, column) in self.columns.iter().enumerate() {
            if index > 0 {
                out.push(',');
            }
            out.push_str("{\"name\":\"");
            out.push_str(&column.name);
            out.push_str("\",\"values\":[");
            out.push_str(&join(&column.values));
            out.push_str("]}");
        }
        out.push_str("]}\n");
        out
    }
}

/// Lowercase scientific notation with exactly `digits` significant digits.
pub fn format_significant(value: f64, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), value)
}
