use super::ExperimentKind;

/// A CSV table with a versioned header comment and optional note lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub experiment: ExperimentKind,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Extra `# ` lines written after the version line.
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(experiment: ExperimentKind, header: &[&'static str]) -> Self {
        Table { experiment, header: header.to_vec(), rows: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| *h == name)
    }

    /// Cell `name` of row `row`.
    pub fn get(&self, row: usize, name: &str) -> Option<&str> {
        Some(self.rows.get(row)?[self.column(name)?].as_str())
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# weak-ham-lab v1 {}\n", self.experiment);
        for note in &self.notes {
            out.push_str("# ");
            out.push_str(note);
            out.push('\n');
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Formats values through `Display`, which round-trips floats exactly.
#[macro_export]
#[doc(hidden)]
macro_rules! row {
    ($($v:expr),* $(,)?) => {
        vec![$($v.to_string()),*]
    };
}

/// Per-trial rows as CSV under the same header convention.
pub fn records_csv(experiment: ExperimentKind, header: &[&'static str], rows: Vec<Vec<String>>) -> String {
    let mut t = Table::new(experiment, header);
    t.notes.push("per-trial records".to_string());
    t.rows = rows;
    t.to_csv()
}
