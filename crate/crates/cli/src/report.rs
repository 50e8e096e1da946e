use clap::ValueEnum;
use pic2ha::pic2::Pic2;
use pic2ha::text::write_matrix;
use pic2ha::zlin::{FgAbPresentation, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable lines.
    Text,
    /// One `key=value` record per line.
    Records,
}

/// Accumulates standard output and diagnostics for one command.
pub struct Report {
    format: Format,
    out: String,
    err: String,
}

pub fn group(g: &FgAbPresentation) -> String {
    g.canonical().to_string()
}

fn matrix_record(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
            format!("[{}]", row.join(","))
        })
        .collect();
    format!("{}x{}:[{}]", m.rows(), m.cols(), rows.join(","))
}

impl Report {
    pub fn new(format: Format) -> Self {
        Report { format, out: String::new(), err: String::new() }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    /// `key = value` or `key=value`.
    pub fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        match self.format {
            Format::Text => self.out.push_str(&format!("{key} = {value}\n")),
            Format::Records => self.out.push_str(&format!("{key}={value}\n")),
        }
    }

    /// Both homotopy groups; one line in text mode, two records keyed `<key>.pi0`, `<key>.pi1`.
    pub fn pis(&mut self, label: &str, key: &str, p: &Pic2) {
        let (p0, p1) = (group(p.pi0()), group(p.pi1()));
        match self.format {
            Format::Text => self.out.push_str(&format!("{label}pi0 = {p0}, pi1 = {p1}\n")),
            Format::Records => {
                let dot = if key.is_empty() { "" } else { "." };
                self.out.push_str(&format!("{key}{dot}pi0={p0}\n{key}{dot}pi1={p1}\n"));
            }
        }
    }

    pub fn matrix(&mut self, key: &str, m: &IntMatrix) {
        match self.format {
            Format::Text => {
                self.out.push_str(key);
                self.out.push('\n');
                self.out.push_str(&write_matrix(m));
            }
            Format::Records => self.out.push_str(&format!("{key}={}\n", matrix_record(m))),
        }
    }

    /// Verbatim text, shown only in text mode.
    pub fn text(&mut self, block: &str) {
        if self.format == Format::Text {
            self.out.push_str(block);
            if !block.ends_with('\n') {
                self.out.push('\n');
            }
        }
    }

    /// A certificate line: `PASS <what>` / `FAIL <what>` or `<key>=PASS`.
    pub fn status(&mut self, key: &str, what: &str, pass: bool, detail: &str) {
        let word = if pass { "PASS" } else { "FAIL" };
        match self.format {
            Format::Text if detail.is_empty() => self.out.push_str(&format!("{word} {what}\n")),
            Format::Text => self.out.push_str(&format!("{word} {what}: {detail}\n")),
            Format::Records => self.out.push_str(&format!("{key}={word}\n")),
        }
    }

    /// Diagnostic on standard error; never part of the report.
    pub fn note(&mut self, msg: &str) {
        self.err.push_str(msg);
        self.err.push('\n');
    }

    pub fn finish(self) -> (String, String) {
        (self.out, self.err)
    }
}
