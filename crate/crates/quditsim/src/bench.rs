//! Runs every dialect file of a directory once and tabulates load and
//! execution wall-clock times.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use quditsim_core::Backend;

use crate::cli::Strategy;
use crate::qasm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed(String),
}

impl Status {
    pub fn is_ok(&self) -> bool {
        matches!(self, Status::Ok)
    }

    pub fn text(&self) -> String {
        match self {
            Status::Ok => "ok".into(),
            Status::Failed(why) => format!("failed: {why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub name: String,
    pub width: Option<usize>,
    pub depth: Option<usize>,
    pub load_ms: Option<f64>,
    pub exec_ms: Option<f64>,
    pub status: Status,
}

/// `*.qasm` files of `dir`, sorted by file name.
pub fn bench_files(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "qasm") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn bench_file(path: &Path, backend: Backend, strategy: Strategy) -> BenchRow {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut row = BenchRow {
        name,
        width: None,
        depth: None,
        load_ms: None,
        exec_ms: None,
        status: Status::Ok,
    };
    let start = Instant::now();
    let loaded = fs::read_to_string(path)
        .map_err(|e| e.to_string())
        .and_then(|src| qasm::load(&src, backend).map_err(|e| e.to_string()));
    let mut circuit = match loaded {
        Ok(c) => c,
        Err(why) => {
            row.status = Status::Failed(why);
            return row;
        }
    };
    row.load_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    row.width = Some(circuit.width());
    row.depth = Some(circuit.depth());

    let start = Instant::now();
    let run = match strategy {
        Strategy::Reverse => circuit.run(),
        Strategy::Forward => circuit.execute_forward(),
    };
    match run {
        Ok(_) => row.exec_ms = Some(start.elapsed().as_secs_f64() * 1e3),
        Err(e) => row.status = Status::Failed(e.to_string()),
    }
    row
}

/// Benchmarks every file in `dir`; a failing file only marks its own row.
pub fn run_suite(dir: &Path, backend: Backend, strategy: Strategy) -> io::Result<Vec<BenchRow>> {
    Ok(bench_files(dir)?
        .iter()
        .map(|p| bench_file(p, backend, strategy))
        .collect())
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn ms(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.3}")).unwrap_or_default()
}

pub const CSV_HEADER: [&str; 6] = ["name", "width", "depth", "load_ms", "exec_ms", "status"];

pub fn write_csv<W: io::Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.name.clone(),
            cell(r.width),
            cell(r.depth),
            ms(r.load_ms),
            ms(r.exec_ms),
            r.status.text(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Column-aligned table for terminals.
pub fn text_table(rows: &[BenchRow]) -> String {
    let body: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            [
                r.name.clone(),
                cell(r.width),
                cell(r.depth),
                ms(r.load_ms),
                ms(r.exec_ms),
                r.status.text(),
            ]
        })
        .collect();
    let mut widths = CSV_HEADER.map(str::len);
    for row in &body {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let header = CSV_HEADER.map(String::from);
    for row in std::iter::once(&header).chain(&body) {
        let mut line = String::new();
        for (i, (c, w)) in row.iter().zip(widths).enumerate() {
            // text columns left aligned, numbers right aligned
            if i == 0 || i == 5 {
                write!(line, "{c:<w$}").unwrap();
            } else {
                write!(line, "{c:>w$}").unwrap();
            }
            if i < 5 {
                line.push_str("  ");
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_suite_runs() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/bench");
        let rows = run_suite(&dir, Backend::default(), Strategy::Reverse).unwrap();
        assert!(rows.len() >= 2);
        assert!(rows.iter().all(|r| r.status.is_ok()), "{rows:?}");
        let tof = rows.iter().find(|r| r.name == "toffoli_2_tof").unwrap();
        assert_eq!((tof.width, tof.depth), (Some(3), Some(3)));
    }

    #[test]
    fn table_shapes() {
        let rows = vec![
            BenchRow {
                name: "a".into(),
                width: Some(3),
                depth: Some(12),
                load_ms: Some(0.5),
                exec_ms: Some(1.25),
                status: Status::Ok,
            },
            BenchRow {
                name: "broken".into(),
                width: None,
                depth: None,
                load_ms: None,
                exec_ms: None,
                status: Status::Failed("line 2: missing .begin".into()),
            },
        ];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let csv_text = String::from_utf8(buf).unwrap();
        let mut lines = csv_text.lines();
        assert_eq!(lines.next(), Some("name,width,depth,load_ms,exec_ms,status"));
        assert_eq!(lines.next(), Some("a,3,12,0.500,1.250,ok"));
        assert_eq!(lines.next(), Some("broken,,,,,failed: line 2: missing .begin"));

        let table = text_table(&rows);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 3);
        // numeric columns are right aligned under their header
        assert_eq!(
            lines[0].find("width").unwrap() + "width".len(),
            lines[1].find('3').unwrap() + 1
        );
    }
}
