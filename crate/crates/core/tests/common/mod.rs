#![allow(dead_code)]

use std::path::{Path, PathBuf};

use tpg::AvailabilityMatrix;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn m(rows: &[&[u64]]) -> AvailabilityMatrix {
    AvailabilityMatrix::from_rows(rows).unwrap()
}

pub struct GoldenCase {
    pub name: String,
    pub exit: i32,
    pub args: Vec<String>,
}

impl GoldenCase {
    pub fn expected_stdout(&self) -> Vec<u8> {
        std::fs::read(fixtures().join("golden").join(format!("{}.out", self.name))).unwrap()
    }

    /// Runs the CLI in-process with `extra` prepended to the arguments.
    pub fn run(&self, extra: &[&str]) -> (i32, Vec<u8>) {
        let dir = fixtures();
        let mut argv: Vec<String> = vec!["tpg".into()];
        argv.extend(extra.iter().map(|s| s.to_string()));
        argv.extend(self.args.iter().map(|a| {
            if a.ends_with(".tpg") || a.ends_with(".cov") {
                dir.join(a).to_string_lossy().into_owned()
            } else {
                a.clone()
            }
        }));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = tpg::cli::run(argv, &mut out, &mut err);
        (code, out)
    }
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let table = std::fs::read_to_string(fixtures().join("golden/cases.txt")).unwrap();
    table
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| {
            let mut parts = l.splitn(3, '|');
            let name = parts.next().unwrap().to_string();
            let exit = parts.next().unwrap().parse().unwrap();
            let args = parts.next().unwrap().split(' ').map(String::from).collect();
            GoldenCase { name, exit, args }
        })
        .collect()
}
