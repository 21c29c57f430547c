use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
}

pub fn cases() -> Vec<Case> {
    let text = fs::read_to_string(golden_dir().join("cases.txt")).expect("cases.txt");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once(':').expect("name: args");
            Case {
                name: name.trim().to_string(),
                args: args.split_whitespace().map(str::to_string).collect(),
            }
        })
        .collect()
}

/// Stdout, stderr and exit code rendered as one transcript.
pub fn run_case(args: &[String]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_semiact"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let transcript = format!(
        "{}--- stderr\n{}--- exit {code}\n",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    (transcript, code)
}

/// Runs every case twice and compares with the stored transcripts. With
/// `SEMIACT_BLESS=1` the transcripts are rewritten instead.
pub fn check_golden() -> Result<(usize, Vec<i32>), Vec<String>> {
    let bless = std::env::var_os("SEMIACT_BLESS").is_some();
    let mut failures = Vec::new();
    let mut codes = Vec::new();
    let all = cases();
    for case in &all {
        let (first, code) = run_case(&case.args);
        let (second, _) = run_case(&case.args);
        codes.push(code);
        if first != second {
            failures.push(format!("{}: output differs between two runs", case.name));
        }
        let path = golden_dir().join(format!("{}.out", case.name));
        if bless {
            fs::write(&path, &first).expect("write golden");
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(expected) if expected == first => {}
            Ok(_) => failures.push(format!("{}: output differs from {}", case.name, path.display())),
            Err(_) => failures.push(format!("{}: missing {}", case.name, path.display())),
        }
    }
    if failures.is_empty() {
        Ok((all.len(), codes))
    } else {
        Err(failures)
    }
}
