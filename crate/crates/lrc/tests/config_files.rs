//! Keeps the shipped `configs/` directory in lockstep with the built-in
//! example catalog.
//!
//! Every distinct configuration text in the catalog is shipped as a file named
//! after the first entry that uses it (`ex3.3-naive` -> `ex3_3_naive.cfg`), so
//! `lrc build configs/<name>.cfg` reconstructs exactly what
//! `lrc reproduce <id>` rebuilds.  Run with `UPDATE_CONFIGS=1` to regenerate
//! the directory after editing the catalog.

use std::collections::BTreeMap;
use std::path::PathBuf;

use lrc::catalog::entries;
use lrc::config::Config;

fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn file_name_for(id: &str) -> String {
    let stem: String = id
        .chars()
        .map(|c| if c == '.' || c == '-' { '_' } else { c })
        .collect();
    format!("{stem}.cfg")
}

/// Filename -> config text, one file per distinct configuration (entries that
/// re-check the same build, such as the summary-row readings, share a file).
fn expected_files() -> BTreeMap<String, String> {
    let mut by_text: BTreeMap<String, String> = BTreeMap::new(); // text -> id
    let mut files = BTreeMap::new();
    for e in entries() {
        if by_text.contains_key(&e.config) {
            continue;
        }
        by_text.insert(e.config.clone(), e.id.clone());
        files.insert(file_name_for(&e.id), e.config.clone());
    }
    files
}

#[test]
fn shipped_config_files_match_the_catalog() {
    let dir = configs_dir();
    let expected = expected_files();

    if std::env::var_os("UPDATE_CONFIGS").is_some() {
        std::fs::create_dir_all(&dir).unwrap();
        for old in std::fs::read_dir(&dir).unwrap() {
            let old = old.unwrap().path();
            if old.extension().is_some_and(|e| e == "cfg") {
                std::fs::remove_file(old).unwrap();
            }
        }
        for (name, text) in &expected {
            std::fs::write(dir.join(name), text).unwrap();
        }
    }

    let mut on_disk = BTreeMap::new();
    for f in std::fs::read_dir(&dir).expect("configs/ directory is missing") {
        let path = f.unwrap().path();
        if path.extension().is_some_and(|e| e == "cfg") {
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            on_disk.insert(name, std::fs::read_to_string(&path).unwrap());
        }
    }

    let want: Vec<&String> = expected.keys().collect();
    let got: Vec<&String> = on_disk.keys().collect();
    assert_eq!(
        got, want,
        "configs/ file set differs from the catalog; rerun with UPDATE_CONFIGS=1"
    );
    for (name, text) in &expected {
        assert_eq!(
            &on_disk[name], text,
            "configs/{name} differs from the catalog text; rerun with UPDATE_CONFIGS=1"
        );
        Config::parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
