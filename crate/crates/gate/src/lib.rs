//! Support for the acceptance gate in `tests/acceptance.rs`.

use std::path::PathBuf;
use std::process::Command;

/// Path of the `scod` binary in the target directory the running test was
/// built into. The binary is (re)built first so it matches the sources.
pub fn scod_binary() -> PathBuf {
    let exe = std::env::current_exe().expect("test executable path");
    // target/<profile>/deps/<test> -> target/<profile>/scod
    let dir = exe
        .parent()
        .and_then(|d| d.parent())
        .expect("test executable lives in target/<profile>/deps");
    let bin = dir.join(format!("scod{}", std::env::consts::EXE_SUFFIX));
    let status = Command::new(env!("CARGO"))
        .args(["build", "-q", "--profile", "test", "-p", "scod-cli", "--bin", "scod"])
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .status()
        .expect("cargo runs");
    assert!(status.success(), "building the scod binary failed");
    assert!(bin.exists(), "no scod binary at {}", bin.display());
    bin
}
