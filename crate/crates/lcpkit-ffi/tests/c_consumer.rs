//! Compiles and runs the C demo against the committed header and the
//! freshly built static library. Skips quietly when no C compiler is on
//! the path.

use std::path::PathBuf;
use std::process::Command;

fn find_cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|&cc| {
            Command::new(cc)
                .arg("--version")
                .output()
                .map(|o| o.status.success())
                .unwrap_or(false)
        })
        .map(|v| v as _)
}

#[test]
fn c_demo_builds_and_converges() {
    let Some(cc) = find_cc() else {
        eprintln!("skipping: no C compiler found");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // `cargo test` only links the rlib; build the staticlib artifact for
    // the active profile before compiling the demo against it
    let mut build = Command::new(env!("CARGO"));
    build
        .args(["build", "-p", "lcpkit-ffi"])
        .current_dir(&manifest);
    if !cfg!(debug_assertions) {
        build.arg("--release");
    }
    assert!(build.status().unwrap().success(), "staticlib build failed");

    // the test binary sits in target/<profile>/deps; the staticlib one up
    let mut lib_dir = std::env::current_exe().unwrap();
    lib_dir.pop();
    if lib_dir.ends_with("deps") {
        lib_dir.pop();
    }
    let staticlib = lib_dir.join("liblcpkit_ffi.a");
    assert!(
        staticlib.exists(),
        "staticlib missing at {}",
        staticlib.display()
    );

    let out_dir = tempfile::tempdir().unwrap();
    let exe = out_dir.path().join("demo");
    let status = Command::new(cc)
        .arg(manifest.join("examples/demo.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(staticlib)
        .args(["-lm", "-lpthread", "-ldl"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");

    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "demo exited nonzero");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("status=0 iterations=16"),
        "unexpected demo output: {text}"
    );
}
