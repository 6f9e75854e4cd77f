//! Compiles and runs examples/demo.c against the generated header and the
//! static library. Skipped when no C compiler is installed.

use std::path::PathBuf;
use std::process::Command;

fn cc() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

#[test]
fn demo_program_runs() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<this test> -> target/<profile>
    let lib_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = lib_dir.join("libinterpol_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let exe = std::env::temp_dir().join(format!("interpol_demo_{}", std::process::id()));
    let status = Command::new(cc)
        .arg(crate_dir.join("examples/demo.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    std::fs::remove_file(&exe).ok();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("some child.Doctor"), "{}", text);
    assert!(text.contains("A [= B: no"));
    assert!(text.contains("1 answer set(s): b"));
    assert!(text.contains("syntax error reported: yes"));
}
