//! Compiles and runs a small C program against the generated header and
//! the static library, proving the ABI end to end. Skips quietly when no
//! C compiler is available.

use std::path::PathBuf;
use std::process::Command;

const C_SOURCE: &str = r#"
#include <stdio.h>
#include <string.h>
#include "gorbit.h"

int main(void) {
    char *file_json = NULL;
    int code = gorbit_construct_json("{\"kind\":\"u2_sphere\",\"alpha\":\"2\"}", &file_json);
    if (code != GorbitStatus_Ok) return 10;

    gorbit_space_t *space = NULL;
    code = gorbit_space_parse((const uint8_t *)file_json, strlen(file_json), &space);
    gorbit_string_free(file_json);
    if (code != GorbitStatus_Ok) return 11;
    if (gorbit_space_dim(space) != 4) return 12;

    int verdict = -1;
    char *report = NULL;
    code = gorbit_go_check_json(space, 16, 0, &verdict, &report);
    if (code != GorbitStatus_Ok) return 13;
    if (verdict != GorbitVerdict_CertifiedNaturallyReductive) return 14;
    if (strstr(report, "certified_naturally_reductive") == NULL) return 15;
    gorbit_string_free(report);
    gorbit_space_free(space);
    printf("ok %s\n", gorbit_version());
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = manifest.join("include");
    let profile = if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    };
    let lib = manifest
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("target")
        .join(profile)
        .join("libgorbit_ffi.a");
    if !lib.exists() {
        // cargo test only builds the rlib; produce the staticlib now.
        let mut build = Command::new(env!("CARGO"));
        build.args(["build", "-p", "gorbit-ffi"]);
        if profile == "release" {
            build.arg("--release");
        }
        let status = build.status().expect("cargo build");
        assert!(status.success(), "building the static library failed");
    }
    assert!(lib.exists(), "{} still missing", lib.display());
    let cc = which_cc();
    let Some(cc) = cc else {
        eprintln!("skipping: no C compiler found");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, C_SOURCE).unwrap();
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(&include_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&bin)
        .status()
        .expect("compiler invocation");
    assert!(status.success(), "C compilation failed");
    let output = Command::new(&bin).output().expect("smoke binary runs");
    assert!(
        output.status.success(),
        "smoke binary exited with {:?}: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stdout)
    );
    assert!(String::from_utf8_lossy(&output.stdout).starts_with("ok "));
}

fn which_cc() -> Option<String> {
    for cand in ["cc", "gcc", "clang"] {
        if Command::new(cand)
            .arg("--version")
            .output()
            .map(|o| o.status.success())
            .unwrap_or(false)
        {
            return Some(cand.to_string());
        }
    }
    None
}
