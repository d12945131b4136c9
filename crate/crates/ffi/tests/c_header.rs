//! Compiles a small C program against the generated header and the static
//! library. Skipped when no C compiler is on the path.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "unialg.h"

int main(void) {
    char *out = NULL;
    if (unialg_unify("?x . c", "d . ?y", &out) != UNIALG_STATUS_OK) return 1;
    if (strcmp(out, "{?x -> d, ?y -> c}") != 0) return 2;
    unialg_string_free(out);
    UnialgWiring *w = NULL;
    if (unialg_wiring_parse("(a <- b", &w) != UNIALG_STATUS_PARSE_ERROR) return 3;
    if (unialg_last_error_message() == NULL) return 4;
    if (unialg_wiring_parse("(a <- b) + (b <- a)", &w) != UNIALG_STATUS_OK) return 5;
    bool iso = false;
    if (unialg_wiring_is_isometric(w, &iso) != UNIALG_STATUS_OK || !iso) return 6;
    unialg_wiring_free(w);
    puts("ok");
    return 0;
}
"#;

#[test]
fn header_compiles_and_links() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler, skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libunialg_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
