use std::path::{Path, PathBuf};
use std::process::Command;

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/gridsat.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).expect("build script writes the header");
    for name in [
        "gs_last_error",
        "gs_cnf_parse",
        "gs_cnf_free",
        "gs_cnf_num_vars",
        "gs_cnf_num_clauses",
        "gs_solve",
        "gs_oracle",
        "gs_matrix_build",
        "gs_matrix_deserialize",
        "gs_matrix_free",
        "gs_matrix_serialize",
        "gs_string_free",
        "gs_matrix_check_structure",
        "gs_matrix_run",
        "typedef struct GsCnf GsCnf;",
        "typedef struct GsMatrix GsMatrix;",
        "GS_STATUS_OK = 0",
        "GS_VERDICT_SAT = 10",
        "GS_VARIANT_SQUARE = 3",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
}

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "gridsat.h"

int main(void) {
    GsCnf *cnf = NULL;
    if (gs_cnf_parse("p cnf 2 2\n1 2 0\n-1 0\n", &cnf) != GS_STATUS_OK) return 1;
    GsVerdict verdict;
    int32_t model[2];
    for (uint32_t v = GS_VARIANT_BASIC; v <= GS_VARIANT_SQUARE; v++) {
        if (gs_solve(cnf, v, &verdict, model, 2) != GS_STATUS_OK) return 2;
        if (verdict != GS_VERDICT_SAT || model[0] != -1 || model[1] != 2) return 3;
    }
    if (gs_solve(cnf, 42, &verdict, model, 2) != GS_STATUS_INVALID_ARGUMENT) return 4;
    if (strlen(gs_last_error()) == 0) return 5;

    GsMatrix *m = NULL, *fix = NULL;
    if (gs_matrix_build(cnf, &m) != GS_STATUS_OK) return 6;
    GsStats stats;
    if (gs_matrix_run(m, GS_VARIANT_BASIC, false, &stats, &fix) != GS_STATUS_OK) return 7;
    if (stats.decision != GS_DECISION_SAT_CLAIM || stats.box_updates != 2) return 8;
    size_t violations = 1;
    if (gs_matrix_check_structure(fix, &violations) != GS_STATUS_OK || violations != 0) return 9;
    char *text = gs_matrix_serialize(fix);
    printf("%s", text);
    gs_string_free(text);
    gs_matrix_free(fix);
    gs_matrix_free(m);
    gs_cnf_free(cnf);

    GsCnf *bad = NULL;
    if (gs_cnf_parse("p cnf 1 1\n0\n", &bad) != GS_STATUS_TRIVIALLY_UNSAT || bad != NULL) return 10;
    return 0;
}
"#;

/// Builds the static library into its own target directory. Test builds
/// do not produce the `staticlib` artifact.
fn static_library() -> PathBuf {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let target = manifest.join("../../target/c-api-test");
    let status = Command::new(env!("CARGO"))
        .args(["build", "--quiet", "--offline", "-p", "gridsat-ffi", "--target-dir"])
        .arg(&target)
        .current_dir(manifest)
        .status()
        .expect("cargo runs");
    assert!(status.success(), "building the static library failed");
    target.join("debug/libgridsat_ffi.a")
}

#[test]
fn c_program_links_and_runs() {
    let lib = static_library();
    assert!(lib.is_file(), "static library missing at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let exe = dir.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is installed");
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "smoke program failed");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("cm 2 4 2\n"), "{text}");
}
