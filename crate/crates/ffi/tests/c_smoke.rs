//! Compiles and runs a small C program against the generated header and the
//! static library, proving the ABI end to end.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include "drgdesc.h"
#include <stdio.h>
#include <string.h>

int main(void) {
    int64_t params[2] = {3, 2};
    struct DrgGraph *g = NULL;
    enum DrgStatus st = drg_graph_new_family("hamming", params, 2, &g);
    if (st != DrgStatus_Ok) return 1;
    if (drg_graph_vertex_count(g) != 8) return 2;
    if (drg_graph_diameter(g) != 3) return 3;

    char *json = NULL;
    st = drg_descendents_json(g, NULL, 0, 1, &json);
    if (st != DrgStatus_Ok) return 4;
    if (strstr(json, "\"count\": 27") == NULL) return 5;
    drg_string_free(json);

    st = drg_analyze_json(g, &json);
    if (st != DrgStatus_Ok) return 6;
    if (strstr(json, "\"schema\": \"drgdesc/1\"") == NULL) return 7;
    drg_string_free(json);
    drg_graph_free(g);

    /* error path: budget exceeded */
    int64_t big[2] = {99, 3};
    st = drg_graph_new_family("johnson", big, 2, &g);
    if (st != DrgStatus_BudgetExceeded) return 8;
    char *msg = drg_last_error_message();
    if (msg == NULL || strlen(msg) == 0) return 9;
    drg_string_free(msg);

    printf("c smoke ok\n");
    return 0;
}
"#;

fn workspace_root() -> PathBuf {
    let mut dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    dir.pop(); // crates/
    dir.pop(); // workspace root
    dir
}

#[test]
fn c_program_links_and_runs() {
    let root = workspace_root();
    let ffi_dir = root.join("crates").join("ffi");

    // make sure the staticlib artifact exists
    let build = Command::new(env!("CARGO"))
        .args(["build", "-p", "drgdesc-ffi"])
        .current_dir(&root)
        .output()
        .expect("cargo build");
    assert!(
        build.status.success(),
        "staticlib build failed: {}",
        String::from_utf8_lossy(&build.stderr)
    );
    let staticlib = root.join("target").join("debug").join("libdrgdesc_ffi.a");
    assert!(staticlib.exists(), "missing {}", staticlib.display());

    let work = std::env::temp_dir().join(format!("drgdesc-csmoke-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("smoke.c");
    let exe = work.join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();

    let compile = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(ffi_dir.join("include"))
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .output()
        .expect("cc runs");
    assert!(
        compile.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&exe).output().expect("smoke binary runs");
    assert!(
        run.status.success(),
        "smoke exited {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    assert!(String::from_utf8_lossy(&run.stdout).contains("c smoke ok"));
    std::fs::remove_dir_all(&work).ok();
}
