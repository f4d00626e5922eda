//! Compiles and runs a small C program against the generated header and
//! the static library, proving the ABI works for non-Rust consumers.
//! Skips itself when no C compiler is available.

use std::path::{Path, PathBuf};
use std::process::Command;

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "gatesimp.h"

int main(void) {
    GatesimpGraph *g = NULL;
    if (gatesimp_graph_from_edge_list("0 1\n1 2\n2 3\n3 4\n", &g) != GATESIMP_STATUS_OK) {
        fprintf(stderr, "load: %s\n", gatesimp_last_error());
        return 1;
    }
    if (gatesimp_graph_vertex_count(g) != 5 || gatesimp_graph_edge_count(g) != 4) {
        return 2;
    }

    GatesimpGateSet *gates = NULL;
    if (gatesimp_discover_gates(g, 3, GATESIMP_METHOD_SC, true, &gates) != GATESIMP_STATUS_OK) {
        fprintf(stderr, "discover: %s\n", gatesimp_last_error());
        return 3;
    }
    if (gatesimp_gateset_size(gates) != 1) {
        return 4;
    }

    GatesimpGateGraph *gg = NULL;
    if (gatesimp_gategraph_build(g, gates, true, &gg) != GATESIMP_STATUS_OK) {
        return 5;
    }

    GatesimpQueryResult qr;
    if (gatesimp_query(g, gates, gg, 0, 4, &qr) != GATESIMP_STATUS_OK) {
        return 6;
    }
    if (qr.route != GATESIMP_ROUTE_VIA_GATES || qr.distance != 4 ||
        qr.witness_x != 2 || qr.witness_y != 2) {
        return 7;
    }

    bool pass = false;
    if (gatesimp_verify_cover(g, gates, &pass) != GATESIMP_STATUS_OK || !pass) {
        return 8;
    }

    gatesimp_gategraph_free(gg);
    gatesimp_gateset_free(gates);
    gatesimp_graph_free(g);
    printf("c smoke ok\n");
    return 0;
}
"#;

fn static_lib_path() -> Option<PathBuf> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let profile = if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    };
    let target_dir = std::env::var("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|_| manifest.ancestors().nth(2).unwrap().join("target"));
    let lib = target_dir.join(profile).join("libgatesimp_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    assert!(
        include.join("gatesimp.h").exists(),
        "header must be generated by the build script"
    );
    let Some(lib) = static_lib_path() else {
        eprintln!("skipping C smoke test: static library not found");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping C smoke test: no C compiler");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let compile = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .expect("run cc");
    assert!(
        compile.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );
    let run = Command::new(&bin).output().expect("run smoke binary");
    assert!(
        run.status.success(),
        "smoke binary exited {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "c smoke ok");
}
