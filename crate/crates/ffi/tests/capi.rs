use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use kernseq_ffi::*;

fn fixture(name: &str) -> CString {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.t"));
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn parse(text: &CStr) -> *mut KsRelation {
    let mut rel = ptr::null_mut();
    assert_eq!(unsafe { ks_relation_parse(text.as_ptr(), &mut rel) }, KsStatus::Ok);
    assert!(!rel.is_null());
    rel
}

fn last_error() -> String {
    let p = ks_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(ks_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn decide_ll_on_identity() {
    let rel = parse(&fixture("identity"));
    unsafe {
        assert_eq!(ks_relation_num_states(rel), 1);
        let mut eq = false;
        assert_eq!(ks_relation_is_equivalence(rel, &mut eq), KsStatus::Ok);
        assert!(eq);
        let mut verdict = ptr::null_mut();
        assert_eq!(ks_decide_ll(rel, &mut verdict), KsStatus::Ok);
        assert_eq!(ks_verdict_outcome(verdict), KsOutcome::Yes);
        assert_eq!(ks_verdict_reason(verdict), KsReason::None);
        assert_eq!(ks_verdict_witness_states(verdict), 1);
        let mut text = ptr::null_mut();
        assert_eq!(ks_verdict_witness_text(verdict, &mut text), KsStatus::Ok);
        let body = CStr::from_ptr(text).to_str().unwrap().to_owned();
        assert!(body.starts_with("kind sequential"));
        ks_string_free(text);
        ks_verdict_free(verdict);
        ks_relation_free(rel);
    }
}

#[test]
fn decide_lp_verdicts() {
    let cases = [
        ("even_a", 16, KsOutcome::Yes, KsReason::None),
        ("last_a", 16, KsOutcome::No, KsReason::InfiniteIndex),
        ("chain8", 4, KsOutcome::Unknown, KsReason::ClosureCapExhausted),
    ];
    for (name, cap, outcome, reason) in cases {
        let rel = parse(&fixture(name));
        unsafe {
            let mut verdict = ptr::null_mut();
            assert_eq!(ks_decide_lp(rel, cap, true, &mut verdict), KsStatus::Ok);
            assert_eq!(ks_verdict_outcome(verdict), outcome, "{name}");
            assert_eq!(ks_verdict_reason(verdict), reason, "{name}");
            if outcome != KsOutcome::Yes {
                let mut text = ptr::null_mut();
                assert_eq!(ks_verdict_witness_text(verdict, &mut text), KsStatus::NoWitness);
                assert!(text.is_null());
                assert_eq!(ks_verdict_witness_states(verdict), 0);
            }
            ks_verdict_free(verdict);
            ks_relation_free(rel);
        }
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut rel = ptr::null_mut();
        let bad = CString::new("kind letter-transducer\ninputs a\n").unwrap();
        assert_eq!(ks_relation_parse(bad.as_ptr(), &mut rel), KsStatus::Parse);
        assert!(rel.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(ks_relation_parse(ptr::null(), &mut rel), KsStatus::NullArgument);
        assert_eq!(ks_decide_ll(ptr::null(), ptr::null_mut()), KsStatus::NullArgument);

        let seq = CString::new("kind sequential\ninputs a\noutputs a\nstates q\ninitial q\nfinals q\nq a / a -> q\n")
            .unwrap();
        assert_eq!(ks_relation_parse(seq.as_ptr(), &mut rel), KsStatus::NotRelation);

        let canonical = parse(&fixture("last_a_canonical"));
        let mut verdict = ptr::null_mut();
        assert_eq!(ks_decide_ll(canonical, &mut verdict), KsStatus::InvalidInput);
        assert!(verdict.is_null());
        assert!(!last_error().is_empty());
        ks_relation_free(canonical);

        let id = parse(&fixture("identity"));
        assert!(ks_last_error().is_null());
        ks_relation_free(id);

        ks_relation_free(ptr::null_mut());
        ks_verdict_free(ptr::null_mut());
        ks_string_free(ptr::null_mut());
    }
}

/// Directory holding the libraries built for this test run.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = artifact_dir().join("libkernseq_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let source = dir.path().join("main.c");
    std::fs::write(&source, C_PROGRAM).unwrap();
    let exe = dir.path().join("main");
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&source)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/even_a.t");
    let out = Command::new(&exe).arg(&fixture).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ll 1 2\nlp 0 0 3\n");
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "kernseq.h"

static char buf[1 << 16];

int main(int argc, char **argv) {
    if (argc != 2) return 10;
    FILE *f = fopen(argv[1], "r");
    if (!f) return 11;
    size_t n = fread(buf, 1, sizeof buf - 1, f);
    buf[n] = 0;
    fclose(f);

    KsRelation *rel = NULL;
    if (ks_relation_parse(buf, &rel) != KS_STATUS_OK) return 12;
    KsVerdict *v = NULL;
    if (ks_decide_ll(rel, &v) != KS_STATUS_OK) return 13;
    printf("ll %d %d\n", (int)ks_verdict_outcome(v), (int)ks_verdict_reason(v));
    ks_verdict_free(v);
    if (ks_decide_lp(rel, 16, true, &v) != KS_STATUS_OK) return 14;
    printf("lp %d %d %zu\n", (int)ks_verdict_outcome(v), (int)ks_verdict_reason(v), ks_verdict_witness_states(v));
    char *text = NULL;
    if (ks_verdict_witness_text(v, &text) != KS_STATUS_OK) return 15;
    ks_string_free(text);
    ks_verdict_free(v);
    ks_relation_free(rel);
    return 0;
}
"#;
