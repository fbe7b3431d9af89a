use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use mopls_ffi::*;

fn last_error() -> String {
    let p = mopls_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn construct_and_inspect() {
    unsafe {
        let mut sq = ptr::null_mut();
        assert_eq!(mopls_construct_min_mopls(9, &mut sq), MoplsStatus::Ok);
        assert_eq!(mopls_square_order(sq), 9);
        assert_eq!(mopls_square_layers(sq), 2);
        assert_eq!(mopls_square_filled(sq), 27);
        let mut maximal = false;
        assert_eq!(mopls_square_is_maximal(sq, &mut maximal), MoplsStatus::Ok);
        assert!(maximal);
        let (mut d, mut rho) = (0, 0);
        assert_eq!(mopls_code_min_distance(sq, &mut d), MoplsStatus::Ok);
        assert_eq!(mopls_code_covering_radius(sq, &mut rho), MoplsStatus::Ok);
        assert_eq!((d, rho), (3, 2));
        mopls_square_free(sq);
    }
}

#[test]
fn serialize_parse_round_trip() {
    unsafe {
        let mut sq = ptr::null_mut();
        assert_eq!(mopls_construct_min_mpls(7, &mut sq), MoplsStatus::Ok);
        for format in [MoplsFormat::Grid, MoplsFormat::Json] {
            let mut text = ptr::null_mut();
            assert_eq!(mopls_square_serialize(sq, format, &mut text), MoplsStatus::Ok);
            let mut back = ptr::null_mut();
            assert_eq!(mopls_square_parse(text, &mut back), MoplsStatus::Ok);
            assert_eq!(mopls_square_filled(back), 25);
            mopls_string_free(text);
            mopls_square_free(back);
        }
        mopls_square_free(sq);
    }
}

#[test]
fn build_by_insertion() {
    unsafe {
        let mut sq = ptr::null_mut();
        assert_eq!(mopls_square_new(3, 2, &mut sq), MoplsStatus::Ok);
        for i in 0..3u16 {
            let e = [i, i];
            assert_eq!(
                mopls_square_insert(sq, i as usize, i as usize, e.as_ptr(), 2),
                MoplsStatus::Ok
            );
        }
        let clash = [0u16, 1];
        assert_eq!(
            mopls_square_insert(sq, 0, 1, clash.as_ptr(), 2),
            MoplsStatus::InvalidInput
        );
        assert!(last_error().contains("layer 0"));
        let mut maximal = false;
        mopls_square_is_maximal(sq, &mut maximal);
        assert!(maximal);
        mopls_square_free(sq);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut sq = ptr::null_mut();
        assert_eq!(mopls_construct_min_mopls(6, &mut sq), MoplsStatus::Infeasible);
        assert!(sq.is_null());
        assert!(last_error().contains("order 2"));
        let blocks = [3usize, 3];
        assert_eq!(
            mopls_construct_k_mopls(7, 2, blocks.as_ptr(), 2, &mut sq),
            MoplsStatus::Infeasible
        );
        assert_eq!(mopls_construct_k_ols(2, 6, &mut sq), MoplsStatus::Infeasible);
        assert_eq!(mopls_construct_min_mopls(9, ptr::null_mut()), MoplsStatus::NullArgument);
        assert_eq!(mopls_square_parse(ptr::null(), &mut sq), MoplsStatus::NullArgument);
        let bad = CString::new("1 2\nx").unwrap();
        assert_eq!(mopls_square_parse(bad.as_ptr(), &mut sq), MoplsStatus::InvalidInput);
        assert_eq!(mopls_square_order(ptr::null()), 0);
        mopls_square_free(ptr::null_mut());
        mopls_string_free(ptr::null_mut());

        let mut single = ptr::null_mut();
        mopls_square_new(4, 2, &mut single);
        let e = [0u16, 0];
        mopls_square_insert(single, 0, 0, e.as_ptr(), 2);
        let mut d = 0;
        assert_eq!(mopls_code_min_distance(single, &mut d), MoplsStatus::Undefined);
        mopls_square_free(single);

        let mut big = ptr::null_mut();
        // 27^5 words is past the exact-computation limit
        let blocks = [9usize, 9, 9];
        assert_eq!(
            mopls_construct_k_mopls(27, 3, blocks.as_ptr(), 3, &mut big),
            MoplsStatus::Ok
        );
        let mut rho = 0;
        assert_eq!(mopls_code_covering_radius(big, &mut rho), MoplsStatus::ComputeLimit);
        mopls_square_free(big);
    }
}

#[test]
fn lower_bound_values() {
    assert_eq!(mopls_lower_bound(21), 147);
    assert_eq!(mopls_lower_bound(4), 6);
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/mopls.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "mopls_square_parse",
        "mopls_square_free",
        "mopls_code_covering_radius",
        "mopls_last_error_message",
        "MOPLS_STATUS_INFEASIBLE",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"mopls.h\"\nint main(void) { MoplsSquare *s = 0; size_t f = mopls_square_filled(s); return (int)f; }\n",
    )
    .unwrap();
    match Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header.parent().unwrap())
        .arg(&src)
        .status()
    {
        Ok(status) => assert!(status.success(), "header does not compile"),
        Err(e) => eprintln!("no C compiler available, skipping syntax check: {e}"),
    }
}
