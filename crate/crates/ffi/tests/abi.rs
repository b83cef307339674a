use std::ffi::CStr;
use std::process::Command;
use std::ptr;

use stplus_ffi::*;

fn field(p: u32) -> *mut StbField {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { stb_field_new(p, 1, &mut f) }, StbStatus::Ok);
    f
}

fn last_error() -> String {
    let e = stb_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_string_lossy().into_owned()
}

#[test]
fn field_lifecycle() {
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(stb_field_new(3, 2, &mut f), StbStatus::Ok);
        assert_eq!(stb_field_order(f), 9);
        stb_field_free(f);
        assert_eq!(stb_field_new(4, 1, &mut f), StbStatus::InvalidField);
        assert!(last_error().contains("GF(4^1)"));
        assert_eq!(stb_field_new(3, 1, ptr::null_mut()), StbStatus::NullPointer);
        assert_eq!(stb_field_order(ptr::null()), 0);
        stb_field_free(ptr::null_mut());
    }
}

#[test]
fn groups_and_classes() {
    let f = field(3);
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            stb_group_build(f, 4, StbFormType::Minus, StbGroupKind::SO, 0, &mut g),
            StbStatus::Ok
        );
        assert_eq!(stb_group_order(g), 720);
        let mut n = 0usize;
        assert_eq!(stb_group_class_count(g, &mut n), StbStatus::Ok);
        let brute = {
            let mut h = ptr::null_mut();
            assert_eq!(
                stb_group_build(f, 3, StbFormType::Odd, StbGroupKind::SO, 0, &mut h),
                StbStatus::Ok
            );
            let mut m = 0usize;
            assert_eq!(stb_group_class_count(h, &mut m), StbStatus::Ok);
            stb_group_free(h);
            m
        };
        // SO4-(3) is PSL2(9) x 2 and SO3(3) is S4
        assert_eq!((n, brute), (14, 5));
        stb_group_free(g);

        let mut sp = ptr::null_mut();
        assert_eq!(
            stb_group_build(f, 4, StbFormType::Odd, StbGroupKind::Sp, 0, &mut sp),
            StbStatus::Ok
        );
        assert_eq!(stb_group_order(sp), 51840);
        stb_group_free(sp);
        stb_field_free(f);
    }
}

#[test]
fn cap_and_bad_arguments() {
    let f = field(3);
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            stb_group_build(f, 5, StbFormType::Odd, StbGroupKind::SO, 1000, &mut g),
            StbStatus::OrderExceedsCap
        );
        assert!(last_error().contains("51840"));
        assert!(g.is_null());
        assert_eq!(
            stb_group_build(f, 4, StbFormType::Odd, StbGroupKind::SO, 0, &mut g),
            StbStatus::InvalidArgument
        );
        assert_eq!(
            stb_group_build(
                ptr::null(),
                3,
                StbFormType::Odd,
                StbGroupKind::SO,
                0,
                &mut g
            ),
            StbStatus::NullPointer
        );
        let mut n = 0usize;
        assert_eq!(
            stb_group_class_count(ptr::null(), &mut n),
            StbStatus::NullPointer
        );
        stb_field_free(f);
    }
}

#[test]
fn census_as_json() {
    let f = field(3);
    let mut g = ptr::null_mut();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(
            stb_group_build(f, 3, StbFormType::Odd, StbGroupKind::SO, 0, &mut g),
            StbStatus::Ok
        );
        assert_eq!(stb_census_json(g, &mut s), StbStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        stb_string_free(s);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["totals"]["predicted_norm_sum"], 4);
        assert_eq!(v["totals"]["match"], true);
        assert_eq!(v["dual"], "Sp2(3)");
        stb_group_free(g);

        let mut sp = ptr::null_mut();
        assert_eq!(
            stb_group_build(f, 2, StbFormType::Odd, StbGroupKind::Sp, 0, &mut sp),
            StbStatus::Ok
        );
        assert_eq!(stb_census_json(sp, &mut s), StbStatus::Unsupported);
        stb_group_free(sp);
        stb_field_free(f);
    }
}

#[test]
fn header_declares_the_abi() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/stplus.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "stb_last_error",
        "stb_field_new",
        "stb_field_free",
        "stb_group_build",
        "stb_group_order",
        "stb_group_class_count",
        "stb_group_free",
        "stb_census_json",
        "stb_string_free",
        "typedef struct StbGroup StbGroup",
    ] {
        assert!(text.contains(name), "{name}");
    }
    if let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", header])
        .output()
    {
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}
