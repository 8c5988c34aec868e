use std::ffi::{CStr, CString};
use std::ptr;

use stonework_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    sw_string_free(p);
    s
}

#[test]
fn boolean_algebra_through_handles() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(sw_poset_from_fixture(cstr("B(3)").as_ptr(), &mut p), SwStatus::Ok);
        let mut n = 0;
        assert_eq!(sw_poset_len(p, &mut n), SwStatus::Ok);
        assert_eq!(n, 8);
        assert_eq!(sw_poset_ultrafilter_count(p, &mut n), SwStatus::Ok);
        assert_eq!(n, 3);
        let mut holds = false;
        assert_eq!(sw_poset_relation_holds(p, SwRelationKind::Perp, 1, 2, &mut holds), SwStatus::Ok);
        assert!(holds);
        assert_eq!(sw_poset_relation_holds(p, SwRelationKind::Prec, 3, 1, &mut holds), SwStatus::Ok);
        assert!(!holds);
        assert_eq!(
            sw_poset_relation_holds(p, SwRelationKind::Leq, 8, 0, &mut holds),
            SwStatus::OutOfRange
        );
        let mut json = ptr::null_mut();
        assert_eq!(sw_poset_classify_json(p, &mut json), SwStatus::Ok);
        let text = take_string(json);
        assert!(text.contains("\"boolean\":true"));
        sw_poset_free(p);
    }
}

#[test]
fn poset_from_json_and_errors() {
    unsafe {
        let mut p = ptr::null_mut();
        let json = r#"{"kind":"poset","elements":["0","a"],"zero":"0","leq":[["0","0"],["a","a"],["0","a"]]}"#;
        assert_eq!(sw_poset_from_json(cstr(json).as_ptr(), &mut p), SwStatus::Ok);
        sw_poset_free(p);

        assert_eq!(sw_poset_from_json(cstr("{").as_ptr(), &mut p), SwStatus::InputError);
        let msg = CStr::from_ptr(sw_last_error()).to_str().unwrap();
        assert!(msg.contains("line"), "{msg}");

        assert_eq!(sw_poset_from_fixture(cstr("I(2)").as_ptr(), &mut p), SwStatus::WrongKind);
        assert_eq!(sw_poset_from_json(ptr::null(), &mut p), SwStatus::NullPointer);
        sw_poset_free(ptr::null_mut());
    }
}

#[test]
fn semigroup_duality() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(sw_semigroup_from_fixture(cstr("I(2)").as_ptr(), &mut s), SwStatus::Ok);
        let mut n = 0;
        assert_eq!(sw_semigroup_len(s, &mut n), SwStatus::Ok);
        assert_eq!(n, 7);
        let mut json = ptr::null_mut();
        let mut arrows = 0;
        assert_eq!(sw_semigroup_dualize_json(s, &mut arrows, &mut json), SwStatus::Ok);
        assert_eq!(arrows, 4);
        assert!(take_string(json).contains("groupoid"));
        assert_eq!(sw_semigroup_classify_json(s, &mut json), SwStatus::Ok);
        assert!(take_string(json).contains("\"basic_semigroup\":true"));
        sw_semigroup_free(s);

        assert_eq!(sw_semigroup_from_fixture(cstr("EvsSjoins").as_ptr(), &mut s), SwStatus::Ok);
        assert_eq!(sw_semigroup_dualize_json(s, ptr::null_mut(), &mut json), SwStatus::InputError);
        sw_semigroup_free(s);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/stonework.h")).unwrap();
    for name in [
        "SW_STATUS_OK",
        "SW_RELATION_KIND_PREC",
        "typedef struct SwPoset SwPoset",
        "sw_poset_from_json",
        "sw_semigroup_dualize_json",
        "sw_last_error",
        "sw_string_free",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
