use std::ffi::{c_char, CStr, CString};
use std::ptr;

use transit_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    transit_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(transit_last_error()).to_str().unwrap().to_string()
}

const PATH: &str = "elements: 1 2 3 4\n1\n2\n3\n4\n1 2\n2 3\n3 4\n1 2 3 4\n";

#[test]
fn system_life_cycle() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(transit_system_parse(c(PATH).as_ptr(), &mut s), TransitStatus::Ok);
        let mut n = 0;
        assert_eq!(transit_system_elements(s, &mut n), TransitStatus::Ok);
        assert_eq!(n, 4);
        assert_eq!(transit_system_clusters(s, &mut n), TransitStatus::Ok);
        assert_eq!(n, 8);

        let mut holds = false;
        assert_eq!(transit_system_check(s, c("pyramidal").as_ptr(), &mut holds), TransitStatus::Ok);
        assert!(holds);
        assert_eq!(transit_system_check(s, c("UC").as_ptr(), &mut holds), TransitStatus::Ok);
        assert!(!holds);

        let mut order = ptr::null_mut();
        assert_eq!(transit_system_order(s, &mut order), TransitStatus::Ok);
        assert_eq!(take(order), "1 2 3 4");

        let mut text = ptr::null_mut();
        assert_eq!(transit_system_emit(s, &mut text), TransitStatus::Ok);
        let emitted = take(text);
        let mut again = ptr::null_mut();
        assert_eq!(transit_system_parse(c(&emitted).as_ptr(), &mut again), TransitStatus::Ok);

        let mut r = ptr::null_mut();
        assert_eq!(transit_system_canonical(s, &mut r), TransitStatus::Ok);
        assert_eq!(transit_function_check(r, c("m").as_ptr(), &mut holds), TransitStatus::Ok);
        assert!(holds);
        assert_eq!(transit_function_check(r, c("uc").as_ptr(), &mut holds), TransitStatus::Ok);
        assert!(!holds);
        let mut back = ptr::null_mut();
        assert_eq!(transit_function_sets(r, &mut back), TransitStatus::Ok);
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        transit_system_emit(back, &mut a);
        transit_system_emit(s, &mut b);
        assert_eq!(take(a), take(b));

        let mut closed = ptr::null_mut();
        assert_eq!(transit_system_union_closure(s, &mut closed), TransitStatus::Ok);
        assert_eq!(transit_system_check(closed, c("UC").as_ptr(), &mut holds), TransitStatus::Ok);
        assert!(holds);

        for h in [s, again, back, closed] {
            transit_system_free(h);
        }
        transit_function_free(r);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(transit_system_parse(c("elements: x y\nx q\n").as_ptr(), &mut s), TransitStatus::Parse);
        assert!(last_error().contains("`q`"));
        assert!(s.is_null());

        assert_eq!(transit_system_parse(ptr::null(), &mut s), TransitStatus::NullPointer);
        assert_eq!(
            transit_function_parse(c(PATH).as_ptr(), &mut ptr::null_mut()),
            TransitStatus::WrongKind
        );

        let not_t = c("elements: a b c\na b\n");
        assert_eq!(transit_system_parse(not_t.as_ptr(), &mut s), TransitStatus::Ok);
        assert_eq!(transit_system_canonical(s, &mut ptr::null_mut()), TransitStatus::NotTSystem);
        let mut holds = false;
        assert_eq!(transit_system_check(s, c("nope").as_ptr(), &mut holds), TransitStatus::UnknownTag);
        assert_eq!(transit_system_check(s, c("m").as_ptr(), &mut holds), TransitStatus::UnknownTag);
        let mut order = ptr::null_mut();
        assert_eq!(transit_system_order(s, &mut order), TransitStatus::Ok);
        assert!(!order.is_null());
        transit_string_free(order);
        transit_system_free(s);

        assert_eq!(transit_system_elements(ptr::null(), &mut 0), TransitStatus::NullPointer);
        // success clears the message
        assert_eq!(transit_system_parse(c(PATH).as_ptr(), &mut s), TransitStatus::Ok);
        assert!(transit_last_error().is_null());
        transit_system_free(s);
    }
}

#[test]
fn four_cycle_has_no_order() {
    unsafe {
        let mut s = ptr::null_mut();
        let src = c("elements: a b c d\na b\nb c\nc d\na d\n");
        assert_eq!(transit_system_parse(src.as_ptr(), &mut s), TransitStatus::Ok);
        let mut order = ptr::null_mut();
        assert_eq!(transit_system_order(s, &mut order), TransitStatus::Ok);
        assert!(order.is_null());
        transit_system_free(s);
    }
}

#[test]
fn transit_functions_and_reports() {
    unsafe {
        let src = c("elements: a b c\na b : a b\na c : a c\nb c : b c\n");
        let mut r = ptr::null_mut();
        assert_eq!(transit_function_parse(src.as_ptr(), &mut r), TransitStatus::Ok);
        let mut holds = true;
        assert_eq!(transit_function_check(r, c("w").as_ptr(), &mut holds), TransitStatus::Ok);
        assert!(!holds);
        assert_eq!(transit_function_check(r, c("wp").as_ptr(), &mut holds), TransitStatus::Ok);
        assert!(holds);
        let mut text = ptr::null_mut();
        assert_eq!(transit_function_emit(r, &mut text), TransitStatus::Ok);
        assert!(take(text).contains("a b : a b"));
        transit_function_free(r);

        let mut json = ptr::null_mut();
        assert_eq!(transit_report_json(src.as_ptr(), &mut json), TransitStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["schema_version"], 1);
        let w = v["checks"].as_array().unwrap().iter().find(|c| c["tag"] == "w").unwrap();
        assert_eq!(w["witness"]["text"], "(a, b, c)");
    }
}

#[test]
fn json_input_and_version() {
    unsafe {
        let src = c(r#"{"elements": ["a", "b"], "sets": [["a"], ["b"], ["a", "b"]]}"#);
        let mut s = ptr::null_mut();
        assert_eq!(transit_system_parse(src.as_ptr(), &mut s), TransitStatus::Ok);
        transit_system_free(s);
        assert!(!CStr::from_ptr(transit_version()).to_str().unwrap().is_empty());
    }
}

#[test]
fn header_declares_the_interface() {
    let header = include_str!("../include/transit.h");
    for name in [
        "transit_system_parse",
        "transit_system_free",
        "transit_function_parse",
        "transit_system_check",
        "transit_system_order",
        "transit_report_json",
        "transit_string_free",
        "transit_last_error",
        "TRANSIT_STATUS_NOT_T_SYSTEM",
        "typedef struct TransitSetSystem TransitSetSystem",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
