use std::ffi::{CStr, CString};
use std::ptr;

use treegrp_ffi::*;

unsafe fn take_string(p: *mut libc::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    tg_string_free(p);
    s
}

unsafe fn generator(d: u32, i: u32) -> *mut TgElement {
    let mut g = ptr::null_mut();
    assert_eq!(tg_generator(d, i, &mut g), TG_OK);
    g
}

#[test]
fn arithmetic_round_trip() {
    unsafe {
        let a0 = generator(3, 0);
        let a1 = generator(3, 1);
        let mut p = ptr::null_mut();
        assert_eq!(tg_compose(a0, a1, &mut p), TG_OK);
        let mut inv = ptr::null_mut();
        assert_eq!(tg_invert(p, &mut inv), TG_OK);
        let mut e = ptr::null_mut();
        assert_eq!(tg_compose(p, inv, &mut e), TG_OK);
        let mut id = ptr::null_mut();
        assert_eq!(tg_identity(3, &mut id), TG_OK);
        let mut same = false;
        assert_eq!(tg_equal(e, id, &mut same), TG_OK);
        assert!(same);

        let mut hex = ptr::null_mut();
        assert_eq!(tg_to_hex(p, &mut hex), TG_OK);
        let hex = take_string(hex);
        let c = CString::new(hex).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(tg_from_hex(c.as_ptr(), 3, &mut back), TG_OK);
        assert_eq!(tg_equal(back, p, &mut same), TG_OK);
        assert!(same);

        let mut needed = 0;
        assert_eq!(tg_encode(p, ptr::null_mut(), 0, &mut needed), TG_BUFFER_TOO_SMALL);
        let mut buf = vec![0u8; needed];
        assert_eq!(tg_encode(p, buf.as_mut_ptr(), buf.len(), &mut needed), TG_OK);
        let mut decoded = ptr::null_mut();
        assert_eq!(tg_decode(buf.as_ptr(), buf.len(), 3, &mut decoded), TG_OK);
        assert_eq!(tg_equal(decoded, p, &mut same), TG_OK);
        assert!(same);

        let w = CString::new("000").unwrap();
        let mut img = ptr::null_mut();
        assert_eq!(tg_apply(a1, w.as_ptr(), &mut img), TG_OK);
        assert_eq!(take_string(img), "010");

        let mut bit = 9u8;
        assert_eq!(tg_alpha(a1, 0b010, &mut bit), TG_OK);
        assert_eq!(bit, 1);
        assert_eq!(tg_alpha(a1, 0b101, &mut bit), TG_OK);
        assert_eq!(bit, 0);

        let mut comm = ptr::null_mut();
        assert_eq!(tg_commutator(a0, generator(3, 2), &mut comm), TG_OK);
        let mut depth = 0;
        assert_eq!(tg_depth(comm, &mut depth), TG_OK);
        assert_eq!(depth, 3);

        for h in [a0, a1, p, inv, e, id, back, decoded, comm] {
            tg_free(h);
        }
        tg_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(tg_generator(3, 3, &mut g), TG_INVALID_ARGUMENT);
        assert!(CStr::from_ptr(tg_last_error()).to_str().unwrap().contains("generator"));
        assert_eq!(tg_identity(0, &mut g), TG_INVALID_ARGUMENT);
        assert_eq!(tg_identity(2, ptr::null_mut()), TG_NULL_POINTER);
        assert_eq!(tg_invert(ptr::null(), &mut g), TG_NULL_POINTER);

        let a = generator(2, 0);
        let b = generator(3, 0);
        assert_eq!(tg_compose(a, b, &mut g), TG_DEPTH_MISMATCH);
        let bad = CString::new("zz").unwrap();
        assert_eq!(tg_from_hex(bad.as_ptr(), 2, &mut g), TG_INVALID_ARGUMENT);
        tg_free(a);
        tg_free(b);
    }
}

#[test]
fn dimension_and_classification() {
    unsafe {
        let (mut num, mut den) = (0, 0);
        assert_eq!(tg_pj_dimension(4, 0b1000, &mut num, &mut den), TG_OK);
        assert_eq!((num, den), (7, 8));
        assert_eq!(tg_pj_dimension(2, 0b01, &mut num, &mut den), TG_OK);
        assert_eq!((num, den), (0, 1));

        let mut json = ptr::null_mut();
        assert_eq!(tg_classify_json(3, false, &mut json), TG_OK);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["max_dimension_count"], 4);
        assert_eq!(v["rows"].as_array().unwrap().len(), 7);
    }
}
