use std::ffi::{CStr, CString};
use std::ptr;

use sinr_diagram_ffi::*;

const NET: &str = r#"{"dim": 2, "alpha": 2.0, "beta": 1.0, "noise": 0.1,
    "stations": [{"id": "a", "pos": [0.0, 0.0], "power": 1.0},
                 {"id": "b", "pos": [2.0, 0.0], "power": 1.0}]}"#;

fn load() -> *mut SinrNetwork {
    let json = CString::new(NET).unwrap();
    let mut net = ptr::null_mut();
    assert_eq!(unsafe { sinr_network_from_json(json.as_ptr(), &mut net) }, SinrStatus::Ok);
    assert!(!net.is_null());
    net
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sinr_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn evaluate_through_handles() {
    let net = load();
    unsafe {
        let mut n = 0usize;
        assert_eq!(sinr_network_station_count(net, &mut n), SinrStatus::Ok);
        assert_eq!(n, 2);

        let p = [0.5, 0.0];
        let mut v = 0.0;
        assert_eq!(sinr_eval(net, 0, p.as_ptr(), 2, &mut v), SinrStatus::Ok);
        let expected = 4.0 / (1.0 / 2.25 + 0.1);
        assert!((v - expected).abs() < 1e-12);

        let mut heard = false;
        assert_eq!(sinr_is_heard(net, 0, p.as_ptr(), 2, &mut heard), SinrStatus::Ok);
        assert!(heard);

        let mut who = 0i64;
        let far = [50.0, 50.0];
        assert_eq!(sinr_heard_station(net, far.as_ptr(), 2, &mut who), SinrStatus::Ok);
        assert_eq!(who, -1);
        assert_eq!(sinr_heard_station(net, p.as_ptr(), 2, &mut who), SinrStatus::Ok);
        assert_eq!(who, 0);

        let at = [2.0, 0.0];
        assert_eq!(sinr_eval(net, 0, at.as_ptr(), 2, &mut v), SinrStatus::AtStation);
        assert_eq!(sinr_eval(net, 5, p.as_ptr(), 2, &mut v), SinrStatus::InvalidArgument);
        assert!(!last_error().is_empty());
        sinr_network_free(net);
    }
}

#[test]
fn qds_round_trip() {
    let net = load();
    unsafe {
        let mut q = ptr::null_mut();
        assert_eq!(sinr_qds_build(net, 0, 2, 0.1, 0.0, &mut q), SinrStatus::Ok);
        let mut tag = SinrTag::Question;
        assert_eq!(sinr_qds_query(q, 0.0, 0.0, &mut tag), SinrStatus::Ok);
        assert_eq!(tag, SinrTag::Plus);

        let mut buf = ptr::null_mut();
        let mut len = 0usize;
        assert_eq!(sinr_qds_serialize(q, &mut buf, &mut len), SinrStatus::Ok);
        assert!(len > 51);
        let mut back = ptr::null_mut();
        assert_eq!(sinr_qds_deserialize(buf, len, &mut back), SinrStatus::Ok);
        for (x, y) in [(0.0, 0.0), (0.4, 0.3), (1.0, 0.0), (2.0, 0.0), (-1.5, 0.7)] {
            let (mut a, mut b) = (SinrTag::Question, SinrTag::Question);
            assert_eq!(sinr_qds_query(q, x, y, &mut a), SinrStatus::Ok);
            assert_eq!(sinr_qds_query(back, x, y, &mut b), SinrStatus::Ok);
            assert_eq!(a, b);
        }

        // Truncated input is a format error, not a crash.
        let mut bad = ptr::null_mut();
        assert_eq!(sinr_qds_deserialize(buf, 10, &mut bad), SinrStatus::Format);
        assert!(bad.is_null());

        sinr_buffer_free(buf, len);
        sinr_qds_free(back);
        sinr_qds_free(q);
        assert_eq!(sinr_qds_build(net, 0, 9, 0.1, 0.0, &mut q), SinrStatus::InvalidArgument);
        sinr_network_free(net);
    }
}

#[test]
fn null_and_parse_errors() {
    unsafe {
        let mut net = ptr::null_mut();
        assert_eq!(sinr_network_from_json(ptr::null(), &mut net), SinrStatus::NullPointer);
        assert!(last_error().contains("null"));
        let bad = CString::new("{ nope").unwrap();
        assert_eq!(sinr_network_from_json(bad.as_ptr(), &mut net), SinrStatus::Parse);
        assert!(net.is_null());

        let mut v = 0.0;
        let p = [0.0, 1.0];
        assert_eq!(sinr_eval(ptr::null(), 0, p.as_ptr(), 2, &mut v), SinrStatus::NullPointer);
        let real = load();
        assert_eq!(sinr_eval(real, 0, ptr::null(), 2, &mut v), SinrStatus::NullPointer);
        assert_eq!(sinr_eval(real, 0, p.as_ptr(), 2, ptr::null_mut()), SinrStatus::NullPointer);
        let mut tag = SinrTag::Minus;
        assert_eq!(sinr_qds_query(ptr::null(), 0.0, 0.0, &mut tag), SinrStatus::NullPointer);
        sinr_network_free(real);
        sinr_network_free(ptr::null_mut());
        sinr_qds_free(ptr::null_mut());
        sinr_buffer_free(ptr::null_mut(), 0);
        assert!(!CStr::from_ptr(sinr_version()).to_bytes().is_empty());
    }
}
