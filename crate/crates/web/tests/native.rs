// Only success paths: building a JsValue needs a wasm host.

use blowup_web::{normalize, resolve, resolve_marked};

#[test]
fn whitney_fvar_through_the_bindings() {
    let r = resolve("x,y,z", "y^2 + x*z^2", "fvar").ok().unwrap();
    assert_eq!(r.steps(), 3);
    assert_eq!(r.trace().lines().count(), 3);
    assert!(r.json().contains("\"centers_log\""));
}

#[test]
fn marked_descent_through_the_bindings() {
    let r = resolve_marked("x,z", "z^6, x*z^3", 2).ok().unwrap();
    assert!(r.trace().starts_with("step 1: blow up [x, z]"));
}

#[test]
fn normalize_sorts_terms() {
    assert_eq!(normalize("x,y,z", "x*z^3+y^2").ok().unwrap(), "x*z^3 + y^2");
}
