use std::ffi::{CStr, CString};
use std::ptr;

use interpol_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    interpol_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let e = interpol_last_error();
    if e.is_null() {
        String::new()
    } else {
        CStr::from_ptr(e).to_str().unwrap().to_string()
    }
}

#[test]
fn ontology_round_trip_and_subsumption() {
    unsafe {
        let mut o = ptr::null_mut();
        assert_eq!(interpol_ontology_parse(c("A [= B. B [= C.").as_ptr(), &mut o), InterpolStatus::Ok);
        assert_eq!(interpol_ontology_len(o), 2);
        assert_eq!(take(interpol_ontology_render(o)), "A [= B.\nB [= C.\n");
        let mut holds = false;
        assert_eq!(interpol_subsumes(o, c("A").as_ptr(), c("C").as_ptr(), &mut holds), InterpolStatus::Ok);
        assert!(holds);
        assert_eq!(interpol_subsumes(o, c("C").as_ptr(), c("A").as_ptr(), &mut holds), InterpolStatus::Ok);
        assert!(!holds);
        assert!(interpol_last_error().is_null());
        interpol_ontology_free(o);
    }
}

#[test]
fn errors_are_codes_with_messages() {
    unsafe {
        let mut o = ptr::null_mut();
        assert_eq!(interpol_ontology_parse(c("A [=").as_ptr(), &mut o), InterpolStatus::Syntax);
        assert!(o.is_null());
        assert!(last_error().contains("syntax error"));
        assert_eq!(interpol_ontology_parse(ptr::null(), &mut o), InterpolStatus::InvalidArgument);
        let mut holds = false;
        assert_eq!(interpol_subsumes(ptr::null(), c("A").as_ptr(), c("B").as_ptr(), &mut holds), InterpolStatus::InvalidArgument);
        let bad = [0xffu8, 0];
        assert_eq!(interpol_ontology_parse(bad.as_ptr() as *const _, &mut o), InterpolStatus::InvalidArgument);
        // a later success clears the message
        assert_eq!(interpol_ontology_parse(c("A [= B.").as_ptr(), &mut o), InterpolStatus::Ok);
        assert!(interpol_last_error().is_null());
        interpol_ontology_free(o);
        interpol_ontology_free(ptr::null_mut());
        interpol_string_free(ptr::null_mut());
    }
}

#[test]
fn uniform_interpolant_handle() {
    unsafe {
        let mut o = ptr::null_mut();
        interpol_ontology_parse(c("A [= some r.(B and C). some r.(C and D) [= E.").as_ptr(), &mut o);
        let mut ui = ptr::null_mut();
        assert_eq!(interpol_uniform_interpolant(o, c("A,B,D,E,r").as_ptr(), ptr::null(), &mut ui), InterpolStatus::Ok);
        let mut want = ptr::null_mut();
        interpol_ontology_parse(c("A [= some r.B. A and all r.(not B or D) [= E.").as_ptr(), &mut want);
        let mut eq = false;
        assert_eq!(interpol_equivalent(ui, want, &mut eq), InterpolStatus::Ok);
        assert!(eq);
        assert_eq!(interpol_uniform_interpolant(o, c("A").as_ptr(), c("weird").as_ptr(), &mut ui), InterpolStatus::Precondition);
        for h in [o, ui, want] {
            interpol_ontology_free(h);
        }
    }
}

#[test]
fn craig_interpolants_and_definitions() {
    unsafe {
        let mut out = ptr::null_mut();
        let st = interpol_craig_interpolant(
            ptr::null(),
            ptr::null(),
            c("some child.top and all child.Doctor").as_ptr(),
            c("some child.(Doctor or Rich)").as_ptr(),
            ptr::null(),
            &mut out,
        );
        assert_eq!(st, InterpolStatus::Ok);
        assert_eq!(take(out), "some child.Doctor");
        let st = interpol_craig_interpolant(ptr::null(), ptr::null(), c("A").as_ptr(), c("B").as_ptr(), ptr::null(), &mut out);
        assert_eq!(st, InterpolStatus::NotEntailed);
        assert!(out.is_null());

        let mut o = ptr::null_mut();
        let family = "Parent = some hasChild.top. Parent = Father or Mother. Father [= Man. Mother [= Woman. Man [= not Woman.";
        interpol_ontology_parse(c(family).as_ptr(), &mut o);
        let st = interpol_explicit_definition(o, ptr::null(), c("Mother").as_ptr(), c("hasChild,Woman").as_ptr(), &mut out);
        assert_eq!(st, InterpolStatus::Ok);
        let d = take(out);
        let mut holds = false;
        interpol_subsumes(o, c(&d).as_ptr(), c("Woman and some hasChild.top").as_ptr(), &mut holds);
        assert!(holds, "{}", d);
        let st = interpol_explicit_definition(o, ptr::null(), c("Mother").as_ptr(), c("hasChild").as_ptr(), &mut out);
        assert_eq!(st, InterpolStatus::NoneExists);
        interpol_ontology_free(o);

        let mut exists = true;
        let c1 = c("{a} and some r.{a}");
        let c2 = c("not A or some r.A");
        assert_eq!(interpol_alco_interpolant_exists(ptr::null(), c1.as_ptr(), c2.as_ptr(), c("r").as_ptr(), &mut exists), InterpolStatus::Ok);
        assert!(!exists);
        assert_eq!(interpol_alco_interpolant_exists(ptr::null(), c1.as_ptr(), c2.as_ptr(), c("r,{a}").as_ptr(), &mut exists), InterpolStatus::Ok);
        assert!(exists);
    }
}

#[test]
fn programs() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(interpol_program_parse(c("a :- not b. b :- not c. e :- d. d :- a.").as_ptr(), &mut p), InterpolStatus::Ok);
        let (mut n, mut sets) = (0usize, ptr::null_mut());
        assert_eq!(interpol_answer_sets(p, &mut n, &mut sets), InterpolStatus::Ok);
        assert_eq!((n, take(sets)), (1, "b\n".to_string()));
        let mut f = ptr::null_mut();
        assert_eq!(interpol_forget_ht(p, c("d").as_ptr(), &mut f), InterpolStatus::Ok);
        let mut holds = false;
        assert_eq!(interpol_program_entails(p, f, InterpolRelation::Ht, &mut holds), InterpolStatus::Ok);
        assert!(holds);
        assert_eq!(interpol_is_uniform_interpolant(p, c("a,b,c,e").as_ptr(), f, InterpolRelation::Ht, &mut holds), InterpolStatus::Ok);
        assert!(holds);
        assert!(!take(interpol_program_render(f)).contains('d'));

        let mut choice = ptr::null_mut();
        let mut nn = ptr::null_mut();
        interpol_program_parse(c("a :- not b. b :- not a.").as_ptr(), &mut choice);
        interpol_program_parse(c("a :- not not a.").as_ptr(), &mut nn);
        interpol_is_uniform_interpolant(choice, c("a").as_ptr(), nn, InterpolRelation::Cautious, &mut holds);
        assert!(holds);
        interpol_is_uniform_interpolant(choice, c("a").as_ptr(), nn, InterpolRelation::Ht, &mut holds);
        assert!(!holds);
        assert_eq!(interpol_program_parse(c("a :- b").as_ptr(), &mut f), InterpolStatus::Syntax);
        for h in [p, f, choice, nn] {
            interpol_program_free(h);
        }
    }
}

#[test]
fn version_is_the_package_version() {
    let v = unsafe { CStr::from_ptr(interpol_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
