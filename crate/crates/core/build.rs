fn main() {
    let target = std::env::var("TARGET").unwrap_or_default();
    let profile = std::env::var("PROFILE").unwrap_or_default();
    println!("cargo:rustc-env=INTERPOL_BUILD_TARGET={}", target);
    println!("cargo:rustc-env=INTERPOL_BUILD_PROFILE={}", profile);
    println!("cargo:rerun-if-changed=build.rs");
}
