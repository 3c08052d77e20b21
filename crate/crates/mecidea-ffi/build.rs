use std::path::Path;

// Regenerates the committed C header from the public surface of src/lib.rs.
// write_to_file leaves the file untouched when nothing changed, so clean
// checkouts do not show spurious diffs.
fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let header = Path::new(&crate_dir).join("include").join("mecidea.h");
    cbindgen::generate(&crate_dir)
        .expect("cbindgen parses the crate")
        .write_to_file(header);
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
