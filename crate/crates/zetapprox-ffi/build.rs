use std::env;
use std::fs;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let config = cbindgen::Config::from_file(crate_dir.join("cbindgen.toml"))
        .expect("cbindgen.toml is readable");
    let header = match cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
    {
        Ok(bindings) => {
            let mut out = Vec::new();
            bindings.write(&mut out);
            String::from_utf8(out).expect("header is utf-8")
        }
        // Keep the committed header usable even when generation fails (for
        // example during `cargo vendor` without the full toolchain).
        Err(err) => {
            println!("cargo:warning=cbindgen failed: {err}");
            return;
        }
    };

    let include = crate_dir.join("include");
    fs::create_dir_all(&include).expect("include dir");
    let target = include.join("zetapprox.h");
    let stale = fs::read_to_string(&target).map(|old| old != header).unwrap_or(true);
    if stale {
        fs::write(&target, header).expect("write header");
    }
}
