//! Writes the shipped instance files: `cargo run --example export_instances -- instances`.

use std::path::PathBuf;

use qfb_core::homogeneous::torus_definition;
use qfb_core::instance::Instance;
use qfb_core::linebundle::LineSpec;

fn main() -> qfb_core::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "instances".into()));
    let defs = [
        LineSpec::point(Some("2"), Some("1")).definition()?,
        LineSpec::quantum_torus(Some("2"), Some("3/5+4/5 i"), Some("1")).definition()?,
        torus_definition(),
    ];
    for def in defs {
        let inst = Instance::load(def)?;
        let path = dir.join(format!("{}.json", inst.name()));
        std::fs::write(&path, inst.to_json() + "\n").map_err(|e| qfb_core::Error::Config(e.to_string()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
