//! Drives the batch pipeline from code: an error scan over N written to a
//! temporary directory.

use eigenloc::pipeline::{run, RunConfig, Subcommand};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = RunConfig::from_json(
        r#"{
            "manifold": "sphere",
            "n": 3,
            "degrees": [25, 50, 100, 200],
            "target": {"kind": "bessel_sum", "n": 3, "m": 1, "radius": 1.0,
                       "terms": [{"coeff": [1.0], "center": [0.0, 0.0, 0.0]},
                                 {"coeff": [0.5], "center": [0.6, 0.0, 0.0]}]},
            "grid": {"radius": 1.0, "step": 0.1}
        }"#,
    )?;
    let out = std::env::temp_dir().join("eigenloc-pipeline-run");
    let summary = run(Subcommand::ErrorScan, &config, Some(&out))?;
    println!("wrote {:?} to {}", summary.files, out.display());
    print!("{}", std::fs::read_to_string(out.join("errors.csv"))?);
    Ok(())
}
