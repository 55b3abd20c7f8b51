//! Runs a small scenario sweep from an inline config and writes the CSV
//! tables to a directory (default `sweep-output`).

use std::path::PathBuf;

use co2_pathways::config::parse_config;
use co2_pathways::sweep::run_sweep;
use co2_pathways::table::write_to_dir;

const CONFIG: &str = r#"
goals_pgc = [300, 600]
growth_rates = [0.012, 0.024, 0.036]
pathway_kind = "both"
outputs = ["pathway", "burden", "delay", "power_law"]

[economy]
delta = 0.03
"#;

fn main() -> Result<(), co2_pathways::Error> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("sweep-output"));
    let config = parse_config(CONFIG)?;
    for table in run_sweep(&config)? {
        let path = write_to_dir(&table, &out)?;
        println!("{:>5} rows  {}", table.rows.len(), path.display());
    }
    Ok(())
}
