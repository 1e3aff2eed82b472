//! Writes the built-in permutative fixtures to `fixtures/<name>.json`.
//!
//! `cargo run -p factperm-core --example write_fixtures [dir]`

use std::path::PathBuf;

use factperm::fixtures::perm_fixtures;
use factperm::permcat::PermCategoryJson;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    for fx in perm_fixtures() {
        let json = serde_json::to_string_pretty(&PermCategoryJson::from_perm(&fx.perm)).expect("fixture serializes");
        let path = dir.join(format!("{}.json", fx.name));
        std::fs::write(&path, json + "\n")?;
        println!("{}", path.display());
    }
    Ok(())
}
