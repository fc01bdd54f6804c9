//! Writes every built-in fixture graph to `fixtures/<name>.json`.
//!
//! Run from the workspace root: `cargo run -p isospectral-cli --example export_fixtures`.

use isospectral::fixtures;
use isospectral_cli::format::GraphFile;

fn main() -> std::io::Result<()> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    std::fs::create_dir_all(&dir)?;
    for (name, g) in fixtures::all() {
        std::fs::write(dir.join(format!("{name}.json")), GraphFile::from_graph(&g).to_json())?;
    }
    Ok(())
}
