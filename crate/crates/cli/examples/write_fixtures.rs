//! Regenerates the shipped fixture files:
//! `cargo run -p reebseq-cli --example write_fixtures [dir]`.

use std::path::PathBuf;

use reebseq_cli::files::fixture_files;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    std::fs::create_dir_all(&dir)?;
    for (name, text) in fixture_files() {
        std::fs::write(dir.join(&name), text)?;
        println!("wrote {}", dir.join(&name).display());
    }
    Ok(())
}
