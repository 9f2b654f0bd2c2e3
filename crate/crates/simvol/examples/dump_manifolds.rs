//! Writes the built-in test manifolds as `.dcx` documents.
//!
//! Usage: `cargo run -p simvol --example dump_manifolds -- <output-dir>`

use simvol::complex::builtin;

fn main() {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "manifolds".to_string());
    std::fs::create_dir_all(&dir).expect("create output directory");
    let samples = [
        ("torus", builtin::torus()),
        ("genus2", builtin::genus_surface(2)),
        ("rp2", builtin::real_projective_plane()),
        ("tetrahedron", builtin::tetrahedron_boundary()),
        ("sphere3", builtin::three_sphere()),
        ("t3", builtin::three_torus()),
    ];
    for (stem, complex) in samples {
        let path = format!("{dir}/{stem}.dcx");
        std::fs::write(&path, format!("{}\n", complex.to_json_string())).expect("write document");
        println!("wrote {path}");
    }
}
