//! Writes an SVG picture of a staircase and its Newton polygon.

use icmod::cli::render::render_svg;
use icmod::staircase::MonomialIdeal;

fn main() -> std::io::Result<()> {
    let i = MonomialIdeal::primary(&[(8, 0), (6, 1), (3, 2), (2, 3), (1, 4), (0, 8)])
        .expect("m-primary");
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "staircase.svg".into());
    std::fs::write(&path, render_svg(&i))?;
    println!("wrote {path}");
    Ok(())
}
