//! The presentation matrix of M(I; e) and its fitting ideal.

use icmod::modmat::{build_mie, closed_form_i, fitting_ideal};
use icmod::staircase::MonomialIdeal;

fn main() {
    let i = MonomialIdeal::primary(&[(8, 0), (6, 1), (3, 2), (2, 3), (1, 4), (0, 8)])
        .expect("m-primary");
    let e = 3;
    let p = build_mie(&i, e).expect("admissible rank");
    println!(
        "M({i}; {e}) is presented by a {}x{} matrix:",
        p.rank(),
        p.ncols()
    );
    for row in 0..p.rank() {
        let cells: Vec<String> = (0..p.ncols())
            .map(|c| format!("{:>6}", p.entry(row, c).to_string()))
            .collect();
        println!("  [{}]", cells.join(" "));
    }
    let fit = fitting_ideal(&p, e).expect("monomial fitting ideal");
    println!("I(M)        = {fit}");
    println!(
        "closed form = {}",
        closed_form_i(&i, e).expect("admissible rank")
    );
}
