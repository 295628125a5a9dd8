//! Integral closure of a staircase via its Newton polygon.

use icmod::staircase::{integral_closure, is_complete, newton_vertices, MonomialIdeal};

fn main() {
    let i = MonomialIdeal::primary(&[(2, 0), (0, 3)]).expect("m-primary");
    let hull = newton_vertices(&i);
    let closure = integral_closure(&i);
    println!("I        = {i}");
    println!(
        "vertices = {:?}",
        hull.vertices
            .iter()
            .map(|&m| <(u32, u32)>::from(m))
            .collect::<Vec<_>>()
    );
    println!("closure  = {closure}");
    println!(
        "gap      = {:?}",
        i.closure_gap()
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
    );
    println!("colength {} -> {}", i.colength(), closure.colength());
    assert!(is_complete(&closure));
    assert_eq!(integral_closure(&closure), closure);
}
