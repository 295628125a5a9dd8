//! Unique factorization of a complete ideal into simple complete ideals.

use icmod::staircase::{is_simple, zariski_factor, MonomialIdeal};

fn main() {
    let i = MonomialIdeal::primary(&[(8, 0), (6, 1), (3, 2), (2, 3), (1, 4), (0, 8)])
        .expect("m-primary");
    let f = zariski_factor(&i).expect("complete");
    println!("I = {i}");
    for s in &f.factors {
        let simple = s.ideal();
        println!("  ({simple})^{}  simple={}", s.mult, is_simple(&simple));
    }
    assert_eq!(f.rebuild(), i);
    println!("product of factors reproduces I");
}
