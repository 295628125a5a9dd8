//! Multiplicities by area and by random reductions, and the
//! multiplicity-length identity.

use icmod::modmat::build_mie;
use icmod::multiplicity::{check_km, mult_ideal_area, mult_ideal_reduction, mult_module, Sampling};
use icmod::staircase::MonomialIdeal;

fn main() {
    let i = MonomialIdeal::primary(&[(8, 0), (6, 1), (3, 2), (2, 3), (1, 4), (0, 8)])
        .expect("m-primary");
    let s = Sampling::new(4, 7);
    let area = mult_ideal_area(&i).expect("m-primary");
    let red = mult_ideal_reduction(&i, s).expect("certified");
    println!(
        "e(I): area {area}, reduction {} (trials {:?})",
        red.value, red.values
    );
    for e in 2..=4 {
        let p = build_mie(&i, e).expect("admissible rank");
        let m = mult_module(&p, s).expect("certified");
        let km = check_km(&p, s).expect("certified");
        println!(
            "e={e}: e(F/M) = {}  length gap {} multiplicity gap {} equal={}",
            m.value, km.lhs, km.rhs, km.equal
        );
    }
}
