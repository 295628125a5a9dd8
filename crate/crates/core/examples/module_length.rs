//! Certified lengths of R/I and F/M by truncation.

use icmod::modmat::{build_mie, colength_module_with, mu_module, PresMatrix, DEFAULT_TRUNC_CAP};
use icmod::staircase::MonomialIdeal;

fn main() {
    let i = MonomialIdeal::primary(&[(8, 0), (6, 1), (3, 2), (2, 3), (1, 4), (0, 8)])
        .expect("m-primary");
    let rank_one =
        colength_module_with(&PresMatrix::from_ideal(&i), DEFAULT_TRUNC_CAP).expect("finite");
    println!(
        "l(R/I) = {} (lattice count {}), stable from level {}",
        rank_one.length,
        i.colength(),
        rank_one.level
    );
    for e in 2..=i.r() {
        let p = build_mie(&i, e).expect("admissible rank");
        let cert = colength_module_with(&p, DEFAULT_TRUNC_CAP).expect("finite");
        println!(
            "e={e}: l(F/M) = {:>2}  mu(M) = {:>2}  attempts {:?}",
            cert.length,
            mu_module(&p).expect("finite"),
            cert.attempts
        );
    }
}
