//! Integral closedness and indecomposability verdicts for a few staircases.

use icmod::classify::classify_all;
use icmod::staircase::MonomialIdeal;

fn main() {
    let ideals = [
        vec![(8, 0), (6, 1), (3, 2), (2, 3), (1, 4), (0, 8)],
        vec![(5, 0), (4, 1), (3, 2), (2, 3), (0, 5)],
        vec![(4, 0), (2, 1), (1, 2), (0, 4)],
        vec![(6, 0), (4, 1), (2, 2), (0, 5)],
    ];
    for gens in &ideals {
        let i = MonomialIdeal::primary(gens).expect("m-primary");
        println!("{i}");
        for v in classify_all(&i) {
            let witness = v
                .witnesses
                .first()
                .map(|w| format!(" witness {w}"))
                .unwrap_or_default();
            println!(
                "  e={} closed={:<5} {}{witness} {:?}",
                v.e,
                v.integrally_closed,
                v.indecomposable.label(),
                v.notes
            );
        }
    }
}
