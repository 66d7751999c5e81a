//! The signed multiplication table of the octonion basis and a spot check of
//! the composition property.

use curvadapt::octonion::{associator, fano_lines, MultiplicationTable, Octonion};
use curvadapt::sampling;

fn main() {
    let table = MultiplicationTable::canonical();
    println!("Fano lines: {:?}", fano_lines());
    for i in 0..8 {
        let row: Vec<String> = (0..8)
            .map(|j| {
                let p = table.get(i, j);
                format!("{}{}", if p.sign < 0 { '-' } else { '+' }, p.index)
            })
            .collect();
        println!("J{i}: {}", row.join(" "));
    }

    let mut rng = sampling::seeded(0);
    let a = sampling::gaussian_octonion(&mut rng);
    let b = sampling::gaussian_octonion(&mut rng);
    let c = sampling::gaussian_octonion(&mut rng);
    println!(
        "|ab| - |a||b| = {:.2e}",
        (a * b).norm() - a.norm() * b.norm()
    );
    println!("(a,a,b) = {:.2e}", associator(&a, &a, &b).max_abs());
    println!(
        "(a,b,c) = {:.3} (not associative)",
        associator(&a, &b, &c).norm()
    );
    println!("J1 J2 = {}", Octonion::basis(1) * Octonion::basis(2));
}
