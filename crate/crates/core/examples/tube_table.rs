//! Principal curvatures of tubes around the catalog cores, the minimal tube
//! radii, and the parallel flow of one tube onto another.

use std::f64::consts::PI;

use curvadapt::tube::{self, Ambient, Core, TubeDescriptor};

fn main() -> curvadapt::Result<()> {
    let r = PI / 8.0;
    for ambient in [Ambient::Op2, Ambient::Oh2] {
        for core in [Core::Point, Core::Line, Core::Hp2] {
            let rows = tube::tube_table(&TubeDescriptor::new(ambient, core, r))?;
            let cells: Vec<String> = rows
                .iter()
                .map(|x| format!("{}={:.6} x{}", x.label, x.value, x.multiplicity))
                .collect();
            println!("{ambient:?} {core:?} r=pi/8: {}", cells.join(", "));
        }
    }
    let horo = tube::tube_table(&TubeDescriptor::new(Ambient::Oh2, Core::Horosphere, 0.0))?;
    println!(
        "horosphere: {:?}",
        horo.iter()
            .map(|x| (x.value, x.multiplicity))
            .collect::<Vec<_>>()
    );

    for core in [Core::Point, Core::Line, Core::Hp2] {
        println!(
            "minimal {core:?} tube in OP2 at r = {:.12}",
            tube::minimal_tube_radius(Ambient::Op2, core)?
        );
    }

    // Flowing the r = pi/6 tube inward by pi/12 lands on the r = pi/12 tube.
    let sys = tube::tube_spectrum(&TubeDescriptor::new(Ambient::Op2, Core::Hp2, PI / 6.0))?;
    let target = tube::tube_table(&TubeDescriptor::new(Ambient::Op2, Core::Hp2, PI / 12.0))?;
    for (b, row) in sys.branches.iter().zip(&target) {
        println!(
            "{}: flowed {:.12}, direct {:.12}",
            row.label,
            b.evolve(PI / 12.0)?,
            row.value
        );
    }
    Ok(())
}
