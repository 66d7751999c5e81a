//! Residual floors of the Grassmannian sweep for every constraint mode, with
//! the computed and the printed sign conventions.

use curvadapt::grassmannian::StructureBundle;
use curvadapt::theorem3::{
    equal_angle_certificate, parse_alpha_grid, theorem3_sweep, Constraint, SignConvention,
};

fn main() -> curvadapt::Result<()> {
    let bundle = StructureBundle::quaternionic_model(2)?;
    let grid = parse_alpha_grid("0.2:1.35:24")?;
    for signs in [SignConvention::Computed, SignConvention::Printed] {
        for constraint in [Constraint::Ajj, Constraint::Azz, Constraint::Ratio] {
            let r = theorem3_sweep(&grid, constraint, signs, &bundle)?;
            println!(
                "{signs:?} {constraint:?}: floor {:.6e} ({:?}), max ratio error {:.1e}",
                r.floor, r.certificate.verdict, r.max_ratio_error
            );
        }
    }
    let eq = equal_angle_certificate(&bundle)?;
    println!("equal angles: {:?}, residual {}", eq.verdict, eq.residual);
    Ok(())
}
