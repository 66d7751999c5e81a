//! Hopf eigenvalues of the Grassmannian model as the Kaehler angle varies.

use curvadapt::grassmannian::{self, StructureBundle};

fn main() -> curvadapt::Result<()> {
    let bundle = StructureBundle::quaternionic_model(2)?;
    println!("structure residual {:.1e}", bundle.verify().max());
    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10}",
        "alpha", "mu1", "mu2", "ratio", "expected"
    );
    for k in 1..10 {
        let alpha = 0.15 * k as f64;
        let xi = grassmannian::normal_with_alpha(&bundle, alpha)?;
        let h = grassmannian::hopf_eigenvalues(&xi, &bundle)?;
        println!(
            "{:>6.3} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            h.alpha, h.eigenvalue_x1, h.eigenvalue_x2, h.ratio, h.ratio_expected
        );
    }
    println!(
        "X2 eigenvalue at alpha = pi/2: {}",
        grassmannian::equal_angle_x2_eigenvalue(&bundle)?
    );
    Ok(())
}
