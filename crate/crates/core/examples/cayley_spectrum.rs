//! Jacobi operators of the Cayley plane and its dual at a random unit normal,
//! with the adapted frame and the sectional-curvature range.

use curvadapt::cayley::{self, SpaceSign, TangentPair};
use curvadapt::sampling;

fn main() -> curvadapt::Result<()> {
    let mut rng = sampling::seeded(0);
    let xi = TangentPair::from_vector(&sampling::unit_vector(&mut rng, cayley::DIM))?;
    for sign in [SpaceSign::Compact, SpaceSign::Noncompact] {
        let spec = cayley::jacobi_spectrum(&xi, sign)?;
        let groups: Vec<String> = spec
            .summary()
            .iter()
            .map(|g| format!("{:+.6} x{}", g.value, g.multiplicity))
            .collect();
        println!(
            "{sign:?}: {} (residual {:.1e})",
            groups.join(", "),
            spec.residual
        );

        let frame = cayley::adapted_frame(&xi, sign)?;
        println!(
            "  adapted frame: gram {:.1e}, eigen {:.1e}",
            frame.gram_residual(),
            frame.eigen_residual(sign)
        );

        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for _ in 0..2000 {
            let x = TangentPair::from_vector(&sampling::gaussian_vector(&mut rng, cayley::DIM))?;
            let y = TangentPair::from_vector(&sampling::gaussian_vector(&mut rng, cayley::DIM))?;
            if let Ok(k) = cayley::sectional_curvature(&x, &y, sign) {
                lo = lo.min(k);
                hi = hi.max(k);
            }
        }
        println!("  sectional curvature sampled in [{lo:.4}, {hi:.4}]");
    }
    Ok(())
}
