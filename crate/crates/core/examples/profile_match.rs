//! Mean-curvature profiles: pole stripping, the aliasing between one
//! kappa = 2 branch and two kappa = 1 branches, power-sum cascades and
//! Newton recovery of the principal curvatures.

use std::f64::consts::FRAC_PI_2;

use curvadapt::isoparametric::{self, ProfileSystem};
use curvadapt::newton;
use curvadapt::tube::{CurvatureBranch, PcSystem};

fn system(label: &str, branches: &[(f64, f64, u32)]) -> curvadapt::Result<ProfileSystem> {
    let b = branches
        .iter()
        .map(|&(k, th, m)| CurvatureBranch::compact(k, th, m))
        .collect::<curvadapt::Result<Vec<_>>>()?;
    Ok(ProfileSystem::new(label, PcSystem::from_branches(b)))
}

fn main() -> curvadapt::Result<()> {
    let x = 0.4;
    let p = system("p", &[(2.0, 2.0 * x, 3), (1.0, 1.1, 2)])?;
    let q = system("q", &[(1.0, 1.1, 2), (1.0, x, 3), (1.0, x + FRAC_PI_2, 3)])?;
    let r = system("r", &[(2.0, 2.0 * x + 0.01, 3), (1.0, 1.1, 2)])?;

    for (a, b) in [(&p, &q), (&p, &r)] {
        let w = isoparametric::default_window(&[a, b]);
        let cert = isoparametric::profiles_equivalent(a, b, w)?;
        println!(
            "{} vs {}: {:?}, multisets equal: {}",
            a.label,
            b.label,
            cert.verdict,
            isoparametric::branch_multisets_equal(a, b)
        );
    }
    let family = vec![p.clone(), q.clone()];
    println!(
        "with kappa data: {:?}",
        isoparametric::isoparametric_verdict(&family, true)?.verdict
    );

    let t = 0.1;
    let residuals = isoparametric::power_sum_cascade(&p, 5, t)?;
    let shown: Vec<String> = residuals.iter().map(|r| format!("{r:.1e}")).collect();
    println!("cascade residuals at t = {t}: {}", shown.join(", "));

    let values: Vec<f64> = p
        .branches()
        .iter()
        .flat_map(|b| std::iter::repeat_n(b.evolve(t).unwrap(), b.multiplicity as usize))
        .collect();
    let sums = newton::power_sums(&values, values.len());
    println!(
        "recovered {:?}",
        newton::newton_recover(&sums, values.len())?
    );
    Ok(())
}
