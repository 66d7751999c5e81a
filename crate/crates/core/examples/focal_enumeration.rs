//! Finite enumeration of focal configurations with phases in multiples of
//! pi/4, and the catalog tubes the survivors match.

use curvadapt::theorem2;

fn main() -> curvadapt::Result<()> {
    let en = theorem2::theorem2_enumerate()?;
    println!("examined {} configurations", en.examined);
    for (reason, count) in &en.rejections {
        println!("  {reason:?}: {count}");
    }
    for a in &en.admissible {
        let c = a.configuration;
        let cores: Vec<String> = a
            .matches
            .iter()
            .map(|m| format!("{:?} at {:?}", m.core, m.side))
            .collect();
        println!(
            "g={} kappa2 {:?} kappa1 {:?} -> {} (flow residual {:.1e})",
            c.g,
            c.four,
            c.one,
            cores.join(", "),
            a.flow_residual
        );
    }
    println!("verdict {:?}", en.certificate.verdict);
    Ok(())
}
