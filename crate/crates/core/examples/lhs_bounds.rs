//! LHS bounds of linear steering functionals and the efficiency each needs.
use eprsteer::bounds::{
    critical_efficiency_scan, lhs_bound, NoDetectionPolicy, SettingEnsemble, WitnessSelector,
};

fn main() -> eprsteer::Result<()> {
    for name in [
        "orthogonal2",
        "orthogonal3",
        "octahedron",
        "cube",
        "icosahedron",
        "dodecahedron",
    ] {
        let Ok(ensemble) = SettingEnsemble::named(name) else {
            continue;
        };
        let bound = lhs_bound(&ensemble)?;
        let sel = WitnessSelector::LinearFunctional {
            ensemble: ensemble.clone(),
            policy: NoDetectionPolicy::DeclareZero,
        };
        let eta = critical_efficiency_scan(&sel, 1.0)?;
        println!(
            "{name:>13}: m = {:>2}, C_m = {:.5}, eta* = {}",
            ensemble.m(),
            bound.value,
            eta.value().map_or("-".into(), |v| format!("{v:.5}"))
        );
    }
    Ok(())
}
