//! Detector loss two ways: the lossy qubit POVM, and a beam-splitter loss
//! channel on dual-rail modes followed by a photon-counting spin measurement.
use eprsteer::observables::{loss_channel, SpinDirection};
use eprsteer::states::{dual_rail_encode_all, werner_state};
use eprsteer::steering::{
    steering_param_3, steering_param_3_with, SiteModel, SteererStrategy, WitnessSetup,
};

fn main() -> eprsteer::Result<()> {
    let state = werner_state(0.95)?;
    let fock = dual_rail_encode_all(&state)?;
    let setup = WitnessSetup {
        steered: SiteModel::DualRail,
        steerer: SiteModel::DualRail,
        strategy: SteererStrategy::Aligned,
    };
    println!("{:>6} {:>12} {:>12}", "eta_B", "S3 (POVM)", "S3 (modes)");
    for eta in [0.2, 0.35, 0.5, 0.75, 1.0] {
        let povm = steering_param_3(&state, &SpinDirection::AXES, 1.0, eta)?;
        let lossy = loss_channel(&loss_channel(&fock, 2, eta)?, 3, eta)?.regroup(vec![4, 4])?;
        let modes = steering_param_3_with(&lossy, &SpinDirection::AXES, &setup)?;
        println!(
            "{eta:>6.2} {:>12.6} {:>12.6}",
            povm.s3.unwrap(),
            modes.s3.unwrap()
        );
    }
    Ok(())
}
