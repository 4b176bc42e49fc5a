//! Critical steering efficiency of the Werner family, three- and two-setting.
use eprsteer::bounds::{critical_efficiency_scan, WitnessSelector};
use eprsteer::observables::SpinDirection;
use eprsteer::states::werner_state;
use eprsteer::steering::steering_param_3;

fn main() -> eprsteer::Result<()> {
    println!(
        "{:>5} {:>10} {:>10} {:>10}",
        "p_s", "eta*_3", "1/(3p^2)", "eta*_2"
    );
    for p in [0.6, 0.7, 0.8, 0.9, 1.0] {
        let three = critical_efficiency_scan(&WitnessSelector::ThreeSetting { eta_a: 1.0 }, p)?;
        let two = critical_efficiency_scan(&WitnessSelector::TwoSetting, p)?;
        let show = |t: Option<f64>| t.map_or("-".to_string(), |v| format!("{v:.6}"));
        let closed = 1.0 / (3.0 * p * p);
        println!(
            "{p:>5.2} {:>10} {:>10} {:>10}",
            show(three.value()),
            if closed <= 1.0 {
                format!("{closed:.6}")
            } else {
                "-".into()
            },
            show(two.value())
        );
    }

    let r = steering_param_3(&werner_state(0.9)?, &SpinDirection::AXES, 1.0, 0.5)?;
    println!("\nwerner(0.9), eta_B = 0.5:");
    println!("{}", serde_json::to_string_pretty(&r).unwrap());
    Ok(())
}
