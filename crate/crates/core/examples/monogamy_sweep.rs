//! Steering monogamy over random multi-qubit states.
use eprsteer::monogamy::{
    min_slack, monogamy_3, random_sweep, MonogamyConfig, RandomStateKind, Relation,
};
use eprsteer::observables::SpinDirection;
use eprsteer::sampling::haar_pure_state;
use rand::SeedableRng;

fn main() -> eprsteer::Result<()> {
    let cfg = MonogamyConfig::default();
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(3);
    let r = monogamy_3(
        &haar_pure_state(&mut rng, vec![2; 4]),
        [0, 1, 2, 3],
        &SpinDirection::AXES,
        &cfg,
    )?;
    for t in &r.terms {
        println!(
            "{} (steered {}, steerer {}) = {:.4}",
            t.label, t.steered, t.steerer, t.value
        );
    }
    println!("sum {:.4} >= {} (slack {:.4})\n", r.sum, r.bound, r.slack);

    for (relation, kind) in [
        (Relation::ThreeSetting, RandomStateKind::Pure),
        (Relation::ThreeSetting, RandomStateKind::Mixed { rank: 2 }),
        (Relation::TwoSetting, RandomStateKind::Pure),
    ] {
        let rows = random_sweep(relation, kind, 2000, 11, &cfg)?;
        println!(
            "{relation:?} {kind:?}: {} states, min slack {:.3e}",
            rows.len(),
            min_slack(&rows)
        );
    }
    Ok(())
}
