//! Resizing an h-proposition to level 0 and checking the adjunction.
use irtower::resize::{check_adjunction, is_hprop, prop_res, PropCode};
use irtower::{parse, print, Code, TowerConfig};

fn main() -> irtower::Result<()> {
    let cfg = TowerConfig::default();
    let p = PropCode::new(
        parse("(Pi (Fin 3) (const (Id (Fin 2) (fin 1) (fin 1))))")?,
        4,
        &cfg,
    )?;
    let resized = prop_res(&p, &cfg)?;
    println!(
        "{} at level {} resizes to {}",
        print(p.code()),
        p.level(),
        print(resized.prop.code())
    );
    println!(
        "epsilon: {}",
        serde_json::to_string(&resized.epsilon).expect("maps serialize")
    );

    println!("(Fin 2) is a proposition: {}", is_hprop(&Code::fin(2)));

    let targets = [
        PropCode::new(Code::fin(0), 0, &cfg)?,
        PropCode::new(Code::fin(1), 0, &cfg)?,
    ];
    let report = check_adjunction(&[p], &targets, &cfg);
    println!(
        "adjunction: {} pairs, clean = {}",
        report.pairs_checked,
        report.is_clean()
    );
    Ok(())
}
