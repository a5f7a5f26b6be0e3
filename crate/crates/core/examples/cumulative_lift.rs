//! Lifting codes up the tower and the Π-preservation check.
use irtower::tower::{check_cumulativity, check_pi_preservation, lift, LeveledCode};
use irtower::{parse, Code, Family, TowerConfig};

fn main() -> irtower::Result<()> {
    let cfg = TowerConfig::default();
    let c = LeveledCode::least(parse("(Sigma (Fin 2) (const (Quot (Fin 3) (rel))))")?, &cfg)?;
    let up = lift(&c, 5, &cfg)?;
    println!(
        "lifted from {} to {}, code unchanged: {}",
        c.level(),
        up.level(),
        up.code() == c.code()
    );
    println!("lift down: {}", lift(&up, 1, &cfg).unwrap_err());

    let preserved = check_pi_preservation(&Code::fin(2), &Family::constant(Code::Nat), 0, 3, &cfg)?;
    println!("lift commutes with Pi: {preserved}");

    let codes: Vec<Code> = ["*", "(Fin 3)", "(Pi (Fin 2) (const *))"]
        .iter()
        .map(|t| parse(t))
        .collect::<Result<_, _>>()?;
    let report = check_cumulativity(&codes, &cfg);
    println!(
        "cumulativity: {} codes, {} level pairs, clean = {}",
        report.codes_checked,
        report.level_pairs_checked,
        report.is_clean()
    );
    Ok(())
}
