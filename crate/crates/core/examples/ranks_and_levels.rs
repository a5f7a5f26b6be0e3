//! Ranks of codes and the levels of the default and a custom tower.
use irtower::{level_member, parse, rk, TowerConfig};

fn main() -> irtower::Result<()> {
    let default = TowerConfig::default();
    let narrow = TowerConfig::parse("w,w2*1")?;
    for text in [
        "*",
        "(Pi (Fin 2) (const *))",
        "(Sigma Nat (const (Pi (Fin 2) (const *))))",
        "(Quot (Fin 3) (rel ((fin 0) (fin 1))))",
    ] {
        let c = parse(text)?;
        println!(
            "{text:45} rk = {:7} default level {:?}, narrow level {:?}, in narrow level 0: {}",
            rk(&c).to_string(),
            default.least_level(&c),
            narrow.least_level(&c),
            level_member(&c, 0, &narrow)?
        );
    }
    Ok(())
}
