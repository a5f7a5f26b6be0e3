//! Ordinals below ω³: parsing, ordering, successor and +ω.
use irtower::{sup, RankOrdinal};

fn main() -> irtower::Result<()> {
    let a: RankOrdinal = "w*1+2".parse()?;
    let b: RankOrdinal = "w2*1".parse()?;
    println!("{a} < {b}: {}", a < b);
    println!("succ({a}) = {}", a.succ());
    println!("{a} + w = {}", a.add_omega());
    println!("sup = {}", sup([a, b, RankOrdinal::finite(7)]));
    println!("{b} closed under +w: {}", b.closed_under_add_omega());
    Ok(())
}
