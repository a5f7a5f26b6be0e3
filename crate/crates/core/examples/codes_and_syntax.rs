//! Building codes directly and through the s-expression syntax.
use irtower::{parse, print, Code, Family, Value};

fn main() -> irtower::Result<()> {
    let built = Code::sigma(
        Code::fin(2),
        Family::table([(Value::Fin(0), Code::Star), (Value::Fin(1), Code::fin(3))]),
    )?;
    let text = print(&built);
    println!("{text}  (size {})", built.size());
    assert_eq!(parse(&text)?, built);

    for bad in ["(Fin 2", "(Pi (Fin 2))", "(Id (Fin 2) (fin 0) (fin 5))"] {
        println!("{bad:32} -> {}", parse(bad).unwrap_err());
    }
    Ok(())
}
