//! Decoding codes to their elements, and value equality in quotients.
use irtower::decode::{cardinality, elements, normalize};
use irtower::{inhabited, parse, syntax::parse_value, syntax::print_value, value_eq};

fn main() -> irtower::Result<()> {
    let pi = parse("(Pi (Fin 2) (const (Fin 2)))")?;
    for v in elements(&pi)? {
        println!("{}", print_value(&v));
    }

    let q = parse("(Quot (Fin 4) (rel ((fin 0) (fin 2)) ((fin 2) (fin 3))))")?;
    let classes: Vec<String> = elements(&q)?.iter().map(print_value).collect();
    println!("{} classes: {}", classes.len(), classes.join(" "));
    let a = parse_value("(class (fin 3))")?;
    println!(
        "(class (fin 3)) normalizes to {}",
        print_value(&normalize(&q, &a)?)
    );
    println!(
        "equal to (class (fin 0)): {}",
        value_eq(&q, &a, &parse_value("(class (fin 0))")?)?
    );

    let nat_fns = parse("(Pi (Fin 3) (const Nat))")?;
    println!(
        "|Fin 3 -> Nat| = {:?}, inhabited = {}",
        cardinality(&nat_fns)?,
        inhabited(&nat_fns)
    );
    println!("decode fails: {}", elements(&nat_fns).unwrap_err());
    Ok(())
}
