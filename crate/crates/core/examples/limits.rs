//! Products and equalisers, checked against their universal properties.
use irtower::limits::{check_universal, default_targets, equaliser, Diagram, MapTable, Universal};
use irtower::{decode::elements, print, syntax::print_value, Code, Value};

fn main() -> irtower::Result<()> {
    let product = Diagram::discrete(Code::fin(2), Code::fin(3));
    let cone = product.limit()?;
    println!(
        "product {} has {} elements",
        print(&cone.apex),
        elements(&cone.apex)?.len()
    );
    let report = check_universal(
        Universal::Limit,
        &product,
        &cone,
        &default_targets(&product),
    );
    println!(
        "universal: {} ({} cones checked)",
        report.holds, report.cones_checked
    );

    let f = MapTable::from_pairs(
        Code::fin(3),
        Code::fin(2),
        (0..3).map(|i| (Value::Fin(i), Value::Fin(i % 2))),
    )?;
    let g = MapTable::from_pairs(
        Code::fin(3),
        Code::fin(2),
        (0..3).map(|i| (Value::Fin(i), Value::Fin(0))),
    )?;
    let eq = equaliser(&f, &g)?;
    let members: Vec<String> = elements(&eq)?.iter().map(print_value).collect();
    println!("equaliser {}:\n  {}", print(&eq), members.join("\n  "));

    let parallel = Diagram::parallel(f, g)?;
    let cone = parallel.limit()?;
    println!(
        "universal: {}",
        check_universal(
            Universal::Limit,
            &parallel,
            &cone,
            &default_targets(&parallel)
        )
        .holds
    );
    Ok(())
}
