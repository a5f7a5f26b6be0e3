//! Coproducts, coequalisers and pushouts, including a diagram read from text.
use irtower::limits::{check_universal, default_targets, pushout, MapTable, Universal};
use irtower::syntax::parse_diagram;
use irtower::{decode::elements, print, Code, Value};

fn main() -> irtower::Result<()> {
    // Glue one point of Fin 2 to one point of Fin 2: 2 + 2 - 1 elements.
    let f = MapTable::from_pairs(Code::fin(1), Code::fin(2), [(Value::Fin(0), Value::Fin(1))])?;
    let g = MapTable::from_pairs(Code::fin(1), Code::fin(2), [(Value::Fin(0), Value::Fin(0))])?;
    let p = pushout(&f, &g)?;
    println!("pushout {} has {} elements", print(&p), elements(&p)?.len());

    let diagram = parse_diagram(
        "(diagram
           (object R (Fin 2))
           (object S (Fin 3))
           (arrow p R S (graph ((fin 0) (fin 0)) ((fin 1) (fin 1))))
           (arrow q R S (graph ((fin 0) (fin 1)) ((fin 1) (fin 2)))))",
    )?;
    let cocone = diagram.colimit()?;
    println!(
        "coequaliser {} has {} elements",
        print(&cocone.apex),
        elements(&cocone.apex)?.len()
    );
    let report = check_universal(
        Universal::Colimit,
        &diagram,
        &cocone,
        &default_targets(&diagram),
    );
    println!(
        "universal: {} over {} targets",
        report.holds, report.targets_checked
    );
    Ok(())
}
