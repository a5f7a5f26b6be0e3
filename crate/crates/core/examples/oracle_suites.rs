//! Running the exhaustive verification suites on a small population.
//!
//! `cargo run --release --example oracle_suites -- 5 3` sets size and Fin bounds.
use irtower::oracle::enumerate::PopulationBounds;
use irtower::oracle::generation::GenerationStages;
use irtower::oracle::suites::Harness;
use irtower::TowerConfig;

fn main() -> irtower::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("bounds are numbers"));
    let max_size = args.next().unwrap_or(4) as usize;
    let max_fin = args.next().unwrap_or(2);

    let harness = Harness::new(
        PopulationBounds::new(max_size, max_fin),
        TowerConfig::default(),
    );
    let population = harness.population()?;
    println!("{} codes of size <= {max_size}", population.len());
    for round in GenerationStages::compute(population).rounds() {
        println!(
            "  stage {:6} +{:6} = {}",
            round.stage.to_string(),
            round.entered,
            round.cumulative
        );
    }
    for report in harness.run_all()? {
        println!(
            "{:20} checked {:7} skipped {:6} failures {}",
            report.suite.to_string(),
            report.checked,
            report.skipped,
            report.failure_count
        );
    }
    Ok(())
}
