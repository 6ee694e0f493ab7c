//! Fixed instances shared by the benchmarks.

use fyforge_core::pipeline::{b4_example_building, BuildingChoice, Family, InstanceSpec};
use fyforge_core::{BuiltLattice, ATOM_CAP};

fn family(f: Family, b: BuildingChoice) -> (String, BuiltLattice) {
    let spec = InstanceSpec::family(f, b).expect("family");
    let bl = spec.resolve(ATOM_CAP).expect("resolve");
    (spec.id, bl)
}

/// Supersolvable instances of increasing size.
pub fn supersolvable() -> Vec<(String, BuiltLattice)> {
    vec![
        ("b4-example".to_string(), b4_example_building().expect("b4")),
        family(Family::Complete(4), BuildingChoice::Graphical),
        family(Family::LosevManin { m: 2, n: 2 }, BuildingChoice::Graphical),
        family(Family::Partition(4), BuildingChoice::Max),
    ]
}

/// A non-supersolvable instance whose weight-2 relations fail.
pub fn six_cycle() -> (String, BuiltLattice) {
    family(Family::Cycle(6), BuildingChoice::Graphical)
}
