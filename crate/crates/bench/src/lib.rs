//! Fixtures shared by the benchmarks in `benches/`.

use std::sync::Arc;

use sigperm_core::{
    all_subgroups, build_group, FiniteGroup, GroupSpec, SubgroupLattice, DEFAULT_ORDER_CAP,
};

/// The group named by a catalog spec such as `S5` or `C2xA4`.
pub fn group(spec: &str) -> Arc<FiniteGroup> {
    let spec: GroupSpec = spec.parse().expect("valid group spec");
    Arc::new(build_group(&spec, DEFAULT_ORDER_CAP).expect("group within cap"))
}

/// The full subgroup lattice of a catalog spec.
pub fn lattice(spec: &str) -> SubgroupLattice {
    all_subgroups(group(spec)).expect("lattice within work limit")
}
