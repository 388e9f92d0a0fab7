//! Fixtures shared by the benchmarks.

use socode::construct::from_incidence_binary;
use socode::design::from_group_action;
use socode::{data, Design, LinearCode, PermGroup};

pub fn m11(degree: usize) -> PermGroup {
    data::m11_of_degree(degree).unwrap().expect("shipped degree")
}

/// The 1-(22,20,10) design from the 20-point stabilizer orbit.
pub fn design_22() -> Design {
    from_group_action(&m11(22), 0, &[2]).unwrap().design
}

/// Its incidence code, [22,10,4].
pub fn code_22() -> LinearCode {
    from_incidence_binary(&design_22(), None).unwrap().code
}
