//! Shipped M11 generators and the derived transitive representations.

use crate::error::Result;
use crate::perm::{parse_group, PermGroup, Permutation};

pub const M11_11: &str = include_str!("../data/m11_11.txt");
pub const M11_12: &str = include_str!("../data/m11_12.txt");

pub fn m11_on_11() -> PermGroup {
    parse_group(M11_11).expect("shipped M11 data parses")
}

pub fn m11_on_12() -> PermGroup {
    parse_group(M11_12).expect("shipped M11 data parses")
}

/// Subgroup of order 360 (A6) inside the stabilizer of point 0, generated by
/// the stabilizer's elements of order 3. Its cosets give the degree-22 action.
pub fn index22_subgroup(g: &PermGroup) -> Result<PermGroup> {
    let st = g.stabilizer(0)?;
    let gens: Vec<Permutation> = st.elements()?.iter().filter(|p| p.order() == 3).cloned().collect();
    PermGroup::new(g.degree(), gens)
}

/// Subgroup of order 660 used for the degree-12 action: the first element of
/// order 11, together with the first element of order 2, 3 or 5 that brings
/// the generated group to order 660. Elements are taken in sorted order.
pub fn index12_subgroup(g: &PermGroup) -> Result<Option<PermGroup>> {
    let elems = g.elements()?;
    let Some(c11) = elems.iter().find(|p| p.order() == 11) else {
        return Ok(None);
    };
    for x in elems.iter().filter(|x| matches!(x.order(), 2 | 3 | 5)) {
        let h = PermGroup::new(g.degree(), vec![c11.clone(), x.clone()])?;
        if h.enumerate(661).is_ok_and(|e| e.len() == 660) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

pub fn m11_on_22() -> Result<PermGroup> {
    let g = m11_on_11();
    let h = index22_subgroup(&g)?;
    g.coset_action(&h)
}

/// Unordered pairs of the 11 points.
pub fn m11_on_55() -> Result<PermGroup> {
    m11_on_11().action_on_ksubsets(2)
}

/// Unordered pairs of the 12 points.
pub fn m11_on_66() -> Result<PermGroup> {
    m11_on_12().action_on_ksubsets(2)
}

/// Unordered triples of the 11 points.
pub fn m11_on_165() -> Result<PermGroup> {
    m11_on_11().action_on_ksubsets(3)
}

/// Degree → representation, for the degrees derivable without extra data.
pub fn m11_of_degree(n: usize) -> Result<Option<PermGroup>> {
    Ok(match n {
        11 => Some(m11_on_11()),
        12 => Some(m11_on_12()),
        22 => Some(m11_on_22()?),
        55 => Some(m11_on_55()?),
        66 => Some(m11_on_66()?),
        165 => Some(m11_on_165()?),
        _ => None,
    })
}
