//! Reproduction harness for the desk-scale tables.
//!
//! Each table is a list of expected rows: the representation degree, the
//! design label, the construction, and the code parameters. The harness
//! rebuilds the design with [`wso_search`], runs the construction, and
//! compares. Expected values are data, not recomputed.

use std::collections::BTreeMap;
use std::fmt;

use crate::construct::{from_fixed_split_binary, from_incidence_binary, from_orbitmatrix_binary, ConstructionReport};
use crate::data;
use crate::design::{wso_search, Design};
use crate::error::{Error, Result};
use crate::orbitmat::OrbitMatrix;
use crate::perm::PermGroup;

/// `[56,28,4]` needs 2^28 codewords, so reproduction runs with this budget
/// unless told otherwise.
pub const REPRODUCE_BUDGET: u64 = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    /// Code from the incidence matrix.
    Incidence,
    /// Orbit matrix under the first cyclic subgroup of this prime order.
    OrbitMatrix(usize),
    /// Fixed-point split under the first involution: OM1 (`false`) or OM2.
    FixedSplit { second: bool },
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pipeline::Incidence => write!(f, "incidence"),
            Pipeline::OrbitMatrix(p) => write!(f, "orbitmat/Z{p}"),
            Pipeline::FixedSplit { second: false } => write!(f, "fixedsplit/OM1"),
            Pipeline::FixedSplit { second: true } => write!(f, "fixedsplit/OM2"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExpectedRow {
    pub degree: usize,
    pub design: &'static str,
    pub pipeline: Pipeline,
    /// Prefix of the theorem tag named in the table caption.
    pub theorem: &'static str,
    pub code: &'static str,
}

const fn row(
    degree: usize,
    design: &'static str,
    pipeline: Pipeline,
    theorem: &'static str,
    code: &'static str,
) -> ExpectedRow {
    ExpectedRow { degree, design, pipeline, theorem, code }
}

const OM1: Pipeline = Pipeline::FixedSplit { second: false };
const OM2: Pipeline = Pipeline::FixedSplit { second: true };

// The 22-point design giving [22,10,4] is 1-(22,20,10): the degree-22 action
// has subdegrees 1, 1, 20, so no 10-point base block exists.
const T1_SMALL: &[ExpectedRow] = &[
    row(22, "1-(22,20,10)", Pipeline::Incidence, "T2.1", "[22,10,4]"),
    row(22, "1-(22,2,1)", Pipeline::Incidence, "T2.1", "[22,11,2]"),
    row(66, "1-(66,20,20)", Pipeline::Incidence, "T2.1", "[66,10,20]"),
    row(66, "1-(66,46,46)", Pipeline::Incidence, "T2.1", "[66,11,20]"),
];

const T8: &[ExpectedRow] = &[
    row(66, "1-(66,21,21)", Pipeline::OrbitMatrix(11), "T3.3.bin", "[12,6,2]"),
    row(66, "1-(66,45,45)", Pipeline::OrbitMatrix(11), "T3.3.bin", "[12,6,4]"),
];

const T12: &[ExpectedRow] = &[
    row(22, "1-(22,20,10)", OM1, "T3.1.fix", "[6,2,4]"),
    row(22, "1-(22,20,10)", OM2, "T3.1.fix", "[8,4,2]"),
    row(22, "1-(22,2,1)", OM1, "T3.1.fix", "[6,3,2]"),
];

const T13: &[ExpectedRow] = &[
    row(66, "1-(66,20,20)", OM1, "T3.1.fix", "[10,2,4]"),
    row(66, "1-(66,20,20)", OM2, "T3.1.fix", "[28,4,10]"),
    row(66, "1-(66,46,46)", OM1, "T3.1.fix", "[10,3,4]"),
];

const T16_SMALL: &[ExpectedRow] = &[
    row(66, "1-(66,21,21)", OM1, "T3.3.fix", "[20,10,2]"),
    row(66, "1-(66,21,21)", OM2, "T3.3.fix", "[56,28,4]"),
    row(66, "1-(66,45,45)", OM1, "T3.3.fix", "[20,10,4]"),
];

pub const TABLE_IDS: &[&str] = &["t1-small", "t8", "t12", "t13", "t16-small"];

pub fn expected_rows(id: &str) -> Result<&'static [ExpectedRow]> {
    Ok(match id {
        "t1-small" => T1_SMALL,
        "t8" => T8,
        "t12" => T12,
        "t13" => T13,
        "t16-small" => T16_SMALL,
        _ => return Err(Error::UnknownTable(id.to_string())),
    })
}

#[derive(Clone, Debug)]
pub struct RowResult {
    pub expected: ExpectedRow,
    /// `[n,k,d]` without the field suffix, or the error that stopped the row.
    pub got: std::result::Result<String, String>,
    pub theorem: Option<String>,
    /// Counting identity on the orbit matrix, for orbit-matrix pipelines.
    pub identity_checked: bool,
    pub design: Option<Design>,
    pub orbit_matrix: Option<OrbitMatrix>,
    pub report: Option<ConstructionReport>,
}

impl RowResult {
    pub fn pass(&self) -> bool {
        self.got.as_deref() == Ok(self.expected.code)
            && self.theorem.as_deref().is_some_and(|t| t.starts_with(self.expected.theorem))
    }
}

impl fmt::Display for RowResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.expected;
        let got = match &self.got {
            Ok(s) => s.clone(),
            Err(msg) => format!("error: {msg}"),
        };
        write!(
            f,
            "{} degree={} design={} via={} theorem={} expected={} got={}",
            if self.pass() { "PASS" } else { "FAIL" },
            e.degree,
            e.design,
            e.pipeline,
            self.theorem.as_deref().unwrap_or("-"),
            e.code,
            got
        )
    }
}

#[derive(Clone, Debug)]
pub struct TableRun {
    pub id: String,
    pub rows: Vec<RowResult>,
}

impl TableRun {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(RowResult::pass)
    }
}

/// Groups and searched designs shared between rows and tables.
#[derive(Default)]
pub struct Workspace {
    groups: BTreeMap<usize, PermGroup>,
    designs: BTreeMap<usize, Vec<Design>>,
}

impl Workspace {
    pub fn new() -> Workspace {
        Workspace::default()
    }

    pub fn group(&mut self, degree: usize) -> Result<&PermGroup> {
        if let std::collections::btree_map::Entry::Vacant(slot) = self.groups.entry(degree) {
            let g = data::m11_of_degree(degree)?
                .ok_or_else(|| Error::Parse(format!("no shipped M11 representation of degree {degree}")))?;
            slot.insert(g);
        }
        Ok(&self.groups[&degree])
    }

    /// Designs found by the binary search at point 0, in search order.
    pub fn designs(&mut self, degree: usize) -> Result<&[Design]> {
        if !self.designs.contains_key(&degree) {
            let g = self.group(degree)?;
            let found = wso_search(g, 0, 2)?.into_iter().map(|h| h.built.design).collect();
            self.designs.insert(degree, found);
        }
        Ok(&self.designs[&degree])
    }

    pub fn design(&mut self, degree: usize, label: &str) -> Result<Design> {
        self.designs(degree)?
            .iter()
            .find(|d| d.label() == label)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("search on degree {degree} found no {label}")))
    }

    fn run_row(&mut self, e: &ExpectedRow, budget: u64) -> RowResult {
        let mut design = None;
        let mut orbit_matrix = None;
        let outcome = (|| -> Result<ConstructionReport> {
            let d = self.design(e.degree, e.design)?;
            design = Some(d.clone());
            let g = self.group(e.degree)?;
            let sub = match e.pipeline {
                Pipeline::Incidence => return from_incidence_binary(&d, None),
                Pipeline::OrbitMatrix(p) => first_subgroup(g, p)?,
                Pipeline::FixedSplit { .. } => first_subgroup(g, 2)?,
            };
            let om = OrbitMatrix::build(&d, &sub)?;
            om.verify_counting_identity(&d)?;
            orbit_matrix = Some(om);
            match e.pipeline {
                Pipeline::FixedSplit { second } => {
                    let (a, b) = from_fixed_split_binary(&d, &sub, None)?;
                    Ok(if second { b } else { a })
                }
                _ => from_orbitmatrix_binary(&d, &sub, None),
            }
        })();
        let identity_checked = orbit_matrix.is_some();
        match outcome {
            Ok(report) => RowResult {
                expected: *e,
                got: Ok(format!("[{},{},{}]", report.code.n(), report.code.k(), report.code.min_distance(budget))),
                theorem: Some(report.theorem.tag().to_string()),
                identity_checked,
                design,
                orbit_matrix,
                report: Some(report),
            },
            Err(err) => RowResult {
                expected: *e,
                got: Err(err.to_string()),
                theorem: None,
                identity_checked,
                design,
                orbit_matrix,
                report: None,
            },
        }
    }

    pub fn reproduce(&mut self, id: &str, budget: u64) -> Result<TableRun> {
        let rows = expected_rows(id)?;
        let results = rows.iter().map(|e| self.run_row(e, budget)).collect();
        Ok(TableRun { id: id.to_string(), rows: results })
    }
}

pub fn first_subgroup(g: &PermGroup, p: usize) -> Result<PermGroup> {
    g.prime_order_subgroups(p)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Parse(format!("group has no element of order {p}")))
}

/// Run one table with a fresh workspace.
pub fn reproduce(id: &str, budget: u64) -> Result<TableRun> {
    Workspace::new().reproduce(id, budget)
}
