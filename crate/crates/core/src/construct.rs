//! Self-orthogonal codes from weakly self-orthogonal designs, their orbit
//! matrices, and fixed-point splits.
//!
//! Every construction picks its theorem from the intersection profile, builds
//! the bordered generator `[c·I | body | e·1]`, and then checks what the
//! theorem promises: vanishing Gram matrix, full rank when an identity block
//! is present, and self-duality where claimed. A failed check is a hard
//! error. Square roots live in GF(q) when every radicand is a square there,
//! otherwise in GF(q²).

use std::fmt;
use std::str::FromStr;

use crate::code::LinearCode;
use crate::design::{Design, WsoCase, WsoProfile};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::orbitmat::{fixed_split, OrbitMatrix};
use crate::perm::PermGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    T2_1_1,
    T2_1_2,
    T2_1_3,
    T2_1_4,
    T2_2_1,
    T2_2_2,
    T2_2_3,
    T2_2_4a,
    T2_2_4b,
    T3_1Bin,
    T3_1Q,
    T3_1Fix,
    T3_1FixQ,
    T3_2BinA,
    T3_2BinB,
    T3_2BinC,
    T3_2QA,
    T3_2QB,
    T3_2QC,
    T3_2Fix,
    T3_2FixQ,
    T3_3BinA,
    T3_3BinB,
    T3_3Q,
    T3_3Fix,
    T3_3FixQ,
    T3_4BinA,
    T3_4BinB,
    T3_4Q,
    T3_4Fix,
    T3_4FixQ,
}

const TAGS: &[(Theorem, &str)] = &[
    (Theorem::T2_1_1, "T2.1.1"),
    (Theorem::T2_1_2, "T2.1.2"),
    (Theorem::T2_1_3, "T2.1.3"),
    (Theorem::T2_1_4, "T2.1.4"),
    (Theorem::T2_2_1, "T2.2.1"),
    (Theorem::T2_2_2, "T2.2.2"),
    (Theorem::T2_2_3, "T2.2.3"),
    (Theorem::T2_2_4a, "T2.2.4a"),
    (Theorem::T2_2_4b, "T2.2.4b"),
    (Theorem::T3_1Bin, "T3.1.bin"),
    (Theorem::T3_1Q, "T3.1.q"),
    (Theorem::T3_1Fix, "T3.1.fix"),
    (Theorem::T3_1FixQ, "T3.1.fix.q"),
    (Theorem::T3_2BinA, "T3.2.bin.a"),
    (Theorem::T3_2BinB, "T3.2.bin.b"),
    (Theorem::T3_2BinC, "T3.2.bin.c"),
    (Theorem::T3_2QA, "T3.2.q.a"),
    (Theorem::T3_2QB, "T3.2.q.b"),
    (Theorem::T3_2QC, "T3.2.q.c"),
    (Theorem::T3_2Fix, "T3.2.fix"),
    (Theorem::T3_2FixQ, "T3.2.fix.q"),
    (Theorem::T3_3BinA, "T3.3.bin.a"),
    (Theorem::T3_3BinB, "T3.3.bin.b"),
    (Theorem::T3_3Q, "T3.3.q"),
    (Theorem::T3_3Fix, "T3.3.fix"),
    (Theorem::T3_3FixQ, "T3.3.fix.q"),
    (Theorem::T3_4BinA, "T3.4.bin.a"),
    (Theorem::T3_4BinB, "T3.4.bin.b"),
    (Theorem::T3_4Q, "T3.4.q"),
    (Theorem::T3_4Fix, "T3.4.fix"),
    (Theorem::T3_4FixQ, "T3.4.fix.q"),
];

impl Theorem {
    pub fn all() -> impl Iterator<Item = Theorem> {
        TAGS.iter().map(|(t, _)| *t)
    }

    pub fn tag(self) -> &'static str {
        TAGS.iter().find(|(t, _)| *t == self).map(|(_, s)| *s).expect("every theorem has a tag")
    }

    /// Which builder a tag belongs to.
    pub fn family(self) -> Family {
        let tag = self.tag();
        if tag.starts_with("T2.1") {
            Family::IncidenceBinary
        } else if tag.starts_with("T2.2") {
            Family::IncidenceQ
        } else if tag.contains(".fix.q") {
            Family::FixedSplitQ
        } else if tag.contains(".fix") {
            Family::FixedSplitBinary
        } else if tag.contains(".bin") {
            Family::OrbitBinary
        } else {
            Family::OrbitQ
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    /// Accepts the canonical tags; `T3.2.bina` style (no dot before the
    /// sub-item letter) is accepted too.
    fn from_str(s: &str) -> Result<Theorem> {
        let s = s.trim();
        TAGS.iter()
            .find(|(_, tag)| *tag == s || tag.replace(".bin.", ".bin").replace(".q.", ".q") == s)
            .map(|(t, _)| *t)
            .ok_or_else(|| Error::Parse(format!("unknown theorem tag {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    IncidenceBinary,
    IncidenceQ,
    OrbitBinary,
    OrbitQ,
    FixedSplitBinary,
    FixedSplitQ,
}

/// A scalar under a square root, as an integer taken mod p.
#[derive(Clone, Copy, Debug)]
struct Radicand {
    name: &'static str,
    value: i64,
}

const ONE: Radicand = Radicand { name: "1", value: 1 };

fn rad(name: &'static str, value: i64) -> Radicand {
    Radicand { name, value }
}

#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub source: String,
    pub theorem: Theorem,
    /// Sub-case within the theorem, if it branches further.
    pub detail: String,
    pub base_field: Field,
    pub field: Field,
    /// Names of the radicands that were not squares in the base field.
    pub forced_extension: Vec<String>,
    pub left: Option<u32>,
    pub right: Option<u32>,
    pub self_dual_claimed: bool,
    pub code: LinearCode,
}

impl ConstructionReport {
    pub fn extended(&self) -> bool {
        self.field != self.base_field
    }

    /// `[I]`, `[I,M,1]`, and so on: which borders the generator carries.
    pub fn shape(&self) -> &'static str {
        match (self.left.is_some(), self.right.is_some()) {
            (false, false) => "[M]",
            (true, false) => "[cI,M]",
            (false, true) => "[M,e1]",
            (true, true) => "[cI,M,e1]",
        }
    }

    /// Text block: tag, field, scalars, parameters, then the generator.
    pub fn to_text(&self, budget: u64) -> String {
        let scalar = |s: Option<u32>| s.map_or("-".to_string(), |x| x.to_string());
        let ext = if self.forced_extension.is_empty() {
            "none".to_string()
        } else {
            format!("forced by {}", self.forced_extension.join(", "))
        };
        let mut out = String::new();
        out.push_str(&format!("source {}\n", self.source));
        out.push_str(&format!("theorem {}", self.theorem));
        if !self.detail.is_empty() {
            out.push_str(&format!(" ({})", self.detail));
        }
        out.push('\n');
        out.push_str(&format!("field {}\n", self.field));
        out.push_str(&format!("extension {ext}\n"));
        out.push_str(&format!("scalars left={} right={}\n", scalar(self.left), scalar(self.right)));
        out.push_str(&format!(
            "code {} SO={} self-dual={}\n",
            self.code.describe(budget),
            self.code.is_self_orthogonal(),
            self.code.is_self_dual()
        ));
        out.push_str("generator\n");
        out.push_str(&self.code.generator().to_string());
        out
    }
}

/// What a theorem prescribes, before any field arithmetic.
struct Plan {
    theorem: Theorem,
    detail: String,
    left: Option<Radicand>,
    right: Option<Radicand>,
    self_dual_claimed: bool,
}

impl Plan {
    fn new(theorem: Theorem, left: Option<Radicand>, right: Option<Radicand>) -> Plan {
        Plan { theorem, detail: String::new(), left, right, self_dual_claimed: false }
    }

    fn detail(mut self, d: impl Into<String>) -> Plan {
        self.detail = d.into();
        self
    }

    fn self_dual_if(mut self, claim: bool) -> Plan {
        self.self_dual_claimed = claim;
        self
    }
}

fn check_forced(forced: Option<Theorem>, actual: Theorem, why: &str) -> Result<()> {
    match forced {
        Some(t) if t != actual => Err(Error::CaseMismatch {
            tag: t.tag().to_string(),
            reason: format!("hypotheses select {actual} ({why})"),
        }),
        _ => Ok(()),
    }
}

fn assemble(source: String, plan: Plan, base: &Field, cols: usize, rows: &[Vec<u32>]) -> Result<ConstructionReport> {
    let radicands: Vec<Radicand> = plan.left.iter().chain(plan.right.iter()).copied().collect();
    let non_squares: Vec<String> = radicands
        .iter()
        .filter(|r| !base.is_square(base.from_int(r.value)))
        .map(|r| format!("{}={}", r.name, base.from_int(r.value)))
        .collect();
    let field = if non_squares.is_empty() { base.clone() } else { base.extend_quadratic().0 };
    let root = |r: Option<Radicand>| -> Result<Option<u32>> {
        r.map(|r| field.sqrt(field.from_int(r.value))).transpose()
    };
    let (left, right) = (root(plan.left)?, root(plan.right)?);
    let body = crate::matrix::GfMatrix::from_integers(&field, cols, rows);
    let generator = body.bordered(left, right);
    let code = LinearCode::new(generator);
    let tag = plan.theorem.tag().to_string();
    let fail = |reason: String| Error::ConstructionFailed { tag: tag.clone(), reason };
    if !code.generator().gram().is_zero() {
        return Err(fail("generator Gram matrix is nonzero".into()));
    }
    if left.is_some_and(|c| c != 0) && code.k() != rows.len() {
        return Err(fail(format!("rank {} but {} rows behind an identity block", code.k(), rows.len())));
    }
    if plan.self_dual_claimed && code.dual() != code {
        return Err(fail("claimed self-dual code differs from its dual".into()));
    }
    Ok(ConstructionReport {
        source,
        theorem: plan.theorem,
        detail: plan.detail,
        base_field: base.clone(),
        field,
        forced_extension: non_squares,
        left,
        right,
        self_dual_claimed: plan.self_dual_claimed,
        code,
    })
}

fn binary_profile(design: &Design) -> Result<(WsoProfile, WsoCase)> {
    let profile = design.intersection_profile(2);
    let case = profile.case().ok_or(Error::NotWso)?;
    Ok((profile, case))
}

fn q_profile(design: &Design, p: u32) -> Result<(i64, i64)> {
    let profile = design.intersection_profile(p);
    let d = profile.d.ok_or(Error::NonConstantProfile { p })?;
    Ok((profile.a as i64, d as i64))
}

/// Binary code from the incidence matrix, by parity case.
pub fn from_incidence_binary(design: &Design, forced: Option<Theorem>) -> Result<ConstructionReport> {
    design.validate()?;
    let (_, case) = binary_profile(design)?;
    let plan = match case {
        WsoCase::Case1 => Plan::new(Theorem::T2_1_1, None, None),
        WsoCase::Case2 => Plan::new(Theorem::T2_1_2, Some(ONE), Some(ONE)),
        WsoCase::Case3 => Plan::new(Theorem::T2_1_3, Some(ONE), None).self_dual_if(design.b() == design.v()),
        WsoCase::Case4 => Plan::new(Theorem::T2_1_4, None, Some(ONE)),
    };
    check_forced(forced, plan.theorem, case.binary_name())?;
    let source = format!("{} incidence matrix", design.label());
    assemble(source, plan, &Field::prime(2)?, design.v(), &design.incidence_rows())
}

/// Code over `field` from the incidence matrix, by `(a, d)` mod p.
pub fn from_incidence_q(design: &Design, field: &Field, forced: Option<Theorem>) -> Result<ConstructionReport> {
    design.validate()?;
    let (a, d) = q_profile(design, field.characteristic())?;
    let plan = match (a, d) {
        (0, 0) => Plan::new(Theorem::T2_2_1, None, None),
        (0, d) => Plan::new(Theorem::T2_2_2, Some(rad("d", d)), Some(rad("-d", -d))),
        (a, 0) => Plan::new(Theorem::T2_2_3, Some(rad("-a", -a)), None).self_dual_if(design.b() == design.v()),
        (a, d) if a == d => Plan::new(Theorem::T2_2_4a, None, Some(rad("-a", -a))),
        (a, d) => Plan::new(Theorem::T2_2_4b, Some(rad("d-a", d - a)), Some(rad("-d", -d))),
    };
    check_forced(forced, plan.theorem, &format!("a={a}, d={d}"))?;
    let source = format!("{} incidence matrix", design.label());
    assemble(source, plan, field, design.v(), &design.incidence_rows())
}

fn two_adic(mut x: usize) -> u32 {
    let mut e = 0;
    while x % 2 == 0 && x > 0 {
        x /= 2;
        e += 1;
    }
    e
}

fn orbit_source(design: &Design, om: &OrbitMatrix) -> String {
    format!(
        "{} orbit matrix {}x{} (point orbits {:?}, block orbits {:?})",
        design.label(),
        om.rows(),
        om.cols(),
        om.point_orbit_sizes(),
        om.block_orbit_sizes()
    )
}

/// Binary code from the orbit matrix under `group`. Point orbits share one
/// length `w`; block orbit lengths share one 2-adic valuation `o ≤ v2(w)`.
pub fn from_orbitmatrix_binary(design: &Design, group: &PermGroup, forced: Option<Theorem>) -> Result<ConstructionReport> {
    let (_, case) = binary_profile(design)?;
    let om = OrbitMatrix::build(design, group)?;
    om.verify_counting_identity(design)?;
    let w = om
        .uniform_point_length()
        .ok_or_else(|| Error::BadOrbitProfile(format!("point orbits {:?} differ in length", om.point_orbit_sizes())))?;
    let u = two_adic(w);
    let sizes = om.block_orbit_sizes();
    let o = sizes.first().map_or(0, |&b| two_adic(b));
    if sizes.iter().any(|&b| two_adic(b) != o) {
        return Err(Error::BadOrbitProfile(format!("block orbits {sizes:?} differ in 2-adic valuation")));
    }
    if o > u {
        return Err(Error::BadOrbitProfile(format!("block orbit 2-adic valuation {o} exceeds {u} of w={w}")));
    }
    let (m, n) = (om.rows(), om.cols());
    let plan = match case {
        WsoCase::Case1 => Plan::new(Theorem::T3_1Bin, None, None),
        WsoCase::Case2 if o == 0 && u == 0 => Plan::new(Theorem::T3_2BinA, Some(ONE), Some(ONE)),
        WsoCase::Case2 if o == u => Plan::new(Theorem::T3_2BinB, Some(ONE), None).self_dual_if(m == n),
        WsoCase::Case2 => Plan::new(Theorem::T3_2BinC, None, None),
        WsoCase::Case3 if o == u => Plan::new(Theorem::T3_3BinA, Some(ONE), None).self_dual_if(m == n),
        WsoCase::Case3 => Plan::new(Theorem::T3_3BinB, None, None),
        WsoCase::Case4 if o == 0 && u == 0 => Plan::new(Theorem::T3_4BinA, None, Some(ONE)),
        WsoCase::Case4 => Plan::new(Theorem::T3_4BinB, None, None),
    };
    let plan = plan.detail(format!("o={o}, u={u}"));
    check_forced(forced, plan.theorem, &format!("{}, o={o}, u={u}", case.binary_name()))?;
    assemble(orbit_source(design, &om), plan, &Field::prime(2)?, n, om.entries())
}

/// Code over `field` from the orbit matrix; every point and block orbit must
/// have the same length `w`.
pub fn from_orbitmatrix_q(
    design: &Design,
    group: &PermGroup,
    field: &Field,
    forced: Option<Theorem>,
) -> Result<ConstructionReport> {
    let p = field.characteristic();
    let (a, d) = q_profile(design, p)?;
    let om = OrbitMatrix::build(design, group)?;
    om.verify_counting_identity(design)?;
    let w = match (om.uniform_point_length(), om.uniform_block_length()) {
        (Some(x), Some(y)) if x == y => x,
        _ => {
            return Err(Error::BadOrbitProfile(format!(
                "need one common orbit length, found points {:?} and blocks {:?}",
                om.point_orbit_sizes(),
                om.block_orbit_sizes()
            )))
        }
    };
    let (m, n) = (om.rows(), om.cols());
    let wi = w as i64;
    let p_w = w as u64 % p as u64 == 0;
    let p_w1 = (w as u64 + p as u64 - 1) % p as u64 == 0;
    let plan = match (a, d) {
        (0, 0) => Plan::new(Theorem::T3_1Q, None, None),
        (0, d) if p_w => Plan::new(Theorem::T3_2QA, Some(rad("d", d)), None).self_dual_if(m == n),
        (0, d) if p_w1 => Plan::new(Theorem::T3_2QB, Some(rad("wd", wi * d)), Some(rad("-wd", -wi * d))),
        (0, d) => Plan::new(Theorem::T3_2QC, Some(rad("d", d)), Some(rad("-wd", -wi * d))),
        (a, 0) => Plan::new(Theorem::T3_3Q, Some(rad("-a", -a)), None).self_dual_if(m == n),
        (a, d) if a == d && p_w => Plan::new(Theorem::T3_4Q, None, None).detail("a=d, p|w"),
        (a, d) if a == d => Plan::new(Theorem::T3_4Q, None, Some(rad("-wd", -wi * d))).detail("a=d, p∤w"),
        (a, d) if p_w => Plan::new(Theorem::T3_4Q, Some(rad("d-a", d - a)), None)
            .detail("a≠d, p|w")
            .self_dual_if(m == n),
        (a, d) if p_w1 => Plan::new(Theorem::T3_4Q, Some(rad("wd-a", wi * d - a)), Some(rad("-wd", -wi * d)))
            .detail("a≠d, p|w-1"),
        (a, d) => Plan::new(Theorem::T3_4Q, Some(rad("d-a", d - a)), Some(rad("-wd", -wi * d)))
            .detail("a≠d, p∤w(w-1)"),
    };
    let plan = if plan.detail.is_empty() { plan.detail(format!("w={w}")) } else { plan };
    check_forced(forced, plan.theorem, &format!("a={a}, d={d}, w={w}"))?;
    assemble(orbit_source(design, &om), plan, field, n, om.entries())
}

/// Binary codes from OM1 and OM2 under a group whose orbits have length 1 or 2.
pub fn from_fixed_split_binary(
    design: &Design,
    group: &PermGroup,
    forced: Option<Theorem>,
) -> Result<(ConstructionReport, ConstructionReport)> {
    let (_, case) = binary_profile(design)?;
    let fs = fixed_split(design, group, 2, 1)?;
    fs.orbit_matrix.verify_counting_identity(design)?;
    let (theorem, p1, p2) = match case {
        WsoCase::Case1 => (Theorem::T3_1Fix, (None, None), (None, None)),
        WsoCase::Case2 => (Theorem::T3_2Fix, (Some(ONE), Some(ONE)), (Some(ONE), None)),
        WsoCase::Case3 => (Theorem::T3_3Fix, (Some(ONE), None), (Some(ONE), None)),
        WsoCase::Case4 => (Theorem::T3_4Fix, (None, Some(ONE)), (None, None)),
    };
    check_forced(forced, theorem, case.binary_name())?;
    let claim = theorem == Theorem::T3_2Fix && fs.m == fs.n;
    let f2 = Field::prime(2)?;
    let label = design.label();
    let r1 = assemble(
        format!("{label} OM1 ({}x{})", fs.f2, fs.f1),
        Plan::new(theorem, p1.0, p1.1).detail("OM1"),
        &f2,
        fs.f1,
        &fs.om1,
    )?;
    let r2 = assemble(
        format!("{label} OM2 ({}x{})", fs.m, fs.n),
        Plan::new(theorem, p2.0, p2.1).detail("OM2").self_dual_if(claim),
        &f2,
        fs.n,
        &fs.om2,
    )?;
    Ok((r1, r2))
}

/// Codes over `field` from OM1 and OM2 under a group whose orbits have
/// length 1 or `p^alpha`.
pub fn from_fixed_split_q(
    design: &Design,
    group: &PermGroup,
    field: &Field,
    alpha: u32,
    forced: Option<Theorem>,
) -> Result<(ConstructionReport, ConstructionReport)> {
    if alpha == 0 {
        return Err(Error::BadOrbitProfile("moved orbits need length p^alpha with alpha >= 1".into()));
    }
    let p = field.characteristic();
    let (a, d) = q_profile(design, p)?;
    let fs = fixed_split(design, group, p, alpha)?;
    fs.orbit_matrix.verify_counting_identity(design)?;
    let sd = fs.m == fs.n;
    let (theorem, plan1, plan2) = match (a, d) {
        (0, 0) => (Theorem::T3_1FixQ, (None, None), (None, None, false)),
        (0, d) => (
            Theorem::T3_2FixQ,
            (Some(rad("d", d)), Some(rad("-d", -d))),
            (Some(rad("d", d)), None, sd),
        ),
        (a, 0) => (Theorem::T3_3FixQ, (Some(rad("-a", -a)), None), (Some(rad("-a", -a)), None, sd)),
        (a, d) if a == d => (Theorem::T3_4FixQ, (None, Some(rad("-a", -a))), (None, None, false)),
        (a, d) => (
            Theorem::T3_4FixQ,
            (Some(rad("d-a", d - a)), Some(rad("-d", -d))),
            (Some(rad("d-a", d - a)), None, sd),
        ),
    };
    check_forced(forced, theorem, &format!("a={a}, d={d}"))?;
    let label = design.label();
    let r1 = assemble(
        format!("{label} OM1 ({}x{})", fs.f2, fs.f1),
        Plan::new(theorem, plan1.0, plan1.1).detail("OM1"),
        field,
        fs.f1,
        &fs.om1,
    )?;
    let r2 = assemble(
        format!("{label} OM2 ({}x{})", fs.m, fs.n),
        Plan::new(theorem, plan2.0, plan2.1).detail("OM2").self_dual_if(plan2.2),
        field,
        fs.n,
        &fs.om2,
    )?;
    Ok((r1, r2))
}
