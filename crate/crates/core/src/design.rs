//! 1-designs, their intersection profiles, and designs developed from a
//! base block under a transitive group.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::GfMatrix;
use crate::perm::PermGroup;

pub const MAX_SEARCH_ORBITS: usize = 20;

/// Incidence structure on points `0..v` with blocks kept as sorted point
/// lists. Repeated blocks are allowed and stay distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    v: usize,
    blocks: Vec<Vec<u32>>,
}

impl Design {
    pub fn new(v: usize, blocks: Vec<Vec<u32>>) -> Result<Design> {
        let mut out = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parse(format!("block {b:?} repeats a point")));
            }
            if let Some(&x) = b.iter().find(|&&x| x as usize >= v) {
                return Err(Error::PointOutOfRange { point: x as usize, degree: v });
            }
            out.push(b);
        }
        Ok(Design { v, blocks: out })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Confirms constant block size and replication number; returns `(k, r)`.
    pub fn validate(&self) -> Result<(usize, usize)> {
        let Some(first) = self.blocks.first() else {
            return Err(Error::TooFewBlocks { needed: 1 });
        };
        let k = first.len();
        if self.blocks.iter().any(|b| b.len() != k) {
            return Err(Error::NonConstantBlockSize);
        }
        let mut count = vec![0usize; self.v];
        for b in &self.blocks {
            for &x in b {
                count[x as usize] += 1;
            }
        }
        let r = count.first().copied().unwrap_or(0);
        if count.iter().any(|&c| c != r) {
            return Err(Error::NotOneDesign);
        }
        Ok((k, r))
    }

    /// `1-(v,k,r)` label; assumes the design validates.
    pub fn label(&self) -> String {
        match self.validate() {
            Ok((k, r)) => format!("1-({},{},{})", self.v, k, r),
            Err(_) => format!("({} points, {} blocks)", self.v, self.b()),
        }
    }

    /// The b×v 0/1 incidence matrix over `field`.
    pub fn incidence_matrix(&self, field: &Field) -> GfMatrix {
        let mut m = GfMatrix::zeros(field, self.b(), self.v);
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                m.set(i, x as usize, 1);
            }
        }
        m
    }

    pub fn incidence_rows(&self) -> Vec<Vec<u32>> {
        self.blocks
            .iter()
            .map(|b| {
                let mut row = vec![0u32; self.v];
                for &x in b {
                    row[x as usize] = 1;
                }
                row
            })
            .collect()
    }

    pub(crate) fn bitsets(&self) -> Vec<Vec<u64>> {
        let words = self.v.div_ceil(64);
        self.blocks
            .iter()
            .map(|b| {
                let mut bits = vec![0u64; words];
                for &x in b {
                    bits[x as usize / 64] |= 1 << (x % 64);
                }
                bits
            })
            .collect()
    }

    /// Full b×b table of intersection sizes (the diagonal holds block sizes).
    pub fn intersection_table(&self) -> Vec<Vec<u32>> {
        let bits = self.bitsets();
        bits.iter().map(|x| bits.iter().map(|y| meet(x, y)).collect()).collect()
    }

    /// Residues of the block size and of all pairwise intersections mod `p`.
    /// With fewer than two blocks the intersection condition is vacuous and
    /// `d` is reported as 0.
    pub fn intersection_profile(&self, p: u32) -> WsoProfile {
        let a = self.blocks.first().map_or(0, |b| b.len() as u32 % p);
        let bits = self.bitsets();
        let mut d = None;
        let mut constant = true;
        'outer: for i in 0..bits.len() {
            for j in i + 1..bits.len() {
                let x = meet(&bits[i], &bits[j]) % p;
                match d {
                    None => d = Some(x),
                    Some(prev) if prev != x => {
                        constant = false;
                        break 'outer;
                    }
                    _ => {}
                }
            }
        }
        let d = if constant { Some(d.unwrap_or(0)) } else { None };
        WsoProfile { p, a, d }
    }

    /// Design file text: `v b` then one block per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.v, self.b());
        for b in &self.blocks {
            let pts: Vec<String> = b.iter().map(u32::to_string).collect();
            out.push_str(&pts.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Design> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty design file".into()))?;
        let nums = parse_nums(header)?;
        let [v, b] = nums[..] else {
            return Err(Error::Parse(format!("design header {header:?}")));
        };
        let blocks: Vec<Vec<u32>> = lines.map(parse_nums).collect::<Result<_>>()?;
        if blocks.len() != b as usize {
            return Err(Error::Parse(format!("expected {b} blocks, found {}", blocks.len())));
        }
        Design::new(v as usize, blocks)
    }
}

fn parse_nums(line: &str) -> Result<Vec<u32>> {
    line.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
        .collect()
}

pub(crate) fn meet(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// The four weakly self-orthogonal cases, by whether `k` and the
/// intersection numbers vanish mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WsoCase {
    /// a = 0, d = 0
    Case1,
    /// a = 0, d ≠ 0
    Case2,
    /// a ≠ 0, d = 0
    Case3,
    /// a ≠ 0, d ≠ 0
    Case4,
}

impl WsoCase {
    pub fn number(self) -> u8 {
        match self {
            WsoCase::Case1 => 1,
            WsoCase::Case2 => 2,
            WsoCase::Case3 => 3,
            WsoCase::Case4 => 4,
        }
    }

    /// Binary names for the four cases.
    pub fn binary_name(self) -> &'static str {
        match self {
            WsoCase::Case1 => "SO",
            WsoCase::Case2 => "EvenK-OddInt",
            WsoCase::Case3 => "OddK-EvenInt",
            WsoCase::Case4 => "OddK-OddInt",
        }
    }
}

impl fmt::Display for WsoCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Case{}", self.number())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WsoProfile {
    pub p: u32,
    /// `k mod p`
    pub a: u32,
    /// Common intersection residue, `None` when not constant.
    pub d: Option<u32>,
}

impl WsoProfile {
    pub fn is_wso(&self) -> bool {
        self.d.is_some()
    }

    pub fn case(&self) -> Option<WsoCase> {
        let d = self.d?;
        Some(match (self.a == 0, d == 0) {
            (true, true) => WsoCase::Case1,
            (true, false) => WsoCase::Case2,
            (false, true) => WsoCase::Case3,
            (false, false) => WsoCase::Case4,
        })
    }
}

impl fmt::Display for WsoProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.d, self.case()) {
            (Some(d), Some(case)) => write!(f, "{case} p={} a={} d={d}", self.p, self.a),
            _ => write!(f, "non-constant parity p={} a={}", self.p, self.a),
        }
    }
}

/// A design developed from `Δ` under a transitive group, with the data
/// of the development.
#[derive(Clone, Debug)]
pub struct GroupDesign {
    pub design: Design,
    pub alpha: u32,
    pub orbit_choice: Vec<usize>,
    pub delta: Vec<u32>,
    pub stabilizer_order: usize,
    pub delta_stabilizer_order: usize,
    /// `|G_α|/|G_Δ| · Σ |αG_{δ_i}|`, summed over the chosen orbit
    /// representatives; equals the counted `r`.
    pub r_formula: usize,
}

/// Orbits of `G_α`, sorted by least element.
pub fn stabilizer_orbits(group: &PermGroup, alpha: u32) -> Result<Vec<Vec<u32>>> {
    Ok(group.stabilizer(alpha)?.point_orbits())
}

/// Develops `Δ = ∪ δ_i G_α` (the chosen stabilizer orbits) into the design
/// with blocks `{Δg : g ∈ G}`.
pub fn from_group_action(group: &PermGroup, alpha: u32, orbit_choice: &[usize]) -> Result<GroupDesign> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let stab = group.stabilizer(alpha)?;
    let orbits = stab.point_orbits();
    develop(group, &stab, &orbits, alpha, orbit_choice)
}

fn develop(
    group: &PermGroup,
    stab: &PermGroup,
    orbits: &[Vec<u32>],
    alpha: u32,
    orbit_choice: &[usize],
) -> Result<GroupDesign> {
    let mut choice: Vec<usize> = orbit_choice.to_vec();
    choice.sort_unstable();
    choice.dedup();
    if choice.is_empty() {
        return Err(Error::DeltaEmpty);
    }
    if let Some(&bad) = choice.iter().find(|&&i| i >= orbits.len()) {
        return Err(Error::Parse(format!("orbit index {bad} out of range ({} orbits)", orbits.len())));
    }
    if choice.len() == orbits.len() {
        return Err(Error::DeltaIsOmega);
    }
    let mut delta: Vec<u32> = choice.iter().flat_map(|&i| orbits[i].iter().copied()).collect();
    delta.sort_unstable();
    let (blocks, g_delta) = group.set_orbit(&delta)?;
    let design = Design::new(group.degree(), blocks)?;
    let (_, r) = design.validate()?;

    // |αG_δ| for each chosen representative δ (its least point).
    let elems = group.elements()?;
    let mut sum = 0usize;
    for &i in &choice {
        let delta_i = orbits[i][0];
        let mut images: Vec<u32> =
            elems.iter().filter(|g| g.apply(delta_i) == delta_i).map(|g| g.apply(alpha)).collect();
        images.sort_unstable();
        images.dedup();
        sum += images.len();
    }
    let stab_order = stab.order()?;
    let r_formula = stab_order * sum / g_delta;
    debug_assert_eq!(r_formula, r);
    Ok(GroupDesign {
        design,
        alpha,
        orbit_choice: choice,
        delta,
        stabilizer_order: stab_order,
        delta_stabilizer_order: g_delta,
        r_formula,
    })
}

/// One hit of [`wso_search`].
#[derive(Clone, Debug)]
pub struct SearchHit {
    pub built: GroupDesign,
    pub profile: WsoProfile,
}

impl SearchHit {
    pub fn case(&self) -> WsoCase {
        self.profile.case().expect("search keeps only WSO designs")
    }
}

/// Every proper nonempty union of `G_α`-orbits whose development is WSO
/// mod `p`, ordered by the bitmask of chosen orbits.
pub fn wso_search(group: &PermGroup, alpha: u32, p: u32) -> Result<Vec<SearchHit>> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let stab = group.stabilizer(alpha)?;
    let orbits = stab.point_orbits();
    if orbits.len() > MAX_SEARCH_ORBITS {
        return Err(Error::TooManyOrbitCombinations { orbits: orbits.len(), limit: MAX_SEARCH_ORBITS });
    }
    // warm the element cache before fanning out
    group.elements()?;
    stab.order()?;
    let full = (1u64 << orbits.len()) - 1;
    let hits: Vec<Option<SearchHit>> = (1..full)
        .into_par_iter()
        .map(|mask| -> Result<Option<SearchHit>> {
            let choice: Vec<usize> = (0..orbits.len()).filter(|i| mask >> i & 1 == 1).collect();
            let built = develop(group, &stab, &orbits, alpha, &choice)?;
            let profile = base_block_profile(&built, p);
            Ok(profile.is_wso().then_some(SearchHit { built, profile }))
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}

/// The group is transitive on blocks, so every pair of blocks is an image of
/// a pair `(Δ, B)`; checking `|Δ ∩ B|` against every other block suffices.
fn base_block_profile(built: &GroupDesign, p: u32) -> WsoProfile {
    let design = &built.design;
    let a = built.delta.len() as u32 % p;
    let bits = design.bitsets();
    let base = design.blocks().iter().position(|b| *b == built.delta).expect("Δ is a block");
    let mut d = None;
    for (j, other) in bits.iter().enumerate() {
        if j == base {
            continue;
        }
        let x = meet(&bits[base], other) % p;
        match d {
            None => d = Some(x),
            Some(prev) if prev != x => return WsoProfile { p, a, d: None },
            _ => {}
        }
    }
    WsoProfile { p, a, d: Some(d.unwrap_or(0)) }
}
