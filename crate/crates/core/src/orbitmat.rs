//! Orbit matrices of a design under an automorphism group, and the split
//! into fixed and moved parts.
//!
//! Point and block orbits are ordered with fixed orbits first, then by least
//! element. Entries are checked on every block of an orbit, not only on a
//! representative, so an ill-defined matrix is caught rather than assumed
//! away.

use std::collections::HashMap;

use crate::design::{meet, Design};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::GfMatrix;
use crate::perm::{orbits_under, PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMatrix {
    entries: Vec<Vec<u32>>,
    point_orbits: Vec<Vec<u32>>,
    block_orbits: Vec<Vec<usize>>,
    k: usize,
}

impl OrbitMatrix {
    /// Orbit matrix of `design` under `group`.
    pub fn build(design: &Design, group: &PermGroup) -> Result<OrbitMatrix> {
        if group.degree() != design.v() {
            return Err(Error::DimensionMismatch(format!(
                "group of degree {} on a design with {} points",
                group.degree(),
                design.v()
            )));
        }
        let (k, _) = design.validate()?;
        let block_perms = block_actions(design, group)?;
        let point_orbits = sort_orbits(orbits_under(design.v(), group.generators()));
        let block_orbits: Vec<Vec<usize>> = sort_orbits(orbits_under(design.b(), &block_perms))
            .into_iter()
            .map(|o| o.into_iter().map(|i| i as usize).collect())
            .collect();

        let mut which = vec![0usize; design.v()];
        for (j, orbit) in point_orbits.iter().enumerate() {
            for &x in orbit {
                which[x as usize] = j;
            }
        }
        let count = |block: &[u32]| {
            let mut row = vec![0u32; point_orbits.len()];
            for &x in block {
                row[which[x as usize]] += 1;
            }
            row
        };
        let mut entries = Vec::with_capacity(block_orbits.len());
        for (s, orbit) in block_orbits.iter().enumerate() {
            let row = count(&design.blocks()[orbit[0]]);
            for &i in &orbit[1..] {
                let other = count(&design.blocks()[i]);
                if let Some(j) = (0..row.len()).find(|&j| row[j] != other[j]) {
                    return Err(Error::IllDefinedEntry { row: s, col: j });
                }
            }
            entries.push(row);
        }
        Ok(OrbitMatrix { entries, point_orbits, block_orbits, k })
    }

    /// Builds from raw parts (for matrices read from a file).
    pub fn from_parts(entries: Vec<Vec<u32>>, block_sizes: &[usize], point_sizes: &[usize]) -> Result<OrbitMatrix> {
        if entries.len() != block_sizes.len() || entries.iter().any(|r| r.len() != point_sizes.len()) {
            return Err(Error::DimensionMismatch("orbit matrix shape".into()));
        }
        let mut next = 0u32;
        let point_orbits = point_sizes
            .iter()
            .map(|&n| {
                let o: Vec<u32> = (next..next + n as u32).collect();
                next += n as u32;
                o
            })
            .collect();
        let mut next = 0usize;
        let block_orbits = block_sizes
            .iter()
            .map(|&n| {
                let o: Vec<usize> = (next..next + n).collect();
                next += n;
                o
            })
            .collect();
        let k = entries.first().map_or(0, |r| r.iter().sum::<u32>() as usize);
        Ok(OrbitMatrix { entries, point_orbits, block_orbits, k })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.point_orbits.len()
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn point_orbits(&self) -> &[Vec<u32>] {
        &self.point_orbits
    }

    pub fn block_orbits(&self) -> &[Vec<usize>] {
        &self.block_orbits
    }

    pub fn point_orbit_sizes(&self) -> Vec<usize> {
        self.point_orbits.iter().map(Vec::len).collect()
    }

    pub fn block_orbit_sizes(&self) -> Vec<usize> {
        self.block_orbits.iter().map(Vec::len).collect()
    }

    /// Common point-orbit length, if there is one.
    pub fn uniform_point_length(&self) -> Option<usize> {
        uniform(&self.point_orbit_sizes())
    }

    pub fn uniform_block_length(&self) -> Option<usize> {
        uniform(&self.block_orbit_sizes())
    }

    /// Entries reduced into the prime subfield of `field`.
    pub fn to_matrix(&self, field: &Field) -> GfMatrix {
        GfMatrix::from_integers(field, self.cols(), &self.entries)
    }

    /// Checks, for every block `x` of every orbit `s` and every orbit `t`,
    /// `Σ_j (b_t·a_tj / v_j)·a_sj = Σ_{x' ∈ B_t} |x ∩ x'|`.
    pub fn verify_counting_identity(&self, design: &Design) -> Result<()> {
        let bits = design.bitsets();
        let sizes = self.point_orbit_sizes();
        for (t, orbit_t) in self.block_orbits.iter().enumerate() {
            let b_t = orbit_t.len() as u64;
            // b_t·a_tj / v_j counts the blocks of orbit t through a point of V_j
            let per_point = sizes
                .iter()
                .enumerate()
                .map(|(j, &v_j)| {
                    let num = b_t * self.entries[t][j] as u64;
                    if num % v_j as u64 != 0 {
                        return Err(Error::IllDefinedEntry { row: t, col: j });
                    }
                    Ok(num / v_j as u64)
                })
                .collect::<Result<Vec<u64>>>()?;
            for (s, orbit_s) in self.block_orbits.iter().enumerate() {
                let lhs: u64 = per_point.iter().zip(&self.entries[s]).map(|(c, &a)| c * a as u64).sum();
                for &x in orbit_s {
                    let rhs: u64 = orbit_t.iter().map(|&y| meet(&bits[x], &bits[y]) as u64).sum();
                    if lhs != rhs {
                        return Err(Error::CountingIdentity { s, t, lhs, rhs });
                    }
                }
            }
        }
        Ok(())
    }

    /// Table of `O[s]·O[t] mod p`; needs equal block-orbit lengths.
    pub fn congruence_data(&self, p: u32) -> Result<Vec<Vec<u32>>> {
        if self.rows() > 0 && self.uniform_block_length().is_none() {
            return Err(Error::UnequalBlockOrbitLengths);
        }
        Ok(self
            .entries
            .iter()
            .map(|x| {
                self.entries
                    .iter()
                    .map(|y| (x.iter().zip(y).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p as u64) as u32)
                    .collect()
            })
            .collect())
    }

    /// Text form: header `m n w | b-sizes | v-sizes`, then the rows. `w` is
    /// the common point-orbit length, or 0 when the lengths differ.
    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let mut out = format!(
            "{} {} {} | {} | {}\n",
            self.rows(),
            self.cols(),
            self.uniform_point_length().unwrap_or(0),
            join(&self.block_orbit_sizes()),
            join(&self.point_orbit_sizes())
        );
        for row in &self.entries {
            out.push_str(&row.iter().map(u32::to_string).collect::<Vec<_>>().join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<OrbitMatrix> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty orbit matrix file".into()))?;
        let parts: Vec<&str> = header.split('|').collect();
        let [head, bs, vs] = parts[..] else {
            return Err(Error::Parse(format!("orbit matrix header {header:?}")));
        };
        let nums = |s: &str| -> Result<Vec<usize>> {
            s.split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
                .collect()
        };
        let head = nums(head)?;
        let [m, n, _w] = head[..] else {
            return Err(Error::Parse(format!("orbit matrix header {header:?}")));
        };
        let (bs, vs) = (nums(bs)?, nums(vs)?);
        if bs.len() != m || vs.len() != n {
            return Err(Error::Parse("orbit size lists disagree with m, n".into()));
        }
        let entries: Vec<Vec<u32>> = lines
            .map(|l| nums(l).map(|r| r.into_iter().map(|x| x as u32).collect()))
            .collect::<Result<_>>()?;
        if entries.len() != m {
            return Err(Error::Parse(format!("expected {m} rows, found {}", entries.len())));
        }
        OrbitMatrix::from_parts(entries, &bs, &vs)
    }
}

fn uniform(sizes: &[usize]) -> Option<usize> {
    let first = *sizes.first()?;
    sizes.iter().all(|&s| s == first).then_some(first)
}

/// Fixed orbits first, then by least element.
fn sort_orbits(mut orbits: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    orbits.sort_by_key(|o| (o.len() != 1, o[0]));
    orbits
}

/// Each generator as a permutation of block indices. Copy `i` of a repeated
/// block goes to copy `i` of its image, which keeps the action well defined.
pub(crate) fn block_actions(design: &Design, group: &PermGroup) -> Result<Vec<Permutation>> {
    let mut copies: HashMap<&[u32], Vec<usize>> = HashMap::new();
    let mut rank = vec![0usize; design.b()];
    for (i, b) in design.blocks().iter().enumerate() {
        let list = copies.entry(b.as_slice()).or_default();
        rank[i] = list.len();
        list.push(i);
    }
    group
        .generators()
        .iter()
        .map(|g| {
            let images = design
                .blocks()
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let mut img: Vec<u32> = b.iter().map(|&x| g.apply(x)).collect();
                    img.sort_unstable();
                    copies
                        .get(img.as_slice())
                        .and_then(|list| list.get(rank[i]))
                        .map(|&j| j as u32)
                        .ok_or(Error::NotAnAutomorphismGroup)
                })
                .collect::<Result<Vec<u32>>>()?;
            Permutation::new(images).map_err(|_| Error::NotAnAutomorphismGroup)
        })
        .collect()
}

/// The orbit matrix cut into fixed blocks × fixed points (`om1`) and moved
/// block orbits × moved point orbits (`om2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSplit {
    pub om1: Vec<Vec<u32>>,
    pub om2: Vec<Vec<u32>>,
    pub f1: usize,
    pub f2: usize,
    pub n: usize,
    pub m: usize,
    /// Length `p^α` of every moved orbit.
    pub orbit_len: usize,
    pub orbit_matrix: OrbitMatrix,
}

impl FixedSplit {
    pub fn om1_matrix(&self, field: &Field) -> GfMatrix {
        GfMatrix::from_integers(field, self.f1, &self.om1)
    }

    pub fn om2_matrix(&self, field: &Field) -> GfMatrix {
        GfMatrix::from_integers(field, self.n, &self.om2)
    }
}

/// Splits the orbit matrix of `design` under `group`; every orbit on points
/// and on blocks must have length 1 or `p^alpha`.
pub fn fixed_split(design: &Design, group: &PermGroup, p: u32, alpha: u32) -> Result<FixedSplit> {
    let om = OrbitMatrix::build(design, group)?;
    let len = (p as usize).pow(alpha);
    let check = |sizes: Vec<usize>, what: &str| -> Result<()> {
        match sizes.iter().find(|&&s| s != 1 && s != len) {
            Some(bad) => Err(Error::BadOrbitProfile(format!("{what} orbit of length {bad}, expected 1 or {len}"))),
            None => Ok(()),
        }
    };
    check(om.point_orbit_sizes(), "point")?;
    check(om.block_orbit_sizes(), "block")?;
    let f1 = om.point_orbits.iter().take_while(|o| o.len() == 1).count();
    let f2 = om.block_orbits.iter().take_while(|o| o.len() == 1).count();
    let om1 = om.entries[..f2].iter().map(|r| r[..f1].to_vec()).collect();
    let om2 = om.entries[f2..].iter().map(|r| r[f1..].to_vec()).collect();
    Ok(FixedSplit {
        om1,
        om2,
        f1,
        f2,
        n: om.cols() - f1,
        m: om.rows() - f2,
        orbit_len: len,
        orbit_matrix: om,
    })
}
