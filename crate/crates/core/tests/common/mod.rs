//! Shared test fixtures: small transitive groups, random group-invariant
//! designs, and independent oracles for distances, Gram matrices and the
//! orbit counting identity.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use socode::construct::{
    from_fixed_split_binary, from_fixed_split_q, from_incidence_binary, from_incidence_q, from_orbitmatrix_binary,
    from_orbitmatrix_q,
};
use socode::{ConstructionReport, Design, Error, Family, Field, GfMatrix, OrbitMatrix, PermGroup, Permutation, Theorem};

pub fn perm(n: usize, f: impl Fn(u32) -> u32) -> Permutation {
    Permutation::new((0..n as u32).map(f).collect()).unwrap()
}

pub fn cyclic(n: usize) -> PermGroup {
    PermGroup::new(n, vec![perm(n, |x| (x + 1) % n as u32)]).unwrap()
}

pub fn dihedral(n: usize) -> PermGroup {
    let m = n as u32;
    PermGroup::new(n, vec![perm(n, |x| (x + 1) % m), perm(n, |x| (m - x) % m)]).unwrap()
}

pub fn symmetric(n: usize) -> PermGroup {
    let m = n as u32;
    PermGroup::new(n, vec![perm(n, |x| (x + 1) % m), perm(n, |x| if x < 2 { 1 - x } else { x })]).unwrap()
}

pub fn alternating(n: usize) -> PermGroup {
    let gens = (0..n as u32 - 2).map(|i| perm(n, move |x| if x == i { i + 1 } else if x == i + 1 { i + 2 } else if x == i + 2 { i } else { x }));
    PermGroup::new(n, gens.collect()).unwrap()
}

/// x ↦ ax + b over Z_p.
pub fn affine(p: usize) -> PermGroup {
    let m = p as u32;
    let root = (2..m).find(|&g| (1..m - 1).all(|e| pow_mod(g, e, m) != 1)).unwrap();
    PermGroup::new(p, vec![perm(p, |x| (x + 1) % m), perm(p, |x| x * root % m)]).unwrap()
}

fn pow_mod(b: u32, e: u32, m: u32) -> u32 {
    (0..e).fold(1u64, |acc, _| acc * b as u64 % m as u64) as u32
}

/// Product action of `a × b` on `deg(a)·deg(b)` points, point `(x, y)` = `x·deg(b) + y`.
pub fn product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (na, nb) = (a.degree(), b.degree());
    let n = na * nb;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(perm(n, |z| g.apply(z / nb as u32) * nb as u32 + z % nb as u32));
    }
    for h in b.generators() {
        gens.push(perm(n, |z| (z / nb as u32) * nb as u32 + h.apply(z % nb as u32)));
    }
    PermGroup::new(n, gens).unwrap()
}

/// Transitive groups of small degree, each with its elements enumerated.
pub fn catalogue() -> Vec<(String, PermGroup)> {
    let mut out: Vec<(String, PermGroup)> = Vec::new();
    for n in 4..=16 {
        out.push((format!("Z{n}"), cyclic(n)));
    }
    for n in 4..=12 {
        out.push((format!("D{n}"), dihedral(n)));
    }
    for p in [5, 7, 11, 13] {
        out.push((format!("AGL(1,{p})"), affine(p)));
    }
    for n in 4..=7 {
        for k in 1..=3.min(n - 1) {
            out.push((format!("S{n} on {k}-sets"), symmetric(n).action_on_ksubsets(k).unwrap()));
            if n >= 5 {
                out.push((format!("A{n} on {k}-sets"), alternating(n).action_on_ksubsets(k).unwrap()));
            }
        }
    }
    let (z2, z3) = (cyclic(2), cyclic(3));
    out.push(("Z2^3".into(), product(&product(&z2, &z2), &z2)));
    out.push(("Z3xZ3".into(), product(&z3, &z3)));
    out.push(("S3xS3".into(), product(&symmetric(3), &symmetric(3))));
    out.push(("S4xZ2".into(), product(&symmetric(4), &z2)));
    out.push(("D4xZ2".into(), product(&dihedral(4), &z2)));
    out.push(("Z2xD5".into(), product(&z2, &dihedral(5))));
    out.push(("S3xZ4".into(), product(&symmetric(3), &cyclic(4))));
    for (_, g) in &out {
        g.elements().unwrap();
    }
    out
}

/// Union of the developments of `bases` (all of one size) under `g`.
pub fn develop(g: &PermGroup, bases: &[Vec<u32>]) -> Design {
    let mut blocks: BTreeSet<Vec<u32>> = BTreeSet::new();
    for b in bases {
        blocks.extend(g.set_orbit(b).unwrap().0);
    }
    Design::new(g.degree(), blocks.into_iter().collect()).unwrap()
}

pub fn random_design(rng: &mut ChaCha8Rng, g: &PermGroup) -> Design {
    let v = g.degree();
    let k = rng.gen_range(1..v);
    let count = rng.gen_range(1..=2);
    let points: Vec<u32> = (0..v as u32).collect();
    let bases: Vec<Vec<u32>> = (0..count)
        .map(|_| {
            let mut b: Vec<u32> = points.choose_multiple(rng, k).copied().collect();
            b.sort_unstable();
            b
        })
        .collect();
    develop(g, &bases)
}

fn cyclic_development(v: u32, base: &[u32]) -> Design {
    Design::new(v as usize, (0..v).map(|i| base.iter().map(|&x| (x + i) % v).collect()).collect()).unwrap()
}

fn complement(d: &Design) -> Design {
    let v = d.v() as u32;
    Design::new(d.v(), d.blocks().iter().map(|b| (0..v).filter(|x| !b.contains(x)).collect()).collect()).unwrap()
}

/// Symmetric designs whose intersection profiles random development rarely
/// produces, each with a group of automorphisms: the Fano plane under its
/// full group (found by brute force over S7), the (11,5,2) biplane and the
/// plane of order 3 under translations and a multiplier.
pub fn templates() -> Vec<(String, PermGroup, Design)> {
    let fano = cyclic_development(7, &[0, 1, 3]);
    let lines: BTreeSet<Vec<u32>> = fano.blocks().iter().cloned().collect();
    let autos: Vec<Permutation> = symmetric(7)
        .elements()
        .unwrap()
        .iter()
        .filter(|g| {
            fano.blocks().iter().all(|b| {
                let mut img: Vec<u32> = b.iter().map(|&x| g.apply(x)).collect();
                img.sort_unstable();
                lines.contains(&img)
            })
        })
        .cloned()
        .collect();
    let psl32 = PermGroup::new(7, autos).unwrap();
    let translations_and = |v: u32, mult: u32| {
        PermGroup::new(v as usize, vec![perm(v as usize, |x| (x + 1) % v), perm(v as usize, |x| x * mult % v)]).unwrap()
    };
    let biplane = cyclic_development(11, &[1, 3, 4, 5, 9]);
    let plane3 = cyclic_development(13, &[0, 1, 3, 9]);
    let out = vec![
        ("Fano".to_string(), psl32.clone(), fano.clone()),
        ("Fano complement".to_string(), psl32, complement(&fano)),
        ("biplane".to_string(), translations_and(11, 3), biplane.clone()),
        ("biplane complement".to_string(), translations_and(11, 3), complement(&biplane)),
        ("plane of order 3".to_string(), translations_and(13, 3), plane3),
    ];
    for (_, g, _) in &out {
        g.elements().unwrap();
    }
    out
}

pub fn random_element<'a>(rng: &mut ChaCha8Rng, g: &'a PermGroup) -> &'a Permutation {
    g.elements().unwrap().choose(rng).unwrap()
}

/// A random subgroup with one or two random generators.
pub fn random_subgroup(rng: &mut ChaCha8Rng, g: &PermGroup) -> PermGroup {
    let n = rng.gen_range(1..=2);
    let gens = (0..n).map(|_| random_element(rng, g).clone()).collect();
    PermGroup::new(g.degree(), gens).unwrap()
}

/// A cyclic subgroup of order `order`, if the group has such an element.
pub fn random_cyclic_of_order(rng: &mut ChaCha8Rng, g: &PermGroup, order: usize) -> Option<PermGroup> {
    let candidates: Vec<&Permutation> = g.elements().unwrap().iter().filter(|x| x.order() == order).collect();
    let x = candidates.choose(rng)?;
    Some(PermGroup::new(g.degree(), vec![(*x).clone()]).unwrap())
}

pub const QS: [u32; 6] = [2, 3, 4, 5, 7, 9];

/// A theorem branch: the tag, plus the sub-case for tags that split further.
pub type Branch = (Theorem, &'static str);

pub fn all_branches() -> Vec<Branch> {
    let mut out = Vec::new();
    for t in Theorem::all() {
        if t == Theorem::T3_4Q {
            for d in T34Q_DETAILS {
                out.push((t, *d));
            }
        } else {
            out.push((t, ""));
        }
    }
    out
}

pub const T34Q_DETAILS: &[&str] = &["a=d, p|w", "a=d, p∤w", "a≠d, p|w", "a≠d, p|w-1", "a≠d, p∤w(w-1)"];

pub fn branch_of(r: &ConstructionReport) -> Branch {
    let detail = T34Q_DETAILS.iter().find(|d| r.theorem == Theorem::T3_4Q && r.detail == **d).copied().unwrap_or("");
    (r.theorem, detail)
}

pub fn branch_name(b: &Branch) -> String {
    if b.1.is_empty() {
        b.0.tag().to_string()
    } else {
        format!("{} ({})", b.0.tag(), b.1)
    }
}

/// Errors that only mean "this random instance does not fit the theorem".
pub fn is_precondition(e: &Error) -> bool {
    !matches!(e, Error::ConstructionFailed { .. } | Error::CountingIdentity { .. })
}

/// One attempt at `family` over a random field from [`QS`] on a random
/// design. `Ok(None)` when the instance does not satisfy the hypotheses.
/// Catalogue groups for random designs, plus fixed template designs.
pub struct Pool {
    pub groups: Vec<(String, PermGroup)>,
    pub templates: Vec<(String, PermGroup, Design)>,
}

impl Pool {
    pub fn new() -> Pool {
        Pool { groups: catalogue(), templates: templates() }
    }
}

/// One construction on a random design (a template one time in five).
pub fn attempt(
    rng: &mut ChaCha8Rng,
    pool: &Pool,
    family: Family,
    forced: Option<Theorem>,
) -> Result<Option<Vec<ConstructionReport>>, String> {
    let (name, g, design) = if rng.gen_bool(0.2) {
        let (name, g, d) = pool.templates.choose(rng).unwrap();
        (name, g, d.clone())
    } else {
        let (name, g) = pool.groups.choose(rng).unwrap();
        (name, g, random_design(rng, g))
    };
    let q = match family {
        Family::IncidenceBinary | Family::OrbitBinary | Family::FixedSplitBinary => 2,
        _ => *QS.choose(rng).unwrap(),
    };
    let field = Field::with_order(q as u64).unwrap();
    let p = field.characteristic() as usize;
    let result = match family {
        Family::IncidenceBinary => from_incidence_binary(&design, forced).map(|r| vec![r]),
        Family::IncidenceQ => from_incidence_q(&design, &field, forced).map(|r| vec![r]),
        Family::OrbitBinary => from_orbitmatrix_binary(&design, &random_subgroup(rng, g), forced).map(|r| vec![r]),
        Family::OrbitQ => {
            let h = PermGroup::new(g.degree(), vec![random_element(rng, g).clone()]).unwrap();
            from_orbitmatrix_q(&design, &h, &field, forced).map(|r| vec![r])
        }
        Family::FixedSplitBinary => match random_cyclic_of_order(rng, g, 2) {
            Some(h) => from_fixed_split_binary(&design, &h, forced).map(|(a, b)| vec![a, b]),
            None => return Ok(None),
        },
        Family::FixedSplitQ => {
            let alpha = if rng.gen_bool(0.25) { 2 } else { 1 };
            match random_cyclic_of_order(rng, g, p.pow(alpha)) {
                Some(h) => from_fixed_split_q(&design, &h, &field, alpha, forced).map(|(a, b)| vec![a, b]),
                None => return Ok(None),
            }
        }
    };
    match result {
        Ok(r) => Ok(Some(r)),
        Err(e) if is_precondition(&e) => Ok(None),
        Err(e) => Err(format!("{name}, {}, q={q}: {e}", design.label())),
    }
}

// ---- independent oracles ----

/// Products in the report's field, recomputed entry by entry.
pub fn gram_is_zero(m: &GfMatrix) -> bool {
    let f = m.field();
    let rows = m.row_vecs();
    if f.degree() == 1 {
        let p = f.characteristic() as u64;
        rows.iter().all(|x| rows.iter().all(|y| x.iter().zip(y).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p == 0))
    } else {
        rows.iter().all(|x| {
            rows.iter().all(|y| x.iter().zip(y).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))) == 0)
        })
    }
}

/// Minimum distance by plain message enumeration: every message vector,
/// times every generator row, one codeword at a time.
pub fn naive_min_distance(g: &GfMatrix) -> Option<usize> {
    let f = g.field();
    let q = f.q();
    let rows = g.row_vecs();
    let k = rows.len();
    let n = g.cols();
    let mut best: Option<usize> = None;
    let total = (q as u64).pow(k as u32);
    for idx in 1..total {
        let mut word = vec![0u32; n];
        let mut rest = idx;
        for row in &rows {
            let c = (rest % q as u64) as u32;
            rest /= q as u64;
            if c != 0 {
                for (w, &x) in word.iter_mut().zip(row) {
                    *w = f.add(*w, f.mul(c, x));
                }
            }
        }
        let wt = word.iter().filter(|&&x| x != 0).count();
        if wt > 0 {
            best = Some(best.map_or(wt, |b: usize| b.min(wt)));
        }
    }
    best
}

/// The orbit counting identity for every block of every orbit, from raw sets: for orbit
/// `t` of length `b_t`, `Σ_j (b_t/|V_j|)·a_sj·a_tj = Σ_{x'∈B_t} |x ∩ x'|`.
pub fn counting_identity_holds(om: &OrbitMatrix, design: &Design) -> bool {
    let sets: Vec<HashSet<u32>> = design.blocks().iter().map(|b| b.iter().copied().collect()).collect();
    let sizes = om.point_orbit_sizes();
    let e = om.entries();
    for (t, bt) in om.block_orbits().iter().enumerate() {
        for (s, bs) in om.block_orbits().iter().enumerate() {
            let mut lhs_num = 0u64;
            let mut ok_int = true;
            for j in 0..sizes.len() {
                let num = bt.len() as u64 * e[t][j] as u64;
                ok_int &= num % sizes[j] as u64 == 0;
                lhs_num += num / sizes[j] as u64 * e[s][j] as u64;
            }
            if !ok_int {
                return false;
            }
            for &x in bs {
                let rhs: u64 = bt.iter().map(|&y| sets[x].intersection(&sets[y]).count() as u64).sum();
                if rhs != lhs_num {
                    return false;
                }
            }
        }
    }
    true
}

// ---- randomized construction campaign ----

#[derive(Debug, Default)]
pub struct Campaign {
    pub runs: usize,
    pub so_failures: Vec<String>,
    pub self_dual_checked: usize,
    pub self_dual_failures: Vec<String>,
    pub hits: std::collections::BTreeMap<String, usize>,
    pub missed_targets: usize,
}

impl Campaign {
    pub fn uncovered(&self) -> Vec<String> {
        all_branches().iter().map(branch_name).filter(|b| !self.hits.contains_key(b)).collect()
    }
}

/// `runs` constructions, cycling through every branch as the target. Each
/// run retries random instances with the target tag forced; if the target
/// is not met within `tries`, the run settles for any branch of its family.
/// Branches with no instance: each comes with the reason it is skipped as a target.
pub const UNREACHABLE: &[(&str, &str)] = &[
    ("T3.2.bin.b", "impossible: a Sylow 2-subgroup argument makes every intersection even"),
    ("T3.3.bin.b", "impossible: blocks fixed by a Sylow 2-subgroup with even point orbits have even size"),
    ("T3.4.bin.b", "impossible: forces even block size or even intersections"),
    ("T3.2.q.a", "impossible: the orbit matrix forces d = 0 mod p when a = 0 and p | w"),
    ("T3.2.bin.c", "not found: o >= 1 is impossible, o = 0 < u never occurred in directed searches"),
    ("T3.4.q (a=d, p|w)", "not found: exhaustive and directed searches produced no instance"),
];

pub fn campaign(runs: usize, seed: u64, tries: usize) -> Campaign {
    use rand::SeedableRng;
    let pool = Pool::new();
    let branches: Vec<Branch> = all_branches()
        .into_iter()
        .filter(|b| !UNREACHABLE.iter().any(|(name, _)| *name == branch_name(b)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Campaign::default();
    for run in 0..runs {
        let target = branches[run % branches.len()];
        let family = target.0.family();
        let mut reports = None;
        for _ in 0..tries {
            match attempt(&mut rng, &pool, family, Some(target.0)) {
                Ok(Some(r)) if r.iter().any(|x| branch_of(x) == target) => {
                    reports = Some(r);
                    break;
                }
                Ok(_) => {}
                Err(e) => out.so_failures.push(e),
            }
        }
        if reports.is_none() {
            out.missed_targets += 1;
            while reports.is_none() {
                match attempt(&mut rng, &pool, family, None) {
                    Ok(r) => reports = r,
                    Err(e) => out.so_failures.push(e),
                }
            }
        }
        for r in reports.unwrap() {
            *out.hits.entry(branch_name(&branch_of(&r))).or_default() += 1;
            if !gram_is_zero(r.code.generator()) || !r.code.is_self_orthogonal() {
                out.so_failures.push(format!("run {run}: {} gram nonzero over GF({})", r.theorem, r.field.q()));
            }
            if r.self_dual_claimed {
                out.self_dual_checked += 1;
                let dual = r.code.basis().null_space();
                if !dual.same_row_space(r.code.basis()) {
                    out.self_dual_failures.push(format!("run {run}: {} not self-dual", r.theorem));
                }
            }
        }
        out.runs += 1;
    }
    out
}
