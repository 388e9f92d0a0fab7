//! Permutation groups given by generators, with full element enumeration.
//!
//! Points are 0-based. Groups act on the right: `x^(gh) = (x^g)^h`, so
//! `g.then(&h)` applies `g` first. Every group in scope is small enough
//! (|G| ≤ 10^6 by default) that the element list is computed outright
//! instead of through a stabilizer chain.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 1_000_000;
pub const MAX_INDUCED_DEGREE: usize = 100_000;
pub const MAX_COSET_INDEX: usize = 10_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (0..n as u32).collect() }
    }

    /// Builds a permutation of `{0..n-1}` from 0-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Permutation> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = HashSet::new();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x as usize >= n || !touched.insert(x) {
                    return Err(Error::InvalidPermutation(format!("bad cycle {cycle:?}")));
                }
                images[x as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn order(&self) -> usize {
        let mut acc = 1usize;
        for c in self.cycles() {
            acc = lcm(acc, c.len());
        }
        acc
    }

    pub fn pow(&self, e: usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..e {
            acc = acc.then(self);
        }
        acc
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start];
            while x as usize != start {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// 1-based cycle notation, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", pts.join(","))
            })
            .collect()
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 == x).count()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Orbit lengths with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitProfile(pub BTreeMap<usize, usize>);

impl OrbitProfile {
    pub fn from_orbits(orbits: &[Vec<u32>]) -> OrbitProfile {
        let mut m = BTreeMap::new();
        for o in orbits {
            *m.entry(o.len()).or_insert(0) += 1;
        }
        OrbitProfile(m)
    }

    pub fn fixed(&self) -> usize {
        self.0.get(&1).copied().unwrap_or(0)
    }

    /// The common orbit length when every orbit has the same size.
    pub fn uniform_length(&self) -> Option<usize> {
        match self.0.len() {
            1 => self.0.keys().next().copied(),
            _ => None,
        }
    }
}

impl fmt::Display for OrbitProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(len, n)| format!("{len}^{n}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: OnceLock<Vec<Permutation>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let elements = OnceLock::new();
        if let Some(e) = self.elements.get() {
            let _ = elements.set(e.clone());
        }
        PermGroup { degree: self.degree, generators: self.generators.clone(), elements }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup { degree, generators, elements: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup { degree, generators: Vec::new(), elements: OnceLock::new() }
    }

    /// Wraps a list already known to be closed under composition. A small
    /// generating set is picked greedily in sorted element order.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> PermGroup {
        elements.sort();
        elements.dedup();
        let mut generators: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
        for g in &elements {
            if !span.contains(g) {
                generators.push(g.clone());
                span = closure(degree, &generators, usize::MAX)
                    .expect("uncapped")
                    .into_iter()
                    .collect();
            }
        }
        debug_assert_eq!(span.len(), elements.len(), "element list is not a group");
        let cell = OnceLock::new();
        let _ = cell.set(elements);
        PermGroup { degree, generators, elements: cell }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements sorted by image sequence; errors if |G| exceeds `cap`.
    pub fn enumerate(&self, cap: usize) -> Result<&[Permutation]> {
        if let Some(e) = self.elements.get() {
            if e.len() > cap {
                return Err(Error::OrderExceedsCap { cap });
            }
            return Ok(e);
        }
        let mut elems = closure(self.degree, &self.generators, cap)?;
        elems.sort();
        Ok(self.elements.get_or_init(|| elems))
    }

    pub fn elements(&self) -> Result<&[Permutation]> {
        self.enumerate(DEFAULT_ORDER_CAP)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        Ok(self.elements()?.binary_search(g).is_ok())
    }

    /// Point orbits as sorted lists, ordered by least element.
    pub fn point_orbits(&self) -> Vec<Vec<u32>> {
        orbits_under(self.degree, &self.generators)
    }

    pub fn orbit_profile(&self) -> OrbitProfile {
        OrbitProfile::from_orbits(&self.point_orbits())
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.point_orbits().len() == 1
    }

    pub fn stabilizer(&self, point: u32) -> Result<PermGroup> {
        self.check_point(point)?;
        let elems: Vec<Permutation> =
            self.elements()?.iter().filter(|g| g.apply(point) == point).cloned().collect();
        Ok(PermGroup::from_elements(self.degree, elems))
    }

    /// Setwise stabilizer of a point set.
    pub fn set_stabilizer(&self, set: &[u32]) -> Result<PermGroup> {
        let target: BTreeSet<u32> = set.iter().copied().collect();
        let elems = self
            .elements()?
            .iter()
            .filter(|g| set.iter().map(|&x| g.apply(x)).collect::<BTreeSet<_>>() == target)
            .cloned()
            .collect();
        Ok(PermGroup::from_elements(self.degree, elems))
    }

    /// One element mapping `point` to each point of its orbit (the least such
    /// element in sorted order), keyed by image.
    pub fn transversal(&self, point: u32) -> Result<BTreeMap<u32, Permutation>> {
        self.check_point(point)?;
        let mut out = BTreeMap::new();
        for g in self.elements()? {
            out.entry(g.apply(point)).or_insert_with(|| g.clone());
        }
        Ok(out)
    }

    /// Distinct images `Δg`, each sorted, in sorted order; also `|G_Δ|`.
    pub fn set_orbit(&self, set: &[u32]) -> Result<(Vec<Vec<u32>>, usize)> {
        for &x in set {
            self.check_point(x)?;
        }
        let elems = self.elements()?;
        let mut images = BTreeSet::new();
        for g in elems {
            let mut img: Vec<u32> = set.iter().map(|&x| g.apply(x)).collect();
            img.sort_unstable();
            images.insert(img);
        }
        let orbit: Vec<Vec<u32>> = images.into_iter().collect();
        let stab = elems.len() / orbit.len();
        Ok((orbit, stab))
    }

    /// Induced action on the lexicographically sorted list of k-subsets.
    pub fn action_on_ksubsets(&self, k: usize) -> Result<PermGroup> {
        let subsets = ksubsets(self.degree, k, MAX_INDUCED_DEGREE)?;
        let index: HashMap<&[u32], u32> =
            subsets.iter().enumerate().map(|(i, s)| (s.as_slice(), i as u32)).collect();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let images = subsets
                    .iter()
                    .map(|s| {
                        let mut img: Vec<u32> = s.iter().map(|&x| g.apply(x)).collect();
                        img.sort_unstable();
                        index[img.as_slice()]
                    })
                    .collect();
                Permutation::new(images)
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(subsets.len(), gens)
    }

    /// Right cosets `Hg` sorted by least element, with their representatives.
    pub fn right_cosets(&self, sub: &PermGroup) -> Result<Vec<Vec<Permutation>>> {
        let g_elems = self.elements()?;
        let h_elems = sub.elements()?;
        if sub.degree != self.degree || h_elems.iter().any(|h| g_elems.binary_search(h).is_err()) {
            return Err(Error::NotASubgroup);
        }
        if g_elems.len() % h_elems.len() != 0 {
            return Err(Error::NotASubgroup);
        }
        let index = g_elems.len() / h_elems.len();
        if index > MAX_COSET_INDEX {
            return Err(Error::IndexTooLarge { index, limit: MAX_COSET_INDEX });
        }
        let mut assigned: HashSet<&Permutation> = HashSet::new();
        let mut cosets = Vec::with_capacity(index);
        for g in g_elems {
            if assigned.contains(g) {
                continue;
            }
            let mut coset: Vec<Permutation> = h_elems.iter().map(|h| h.then(g)).collect();
            coset.sort();
            for x in &coset {
                let pos = g_elems.binary_search(x).map_err(|_| Error::NotASubgroup)?;
                assigned.insert(&g_elems[pos]);
            }
            cosets.push(coset);
        }
        Ok(cosets)
    }

    /// Action of `self` on the right cosets of `sub` (degree = index).
    pub fn coset_action(&self, sub: &PermGroup) -> Result<PermGroup> {
        let cosets = self.right_cosets(sub)?;
        let mut which: HashMap<&Permutation, u32> = HashMap::new();
        for (i, c) in cosets.iter().enumerate() {
            for x in c {
                which.insert(x, i as u32);
            }
        }
        let gens = self
            .generators
            .iter()
            .map(|s| {
                let images = cosets.iter().map(|c| which[&c[0].then(s)]).collect();
                Permutation::new(images)
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(cosets.len(), gens)
    }

    /// All cyclic subgroups of prime order `p`, deduplicated, in sorted order
    /// of their element lists.
    pub fn prime_order_subgroups(&self, p: usize) -> Result<Vec<PermGroup>> {
        let mut seen: BTreeSet<Vec<Permutation>> = BTreeSet::new();
        for g in self.elements()? {
            if g.is_identity() || g.order() != p {
                continue;
            }
            let mut elems: Vec<Permutation> = (0..p).map(|e| g.pow(e)).collect();
            elems.sort();
            seen.insert(elems);
        }
        Ok(seen.into_iter().map(|e| PermGroup::from_elements(self.degree, e)).collect())
    }

    fn check_point(&self, point: u32) -> Result<()> {
        if point as usize >= self.degree {
            return Err(Error::PointOutOfRange { point: point as usize, degree: self.degree });
        }
        Ok(())
    }
}

fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::OrderExceedsCap { cap });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

pub(crate) fn orbits_under(degree: usize, gens: &[Permutation]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut orbits = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start as u32];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                let y = g.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn ksubsets(n: usize, k: usize, limit: usize) -> Result<Vec<Vec<u32>>> {
    let count = binomial(n, k);
    if count > limit as u128 {
        return Err(Error::DegreeTooLarge { degree: count.min(usize::MAX as u128) as usize, limit });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur: Vec<u32> = (0..k as u32).collect();
    if k > n {
        return Ok(out);
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if (cur[i] as usize) < n - k + i {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Parses a group file: a `degree n` line, then one generator per line in
/// 1-based cycle notation `(1,2,3)(4,5)` or as `img: i1 i2 ... in`.
/// `#` starts a comment.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut degree = None;
    let mut gens = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(n) = degree else {
            let rest = line
                .strip_prefix("degree")
                .ok_or_else(|| Error::Parse(format!("expected 'degree n', found {line:?}")))?;
            degree = Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad degree {rest:?}")))?,
            );
            continue;
        };
        let perm = if let Some(rest) = line.strip_prefix("img:") {
            let images = rest
                .split_whitespace()
                .map(|t| match t.parse::<u32>() {
                    Ok(x) if x >= 1 => Ok(x - 1),
                    _ => Err(Error::Parse(format!("bad image {t:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if images.len() != n {
                return Err(Error::Parse(format!("image list of length {} for degree {n}", images.len())));
            }
            Permutation::new(images)?
        } else {
            Permutation::from_cycles(n, &parse_cycles(line)?)?
        };
        gens.push(perm);
    }
    let degree = degree.ok_or_else(|| Error::Parse("missing degree line".into()))?;
    PermGroup::new(degree, gens)
}

fn parse_cycles(line: &str) -> Result<Vec<Vec<u32>>> {
    let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "()" {
        return Ok(Vec::new());
    }
    let mut cycles = Vec::new();
    for part in compact.split(')') {
        if part.is_empty() {
            continue;
        }
        let body = part
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("malformed cycle in {line:?}")))?;
        let cycle = body
            .split(',')
            .map(|t| match t.parse::<u32>() {
                Ok(x) if x >= 1 => Ok(x - 1),
                _ => Err(Error::Parse(format!("bad point {t:?} in {line:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Group file text in cycle notation.
pub fn format_group(group: &PermGroup) -> String {
    let mut out = format!("degree {}\n", group.degree());
    for g in group.generators() {
        out.push_str(&g.cycle_string());
        out.push('\n');
    }
    out
}
