//! Brute-force ground truth on labeled darts.
//!
//! A map with `n` edges is a permutation `sigma` of the darts `0..2n` (the
//! vertex rotations) together with the fixed involution `alpha` pairing `2k`
//! with `2k + 1`. Relabelings commuting with `alpha` form a group of order
//! `2^n n!`, so rooted and sensed counts follow from sums over all `sigma`.

use num_integer::Integer;

use crate::bigmath::{binomial, exact_div, factorial, BigCount};
use crate::error::{CensusError, Result};
use crate::par;

/// Darts are stored as `u8`; the dart bitmasks are `u64`.
pub const MAX_DARTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DartMap {
    sigma: Vec<u8>,
}

impl DartMap {
    pub fn new(sigma: Vec<u8>) -> Result<DartMap> {
        let k = sigma.len();
        if k == 0 || k % 2 == 1 || k > MAX_DARTS {
            return Err(CensusError::InvalidArgument(format!(
                "dart count must be even and in 2..={MAX_DARTS}, got {k}"
            )));
        }
        let mut seen = vec![false; k];
        for &x in &sigma {
            let x = x as usize;
            if x >= k || seen[x] {
                return Err(CensusError::InvalidArgument(
                    "sigma is not a permutation".into(),
                ));
            }
            seen[x] = true;
        }
        Ok(DartMap { sigma })
    }

    pub fn dart_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn edges(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn sigma(&self) -> &[u8] {
        &self.sigma
    }

    pub fn alpha(dart: u8) -> u8 {
        dart ^ 1
    }

    pub fn is_transitive(&self) -> bool {
        transitive(&self.sigma)
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut d = cycle_lengths(&self.sigma, |x| self.sigma[x as usize]);
        d.sort_unstable();
        d
    }

    pub fn faces(&self) -> usize {
        face_count(&self.sigma)
    }

    /// Orientation-preserving automorphisms.
    pub fn automorphisms(&self) -> usize {
        automorphisms(&self.sigma)
    }

    /// Conjugates by the alpha-preserving relabeling `dart -> perm(dart)`.
    pub fn relabel(&self, perm: &[u8]) -> DartMap {
        let mut out = vec![0u8; self.sigma.len()];
        for (x, &y) in self.sigma.iter().enumerate() {
            out[perm[x] as usize] = perm[y as usize];
        }
        DartMap { sigma: out }
    }
}

/// `g = (2 - v + n - f) / 2`.
pub fn genus_of(m: &DartMap) -> Result<usize> {
    if !m.is_transitive() {
        return Err(CensusError::InvalidArgument("map is not connected".into()));
    }
    let v = m.vertex_degrees().len() as i64;
    let euler = 2 - v + m.edges() as i64 - m.faces() as i64;
    if euler < 0 || euler % 2 == 1 {
        return Err(CensusError::NonIntegral(format!(
            "genus from Euler sum {euler}"
        )));
    }
    Ok((euler / 2) as usize)
}

fn cycle_lengths(sigma: &[u8], next: impl Fn(u8) -> u8) -> Vec<usize> {
    let mut seen = 0u64;
    let mut out = Vec::new();
    for start in 0..sigma.len() as u8 {
        if seen >> start & 1 == 1 {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while seen >> x & 1 == 0 {
            seen |= 1 << x;
            len += 1;
            x = next(x);
        }
        out.push(len);
    }
    out
}

fn face_count(sigma: &[u8]) -> usize {
    cycle_lengths(sigma, |x| sigma[(x ^ 1) as usize]).len()
}

fn transitive(sigma: &[u8]) -> bool {
    let k = sigma.len();
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut seen = 1u64;
    let mut stack = [0u8; MAX_DARTS];
    let mut top = 1;
    while top > 0 {
        top -= 1;
        let x = stack[top];
        for y in [sigma[x as usize], x ^ 1] {
            if seen >> y & 1 == 0 {
                seen |= 1 << y;
                stack[top] = y;
                top += 1;
            }
        }
    }
    seen == full
}

/// Counts darts `x` such that `0 -> x` extends to an automorphism.
fn automorphisms(sigma: &[u8]) -> usize {
    let k = sigma.len();
    let mut image = [u8::MAX; MAX_DARTS];
    let mut stack = [0u8; MAX_DARTS];
    let mut count = 0;
    'target: for x in 0..k as u8 {
        image[..k].fill(u8::MAX);
        image[0] = x;
        stack[0] = 0;
        let mut top = 1;
        while top > 0 {
            top -= 1;
            let y = stack[top];
            let fy = image[y as usize];
            for (a, b) in [(sigma[y as usize], sigma[fy as usize]), (y ^ 1, fy ^ 1)] {
                let slot = &mut image[a as usize];
                if *slot == u8::MAX {
                    *slot = b;
                    stack[top] = a;
                    top += 1;
                } else if *slot != b {
                    continue 'target;
                }
            }
        }
        count += 1;
    }
    count
}

/// Which vertex degrees an enumeration admits and where the root may sit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeSpec {
    /// Any degrees, root anywhere.
    Any,
    /// Every vertex of degree `r`, root anywhere.
    Regular(usize),
    /// Root vertex of degree `root_degree`, other vertices of the listed degrees.
    Rooted {
        root_degree: usize,
        others: Vec<usize>,
    },
    /// Like `Rooted`, plus a second marked dart on a different vertex of degree
    /// `marked_degree`.
    Marked {
        root_degree: usize,
        marked_degree: usize,
        others: Vec<usize>,
    },
    /// Vertices of the listed degrees plus `leaves` leaves; the root is never a leaf dart.
    Leaves { degrees: Vec<usize>, leaves: usize },
}

impl DegreeSpec {
    /// Admissible cycle types for `darts` darts, each sorted descending.
    fn cycle_types(&self, darts: usize) -> Vec<Vec<usize>> {
        let fixed = |mut t: Vec<usize>| {
            t.sort_unstable_by(|a, b| b.cmp(a));
            let ok = t.iter().sum::<usize>() == darts && t.iter().all(|&x| x > 0);
            if ok {
                vec![t]
            } else {
                Vec::new()
            }
        };
        match self {
            DegreeSpec::Any => partitions(darts),
            DegreeSpec::Regular(r) => {
                if *r == 0 || darts % r != 0 {
                    Vec::new()
                } else {
                    vec![vec![*r; darts / r]]
                }
            }
            DegreeSpec::Rooted {
                root_degree,
                others,
            } => {
                let mut t = others.clone();
                t.push(*root_degree);
                fixed(t)
            }
            DegreeSpec::Marked {
                root_degree,
                marked_degree,
                others,
            } => {
                let mut t = others.clone();
                t.push(*root_degree);
                t.push(*marked_degree);
                fixed(t)
            }
            DegreeSpec::Leaves { degrees, leaves } => {
                let mut t = degrees.clone();
                t.extend(std::iter::repeat_n(1, *leaves));
                fixed(t)
            }
        }
    }

    /// Number of valid (colouring, root dart) choices for one `sigma`.
    fn root_weight(&self, cycles: &[usize], darts: usize) -> u64 {
        match self {
            DegreeSpec::Any | DegreeSpec::Regular(_) => darts as u64,
            DegreeSpec::Rooted { root_degree, .. } => {
                cycles.iter().filter(|&&c| c == *root_degree).count() as u64 * *root_degree as u64
            }
            DegreeSpec::Marked {
                root_degree: d,
                marked_degree: i,
                ..
            } => {
                let darts_on =
                    |len: usize| (cycles.iter().filter(|&&c| c == len).count() * len) as u64;
                let pairs = darts_on(*d) * darts_on(*i);
                // both darts on one vertex is not allowed
                let same = if d == i { darts_on(*d) * *d as u64 } else { 0 };
                pairs - same
            }
            DegreeSpec::Leaves { leaves, .. } => {
                let ones = cycles.iter().filter(|&&c| c == 1).count();
                let colourings = binomial(ones as i64, *leaves as i64);
                let c: u64 = colourings.try_into().expect("small binomial");
                c * (darts - leaves) as u64
            }
        }
    }
}

/// Partitions of `n`, parts descending.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// What to accumulate over admissible maps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Tally {
    /// Sum of root weights.
    rooted: u64,
    /// Sum of automorphism group orders.
    sensed: u64,
    /// Admissible labeled maps.
    labeled: u64,
}

impl std::ops::Add for Tally {
    type Output = Tally;
    fn add(self, o: Tally) -> Tally {
        Tally {
            rooted: self.rooted + o.rooted,
            sensed: self.sensed + o.sensed,
            labeled: self.labeled + o.labeled,
        }
    }
}

struct Job<'a> {
    genus: usize,
    spec: &'a DegreeSpec,
    darts: usize,
    want_sensed: bool,
}

impl Job<'_> {
    fn visit(&self, sigma: &[u8], cycles: &[usize], tally: &mut Tally) {
        if !transitive(sigma) {
            return;
        }
        let euler = 2 + self.darts as i64 / 2 - cycles.len() as i64 - face_count(sigma) as i64;
        if euler != 2 * self.genus as i64 {
            return;
        }
        tally.labeled += 1;
        tally.rooted += self.spec.root_weight(cycles, self.darts);
        if self.want_sensed {
            tally.sensed += automorphisms(sigma) as u64;
        }
    }
}

/// A partial `sigma`: cycles laid down so far, smallest free dart always next.
#[derive(Clone)]
struct Partial {
    sigma: Vec<u8>,
    used: u64,
    remaining: Vec<usize>,
    cycles: Vec<usize>,
}

impl Partial {
    fn fill(&mut self, job: &Job<'_>, tally: &mut Tally) {
        let Some(start) = (0..job.darts as u8).find(|&x| self.used >> x & 1 == 0) else {
            job.visit(&self.sigma, &self.cycles, tally);
            return;
        };
        self.each_cycle(job.darts, start, &mut |p| p.fill(job, tally));
    }

    /// Calls `f` once for every cycle through `start` using a remaining length.
    fn each_cycle(&mut self, darts: usize, start: u8, f: &mut dyn FnMut(&mut Partial)) {
        let mut lengths = self.remaining.clone();
        lengths.dedup();
        for len in lengths {
            let pos = self
                .remaining
                .iter()
                .position(|&x| x == len)
                .expect("length present");
            self.remaining.remove(pos);
            self.cycles.push(len);
            self.used |= 1 << start;
            self.extend(darts, start, start, len - 1, f);
            self.used &= !(1 << start);
            self.cycles.pop();
            self.remaining.insert(pos, len);
        }
    }

    fn extend(
        &mut self,
        darts: usize,
        start: u8,
        last: u8,
        left: usize,
        f: &mut dyn FnMut(&mut Partial),
    ) {
        if left == 0 {
            self.sigma[last as usize] = start;
            f(self);
            return;
        }
        for x in 0..darts as u8 {
            if self.used >> x & 1 == 1 {
                continue;
            }
            self.used |= 1 << x;
            self.sigma[last as usize] = x;
            self.extend(darts, start, x, left - 1, f);
            self.used &= !(1 << x);
        }
    }
}

fn enumerate(
    genus: usize,
    spec: &DegreeSpec,
    n: usize,
    budget: usize,
    want_sensed: bool,
) -> Result<Tally> {
    let darts = 2 * n;
    if darts > budget || darts > MAX_DARTS {
        return Err(CensusError::BudgetExceeded { darts, budget });
    }
    if n == 0 {
        return Ok(Tally::default());
    }
    let job = Job {
        genus,
        spec,
        darts,
        want_sensed,
    };
    // one work item per choice of the cycle through dart 0
    let mut seeds = Vec::new();
    for cycle_type in spec.cycle_types(darts) {
        let mut root = Partial {
            sigma: vec![0; darts],
            used: 0,
            remaining: cycle_type,
            cycles: Vec::new(),
        };
        root.each_cycle(darts, 0, &mut |p| seeds.push(p.clone()));
    }
    let tallies = par::map(seeds, |mut p| {
        let mut t = Tally::default();
        p.fill(&job, &mut t);
        t
    });
    Ok(tallies.into_iter().fold(Tally::default(), |a, b| a + b))
}

fn relabelings(n: usize) -> BigCount {
    factorial(n as u64) << n
}

/// Rooted maps of genus `genus` with `n` edges whose degrees satisfy `spec`.
pub fn count_rooted_oracle(
    genus: usize,
    spec: &DegreeSpec,
    n: usize,
    budget_darts: usize,
) -> Result<BigCount> {
    let tally = enumerate(genus, spec, n, budget_darts, false)?;
    if n == 0 {
        return Ok(BigCount::from(0u32));
    }
    exact_div(&BigCount::from(tally.rooted), &relabelings(n))
}

/// Maps up to orientation-preserving isomorphism, by Burnside over relabelings.
pub fn count_sensed_oracle(
    genus: usize,
    spec: &DegreeSpec,
    n: usize,
    budget_darts: usize,
) -> Result<BigCount> {
    let tally = enumerate(genus, spec, n, budget_darts, true)?;
    if n == 0 {
        return Ok(BigCount::from(0u32));
    }
    exact_div(&BigCount::from(tally.sensed), &relabelings(n))
}

/// Rooted and sensed counts from a single enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCounts {
    pub rooted: BigCount,
    pub sensed: BigCount,
}

pub fn count_both_oracle(
    genus: usize,
    spec: &DegreeSpec,
    n: usize,
    budget_darts: usize,
) -> Result<OracleCounts> {
    let tally = enumerate(genus, spec, n, budget_darts, true)?;
    if n == 0 {
        let zero = BigCount::from(0u32);
        return Ok(OracleCounts {
            rooted: zero.clone(),
            sensed: zero,
        });
    }
    Ok(OracleCounts {
        rooted: exact_div(&BigCount::from(tally.rooted), &relabelings(n))?,
        sensed: exact_div(&BigCount::from(tally.sensed), &relabelings(n))?,
    })
}

/// Labeled maps and whether every one has a trivial root stabilizer, i.e.
/// `labeled * 2n` equals the rooted sum for specs that allow any root.
pub fn free_action_holds(genus: usize, r: usize, n: usize, budget_darts: usize) -> Result<bool> {
    let tally = enumerate(genus, &DegreeSpec::Regular(r), n, budget_darts, false)?;
    let total = BigCount::from(tally.labeled) * (2 * n) as u64;
    Ok(total.is_multiple_of(&relabelings(n)) && tally.rooted == tally.labeled * (2 * n) as u64)
}
