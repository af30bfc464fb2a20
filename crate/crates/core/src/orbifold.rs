//! Quotient maps on the cyclic orbifolds of the torus.
//!
//! A map on the torus that is invariant under a periodic orientation-preserving
//! homeomorphism of period `L` projects to a quotient map on a sphere carrying
//! branch points. Each branch point of index `m` sits in a face, at a vertex of
//! degree `r / m`, or (index 2 only) at the free end of a dangling semi-edge.
//! Counting rooted quotient maps reduces to counting rooted sphere maps with a
//! few special vertex degrees, which [`ConstrainedCounter`] does by edge
//! contraction.

use std::collections::HashMap;

use num_traits::Zero;

use crate::bigmath::{binomial, exact_div, factorial, BigCount};
use crate::error::{CensusError, Result};

/// Signature `O(0; [m_1, ..., m_l])` of a cyclic orbifold of the torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbifoldSignature {
    /// Branch indices, ascending.
    pub branch_indices: Vec<usize>,
    /// Period `L` of the covering homeomorphism.
    pub period: usize,
    /// Number of homeomorphism classes sharing this signature.
    pub multiplicity: usize,
}

impl OrbifoldSignature {
    /// Base surface genus; every cyclic orbifold of the torus with branch points is a sphere.
    pub fn genus(&self) -> usize {
        0
    }

    /// Compact label such as `[2,4,4]`.
    pub fn label(&self) -> String {
        let idx: Vec<String> = self.branch_indices.iter().map(|m| m.to_string()).collect();
        format!("[{}]", idx.join(","))
    }
}

/// The four sphere orbifolds of the torus: `[2^4]`, `[2,4^2]`, `[3^3]`, `[2,3,6]`.
pub fn toroidal_orbifolds() -> Vec<OrbifoldSignature> {
    let sig = |idx: &[usize], period, multiplicity| OrbifoldSignature {
        branch_indices: idx.to_vec(),
        period,
        multiplicity,
    };
    vec![
        sig(&[2, 2, 2, 2], 2, 1),
        sig(&[2, 4, 4], 4, 2),
        sig(&[3, 3, 3], 3, 2),
        sig(&[2, 3, 6], 6, 2),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BranchLocation {
    Face,
    Vertex,
    DanglingEnd,
}

/// Where each branch point goes. Points are kept sorted by `(index, location)`
/// so placements that only permute equal indices compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BranchPlacement {
    pub points: Vec<(usize, BranchLocation)>,
}

impl BranchPlacement {
    pub fn new(mut points: Vec<(usize, BranchLocation)>) -> BranchPlacement {
        points.sort();
        BranchPlacement { points }
    }

    fn at(&self, loc: BranchLocation) -> impl Iterator<Item = usize> + '_ {
        self.points
            .iter()
            .filter(move |(_, l)| *l == loc)
            .map(|(m, _)| *m)
    }

    pub fn count_at(&self, loc: BranchLocation) -> usize {
        self.at(loc).count()
    }
}

/// All placements of `sig`'s branch points admissible for degree `r`.
///
/// A vertex needs `m | r`, a dangling end needs `m = 2`. For even `r` the
/// parity of the odd-degree vertices is fixed by the placement alone and is
/// filtered here; for odd `r` it depends on the vertex count and is left to
/// [`shape_of`].
pub fn enumerate_placements(sig: &OrbifoldSignature, r: usize) -> Vec<BranchPlacement> {
    let mut out: Vec<BranchPlacement> = Vec::new();
    let mut current = Vec::with_capacity(sig.branch_indices.len());
    place(sig, r, 0, &mut current, &mut out);
    out.sort_by(|a, b| a.points.cmp(&b.points));
    out.dedup();
    out.retain(|p| {
        if r % 2 == 1 {
            return true;
        }
        let odd: usize = p.at(BranchLocation::Vertex).map(|m| r / m).sum::<usize>()
            + p.count_at(BranchLocation::DanglingEnd);
        odd % 2 == 0
    });
    out
}

fn place(
    sig: &OrbifoldSignature,
    r: usize,
    k: usize,
    current: &mut Vec<(usize, BranchLocation)>,
    out: &mut Vec<BranchPlacement>,
) {
    if k == sig.branch_indices.len() {
        out.push(BranchPlacement::new(current.clone()));
        return;
    }
    let m = sig.branch_indices[k];
    for loc in [
        BranchLocation::Face,
        BranchLocation::Vertex,
        BranchLocation::DanglingEnd,
    ] {
        let allowed = match loc {
            BranchLocation::Face => true,
            BranchLocation::Vertex => r % m == 0,
            BranchLocation::DanglingEnd => m == 2,
        };
        // equal indices are unordered: keep locations nondecreasing
        let ordered = match current.last() {
            Some(&(pm, ploc)) if pm == m => ploc <= loc,
            _ => true,
        };
        if allowed && ordered {
            current.push((m, loc));
            place(sig, r, k + 1, current, out);
            current.pop();
        }
    }
}

/// Parameters of the quotient maps for one placement and torus vertex count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientShape {
    /// Quotient vertices of degree `r`; each lifts to `L` torus vertices.
    pub regular_vertices: usize,
    /// Degrees `r / m` of the vertices carrying branch points, ascending.
    pub special_degrees: Vec<usize>,
    /// Edges joining two quotient vertices.
    pub full_edges: usize,
    /// Semi-edges ending at an index-2 branch point.
    pub dangling: usize,
    pub faces: usize,
    /// Branch indices to distribute over faces, ascending.
    pub face_indices: Vec<usize>,
    /// Darts of the quotient map; every one is a valid root.
    pub root_positions: usize,
}

impl QuotientShape {
    /// Quotient vertices, branch vertices included, dangling ends excluded.
    pub fn vertices(&self) -> usize {
        self.regular_vertices + self.special_degrees.len()
    }

    /// `V - E + F`, counting each dangling end as a leaf vertex with its own edge.
    pub fn euler_characteristic(&self) -> i64 {
        let v = (self.vertices() + self.dangling) as i64;
        let e = (self.full_edges + self.dangling) as i64;
        v - e + self.faces as i64
    }

    /// Degree sum over real vertices equals `2 full + dangling`.
    pub fn handshake_holds(&self, r: usize) -> bool {
        let degrees = r * self.regular_vertices + self.special_degrees.iter().sum::<usize>();
        degrees == 2 * self.full_edges + self.dangling
    }

    /// Torus vertex and edge counts this shape lifts to under period `period`.
    /// A special vertex of degree `r / m` lifts to `L / m = L deg / r` vertices.
    pub fn lift(&self, r: usize, period: usize) -> (usize, usize) {
        let vertices = period * self.regular_vertices
            + self
                .special_degrees
                .iter()
                .map(|&deg| period * deg / r)
                .sum::<usize>();
        let edges = period * self.full_edges + period / 2 * self.dangling;
        (vertices, edges)
    }
}

/// Solves for the quotient shape; `None` when the placement cannot occur with
/// `v` torus vertices.
pub fn shape_of(
    placement: &BranchPlacement,
    sig: &OrbifoldSignature,
    r: usize,
    v: usize,
) -> Option<QuotientShape> {
    if (r * v) % 2 == 1 {
        return None;
    }
    let period = sig.period;
    let vertex_indices: Vec<usize> = placement.at(BranchLocation::Vertex).collect();
    if vertex_indices.iter().any(|m| r % m != 0 || period % m != 0) {
        return None;
    }
    let dangling = placement.count_at(BranchLocation::DanglingEnd);
    if placement.at(BranchLocation::DanglingEnd).any(|m| m != 2) {
        return None;
    }
    let lifted: usize = vertex_indices.iter().map(|m| period / m).sum();
    if v < lifted || (v - lifted) % period != 0 {
        return None;
    }
    let regular_vertices = (v - lifted) / period;
    let mut special_degrees: Vec<usize> = vertex_indices.iter().map(|m| r / m).collect();
    special_degrees.sort_unstable();
    let degrees = r * regular_vertices + special_degrees.iter().sum::<usize>();
    if degrees < dangling || (degrees - dangling) % 2 == 1 {
        return None;
    }
    let real_vertices = regular_vertices + special_degrees.len();
    if real_vertices == 0 {
        return None;
    }
    let full_edges = (degrees - dangling) / 2;
    let faces = 2 + full_edges as i64 - real_vertices as i64;
    if faces < 1 {
        return None;
    }
    Some(QuotientShape {
        regular_vertices,
        special_degrees,
        full_edges,
        dangling,
        faces: faces as usize,
        face_indices: placement.at(BranchLocation::Face).collect(),
        root_positions: 2 * full_edges + dangling,
    })
}

/// Ways to put the face branch points into distinct faces, equal indices
/// indistinguishable: `f! / ((f - k)! prod c_m!)`.
pub fn face_assignments(faces: usize, face_indices: &[usize]) -> BigCount {
    let k = face_indices.len();
    if k > faces {
        return BigCount::zero();
    }
    let mut ways = factorial(faces as u64) / factorial((faces - k) as u64);
    let mut i = 0;
    while i < k {
        let mut j = i;
        while j < k && face_indices[j] == face_indices[i] {
            j += 1;
        }
        ways /= factorial((j - i) as u64);
        i = j;
    }
    ways
}

type Key = (usize, usize, Vec<usize>);

/// Counts rooted sphere maps whose non-root vertices have degree `r` except for
/// a small multiset of special degrees.
///
/// `rooted_at(n, d, M)` obeys
///
/// ```text
/// F(n, d, M) = F(n-1, d+r-2, M)
///            + sum over distinct δ in M of F(n-1, d+δ-2, M - {δ})
///            + sum over M1 ⊆ M, i < n, j <= d-2 of F(i, j, M1) F(n-1-i, d-2-j, M - M1)
/// ```
///
/// with `F(0, 0, {}) = 1`. The memo is keyed on the full state and shared by all
/// queries with the same `r`.
#[derive(Debug, Clone)]
pub struct ConstrainedCounter {
    r: usize,
    memo: HashMap<Key, BigCount>,
}

impl ConstrainedCounter {
    pub fn new(r: usize) -> Result<ConstrainedCounter> {
        if r < 3 {
            return Err(CensusError::InvalidArgument(format!(
                "regular degree must be at least 3, got {r}"
            )));
        }
        Ok(ConstrainedCounter {
            r,
            memo: HashMap::new(),
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Rooted maps with `n` edges, root degree `d`, non-root special degrees
    /// `specials` (any order) and all other vertices of degree `r`.
    pub fn rooted_at(&mut self, n: usize, d: usize, specials: &[usize]) -> BigCount {
        let mut m = specials.to_vec();
        m.sort_unstable();
        self.f(n, d, &m)
    }

    fn feasible(&self, n: usize, d: usize, m: &[usize]) -> bool {
        let used = d + m.iter().sum::<usize>();
        used <= 2 * n && (2 * n - used) % self.r == 0
    }

    fn f(&mut self, n: usize, d: usize, m: &[usize]) -> BigCount {
        if n == 0 {
            return BigCount::from((d == 0 && m.is_empty()) as u32);
        }
        if d == 0 || !self.feasible(n, d, m) {
            return BigCount::zero();
        }
        let key = (n, d, m.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let r = self.r;
        let mut total = self.f(n - 1, d + r - 2, m);

        let groups = group(m);
        for &(delta, _) in &groups {
            let rest = remove_one(m, delta);
            total += self.f(n - 1, d + delta - 2, &rest);
        }

        if d >= 2 {
            for (inner, outer) in splits(&groups) {
                let inner_sum: usize = inner.iter().sum();
                for i in 0..n {
                    let rest = n - 1 - i;
                    if 2 * i < inner_sum {
                        continue;
                    }
                    // inner piece: j <= 2i - sum(inner), j ≡ 2i - sum(inner) (mod r)
                    let top = (2 * i - inner_sum).min(d - 2);
                    let lo = (d - 2).saturating_sub(2 * rest);
                    let phase = (2 * i - inner_sum) % r;
                    let mut j = if phase <= top { phase } else { continue };
                    if j < lo {
                        j += (lo - j).div_ceil(r) * r;
                    }
                    while j <= top {
                        let a = self.f(i, j, &inner);
                        if !a.is_zero() {
                            let b = self.f(rest, d - 2 - j, &outer);
                            if !b.is_zero() {
                                total += a * b;
                            }
                        }
                        j += r;
                    }
                }
            }
        }
        self.memo.insert(key, total.clone());
        total
    }

    /// Rooted maps with `regular` vertices of degree `r`, the given special
    /// vertices and `leaves` dangling leaves, the root ranging over every dart
    /// except the leaves' own darts.
    ///
    /// Dangling leaves are told apart from special vertices of degree 1 by a
    /// binomial colouring factor; the root restriction is applied by double
    /// counting, `anywhere * (2E - leaves) / 2E`.
    pub fn valid_rooted(
        &mut self,
        regular: usize,
        specials: &[usize],
        leaves: usize,
    ) -> Result<BigCount> {
        let r = self.r;
        let mut all = specials.to_vec();
        all.extend(std::iter::repeat_n(1, leaves));
        all.sort_unstable();
        let degrees = r * regular + all.iter().sum::<usize>();
        if degrees % 2 == 1 || degrees == 0 {
            return Ok(BigCount::zero());
        }
        let edges = degrees / 2;
        let mut anywhere = self.f(edges, r, &all);
        for (delta, _) in group(&all) {
            let rest = remove_one(&all, delta);
            anywhere += self.f(edges, delta, &rest);
        }
        let ones = all.iter().filter(|&&x| x == 1).count();
        anywhere *= binomial(ones as i64, leaves as i64);
        let darts = BigCount::from(degrees);
        exact_div(&(anywhere * (degrees - leaves)), &darts)
    }

    /// Rooted sphere maps with `e_total` edges (leaf edges included), the given
    /// special degrees, `leaves` leaves that may not carry the root, and every
    /// other vertex of degree `r`.
    pub fn count(&mut self, specials: &[usize], leaves: usize, e_total: usize) -> Result<BigCount> {
        let used = specials.iter().sum::<usize>() + leaves;
        if used > 2 * e_total || (2 * e_total - used) % self.r != 0 {
            return Ok(BigCount::zero());
        }
        let regular = (2 * e_total - used) / self.r;
        self.valid_rooted(regular, specials, leaves)
    }

    /// Rooted quotient maps on `sig` lifting to `r`-regular torus maps with `v` vertices.
    pub fn count_quotient_maps(&mut self, sig: &OrbifoldSignature, v: usize) -> Result<BigCount> {
        let mut total = BigCount::zero();
        for placement in enumerate_placements(sig, self.r) {
            total += self.count_placement(&placement, sig, v)?;
        }
        Ok(total)
    }

    /// Contribution of a single placement.
    pub fn count_placement(
        &mut self,
        placement: &BranchPlacement,
        sig: &OrbifoldSignature,
        v: usize,
    ) -> Result<BigCount> {
        let Some(shape) = shape_of(placement, sig, self.r, v) else {
            return Ok(BigCount::zero());
        };
        let faces = face_assignments(shape.faces, &shape.face_indices);
        if faces.is_zero() {
            return Ok(faces);
        }
        let maps = self.valid_rooted(
            shape.regular_vertices,
            &shape.special_degrees,
            shape.dangling,
        )?;
        Ok(maps * faces)
    }
}

/// One-shot [`ConstrainedCounter::count`].
pub fn constrained_sphere_count(
    r: usize,
    specials: &[usize],
    leaves: usize,
    e_total: usize,
) -> Result<BigCount> {
    ConstrainedCounter::new(r)?.count(specials, leaves, e_total)
}

/// One-shot [`ConstrainedCounter::count_quotient_maps`].
pub fn count_quotient_maps(sig: &OrbifoldSignature, r: usize, v: usize) -> Result<BigCount> {
    ConstrainedCounter::new(r)?.count_quotient_maps(sig, v)
}

/// `(value, multiplicity)` pairs of a sorted multiset.
fn group(m: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &x in m {
        match out.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

fn remove_one(m: &[usize], x: usize) -> Vec<usize> {
    let mut out = m.to_vec();
    let pos = out.iter().position(|&y| y == x).expect("element present");
    out.remove(pos);
    out
}

/// Every split of a grouped multiset into `(sub, complement)`, both sorted.
fn splits(groups: &[(usize, usize)]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for &(x, c) in groups {
        let mut next = Vec::with_capacity(out.len() * (c + 1));
        for (a, b) in &out {
            for take in 0..=c {
                let mut a2 = a.clone();
                let mut b2 = b.clone();
                a2.extend(std::iter::repeat_n(x, take));
                b2.extend(std::iter::repeat_n(x, c - take));
                next.push((a2, b2));
            }
        }
        out = next;
    }
    out
}
