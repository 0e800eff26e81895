//! Immutable abstract simplicial complexes.
//!
//! A [`Complex`] keeps its vertex labels in a sorted table and stores every face as a strictly
//! increasing tuple of indices into that table, grouped by dimension and sorted
//! lexicographically. Iteration order is therefore deterministic, which the sampler and the
//! embedding search rely on for reproducibility.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Index;

use crate::error::{Error, Result};

/// External vertex label.
pub type Vertex = u32;

/// Face counts `(f_0, f_1, ..., f_r)`; also used for external face counts `e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FaceVector(pub Vec<u64>);

impl FaceVector {
    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Count at index `i`, zero past the end.
    pub fn get(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }
}

impl Index<usize> for FaceVector {
    type Output = u64;

    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

/// The ambient complex `Δ_n^{(r)}`: vertices `1..=n`, faces of dimension at most `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AmbientContext {
    pub n: u32,
    pub r: usize,
}

impl AmbientContext {
    pub fn new(n: u32, r: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("ambient vertex count n must be at least 1"));
        }
        Ok(AmbientContext { n, r })
    }

    /// Checks that `y` is a subcomplex of `Δ_n^{(r)}`.
    pub fn check(&self, y: &Complex) -> Result<()> {
        if y.dim() > self.r as isize {
            return Err(self.context_error(format!("dimension {} exceeds r", y.dim())));
        }
        if let Some(&v) = y.vertices().iter().find(|&&v| v == 0 || v > self.n) {
            return Err(self.context_error(format!("vertex {v} is outside 1..={}", self.n)));
        }
        Ok(())
    }

    pub fn contains(&self, y: &Complex) -> bool {
        self.check(y).is_ok()
    }

    /// The full skeleton `Δ_n^{(r)}` itself. Has `Σ C(n, i+1)` faces, so keep `n` small.
    pub fn full_skeleton(&self) -> Complex {
        let labels: Vec<Vertex> = (1..=self.n).collect();
        let k = labels.len();
        let mut faces: Vec<Vec<Vec<u32>>> = Vec::new();
        for d in 0..=self.r.min(k - 1) {
            faces.push(combinations(k as u32, d + 1));
        }
        Complex::from_levels(labels, faces)
    }

    fn context_error(&self, reason: String) -> Error {
        Error::Context { n: self.n, r: self.r, reason }
    }
}

/// All `size`-subsets of `0..k` in lexicographic order.
pub(crate) fn combinations(k: u32, size: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if size == 0 || size > k as usize {
        return out;
    }
    let mut idx: Vec<u32> = (0..size as u32).collect();
    loop {
        out.push(idx.clone());
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < k - (size - i) as u32 {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// An abstract simplicial complex on integer vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    /// Sorted external labels; position = internal id.
    labels: Vec<Vertex>,
    /// `faces[i]` holds the `i`-faces as sorted internal id tuples, sorted lexicographically.
    faces: Vec<Vec<Vec<u32>>>,
}

impl Default for Complex {
    fn default() -> Self {
        Complex::empty()
    }
}

impl Complex {
    /// The empty complex, dimension −1.
    pub fn empty() -> Self {
        Complex { labels: Vec::new(), faces: Vec::new() }
    }

    /// The downward closure of a list of facets.
    pub fn from_facets<I, F>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[Vertex]>,
    {
        let mut levels: Vec<Vec<Vec<Vertex>>> = Vec::new();
        for facet in facets {
            let mut face = facet.as_ref().to_vec();
            if face.is_empty() {
                return Err(Error::malformed("empty facet"));
            }
            face.sort_unstable();
            if face.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::malformed(format!(
                    "facet {:?} repeats a vertex",
                    facet.as_ref()
                )));
            }
            let d = face.len() - 1;
            if levels.len() <= d {
                levels.resize_with(d + 1, Vec::new);
            }
            levels[d].push(face);
        }

        for d in (1..levels.len()).rev() {
            levels[d].sort_unstable();
            levels[d].dedup();
            let mut lower = Vec::new();
            for face in &levels[d] {
                for skip in 0..face.len() {
                    lower.push(without(face, skip));
                }
            }
            levels[d - 1].extend(lower);
        }
        if let Some(first) = levels.first_mut() {
            first.sort_unstable();
            first.dedup();
        }

        let labels: Vec<Vertex> = levels.first().map(|l| l.iter().map(|f| f[0]).collect()).unwrap_or_default();
        let faces = levels
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|face| {
                        face.iter()
                            .map(|v| labels.binary_search(v).expect("closure contains vertex") as u32)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Complex::from_levels(labels, faces))
    }

    /// The full simplex on the given vertices.
    pub fn simplex(vertices: &[Vertex]) -> Result<Self> {
        Complex::from_facets([vertices])
    }

    /// Builds a complex from already-closed, sorted levels of internal ids.
    pub(crate) fn from_levels(labels: Vec<Vertex>, mut faces: Vec<Vec<Vec<u32>>>) -> Self {
        while faces.last().is_some_and(|level| level.is_empty()) {
            faces.pop();
        }
        let complex = Complex { labels, faces };
        debug_assert!(complex.invariants_hold(), "complex invariants violated");
        complex
    }

    /// Downward closure, sortedness, and vertex table consistency.
    pub fn invariants_hold(&self) -> bool {
        let k = self.labels.len();
        if !self.labels.windows(2).all(|w| w[0] < w[1]) {
            return false;
        }
        if self.faces.is_empty() {
            return k == 0;
        }
        let expected_vertices: Vec<Vec<u32>> = (0..k as u32).map(|v| vec![v]).collect();
        if self.faces[0] != expected_vertices {
            return false;
        }
        for (d, level) in self.faces.iter().enumerate() {
            if level.is_empty() || !level.windows(2).all(|w| w[0] < w[1]) {
                return false;
            }
            for face in level {
                if face.len() != d + 1 || !face.windows(2).all(|w| w[0] < w[1]) {
                    return false;
                }
                if face.iter().any(|&v| v as usize >= k) {
                    return false;
                }
                if d > 0 && (0..face.len()).any(|skip| !self.has_internal(&without(face, skip))) {
                    return false;
                }
            }
        }
        true
    }

    /// −1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_faces(&self, d: usize) -> usize {
        self.faces.get(d).map_or(0, Vec::len)
    }

    pub fn total_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// The `d`-faces as sorted label tuples, in lexicographic order.
    pub fn faces(&self, d: usize) -> impl Iterator<Item = Vec<Vertex>> + '_ {
        self.level(d).iter().map(move |face| self.to_labels(face))
    }

    /// All faces grouped by dimension.
    pub fn faces_by_dim(&self) -> Vec<Vec<Vec<Vertex>>> {
        (0..self.faces.len()).map(|d| self.faces(d).collect()).collect()
    }

    /// Faces not contained in any face one dimension up, ordered by dimension then lexicographically.
    pub fn facets(&self) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        for d in 0..self.faces.len() {
            let mut covered = vec![false; self.faces[d].len()];
            for face in self.level(d + 1) {
                for skip in 0..face.len() {
                    let sub = without(face, skip);
                    if let Ok(pos) = self.faces[d].binary_search(&sub) {
                        covered[pos] = true;
                    }
                }
            }
            for (face, covered) in self.faces[d].iter().zip(covered) {
                if !covered {
                    out.push(self.to_labels(face));
                }
            }
        }
        out
    }

    /// Whether the (not necessarily sorted) label set is a face.
    pub fn contains_face(&self, face: &[Vertex]) -> bool {
        match self.to_internal(face) {
            Some(ids) => self.has_internal(&ids),
            None => false,
        }
    }

    /// `(f_0, ..., f_r)` padded with zeros.
    pub fn f_vector(&self, r: usize) -> Result<FaceVector> {
        if self.dim() > r as isize {
            return Err(Error::DimensionCap { dim: self.dim(), r });
        }
        Ok(FaceVector((0..=r).map(|d| self.num_faces(d) as u64).collect()))
    }

    /// `(e_0, ..., e_r)`: simplices of `Δ_n^{(r)}` outside the complex whose boundary lies in it.
    pub fn external_faces(&self, ctx: &AmbientContext) -> Result<FaceVector> {
        ctx.check(self)?;
        let mut counts = vec![0u64; ctx.r + 1];
        counts[0] = u64::from(ctx.n) - self.num_vertices() as u64;
        if ctx.r >= 1 {
            let adjacency = self.adjacency();
            for (i, count) in counts.iter_mut().enumerate().skip(1) {
                let mut candidates = 0u64;
                for_each_filled_boundary(self.level(i - 1), self.num_vertices(), &adjacency, |_| {
                    candidates += 1
                });
                *count = candidates - self.num_faces(i) as u64;
            }
        }
        Ok(FaceVector(counts))
    }

    /// The external faces of dimension `i`, as label tuples in lexicographic order.
    pub fn external_face_list(&self, ctx: &AmbientContext, i: usize) -> Result<Vec<Vec<Vertex>>> {
        ctx.check(self)?;
        if i > ctx.r {
            return Ok(Vec::new());
        }
        if i == 0 {
            return Ok((1..=ctx.n)
                .filter(|v| self.labels.binary_search(v).is_err())
                .map(|v| vec![v])
                .collect());
        }
        let adjacency = self.adjacency();
        let mut out = Vec::new();
        for_each_filled_boundary(self.level(i - 1), self.num_vertices(), &adjacency, |candidate| {
            if !self.has_internal(candidate) {
                out.push(self.to_labels(candidate));
            }
        });
        Ok(out)
    }

    /// The subcomplex induced on the vertex set `w`: all faces contained in `w`.
    pub fn induced(&self, w: &[Vertex]) -> Result<Complex> {
        let mut keep = vec![false; self.num_vertices()];
        for v in w {
            match self.labels.binary_search(v) {
                Ok(pos) => keep[pos] = true,
                Err(_) => return Err(Error::domain(format!("vertex {v} is not a vertex of the complex"))),
            }
        }
        Ok(self.restrict(&keep))
    }

    /// Induced subcomplex on the internal ids flagged in `keep`.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Complex {
        let mut remap = vec![u32::MAX; self.num_vertices()];
        let mut labels = Vec::new();
        for (id, &kept) in keep.iter().enumerate() {
            if kept {
                remap[id] = labels.len() as u32;
                labels.push(self.labels[id]);
            }
        }
        let faces = self
            .faces
            .iter()
            .map(|level| {
                level
                    .iter()
                    .filter(|face| face.iter().all(|&v| keep[v as usize]))
                    .map(|face| face.iter().map(|&v| remap[v as usize]).collect())
                    .collect()
            })
            .collect();
        Complex::from_levels(labels, faces)
    }

    /// All faces of dimension at most `k`; `k = −1` gives the empty complex.
    pub fn skeleton(&self, k: isize) -> Complex {
        if k < 0 {
            return Complex::empty();
        }
        let keep = (k as usize + 1).min(self.faces.len());
        Complex::from_levels(self.labels.clone(), self.faces[..keep].to_vec())
    }

    /// Number of faces one dimension up that contain `face`.
    pub fn degree(&self, face: &[Vertex]) -> Result<usize> {
        let ids = self
            .to_internal(face)
            .filter(|ids| self.has_internal(ids))
            .ok_or_else(|| Error::domain(format!("{face:?} is not a face of the complex")))?;
        Ok(self.level(ids.len()).iter().filter(|up| is_sorted_subset(&ids, up)).count())
    }

    /// Degrees of all `d`-faces, aligned with [`Complex::faces`].
    pub fn degrees(&self, d: usize) -> Vec<u64> {
        let mut deg = vec![0u64; self.num_faces(d)];
        for up in self.level(d + 1) {
            for skip in 0..up.len() {
                let pos = self.faces[d].binary_search(&without(up, skip)).expect("closed");
                deg[pos] += 1;
            }
        }
        deg
    }

    /// `L = Σ_e (2 − deg e)` over edges.
    pub fn l_value(&self) -> i64 {
        self.degrees(1).iter().map(|&d| 2 - d as i64).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, level)| if d % 2 == 0 { level.len() as i64 } else { -(level.len() as i64) })
            .sum()
    }

    /// Every face of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.faces.len() <= other.faces.len()
            && (0..self.faces.len()).all(|d| self.faces(d).all(|face| other.contains_face(&face)))
    }

    /// Sorted neighbor lists of the 1-skeleton, by internal id.
    pub(crate) fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for edge in self.level(1) {
            adj[edge[0] as usize].push(edge[1]);
            adj[edge[1] as usize].push(edge[0]);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub(crate) fn level(&self, d: usize) -> &[Vec<u32>] {
        self.faces.get(d).map_or(&[], Vec::as_slice)
    }

    pub(crate) fn levels(&self) -> &[Vec<Vec<u32>>] {
        &self.faces
    }

    pub(crate) fn has_internal(&self, face: &[u32]) -> bool {
        face.is_empty() || self.level(face.len() - 1).binary_search_by(|f| f.as_slice().cmp(face)).is_ok()
    }

    pub(crate) fn label(&self, id: u32) -> Vertex {
        self.labels[id as usize]
    }

    pub(crate) fn to_labels(&self, face: &[u32]) -> Vec<Vertex> {
        face.iter().map(|&v| self.labels[v as usize]).collect()
    }

    /// Sorted internal ids of a label set, `None` if some label is not a vertex or repeats.
    pub(crate) fn to_internal(&self, face: &[Vertex]) -> Option<Vec<u32>> {
        let mut ids: Vec<u32> = face
            .iter()
            .map(|v| self.labels.binary_search(v).ok().map(|p| p as u32))
            .collect::<Option<_>>()?;
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(ids)
    }
}

/// Order used when listing subcomplexes: total face count, then faces dimension by dimension.
pub fn canonical_cmp(a: &Complex, b: &Complex) -> Ordering {
    a.total_faces().cmp(&b.total_faces()).then_with(|| {
        let dims = a.faces.len().max(b.faces.len());
        for d in 0..dims {
            let ord = a.faces(d).cmp(b.faces(d));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    })
}

pub(crate) fn without(face: &[u32], skip: usize) -> Vec<u32> {
    face.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect()
}

fn is_sorted_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|s| it.any(|b| b == s))
}

/// Visits, in lexicographic order, every `(d+1)`-subset of `0..num_vertices` whose boundary is
/// made of faces from `lower` (the sorted `d`-faces). Candidates for `d ≥ 1` are built by
/// extending each lower face with a larger neighbor of its last vertex.
pub(crate) fn for_each_filled_boundary(
    lower: &[Vec<u32>],
    num_vertices: usize,
    adjacency: &[Vec<u32>],
    mut visit: impl FnMut(&[u32]),
) {
    let Some(first) = lower.first() else { return };
    if first.len() == 1 {
        for a in 0..num_vertices as u32 {
            for b in a + 1..num_vertices as u32 {
                visit(&[a, b]);
            }
        }
        return;
    }
    let mut candidate: Vec<u32> = Vec::with_capacity(first.len() + 1);
    let mut probe: Vec<u32> = Vec::with_capacity(first.len());
    for tau in lower {
        let last = *tau.last().expect("nonempty face");
        let start = adjacency[last as usize].partition_point(|&v| v <= last);
        'next: for &v in &adjacency[last as usize][start..] {
            // τ itself is present; check every other facet of τ ∪ {v}.
            for skip in 0..tau.len() {
                probe.clear();
                probe.extend(tau.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x));
                probe.push(v);
                if lower.binary_search(&probe).is_err() {
                    continue 'next;
                }
            }
            candidate.clear();
            candidate.extend_from_slice(tau);
            candidate.push(v);
            visit(&candidate);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn triangle() -> Complex {
        Complex::from_facets([[1, 2, 3]]).unwrap()
    }

    #[test]
    fn closure_of_triangle() {
        let t = triangle();
        assert_eq!(t.f_vector(2).unwrap().counts(), &[3, 3, 1]);
        assert_eq!(t.dim(), 2);
        assert!(t.invariants_hold());
    }

    #[test]
    fn isolated_vertices() {
        let c = Complex::from_facets([[1u32].as_slice(), &[2]]).unwrap();
        assert_eq!(c.f_vector(1).unwrap().counts(), &[2, 0]);
        assert_eq!(c.dim(), 0);
    }

    #[test]
    fn boundary_of_tetrahedron() {
        let c = catalog::simplex_boundary(3);
        assert_eq!(c.f_vector(2).unwrap().counts(), &[4, 6, 4]);
    }

    #[test]
    fn malformed_facets_rejected() {
        assert!(matches!(Complex::from_facets([[1, 1, 2]]), Err(Error::Malformed(_))));
        assert!(matches!(Complex::from_facets([Vec::<u32>::new()]), Err(Error::Malformed(_))));
    }

    #[test]
    fn f_vector_pads_and_caps() {
        assert_eq!(Complex::empty().f_vector(1).unwrap().counts(), &[0, 0]);
        assert_eq!(Complex::empty().dim(), -1);
        assert!(matches!(triangle().f_vector(1), Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn external_faces_examples() {
        let cycle = triangle().skeleton(1);
        let ctx = AmbientContext::new(3, 2).unwrap();
        assert_eq!(cycle.external_faces(&ctx).unwrap().counts(), &[0, 0, 1]);

        let edge = Complex::from_facets([[1, 2]]).unwrap();
        let ctx = AmbientContext::new(4, 2).unwrap();
        assert_eq!(edge.external_faces(&ctx).unwrap().counts(), &[2, 0, 0]);

        let ctx = AmbientContext::new(5, 1).unwrap();
        assert_eq!(Complex::empty().external_faces(&ctx).unwrap().counts(), &[5, 0]);
    }

    #[test]
    fn external_faces_match_brute_force_over_ambient_simplices() {
        // Every simplex of Δ_n^{(r)} not in Y whose facets are all in Y.
        let ctx = AmbientContext::new(6, 3).unwrap();
        let ambient = ctx.full_skeleton();
        for y in [
            Complex::from_facets([[1, 2]]).unwrap(),
            catalog::simplex_boundary(3),
            Complex::from_facets([vec![1, 2, 3], vec![3, 4], vec![4, 5], vec![3, 5], vec![6]]).unwrap(),
        ] {
            let e = y.external_faces(&ctx).unwrap();
            for d in 0..=ctx.r {
                let brute = ambient
                    .faces(d)
                    .filter(|s| !y.contains_face(s))
                    .filter(|s| {
                        d == 0
                            || (0..s.len()).all(|skip| {
                                let sub: Vec<u32> =
                                    s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                                y.contains_face(&sub)
                            })
                    })
                    .count() as u64;
                assert_eq!(e[d], brute, "dimension {d} for {y:?}");
                assert_eq!(y.external_face_list(&ctx, d).unwrap().len() as u64, brute);
            }
        }
    }

    #[test]
    fn context_errors() {
        let ctx = AmbientContext::new(2, 2).unwrap();
        assert!(matches!(triangle().external_faces(&ctx), Err(Error::Context { .. })));
        let ctx = AmbientContext::new(3, 1).unwrap();
        assert!(matches!(triangle().external_faces(&ctx), Err(Error::Context { .. })));
        assert!(AmbientContext::new(0, 1).is_err());
    }

    #[test]
    fn induced_subcomplexes() {
        let s4 = catalog::s_t(4);
        let w = s4.induced(&[1, 2, 3, 4]).unwrap();
        assert_eq!(w.f_vector(2).unwrap().counts(), &[4, 6, 4]);
        assert_eq!(s4.induced(s4.vertices()).unwrap(), s4);
        let edge = triangle().induced(&[1, 2]).unwrap();
        assert_eq!(edge.f_vector(2).unwrap().counts(), &[2, 1, 0]);
        assert!(matches!(triangle().induced(&[1, 9]), Err(Error::Domain(_))));
    }

    #[test]
    fn skeletons() {
        assert_eq!(triangle().skeleton(1).f_vector(2).unwrap().counts(), &[3, 3, 0]);
        assert_eq!(triangle().skeleton(5), triangle());
        assert_eq!(catalog::simplex_boundary(3).skeleton(0).f_vector(0).unwrap().counts(), &[4]);
        assert!(triangle().skeleton(-1).is_empty());
    }

    #[test]
    fn degrees_and_l() {
        assert_eq!(triangle().l_value(), 3);
        assert_eq!(triangle().degree(&[1, 2]).unwrap(), 1);
        assert_eq!(triangle().degree(&[2]).unwrap(), 2);
        assert!(triangle().degree(&[1, 4]).is_err());
        for surface in [catalog::simplex_boundary(3), catalog::rp2_six(), catalog::torus_seven()] {
            assert_eq!(surface.l_value(), 0);
        }
        assert_eq!(catalog::z_complex().l_value(), -5);
        assert_eq!(catalog::z_complex().euler_characteristic(), 2);
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(catalog::simplex_boundary(3).euler_characteristic(), 2);
        assert_eq!(Complex::simplex(&[7]).unwrap().euler_characteristic(), 1);
        assert_eq!(catalog::torus_seven().euler_characteristic(), 0);
        assert_eq!(catalog::rp2_six().euler_characteristic(), 1);
    }

    #[test]
    fn facets_recover_generators() {
        let c = Complex::from_facets([vec![1, 2, 3], vec![3, 4], vec![5]]).unwrap();
        assert_eq!(c.facets(), vec![vec![5], vec![3, 4], vec![1, 2, 3]]);
        assert_eq!(Complex::from_facets(c.facets()).unwrap(), c);
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }
}
