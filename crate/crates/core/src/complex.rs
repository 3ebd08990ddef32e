//! Ordered simplicial complexes, subcomplex pairs, simplicial maps and
//! fundamental classes.
//!
//! A simplex is stored as the strictly increasing list of its vertex indices,
//! where the index is the vertex's position in the complex's fixed vertex
//! order. Simplices of each dimension are kept in lexicographic order, which
//! is the chain basis used by every matrix in the crate.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::IntegerMatrix;

pub type Simplex = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("malformed simplex {simplex:?}: {reason}")]
    MalformedSimplex { simplex: Vec<String>, reason: String },
    #[error("degree {degree} out of range for complex of dimension {dimension}")]
    DegreeOutOfRange { degree: usize, dimension: isize },
    #[error("simplex {0:?} of the subcomplex is not a simplex of the total complex")]
    NotSubcomplex(Vec<String>),
    #[error("map is not simplicial: simplex {0:?} is not sent onto a simplex")]
    NotSimplicial(Vec<String>),
    #[error("vertex assignment is incomplete: `{0}` has no image")]
    UnassignedVertex(String),
    #[error("vertex `{0}` is not a vertex of the complex")]
    UnknownVertex(String),
    #[error("complex is not orientable: orientation conflict at face {0:?}")]
    NonOrientable(Vec<String>),
    #[error("not a pseudomanifold: {0}")]
    NotPseudoManifold(String),
}

/// Finite abstract simplicial complex with a fixed total vertex order.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.labels)
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

impl SimplicialComplex {
    /// Validates a raw simplex list and closes it under faces.
    ///
    /// `vertex_order` fixes the total vertex order; labels that appear in a
    /// simplex but not in the order are appended in order of first appearance.
    pub fn new<S: AsRef<str>>(
        vertex_order: &[S],
        simplices: &[Vec<S>],
    ) -> Result<Self, ComplexError> {
        let mut labels: Vec<String> = Vec::new();
        let mut label_index = HashMap::new();
        for v in vertex_order {
            let v = v.as_ref().to_string();
            if label_index.insert(v.clone(), labels.len()).is_some() {
                return Err(ComplexError::DuplicateVertex(v));
            }
            labels.push(v);
        }
        let mut raw = Vec::with_capacity(simplices.len());
        for s in simplices {
            let names: Vec<String> = s.iter().map(|v| v.as_ref().to_string()).collect();
            if names.is_empty() {
                return Err(ComplexError::MalformedSimplex {
                    simplex: names,
                    reason: "empty simplex".into(),
                });
            }
            let mut idx = Vec::with_capacity(names.len());
            for name in &names {
                let i = *label_index.entry(name.clone()).or_insert_with(|| {
                    labels.push(name.clone());
                    labels.len() - 1
                });
                idx.push(i);
            }
            idx.sort_unstable();
            if idx.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::MalformedSimplex {
                    simplex: names,
                    reason: "repeated vertex".into(),
                });
            }
            raw.push(idx);
        }
        Ok(Self::from_sorted_simplices(labels, raw))
    }

    /// Builds the face closure of simplices given as sorted vertex-index lists.
    fn from_sorted_simplices(labels: Vec<String>, raw: Vec<Simplex>) -> Self {
        let label_index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        // Every label is a vertex, listed or not.
        let mut vertices = BTreeSet::new();
        for i in 0..labels.len() {
            vertices.insert(vec![i]);
        }
        by_dim.push(vertices);
        for s in raw {
            add_with_faces(&mut by_dim, s);
        }
        let simplices: Vec<Vec<Simplex>> =
            by_dim.into_iter().map(|set| set.into_iter().collect()).collect();
        let simplices = if simplices.first().is_some_and(|v| v.is_empty()) {
            Vec::new()
        } else {
            simplices
        };
        let index = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { labels, label_index, simplices, index }
    }

    pub fn empty() -> Self {
        Self::from_sorted_simplices(Vec::new(), Vec::new())
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    /// Dimension, `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self, q: usize) -> &[Simplex] {
        self.simplices.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices(q).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let q = simplex.len().checked_sub(1)?;
        self.index.get(q)?.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    pub fn labels_of(&self, simplex: &[usize]) -> Vec<String> {
        simplex.iter().map(|&v| self.labels[v].clone()).collect()
    }

    /// Converts labels into a sorted simplex, if every label is known and they span a simplex.
    pub fn simplex_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Simplex, ComplexError> {
        let mut idx = Vec::with_capacity(labels.len());
        for l in labels {
            idx.push(
                self.vertex_index(l.as_ref())
                    .ok_or_else(|| ComplexError::UnknownVertex(l.as_ref().to_string()))?,
            );
        }
        idx.sort_unstable();
        let names: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::MalformedSimplex { simplex: names, reason: "repeated vertex".into() });
        }
        if !self.contains(&idx) {
            return Err(ComplexError::MalformedSimplex {
                simplex: names,
                reason: "not a simplex of the complex".into(),
            });
        }
        Ok(idx)
    }

    /// Sign of the permutation sorting `labels` into vertex order, or `None` if
    /// a label repeats. Used to read oriented simplices from user input.
    pub fn orientation_sign<S: AsRef<str>>(&self, labels: &[S]) -> Option<i32> {
        let idx: Option<Vec<usize>> = labels.iter().map(|l| self.vertex_index(l.as_ref())).collect();
        permutation_sign(&idx?)
    }

    /// Matrix of `∂_q: C_q → C_{q-1}` in the lexicographic simplex bases.
    ///
    /// The face omitting the `i`-th vertex gets sign `(-1)^i`. `∂_0` is the
    /// `0 × c_0` zero matrix.
    pub fn boundary_matrix(&self, q: usize) -> Result<IntegerMatrix, ComplexError> {
        if q as isize > self.dimension() {
            return Err(ComplexError::DegreeOutOfRange { degree: q, dimension: self.dimension() });
        }
        Ok(self.boundary_matrix_unchecked(q))
    }

    /// Like [`boundary_matrix`](Self::boundary_matrix) but returns correctly shaped
    /// (possibly empty) matrices for any degree.
    pub(crate) fn boundary_matrix_unchecked(&self, q: usize) -> IntegerMatrix {
        if q == 0 {
            return IntegerMatrix::zeros(0, self.count(0));
        }
        let mut m = IntegerMatrix::zeros(self.count(q - 1), self.count(q));
        for (j, s) in self.simplices(q).iter().enumerate() {
            for (face, sign) in faces(s) {
                let i = self.index_of(&face).expect("face closure");
                m.set(i, j, BigInt::from(sign));
            }
        }
        m
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(q, level)| if q % 2 == 0 { level.len() as i64 } else { -(level.len() as i64) })
            .sum()
    }

    /// True if every simplex is a face of some `dimension()`-simplex.
    pub fn is_pure(&self) -> bool {
        let Ok(top) = usize::try_from(self.dimension()) else {
            return true;
        };
        let mut covered: BTreeSet<Simplex> = BTreeSet::new();
        for s in self.simplices(top) {
            for face in all_faces(s) {
                covered.insert(face);
            }
        }
        self.simplices.iter().flatten().all(|s| covered.contains(s))
    }

    /// Same complex with the vertex order permuted; `order[i]` is the old index
    /// of the vertex placed at position `i`.
    pub fn reordered(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.labels.len());
        let mut new_of_old = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        let labels = order.iter().map(|&o| self.labels[o].clone()).collect();
        let top: Vec<Simplex> = self
            .simplices
            .iter()
            .flatten()
            .map(|s| {
                let mut t: Vec<usize> = s.iter().map(|&v| new_of_old[v]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        Self::from_sorted_simplices(labels, top)
    }
}

fn add_with_faces(by_dim: &mut Vec<BTreeSet<Simplex>>, s: Simplex) {
    let q = s.len() - 1;
    while by_dim.len() <= q {
        by_dim.push(BTreeSet::new());
    }
    if by_dim[q].contains(&s) {
        return;
    }
    if q > 0 {
        for (face, _) in faces(&s) {
            add_with_faces(by_dim, face);
        }
    }
    by_dim[q].insert(s);
}

/// Codimension-one faces with their incidence signs `(-1)^i`.
pub fn faces(s: &[usize]) -> impl Iterator<Item = (Simplex, i32)> + '_ {
    (0..s.len()).map(move |i| {
        let mut face = s.to_vec();
        face.remove(i);
        (face, if i % 2 == 0 { 1 } else { -1 })
    })
}

/// Every nonempty face, including the simplex itself.
fn all_faces(s: &[usize]) -> Vec<Simplex> {
    let n = s.len();
    (1u64..(1u64 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect())
        .collect()
}

/// Sign of the permutation sorting `v`, or `None` if it has repeats.
pub fn permutation_sign(v: &[usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            match v[i].cmp(&v[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some(sign)
}

/// A complex together with a subcomplex, giving the relative chain complex
/// that is free on the simplices outside the subcomplex.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialPair {
    total: Arc<SimplicialComplex>,
    sub: Arc<SimplicialComplex>,
    /// Per degree: relative basis position of each total simplex, `None` if in the subcomplex.
    rel_position: Vec<Vec<Option<usize>>>,
    rel_simplices: Vec<Vec<usize>>,
}

impl fmt::Debug for SimplicialPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialPair")
            .field("total", &self.total)
            .field("sub", &self.sub)
            .finish()
    }
}

impl SimplicialPair {
    pub fn new(
        total: Arc<SimplicialComplex>,
        sub: Arc<SimplicialComplex>,
    ) -> Result<Self, ComplexError> {
        let mut in_sub: Vec<Vec<bool>> =
            (0..=total.dimension().max(0) as usize).map(|q| vec![false; total.count(q)]).collect();
        for q in 0..=sub.dimension().max(-1) {
            for s in sub.simplices(q as usize) {
                let names = sub.labels_of(s);
                let mut mapped = Vec::with_capacity(s.len());
                for n in &names {
                    match total.vertex_index(n) {
                        Some(i) => mapped.push(i),
                        None => return Err(ComplexError::NotSubcomplex(names)),
                    }
                }
                mapped.sort_unstable();
                match total.index_of(&mapped) {
                    Some(i) => in_sub[q as usize][i] = true,
                    None => return Err(ComplexError::NotSubcomplex(names)),
                }
            }
        }
        let mut rel_position = Vec::with_capacity(in_sub.len());
        let mut rel_simplices = Vec::with_capacity(in_sub.len());
        for flags in &in_sub {
            let mut pos = Vec::with_capacity(flags.len());
            let mut list = Vec::new();
            for (i, &f) in flags.iter().enumerate() {
                if f {
                    pos.push(None);
                } else {
                    pos.push(Some(list.len()));
                    list.push(i);
                }
            }
            rel_position.push(pos);
            rel_simplices.push(list);
        }
        Ok(SimplicialPair { total, sub, rel_position, rel_simplices })
    }

    /// The pair `(K, ∅)`.
    pub fn absolute(total: Arc<SimplicialComplex>) -> Self {
        Self::new(total, Arc::new(SimplicialComplex::empty())).expect("empty subcomplex")
    }

    pub fn total(&self) -> &Arc<SimplicialComplex> {
        &self.total
    }

    pub fn sub(&self) -> &Arc<SimplicialComplex> {
        &self.sub
    }

    pub fn is_absolute(&self) -> bool {
        self.sub.is_empty()
    }

    pub fn dimension(&self) -> isize {
        self.total.dimension()
    }

    /// True if the `q`-simplex with total index `i` lies in the subcomplex.
    pub fn in_sub(&self, q: usize, i: usize) -> bool {
        self.rel_position.get(q).is_some_and(|p| p[i].is_none())
    }

    /// Number of relative `q`-chains (simplices outside the subcomplex).
    pub fn rel_count(&self, q: usize) -> usize {
        self.rel_simplices.get(q).map_or(0, Vec::len)
    }

    /// Total indices of the relative `q`-basis, in order.
    pub fn rel_basis(&self, q: usize) -> &[usize] {
        self.rel_simplices.get(q).map_or(&[], Vec::as_slice)
    }

    /// Relative basis position of the total `q`-simplex `i`.
    pub fn rel_position(&self, q: usize, i: usize) -> Option<usize> {
        self.rel_position.get(q).and_then(|p| p[i])
    }

    /// Matrix of the relative boundary `C_q(K, L) → C_{q-1}(K, L)`.
    pub fn rel_boundary(&self, q: usize) -> IntegerMatrix {
        let full = self.total.boundary_matrix_unchecked(q);
        if q == 0 {
            return IntegerMatrix::zeros(0, self.rel_count(0));
        }
        let rows = self.rel_basis(q - 1);
        let cols = self.rel_basis(q);
        IntegerMatrix::from_fn(rows.len(), cols.len(), |i, j| full.get(rows[i], cols[j]).clone())
    }

    /// Lift a relative chain to a chain on all simplices of the total complex.
    pub fn lift<T: Clone + Zero>(&self, q: usize, rel: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.total.count(q)];
        for (k, &i) in self.rel_basis(q).iter().enumerate() {
            out[i] = rel[k].clone();
        }
        out
    }

    /// Restrict a chain (or cochain) on the total complex to the relative basis.
    pub fn restrict<T: Clone>(&self, q: usize, full: &[T]) -> Vec<T> {
        self.rel_basis(q).iter().map(|&i| full[i].clone()).collect()
    }
}

/// Vertex map between complexes that sends every simplex onto a simplex.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    assignment: Vec<usize>,
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", self.source.labels[i], self.target.labels[j]))
            .collect();
        f.debug_tuple("SimplicialMap").field(&pairs).finish()
    }
}

impl SimplicialMap {
    /// Validates a label-to-label vertex assignment.
    pub fn new<S: AsRef<str>>(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        assignment: &[(S, S)],
    ) -> Result<Self, ComplexError> {
        let mut image: Vec<Option<usize>> = vec![None; source.num_vertices()];
        for (a, b) in assignment {
            let i = source
                .vertex_index(a.as_ref())
                .ok_or_else(|| ComplexError::UnknownVertex(a.as_ref().to_string()))?;
            let j = target
                .vertex_index(b.as_ref())
                .ok_or_else(|| ComplexError::UnknownVertex(b.as_ref().to_string()))?;
            image[i] = Some(j);
        }
        let assignment = image
            .into_iter()
            .enumerate()
            .map(|(i, j)| j.ok_or_else(|| ComplexError::UnassignedVertex(source.labels[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_indices(source, target, assignment)
    }

    pub fn from_indices(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        assignment: Vec<usize>,
    ) -> Result<Self, ComplexError> {
        assert_eq!(assignment.len(), source.num_vertices());
        let map = SimplicialMap { source, target, assignment };
        for q in 0..=map.source.dimension().max(-1) {
            for s in map.source.simplices(q as usize) {
                let mut img: Vec<usize> = s.iter().map(|&v| map.assignment[v]).collect();
                img.sort_unstable();
                img.dedup();
                if !map.target.contains(&img) {
                    return Err(ComplexError::NotSimplicial(map.source.labels_of(s)));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(k: Arc<SimplicialComplex>) -> Self {
        let assignment = (0..k.num_vertices()).collect();
        SimplicialMap { source: k.clone(), target: k, assignment }
    }

    /// Constant map onto the target vertex `vertex`.
    pub fn constant(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        vertex: usize,
    ) -> Self {
        let assignment = vec![vertex; source.num_vertices()];
        SimplicialMap { source, target, assignment }
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn vertex_image(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Image simplex with orientation sign, `None` when the image is degenerate.
    pub fn oriented_image(&self, simplex: &[usize]) -> Option<(Simplex, i32)> {
        let img: Vec<usize> = simplex.iter().map(|&v| self.assignment[v]).collect();
        let sign = permutation_sign(&img)?;
        let mut sorted = img;
        sorted.sort_unstable();
        Some((sorted, sign))
    }

    /// Image of a simplex as a (possibly lower-dimensional) vertex set.
    pub fn image_vertices(&self, simplex: &[usize]) -> Simplex {
        let mut img: Vec<usize> = simplex.iter().map(|&v| self.assignment[v]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// True if every simplex of `from.sub` lands in `to.sub`.
    pub fn preserves_pairs(&self, from: &SimplicialPair, to: &SimplicialPair) -> bool {
        for q in 0..=from.dimension().max(-1) {
            let q = q as usize;
            for (i, s) in from.total().simplices(q).iter().enumerate() {
                if !from.in_sub(q, i) {
                    continue;
                }
                let img = self.image_vertices(s);
                let p = img.len() - 1;
                let j = to.total().index_of(&img).expect("simplicial");
                if !to.in_sub(p, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Composite `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Option<SimplicialMap> {
        if *self.target != *other.source {
            return None;
        }
        let assignment = self.assignment.iter().map(|&v| other.assignment[v]).collect();
        Some(SimplicialMap { source: self.source.clone(), target: other.target.clone(), assignment })
    }
}

/// Coherently oriented top-dimensional chain of a pseudomanifold pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalClass {
    pair: SimplicialPair,
    dimension: usize,
    /// Coefficients on the relative top-dimensional basis.
    chain: Vec<BigInt>,
}

impl FundamentalClass {
    pub fn pair(&self) -> &SimplicialPair {
        &self.pair
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn chain(&self) -> &[BigInt] {
        &self.chain
    }
}

/// Orients `pair.total` coherently relative to `pair.sub`.
///
/// Orientation spreads across shared codimension-one faces outside the
/// subcomplex, starting with `+1` on the lexicographically first top simplex
/// of each connected piece.
pub fn fundamental_class(pair: &SimplicialPair, n: usize) -> Result<FundamentalClass, ComplexError> {
    let total = pair.total();
    if total.dimension() != n as isize {
        return Err(ComplexError::NotPseudoManifold(format!(
            "expected dimension {n}, found {}",
            total.dimension()
        )));
    }
    if !total.is_pure() {
        return Err(ComplexError::NotPseudoManifold("complex is not pure".into()));
    }
    let tops = pair.rel_basis(n).to_vec();
    if n == 0 {
        return Ok(FundamentalClass {
            pair: pair.clone(),
            dimension: 0,
            chain: vec![BigInt::one(); tops.len()],
        });
    }
    // incidences[face] = list of (relative top position, sign of face in its boundary)
    let mut incidences: HashMap<usize, Vec<(usize, i32)>> = HashMap::new();
    for (k, &t) in tops.iter().enumerate() {
        for (face, sign) in faces(&total.simplices(n)[t]) {
            let fi = total.index_of(&face).expect("closed");
            if !pair.in_sub(n - 1, fi) {
                incidences.entry(fi).or_default().push((k, sign));
            }
        }
    }
    for fi in 0..total.count(n - 1) {
        if pair.in_sub(n - 1, fi) {
            continue;
        }
        let c = incidences.get(&fi).map_or(0, Vec::len);
        if c != 2 {
            return Err(ComplexError::NotPseudoManifold(format!(
                "face {:?} lies on {c} top simplices",
                total.labels_of(&total.simplices(n - 1)[fi])
            )));
        }
    }
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); tops.len()];
    let mut face_list: Vec<_> = incidences.iter().collect();
    face_list.sort_by_key(|(fi, _)| **fi);
    for (&fi, inc) in face_list {
        let (a, b) = (inc[0].0, inc[1].0);
        adjacency[a].push((b, fi));
        adjacency[b].push((a, fi));
    }
    let face_sign = |top: usize, fi: usize| -> i32 {
        incidences[&fi].iter().find(|(k, _)| *k == top).expect("incident").1
    };
    let mut orientation: Vec<i32> = vec![0; tops.len()];
    for start in 0..tops.len() {
        if orientation[start] != 0 {
            continue;
        }
        orientation[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for &(b, fi) in &adjacency[a] {
                // coefficient of the shared face must cancel
                let want = -orientation[a] * face_sign(a, fi) * face_sign(b, fi);
                if orientation[b] == 0 {
                    orientation[b] = want;
                    queue.push_back(b);
                } else if orientation[b] != want {
                    return Err(ComplexError::NonOrientable(
                        total.labels_of(&total.simplices(n - 1)[fi]),
                    ));
                }
            }
        }
    }
    Ok(FundamentalClass {
        pair: pair.clone(),
        dimension: n,
        chain: orientation.into_iter().map(BigInt::from).collect(),
    })
}
