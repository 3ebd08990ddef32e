//! Relative (co)homology of simplicial pairs with stored bases.
//!
//! Homology is computed integrally from Smith normal forms of the relative
//! boundary matrices. The free generators found there are the stored basis
//! for rational homology, and the rows of the coordinate matrix (which
//! annihilates boundaries) are cocycles forming the exact dual basis. Every
//! rational matrix in the crate is expressed in these coordinates.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{smith_normal_form, FgAbelianGroup, IntegerMatrix, RationalMatrix};
use crate::complex::{SimplicialMap, SimplicialPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    Homology,
    Cohomology,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("map does not carry the source subcomplex into the target subcomplex")]
    NotPairPreserving,
    #[error("map endpoints do not match the given pairs")]
    ComplexMismatch,
    #[error("chain of degree {degree} is not a relative cycle")]
    NotACycle { degree: usize },
    #[error("expected a vector of length {expected}, found {found}")]
    WrongLength { expected: usize, found: usize },
}

/// One degree of a computed (co)homology group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeGroup {
    pub group: FgAbelianGroup,
    /// Cycle (or cocycle) representatives of the free generators, on the relative basis.
    pub free_basis: Vec<Vec<BigInt>>,
    /// Representatives of the torsion generators with their orders.
    pub torsion_basis: Vec<(Vec<BigInt>, BigInt)>,
    /// `rank × chain count`; sends a cycle to its free coordinates and kills boundaries.
    coordinates: IntegerMatrix,
}

impl DegreeGroup {
    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn coordinate_matrix(&self) -> &IntegerMatrix {
        &self.coordinates
    }
}

/// Per-degree groups of a pair with stored bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGroup {
    pub variance: Variance,
    pub coefficients: Coefficients,
    degrees: Vec<DegreeGroup>,
}

impl GradedGroup {
    /// Degree `q`; degrees above the top are trivial.
    pub fn degree(&self, q: usize) -> Option<&DegreeGroup> {
        self.degrees.get(q)
    }

    pub fn group(&self, q: usize) -> FgAbelianGroup {
        self.degrees.get(q).map_or_else(FgAbelianGroup::trivial, |d| d.group.clone())
    }

    pub fn rank(&self, q: usize) -> usize {
        self.degrees.get(q).map_or(0, DegreeGroup::rank)
    }

    pub fn groups(&self) -> Vec<FgAbelianGroup> {
        self.degrees.iter().map(|d| d.group.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(DegreeGroup::rank).collect()
    }

    fn over_rationals(mut self) -> Self {
        self.coefficients = Coefficients::Rationals;
        for d in &mut self.degrees {
            d.group = FgAbelianGroup::free(d.group.rank());
            d.torsion_basis.clear();
        }
        self
    }
}

/// Homology at the middle of `C_prev --incoming--> C_q --outgoing--> C_next`.
fn middle_homology(outgoing: &IntegerMatrix, incoming: &IntegerMatrix, c_q: usize) -> DegreeGroup {
    debug_assert_eq!(outgoing.cols(), c_q);
    debug_assert_eq!(incoming.rows(), c_q);
    let out = smith_normal_form(outgoing);
    let r = out.rank();
    let kernel = out.v.columns_range(r..c_q);
    let to_kernel = out.v_inv.rows_range(r..c_q);
    let relations = &to_kernel * incoming;
    let rel = smith_normal_form(&relations);
    let factors = rel.invariant_factors();
    let k = c_q - r;
    let generators = &kernel * &rel.u_inv;
    let mut torsion_basis = Vec::new();
    for (i, d) in factors.iter().enumerate() {
        if !d.is_one() {
            torsion_basis.push((generators.column(i), d.clone()));
        }
    }
    let free_basis: Vec<Vec<BigInt>> = (factors.len()..k).map(|i| generators.column(i)).collect();
    let coordinates = &rel.u.rows_range(factors.len()..k) * &to_kernel;
    let group = FgAbelianGroup::from_cyclic_orders(
        free_basis.len(),
        torsion_basis.iter().map(|(_, d)| d.clone()),
    );
    DegreeGroup { group, free_basis, torsion_basis, coordinates }
}

fn top_degree(pair: &SimplicialPair) -> Option<usize> {
    usize::try_from(pair.dimension()).ok()
}

/// Relative homology `H_*(K, L)` with the given coefficients.
pub fn homology(pair: &SimplicialPair, coefficients: Coefficients) -> GradedGroup {
    let degrees = match top_degree(pair) {
        None => Vec::new(),
        Some(top) => (0..=top)
            .map(|q| {
                middle_homology(&pair.rel_boundary(q), &pair.rel_boundary(q + 1), pair.rel_count(q))
            })
            .collect(),
    };
    let g = GradedGroup { variance: Variance::Homology, coefficients: Coefficients::Integers, degrees };
    match coefficients {
        Coefficients::Integers => g,
        Coefficients::Rationals => g.over_rationals(),
    }
}

/// Relative cohomology `H^*(K, L)`.
///
/// Integral cohomology carries its own cocycle generators. Over the rationals
/// the stored basis is the dual of the stored homology basis, so coordinates
/// of a cocycle are its values on the homology basis.
pub fn cohomology(pair: &SimplicialPair, coefficients: Coefficients) -> GradedGroup {
    match coefficients {
        Coefficients::Integers => {
            let degrees = match top_degree(pair) {
                None => Vec::new(),
                Some(top) => (0..=top)
                    .map(|q| {
                        let outgoing = pair.rel_boundary(q + 1).transpose();
                        let incoming = pair.rel_boundary(q).transpose();
                        middle_homology(&outgoing, &incoming, pair.rel_count(q))
                    })
                    .collect(),
            };
            GradedGroup { variance: Variance::Cohomology, coefficients, degrees }
        }
        Coefficients::Rationals => {
            let h = homology(pair, Coefficients::Rationals);
            let degrees = h
                .degrees
                .into_iter()
                .map(|d| {
                    let free_basis = (0..d.coordinates.rows()).map(|i| d.coordinates.row(i).to_vec()).collect();
                    let evaluation = IntegerMatrix::from_fn(d.free_basis.len(), d.coordinates.cols(), |i, j| {
                        d.free_basis[i][j].clone()
                    });
                    DegreeGroup { group: d.group, free_basis, torsion_basis: Vec::new(), coordinates: evaluation }
                })
                .collect();
            GradedGroup { variance: Variance::Cohomology, coefficients, degrees }
        }
    }
}

/// Cochain representatives `x_j^k` with `<x_i^k, a_j^k> = δ_ij` against the stored homology basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasis {
    degrees: Vec<Vec<Vec<BigRational>>>,
}

impl DualBasis {
    pub fn degree(&self, q: usize) -> &[Vec<BigRational>] {
        self.degrees.get(q).map_or(&[], Vec::as_slice)
    }

    /// Kronecker pairing matrix of degree `q` against the given homology basis.
    pub fn pairing_matrix(&self, q: usize, basis: &[Vec<BigInt>]) -> RationalMatrix {
        let cochains = self.degree(q);
        RationalMatrix::from_fn(cochains.len(), basis.len(), |i, j| {
            kronecker(&cochains[i], &basis[j].iter().map(to_q).collect::<Vec<_>>())
        })
    }
}

/// Dual basis of a rational homology group with stored bases.
///
/// The cochains are the rows of the coordinate matrix. They vanish on
/// boundaries, so they are cocycles, and they evaluate to the identity on the
/// stored cycles.
pub fn dual_basis(g: &GradedGroup) -> DualBasis {
    assert_eq!(g.variance, Variance::Homology, "dual basis is taken of a homology basis");
    let degrees = g
        .degrees
        .iter()
        .map(|d| {
            (0..d.coordinates.rows()).map(|i| d.coordinates.row(i).iter().map(to_q).collect()).collect()
        })
        .collect();
    DualBasis { degrees }
}

pub(crate) fn to_q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

pub fn kronecker(cochain: &[BigRational], chain: &[BigRational]) -> BigRational {
    cochain
        .iter()
        .zip(chain)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
}

/// A pair together with its rational homology bases; the coordinate system
/// for everything computed on that pair.
#[derive(Clone, Debug)]
pub struct PairHomology {
    pair: Arc<SimplicialPair>,
    integral: GradedGroup,
}

impl PairHomology {
    pub fn new(pair: Arc<SimplicialPair>) -> Self {
        let integral = homology(&pair, Coefficients::Integers);
        PairHomology { pair, integral }
    }

    pub fn pair(&self) -> &Arc<SimplicialPair> {
        &self.pair
    }

    pub fn integral(&self) -> &GradedGroup {
        &self.integral
    }

    pub fn rank(&self, q: usize) -> usize {
        self.integral.rank(q)
    }

    /// Stored basis cycles of `H_q(K, L; Q)` on the relative chain basis.
    pub fn basis(&self, q: usize) -> Vec<Vec<BigRational>> {
        self.integral
            .degree(q)
            .map(|d| d.free_basis.iter().map(|c| c.iter().map(to_q).collect()).collect())
            .unwrap_or_default()
    }

    /// Stored dual cocycles of `H^q(K, L; Q)` on the relative cochain basis.
    pub fn dual(&self, q: usize) -> Vec<Vec<BigRational>> {
        self.integral
            .degree(q)
            .map(|d| (0..d.coordinates.rows()).map(|i| d.coordinates.row(i).iter().map(to_q).collect()).collect())
            .unwrap_or_default()
    }

    /// Is the relative chain a relative cycle?
    pub fn is_cycle(&self, q: usize, chain: &[BigRational]) -> bool {
        if q == 0 {
            return true;
        }
        self.pair.rel_boundary(q).to_rational().mul_vec(chain).iter().all(Zero::is_zero)
    }

    /// Coordinates of a relative cycle in the stored homology basis.
    pub fn homology_coordinates(&self, q: usize, chain: &[BigRational]) -> Vec<BigRational> {
        match self.integral.degree(q) {
            Some(d) => d.coordinates.to_rational().mul_vec(chain),
            None => Vec::new(),
        }
    }

    /// Coordinates of a relative cocycle in the stored dual basis.
    pub fn cohomology_coordinates(&self, q: usize, cochain: &[BigRational]) -> Vec<BigRational> {
        self.basis(q).iter().map(|c| kronecker(cochain, c)).collect()
    }

    /// Cycle representative of the class with the given coordinates.
    pub fn cycle_from_coordinates(&self, q: usize, coords: &[BigRational]) -> Vec<BigRational> {
        combine(&self.basis(q), coords, self.pair.rel_count(q))
    }

    /// Cocycle representative of the cohomology class with the given coordinates.
    pub fn cocycle_from_coordinates(&self, q: usize, coords: &[BigRational]) -> Vec<BigRational> {
        combine(&self.dual(q), coords, self.pair.rel_count(q))
    }
}

pub(crate) fn combine(
    vectors: &[Vec<BigRational>],
    coords: &[BigRational],
    len: usize,
) -> Vec<BigRational> {
    assert_eq!(vectors.len(), coords.len(), "coordinate count must match basis size");
    let mut out = vec![BigRational::zero(); len];
    for (v, c) in vectors.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

/// Chain map on absolute chains of the full complexes (degenerate images vanish).
pub fn absolute_chain_map(map: &SimplicialMap, q: usize) -> IntegerMatrix {
    let src = map.source();
    let tgt = map.target();
    let mut m = IntegerMatrix::zeros(tgt.count(q), src.count(q));
    for (j, s) in src.simplices(q).iter().enumerate() {
        if let Some((img, sign)) = map.oriented_image(s) {
            let i = tgt.index_of(&img).expect("simplicial map");
            m.set(i, j, BigInt::from(sign));
        }
    }
    m
}

/// Chain map between relative chain groups; images inside the target subcomplex vanish.
pub fn relative_chain_map(
    map: &SimplicialMap,
    from: &SimplicialPair,
    to: &SimplicialPair,
    q: usize,
) -> IntegerMatrix {
    let full = absolute_chain_map(map, q);
    let rows = to.rel_basis(q);
    let cols = from.rel_basis(q);
    IntegerMatrix::from_fn(rows.len(), cols.len(), |i, j| full.get(rows[i], cols[j]).clone())
}

/// Matrix of the induced map in degree `q` in the stored bases.
///
/// For homology the matrix sends coordinates in `from` to coordinates in `to`;
/// for cohomology it goes the other way and is the transpose.
pub fn induced_map(
    map: &SimplicialMap,
    from: &PairHomology,
    to: &PairHomology,
    q: usize,
    variance: Variance,
) -> Result<RationalMatrix, HomologyError> {
    if **map.source() != **from.pair().total() || **map.target() != **to.pair().total() {
        return Err(HomologyError::ComplexMismatch);
    }
    if !map.preserves_pairs(from.pair(), to.pair()) {
        return Err(HomologyError::NotPairPreserving);
    }
    let chain = relative_chain_map(map, from.pair(), to.pair(), q).to_rational();
    let columns: Vec<Vec<BigRational>> = from
        .basis(q)
        .iter()
        .map(|cycle| to.homology_coordinates(q, &chain.mul_vec(cycle)))
        .collect();
    let m = RationalMatrix::from_columns(to.rank(q), &columns);
    Ok(match variance {
        Variance::Homology => m,
        Variance::Cohomology => m.transpose(),
    })
}
