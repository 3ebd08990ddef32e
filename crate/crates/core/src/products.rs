//! Alexander–Whitney cup and cap products and Poincaré–Lefschetz duality.
//!
//! Chain-level formulas use the complex's fixed vertex order. For a simplex
//! `σ = [v_0, ..., v_n]`:
//!
//! * `(x ⌣ y)(σ) = x([v_0..v_p]) · y([v_p..v_{p+q}])`
//! * `x ⌢ σ = x([v_0..v_q]) · [v_q..v_n]`

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::RationalMatrix;
use crate::complex::{FundamentalClass, SimplicialComplex, SimplicialPair};
use crate::homology::{to_q, PairHomology};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("classes live on different complexes")]
    DifferentComplex,
    #[error("cannot cap a degree {cochain} class with a degree {chain} class")]
    DegreeMismatch { cochain: usize, chain: usize },
    #[error("duality map in degree {degree} is not invertible; the pair is not an oriented manifold with boundary")]
    NotInvertible { degree: usize },
    #[error("fundamental class does not belong to the given pair")]
    ForeignFundamentalClass,
}

/// Cohomology class in the stored dual basis of a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub pair: Arc<SimplicialPair>,
    pub degree: usize,
    pub coords: Vec<BigRational>,
}

/// Homology class in the stored basis of a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub pair: Arc<SimplicialPair>,
    pub degree: usize,
    pub coords: Vec<BigRational>,
}

impl PairHomology {
    pub fn cohomology_class(&self, degree: usize, coords: Vec<BigRational>) -> CohomologyClass {
        assert_eq!(coords.len(), self.rank(degree));
        CohomologyClass { pair: self.pair().clone(), degree, coords }
    }

    pub fn homology_class(&self, degree: usize, coords: Vec<BigRational>) -> HomologyClass {
        assert_eq!(coords.len(), self.rank(degree));
        HomologyClass { pair: self.pair().clone(), degree, coords }
    }

    /// The class whose coordinates are the `i`-th unit vector.
    pub fn basis_homology_class(&self, degree: usize, i: usize) -> HomologyClass {
        self.homology_class(degree, unit(self.rank(degree), i))
    }

    pub fn basis_cohomology_class(&self, degree: usize, i: usize) -> CohomologyClass {
        self.cohomology_class(degree, unit(self.rank(degree), i))
    }

    /// Unit class `1 ∈ H^0`, the sum of the dual basis elements of degree zero.
    pub fn unit_class(&self) -> CohomologyClass {
        let coords = self
            .basis(0)
            .iter()
            .map(|cycle| cycle.iter().fold(BigRational::zero(), |acc, c| acc + c))
            .collect();
        self.cohomology_class(0, coords)
    }
}

pub(crate) fn unit(len: usize, i: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); len];
    v[i] = BigRational::from_integer(1.into());
    v
}

fn same_pair(a: &Arc<SimplicialPair>, b: &Arc<SimplicialPair>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Chain-level cup product of a `p`-cochain and a `q`-cochain on all simplices of `k`.
pub fn cup_cochains(
    k: &SimplicialComplex,
    p: usize,
    x: &[BigRational],
    q: usize,
    y: &[BigRational],
) -> Vec<BigRational> {
    k.simplices(p + q)
        .iter()
        .map(|s| {
            let front = k.index_of(&s[..=p]).expect("face");
            let back = k.index_of(&s[p..]).expect("face");
            if x[front].is_zero() || y[back].is_zero() {
                BigRational::zero()
            } else {
                &x[front] * &y[back]
            }
        })
        .collect()
}

/// Chain-level cap product of a `q`-cochain with an `n`-chain, on all simplices of `k`.
pub fn cap_chain(
    k: &SimplicialComplex,
    q: usize,
    x: &[BigRational],
    n: usize,
    z: &[BigRational],
) -> Vec<BigRational> {
    assert!(q <= n);
    let mut out = vec![BigRational::zero(); k.count(n - q)];
    for (s, c) in k.simplices(n).iter().zip(z) {
        if c.is_zero() {
            continue;
        }
        let front = k.index_of(&s[..=q]).expect("face");
        if x[front].is_zero() {
            continue;
        }
        let back = k.index_of(&s[q..]).expect("face");
        out[back] += c * &x[front];
    }
    out
}

/// Cup product of two cohomology classes of the same pair.
pub fn cup_product(
    h: &PairHomology,
    x: &CohomologyClass,
    y: &CohomologyClass,
) -> Result<CohomologyClass, ProductError> {
    if !same_pair(&x.pair, h.pair()) || !same_pair(&y.pair, h.pair()) {
        return Err(ProductError::DifferentComplex);
    }
    let pair = h.pair();
    let k = pair.total();
    let (p, q) = (x.degree, y.degree);
    let xc = pair.lift(p, &h.cocycle_from_coordinates(p, &x.coords));
    let yc = pair.lift(q, &h.cocycle_from_coordinates(q, &y.coords));
    if (p + q) as isize > k.dimension() {
        return Ok(h.cohomology_class(p + q, Vec::new()));
    }
    let prod = pair.restrict(p + q, &cup_cochains(k, p, &xc, q, &yc));
    Ok(h.cohomology_class(p + q, h.cohomology_coordinates(p + q, &prod)))
}

/// Cap product `H^q(X, A) ⊗ H_n(X, A) → H_{n-q}(X)`.
///
/// `relative` is the homology of `(X, A)`, `absolute` that of `(X, ∅)`.
pub fn cap_product(
    relative: &PairHomology,
    absolute: &PairHomology,
    x: &CohomologyClass,
    z: &HomologyClass,
) -> Result<HomologyClass, ProductError> {
    if !same_pair(&x.pair, relative.pair())
        || !same_pair(&z.pair, relative.pair())
        || **absolute.pair().total() != **relative.pair().total()
        || !absolute.pair().is_absolute()
    {
        return Err(ProductError::DifferentComplex);
    }
    if x.degree > z.degree {
        return Err(ProductError::DegreeMismatch { cochain: x.degree, chain: z.degree });
    }
    let pair = relative.pair();
    let cochain = pair.lift(x.degree, &relative.cocycle_from_coordinates(x.degree, &x.coords));
    let chain = pair.lift(z.degree, &relative.cycle_from_coordinates(z.degree, &z.coords));
    let out = cap_chain(pair.total(), x.degree, &cochain, z.degree, &chain);
    let d = z.degree - x.degree;
    Ok(absolute.homology_class(d, absolute.homology_coordinates(d, &out)))
}

/// `D(x) = x ⌢ O_M` and its inverse, per degree of `H^q(M, ∂M; Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityMap {
    dimension: usize,
    forward: Vec<RationalMatrix>,
    inverse: Vec<RationalMatrix>,
}

impl DualityMap {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `H^q(M, ∂M) → H_{n-q}(M)`.
    pub fn forward(&self, q: usize) -> &RationalMatrix {
        &self.forward[q]
    }

    /// `H_{n-q}(M) → H^q(M, ∂M)`.
    pub fn inverse(&self, q: usize) -> &RationalMatrix {
        &self.inverse[q]
    }
}

/// Builds the duality isomorphism from a fundamental class.
pub fn duality(
    relative: &PairHomology,
    absolute: &PairHomology,
    orientation: &FundamentalClass,
) -> Result<DualityMap, ProductError> {
    if *orientation.pair() != **relative.pair() {
        return Err(ProductError::ForeignFundamentalClass);
    }
    if **absolute.pair().total() != **relative.pair().total() || !absolute.pair().is_absolute() {
        return Err(ProductError::DifferentComplex);
    }
    let pair = relative.pair();
    let n = orientation.dimension();
    let fundamental: Vec<BigRational> = pair.lift(n, &orientation.chain().iter().map(to_q).collect::<Vec<_>>());
    let mut forward = Vec::with_capacity(n + 1);
    let mut inverse = Vec::with_capacity(n + 1);
    for q in 0..=n {
        let columns: Vec<Vec<BigRational>> = relative
            .dual(q)
            .iter()
            .map(|x| {
                let cochain = pair.lift(q, x);
                let out = cap_chain(pair.total(), q, &cochain, n, &fundamental);
                absolute.homology_coordinates(n - q, &out)
            })
            .collect();
        let d = RationalMatrix::from_columns(absolute.rank(n - q), &columns);
        let inv = d.inverse().map_err(|_| ProductError::NotInvertible { degree: q })?;
        forward.push(d);
        inverse.push(inv);
    }
    Ok(DualityMap { dimension: n, forward, inverse })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fundamental_class;
    use num_traits::One;

    fn sphere() -> Arc<SimplicialComplex> {
        Arc::new(
            SimplicialComplex::new(
                &["a", "b", "c", "d"],
                &[vec!["a", "b", "c"], vec!["a", "b", "d"], vec!["a", "c", "d"], vec!["b", "c", "d"]],
            )
            .unwrap(),
        )
    }

    #[test]
    fn unit_cap_is_identity_on_sphere() {
        let pair = Arc::new(SimplicialPair::absolute(sphere()));
        let h = PairHomology::new(pair.clone());
        let o = fundamental_class(&pair, 2).unwrap();
        let d = duality(&h, &h, &o).unwrap();
        for q in 0..=2 {
            assert!((d.forward(q) * d.inverse(q)).is_identity());
        }
        let one = h.unit_class();
        for i in 0..h.rank(2) {
            let z = h.basis_homology_class(2, i);
            assert_eq!(cap_product(&h, &h, &one, &z).unwrap().coords, z.coords);
        }
        let x = h.basis_cohomology_class(2, 0);
        let z = h.basis_homology_class(2, 0);
        let pt = cap_product(&h, &h, &x, &z).unwrap();
        assert_eq!(pt.coords, vec![BigRational::one()]);
        let bad = cap_product(&h, &h, &x, &h.basis_homology_class(0, 0));
        assert_eq!(bad, Err(ProductError::DegreeMismatch { cochain: 2, chain: 0 }));
    }

    #[test]
    fn unit_cup() {
        let pair = Arc::new(SimplicialPair::absolute(sphere()));
        let h = PairHomology::new(pair);
        let y = h.basis_cohomology_class(2, 0);
        assert_eq!(cup_product(&h, &h.unit_class(), &y).unwrap(), y);
    }
}
