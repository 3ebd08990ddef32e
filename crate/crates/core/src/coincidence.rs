//! Coincidence invariants of a pair of simplicial maps `f, g: W → M`.
//!
//! For a class `z ∈ H_n(W, W∖V; Q)` with `f(W∖V) ⊂ ∂M`:
//!
//! * `Θ_q = D⁻¹ g_*(f^*(-) ⌢ z)` on `H^q(M, ∂M; Q)`,
//! * `L_z(f, g) = Σ_q (-1)^q tr Θ_q`,
//! * the index pairing `<I_fg(τ), z> = (-1)^n L_z(f, g)`.
//!
//! The pairing is evaluated through that identity; the Thom class on `M × M`
//! is never built. Independently, [`CoincidenceProblem::lefschetz_homomorphism`]
//! expands `Λ_fg(z) = Σ_k (-1)^{k(k+m)} Σ_j x_j^k ⌢ g_* f_!^z(a_j^k)` over the
//! stored bases, which gives a second route to the same number.
//!
//! # Sign conventions
//!
//! With the cap product `x ⌢ [v_0..v_n] = x([v_0..v_q]) [v_q..v_n]` and the
//! stored bases, `L_z(id, id) = χ(M)` on closed `M` with `z = O_M`, and for even
//! codimension the augmentation of `Λ_fg(z)` equals `(-1)^n L_z(f, g)` exactly
//! ([`DEGREE_ZERO_SIGN`] `= +1`). For odd codimension the expansion weights
//! degree `k` by `+1` instead of `(-1)^k`, so the two routes only agree when the
//! odd-degree traces of `g_* f_!` cancel.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{trace, AlgebraError, RationalMatrix};
use crate::complex::{fundamental_class, ComplexError, FundamentalClass, Simplex, SimplicialMap, SimplicialPair};
use crate::homology::{absolute_chain_map, to_q, PairHomology};
use crate::products::{cap_chain, duality, DualityMap, ProductError};

/// Global sign relating the two routes: `aug Λ_fg(z) = ε · (-1)^n · L_z(f, g)`
/// (even codimension).
pub const DEGREE_ZERO_SIGN: i32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoincidenceError {
    #[error("f does not carry the subcomplex W∖V into ∂M")]
    PairViolation,
    #[error("{0}")]
    MapMismatch(String),
    #[error("z is not a relative cycle of degree {0}")]
    NotACycle(usize),
    #[error("z has {found} coefficients, expected {expected}")]
    WrongChainLength { expected: usize, found: usize },
    #[error("degree {degree} outside 0..={n}")]
    DegreeOutOfRange { degree: usize, n: usize },
    #[error("coincidence number {0} is not an integer")]
    NonIntegerResult(BigRational),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Everything about `(W, W∖V)`, `(M, ∂M)`, `f`, `g` that does not depend on `z`.
#[derive(Debug)]
pub struct CoincidenceSetup {
    domain: PairHomology,
    domain_absolute: PairHomology,
    target: PairHomology,
    target_absolute: PairHomology,
    f: SimplicialMap,
    g: SimplicialMap,
    orientation: FundamentalClass,
    duality: DualityMap,
    n: usize,
    m: isize,
}

impl CoincidenceSetup {
    /// `domain` is `(W, W∖V)`, `target` is `(M, ∂M)`, `orientation` its fundamental class.
    pub fn new(
        domain: SimplicialPair,
        target: SimplicialPair,
        f: SimplicialMap,
        g: SimplicialMap,
        orientation: FundamentalClass,
    ) -> Result<Self, CoincidenceError> {
        for (name, map) in [("f", &f), ("g", &g)] {
            if **map.source() != **domain.total() {
                return Err(CoincidenceError::MapMismatch(format!("{name} is not defined on W")));
            }
            if **map.target() != **target.total() {
                return Err(CoincidenceError::MapMismatch(format!("{name} does not map into M")));
            }
        }
        if !f.preserves_pairs(&domain, &target) {
            return Err(CoincidenceError::PairViolation);
        }
        if *orientation.pair() != target {
            return Err(ProductError::ForeignFundamentalClass.into());
        }
        let n = orientation.dimension();
        let m = domain.dimension() - n as isize;
        let domain_absolute = PairHomology::new(Arc::new(SimplicialPair::absolute(domain.total().clone())));
        let target_absolute = PairHomology::new(Arc::new(SimplicialPair::absolute(target.total().clone())));
        let domain = PairHomology::new(Arc::new(domain));
        let target = PairHomology::new(Arc::new(target));
        let duality = duality(&target, &target_absolute, &orientation)?;
        Ok(CoincidenceSetup {
            domain,
            domain_absolute,
            target,
            target_absolute,
            f,
            g,
            orientation,
            duality,
            n,
            m,
        })
    }

    /// Orients `(M, ∂M)` itself before building the setup.
    pub fn with_computed_orientation(
        domain: SimplicialPair,
        target: SimplicialPair,
        f: SimplicialMap,
        g: SimplicialMap,
    ) -> Result<Self, CoincidenceError> {
        let n = usize::try_from(target.dimension())
            .map_err(|_| ComplexError::NotPseudoManifold("empty target".into()))?;
        let orientation = fundamental_class(&target, n)?;
        Self::new(domain, target, f, g, orientation)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim W − n`.
    pub fn codimension(&self) -> isize {
        self.m
    }

    pub fn domain(&self) -> &PairHomology {
        &self.domain
    }

    pub fn domain_absolute(&self) -> &PairHomology {
        &self.domain_absolute
    }

    pub fn target(&self) -> &PairHomology {
        &self.target
    }

    pub fn target_absolute(&self) -> &PairHomology {
        &self.target_absolute
    }

    pub fn f(&self) -> &SimplicialMap {
        &self.f
    }

    pub fn g(&self) -> &SimplicialMap {
        &self.g
    }

    pub fn orientation(&self) -> &FundamentalClass {
        &self.orientation
    }

    pub fn duality(&self) -> &DualityMap {
        &self.duality
    }

    /// Pulls a relative cocycle of `(M, ∂M)` back along `f` to a cochain on all `q`-simplices of `W`.
    fn pull_back(&self, q: usize, relative_cocycle: &[BigRational]) -> Vec<BigRational> {
        let lifted = self.target.pair().lift(q, relative_cocycle);
        absolute_chain_map(&self.f, q).to_rational().vec_mul(&lifted)
    }

    /// `f^*(x) ⌢ z` as a chain on all `(n − q)`-simplices of `W`.
    fn pull_back_and_cap(&self, q: usize, relative_cocycle: &[BigRational], z_full: &[BigRational]) -> Vec<BigRational> {
        let y = self.pull_back(q, relative_cocycle);
        cap_chain(self.domain.pair().total(), q, &y, self.n, z_full)
    }

    fn push_forward(&self, map: &SimplicialMap, q: usize, chain: &[BigRational]) -> Vec<BigRational> {
        absolute_chain_map(map, q).to_rational().mul_vec(chain)
    }

    /// Builds the problem for a relative `n`-cycle on `(W, W∖V)`.
    pub fn problem(self: &Arc<Self>, z: Vec<BigRational>) -> Result<CoincidenceProblem, CoincidenceError> {
        let expected = self.domain.pair().rel_count(self.n);
        if z.len() != expected {
            return Err(CoincidenceError::WrongChainLength { expected, found: z.len() });
        }
        if !self.domain.is_cycle(self.n, &z) {
            return Err(CoincidenceError::NotACycle(self.n));
        }
        Ok(CoincidenceProblem { setup: self.clone(), z })
    }

    /// Problem with `z` the fundamental class of `(W, W∖V)`; needs `dim W = n`.
    pub fn fundamental_problem(self: &Arc<Self>) -> Result<CoincidenceProblem, CoincidenceError> {
        let o = fundamental_class(self.domain.pair(), self.n)?;
        self.problem(o.chain().iter().map(to_q).collect())
    }
}

/// Exact invariants for one `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoincidenceResult {
    pub theta_matrices: Vec<RationalMatrix>,
    pub lefschetz_number: BigRational,
    pub index_pairing: BigRational,
    pub existence_verdict: ExistenceVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExistenceVerdict {
    CoincidenceExists,
    Indeterminate,
}

/// Value of the Lefschetz homomorphism on `z`, living in `H_0(M; Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzHomomorphismValue {
    /// Coordinates in the stored basis of `H_0(M; Q)`.
    pub coords: Vec<BigRational>,
    /// Sum of coefficients of a representing 0-cycle.
    pub augmentation: BigRational,
}

/// `(W, W∖V)`, `(M, ∂M)`, `f`, `g` and a class `z`.
#[derive(Clone, Debug)]
pub struct CoincidenceProblem {
    setup: Arc<CoincidenceSetup>,
    z: Vec<BigRational>,
}

impl CoincidenceProblem {
    pub fn setup(&self) -> &Arc<CoincidenceSetup> {
        &self.setup
    }

    /// Relative chain representing `z`.
    pub fn z(&self) -> &[BigRational] {
        &self.z
    }

    pub fn with_z(&self, z: Vec<BigRational>) -> Result<CoincidenceProblem, CoincidenceError> {
        self.setup.problem(z)
    }

    fn z_full(&self) -> Vec<BigRational> {
        self.setup.domain.pair().lift(self.setup.n, &self.z)
    }

    /// Matrix of `Θ_q` on `H^q(M, ∂M; Q)` in the stored dual basis.
    pub fn theta(&self, q: usize) -> Result<RationalMatrix, CoincidenceError> {
        let s = &self.setup;
        if q > s.n {
            return Err(CoincidenceError::DegreeOutOfRange { degree: q, n: s.n });
        }
        let z_full = self.z_full();
        let d_inv = s.duality.inverse(q);
        let columns: Vec<Vec<BigRational>> = s
            .target
            .dual(q)
            .iter()
            .map(|x| {
                let capped = self.setup.pull_back_and_cap(q, x, &z_full);
                let pushed = s.push_forward(&s.g, s.n - q, &capped);
                let coords = s.target_absolute.homology_coordinates(s.n - q, &pushed);
                d_inv.mul_vec(&coords)
            })
            .collect();
        Ok(RationalMatrix::from_columns(s.target.rank(q), &columns))
    }

    pub fn theta_matrices(&self) -> Result<Vec<RationalMatrix>, CoincidenceError> {
        (0..=self.setup.n).map(|q| self.theta(q)).collect()
    }

    /// `L_z(f, g) = Σ_q (-1)^q tr Θ_q`.
    pub fn lefschetz_number(&self) -> Result<BigRational, CoincidenceError> {
        Ok(alternating_trace(&self.theta_matrices()?)?)
    }

    /// `<I_fg(τ), z> = (-1)^n L_z(f, g)`.
    pub fn index_pairing(&self) -> Result<BigRational, CoincidenceError> {
        let l = self.lefschetz_number()?;
        Ok(if self.setup.n.is_multiple_of(2) { l } else { -l })
    }

    pub fn evaluate(&self) -> Result<CoincidenceResult, CoincidenceError> {
        let theta_matrices = self.theta_matrices()?;
        let lefschetz_number = alternating_trace(&theta_matrices)?;
        let index_pairing =
            if self.setup.n.is_multiple_of(2) { lefschetz_number.clone() } else { -lefschetz_number.clone() };
        let existence_verdict = if lefschetz_number.is_zero() {
            ExistenceVerdict::Indeterminate
        } else {
            ExistenceVerdict::CoincidenceExists
        };
        Ok(CoincidenceResult { theta_matrices, lefschetz_number, index_pairing, existence_verdict })
    }

    /// `f_!^z(a) = f^*(D⁻¹ a) ⌢ z` for `a ∈ H_k(M; Q)`, as a cycle on all `k`-simplices of `W`.
    fn f_shriek_chain(&self, k: usize, a: &[BigRational], z_full: &[BigRational]) -> Vec<BigRational> {
        let s = &self.setup;
        let q = s.n - k;
        let x_coords = s.duality.inverse(q).mul_vec(a);
        let cocycle = s.target.cocycle_from_coordinates(q, &x_coords);
        s.pull_back_and_cap(q, &cocycle, z_full)
    }

    /// `f_!^z` on a class of `H_k(M; Q)` given in stored coordinates; result in `H_k(W; Q)`.
    pub fn f_shriek(&self, k: usize, a: &[BigRational]) -> Result<Vec<BigRational>, CoincidenceError> {
        let s = &self.setup;
        if k > s.n {
            return Err(CoincidenceError::DegreeOutOfRange { degree: k, n: s.n });
        }
        let expected = s.target_absolute.rank(k);
        if a.len() != expected {
            return Err(CoincidenceError::WrongChainLength { expected, found: a.len() });
        }
        let chain = self.f_shriek_chain(k, a, &self.z_full());
        Ok(s.domain_absolute.homology_coordinates(k, &chain))
    }

    /// `Λ_fg(z) = Σ_k (-1)^{k(k+m)} Σ_j x_j^k ⌢ g_* f_!^z(a_j^k)`, expanded over the stored bases.
    pub fn lefschetz_homomorphism(&self) -> Result<LefschetzHomomorphismValue, CoincidenceError> {
        let s = &self.setup;
        let z_full = self.z_full();
        let m = s.m;
        let m_total = s.target_absolute.pair().total();
        let mut zero_chain = vec![BigRational::zero(); m_total.count(0)];
        for k in 0..=s.n {
            let sign_odd = (k as isize * (k as isize + m)).rem_euclid(2) == 1;
            let basis = s.target_absolute.basis(k);
            let duals = s.target_absolute.dual(k);
            for (j, x) in duals.iter().enumerate() {
                let a = crate::products::unit(basis.len(), j);
                let shriek = self.f_shriek_chain(k, &a, &z_full);
                let pushed = s.push_forward(&s.g, k, &shriek);
                let term = cap_chain(m_total, k, x, k, &pushed);
                for (acc, t) in zero_chain.iter_mut().zip(term) {
                    if sign_odd {
                        *acc -= t;
                    } else {
                        *acc += t;
                    }
                }
            }
        }
        let augmentation = zero_chain.iter().fold(BigRational::zero(), |acc, c| acc + c);
        let coords = s.target_absolute.homology_coordinates(0, &zero_chain);
        Ok(LefschetzHomomorphismValue { coords, augmentation })
    }
}

fn alternating_trace(thetas: &[RationalMatrix]) -> Result<BigRational, AlgebraError> {
    let mut l = BigRational::zero();
    for (q, t) in thetas.iter().enumerate() {
        let tr = trace(t)?;
        if q % 2 == 0 {
            l += tr;
        } else {
            l -= tr;
        }
    }
    Ok(l)
}

/// Coincidence number of `f, g: N → M` between closed oriented `n`-manifolds:
/// the index pairing with `W = N`, `V = N`, `z = O_N`.
pub fn classical_coincidence_number(f: &SimplicialMap, g: &SimplicialMap) -> Result<BigInt, CoincidenceError> {
    let domain = SimplicialPair::absolute(f.source().clone());
    let target = SimplicialPair::absolute(f.target().clone());
    if domain.dimension() != target.dimension() {
        return Err(CoincidenceError::MapMismatch("source and target dimensions differ".into()));
    }
    let setup = Arc::new(CoincidenceSetup::with_computed_orientation(domain, target, f.clone(), g.clone())?);
    let value = setup.fundamental_problem()?.index_pairing()?;
    if !value.is_integer() {
        return Err(CoincidenceError::NonIntegerResult(value));
    }
    Ok(value.to_integer())
}

/// Simplices of the source whose images under `f` and `g` meet.
///
/// Two simplices of a simplicial complex meet exactly when they share a
/// vertex, so an empty result certifies `Coin(f, g) = ∅`.
pub fn coincidence_candidates(f: &SimplicialMap, g: &SimplicialMap) -> Vec<Simplex> {
    let k = f.source();
    let mut out = Vec::new();
    for q in 0..=k.dimension().max(-1) {
        for s in k.simplices(q as usize) {
            let a = f.image_vertices(s);
            let b = g.image_vertices(s);
            if a.iter().any(|v| b.binary_search(v).is_ok()) {
                out.push(s.clone());
            }
        }
    }
    out
}
