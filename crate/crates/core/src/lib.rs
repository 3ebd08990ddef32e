//! Exact coincidence invariants of simplicial maps between triangulated
//! manifolds, and the removability verdicts built on them.

pub mod algebra;
pub mod coincidence;
pub mod complex;
pub mod homology;
pub mod problem;
pub mod products;
pub mod removability;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use algebra::{smith_normal_form, FgAbelianGroup, IntegerMatrix, RationalMatrix, SmithForm};
pub use coincidence::{
    classical_coincidence_number, coincidence_candidates, CoincidenceError, CoincidenceProblem,
    CoincidenceResult, CoincidenceSetup, ExistenceVerdict, DEGREE_ZERO_SIGN,
};
pub use complex::{fundamental_class, FundamentalClass, Simplex, SimplicialComplex, SimplicialMap, SimplicialPair};
pub use homology::{cohomology, homology, Coefficients, GradedGroup, PairHomology, Variance};
pub use problem::{ProblemFile, ProblemFileError, ProblemSpec};
pub use removability::{
    condition_a, condition_a_star, coincidence_producing_verdict, removability_verdict, FinalVerdict,
    HomotopyGroupTable, ProducingVerdict, RemovabilityReport, ThreeValued,
};
