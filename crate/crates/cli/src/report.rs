//! Serializable report types. Field order here is the order in the output.

use serde::Serialize;

use coincide_core::algebra::{FgAbelianGroup, RationalMatrix};
use coincide_core::removability::{Assessment, Citation};
use coincide_core::BigRational;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Rational {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for Rational {
    fn from(r: &BigRational) -> Self {
        Rational { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

pub fn rationals(v: &[BigRational]) -> Vec<Rational> {
    v.iter().map(Rational::from).collect()
}

pub fn matrix(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(Rational::from).collect()).collect()
}

#[derive(Serialize, Clone, Debug)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<String>,
    pub display: String,
}

impl From<&FgAbelianGroup> for Group {
    fn from(g: &FgAbelianGroup) -> Self {
        Group {
            rank: g.rank(),
            torsion: g.torsion().iter().map(ToString::to_string).collect(),
            display: g.to_string(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct CitationOut {
    pub id: &'static str,
    pub statement: &'static str,
}

pub fn citations(c: &[Citation]) -> Vec<CitationOut> {
    c.iter().map(|c| CitationOut { id: c.id(), statement: c.description() }).collect()
}

#[derive(Serialize, Clone, Debug)]
pub struct Envelope<T: Serialize> {
    pub schema_version: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub file: String,
    pub results: Vec<T>,
}

#[derive(Serialize, Clone, Debug)]
pub struct HomologyEntry {
    pub name: String,
    pub kind: &'static str,
    pub complex: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcomplex: Option<String>,
    pub dimension: isize,
    pub f_vector: Vec<usize>,
    pub homology: Vec<Group>,
    pub cohomology: Vec<Group>,
    pub rational_betti_numbers: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_characteristic: Option<i64>,
}

#[derive(Serialize, Clone, Debug)]
pub struct ThetaOut {
    pub degree: usize,
    pub matrix: Vec<Vec<Rational>>,
    pub trace: Rational,
}

#[derive(Serialize, Clone, Debug)]
pub struct ClassOut {
    pub z: String,
    pub theta: Vec<ThetaOut>,
    pub lefschetz_number: Rational,
    pub index_pairing: Rational,
    pub existence_verdict: &'static str,
    pub lefschetz_homomorphism_degree0: Vec<Rational>,
    pub lefschetz_homomorphism_augmentation: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coincidence_candidates: Option<Vec<Vec<String>>>,
}

#[derive(Serialize, Clone, Debug)]
pub struct LefschetzEntry {
    pub problem: String,
    pub domain: String,
    pub target: String,
    pub f: String,
    pub g: String,
    pub n: usize,
    pub codimension: isize,
    pub sign_convention_epsilon: i32,
    pub classes: Vec<ClassOut>,
    pub citations: Vec<CitationOut>,
}

#[derive(Serialize, Clone, Debug)]
pub struct ConditionOut {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reasons: Option<Vec<String>>,
    pub citations: Vec<CitationOut>,
}

impl ConditionOut {
    pub fn new(a: &Assessment, verbose: bool) -> Self {
        ConditionOut {
            verdict: a.verdict.as_str(),
            reasons: verbose.then(|| a.reasons.clone()),
            citations: citations(&a.citations),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct RemovabilityEntry {
    pub problem: String,
    pub n: usize,
    pub codimension: isize,
    pub fiber: String,
    pub index_pairings: Vec<Rational>,
    pub spanning_set_size: usize,
    pub spanning_set_assumption: &'static str,
    pub index_zero: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_a_star: Option<&'static str>,
    pub condition_a: ConditionOut,
    pub final_verdict: &'static str,
    pub summary: String,
    pub citations: Vec<CitationOut>,
}

#[derive(Serialize, Clone, Debug)]
pub struct ProduceEntry {
    pub problem: String,
    pub f: String,
    pub source: String,
    pub target: String,
    pub n: usize,
    pub codimension: isize,
    pub top_degree_map: Vec<Vec<Rational>>,
    pub condition_a: ConditionOut,
    pub verdict: &'static str,
    pub citations: Vec<CitationOut>,
}
