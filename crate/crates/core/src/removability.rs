//! Verdict logic for local removability and coincidence-producing maps.
//!
//! All verdicts concern sufficient conditions. A failed condition means
//! "not certified removable", never "not removable".
//!
//! Homotopy groups of spheres enter only through [`HomotopyGroupTable`], which
//! knows a handful of forced facts and the three vanishing families
//! `π_{n+m-1}(S^{n-1}) = 0` for `m = 4, n ≥ 6`; `m = 5, n ≥ 7`;
//! `m = 12, n ∈ {7, 8, 9} ∪ [14, ∞)`. Anything else is unknown unless a
//! table file adds it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{tensor_product, tor_product, FgAbelianGroup};
use crate::complex::SimplicialMap;
use crate::homology::{induced_map, HomologyError, PairHomology, Variance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThreeValued {
    Holds,
    Fails,
    Unknown,
}

impl ThreeValued {
    /// Fails dominates, then unknown.
    pub fn and(self, other: ThreeValued) -> ThreeValued {
        use ThreeValued::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Holds, Holds) => Holds,
            _ => Unknown,
        }
    }

    pub fn all(values: impl IntoIterator<Item = ThreeValued>) -> ThreeValued {
        values.into_iter().fold(ThreeValued::Holds, ThreeValued::and)
    }

    pub fn is_definite(self) -> bool {
        self != ThreeValued::Unknown
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ThreeValued::Holds => "holds",
            ThreeValued::Fails => "fails",
            ThreeValued::Unknown => "unknown",
        }
    }
}

impl fmt::Display for ThreeValued {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Results a verdict can rest on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Citation {
    NormalizationTheorem,
    LocalRemovabilityTheorem,
    TensorTorLemma,
    ConditionAStar,
    CorollarySurface,
    CorollaryAcyclicFibers,
    CorollarySphereFibers,
    CodimensionZero,
    CoincidenceProducingTheorem,
}

impl Citation {
    pub fn id(self) -> &'static str {
        match self {
            Citation::NormalizationTheorem => "theorem:normalization",
            Citation::LocalRemovabilityTheorem => "theorem:local-removability",
            Citation::TensorTorLemma => "lemma:tensor-tor",
            Citation::ConditionAStar => "condition:a-star",
            Citation::CorollarySurface => "corollary:a:surface-target",
            Citation::CorollaryAcyclicFibers => "corollary:b:acyclic-fibers",
            Citation::CorollarySphereFibers => "corollary:c:homology-sphere-fibers",
            Citation::CodimensionZero => "remark:codimension-zero",
            Citation::CoincidenceProducingTheorem => "theorem:coincidence-producing",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Citation::NormalizationTheorem => "<I_fg(tau), z> = (-1)^n L_z(f,g); L_z != 0 implies Coin(f,g) nonempty",
            Citation::LocalRemovabilityTheorem => "under condition (A), I_fg(tau) = 0 implies C is removable by a local homotopy of f",
            Citation::TensorTorLemma => "H^p(C) (x) pi_{n+p-1}(S^{n-1}) = 0 and Tor(H^{p+1}(C), pi_{n+p-1}(S^{n-1})) = 0 for 1 <= p <= m imply (A)",
            Citation::ConditionAStar => "(A*) pi_{n+m-1}(S^{n-1}) = 0",
            Citation::CorollarySurface => "(A) holds when M is a surface",
            Citation::CorollaryAcyclicFibers => "(A) holds when the fibers of f are acyclic",
            Citation::CorollarySphereFibers => "(A) holds when the fibers are unions of homology m-spheres and (A*) holds",
            Citation::CodimensionZero => "(A) holds for codimension m = 0",
            Citation::CoincidenceProducingTheorem => "under (A), f is weakly coincidence-producing iff f_*: H_n(N,dN) -> H_n(M,dM) is nonzero",
        }
    }
}

/// What is known about one `π_k(S^j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PiStatus {
    Zero,
    /// Nonzero, with the group when known.
    Nonzero(Option<FgAbelianGroup>),
    Unknown,
}

impl PiStatus {
    pub fn label(&self) -> &'static str {
        match self {
            PiStatus::Zero => "zero",
            PiStatus::Nonzero(_) => "nonzero",
            PiStatus::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiEntry {
    pub status: PiStatus,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: pi_{k}(S^{j}) entry contradicts {against}")]
    Contradiction { line: usize, k: u32, j: u32, against: String },
    #[error("cannot read table: {0}")]
    Io(String),
}

/// Homotopy groups of spheres known to the engine.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomotopyGroupTable {
    extra: BTreeMap<(u32, u32), PiEntry>,
}

fn builtin_entry(k: u32, j: u32) -> Option<PiEntry> {
    let entry = |status, source: &str| Some(PiEntry { status, source: source.to_string() });
    if j == 0 {
        return None;
    }
    if k < j {
        return entry(PiStatus::Zero, "built-in: pi_k(S^j) = 0 for k < j");
    }
    if k == j {
        return entry(PiStatus::Nonzero(Some(FgAbelianGroup::free(1))), "built-in: pi_j(S^j) = Z (degree)");
    }
    if j == 1 {
        return entry(PiStatus::Zero, "built-in: pi_k(S^1) = 0 for k >= 2 (contractible universal cover)");
    }
    let stem = k - j;
    let n = j + 1;
    let toda = match stem {
        4 => n >= 6,
        5 => n >= 7,
        12 => matches!(n, 7..=9) || n >= 14,
        _ => false,
    };
    if toda {
        return entry(PiStatus::Zero, "built-in: Toda vanishing of pi_{n+m-1}(S^{n-1}) for m in {4, 5, 12}");
    }
    None
}

impl HomotopyGroupTable {
    /// Table with only the built-in facts.
    pub fn builtin() -> Self {
        Self::default()
    }

    /// Status of `π_k(S^j)` and where it comes from.
    pub fn lookup(&self, k: u32, j: u32) -> PiEntry {
        builtin_entry(k, j)
            .or_else(|| self.extra.get(&(k, j)).cloned())
            .unwrap_or(PiEntry { status: PiStatus::Unknown, source: "no table entry".into() })
    }

    /// Adds a fact. Entries may only fill gaps; anything disagreeing with a
    /// built-in or earlier entry is rejected.
    pub fn add(&mut self, k: u32, j: u32, entry: PiEntry) -> Result<(), TableError> {
        self.add_at(0, k, j, entry)
    }

    fn add_at(&mut self, line: usize, k: u32, j: u32, entry: PiEntry) -> Result<(), TableError> {
        if entry.status == PiStatus::Unknown {
            return Ok(());
        }
        if let Some(known) = builtin_entry(k, j) {
            return if compatible(&known.status, &entry.status) {
                Ok(())
            } else {
                Err(TableError::Contradiction { line, k, j, against: known.source })
            };
        }
        match self.extra.get_mut(&(k, j)) {
            Some(prev) => {
                if !compatible(&prev.status, &entry.status) {
                    return Err(TableError::Contradiction { line, k, j, against: format!("earlier entry ({})", prev.source) });
                }
                if matches!(prev.status, PiStatus::Nonzero(None)) && matches!(entry.status, PiStatus::Nonzero(Some(_))) {
                    *prev = entry;
                }
                Ok(())
            }
            None => {
                self.extra.insert((k, j), entry);
                Ok(())
            }
        }
    }

    /// Parses table lines `pi <k> S <j> = zero|nonzero [structure] source: <text>`.
    pub fn extend_from_str(&mut self, text: &str) -> Result<(), TableError> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (k, j, entry) = parse_table_line(content).map_err(|message| TableError::Parse { line, message })?;
            self.add_at(line, k, j, entry)?;
        }
        Ok(())
    }

    pub fn from_str_with_builtins(text: &str) -> Result<Self, TableError> {
        let mut t = Self::builtin();
        t.extend_from_str(text)?;
        Ok(t)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, TableError> {
        let text = std::fs::read_to_string(path).map_err(|e| TableError::Io(format!("{}: {e}", path.display())))?;
        Self::from_str_with_builtins(&text)
    }

    pub fn user_entries(&self) -> impl Iterator<Item = (&(u32, u32), &PiEntry)> {
        self.extra.iter()
    }
}

fn compatible(a: &PiStatus, b: &PiStatus) -> bool {
    match (a, b) {
        (PiStatus::Zero, PiStatus::Zero) => true,
        (PiStatus::Nonzero(x), PiStatus::Nonzero(y)) => match (x, y) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        },
        (PiStatus::Unknown, _) | (_, PiStatus::Unknown) => true,
        _ => false,
    }
}

fn parse_table_line(content: &str) -> Result<(u32, u32, PiEntry), String> {
    let (head, source) = content
        .split_once("source:")
        .ok_or_else(|| "missing required `source:` annotation".to_string())?;
    let source = source.trim();
    if source.is_empty() {
        return Err("empty `source:` annotation".into());
    }
    let tokens: Vec<&str> = head.split_whitespace().collect();
    if tokens.len() < 6 || tokens[0] != "pi" || tokens[2] != "S" || tokens[4] != "=" {
        return Err("expected `pi <k> S <j> = zero|nonzero [structure] source: <text>`".into());
    }
    let k: u32 = tokens[1].parse().map_err(|_| format!("bad degree `{}`", tokens[1]))?;
    let j: u32 = tokens[3].parse().map_err(|_| format!("bad sphere dimension `{}`", tokens[3]))?;
    if j == 0 {
        return Err("sphere dimension must be at least 1".into());
    }
    let structure = tokens[6..].join(" ");
    let status = match tokens[5] {
        "zero" => {
            if !structure.is_empty() {
                return Err("a zero entry takes no structure".into());
            }
            PiStatus::Zero
        }
        "nonzero" => {
            if structure.is_empty() {
                PiStatus::Nonzero(None)
            } else {
                let g: FgAbelianGroup = parse_group(&structure)?;
                if g.is_trivial() {
                    return Err("nonzero entry with trivial structure".into());
                }
                PiStatus::Nonzero(Some(g))
            }
        }
        other => return Err(format!("expected `zero` or `nonzero`, found `{other}`")),
    };
    Ok((k, j, PiEntry { status, source: source.to_string() }))
}

/// Parses `Z`, `Z^2`, `Z/12`, `0` and `+`-separated sums of these.
pub fn parse_group(text: &str) -> Result<FgAbelianGroup, String> {
    let mut rank = 0usize;
    let mut orders = Vec::new();
    for part in text.split('+') {
        let part: String = part.split_whitespace().collect();
        if part == "0" {
            continue;
        }
        if part == "Z" {
            rank += 1;
        } else if let Some(exp) = part.strip_prefix("Z^") {
            rank += exp.parse::<usize>().map_err(|_| format!("bad exponent in `{part}`"))?;
        } else if let Some(order) = part.strip_prefix("Z/") {
            let o = BigInt::from_str(order).map_err(|_| format!("bad order in `{part}`"))?;
            if o < BigInt::from(1) {
                return Err(format!("cyclic order must be positive in `{part}`"));
            }
            orders.push(o);
        } else {
            return Err(format!("cannot parse group summand `{part}`"));
        }
    }
    Ok(FgAbelianGroup::from_cyclic_orders(rank, orders))
}

/// Table lookup of `π_k(S^j)`; built-ins win.
pub fn pi_sphere_status(k: u32, j: u32, table: &HomotopyGroupTable) -> PiStatus {
    table.lookup(k, j).status
}

/// A verdict with the trace that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assessment {
    pub verdict: ThreeValued,
    pub reasons: Vec<String>,
    pub citations: Vec<Citation>,
}

impl Assessment {
    fn new(verdict: ThreeValued, reason: impl Into<String>, citations: Vec<Citation>) -> Self {
        Assessment { verdict, reasons: vec![reason.into()], citations }
    }
}

/// `(A*)`: `π_{n+m-1}(S^{n-1}) = 0`.
pub fn condition_a_star(m: u32, n: u32, table: &HomotopyGroupTable) -> ThreeValued {
    if n < 2 {
        return ThreeValued::Unknown;
    }
    match pi_sphere_status(n + m - 1, n - 1, table) {
        PiStatus::Zero => ThreeValued::Holds,
        PiStatus::Nonzero(_) => ThreeValued::Fails,
        PiStatus::Unknown => ThreeValued::Unknown,
    }
}

fn cohomology_at(fiber: &[FgAbelianGroup], p: usize) -> FgAbelianGroup {
    fiber.get(p).cloned().unwrap_or_else(FgAbelianGroup::trivial)
}

/// Checks the tensor/Tor conditions for `1 ≤ p ≤ m` on the integral cohomology
/// `fiber[p] = H^p(C)` of a fiber.
pub fn lemma_conditions(
    fiber: &[FgAbelianGroup],
    m: u32,
    n: u32,
    table: &HomotopyGroupTable,
) -> Assessment {
    if n < 2 {
        return Assessment::new(ThreeValued::Unknown, format!("n = {n} < 2 is outside the theory"), vec![]);
    }
    let mut verdict = ThreeValued::Holds;
    let mut reasons = Vec::new();
    for p in 1..=m {
        let (k, j) = (n + p - 1, n - 1);
        let pi = table.lookup(k, j);
        let hp = cohomology_at(fiber, p as usize);
        let hp1 = cohomology_at(fiber, p as usize + 1);
        let (tensor, tensor_why) = match &pi.status {
            PiStatus::Zero => (ThreeValued::Holds, format!("pi_{k}(S^{j}) = 0 [{}]", pi.source)),
            _ if hp.is_trivial() => (ThreeValued::Holds, format!("H^{p}(C) = 0")),
            PiStatus::Nonzero(Some(g)) => {
                let t = tensor_product(&hp, g);
                if t.is_trivial() {
                    (ThreeValued::Holds, format!("H^{p}(C) (x) {g} = 0"))
                } else {
                    (ThreeValued::Fails, format!("H^{p}(C) (x) {g} = {t} != 0"))
                }
            }
            PiStatus::Nonzero(None) if hp.rank() > 0 => (
                ThreeValued::Fails,
                format!("H^{p}(C) = {hp} has free part and pi_{k}(S^{j}) != 0, so the tensor product is nonzero"),
            ),
            PiStatus::Nonzero(None) => (
                ThreeValued::Unknown,
                format!("H^{p}(C) = {hp} is torsion and the structure of pi_{k}(S^{j}) is not in the table"),
            ),
            PiStatus::Unknown => (ThreeValued::Unknown, format!("pi_{k}(S^{j}) not in the table and H^{p}(C) = {hp} != 0")),
        };
        let (tor, tor_why) = match &pi.status {
            PiStatus::Zero => (ThreeValued::Holds, format!("pi_{k}(S^{j}) = 0")),
            _ if hp1.is_free() => (ThreeValued::Holds, format!("H^{}(C) = {hp1} is torsion-free", p + 1)),
            PiStatus::Nonzero(Some(g)) => {
                let t = tor_product(&hp1, g);
                if t.is_trivial() {
                    (ThreeValued::Holds, format!("Tor(H^{}(C), {g}) = 0", p + 1))
                } else {
                    (ThreeValued::Fails, format!("Tor(H^{}(C), {g}) = {t} != 0", p + 1))
                }
            }
            PiStatus::Nonzero(None) => (
                ThreeValued::Unknown,
                format!("H^{}(C) = {hp1} has torsion and the structure of pi_{k}(S^{j}) is not in the table", p + 1),
            ),
            PiStatus::Unknown => (
                ThreeValued::Unknown,
                format!("pi_{k}(S^{j}) not in the table and H^{}(C) = {hp1} has torsion", p + 1),
            ),
        };
        reasons.push(format!("p = {p}: tensor clause {tensor} ({tensor_why}); Tor clause {tor} ({tor_why})"));
        verdict = verdict.and(tensor).and(tor);
    }
    if m == 0 {
        reasons.push("no degrees 1 <= p <= m to check".into());
    }
    Assessment { verdict, reasons, citations: vec![Citation::TensorTorLemma] }
}

/// What the user states about the fibers `C = f⁻¹(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberDescription {
    /// Reduced homology vanishes.
    Acyclic,
    /// Disjoint union of homology `m`-spheres.
    HomologySpheres,
    /// Integral cohomology `H^p(C)` indexed by `p`.
    Cohomology(Vec<FgAbelianGroup>),
    Unspecified,
}

/// Condition (A) via the corollary fast paths, falling back to the lemma.
pub fn corollary_classifier(
    fiber: &FiberDescription,
    m: u32,
    n: u32,
    table: &HomotopyGroupTable,
) -> Assessment {
    let mut reasons = Vec::new();
    let mut citations = Vec::new();
    if n == 2 {
        reasons.push("M is a surface: pi_{p+1}(S^1) = 0 for all p >= 1".to_string());
        citations.push(Citation::CorollarySurface);
    }
    let acyclic = match fiber {
        FiberDescription::Acyclic => Some("fibers are acyclic: H^p(C) = 0 for p >= 1"),
        FiberDescription::Cohomology(groups) if groups.iter().skip(1).all(FgAbelianGroup::is_trivial) => {
            Some("computed fiber cohomology vanishes in positive degrees")
        }
        _ => None,
    };
    if let Some(why) = acyclic {
        reasons.push(why.to_string());
        citations.push(Citation::CorollaryAcyclicFibers);
    }
    let star = (n >= 2).then(|| condition_a_star(m, n, table));
    if *fiber == FiberDescription::HomologySpheres && star == Some(ThreeValued::Holds) {
        reasons.push(format!("fibers are homology {m}-spheres and pi_{}(S^{}) = 0", n + m - 1, n - 1));
        citations.extend([Citation::CorollarySphereFibers, Citation::ConditionAStar]);
    }
    if !citations.is_empty() {
        return Assessment { verdict: ThreeValued::Holds, reasons, citations };
    }
    match fiber {
        FiberDescription::HomologySpheres => {
            let mut groups = vec![FgAbelianGroup::trivial(); m as usize + 1];
            groups[0] = FgAbelianGroup::free(1);
            groups[m as usize] = FgAbelianGroup::free(1);
            let mut a = lemma_conditions(&groups, m, n, table);
            let star = star.unwrap_or(ThreeValued::Unknown);
            a.reasons.insert(0, format!("(A*) {star} for m = {m}, n = {n}; checking the lemma on sphere cohomology"));
            a
        }
        FiberDescription::Cohomology(groups) => lemma_conditions(groups, m, n, table),
        FiberDescription::Unspecified => {
            Assessment::new(ThreeValued::Unknown, "no fiber description supplied", vec![])
        }
        FiberDescription::Acyclic => unreachable!("acyclic fibers always cite clause (b)"),
    }
}

/// Condition (A) for codimension `m`, target dimension `n`.
///
/// Codimension zero is settled outright; otherwise the corollaries and the
/// lemma decide. `condition_a_star` is not consulted for `m = 0`, where it
/// always fails.
pub fn condition_a(
    fiber: &FiberDescription,
    m: i64,
    n: u32,
    table: &HomotopyGroupTable,
) -> Assessment {
    if m == 0 {
        return Assessment::new(ThreeValued::Holds, "codimension m = 0", vec![Citation::CodimensionZero]);
    }
    if m < 0 {
        return Assessment::new(ThreeValued::Unknown, format!("negative codimension {m}"), vec![]);
    }
    corollary_classifier(fiber, m as u32, n, table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FinalVerdict {
    Removable,
    BlockedByIndex,
    Inconclusive,
}

impl FinalVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            FinalVerdict::Removable => "removable",
            FinalVerdict::BlockedByIndex => "blocked_by_index",
            FinalVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovabilityReport {
    pub index_zero: ThreeValued,
    pub condition_a: Assessment,
    pub final_verdict: FinalVerdict,
    pub citations: Vec<Citation>,
    pub summary: String,
    /// The caller asserts the pairings were taken over a spanning set of `H_n(W, W∖V; Q)`.
    pub spanning_set_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RemovabilityError {
    #[error("no z classes supplied")]
    EmptySpanningSet,
}

/// Combines index pairings over a spanning set of `z` with condition (A).
pub fn removability_verdict(
    pairings: &[BigRational],
    condition_a: &Assessment,
) -> Result<RemovabilityReport, RemovabilityError> {
    if pairings.is_empty() {
        return Err(RemovabilityError::EmptySpanningSet);
    }
    let index_zero = if pairings.iter().all(Zero::is_zero) { ThreeValued::Holds } else { ThreeValued::Fails };
    let (final_verdict, mut citations, summary) = match (index_zero, condition_a.verdict) {
        (ThreeValued::Fails, _) => (
            FinalVerdict::BlockedByIndex,
            vec![Citation::NormalizationTheorem],
            "nonzero index pairing: a coincidence exists in W and cannot be removed".to_string(),
        ),
        (ThreeValued::Holds, ThreeValued::Holds) => (
            FinalVerdict::Removable,
            vec![Citation::LocalRemovabilityTheorem],
            "index vanishes and condition (A) holds: removable by a local homotopy of f".to_string(),
        ),
        (_, v) => (
            FinalVerdict::Inconclusive,
            vec![Citation::LocalRemovabilityTheorem],
            format!("index vanishes but condition (A) is {v}: not certified removable"),
        ),
    };
    if final_verdict != FinalVerdict::BlockedByIndex {
        citations.extend(condition_a.citations.iter().copied());
    }
    Ok(RemovabilityReport {
        index_zero,
        condition_a: condition_a.clone(),
        final_verdict,
        citations,
        summary,
        spanning_set_size: pairings.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProducingVerdict {
    WeaklyProducing,
    NotProducing,
    Inconclusive,
}

impl ProducingVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ProducingVerdict::WeaklyProducing => "weakly_producing",
            ProducingVerdict::NotProducing => "not_producing",
            ProducingVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProducingReport {
    pub verdict: ProducingVerdict,
    /// Matrix of `f_*` on `H_n(N, ∂N; Q) → H_n(M, ∂M; Q)`.
    pub top_degree_map: crate::algebra::RationalMatrix,
    pub condition_a: ThreeValued,
    pub citations: Vec<Citation>,
}

/// Weakly coincidence-producing verdict for `f: (N, ∂N) → (M, ∂M)`.
///
/// A nonzero `f_*` in degree `n = dim M` settles the question without (A).
pub fn coincidence_producing_verdict(
    f: &SimplicialMap,
    source: &PairHomology,
    target: &PairHomology,
    condition_a: ThreeValued,
) -> Result<ProducingReport, HomologyError> {
    let n = usize::try_from(target.pair().dimension()).map_err(|_| HomologyError::ComplexMismatch)?;
    let top = induced_map(f, source, target, n, Variance::Homology)?;
    let nonzero = !top.is_zero();
    let verdict = match (nonzero, condition_a) {
        (true, _) => ProducingVerdict::WeaklyProducing,
        (false, ThreeValued::Holds) => ProducingVerdict::NotProducing,
        (false, _) => ProducingVerdict::Inconclusive,
    };
    let mut citations = vec![Citation::CoincidenceProducingTheorem];
    if !nonzero && condition_a == ThreeValued::Holds {
        citations.extend([Citation::NormalizationTheorem, Citation::LocalRemovabilityTheorem]);
    }
    Ok(ProducingReport { verdict, top_degree_map: top, condition_a, citations })
}
