//! Text format bundling complexes, pairs, maps and coincidence problems.
//!
//! ```text
//! complex S2
//!   vertices a b c d
//!   simplex a b c
//!   simplex a b d
//!   simplex a c d
//!   simplex b c d
//! end
//!
//! pair S2pair = S2            # or: pair D = D2 rel circle
//!
//! map id : S2 -> S2
//!   a -> a
//!   ...
//! end
//!
//! problem s2_identity
//!   domain S2pair             # (W, W∖V); a bare complex name means (K, ∅)
//!   target S2pair             # (M, ∂M)
//!   f id
//!   g id
//!   z fundamental             # repeatable; or a `z chain ... end` block
//!   fiber acyclic             # acyclic | spheres | unspecified | complex NAME
//! end
//!
//! table extra_pi.txt          # relative to the file's directory
//! ```
//!
//! Inside `z chain`, each line is `<coefficient> <v0> ... <vn>` with a rational
//! coefficient such as `-3/2`. The vertex order fixes the orientation of the
//! simplex; simplices of the subcomplex are dropped.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::FgAbelianGroup;
use crate::coincidence::{CoincidenceProblem, CoincidenceSetup};
use crate::complex::{fundamental_class, SimplicialComplex, SimplicialMap, SimplicialPair};
use crate::homology::{cohomology, to_q, Coefficients};
use crate::removability::{FiberDescription, HomotopyGroupTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemFileError {
    #[error("{file}:{line}: parse error: {message}")]
    Parse { file: String, line: usize, message: String },
    #[error("{file}:{line}: invalid {entity}: {reason}")]
    Validation { file: String, line: usize, entity: String, reason: String },
    #[error("cannot read {0}")]
    Io(String),
}

impl ProblemFileError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ProblemFileError::Parse { line, .. } | ProblemFileError::Validation { line, .. } => Some(*line),
            ProblemFileError::Io(_) => None,
        }
    }
}

/// How a problem specifies its class `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZSpec {
    Fundamental,
    /// `(coefficient, vertex labels)` terms.
    Chain(Vec<(BigRational, Vec<String>)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberSpec {
    Acyclic,
    Spheres,
    Unspecified,
    Complex(String),
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub name: String,
    pub line: usize,
    pub domain: String,
    pub target: String,
    pub f: String,
    pub g: String,
    pub z_specs: Vec<ZSpec>,
    pub fiber: FiberDescription,
    pub setup: Arc<CoincidenceSetup>,
    /// One relative cycle per `z` line, in relative basis order.
    pub classes: Vec<Vec<BigRational>>,
}

impl ProblemSpec {
    pub fn problems(&self) -> Vec<CoincidenceProblem> {
        self.classes
            .iter()
            .map(|z| self.setup.problem(z.clone()).expect("validated at load"))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.setup.n()
    }

    pub fn codimension(&self) -> isize {
        self.setup.codimension()
    }
}

#[derive(Clone, Debug)]
pub struct NamedPair {
    pub complex: String,
    pub sub: Option<String>,
    pub pair: Arc<SimplicialPair>,
}

/// Parsed and validated contents of a problem file.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub complexes: BTreeMap<String, Arc<SimplicialComplex>>,
    pub pairs: BTreeMap<String, NamedPair>,
    pub maps: BTreeMap<String, SimplicialMap>,
    /// Sorted by name.
    pub problems: Vec<ProblemSpec>,
    pub table: HomotopyGroupTable,
    pub table_paths: Vec<PathBuf>,
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<Self, ProblemFileError> {
        Self::load_with_table(path, HomotopyGroupTable::builtin())
    }

    /// Loads a file, starting from `table` for homotopy-group facts.
    pub fn load_with_table(path: &Path, table: HomotopyGroupTable) -> Result<Self, ProblemFileError> {
        let text = std::fs::read_to_string(path).map_err(|e| ProblemFileError::Io(format!("{}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        parse_with(&text, &path.display().to_string(), &base, table)
    }

    pub fn problem(&self, name: &str) -> Option<&ProblemSpec> {
        self.problems.iter().find(|p| p.name == name)
    }
}

/// Parses text with no file context; `table` lines resolve against the working directory.
pub fn parse_str(text: &str) -> Result<ProblemFile, ProblemFileError> {
    parse_with(text, "<input>", Path::new("."), HomotopyGroupTable::builtin())
}

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

struct RawComplex {
    line: usize,
    order: Vec<String>,
    simplices: Vec<Vec<String>>,
}

struct RawPair {
    line: usize,
    complex: String,
    sub: Option<String>,
}

struct RawMap {
    line: usize,
    source: String,
    target: String,
    assignment: Vec<(String, String)>,
}

struct RawProblem {
    line: usize,
    domain: Option<String>,
    target: Option<String>,
    f: Option<String>,
    g: Option<String>,
    z: Vec<(usize, ZSpec)>,
    fiber: FiberSpec,
}

struct Parser<'a> {
    file: &'a str,
    lines: Vec<Line<'a>>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn parse_err(&self, line: usize, message: impl Into<String>) -> ProblemFileError {
        ProblemFileError::Parse { file: self.file.to_string(), line, message: message.into() }
    }

    fn next(&mut self) -> Option<&Line<'a>> {
        let l = self.lines.get(self.pos);
        self.pos += 1;
        l
    }

    /// Lines of a block up to the matching `end`.
    fn block(&mut self, opener: usize, what: &str) -> Result<Vec<(usize, Vec<&'a str>)>, ProblemFileError> {
        let mut out = Vec::new();
        let mut depth = 0usize;
        loop {
            let Some(l) = self.next() else {
                return Err(self.parse_err(opener, format!("{what} block is not closed by `end`")));
            };
            if l.tokens == ["end"] {
                if depth == 0 {
                    return Ok(out);
                }
                depth -= 1;
            } else if l.tokens == ["z", "chain"] {
                depth += 1;
            }
            out.push((l.number, l.tokens.clone()));
        }
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            (!tokens.is_empty()).then_some(Line { number: i + 1, tokens })
        })
        .collect()
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = num.parse::<num_bigint::BigInt>().ok()?;
    let den = den.parse::<num_bigint::BigInt>().ok()?;
    (!den.is_zero()).then(|| BigRational::new(num, den))
}

fn check_name(p: &Parser, line: usize, name: Option<&&str>, what: &str) -> Result<String, ProblemFileError> {
    match name {
        Some(n) if n.chars().all(|c| c.is_alphanumeric() || "_-.".contains(c)) => Ok(n.to_string()),
        Some(n) => Err(p.parse_err(line, format!("invalid {what} name `{n}`"))),
        None => Err(p.parse_err(line, format!("missing {what} name"))),
    }
}

fn simplex_tokens(p: &Parser, line: usize, tokens: &[&str]) -> Result<Vec<String>, ProblemFileError> {
    if tokens.is_empty() {
        return Err(p.parse_err(line, "simplex has no vertices"));
    }
    let mut seen = std::collections::HashSet::new();
    for t in tokens {
        if !seen.insert(*t) {
            return Err(p.parse_err(line, format!("vertex `{t}` repeated in simplex")));
        }
    }
    Ok(tokens.iter().map(|s| s.to_string()).collect())
}

fn parse_with(
    text: &str,
    file: &str,
    base: &Path,
    mut table: HomotopyGroupTable,
) -> Result<ProblemFile, ProblemFileError> {
    let mut p = Parser { file, lines: tokenize(text), pos: 0 };
    let mut complexes: Vec<(String, RawComplex)> = Vec::new();
    let mut pairs: Vec<(String, RawPair)> = Vec::new();
    let mut maps: Vec<(String, RawMap)> = Vec::new();
    let mut problems: Vec<(String, RawProblem)> = Vec::new();
    let mut table_lines: Vec<(usize, String)> = Vec::new();

    while let Some(l) = p.next() {
        let (line, tokens) = (l.number, l.tokens.clone());
        match tokens[0] {
            "complex" => {
                let name = check_name(&p, line, tokens.get(1), "complex")?;
                if tokens.len() > 2 {
                    return Err(p.parse_err(line, "expected `complex NAME`"));
                }
                let mut raw = RawComplex { line, order: Vec::new(), simplices: Vec::new() };
                for (ln, body) in p.block(line, "complex")? {
                    match body[0] {
                        "vertices" => raw.order.extend(body[1..].iter().map(|s| s.to_string())),
                        "simplex" => raw.simplices.push(simplex_tokens(&p, ln, &body[1..])?),
                        other => return Err(p.parse_err(ln, format!("unexpected `{other}` in complex block"))),
                    }
                }
                complexes.push((name, raw));
            }
            "pair" => {
                let name = check_name(&p, line, tokens.get(1), "pair")?;
                let ok = match tokens.len() {
                    4 => tokens[2] == "=",
                    6 => tokens[2] == "=" && tokens[4] == "rel",
                    _ => false,
                };
                if !ok {
                    return Err(p.parse_err(line, "expected `pair NAME = COMPLEX [rel SUBCOMPLEX]`"));
                }
                let sub = tokens.get(5).map(|s| s.to_string());
                pairs.push((name, RawPair { line, complex: tokens[3].to_string(), sub }));
            }
            "map" => {
                let name = check_name(&p, line, tokens.get(1), "map")?;
                if tokens.len() != 6 || tokens[2] != ":" || tokens[4] != "->" {
                    return Err(p.parse_err(line, "expected `map NAME : SOURCE -> TARGET`"));
                }
                let mut raw = RawMap {
                    line,
                    source: tokens[3].to_string(),
                    target: tokens[5].to_string(),
                    assignment: Vec::new(),
                };
                for (ln, body) in p.block(line, "map")? {
                    if body.len() != 3 || body[1] != "->" {
                        return Err(p.parse_err(ln, "expected `vertex -> vertex`"));
                    }
                    raw.assignment.push((body[0].to_string(), body[2].to_string()));
                }
                maps.push((name, raw));
            }
            "problem" => {
                let name = check_name(&p, line, tokens.get(1), "problem")?;
                let mut raw = RawProblem {
                    line,
                    domain: None,
                    target: None,
                    f: None,
                    g: None,
                    z: Vec::new(),
                    fiber: FiberSpec::Unspecified,
                };
                let body = p.block(line, "problem")?;
                let mut i = 0;
                while i < body.len() {
                    let (ln, ref t) = body[i];
                    i += 1;
                    let single = |p: &Parser| -> Result<String, ProblemFileError> {
                        if t.len() != 2 {
                            return Err(p.parse_err(ln, format!("expected `{} NAME`", t[0])));
                        }
                        Ok(t[1].to_string())
                    };
                    match t[0] {
                        "domain" | "source" => raw.domain = Some(single(&p)?),
                        "target" => raw.target = Some(single(&p)?),
                        "f" => raw.f = Some(single(&p)?),
                        "g" => raw.g = Some(single(&p)?),
                        "z" if t.len() == 2 && t[1] == "fundamental" => raw.z.push((ln, ZSpec::Fundamental)),
                        "z" if t.len() == 2 && t[1] == "chain" => {
                            let mut terms = Vec::new();
                            loop {
                                let Some((cl, ct)) = body.get(i).cloned() else {
                                    return Err(p.parse_err(ln, "z chain block is not closed by `end`"));
                                };
                                i += 1;
                                if ct == ["end"] {
                                    break;
                                }
                                let c = parse_rational(ct[0])
                                    .ok_or_else(|| p.parse_err(cl, format!("bad coefficient `{}`", ct[0])))?;
                                terms.push((c, simplex_tokens(&p, cl, &ct[1..])?));
                            }
                            raw.z.push((ln, ZSpec::Chain(terms)));
                        }
                        "z" => return Err(p.parse_err(ln, "expected `z fundamental` or `z chain`")),
                        "fiber" => {
                            raw.fiber = match t.as_slice() {
                                [_, "acyclic"] => FiberSpec::Acyclic,
                                [_, "spheres"] => FiberSpec::Spheres,
                                [_, "unspecified"] => FiberSpec::Unspecified,
                                [_, "complex", name] => FiberSpec::Complex(name.to_string()),
                                _ => {
                                    return Err(p.parse_err(
                                        ln,
                                        "expected `fiber acyclic|spheres|unspecified|complex NAME`",
                                    ))
                                }
                            }
                        }
                        other => return Err(p.parse_err(ln, format!("unexpected `{other}` in problem block"))),
                    }
                }
                problems.push((name, raw));
            }
            "table" => {
                if tokens.len() != 2 {
                    return Err(p.parse_err(line, "expected `table PATH`"));
                }
                table_lines.push((line, tokens[1].to_string()));
            }
            other => return Err(p.parse_err(line, format!("unexpected `{other}` at top level"))),
        }
    }

    let invalid = |line: usize, entity: String, reason: String| ProblemFileError::Validation {
        file: file.to_string(),
        line,
        entity,
        reason,
    };

    let mut table_paths = Vec::new();
    for (line, rel) in table_lines {
        let path = base.join(&rel);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| invalid(line, format!("table {rel}"), e.to_string()))?;
        table.extend_from_str(&text).map_err(|e| invalid(line, format!("table {rel}"), e.to_string()))?;
        table_paths.push(path);
    }

    let mut cx: BTreeMap<String, Arc<SimplicialComplex>> = BTreeMap::new();
    for (name, raw) in &complexes {
        if cx.contains_key(name) {
            return Err(invalid(raw.line, format!("complex {name}"), "defined twice".into()));
        }
        if raw.simplices.is_empty() {
            return Err(invalid(raw.line, format!("complex {name}"), "has no simplices".into()));
        }
        let k = SimplicialComplex::new(&raw.order, &raw.simplices)
            .map_err(|e| invalid(raw.line, format!("complex {name}"), e.to_string()))?;
        cx.insert(name.clone(), Arc::new(k));
    }
    let get_complex = |line: usize, entity: &str, name: &str| {
        cx.get(name)
            .cloned()
            .ok_or_else(|| invalid(line, entity.to_string(), format!("undefined complex `{name}`")))
    };

    let mut pr: BTreeMap<String, NamedPair> = BTreeMap::new();
    for (name, raw) in &pairs {
        let entity = format!("pair {name}");
        if pr.contains_key(name) {
            return Err(invalid(raw.line, entity, "defined twice".into()));
        }
        let total = get_complex(raw.line, &entity, &raw.complex)?;
        let pair = match &raw.sub {
            Some(s) => SimplicialPair::new(total, get_complex(raw.line, &entity, s)?)
                .map_err(|e| invalid(raw.line, entity.clone(), e.to_string()))?,
            None => SimplicialPair::absolute(total),
        };
        pr.insert(name.clone(), NamedPair { complex: raw.complex.clone(), sub: raw.sub.clone(), pair: Arc::new(pair) });
    }

    let mut mp: BTreeMap<String, SimplicialMap> = BTreeMap::new();
    for (name, raw) in &maps {
        let entity = format!("map {name}");
        if mp.contains_key(name) {
            return Err(invalid(raw.line, entity, "defined twice".into()));
        }
        let src = get_complex(raw.line, &entity, &raw.source)?;
        let tgt = get_complex(raw.line, &entity, &raw.target)?;
        let map = SimplicialMap::new(src, tgt, &raw.assignment).map_err(|e| invalid(raw.line, entity, e.to_string()))?;
        mp.insert(name.clone(), map);
    }

    let resolve_pair = |line: usize, entity: &str, name: &str| -> Result<(Arc<SimplicialPair>, String), ProblemFileError> {
        if let Some(np) = pr.get(name) {
            return Ok((np.pair.clone(), name.to_string()));
        }
        let k = cx
            .get(name)
            .ok_or_else(|| invalid(line, entity.to_string(), format!("undefined pair or complex `{name}`")))?;
        Ok((Arc::new(SimplicialPair::absolute(k.clone())), name.to_string()))
    };

    let mut specs: Vec<ProblemSpec> = Vec::new();
    for (name, raw) in &problems {
        let entity = format!("problem {name}");
        if specs.iter().any(|s| &s.name == name) {
            return Err(invalid(raw.line, entity, "defined twice".into()));
        }
        let need = |v: &Option<String>, what: &str| {
            v.clone().ok_or_else(|| invalid(raw.line, entity.clone(), format!("missing `{what}`")))
        };
        let (domain, domain_name) = resolve_pair(raw.line, &entity, &need(&raw.domain, "domain")?)?;
        let (target, target_name) = resolve_pair(raw.line, &entity, &need(&raw.target, "target")?)?;
        let f_name = need(&raw.f, "f")?;
        let g_name = need(&raw.g, "g")?;
        let get_map = |n: &str| {
            mp.get(n).cloned().ok_or_else(|| invalid(raw.line, entity.clone(), format!("undefined map `{n}`")))
        };
        let (f, g) = (get_map(&f_name)?, get_map(&g_name)?);
        let setup = CoincidenceSetup::with_computed_orientation((*domain).clone(), (*target).clone(), f, g)
            .map_err(|e| invalid(raw.line, entity.clone(), e.to_string()))?;
        let setup = Arc::new(setup);
        let n = setup.n();

        let z_specs: Vec<(usize, ZSpec)> =
            if raw.z.is_empty() { vec![(raw.line, ZSpec::Fundamental)] } else { raw.z.clone() };
        let mut classes = Vec::with_capacity(z_specs.len());
        for (zl, spec) in &z_specs {
            let z = match spec {
                ZSpec::Fundamental => fundamental_class(&domain, n)
                    .map_err(|e| invalid(*zl, entity.clone(), format!("z fundamental: {e}")))?
                    .chain()
                    .iter()
                    .map(to_q)
                    .collect(),
                ZSpec::Chain(terms) => {
                    let total = domain.total();
                    let mut z = vec![BigRational::zero(); domain.rel_count(n)];
                    for (c, labels) in terms {
                        if labels.len() != n + 1 {
                            return Err(invalid(
                                *zl,
                                entity.clone(),
                                format!("z term {labels:?} is not an {n}-simplex"),
                            ));
                        }
                        let s = total
                            .simplex_from_labels(labels)
                            .map_err(|e| invalid(*zl, entity.clone(), e.to_string()))?;
                        let sign = total.orientation_sign(labels).unwrap_or(1);
                        let i = total
                            .index_of(&s)
                            .ok_or_else(|| invalid(*zl, entity.clone(), format!("{labels:?} is not a simplex of the domain")))?;
                        if let Some(r) = domain.rel_position(n, i) {
                            if sign < 0 {
                                z[r] -= c;
                            } else {
                                z[r] += c;
                            }
                        }
                    }
                    z
                }
            };
            setup
                .problem(z.clone())
                .map_err(|e| invalid(*zl, entity.clone(), format!("z: {e}")))?;
            classes.push(z);
        }

        let fiber = match &raw.fiber {
            FiberSpec::Acyclic => FiberDescription::Acyclic,
            FiberSpec::Spheres => FiberDescription::HomologySpheres,
            FiberSpec::Unspecified => FiberDescription::Unspecified,
            FiberSpec::Complex(c) => {
                let k = get_complex(raw.line, &entity, c)?;
                let groups: Vec<FgAbelianGroup> =
                    cohomology(&SimplicialPair::absolute(k), Coefficients::Integers).groups();
                FiberDescription::Cohomology(groups)
            }
        };

        specs.push(ProblemSpec {
            name: name.clone(),
            line: raw.line,
            domain: domain_name,
            target: target_name,
            f: f_name,
            g: g_name,
            z_specs: z_specs.into_iter().map(|(_, s)| s).collect(),
            fiber,
            setup,
            classes,
        });
    }
    specs.sort_by(|a, b| a.name.cmp(&b.name));

    Ok(ProblemFile { complexes: cx, pairs: pr, maps: mp, problems: specs, table, table_paths })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    const S2: &str = "
complex S2
  simplex a b c
  simplex a b d
  simplex a c d
  simplex b c d
end
map id : S2 -> S2
  a -> a
  b -> b
  c -> c
  d -> d
end
";

    #[test]
    fn parses_problem() {
        let text = format!("{S2}problem p\n domain S2\n target S2\n f id\n g id\nend\n");
        let file = parse_str(&text).unwrap();
        assert_eq!(file.problems.len(), 1);
        let spec = &file.problems[0];
        assert_eq!(spec.z_specs, vec![ZSpec::Fundamental]);
        let l = spec.problems()[0].lefschetz_number().unwrap();
        assert_eq!(l, BigRational::from_integer(2.into()));
    }

    #[test]
    fn explicit_chain_matches_fundamental() {
        let text = format!(
            "{S2}problem p\n domain S2\n target S2\n f id\n g id\n z chain\n  1 b c d\n  -1 a c d\n  1 a b d\n  -1 a b c\n end\n z fundamental\nend\n"
        );
        let file = parse_str(&text).unwrap();
        let spec = &file.problems[0];
        let neg: Vec<BigRational> = spec.classes[1].iter().map(|c| -c).collect();
        assert!(spec.classes[0] == spec.classes[1] || spec.classes[0] == neg);
        // odd permutation of the vertex order flips the sign
        let text = format!("{S2}problem p\n domain S2\n target S2\n f id\n g id\n z chain\n  1 c b d\n  1 a c d\n  -1 a b d\n  1 a b c\n end\nend\n");
        let flipped = parse_str(&text).unwrap();
        let l = flipped.problems[0].problems()[0].lefschetz_number().unwrap().abs();
        assert_eq!(l, BigRational::from_integer(2.into()));
    }

    #[test]
    fn undefined_complex_is_validation_error() {
        let err = parse_str("pair P = Nowhere\n").unwrap_err();
        match err {
            ProblemFileError::Validation { line, reason, .. } => {
                assert_eq!(line, 1);
                assert!(reason.contains("Nowhere"));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn malformed_simplex_is_parse_error() {
        let err = parse_str("complex K\n  simplex a b\n  simplex a a\nend\n").unwrap_err();
        assert!(matches!(err, ProblemFileError::Parse { line: 3, .. }));
        let err = parse_str("complex K\n  simplex\nend\n").unwrap_err();
        assert!(matches!(err, ProblemFileError::Parse { line: 2, .. }));
        let err = parse_str("complex K\n  simplex a b\n").unwrap_err();
        assert!(matches!(err, ProblemFileError::Parse { line: 1, .. }));
    }

    #[test]
    fn non_cycle_z_rejected() {
        let text = format!("{S2}problem p\n domain S2\n target S2\n f id\n g id\n z chain\n  1 a b c\n end\nend\n");
        let err = parse_str(&text).unwrap_err();
        assert!(matches!(err, ProblemFileError::Validation { line: 19, .. }), "{err}");
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6"), Some(BigRational::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
