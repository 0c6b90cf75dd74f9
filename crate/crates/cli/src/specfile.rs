//! Line-oriented semigroup spec files.
//!
//! A spec file describes one convolution semigroup in four sections:
//! `[monoid]` (time monoid kind and default horizon), `[carrier]` (the
//! instance and its carrier data), `[delta]` (the splitting rule or
//! comultiplication), and either a single `[phi]` section carrying a one-step
//! generator or numbered `[phi 1]`, `[phi 2]`, … sections with explicit
//! per-time tables. `#` starts a comment, keys and values are separated by
//! the first `=`, and every error names the offending line. The full grammar
//! ships in `docs/specfile.md`.

use std::collections::BTreeMap;

use catlevy_core::rat::{parse_rat, Rat};
use catlevy_core::uniprod::{Comultiplication, MomentFunctional};
use catlevy_core::words::{Element, Letter, Word};
use catlevy_core::Monoid;
use num_traits::One;

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Structure(String),
}

fn at(line: usize, msg: impl Into<String>) -> SpecError {
    SpecError::Line { line, msg: msg.into() }
}

/// One parsed spec file, still instance-agnostic: the builders in `main`
/// turn it into a comonoidal system of the requested category.
#[derive(Debug, Clone)]
pub struct SemigroupSpec {
    pub instance: String,
    pub monoid: Monoid,
    pub horizon: Option<usize>,
    pub carrier: Carrier,
    pub steps: Steps,
}

#[derive(Debug, Clone)]
pub enum Carrier {
    /// A cyclic group `Z/order` with the splitting `x -> (i, j), i + j = x`.
    Cyclic { order: usize },
    /// A generator family with a comultiplication and its counit values.
    Generated { comult: Comultiplication, degree: usize, eps: Vec<Rat> },
}

#[derive(Debug, Clone)]
pub enum Steps {
    /// One-step generator: distributions convolve, states take powers.
    OneStep(StepTable),
    /// Explicit tables for times `1..=n`; time zero is always implicit.
    PerStep(Vec<StepTable>),
}

#[derive(Debug, Clone)]
pub enum StepTable {
    Dist(Vec<Rat>),
    Moments(BTreeMap<Vec<usize>, Rat>),
}

// ---------------------------------------------------------------------------
// Raw section scanning
// ---------------------------------------------------------------------------

struct RawLine {
    line: usize,
    key: String,
    value: String,
}

struct RawSection {
    line: usize,
    name: String,
    entries: Vec<RawLine>,
}

fn scan_sections(text: &str) -> Result<Vec<RawSection>, SpecError> {
    let mut sections: Vec<RawSection> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(header) = content.strip_prefix('[') {
            let name = header
                .strip_suffix(']')
                .ok_or_else(|| at(line, "unterminated section header"))?
                .trim()
                .to_string();
            if name.is_empty() {
                return Err(at(line, "empty section name"));
            }
            sections.push(RawSection { line, name, entries: Vec::new() });
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| at(line, "expected `key = value` or a `[section]` header"))?;
        let section = sections
            .last_mut()
            .ok_or_else(|| at(line, "entry appears before any `[section]` header"))?;
        section.entries.push(RawLine {
            line,
            key: key.trim().to_string(),
            value: value.trim().to_string(),
        });
    }
    Ok(sections)
}

fn lookup<'a>(section: &'a RawSection, key: &str) -> Option<&'a RawLine> {
    section.entries.iter().find(|e| e.key == key)
}

fn require<'a>(section: &'a RawSection, key: &str) -> Result<&'a RawLine, SpecError> {
    lookup(section, key).ok_or_else(|| {
        at(section.line, format!("section [{}] is missing `{key} = …`", section.name))
    })
}

// ---------------------------------------------------------------------------
// Field parsers
// ---------------------------------------------------------------------------

fn parse_usize(entry: &RawLine) -> Result<usize, SpecError> {
    entry
        .value
        .parse::<usize>()
        .map_err(|_| at(entry.line, format!("`{}` is not a natural number", entry.value)))
}

fn parse_rat_list(entry: &RawLine) -> Result<Vec<Rat>, SpecError> {
    entry
        .value
        .split_whitespace()
        .map(|tok| parse_rat(tok).map_err(|e| at(entry.line, e)))
        .collect()
}

fn parse_monoid(entry: &RawLine) -> Result<Monoid, SpecError> {
    let v = entry.value.trim();
    if v == "nat" {
        return Ok(Monoid::nat_add());
    }
    if let Some(rest) = v.strip_prefix("dyadic(") {
        if let Some(level) = rest.strip_suffix(')') {
            let level = level
                .trim()
                .parse::<u32>()
                .map_err(|_| at(entry.line, format!("`{level}` is not a grid level")))?;
            return Ok(Monoid::dyadic_grid(level));
        }
    }
    Err(at(entry.line, format!("unknown monoid kind `{v}` (expected `nat` or `dyadic(L)`)")))
}

/// Parses a word key like `g g h` into symbol indices.
fn parse_word_key(key: &str, symbols: &[String], line: usize) -> Result<Vec<usize>, SpecError> {
    key.split_whitespace()
        .map(|name| {
            symbols
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| at(line, format!("unknown generator `{name}`")))
        })
        .collect()
}

/// Parses a two-leg element expression: terms separated by `+`/`-`, each a
/// product of optional rational coefficients and letters `name[0]`/`name[1]`.
fn parse_element(expr: &str, symbols: &[String], line: usize) -> Result<Element, SpecError> {
    let mut result = Element::zero();
    let mut sign = Rat::one();
    let mut coeff = Rat::one();
    let mut letters: Vec<Letter> = Vec::new();
    let mut has_content = false;

    let flush = |sign: &Rat,
                     coeff: &mut Rat,
                     letters: &mut Vec<Letter>,
                     has_content: &mut bool,
                     result: &mut Element|
     -> Result<(), SpecError> {
        if !*has_content {
            return Err(at(line, "empty term in element expression"));
        }
        let term = if letters.is_empty() {
            Element::scalar(sign.clone() * coeff.clone())
        } else {
            Element::word(std::mem::take(letters)).scale(&(sign.clone() * coeff.clone()))
        };
        *result = result.add(&term);
        *coeff = Rat::one();
        letters.clear();
        *has_content = false;
        Ok(())
    };

    for tok in expr.split_whitespace() {
        match tok {
            "+" | "-" => {
                flush(&sign, &mut coeff, &mut letters, &mut has_content, &mut result)?;
                sign = if tok == "-" { -Rat::one() } else { Rat::one() };
            }
            _ if tok.contains('[') => {
                let (name, rest) = tok.split_once('[').expect("checked above");
                let leg = rest
                    .strip_suffix(']')
                    .ok_or_else(|| at(line, format!("unterminated letter `{tok}`")))?;
                let leg: usize = leg
                    .parse()
                    .map_err(|_| at(line, format!("`{leg}` is not a leg index")))?;
                if leg > 1 {
                    return Err(at(line, format!("leg {leg} out of range: splittings have legs 0 and 1")));
                }
                let sym = symbols
                    .iter()
                    .position(|s| s == name)
                    .ok_or_else(|| at(line, format!("unknown generator `{name}`")))?;
                letters.push(Letter { leg, sym });
                has_content = true;
            }
            _ => {
                let r = parse_rat(tok).map_err(|_| {
                    at(line, format!("cannot read `{tok}`: expected a rational, `name[leg]`, `+` or `-`"))
                })?;
                coeff *= r;
                has_content = true;
            }
        }
    }
    flush(&sign, &mut coeff, &mut letters, &mut has_content, &mut result)?;
    Ok(result)
}

// ---------------------------------------------------------------------------
// Whole-file assembly
// ---------------------------------------------------------------------------

pub fn parse_spec(text: &str) -> Result<SemigroupSpec, SpecError> {
    let sections = scan_sections(text)?;
    let find = |name: &str| sections.iter().find(|s| s.name == name);

    let monoid_sec = find("monoid")
        .ok_or_else(|| SpecError::Structure("missing [monoid] section".into()))?;
    let monoid = parse_monoid(require(monoid_sec, "kind")?)?;
    let horizon = match lookup(monoid_sec, "horizon") {
        Some(entry) => Some(parse_usize(entry)?),
        None => None,
    };

    let carrier_sec = find("carrier")
        .ok_or_else(|| SpecError::Structure("missing [carrier] section".into()))?;
    let instance = require(carrier_sec, "instance")?.value.clone();
    let delta_sec =
        find("delta").ok_or_else(|| SpecError::Structure("missing [delta] section".into()))?;

    let carrier = match instance.as_str() {
        "prob" => {
            let order = parse_usize(require(carrier_sec, "order")?)?;
            if order == 0 {
                let entry = require(carrier_sec, "order")?;
                return Err(at(entry.line, "a cyclic group needs at least one element"));
            }
            let rule = require(delta_sec, "rule")?;
            if rule.value != "cyclic" {
                return Err(at(
                    rule.line,
                    format!("unknown splitting rule `{}` (only `cyclic` is supported)", rule.value),
                ));
            }
            Carrier::Cyclic { order }
        }
        "qps-tensor" | "qps-free" | "qps-boolean" | "qps-monotone" => {
            let generators = require(carrier_sec, "generators")?;
            let symbols: Vec<String> =
                generators.value.split_whitespace().map(|s| s.to_string()).collect();
            if symbols.is_empty() {
                return Err(at(generators.line, "need at least one generator"));
            }
            let degree = parse_usize(require(carrier_sec, "degree")?)?;
            if degree == 0 {
                let entry = require(carrier_sec, "degree")?;
                return Err(at(entry.line, "the degree bound must be at least 1"));
            }
            let mut images = Vec::with_capacity(symbols.len());
            for sym in &symbols {
                let entry = lookup(delta_sec, sym).ok_or_else(|| {
                    at(delta_sec.line, format!("[delta] is missing an image for `{sym}`"))
                })?;
                images.push(parse_element(&entry.value, &symbols, entry.line)?);
            }
            let comult = Comultiplication { symbols: symbols.clone(), images };
            if !comult.is_coassociative(degree.min(3)) {
                return Err(at(delta_sec.line, "the comultiplication is not coassociative"));
            }
            let eps = match lookup(carrier_sec, "eps") {
                Some(entry) => {
                    let eps = parse_rat_list(entry)?;
                    if eps.len() != symbols.len() {
                        return Err(at(
                            entry.line,
                            format!("eps gives {} values for {} generators", eps.len(), symbols.len()),
                        ));
                    }
                    if !comult.satisfies_counit(&eps, degree.min(3)) {
                        return Err(at(
                            entry.line,
                            "the given eps values do not satisfy the counit law",
                        ));
                    }
                    eps
                }
                None => solve_counit(&comult, degree.min(3), delta_sec.line)?,
            };
            Carrier::Generated { comult, degree, eps }
        }
        other => {
            let entry = require(carrier_sec, "instance")?;
            return Err(at(
                entry.line,
                format!(
                    "unknown instance `{other}` (expected prob, qps-tensor, qps-free, \
                     qps-boolean or qps-monotone)"
                ),
            ));
        }
    };

    let steps = parse_steps(&sections, &carrier)?;
    Ok(SemigroupSpec { instance, monoid, horizon, carrier, steps })
}

/// Finds counit values among `{0, 1}` per generator; the comultiplication
/// pins them down for the usual group-like and primitive shapes.
fn solve_counit(
    comult: &Comultiplication,
    probe_degree: usize,
    line: usize,
) -> Result<Vec<Rat>, SpecError> {
    let k = comult.symbols.len();
    if k > 16 {
        return Err(at(line, "too many generators to solve for the counit; add `eps = …`"));
    }
    let mut found: Option<Vec<Rat>> = None;
    for mask in 0u32..(1 << k) {
        let eps: Vec<Rat> = (0..k)
            .map(|i| if mask & (1 << i) != 0 { Rat::one() } else { Rat::from_integer(0.into()) })
            .collect();
        if comult.satisfies_counit(&eps, probe_degree) {
            if found.is_some() {
                return Err(at(
                    line,
                    "several counit candidates satisfy the counit law; add an explicit `eps = …`",
                ));
            }
            found = Some(eps);
        }
    }
    found.ok_or_else(|| {
        at(line, "no 0/1 counit satisfies the counit law; add an explicit `eps = …` line")
    })
}

fn parse_steps(sections: &[RawSection], carrier: &Carrier) -> Result<Steps, SpecError> {
    let plain: Vec<&RawSection> = sections.iter().filter(|s| s.name == "phi").collect();
    let mut numbered: Vec<(usize, &RawSection)> = Vec::new();
    for section in sections {
        if let Some(rest) = section.name.strip_prefix("phi ") {
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| at(section.line, format!("`[{}]` is not a phi section", section.name)))?;
            if n == 0 {
                return Err(at(section.line, "time zero is implicit; phi sections start at 1"));
            }
            numbered.push((n, section));
        }
    }

    match (plain.len(), numbered.len()) {
        (1, 0) => Ok(Steps::OneStep(parse_step_table(plain[0], carrier, true)?)),
        (0, 0) => Err(SpecError::Structure("missing [phi] section".into())),
        (0, _) => {
            numbered.sort_by_key(|(n, _)| *n);
            for (want, (got, section)) in numbered.iter().enumerate() {
                if *got != want + 1 {
                    return Err(at(
                        section.line,
                        format!("phi sections must cover 1..=n without gaps; found [phi {got}]"),
                    ));
                }
            }
            let tables = numbered
                .iter()
                .map(|(_, s)| parse_step_table(s, carrier, false))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Steps::PerStep(tables))
        }
        _ => Err(SpecError::Structure(
            "give either one [phi] section with a one-step generator or numbered \
             [phi 1], [phi 2], … sections, not both"
                .into(),
        )),
    }
}

fn parse_step_table(
    section: &RawSection,
    carrier: &Carrier,
    one_step: bool,
) -> Result<StepTable, SpecError> {
    match carrier {
        Carrier::Cyclic { order } => {
            let key = if one_step { "mu" } else { "dist" };
            let entry = require(section, key)?;
            let dist = parse_rat_list(entry)?;
            if dist.len() != *order {
                return Err(at(
                    entry.line,
                    format!("distribution has {} entries for a group of order {order}", dist.len()),
                ));
            }
            Ok(StepTable::Dist(dist))
        }
        Carrier::Generated { comult, degree, .. } => {
            let mut values: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
            let mut default: Option<Rat> = None;
            for entry in &section.entries {
                if entry.key == "default" {
                    default = Some(parse_rat(&entry.value).map_err(|e| at(entry.line, e))?);
                    continue;
                }
                let word = parse_word_key(&entry.key, &comult.symbols, entry.line)?;
                if word.is_empty() {
                    return Err(at(entry.line, "the empty word is fixed at 1"));
                }
                if word.len() > *degree {
                    return Err(at(
                        entry.line,
                        format!("word `{}` exceeds the degree bound {degree}", entry.key),
                    ));
                }
                if values.insert(word, parse_rat(&entry.value).map_err(|e| at(entry.line, e))?).is_some()
                {
                    return Err(at(entry.line, format!("duplicate moment for `{}`", entry.key)));
                }
            }
            if let Some(d) = default {
                for w in catlevy_core::uniprod::words_up_to(comult.symbols.len(), *degree) {
                    values.entry(w).or_insert_with(|| d.clone());
                }
            }
            if values.is_empty() {
                return Err(at(section.line, "a moment table needs at least one `word = value` line"));
            }
            Ok(StepTable::Moments(values))
        }
    }
}

// ---------------------------------------------------------------------------
// Standalone functional and word files (for the uniprod command)
// ---------------------------------------------------------------------------

/// Parses a flat functional file: `generators = …`, `degree = …`, optional
/// `default = …`, and one `word = value` line per moment.
pub fn parse_functional(text: &str) -> Result<MomentFunctional, SpecError> {
    let mut symbols: Option<(usize, Vec<String>)> = None;
    let mut degree: Option<usize> = None;
    let mut default: Option<Rat> = None;
    let mut raw: Vec<RawLine> = Vec::new();

    for (idx, line_text) in text.lines().enumerate() {
        let line = idx + 1;
        let content = line_text.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| at(line, "expected `key = value`"))?;
        let entry =
            RawLine { line, key: key.trim().to_string(), value: value.trim().to_string() };
        match entry.key.as_str() {
            "generators" => {
                symbols =
                    Some((entry.line, entry.value.split_whitespace().map(String::from).collect()))
            }
            "degree" => degree = Some(parse_usize(&entry)?),
            "default" => default = Some(parse_rat(&entry.value).map_err(|e| at(entry.line, e))?),
            _ => raw.push(entry),
        }
    }

    let (sym_line, symbols) =
        symbols.ok_or_else(|| SpecError::Structure("missing `generators = …` line".into()))?;
    if symbols.is_empty() {
        return Err(at(sym_line, "need at least one generator"));
    }
    let degree =
        degree.ok_or_else(|| SpecError::Structure("missing `degree = …` line".into()))?;

    let mut values: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
    for entry in &raw {
        let word = parse_word_key(&entry.key, &symbols, entry.line)?;
        if values.insert(word, parse_rat(&entry.value).map_err(|e| at(entry.line, e))?).is_some() {
            return Err(at(entry.line, format!("duplicate moment for `{}`", entry.key)));
        }
    }
    if let Some(d) = default {
        for w in catlevy_core::uniprod::words_up_to(symbols.len(), degree) {
            values.entry(w).or_insert_with(|| d.clone());
        }
    }
    MomentFunctional::new(symbols, degree, values)
        .map_err(|e| SpecError::Structure(e.to_string()))
}

/// Parses a word file against a pair of functionals: each line is a word
/// whose letters resolve by generator name, the left functional first. The
/// line `1` denotes the empty word.
pub fn parse_words(
    text: &str,
    left: &MomentFunctional,
    right: &MomentFunctional,
) -> Result<Vec<(String, Word)>, SpecError> {
    let mut out = Vec::new();
    for (idx, line_text) in text.lines().enumerate() {
        let line = idx + 1;
        let content = line_text.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content == "1" {
            out.push(("1".to_string(), Vec::new()));
            continue;
        }
        let mut word: Word = Vec::new();
        for name in content.split_whitespace() {
            let in_left = left.symbols.iter().position(|s| s == name);
            let in_right = right.symbols.iter().position(|s| s == name);
            let letter = match (in_left, in_right) {
                (Some(_), Some(_)) => {
                    return Err(at(
                        line,
                        format!("generator `{name}` appears in both functionals; rename one"),
                    ))
                }
                (Some(sym), None) => Letter { leg: 0, sym },
                (None, Some(sym)) => Letter { leg: 1, sym },
                (None, None) => return Err(at(line, format!("unknown generator `{name}`"))),
            };
            word.push(letter);
        }
        out.push((content.split_whitespace().collect::<Vec<_>>().join(" "), word));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use catlevy_core::rat::{rat, rat_int};

    const WALK: &str = "\
[monoid]
kind = nat
horizon = 4

[carrier]
instance = prob
order = 2

[delta]
rule = cyclic

[phi]
mu = 2/3 1/3
";

    #[test]
    fn parses_a_classical_walk_spec() {
        let spec = parse_spec(WALK).expect("valid spec");
        assert_eq!(spec.instance, "prob");
        assert_eq!(spec.horizon, Some(4));
        match (&spec.carrier, &spec.steps) {
            (Carrier::Cyclic { order: 2 }, Steps::OneStep(StepTable::Dist(d))) => {
                assert_eq!(d, &vec![rat(2, 3), rat(1, 3)]);
            }
            other => panic!("unexpected parse: {other:?}"),
        }
    }

    #[test]
    fn parses_a_state_spec_and_solves_the_counit() {
        let text = "\
[monoid]
kind = nat

[carrier]
instance = qps-tensor
generators = g
degree = 4

[delta]
g = g[0] g[1]

[phi]
g = 1/3
g g = 1
g g g = 1/3
g g g g = 1
";
        let spec = parse_spec(text).expect("valid spec");
        match &spec.carrier {
            Carrier::Generated { eps, degree, .. } => {
                assert_eq!(*degree, 4);
                // Group-like images force the counit value 1.
                assert_eq!(eps, &vec![rat_int(1)]);
            }
            other => panic!("unexpected carrier: {other:?}"),
        }
    }

    #[test]
    fn primitive_images_solve_to_a_zero_counit() {
        let text = "\
[monoid]
kind = nat

[carrier]
instance = qps-free
generators = x
degree = 3

[delta]
x = x[0] + x[1]

[phi]
default = 0
x x = 1
";
        let spec = parse_spec(text).expect("valid spec");
        match &spec.carrier {
            Carrier::Generated { eps, .. } => assert_eq!(eps, &vec![rat_int(0)]),
            other => panic!("unexpected carrier: {other:?}"),
        }
        match &spec.steps {
            Steps::OneStep(StepTable::Moments(values)) => {
                assert_eq!(values[&vec![0, 0]], rat_int(1));
                assert_eq!(values[&vec![0]], rat_int(0));
                assert_eq!(values.len(), 3);
            }
            other => panic!("unexpected steps: {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let broken = WALK.replace("mu = 2/3 1/3", "mu = 2/3 nonsense");
        let err = parse_spec(&broken).unwrap_err();
        assert!(err.to_string().starts_with("line 13:"), "{err}");

        let err = parse_spec("[monoid]\nkind = fancy\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(err.to_string().contains("fancy"), "{err}");

        let err = parse_spec("kind = nat\n").unwrap_err();
        assert!(err.to_string().contains("before any"), "{err}");
    }

    #[test]
    fn per_step_sections_must_be_contiguous() {
        let text = "\
[monoid]
kind = nat

[carrier]
instance = prob
order = 2

[delta]
rule = cyclic

[phi 1]
dist = 2/3 1/3

[phi 3]
dist = 1/2 1/2
";
        let err = parse_spec(text).unwrap_err();
        assert!(err.to_string().contains("without gaps"), "{err}");
    }

    #[test]
    fn element_expressions_support_scalars_and_signs() {
        let symbols = vec!["x".to_string()];
        let e = parse_element("1/2 x[0] x[0] - x[1] + 2", &symbols, 1).expect("valid expr");
        let half_sq = Element::word(vec![Letter { leg: 0, sym: 0 }, Letter { leg: 0, sym: 0 }])
            .scale(&rat(1, 2));
        let neg = Element::word(vec![Letter { leg: 1, sym: 0 }]).scale(&rat_int(-1));
        let expected = half_sq.add(&neg).add(&Element::scalar(rat_int(2)));
        assert_eq!(e, expected);

        assert!(parse_element("x[2]", &symbols, 1).is_err());
        assert!(parse_element("y[0]", &symbols, 1).is_err());
        assert!(parse_element("+", &symbols, 1).is_err());
    }

    #[test]
    fn functional_files_fill_defaults_and_validate() {
        let phi = parse_functional(
            "generators = a\ndegree = 3\ndefault = 0\na = 1/2\na a = 1/3\n",
        )
        .expect("valid functional");
        assert_eq!(phi.eval(&[0]).unwrap(), rat(1, 2));
        assert_eq!(phi.eval(&[0, 0, 0]).unwrap(), rat_int(0));

        let err = parse_functional("generators = a\ndegree = 2\na = 1/2\n").unwrap_err();
        assert!(err.to_string().contains("a a"), "{err}");
    }

    #[test]
    fn word_files_resolve_letters_by_functional() {
        let phi1 = parse_functional("generators = a\ndegree = 2\ndefault = 1\n").unwrap();
        let phi2 = parse_functional("generators = b\ndegree = 2\ndefault = 1\n").unwrap();
        let words = parse_words("1\na b a\n", &phi1, &phi2).expect("valid words");
        assert_eq!(words[0].1, Vec::new());
        assert_eq!(
            words[1].1,
            vec![
                Letter { leg: 0, sym: 0 },
                Letter { leg: 1, sym: 0 },
                Letter { leg: 0, sym: 0 }
            ]
        );
        assert!(parse_words("c\n", &phi1, &phi2).is_err());
    }
}
