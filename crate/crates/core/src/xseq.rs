//! Step-checked certificates for membership in a generated right congruence.
//!
//! A certificate from `a` to `b` over a symmetric pair set `X` is a chain
//! `a = p1 c1, q1 c1 = p2 c2, ..., qn cn = b` where every `(pi, qi)` lies in
//! `X` and every `ci` is an element or the formal identity. An empty chain
//! certifies `a = b`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::congruence::PairSet;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::semigroup::SemigroupHandle;

/// One link of a certificate: the pair used and the right multiplier.
/// `c = None` encodes the formal identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XStep {
    pub p: Element,
    pub q: Element,
    pub c: Option<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSequence {
    pub source: Element,
    pub target: Element,
    pub steps: Vec<XStep>,
}

impl XSequence {
    pub fn trivial(a: Element) -> XSequence {
        XSequence { source: a.clone(), target: a, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The reverse certificate, from target to source: steps reversed with
    /// `p` and `q` swapped (valid because pair sets are symmetric).
    pub fn reversed(&self) -> XSequence {
        XSequence {
            source: self.target.clone(),
            target: self.source.clone(),
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| XStep { p: s.q.clone(), q: s.p.clone(), c: s.c.clone() })
                .collect(),
        }
    }

    /// Concatenate with a certificate starting where this one ends.
    pub fn then(&self, next: &XSequence) -> Result<XSequence> {
        if self.target != next.source {
            return Err(Error::Invalid(format!(
                "cannot chain certificates: first ends at {:?}, second starts at {:?}",
                self.target, next.source
            )));
        }
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().cloned());
        Ok(XSequence { source: self.source.clone(), target: next.target.clone(), steps })
    }
}

/// Outcome of checking a certificate, with the 1-based index of the first
/// failing step (0 for endpoint failures of an empty chain).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceVerdict {
    Valid,
    Invalid { step: usize, reason: String },
}

impl SequenceVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, SequenceVerdict::Valid)
    }
}

fn invalid(step: usize, reason: impl Into<String>) -> SequenceVerdict {
    SequenceVerdict::Invalid { step, reason: reason.into() }
}

/// Check every equality and every pair membership of a certificate.
pub fn verify_xsequence(s: &SemigroupHandle, x: &PairSet, seq: &XSequence) -> SequenceVerdict {
    let canon = |e: &Element| s.canonical(e);
    let (source, target) = match (canon(&seq.source), canon(&seq.target)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return invalid(0, "source or target is not an element of the backend"),
    };
    if seq.steps.is_empty() {
        return if source == target {
            SequenceVerdict::Valid
        } else {
            invalid(0, "empty chain with distinct endpoints")
        };
    }
    let mut left = source;
    for (i, step) in seq.steps.iter().enumerate() {
        let n = i + 1;
        if !x.contains(&step.p, &step.q) {
            return invalid(
                n,
                format!("pair ({}, {}) is not in X", s.display(&step.p), s.display(&step.q)),
            );
        }
        let pc = match s.product_opt(&step.p, step.c.as_ref()) {
            Ok(v) => v,
            Err(e) => return invalid(n, format!("left side does not multiply: {e}")),
        };
        if pc != left {
            return invalid(
                n,
                format!(
                    "chain breaks: expected {} but p*c = {}",
                    s.display(&left),
                    s.display(&pc)
                ),
            );
        }
        left = match s.product_opt(&step.q, step.c.as_ref()) {
            Ok(v) => v,
            Err(e) => return invalid(n, format!("right side does not multiply: {e}")),
        };
    }
    if left == target {
        SequenceVerdict::Valid
    } else {
        invalid(
            seq.steps.len(),
            format!("chain ends at {} instead of {}", s.display(&left), s.display(&target)),
        )
    }
}

/// Breadth-first search for a shortest certificate from `a` to `b` within
/// `depth` steps. Factorizations `u = p*c` come from the backend's divisor
/// search at grade `bound`, plus the formal identity when `u = p`.
/// On finite backends with exhaustive divisor search the failure to find a
/// certificate at sufficient depth is conclusive; elsewhere it is not.
pub fn find_xsequence(
    s: &SemigroupHandle,
    x: &PairSet,
    a: &Element,
    b: &Element,
    depth: u32,
    bound: u32,
) -> Result<Option<XSequence>> {
    let a = s.canonical(a)?;
    let b = s.canonical(b)?;
    if a == b {
        return Ok(Some(XSequence::trivial(a)));
    }
    let pairs = x.symmetric_pairs();
    let mut visited: BTreeSet<Element> = BTreeSet::new();
    let mut parent: BTreeMap<Element, (Element, XStep)> = BTreeMap::new();
    let mut frontier: VecDeque<Element> = VecDeque::new();
    visited.insert(a.clone());
    frontier.push_back(a.clone());
    let mut level = 0u32;
    'search: while !frontier.is_empty() && level < depth {
        level += 1;
        for _ in 0..frontier.len() {
            let u = frontier.pop_front().expect("frontier is non-empty");
            for (p, q) in &pairs {
                let mut multipliers: Vec<Option<Element>> = Vec::new();
                if *p == u {
                    multipliers.push(None);
                }
                multipliers.extend(s.right_divisors(p, &u, bound).into_iter().map(Some));
                for c in multipliers {
                    let v = s.product_opt(q, c.as_ref())?;
                    if visited.contains(&v) {
                        continue;
                    }
                    visited.insert(v.clone());
                    let step = XStep { p: p.clone(), q: q.clone(), c };
                    parent.insert(v.clone(), (u.clone(), step));
                    if v == b {
                        break 'search;
                    }
                    frontier.push_back(v);
                }
            }
        }
    }
    if !parent.contains_key(&b) {
        return Ok(None);
    }
    let mut steps = Vec::new();
    let mut cur = b.clone();
    while cur != a {
        let (prev, step) = parent[&cur].clone();
        steps.push(step);
        cur = prev;
    }
    steps.reverse();
    Ok(Some(XSequence { source: a, target: b, steps }))
}

/// Render a certificate as a single line, `a | p q c | ... | b`, using the
/// backend's element notation and `1` for the formal identity.
pub fn serialize_xsequence(s: &SemigroupHandle, seq: &XSequence) -> String {
    let mut parts = vec![s.display(&seq.source)];
    for step in &seq.steps {
        let c = match &step.c {
            Some(c) => s.display(c),
            None => "1".to_string(),
        };
        parts.push(format!("{} {} {}", s.display(&step.p), s.display(&step.q), c));
    }
    parts.push(s.display(&seq.target));
    parts.join(" | ")
}

/// Parse the line format produced by `serialize_xsequence`. A multiplier
/// written `1` becomes the formal identity unless the backend parses it as a
/// non-identity element.
pub fn parse_xsequence(s: &SemigroupHandle, text: &str) -> Result<XSequence> {
    let parts: Vec<&str> = text.split('|').map(str::trim).collect();
    if parts.len() < 2 {
        return Err(Error::Invalid(
            "certificate line needs at least source and target separated by |".into(),
        ));
    }
    let source = s.parse(parts[0])?;
    let target = s.parse(parts[parts.len() - 1])?;
    let mut steps = Vec::new();
    for (i, chunk) in parts[1..parts.len() - 1].iter().enumerate() {
        let fields: Vec<&str> = chunk.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Invalid(format!(
                "step {} must have three fields `p q c`, got {:?}",
                i + 1,
                chunk
            )));
        }
        let p = s.parse(fields[0])?;
        let q = s.parse(fields[1])?;
        let c = if fields[2] == "1" {
            match s.parse("1") {
                Ok(e) if s.identity().as_ref() == Some(&e) => None,
                Ok(e) => Some(e),
                Err(_) => None,
            }
        } else {
            Some(s.parse(fields[2])?)
        };
        steps.push(XStep { p, q, c });
    }
    Ok(XSequence { source, target, steps })
}
