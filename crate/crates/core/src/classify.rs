//! Per-element structure tests and right-ideal generator extraction.

use serde::Serialize;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::semigroup::{Order, SemigroupHandle, Verdict, greedy_right_generators};

/// Structural facts about one element. Finite backends answer exactly;
/// infinite backends may answer `Unknown` when no witness is found within
/// the bound.
#[derive(Clone, Debug, Serialize)]
pub struct ElementTraits {
    pub left_cancellative: Verdict,
    /// Whether `aS = {a^2}`.
    pub singleton_right_ideal: Verdict,
    /// Whether `a` lies in `aS`.
    pub right_factorisable: Verdict,
    /// A `b` with `a = a b a`, when one exists (found within the bound).
    #[serde(skip)]
    pub regular_partner: Option<Element>,
}

/// Classify `a` within `s`, searching multipliers up to `bound` on infinite
/// backends.
pub fn classify_element(s: &SemigroupHandle, a: &Element, bound: u32) -> Result<ElementTraits> {
    let a = s.canonical(a)?;
    let (universe, exhaustive) = match s.elements() {
        Some(all) => (all, true),
        None => (s.enumerate(bound), false),
    };

    let left_cancellative = match s.is_left_cancellative_hint() {
        Some(true) => Verdict::Yes,
        _ => {
            let mut violated = false;
            'outer: for x in &universe {
                let ax = s.product(&a, x)?;
                for y in &universe {
                    if x != y && ax == s.product(&a, y)? {
                        violated = true;
                        break 'outer;
                    }
                }
            }
            if violated {
                Verdict::No
            } else if exhaustive {
                Verdict::Yes
            } else {
                Verdict::Unknown
            }
        }
    };

    let a2 = s.product(&a, &a)?;
    let mut singleton = true;
    for x in &universe {
        if s.product(&a, x)? != a2 {
            singleton = false;
            break;
        }
    }
    let singleton_right_ideal = if !singleton {
        Verdict::No
    } else if exhaustive {
        Verdict::Yes
    } else {
        Verdict::Unknown
    };

    let mut right_factorisable = if exhaustive { Verdict::No } else { Verdict::Unknown };
    for x in &universe {
        if s.product(&a, x)? == a {
            right_factorisable = Verdict::Yes;
            break;
        }
    }

    let mut regular_partner = None;
    for b in &universe {
        let ab = s.product(&a, b)?;
        if s.product(&ab, &a)? == a {
            regular_partner = Some(b.clone());
            break;
        }
    }

    Ok(ElementTraits {
        left_cancellative,
        singleton_right_ideal,
        right_factorisable,
        regular_partner,
    })
}

/// Outcome of extracting a generating set for `S` as a right ideal of
/// itself (`S = US^1`).
#[derive(Clone, Debug)]
pub enum GeneratorOutcome {
    /// Minimal generating set, exact.
    Exact(Vec<Element>),
    /// Elements irreducible within the bound; may still grow with the bound.
    Bounded { generators: Vec<Element>, bound: u32 },
}

impl GeneratorOutcome {
    pub fn generators(&self) -> &[Element] {
        match self {
            GeneratorOutcome::Exact(g) => g,
            GeneratorOutcome::Bounded { generators, .. } => generators,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, GeneratorOutcome::Exact(_))
    }
}

/// A minimal `U` with `S = US^1`, computed exactly on finite backends and on
/// monoids (`U = {1}`), else greedily up to the bound.
pub fn right_ideal_generators(s: &SemigroupHandle, bound: u32) -> Result<GeneratorOutcome> {
    if let Some(one) = s.identity() {
        return Ok(GeneratorOutcome::Exact(vec![one]));
    }
    match s.order() {
        Order::Finite(_) => {
            let all = s.elements_checked("right_ideal_generators")?;
            let n = all.len() as u32;
            Ok(GeneratorOutcome::Exact(greedy_right_generators(
                &**s, &all, n,
            )))
        }
        Order::Infinite => {
            let universe = s.enumerate(bound);
            Ok(GeneratorOutcome::Bounded {
                generators: greedy_right_generators(&**s, &universe, bound),
                bound,
            })
        }
    }
}

/// Whether every pair of elements has a common right identity: for all
/// `a, b` some `s` with `as = a` and `bs = b`. Exact and finite-only.
pub fn has_pairwise_right_identities(s: &SemigroupHandle) -> Result<bool> {
    let all = s.elements_checked("has_pairwise_right_identities")?;
    for a in &all {
        for b in &all {
            let mut found = false;
            for x in &all {
                if s.product(a, x)? == *a && s.product(b, x)? == *b {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// First `s` with `as = a` and `bs = b`, used by certificate builders that
/// must replace a formal identity multiplier.
pub fn common_right_identity(
    s: &SemigroupHandle,
    a: &Element,
    b: &Element,
) -> Result<Element> {
    let all = s.elements_checked("common_right_identity")?;
    for x in &all {
        if s.product(a, x)? == *a && s.product(b, x)? == *b {
            return Ok(x.clone());
        }
    }
    Err(Error::Hypothesis(format!(
        "no common right identity for {} and {}",
        s.display(a),
        s.display(b)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::table::{cyclic_group, left_zero, null};
    use crate::backends::{FreeWords, InfiniteLeftZero};

    fn handle(s: impl crate::semigroup::Semigroup + 'static) -> SemigroupHandle {
        SemigroupHandle::new(s)
    }

    #[test]
    fn group_elements_are_cancellative_and_regular() {
        let g = handle(cyclic_group(3));
        let t = classify_element(&g, &Element::Table(1), 8).unwrap();
        assert_eq!(t.left_cancellative, Verdict::Yes);
        assert_eq!(t.right_factorisable, Verdict::Yes);
        assert!(t.regular_partner.is_some());
        assert_eq!(t.singleton_right_ideal, Verdict::No);
    }

    #[test]
    fn null_elements_have_singleton_right_ideals() {
        let s = handle(null(3));
        let t = classify_element(&s, &Element::Table(0), 8).unwrap();
        assert_eq!(t.singleton_right_ideal, Verdict::Yes);
        assert_eq!(t.left_cancellative, Verdict::No);
        assert_eq!(t.right_factorisable, Verdict::No);
    }

    #[test]
    fn free_monoid_elements_are_cancellative() {
        let f = handle(FreeWords::monoid("ab").unwrap());
        let a = f.parse("ab").unwrap();
        let t = classify_element(&f, &a, 4).unwrap();
        assert_eq!(t.left_cancellative, Verdict::Yes);
        // a * 1 = a, so the element is right factorisable in the monoid.
        assert_eq!(t.right_factorisable, Verdict::Yes);
    }

    #[test]
    fn left_zero_needs_every_element_as_generator() {
        let s = handle(left_zero(4));
        let out = right_ideal_generators(&s, 8).unwrap();
        assert!(out.is_exact());
        assert_eq!(out.generators().len(), 4);
    }

    #[test]
    fn infinite_left_zero_generators_grow_with_the_bound() {
        let s = handle(InfiniteLeftZero);
        let out = right_ideal_generators(&s, 6).unwrap();
        match out {
            GeneratorOutcome::Bounded { generators, bound } => {
                assert_eq!(generators.len(), 6);
                assert_eq!(bound, 6);
            }
            other => panic!("expected a bounded outcome, got {other:?}"),
        }
    }

    #[test]
    fn pairwise_right_identities() {
        assert!(has_pairwise_right_identities(&handle(left_zero(3))).unwrap());
        assert!(!has_pairwise_right_identities(&handle(null(2))).unwrap());
        assert!(has_pairwise_right_identities(&handle(cyclic_group(4))).unwrap());
    }
}
