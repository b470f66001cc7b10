//! The backend trait every semigroup implements, plus the shared handle type.
//!
//! Backends are immutable once built and every operation takes `&self`, so a
//! handle can be shared freely across threads. All partial answers carry the
//! bound they were computed under; only finite backends may claim exactness
//! by default.

use std::fmt::Debug;
use std::ops::Deref;
use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};

/// Cardinality of a backend.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    Finite(usize),
    Infinite,
}

impl Order {
    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

/// Three-valued answer for questions that may be undecidable within a bound.
/// Finite backends always answer `Yes` or `No`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }
}

/// Result of a principal right ideal intersection: a generating set for
/// `aS^1 ∩ bS^1` and whether it is exact or only correct up to the bound it
/// was computed under.
#[derive(Clone, Debug)]
pub struct IntersectionOutcome {
    pub generators: Vec<Element>,
    pub exact: bool,
}

/// A semigroup backend.
///
/// `canonical` must be idempotent and `product` must return canonical forms;
/// element equality is equality of canonical forms. `enumerate(bound)` lists
/// every element of grade at most `bound` exactly once in a deterministic
/// order, and every element appears at some finite bound.
pub trait Semigroup: Debug + Send + Sync {
    /// Short human-readable description of the backend.
    fn describe(&self) -> String;

    fn order(&self) -> Order;

    /// The identity element, when the backend is a monoid.
    fn identity(&self) -> Option<Element>;

    /// The (two-sided) zero element, when there is one.
    fn zero(&self) -> Option<Element> {
        None
    }

    fn contains(&self, x: &Element) -> bool;

    /// Canonical form of `x`; errors when `x` does not belong to the backend.
    fn canonical(&self, x: &Element) -> Result<Element> {
        if self.contains(x) {
            Ok(x.clone())
        } else {
            Err(Error::not_an_element(&self.describe(), format!("{x:?}")))
        }
    }

    fn product(&self, x: &Element, y: &Element) -> Result<Element>;

    /// Size measure used by bounded enumeration: word length, exponent sum,
    /// block count plus maximal inner grade, or index rank on finite tables.
    fn grade(&self, x: &Element) -> u32;

    /// Every element of grade at most `bound`, each exactly once, in a
    /// deterministic order.
    fn enumerate(&self, bound: u32) -> Vec<Element>;

    /// The full element list of a finite backend, `None` when infinite.
    fn elements(&self) -> Option<Vec<Element>> {
        None
    }

    fn display(&self, x: &Element) -> String;

    fn parse(&self, text: &str) -> Result<Element>;

    /// All `c` in the backend with `left * c == target`. The bound is only
    /// consulted when the solution set is infinite or requires an unbounded
    /// search; backends with closed-form factorization ignore it.
    fn right_divisors(&self, left: &Element, target: &Element, bound: u32) -> Vec<Element>;

    /// Whether `right_divisors` is complete (not merely complete up to the
    /// bound). Finite scans and closed-form factorizations are exact.
    fn divisor_search_exact(&self) -> bool;

    /// Backend-level knowledge about left cancellativity of its elements.
    fn is_left_cancellative_hint(&self) -> Option<bool> {
        None
    }

    /// Generating set for `aS^1 ∩ bS^1`. The default is a bounded brute
    /// force; backends with closed forms override it.
    fn intersect_principal(
        &self,
        a: &Element,
        b: &Element,
        bound: u32,
    ) -> Result<IntersectionOutcome> {
        bounded_intersection(self, a, b, bound)
    }
}

/// Shared, thread-safe reference to a backend.
#[derive(Clone, Debug)]
pub struct SemigroupHandle(Arc<dyn Semigroup>);

impl SemigroupHandle {
    pub fn new(backend: impl Semigroup + 'static) -> SemigroupHandle {
        SemigroupHandle(Arc::new(backend))
    }

    pub fn from_arc(backend: Arc<dyn Semigroup>) -> SemigroupHandle {
        SemigroupHandle(backend)
    }

    /// The full element list, erroring on infinite backends.
    pub fn elements_checked(&self, operation: &str) -> Result<Vec<Element>> {
        self.elements().ok_or_else(|| Error::RequiresFinite {
            operation: operation.to_string(),
            backend: self.describe(),
        })
    }

    /// `x * y * z ...` over a non-empty slice.
    pub fn product_all(&self, xs: &[Element]) -> Result<Element> {
        let mut iter = xs.iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::Invalid("product of an empty list".into()))?;
        let mut acc = self.canonical(first)?;
        for x in iter {
            acc = self.product(&acc, x)?;
        }
        Ok(acc)
    }

    /// Multiply by an optional right factor, `None` meaning the formal
    /// identity of `S^1`.
    pub fn product_opt(&self, x: &Element, c: Option<&Element>) -> Result<Element> {
        match c {
            Some(c) => self.product(x, c),
            None => self.canonical(x),
        }
    }

    /// Membership of `z` in the principal right ideal `g S^1`, complete up to
    /// the bound on backends without exact divisor search.
    pub fn in_principal_ideal(&self, g: &Element, z: &Element, bound: u32) -> Result<bool> {
        Ok(self.canonical(g)? == self.canonical(z)?
            || !self.right_divisors(g, z, bound).is_empty())
    }
}

impl Deref for SemigroupHandle {
    type Target = dyn Semigroup;

    fn deref(&self) -> &Self::Target {
        self.0.as_ref()
    }
}

/// Exhaustive associativity check for finite backends; returns the first
/// failing triple.
pub fn check_associativity_exhaustive(s: &dyn Semigroup) -> Result<()> {
    let elems = s.elements().ok_or_else(|| Error::RequiresFinite {
        operation: "exhaustive associativity check".into(),
        backend: s.describe(),
    })?;
    check_associativity_over(s, &elems)
}

/// Associativity check over all triples from `enumerate(bound)`. Used as a
/// sampled check on infinite backends.
pub fn check_associativity_bounded(s: &dyn Semigroup, bound: u32) -> Result<()> {
    let elems = s.enumerate(bound);
    check_associativity_over(s, &elems)
}

fn check_associativity_over(s: &dyn Semigroup, elems: &[Element]) -> Result<()> {
    for a in elems {
        for b in elems {
            let ab = s.product(a, b)?;
            for c in elems {
                let bc = s.product(b, c)?;
                if s.product(&ab, c)? != s.product(a, &bc)? {
                    return Err(Error::NotAssociative {
                        a: s.display(a),
                        b: s.display(b),
                        c: s.display(c),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Bounded brute-force principal intersection: enumerate to the bound, keep
/// the members of both ideals, return the irreducible ones among them.
pub fn bounded_intersection(
    s: &(impl Semigroup + ?Sized),
    a: &Element,
    b: &Element,
    bound: u32,
) -> Result<IntersectionOutcome> {
    let a = s.canonical(a)?;
    let b = s.canonical(b)?;
    let mut members: Vec<Element> = Vec::new();
    for z in s.enumerate(bound) {
        let in_a = z == a || !s.right_divisors(&a, &z, bound).is_empty();
        if !in_a {
            continue;
        }
        let in_b = z == b || !s.right_divisors(&b, &z, bound).is_empty();
        if in_b {
            members.push(z);
        }
    }
    let exact = s.order().is_finite()
        && s.elements().map_or(false, |all| {
            all.iter().all(|e| s.grade(e) <= bound)
        });
    Ok(IntersectionOutcome {
        generators: greedy_right_generators(s, &members, bound),
        exact,
    })
}

/// Greedily shrink `set` to a generating set of the right ideal it spans:
/// drop any member that is a right multiple of another kept member. The scan
/// order is the (deterministic) order of `set`, so on backends where mutual
/// divisibility is possible the first representative of each class survives.
/// On backends where distinct elements never divide each other both ways the
/// result is exactly the set of irreducible members.
pub fn greedy_right_generators(
    s: &(impl Semigroup + ?Sized),
    set: &[Element],
    bound: u32,
) -> Vec<Element> {
    let mut kept: Vec<Element> = set.to_vec();
    let mut i = 0;
    while i < kept.len() {
        let z = kept[i].clone();
        let covered = kept
            .iter()
            .enumerate()
            .any(|(j, y)| j != i && !s.right_divisors(y, &z, bound).is_empty());
        if covered {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept
}
