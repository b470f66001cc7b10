//! Subsemigroups cut out by a membership predicate, with the structural
//! flags the extension results care about: is the complement an ideal, and
//! is the subsemigroup large (finite complement).

use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::semigroup::{Order, Semigroup, SemigroupHandle, Verdict};

pub type Predicate = Arc<dyn Fn(&Element) -> bool + Send + Sync>;

pub struct Subsemigroup {
    base: SemigroupHandle,
    pred: Predicate,
    label: String,
}

impl std::fmt::Debug for Subsemigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subsemigroup")
            .field("base", &self.base.describe())
            .field("label", &self.label)
            .finish()
    }
}

/// Structural relationship between the subsemigroup and its complement.
#[derive(Clone, Debug)]
pub struct SubsemigroupFlags {
    /// Whether `S \ T` is an ideal of `S`.
    pub complement_is_ideal: Verdict,
    /// Whether `S \ T` is finite.
    pub large: Verdict,
    /// Size of the complement when `large` is `Yes`.
    pub complement_size: Option<usize>,
    pub bound: Option<u32>,
}

/// Build a subsemigroup, validating closure under products: exhaustively on
/// finite bases, over all elements of grade at most `sample_bound` otherwise.
pub fn subsemigroup(
    base: &SemigroupHandle,
    label: impl Into<String>,
    pred: Predicate,
    sample_bound: u32,
) -> Result<SemigroupHandle> {
    let sub = Subsemigroup {
        base: base.clone(),
        pred,
        label: label.into(),
    };
    let universe = match base.elements() {
        Some(all) => all,
        None => base.enumerate(sample_bound),
    };
    let members: Vec<&Element> = universe.iter().filter(|e| (sub.pred)(e)).collect();
    if members.is_empty() {
        return Err(Error::Invalid(format!(
            "{}: no members found (is the predicate empty?)",
            sub.label
        )));
    }
    for a in &members {
        for b in &members {
            let p = base.product(a, b)?;
            if !(sub.pred)(&p) {
                return Err(Error::Hypothesis(format!(
                    "{} is not closed: {} * {} = {} escapes",
                    sub.label,
                    base.display(a),
                    base.display(b),
                    base.display(&p),
                )));
            }
        }
    }
    Ok(SemigroupHandle::new(sub))
}

/// Compute the complement flags of a subsemigroup of `base` given by `pred`.
/// Exact on finite bases; bounded evidence otherwise.
pub fn subsemigroup_flags(
    base: &SemigroupHandle,
    pred: &Predicate,
    bound: u32,
) -> Result<SubsemigroupFlags> {
    let (universe, exhaustive) = match base.elements() {
        Some(all) => (all, true),
        None => (base.enumerate(bound), false),
    };
    let complement: Vec<&Element> = universe.iter().filter(|e| !(pred)(e)).collect();

    let mut ideal_violation = false;
    'outer: for i in &complement {
        for s in &universe {
            for p in [base.product(i, s)?, base.product(s, i)?] {
                if pred(&p) {
                    ideal_violation = true;
                    break 'outer;
                }
            }
        }
    }
    let complement_is_ideal = if ideal_violation {
        Verdict::No
    } else if complement.is_empty() {
        // An ideal must be non-empty.
        Verdict::No
    } else if exhaustive {
        Verdict::Yes
    } else {
        Verdict::Unknown
    };

    let large = if exhaustive {
        Verdict::Yes
    } else if bound >= 2 {
        // Complement members at the top grade are evidence it keeps growing.
        let top = complement
            .iter()
            .any(|e| base.grade(e) >= bound.saturating_sub(1));
        if top {
            Verdict::No
        } else {
            Verdict::Unknown
        }
    } else {
        Verdict::Unknown
    };

    Ok(SubsemigroupFlags {
        complement_is_ideal,
        large,
        complement_size: exhaustive.then_some(complement.len()),
        bound: (!exhaustive).then_some(bound),
    })
}

impl Subsemigroup {
    fn member(&self, x: &Element) -> Result<Element> {
        let c = self.base.canonical(x)?;
        if (self.pred)(&c) {
            Ok(c)
        } else {
            Err(Error::not_an_element(&self.describe(), format!("{x:?}")))
        }
    }
}

impl Semigroup for Subsemigroup {
    fn describe(&self) -> String {
        format!("{} (inside {})", self.label, self.base.describe())
    }

    fn order(&self) -> Order {
        match self.base.order() {
            Order::Finite(_) => Order::Finite(self.elements().map(|e| e.len()).unwrap_or(0)),
            Order::Infinite => Order::Infinite,
        }
    }

    fn identity(&self) -> Option<Element> {
        let one = self.base.identity()?;
        (self.pred)(&one).then_some(one)
    }

    fn zero(&self) -> Option<Element> {
        let z = self.base.zero()?;
        (self.pred)(&z).then_some(z)
    }

    fn contains(&self, x: &Element) -> bool {
        self.member(x).is_ok()
    }

    fn canonical(&self, x: &Element) -> Result<Element> {
        self.member(x)
    }

    fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        let p = self.base.product(&self.member(x)?, &self.member(y)?)?;
        if (self.pred)(&p) {
            Ok(p)
        } else {
            Err(Error::Invalid(format!(
                "product {} escapes {}",
                self.base.display(&p),
                self.describe()
            )))
        }
    }

    fn grade(&self, x: &Element) -> u32 {
        self.base.grade(x)
    }

    fn enumerate(&self, bound: u32) -> Vec<Element> {
        self.base
            .enumerate(bound)
            .into_iter()
            .filter(|e| (self.pred)(e))
            .collect()
    }

    fn elements(&self) -> Option<Vec<Element>> {
        Some(
            self.base
                .elements()?
                .into_iter()
                .filter(|e| (self.pred)(e))
                .collect(),
        )
    }

    fn display(&self, x: &Element) -> String {
        self.base.display(x)
    }

    fn parse(&self, text: &str) -> Result<Element> {
        self.member(&self.base.parse(text)?)
    }

    fn right_divisors(&self, left: &Element, target: &Element, bound: u32) -> Vec<Element> {
        self.base
            .right_divisors(left, target, bound)
            .into_iter()
            .filter(|c| (self.pred)(c))
            .collect()
    }

    fn divisor_search_exact(&self) -> bool {
        self.base.divisor_search_exact()
    }

    fn is_left_cancellative_hint(&self) -> Option<bool> {
        // Cancellation is inherited by subsemigroups (but not its failure).
        match self.base.is_left_cancellative_hint() {
            Some(true) => Some(true),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::FreeCommutative;

    fn positive_pairs() -> (SemigroupHandle, Predicate) {
        let base = SemigroupHandle::new(FreeCommutative::monoid(2).unwrap());
        let pred: Predicate = Arc::new(|e: &Element| match e {
            Element::ExpVec(v) => v.iter().all(|&c| c > 0),
            _ => false,
        });
        (base, pred)
    }

    #[test]
    fn positive_quadrant_is_a_subsemigroup() {
        let (base, pred) = positive_pairs();
        let sub = subsemigroup(&base, "positive quadrant", pred, 6).unwrap();
        let x = sub.parse("[1,2]").unwrap();
        let y = sub.parse("[2,1]").unwrap();
        assert_eq!(sub.display(&sub.product(&x, &y).unwrap()), "[3,3]");
        assert!(sub.parse("[0,1]").is_err());
        assert!(sub.identity().is_none());
    }

    #[test]
    fn complement_of_the_quadrant_is_not_an_ideal_and_not_finite() {
        let (base, pred) = positive_pairs();
        let flags = subsemigroup_flags(&base, &pred, 6).unwrap();
        // (0,1) + (1,0) = (1,1) leaves the complement.
        assert_eq!(flags.complement_is_ideal, Verdict::No);
        assert_eq!(flags.large, Verdict::No);
    }

    #[test]
    fn closure_violations_are_reported_with_a_witness() {
        let base = SemigroupHandle::new(FreeCommutative::monoid(1).unwrap());
        let pred: Predicate = Arc::new(|e: &Element| match e {
            Element::ExpVec(v) => v[0] < 2,
            _ => false,
        });
        let err = subsemigroup(&base, "small exponents", pred, 6).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)), "{err}");
    }

    #[test]
    fn divisors_are_filtered_to_members() {
        let (base, pred) = positive_pairs();
        let sub = subsemigroup(&base, "positive quadrant", pred, 6).unwrap();
        // (3,4) = (3,3) * c forces c = (0,1), which is not a member.
        let divs = sub.right_divisors(
            &Element::ExpVec(vec![3, 3]),
            &Element::ExpVec(vec![3, 4]),
            8,
        );
        assert!(divs.is_empty());
    }
}
