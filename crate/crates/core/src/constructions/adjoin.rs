//! Adjoining an identity or a zero to a backend.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::semigroup::{Order, Semigroup, SemigroupHandle};

/// `S^1`: the base semigroup with a fresh identity written `1`.
#[derive(Debug)]
pub struct WithIdentity {
    base: SemigroupHandle,
}

/// Adjoin an identity unless the base already is a monoid, in which case the
/// base handle is returned unchanged.
pub fn adjoin_identity(base: &SemigroupHandle) -> SemigroupHandle {
    if base.identity().is_some() {
        base.clone()
    } else {
        SemigroupHandle::new(WithIdentity { base: base.clone() })
    }
}

impl Semigroup for WithIdentity {
    fn describe(&self) -> String {
        format!("adjoin1({})", self.base.describe())
    }

    fn order(&self) -> Order {
        match self.base.order() {
            Order::Finite(n) => Order::Finite(n + 1),
            Order::Infinite => Order::Infinite,
        }
    }

    fn identity(&self) -> Option<Element> {
        Some(Element::One)
    }

    fn zero(&self) -> Option<Element> {
        self.base.zero()
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::One) || self.base.contains(x)
    }

    fn canonical(&self, x: &Element) -> Result<Element> {
        match x {
            Element::One => Ok(Element::One),
            other => self.base.canonical(other),
        }
    }

    fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        match (x, y) {
            (Element::One, _) => self.canonical(y),
            (_, Element::One) => self.canonical(x),
            _ => self.base.product(x, y),
        }
    }

    fn grade(&self, x: &Element) -> u32 {
        match x {
            Element::One => 0,
            other => self.base.grade(other),
        }
    }

    fn enumerate(&self, bound: u32) -> Vec<Element> {
        let mut out = vec![Element::One];
        out.extend(self.base.enumerate(bound));
        out
    }

    fn elements(&self) -> Option<Vec<Element>> {
        let mut out = vec![Element::One];
        out.extend(self.base.elements()?);
        Some(out)
    }

    fn display(&self, x: &Element) -> String {
        match x {
            Element::One => "1".to_string(),
            other => self.base.display(other),
        }
    }

    fn parse(&self, text: &str) -> Result<Element> {
        if text == "1" {
            return Ok(Element::One);
        }
        self.base.parse(text)
    }

    fn right_divisors(&self, left: &Element, target: &Element, bound: u32) -> Vec<Element> {
        match left {
            // 1 * c = target forces c = target.
            Element::One => match self.canonical(target) {
                Ok(t) => vec![t],
                Err(_) => Vec::new(),
            },
            _ => {
                let mut out = Vec::new();
                if self.canonical(left).ok() == self.canonical(target).ok() {
                    out.push(Element::One);
                }
                if !matches!(target, Element::One) {
                    out.extend(self.base.right_divisors(left, target, bound));
                }
                out
            }
        }
    }

    fn divisor_search_exact(&self) -> bool {
        self.base.divisor_search_exact()
    }
}

/// `S^0`: the base semigroup with a fresh two-sided zero written `0`.
#[derive(Debug)]
pub struct WithZero {
    base: SemigroupHandle,
}

/// Adjoin a fresh zero. Errors when a base element already displays as `0`,
/// which would make element notation ambiguous.
pub fn adjoin_zero(base: &SemigroupHandle) -> Result<SemigroupHandle> {
    if let Some(all) = base.elements() {
        if all.iter().any(|e| base.display(e) == "0") {
            return Err(Error::Invalid(format!(
                "cannot adjoin a zero to {}: an element is already written `0`",
                base.describe()
            )));
        }
    }
    Ok(SemigroupHandle::new(WithZero { base: base.clone() }))
}

impl Semigroup for WithZero {
    fn describe(&self) -> String {
        format!("adjoin0({})", self.base.describe())
    }

    fn order(&self) -> Order {
        match self.base.order() {
            Order::Finite(n) => Order::Finite(n + 1),
            Order::Infinite => Order::Infinite,
        }
    }

    fn identity(&self) -> Option<Element> {
        self.base.identity()
    }

    fn zero(&self) -> Option<Element> {
        Some(Element::Zero)
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Zero) || self.base.contains(x)
    }

    fn canonical(&self, x: &Element) -> Result<Element> {
        match x {
            Element::Zero => Ok(Element::Zero),
            other => self.base.canonical(other),
        }
    }

    fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        match (x, y) {
            (Element::Zero, _) | (_, Element::Zero) => {
                self.canonical(x)?;
                self.canonical(y)?;
                Ok(Element::Zero)
            }
            _ => self.base.product(x, y),
        }
    }

    fn grade(&self, x: &Element) -> u32 {
        match x {
            Element::Zero => 0,
            other => self.base.grade(other),
        }
    }

    fn enumerate(&self, bound: u32) -> Vec<Element> {
        let mut out = vec![Element::Zero];
        out.extend(self.base.enumerate(bound));
        out
    }

    fn elements(&self) -> Option<Vec<Element>> {
        let mut out = vec![Element::Zero];
        out.extend(self.base.elements()?);
        Some(out)
    }

    fn display(&self, x: &Element) -> String {
        match x {
            Element::Zero => "0".to_string(),
            other => self.base.display(other),
        }
    }

    fn parse(&self, text: &str) -> Result<Element> {
        if text == "0" {
            return Ok(Element::Zero);
        }
        self.base.parse(text)
    }

    fn right_divisors(&self, left: &Element, target: &Element, bound: u32) -> Vec<Element> {
        match (left, target) {
            (Element::Zero, Element::Zero) => {
                // 0 * c = 0 for every c.
                let mut out = vec![Element::Zero];
                out.extend(self.base.enumerate(bound));
                out
            }
            (Element::Zero, _) => Vec::new(),
            (_, Element::Zero) => {
                if self.base.contains(left) {
                    vec![Element::Zero]
                } else {
                    Vec::new()
                }
            }
            _ => self.base.right_divisors(left, target, bound),
        }
    }

    fn divisor_search_exact(&self) -> bool {
        // Divisors of the zero are the whole semigroup, truncated on
        // infinite bases.
        self.base.order().is_finite() && self.base.divisor_search_exact()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::table::left_zero;
    use crate::backends::FreeCommutative;

    #[test]
    fn adjoining_to_a_monoid_is_a_no_op() {
        let m = SemigroupHandle::new(FreeCommutative::monoid(2).unwrap());
        let m1 = adjoin_identity(&m);
        assert_eq!(m1.describe(), m.describe());
    }

    #[test]
    fn adjoined_identity_multiplies_trivially() {
        let s = SemigroupHandle::new(left_zero(2));
        let s1 = adjoin_identity(&s);
        let a = s1.parse("a").unwrap();
        assert_eq!(s1.product(&Element::One, &a).unwrap(), a);
        assert_eq!(s1.product(&a, &Element::One).unwrap(), a);
        assert_eq!(s1.product(&a, &a).unwrap(), a);
        assert_eq!(s1.elements().unwrap().len(), 3);
    }

    #[test]
    fn adjoined_zero_absorbs() {
        let s = SemigroupHandle::new(FreeCommutative::monoid(1).unwrap());
        let s0 = adjoin_zero(&s).unwrap();
        let x = s0.parse("[2]").unwrap();
        assert_eq!(s0.product(&x, &Element::Zero).unwrap(), Element::Zero);
        assert_eq!(s0.product(&Element::Zero, &x).unwrap(), Element::Zero);
        assert_eq!(s0.identity(), s.identity());
    }

    #[test]
    fn zero_name_collisions_are_rejected() {
        let s = SemigroupHandle::new(crate::backends::table::null(2));
        assert!(adjoin_zero(&s).is_err());
    }
}
