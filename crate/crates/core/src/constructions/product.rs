//! Direct products with componentwise multiplication.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::semigroup::{IntersectionOutcome, Order, Semigroup, SemigroupHandle};

#[derive(Debug)]
pub struct DirectProduct {
    left: SemigroupHandle,
    right: SemigroupHandle,
}

pub fn direct_product(left: &SemigroupHandle, right: &SemigroupHandle) -> SemigroupHandle {
    SemigroupHandle::new(DirectProduct {
        left: left.clone(),
        right: right.clone(),
    })
}

impl DirectProduct {
    fn parts<'a>(&self, x: &'a Element) -> Result<(&'a Element, &'a Element)> {
        match x {
            Element::Pair(a, b) if self.left.contains(a) && self.right.contains(b) => {
                Ok((a, b))
            }
            _ => Err(Error::not_an_element(&self.describe(), format!("{x:?}"))),
        }
    }
}

/// Split `(a,b)` at the top-level comma, respecting nested brackets.
pub fn split_pair_text(text: &str) -> Option<(&str, &str)> {
    let inner = text.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' | '[' | '<' => depth += 1,
            ')' | ']' | '>' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => return Some((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    None
}

impl Semigroup for DirectProduct {
    fn describe(&self) -> String {
        format!("product({}, {})", self.left.describe(), self.right.describe())
    }

    fn order(&self) -> Order {
        match (self.left.order(), self.right.order()) {
            (Order::Finite(n), Order::Finite(m)) => Order::Finite(n * m),
            _ => Order::Infinite,
        }
    }

    fn identity(&self) -> Option<Element> {
        Some(Element::pair(self.left.identity()?, self.right.identity()?))
    }

    fn zero(&self) -> Option<Element> {
        Some(Element::pair(self.left.zero()?, self.right.zero()?))
    }

    fn contains(&self, x: &Element) -> bool {
        self.parts(x).is_ok()
    }

    fn canonical(&self, x: &Element) -> Result<Element> {
        let (a, b) = self.parts(x)?;
        Ok(Element::pair(
            self.left.canonical(a)?,
            self.right.canonical(b)?,
        ))
    }

    fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        let (a, b) = self.parts(x)?;
        let (c, d) = self.parts(y)?;
        Ok(Element::pair(
            self.left.product(a, c)?,
            self.right.product(b, d)?,
        ))
    }

    fn grade(&self, x: &Element) -> u32 {
        match x {
            Element::Pair(a, b) => self.left.grade(a).max(self.right.grade(b)),
            _ => 0,
        }
    }

    fn enumerate(&self, bound: u32) -> Vec<Element> {
        let rights = self.right.enumerate(bound);
        self.left
            .enumerate(bound)
            .into_iter()
            .flat_map(|a| {
                rights
                    .iter()
                    .map(move |b| Element::pair(a.clone(), b.clone()))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    fn elements(&self) -> Option<Vec<Element>> {
        let lefts = self.left.elements()?;
        let rights = self.right.elements()?;
        Some(
            lefts
                .into_iter()
                .flat_map(|a| {
                    rights
                        .iter()
                        .map(move |b| Element::pair(a.clone(), b.clone()))
                        .collect::<Vec<_>>()
                })
                .collect(),
        )
    }

    fn display(&self, x: &Element) -> String {
        match x {
            Element::Pair(a, b) => {
                format!("({},{})", self.left.display(a), self.right.display(b))
            }
            other => format!("{other:?}"),
        }
    }

    fn parse(&self, text: &str) -> Result<Element> {
        let (a, b) = split_pair_text(text)
            .ok_or_else(|| Error::not_an_element(&self.describe(), text))?;
        Ok(Element::pair(self.left.parse(a)?, self.right.parse(b)?))
    }

    fn right_divisors(&self, left: &Element, target: &Element, bound: u32) -> Vec<Element> {
        let (Ok((a, b)), Ok((c, d))) = (self.parts(left), self.parts(target)) else {
            return Vec::new();
        };
        let firsts = self.left.right_divisors(a, c, bound);
        if firsts.is_empty() {
            return Vec::new();
        }
        let seconds = self.right.right_divisors(b, d, bound);
        firsts
            .into_iter()
            .flat_map(|u| {
                seconds
                    .iter()
                    .map(move |v| Element::pair(u.clone(), v.clone()))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    fn divisor_search_exact(&self) -> bool {
        self.left.divisor_search_exact() && self.right.divisor_search_exact()
    }

    fn is_left_cancellative_hint(&self) -> Option<bool> {
        match (
            self.left.is_left_cancellative_hint(),
            self.right.is_left_cancellative_hint(),
        ) {
            (Some(true), Some(true)) => Some(true),
            (Some(false), _) | (_, Some(false)) => Some(false),
            _ => None,
        }
    }

    /// For monoid factors `(a,b)(S×T)^1 ∩ (c,d)(S×T)^1 = (aS ∩ cS) × (bT ∩ dT)`,
    /// so the generating set is the componentwise cross product.
    fn intersect_principal(
        &self,
        x: &Element,
        y: &Element,
        bound: u32,
    ) -> Result<IntersectionOutcome> {
        if self.left.identity().is_none() || self.right.identity().is_none() {
            return crate::semigroup::bounded_intersection(self, x, y, bound);
        }
        let (a, b) = self.parts(x)?;
        let (c, d) = self.parts(y)?;
        let lx = self.left.intersect_principal(a, c, bound)?;
        let rx = self.right.intersect_principal(b, d, bound)?;
        let generators = lx
            .generators
            .into_iter()
            .flat_map(|u| {
                rx.generators
                    .iter()
                    .map(move |v| Element::pair(u.clone(), v.clone()))
                    .collect::<Vec<_>>()
            })
            .collect();
        Ok(IntersectionOutcome {
            generators,
            exact: lx.exact && rx.exact,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::table::{cyclic_group, left_zero};
    use crate::backends::FreeCommutative;

    #[test]
    fn componentwise_multiplication() {
        let n = SemigroupHandle::new(FreeCommutative::semigroup(1).unwrap());
        let p = direct_product(&n, &n);
        let x = p.parse("([1],[2])").unwrap();
        let y = p.parse("([2],[1])").unwrap();
        assert_eq!(p.display(&p.product(&x, &y).unwrap()), "([3],[3])");
    }

    #[test]
    fn monoid_product_intersection_is_componentwise() {
        let f = SemigroupHandle::new(FreeCommutative::monoid(1).unwrap());
        let p = direct_product(&f, &f);
        let out = p
            .intersect_principal(&p.parse("([1],[2])").unwrap(), &p.parse("([2],[1])").unwrap(), 8)
            .unwrap();
        assert!(out.exact);
        assert_eq!(out.generators, vec![p.parse("([2],[2])").unwrap()]);
    }

    #[test]
    fn finite_products_enumerate_the_box() {
        let p = direct_product(
            &SemigroupHandle::new(left_zero(2)),
            &SemigroupHandle::new(cyclic_group(3)),
        );
        assert_eq!(p.elements().unwrap().len(), 6);
        assert_eq!(p.order(), Order::Finite(6));
        assert!(p.identity().is_none());
    }

    #[test]
    fn pair_notation_round_trips() {
        let f = SemigroupHandle::new(FreeCommutative::monoid(2).unwrap());
        let p = direct_product(&f, &f);
        let x = p.parse("([1,0],[0,2])").unwrap();
        assert_eq!(p.parse(&p.display(&x)).unwrap(), x);
    }
}
