//! Infinite symbolic families used by counterexample fixtures.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::semigroup::{Order, Semigroup};

/// The infinite left zero semigroup on `{n0, n1, n2, ...}`: `x * y = x`.
///
/// Its right ideals `xS^1 = {x}` make every element irreducible, so no
/// bounded search can produce a finite generating set for `S` as a right
/// ideal of itself.
#[derive(Clone, Debug)]
pub struct InfiniteLeftZero;

impl InfiniteLeftZero {
    fn index_of(&self, x: &Element) -> Result<u64> {
        match x {
            Element::Nat(k) => Ok(*k),
            _ => Err(Error::not_an_element(&self.describe(), format!("{x:?}"))),
        }
    }
}

impl Semigroup for InfiniteLeftZero {
    fn describe(&self) -> String {
        "left_zero(infinite)".to_string()
    }

    fn order(&self) -> Order {
        Order::Infinite
    }

    fn identity(&self) -> Option<Element> {
        None
    }

    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Nat(_))
    }

    fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        self.index_of(y)?;
        Ok(Element::Nat(self.index_of(x)?))
    }

    fn grade(&self, x: &Element) -> u32 {
        match x {
            Element::Nat(k) => *k as u32 + 1,
            _ => 0,
        }
    }

    fn enumerate(&self, bound: u32) -> Vec<Element> {
        (0..bound as u64).map(Element::Nat).collect()
    }

    fn display(&self, x: &Element) -> String {
        match x {
            Element::Nat(k) => format!("n{k}"),
            other => format!("{other:?}"),
        }
    }

    fn parse(&self, text: &str) -> Result<Element> {
        text.strip_prefix('n')
            .and_then(|rest| rest.parse::<u64>().ok())
            .map(Element::Nat)
            .ok_or_else(|| Error::not_an_element(&self.describe(), text))
    }

    fn right_divisors(&self, left: &Element, target: &Element, bound: u32) -> Vec<Element> {
        match (self.index_of(left), self.index_of(target)) {
            // x * c = x for every c, so the solution set is the whole
            // semigroup whenever target == left; report it up to the bound.
            (Ok(l), Ok(t)) if l == t => self.enumerate(bound),
            _ => Vec::new(),
        }
    }

    fn divisor_search_exact(&self) -> bool {
        false
    }

    fn is_left_cancellative_hint(&self) -> Option<bool> {
        Some(false)
    }
}
