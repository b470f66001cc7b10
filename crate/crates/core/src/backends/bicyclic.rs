//! The bicyclic monoid: two generators with `p * q = 1` and `q * p` free.
//!
//! Elements are the normal forms `q^a p^b`, stored as a pair of exponents.
//! This is the smallest monoid with elements that are right invertible
//! without being invertible: `p * q = 1` but `q * p != 1`, so `p` fails to
//! be left cancellative even though it has a right inverse. That one-sided
//! behaviour is what the longer reduction cases of free product derivations
//! need, and no finite monoid can supply it.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::semigroup::{Order, Semigroup};

/// Monoid presented by `<p, q | p q = 1>`, elements `q^a p^b`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Bicyclic;

impl Bicyclic {
    pub fn new() -> Bicyclic {
        Bicyclic
    }

    /// The element `q^a p^b`.
    pub fn element(a: u64, b: u64) -> Element {
        Element::pair(Element::Nat(a), Element::Nat(b))
    }

    fn exponents(&self, x: &Element) -> Result<(u64, u64)> {
        if let Some((Element::Nat(a), Element::Nat(b))) = x.as_pair() {
            return Ok((*a, *b));
        }
        Err(Error::not_an_element(&self.describe(), format!("{x:?}")))
    }
}

impl Semigroup for Bicyclic {
    fn describe(&self) -> String {
        "bicyclic".into()
    }

    fn order(&self) -> Order {
        Order::Infinite
    }

    fn identity(&self) -> Option<Element> {
        Some(Bicyclic::element(0, 0))
    }

    fn zero(&self) -> Option<Element> {
        None
    }

    fn contains(&self, x: &Element) -> bool {
        self.exponents(x).is_ok()
    }

    fn canonical(&self, x: &Element) -> Result<Element> {
        self.exponents(x).map(|(a, b)| Bicyclic::element(a, b))
    }

    fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        let (a, b) = self.exponents(x)?;
        let (c, d) = self.exponents(y)?;
        // q^a p^b q^c p^d: the middle p^b q^c collapses pairwise.
        let m = b.min(c);
        Ok(Bicyclic::element(a + c - m, d + b - m))
    }

    fn grade(&self, x: &Element) -> u32 {
        match self.exponents(x) {
            Ok((a, b)) => (a + b) as u32,
            Err(_) => 0,
        }
    }

    fn enumerate(&self, bound: u32) -> Vec<Element> {
        let mut out = Vec::new();
        for total in 0..=u64::from(bound) {
            for a in 0..=total {
                out.push(Bicyclic::element(a, total - a));
            }
        }
        out
    }

    fn display(&self, x: &Element) -> String {
        match self.exponents(x) {
            Ok((0, 0)) => "1".into(),
            Ok((a, b)) => {
                let mut out = String::new();
                match a {
                    0 => {}
                    1 => out.push('q'),
                    _ => out.push_str(&format!("q{a}")),
                }
                match b {
                    0 => {}
                    1 => out.push('p'),
                    _ => out.push_str(&format!("p{b}")),
                }
                out
            }
            Err(_) => format!("{x:?}"),
        }
    }

    fn parse(&self, text: &str) -> Result<Element> {
        let text = text.trim();
        if text == "1" {
            return Ok(Bicyclic::element(0, 0));
        }
        let bad = || Error::not_an_element(&self.describe(), text);
        let mut rest = text;
        let mut take = |letter: char| -> Result<u64> {
            if let Some(tail) = rest.strip_prefix(letter) {
                let digits: String = tail.chars().take_while(char::is_ascii_digit).collect();
                rest = &tail[digits.len()..];
                if digits.is_empty() {
                    Ok(1)
                } else {
                    digits.parse().map_err(|_| bad())
                }
            } else {
                Ok(0)
            }
        };
        let a = take('q')?;
        let b = take('p')?;
        if rest.is_empty() && a + b > 0 {
            Ok(Bicyclic::element(a, b))
        } else {
            Err(bad())
        }
    }

    fn right_divisors(&self, left: &Element, target: &Element, _bound: u32) -> Vec<Element> {
        let (Ok((a, b)), Ok((c, d))) = (self.exponents(left), self.exponents(target)) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        // q^a p^b q^e p^f = target, split on whether p^b survives.
        if a == c {
            // e <= b: exponents (a, d + b - e) with f = d - (b - e) >= 0.
            let lo = b.saturating_sub(d);
            for e in lo..=b {
                out.push(Bicyclic::element(e, d + e - b));
            }
        }
        if c > a {
            // e > b consumes all of p^b and pushes the rest left.
            out.push(Bicyclic::element(b + (c - a), d));
        }
        out.sort_by_key(|x| self.exponents(x).map(|(e, f)| (e + f, e)).unwrap_or((0, 0)));
        out
    }

    fn divisor_search_exact(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::SemigroupHandle;

    fn b() -> SemigroupHandle {
        SemigroupHandle::new(Bicyclic::new())
    }

    #[test]
    fn defining_relation_holds_one_sided() {
        let s = b();
        let p = s.parse("p").unwrap();
        let q = s.parse("q").unwrap();
        assert_eq!(s.product(&p, &q).unwrap(), s.identity().unwrap());
        assert_eq!(s.product(&q, &p).unwrap(), s.parse("qp").unwrap());
    }

    #[test]
    fn products_match_exponent_arithmetic() {
        let s = b();
        let x = s.parse("q2p3").unwrap();
        let y = s.parse("q2").unwrap();
        // p^3 q^2 cancels twice, leaving q2 p^1; q^2 q^2 p^3 never cancels.
        assert_eq!(s.display(&s.product(&x, &y).unwrap()), "q2p");
        assert_eq!(s.display(&s.product(&y, &x).unwrap()), "q4p3");
    }

    #[test]
    fn display_parse_round_trip() {
        let s = b();
        for e in s.enumerate(4) {
            let text = s.display(&e);
            assert_eq!(s.parse(&text).unwrap(), e);
        }
    }

    #[test]
    fn p_has_unique_right_inverse_and_no_left_inverse() {
        let s = b();
        let p = s.parse("p").unwrap();
        let one = s.identity().unwrap();
        assert_eq!(s.right_divisors(&p, &one, 8), vec![s.parse("q").unwrap()]);
        let q = s.parse("q").unwrap();
        assert!(s.right_divisors(&q, &one, 8).is_empty());
    }

    #[test]
    fn divisors_enumerate_the_fiber() {
        let s = b();
        let p = s.parse("p").unwrap();
        // p * x = p2 has exactly the solutions p and qp2.
        let target = s.parse("p2").unwrap();
        let found = s.right_divisors(&p, &target, 12);
        let brute: Vec<Element> = s
            .enumerate(12)
            .into_iter()
            .filter(|x| s.product(&p, x).unwrap() == target)
            .collect();
        assert_eq!(found.len(), brute.len());
        for f in &found {
            assert!(brute.contains(f));
        }
    }
}
