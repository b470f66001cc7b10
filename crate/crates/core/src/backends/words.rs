//! Free semigroups and free monoids on a finite alphabet.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::semigroup::{IntersectionOutcome, Order, Semigroup};

/// Words over `alphabet` under concatenation. With `monoid` set the empty
/// word is the identity, written `1`.
#[derive(Clone, Debug)]
pub struct FreeWords {
    alphabet: Vec<char>,
    monoid: bool,
}

impl FreeWords {
    pub fn monoid(alphabet: &str) -> Result<FreeWords> {
        FreeWords::build(alphabet, true)
    }

    pub fn semigroup(alphabet: &str) -> Result<FreeWords> {
        FreeWords::build(alphabet, false)
    }

    fn build(alphabet: &str, monoid: bool) -> Result<FreeWords> {
        let letters: Vec<char> = alphabet.chars().collect();
        if letters.is_empty() {
            return Err(Error::Invalid("alphabet must be non-empty".into()));
        }
        let mut sorted = letters.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != letters.len() {
            return Err(Error::Invalid(format!("alphabet `{alphabet}` repeats a letter")));
        }
        if letters.iter().any(|c| !c.is_ascii_alphabetic()) {
            return Err(Error::Invalid(format!(
                "alphabet `{alphabet}` must be ASCII letters"
            )));
        }
        if letters.len() > 64 {
            return Err(Error::Invalid("alphabet too large (max 64 letters)".into()));
        }
        Ok(FreeWords { alphabet: letters, monoid })
    }

    pub fn is_monoid(&self) -> bool {
        self.monoid
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    fn letters_of<'a>(&self, x: &'a Element) -> Result<&'a [u8]> {
        match x {
            Element::Word(w)
                if w.iter().all(|&l| (l as usize) < self.alphabet.len())
                    && (self.monoid || !w.is_empty()) =>
            {
                Ok(w)
            }
            _ => Err(Error::not_an_element(&self.describe(), format!("{x:?}"))),
        }
    }
}

impl Semigroup for FreeWords {
    fn describe(&self) -> String {
        let alphabet: String = self.alphabet.iter().collect();
        if self.monoid {
            format!("free_monoid({alphabet})")
        } else {
            format!("free_sgp({alphabet})")
        }
    }

    fn order(&self) -> Order {
        Order::Infinite
    }

    fn identity(&self) -> Option<Element> {
        self.monoid.then(|| Element::Word(Vec::new()))
    }

    fn contains(&self, x: &Element) -> bool {
        self.letters_of(x).is_ok()
    }

    fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        let mut w = self.letters_of(x)?.to_vec();
        w.extend_from_slice(self.letters_of(y)?);
        Ok(Element::Word(w))
    }

    fn grade(&self, x: &Element) -> u32 {
        match x {
            Element::Word(w) => w.len() as u32,
            _ => 0,
        }
    }

    fn enumerate(&self, bound: u32) -> Vec<Element> {
        let k = self.alphabet.len();
        let mut out = Vec::new();
        if self.monoid {
            out.push(Element::Word(Vec::new()));
        }
        let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..bound {
            let mut next = Vec::with_capacity(layer.len() * k);
            for w in &layer {
                for l in 0..k {
                    let mut v = w.clone();
                    v.push(l as u8);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned().map(Element::Word));
            layer = next;
        }
        out
    }

    fn display(&self, x: &Element) -> String {
        match x {
            Element::Word(w) if w.is_empty() => "1".to_string(),
            Element::Word(w) => w
                .iter()
                .map(|&l| self.alphabet[l as usize])
                .collect(),
            other => format!("{other:?}"),
        }
    }

    fn parse(&self, text: &str) -> Result<Element> {
        if text == "1" && self.monoid {
            return Ok(Element::Word(Vec::new()));
        }
        let mut w = Vec::with_capacity(text.len());
        for c in text.chars() {
            match self.alphabet.iter().position(|&a| a == c) {
                Some(i) => w.push(i as u8),
                None => return Err(Error::not_an_element(&self.describe(), text)),
            }
        }
        if w.is_empty() {
            return Err(Error::not_an_element(&self.describe(), text));
        }
        Ok(Element::Word(w))
    }

    fn right_divisors(&self, left: &Element, target: &Element, _bound: u32) -> Vec<Element> {
        let (Ok(l), Ok(t)) = (self.letters_of(left), self.letters_of(target)) else {
            return Vec::new();
        };
        if t.len() >= l.len() && &t[..l.len()] == l {
            let suffix = t[l.len()..].to_vec();
            if !suffix.is_empty() || self.monoid {
                return vec![Element::Word(suffix)];
            }
        }
        Vec::new()
    }

    fn divisor_search_exact(&self) -> bool {
        true
    }

    fn is_left_cancellative_hint(&self) -> Option<bool> {
        Some(true)
    }

    /// `aF^1 ∩ bF^1` is principal when one word is a prefix of the other and
    /// empty otherwise.
    fn intersect_principal(
        &self,
        a: &Element,
        b: &Element,
        _bound: u32,
    ) -> Result<IntersectionOutcome> {
        let wa = self.letters_of(a)?;
        let wb = self.letters_of(b)?;
        let (short, long, long_elem) = if wa.len() <= wb.len() {
            (wa, wb, b)
        } else {
            (wb, wa, a)
        };
        let generators = if &long[..short.len()] == short {
            vec![long_elem.clone()]
        } else {
            Vec::new()
        };
        Ok(IntersectionOutcome { generators, exact: true })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(fm: &FreeWords, s: &str) -> Element {
        fm.parse(s).unwrap()
    }

    #[test]
    fn concatenation_and_identity() {
        let fm = FreeWords::monoid("ab").unwrap();
        let ab = fm.product(&w(&fm, "a"), &w(&fm, "b")).unwrap();
        assert_eq!(fm.display(&ab), "ab");
        let one = fm.identity().unwrap();
        assert_eq!(fm.product(&ab, &one).unwrap(), ab);
    }

    #[test]
    fn semigroup_variant_rejects_the_empty_word() {
        let fs = FreeWords::semigroup("ab").unwrap();
        assert!(fs.identity().is_none());
        assert!(!fs.contains(&Element::Word(Vec::new())));
        assert!(fs.parse("1").is_err());
    }

    #[test]
    fn prefix_intersection_closed_form() {
        let fm = FreeWords::monoid("ab").unwrap();
        let out = fm
            .intersect_principal(&w(&fm, "ab"), &w(&fm, "abba"), 0)
            .unwrap();
        assert_eq!(out.generators, vec![w(&fm, "abba")]);
        assert!(out.exact);
        let disjoint = fm
            .intersect_principal(&w(&fm, "ab"), &w(&fm, "ba"), 0)
            .unwrap();
        assert!(disjoint.generators.is_empty());
        assert!(disjoint.exact);
    }

    #[test]
    fn right_divisors_are_suffixes() {
        let fm = FreeWords::monoid("ab").unwrap();
        assert_eq!(
            fm.right_divisors(&w(&fm, "ab"), &w(&fm, "abba"), 0),
            vec![w(&fm, "ba")]
        );
        assert_eq!(
            fm.right_divisors(&w(&fm, "ab"), &w(&fm, "ab"), 0),
            vec![Element::Word(Vec::new())]
        );
        assert!(fm.right_divisors(&w(&fm, "b"), &w(&fm, "ab"), 0).is_empty());
    }

    #[test]
    fn enumeration_counts_words_by_length() {
        let fm = FreeWords::monoid("ab").unwrap();
        assert_eq!(fm.enumerate(3).len(), 1 + 2 + 4 + 8);
        let fs = FreeWords::semigroup("abc").unwrap();
        assert_eq!(fs.enumerate(2).len(), 3 + 9);
    }
}
