//! Homomorphisms between backends, and retraction validation.

use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::semigroup::SemigroupHandle;

pub type ElementMap = Arc<dyn Fn(&Element) -> Result<Element> + Send + Sync>;

/// A map `source -> target` claimed to be a homomorphism. Validation is
/// exhaustive when the source is finite, sampled to a grade bound otherwise.
#[derive(Clone)]
pub struct Homomorphism {
    pub source: SemigroupHandle,
    pub target: SemigroupHandle,
    map: ElementMap,
    label: String,
}

impl std::fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Homomorphism")
            .field("label", &self.label)
            .field("source", &self.source.describe())
            .field("target", &self.target.describe())
            .finish()
    }
}

impl Homomorphism {
    pub fn new(
        label: impl Into<String>,
        source: &SemigroupHandle,
        target: &SemigroupHandle,
        map: ElementMap,
    ) -> Homomorphism {
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            map,
            label: label.into(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        let image = (self.map)(&self.source.canonical(x)?)?;
        self.target.canonical(&image)
    }

    /// Check `(xy)φ = xφ yφ` and totality into the target, over all of a
    /// finite source or all elements of grade at most `bound`.
    pub fn validate(&self, bound: u32) -> Result<()> {
        let universe = match self.source.elements() {
            Some(all) => all,
            None => self.source.enumerate(bound),
        };
        for x in &universe {
            let fx = self.apply(x)?;
            if !self.target.contains(&fx) {
                return Err(Error::Hypothesis(format!(
                    "{}: image of {} is outside the target",
                    self.label,
                    self.source.display(x)
                )));
            }
            for y in &universe {
                let lhs = self.apply(&self.source.product(x, y)?)?;
                let rhs = self.target.product(&fx, &self.apply(y)?)?;
                if lhs != rhs {
                    return Err(Error::Hypothesis(format!(
                        "{} is not a homomorphism at ({}, {}): {} != {}",
                        self.label,
                        self.source.display(x),
                        self.source.display(y),
                        self.target.display(&lhs),
                        self.target.display(&rhs),
                    )));
                }
            }
        }
        Ok(())
    }

    /// Check that this map is a retraction of the source onto the target:
    /// a homomorphism that fixes the target pointwise. The target must be a
    /// subsemigroup of the source sharing element representation.
    pub fn validate_retraction(&self, bound: u32) -> Result<()> {
        self.validate(bound)?;
        let members = match self.target.elements() {
            Some(all) => all,
            None => self.target.enumerate(bound),
        };
        for t in &members {
            if !self.source.contains(t) {
                return Err(Error::Hypothesis(format!(
                    "{}: target element {} is not an element of the source",
                    self.label,
                    self.target.display(t)
                )));
            }
            let ft = self.apply(t)?;
            if &ft != t {
                return Err(Error::Hypothesis(format!(
                    "{} does not fix {}: image is {}",
                    self.label,
                    self.target.display(t),
                    self.target.display(&ft),
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::table::{chain_semilattice, cyclic_group};
    use crate::backends::FreeCommutative;

    #[test]
    fn degree_map_is_a_homomorphism() {
        let f = SemigroupHandle::new(FreeCommutative::monoid(2).unwrap());
        let n = SemigroupHandle::new(FreeCommutative::monoid(1).unwrap());
        let h = Homomorphism::new(
            "total degree",
            &f,
            &n,
            Arc::new(|x: &Element| match x {
                Element::ExpVec(v) => Ok(Element::ExpVec(vec![v.iter().sum()])),
                _ => Err(Error::Invalid("not an exponent vector".into())),
            }),
        );
        h.validate(4).unwrap();
    }

    #[test]
    fn non_homomorphisms_are_rejected() {
        let g3 = SemigroupHandle::new(cyclic_group(3));
        let g2 = SemigroupHandle::new(cyclic_group(2));
        // There is no nontrivial map C3 -> C2; sending g to g breaks.
        let h = Homomorphism::new(
            "broken",
            &g3,
            &g2,
            Arc::new(|x: &Element| match x {
                Element::Table(0) => Ok(Element::Table(0)),
                _ => Ok(Element::Table(1)),
            }),
        );
        assert!(h.validate(4).is_err());
    }

    #[test]
    fn collapse_retraction_onto_a_subchain() {
        let c = SemigroupHandle::new(chain_semilattice(3));
        let sub = crate::constructions::sub::subsemigroup(
            &c,
            "top two",
            Arc::new(|e: &Element| matches!(e, Element::Table(0 | 1))),
            4,
        )
        .unwrap();
        // Send z2 to z1, fix 1 and z1: a retraction of the chain onto {1, z1}.
        let h = Homomorphism::new(
            "collapse",
            &c,
            &sub,
            Arc::new(|x: &Element| match x {
                Element::Table(2) => Ok(Element::Table(1)),
                other => Ok(other.clone()),
            }),
        );
        h.validate_retraction(4).unwrap();
    }
}
