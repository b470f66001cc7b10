//! Finitely generated right ideals: membership, principal intersections,
//! irreducibility counts, and per-pair intersection reports.

use crate::congruence::PairSet;
use crate::element::Element;
use crate::error::Result;
use crate::semigroup::{greedy_right_generators, SemigroupHandle, Verdict};

/// Whether a reported generating set is complete or only correct up to a
/// search grade.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    Bounded(u32),
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact)
    }
}

/// The right ideal `XS^1` spanned by a finite generator list.
#[derive(Clone, Debug)]
pub struct RightIdeal {
    ambient: SemigroupHandle,
    generators: Vec<Element>,
    exactness: Exactness,
}

impl RightIdeal {
    pub fn new(
        ambient: SemigroupHandle,
        generators: impl IntoIterator<Item = Element>,
        exactness: Exactness,
    ) -> Result<RightIdeal> {
        let mut canon = Vec::new();
        for g in generators {
            let g = ambient.canonical(&g)?;
            if !canon.contains(&g) {
                canon.push(g);
            }
        }
        Ok(RightIdeal { ambient, generators: canon, exactness })
    }

    pub fn principal(ambient: SemigroupHandle, a: &Element) -> Result<RightIdeal> {
        RightIdeal::new(ambient, [a.clone()], Exactness::Exact)
    }

    pub fn ambient(&self) -> &SemigroupHandle {
        &self.ambient
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Membership of `x` in `XS^1`: `x` equals a generator or factors as
    /// `g*s`. No is conclusive only where the divisor search is complete.
    pub fn membership(&self, x: &Element, bound: u32) -> Verdict {
        let Ok(x) = self.ambient.canonical(x) else {
            return Verdict::No;
        };
        for g in &self.generators {
            if *g == x || !self.ambient.right_divisors(g, &x, bound).is_empty() {
                return Verdict::Yes;
            }
        }
        if self.ambient.divisor_search_exact() {
            Verdict::No
        } else {
            Verdict::Unknown
        }
    }

    /// All members among elements of grade at most `bound`.
    pub fn members_within(&self, bound: u32) -> Vec<Element> {
        self.ambient
            .enumerate(bound)
            .into_iter()
            .filter(|x| self.membership(x, bound).is_yes())
            .collect()
    }

    /// Whether the two ideals have the same members within the window; exact
    /// equality on finite ambients when the bound covers every grade.
    pub fn same_members_within(&self, other: &RightIdeal, bound: u32) -> bool {
        self.members_within(bound) == other.members_within(bound)
    }
}

/// Generating set for `aS^1 ∩ bS^1`, using the backend's closed form where
/// one exists and bounded brute force elsewhere.
pub fn intersect_principal(
    s: &SemigroupHandle,
    a: &Element,
    b: &Element,
    bound: u32,
) -> Result<RightIdeal> {
    let outcome = (**s).intersect_principal(a, b, bound)?;
    let exactness = if outcome.exact { Exactness::Exact } else { Exactness::Bounded(bound) };
    RightIdeal::new(s.clone(), outcome.generators, exactness)
}

/// Members of `members` that no other listed member reaches by right
/// multiplication. On sets without mutual divisibility these are exactly the
/// elements every generating set must contain.
pub fn irreducible_members(
    s: &SemigroupHandle,
    members: &[Element],
    bound: u32,
) -> Vec<Element> {
    members
        .iter()
        .filter(|m| {
            !members
                .iter()
                .any(|y| y != *m && !s.right_divisors(y, m, bound).is_empty())
        })
        .cloned()
        .collect()
}

/// Evidence about finite generation of an ideal presented extensionally.
#[derive(Clone, Debug)]
pub enum FinitenessEvidence {
    /// A complete generating set (finite ambients, or windows known to cover
    /// the ideal).
    ExactYes { generators: Vec<Element> },
    /// Irreducible members within the window; growth of this count across a
    /// parametrized family is the artifact's surrogate for "not finitely
    /// generated".
    Bounded { irreducibles: Vec<Element>, bound: u32 },
}

impl FinitenessEvidence {
    pub fn count(&self) -> usize {
        match self {
            FinitenessEvidence::ExactYes { generators } => generators.len(),
            FinitenessEvidence::Bounded { irreducibles, .. } => irreducibles.len(),
        }
    }
}

/// Assess finite generation of the set of `members` (all lying in one right
/// ideal of `s`): a complete greedy generating set on finite ambients, an
/// irreducibility count within the window otherwise.
pub fn finite_generation_evidence(
    s: &SemigroupHandle,
    members: &[Element],
    bound: u32,
) -> FinitenessEvidence {
    if s.order().is_finite() && s.divisor_search_exact() {
        FinitenessEvidence::ExactYes {
            generators: greedy_right_generators(&**s, members, bound),
        }
    } else {
        FinitenessEvidence::Bounded {
            irreducibles: irreducible_members(s, members, bound),
            bound,
        }
    }
}

/// One pair's slice of an intersection survey.
#[derive(Clone, Debug)]
pub struct RihPairReport {
    pub a: Element,
    pub b: Element,
    pub comparable: bool,
    pub generators: Vec<Element>,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct RihReport {
    pub verdict: Verdict,
    pub bound: u32,
    pub pairs: Vec<RihPairReport>,
}

/// Survey `aS^1 ∩ bS^1` over element pairs: all pairs of a finite backend,
/// or pairs within the grade window of an infinite one. The verdict is yes
/// when every computed intersection is exact, unknown when any was only
/// bounded.
pub fn check_rih(s: &SemigroupHandle, bound: u32) -> Result<RihReport> {
    let universe = match s.elements() {
        Some(all) => all,
        None => s.enumerate(bound),
    };
    let mut pairs = Vec::new();
    let mut all_exact = true;
    for (i, a) in universe.iter().enumerate() {
        for b in &universe[i + 1..] {
            let comparable = s.in_principal_ideal(a, b, bound)?
                || s.in_principal_ideal(b, a, bound)?;
            let ideal = intersect_principal(s, a, b, bound)?;
            let exact = ideal.exactness().is_exact();
            all_exact &= exact;
            pairs.push(RihPairReport {
                a: a.clone(),
                b: b.clone(),
                comparable,
                generators: ideal.generators().to_vec(),
                exact,
            });
        }
    }
    let verdict = if all_exact { Verdict::Yes } else { Verdict::Unknown };
    Ok(RihReport { verdict, bound, pairs })
}

/// The content ideal `C(X)S^1` of a pair set.
pub fn content_ideal(s: &SemigroupHandle, x: &PairSet) -> Result<RightIdeal> {
    RightIdeal::new(s.clone(), x.elements(), Exactness::Exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::table::{cyclic_group, diamond_semilattice};
    use crate::backends::{FreeCommutative, FreeWords};
    use crate::congruence::generate_congruence;
    use crate::constructions::subsemigroup;
    use crate::element::Element;
    use crate::semigroup::Semigroup;
    use std::sync::Arc;

    fn handle(s: impl Semigroup + 'static) -> SemigroupHandle {
        SemigroupHandle::new(s)
    }

    #[test]
    fn word_ideal_membership_follows_prefixes() {
        let f = handle(FreeWords::monoid("abc").unwrap());
        let ideal = RightIdeal::principal(f.clone(), &f.parse("ab").unwrap()).unwrap();
        assert!(ideal.membership(&f.parse("abc").unwrap(), 6).is_yes());
        assert!(ideal.membership(&f.parse("ab").unwrap(), 6).is_yes());
        assert_eq!(ideal.membership(&f.parse("ba").unwrap(), 6), Verdict::No);
    }

    #[test]
    fn positive_quadrant_blocks_mixed_divisors() {
        // Inside the subsemigroup of strictly positive vectors, (3,4) is not
        // reachable from (3,3): the needed multiplier has a zero coordinate.
        let ambient = handle(FreeCommutative::monoid(2).unwrap());
        let positives = subsemigroup(
            &ambient,
            "positive quadrant",
            Arc::new(|e: &Element| match e {
                Element::ExpVec(v) => v.iter().all(|&c| c > 0),
                _ => false,
            }),
            8,
        )
        .unwrap();
        let ideal =
            RightIdeal::principal(positives.clone(), &Element::ExpVec(vec![3, 3])).unwrap();
        assert_eq!(ideal.membership(&Element::ExpVec(vec![3, 4]), 10), Verdict::No);
        assert!(ideal.membership(&Element::ExpVec(vec![4, 4]), 10).is_yes());
    }

    #[test]
    fn free_monoid_intersection_is_the_longer_prefix_ideal() {
        let f = handle(FreeWords::monoid("ab").unwrap());
        let ab = f.parse("ab").unwrap();
        let abc = f.parse("aba").unwrap();
        let ideal = intersect_principal(&f, &ab, &abc, 8).unwrap();
        assert!(ideal.exactness().is_exact());
        assert_eq!(ideal.generators(), &[abc.clone()]);
        let disjoint = intersect_principal(&f, &f.parse("a").unwrap(), &f.parse("b").unwrap(), 8)
            .unwrap();
        assert!(disjoint.is_empty());
        assert!(disjoint.exactness().is_exact());
    }

    #[test]
    fn free_commutative_intersection_is_componentwise_max() {
        let f = handle(FreeCommutative::monoid(2).unwrap());
        let x = Element::ExpVec(vec![1, 0]);
        let y = Element::ExpVec(vec![0, 1]);
        let ideal = intersect_principal(&f, &x, &y, 8).unwrap();
        assert!(ideal.exactness().is_exact());
        assert_eq!(ideal.generators(), &[Element::ExpVec(vec![1, 1])]);
    }

    #[test]
    fn quadrant_intersection_has_l_shaped_irreducibles() {
        let ambient = handle(FreeCommutative::monoid(2).unwrap());
        let positives = subsemigroup(
            &ambient,
            "positive quadrant",
            Arc::new(|e: &Element| match e {
                Element::ExpVec(v) => v.iter().all(|&c| c > 0),
                _ => false,
            }),
            8,
        )
        .unwrap();
        let a = Element::ExpVec(vec![1, 2]);
        let b = Element::ExpVec(vec![2, 1]);
        let ideal = intersect_principal(&positives, &a, &b, 12).unwrap();
        assert!(!ideal.exactness().is_exact());
        // Members in the box [3,B]^2 reduce to the two axis walls x=3, y=3.
        let box_cap = 6u32;
        let members: Vec<Element> = ideal
            .members_within(12)
            .into_iter()
            .filter(|e| match e {
                Element::ExpVec(v) => v.iter().all(|&c| c >= 3 && c <= box_cap),
                _ => false,
            })
            .collect();
        let irr = irreducible_members(&positives, &members, 12);
        let expected = 2 * (box_cap as usize - 2) - 1;
        assert_eq!(irr.len(), expected);
        for e in &irr {
            match e {
                Element::ExpVec(v) => assert!(v[0] == 3 || v[1] == 3),
                other => panic!("unexpected element {other:?}"),
            }
        }
    }

    #[test]
    fn finite_backends_report_exact_rih() {
        let report = check_rih(&handle(diamond_semilattice()), 8).unwrap();
        assert_eq!(report.verdict, Verdict::Yes);
        for pair in &report.pairs {
            assert!(pair.exact);
        }
        // In a semilattice the intersection of principal ideals is principal
        // on the meet.
        let meet_pair = report
            .pairs
            .iter()
            .find(|p| p.a == Element::Table(1) && p.b == Element::Table(2))
            .unwrap();
        assert_eq!(meet_pair.generators, vec![Element::Table(3)]);
        assert!(!meet_pair.comparable);
    }

    #[test]
    fn group_elements_are_all_comparable() {
        let report = check_rih(&handle(cyclic_group(4)), 8).unwrap();
        assert!(report.pairs.iter().all(|p| p.comparable));
    }

    #[test]
    fn content_of_closure_spans_the_content_ideal_of_generators() {
        let s = handle(diamond_semilattice());
        let x = crate::congruence::PairSet::from_pairs([
            (Element::Table(1), Element::Table(3)),
        ]);
        let cong = generate_congruence(&s, &x).unwrap();
        let from_generators = content_ideal(&s, &x).unwrap();
        let from_closure =
            RightIdeal::new(s.clone(), cong.content(), Exactness::Exact).unwrap();
        assert!(from_generators.same_members_within(&from_closure, 8));
    }
}
