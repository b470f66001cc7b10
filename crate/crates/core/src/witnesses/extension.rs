//! Annihilator generators across subsemigroups and small extensions.
//!
//! Two transfer directions live here. Going down: when the complement of a
//! subsemigroup `T` is an ideal of the ambient `S`, restricting a generating
//! set for an annihilator over `S` to pairs inside `T` yields a generating
//! set over `T`, because derivation chains between elements of `T` never
//! need to leave `T`. Going up: when `S \ T` is finite, a generating set
//! over `T` extends to one over `S` by adding the finitely many related
//! pairs among complement elements plus, for each complement element that is
//! related to something in `T`, one bridging pair into `T`. Adjoining an
//! identity or a zero are the one-element special cases.

use std::collections::BTreeMap;

use crate::congruence::{
    annihilator, bounded_annihilator_check, extract_generators, PairSet,
};
use crate::constructions::adjoin::{adjoin_identity, adjoin_zero};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::classify::{right_ideal_generators, GeneratorOutcome};
use crate::semigroup::{Order, SemigroupHandle};
use crate::xseq::find_xsequence;

use super::{check_certificates, oracle_check_annihilator, Verification, WitnessReport};
use super::regular::regular_witness;

fn search_depth(s: &SemigroupHandle, bound: u32) -> u32 {
    match s.order() {
        Order::Finite(n) => (n * n) as u32,
        Order::Infinite => bound * bound,
    }
}

/// Certificates for all related pairs of a finite ambient, found by search.
fn certificates_by_search(
    s: &SemigroupHandle,
    a: &Element,
    x: &PairSet,
    bound: u32,
) -> Result<Vec<crate::xseq::XSequence>> {
    let mut certs = Vec::new();
    for (u, v) in annihilator(s, a)?.nontrivial_pairs().iter() {
        let seq = find_xsequence(s, x, u, v, search_depth(s, bound), bound)?
            .ok_or_else(|| {
                Error::Verification(format!(
                    "no derivation found from {} to {}",
                    s.display(u),
                    s.display(v)
                ))
            })?;
        certs.push(seq);
    }
    Ok(certs)
}

/// Restrict a generating set for the annihilator of `a` over the ambient to
/// the subsemigroup `sub`, whose complement must be an ideal.
pub fn ideal_complement_witness(
    ambient: &SemigroupHandle,
    sub: &SemigroupHandle,
    a: &Element,
    x: &PairSet,
    bound: u32,
) -> Result<WitnessReport> {
    let a = ambient.canonical(a)?;
    if !sub.contains(&a) {
        return Err(Error::Hypothesis(format!(
            "{} is not in the subsemigroup",
            ambient.display(&a)
        )));
    }

    let mut hypotheses = Vec::new();
    if ambient.order().is_finite() {
        // The complement must absorb multiplication from both sides.
        let elems = ambient.elements_checked("complement ideal check")?;
        for e in elems.iter().filter(|e| !sub.contains(e)) {
            for s1 in &elems {
                if sub.contains(&ambient.product(e, s1)?)
                    || sub.contains(&ambient.product(s1, e)?)
                {
                    return Err(Error::Hypothesis(format!(
                        "the complement is not an ideal: products of {} escape it",
                        ambient.display(e)
                    )));
                }
            }
        }
        hypotheses.push("the complement of the subsemigroup is an ideal".into());
        oracle_check_annihilator(ambient, &a, x)?;
        hypotheses.push("the given pairs generate the ambient annihilator".into());
    } else {
        for e in ambient.enumerate(bound) {
            if sub.contains(&e) {
                continue;
            }
            for s1 in ambient.enumerate(bound) {
                if sub.contains(&ambient.product(&e, &s1)?)
                    || sub.contains(&ambient.product(&s1, &e)?)
                {
                    return Err(Error::Hypothesis(format!(
                        "the complement is not an ideal: products of {} escape it",
                        ambient.display(&e)
                    )));
                }
            }
        }
        hypotheses.push(format!(
            "the complement absorbs products within the grade-{} window",
            bound
        ));
        for (p, q) in x.iter() {
            if ambient.product(&a, p)? != ambient.product(&a, q)? {
                return Err(Error::Hypothesis(
                    "a given pair is outside the ambient annihilator".into(),
                ));
            }
        }
    }

    let y = x.restrict(|e| sub.contains(e));

    let (verification, certificates) = if sub.order().is_finite() {
        oracle_check_annihilator(sub, &a, &y)?;
        let certs = certificates_by_search(sub, &a, &y, bound)?;
        (Verification::OracleExact, certs)
    } else {
        if let Some((u, v)) = bounded_annihilator_check(sub, &y, &a, bound)? {
            return Err(Error::Verification(format!(
                "restricted pairs disagree with the annihilator at ({}, {})",
                sub.display(&u),
                sub.display(&v)
            )));
        }
        (
            Verification::Bounded {
                grade: bound,
                depth: search_depth(sub, bound),
            },
            Vec::new(),
        )
    };
    check_certificates(sub, &y, &certificates)?;

    Ok(WitnessReport {
        tag: "ideal-complement",
        description: format!(
            "annihilator generators for {} restricted from {} to {}",
            ambient.display(&a),
            ambient.describe(),
            sub.describe()
        ),
        hypotheses,
        generators: y,
        verification,
        certificates,
    })
}

/// Extend a generating set for the annihilator of `a` over the subsemigroup
/// `sub` to the ambient, which exceeds `sub` by finitely many elements.
///
/// `complement` overrides the computed complement (needed when the ambient
/// is infinite); `alpha` optionally fixes the bridging partner for a
/// complement element instead of taking the first one found.
pub fn small_extension_witness(
    ambient: &SemigroupHandle,
    sub: &SemigroupHandle,
    a: &Element,
    x: &PairSet,
    alpha: Option<&BTreeMap<Element, Element>>,
    complement: Option<&[Element]>,
    bound: u32,
) -> Result<WitnessReport> {
    let a = ambient.canonical(a)?;
    if !sub.contains(&a) {
        return Err(Error::Hypothesis(format!(
            "{} is not in the subsemigroup",
            ambient.display(&a)
        )));
    }

    let complement: Vec<Element> = match complement {
        Some(c) => {
            let mut out = Vec::new();
            for e in c {
                let e = ambient.canonical(e)?;
                if sub.contains(&e) {
                    return Err(Error::Hypothesis(
                        "a listed complement element lies in the subsemigroup".into(),
                    ));
                }
                out.push(e);
            }
            // The listed elements must exhaust the complement as far as we
            // can see.
            if !ambient.order().is_finite() {
                for e in ambient.enumerate(bound) {
                    if !sub.contains(&e) && !out.contains(&e) {
                        return Err(Error::Hypothesis(format!(
                            "unlisted complement element {} within the window",
                            ambient.display(&e)
                        )));
                    }
                }
            }
            out
        }
        None => {
            let elems = ambient.elements_checked("complement computation")?;
            elems.into_iter().filter(|e| !sub.contains(e)).collect()
        }
    };

    let mut hypotheses = vec![format!(
        "the subsemigroup misses only {} element(s)",
        complement.len()
    )];

    if sub.order().is_finite() {
        oracle_check_annihilator(sub, &a, x)?;
        hypotheses.push("the given pairs generate the annihilator over the subsemigroup".into());
    } else {
        for (p, q) in x.iter() {
            if ambient.product(&a, p)? != ambient.product(&a, q)? {
                return Err(Error::Hypothesis(
                    "a given pair is outside the annihilator".into(),
                ));
            }
        }
        hypotheses
            .push("the given pairs lie in the annihilator (containment only)".into());
    }

    let mut y = x.clone();
    // Related pairs among complement elements.
    for (i, u) in complement.iter().enumerate() {
        for v in complement.iter().skip(i + 1) {
            if ambient.product(&a, u)? == ambient.product(&a, v)? {
                y.insert(u.clone(), v.clone());
            }
        }
    }
    // One bridge from each complement element into the subsemigroup, when a
    // partner exists.
    let sub_elements: Vec<Element> = if sub.order().is_finite() {
        sub.elements_checked("bridge search")?
    } else {
        sub.enumerate(bound)
    };
    for u in &complement {
        let au = ambient.product(&a, u)?;
        let partner = match alpha.and_then(|m| m.get(u)) {
            Some(t) => {
                let t = ambient.canonical(t)?;
                if !sub.contains(&t) || ambient.product(&a, &t)? != au {
                    return Err(Error::Hypothesis(format!(
                        "the supplied bridge for {} is invalid",
                        ambient.display(u)
                    )));
                }
                Some(t)
            }
            None => {
                let mut found = None;
                for t in &sub_elements {
                    if ambient.product(&a, t)? == au {
                        found = Some(t.clone());
                        break;
                    }
                }
                found
            }
        };
        if let Some(t) = partner {
            y.insert(u.clone(), t);
        }
    }

    let (verification, certificates) = if ambient.order().is_finite() {
        oracle_check_annihilator(ambient, &a, &y)?;
        let certs = certificates_by_search(ambient, &a, &y, bound)?;
        (Verification::OracleExact, certs)
    } else {
        if let Some((u, v)) = bounded_annihilator_check(ambient, &y, &a, bound)? {
            return Err(Error::Verification(format!(
                "extended pairs disagree with the annihilator at ({}, {})",
                ambient.display(&u),
                ambient.display(&v)
            )));
        }
        (
            Verification::Bounded {
                grade: bound,
                depth: search_depth(ambient, bound),
            },
            Vec::new(),
        )
    };
    check_certificates(ambient, &y, &certificates)?;

    Ok(WitnessReport {
        tag: "small-extension",
        description: format!(
            "annihilator generators for {} extended from {} to {}",
            ambient.display(&a),
            sub.describe(),
            ambient.describe()
        ),
        hypotheses,
        generators: y,
        verification,
        certificates,
    })
}

/// Extend a generating set over `base` to `base` with an identity adjoined.
/// When the base is already a monoid this is the identity transfer.
pub fn adjoin_identity_witness(
    base: &SemigroupHandle,
    a: &Element,
    x: &PairSet,
    bound: u32,
) -> Result<WitnessReport> {
    let ambient = adjoin_identity(base);
    let complement: Vec<Element> = if base.identity().is_some() {
        Vec::new()
    } else {
        vec![Element::One]
    };
    let mut report = small_extension_witness(
        &ambient,
        base,
        a,
        x,
        None,
        Some(&complement),
        bound,
    )?;
    report.tag = "adjoin-identity";
    Ok(report)
}

/// Witnesses for a semigroup with a zero adjoined: one for the annihilator
/// of the new zero, and one per original element carrying its generating set
/// across the extension.
#[derive(Debug)]
pub struct AdjoinZeroReport {
    pub ambient: SemigroupHandle,
    pub zero: WitnessReport,
    pub elements: Vec<(Element, WitnessReport)>,
}

pub fn adjoin_zero_witness(s: &SemigroupHandle, bound: u32) -> Result<AdjoinZeroReport> {
    let u_set = match right_ideal_generators(s, bound)? {
        GeneratorOutcome::Exact(g) => g,
        GeneratorOutcome::Bounded { .. } => {
            return Err(Error::Hypothesis(
                "the base has no finite right ideal generating set within the bound".into(),
            ))
        }
    };
    let ambient = adjoin_zero(s)?;
    let zero = ambient.zero().expect("adjoined zero");

    // The zero is regular against itself, and u_set plus the zero reaches
    // every element of the extension.
    let mut gens = u_set.clone();
    gens.push(zero.clone());
    let mut zero_report = regular_witness(&ambient, &zero, &zero, &gens, bound)?;
    zero_report.tag = "adjoin-zero";

    let mut elements = Vec::new();
    if s.order().is_finite() {
        for a in s.elements_checked("per-element transfer")? {
            let x = extract_generators(s, &annihilator(s, &a)?)?;
            let mut report = small_extension_witness(
                &ambient,
                s,
                &a,
                &x,
                None,
                Some(std::slice::from_ref(&zero)),
                bound,
            )?;
            report.tag = "adjoin-zero";
            elements.push((a, report));
        }
    }

    Ok(AdjoinZeroReport {
        ambient,
        zero: zero_report,
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::table::{chain_semilattice, cyclic_group, diamond_semilattice, left_zero};
    use crate::constructions::subsemigroup;
    use crate::semigroup::Semigroup;
    use std::sync::Arc;

    fn handle(s: impl Semigroup + 'static) -> SemigroupHandle {
        SemigroupHandle::new(s)
    }

    #[test]
    fn chain_restricts_to_upper_set() {
        let s = handle(chain_semilattice(3));
        let keep: std::collections::BTreeSet<Element> =
            [s.parse("1").unwrap(), s.parse("z1").unwrap()].into();
        let pred = Arc::new(move |e: &Element| keep.contains(e));
        let sub = subsemigroup(&s, "upper", pred, 3).unwrap();
        let a = s.parse("z1").unwrap();
        let x = extract_generators(&s, &annihilator(&s, &a).unwrap()).unwrap();
        let report = ideal_complement_witness(&s, &sub, &a, &x, 3).unwrap();
        assert!(report.verification.is_exact());
        // Only the pair (1, z1) survives the restriction.
        assert_eq!(report.generators.len(), 1);
    }

    #[test]
    fn complement_must_be_an_ideal() {
        let s = handle(cyclic_group(4));
        let keep: std::collections::BTreeSet<Element> =
            [s.parse("1").unwrap(), s.parse("g2").unwrap()].into();
        let pred = Arc::new(move |e: &Element| keep.contains(e));
        let sub = subsemigroup(&s, "even", pred, 4).unwrap();
        let a = s.parse("g2").unwrap();
        let x = PairSet::new();
        let err = ideal_complement_witness(&s, &sub, &a, &x, 4).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }

    #[test]
    fn adjoined_identity_needs_one_bridge_pair() {
        let s = handle(left_zero(3));
        let a = s.parse("a").unwrap();
        let x = extract_generators(&s, &annihilator(&s, &a).unwrap()).unwrap();
        assert_eq!(x.len(), 2);
        let report = adjoin_identity_witness(&s, &a, &x, 4).unwrap();
        assert!(report.verification.is_exact());
        // Two original pairs plus a bridge from the new identity into the
        // base.
        assert_eq!(report.generators.len(), 3);
        assert!(report
            .generators
            .contains(&Element::One, &s.parse("a").unwrap()));
    }

    #[test]
    fn monoid_extension_is_the_identity_transfer() {
        let s = handle(diamond_semilattice());
        let a = s.parse("p").unwrap();
        let x = extract_generators(&s, &annihilator(&s, &a).unwrap()).unwrap();
        let report = adjoin_identity_witness(&s, &a, &x, 4).unwrap();
        assert_eq!(report.generators, x);
    }

    #[test]
    fn adjoined_zero_covers_all_elements() {
        let s = handle(left_zero(3));
        let report = adjoin_zero_witness(&s, 4).unwrap();
        // The zero's annihilator is universal on four elements.
        assert!(report.zero.verification.is_exact());
        assert_eq!(report.zero.generators.len(), 3);
        assert_eq!(report.elements.len(), 3);
        for (_, r) in &report.elements {
            assert!(r.verification.is_exact());
        }
    }

    #[test]
    fn element_outside_subsemigroup_is_rejected() {
        let s = handle(chain_semilattice(3));
        let keep: std::collections::BTreeSet<Element> = [s.parse("1").unwrap()].into();
        let pred = Arc::new(move |e: &Element| keep.contains(e));
        let sub = subsemigroup(&s, "top", pred, 3).unwrap();
        let a = s.parse("z2").unwrap();
        let err = small_extension_witness(&s, &sub, &a, &PairSet::new(), None, None, 3)
            .unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }
}
