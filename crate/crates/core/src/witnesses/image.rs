//! Transporting annihilator and intersection generators along a
//! homomorphism.
//!
//! When `phi: S -> T` is onto and the annihilator of `a` maps onto the
//! annihilator of `a*phi` (pairwise), applying `phi` to a generating set for
//! the source annihilator yields a generating set for the target one, and
//! applying `phi` to every step of a derivation chain yields a valid chain in
//! the target. Retractions onto a subsemigroup are the special case where the
//! map fixes the target pointwise.

use std::collections::BTreeSet;

use crate::congruence::{annihilator, PairSet};
use crate::constructions::retract::Homomorphism;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::ideals::RightIdeal;
use crate::xseq::{find_xsequence, XSequence, XStep};

use super::{
    check_certificates, oracle_check_annihilator, IdealWitnessReport, Verification, WitnessReport,
};

/// Apply `phi` to every step of a chain, dropping steps whose pair collapses
/// to the diagonal (those become no-ops in the image).
pub fn transport_certificate(phi: &Homomorphism, seq: &XSequence) -> Result<XSequence> {
    let mut steps = Vec::new();
    for step in &seq.steps {
        let p = phi.apply(&step.p)?;
        let q = phi.apply(&step.q)?;
        if p == q {
            continue;
        }
        let c = match &step.c {
            None => None,
            Some(c) => Some(phi.apply(c)?),
        };
        steps.push(XStep { p, q, c });
    }
    Ok(XSequence {
        source: phi.apply(&seq.source)?,
        target: phi.apply(&seq.target)?,
        steps,
    })
}

/// Check that the annihilator of `a` maps onto the annihilator of `a*phi`:
/// every related pair in the target lifts to a related pair in the source.
/// Returns the lifted pairs, keyed by the target pair they map to.
fn lift_annihilator_pairs(
    phi: &Homomorphism,
    a: &Element,
    bound: u32,
) -> Result<Vec<((Element, Element), (Element, Element))>> {
    let s = &phi.source;
    let t = &phi.target;
    let b = phi.apply(a)?;
    let source_elems = if s.order().is_finite() {
        s.elements_checked("annihilator lift")?
    } else {
        s.enumerate(bound)
    };
    let target_pairs: Vec<(Element, Element)> = if t.order().is_finite() {
        annihilator(t, &b)?.nontrivial_pairs().iter().cloned().collect()
    } else {
        crate::congruence::annihilator_pairs_bounded(t, &b, bound)?
            .iter()
            .cloned()
            .collect()
    };
    let mut lifted = Vec::new();
    for (u, v) in target_pairs {
        let mut found = None;
        'search: for s1 in &source_elems {
            if phi.apply(s1)? != u {
                continue;
            }
            for t1 in &source_elems {
                if phi.apply(t1)? != v {
                    continue;
                }
                if s.product(a, s1)? == s.product(a, t1)? {
                    found = Some((s1.clone(), t1.clone()));
                    break 'search;
                }
            }
        }
        match found {
            Some(pair) => lifted.push(((u, v), pair)),
            None => {
                return Err(Error::Hypothesis(format!(
                    "the target pair ({}, {}) does not lift to a related source pair",
                    t.display(&u),
                    t.display(&v)
                )))
            }
        }
    }
    Ok(lifted)
}

/// Transport a generating set for the annihilator of `a` through `phi`.
pub fn image_witness(
    phi: &Homomorphism,
    a: &Element,
    x: &PairSet,
    bound: u32,
) -> Result<WitnessReport> {
    phi.validate(bound)?;
    let s = &phi.source;
    let t = &phi.target;
    let a = s.canonical(a)?;
    let b = phi.apply(&a)?;
    let mut hypotheses = vec![format!("{} respects products", phi.label())];

    // The given set must generate the source annihilator.
    if s.order().is_finite() {
        oracle_check_annihilator(s, &a, x)?;
        hypotheses.push("the given pairs generate the source annihilator".into());
    } else {
        for (p, q) in x.iter() {
            if s.product(&a, p)? != s.product(&a, q)? {
                return Err(Error::Hypothesis(
                    "a given pair is outside the source annihilator".into(),
                ));
            }
        }
        hypotheses.push("the given pairs lie in the source annihilator (containment only)".into());
    }

    // Surjectivity of the annihilator, pair by pair.
    let lifted = lift_annihilator_pairs(phi, &a, bound)?;
    hypotheses.push(format!(
        "all {} related target pairs lift through {}",
        lifted.len(),
        phi.label()
    ));

    let y = x.map_with(|e| phi.apply(e))?;
    let depth = match s.order() {
        crate::semigroup::Order::Finite(n) => (n * n) as u32,
        crate::semigroup::Order::Infinite => bound * bound,
    };

    let mut certificates = Vec::new();
    for ((_, _), (s1, t1)) in &lifted {
        let seq = find_xsequence(s, x, s1, t1, depth, bound)?.ok_or_else(|| {
            Error::Verification("no source derivation found for a lifted pair".into())
        })?;
        certificates.push(transport_certificate(phi, &seq)?);
    }
    check_certificates(t, &y, &certificates)?;

    let verification = if t.order().is_finite() {
        oracle_check_annihilator(t, &b, &y)?;
        Verification::OracleExact
    } else {
        Verification::Bounded {
            grade: bound,
            depth,
        }
    };

    Ok(WitnessReport {
        tag: "image",
        description: format!(
            "annihilator generators for {} transported through {}",
            t.display(&b),
            phi.label()
        ),
        hypotheses,
        generators: y,
        verification,
        certificates,
    })
}

/// `image_witness` specialised to a retraction onto a subsemigroup: the map
/// is validated to fix its target pointwise first.
pub fn retract_witness(
    phi: &Homomorphism,
    a: &Element,
    x: &PairSet,
    bound: u32,
) -> Result<WitnessReport> {
    phi.validate_retraction(bound)?;
    let mut report = image_witness(phi, a, x, bound)?;
    report.tag = "retract";
    report
        .hypotheses
        .insert(0, format!("{} fixes its image pointwise", phi.label()));
    Ok(report)
}

/// Transport generators of `a S^1 ∩ b S^1` to generators of the image
/// intersection `(a phi) T^1 ∩ (b phi) T^1`.
pub fn rih_image_witness(
    phi: &Homomorphism,
    a: &Element,
    b: &Element,
    x_gens: &[Element],
    bound: u32,
) -> Result<IdealWitnessReport> {
    phi.validate(bound)?;
    let s = &phi.source;
    let t = &phi.target;
    let a = s.canonical(a)?;
    let b = s.canonical(b)?;
    if !s.order().is_finite() || !t.order().is_finite() {
        return Err(Error::RequiresFinite {
            operation: "intersection transport".into(),
            backend: s.describe(),
        });
    }

    // The given generators must be exactly the source intersection.
    let source_ideal = RightIdeal::new(s.clone(), x_gens.to_vec(), crate::ideals::Exactness::Exact)?;
    let n = match s.order() {
        crate::semigroup::Order::Finite(n) => n as u32,
        crate::semigroup::Order::Infinite => unreachable!(),
    };
    let expected = crate::ideals::intersect_principal(s, &a, &b, n)?;
    if !source_ideal.same_members_within(&expected, n) {
        return Err(Error::Hypothesis(
            "the given generators do not generate the source intersection".into(),
        ));
    }

    // Hypothesis of the transport: the image of the intersection equals the
    // intersection of the images, checked member by member.
    let mapped: BTreeSet<Element> = expected
        .members_within(n)
        .into_iter()
        .map(|e| phi.apply(&e))
        .collect::<Result<_>>()?;
    let m = match t.order() {
        crate::semigroup::Order::Finite(m) => m as u32,
        crate::semigroup::Order::Infinite => unreachable!(),
    };
    let u = phi.apply(&a)?;
    let v = phi.apply(&b)?;
    let target_ideal = crate::ideals::intersect_principal(t, &u, &v, m)?;
    let target_members: BTreeSet<Element> = target_ideal.members_within(m).into_iter().collect();
    if mapped != target_members {
        return Err(Error::Hypothesis(
            "the image of the intersection is not the intersection of the images".into(),
        ));
    }

    let y_gens: Vec<Element> = {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for g in x_gens {
            let img = phi.apply(g)?;
            if seen.insert(img.clone()) {
                out.push(img);
            }
        }
        out
    };
    let transported = RightIdeal::new(t.clone(), y_gens.clone(), crate::ideals::Exactness::Exact)?;
    if !transported.same_members_within(&target_ideal, m) {
        return Err(Error::Verification(
            "transported generators do not generate the target intersection".into(),
        ));
    }

    Ok(IdealWitnessReport {
        tag: "rih-image",
        description: format!(
            "generators for {} T^1 ∩ {} T^1 transported through {}",
            t.display(&u),
            t.display(&v),
            phi.label()
        ),
        hypotheses: vec![
            "the image of the source intersection equals the target intersection".into(),
        ],
        generators: y_gens,
        verification: Verification::OracleExact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::table::{chain_semilattice, diamond_semilattice, left_zero, trivial_monoid};
    use crate::congruence::extract_generators;
    use crate::constructions::product::direct_product;
    use crate::constructions::retract::ElementMap;
    use crate::semigroup::{Semigroup, SemigroupHandle};
    use std::sync::Arc;

    fn handle(s: impl Semigroup + 'static) -> SemigroupHandle {
        SemigroupHandle::new(s)
    }

    fn projection(p: &SemigroupHandle, left: &SemigroupHandle) -> Homomorphism {
        let map: ElementMap = Arc::new(|e: &Element| match e {
            Element::Pair(l, _) => Ok((**l).clone()),
            other => Err(Error::not_an_element(
                "pair projection",
                format!("{:?}", other),
            )),
        });
        Homomorphism::new("first projection", p, left, map)
    }

    #[test]
    fn projection_transports_annihilator_generators() {
        let s = handle(left_zero(3));
        let t = handle(chain_semilattice(2));
        let p = direct_product(&s, &t);
        let a = p.parse("(a,z1)").unwrap();
        let ann = annihilator(&p, &a).unwrap();
        let x = extract_generators(&p, &ann).unwrap();
        let phi = projection(&p, &s);
        let report = image_witness(&phi, &a, &x, 8).unwrap();
        assert!(report.verification.is_exact());
        // The first coordinate's annihilator is universal on 3 elements.
        let target_ann = annihilator(&s, &s.parse("a").unwrap()).unwrap();
        assert!(target_ann.is_universal());
    }

    #[test]
    fn transported_chain_steps_stay_valid() {
        let s = handle(left_zero(3));
        let t = handle(chain_semilattice(2));
        let p = direct_product(&s, &t);
        let a = p.parse("(b,z1)").unwrap();
        let ann = annihilator(&p, &a).unwrap();
        let x = extract_generators(&p, &ann).unwrap();
        let phi = projection(&p, &s);
        let report = image_witness(&phi, &a, &x, 8).unwrap();
        for cert in &report.certificates {
            assert!(crate::xseq::verify_xsequence(&s, &report.generators, cert).is_valid());
        }
    }

    #[test]
    fn intersection_generators_transport_through_projection() {
        let s = handle(diamond_semilattice());
        let t = handle(trivial_monoid());
        let p = direct_product(&s, &t);
        let a = p.parse("(p,e)").unwrap();
        let b = p.parse("(q,e)").unwrap();
        let inter = crate::ideals::intersect_principal(&p, &a, &b, 4).unwrap();
        let phi = projection(&p, &s);
        let report =
            rih_image_witness(&phi, &a, &b, inter.generators(), 8).unwrap();
        assert!(report.verification.is_exact());
        // p ∧ q = 0 in the diamond, so the transported intersection is 0 S^1.
        let zero = s.parse("0").unwrap();
        assert_eq!(report.generators, vec![zero]);
    }

    #[test]
    fn undersized_source_set_is_rejected() {
        let s = handle(left_zero(3));
        let a = s.parse("a").unwrap();
        let b = s.parse("b").unwrap();
        // The annihilator is universal on three elements; one pair is short.
        let x = PairSet::from_pairs([(a.clone(), b)]);
        let map: ElementMap = Arc::new(|e: &Element| Ok(e.clone()));
        let phi = Homomorphism::new("identity", &s, &s, map);
        let err = image_witness(&phi, &a, &x, 4).unwrap_err();
        assert!(matches!(err, Error::Verification(_)));
    }
}
