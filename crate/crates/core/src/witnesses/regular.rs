//! Annihilator generators for a regular element.
//!
//! If `a = a*b*a` and `U` generates the ambient as a right ideal, then the
//! right annihilator of `a` is generated by the pairs `(b*a*u, u)` for
//! `u` in `U`. Every related pair `(s, t)` then has a derivation of at most
//! two steps: factor `s = u*s'` and `t = v*t'` over `U`, rewrite `s` to
//! `b*a*s`, note `b*a*s = b*a*t`, and rewrite back to `t`.

use crate::congruence::{annihilator, annihilator_pairs_bounded, PairSet};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::semigroup::SemigroupHandle;
use crate::xseq::{XSequence, XStep};

use super::{
    check_certificates, factor_in_ideal, oracle_check_annihilator, Verification, WitnessReport,
};

/// Build and verify the generating set `{(b*a*u, u) : u in U}` for the right
/// annihilator of the regular element `a`.
pub fn regular_witness(
    s: &SemigroupHandle,
    a: &Element,
    b: &Element,
    u_set: &[Element],
    bound: u32,
) -> Result<WitnessReport> {
    let a = s.canonical(a)?;
    let b = s.canonical(b)?;
    let aba = s.product(&s.product(&a, &b)?, &a)?;
    if aba != a {
        return Err(Error::Hypothesis(format!(
            "{} is not regular with partner {}: a*b*a differs from a",
            s.display(&a),
            s.display(&b)
        )));
    }
    let u_set: Vec<Element> = u_set
        .iter()
        .map(|u| s.canonical(u))
        .collect::<Result<_>>()?;

    let ba = s.product(&b, &a)?;
    let mut x = PairSet::new();
    for u in &u_set {
        x.insert(s.product(&ba, u)?, u.clone());
    }
    // Containment is forced by a = a*b*a; check it anyway.
    for (p, q) in x.iter() {
        if s.product(&a, p)? != s.product(&a, q)? {
            return Err(Error::Verification(
                "constructed pair is outside the annihilator".into(),
            ));
        }
    }

    let mut hypotheses = vec![format!(
        "a = a*b*a with a = {}, b = {}",
        s.display(&a),
        s.display(&b)
    )];

    let finite = s.order().is_finite();
    let (verification, sample_pairs) = if finite {
        // Hypothesis: U generates S as a right ideal.
        for e in s.elements_checked("generator coverage")? {
            factor_in_ideal(s, &u_set, &e, bound).map_err(|_| {
                Error::Hypothesis(format!(
                    "generating set does not reach {}",
                    s.display(&e)
                ))
            })?;
        }
        hypotheses.push(format!(
            "the {} given generators reach every element",
            u_set.len()
        ));
        oracle_check_annihilator(s, &a, &x)?;
        let pairs: Vec<(Element, Element)> =
            annihilator(s, &a)?.nontrivial_pairs().iter().cloned().collect();
        (Verification::OracleExact, pairs)
    } else {
        for e in s.enumerate(bound) {
            factor_in_ideal(s, &u_set, &e, bound).map_err(|_| {
                Error::Hypothesis(format!(
                    "generating set does not reach {} within the window",
                    s.display(&e)
                ))
            })?;
        }
        hypotheses.push(format!(
            "the {} given generators reach the grade-{} window",
            u_set.len(),
            bound
        ));
        let pairs: Vec<(Element, Element)> = annihilator_pairs_bounded(s, &a, bound)?
            .iter()
            .cloned()
            .collect();
        (
            Verification::Bounded {
                grade: bound,
                depth: 2,
            },
            pairs,
        )
    };

    let mut certificates = Vec::new();
    for (s1, t1) in &sample_pairs {
        certificates.push(regular_certificate(s, &a, &b, &u_set, s1, t1, bound)?);
    }
    check_certificates(s, &x, &certificates)?;

    Ok(WitnessReport {
        tag: "regular",
        description: format!(
            "annihilator generators for the regular element {} of {}",
            s.display(&a),
            s.describe()
        ),
        hypotheses,
        generators: x,
        verification,
        certificates,
    })
}

/// Two-step derivation of `t1` from `s1` over the regular-element pairs.
pub fn regular_certificate(
    s: &SemigroupHandle,
    a: &Element,
    b: &Element,
    u_set: &[Element],
    s1: &Element,
    t1: &Element,
    bound: u32,
) -> Result<XSequence> {
    let s1 = s.canonical(s1)?;
    let t1 = s.canonical(t1)?;
    if s.product(a, &s1)? != s.product(a, &t1)? {
        return Err(Error::Hypothesis(
            "the given pair is not in the annihilator".into(),
        ));
    }
    if s1 == t1 {
        return Ok(XSequence::trivial(s1));
    }
    let ba = s.product(b, a)?;
    let (u, s_rest) = factor_in_ideal(s, u_set, &s1, bound)?;
    let (v, t_rest) = factor_in_ideal(s, u_set, &t1, bound)?;
    let bau = s.product(&ba, &u)?;
    let bav = s.product(&ba, &v)?;
    let mut steps = Vec::new();
    // When b*a*u == u the first rewrite is a no-op: s1 is already b*a*s1.
    if bau != u {
        steps.push(XStep {
            p: u,
            q: bau,
            c: s_rest,
        });
    }
    if bav != v {
        steps.push(XStep {
            p: bav,
            q: v,
            c: t_rest,
        });
    }
    Ok(XSequence {
        source: s1,
        target: t1,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::table::{cyclic_group, from_transformations, left_zero, null};
    use crate::backends::FreeWords;
    use crate::semigroup::Semigroup;

    fn handle(s: impl Semigroup + 'static) -> SemigroupHandle {
        SemigroupHandle::new(s)
    }

    #[test]
    fn left_zero_regular_witness_is_universal() {
        let s = handle(left_zero(4));
        let a = s.parse("b").unwrap();
        let u: Vec<Element> = s.elements_checked("test").unwrap();
        let report = regular_witness(&s, &a, &a, &u, 4).unwrap();
        assert!(report.verification.is_exact());
        // (b*u, u) collapses everything onto b: three nontrivial pairs.
        assert_eq!(report.generators.len(), 3);
        assert!(!report.certificates.is_empty());
    }

    #[test]
    fn idempotent_transformation_witness() {
        // 0,1 -> 0 and 2 -> 2: an idempotent map, so self-paired regular.
        let s = handle(from_transformations(3, &[vec![0, 0, 2], vec![2, 2, 0]], true, 64).unwrap());
        let one = s.identity().unwrap();
        let a = s
            .elements_checked("test")
            .unwrap()
            .into_iter()
            .find(|e| {
                let sq = s.product(e, e).unwrap();
                sq == *e && *e != one
            })
            .expect("an idempotent besides the identity");
        let report = regular_witness(&s, &a, &a, &[one], 8).unwrap();
        assert!(report.verification.is_exact());
    }

    #[test]
    fn group_elements_have_trivial_annihilators() {
        let s = handle(cyclic_group(4));
        let g = s.parse("g").unwrap();
        let g3 = s.parse("g3").unwrap();
        let one = s.parse("1").unwrap();
        let report = regular_witness(&s, &g, &g3, &[one], 4).unwrap();
        assert!(report.generators.is_empty());
        assert!(report.certificates.is_empty());
    }

    #[test]
    fn non_regular_pair_is_rejected() {
        let s = handle(null(3));
        let a = s.parse("a").unwrap();
        let err = regular_witness(&s, &a, &a, &[a.clone()], 3).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }

    #[test]
    fn free_monoid_identity_is_the_only_regular_element() {
        let s = handle(FreeWords::monoid("ab").unwrap());
        let one = s.identity().unwrap();
        let report = regular_witness(&s, &one, &one, &[one.clone()], 3).unwrap();
        assert!(report.generators.is_empty());
        assert!(matches!(
            report.verification,
            Verification::Bounded { grade: 3, .. }
        ));
    }
}
