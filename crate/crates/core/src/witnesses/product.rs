//! Annihilator and intersection generators over a direct product.
//!
//! For `(a, b)` in `S x T`, the annihilator splits componentwise, but a
//! generating set for the product congruence needs more than the componentwise
//! pairs: once one component's derivation is finished it must idle while the
//! other catches up, which is what the mixed families `((u, p'), (u, q'))`
//! and `((p, v), (q, v))` provide, with `u`, `v` ranging over right ideal
//! generators of the factors. Pairwise right identities let a finished
//! component hold its value through the remaining steps.

use crate::classify::{common_right_identity, has_pairwise_right_identities, right_ideal_generators, GeneratorOutcome};
use crate::congruence::{annihilator, extract_generators, PairSet};
use crate::constructions::product::direct_product;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::ideals::intersect_principal;
use crate::semigroup::{Order, SemigroupHandle};
use crate::xseq::{find_xsequence, XSequence, XStep};

use super::{
    check_certificates, factor_in_ideal, oracle_check_annihilator, IdealWitnessReport,
    Verification, WitnessReport,
};

fn finite_order(s: &SemigroupHandle, what: &str) -> Result<u32> {
    match s.order() {
        Order::Finite(n) => Ok(n as u32),
        Order::Infinite => Err(Error::RequiresFinite {
            operation: what.into(),
            backend: s.describe(),
        }),
    }
}

fn exact_generators(s: &SemigroupHandle, bound: u32) -> Result<Vec<Element>> {
    match right_ideal_generators(s, bound)? {
        GeneratorOutcome::Exact(g) => Ok(g),
        GeneratorOutcome::Bounded { .. } => Err(Error::Hypothesis(
            "no exact right ideal generating set available".into(),
        )),
    }
}

/// Build and verify annihilator generators for `(a, b)` over `S x T`.
///
/// `x` and `y` optionally supply generating sets for the factor
/// annihilators; they are extracted when absent and oracle-checked when
/// given.
pub fn product_witness(
    s: &SemigroupHandle,
    t: &SemigroupHandle,
    a: &Element,
    b: &Element,
    x: Option<&PairSet>,
    y: Option<&PairSet>,
    bound: u32,
) -> Result<WitnessReport> {
    let n = finite_order(s, "product witness")?;
    let m = finite_order(t, "product witness")?;
    let a = s.canonical(a)?;
    let b = t.canonical(b)?;

    if !has_pairwise_right_identities(s)? || !has_pairwise_right_identities(t)? {
        return Err(Error::Hypothesis(
            "both factors need pairwise right identities".into(),
        ));
    }

    let x = match x {
        Some(given) => {
            oracle_check_annihilator(s, &a, given)?;
            given.clone()
        }
        None => extract_generators(s, &annihilator(s, &a)?)?,
    };
    let y = match y {
        Some(given) => {
            oracle_check_annihilator(t, &b, given)?;
            given.clone()
        }
        None => extract_generators(t, &annihilator(t, &b)?)?,
    };
    let u_set = exact_generators(s, n)?;
    let v_set = exact_generators(t, m)?;

    let p = direct_product(s, t);
    let ab = Element::pair(a.clone(), b.clone());

    let mut z = PairSet::new();
    // Both components move at once; the two chains may use the factor pairs
    // in either orientation, so all combinations are included.
    for (p1, q1) in x.symmetric_pairs() {
        for (p2, q2) in y.iter() {
            z.insert(
                Element::pair(p1.clone(), p2.clone()),
                Element::pair(q1.clone(), q2.clone()),
            );
        }
    }
    // The first component idles on a right ideal generator.
    for u in &u_set {
        for (p2, q2) in y.iter() {
            z.insert(
                Element::pair(u.clone(), p2.clone()),
                Element::pair(u.clone(), q2.clone()),
            );
        }
    }
    // The second component idles.
    for v in &v_set {
        for (p1, q1) in x.iter() {
            z.insert(
                Element::pair(p1.clone(), v.clone()),
                Element::pair(q1.clone(), v.clone()),
            );
        }
    }

    oracle_check_annihilator(&p, &ab, &z)?;

    let mut certificates = Vec::new();
    for (from, to) in annihilator(&p, &ab)?.nontrivial_pairs().iter() {
        certificates.push(product_certificate(
            s, t, &p, &a, &b, &x, &y, &u_set, &v_set, from, to, bound,
        )?);
    }
    check_certificates(&p, &z, &certificates)?;

    Ok(WitnessReport {
        tag: "product",
        description: format!(
            "annihilator generators for {} over {}",
            p.display(&ab),
            p.describe()
        ),
        hypotheses: vec![
            "both factors have pairwise right identities".into(),
            format!(
                "factor right ideals are generated by {} and {} elements",
                u_set.len(),
                v_set.len()
            ),
        ],
        generators: z,
        verification: Verification::OracleExact,
        certificates,
    })
}

/// Interleave factor derivations into a derivation over the product: both
/// components step together while both chains last, then the finished one
/// idles on a right ideal generator.
#[allow(clippy::too_many_arguments)]
pub fn product_certificate(
    s: &SemigroupHandle,
    t: &SemigroupHandle,
    p: &SemigroupHandle,
    a: &Element,
    b: &Element,
    x: &PairSet,
    y: &PairSet,
    u_set: &[Element],
    v_set: &[Element],
    from: &Element,
    to: &Element,
    bound: u32,
) -> Result<XSequence> {
    let from = p.canonical(from)?;
    let to = p.canonical(to)?;
    let (s1, t1) = from
        .as_pair()
        .ok_or_else(|| Error::not_an_element(&p.describe(), format!("{from:?}")))?;
    let (s2, t2) = to
        .as_pair()
        .ok_or_else(|| Error::not_an_element(&p.describe(), format!("{to:?}")))?;

    let ns = match s.order() {
        Order::Finite(n) => (n * n) as u32,
        Order::Infinite => bound * bound,
    };
    let nt = match t.order() {
        Order::Finite(n) => (n * n) as u32,
        Order::Infinite => bound * bound,
    };
    let sigma_s = find_xsequence(s, x, s1, s2, ns, bound)?.ok_or_else(|| {
        Error::Verification("no first-component derivation found".into())
    })?;
    let sigma_t = find_xsequence(t, y, t1, t2, nt, bound)?.ok_or_else(|| {
        Error::Verification("no second-component derivation found".into())
    })?;
    if s.product(a, s1)? != s.product(a, s2)? || t.product(b, t1)? != t.product(b, t2)? {
        return Err(Error::Hypothesis("the pair is not in the annihilator".into()));
    }

    let mut steps = Vec::new();
    let common = sigma_s.len().min(sigma_t.len());
    for i in 0..common {
        let fs = &sigma_s.steps[i];
        let ft = &sigma_t.steps[i];
        let c = pair_multiplier(s, t, &fs.c, &ft.c, (&fs.p, &fs.q), (&ft.p, &ft.q))?;
        steps.push(XStep {
            p: Element::pair(fs.p.clone(), ft.p.clone()),
            q: Element::pair(fs.q.clone(), ft.q.clone()),
            c,
        });
    }
    if sigma_s.len() < sigma_t.len() {
        // First component finished at s2 = u0 * w0; it idles there.
        let (u0, w0) = factor_in_ideal(s, u_set, s2, bound)?;
        for ft in &sigma_t.steps[common..] {
            let c = pair_multiplier(s, t, &w0, &ft.c, (&u0, &u0), (&ft.p, &ft.q))?;
            steps.push(XStep {
                p: Element::pair(u0.clone(), ft.p.clone()),
                q: Element::pair(u0.clone(), ft.q.clone()),
                c,
            });
        }
    } else if sigma_t.len() < sigma_s.len() {
        let (v0, w0) = factor_in_ideal(t, v_set, t2, bound)?;
        for fs in &sigma_s.steps[common..] {
            let c = pair_multiplier(s, t, &fs.c, &w0, (&fs.p, &fs.q), (&v0, &v0))?;
            steps.push(XStep {
                p: Element::pair(fs.p.clone(), v0.clone()),
                q: Element::pair(fs.q.clone(), v0.clone()),
                c,
            });
        }
    }

    Ok(XSequence {
        source: from,
        target: to,
        steps,
    })
}

/// Combine componentwise multipliers into one product multiplier. A formal
/// identity on one side only is replaced by a common right identity of the
/// elements that component must hold fixed.
fn pair_multiplier(
    s: &SemigroupHandle,
    t: &SemigroupHandle,
    cs: &Option<Element>,
    ct: &Option<Element>,
    hold_s: (&Element, &Element),
    hold_t: (&Element, &Element),
) -> Result<Option<Element>> {
    match (cs, ct) {
        (None, None) => Ok(None),
        _ => {
            let left = match cs {
                Some(c) => c.clone(),
                None => common_right_identity(s, hold_s.0, hold_s.1)?,
            };
            let right = match ct {
                Some(c) => c.clone(),
                None => common_right_identity(t, hold_t.0, hold_t.1)?,
            };
            Ok(Some(Element::pair(left, right)))
        }
    }
}

/// Generators for the intersection of the principal right ideals of
/// `(a, c)` and `(b, d)` over `S x T`, as cross pairs of factor intersection
/// generators.
pub fn rih_product_witness(
    s: &SemigroupHandle,
    t: &SemigroupHandle,
    a: &Element,
    b: &Element,
    c: &Element,
    d: &Element,
) -> Result<IdealWitnessReport> {
    let n = finite_order(s, "product intersection witness")?;
    let m = finite_order(t, "product intersection witness")?;

    // Right factorisability of every element of both factors.
    for (handle, label) in [(s, "first"), (t, "second")] {
        let elems = handle.elements_checked("factorisability check")?;
        for e in &elems {
            let factorisable = elems
                .iter()
                .any(|w| handle.product(e, w).map(|p| p == *e).unwrap_or(false));
            if !factorisable {
                return Err(Error::Hypothesis(format!(
                    "{} is not right factorisable in the {} factor",
                    handle.display(e),
                    label
                )));
            }
        }
    }

    let a = s.canonical(a)?;
    let b = s.canonical(b)?;
    let c = t.canonical(c)?;
    let d = t.canonical(d)?;
    let left = intersect_principal(s, &a, &b, n)?;
    let right = intersect_principal(t, &c, &d, m)?;

    let p = direct_product(s, t);
    let mut candidates = Vec::new();
    for g in left.generators() {
        for h in right.generators() {
            candidates.push(Element::pair(g.clone(), h.clone()));
        }
    }

    let expected = intersect_principal(&p, &Element::pair(a.clone(), c.clone()),
        &Element::pair(b.clone(), d.clone()), n * m)?;
    let built = crate::ideals::RightIdeal::new(
        p.clone(),
        candidates.clone(),
        crate::ideals::Exactness::Exact,
    )?;
    if !built.same_members_within(&expected, n * m) {
        return Err(Error::Verification(
            "cross pairs do not generate the product intersection".into(),
        ));
    }

    Ok(IdealWitnessReport {
        tag: "rih-product",
        description: format!(
            "generators for ({},{}) P^1 ∩ ({},{}) P^1 over {}",
            s.display(&a),
            t.display(&c),
            s.display(&b),
            t.display(&d),
            p.describe()
        ),
        hypotheses: vec!["every element of both factors is right factorisable".into()],
        generators: candidates,
        verification: Verification::OracleExact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::table::{chain_semilattice, cyclic_group, diamond_semilattice, left_zero, null};
    use crate::semigroup::Semigroup;

    fn handle(s: impl Semigroup + 'static) -> SemigroupHandle {
        SemigroupHandle::new(s)
    }

    #[test]
    fn semilattice_product_witness_is_exact() {
        let s = handle(chain_semilattice(2));
        let t = handle(chain_semilattice(3));
        let a = s.parse("z1").unwrap();
        let b = t.parse("z1").unwrap();
        let report = product_witness(&s, &t, &a, &b, None, None, 6).unwrap();
        assert!(report.verification.is_exact());
        assert!(!report.certificates.is_empty());
    }

    #[test]
    fn group_times_left_zero_with_identity() {
        // In a left-zero semigroup e*f = e, so every element is a right
        // identity for every other: the pairwise hypothesis holds.
        let s = handle(cyclic_group(3));
        let t = handle(left_zero(3));
        let a = s.parse("g").unwrap();
        let b = t.parse("a").unwrap();
        let report = product_witness(&s, &t, &a, &b, None, None, 9).unwrap();
        assert!(report.verification.is_exact());
        // The group component forces equality in the first coordinate, the
        // left-zero component relates everything: classes are rows.
        let p = direct_product(&s, &t);
        let ann = annihilator(&p, &Element::pair(a, b)).unwrap();
        assert_eq!(ann.num_classes(), 3);
    }

    #[test]
    fn null_factors_lack_right_identities() {
        let s = handle(null(3));
        let t = handle(left_zero(2));
        let a = s.parse("a").unwrap();
        let b = t.parse("a").unwrap();
        let err = product_witness(&s, &t, &a, &b, None, None, 6).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }

    #[test]
    fn diamond_cross_intersection() {
        let s = handle(diamond_semilattice());
        let t = handle(diamond_semilattice());
        let a = s.parse("p").unwrap();
        let b = s.parse("q").unwrap();
        let report = rih_product_witness(&s, &t, &a, &b, &a, &b).unwrap();
        // p S^1 ∩ q S^1 = 0 S^1 in each factor, so one cross generator.
        assert_eq!(report.generators.len(), 1);
        assert!(report.verification.is_exact());
    }

    #[test]
    fn null_product_intersection_is_rejected() {
        let s = handle(null(3));
        let a = s.parse("a").unwrap();
        let b = s.parse("b").unwrap();
        let err = rih_product_witness(&s, &s, &a, &b, &a, &b).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }
}
