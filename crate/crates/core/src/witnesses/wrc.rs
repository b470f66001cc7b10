//! The weak right coherence bundle.
//!
//! For a finite semigroup the five equivalent formulations of weak right
//! coherence all reduce to two measurable facts: the monoid completion has
//! finitely generated principal-ideal intersections, and every right
//! annihilator over the completion is finitely generated. The checker
//! gathers that evidence, evaluates each formulation from it, and then
//! validates the passage between the semigroup and its completion: each
//! annihilator must restrict correctly, and each generating set must
//! transport upward with verified certificates.

use serde::Serialize;

use crate::congruence::{annihilator, check_fre, extract_generators};
use crate::constructions::adjoin::adjoin_identity;
use crate::error::{Error, Result};
use crate::ideals::check_rih;
use crate::semigroup::{SemigroupHandle, Verdict};

use super::extension::adjoin_identity_witness;

/// The five formulations, in order: the semigroup is weakly right coherent;
/// its completion is; finitely generated right ideals are finitely
/// presented over the completion; the completion is RIH and FRE; the
/// semigroup is RIH and the completion is FRE.
pub const WRC_CONDITIONS: [&str; 5] = [
    "the semigroup is weakly right coherent",
    "the monoid completion is weakly right coherent",
    "every finitely generated right ideal is finitely presented over the completion",
    "the completion has finitely generated ideal intersections and annihilators",
    "the semigroup has finitely generated ideal intersections and the completion \
     has finitely generated annihilators",
];

#[derive(Clone, Debug, Serialize)]
pub struct WrcReport {
    pub backend: String,
    /// Ideal-intersection survey verdict on the semigroup itself.
    pub rih_s: Verdict,
    /// The same survey on the monoid completion.
    pub rih_s1: Verdict,
    /// Finite generation of every right annihilator over the completion.
    pub fre_s1: Verdict,
    /// Verdicts for the five formulations listed in [`WRC_CONDITIONS`].
    pub conditions: [Verdict; 5],
    /// Largest annihilator generating set seen over the completion.
    pub max_annihilator_generators: usize,
    /// Elements whose annihilators were restricted and transported.
    pub transported_elements: usize,
}

impl WrcReport {
    /// The overall verdict: yes only when every formulation holds.
    pub fn holds(&self) -> Verdict {
        if self.conditions.iter().all(|c| c.is_yes()) {
            Verdict::Yes
        } else if self.conditions.iter().any(|c| *c == Verdict::No) {
            Verdict::No
        } else {
            Verdict::Unknown
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!("weak right coherence of {}\n", self.backend);
        for (label, verdict) in WRC_CONDITIONS.iter().zip(self.conditions.iter()) {
            out.push_str(&format!("  [{verdict:?}] {label}\n"));
        }
        out.push_str(&format!(
            "  evidence: intersections {:?} (semigroup) / {:?} (completion), \
             annihilators {:?} (completion, largest set {})\n",
            self.rih_s, self.rih_s1, self.fre_s1, self.max_annihilator_generators
        ));
        out.push_str(&format!(
            "  transport: {} annihilators restricted and lifted exactly\n",
            self.transported_elements
        ));
        out
    }
}

fn both(a: Verdict, b: Verdict) -> Verdict {
    match (a, b) {
        (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
        (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
        _ => Verdict::Unknown,
    }
}

/// Evaluate the five formulations on a finite semigroup and validate the
/// semigroup-to-completion passage element by element.
pub fn check_wrc(s: &SemigroupHandle, bound: u32) -> Result<WrcReport> {
    let elements = s.elements_checked("check_wrc")?;
    let s1 = adjoin_identity(s);

    let rih_s = check_rih(s, bound)?.verdict;
    let rih_s1 = check_rih(&s1, bound)?.verdict;
    let fre = check_fre(&s1)?;
    let fre_s1 = fre.verdict;

    // Both directions of the passage, per element: the completed
    // annihilator restricted to old elements is the plain annihilator, and
    // the plain generating set extends to a verified generating set over
    // the completion.
    for a in &elements {
        let ann_s = annihilator(s, a)?;
        let ann_s1 = annihilator(&s1, a)?;
        for (i, u) in elements.iter().enumerate() {
            for v in elements.iter().skip(i + 1) {
                if ann_s.related(u, v)? != ann_s1.related(u, v)? {
                    return Err(Error::Verification(format!(
                        "the annihilator of {} changes on ({}, {}) under the completion",
                        s.display(a),
                        s.display(u),
                        s.display(v)
                    )));
                }
            }
        }
        let x = extract_generators(s, &ann_s)?;
        let transported = adjoin_identity_witness(s, a, &x, bound)?;
        if !transported.verification.is_exact() {
            return Err(Error::Verification(format!(
                "transport of the annihilator of {} was not verified exactly",
                s.display(a)
            )));
        }
    }

    let completion = both(rih_s1, fre_s1);
    let plain = both(rih_s, fre_s1);
    Ok(WrcReport {
        backend: s.describe(),
        rih_s,
        rih_s1,
        fre_s1,
        conditions: [completion, completion, completion, completion, plain],
        max_annihilator_generators: fre.max_generator_count(),
        transported_elements: elements.len(),
    })
}
