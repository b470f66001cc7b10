//! Annihilator generators over a free product of monoids.
//!
//! Write `x = x_n * ... * x_1` with `x_1` the rightmost block. Let `N` be
//! the position of the first letter (from the right) with no right inverse,
//! fix a right inverse `t_i` of each earlier letter, and pick generating
//! pairs `X_i` for each factor annihilator of `x_i`. Then the annihilator of
//! `x` over the whole product is generated by the lifted pairs
//! `(t_1*...*t_{i-1}*p, t_1*...*t_{i-1}*q)` with `(p, q)` in `X_i`,
//! `i <= N`.
//!
//! The derivation builder turns that fact into explicit chains. Everything
//! reduces to two primitives: swapping one chosen inverse prefix for
//! another (one lifted factor derivation per position), and absorbing a
//! block that a letter of `x` swallows (`x_i * y = x_i` lets
//! `t_1*...*t_{i-1}*y` collapse to `t_1*...*t_{i-1}` through the factor
//! derivation from `y` to the factor identity). The shape of the chain is
//! dictated by how the two related elements reduce against `x`: whether the
//! first surviving block merges into a letter or stands next to it, and how
//! far the two reductions are staggered.

use std::fmt;

use crate::congruence::{annihilator, extract_generators, PairSet};
use crate::constructions::free_product::FreeProduct;
use crate::element::{Block, Element};
use crate::error::{Error, Result};
use crate::semigroup::{Order, SemigroupHandle};
use crate::xseq::{find_xsequence, XSequence, XStep};

use super::{check_certificates, Verification, WitnessReport};

/// Precomputed data for one free product and one fixed element `x`.
pub struct MfpContext {
    product: FreeProduct,
    handle: SemigroupHandle,
    x: Element,
    /// `letters[i-1]` is the inner value of `x_i`, counted from the right.
    letters: Vec<Element>,
    /// Factor index of each letter.
    factor_index: Vec<usize>,
    /// Position of the first letter with no right inverse (1-based); `None`
    /// when every letter is right invertible.
    stop: Option<usize>,
    /// Chosen right inverses `t_1 .. t_{stop-1}` (inner values).
    t: Vec<Element>,
    /// `prefixes[k]` is `t_1 * ... * t_k` as a product element.
    prefixes: Vec<Element>,
    /// Factor annihilator generating pairs for `x_1 .. x_stop`.
    x_sets: Vec<PairSet>,
    /// Lifted generating pairs over the product.
    pairs: PairSet,
    bound: u32,
}

impl fmt::Debug for MfpContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MfpContext")
            .field("product", &self.handle.describe())
            .field("letters", &self.letters.len())
            .field("stop", &self.stop)
            .finish()
    }
}

/// How one operand reduces against `x`: `ell` is the first position (from
/// the right of `x`) whose block survives; `merged` holds the merged inner
/// value when that block lands in the same factor as `x_ell`.
#[derive(Debug, Clone)]
struct Reduction {
    ell: usize,
    merged: Option<Element>,
}

impl MfpContext {
    /// Gather letters, inverses and factor annihilator generators for `x`.
    ///
    /// `supplied` provides generating pairs for letters in infinite
    /// factors, keyed by factor index and inner value; finite factors are
    /// handled by the exact oracle.
    pub fn build(
        product: &FreeProduct,
        x: &Element,
        supplied: &[(usize, Element, PairSet)],
        bound: u32,
    ) -> Result<MfpContext> {
        if !product.is_monoid_product() {
            return Err(Error::Hypothesis(
                "the construction needs a free product of monoids".into(),
            ));
        }
        let handle = product.handle();
        let x = handle.canonical(x)?;
        let blocks = x
            .as_blocks()
            .ok_or_else(|| Error::not_an_element(&handle.describe(), format!("{x:?}")))?
            .to_vec();
        let n = blocks.len();
        let mut letters = Vec::with_capacity(n);
        let mut factor_index = Vec::with_capacity(n);
        for i in 1..=n {
            let block = &blocks[n - i];
            letters.push(block.inner.clone());
            factor_index.push(block.factor);
        }

        // Walk outward until a letter has no right inverse.
        let mut stop = None;
        let mut t = Vec::new();
        for i in 1..=n {
            let fac = product.factor(factor_index[i - 1]);
            let one = fac.identity().expect("monoid factors carry identities");
            let inverses = fac.right_divisors(&letters[i - 1], &one, bound);
            match inverses.into_iter().next() {
                Some(inv) => t.push(inv),
                None => {
                    stop = Some(i);
                    break;
                }
            }
        }
        if stop.is_none() {
            t.truncate(n.saturating_sub(1));
        }

        let mut prefixes = vec![handle.identity().expect("monoid product")];
        for (k, inv) in t.iter().enumerate() {
            let emb = product.embed(factor_index[k], inv)?;
            let prev = prefixes.last().expect("nonempty").clone();
            prefixes.push(handle.product(&prev, &emb)?);
        }

        let mut x_sets = Vec::new();
        if let Some(stop) = stop {
            for i in 1..=stop {
                let fk = factor_index[i - 1];
                let fac = product.factor(fk);
                let letter = &letters[i - 1];
                let set = if fac.order().is_finite() {
                    extract_generators(fac, &annihilator(fac, letter)?)?
                } else {
                    let supplied_set = supplied
                        .iter()
                        .find(|(k, e, _)| *k == fk && e == letter)
                        .map(|(_, _, set)| set.clone())
                        .ok_or_else(|| {
                            Error::Hypothesis(format!(
                                "no annihilator generators supplied for letter {} of an \
                                 infinite factor",
                                i
                            ))
                        })?;
                    // Containment is checkable even when generation is not.
                    for (p, q) in supplied_set.iter() {
                        if fac.product(letter, p)? != fac.product(letter, q)? {
                            return Err(Error::Hypothesis(format!(
                                "a supplied pair for letter {} is outside its annihilator",
                                i
                            )));
                        }
                    }
                    supplied_set
                };
                x_sets.push(set);
            }
        }

        let mut pairs = PairSet::new();
        for (i, set) in x_sets.iter().enumerate() {
            let pre = &prefixes[i];
            for (p, q) in set.iter() {
                let fk = factor_index[i];
                let lifted_p = handle.product(pre, &product.embed(fk, p)?)?;
                let lifted_q = handle.product(pre, &product.embed(fk, q)?)?;
                pairs.insert(lifted_p, lifted_q);
            }
        }

        Ok(MfpContext {
            product: product.clone(),
            handle,
            x,
            letters,
            factor_index,
            stop,
            t,
            prefixes,
            x_sets,
            pairs,
            bound,
        })
    }

    pub fn handle(&self) -> &SemigroupHandle {
        &self.handle
    }

    pub fn element(&self) -> &Element {
        &self.x
    }

    /// The lifted generating pairs for the annihilator of `x`.
    pub fn generating_pairs(&self) -> &PairSet {
        &self.pairs
    }

    /// Position of the first letter without a right inverse, if any.
    pub fn first_blocked_letter(&self) -> Option<usize> {
        self.stop
    }

    fn factor_search_limits(&self, fk: usize) -> (u32, u32) {
        match self.product.factor(fk).order() {
            Order::Finite(n) => ((n * n) as u32, n as u32),
            Order::Infinite => (self.bound * self.bound, self.bound),
        }
    }

    /// Elements of the factor annihilator derivation for letter `level`,
    /// prefixed by `t_1*...*t_{level-1}` and right-multiplied by `suffix`.
    fn lifted_chain(
        &self,
        level: usize,
        from: &Element,
        to: &Element,
        suffix: &Element,
    ) -> Result<XSequence> {
        let fk = self.factor_index[level - 1];
        let fac = self.product.factor(fk).clone();
        let letter = &self.letters[level - 1];
        if fac.product(letter, from)? != fac.product(letter, to)? {
            return Err(Error::Verification(format!(
                "letter {} does not relate the requested endpoints",
                level
            )));
        }
        let (depth, inner_bound) = self.factor_search_limits(fk);
        let inner = find_xsequence(&fac, &self.x_sets[level - 1], from, to, depth, inner_bound)?
            .ok_or_else(|| {
                Error::Verification(format!(
                    "no factor derivation found at letter {}",
                    level
                ))
            })?;

        let pre = &self.prefixes[level - 1];
        let one = self.handle.identity().expect("monoid product");
        let mut steps = Vec::new();
        for st in &inner.steps {
            let p = self.handle.product(pre, &self.product.embed(fk, &st.p)?)?;
            let q = self.handle.product(pre, &self.product.embed(fk, &st.q)?)?;
            let c = match &st.c {
                None if *suffix == one => None,
                None => Some(suffix.clone()),
                Some(c) => {
                    let emb = self.product.embed(fk, c)?;
                    Some(self.handle.product(&emb, suffix)?)
                }
            };
            steps.push(XStep { p, q, c });
        }
        let endpoint = |inner: &Element| -> Result<Element> {
            let emb = self.product.embed(fk, inner)?;
            let head = self.handle.product(pre, &emb)?;
            self.handle.product(&head, suffix)
        };
        Ok(XSequence {
            source: endpoint(from)?,
            target: endpoint(to)?,
            steps,
        })
    }

    /// Chain from `t_1*...*t_k*suffix` to `s_1*...*s_k*suffix`, where each
    /// `s_i` is a right inverse of `x_i`, replacing one position at a time
    /// from the outside in.
    fn inverse_swap_chain(&self, svec: &[Element], suffix: &Element) -> Result<XSequence> {
        let k = svec.len();
        let mut suffix = suffix.clone();
        let mut acc: Option<XSequence> = None;
        for level in (1..=k).rev() {
            let chunk = self.lifted_chain(level, &self.t[level - 1], &svec[level - 1], &suffix)?;
            acc = Some(match acc {
                None => chunk,
                Some(done) => done.then(&chunk)?,
            });
            let emb = self.product.embed(self.factor_index[level - 1], &svec[level - 1])?;
            suffix = self.handle.product(&emb, &suffix)?;
        }
        Ok(acc.unwrap_or_else(|| XSequence::trivial(suffix)))
    }

    /// Classify how `arg` reduces against `x`.
    fn classify(&self, arg: &Element) -> Result<Reduction> {
        let blocks = arg
            .as_blocks()
            .ok_or_else(|| Error::not_an_element(&self.handle.describe(), format!("{arg:?}")))?;
        let n = self.letters.len();
        let p = blocks.len();
        let mut i = 1usize;
        while i <= p && i <= n {
            let block = &blocks[i - 1];
            if block.factor != self.factor_index[i - 1] {
                return Ok(Reduction {
                    ell: i,
                    merged: None,
                });
            }
            let fac = self.product.factor(block.factor);
            let merged = fac.product(&self.letters[i - 1], &block.inner)?;
            if Some(&merged) != fac.identity().as_ref() {
                return Ok(Reduction {
                    ell: i,
                    merged: Some(merged),
                });
            }
            i += 1;
        }
        Ok(Reduction {
            ell: i,
            merged: None,
        })
    }

    /// Inner values of the cancelled region `a_1 .. a_{ell-1}`.
    fn cancelled_inverses(&self, blocks: &[Block], ell: usize) -> Vec<Element> {
        blocks[..ell - 1].iter().map(|b| b.inner.clone()).collect()
    }

    /// The element formed by the blocks from logical position `from`
    /// (1-based) onward. Contiguous slices of a reduced word stay reduced.
    fn tail(blocks: &[Block], from: usize) -> Element {
        Element::Blocks(blocks[from - 1..].to_vec())
    }

    fn inconsistent<T>(&self) -> Result<T> {
        Err(Error::Verification(
            "the reduced forms of a related pair are inconsistent".into(),
        ))
    }

    /// Both operands keep their first surviving block in a factor different
    /// from the facing letter: the surviving tails coincide and only the
    /// cancelled prefixes differ.
    fn case_both_plain(
        &self,
        a_blocks: &[Block],
        ra: &Reduction,
        b_blocks: &[Block],
        rb: &Reduction,
    ) -> Result<XSequence> {
        if ra.ell != rb.ell || a_blocks[ra.ell - 1..] != b_blocks[rb.ell - 1..] {
            return self.inconsistent();
        }
        let ell = ra.ell;
        let w = Self::tail(a_blocks, ell);
        let avec = self.cancelled_inverses(a_blocks, ell);
        let bvec = self.cancelled_inverses(b_blocks, ell);
        let first = self.inverse_swap_chain(&avec, &w)?.reversed();
        let second = self.inverse_swap_chain(&bvec, &w)?;
        first.then(&second)
    }

    /// Both operands merge into the same letter at the same depth: swap the
    /// cancelled prefix, rewrite the merged block through the factor
    /// derivation, swap back.
    fn case_both_merged_equal(
        &self,
        a_blocks: &[Block],
        ra: &Reduction,
        b_blocks: &[Block],
        rb: &Reduction,
    ) -> Result<XSequence> {
        let ell = ra.ell;
        if ra.merged != rb.merged || a_blocks[ell..] != b_blocks[ell..] {
            return self.inconsistent();
        }
        let w = Element::Blocks(a_blocks[ell..].to_vec());
        let avec = self.cancelled_inverses(a_blocks, ell);
        let bvec = self.cancelled_inverses(b_blocks, ell);
        let a_inner = &a_blocks[ell - 1].inner;
        let b_inner = &b_blocks[ell - 1].inner;
        let c1 = self
            .inverse_swap_chain(&avec, &Self::tail(a_blocks, ell))?
            .reversed();
        let c2 = self.lifted_chain(ell, a_inner, b_inner, &w)?;
        let c3 = self.inverse_swap_chain(&bvec, &Self::tail(b_blocks, ell))?;
        c1.then(&c2)?.then(&c3)
    }

    /// Both operands merge, but at different depths (`ell > m`): the deeper
    /// one carries a copy of the shallower reduction inside its own blocks,
    /// which absorb into the letters one at a time.
    fn case_both_merged_staggered(
        &self,
        a_blocks: &[Block],
        ra: &Reduction,
        b_blocks: &[Block],
        rb: &Reduction,
    ) -> Result<XSequence> {
        let (ell, m) = (ra.ell, rb.ell);
        let r = ell - m - 1;
        let merged_b = rb.merged.as_ref().expect("merged reduction");

        // The deeper operand must replay x's letters and b's merged block.
        if ra.merged.as_ref() != Some(&self.letters[ell - 1]) {
            return self.inconsistent();
        }
        if a_blocks.len() < ell + r + 1 {
            return self.inconsistent();
        }
        for k in 1..=r {
            let replay = &a_blocks[ell + k - 1];
            if replay.factor != self.factor_index[ell - k - 1]
                || replay.inner != self.letters[ell - k - 1]
            {
                return self.inconsistent();
            }
        }
        let bridge = &a_blocks[ell + r];
        if bridge.factor != self.factor_index[m - 1] || bridge.inner != *merged_b {
            return self.inconsistent();
        }
        if a_blocks[ell + r + 1..] != b_blocks[m..] {
            return self.inconsistent();
        }

        let avec = self.cancelled_inverses(a_blocks, ell);
        let a_inner = &a_blocks[ell - 1].inner;
        // Down the absorbed region: a -> t_1*...*t_m * (x_m b_m) * tail.
        let mut chain = self
            .inverse_swap_chain(&avec, &Self::tail(a_blocks, ell))?
            .reversed();
        let one_ell = self
            .product
            .factor(self.factor_index[ell - 1])
            .identity()
            .expect("monoid factor");
        chain = chain.then(&self.lifted_chain(ell, a_inner, &one_ell, &Self::tail(a_blocks, ell + 1))?)?;
        for k in 0..r {
            let level = ell - k - 1;
            let fac = self.product.factor(self.factor_index[level - 1]);
            let absorbed = fac.product(&self.t[level - 1], &a_blocks[ell + k].inner)?;
            let one = fac.identity().expect("monoid factor");
            chain = chain.then(&self.lifted_chain(
                level,
                &absorbed,
                &one,
                &Self::tail(a_blocks, ell + k + 2),
            )?)?;
        }
        // Collapse t_m * (x_m b_m) back to b_m and swap the prefix out.
        let fac_m = self.product.factor(self.factor_index[m - 1]);
        let pivot = fac_m.product(&self.t[m - 1], &self.letters[m - 1])?;
        let one_m = fac_m.identity().expect("monoid factor");
        chain = chain.then(&self.lifted_chain(m, &pivot, &one_m, &Self::tail(b_blocks, m))?)?;
        let bvec = self.cancelled_inverses(b_blocks, m);
        chain.then(&self.inverse_swap_chain(&bvec, &Self::tail(b_blocks, m))?)
    }

    /// One operand survives next to the letter, the other merges into it
    /// (`ell <= m`): the merged side replays the plain side after absorbing
    /// part of `x`.
    fn case_mixed(
        &self,
        a_blocks: &[Block],
        ra: &Reduction,
        b_blocks: &[Block],
        rb: &Reduction,
    ) -> Result<XSequence> {
        let (ell, m) = (ra.ell, rb.ell);
        if ell > m {
            return self.inconsistent();
        }
        let merged_b = rb.merged.as_ref().expect("merged reduction");
        if *merged_b != self.letters[m - 1] {
            return self.inconsistent();
        }

        let avec = self.cancelled_inverses(a_blocks, ell);
        let tail_a = Self::tail(a_blocks, ell);

        if ell == m {
            if a_blocks[ell - 1..] != b_blocks[ell..] {
                return self.inconsistent();
            }
            let b_inner = &b_blocks[ell - 1].inner;
            let one = self
                .product
                .factor(self.factor_index[ell - 1])
                .identity()
                .expect("monoid factor");
            let c1 = self.inverse_swap_chain(&avec, &tail_a)?.reversed();
            let c2 = self
                .lifted_chain(ell, b_inner, &one, &Element::Blocks(b_blocks[ell..].to_vec()))?
                .reversed();
            let c3 = self.inverse_swap_chain(
                &self.cancelled_inverses(b_blocks, ell),
                &Self::tail(b_blocks, ell),
            )?;
            return c1.then(&c2)?.then(&c3);
        }

        // ell < m: b replays x_{m-1} .. x_ell before the common tail.
        if b_blocks.len() < 2 * m - ell {
            return self.inconsistent();
        }
        for k in 1..=(m - ell) {
            let replay = &b_blocks[m + k - 1];
            if replay.factor != self.factor_index[m - k - 1]
                || replay.inner != self.letters[m - k - 1]
            {
                return self.inconsistent();
            }
        }
        if a_blocks[ell - 1..] != b_blocks[2 * m - ell..] {
            return self.inconsistent();
        }

        let mut chain = self.inverse_swap_chain(&avec, &tail_a)?.reversed();
        // Grow the replayed region: t_1*...*t_{ell-1} * tail picks up
        // (t_i x_i) * x_{i-1} * ... * x_ell one level at a time.
        for k in 0..=(m - ell - 1) {
            let level = ell + k;
            let fac = self.product.factor(self.factor_index[level - 1]);
            let pivot = fac.product(&self.t[level - 1], &self.letters[level - 1])?;
            let one = fac.identity().expect("monoid factor");
            let mut suffix_blocks: Vec<Block> = Vec::new();
            for j in (ell..level).rev() {
                suffix_blocks.push(Block {
                    factor: self.factor_index[j - 1],
                    inner: self.letters[j - 1].clone(),
                });
            }
            suffix_blocks.extend_from_slice(&a_blocks[ell - 1..]);
            let suffix = Element::Blocks(suffix_blocks);
            chain = chain.then(&self.lifted_chain(level, &pivot, &one, &suffix)?.reversed())?;
        }
        // Reinstate b_m and swap the prefix out.
        let one_m = self
            .product
            .factor(self.factor_index[m - 1])
            .identity()
            .expect("monoid factor");
        let c3 = self
            .lifted_chain(m, &b_blocks[m - 1].inner, &one_m, &Element::Blocks(b_blocks[m..].to_vec()))?
            .reversed();
        chain = chain.then(&c3)?;
        let bvec = self.cancelled_inverses(b_blocks, m);
        chain.then(&self.inverse_swap_chain(&bvec, &Self::tail(b_blocks, m))?)
    }
}

/// Explicit derivation of `b` from `a` over the lifted generating pairs,
/// assembled from the reduction shapes of the two operands.
pub fn mfp_sequence(ctx: &MfpContext, a: &Element, b: &Element) -> Result<XSequence> {
    let f = &ctx.handle;
    let a = f.canonical(a)?;
    let b = f.canonical(b)?;
    if f.product(&ctx.x, &a)? != f.product(&ctx.x, &b)? {
        return Err(Error::Hypothesis(
            "the two elements are not related by the annihilator".into(),
        ));
    }
    if a == b {
        return Ok(XSequence::trivial(a));
    }
    let Some(stop) = ctx.stop else {
        return Err(Error::Verification(
            "every letter is right invertible yet distinct related elements exist".into(),
        ));
    };
    let ra = ctx.classify(&a)?;
    let rb = ctx.classify(&b)?;
    if ra.ell > stop || rb.ell > stop {
        return ctx.inconsistent();
    }
    let a_blocks = a.as_blocks().expect("canonical product element");
    let b_blocks = b.as_blocks().expect("canonical product element");

    let seq = match (&ra.merged, &rb.merged) {
        (None, None) => ctx.case_both_plain(a_blocks, &ra, b_blocks, &rb)?,
        (Some(_), Some(_)) if ra.ell == rb.ell => {
            ctx.case_both_merged_equal(a_blocks, &ra, b_blocks, &rb)?
        }
        (Some(_), Some(_)) if ra.ell > rb.ell => {
            ctx.case_both_merged_staggered(a_blocks, &ra, b_blocks, &rb)?
        }
        (Some(_), Some(_)) => ctx
            .case_both_merged_staggered(b_blocks, &rb, a_blocks, &ra)?
            .reversed(),
        (None, Some(_)) => ctx.case_mixed(a_blocks, &ra, b_blocks, &rb)?,
        (Some(_), None) => ctx.case_mixed(b_blocks, &rb, a_blocks, &ra)?.reversed(),
    };
    if seq.source != a || seq.target != b {
        return Err(Error::Verification(
            "assembled derivation has the wrong endpoints".into(),
        ));
    }
    Ok(seq)
}

/// Build, verify and certify the lifted generating set for the annihilator
/// of `x` over a free product of monoids.
///
/// Containment is checked exactly; generation is checked on every related
/// pair whose operands have at most `block_grade` blocks (finite factors) or
/// grade at most `block_grade` (infinite factors), with each pair receiving
/// a step-checked derivation.
pub fn mfp_witness(
    product: &FreeProduct,
    x: &Element,
    supplied: &[(usize, Element, PairSet)],
    block_grade: u32,
    bound: u32,
) -> Result<WitnessReport> {
    let ctx = MfpContext::build(product, x, supplied, bound)?;
    let handle = ctx.handle.clone();
    let pairs = ctx.generating_pairs().clone();

    for (p, q) in pairs.iter() {
        if handle.product(&ctx.x, p)? != handle.product(&ctx.x, q)? {
            return Err(Error::Verification(
                "a lifted pair is outside the annihilator".into(),
            ));
        }
    }

    let all_finite = product
        .factors()
        .iter()
        .all(|f| f.order().is_finite());
    let universe = if all_finite {
        product.enumerate_by_blocks(block_grade)?
    } else {
        handle.enumerate(block_grade)
    };

    let mut certificates = Vec::new();
    for (i, u) in universe.iter().enumerate() {
        let xu = handle.product(&ctx.x, u)?;
        for v in universe.iter().skip(i + 1) {
            if xu != handle.product(&ctx.x, v)? {
                continue;
            }
            if ctx.stop.is_none() {
                return Err(Error::Verification(format!(
                    "every letter of {} is right invertible, yet {} and {} are \
                     related and distinct",
                    handle.display(&ctx.x),
                    handle.display(u),
                    handle.display(v)
                )));
            }
            certificates.push(mfp_sequence(&ctx, u, v)?);
        }
    }
    check_certificates(&handle, &pairs, &certificates)?;

    let hypotheses = vec![
        "every factor is a monoid".into(),
        match ctx.stop {
            Some(i) => format!("letter {} is the first with no right inverse", i),
            None => "every letter is right invertible".into(),
        },
    ];

    Ok(WitnessReport {
        tag: "mfp",
        description: format!(
            "annihilator generators for {} over {}",
            handle.display(&ctx.x),
            handle.describe()
        ),
        hypotheses,
        generators: pairs,
        verification: Verification::Bounded {
            grade: block_grade,
            depth: bound * bound,
        },
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::bicyclic::Bicyclic;
    use crate::backends::table::{chain_semilattice, left_zero};
    use crate::constructions::adjoin::adjoin_identity;
    use crate::xseq::verify_xsequence;

    fn chain2() -> SemigroupHandle {
        SemigroupHandle::new(chain_semilattice(2))
    }

    fn two_chains() -> FreeProduct {
        FreeProduct::of_monoids(vec![chain2(), chain2()]).unwrap()
    }

    /// Bicyclic and a chain, with generators for the annihilators of p and
    /// of qp supplied by hand.
    fn bicyclic_and_chain() -> (FreeProduct, Vec<(usize, Element, PairSet)>) {
        let b = SemigroupHandle::new(Bicyclic::new());
        let f = FreeProduct::of_monoids(vec![b.clone(), chain2()]).unwrap();
        let p = b.parse("p").unwrap();
        let qp = b.parse("qp").unwrap();
        let one = b.identity().unwrap();
        let supplied = vec![
            (0, p, PairSet::from_pairs([(qp.clone(), one.clone())])),
            (0, qp.clone(), PairSet::from_pairs([(qp, one)])),
        ];
        (f, supplied)
    }

    #[test]
    fn single_letter_witness_matches_the_factor_annihilator() {
        let f = two_chains();
        let h = f.handle();
        let x = f.embed(0, &chain2().parse("z1").unwrap()).unwrap();
        let report = mfp_witness(&f, &x, &[], 3, 4).unwrap();
        // One lifted pair: the factor identity against the letter itself.
        assert_eq!(report.generators.len(), 1);
        let z1 = h.parse("z1").unwrap();
        assert!(report.generators.contains(&h.identity().unwrap(), &z1));
        assert!(!report.certificates.is_empty());
    }

    #[test]
    fn crossing_pair_derives_in_one_step() {
        let f = two_chains();
        let h = f.handle();
        let x = f.embed(0, &chain2().parse("z1").unwrap()).unwrap();
        let ctx = MfpContext::build(&f, &x, &[], 4).unwrap();
        let a = h.parse("1:z1").unwrap();
        let b = h.parse("z1*1:z1").unwrap();
        let seq = mfp_sequence(&ctx, &a, &b).unwrap();
        assert_eq!(seq.len(), 1);
        let step = &seq.steps[0];
        assert_eq!(step.p, h.identity().unwrap());
        assert_eq!(step.q, h.parse("z1").unwrap());
        assert_eq!(step.c, Some(a.clone()));
        assert!(verify_xsequence(&h, ctx.generating_pairs(), &seq).is_valid());
    }

    #[test]
    fn merged_blocks_at_the_same_depth_use_the_factor_derivation() {
        // A left-zero monoid gives the blocked letter a universal factor
        // annihilator, so distinct merged blocks relate.
        let lz1 = adjoin_identity(&SemigroupHandle::new(left_zero(2)));
        let f = FreeProduct::of_monoids(vec![lz1.clone(), chain2()]).unwrap();
        let h = f.handle();
        let x = f.embed(0, &lz1.parse("a").unwrap()).unwrap();
        let ctx = MfpContext::build(&f, &x, &[], 4).unwrap();
        let a = f.embed(0, &lz1.parse("a").unwrap()).unwrap();
        let b = f.embed(0, &lz1.parse("b").unwrap()).unwrap();
        let seq = mfp_sequence(&ctx, &a, &b).unwrap();
        assert!(verify_xsequence(&h, ctx.generating_pairs(), &seq).is_valid());
        assert_eq!(seq.source, a);
        assert_eq!(seq.target, b);
    }

    #[test]
    fn deeper_letters_lift_pairs_behind_the_inverse_prefix() {
        // x = a * g over (cyclic 2) * (left-zero + 1): the group letter
        // cancels, so the generating pairs live one level in.
        let g2 = SemigroupHandle::new(crate::backends::table::cyclic_group(2));
        let lz1 = adjoin_identity(&SemigroupHandle::new(left_zero(2)));
        let f = FreeProduct::of_monoids(vec![g2.clone(), lz1.clone()]).unwrap();
        let h = f.handle();
        let g = f.embed(0, &g2.parse("g").unwrap()).unwrap();
        let a0 = f.embed(1, &lz1.parse("a").unwrap()).unwrap();
        let x = h.product(&a0, &g).unwrap();
        let report = mfp_witness(&f, &x, &[], 3, 4).unwrap();
        // The pair (1, a) generates the blocked factor's annihilator on its
        // own (right-multiplying reaches (c, a) for every c), so the witness
        // holds exactly its lift behind the inverse g.
        assert_eq!(report.generators.len(), 1);
        assert!(report
            .generators
            .contains(&g, &h.product(&g, &a0).unwrap()));
        // One representative pair: g*a ~ g*b behind the prefix.
        let ga = h.product(&g, &a0).unwrap();
        let gb = h
            .product(&g, &f.embed(1, &lz1.parse("b").unwrap()).unwrap())
            .unwrap();
        let ctx = MfpContext::build(&f, &x, &[], 4).unwrap();
        let seq = mfp_sequence(&ctx, &ga, &gb).unwrap();
        assert!(verify_xsequence(&h, ctx.generating_pairs(), &seq).is_valid());
    }

    #[test]
    fn staggered_merges_replay_the_absorbed_letters() {
        // x = z1 * p: a = q*z1*p merges two levels in, b = qp merges at the
        // first letter; the derivation walks a's replayed copy of x back.
        let (f, supplied) = bicyclic_and_chain();
        let h = f.handle();
        let x = h.parse("z1*p").unwrap();
        let ctx = MfpContext::build(&f, &x, &supplied, 6).unwrap();
        let a = h.parse("q*z1*p").unwrap();
        let b = h.parse("qp").unwrap();
        assert_eq!(
            h.product(&x, &a).unwrap(),
            h.product(&x, &b).unwrap()
        );
        let seq = mfp_sequence(&ctx, &a, &b).unwrap();
        assert!(!seq.is_empty());
        assert!(verify_xsequence(&h, ctx.generating_pairs(), &seq).is_valid());
    }

    #[test]
    fn mixed_shapes_grow_the_replayed_region() {
        // x = z1 * p again: a = z1 survives unmerged, b = q*z1*p*z1 merges
        // at the second letter and replays p before rejoining a's tail.
        let (f, supplied) = bicyclic_and_chain();
        let h = f.handle();
        let x = h.parse("z1*p").unwrap();
        let ctx = MfpContext::build(&f, &x, &supplied, 6).unwrap();
        let a = h.parse("z1").unwrap();
        let b = h.parse("q*z1*p*z1").unwrap();
        assert_eq!(
            h.product(&x, &a).unwrap(),
            h.product(&x, &b).unwrap()
        );
        let seq = mfp_sequence(&ctx, &a, &b).unwrap();
        assert!(verify_xsequence(&h, ctx.generating_pairs(), &seq).is_valid());
        // And in the reverse orientation.
        let back = mfp_sequence(&ctx, &b, &a).unwrap();
        assert!(verify_xsequence(&h, ctx.generating_pairs(), &back).is_valid());
    }

    #[test]
    fn three_letter_staggering_exercises_the_inner_induction() {
        // Two bicyclic factors, x = qp * q'p' ... spelled with positional
        // tags: the full replay region has length two.
        let b0 = SemigroupHandle::new(Bicyclic::new());
        let b1 = SemigroupHandle::new(Bicyclic::new());
        let f = FreeProduct::of_monoids(vec![b0.clone(), b1.clone()]).unwrap();
        let h = f.handle();
        let p = b0.parse("p").unwrap();
        let qp = b0.parse("qp").unwrap();
        let one = b0.identity().unwrap();
        let ann = PairSet::from_pairs([(qp.clone(), one.clone())]);
        let supplied = vec![
            (0, p.clone(), ann.clone()),
            (0, qp.clone(), ann.clone()),
            (1, p.clone(), ann.clone()),
            (1, qp.clone(), ann),
        ];
        // x = qp * p' * p (letters x1 = p, x2 = p', x3 = qp).
        let x = h.parse("qp*1:p*p").unwrap();
        let ctx = MfpContext::build(&f, &x, &supplied, 8).unwrap();
        assert_eq!(ctx.first_blocked_letter(), Some(3));

        // Staggered merge with one replayed letter.
        let a = h.parse("q*1:q*qp*1:p*p*1:p").unwrap();
        let b = h.parse("qp*1:p").unwrap();
        assert_eq!(h.product(&x, &a).unwrap(), h.product(&x, &b).unwrap());
        let seq = mfp_sequence(&ctx, &a, &b).unwrap();
        assert!(verify_xsequence(&h, ctx.generating_pairs(), &seq).is_valid());

        // Mixed shape whose replayed region has length two.
        let a2 = h.parse("1:p").unwrap();
        let b2 = h.parse("q*1:q*qp*1:p*p*1:p").unwrap();
        assert_eq!(h.product(&x, &a2).unwrap(), h.product(&x, &b2).unwrap());
        let seq2 = mfp_sequence(&ctx, &a2, &b2).unwrap();
        assert!(verify_xsequence(&h, ctx.generating_pairs(), &seq2).is_valid());
    }

    #[test]
    fn witness_certifies_every_window_pair() {
        let lz1 = adjoin_identity(&SemigroupHandle::new(left_zero(2)));
        let f = FreeProduct::of_monoids(vec![lz1.clone(), chain2()]).unwrap();
        let x = f.embed(0, &lz1.parse("a").unwrap()).unwrap();
        let report = mfp_witness(&f, &x, &[], 3, 4).unwrap();
        assert!(matches!(
            report.verification,
            Verification::Bounded { grade: 3, .. }
        ));
        assert!(!report.certificates.is_empty());
    }

    #[test]
    fn fully_invertible_letters_leave_an_empty_witness() {
        let g2 = SemigroupHandle::new(crate::backends::table::cyclic_group(2));
        let g3 = SemigroupHandle::new(crate::backends::table::cyclic_group(3));
        let f = FreeProduct::of_monoids(vec![g2.clone(), g3]).unwrap();
        let x = f.embed(0, &g2.parse("g").unwrap()).unwrap();
        let report = mfp_witness(&f, &x, &[], 3, 4).unwrap();
        assert!(report.generators.is_empty());
        assert!(report.certificates.is_empty());
    }
}
