//! Free products of semigroups and of monoids.
//!
//! Elements are reduced block sequences: adjacent blocks come from distinct
//! factors, and in the monoid variant no block carries a factor identity
//! (the empty sequence is the identity of the product). Multiplication
//! concatenates and re-reduces; in the monoid variant a boundary product
//! equal to a factor identity deletes the block and reduction cascades.

use std::collections::BTreeSet;

use crate::element::{Block, Element};
use crate::error::{Error, Result};
use crate::semigroup::{Order, Semigroup, SemigroupHandle};

#[derive(Clone, Debug)]
pub struct FreeProduct {
    factors: Vec<SemigroupHandle>,
    monoid: bool,
}

impl FreeProduct {
    /// Free product in the category of semigroups: blocks never vanish.
    pub fn of_semigroups(factors: Vec<SemigroupHandle>) -> Result<FreeProduct> {
        if factors.is_empty() {
            return Err(Error::Invalid("a free product needs at least one factor".into()));
        }
        Ok(FreeProduct { factors, monoid: false })
    }

    /// Free product in the category of monoids: factor identities are all
    /// identified with the identity of the product. Errors when a factor has
    /// no identity.
    pub fn of_monoids(factors: Vec<SemigroupHandle>) -> Result<FreeProduct> {
        if factors.is_empty() {
            return Err(Error::Invalid("a free product needs at least one factor".into()));
        }
        for (k, f) in factors.iter().enumerate() {
            if f.identity().is_none() {
                return Err(Error::Hypothesis(format!(
                    "monoid free product needs monoid factors; factor {k} ({}) has no identity",
                    f.describe()
                )));
            }
        }
        Ok(FreeProduct { factors, monoid: true })
    }

    pub fn handle(&self) -> SemigroupHandle {
        SemigroupHandle::new(self.clone())
    }

    pub fn factors(&self) -> &[SemigroupHandle] {
        &self.factors
    }

    pub fn factor(&self, k: usize) -> &SemigroupHandle {
        &self.factors[k]
    }

    pub fn is_monoid_product(&self) -> bool {
        self.monoid
    }

    fn is_factor_identity(&self, k: usize, e: &Element) -> bool {
        self.factors[k].identity().as_ref() == Some(e)
    }

    /// The image of a factor element as a product element.
    pub fn embed(&self, k: usize, e: &Element) -> Result<Element> {
        if k >= self.factors.len() {
            return Err(Error::Invalid(format!("no factor {k}")));
        }
        let inner = self.factors[k].canonical(e)?;
        if self.monoid && self.is_factor_identity(k, &inner) {
            return Ok(Element::Blocks(Vec::new()));
        }
        Ok(Element::Blocks(vec![Block { factor: k, inner }]))
    }

    /// Reduce an arbitrary block list to canonical form.
    fn reduce(&self, blocks: &[Block]) -> Result<Vec<Block>> {
        let mut acc: Vec<Block> = Vec::new();
        for raw in blocks {
            if raw.factor >= self.factors.len() {
                return Err(Error::Invalid(format!("no factor {}", raw.factor)));
            }
            let inner = self.factors[raw.factor].canonical(&raw.inner)?;
            if self.monoid && self.is_factor_identity(raw.factor, &inner) {
                continue;
            }
            let mut pending = Block { factor: raw.factor, inner };
            loop {
                match acc.last() {
                    Some(last) if last.factor == pending.factor => {
                        let merged =
                            self.factors[pending.factor].product(&last.inner, &pending.inner)?;
                        acc.pop();
                        if self.monoid && self.is_factor_identity(pending.factor, &merged) {
                            // Cancellation: the pending block is consumed and
                            // the exposed last block awaits the next input.
                            break;
                        }
                        pending = Block { factor: pending.factor, inner: merged };
                        // The new last block (if any) is from a different
                        // factor by the invariant, so the loop ends next turn.
                    }
                    _ => {
                        acc.push(pending);
                        break;
                    }
                }
            }
        }
        Ok(acc)
    }

    fn blocks_of<'a>(&self, x: &'a Element) -> Result<&'a [Block]> {
        match x {
            Element::Blocks(v) => Ok(v),
            _ => Err(Error::not_an_element(&self.describe(), format!("{x:?}"))),
        }
    }

    /// All reduced sequences of at most `max_blocks` blocks over finite
    /// factors, irrespective of inner grades. Errors when a factor is
    /// infinite.
    pub fn enumerate_by_blocks(&self, max_blocks: u32) -> Result<Vec<Element>> {
        let mut per_factor: Vec<Vec<Element>> = Vec::new();
        for (k, f) in self.factors.iter().enumerate() {
            let all = f.elements().ok_or_else(|| Error::RequiresFinite {
                operation: "enumerate_by_blocks".into(),
                backend: f.describe(),
            })?;
            per_factor.push(
                all.into_iter()
                    .filter(|e| !(self.monoid && self.is_factor_identity(k, e)))
                    .collect(),
            );
        }
        let mut out = Vec::new();
        if self.monoid {
            out.push(Element::Blocks(Vec::new()));
        }
        let mut stack: Vec<Block> = Vec::new();
        fn rec(
            fp: &FreeProduct,
            per_factor: &[Vec<Element>],
            stack: &mut Vec<Block>,
            remaining: u32,
            out: &mut Vec<Element>,
        ) {
            if remaining == 0 {
                return;
            }
            let last = stack.last().map(|b| b.factor);
            for (k, elems) in per_factor.iter().enumerate() {
                if Some(k) == last {
                    continue;
                }
                for e in elems {
                    stack.push(Block { factor: k, inner: e.clone() });
                    out.push(Element::Blocks(stack.clone()));
                    rec(fp, per_factor, stack, remaining - 1, out);
                    stack.pop();
                }
            }
        }
        rec(self, &per_factor, &mut stack, max_blocks, &mut out);
        Ok(out)
    }

    fn display_block(&self, b: &Block) -> String {
        let text = self.factors[b.factor].display(&b.inner);
        let needs_braces = text.contains('*') || text.contains(':');
        let body = if needs_braces { format!("{{{text}}}") } else { text.clone() };
        let ambiguous = self.factors[..b.factor]
            .iter()
            .any(|f| f.parse(&text).is_ok());
        if ambiguous || needs_braces {
            format!("{}:{}", b.factor, body)
        } else {
            body
        }
    }

    fn parse_block(&self, token: &str) -> Result<Block> {
        let (tag, body) = match token.split_once(':') {
            Some((digits, rest)) if digits.chars().all(|c| c.is_ascii_digit()) => {
                let k: usize = digits
                    .parse()
                    .map_err(|_| Error::not_an_element(&self.describe(), token))?;
                (Some(k), rest)
            }
            _ => (None, token),
        };
        let body = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .unwrap_or(body);
        match tag {
            Some(k) => {
                if k >= self.factors.len() {
                    return Err(Error::not_an_element(&self.describe(), token));
                }
                Ok(Block { factor: k, inner: self.factors[k].parse(body)? })
            }
            None => {
                for (k, f) in self.factors.iter().enumerate() {
                    if let Ok(inner) = f.parse(body) {
                        return Ok(Block { factor: k, inner });
                    }
                }
                Err(Error::not_an_element(&self.describe(), token))
            }
        }
    }

    /// Split the text of a block sequence at top-level `*`.
    fn split_blocks(text: &str) -> Vec<&str> {
        let mut parts = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, c) in text.char_indices() {
            match c {
                '{' | '(' | '[' | '<' => depth += 1,
                '}' | ')' | ']' | '>' => depth = depth.saturating_sub(1),
                '*' if depth == 0 => {
                    parts.push(&text[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push(&text[start..]);
        parts
    }

    /// All `c` with `left * c == target`, by cancellation profile: `c` may
    /// right-invert `r` trailing blocks of `left` (monoid variant), then
    /// either continue `target` directly or merge into one boundary block.
    fn solve_right_division(
        &self,
        left: &[Block],
        target: &[Block],
        bound: u32,
    ) -> Result<Vec<Element>> {
        let n = left.len();
        let mut found: BTreeSet<Element> = BTreeSet::new();
        let max_cancel = if self.monoid { n } else { 0 };
        for r in 0..=max_cancel {
            // Right-inverse choices for the r cancelled blocks, innermost
            // (rightmost) first.
            let mut inverse_sets: Vec<Vec<Element>> = Vec::new();
            let mut feasible = true;
            for i in 1..=r {
                let b = &left[n - i];
                let id = self.factors[b.factor]
                    .identity()
                    .expect("monoid variant has factor identities");
                let invs = self.factors[b.factor].right_divisors(&b.inner, &id, bound);
                if invs.is_empty() {
                    feasible = false;
                    break;
                }
                inverse_sets.push(invs);
            }
            if !feasible {
                continue;
            }
            let kept = &left[..n - r];
            let mut tails: Vec<Vec<Block>> = Vec::new();
            // Continue target directly past the kept prefix.
            if target.len() >= kept.len() && &target[..kept.len()] == kept {
                tails.push(target[kept.len()..].to_vec());
            }
            // Or merge the last kept block with a boundary divisor.
            if !kept.is_empty()
                && target.len() >= kept.len()
                && target[..kept.len() - 1] == kept[..kept.len() - 1]
            {
                let lb = &kept[kept.len() - 1];
                let tb = &target[kept.len() - 1];
                if lb.factor == tb.factor {
                    for d in self.factors[lb.factor].right_divisors(&lb.inner, &tb.inner, bound)
                    {
                        let mut tail = vec![Block { factor: lb.factor, inner: d }];
                        tail.extend_from_slice(&target[kept.len()..]);
                        tails.push(tail);
                    }
                }
            }
            if tails.is_empty() {
                continue;
            }
            let mut combos: Vec<Vec<Block>> = vec![Vec::new()];
            for (i, invs) in inverse_sets.iter().enumerate() {
                let factor = left[n - 1 - i].factor;
                let mut next = Vec::with_capacity(combos.len() * invs.len());
                for c in &combos {
                    for inv in invs {
                        let mut v = c.clone();
                        v.push(Block { factor, inner: inv.clone() });
                        next.push(v);
                    }
                }
                combos = next;
            }
            for combo in &combos {
                for tail in &tails {
                    let mut raw = combo.clone();
                    raw.extend_from_slice(tail);
                    let c = Element::Blocks(self.reduce(&raw)?);
                    if !self.contains(&c) {
                        continue;
                    }
                    let product = self.product(&Element::Blocks(left.to_vec()), &c)?;
                    if self.blocks_of(&product)? == target {
                        found.insert(c);
                    }
                }
            }
        }
        Ok(found.into_iter().collect())
    }
}

impl Semigroup for FreeProduct {
    fn describe(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|f| f.describe()).collect();
        if self.monoid {
            format!("mfp({})", parts.join(", "))
        } else {
            format!("sfp({})", parts.join(", "))
        }
    }

    fn order(&self) -> Order {
        if self.factors.len() == 1 {
            return self.factors[0].order();
        }
        if self.monoid {
            let all_trivial = self
                .factors
                .iter()
                .all(|f| matches!(f.order(), Order::Finite(1)));
            if all_trivial {
                return Order::Finite(1);
            }
        }
        Order::Infinite
    }

    fn identity(&self) -> Option<Element> {
        if self.monoid {
            Some(Element::Blocks(Vec::new()))
        } else if self.factors.len() == 1 {
            let id = self.factors[0].identity()?;
            Some(Element::Blocks(vec![Block { factor: 0, inner: id }]))
        } else {
            None
        }
    }

    fn contains(&self, x: &Element) -> bool {
        let Ok(blocks) = self.blocks_of(x) else { return false };
        if blocks.is_empty() {
            return self.monoid;
        }
        match self.reduce(blocks) {
            Ok(reduced) => reduced == blocks,
            Err(_) => false,
        }
    }

    fn canonical(&self, x: &Element) -> Result<Element> {
        let blocks = self.blocks_of(x)?;
        let reduced = self.reduce(blocks)?;
        if reduced.is_empty() && !self.monoid {
            return Err(Error::not_an_element(&self.describe(), format!("{x:?}")));
        }
        Ok(Element::Blocks(reduced))
    }

    fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        let mut raw = self.canonical(x)?.as_blocks().unwrap().to_vec();
        raw.extend_from_slice(self.canonical(y)?.as_blocks().unwrap());
        let reduced = self.reduce(&raw)?;
        if reduced.is_empty() && !self.monoid {
            return Err(Error::Invalid(
                "product reduced to an empty sequence in a semigroup free product".into(),
            ));
        }
        Ok(Element::Blocks(reduced))
    }

    fn grade(&self, x: &Element) -> u32 {
        match x {
            Element::Blocks(blocks) => {
                let inner_max = blocks
                    .iter()
                    .map(|b| self.factors[b.factor].grade(&b.inner))
                    .max()
                    .unwrap_or(0);
                blocks.len() as u32 + inner_max
            }
            _ => 0,
        }
    }

    fn enumerate(&self, bound: u32) -> Vec<Element> {
        let mut out = Vec::new();
        if self.monoid {
            out.push(Element::Blocks(Vec::new()));
        }
        for k in 1..=bound {
            let budget = bound - k;
            let per_factor: Vec<Vec<Element>> = self
                .factors
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    f.enumerate(budget)
                        .into_iter()
                        .filter(|e| !(self.monoid && self.is_factor_identity(i, e)))
                        .collect()
                })
                .collect();
            let mut stack: Vec<Block> = Vec::new();
            gen_exact(self, &per_factor, &mut stack, k, &mut out);
        }
        fn gen_exact(
            fp: &FreeProduct,
            per_factor: &[Vec<Element>],
            stack: &mut Vec<Block>,
            remaining: u32,
            out: &mut Vec<Element>,
        ) {
            if remaining == 0 {
                out.push(Element::Blocks(stack.clone()));
                return;
            }
            let last = stack.last().map(|b| b.factor);
            for (k, elems) in per_factor.iter().enumerate() {
                if Some(k) == last {
                    continue;
                }
                for e in elems {
                    stack.push(Block { factor: k, inner: e.clone() });
                    gen_exact(fp, per_factor, stack, remaining - 1, out);
                    stack.pop();
                }
            }
        }
        out
    }

    fn display(&self, x: &Element) -> String {
        match x {
            Element::Blocks(blocks) if blocks.is_empty() => "1".to_string(),
            Element::Blocks(blocks) => blocks
                .iter()
                .map(|b| self.display_block(b))
                .collect::<Vec<_>>()
                .join("*"),
            other => format!("{other:?}"),
        }
    }

    fn parse(&self, text: &str) -> Result<Element> {
        if text == "1" && self.monoid {
            return Ok(Element::Blocks(Vec::new()));
        }
        let mut blocks = Vec::new();
        for token in FreeProduct::split_blocks(text) {
            blocks.push(self.parse_block(token.trim())?);
        }
        self.canonical(&Element::Blocks(blocks))
    }

    fn right_divisors(&self, left: &Element, target: &Element, bound: u32) -> Vec<Element> {
        let (Ok(l), Ok(t)) = (self.canonical(left), self.canonical(target)) else {
            return Vec::new();
        };
        let (Ok(lb), Ok(tb)) = (self.blocks_of(&l), self.blocks_of(&t)) else {
            return Vec::new();
        };
        self.solve_right_division(lb, tb, bound).unwrap_or_default()
    }

    fn divisor_search_exact(&self) -> bool {
        self.factors.iter().all(|f| f.divisor_search_exact())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::table::{chain_semilattice, cyclic_group, left_zero};
    use crate::backends::FreeWords;
    use crate::semigroup::check_associativity_bounded;

    fn handles(ts: Vec<impl Semigroup + 'static>) -> Vec<SemigroupHandle> {
        ts.into_iter().map(SemigroupHandle::new).collect()
    }

    #[test]
    fn monoid_variant_elides_factor_identities() {
        let fp = FreeProduct::of_monoids(handles(vec![chain_semilattice(2), cyclic_group(2)]))
            .unwrap();
        let id0 = fp.embed(0, &Element::Table(0)).unwrap();
        assert_eq!(id0, Element::Blocks(Vec::new()));
        let z = fp.embed(0, &Element::Table(1)).unwrap();
        let g = fp.embed(1, &Element::Table(1)).unwrap();
        let zg = fp.product(&z, &g).unwrap();
        assert_eq!(fp.display(&zg), "z1*g");
        // g * g = 1 cancels and cascades: (z*g) * (g*z) = z*z = z.
        let gz = fp.product(&g, &z).unwrap();
        let w = fp.product(&zg, &gz).unwrap();
        assert_eq!(fp.display(&w), "z1");
    }

    #[test]
    fn semigroup_variant_keeps_identity_blocks() {
        let fp = FreeProduct::of_semigroups(handles(vec![chain_semilattice(2), left_zero(2)]))
            .unwrap();
        let one = fp.embed(0, &Element::Table(0)).unwrap();
        assert_eq!(one.as_blocks().unwrap().len(), 1);
        let a = fp.embed(1, &Element::Table(0)).unwrap();
        let prod = fp.product(&one, &a).unwrap();
        assert_eq!(prod.as_blocks().unwrap().len(), 2);
    }

    #[test]
    fn adjacent_same_factor_blocks_merge() {
        let fp = FreeProduct::of_semigroups(handles(vec![left_zero(2), left_zero(2)])).unwrap();
        let a0 = fp.embed(0, &Element::Table(0)).unwrap();
        let b1 = fp.embed(1, &Element::Table(1)).unwrap();
        let w = fp.product(&fp.product(&a0, &b1).unwrap(), &b1).unwrap();
        // b1 * b1 merges to b1 in the left zero factor.
        assert_eq!(w.as_blocks().unwrap().len(), 2);
    }

    #[test]
    fn sampled_associativity() {
        let fp = FreeProduct::of_monoids(handles(vec![cyclic_group(2), chain_semilattice(2)]))
            .unwrap();
        check_associativity_bounded(&fp, 3).unwrap();
        let sp = FreeProduct::of_semigroups(handles(vec![left_zero(2), left_zero(2)])).unwrap();
        check_associativity_bounded(&sp, 3).unwrap();
    }

    #[test]
    fn display_parse_round_trip() {
        let fp = FreeProduct::of_monoids(handles(vec![cyclic_group(3), cyclic_group(3)]))
            .unwrap();
        for e in fp.enumerate(4) {
            let text = fp.display(&e);
            assert_eq!(fp.parse(&text).unwrap(), e, "round trip of {text}");
        }
    }

    #[test]
    fn identical_factors_get_positional_tags() {
        let fp = FreeProduct::of_monoids(handles(vec![cyclic_group(2), cyclic_group(2)]))
            .unwrap();
        let g0 = fp.embed(0, &Element::Table(1)).unwrap();
        let g1 = fp.embed(1, &Element::Table(1)).unwrap();
        let w = fp.product(&g0, &g1).unwrap();
        let text = fp.display(&w);
        assert_eq!(text, "g*1:g");
        assert_eq!(fp.parse(&text).unwrap(), w);
    }

    #[test]
    fn right_division_matches_brute_force_search() {
        // Monoid free product where cancellation genuinely occurs.
        let fp = FreeProduct::of_monoids(handles(vec![cyclic_group(2), chain_semilattice(2)]))
            .unwrap();
        let universe = fp.enumerate_by_blocks(3).unwrap();
        for left in universe.iter().take(12) {
            for target in universe.iter().take(12) {
                let mut expected: Vec<Element> = universe
                    .iter()
                    .filter(|c| &fp.product(left, c).unwrap() == target)
                    .cloned()
                    .collect();
                expected.sort();
                let mut got: Vec<Element> = fp
                    .right_divisors(left, target, 8)
                    .into_iter()
                    .filter(|c| universe.contains(c))
                    .collect();
                got.sort();
                assert_eq!(
                    got,
                    expected,
                    "divisors of {} under {}",
                    fp.display(target),
                    fp.display(left)
                );
            }
        }
    }

    #[test]
    fn free_factors_give_infinite_order_and_no_divisor_loss() {
        let fp = FreeProduct::of_semigroups(handles(vec![
            FreeWords::semigroup("ab").unwrap(),
            FreeWords::semigroup("c").unwrap(),
        ]))
        .unwrap();
        assert_eq!(fp.order(), Order::Infinite);
        let a = fp.parse("a").unwrap();
        let ac = fp.parse("a*c").unwrap();
        assert_eq!(fp.right_divisors(&a, &ac, 6), vec![fp.parse("c").unwrap()]);
    }
}
