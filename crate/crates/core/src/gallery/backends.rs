//! Symbolic backends for the fixture gallery: infinite families presented at
//! finite rank, with case-analysis multiplication instead of tables so the
//! rank can grow past table-feasible sizes.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::semigroup::{IntersectionOutcome, Order, Semigroup, SemigroupHandle};

/// All exponent vectors of the given rank with component sum in
/// `min_total..=max_total`, graded by sum, lexicographic within a grade.
fn graded_vectors(rank: usize, min_total: u32, max_total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in min_total..=max_total {
        let mut current = vec![0u32; rank];
        fill(&mut out, &mut current, 0, total);
    }
    fn fill(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(current.clone());
            return;
        }
        for e in (0..=remaining).rev() {
            current[pos] = e;
            fill(out, current, pos + 1, remaining - e);
        }
        current[pos] = 0;
    }
    out
}

fn vec_sum(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b.iter()).map(|(&p, &q)| p + q).collect()
}

fn vec_max(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b.iter()).map(|(&p, &q)| p.max(q)).collect()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b.iter()).all(|(&p, &q)| p <= q)
}

fn render_vec(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn parse_vec(text: &str, rank: usize) -> Option<Vec<u32>> {
    let body = text.strip_prefix('[')?.strip_suffix(']')?;
    let v: Vec<u32> = body
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .ok()?;
    (v.len() == rank).then_some(v)
}

/// Which extra elements sit on top of the barred commutative core.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Tier {
    /// `F ∪ ~F ∪ {0}` only.
    Base,
    /// Adds the collapsers `a`, `b` that send every plain word to its bar.
    Collapsers,
    /// Adds a unit group `{1, g}` with `g` swapping `a` and `b`.
    Units,
}

/// A free commutative semigroup `F` of finite rank, a barred copy `~F`, and
/// a zero, multiplied by `u * ~v = ~u * v = ~(uv)` and `~u * ~v = 0`.
///
/// The two optional tiers adjoin the collapser pair (making the bars a
/// two-generated right ideal slice) and on top of that a two-element unit
/// group. Plain words are `ExpVec`, barred words are `Bar`.
#[derive(Clone, Debug)]
pub struct BarredCommutative {
    rank: usize,
    tier: Tier,
}

impl BarredCommutative {
    pub fn base(rank: usize) -> Result<BarredCommutative> {
        BarredCommutative::build(rank, Tier::Base)
    }

    pub fn with_collapsers(rank: usize) -> Result<BarredCommutative> {
        BarredCommutative::build(rank, Tier::Collapsers)
    }

    pub fn with_units(rank: usize) -> Result<BarredCommutative> {
        BarredCommutative::build(rank, Tier::Units)
    }

    fn build(rank: usize, tier: Tier) -> Result<BarredCommutative> {
        if rank == 0 {
            return Err(Error::Invalid("rank must be at least 1".into()));
        }
        Ok(BarredCommutative { rank, tier })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn has_collapsers(&self) -> bool {
        self.tier != Tier::Base
    }

    fn has_units(&self) -> bool {
        self.tier == Tier::Units
    }

    fn check(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::not_an_element(&self.describe(), format!("{x:?}")))
        }
    }

    /// Bars of the minimal strict multiples of `u`: the honest generating
    /// set of `{~(uw) | w in F} ∪ {0}`.
    fn strict_bar_generators(&self, u: &[u32]) -> Vec<Element> {
        (0..self.rank)
            .map(|i| {
                let mut v = u.to_vec();
                v[i] += 1;
                Element::Bar(v)
            })
            .collect()
    }

    /// Unit bars `~x_i`: generators of the barred copy plus zero.
    fn unit_bars(&self) -> Vec<Element> {
        self.strict_bar_generators(&vec![0; self.rank])
    }
}

impl Semigroup for BarredCommutative {
    fn describe(&self) -> String {
        match self.tier {
            Tier::Base => format!("barred_comm({})", self.rank),
            Tier::Collapsers => format!("barred_comm+ab({})", self.rank),
            Tier::Units => format!("barred_comm+units({})", self.rank),
        }
    }

    fn order(&self) -> Order {
        Order::Infinite
    }

    fn identity(&self) -> Option<Element> {
        self.has_units().then_some(Element::One)
    }

    fn zero(&self) -> Option<Element> {
        Some(Element::Zero)
    }

    fn contains(&self, x: &Element) -> bool {
        match x {
            Element::ExpVec(v) | Element::Bar(v) => {
                v.len() == self.rank && v.iter().any(|&e| e > 0)
            }
            Element::Zero => true,
            Element::Sym("a") | Element::Sym("b") => self.has_collapsers(),
            Element::One | Element::Sym("g") => self.has_units(),
            _ => false,
        }
    }

    fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        use Element::{Bar, ExpVec, One, Sym, Zero};
        Ok(match (x, y) {
            (Zero, _) | (_, Zero) => Zero,
            (One, z) | (z, One) => z.clone(),
            (Sym("g"), Sym("g")) => One,
            (Sym("g"), Sym("a")) | (Sym("a"), Sym("g")) => Sym("b"),
            (Sym("g"), Sym("b")) | (Sym("b"), Sym("g")) => Sym("a"),
            // g fixes the core elementwise.
            (Sym("g"), z) | (z, Sym("g")) => z.clone(),
            (Sym(_), Sym(_)) => Zero,
            (Sym(_), ExpVec(v)) | (ExpVec(v), Sym(_)) => Bar(v.clone()),
            (Sym(_), Bar(_)) | (Bar(_), Sym(_)) => Zero,
            (ExpVec(u), ExpVec(v)) => ExpVec(vec_sum(u, v)),
            (ExpVec(u), Bar(v)) | (Bar(u), ExpVec(v)) => Bar(vec_sum(u, v)),
            (Bar(_), Bar(_)) => Zero,
            _ => unreachable!("membership checked above"),
        })
    }

    fn grade(&self, x: &Element) -> u32 {
        match x {
            Element::One => 0,
            Element::ExpVec(v) | Element::Bar(v) => v.iter().sum(),
            _ => 1,
        }
    }

    fn enumerate(&self, bound: u32) -> Vec<Element> {
        let mut out = Vec::new();
        if self.has_units() {
            out.push(Element::One);
            if bound >= 1 {
                out.push(Element::Sym("g"));
            }
        }
        if bound >= 1 {
            if self.has_collapsers() {
                out.push(Element::Sym("a"));
                out.push(Element::Sym("b"));
            }
            out.push(Element::Zero);
        }
        for total in 1..=bound {
            for v in graded_vectors(self.rank, total, total) {
                out.push(Element::ExpVec(v));
            }
            for v in graded_vectors(self.rank, total, total) {
                out.push(Element::Bar(v));
            }
        }
        out
    }

    fn display(&self, x: &Element) -> String {
        match x {
            Element::One => "1".to_string(),
            Element::Sym(s) => (*s).to_string(),
            Element::Zero => "0".to_string(),
            Element::ExpVec(v) => render_vec(v),
            Element::Bar(v) => format!("~{}", render_vec(v)),
            other => format!("{other:?}"),
        }
    }

    fn parse(&self, text: &str) -> Result<Element> {
        let elem = match text {
            "1" => Element::One,
            "g" => Element::Sym("g"),
            "a" => Element::Sym("a"),
            "b" => Element::Sym("b"),
            "0" => Element::Zero,
            t => {
                let (bar, body) = match t.strip_prefix('~') {
                    Some(rest) => (true, rest),
                    None => (false, t),
                };
                let v = parse_vec(body, self.rank)
                    .ok_or_else(|| Error::not_an_element(&self.describe(), text))?;
                if bar {
                    Element::Bar(v)
                } else {
                    Element::ExpVec(v)
                }
            }
        };
        self.canonical(&elem)
    }

    fn right_divisors(&self, left: &Element, target: &Element, bound: u32) -> Vec<Element> {
        let (Ok(()), Ok(())) = (self.check(left), self.check(target)) else {
            return Vec::new();
        };
        self.enumerate(bound)
            .into_iter()
            .filter(|c| self.product(left, c).map_or(false, |p| p == *target))
            .collect()
    }

    fn divisor_search_exact(&self) -> bool {
        false
    }

    fn is_left_cancellative_hint(&self) -> Option<bool> {
        Some(false)
    }

    /// Honest closed forms for principal intersections. Where the bars of a
    /// plain word's strict multiples are involved the generating set has one
    /// member per rank, so it grows with the rank; everywhere else the
    /// intersection is principal or two-generated.
    fn intersect_principal(
        &self,
        a: &Element,
        b: &Element,
        _bound: u32,
    ) -> Result<IntersectionOutcome> {
        self.check(a)?;
        self.check(b)?;
        use Element::{Bar, ExpVec, One, Sym, Zero};
        let exact = |generators: Vec<Element>| Ok(IntersectionOutcome { generators, exact: true });
        if a == b {
            return exact(vec![a.clone()]);
        }
        // Normalize so the cases below only see one ordering.
        let (x, y) = match (a, b) {
            (One, _) | (Sym("g"), _) => return exact(vec![b.clone()]),
            (_, One) | (_, Sym("g")) => return exact(vec![a.clone()]),
            (Zero, _) | (_, Zero) => return exact(vec![Zero]),
            (ExpVec(_), Bar(_)) | (ExpVec(_), Sym(_)) | (Bar(_), Sym(_)) => (a, b),
            _ => (b, a),
        };
        match (x, y) {
            (ExpVec(u), ExpVec(v)) => {
                let l = vec_max(u, v);
                if self.has_collapsers() {
                    // The collapsers put every bar of lF^1 into the ideal, so
                    // the intersection is the principal ideal of the join.
                    return exact(vec![ExpVec(l)]);
                }
                if divides(u, v) {
                    return exact(vec![ExpVec(v.clone())]);
                }
                if divides(v, u) {
                    return exact(vec![ExpVec(u.clone())]);
                }
                // Incomparable words: the bar of the join is reachable from
                // both sides but not from the join itself.
                exact(vec![ExpVec(l.clone()), Bar(l)])
            }
            (Bar(u), Bar(v)) => exact(vec![Bar(vec_max(u, v))]),
            (ExpVec(u), Bar(v)) => {
                if !self.has_collapsers() && divides(v, u) {
                    // Only the strict multiples of u carry bars on the plain
                    // side, so the join's bar is out and the minimal strict
                    // multiples take over.
                    return exact(self.strict_bar_generators(u));
                }
                exact(vec![Bar(vec_max(u, v))])
            }
            (ExpVec(u), Sym(_)) | (Bar(u), Sym(_)) => exact(vec![Bar(u.clone())]),
            (Sym(_), Sym(_)) => {
                if self.has_units() {
                    // g swaps the two collapsers, so their principal ideals
                    // coincide.
                    exact(vec![x.clone()])
                } else {
                    exact(self.unit_bars())
                }
            }
            _ => unreachable!("normalized above"),
        }
    }
}

/// Which extras sit on top of the pointed commutative core.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Point {
    /// `{a} ∪ F^0` only.
    Base,
    /// Adds the idempotent mediator `e` with `ea = ae = a`.
    Idempotent,
}

/// A free commutative monoid `F` of finite rank with a zero adjoined and an
/// annihilating point `a`: `a * 1 = a` and `a * t = 0` for every other `t`.
///
/// The optional idempotent `e` satisfies `e^2 = e`, `ea = ae = a` and kills
/// everything else except the identity.
#[derive(Clone, Debug)]
pub struct PointedCommutative {
    rank: usize,
    point: Point,
}

impl PointedCommutative {
    pub fn base(rank: usize) -> Result<PointedCommutative> {
        PointedCommutative::build(rank, Point::Base)
    }

    pub fn with_idempotent(rank: usize) -> Result<PointedCommutative> {
        PointedCommutative::build(rank, Point::Idempotent)
    }

    fn build(rank: usize, point: Point) -> Result<PointedCommutative> {
        if rank == 0 {
            return Err(Error::Invalid("rank must be at least 1".into()));
        }
        Ok(PointedCommutative { rank, point })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn has_idempotent(&self) -> bool {
        self.point == Point::Idempotent
    }

    fn check(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::not_an_element(&self.describe(), format!("{x:?}")))
        }
    }

    fn is_identity(x: &Element) -> bool {
        matches!(x, Element::ExpVec(v) if v.iter().all(|&e| e == 0))
    }
}

impl Semigroup for PointedCommutative {
    fn describe(&self) -> String {
        match self.point {
            Point::Base => format!("pointed_comm({})", self.rank),
            Point::Idempotent => format!("pointed_comm+e({})", self.rank),
        }
    }

    fn order(&self) -> Order {
        Order::Infinite
    }

    fn identity(&self) -> Option<Element> {
        Some(Element::ExpVec(vec![0; self.rank]))
    }

    fn zero(&self) -> Option<Element> {
        Some(Element::Zero)
    }

    fn contains(&self, x: &Element) -> bool {
        match x {
            Element::ExpVec(v) => v.len() == self.rank,
            Element::Zero | Element::Sym("a") => true,
            Element::Sym("e") => self.has_idempotent(),
            _ => false,
        }
    }

    fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        use Element::{ExpVec, Sym, Zero};
        if PointedCommutative::is_identity(x) {
            return Ok(y.clone());
        }
        if PointedCommutative::is_identity(y) {
            return Ok(x.clone());
        }
        Ok(match (x, y) {
            (ExpVec(u), ExpVec(v)) => ExpVec(vec_sum(u, v)),
            (Sym("e"), Sym("e")) => Sym("e"),
            (Sym("e"), Sym("a")) | (Sym("a"), Sym("e")) => Sym("a"),
            // The point and the idempotent annihilate every nonidentity
            // element of F^0 and the point annihilates itself.
            _ => Zero,
        })
    }

    fn grade(&self, x: &Element) -> u32 {
        match x {
            Element::ExpVec(v) => v.iter().sum(),
            _ => 1,
        }
    }

    fn enumerate(&self, bound: u32) -> Vec<Element> {
        let mut out = vec![Element::ExpVec(vec![0; self.rank])];
        if bound >= 1 {
            out.push(Element::Sym("a"));
            if self.has_idempotent() {
                out.push(Element::Sym("e"));
            }
            out.push(Element::Zero);
            out.extend(graded_vectors(self.rank, 1, bound).into_iter().map(Element::ExpVec));
        }
        out
    }

    fn display(&self, x: &Element) -> String {
        match x {
            Element::ExpVec(v) if v.iter().all(|&e| e == 0) => "1".to_string(),
            Element::ExpVec(v) => render_vec(v),
            Element::Sym(s) => (*s).to_string(),
            Element::Zero => "0".to_string(),
            other => format!("{other:?}"),
        }
    }

    fn parse(&self, text: &str) -> Result<Element> {
        let elem = match text {
            "1" => Element::ExpVec(vec![0; self.rank]),
            "a" => Element::Sym("a"),
            "e" => Element::Sym("e"),
            "0" => Element::Zero,
            t => Element::ExpVec(
                parse_vec(t, self.rank)
                    .ok_or_else(|| Error::not_an_element(&self.describe(), text))?,
            ),
        };
        self.canonical(&elem)
    }

    fn right_divisors(&self, left: &Element, target: &Element, bound: u32) -> Vec<Element> {
        let (Ok(()), Ok(())) = (self.check(left), self.check(target)) else {
            return Vec::new();
        };
        self.enumerate(bound)
            .into_iter()
            .filter(|c| self.product(left, c).map_or(false, |p| p == *target))
            .collect()
    }

    fn divisor_search_exact(&self) -> bool {
        false
    }

    fn is_left_cancellative_hint(&self) -> Option<bool> {
        Some(false)
    }
}

/// A free semigroup acting on a layer of atoms indexed by a target
/// semigroup: `a_t * w = a_{t(wφ)}` for the letter map `φ`, with every other
/// mixed or atom product equal to zero.
///
/// The alphabet has one letter per target generator: `p, q, r, ...` mapping
/// onto the rank generators and `y`, `z` mapping onto the two collapsers of
/// the target.
#[derive(Clone, Debug)]
pub struct AtomAct {
    rank: usize,
    target: SemigroupHandle,
    letters: Vec<u8>,
}

impl AtomAct {
    pub fn new(rank: usize) -> Result<AtomAct> {
        if rank == 0 {
            return Err(Error::Invalid("rank must be at least 1".into()));
        }
        if rank > 8 {
            return Err(Error::Invalid("atom_act supports rank at most 8".into()));
        }
        let target = SemigroupHandle::new(BarredCommutative::with_collapsers(rank)?);
        let mut letters: Vec<u8> = (0..rank as u8).map(|i| b'p' + i).collect();
        letters.push(b'y');
        letters.push(b'z');
        Ok(AtomAct { rank, target, letters })
    }

    pub fn target(&self) -> &SemigroupHandle {
        &self.target
    }

    /// The image of one letter in the target.
    fn letter_image(&self, letter: u8) -> Result<Element> {
        if letter == b'y' {
            return Ok(Element::Sym("a"));
        }
        if letter == b'z' {
            return Ok(Element::Sym("b"));
        }
        let i = letter.wrapping_sub(b'p') as usize;
        if i < self.rank {
            let mut v = vec![0; self.rank];
            v[i] = 1;
            Ok(Element::ExpVec(v))
        } else {
            Err(Error::not_an_element(&self.describe(), format!("letter {letter}")))
        }
    }

    /// The image of a word under the canonical onto map.
    pub fn word_image(&self, word: &[u8]) -> Result<Element> {
        let mut image: Option<Element> = None;
        for &letter in word {
            let next = self.letter_image(letter)?;
            image = Some(match image {
                None => next,
                Some(acc) => self.target.product(&acc, &next)?,
            });
        }
        image.ok_or_else(|| Error::Invalid("the empty word has no image".into()))
    }

    /// The atom indexed by a target element.
    pub fn atom(&self, t: &Element) -> Result<Element> {
        Ok(Element::AtomOf(Box::new(self.target.canonical(t)?)))
    }

    fn check(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::not_an_element(&self.describe(), format!("{x:?}")))
        }
    }

    fn words_up_to(&self, bound: u32) -> Vec<Vec<u8>> {
        let mut out: Vec<Vec<u8>> = Vec::new();
        let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for w in &layer {
                for &l in &self.letters {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl Semigroup for AtomAct {
    fn describe(&self) -> String {
        format!("atom_act({})", self.rank)
    }

    fn order(&self) -> Order {
        Order::Infinite
    }

    fn identity(&self) -> Option<Element> {
        None
    }

    fn zero(&self) -> Option<Element> {
        Some(Element::Zero)
    }

    fn contains(&self, x: &Element) -> bool {
        match x {
            Element::Word(w) => !w.is_empty() && w.iter().all(|l| self.letters.contains(l)),
            Element::AtomOf(t) => self.target.contains(t),
            Element::Zero => true,
            _ => false,
        }
    }

    fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        use Element::{AtomOf, Word, Zero};
        Ok(match (x, y) {
            (Word(u), Word(v)) => {
                let mut w = u.clone();
                w.extend_from_slice(v);
                Word(w)
            }
            (AtomOf(t), Word(w)) => AtomOf(Box::new(
                self.target.product(t, &self.word_image(w)?)?,
            )),
            // Atom-atom, word-atom and every zero product collapse.
            _ => Zero,
        })
    }

    fn grade(&self, x: &Element) -> u32 {
        match x {
            Element::Word(w) => w.len() as u32,
            Element::AtomOf(t) => self.target.grade(t) + 1,
            _ => 1,
        }
    }

    fn enumerate(&self, bound: u32) -> Vec<Element> {
        let mut out = Vec::new();
        if bound >= 1 {
            out.push(Element::Zero);
        }
        out.extend(self.words_up_to(bound).into_iter().map(Element::Word));
        if bound >= 1 {
            out.extend(
                self.target
                    .enumerate(bound - 1)
                    .into_iter()
                    .map(|t| Element::AtomOf(Box::new(t))),
            );
        }
        out
    }

    fn display(&self, x: &Element) -> String {
        match x {
            Element::Word(w) => w.iter().map(|&l| l as char).collect(),
            Element::AtomOf(t) => format!("a({})", self.target.display(t)),
            Element::Zero => "0".to_string(),
            other => format!("{other:?}"),
        }
    }

    fn parse(&self, text: &str) -> Result<Element> {
        if text == "0" {
            return Ok(Element::Zero);
        }
        if let Some(inner) = text.strip_prefix("a(").and_then(|t| t.strip_suffix(')')) {
            return self.atom(&self.target.parse(inner)?);
        }
        let word: Vec<u8> = text.bytes().collect();
        self.canonical(&Element::Word(word))
    }

    fn right_divisors(&self, left: &Element, target: &Element, bound: u32) -> Vec<Element> {
        let (Ok(()), Ok(())) = (self.check(left), self.check(target)) else {
            return Vec::new();
        };
        self.enumerate(bound)
            .into_iter()
            .filter(|c| self.product(left, c).map_or(false, |p| p == *target))
            .collect()
    }

    fn divisor_search_exact(&self) -> bool {
        false
    }

    fn is_left_cancellative_hint(&self) -> Option<bool> {
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::check_associativity_bounded;
    use proptest::prelude::*;

    fn barred(rank: usize) -> BarredCommutative {
        BarredCommutative::with_units(rank).unwrap()
    }

    #[test]
    fn barred_products_follow_the_stated_laws() {
        let s = barred(2);
        let u = s.parse("[1,0]").unwrap();
        let v = s.parse("[0,2]").unwrap();
        let ubar = s.parse("~[1,0]").unwrap();
        let vbar = s.parse("~[0,2]").unwrap();
        assert_eq!(s.display(&s.product(&u, &v).unwrap()), "[1,2]");
        assert_eq!(s.display(&s.product(&u, &vbar).unwrap()), "~[1,2]");
        assert_eq!(s.display(&s.product(&ubar, &v).unwrap()), "~[1,2]");
        assert_eq!(s.product(&ubar, &vbar).unwrap(), Element::Zero);
    }

    #[test]
    fn collapsers_send_words_to_bars_and_bars_to_zero() {
        let s = barred(2);
        let a = s.parse("a").unwrap();
        let b = s.parse("b").unwrap();
        let u = s.parse("[2,1]").unwrap();
        let ubar = s.parse("~[2,1]").unwrap();
        for c in [&a, &b] {
            assert_eq!(s.display(&s.product(c, &u).unwrap()), "~[2,1]");
            assert_eq!(s.display(&s.product(&u, c).unwrap()), "~[2,1]");
            assert_eq!(s.product(c, &ubar).unwrap(), Element::Zero);
            assert_eq!(s.product(&ubar, c).unwrap(), Element::Zero);
        }
        assert_eq!(s.product(&a, &b).unwrap(), Element::Zero);
        assert_eq!(s.product(&a, &a).unwrap(), Element::Zero);
    }

    #[test]
    fn units_swap_the_collapsers_and_fix_the_core() {
        let s = barred(2);
        let g = s.parse("g").unwrap();
        let a = s.parse("a").unwrap();
        let u = s.parse("[1,1]").unwrap();
        assert_eq!(s.product(&g, &g).unwrap(), Element::One);
        assert_eq!(s.display(&s.product(&g, &a).unwrap()), "b");
        assert_eq!(s.display(&s.product(&a, &g).unwrap()), "b");
        assert_eq!(s.product(&g, &u).unwrap(), u);
        assert_eq!(s.product(&u, &g).unwrap(), u);
    }

    #[test]
    fn all_tiers_are_associative_on_a_window() {
        for tier in [
            BarredCommutative::base(2).unwrap(),
            BarredCommutative::with_collapsers(2).unwrap(),
            BarredCommutative::with_units(2).unwrap(),
        ] {
            check_associativity_bounded(&tier, 2).unwrap();
        }
    }

    #[test]
    fn barred_closed_form_intersections_match_brute_force() {
        use crate::ideals::{Exactness, RightIdeal};
        use crate::semigroup::bounded_intersection;
        for tier in [
            BarredCommutative::base(2).unwrap(),
            BarredCommutative::with_collapsers(2).unwrap(),
            BarredCommutative::with_units(2).unwrap(),
        ] {
            let h = SemigroupHandle::new(tier.clone());
            let pairs = [
                ("[1,0]", "[0,1]"),
                ("[2,0]", "[1,1]"),
                ("~[1,0]", "~[0,1]"),
                ("[1,0]", "~[0,1]"),
                // The barred word divides the plain one here.
                ("[2,1]", "~[1,1]"),
                ("[1,0]", "~[1,0]"),
            ];
            for (a, b) in pairs {
                let a = h.parse(a).unwrap();
                let b = h.parse(b).unwrap();
                let closed = tier.intersect_principal(&a, &b, 4).unwrap();
                let brute = bounded_intersection(&*h, &a, &b, 4).unwrap();
                let closed_ideal =
                    RightIdeal::new(h.clone(), closed.generators, Exactness::Exact).unwrap();
                let brute_ideal =
                    RightIdeal::new(h.clone(), brute.generators, Exactness::Bounded(4)).unwrap();
                assert!(
                    closed_ideal.same_members_within(&brute_ideal, 4),
                    "closed form disagrees with brute force at ({}, {}) in {}",
                    h.display(&a),
                    h.display(&b),
                    h.describe(),
                );
            }
        }
    }

    #[test]
    fn pointed_products_follow_the_stated_laws() {
        let s = PointedCommutative::with_idempotent(2).unwrap();
        let one = s.identity().unwrap();
        let a = s.parse("a").unwrap();
        let e = s.parse("e").unwrap();
        let u = s.parse("[1,0]").unwrap();
        assert_eq!(s.product(&a, &one).unwrap(), a);
        assert_eq!(s.product(&one, &a).unwrap(), a);
        assert_eq!(s.product(&a, &a).unwrap(), Element::Zero);
        assert_eq!(s.product(&a, &u).unwrap(), Element::Zero);
        assert_eq!(s.product(&u, &a).unwrap(), Element::Zero);
        assert_eq!(s.product(&e, &e).unwrap(), e);
        assert_eq!(s.product(&e, &a).unwrap(), a);
        assert_eq!(s.product(&a, &e).unwrap(), a);
        assert_eq!(s.product(&e, &u).unwrap(), Element::Zero);
        assert_eq!(s.product(&u, &e).unwrap(), Element::Zero);
        assert_eq!(s.display(&s.product(&u, &u).unwrap()), "[2,0]");
    }

    #[test]
    fn pointed_tiers_are_associative_on_a_window() {
        for s in [
            PointedCommutative::base(2).unwrap(),
            PointedCommutative::with_idempotent(2).unwrap(),
        ] {
            check_associativity_bounded(&s, 3).unwrap();
        }
    }

    #[test]
    fn atoms_are_acted_on_through_the_letter_map() {
        let s = AtomAct::new(2).unwrap();
        let a_y = s.parse("a(a)").unwrap();
        let p = s.parse("p").unwrap();
        // a * x_1 in the target is ~x_1.
        assert_eq!(s.display(&s.product(&a_y, &p).unwrap()), "a(~[1,0])");
        let image = s.word_image(&[b'p', b'q']).unwrap();
        assert_eq!(s.target().display(&image), "[1,1]");
    }

    #[test]
    fn mixed_and_atom_products_collapse() {
        let s = AtomAct::new(2).unwrap();
        let w = s.parse("pq").unwrap();
        let at = s.parse("a(b)").unwrap();
        assert_eq!(s.product(&w, &at).unwrap(), Element::Zero);
        assert_eq!(s.product(&at, &at).unwrap(), Element::Zero);
        assert_eq!(s.display(&s.product(&w, &w).unwrap()), "pqpq");
    }

    #[test]
    fn atom_act_is_associative_on_a_window() {
        let s = AtomAct::new(2).unwrap();
        check_associativity_bounded(&s, 2).unwrap();
    }

    proptest! {
        #[test]
        fn barred_multiplication_is_commutative(i in 0usize..40, j in 0usize..40) {
            let s = barred(2);
            let elems = s.enumerate(3);
            let x = &elems[i % elems.len()];
            let y = &elems[j % elems.len()];
            prop_assert_eq!(s.product(x, y).unwrap(), s.product(y, x).unwrap());
        }

        #[test]
        fn atom_action_is_a_right_action(i in 0usize..12, j in 0usize..20, k in 0usize..20) {
            let s = AtomAct::new(2).unwrap();
            let atoms: Vec<Element> = s
                .target()
                .enumerate(2)
                .into_iter()
                .map(|t| s.atom(&t).unwrap())
                .collect();
            let words: Vec<Element> = s
                .words_up_to(2)
                .into_iter()
                .map(Element::Word)
                .collect();
            let a = &atoms[i % atoms.len()];
            let u = &words[j % words.len()];
            let v = &words[k % words.len()];
            let uv = s.product(u, v).unwrap();
            prop_assert_eq!(
                s.product(a, &uv).unwrap(),
                s.product(&s.product(a, u).unwrap(), v).unwrap()
            );
        }
    }
}
