//! The element value shared by every backend.
//!
//! A single enum covers all backends so that congruences, certificates and
//! witness reports can move elements around without generic plumbing. Each
//! backend accepts only the variants that belong to it; equality of canonical
//! forms is element equality.

/// One block of a free-product element: which factor it comes from and the
/// factor element it carries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Block {
    pub factor: usize,
    pub inner: Element,
}

/// An element of some semigroup backend.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Element {
    /// Index into a finite multiplication table.
    Table(usize),
    /// Word over an indexed alphabet; the empty word is a free-monoid identity.
    Word(Vec<u8>),
    /// Exponent vector of a free commutative backend; all zeros is the identity.
    ExpVec(Vec<u32>),
    /// Reduced block sequence of a free-product element; empty is the identity
    /// of the monoid variant.
    Blocks(Vec<Block>),
    /// Componentwise pair in a direct product.
    Pair(Box<Element>, Box<Element>),
    /// Identity adjoined by `adjoin_identity`.
    One,
    /// Zero adjoined by `adjoin_zero` or introduced by a Rees quotient.
    Zero,
    /// Named atom of a symbolic backend.
    Sym(&'static str),
    /// Barred copy of an exponent vector (symbolic backends).
    Bar(Vec<u32>),
    /// Ideal atom indexed by another element (symbolic backends).
    AtomOf(Box<Element>),
    /// Member of a family indexed by the natural numbers.
    Nat(u64),
}

impl Element {
    pub fn pair(left: Element, right: Element) -> Element {
        Element::Pair(Box::new(left), Box::new(right))
    }

    pub fn atom_of(inner: Element) -> Element {
        Element::AtomOf(Box::new(inner))
    }

    pub fn block(factor: usize, inner: Element) -> Block {
        Block { factor, inner }
    }

    /// The two components of a pair element, if it is one.
    pub fn as_pair(&self) -> Option<(&Element, &Element)> {
        match self {
            Element::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_blocks(&self) -> Option<&[Block]> {
        match self {
            Element::Blocks(blocks) => Some(blocks),
            _ => None,
        }
    }
}
