//! Exact arithmetic in the tensor algebra T(H̃_*(X; Q)).
//!
//! Words are sequences of generator letters (u_i for x_i, v_j for y_j);
//! coefficients are exact rationals. The graded commutator, the Hopf
//! coproduct, and the primitivity test give the verification oracle for the
//! basis enumeration: Hurewicz sends an iterated Samelson product to the
//! iterated graded commutator of its letters, and Lie elements are exactly
//! the primitives in characteristic zero.
//!
//! Sign convention, used identically everywhere: moving a past b costs
//! (−1)^{|a||b|} in samelson degrees. So [p,q] = pq − (−1)^{|p||q|}qp, and
//! in T(V)⊗T(V) the product is (a⊗b)(c⊗d) = (−1)^{|b||c|} ac⊗bd.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

use crate::alphabet::{Alphabet, Generator};
use crate::basis::BasicProduct;
use crate::error::{Error, Result};
use crate::linalg;

pub type Coeff = BigRational;

/// A word in the tensor algebra: a sequence of letters, stored as positions
/// into the alphabet. The empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_generators(gens: &[&Generator]) -> Result<Word> {
        let mut it = gens.iter();
        if let Some(first) = it.next() {
            for g in it.clone() {
                if g.alphabet_id() != first.alphabet_id() {
                    return Err(Error::ForeignGenerator);
                }
            }
        }
        Ok(Word(gens.iter().map(|g| g.pos()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    fn push(&self, letter: u32) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    fn degree(&self, alphabet: &Alphabet) -> u32 {
        self.0
            .iter()
            .map(|&p| alphabet.generator_at(p).samelson_degree())
            .sum()
    }

    fn render(&self, alphabet: &Alphabet) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&p| alphabet.generator_at(p).letter_label())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// All words of a given samelson degree, in column (lexicographic) order.
pub fn words_of_degree(alphabet: &Alphabet, degree: u32) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn go(alphabet: &Alphabet, remaining: u32, stack: &mut Vec<u32>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word(stack.clone()));
            return;
        }
        for g in alphabet.generators() {
            if g.samelson_degree() <= remaining {
                stack.push(g.pos());
                go(alphabet, remaining - g.samelson_degree(), stack, out);
                stack.pop();
            }
        }
    }
    go(alphabet, degree, &mut stack, &mut out);
    out.sort();
    out
}

fn fmt_coeff(c: &Coeff) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// A noncommutative polynomial with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCPoly {
    alphabet: Alphabet,
    terms: BTreeMap<Word, Coeff>,
}

impl NCPoly {
    pub fn zero(alphabet: &Alphabet) -> NCPoly {
        NCPoly {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Alphabet) -> NCPoly {
        let mut p = NCPoly::zero(alphabet);
        p.terms.insert(Word::empty(), Coeff::one());
        p
    }

    pub fn letter(alphabet: &Alphabet, g: &Generator) -> Result<NCPoly> {
        if !alphabet.contains(g) {
            return Err(Error::ForeignGenerator);
        }
        let mut p = NCPoly::zero(alphabet);
        p.terms.insert(Word(vec![g.pos()]), Coeff::one());
        Ok(p)
    }

    pub fn from_terms<I>(alphabet: &Alphabet, terms: I) -> NCPoly
    where
        I: IntoIterator<Item = (Word, Coeff)>,
    {
        let mut p = NCPoly::zero(alphabet);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    fn add_term(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        assert!(self.alphabet.same_alphabet(&other.alphabet));
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        assert!(self.alphabet.same_alphabet(&other.alphabet));
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Coeff) -> NCPoly {
        if k.is_zero() {
            return NCPoly::zero(&self.alphabet);
        }
        NCPoly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// The common samelson degree of all terms. `None` for the zero
    /// polynomial, an error when terms mix degrees.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut degree = None;
        for w in self.terms.keys() {
            let d = w.degree(&self.alphabet);
            match degree {
                None => degree = Some(d),
                Some(existing) if existing != d => return Err(Error::InhomogeneousInput),
                _ => {}
            }
        }
        Ok(degree)
    }

    /// Concatenation product, extended bilinearly.
    pub fn multiply(&self, other: &NCPoly) -> Result<NCPoly> {
        if !self.alphabet.same_alphabet(&other.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        let mut out = NCPoly::zero(&self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// `pq − (−1)^{|p||q|} qp` for homogeneous p, q.
    pub fn graded_commutator(&self, other: &NCPoly) -> Result<NCPoly> {
        if !self.alphabet.same_alphabet(&other.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        let (dp, dq) = (self.homogeneous_degree()?, other.homogeneous_degree()?);
        let (Some(dp), Some(dq)) = (dp, dq) else {
            return Ok(NCPoly::zero(&self.alphabet));
        };
        let pq = self.multiply(other)?;
        let qp = other.multiply(self)?;
        Ok(if dp % 2 == 1 && dq % 2 == 1 {
            pq.add(&qp)
        } else {
            pq.sub(&qp)
        })
    }

    /// Hopf coproduct: letters are primitive, Δ is an algebra morphism into
    /// the sign-twisted tensor square.
    pub fn coproduct(&self) -> TwoSidedTensor {
        let mut out = TwoSidedTensor::zero(&self.alphabet);
        for (word, coeff) in &self.terms {
            // build Δ(l_1)···Δ(l_n) left to right
            let mut acc: BTreeMap<(Word, Word), Coeff> = BTreeMap::new();
            acc.insert((Word::empty(), Word::empty()), Coeff::one());
            for &letter in &word.0 {
                let ldeg = self.alphabet.generator_at(letter).samelson_degree();
                let mut next: BTreeMap<(Word, Word), Coeff> = BTreeMap::new();
                for ((u, v), c) in &acc {
                    // (u⊗v)(l⊗1) = (−1)^{|v||l|} ul⊗v
                    let sign_flips = v.degree(&self.alphabet) * ldeg % 2 == 1;
                    let left = (u.push(letter), v.clone());
                    let lc = if sign_flips { -c.clone() } else { c.clone() };
                    merge(&mut next, left, lc);
                    // (u⊗v)(1⊗l) = u⊗vl
                    merge(&mut next, (u.clone(), v.push(letter)), c.clone());
                }
                acc = next;
            }
            for (pair, c) in acc {
                out.add_term(pair, &c * coeff);
            }
        }
        out
    }

    /// Δ(p) = p⊗1 + 1⊗p, exactly.
    pub fn is_primitive(&self) -> bool {
        let mut delta = self.coproduct();
        for (w, c) in &self.terms {
            delta.add_term((w.clone(), Word::empty()), -c.clone());
            delta.add_term((Word::empty(), w.clone()), -c.clone());
        }
        delta.is_zero()
    }

    /// Canonical text form `c1*l1.l2 + c2*…` (words in column order, the
    /// empty word rendered as `1`).
    pub fn canonical_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("{}*{}", fmt_coeff(c), w.render(&self.alphabet)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

fn merge(map: &mut BTreeMap<(Word, Word), Coeff>, key: (Word, Word), c: Coeff) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get() + &c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// An element of T(V) ⊗ T(V).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSidedTensor {
    alphabet: Alphabet,
    terms: BTreeMap<(Word, Word), Coeff>,
}

impl TwoSidedTensor {
    pub fn zero(alphabet: &Alphabet) -> TwoSidedTensor {
        TwoSidedTensor {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(alphabet: &Alphabet, terms: I) -> TwoSidedTensor
    where
        I: IntoIterator<Item = ((Word, Word), Coeff)>,
    {
        let mut t = TwoSidedTensor::zero(alphabet);
        for (k, c) in terms {
            t.add_term(k, c);
        }
        t
    }

    fn add_term(&mut self, key: (Word, Word), c: Coeff) {
        merge(&mut self.terms, key, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Coeff)> {
        self.terms.iter()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
}

/// Hurewicz image of a basic product: leaves become letters, brackets become
/// graded commutators. The result is homogeneous of the product's samelson
/// degree.
pub fn expand(bp: &BasicProduct) -> NCPoly {
    fn go(alphabet: &Alphabet, node: &crate::basis::Node) -> NCPoly {
        match &node.tree {
            crate::basis::Tree::Leaf(p) => {
                NCPoly::letter(alphabet, alphabet.generator_at(*p)).expect("leaf in own alphabet")
            }
            crate::basis::Tree::Bracket(l, r) => {
                let a = go(alphabet, l);
                let b = go(alphabet, r);
                a.graded_commutator(&b).expect("expansions are homogeneous")
            }
        }
    }
    go(bp.alphabet(), bp.node())
}

/// The commutator square [e, e] of a product's expansion. Nonzero exactly
/// when the samelson degree is odd — the tensor-algebra shadow of the
/// Whitehead square on an even-dimensional sphere.
pub fn graded_square(bp: &BasicProduct) -> NCPoly {
    let e = expand(bp);
    e.graded_commutator(&e).expect("expansion is homogeneous")
}

/// Rank over Q of the span of homogeneous polynomials of one common degree.
/// Rows are denominator-cleared and reduced by fraction-free elimination.
pub fn span_rank(polys: &[NCPoly]) -> Result<u64> {
    let mut degree: Option<u32> = None;
    for p in polys {
        if let Some(d) = p.homogeneous_degree()? {
            match degree {
                None => degree = Some(d),
                Some(existing) if existing != d => return Err(Error::MixedDegreeInput),
                _ => {}
            }
        }
    }
    if let Some((first, rest)) = polys.split_first() {
        if rest
            .iter()
            .any(|p| !p.alphabet.same_alphabet(&first.alphabet))
        {
            return Err(Error::AlphabetMismatch);
        }
    }
    let columns: BTreeSet<&Word> = polys.iter().flat_map(|p| p.terms.keys()).collect();
    if columns.is_empty() {
        return Ok(0);
    }
    let index: BTreeMap<&Word, usize> = columns.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let matrix: Vec<Vec<BigInt>> = polys
        .iter()
        .map(|p| {
            let mut lcm = BigInt::one();
            for c in p.terms.values() {
                lcm = num::integer::lcm(lcm, c.denom().abs());
            }
            let mut row = vec![BigInt::zero(); index.len()];
            for (w, c) in &p.terms {
                row[index[w]] = c.numer() * (&lcm / c.denom());
            }
            row
        })
        .collect();
    Ok(linalg::rank(matrix) as u64)
}
