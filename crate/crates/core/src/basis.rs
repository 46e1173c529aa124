//! Basic Whitehead products.
//!
//! A bracket tree `[A, B]` is *basic* when `A` and `B` are basic, `A < B` in
//! the basis order, and, if `B = [C, D]`, also `C <= A`. Weight-1 products
//! are the alphabet generators in their weight-1 order. The basis order is
//! weight-major; the tie-break within a weight (left open in the classical
//! construction) is: height, then left subtree, then right subtree, then
//! leaf order. `TieBreak::Reversed` flips the within-weight order — any such
//! flip yields a different basis with identical counts per multidegree,
//! which the tests exploit.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::alphabet::{Alphabet, Family, Generator};
use crate::error::{Error, Result};

/// Within-weight ordering variant used during enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Standard,
    Reversed,
}

#[derive(Debug)]
pub(crate) enum Tree {
    Leaf(u32),
    Bracket(Arc<Node>, Arc<Node>),
}

#[derive(Debug)]
pub(crate) struct Node {
    pub(crate) tree: Tree,
    pub(crate) weight: u32,
    pub(crate) samelson_degree: u32,
}

impl Node {
    fn leaf(pos: u32, degree: u32) -> Node {
        Node {
            tree: Tree::Leaf(pos),
            weight: 1,
            samelson_degree: degree,
        }
    }

    fn bracket(left: Arc<Node>, right: Arc<Node>) -> Node {
        Node {
            weight: left.weight + right.weight,
            samelson_degree: left.samelson_degree + right.samelson_degree,
            tree: Tree::Bracket(left, right),
        }
    }

    fn multidegree_into(&self, acc: &mut BTreeMap<u32, u32>) {
        match &self.tree {
            Tree::Leaf(p) => *acc.entry(*p).or_insert(0) += 1,
            Tree::Bracket(l, r) => {
                l.multidegree_into(acc);
                r.multidegree_into(acc);
            }
        }
    }
}

fn cmp_nodes(a: &Node, b: &Node, tie: TieBreak) -> Ordering {
    match a.weight.cmp(&b.weight) {
        Ordering::Equal => {
            let same = cmp_same_weight(a, b, tie);
            match tie {
                TieBreak::Standard => same,
                TieBreak::Reversed => same.reverse(),
            }
        }
        other => other,
    }
}

fn cmp_same_weight(a: &Node, b: &Node, tie: TieBreak) -> Ordering {
    match (&a.tree, &b.tree) {
        (Tree::Leaf(p), Tree::Leaf(q)) => p.cmp(q),
        (Tree::Leaf(_), Tree::Bracket(..)) => Ordering::Less,
        (Tree::Bracket(..), Tree::Leaf(_)) => Ordering::Greater,
        (Tree::Bracket(al, ar), Tree::Bracket(bl, br)) => a
            .samelson_degree
            .cmp(&b.samelson_degree)
            .then_with(|| cmp_nodes(al, bl, tie))
            .then_with(|| cmp_nodes(ar, br, tie)),
    }
}

fn node_is_basic(n: &Node, tie: TieBreak) -> bool {
    match &n.tree {
        Tree::Leaf(_) => true,
        Tree::Bracket(a, b) => {
            if !node_is_basic(a, tie) || !node_is_basic(b, tie) {
                return false;
            }
            if cmp_nodes(a, b, tie) != Ordering::Less {
                return false;
            }
            match &b.tree {
                Tree::Leaf(_) => true,
                Tree::Bracket(c, _) => cmp_nodes(c, a, tie) != Ordering::Greater,
            }
        }
    }
}

/// Pure/hybrid classification of a product over an x/y alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Leaf,
    PureX,
    PureY,
    Hybrid,
}

impl Class {
    pub fn as_str(self) -> &'static str {
        match self {
            Class::Leaf => "LEAF",
            Class::PureX => "PURE_X",
            Class::PureY => "PURE_Y",
            Class::Hybrid => "HYBRID",
        }
    }
}

/// An arbitrary bracket tree over one alphabet, prior to any basis check.
#[derive(Debug, Clone)]
pub enum RawTree {
    Leaf(Generator),
    Bracket(Box<RawTree>, Box<RawTree>),
}

impl RawTree {
    pub fn leaf(g: &Generator) -> RawTree {
        RawTree::Leaf(g.clone())
    }

    pub fn bracket(left: RawTree, right: RawTree) -> RawTree {
        RawTree::Bracket(Box::new(left), Box::new(right))
    }

    fn to_node(&self, alphabet: &Alphabet) -> Result<Arc<Node>> {
        match self {
            RawTree::Leaf(g) => {
                if !alphabet.contains(g) {
                    return Err(Error::ForeignGenerator);
                }
                Ok(Arc::new(Node::leaf(g.pos(), g.samelson_degree())))
            }
            RawTree::Bracket(l, r) => {
                let ln = l.to_node(alphabet)?;
                let rn = r.to_node(alphabet)?;
                Ok(Arc::new(Node::bracket(ln, rn)))
            }
        }
    }
}

/// Whether a tree satisfies the basis condition (under the standard order).
pub fn is_basic(alphabet: &Alphabet, tree: &RawTree) -> Result<bool> {
    let node = tree.to_node(alphabet)?;
    Ok(node_is_basic(&node, TieBreak::Standard))
}

/// A validated basic Whitehead product. Cheap to clone.
#[derive(Debug, Clone)]
pub struct BasicProduct {
    alphabet: Alphabet,
    node: Arc<Node>,
}

impl BasicProduct {
    pub fn leaf(alphabet: &Alphabet, g: &Generator) -> Result<BasicProduct> {
        if !alphabet.contains(g) {
            return Err(Error::ForeignGenerator);
        }
        Ok(BasicProduct {
            alphabet: alphabet.clone(),
            node: Arc::new(Node::leaf(g.pos(), g.samelson_degree())),
        })
    }

    /// Forms `[a, b]`, rejecting pairs that violate the basis condition.
    pub fn bracket(a: &BasicProduct, b: &BasicProduct) -> Result<BasicProduct> {
        if !a.alphabet.same_alphabet(&b.alphabet) {
            return Err(Error::ForeignGenerator);
        }
        if cmp_nodes(&a.node, &b.node, TieBreak::Standard) != Ordering::Less {
            return Err(Error::InvalidArgument(
                "bracket is not basic: left factor must precede right factor".into(),
            ));
        }
        if let Tree::Bracket(c, _) = &b.node.tree {
            if cmp_nodes(c, &a.node, TieBreak::Standard) == Ordering::Greater {
                return Err(Error::InvalidArgument(
                    "bracket is not basic: right factor's left child exceeds left factor".into(),
                ));
            }
        }
        Ok(BasicProduct {
            alphabet: a.alphabet.clone(),
            node: Arc::new(Node::bracket(a.node.clone(), b.node.clone())),
        })
    }

    /// Validates an arbitrary tree as a basic product.
    pub fn from_raw(alphabet: &Alphabet, tree: &RawTree) -> Result<BasicProduct> {
        let node = tree.to_node(alphabet)?;
        if !node_is_basic(&node, TieBreak::Standard) {
            return Err(Error::InvalidArgument("tree is not a basic product".into()));
        }
        Ok(BasicProduct {
            alphabet: alphabet.clone(),
            node,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn weight(&self) -> u32 {
        self.node.weight
    }

    pub fn samelson_degree(&self) -> u32 {
        self.node.samelson_degree
    }

    /// The dimension of the sphere attached to this product: Σ l_j(n_j−1)+1.
    pub fn height(&self) -> u32 {
        self.node.samelson_degree + 1
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.node.tree, Tree::Leaf(_))
    }

    pub fn leaf_generator(&self) -> Option<&Generator> {
        match self.node.tree {
            Tree::Leaf(p) => Some(self.alphabet.generator_at(p)),
            Tree::Bracket(..) => None,
        }
    }

    pub fn factors(&self) -> Option<(BasicProduct, BasicProduct)> {
        match &self.node.tree {
            Tree::Leaf(_) => None,
            Tree::Bracket(l, r) => Some((
                BasicProduct {
                    alphabet: self.alphabet.clone(),
                    node: l.clone(),
                },
                BasicProduct {
                    alphabet: self.alphabet.clone(),
                    node: r.clone(),
                },
            )),
        }
    }

    /// Occurrence count l_j of each generator, in alphabet order.
    pub fn multidegree(&self) -> Vec<(&Generator, u32)> {
        let mut by_pos = BTreeMap::new();
        self.node.multidegree_into(&mut by_pos);
        by_pos
            .into_iter()
            .map(|(p, c)| (self.alphabet.generator_at(p), c))
            .collect()
    }

    pub(crate) fn multidegree_by_pos(&self) -> BTreeMap<u32, u32> {
        let mut by_pos = BTreeMap::new();
        self.node.multidegree_into(&mut by_pos);
        by_pos
    }

    pub(crate) fn node(&self) -> &Arc<Node> {
        &self.node
    }

    pub fn classify(&self) -> Result<Class> {
        let md = self.multidegree_by_pos();
        let mut saw_x = false;
        let mut saw_y = false;
        for &pos in md.keys() {
            match self.alphabet.generator_at(pos).family() {
                Family::X => saw_x = true,
                Family::Y => saw_y = true,
                Family::Sphere => return Err(Error::UnsupportedAlphabet),
            }
        }
        Ok(if self.node.weight == 1 {
            Class::Leaf
        } else if saw_x && saw_y {
            Class::Hybrid
        } else if saw_x {
            Class::PureX
        } else {
            Class::PureY
        })
    }

    /// Bracket notation over the generator labels, e.g. `[x1, [x1, y1]]`.
    pub fn render_whitehead(&self, unicode: bool) -> String {
        fn go(alphabet: &Alphabet, n: &Node, unicode: bool, out: &mut String) {
            match &n.tree {
                Tree::Leaf(p) => out.push_str(&alphabet.generator_at(*p).display_label(unicode)),
                Tree::Bracket(l, r) => {
                    out.push('[');
                    go(alphabet, l, unicode, out);
                    out.push_str(", ");
                    go(alphabet, r, unicode, out);
                    out.push(']');
                }
            }
        }
        let mut s = String::new();
        go(&self.alphabet, &self.node, unicode, &mut s);
        s
    }

    /// The corresponding iterated commutator of self-maps, e.g.
    /// `[phi_1, [phi_1, psi_1]_c]_c`.
    pub fn render_commutator(&self, unicode: bool) -> Result<String> {
        fn go(alphabet: &Alphabet, n: &Node, unicode: bool, out: &mut String) -> Result<()> {
            match &n.tree {
                Tree::Leaf(p) => {
                    let g = alphabet.generator_at(*p);
                    let name = match (g.family(), unicode) {
                        (Family::X, false) => format!("phi_{}", g.index()),
                        (Family::Y, false) => format!("psi_{}", g.index()),
                        (Family::X, true) => format!("φ{}", g.index()),
                        (Family::Y, true) => format!("ψ{}", g.index()),
                        (Family::Sphere, _) => return Err(Error::UnsupportedAlphabet),
                    };
                    out.push_str(&name);
                }
                Tree::Bracket(l, r) => {
                    out.push('[');
                    go(alphabet, l, unicode, out)?;
                    out.push_str(", ");
                    go(alphabet, r, unicode, out)?;
                    out.push_str("]_c");
                }
            }
            Ok(())
        }
        let mut s = String::new();
        go(&self.alphabet, &self.node, unicode, &mut s)?;
        Ok(s)
    }

    /// Largest skeleton dimension on which the corresponding iterated
    /// commutator restricts to an inessential map:
    /// pure-x `2aΣs_i`, pure-y `2aΣs_j + l`, hybrid `2aΣs + l − t`.
    pub fn vanishing_skeleton_dim(&self) -> Result<u32> {
        if self.node.weight < 2 {
            return Err(Error::WeightOneInput);
        }
        let a = self
            .alphabet
            .a_parameter()
            .ok_or(Error::UnsupportedAlphabet)?;
        let md = self.multidegree_by_pos();
        let mut index_sum = 0u32;
        let mut x_count = 0u32;
        let mut y_count = 0u32;
        for (&pos, &mult) in &md {
            let g = self.alphabet.generator_at(pos);
            index_sum += g.index() * mult;
            match g.family() {
                Family::X => x_count += mult,
                Family::Y => y_count += mult,
                Family::Sphere => return Err(Error::UnsupportedAlphabet),
            }
        }
        let l = x_count + y_count;
        Ok(if y_count == 0 {
            2 * a * index_sum
        } else if x_count == 0 {
            2 * a * index_sum + l
        } else {
            2 * a * index_sum + l - x_count
        })
    }
}

impl PartialEq for BasicProduct {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet.same_alphabet(&other.alphabet)
            && cmp_nodes(&self.node, &other.node, TieBreak::Standard) == Ordering::Equal
    }
}

impl Eq for BasicProduct {}

impl PartialOrd for BasicProduct {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasicProduct {
    /// The standard basis order (within one alphabet; alphabets themselves
    /// are ordered by identity so the order stays total).
    fn cmp(&self, other: &Self) -> Ordering {
        self.alphabet
            .id()
            .cmp(&other.alphabet.id())
            .then_with(|| cmp_nodes(&self.node, &other.node, TieBreak::Standard))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    pub max_weight: Option<u32>,
    pub tie_break: TieBreak,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            max_weight: None,
            tie_break: TieBreak::Standard,
        }
    }
}

/// All basic products of height <= `max_height`, in the basis order.
pub fn enumerate_basic_products(alphabet: &Alphabet, max_height: u32) -> Result<Vec<BasicProduct>> {
    enumerate_with_options(alphabet, max_height, EnumerationOptions::default())
}

/// Enumeration with an explicit weight cap and tie-break choice.
///
/// Weight-by-weight dynamic programming: weight-n candidates are pairs
/// (A, B) of lower weights filtered by the basis condition; anything whose
/// height already exceeds the bound is pruned (brackets only raise degree,
/// so pruning is lossless).
pub fn enumerate_with_options(
    alphabet: &Alphabet,
    max_height: u32,
    opts: EnumerationOptions,
) -> Result<Vec<BasicProduct>> {
    if alphabet.is_truncated() && max_height > alphabet.truncation_degree() + 1 {
        return Err(Error::CutoffExceeded {
            requested: max_height,
            bound: alphabet.truncation_degree() + 1,
        });
    }
    let tie = opts.tie_break;
    let max_degree = max_height.saturating_sub(1);
    let mut leaves: Vec<Arc<Node>> = alphabet
        .generators()
        .iter()
        .filter(|g| g.samelson_degree() <= max_degree)
        .map(|g| Arc::new(Node::leaf(g.pos(), g.samelson_degree())))
        .collect();
    leaves.sort_by(|a, b| cmp_nodes(a, b, tie));

    let min_leaf_degree = match leaves.iter().map(|n| n.samelson_degree).min() {
        Some(d) => d.max(1),
        None => return Ok(Vec::new()),
    };
    let weight_bound = (max_degree / min_leaf_degree).min(opts.max_weight.unwrap_or(u32::MAX));

    let mut by_weight: Vec<Vec<Arc<Node>>> = vec![leaves];
    for w in 2..=weight_bound {
        let mut layer: Vec<Arc<Node>> = Vec::new();
        for alpha in 1..=w / 2 {
            let beta = w - alpha;
            let left_layer = &by_weight[(alpha - 1) as usize];
            let right_layer = &by_weight[(beta - 1) as usize];
            for (i, a) in left_layer.iter().enumerate() {
                for (j, b) in right_layer.iter().enumerate() {
                    if alpha == beta && i >= j {
                        continue;
                    }
                    if a.samelson_degree + b.samelson_degree > max_degree {
                        continue;
                    }
                    if let Tree::Bracket(c, _) = &b.tree {
                        if cmp_nodes(c, a, tie) == Ordering::Greater {
                            continue;
                        }
                    }
                    layer.push(Arc::new(Node::bracket(a.clone(), b.clone())));
                }
            }
        }
        layer.sort_by(|a, b| cmp_nodes(a, b, tie));
        by_weight.push(layer);
    }

    Ok(by_weight
        .into_iter()
        .flatten()
        .map(|node| BasicProduct {
            alphabet: alphabet.clone(),
            node,
        })
        .collect())
}

/// Serialization record for one basic product (JSON lines / CSV row).
#[derive(Debug, Clone, Serialize)]
pub struct BasisRecord {
    pub whitehead: String,
    pub commutator: Option<String>,
    pub weight: u32,
    pub height: u32,
    pub class: String,
    pub multidegree: BTreeMap<String, u32>,
}

impl BasisRecord {
    pub fn from_product(bp: &BasicProduct, unicode: bool) -> BasisRecord {
        let class = match bp.classify() {
            Ok(c) => c.as_str().to_string(),
            Err(_) => "SPHERE".to_string(),
        };
        BasisRecord {
            whitehead: bp.render_whitehead(unicode),
            commutator: bp.render_commutator(unicode).ok(),
            weight: bp.weight(),
            height: bp.height(),
            class,
            multidegree: bp
                .multidegree()
                .into_iter()
                .map(|(g, c)| (g.label().to_string(), c))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn em(a: u32, cutoff: u32) -> Alphabet {
        Alphabet::em_wedge(a, cutoff).unwrap()
    }

    fn gen(alphabet: &Alphabet, label: &str) -> Generator {
        alphabet.generator_by_label(label).unwrap().clone()
    }

    fn product(alphabet: &Alphabet, expr: &str) -> BasicProduct {
        BasicProduct::from_raw(alphabet, &parse(alphabet, expr)).unwrap()
    }

    // tiny bracket-expression parser for test fixtures: "[x1, [x1, y1]]"
    fn parse(alphabet: &Alphabet, s: &str) -> RawTree {
        fn inner(alphabet: &Alphabet, s: &str) -> (RawTree, usize) {
            let b = s.as_bytes();
            if b[0] == b'[' {
                let (left, used) = inner(alphabet, &s[1..]);
                let mut i = 1 + used;
                while b[i] == b',' || b[i] == b' ' {
                    i += 1;
                }
                let (right, used2) = inner(alphabet, &s[i..]);
                i += used2;
                assert_eq!(b[i], b']');
                (RawTree::bracket(left, right), i + 1)
            } else {
                let end = s.find([',', ']', ' ']).unwrap_or(s.len());
                let g = alphabet
                    .generator_by_label(&s[..end])
                    .unwrap_or_else(|| panic!("no generator {}", &s[..end]));
                (RawTree::leaf(g), end)
            }
        }
        inner(alphabet, s).0
    }

    fn renders(products: &[BasicProduct]) -> Vec<String> {
        products.iter().map(|p| p.render_whitehead(false)).collect()
    }

    #[test]
    fn single_sphere_has_only_its_leaf() {
        let a = Alphabet::sphere_wedge(&[3]).unwrap();
        let basis = enumerate_basic_products(&a, 10).unwrap();
        assert_eq!(renders(&basis), ["r1"]);
    }

    #[test]
    fn two_spheres_weight_three() {
        let a = Alphabet::sphere_wedge(&[3, 3]).unwrap();
        let basis = enumerate_basic_products(&a, 13).unwrap();
        let w3: Vec<_> = basis.iter().filter(|p| p.weight() == 3).collect();
        assert_eq!(w3.len(), 2);
        assert_eq!(w3[0].render_whitehead(false), "[r1, [r1, r2]]");
        assert_eq!(w3[1].render_whitehead(false), "[r2, [r1, r2]]");
    }

    #[test]
    fn em_a1_height8_decomposables() {
        let a = em(1, 7);
        let basis = enumerate_basic_products(&a, 8).unwrap();
        let h8: Vec<String> = basis
            .iter()
            .filter(|p| p.height() == 8 && p.weight() >= 2)
            .map(|p| p.render_whitehead(false))
            .collect();
        assert_eq!(h8, ["[x1, y2]", "[y1, x2]", "[x1, [x1, y1]]"]);
    }

    #[test]
    fn heights_match_the_formula() {
        let a = em(1, 8);
        assert_eq!(product(&a, "[x1, y1]").height(), 6);
        assert_eq!(BasicProduct::leaf(&a, &gen(&a, "x1")).unwrap().height(), 3);
        assert_eq!(product(&a, "[y1, [x1, y1]]").height(), 9);
    }

    #[test]
    fn hall_condition_examples() {
        let a = em(1, 8);
        assert!(is_basic(&a, &parse(&a, "[x1, x2]")).unwrap());
        assert!(!is_basic(&a, &parse(&a, "[x2, x1]")).unwrap());
        assert!(is_basic(&a, &parse(&a, "[[x1, y1], [x1, x2]]")).unwrap());
        // self-brackets are never basic
        assert!(!is_basic(&a, &parse(&a, "[x1, x1]")).unwrap());
        // C <= A fails: [y1, y2] has left child y1 > x1
        assert!(!is_basic(&a, &parse(&a, "[x1, [y1, y2]]")).unwrap());
    }

    #[test]
    fn is_basic_rejects_foreign_leaves() {
        let a = em(1, 8);
        let b = em(1, 8);
        let foreign = RawTree::leaf(&gen(&b, "x1"));
        assert_eq!(is_basic(&a, &foreign), Err(Error::ForeignGenerator));
    }

    #[test]
    fn classification() {
        let a = em(1, 7);
        assert_eq!(product(&a, "[x1, x2]").classify().unwrap(), Class::PureX);
        assert_eq!(product(&a, "[x1, y1]").classify().unwrap(), Class::Hybrid);
        assert_eq!(product(&a, "[y1, y2]").classify().unwrap(), Class::PureY);
        assert_eq!(
            BasicProduct::leaf(&a, &gen(&a, "y3"))
                .unwrap()
                .classify()
                .unwrap(),
            Class::Leaf
        );
        let s = Alphabet::sphere_wedge(&[3, 3]).unwrap();
        let leaf = BasicProduct::leaf(&s, &s.generators()[0].clone()).unwrap();
        assert_eq!(leaf.classify(), Err(Error::UnsupportedAlphabet));
    }

    #[test]
    fn rendering() {
        let a = em(1, 6);
        let p = product(&a, "[x1, y1]");
        assert_eq!(p.render_whitehead(false), "[x1, y1]");
        assert_eq!(p.render_commutator(false).unwrap(), "[phi_1, psi_1]_c");
        assert_eq!(p.render_whitehead(true), "[χ1, η1]");
        let leaf = BasicProduct::leaf(&a, &gen(&a, "x1")).unwrap();
        assert_eq!(leaf.render_whitehead(false), "x1");
        assert_eq!(leaf.render_commutator(false).unwrap(), "phi_1");
        let q = product(&a, "[x1, [x1, y1]]");
        assert_eq!(q.render_whitehead(false), "[x1, [x1, y1]]");
        assert_eq!(
            q.render_commutator(false).unwrap(),
            "[phi_1, [phi_1, psi_1]_c]_c"
        );
        let s = Alphabet::sphere_wedge(&[3, 3]).unwrap();
        let sp = enumerate_basic_products(&s, 5).unwrap();
        assert!(sp[2].render_commutator(false).is_err());
    }

    #[test]
    fn vanishing_skeleton_dimensions() {
        let a = em(1, 8);
        assert_eq!(product(&a, "[x1, x2]").vanishing_skeleton_dim().unwrap(), 6);
        assert_eq!(product(&a, "[y1, y2]").vanishing_skeleton_dim().unwrap(), 8);
        assert_eq!(product(&a, "[x1, y1]").vanishing_skeleton_dim().unwrap(), 5);
        let leaf = BasicProduct::leaf(&a, &gen(&a, "x1")).unwrap();
        assert_eq!(leaf.vanishing_skeleton_dim(), Err(Error::WeightOneInput));
    }

    #[test]
    fn vanishing_skeleton_equals_whitehead_degree_minus_one() {
        for a_param in 1..=3u32 {
            let a = em(a_param, 10 * a_param);
            for bp in enumerate_basic_products(&a, 10 * a_param + 1).unwrap() {
                if bp.weight() >= 2 {
                    assert_eq!(bp.vanishing_skeleton_dim().unwrap(), bp.height() - 1);
                }
            }
        }
    }

    #[test]
    fn cutoff_exceeded_for_truncated_alphabets() {
        let a = em(1, 8);
        assert_eq!(
            enumerate_basic_products(&a, 10).unwrap_err(),
            Error::CutoffExceeded {
                requested: 10,
                bound: 9
            }
        );
        // complete sphere wedges have no such bound
        let s = Alphabet::sphere_wedge(&[3]).unwrap();
        assert!(enumerate_basic_products(&s, 50).is_ok());
    }

    #[test]
    fn enumeration_is_sorted_and_weight_major() {
        let a = em(1, 9);
        let basis = enumerate_basic_products(&a, 10).unwrap();
        for pair in basis.windows(2) {
            assert!(pair[0] < pair[1]);
            assert!(pair[0].weight() <= pair[1].weight());
        }
        for bp in &basis {
            assert_eq!(bp.height(), bp.samelson_degree() + 1);
            let total: u32 = bp.multidegree().iter().map(|(_, c)| c).sum();
            assert_eq!(total, bp.weight());
        }
    }

    // Exhaustiveness: every tree passing is_basic appears exactly once.
    fn all_trees(alphabet: &Alphabet, max_degree: u32) -> Vec<RawTree> {
        let mut by_weight: Vec<Vec<RawTree>> = vec![alphabet
            .generators()
            .iter()
            .filter(|g| g.samelson_degree() <= max_degree)
            .map(RawTree::leaf)
            .collect()];
        fn degree(t: &RawTree) -> u32 {
            match t {
                RawTree::Leaf(g) => g.samelson_degree(),
                RawTree::Bracket(l, r) => degree(l) + degree(r),
            }
        }
        let max_weight = max_degree / 2;
        for w in 2..=max_weight.max(2) {
            let mut layer = Vec::new();
            for alpha in 1..w {
                let beta = w - alpha;
                for l in &by_weight[(alpha - 1) as usize] {
                    for r in &by_weight[(beta - 1) as usize] {
                        if degree(l) + degree(r) <= max_degree {
                            layer.push(RawTree::bracket(l.clone(), r.clone()));
                        }
                    }
                }
            }
            by_weight.push(layer);
        }
        by_weight.into_iter().flatten().collect()
    }

    #[test]
    fn enumeration_is_exhaustive() {
        for alphabet in [em(1, 7), Alphabet::sphere_wedge(&[3, 3]).unwrap()] {
            let max_height = 8;
            let enumerated = enumerate_basic_products(&alphabet, max_height).unwrap();
            let mut expected: Vec<String> = all_trees(&alphabet, max_height - 1)
                .iter()
                .filter(|t| is_basic(&alphabet, t).unwrap())
                .map(|t| {
                    BasicProduct::from_raw(&alphabet, t)
                        .unwrap()
                        .render_whitehead(false)
                })
                .collect();
            expected.sort();
            expected.dedup();
            let mut got = renders(&enumerated);
            got.sort();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn counts_are_tie_break_independent() {
        for alphabet in [
            em(1, 9),
            em(2, 13),
            Alphabet::sphere_wedge(&[3, 3, 4]).unwrap(),
        ] {
            let max_height = alphabet.truncation_degree() + 1;
            let standard = enumerate_basic_products(&alphabet, max_height).unwrap();
            let reversed = enumerate_with_options(
                &alphabet,
                max_height,
                EnumerationOptions {
                    max_weight: None,
                    tie_break: TieBreak::Reversed,
                },
            )
            .unwrap();
            assert_eq!(standard.len(), reversed.len());
            let key = |ps: &[BasicProduct]| {
                let mut per_height: BTreeMap<u32, usize> = BTreeMap::new();
                let mut per_multidegree: BTreeMap<Vec<(u32, u32)>, usize> = BTreeMap::new();
                for p in ps {
                    *per_height.entry(p.height()).or_insert(0) += 1;
                    let md: Vec<(u32, u32)> = p.multidegree_by_pos().into_iter().collect();
                    *per_multidegree.entry(md).or_insert(0) += 1;
                }
                (per_height, per_multidegree)
            };
            assert_eq!(key(&standard), key(&reversed));
        }
    }

    #[test]
    fn max_weight_option_caps_enumeration() {
        let a = em(1, 9);
        let capped = enumerate_with_options(
            &a,
            10,
            EnumerationOptions {
                max_weight: Some(2),
                tie_break: TieBreak::Standard,
            },
        )
        .unwrap();
        assert!(capped.iter().all(|p| p.weight() <= 2));
    }

    #[test]
    fn bracket_constructor_enforces_the_condition() {
        let a = em(1, 6);
        let x1 = BasicProduct::leaf(&a, &gen(&a, "x1")).unwrap();
        let y1 = BasicProduct::leaf(&a, &gen(&a, "y1")).unwrap();
        let ok = BasicProduct::bracket(&x1, &y1).unwrap();
        assert_eq!(ok.render_whitehead(false), "[x1, y1]");
        assert!(BasicProduct::bracket(&y1, &x1).is_err());
        assert!(BasicProduct::bracket(&x1, &x1).is_err());
        // C <= A: [x1, [x1, y1]] ok, [y1-left child] blocks x1
        let inner = BasicProduct::bracket(&x1, &y1).unwrap();
        assert!(BasicProduct::bracket(&x1, &inner).is_ok());
        let inner2 = BasicProduct::bracket(&y1, &BasicProduct::bracket(&x1, &y1).unwrap()).unwrap();
        assert!(BasicProduct::bracket(&x1, &inner2).is_err());
    }

    #[test]
    fn basis_record_serialization() {
        let a = em(1, 6);
        let rec = BasisRecord::from_product(&product(&a, "[x1, y1]"), false);
        let v = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["whitehead"], "[x1, y1]");
        assert_eq!(v["commutator"], "[phi_1, psi_1]_c");
        assert_eq!(v["weight"], 2);
        assert_eq!(v["height"], 6);
        assert_eq!(v["class"], "HYBRID");
        assert_eq!(v["multidegree"]["x1"], 1);
        let s = Alphabet::sphere_wedge(&[3, 3]).unwrap();
        let basis = enumerate_basic_products(&s, 5).unwrap();
        let rec = BasisRecord::from_product(&basis[2], false);
        assert_eq!(rec.class, "SPHERE");
        assert_eq!(rec.commutator, None);
    }
}
