//! Tree-like Jacobi diagrams with legs colored by `a_i`, `b_i`, and the
//! isomorphism `η` onto symplectic derivations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::johnson::{xi, DerivationElement};
use crate::lie::{lyndon_basis, standard_factorization, Alphabet, LieElement, Word};
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    A(usize),
    B(usize),
}

impl Color {
    pub fn is_a(self) -> bool {
        matches!(self, Color::A(_))
    }

    pub fn index(self) -> usize {
        match self {
            Color::A(i) | Color::B(i) => i,
        }
    }

    pub fn parse(s: &str) -> Result<Color> {
        let bad = || Error::Malformed(format!("bad leg color `{s}`"));
        let i: usize = s.get(1..).and_then(|t| t.parse().ok()).ok_or_else(bad)?;
        match s.chars().next() {
            Some('a') => Ok(Color::A(i)),
            Some('b') => Ok(Color::B(i)),
            _ => Err(bad()),
        }
    }

    /// The letter of `Lie(B;A)` with this name.
    fn letter(self, al: &Alphabet) -> u8 {
        match self {
            Color::A(i) => al.a(i),
            Color::B(i) => al.b_letter(i),
        }
        .expect("color in range")
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::A(i) => write!(f, "a{i}"),
            Color::B(i) => write!(f, "b{i}"),
        }
    }
}

/// Planar binary tree over leg ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(usize),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(l: Tree, r: Tree) -> Tree {
        Tree::Node(Box::new(l), Box::new(r))
    }

    fn leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(l) => out.push(*l),
            Tree::Node(x, y) => {
                x.leaves(out);
                y.leaves(out);
            }
        }
    }
}

/// A tree diagram given by a rooted presentation: the root leg is attached
/// to the top of `tree`, and each internal vertex is oriented as
/// (towards root, left, right). With two legs it is a strut.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeDiagram {
    genus: usize,
    colors: Vec<Color>,
    root: usize,
    tree: Tree,
}

/// Unitrivalent graph of a diagram: legs first, then internal vertices in
/// their cyclic order.
struct Graph {
    legs: usize,
    adj: Vec<Vec<usize>>,
}

impl TreeDiagram {
    pub fn new(genus: usize, colors: Vec<Color>, root: usize, tree: Tree) -> Result<Self> {
        if colors.len() < 2 {
            return Err(Error::Malformed("a tree diagram needs at least two legs".into()));
        }
        if colors.iter().any(|c| c.index() == 0 || c.index() > genus) {
            return Err(Error::Malformed(format!("leg color out of range for genus {genus}")));
        }
        let mut leaves = Vec::new();
        tree.leaves(&mut leaves);
        leaves.push(root);
        leaves.sort_unstable();
        if leaves != (0..colors.len()).collect::<Vec<_>>() {
            return Err(Error::Malformed("every leg must appear exactly once".into()));
        }
        Ok(TreeDiagram { genus, colors, root, tree })
    }

    pub fn strut(genus: usize, x: Color, y: Color) -> Result<Self> {
        Self::new(genus, vec![x, y], 0, Tree::Leaf(1))
    }

    /// Root leg colored `root`, with the standard bracketing of the Lyndon
    /// word `w` of `Lie(B;A)` hanging below it.
    pub fn from_lyndon(genus: usize, root: Color, w: &[u8]) -> Result<Self> {
        let al = Alphabet::ba(genus);
        let mut colors = vec![root];
        fn build(w: &[u8], al: &Alphabet, colors: &mut Vec<Color>) -> Result<Tree> {
            if w.len() == 1 {
                colors.push(Color::parse(al.symbol(w[0]))?);
                return Ok(Tree::Leaf(colors.len() - 1));
            }
            let (u, v) = standard_factorization(w);
            let l = build(u, al, colors)?;
            let r = build(v, al, colors)?;
            Ok(Tree::node(l, r))
        }
        if w.is_empty() {
            return Err(Error::Malformed("empty word".into()));
        }
        let tree = build(w, &al, &mut colors)?;
        Self::new(genus, colors, 0, tree)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn is_strut(&self) -> bool {
        self.colors.len() == 2
    }

    /// `2·#A + #B - 3`.
    pub fn a_deg(&self) -> i64 {
        let a = self.colors.iter().filter(|c| c.is_a()).count() as i64;
        2 * a + (self.colors.len() as i64 - a) - 3
    }

    /// The same diagram with the children of the `k`-th internal vertex
    /// (preorder) swapped.
    pub fn swap_at(&self, k: usize) -> TreeDiagram {
        fn go(t: &Tree, k: &mut usize) -> Tree {
            match t {
                Tree::Leaf(l) => Tree::Leaf(*l),
                Tree::Node(x, y) => {
                    let hit = *k == 0;
                    *k = k.wrapping_sub(1);
                    let (x, y) = (go(x, k), go(y, k));
                    if hit {
                        Tree::node(y, x)
                    } else {
                        Tree::node(x, y)
                    }
                }
            }
        }
        let mut k = k;
        TreeDiagram { tree: go(&self.tree, &mut k), ..self.clone() }
    }

    fn graph(&self) -> Graph {
        let legs = self.colors.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); legs];
        // returns the graph vertex at the top of `t`
        fn add(t: &Tree, parent: usize, adj: &mut Vec<Vec<usize>>) -> usize {
            match t {
                Tree::Leaf(l) => {
                    adj[*l].push(parent);
                    *l
                }
                Tree::Node(x, y) => {
                    let v = adj.len();
                    adj.push(vec![parent]);
                    let l = add(x, v, adj);
                    let r = add(y, v, adj);
                    adj[v].push(l);
                    adj[v].push(r);
                    v
                }
            }
        }
        let top = add(&self.tree, self.root, &mut adj);
        adj[self.root].push(top);
        Graph { legs, adj }
    }

    /// Lie word read off after rooting at leg `v`.
    fn rooted_at(&self, g: &Graph, v: usize, al: &Arc<Alphabet>) -> LieElement {
        fn read(d: &TreeDiagram, g: &Graph, from: usize, at: usize, al: &Arc<Alphabet>) -> LieElement {
            if at < g.legs {
                return LieElement::letter(al, d.colors[at].letter(al));
            }
            let n = &g.adj[at];
            let p = n.iter().position(|&u| u == from).expect("adjacent");
            let x = read(d, g, at, n[(p + 1) % 3], al);
            let y = read(d, g, at, n[(p + 2) % 3], al);
            x.bracket(&y).expect("same alphabet")
        }
        read(self, g, v, g.adj[v][0], al)
    }

    /// `η(T) = Σ_v color(v) ⊗ (T rooted at v)`.
    pub fn eta(&self) -> Result<DerivationElement> {
        let m = self.a_deg();
        if m < 0 {
            return Err(Error::Malformed(format!("{self} has negative alternative degree")));
        }
        let g = self.genus;
        let al = Alphabet::ba(g);
        let graph = self.graph();
        let mut a_part = vec![LieElement::zero(&al); g];
        let mut b_part = vec![LieElement::zero(&al); g];
        for (v, c) in self.colors.iter().enumerate() {
            let x = self.rooted_at(&graph, v, &al);
            let slot = match c {
                Color::A(i) => &mut a_part[i - 1],
                Color::B(i) => &mut b_part[i - 1],
            };
            *slot = slot.add(&x)?;
        }
        DerivationElement::new(g, m as usize, a_part, b_part)
    }
}

impl fmt::Display for TreeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_strut() {
            return write!(f, "strut({},{})", self.colors[0], self.colors[1]);
        }
        fn bracket(t: &Tree, c: &[Color]) -> String {
            match t {
                Tree::Leaf(l) => c[*l].to_string(),
                Tree::Node(x, y) => format!("[{},{}]", bracket(x, c), bracket(y, c)),
            }
        }
        write!(f, "tree(root={}; {})", self.colors[self.root], bracket(&self.tree, &self.colors))
    }
}

/// `Ξ(η(T)) = 0`.
pub fn xi_of_eta_check(t: &TreeDiagram) -> Result<bool> {
    Ok(xi(&t.eta()?)?.is_zero())
}

/// Rational combination of tree diagrams of one alternative degree.
/// Two elements are equal when their `η`-images are.
#[derive(Clone, Debug)]
pub struct DiagramElement {
    genus: usize,
    adeg: usize,
    terms: Vec<(Q, TreeDiagram)>,
    eta: DerivationElement,
}

impl PartialEq for DiagramElement {
    fn eq(&self, other: &Self) -> bool {
        self.eta == other.eta
    }
}

impl DiagramElement {
    pub fn zero(genus: usize, adeg: usize) -> Self {
        DiagramElement { genus, adeg, terms: Vec::new(), eta: DerivationElement::zero(genus, adeg) }
    }

    pub fn new(genus: usize, adeg: usize, terms: Vec<(Q, TreeDiagram)>) -> Result<Self> {
        let mut eta = DerivationElement::zero(genus, adeg);
        let mut kept = Vec::new();
        for (c, t) in terms {
            if t.genus != genus {
                return Err(Error::GenusMismatch(genus, t.genus));
            }
            if t.a_deg() != adeg as i64 {
                return Err(Error::Malformed(format!("{t} has degree {} but the element has degree {adeg}", t.a_deg())));
            }
            if c.is_zero() {
                continue;
            }
            eta = eta.add(&t.eta()?.scale(&c))?;
            kept.push((c, t));
        }
        Ok(DiagramElement { genus, adeg, terms: kept, eta })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn adeg(&self) -> usize {
        self.adeg
    }

    pub fn terms(&self) -> &[(Q, TreeDiagram)] {
        &self.terms
    }

    pub fn eta(&self) -> &DerivationElement {
        &self.eta
    }

    pub fn is_zero(&self) -> bool {
        self.eta.is_zero()
    }
}

impl fmt::Display for DiagramElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, t)| format!("{}·{t}", crate::lie::fmt_coeff(c))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Coordinates of a derivation tensor: `(root color, Lyndon word) ↦ coefficient`.
fn coordinates(d: &DerivationElement) -> BTreeMap<(Color, Word), Q> {
    let mut out = BTreeMap::new();
    for i in 1..=d.genus() {
        for (c, part) in [(Color::A(i), d.a_part(i)), (Color::B(i), d.b_part(i))] {
            for (w, x) in part.terms() {
                out.insert((c, w.clone()), x.clone());
            }
        }
    }
    out
}

fn multiset(al: &Alphabet, c: Color, w: &[u8]) -> Vec<u8> {
    let mut m: Vec<u8> = w.to_vec();
    m.push(c.letter(al));
    m.sort_unstable();
    m
}

type SparseRow = BTreeMap<(Color, Word), Q>;

/// Row-echelon basis with, for each row, its expression in the candidates.
struct Echelon {
    rows: Vec<(SparseRow, BTreeMap<usize, Q>)>,
}

impl Echelon {
    fn reduce(&self, mut v: SparseRow, mut combo: BTreeMap<usize, Q>) -> (SparseRow, BTreeMap<usize, Q>) {
        for (row, rc) in &self.rows {
            let (pivot, pc) = row.first_key_value().expect("nonzero row");
            if let Some(x) = v.get(pivot).cloned() {
                let f = x / pc;
                for (k, y) in row {
                    let e = v.entry(k.clone()).or_insert_with(Q::zero);
                    *e -= &f * y;
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
                for (k, y) in rc {
                    let e = combo.entry(*k).or_insert_with(Q::zero);
                    *e -= &f * y;
                    if e.is_zero() {
                        combo.remove(k);
                    }
                }
            }
        }
        (v, combo)
    }

    /// Inserts keeping pivots (first keys) distinct and rows sorted by pivot.
    fn insert(&mut self, v: SparseRow, combo: BTreeMap<usize, Q>) {
        let pivot = v.first_key_value().expect("nonzero").0.clone();
        // clear this pivot from the existing rows so each pivot appears once
        for (row, rc) in self.rows.iter_mut() {
            if let Some(x) = row.get(&pivot).cloned() {
                let f = x / &v[&pivot];
                for (k, y) in &v {
                    let e = row.entry(k.clone()).or_insert_with(Q::zero);
                    *e -= &f * y;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
                for (k, y) in &combo {
                    let e = rc.entry(*k).or_insert_with(Q::zero);
                    *e -= &f * y;
                    if e.is_zero() {
                        rc.remove(k);
                    }
                }
            }
        }
        let at = self.rows.partition_point(|(r, _)| r.first_key_value().unwrap().0 < &pivot);
        self.rows.insert(at, (v, combo));
    }
}

/// Solves `d = Σ x_T η(T)` over the rooted presentations `(c, w)` whose
/// root color `c` is the smallest letter of the tree; these span, and the
/// system splits by the multiset of leg colors. The answer uses the first
/// independent candidates in a fixed order, so it is canonical.
pub fn eta_inverse(d: &DerivationElement) -> Result<DiagramElement> {
    let x = xi(d)?;
    if !x.is_zero() {
        return Err(Error::NotInImage(format!("bracket contraction is {x}")));
    }
    let g = d.genus();
    let m = d.level();
    let al = Alphabet::ba(g);
    let target = coordinates(d);
    let mut blocks: BTreeMap<Vec<u8>, SparseRow> = BTreeMap::new();
    for ((c, w), v) in &target {
        blocks.entry(multiset(&al, *c, w)).or_default().insert((*c, w.clone()), v.clone());
    }
    let mut terms = Vec::new();
    for (colors, rhs) in blocks {
        let cands = candidates(g, m, &al, &colors)?;
        let mut ech = Echelon { rows: Vec::new() };
        for (k, t) in cands.iter().enumerate() {
            let v = coordinates(&t.eta()?);
            let (v, combo) = ech.reduce(v, BTreeMap::from([(k, Q::one())]));
            if !v.is_empty() {
                ech.insert(v, combo);
            }
        }
        let (rest, combo) = ech.reduce(rhs, BTreeMap::new());
        if !rest.is_empty() {
            return Err(Error::Internal("symplectic derivation outside the span of tree diagrams".into()));
        }
        for (k, c) in combo {
            terms.push((-c, cands[k].clone()));
        }
    }
    DiagramElement::new(g, m, terms)
}

/// Presentations `(c, w)` with colors exactly `colors` (sorted letters) and
/// `c` the smallest of them, in order.
fn candidates(g: usize, m: usize, al: &Arc<Alphabet>, colors: &[u8]) -> Result<Vec<TreeDiagram>> {
    let root_letter = colors[0];
    let root = Color::parse(al.symbol(root_letter))?;
    let rest: Vec<u8> = colors[1..].to_vec();
    let weight = al.word_weight(&rest);
    let expect = if root.is_a() { m + 1 } else { m + 2 };
    if weight != expect {
        return Ok(Vec::new());
    }
    let letters: BTreeSet<u8> = rest.iter().copied().collect();
    let mut out = Vec::new();
    for w in lyndon_basis(al, weight) {
        let mut s = w.clone();
        s.sort_unstable();
        if s == rest && w.iter().all(|l| letters.contains(l)) {
            out.push(TreeDiagram::from_lyndon(g, root, &w)?);
        }
    }
    Ok(out)
}

/// `η^-1 ∘ τ^a_m`.
pub fn diagrammatic_tau_alt(h: &crate::surface::SurfaceEndo, m: usize) -> Result<DiagramElement> {
    eta_inverse(&crate::johnson::tau_alt(h, m)?)
}
