//! Free Lie algebras over `Q` on weighted alphabets, in the Lyndon basis.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Q;

/// A word is a sequence of letter indices into an alphabet.
pub type Word = Vec<u8>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlphabetKind {
    /// `a_1 < .. < a_g < b_1 < .. < b_g`, all weight 1.
    H,
    /// `b_1 < .. < b_g` (weight 1) `< a_1 < .. < a_g` (weight 2).
    BA,
    /// `b_1 < .. < b_g`, weight 1.
    B,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub symbol: String,
    pub weight: usize,
}

/// Ordered letters with weights 1 or 2; the order is the index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    kind: AlphabetKind,
    genus: usize,
    letters: Vec<Letter>,
}

fn letters_of(genus: usize, with_a: bool, wa: usize, a_first: bool) -> Vec<Letter> {
    let mk = |p: &'static str, w: usize| (1..=genus).map(move |i| Letter { symbol: format!("{p}{i}"), weight: w });
    let a: Vec<Letter> = if with_a { mk("a", wa).collect() } else { Vec::new() };
    let b: Vec<Letter> = mk("b", 1).collect();
    if a_first {
        a.into_iter().chain(b).collect()
    } else {
        b.into_iter().chain(a).collect()
    }
}

impl Alphabet {
    pub fn new(letters: Vec<Letter>) -> Result<Arc<Self>> {
        for (i, l) in letters.iter().enumerate() {
            if !(1..=2).contains(&l.weight) {
                return Err(Error::Malformed(format!("letter {} has weight {}", l.symbol, l.weight)));
            }
            if letters[..i].iter().any(|m| m.symbol == l.symbol) {
                return Err(Error::Malformed(format!("duplicate letter {}", l.symbol)));
            }
        }
        if letters.len() > u8::MAX as usize {
            return Err(Error::Malformed("alphabet too large".into()));
        }
        Ok(Arc::new(Alphabet { kind: AlphabetKind::Custom, genus: 0, letters }))
    }

    pub fn h(genus: usize) -> Arc<Self> {
        Arc::new(Alphabet { kind: AlphabetKind::H, genus, letters: letters_of(genus, true, 1, true) })
    }

    pub fn ba(genus: usize) -> Arc<Self> {
        Arc::new(Alphabet { kind: AlphabetKind::BA, genus, letters: letters_of(genus, true, 2, false) })
    }

    pub fn b(genus: usize) -> Arc<Self> {
        Arc::new(Alphabet { kind: AlphabetKind::B, genus, letters: letters_of(genus, false, 1, false) })
    }

    pub fn kind(&self) -> AlphabetKind {
        self.kind
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn weight_of(&self, l: u8) -> usize {
        self.letters[l as usize].weight
    }

    pub fn symbol(&self, l: u8) -> &str {
        &self.letters[l as usize].symbol
    }

    pub fn index_of(&self, symbol: &str) -> Option<u8> {
        self.letters.iter().position(|l| l.symbol == symbol).map(|i| i as u8)
    }

    /// Letter `a_i`, if present.
    pub fn a(&self, i: usize) -> Option<u8> {
        self.index_of(&format!("a{i}"))
    }

    pub fn b_letter(&self, i: usize) -> Option<u8> {
        self.index_of(&format!("b{i}"))
    }

    pub fn word_weight(&self, w: &[u8]) -> usize {
        w.iter().map(|&l| self.weight_of(l)).sum()
    }

    /// `b1.a1.b2`
    pub fn word_text(&self, w: &[u8]) -> String {
        w.iter().map(|&l| self.symbol(l)).collect::<Vec<_>>().join(".")
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.is_empty() {
            return Ok(Vec::new());
        }
        text.split('.')
            .map(|s| self.index_of(s.trim()).ok_or_else(|| Error::Malformed(format!("unknown letter `{s}`"))))
            .collect()
    }

    /// Lyndon bracketing, e.g. `[b1,[b1,b2]]`.
    pub fn bracket_text(&self, w: &[u8]) -> String {
        if w.len() == 1 {
            return self.symbol(w[0]).to_string();
        }
        let (u, v) = standard_factorization(w);
        format!("[{},{}]", self.bracket_text(u), self.bracket_text(v))
    }
}

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// `w = u v` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> (&[u8], &[u8]) {
    debug_assert!(w.len() >= 2);
    let i = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("last letter is Lyndon");
    (&w[..i], &w[i..])
}

/// All Lyndon words of total weight `m`, in lexicographic order.
pub fn lyndon_basis(alphabet: &Alphabet, m: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(a: &Alphabet, left: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if left == 0 {
            if is_lyndon(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for l in 0..a.len() as u8 {
            let w = a.weight_of(l);
            if w <= left {
                // a Lyndon word never starts with a letter bigger than a later one
                if let Some(&f) = cur.first() {
                    if l < f {
                        continue;
                    }
                }
                cur.push(l);
                rec(a, left - w, cur, out);
                cur.pop();
            }
        }
    }
    if m > 0 {
        rec(alphabet, m, &mut cur, &mut out);
    }
    out
}

/// Noncommutative polynomial (no truncation).
pub type Poly = BTreeMap<Word, Q>;

pub(crate) fn poly_add_into(p: &mut Poly, w: Word, c: &Q) {
    if c.is_zero() {
        return;
    }
    match p.entry(w) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}

pub(crate) fn poly_mul(x: &Poly, y: &Poly) -> Poly {
    let mut p = Poly::new();
    for (u, c) in x {
        for (v, d) in y {
            let mut w = u.clone();
            w.extend_from_slice(v);
            poly_add_into(&mut p, w, &(c * d));
        }
    }
    p
}

pub(crate) fn poly_commutator(x: &Poly, y: &Poly) -> Poly {
    let mut p = poly_mul(x, y);
    for (w, c) in poly_mul(y, x) {
        poly_add_into(&mut p, w, &-c);
    }
    p
}

type Cache<K, V> = RefCell<HashMap<K, Arc<Vec<V>>>>;

thread_local! {
    static EXPANSIONS: Cache<Word, (Word, i64)> = RefCell::new(HashMap::new());
    static BRACKETS: Cache<(Word, Word), (Word, Q)> = RefCell::new(HashMap::new());
}

/// Tensor expansion of the standard bracketing of a Lyndon word.
/// Coefficients are integers; depends only on the letter indices.
pub fn lyndon_expansion(w: &[u8]) -> Arc<Vec<(Word, i64)>> {
    if let Some(e) = EXPANSIONS.with(|c| c.borrow().get(w).cloned()) {
        return e;
    }
    let e = if w.len() == 1 {
        vec![(w.to_vec(), 1)]
    } else {
        let (u, v) = standard_factorization(w);
        let (pu, pv) = (lyndon_expansion(u), lyndon_expansion(v));
        let mut acc: HashMap<Word, i64> = HashMap::new();
        for (x, c) in pu.iter() {
            for (y, d) in pv.iter() {
                let mut xy = x.clone();
                xy.extend_from_slice(y);
                *acc.entry(xy).or_default() += c * d;
                let mut yx = y.clone();
                yx.extend_from_slice(x);
                *acc.entry(yx).or_default() -= c * d;
            }
        }
        let mut v: Vec<(Word, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort();
        v
    };
    let e = Arc::new(e);
    EXPANSIONS.with(|c| c.borrow_mut().insert(w.to_vec(), e.clone()));
    e
}

/// Left-normed bracket `[..[x1,x2],..,xn]` expanded in words.
fn dynkin_word(w: &[u8]) -> Vec<(Word, i64)> {
    let mut terms: Vec<(Word, i64)> = vec![(vec![w[0]], 1)];
    for &x in &w[1..] {
        let mut next = Vec::with_capacity(terms.len() * 2);
        for (t, c) in &terms {
            let mut a = t.clone();
            a.push(x);
            next.push((a, *c));
            let mut b = Vec::with_capacity(t.len() + 1);
            b.push(x);
            b.extend_from_slice(t);
            next.push((b, -*c));
        }
        terms = next;
    }
    terms
}

/// Dynkin test: every word-length `n` component `p` must satisfy `ρ(p) = n p`.
pub fn is_primitive(p: &Poly) -> bool {
    first_non_primitive_length(p).is_none()
}

fn first_non_primitive_length(p: &Poly) -> Option<usize> {
    let mut by_len: BTreeMap<usize, Vec<(&Word, &Q)>> = BTreeMap::new();
    for (w, c) in p {
        by_len.entry(w.len()).or_default().push((w, c));
    }
    for (n, terms) in by_len {
        if n == 0 {
            return Some(0);
        }
        let mut rho = Poly::new();
        for (w, c) in &terms {
            for (u, d) in dynkin_word(w) {
                poly_add_into(&mut rho, u, &(*c * Q::from_integer(d.into())));
            }
        }
        let nq = Q::from_integer((n as i64).into());
        let mut diff = rho;
        for (w, c) in &terms {
            poly_add_into(&mut diff, (*w).clone(), &-(*c * &nq));
        }
        if !diff.is_empty() {
            return Some(n);
        }
    }
    None
}

/// Triangular decomposition: the smallest word of a Lie polynomial is
/// Lyndon, and the standard bracketing of `w` is `w` plus larger words.
fn decompose(mut p: Poly) -> Option<BTreeMap<Word, Q>> {
    let mut out = BTreeMap::new();
    while let Some((w, c)) = p.pop_first() {
        if !is_lyndon(&w) {
            return None;
        }
        for (u, d) in lyndon_expansion(&w).iter().skip_while(|(u, _)| *u == w) {
            // the leading word has already been removed
            poly_add_into(&mut p, u.clone(), &-(&c * Q::from_integer((*d).into())));
        }
        debug_assert!(lyndon_expansion(&w).iter().any(|(u, d)| *u == w && *d == 1));
        out.insert(w, c);
    }
    Some(out)
}

/// Element of the free Lie algebra, as a combination of Lyndon basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Word, Q>,
}

impl LieElement {
    pub fn zero(alphabet: &Arc<Alphabet>) -> Self {
        LieElement { alphabet: alphabet.clone(), terms: BTreeMap::new() }
    }

    pub fn letter(alphabet: &Arc<Alphabet>, l: u8) -> Self {
        Self::basis(alphabet, vec![l], Q::one()).expect("single letter is Lyndon")
    }

    /// Letter by symbol; panics on an unknown symbol.
    pub fn sym(alphabet: &Arc<Alphabet>, s: &str) -> Self {
        Self::letter(alphabet, alphabet.index_of(s).unwrap_or_else(|| panic!("no letter {s}")))
    }

    pub fn basis(alphabet: &Arc<Alphabet>, w: Word, c: Q) -> Result<Self> {
        if !is_lyndon(&w) || w.iter().any(|&l| l as usize >= alphabet.len()) {
            return Err(Error::Malformed(format!("{w:?} is not a Lyndon word of the alphabet")));
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Ok(LieElement { alphabet: alphabet.clone(), terms })
    }

    pub fn from_terms(alphabet: &Arc<Alphabet>, terms: impl IntoIterator<Item = (Word, Q)>) -> Result<Self> {
        let mut x = Self::zero(alphabet);
        for (w, c) in terms {
            x = x.add(&Self::basis(alphabet, w, c)?)?;
        }
        Ok(x)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn terms(&self) -> &BTreeMap<Word, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[u8]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    fn check(&self, other: &LieElement) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            poly_add_into(&mut terms, w.clone(), c);
        }
        Ok(LieElement { alphabet: self.alphabet.clone(), terms })
    }

    pub fn sub(&self, other: &LieElement) -> Result<LieElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> LieElement {
        if c.is_zero() {
            return LieElement::zero(&self.alphabet);
        }
        LieElement { alphabet: self.alphabet.clone(), terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect() }
    }

    /// Weights occurring, ascending.
    pub fn weights(&self) -> Vec<usize> {
        let mut ws: Vec<usize> = self.terms.keys().map(|w| self.alphabet.word_weight(w)).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    pub fn is_homogeneous_of(&self, m: usize) -> bool {
        self.terms.keys().all(|w| self.alphabet.word_weight(w) == m)
    }

    pub fn slice(&self, m: usize) -> LieElement {
        LieElement {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().filter(|(w, _)| self.alphabet.word_weight(w) == m).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::new();
        for (w, c) in &self.terms {
            for (u, d) in lyndon_expansion(w).iter() {
                poly_add_into(&mut p, u.clone(), &(c * Q::from_integer((*d).into())));
            }
        }
        p
    }

    /// Image in the tensor algebra, truncated above `truncation`.
    pub fn to_tensor(&self, truncation: usize) -> crate::series::TensorSeries {
        crate::series::TensorSeries::from_poly(&self.alphabet, truncation, &self.to_poly())
    }

    /// Exact inverse of `to_poly`; errors unless `p` passes the Dynkin test.
    pub fn from_poly(alphabet: &Arc<Alphabet>, p: &Poly) -> Result<LieElement> {
        if let Some(n) = first_non_primitive_length(p) {
            return Err(Error::NotPrimitive(n));
        }
        Self::from_known_lie_poly(alphabet, p.clone())
    }

    /// Skips the Dynkin test; use only when `p` is a Lie polynomial by construction.
    pub(crate) fn from_known_lie_poly(alphabet: &Arc<Alphabet>, p: Poly) -> Result<LieElement> {
        let terms = decompose(p).ok_or_else(|| Error::Internal("Lie polynomial with non-Lyndon leading word".into()))?;
        Ok(LieElement { alphabet: alphabet.clone(), terms })
    }

    pub fn bracket(&self, other: &LieElement) -> Result<LieElement> {
        self.check(other)?;
        let mut terms = Poly::new();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                let cd = c * d;
                for (w, e) in bracket_basis(u, v).iter() {
                    poly_add_into(&mut terms, w.clone(), &(&cd * e));
                }
            }
        }
        Ok(LieElement { alphabet: self.alphabet.clone(), terms })
    }

    /// The Lie homomorphism sending letter `l` to `images[l]` (`None` means 0).
    /// Nonzero images must be homogeneous of the letter's weight.
    pub fn substitute(&self, target: &Arc<Alphabet>, images: &[Option<LieElement>]) -> Result<LieElement> {
        if images.len() != self.alphabet.len() {
            return Err(Error::Malformed("substitution must give an image for every letter".into()));
        }
        for (l, im) in images.iter().enumerate() {
            if let Some(x) = im {
                if x.alphabet != *target {
                    return Err(Error::AlphabetMismatch);
                }
                let w = self.alphabet.weight_of(l as u8);
                if !x.is_homogeneous_of(w) {
                    return Err(Error::WeightIncompatible { letter: self.alphabet.symbol(l as u8).into(), weight: w });
                }
            }
        }
        let mut memo: HashMap<Word, LieElement> = HashMap::new();
        fn img(w: &[u8], images: &[Option<LieElement>], target: &Arc<Alphabet>, memo: &mut HashMap<Word, LieElement>) -> LieElement {
            if let Some(x) = memo.get(w) {
                return x.clone();
            }
            let x = if w.len() == 1 {
                images[w[0] as usize].clone().unwrap_or_else(|| LieElement::zero(target))
            } else {
                let (u, v) = standard_factorization(w);
                let xu = img(u, images, target, memo);
                if xu.is_zero() {
                    LieElement::zero(target)
                } else {
                    let xv = img(v, images, target, memo);
                    xu.bracket(&xv).expect("same alphabet")
                }
            };
            memo.insert(w.to_vec(), x.clone());
            x
        }
        let mut out = LieElement::zero(target);
        for (w, c) in &self.terms {
            let x = img(w, images, target, &mut memo);
            out = out.add(&x.scale(c))?;
        }
        Ok(out)
    }
}

/// `[P_u, P_v]` in the Lyndon basis, memoized per thread.
pub fn bracket_basis(u: &[u8], v: &[u8]) -> Arc<Vec<(Word, Q)>> {
    let key = (u.to_vec(), v.to_vec());
    if let Some(r) = BRACKETS.with(|c| c.borrow().get(&key).cloned()) {
        return r;
    }
    let r = if u == v {
        Vec::new()
    } else if u > v {
        bracket_basis(v, u).iter().map(|(w, c)| (w.clone(), -c)).collect()
    } else {
        let mut uv = u.to_vec();
        uv.extend_from_slice(v);
        if is_lyndon(&uv) && standard_factorization(&uv).1 == v {
            vec![(uv, Q::one())]
        } else {
            let to = |w: &[u8]| -> Poly {
                lyndon_expansion(w).iter().map(|(x, c)| (x.clone(), Q::from_integer((*c).into()))).collect()
            };
            let p = poly_commutator(&to(u), &to(v));
            decompose(p).expect("bracket of Lie polynomials").into_iter().collect()
        }
    };
    let r = Arc::new(r);
    BRACKETS.with(|c| c.borrow_mut().insert(key, r.clone()));
    r
}

/// `Ω' = Σ [a_i, b_i]` in `Lie(B;A)`.
pub fn omega_prime(genus: usize) -> Result<LieElement> {
    if genus < 1 {
        return Err(Error::BadGenus(genus));
    }
    let al = Alphabet::ba(genus);
    let mut x = LieElement::zero(&al);
    for i in 1..=genus {
        let a = LieElement::letter(&al, al.a(i).unwrap());
        let b = LieElement::letter(&al, al.b_letter(i).unwrap());
        x = x.add(&a.bracket(&b)?)?;
    }
    Ok(x)
}

pub(crate) fn fmt_coeff(c: &Q) -> String {
    if c.is_integer() && !c.is_negative() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(w, c)| format!("{}·{}", fmt_coeff(c), self.alphabet.bracket_text(w))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
