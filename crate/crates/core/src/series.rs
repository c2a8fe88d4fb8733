//! Truncated power series in noncommuting letters and expansions of the
//! free group into them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{DefectKind, Error, Result, Violation};
use crate::lie::{lyndon_basis, Alphabet, LieElement, Poly, Word};
use crate::surface::{FreeWord, GenKind, Generator};
use crate::Q;

/// Series truncated above total weight `truncation`; component `k` holds the
/// words of weight `k`.
#[derive(Clone, Debug)]
pub struct TensorSeries {
    alphabet: Arc<Alphabet>,
    truncation: usize,
    comps: Vec<HashMap<Word, Q>>,
}

impl PartialEq for TensorSeries {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.truncation == other.truncation && self.comps == other.comps
    }
}

fn add_into(m: &mut HashMap<Word, Q>, w: Word, c: Q) {
    if c.is_zero() {
        return;
    }
    match m.entry(w) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

impl TensorSeries {
    pub fn zero(alphabet: &Arc<Alphabet>, truncation: usize) -> Self {
        TensorSeries { alphabet: alphabet.clone(), truncation, comps: vec![HashMap::new(); truncation + 1] }
    }

    pub fn one(alphabet: &Arc<Alphabet>, truncation: usize) -> Self {
        let mut s = Self::zero(alphabet, truncation);
        s.comps[0].insert(Vec::new(), Q::one());
        s
    }

    pub fn monomial(alphabet: &Arc<Alphabet>, truncation: usize, w: Word, c: Q) -> Self {
        let mut s = Self::zero(alphabet, truncation);
        s.add_term(w, c);
        s
    }

    pub fn from_poly(alphabet: &Arc<Alphabet>, truncation: usize, p: &Poly) -> Self {
        let mut s = Self::zero(alphabet, truncation);
        for (w, c) in p {
            s.add_term(w.clone(), c.clone());
        }
        s
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        let k = self.alphabet.word_weight(&w);
        if k <= self.truncation {
            add_into(&mut self.comps[k], w, c);
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeff(&self, w: &[u8]) -> Q {
        let k = self.alphabet.word_weight(w);
        self.comps.get(k).and_then(|m| m.get(w)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant(&self) -> Q {
        self.coeff(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|m| m.is_empty())
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.comps.iter().map(|m| m.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Homogeneous component of weight `k` as a polynomial.
    pub fn slice(&self, k: usize) -> Poly {
        self.comps.get(k).map(|m| m.iter().map(|(w, c)| (w.clone(), c.clone())).collect()).unwrap_or_default()
    }

    /// Lowest weight `>= 1` with a nonzero component.
    pub fn lowest_positive_weight(&self) -> Option<usize> {
        (1..=self.truncation).find(|&k| !self.comps[k].is_empty())
    }

    pub fn terms(&self) -> Vec<(Word, Q)> {
        let mut v: Vec<(Word, Q)> = self.comps.iter().flat_map(|m| m.iter().map(|(w, c)| (w.clone(), c.clone()))).collect();
        v.sort_by(|a, b| {
            let (wa, wb) = (self.alphabet.word_weight(&a.0), self.alphabet.word_weight(&b.0));
            wa.cmp(&wb).then_with(|| a.0.cmp(&b.0))
        });
        v
    }

    fn check(&self, other: &TensorSeries) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    /// Truncation of the result is the smaller of the two.
    pub fn mul(&self, other: &TensorSeries) -> Result<TensorSeries> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &TensorSeries) -> TensorSeries {
        let n = self.truncation.min(other.truncation);
        let mut out = TensorSeries::zero(&self.alphabet, n);
        for i in 0..=n {
            if self.comps[i].is_empty() {
                continue;
            }
            for j in 0..=n - i {
                if other.comps[j].is_empty() {
                    continue;
                }
                let dst = &mut out.comps[i + j];
                for (u, c) in &self.comps[i] {
                    for (v, d) in &other.comps[j] {
                        let mut w = Vec::with_capacity(u.len() + v.len());
                        w.extend_from_slice(u);
                        w.extend_from_slice(v);
                        add_into(dst, w, c * d);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &TensorSeries) -> Result<TensorSeries> {
        self.check(other)?;
        let n = self.truncation.min(other.truncation);
        let mut out = self.truncate(n);
        for k in 0..=n {
            for (w, c) in &other.comps[k] {
                add_into(&mut out.comps[k], w.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorSeries) -> Result<TensorSeries> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> TensorSeries {
        let mut out = TensorSeries::zero(&self.alphabet, self.truncation);
        if c.is_zero() {
            return out;
        }
        for k in 0..=self.truncation {
            out.comps[k] = self.comps[k].iter().map(|(w, d)| (w.clone(), d * c)).collect();
        }
        out
    }

    pub fn truncate(&self, n: usize) -> TensorSeries {
        let n = n.min(self.truncation);
        TensorSeries { alphabet: self.alphabet.clone(), truncation: n, comps: self.comps[..=n].to_vec() }
    }

    fn require_constant(&self, expected: i64) -> Result<()> {
        let c = self.constant();
        if c != Q::from_integer(expected.into()) {
            return Err(Error::ConstantTerm { expected: expected.to_string(), found: c.to_string() });
        }
        Ok(())
    }

    /// `Σ x^k / k!`; requires zero constant term.
    pub fn exp(&self) -> Result<TensorSeries> {
        self.require_constant(0)?;
        // Horner: 1 + x(1 + x/2(1 + x/3(...)))
        let one = TensorSeries::one(&self.alphabet, self.truncation);
        let mut acc = one.clone();
        for k in (1..=self.truncation).rev() {
            let t = self.mul_unchecked(&acc).scale(&Q::new(1.into(), (k as i64).into()));
            acc = one.add(&t)?;
        }
        Ok(acc)
    }

    /// `log(1 + y) = Σ (-1)^{k+1} y^k / k`; requires constant term 1.
    pub fn log(&self) -> Result<TensorSeries> {
        self.require_constant(1)?;
        let mut y = self.clone();
        y.comps[0].clear();
        let mut out = TensorSeries::zero(&self.alphabet, self.truncation);
        let mut pow = y.clone();
        for k in 1..=self.truncation {
            if pow.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&pow.scale(&Q::new(sign.into(), (k as i64).into())))?;
            pow = pow.mul_unchecked(&y);
        }
        Ok(out)
    }

    /// `exp(-log x)`.
    pub fn inverse(&self) -> Result<TensorSeries> {
        self.log()?.scale(&-Q::one()).exp()
    }

    /// Group-like test through primitivity of the logarithm.
    pub fn is_grouplike(&self) -> Result<bool> {
        self.require_constant(1)?;
        let l = self.log()?;
        for k in 1..=l.truncation {
            if !crate::lie::is_primitive(&l.slice(k)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The weight-`k` slice as a Lie element (Dynkin-checked).
    pub fn lie_slice(&self, k: usize) -> Result<LieElement> {
        LieElement::from_poly(&self.alphabet, &self.slice(k))
    }
}

impl fmt::Display for TensorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(w, c)| {
                if w.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    self.alphabet.word_text(w)
                } else {
                    format!("{c} {}", self.alphabet.word_text(w))
                }
            })
            .collect();
        write!(f, "{} + ...", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionKind {
    /// `α_i ↦ exp(a_i)`, `β_i ↦ exp(b_i)` over the `BA` alphabet.
    Alternative,
    /// Same formulas over the `H` alphabet, all weights 1.
    Classical,
    /// `α_i ↦ 1`, `β_i ↦ exp(b_i)` over the `B` alphabet.
    Handlebody,
    /// Alternative expansion with seeded random higher-order Lie terms.
    Perturbed(u64),
}

impl fmt::Display for ExpansionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpansionKind::Alternative => write!(f, "default-alt"),
            ExpansionKind::Classical => write!(f, "classical"),
            ExpansionKind::Handlebody => write!(f, "handlebody"),
            ExpansionKind::Perturbed(s) => write!(f, "perturbed({s})"),
        }
    }
}

/// Multiplicative map from the free group into group-like series, fixed by
/// the `log` of the generator images.
#[derive(Clone, Debug)]
pub struct Expansion {
    kind: ExpansionKind,
    genus: usize,
    alphabet: Arc<Alphabet>,
    truncation: usize,
    logs: Vec<TensorSeries>,
}

impl Expansion {
    fn build(kind: ExpansionKind, genus: usize, alphabet: Arc<Alphabet>, truncation: usize, logs: Vec<TensorSeries>) -> Self {
        Expansion { kind, genus, alphabet, truncation, logs }
    }

    fn letter_logs(genus: usize, al: &Arc<Alphabet>, truncation: usize, alphas: bool) -> Vec<TensorSeries> {
        Generator::all(genus)
            .map(|g| {
                let l = match g.kind {
                    GenKind::Alpha if !alphas => None,
                    GenKind::Alpha => al.a(g.index),
                    GenKind::Beta => al.b_letter(g.index),
                };
                match l {
                    Some(l) => TensorSeries::monomial(al, truncation, vec![l], Q::one()),
                    None => TensorSeries::zero(al, truncation),
                }
            })
            .collect()
    }

    pub fn alternative(genus: usize, truncation: usize) -> Result<Self> {
        if truncation < 2 {
            return Err(Error::Truncation { have: truncation, need: 2 });
        }
        let al = Alphabet::ba(genus);
        let logs = Self::letter_logs(genus, &al, truncation, true);
        Ok(Self::build(ExpansionKind::Alternative, genus, al, truncation, logs))
    }

    pub fn classical(genus: usize, truncation: usize) -> Result<Self> {
        if truncation < 1 {
            return Err(Error::Truncation { have: truncation, need: 1 });
        }
        let al = Alphabet::h(genus);
        let logs = Self::letter_logs(genus, &al, truncation, true);
        Ok(Self::build(ExpansionKind::Classical, genus, al, truncation, logs))
    }

    pub fn handlebody(genus: usize, truncation: usize) -> Result<Self> {
        if truncation < 1 {
            return Err(Error::Truncation { have: truncation, need: 1 });
        }
        let al = Alphabet::b(genus);
        let logs = Self::letter_logs(genus, &al, truncation, false);
        Ok(Self::build(ExpansionKind::Handlebody, genus, al, truncation, logs))
    }

    /// `α_i ↦ exp(a_i + u_i)`, `β_i ↦ exp(b_i + v_i)` with random Lie
    /// elements `u_i` of weight `>= 3` and `v_i` of weight `>= 2`.
    pub fn perturbed(genus: usize, truncation: usize, seed: u64) -> Result<Self> {
        let base = Self::alternative(genus, truncation)?;
        let al = base.alphabet.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let logs = Generator::all(genus)
            .zip(base.logs)
            .map(|(g, l)| {
                let from = if g.kind == GenKind::Alpha { 3 } else { 2 };
                let mut extra = LieElement::zero(&al);
                for k in from..=truncation {
                    for w in lyndon_basis(&al, k) {
                        if rng.gen_bool(0.5) {
                            let c = Q::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=4).into());
                            extra = extra.add(&LieElement::basis(&al, w, c).unwrap()).unwrap();
                        }
                    }
                }
                l.add(&extra.to_tensor(truncation)).unwrap()
            })
            .collect();
        Ok(Self::build(ExpansionKind::Perturbed(seed), genus, al, truncation, logs))
    }

    pub fn new(kind: ExpansionKind, genus: usize, truncation: usize) -> Result<Self> {
        match kind {
            ExpansionKind::Alternative => Self::alternative(genus, truncation),
            ExpansionKind::Classical => Self::classical(genus, truncation),
            ExpansionKind::Handlebody => Self::handlebody(genus, truncation),
            ExpansionKind::Perturbed(s) => Self::perturbed(genus, truncation, s),
        }
    }

    pub fn kind(&self) -> ExpansionKind {
        self.kind
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Image of a generator.
    pub fn image(&self, g: Generator) -> TensorSeries {
        self.logs[g.slot(self.genus)].exp().expect("zero constant term")
    }

    /// `log θ(g)`.
    pub fn image_log(&self, g: Generator) -> &TensorSeries {
        &self.logs[g.slot(self.genus)]
    }

    /// `θ(w)`, one factor `exp(k log θ(x))` per run `x^k`.
    pub fn evaluate(&self, w: &FreeWord) -> Result<TensorSeries> {
        if w.genus() != self.genus {
            return Err(Error::GenusMismatch(self.genus, w.genus()));
        }
        let mut acc = TensorSeries::one(&self.alphabet, self.truncation);
        let mut cache: HashMap<(usize, i64), TensorSeries> = HashMap::new();
        for &(g, k) in w.runs() {
            let slot = g.slot(self.genus);
            if self.logs[slot].is_zero() {
                continue;
            }
            let f = cache
                .entry((slot, k))
                .or_insert_with(|| self.logs[slot].scale(&Q::from_integer(k.into())).exp().expect("zero constant"));
            acc = acc.mul_unchecked(f);
        }
        Ok(acc)
    }

    /// `log θ(w)`.
    pub fn evaluate_log(&self, w: &FreeWord) -> Result<TensorSeries> {
        self.evaluate(w)?.log()
    }

    /// Class of `w` in the `m`-th graded quotient: the weight-`m` slice of
    /// `log θ(w)`, after checking that all lower slices vanish.
    pub fn leading_class(&self, w: &FreeWord, m: usize) -> Result<LieElement> {
        if self.truncation < m {
            return Err(Error::Truncation { have: self.truncation, need: m });
        }
        let l = self.evaluate_log(w)?;
        class_of_log(&l, m, "w", DefectKind::Generator)
    }
}

/// Weight-`m` class of a logarithm, or the first lower nonvanishing slice.
pub(crate) fn class_of_log(l: &TensorSeries, m: usize, generator: &str, kind: DefectKind) -> Result<LieElement> {
    if let Some(k) = l.lowest_positive_weight() {
        if k < m {
            let slice = l.lie_slice(k).map(|x| x.to_string()).unwrap_or_else(|_| "<not Lie>".into());
            return Err(Error::Membership(Violation { generator: generator.into(), kind, degree: k, slice }));
        }
    }
    l.lie_slice(m)
}
