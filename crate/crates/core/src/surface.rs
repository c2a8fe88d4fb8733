//! Words in the free group on `a1..ag, b1..bg` and endomorphisms of it.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Alpha,
    Beta,
}

/// One of the free generators `α_i`, `β_i` (1-based index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GenKind,
    pub index: usize,
}

impl Generator {
    pub fn alpha(index: usize) -> Self {
        Generator { kind: GenKind::Alpha, index }
    }

    pub fn beta(index: usize) -> Self {
        Generator { kind: GenKind::Beta, index }
    }

    /// Position in `α_1..α_g, β_1..β_g`.
    pub fn slot(self, genus: usize) -> usize {
        match self.kind {
            GenKind::Alpha => self.index - 1,
            GenKind::Beta => genus + self.index - 1,
        }
    }

    pub fn from_slot(slot: usize, genus: usize) -> Self {
        if slot < genus {
            Generator::alpha(slot + 1)
        } else {
            Generator::beta(slot - genus + 1)
        }
    }

    /// All `2g` generators in slot order.
    pub fn all(genus: usize) -> impl Iterator<Item = Generator> {
        (0..2 * genus).map(move |s| Generator::from_slot(s, genus))
    }

    fn check(self, genus: usize) -> Result<Self> {
        if self.index == 0 || self.index > genus {
            return Err(Error::Malformed(format!("generator {self} out of range for genus {genus}")));
        }
        Ok(self)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::Alpha => write!(f, "a{}", self.index),
            GenKind::Beta => write!(f, "b{}", self.index),
        }
    }
}

/// Freely reduced word, stored as runs `x^k` with `k != 0` and no two
/// neighbouring runs on the same generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeWord {
    genus: usize,
    runs: Vec<(Generator, i64)>,
}

impl FreeWord {
    pub fn identity(genus: usize) -> Self {
        FreeWord { genus, runs: Vec::new() }
    }

    pub fn generator(genus: usize, g: Generator) -> Result<Self> {
        Self::from_runs(genus, [(g, 1)])
    }

    pub fn alpha(genus: usize, i: usize) -> Self {
        Self::generator(genus, Generator::alpha(i)).expect("alpha index in range")
    }

    pub fn beta(genus: usize, i: usize) -> Self {
        Self::generator(genus, Generator::beta(i)).expect("beta index in range")
    }

    /// Reduces an arbitrary sequence of powers.
    pub fn from_runs(genus: usize, runs: impl IntoIterator<Item = (Generator, i64)>) -> Result<Self> {
        let mut w = FreeWord::identity(genus);
        for (g, k) in runs {
            g.check(genus)?;
            w.push(g, k);
        }
        Ok(w)
    }

    fn push(&mut self, g: Generator, k: i64) {
        if k == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((h, e)) if *h == g => {
                *e += k;
                if *e == 0 {
                    self.runs.pop();
                }
            }
            _ => self.runs.push((g, k)),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn runs(&self) -> &[(Generator, i64)] {
        &self.runs
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.runs.iter().map(|(_, k)| k.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Letters one at a time, exponents `±1`.
    pub fn letters(&self) -> impl Iterator<Item = (Generator, i64)> + '_ {
        self.runs
            .iter()
            .flat_map(|&(g, k)| std::iter::repeat_n((g, k.signum()), k.unsigned_abs() as usize))
    }

    fn same_genus(&self, other: &FreeWord) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        Ok(())
    }

    pub fn mul(&self, other: &FreeWord) -> Result<FreeWord> {
        self.same_genus(other)?;
        let mut w = self.clone();
        w.extend(other);
        Ok(w)
    }

    fn extend(&mut self, other: &FreeWord) {
        for &(g, k) in &other.runs {
            self.push(g, k);
        }
    }

    pub fn inv(&self) -> FreeWord {
        FreeWord { genus: self.genus, runs: self.runs.iter().rev().map(|&(g, k)| (g, -k)).collect() }
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut w = FreeWord::identity(self.genus);
        for _ in 0..n.unsigned_abs() {
            w.extend(&base);
        }
        w
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(&self, other: &FreeWord) -> Result<FreeWord> {
        self.same_genus(other)?;
        let mut w = self.clone();
        w.extend(other);
        w.extend(&self.inv());
        w.extend(&other.inv());
        Ok(w)
    }

    /// `u^-1 self u`.
    pub fn conj_by(&self, u: &FreeWord) -> Result<FreeWord> {
        self.same_genus(u)?;
        let mut w = u.inv();
        w.extend(self);
        w.extend(u);
        Ok(w)
    }

    /// Exponent sum of every generator, in slot order.
    pub fn abelianize(&self) -> Vec<i64> {
        let mut v = vec![0; 2 * self.genus];
        for &(g, k) in &self.runs {
            v[g.slot(self.genus)] += k;
        }
        v
    }

    /// Parses `a1 b2^-1 a1^3`; `1` or the empty string is the identity.
    pub fn parse(genus: usize, text: &str) -> Result<FreeWord> {
        let mut w = FreeWord::identity(genus);
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let k: i64 = e.parse().map_err(|_| Error::Malformed(format!("bad exponent in `{tok}`")))?;
                    (n, k)
                }
                None => (tok, 1),
            };
            let kind = match name.chars().next() {
                Some('a') => GenKind::Alpha,
                Some('b') => GenKind::Beta,
                _ => return Err(Error::Malformed(format!("unknown letter `{tok}`"))),
            };
            let index: usize =
                name[1..].parse().map_err(|_| Error::Malformed(format!("bad generator index in `{tok}`")))?;
            let g = Generator { kind, index }.check(genus)?;
            w.push(g, exp);
        }
        Ok(w)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, k)) in self.runs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *k == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{k}")?;
            }
        }
        Ok(())
    }
}

/// `∏ [β_i^-1, α_i]`.
pub fn boundary_word(genus: usize) -> Result<FreeWord> {
    if genus < 1 {
        return Err(Error::BadGenus(genus));
    }
    let mut w = FreeWord::identity(genus);
    for i in 1..=genus {
        let block = FreeWord::beta(genus, i).inv().commutator(&FreeWord::alpha(genus, i))?;
        w.extend(&block);
    }
    Ok(w)
}

/// An endomorphism of the free group, given by the images of its generators.
#[derive(Clone, Debug)]
pub struct SurfaceEndo {
    genus: usize,
    images: Vec<FreeWord>,
    label: Option<String>,
}

impl PartialEq for SurfaceEndo {
    fn eq(&self, other: &Self) -> bool {
        self.genus == other.genus && self.images == other.images
    }
}

impl Eq for SurfaceEndo {}

impl SurfaceEndo {
    pub fn identity(genus: usize) -> Self {
        SurfaceEndo { genus, images: Generator::all(genus).map(|g| FreeWord::generator(genus, g).unwrap()).collect(), label: None }
    }

    /// Generators missing from `images` are fixed.
    pub fn from_images(genus: usize, images: impl IntoIterator<Item = (Generator, FreeWord)>) -> Result<Self> {
        if genus < 1 {
            return Err(Error::BadGenus(genus));
        }
        let mut e = SurfaceEndo::identity(genus);
        for (g, w) in images {
            g.check(genus)?;
            if w.genus != genus {
                return Err(Error::GenusMismatch(genus, w.genus));
            }
            e.images[g.slot(genus)] = w;
        }
        Ok(e)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn image(&self, g: Generator) -> &FreeWord {
        &self.images[g.slot(self.genus)]
    }

    pub fn images(&self) -> impl Iterator<Item = (Generator, &FreeWord)> {
        self.images.iter().enumerate().map(|(s, w)| (Generator::from_slot(s, self.genus), w))
    }

    pub fn is_identity(&self) -> bool {
        *self == SurfaceEndo::identity(self.genus)
    }

    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord> {
        if w.genus != self.genus {
            return Err(Error::GenusMismatch(self.genus, w.genus));
        }
        let mut out = FreeWord::identity(self.genus);
        for &(g, k) in &w.runs {
            out.extend(&self.image(g).pow(k));
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SurfaceEndo) -> Result<SurfaceEndo> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        let images = other.images.iter().map(|w| self.apply(w)).collect::<Result<_>>()?;
        Ok(SurfaceEndo { genus: self.genus, images, label: None })
    }

    /// `h(∂) ∂^-1`; trivial exactly for mapping classes.
    pub fn boundary_defect(&self) -> FreeWord {
        let b = boundary_word(self.genus).expect("genus checked at construction");
        self.apply(&b).unwrap().mul(&b.inv()).unwrap()
    }

    pub fn validate_mapping_class(&self) -> bool {
        self.boundary_defect().is_identity()
    }

    pub fn require_mapping_class(&self) -> Result<()> {
        let d = self.boundary_defect();
        if d.is_identity() {
            Ok(())
        } else {
            Err(Error::NotMappingClass(d.to_string()))
        }
    }

    /// Matrix of the induced map on `H` in the basis `a_1..a_g, b_1..b_g`;
    /// column `j` is the abelianized image of generator `j`.
    pub fn homology_matrix(&self) -> Vec<Vec<i64>> {
        let n = 2 * self.genus;
        let cols: Vec<Vec<i64>> = self.images.iter().map(|w| w.abelianize()).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
    }

    pub fn pow(&self, n: i64) -> Result<SurfaceEndo> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = SurfaceEndo::identity(self.genus);
        for _ in 0..n.unsigned_abs() {
            e = e.compose(&base)?;
        }
        Ok(e)
    }

    /// Inverse automorphism, found by length-reducing moves on the tuple of
    /// images: Nielsen moves first, Whitehead automorphisms when those stall.
    /// Fails if neither kind reduces the length before the tuple becomes a
    /// signed permutation of the generators (e.g. for a non-surjective map).
    pub fn inverse(&self) -> Result<SurfaceEndo> {
        let g = self.genus;
        let n = 2 * g;
        let mut u = self.images.clone();
        // invariant: left ∘ self ∘ right has images u
        let mut right = SurfaceEndo::identity(g);
        let mut left = SurfaceEndo::identity(g);
        let total = |u: &[FreeWord]| u.iter().map(|w| w.len()).sum::<usize>();
        loop {
            let cur = total(&u);
            if u.iter().all(|w| w.len() == 1) {
                break;
            }
            if let Some((i, j, eps, on_left)) = best_nielsen_move(&u, cur) {
                let vj = u[j].pow(eps);
                let ej = right.images[j].pow(eps);
                if on_left {
                    u[i] = vj.mul(&u[i])?;
                    right.images[i] = ej.mul(&right.images[i])?;
                } else {
                    u[i] = u[i].mul(&vj)?;
                    right.images[i] = right.images[i].mul(&ej)?;
                }
                continue;
            }
            match best_whitehead_move(g, &u, cur) {
                Some(phi) => {
                    u = u.iter().map(|w| phi.apply(w)).collect::<Result<_>>()?;
                    left = phi.compose(&left)?;
                }
                None => {
                    return Err(Error::NotInvertible(format!("no length-reducing move at total length {cur}")));
                }
            }
        }
        // u[i] = x_{p(i)}^{s_i}: with P(x_i) = u[i] we have self^-1 = right ∘ P^-1 ∘ left
        let mut pinv = vec![None; n];
        for (i, w) in u.iter().enumerate() {
            let (gen, s) = w.runs[0];
            let slot = gen.slot(g);
            if pinv[slot].is_some() {
                return Err(Error::NotInvertible("images are not a basis".into()));
            }
            pinv[slot] = Some(FreeWord::generator(g, Generator::from_slot(i, g))?.pow(s));
        }
        let pinv = SurfaceEndo { genus: g, images: pinv.into_iter().map(|w| w.expect("permutation")).collect(), label: None };
        right.compose(&pinv)?.compose(&left)
    }
}

fn best_nielsen_move(u: &[FreeWord], cur: usize) -> Option<(usize, usize, i64, bool)> {
    let mut best: Option<(usize, usize, usize, i64, bool)> = None;
    for i in 0..u.len() {
        for j in 0..u.len() {
            if i == j {
                continue;
            }
            for eps in [1i64, -1] {
                let vj = u[j].pow(eps);
                for on_left in [false, true] {
                    let cand = if on_left { vj.mul(&u[i]).unwrap() } else { u[i].mul(&vj).unwrap() };
                    let l = cur - u[i].len() + cand.len();
                    if l < cur && best.is_none_or(|b| l < b.0) {
                        best = Some((l, i, j, eps, on_left));
                    }
                }
            }
        }
    }
    best.map(|(_, i, j, e, s)| (i, j, e, s))
}

/// Whitehead automorphism `(A, a)`: letters are `(slot, ±1)`, `A` contains
/// `a` but not `a^-1`, and `x ↦ x a` when only `x` is in `A`,
/// `x ↦ a^-1 x` when only `x^-1` is, `a^-1 x a` when both are.
fn whitehead(genus: usize, a: (usize, i64), in_a: &dyn Fn(usize, i64) -> bool) -> SurfaceEndo {
    let aw = FreeWord::generator(genus, Generator::from_slot(a.0, genus)).unwrap().pow(a.1);
    let images = (0..2 * genus)
        .map(|s| {
            let x = FreeWord::generator(genus, Generator::from_slot(s, genus)).unwrap();
            if s == a.0 {
                return x;
            }
            let (p, m) = (in_a(s, 1), in_a(s, -1));
            let mut w = x;
            if m {
                w = aw.inv().mul(&w).unwrap();
            }
            if p {
                w = w.mul(&aw).unwrap();
            }
            w
        })
        .collect();
    SurfaceEndo { genus, images, label: None }
}

fn best_whitehead_move(genus: usize, u: &[FreeWord], cur: usize) -> Option<SurfaceEndo> {
    let n = 2 * genus;
    let mut best: Option<(usize, SurfaceEndo)> = None;
    for a_slot in 0..n {
        for a_sign in [1i64, -1] {
            // the other 2n-2 letters, each in or out of A
            let others: Vec<(usize, i64)> =
                (0..n).filter(|&s| s != a_slot).flat_map(|s| [(s, 1), (s, -1)]).collect();
            for mask in 0u64..(1u64 << others.len()) {
                if mask == 0 {
                    continue;
                }
                let in_a = |s: usize, e: i64| {
                    others.iter().position(|&o| o == (s, e)).is_some_and(|k| mask >> k & 1 == 1)
                };
                let phi = whitehead(genus, (a_slot, a_sign), &in_a);
                let l: usize = u.iter().map(|w| phi.apply(w).unwrap().len()).sum();
                if l < cur && best.as_ref().is_none_or(|b| l < b.0) {
                    best = Some((l, phi));
                }
            }
        }
    }
    best.map(|b| b.1)
}

impl fmt::Display for SurfaceEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().map(|(g, w)| format!("{g} -> {w}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

fn word(genus: usize, text: &str) -> FreeWord {
    FreeWord::parse(genus, text).expect("library word")
}

/// `t_{α_i}`: `β_i ↦ α_i^-1 β_i`.
pub fn t_alpha(genus: usize, i: usize) -> Result<SurfaceEndo> {
    if i < 1 || i > genus {
        return Err(Error::BadGenus(genus));
    }
    let img = FreeWord::alpha(genus, i).inv().mul(&FreeWord::beta(genus, i))?;
    SurfaceEndo::from_images(genus, [(Generator::beta(i), img)])
}

pub fn t_alpha_inv(genus: usize, i: usize) -> Result<SurfaceEndo> {
    if i < 1 || i > genus {
        return Err(Error::BadGenus(genus));
    }
    let img = FreeWord::alpha(genus, i).mul(&FreeWord::beta(genus, i))?;
    SurfaceEndo::from_images(genus, [(Generator::beta(i), img)])
}

fn kl_words(genus: usize, k: usize, l: usize) -> Result<(FreeWord, FreeWord)> {
    if !(1 <= k && k < l && l <= genus) {
        return Err(Error::BadGenus(genus));
    }
    let (ak, al) = (FreeWord::alpha(genus, k), FreeWord::alpha(genus, l));
    let lam = al.mul(&ak)?;
    let kappa = ak.inv().mul(&al.inv())?.mul(&ak)?.mul(&al)?;
    Ok((lam, kappa))
}

/// Twist about the curve around the feet of handles `k < l`, whose based
/// class is `λ = α_l α_k`. Handles strictly between `k` and `l` are
/// conjugated by `κ = α_k^-1 α_l^-1 α_k α_l`, and `β_l` picks up `κ^-1`
/// on the right; both are forced by the boundary relation.
pub fn t_alpha_pair(genus: usize, k: usize, l: usize) -> Result<SurfaceEndo> {
    let (lam, kappa) = kl_words(genus, k, l)?;
    let li = lam.inv();
    let mut im = vec![
        (Generator::alpha(k), FreeWord::alpha(genus, k).conj_by(&lam)?),
        (Generator::alpha(l), FreeWord::alpha(genus, l).conj_by(&lam)?),
        (Generator::beta(k), li.mul(&FreeWord::beta(genus, k))?),
        (Generator::beta(l), li.mul(&FreeWord::beta(genus, l))?.mul(&kappa.inv())?),
    ];
    for j in k + 1..l {
        for g in [Generator::alpha(j), Generator::beta(j)] {
            im.push((g, FreeWord::generator(genus, g)?.conj_by(&kappa.inv())?));
        }
    }
    SurfaceEndo::from_images(genus, im)
}

pub fn t_alpha_pair_inv(genus: usize, k: usize, l: usize) -> Result<SurfaceEndo> {
    let (lam, kappa) = kl_words(genus, k, l)?;
    let li = lam.inv();
    // s(κ) = λ κ λ^-1
    let sk = kappa.conj_by(&li)?;
    let mut im = vec![
        (Generator::alpha(k), FreeWord::alpha(genus, k).conj_by(&li)?),
        (Generator::alpha(l), FreeWord::alpha(genus, l).conj_by(&li)?),
        (Generator::beta(k), lam.mul(&FreeWord::beta(genus, k))?),
        (Generator::beta(l), lam.mul(&FreeWord::beta(genus, l))?.mul(&sk)?),
    ];
    for j in k + 1..l {
        for g in [Generator::alpha(j), Generator::beta(j)] {
            im.push((g, FreeWord::generator(genus, g)?.conj_by(&sk)?));
        }
    }
    SurfaceEndo::from_images(genus, im)
}

fn delta_lambda(genus: usize) -> FreeWord {
    // [α_1, β_1^-1]
    FreeWord::alpha(genus, 1).commutator(&FreeWord::beta(genus, 1).inv()).unwrap()
}

/// Twist about the curve around the first handle.
pub fn t_delta(genus: usize) -> Result<SurfaceEndo> {
    if genus < 1 {
        return Err(Error::BadGenus(genus));
    }
    let lam = delta_lambda(genus);
    SurfaceEndo::from_images(
        genus,
        [
            (Generator::alpha(1), FreeWord::alpha(genus, 1).conj_by(&lam)?),
            (Generator::beta(1), FreeWord::beta(genus, 1).conj_by(&lam)?),
        ],
    )
}

pub fn t_delta_inv(genus: usize) -> Result<SurfaceEndo> {
    if genus < 1 {
        return Err(Error::BadGenus(genus));
    }
    let li = delta_lambda(genus).inv();
    SurfaceEndo::from_images(
        genus,
        [
            (Generator::alpha(1), FreeWord::alpha(genus, 1).conj_by(&li)?),
            (Generator::beta(1), FreeWord::beta(genus, 1).conj_by(&li)?),
        ],
    )
}

fn eps_lambda(genus: usize) -> FreeWord {
    let g = genus;
    let head = word(g, &format!("b{g}^-1 a{g}^-1 b{g}"));
    let tail = FreeWord::alpha(g, g - 1).commutator(&FreeWord::beta(g, g - 1).inv()).unwrap();
    head.mul(&tail).unwrap()
}

/// `t_ε ∘ t_{α_g}^-1`, where ε runs around the last two handles.
pub fn t_eps_bar(genus: usize) -> Result<SurfaceEndo> {
    if genus < 2 {
        return Err(Error::BadGenus(genus));
    }
    let g = genus;
    let lam = eps_lambda(g);
    SurfaceEndo::from_images(
        g,
        [
            (Generator::beta(g), FreeWord::alpha(g, g).mul(&FreeWord::beta(g, g))?.mul(&lam)?),
            (Generator::alpha(g - 1), FreeWord::alpha(g, g - 1).conj_by(&lam)?),
            (Generator::beta(g - 1), FreeWord::beta(g, g - 1).conj_by(&lam)?),
        ],
    )
}

pub fn t_eps_bar_inv(genus: usize) -> Result<SurfaceEndo> {
    if genus < 2 {
        return Err(Error::BadGenus(genus));
    }
    let g = genus;
    let lam = eps_lambda(g);
    let li = lam.inv();
    SurfaceEndo::from_images(
        g,
        [
            (Generator::beta(g), FreeWord::alpha(g, g).inv().mul(&FreeWord::beta(g, g))?.mul(&li)?),
            (Generator::alpha(g - 1), FreeWord::alpha(g, g - 1).conj_by(&li)?),
            (Generator::beta(g - 1), FreeWord::beta(g, g - 1).conj_by(&li)?),
        ],
    )
}

/// Library name of `t_{α_kl}`: `t_a<k><l>`, or `t_a<k>_<l>` from genus 10
/// on, where `t_a12` already names a single twist.
pub fn pair_name(genus: usize, k: usize, l: usize) -> String {
    if genus < 10 {
        format!("t_a{k}{l}")
    } else {
        format!("t_a{k}_{l}")
    }
}

/// Names of the library generators (without inverses), in a stable order.
pub fn library_names(genus: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..=genus).map(|i| format!("t_a{i}")).collect();
    for k in 1..=genus {
        for l in k + 1..=genus {
            names.push(pair_name(genus, k, l));
        }
    }
    if genus >= 1 {
        names.push("t_d".into());
    }
    if genus >= 2 {
        names.push("t_e".into());
    }
    names
}

/// The built-in twists and their inverses (`<name>^-1`).
pub fn twist_library(genus: usize) -> BTreeMap<String, SurfaceEndo> {
    let mut lib = BTreeMap::new();
    if genus < 1 {
        return lib;
    }
    let mut add = |name: String, f: Result<SurfaceEndo>, finv: Result<SurfaceEndo>| {
        let inv_name = format!("{name}^-1");
        lib.insert(inv_name.clone(), finv.unwrap().with_label(inv_name));
        lib.insert(name.clone(), f.unwrap().with_label(name));
    };
    for i in 1..=genus {
        add(format!("t_a{i}"), t_alpha(genus, i), t_alpha_inv(genus, i));
    }
    for k in 1..=genus {
        for l in k + 1..=genus {
            add(pair_name(genus, k, l), t_alpha_pair(genus, k, l), t_alpha_pair_inv(genus, k, l));
        }
    }
    add("t_d".into(), t_delta(genus), t_delta_inv(genus));
    if genus >= 2 {
        add("t_e".into(), t_eps_bar(genus), t_eps_bar_inv(genus));
    }
    lib
}
