//! Johnson-type homomorphisms, filtration membership, and the group `G`
//! receiving `tau_0`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{DefectKind, Error, Result, Violation};
use crate::lie::{Alphabet, AlphabetKind, LieElement};
use crate::magnus::{Magnus, Target};
use crate::series::{class_of_log, Expansion, TensorSeries};
use crate::surface::{FreeWord, GenKind, Generator, SurfaceEndo};
use crate::Q;

/// `Σ a_i ⊗ a_part[i] + Σ b_i ⊗ b_part[i]` in `Lie(B;A)`, with `a_part`
/// of weight `level + 1` and `b_part` of weight `level + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationElement {
    genus: usize,
    level: usize,
    a_part: Vec<LieElement>,
    b_part: Vec<LieElement>,
    symplectic: bool,
}

fn check_parts(parts: &[LieElement], al: &Arc<Alphabet>, weight: usize) -> Result<()> {
    for p in parts {
        if p.alphabet() != al {
            return Err(Error::AlphabetMismatch);
        }
        if !p.is_homogeneous_of(weight) {
            return Err(Error::Malformed(format!("part {p} is not homogeneous of weight {weight}")));
        }
    }
    Ok(())
}

fn zip_parts(x: &[LieElement], y: &[LieElement], f: impl Fn(&LieElement, &LieElement) -> Result<LieElement>) -> Result<Vec<LieElement>> {
    x.iter().zip(y).map(|(u, v)| f(u, v)).collect()
}

impl DerivationElement {
    pub fn zero(genus: usize, level: usize) -> Self {
        let al = Alphabet::ba(genus);
        DerivationElement {
            genus,
            level,
            a_part: vec![LieElement::zero(&al); genus],
            b_part: vec![LieElement::zero(&al); genus],
            symplectic: true,
        }
    }

    /// Checks weights; the `symplectic` flag is computed. Level 0 occurs
    /// only as the image of `a`-`b` struts.
    pub fn new(genus: usize, level: usize, a_part: Vec<LieElement>, b_part: Vec<LieElement>) -> Result<Self> {
        if a_part.len() != genus || b_part.len() != genus {
            return Err(Error::Malformed(format!("need {genus} a- and b-parts")));
        }
        let al = Alphabet::ba(genus);
        check_parts(&a_part, &al, level + 1)?;
        check_parts(&b_part, &al, level + 2)?;
        let mut d = DerivationElement { genus, level, a_part, b_part, symplectic: false };
        d.symplectic = xi(&d)?.is_zero();
        Ok(d)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Value on `a_i` (1-based).
    pub fn a_part(&self, i: usize) -> &LieElement {
        &self.a_part[i - 1]
    }

    pub fn b_part(&self, i: usize) -> &LieElement {
        &self.b_part[i - 1]
    }

    pub fn a_parts(&self) -> &[LieElement] {
        &self.a_part
    }

    pub fn b_parts(&self) -> &[LieElement] {
        &self.b_part
    }

    pub fn is_symplectic(&self) -> bool {
        self.symplectic
    }

    pub fn is_zero(&self) -> bool {
        self.a_part.iter().chain(&self.b_part).all(|x| x.is_zero())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        if self.level != other.level {
            return Err(Error::BadLevel(other.level));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Self::new(self.genus, self.level, zip_parts(&self.a_part, &other.a_part, |u, v| u.add(v))?, zip_parts(&self.b_part, &other.b_part, |u, v| u.add(v))?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        DerivationElement {
            genus: self.genus,
            level: self.level,
            a_part: self.a_part.iter().map(|x| x.scale(c)).collect(),
            b_part: self.b_part.iter().map(|x| x.scale(c)).collect(),
            symplectic: self.symplectic,
        }
    }

    /// At level 1, the coefficients `n_ij` of `a_i ⊗ a_j`.
    pub fn aa_matrix(&self) -> Result<Vec<Vec<Q>>> {
        if self.level != 1 {
            return Err(Error::BadLevel(self.level));
        }
        let al = Alphabet::ba(self.genus);
        Ok(self
            .a_part
            .iter()
            .map(|x| (1..=self.genus).map(|j| x.coeff(&[al.a(j).unwrap()])).collect())
            .collect())
    }
}

/// Terms `c·x⊗[..]` as `-(1)·a1⊗a1 + (1/2)·b1⊗[b1,a2]`.
fn fmt_tensor(f: &mut fmt::Formatter<'_>, slots: &[(String, &LieElement)]) -> fmt::Result {
    let mut first = true;
    for (x, part) in slots {
        for (w, c) in part.terms() {
            let neg = c.is_negative();
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{sign}({})·{x}⊗{}", c.abs(), part.alphabet().bracket_text(w))?;
            first = false;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for DerivationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slots: Vec<(String, &LieElement)> = (1..=self.genus)
            .map(|i| (format!("a{i}"), &self.a_part[i - 1]))
            .chain((1..=self.genus).map(|i| (format!("b{i}"), &self.b_part[i - 1])))
            .collect();
        fmt_tensor(f, &slots)
    }
}

/// Derivation of `Lie(H)`: `Σ_x x ⊗ parts[x]` over `a_1..a_g, b_1..b_g`,
/// each part of weight `level + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalDerivation {
    genus: usize,
    level: usize,
    parts: Vec<LieElement>,
}

impl ClassicalDerivation {
    pub fn new(genus: usize, level: usize, parts: Vec<LieElement>) -> Result<Self> {
        if level < 1 {
            return Err(Error::BadLevel(level));
        }
        if parts.len() != 2 * genus {
            return Err(Error::Malformed(format!("need {} parts", 2 * genus)));
        }
        check_parts(&parts, &Alphabet::h(genus), level + 1)?;
        Ok(ClassicalDerivation { genus, level, parts })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn part(&self, g: Generator) -> &LieElement {
        &self.parts[g.slot(self.genus)]
    }

    pub fn parts(&self) -> &[LieElement] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for ClassicalDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slots: Vec<(String, &LieElement)> =
            Generator::all(self.genus).map(|g| (g.to_string(), &self.parts[g.slot(self.genus)])).collect();
        fmt_tensor(f, &slots)
    }
}

/// Derivation of `Lie(B)`: `Σ b_i ⊗ parts[i]`, parts of weight `level + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevineDerivation {
    genus: usize,
    level: usize,
    parts: Vec<LieElement>,
}

impl LevineDerivation {
    pub fn new(genus: usize, level: usize, parts: Vec<LieElement>) -> Result<Self> {
        if level < 1 {
            return Err(Error::BadLevel(level));
        }
        if parts.len() != genus {
            return Err(Error::Malformed(format!("need {genus} parts")));
        }
        check_parts(&parts, &Alphabet::b(genus), level + 1)?;
        Ok(LevineDerivation { genus, level, parts })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn part(&self, i: usize) -> &LieElement {
        &self.parts[i - 1]
    }

    pub fn parts(&self) -> &[LieElement] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for LevineDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slots: Vec<(String, &LieElement)> =
            (1..=self.genus).map(|i| (format!("b{i}"), &self.parts[i - 1])).collect();
        fmt_tensor(f, &slots)
    }
}

fn letter(al: &Arc<Alphabet>, s: String) -> LieElement {
    LieElement::sym(al, &s)
}

/// Bracket contraction `Σ [a_i, a_part(a_i)] + Σ [b_i, b_part(b_i)]`,
/// homogeneous of weight `level + 3`.
pub fn xi(d: &DerivationElement) -> Result<LieElement> {
    let al = Alphabet::ba(d.genus);
    let mut out = LieElement::zero(&al);
    for i in 1..=d.genus {
        out = out.add(&letter(&al, format!("a{i}")).bracket(&d.a_part[i - 1])?)?;
        out = out.add(&letter(&al, format!("b{i}")).bracket(&d.b_part[i - 1])?)?;
    }
    Ok(out)
}

/// `Σ_x [x, parts[x]]` in `Lie(H)`.
pub fn xi_classical(d: &ClassicalDerivation) -> Result<LieElement> {
    let al = Alphabet::h(d.genus);
    let mut out = LieElement::zero(&al);
    for g in Generator::all(d.genus) {
        out = out.add(&letter(&al, g.to_string()).bracket(&d.parts[g.slot(d.genus)])?)?;
    }
    Ok(out)
}

/// `Σ [b_i, parts[i]]` in `Lie(B)`.
pub fn xi_levine(d: &LevineDerivation) -> Result<LieElement> {
    let al = Alphabet::b(d.genus);
    let mut out = LieElement::zero(&al);
    for i in 1..=d.genus {
        out = out.add(&letter(&al, format!("b{i}")).bracket(&d.parts[i - 1])?)?;
    }
    Ok(out)
}

/// Default truncation for level `m`.
pub fn default_truncation(m: usize) -> usize {
    m + 3
}

fn require_kind(e: &Expansion, genus: usize, kind: AlphabetKind, need: usize) -> Result<()> {
    if e.genus() != genus {
        return Err(Error::GenusMismatch(genus, e.genus()));
    }
    if e.alphabet().kind() != kind {
        return Err(Error::Malformed(format!("expansion {} has the wrong alphabet here", e.kind())));
    }
    if e.truncation() < need {
        return Err(Error::Truncation { have: e.truncation(), need });
    }
    Ok(())
}

/// `log θ(h(x) x^-1)` for every generator, in slot order.
fn defect_logs(h: &SurfaceEndo, e: &Expansion) -> Result<Vec<TensorSeries>> {
    Generator::all(h.genus())
        .map(|x| {
            let xw = FreeWord::generator(h.genus(), x)?;
            e.evaluate_log(&h.image(x).mul(&xw.inv())?)
        })
        .collect()
}

/// `log θ'(h(α_i))` for every `i`.
fn handlebody_logs(h: &SurfaceEndo, e: &Expansion) -> Result<Vec<TensorSeries>> {
    (1..=h.genus()).map(|i| e.evaluate_log(h.image(Generator::alpha(i)))).collect()
}

/// Weight of the first nonzero slice, `None` if all vanish.
fn lowest(l: &TensorSeries) -> Option<usize> {
    l.lowest_positive_weight()
}

/// First violation of `h ∈ J^a_m`: `β_i`-defects must vanish below weight
/// `m + 1`, `α_i`-defects below `m + 2`.
pub fn check_alt(h: &SurfaceEndo, m: usize, e: &Expansion) -> Result<()> {
    require_kind(e, h.genus(), AlphabetKind::BA, m + 1)?;
    h.require_mapping_class()?;
    let logs = defect_logs(h, e)?;
    for x in Generator::all(h.genus()) {
        let need = if x.kind == GenKind::Beta { m + 1 } else { m + 2 };
        if let Some(k) = lowest(&logs[x.slot(h.genus())]) {
            if k < need {
                let slice = logs[x.slot(h.genus())].lie_slice(k)?.to_string();
                return Err(Error::Membership(Violation { generator: x.to_string(), kind: DefectKind::Generator, degree: k, slice }));
            }
        }
    }
    Ok(())
}

/// `h ∈ J^a_m`.
pub fn membership_alt(h: &SurfaceEndo, m: usize) -> Result<bool> {
    Ok(alt_depth(h, m)? == Some(m))
}

/// `h ∈ J_m`: every defect vanishes in weights `<= m`.
pub fn check_classical(h: &SurfaceEndo, m: usize, e: &Expansion) -> Result<()> {
    require_kind(e, h.genus(), AlphabetKind::H, m.max(1))?;
    h.require_mapping_class()?;
    let logs = defect_logs(h, e)?;
    first_violation(Generator::all(h.genus()).map(|x| (x.to_string(), &logs[x.slot(h.genus())])), m + 1, DefectKind::Generator)
}

pub fn membership_classical(h: &SurfaceEndo, m: usize) -> Result<bool> {
    Ok(classical_depth(h, m)? == m)
}

/// `h ∈ J^L_n`: `log θ'(h(α_i))` vanishes in weights `<= n`.
pub fn check_levine(h: &SurfaceEndo, n: usize, e: &Expansion) -> Result<()> {
    require_kind(e, h.genus(), AlphabetKind::B, n.max(1))?;
    h.require_mapping_class()?;
    let logs = handlebody_logs(h, e)?;
    first_violation((1..=h.genus()).map(|i| (format!("a{i}"), &logs[i - 1])), n + 1, DefectKind::Handlebody)
}

pub fn membership_levine(h: &SurfaceEndo, n: usize) -> Result<bool> {
    Ok(levine_depth(h, n)? == n)
}

fn first_violation<'a>(logs: impl Iterator<Item = (String, &'a TensorSeries)>, need: usize, kind: DefectKind) -> Result<()> {
    for (name, l) in logs {
        if let Some(k) = lowest(l) {
            if k < need {
                let slice = l.lie_slice(k)?.to_string();
                return Err(Error::Membership(Violation { generator: name, kind, degree: k, slice }));
            }
        }
    }
    Ok(())
}

/// Per-generator defects: exact logarithms under an expansion, or values of
/// the integer Magnus expansion. Both have the same lowest nonzero weight and
/// the same leading term, which is all the classes below use.
enum Defects {
    Rational(Vec<TensorSeries>),
    Integer(Magnus, Vec<Vec<i128>>),
}

impl Defects {
    /// Integer defects truncated at `t`, or `None` on overflow. Classical and
    /// alternative targets look at `h(x) x^-1` for every generator (slot
    /// order), the handlebody target at `h(α_i)`.
    fn integer(h: &SurfaceEndo, target: Target, t: usize) -> Option<Defects> {
        let mg = Magnus::new(h.genus(), target, t);
        let g = h.genus();
        let vals = match target {
            Target::Handlebody => (1..=g)
                .map(|i| mg.evaluate_quotient(h.image(Generator::alpha(i)), &FreeWord::identity(g)))
                .collect::<Option<Vec<_>>>()?,
            _ => Generator::all(g)
                .map(|x| mg.evaluate_quotient(h.image(x), &FreeWord::generator(g, x).expect("in range")))
                .collect::<Option<Vec<_>>>()?,
        };
        Some(Defects::Integer(mg, vals))
    }

    fn lowest(&self) -> Vec<Option<usize>> {
        match self {
            Defects::Rational(logs) => logs.iter().map(lowest).collect(),
            Defects::Integer(mg, vals) => vals.iter().map(|v| mg.words().lowest_positive_weight(v)).collect(),
        }
    }

    /// Lie class of defect `i` in weight `m`; a nonzero slice below `m` is a
    /// membership violation.
    fn class(&self, i: usize, m: usize, name: &str, kind: DefectKind) -> Result<LieElement> {
        match self {
            Defects::Rational(logs) => class_of_log(&logs[i], m, name, kind),
            Defects::Integer(mg, vals) => {
                let slice = |k: usize| LieElement::from_poly(mg.alphabet(), &mg.words().slice(&vals[i], k));
                if let Some(k) = mg.words().lowest_positive_weight(&vals[i]) {
                    if k < m {
                        let text = slice(k).map(|x| x.to_string()).unwrap_or_else(|_| "<not Lie>".into());
                        return Err(Error::Membership(Violation { generator: name.into(), kind, degree: k, slice: text }));
                    }
                }
                slice(m)
            }
        }
    }
}

fn magnus_lowest(h: &SurfaceEndo, target: Target, t: usize) -> Option<Vec<Option<usize>>> {
    Defects::integer(h, target, t).map(|d| d.lowest())
}

fn rational_lowest(logs: Vec<TensorSeries>) -> Vec<Option<usize>> {
    Defects::Rational(logs).lowest()
}

/// Largest `m <= cap` with `h ∈ J^a_m`, or `None` if `h` is not Lagrangian
/// (`J^a_0`).
pub fn alt_depth(h: &SurfaceEndo, cap: usize) -> Result<Option<usize>> {
    h.require_mapping_class()?;
    let t = cap + 1;
    let low = match magnus_lowest(h, Target::Alternative, t) {
        Some(v) => v,
        None => rational_lowest(defect_logs(h, &Expansion::alternative(h.genus(), t.max(2))?)?),
    };
    let mut depth = cap;
    for x in Generator::all(h.genus()) {
        let shift = if x.kind == GenKind::Beta { 1 } else { 2 };
        if let Some(k) = low[x.slot(h.genus())] {
            if k < shift {
                return Ok(None);
            }
            depth = depth.min(k - shift);
        }
    }
    Ok(Some(depth))
}

/// Largest `m <= cap` with `h ∈ J_m`.
pub fn classical_depth(h: &SurfaceEndo, cap: usize) -> Result<usize> {
    h.require_mapping_class()?;
    if cap == 0 {
        return Ok(0);
    }
    let low = match magnus_lowest(h, Target::Classical, cap) {
        Some(v) => v,
        None => rational_lowest(defect_logs(h, &Expansion::classical(h.genus(), cap)?)?),
    };
    Ok(low.into_iter().flatten().map(|k| k - 1).min().unwrap_or(cap).min(cap))
}

/// Largest `n <= cap` with `h ∈ J^L_n`.
pub fn levine_depth(h: &SurfaceEndo, cap: usize) -> Result<usize> {
    h.require_mapping_class()?;
    if cap == 0 {
        return Ok(0);
    }
    let low = match magnus_lowest(h, Target::Handlebody, cap) {
        Some(v) => v,
        None => rational_lowest(handlebody_logs(h, &Expansion::handlebody(h.genus(), cap)?)?),
    };
    Ok(low.into_iter().flatten().map(|k| k - 1).min().unwrap_or(cap).min(cap))
}

/// `τ^a_m(h)` with the default alternative expansion.
///
/// Computed exactly in machine integers through the Magnus kernel, falling
/// back to rational arithmetic on overflow.
pub fn tau_alt(h: &SurfaceEndo, m: usize) -> Result<DerivationElement> {
    if m < 1 {
        return Err(Error::BadLevel(m));
    }
    h.require_mapping_class()?;
    match Defects::integer(h, Target::Alternative, m + 2) {
        Some(d) => tau_alt_from(h.genus(), m, &d),
        None => tau_alt_with(h, m, &Expansion::alternative(h.genus(), default_truncation(m))?),
    }
}

/// `a_part(a_i)` is the class of `h(β_i) β_i^-1` in weight `m + 1`,
/// `b_part(b_i)` minus the class of `h(α_i) α_i^-1` in weight `m + 2`.
pub fn tau_alt_with(h: &SurfaceEndo, m: usize, e: &Expansion) -> Result<DerivationElement> {
    if m < 1 {
        return Err(Error::BadLevel(m));
    }
    require_kind(e, h.genus(), AlphabetKind::BA, m + 2)?;
    h.require_mapping_class()?;
    tau_alt_from(h.genus(), m, &Defects::Rational(defect_logs(h, e)?))
}

fn tau_alt_from(g: usize, m: usize, defects: &Defects) -> Result<DerivationElement> {
    let mut a_part = Vec::with_capacity(g);
    let mut b_part = Vec::with_capacity(g);
    for i in 1..=g {
        a_part.push(defects.class(Generator::beta(i).slot(g), m + 1, &format!("b{i}"), DefectKind::Generator)?);
    }
    for i in 1..=g {
        b_part.push(defects.class(Generator::alpha(i).slot(g), m + 2, &format!("a{i}"), DefectKind::Generator)?.neg());
    }
    let d = DerivationElement::new(g, m, a_part, b_part)?;
    if !d.symplectic {
        return Err(Error::Internal(format!("tau_alt value is not symplectic: {d}")));
    }
    Ok(d)
}

/// Integer kernel with a rational fallback, as for `tau_alt`.
pub fn tau_classical(h: &SurfaceEndo, m: usize) -> Result<ClassicalDerivation> {
    if m < 1 {
        return Err(Error::BadLevel(m));
    }
    h.require_mapping_class()?;
    match Defects::integer(h, Target::Classical, m + 1) {
        Some(d) => tau_classical_from(h.genus(), m, &d),
        None => tau_classical_with(h, m, &Expansion::classical(h.genus(), default_truncation(m))?),
    }
}

/// `parts[a_i]` is the class of `h(β_i) β_i^-1`, `parts[b_i]` minus the
/// class of `h(α_i) α_i^-1`, both in weight `m + 1` of `Lie(H)`.
pub fn tau_classical_with(h: &SurfaceEndo, m: usize, e: &Expansion) -> Result<ClassicalDerivation> {
    if m < 1 {
        return Err(Error::BadLevel(m));
    }
    require_kind(e, h.genus(), AlphabetKind::H, m + 1)?;
    h.require_mapping_class()?;
    tau_classical_from(h.genus(), m, &Defects::Rational(defect_logs(h, e)?))
}

fn tau_classical_from(g: usize, m: usize, defects: &Defects) -> Result<ClassicalDerivation> {
    let mut parts = Vec::with_capacity(2 * g);
    for i in 1..=g {
        parts.push(defects.class(Generator::beta(i).slot(g), m + 1, &format!("b{i}"), DefectKind::Generator)?);
    }
    for i in 1..=g {
        parts.push(defects.class(Generator::alpha(i).slot(g), m + 1, &format!("a{i}"), DefectKind::Generator)?.neg());
    }
    ClassicalDerivation::new(g, m, parts)
}

/// Integer kernel with a rational fallback, as for `tau_alt`.
pub fn tau_levine(h: &SurfaceEndo, n: usize) -> Result<LevineDerivation> {
    if n < 1 {
        return Err(Error::BadLevel(n));
    }
    h.require_mapping_class()?;
    match Defects::integer(h, Target::Handlebody, n + 1) {
        Some(d) => tau_levine_from(h.genus(), n, &d),
        None => tau_levine_with(h, n, &Expansion::handlebody(h.genus(), default_truncation(n))?),
    }
}

/// `parts[b_i]` is minus the class of `h(α_i)` in weight `n + 1` of `Lie(B)`.
pub fn tau_levine_with(h: &SurfaceEndo, n: usize, e: &Expansion) -> Result<LevineDerivation> {
    if n < 1 {
        return Err(Error::BadLevel(n));
    }
    require_kind(e, h.genus(), AlphabetKind::B, n + 1)?;
    h.require_mapping_class()?;
    tau_levine_from(h.genus(), n, &Defects::Rational(handlebody_logs(h, e)?))
}

fn tau_levine_from(g: usize, n: usize, defects: &Defects) -> Result<LevineDerivation> {
    let parts = (1..=g)
        .map(|i| Ok(defects.class(i - 1, n + 1, &format!("a{i}"), DefectKind::Handlebody)?.neg()))
        .collect::<Result<Vec<_>>>()?;
    LevineDerivation::new(g, n, parts)
}

pub type IntMatrix = Vec<Vec<i64>>;

fn identity_matrix(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
    let n = y.first().map_or(0, |r| r.len());
    x.iter().map(|row| (0..n).map(|j| row.iter().zip(y).map(|(a, r)| a * r[j]).sum()).collect()).collect()
}

fn transpose(x: &IntMatrix) -> IntMatrix {
    let n = x.first().map_or(0, |r| r.len());
    (0..n).map(|j| x.iter().map(|r| r[j]).collect()).collect()
}

/// Inverse of an integer matrix with determinant `±1`.
pub fn unimodular_inverse(x: &IntMatrix) -> Result<IntMatrix> {
    let n = x.len();
    let mut m: Vec<Vec<Q>> = x
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter().map(|&v| Q::from_integer(v.into())).chain((0..n).map(|j| if i == j { Q::one() } else { Q::zero() })).collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).ok_or_else(|| Error::NotInvertible("singular matrix".into()))?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for v in m[c].iter_mut() {
            *v /= &piv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let row_c = m[c].clone();
                for (v, w) in m[r].iter_mut().zip(row_c) {
                    *v -= &f * w;
                }
            }
        }
    }
    m.iter()
        .map(|r| {
            r[n..]
                .iter()
                .map(|v| {
                    if !v.is_integer() {
                        return Err(Error::NotInvertible("matrix is not unimodular".into()));
                    }
                    i64::try_from(v.to_integer()).map_err(|_| Error::NotInvertible("entry overflow".into()))
                })
                .collect()
        })
        .collect()
}

/// Action of `h` on `H` in the basis `a_1..a_g, b_1..b_g` (column `j` is
/// the image of basis vector `j`); checked to preserve the intersection form.
pub fn sigma_matrix(h: &SurfaceEndo) -> Result<IntMatrix> {
    let s = h.homology_matrix();
    let g = h.genus();
    let mut j = vec![vec![0i64; 2 * g]; 2 * g];
    for i in 0..g {
        j[i][g + i] = 1;
        j[g + i][i] = -1;
    }
    if mat_mul(&transpose(&s), &mat_mul(&j, &s)) != j {
        return Err(Error::Internal(format!("homology action of {} is not symplectic", h.label().unwrap_or("endo"))));
    }
    Ok(s)
}

/// `h★(A) ⊆ A`: the lower-left block of the homology matrix vanishes.
pub fn is_lagrangian(h: &SurfaceEndo) -> bool {
    let g = h.genus();
    let s = h.homology_matrix();
    (g..2 * g).all(|r| (0..g).all(|c| s[r][c] == 0))
}

/// `(R, μ)` with `R ∈ Aut(B)` and `μ: A → Λ²B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GElement {
    genus: usize,
    r: IntMatrix,
    mu: Vec<LieElement>,
}

impl GElement {
    pub fn identity(genus: usize) -> Self {
        let al = Alphabet::b(genus);
        GElement { genus, r: identity_matrix(genus), mu: vec![LieElement::zero(&al); genus] }
    }

    pub fn new(genus: usize, r: IntMatrix, mu: Vec<LieElement>) -> Result<Self> {
        if r.len() != genus || r.iter().any(|row| row.len() != genus) || mu.len() != genus {
            return Err(Error::Malformed(format!("G element of genus {genus} needs a {genus}x{genus} matrix and {genus} values")));
        }
        unimodular_inverse(&r)?;
        check_parts(&mu, &Alphabet::b(genus), 2)?;
        let x = GElement { genus, r, mu };
        if !x.satisfies_condition()? {
            return Err(Error::Malformed(format!("Σ_j [R(b_j), μ(a_j)] = {} is not zero", x.condition()?)));
        }
        Ok(x)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.r
    }

    /// `μ(a_j)`, 1-based.
    pub fn mu(&self, j: usize) -> &LieElement {
        &self.mu[j - 1]
    }

    pub fn mus(&self) -> &[LieElement] {
        &self.mu
    }

    pub fn is_identity(&self) -> bool {
        self.r == identity_matrix(self.genus) && self.mu.iter().all(|x| x.is_zero())
    }

    /// `R(b_j) = Σ_i R_ij b_i`.
    fn image_of_b(r: &IntMatrix, j: usize, al: &Arc<Alphabet>) -> LieElement {
        let mut x = LieElement::zero(al);
        for (i, row) in r.iter().enumerate() {
            if row[j] != 0 {
                let b = LieElement::letter(al, al.b_letter(i + 1).unwrap());
                x = x.add(&b.scale(&Q::from_integer(row[j].into()))).unwrap();
            }
        }
        x
    }

    /// `Λ²R`, i.e. substitution `b_j ↦ R(b_j)` on `Lie(B)`.
    fn push(r: &IntMatrix, x: &LieElement) -> Result<LieElement> {
        let al = x.alphabet().clone();
        let images: Vec<Option<LieElement>> = (0..r.len()).map(|j| Some(Self::image_of_b(r, j, &al))).collect();
        x.substitute(&al, &images)
    }

    /// `Σ_j [R(b_j), μ(a_j)]`, which vanishes on `G`.
    pub fn condition(&self) -> Result<LieElement> {
        let al = Alphabet::b(self.genus);
        let mut out = LieElement::zero(&al);
        for j in 0..self.genus {
            out = out.add(&Self::image_of_b(&self.r, j, &al).bracket(&self.mu[j])?)?;
        }
        Ok(out)
    }

    pub fn satisfies_condition(&self) -> Result<bool> {
        Ok(self.condition()?.is_zero())
    }
}

/// `(R1, μ)(R2, ν) = (R1 R2, a_j ↦ Λ²R1(ν(a_j)) + Σ_i P_ij μ(a_i))` with
/// `P = (R2^T)^-1` the action of the second factor on `A`.
pub fn g_mul(x: &GElement, y: &GElement) -> Result<GElement> {
    if x.genus != y.genus {
        return Err(Error::GenusMismatch(x.genus, y.genus));
    }
    let g = x.genus;
    let p = transpose(&unimodular_inverse(&y.r)?);
    let mut mu = Vec::with_capacity(g);
    for j in 0..g {
        let mut v = GElement::push(&x.r, &y.mu[j])?;
        for (i, row) in p.iter().enumerate() {
            if row[j] != 0 {
                v = v.add(&x.mu[i].scale(&Q::from_integer(row[j].into())))?;
            }
        }
        mu.push(v);
    }
    Ok(GElement { genus: g, r: mat_mul(&x.r, &y.r), mu })
}

/// `(R, μ)^-1 = (R^-1, a_j ↦ -Λ²R^-1(Σ_i R_ji μ(a_i)))`.
pub fn g_inv(x: &GElement) -> Result<GElement> {
    let g = x.genus;
    let ri = unimodular_inverse(&x.r)?;
    let al = Alphabet::b(g);
    let mut mu = Vec::with_capacity(g);
    for j in 0..g {
        let mut v = LieElement::zero(&al);
        for i in 0..g {
            if x.r[j][i] != 0 {
                v = v.add(&x.mu[i].scale(&Q::from_integer(x.r[j][i].into())))?;
            }
        }
        mu.push(GElement::push(&ri, &v)?.neg());
    }
    Ok(GElement { genus: g, r: ri, mu })
}

/// `τ^a_0(h) = (R, μ)`: `R` is the action on `B = H/A` and `μ(a_j)` the
/// weight-2 class of `h(α_j)` in the handlebody group.
pub fn tau0_alt(h: &SurfaceEndo) -> Result<GElement> {
    h.require_mapping_class()?;
    let g = h.genus();
    let s = sigma_matrix(h)?;
    if !is_lagrangian(h) {
        return Err(Error::NotLagrangian(format!("{} does not preserve A in homology", h.label().unwrap_or("endo"))));
    }
    let r: IntMatrix = (g..2 * g).map(|i| (g..2 * g).map(|j| s[i][j]).collect()).collect();
    let e = Expansion::handlebody(g, 2)?;
    let logs = handlebody_logs(h, &e)?;
    let mu = (1..=g)
        .map(|i| class_of_log(&logs[i - 1], 2, &format!("a{i}"), DefectKind::Handlebody))
        .collect::<Result<Vec<_>>>()?;
    GElement::new(g, r, mu).map_err(|e| Error::Internal(format!("tau_0 value is not in G: {e}")))
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.r.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "R = [{}]", rows.join("; "))?;
        for (j, m) in self.mu.iter().enumerate() {
            write!(f, ", mu(a{}) = {m}", j + 1)?;
        }
        Ok(())
    }
}

/// The letter substitution `Lie(B;A) → Lie(B)` killing every `a_i`.
pub fn forget_a(x: &LieElement) -> Result<LieElement> {
    let g = x.alphabet().genus();
    let src = x.alphabet();
    let tgt = Alphabet::b(g);
    let images: Vec<Option<LieElement>> = (0..src.len() as u8)
        .map(|l| {
            let s = src.symbol(l);
            s.starts_with('b').then(|| LieElement::sym(&tgt, s))
        })
        .collect();
    x.substitute(&tgt, &images)
}

/// Level `m` alternative derivation to level `m + 1` Levine derivation:
/// drop the `a`-part and kill `a_i` in the `b`-part.
pub fn iota_star(d: &DerivationElement) -> Result<LevineDerivation> {
    let parts = d.b_part.iter().map(forget_a).collect::<Result<Vec<_>>>()?;
    LevineDerivation::new(d.genus, d.level + 1, parts)
}

/// Common target of `p` and `q` at level 1: for each `a_i` a value in
/// `Λ²B`, and for each `b_i` the coefficients `c[i][l][k]` of `[a_l, b_k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelOneRecord {
    pub genus: usize,
    pub a_slot: Vec<LieElement>,
    pub b_slot: Vec<Vec<Vec<Q>>>,
}

impl fmt::Display for LevelOneRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, x) in self.a_slot.iter().enumerate() {
            if !x.is_zero() {
                parts.push(format!("a{} ⊗ ({x})", i + 1));
            }
        }
        for (i, m) in self.b_slot.iter().enumerate() {
            for (l, row) in m.iter().enumerate() {
                for (k, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        parts.push(format!("({c})·b{} ⊗ [a{},b{}]", i + 1, l + 1, k + 1));
                    }
                }
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn zero_cube(g: usize) -> Vec<Vec<Vec<Q>>> {
    vec![vec![vec![Q::zero(); g]; g]; g]
}

/// `p`: keep the `Λ²B` part of each `a_part`, and the mixed `[a, b]` part
/// of each `b_part` (dropping `Lie_3(B)`).
pub fn p_project(d: &DerivationElement) -> Result<LevelOneRecord> {
    if d.level != 1 {
        return Err(Error::BadLevel(d.level));
    }
    let g = d.genus;
    let al = Alphabet::ba(g);
    let a_slot = d.a_part.iter().map(forget_a).collect::<Result<Vec<_>>>()?;
    let mut b_slot = zero_cube(g);
    for (i, x) in d.b_part.iter().enumerate() {
        for (l, row) in b_slot[i].iter_mut().enumerate() {
            for (k, c) in row.iter_mut().enumerate() {
                // Lyndon word b_k a_l is [b_k, a_l] = -[a_l, b_k]
                let w = vec![al.b_letter(k + 1).unwrap(), al.a(l + 1).unwrap()];
                *c = -x.coeff(&w);
            }
        }
    }
    Ok(LevelOneRecord { genus: g, a_slot, b_slot })
}

/// `q`: kill `a` in the `a_i`-slot values, and keep the `a_l ∧ b_k`
/// coefficients of the `b_i`-slot values (modulo `Λ²A + Λ²B`).
pub fn q_project(c: &ClassicalDerivation) -> Result<LevelOneRecord> {
    if c.level != 1 {
        return Err(Error::BadLevel(c.level));
    }
    let g = c.genus;
    let h = Alphabet::h(g);
    let b = Alphabet::b(g);
    let images: Vec<Option<LieElement>> = (0..h.len() as u8)
        .map(|l| {
            let s = h.symbol(l);
            s.starts_with('b').then(|| LieElement::sym(&b, s))
        })
        .collect();
    let a_slot = (1..=g).map(|i| c.part(Generator::alpha(i)).substitute(&b, &images)).collect::<Result<Vec<_>>>()?;
    let mut b_slot = zero_cube(g);
    for i in 1..=g {
        let x = c.part(Generator::beta(i));
        for (l, row) in b_slot[i - 1].iter_mut().enumerate() {
            for (k, v) in row.iter_mut().enumerate() {
                *v = x.coeff(&[h.a(l + 1).unwrap(), h.b_letter(k + 1).unwrap()]);
            }
        }
    }
    Ok(LevelOneRecord { genus: g, a_slot, b_slot })
}
