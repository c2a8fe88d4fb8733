//! Structured-text (serde) forms of the values, and conversions back.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::diagrams::{eta_inverse, Color, DiagramElement, TreeDiagram};
use crate::error::{Error, Result};
use crate::johnson::{ClassicalDerivation, DerivationElement, GElement, LevineDerivation};
use crate::lie::{Alphabet, AlphabetKind, LieElement};
use crate::surface::{FreeWord, Generator, SurfaceEndo};
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDoc {
    pub num: String,
    pub den: String,
}

impl RationalDoc {
    pub fn of(q: &Q) -> Self {
        RationalDoc { num: q.numer().to_string(), den: q.denom().to_string() }
    }

    pub fn value(&self) -> Result<Q> {
        let p = |s: &str| s.parse::<BigInt>().map_err(|_| Error::Malformed(format!("bad integer `{s}`")));
        let den = p(&self.den)?;
        if den == BigInt::from(0) {
            return Err(Error::Malformed("zero denominator".into()));
        }
        Ok(Q::new(p(&self.num)?, den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetDoc {
    /// `H`, `BA` or `B`.
    pub kind: String,
    pub genus: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieTermDoc {
    /// Letters joined by `.`, e.g. `b1.a2`.
    pub word: String,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieDoc {
    pub alphabet: AlphabetDoc,
    pub terms: Vec<LieTermDoc>,
}

fn alphabet_doc(al: &Alphabet) -> Result<AlphabetDoc> {
    let kind = match al.kind() {
        AlphabetKind::H => "H",
        AlphabetKind::BA => "BA",
        AlphabetKind::B => "B",
        AlphabetKind::Custom => return Err(Error::Malformed("custom alphabets have no structured form".into())),
    };
    Ok(AlphabetDoc { kind: kind.into(), genus: al.genus() })
}

fn alphabet_of(d: &AlphabetDoc) -> Result<Arc<Alphabet>> {
    match d.kind.as_str() {
        "H" => Ok(Alphabet::h(d.genus)),
        "BA" => Ok(Alphabet::ba(d.genus)),
        "B" => Ok(Alphabet::b(d.genus)),
        k => Err(Error::Malformed(format!("unknown alphabet kind `{k}`"))),
    }
}

impl LieDoc {
    pub fn of(x: &LieElement) -> Result<Self> {
        let al = x.alphabet();
        let terms = x
            .terms()
            .iter()
            .map(|(w, c)| {
                let r = RationalDoc::of(c);
                LieTermDoc { word: al.word_text(w), num: r.num, den: r.den }
            })
            .collect();
        Ok(LieDoc { alphabet: alphabet_doc(al)?, terms })
    }

    pub fn value(&self) -> Result<LieElement> {
        let al = alphabet_of(&self.alphabet)?;
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((al.parse_word(&t.word)?, RationalDoc { num: t.num.clone(), den: t.den.clone() }.value()?)))
            .collect::<Result<Vec<_>>>()?;
        LieElement::from_terms(&al, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartDoc {
    pub gen: String,
    pub lie: LieDoc,
}

fn parts_doc(prefix: &str, parts: &[LieElement]) -> Result<Vec<PartDoc>> {
    parts.iter().enumerate().map(|(i, x)| Ok(PartDoc { gen: format!("{prefix}{}", i + 1), lie: LieDoc::of(x)? })).collect()
}

/// Values in the order of `names`; every name must appear exactly once.
fn parts_of(docs: &[PartDoc], names: &[String]) -> Result<Vec<LieElement>> {
    let mut by: BTreeMap<&str, &LieDoc> = BTreeMap::new();
    for d in docs {
        if by.insert(d.gen.as_str(), &d.lie).is_some() {
            return Err(Error::Malformed(format!("`{}` given twice", d.gen)));
        }
    }
    if by.len() != names.len() {
        return Err(Error::Malformed(format!("expected parts for {}", names.join(", "))));
    }
    names
        .iter()
        .map(|n| by.get(n.as_str()).ok_or_else(|| Error::Malformed(format!("missing part for `{n}`")))?.value())
        .collect()
}

fn names(prefix: &str, g: usize) -> Vec<String> {
    (1..=g).map(|i| format!("{prefix}{i}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationDoc {
    pub genus: usize,
    pub level: usize,
    pub a_part: Vec<PartDoc>,
    pub b_part: Vec<PartDoc>,
    pub symplectic: bool,
}

impl DerivationDoc {
    pub fn of(d: &DerivationElement) -> Result<Self> {
        Ok(DerivationDoc {
            genus: d.genus(),
            level: d.level(),
            a_part: parts_doc("a", d.a_parts())?,
            b_part: parts_doc("b", d.b_parts())?,
            symplectic: d.is_symplectic(),
        })
    }

    pub fn value(&self) -> Result<DerivationElement> {
        let g = self.genus;
        let d = DerivationElement::new(g, self.level, parts_of(&self.a_part, &names("a", g))?, parts_of(&self.b_part, &names("b", g))?)?;
        if d.is_symplectic() != self.symplectic {
            return Err(Error::Malformed("`symplectic` flag does not match the value".into()));
        }
        Ok(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalDoc {
    pub genus: usize,
    pub level: usize,
    pub parts: Vec<PartDoc>,
}

impl ClassicalDoc {
    pub fn of(d: &ClassicalDerivation) -> Result<Self> {
        let parts = Generator::all(d.genus())
            .map(|g| Ok(PartDoc { gen: g.to_string(), lie: LieDoc::of(d.part(g))? }))
            .collect::<Result<_>>()?;
        Ok(ClassicalDoc { genus: d.genus(), level: d.level(), parts })
    }

    pub fn value(&self) -> Result<ClassicalDerivation> {
        let n: Vec<String> = Generator::all(self.genus).map(|g| g.to_string()).collect();
        ClassicalDerivation::new(self.genus, self.level, parts_of(&self.parts, &n)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevineDoc {
    pub genus: usize,
    pub level: usize,
    pub parts: Vec<PartDoc>,
}

impl LevineDoc {
    pub fn of(d: &LevineDerivation) -> Result<Self> {
        Ok(LevineDoc { genus: d.genus(), level: d.level(), parts: parts_doc("b", d.parts())? })
    }

    pub fn value(&self) -> Result<LevineDerivation> {
        LevineDerivation::new(self.genus, self.level, parts_of(&self.parts, &names("b", self.genus))?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GElementDoc {
    pub genus: usize,
    #[serde(rename = "R")]
    pub r: Vec<Vec<i64>>,
    pub mu: Vec<PartDoc>,
}

impl GElementDoc {
    pub fn of(x: &GElement) -> Result<Self> {
        Ok(GElementDoc { genus: x.genus(), r: x.matrix().clone(), mu: parts_doc("a", x.mus())? })
    }

    pub fn value(&self) -> Result<GElement> {
        GElement::new(self.genus, self.r.clone(), parts_of(&self.mu, &names("a", self.genus))?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramTermDoc {
    pub coeff: RationalDoc,
    pub root_color: String,
    pub lyndon_word: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDoc {
    pub genus: usize,
    pub adeg: usize,
    pub terms: Vec<DiagramTermDoc>,
}

impl DiagramDoc {
    /// Written in the canonical presentation returned by `eta_inverse`.
    pub fn of(x: &DiagramElement) -> Result<Self> {
        let canon = eta_inverse(x.eta())?;
        let al = Alphabet::ba(x.genus());
        let terms = canon
            .terms()
            .iter()
            .map(|(c, t)| {
                let root = t.colors()[t.root()];
                let mut word = Vec::new();
                flatten(t.tree(), t.colors(), &al, &mut word)?;
                Ok(DiagramTermDoc { coeff: RationalDoc::of(c), root_color: root.to_string(), lyndon_word: al.word_text(&word) })
            })
            .collect::<Result<_>>()?;
        Ok(DiagramDoc { genus: x.genus(), adeg: x.adeg(), terms })
    }

    pub fn value(&self) -> Result<DiagramElement> {
        let al = Alphabet::ba(self.genus);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let w = al.parse_word(&t.lyndon_word)?;
                Ok((t.coeff.value()?, TreeDiagram::from_lyndon(self.genus, Color::parse(&t.root_color)?, &w)?))
            })
            .collect::<Result<Vec<_>>>()?;
        DiagramElement::new(self.genus, self.adeg, terms)
    }
}

fn flatten(t: &crate::diagrams::Tree, colors: &[Color], al: &Alphabet, out: &mut Vec<u8>) -> Result<()> {
    match t {
        crate::diagrams::Tree::Leaf(l) => {
            let s = colors[*l].to_string();
            out.push(al.index_of(&s).ok_or_else(|| Error::Malformed(format!("no letter {s}")))?);
        }
        crate::diagrams::Tree::Node(x, y) => {
            flatten(x, colors, al, out)?;
            flatten(y, colors, al, out)?;
        }
    }
    Ok(())
}

/// `{name, genus, images: {a1: "...", b1: "...", ...}}`; missing generators
/// are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoDoc {
    pub name: String,
    pub genus: usize,
    pub images: BTreeMap<String, String>,
}

impl EndoDoc {
    pub fn of(name: &str, e: &SurfaceEndo) -> Self {
        let images = e.images().map(|(g, w)| (g.to_string(), w.to_string())).collect();
        EndoDoc { name: name.into(), genus: e.genus(), images }
    }

    /// Parsed but not validated as a mapping class.
    pub fn value(&self) -> Result<SurfaceEndo> {
        let g = self.genus;
        let mut images = Vec::new();
        for (k, v) in &self.images {
            let gen = FreeWord::parse(g, k)?;
            let gen = match gen.runs() {
                [(x, 1)] => *x,
                _ => return Err(Error::Malformed(format!("`{k}` is not a generator"))),
            };
            images.push((gen, FreeWord::parse(g, v)?));
        }
        Ok(SurfaceEndo::from_images(g, images)?.with_label(&self.name))
    }
}
