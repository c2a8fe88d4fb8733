use torelli::diagrams::{diagrammatic_tau_alt, Color, DiagramElement, TreeDiagram};
use torelli::johnson::{tau0_alt, tau_alt, tau_classical, tau_levine, GElement};
use torelli::lie::{Alphabet, LieElement};
use torelli::schema::*;
use torelli::surface::{twist_library, SurfaceEndo};
use torelli::Q;

fn round<T: serde::Serialize + serde::de::DeserializeOwned>(x: &T) -> T {
    serde_json::from_str(&serde_json::to_string(x).unwrap()).unwrap()
}

#[test]
fn rationals() {
    let q = Q::new((-3).into(), 4.into());
    let d = RationalDoc::of(&q);
    assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"num":"-3","den":"4"}"#);
    assert_eq!(round(&d).value().unwrap(), q);
    assert!(RationalDoc { num: "1".into(), den: "0".into() }.value().is_err());
    assert!(RationalDoc { num: "x".into(), den: "1".into() }.value().is_err());
}

#[test]
fn lie_elements() {
    let al = Alphabet::ba(2);
    let x = LieElement::sym(&al, "b1").bracket(&LieElement::sym(&al, "a2")).unwrap().scale(&Q::new(5.into(), 3.into()));
    let d = LieDoc::of(&x).unwrap();
    assert_eq!(d.terms[0].word, "b1.a2");
    assert_eq!(round(&d).value().unwrap(), x);
    let mut bad = d.clone();
    bad.terms[0].word = "a2.b1".into();
    assert!(bad.value().is_err(), "non-Lyndon words are rejected");
    bad.alphabet.kind = "Q".into();
    assert!(bad.value().is_err());
}

#[test]
fn derivations() {
    for g in 1..=3 {
        for (name, h) in twist_library(g) {
            let d = tau_alt(&h, 1).unwrap();
            let doc = DerivationDoc::of(&d).unwrap();
            assert_eq!(round(&doc).value().unwrap(), d, "{name}");
            let c = tau_classical(&h, 1);
            if let Ok(c) = c {
                assert_eq!(round(&ClassicalDoc::of(&c).unwrap()).value().unwrap(), c);
            }
            let l = tau_levine(&h, 2).unwrap();
            assert_eq!(round(&LevineDoc::of(&l).unwrap()).value().unwrap(), l);
        }
    }
}

#[test]
fn derivation_flag_is_checked() {
    let d = tau_alt(&twist_library(2)["t_a1"], 1).unwrap();
    let mut doc = DerivationDoc::of(&d).unwrap();
    assert!(doc.symplectic);
    doc.symplectic = false;
    assert!(doc.value().is_err());
    let mut doc = DerivationDoc::of(&d).unwrap();
    doc.a_part.pop();
    assert!(doc.value().is_err());
}

#[test]
fn g_elements() {
    let x = tau0_alt(&twist_library(2)["t_a12"]).unwrap();
    let doc = GElementDoc::of(&x).unwrap();
    let text = serde_json::to_string(&doc).unwrap();
    assert!(text.contains(r#""R":[[1,0],[0,1]]"#));
    assert_eq!(round(&doc).value().unwrap(), x);
    assert!(GElementDoc { genus: 1, r: vec![vec![3]], mu: doc.mu[..1].to_vec() }.value().is_err());
    let _: GElement = doc.value().unwrap();
}

#[test]
fn diagrams_are_written_canonically() {
    let d = diagrammatic_tau_alt(&twist_library(2)["t_a12"], 1).unwrap();
    let doc = DiagramDoc::of(&d).unwrap();
    assert_eq!(doc.terms.len(), 3);
    assert_eq!(doc.terms[0].root_color, "a1");
    assert_eq!(doc.terms[0].lyndon_word, "a1");
    assert_eq!(round(&doc).value().unwrap(), d);
    // a non-canonical presentation writes the same document
    let s = TreeDiagram::strut(2, Color::A(1), Color::A(1)).unwrap();
    let e = DiagramElement::new(2, 1, vec![(Q::new((-1).into(), 4.into()), s.clone()), (Q::new((-1).into(), 4.into()), s)]).unwrap();
    let f = diagrammatic_tau_alt(&twist_library(2)["t_a1"], 1).unwrap();
    assert_eq!(DiagramDoc::of(&e).unwrap(), DiagramDoc::of(&f).unwrap());
}

#[test]
fn endomorphisms() {
    let h = twist_library(2)["t_e"].clone();
    let doc = EndoDoc::of("t_e", &h);
    let back: SurfaceEndo = round(&doc).value().unwrap();
    assert_eq!(back.label(), Some("t_e"));
    assert!(back.images().all(|(g, w)| h.image(g) == w));
    let bad = EndoDoc { name: "x".into(), genus: 1, images: [("a1 b1".to_string(), "a1".to_string())].into() };
    assert!(bad.value().is_err());
    let missing = EndoDoc { name: "id".into(), genus: 2, images: Default::default() };
    assert!(missing.value().unwrap().is_identity());
}
