use proptest::prelude::*;
use torelli::surface::*;

fn w(g: usize, s: &str) -> FreeWord {
    FreeWord::parse(g, s).unwrap()
}

#[test]
fn reduce_examples() {
    assert!(w(2, "a1 a1^-1").is_identity());
    assert_eq!(w(2, "b2 a1 a1^-1 b2"), w(2, "b2 b2"));
    assert_eq!(w(2, "b2 a1 a1^-1 b2").to_string(), "b2^2");
    assert_eq!(w(2, "a1 b1 a1^-1").to_string(), "a1 b1 a1^-1");
    assert!(FreeWord::parse(2, "a3").is_err());
    assert!(FreeWord::from_runs(1, [(Generator::beta(2), 1)]).is_err());
}

#[test]
fn group_operation_examples() {
    let a1 = FreeWord::alpha(2, 1);
    assert!(a1.mul(&a1.inv()).unwrap().is_identity());
    assert!(a1.commutator(&a1).unwrap().is_identity());
    let b1i = FreeWord::beta(2, 1).inv();
    assert_eq!(b1i.commutator(&a1).unwrap(), w(2, "b1^-1 a1 b1 a1^-1"));
    assert!(a1.mul(&FreeWord::alpha(3, 1)).is_err());
}

#[test]
fn boundary_word_examples() {
    assert_eq!(boundary_word(1).unwrap(), w(1, "b1^-1 a1 b1 a1^-1"));
    assert_eq!(boundary_word(2).unwrap(), w(2, "b1^-1 a1 b1 a1^-1 b2^-1 a2 b2 a2^-1"));
    assert!(boundary_word(0).is_err());
}

#[test]
fn apply_examples() {
    let t = t_alpha(2, 1).unwrap();
    assert_eq!(t.apply(&FreeWord::beta(2, 1)).unwrap(), w(2, "a1^-1 b1"));
    assert_eq!(t.apply(&FreeWord::alpha(2, 2)).unwrap(), FreeWord::alpha(2, 2));
    let x = w(2, "a1 b2^-1 a2 b1 b1");
    assert_eq!(SurfaceEndo::identity(2).apply(&x).unwrap(), x);
}

#[test]
fn compose_examples() {
    let lib = twist_library(2);
    let ta = &lib["t_a1"];
    assert_eq!(ta.compose(&SurfaceEndo::identity(2)).unwrap(), *ta);
    assert!(ta.compose(&lib["t_a1^-1"]).unwrap().is_identity());
    let lam = w(2, "a1 b1^-1 a1^-1 b1");
    let lami = lam.inv();
    let td = &lib["t_d"];
    let sq = td.compose(td).unwrap();
    let expect = lami.mul(&lami).unwrap().mul(&FreeWord::beta(2, 1)).unwrap().mul(&lam).unwrap().mul(&lam).unwrap();
    assert_eq!(*sq.image(Generator::beta(1)), expect);
}

#[test]
fn validate_examples() {
    assert!(t_alpha(2, 1).unwrap().validate_mapping_class());
    assert!(t_delta(2).unwrap().validate_mapping_class());
    let bad = SurfaceEndo::from_images(2, [(Generator::beta(1), FreeWord::alpha(2, 1))]).unwrap();
    assert!(!bad.validate_mapping_class());
    assert!(bad.require_mapping_class().is_err());
}

#[test]
fn library_images_match_closed_forms() {
    let g = 2;
    let lib = twist_library(g);
    let lam = w(g, "a2 a1");
    let t = &lib["t_a12"];
    assert_eq!(*t.image(Generator::alpha(1)), FreeWord::alpha(g, 1).conj_by(&lam).unwrap());
    assert_eq!(*t.image(Generator::alpha(2)), FreeWord::alpha(g, 2).conj_by(&lam).unwrap());
    assert_eq!(*t.image(Generator::beta(1)), lam.inv().mul(&FreeWord::beta(g, 1)).unwrap());

    let lam = w(g, "a1 b1^-1 a1^-1 b1");
    let t = &lib["t_d"];
    assert_eq!(*t.image(Generator::alpha(1)), FreeWord::alpha(g, 1).conj_by(&lam).unwrap());
    assert_eq!(*t.image(Generator::beta(1)), FreeWord::beta(g, 1).conj_by(&lam).unwrap());
    assert_eq!(*t.image(Generator::alpha(2)), FreeWord::alpha(g, 2));

    let lam = w(g, "b2^-1 a2^-1 b2 a1 b1^-1 a1^-1 b1");
    let t = &lib["t_e"];
    assert_eq!(*t.image(Generator::alpha(2)), FreeWord::alpha(g, 2));
    assert_eq!(*t.image(Generator::beta(2)), w(g, "a2 b2").mul(&lam).unwrap());
    assert_eq!(*t.image(Generator::alpha(1)), FreeWord::alpha(g, 1).conj_by(&lam).unwrap());
    assert_eq!(*t.image(Generator::beta(1)), FreeWord::beta(g, 1).conj_by(&lam).unwrap());
}

#[test]
fn intermediate_handles_are_conjugated() {
    let t = t_alpha_pair(3, 1, 3).unwrap();
    assert_eq!(t.image(Generator::alpha(2)).to_string(), "a1^-1 a3^-1 a1 a3 a2 a3^-1 a1^-1 a3 a1");
}

#[test]
fn library_entries_are_mapping_classes_with_inverses() {
    for g in 1..=4 {
        let lib = twist_library(g);
        assert_eq!(lib.len(), 2 * library_names(g).len());
        for (name, e) in &lib {
            assert!(e.validate_mapping_class(), "{name} at genus {g}");
            if name.ends_with("^-1") {
                continue;
            }
            let inv = &lib[&format!("{name}^-1")];
            assert!(e.compose(inv).unwrap().is_identity(), "{name} at genus {g}");
            assert!(inv.compose(e).unwrap().is_identity(), "{name} at genus {g}");
            assert_eq!(e.inverse().unwrap(), *inv, "Nielsen inverse of {name} at genus {g}");
        }
    }
}

#[test]
fn library_sizes() {
    assert_eq!(library_names(1), vec!["t_a1", "t_d"]);
    assert_eq!(library_names(2), vec!["t_a1", "t_a2", "t_a12", "t_d", "t_e"]);
    assert!(!twist_library(1).contains_key("t_e"));
}

#[test]
fn non_surjective_endo_has_no_inverse() {
    let f = SurfaceEndo::from_images(1, [(Generator::alpha(1), w(1, "a1^2"))]).unwrap();
    assert!(f.inverse().is_err());
}

#[test]
fn homology_matrix_of_t_a1() {
    let m = t_alpha(2, 1).unwrap().homology_matrix();
    let mut id = vec![vec![0i64; 4]; 4];
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = 1;
    }
    id[0][2] = -1;
    assert_eq!(m, id);
}

fn arb_word(g: usize, max: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0..2 * g, prop::bool::ANY), 0..max).prop_map(move |v| {
        FreeWord::from_runs(g, v.into_iter().map(|(s, e)| (Generator::from_slot(s, g), if e { 1 } else { -1 }))).unwrap()
    })
}

fn arb_lib_word(g: usize, max: usize) -> impl Strategy<Value = SurfaceEndo> {
    let lib: Vec<SurfaceEndo> = twist_library(g).into_values().collect();
    prop::collection::vec(0..lib.len(), 1..max).prop_map(move |ix| {
        ix.iter().fold(SurfaceEndo::identity(g), |acc, &i| acc.compose(&lib[i]).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn group_axioms(x in arb_word(3, 12), y in arb_word(3, 12), z in arb_word(3, 12)) {
        let r = FreeWord::from_runs(3, x.runs().iter().copied()).unwrap();
        prop_assert_eq!(&r, &x);
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert!(x.mul(&x.inv()).unwrap().is_identity());
        prop_assert_eq!(x.mul(&FreeWord::identity(3)).unwrap(), x.clone());
        let c = x.commutator(&y).unwrap();
        prop_assert_eq!(c, x.mul(&y).unwrap().mul(&x.inv().mul(&y.inv()).unwrap()).unwrap());
        prop_assert_eq!(x.len(), x.letters().count());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apply_is_a_homomorphism(f in arb_lib_word(2, 4), u in arb_word(2, 10), v in arb_word(2, 10)) {
        let lhs = f.apply(&u.mul(&v).unwrap()).unwrap();
        let rhs = f.apply(&u).unwrap().mul(&f.apply(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(f.validate_mapping_class());
    }

    #[test]
    fn nielsen_inverse_of_products(f in arb_lib_word(2, 6)) {
        let inv = f.inverse().unwrap();
        prop_assert!(f.compose(&inv).unwrap().is_identity());
        prop_assert!(inv.compose(&f).unwrap().is_identity());
    }

    #[test]
    fn inverse_of_products_genus_three(f in arb_lib_word(3, 4)) {
        let inv = f.inverse().unwrap();
        prop_assert!(f.compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn words_parse_back(x in arb_word(3, 15)) {
        prop_assert_eq!(FreeWord::parse(3, &x.to_string()).unwrap(), x);
    }
}
