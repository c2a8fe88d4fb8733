use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torelli::acceptance::random_diagram;
use torelli::diagrams::*;
use torelli::johnson::{xi, DerivationElement};
use torelli::lie::{Alphabet, LieElement};
use torelli::surface::twist_library;
use torelli::{Error, Q};

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn leaf(i: usize) -> Tree {
    Tree::Leaf(i)
}

#[test]
fn y_tree_value() {
    let t = TreeDiagram::new(2, vec![Color::A(1), Color::B(1), Color::B(2)], 0, Tree::node(leaf(1), leaf(2))).unwrap();
    assert_eq!(t.a_deg(), 1);
    assert_eq!(t.to_string(), "tree(root=a1; [b1,b2])");
    let d = t.eta().unwrap();
    assert_eq!(d.to_string(), "(1)·a1⊗[b1,b2] + (1)·b1⊗[b2,a1] - (1)·b2⊗[b1,a1]");
    assert!(xi(&d).unwrap().is_zero());
    assert!(xi_of_eta_check(&t).unwrap());
}

#[test]
fn rerooting_keeps_the_diagram() {
    // cyclic order (a1, b1, b2) at the single vertex, presented from each leg
    let colors = vec![Color::A(1), Color::B(1), Color::B(2)];
    let t0 = TreeDiagram::new(2, colors.clone(), 0, Tree::node(leaf(1), leaf(2))).unwrap();
    let t1 = TreeDiagram::new(2, colors.clone(), 1, Tree::node(leaf(2), leaf(0))).unwrap();
    let t2 = TreeDiagram::new(2, colors, 2, Tree::node(leaf(0), leaf(1))).unwrap();
    assert_eq!(t0.eta().unwrap(), t1.eta().unwrap());
    assert_eq!(t0.eta().unwrap(), t2.eta().unwrap());
}

#[test]
fn struts() {
    let s = TreeDiagram::strut(1, Color::A(1), Color::A(1)).unwrap();
    assert!(s.is_strut());
    assert_eq!(s.to_string(), "strut(a1,a1)");
    assert_eq!(s.eta().unwrap().to_string(), "(2)·a1⊗a1");
    // a b-b strut has negative degree
    let bb = TreeDiagram::strut(1, Color::B(1), Color::B(1)).unwrap();
    assert_eq!(bb.a_deg(), -1);
    assert!(bb.eta().is_err());
    // an a-b strut has degree 0
    let ab = TreeDiagram::strut(1, Color::A(1), Color::B(1)).unwrap();
    assert_eq!(ab.eta().unwrap().level(), 0);
}

#[test]
fn malformed_diagrams_are_rejected() {
    assert!(TreeDiagram::new(1, vec![Color::A(1)], 0, leaf(0)).is_err());
    assert!(TreeDiagram::new(1, vec![Color::A(2), Color::A(1)], 0, leaf(1)).is_err());
    assert!(TreeDiagram::new(1, vec![Color::A(1), Color::A(1), Color::B(1)], 0, leaf(1)).is_err());
    assert!(Color::parse("c1").is_err());
    assert!(Color::parse("a").is_err());
    assert_eq!(Color::parse("b12").unwrap(), Color::B(12));
    let t = TreeDiagram::strut(1, Color::A(1), Color::A(1)).unwrap();
    assert!(DiagramElement::new(1, 2, vec![(q(1, 1), t)]).is_err());
}

#[test]
fn johnson_values_as_diagrams() {
    let lib = twist_library(2);
    let d = diagrammatic_tau_alt(&lib["t_a1"], 1).unwrap();
    assert_eq!(d.to_string(), "(-1/2)·strut(a1,a1)");
    let d = diagrammatic_tau_alt(&lib["t_a12"], 1).unwrap();
    assert_eq!(d.to_string(), "(-1/2)·strut(a1,a1) + (-1)·strut(a1,a2) + (-1/2)·strut(a2,a2)");
    assert!(diagrammatic_tau_alt(&lib["t_d"], 1).unwrap().is_zero());
    assert!(diagrammatic_tau_alt(&lib["t_e"], 1).unwrap().is_zero());
}

#[test]
fn non_symplectic_derivations_have_no_preimage() {
    let al = Alphabet::ba(2);
    let z = LieElement::zero(&al);
    let b12 = LieElement::sym(&al, "b1").bracket(&LieElement::sym(&al, "b2")).unwrap();
    let d = DerivationElement::new(2, 1, vec![b12, z.clone()], vec![z.clone(), z]).unwrap();
    assert!(matches!(eta_inverse(&d), Err(Error::NotInImage(_))));
    let zero = eta_inverse(&DerivationElement::zero(2, 2)).unwrap();
    assert!(zero.is_zero());
    assert_eq!(zero.to_string(), "0");
}

#[test]
fn from_lyndon_matches_brackets() {
    let al = Alphabet::ba(2);
    let w = al.parse_word("b1.b2.a1").unwrap();
    let t = TreeDiagram::from_lyndon(2, Color::B(1), &w).unwrap();
    assert_eq!(t.to_string(), "tree(root=b1; [b1,[b2,a1]])");
    assert_eq!(t.a_deg(), 2);
}

fn arb_diagram() -> impl Strategy<Value = TreeDiagram> {
    (any::<u64>(), 1usize..=3, 1usize..=4).prop_map(|(s, g, m)| random_diagram(&mut ChaCha8Rng::seed_from_u64(s), g, m))
}

fn internal_vertices(t: &Tree) -> usize {
    match t {
        Tree::Leaf(_) => 0,
        Tree::Node(x, y) => 1 + internal_vertices(x) + internal_vertices(y),
    }
}

/// Replaces the subtree `[x, [y, z]]` found at preorder vertex `k` by the
/// other two terms of the Jacobi relation, if it has that shape.
fn ihx(t: &Tree, k: &mut usize) -> Option<(Tree, Tree)> {
    match t {
        Tree::Leaf(_) => None,
        Tree::Node(x, yz) => {
            if *k == 0 {
                if let Tree::Node(y, z) = yz.as_ref() {
                    let (x, y, z) = ((**x).clone(), (**y).clone(), (**z).clone());
                    // [x,[y,z]] = [[x,y],z] + [y,[x,z]]
                    return Some((Tree::node(Tree::node(x.clone(), y.clone()), z.clone()), Tree::node(y, Tree::node(x, z))));
                }
                return None;
            }
            *k -= 1;
            if let Some((h, i)) = ihx(x, k) {
                return Some((Tree::Node(Box::new(h), yz.clone()), Tree::Node(Box::new(i), yz.clone())));
            }
            ihx(yz, k).map(|(h, i)| (Tree::Node(x.clone(), Box::new(h)), Tree::Node(x.clone(), Box::new(i))))
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eta_is_symplectic(t in arb_diagram()) {
        let d = t.eta().unwrap();
        prop_assert!(d.is_symplectic());
        prop_assert_eq!(d.level() as i64, t.a_deg());
    }

    #[test]
    fn antisymmetry(t in arb_diagram(), k in 0usize..8) {
        let n = internal_vertices(t.tree());
        prop_assume!(n > 0);
        let s = t.swap_at(k % n);
        prop_assert_eq!(s.eta().unwrap(), t.eta().unwrap().scale(&q(-1, 1)));
    }

    #[test]
    fn ihx_relation(t in arb_diagram(), k in 0usize..8) {
        let n = internal_vertices(t.tree());
        prop_assume!(n > 1);
        let mut at = k % n;
        let Some((h, x)) = ihx(t.tree(), &mut at) else { return Ok(()) };
        let mk = |tree: Tree| TreeDiagram::new(t.genus(), t.colors().to_vec(), t.root(), tree).unwrap();
        let sum = mk(h).eta().unwrap().add(&mk(x).eta().unwrap()).unwrap();
        prop_assert_eq!(t.eta().unwrap(), sum);
    }

    #[test]
    fn eta_inverse_round_trips(ts in prop::collection::vec((any::<u64>(), -3i64..=3), 1..4), g in 1usize..=3, m in 1usize..=4) {
        let terms: Vec<_> = ts.into_iter().map(|(s, c)| (q(c, 2), random_diagram(&mut ChaCha8Rng::seed_from_u64(s), g, m))).collect();
        let e = DiagramElement::new(g, m, terms).unwrap();
        let back = eta_inverse(e.eta()).unwrap();
        prop_assert_eq!(back.eta(), e.eta());
        prop_assert_eq!(&back, &e);
        let again = eta_inverse(back.eta()).unwrap();
        prop_assert_eq!(again.terms(), back.terms());
    }
}
