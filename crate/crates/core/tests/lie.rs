#![allow(clippy::needless_range_loop)]
use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;
use torelli::lie::*;
use torelli::{Error, Q};

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn sym(al: &Arc<Alphabet>, s: &str) -> LieElement {
    LieElement::sym(al, s)
}

/// Dimension of each weight of the free Lie algebra, from
/// `Σ_{d | m} d · dim_d = m · [t^m] Σ_k f(t)^k / k` where `f` counts letters
/// by weight.
fn graded_witt(al: &Alphabet, max: usize) -> Vec<usize> {
    let mut f = vec![q(0); max + 1];
    for l in 0..al.len() as u8 {
        f[al.weight_of(l)] += q(1);
    }
    let mut log = vec![q(0); max + 1];
    let mut pow = f.clone();
    for k in 1..=max {
        for m in 0..=max {
            log[m] += &pow[m] / q(k as i64);
        }
        let mut next = vec![q(0); max + 1];
        for i in 0..=max {
            for j in 0..=max - i {
                next[i + j] += &pow[i] * &f[j];
            }
        }
        pow = next;
    }
    let mut dims = vec![0usize; max + 1];
    for m in 1..=max {
        let mut d = &log[m] * q(m as i64);
        for e in 1..m {
            if m % e == 0 {
                d -= q((e * dims[e]) as i64);
            }
        }
        let d = d / q(m as i64);
        assert!(d.is_integer());
        dims[m] = d.to_integer().try_into().unwrap();
    }
    dims
}

/// Rank of a set of polynomials over `Q`.
fn rank(polys: &[Poly]) -> usize {
    let mut rows: Vec<Poly> = Vec::new();
    for p in polys {
        let mut p = p.clone();
        for r in &rows {
            let (lead, c) = r.iter().next().unwrap();
            if let Some(x) = p.get(lead).cloned() {
                let f = x / c;
                for (w, d) in r {
                    let e = p.entry(w.clone()).or_insert_with(Q::zero);
                    *e -= &f * d;
                }
                p.retain(|_, v| !v.is_zero());
            }
        }
        if !p.is_empty() {
            rows.push(p);
            rows.sort_by(|a, b| a.keys().next().cmp(&b.keys().next()));
        }
    }
    rows.len()
}

/// All right-normed brackets `[x1, [x2, .. xk]]` of the given weight.
fn right_normed(al: &Arc<Alphabet>, m: usize) -> Vec<LieElement> {
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for l in 0..al.len() as u8 {
        let w = al.weight_of(l);
        if w == m {
            out.push(LieElement::letter(al, l));
        } else if w < m {
            for r in right_normed(al, m - w) {
                out.push(LieElement::letter(al, l).bracket(&r).unwrap());
            }
        }
    }
    out
}

#[test]
fn lyndon_words_and_factorization() {
    assert!(is_lyndon(&[0, 1]));
    assert!(is_lyndon(&[0, 0, 1]));
    assert!(is_lyndon(&[0, 1, 1]));
    assert!(!is_lyndon(&[1, 0]));
    assert!(!is_lyndon(&[0, 1, 0, 1]));
    assert!(!is_lyndon(&[]));
    assert_eq!(standard_factorization(&[0, 0, 1]), (&[0u8][..], &[0u8, 1][..]));
    assert_eq!(standard_factorization(&[0, 1, 1]), (&[0u8, 1][..], &[1u8][..]));
    assert_eq!(standard_factorization(&[0, 1, 0, 1, 1]), (&[0u8, 1][..], &[0u8, 1, 1][..]));
}

#[test]
fn basis_sizes_match_witt() {
    for g in 1..=3 {
        for al in [Alphabet::h(g), Alphabet::ba(g), Alphabet::b(g)] {
            let max = if g == 3 { 5 } else { 6 };
            let dims = graded_witt(&al, max);
            for (m, &dim) in dims.iter().enumerate().skip(1) {
                assert_eq!(lyndon_basis(&al, m).len(), dim, "{:?} genus {g} weight {m}", al.kind());
            }
        }
    }
    // two letters of weight 1: 2, 1, 2, 3, 6, 9
    let dims: Vec<_> = (1..=6).map(|m| lyndon_basis(&Alphabet::b(2), m).len()).collect();
    assert_eq!(dims, vec![2, 1, 2, 3, 6, 9]);
}

#[test]
fn basis_spans_all_brackets() {
    for al in [Alphabet::h(1), Alphabet::ba(2), Alphabet::b(3)] {
        for m in 1..=4 {
            let polys: Vec<Poly> = right_normed(&al, m).iter().map(|x| x.to_poly()).collect();
            assert_eq!(rank(&polys), lyndon_basis(&al, m).len(), "{:?} weight {m}", al.kind());
            let basis: Vec<Poly> =
                lyndon_basis(&al, m).into_iter().map(|w| LieElement::basis(&al, w, q(1)).unwrap().to_poly()).collect();
            assert_eq!(rank(&basis), basis.len(), "Lyndon polynomials are independent");
        }
    }
}

#[test]
fn letter_order_in_the_mixed_alphabet() {
    let al = Alphabet::ba(2);
    assert_eq!(al.symbol(0), "b1");
    assert_eq!(al.symbol(2), "a1");
    assert_eq!(al.weight_of(al.index_of("a2").unwrap()), 2);
    // b1 < a1, so [a1, b1] = -[b1, a1]
    let x = sym(&al, "a1").bracket(&sym(&al, "b1")).unwrap();
    assert_eq!(x.coeff(&[0, 2]), q(-1));
    assert_eq!(x.to_string(), "(-1)·[b1,a1]");
    assert_eq!(x.weights(), vec![3]);
}

#[test]
fn text_round_trip() {
    let al = Alphabet::h(2);
    let w = al.parse_word("a1.a1.b2").unwrap();
    assert_eq!(al.word_text(&w), "a1.a1.b2");
    assert_eq!(al.bracket_text(&w), "[a1,[a1,b2]]");
    assert!(al.parse_word("a1.c3").is_err());
}

#[test]
fn from_poly_rejects_non_lie() {
    let al = Alphabet::h(1);
    let mut p = Poly::new();
    p.insert(vec![0, 1], q(1));
    assert!(matches!(LieElement::from_poly(&al, &p), Err(Error::NotPrimitive(_))));
    p.insert(vec![1, 0], q(-1));
    let x = LieElement::from_poly(&al, &p).unwrap();
    assert_eq!(x, sym(&al, "a1").bracket(&sym(&al, "b1")).unwrap());
    assert!(is_primitive(&p));
}

#[test]
fn non_lyndon_basis_word_is_rejected() {
    let al = Alphabet::h(1);
    assert!(LieElement::basis(&al, vec![1, 0], q(1)).is_err());
}

#[test]
fn mixing_alphabets_fails() {
    let x = sym(&Alphabet::h(1), "a1");
    let y = sym(&Alphabet::ba(1), "a1");
    assert!(matches!(x.add(&y), Err(Error::AlphabetMismatch)));
    assert!(x.bracket(&y).is_err());
}

#[test]
fn substitution_is_a_lie_map() {
    // H -> BA forgetting nothing: a_i ↦ [b_i, b_j] must be weight 1, so it fails
    let h = Alphabet::h(2);
    let ba = Alphabet::ba(2);
    let bad: Vec<Option<LieElement>> =
        (0..h.len()).map(|_| Some(sym(&ba, "b1").bracket(&sym(&ba, "b2")).unwrap())).collect();
    assert!(matches!(sym(&h, "a1").substitute(&ba, &bad), Err(Error::WeightIncompatible { .. })));

    // B(2) -> B(2) swapping the letters
    let b = Alphabet::b(2);
    let swap = vec![Some(sym(&b, "b2")), Some(sym(&b, "b1"))];
    let x = sym(&b, "b1").bracket(&sym(&b, "b1").bracket(&sym(&b, "b2")).unwrap()).unwrap();
    let y = sym(&b, "b2").bracket(&sym(&b, "b2").bracket(&sym(&b, "b1")).unwrap()).unwrap();
    assert_eq!(x.substitute(&b, &swap).unwrap(), y);
    // killing b2
    let kill = vec![Some(sym(&b, "b1")), None];
    assert!(x.substitute(&b, &kill).unwrap().is_zero());
}

#[test]
fn omega_prime_value() {
    let o = omega_prime(2).unwrap();
    assert_eq!(o.to_string(), "(-1)·[b1,a1] + (-1)·[b2,a2]");
    assert!(omega_prime(0).is_err());
}

fn arb_element(al: Arc<Alphabet>, m: usize) -> impl Strategy<Value = LieElement> {
    let basis = lyndon_basis(&al, m);
    prop::collection::vec((0..basis.len(), -3i64..=3), 1..4).prop_map(move |v| {
        LieElement::from_terms(&al, v.into_iter().map(|(i, c)| (basis[i].clone(), q(c)))).unwrap()
    })
}

fn arb_triple() -> impl Strategy<Value = (LieElement, LieElement, LieElement)> {
    (1usize..=3, 1usize..=2, 1usize..=2).prop_flat_map(|(g, i, j)| {
        let al = Alphabet::ba(g);
        (arb_element(al.clone(), i), arb_element(al.clone(), j), arb_element(al, 1 + (i + j) % 2))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antisymmetry((x, y, _) in arb_triple()) {
        prop_assert_eq!(x.bracket(&y).unwrap(), y.bracket(&x).unwrap().neg());
        prop_assert!(x.bracket(&x).unwrap().is_zero());
    }

    #[test]
    fn jacobi((x, y, z) in arb_triple()) {
        let a = x.bracket(&y.bracket(&z).unwrap()).unwrap();
        let b = y.bracket(&z.bracket(&x).unwrap()).unwrap();
        let c = z.bracket(&x.bracket(&y).unwrap()).unwrap();
        prop_assert!(a.add(&b).unwrap().add(&c).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_the_commutator_of_polynomials((x, y, _) in arb_triple()) {
        let (px, py) = (x.to_poly(), y.to_poly());
        let mut c = Poly::new();
        for (u, a) in &px {
            for (v, b) in &py {
                let mut uv = u.clone();
                uv.extend(v);
                let mut vu = v.clone();
                vu.extend(u);
                *c.entry(uv).or_insert_with(Q::zero) += a * b;
                *c.entry(vu).or_insert_with(Q::zero) -= a * b;
            }
        }
        c.retain(|_, v| !v.is_zero());
        prop_assert_eq!(x.bracket(&y).unwrap().to_poly(), c);
    }

    #[test]
    fn poly_round_trip((x, y, _) in arb_triple()) {
        let z = x.bracket(&y).unwrap().add(&x).unwrap();
        prop_assert_eq!(LieElement::from_poly(z.alphabet(), &z.to_poly()).unwrap(), z);
    }

    #[test]
    fn bilinear((x, y, z) in arb_triple(), c in -4i64..=4) {
        let l = x.scale(&q(c)).add(&z).unwrap().bracket(&y).unwrap();
        let r = x.bracket(&y).unwrap().scale(&q(c)).add(&z.bracket(&y).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(x.scale(&Q::one()), x);
    }
}
