//! The fourteen acceptance checks, shared by the test target and `selftest`.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagrams::{diagrammatic_tau_alt, eta_inverse, Color, DiagramElement, Tree, TreeDiagram};
use crate::johnson::*;
use crate::lie::{Alphabet, LieElement};
use crate::series::Expansion;
use crate::surface::{library_names, pair_name, twist_library, FreeWord, SurfaceEndo};
use crate::Q;

/// Result of one check.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub const TITLES: [&str; 14] = [
    "tau_1^a(t_ai) = -ai⊗ai",
    "tau_1^a(t_akl) = -(ak+al)⊗(ak+al)",
    "tau_1^a(t_d) = 0 and t_d in J^a_2",
    "tau_1^a(t_e) = 0 and t_e in J^a_2",
    "xi(tau_m^a) = 0 on random words",
    "tau_m^a is additive",
    "iota_star(tau_m^a) = tau_{m+1}^L",
    "p(tau_1^a) = q(tau_1)",
    "sigma on N is (Id Δ; 0 Id) with Δ the tau_1^a matrix",
    "G group laws and tau_0^a homomorphism",
    "eta roundtrips",
    "diagrammatic tau_1^a(t_a1) = -1/2 strut(a1,a1)",
    "filtration implications on short library words",
    "tau^a is independent of the alternative expansion",
];

/// Runs every check; `quick` shrinks the random samples.
pub fn run_all(quick: bool) -> Vec<Outcome> {
    (1..=14).map(|i| run_one(i, quick)).collect()
}

pub fn run_one(id: usize, quick: bool) -> Outcome {
    let start = Instant::now();
    let s = Scale { quick };
    let r = match id {
        1 => c1(),
        2 => c2(),
        3 => c3(),
        4 => c4(),
        5 => c5(s),
        6 => c6(s),
        7 => c7(s),
        8 => c8(s),
        9 => c9(s),
        10 => c10(s),
        11 => c11(s),
        12 => c12(),
        13 => c13(s),
        14 => c14(s),
        _ => Err(format!("no check numbered {id}")),
    };
    let (passed, detail) = match r {
        Ok(d) => (true, d),
        Err(e) => (false, e),
    };
    Outcome { id, title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("?"), passed, detail, seconds: start.elapsed().as_secs_f64() }
}

#[derive(Clone, Copy)]
struct Scale {
    quick: bool,
}

impl Scale {
    fn n(self, full: usize) -> usize {
        if self.quick {
            full.div_ceil(5)
        } else {
            full
        }
    }
}

type Check = std::result::Result<String, String>;

fn ok<T>(r: crate::Result<T>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A mapping class together with its inverse, so products never need a
/// Nielsen reduction.
#[derive(Clone, Debug)]
struct Elt {
    name: String,
    f: SurfaceEndo,
    inv: SurfaceEndo,
}

impl Elt {
    fn new(name: &str, f: SurfaceEndo) -> Self {
        let inv = f.inverse().expect("fixture is invertible");
        Elt { name: name.into(), f, inv }
    }

    fn identity(g: usize) -> Self {
        Elt { name: "1".into(), f: SurfaceEndo::identity(g), inv: SurfaceEndo::identity(g) }
    }

    fn mul(&self, o: &Elt) -> Elt {
        let name = match (self.name.as_str(), o.name.as_str()) {
            ("1", n) | (n, "1") => n.to_string(),
            (a, b) => format!("{a} * {b}"),
        };
        Elt { name, f: self.f.compose(&o.f).unwrap(), inv: o.inv.compose(&self.inv).unwrap() }
    }

    fn invert(&self) -> Elt {
        Elt { name: format!("({})^-1", self.name), f: self.inv.clone(), inv: self.f.clone() }
    }

    fn comm(&self, o: &Elt) -> Elt {
        let c = self.mul(o).mul(&self.invert()).mul(&o.invert());
        Elt { name: format!("[{}, {}]", self.name, o.name), ..c }
    }

    fn conj(&self, by: &Elt) -> Elt {
        let c = by.mul(self).mul(&by.invert());
        Elt { name: format!("{} {} {}^-1", by.name, self.name, by.name), ..c }
    }

    fn size(&self) -> usize {
        self.f.images().map(|(_, w)| w.len()).sum()
    }
}

fn library(g: usize) -> BTreeMap<String, Elt> {
    let lib = twist_library(g);
    lib.iter()
        .map(|(n, f)| {
            let inv = match n.strip_suffix("^-1") {
                Some(b) => lib[b].clone(),
                None => lib[&format!("{n}^-1")].clone(),
            };
            (n.clone(), Elt { name: n.clone(), f: f.clone(), inv })
        })
        .collect()
}

/// Generators of `N` (twists along meridians and their pairs), with inverses.
fn n_letters(g: usize) -> Vec<Elt> {
    let lib = library(g);
    lib.into_iter().filter(|(n, _)| n.starts_with("t_a")).map(|(_, e)| e).collect()
}

fn all_letters(g: usize) -> Vec<Elt> {
    library(g).into_values().collect()
}

fn random_word(rng: &mut ChaCha8Rng, letters: &[Elt], len: usize) -> Elt {
    let g = letters[0].f.genus();
    (0..len).fold(Elt::identity(g), |acc, _| acc.mul(letters.choose(rng).unwrap()))
}

/// Words in `J^a_2`: separating and bounding-pair twists, their conjugates
/// by `N`, and commutators of `N` generators.
fn j2_letters(g: usize, rng: &mut ChaCha8Rng) -> Vec<Elt> {
    let lib = library(g);
    let n = n_letters(g);
    let mut out = vec![lib["t_d"].clone(), lib["t_d^-1"].clone()];
    if g >= 2 {
        out.push(lib["t_e"].clone());
        out.push(lib["t_e^-1"].clone());
    }
    for _ in 0..4 {
        let x = n.choose(rng).unwrap();
        let y = n.choose(rng).unwrap();
        out.push(x.comm(y));
        out.push(out[rng.gen_range(0..out.len().min(4))].conj(x));
    }
    out
}

fn w(g: usize, s: &str) -> FreeWord {
    FreeWord::parse(g, s).expect("fixture word")
}

fn endo(g: usize, name: &str, pairs: &[(String, String)]) -> SurfaceEndo {
    let images = pairs.iter().map(|(k, v)| (w(g, k).runs()[0].0, w(g, v)));
    SurfaceEndo::from_images(g, images).expect("fixture").with_label(name)
}

/// Swaps handles `k` and `k+1`: `x_k ↦ x_{k+1}`, `x_{k+1} ↦ B^-1 x_k B` with
/// `B = [β_{k+1}^-1, α_{k+1}]`. Panics unless `1 <= k < g`.
pub fn handle_swap(g: usize, k: usize) -> SurfaceEndo {
    assert!(1 <= k && k < g, "handles {k} and {} do not exist in genus {g}", k + 1);
    let l = k + 1;
    let b = FreeWord::beta(g, l).inv().commutator(&FreeWord::alpha(g, l)).unwrap();
    let c = |x: FreeWord| x.conj_by(&b).unwrap().to_string();
    let pairs = vec![
        (format!("a{k}"), format!("a{l}")),
        (format!("b{k}"), format!("b{l}")),
        (format!("a{l}"), c(FreeWord::alpha(g, k))),
        (format!("b{l}"), c(FreeWord::beta(g, k))),
    ];
    endo(g, &format!("swap{k}{l}"), &pairs)
}

/// Twist along a curve meeting `α_k` and `α_{k+1}` once each and
/// disjoint from the `β`s. Panics unless `1 <= k < g`.
pub fn beta_pair_twist(g: usize, k: usize) -> SurfaceEndo {
    assert!(1 <= k && k < g, "handles {k} and {} do not exist in genus {g}", k + 1);
    let l = k + 1;
    let (ak, bk, al, bl) = (format!("a{k}"), format!("b{k}"), format!("a{l}"), format!("b{l}"));
    let pairs = vec![
        (ak.clone(), format!("{bk}^-1 {bl}^-1 {bk} {bl} {ak} {bl} {bk}")),
        (bk.clone(), format!("{bk}^-1 {bl}^-1 {bk} {bl} {bk}")),
        (al.clone(), format!("{al} {bl} {bk}")),
        (bl.clone(), format!("{bk}^-1 {bl} {bk}")),
    ];
    endo(g, &format!("t_b{k}{l}"), &pairs)
}

/// Lagrangian fixtures beyond the handlebody group (`g = 3`): handle swaps
/// (nontrivial `R`) and a commutator of two `β`-pair twists (nontrivial `μ`).
fn lagrangian_letters(g: usize) -> Vec<Elt> {
    let mut out = Vec::new();
    for k in 1..g {
        let s = Elt::new(&format!("swap{k}{}", k + 1), handle_swap(g, k));
        out.push(s.invert());
        out.push(s);
    }
    if g >= 3 {
        let t1 = Elt::new("t_b12", beta_pair_twist(g, 1));
        let t2 = Elt::new("t_b23", beta_pair_twist(g, 2));
        let c = t1.comm(&t2);
        out.push(c.invert());
        out.push(c);
    }
    out
}

fn expected_level_one(g: usize, a_part: Vec<LieElement>) -> DerivationElement {
    let al = Alphabet::ba(g);
    DerivationElement::new(g, 1, a_part, vec![LieElement::zero(&al); g]).unwrap()
}

fn a_sum(g: usize, idx: &[usize]) -> LieElement {
    let al = Alphabet::ba(g);
    idx.iter().fold(LieElement::zero(&al), |acc, &i| acc.add(&LieElement::sym(&al, &format!("a{i}"))).unwrap())
}

fn c1() -> Check {
    let mut n = 0;
    for g in 1..=3 {
        let lib = twist_library(g);
        for i in 1..=g {
            let d = ok(tau_alt(&lib[&format!("t_a{i}")], 1), "tau_alt")?;
            let mut a = vec![LieElement::zero(&Alphabet::ba(g)); g];
            a[i - 1] = a_sum(g, &[i]).neg();
            let e = expected_level_one(g, a);
            ensure(d == e, || format!("g={g}, i={i}: got {d}, expected {e}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} twists, e.g. t_a1 ↦ -(1)·a1⊗a1"))
}

fn c2() -> Check {
    let mut n = 0;
    for g in 2..=3 {
        let lib = twist_library(g);
        for k in 1..=g {
            for l in k + 1..=g {
                let d = ok(tau_alt(&lib[&pair_name(g, k, l)], 1), "tau_alt")?;
                let s = a_sum(g, &[k, l]).neg();
                let mut a = vec![LieElement::zero(&Alphabet::ba(g)); g];
                a[k - 1] = s.clone();
                a[l - 1] = s;
                let e = expected_level_one(g, a);
                ensure(d == e, || format!("g={g}, ({k},{l}): got {d}, expected {e}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} pair twists"))
}

fn c3() -> Check {
    for g in 1..=3 {
        let t = &twist_library(g)["t_d"];
        let d = ok(tau_alt(t, 1), "tau_alt")?;
        ensure(d.is_zero(), || format!("g={g}: tau_1^a(t_d) = {d}"))?;
        ensure(ok(membership_alt(t, 2), "membership")?, || format!("g={g}: t_d not in J^a_2"))?;
    }
    Ok("g = 1, 2, 3".into())
}

fn c4() -> Check {
    for g in 2..=3 {
        let t = &twist_library(g)["t_e"];
        let d = ok(tau_alt(t, 1), "tau_alt")?;
        ensure(d.is_zero(), || format!("g={g}: tau_1^a(t_e) = {d}"))?;
        ensure(ok(membership_alt(t, 2), "membership")?, || format!("g={g}: t_e not in J^a_2"))?;
    }
    Ok("g = 2, 3".into())
}

/// Random words known to lie in `J^a_m`, `m ∈ {1, 2}`.
fn filtered_words(g: usize, m: usize, count: usize, seed: u64) -> Vec<Elt> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = if m == 1 { all_letters(g) } else { j2_letters(g, &mut rng) };
    let max_len = if m == 1 { 4 } else { 2 };
    let mut out = Vec::new();
    while out.len() < count {
        let len = rng.gen_range(1..=max_len);
        let e = random_word(&mut rng, &letters, len);
        // keep the rational evaluations small
        if e.size() <= 2500 {
            out.push(e);
        }
    }
    out
}

fn c5(s: Scale) -> Check {
    let mut n = 0;
    for g in 2..=3 {
        for m in 1..=2 {
            for e in filtered_words(g, m, s.n(13), 500 + 10 * g as u64 + m as u64) {
                let d = ok(tau_alt(&e.f, m), &e.name)?;
                let x = ok(xi(&d), "xi")?;
                ensure(x.is_zero(), || format!("{} (g={g}, m={m}): xi = {x}", e.name))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} words"))
}

fn c6(s: Scale) -> Check {
    let mut n = 0;
    let mut nonzero = 0;
    for g in 2..=3 {
        for m in 1..=2 {
            let ws = filtered_words(g, m, 2 * s.n(8), 600 + 10 * g as u64 + m as u64);
            for p in ws.chunks(2) {
                let (h, f) = (&p[0], &p[1]);
                let lhs = ok(tau_alt(&h.mul(f).f, m), "tau_alt(h f)")?;
                let rhs = ok(ok(tau_alt(&h.f, m), "tau_alt(h)")?.add(&ok(tau_alt(&f.f, m), "tau_alt(f)")?), "add")?;
                ensure(lhs == rhs, || format!("h = {}, f = {} (m={m}): {lhs} vs {rhs}", h.name, f.name))?;
                n += 1;
                nonzero += usize::from(!lhs.is_zero());
            }
        }
    }
    Ok(format!("{n} pairs, {nonzero} with nonzero value"))
}

/// `J^a_1` and `J^a_2` words outside the handlebody group, built from the
/// commutator `c` of two `β`-pair twists: commutators with `N` generators
/// (Levine values vanish at `m = 2`) and with the `β`-pair twists (pure `b`
/// Levine values).
fn non_handlebody_words(m: usize) -> Vec<Elt> {
    let g = 3;
    let lib = library(g);
    let t1 = Elt::new("t_b12", beta_pair_twist(g, 1));
    let t2 = Elt::new("t_b23", beta_pair_twist(g, 2));
    let c = t1.comm(&t2);
    let d = t2.comm(&c);
    if m == 1 {
        vec![c.comm(&lib["t_a1"]), c.comm(&lib["t_a3^-1"]), lib["t_a2"].comm(&c), d.clone()]
    } else {
        vec![c.comm(&lib["t_a1"]).comm(&lib["t_a3"]), t1.comm(&d)]
    }
}

fn c7(s: Scale) -> Check {
    let mut n = 0;
    let mut nontrivial = 0;
    for m in 1..=2 {
        let mut ws: Vec<Elt> = Vec::new();
        for g in 2..=3 {
            ws.extend(filtered_words(g, m, s.n(7), 700 + 10 * g as u64 + m as u64));
        }
        ws.extend(non_handlebody_words(m));
        for e in ws {
            let lhs = ok(iota_star(&ok(tau_alt(&e.f, m), &e.name)?), "iota_star")?;
            let rhs = ok(tau_levine(&e.f, m + 1), "tau_levine")?;
            ensure(lhs == rhs, || format!("{} (m={m}): {lhs} vs {rhs}", e.name))?;
            n += 1;
            nontrivial += usize::from(!rhs.is_zero());
        }
    }
    Ok(format!("{n} words, {nontrivial} with nonzero Levine value"))
}

fn c8(s: Scale) -> Check {
    let mut n = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(800);
    for g in 2..=3 {
        let lib = library(g);
        let nl = n_letters(g);
        let base = [lib["t_d"].clone(), lib["t_d^-1"].clone(), lib["t_e"].clone(), lib["t_e^-1"].clone()];
        let mut psis: Vec<Elt> = vec![lib["t_d"].clone(), lib["t_e"].clone()];
        for _ in 0..s.n(6) {
            let len = rng.gen_range(1..=2);
            let x = random_word(&mut rng, &base, len);
            let by = random_word(&mut rng, &nl, 1);
            psis.push(x.conj(&by));
        }
        for psi in psis {
            ensure(ok(classical_depth(&psi.f, 1), "classical depth")? >= 1, || format!("{} is not Torelli", psi.name))?;
            ensure(ok(alt_depth(&psi.f, 1), "alt depth")? == Some(1), || format!("{} is not in J^a_1", psi.name))?;
            let p = ok(p_project(&ok(tau_alt(&psi.f, 1), "tau_alt")?), "p")?;
            let q = ok(q_project(&ok(tau_classical(&psi.f, 1), "tau_classical")?), "q")?;
            ensure(p == q, || format!("{}: p = {p}, q = {q}", psi.name))?;
            n += 1;
        }
    }
    Ok(format!("{n} elements of I ∩ I^a"))
}

fn c9(s: Scale) -> Check {
    let mut n = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(900);
    for g in 2..=3 {
        let nl = n_letters(g);
        let mut words: Vec<Elt> = nl.clone();
        for _ in 0..s.n(15) {
            let len = rng.gen_range(2..=4);
            words.push(random_word(&mut rng, &nl, len));
        }
        for e in words {
            let sm = ok(sigma_matrix(&e.f), "sigma")?;
            let delta: Vec<Vec<i64>> = (0..g).map(|i| (g..2 * g).map(|j| sm[i][j]).collect()).collect();
            for i in 0..2 * g {
                for j in 0..2 * g {
                    let upper_right = i < g && j >= g;
                    let want = if i == j { 1 } else { 0 };
                    if !upper_right {
                        ensure(sm[i][j] == want, || format!("{}: sigma = {sm:?} is not (Id Δ; 0 Id)", e.name))?;
                    }
                }
            }
            for i in 0..g {
                for j in 0..g {
                    ensure(delta[i][j] == delta[j][i], || format!("{}: Δ = {delta:?} is not symmetric", e.name))?;
                }
            }
            let d = ok(tau_alt(&e.f, 1), "tau_alt")?;
            let nm = ok(d.aa_matrix(), "matrix")?;
            let al = Alphabet::ba(g);
            for i in 0..g {
                let only_a: LieElement = (0..g)
                    .fold(LieElement::zero(&al), |acc, j| acc.add(&LieElement::sym(&al, &format!("a{}", j + 1)).scale(&nm[i][j])).unwrap());
                ensure(&only_a == d.a_part(i + 1) && d.b_part(i + 1).is_zero(), || format!("{}: tau_1^a = {d} has terms beyond a⊗a", e.name))?;
                for j in 0..g {
                    ensure(nm[i][j] == Q::from_integer(delta[i][j].into()), || format!("{}: Δ = {delta:?} but tau_1^a = {d}", e.name))?;
                }
            }
            n += 1;
        }
    }
    Ok(format!("{n} words in N"))
}

fn c10(s: Scale) -> Check {
    let mut n = 0;
    let mut nontrivial = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    for g in 2..=3 {
        let mut letters = all_letters(g);
        letters.retain(|e| e.name.starts_with("t_a") || e.name.starts_with("t_d"));
        letters.extend(lagrangian_letters(g));
        letters.extend(lagrangian_letters(g));
        let count = if g == 2 { s.n(10) } else { s.n(22) };
        let mut values = Vec::new();
        for _ in 0..count {
            let h_len = rng.gen_range(1..=2);
            let h = random_word(&mut rng, &letters, h_len);
            let f_len = rng.gen_range(1..=2);
            let f = random_word(&mut rng, &letters, f_len);
            let th = ok(tau0_alt(&h.f), &h.name)?;
            let tf = ok(tau0_alt(&f.f), &f.name)?;
            let thf = ok(tau0_alt(&h.mul(&f).f), "tau0(h f)")?;
            let prod = ok(g_mul(&th, &tf), "g_mul")?;
            ensure(thf == prod, || format!("h = {}, f = {}: tau0(hf) = {thf}, product = {prod}", h.name, f.name))?;
            ensure(ok(prod.satisfies_condition(), "condition")?, || format!("product {prod} leaves G"))?;
            nontrivial += usize::from(!thf.is_identity());
            values.push(th);
            values.push(tf);
            n += 1;
        }
        // group axioms on the values
        let id = GElement::identity(g);
        for x in values.iter().take(12) {
            ensure(ok(g_mul(x, &id), "g_mul")? == *x && ok(g_mul(&id, x), "g_mul")? == *x, || format!("identity fails for {x}"))?;
            let xi_ = ok(g_inv(x), "g_inv")?;
            ensure(ok(g_mul(x, &xi_), "g_mul")?.is_identity() && ok(g_mul(&xi_, x), "g_mul")?.is_identity(), || format!("inverse fails for {x}"))?;
        }
        for t in values.windows(3).take(12) {
            let l = ok(g_mul(&ok(g_mul(&t[0], &t[1]), "g_mul")?, &t[2]), "g_mul")?;
            let r = ok(g_mul(&t[0], &ok(g_mul(&t[1], &t[2]), "g_mul")?), "g_mul")?;
            ensure(l == r, || "associativity fails".to_string())?;
        }
    }
    Ok(format!("{n} pairs, {nontrivial} with nontrivial tau_0"))
}

fn random_tree(rng: &mut ChaCha8Rng, leaves: &[usize]) -> Tree {
    if leaves.len() == 1 {
        return Tree::Leaf(leaves[0]);
    }
    let k = rng.gen_range(1..leaves.len());
    Tree::node(random_tree(rng, &leaves[..k]), random_tree(rng, &leaves[k..]))
}

/// Random tree diagram of alternative degree `m` in genus `g`.
pub fn random_diagram(rng: &mut ChaCha8Rng, g: usize, m: usize) -> TreeDiagram {
    // 2·#A + #B = m + 3 with at least two legs
    loop {
        let na = rng.gen_range(0..=(m + 3) / 2);
        let nb = m + 3 - 2 * na;
        if na + nb < 2 {
            continue;
        }
        let mut colors: Vec<Color> = (0..na).map(|_| Color::A(rng.gen_range(1..=g))).collect();
        colors.extend((0..nb).map(|_| Color::B(rng.gen_range(1..=g))));
        colors.shuffle(rng);
        let root = rng.gen_range(0..colors.len());
        let mut rest: Vec<usize> = (0..colors.len()).filter(|&i| i != root).collect();
        rest.shuffle(rng);
        let tree = random_tree(rng, &rest);
        return TreeDiagram::new(g, colors, root, tree).expect("well formed");
    }
}

fn c11(s: Scale) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1100);
    let mut n = 0;
    let mut nonzero = 0;
    while n < s.n(60) {
        let g = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=4);
        let terms: Vec<(Q, TreeDiagram)> = (0..rng.gen_range(1..=3))
            .map(|_| (Q::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=3).into()), random_diagram(&mut rng, g, m)))
            .collect();
        let e = ok(DiagramElement::new(g, m, terms), "diagram")?;
        let d = e.eta().clone();
        let back = ok(eta_inverse(&d), "eta_inverse")?;
        ensure(*back.eta() == d, || format!("eta(eta_inverse(d)) != d for d = {d}"))?;
        ensure(back == e, || format!("eta_inverse(eta(E)) != E for E = {e}"))?;
        // canonical: a second pass gives the same presentation
        let again = ok(eta_inverse(back.eta()), "eta_inverse")?;
        ensure(again.terms() == back.terms(), || format!("eta_inverse is not canonical on {e}"))?;
        nonzero += usize::from(!d.is_zero());
        n += 1;
    }
    // symplectic derivations that come from mapping classes
    let mut m_count = 0;
    for g in 2..=3 {
        for e in filtered_words(g, 1, s.n(5), 1150 + g as u64) {
            let d = ok(tau_alt(&e.f, 1), "tau_alt")?;
            let back = ok(eta_inverse(&d), "eta_inverse")?;
            ensure(*back.eta() == d, || format!("eta(eta_inverse(tau)) != tau for {}", e.name))?;
            m_count += 1;
        }
    }
    Ok(format!("{n} diagram elements ({nonzero} nonzero), {m_count} Johnson values"))
}

fn c12() -> Check {
    let g = 2;
    let got = ok(diagrammatic_tau_alt(&twist_library(g)["t_a1"], 1), "diagrammatic tau")?;
    let strut = ok(TreeDiagram::strut(g, Color::A(1), Color::A(1)), "strut")?;
    let want = ok(DiagramElement::new(g, 1, vec![(Q::new((-1).into(), 2.into()), strut.clone())]), "diagram")?;
    ensure(got == want, || format!("got {got}"))?;
    let literal = got.terms().len() == 1 && got.terms()[0].0 == Q::new((-1).into(), 2.into()) && got.terms()[0].1 == strut;
    ensure(literal, || format!("presentation {got} is not -1/2 strut(a1,a1)"))?;
    Ok(got.to_string())
}

/// All reduced words of length `<= len` in the library letters.
fn library_words(g: usize, len: usize) -> Vec<Elt> {
    let letters = all_letters(g);
    let inverse_name = |n: &str| match n.strip_suffix("^-1") {
        Some(b) => b.to_string(),
        None => format!("{n}^-1"),
    };
    let mut out = vec![Elt::identity(g)];
    let mut frontier: Vec<(Option<String>, Elt)> = vec![(None, Elt::identity(g))];
    for _ in 0..len {
        let mut next = Vec::new();
        for (last, e) in &frontier {
            for x in &letters {
                if last.as_deref() == Some(inverse_name(&x.name).as_str()) {
                    continue;
                }
                next.push((Some(x.name.clone()), e.mul(x)));
            }
        }
        out.extend(next.iter().map(|(_, e)| e.clone()));
        frontier = next;
    }
    out
}

fn c13(s: Scale) -> Check {
    let mut n = 0;
    let mut deep = 0;
    let plan: &[(usize, usize)] = if s.quick { &[(2, 3)] } else { &[(2, 4), (3, 3)] };
    for &(g, len) in plan {
        for e in library_words(g, len) {
            let a = ok(alt_depth(&e.f, 4), "alt depth")?.map_or(-1, |d| d as i64);
            let c = ok(classical_depth(&e.f, 2), "classical depth")? as i64;
            let l = ok(levine_depth(&e.f, 3), "levine depth")? as i64;
            for m in 0..=2i64 {
                if m >= 1 {
                    ensure(!(a >= 2 * m) || c >= m, || format!("{}: in J^a_{} but not J_{m}", e.name, 2 * m))?;
                    ensure(!(c >= m) || a >= m - 1, || format!("{}: in J_{m} but not J^a_{}", e.name, m - 1))?;
                }
                ensure(!(a >= m) || l > m, || format!("{}: in J^a_{m} but not J^L_{}", e.name, m + 1))?;
            }
            deep += usize::from(a >= 2);
            n += 1;
        }
    }
    // the depth functions agree with the membership predicates
    for e in library_words(2, 2) {
        for m in 0..=3 {
            let by_depth = ok(alt_depth(&e.f, m), "depth")? == Some(m);
            let e2 = ok(Expansion::alternative(2, (m + 1).max(2)), "expansion")?;
            let by_check = check_alt(&e.f, m, &e2).is_ok();
            ensure(by_depth == by_check, || format!("{}: integer and rational membership differ at m={m}", e.name))?;
        }
    }
    Ok(format!("{n} words, {deep} in J^a_2"))
}

fn c14(s: Scale) -> Check {
    let mut words: Vec<(usize, Elt)> = Vec::new();
    for g in 1..=3 {
        let lib = library(g);
        for n in library_names(g) {
            words.push((1, lib[&n].clone()));
        }
    }
    // deeper values, including ones outside the handlebody group
    for e in filtered_words(2, 2, 4, 1410) {
        words.push((2, e));
    }
    words.push((1, non_handlebody_words(1).remove(0)));
    let seeds = s.n(5).max(1) as u64;
    let mut n = 0;
    for (m, h) in &words {
        let g = h.f.genus();
        let base = ok(tau_alt(&h.f, *m), "tau_alt")?;
        for seed in 0..seeds {
            let e = ok(Expansion::perturbed(g, default_truncation(*m), 1400 + seed), "perturbed expansion")?;
            let d = ok(tau_alt_with(&h.f, *m, &e), "tau_alt")?;
            ensure(d == base, || format!("{} (g={g}, m={m}, seed {seed}): {d} vs {base}", h.name))?;
            n += 1;
        }
    }
    Ok(format!("{} words × {seeds} expansions = {n} comparisons", words.len()))
}

/// One line per check.
pub fn report_line(o: &Outcome) -> String {
    format!("criterion {:>2} {}: {} ({}; {:.1}s)", o.id, if o.passed { "PASS" } else { "FAIL" }, o.title, o.detail, o.seconds)
}
