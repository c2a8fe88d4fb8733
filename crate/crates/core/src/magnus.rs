//! Integer Magnus expansion `x ↦ 1 + x` on a dense, truncated word basis.
//!
//! It differs from the exponential expansions by a filtered automorphism
//! that is the identity on the associated graded, so the lowest nonzero
//! weight of `μ(w) - 1` equals that of `log θ(w)`. That is all the depth
//! computations need, and it runs in machine integers.

use std::sync::Arc;

use crate::lie::{Alphabet, Poly};
use crate::Q;
use crate::surface::{FreeWord, GenKind, Generator};

const NONE: u32 = u32::MAX;

/// All words of weight `<= truncation`, indexed by increasing weight, with
/// append and prefix tables.
#[derive(Clone, Debug)]
pub struct DenseWords {
    truncation: usize,
    weights: Vec<usize>,
    /// `append[i * n + l]` is the index of word `i` followed by letter `l`.
    append: Vec<u32>,
    /// `(prefix, last letter)` of every nonempty word.
    split: Vec<(u32, u8)>,
    /// Start of each weight block in the index order.
    starts: Vec<usize>,
    letters: usize,
}

impl DenseWords {
    pub fn new(alphabet: &Alphabet, truncation: usize) -> Self {
        let n = alphabet.len();
        let mut weights = vec![0usize];
        let mut split = vec![(NONE, 0u8)];
        let mut append = Vec::new();
        // words of weight k are extensions of the words of weight k - w(l)
        let mut by_weight: Vec<Vec<u32>> = vec![vec![0]];
        let mut starts = vec![0];
        for k in 1..=truncation {
            starts.push(weights.len());
            let mut block = Vec::new();
            for l in 0..n as u8 {
                let w = alphabet.weight_of(l);
                if w > k {
                    continue;
                }
                for &p in &by_weight[k - w] {
                    let idx = weights.len() as u32;
                    weights.push(k);
                    split.push((p, l));
                    block.push(idx);
                }
            }
            by_weight.push(block);
        }
        starts.push(weights.len());
        append.resize(weights.len() * n, NONE);
        for (i, &(p, l)) in split.iter().enumerate().skip(1) {
            append[p as usize * n + l as usize] = i as u32;
        }
        DenseWords { truncation, weights, append, split, starts, letters: n }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `acc ← acc · (1 + x)`; false on overflow.
    fn mul_one_plus(&self, acc: &mut [i128], l: u8) -> bool {
        for i in (0..self.len()).rev() {
            let j = self.append[i * self.letters + l as usize];
            if j != NONE && acc[i] != 0 {
                match acc[j as usize].checked_add(acc[i]) {
                    Some(v) => acc[j as usize] = v,
                    None => return false,
                }
            }
        }
        true
    }

    /// `acc ← acc · (1 + x)^-1`; false on overflow.
    fn div_one_plus(&self, acc: &mut [i128], l: u8) -> bool {
        for v in 1..self.len() {
            let (p, last) = self.split[v];
            if last == l && acc[p as usize] != 0 {
                match acc[v].checked_sub(acc[p as usize]) {
                    Some(x) => acc[v] = x,
                    None => return false,
                }
            }
        }
        true
    }

    pub fn word(&self, mut i: usize) -> Vec<u8> {
        let mut w = Vec::new();
        while i != 0 {
            let (p, l) = self.split[i];
            w.push(l);
            i = p as usize;
        }
        w.reverse();
        w
    }

    /// Weight-`k` part of `acc` as a polynomial.
    pub fn slice(&self, acc: &[i128], k: usize) -> Poly {
        (self.starts[k]..self.starts[k + 1])
            .filter(|&i| acc[i] != 0)
            .map(|i| (self.word(i), Q::from_integer(acc[i].into())))
            .collect()
    }

    /// Lowest weight `>= 1` carrying a nonzero coefficient.
    pub fn lowest_positive_weight(&self, acc: &[i128]) -> Option<usize> {
        (1..=self.truncation).find(|&k| acc[self.starts[k]..self.starts[k + 1]].iter().any(|&c| c != 0))
    }
}

/// Which letters the generators go to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `α_i ↦ a_i` (weight 2), `β_i ↦ b_i`.
    Alternative,
    /// All weight 1.
    Classical,
    /// `α_i ↦ 0`, `β_i ↦ b_i`.
    Handlebody,
}

/// Truncated integer Magnus expansion of the free group.
#[derive(Clone, Debug)]
pub struct Magnus {
    genus: usize,
    target: Target,
    alphabet: Arc<Alphabet>,
    words: DenseWords,
    letter: Vec<Option<u8>>,
}

impl Magnus {
    pub fn new(genus: usize, target: Target, truncation: usize) -> Self {
        let al = match target {
            Target::Alternative => Alphabet::ba(genus),
            Target::Classical => Alphabet::h(genus),
            Target::Handlebody => Alphabet::b(genus),
        };
        let letter = Generator::all(genus)
            .map(|g| match g.kind {
                GenKind::Alpha => al.a(g.index),
                GenKind::Beta => al.b_letter(g.index),
            })
            .collect();
        Magnus { genus, target, words: DenseWords::new(&al, truncation), alphabet: al, letter }
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn truncation(&self) -> usize {
        self.words.truncation
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn words(&self) -> &DenseWords {
        &self.words
    }

    /// `μ(w) μ(tail)^-1` as a dense vector; `None` on overflow.
    pub fn evaluate_quotient(&self, w: &FreeWord, tail: &FreeWord) -> Option<Vec<i128>> {
        let mut acc = vec![0i128; self.words.len()];
        acc[0] = 1;
        let tail = tail.inv();
        let runs = w.runs().iter().copied().chain(tail.runs().iter().copied());
        for (g, k) in runs {
            let Some(l) = self.letter[g.slot(self.genus)] else { continue };
            for _ in 0..k.unsigned_abs() {
                let ok = if k > 0 { self.words.mul_one_plus(&mut acc, l) } else { self.words.div_one_plus(&mut acc, l) };
                if !ok {
                    return None;
                }
            }
        }
        Some(acc)
    }

    /// Lowest positive weight of `μ(w v^-1) - 1`; `Some(None)` if it vanishes
    /// up to the truncation, `None` on overflow.
    pub fn defect_weight(&self, w: &FreeWord, v: &FreeWord) -> Option<Option<usize>> {
        self.evaluate_quotient(w, v).map(|acc| self.words.lowest_positive_weight(&acc))
    }
}
