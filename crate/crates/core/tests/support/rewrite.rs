//! Free string rewriting for words in `S_i`, `S_i*`, `p_i` over `n` disjoint loops.
//!
//! Works letter by letter on the raw relations of the graph algebra, with no
//! knowledge of exponent arithmetic, so it can serve as an oracle for the
//! normal-form multiplication.

use qsym_core::loops::LoopMonomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    S(usize),
    SStar(usize),
    P(usize),
}

impl Letter {
    pub fn loop_index(self) -> usize {
        match self {
            Letter::S(i) | Letter::SStar(i) | Letter::P(i) => i,
        }
    }
}

pub fn alphabet(n: usize) -> Vec<Letter> {
    (1..=n).flat_map(|i| [Letter::S(i), Letter::SStar(i), Letter::P(i)]).collect()
}

/// All words of length `1..=max_len`.
pub fn all_words(n: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let letters = alphabet(n);
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut next = w.clone();
                    next.push(l);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

enum Step {
    Zero,
    Replace(Vec<Letter>),
    Keep,
}

/// One relation applied to an adjacent pair.
fn rewrite_pair(a: Letter, b: Letter) -> Step {
    use Letter::*;
    if a.loop_index() != b.loop_index() {
        // distinct vertices are orthogonal projections, and every letter
        // carries its vertex projection on both sides
        return Step::Zero;
    }
    match (a, b) {
        (P(i), P(_)) => Step::Replace(vec![P(i)]),
        (P(_), x) | (x, P(_)) => Step::Replace(vec![x]),
        // S*S = p_{r(e)}
        (SStar(i), S(_)) => Step::Replace(vec![P(i)]),
        // p_v = sum over edges out of v of S_e S_e*, a single loop here
        (S(i), SStar(_)) => Step::Replace(vec![P(i)]),
        _ => Step::Keep,
    }
}

/// Reduce to an irreducible word; `None` is the zero element.
pub fn reduce(word: &[Letter]) -> Option<Vec<Letter>> {
    let mut w = word.to_vec();
    'outer: loop {
        for k in 0..w.len().saturating_sub(1) {
            match rewrite_pair(w[k], w[k + 1]) {
                Step::Zero => return None,
                Step::Replace(r) => {
                    w.splice(k..k + 2, r);
                    continue 'outer;
                }
                Step::Keep => {}
            }
        }
        return Some(w);
    }
}

/// Read an irreducible word as a normal-form monomial.
pub fn to_monomial(word: &[Letter]) -> LoopMonomial {
    match word {
        [Letter::P(i)] => LoopMonomial::projection(*i),
        [first, ..] => {
            let i = first.loop_index();
            let exponent = word
                .iter()
                .map(|l| match l {
                    Letter::S(j) if *j == i => 1,
                    Letter::SStar(j) if *j == i => -1,
                    other => panic!("irreducible word {word:?} contains {other:?}"),
                })
                .sum::<i64>();
            assert!(
                word.iter().all(|l| matches!(l, Letter::S(_))) || word.iter().all(|l| matches!(l, Letter::SStar(_))),
                "irreducible word {word:?} mixes S and S*"
            );
            LoopMonomial::new(i, exponent)
        }
        [] => panic!("empty word"),
    }
}

pub fn letter_monomial(l: Letter) -> LoopMonomial {
    match l {
        Letter::S(i) => LoopMonomial::generator(i),
        Letter::SStar(i) => LoopMonomial::generator_adjoint(i),
        Letter::P(i) => LoopMonomial::projection(i),
    }
}
