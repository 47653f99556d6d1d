//! Word statistics over a poset alphabet.

use crate::error::{Error, Result};
use crate::poset::{Content, Elem, Poset, Word};

/// 1-based positions `i` with `w_{i+1} -> w_i`.
pub fn des_p(p: &Poset, w: &[Elem]) -> Vec<usize> {
    (1..w.len()).filter(|&i| p.lt(w[i], w[i - 1])).collect()
}

/// Descent set as a bitmask, bit `i-1` for position `i`.
pub fn des_mask(p: &Poset, w: &[Elem]) -> u32 {
    let mut m = 0;
    for i in 1..w.len() {
        if p.lt(w[i], w[i - 1]) {
            m |= 1 << (i - 1);
        }
    }
    m
}

/// Pairs `i < j` with `w_i` after `w_j` in the total order and `w_i ⩪ w_j`.
pub fn inv_p(p: &Poset, w: &[Elem]) -> Result<usize> {
    if !p.has_order() {
        return Err(Error::NotNuio);
    }
    Ok(inv_unchecked(p, w))
}

pub(crate) fn inv_unchecked(p: &Poset, w: &[Elem]) -> usize {
    let mut count = 0;
    for i in 0..w.len() {
        let ri = p.rank(w[i]).unwrap();
        for j in i + 1..w.len() {
            if ri > p.rank(w[j]).unwrap() && p.inc(w[i], w[j]) {
                count += 1;
            }
        }
    }
    count
}

pub fn is_strictly_decreasing(p: &Poset, w: &[Elem]) -> bool {
    w.windows(2).all(|x| p.lt(x[1], x[0]))
}

pub fn is_weakly_increasing(p: &Poset, w: &[Elem]) -> bool {
    w.windows(2).all(|x| p.inc_or_lt(x[0], x[1]))
}

/// 1-based indices `i` with `w_i -> w_j` for every `j > i` (the last index
/// always qualifies).
pub fn right_left_minima(p: &Poset, w: &[Elem]) -> Vec<usize> {
    (0..w.len())
        .filter(|&i| w[i + 1..].iter().all(|&x| p.lt(w[i], x)))
        .map(|i| i + 1)
        .collect()
}

/// Weakly increasing with no right-left minimum except the last index.
pub fn is_power_word(p: &Poset, w: &[Elem]) -> bool {
    is_weakly_increasing(p, w) && right_left_minima(p, w).len() <= 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordClass {
    pub strictly_decreasing: bool,
    pub weakly_increasing: bool,
    pub power: bool,
    pub minima: Vec<usize>,
}

pub fn classify(p: &Poset, w: &[Elem]) -> WordClass {
    let weakly_increasing = is_weakly_increasing(p, w);
    let minima = right_left_minima(p, w);
    WordClass {
        strictly_decreasing: is_strictly_decreasing(p, w),
        weakly_increasing,
        power: weakly_increasing && minima.len() <= 1,
        minima,
    }
}

/// Distinct rearrangements of a multiset in lexicographic order.
pub struct MultisetPermutations {
    cur: Option<Word>,
}

impl Iterator for MultisetPermutations {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.cur.take()?;
        let mut nxt = out.clone();
        if next_permutation(&mut nxt) {
            self.cur = Some(nxt);
        }
        Some(out)
    }
}

fn next_permutation(v: &mut [Elem]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All words of content `beta`, lexicographically.
pub fn words_of_content(beta: &Content) -> MultisetPermutations {
    MultisetPermutations {
        cur: Some(beta.as_slice().to_vec()),
    }
}

/// Words of content `beta` with a fixed `inv_P` value.
pub fn words_with_inv(p: &Poset, beta: &Content, inv: usize) -> Result<Vec<Word>> {
    if !p.has_order() {
        return Err(Error::NotNuio);
    }
    Ok(words_of_content(beta)
        .filter(|w| inv_unchecked(p, w) == inv)
        .collect())
}
