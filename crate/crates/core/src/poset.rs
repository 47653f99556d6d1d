//! Finite posets on the labels `1..=n`, with the three relations used
//! throughout: `a -> b` (strictly less), `a ⩪ b` (incomparable or equal)
//! and `a ⩪-> b` (either of the two).

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::{Error, Result};

pub type Elem = u8;
pub type Word = Vec<Elem>;

/// Largest supported element count (relations live in `u64` masks).
pub const MAX_ELEMENTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    // up[a-1] has bit b-1 set iff a -> b
    up: Vec<u64>,
    // rank[a-1] is the position of a in the attached total order
    rank: Option<Vec<usize>>,
}

#[inline]
fn bit(a: Elem) -> u64 {
    1u64 << (a as u32 - 1)
}

impl Poset {
    fn from_up(n: usize, up: Vec<u64>) -> Poset {
        Poset { n, up, rank: None }
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_up(n, vec![0; n])
    }

    /// The chain `1 -> 2 -> ... -> n`, with the identity total order.
    pub fn chain(n: usize) -> Poset {
        Poset::p_k(1, n)
    }

    /// Transitive closure of the given pairs `(a, b)` meaning `a -> b`.
    pub fn from_relations(n: usize, relations: &[(Elem, Elem)]) -> Result<Poset> {
        if n > MAX_ELEMENTS {
            return Err(Error::Param(format!("at most {MAX_ELEMENTS} elements")));
        }
        let mut up = vec![0u64; n];
        for &(a, b) in relations {
            for x in [a, b] {
                if x == 0 || x as usize > n {
                    return Err(Error::BadElement(x as usize, n));
                }
            }
            up[a as usize - 1] |= bit(b);
        }
        // Warshall on bitmasks
        for k in 0..n {
            let kb = 1u64 << k;
            let upk = up[k];
            for row in up.iter_mut() {
                if *row & kb != 0 {
                    *row |= upk;
                }
            }
        }
        for (a, row) in up.iter().enumerate() {
            if row & (1u64 << a) != 0 {
                return Err(Error::Cycle(a as Elem + 1));
            }
        }
        Ok(Poset::from_up(n, up))
    }

    /// `a -> c` iff `c - a >= k`, on `{1..n}`, with the identity order.
    pub fn p_k(k: usize, n: usize) -> Poset {
        let mut up = vec![0u64; n];
        for a in 1..=n {
            for c in (a + k)..=n {
                up[a - 1] |= 1u64 << (c - 1);
            }
        }
        Poset {
            n,
            up,
            rank: Some((0..n).collect()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        1..=self.n as Elem
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// `a -> b`.
    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        self.up[a as usize - 1] & bit(b) != 0
    }

    /// `a ⩪ b`: incomparable or equal.
    #[inline]
    pub fn inc(&self, a: Elem, b: Elem) -> bool {
        !self.lt(a, b) && !self.lt(b, a)
    }

    /// `a ⩪-> b`: incomparable, equal, or `a -> b`.
    #[inline]
    pub fn inc_or_lt(&self, a: Elem, b: Elem) -> bool {
        !self.lt(b, a)
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.lt(a, b) || self.lt(b, a)
    }

    /// Mask of elements strictly above `a`.
    pub fn up_mask(&self, a: Elem) -> u64 {
        self.up[a as usize - 1]
    }

    /// Mask of elements strictly below `a`.
    pub fn down_mask(&self, a: Elem) -> u64 {
        let mut m = 0;
        for x in self.elements() {
            if self.lt(x, a) {
                m |= bit(x);
            }
        }
        m
    }

    /// All pairs `(a, b)` with `a -> b`, sorted.
    pub fn relations(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.lt(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Cover relations only.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        self.relations()
            .into_iter()
            .filter(|&(a, b)| !self.elements().any(|x| self.lt(a, x) && self.lt(x, b)))
            .collect()
    }

    pub fn dual(&self) -> Poset {
        let mut up = vec![0u64; self.n];
        for (a, b) in self.relations() {
            up[b as usize - 1] |= bit(a);
        }
        let rank = self
            .rank
            .as_ref()
            .map(|r| r.iter().map(|&x| self.n - 1 - x).collect());
        Poset { n: self.n, up, rank }
    }

    /// Subposet induced on the given elements, relabelled `1..` in the given order.
    pub fn induced(&self, elems: &[Elem]) -> Poset {
        let mut rel = Vec::new();
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                if self.lt(a, b) {
                    rel.push((i as Elem + 1, j as Elem + 1));
                }
            }
        }
        let mut p = Poset::from_relations(elems.len(), &rel).expect("induced subposet is acyclic");
        if let Some(rank) = &self.rank {
            let mut idx: Vec<usize> = (0..elems.len()).collect();
            idx.sort_by_key(|&i| rank[elems[i] as usize - 1]);
            let mut r = vec![0; elems.len()];
            for (pos, &i) in idx.iter().enumerate() {
                r[i] = pos;
            }
            p.rank = Some(r);
        }
        p
    }

    pub fn is_31_free(&self) -> bool {
        for a in self.elements() {
            for b in self.elements() {
                if !self.lt(a, b) {
                    continue;
                }
                for c in self.elements() {
                    if !self.lt(b, c) {
                        continue;
                    }
                    for d in self.elements() {
                        if d != a
                            && d != b
                            && d != c
                            && self.inc(d, a)
                            && self.inc(d, b)
                            && self.inc(d, c)
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_22_free(&self) -> bool {
        let rel = self.relations();
        for (i, &(a, b)) in rel.iter().enumerate() {
            for &(c, d) in &rel[i + 1..] {
                let distinct = [a, b, c, d].iter().unique().count() == 4;
                if distinct && self.inc(a, c) && self.inc(a, d) && self.inc(b, c) && self.inc(b, d) {
                    return false;
                }
            }
        }
        true
    }

    // Induced 2+1 patterns (a, b, c): a -> c, b incomparable to both.
    fn two_plus_one(&self) -> Vec<(Elem, Elem, Elem)> {
        let mut out = Vec::new();
        for (a, c) in self.relations() {
            for b in self.elements() {
                if b != a && b != c && self.inc(a, b) && self.inc(b, c) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    /// Checks the two natural-unit-interval-order conditions for `order`
    /// (a permutation of the elements, smallest first).
    pub fn check_nuio_order(&self, order: &[Elem]) -> Result<()> {
        let n = self.n;
        if order.len() != n || order.iter().unique().count() != n {
            return Err(Error::BadOrder("not a permutation of the elements".into()));
        }
        let mut rank = vec![0usize; n];
        for (pos, &a) in order.iter().enumerate() {
            if a == 0 || a as usize > n {
                return Err(Error::BadElement(a as usize, n));
            }
            rank[a as usize - 1] = pos;
        }
        let r = |x: Elem| rank[x as usize - 1];
        for (a, b) in self.relations() {
            if r(a) > r(b) {
                return Err(Error::BadOrder(format!("{a} -> {b} but {b} precedes {a}")));
            }
        }
        for (a, b, c) in self.two_plus_one() {
            if !(r(a) < r(b) && r(b) < r(c)) {
                return Err(Error::BadOrder(format!("induced 2+1 on {a},{b},{c} is not ordered")));
            }
        }
        Ok(())
    }

    /// Attaches a total order after checking it.
    pub fn with_order(&self, order: &[Elem]) -> Result<Poset> {
        self.check_nuio_order(order)?;
        let mut rank = vec![0usize; self.n];
        for (pos, &a) in order.iter().enumerate() {
            rank[a as usize - 1] = pos;
        }
        Ok(Poset {
            n: self.n,
            up: self.up.clone(),
            rank: Some(rank),
        })
    }

    pub fn without_order(&self) -> Poset {
        Poset::from_up(self.n, self.up.clone())
    }

    /// Lexicographically smallest total order making this a natural unit
    /// interval order, if any.
    pub fn nuio_witness(&self) -> Option<Vec<Elem>> {
        let triples = self.two_plus_one();
        let mut order = Vec::with_capacity(self.n);
        let mut placed = 0u64;
        if self.nuio_dfs(&triples, &mut order, &mut placed) {
            Some(order)
        } else {
            None
        }
    }

    fn nuio_dfs(&self, triples: &[(Elem, Elem, Elem)], order: &mut Vec<Elem>, placed: &mut u64) -> bool {
        if order.len() == self.n {
            return true;
        }
        for x in self.elements() {
            if *placed & bit(x) != 0 {
                continue;
            }
            // everything below x must already be placed
            if self.down_mask(x) & !*placed != 0 {
                continue;
            }
            // x is larger than everything placed, smaller than everything not placed
            let ok = triples.iter().all(|&(a, b, c)| {
                let seq = [a, b, c];
                match seq.iter().position(|&y| y == x) {
                    None => true,
                    Some(i) => seq.iter().enumerate().all(|(j, &y)| {
                        if j == i {
                            return true;
                        }
                        let y_placed = *placed & bit(y) != 0;
                        if j < i {
                            y_placed
                        } else {
                            !y_placed
                        }
                    }),
                }
            });
            if !ok {
                continue;
            }
            order.push(x);
            *placed |= bit(x);
            if self.nuio_dfs(triples, order, placed) {
                return true;
            }
            order.pop();
            *placed &= !bit(x);
        }
        false
    }

    /// Attached total order, smallest first.
    pub fn order(&self) -> Option<Vec<Elem>> {
        self.rank.as_ref().map(|rank| {
            let mut v: Vec<Elem> = self.elements().collect();
            v.sort_by_key(|&a| rank[a as usize - 1]);
            v
        })
    }

    pub fn has_order(&self) -> bool {
        self.rank.is_some()
    }

    /// Position of `a` in the attached total order.
    #[inline]
    pub fn rank(&self, a: Elem) -> Option<usize> {
        self.rank.as_ref().map(|r| r[a as usize - 1])
    }

    /// Returns a copy carrying a total order: the attached one, else the
    /// smallest witness.
    pub fn ensure_order(&self) -> Result<Poset> {
        if self.has_order() {
            return Ok(self.clone());
        }
        match self.nuio_witness() {
            Some(o) => self.with_order(&o),
            None => Err(Error::NotNuio),
        }
    }

    /// The blowup `P[β]`: `n_a` mutually incomparable copies of each `a`.
    pub fn blowup(&self, beta: &Content) -> Result<Blowup> {
        for &a in beta.as_slice() {
            if a == 0 || a as usize > self.n {
                return Err(Error::BadElement(a as usize, self.n));
            }
        }
        let copies: Vec<(Elem, usize)> = beta
            .multiplicities()
            .into_iter()
            .flat_map(|(a, m)| (0..m).map(move |i| (a, i)))
            .collect();
        let mut rel = Vec::new();
        for (i, &(a, _)) in copies.iter().enumerate() {
            for (j, &(b, _)) in copies.iter().enumerate() {
                if self.lt(a, b) {
                    rel.push((i as Elem + 1, j as Elem + 1));
                }
            }
        }
        let mut poset = Poset::from_relations(copies.len(), &rel)?;
        if let Some(rank) = &self.rank {
            let mut idx: Vec<usize> = (0..copies.len()).collect();
            idx.sort_by_key(|&i| (rank[copies[i].0 as usize - 1], copies[i].1));
            let mut r = vec![0; copies.len()];
            for (pos, &i) in idx.iter().enumerate() {
                r[i] = pos;
            }
            poset.rank = Some(r);
        }
        Ok(Blowup {
            poset,
            origin: copies,
        })
    }

    /// Decreasing chains `a_1 > a_2 > ... > a_k` (each `a_{i+1} -> a_i`)
    /// inside `support`, in lexicographic order.
    pub fn chains(&self, support: u64, k: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        self.chains_rec(support, k, &mut cur, &mut out);
        out
    }

    fn chains_rec(&self, allowed: u64, k: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in self.elements() {
            if allowed & bit(x) != 0 {
                cur.push(x);
                let next = allowed & self.down_mask(x);
                self.chains_rec(next, k, cur, out);
                cur.pop();
            }
        }
    }

    /// Sorts elements of a chain into decreasing order (largest first).
    pub fn sort_decreasing(&self, chain: &mut [Elem]) {
        chain.sort_by(|&x, &y| {
            if self.lt(y, x) {
                std::cmp::Ordering::Less
            } else if self.lt(x, y) {
                std::cmp::Ordering::Greater
            } else {
                y.cmp(&x)
            }
        });
    }

    pub fn is_chain(&self, elems: &[Elem]) -> bool {
        elems
            .iter()
            .tuple_combinations()
            .all(|(&x, &y)| self.comparable(x, y))
    }

    /// Canonical isomorphism-class key (minimum relation matrix over relabelings).
    pub fn canonical_key(&self) -> u64 {
        assert!(self.n <= 8, "canonical key only for n <= 8");
        let n = self.n;
        let mut best = u64::MAX;
        for perm in (0..n).permutations(n) {
            let mut key = 0u64;
            for a in 0..n {
                for b in 0..n {
                    if self.up[perm[a]] & (1u64 << perm[b]) != 0 {
                        key |= 1u64 << (a * n + b);
                    }
                }
            }
            best = best.min(key);
        }
        best
    }
}

/// `P[β]` together with the origin `(a, copy index)` of each new element.
#[derive(Clone, Debug)]
pub struct Blowup {
    pub poset: Poset,
    pub origin: Vec<(Elem, usize)>,
}

/// All posets on `n` elements up to isomorphism, each naturally labelled
/// (`a -> b` implies `a < b`).
pub fn all_posets(n: usize) -> Vec<Poset> {
    let mut level = vec![Poset::antichain(0)];
    for m in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for p in &level {
            // new element m is maximal; its down set is any order ideal
            for ideal in order_ideals(p) {
                let mut up = p.up.clone();
                for a in 1..m {
                    if ideal & (1u64 << (a - 1)) != 0 {
                        up[a - 1] |= 1u64 << (m - 1);
                    }
                }
                up.push(0);
                let q = Poset::from_up(m, up);
                if seen.insert(q.canonical_key()) {
                    next.push(q);
                }
            }
        }
        level = next;
    }
    level.sort_by_key(|p| (p.relations().len(), p.relations()));
    level
}

/// All (3+1)-free posets on exactly `n` elements up to isomorphism.
pub fn all_31_free(n: usize) -> Vec<Poset> {
    all_posets(n).into_iter().filter(|p| p.is_31_free()).collect()
}

/// Down-closed subsets of `p` as masks.
pub fn order_ideals(p: &Poset) -> Vec<u64> {
    let mut out = Vec::new();
    for mask in 0..(1u64 << p.n) {
        let closed = p
            .elements()
            .filter(|&a| mask & bit(a) != 0)
            .all(|a| p.down_mask(a) & !mask == 0);
        if closed {
            out.push(mask);
        }
    }
    out
}

/// A multiset of poset elements, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Content(Vec<Elem>);

impl Content {
    pub fn new(mut elems: Vec<Elem>) -> Content {
        elems.sort_unstable();
        Content(elems)
    }

    pub fn of_word(w: &[Elem]) -> Content {
        Content::new(w.to_vec())
    }

    /// Every element of `p` exactly once.
    pub fn of_poset(p: &Poset) -> Content {
        Content(p.elements().collect())
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, a: Elem) -> usize {
        self.0.iter().filter(|&&x| x == a).count()
    }

    /// `(element, multiplicity)` pairs, ascending.
    pub fn multiplicities(&self) -> Vec<(Elem, usize)> {
        self.0
            .iter()
            .dedup_with_count()
            .map(|(c, &a)| (a, c))
            .collect()
    }

    pub fn support_mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &a| m | bit(a))
    }

    pub fn max_element(&self) -> Option<Elem> {
        self.0.last().copied()
    }

    /// All multisets of the given size over `1..=n`.
    pub fn all_of_size(n: usize, size: usize) -> Vec<Content> {
        (1..=n as Elem)
            .combinations_with_replacement(size)
            .map(Content)
            .collect()
    }
}

impl std::fmt::Display for Content {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}
