//! The ladder R-matrix: an involution `W^k × W^l -> W^l × W^k` on pairs of
//! decreasing chains.

use std::collections::{HashMap, HashSet};

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ncalg::NCElement;
use crate::poset::{Content, Elem, Poset, Word};
use crate::quotient::{ContentSpace, IdealKind};
use crate::tableaux::{ladders, Balance, LadderDecomp};

/// Two decreasing chains, each listed largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainPair {
    pub a: Vec<Elem>,
    pub b: Vec<Elem>,
}

impl ChainPair {
    pub fn new(p: &Poset, a: Vec<Elem>, b: Vec<Elem>) -> Result<ChainPair> {
        for c in [&a, &b] {
            if c.iter().any(|&x| x == 0 || x as usize > p.n()) {
                return Err(Error::BadOrder(format!("{c:?} has letters outside the poset")));
            }
            if !c.windows(2).all(|w| p.lt(w[1], w[0])) {
                return Err(Error::BadOrder(format!("{c:?} is not a decreasing chain")));
            }
        }
        Ok(ChainPair { a, b })
    }

    /// The word `a_k ... a_1 b_l ... b_1`.
    pub fn word(&self) -> Word {
        let mut w = self.a.clone();
        w.extend_from_slice(&self.b);
        w
    }
}

pub fn ladder_decomp(p: &Poset, pair: &ChainPair) -> LadderDecomp {
    ladders(p, &pair.a, &pair.b)
}

/// One lump: ladder indices (1-based, ascending) and the pairs it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lump {
    pub ladders: Vec<usize>,
    /// `(a-side ladder, b-side ladder, wraparound)`.
    pub pairs: Vec<(usize, usize, bool)>,
    pub unpaired: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lumps {
    pub decomp: LadderDecomp,
    /// All pairs `(i in V^a, j in V^b, wraparound)`.
    pub pairs: Vec<(usize, usize, bool)>,
    /// Unpaired ladder indices, ascending.
    pub unpaired: Vec<usize>,
    /// Lumps in increasing order.
    pub lumps: Vec<Lump>,
}

/// Pairs `V^a` with `V^b` by parenthesis matching on the cyclic word and
/// groups ladders into lumps.
pub fn pair_and_lump(p: &Poset, pair: &ChainPair) -> Lumps {
    let decomp = ladder_decomp(p, pair);
    let m = decomp.len();
    let bal = decomp.balances();
    // "(" at i for V^a, ")" at i + 1/2 for V^b
    let mut stack: Vec<usize> = Vec::new();
    let mut open_left: Vec<usize> = Vec::new();
    let mut close_left: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    for i in 1..=m {
        let b = bal[i - 1];
        if b != Balance::Right {
            stack.push(i);
        }
        if b != Balance::Left {
            match stack.pop() {
                Some(j) => pairs.push((j, i, false)),
                None => close_left.push(i),
            }
        }
    }
    open_left.extend(stack);
    // unmatched word is ")))(((": the largest "(" meets the smallest ")"
    let mut opens = open_left.clone();
    let mut closes = close_left.into_iter();
    let mut unpaired = Vec::new();
    while let Some(i) = opens.pop() {
        match closes.next() {
            Some(j) => pairs.push((i, j, true)),
            None => {
                unpaired.push(i);
                unpaired.extend(opens.drain(..).rev());
            }
        }
    }
    unpaired.extend(closes);
    unpaired.sort();
    pairs.sort();

    let mut uf = UnionFind::<usize>::new(m + 2);
    for &(i, j, wrap) in &pairs {
        let spans = if wrap { vec![(i, m + 1), (0, j)] } else { vec![(i, j)] };
        for (lo, hi) in spans {
            for k in lo..hi {
                uf.union(k, k + 1);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 1..=m {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut lumps: Vec<Lump> = groups
        .into_values()
        .map(|ladders| {
            let inside = |x: &usize| ladders.contains(x);
            Lump {
                pairs: pairs.iter().filter(|(i, _, _)| inside(i)).copied().collect(),
                unpaired: unpaired.iter().copied().find(|x| inside(x)),
                ladders: ladders.clone(),
            }
        })
        .collect();
    lumps.sort_by_key(|l| l.ladders[0]);
    Lumps {
        decomp,
        pairs,
        unpaired,
        lumps,
    }
}

/// `η(a, b) = (c, d)`: switches every unpaired ladder.
pub fn eta(p: &Poset, pair: &ChainPair) -> ChainPair {
    let lumps = pair_and_lump(p, pair);
    let mut c = Vec::new();
    let mut d = Vec::new();
    for (idx, l) in lumps.decomp.ladders.iter().enumerate() {
        if lumps.unpaired.contains(&(idx + 1)) {
            c.extend_from_slice(&l.d);
            d.extend_from_slice(&l.c);
        } else {
            c.extend_from_slice(&l.c);
            d.extend_from_slice(&l.d);
        }
    }
    p.sort_decreasing(&mut c);
    p.sort_decreasing(&mut d);
    ChainPair { a: c, b: d }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EtaReport {
    pub pairs: usize,
    pub not_involution: Vec<ChainPair>,
    pub content_changed: Vec<ChainPair>,
    pub ladders_changed: Vec<ChainPair>,
    pub not_congruent: Vec<ChainPair>,
    pub injective: bool,
}

impl EtaReport {
    pub fn pass(&self) -> bool {
        self.not_involution.is_empty()
            && self.content_changed.is_empty()
            && self.ladders_changed.is_empty()
            && self.not_congruent.is_empty()
            && self.injective
    }
}

fn ladder_sets(d: &LadderDecomp) -> Vec<Vec<Elem>> {
    d.ladders
        .iter()
        .map(|l| {
            let mut v: Vec<Elem> = l.elements().collect();
            v.sort();
            v
        })
        .collect()
}

/// Checks the involution, content, ladder and congruence properties of `η`
/// on all of `W^k × W^l`.
pub fn verify_eta(p: &Poset, k: usize, ell: usize) -> Result<EtaReport> {
    if !p.is_31_free() {
        return Err(Error::NotThreeOneFree);
    }
    let full = p.full_mask();
    let wk = p.chains(full, k);
    let wl = p.chains(full, ell);
    let all: Vec<ChainPair> = wk
        .iter()
        .flat_map(|a| wl.iter().map(move |b| ChainPair { a: a.clone(), b: b.clone() }))
        .collect();
    let images: Vec<ChainPair> = all.par_iter().map(|x| eta(p, x)).collect();
    let mut report = EtaReport {
        pairs: all.len(),
        ..Default::default()
    };
    let mut spaces: HashMap<Content, ContentSpace> = HashMap::new();
    for (x, y) in all.iter().zip(&images) {
        if y.a.len() != x.b.len() || eta(p, y) != *x {
            report.not_involution.push(x.clone());
        }
        let beta = Content::of_word(&x.word());
        if Content::of_word(&y.word()) != beta {
            report.content_changed.push(x.clone());
            continue;
        }
        if ladder_sets(&ladder_decomp(p, x)) != ladder_sets(&ladder_decomp(p, y)) {
            report.ladders_changed.push(x.clone());
        }
        if !spaces.contains_key(&beta) {
            spaces.insert(beta.clone(), ContentSpace::build(p, &beta, IdealKind::Plac)?);
        }
        let cs = &spaces[&beta];
        if !cs.congruent(&NCElement::word(x.word()), &NCElement::word(y.word()))? {
            report.not_congruent.push(x.clone());
        }
    }
    let distinct: HashSet<&ChainPair> = images.iter().collect();
    report.injective = distinct.len() == images.len();
    Ok(report)
}
