//! P-tableaux, flagged P-tableaux, reading words and ladders.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poset::{Content, Elem, Poset, Word};
use crate::symfun::{is_hook, transpose, Partition};
use crate::words::is_power_word;

/// A filling stored column by column; each column is listed top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PTableau {
    pub cols: Vec<Vec<Elem>>,
}

impl PTableau {
    pub fn from_cols(cols: Vec<Vec<Elem>>) -> PTableau {
        PTableau { cols }
    }

    /// Builds a tableau of partition shape from its rows (top row first).
    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<PTableau> {
        let lens: Vec<usize> = rows.iter().map(|r| r.len()).collect();
        if lens.windows(2).any(|w| w[0] < w[1]) || lens.iter().any(|&l| l == 0) {
            return Err(Error::Shape(format!("row lengths {lens:?} are not a partition")));
        }
        let ncols = lens.first().copied().unwrap_or(0);
        let cols = (0..ncols)
            .map(|c| rows.iter().take_while(|r| r.len() > c).map(|r| r[c]).collect())
            .collect();
        Ok(PTableau { cols })
    }

    pub fn col_lengths(&self) -> Vec<usize> {
        self.cols.iter().map(|c| c.len()).collect()
    }

    /// Row lengths (meaningful for partition shapes).
    pub fn shape(&self) -> Partition {
        transpose(&self.col_lengths())
    }

    pub fn size(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<Elem> {
        self.cols.get(c).and_then(|col| col.get(r)).copied()
    }

    /// Rows top to bottom; a missing box is `None`.
    pub fn rows(&self) -> Vec<Vec<Option<Elem>>> {
        let h = self.cols.iter().map(|c| c.len()).max().unwrap_or(0);
        (0..h)
            .map(|r| {
                let mut row: Vec<Option<Elem>> = (0..self.cols.len()).map(|c| self.get(r, c)).collect();
                while row.last() == Some(&None) {
                    row.pop();
                }
                row
            })
            .collect()
    }

    pub fn content(&self) -> Content {
        Content::new(self.cols.concat())
    }

    /// Column reading word: columns left to right, each bottom to top.
    pub fn cread(&self) -> Word {
        self.cols
            .iter()
            .flat_map(|c| c.iter().rev().copied())
            .collect()
    }

    /// Diagonal reading word: diagonals by increasing `c - r`, each read
    /// from northwest to southeast.
    pub fn diagread(&self) -> Word {
        let mut boxes: Vec<(i64, usize, Elem)> = Vec::new();
        for (c, col) in self.cols.iter().enumerate() {
            for (r, &x) in col.iter().enumerate() {
                boxes.push((c as i64 - r as i64, r, x));
            }
        }
        boxes.sort_by_key(|&(d, r, _)| (d, r));
        boxes.into_iter().map(|(_, _, x)| x).collect()
    }

    /// Whether every column is a chain (the `P`-array condition).
    pub fn is_parray(&self, p: &Poset) -> bool {
        self.cols.iter().all(|c| c.windows(2).all(|w| p.lt(w[0], w[1])))
    }

    /// Whether rows are `⩪->`-weakly increasing where boxes are adjacent.
    pub fn rows_ok(&self, p: &Poset) -> bool {
        self.cols.windows(2).all(|w| {
            w[0].iter()
                .zip(w[1].iter())
                .all(|(&a, &b)| p.inc_or_lt(a, b))
        })
    }

    pub fn is_ptableau(&self, p: &Poset) -> bool {
        self.is_parray(p) && self.rows_ok(p)
    }
}

/// Backtracking fill of a diagram with column lengths `lens`.
fn fill(
    p: &Poset,
    lens: &[usize],
    z: Option<&[u64]>,
    content: Option<&Content>,
) -> Vec<PTableau> {
    let n = p.n();
    let mut remaining = vec![0usize; n + 1];
    if let Some(beta) = content {
        let total: usize = lens.iter().sum();
        if beta.len() != total || beta.max_element().map_or(false, |m| m as usize > n) {
            return Vec::new();
        }
        for (a, k) in beta.multiplicities() {
            remaining[a as usize] = k;
        }
    }
    let boxes: Vec<(usize, usize)> = lens
        .iter()
        .enumerate()
        .flat_map(|(c, &l)| (0..l).map(move |r| (r, c)))
        .collect();
    let mut cols: Vec<Vec<Elem>> = lens.iter().map(|&l| Vec::with_capacity(l)).collect();
    let mut out = Vec::new();

    struct Ctx<'a> {
        p: &'a Poset,
        lens: &'a [usize],
        z: Option<&'a [u64]>,
        bounded: bool,
        boxes: Vec<(usize, usize)>,
    }

    fn rec(
        ctx: &Ctx,
        k: usize,
        cols: &mut Vec<Vec<Elem>>,
        remaining: &mut Vec<usize>,
        out: &mut Vec<PTableau>,
    ) {
        if k == ctx.boxes.len() {
            out.push(PTableau { cols: cols.clone() });
            return;
        }
        let (r, c) = ctx.boxes[k];
        let p = ctx.p;
        let mut mask = p.full_mask();
        if let Some(z) = ctx.z {
            mask &= z[c];
            if c > 0 && ctx.lens[c - 1] < ctx.lens[c] && r + 1 == ctx.lens[c] {
                mask &= !z[c - 1];
            }
        }
        if r > 0 {
            mask &= p.up_mask(cols[c][r - 1]);
        }
        if c > 0 && ctx.lens[c - 1] > r {
            mask &= !p.down_mask(cols[c - 1][r]);
        }
        while mask != 0 {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            let x = (b + 1) as Elem;
            if ctx.bounded {
                if remaining[x as usize] == 0 {
                    continue;
                }
                remaining[x as usize] -= 1;
            }
            cols[c].push(x);
            rec(ctx, k + 1, cols, remaining, out);
            cols[c].pop();
            if ctx.bounded {
                remaining[x as usize] += 1;
            }
        }
    }

    let ctx = Ctx {
        p,
        lens,
        z,
        bounded: content.is_some(),
        boxes,
    };
    rec(&ctx, 0, &mut cols, &mut remaining, &mut out);
    out
}

/// All `P`-tableaux of shape `lambda`, optionally of a fixed content.
pub fn enumerate(p: &Poset, lambda: &[usize], content: Option<&Content>) -> Vec<PTableau> {
    fill(p, &transpose(lambda), None, content)
}

/// The flagged set `SSYT_P^Z(α')`.
pub fn enumerate_flagged(p: &Poset, alpha: &[usize], z: &[u64]) -> Result<Vec<PTableau>> {
    if alpha.len() != z.len() {
        return Err(Error::Param("alpha and Z have different lengths".into()));
    }
    if alpha.windows(2).any(|w| w[1] > w[0] + 1) {
        return Err(Error::Shape(format!("{alpha:?} violates alpha_(j+1) <= alpha_j + 1")));
    }
    Ok(fill(p, alpha, Some(z), None))
}

/// Key condition for hook shapes: `v w_2 ... w_l` is a power word for some
/// first-column entry `v`, where `w_2 ... w_l` is the arm.
pub fn is_key(p: &Poset, t: &PTableau) -> Result<bool> {
    if t.cols.is_empty() {
        return Ok(true);
    }
    if !is_hook(&t.shape()) {
        return Err(Error::Shape(format!("{:?} is not a hook", t.shape())));
    }
    let arm: Vec<Elem> = t.cols[1..].iter().map(|c| c[0]).collect();
    Ok(t.cols[0].iter().any(|&v| {
        let mut w = vec![v];
        w.extend_from_slice(&arm);
        is_power_word(p, &w)
    }))
}

pub fn key_tableaux(p: &Poset, lambda: &[usize], content: Option<&Content>) -> Result<Vec<PTableau>> {
    if !is_hook(lambda) {
        return Err(Error::Shape(format!("{lambda:?} is not a hook")));
    }
    let mut out = Vec::new();
    for t in enumerate(p, lambda, content) {
        if is_key(p, &t)? {
            out.push(t);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Balance {
    Balanced,
    /// More elements in the first chain.
    Left,
    /// More elements in the second chain.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ladder {
    /// Elements from the first chain, largest first.
    pub c: Vec<Elem>,
    /// Elements from the second chain, largest first.
    pub d: Vec<Elem>,
}

impl Ladder {
    pub fn balance(&self) -> Balance {
        match self.c.len().cmp(&self.d.len()) {
            Ordering::Equal => Balance::Balanced,
            Ordering::Greater => Balance::Left,
            Ordering::Less => Balance::Right,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.c.iter().chain(self.d.iter()).copied()
    }

    /// Path or 4-cycle in the incomparability graph, with part sizes
    /// differing by at most one.
    pub fn has_expected_form(&self, p: &Poset) -> bool {
        let v = self.c.len() + self.d.len();
        if self.c.len().abs_diff(self.d.len()) > 1 {
            return false;
        }
        let deg_c: Vec<usize> = self
            .c
            .iter()
            .map(|&x| self.d.iter().filter(|&&y| p.inc(x, y)).count())
            .collect();
        let deg_d: Vec<usize> = self
            .d
            .iter()
            .map(|&y| self.c.iter().filter(|&&x| p.inc(x, y)).count())
            .collect();
        let e: usize = deg_c.iter().sum();
        let max_deg = deg_c.iter().chain(deg_d.iter()).copied().max().unwrap_or(0);
        (e + 1 == v && max_deg <= 2) || (v == 4 && e == 4)
    }
}

/// Ladders of a pair of chains, smallest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderDecomp {
    pub ladders: Vec<Ladder>,
}

impl LadderDecomp {
    pub fn len(&self) -> usize {
        self.ladders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ladders.is_empty()
    }

    pub fn balances(&self) -> Vec<Balance> {
        self.ladders.iter().map(|l| l.balance()).collect()
    }

    /// Index of the ladder containing `x` from the given side.
    pub fn ladder_of(&self, x: Elem, in_c: bool) -> Option<usize> {
        self.ladders
            .iter()
            .position(|l| if in_c { l.c.contains(&x) } else { l.d.contains(&x) })
    }
}

/// Connected components of the bipartite incomparability graph between the
/// chains `c` and `d`, ordered upward in `P`.
pub fn ladders(p: &Poset, c: &[Elem], d: &[Elem]) -> LadderDecomp {
    let nc = c.len();
    let total = nc + d.len();
    let mut comp: Vec<usize> = (0..total).collect();
    fn find(comp: &mut [usize], mut x: usize) -> usize {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    }
    for (i, &x) in c.iter().enumerate() {
        for (j, &y) in d.iter().enumerate() {
            if p.inc(x, y) {
                let (a, b) = (find(&mut comp, i), find(&mut comp, nc + j));
                comp[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Ladder)> = Vec::new();
    for v in 0..total {
        let root = find(&mut comp, v);
        let pos = match groups.iter().position(|(r, _)| *r == root) {
            Some(pos) => pos,
            None => {
                groups.push((root, Ladder { c: Vec::new(), d: Vec::new() }));
                groups.len() - 1
            }
        };
        if v < nc {
            groups[pos].1.c.push(c[v]);
        } else {
            groups[pos].1.d.push(d[v - nc]);
        }
    }
    let mut ls: Vec<Ladder> = groups.into_iter().map(|(_, l)| l).collect();
    for l in &mut ls {
        p.sort_decreasing(&mut l.c);
        p.sort_decreasing(&mut l.d);
    }
    let rep = |l: &Ladder| l.elements().next().unwrap();
    ls.sort_by(|a, b| {
        let (x, y) = (rep(a), rep(b));
        if p.lt(x, y) {
            Ordering::Less
        } else if p.lt(y, x) {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    LadderDecomp { ladders: ls }
}

fn two_columns(t: &PTableau) -> Result<(&[Elem], &[Elem])> {
    match t.cols.len() {
        0 => Ok((&[], &[])),
        1 => Ok((&t.cols[0], &[])),
        2 => Ok((&t.cols[0], &t.cols[1])),
        k => Err(Error::Shape(format!("{k} columns, at most 2 allowed"))),
    }
}

pub fn tableau_ladders(p: &Poset, t: &PTableau) -> Result<LadderDecomp> {
    let (c, d) = two_columns(t)?;
    Ok(ladders(p, c, d))
}

/// No right unbalanced ladder.
pub fn is_left(p: &Poset, t: &PTableau) -> Result<bool> {
    Ok(tableau_ladders(p, t)?
        .balances()
        .iter()
        .all(|&b| b != Balance::Right))
}

pub fn left_tableaux(p: &Poset, lambda: &[usize], content: Option<&Content>) -> Result<Vec<PTableau>> {
    if lambda.first().map_or(false, |&k| k > 2) {
        return Err(Error::Shape(format!("{lambda:?} has more than two columns")));
    }
    let mut out = Vec::new();
    for t in enumerate(p, lambda, content) {
        if is_left(p, &t)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// Partial-sum ladder condition on every pair of adjacent columns of a
/// `P`-array; equivalent to the row condition.
pub fn ladder_criterion(p: &Poset, t: &PTableau) -> bool {
    t.cols.windows(2).all(|w| {
        let dec = ladders(p, &w[0], &w[1]);
        let mut diff: i64 = 0;
        dec.ladders.iter().all(|l| {
            diff += l.c.len() as i64 - l.d.len() as i64;
            diff >= 0
        })
    })
}
