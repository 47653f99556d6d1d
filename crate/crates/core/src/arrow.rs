//! The arrow algebra: arrow diagrams, the star product, `P`-fillings and
//! `Eval_P`, clique posets, `Swap_i` and the diagram families `E_α`, `D_λ`,
//! `D̃^m_λ`, `𝔍_λ`, `𝔪_λ`, `𝔍_{λ/m}`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ncalg::{cylinder_terms, perm_sign, NCElement};
use crate::poset::{Elem, Poset, Word};
use crate::symfun::{kostka_table, transpose};

/// `w_i -> w_j`.
pub const R: u8 = 1;
/// `w_j -> w_i`.
pub const L: u8 = 2;
/// `w_i = w_j`.
pub const E: u8 = 4;
/// `w_i` and `w_j` distinct and incomparable.
pub const N: u8 = 8;
pub const FREE: u8 = R | L | E | N;

/// The eight edge types an arrow diagram may carry.
pub const ALLOWED: [u8; 8] = [R, L, E, N, E | N, R | E | N, L | E | N, FREE];

pub fn is_allowed(mask: u8) -> bool {
    ALLOWED.contains(&mask)
}

pub fn is_primitive(mask: u8) -> bool {
    mask.count_ones() == 1
}

/// Swaps `r` and `l`.
pub fn rev(mask: u8) -> u8 {
    (mask & (E | N)) | ((mask & R) << 1) | ((mask & L) >> 1)
}

/// Spells a mask with the letters `rlen`.
pub fn format_mask(mask: u8) -> String {
    [(R, 'r'), (L, 'l'), (E, 'e'), (N, 'n')]
        .iter()
        .filter(|(b, _)| mask & b != 0)
        .map(|(_, c)| *c)
        .collect()
}

pub fn parse_mask(s: &str) -> Result<u8> {
    let mut mask = 0;
    for c in s.chars() {
        mask |= match c {
            'r' => R,
            'l' | 'ℓ' => L,
            'e' => E,
            'n' => N,
            _ => return Err(Error::Parse(format!("edge type {s:?}: unknown letter {c:?}"))),
        };
    }
    if !is_allowed(mask) {
        return Err(Error::Parse(format!("edge type {s:?} is not allowed")));
    }
    Ok(mask)
}

/// Primitive relation type of `(a, b)` in `P`.
pub fn relation_type(p: &Poset, a: Elem, b: Elem) -> u8 {
    if a == b {
        E
    } else if p.lt(a, b) {
        R
    } else if p.lt(b, a) {
        L
    } else {
        N
    }
}

/// An arrow diagram on `d` vertices, storing `M_{i,j}` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowDiagram {
    d: usize,
    m: Vec<u8>,
}

fn tri(d: usize, i: usize, j: usize) -> usize {
    // 1-based i < j, row-major over the upper triangle
    (i - 1) * (2 * d - i) / 2 + (j - i - 1)
}

impl ArrowDiagram {
    /// All edges free.
    pub fn free(d: usize) -> ArrowDiagram {
        ArrowDiagram {
            d,
            m: vec![FREE; d * d.saturating_sub(1) / 2],
        }
    }

    /// The diagram with `d = 0`, the unit of the star product.
    pub fn empty() -> ArrowDiagram {
        ArrowDiagram::free(0)
    }

    /// Free diagram with the listed edges `(i, j, mask)` set.
    pub fn new(d: usize, edges: &[(usize, usize, u8)]) -> Result<ArrowDiagram> {
        let mut out = ArrowDiagram::free(d);
        for &(i, j, mask) in edges {
            out.set(i, j, mask)?;
        }
        Ok(out)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `M_{i,j}` for distinct `i, j`, with `M_{j,i} = rev(M_{i,j})`.
    pub fn get(&self, i: usize, j: usize) -> u8 {
        if i < j {
            self.m[tri(self.d, i, j)]
        } else {
            rev(self.m[tri(self.d, j, i)])
        }
    }

    pub fn set(&mut self, i: usize, j: usize, mask: u8) -> Result<()> {
        if i == j || i == 0 || j == 0 || i.max(j) > self.d {
            return Err(Error::Param(format!("no edge ({i},{j}) on {} vertices", self.d)));
        }
        if !is_allowed(mask) {
            return Err(Error::Param(format!("edge type {mask} is not allowed")));
        }
        if i < j {
            self.m[tri(self.d, i, j)] = mask;
        } else {
            self.m[tri(self.d, j, i)] = rev(mask);
        }
        Ok(())
    }

    /// Edges `(i, j, mask)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        (1..=self.d).flat_map(move |i| (i + 1..=self.d).map(move |j| (i, j, self.get(i, j))))
    }

    pub fn is_primitive(&self) -> bool {
        self.m.iter().all(|&x| is_primitive(x))
    }

    /// Concatenation; edges between the two parts are free.
    pub fn star(&self, other: &ArrowDiagram) -> ArrowDiagram {
        let mut out = ArrowDiagram::free(self.d + other.d);
        for (i, j, mask) in self.edges() {
            out.m[tri(out.d, i, j)] = mask;
        }
        for (i, j, mask) in other.edges() {
            out.m[tri(out.d, i + self.d, j + self.d)] = mask;
        }
        out
    }

    /// Sum of the primitive diagrams obtained by choosing one type per edge.
    pub fn expand(&self) -> ArrowElement {
        let choices: Vec<Vec<u8>> = self
            .m
            .iter()
            .map(|&mask| [R, L, E, N].into_iter().filter(|b| mask & b != 0).collect())
            .collect();
        let mut out = ArrowElement::zero();
        for pick in choices.iter().map(|c| c.iter().copied()).multi_cartesian_product() {
            out.add_term(ArrowDiagram { d: self.d, m: pick }, 1);
        }
        out
    }

    /// `Swap_i`: reverses edge `(i, i+1)` and exchanges the other edges at
    /// `i` and `i+1`.
    pub fn swap(&self, i: usize) -> Result<ArrowDiagram> {
        if i == 0 || i >= self.d {
            return Err(Error::Param(format!("Swap_{i} needs 1 <= i < {}", self.d)));
        }
        let mut out = self.clone();
        let pos = |k: usize| if k == i { i + 1 } else if k == i + 1 { i } else { k };
        for (a, b, _) in self.edges() {
            out.m[tri(self.d, a, b)] = self.get(pos(a), pos(b));
        }
        Ok(out)
    }

    /// Words `w` with the relation type of `(w_i, w_j)` in `M_{i,j}`, in
    /// lexicographic order.
    pub fn fill(&self, p: &Poset) -> Vec<Word> {
        let n = p.n();
        if self.d == 0 {
            return vec![Vec::new()];
        }
        let types: Vec<Vec<u8>> = (1..=n as Elem)
            .map(|a| (1..=n as Elem).map(|b| relation_type(p, a, b)).collect())
            .collect();
        fn rec(m: &ArrowDiagram, types: &[Vec<u8>], w: &mut Word, out: &mut Vec<Word>) {
            let k = w.len() + 1;
            if k > m.d {
                out.push(w.clone());
                return;
            }
            for x in 1..=types.len() as Elem {
                let ok = w
                    .iter()
                    .enumerate()
                    .all(|(i, &a)| m.get(i + 1, k) & types[a as usize - 1][x as usize - 1] != 0);
                if ok {
                    w.push(x);
                    rec(m, types, w, out);
                    w.pop();
                }
            }
        }
        (1..=n as Elem)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut out = Vec::new();
                rec(self, &types, &mut vec![first], &mut out);
                out
            })
            .collect()
    }

    pub fn eval(&self, p: &Poset) -> NCElement {
        NCElement::from_words(self.fill(p))
    }

    /// Diagrams `L` with `M - L` among the generators of the ideal of the
    /// given name (`plac`, `h` or `pol`), beyond the (3+1) part.
    pub fn relation_partners(&self, ideal: &str) -> Result<Vec<ArrowDiagram>> {
        let d = self.d;
        let mut out = Vec::new();
        let not_l = |mask: u8| mask & L == 0;
        match ideal {
            "plac" | "knuth" | "h" => {
                for i in 2..d {
                    let (a, b, c) = (self.get(i - 1, i), self.get(i - 1, i + 1), self.get(i, i + 1));
                    if b == L && c == L && not_l(a) {
                        out.push(self.swap(i)?);
                    }
                    if a == L && b == L && not_l(c) {
                        out.push(self.swap(i - 1)?);
                    }
                    if a == N && b == N && c == L {
                        out.push(self.swap(i - 1)?.swap(i)?);
                    }
                }
                if ideal == "h" {
                    for i in 1..d {
                        if self.get(i, i + 1) == L {
                            out.push(self.swap(i)?);
                        }
                    }
                }
            }
            "pol" => {
                for i in 1..d {
                    out.push(self.swap(i)?);
                }
            }
            _ => return Err(Error::Param(format!("unknown ideal {ideal:?}"))),
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for ArrowDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.d)?;
        for (i, j, mask) in self.edges() {
            if mask != FREE {
                write!(f, " {i}{j}:{}", format_mask(mask))?;
            }
        }
        write!(f, "]")
    }
}

/// `orig_P(w)`: the primitive diagram of pairwise relation types.
pub fn orig(p: &Poset, w: &[Elem]) -> ArrowDiagram {
    let d = w.len();
    let mut out = ArrowDiagram::free(d);
    for i in 1..=d {
        for j in i + 1..=d {
            out.m[tri(d, i, j)] = relation_type(p, w[i - 1], w[j - 1]);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimitiveClass {
    /// In `I_closed`: no filling in any poset.
    Closed,
    /// Clique poset is not (3+1)-free.
    Not31Free(Poset),
    Ok(Poset),
}

/// Checks the `I_closed` conditions and builds the clique poset.
pub fn classify_primitive(m: &ArrowDiagram) -> Result<PrimitiveClass> {
    if !m.is_primitive() {
        return Err(Error::Param(format!("{m} is not primitive")));
    }
    let d = m.d;
    for i in 1..=d {
        for j in 1..=d {
            for k in 1..=d {
                if i == j || j == k || i == k {
                    continue;
                }
                if m.get(i, j) == R && m.get(j, k) == R && m.get(i, k) != R {
                    return Ok(PrimitiveClass::Closed);
                }
                if m.get(i, j) == E && m.get(i, k) != m.get(j, k) {
                    return Ok(PrimitiveClass::Closed);
                }
            }
        }
    }
    // e is an equivalence relation now; number the cliques by least vertex
    let mut clique = vec![0usize; d + 1];
    let mut count = 0;
    for i in 1..=d {
        clique[i] = (1..i).find(|&j| m.get(j, i) == E).map_or_else(
            || {
                count += 1;
                count
            },
            |j| clique[j],
        );
    }
    let mut rels = Vec::new();
    for (i, j, mask) in m.edges() {
        match mask {
            R => rels.push((clique[i] as Elem, clique[j] as Elem)),
            L => rels.push((clique[j] as Elem, clique[i] as Elem)),
            _ => {}
        }
    }
    let q = Poset::from_relations(count, &rels)?;
    Ok(if q.is_31_free() {
        PrimitiveClass::Ok(q)
    } else {
        PrimitiveClass::Not31Free(q)
    })
}

/// A finite integer combination of arrow diagrams.
///
/// Terms are kept as general diagrams; `expanded` gives the primitive
/// normal form, which decides equality in the algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArrowElement {
    terms: BTreeMap<ArrowDiagram, i64>,
}

impl ArrowElement {
    pub fn zero() -> ArrowElement {
        ArrowElement::default()
    }

    pub fn one() -> ArrowElement {
        ArrowElement::diagram(ArrowDiagram::empty())
    }

    pub fn diagram(m: ArrowDiagram) -> ArrowElement {
        let mut out = ArrowElement::zero();
        out.add_term(m, 1);
        out
    }

    pub fn terms(&self) -> &BTreeMap<ArrowDiagram, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: ArrowDiagram, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: i64) -> ArrowElement {
        let mut out = ArrowElement::zero();
        for (m, &x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn add(&self, other: &ArrowElement) -> ArrowElement {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &ArrowElement) -> ArrowElement {
        self.add(&other.scale(-1))
    }

    pub fn star(&self, other: &ArrowElement) -> ArrowElement {
        let mut out = ArrowElement::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                out.add_term(a.star(b), x * y);
            }
        }
        out
    }

    /// Primitive normal form.
    pub fn expanded(&self) -> ArrowElement {
        let mut out = ArrowElement::zero();
        for (m, &c) in &self.terms {
            for (q, &x) in &m.expand().terms {
                out.add_term(q.clone(), x * c);
            }
        }
        out
    }

    pub fn eval(&self, p: &Poset) -> NCElement {
        let mut out = NCElement::zero();
        for (m, &c) in &self.terms {
            out = &out + &m.eval(p).scale(c);
        }
        out
    }
}

/// `E_d`: `ℓ` on consecutive vertices, everything else free. Zero for
/// `d < 0`; `E_0` is the unit.
pub fn e_d(d: i64) -> ArrowElement {
    if d < 0 {
        return ArrowElement::zero();
    }
    let d = d as usize;
    let mut m = ArrowDiagram::free(d);
    for i in 1..d {
        m.m[tri(d, i, i + 1)] = L;
    }
    ArrowElement::diagram(m)
}

/// `E_α = E_{α_1} * ... * E_{α_l}`.
pub fn e_alpha(alpha: &[i64]) -> ArrowElement {
    alpha
        .iter()
        .fold(ArrowElement::one(), |acc, &k| acc.star(&e_d(k)))
}

/// Boxes `(row, col)` of `λ` in column reading order: columns left to
/// right, each from bottom to top.
pub fn column_reading_boxes(lambda: &[usize]) -> Vec<(usize, usize)> {
    transpose(lambda)
        .iter()
        .enumerate()
        .flat_map(|(c, &h)| (1..=h).rev().map(move |r| (r, c + 1)))
        .collect()
}

fn shape_diagram(lambda: &[usize], extra: &dyn Fn((usize, usize), (usize, usize)) -> u8) -> ArrowDiagram {
    let boxes = column_reading_boxes(lambda);
    let d = boxes.len();
    let mut m = ArrowDiagram::free(d);
    for i in 1..=d {
        for j in i + 1..=d {
            let (a, b) = (boxes[i - 1], boxes[j - 1]);
            let mut mask = FREE;
            if a.1 == b.1 && a.0 == b.0 + 1 {
                mask &= L;
            }
            if a.0 == b.0 && a.1 + 1 == b.1 {
                mask &= R | E | N;
            }
            mask &= extra(a, b);
            m.m[tri(d, i, j)] = mask;
        }
    }
    m
}

/// `D_λ`: fillings are column reading words of `P`-tableaux of shape `λ`.
pub fn d_lambda(lambda: &[usize]) -> ArrowDiagram {
    shape_diagram(lambda, &|_, _| FREE)
}

/// `D̃^m_λ`: `D_λ` plus `ℓ+e+n` from `(r+m, 1)` to `(r, k)`. Where two
/// rules meet on one edge (the `k = 2, m = 0` case) the masks intersect,
/// which gives `e+n`.
pub fn d_tilde(lambda: &[usize], m: usize) -> Result<ArrowDiagram> {
    let k = lambda.first().copied().unwrap_or(0);
    if k == 0 {
        return Ok(ArrowDiagram::empty());
    }
    let lt = transpose(lambda);
    let lo = lt[0] - lt[k - 1];
    if m < lo || m > lt[0] {
        return Err(Error::Param(format!("m = {m} outside {lo}..={}", lt[0])));
    }
    let rows = lt[0] - m;
    let wrap = move |a: (usize, usize), b: (usize, usize)| {
        let hit = |x: (usize, usize), y: (usize, usize)| {
            x.1 == 1 && y.1 == k && y.0 >= 1 && y.0 <= rows && x.0 == y.0 + m
        };
        if hit(a, b) {
            L | E | N
        } else if hit(b, a) {
            R | E | N
        } else {
            FREE
        }
    };
    Ok(shape_diagram(lambda, &wrap))
}

/// `𝔍_λ = Σ_π sgn(π) E_{λ'_1+π(1)-1} * ... * E_{λ'_k+π(k)-k}`.
pub fn j_diagram(lambda: &[usize]) -> ArrowElement {
    let lt = transpose(lambda);
    let k = lt.len();
    let mut out = ArrowElement::zero();
    for perm in (0..k).permutations(k) {
        let alpha: Vec<i64> = (0..k).map(|i| lt[i] as i64 + perm[i] as i64 - i as i64).collect();
        if alpha.iter().any(|&a| a < 0) {
            continue;
        }
        out = out.add(&e_alpha(&alpha).scale(perm_sign(&perm)));
    }
    out
}

/// `𝔪_λ = Σ_μ (K^{-1})_{λμ} 𝔍_μ`.
pub fn m_diagram(lambda: &[usize]) -> ArrowElement {
    let n: usize = lambda.iter().sum();
    let kt = kostka_table(n);
    let mut out = ArrowElement::zero();
    for mu in &kt.parts {
        let c = kt.kinv_at(lambda, mu);
        if c != 0 {
            out = out.add(&j_diagram(mu).scale(c));
        }
    }
    out
}

/// `𝔍_{λ/m}` with every `E_d` for `d > max_e` dropped. Under `Eval_P` this
/// is exact once `max_e` reaches the height of `P`.
pub fn j_cyl_diagram(lambda: &[usize], m: usize, max_e: usize) -> Result<ArrowElement> {
    let mut out = ArrowElement::zero();
    for (idx, sign) in cylinder_terms(lambda, m, max_e)? {
        out = out.add(&e_alpha(&idx).scale(sign));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{e_product, j_cyl, j_lambda, m_p};
    use crate::poset::{all_31_free, Content};
    use crate::quotient::{congruent_all, IdealKind};
    use crate::tableaux::enumerate;
    use crate::words::words_of_content;

    fn w(s: &str) -> Word {
        s.bytes().map(|b| b - b'0').collect()
    }

    fn two_plus_two() -> (Poset, ArrowDiagram) {
        let p = Poset::from_relations(4, &[(1, 3), (2, 4)]).unwrap();
        let mut m = ArrowDiagram::free(4);
        for (i, j, _) in ArrowDiagram::free(4).edges().collect::<Vec<_>>() {
            m.set(i, j, N).unwrap();
        }
        m.set(1, 4, R).unwrap();
        m.set(2, 3, L).unwrap();
        (p, m)
    }

    #[test]
    fn masks() {
        assert_eq!(rev(R | E), L | E);
        assert_eq!(format_mask(R | E | N), "ren");
        assert_eq!(parse_mask("en").unwrap(), E | N);
        assert!(parse_mask("rl").is_err());
        assert!(ArrowDiagram::new(2, &[(1, 2, R | L)]).is_err());
        let m = ArrowDiagram::new(3, &[(1, 3, R)]).unwrap();
        assert_eq!(m.get(3, 1), L);
    }

    #[test]
    fn two_plus_two_example() {
        let (p, m) = two_plus_two();
        assert_eq!(m.fill(&p), vec![w("1423"), w("2314")]);
        assert_eq!(orig(&p, &w("1423")), m);
        assert_eq!(orig(&p, &w("2314")), m);
    }

    #[test]
    fn expansion_counts() {
        let m = ArrowDiagram::new(3, &[(1, 2, E | N), (2, 3, R), (1, 3, E | N)]).unwrap();
        assert_eq!(m.expand().terms().len(), 4);
        let prim = ArrowDiagram::new(2, &[(1, 2, R)]).unwrap();
        assert_eq!(prim.expand(), ArrowElement::diagram(prim.clone()));
        assert_eq!(ArrowDiagram::free(2).expand().terms().len(), 4);
        assert_eq!(ArrowDiagram::empty().expand(), ArrowElement::one());
    }

    #[test]
    fn star_and_e_alpha() {
        assert_eq!(e_d(2).star(&e_d(2)), e_alpha(&[2, 2]));
        let x = e_alpha(&[3, 1]);
        assert_eq!(x.star(&ArrowElement::one()), x);
        let m = e_alpha(&[3, 2, 1]);
        let (diag, _) = m.terms().iter().next().unwrap();
        let ells: Vec<(usize, usize)> =
            diag.edges().filter(|e| e.2 == L).map(|e| (e.0, e.1)).collect();
        assert_eq!(ells, vec![(1, 2), (2, 3), (4, 5)]);
        assert!(diag.edges().all(|e| e.2 == L || e.2 == FREE));
        assert!(e_d(-1).is_zero());
    }

    #[test]
    fn eval_matches_word_algebra() {
        for p in [Poset::p_k(2, 4), Poset::from_relations(4, &[(1, 3), (2, 4)]).unwrap()] {
            for alpha in [vec![2, 1], vec![1, 2, 1], vec![3]] {
                let lam: Vec<usize> = alpha.iter().map(|&x| x as usize).collect();
                assert_eq!(e_alpha(&alpha).eval(&p), e_product(&p, &lam));
            }
            let a = e_alpha(&[2]).add(&ArrowElement::diagram(ArrowDiagram::new(2, &[(1, 2, N)]).unwrap()));
            let b = ArrowElement::diagram(d_lambda(&[2, 1]));
            assert_eq!(a.star(&b).eval(&p), &a.eval(&p) * &b.eval(&p));
            assert_eq!(a.expanded().eval(&p), a.eval(&p));
        }
    }

    #[test]
    fn d_lambda_fills_are_creads() {
        let p = Poset::p_k(2, 5);
        for lambda in [vec![2, 2], vec![3, 1], vec![2, 1, 1]] {
            let mut creads: Vec<Word> = enumerate(&p, &lambda, None).iter().map(|t| t.cread()).collect();
            creads.sort();
            let mut fills = d_lambda(&lambda).fill(&p);
            fills.sort();
            assert_eq!(fills, creads);
        }
    }

    #[test]
    fn d_tilde_shapes() {
        let m = d_tilde(&[4, 4], 0).unwrap();
        assert_eq!(m.get(2, 8), L | E | N);
        assert_eq!(m.get(1, 7), L | E | N);
        assert_eq!(m.get(2, 4), R | E | N);
        assert_eq!(m.get(1, 2), L);
        let deg = d_tilde(&[2, 2], 0).unwrap();
        assert_eq!(deg.get(2, 4), E | N);
        assert_eq!(deg.get(1, 3), E | N);
        assert!(d_tilde(&[2, 1], 0).is_err());
        assert!(d_tilde(&[2, 1], 3).is_err());
        assert!(d_tilde(&[2, 1], 1).is_ok());
    }

    #[test]
    fn j_and_m_diagrams_evaluate() {
        let p = Poset::p_k(2, 4);
        for lambda in [vec![2, 1], vec![2, 2], vec![3, 1]] {
            assert_eq!(j_diagram(&lambda).eval(&p), j_lambda(&p, &lambda));
            assert_eq!(m_diagram(&lambda).eval(&p), m_p(&p, &lambda));
        }
        let m2 = m_diagram(&[2]).expanded();
        let check = e_alpha(&[1, 1]).sub(&e_alpha(&[2]).scale(2)).expanded();
        assert_eq!(m2, check);
        let q = Poset::p_k(2, 3);
        let cyl = j_cyl_diagram(&[2, 1], 1, q.n()).unwrap().eval(&q);
        assert_eq!(cyl, j_cyl(&q, &[2, 1], 1).unwrap());
    }

    #[test]
    fn rectangle_small() {
        for n in 1..=4 {
            for p in all_31_free(n) {
                for lambda in [vec![2], vec![1, 1], vec![2, 2]] {
                    let a = m_diagram(&lambda).eval(&p).commutative_image();
                    let b = d_tilde(&lambda, 0).unwrap().eval(&p).commutative_image();
                    assert_eq!(a, b, "{lambda:?}");
                }
            }
        }
    }

    #[test]
    fn swap_properties() {
        let p = Poset::p_k(2, 4);
        let m = ArrowDiagram::new(4, &[(1, 2, R), (2, 3, E | N), (2, 4, L), (1, 3, N)]).unwrap();
        for i in 1..4 {
            let s = m.swap(i).unwrap();
            assert_eq!(s.swap(i).unwrap(), m);
            let mut moved: Vec<Word> = m
                .fill(&p)
                .into_iter()
                .map(|mut x| {
                    x.swap(i - 1, i);
                    x
                })
                .collect();
            moved.sort();
            assert_eq!(moved, s.fill(&p));
        }
        assert!(m.swap(4).is_err());
    }

    #[test]
    fn classification() {
        let closed = ArrowDiagram::new(3, &[(1, 2, R), (2, 3, R), (1, 3, N)]).unwrap();
        assert_eq!(classify_primitive(&closed).unwrap(), PrimitiveClass::Closed);
        let m = ArrowDiagram::new(3, &[(1, 2, N), (2, 3, R), (1, 3, N)]).unwrap();
        let two_one = Poset::from_relations(3, &[(1, 2)]).unwrap();
        match classify_primitive(&m).unwrap() {
            PrimitiveClass::Ok(q) => assert_eq!(q.canonical_key(), two_one.canonical_key()),
            other => panic!("{other:?}"),
        }
        let mut c = ArrowDiagram::new(4, &[(1, 2, R), (2, 3, R), (1, 3, R)]).unwrap();
        for i in 1..=3 {
            c.set(i, 4, N).unwrap();
        }
        assert!(matches!(classify_primitive(&c).unwrap(), PrimitiveClass::Not31Free(_)));
        assert!(classify_primitive(&ArrowDiagram::free(2)).is_err());
    }

    #[test]
    fn closed_iff_no_clique_filling() {
        for d in 2..=3 {
            for m in ArrowDiagram::free(d).expand().terms().keys() {
                match classify_primitive(m).unwrap() {
                    PrimitiveClass::Closed => {
                        for p in all_31_free(3) {
                            assert!(m.fill(&p).is_empty(), "{m}");
                        }
                    }
                    PrimitiveClass::Ok(q) | PrimitiveClass::Not31Free(q) => {
                        assert!(!m.fill(&q).is_empty(), "{m}");
                    }
                }
            }
        }
    }

    #[test]
    fn fibers_of_orig() {
        let p = Poset::p_k(2, 4);
        for beta in Content::all_of_size(4, 3) {
            for word in words_of_content(&beta) {
                let m = orig(&p, &word);
                let fills = m.fill(&p);
                assert!(fills.contains(&word));
                assert!(fills.iter().all(|x| orig(&p, x) == m));
            }
        }
    }

    #[test]
    fn diagram_relations_evaluate_into_word_ideals() {
        let p = Poset::p_k(2, 4);
        for m in ArrowDiagram::free(3).expand().terms().keys() {
            for (ideal, kind) in [("plac", IdealKind::Plac), ("h", IdealKind::H), ("pol", IdealKind::Pol)] {
                for l in m.relation_partners(ideal).unwrap() {
                    assert!(congruent_all(&p, &m.eval(&p), &l.eval(&p), kind).unwrap(), "{m} {l}");
                }
            }
        }
    }
}
