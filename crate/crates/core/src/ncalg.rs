//! Elements of the free algebra `U_P` with coefficients in `Z[t]`, and the
//! noncommutative P-functions built from them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::poset::{Content, Elem, Poset, Word};
use crate::symfun::{kostka_table, transpose, Partition, PolyT, QSymExpr};
use crate::words::{des_mask, inv_unchecked, words_of_content};

/// Finitely supported sum of words; a word `w` stands for `u_w` (or for
/// the dual basis vector, depending on the side of the pairing).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCElement {
    terms: BTreeMap<Word, PolyT>,
}

impl NCElement {
    pub fn zero() -> NCElement {
        NCElement::default()
    }

    pub fn one() -> NCElement {
        NCElement::word(Vec::new())
    }

    pub fn word(w: Word) -> NCElement {
        let mut e = NCElement::zero();
        e.terms.insert(w, PolyT::one());
        e
    }

    /// Sum of the given words, each with coefficient one (repeats add up).
    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> NCElement {
        let mut e = NCElement::zero();
        for w in words {
            e.add_term(w, &PolyT::one());
        }
        e
    }

    pub fn terms(&self) -> &BTreeMap<Word, PolyT> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coef(&self, w: &[Elem]) -> PolyT {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: &PolyT) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn scale(&self, c: i64) -> NCElement {
        let mut r = NCElement::zero();
        for (w, x) in &self.terms {
            r.add_term(w.clone(), &x.scale(c));
        }
        r
    }

    /// Common word length, if homogeneous (`None` for zero or mixed).
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.len());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn contents(&self) -> BTreeSet<Content> {
        self.terms.keys().map(|w| Content::of_word(w)).collect()
    }

    /// The part supported on words of content `beta`.
    pub fn restrict(&self, beta: &Content) -> NCElement {
        NCElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| Content::of_word(w) == *beta)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Image in the commutative quotient: coefficient per content.
    pub fn commutative_image(&self) -> BTreeMap<Content, PolyT> {
        let mut out: BTreeMap<Content, PolyT> = BTreeMap::new();
        for (w, c) in &self.terms {
            let e = out.entry(Content::of_word(w)).or_default();
            *e += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Specialises `t` to an integer.
    pub fn at_t(&self, t: i64) -> NCElement {
        let mut r = NCElement::zero();
        for (w, c) in &self.terms {
            r.add_term(w.clone(), &PolyT::constant(c.eval(t)));
        }
        r
    }
}

impl Add for &NCElement {
    type Output = NCElement;
    fn add(self, o: &NCElement) -> NCElement {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c);
        }
        r
    }
}

impl Sub for &NCElement {
    type Output = NCElement;
    fn sub(self, o: &NCElement) -> NCElement {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), &-c);
        }
        r
    }
}

impl Neg for &NCElement {
    type Output = NCElement;
    fn neg(self) -> NCElement {
        self.scale(-1)
    }
}

impl Mul for &NCElement {
    type Output = NCElement;
    fn mul(self, o: &NCElement) -> NCElement {
        let mut r = NCElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                r.add_term(w, &(c1 * c2));
            }
        }
        r
    }
}

/// `e_k^P(u_S)`: decreasing chains of length `k` inside `support`.
pub fn e_p(p: &Poset, k: i64, support: u64) -> NCElement {
    if k < 0 {
        return NCElement::zero();
    }
    if k == 0 {
        return NCElement::one();
    }
    NCElement::from_words(p.chains(support, k as usize))
}

/// `e_k^P` over all of `P`.
pub fn e_full(p: &Poset, k: i64) -> NCElement {
    e_p(p, k, p.full_mask())
}

/// `h_ℓ^P`: words `w_1 ⩪-> w_2 ⩪-> ... ⩪-> w_ℓ`.
pub fn h_p(p: &Poset, ell: usize) -> NCElement {
    let mut words: Vec<Word> = vec![Vec::new()];
    for _ in 0..ell {
        let mut next = Vec::new();
        for w in &words {
            for x in p.elements() {
                if w.last().map_or(true, |&y| p.inc_or_lt(y, x)) {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        words = next;
    }
    NCElement::from_words(words)
}

/// `Σ_i (-1)^i h_{m-i} e_i`, which vanishes identically.
pub fn newton_sum(p: &Poset, m: usize) -> NCElement {
    let mut total = NCElement::zero();
    for i in 0..=m {
        let term = &h_p(p, m - i) * &e_full(p, i as i64);
        total = if i % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

pub fn newton_check(p: &Poset, m: usize) -> bool {
    newton_sum(p, m).is_zero()
}

pub(crate) fn perm_sign(perm: &[usize]) -> i64 {
    let inversions = perm
        .iter()
        .tuple_combinations()
        .filter(|(a, b)| a > b)
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Column-flagged `J_α^P(Z) = Σ_π sgn(π) Π_i e_{α_i+π(i)-i}(u_{Z_i})`.
pub fn j_flagged(p: &Poset, alpha: &[i64], z: &[u64]) -> Result<NCElement> {
    if alpha.len() != z.len() {
        return Err(Error::Param("alpha and Z have different lengths".into()));
    }
    let l = alpha.len();
    let mut cache: HashMap<(i64, u64), NCElement> = HashMap::new();
    let mut total = NCElement::zero();
    for perm in (0..l).permutations(l) {
        let mut prod = NCElement::one();
        for i in 0..l {
            let k = alpha[i] + perm[i] as i64 - i as i64;
            let f = cache.entry((k, z[i])).or_insert_with(|| e_p(p, k, z[i]));
            if f.is_zero() {
                prod = NCElement::zero();
                break;
            }
            prod = &prod * f;
        }
        if !prod.is_zero() {
            total = &total + &prod.scale(perm_sign(&perm));
        }
    }
    Ok(total)
}

/// `J_λ^P = J_{λ'}^P(P, ..., P)`.
pub fn j_lambda(p: &Poset, lambda: &[usize]) -> NCElement {
    let lt = transpose(lambda);
    let alpha: Vec<i64> = lt.iter().map(|&x| x as i64).collect();
    let z = vec![p.full_mask(); alpha.len()];
    j_flagged(p, &alpha, &z).expect("lengths agree")
}

/// `m_λ^P = Σ_μ (K^{-1})_{λμ} J_μ^P`.
pub fn m_p(p: &Poset, lambda: &[usize]) -> NCElement {
    let n: usize = lambda.iter().sum();
    let kt = kostka_table(n);
    let mut total = NCElement::zero();
    for mu in &kt.parts {
        let c = kt.kinv_at(lambda, mu);
        if c != 0 {
            total = &total + &j_lambda(p, mu).scale(c);
        }
    }
    total
}

/// Exponent vectors `(a_1..a_k)` summing to zero and the permutations that
/// give a nonvanishing product in the cylindrical sum.
pub(crate) fn cylinder_terms(lambda: &[usize], m: usize, max_e: usize) -> Result<Vec<(Vec<i64>, i64)>> {
    let k = lambda.first().copied().unwrap_or(0);
    let lt = transpose(lambda);
    if k == 0 {
        return Ok(vec![(Vec::new(), 1)]);
    }
    let lo = lt[0] - lt[k - 1];
    if m < lo || m > lt[0] {
        return Err(Error::Param(format!("m = {m} outside {lo}..={}", lt[0])));
    }
    let period = (k + m) as i64;
    let bound = ((max_e + lt[0] + k) as i64) / period + 1;
    let mut out = Vec::new();
    let mut a = vec![0i64; k];
    fn rec(
        i: usize,
        a: &mut Vec<i64>,
        bound: i64,
        k: usize,
        period: i64,
        lt: &[usize],
        max_e: usize,
        out: &mut Vec<(Vec<i64>, i64)>,
    ) {
        if i == k - 1 {
            let s: i64 = a[..k - 1].iter().sum();
            a[k - 1] = -s;
            if a[k - 1].abs() > bound {
                return;
            }
            for perm in (0..k).permutations(k) {
                let idx: Vec<i64> = (0..k)
                    .map(|j| a[j] * period + lt[j] as i64 + perm[j] as i64 - j as i64)
                    .collect();
                if idx.iter().all(|&d| d >= 0 && d <= max_e as i64) {
                    out.push((idx, perm_sign(&perm)));
                }
            }
            return;
        }
        for v in -bound..=bound {
            a[i] = v;
            rec(i + 1, a, bound, k, period, lt, max_e, out);
        }
    }
    rec(0, &mut a, bound, k, period, &lt, max_e, &mut out);
    Ok(out)
}

/// Cylindrical `J_{λ/m}^P`.
pub fn j_cyl(p: &Poset, lambda: &[usize], m: usize) -> Result<NCElement> {
    let terms = cylinder_terms(lambda, m, p.n())?;
    let mut cache: HashMap<i64, NCElement> = HashMap::new();
    let mut total = NCElement::zero();
    for (idx, sign) in terms {
        let mut prod = NCElement::one();
        for d in idx {
            let f = cache.entry(d).or_insert_with(|| e_full(p, d));
            prod = &prod * f;
            if prod.is_zero() {
                break;
            }
        }
        total = &total + &prod.scale(sign);
    }
    Ok(total)
}

/// `W_β` (all words of content β) or `W_β(t)` weighted by `t^{inv_P}`.
pub fn w_beta(p: &Poset, beta: &Content, with_t: bool) -> Result<NCElement> {
    if with_t && !p.has_order() {
        return Err(Error::NotNuio);
    }
    let mut e = NCElement::zero();
    for w in words_of_content(beta) {
        let c = if with_t {
            PolyT::monomial(1, inv_unchecked(p, &w))
        } else {
            PolyT::one()
        };
        e.add_term(w, &c);
    }
    Ok(e)
}

/// `⟨f, γ⟩ = Σ_w f[w] γ[w]`.
pub fn pair(f: &NCElement, gamma: &NCElement) -> PolyT {
    let (small, big) = if f.len() <= gamma.len() { (f, gamma) } else { (gamma, f) };
    let mut total = PolyT::zero();
    for (w, c) in &small.terms {
        if let Some(d) = big.terms.get(w) {
            total += &(c * d);
        }
    }
    total
}

/// `F_γ = Σ_w γ_w Q_{Des_P(w)}`.
pub fn f_gamma(p: &Poset, gamma: &NCElement) -> Result<QSymExpr> {
    if gamma.is_zero() {
        return Ok(QSymExpr::zero(0));
    }
    let n = gamma.degree().ok_or(Error::MixedDegree)?;
    let mut coeffs: HashMap<u32, PolyT> = HashMap::new();
    for (w, c) in &gamma.terms {
        *coeffs.entry(des_mask(p, w)).or_default() += c;
    }
    Ok(QSymExpr::from_fundamentals(n, &coeffs))
}

/// Letters of a partition-indexed product `e_{λ_1} e_{λ_2} ...`.
pub fn e_product(p: &Poset, lambda: &[usize]) -> NCElement {
    lambda
        .iter()
        .fold(NCElement::one(), |acc, &k| &acc * &e_full(p, k as i64))
}

/// Convenience: the `J` of a partition given in the `Partition` type.
pub fn j_of(p: &Poset, lambda: &Partition) -> NCElement {
    j_lambda(p, lambda)
}
