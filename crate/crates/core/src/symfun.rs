//! Homogeneous symmetric and quasisymmetric functions with coefficients in
//! `Z[t]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use itertools::Itertools;

use crate::error::{Error, Result};

pub type Partition = Vec<usize>;
pub type Composition = Vec<usize>;

fn add_i(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow")
}

fn mul_i(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow")
}

/// Polynomial in `t` with integer coefficients, ascending powers, no
/// trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyT(Vec<i64>);

impl PolyT {
    pub fn zero() -> PolyT {
        PolyT(Vec::new())
    }

    pub fn one() -> PolyT {
        PolyT(vec![1])
    }

    pub fn constant(c: i64) -> PolyT {
        PolyT::from_coeffs(vec![c])
    }

    /// `c * t^d`.
    pub fn monomial(c: i64, d: usize) -> PolyT {
        let mut v = vec![0; d + 1];
        v[d] = c;
        PolyT::from_coeffs(v)
    }

    pub fn from_coeffs(mut v: Vec<i64>) -> PolyT {
        while v.last() == Some(&0) {
            v.pop();
        }
        PolyT(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Constant polynomial value, if `t` does not occur.
    pub fn as_constant(&self) -> Option<i64> {
        match self.0.len() {
            0 => Some(0),
            1 => Some(self.0[0]),
            _ => None,
        }
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| add_i(mul_i(acc, t), c))
    }

    pub fn scale(&self, c: i64) -> PolyT {
        PolyT::from_coeffs(self.0.iter().map(|&x| mul_i(x, c)).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl AddAssign<&PolyT> for PolyT {
    fn add_assign(&mut self, o: &PolyT) {
        if self.0.len() < o.0.len() {
            self.0.resize(o.0.len(), 0);
        }
        for (a, &b) in self.0.iter_mut().zip(&o.0) {
            *a = add_i(*a, b);
        }
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }
}

impl SubAssign<&PolyT> for PolyT {
    fn sub_assign(&mut self, o: &PolyT) {
        *self += &(-o);
    }
}

impl Add<&PolyT> for &PolyT {
    type Output = PolyT;
    fn add(self, o: &PolyT) -> PolyT {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Sub<&PolyT> for &PolyT {
    type Output = PolyT;
    fn sub(self, o: &PolyT) -> PolyT {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl Neg for &PolyT {
    type Output = PolyT;
    fn neg(self) -> PolyT {
        PolyT(self.0.iter().map(|&c| -c).collect())
    }
}

impl Mul<&PolyT> for &PolyT {
    type Output = PolyT;
    fn mul(self, o: &PolyT) -> PolyT {
        if self.is_zero() || o.is_zero() {
            return PolyT::zero();
        }
        let mut v = vec![0i64; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                v[i + j] = add_i(v[i + j], mul_i(a, b));
            }
        }
        PolyT::from_coeffs(v)
    }
}

impl fmt::Display for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "{}", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "t")?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Partitions of `n`, reverse lexicographic (`(n)` first).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn transpose(lambda: &[usize]) -> Partition {
    let first = lambda.first().copied().unwrap_or(0);
    (1..=first)
        .map(|c| lambda.iter().filter(|&&r| r >= c).count())
        .collect()
}

pub fn dominates(lambda: &[usize], mu: &[usize]) -> bool {
    let mut a = 0;
    let mut b = 0;
    for i in 0..lambda.len().max(mu.len()) {
        a += lambda.get(i).copied().unwrap_or(0);
        b += mu.get(i).copied().unwrap_or(0);
        if a < b {
            return false;
        }
    }
    true
}

pub fn is_hook(lambda: &[usize]) -> bool {
    lambda.iter().skip(1).all(|&r| r == 1)
}

/// Compositions of `n` in lexicographic order.
pub fn compositions(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![vec![]];
    }
    (0..1u32 << (n - 1)).map(|m| comp_of_mask(n, m)).sorted().collect()
}

/// Composition whose partial sums are the set bits (`bit i-1` for `i`).
pub fn comp_of_mask(n: usize, mask: u32) -> Composition {
    let mut out = Vec::new();
    let mut last = 0;
    for i in 1..n {
        if mask & (1 << (i - 1)) != 0 {
            out.push(i - last);
            last = i;
        }
    }
    if n > 0 {
        out.push(n - last);
    }
    out
}

pub fn mask_of_comp(c: &[usize]) -> u32 {
    let mut m = 0;
    let mut s = 0;
    for &part in &c[..c.len().saturating_sub(1)] {
        s += part;
        m |= 1 << (s - 1);
    }
    m
}

/// Quasisymmetric function in the monomial basis `M_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSymExpr {
    pub degree: usize,
    pub terms: BTreeMap<Composition, PolyT>,
}

impl QSymExpr {
    pub fn zero(degree: usize) -> QSymExpr {
        QSymExpr {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn coeff(&self, alpha: &[usize]) -> PolyT {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, alpha: Composition, c: &PolyT) {
        let e = self.terms.entry(alpha.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    /// `Σ_S c_S Q_S` from coefficients indexed by descent masks.
    pub fn from_fundamentals(degree: usize, coeffs: &HashMap<u32, PolyT>) -> QSymExpr {
        if degree == 0 {
            let mut q = QSymExpr::zero(0);
            if let Some(c) = coeffs.get(&0) {
                if !c.is_zero() {
                    q.terms.insert(vec![], c.clone());
                }
            }
            return q;
        }
        let bits = degree - 1;
        let size = 1usize << bits;
        let mut table = vec![PolyT::zero(); size];
        for (&m, c) in coeffs {
            table[m as usize] += c;
        }
        // superset sums: M_T collects every Q_S with S ⊆ T
        for b in 0..bits {
            for t in 0..size {
                if t & (1 << b) != 0 {
                    let (lo, hi) = table.split_at_mut(t);
                    hi[0] += &lo[t ^ (1 << b)];
                }
            }
        }
        let mut q = QSymExpr::zero(degree);
        for (t, c) in table.into_iter().enumerate() {
            if !c.is_zero() {
                q.terms.insert(comp_of_mask(degree, t as u32), c);
            }
        }
        q
    }

    /// Recovers the fundamental coefficients by Möbius inversion.
    pub fn to_fundamentals(&self) -> HashMap<u32, PolyT> {
        if self.degree == 0 {
            return self.terms.get(&vec![]).map(|c| (0u32, c.clone())).into_iter().collect();
        }
        let bits = self.degree - 1;
        let size = 1usize << bits;
        let mut table = vec![PolyT::zero(); size];
        for (alpha, c) in &self.terms {
            table[mask_of_comp(alpha) as usize] = c.clone();
        }
        for b in 0..bits {
            for t in 0..size {
                if t & (1 << b) != 0 {
                    let (lo, hi) = table.split_at_mut(t);
                    hi[0] -= &lo[t ^ (1 << b)];
                }
            }
        }
        table
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m as u32, c))
            .collect()
    }
}

/// `Q_S` for a descent set `S ⊆ {1..n-1}` (1-based positions).
pub fn fundamental(n: usize, s: &[usize]) -> QSymExpr {
    let mask = s.iter().fold(0u32, |m, &i| m | (1 << (i - 1)));
    let mut coeffs = HashMap::new();
    coeffs.insert(mask, PolyT::one());
    QSymExpr::from_fundamentals(n, &coeffs)
}

/// Distinct rearrangements of a partition.
fn rearrangements(lambda: &[usize]) -> Vec<Composition> {
    let mut cur: Vec<usize> = lambda.iter().copied().sorted().collect();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Returns the monomial expansion if the coefficient is constant on every
/// rearrangement class.
pub fn detect_symmetric(q: &QSymExpr) -> Result<SymExpr> {
    let mut out = SymExpr::zero(q.degree, Basis::M);
    for lambda in partitions(q.degree) {
        let mut class = rearrangements(&lambda);
        class.reverse();
        let c0 = q.coeff(&class[0]);
        for alpha in &class[1..] {
            if q.coeff(alpha) != c0 {
                return Err(Error::NotSymmetric(class[0].clone(), alpha.clone()));
            }
        }
        if !c0.is_zero() {
            out.terms.insert(lambda, c0);
        }
    }
    for alpha in q.terms.keys() {
        if alpha.iter().sum::<usize>() != q.degree {
            return Err(Error::Param(format!("composition {alpha:?} has the wrong degree")));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    M,
    E,
    H,
    S,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::E => "e",
            Basis::H => "h",
            Basis::S => "s",
        }
    }

    pub fn parse(s: &str) -> Result<Basis> {
        match s {
            "m" => Ok(Basis::M),
            "e" => Ok(Basis::E),
            "h" => Ok(Basis::H),
            "s" => Ok(Basis::S),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

/// Kostka numbers `K_{λμ}` by counting SSYT: peel off the largest entry as
/// a horizontal strip.
pub fn kostka(lambda: &[usize], mu: &[usize]) -> i64 {
    if lambda.iter().sum::<usize>() != mu.iter().sum::<usize>() {
        return 0;
    }
    let mut memo = HashMap::new();
    kostka_rec(lambda.to_vec(), mu, &mut memo)
}

fn kostka_rec(lambda: Partition, mu: &[usize], memo: &mut HashMap<(Partition, usize), i64>) -> i64 {
    let Some((&last, rest)) = mu.split_last() else {
        return i64::from(lambda.is_empty());
    };
    if let Some(&v) = memo.get(&(lambda.clone(), mu.len())) {
        return v;
    }
    let mut total = 0;
    for nu in horizontal_strips_below(&lambda, last) {
        total += kostka_rec(nu, rest, memo);
    }
    memo.insert((lambda, mu.len()), total);
    total
}

// Partitions nu ⊆ lambda with lambda/nu a horizontal strip of the given size.
fn horizontal_strips_below(lambda: &[usize], size: usize) -> Vec<Partition> {
    fn rec(lambda: &[usize], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == lambda.len() {
            if left == 0 {
                let mut nu = cur.clone();
                while nu.last() == Some(&0) {
                    nu.pop();
                }
                out.push(nu);
            }
            return;
        }
        let lower = lambda.get(i + 1).copied().unwrap_or(0);
        for take in 0..=left.min(lambda[i] - lower) {
            cur.push(lambda[i] - take);
            rec(lambda, i + 1, left - take, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(lambda, 0, size, &mut Vec::new(), &mut out);
    out
}

/// Kostka matrix of one degree and its exact inverse.
#[derive(Debug)]
pub struct KostkaTable {
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    pub k: Vec<Vec<i64>>,
    pub kinv: Vec<Vec<i64>>,
}

impl KostkaTable {
    fn build(n: usize) -> KostkaTable {
        let parts = partitions(n);
        let index: HashMap<Partition, usize> =
            parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let np = parts.len();
        let mut k = vec![vec![0i64; np]; np];
        for i in 0..np {
            for j in i..np {
                k[i][j] = kostka(&parts[i], &parts[j]);
            }
        }
        // upper unitriangular: back substitution column by column
        let mut kinv = vec![vec![0i64; np]; np];
        for j in 0..np {
            kinv[j][j] = 1;
            for i in (0..j).rev() {
                let mut s = 0i64;
                for l in i + 1..=j {
                    s = add_i(s, mul_i(k[i][l], kinv[l][j]));
                }
                kinv[i][j] = -s;
            }
        }
        KostkaTable { parts, index, k, kinv }
    }

    pub fn idx(&self, lambda: &[usize]) -> usize {
        self.index[lambda]
    }

    pub fn k_at(&self, lambda: &[usize], mu: &[usize]) -> i64 {
        self.k[self.idx(lambda)][self.idx(mu)]
    }

    pub fn kinv_at(&self, lambda: &[usize], mu: &[usize]) -> i64 {
        self.kinv[self.idx(lambda)][self.idx(mu)]
    }
}

/// Cached Kostka table for degree `n`.
pub fn kostka_table(n: usize) -> Arc<KostkaTable> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<KostkaTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(KostkaTable::build(n));
    cache.write().unwrap().entry(n).or_insert(t).clone()
}

/// Homogeneous symmetric function in one of the bases `m, e, h, s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymExpr {
    pub degree: usize,
    pub basis: Basis,
    pub terms: BTreeMap<Partition, PolyT>,
}

impl SymExpr {
    pub fn zero(degree: usize, basis: Basis) -> SymExpr {
        SymExpr {
            degree,
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(basis: Basis, lambda: Partition) -> SymExpr {
        let mut f = SymExpr::zero(lambda.iter().sum(), basis);
        f.terms.insert(lambda, PolyT::one());
        f
    }

    /// Builds from `(partition, integer)` pairs.
    pub fn from_ints(basis: Basis, degree: usize, terms: &[(&[usize], i64)]) -> SymExpr {
        let mut f = SymExpr::zero(degree, basis);
        for (lambda, c) in terms {
            f.add_term(lambda.to_vec(), &PolyT::constant(*c));
        }
        f
    }

    pub fn coeff(&self, lambda: &[usize]) -> PolyT {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, lambda: Partition, c: &PolyT) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(lambda.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn add(&self, other: &SymExpr) -> SymExpr {
        let o = other.change_basis(self.basis);
        let mut r = self.clone();
        for (l, c) in &o.terms {
            r.add_term(l.clone(), c);
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates every coefficient at `t`.
    pub fn at_t(&self, t: i64) -> SymExpr {
        let mut r = SymExpr::zero(self.degree, self.basis);
        for (l, c) in &self.terms {
            r.add_term(l.clone(), &PolyT::constant(c.eval(t)));
        }
        r
    }

    /// Coefficient of `t^d` as an integer-coefficient expression.
    pub fn t_coefficient(&self, d: usize) -> SymExpr {
        let mut r = SymExpr::zero(self.degree, self.basis);
        for (l, c) in &self.terms {
            r.add_term(l.clone(), &PolyT::constant(c.coeff(d)));
        }
        r
    }

    fn to_s(&self) -> SymExpr {
        let kt = kostka_table(self.degree);
        let mut out = SymExpr::zero(self.degree, Basis::S);
        for (mu, c) in &self.terms {
            match self.basis {
                Basis::S => out.add_term(mu.clone(), c),
                // m_μ = Σ_λ Kinv[μ][λ] s_λ
                Basis::M => {
                    for lam in &kt.parts {
                        let x = kt.kinv_at(mu, lam);
                        if x != 0 {
                            out.add_term(lam.clone(), &c.scale(x));
                        }
                    }
                }
                // h_μ = Σ_λ K[λ][μ] s_λ
                Basis::H => {
                    for lam in &kt.parts {
                        let x = kt.k_at(lam, mu);
                        if x != 0 {
                            out.add_term(lam.clone(), &c.scale(x));
                        }
                    }
                }
                // e_μ = Σ_λ K[λ][μ] s_λ'
                Basis::E => {
                    for lam in &kt.parts {
                        let x = kt.k_at(lam, mu);
                        if x != 0 {
                            out.add_term(transpose(lam), &c.scale(x));
                        }
                    }
                }
            }
        }
        out
    }

    fn from_s(&self, target: Basis) -> SymExpr {
        debug_assert_eq!(self.basis, Basis::S);
        let kt = kostka_table(self.degree);
        let mut out = SymExpr::zero(self.degree, target);
        for (lam, c) in &self.terms {
            match target {
                Basis::S => out.add_term(lam.clone(), c),
                // s_λ = Σ_μ K[λ][μ] m_μ
                Basis::M => {
                    for mu in &kt.parts {
                        let x = kt.k_at(lam, mu);
                        if x != 0 {
                            out.add_term(mu.clone(), &c.scale(x));
                        }
                    }
                }
                // s_λ = Σ_μ Kinv[μ][λ] h_μ
                Basis::H => {
                    for mu in &kt.parts {
                        let x = kt.kinv_at(mu, lam);
                        if x != 0 {
                            out.add_term(mu.clone(), &c.scale(x));
                        }
                    }
                }
                // s_λ = ω s_λ' = Σ_μ Kinv[μ][λ'] e_μ
                Basis::E => {
                    let lt = transpose(lam);
                    for mu in &kt.parts {
                        let x = kt.kinv_at(mu, &lt);
                        if x != 0 {
                            out.add_term(mu.clone(), &c.scale(x));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn change_basis(&self, target: Basis) -> SymExpr {
        if self.basis == target {
            return self.clone();
        }
        self.to_s().from_s(target)
    }

    pub fn omega(&self) -> SymExpr {
        let relabel = |basis: Basis, f: &SymExpr, tr: bool| {
            let mut out = SymExpr::zero(f.degree, basis);
            for (l, c) in &f.terms {
                out.add_term(if tr { transpose(l) } else { l.clone() }, c);
            }
            out
        };
        match self.basis {
            Basis::H => relabel(Basis::E, self, false),
            Basis::E => relabel(Basis::H, self, false),
            Basis::S => relabel(Basis::S, self, true),
            Basis::M => relabel(Basis::S, &self.to_s(), true).from_s(Basis::M),
        }
    }

    /// `Ok` if every coefficient in `basis` is a polynomial with nonnegative
    /// coefficients; else the first offending term.
    pub fn is_positive(&self, basis: Basis) -> std::result::Result<(), (Partition, PolyT)> {
        let f = self.change_basis(basis);
        for (l, c) in &f.terms {
            if !c.is_nonnegative() {
                return Err((l.clone(), c.clone()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let b = self.basis.tag();
        let s = self
            .terms
            .iter()
            .rev()
            .map(|(l, c)| {
                let name = format!("{b}{}", l.iter().join(","));
                match c.as_constant() {
                    Some(1) => name,
                    _ => format!("({c}){name}"),
                }
            })
            .join(" + ");
        write!(f, "{s}")
    }
}
