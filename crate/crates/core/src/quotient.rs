//! Fixed-content quotients of the free algebra by the binomial ideals
//! `I_plac`, `I_H` and `I_pol`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::ncalg::{pair, NCElement};
use crate::poset::{Content, Elem, Poset, Word};
use crate::symfun::PolyT;
use crate::words::words_of_content;

/// Which local move produced an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    /// `{bac, bca}`.
    Knuth1,
    /// `{cab, acb}`.
    Knuth2,
    /// `{cab, bca}`.
    Knuth3,
    /// `{ca, ac}` with `a -> c`.
    Comparable,
    /// Any adjacent transposition.
    Transposition,
}

impl EdgeKind {
    pub fn tag(self) -> &'static str {
        match self {
            EdgeKind::Knuth1 => "k1",
            EdgeKind::Knuth2 => "k2",
            EdgeKind::Knuth3 => "k3",
            EdgeKind::Comparable => "cmp",
            EdgeKind::Transposition => "swap",
        }
    }
}

/// Edge label: 1-based position (middle letter for three-letter moves,
/// left letter for two-letter moves) and the move kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLabel {
    pub pos: usize,
    pub kind: EdgeKind,
}

/// A family of local binomial rewrites `w ~ w'`.
pub trait RewriteRules: Send + Sync {
    fn name(&self) -> &'static str;
    fn needs_31_free(&self) -> bool;
    /// All words one move away from `w`, with labels.
    fn partners(&self, p: &Poset, w: &[Elem]) -> Vec<(Word, EdgeLabel)>;
}

fn knuth_window(p: &Poset, x: Elem, y: Elem, z: Elem) -> Vec<([Elem; 3], EdgeKind)> {
    let mut out = Vec::new();
    let lt = |a, b| p.lt(a, b);
    let le = |a, b| p.inc_or_lt(a, b);
    if (lt(y, x) && le(x, z) && lt(y, z)) || (lt(z, x) && le(x, y) && lt(z, y)) {
        out.push(([x, z, y], EdgeKind::Knuth1));
    }
    if (le(y, z) && lt(z, x) && lt(y, x)) || (le(x, z) && lt(z, y) && lt(x, y)) {
        out.push(([y, x, z], EdgeKind::Knuth2));
    }
    out.extend(knuth3_window(p, x, y, z));
    out
}

fn knuth3_window(p: &Poset, x: Elem, y: Elem, z: Elem) -> Vec<([Elem; 3], EdgeKind)> {
    let mut out = Vec::new();
    if p.lt(y, x) && p.inc(y, z) && p.inc(z, x) {
        out.push(([z, x, y], EdgeKind::Knuth3));
    }
    if p.lt(z, y) && p.inc(x, y) && p.inc(x, z) {
        out.push(([y, z, x], EdgeKind::Knuth3));
    }
    out
}

fn triple_moves(
    w: &[Elem],
    mv: impl Fn(Elem, Elem, Elem) -> Vec<([Elem; 3], EdgeKind)>,
    out: &mut Vec<(Word, EdgeLabel)>,
) {
    for i in 1..w.len().saturating_sub(1) {
        for (rep, kind) in mv(w[i - 1], w[i], w[i + 1]) {
            let mut v = w.to_vec();
            v[i - 1..=i + 1].copy_from_slice(&rep);
            if v != w {
                out.push((v, EdgeLabel { pos: i + 1, kind }));
            }
        }
    }
}

/// `P`-Knuth transformations.
pub struct PlacticRules;

impl RewriteRules for PlacticRules {
    fn name(&self) -> &'static str {
        "plac"
    }
    fn needs_31_free(&self) -> bool {
        true
    }
    fn partners(&self, p: &Poset, w: &[Elem]) -> Vec<(Word, EdgeLabel)> {
        let mut out = Vec::new();
        triple_moves(w, |x, y, z| knuth_window(p, x, y, z), &mut out);
        out
    }
}

/// Comparable adjacent swaps together with the `{cab, bca}` move.
pub struct HRules;

impl RewriteRules for HRules {
    fn name(&self) -> &'static str {
        "h"
    }
    fn needs_31_free(&self) -> bool {
        true
    }
    fn partners(&self, p: &Poset, w: &[Elem]) -> Vec<(Word, EdgeLabel)> {
        let mut out = Vec::new();
        for i in 0..w.len().saturating_sub(1) {
            if p.comparable(w[i], w[i + 1]) {
                let mut v = w.to_vec();
                v.swap(i, i + 1);
                out.push((v, EdgeLabel { pos: i + 1, kind: EdgeKind::Comparable }));
            }
        }
        triple_moves(w, |x, y, z| knuth3_window(p, x, y, z), &mut out);
        out
    }
}

/// Every adjacent transposition (the commutative quotient).
pub struct PolRules;

impl RewriteRules for PolRules {
    fn name(&self) -> &'static str {
        "pol"
    }
    fn needs_31_free(&self) -> bool {
        false
    }
    fn partners(&self, _p: &Poset, w: &[Elem]) -> Vec<(Word, EdgeLabel)> {
        let mut out = Vec::new();
        for i in 0..w.len().saturating_sub(1) {
            if w[i] != w[i + 1] {
                let mut v = w.to_vec();
                v.swap(i, i + 1);
                out.push((v, EdgeLabel { pos: i + 1, kind: EdgeKind::Transposition }));
            }
        }
        out
    }
}

static PLAC: PlacticRules = PlacticRules;
static H: HRules = HRules;
static POL: PolRules = PolRules;

/// Registered rule sets, by name.
pub fn registry() -> [&'static dyn RewriteRules; 3] {
    [&PLAC, &H, &POL]
}

/// Looks up a rule set by name (`knuth` is an alias of `plac`).
pub fn rules_by_name(name: &str) -> Result<&'static dyn RewriteRules> {
    let name = if name == "knuth" { "plac" } else { name };
    registry()
        .into_iter()
        .find(|r| r.name() == name)
        .ok_or_else(|| Error::Parse(format!("unknown ideal kind `{name}`")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealKind {
    Plac,
    H,
    Pol,
}

impl IdealKind {
    pub fn rules(self) -> &'static dyn RewriteRules {
        match self {
            IdealKind::Plac => &PLAC,
            IdealKind::H => &H,
            IdealKind::Pol => &POL,
        }
    }

    pub fn tag(self) -> &'static str {
        self.rules().name()
    }

    pub fn parse(s: &str) -> Result<IdealKind> {
        match s {
            "plac" | "knuth" => Ok(IdealKind::Plac),
            "h" => Ok(IdealKind::H),
            "pol" => Ok(IdealKind::Pol),
            _ => Err(Error::Parse(format!("unknown ideal kind `{s}`"))),
        }
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

type Row = BTreeMap<usize, BigRational>;

fn to_rational(c: &PolyT) -> Option<BigRational> {
    c.as_constant().map(|x| BigRational::from_integer(BigInt::from(x)))
}

/// Words of one content together with the row-reduced relation space.
#[derive(Clone, Debug)]
pub struct ContentSpace {
    pub kind: IdealKind,
    pub content: Content,
    pub words: Vec<Word>,
    index: HashMap<Word, usize>,
    echelon: BTreeMap<usize, Row>,
    comp: Vec<usize>,
}

fn reduce(echelon: &BTreeMap<usize, Row>, mut row: Row) -> Row {
    let mut from = 0;
    loop {
        let Some((&c, _)) = row.range(from..).next() else {
            return row;
        };
        match echelon.get(&c) {
            Some(piv) => {
                let f = row[&c].clone();
                for (j, v) in piv {
                    let e = row.entry(*j).or_insert_with(BigRational::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        row.remove(j);
                    }
                }
            }
            None => from = c + 1,
        }
    }
}

fn insert_row(echelon: &mut BTreeMap<usize, Row>, row: Row) {
    let mut row = reduce(echelon, row);
    let Some((&c, lead)) = row.iter().next() else {
        return;
    };
    let inv = BigRational::one() / lead;
    for v in row.values_mut() {
        *v *= &inv;
    }
    echelon.insert(c, row);
}

impl ContentSpace {
    pub fn build(p: &Poset, beta: &Content, kind: IdealKind) -> Result<ContentSpace> {
        let rules = kind.rules();
        if rules.needs_31_free() && !p.is_31_free() {
            return Err(Error::NotThreeOneFree);
        }
        let words: Vec<Word> = words_of_content(beta).collect();
        let index: HashMap<Word, usize> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut uf = UnionFind::<usize>::new(words.len());
        let mut echelon = BTreeMap::new();
        for (i, w) in words.iter().enumerate() {
            for (v, _) in rules.partners(p, w) {
                let j = *index
                    .get(&v)
                    .expect("rewrites preserve content");
                if j <= i {
                    continue;
                }
                uf.union(i, j);
                let mut row = Row::new();
                row.insert(i, BigRational::one());
                row.insert(j, -BigRational::one());
                insert_row(&mut echelon, row);
            }
        }
        let mut least: HashMap<usize, usize> = HashMap::new();
        let comp = (0..words.len())
            .map(|i| *least.entry(uf.find(i)).or_insert(i))
            .collect();
        Ok(ContentSpace {
            kind,
            content: beta.clone(),
            words,
            index,
            echelon,
            comp,
        })
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Dimension of the quotient.
    pub fn quotient_dim(&self) -> usize {
        self.dim() - self.rank()
    }

    /// Index of the least word of the component containing word `i`.
    pub fn component_of(&self, i: usize) -> usize {
        self.comp[i]
    }

    pub fn index_of(&self, w: &[Elem]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Component blocks, each listed by word index, ordered by least word.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &c) in self.comp.iter().enumerate() {
            blocks.entry(c).or_default().push(i);
        }
        blocks.into_values().collect()
    }

    /// The relation rows in echelon form, as sparse rational vectors.
    pub fn relation_rows(&self) -> impl Iterator<Item = &BTreeMap<usize, BigRational>> {
        self.echelon.values()
    }

    fn vector(&self, v: &NCElement) -> Result<Row> {
        let mut row = Row::new();
        for (w, c) in v.terms() {
            let i = self
                .index_of(w)
                .ok_or_else(|| Error::ContentMismatch(w.clone()))?;
            let x = to_rational(c).ok_or_else(|| Error::TCoefficient(w.clone()))?;
            row.insert(i, x);
        }
        Ok(row)
    }

    /// Whether `v` lies in the relation space.
    pub fn member(&self, v: &NCElement) -> Result<bool> {
        let row = self.vector(v)?;
        Ok(reduce(&self.echelon, row).is_empty())
    }

    /// Membership through the component sums: every relation is a
    /// difference of two words, so `v` is a member iff its coefficients sum
    /// to zero on each component.
    pub fn member_by_components(&self, v: &NCElement) -> Result<bool> {
        let row = self.vector(v)?;
        let mut sums: HashMap<usize, BigRational> = HashMap::new();
        for (i, x) in row {
            *sums.entry(self.comp[i]).or_insert_with(BigRational::zero) += x;
        }
        Ok(sums.values().all(|s| s.is_zero()))
    }

    pub fn congruent(&self, f: &NCElement, g: &NCElement) -> Result<bool> {
        self.member(&(f - g))
    }
}

/// Tests `f ≡ g` content by content.
pub fn congruent_all(p: &Poset, f: &NCElement, g: &NCElement, kind: IdealKind) -> Result<bool> {
    let d = f - g;
    for beta in d.contents() {
        let cs = ContentSpace::build(p, &beta, kind)?;
        if !cs.member(&d.restrict(&beta))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeEntry {
    pub content: Content,
    /// Least word of the component.
    pub component: Word,
    pub size: usize,
    pub pairing: PolyT,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Negative,
    InconclusivePositive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Negative => "NEGATIVE",
            Verdict::InconclusivePositive => "INCONCLUSIVE-POSITIVE",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub kind: IdealKind,
    pub entries: Vec<ProbeEntry>,
    pub verdict: Verdict,
}

impl ProbeReport {
    pub fn negatives(&self) -> impl Iterator<Item = &ProbeEntry> {
        self.entries.iter().filter(|e| !e.pairing.is_nonnegative())
    }
}

/// Pairs `f` with the indicator of every component of the `kind` graph on
/// each content in the support of `f`. A negative pairing rules out
/// monomial positivity modulo the ideal.
pub fn positivity_probe(p: &Poset, f: &NCElement, kind: IdealKind) -> Result<ProbeReport> {
    let mut entries = Vec::new();
    let contents: BTreeSet<Content> = f.contents();
    for beta in contents {
        let cs = ContentSpace::build(p, &beta, kind)?;
        let part = f.restrict(&beta);
        for block in cs.components() {
            let gamma = NCElement::from_words(block.iter().map(|&i| cs.words[i].clone()));
            entries.push(ProbeEntry {
                content: beta.clone(),
                component: cs.words[block[0]].clone(),
                size: block.len(),
                pairing: pair(&part, &gamma),
            });
        }
    }
    let verdict = if entries.iter().all(|e| e.pairing.is_nonnegative()) {
        Verdict::InconclusivePositive
    } else {
        Verdict::Negative
    };
    Ok(ProbeReport { kind, entries, verdict })
}
