//! Named theorem checks behind a common trait, shared by the CLI, the sweep
//! and the acceptance suite.

use std::collections::HashMap;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::arrow::{d_lambda, d_tilde, j_diagram, m_diagram, ArrowElement};
use crate::chromatic::{e_coeff_hook, e_coeff_twocol, schur_expansion_gasharov, x_direct, x_via_f};
use crate::eqgraph::{graph_for_content, verify_schur_theorem};
use crate::error::{Error, Result};
use crate::ncalg::{e_full, j_flagged, m_p, newton_check, NCElement};
use crate::poset::{order_ideals, Content, Elem, Poset};
use crate::quotient::{positivity_probe, ContentSpace, IdealKind};
use crate::rmatrix::verify_eta;
use crate::symfun::{is_hook, partitions, Basis, Partition, PolyT};
use crate::tableaux::{enumerate, enumerate_flagged, key_tableaux, left_tableaux, PTableau};

/// Parameters shared by all checks; each check reads what it needs and
/// sweeps the rest.
#[derive(Clone, Debug)]
pub struct CheckInput {
    pub poset: Poset,
    pub content: Option<Content>,
    pub inv: Option<usize>,
    pub lambda: Option<Partition>,
    pub k: Option<usize>,
    pub ell: Option<usize>,
    pub alpha: Option<Vec<usize>>,
    /// Flags as label bounds: `Z_j = {1, ..., flags[j]}`.
    pub flags: Option<Vec<usize>>,
    pub with_t: bool,
    /// Size bound for swept degrees and contents.
    pub max: usize,
}

impl CheckInput {
    pub fn new(poset: Poset) -> CheckInput {
        let max = poset.n().min(4);
        CheckInput {
            poset,
            content: None,
            inv: None,
            lambda: None,
            k: None,
            ell: None,
            alpha: None,
            flags: None,
            with_t: false,
            max,
        }
    }

    /// The given content, or every content of size `1..=max`.
    pub fn contents(&self) -> Vec<Content> {
        match &self.content {
            Some(c) => vec![c.clone()],
            None => (1..=self.max)
                .flat_map(|s| Content::all_of_size(self.poset.n(), s))
                .collect(),
        }
    }

    /// The given partition, or every partition of size `1..=max`
    /// satisfying `keep`.
    fn shapes(&self, keep: impl Fn(&[usize]) -> bool) -> Vec<Partition> {
        match &self.lambda {
            Some(l) => vec![l.clone()],
            None => (1..=self.max).flat_map(partitions).filter(|l| keep(l)).collect(),
        }
    }

    fn t_flags(&self) -> Vec<bool> {
        if self.with_t {
            vec![false, true]
        } else {
            vec![false]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub pass: bool,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub lines: Vec<Line>,
}

impl Report {
    fn new(check: &str) -> Report {
        Report {
            check: check.to_string(),
            lines: Vec::new(),
        }
    }

    fn push(&mut self, pass: bool, text: String) {
        self.lines.push(Line { pass, text });
    }

    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Line> {
        self.lines.iter().filter(|l| !l.pass)
    }

    pub fn to_json(&self) -> Value {
        let lines: Vec<Value> = self
            .lines
            .iter()
            .map(|l| json!({"pass": l.pass, "text": l.text}))
            .collect();
        json!({"check": self.check, "pass": self.pass(), "lines": lines})
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn run(&self, input: &CheckInput) -> Result<Report>;
}

/// Word-level quotient spaces built on demand, one per content.
pub struct Spaces<'a> {
    p: &'a Poset,
    kind: IdealKind,
    map: HashMap<Content, ContentSpace>,
}

impl<'a> Spaces<'a> {
    pub fn new(p: &'a Poset, kind: IdealKind) -> Spaces<'a> {
        Spaces {
            p,
            kind,
            map: HashMap::new(),
        }
    }

    /// Whether `f` lies in the ideal, content by content.
    pub fn member(&mut self, f: &NCElement) -> Result<bool> {
        for beta in f.contents() {
            if !self.map.contains_key(&beta) {
                self.map.insert(beta.clone(), ContentSpace::build(self.p, &beta, self.kind)?);
            }
            if !self.map[&beta].member(&f.restrict(&beta))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn congruent(&mut self, f: &NCElement, g: &NCElement) -> Result<bool> {
        self.member(&(f - g))
    }
}

fn show(c: &Content) -> String {
    c.as_slice().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn sum_creads(ts: &[PTableau]) -> NCElement {
    NCElement::from_words(ts.iter().map(|t| t.cread()))
}

/// Weak compositions of `n` with `len` parts and `α_{i+1} <= α_i + 1`.
pub fn weak_compositions(n: usize, len: usize) -> Vec<Vec<usize>> {
    (0..len)
        .map(|_| 0..=n)
        .multi_cartesian_product()
        .filter(|a| a.iter().sum::<usize>() == n && a.windows(2).all(|w| w[1] <= w[0] + 1))
        .collect()
}

/// Hypotheses under which flagged `J` is congruent to the sum of
/// diagonal reading words: lower order ideals; at a non-ascent
/// `Z_i \ Z_{i+1}` is an antichain; at an ascent `Z_i ⊆ Z_{i+1}` and no
/// induced `2+1` has its chain inside `Z_i` and its point outside.
pub fn flags_admissible(p: &Poset, alpha: &[usize], z: &[u64]) -> bool {
    if alpha.len() != z.len() || alpha.windows(2).any(|w| w[1] > w[0] + 1) {
        return false;
    }
    let ideals = order_ideals(p);
    if z.iter().any(|m| !ideals.contains(m)) {
        return false;
    }
    let inside = |m: u64, a: Elem| m & (1u64 << (a - 1)) != 0;
    for i in 0..z.len().saturating_sub(1) {
        if alpha[i + 1] > alpha[i] {
            if z[i] & !z[i + 1] != 0 {
                return false;
            }
            for a in p.elements().filter(|&a| inside(z[i], a)) {
                for b in p.elements().filter(|&b| inside(z[i], b) && p.lt(a, b)) {
                    if p.elements().any(|c| !inside(z[i], c) && p.inc(b, c) && p.inc(a, c)) {
                        return false;
                    }
                }
            }
        } else {
            let diff = z[i] & !z[i + 1];
            if p.relations().iter().any(|&(a, b)| inside(diff, a) && inside(diff, b)) {
                return false;
            }
        }
    }
    true
}

struct SchurCheck;
struct ECommuteCheck;
struct EtaCheck;
struct NewtonCheck;
struct GasharovCheck;
struct HookCheck;
struct TwoColCheck;
struct RectangleCheck;
struct FlaggedCheck;
struct ArrowCheck;
struct ProbeCheck;

impl Check for SchurCheck {
    fn name(&self) -> &'static str {
        "schur"
    }
    fn describe(&self) -> &'static str {
        "F of every P-Knuth component is Schur positive with tableau coefficients"
    }
    fn run(&self, input: &CheckInput) -> Result<Report> {
        let p = &input.poset;
        let mut rep = Report::new(self.name());
        for beta in input.contents() {
            let g = graph_for_content(p, &beta, input.inv, IdealKind::Plac)?;
            let r = verify_schur_theorem(p, &g)?;
            let bad: Vec<String> = r
                .components
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("{:?}", c.representative))
                .collect();
            let inv = input.inv.map_or(String::new(), |d| format!(" inv {d}"));
            let mut text = format!("content {}{inv}: {} components", show(&beta), g.num_components());
            if !bad.is_empty() {
                text.push_str(&format!(", failing at {}", bad.join(" ")));
            }
            rep.push(r.pass(), text);
        }
        Ok(rep)
    }
}

impl Check for ECommuteCheck {
    fn name(&self) -> &'static str {
        "e-commute"
    }
    fn describe(&self) -> &'static str {
        "e_k e_l and e_l e_k agree modulo the plactic ideal"
    }
    fn run(&self, input: &CheckInput) -> Result<Report> {
        let p = &input.poset;
        if !p.is_31_free() {
            return Err(Error::NotThreeOneFree);
        }
        let pairs: Vec<(usize, usize)> = match (input.k, input.ell) {
            (Some(k), Some(l)) => vec![(k, l)],
            _ => (1..=input.max)
                .flat_map(|s| (1..=s / 2).map(move |k| (k, s - k)))
                .filter(|(k, l)| k != l)
                .collect(),
        };
        let mut spaces = Spaces::new(p, IdealKind::Plac);
        let mut rep = Report::new(self.name());
        for (k, l) in pairs {
            let (a, b) = (e_full(p, k as i64), e_full(p, l as i64));
            let mut d = &(&a * &b) - &(&b * &a);
            if let Some(beta) = &input.content {
                d = d.restrict(beta);
            }
            let ok = spaces.member(&d)?;
            rep.push(ok, format!("e_{k} e_{l} = e_{l} e_{k} on {} contents", d.contents().len()));
        }
        Ok(rep)
    }
}

impl Check for EtaCheck {
    fn name(&self) -> &'static str {
        "eta"
    }
    fn describe(&self) -> &'static str {
        "the ladder R-matrix is a content and ladder preserving involution inside plactic classes"
    }
    fn run(&self, input: &CheckInput) -> Result<Report> {
        let pairs: Vec<(usize, usize)> = match (input.k, input.ell) {
            (Some(k), Some(l)) => vec![(k, l)],
            _ => (1..=input.max)
                .flat_map(|s| (0..=s).map(move |k| (k, s - k)))
                .collect(),
        };
        let mut rep = Report::new(self.name());
        for (k, l) in pairs {
            let r = verify_eta(&input.poset, k, l)?;
            let mut text = format!("W^{k} x W^{l}: {} pairs", r.pairs);
            for (what, v) in [
                ("not involutive", &r.not_involution),
                ("content changed", &r.content_changed),
                ("ladders changed", &r.ladders_changed),
                ("not congruent", &r.not_congruent),
            ] {
                if let Some(x) = v.first() {
                    text.push_str(&format!(", {what} at {:?}|{:?}", x.a, x.b));
                }
            }
            if !r.injective {
                text.push_str(", not injective");
            }
            rep.push(r.pass(), text);
        }
        Ok(rep)
    }
}

impl Check for NewtonCheck {
    fn name(&self) -> &'static str {
        "newton"
    }
    fn describe(&self) -> &'static str {
        "sum of (-1)^i h_(m-i) e_i vanishes in the free algebra"
    }
    fn run(&self, input: &CheckInput) -> Result<Report> {
        let mut rep = Report::new(self.name());
        let ms: Vec<usize> = match input.k {
            Some(m) => vec![m],
            None => (1..=input.max).collect(),
        };
        for m in ms {
            rep.push(newton_check(&input.poset, m), format!("m = {m}"));
        }
        Ok(rep)
    }
}

impl Check for GasharovCheck {
    fn name(&self) -> &'static str {
        "gasharov"
    }
    fn describe(&self) -> &'static str {
        "colorings, omega F_W and the P-tableau Schur expansion give the same X"
    }
    fn run(&self, input: &CheckInput) -> Result<Report> {
        let p = &input.poset;
        let mut rep = Report::new(self.name());
        for beta in input.contents() {
            for with_t in input.t_flags() {
                let a = x_direct(p, &beta, with_t)?;
                let b = x_via_f(p, &beta, with_t)?;
                let c = schur_expansion_gasharov(p, &beta, with_t)?.omega().change_basis(Basis::M);
                let t = if with_t { " with t" } else { "" };
                rep.push(a == b && a == c, format!("content {}{t}", show(&beta)));
            }
        }
        Ok(rep)
    }
}

/// Shared body of the hook and two-column checks: coefficient counts
/// against `X^β` and the congruence `m_λ ≡ Σ u_cread` modulo `I_H`.
fn tableau_e_check(
    name: &str,
    input: &CheckInput,
    keep: fn(&[usize]) -> bool,
    tableaux: fn(&Poset, &[usize], Option<&Content>) -> Result<Vec<PTableau>>,
    coeff: fn(&Poset, &[usize], &Content, bool) -> Result<PolyT>,
) -> Result<Report> {
    let p = &input.poset;
    if !p.is_31_free() {
        return Err(Error::NotThreeOneFree);
    }
    let mut rep = Report::new(name);
    let shapes = input.shapes(keep);
    if let Some(l) = shapes.iter().find(|l| !keep(l)) {
        return Err(Error::Shape(format!("{l:?} is not allowed for {name}")));
    }
    let mut spaces = Spaces::new(p, IdealKind::H);
    let mut ms: HashMap<Partition, NCElement> = HashMap::new();
    for beta in input.contents() {
        let xs: Vec<(bool, crate::symfun::SymExpr)> = input
            .t_flags()
            .into_iter()
            .map(|t| Ok((t, x_direct(p, &beta, t)?.change_basis(Basis::E))))
            .collect::<Result<_>>()?;
        for lambda in shapes.iter().filter(|l| l.iter().sum::<usize>() == beta.len()) {
            for (t, x) in &xs {
                let c = coeff(p, lambda, &beta, *t)?;
                let tt = if *t { " with t" } else { "" };
                rep.push(
                    c == x.coeff(lambda),
                    format!("content {} e{lambda:?}{tt}: coefficient {c}", show(&beta)),
                );
            }
            let m = ms.entry(lambda.clone()).or_insert_with(|| m_p(p, lambda)).restrict(&beta);
            let ts = tableaux(p, lambda, Some(&beta))?;
            let ok = spaces.congruent(&m, &sum_creads(&ts))?;
            rep.push(ok, format!("content {} m{lambda:?} = sum of {} creads mod I_H", show(&beta), ts.len()));
        }
    }
    Ok(rep)
}

impl Check for HookCheck {
    fn name(&self) -> &'static str {
        "hook"
    }
    fn describe(&self) -> &'static str {
        "hook e-coefficients count key P-tableaux"
    }
    fn run(&self, input: &CheckInput) -> Result<Report> {
        tableau_e_check(self.name(), input, is_hook, key_tableaux, e_coeff_hook)
    }
}

fn two_columns(l: &[usize]) -> bool {
    l.first().map_or(true, |&k| k <= 2)
}

impl Check for TwoColCheck {
    fn name(&self) -> &'static str {
        "twocol"
    }
    fn describe(&self) -> &'static str {
        "two-column e-coefficients count left P-tableaux"
    }
    fn run(&self, input: &CheckInput) -> Result<Report> {
        tableau_e_check(self.name(), input, two_columns, left_tableaux, e_coeff_twocol)
    }
}

fn is_rectangle(l: &[usize]) -> bool {
    l.iter().all(|&x| x == l[0])
}

impl Check for RectangleCheck {
    fn name(&self) -> &'static str {
        "rectangle"
    }
    fn describe(&self) -> &'static str {
        "rectangle e-coefficients count fillings of the wrapped shape diagram"
    }
    fn run(&self, input: &CheckInput) -> Result<Report> {
        let p = &input.poset;
        if !p.is_31_free() {
            return Err(Error::NotThreeOneFree);
        }
        let shapes = input.shapes(is_rectangle);
        if let Some(l) = shapes.iter().find(|l| !is_rectangle(l)) {
            return Err(Error::Shape(format!("{l:?} is not a rectangle")));
        }
        let mut rep = Report::new(self.name());
        for lambda in shapes {
            let fills = d_tilde(&lambda, 0)?.eval(p).commutative_image();
            let ms = m_p(p, &lambda).commutative_image();
            for beta in input.contents().iter().filter(|b| b.len() == lambda.iter().sum::<usize>()) {
                let count = fills.get(beta).cloned().unwrap_or_default();
                let m = ms.get(beta).cloned().unwrap_or_default();
                let x = x_direct(p, beta, false)?.change_basis(Basis::E).coeff(&lambda);
                rep.push(
                    count == m && count == x,
                    format!("content {} e{lambda:?}: {count} fillings", show(beta)),
                );
            }
        }
        Ok(rep)
    }
}

impl Check for FlaggedCheck {
    fn name(&self) -> &'static str {
        "flagged"
    }
    fn describe(&self) -> &'static str {
        "flagged J is congruent to the diagonal reading words, and cread = diagread"
    }
    fn run(&self, input: &CheckInput) -> Result<Report> {
        let p = &input.poset;
        if !p.is_31_free() {
            return Err(Error::NotThreeOneFree);
        }
        let ideals = order_ideals(p);
        let cases: Vec<(Vec<usize>, Vec<u64>)> = match (&input.alpha, &input.flags) {
            (Some(alpha), Some(flags)) => {
                let z: Vec<u64> = flags
                    .iter()
                    .map(|&b| if b >= 64 { u64::MAX } else { (1u64 << b) - 1 } & p.full_mask())
                    .collect();
                if !flags_admissible(p, alpha, &z) {
                    return Err(Error::Param(format!("flags {flags:?} are not admissible for {alpha:?}")));
                }
                vec![(alpha.clone(), z)]
            }
            (None, None) => {
                let mut out = Vec::new();
                for s in 1..=input.max.min(3) {
                    for len in 1..=2 {
                        for alpha in weak_compositions(s, len) {
                            for z in (0..len).map(|_| ideals.iter().copied()).multi_cartesian_product() {
                                if flags_admissible(p, &alpha, &z) {
                                    out.push((alpha.clone(), z));
                                }
                            }
                        }
                    }
                }
                out
            }
            _ => return Err(Error::Param("give both --alpha and --flags or neither".into())),
        };
        let mut spaces = Spaces::new(p, IdealKind::Plac);
        let mut rep = Report::new(self.name());
        let mut failed = Vec::new();
        for (alpha, z) in &cases {
            let a: Vec<i64> = alpha.iter().map(|&x| x as i64).collect();
            let j = j_flagged(p, &a, z)?;
            let ts = enumerate_flagged(p, alpha, z)?;
            let rhs = NCElement::from_words(ts.iter().map(|t| t.diagread()));
            if !spaces.congruent(&j, &rhs)? {
                failed.push(format!("{alpha:?} {z:?}"));
            }
        }
        let mut text = format!("{} flagged cases", cases.len());
        if let Some(f) = failed.first() {
            text.push_str(&format!(", failing at {f}"));
        }
        rep.push(failed.is_empty(), text);
        if input.alpha.is_none() {
            let mut bad = None;
            let mut count = 0;
            for lambda in (1..=input.max).flat_map(partitions) {
                for t in enumerate(p, &lambda, None) {
                    count += 1;
                    let (c, d) = (NCElement::word(t.cread()), NCElement::word(t.diagread()));
                    if bad.is_none() && !spaces.congruent(&c, &d)? {
                        bad = Some(t.cread());
                    }
                }
            }
            let mut text = format!("cread = diagread on {count} tableaux");
            if let Some(w) = &bad {
                text.push_str(&format!(", failing at {w:?}"));
            }
            rep.push(bad.is_none(), text);
        }
        Ok(rep)
    }
}

impl Check for ArrowCheck {
    fn name(&self) -> &'static str {
        "arrow"
    }
    fn describe(&self) -> &'static str {
        "diagram Schur functions evaluate into plactic classes of shape diagrams"
    }
    fn run(&self, input: &CheckInput) -> Result<Report> {
        let p = &input.poset;
        if !p.is_31_free() {
            return Err(Error::NotThreeOneFree);
        }
        let mut spaces = Spaces::new(p, IdealKind::Plac);
        let mut rep = Report::new(self.name());
        for lambda in input.shapes(|l| l.iter().sum::<usize>() <= 4) {
            let diff = j_diagram(&lambda).sub(&ArrowElement::diagram(d_lambda(&lambda)));
            let ok = spaces.member(&diff.eval(p))?;
            rep.push(ok, format!("J{lambda:?} = D{lambda:?} mod plac"));
            if is_rectangle(&lambda) {
                let m = m_diagram(&lambda).sub(&ArrowElement::diagram(d_tilde(&lambda, 0)?));
                let image = m.eval(p).commutative_image();
                rep.push(
                    image.values().all(|c| c.is_zero()),
                    format!("m{lambda:?} = wrapped D{lambda:?} mod pol"),
                );
            }
        }
        Ok(rep)
    }
}

impl Check for ProbeCheck {
    fn name(&self) -> &'static str {
        "probe"
    }
    fn describe(&self) -> &'static str {
        "pairs m_lambda with every I_H class; a negative pairing is reported, never failed"
    }
    fn run(&self, input: &CheckInput) -> Result<Report> {
        let p = &input.poset;
        let mut rep = Report::new(self.name());
        for lambda in input.shapes(|_| true) {
            let r = positivity_probe(p, &m_p(p, &lambda), IdealKind::H)?;
            let mut text = format!("m{lambda:?}: {} over {} classes", r.verdict, r.entries.len());
            if let Some(e) = r.negatives().next() {
                text.push_str(&format!(", negative at {:?} in content {}", e.component, show(&e.content)));
            }
            rep.push(true, text);
        }
        Ok(rep)
    }
}

static CHECKS: [&dyn Check; 11] = [
    &SchurCheck,
    &ECommuteCheck,
    &EtaCheck,
    &NewtonCheck,
    &GasharovCheck,
    &HookCheck,
    &TwoColCheck,
    &RectangleCheck,
    &FlaggedCheck,
    &ArrowCheck,
    &ProbeCheck,
];

pub fn registry() -> &'static [&'static dyn Check] {
    &CHECKS
}

pub fn check_by_name(name: &str) -> Option<&'static dyn Check> {
    registry().iter().copied().find(|c| c.name() == name)
}
