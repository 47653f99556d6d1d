//! P-Knuth equivalence graphs and H-graphs.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ncalg::{e_full, f_gamma, pair, NCElement};
use crate::poset::{Content, Poset, Word};
use crate::quotient::{EdgeLabel, IdealKind};
use crate::symfun::{detect_symmetric, partitions, Basis, PolyT, SymExpr};
use crate::tableaux::enumerate;
use crate::words::{inv_unchecked, words_of_content};

#[derive(Clone, Debug)]
pub struct EquivGraph {
    pub kind: IdealKind,
    /// Sorted vertex words.
    pub vertices: Vec<Word>,
    index: HashMap<Word, usize>,
    /// Edges `(i, j, label)` with `i < j`.
    pub edges: Vec<(usize, usize, EdgeLabel)>,
    /// Component number of every vertex.
    pub comp_of: Vec<usize>,
    /// Components as vertex index lists, ordered by least vertex.
    pub components: Vec<Vec<usize>>,
}

impl EquivGraph {
    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Least word of each component.
    pub fn representative(&self, comp: usize) -> &Word {
        &self.vertices[self.components[comp][0]]
    }

    pub fn component_words(&self, comp: usize) -> Vec<Word> {
        self.components[comp]
            .iter()
            .map(|&i| self.vertices[i].clone())
            .collect()
    }

    /// The 0/1 indicator of a component.
    pub fn indicator(&self, comp: usize) -> NCElement {
        NCElement::from_words(self.component_words(comp))
    }

    /// Component containing the word, if it is a vertex.
    pub fn component_of_word(&self, w: &[u8]) -> Option<usize> {
        self.index_of(w).map(|i| self.comp_of[i])
    }
}

/// Builds the graph of `kind` (plac or h) on a vertex set that must be a
/// union of components.
pub fn build_graph(p: &Poset, vertices: Vec<Word>, kind: IdealKind) -> Result<EquivGraph> {
    let rules = kind.rules();
    if rules.needs_31_free() && !p.is_31_free() {
        return Err(Error::NotThreeOneFree);
    }
    let mut vertices = vertices;
    vertices.sort();
    vertices.dedup();
    let index: HashMap<Word, usize> =
        vertices.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let found: Vec<Result<Vec<(usize, usize, EdgeLabel)>>> = vertices
        .par_iter()
        .enumerate()
        .map(|(i, w)| {
            let mut out = Vec::new();
            for (v, label) in rules.partners(p, w) {
                let j = *index
                    .get(&v)
                    .ok_or_else(|| Error::NotClosed(w.clone(), v.clone()))?;
                if i < j {
                    out.push((i, j, label));
                }
            }
            Ok(out)
        })
        .collect();
    let mut edges = Vec::new();
    for r in found {
        edges.extend(r?);
    }
    let mut uf = UnionFind::<usize>::new(vertices.len());
    for &(i, j, _) in &edges {
        uf.union(i, j);
    }
    let mut number: HashMap<usize, usize> = HashMap::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut comp_of = vec![0; vertices.len()];
    for (i, slot) in comp_of.iter_mut().enumerate() {
        let root = uf.find(i);
        let c = *number.entry(root).or_insert_with(|| {
            components.push(Vec::new());
            components.len() - 1
        });
        components[c].push(i);
        *slot = c;
    }
    Ok(EquivGraph {
        kind,
        vertices,
        index,
        edges,
        comp_of,
        components,
    })
}

/// Words of content `beta`, optionally only those with a given `inv_P`.
pub fn vertex_set(p: &Poset, beta: &Content, inv: Option<usize>) -> Result<Vec<Word>> {
    if inv.is_some() && !p.has_order() {
        return Err(Error::NotNuio);
    }
    Ok(words_of_content(beta)
        .filter(|w| inv.map_or(true, |d| inv_unchecked(p, w) == d))
        .collect())
}

pub fn graph_for_content(
    p: &Poset,
    beta: &Content,
    inv: Option<usize>,
    kind: IdealKind,
) -> Result<EquivGraph> {
    build_graph(p, vertex_set(p, beta, inv)?, kind)
}

/// `F_Γ` of a component: Schur expansion for Knuth graphs, `h` expansion
/// for H-graphs (monomial for the commutative kind).
pub fn f_of_component(p: &Poset, g: &EquivGraph, comp: usize) -> Result<SymExpr> {
    let q = f_gamma(p, &g.indicator(comp))?;
    let sym = detect_symmetric(&q)?;
    Ok(match g.kind {
        IdealKind::Plac => sym.change_basis(Basis::S),
        IdealKind::H => sym.change_basis(Basis::H),
        IdealKind::Pol => sym,
    })
}

/// `F_Γ` of every component, in component order.
pub fn all_f(p: &Poset, g: &EquivGraph) -> Result<Vec<SymExpr>> {
    (0..g.num_components())
        .into_par_iter()
        .map(|c| f_of_component(p, g, c))
        .collect()
}

#[derive(Clone, Debug)]
pub struct ComponentCheck {
    pub representative: Word,
    pub computed: std::result::Result<SymExpr, Error>,
    pub expected: SymExpr,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct SchurReport {
    pub components: Vec<ComponentCheck>,
}

impl SchurReport {
    pub fn pass(&self) -> bool {
        self.components.iter().all(|c| c.pass)
    }
}

/// Per component, the Schur expansion of `F_Γ` against the number of
/// `P`-tableaux of each shape whose column reading word lies in `Γ`.
pub fn verify_schur_theorem(p: &Poset, g: &EquivGraph) -> Result<SchurReport> {
    let mut expected: Vec<SymExpr> = g
        .components
        .iter()
        .map(|c| SymExpr::zero(g.vertices[c[0]].len(), Basis::S))
        .collect();
    let mut contents: Vec<Content> = g.vertices.iter().map(|w| Content::of_word(w)).collect();
    contents.sort();
    contents.dedup();
    for beta in &contents {
        for lambda in partitions(beta.len()) {
            for t in enumerate(p, &lambda, Some(beta)) {
                if let Some(c) = g.component_of_word(&t.cread()) {
                    expected[c].add_term(lambda.clone(), &PolyT::one());
                }
            }
        }
    }
    let components = (0..g.num_components())
        .into_par_iter()
        .map(|c| {
            let computed = f_of_component(p, g, c).map(|f| f.change_basis(Basis::S));
            let pass = computed.as_ref().map_or(false, |f| *f == expected[c]);
            ComponentCheck {
                representative: g.representative(c).clone(),
                computed,
                expected: expected[c].clone(),
                pass,
            }
        })
        .collect();
    Ok(SchurReport { components })
}

/// Per component `γ`, whether `<e_k e_l, γ> = <e_l e_k, γ>`.
pub fn verify_e_commute(p: &Poset, g: &EquivGraph, k: usize, ell: usize) -> Vec<(Word, PolyT, PolyT, bool)> {
    let a = &e_full(p, k as i64) * &e_full(p, ell as i64);
    let b = &e_full(p, ell as i64) * &e_full(p, k as i64);
    (0..g.num_components())
        .map(|c| {
            let gamma = g.indicator(c);
            let (x, y) = (pair(&a, &gamma), pair(&b, &gamma));
            let ok = x == y;
            (g.representative(c).clone(), x, y, ok)
        })
        .collect()
}
