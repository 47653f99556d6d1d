//! Property tests over randomly chosen small (3+1)-free posets.

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;

use pschur::arrow::{ArrowDiagram, ALLOWED};
use pschur::chromatic::{schur_expansion_gasharov, x_direct, x_via_f};
use pschur::eqgraph::graph_for_content;
use pschur::ncalg::{newton_check, NCElement};
use pschur::poset::{all_31_free, all_posets};
use pschur::quotient::{ContentSpace, IdealKind};
use pschur::rmatrix::{eta, ChainPair};
use pschur::symfun::{Basis, PolyT};
use pschur::words::{inv_p, words_of_content};
use pschur::{Content, Poset};

fn pool() -> &'static [Poset] {
    static POOL: OnceLock<Vec<Poset>> = OnceLock::new();
    POOL.get_or_init(|| (2..=5).flat_map(all_31_free).collect())
}

fn nuio_pool() -> &'static [Poset] {
    static POOL: OnceLock<Vec<Poset>> = OnceLock::new();
    POOL.get_or_init(|| {
        pool()
            .iter()
            .filter_map(|p| p.nuio_witness().map(|o| p.with_order(&o).unwrap()))
            .collect()
    })
}

/// A poset from the pool and a content of size `1..=max` over it.
fn poset_and_content(pool: fn() -> &'static [Poset], max: usize) -> impl Strategy<Value = (Poset, Content)> {
    (any::<Index>(), prop::collection::vec(any::<Index>(), 1..=max)).prop_map(move |(i, letters)| {
        let p = i.get(pool()).clone();
        let beta = Content::new(letters.iter().map(|l| (l.index(p.n()) + 1) as u8).collect());
        (p, beta)
    })
}

fn arbitrary_diagram(d: usize) -> impl Strategy<Value = ArrowDiagram> {
    prop::collection::vec(any::<Index>(), d * (d - 1) / 2).prop_map(move |picks| {
        let mut m = ArrowDiagram::free(d);
        let mut it = picks.iter();
        for i in 1..=d {
            for j in i + 1..=d {
                m.set(i, j, *it.next().unwrap().get(&ALLOWED)).unwrap();
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn knuth_components_equal_quotient_dim((p, beta) in poset_and_content(pool, 5)) {
        let g = graph_for_content(&p, &beta, None, IdealKind::Plac).unwrap();
        let cs = ContentSpace::build(&p, &beta, IdealKind::Plac).unwrap();
        prop_assert_eq!(g.num_components(), cs.quotient_dim());
    }

    #[test]
    fn h_components_equal_quotient_dim((p, beta) in poset_and_content(pool, 5)) {
        let g = graph_for_content(&p, &beta, None, IdealKind::H).unwrap();
        let cs = ContentSpace::build(&p, &beta, IdealKind::H).unwrap();
        prop_assert_eq!(g.num_components(), cs.quotient_dim());
    }

    #[test]
    fn blowup_stays_31_free((p, beta) in poset_and_content(pool, 6)) {
        prop_assert!(p.blowup(&beta).unwrap().poset.is_31_free());
    }

    #[test]
    fn omega_is_an_involution((p, beta) in poset_and_content(nuio_pool, 5)) {
        let f = x_direct(&p, &beta, true).unwrap();
        prop_assert_eq!(f.omega().omega().change_basis(Basis::M), f.change_basis(Basis::M));
    }

    #[test]
    fn chromatic_routes_agree((p, beta) in poset_and_content(nuio_pool, 5)) {
        let direct = x_direct(&p, &beta, true).unwrap().change_basis(Basis::M);
        prop_assert_eq!(x_via_f(&p, &beta, true).unwrap().change_basis(Basis::M), direct.clone());
        let gash = schur_expansion_gasharov(&p, &beta, true).unwrap();
        prop_assert!(gash.is_positive(Basis::S).is_ok());
        prop_assert_eq!(gash.omega().change_basis(Basis::M), direct);
    }

    #[test]
    fn t_grading_counts_inversions(i in any::<Index>()) {
        // with all letters distinct, the m_{1^n} coefficient is sum_w t^inv(w)
        let p = i.get(nuio_pool());
        let beta = Content::of_poset(p);
        let f = x_direct(p, &beta, true).unwrap().change_basis(Basis::M);
        let mut want = PolyT::zero();
        for w in words_of_content(&beta) {
            want += &PolyT::monomial(1, inv_p(p, &w).unwrap());
        }
        prop_assert_eq!(f.coeff(&vec![1; p.n()]), want);
    }

    #[test]
    fn newton_identity(i in any::<Index>(), m in 1usize..=4) {
        static ALL: OnceLock<Vec<Poset>> = OnceLock::new();
        let all = ALL.get_or_init(|| (1..=4).flat_map(all_posets).collect());
        prop_assert!(newton_check(i.get(all), m));
    }

    #[test]
    fn eta_is_an_involution(i in any::<Index>(), ka in any::<Index>(), kb in any::<Index>()) {
        let p = i.get(pool());
        let chains: Vec<_> = (1..=3).flat_map(|k| p.chains(p.full_mask(), k)).collect();
        prop_assume!(!chains.is_empty());
        let pair = ChainPair::new(p, ka.get(&chains).clone(), kb.get(&chains).clone()).unwrap();
        let image = eta(p, &pair);
        prop_assert_eq!(eta(p, &image), pair.clone());
        prop_assert_eq!(Content::of_word(&image.word()), Content::of_word(&pair.word()));
        let cs = ContentSpace::build(p, &Content::of_word(&pair.word()), IdealKind::Plac).unwrap();
        prop_assert!(cs.congruent(&NCElement::word(pair.word()), &NCElement::word(image.word())).unwrap());
    }

    #[test]
    fn swap_is_an_involution(m in arbitrary_diagram(4), i in 1usize..4) {
        prop_assert_eq!(m.swap(i).unwrap().swap(i).unwrap(), m);
    }

    #[test]
    fn expansion_preserves_eval(m in arbitrary_diagram(3), i in any::<Index>()) {
        let p = i.get(pool());
        let expanded = m.expand();
        prop_assert!(expanded.terms().keys().all(ArrowDiagram::is_primitive));
        prop_assert_eq!(expanded.eval(p), m.eval(p));
    }

    #[test]
    fn eval_is_multiplicative(a in arbitrary_diagram(2), b in arbitrary_diagram(2), i in any::<Index>()) {
        let p = i.get(pool());
        prop_assert_eq!(a.star(&b).eval(p), &a.eval(p) * &b.eval(p));
    }

    #[test]
    fn pairing_is_bilinear(a in 0i64..5, b in 0i64..5) {
        let f = NCElement::from_words([vec![1, 2], vec![2, 1]]);
        let g = NCElement::word(vec![1, 2]);
        let lhs = pschur::ncalg::pair(&(&f.scale(a) + &g.scale(b)), &g);
        let rhs = &pschur::ncalg::pair(&f, &g).scale(a) + &pschur::ncalg::pair(&g, &g).scale(b);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(pschur::ncalg::pair(&g, &g), PolyT::one());
    }
}
