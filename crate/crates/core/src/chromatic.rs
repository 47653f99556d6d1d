//! Multicolored and t-chromatic symmetric functions of incomparability graphs.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ncalg::{f_gamma, w_beta};
use crate::poset::{Content, Poset};
use crate::symfun::{detect_symmetric, is_hook, partitions, Basis, PolyT, SymExpr};
use crate::tableaux::{enumerate, key_tableaux, left_tableaux, PTableau};
use crate::words::inv_unchecked;

/// `X^β` (or `X^β(x,t)`) in the monomial basis, by counting proper
/// colorings of `P[β]` of each color content `λ`.
pub fn x_direct(p: &Poset, beta: &Content, with_t: bool) -> Result<SymExpr> {
    if with_t && !p.has_order() {
        return Err(Error::NotNuio);
    }
    let bl = p.blowup(beta)?;
    let q = bl.poset;
    let origin = bl.origin;
    let n = q.n();
    // previous copy of the same element, which must get a larger color
    let prev: Vec<Option<usize>> = (0..n)
        .map(|i| (i > 0 && origin[i - 1].0 == origin[i].0).then(|| i - 1))
        .collect();
    // pairs (u, v) with u before v in the total order and u ⩪ v
    let asc_pairs: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| {
                    u != v
                        && with_t
                        && q.inc(u as u8 + 1, v as u8 + 1)
                        && q.rank(u as u8 + 1) < q.rank(v as u8 + 1)
                })
                .collect()
        })
        .collect();
    let inc: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..v).filter(|&u| q.inc(u as u8 + 1, v as u8 + 1)).collect())
        .collect();

    struct Ctx<'a> {
        n: usize,
        prev: &'a [Option<usize>],
        inc: &'a [Vec<usize>],
        asc_pairs: &'a [Vec<usize>],
    }

    fn rec(ctx: &Ctx, v: usize, kappa: &mut Vec<usize>, left: &mut Vec<usize>, acc: &mut PolyT) {
        if v == ctx.n {
            let mut asc = 0;
            for (w, us) in ctx.asc_pairs.iter().enumerate() {
                asc += us.iter().filter(|&&u| kappa[u] < kappa[w]).count();
            }
            *acc += &PolyT::monomial(1, asc);
            return;
        }
        for c in 0..left.len() {
            if left[c] == 0 {
                continue;
            }
            if let Some(u) = ctx.prev[v] {
                if kappa[u] <= c {
                    continue;
                }
            }
            if ctx.inc[v].iter().any(|&u| kappa[u] == c) {
                continue;
            }
            left[c] -= 1;
            kappa[v] = c;
            rec(ctx, v + 1, kappa, left, acc);
            left[c] += 1;
        }
    }

    let ctx = Ctx {
        n,
        prev: &prev,
        inc: &inc,
        asc_pairs: &asc_pairs,
    };
    let coeffs: Vec<(Vec<usize>, PolyT)> = partitions(n)
        .into_par_iter()
        .map(|lambda| {
            let mut acc = PolyT::zero();
            let mut left = lambda.clone();
            let mut kappa = vec![0; n];
            rec(&ctx, 0, &mut kappa, &mut left, &mut acc);
            (lambda, acc)
        })
        .collect();
    let mut out = SymExpr::zero(n, Basis::M);
    for (lambda, c) in coeffs {
        out.add_term(lambda, &c);
    }
    Ok(out)
}

/// `X^β` through `ω F_{W_β}` (or `ω F_{W_β(t)}`), in the monomial basis.
pub fn x_via_f(p: &Poset, beta: &Content, with_t: bool) -> Result<SymExpr> {
    let w = w_beta(p, beta, with_t)?;
    let sym = detect_symmetric(&f_gamma(p, &w)?)?;
    Ok(sym.omega().change_basis(Basis::M))
}

fn weight(p: &Poset, t: &PTableau, with_t: bool) -> PolyT {
    if with_t {
        PolyT::monomial(1, inv_unchecked(p, &t.cread()))
    } else {
        PolyT::one()
    }
}

/// `ω X^β = Σ_T t^{inv_P(cread T)} s_{sh T}` over `P`-tableaux of content β.
pub fn schur_expansion_gasharov(p: &Poset, beta: &Content, with_t: bool) -> Result<SymExpr> {
    if !p.is_31_free() {
        return Err(Error::NotThreeOneFree);
    }
    if with_t && !p.has_order() {
        return Err(Error::NotNuio);
    }
    let mut out = SymExpr::zero(beta.len(), Basis::S);
    for lambda in partitions(beta.len()) {
        for t in enumerate(p, &lambda, Some(beta)) {
            out.add_term(lambda.clone(), &weight(p, &t, with_t));
        }
    }
    Ok(out)
}

fn check(p: &Poset, with_t: bool) -> Result<()> {
    if !p.is_31_free() {
        return Err(Error::NotThreeOneFree);
    }
    if with_t && !p.has_order() {
        return Err(Error::NotNuio);
    }
    Ok(())
}

/// Coefficient of `e_λ` in `X^β` for a hook `λ`, as a sum over key
/// `P`-tableaux.
pub fn e_coeff_hook(p: &Poset, lambda: &[usize], beta: &Content, with_t: bool) -> Result<PolyT> {
    check(p, with_t)?;
    if !is_hook(lambda) {
        return Err(Error::Shape(format!("{lambda:?} is not a hook")));
    }
    let mut acc = PolyT::zero();
    for t in key_tableaux(p, lambda, Some(beta))? {
        acc += &weight(p, &t, with_t);
    }
    Ok(acc)
}

/// Coefficient of `e_λ` in `X^β` for `λ_1 <= 2`, as a sum over left
/// `P`-tableaux.
pub fn e_coeff_twocol(p: &Poset, lambda: &[usize], beta: &Content, with_t: bool) -> Result<PolyT> {
    check(p, with_t)?;
    let mut acc = PolyT::zero();
    for t in left_tableaux(p, lambda, Some(beta))? {
        acc += &weight(p, &t, with_t);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::all_31_free;

    fn factorial(n: i64) -> i64 {
        (1..=n).product()
    }

    #[test]
    fn antichain_and_chain() {
        for n in 1..=4 {
            let a = Poset::antichain(n);
            let x = x_direct(&a, &Content::of_poset(&a), false).unwrap();
            let expect = SymExpr::from_ints(Basis::E, n, &[(&[n], factorial(n as i64))]);
            assert_eq!(x.change_basis(Basis::E), expect);
            let c = Poset::chain(n);
            let x = x_direct(&c, &Content::of_poset(&c), false).unwrap();
            for (lambda, coef) in &x.terms {
                let multinomial = factorial(n as i64)
                    / lambda.iter().map(|&k| factorial(k as i64)).product::<i64>();
                assert_eq!(coef.as_constant(), Some(multinomial));
            }
        }
    }

    #[test]
    fn p2_5_sum() {
        let p = Poset::p_k(2, 5);
        let beta = Content::new(vec![1, 2, 3, 4]);
        let x = x_direct(&p, &beta, false).unwrap();
        let expect = SymExpr::from_ints(Basis::S, 4, &[(&[4], 8), (&[3, 1], 4), (&[2, 2], 2)]);
        assert_eq!(x.omega().change_basis(Basis::S), expect);
        assert_eq!(schur_expansion_gasharov(&p, &beta, false).unwrap(), expect);
        let g = schur_expansion_gasharov(&p, &beta, true).unwrap();
        assert_eq!(g.coeff(&[2, 2]).eval(1), 2);
    }

    #[test]
    fn two_routes_agree() {
        for n in 1..=4 {
            for p in all_31_free(n) {
                let Some(order) = p.nuio_witness() else { continue };
                let p = p.with_order(&order).unwrap();
                let beta = Content::of_poset(&p);
                for with_t in [false, true] {
                    let a = x_direct(&p, &beta, with_t).unwrap();
                    assert_eq!(a, x_via_f(&p, &beta, with_t).unwrap());
                    let g = schur_expansion_gasharov(&p, &beta, with_t).unwrap();
                    assert_eq!(g.omega().change_basis(Basis::M), a);
                }
            }
        }
    }

    #[test]
    fn t_table_row() {
        let p = Poset::p_k(3, 5);
        let beta = Content::of_poset(&p);
        let x = x_via_f(&p, &beta, true).unwrap().omega().change_basis(Basis::H);
        let expect = SymExpr::from_ints(Basis::H, 5, &[(&[5], 8), (&[4, 1], 4), (&[3, 2], 1)]);
        assert_eq!(x.t_coefficient(3), expect);
        assert_eq!(
            x.t_coefficient(0),
            SymExpr::from_ints(Basis::H, 5, &[(&[5], 1)])
        );
    }

    #[test]
    fn hook_coefficients() {
        let p = Poset::p_k(2, 8);
        let beta = Content::new(vec![1, 3, 4, 5, 7]);
        assert_eq!(e_coeff_hook(&p, &[3, 1, 1], &beta, false).unwrap(), PolyT::constant(3));
        let x = x_direct(&p, &beta, false).unwrap().change_basis(Basis::E);
        assert_eq!(x.coeff(&[3, 1, 1]), PolyT::constant(3));
        let c = Poset::chain(4);
        assert_eq!(
            e_coeff_hook(&c, &[1, 1, 1, 1], &Content::of_poset(&c), false).unwrap(),
            PolyT::one()
        );
        assert!(e_coeff_hook(&p, &[2, 2], &beta, false).is_err());
    }

    #[test]
    fn twocol_coefficients() {
        let p = Poset::p_k(2, 3);
        let beta = Content::of_poset(&p);
        assert_eq!(e_coeff_twocol(&p, &[2, 1], &beta, false).unwrap(), PolyT::one());
        let x = x_direct(&p, &beta, false).unwrap().change_basis(Basis::E);
        assert_eq!(x.coeff(&[2, 1]), PolyT::one());
        assert_eq!(
            e_coeff_twocol(&p, &[1, 1, 1], &beta, true).unwrap(),
            e_coeff_hook(&p, &[1, 1, 1], &beta, true).unwrap()
        );
    }
}
