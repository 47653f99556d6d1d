//! Acceptance criteria. Runs as a plain binary and prints one line per
//! criterion; exits non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use pschur::arrow::{d_lambda, d_tilde, j_diagram, m_diagram, ArrowDiagram, L, N, R};
use pschur::chromatic::{e_coeff_hook, schur_expansion_gasharov, x_direct, x_via_f};
use pschur::eqgraph::{all_f, graph_for_content, verify_schur_theorem};
use pschur::ncalg::{e_full, j_flagged, m_p, newton_check, NCElement};
use pschur::poset::{all_31_free, all_posets};
use pschur::quotient::{positivity_probe, IdealKind, Verdict};
use pschur::rmatrix::verify_eta;
use pschur::symfun::{is_hook, partitions, Basis, PolyT, SymExpr};
use pschur::tableaux::{enumerate, enumerate_flagged, key_tableaux, left_tableaux, PTableau};
use pschur::verify::Spaces;
use pschur::{Content, Poset, Word};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn w(s: &str) -> Word {
    s.bytes().map(|b| b - b'0').collect()
}

fn c(v: &[u8]) -> Content {
    Content::new(v.to_vec())
}

fn mask(elems: &[u8]) -> u64 {
    elems.iter().fold(0, |m, &a| m | 1u64 << (a - 1))
}

fn sorted_strings(fs: &[SymExpr]) -> Vec<String> {
    let mut v: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
    v.sort();
    v
}

fn sym(basis: Basis, deg: usize, terms: &[(&[usize], i64)]) -> SymExpr {
    SymExpr::from_ints(basis, deg, terms)
}

fn posets_31_free(max: usize) -> Vec<Poset> {
    (1..=max).flat_map(all_31_free).collect()
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure!(t < limit, "took {t:?}, limit {limit:?}");
    Ok(())
}

/// Components of a graph on `beta` against an expected multiset of `F`.
fn graph_matches(p: &Poset, beta: &Content, inv: Option<usize>, kind: IdealKind, expected: &[SymExpr]) -> Result<(), String> {
    let g = ok(graph_for_content(p, beta, inv, kind))?;
    let fs = ok(all_f(p, &g))?;
    let got = sorted_strings(&fs);
    let want = sorted_strings(expected);
    ensure!(got == want, "inv {inv:?}: got {got:?}, expected {want:?}");
    Ok(())
}

fn c1() -> Outcome {
    let start = Instant::now();
    let p = Poset::p_k(2, 5);
    let s4 = sym(Basis::S, 4, &[(&[4], 1)]);
    let s31 = sym(Basis::S, 4, &[(&[3, 1], 1)]);
    let s22 = sym(Basis::S, 4, &[(&[2, 2], 1)]);
    // three s31 components: 2 + 5 + 3*3 + 8 = 24 words in 13 components
    let mut want = vec![s22.clone(), s31.add(&s22)];
    want.extend(std::iter::repeat(s31).take(3));
    want.extend(std::iter::repeat(s4).take(8));
    let beta = c(&[1, 2, 3, 4]);
    graph_matches(&p, &beta, None, IdealKind::Plac, &want)?;
    let g = ok(graph_for_content(&p, &beta, None, IdealKind::Plac))?;
    let got: BTreeSet<BTreeSet<Word>> = (0..g.num_components()).map(|i| g.component_words(i).into_iter().collect()).collect();
    let want_comps: BTreeSet<BTreeSet<Word>> = [
        "3142 3412",
        "1342 1423 4123",
        "2341 3124 2314",
        "2431 2413 4213",
        "3241 3421 4231 4312 4132",
        "1234",
        "1324",
        "4321",
        "2143",
        "1243",
        "1432",
        "2134",
        "3214",
    ]
    .iter()
    .map(|s| s.split(' ').map(w).collect())
    .collect();
    ensure!(got == want_comps, "components {got:?}");
    within(start, Duration::from_secs(1))?;
    Ok("13 components".into())
}

fn c2() -> Outcome {
    let start = Instant::now();
    let p = Poset::p_k(2, 5);
    let s5 = sym(Basis::S, 5, &[(&[5], 1)]);
    let s41 = sym(Basis::S, 5, &[(&[4, 1], 1)]);
    let s32 = sym(Basis::S, 5, &[(&[3, 2], 1)]);
    let mut want = vec![s41.add(&s32), s32, s41.clone(), s41];
    want.extend(std::iter::repeat(s5).take(4));
    graph_matches(&p, &c(&[1, 1, 2, 3, 4]), Some(2), IdealKind::Plac, &want)?;
    within(start, Duration::from_secs(1))?;
    Ok("8 components".into())
}

fn c3() -> Outcome {
    let start = Instant::now();
    let p = Poset::p_k(3, 6);
    let h = |t: &[(&[usize], i64)]| sym(Basis::H, 5, t);
    let h5 = || h(&[(&[5], 1)]);
    let a = || h(&[(&[5], 2), (&[4, 1], 1)]);
    let b = || h(&[(&[5], 5), (&[4, 1], 3), (&[3, 2], 1)]);
    let d = || h(&[(&[5], 1), (&[4, 1], 1)]);
    let table: Vec<Vec<SymExpr>> = vec![
        vec![h5()],
        vec![h5(), h5(), h5(), h5()],
        vec![a(), a(), h5(), h5(), h5()],
        vec![b(), d(), h5(), h5()],
        vec![b(), d(), h5(), h5()],
        vec![a(), a(), h5(), h5(), h5()],
        vec![h5(), h5(), h5(), h5()],
        vec![h5()],
    ];
    let beta = c(&[1, 2, 3, 4, 5]);
    for (d, want) in table.iter().enumerate() {
        graph_matches(&p, &beta, Some(d), IdealKind::H, want)?;
    }
    within(start, Duration::from_secs(5))?;
    Ok("component counts 1,4,5,4,4,5,4,1".into())
}

fn c4() -> Outcome {
    let p = Poset::p_k(3, 6);
    let g = ok(graph_for_content(&p, &c(&[1, 2, 3, 4, 6]), Some(3), IdealKind::H))?;
    let sizes: Vec<usize> = g.components.iter().map(Vec::len).collect();
    ensure!(sizes == [22, 22], "component sizes {sizes:?}");
    let want = sym(Basis::H, 5, &[(&[5], 2), (&[4, 1], 2), (&[3, 2], 1)]);
    for f in ok(all_f(&p, &g))? {
        ensure!(f == want, "F = {f}");
    }
    Ok("2 components of 22 vertices".into())
}

fn c5() -> Outcome {
    let p = Poset::p_k(2, 8);
    let beta = c(&[1, 3, 4, 5, 7]);
    let lambda = [3, 1, 1];
    let coeff = ok(e_coeff_hook(&p, &lambda, &beta, false))?;
    ensure!(coeff == PolyT::constant(3), "hook coefficient {coeff}");
    let direct = ok(x_direct(&p, &beta, false))?.change_basis(Basis::E).coeff(&lambda);
    ensure!(direct == PolyT::constant(3), "direct e coefficient {direct}");
    let rows = |t: &PTableau| t.rows();
    let mut got: Vec<_> = ok(key_tableaux(&p, &lambda, Some(&beta)))?.iter().map(rows).collect();
    let mut want: Vec<_> = [
        vec![vec![1, 4, 5], vec![3], vec![7]],
        vec![vec![1, 5, 4], vec![3], vec![7]],
        vec![vec![1, 4, 3], vec![5], vec![7]],
    ]
    .iter()
    .map(|r| ok(PTableau::from_rows(r)).map(|t| t.rows()))
    .collect::<Result<_, _>>()?;
    got.sort();
    want.sort();
    ensure!(got == want, "key tableaux {got:?}");
    Ok("coefficient 3, 3 key tableaux".into())
}

fn c6() -> Outcome {
    let posets = posets_31_free(5);
    let results: Vec<Result<usize, String>> = posets
        .par_iter()
        .map(|p| {
            let mut comps = 0;
            for size in 1..=5 {
                for beta in Content::all_of_size(p.n(), size) {
                    let g = ok(graph_for_content(p, &beta, None, IdealKind::Plac))?;
                    let rep = ok(verify_schur_theorem(p, &g))?;
                    for cc in &rep.components {
                        ensure!(cc.pass, "poset {:?} content {beta:?} component {:?}: {:?} vs {}", p.relations(), cc.representative, cc.computed, cc.expected);
                    }
                    comps += rep.components.len();
                }
            }
            Ok(comps)
        })
        .collect();
    let comps: usize = results.into_iter().collect::<Result<Vec<_>, _>>()?.iter().sum();
    Ok(format!("{} posets, {comps} components", posets.len()))
}

fn c7() -> Outcome {
    let posets = posets_31_free(5);
    posets.par_iter().try_for_each(|p| {
        let mut sp = Spaces::new(p, IdealKind::Plac);
        for k in 1..=4 {
            for ell in k + 1..=5 - k {
                let (ek, el) = (e_full(p, k as i64), e_full(p, ell as i64));
                let diff = &(&ek * &el) - &(&el * &ek);
                ensure!(ok(sp.member(&diff))?, "poset {:?}: e_{k} e_{ell}", p.relations());
            }
        }
        Ok(())
    })?;
    Ok(format!("{} posets", posets.len()))
}

fn c8() -> Outcome {
    let posets: Vec<Poset> = (1..=5).flat_map(all_posets).collect();
    for p in &posets {
        for m in 1..=5 {
            ensure!(newton_check(p, m), "poset {:?}, m = {m}", p.relations());
        }
    }
    Ok(format!("{} posets", posets.len()))
}

/// Random (3+1)-free poset on `n` elements, naturally labelled.
fn random_31_free(rng: &mut StdRng, n: usize) -> Poset {
    loop {
        let rels: Vec<(u8, u8)> = (1..=n as u8)
            .flat_map(|a| (a + 1..=n as u8).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(0.3))
            .collect();
        let p = Poset::from_relations(n, &rels).unwrap();
        if p.is_31_free() {
            return p;
        }
    }
}

fn c9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut posets = vec![Poset::p_k(2, 7)];
    posets.extend((0..20).map(|i| random_31_free(&mut rng, 5 + i % 3)));
    let pairs: Vec<(usize, usize)> = (1..=5).flat_map(|k| (1..=6 - k).map(move |l| (k, l))).collect();
    let total: usize = posets
        .par_iter()
        .map(|p| {
            let mut n = 0;
            for &(k, l) in &pairs {
                let rep = ok(verify_eta(p, k, l))?;
                ensure!(rep.pass(), "poset {:?}, ({k},{l}): {rep:?}", p.relations());
                n += rep.pairs;
            }
            Ok(n)
        })
        .collect::<Result<Vec<_>, String>>()?
        .iter()
        .sum();
    Ok(format!("{} posets, {total} chain pairs", posets.len()))
}

fn c10() -> Outcome {
    let posets: Vec<Poset> = posets_31_free(5)
        .into_iter()
        .filter_map(|p| p.nuio_witness().map(|o| p.with_order(&o).unwrap()))
        .collect();
    let checked: usize = posets
        .par_iter()
        .map(|p| {
            let mut n = 0;
            for size in 1..=p.n() {
                for beta in Content::all_of_size(p.n(), size) {
                    let direct = ok(x_direct(p, &beta, true))?;
                    let via_f = ok(x_via_f(p, &beta, true))?;
                    let gash = ok(schur_expansion_gasharov(p, &beta, true))?;
                    let m = |f: &SymExpr| f.change_basis(Basis::M);
                    ensure!(m(&direct) == m(&via_f), "poset {:?} content {beta:?}: {direct} vs {via_f}", p.relations());
                    ensure!(m(&gash.omega()) == m(&direct), "poset {:?} content {beta:?}: gasharov {gash}", p.relations());
                    n += 1;
                }
            }
            Ok(n)
        })
        .collect::<Result<Vec<_>, String>>()?
        .iter()
        .sum();
    Ok(format!("{} posets, {checked} contents", posets.len()))
}

const FLAGGED_WORDS: [&str; 13] = [
    "141", "142", "151", "152", "153", "241", "242", "251", "252", "253", "342", "352", "353",
];

fn c11() -> Outcome {
    let p = Poset::p_k(2, 5);
    let z = [mask(&[1, 2, 3]), mask(&[1, 2, 3, 4, 5])];
    let j = ok(j_flagged(&p, &[1, 2], &z))?;
    let words = NCElement::from_words(FLAGGED_WORDS.iter().map(|s| w(s)));
    let mut sp = Spaces::new(&p, IdealKind::Plac);
    ensure!(ok(sp.congruent(&j, &words))?, "J is not congruent to the listed words");
    let got: BTreeSet<Word> = ok(enumerate_flagged(&p, &[1, 2], &z))?.iter().map(|t| t.diagread()).collect();
    let want: BTreeSet<Word> = FLAGGED_WORDS.iter().map(|s| w(s)).collect();
    ensure!(got == want, "diagonal reading words {got:?}");
    Ok("13 words".into())
}

fn c12() -> Outcome {
    let mut rng = StdRng::seed_from_u64(12);
    let mut pool: Vec<Poset> = all_31_free(5);
    pool.extend(all_31_free(6));
    let sample: Vec<Poset> = pool.choose_multiple(&mut rng, 10).cloned().collect();
    let total: usize = sample
        .par_iter()
        .map(|p| {
            let mut sp = Spaces::new(p, IdealKind::Plac);
            let mut n = 0;
            for size in 1..=6 {
                for lambda in partitions(size) {
                    for t in enumerate(p, &lambda, None) {
                        let (a, b) = (NCElement::word(t.cread()), NCElement::word(t.diagread()));
                        ensure!(ok(sp.congruent(&a, &b))?, "poset {:?} tableau {:?}", p.relations(), t.rows());
                        n += 1;
                    }
                }
            }
            Ok(n)
        })
        .collect::<Result<Vec<_>, String>>()?
        .iter()
        .sum();
    Ok(format!("10 posets, {total} tableaux"))
}

fn c13() -> Outcome {
    let p = Poset::from_relations(4, &[(1, 3), (2, 4)]).unwrap();
    let mut m = ArrowDiagram::free(4);
    for (i, j, _) in ArrowDiagram::free(4).edges().collect::<Vec<_>>() {
        ok(m.set(i, j, N))?;
    }
    ok(m.set(1, 4, R))?;
    ok(m.set(2, 3, L))?;
    // a -> b and c -> d with a, b, c, d = 1, 3, 2, 4
    let want = NCElement::from_words([w("1423"), w("2314")]);
    ensure!(m.eval(&p) == want, "2+2 eval {:?}", m.fill(&p));

    let shapes: Vec<Vec<usize>> = (1..=4).flat_map(partitions).collect();
    let rects: Vec<&Vec<usize>> = shapes.iter().filter(|l| l.iter().all(|&x| x == l[0])).collect();
    let posets = posets_31_free(5);
    posets.par_iter().try_for_each(|p| {
        let mut sp = Spaces::new(p, IdealKind::Plac);
        for lambda in &shapes {
            let diff = &j_diagram(lambda).eval(p) - &d_lambda(lambda).eval(p);
            ensure!(ok(sp.member(&diff))?, "poset {:?}: J - D for {lambda:?}", p.relations());
        }
        for lambda in &rects {
            let dt = ok(d_tilde(lambda, 0))?;
            let diff = &m_diagram(lambda).eval(p) - &dt.eval(p);
            let image = diff.commutative_image();
            ensure!(image.values().all(PolyT::is_zero), "poset {:?}: m - D~ for {lambda:?}", p.relations());
        }
        Ok::<(), String>(())
    })?;
    Ok(format!("{} posets, {} shapes", posets.len(), shapes.len()))
}

fn c14() -> Outcome {
    let posets = posets_31_free(5);
    let checked: usize = posets
        .par_iter()
        .map(|p| {
            let mut sp = Spaces::new(p, IdealKind::H);
            let mut n = 0;
            for size in 1..=5 {
                for lambda in partitions(size) {
                    let m = m_p(p, &lambda);
                    let mut families = Vec::new();
                    if is_hook(&lambda) {
                        families.push(("key", ok(key_tableaux(p, &lambda, None))?));
                    }
                    if lambda[0] <= 2 {
                        families.push(("left", ok(left_tableaux(p, &lambda, None))?));
                    }
                    for (name, ts) in families {
                        let sum = NCElement::from_words(ts.iter().map(|t| t.cread()));
                        ensure!(ok(sp.congruent(&m, &sum))?, "poset {:?}: m_{lambda:?} vs {name} tableaux", p.relations());
                        n += 1;
                    }
                }
            }
            Ok(n)
        })
        .collect::<Result<Vec<_>, String>>()?
        .iter()
        .sum();
    Ok(format!("{} posets, {checked} identities", posets.len()))
}

fn c15() -> Outcome {
    let posets = posets_31_free(5);
    let found: Vec<String> = posets
        .par_iter()
        .map(|p| {
            let mut out = Vec::new();
            for size in 1..=5 {
                for lambda in partitions(size) {
                    let rep = ok(positivity_probe(p, &m_p(p, &lambda), IdealKind::H))?;
                    if rep.verdict == Verdict::Negative {
                        for e in rep.negatives() {
                            out.push(format!("poset {:?} m_{lambda:?} component {:?}: {}", p.relations(), e.component, e.pairing));
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, String>>()?
        .concat();
    if found.is_empty() {
        Ok(format!("{} posets, INCONCLUSIVE-POSITIVE: no negative pairing", posets.len()))
    } else {
        Ok(format!("NEGATIVE pairings found: {}", found.join("; ")))
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("Knuth graph of 1234 over p_k(2,5)", c1),
        ("Knuth graph of 11234, inv 2, over p_k(2,5)", c2),
        ("H-graph table for 12345 over p_k(3,6)", c3),
        ("H-graph of 12346, inv 3, over p_k(3,6)", c4),
        ("hook coefficient and key tableaux over p_k(2,8)", c5),
        ("Schur positivity sweep, |P| <= 5", c6),
        ("e_k e_l commutation, |P| <= 5", c7),
        ("Newton identity, |P| <= 5", c8),
        ("eta suite", c9),
        ("t-chromatic identity, NUIO |P| <= 5", c10),
        ("flagged J_(1,2)([3],[5]) over p_k(2,5)", c11),
        ("cread and diagread congruence", c12),
        ("arrow suite", c13),
        ("hook and two-column identities mod I_H", c14),
        ("positivity probe mod I_H", c15),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let t = start.elapsed().as_secs_f64();
        match r {
            Ok(note) => println!("[PASS] {:>2} {name}: {note} ({t:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {why} ({t:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
