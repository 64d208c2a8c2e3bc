use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crsym::algebra::{rat, HoloVar};
use crsym::catalog::{check_instance, default_grid, s5_pair, th2_chain, th2_field};
use crsym::chains::{chain_sum, decompose_xpair, pure_chain_sum_closed_form, pure_pair, verify_xpair, ChainPair, PurePairParams};
use crsym::classify::{detect_balanced, ClassificationRow};
use crsym::linalg::{integer_row, rank_dense, solve_in_span, Echelon};
use crsym::parse::{parse_field, parse_model};
use crsym::report::{analyze, Analysis};
use crsym::tangency::{solve_weight_rigid, tangency_residual, Ansatz, GradedAlgebra};
use crsym::weights::admissible_field_weights;
use crsym::{Error, GaussRat, HoloField, MixedPoly, Mono, Rat};

type Check = std::result::Result<(), String>;
type Criterion = Box<dyn Fn() -> std::result::Result<String, String>>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(s: &str) -> std::result::Result<Analysis, String> {
    let p = parse_model(s).map_err(|e| format!("{s}: {e}"))?;
    analyze(&p).map_err(|e| format!("{s}: {e}"))
}

/// (g_t, g0re, g0im, g1, gc, gn).
fn profile(r: &ClassificationRow) -> [usize; 6] {
    [r.dim_gt, r.dim_g0_re, r.dim_g0_im, r.dim_g1, r.dim_gc, r.dim_gn]
}

fn expect_row(s: &str, dim: usize, prof: [usize; 6]) -> Check {
    let a = run(s)?;
    ensure(a.row.dim_g == dim && profile(&a.row) == prof, || {
        format!("{s}: dim {} profile {:?}, expected {dim} {prof:?}", a.row.dim_g, profile(&a.row))
    })
}

fn c1() -> Check {
    expect_row("Re(Z1*z2^2)", 10, [2, 1, 1, 1, 1, 2])?;
    expect_row("Re(Z1*z2^3)", 10, [2, 1, 1, 1, 1, 2])
}

fn c2() -> Check {
    expect_row("z1*Z1*Re(z2)^2", 7, [1, 1, 1, 1, 1, 0])?;
    expect_row("(z1*Z1)^2*Re(z2)^3", 7, [1, 1, 1, 1, 1, 0])
}

fn c3() -> Check {
    let s = "z1*Z1*z2*Z2*Re(z1*z2^2)";
    expect_row(s, 6, [0, 1, 1, 1, 1, 0])?;
    ensure(detect_balanced(&parse_model(s).unwrap()).is_some(), || "no balanced rotation found".into())
}

fn c4() -> Check {
    expect_row("Re(Z1*z2^3) + (z2*Z2)^2", 6, [2, 0, 1, 0, 1, 0])
}

fn c5() -> Check {
    expect_row("Re(z2^2)*Re(Z1*z2^2)", 5, [1, 1, 0, 0, 1, 0])
}

fn c6() -> Check {
    let a = run("z1*Z1 + (z2*Z2)^2")?;
    ensure(a.row.dim_g == 9, || format!("dim g = {}, expected 9", a.row.dim_g))?;
    let a = run("(z1*Z1 + z2*Z2)^2")?;
    ensure(a.row.dim_g == 7 && a.row.dim_g0 == 5, || format!("dim g = {}, dim g0 = {}", a.row.dim_g, a.row.dim_g0))
}

fn c7() -> Check {
    let a = run("8*(z1*Z1)^3*Re(z1^5*Z2)^2 + 4*(z1*Z1)^4*Re(z1^9)")?;
    let w = &a.algebra.weights;
    ensure(w.mu1 == rat(1, 17) && w.mu2 == rat(1, 34), || format!("weights {w}"))?;
    ensure(a.row.dim_g == 3, || format!("dim g = {}", a.row.dim_g))?;
    let ex = a.exotic.ok_or("no exotic symmetry")?;
    let target = parse_field("i*z1^5*d2").unwrap();
    ensure(ex.field.ratio_to(&target).is_some(), || format!("g_c generated by {}", ex.field))
}

fn c8() -> Check {
    let (p, q) = th2_chain();
    let x = th2_field();
    ensure(x.apply(&p) == q.scale(&GaussRat::i()), || "X(P') != iQ'".into())?;
    ensure(x.apply(&q).is_zero(), || "X(Q') != 0".into())?;
    let model = (&p * &q.conj()).re();
    let a = analyze(&model).map_err(|e| e.to_string())?;
    ensure(a.row.dim_g == 3 && a.row.dim_gc == 1, || format!("dim g = {}, dim g_c = {}", a.row.dim_g, a.row.dim_gc))
}

fn pure_params() -> Vec<PurePairParams> {
    let mut out = Vec::new();
    for p in 0..=3u32 {
        for q in 0..=3u32 {
            for alpha in -1..=3i64 {
                for beta in -1..=3i64 {
                    if p as i64 * beta - q as i64 * alpha == 0 {
                        continue;
                    }
                    for k in 0..=4 {
                        for n in 0..=2 {
                            for m in 0..=3 {
                                let params = PurePairParams::new(p, q, alpha, beta, k, n, m);
                                if params.validate().is_ok() {
                                    out.push(params);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn c9() -> std::result::Result<String, String> {
    let params = pure_params();
    params.par_iter().try_for_each(|pp| {
        let pair = pure_pair(pp).map_err(|e| format!("{pp:?}: {e}"))?;
        let sum = chain_sum(&pair);
        let closed = pure_chain_sum_closed_form(pp).map_err(|e| format!("{pp:?}: {e}"))?;
        ensure(sum == closed, || format!("{pp:?}: chain sum differs from the closed form"))?;
        ensure(tangency_residual(&pp.field(), &sum).is_zero(), || format!("{pp:?}: field is not a symmetry"))
    })?;
    Ok(format!("{} parameter sets", params.len()))
}

fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    let ra = rank_dense(a);
    let both: Vec<Vec<Rat>> = a.iter().chain(b).cloned().collect();
    ra == a.len() && rank_dense(b) == b.len() && ra == b.len() && rank_dense(&both) == ra
}

fn coords(ans: &Ansatz, xs: &[HoloField]) -> std::result::Result<Vec<Vec<Rat>>, String> {
    xs.iter().map(|x| ans.coords(x).ok_or_else(|| format!("{x} is outside its ansatz"))).collect()
}

fn check_algebra(label: &str, p: &MixedPoly, alg: &GradedAlgebra, row: &ClassificationRow) -> Check {
    for (nu, x) in alg.all_fields() {
        ensure(tangency_residual(x, p).is_zero(), || format!("{label}: residual of {x} (weight {nu}) is nonzero"))?;
    }
    let fields: Vec<(&Rat, &HoloField)> = alg.all_fields().collect();
    for (i, (nu1, x)) in fields.iter().enumerate() {
        for (nu2, y) in &fields[i + 1..] {
            let z = x.bracket(y);
            if z.is_zero() {
                continue;
            }
            let nu = *nu1 + *nu2;
            let comp = alg.component(&nu).ok_or_else(|| format!("{label}: [{x}, {y}] = {z} has empty weight {nu}"))?;
            let ans = Ansatz::new(&alg.weights, &nu, true);
            let basis = coords(&ans, &comp.basis)?;
            let v = ans.coords(&z).ok_or_else(|| format!("{label}: [{x}, {y}] not of weight {nu}"))?;
            ensure(solve_in_span(&basis, &v).is_some(), || format!("{label}: [{x}, {y}] = {z} outside the algebra"))?;
        }
    }
    ensure(row.dim_gc <= 1, || format!("{label}: dim g_c = {}", row.dim_gc))?;
    ensure(row.dim_g0_nil == 0 || row.dim_gc == 0, || format!("{label}: nilpotent rotation with g_c"))?;
    ensure(detect_balanced(p).is_some() == (row.dim_g1 > 0), || format!("{label}: balanced detection disagrees with g_1"))?;
    for nu in admissible_field_weights(&alg.weights, &Rat::one()).weights {
        let rigid = alg.component(&nu).map(|c| c.rigid_basis.clone()).unwrap_or_default();
        let ans = Ansatz::new(&alg.weights, &nu, false);
        let rigid = coords(&ans, &rigid)?;
        let direct = coords(&ans, &solve_weight_rigid(p, &alg.weights, &nu))?;
        ensure(same_span(&direct, &rigid), || format!("{label}: rigid solvers disagree at weight {nu}"))?;
        let (f_cols, kernel) = pluriharmonic_kernel(p, &ans);
        let projected: Vec<Vec<Rat>> = rigid.iter().map(|v| f_cols.iter().map(|&k| v[k].clone()).collect()).collect();
        ensure(span_eq(&projected, &kernel), || format!("{label}: pluriharmonicity oracle disagrees at weight {nu}"))?;
    }
    Ok(())
}

/// Coefficient vectors (f1, f2) of the w-free ansatz for which
/// 2 Re(f1 P_z1 + f2 P_z2) is pluriharmonic, with g dropped.
fn pluriharmonic_kernel(p: &MixedPoly, ans: &Ansatz) -> (Vec<usize>, Vec<Vec<Rat>>) {
    let (p1, p2) = (p.wirtinger(HoloVar::Z1), p.wirtinger(HoloVar::Z2));
    let unit = |k: usize| {
        let mut v = vec![Rat::zero(); ans.ncols()];
        v[k] = Rat::one();
        ans.field(&v)
    };
    let f_cols: Vec<usize> = (0..ans.ncols()).filter(|&k| unit(k).g.is_zero()).collect();
    let mut eqs: BTreeMap<Mono, Vec<(usize, GaussRat)>> = BTreeMap::new();
    for (j, &k) in f_cols.iter().enumerate() {
        let x = unit(k);
        let h = &(&x.f1 * &p1) + &(&x.f2 * &p2);
        for (m, c) in (&h + &h.conj()).mixed_part().terms() {
            eqs.entry(*m).or_default().push((j, c.clone()));
        }
    }
    let mut ech = Echelon::new(f_cols.len());
    for row in eqs.values() {
        ech.push(integer_row(row.iter().map(|(j, c)| (*j, c.re.clone()))));
        ech.push(integer_row(row.iter().map(|(j, c)| (*j, c.im.clone()))));
    }
    (f_cols, ech.kernel())
}

fn span_eq(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    let both: Vec<Vec<Rat>> = a.iter().chain(b).cloned().collect();
    let r = rank_dense(&both);
    rank_dense(a) == r && rank_dense(b) == r
}

fn check_decomposition(label: &str, x: &HoloField, pair: &ChainPair) -> Check {
    let checked = verify_xpair(x, pair).map_err(|e| format!("{label}: {e}"))?;
    match decompose_xpair(x, pair) {
        Ok(parts) => {
            let total = parts.iter().fold(MixedPoly::zero(), |acc, part| &acc + &chain_sum(part));
            ensure(total == chain_sum(&checked), || format!("{label}: decomposition sum differs"))
        }
        Err(Error::NotMonomialDiagonal) => Ok(()),
        Err(e) => Err(format!("{label}: {e}")),
    }
}

fn c10() -> std::result::Result<String, String> {
    let grid = default_grid();
    let checked: Vec<Check> = grid
        .par_iter()
        .map(|spec| {
            let label = format!("{} {}", spec.row, spec.params_string());
            let (line, analysis) = check_instance(spec);
            let a = analysis.ok_or_else(|| format!("{label}: {}", line.error.clone().unwrap_or_default()))?;
            check_algebra(&label, &a.poly, &a.algebra, &a.row)
        })
        .collect();
    checked.into_iter().collect::<Check>()?;
    let (x, pair) = s5_pair();
    check_decomposition("solitary monomial pair", &x, &pair)?;
    let (p, q) = th2_chain();
    check_decomposition("non-monomial pair", &th2_field(), &ChainPair::new(vec![p.clone(), q.clone()], vec![p, q]))?;
    let pure = pure_params();
    pure.par_iter().try_for_each(|pp| {
        let pair = pure_pair(pp).map_err(|e| e.to_string())?;
        check_decomposition(&format!("{pp:?}"), &pp.field(), &pair)
    })?;
    Ok(format!("{} catalog instances, {} chain pairs", grid.len(), pure.len() + 2))
}

fn main() -> ExitCode {
    let unit = |f: fn() -> Check| move || f().map(|_| String::new());
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 first table row", Box::new(unit(c1))),
        ("2 second table row", Box::new(unit(c2))),
        ("3 third table row", Box::new(unit(c3))),
        ("4 fourth table row", Box::new(unit(c4))),
        ("5 sixth table row", Box::new(unit(c5))),
        ("6 extra models", Box::new(unit(c6))),
        ("7 solitary monomial example", Box::new(unit(c7))),
        ("8 non-monomial example", Box::new(unit(c8))),
        ("9 chain-sum oracle sweep", Box::new(c9)),
        ("10 property suites", Box::new(c10)),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        let t = Instant::now();
        let result = f();
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(info) if info.is_empty() => println!("PASS {name} ({secs:.2}s)"),
            Ok(info) => println!("PASS {name} ({secs:.2}s): {info}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2}s): {msg}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
