//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each, and
//! exits nonzero if any criterion fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use common::{knots, rng, AffineScalar};
use ratluk::algebra::{self, Rational, UnitRational};
use ratluk::decision::{equivalent, is_tautology};
use ratluk::duality::{
    faithfulness_probe, ideal_member, mv_approximant, qmap_check, qmap_compose, qmap_image,
    v_of_i_closure, zeroset, DualHom, Presentation, QMap, QuotientElement, RatPolyhedron,
};
use ratluk::gen::{random_unit, FormulaGen, RandomConnective};
use ratluk::pwl::{
    compile, compile_in, pwl_equal, pwl_eval, pwl_max, pwl_min, Compile, Limits, PwlFunc,
};
use ratluk::semantics::{eval, random_point_with, Valuation};
use ratluk::syntax::{translate_i1, translate_i2, DFormula, Formula, Term};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn compile_default<C: Compile>(phi: &Term<C>) -> Result<PwlFunc, String> {
    compile(phi, &Limits::default()).map_err(err)
}

fn c1_axiom_soundness() -> Outcome {
    let start = Instant::now();
    let mut r = rng(101);
    let g = FormulaGen::new(3, 5, 12);
    let pool: Vec<Formula> = (0..24).map(|_| g.generate(&mut r)).collect();
    let dpool: Vec<DFormula> = (0..24).map(|_| g.generate(&mut r)).collect();
    let k = pool.len();
    let mut count = 0;
    for i in 0..k {
        let (a, b, c) = (&pool[i], &pool[(i + 1) % k], &pool[(i + 5) % k]);
        let (rr, ss) = (random_unit(&mut r, 12), random_unit(&mut r, 12));
        let mut ql = common::lukasiewicz_axioms(a, b, c);
        ql.extend(common::scalar_axioms(a, b, &rr, &ss));
        for ax in &ql {
            let v = is_tautology(ax).map_err(err)?;
            ensure(v.answer, || {
                format!("not a tautology: {ax} at {:?}", v.witness)
            })?;
            count += 1;
        }
        let (a, b, c) = (&dpool[i], &dpool[(i + 1) % k], &dpool[(i + 5) % k]);
        let n = r.gen_range(1..=12);
        let mut rl = common::lukasiewicz_axioms(a, b, c);
        rl.extend(common::division_axioms(a, n));
        for ax in &rl {
            let v = is_tautology(ax).map_err(err)?;
            ensure(v.answer, || {
                format!("not a tautology: {ax} at {:?}", v.witness)
            })?;
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || {
        format!("took {elapsed:.1?}")
    })?;
    Ok(format!(
        "{count} axiom instances are tautologies in {elapsed:.1?}"
    ))
}

fn oracle_pairs<C: RandomConnective + Compile>(
    seed: u64,
    formulas: usize,
    points: usize,
) -> Result<usize, String> {
    let mut r = rng(seed);
    let mut checked = 0;
    for _ in 0..formulas {
        let dim = r.gen_range(1..=3);
        let phi: Term<C> = FormulaGen::new(dim, 6, 12).generate(&mut r);
        let f = compile_in(&phi, dim, &Limits::default()).map_err(err)?;
        for _ in 0..points {
            let v = random_point_with(&mut r, dim, 24);
            let expected = eval(&phi, &v).map_err(err)?;
            let got = pwl_eval(&f, &v).map_err(err)?;
            ensure(got == expected, || {
                format!("{phi} at {v}: engine {got}, semantics {expected}")
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn c2_compile_eval() -> Outcome {
    let a = oracle_pairs::<ratluk::syntax::Nabla>(202, 150, 4)?;
    let b = oracle_pairs::<ratluk::syntax::DeltaN>(203, 150, 4)?;
    Ok(format!("{} (formula, point) pairs agree exactly", a + b))
}

fn extremum_oracle<C: RandomConnective + Compile + AffineScalar>(
    seed: u64,
    count: usize,
) -> Result<(), String> {
    let mut r = rng(seed);
    let g = FormulaGen::new(1, 6, 12);
    for _ in 0..count {
        let phi: Term<C> = g.generate(&mut r);
        let f = compile_in(&phi, 1, &Limits::default()).map_err(err)?;
        let (lo, hi) = (pwl_min(&f), pwl_max(&f));
        let k = knots(&phi);
        ensure(lo.value.value() == &k.min(), || {
            format!("min of {phi}: {} vs {}", lo.value, k.min())
        })?;
        ensure(hi.value.value() == &k.max(), || {
            format!("max of {phi}: {} vs {}", hi.value, k.max())
        })?;
        // sweep over the engine's breakpoints and midpoints, evaluated by the semantics
        let mut xs: Vec<Rational> = f
            .cells()
            .iter()
            .flat_map(|c| c.v_rep().iter().map(|v| v[0].clone()))
            .collect();
        xs.sort();
        xs.dedup();
        let mut sweep = xs.clone();
        sweep.extend(
            xs.windows(2)
                .map(|w| (&w[0] + &w[1]) / Rational::from_integer(2.into())),
        );
        let values: Vec<Rational> = sweep
            .iter()
            .map(|x| {
                eval(
                    &phi,
                    &Valuation::from_point(std::slice::from_ref(x)).unwrap(),
                )
                .map(|y| y.into_value())
            })
            .collect::<Result<_, _>>()
            .map_err(err)?;
        ensure(
            values.iter().min() == Some(&k.min()) && values.iter().max() == Some(&k.max()),
            || format!("breakpoint sweep disagrees for {phi}"),
        )?;
        let at_min = eval(&phi, &lo.witness).map_err(err)?;
        ensure(at_min == lo.value, || {
            format!("min witness of {phi} is wrong")
        })?;
    }
    Ok(())
}

fn c3_extrema_1d() -> Outcome {
    extremum_oracle::<ratluk::syntax::Nabla>(301, 100)?;
    extremum_oracle::<ratluk::syntax::DeltaN>(302, 100)?;
    Ok("200 one-variable formulas: min and max match the knot oracle".into())
}

fn c4_translation() -> Outcome {
    let mut r = rng(404);
    for _ in 0..100 {
        let dim = r.gen_range(1..=3);
        let g = FormulaGen::new(dim, 4, 12);
        let phi: DFormula = g.generate(&mut r);
        let t = translate_i1(&phi);
        let psi: Formula = g.generate(&mut r);
        let s = translate_i2(&psi);
        for _ in 0..20 {
            let v = random_point_with(&mut r, dim, 24);
            ensure(eval(&phi, &v) == eval(&t, &v), || {
                format!("I1 changes the value of {phi} at {v}")
            })?;
            ensure(eval(&psi, &v) == eval(&s, &v), || {
                format!("I2 changes the value of {psi} at {v}")
            })?;
        }
        let back = translate_i2(&t);
        let v = equivalent(&back, &phi).map_err(err)?;
        ensure(v.answer, || {
            format!("I2(I1(phi)) differs from {phi} at {:?}", v.witness)
        })?;
        let back = translate_i1(&s);
        let v = equivalent(&back, &psi).map_err(err)?;
        ensure(v.answer, || {
            format!("I1(I2(psi)) differs from {psi} at {:?}", v.witness)
        })?;
    }
    Ok("200 formulas: values preserved at 20 points each, round trips equivalent".into())
}

fn c5_ideal_membership() -> Outcome {
    let mut r = rng(505);
    let (mut members, mut total) = (0, 0);
    let grids = [common::grid(1, 60), common::grid(2, 60)];
    for k in 0..100 {
        let dim = r.gen_range(1..=2);
        let g = FormulaGen::new(dim, 5, 12);
        let (f_term, _) = nonempty_zeroset(&mut r, dim, 5)?;
        let h: Formula = g.generate(&mut r);
        // a third of the pairs are members by construction
        let g_term = if k % 3 == 0 {
            Formula::times(f_term.clone(), h)
        } else {
            h
        };
        let f = compile_in(&f_term, dim, &Limits::default()).map_err(err)?;
        let gf = compile_in(&g_term, dim, &Limits::default()).map_err(err)?;
        let member = ideal_member(&gf, &f).map_err(err)?;
        let inclusion = zeroset(&f).is_subset_of(&zeroset(&gf)).map_err(err)?;
        ensure(member == inclusion, || {
            format!("ideal_member disagrees with inclusion for {g_term} in ({f_term}]")
        })?;
        if k % 3 == 0 {
            ensure(member, || format!("{g_term} should lie in ({f_term}]"))?;
        }
        for x in &grids[dim - 1] {
            let v = Valuation::from_point(x).unwrap();
            if eval(&f_term, &v).map_err(err)?.is_zero()
                && !eval(&g_term, &v).map_err(err)?.is_zero()
            {
                ensure(!member, || {
                    format!("grid point {v} contradicts membership of {g_term} in ({f_term}]")
                })?;
                break;
            }
        }
        members += usize::from(member);
        total += 1;
    }
    Ok(format!(
        "{total} pairs with nonempty V(f), {members} members: exact and grid checks agree"
    ))
}

fn nonempty_zeroset(
    r: &mut impl Rng,
    dim: usize,
    depth: usize,
) -> Result<(Formula, RatPolyhedron), String> {
    let g = FormulaGen::new(dim, depth, 12);
    loop {
        let f: Formula = g.generate(r);
        let z = zeroset(&compile_in(&f, dim, &Limits::default()).map_err(err)?);
        if !z.is_empty() {
            return Ok((f, z));
        }
    }
}

fn c6_closure() -> Outcome {
    let mut r = rng(606);
    for _ in 0..50 {
        let dim = r.gen_range(1..=2);
        let (_, c) = nonempty_zeroset(&mut r, dim, 4)?;
        let closed = v_of_i_closure(&c).map_err(err)?;
        let mut points = c.vertices();
        points.extend(closed.vertices());
        for _ in 0..200 {
            points.push(random_point_with(&mut r, dim, 12).to_point());
        }
        for x in &points {
            ensure(c.contains(x) == closed.contains(x), || {
                format!("membership differs at {x:?} for {c}")
            })?;
        }
    }
    Ok("50 polyhedra: V(I(C)) has the membership of C at all vertices and 200 points".into())
}

fn c7_mv_approximant() -> Outcome {
    let mut r = rng(707);
    for _ in 0..50 {
        let dim = r.gen_range(1..=2);
        let phi: DFormula = FormulaGen::new(dim, 4, 12).generate(&mut r);
        let f = compile_in(&phi, dim, &Limits::default()).map_err(err)?;
        let b = mv_approximant(&f).map_err(err)?;
        ensure(b.has_integer_coefficients(), || {
            format!("non-integer coefficient for {phi}")
        })?;
        for cell in f.cells() {
            for v in cell.v_rep() {
                let fb = b.value_at(v).unwrap();
                ensure(fb >= cell.piece().eval(v), || {
                    format!("approximant below {phi} at {v:?}")
                })?;
            }
        }
        let (zf, zb) = (zeroset(&f), zeroset(&b));
        ensure(zf.set_eq(&zb).map_err(err)?, || {
            format!("zeroset changed for {phi}")
        })?;
    }
    Ok("50 formulas: integer coefficients, domination and equal zerosets".into())
}

fn random_components(
    r: &mut impl Rng,
    n: usize,
    m: usize,
) -> Result<(Vec<Formula>, Vec<PwlFunc>), String> {
    let g = FormulaGen::new(n, 2, 4);
    let terms: Vec<Formula> = (0..m).map(|_| g.generate(r)).collect();
    let funcs = terms
        .iter()
        .map(|t| compile_in(t, n, &Limits::default()).map_err(err))
        .collect::<Result<_, _>>()?;
    Ok((terms, funcs))
}

fn c8_duality() -> Outcome {
    let mut r = rng(808);
    let limits = Limits::default();
    for _ in 0..20 {
        let (n, m, k) = (r.gen_range(1..=2), r.gen_range(1..=2), r.gen_range(1..=2));
        let (_, p) = nonempty_zeroset(&mut r, n, 2)?;
        let (_, lam) = random_components(&mut r, n, m)?;
        let probe =
            QMap::new_unchecked(p.clone(), RatPolyhedron::cube(m), lam.clone()).map_err(err)?;
        let q = qmap_image(&probe).map_err(err)?;
        let lambda = QMap::new(p.clone(), q.clone(), lam).map_err(err)?;
        let (_, sig) = random_components(&mut r, m, k)?;
        let probe =
            QMap::new_unchecked(q.clone(), RatPolyhedron::cube(k), sig.clone()).map_err(err)?;
        let rr = qmap_image(&probe).map_err(err)?;
        let sigma = QMap::new(q.clone(), rr.clone(), sig).map_err(err)?;
        let comp = qmap_compose(&sigma, &lambda).map_err(err)?;
        ensure(qmap_check(&comp).map_err(err)?.is_none(), || {
            "composition leaves its codomain".into()
        })?;
        for x in p.vertices() {
            let direct = comp.apply(&x);
            let stepwise = lambda.apply(&x).and_then(|y| sigma.apply(&y));
            ensure(direct == stepwise, || {
                format!("composition differs at {x:?}")
            })?;
        }
        let pr = Arc::new(Presentation::of_polyhedron(&rr).map_err(err)?);
        let pq = Arc::new(Presentation::of_polyhedron(&q).map_err(err)?);
        let pp = Arc::new(Presentation::of_polyhedron(&p).map_err(err)?);
        let d_sigma = DualHom::with_presentations(&sigma, pr.clone(), pq.clone()).map_err(err)?;
        let d_lambda = DualHom::with_presentations(&lambda, pq, pp.clone()).map_err(err)?;
        let d_comp = DualHom::with_presentations(&comp, pr.clone(), pp).map_err(err)?;
        let g = FormulaGen::new(k, 3, 6);
        for _ in 0..3 {
            let a: Formula = g.generate(&mut r);
            let b: Formula = g.generate(&mut r);
            let a = QuotientElement::new(compile_in(&a, k, &limits).map_err(err)?, pr.clone())
                .map_err(err)?;
            let b = QuotientElement::new(compile_in(&b, k, &limits).map_err(err)?, pr.clone())
                .map_err(err)?;
            let one_step = d_comp.apply(&a).map_err(err)?;
            let two_steps = d_lambda
                .apply(&d_sigma.apply(&a).map_err(err)?)
                .map_err(err)?;
            ensure(
                ratluk::duality::quotient_equal(&one_step, &two_steps).map_err(err)?,
                || "D(s o l) differs from D(l) o D(s)".into(),
            )?;
            let sum = d_sigma.apply(&a.plus(&b).map_err(err)?).map_err(err)?;
            let sum2 = d_sigma
                .apply(&a)
                .map_err(err)?
                .plus(&d_sigma.apply(&b).map_err(err)?)
                .map_err(err)?;
            ensure(
                ratluk::duality::quotient_equal(&sum, &sum2).map_err(err)?,
                || "D(s) does not preserve the sum".into(),
            )?;
            let neg = d_sigma.apply(&a.neg()).map_err(err)?;
            ensure(
                ratluk::duality::quotient_equal(&neg, &d_sigma.apply(&a).map_err(err)?.neg())
                    .map_err(err)?,
                || "D(s) does not preserve negation".into(),
            )?;
            let half = d_sigma.apply(&a.delta(3).map_err(err)?).map_err(err)?;
            ensure(
                ratluk::duality::quotient_equal(
                    &half,
                    &d_sigma.apply(&a).map_err(err)?.delta(3).map_err(err)?,
                )
                .map_err(err)?,
                || "D(s) does not preserve division".into(),
            )?;
        }
    }
    let mut separated = 0;
    while separated < 10 {
        let (n, m) = (r.gen_range(1..=2), r.gen_range(1..=2));
        let (_, p) = nonempty_zeroset(&mut r, n, 2)?;
        let (lt, lam) = random_components(&mut r, n, m)?;
        let (mt, mu) = random_components(&mut r, n, m)?;
        let mut probe_points = p.vertices();
        probe_points.extend(p.pieces().iter().map(|x| x.centroid()));
        let distinct = probe_points.iter().find_map(|x| {
            let v = Valuation::from_point(x).unwrap();
            (0..m).find(|&i| eval(&lt[i], &v).unwrap() != eval(&mt[i], &v).unwrap())
        });
        if distinct.is_none() {
            continue;
        }
        let l_probe =
            QMap::new_unchecked(p.clone(), RatPolyhedron::cube(m), lam.clone()).map_err(err)?;
        let m_probe =
            QMap::new_unchecked(p.clone(), RatPolyhedron::cube(m), mu.clone()).map_err(err)?;
        let q = qmap_image(&l_probe)
            .map_err(err)?
            .union(&qmap_image(&m_probe).map_err(err)?)
            .map_err(err)?;
        let lambda = QMap::new(p.clone(), q.clone(), lam).map_err(err)?;
        let mu = QMap::new(p.clone(), q, mu).map_err(err)?;
        let s = faithfulness_probe(&lambda, &mu)
            .map_err(err)?
            .ok_or("distinct maps were not separated")?;
        ensure(p.contains(&s.point.to_point()), || {
            "separating point lies outside the domain".into()
        })?;
        let i = s.coordinate;
        ensure(
            eval(&lt[i], &s.point).map_err(err)? != eval(&mt[i], &s.point).map_err(err)?,
            || "maps agree at the reported point".into(),
        )?;
        separated += 1;
    }
    Ok("20 map pairs compose and dualize contravariantly; 10 distinct pairs separated".into())
}

fn c9_identities() -> Outcome {
    use algebra::{delta, mv_add, mv_mul_trunc as odot, mv_multiple, mv_neg as not, scalar};
    let mut r = rng(909);
    let zero = UnitRational::zero();
    let one = UnitRational::one();
    for _ in 0..10_000 {
        let (x, y, z) = (
            random_unit(&mut r, 60),
            random_unit(&mut r, 60),
            random_unit(&mut r, 60),
        );
        let (a, b) = (random_unit(&mut r, 12), random_unit(&mut r, 12));
        let n = r.gen_range(1..=12u64);
        let d = delta(n, &x).unwrap();
        let checks = [
            mv_add(&x, &mv_add(&y, &z)) == mv_add(&mv_add(&x, &y), &z),
            mv_add(&x, &y) == mv_add(&y, &x),
            mv_add(&x, &zero) == x,
            not(&not(&x)) == x,
            mv_add(&not(&mv_add(&not(&x), &y)), &y) == mv_add(&not(&mv_add(&not(&y), &x)), &x),
            mv_add(&not(&zero), &x) == one,
            mv_multiple(n, &d) == x,
            odot(&d, &mv_multiple(n - 1, &d)) == zero,
            scalar(&a, &odot(&x, &not(&y))) == odot(&scalar(&a, &x), &not(&scalar(&a, &y))),
            scalar(&odot(&a, &not(&b)), &x) == odot(&scalar(&a, &x), &not(&scalar(&b, &x))),
            scalar(&a, &scalar(&b, &x))
                == scalar(&UnitRational::new(a.value() * b.value()).unwrap(), &x),
            scalar(&one, &x) == x,
        ];
        if let Some(k) = checks.iter().position(|c| !c) {
            return Err(format!(
                "pointwise identity {k} fails at x={x}, y={y}, z={z}, r={a}, q={b}, n={n}"
            ));
        }
    }
    let (x, y, z) = (Formula::var(0), Formula::var(1), Formula::var(2));
    let zero_f = Formula::zero_like(&x);
    let mut ql_pairs = vec![
        (
            Formula::plus(x.clone(), Formula::plus(y.clone(), z.clone())),
            Formula::plus(Formula::plus(x.clone(), y.clone()), z.clone()),
        ),
        (
            Formula::plus(x.clone(), y.clone()),
            Formula::plus(y.clone(), x.clone()),
        ),
        (Formula::plus(x.clone(), zero_f.clone()), x.clone()),
        (Formula::neg(Formula::neg(x.clone())), x.clone()),
        (
            Formula::plus(
                Formula::neg(Formula::plus(Formula::neg(x.clone()), y.clone())),
                y.clone(),
            ),
            Formula::plus(
                Formula::neg(Formula::plus(Formula::neg(y.clone()), x.clone())),
                x.clone(),
            ),
        ),
        (
            Formula::plus(Formula::neg(zero_f.clone()), x.clone()),
            Formula::neg(zero_f.clone()),
        ),
    ];
    for _ in 0..10 {
        let (a, b) = (random_unit(&mut r, 12), random_unit(&mut r, 12));
        let dr = |s: &UnitRational, t: &Formula| Formula::delta_r(s.clone(), t.clone());
        let ab = UnitRational::new(a.value() * b.value()).unwrap();
        ql_pairs.push((
            dr(&a, &Formula::times(x.clone(), Formula::neg(y.clone()))),
            Formula::times(dr(&a, &x), Formula::neg(dr(&a, &y))),
        ));
        ql_pairs.push((
            dr(&algebra::mv_mul_trunc(&a, &algebra::mv_neg(&b)), &x),
            Formula::times(dr(&a, &x), Formula::neg(dr(&b, &x))),
        ));
        ql_pairs.push((dr(&a, &dr(&b, &x)), dr(&ab, &x)));
    }
    ql_pairs.push((Formula::delta_r(UnitRational::one(), x.clone()), x.clone()));
    for (lhs, rhs) in &ql_pairs {
        let (f, g) = (
            compile_in(lhs, 3, &Limits::default()).map_err(err)?,
            compile_in(rhs, 3, &Limits::default()).map_err(err)?,
        );
        ensure(pwl_equal(&f, &g).map_err(err)?, || {
            format!("{lhs} and {rhs} differ")
        })?;
    }
    let dx = DFormula::var(0);
    for n in 1..=12 {
        let d = DFormula::delta_n(n, dx.clone()).unwrap();
        let lhs1 = compile_default(&DFormula::fold_plus(&d, n))?;
        let rhs1 = compile_in(&dx, 1, &Limits::default()).map_err(err)?;
        ensure(pwl_equal(&lhs1, &rhs1).map_err(err)?, || {
            format!("n-fold delta({n}) differs from x")
        })?;
        let lhs2 = compile_default(&DFormula::times(d.clone(), DFormula::fold_plus(&d, n - 1)))?;
        ensure(pwl_max(&lhs2).value.is_zero(), || {
            format!("delta({n}) product is not zero")
        })?;
    }
    Ok(format!(
        "10^4 tuples pointwise and {} PWL identity instances",
        ql_pairs.len() + 24
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("axiom soundness", c1_axiom_soundness),
        ("compile/eval oracle", c2_compile_eval),
        ("1-D extremum oracle", c3_extrema_1d),
        ("translation faithfulness", c4_translation),
        ("ideal membership by zerosets", c5_ideal_membership),
        ("V(I(C)) closure", c6_closure),
        ("integer-coefficient approximant", c7_mv_approximant),
        ("duality functoriality", c8_duality),
        ("MV/DMV identities", c9_identities),
    ];
    let results: Vec<(Outcome, Duration)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let out =
                        std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (out, t.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (out, t))) in criteria.iter().zip(&results).enumerate() {
        match out {
            Ok(msg) => println!("criterion {} ({name}): PASS [{t:.1?}] {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{t:.1?}] {msg}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
