use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{Ctx, Outcome, Params, Suite, Task, VerifyConfig, DEFAULT_NS};
use crate::abelian::{iso_eq, subgroup_from_elements};
use crate::cyclic_ring::{eigen_rank, two_adic, CrtBasis, Poly, RingElement, RingModulus, Sign};
use crate::special::{
    divide_by_f, divide_by_f_basis, elem_f, elem_f_k, elem_f_prime_k, elem_g,
};
use crate::surgery::{
    kernel_closed_form, kernel_rho_bar, l_group_reduced_rank, lift_tbar, structure_set, LensParams,
    MethodChoice, NormalCoords, RhoFormula, StructureElement,
};
use crate::suspension::{
    browder_livesay_composite, elem_mu4m2, elem_nu, elem_omega, elem_p, elem_sigma, elem_tau,
    expected_orders, image_test_even_target, image_test_odd_target, minimal_exponent, suspend,
    torsion_basis,
};

type R<T> = std::result::Result<T, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> R<()> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: crate::Result<T>) -> R<T> {
    r.map_err(|e| e.to_string())
}

fn task(
    id: &'static str,
    suite: Suite,
    params: Params,
    run: impl Fn(&mut Ctx) -> Outcome + Send + Sync + 'static,
) -> Task {
    Task { id, suite, params, run: Box::new(run) }
}

fn units(n: usize) -> Vec<usize> {
    (1..n.max(2)).filter(|k| k.gcd(&n) == 1).collect()
}

/// `k = 1` plus the smallest other unit, when there is one.
fn sweep_ks(n: usize) -> Vec<usize> {
    let mut ks = vec![1];
    ks.extend(units(n).into_iter().find(|&k| k > 1));
    ks
}

fn rand_elem(ctx: &mut Ctx, m: RingModulus, r: i64) -> RingElement {
    let coeffs: Vec<i64> = (0..m.dim()).map(|_| ctx.rng.gen_range(-r..=r)).collect();
    RingElement::from_int_coeffs(m, &coeffs).expect("dimension matches")
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn lp(n: usize, d: usize, k: usize) -> R<LensParams> {
    e2s(LensParams::new(n, d, k as i64))
}

pub fn all_tasks(cfg: &VerifyConfig) -> Vec<Task> {
    let mut v = Vec::new();
    ring_tasks(cfg, &mut v);
    lemma_tasks(cfg, &mut v);
    kernel_tasks(cfg, &mut v);
    suspension_tasks(cfg, &mut v);
    torsion_tasks(cfg, &mut v);
    v
}

fn sweep_ns(cfg: &VerifyConfig) -> Vec<usize> {
    DEFAULT_NS.iter().copied().filter(|&n| cfg.n_ok(n)).collect()
}

fn sweep_ds(cfg: &VerifyConfig) -> Vec<usize> {
    (3..=cfg.max_d).collect()
}

// ---------------------------------------------------------------- ring

fn ring_tasks(cfg: &VerifyConfig, v: &mut Vec<Task>) {
    for n in sweep_ns(cfg) {
        let p: Params = vec![("N", n as i64)];
        v.push(task("ring-axioms", Suite::Ring, p.clone(), move |ctx| ring_axioms(ctx, n)));
        v.push(task("ring-inverse", Suite::Ring, p.clone(), move |ctx| ring_inverse(ctx, n)));
        v.push(task("ring-involution", Suite::Ring, p.clone(), move |ctx| ring_involution(ctx, n)));
        v.push(task("ring-eigen-rank", Suite::Ring, p.clone(), move |_| ring_eigen_rank(n)));
        v.push(task("ring-crt", Suite::Ring, p.clone(), move |ctx| ring_crt(ctx, n)));
        v.push(task("ring-lattice", Suite::Ring, p.clone(), move |ctx| ring_lattice(ctx, n)));
        if n % 2 == 0 {
            v.push(task("ring-eval", Suite::Ring, p.clone(), move |ctx| ring_eval(ctx, n)));
        }
        for n2 in (2..n).filter(|d| n % d == 0) {
            let p = vec![("N", n as i64), ("N2", n2 as i64)];
            v.push(task("ring-restrict", Suite::Ring, p, move |ctx| ring_restrict(ctx, n, n2)));
        }
    }
}

fn ring_axioms(ctx: &mut Ctx, n: usize) -> Outcome {
    let mut count = 0;
    for m in [RingModulus::truncated(n), RingModulus::group_ring(n)] {
        let m = e2s(m)?;
        let one = RingElement::one(m);
        for _ in 0..20 {
            let (a, b, c) = (rand_elem(ctx, m, 5), rand_elem(ctx, m, 5), rand_elem(ctx, m, 5));
            ensure(&(&a * &b) * &c == &a * &(&b * &c), || format!("associativity fails in {m}: {a}, {b}, {c}"))?;
            ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || format!("distributivity fails in {m}: {a}, {b}, {c}"))?;
            ensure(&a * &b == &b * &a, || format!("commutativity fails in {m}: {a}, {b}"))?;
            ensure(&a * &one == a && (&a + &-&a).is_zero(), || format!("identities fail in {m}: {a}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} triples"))
}

fn ring_inverse(ctx: &mut Ctx, n: usize) -> Outcome {
    let m = e2s(RingModulus::truncated(n))?;
    let one = RingElement::one(m);
    for k in units(n) {
        let k = k as i64;
        let a = RingElement::from_int_terms(m, &[(0, 1), (k, -1)]);
        let s = RingElement::from_int_terms(m, &(0..k).map(|j| (j, 1)).collect::<Vec<_>>());
        for x in [a, s] {
            let inv = e2s(x.inverse())?;
            ensure(&x * &inv == one, || format!("{x} * {inv} != 1"))?;
        }
    }
    let (mut inv_count, mut sing) = (0, 0);
    for _ in 0..10 {
        let a = rand_elem(ctx, m, 3);
        match a.inverse() {
            Ok(b) => {
                ensure(&a * &b == one, || format!("{a} * {b} != 1"))?;
                inv_count += 1;
            }
            Err(crate::Error::NotInvertible { witness: Some(w) }) => {
                ensure(!w.is_zero() && (&a * &w).is_zero(), || format!("bad null witness {w} for {a}"))?;
                sing += 1;
            }
            Err(e) => return Err(format!("{a}: {e}")),
        }
    }
    Ok(format!("{inv_count} random inverses, {sing} singular"))
}

fn ring_involution(ctx: &mut Ctx, n: usize) -> Outcome {
    let m = e2s(RingModulus::truncated(n))?;
    for _ in 0..10 {
        let (a, b) = (rand_elem(ctx, m, 5), rand_elem(ctx, m, 5));
        let ia = e2s(a.involution())?;
        ensure(e2s(ia.involution())? == a, || format!("involution is not an involution on {a}"))?;
        ensure(
            e2s((&a * &b).involution())? == &ia * &e2s(b.involution())?,
            || format!("involution is not multiplicative on {a}, {b}"),
        )?;
        let plus = e2s(a.eigen_project(Sign::Plus))?;
        let minus = e2s(a.eigen_project(Sign::Minus))?;
        ensure(&plus + &minus == a, || format!("eigen projections do not sum to {a}"))?;
        ensure(
            e2s(plus.eigen_test(Sign::Plus))? && e2s(minus.eigen_test(Sign::Minus))?,
            || format!("eigen projections of {a} are not eigen"),
        )?;
    }
    Ok("10 pairs".into())
}

fn ring_eigen_rank(n: usize) -> Outcome {
    let plus = e2s(eigen_rank(n, Sign::Plus))?;
    let minus = e2s(eigen_rank(n, Sign::Minus))?;
    let want = if n % 2 == 1 { ((n - 1) / 2, (n - 1) / 2) } else { (n / 2, n / 2 - 1) };
    ensure((plus, minus) == want, || format!("ranks (+,-) = ({plus},{minus}), expected {want:?}"))?;
    Ok(format!("(+,-) = ({plus},{minus})"))
}

fn ring_crt(ctx: &mut Ctx, n: usize) -> Outcome {
    let basis = e2s(CrtBasis::new(n))?;
    let m = e2s(RingModulus::truncated(n))?;
    for _ in 0..10 {
        let (a, b) = (rand_elem(ctx, m, 5), rand_elem(ctx, m, 5));
        let sa = e2s(basis.split(&a))?;
        ensure(e2s(basis.combine(&sa))? == a, || format!("CRT round trip fails on {a}"))?;
        let sb = e2s(basis.split(&b))?;
        let sab = e2s(basis.split(&(&a * &b)))?;
        for ((x, y), z) in sa.iter().zip(&sb).zip(&sab) {
            ensure(&(x * y) == z, || format!("CRT split is not multiplicative on {a}, {b}"))?;
        }
    }
    Ok(format!("{} factors", basis.factors().len()))
}

fn ring_eval(ctx: &mut Ctx, n: usize) -> Outcome {
    let m = e2s(RingModulus::truncated(n))?;
    for _ in 0..10 {
        let (a, b) = (rand_elem(ctx, m, 5), rand_elem(ctx, m, 5));
        let (ea, eb) = (e2s(a.eval_minus_one())?, e2s(b.eval_minus_one())?);
        ensure(e2s((&a * &b).eval_minus_one())? == &ea * &eb, || format!("eval(-1) not multiplicative on {a}, {b}"))?;
    }
    ensure(e2s(elem_f(n).and_then(|f| f.eval_minus_one()))?.is_zero(), || "f(-1) != 0".into())?;
    Ok("10 pairs".into())
}

fn ring_restrict(ctx: &mut Ctx, n: usize, n2: usize) -> Outcome {
    for m in [RingModulus::truncated(n), RingModulus::group_ring(n)] {
        let m = e2s(m)?;
        for _ in 0..5 {
            let (a, b) = (rand_elem(ctx, m, 5), rand_elem(ctx, m, 5));
            let (ra, rb) = (e2s(a.restrict(n2))?, e2s(b.restrict(n2))?);
            ensure(e2s((&a * &b).restrict(n2))? == &ra * &rb, || format!("restrict not multiplicative on {a}, {b}"))?;
            ensure(e2s((&a + &b).restrict(n2))? == &ra + &rb, || format!("restrict not additive on {a}, {b}"))?;
        }
    }
    Ok("5 pairs per ring".into())
}

fn ring_lattice(ctx: &mut Ctx, n: usize) -> Outcome {
    let m = e2s(RingModulus::truncated(n))?;
    for _ in 0..10 {
        let a = rand_elem(ctx, m, 5).scale_int(4);
        let ia = e2s(a.involution())?;
        let (p, q) = (&a + &ia, &a - &ia);
        ensure(p.in_lattice_4r(Sign::Plus), || format!("{p} should lie in 4R^+"))?;
        ensure(q.in_lattice_4r(Sign::Minus), || format!("{q} should lie in 4R^-"))?;
        let b = rand_elem(ctx, m, 5).scale_int(4);
        let pb = &b + &e2s(b.involution())?;
        ensure((&p + &pb).in_lattice_4r(Sign::Plus), || "4R^+ not closed under +".into())?;
    }
    let two = RingElement::from_int(m, 2);
    ensure(!two.in_lattice_4r(Sign::Plus), || "2 lies in 4R^+".into())?;
    Ok("10 samples".into())
}

// -------------------------------------------------------------- lemmas

fn lemma_tasks(cfg: &VerifyConfig, v: &mut Vec<Task>) {
    for n in (2..=48).filter(|&n| cfg.n_ok(n)) {
        let p: Params = vec![("N", n as i64)];
        v.push(task("lemma-f_k", Suite::Lemmas, p.clone(), move |_| lemma_f_k(n)));
        v.push(task("lemma-f-inverse", Suite::Lemmas, p.clone(), move |_| lemma_f_inverse(n)));
        if n % 2 == 0 {
            v.push(task("lemma-f_k-restrict", Suite::Lemmas, p.clone(), move |_| lemma_f_k_restrict(n)));
        }
        if n <= 24 {
            v.push(task("lemma-f_k-lattice-scan", Suite::Lemmas, p.clone(), move |_| lattice_scan(n)));
            if n % 2 == 0 {
                v.push(task("lemma-divide-by-f", Suite::Lemmas, p.clone(), move |ctx| lemma_divide(ctx, n)));
            }
        }
    }
    for n in [6usize, 12, 24].into_iter().filter(|&n| cfg.n_ok(n)) {
        for k in sweep_ks(n) {
            let p: Params = vec![("N", n as i64), ("k", k as i64)];
            v.push(task("lemma-decomposition", Suite::Lemmas, p.clone(), move |ctx| lemma_decomposition(ctx, n)));
            v.push(task("lemma-M-factor", Suite::Lemmas, p, move |ctx| lemma_m_factor(ctx, n, k)));
        }
    }
}

fn lemma_f_k(n: usize) -> Outcome {
    let f = e2s(elem_f(n))?;
    let ks = units(n);
    for &k in &ks {
        let fk = e2s(elem_f_k(n, k as i64))?;
        let fp = e2s(elem_f_prime_k(n, k as i64))?;
        ensure(e2s(fk.eigen_test(Sign::Minus))?, || format!("f_{k} is not antisymmetric"))?;
        ensure(&f * &fp == fk, || format!("f * f'_{k} = {} != f_{k} = {fk}", &f * &fp))?;
        ensure(fp.is_integral(), || format!("f'_{k} = {fp} is not integral"))?;
    }
    Ok(format!("{} units", ks.len()))
}

fn lemma_f_inverse(n: usize) -> Outcome {
    let m = e2s(RingModulus::truncated(n))?;
    let gf = &e2s(elem_g(n))? * &e2s(elem_f(n))?;
    let top = (n as i64 - 1) / 2;
    for j in 1..=top {
        let x = RingElement::from_int_terms(m, &[(j, 1), (-j, -1)]);
        ensure(&gf * &x == x, || format!("g f (x^{j} - x^-{j}) = {} != {x}", &gf * &x))?;
    }
    Ok(format!("{top} basis vectors"))
}

fn lemma_f_k_restrict(n: usize) -> Outcome {
    for k in units(n) {
        let r = e2s(elem_f_k(n, k as i64).and_then(|f| f.restrict(2)))?;
        ensure(r.is_zero(), || format!("f_{k} restricted to N=2 is {r}"))?;
    }
    Ok("all units".into())
}

fn lattice_scan(n: usize) -> Outcome {
    let mut members = 0;
    let mut converse = Vec::new();
    for k in units(n) {
        let fk = e2s(elem_f_k(n, k as i64))?;
        for t in 1..=(4 * n as i64) {
            let member = fk.scale_int(8 * t).in_lattice_4r(Sign::Minus);
            let divides = (4 * t) % n as i64 == 0;
            ensure(!member || divides, || format!("8*{t}*f_{k} lies in 4R but N = {n} does not divide 4*{t}"))?;
            members += member as usize;
            if divides && !member {
                converse.push(format!("k={k},t={t}"));
            }
        }
    }
    let mut note = format!("{members} members");
    if !converse.is_empty() {
        note += &format!("; converse fails at {} (k,t), first {}", converse.len(), converse[0]);
    }
    Ok(note)
}

fn lemma_divide(ctx: &mut Ctx, n: usize) -> Outcome {
    let basis = e2s(divide_by_f_basis(n))?;
    let f = e2s(elem_f(n))?;
    let m = basis[0].modulus();
    for _ in 0..100 {
        let mut u = RingElement::zero(m);
        for b in &basis {
            u = &u + &b.scale_int(ctx.rng.gen_range(-6i64..=6));
        }
        let a = e2s(divide_by_f(&u))?;
        ensure(&f * &a == u, || format!("f * divide_by_f({u}) = {} ", &f * &a))?;
        ensure(a.in_lattice_4r(Sign::Minus), || format!("divide_by_f({u}) = {a} is not in 4R^-"))?;
    }
    Ok("100 samples".into())
}

fn rand_poly(ctx: &mut Ctx, deg: usize, scale: i64) -> Poly {
    Poly::from_ints((0..=deg).map(|_| scale * ctx.rng.gen_range(-5i64..=5)))
}

/// Instances `a = b + Phi1 u = c + Phi2 v` with `b, c` in `4Z[x]`; checks
/// `M a = c M + (b - c) Phi2` modulo `Phi1 Phi2`.
fn lemma_decomposition(ctx: &mut Ctx, n: usize) -> Outcome {
    let (k, m) = two_adic(n);
    let big_k = 1usize << k;
    let phi1 = Poly::from_ints((0..big_k).map(|_| 1));
    let phi2 = e2s(RingModulus::odd_truncated(n))?.generator();
    let norm = e2s(RingModulus::truncated(n))?.generator();
    ensure(&phi1 * &phi2 == norm, || "Phi1 Phi2 is not the norm element".into())?;
    let mm = Poly::constant(rat(m as i64));
    for _ in 0..100 {
        let a = rand_poly(ctx, n - 1, 4);
        let u = rand_poly(ctx, n - big_k, 4);
        let v = rand_poly(ctx, big_k, 4);
        let b = &a - &(&phi1 * &u);
        let c = &a - &(&phi2 * &v);
        let d = &(&c * &mm) + &(&(&b - &c) * &phi2);
        ensure(d.coeffs().iter().all(|x| x.is_integer() && x.numer().is_multiple_of(&BigInt::from(4))), || {
            format!("d = {d} is not in 4Z[x]")
        })?;
        let (quo, rem) = (&(&a * &mm) - &d).div_rem(&norm);
        ensure(rem.is_zero() && quo.is_integral(), || format!("M a - d leaves {rem} mod the norm (a = {a})"))?;
    }
    Ok("100 instances".into())
}

fn lemma_m_factor(ctx: &mut Ctx, n: usize, k: usize) -> Outcome {
    let basis = e2s(CrtBasis::new(n))?;
    let odd = |x: RingElement| -> R<RingElement> { Ok(e2s(basis.split(&x))?.pop().expect("odd factor")) };
    let f = odd(e2s(elem_f(n))?)?;
    let fp = odd(e2s(elem_f_prime_k(n, k as i64))?)?;
    let om = f.modulus();
    let one = RingElement::one(om);
    let f2 = &f * &f;
    let m = two_adic(n).1 as i64;
    for _ in 0..100 {
        let deg = ctx.rng.gen_range(0..=3usize);
        let mut coeffs: Vec<i64> = (0..=deg).map(|_| ctx.rng.gen_range(-9i64..=9)).collect();
        if coeffs[deg] == 0 {
            coeffs[deg] = 1;
        }
        let mut qf = RingElement::zero(om);
        for &c in coeffs.iter().rev() {
            qf = &(&qf * &f2) + &RingElement::from_int(om, c);
        }
        let mpow = |e: usize| BigInt::from(m).pow(e as u32);
        let x = (&(&fp * &(&f2 - &one)) * &qf).scale_int(mpow(2 + 2 * deg) * 8);
        let y = (&(&fp * &f) * &qf).scale_int(mpow(1 + 2 * deg) * 8);
        ensure(x.is_divisible_by(4), || format!("8 f' (f^2-1) M^.. q(f^2) / 4 not integral, q = {coeffs:?}"))?;
        ensure(y.is_divisible_by(4), || format!("8 f' f M^.. q(f^2) / 4 not integral, q = {coeffs:?}"))?;
    }
    Ok("100 polynomials".into())
}

// -------------------------------------------------------------- kernel

fn kernel_tasks(cfg: &VerifyConfig, v: &mut Vec<Task>) {
    for n in sweep_ns(cfg) {
        for d in sweep_ds(cfg) {
            for k in sweep_ks(n) {
                let p: Params = vec![("N", n as i64), ("d", d as i64), ("k", k as i64)];
                v.push(task("thm-main-kernel", Suite::Kernel, p.clone(), move |ctx| main_kernel(ctx, n, d, k)));
                v.push(task("thm-main-rank", Suite::Kernel, p.clone(), move |ctx| main_rank(ctx, n, d, k)));
                if n % 2 == 0 {
                    v.push(task("formula-additivity", Suite::Kernel, p.clone(), move |ctx| additivity(ctx, n, d, k)));
                    v.push(task("formula-lift-independence", Suite::Kernel, p.clone(), move |ctx| {
                        lift_independence(ctx, n, d, k)
                    }));
                }
                if k != 1 && n % 2 == 0 {
                    v.push(task("formula-twist", Suite::Kernel, p, move |ctx| twist(ctx, n, d, k)));
                }
            }
        }
    }
    for n in (2..=48).filter(|&n| cfg.n_ok(n)) {
        v.push(task("rank-lattice-vs-formula", Suite::Kernel, vec![("N", n as i64)], move |_| {
            rank_lattice(n)
        }));
    }
}

fn rank_clause(n: usize, d: usize) -> usize {
    match (n % 2, d % 2) {
        (1, _) => (n - 1) / 2,
        (_, 1) => n / 2 - 1,
        _ => n / 2,
    }
}

fn main_kernel(ctx: &mut Ctx, n: usize, d: usize, k: usize) -> Outcome {
    let p = lp(n, d, k)?;
    let brute = e2s(kernel_rho_bar(&p, ctx.cap))?;
    let closed = kernel_closed_form(&p);
    ensure(iso_eq(&brute.torsion, &closed), || format!("brute {} vs closed {closed}", brute.torsion))?;
    Ok(format!("{closed}"))
}

fn main_rank(ctx: &mut Ctx, n: usize, d: usize, k: usize) -> Outcome {
    let p = lp(n, d, k)?;
    let s = e2s(structure_set(&p, MethodChoice::Auto, ctx.cap))?;
    let want = rank_clause(n, d);
    ensure(s.free_rank == want, || format!("free rank {} expected {want}", s.free_rank))?;
    Ok(format!("rank {want}"))
}

fn rank_lattice(n: usize) -> Outcome {
    for (sign, d) in [(Sign::Plus, 4), (Sign::Minus, 3)] {
        let r = e2s(l_group_reduced_rank(n, sign))?;
        ensure(r == rank_clause(n, d), || format!("{sign:?}: lattice rank {r}, clause {}", rank_clause(n, d)))?;
    }
    Ok("both signs".into())
}

fn rand_coords(ctx: &mut Ctx, p: &LensParams) -> NormalCoords {
    let c = p.c();
    let t4: Vec<i64> = (0..c).map(|_| ctx.rng.gen_range(0..p.t4_modulus() as i64)).collect();
    let t2: Vec<i64> = (0..c).map(|_| ctx.rng.gen_range(0..p.t4m2_modulus() as i64)).collect();
    NormalCoords::new(p, &t4, &t2).expect("shape")
}

fn additivity(ctx: &mut Ctx, n: usize, d: usize, k: usize) -> Outcome {
    let p = lp(n, d, k)?;
    let f = e2s(RhoFormula::new(&p))?;
    for _ in 0..5 {
        let (s, t) = (rand_coords(ctx, &p), rand_coords(ctx, &p));
        let diff = &(&f.evaluate(&s.add(&t, &p)) - &f.evaluate(&s)) - &f.evaluate(&t);
        ensure(diff.in_lattice_4r(p.sign()), || format!("formula not additive at {s:?} + {t:?}: {diff}"))?;
        let mut s2 = s.clone();
        s2.t4m2 = rand_coords(ctx, &p).t4m2;
        ensure(f.evaluate(&s2) == f.evaluate(&s), || "formula depends on t_(4i-2)".into())?;
    }
    Ok("5 pairs".into())
}

fn lift_independence(ctx: &mut Ctx, n: usize, d: usize, k: usize) -> Outcome {
    let p = lp(n, d, k)?;
    let f = e2s(RhoFormula::new(&p))?;
    let step = BigInt::from(p.t4_modulus()) * BigInt::from(e2s(p.odd_order())?);
    for _ in 0..5 {
        let t = rand_coords(ctx, &p);
        let base = lift_tbar(&t.t4, &p);
        let shifted: Vec<BigInt> = base.iter().map(|x| x + &step * ctx.rng.gen_range(1i64..=4)).collect();
        let diff = &f.evaluate_lifted(&base) - &f.evaluate_lifted(&shifted);
        ensure(diff.in_lattice_4r(p.sign()), || format!("lift dependence at {t:?}: {diff}"))?;
    }
    Ok("5 lifts".into())
}

fn twist(ctx: &mut Ctx, n: usize, d: usize, k: usize) -> Outcome {
    let (pk, p1) = (lp(n, d, k)?, lp(n, d, 1)?);
    let fp = e2s(elem_f_prime_k(n, k as i64))?;
    let (fk, f1) = (e2s(RhoFormula::new(&pk))?, e2s(RhoFormula::new(&p1))?);
    for _ in 0..5 {
        let t = rand_coords(ctx, &pk);
        let a = fk.evaluate(&t);
        let b = &fp * &f1.evaluate(&t);
        ensure(a == b, || format!("twist mismatch at {t:?}: {a} vs {b}"))?;
    }
    Ok("5 samples".into())
}

// ---------------------------------------------------------- suspension

fn suspension_tasks(cfg: &VerifyConfig, v: &mut Vec<Task>) {
    for n in [2usize, 4, 6, 8, 12].into_iter().filter(|&n| cfg.n_ok(n)) {
        for e in [1usize, 2] {
            let p: Params = vec![("N", n as i64), ("e", e as i64)];
            v.push(task("thm1-injective", Suite::Suspension, p.clone(), move |ctx| thm1_injective(ctx, n, e)));
            v.push(task("thm1-image", Suite::Suspension, p.clone(), move |ctx| thm1_image(ctx, n, e)));
            v.push(task("thm1-sigma", Suite::Suspension, p.clone(), move |_| thm1_sigma(n, e)));
            if e >= 2 {
                v.push(task("thm2-omega", Suite::Suspension, p.clone(), move |_| thm2_omega(n, e)));
                v.push(task("thm2-image", Suite::Suspension, p.clone(), move |ctx| thm2_image(ctx, n, e)));
                v.push(task("lemma-tau-suspension", Suite::Suspension, p.clone(), move |_| lemma_tau(n, e)));
                v.push(task("suspension-torsion-split", Suite::Suspension, p, move |ctx| prop_split(ctx, n, e)));
            }
        }
    }
}

/// Lattice elements `4(x^j - x^-j)` with zero coordinates.
fn minus_lattice_gens(p: &LensParams) -> R<Vec<StructureElement>> {
    let m = e2s(RingModulus::truncated(p.n()))?;
    Ok((1..=(p.n() as i64 - 1) / 2)
        .map(|j| {
            let mut x = StructureElement::zero(p);
            x.rho = RingElement::from_int_terms(m, &[(j, 4), (-j, -4)]);
            x
        })
        .collect())
}

fn torsion_sector(ctx: &Ctx, p: &LensParams) -> R<Vec<StructureElement>> {
    Ok(e2s(kernel_rho_bar(p, ctx.cap))?
        .members
        .into_iter()
        .map(|c| StructureElement::torsion(p, c))
        .collect())
}

fn thm1_injective(ctx: &mut Ctx, n: usize, e: usize) -> Outcome {
    let p = lp(n, 2 * e + 1, 1)?;
    let mut src = torsion_sector(ctx, &p)?;
    src.extend(minus_lattice_gens(&p)?);
    let mut images = Vec::with_capacity(src.len());
    for x in &src {
        ensure(x.validate(), || format!("source {x:?} is invalid"))?;
        let r = e2s(suspend(x))?;
        let y = r.determined.ok_or_else(|| "suspension from odd d is not determined".to_string())?;
        images.push((y.rho.clone(), y.coords.clone()));
    }
    let mut sorted = images.clone();
    sorted.sort_by_key(|a| (a.1.clone(), a.0.to_string()));
    sorted.dedup();
    ensure(sorted.len() == images.len(), || format!("{} sources, {} distinct images", images.len(), sorted.len()))?;
    Ok(format!("{} generators", src.len()))
}

fn thm1_image(ctx: &mut Ctx, n: usize, e: usize) -> Outcome {
    let p = lp(n, 2 * e + 1, 1)?;
    let q = lp(n, 2 * e + 2, 1)?;
    let mut count = 0;
    for x in torsion_sector(ctx, &p)?.iter().chain(&minus_lattice_gens(&p)?) {
        let y = e2s(suspend(x))?.candidates.remove(0);
        ensure(e2s(image_test_odd_target(&y))?, || format!("Sigma {x:?} fails the image test"))?;
        count += 1;
    }
    // every target with eval 0 is hit: torsion keeps its coordinates,
    // lattice vectors come from divide_by_f
    for y in torsion_sector(ctx, &q)? {
        let mut x = StructureElement::zero(&p);
        x.coords = y.coords.clone();
        ensure(x.validate(), || format!("{:?} has no valid preimage", y.coords))?;
        ensure(e2s(suspend(&x))?.determined.as_ref() == Some(&y), || format!("{:?} is not Sigma of its coords", y.coords))?;
    }
    for u in e2s(divide_by_f_basis(n))? {
        let mut y = StructureElement::zero(&q);
        y.rho = u.clone();
        ensure(e2s(image_test_odd_target(&y))?, || format!("{u} fails the image test"))?;
        let mut x = StructureElement::zero(&p);
        x.rho = e2s(divide_by_f(&u))?;
        ensure(x.validate(), || format!("preimage of {u} is invalid"))?;
        ensure(e2s(suspend(&x))?.determined == Some(y), || format!("Sigma of the preimage of {u} differs"))?;
    }
    Ok(format!("{count} images"))
}

fn thm1_sigma(n: usize, e: usize) -> Outcome {
    let q = lp(n, 2 * e + 2, 1)?;
    let s = e2s(elem_sigma(&q))?;
    ensure(s.validate(), || "sigma is invalid".into())?;
    ensure(e2s(s.rho.eval_minus_one())? == rat(8), || "sigma(-1) != 8".into())?;
    ensure(!e2s(image_test_odd_target(&s))?, || "sigma passes the image test".into())?;
    Ok("eval 8".into())
}

fn thm2_omega(n: usize, e: usize) -> Outcome {
    let p = lp(n, 2 * e, 1)?;
    let w = e2s(elem_omega(&p))?;
    let r = e2s(suspend(&w))?;
    ensure(r.candidates.iter().all(|y| y.rho.is_zero()), || "rho(Sigma omega) != 0".into())?;
    ensure(r.new_t4_values().contains(&0), || format!("0 not among {:?}", r.new_t4_values()))?;
    // on the boundary sector (q P, 0) the kernel of Sigma is exactly Z omega
    let pp = e2s(elem_p(n))?;
    let mut seen = 0;
    for qv in 1..=64i64 {
        let mut x = StructureElement::zero(&p);
        x.rho = pp.scale_int(qv);
        if !x.validate() {
            continue;
        }
        seen += 1;
        let killed = e2s(suspend(&x))?.new_t4_values().contains(&0);
        ensure(killed == (qv % 16 == 0), || format!("Sigma({qv} P) killed = {killed}"))?;
    }
    Ok(format!("{seen} boundary multiples"))
}

fn thm2_image(ctx: &mut Ctx, n: usize, e: usize) -> Outcome {
    let p = lp(n, 2 * e, 1)?;
    let q = lp(n, 2 * e + 1, 1)?;
    let mut sources = torsion_sector(ctx, &p)?;
    sources.push(e2s(elem_nu(&p))?);
    let mut gens = Vec::new();
    for x in &sources {
        for y in e2s(suspend(x))?.candidates {
            ensure(e2s(image_test_even_target(&y))?, || format!("Sigma {x:?} has t_(4e-2) != 0"))?;
            gens.push(y.coords.to_vec());
        }
    }
    let mu = e2s(elem_mu4m2(&q))?;
    ensure(!e2s(image_test_even_target(&mu))?, || "mu_(4e-2) passes the image test".into())?;
    let span = e2s(subgroup_from_elements(&q.coord_ambient(), &gens))?.order();
    let tors = kernel_closed_form(&q).order();
    ensure(span.map(|s| 2 * s) == tors, || format!("image span {span:?}, torsion {tors:?}"))?;
    Ok(format!("image index 2 in {}", kernel_closed_form(&q)))
}

fn lemma_tau(n: usize, e: usize) -> Outcome {
    let p = lp(n, 2 * e, 1)?;
    let r = e2s(suspend(&e2s(elem_tau(&p))?))?;
    let kk = p.two_power();
    let want: Vec<u64> = if kk == 1 { vec![1] } else { vec![1 << (kk - 2), 3 << (kk - 2)] };
    ensure(r.new_t4_values() == want, || format!("candidates {:?}, expected {want:?}", r.new_t4_values()))?;
    for y in &r.candidates {
        ensure(y.rho.is_zero(), || "rho(Sigma tau) != 0".into())?;
        let c = y.params.c();
        let others = y.coords.t4[..c - 1].iter().chain(&y.coords.t4m2).all(|&t| t == 0);
        ensure(others, || format!("other coordinates nonzero: {:?}", y.coords))?;
        if p.odd_part() > 1 {
            let z = e2s(y.transfer(p.odd_part()))?;
            ensure(z.rho.is_zero() && z.coords.is_zero(), || "transfer to M does not kill Sigma tau".into())?;
        }
    }
    Ok(format!("{want:?}"))
}

fn prop_split(ctx: &mut Ctx, n: usize, e: usize) -> Outcome {
    let p = lp(n, 2 * e, 1)?;
    let q = lp(n, 2 * e + 1, 1)?;
    let nu = e2s(suspend(&e2s(elem_nu(&p))?))?;
    let want = 1u64 << p.two_power().min(2 * e as u32);
    for y in &nu.candidates {
        ensure(y.coords.order(&q) == want, || format!("|Sigma nu| = {}, expected {want}", y.coords.order(&q)))?;
    }
    let src = e2s(kernel_rho_bar(&p, ctx.cap))?.torsion.order();
    let dst = e2s(kernel_rho_bar(&q, ctx.cap))?.torsion.order();
    ensure(src.map(|s| s * want as u128 * 2) == dst, || format!("|tors| {src:?} -> {dst:?}, factor {want}*2"))?;
    e2s(torsion_basis(&q))?;
    Ok(format!("{:?} * {want} * 2 = {:?}", src, dst))
}

// ------------------------------------------------------------- torsion

fn torsion_tasks(cfg: &VerifyConfig, v: &mut Vec<Task>) {
    for n in [2usize, 4, 8, 16].into_iter().filter(|&n| cfg.n_ok(n)) {
        for e in [2usize, 3] {
            let p: Params = vec![("N", n as i64), ("e", e as i64)];
            v.push(task("torsion-minimal-exponent", Suite::Torsion, p, move |_| exponent(n, e)));
        }
    }
    for n in sweep_ns(cfg).into_iter().filter(|n| n % 2 == 0) {
        for d in sweep_ds(cfg) {
            let p: Params = vec![("N", n as i64), ("d", d as i64)];
            v.push(task("cor-torsion-basis", Suite::Torsion, p.clone(), move |_| basis_check(n, d)));
            if n <= 8 && d <= 7 {
                v.push(task("torsion-roundtrip", Suite::Torsion, p, move |ctx| roundtrip(ctx, n, d)));
            }
        }
        for e in [2usize, 3] {
            let p: Params = vec![("N", n as i64), ("e", e as i64)];
            v.push(task("bl-composite", Suite::Torsion, p, move |_| bl(n, e)));
        }
    }
}

fn exponent(n: usize, e: usize) -> Outcome {
    let p = lp(n, 2 * e, 1)?;
    let l = e2s(minimal_exponent(&p))?;
    let want = 4 - (p.two_power() as i32).min(2 * e as i32);
    ensure(l == want, || format!("minimal exponent {l}, expected {want}"))?;
    Ok(format!("l = {l}"))
}

fn basis_check(n: usize, d: usize) -> Outcome {
    let p = lp(n, d, 1)?;
    let b = e2s(torsion_basis(&p))?;
    ensure(b.orders() == expected_orders(&p), || format!("orders {:?}", b.orders()))?;
    Ok(format!("orders {:?}, {} logged choices", b.orders(), b.choice_log.len()))
}

fn roundtrip(ctx: &mut Ctx, n: usize, d: usize) -> Outcome {
    let p = lp(n, d, 1)?;
    let b = e2s(torsion_basis(&p))?;
    let members = torsion_sector(ctx, &p)?;
    for x in &members {
        let r = e2s(b.torsion_coordinates(x))?;
        let back = e2s(b.combine(&r.iter().map(|&v| v as i64).collect::<Vec<_>>()))?;
        ensure(&back == x, || format!("{:?} -> {r:?} -> {:?}", x.coords, back.coords))?;
    }
    for (j, g) in b.elements().enumerate() {
        let r = e2s(b.torsion_coordinates(g))?;
        ensure(r.iter().enumerate().all(|(i, &v)| v == (i == j) as u64), || format!("generator {j} -> {r:?}"))?;
    }
    Ok(format!("{} elements", members.len()))
}

fn bl(n: usize, e: usize) -> Outcome {
    let nu = e2s(elem_nu(&lp(n, 2 * e, 1)?))?;
    let v = e2s(browder_livesay_composite(&nu, e))?;
    ensure(v.is_one(), || format!("composite on nu_{e} is {v}"))?;
    let zero = StructureElement::zero(&lp(n, 2 * e, 1)?);
    ensure(e2s(browder_livesay_composite(&zero, e))?.is_zero(), || "composite on 0 is nonzero".into())?;
    Ok("1 on nu".into())
}
