//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use reslab_core::asymptotics::{
    default_tolerance, degree_test_binomial_side, degree_test_poly, generic_lines_alpha,
    generic_lines_hilbert, largest_root_g, line_family, line_power_hilbert_p3, point_power_hilbert,
};
use reslab_core::incidence::Incidence;
use reslab_core::{
    alpha_symbolic, asymptotic_bound, containment_matrix, gamma_exact, gamma_window, knapsack_derive, oracle,
    resurgence_window, Arrangement, ContainmentMatrix, FactLedger, Fraction, Limits, MonomialIdeal,
};
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (&'static str, Box<dyn FnOnce(&mut StdRng) -> Check>);

fn limits() -> Limits {
    Limits::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: reslab_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let mut argv = vec!["reslab", "--no-cache"];
    argv.extend_from_slice(args);
    let out = reslab_cli::run(argv);
    if out.code != 0 {
        return Err(format!("{args:?} exited {}: {}", out.code, out.stderr.trim()));
    }
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn frac_field(v: &Value, key: &str) -> Result<Fraction, String> {
    v[key]
        .as_str()
        .ok_or_else(|| format!("missing {key}"))?
        .parse()
        .map_err(|_| format!("bad rational in {key}"))
}

fn pairs_n(s: usize) -> usize {
    // N = 2s - 1, except one line, which needs N >= 2.
    (2 * s - 1).max(2)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    for s in 1..=6usize {
        let (s_txt, n_txt) = (s.to_string(), pairs_n(s).to_string());
        let arr = ["--family", "pairs", "--s", s_txt.as_str(), "--N", n_txt.as_str()];
        let mut args = vec!["resurgence"];
        args.extend_from_slice(&arr);
        let v = cli_json(&args)?;
        let expected = Fraction::one().max(Fraction::new(2 * (s as i64 - 1), s as i64));
        let (lo, hi) = (frac_field(&v, "lo")?, frac_field(&v, "hi")?);
        ensure(lo == expected && hi == expected, || {
            format!("s={s}: window [{lo}, {hi}], expected {expected}")
        })?;
        let mut args = vec!["gamma"];
        args.extend_from_slice(&arr);
        let gamma = frac_field(&cli_json(&args)?, "value")?;
        let want = if s == 1 {
            Fraction::one()
        } else {
            Fraction::new(s as i64, s as i64 - 1)
        };
        ensure(gamma == want, || format!("s={s}: gamma {gamma}, expected {want}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("s=1..6 exact, {:.2}s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Check {
    let mut cross = 0;
    for s in 2..=5usize {
        let a = core(Arrangement::pair_lines(s, 2 * s - 1))?;
        let inc = Incidence::of(&a);
        for lambda in [2u64, 4, 6] {
            let m = lambda * (s as u64 - 1);
            let ilp = core(alpha_symbolic(&a, m))?;
            let enumerated = core(inc.alpha_by_enumeration(m))?;
            let want = lambda * s as u64;
            ensure(ilp == want && enumerated == want, || {
                format!("s={s} m={m}: ilp {ilp}, enumeration {enumerated}, expected {want}")
            })?;
            if s <= 3 && m <= 8 {
                let direct = core(core(a.symbolic_power(m, &limits()))?.alpha())?;
                ensure(direct == want, || {
                    format!("s={s} m={m}: intersection alpha {direct}")
                })?;
                cross += 1;
            }
        }
    }
    Ok(format!("12 cases agree, {cross} also via intersection"))
}

fn phi_matrices() -> Result<Vec<(Arrangement, ContainmentMatrix)>, String> {
    let mut out = Vec::new();
    for s in [2usize, 3] {
        for a in [
            core(Arrangement::pair_lines(s, 2 * s - 1))?,
            core(Arrangement::coordinate_points(s))?,
        ] {
            let m = core(containment_matrix(&a, 5, 5, &limits()))?;
            out.push((a, m));
        }
    }
    Ok(out)
}

fn criterion_3() -> Check {
    let mats = phi_matrices()?;
    for pair in mats.chunks(2) {
        let (lines, points) = (&pair[0], &pair[1]);
        ensure(lines.1.statuses() == points.1.statuses(), || {
            format!("matrices differ for s={}", lines.0.num_components())
        })?;
    }
    Ok("s=2,3 matrices equal on m,r <= 5".into())
}

fn criterion_4() -> Check {
    let skew = core(Arrangement::pair_lines(2, 3))?;
    for k in 0..=2 {
        let a = skew.embed(k);
        let base = core(a.ideal(&limits()))?;
        for m in 1..=6 {
            let sym = core(a.symbolic_power(m, &limits()))?;
            let pw = core(base.power(m, &limits()))?;
            ensure(sym == pw, || {
                format!("P^{} m={m}: symbolic and ordinary powers differ", 3 + k)
            })?;
        }
    }
    Ok("P^3, P^4, P^5 with m <= 6".into())
}

fn criterion_5(rng: &mut StdRng) -> Check {
    for case in 0..200 {
        let n = rng.random_range(1..=8usize);
        let blocks_wanted = rng.random_range(1..=n);
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); blocks_wanted];
        for j in 0..n {
            blocks[rng.random_range(0..blocks_wanted)].push(j);
        }
        blocks.retain(|b| !b.is_empty());
        let powers = blocks
            .iter()
            .map(|b| MonomialIdeal::variable_power(n, b, rng.random_range(1..=4)))
            .collect::<reslab_core::Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
        let mut product = MonomialIdeal::unit(n);
        for p in &powers {
            product = core(product.product(p, &limits()))?;
        }
        let inter = core(MonomialIdeal::intersect_all(n, powers, &limits()))?;
        ensure(product == inter, || {
            format!("case {case}: blocks {blocks:?} differ")
        })?;
    }
    Ok("200 instances, 0 failures".into())
}

fn random_arrangement(rng: &mut StdRng) -> Arrangement {
    loop {
        let n = rng.random_range(2..=7usize);
        let s = rng.random_range(1..=3usize);
        let primes: Vec<Vec<usize>> = (0..s)
            .map(|_| {
                let size = rng.random_range(1..n);
                let mut p = BTreeSet::new();
                while p.len() < size {
                    p.insert(rng.random_range(0..n));
                }
                p.into_iter().collect()
            })
            .collect();
        if let Ok(a) = Arrangement::new(n, primes, None) {
            return a;
        }
    }
}

fn criterion_6(rng: &mut StdRng) -> Check {
    let mut generators = 0;
    for case in 0..100 {
        let a = random_arrangement(rng);
        let m = rng.random_range(1..=4);
        let direct = core(a.symbolic_power(m, &limits()))?;
        let brute = core(oracle::minimal_generators(&a, m))?;
        ensure(direct.generators() == brute.as_slice(), || {
            format!("case {case}: {:?} m={m} disagrees with oracle", a.primes())
        })?;
        generators += brute.len();
    }
    Ok(format!("100 arrangements, {generators} generators matched"))
}

fn criterion_7() -> Check {
    let mut arrangements = vec![core(Arrangement::pair_lines(3, 5))?];
    for n in 3..=5 {
        arrangements.push(core(Arrangement::coordinate_points(n))?);
    }
    let bound = Fraction::new(7, 10);
    let mut widths = Vec::new();
    for a in &arrangements {
        let cert = core(gamma_exact(a))?;
        core(cert.validate(a))?;
        for big_m in 1..=8 {
            let w = core(gamma_window(a, big_m))?;
            ensure(w.contains(&cert.value), || {
                format!(
                    "{:?} M={big_m}: [{}, {}] misses {}",
                    a.primes(),
                    w.lo,
                    w.hi,
                    cert.value
                )
            })?;
            if big_m == 8 {
                ensure(w.width() <= bound, || {
                    format!("{:?}: width {} at M=8", a.primes(), w.width())
                })?;
                widths.push(w.width().to_string());
            }
        }
    }
    Ok(format!("widths at M=8: {}", widths.join(", ")))
}

fn criterion_8() -> Check {
    for ((c, b), want) in [((10, 8), (5, 4)), ((24, 21), (8, 7)), ((102, 72), (17, 12))] {
        let got = core(asymptotic_bound(&core(FactLedger::new([(c, b)], false))?))?;
        ensure(got == Fraction::new(want.0, want.1), || {
            format!("({c},{b}) gave {got}")
        })?;
    }
    let ledger = core(FactLedger::new([(9, 8), (3, 2), (6, 5)], true))?;
    for m in 1..=500u64 {
        let r = core(knapsack_derive(&ledger, m))?;
        // m / r >= 9/8, with r = 0 meaning nothing was derived.
        ensure(9 * r <= 8 * m, || format!("m={m}: derived r={r} beats 9/8"))?;
        if m % 9 == 0 {
            ensure(9 * r == 8 * m, || {
                format!("m={m}: derived r={r}, expected {}", 8 * m / 9)
            })?;
        }
    }
    Ok("bounds 5/4, 8/7, 17/12; ratio >= 9/8 for m <= 500".into())
}

fn criterion_9() -> Check {
    for m in 1..=6 {
        for t in 0..=6 {
            let f = core(line_power_hilbert_p3(m, t))?;
            let brute = oracle::count_degree_at_least(4, &[2, 3], m, t);
            ensure(f == brute, || format!("line m={m} t={t}: {f} vs {brute}"))?;
            for big_n in 1..=4u64 {
                let vars: Vec<usize> = (1..=big_n as usize).collect();
                let f = core(point_power_hilbert(big_n, m, t))?;
                let brute = oracle::count_degree_at_least(big_n as usize + 1, &vars, m, t);
                ensure(f == brute, || {
                    format!("point N={big_n} m={m} t={t}: {f} vs {brute}")
                })?;
            }
        }
    }
    let h = core(generic_lines_hilbert(3, 3, 2))?;
    ensure(h == 1, || format!("generic_lines_hilbert(3,3,2) = {h}"))?;
    let alpha = core(generic_lines_alpha(3, 4))?;
    ensure(alpha == 3, || format!("alpha for 4 general lines = {alpha}"))?;
    let fam = core(line_family(3, 1))?;
    ensure(fam.s == 2, || format!("line_family(3,1).s = {}", fam.s))?;
    let a = core(Arrangement::pair_lines(fam.s as usize, fam.big_n as usize))?;
    let rho_a = Fraction::from(fam.t + 1) / core(gamma_exact(&a))?.value;
    let window = core(resurgence_window(&a, &limits()))?.window;
    ensure(
        rho_a == Fraction::one() && window.lo == rho_a && window.hi == rho_a,
        || format!("family rho_a {rho_a}, window [{}, {}]", window.lo, window.hi),
    )?;
    Ok("Hilbert counts match for m,t <= 6; family rho_a = 1".into())
}

fn criterion_10(rng: &mut StdRng) -> Check {
    let tol = default_tolerance();
    let three_quarters = Fraction::new(3, 4);
    let mut roots = Vec::new();
    for s in 1..=100u64 {
        let g = core(largest_root_g(s, &tol))?;
        let three_s = Fraction::from(3 * s);
        ensure(g.g_hi.pow(2) < three_s, || format!("s={s}: g_hi^2 >= 3s"))?;
        ensure((&g.g_lo + &three_quarters).pow(2) > three_s, || {
            format!("s={s}: (g_lo+3/4)^2 <= 3s")
        })?;
        ensure(&g.g_hi - &g.g_lo <= tol, || format!("s={s}: bracket too wide"))?;
        roots.push(g);
    }
    for case in 0..500 {
        let s = rng.random_range(1..=100);
        let m = rng.random_range(1..=20);
        let t = rng.random_range(0..=60);
        let i = rng.random_range(1..=10);
        let poly = degree_test_poly(s, m, &Fraction::new(t as i64, m as i64), i);
        let binom = degree_test_binomial_side(s, m, t, i);
        ensure(poly == binom, || {
            format!("case {case}: (s,m,t,i)=({s},{m},{t},{i}): {poly} vs {binom}")
        })?;
    }
    let mut negatives = 0;
    for g in roots.iter().filter(|g| g.s >= 17) {
        for _ in 0..20 {
            // tau = 1 + u (g_lo - 1), u in [0, 1).
            let u = Fraction::new(rng.random_range(0..1000), 1000);
            let tau = Fraction::one() + u * (&g.g_lo - Fraction::one());
            let m = rng.random_range(1..=20);
            let v = degree_test_poly(g.s, m, &tau, 1);
            ensure(v.is_negative(), || {
                format!("s={} m={m} tau={tau}: value {v} not negative", g.s)
            })?;
            negatives += 1;
        }
    }
    Ok(format!(
        "100 brackets, 500 identities, {negatives} negative samples"
    ))
}

fn criterion_11() -> Check {
    let mut mats = phi_matrices()?;
    for a in [
        core(Arrangement::pair_lines(4, 7))?,
        core(Arrangement::coordinate_points(4))?,
    ] {
        let m = core(containment_matrix(&a, 6, 6, &limits()))?;
        mats.push((a, m));
    }
    for (a, m) in &mats {
        m.check_order_laws(a.properties().h as u64)
            .map_err(|e| format!("{:?}: {e}", a.primes()))?;
    }
    Ok(format!("{} matrices obey the order laws", mats.len()))
}

fn main() {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let criteria: Vec<Criterion> = vec![
        ("pairs resurgence and gamma", Box::new(|_| criterion_1())),
        (
            "alpha at m = lambda(s-1) by ILP and enumeration",
            Box::new(|_| criterion_2()),
        ),
        (
            "phi-equivalence of containment matrices",
            Box::new(|_| criterion_3()),
        ),
        (
            "embedded skew lines: symbolic = ordinary",
            Box::new(|_| criterion_4()),
        ),
        ("product of powers = intersection", Box::new(criterion_5)),
        ("symbolic power vs brute-force oracle", Box::new(criterion_6)),
        (
            "gamma window sandwich and certificate",
            Box::new(|_| criterion_7()),
        ),
        (
            "containment calculus bounds and knapsack",
            Box::new(|_| criterion_8()),
        ),
        ("Hilbert formulas and line family", Box::new(|_| criterion_9())),
        ("cubic root brackets and proof polynomial", Box::new(criterion_10)),
        ("containment order laws", Box::new(|_| criterion_11())),
    ];
    let mut failures = 0;
    for (idx, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check(&mut rng);
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", idx + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", idx + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
