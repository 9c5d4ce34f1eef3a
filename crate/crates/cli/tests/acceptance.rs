//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isochk::bipoly::BiPoly;
use isochk::criteria::{combined_report, critical_points, multiplicity_check, normalize, parity_flag, period_via_normal_form, AnalysisOptions, OverallBasis, OverallVerdict, ParityFlag};
use isochk::flow::{default_h_set, period, sample_periods, FlowOptions, NumericVerdict};
use isochk::gauss::GaussianRational;
use isochk::infinity::{analyze_infinity, newton_polygon, FlowClass, DEFAULT_ORDER};
use isochk::jacobian::{intersection_criterion, CriterionStatus, PolyPair};
use isochk::parser::{format_poly, parse_poly};
use isochk::Field;

type Outcome = Result<String, String>;

fn p(s: &str) -> BiPoly {
    parse_poly(s).unwrap()
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t0 = Instant::now();
    let out = f()?;
    let dt = t0.elapsed();
    check(dt < limit, format!("took {dt:.2?}, limit {limit:?}"))?;
    Ok(format!("{out}; {dt:.2?}"))
}

fn linear_center() -> Outcome {
    timed(Duration::from_secs(1), || {
        let h = p("1/2*x^2 + 1/2*y^2");
        let hs = default_h_set(8, 1e-3, 1e-1, &[0.0, 60.0]);
        let set = sample_periods(&h, &hs, &FlowOptions::default(), 1e-6);
        let mut worst: f64 = 0.0;
        for e in &set.entries {
            let s = e.sample.as_ref().ok_or_else(|| format!("h = {} failed: {:?}", e.h, e.error))?;
            worst = worst.max((s.t - TAU).norm());
        }
        check(worst <= 1e-9, format!("max |T − 2π| = {worst:e}"))?;
        Ok(format!("16 samples, max |T − 2π| = {worst:.1e}"))
    })
}

fn shear_isochrone() -> Outcome {
    timed(Duration::from_secs(5), || {
        let pair = PolyPair::new(p("x"), p("y + x^2")).map_err(|e| e.to_string())?;
        let h = pair.induced_hamiltonian();
        check(h == p("1/2*x^2 + 1/2*(y + x^2)^2"), "induced Hamiltonian")?;
        let hs = default_h_set(8, 1e-3, 1e-1, &[0.0, 60.0]);
        let set = sample_periods(&h, &hs, &FlowOptions::default(), 1e-6);
        check(set.verdict == NumericVerdict::NumericallyIsochronous, format!("verdict {:?}", set.verdict))?;
        let dev = set.max_deviation.unwrap();
        check(dev < 1e-6, format!("deviation {dev:e}"))?;
        let m = multiplicity_check(&h).map_err(|e| e.to_string())?;
        check(!m.fails() && m.max_multiplicity == 4, m.summary())?;
        let (status, zeros) = intersection_criterion(&pair).map_err(|e| e.to_string())?;
        check(zeros.points.len() == 1, format!("{} common zeros", zeros.points.len()))?;
        check(matches!(status, CriterionStatus::Met), format!("{status:?}"))?;
        Ok(format!("deviation {dev:.1e}, max multiplicity 4 ≥ 2, one common zero, criterion met"))
    })
}

fn cubic() -> Outcome {
    let h = p("1/2*x^2 + 1/2*y^2 + x^3");
    let hs = default_h_set(8, 1e-2, 5e-2, &[0.0, 60.0]);
    let set = sample_periods(&h, &hs, &FlowOptions::default(), 1e-6);
    let dev = set.max_deviation.ok_or("fewer than two samples")?;
    check(dev > 1e-4, format!("spread {dev:e}"))?;
    check(set.verdict == NumericVerdict::NumericallyNonIsochronous, format!("{:?}", set.verdict))?;
    let pts = critical_points(&h).map_err(|e| e.to_string())?;
    let exact: Vec<_> = pts.iter().map(|c| (c.exact.clone().map(|[a, b]| (a.0, b.0)), c.on_l0)).collect();
    let third = GaussianRational::from_ratio(-1, 3);
    let zero = GaussianRational::zero();
    check(
        exact == vec![(Some((third, zero.clone())), false), (Some((zero.clone(), zero)), true)],
        format!("census {exact:?}"),
    )?;
    let v = pts[0].value_exact.clone().ok_or("critical value not exact")?.0;
    check(v == GaussianRational::from_ratio(1, 54), format!("H(−1/3, 0) = {v}"))?;
    check(parity_flag(&h) == ParityFlag::Applies, "parity flag")?;
    let ok = set.samples().count();
    Ok(format!("spread {dev:.3} over {ok}/16 samples, census exact, H(−1/3,0) = 1/54, parity applies"))
}

fn quartic_fails() -> Outcome {
    let h = p("1/2*x^2 + 1/2*y^2 + x^4 + y^4");
    let opts = AnalysisOptions { samples: 0, escape_starts: 0, ..AnalysisOptions::default() };
    let t0 = Instant::now();
    let m = multiplicity_check(&h).map_err(|e| e.to_string())?;
    let dt_check = t0.elapsed();
    check(m.fails() && m.max_multiplicity == 1 && m.bound == "2", m.summary())?;
    check(dt_check < Duration::from_millis(100), format!("check took {dt_check:?}"))?;
    let r = combined_report(&h, &opts);
    check(r.numeric.is_none(), "numeric stage ran")?;
    check(
        r.overall.verdict == OverallVerdict::NotIsochronous && r.overall.basis == OverallBasis::ExactNecessaryCondition,
        format!("{:?}", r.overall),
    )?;
    Ok(format!("{}; {dt_check:.2?}", m.summary()))
}

fn puiseux_exact() -> Outcome {
    let h = p("1/2*x^2 + 1/2*y^2 + x^3");
    let a = analyze_infinity(&h, DEFAULT_ORDER).map_err(|e| e.to_string())?;
    check(a.points.len() == 1, "one point at infinity")?;
    let pt = &a.points[0].point;
    let chart = pt.chart.as_ref().ok_or("no chart")?;
    let np = newton_polygon(&chart.poly);
    check(np.vertices == vec![(0, 3), (1, 0)], format!("vertices {:?}", np.vertices))?;
    let e = &np.edges[0];
    check(np.edges.len() == 1 && (e.p, e.q, e.n) == (3, 1, 3), format!("edges {:?}", np.edges))?;
    check(pt.branches.len() == 1, "one branch")?;
    let b = &pt.branches[0];
    check((b.p, b.q) == (3, 1), format!("(p, q) = ({}, {})", b.p, b.q))?;
    let c0p = b.c0_pow_p().map_err(|e| e.to_string())?.as_constant();
    check(c0p == Some(GaussianRational::from_ratio(-1, 2)), format!("c0^3 = {c0p:?}"))?;
    check(b.order() >= 16, "order")?;
    let f = chart.poly_alg();
    let res = b.residual(&f, 16);
    check(res.len() == 17 && res.iter().all(|c| c.is_zero()), "nonzero residual")?;
    Ok("hull (0,3)-(1,0), normal (3,1), N = 3, c0^3 = -1/2, residual 0 through s^16".into())
}

struct Suite {
    hamiltonians: Vec<BiPoly>,
    /// Induced by triangular maps `(x, y + p(x))`; these have poles at infinity.
    triangular: Vec<BiPoly>,
}

fn suite() -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let hamiltonians = (0..200).map(|_| common::split_top_hamiltonian(&mut rng, 5)).collect();
    let triangular = (0..40)
        .map(|_| {
            let mut q = BiPoly::y();
            q.add_term((2, 0), common::small_gauss(&mut rng, 2) + GaussianRational::from(3));
            if rng.gen_bool(0.5) {
                q.add_term((3, 0), common::small_gauss(&mut rng, 2));
            }
            PolyPair::new(BiPoly::x(), q).unwrap().induced_hamiltonian()
        })
        .collect();
    Suite { hamiltonians, triangular }
}

fn pole_property(s: &Suite) -> Outcome {
    timed(Duration::from_secs(300), || {
        let (mut branches, mut poles, mut skipped) = (0, 0, 0);
        for h in s.hamiltonians.iter().chain(&s.triangular) {
            let a = analyze_infinity(h, DEFAULT_ORDER).map_err(|e| format!("{}: {e}", format_poly(h)))?;
            let n1 = h.total_degree() as usize;
            for pa in &a.points {
                if pa.error.is_some() {
                    skipped += 1;
                    continue;
                }
                for d in &pa.dynamics {
                    branches += 1;
                    if d.omega_order <= -1 {
                        poles += 1;
                        check(
                            2 * pa.point.multiplicity >= n1,
                            format!("{}: pole at point {} of multiplicity {} < (n+1)/2", format_poly(h), pa.point.index, pa.point.multiplicity),
                        )?;
                    }
                }
            }
        }
        check(poles > 0, "no pole branches found")?;
        Ok(format!("200 split-top + 40 triangular Hamiltonians, {branches} branch conjugates, {poles} poles, 0 violations, {skipped} points unanalyzed"))
    })
}

fn cross_engine(s: &Suite) -> Outcome {
    let hs = default_h_set(4, 1e-3, 1e-2, &[0.0, 60.0]);
    let opts = FlowOptions::default();
    let (mut failing, mut iso) = (0, 0);
    for h in s.hamiltonians.iter().chain(&s.triangular) {
        let m = multiplicity_check(h).map_err(|e| e.to_string())?;
        let set = sample_periods(h, &hs, &opts, 1e-6);
        if set.verdict == NumericVerdict::NumericallyIsochronous {
            iso += 1;
        }
        if m.fails() {
            failing += 1;
            check(set.verdict != NumericVerdict::NumericallyIsochronous, format!("contradiction on {}", format_poly(h)))?;
        }
    }
    Ok(format!("{failing} inputs fail the multiplicity condition, none numerically isochronous ({iso} of 240 isochronous overall)"))
}

fn rational_in<R: Rng>(rng: &mut R) -> GaussianRational {
    GaussianRational::from_ratio(rng.gen_range(-2..=2), rng.gen_range(1..=4))
}

fn invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let opts = FlowOptions::default();
    let levels = [Complex64::new(2e-3, 0.0), Complex64::from_polar(2e-3, 1.0)];
    let (mut done, mut worst) = (0, 0.0f64);
    let mut attempts = 0;
    while done < 20 {
        attempts += 1;
        if attempts > 200 {
            return Err(format!("only {done} usable instances"));
        }
        let h = common::random_morse(&mut rng, 4);
        let Ok(base) = levels.iter().map(|&l| period(&h, l, &opts).map(|s| s.t)).collect::<Result<Vec<_>, _>>() else { continue };
        // Determinant-one change: a product of two shears.
        let (a, b) = (rational_in(&mut rng), rational_in(&mut rng));
        let one = GaussianRational::one();
        let s = [[one.clone() + a.clone() * b.clone(), a], [b, one]];
        let moved = h.linear_substitute(&s[0][0], &s[0][1], &s[1][0], &s[1][1]);
        let moved = normalize(&moved).map_err(|e| format!("{}: {e}", format_poly(&h)))?;
        for (l, t) in levels.iter().zip(&base) {
            let tm = period_via_normal_form(&moved, *l, &opts).map_err(|e| format!("{} after change: {e}", format_poly(&h)))?.t;
            worst = worst.max((tm - t).norm());
            for c in [GaussianRational::from(2), GaussianRational::from_ratio(1, 3)] {
                let cf = c.to_complex();
                let scaled = normalize(&h.scale(&c)).map_err(|e| e.to_string())?;
                let tc = period_via_normal_form(&scaled, l * cf, &opts).map_err(|e| format!("{} scaled: {e}", format_poly(&h)))?.t;
                worst = worst.max((tc * cf - t).norm());
            }
        }
        done += 1;
    }
    check(worst <= 1e-7, format!("max deviation {worst:e}"))?;
    Ok(format!("20 instances ({} skipped at base levels), 2 levels, shears and c ∈ {{2, 1/3}}: max deviation {worst:.1e}", attempts - done))
}

fn linear_diagnostic() -> Outcome {
    let h = p("1/2*x^2 + 1/2*y^2");
    let a = analyze_infinity(&h, DEFAULT_ORDER).map_err(|e| e.to_string())?;
    check(a.points.len() == 2, "two points")?;
    let mut lambdas = Vec::new();
    for pa in &a.points {
        check(pa.point.branches.len() == 1, "one branch per point")?;
        let b = &pa.point.branches[0];
        check(b.c0().h_degree() == Some(1), format!("deg_h c0 = {:?}", b.c0().h_degree()))?;
        // Independent check of c0 = ∓ih by substitution: c0/h is ±i.
        let c0 = b.c0().eval_at(Complex64::new(1.0, 0.0), &Default::default()).ok_or("c0 not evaluable")?;
        check((c0.norm() - 1.0).abs() < 1e-15 && c0.re.abs() < 1e-15, format!("c0(1) = {c0}"))?;
        for d in &pa.dynamics {
            check(d.h_independent, "ds/dt depends on h")?;
            check(d.k == 1 && d.omega_order == -1 && d.class == FlowClass::Center, format!("{d:?}"))?;
            lambdas.push(d.lambda);
        }
    }
    lambdas.sort_by(|a, b| a.im.total_cmp(&b.im));
    check(
        lambdas.len() == 2 && (lambdas[0] + Complex64::i()).norm() < 1e-15 && (lambdas[1] - Complex64::i()).norm() < 1e-15,
        format!("lambdas {lambdas:?}"),
    )?;
    Ok("c0 = ∓ih (degree 1), ds/dt h-free, k = 1, λ = ±i, center, omega order -1".into())
}

fn determinism() -> Outcome {
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_isochk"))
            .args(["analyze", "-H", "1/2*x^2+1/2*(y+x^2)^2", "--format", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    check(a.status.success() && b.status.success(), "analyze failed")?;
    check(a.stdout == b.stdout, "outputs differ")?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let s = suite();
    let results: Vec<(&str, Outcome)> = vec![
        ("linear center periods", linear_center()),
        ("shear isochrone", shear_isochrone()),
        ("non-isochronous cubic", cubic()),
        ("multiplicity condition on the quartic", quartic_fails()),
        ("Puiseux exactness", puiseux_exact()),
        ("pole property on random suite", pole_property(&s)),
        ("linearity diagnostic on the linear center", linear_diagnostic()),
        ("cross-engine consistency", cross_engine(&s)),
        ("invariance suite", invariance()),
        ("determinism", determinism()),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
