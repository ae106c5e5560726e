//! Acceptance gate. Runs every criterion at its pinned tolerance, prints one
//! PASS/FAIL line each, and exits non-zero if any criterion fails.

use std::f64::consts::{E, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num::{BigInt, BigRational, Integer};
use symlab::eigen::{DEFAULT_MAX_SWEEPS, DEFAULT_TOL};
use symlab::matrix::row_means;
use symlab::specfun::{
    duplication_residual, euler_reflection_residual, gamma_integral_closed_partial,
    gamma_integral_via_matrix, gamma_row_log_product, gamma_row_log_product_closed, ln_sqrt_two_pi,
    sine_product_even_residual, sine_product_odd_residual,
};
use symlab::{
    coprime_density, farey_sequence, is_hadamard, jacobi_eigenvalues, materialize, norm_power,
    oscillation_bound, phi_summatory, spectral_sum_sq, sylvester, weighted_cesaro, weyl_average,
    CesaroInput, Fraction, Integrand, SampledMatrixSpec, Verdict,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn normalized_norm(f: Integrand, n: u64, m: f64) -> f64 {
    let s = SampledMatrixSpec::new(f, n).unwrap();
    norm_power(&s, m).unwrap() / (n * n) as f64
}

fn ac1_norm_limit_m1() -> Outcome {
    const BUDGET: Duration = Duration::from_secs(10);
    let start = Instant::now();
    let orders: Vec<u64> = (6..=12).map(|p| 1u64 << p).collect();
    let errs: Vec<f64> = orders
        .iter()
        .map(|&n| (normalized_norm(Integrand::exp(), n, 1.0) - (E - 1.0)).abs())
        .collect();
    let elapsed = start.elapsed();
    for (&n, &err) in orders.iter().zip(&errs) {
        check(err <= 5.0 / n as f64, || {
            format!("n={n}: error {err:e} > 5/n")
        })?;
    }
    for (i, w) in errs.windows(2).enumerate() {
        let n = orders[i];
        if n >= 256 {
            check(w[1] <= 0.75 * w[0], || {
                format!("error ratio at n={n}->{}: {:.4} > 0.75", 2 * n, w[1] / w[0])
            })?;
        }
    }
    check(elapsed <= BUDGET, || {
        format!("runtime {elapsed:?} > {BUDGET:?}")
    })?;
    Ok(format!(
        "err(64)={:.3e} err(4096)={:.3e} runtime={:.2?}",
        errs[0],
        errs[errs.len() - 1],
        elapsed
    ))
}

fn ac2_norm_limit_m2_m3() -> Outcome {
    let l2 = (E * E - 1.0) / 2.0;
    let l3 = (E.powi(3) - 1.0) / 3.0;
    let v2 = normalized_norm(Integrand::exp(), 4096, 2.0);
    let v3 = normalized_norm(Integrand::exp(), 4096, 3.0);
    check((v2 - l2).abs() <= 0.02, || format!("m=2: {v2} vs {l2}"))?;
    check((v3 - l3).abs() <= 0.02, || format!("m=3: {v3} vs {l3}"))?;
    Ok(format!(
        "|m=2 err|={:.3e} |m=3 err|={:.3e}",
        (v2 - l2).abs(),
        (v3 - l3).abs()
    ))
}

fn ac3_cesaro() -> Outcome {
    let terms = row_means(&Integrand::exp(), 500).map_err(|e| e.to_string())?;
    let input = CesaroInput::new(terms, E - 1.0).map_err(|e| e.to_string())?;
    let v = weighted_cesaro(&input).map_err(|e| e.to_string())?;
    let err = (v - (E - 1.0) / 2.0).abs();
    check(err <= 0.01, || format!("{v} is {err:e} from (e-1)/2"))?;
    Ok(format!("value={v:.6} err={err:.3e}"))
}

fn ac4_gamma_integral() -> Outcome {
    let mut worst = 0.0f64;
    for n in [2u64, 16, 128, 512] {
        let a = gamma_integral_via_matrix(n).map_err(|e| e.to_string())?;
        let b = gamma_integral_closed_partial(n);
        let rel = ((a - b) / b).abs();
        check(rel <= 1e-8, || {
            format!("n={n}: matrix {a} vs closed {b} (rel {rel:e})")
        })?;
        worst = worst.max(rel);
    }
    let c = gamma_integral_closed_partial(4096);
    let err = (c - ln_sqrt_two_pi()).abs();
    check(err <= 0.01, || {
        format!("closed(4096)={c} is {err:e} from ln sqrt(2pi)")
    })?;
    Ok(format!(
        "max rel gap={worst:.3e} closed(4096) err={err:.3e}"
    ))
}

fn ac5_identity_suite() -> Outcome {
    let mut worst_reflection = 0.0f64;
    for i in 1..=19 {
        let s = i as f64 * 0.05;
        let r = euler_reflection_residual(s)
            .map_err(|e| e.to_string())?
            .abs();
        check(r <= 1e-12, || format!("reflection s={s}: {r:e}"))?;
        worst_reflection = worst_reflection.max(r);
    }
    let mut worst_dup = 0.0f64;
    for z in [0.5, 1.0, 3.7]
        .into_iter()
        .chain((1..=200).map(|i| i as f64 * 0.05))
    {
        let r = duplication_residual(z).map_err(|e| e.to_string())?.abs();
        check(r <= 1e-12, || format!("duplication z={z}: {r:e}"))?;
        worst_dup = worst_dup.max(r);
    }
    for k in 2..=512u64 {
        let got = gamma_row_log_product(k).map_err(|e| e.to_string())?;
        let d = (got - gamma_row_log_product_closed(k)).abs();
        check(d <= 1e-10 * k as f64, || {
            format!("row product k={k}: {d:e}")
        })?;
    }
    for n in 1..=200u64 {
        let odd = sine_product_odd_residual(n).abs();
        let even = sine_product_even_residual(n).abs();
        check(odd <= 1e-10 * (2 * n + 1) as f64, || {
            format!("odd sine n={n}: {odd:e}")
        })?;
        check(even <= 1e-10 * (2 * n) as f64, || {
            format!("even sine n={n}: {even:e}")
        })?;
    }
    Ok(format!(
        "max reflection={worst_reflection:.1e} max duplication={worst_dup:.1e}"
    ))
}

fn farey_brute_force(x: u64) -> Vec<Fraction> {
    let mut v: Vec<Fraction> = (1..=x)
        .flat_map(|c| (1..=c).map(move |b| (b, c)))
        .filter(|&(b, c)| b.gcd(&c) == 1)
        .map(|(b, c)| Fraction::new(b, c))
        .collect();
    v.sort();
    v
}

fn ac6_farey() -> Outcome {
    for x in 1..=100 {
        let seq = farey_sequence(x).map_err(|e| e.to_string())?;
        check(seq.fractions() == farey_brute_force(x).as_slice(), || {
            format!("x={x}: sequence differs from enumeration")
        })?;
    }
    for x in 1..=300 {
        let seq = farey_sequence(x).map_err(|e| e.to_string())?;
        for w in seq.fractions().windows(2) {
            let det = w[1].num as i128 * w[0].den as i128 - w[0].num as i128 * w[1].den as i128;
            check(det == 1, || {
                format!("x={x}: {} {} determinant {det}", w[0], w[1])
            })?;
        }
    }
    let phi = phi_summatory(1000).map_err(|e| e.to_string())?;
    let ratio = phi as f64 / 1e6;
    check((ratio - 3.0 / (PI * PI)).abs() <= 0.005, || {
        format!("Phi(1000)/1e6={ratio}")
    })?;
    let density = coprime_density(1000).map_err(|e| e.to_string())?;
    check((density - 6.0 / (PI * PI)).abs() <= 0.01, || {
        format!("density={density}")
    })?;
    for x in 1..=200u64 {
        let seq = farey_sequence(x).map_err(|e| e.to_string())?;
        let mut sum = BigRational::from_integer(BigInt::from(0));
        let mut by_den = vec![0u64; x as usize + 1];
        for f in seq.iter() {
            by_den[f.den as usize] += f.num;
        }
        for (den, &num) in by_den.iter().enumerate().skip(1) {
            sum += BigRational::new(BigInt::from(num), BigInt::from(den));
        }
        let count = seq.count();
        let mean = sum / BigInt::from(count);
        let want = BigRational::new(BigInt::from(count + 1), BigInt::from(2 * count));
        check(mean == want, || format!("x={x}: mean {mean} != {want}"))?;
    }
    Ok(format!("Phi(1000)={phi} density(1000)={density:.6}"))
}

fn ac7_weyl() -> Outcome {
    let v = weyl_average(&Integrand::exp(), 400).map_err(|e| e.to_string())?;
    let err = (v - (E - 1.0)).abs();
    check(err <= 0.01, || format!("weyl(exp,400)={v} err {err:e}"))?;
    Ok(format!("value={v:.8} err={err:.3e}"))
}

fn ac8_spectral_sums() -> Outcome {
    const BUDGET: Duration = Duration::from_secs(60);
    let start = Instant::now();
    let mut normalized_256 = f64::NAN;
    for n in [2u64, 16, 64, 256] {
        let spec = SampledMatrixSpec::new(Integrand::exp(), n).unwrap();
        let dense = materialize(&spec).map_err(|e| e.to_string())?;
        let dec = jacobi_eigenvalues(&dense, DEFAULT_TOL, DEFAULT_MAX_SWEEPS)
            .map_err(|e| e.to_string())?;
        let trace = n as f64 * E;
        let rel_trace = ((dec.sum() - trace) / trace).abs();
        check(rel_trace <= 1e-8, || {
            format!("n={n}: trace rel err {rel_trace:e}")
        })?;
        let frob = norm_power(&spec, 2.0).map_err(|e| e.to_string())?;
        let rel_frob = ((dec.sum_sq() - frob) / frob).abs();
        check(rel_frob <= 1e-8, || {
            format!("n={n}: sum of squares rel err {rel_frob:e}")
        })?;
        normalized_256 = dec.sum_sq() / (n * n) as f64;
    }
    let elapsed = start.elapsed();
    let limit = (E * E - 1.0) / 2.0;
    check((normalized_256 - limit).abs() <= 0.05, || {
        format!("normalized sum of squares at 256 = {normalized_256}")
    })?;
    check(elapsed <= BUDGET, || {
        format!("runtime {elapsed:?} > {BUDGET:?}")
    })?;
    Ok(format!(
        "normalized(256)={normalized_256:.6} vs {limit:.6}, runtime={elapsed:.2?}"
    ))
}

fn ac9_hadamard() -> Outcome {
    for k in 0..=6 {
        let h = sylvester(k).map_err(|e| e.to_string())?;
        let n = h.order();
        check(is_hadamard(&h), || format!("sylvester({k}) not Hadamard"))?;
        check(spectral_sum_sq(&h) == (n * n) as u64, || {
            format!("order {n}: spectral sum")
        })?;
        if n >= 8 {
            let r = oscillation_bound(&h).map_err(|e| e.to_string())?;
            check(r.lower_bound >= 1.0 - 2.0 / n as f64, || {
                format!("order {n}: bound {} < 1 - 2/n", r.lower_bound)
            })?;
            check(r.verdict == Verdict::ExceedsHalf, || {
                format!("order {n}: verdict {}", r.verdict)
            })?;
        }
    }
    let r4 = oscillation_bound(&sylvester(2).unwrap()).map_err(|e| e.to_string())?;
    check(
        r4.lower_bound == 0.5 && r4.verdict == Verdict::Inconclusive,
        || format!("order 4: bound {} verdict {}", r4.lower_bound, r4.verdict),
    )?;
    Ok("orders 1..64 Hadamard; order 4 bound 0.5 inconclusive".to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1", "norm limit m=1, rate and runtime", ac1_norm_limit_m1),
        (
            "AC2",
            "norm limits m=2, m=3 at n=4096",
            ac2_norm_limit_m2_m3,
        ),
        ("AC3", "weighted Cesaro mean at n=500", ac3_cesaro),
        ("AC4", "Gamma integral, two routes", ac4_gamma_integral),
        ("AC5", "Gamma and sine identity suite", ac5_identity_suite),
        ("AC6", "Farey sequences and totients", ac6_farey),
        ("AC7", "Weyl average at x=400", ac7_weyl),
        ("AC8", "Jacobi spectral sums", ac8_spectral_sums),
        ("AC9", "Hadamard construction and oscillation", ac9_hadamard),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {id} {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
