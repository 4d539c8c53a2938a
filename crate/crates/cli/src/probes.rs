//! The experiment probes: the cone obstruction at the boundary point (2,1),
//! the smoothness-loss exponent of the Cauchy-type operator on the diagonal,
//! and batch sweeps over the library's equivalence and bound invariants,
//! including an empirical exponent fit for the distance-vs-defining-function
//! comparison (reported as informational only).

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use symprod_core::{
    bidisc_value, elem_sym, f_defining, integrate_circle_graded, roots_of, sym_product_distance_bound,
    symprod_contains, Circle, DomainSpec, HoloMap, Membership, SymPoint,
};

use crate::config::{LipschitzConfig, SmoothnessConfig, SweepConfig, SweepSuite};
use crate::error::{CliError, Result};
use crate::report::{fit_line, num, ProbeReport, Verdict};

fn rng_from(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn membership_label(m: Membership) -> Value {
    Value::String(
        match m {
            Membership::Inside => "inside",
            Membership::BoundaryBand => "boundary-band",
            Membership::Outside => "outside",
        }
        .to_string(),
    )
}

/// The boundary segment `l(t) = (2 - b t, 1 - a t)` through the point (2,1):
/// classified by both membership tests at each `t`. When the imaginary parts
/// of `a` and `b` differ, the segment must leave the symmetrized bidisc for
/// small `t`; that is the pass condition. For matching imaginary parts the
/// classification is reported as informational.
pub fn lipschitz_cone_probe(
    a: Complex64,
    b: Complex64,
    t_values: &[f64],
    seed: u64,
) -> Result<ProbeReport> {
    if t_values.is_empty() || t_values.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
        return Err(CliError::Config(
            "t_values must be a nonempty list inside (0, 1)".into(),
        ));
    }
    let mut report = ProbeReport::new(
        "lipschitz-cone",
        seed,
        &[
            "t",
            "s1_re",
            "s1_im",
            "s2_re",
            "s2_im",
            "bidisc_value",
            "bidisc_class",
            "root_class",
        ],
    );
    report.set_parameter("a", vec![a.re, a.im]);
    report.set_parameter("b", vec![b.re, b.im]);
    report.set_parameter("margin", 0.0);
    report.set_parameter(
        "root_cluster_tol",
        num(symprod_core::RootSolveOptions::default().cluster_tol),
    );
    report.set_parameter(
        "t_values",
        Value::Array(t_values.iter().map(|&t| num(t)).collect()),
    );

    let disc = DomainSpec::unit_disc();
    let im_gap = (a.im - b.im).abs();
    let expect_outside = im_gap > 0.0;
    let mut all_outside = true;
    for &t in t_values {
        let (row, outside) = classify_segment_point(&disc, a, b, t)?;
        all_outside &= outside;
        report.push_row(row);
    }
    report.verdict = if expect_outside {
        if all_outside {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    } else {
        Verdict::Informational
    };
    report.set_parameter("im_gap", num(im_gap));
    report.set_parameter("expect_outside", expect_outside);
    Ok(report)
}

fn classify_segment_point(
    disc: &DomainSpec,
    a: Complex64,
    b: Complex64,
    t: f64,
) -> Result<(Vec<Value>, bool)> {
    let s = SymPoint::new(vec![
        Complex64::new(2.0, 0.0) - b * t,
        Complex64::new(1.0, 0.0) - a * t,
    ])?;
    let value = bidisc_value(&s)?;
    let by_form = symprod_core::bidisc_contains(&s, 0.0)?;
    let by_roots = symprod_contains(disc, &s, 0.0)?.classification;
    let row = vec![
        num(t),
        num(s.coeffs()[0].re),
        num(s.coeffs()[0].im),
        num(s.coeffs()[1].re),
        num(s.coeffs()[1].im),
        num(value),
        membership_label(by_form),
        membership_label(by_roots),
    ];
    let outside = by_form == Membership::Outside && by_roots == Membership::Outside;
    Ok((row, outside))
}

/// Batch form of the cone probe: random `(a, b)` with an imaginary-part gap,
/// each required to classify outside at every sampled `t`.
pub fn lipschitz_cone_batch(config: &LipschitzConfig, seed: u64) -> Result<ProbeReport> {
    let random = config
        .random
        .as_ref()
        .ok_or_else(|| CliError::Config("batch mode needs the `random` section".into()))?;
    let mut report = ProbeReport::new(
        "lipschitz-cone-batch",
        seed,
        &[
            "index",
            "a_re",
            "a_im",
            "b_re",
            "b_im",
            "t",
            "s1_re",
            "s1_im",
            "s2_re",
            "s2_im",
            "bidisc_value",
            "bidisc_class",
            "root_class",
        ],
    );
    report.set_parameter("count", random.count);
    report.set_parameter("min_im_gap", num(random.min_im_gap));
    report.set_parameter("box_half", num(random.box_half));
    report.set_parameter(
        "root_cluster_tol",
        num(symprod_core::RootSolveOptions::default().cluster_tol),
    );
    report.set_parameter(
        "t_values",
        Value::Array(config.t_values.iter().map(|&t| num(t)).collect()),
    );

    let disc = DomainSpec::unit_disc();
    let mut rng = rng_from(seed);
    let mut failures = 0usize;
    for index in 0..random.count {
        let (a, b) = loop {
            let a = Complex64::new(
                rng.random_range(-random.box_half..random.box_half),
                rng.random_range(-random.box_half..random.box_half),
            );
            let b = Complex64::new(
                rng.random_range(-random.box_half..random.box_half),
                rng.random_range(-random.box_half..random.box_half),
            );
            if (a.im - b.im).abs() >= random.min_im_gap {
                break (a, b);
            }
        };
        for &t in &config.t_values {
            let (row, outside) = classify_segment_point(&disc, a, b, t)?;
            let mut full = vec![num(index as f64), num(a.re), num(a.im), num(b.re), num(b.im)];
            full.extend(row);
            report.push_row(full);
            if !outside {
                failures += 1;
            }
        }
    }
    report.set_parameter("failures", failures);
    report.verdict = if failures == 0 { Verdict::Pass } else { Verdict::Fail };
    Ok(report)
}

/// Default grid for the smoothness probe: `1 - w` log-spaced in
/// `[0.01, 0.5]`, i.e. `w` from 0.5 up to 0.99.
pub fn default_w_grid() -> Vec<f64> {
    let count = 12;
    let hi = 0.5f64.log10();
    let lo = -2.0;
    (0..count)
        .map(|i| {
            let f = i as f64 / (count - 1) as f64;
            1.0 - 10f64.powf(hi + f * (lo - hi))
        })
        .collect()
}

/// Growth-rate probe for the Cauchy-type operator on the diagonal.
///
/// Integrates `(1-t)^beta / q(s;t)^m` over the unit circle with dyadically
/// graded Gauss-Legendre panels toward the boundary singularity at `t = 1`,
/// at the diagonal image of each `w` in the grid, and fits the slope of
/// `log |J|` against `log (1 - w)`. The operator loses `mn - 1` derivatives:
/// for `beta` below that order the fitted slope must be `beta - (mn-1)`,
/// and for smoother inputs the values must stay bounded.
pub fn smoothness_loss_probe(config: &SmoothnessConfig, seed: u64) -> Result<ProbeReport> {
    let (m, n, beta) = (config.m, config.n, config.beta);
    if m == 0 || n == 0 {
        return Err(CliError::Config("smoothness probe needs m >= 1 and n >= 1".into()));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(CliError::Config("beta must be positive and finite".into()));
    }
    let w_grid = if config.w_grid.is_empty() {
        default_w_grid()
    } else {
        config.w_grid.clone()
    };
    if w_grid.iter().any(|&w| !(0.5..=0.99).contains(&w)) {
        return Err(CliError::Config("w_grid must lie within [0.5, 0.99]".into()));
    }

    const LEVELS_COARSE: usize = 40;
    const LEVELS_FINE: usize = 48;
    const GL_ORDER: usize = 24;
    const ACCEPT_TOL: f64 = 1e-8;
    const MIN_SURVIVORS: usize = 6;

    let mut report = ProbeReport::new(
        "smoothness-loss",
        seed,
        &["w", "one_minus_w", "j_re", "j_im", "j_abs", "est_error", "used_in_fit"],
    );
    report.set_parameter("m", m);
    report.set_parameter("n", n);
    report.set_parameter("beta", num(beta));
    report.set_parameter("levels_coarse", LEVELS_COARSE);
    report.set_parameter("levels_fine", LEVELS_FINE);
    report.set_parameter("gl_order", GL_ORDER);
    report.set_parameter("accept_tol", num(ACCEPT_TOL));

    let u = HoloMap::power_law(beta).map_err(CliError::Core)?;
    let circle = Circle::new(Complex64::new(0.0, 0.0), 1.0);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &w in &w_grid {
        let s = symprod_core::diagonal_embed(Complex64::new(w, 0.0), n)?;
        let integrand = |t: Complex64| {
            let (q, _) = symprod_core::eval_q_and_dq(&s, t);
            u.eval(t).unwrap_or(Complex64::new(f64::NAN, f64::NAN)) / q.powu(m as u32)
        };
        let fine = integrate_circle_graded(circle, 0.0, LEVELS_FINE, GL_ORDER, integrand);
        let coarse = integrate_circle_graded(circle, 0.0, LEVELS_COARSE, GL_ORDER, integrand);
        match (fine, coarse) {
            (Ok(fine), Ok(coarse)) => {
                let est = (fine - coarse).norm();
                let used = est <= ACCEPT_TOL * (1.0 + fine.norm());
                if used {
                    xs.push((1.0 - w).ln());
                    ys.push(fine.norm().ln());
                } else {
                    report.note(format!(
                        "w = {w}: quadrature not converged (difference {est:.3e}), point dropped"
                    ));
                }
                report.push_row(vec![
                    num(w),
                    num(1.0 - w),
                    num(fine.re),
                    num(fine.im),
                    num(fine.norm()),
                    num(est),
                    Value::Bool(used),
                ]);
            }
            (fine, coarse) => {
                let err = fine.err().or(coarse.err()).unwrap();
                report.note(format!("w = {w}: quadrature failed ({err}), point dropped"));
                report.push_row(vec![
                    num(w),
                    num(1.0 - w),
                    Value::Null,
                    Value::Null,
                    Value::Null,
                    Value::Null,
                    Value::Bool(false),
                ]);
            }
        }
    }

    if xs.len() < MIN_SURVIVORS {
        report.note(format!(
            "only {} grid points survived, need {MIN_SURVIVORS}; no fit",
            xs.len()
        ));
        report.verdict = Verdict::Fail;
        return Ok(report);
    }
    let fit = fit_line(&xs, &ys)
        .ok_or_else(|| CliError::Report("degenerate grid for the slope fit".into()))?;
    let expected_slope = beta - (m * n - 1) as f64;
    report.set_parameter("expected_slope", num(expected_slope));
    report.set_parameter("expect_blowup", expected_slope < 0.0);
    report.fitted.push(fit.fitted("log_slope"));
    report.verdict = if expected_slope < 0.0 {
        if (fit.slope - expected_slope).abs() <= 0.05 {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    } else if fit.slope >= -0.05 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}

/// Batch driver over the library's sampled invariants.
pub fn sweep_report(config: &SweepConfig) -> Result<ProbeReport> {
    let domain = config.resolve_domain()?;
    match config.suite {
        SweepSuite::BidiscEquivalence => bidisc_equivalence_sweep(config),
        SweepSuite::DefiningFunctionEquivalence => defining_function_sweep(config, &domain),
        SweepSuite::Properness => properness_sweep(config),
        SweepSuite::LojasiewiczFit => lojasiewicz_sweep(config, &domain),
    }
}

/// Uniform in the Euclidean ball of C^n (= R^(2n)).
fn sample_ball(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<Complex64> {
    // gaussian direction via Box-Muller, then a radial beta factor
    let mut coords = Vec::with_capacity(n);
    for _ in 0..n {
        let u1: f64 = rng.random::<f64>().max(1e-300);
        let u2: f64 = rng.random();
        let r = (-2.0 * u1.ln()).sqrt();
        coords.push(Complex64::new(
            r * (2.0 * std::f64::consts::PI * u2).cos(),
            r * (2.0 * std::f64::consts::PI * u2).sin(),
        ));
    }
    let norm: f64 = coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let scale = radius * rng.random::<f64>().powf(1.0 / (2 * n) as f64) / norm.max(1e-300);
    coords.iter().map(|c| c * scale).collect()
}

fn bidisc_equivalence_sweep(config: &SweepConfig) -> Result<ProbeReport> {
    let mut report = ProbeReport::new(
        "sweep-bidisc-equivalence",
        config.seed,
        &[
            "index", "s1_re", "s1_im", "s2_re", "s2_im", "bidisc_value", "bidisc_class",
            "root_class", "agree",
        ],
    );
    report.set_parameter("samples", config.samples);
    report.set_parameter("margin", num(config.margin));
    report.set_parameter("radius", num(config.radius));
    report.set_parameter("max_recorded_samples", config.max_recorded_samples);
    report.set_parameter(
        "root_cluster_tol",
        num(symprod_core::RootSolveOptions::default().cluster_tol),
    );

    let disc = DomainSpec::unit_disc();
    let mut rng = rng_from(config.seed);
    let mut disagreements = 0usize;
    let mut skipped_in_band = 0usize;
    for index in 0..config.samples {
        let s = SymPoint::new(sample_ball(&mut rng, 2, config.radius))?;
        let v = bidisc_value(&s)?;
        if (v - 1.0).abs() <= config.margin {
            skipped_in_band += 1;
            continue;
        }
        let by_form = if v < 1.0 {
            Membership::Inside
        } else {
            Membership::Outside
        };
        let by_roots = symprod_contains(&disc, &s, 0.0)?.classification;
        let agree = by_form == by_roots;
        if !agree {
            disagreements += 1;
        }
        if !agree || report.samples.len() < config.max_recorded_samples {
            report.push_row(vec![
                num(index as f64),
                num(s.coeffs()[0].re),
                num(s.coeffs()[0].im),
                num(s.coeffs()[1].re),
                num(s.coeffs()[1].im),
                num(v),
                membership_label(by_form),
                membership_label(by_roots),
                Value::Bool(agree),
            ]);
        }
    }
    if report.samples.len() < config.samples {
        report.note(format!(
            "recorded {} of {} sample rows (cap {}); disagreements always recorded",
            report.samples.len(),
            config.samples,
            config.max_recorded_samples
        ));
    }
    report.set_parameter("disagreements", disagreements);
    report.set_parameter("skipped_in_band", skipped_in_band);
    report.verdict = if disagreements == 0 { Verdict::Pass } else { Verdict::Fail };
    Ok(report)
}

fn defining_function_sweep(config: &SweepConfig, domain: &DomainSpec) -> Result<ProbeReport> {
    let n = config.n.max(1);
    let mut report = ProbeReport::new(
        "sweep-defining-function-equivalence",
        config.seed,
        &["index", "f_value", "classification", "agree"],
    );
    report.set_parameter("samples", config.samples);
    report.set_parameter("margin", num(config.margin));
    report.set_parameter("n", n);
    report.set_parameter("max_recorded_samples", config.max_recorded_samples);

    let outer = domain.outer();
    let mut rng = rng_from(config.seed);
    let mut disagreements = 0usize;
    let mut skipped_in_band = 0usize;
    for index in 0..config.samples {
        // fibers straddling the boundary: roots in a box 1.4x the outer disc
        let roots: Vec<Complex64> = (0..n)
            .map(|_| {
                outer.center
                    + Complex64::new(
                        rng.random_range(-1.4..1.4) * outer.radius,
                        rng.random_range(-1.4..1.4) * outer.radius,
                    )
            })
            .collect();
        if roots
            .iter()
            .any(|z| domain.holes().iter().any(|h| (z - h.center).norm() < 1e-12))
        {
            continue;
        }
        let s = elem_sym(&roots)?;
        let f = f_defining(domain, &s)?;
        if f.abs() <= config.margin {
            skipped_in_band += 1;
            continue;
        }
        let class = symprod_contains(domain, &s, 0.0)?.classification;
        let agree = (f < 0.0) == (class == Membership::Inside);
        if !agree {
            disagreements += 1;
        }
        if !agree || report.samples.len() < config.max_recorded_samples {
            report.push_row(vec![
                num(index as f64),
                num(f),
                membership_label(class),
                Value::Bool(agree),
            ]);
        }
    }
    report.set_parameter("disagreements", disagreements);
    report.set_parameter("skipped_in_band", skipped_in_band);
    report.verdict = if disagreements == 0 { Verdict::Pass } else { Verdict::Fail };
    Ok(report)
}

fn properness_sweep(config: &SweepConfig) -> Result<ProbeReport> {
    let n = config.n.max(1);
    let mut report = ProbeReport::new(
        "sweep-properness",
        config.seed,
        &["index", "s_norm", "max_root_modulus", "bound", "ok"],
    );
    report.set_parameter("samples", config.samples);
    report.set_parameter("n", n);
    report.set_parameter("radius", num(config.radius));
    report.set_parameter("solver_slack", num(1e-8));
    report.set_parameter("max_recorded_samples", config.max_recorded_samples);

    let bound = ((n as f64).sqrt() * config.radius).max(1.0);
    let mut rng = rng_from(config.seed);
    let mut violations = 0usize;
    for index in 0..config.samples {
        let s = SymPoint::new(sample_ball(&mut rng, n, config.radius))?;
        let s_norm: f64 = s.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let roots = roots_of(&s)?;
        let max_mod = roots
            .roots()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let ok = max_mod <= bound + 1e-8;
        if !ok {
            violations += 1;
        }
        if !ok || report.samples.len() < config.max_recorded_samples {
            report.push_row(vec![
                num(index as f64),
                num(s_norm),
                num(max_mod),
                num(bound),
                Value::Bool(ok),
            ]);
        }
    }
    report.set_parameter("violations", violations);
    report.verdict = if violations == 0 { Verdict::Pass } else { Verdict::Fail };
    Ok(report)
}

/// Boundary-approaching samples: each has at least one root pushed to a
/// controlled positive level of the domain's defining function, so the
/// product-level defining function value and the distance upper bound can be
/// regressed against each other on a log-log scale. The fitted exponent is
/// informational; no pass/fail is attached.
fn lojasiewicz_sweep(config: &SweepConfig, domain: &DomainSpec) -> Result<ProbeReport> {
    let n = config.n.max(1);
    let mut report = ProbeReport::new(
        "sweep-lojasiewicz-fit",
        config.seed,
        &["index", "f_value", "distance_bound"],
    );
    report.set_parameter("samples", config.samples);
    report.set_parameter("n", n);
    report.set_parameter("max_recorded_samples", config.max_recorded_samples);

    let outer = domain.outer();
    let mut rng = rng_from(config.seed);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut produced = 0usize;
    let mut attempts = 0usize;
    while produced < config.samples && attempts < 50 * config.samples {
        attempts += 1;
        // interior roots
        let mut roots = Vec::with_capacity(n);
        let violators = rng.random_range(1..=n);
        for _ in violators..n {
            // rejection-sample a comfortably interior point
            let z = loop {
                let candidate = outer.center
                    + Complex64::new(
                        rng.random_range(-1.0..1.0) * outer.radius,
                        rng.random_range(-1.0..1.0) * outer.radius,
                    );
                if domain.psi(candidate).map(|p| p < -0.05).unwrap_or(false) {
                    break candidate;
                }
            };
            roots.push(z);
        }
        // violating roots at controlled positive levels of psi
        for _ in 0..violators {
            let level = 10f64.powf(rng.random_range(-6.0..-1.0));
            let theta = rng.random::<f64>() * 2.0 * std::f64::consts::PI;
            let z = if domain.holes().is_empty() || rng.random::<f64>() < 0.5 {
                outer.center + Complex64::from_polar(outer.radius * (1.0 + level), theta)
            } else {
                let h = domain.holes()[rng.random_range(0..domain.holes().len())];
                h.center + Complex64::from_polar(h.radius / (1.0 + level), theta)
            };
            roots.push(z);
        }
        let s = elem_sym(&roots)?;
        let f = f_defining(domain, &s)?;
        let g = sym_product_distance_bound(domain, &s)?;
        if !(f > 0.0 && g > 0.0) {
            continue;
        }
        produced += 1;
        xs.push(f.ln());
        ys.push(g.ln());
        if report.samples.len() < config.max_recorded_samples {
            report.push_row(vec![num(produced as f64 - 1.0), num(f), num(g)]);
        }
    }
    if let Some(fit) = fit_line(&xs, &ys) {
        report.fitted.push(fit.fitted("log_log_slope"));
        report.note(format!(
            "informational: log(distance bound) ~ {:.4} * log(f) + {:.4}; sandwich exponents exist but are not asserted",
            fit.slope, fit.intercept
        ));
    } else {
        report.note("not enough boundary-approaching samples for a fit");
    }
    report.verdict = Verdict::Informational;
    Ok(report)
}
