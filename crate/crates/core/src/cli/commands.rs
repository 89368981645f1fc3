use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::config::{List, RunConfig, Span};
use super::output::{Cell, Report};
use super::*;
use crate::contraction::{
    heis_lp_norm, inner_product_diagnostic, lemma2_ratio, limit_target, min_admissible_nu,
    sphere_side, NuSchedule, RadialBump,
};
use crate::fit::{exponent_report_over, ExponentReport};
use crate::heis::{
    aggregate_bound, divisor_sum, exponent_profile, kochricci_bound, pi_square_sum,
    pmk_norm_bracket, qn_norm_bound, qn_prime_bound, qn_prime_power_bound, qn_sq_identity,
    Aggregate, HeisContext, HeisMode,
};
use crate::specfun::{jacobi_eval, laguerre_eval, mehler_heine_pair, JacobiParams, MehlerHeinePair};
use crate::sphere::{
    dim_h, joint_eigenvalues, projector_norm_bracket, zonal_eval, Bidegree, QuadratureGrid,
    SphereContext, ZonalKernel,
};

type Out = Result<(&'static str, Report), CliError>;

pub(super) fn dispatch(cmd: &Command, rc: &RunConfig) -> Out {
    match cmd {
        Command::Specfun(SpecfunCmd::Eval(a)) => eval(a, rc).map(|r| ("specfun-eval", r)),
        Command::Specfun(SpecfunCmd::MehlerSweep(a)) => mehler(a, rc).map(|r| ("specfun-mehler-sweep", r)),
        Command::Sphere(SphereCmd::Dims(a)) => dims(a, rc).map(|r| ("sphere-dims", r)),
        Command::Sphere(SphereCmd::Zonal(a)) => zonal(a, rc).map(|r| ("sphere-zonal", r)),
        Command::Sphere(SphereCmd::NormSweep(a)) => sphere_sweep(a, rc).map(|r| ("sphere-norm-sweep", r)),
        Command::Heis(HeisCmd::Exponents(a)) => exponents(a, rc).map(|r| ("heis-exponents", r)),
        Command::Heis(HeisCmd::DN(a)) => divisors(a, rc).map(|r| ("heis-dN", r)),
        Command::Heis(HeisCmd::QnCheck(a)) => qn_check(a, rc).map(|r| ("heis-qn-check", r)),
        Command::Heis(HeisCmd::NormSweep(a)) => heis_sweep(a, rc).map(|r| ("heis-norm-sweep", r)),
        Command::Heis(HeisCmd::Bounds(a)) => bounds(a, rc).map(|r| ("heis-bounds", r)),
        Command::Contract(ContractCmd::Lemma2(a)) => lemma2(a, rc).map(|r| ("contract-lemma2", r)),
        Command::Contract(ContractCmd::Limit(a)) => limit(a, rc).map(|r| ("contract-limit", r)),
        Command::Contract(ContractCmd::Diagnostic(a)) => diagnostic(a, rc).map(|r| ("contract-diagnostic", r)),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

fn as_u32(x: f64, what: &str) -> Result<u32, CliError> {
    if x >= 0.0 && x.fract() == 0.0 && x <= f64::from(u32::MAX) {
        Ok(x as u32)
    } else {
        Err(usage(format!("{what} must be a non-negative integer, got {x}")))
    }
}

fn big_cell(v: &BigUint) -> Cell {
    match v.to_i64() {
        Some(i) => Cell::Int(i),
        None => Cell::Text(v.to_string()),
    }
}

fn slope_line(rep: &ExponentReport) -> String {
    format!(
        "slope={:.2}±{:.2}, predicted={:.2}, {}",
        rep.slope,
        rep.stderr,
        rep.predicted,
        rep.verdict()
    )
}

/// Fits the rows that succeeded and records the slope verdict.
fn fit_slope(
    report: &mut Report,
    axis: &str,
    span: (f64, f64),
    points: &[(f64, f64)],
    predicted: f64,
    tol: f64,
) {
    match exponent_report_over(axis, span, points, predicted, tol) {
        Ok(rep) => {
            report.verdict("slope", rep.pass, slope_line(&rep));
            report.summary.push(slope_line(&rep));
        }
        Err(e) => report.errors.push(format!("slope fit: {e}")),
    }
}

fn eval(a: &EvalArgs, rc: &RunConfig) -> Result<Report, CliError> {
    let xs = rc.require(a.x.clone(), "x")?.0;
    let jacobi: Option<List<f64>> = rc.optional(a.jacobi.clone(), "jacobi")?;
    let laguerre: Option<List<f64>> = rc.optional(a.laguerre.clone(), "laguerre")?;
    let mut report = Report::new("specfun eval", &["family", "degree", "alpha", "beta", "x", "value"]);
    match (jacobi, laguerre) {
        (Some(List(j)), None) => {
            let [deg, alpha, beta] = j[..] else {
                return Err(usage("--jacobi takes degree,alpha,beta"));
            };
            let params = JacobiParams::new(as_u32(deg, "degree")?, alpha, beta)?;
            for x in xs {
                let v = jacobi_eval(params, x)?;
                report.push(vec!["jacobi".into(), params.degree().into(), alpha.into(), beta.into(), x.into(), v.into()]);
            }
        }
        (None, Some(List(l))) => {
            let [deg, alpha] = l[..] else {
                return Err(usage("--laguerre takes degree,alpha"));
            };
            let k = as_u32(deg, "degree")?;
            for x in xs {
                let v = laguerre_eval(k, alpha, x)?;
                report.push(vec!["laguerre".into(), k.into(), alpha.into(), Cell::Empty, x.into(), v.into()]);
            }
        }
        _ => return Err(usage("give exactly one of --jacobi or --laguerre")),
    }
    Ok(report)
}

fn mehler(a: &MehlerArgs, rc: &RunConfig) -> Result<Report, CliError> {
    let k = rc.pick(a.k, "k", 2)?;
    let j = rc.pick(a.j, "j", 3)?;
    let x = rc.pick(a.x, "x", 1.5)?;
    let ns = rc.pick(a.big_n.clone(), "N", List(vec![50, 100, 200, 400]))?.0;
    let rows = ns
        .par_iter()
        .map(|&n| {
            let (lhs, rhs) = mehler_heine_pair(MehlerHeinePair::new(n, j, k, x)?)?;
            Ok((n, lhs, rhs))
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let mut report = Report::new("specfun mehler-sweep", &["N", "lhs", "rhs", "abs_err"]);
    let mut errs = Vec::new();
    for (n, lhs, rhs) in rows {
        let e = (lhs - rhs).abs();
        errs.push(e);
        report.push(vec![n.into(), lhs.into(), rhs.into(), e.into()]);
    }
    let ok = strictly_decreasing(&errs);
    let line = format!(
        "abs_err decreasing over {} values of N, final={:.3e}, {}",
        errs.len(),
        errs.last().copied().unwrap_or(f64::NAN),
        pass_fail(ok)
    );
    report.verdict("decreasing", ok, line.clone());
    report.summary.push(line);
    Ok(report)
}

fn dims(a: &DimsArgs, rc: &RunConfig) -> Result<Report, CliError> {
    let ctx = SphereContext::new(rc.pick(a.n, "n", 1)?)?;
    let lmax = rc.pick(a.lmax, "lmax", 4)?;
    let mut report = Report::new(
        "sphere dims",
        &["l", "lp", "q", "Q", "dim", "laplacian_eigenvalue", "t_eigenvalue"],
    );
    for l in 0..=lmax {
        for lp in 0..=lmax {
            let bd = Bidegree::new(l, lp);
            let (lap, tz) = joint_eigenvalues(&ctx, bd);
            report.push(vec![
                l.into(),
                lp.into(),
                bd.q().into(),
                bd.big_q().into(),
                big_cell(&dim_h(&ctx, bd)),
                lap.into(),
                tz.into(),
            ]);
        }
    }
    Ok(report)
}

fn zonal(a: &ZonalArgs, rc: &RunConfig) -> Result<Report, CliError> {
    let ctx = SphereContext::new(rc.pick(a.n, "n", 1)?)?;
    let bd = rc.pick(a.bd.clone(), "bd", List(vec![0, 0]))?.0;
    let [l, lp] = bd[..] else {
        return Err(usage("--bd takes l,l'"));
    };
    let thetas = rc.pick(a.theta.clone(), "theta", List(vec![0.0]))?.0;
    let phi = rc.pick(a.phi, "phi", 0.0)?;
    let kernel = ZonalKernel::new(&ctx, Bidegree::new(l, lp))?;
    let mut report = Report::new("sphere zonal", &["l", "lp", "theta", "phi", "re", "im", "abs"]);
    for theta in thetas {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
            return Err(usage(format!("theta = {theta} outside [0, pi/2]")));
        }
        let z = zonal_eval(&kernel, theta, phi);
        report.push(vec![l.into(), lp.into(), theta.into(), phi.into(), z.re.into(), z.im.into(), z.norm().into()]);
    }
    Ok(report)
}

fn sphere_sweep(a: &SphereSweepArgs, rc: &RunConfig) -> Result<Report, CliError> {
    let n = rc.pick(a.n, "n", 1)?;
    let ctx = SphereContext::new(n)?;
    let ray = rc.pick(a.ray, "ray", Ray::Diagonal)?;
    let p = rc.pick(a.p, "p", 1.0)?;
    let degrees = rc.pick(a.lrange, "lrange", Span { lo: 8, hi: 64 })?.dyadic();
    let tol = rc.pick(a.tolerance, "tolerance", 0.05)?;
    let min_nodes = rc.nodes(a.radial_nodes, "radial-nodes", 32)?;
    let profile = exponent_profile(n)?;
    let nf = f64::from(n);
    let predicted = match ray {
        Ray::Diagonal => profile.alpha_at(p)? + profile.beta_at(p)?,
        _ => profile.beta_at(p)?,
    };
    let rows: Vec<_> = degrees
        .par_iter()
        .map(|&l| {
            let l = l as u32;
            let (bd, abscissa) = match ray {
                Ray::Diagonal => (Bidegree::new(l, l), f64::from(l) + nf / 2.0),
                Ray::Holomorphic => (Bidegree::new(l, 0), f64::from(l) + (nf + 1.0) / 2.0),
                Ray::Antiholomorphic => (Bidegree::new(0, l), f64::from(l) + (nf + 1.0) / 2.0),
            };
            let bracket = (|| {
                let base = QuadratureGrid::for_kernel(&ctx, bd)?;
                let grid = if base.radial_nodes() < min_nodes {
                    QuadratureGrid::new(&ctx, base.rho_max(), min_nodes, base.angular_nodes(), Vec::new())?
                } else {
                    base
                };
                projector_norm_bracket(&ctx, bd, p, &grid)
            })();
            (bd, abscissa, bracket)
        })
        .collect();
    let mut report = Report::new(
        "sphere norm-sweep",
        &["l", "lp", "abscissa", "lower", "upper", "relative_width", "status"],
    );
    let mut points = Vec::new();
    for (bd, x, bracket) in rows {
        match bracket {
            Ok(b) => {
                points.push((x, b.lower));
                report.push(vec![bd.l.into(), bd.lp.into(), x.into(), b.lower.into(), b.upper.into(), b.relative_width().into(), "ok".into()]);
            }
            Err(e) => {
                report.errors.push(format!("bidegree {bd}: {e}"));
                report.push(vec![bd.l.into(), bd.lp.into(), x.into(), Cell::Empty, Cell::Empty, Cell::Empty, e.to_string().into()]);
            }
        }
    }
    let span = (degrees[0] as f64, degrees[degrees.len() - 1] as f64);
    fit_slope(&mut report, "l", span, &points, predicted, tol);
    Ok(report)
}

/// Accepts `a/b`, integers and decimals.
fn parse_rational(s: &str) -> Result<Rational64, CliError> {
    let s = s.trim();
    let bad = || usage(format!("'{s}' is not a rational number"));
    if s.contains('/') {
        return s.parse::<Rational64>().map_err(|_| bad());
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: i64 = digits.parse().map_err(|_| bad())?;
    Ok(Rational64::new(num, 10i64.pow(frac.len() as u32)))
}

fn exponents(a: &ExponentArgs, rc: &RunConfig) -> Result<Report, CliError> {
    let n = rc.pick(a.n, "n", 1)?;
    let profile = exponent_profile(n)?;
    let pt = profile.p_tilde();
    let ps: Vec<Rational64> = match rc.optional(a.p.clone(), "p")? {
        Some(List(items)) => items.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?,
        None => vec![Rational64::one(), pt, Rational64::from(2)],
    };
    let mut report = Report::new("heis exponents", &["p", "u", "regime", "alpha", "beta", "rho"]);
    for p in ps {
        if p.is_zero() {
            return Err(usage("p must be nonzero"));
        }
        let u = p.recip();
        let regime = if p < pt { "p<p_tilde" } else { "p>=p_tilde" };
        report.push(vec![
            Cell::Rational(p.to_string()),
            Cell::Rational(u.to_string()),
            regime.into(),
            Cell::Rational(profile.alpha(u)?.to_string()),
            Cell::Rational(profile.beta(u)?.to_string()),
            Cell::Rational(profile.rho(u)?.to_string()),
        ]);
    }
    let one = Rational64::one();
    report.summary.push(format!("p_tilde = {pt}"));
    report.summary.push(format!(
        "alpha(1) = {}, beta(1) = {}",
        profile.alpha(one)?,
        profile.beta(one)?
    ));
    let cont = profile.is_continuous_at_p_tilde();
    let line = format!(
        "alpha continuous at p_tilde with value {}: {}",
        profile.alpha_at_p_tilde(),
        pass_fail(cont)
    );
    report.verdict("continuity", cont, line.clone());
    report.summary.push(line);
    Ok(report)
}

fn divisors(a: &DivisorArgs, rc: &RunConfig) -> Result<Report, CliError> {
    let ctx = HeisContext::new(rc.pick(a.n, "n", 1)?)?;
    let ns = rc.pick(a.big_n, "N", Span { lo: 1, hi: 32 })?.all();
    let rows = ns
        .par_iter()
        .map(|&big_n| divisor_sum(&ctx, big_n))
        .collect::<crate::Result<Vec<_>>>()?;
    let mut report = Report::new("heis dN", &["N", "d_N", "d_N_float"]);
    for d in rows {
        report.push(vec![d.big_n.into(), Cell::Rational(d.value.to_string()), d.to_f64().into()]);
    }
    Ok(report)
}

fn qn_check(a: &DivisorArgs, rc: &RunConfig) -> Result<Report, CliError> {
    let ctx = HeisContext::new(rc.pick(a.n, "n", 1)?)?;
    let ns = rc.pick(a.big_n, "N", Span { lo: 1, hi: 500 })?.all();
    let rows = ns
        .par_iter()
        .map(|&big_n| qn_sq_identity(&ctx, big_n).map(|(l, r)| (big_n, l, r)))
        .collect::<crate::Result<Vec<_>>>()?;
    let mut report = Report::new("heis qn-check", &["N", "lhs", "rhs", "verdict"]);
    let mut passed = 0;
    for (big_n, lhs, rhs) in &rows {
        let ok = lhs == rhs;
        passed += usize::from(ok);
        report.push(vec![
            (*big_n).into(),
            Cell::Rational(lhs.to_string()),
            Cell::Rational(rhs.to_string()),
            pass_fail(ok).into(),
        ]);
    }
    let ok = passed == rows.len();
    let line = if ok {
        format!("{passed}/{} identities PASS (exact)", rows.len())
    } else {
        format!("{passed}/{} identities PASS (exact), {} FAIL", rows.len(), rows.len() - passed)
    };
    report.verdict("identities", ok, line.clone());
    report.summary.push(line);
    Ok(report)
}

fn heis_sweep(a: &HeisSweepArgs, rc: &RunConfig) -> Result<Report, CliError> {
    let n = rc.pick(a.n, "n", 1)?;
    let ctx = HeisContext::new(n)?;
    let axis = rc.pick(a.axis, "axis", Axis::K)?;
    let p = rc.pick(a.p, "p", 1.0)?;
    let tol = rc.pick(a.tolerance, "tolerance", 0.05)?;
    let profile = exponent_profile(n)?;
    let (values, predicted) = match axis {
        Axis::K => (rc.pick(a.range, "range", Span { lo: 8, hi: 128 })?.dyadic(), profile.alpha_at(p)?),
        Axis::M => (rc.pick(a.range, "range", Span { lo: 1, hi: 64 })?.dyadic(), profile.beta_at(p)?),
    };
    let fixed_m = rc.pick(a.m, "m", 1)?;
    let fixed_k = rc.pick(a.k, "k", 0)?;
    let rows: Vec<_> = values
        .par_iter()
        .map(|&v| {
            let mode = match axis {
                Axis::K => HeisMode::new(fixed_m, v as u32),
                Axis::M => HeisMode::new(v as i64, fixed_k),
            };
            let res = mode.and_then(|mode| {
                let b = pmk_norm_bracket(&ctx, mode, p)?;
                let kr = kochricci_bound(&ctx, mode, p)?;
                Ok((mode, b, kr))
            });
            (v, res)
        })
        .collect();
    let mut report = Report::new(
        "heis norm-sweep",
        &["m", "k", "abscissa", "lower", "upper", "kochricci", "status"],
    );
    let mut points = Vec::new();
    for (v, res) in rows {
        match res {
            Ok((mode, b, kr)) => {
                let x = match axis {
                    Axis::K => mode.level(&ctx) as f64,
                    Axis::M => mode.abs_m() as f64,
                };
                points.push((x, b.lower));
                report.push(vec![mode.m().into(), mode.k().into(), x.into(), b.lower.into(), b.upper.into(), kr.into(), "ok".into()]);
            }
            Err(e) => {
                report.errors.push(format!("value {v}: {e}"));
                let (m, k) = match axis {
                    Axis::K => (fixed_m, v),
                    Axis::M => (v as i64, u64::from(fixed_k)),
                };
                report.push(vec![m.into(), k.into(), Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, e.to_string().into()]);
            }
        }
    }
    let name = match axis {
        Axis::K => "2k+n",
        Axis::M => "|m|",
    };
    let span = match (points.first(), points.last()) {
        (Some(a), Some(b)) => (a.0, b.0),
        _ => (f64::NAN, f64::NAN),
    };
    fit_slope(&mut report, name, span, &points, predicted, tol);
    Ok(report)
}

/// `N = r^k` with `r` prime and `k ≥ 1`.
fn prime_power(big_n: u64) -> Option<(u64, u32)> {
    if big_n < 2 {
        return None;
    }
    let mut r = 2;
    while r * r <= big_n && big_n % r != 0 {
        r += 1;
    }
    if big_n % r != 0 {
        r = big_n;
    }
    let (mut m, mut k) = (big_n, 0);
    while m % r == 0 {
        m /= r;
        k += 1;
    }
    (m == 1).then_some((r, k))
}

fn bounds(a: &BoundsArgs, rc: &RunConfig) -> Result<Report, CliError> {
    let ctx = HeisContext::new(rc.pick(a.n, "n", 1)?)?;
    let ns = rc.pick(a.big_n, "N", Span { lo: 1, hi: 64 })?.all();
    let p = rc.pick(a.p, "p", 1.0)?;
    let rows = ns
        .par_iter()
        .map(|&big_n| {
            let d = divisor_sum(&ctx, big_n)?;
            let qn = qn_norm_bound(&ctx, big_n, p)?;
            let pi = aggregate_bound(&ctx, Aggregate::Pi(big_n), p)?;
            let m = aggregate_bound(&ctx, Aggregate::M(big_n), p)?;
            let e = if big_n >= 2 {
                Some(aggregate_bound(&ctx, Aggregate::E(big_n / 2, big_n), p)?)
            } else {
                None
            };
            let reduced = match prime_power(big_n) {
                Some((r, 1)) => Some(qn_prime_bound(&ctx, r, p)?),
                Some((r, k)) => Some(qn_prime_power_bound(&ctx, r, k, p)?),
                None => None,
            };
            Ok((d, qn, pi, m, e, pi_square_sum(&ctx, big_n), reduced))
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let mut report = Report::new(
        "heis bounds",
        &[
            "N", "d_N", "qn_bound", "pi_bound", "m_bound", "e_bound", "pi_square_sum", "reduced_form",
            "reduced_bound", "hypothesis_ok",
        ],
    );
    for (d, qn, pi, m, e, sq, reduced) in rows {
        let (form, value, hyp) = match reduced {
            Some(r) => {
                let form = match r.form {
                    crate::heis::QnForm::Prime { .. } => "prime",
                    crate::heis::QnForm::PrimePower { .. } => "prime-power",
                    crate::heis::QnForm::FixedPrime { .. } => "fixed-prime",
                };
                (form.into(), r.value.into(), r.hypothesis_ok.into())
            }
            None => (Cell::Empty, Cell::Empty, Cell::Empty),
        };
        report.push(vec![
            d.big_n.into(),
            Cell::Rational(d.value.to_string()),
            qn.into(),
            pi.into(),
            m.into(),
            e.map_or(Cell::Empty, Cell::Float),
            big_cell(&sq),
            form,
            value,
            hyp,
        ]);
    }
    Ok(report)
}

/// Fails with the chart-overflow error for the first `ν` that is too small.
fn check_chart(radius: f64, nus: &[u64]) -> Result<(), CliError> {
    let min_nu = min_admissible_nu(radius);
    match nus.iter().find(|&&nu| nu < min_nu) {
        Some(&nu) => Err(crate::Error::ChartOverflow { radius, nu, min_nu }.into()),
        None => Ok(()),
    }
}

fn lemma2(a: &Lemma2Args, rc: &RunConfig) -> Result<Report, CliError> {
    let n = rc.pick(a.n, "n", 1)?;
    let ps = rc.pick(a.p.clone(), "p", List(vec![2.0]))?.0;
    let nus = rc.pick(a.nu.clone(), "nu", List(vec![16, 64, 256, 1024]))?.0;
    let radius = rc.pick(a.radius, "radius", 1.0)?;
    let f = RadialBump::new(radius, rc.pick(a.m, "m", 1)?)?;
    check_chart(radius, &nus)?;
    let sctx = SphereContext::new(n)?;
    let hctx = HeisContext::new(n)?;
    let targets = ps
        .par_iter()
        .map(|&p| heis_lp_norm(&hctx, &f, p))
        .collect::<crate::Result<Vec<_>>>()?;
    let jobs: Vec<(usize, u64)> = (0..ps.len()).flat_map(|i| nus.iter().map(move |&nu| (i, nu))).collect();
    let ratios = jobs
        .par_iter()
        .map(|&(i, nu)| lemma2_ratio(&sctx, &f, nu, ps[i]))
        .collect::<crate::Result<Vec<_>>>()?;
    let mut report = Report::new("contract lemma2", &["p", "nu", "ratio", "target", "gap"]);
    for (i, &p) in ps.iter().enumerate() {
        let target = targets[i];
        let rows: Vec<(u64, f64)> = jobs
            .iter()
            .zip(&ratios)
            .filter(|((j, _), _)| *j == i)
            .map(|((_, nu), r)| (*nu, *r))
            .collect();
        let gaps: Vec<f64> = rows.iter().map(|(_, r)| (target - r) / target).collect();
        for ((nu, r), g) in rows.iter().zip(&gaps) {
            report.push(vec![p.into(), (*nu).into(), (*r).into(), target.into(), (*g).into()]);
        }
        let below = rows.iter().all(|(_, r)| *r < target);
        let increasing = rows.windows(2).all(|w| w[1].1 > w[0].1);
        let shrink = rows
            .windows(2)
            .zip(gaps.windows(2))
            .filter(|(w, _)| w[1].0 >= 4 * w[0].0)
            .all(|(_, g)| g[1] <= g[0] / 2.0);
        let line = format!(
            "p={p}: ratio < target {}, increasing {}, gap halves per 4x nu {}",
            pass_fail(below),
            pass_fail(increasing),
            pass_fail(shrink)
        );
        report.verdict(&format!("p={p}"), below && increasing && shrink, line.clone());
        report.summary.push(line);
    }
    Ok(report)
}

fn limit(a: &LimitArgs, rc: &RunConfig) -> Result<Report, CliError> {
    let n = rc.pick(a.n, "n", 1)?;
    let m = rc.pick(a.m, "m", 1)?;
    let k = rc.pick(a.k, "k", 0)?;
    let nus = rc.pick(a.nu.clone(), "nu", List(vec![16, 64, 256]))?.0;
    let radius = rc.pick(a.radius, "radius", 1.0)?;
    let tol = rc.pick(a.tolerance, "tolerance", 0.05)?;
    let schedule = match rc.pick(a.schedule, "schedule", Schedule::Shifted)? {
        Schedule::Shifted => NuSchedule::Shifted,
        Schedule::Rounded => NuSchedule::Rounded,
    };
    let f = RadialBump::new(radius, m)?;
    check_chart(radius, &nus)?;
    let target = limit_target(&HeisContext::new(n)?, &f, HeisMode::new(m, k)?)?;
    let rows: Vec<_> = nus
        .par_iter()
        .map(|&nu| (nu, sphere_side(n, &f, m, k, nu, schedule)))
        .collect();
    let mut report = Report::new(
        "contract limit",
        &["nu", "N", "bidegree", "sphere_value", "target", "rel_err", "status"],
    );
    let mut errs = Vec::new();
    for (nu, res) in rows {
        match res {
            Ok((big_n, bd, value)) => {
                let rel = if target > 0.0 { (value - target).abs() / target } else { value.abs() };
                errs.push(rel);
                report.push(vec![nu.into(), big_n.into(), bd.to_string().into(), value.into(), target.into(), rel.into(), "ok".into()]);
            }
            Err(e) => {
                report.errors.push(format!("nu {nu}: {e}"));
                report.push(vec![nu.into(), Cell::Empty, Cell::Empty, Cell::Empty, target.into(), Cell::Empty, e.to_string().into()]);
            }
        }
    }
    let decreasing = strictly_decreasing(&errs);
    let last = errs.last().copied().unwrap_or(f64::NAN);
    let ok = decreasing && last <= tol;
    let line = format!(
        "rel_err decreasing {}, final={last:.3e} (tolerance {tol}), {}",
        pass_fail(decreasing),
        pass_fail(ok)
    );
    report.verdict("limit", ok, line.clone());
    report.summary.push(line);
    Ok(report)
}

fn diagnostic(a: &DiagnosticArgs, rc: &RunConfig) -> Result<Report, CliError> {
    let n = rc.pick(a.n, "n", 1)?;
    let nus = rc.pick(a.nu.clone(), "nu", List(vec![16, 64, 256, 1024, 4096]))?.0;
    let recs = inner_product_diagnostic(n, &nus)?;
    let mut report = Report::new("contract diagnostic", &["nu", "max_remainder", "scaled"]);
    for r in &recs {
        report.push(vec![r.nu.into(), r.max_remainder.into(), r.scaled.into()]);
    }
    let scaled: Vec<f64> = recs.iter().map(|r| r.scaled).collect();
    let ok = strictly_decreasing(&scaled);
    let line = format!("nu * remainder decreasing: {}", pass_fail(ok));
    report.verdict("diagnostic", ok, line.clone());
    report.summary.push(line);
    Ok(report)
}
