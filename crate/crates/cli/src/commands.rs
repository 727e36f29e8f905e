use num_complex::Complex64;
use sendov_core::asymptotic::{find_n0, Probe, ThresholdOptions};
use sendov_core::certify::{
    corollary1_witness, lemma_critical_point, lemma_distance, lemma_predicate, phi, sendov_witness, solve_a0,
    thm1_disk, thm1_halfplane_witness, thm1_identity, thm2_certificate, DiskCertificate, SendovWitness, BOUNDARY_TOL,
};
use sendov_core::error::Error;
use sendov_core::hull::distance_to_hull;
use sendov_core::poly::FactoredPolynomial;
use sendov_core::roots::{free_critical_points, gauss_lucas_check, prescribed_hull, SolverOptions};
use sendov_core::search::{maximize_margin, AMode, SearchBudget, SearchSpace};
use serde_json::{json, Map, Value};

use crate::config::{read_json, AsymptoticFile, ConfigFile};
use crate::output::Table;
use crate::{positive, Cli, Command, ConfigArgs, Failure, EXIT_INVALID, EXIT_OK, SEED_ENV};

pub(crate) struct Report {
    pub json: Value,
    pub table: Table,
    pub exit: i32,
    /// Printed on standard error after the report.
    pub diagnostic: Option<String>,
}

impl Report {
    fn new(json: Value, table: Table) -> Self {
        Self {
            json,
            table,
            exit: EXIT_OK,
            diagnostic: None,
        }
    }

    fn fail_unless(mut self, ok: bool, why: &str) -> Self {
        if !ok {
            self.exit = EXIT_INVALID;
            self.diagnostic = Some(format!("certificate invalid: {why}"));
        }
        self
    }
}

fn c(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn load(args: &ConfigArgs) -> Result<FactoredPolynomial, Failure> {
    let file = match &args.input {
        Some(path) => read_json::<ConfigFile>(path)?,
        None => {
            let (Some(a), Some(n)) = (args.a, args.n) else {
                return Err(Failure::Input("either --input or both --a and --n are required".into()));
            };
            let fp = FactoredPolynomial::with_unit_disk(a, n, args.zero.clone(), !args.unbounded)?;
            ConfigFile::from_polynomial(&fp)
        }
    };
    Ok(file.to_polynomial()?)
}

/// Canonical configuration with the rotation that produced it, and the
/// report fields recording both.
fn resolve(
    args: &ConfigArgs,
    command: &str,
    opts: &SolverOptions,
) -> Result<(FactoredPolynomial, Map<String, Value>), Failure> {
    let (fp, u) = load(args)?.canonicalize();
    let mut base = Map::new();
    base.insert("command".into(), json!(command));
    base.insert("config".into(), to_value(&ConfigFile::from_polynomial(&fp)));
    base.insert("rotation".into(), c(u));
    base.insert("solver".into(), to_value(opts));
    Ok((fp, base))
}

fn witness_value(w: &SendovWitness) -> Value {
    json!({"root": c(w.root), "witness": c(w.witness), "distance": w.distance})
}

fn disk_fields(base: &mut Map<String, Value>, cert: &DiskCertificate) -> bool {
    let valid = cert.is_valid(BOUNDARY_TOL);
    base.insert("center".into(), json!(cert.center.re));
    base.insert("radius".into(), json!(cert.radius));
    base.insert("witness".into(), c(cert.witness));
    base.insert("slack".into(), json!(cert.slack));
    base.insert("valid".into(), json!(valid));
    valid
}

fn disk_table(cert: &DiskCertificate, valid: bool) -> Table {
    let mut t = Table::new(vec!["center", "radius", "witness_re", "witness_im", "slack", "valid"]);
    t.push(vec![
        json!(cert.center.re),
        json!(cert.radius),
        json!(cert.witness.re),
        json!(cert.witness.im),
        json!(cert.slack),
        json!(valid),
    ]);
    t
}

pub(crate) fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let opts = cli.solver.options()?;
    match &cli.command {
        Command::Check(args) => check(args, &opts),
        Command::Lemma { a, b, kmul, rmul } => lemma(*a, *b, *kmul, *rmul),
        Command::Thm1(args) => thm1(args, &opts),
        Command::Corollary1(args) => corollary1(args, &opts),
        Command::A0 { k, n, m, tol } => a0(*k, *n, *m, *tol),
        Command::Thm2 { config, advisory } => thm2(config, *advisory, &opts),
        Command::Thm3 {
            input,
            rho,
            n_max,
            window,
            probe_from,
            probe_to,
        } => {
            if let Some(rho) = rho {
                positive("--rho", *rho)?;
            }
            if probe_from >= probe_to {
                return Err(Failure::Input("--probe-from must be below --probe-to".into()));
            }
            let topts = ThresholdOptions {
                rho: *rho,
                n_max: *n_max,
                window: *window,
                probe: Probe {
                    from: *probe_from,
                    to: *probe_to,
                },
            };
            thm3(input, &topts, &opts)
        }
        Command::Identity { config, identity_tol } => {
            identity(config, positive("--identity-tol", *identity_tol)?, &opts)
        }
        Command::Search {
            input,
            n,
            mult,
            a,
            a_free,
            seed,
            restarts,
            iters,
        } => {
            let mut space = match input {
                Some(path) => read_json::<SearchSpace>(path)?,
                None => {
                    let Some(n) = n else {
                        return Err(Failure::Input("either --input or --n is required".into()));
                    };
                    let a_mode = match (a, a_free) {
                        (_, true) => AMode::Free,
                        (Some(a), false) => AMode::Fixed(*a),
                        (None, false) => return Err(Failure::Input("one of --a or --a-free is required".into())),
                    };
                    SearchSpace {
                        n: *n,
                        multiplicities: mult.clone(),
                        a_mode,
                        seed: 0,
                    }
                }
            };
            if let Some(seed) = seed {
                space.seed = *seed;
            }
            if let Ok(env) = std::env::var(SEED_ENV) {
                space.seed = env
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Input(format!("{SEED_ENV} is not an unsigned integer: {env:?}")))?;
            }
            let budget = SearchBudget {
                restarts: *restarts,
                iters: *iters,
            };
            search(&space, &budget, &opts)
        }
        Command::GaussLucas { config, hull_tol } => gauss_lucas(config, positive("--hull-tol", *hull_tol)?, &opts),
    }
}

fn check(args: &ConfigArgs, opts: &SolverOptions) -> Result<Report, Failure> {
    let (fp, mut base) = resolve(args, "check", opts)?;
    let free = free_critical_points(&fp, opts)?;
    let witness = sendov_witness(&fp, opts)?;
    let hull = prescribed_hull(&fp);
    base.insert("degree".into(), json!(fp.degree()));
    base.insert(
        "free_critical_points".into(),
        Value::Array(free.iter().map(|&w| c(w)).collect()),
    );
    base.insert("witness".into(), witness_value(&witness));
    base.insert("within_unit".into(), json!(witness.distance <= 1.0 + BOUNDARY_TOL));
    base.insert("gauss_lucas".into(), json!(gauss_lucas_check(&fp, &free, 1e-7)));

    let mut t = Table::new(vec!["index", "re", "im", "dist_to_a", "dist_to_hull"]);
    for (i, &w) in free.iter().enumerate() {
        t.push(vec![
            json!(i),
            json!(w.re),
            json!(w.im),
            json!((fp.a() - w).norm()),
            json!(distance_to_hull(&hull, w)),
        ]);
    }
    Ok(Report::new(Value::Object(base), t))
}

fn lemma(a: Complex64, b: Complex64, kmul: u32, rmul: u32) -> Result<Report, Failure> {
    let zeta = lemma_critical_point(a, b, kmul, rmul)?;
    let distance = lemma_distance(a, b, kmul, rmul)?;
    let predicate = match lemma_predicate(a, b, kmul, rmul) {
        Ok(p) => Some(p),
        Err(Error::HypothesisNotMet(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let within = distance <= 1.0 + BOUNDARY_TOL;
    let separation = (a - b).norm();
    let json = json!({
        "command": "lemma",
        "a": c(a),
        "b": c(b),
        "kmul": kmul,
        "rmul": rmul,
        "zeta": c(zeta),
        "distance": distance,
        "within_unit": within,
        "predicate": predicate,
        "exceeds_by_separation": f64::from(kmul) * (separation - 1.0) > f64::from(rmul),
    });
    let mut t = Table::new(vec!["zeta_re", "zeta_im", "distance", "within_unit"]);
    t.push(vec![json!(zeta.re), json!(zeta.im), json!(distance), json!(within)]);
    Ok(Report::new(json, t).fail_unless(within, "critical point lies farther than 1 from a"))
}

fn thm1(args: &ConfigArgs, opts: &SolverOptions) -> Result<Report, Failure> {
    let (fp, mut base) = resolve(args, "thm1", opts)?;
    let cert = thm1_disk(&fp, opts)?;
    let hp = thm1_halfplane_witness(&fp, opts)?;
    let valid = disk_fields(&mut base, &cert);
    let holds = hp.holds(BOUNDARY_TOL);
    base.insert(
        "halfplane".into(),
        json!({"index": hp.index, "point": c(hp.point), "value": hp.value, "threshold": hp.threshold, "holds": holds}),
    );
    let t = disk_table(&cert, valid);
    Ok(Report::new(Value::Object(base), t).fail_unless(valid && holds, "witness outside the disk"))
}

fn corollary1(args: &ConfigArgs, opts: &SolverOptions) -> Result<Report, Failure> {
    let (fp, mut base) = resolve(args, "corollary1", opts)?;
    let cert = corollary1_witness(&fp, opts)?;
    let valid = disk_fields(&mut base, &cert);
    let t = disk_table(&cert, valid);
    Ok(Report::new(Value::Object(base), t).fail_unless(valid, "witness outside |z - 1/2| <= 1/2"))
}

fn a0(k: u32, n: u32, m: u64, tol: f64) -> Result<Report, Failure> {
    positive("--tol", tol)?;
    let a0 = solve_a0(k, n, m, tol)?;
    let json = json!({"command": "a0", "k": k, "n": n, "m": m, "tol": tol, "a0": a0, "phi_at_a0": phi(a0, k, n, m)});
    let mut t = Table::new(vec!["k", "n", "m", "a0"]);
    t.push(vec![json!(k), json!(n), json!(m), json!(a0)]);
    Ok(Report::new(json, t))
}

fn thm2(args: &ConfigArgs, advisory: bool, opts: &SolverOptions) -> Result<Report, Failure> {
    let (fp, mut base) = resolve(args, "thm2", opts)?;
    let r = thm2_certificate(&fp, advisory, opts)?;
    let modulus = r.witness.witness.norm();
    base.insert("status".into(), to_value(&r.status));
    base.insert("a".into(), json!(r.a));
    base.insert("a0".into(), json!(r.a0));
    base.insert("modulus_bound".into(), json!(r.modulus_bound));
    base.insert("witness".into(), witness_value(&r.witness));
    base.insert("witness_modulus".into(), json!(modulus));
    base.insert("triangle_bound".into(), json!(r.triangle_bound));
    base.insert("valid".into(), json!(r.valid));
    let mut t = Table::new(vec![
        "status",
        "witness_re",
        "witness_im",
        "modulus",
        "modulus_bound",
        "distance",
        "valid",
    ]);
    t.push(vec![
        to_value(&r.status),
        json!(r.witness.witness.re),
        json!(r.witness.witness.im),
        json!(modulus),
        json!(r.modulus_bound),
        json!(r.witness.distance),
        json!(r.valid),
    ]);
    Ok(Report::new(Value::Object(base), t).fail_unless(r.valid, "no free critical point satisfies the modulus bound"))
}

fn thm3(input: &std::path::Path, topts: &ThresholdOptions, opts: &SolverOptions) -> Result<Report, Failure> {
    let file = read_json::<AsymptoticFile>(input)?;
    let cfg = file.to_config()?;
    let r = find_n0(&cfg, topts, opts)?;
    let conclusion = r.trace.iter().filter(|e| e.n >= r.n0).all(|e| e.conclusion);
    let json = json!({
        "command": "thm3",
        "config": to_value(&AsymptoticFile::from_config(&cfg)),
        "solver": to_value(opts),
        "threshold": to_value(topts),
        "n0": r.n0,
        "rho": r.rho,
        "zeta_star": c(r.zeta_star),
        "margin": r.margin,
        "source": to_value(&r.source),
        "conclusion_holds": conclusion,
        "trace": to_value(&r.trace),
    });
    let mut t = Table::new(vec!["n", "re", "im", "dist_to_zstar", "dist_to_a"]);
    for e in &r.trace {
        t.push(vec![
            json!(e.n),
            json!(e.zeta.map(|z| z.re)),
            json!(e.zeta.map(|z| z.im)),
            json!(e.dist_to_zstar),
            json!(e.dist_to_a),
        ]);
    }
    Ok(Report::new(json, t).fail_unless(conclusion, "a traced critical point is not within 1 of a"))
}

fn identity(args: &ConfigArgs, tol: f64, opts: &SolverOptions) -> Result<Report, Failure> {
    let (fp, mut base) = resolve(args, "identity", opts)?;
    let r = thm1_identity(&fp, opts)?;
    let pass = r.residual < tol;
    base.insert("lhs".into(), c(r.lhs));
    base.insert("rhs".into(), c(r.rhs));
    base.insert("residual".into(), json!(r.residual));
    base.insert("tol".into(), json!(tol));
    base.insert("pass".into(), json!(pass));
    let mut t = Table::new(vec!["lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "pass"]);
    t.push(vec![
        json!(r.lhs.re),
        json!(r.lhs.im),
        json!(r.rhs.re),
        json!(r.rhs.im),
        json!(r.residual),
        json!(pass),
    ]);
    Ok(Report::new(Value::Object(base), t).fail_unless(pass, "identity residual above tolerance"))
}

fn search(space: &SearchSpace, budget: &SearchBudget, opts: &SolverOptions) -> Result<Report, Failure> {
    let r = maximize_margin(space, budget, opts)?;
    let json = json!({
        "command": "search",
        "space": to_value(space),
        "budget": to_value(budget),
        "solver": to_value(opts),
        "best_config": to_value(&ConfigFile::from_polynomial(&r.best_config)),
        "best_margin": r.best_margin,
        "best_restart": r.best_restart,
        "evaluations": r.evaluations,
        "corollary1_applies": r.corollary1_applies,
        "corollary1_contradiction": r.corollary1_contradiction,
        "history": to_value(&r.history),
    });
    let mut t = Table::new(vec!["iteration", "margin"]);
    for &(i, m) in &r.history {
        t.push(vec![json!(i), json!(m)]);
    }
    Ok(Report::new(json, t).fail_unless(
        !r.corollary1_contradiction,
        "search exceeded the guaranteed margin of 1",
    ))
}

fn gauss_lucas(args: &ConfigArgs, tol: f64, opts: &SolverOptions) -> Result<Report, Failure> {
    let (fp, mut base) = resolve(args, "gauss-lucas", opts)?;
    let free = free_critical_points(&fp, opts)?;
    let hull = prescribed_hull(&fp);
    let mut t = Table::new(vec!["index", "re", "im", "hull_distance", "inside"]);
    let mut points = Vec::with_capacity(free.len());
    for (i, &w) in free.iter().enumerate() {
        let d = distance_to_hull(&hull, w);
        let inside = gauss_lucas_check(&fp, &[w], tol);
        points.push(json!({"point": c(w), "hull_distance": d, "inside": inside}));
        t.push(vec![json!(i), json!(w.re), json!(w.im), json!(d), json!(inside)]);
    }
    let pass = gauss_lucas_check(&fp, &free, tol);
    base.insert("hull".into(), Value::Array(hull.iter().map(|&z| c(z)).collect()));
    base.insert("tol".into(), json!(tol));
    base.insert("points".into(), Value::Array(points));
    base.insert("pass".into(), json!(pass));
    Ok(Report::new(Value::Object(base), t).fail_unless(pass, "a critical point lies outside the hull"))
}
