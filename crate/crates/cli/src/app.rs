//! Subcommands and their dispatch.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dgstab::kronecker::{counterexample_report, dgstab_tables, grstab_tables, TableRanges};
use dgstab::oracle::stable::{is_isomorphic, IsoVerdict, DEFAULT_SEED};
use dgstab::oracle::star_modules::star_module;
use dgstab::oracle::syzygy::{omega, omega_inverse};
use dgstab::oracle::{build_kronecker_algebra, build_star_algebra, orbit_compose, orbit_hom, Algebra, GradedModule, OrbitMorphism};
use dgstab::star::{ar_quiver, compose_dg, cone, dgstab_hom, omega_power, DgMorphism, StarModuleSymbol, StarParams};
use dgstab::verify::{
    ar_sweep, composition_sweep, cone_sweep, hom_sweep, object_module, oracle_cone_middle, oracle_isomorphic,
    periodicity_sweep, Check,
};
use dgstab::{Execution, PrimeField};

use crate::expr::{parse_morphism, ObjectExpr, ParseError, Term};
use crate::output::{Envelope, OracleAgreement, ParamsOut, Provenance, Report, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "dgstab", version, about = "Calculator for the dg-stable category of graded Brauer-star algebras")]
pub struct Cli {
    /// Emit the JSON envelope instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Prime modulus of the ground field.
    #[arg(long, global = true, env = "DGSTAB_FIELD_PRIME")]
    pub field_prime: Option<u32>,
    /// Seed for randomized isomorphism trials.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Run sweeps on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct StarArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Dot,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension and basis of a Hom space.
    Hom {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Objects are Kronecker modules (always computed by the oracle).
        #[arg(long)]
        kronecker: bool,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        oracle: bool,
    },
    /// `second ∘ first` for two basis morphisms.
    Compose {
        #[command(flatten)]
        star: StarArgs,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[arg(long)]
        oracle: bool,
    },
    /// Canonical representative of a star module.
    Normalize {
        #[command(flatten)]
        star: StarArgs,
        #[arg(long)]
        object: String,
        #[arg(long)]
        oracle: bool,
    },
    /// `Ω^power` of a star module in the graded stable category.
    Omega {
        #[command(flatten)]
        star: StarArgs,
        #[arg(long)]
        object: String,
        #[arg(long, allow_hyphen_values = true)]
        power: i64,
        #[arg(long)]
        oracle: bool,
    },
    /// The exact triangle on a basis morphism.
    Cone {
        #[command(flatten)]
        star: StarArgs,
        #[arg(long, allow_hyphen_values = true)]
        morphism: String,
        #[arg(long)]
        oracle: bool,
    },
    /// The Auslander-Reiten quiver.
    ArQuiver {
        #[command(flatten)]
        star: StarArgs,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Sweep the closed forms against the oracle.
    OracleCheck {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        d_max: usize,
    },
    /// The Kronecker tables or the counterexample report.
    Kronecker {
        #[arg(long, conflicts_with = "counterexample", required_unless_present = "counterexample")]
        tables: bool,
        #[arg(long)]
        counterexample: bool,
        #[arg(long, default_value_t = 4)]
        m_max: usize,
        #[arg(long, default_value_t = 12)]
        k_max: i64,
    },
}

/// Failures, mapped onto exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] dgstab::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                dgstab::Error::InvalidParameter(_) | dgstab::Error::NotPrime(_) | dgstab::Error::EndpointMismatch(_) => 2,
                _ => 1,
            },
        }
    }
}

type Res<T> = Result<T, CliError>;

struct Ctx {
    field: PrimeField,
    seed: u64,
    exec: Execution,
}

impl Ctx {
    fn params(&self, n: Option<usize>, d: Option<usize>) -> ParamsOut {
        ParamsOut {
            n,
            d,
            field_prime: self.field.prime(),
            seed: self.seed,
        }
    }

    fn report(
        &self,
        command: &'static str,
        provenance: Provenance,
        star: Option<StarParams>,
        text: String,
        result: serde_json::Value,
        oracle: Option<OracleAgreement>,
    ) -> Report {
        let mismatch = oracle.as_ref().is_some_and(|o| !o.agrees);
        let mut text = text;
        if let Some(o) = &oracle {
            let _ = writeln!(text, "oracle: {} ({})", if o.agrees { "agrees" } else { "MISMATCH" }, o.detail);
        }
        Report {
            text,
            envelope: Envelope {
                schema_version: SCHEMA_VERSION,
                command,
                provenance,
                params: self.params(star.map(StarParams::n), star.map(StarParams::d)),
                result,
                oracle,
            },
            mismatch,
        }
    }
}

fn star_params(a: &StarArgs) -> Res<StarParams> {
    Ok(StarParams::new(a.n, a.d)?)
}

fn parse_object(s: &str) -> Res<ObjectExpr> {
    Ok(s.parse::<ObjectExpr>()?)
}

fn single_term(e: &ObjectExpr, what: &str) -> Res<Term> {
    match e.terms.as_slice() {
        [t] if !t.is_kronecker() => Ok(*t),
        _ => Err(CliError::Usage(format!("{what} must be a single M[..] or C[..] term, got {e}"))),
    }
}

fn term_module(alg: &Algebra, p: StarParams, t: &Term) -> Res<GradedModule> {
    Ok(match *t {
        Term::Star { i, j, k } => star_module(alg, i, j, k)?,
        Term::Canonical { .. } => object_module(alg, t.canonical(p)?)?,
        Term::Kronecker(o) => o.module(alg)?,
    })
}

fn sum_module(alg: &Algebra, p: Option<StarParams>, e: &ObjectExpr) -> Res<GradedModule> {
    let parts: Vec<GradedModule> = e
        .terms
        .iter()
        .map(|t| match p {
            Some(p) => term_module(alg, p, t),
            None => Ok(match t {
                Term::Kronecker(o) => o.module(alg)?,
                _ => return Err(CliError::Usage(format!("{t} is not a Kronecker module"))),
            }),
        })
        .collect::<Res<_>>()?;
    Ok(GradedModule::direct_sum(&parts)?.module)
}

fn generator(alg: &Algebra, field: PrimeField, m: &DgMorphism) -> Res<Option<OrbitMorphism>> {
    if m.is_zero() {
        return Ok(None);
    }
    let sp = orbit_hom(&object_module(alg, m.domain)?, &object_module(alg, m.codomain)?)?;
    let b = sp.basis();
    match b.first() {
        Some(g) if sp.total_dim() == 1 => Ok(Some(g.scale(field.elem(m.scalar)))),
        _ => Err(dgstab::Error::Inconsistent(format!("oracle Hom for {m} has dimension {}", sp.total_dim())).into()),
    }
}

fn agreement(agrees: bool, detail: String) -> Option<OracleAgreement> {
    Some(OracleAgreement { agrees, detail })
}

fn cmd_hom(ctx: &Ctx, n: Option<usize>, d: Option<usize>, kronecker: bool, from: &str, to: &str, oracle: bool) -> Res<Report> {
    let (x, y) = (parse_object(from)?, parse_object(to)?);
    if kronecker || (x.is_kronecker() && y.is_kronecker()) {
        if !(x.is_kronecker() && y.is_kronecker()) {
            return Err(CliError::Usage("--kronecker needs Kronecker objects on both sides".into()));
        }
        let alg = build_kronecker_algebra(ctx.field)?;
        let sp = orbit_hom(&sum_module(&alg, None, &x)?, &sum_module(&alg, None, &y)?)?;
        let dims: Vec<(i64, usize)> = sp.components().iter().map(|(&k, c)| (k, c.dim())).collect();
        let text = format!("dim Hom({x}, {y}) = {}\nsupport: {:?}\n", sp.total_dim(), sp.support());
        let result = json!({
            "from": x.to_string(), "to": y.to_string(), "dimension": sp.total_dim(),
            "components": dims.iter().map(|&(degree, dim)| json!({"degree": degree, "dimension": dim})).collect::<Vec<_>>(),
        });
        return Ok(ctx.report("hom", Provenance::Oracle, None, text, result, None));
    }
    if !(x.is_star() && y.is_star()) {
        return Err(CliError::Usage("cannot mix star and Kronecker objects".into()));
    }
    let p = StarParams::new(
        n.ok_or_else(|| CliError::Usage("--n is required".into()))?,
        d.ok_or_else(|| CliError::Usage("--d is required".into()))?,
    )?;
    let mut basis = Vec::new();
    for s in &x.terms {
        for t in &y.terms {
            let m = dgstab_hom(p, s.canonical(p)?, t.canonical(p)?)?;
            if !m.is_zero() {
                basis.push(m);
            }
        }
    }
    let mut text = format!("dim Hom({x}, {y}) = {}\n", basis.len());
    for m in &basis {
        let _ = writeln!(text, "  {}: {} -> {}", m.symbol(), m.domain, m.codomain);
    }
    let result = json!({
        "from": x.to_string(), "to": y.to_string(), "dimension": basis.len(),
        "basis": basis.iter().map(|m| json!({
            "symbol": m.symbol(), "morphism": m.to_string(),
            "domain": m.domain.to_string(), "codomain": m.codomain.to_string(),
        })).collect::<Vec<_>>(),
    });
    let check = if oracle {
        let alg = build_star_algebra(ctx.field, p.n(), p.d())?;
        let sp = orbit_hom(&sum_module(&alg, Some(p), &x)?, &sum_module(&alg, Some(p), &y)?)?;
        agreement(sp.total_dim() == basis.len(), format!("orbit_hom dimension {}", sp.total_dim()))
    } else {
        None
    };
    Ok(ctx.report("hom", Provenance::ClosedForm, Some(p), text, result, check))
}

fn cmd_compose(ctx: &Ctx, a: &StarArgs, first: &str, second: &str, oracle: bool) -> Res<Report> {
    let p = star_params(a)?;
    let m1 = parse_morphism(p, first)?;
    let m2 = parse_morphism(p, second)?;
    let r = compose_dg(p, &m2, &m1)?;
    let text = format!("{r}\n");
    let result = json!({
        "first": m1.to_string(), "second": m2.to_string(), "composite": r.to_string(),
        "symbol": r.symbol(), "domain": r.domain.to_string(), "codomain": r.codomain.to_string(),
    });
    let check = if oracle {
        let alg = build_star_algebra(ctx.field, p.n(), p.d())?;
        let zero = match (generator(&alg, ctx.field, &m1)?, generator(&alg, ctx.field, &m2)?) {
            (Some(g1), Some(g2)) => {
                let c = orbit_compose(&g2, &g1)?;
                orbit_hom(g1.domain(), g2.codomain())?.is_zero_morphism(&c)?
            }
            _ => true,
        };
        let expected_zero = r.is_zero() || ctx.field.elem(r.scalar) == 0;
        agreement(zero == expected_zero, format!("oracle composite is {}", if zero { "zero" } else { "nonzero" }))
    } else {
        None
    };
    Ok(ctx.report("compose", Provenance::ClosedForm, Some(p), text, result, check))
}

fn cmd_normalize(ctx: &Ctx, a: &StarArgs, object: &str, oracle: bool) -> Res<Report> {
    let p = star_params(a)?;
    let t = single_term(&parse_object(object)?, "--object")?;
    let c = t.canonical(p)?;
    let text = format!("{c}\n");
    let result = json!({"input": t.to_string(), "canonical": c.to_string(), "l": c.l, "k": c.k});
    let check = if oracle {
        let alg = build_star_algebra(ctx.field, p.n(), p.d())?;
        let v = oracle_isomorphic(&term_module(&alg, p, &t)?, &object_module(&alg, c)?, ctx.seed)?;
        agreement(v == IsoVerdict::Yes, format!("isomorphism test: {v:?}"))
    } else {
        None
    };
    Ok(ctx.report("normalize", Provenance::ClosedForm, Some(p), text, result, check))
}

fn cmd_omega(ctx: &Ctx, a: &StarArgs, object: &str, power: i64, oracle: bool) -> Res<Report> {
    let p = star_params(a)?;
    let Term::Star { i, j, k } = single_term(&parse_object(object)?, "--object")? else {
        return Err(CliError::Usage("omega takes an M[i,j](k) term".into()));
    };
    let s = StarModuleSymbol::new(p, i, j, k)?;
    let r = omega_power(p, s, power);
    let text = format!("{r}\n");
    let result = json!({"input": s.to_string(), "power": power, "result": r.to_string()});
    let check = if oracle {
        let alg = build_star_algebra(ctx.field, p.n(), p.d())?;
        let mut w = star_module(&alg, i, j, k)?;
        for _ in 0..power.unsigned_abs() {
            w = if power > 0 { omega(&w) } else { omega_inverse(&w) };
        }
        let v = is_isomorphic(&w, &star_module(&alg, r.i, r.j, r.k)?, ctx.seed)?;
        agreement(v == IsoVerdict::Yes, format!("isomorphism test: {v:?}"))
    } else {
        None
    };
    Ok(ctx.report("omega", Provenance::ClosedForm, Some(p), text, result, check))
}

fn cmd_cone(ctx: &Ctx, a: &StarArgs, morphism: &str, oracle: bool) -> Res<Report> {
    let p = star_params(a)?;
    let m = parse_morphism(p, morphism)?;
    if m.is_zero() {
        return Err(CliError::Usage("cone needs a nonzero basis morphism".into()));
    }
    let t = cone(p, &m)?;
    let middle: Vec<String> = t.middle.iter().map(ToString::to_string).collect();
    let middle_text = if middle.is_empty() { "0".to_string() } else { middle.join(" + ") };
    let list = |ms: &[DgMorphism]| ms.iter().map(ToString::to_string).collect::<Vec<_>>();
    let text = format!(
        "{} --{}--> {} --[{}]--> {} --[{}]--> {}\n",
        t.source,
        t.first,
        t.target,
        list(&t.second).join(", "),
        middle_text,
        list(&t.third).join(", "),
        t.shifted_source
    );
    let result = json!({
        "morphism": m.to_string(),
        "source": t.source.to_string(), "target": t.target.to_string(),
        "middle": middle, "shifted_source": t.shifted_source.to_string(),
        "second": list(&t.second), "third": list(&t.third),
        "composites_vanish": t.is_exact_shaped(p)?,
    });
    let check = if oracle {
        let alg = build_star_algebra(ctx.field, p.n(), p.d())?;
        let orc = oracle_cone_middle(&alg, p, &m)?;
        let mut calc = t.middle.clone();
        calc.sort();
        let shown: Vec<String> = orc.iter().map(ToString::to_string).collect();
        agreement(orc == calc, format!("oracle middle term [{}]", shown.join(", ")))
    } else {
        None
    };
    Ok(ctx.report("cone", Provenance::ClosedForm, Some(p), text, result, check))
}

fn cmd_ar(ctx: &Ctx, a: &StarArgs, format: Format, json_out: bool) -> Res<Report> {
    let p = star_params(a)?;
    let q = ar_quiver(p)?;
    let value = serde_json::to_value(&q).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = match (format, json_out) {
        (Format::Dot, false) => q.to_dot(),
        _ => format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")),
    };
    Ok(ctx.report("ar-quiver", Provenance::ClosedForm, Some(p), text, value, None))
}

fn cmd_oracle_check(ctx: &Ctx, n_max: usize, d_max: usize) -> Res<Report> {
    if n_max < 2 {
        return Err(CliError::Usage("--n-max must be at least 2".into()));
    }
    let mut rows = Vec::new();
    let mut text = format!("{:>3} {:>3}  {:<12} {:>8} {:>8}\n", "n", "d", "check", "items", "failures");
    let mut failures = Vec::new();
    for n in 2..=n_max {
        for d in 0..=d_max {
            let p = StarParams::new(n, d)?;
            let (dims, support) = hom_sweep(ctx.field, p, ctx.exec)?;
            let checks: [(&str, Check); 6] = [
                ("hom", dims),
                ("support", support),
                ("composition", composition_sweep(ctx.field, p, ctx.exec)?),
                ("periodicity", periodicity_sweep(ctx.field, p, ctx.seed)?),
                ("cone", cone_sweep(ctx.field, p, ctx.exec)?),
                ("ar-quiver", ar_sweep(p)?),
            ];
            for (name, c) in checks {
                let _ = writeln!(text, "{n:>3} {d:>3}  {name:<12} {:>8} {:>8}", c.checked, c.failures.len());
                failures.extend(c.failures.iter().cloned());
                rows.push(json!({"n": n, "d": d, "check": name, "items": c.checked, "failures": c.failures}));
            }
        }
    }
    let passed = failures.is_empty();
    if passed {
        text.push_str("all Hom/composition checks passed\n");
    } else {
        for f in failures.iter().take(20) {
            let _ = writeln!(text, "FAIL {f}");
        }
    }
    let result = json!({"n_max": n_max, "d_max": d_max, "passed": passed, "rows": rows});
    let mut r = ctx.report("oracle-check", Provenance::Oracle, None, text, result, None);
    r.mismatch = !passed;
    Ok(r)
}

fn cmd_kronecker(ctx: &Ctx, tables: bool, m_max: usize, k_max: i64) -> Res<Report> {
    if tables {
        let ranges = TableRanges { m_max, k_max };
        let mut all = grstab_tables(ctx.field, ranges, ctx.exec)?;
        all.extend(dgstab_tables(ctx.field, ranges, ctx.exec)?);
        let mut text = String::new();
        for t in &all {
            let bad = t.mismatches().count();
            let _ = writeln!(
                text,
                "{:<8} {:<48} {:>4} cells  {}",
                format!("{:?}", t.category),
                t.formula,
                t.cells.len(),
                if bad == 0 { "ok".to_string() } else { format!("{bad} MISMATCHES") }
            );
            for c in t.mismatches().take(5) {
                let _ = writeln!(text, "    Hom({}, {}) = {}, expected {}", c.from, c.to, c.computed, c.expected);
            }
        }
        let passed = all.iter().all(|t| t.passed());
        let result = json!({"kind": "tables", "passed": passed, "tables": all});
        let mut r = ctx.report("kronecker", Provenance::Oracle, None, text, result, None);
        r.mismatch = !passed;
        return Ok(r);
    }
    let rep = counterexample_report(ctx.field, ctx.exec)?;
    let mut text = String::new();
    for row in &rep.hom_dims_k {
        let _ = writeln!(text, "dim Hom(K, {}) = {} (expected {})", row.target, row.computed, row.expected);
    }
    for c in &rep.hom_dims_k_vs_candidates {
        let by = c.distinguished_by.as_deref().unwrap_or("nothing");
        let _ = writeln!(text, "candidate {:<20} excluded by {by}", c.candidate);
    }
    let _ = writeln!(text, "catalogue objects matching Hom(-, S(n)): {}", rep.sweep_survivors.join(", "));
    let _ = writeln!(text, "excluded: {}", rep.excluded_candidates.join(", "));
    let _ = writeln!(
        text,
        "verdict: {}",
        if rep.verdict { "K lies outside the image of F_A" } else { "not established" }
    );
    let passed = rep.verdict;
    let result = json!({"kind": "counterexample", "passed": passed, "report": rep});
    let mut r = ctx.report("kronecker", Provenance::Oracle, None, text, result, None);
    r.mismatch = !passed;
    Ok(r)
}

/// Run a parsed command line.
pub fn execute(cli: &Cli) -> Res<Report> {
    let field = match cli.field_prime {
        Some(p) => PrimeField::new(p)?,
        None => PrimeField::default(),
    };
    let ctx = Ctx {
        field,
        seed: cli.seed,
        exec: if cli.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    match &cli.command {
        Command::Hom { n, d, kronecker, from, to, oracle } => cmd_hom(&ctx, *n, *d, *kronecker, from, to, *oracle),
        Command::Compose { star, first, second, oracle } => cmd_compose(&ctx, star, first, second, *oracle),
        Command::Normalize { star, object, oracle } => cmd_normalize(&ctx, star, object, *oracle),
        Command::Omega { star, object, power, oracle } => cmd_omega(&ctx, star, object, *power, *oracle),
        Command::Cone { star, morphism, oracle } => cmd_cone(&ctx, star, morphism, *oracle),
        Command::ArQuiver { star, format } => cmd_ar(&ctx, star, *format, cli.json),
        Command::OracleCheck { n_max, d_max } => cmd_oracle_check(&ctx, *n_max, *d_max),
        Command::Kronecker { tables, m_max, k_max, .. } => cmd_kronecker(&ctx, *tables, *m_max, *k_max),
    }
}

/// Parse arguments, run, print, and return the process exit code.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: std::io::Write,
    E: std::io::Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(if code == 0 { out as &mut dyn std::io::Write } else { err }, "{e}");
            return code;
        }
    };
    match execute(&cli) {
        Ok(r) => {
            if cli.json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&r.envelope).expect("serializable"));
            } else {
                let _ = write!(out, "{}", r.text);
            }
            if r.mismatch {
                3
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
