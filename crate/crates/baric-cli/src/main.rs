//! `baric` — exact computations on commutative nonassociative algebras with
//! a weight homomorphism, driven by JSON algebra files.
//!
//! Exit codes: 0 on success/pass, 1 when an identity fails or a scan finds a
//! counterexample (the witness is printed), 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use baric_core::{
    algebra_to_file, conjecture_scan, default_eigenvalue_probes, derived_series,
    exhaustive_check, idempotent_from_formula, idempotents_exhaustive, is_idempotent, load_file,
    nil_element_check, peirce_decompose, peirce_verify_rules, polarized_check, remark_check,
    star_inverse, Algebra, AlgebraFile, BaricAlgebra, Element, Field, IdentityId, IdentityReport,
    LoadedAlgebra, NilOutcome, PeirceCase, ScanMode, SearchConfig, Subspace, Weight, Witness,
    DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "baric",
    version,
    about = "Exact algebra computations: identities, gametization, Peirce decompositions, and conjecture scans",
    after_help = "Algebra files are JSON: {\"field\": \"Q\" | {\"Fp\": p}, \"dim\": n, \
                  \"products\": [{\"i\", \"j\", \"terms\": [{\"k\", \"c\"}]}], \"weight\"?: [...]}.\n\
                  The BARIC_BUDGET environment variable overrides the exhaustive-evaluation budget."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Polarize,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CaseArg {
    Omega,
    Omega3,
    Omegas,
}

impl CaseArg {
    fn to_case(self) -> PeirceCase {
        match self {
            CaseArg::Omega => PeirceCase::Omega,
            CaseArg::Omega3 => PeirceCase::Omega3,
            CaseArg::Omegas => PeirceCase::Omegas,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a catalog identity on an algebra file.
    Verify {
        /// omega3 | omega | omegas | omega2s | sqsq | jordan | general:a,b,g
        #[arg(long)]
        identity: String,
        #[arg(long, value_enum, default_value_t = Method::Polarize)]
        method: Method,
        /// Machine-readable report on stdout.
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Deform the product by a gametization parameter (requires a weight).
    Gametize {
        /// Scalar text, e.g. "2" or "-1/3"; must differ from 1.
        #[arg(long)]
        gamma: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Adjoin a formal unit at coordinate 0.
    Unitize {
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Build the unital hull 1F + A with x.y = (3/4) w(x) w(y) 1 + xy.
    Jordanize {
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Apply the star transform x*y = xy - (w(x)y + w(y)x)/2, or with
    /// --inverse rebuild the weighted algebra from a star product and the
    /// file's weight candidate.
    Star {
        #[arg(long)]
        inverse: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Produce idempotents: --from applies the closed cubic formula at a
    /// weight-1 point, --exhaustive scans a finite-field algebra.
    Idempotent {
        /// Comma-separated coordinates of the seed point.
        #[arg(long, conflicts_with = "exhaustive")]
        from: Option<String>,
        /// Formula family for --from: omega | omega3 | omegas.
        #[arg(long)]
        identity: Option<String>,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Split the weight kernel into eigenspaces of a given idempotent.
    Peirce {
        /// Comma-separated coordinates of the idempotent.
        #[arg(long)]
        e: String,
        /// Also verify the multiplication rules of the named case.
        #[arg(long, value_enum)]
        case: Option<CaseArg>,
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Compute the derived series and report solvability.
    Solvable {
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Print principal powers x^1..x^max and the nil verdict.
    Powers {
        /// Comma-separated coordinates.
        #[arg(long)]
        x: String,
        #[arg(long)]
        max: usize,
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Check that generated subalgebras of a square-of-square-zero algebra
    /// square to zero, on seeded random samples.
    Remark {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Scan small algebras over F_p for counterexamples to "(x^2)^2 = 0
    /// implies solvable".
    Scan {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        dim: usize,
        /// Defaults to random when --samples is given, exhaustive otherwise.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability that a structure constant is nonzero (random mode).
        #[arg(long, default_value = "1/2")]
        density: String,
        /// JSON Lines log of the satisfying algebras.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Log every tested algebra, not only the satisfying ones.
        #[arg(long)]
        log_all: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

type CliResult = Result<u8, String>;

fn stringify(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn budget() -> Result<u64, String> {
    match std::env::var("BARIC_BUDGET") {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map_err(|_| format!("BARIC_BUDGET must be an integer, got {text:?}")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Run a command body over whichever field the file declares.
macro_rules! with_algebra {
    ($path:expr, $validate:expr, |$alg:ident, $wt:ident| $body:expr) => {{
        let file = AlgebraFile::read($path).map_err(stringify)?;
        match load_file(&file, $validate).map_err(stringify)? {
            LoadedAlgebra::Q { algebra, weight } => {
                let $alg = algebra;
                let $wt = weight;
                $body
            }
            LoadedAlgebra::Prime { algebra, weight } => {
                let $alg = algebra;
                let $wt = weight;
                $body
            }
        }
    }};
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Verify {
            identity,
            method,
            json,
            file,
        } => with_algebra!(&file, true, |alg, wt| {
            let id = parse_identity(alg.field(), &identity)?;
            cmd_verify(&alg, wt.as_ref(), &id, method, json)
        }),
        Command::Gametize {
            gamma,
            output,
            json,
            file,
        } => with_algebra!(&file, true, |alg, wt| {
            let b = require_weight(alg, wt)?;
            let gamma = b.field().parse(&gamma).map_err(stringify)?;
            let out = b.gametize(&gamma).map_err(stringify)?;
            let file = algebra_to_file(out.algebra(), Some(out.weight()));
            emit_algebra("gametize", &file, output.as_deref(), json)
        }),
        Command::Unitize {
            output,
            json,
            file,
        } => with_algebra!(&file, true, |alg, _wt| {
            let file = algebra_to_file(&alg.unitize(), None);
            emit_algebra("unitize", &file, output.as_deref(), json)
        }),
        Command::Jordanize {
            output,
            json,
            file,
        } => with_algebra!(&file, true, |alg, wt| {
            let b = require_weight(alg, wt)?;
            let file = algebra_to_file(&b.jordanize(), None);
            emit_algebra("jordanize", &file, output.as_deref(), json)
        }),
        Command::Star {
            inverse,
            output,
            json,
            file,
        } => {
            if inverse {
                // the weight in the file is a candidate for the rebuilt
                // product, not a weight of the star algebra itself
                with_algebra!(&file, false, |alg, wt| {
                    let w = wt.ok_or("star --inverse needs a weight candidate in the file")?;
                    let b = star_inverse(&alg, w).map_err(stringify)?;
                    let out = algebra_to_file(b.algebra(), Some(b.weight()));
                    emit_algebra("star-inverse", &out, output.as_deref(), json)
                })
            } else {
                with_algebra!(&file, true, |alg, wt| {
                    let b = require_weight(alg, wt)?;
                    let star = b.star_transform();
                    let out = algebra_to_file(&star.algebra, None);
                    if !json {
                        println!(
                            "star square span: dimension {} of {}",
                            star.square_span.dim(),
                            star.algebra.dim()
                        );
                        for row in star.square_span.basis_rows() {
                            println!(
                                "  {}",
                                star.algebra.format_element(&Element::new(row.to_vec()))
                            );
                        }
                    }
                    emit_algebra_with(
                        "star",
                        &out,
                        output.as_deref(),
                        json,
                        json!({
                            "square_span_dim": star.square_span.dim(),
                            "square_span": subspace_rows(&star.algebra, &star.square_span),
                        }),
                    )
                })
            }
        }
        Command::Idempotent {
            from,
            identity,
            exhaustive,
            json,
            file,
        } => with_algebra!(&file, true, |alg, wt| {
            cmd_idempotent(&alg, wt.as_ref(), from.as_deref(), identity.as_deref(), exhaustive, json)
        }),
        Command::Peirce {
            e,
            case,
            json,
            file,
        } => with_algebra!(&file, true, |alg, wt| {
            let b = require_weight(alg, wt)?;
            let e = parse_coords(b.algebra(), &e)?;
            cmd_peirce(&b, &e, case, json)
        }),
        Command::Solvable { json, file } => with_algebra!(&file, true, |alg, _wt| {
            cmd_solvable(&alg, json)
        }),
        Command::Powers { x, max, json, file } => with_algebra!(&file, true, |alg, _wt| {
            let x = parse_coords(&alg, &x)?;
            cmd_powers(&alg, &x, max, json)
        }),
        Command::Remark {
            samples,
            seed,
            json,
            file,
        } => with_algebra!(&file, true, |alg, _wt| {
            let report = remark_check(&alg, samples, seed).map_err(stringify)?;
            report_identity(&alg, "remark", &report, json);
            Ok(if report.passed { 0 } else { 1 })
        }),
        Command::Scan {
            p,
            dim,
            mode,
            samples,
            seed,
            density,
            log,
            log_all,
            workers,
            json,
        } => cmd_scan(
            p, dim, mode, samples, seed, &density, log, log_all, workers, json,
        ),
    }
}

fn require_weight<F: Field>(
    alg: Algebra<F>,
    wt: Option<Weight<F>>,
) -> Result<BaricAlgebra<F>, String> {
    let w = wt.ok_or("this command needs a weighted algebra (add a \"weight\" array)")?;
    BaricAlgebra::new(alg, w).map_err(stringify)
}

fn parse_identity<F: Field>(field: &F, text: &str) -> Result<IdentityId<F>, String> {
    match text {
        "omega3" => Ok(IdentityId::Omega3),
        "omega" => Ok(IdentityId::Omega),
        "omegas" => Ok(IdentityId::Omegas),
        "omega2s" => Ok(IdentityId::Omega2s),
        "sqsq" => Ok(IdentityId::SqSqZero),
        "jordan" => Ok(IdentityId::Jordan),
        other => {
            let params = other
                .strip_prefix("general:")
                .ok_or_else(|| format!("unknown identity {other:?}"))?;
            let parts: Vec<&str> = params.split(',').collect();
            if parts.len() != 3 {
                return Err("general takes three scalars: general:a,b,g".into());
            }
            let alpha = field.parse(parts[0].trim()).map_err(stringify)?;
            let beta = field.parse(parts[1].trim()).map_err(stringify)?;
            let gamma = field.parse(parts[2].trim()).map_err(stringify)?;
            IdentityId::general(field, alpha, beta, gamma).map_err(stringify)
        }
    }
}

fn parse_coords<F: Field>(alg: &Algebra<F>, text: &str) -> Result<Element<F>, String> {
    let texts: Vec<String> = text.split(',').map(|t| t.trim().to_owned()).collect();
    alg.parse_element(&texts).map_err(stringify)
}

fn coords_json<F: Field>(field: &F, x: &Element<F>) -> serde_json::Value {
    json!(x.coords().iter().map(|c| field.format(c)).collect::<Vec<_>>())
}

fn subspace_rows<F: Field>(alg: &Algebra<F>, s: &Subspace<F>) -> serde_json::Value {
    json!(s
        .basis_rows()
        .map(|row| alg.format_element(&Element::new(row.to_vec())))
        .collect::<Vec<_>>())
}

fn witness_json<F: Field>(alg: &Algebra<F>, witness: &Witness<F>) -> serde_json::Value {
    let f = alg.field();
    match witness {
        Witness::Point { x, y, residual } => json!({
            "kind": "point",
            "x": coords_json(f, x),
            "y": y.as_ref().map(|y| coords_json(f, y)),
            "residual": coords_json(f, residual),
            "pretty": {
                "x": alg.format_element(x),
                "y": y.as_ref().map(|y| alg.format_element(y)),
                "residual": alg.format_element(residual),
            },
        }),
        Witness::MultilinearTuple { slots, residual } => json!({
            "kind": "multilinear-tuple",
            "slots": slots
                .iter()
                .map(|tuple| tuple.iter().map(|e| alg.format_element(e)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "residual": coords_json(f, residual),
        }),
    }
}

fn report_identity<F: Field>(
    alg: &Algebra<F>,
    label: &str,
    report: &IdentityReport<F>,
    json_mode: bool,
) {
    if json_mode {
        let out = json!({
            "command": label,
            "passed": report.passed,
            "method": report.method.as_str(),
            "context": report.context,
            "witness": report.witness.as_ref().map(|w| witness_json(alg, w)),
        });
        println!("{out}");
        return;
    }
    let verdict = if report.passed { "PASS" } else { "FAIL" };
    println!("{label}: {verdict} (method {})", report.method.as_str());
    if let Some(context) = &report.context {
        println!("  rule: {context}");
    }
    match &report.witness {
        None => {}
        Some(Witness::Point { x, y, residual }) => {
            println!("  witness x = {}", alg.format_element(x));
            if let Some(y) = y {
                println!("  witness y = {}", alg.format_element(y));
            }
            println!("  residual  = {}", alg.format_element(residual));
        }
        Some(Witness::MultilinearTuple { slots, residual }) => {
            for (i, tuple) in slots.iter().enumerate() {
                let rendered: Vec<String> =
                    tuple.iter().map(|e| alg.format_element(e)).collect();
                println!("  multilinear slot {i}: ({})", rendered.join(", "));
            }
            println!("  residual  = {}", alg.format_element(residual));
        }
    }
}

fn cmd_verify<F: Field>(
    alg: &Algebra<F>,
    wt: Option<&Weight<F>>,
    id: &IdentityId<F>,
    method: Method,
    json_mode: bool,
) -> CliResult {
    let report = match method {
        Method::Polarize => polarized_check(alg, wt, id).map_err(stringify)?,
        Method::Exhaustive => exhaustive_check(alg, wt, id, budget()?).map_err(stringify)?,
    };
    report_identity(alg, &format!("identity {}", id.name()), &report, json_mode);
    Ok(if report.passed { 0 } else { 1 })
}

fn emit_algebra(label: &str, file: &AlgebraFile, output: Option<&Path>, json_mode: bool) -> CliResult {
    emit_algebra_with(label, file, output, json_mode, serde_json::Value::Null)
}

fn emit_algebra_with(
    label: &str,
    file: &AlgebraFile,
    output: Option<&Path>,
    json_mode: bool,
    extra: serde_json::Value,
) -> CliResult {
    if let Some(path) = output {
        file.write(path).map_err(stringify)?;
        if json_mode {
            let mut out = json!({"command": label, "wrote": path.display().to_string()});
            merge(&mut out, extra);
            println!("{out}");
        } else {
            println!("{label}: wrote {}", path.display());
        }
    } else if json_mode {
        let mut out = json!({"command": label, "algebra": file});
        merge(&mut out, extra);
        println!("{out}");
    } else {
        println!("{}", file.to_json_pretty());
    }
    Ok(0)
}

fn merge(target: &mut serde_json::Value, extra: serde_json::Value) {
    if let (Some(map), serde_json::Value::Object(more)) = (target.as_object_mut(), extra) {
        map.extend(more);
    }
}

fn cmd_idempotent<F: Field>(
    alg: &Algebra<F>,
    wt: Option<&Weight<F>>,
    from: Option<&str>,
    identity: Option<&str>,
    exhaustive: bool,
    json_mode: bool,
) -> CliResult {
    if exhaustive {
        let found =
            idempotents_exhaustive(alg, wt, budget()?).map_err(stringify)?;
        if json_mode {
            let out = json!({
                "command": "idempotent",
                "mode": "exhaustive",
                "count": found.len(),
                "idempotents": found
                    .iter()
                    .map(|e| coords_json(alg.field(), e))
                    .collect::<Vec<_>>(),
            });
            println!("{out}");
        } else {
            println!("{} nonzero idempotent(s)", found.len());
            for e in &found {
                println!("  {}", alg.format_element(e));
            }
        }
        return Ok(0);
    }

    let Some(coords) = from else {
        return Err("pass --from <coords> with --identity, or --exhaustive".into());
    };
    let id = parse_identity(alg.field(), identity.unwrap_or("omega"))?;
    let x = parse_coords(alg, coords)?;
    let wt = wt.ok_or("the idempotent formula needs a weighted algebra")?;
    let b = BaricAlgebra::new(alg.clone(), wt.clone()).map_err(stringify)?;
    let e = idempotent_from_formula(&b, &x, &id).map_err(stringify)?;
    let confirmed = is_idempotent(alg, &e).map_err(stringify)?;
    if json_mode {
        let out = json!({
            "command": "idempotent",
            "mode": "formula",
            "identity": id.name(),
            "element": coords_json(alg.field(), &e),
            "pretty": alg.format_element(&e),
            "idempotent": confirmed,
        });
        println!("{out}");
    } else {
        println!("formula value: {}", alg.format_element(&e));
        println!(
            "idempotent: {}",
            if confirmed { "yes" } else { "NO (the algebra does not satisfy the identity)" }
        );
    }
    Ok(if confirmed { 0 } else { 1 })
}

fn cmd_peirce<F: Field>(
    b: &BaricAlgebra<F>,
    e: &Element<F>,
    case: Option<CaseArg>,
    json_mode: bool,
) -> CliResult {
    let f = b.field().clone();
    let probes = default_eigenvalue_probes(&f);
    let dec = peirce_decompose(b, e, &probes).map_err(stringify)?;
    let rules = match case {
        Some(arg) => Some(peirce_verify_rules(b, &dec, arg.to_case()).map_err(stringify)?),
        None => None,
    };
    if json_mode {
        let out = json!({
            "command": "peirce",
            "kernel_dim": dec.kernel.dim(),
            "residual_dim": dec.residual_dim,
            "parts": dec.parts.iter().map(|(lam, part)| json!({
                "eigenvalue": f.format(lam),
                "dim": part.dim(),
                "basis": subspace_rows(b.algebra(), part),
            })).collect::<Vec<_>>(),
            "rules": rules.as_ref().map(|r| json!({
                "case": case.map(|c| c.to_case().name()),
                "passed": r.passed,
                "context": r.context,
            })),
        });
        println!("{out}");
    } else {
        println!(
            "weight kernel has dimension {}; residual {}",
            dec.kernel.dim(),
            dec.residual_dim
        );
        for (lam, part) in &dec.parts {
            if part.dim() == 0 {
                continue;
            }
            let rows: Vec<String> = part
                .basis_rows()
                .map(|row| b.algebra().format_element(&Element::new(row.to_vec())))
                .collect();
            println!("  N({}) = span{{{}}}", f.format(lam), rows.join(", "));
        }
        if let Some(r) = &rules {
            println!(
                "rules ({}): {}",
                case.expect("case set").to_case().name(),
                if r.passed { "PASS" } else { "FAIL" }
            );
            if let Some(ctx) = &r.context {
                println!("  failing rule: {ctx}");
            }
        }
    }
    Ok(match &rules {
        Some(r) if !r.passed => 1,
        _ => 0,
    })
}

fn cmd_solvable<F: Field>(alg: &Algebra<F>, json_mode: bool) -> CliResult {
    let series = derived_series(alg);
    if json_mode {
        let out = json!({
            "command": "solvable",
            "solvable": series.solvable,
            "depth": series.depth,
            "terms": series.terms.iter().map(|t| json!({
                "dim": t.dim(),
                "basis": subspace_rows(alg, t),
            })).collect::<Vec<_>>(),
        });
        println!("{out}");
    } else {
        for (k, term) in series.terms.iter().enumerate() {
            let rows: Vec<String> = term
                .basis_rows()
                .map(|row| alg.format_element(&Element::new(row.to_vec())))
                .collect();
            let body = if term.is_zero() {
                "0".to_owned()
            } else {
                format!("span{{{}}}", rows.join(", "))
            };
            println!("A^({}) = {body}", k + 1);
        }
        match series.depth {
            Some(depth) => println!("solvable (depth {depth})"),
            None => println!("not solvable (series stabilized at a nonzero term)"),
        }
    }
    Ok(0)
}

fn cmd_powers<F: Field>(
    alg: &Algebra<F>,
    x: &Element<F>,
    max: usize,
    json_mode: bool,
) -> CliResult {
    if max < 2 {
        return Err("--max must be at least 2".into());
    }
    let mut powers = Vec::with_capacity(max);
    let mut current = x.clone();
    powers.push(current.clone());
    for _ in 2..=max {
        current = alg.multiply(&current, x).map_err(stringify)?;
        powers.push(current.clone());
    }
    let outcome = nil_element_check(alg, x, max).map_err(stringify)?;
    if json_mode {
        let out = json!({
            "command": "powers",
            "powers": powers.iter().map(|p| coords_json(alg.field(), p)).collect::<Vec<_>>(),
            "nil": matches!(outcome, NilOutcome::Nil { .. }),
            "outcome": match &outcome {
                NilOutcome::Nil { power } => json!({"kind": "nil", "power": power}),
                NilOutcome::NotNil { first, repeat, value } => json!({
                    "kind": "not-nil",
                    "first": first,
                    "repeat": repeat,
                    "value": coords_json(alg.field(), value),
                }),
                NilOutcome::Inconclusive => json!({"kind": "inconclusive"}),
            },
        });
        println!("{out}");
    } else {
        for (n, p) in powers.iter().enumerate() {
            println!("x^{} = {}", n + 1, alg.format_element(p));
        }
        match &outcome {
            NilOutcome::Nil { power } => println!("nil: x^{power} = 0"),
            NilOutcome::NotNil {
                first,
                repeat,
                value,
            } => println!(
                "not nil: x^{repeat} = x^{first} = {} (powers cycle forever)",
                alg.format_element(value)
            ),
            NilOutcome::Inconclusive => {
                println!("inconclusive within bound {max} (no zero, no repetition)")
            }
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    p: u64,
    dim: usize,
    mode: Option<ModeArg>,
    samples: Option<u64>,
    seed: u64,
    density: &str,
    log: Option<PathBuf>,
    log_all: bool,
    workers: usize,
    json_mode: bool,
) -> CliResult {
    let mode = match (mode, samples) {
        (Some(ModeArg::Exhaustive), _) => ScanMode::Exhaustive,
        (Some(ModeArg::Random), _) => ScanMode::Random,
        (Some(ModeArg::Structured), _) => ScanMode::Structured,
        (None, Some(_)) => ScanMode::Random,
        (None, None) => ScanMode::Exhaustive,
    };
    if mode == ScanMode::Random && samples.is_none() {
        return Err("random mode needs --samples".into());
    }
    let density = parse_density(density)?;
    let cfg = SearchConfig {
        p,
        dim,
        mode,
        seed,
        density,
        samples: samples.unwrap_or(0),
        workers,
        log_path: log,
        log_all,
        budget: budget()?,
    };
    let summary = conjecture_scan(&cfg).map_err(stringify)?;
    let mode_name = match mode {
        ScanMode::Exhaustive => "exhaustive",
        ScanMode::Random => "random",
        ScanMode::Structured => "structured",
    };
    if json_mode {
        let out = json!({
            "command": "scan",
            "mode": mode_name,
            "p": p,
            "dim": dim,
            "tested": summary.tested,
            "satisfied_sqsq": summary.satisfied_sqsq,
            "solvable": summary.solvable,
            "counterexamples": summary.counterexamples,
        });
        println!("{out}");
    } else {
        println!("scan complete: {} table(s) over F{p}, dim {dim} ({mode_name} mode)", summary.tested);
        println!("  satisfying (x^2)^2 = 0: {}", summary.satisfied_sqsq);
        println!("  solvable among those:   {}", summary.solvable);
        println!("  counterexamples:        {}", summary.counterexamples);
        println!("counts are of structure-constant tables, not isomorphism classes");
        if summary.counterexamples > 0 {
            println!("COUNTEREXAMPLE FOUND: a non-solvable algebra satisfying (x^2)^2 = 0;");
            println!("see the log for the full structure constants");
        }
    }
    Ok(if summary.counterexamples > 0 { 1 } else { 0 })
}

fn parse_density(text: &str) -> Result<(u64, u64), String> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: u64 = num
        .trim()
        .parse()
        .map_err(|_| format!("invalid density numerator {num:?}"))?;
    let den: u64 = den
        .trim()
        .parse()
        .map_err(|_| format!("invalid density denominator {den:?}"))?;
    if den == 0 || num > den {
        return Err(format!("density {num}/{den} is not a rational in [0, 1]"));
    }
    Ok((num, den))
}
