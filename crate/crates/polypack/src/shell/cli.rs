use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::apollonian::{generate_cluster, perfect_square_sequence, seed_from_curvatures};
use crate::descartes::{
    flag_curvatures, flag_relation_sides, integrality_condition, scaled_residual, tangent_cliques, Certificate,
};
use crate::lorentz::Ball;
use crate::numeric::{Field, Ring, Scalar};
use crate::packing::{centered_projection, dual, first_overlap, mobius_spectra, project, BallArrangement};
use crate::polytope::{regular_edge_scribed, Solid};

use super::document::{Num, PackingDocument, SeedDoc};
use super::render::{render_svg, RenderSpec};
use super::ShellError;

/// Relative `--out` paths are resolved against this directory when set.
const OUT_DIR_VAR: &str = "POLYPACK_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "polypack", version, about = "Polytopal ball packings in the Lorentzian model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Centering {
    Vertex,
    Edge,
    Face,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Descartes,
    Soddy,
    Flags,
    Packing,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ball arrangement projection of an edge-scribed solid.
    Project {
        #[arg(long)]
        solid: Solid,
        #[arg(long, value_enum, default_value = "none")]
        center: Centering,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dual arrangement of a document that carries a face lattice.
    Dual {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigenvalues of the Gramian with multiplicities.
    Spectra {
        #[arg(long)]
        solid: Solid,
    },
    /// Apollonian cluster from three consecutive curvatures.
    Cluster {
        #[arg(long)]
        solid: Solid,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
        initial: Vec<String>,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Curvatures of the perfect-square sequence.
    Squares {
        #[arg(long)]
        p: usize,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
    },
    /// Checks residuals of a document; exit status 1 on failure.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<Check>,
        #[arg(long, default_value_t = crate::numeric::FLOAT_TOL)]
        tol: f64,
    },
    /// Integrality certificate for a Platonic packing.
    Integrality {
        #[arg(long)]
        solid: Solid,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
        initial: Vec<String>,
        #[arg(long = "certify-depth")]
        certify_depth: Option<usize>,
    },
    /// Draws a planar document as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Runs the command line and returns the process exit status: 0 on
/// success, 1 when a verification fails, 2 for usage and input errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, ShellError> {
    match cmd {
        Command::Project { solid, center, mode, out } => {
            let doc = project_doc(solid, center, mode)?;
            write_output(out.as_deref(), &doc.to_json())?;
            Ok(0)
        }
        Command::Dual { input, out } => {
            let doc = read_doc(&input)?;
            let d = with_field!(doc.field()?, S => dual_doc::<S>(&doc))?;
            write_output(out.as_deref(), &d.to_json())?;
            Ok(0)
        }
        Command::Spectra { solid } => {
            let spec = mobius_spectra(solid)?;
            let parts: Vec<String> = spec.iter().map(|(x, m)| format!("{}:{m}", format_eigenvalue(*x))).collect();
            println!("{}", parts.join(" "));
            Ok(0)
        }
        Command::Cluster { solid, initial, depth, mode, out } => {
            let field = field_for(solid, mode)?;
            let doc = with_field!(field, S => cluster_doc::<S>(solid, &initial, depth))?;
            write_output(out.as_deref(), &doc.to_json())?;
            Ok(0)
        }
        Command::Squares { p, n_max, mode } => {
            let field = match (mode, p) {
                (Mode::Float, _) => Field::Float,
                (Mode::Exact, 3 | 4) => Field::Quadratic(2),
                (Mode::Exact, 5) => Field::Quadratic(5),
                _ => return Err(ShellError::Usage(format!("--p must be 3, 4 or 5, got {p}"))),
            };
            with_field!(field, S => squares::<S>(p, n_max))
        }
        Command::Verify { input, checks, tol } => {
            let doc = read_doc(&input)?;
            let checks = if checks.is_empty() {
                vec![Check::Packing, Check::Soddy, Check::Descartes, Check::Flags]
            } else {
                checks
            };
            with_field!(doc.field()?, S => verify::<S>(&doc, &checks, tol))
        }
        Command::Integrality { solid, initial, certify_depth } => {
            let field = field_for(solid, Mode::Exact)?;
            with_field!(field, S => integrality::<S>(solid, &initial, certify_depth))
        }
        Command::Render { input, spec, out } => {
            let doc = read_doc(&input)?;
            let spec = match spec {
                Some(p) => serde_json::from_str(&std::fs::read_to_string(&p)?)
                    .map_err(|e| ShellError::Input(format!("bad render spec: {e}")))?,
                None => RenderSpec::fit(&doc)?,
            };
            write_output(out.as_deref(), &render_svg(&doc, &spec)?)?;
            Ok(0)
        }
    }
}

fn read_doc(path: &Path) -> Result<PackingDocument, ShellError> {
    PackingDocument::from_json(&std::fs::read_to_string(path)?)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), ShellError> {
    match out {
        Some(p) => {
            let path = match std::env::var_os(OUT_DIR_VAR) {
                Some(dir) if p.is_relative() => Path::new(&dir).join(p),
                _ => p.to_path_buf(),
            };
            std::fs::write(path, text)?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

/// The exact field hosting a solid's packings.
fn field_for(solid: Solid, mode: Mode) -> Result<Field, ShellError> {
    if mode == Mode::Float {
        return Ok(Field::Float);
    }
    match solid {
        Solid::Simplex(3) | Solid::Cube(_) | Solid::CrossPolytope(_) => Ok(Field::Quadratic(2)),
        Solid::Icosahedron | Solid::Dodecahedron => Ok(Field::Quadratic(5)),
        s => Err(ShellError::Usage(format!("no exact field hosts {s}; use --mode float"))),
    }
}

fn format_eigenvalue(x: f64) -> String {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

/// Reads `1/2`, `3√2`, `2phi`, `φ+1`, `3/2+1/2√5` and sums of such terms.
pub(crate) fn parse_value<S: Scalar>(text: &str) -> Result<S, ShellError> {
    let bad = || ShellError::Usage(format!("cannot read value {text:?}"));
    let s: String = text.replace('φ', "phi").replace("sqrt", "√").chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let mut cuts: Vec<usize> = s
        .char_indices()
        .filter(|&(i, c)| i > 0 && (c == '+' || c == '-') && !s[..i].ends_with(['e', 'E']))
        .map(|(i, _)| i)
        .collect();
    cuts.insert(0, 0);
    cuts.push(s.len());
    let mut total = S::zero();
    for w in cuts.windows(2) {
        let term = &s[w[0]..w[1]];
        let (body, neg) = match term.strip_prefix('-') {
            Some(t) => (t, true),
            None => (term.strip_prefix('+').unwrap_or(term), false),
        };
        let coef = |c: &str| -> Result<BigRational, ShellError> {
            let c = c.trim_end_matches('*');
            if c.is_empty() {
                return Ok(BigRational::one());
            }
            let (n, d) = c.split_once('/').unwrap_or((c, "1"));
            let n = n.parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        };
        let value = if let Some(c) = body.strip_suffix("phi") {
            let half = coef(c)? / BigRational::from_integer(2.into());
            S::from_surd(&half, &half, 5)?
        } else if let Some((c, m)) = body.split_once('√') {
            let m: i64 = m.parse().map_err(|_| bad())?;
            S::from_surd(&BigRational::zero(), &coef(c)?, m)?
        } else if body.contains('.') || body.contains(['e', 'E']) {
            S::from_f64(body.parse().map_err(|_| bad())?)?
        } else {
            S::from_surd(&coef(body)?, &BigRational::zero(), 2)?
        };
        total = if neg { total - value } else { total + value };
    }
    Ok(total)
}

fn triple<S: Scalar>(initial: &[String]) -> Result<[S; 3], ShellError> {
    if initial.len() != 3 {
        return Err(ShellError::Usage(format!("--initial needs three curvatures, got {}", initial.len())));
    }
    Ok([parse_value(&initial[0])?, parse_value(&initial[1])?, parse_value(&initial[2])?])
}

fn project_doc(solid: Solid, center: Centering, mode: Mode) -> Result<PackingDocument, ShellError> {
    let seed = |c: &str| SeedDoc { kind: "projection".into(), centering: Some(c.into()), initial: None, depth: None };
    let k = match center {
        Centering::Vertex => 0,
        Centering::Edge => 1,
        Centering::Face => 2,
        Centering::None => {
            let field = if mode == Mode::Exact { field_for(solid, mode)? } else { Field::Float };
            return with_field!(field, S => {
                let a: BallArrangement<S> = project(&regular_edge_scribed::<S>(solid)?)?;
                Ok(PackingDocument::from_arrangement(&a, seed("none")))
            });
        }
    };
    if mode == Mode::Exact {
        return Err(ShellError::Usage("centered projections are float only; add --mode float".into()));
    }
    let name = format!("{center:?}").to_lowercase();
    Ok(PackingDocument::from_arrangement(&centered_projection(solid, k)?, seed(&name)))
}

fn dual_doc<S: Scalar>(doc: &PackingDocument) -> Result<PackingDocument, ShellError> {
    let a = doc
        .arrangement::<S>()?
        .ok_or_else(|| ShellError::Input("document has no face lattice".into()))?;
    let seed = SeedDoc { kind: "dual".into(), centering: doc.seed.centering.clone(), initial: None, depth: None };
    Ok(PackingDocument::from_arrangement(&dual(&a)?, seed))
}

fn cluster_doc<S: Scalar>(solid: Solid, initial: &[String], depth: usize) -> Result<PackingDocument, ShellError> {
    let k = triple::<S>(initial)?;
    let seed = seed_from_curvatures(solid, &k)?;
    let c = generate_cluster(&seed.packing.primal, &seed.generators, depth)?;
    eprintln!("{} balls; per depth {:?}", c.len(), c.depth_counts());
    let info = SeedDoc {
        kind: "cluster".into(),
        centering: None,
        initial: Some(k.iter().map(Num::from_scalar).collect()),
        depth: Some(depth),
    };
    Ok(PackingDocument::from_cluster(&c, Some(solid), info))
}

fn squares<S: Scalar>(p: usize, n_max: usize) -> Result<i32, ShellError> {
    let mut ok = true;
    for (n, b) in perfect_square_sequence::<S>(p, n_max)? {
        let k = b.curvature();
        let want = S::from_i64((n * n) as i64);
        if !k.approx_eq(&want, crate::numeric::FLOAT_TOL * (n * n).max(1) as f64) {
            ok = false;
            eprintln!("n = {n}: curvature {k} is not {want}");
        }
        println!("{n} {k}");
    }
    Ok(if ok { 0 } else { 1 })
}

fn max_residual<S: Scalar>(pairs: impl Iterator<Item = Result<(S, S), ShellError>>) -> Result<(usize, f64), ShellError> {
    let mut n = 0;
    let mut worst = 0.0f64;
    for p in pairs {
        let (l, r) = p?;
        n += 1;
        worst = worst.max(scaled_residual(&l, &r));
    }
    Ok((n, worst))
}

fn verify<S: Scalar>(doc: &PackingDocument, checks: &[Check], tol: f64) -> Result<i32, ShellError> {
    let balls: Vec<Ball<S>> = doc.balls()?;
    let d = doc.dimension;
    let mut failed = false;
    let mut cliques = None;
    let mut report = |name: &str, ok: bool, detail: String| {
        println!("{name}: {} ({detail})", if ok { "ok" } else { "FAIL" });
        failed |= !ok;
    };
    for check in checks {
        match check {
            Check::Packing => match first_overlap(&balls) {
                None => report("packing", true, format!("{} balls", balls.len())),
                Some((i, j, p)) => report("packing", false, format!("entries {i} and {j}: {p:?}")),
            },
            Check::Soddy | Check::Descartes => {
                let cl = cliques.get_or_insert_with(|| tangent_cliques(&balls, d + 2));
                let ks = cl.iter().map(|c| c.iter().map(|&i| balls[i].curvature()).collect::<Vec<S>>());
                let (n, worst) = if *check == Check::Soddy {
                    max_residual(ks.map(|k| {
                        let sum = k.iter().cloned().fold(S::zero(), |a, b| a + b);
                        let sq = k.iter().cloned().fold(S::zero(), |a, b| a + b.clone() * b);
                        Ok((sum.clone() * sum, S::from_i64(d as i64) * sq))
                    }))?
                } else {
                    let simplex = Solid::Simplex(d + 1);
                    max_residual(ks.map(|k| {
                        let mut flag: Vec<S> = Vec::with_capacity(k.len());
                        let mut run = S::zero();
                        for (i, x) in k.iter().enumerate() {
                            run = run + x.clone();
                            if i > 0 {
                                flag.push(run.clone() / S::from_i64(i as i64 + 1));
                            }
                        }
                        flag.insert(0, k[0].clone());
                        flag.pop();
                        flag.push(run / S::from_i64(k.len() as i64));
                        Ok(flag_relation_sides(simplex, &flag)?)
                    }))?
                };
                let name = if *check == Check::Soddy { "soddy" } else { "descartes" };
                report(name, worst <= tol, format!("{n} tangent {}-tuples, max residual {worst:e}", d + 2));
            }
            Check::Flags => match (doc.arrangement::<S>()?, doc.solid()?) {
                (Some(a), Some(solid)) => {
                    let flags = flag_curvatures(&a)?;
                    let (n, worst) = max_residual(flags.iter().map(|f| Ok(flag_relation_sides(solid, f)?)))?;
                    report("flags", worst <= tol, format!("{n} flags, max residual {worst:e}"));
                }
                _ => report("flags", true, "skipped: no face lattice".into()),
            },
        }
    }
    Ok(if failed { 1 } else { 0 })
}

fn integrality<S: Scalar>(solid: Solid, initial: &[String], certify_depth: Option<usize>) -> Result<i32, ShellError> {
    let k = triple::<S>(initial)?;
    let r = integrality_condition(solid, &k)?;
    let ring = if solid.platonic_pq().is_some_and(|(p, q)| p == 5 || q == 5) { Ring::ZPhi } else { Ring::Z };
    let verdict = match r.certificate {
        Certificate::Integral => "integral",
        Certificate::PhiIntegral => "phi-integral",
        Certificate::NotCertified => "not certified",
    };
    println!("certificate: {verdict}");
    println!("order: {}, {}, {}", r.triple[0], r.triple[1], r.triple[2]);
    println!("radicand: {}", r.radicand);
    match &r.radical {
        Some(x) => println!("radical: {x}"),
        None => println!("radical: not in the field"),
    }
    let Some(depth) = certify_depth else { return Ok(0) };
    let seed = seed_from_curvatures(solid, &k)?;
    let c = generate_cluster(&seed.packing.primal, &seed.generators, depth)?;
    for (i, e) in c.entries().iter().enumerate() {
        let kappa = e.ball.curvature();
        if !kappa.in_ring(ring)? {
            println!("depth {depth}: entry {i} has curvature {kappa} outside {ring}");
            return Ok(if r.certificate == Certificate::NotCertified { 0 } else { 1 });
        }
    }
    println!("depth {depth}: all {} curvatures in {ring}", c.len());
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Q2, Q5};

    #[test]
    fn value_syntax() {
        assert_eq!(parse_value::<Q2>("-3").unwrap(), Q2::from_int(-3));
        assert_eq!(parse_value::<Q2>("1/2").unwrap(), Q2::from_ratio(1, 2));
        assert_eq!(parse_value::<Q2>("1+2√2").unwrap(), Q2::surd(1, 1, 2, 1));
        let phi = Q5::surd(1, 2, 1, 2);
        assert_eq!(parse_value::<Q5>("phi").unwrap(), phi.clone());
        assert_eq!(parse_value::<Q5>("φ+1").unwrap(), phi.clone() + Q5::from_int(1));
        assert_eq!(parse_value::<Q5>("2phi").unwrap(), Q5::from_int(2) * phi.clone());
        assert_eq!(parse_value::<Q5>("-1/2*phi").unwrap(), -phi / Q5::from_int(2));
        assert_eq!(parse_value::<Q5>("3/2+1/2√5").unwrap(), Q5::surd(3, 2, 1, 2));
        assert!((parse_value::<f64>("2.5e-1").unwrap() - 0.25).abs() < 1e-15);
        assert!(parse_value::<Q2>("√5").is_err());
        assert!(parse_value::<Q2>("x").is_err());
        assert!(parse_value::<Q2>("1/0").is_err());
    }

    #[test]
    fn eigenvalue_format() {
        assert_eq!(format_eigenvalue(-16.000000000001), "-16");
        assert_eq!(format_eigenvalue(-1e-13), "0");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["polypack", "bogus"]), 2);
        assert_eq!(run(["polypack", "squares", "--p", "7", "--n-max", "2"]), 2);
        assert_eq!(run(["polypack", "cluster", "--solid", "tetrahedron", "--initial", "1,2"]), 2);
        assert_eq!(run(["polypack", "project", "--solid", "ngon:7"]), 2);
    }
}
