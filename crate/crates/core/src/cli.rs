//! Command-line front end. [`run`] parses arguments, executes one verb and
//! returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog::{
    self, distinguished_subgroups, parse_cycles, parse_permutations, test_corpus, CorpusEntry,
    GroupSpec,
};
use crate::error::{Error, ErrorKind, Result};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};
use crate::measure::{centrality_floor, pr};
use crate::montecarlo::{estimate_pr, estimate_pr_generated, Estimate};
use crate::perm::Permutation;
use crate::ratio::Ratio;
use crate::suites::{
    eberhard_suite, lemma41_suite, monotonicity_suite, quotient_suite, SuiteReport,
};
use crate::witness::{
    prop11_witness, prop13_witness, thm12_witness, validate_certificate, Certificate,
    Prop11Certificate, Prop13Certificate, StageBranch, Thm12Certificate,
};

const DEFAULT_CHECK_ORDER: usize = 32;

#[derive(Parser, Debug)]
#[command(
    name = "commprob",
    version,
    about = "Commuting probabilities and witness certificates for finite groups"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Order cap when building groups; corpus bound for `check` and `corpus`.
    #[arg(long, global = true)]
    max_order: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Target {
    /// cyclic(n), dihedral(2n), quaternion(4n), symmetric(k), alternating(k),
    /// elementary_abelian(p,k), direct_product(A,B), perm:PATH, table:PATH, or C6, D8, Q8, S4, A5.
    #[arg(long)]
    group: String,
    /// whole | trivial | center | derived | power:E | cyclic:ELEMENT | gens:PATH
    #[arg(long)]
    subgroup: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Order, exponent, classes and standard subgroups.
    Info {
        #[arg(long)]
        group: String,
    },
    /// Exact Pr(K, G).
    Pr(Target),
    /// Exact centrality floor of K.
    Central(Target),
    /// Run a witness pipeline and emit its certificate.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Run an inequality suite over the corpus or one group.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte Carlo estimate of Pr(K, G).
    Estimate {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.95)]
        confidence: f64,
    },
    /// Re-check a certificate file.
    Validate {
        path: PathBuf,
        /// Group to check against; defaults to the certificate's recorded source.
        #[arg(long)]
        group: Option<String>,
    },
    /// List the test corpus.
    Corpus,
}

#[derive(Subcommand, Debug)]
enum WitnessKind {
    /// Bounded-index T and B with [T,B] bounded, from Pr(K, G) >= epsilon
    Prop11 {
        #[command(flatten)]
        target: Target,
        /// Defaults to Pr(K, G).
        #[arg(long)]
        epsilon: Option<Ratio>,
    },
    /// Exponent e and normal T from class sizes of l-th powers bounded by n
    Prop13 {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        n: u64,
    },
    /// prop13 on the (l, n) derived from epsilon, plus the converse centrality bound
    Thm12 {
        #[command(flatten)]
        target: Target,
        /// Defaults to the centrality floor of K.
        #[arg(long)]
        epsilon: Option<Ratio>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Monotonicity,
    Quotient,
    Eberhard,
    Lemma41,
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            code: 0,
        }
    }
}

/// Runs the command line `args` (program name first) against the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

/// As [`run`], writing to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = execute(&cli).and_then(|o| emit(&cli, &o, out).map(|()| o.code));
    result.unwrap_or_else(|e| report(&e, cli.format, err))
}

/// Writes the diagnostic for `e` and returns its exit code.
fn report(e: &Error, format: Format, err: &mut dyn Write) -> i32 {
    let kind = match e.kind() {
        ErrorKind::User => "user",
        ErrorKind::Internal => "internal",
        ErrorKind::Io => "io",
    };
    let _ = match format {
        Format::Text => writeln!(err, "error: {e}"),
        Format::Json => writeln!(
            err,
            "{}",
            json!({ "error": { "kind": kind, "code": e.exit_code(), "message": e.to_string() } })
        ),
    };
    e.exit_code()
}

fn emit(cli: &Cli, o: &Output, out: &mut dyn Write) -> Result<()> {
    let body = match cli.format {
        Format::Text => o.text.clone(),
        Format::Json => serde_json::to_string_pretty(&o.json)? + "\n",
    };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, body)?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn cap(cli: &Cli) -> usize {
    cli.max_order.unwrap_or(DEFAULT_ORDER_CAP)
}

fn load_group(spec: &str, cap: usize) -> Result<FiniteGroup> {
    catalog::build(&spec.parse()?, cap)
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.verb {
        Verb::Info { group } => info(&load_group(group, cap(cli))?),
        Verb::Pr(t) => {
            let g = load_group(&t.group, cap(cli))?;
            let k = resolve_subgroup(&g, t.subgroup.as_deref())?;
            let report = pr(&g, &k);
            Ok(Output::ok(
                format!("{}\n", report.value),
                serde_json::to_value(&report)?,
            ))
        }
        Verb::Central(t) => {
            let g = load_group(&t.group, cap(cli))?;
            let k = resolve_subgroup(&g, t.subgroup.as_deref())?;
            let (floor, x) = centrality_floor(&g, &k);
            let text = format!("{floor} attained at {}\n", g.label(x));
            Ok(Output::ok(
                text,
                json!({ "floor": floor, "witness": x, "label": g.label(x) }),
            ))
        }
        Verb::Witness { kind } => witness(cli, kind),
        Verb::Check {
            suite,
            group,
            samples,
            seed,
        } => {
            let entries = match group {
                Some(spec) => {
                    let g = load_group(spec, cap(cli))?;
                    vec![CorpusEntry {
                        name: g.source().to_string(),
                        subgroups: distinguished_subgroups(&g),
                        group: g,
                    }]
                }
                None => test_corpus(cli.max_order.unwrap_or(DEFAULT_CHECK_ORDER)),
            };
            let report = match suite {
                Suite::Monotonicity => monotonicity_suite(&entries)?,
                Suite::Quotient => quotient_suite(&entries)?,
                Suite::Eberhard => eberhard_suite(&entries, *samples as usize, *seed)?,
                Suite::Lemma41 => lemma41_suite(&entries)?,
            };
            Ok(suite_output(&report))
        }
        Verb::Estimate {
            target,
            samples,
            seed,
            confidence,
        } => estimate(cli, target, *samples, *seed, *confidence),
        Verb::Validate { path, group } => validate(cli, path, group.as_deref()),
        Verb::Corpus => {
            let entries = test_corpus(cli.max_order.unwrap_or(DEFAULT_ORDER_CAP));
            let mut text = String::new();
            let mut rows = Vec::new();
            for e in &entries {
                text += &format!(
                    "{:<40} order {:>4}  {} subgroups\n",
                    e.name,
                    e.group.order(),
                    e.subgroups.len()
                );
                let subs: Vec<&str> = e.subgroups.iter().map(|s| s.0.as_str()).collect();
                rows.push(json!({ "name": e.name, "order": e.group.order(), "subgroups": subs }));
            }
            Ok(Output::ok(text, Value::Array(rows)))
        }
    }
}

fn info(g: &FiniteGroup) -> Result<Output> {
    let whole = Subgroup::whole(g);
    let sizes = g.conjugacy().class_sizes();
    let center = g.center().len();
    let derived = g.derived_subgroup(&whole).len();
    let gens: Vec<String> = g.generators().iter().map(|&x| g.label(x)).collect();
    let text = format!(
        "group      {}\norder      {}\nexponent   {}\nabelian    {}\nclasses    {} (sizes {})\ncenter     order {center}\nderived    order {derived}\ngenerators {}\ndigest     {}\n",
        g.source(),
        g.order(),
        g.exponent(),
        if g.is_abelian() { "yes" } else { "no" },
        sizes.len(),
        sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "),
        gens.join(", "),
        g.digest(),
    );
    let json = json!({
        "source": g.source(),
        "order": g.order(),
        "exponent": g.exponent(),
        "abelian": g.is_abelian(),
        "class_sizes": sizes,
        "center_order": center,
        "derived_order": derived,
        "generators": gens,
        "digest": g.digest(),
    });
    Ok(Output::ok(text, json))
}

/// Resolves an element given as an index or in cycle notation.
fn parse_element(g: &FiniteGroup, text: &str) -> Result<usize> {
    let text = text.trim();
    if let Ok(i) = text.parse::<usize>() {
        return if i < g.order() {
            Ok(i)
        } else {
            Err(Error::Usage(format!(
                "element index {i} is not in a group of order {}",
                g.order()
            )))
        };
    }
    let Some(labels) = g.labels() else {
        return Err(Error::Usage(
            "this group has no permutation labels; give an element index".into(),
        ));
    };
    let degree = labels[0].degree();
    let missing = || Error::Usage(format!("element {text} is not in the group"));
    let p = parse_cycles(text, 1, None)?;
    let p = if p.degree() <= degree {
        p.extended(degree)
    } else if (degree..p.degree()).all(|i| p.apply(i) == i) {
        Permutation::from_images(p.images()[..degree].to_vec()).ok_or_else(missing)?
    } else {
        return Err(missing());
    };
    g.find_label(&p).ok_or_else(missing)
}

fn resolve_subgroup(g: &FiniteGroup, spec: Option<&str>) -> Result<Subgroup> {
    let whole = Subgroup::whole(g);
    let Some(spec) = spec else { return Ok(whole) };
    let (head, arg) = spec
        .split_once(':')
        .map_or((spec, None), |(h, a)| (h, Some(a)));
    match (head, arg) {
        ("whole" | "G", None) => Ok(whole),
        ("trivial", None) => Ok(Subgroup::trivial(g)),
        ("center", None) => Ok(g.center()),
        ("derived", None) => Ok(g.derived_subgroup(&whole)),
        ("power", Some(e)) => {
            let e: u64 = e
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("bad exponent in {spec}")))?;
            if e == 0 {
                return Err(Error::Usage("power exponent must be positive".into()));
            }
            Ok(g.power_subgroup(&whole, e))
        }
        ("cyclic", Some(x)) => Ok(g.cyclic_subgroup(parse_element(g, x)?)),
        ("gens", Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let elements: Vec<usize> = if text.trim_start().starts_with("degree") {
                let file = parse_permutations(&text)?;
                file.perms
                    .iter()
                    .map(|p| parse_element(g, &p.to_string()))
                    .collect::<Result<_>>()?
            } else {
                text.split_whitespace()
                    .map(|w| parse_element(g, w))
                    .collect::<Result<_>>()?
            };
            Ok(g.subgroup_generated(elements))
        }
        _ => Err(Error::Usage(format!("unknown subgroup spec {spec:?}"))),
    }
}

fn witness(cli: &Cli, kind: &WitnessKind) -> Result<Output> {
    let (target, cert) = match kind {
        WitnessKind::Prop11 { target, epsilon } => {
            let g = load_group(&target.group, cap(cli))?;
            let k = resolve_subgroup(&g, target.subgroup.as_deref())?;
            let eps = epsilon.clone().unwrap_or_else(|| pr(&g, &k).value);
            (
                g.clone(),
                Certificate::Prop11(prop11_witness(&g, &k, &eps)?),
            )
        }
        WitnessKind::Prop13 { target, l, n } => {
            let g = load_group(&target.group, cap(cli))?;
            let k = resolve_subgroup(&g, target.subgroup.as_deref())?;
            (
                g.clone(),
                Certificate::Prop13(prop13_witness(&g, &k, *l, *n)?),
            )
        }
        WitnessKind::Thm12 { target, epsilon } => {
            let g = load_group(&target.group, cap(cli))?;
            let k = resolve_subgroup(&g, target.subgroup.as_deref())?;
            let eps = epsilon
                .clone()
                .unwrap_or_else(|| centrality_floor(&g, &k).0);
            (g.clone(), Certificate::Thm12(thm12_witness(&g, &k, &eps)?))
        }
    };
    let text = match &cert {
        Certificate::Prop11(c) => summary_prop11(&target, c),
        Certificate::Prop13(c) => summary_prop13(&target, c),
        Certificate::Thm12(c) => summary_thm12(&target, c),
    };
    Ok(Output::ok(text, serde_json::to_value(&cert)?))
}

fn summary_prop11(g: &FiniteGroup, c: &Prop11Certificate) -> String {
    let mut s = format!(
        "group {} (order {}), |K| = {}\n",
        g.source(),
        g.order(),
        c.k.len()
    );
    s += &format!("Pr(K,G) = {} >= epsilon = {}\n", c.pr_k_g, c.epsilon);
    s += &format!(
        "X: {} elements with |x^G| <= {}, nu(X) = {}\n",
        c.x.len(),
        c.threshold,
        c.nu_x
    );
    s += &format!(
        "B = <X>: order {}, [K:B] = {}, words of length <= {} (3r = {}), max |b^G| = {}\n",
        c.b.len(),
        c.index_k_b,
        c.max_word_length,
        3 * c.r,
        c.max_class_b
    );
    s += &format!(
        "L: order {}, D = [L,L]: order {}, quotient order {}\n",
        c.l.len(),
        c.d.len(),
        c.quotient.target.order
    );
    s += &format!(
        "Y: {} elements, mu(Y) = {}, [G/D : E] = {}\n",
        c.y.len(),
        c.mu_y,
        c.index_g_e_bar
    );
    s += &format!("T: order {}, [G:T] = {}\n", c.t.len(), c.index_g_t);
    s += &format!(
        "|[T,B]| = {} <= |[T,B] mod D| * |D| = {} * {}\n",
        c.tb_order,
        c.tb_bar_order,
        c.d.len()
    );
    s
}

fn summary_prop13(g: &FiniteGroup, c: &Prop13Certificate) -> String {
    let mut s = format!(
        "group {} (order {}), |K| = {}, l = {}, n = {}\n",
        g.source(),
        g.order(),
        c.k.len(),
        c.l,
        c.n
    );
    for (i, st) in c.stages.iter().enumerate() {
        let branch = match &st.branch {
            StageBranch::Abelian { j, .. } => format!("m = 1, |J| = {}", j.len()),
            StageBranch::Descent { next_l } => format!("descent to l = {next_l}"),
            StageBranch::Main(m) => format!(
                "main: d = {}, a = {}, {} coset reps, [G:U] = {}, |R| = {}, |J| = {}",
                g.label(m.d),
                g.label(m.a),
                m.reps.len(),
                m.index_g_u,
                m.r.len(),
                m.j_bar.len()
            ),
        };
        s += &format!(
            "stage {i}: l = {}, |X| = {}, |H| = {}, m = {}, {branch}\n",
            st.l,
            st.x.len(),
            st.h.len(),
            st.m
        );
    }
    s += &format!(
        "e = {}, [G:T] = {}, |[K^e,T]| = {}\n",
        c.e, c.index_g_t, c.ket_order
    );
    s
}

fn summary_thm12(g: &FiniteGroup, c: &Thm12Certificate) -> String {
    let mut s = format!(
        "epsilon = {}, centrality floor = {} at {}\n",
        c.epsilon,
        c.floor,
        g.label(c.floor_witness)
    );
    s += &format!(
        "derived l = {}, n = {} from {} cyclic subgroups\n",
        c.derived.l,
        c.derived.n,
        c.derived.per_element.len()
    );
    s += &summary_prop13(g, &c.inner);
    let v = &c.converse;
    s += &format!(
        "converse: s = {}, m = {}, max [G:C_G(g^e)] = {} <= ms, epsilon0 = {} <= {}\n",
        v.s, v.m, v.max_index, v.epsilon0, c.floor
    );
    s
}

fn suite_output(report: &SuiteReport) -> Output {
    let mut text = format!(
        "{}: {} checks over {} groups, {} violations\n",
        report.suite,
        report.checks,
        report.groups,
        report.violations.len()
    );
    for v in &report.violations {
        text += &format!("  {v}\n");
    }
    let code = if report.passed() { 0 } else { 2 };
    Output {
        text,
        json: serde_json::to_value(report).expect("reports serialize"),
        code,
    }
}

fn estimate_text(e: &Estimate) -> String {
    format!(
        "{:.6} [{:.6}, {:.6}] at {}% ({} samples, seed {}, {})\n",
        e.point,
        e.lo,
        e.hi,
        e.confidence * 100.0,
        e.samples,
        e.seed,
        serde_json::to_value(e.method)
            .expect("method serializes")
            .as_str()
            .unwrap_or_default()
    )
}

fn estimate(
    cli: &Cli,
    target: &Target,
    samples: u64,
    seed: u64,
    confidence: f64,
) -> Result<Output> {
    let spec: GroupSpec = target.group.parse()?;
    let e = match catalog::build(&spec, cap(cli)) {
        Ok(g) => {
            let k = resolve_subgroup(&g, target.subgroup.as_deref())?;
            estimate_pr(&g, &k, samples, seed, confidence)?
        }
        Err(Error::SizeLimit { .. }) => {
            let (degree, gens) = catalog::permutation_generators(&spec)?;
            let k_gens = match target.subgroup.as_deref() {
                None | Some("whole") | Some("G") => gens.clone(),
                Some(s) if s.starts_with("gens:") => {
                    parse_permutations(&std::fs::read_to_string(&s[5..])?)?.perms
                }
                Some(s) => {
                    return Err(Error::Usage(format!(
                        "subgroup {s:?} needs an enumerated group; use gens:PATH for large groups"
                    )))
                }
            };
            estimate_pr_generated(degree, &gens, &k_gens, samples, seed, confidence)?
        }
        Err(e) => return Err(e),
    };
    Ok(Output::ok(estimate_text(&e), serde_json::to_value(&e)?))
}

fn validate(cli: &Cli, path: &PathBuf, group: Option<&str>) -> Result<Output> {
    let cert = Certificate::from_json(&std::fs::read_to_string(path)?)?;
    let spec = group.unwrap_or(&cert.group().source);
    let g = load_group(spec, cap(cli).max(cert.group().order))?;
    let verdict = validate_certificate(&g, &cert);
    let mut text = if verdict.passed() {
        format!("pass ({} checks)\n", verdict.checks)
    } else {
        format!(
            "FAIL ({} of {} checks)\n",
            verdict.failures.len(),
            verdict.checks
        )
    };
    for f in &verdict.failures {
        text += &format!("  {}: {}\n", f.clause, f.detail);
    }
    let json = json!({ "passed": verdict.passed(), "checks": verdict.checks, "failures": verdict.failures });
    Ok(Output {
        text,
        json,
        code: if verdict.passed() { 0 } else { 1 },
    })
}
